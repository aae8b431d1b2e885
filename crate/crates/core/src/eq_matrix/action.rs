//! The cyclic stabilizer acting on matrices, equivariance, and the
//! constructive diagonalization of equivariant cocycles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field_series::{
    discrete_log, primitive_eth_root, Fp, NodalQuotientElement, NodalRingElement, Ring, Twist,
};

use super::Matrix;

/// Generator `γ` of `Z/e` acting by `u ↦ ζu`, `v ↦ ζ⁻¹v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaAction {
    pub e: u64,
    pub zeta: Fp,
}

impl GammaAction {
    /// Uses the deterministic root `g^((p-1)/e)`.
    pub fn new(p: u64, e: u64) -> Result<Self> {
        Ok(GammaAction {
            e,
            zeta: primitive_eth_root(p, e)?,
        })
    }

    /// Accepts any primitive `e`-th root of unity.
    pub fn with_zeta(zeta: Fp, e: u64) -> Result<Self> {
        if e == 0 || zeta.order() != Some(e) {
            return Err(Error::NotPrimitiveRoot {
                p: zeta.modulus(),
                e,
                value: zeta.value(),
            });
        }
        Ok(GammaAction { e, zeta })
    }

    pub fn modulus(&self) -> u64 {
        self.zeta.modulus()
    }

    /// The action with `ζ` replaced by `ζ⁻¹`, as seen after swapping branches.
    pub fn inverse(&self) -> Self {
        GammaAction {
            e: self.e,
            zeta: self.zeta.inv().expect("roots of unity are units"),
        }
    }

    /// `ζ^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> Fp {
        self.zeta.powi(k)
    }

    /// The residue `α ∈ [0, e)` with `ζ^α = x`.
    pub fn log(&self, x: Fp) -> Option<u64> {
        discrete_log(self.zeta, self.e, x)
    }

    pub fn diag_roots(&self, alpha: &[u64]) -> Vec<Fp> {
        alpha.iter().map(|&a| self.zeta.pow(a)).collect()
    }
}

pub fn apply_gamma<T: Twist + Clone>(m: &Matrix<T>, act: &GammaAction) -> Matrix<T> {
    m.twist(act.zeta)
}

/// `γ(F) = F · diag(ζ^{α_1}, …, ζ^{α_r})`, exactly at precision.
pub fn is_equivariant(
    f: &Matrix<NodalQuotientElement>,
    alpha: &[u64],
    act: &GammaAction,
) -> bool {
    if alpha.len() != f.cols() {
        return false;
    }
    let Some(proto) = f.entries().first() else {
        return true;
    };
    let d: Vec<_> = act
        .diag_roots(alpha)
        .into_iter()
        .map(|c| proto.constant(c))
        .collect();
    apply_gamma(f, act) == f.scale_columns(&d)
}

/// Ordered product `γ⁰(a)·γ¹(a)⋯γ^{e−1}(a)`.
pub fn cocycle_norm<T: Ring + Twist>(a: &Matrix<T>, act: &GammaAction) -> Matrix<T> {
    let mut acc = a.clone();
    let mut g = a.clone();
    for _ in 1..act.e {
        g = apply_gamma(&g, act);
        acc = acc.mul(&g);
    }
    acc
}

pub fn cocycle_norm_check(a: &Matrix<NodalRingElement>, act: &GammaAction) -> Result<bool> {
    a.residue().inverse()?;
    Ok(cocycle_norm(a, act).is_identity())
}

/// Splits a constant matrix of order dividing `e` into eigenspaces.
///
/// Returns `c` and the diagonal of `z` with `abar·c = c·z`. Eigenvalues
/// appear in the order `ζ⁰, ζ¹, …`, and each eigenspace basis is the
/// reduced echelon basis of the image of the projector
/// `P_α = e⁻¹ Σ_j ζ^{−αj} abar^j`.
pub fn residue_diagonalize(abar: &Matrix<Fp>, act: &GammaAction) -> Result<(Matrix<Fp>, Vec<Fp>)> {
    let n = abar.rows();
    let p = act.modulus();
    if !abar.is_square() {
        return Err(Error::Dimension("residue matrix must be square".into()));
    }
    if !abar.pow(act.e as u32).is_identity() {
        return Err(Error::ResidueOrder(act.e));
    }
    let einv = Fp::from_u64(act.e, p).inv().ok_or(Error::ResidueOrder(act.e))?;
    let powers: Vec<Matrix<Fp>> = (0..act.e).map(|j| abar.pow(j as u32)).collect();
    let mut columns = Vec::with_capacity(n);
    let mut z = Vec::with_capacity(n);
    for alpha in 0..act.e as i64 {
        let mut proj = Matrix::zeros(n, n, p);
        for (j, aj) in powers.iter().enumerate() {
            proj = proj.add(&aj.scale(act.root_power(-alpha * j as i64)));
        }
        let proj = proj.scale(einv);
        for v in proj.column_space_basis() {
            columns.push(v);
            z.push(act.root_power(alpha));
        }
    }
    if columns.len() != n {
        return Err(Error::ResidueOrder(act.e));
    }
    Ok((Matrix::from_columns(&columns, n, p), z))
}

/// Output of [`diagonalize_action`]: `a·γ(b) = b·diag(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalization {
    pub b: Matrix<NodalRingElement>,
    pub z: Vec<Fp>,
    /// `z_i = ζ^{α_i}`
    pub alpha: Vec<u64>,
}

/// Finds `b` and diagonal `z` with `a·γ(b) = b·z` for a cocycle `a`.
///
/// With `c` from [`residue_diagonalize`] and `a' = c⁻¹ac`, the result is
/// `b = c·b'` where `b' = Σ_{i<e} (Π_{j<i} γ^j(a')) z^{−i}`; `b'` reduces
/// to `e` times the identity.
pub fn diagonalize_action(a: &Matrix<NodalRingElement>, act: &GammaAction) -> Result<Diagonalization> {
    if !cocycle_norm_check(a, act)? {
        return Err(Error::NormCheckFailed);
    }
    let Some(proto) = a.entries().first().cloned() else {
        return Ok(Diagonalization {
            b: a.clone(),
            z: Vec::new(),
            alpha: Vec::new(),
        });
    };
    let (c, z) = residue_diagonalize(&a.residue(), act)?;
    let cinv = c.inverse()?;
    let a1 = cinv.lift(&proto).mul(a).mul(&c.lift(&proto));

    let zinv: Vec<Fp> = z.iter().map(|x| x.inv().expect("unit")).collect();
    let n = a.rows();
    let mut prod = Matrix::identity_like(&proto, n);
    let mut zpow = vec![Fp::one(act.modulus()); n];
    let mut gamma_j = a1.clone();
    let mut b1 = Matrix::zeros_like(&proto, n, n);
    for i in 0..act.e {
        let dz: Vec<_> = zpow.iter().map(|&x| proto.constant(x)).collect();
        b1 = b1.add(&prod.scale_columns(&dz));
        if i + 1 < act.e {
            prod = prod.mul(&gamma_j);
            gamma_j = apply_gamma(&gamma_j, act);
            for (zp, zi) in zpow.iter_mut().zip(&zinv) {
                *zp = *zp * *zi;
            }
        }
    }
    let b = c.lift(&proto).mul(&b1);
    let alpha = z
        .iter()
        .map(|&x| act.log(x).ok_or(Error::ResidueOrder(act.e)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Diagonalization { b, z, alpha })
}

/// `a·γ(b) == b·diag(z)` exactly at precision.
pub fn verifies_diagonalization(
    a: &Matrix<NodalRingElement>,
    d: &Diagonalization,
    act: &GammaAction,
) -> bool {
    let Some(proto) = a.entries().first() else {
        return true;
    };
    let dz: Vec<_> = d.z.iter().map(|&x| proto.constant(x)).collect();
    let zpow_is_one = d.z.iter().all(|x| x.pow(act.e) == Fp::one(act.modulus()));
    zpow_is_one && a.mul(&apply_gamma(&d.b, act)) == d.b.scale_columns(&dz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_series::{LaurentSeries, PowerSeries};

    const N: usize = 6;

    fn nodal_const(m: &Matrix<Fp>) -> Matrix<NodalRingElement> {
        let p = m.modulus_hint();
        m.lift(&NodalRingElement::constant(Fp::one(p), N))
    }

    #[test]
    fn gamma_scales_u_by_zeta() {
        let act = GammaAction::new(7, 3).unwrap();
        assert_eq!(act.zeta.value(), 2);
        let u = LaurentSeries::monomial(Fp::one(7), 1, N as i64);
        let x = NodalQuotientElement::new(u.clone(), LaurentSeries::zero(7, N as i64));
        let m = Matrix::diagonal(vec![x.clone(), x.clone()]);
        let g = apply_gamma(&m, &act);
        assert_eq!(g.get(0, 0).u, u.scale(Fp::new(2, 7)));
        assert_eq!(apply_gamma(&apply_gamma(&g, &act), &act), m);
    }

    #[test]
    fn worked_equivariant_example() {
        let act = GammaAction::new(7, 3).unwrap();
        let l = |k: i64| LaurentSeries::monomial(Fp::one(7), k, N as i64);
        let f = Matrix::diagonal(vec![
            NodalQuotientElement::new(l(0), l(0)),
            NodalQuotientElement::new(l(1), l(-1)),
            NodalQuotientElement::new(l(1), l(-1)),
        ]);
        assert!(is_equivariant(&f, &[0, 1, 1], &act));
        assert!(!is_equivariant(&f, &[0, 1, 2], &act));
        let uv = Matrix::diagonal(vec![NodalQuotientElement::new(l(1), l(1)); 2]);
        assert!(!is_equivariant(&uv, &[0, 0], &act));
    }

    #[test]
    fn norm_check_examples() {
        let act2 = GammaAction::new(7, 2).unwrap();
        let swap = Matrix::from_ints(&[vec![0, 1], vec![1, 0]], 7).unwrap();
        assert!(cocycle_norm_check(&nodal_const(&swap), &act2).unwrap());
        let act3 = GammaAction::new(7, 3).unwrap();
        let zeta_id = Matrix::identity(2, 7).scale(act3.zeta);
        assert!(cocycle_norm_check(&nodal_const(&zeta_id), &act3).unwrap());
        assert!(!cocycle_norm_check(&nodal_const(&swap), &act3).unwrap());
    }

    #[test]
    fn swap_residue_diagonalization() {
        let act = GammaAction::new(7, 2).unwrap();
        let swap = Matrix::from_ints(&[vec![0, 1], vec![1, 0]], 7).unwrap();
        let (c, z) = residue_diagonalize(&swap, &act).unwrap();
        assert_eq!(c.to_ints(), vec![vec![1, 1], vec![1, 6]]);
        assert_eq!(z.iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 6]);
        assert_eq!(swap.mul(&c), c.mul(&Matrix::diagonal(z)));
    }

    #[test]
    fn wrong_order_is_rejected() {
        let act = GammaAction::new(7, 2).unwrap();
        let d = Matrix::diagonal(vec![Fp::one(7), Fp::new(2, 7)]);
        assert_eq!(residue_diagonalize(&d, &act).unwrap_err(), Error::ResidueOrder(2));
    }

    #[test]
    fn swap_cocycle_gives_twice_the_eigenbasis() {
        let act = GammaAction::new(7, 2).unwrap();
        let swap = Matrix::from_ints(&[vec![0, 1], vec![1, 0]], 7).unwrap();
        let a = nodal_const(&swap);
        let d = diagonalize_action(&a, &act).unwrap();
        assert_eq!(d.b.residue().to_ints(), vec![vec![2, 2], vec![2, 5]]);
        assert_eq!(d.alpha, vec![0, 1]);
        assert!(verifies_diagonalization(&a, &d, &act));
    }

    #[test]
    fn identity_cocycle() {
        let act = GammaAction::new(13, 3).unwrap();
        let a = nodal_const(&Matrix::identity(3, 13));
        let d = diagonalize_action(&a, &act).unwrap();
        assert_eq!(d.alpha, vec![0, 0, 0]);
        // b' reduces to e times the identity, and here c is the identity
        assert_eq!(d.b.residue(), Matrix::identity(3, 13).scale(Fp::new(3, 13)));
        assert!(verifies_diagonalization(&a, &d, &act));
    }

    #[test]
    fn non_constant_cocycle() {
        // a = b z γ(b)^{-1} with b = [[1, u], [v, 1]]
        let act = GammaAction::new(7, 3).unwrap();
        let s = PowerSeries::variable(7, N);
        let one = PowerSeries::one(7, N);
        let zero = PowerSeries::zero(7, N);
        let e = |u: &PowerSeries, v: &PowerSeries| NodalRingElement::new(u.clone(), v.clone()).unwrap();
        let b = Matrix::from_rows(vec![
            vec![e(&one, &one), e(&s, &zero)],
            vec![e(&zero, &s), e(&one, &one)],
        ])
        .unwrap();
        let proto = b.get(0, 0).clone();
        let z = Matrix::diagonal(vec![proto.one_like(), proto.constant(act.zeta)]);
        let a = b.mul(&z).mul(&apply_gamma(&b, &act).inverse().unwrap());
        assert!(cocycle_norm_check(&a, &act).unwrap());
        let d = diagonalize_action(&a, &act).unwrap();
        assert_eq!(d.alpha, vec![0, 1]);
        assert!(verifies_diagonalization(&a, &d, &act));
    }
}
