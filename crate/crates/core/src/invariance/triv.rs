//! Changing the trivializations on the generic side and on the chart.

use serde::Serialize;

use crate::chain_kgl::Partition;
use crate::correspondence::GiesekerGermDatum;
use crate::eq_matrix::{apply_gamma, assemble_f, extract_h, ExponentVector, GammaAction, Matrix};
use crate::error::{Error, Result};
use crate::field_series::{Fp, LaurentSeries, NodalRingElement, PowerSeries, Ring};

use super::FiberMaps;

/// New trivialization of the generic-side bundle: `H̃ = M·H` on both
/// branches.
pub fn xi_triv_transform(
    datum: &GiesekerGermDatum,
    m1: &Matrix<LaurentSeries>,
    m2: &Matrix<LaurentSeries>,
) -> Result<GiesekerGermDatum> {
    let r = datum.rank();
    for m in [m1, m2] {
        if m.rows() != r || m.cols() != r {
            return Err(Error::Dimension(format!("expected {r}x{r} matrices")));
        }
        m.inverse()?;
    }
    Ok(GiesekerGermDatum {
        h1: m1.mul(&datum.h1),
        h2: m2.mul(&datum.h2),
        ..datum.clone()
    })
}

/// `M(u^e)·F` splits into `M·H`.
pub fn xi_triv_chart_holds(
    datum: &GiesekerGermDatum,
    m1: &Matrix<LaurentSeries>,
    m2: &Matrix<LaurentSeries>,
) -> Result<bool> {
    let e = datum.e;
    let f = assemble_f(&datum.h1, &datum.h2, &datum.exponents)?;
    let (f1, f2) = f.split();
    let g1 = m1.map(|x| x.inflate(0, e)).mul(&f1);
    let g2 = m2.map(|x| x.inflate(0, e)).mul(&f2);
    let (k1, k2) = extract_h(&Matrix::join(&g1, &g2)?, &datum.exponents, &datum.action()?)?;
    let moved = xi_triv_transform(datum, m1, m2)?;
    Ok(k1 == moved.h1 && k2 == moved.h2)
}

/// Change of chart trivialization `A = A⁰ + uA¹(u) + vA²(v)` written through
/// `(A⁰, B¹, B²)`: the `u`-entries are `A⁰_{ij} + u^{a_j−a_i} B¹_{ij}(u^e)`
/// and the `v`-entries `A⁰_{ij} + v^{a_i−a_j} B²_{ij}(v^e)`.
///
/// `A⁰` is block diagonal for the blocks of equal exponent,
/// `B¹_{ij}(0) = 0` unless `a_i < a_j` and `B²_{ij}(0) = 0` unless
/// `a_j < a_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaTrivChange {
    pub a0: Matrix<Fp>,
    pub b1: Matrix<PowerSeries>,
    pub b2: Matrix<PowerSeries>,
}

impl EtaTrivChange {
    pub fn identity(r: usize, modulus: u64, precision: usize) -> Self {
        let z = PowerSeries::zero(modulus, precision);
        EtaTrivChange {
            a0: Matrix::identity(r, modulus),
            b1: Matrix::zeros_like(&z, r, r),
            b2: Matrix::zeros_like(&z, r, r),
        }
    }

    pub fn validate(&self, exps: &ExponentVector) -> Result<()> {
        let r = exps.rank();
        for (name, shape) in [
            ("A0", (self.a0.rows(), self.a0.cols())),
            ("B1", (self.b1.rows(), self.b1.cols())),
            ("B2", (self.b2.rows(), self.b2.cols())),
        ] {
            if shape != (r, r) {
                return Err(Error::Dimension(format!("{name} must be {r}x{r}")));
            }
        }
        self.a0.inverse()?;
        let a = &exps.a;
        for i in 0..r {
            for j in 0..r {
                if a[i] != a[j] && !self.a0.get(i, j).is_zero() {
                    return Err(Error::IdentityFailed(format!(
                        "A0 has an entry at ({i},{j}) across blocks"
                    )));
                }
                if a[j] <= a[i] && !self.b1.get(i, j).constant_term().is_zero() {
                    return Err(Error::IdentityFailed(format!("B1({i},{j})(0) must vanish")));
                }
                if a[i] <= a[j] && !self.b2.get(i, j).constant_term().is_zero() {
                    return Err(Error::IdentityFailed(format!("B2({i},{j})(0) must vanish")));
                }
            }
        }
        Ok(())
    }

    /// `A` as a matrix over `k[[u,v]]/(uv)`.
    pub fn assemble(&self, exps: &ExponentVector) -> Result<Matrix<NodalRingElement>> {
        self.validate(exps)?;
        let e = exps.e as i64;
        let a = exps.signed();
        // x^k·B(x^e) with known vanishing constant term when k ≤ 0
        let branch = |b: &PowerSeries, k: i64| -> Result<PowerSeries> {
            let inflated = LaurentSeries::from(b).inflate(0, e as u64).shift(k);
            inflated.to_power_series()
        };
        let rows = (0..exps.rank())
            .map(|i| {
                (0..exps.rank())
                    .map(|j| {
                        let c = *self.a0.get(i, j);
                        let u = branch(self.b1.get(i, j), a[j] - a[i])?.add_constant(c);
                        let v = branch(self.b2.get(i, j), a[i] - a[j])?.add_constant(c);
                        NodalRingElement::new(u, v)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    /// `A⁰ + B¹(x)` and `A⁰ + B²(x)` as matrices of series.
    pub fn node_matrices(&self) -> (Matrix<LaurentSeries>, Matrix<LaurentSeries>) {
        let lift = |b: &Matrix<PowerSeries>| {
            Matrix::from_fn(b.rows(), b.cols(), |i, j| {
                LaurentSeries::from(&b.get(i, j).clone().add_constant(*self.a0.get(i, j)))
            })
        };
        (lift(&self.b1), lift(&self.b2))
    }

    /// Induced automorphisms `A⁰ + B¹(0)` of `V` and `A⁰ + B²(0)` of `W`.
    pub fn fiber_maps(&self) -> FiberMaps {
        let at0 = |b: &Matrix<PowerSeries>| {
            Matrix::from_fn(b.rows(), b.cols(), |i, j| {
                *self.a0.get(i, j) + b.get(i, j).constant_term()
            })
        };
        (at0(&self.b1), at0(&self.b2))
    }
}

/// `A = D·γ(A)·D⁻¹` with `D = diag(ζ^α)`, exactly at precision: the
/// condition for `F·A` to stay equivariant with the same characters.
pub fn cond_on_a(a: &Matrix<NodalRingElement>, exps: &ExponentVector, act: &GammaAction) -> bool {
    let Some(proto) = a.entries().first() else {
        return true;
    };
    let d: Vec<_> = act.diag_roots(&exps.alpha).into_iter().map(|z| proto.constant(z)).collect();
    let dinv: Vec<_> = act
        .diag_roots(&exps.alpha)
        .into_iter()
        .map(|z| proto.constant(z.inv().expect("unit")))
        .collect();
    apply_gamma(a, act).scale_rows(&d).scale_columns(&dinv) == *a
}

/// Random change with block-diagonal invertible `A⁰` and `B¹, B²`
/// respecting the vanishing pattern.
pub fn sample_eta_change<R: rand::Rng + ?Sized>(
    exps: &ExponentVector,
    part: &Partition,
    precision: usize,
    modulus: u64,
    rng: &mut R,
) -> Result<EtaTrivChange> {
    if Partition::from_exponents(exps)? != *part {
        return Err(Error::InvalidPartition("partition does not match the exponents".into()));
    }
    let r = exps.rank();
    let mut a0 = Matrix::zeros(r, r, modulus);
    for block in part.blocks() {
        let blk = super::random_invertible(rng, block.len(), modulus);
        for (x, i) in block.clone().enumerate() {
            for (y, j) in block.clone().enumerate() {
                a0.set(i, j, *blk.get(x, y));
            }
        }
    }
    let a = &exps.a;
    let mut sample = |free_constant: &dyn Fn(usize, usize) -> bool| {
        Matrix::from_fn(r, r, |i, j| {
            let mut s = super::random_series(rng, modulus, precision);
            if !free_constant(i, j) {
                let c = s.constant_term();
                s = s.add_constant(-c);
            }
            s
        })
    };
    let b1 = sample(&|i, j| a[i] < a[j]);
    let b2 = sample(&|i, j| a[j] < a[i]);
    let chg = EtaTrivChange { a0, b1, b2 };
    chg.validate(exps)?;
    Ok(chg)
}

/// `H̃¹ = H¹·(A⁰ + B¹(s))`, `H̃² = H²·(A⁰ + B²(t))`, after checking that
/// `(A⁰ + B¹(0), A⁰ + B²(0))` fixes the stratum point.
pub fn eta_triv_transform(datum: &GiesekerGermDatum, chg: &EtaTrivChange) -> Result<GiesekerGermDatum> {
    chg.validate(&datum.exponents)?;
    let (g_v, g_w) = chg.fiber_maps();
    if datum.point.transform(&g_v, &g_w)? != datum.point {
        return Err(Error::IdentityFailed("the induced fiber maps move the point".into()));
    }
    let (n1, n2) = chg.node_matrices();
    Ok(GiesekerGermDatum {
        h1: datum.h1.mul(&n1),
        h2: datum.h2.mul(&n2),
        ..datum.clone()
    })
}

/// `F·A` splits into `H·(A⁰ + B)`.
pub fn eta_triv_chart_holds(datum: &GiesekerGermDatum, chg: &EtaTrivChange) -> Result<bool> {
    let f = assemble_f(&datum.h1, &datum.h2, &datum.exponents)?;
    let a = chg.assemble(&datum.exponents)?;
    let (k1, k2) = extract_h(&f.mul(&a.to_quotient()), &datum.exponents, &datum.action()?)?;
    let moved = eta_triv_transform(datum, chg)?;
    Ok(k1 == moved.h1 && k2 == moved.h2)
}
