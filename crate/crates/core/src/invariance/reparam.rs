//! Changing the branch coordinates `u ↦ uπ(u^e)`, `v ↦ vω(v^e)`.

use serde::Serialize;

use crate::correspondence::GiesekerGermDatum;
use crate::eq_matrix::{assemble_f, extract_h, Matrix};
use crate::error::{Error, Result};
use crate::field_series::{Fp, LaurentSeries, PowerSeries};

/// Units `π, ω` with `σ = π^e`, `τ = ω^e`: the chart coordinates change by
/// `u ↦ uπ(u^e)`, `v ↦ vω(v^e)` and the node coordinates by `s ↦ sσ(s)`,
/// `t ↦ tτ(t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeReparam {
    pub pi: PowerSeries,
    pub omega: PowerSeries,
    pub sigma: PowerSeries,
    pub tau: PowerSeries,
}

impl NodeReparam {
    pub fn new(pi: PowerSeries, omega: PowerSeries, e: u64) -> Result<Self> {
        if !pi.is_unit() || !omega.is_unit() {
            return Err(Error::NotUnit);
        }
        let sigma = pi.pow(e);
        let tau = omega.pow(e);
        Ok(NodeReparam {
            pi,
            omega,
            sigma,
            tau,
        })
    }

    pub fn validate(&self, e: u64) -> Result<()> {
        if !self.pi.is_unit() || !self.omega.is_unit() {
            return Err(Error::NotUnit);
        }
        if !self.sigma.eq_exact(&self.pi.pow(e)) || !self.tau.eq_exact(&self.omega.pow(e)) {
            return Err(Error::IdentityFailed("σ = π^e and τ = ω^e must hold".into()));
        }
        Ok(())
    }
}

/// `x·c(x)` as a power series.
fn times_variable(c: &PowerSeries) -> PowerSeries {
    let mut coeffs = vec![Fp::zero(c.modulus())];
    coeffs.extend_from_slice(c.coeffs());
    PowerSeries::new(coeffs)
}

/// `x·c(x^e)`.
fn inflated_argument(c: &PowerSeries, e: u64) -> PowerSeries {
    let e = e as usize;
    let n = c.precision();
    let mut coeffs = vec![Fp::zero(c.modulus()); e * (n + 1) + 1];
    for (k, &x) in c.coeffs().iter().enumerate() {
        coeffs[1 + k * e] = x;
    }
    PowerSeries::new(coeffs)
}

/// `H̃_{ij} = unit^{sign·a_j} · H_{ij}(x·c(x))`.
fn reparam_branch(
    h: &Matrix<LaurentSeries>,
    unit: &PowerSeries,
    sign: i64,
    c: &PowerSeries,
    a: &[i64],
) -> Result<Matrix<LaurentSeries>> {
    let arg = times_variable(c);
    let unit = LaurentSeries::from(unit);
    let rows = (0..h.rows())
        .map(|i| {
            (0..h.cols())
                .map(|j| Ok(unit.powi(sign * a[j])?.mul(&h.get(i, j).compose(&arg)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// Induced maps on the fibers over the two chain ends.
pub type FiberMaps = (Matrix<Fp>, Matrix<Fp>);

/// Applies the coordinate change to `(H¹, H²)`:
/// `H̃¹_{ij}(s) = π^{a_j} H¹_{ij}(sσ)` and `H̃²_{ij}(t) = ω^{−a_j} H²_{ij}(tτ)`.
///
/// Also returns the induced maps `diag(π(0)^{−a})`, `diag(ω(0)^{a})` on the
/// fibers at the two chain ends, after checking that they fix the point.
pub fn reparam_transform(
    datum: &GiesekerGermDatum,
    rp: &NodeReparam,
) -> Result<(GiesekerGermDatum, FiberMaps)> {
    rp.validate(datum.e)?;
    let a = datum.exponents.signed();
    let h1 = reparam_branch(&datum.h1, &rp.pi, 1, &rp.sigma, &a)?;
    let h2 = reparam_branch(&datum.h2, &rp.omega, -1, &rp.tau, &a)?;
    let (pi0, om0) = (rp.pi.constant_term(), rp.omega.constant_term());
    let g_v = Matrix::diagonal(a.iter().map(|&x| pi0.powi(-x)).collect());
    let g_w = Matrix::diagonal(a.iter().map(|&x| om0.powi(x)).collect());
    if datum.point.transform(&g_v, &g_w)? != datum.point {
        return Err(Error::IdentityFailed(
            "fiber maps of the reparametrization move the point".into(),
        ));
    }
    let out = GiesekerGermDatum { h1, h2, ..datum.clone() };
    Ok((out, (g_v, g_w)))
}

/// Reparametrizing the chart and then splitting `F` agrees with splitting
/// first and then applying [`reparam_transform`].
pub fn reparam_square_holds(datum: &GiesekerGermDatum, rp: &NodeReparam) -> Result<bool> {
    let act = datum.action()?;
    let f = assemble_f(&datum.h1, &datum.h2, &datum.exponents)?;
    let (f1, f2) = f.split();
    let arg_u = inflated_argument(&rp.pi, datum.e);
    let arg_v = inflated_argument(&rp.omega, datum.e);
    let comp = |m: &Matrix<LaurentSeries>, arg: &PowerSeries| -> Result<Matrix<LaurentSeries>> {
        let rows = m
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|x| x.compose(arg)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    };
    let g = Matrix::join(&comp(&f1, &arg_u)?, &comp(&f2, &arg_v)?)?;
    let (k1, k2) = extract_h(&g, &datum.exponents, &act)?;
    let (moved, _) = reparam_transform(datum, rp)?;
    Ok(k1 == moved.h1 && k2 == moved.h2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::{forward, LocalChartGerm};
    use crate::eq_matrix::GammaAction;
    use crate::field_series::NodalQuotientElement;

    /// `p = 7`, `e = 3`, `α = (0, 1, 1)`, `F = (diag(1, u, u), diag(1, v⁻¹, v⁻¹))`.
    fn worked() -> GiesekerGermDatum {
        let act = GammaAction::new(7, 3).unwrap();
        let m = |k: i64| LaurentSeries::monomial(Fp::one(7), k, 20);
        let f = Matrix::diagonal(
            [0, 1, 1]
                .iter()
                .map(|&k| NodalQuotientElement::new(m(k), m(-k)))
                .collect(),
        );
        let germ = LocalChartGerm {
            p: 7,
            e: 3,
            zeta: act.zeta,
            alpha: vec![0, 1, 1],
            f,
            raw_action: None,
        };
        forward(&germ).unwrap()
    }

    #[test]
    fn identity_reparametrization() {
        let d = worked();
        let one = PowerSeries::one(7, 6);
        let rp = NodeReparam::new(one.clone(), one, d.e).unwrap();
        let (d2, (gv, gw)) = reparam_transform(&d, &rp).unwrap();
        assert_eq!(d2, d);
        assert!(gv.is_identity() && gw.is_identity());
    }

    #[test]
    fn worked_germ_scales_columns() {
        let d = worked();
        assert_eq!(d.exponents.a, vec![0, 1, 1]);
        let pi = PowerSeries::from_ints(&[1, 1], 7, 6);
        let rp = NodeReparam::new(pi.clone(), PowerSeries::one(7, 6), d.e).unwrap();
        let (d2, _) = reparam_transform(&d, &rp).unwrap();
        let pl = LaurentSeries::from(&pi);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if j == 0 || i != j {
                    d.h1.get(i, j).clone()
                } else {
                    pl.clone()
                };
                assert_eq!(d2.h1.get(i, j), &expect, "({i},{j})");
            }
        }
        assert_eq!(d2.h2, d.h2);
        assert_eq!(d2.point, d.point);
        assert!(reparam_square_holds(&d, &rp).unwrap());
    }

    #[test]
    fn fiber_maps_are_predicted_diagonals() {
        let d = worked();
        let pi = PowerSeries::from_ints(&[3, 1], 7, 6);
        let om = PowerSeries::from_ints(&[2, 0, 5], 7, 6);
        let rp = NodeReparam::new(pi, om, d.e).unwrap();
        let (_, (gv, gw)) = reparam_transform(&d, &rp).unwrap();
        let inv3 = Fp::new(3, 7).inv().unwrap();
        assert_eq!(gv, Matrix::diagonal(vec![Fp::one(7), inv3, inv3]));
        assert_eq!(gw, Matrix::diagonal(vec![Fp::one(7), Fp::new(2, 7), Fp::new(2, 7)]));
        assert!(reparam_square_holds(&d, &rp).unwrap());
    }

    #[test]
    fn non_units_rejected() {
        let z = PowerSeries::from_ints(&[0, 1], 7, 4);
        assert_eq!(NodeReparam::new(z, PowerSeries::one(7, 4), 2), Err(Error::NotUnit));
    }
}
