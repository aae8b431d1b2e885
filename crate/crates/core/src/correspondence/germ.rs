//! Local chart data of a twisted bundle at a node, and its normalization to
//! a diagonal action.

use serde::{Deserialize, Serialize};

use crate::eq_matrix::{
    apply_gamma, cocycle_norm_check, diagonalize_action, is_equivariant, Diagonalization,
    GammaAction, Matrix,
};
use crate::error::{Error, Result};
use crate::field_series::{
    check_prime, Fp, LaurentSeries, NodalQuotientElement, NodalRingElement, Ring, SeriesJson,
};

/// Germ of a twisted bundle at a node: the cyclic group `Z/e` generated by
/// `γ`, the characters `α`, and the glue matrix `F` over `k((u)) × k((v))`
/// with `γ(F) = F·diag(ζ^α)`.
///
/// When `raw_action` is present the action is not yet diagonal and `F`
/// satisfies `γ(F) = F·a` instead; `alpha` is ignored until
/// [`normalize_chart`] is applied.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalChartGerm {
    pub p: u64,
    pub e: u64,
    pub zeta: Fp,
    pub alpha: Vec<u64>,
    pub f: Matrix<NodalQuotientElement>,
    pub raw_action: Option<Matrix<NodalRingElement>>,
}

impl LocalChartGerm {
    pub fn action(&self) -> Result<GammaAction> {
        GammaAction::with_zeta(self.zeta, self.e)
    }

    pub fn rank(&self) -> usize {
        self.f.cols()
    }

    pub fn validate(&self) -> Result<()> {
        check_prime(self.p)?;
        if self.zeta.modulus() != self.p {
            return Err(Error::ModulusMismatch(self.zeta.modulus(), self.p));
        }
        let act = self.action()?;
        if !self.f.is_square() {
            return Err(Error::Dimension(format!(
                "glue matrix is {}x{}",
                self.f.rows(),
                self.f.cols()
            )));
        }
        if self.f.entries().iter().any(|x| x.modulus() != self.p) {
            return Err(Error::ModulusMismatch(self.f.get(0, 0).modulus(), self.p));
        }
        self.f.nodal_inverse()?;
        match &self.raw_action {
            Some(a) => {
                if a.rows() != self.rank() || a.cols() != self.rank() {
                    return Err(Error::Dimension("action and glue matrix differ in size".into()));
                }
                if !cocycle_norm_check(a, &act)? {
                    return Err(Error::NormCheckFailed);
                }
                if apply_gamma(&self.f, &act) != self.f.mul(&a.to_quotient()) {
                    return Err(Error::NotEquivariant);
                }
            }
            None => {
                if self.alpha.len() != self.rank() {
                    return Err(Error::Dimension(format!(
                        "{} characters for rank {}",
                        self.alpha.len(),
                        self.rank()
                    )));
                }
                if !is_equivariant(&self.f, &self.alpha, &act) {
                    return Err(Error::NotEquivariant);
                }
            }
        }
        Ok(())
    }
}

/// Replaces the raw cocycle `a` by `diag(ζ^α)` through `F ↦ F·b`, where
/// `a·γ(b) = b·diag(ζ^α)`.
///
/// A germ without a raw action is returned unchanged with `b = 1`.
pub fn normalize_chart(raw: &LocalChartGerm) -> Result<(LocalChartGerm, Diagonalization)> {
    let act = raw.action()?;
    let Some(a) = &raw.raw_action else {
        raw.validate()?;
        let precision = raw
            .f
            .entries()
            .iter()
            .map(|x| x.u.precision().max(0) as usize)
            .min()
            .unwrap_or(0);
        let proto = NodalRingElement::constant(Fp::one(raw.p), precision);
        return Ok((
            raw.clone(),
            Diagonalization {
                b: Matrix::identity_like(&proto, raw.rank()),
                z: act.diag_roots(&raw.alpha),
                alpha: raw.alpha.clone(),
            },
        ));
    };
    raw.validate()?;
    let d = diagonalize_action(a, &act)?;
    let germ = LocalChartGerm {
        alpha: d.alpha.clone(),
        f: raw.f.mul(&d.b.to_quotient()),
        raw_action: None,
        ..raw.clone()
    };
    if !is_equivariant(&germ.f, &germ.alpha, &act) {
        return Err(Error::NotEquivariant);
    }
    Ok((germ, d))
}

/// A matrix over `k((u)) × k((v))` (or `k[[u,v]]/(uv)`) as its two branches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchMatrixJson {
    pub u: Vec<Vec<SeriesJson>>,
    pub v: Vec<Vec<SeriesJson>>,
}

impl BranchMatrixJson {
    fn branch(rows: &[Vec<SeriesJson>], p: u64, n: i64) -> Result<Matrix<LaurentSeries>> {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|x| x.to_laurent(p, n)).collect())
                .collect(),
        )
    }

    pub fn to_quotient(&self, p: u64, n: i64) -> Result<Matrix<NodalQuotientElement>> {
        Matrix::join(&Self::branch(&self.u, p, n)?, &Self::branch(&self.v, p, n)?)
    }

    pub fn to_nodal(&self, p: u64, n: i64) -> Result<Matrix<NodalRingElement>> {
        let (u, v) = (Self::branch(&self.u, p, n)?, Self::branch(&self.v, p, n)?);
        if (u.rows(), u.cols()) != (v.rows(), v.cols()) {
            return Err(Error::Dimension("branches have different shapes".into()));
        }
        let rows = (0..u.rows())
            .map(|i| {
                (0..u.cols())
                    .map(|j| {
                        NodalRingElement::new(
                            u.get(i, j).to_power_series()?,
                            v.get(i, j).to_power_series()?,
                        )
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn from_quotient(m: &Matrix<NodalQuotientElement>) -> Self {
        let (u, v) = m.split();
        let conv = |x: &Matrix<LaurentSeries>| {
            x.to_rows()
                .iter()
                .map(|row| row.iter().map(SeriesJson::from).collect())
                .collect()
        };
        BranchMatrixJson {
            u: conv(&u),
            v: conv(&v),
        }
    }
}

/// Wire form of a [`LocalChartGerm`]. `zeta` defaults to the deterministic
/// root `g^((p−1)/e)`; `p` is taken from the surrounding job when absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(rename = "F")]
    pub f: BranchMatrixJson,
    pub e: u64,
    #[serde(default)]
    pub zeta: Option<u64>,
    #[serde(default)]
    pub alpha: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_action: Option<BranchMatrixJson>,
}

impl GermJson {
    /// Builds and validates the germ; series without an explicit precision
    /// get `default_precision`.
    pub fn to_germ(&self, p: u64, default_precision: i64) -> Result<LocalChartGerm> {
        let p = self.p.unwrap_or(p);
        check_prime(p)?;
        let act = match self.zeta {
            Some(z) => GammaAction::with_zeta(Fp::from_u64(z, p), self.e)?,
            None => GammaAction::new(p, self.e)?,
        };
        let germ = LocalChartGerm {
            p,
            e: self.e,
            zeta: act.zeta,
            alpha: self.alpha.clone(),
            f: self.f.to_quotient(p, default_precision)?,
            raw_action: self
                .raw_action
                .as_ref()
                .map(|a| a.to_nodal(p, default_precision))
                .transpose()?,
        };
        germ.validate()?;
        Ok(germ)
    }
}

impl From<&LocalChartGerm> for GermJson {
    fn from(g: &LocalChartGerm) -> Self {
        GermJson {
            p: Some(g.p),
            e: g.e,
            zeta: Some(g.zeta.value()),
            alpha: g.alpha.clone(),
            f: BranchMatrixJson::from_quotient(&g.f),
            raw_action: g
                .raw_action
                .as_ref()
                .map(|a| BranchMatrixJson::from_quotient(&a.to_quotient())),
        }
    }
}

impl Serialize for LocalChartGerm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GermJson::from(self).serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 8;

    fn lm(c: i64, k: i64, p: u64) -> LaurentSeries {
        LaurentSeries::monomial(Fp::new(c, p), k, N as i64)
    }

    fn q(u: LaurentSeries, v: LaurentSeries) -> NodalQuotientElement {
        NodalQuotientElement::new(u, v)
    }

    fn const_nodal(m: &Matrix<Fp>) -> Matrix<NodalRingElement> {
        m.lift(&NodalRingElement::constant(Fp::one(m.get(0, 0).modulus()), N))
    }

    fn diag_germ(p: u64, a: &[i64]) -> Matrix<NodalQuotientElement> {
        Matrix::diagonal(a.iter().map(|&k| q(lm(1, k, p), lm(1, -k, p))).collect())
    }

    #[test]
    fn trivial_action_leaves_germ() {
        let f = diag_germ(7, &[0, 0]);
        let raw = LocalChartGerm {
            p: 7,
            e: 1,
            zeta: Fp::one(7),
            alpha: vec![],
            f: f.clone(),
            raw_action: Some(const_nodal(&Matrix::identity(2, 7))),
        };
        let (g, d) = normalize_chart(&raw).unwrap();
        assert_eq!(g.alpha, vec![0, 0]);
        assert_eq!(g.f, f);
        assert!(d.b.residue().is_identity());
    }

    #[test]
    fn diagonal_action_gives_its_characters() {
        // γ(F) = F·diag(1, ζ) for F = diag(1, u) on the u-branch
        let act = GammaAction::new(7, 3).unwrap();
        let f = diag_germ(7, &[0, 1]);
        let a = Matrix::diagonal(vec![Fp::one(7), act.zeta]);
        let raw = LocalChartGerm {
            p: 7,
            e: 3,
            zeta: act.zeta,
            alpha: vec![],
            f,
            raw_action: Some(const_nodal(&a)),
        };
        let (g, d) = normalize_chart(&raw).unwrap();
        assert_eq!(g.alpha, vec![0, 1]);
        // b = e·Id for an already diagonal constant action
        assert_eq!(d.b.residue(), Matrix::identity(2, 7).scale(Fp::new(3, 7)));
        assert!(g.validate().is_ok());
    }

    #[test]
    fn swap_action_is_diagonalized() {
        let p = 7;
        let act = GammaAction::new(p, 2).unwrap();
        assert_eq!(act.zeta.value(), 6);
        let swap = Matrix::from_ints(&[vec![0, 1], vec![1, 0]], p).unwrap();
        // start from an equivariant F0 for α = (0, 1) and undo the basis change
        let f0 = diag_germ(p, &[0, 1]);
        let c = Matrix::from_ints(&[vec![1, 1], vec![1, 6]], p).unwrap();
        let proto = f0.get(0, 0).clone();
        let f = f0.mul(&c.inverse().unwrap().lift(&proto));
        let raw = LocalChartGerm {
            p,
            e: 2,
            zeta: act.zeta,
            alpha: vec![],
            f,
            raw_action: Some(const_nodal(&swap)),
        };
        raw.validate().unwrap();
        let (g, _) = normalize_chart(&raw).unwrap();
        assert_eq!(g.alpha, vec![0, 1]);
        assert!(is_equivariant(&g.f, &g.alpha, &act));
    }

    #[test]
    fn rejects_inconsistent_raw_action() {
        let act = GammaAction::new(7, 3).unwrap();
        let raw = LocalChartGerm {
            p: 7,
            e: 3,
            zeta: act.zeta,
            alpha: vec![],
            f: diag_germ(7, &[0, 1]),
            raw_action: Some(const_nodal(&Matrix::identity(2, 7))),
        };
        assert_eq!(raw.validate(), Err(Error::NotEquivariant));
        let bad_norm = Matrix::diagonal(vec![Fp::one(7), Fp::new(3, 7)]);
        let raw = LocalChartGerm {
            raw_action: Some(const_nodal(&bad_norm)),
            ..raw
        };
        assert_eq!(raw.validate(), Err(Error::NormCheckFailed));
    }

    #[test]
    fn json_roundtrip() {
        let act = GammaAction::new(7, 3).unwrap();
        let g = LocalChartGerm {
            p: 7,
            e: 3,
            zeta: act.zeta,
            alpha: vec![0, 1],
            f: diag_germ(7, &[0, 1]),
            raw_action: None,
        };
        let j = GermJson::from(&g);
        let text = serde_json::to_string(&j).unwrap();
        let back: GermJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_germ(7, N as i64).unwrap(), g);
    }
}
