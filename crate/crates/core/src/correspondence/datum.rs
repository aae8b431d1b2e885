//! From chart germs to Gieseker germs and back.

use serde::Serialize;

use crate::chain_kgl::{ChainBundleDescription, KglPoint, Partition};
use crate::eq_matrix::{extract_h, sort_exponents, ExponentVector, GammaAction, Matrix};
use crate::error::{Error, Result};
use crate::field_series::{check_prime, Fp, LaurentSeries, NodalQuotientElement};

use super::{normalize_chart, LocalChartGerm};

/// Germ of a Gieseker bundle at the node: the chain of projective lines with
/// its bundle, the glue matrices `H¹(s)`, `H²(t)` to the generic side, and
/// the generalized isomorphism between the fibers at the chain ends.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GiesekerGermDatum {
    pub p: u64,
    pub e: u64,
    pub zeta: Fp,
    pub exponents: ExponentVector,
    /// Sorted column `k` is original column `perm[k]`.
    pub perm: Vec<usize>,
    pub partition: Partition,
    pub chain: ChainBundleDescription,
    #[serde(rename = "H1")]
    pub h1: Matrix<LaurentSeries>,
    #[serde(rename = "H2")]
    pub h2: Matrix<LaurentSeries>,
    pub point: KglPoint,
}

impl GiesekerGermDatum {
    pub fn action(&self) -> Result<GammaAction> {
        GammaAction::with_zeta(self.zeta, self.e)
    }

    pub fn rank(&self) -> usize {
        self.partition.r
    }

    /// Rebuilds everything determined by the exponents: partition, chain
    /// and point.
    pub(crate) fn with_exponents(
        p: u64,
        zeta: Fp,
        exponents: ExponentVector,
        perm: Vec<usize>,
        h1: Matrix<LaurentSeries>,
        h2: Matrix<LaurentSeries>,
    ) -> Result<Self> {
        let partition = Partition::from_exponents(&exponents)?;
        let chain = ChainBundleDescription::canonical(&partition, p)?;
        let point = KglPoint::from_partition(&partition, p)?;
        Ok(GiesekerGermDatum {
            p,
            e: exponents.e,
            zeta,
            exponents,
            perm,
            partition,
            chain,
            h1,
            h2,
            point,
        })
    }

    pub fn validate(&self) -> Result<()> {
        check_prime(self.p)?;
        self.action()?;
        let r = self.rank();
        if self.exponents.e != self.e || self.exponents.rank() != r {
            return Err(Error::InvalidExponents("exponents do not match the datum".into()));
        }
        for h in [&self.h1, &self.h2] {
            if h.rows() != r || h.cols() != r {
                return Err(Error::Dimension(format!("glue matrices must be {r}x{r}")));
            }
            h.inverse()?;
        }
        let part = Partition::from_exponents(&self.exponents)?;
        if part != self.partition {
            return Err(Error::InvalidPartition("partition does not match the exponents".into()));
        }
        if self.chain != ChainBundleDescription::canonical(&part, self.p)? {
            return Err(Error::InvalidChain("chain is not the canonical one".into()));
        }
        if self.point != KglPoint::from_partition(&part, self.p)? {
            return Err(Error::InvalidPoint("point does not match the partition".into()));
        }
        Ok(())
    }
}

/// The Gieseker germ of a chart germ: sort the characters, split `F` into
/// `H¹, H²`, and read off the partition, chain and stratum point.
///
/// A germ carrying a raw action is normalized first.
pub fn forward(germ: &LocalChartGerm) -> Result<GiesekerGermDatum> {
    let germ = if germ.raw_action.is_some() {
        normalize_chart(germ)?.0
    } else {
        germ.validate()?;
        germ.clone()
    };
    let act = germ.action()?;
    let (exps, perm) = sort_exponents(&germ.alpha, germ.e)?;
    let f = germ.f.permute_columns(&perm);
    let (h1, h2) = extract_h(&f, &exps, &act)?;
    for h in [&h1, &h2] {
        h.inverse()?;
    }
    GiesekerGermDatum::with_exponents(germ.p, germ.zeta, exps, perm, h1, h2)
}

/// Smallest `e ≥ m` with `e | p − 1`.
pub fn choose_order(p: u64, m: usize) -> Result<u64> {
    let min = (m as u64).max(1);
    (min..p)
        .find(|e| (p - 1).is_multiple_of(*e))
        .ok_or(Error::NoCompatibleOrder { p, min })
}

/// The chart germ of a stratum point given in its adapted basis.
///
/// With `a_i = ν − 1` on `D_ν` the germ is `F = (diag(u^{a_i}), diag(v^{−a_i}))`
/// and `α = a`.
pub fn inverse(point: &KglPoint, p: u64, precision: i64) -> Result<LocalChartGerm> {
    check_prime(p)?;
    if point.modulus != p {
        return Err(Error::ModulusMismatch(point.modulus, p));
    }
    if !point.j_set.is_empty() {
        return Err(Error::NotAdapted("the inverse needs J = ∅".into()));
    }
    point.validate()?;
    if !point.is_standard() {
        return Err(Error::NotAdapted(
            "flags and classes must be the coordinate ones; use inverse_adapted".into(),
        ));
    }
    let part = Partition::from_stratum_i(point.r, &point.i_set)?;
    inverse_partition(&part, p, precision)
}

/// [`inverse`] for the standard point of a partition.
pub fn inverse_partition(part: &Partition, p: u64, precision: i64) -> Result<LocalChartGerm> {
    part.validate()?;
    let e = choose_order(p, part.m())?;
    let act = GammaAction::new(p, e)?;
    let a = part.minimal_exponents();
    let mono = |k: i64| LaurentSeries::monomial(Fp::one(p), k, precision);
    let f = Matrix::diagonal(
        a.iter()
            .map(|&x| NodalQuotientElement::new(mono(x as i64), mono(-(x as i64))))
            .collect(),
    );
    let germ = LocalChartGerm {
        p,
        e,
        zeta: act.zeta,
        alpha: a,
        f,
        raw_action: None,
    };
    germ.validate()?;
    Ok(germ)
}

/// [`inverse`] for any `J = ∅` point: also returns `(g_V, g_W)` with
/// `point = standard.transform(g_V, g_W)`.
pub fn inverse_adapted(
    point: &KglPoint,
    p: u64,
    precision: i64,
) -> Result<(LocalChartGerm, Matrix<Fp>, Matrix<Fp>)> {
    let (g_v, g_w, part) = point.adapted_basis()?;
    let standard = KglPoint::from_partition(&part, point.modulus)?;
    if standard.transform(&g_v, &g_w)? != *point {
        return Err(Error::IdentityFailed("adapted basis does not reproduce the point".into()));
    }
    Ok((inverse(&standard, p, precision)?, g_v, g_w))
}

/// `forward ∘ inverse` reproduces the point and its partition.
pub fn roundtrip_check(point: &KglPoint, p: u64, precision: i64) -> Result<bool> {
    let (germ, g_v, g_w) = inverse_adapted(point, p, precision)?;
    let datum = forward(&germ)?;
    let part = Partition::from_stratum_i(point.r, &point.i_set)?;
    Ok(datum.point.transform(&g_v, &g_w)? == *point && datum.partition == part)
}
