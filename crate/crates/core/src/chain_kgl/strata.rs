//! Stratum index sets `(I, J)` and their bijection with chain data
//! `(n1, n2, d_1..d_n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Stratum {
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
}

/// Chain data: the distinguished node sits between components `n1` and
/// `n1 + 1`, and `degrees[k]` is the degree on component `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainData {
    pub n1: usize,
    pub n2: usize,
    pub degrees: Vec<usize>,
}

fn min_or_r(s: &[usize], r: usize) -> usize {
    s.first().copied().unwrap_or(r)
}

fn strictly_increasing_below(s: &[usize], r: usize) -> bool {
    s.windows(2).all(|w| w[0] < w[1]) && s.last().is_none_or(|&x| x < r)
}

/// `I, J ⊆ [0, r−1]` strictly increasing with `min(I) + min(J) ≥ r`,
/// where `min(∅) = r`.
pub fn validate_stratum(r: usize, i_set: &[usize], j_set: &[usize]) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidStratum("rank must be positive".into()));
    }
    for (name, s) in [("I", i_set), ("J", j_set)] {
        if !strictly_increasing_below(s, r) {
            return Err(Error::InvalidStratum(format!(
                "{name} = {s:?} is not a strictly increasing subset of [0, {}]",
                r - 1
            )));
        }
    }
    if min_or_r(i_set, r) + min_or_r(j_set, r) < r {
        return Err(Error::InvalidStratum(format!(
            "min(I) + min(J) < {r} for I = {i_set:?}, J = {j_set:?}"
        )));
    }
    Ok(())
}

/// `i_ν = r − Σ_{i=ν}^{n1} d_i` and `j_ν = r − Σ_{i=n1+1}^{n−ν+1} d_i`.
pub fn stratum_indices_from_chain(r: usize, chain: &ChainData) -> Result<Stratum> {
    let ChainData { n1, n2, degrees } = chain;
    let (n1, n2) = (*n1, *n2);
    if degrees.len() != n1 + n2 {
        return Err(Error::InvalidChain(format!(
            "{} degrees for a chain of length {}",
            degrees.len(),
            n1 + n2
        )));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidChain("degrees must be at least 1".into()));
    }
    let n = n1 + n2;
    let signed = |sum: usize| r as i64 - sum as i64;
    let i_set: Vec<i64> = (1..=n1)
        .map(|nu| signed(degrees[nu - 1..n1].iter().sum()))
        .collect();
    let j_set: Vec<i64> = (1..=n2)
        .map(|nu| signed(degrees[n1..n - nu + 1].iter().sum()))
        .collect();
    if i_set.iter().chain(&j_set).any(|&x| x < 0) {
        return Err(Error::InvalidChain(format!(
            "degrees {degrees:?} exceed the rank {r}"
        )));
    }
    let i_set: Vec<usize> = i_set.into_iter().map(|x| x as usize).collect();
    let j_set: Vec<usize> = j_set.into_iter().map(|x| x as usize).collect();
    validate_stratum(r, &i_set, &j_set)
        .map_err(|e| Error::InvalidChain(format!("degrees {degrees:?}: {e}")))?;
    Ok(Stratum { i_set, j_set })
}

/// Inverse of [`stratum_indices_from_chain`]: `d_ν = i_{ν+1} − i_ν` and
/// `d_{n1+k} = j_{n2−k+2} − j_{n2−k+1}` with `i_{n1+1} = j_{n2+1} = r`.
pub fn chain_from_stratum(r: usize, stratum: &Stratum) -> Result<ChainData> {
    let Stratum { i_set, j_set } = stratum;
    validate_stratum(r, i_set, j_set)?;
    let (n1, n2) = (i_set.len(), j_set.len());
    let i = |nu: usize| if nu == n1 + 1 { r } else { i_set[nu - 1] };
    let j = |nu: usize| if nu == n2 + 1 { r } else { j_set[nu - 1] };
    let mut degrees: Vec<usize> = (1..=n1).map(|nu| i(nu + 1) - i(nu)).collect();
    degrees.extend((1..=n2).map(|k| j(n2 - k + 2) - j(n2 - k + 1)));
    Ok(ChainData { n1, n2, degrees })
}

/// All valid `(I, J)` for rank `r`; `J` runs over bitmasks in the outer
/// loop and `I` in the inner loop.
pub fn enumerate_strata(r: usize) -> Vec<Stratum> {
    let subset = |mask: u32| -> Vec<usize> { (0..r).filter(|&k| mask >> k & 1 == 1).collect() };
    let mut out = Vec::new();
    for jm in 0..1u32 << r {
        let j_set = subset(jm);
        for im in 0..1u32 << r {
            let i_set = subset(im);
            if validate_stratum(r, &i_set, &j_set).is_ok() {
                out.push(Stratum {
                    i_set: i_set.clone(),
                    j_set: j_set.clone(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(i: &[usize], j: &[usize]) -> Stratum {
        Stratum {
            i_set: i.to_vec(),
            j_set: j.to_vec(),
        }
    }

    fn ch(n1: usize, n2: usize, d: &[usize]) -> ChainData {
        ChainData {
            n1,
            n2,
            degrees: d.to_vec(),
        }
    }

    #[test]
    fn index_formulas() {
        assert_eq!(stratum_indices_from_chain(4, &ch(1, 1, &[1, 2])).unwrap(), st(&[3], &[2]));
        assert_eq!(stratum_indices_from_chain(3, &ch(1, 0, &[2])).unwrap(), st(&[1], &[]));
        assert_eq!(stratum_indices_from_chain(5, &ch(0, 0, &[])).unwrap(), st(&[], &[]));
        assert!(stratum_indices_from_chain(2, &ch(1, 1, &[2, 1])).is_err());
        assert!(stratum_indices_from_chain(2, &ch(1, 0, &[0])).is_err());
    }

    #[test]
    fn inverse_formulas() {
        assert_eq!(chain_from_stratum(4, &st(&[3], &[2])).unwrap(), ch(1, 1, &[1, 2]));
        assert_eq!(chain_from_stratum(3, &st(&[], &[])).unwrap(), ch(0, 0, &[]));
        assert_eq!(chain_from_stratum(3, &st(&[0, 1], &[])).unwrap(), ch(2, 0, &[1, 2]));
        assert!(chain_from_stratum(2, &st(&[0], &[0])).is_err());
    }

    #[test]
    fn enumeration_small_ranks() {
        assert_eq!(
            enumerate_strata(1),
            vec![st(&[], &[]), st(&[0], &[]), st(&[], &[0])]
        );
        // the four (I, ∅), three further (∅, J), and ({1}, {1})
        assert_eq!(enumerate_strata(2).len(), 8);
    }
}
