//! The ordered partition `[1,r] = D_1 ⊔ … ⊔ D_m` cut out by sorted
//! exponents, its two flags, and the parabolic weights at a smooth point.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::eq_matrix::{sort_exponents, ExponentVector};
use crate::error::{Error, Result};

/// Consecutive blocks of sizes `|D_1| ≥ 0` and `|D_ν| ≥ 1` for `ν ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub r: usize,
    pub block_sizes: Vec<usize>,
}

impl Partition {
    pub fn new(r: usize, block_sizes: Vec<usize>) -> Result<Self> {
        let p = Partition { r, block_sizes };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidPartition("rank must be positive".into()));
        }
        if self.block_sizes.is_empty() {
            return Err(Error::InvalidPartition("at least one block is required".into()));
        }
        if self.block_sizes[1..].contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "only the first block may be empty: {:?}",
                self.block_sizes
            )));
        }
        let total: usize = self.block_sizes.iter().sum();
        if total != self.r {
            return Err(Error::InvalidPartition(format!(
                "block sizes {:?} sum to {total}, expected {}",
                self.block_sizes, self.r
            )));
        }
        Ok(())
    }

    /// `D_1` collects the zero exponents; every further block is a maximal
    /// run of equal values.
    pub fn from_exponents(exps: &ExponentVector) -> Result<Self> {
        let a = &exps.a;
        let mut sizes = vec![a.iter().take_while(|&&x| x == 0).count()];
        let mut i = sizes[0];
        while i < a.len() {
            let run = a[i..].iter().take_while(|&&x| x == a[i]).count();
            sizes.push(run);
            i += run;
        }
        Partition::new(a.len(), sizes)
    }

    pub fn m(&self) -> usize {
        self.block_sizes.len()
    }

    /// Zero-based index ranges of the blocks.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.block_sizes
            .iter()
            .map(|&s| {
                let b = start..start + s;
                start += s;
                b
            })
            .collect()
    }

    /// Block number (zero-based) of each index.
    pub fn block_index(&self) -> Vec<usize> {
        self.blocks()
            .iter()
            .enumerate()
            .flat_map(|(nu, b)| b.clone().map(move |_| nu))
            .collect()
    }

    /// `dim F_i(V) = |D_1| + … + |D_i|` for `i = 0..=m`.
    pub fn dims_v(&self) -> Vec<usize> {
        let mut dims = vec![0];
        for &s in &self.block_sizes {
            dims.push(dims.last().unwrap() + s);
        }
        dims
    }

    /// `dim F_i(W) = |D_{m−i+1}| + … + |D_m|` for `i = 0..=m`.
    pub fn dims_w(&self) -> Vec<usize> {
        let mut dims = vec![0];
        for &s in self.block_sizes.iter().rev() {
            dims.push(dims.last().unwrap() + s);
        }
        dims
    }

    /// The index set `I` of the stratum containing the associated point;
    /// `J` is always empty.
    pub fn stratum_i(&self) -> Vec<usize> {
        let d = self.dims_v();
        d[1..self.m()].to_vec()
    }

    /// Inverse of [`stratum_i`](Self::stratum_i).
    pub fn from_stratum_i(r: usize, i_set: &[usize]) -> Result<Self> {
        let mut sizes = Vec::with_capacity(i_set.len() + 1);
        let mut prev = 0;
        for &i in i_set.iter().chain(std::iter::once(&r)) {
            if i < prev || (i == prev && !sizes.is_empty()) {
                return Err(Error::InvalidStratum(format!(
                    "{i_set:?} is not strictly increasing in [0, {r})"
                )));
            }
            sizes.push(i - prev);
            prev = i;
        }
        Partition::new(r, sizes)
    }

    /// Degrees `|D_2|, …, |D_m|` of the chain components.
    pub fn chain_degrees(&self) -> Vec<usize> {
        self.block_sizes[1..].to_vec()
    }

    /// Exponents `a_i = ν − 1` on `D_ν`.
    pub fn minimal_exponents(&self) -> Vec<u64> {
        self.block_index().into_iter().map(|nu| nu as u64).collect()
    }
}

/// A reduced fraction `num/den`.
pub type Weight = (u64, u64);

/// Flag with parabolic weights at a smooth marked point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicFlag {
    pub dims: Vec<usize>,
    pub weights: Vec<Weight>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Flag dimensions jump at the blocks of the sorted lifts; block `ν`
/// carries the weight `a/e` of its exponent.
pub fn parabolic_flag(alpha: &[u64], e: u64) -> Result<ParabolicFlag> {
    let (exps, _) = sort_exponents(alpha, e)?;
    let part = Partition::from_exponents(&exps)?;
    let weights = part
        .blocks()
        .iter()
        .map(|b| {
            let a = if b.is_empty() { 0 } else { exps.a[b.start] };
            let g = gcd(a, e);
            if a == 0 {
                (0, 1)
            } else {
                (a / g, e / g)
            }
        })
        .collect();
    Ok(ParabolicFlag {
        dims: part.dims_v(),
        weights,
    })
}
