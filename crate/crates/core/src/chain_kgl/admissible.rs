//! Bundles on chains of projective lines and the admissibility test.

use serde::{Deserialize, Serialize};

use crate::eq_matrix::Matrix;
use crate::error::{Error, Result};
use crate::field_series::Fp;

use super::Partition;

/// A bundle `⊕ O(d_{k,i})` with `d_{k,i} ∈ {0, 1}` on each component
/// `R_1..R_n`, glued at `y_k = x_{k+1}` by `glues[k]` (fiber at `y_k` to
/// fiber at `x_{k+1}`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectiveChain {
    pub r: usize,
    pub modulus: u64,
    pub degrees: Vec<Vec<u8>>,
    pub glues: Vec<Matrix<Fp>>,
}

impl ProjectiveChain {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidChain(s));
        if self.degrees.is_empty() {
            return bad("a chain needs at least one component".into());
        }
        if self.degrees.iter().any(|d| d.len() != self.r || d.iter().any(|&x| x > 1)) {
            return bad(format!("each component needs {} degrees in {{0, 1}}", self.r));
        }
        if self.glues.len() + 1 != self.degrees.len() {
            return bad(format!(
                "{} components need {} glue matrices, got {}",
                self.degrees.len(),
                self.degrees.len() - 1,
                self.glues.len()
            ));
        }
        for g in &self.glues {
            if g.rows() != self.r || g.cols() != self.r {
                return bad(format!("glue matrices must be {}x{}", self.r, self.r));
            }
            if g.entries().iter().any(|x| x.modulus() != self.modulus) {
                return bad("glue matrix over the wrong field".into());
            }
            if g.inverse().is_err() {
                return bad("glue matrices must be invertible".into());
            }
        }
        Ok(())
    }

    /// Total degree on each component.
    pub fn component_degrees(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .map(|d| d.iter().map(|&x| x as usize).sum())
            .collect()
    }

    /// Matrix of the linear conditions on global sections vanishing at
    /// `x_1` and `y_n`.
    ///
    /// A degree-one summand contributes its values at `x_k` and `y_k` as two
    /// unknowns (the sections with endpoint values `(1,0)` and `(0,1)`); a
    /// trivial summand contributes one constant.
    pub fn section_system(&self) -> Matrix<Fp> {
        let p = self.modulus;
        let r = self.r;
        // (x, y) unknown index of each summand on each component
        let mut slots = Vec::with_capacity(self.degrees.len());
        let mut count = 0;
        for d in &self.degrees {
            let comp: Vec<(usize, usize)> = d
                .iter()
                .map(|&deg| {
                    let x = count;
                    count += 1;
                    if deg == 1 {
                        count += 1;
                        (x, x + 1)
                    } else {
                        (x, x)
                    }
                })
                .collect();
            slots.push(comp);
        }
        let mut rows: Vec<Vec<Fp>> = Vec::new();
        let zero_row = || vec![Fp::zero(p); count];
        for i in 0..r {
            let mut row = zero_row();
            row[slots[0][i].0] = Fp::one(p);
            rows.push(row);
            let mut row = zero_row();
            row[slots[slots.len() - 1][i].1] = Fp::one(p);
            rows.push(row);
        }
        for (k, g) in self.glues.iter().enumerate() {
            for i in 0..r {
                let mut row = zero_row();
                for j in 0..r {
                    let y = slots[k][j].1;
                    row[y] = row[y] + *g.get(i, j);
                }
                let x = slots[k + 1][i].0;
                row[x] = row[x] - Fp::one(p);
                rows.push(row);
            }
        }
        Matrix::from_rows(rows).expect("rectangular")
    }

    /// Dimension of the space of sections vanishing at both chain ends.
    pub fn vanishing_sections(&self) -> Result<usize> {
        self.validate()?;
        let sys = self.section_system();
        Ok(sys.cols() - sys.rank())
    }
}

/// Every component has positive degree and no nonzero section vanishes at
/// both ends of the chain.
pub fn check_admissible(chain: &ProjectiveChain) -> Result<bool> {
    chain.validate()?;
    Ok(chain.component_degrees().iter().all(|&d| d >= 1) && chain.vanishing_sections()? == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Summand {
    Trivial,
    DegreeOne,
    DegreeMinusOne,
}

/// The bundles `E_0, …, E_m` on `R_0 ∪ R_1 ∪ … ∪ R_{m−1} ∪ R_m` built from a
/// partition: `E_0 = O^{D_1} ⊕ O(−1)^{rest}`, `E_i` has `O(1)` exactly on
/// `D_{i+1}`, and `E_m` is trivial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainBundleDescription {
    pub r: usize,
    pub m: usize,
    pub block_sizes: Vec<usize>,
    pub e0: Vec<Summand>,
    pub components: Vec<Vec<Summand>>,
    pub em: Vec<Summand>,
    /// Glue at `y_i = x_{i+1}` for `i = 1..m−2`.
    pub glues: Vec<Matrix<Fp>>,
}

impl ChainBundleDescription {
    pub fn canonical(part: &Partition, modulus: u64) -> Result<Self> {
        part.validate()?;
        let idx = part.block_index();
        let m = part.m();
        let e0 = idx
            .iter()
            .map(|&nu| if nu == 0 { Summand::Trivial } else { Summand::DegreeMinusOne })
            .collect();
        let components = (1..m)
            .map(|i| {
                idx.iter()
                    .map(|&nu| if nu == i { Summand::DegreeOne } else { Summand::Trivial })
                    .collect()
            })
            .collect();
        Ok(ChainBundleDescription {
            r: part.r,
            m,
            block_sizes: part.block_sizes.clone(),
            e0,
            components,
            em: vec![Summand::Trivial; part.r],
            glues: vec![Matrix::identity(part.r, modulus); m.saturating_sub(2)],
        })
    }

    /// Degrees `d_i` of `E_1, …, E_{m−1}`.
    pub fn degrees(&self) -> Vec<usize> {
        self.components
            .iter()
            .map(|c| c.iter().filter(|&&s| s == Summand::DegreeOne).count())
            .collect()
    }

    /// The projective part `R_1 ∪ … ∪ R_{m−1}`, absent when `m = 1`.
    pub fn projective_chain(&self, modulus: u64) -> Option<ProjectiveChain> {
        (self.m >= 2).then(|| ProjectiveChain {
            r: self.r,
            modulus,
            degrees: self
                .components
                .iter()
                .map(|c| c.iter().map(|&s| u8::from(s == Summand::DegreeOne)).collect())
                .collect(),
            glues: self.glues.clone(),
        })
    }
}
