//! Exchanging the two branches of the node.

use crate::correspondence::GiesekerGermDatum;
use crate::eq_matrix::{assemble_f, extract_h, is_equivariant, ExponentVector, Matrix};
use crate::error::{Error, Result};
use crate::field_series::LaurentSeries;

/// `λ(i) = i` on `D_1` and `r + i_1 + 1 − i` after it, zero-based.
pub fn swap_permutation(r: usize, i1: usize) -> Vec<usize> {
    (0..r).map(|i| if i < i1 { i } else { r + i1 - 1 - i }).collect()
}

/// `ã_i = a_i` on `D_1` and `e − a_{λ(i)}` after it.
pub fn swapped_exponents(exps: &ExponentVector, i1: usize) -> Result<ExponentVector> {
    let lambda = swap_permutation(exps.rank(), i1);
    let a = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| if i < i1 { exps.a[i] } else { exps.e - exps.a[l] })
        .collect();
    ExponentVector::new(a, exps.e)
}

/// Multiplies the columns outside `D_1` by `x^k`.
fn shift_tail(h: &Matrix<LaurentSeries>, i1: usize, k: i64) -> Matrix<LaurentSeries> {
    Matrix::from_fn(h.rows(), h.cols(), |i, j| {
        let x = h.get(i, j);
        if j < i1 {
            x.clone()
        } else {
            x.shift(k)
        }
    })
}

/// The datum seen with `u` and `v` exchanged: `ζ ↦ ζ⁻¹`, `a ↦ ã`,
/// `H̃¹ = H²·Λ·diag(I, s⁻¹I)` and `H̃² = H¹·Λ·diag(I, tI)`.
///
/// Checks the glue identities `H̃¹·Λ·diag(I, sI) = H²` and
/// `H̃²·Λ·diag(I, t⁻¹I) = H¹` and the block relations `|D̃_1| = |D_1|`,
/// `|D̃_i| = |D_{m+2−i}|`.
pub fn branch_swap_transform(datum: &GiesekerGermDatum) -> Result<GiesekerGermDatum> {
    let r = datum.rank();
    let i1 = datum.partition.block_sizes[0];
    let lambda = swap_permutation(r, i1);
    let exps = swapped_exponents(&datum.exponents, i1)?;
    let h1 = shift_tail(&datum.h2.permute_columns(&lambda), i1, -1);
    let h2 = shift_tail(&datum.h1.permute_columns(&lambda), i1, 1);

    let back1 = shift_tail(&h1.permute_columns(&lambda), i1, 1);
    let back2 = shift_tail(&h2.permute_columns(&lambda), i1, -1);
    if back1 != datum.h2 || back2 != datum.h1 {
        return Err(Error::IdentityFailed("swapped glue matrices do not compose back".into()));
    }

    let perm = lambda.iter().map(|&l| datum.perm[l]).collect();
    let zeta = datum.zeta.inv().ok_or(Error::NotUnit)?;
    let out = GiesekerGermDatum::with_exponents(datum.p, zeta, exps, perm, h1, h2)?;

    let (old, new) = (&datum.partition.block_sizes, &out.partition.block_sizes);
    let m = old.len();
    let reflected = new.len() == m && new[0] == old[0] && (1..m).all(|i| new[i] == old[m - i]);
    if !reflected {
        return Err(Error::IdentityFailed(format!(
            "block sizes {new:?} are not the reflection of {old:?}"
        )));
    }
    Ok(out)
}

/// Swapping branches of the chart matrix, `F̃ = (F²Λ, F¹Λ)`, and splitting
/// with `ã` and `ζ⁻¹` gives the same `H̃` as [`branch_swap_transform`].
pub fn branch_swap_chart_holds(datum: &GiesekerGermDatum) -> Result<bool> {
    let i1 = datum.partition.block_sizes[0];
    let lambda = swap_permutation(datum.rank(), i1);
    let f = assemble_f(&datum.h1, &datum.h2, &datum.exponents)?;
    let (f1, f2) = f.split();
    let g = Matrix::join(&f2.permute_columns(&lambda), &f1.permute_columns(&lambda))?;
    let swapped = branch_swap_transform(datum)?;
    let act = swapped.action()?;
    if !is_equivariant(&g, &swapped.exponents.a, &act) {
        return Ok(false);
    }
    let (k1, k2) = extract_h(&g, &swapped.exponents, &act)?;
    Ok(k1 == swapped.h1 && k2 == swapped.h2)
}
