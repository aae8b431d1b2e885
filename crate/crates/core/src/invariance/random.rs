//! Seeded samplers for series, matrices, cocycles and germs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::correspondence::LocalChartGerm;
use crate::eq_matrix::{apply_gamma, assemble_f, ExponentVector, GammaAction, Matrix};
use crate::error::Result;
use crate::field_series::{Fp, LaurentSeries, NodalRingElement, PowerSeries, Ring};

pub fn random_fp<R: Rng + ?Sized>(rng: &mut R, p: u64) -> Fp {
    Fp::from_u64(rng.gen_range(0..p), p)
}

pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, p: u64) -> Fp {
    Fp::from_u64(rng.gen_range(1..p), p)
}

/// Uniform coefficients up to `x^precision`.
pub fn random_series<R: Rng + ?Sized>(rng: &mut R, p: u64, precision: usize) -> PowerSeries {
    PowerSeries::new((0..=precision).map(|_| random_fp(rng, p)).collect())
}

/// Nonzero constant term, uniform higher coefficients.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, p: u64, precision: usize) -> PowerSeries {
    let s = random_series(rng, p, precision);
    let c = s.constant_term();
    s.add_constant(random_nonzero(rng, p) - c)
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, p: u64) -> Matrix<Fp> {
    if n == 0 {
        return Matrix::identity(0, p);
    }
    loop {
        let m = Matrix::from_fn(n, n, |_, _| random_fp(rng, p));
        if m.determinant().is_some_and(|d| !d.is_zero()) {
            return m;
        }
    }
}

/// `s^k·(C + s·X(s))` with random invertible `C` and `k ∈ {−1, 0, 1}` per
/// column, invertible over `k((s))`.
pub fn random_glue<R: Rng + ?Sized>(rng: &mut R, n: usize, p: u64, precision: usize) -> Matrix<LaurentSeries> {
    let c = random_invertible(rng, n, p);
    let shifts: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
    Matrix::from_fn(n, n, |i, j| {
        let tail = random_series(rng, p, precision);
        let mut coeffs = vec![*c.get(i, j)];
        coeffs.extend_from_slice(&tail.coeffs()[..precision]);
        LaurentSeries::from(&PowerSeries::new(coeffs)).shift(shifts[j])
    })
}

/// `C + u·X(u) + v·Y(v)` with random invertible `C`.
pub fn random_nodal_invertible<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    p: u64,
    precision: usize,
) -> Matrix<NodalRingElement> {
    let c = random_invertible(rng, n, p);
    Matrix::from_fn(n, n, |i, j| {
        let branch = |rng: &mut R| {
            let s = random_series(rng, p, precision);
            let k = s.constant_term();
            s.add_constant(*c.get(i, j) - k)
        };
        let u = branch(rng);
        let v = branch(rng);
        NodalRingElement::new(u, v).expect("constant terms agree")
    })
}

/// A cocycle `a = b·diag(ζ^α)·γ(b)⁻¹` together with `b` and `α`.
pub fn random_cocycle<R: Rng + ?Sized>(
    rng: &mut R,
    r: usize,
    act: &GammaAction,
    precision: usize,
) -> Result<(Matrix<NodalRingElement>, Matrix<NodalRingElement>, Vec<u64>)> {
    let p = act.modulus();
    let alpha: Vec<u64> = (0..r).map(|_| rng.gen_range(0..act.e)).collect();
    let b = random_nodal_invertible(rng, r, p, precision);
    let proto = NodalRingElement::constant(Fp::one(p), precision);
    let z: Vec<_> = act.diag_roots(&alpha).into_iter().map(|x| proto.constant(x)).collect();
    let a = b.scale_columns(&z).mul(&apply_gamma(&b, act).inverse()?);
    Ok((a, b, alpha))
}

/// Sorted exponents in `[0, e)`.
pub fn random_exponents<R: Rng + ?Sized>(rng: &mut R, r: usize, e: u64) -> ExponentVector {
    let mut a: Vec<u64> = (0..r).map(|_| rng.gen_range(0..e)).collect();
    a.sort_unstable();
    ExponentVector::new(a, e).expect("sorted in range")
}

/// Shape of sampled germs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermSampler {
    pub p: u64,
    pub max_rank: usize,
    /// Candidate orders; those not dividing `p − 1` are skipped.
    pub orders: Vec<u64>,
    /// Precision of the chart matrix in `u` and `v`.
    pub precision: usize,
}

impl GermSampler {
    pub fn usable_orders(&self) -> Vec<u64> {
        self.orders
            .iter()
            .copied()
            .filter(|&e| e >= 1 && (self.p - 1).is_multiple_of(e))
            .collect()
    }
}

/// A germ in the image of the forward map's domain: random characters in
/// random column order and random invertible `H¹, H²`.
pub fn random_germ<R: Rng + ?Sized>(rng: &mut R, s: &GermSampler) -> Result<LocalChartGerm> {
    let orders = s.usable_orders();
    let e = *orders.choose(rng).unwrap_or(&1);
    let r = rng.gen_range(1..=s.max_rank.max(1));
    let act = GammaAction::new(s.p, e)?;
    let exps = random_exponents(rng, r, e);
    let hp = (s.precision / e as usize).max(1);
    let h1 = random_glue(rng, r, s.p, hp);
    let h2 = random_glue(rng, r, s.p, hp);
    let f = assemble_f(&h1, &h2, &exps)?;
    let mut shuffle: Vec<usize> = (0..r).collect();
    shuffle.shuffle(rng);
    let alpha = shuffle.iter().map(|&k| exps.a[k]).collect();
    let germ = LocalChartGerm {
        p: s.p,
        e,
        zeta: act.zeta,
        alpha,
        f: f.permute_columns(&shuffle),
        raw_action: None,
    };
    germ.validate()?;
    Ok(germ)
}
