//! Truncated power series `k[[s]] / (s^{N+1})`.

use crate::error::{Error, Result};

use super::{Fp, Ring, Twist};

/// A power series known up to and including the exponent `precision`.
#[derive(Clone, Debug)]
pub struct PowerSeries {
    modulus: u64,
    coeffs: Vec<Fp>,
}

impl PowerSeries {
    /// Builds a series from its coefficients; the precision is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Fp>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs precision >= 0");
        let modulus = coeffs[0].modulus();
        PowerSeries { modulus, coeffs }
    }

    /// Coefficients `0, 1, ...` from integers, zero-padded to `precision`.
    pub fn from_ints(values: &[i64], modulus: u64, precision: usize) -> Self {
        let coeffs = (0..=precision)
            .map(|k| Fp::new(values.get(k).copied().unwrap_or(0), modulus))
            .collect();
        PowerSeries { modulus, coeffs }
    }

    pub fn zero(modulus: u64, precision: usize) -> Self {
        PowerSeries {
            modulus,
            coeffs: vec![Fp::zero(modulus); precision + 1],
        }
    }

    pub fn one(modulus: u64, precision: usize) -> Self {
        Self::monomial(Fp::one(modulus), 0, precision)
    }

    pub fn monomial(c: Fp, degree: usize, precision: usize) -> Self {
        let mut s = Self::zero(c.modulus(), precision);
        if degree <= precision {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The series variable `s`.
    pub fn variable(modulus: u64, precision: usize) -> Self {
        Self::monomial(Fp::one(modulus), 1, precision)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Fp {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Fp::zero(self.modulus))
    }

    pub fn constant_term(&self) -> Fp {
        self.coeffs[0]
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        PowerSeries {
            modulus: self.modulus,
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let coeffs = (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect();
        PowerSeries {
            modulus: self.modulus,
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let coeffs = (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect();
        PowerSeries {
            modulus: self.modulus,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        PowerSeries {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn scale(&self, c: Fp) -> Self {
        PowerSeries {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let mut coeffs = vec![Fp::zero(self.modulus); n + 1];
        for (i, &a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        PowerSeries {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Multiplicative inverse; fails unless the constant term is nonzero.
    pub fn inv(&self) -> Result<Self> {
        let c0inv = self.coeffs[0].inv().ok_or(Error::NotUnit)?;
        let n = self.precision();
        let mut out = vec![Fp::zero(self.modulus); n + 1];
        out[0] = c0inv;
        for k in 1..=n {
            let mut acc = Fp::zero(self.modulus);
            for j in 1..=k {
                acc = acc + self.coeffs[j] * out[k - j];
            }
            out[k] = -(acc * c0inv);
        }
        Ok(PowerSeries {
            modulus: self.modulus,
            coeffs: out,
        })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus, self.precision());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// `f(c·s)`: the coefficient of `s^n` is multiplied by `c^n`.
    pub fn scale_variable(&self, c: Fp) -> Self {
        let mut w = Fp::one(self.modulus);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| {
                let y = x * w;
                w = w * c;
                y
            })
            .collect();
        PowerSeries {
            modulus: self.modulus,
            coeffs,
        }
    }

    pub fn add_constant(mut self, c: Fp) -> Self {
        self.coeffs[0] = self.coeffs[0] + c;
        self
    }

    /// Substitution `f(g)` for `g` with zero constant term.
    pub fn compose(&self, arg: &PowerSeries) -> Result<Self> {
        if !arg.constant_term().is_zero() {
            return Err(Error::BadSubstitution(Some(0)));
        }
        let n = self.precision().min(arg.precision());
        let g = arg.truncate(n);
        let mut acc = PowerSeries::monomial(self.coeffs[n], 0, n);
        for k in (0..n).rev() {
            acc = acc.mul(&g).add_constant(self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Exact equality including precision.
    pub fn eq_exact(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.coeffs == other.coeffs
    }
}

/// Coefficientwise equality up to the smaller of the two precisions.
impl PartialEq for PowerSeries {
    fn eq(&self, other: &Self) -> bool {
        let n = self.precision().min(other.precision());
        self.modulus == other.modulus && self.coeffs[..=n] == other.coeffs[..=n]
    }
}

impl Ring for PowerSeries {
    fn modulus(&self) -> u64 {
        self.modulus
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.modulus, self.precision())
    }
    fn one_like(&self) -> Self {
        Self::one(self.modulus, self.precision())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scale(&self, c: Fp) -> Self {
        PowerSeries::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn unit_weight(&self) -> Option<i64> {
        self.is_unit().then_some(0)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Twist for PowerSeries {
    fn twist(&self, zeta: Fp) -> Self {
        self.scale_variable(zeta)
    }
}
