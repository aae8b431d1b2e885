//! Truncated Laurent series `k((s))` with absolute precision tracking.

use crate::error::{Error, Result};

use super::{Fp, PowerSeries, Ring, Twist};

/// A Laurent series whose coefficients are known for every exponent
/// `<= precision`.
///
/// Stored normalized: `coeffs[0]` is the coefficient of `s^lowest` and is
/// nonzero, trailing zeros are trimmed, and the zero series is
/// `lowest = 0, coeffs = []`.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    modulus: u64,
    lowest: i64,
    coeffs: Vec<Fp>,
    precision: i64,
}

impl LaurentSeries {
    /// Builds and normalizes a series; coefficients above `precision` are dropped.
    pub fn from_coeffs(lowest: i64, coeffs: Vec<Fp>, precision: i64, modulus: u64) -> Self {
        let mut s = LaurentSeries {
            modulus,
            lowest,
            coeffs,
            precision,
        };
        s.normalize();
        s
    }

    pub fn from_ints(lowest: i64, values: &[i64], precision: i64, modulus: u64) -> Self {
        let coeffs = values.iter().map(|&v| Fp::new(v, modulus)).collect();
        Self::from_coeffs(lowest, coeffs, precision, modulus)
    }

    pub fn zero(modulus: u64, precision: i64) -> Self {
        LaurentSeries {
            modulus,
            lowest: 0,
            coeffs: Vec::new(),
            precision,
        }
    }

    pub fn one(modulus: u64, precision: i64) -> Self {
        Self::monomial(Fp::one(modulus), 0, precision)
    }

    pub fn monomial(c: Fp, degree: i64, precision: i64) -> Self {
        Self::from_coeffs(degree, vec![c], precision, c.modulus())
    }

    fn normalize(&mut self) {
        let keep = (self.precision - self.lowest + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.lowest = 0;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.lowest += k as i64;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Nonzero coefficients starting at `lowest`, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lowest)
    }

    /// Valuation, with the zero series counted at its first unknown exponent.
    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.precision + 1)
    }

    pub fn coeff(&self, k: i64) -> Fp {
        let idx = k - self.lowest;
        if idx < 0 {
            return Fp::zero(self.modulus);
        }
        self.coeffs
            .get(idx as usize)
            .copied()
            .unwrap_or_else(|| Fp::zero(self.modulus))
    }

    /// `(exponent, coefficient)` pairs of the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fp)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.lowest + i as i64, c))
    }

    pub fn with_precision(&self, precision: i64) -> Self {
        let mut s = self.clone();
        s.precision = s.precision.min(precision);
        s.normalize();
        s
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, |a, b| a - b)
    }

    fn combine(&self, rhs: &Self, op: impl Fn(Fp, Fp) -> Fp) -> Self {
        let precision = self.precision.min(rhs.precision);
        if self.is_zero() && rhs.is_zero() {
            return Self::zero(self.modulus, precision);
        }
        let lo = match (self.valuation(), rhs.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        if lo > precision {
            return Self::zero(self.modulus, precision);
        }
        let coeffs = (lo..=precision)
            .map(|k| op(self.coeff(k), rhs.coeff(k)))
            .collect();
        Self::from_coeffs(lo, coeffs, precision, self.modulus)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            modulus: self.modulus,
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
            precision: self.precision,
        }
    }

    pub fn scale(&self, c: Fp) -> Self {
        Self::from_coeffs(
            self.lowest,
            self.coeffs.iter().map(|&x| x * c).collect(),
            self.precision,
            self.modulus,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let va = self.effective_valuation();
        let vb = rhs.effective_valuation();
        let precision = (self.precision + vb).min(rhs.precision + va);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.modulus, precision);
        }
        let lowest = va + vb;
        if lowest > precision {
            return Self::zero(self.modulus, precision);
        }
        let len = (precision - lowest + 1) as usize;
        let mut coeffs = vec![Fp::zero(self.modulus); len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        Self::from_coeffs(lowest, coeffs, precision, self.modulus)
    }

    /// Inverse in the field `k((s))`; fails only for the zero series.
    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NotUnit)?;
        let rel = (self.precision - v) as usize;
        let unit = PowerSeries::new(
            (0..=rel as i64)
                .map(|k| self.coeff(v + k))
                .collect::<Vec<_>>(),
        );
        let uinv = unit.inv()?;
        Ok(Self::from_coeffs(
            -v,
            uinv.coeffs().to_vec(),
            rel as i64 - v,
            self.modulus,
        ))
    }

    pub fn powi(&self, exp: i64) -> Result<Self> {
        let (mut base, mut e) = if exp >= 0 {
            (self.clone(), exp as u64)
        } else {
            (self.inv()?, exp.unsigned_abs())
        };
        let rel = base.precision - base.effective_valuation();
        let mut acc = Self::one(self.modulus, rel.max(0));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            modulus: self.modulus,
            lowest: if self.is_zero() { 0 } else { self.lowest + k },
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    /// Substitution `x(arg)` where `arg = s·σ(s)` has valuation exactly one.
    ///
    /// The result is known up to `min(N, v + N_σ)` where `v` is the
    /// valuation of `x` and `N_σ` the precision of `σ`.
    pub fn compose(&self, arg: &PowerSeries) -> Result<Self> {
        if arg.valuation() != Some(1) {
            return Err(Error::BadSubstitution(arg.valuation().map(|v| v as i64)));
        }
        let Some(v) = self.valuation() else {
            return Ok(self.clone());
        };
        let arg_prec = arg.precision() as i64;
        let sigma = PowerSeries::new(arg.coeffs()[1..].to_vec());
        // x = s^v · P(s) with P a power series of relative precision N - v
        let rel = self.precision - v;
        let n = rel.min(arg_prec) as usize;
        let w = arg.truncate(n);
        let mut horner = PowerSeries::monomial(self.coeff(v + n as i64), 0, n);
        for k in (0..n).rev() {
            horner = horner.mul(&w).add_constant(self.coeff(v + k as i64));
        }
        let p_of_w = LaurentSeries::from(&horner).shift(v);
        let sigma_v = LaurentSeries::from(&sigma).powi(v)?;
        Ok(p_of_w.mul(&sigma_v))
    }

    /// True iff every exponent with nonzero coefficient is `≡ residue (mod e)`.
    pub fn supported_in_residue(&self, residue: i64, e: u64) -> bool {
        let e = e as i64;
        self.terms()
            .all(|(k, _)| (k - residue).rem_euclid(e) == 0)
    }

    /// The series `H` with `x(s) = s^residue · H(s^e)`.
    pub fn extract_subseries(&self, residue: i64, e: u64) -> Result<Self> {
        let ei = e as i64;
        if let Some((k, _)) = self
            .terms()
            .find(|(k, _)| (k - residue).rem_euclid(ei) != 0)
        {
            return Err(Error::SupportViolation {
                exponent: k,
                residue,
                modulus: e,
            });
        }
        let precision = (self.precision - residue).div_euclid(ei);
        if self.is_zero() {
            return Ok(Self::zero(self.modulus, precision));
        }
        let lowest = (self.lowest - residue) / ei;
        let count = (precision - lowest + 1).max(0);
        let coeffs = (0..count)
            .map(|k| self.coeff(residue + (lowest + k) * ei))
            .collect();
        Ok(Self::from_coeffs(lowest, coeffs, precision, self.modulus))
    }

    /// `s^residue · H(s^e)`: the inverse of [`extract_subseries`](Self::extract_subseries).
    pub fn inflate(&self, residue: i64, e: u64) -> Self {
        let ei = e as i64;
        let precision = residue + ei * (self.precision + 1) - 1;
        if self.is_zero() {
            return Self::zero(self.modulus, precision);
        }
        let lowest = residue + ei * self.lowest;
        let mut coeffs = vec![Fp::zero(self.modulus); (ei as usize) * (self.coeffs.len() - 1) + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * e as usize] = c;
        }
        Self::from_coeffs(lowest, coeffs, precision, self.modulus)
    }

    /// `x(c·s)`: the coefficient of `s^n` is multiplied by `c^n`.
    pub fn scale_variable(&self, c: Fp) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &x)| x * c.powi(self.lowest + i as i64))
            .collect();
        Self::from_coeffs(self.lowest, coeffs, self.precision, self.modulus)
    }

    /// Converts to a power series; fails on negative valuation or precision.
    pub fn to_power_series(&self) -> Result<PowerSeries> {
        if let Some(v) = self.valuation() {
            if v < 0 {
                return Err(Error::NegativeValuation(v));
            }
        }
        if self.precision < 0 {
            return Err(Error::NegativeValuation(self.precision));
        }
        Ok(PowerSeries::new(
            (0..=self.precision).map(|k| self.coeff(k)).collect(),
        ))
    }

    /// Exact equality including precision.
    pub fn eq_exact(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.lowest == other.lowest
            && self.coeffs == other.coeffs
            && self.precision == other.precision
    }
}

impl From<&PowerSeries> for LaurentSeries {
    fn from(p: &PowerSeries) -> Self {
        LaurentSeries::from_coeffs(0, p.coeffs().to_vec(), p.precision() as i64, p.modulus())
    }
}

impl From<PowerSeries> for LaurentSeries {
    fn from(p: PowerSeries) -> Self {
        LaurentSeries::from(&p)
    }
}

/// Coefficientwise equality up to the smaller of the two precisions.
impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus != other.modulus {
            return false;
        }
        let n = self.precision.min(other.precision);
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return true,
        };
        (lo..=n).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl Ring for LaurentSeries {
    fn modulus(&self) -> u64 {
        self.modulus
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.modulus, self.precision)
    }
    fn one_like(&self) -> Self {
        Self::one(self.modulus, self.precision)
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
        LaurentSeries::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
    fn unit_weight(&self) -> Option<i64> {
        self.valuation()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Twist for LaurentSeries {
    fn twist(&self, zeta: Fp) -> Self {
        self.scale_variable(zeta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(lowest: i64, v: &[i64], n: i64) -> LaurentSeries {
        LaurentSeries::from_ints(lowest, v, n, 7)
    }

    #[test]
    fn normalization() {
        let a = ls(-2, &[0, 0, 3, 0, 0], 4);
        assert_eq!(a.lowest(), 0);
        assert_eq!(a.coeffs().len(), 1);
        let z = ls(-2, &[0, 0], 4);
        assert!(z.is_zero());
        assert_eq!(z.lowest(), 0);
    }

    #[test]
    fn inverse_of_s_is_s_inverse() {
        let s = ls(1, &[1], 5);
        let inv = s.inv().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.coeff(-1).value(), 1);
        assert_eq!(s.mul(&inv), LaurentSeries::one(7, 3));
        assert!(LaurentSeries::zero(7, 3).inv().is_err());
    }

    #[test]
    fn compose_identity_substitution() {
        let s = PowerSeries::variable(7, 6);
        let x = ls(1, &[1], 6);
        assert_eq!(x.compose(&s).unwrap(), x);
    }

    #[test]
    fn compose_square() {
        let arg = PowerSeries::from_ints(&[0, 1, 1], 7, 4);
        let got = ls(2, &[1], 4).compose(&arg).unwrap();
        assert!(got.eq_exact(&ls(2, &[1, 2, 1], 4)));
    }

    #[test]
    fn compose_negative_power() {
        // s^{-1}(1+s)^{-1} = s^{-1} - 1 + s - ...; sigma is known to s^2 so the result to s^1
        let arg = PowerSeries::from_ints(&[0, 1, 1], 7, 3);
        let got = ls(-1, &[1], 3).compose(&arg).unwrap();
        assert!(got.eq_exact(&ls(-1, &[1, 6, 1], 1)), "{got:?}");
    }

    #[test]
    fn compose_rejects_bad_argument() {
        let x = ls(1, &[1], 4);
        assert!(matches!(
            x.compose(&PowerSeries::from_ints(&[0, 0, 1], 7, 4)),
            Err(Error::BadSubstitution(Some(2)))
        ));
        assert!(x.compose(&PowerSeries::from_ints(&[1, 1], 7, 4)).is_err());
    }

    #[test]
    fn residue_support() {
        assert!(ls(1, &[1, 0, 0, 1], 10).supported_in_residue(1, 3));
        assert!(!ls(1, &[1, 1], 10).supported_in_residue(1, 3));
        assert!(LaurentSeries::zero(7, 5).supported_in_residue(2, 3));
        assert!(ls(-1, &[1], 5).supported_in_residue(2, 3));
    }

    #[test]
    fn extract_examples() {
        // u + u^4 = u (1 + u^3) -> 1 + s
        let h = ls(1, &[1, 0, 0, 1], 10).extract_subseries(1, 3).unwrap();
        assert!(h.eq_exact(&ls(0, &[1, 1], 3)));
        let h = ls(-1, &[1], 8).extract_subseries(-1, 3).unwrap();
        assert_eq!(h, LaurentSeries::one(7, 3));
        assert!(matches!(
            ls(2, &[1], 8).extract_subseries(1, 3),
            Err(Error::SupportViolation { exponent: 2, .. })
        ));
    }

    #[test]
    fn inflate_inverts_extract() {
        let x = ls(-2, &[3, 0, 0, 5, 0, 0, 1], 9);
        let h = x.extract_subseries(1, 3).unwrap();
        assert_eq!(h.inflate(1, 3), x);
    }

    #[test]
    fn precision_tracking_in_products() {
        let a = ls(-1, &[1, 2], 4);
        let b = ls(2, &[1], 6);
        // min(4 + 2, 6 - 1)
        assert_eq!(a.mul(&b).precision(), 5);
    }

    #[test]
    fn twist_scales_by_powers() {
        let zeta = Fp::new(2, 7);
        let x = ls(-1, &[1, 1], 5);
        let t = x.twist(zeta);
        assert_eq!(t.coeff(-1), Fp::new(4, 7)); // 2^{-1} = 4
        assert_eq!(t.coeff(0), Fp::new(1, 7));
    }
}
