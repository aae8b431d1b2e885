//! Prime field elements and roots of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// An element of the prime field `F_p`.
///
/// The modulus travels with the value so that series and matrices can be
/// built without a separate context object. Mixing moduli is a logic error
/// and is caught by a debug assertion.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Fp { value: 0, modulus }
    }

    pub fn one(modulus: u64) -> Self {
        Fp {
            value: 1 % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one(self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents (the base must be nonzero then).
    pub fn powi(self, exp: i64) -> Self {
        if exp >= 0 {
            self.pow(exp as u64)
        } else {
            self.inv().expect("negative power of zero").pow(exp.unsigned_abs())
        }
    }

    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    /// Multiplicative order, or `None` for zero.
    pub fn order(self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut x = self;
        let mut k = 1;
        while x.value != 1 {
            x = x * self;
            k += 1;
        }
        Some(k)
    }

    #[inline]
    fn check(self, other: Self) {
        debug_assert_eq!(self.modulus, other.modulus, "mixed field moduli");
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.modulus { s - self.modulus } else { s },
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp {
            value: v as u64,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    // keep products inside u64 ranges used by the serializers
    if is_prime(p) && p < (1 << 31) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group of `F_p`.
pub fn smallest_primitive_root(p: u64) -> Result<Fp> {
    check_prime(p)?;
    if p == 2 {
        return Ok(Fp::one(2));
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .map(|g| Fp::from_u64(g, p))
        .find(|g| factors.iter().all(|q| g.pow((p - 1) / q).value != 1))
        .ok_or(Error::NotPrime(p))
}

/// The deterministic primitive `e`-th root of unity `g^((p-1)/e)`, where `g`
/// is the smallest primitive root mod `p`.
pub fn primitive_eth_root(p: u64, e: u64) -> Result<Fp> {
    check_prime(p)?;
    if e == 0 || !(p - 1).is_multiple_of(e) {
        return Err(Error::NoRootOfUnity { p, e });
    }
    let g = smallest_primitive_root(p)?;
    Ok(g.pow((p - 1) / e))
}

/// Exponent `k` in `[0, e)` with `zeta^k = x`, if any.
pub fn discrete_log(zeta: Fp, e: u64, x: Fp) -> Option<u64> {
    let mut acc = Fp::one(zeta.modulus());
    for k in 0..e {
        if acc == x {
            return Some(k);
        }
        acc = acc * zeta;
    }
    None
}
