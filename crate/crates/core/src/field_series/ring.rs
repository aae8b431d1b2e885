use std::fmt;

use super::Fp;

/// Minimal commutative-ring surface shared by scalars, series and the
/// nodal rings, so that [`crate::eq_matrix::Matrix`] can be generic.
///
/// Elements carry their own modulus and precision, which is why the
/// identity elements are produced from an existing element.
pub trait Ring: Clone + fmt::Debug + PartialEq {
    fn modulus(&self) -> u64;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, c: Fp) -> Self;
    fn is_zero(&self) -> bool;

    /// Pivot quality for elimination: `None` if the element cannot serve as a
    /// pivot (it is not a unit), otherwise a weight where smaller is better.
    fn unit_weight(&self) -> Option<i64>;
    fn try_inverse(&self) -> Option<Self>;

    fn constant(&self, c: Fp) -> Self {
        self.one_like().scale(c)
    }
}

/// Action of the generator `γ` of the cyclic stabilizer, with `γ(u) = ζu` on
/// the first branch and `γ(v) = ζ⁻¹v` on the second.
pub trait Twist {
    fn twist(&self, zeta: Fp) -> Self;
}

impl Ring for Fp {
    fn modulus(&self) -> u64 {
        Fp::modulus(*self)
    }
    fn zero_like(&self) -> Self {
        Fp::zero(Fp::modulus(*self))
    }
    fn one_like(&self) -> Self {
        Fp::one(Fp::modulus(*self))
    }
    fn plus(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn negate(&self) -> Self {
        -*self
    }
    fn scale(&self, c: Fp) -> Self {
        *self * c
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn unit_weight(&self) -> Option<i64> {
        (!Fp::is_zero(*self)).then_some(0)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv()
    }
}

impl Twist for Fp {
    fn twist(&self, _zeta: Fp) -> Self {
        *self
    }
}
