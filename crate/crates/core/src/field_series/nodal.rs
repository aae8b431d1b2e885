//! The complete local ring `k[[u,v]]/(uv)` of the node and its total
//! quotient ring `k((u)) × k((v))`.

use crate::error::{Error, Result};

use super::{Fp, LaurentSeries, PowerSeries, Ring, Twist};

/// An element `f(u) + g(v)` of `k[[u,v]]/(uv)`, stored as its two branch
/// restrictions. The constant terms must agree.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalRingElement {
    u: PowerSeries,
    v: PowerSeries,
}

impl NodalRingElement {
    pub fn new(u: PowerSeries, v: PowerSeries) -> Result<Self> {
        if u.constant_term() != v.constant_term() {
            return Err(Error::BranchMismatch);
        }
        Ok(NodalRingElement { u, v })
    }

    pub fn constant(c: Fp, precision: usize) -> Self {
        NodalRingElement {
            u: PowerSeries::monomial(c, 0, precision),
            v: PowerSeries::monomial(c, 0, precision),
        }
    }

    pub fn u(&self) -> &PowerSeries {
        &self.u
    }

    pub fn v(&self) -> &PowerSeries {
        &self.v
    }

    /// Image in the residue field `k`.
    pub fn residue(&self) -> Fp {
        self.u.constant_term()
    }

    pub fn precision(&self) -> usize {
        self.u.precision().min(self.v.precision())
    }

    pub fn to_quotient(&self) -> NodalQuotientElement {
        NodalQuotientElement {
            u: LaurentSeries::from(&self.u),
            v: LaurentSeries::from(&self.v),
        }
    }
}

impl Ring for NodalRingElement {
    fn modulus(&self) -> u64 {
        self.u.modulus()
    }
    fn zero_like(&self) -> Self {
        NodalRingElement {
            u: self.u.zero_like(),
            v: self.v.zero_like(),
        }
    }
    fn one_like(&self) -> Self {
        NodalRingElement {
            u: self.u.one_like(),
            v: self.v.one_like(),
        }
    }
    fn plus(&self, rhs: &Self) -> Self {
        NodalRingElement {
            u: self.u.add(&rhs.u),
            v: self.v.add(&rhs.v),
        }
    }
    fn minus(&self, rhs: &Self) -> Self {
        NodalRingElement {
            u: self.u.sub(&rhs.u),
            v: self.v.sub(&rhs.v),
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        NodalRingElement {
            u: self.u.mul(&rhs.u),
            v: self.v.mul(&rhs.v),
        }
    }
    fn negate(&self) -> Self {
        NodalRingElement {
            u: self.u.neg(),
            v: self.v.neg(),
        }
    }
    fn scale(&self, c: Fp) -> Self {
        NodalRingElement {
            u: self.u.scale(c),
            v: self.v.scale(c),
        }
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    // local ring: units are exactly the elements with nonzero residue
    fn unit_weight(&self) -> Option<i64> {
        (!self.residue().is_zero()).then_some(0)
    }
    fn try_inverse(&self) -> Option<Self> {
        Some(NodalRingElement {
            u: self.u.inv().ok()?,
            v: self.v.inv().ok()?,
        })
    }
}

impl Twist for NodalRingElement {
    fn twist(&self, zeta: Fp) -> Self {
        let zinv = zeta.inv().expect("root of unity is nonzero");
        NodalRingElement {
            u: self.u.scale_variable(zeta),
            v: self.v.scale_variable(zinv),
        }
    }
}

/// An element of `k((u)) × k((v))`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalQuotientElement {
    pub u: LaurentSeries,
    pub v: LaurentSeries,
}

impl NodalQuotientElement {
    pub fn new(u: LaurentSeries, v: LaurentSeries) -> Self {
        NodalQuotientElement { u, v }
    }
}

impl Ring for NodalQuotientElement {
    fn modulus(&self) -> u64 {
        self.u.modulus()
    }
    fn zero_like(&self) -> Self {
        NodalQuotientElement::new(self.u.zero_like(), self.v.zero_like())
    }
    fn one_like(&self) -> Self {
        NodalQuotientElement::new(self.u.one_like(), self.v.one_like())
    }
    fn plus(&self, rhs: &Self) -> Self {
        NodalQuotientElement::new(self.u.add(&rhs.u), self.v.add(&rhs.v))
    }
    fn minus(&self, rhs: &Self) -> Self {
        NodalQuotientElement::new(self.u.sub(&rhs.u), self.v.sub(&rhs.v))
    }
    fn times(&self, rhs: &Self) -> Self {
        NodalQuotientElement::new(self.u.mul(&rhs.u), self.v.mul(&rhs.v))
    }
    fn negate(&self) -> Self {
        NodalQuotientElement::new(self.u.neg(), self.v.neg())
    }
    fn scale(&self, c: Fp) -> Self {
        NodalQuotientElement::new(self.u.scale(c), self.v.scale(c))
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    // not a local ring; matrices over it are inverted branch by branch
    fn unit_weight(&self) -> Option<i64> {
        match (self.u.valuation(), self.v.valuation()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        }
    }
    fn try_inverse(&self) -> Option<Self> {
        Some(NodalQuotientElement::new(
            self.u.inv().ok()?,
            self.v.inv().ok()?,
        ))
    }
}

impl Twist for NodalQuotientElement {
    fn twist(&self, zeta: Fp) -> Self {
        let zinv = zeta.inv().expect("root of unity is nonzero");
        NodalQuotientElement::new(self.u.scale_variable(zeta), self.v.scale_variable(zinv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_terms_must_agree() {
        let a = PowerSeries::from_ints(&[1, 2], 7, 3);
        let b = PowerSeries::from_ints(&[2, 2], 7, 3);
        assert_eq!(
            NodalRingElement::new(a.clone(), b).unwrap_err(),
            Error::BranchMismatch
        );
        assert!(NodalRingElement::new(a.clone(), a).is_ok());
    }

    #[test]
    fn product_kills_cross_terms() {
        // u * v = 0 in k[[u,v]]/(uv)
        let zero = PowerSeries::zero(7, 4);
        let u = NodalRingElement::new(PowerSeries::variable(7, 4), zero.clone()).unwrap();
        let v = NodalRingElement::new(zero, PowerSeries::variable(7, 4)).unwrap();
        assert!(u.times(&v).is_zero());
    }

    #[test]
    fn twist_uses_inverse_root_on_second_branch() {
        let zeta = Fp::new(2, 7);
        let u = PowerSeries::variable(7, 4);
        let x = NodalRingElement::new(u.clone(), u).unwrap().twist(zeta);
        assert_eq!(x.u().coeff(1).value(), 2);
        assert_eq!(x.v().coeff(1).value(), 4);
    }
}
