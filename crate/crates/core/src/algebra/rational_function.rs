use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

/// A quotient of polynomials in the ambient ring. Normalization is lazy:
/// denominators are kept monic, shared denominators are reused on addition,
/// and exact divisions are taken when they are cheap to detect.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Argument("zero denominator".into()));
        }
        if !super::polynomial::same_ring(num.ring(), den.ring()) {
            return Err(Error::Context("numerator and denominator rings differ".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            let ring = num.ring().clone();
            return RationalFunction {
                num,
                den: Polynomial::one(&ring),
            };
        }
        if let Some(c) = den.constant_value() {
            let ring = den.ring().clone();
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: Polynomial::one(&ring),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            let ring = den.ring().clone();
            return RationalFunction {
                num: q,
                den: Polynomial::one(&ring),
            };
        }
        let lc = den.leading_coefficient().expect("nonzero").clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let ring = p.ring().clone();
        RationalFunction {
            num: p,
            den: Polynomial::one(&ring),
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::from_polynomial(Polynomial::zero(ring))
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::from_polynomial(Polynomial::one(ring))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.num.ring()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        if let Some(q) = other.den.div_exact(&self.den) {
            return Self::normalized(&(&self.num * &q) + &other.num, other.den.clone());
        }
        if let Some(q) = self.den.div_exact(&other.den) {
            return Self::normalized(&self.num + &(&other.num * &q), self.den.clone());
        }
        Self::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring());
        }
        // cancel a denominator against the other numerator when it divides
        if !other.den.is_constant() {
            if let Some(q) = self.num.div_exact(&other.den) {
                return Self::normalized(&q * &other.num, self.den.clone());
            }
        }
        if !self.den.is_constant() {
            if let Some(q) = other.num.div_exact(&self.den) {
                return Self::normalized(&self.num * &q, other.den.clone());
            }
        }
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        self.mul(&Self::from_polynomial(p.clone()))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Argument("inverse of zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Formal partial derivative by the quotient rule.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        let dn = self.num.partial_derivative(var)?;
        if self.den.is_constant() {
            return Ok(Self::normalized(dn, self.den.clone()));
        }
        let dd = self.den.partial_derivative(var)?;
        Ok(Self::normalized(
            &(&dn * &self.den) - &(&self.num * &dd),
            self.den.pow(2),
        ))
    }

    /// Equality as rational functions: cross-multiplied numerators agree.
    pub fn equals(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, MonomialOrder};

    fn rf(n: &str, d: &str) -> RationalFunction {
        let r = Ring::new(&["x", "y"], MonomialOrder::GrevLex);
        RationalFunction::new(parse_polynomial(n, &r).unwrap(), parse_polynomial(d, &r).unwrap())
            .unwrap()
    }

    #[test]
    fn arithmetic_and_normalization() {
        assert_eq!(rf("x^2 - y^2", "x - y"), rf("x + y", "1"));
        let a = rf("1", "x");
        let b = rf("1", "y");
        assert!(a.add(&b).equals(&rf("x + y", "x*y")));
        assert!(a.mul(&rf("x^2", "1")).equals(&rf("x", "1")));
        assert!(rf("x", "2y").equals(&rf("3x", "6y")));
        assert!(rf("1", "x").partial_derivative(0).unwrap().equals(&rf("-1", "x^2")));
        assert!(RationalFunction::new(rf("1", "1").num.clone(), rf("0", "1").num.clone()).is_err());
    }
}
