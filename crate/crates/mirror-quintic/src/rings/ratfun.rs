//! Rational functions in one variable over exact rationals.
//!
//! Always kept in normal form: numerator and denominator coprime, denominator
//! monic and nonzero.  Equality after construction is therefore canonical.

use std::fmt;

use super::{Poly, Rational};

/// A ratio of univariate polynomials in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Builds `num/den`, normalizing.  Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = lead.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        RationalFunction::from_poly(Poly::var())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Panics if `other` is zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        RationalFunction::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Reciprocal; panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        // (n/d)' = (n'd - nd')/d^2
        RationalFunction::new(
            self.num
                .derivative()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derivative())),
            self.den.mul(&self.den),
        )
    }

    /// Evaluates at a point; `None` if the point is a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d == Rational::from_integer(0.into()) {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunction {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// True when the denominator is 1, i.e. the value is a polynomial.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den == Poly::one() {
            Some(&self.num)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, rat_int};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn normalization_cancels_common_factor() {
        // (x^2-1)/(2x-2) = (x+1)/2
        let r = RationalFunction::new(p(&[-1, 0, 1]), p(&[-2, 2]));
        assert_eq!(r.numerator(), &p(&[1, 1]).scale(&rat(1, 2)));
        assert_eq!(r.denominator(), &Poly::one());
    }

    #[test]
    fn field_axioms_on_samples() {
        let a = RationalFunction::new(p(&[1, 2]), p(&[3, 0, 1]));
        let b = RationalFunction::new(p(&[0, 1]), p(&[1, 1]));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.mul(&a.recip()), RationalFunction::one());
    }

    #[test]
    fn eval_detects_poles() {
        let r = RationalFunction::new(p(&[1]), p(&[-2, 1]));
        assert_eq!(r.eval(&rat_int(3)), Some(rat_int(1)));
        assert_eq!(r.eval(&rat_int(2)), None);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let r = RationalFunction::new(p(&[1]), p(&[0, 1]));
        let expect = RationalFunction::new(p(&[-1]), p(&[0, 0, 1]));
        assert_eq!(r.derivative(), expect);
    }
}
