//! Truncated series `sum c_{a,n} t^a e^{(n/5) t}` over exact rationals.
//!
//! The `t`-powers come from the polynomial part of solutions (bounded by the
//! operator order), while the exponential degrees are tracked by the integer
//! `d5 = 5d`, truncated at a fixed `d5max`.

use std::fmt;

use std::collections::BTreeMap;

use num::traits::{One, Zero};

use super::{format_rational, Rational};

/// Key `(a, d5)` stands for `t^a e^{(d5/5) t}`; values are nonzero rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogSeries {
    terms: BTreeMap<(u32, u32), Rational>,
    d5max: u32,
}

impl LogSeries {
    pub fn zero(d5max: u32) -> Self {
        LogSeries {
            terms: BTreeMap::new(),
            d5max,
        }
    }

    pub fn constant(c: Rational, d5max: u32) -> Self {
        LogSeries::monomial(0, 0, c, d5max)
    }

    pub fn one(d5max: u32) -> Self {
        LogSeries::constant(Rational::one(), d5max)
    }

    /// The coordinate `t` itself.
    pub fn t(d5max: u32) -> Self {
        LogSeries::monomial(1, 0, Rational::one(), d5max)
    }

    /// `c * t^a e^{(d5/5) t}`.
    pub fn monomial(a: u32, d5: u32, c: Rational, d5max: u32) -> Self {
        let mut s = LogSeries::zero(d5max);
        s.add_term(a, d5, &c);
        s
    }

    pub fn d5max(&self) -> u32 {
        self.d5max
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, d5: u32) -> Rational {
        self.terms
            .get(&(a, d5))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Iterates `((a, d5), coeff)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn max_t_power(&self) -> u32 {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, a: u32, d5: u32, c: &Rational) {
        if c.is_zero() || d5 > self.d5max {
            return;
        }
        let entry = self.terms.entry((a, d5)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, d5));
        }
    }

    fn merged_max(&self, other: &Self) -> u32 {
        self.d5max.min(other.d5max)
    }

    /// Re-truncates to a (typically smaller) `d5max`.
    pub fn truncated(&self, d5max: u32) -> Self {
        let mut out = LogSeries::zero(d5max);
        for (&(a, d5), c) in self.iter() {
            out.add_term(a, d5, c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncated(self.merged_max(other));
        for (&(a, d5), c) in other.iter() {
            out.add_term(a, d5, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LogSeries {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            d5max: self.d5max,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LogSeries::zero(self.d5max);
        }
        LogSeries {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
            d5max: self.d5max,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LogSeries::zero(self.merged_max(other));
        for (&(a1, d1), c1) in self.iter() {
            for (&(a2, d2), c2) in other.iter() {
                if d1 + d2 > out.d5max {
                    continue;
                }
                out.add_term(a1 + a2, d1 + d2, &(c1 * c2));
            }
        }
        out
    }

    /// Inverse of a unit series with no `t`-powers and constant term 1,
    /// by the usual triangular recursion on `d5`.
    pub fn invert_unit(&self) -> Self {
        assert!(self.max_t_power() == 0, "inverting a series with t-powers");
        assert!(self.coeff(0, 0).is_one(), "inverting a non-unit series");
        let mut inv = LogSeries::zero(self.d5max);
        inv.add_term(0, 0, &Rational::one());
        for d5 in 1..=self.d5max {
            // coefficient of e^{(d5/5)t} in self*inv must vanish
            let mut acc = Rational::zero();
            for (&(_, k), c) in self.iter() {
                if k >= 1 && k <= d5 {
                    acc += c * inv.coeff(0, d5 - k);
                }
            }
            inv.add_term(0, d5, &(-acc));
        }
        inv
    }

    /// Multiplies by `e^{(k/5)t}`, shifting all exponential degrees up by `k`.
    pub fn shift_d5(&self, k: u32) -> Self {
        let mut out = LogSeries::zero(self.d5max);
        for (&(a, d5), c) in self.iter() {
            out.add_term(a, d5 + k, c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LogSeries::one(self.d5max);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// `d/dt`: `t^a e^{(n/5)t} -> a t^{a-1} e^{(n/5)t} + (n/5) t^a e^{(n/5)t}`.
    pub fn derivative_t(&self) -> Self {
        let mut out = LogSeries::zero(self.d5max);
        for (&(a, d5), c) in self.iter() {
            if a > 0 {
                out.add_term(a - 1, d5, &(c * Rational::from_integer(a.into())));
            }
            if d5 > 0 {
                out.add_term(a, d5, &(c * Rational::new(d5.into(), 5.into())));
            }
        }
        out
    }

    /// `exp` of a series with no `t`-powers and zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.max_t_power() == 0 && self.coeff(0, 0).is_zero());
        let mut out = LogSeries::one(self.d5max);
        let mut power = LogSeries::one(self.d5max);
        let mut factorial = Rational::one();
        for k in 1..=self.d5max {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            factorial *= Rational::from_integer(k.into());
            out = out.add(&power.scale(&factorial.recip()));
        }
        out
    }
}

impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, d5), c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            if a > 0 {
                write!(f, "*t{}", if a > 1 { format!("^{}", a) } else { String::new() })?;
            }
            if d5 > 0 {
                if d5 % 5 == 0 {
                    let d = d5 / 5;
                    write!(f, "*e^{}", if d > 1 { format!("{{{}t}}", d) } else { "t".into() })?;
                } else {
                    write!(f, "*e^{{{}t/5}}", d5)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, rat_int};

    #[test]
    fn invert_unit_round_trip() {
        let mut s = LogSeries::one(20);
        s.add_term(0, 5, &rat_int(120));
        s.add_term(0, 10, &rat_int(113400));
        let inv = s.invert_unit();
        assert_eq!(s.mul(&inv), LogSeries::one(20));
        assert_eq!(inv.coeff(0, 5), rat_int(-120));
    }

    #[test]
    fn derivative_mixes_powers_and_exponentials() {
        // D(t e^t) = e^t + t e^t
        let s = LogSeries::monomial(1, 5, rat_int(1), 10);
        let d = s.derivative_t();
        assert_eq!(d.coeff(0, 5), rat_int(1));
        assert_eq!(d.coeff(1, 5), rat_int(1));
        // D(e^{2t/5}) = (2/5) e^{2t/5}
        let s = LogSeries::monomial(0, 2, rat_int(1), 10);
        assert_eq!(s.derivative_t().coeff(0, 2), rat(2, 5));
    }

    #[test]
    fn exp_log_shapes() {
        // exp(x e^{t/5}) = 1 + x e^{t/5} + x^2/2 e^{2t/5} + ...
        let s = LogSeries::monomial(0, 1, rat_int(3), 4);
        let e = s.exp();
        assert_eq!(e.coeff(0, 0), rat_int(1));
        assert_eq!(e.coeff(0, 1), rat_int(3));
        assert_eq!(e.coeff(0, 2), rat(9, 2));
        assert_eq!(e.coeff(0, 3), rat(9, 2));
    }

    #[test]
    fn truncation_propagates_through_mul() {
        let a = LogSeries::monomial(0, 8, rat_int(1), 10);
        let b = LogSeries::monomial(0, 8, rat_int(1), 10);
        assert!(a.mul(&b).is_zero());
    }
}
