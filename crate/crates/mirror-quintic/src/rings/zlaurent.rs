//! Finite Laurent polynomials in the connection variable `z`.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::Zero;

use super::{format_rational, Rational};

/// `sum_e c_e z^e` with finitely many exact-rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        ZLaurent::default()
    }

    pub fn one() -> Self {
        ZLaurent::monomial(Rational::from_integer(1.into()), 0)
    }

    pub fn monomial(coeff: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        ZLaurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn insert(&mut self, exp: i64, coeff: Rational) {
        if coeff.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, coeff);
        }
    }

    pub fn add_term(&mut self, exp: i64, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(*e, &(-c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        ZLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ZLaurent::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in other.iter() {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ZLaurent::zero();
        }
        ZLaurent {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        ZLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Value at `z = 1`: the plain coefficient sum.
    pub fn eval_at_one(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
}

impl fmt::Display for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "{}*z", format_rational(c))?,
                _ => write!(f, "{}*z^{}", format_rational(c), e)?,
            }
        }
        Ok(())
    }
}
