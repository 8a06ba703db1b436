//! Differential operators in `D = d/dt` with `e^{t/5}`-polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};
use serde_json::{json, Value};

use super::{format_rational, parse_rational, LogSeries, Rational};

/// `sum f_{i,n} e^{(n/5) t} D^i`, keyed by `(dPower i, d5 n)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DifferentialOperator {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl DifferentialOperator {
    pub fn zero() -> Self {
        DifferentialOperator::default()
    }

    pub fn one() -> Self {
        DifferentialOperator::term(0, 0, Rational::one())
    }

    /// `D^i`.
    pub fn d_power(i: u32) -> Self {
        DifferentialOperator::term(i, 0, Rational::one())
    }

    /// `D + c` for a rational shift `c`.
    pub fn d_plus(c: Rational) -> Self {
        DifferentialOperator::d_power(1).add(&DifferentialOperator::term(0, 0, c))
    }

    /// `c * e^{(d5/5) t} D^i`.
    pub fn term(d_power: u32, d5: u32, c: Rational) -> Self {
        let mut op = DifferentialOperator::zero();
        op.add_term(d_power, d5, &c);
        op
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest D-power with a nonzero coefficient; 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn coeff(&self, d_power: u32, d5: u32) -> Rational {
        self.terms
            .get(&(d_power, d5))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, d_power: u32, d5: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((d_power, d5))
            .or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(d_power, d5));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, n), c) in other.iter() {
            out.add_term(i, n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return DifferentialOperator::zero();
        }
        DifferentialOperator {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// Operator composition `self . other` (apply `other` first).
    ///
    /// Uses `D^i (e^{ct} f) = sum_l binom(i,l) c^{i-l} e^{ct} D^l f`
    /// to commute D-powers past exponential coefficients.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = DifferentialOperator::zero();
        for (&(i, n1), c1) in self.iter() {
            for (&(j, n2), c2) in other.iter() {
                let gamma = Rational::new(n2.into(), 5.into());
                let mut binom = Rational::one();
                let mut gamma_pow = Rational::one();
                // l runs downward from i so binom and gamma_pow update cheaply
                for l in (0..=i).rev() {
                    let c = c1 * c2 * &binom * &gamma_pow;
                    out.add_term(l + j, n1 + n2, &c);
                    if l > 0 {
                        // binom(i, l-1) = binom(i, l) * l / (i - l + 1)
                        binom = binom * Rational::from_integer(l.into())
                            / Rational::from_integer((i - l + 1).into());
                        gamma_pow *= &gamma;
                    }
                    if gamma.is_zero() && l <= i {
                        // only the l = i term survives for constant coefficients
                        break;
                    }
                }
            }
        }
        out
    }

    /// Applies the operator to a scalar series.
    pub fn apply(&self, s: &LogSeries) -> LogSeries {
        let mut out = LogSeries::zero(s.d5max());
        for (&(i, n), c) in self.iter() {
            let mut v = s.clone();
            for _ in 0..i {
                v = v.derivative_t();
            }
            for (&(a, d5), vc) in v.iter() {
                if n + d5 <= s.d5max() {
                    out.add_term(a, n + d5, &(vc * c));
                }
            }
        }
        out
    }

    /// JSON encoding: array of {dPower, d5, coeff}.
    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .iter()
            .map(|(&(i, n), c)| json!({"dPower": i, "d5": n, "coeff": format_rational(c)}))
            .collect();
        Value::Array(items)
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let mut out = DifferentialOperator::zero();
        for item in v.as_array()? {
            let i = item.get("dPower")?.as_u64()? as u32;
            let n = item.get("d5")?.as_u64()? as u32;
            let c = parse_rational(item.get("coeff")?.as_str()?)?;
            out.add_term(i, n, &c);
        }
        Some(out)
    }
}

impl fmt::Display for DifferentialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest D-power first, constant-coefficient block leading
        for (&(i, n), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            if n > 0 {
                if n % 5 == 0 {
                    let d = n / 5;
                    write!(f, "*e^{}", if d > 1 { format!("{{{}t}}", d) } else { "t".into() })?;
                } else {
                    write!(f, "*e^{{{}t/5}}", n)?;
                }
            }
            if i > 0 {
                write!(f, "*D{}", if i > 1 { format!("^{}", i) } else { String::new() })?;
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
    fn compose_commutes_d_past_exponentials() {
        // D . e^t = e^t (D + 1)
        let d = DifferentialOperator::d_power(1);
        let et = DifferentialOperator::term(0, 5, rat_int(1));
        let lhs = d.compose(&et);
        let rhs = et.compose(&DifferentialOperator::d_plus(rat_int(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_matches_composition() {
        let op1 = DifferentialOperator::d_plus(rat(2, 5));
        let op2 = DifferentialOperator::term(1, 1, rat_int(3));
        let composed = op1.compose(&op2);
        let mut s = LogSeries::t(10);
        s.add_term(0, 3, &rat(1, 7));
        assert_eq!(op1.apply(&op2.apply(&s)), composed.apply(&s));
    }

    #[test]
    fn annihilation_example() {
        // (D - 2/5) kills e^{2t/5}
        let op = DifferentialOperator::d_plus(rat(-2, 5));
        let s = LogSeries::monomial(0, 2, rat_int(9), 10);
        assert!(op.apply(&s).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let op = DifferentialOperator::d_power(4)
            .sub(&DifferentialOperator::term(2, 5, rat(3125, 1)));
        assert_eq!(DifferentialOperator::from_json(&op.to_json()), Some(op));
    }
}
