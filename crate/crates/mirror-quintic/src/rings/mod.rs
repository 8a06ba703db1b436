//! Exact arithmetic substrate.
//!
//! Everything downstream of this module works over arbitrary-precision
//! rationals; no floating point appears anywhere in the crate.
//!
//! - [`Rational`]: arbitrary-precision `p/q`, always reduced
//! - [`Poly`]: dense univariate polynomials over [`Rational`]
//! - [`RationalFunction`]: normalized ratios of [`Poly`] (monic denominator)
//! - [`ZLaurent`]: finite Laurent polynomials in the connection variable `z`
//! - [`CohomologySeries`]: (sector, degree, H-power)-graded truncated series
//!   with [`ZLaurent`] coefficients
//! - [`LogSeries`]: scalar series `sum c_{a,n} t^a e^{(n/5) t}`
//! - [`DifferentialOperator`]: polynomials in `D = d/dt` with `e^{t/5}`-series
//!   coefficients

mod cohom;
mod diffop;
mod logseries;
mod poly;
mod ratfun;
mod zlaurent;

pub use cohom::{CohomologySeries, SeriesKey};
pub use diffop::DifferentialOperator;
pub use logseries::LogSeries;
pub use poly::Poly;
pub use ratfun::RationalFunction;
pub use zlaurent::ZLaurent;

use num::BigRational;
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Exact text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`. Denominator must be nonzero.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Fractional part `<r>` in `[0, 1)`.
pub fn frac_part(r: &Rational) -> Rational {
    let f = r - r.floor();
    debug_assert!(!f.is_negative() && f < Rational::one());
    f
}
