//! Exact-arithmetic engine for the quintic mirror correspondence.
//!
//! The crate computes, over arbitrary-precision rationals and with no
//! numerical tolerance anywhere:
//!
//! - the sector combinatorics of the orbifold quintic and its ambient
//!   quotient of P^4 ([`sectors`]);
//! - the genus-zero hypergeometric J- and I-series of those orbifolds,
//!   the mirror map, and an equivariant-localization recursion check
//!   ([`amodel`]);
//! - Picard-Fuchs operators for the one-parameter Fermat quintic pencil
//!   via pole-order reduction of period symbols, plus the closed-form
//!   B-side I-series ([`bmodel`]);
//! - cross-checks tying the two sides together: series equality, operator
//!   annihilation, mirror-map coefficients, and basis counts ([`verify`]).
//!
//! The arithmetic substrate (rationals, polynomials, rational functions,
//! Laurent polynomials in z, graded cohomology-valued series, differential
//! operators) lives in [`rings`].

pub mod amodel;
pub mod bmodel;
pub mod rings;
pub mod sectors;
pub mod verify;
