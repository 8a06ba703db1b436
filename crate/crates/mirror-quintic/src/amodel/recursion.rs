//! Fixed-point rows of the equivariant ambient series and their recursion.
//!
//! With torus weights specialized to distinct rationals, the row of sector g
//! at the fixed coordinate i is
//!
//! `Y_{i,g} = (1/125) (delta_{i in I(g)}
//!            + sum_d Q^{c(d,h)} / prod_{(b,k) in S(d,h)} (b z + l_i - l_k))`
//!
//! where h is the presentation of the class of g^-1 with r_i(h) = 0.  These
//! rows satisfy a recursion expressing the coefficient of Q^N through rows
//! at the other fixed points evaluated at z = (l_k - l_i)/d'; checking that
//! recursion for all rows is an independent consistency test of the closed
//! form.

use std::collections::BTreeMap;

use num::traits::{One, Zero};

use super::AModelError;
use crate::rings::{rat, Poly, Rational, RationalFunction};
use crate::sectors::{s_set, Sector, Y_FIXED_POINT_DENOM};

/// Torus weights (l_0,...,l_4) specialized to pairwise-distinct rationals;
/// z stays symbolic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivariantContext {
    lambdas: [Rational; 5],
}

impl EquivariantContext {
    pub fn new(lambdas: [Rational; 5]) -> Result<Self, AModelError> {
        for i in 0..5 {
            for j in (i + 1)..5 {
                if lambdas[i] == lambdas[j] {
                    return Err(AModelError::SingularWeights(format!(
                        "weights {} and {} coincide",
                        i, j
                    )));
                }
            }
        }
        Ok(EquivariantContext { lambdas })
    }

    pub fn lambda(&self, i: usize) -> &Rational {
        &self.lambdas[i]
    }
}

/// One fixed-point row: rational-function coefficients indexed by the
/// Q-exponent c(d,h), together with the degree that produced each exponent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivariantYRow {
    pub i: usize,
    pub g: Sector,
    /// The presentation h of the class of g^-1 with r_i(h) = 0.
    pub h: Sector,
    /// Q-exponent -> coefficient, a rational function of z.
    pub coeffs: BTreeMap<u32, RationalFunction>,
    /// Q-exponent -> the fifth-integer degree d5 it came from (absent for
    /// the constant term).
    pub degrees: BTreeMap<u32, u32>,
}

/// The unique presentation h with [h] = [g^-1] and r_i(h) = 0.
pub fn fixed_point_sector(i: usize, g: &Sector) -> Sector {
    g.inverse().shift_diagonal(g.residue(i))
}

/// Linear factor `b z + (l_i - l_k)` as a polynomial in z, b = b5/5.
fn linear_factor(b5: u32, diff: Rational) -> Poly {
    Poly::from_coeffs(vec![diff, rat(b5 as i64, 5)])
}

/// Builds the closed-form row at fixed point `i` for the presentation `h`.
pub fn equivariant_y_row(
    i: usize,
    h: &Sector,
    g: &Sector,
    ctx: &EquivariantContext,
    c_max: u32,
) -> Result<EquivariantYRow, AModelError> {
    if h.residue(i) != 0 || *h != fixed_point_sector(i, g) {
        return Err(AModelError::BadFixedPoint(i, *h));
    }
    let norm = rat(1, Y_FIXED_POINT_DENOM);
    let mut coeffs = BTreeMap::new();
    let mut degrees = BTreeMap::new();
    if g.residue(i) == 0 {
        // the delta-term: i is a fixed point of the sector g itself
        coeffs.insert(0, RationalFunction::constant(norm.clone()));
    }
    let c = g.residue(i) as u32;
    let mut d5 = if c == 0 { 5 } else { c };
    loop {
        let pairs = s_set(d5, h).pairs;
        let cc = pairs.len() as u32;
        if cc > c_max {
            break;
        }
        let mut den = Poly::one();
        for &(b5, k) in &pairs {
            den = den.mul(&linear_factor(b5, ctx.lambda(i) - ctx.lambda(k)));
        }
        coeffs.insert(cc, RationalFunction::new(Poly::constant(norm.clone()), den));
        degrees.insert(cc, d5);
        d5 += 5;
    }
    Ok(EquivariantYRow {
        i,
        g: *g,
        h: *h,
        coeffs,
        degrees,
    })
}

/// Builds the five rows of sector `g` (one per fixed coordinate).
pub fn all_rows(
    g: &Sector,
    ctx: &EquivariantContext,
    c_max: u32,
) -> Result<Vec<EquivariantYRow>, AModelError> {
    (0..5)
        .map(|i| equivariant_y_row(i, &fixed_point_sector(i, g), g, ctx, c_max))
        .collect()
}

/// Verifies the fixed-point recursion on precomputed rows.
///
/// For each row i and each Q-exponent N <= c_max the identity
///
/// `coeff_N(z) = z^{-N} sum_{(d',k)} C_{d'}^{i,k}(z) mu^{c''}
///               coeff_{c''}^{(k)}(mu)`,
///
/// with mu = (l_k - l_i)/d', c'' = N - c(d',h), and
/// `C = 1 / ((d' - (l_k - l_i)/z) * prod_{(a,l) != (d',k)} (a + d'(l_i -
/// l_l)/(l_k - l_i)))`, is checked exactly.  Both
/// sides are cleared of denominators against `z^N * D` where D is the
/// product of the row's linear factors at exponent N, so the comparison is
/// between polynomials (each `C` denominator divides D).
pub fn check_recursion_with_rows(
    rows: &[EquivariantYRow],
    ctx: &EquivariantContext,
    c_max: u32,
) -> Result<bool, AModelError> {
    assert_eq!(rows.len(), 5);
    for row in rows {
        let i = row.i;
        let h = &row.h;
        for n in 1..=c_max {
            // collect the recursion terms contributing at exponent N
            struct Term {
                d5p: u32,
                k: usize,
                c_rest: u32,
            }
            let mut terms = Vec::new();
            for k in 0..5 {
                if k == i {
                    continue;
                }
                let rk = h.residue(k) as u32;
                let mut d5p = if rk == 0 { 5 } else { rk };
                loop {
                    let cp = s_set(d5p, h).c_count() as u32;
                    if cp > n {
                        break;
                    }
                    let c_rest = n - cp;
                    if rows[k].coeffs.contains_key(&c_rest) {
                        terms.push(Term { d5p, k, c_rest });
                    }
                    d5p += 5;
                }
            }

            let lhs = row.coeffs.get(&n);
            if lhs.is_none() && terms.is_empty() {
                continue;
            }
            // D = product of the row's linear factors at exponent N; when
            // the row has no such exponent but the recursion produces terms,
            // fall back to the factors of the would-be degree (cannot occur
            // for the closed-form rows, but keeps mutated inputs comparable)
            let d5_lhs = row.degrees.get(&n).copied().unwrap_or_else(|| {
                terms
                    .iter()
                    .map(|t| t.d5p + rows[t.k].degrees.get(&t.c_rest).copied().unwrap_or(0))
                    .next()
                    .unwrap_or(5 * n)
            });
            let pairs = s_set(d5_lhs, h).pairs;
            let mut d_poly = Poly::one();
            for &(b5, k) in &pairs {
                d_poly = d_poly.mul(&linear_factor(b5, ctx.lambda(i) - ctx.lambda(k)));
            }
            let z_n = Poly::monomial(Rational::one(), n as usize);
            let clear = RationalFunction::from_poly(z_n.mul(&d_poly));

            // LHS * z^N * D
            let lhs_cleared = match lhs {
                Some(c) => c.mul(&clear),
                None => RationalFunction::zero(),
            };

            // RHS * z^N * D, term by term
            let mut rhs = Poly::zero();
            for t in &terms {
                let k = t.k;
                let dp = rat(t.d5p as i64, 5);
                let delta = ctx.lambda(k) - ctx.lambda(i);
                let mu = &delta / &dp;
                // scalar part of C: prod over S(d',h) minus the pair (d',k)
                let mut removed = false;
                let mut scalar = Rational::one();
                for &(a5, l) in &s_set(t.d5p, h).pairs {
                    if !removed && a5 == t.d5p && l == k {
                        removed = true;
                        continue;
                    }
                    let factor =
                        rat(a5 as i64, 5) + &dp * (ctx.lambda(i) - ctx.lambda(l)) / &delta;
                    if factor.is_zero() {
                        return Err(AModelError::SingularWeights(format!(
                            "vanishing recursion factor at i={}, k={}, d5'={}",
                            i, k, t.d5p
                        )));
                    }
                    scalar *= factor;
                }
                assert!(removed, "pair (d',k) must lie in S(d',h)");
                // inner row coefficient evaluated at z = mu
                let inner = &rows[k].coeffs[&t.c_rest];
                let val = inner.eval(&mu).ok_or_else(|| {
                    AModelError::SingularWeights(format!(
                        "row {} coefficient has a pole at z = ({})/d'",
                        k, delta
                    ))
                })?;
                // C = z / ((d' z - delta) * scalar): its z-linear denominator
                // factor is exactly the (b,k) = (d',k) factor of D, so the
                // cleared term is z * (D / factor) * val * mu^{c''} / scalar
                let factor = linear_factor(t.d5p, ctx.lambda(i) - ctx.lambda(k));
                let (q, r) = d_poly.div_rem(&factor);
                assert!(r.is_zero(), "C-denominator must divide D");
                let mut mu_pow = Rational::one();
                for _ in 0..t.c_rest {
                    mu_pow *= &mu;
                }
                rhs = rhs.add(&q.mul(&Poly::var()).scale(&(val * mu_pow / scalar)));
            }

            if lhs_cleared != RationalFunction::from_poly(rhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Builds the rows of `g` and checks the recursion for every fixed point.
pub fn check_recursion(
    g: &Sector,
    ctx: &EquivariantContext,
    c_max: u32,
) -> Result<bool, AModelError> {
    let rows = all_rows(g, ctx, c_max)?;
    check_recursion_with_rows(&rows, ctx, c_max)
}
