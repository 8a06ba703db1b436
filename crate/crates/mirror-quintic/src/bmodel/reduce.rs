//! Pole-order reduction of period symbols for the Fermat quintic pencil.
//!
//! A period symbol `[R]_k` stands for the period of `x^R / Q^k Omega_0` over
//! the pencil `Q = sum x_i^5 - psi x_0...x_4`, with `sum R_i = 5(k-1)`.  Two
//! rewriting relations lower or redistribute exponents:
//!
//! - with `R_i >= 5`:
//!   `[R]_k = (psi/5) [R + 1 - 5 e_i]_k + ((R_i - 4)/(5(k-1))) [R - 5 e_i]_{k-1}`
//! - with `R_i = 4` (the numerator is then independent of `x_i` after
//!   removing `x_i^4`): `[R]_k = (psi/5) [R + 1 - 5 e_i]_k`
//!
//! Neither relation changes `R_i - R_j mod 5`, so reduction stays inside one
//! congruence class; the canonical representatives are the symbols with all
//! entries `<= 3`.  Same-pole-order rewriting is functional (one successor
//! per symbol) but can cycle with an accumulated factor `(psi/5)^len`; such
//! cycles are solved algebraically via `[X] = remainder / (1 - (psi/5)^len)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::rings::{rat, Poly, Rational, RationalFunction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BModelError {
    #[error("rewrite cap of {0} steps exceeded; reduction diverged")]
    ReductionDiverged(usize),
    #[error("combination mixes congruence classes: {0} vs {1}")]
    MixedClass(PeriodSymbol, PeriodSymbol),
    #[error("no linear relation among derivatives up to order {0}")]
    NoRelationFound(u32),
    #[error("sector {0} is outside the implemented range (age <= 1 with >= 2 zero residues)")]
    UnsupportedSector(crate::sectors::Sector),
}

/// Exponent tuple of a period numerator; the pole order is derived.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PeriodSymbol {
    pub exponents: [u32; 5],
}

impl PeriodSymbol {
    pub fn new(exponents: [u32; 5]) -> Self {
        let sum: u32 = exponents.iter().sum();
        assert_eq!(sum % 5, 0, "exponent sum must be divisible by 5");
        PeriodSymbol { exponents }
    }

    /// `k` with `sum R_i = 5(k-1)`.
    pub fn pole_order(&self) -> u32 {
        self.exponents.iter().sum::<u32>() / 5 + 1
    }

    /// All entries <= 3: no rewrite applies.
    pub fn is_canonical(&self) -> bool {
        self.exponents.iter().all(|&r| r <= 3)
    }

    /// Congruence-class fingerprint: `(R_i - R_0) mod 5`, invariant under
    /// every rewrite.
    pub fn class_key(&self) -> [u32; 5] {
        let r0 = self.exponents[0];
        self.exponents.map(|r| (r + 4 * r0) % 5)
    }

    fn successor(&self, i: usize) -> PeriodSymbol {
        let mut e = self.exponents;
        for v in e.iter_mut() {
            *v += 1;
        }
        e[i] -= 5;
        PeriodSymbol { exponents: e }
    }
}

impl fmt::Display for PeriodSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.exponents.iter().map(|r| r.to_string()).collect();
        write!(f, "({})_{}", strs.join(","), self.pole_order())
    }
}

/// Finite linear combination of period symbols with coefficients in Q(psi);
/// all symbols lie in one congruence class.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PeriodCombination {
    terms: BTreeMap<PeriodSymbol, RationalFunction>,
}

impl PeriodCombination {
    pub fn zero() -> Self {
        PeriodCombination::default()
    }

    pub fn single(symbol: PeriodSymbol, coeff: RationalFunction) -> Self {
        let mut c = PeriodCombination::zero();
        c.add_term(symbol, &coeff);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PeriodSymbol, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coeff(&self, symbol: &PeriodSymbol) -> RationalFunction {
        self.terms
            .get(symbol)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn add_term(&mut self, symbol: PeriodSymbol, coeff: &RationalFunction) {
        if coeff.is_zero() {
            return;
        }
        if let Some((s, _)) = self.terms.iter().next() {
            assert_eq!(
                s.class_key(),
                symbol.class_key(),
                "combination must stay in one congruence class"
            );
        }
        let entry = self
            .terms
            .entry(symbol)
            .or_insert_with(RationalFunction::zero);
        *entry = entry.add(coeff);
        if entry.is_zero() {
            self.terms.remove(&symbol);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in other.iter() {
            out.add_term(*s, c);
        }
        out
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        let mut out = PeriodCombination::zero();
        for (s, c) in self.iter() {
            out.add_term(*s, &c.mul(f));
        }
        out
    }

    /// Validates the single-class invariant against an explicit expected key.
    pub fn check_class(&self) -> Result<(), BModelError> {
        let mut it = self.terms.keys();
        if let Some(first) = it.next() {
            for s in it {
                if s.class_key() != first.class_key() {
                    return Err(BModelError::MixedClass(*first, *s));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PeriodCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) {}", c, s)?;
        }
        Ok(())
    }
}

/// Which rewritable entry a reduction step picks first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Lowest index with an entry >= 4.
    LeftmostFirst,
    /// Index of the largest entry (ties to the left).
    LargestEntryFirst,
}

impl Strategy {
    fn pick(&self, s: &PeriodSymbol) -> Option<usize> {
        match self {
            Strategy::LeftmostFirst => s.exponents.iter().position(|&r| r >= 4),
            Strategy::LargestEntryFirst => {
                let (i, &max) = s
                    .exponents
                    .iter()
                    .enumerate()
                    .max_by_key(|&(i, &r)| (r, std::cmp::Reverse(i)))
                    .expect("five entries");
                (max >= 4).then_some(i)
            }
        }
    }
}

/// Memoizing reducer with a global rewrite cap.
pub struct Reducer {
    pub strategy: Strategy,
    pub cap: usize,
    steps: usize,
    fired_full: usize,
    fired_degenerate: usize,
    cache: HashMap<PeriodSymbol, PeriodCombination>,
}

/// `psi/5` as a rational function.
fn psi_over_5() -> RationalFunction {
    RationalFunction::from_poly(Poly::monomial(rat(1, 5), 1))
}

impl Reducer {
    pub fn new(strategy: Strategy) -> Self {
        Reducer {
            strategy,
            cap: 10_000,
            steps: 0,
            fired_full: 0,
            fired_degenerate: 0,
            cache: HashMap::new(),
        }
    }

    pub fn steps_taken(&self) -> usize {
        self.steps
    }

    /// How often each relation fired: `(entry >= 5 rewrites, entry = 4
    /// rewrites)`.  Keeps the derivation trace auditable.
    pub fn relation_counts(&self) -> (usize, usize) {
        (self.fired_full, self.fired_degenerate)
    }

    /// One rewrite: returns the same-pole successor and the optional
    /// lower-pole remainder term.
    fn rewrite_step(
        &self,
        s: &PeriodSymbol,
    ) -> (usize, PeriodSymbol, Option<(PeriodSymbol, Rational)>) {
        let i = self
            .strategy
            .pick(s)
            .expect("rewrite_step called on canonical symbol");
        let succ = s.successor(i);
        debug_assert_eq!(succ.class_key(), s.class_key());
        debug_assert_eq!(succ.pole_order(), s.pole_order());
        let ri = s.exponents[i];
        let lower = if ri >= 5 {
            let mut e = s.exponents;
            e[i] -= 5;
            let low = PeriodSymbol { exponents: e };
            debug_assert_eq!(low.pole_order() + 1, s.pole_order());
            let k_low = low.pole_order();
            Some((low, rat((ri - 4) as i64, 5 * k_low as i64)))
        } else {
            None
        };
        (i, succ, lower)
    }

    /// Reduces a single symbol to canonical form.
    pub fn reduce_symbol(
        &mut self,
        symbol: &PeriodSymbol,
    ) -> Result<PeriodCombination, BModelError> {
        if symbol.is_canonical() {
            return Ok(PeriodCombination::single(*symbol, RationalFunction::one()));
        }
        if let Some(c) = self.cache.get(symbol) {
            return Ok(c.clone());
        }

        // Walk the same-pole-order successor chain until it hits a canonical
        // symbol, a cached symbol, or itself.
        let mut chain = vec![*symbol];
        let mut position: HashMap<PeriodSymbol, usize> = HashMap::new();
        position.insert(*symbol, 0);
        let mut lowers: Vec<Option<(PeriodSymbol, Rational)>> = Vec::new();
        let (terminal, cycle_start) = loop {
            self.steps += 1;
            if self.steps > self.cap {
                return Err(BModelError::ReductionDiverged(self.cap));
            }
            let cur = *chain.last().expect("nonempty chain");
            let (_, succ, lower) = self.rewrite_step(&cur);
            if lower.is_some() {
                self.fired_full += 1;
            } else {
                self.fired_degenerate += 1;
            }
            lowers.push(lower);
            if succ.is_canonical() {
                break (
                    Some(PeriodCombination::single(succ, RationalFunction::one())),
                    None,
                );
            }
            if let Some(c) = self.cache.get(&succ) {
                break (Some(c.clone()), None);
            }
            if let Some(&p) = position.get(&succ) {
                break (None, Some(p));
            }
            position.insert(succ, chain.len());
            chain.push(succ);
        };

        // Canonical value of the lower-pole remainder at each chain position.
        let mut l_vals = Vec::with_capacity(lowers.len());
        for lower in &lowers {
            let v = match lower {
                Some((low, c)) => self
                    .reduce_symbol(low)?
                    .scale(&RationalFunction::constant(c.clone())),
                None => PeriodCombination::zero(),
            };
            l_vals.push(v);
        }

        let f = psi_over_5();
        let last = chain.len() - 1;
        // value of the successor of the last chain element
        let after_last = match (terminal, cycle_start) {
            (Some(v), _) => v,
            (None, Some(p)) => {
                // cycle chain[p] -> ... -> chain[last] -> chain[p]: solve
                // V(p) = (psi/5)^len V(p) + sum_j (psi/5)^{j-p} L(j)
                let len = (last - p + 1) as u32;
                let mut acc = PeriodCombination::zero();
                let mut f_pow = RationalFunction::one();
                for lv in l_vals.iter().take(last + 1).skip(p) {
                    acc = acc.add(&lv.scale(&f_pow));
                    f_pow = f_pow.mul(&f);
                }
                let geom = RationalFunction::one().sub(&f.pow(len));
                acc.scale(&geom.recip())
            }
            (None, None) => unreachable!("loop breaks with a terminal or a cycle"),
        };

        // back-substitute V(j) = (psi/5) V(j+1) + L(j); for a cycle the
        // resolved V(p) plays the role of "value after the last element"
        let mut value = after_last;
        for j in (0..=last).rev() {
            value = value.scale(&f).add(&l_vals[j]);
            value.check_class()?;
            self.cache.insert(chain[j], value.clone());
        }
        Ok(self.cache[symbol].clone())
    }

    /// Reduces every symbol of a combination to canonical form.
    pub fn reduce(&mut self, c: &PeriodCombination) -> Result<PeriodCombination, BModelError> {
        let mut out = PeriodCombination::zero();
        for (s, coeff) in c.iter() {
            out = out.add(&self.reduce_symbol(s)?.scale(coeff));
        }
        Ok(out)
    }
}

/// `d/d psi` of a combination: coefficient derivatives plus the pole-raising
/// term `k [P + (1,1,1,1,1)]_{k+1}` per symbol.
pub fn psi_derivative(c: &PeriodCombination) -> PeriodCombination {
    let mut out = PeriodCombination::zero();
    for (s, coeff) in c.iter() {
        out.add_term(*s, &coeff.derivative());
        let k = s.pole_order();
        let raised = PeriodSymbol::new(s.exponents.map(|r| r + 1));
        out.add_term(
            raised,
            &coeff.mul(&RationalFunction::constant(Rational::from_integer(k.into()))),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat_int;

    fn sym(e: [u32; 5]) -> PeriodSymbol {
        PeriodSymbol::new(e)
    }

    fn rf_const(n: i64, d: i64) -> RationalFunction {
        RationalFunction::constant(rat(n, d))
    }

    #[test]
    fn pole_order_and_canonical() {
        assert_eq!(sym([0, 0, 0, 0, 0]).pole_order(), 1);
        assert_eq!(sym([4, 4, 4, 4, 4]).pole_order(), 5);
        assert!(sym([3, 3, 3, 3, 3]).is_canonical());
        assert!(!sym([4, 4, 4, 4, 4]).is_canonical());
        assert!(!sym([0, 0, 0, 1, 4]).is_canonical());
    }

    #[test]
    fn psi_derivative_product_rule() {
        // d/dpsi (psi [0]_1) = [0]_1 + psi [1,1,1,1,1]_2
        let c = PeriodCombination::single(
            sym([0; 5]),
            RationalFunction::from_poly(Poly::var()),
        );
        let d = psi_derivative(&c);
        assert_eq!(d.coeff(&sym([0; 5])), RationalFunction::one());
        assert_eq!(
            d.coeff(&sym([1; 5])),
            RationalFunction::from_poly(Poly::var())
        );
        assert!(psi_derivative(&PeriodCombination::zero()).is_zero());
    }

    #[test]
    fn entry_four_rewrite() {
        // [0,0,0,1,4]_2 = (psi/5) [1,1,1,2,0]_2
        let mut r = Reducer::new(Strategy::LeftmostFirst);
        let out = r.reduce_symbol(&sym([0, 0, 0, 1, 4])).unwrap();
        let expect = PeriodCombination::single(
            sym([1, 1, 1, 2, 0]),
            RationalFunction::from_poly(Poly::monomial(rat(1, 5), 1)),
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn diagonal_class_reduces_to_small_diagonals() {
        // [4,4,4,4,4]_5 cycles back to itself through five rewrites; the
        // result must involve only the four canonical diagonals
        let mut r = Reducer::new(Strategy::LeftmostFirst);
        let out = r.reduce_symbol(&sym([4; 5])).unwrap();
        for (s, _) in out.iter() {
            assert!(s.is_canonical());
            assert_eq!(s.class_key(), [0; 5]);
        }
        assert!(!out.is_zero());
    }

    #[test]
    fn strategies_agree() {
        for start in [
            sym([4, 4, 4, 4, 4]),
            sym([5, 5, 5, 5, 0]),
            sym([9, 1, 0, 0, 0]),
            sym([6, 6, 3, 3, 2]),
            sym([8, 0, 4, 2, 1]),
        ] {
            let mut a = Reducer::new(Strategy::LeftmostFirst);
            let mut b = Reducer::new(Strategy::LargestEntryFirst);
            assert_eq!(
                a.reduce_symbol(&start).unwrap(),
                b.reduce_symbol(&start).unwrap(),
                "strategies disagree on {}",
                start
            );
        }
    }

    #[test]
    fn canonical_fixed_point() {
        let mut r = Reducer::new(Strategy::LeftmostFirst);
        let s = sym([1, 2, 3, 3, 1]);
        assert_eq!(
            r.reduce_symbol(&s).unwrap(),
            PeriodCombination::single(s, RationalFunction::one())
        );
        assert_eq!(r.steps_taken(), 0);
    }

    #[test]
    fn mixed_class_rejected() {
        let mut c = PeriodCombination::single(sym([0; 5]), rf_const(1, 1));
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
            c.add_term(sym([0, 0, 0, 1, 4]), &rf_const(1, 1));
        }));
        assert!(result.is_err());
    }

    #[test]
    fn pole_order_bookkeeping_through_reduction() {
        // every canonical output symbol of the class of e has pole order
        // matching its exponent sum
        let mut r = Reducer::new(Strategy::LeftmostFirst);
        let out = r.reduce_symbol(&sym([10, 5, 0, 0, 0])).unwrap();
        for (s, _) in out.iter() {
            assert_eq!(s.exponents.iter().sum::<u32>() % 5, 0);
            assert!(s.is_canonical());
        }
        assert_eq!(rat_int(1), rat_int(1));
    }
}
