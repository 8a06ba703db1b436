//! Property-based suites: exact algebraic invariants checked on randomized
//! inputs.  All arithmetic is rational, so every property is an equality.

use proptest::prelude::*;

use mirror_quintic::amodel::{forward_substitute, invert_mirror_map, extract_mirror_data, ia};
use mirror_quintic::bmodel::{
    derive_pf, psi_derivative, PeriodCombination, PeriodSymbol, Reducer,
    Strategy as ReductionStrategy,
};
use mirror_quintic::rings::{rat, LogSeries, Poly, Rational, RationalFunction};
use mirror_quintic::sectors::{cr_basis, poincare_dual_w, Sector, Space};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..20).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(rational(), 0..=max_deg + 1).prop_map(Poly::from_coeffs)
}

fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (poly(3), poly(3).prop_filter("nonzero denominator", |p| !p.is_zero()))
        .prop_map(|(n, d)| RationalFunction::new(n, d))
}

/// Exponent tuples with sum divisible by 5, biased toward rewritable ones.
fn period_symbol() -> impl Strategy<Value = PeriodSymbol> {
    proptest::collection::vec(0u32..12, 4).prop_map(|v| {
        let partial: u32 = v.iter().sum();
        let last = (5 - partial % 5) % 5 + 5 * (partial % 3);
        PeriodSymbol::new([v[0], v[1], v[2], v[3], last])
    })
}

fn w_sector() -> impl Strategy<Value = Sector> {
    let sectors = Sector::enumerate(Space::W);
    (0..sectors.len()).prop_map(move |i| sectors[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfun_field_inverses(a in ratfun(), b in ratfun()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&b).div(&b), a);
        prop_assert_eq!(b.mul(&b.recip()), RationalFunction::one());
    }

    #[test]
    fn poly_ring_laws(a in poly(4), b in poly(4), c in poly(4)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !b.is_zero() {
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
        }
    }

    #[test]
    fn duality_is_an_involution(idx in 0usize..204) {
        let basis = cr_basis(Space::W);
        let b = basis[idx];
        let (dual, scale) = poincare_dual_w(&b);
        let (back, scale2) = poincare_dual_w(&dual);
        prop_assert_eq!(back, b);
        prop_assert_eq!(scale, scale2);
    }

    #[test]
    fn sector_inverse_composes_to_identity(g in w_sector()) {
        prop_assert_eq!(g.compose(&g.inverse()), Sector::identity());
        prop_assert_eq!(g.inverse().inverse(), g);
        prop_assert_eq!(g.age() + g.inverse().age(),
            if g.is_identity() { 0 } else { 5 - u32::from(g.zero_count()) });
    }

    #[test]
    fn i_series_is_homogeneous(g in w_sector(), d in 0u32..4) {
        // within one sector component, H-power plus z-exponent is constant
        prop_assume!(mirror_quintic::amodel::is_supported_sector(&g));
        let s = ia(&g, 5 * d).unwrap();
        for (&(sector, _, p), v) in s.iter() {
            let weights: Vec<i64> = v.iter().map(|(&e, _)| e + i64::from(p)).collect();
            let expect = s
                .iter()
                .filter(|(&(s2, _, _), _)| s2 == sector)
                .flat_map(|(&(_, _, p2), v2)| {
                    v2.iter().map(move |(&e, _)| e + i64::from(p2)).collect::<Vec<_>>()
                })
                .next()
                .unwrap();
            prop_assert!(weights.iter().all(|&w| w == expect));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // the two rewrite strategies agree on every reducible combination
    #[test]
    fn reduction_is_confluent(s in period_symbol(), c in rational()) {
        let comb = PeriodCombination::single(s, RationalFunction::constant(c));
        let mut left = Reducer::new(ReductionStrategy::LeftmostFirst);
        let mut largest = Reducer::new(ReductionStrategy::LargestEntryFirst);
        let a = left.reduce(&comb).unwrap();
        let b = largest.reduce(&comb).unwrap();
        prop_assert_eq!(a, b);
    }

    // reduction commutes with the psi-derivative up to re-reduction
    #[test]
    fn derivative_then_reduce_is_path_independent(s in period_symbol()) {
        let comb = PeriodCombination::single(s, RationalFunction::one());
        let mut r1 = Reducer::new(ReductionStrategy::LeftmostFirst);
        let direct = r1.reduce(&psi_derivative(&comb)).unwrap();
        let mut r2 = Reducer::new(ReductionStrategy::LeftmostFirst);
        let canonical = r2.reduce(&comb).unwrap();
        let reduced_first = r2.reduce(&psi_derivative(&canonical)).unwrap();
        prop_assert_eq!(direct, reduced_first);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // scalar outputs do not depend on the ordering of the residues
    #[test]
    fn operators_are_permutation_equivariant(perm_idx in 0usize..120) {
        let perm = nth_permutation(perm_idx);
        for g in [
            Sector::new([0, 0, 0, 2, 3]).unwrap(),
            Sector::new([0, 0, 1, 1, 3]).unwrap(),
        ] {
            let base = derive_pf(&g, 4).unwrap();
            let moved = derive_pf(&g.permuted(perm), 4).unwrap();
            prop_assert_eq!(&base.operator_t, &moved.operator_t);
            prop_assert_eq!(&base.operator_psi, &moved.operator_psi);
        }
    }

    // the mirror map and its inverse are mutually inverse on small inputs
    #[test]
    fn mirror_map_round_trips(c in -30i64..30) {
        let data = extract_mirror_data(20);
        let mut s = LogSeries::zero(20);
        s.add_term(0, 5, &rat(c, 7));
        s.add_term(0, 7, &rat(1, 3));
        let there = forward_substitute(&data, &s);
        let back = invert_mirror_map(&data, &there);
        prop_assert_eq!(back, s);
    }
}

/// The `n`-th of the 120 permutations of five symbols, in a fixed order.
fn nth_permutation(mut n: usize) -> [usize; 5] {
    let mut pool: Vec<usize> = (0..5).collect();
    let mut out = [0usize; 5];
    let mut fact = 24; // 4!
    for (i, slot) in out.iter_mut().enumerate() {
        let idx = (n / fact).min(pool.len() - 1);
        *slot = pool.remove(idx);
        n %= fact;
        if i < 4 {
            fact /= 4 - i.min(3);
        }
    }
    out
}
