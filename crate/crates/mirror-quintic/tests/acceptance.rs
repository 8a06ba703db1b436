//! Acceptance suite: one test per headline criterion, each printing a single
//! pass/fail line.  Every comparison is exact; there are no tolerances.

use std::time::Instant;

use mirror_quintic::amodel::{
    check_recursion, extract_mirror_data, EquivariantContext,
};
use mirror_quintic::bmodel::{derive_pf, ib};
use mirror_quintic::rings::{rat, rat_int, Rational};
use mirror_quintic::sectors::{cr_basis, Sector, Space};
use mirror_quintic::verify::{
    basis_count_check, closed_form_operator, compare_ab, compare_series, pf_annihilates,
    representative_sectors, virtual_dim_sweep, VerificationReport,
};

fn report_line(name: &str, ok: bool, started: Instant) {
    println!(
        "acceptance {}: {} ({:.2?})",
        name,
        if ok { "PASS" } else { "FAIL" },
        started.elapsed()
    );
    assert!(ok, "acceptance criterion failed: {}", name);
}

fn all_pass(reports: &[VerificationReport]) -> bool {
    for r in reports {
        if !r.passed() {
            eprintln!("  failing check {}: {:?}", r.check, r.mismatches.first());
            return false;
        }
    }
    true
}

/// Criterion 1: the derived operators for the five representative shapes
/// match their closed forms exactly, with orders 4,2,2,2,2.
#[test]
fn criterion_1_operator_derivation() {
    let t = Instant::now();
    let mut ok = true;
    for (g, want_order) in representative_sectors().iter().zip([4u32, 2, 2, 2, 2]) {
        let pf = derive_pf(g, 6).expect("derivation succeeds");
        let expect = closed_form_operator(g).expect("representative shape");
        ok &= pf.order == want_order && pf.operator_t == expect;
    }
    report_line("1 (operator derivation, five shapes)", ok, t);
}

/// Criterion 2: A-side equals B-side coefficient by coefficient at
/// d5max = 50 for the five shapes and ten permuted variants.
#[test]
fn criterion_2_a_equals_b() {
    let t = Instant::now();
    let mut sectors = representative_sectors();
    let permutations: [[usize; 5]; 3] = [[4, 3, 2, 1, 0], [1, 2, 3, 4, 0], [2, 0, 4, 1, 3]];
    for g in representative_sectors() {
        if g.is_identity() {
            continue; // permutations of the identity are trivial
        }
        for p in permutations {
            sectors.push(g.permuted(p));
        }
    }
    assert!(sectors.len() >= 15);
    let ok = sectors.iter().all(|g| {
        let r = compare_ab(g, 50);
        if !r.passed() {
            eprintln!("  A=B failed for {}: {:?}", g, r.mismatches.first());
        }
        r.passed()
    });
    report_line("2 (A = B at d5max 50, shapes + permutations)", ok, t);
}

/// Criterion 3: each closed-form operator annihilates every component of
/// the matching B-side I-series through the guarded truncation at
/// d5max = 125.
#[test]
fn criterion_3_pf_annihilation() {
    let t = Instant::now();
    let reports: Vec<_> = representative_sectors()
        .iter()
        .map(|g| pf_annihilates(&closed_form_operator(g).unwrap(), g, 125))
        .collect();
    report_line("3 (PF annihilation at d5max 125)", all_pass(&reports), t);
}

/// Criterion 4: the mirror-map coefficients 120, 113400, 770 agree with an
/// independent factorial/harmonic-number oracle.
#[test]
fn criterion_4_mirror_map_coefficients() {
    let t = Instant::now();
    // oracle: F0 degree-d coefficient is (5d)!/(d!)^5; the tau - t
    // degree-1 coefficient is F0_1 * (5 H_5 - 5 H_1) with harmonic sums
    let factorial = |n: u64| (1..=n).map(|k| rat_int(k as i64)).product::<Rational>();
    let f0_oracle = |d: u64| factorial(5 * d) / factorial(d).pow(5);
    let harmonic = |n: i64| (1..=n).map(|k| rat(1, k)).sum::<Rational>();
    let tau1_oracle =
        f0_oracle(1) * (rat_int(5) * harmonic(5) - rat_int(5) * harmonic(1));
    assert_eq!(f0_oracle(1), rat_int(120));
    assert_eq!(f0_oracle(2), rat_int(113400));
    assert_eq!(tau1_oracle, rat_int(770));

    let data = extract_mirror_data(10);
    let ok = data.f0.coeff(0, 5) == f0_oracle(1)
        && data.f0.coeff(0, 10) == f0_oracle(2)
        && data.tau.coeff(0, 5) == tau1_oracle;
    report_line("4 (mirror-map coefficients 120/113400/770)", ok, t);
}

/// Criterion 5: the counting claims — 204 basis classes, 100 age-1 sectors
/// split 20/20/30/30, 101 degree-2 classes.
#[test]
fn criterion_5_counting() {
    let t = Instant::now();
    report_line("5 (basis counts 204/100/101)", basis_count_check().passed(), t);
}

/// Criterion 6: the index identity `c(d,h) = m_d - dim + 1` over every
/// compatible pair and degree d <= 3.
#[test]
fn criterion_6_index_identity_sweep() {
    let t = Instant::now();
    report_line("6 (index identity sweep d <= 3)", virtual_dim_sweep(3).passed(), t);
}

/// Criterion 7: the fixed-point recursion holds for every age <= 1 sector
/// at three distinct weight vectors, cMax = 15, z symbolic.
#[test]
fn criterion_7_localization_recursion() {
    let t = Instant::now();
    let mut sectors = vec![Sector::identity()];
    sectors.extend(Sector::age_one_w_sectors());
    assert_eq!(sectors.len(), 101);
    let mut ok = true;
    for b in [17i64, 19, 23] {
        let ctx = EquivariantContext::new([0, 1, b, b * b, b * b * b].map(rat_int))
            .expect("distinct weights");
        for g in &sectors {
            match check_recursion(g, &ctx, 15) {
                Ok(true) => {}
                other => {
                    eprintln!("  recursion failed for {} at B={}: {:?}", g, b, other);
                    ok = false;
                }
            }
        }
    }
    report_line("7 (localization recursion, 101 sectors x 3 weights)", ok, t);
}

/// Criterion 8: soundness spot-checks — seeded single-coefficient mutations
/// of the B-side series and of the closed-form operators are always caught.
#[test]
fn criterion_8_mutation_detection() {
    let t = Instant::now();
    let mut state = 0x243f_6a88_85a3_08d3u64;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 33) as usize
    };
    let shapes = representative_sectors();
    let mut ok = true;
    for trial in 0..20 {
        let g = shapes[next() % shapes.len()];
        let a = ib(&g, 20).unwrap();
        let mut b = a.clone();
        // bump one coefficient at a seeded position in the support
        let keys: Vec<_> = a.iter().map(|(k, _)| *k).collect();
        let (sector, d5, p) = keys[next() % keys.len()];
        let exps: Vec<i64> = a.coeff(&sector, d5, p).iter().map(|(&e, _)| e).collect();
        let exp = exps[next() % exps.len()];
        let mut bump = mirror_quintic::rings::ZLaurent::zero();
        bump.add_term(exp, &rat(1, 1 + (next() % 7) as i64));
        b.add_term(sector, d5, p, &bump);

        let mut report = VerificationReport::new(&format!("mutation-{}", trial), 20);
        compare_series(&mut report, "mutated", &a, &b);
        if report.passed() {
            eprintln!("  undetected mutation at {:?} z^{}", (sector, d5, p), exp);
            ok = false;
        }
    }
    // operator mutations: a wrong-row operator never annihilates
    for g in &shapes {
        for h in &shapes {
            if g == h {
                continue;
            }
            let wrong = closed_form_operator(h).unwrap();
            if pf_annihilates(&wrong, g, 40).passed() {
                eprintln!("  operator of {} wrongly annihilates iB({})", h, g);
                ok = false;
            }
        }
    }
    report_line("8 (mutation detection soundness)", ok, t);
}

/// The full default verification suite also passes end to end.
#[test]
fn full_suite_passes() {
    let t = Instant::now();
    let reports = mirror_quintic::verify::run_all(25);
    report_line("suite (run_all at d5max 25)", all_pass(&reports), t);
}

/// Cheap structural sanity used by several criteria: the even basis size
/// matches the derivative-structure count.
#[test]
fn basis_matches_derivative_structure() {
    let t = Instant::now();
    let total = cr_basis(Space::W).len();
    let age_one = Sector::age_one_w_sectors().len();
    report_line("basis structure (204 = 4 + 2*100)", total == 4 + 2 * age_one, t);
}
