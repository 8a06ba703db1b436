//! Cross-checks tying the A- and B-sides together.
//!
//! The checks are exact: every comparison is an equality of arbitrary-
//! precision rationals, and a report passes iff it records no mismatch.

use serde_json::{json, Value};

use crate::amodel::{self, extract_mirror_data, ia, jw};
use crate::bmodel::{ib, PFResult};
use crate::rings::{
    format_rational, rat, rat_int, CohomologySeries, DifferentialOperator, LogSeries, Rational,
};
use crate::sectors::{
    self, cr_basis, virtual_dim_check, Sector, Space,
};

/// One located disagreement between an expected and an actual value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub location: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one named check; passes iff no mismatches were recorded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub check: String,
    pub d5max: u32,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn new(check: &str, d5max: u32) -> Self {
        VerificationReport {
            check: check.to_string(),
            d5max,
            mismatches: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn record(&mut self, location: String, expected: String, actual: String) {
        self.mismatches.push(Mismatch {
            location,
            expected,
            actual,
        });
    }

    fn record_rationals(&mut self, location: String, expected: &Rational, actual: &Rational) {
        if expected != actual {
            self.record(location, format_rational(expected), format_rational(actual));
        }
    }

    pub fn to_json(&self) -> Value {
        let ms: Vec<Value> = self
            .mismatches
            .iter()
            .map(|m| json!({"where": m.location, "expected": m.expected, "actual": m.actual}))
            .collect();
        json!({
            "check": self.check,
            "status": if self.passed() { "pass" } else { "fail" },
            "d5max": self.d5max,
            "mismatches": ms,
        })
    }
}

/// The five representative sector shapes whose operators and I-series the
/// engine handles, in a fixed order.
pub fn representative_sectors() -> Vec<Sector> {
    [
        [0, 0, 0, 0, 0],
        [0, 0, 0, 1, 4],
        [0, 0, 0, 2, 3],
        [0, 0, 1, 1, 3],
        [0, 0, 1, 2, 2],
    ]
    .into_iter()
    .map(|r| Sector::new(r).expect("valid shape"))
    .collect()
}

/// The closed-form annihilating operator of a supported sector, keyed by the
/// multiset of its nonzero residues; `None` outside the supported shapes.
pub fn closed_form_operator(g: &Sector) -> Option<DifferentialOperator> {
    let d = |a: i64| DifferentialOperator::d_plus(rat(a, 5));
    let product = |shifts: &[i64]| {
        let mut op = DifferentialOperator::one();
        for &a in shifts {
            op = op.compose(&d(a));
        }
        op
    };
    let shape: Vec<u8> = {
        let mut v: Vec<u8> = g.residues().into_iter().filter(|&r| r != 0).collect();
        v.sort_unstable();
        v
    };
    let (head, tail): (DifferentialOperator, &[i64]) = match shape.as_slice() {
        [] => (DifferentialOperator::d_power(4), &[1, 2, 3, 4]),
        [1, 4] => (DifferentialOperator::d_power(2), &[2, 3]),
        [2, 3] => (DifferentialOperator::d_power(2), &[1, 4]),
        [1, 1, 3] => (product(&[0, -1]), &[1, 3]),
        [1, 2, 2] => (product(&[0, -2]), &[1, 2]),
        _ => return None,
    };
    let tail_op = DifferentialOperator::term(0, 5, rat_int(3125)).compose(&product(tail));
    Some(head.sub(&tail_op))
}

/// Coefficient-by-coefficient comparison of two cohomology-valued series,
/// recording every disagreement.
pub fn compare_series(
    report: &mut VerificationReport,
    label: &str,
    expected: &CohomologySeries,
    actual: &CohomologySeries,
) {
    let mut keys: Vec<_> = expected.iter().map(|(k, _)| *k).collect();
    keys.extend(actual.iter().map(|(k, _)| *k));
    keys.sort();
    keys.dedup();
    for (g, d5, p) in keys {
        let e = expected.coeff(&g, d5, p);
        let a = actual.coeff(&g, d5, p);
        if e == a {
            continue;
        }
        let mut exps: Vec<i64> = e.iter().map(|(&k, _)| k).collect();
        exps.extend(a.iter().map(|(&k, _)| k));
        exps.sort_unstable();
        exps.dedup();
        for k in exps {
            report.record_rationals(
                format!("{}: sector={} d5={} H^{} z^{}", label, g, d5, p, k),
                &e.coeff(k),
                &a.coeff(k),
            );
        }
    }
}

/// A = B: the hypergeometric A-side I-series equals the closed-form B-side
/// I-series of the same sector, coefficient by coefficient, with the
/// symbolic prefactor unexpanded on both sides.
pub fn compare_ab(g: &Sector, d5max: u32) -> VerificationReport {
    let mut report = VerificationReport::new(&format!("compare-ab[{}]", g), d5max);
    match (ia(g, d5max), ib(g, d5max)) {
        (Ok(a), Ok(b)) => compare_series(&mut report, "iA vs iB", &a, &b),
        (a, b) => report.record(
            format!("construction of iA/iB({})", g),
            "both sides defined".into(),
            format!("iA err={:?} iB err={:?}", a.err(), b.err()),
        ),
    }
    report
}

/// Checks that `op` annihilates every `(sector, H-power)` component of the
/// prefactor-expanded B-side I-series at z=1, for all degrees up to the
/// guarded truncation `d5max - 5 * order`.
pub fn pf_annihilates(op: &DifferentialOperator, g: &Sector, d5max: u32) -> VerificationReport {
    let mut report = VerificationReport::new(&format!("pf-annihilates[{}]", g), d5max);
    let series = match ib(g, d5max) {
        Ok(s) => s,
        Err(e) => {
            report.record(
                format!("iB({})", g),
                "defined".into(),
                format!("{:?}", e),
            );
            return report;
        }
    };
    let safe_d5 = d5max.saturating_sub(5 * op.order());
    for ((sector, p), component) in series.expand_prefactor() {
        let residual = op.apply(&component);
        // report only the first surviving term of each component
        let survivor = residual
            .iter()
            .find(|(&(_, d5), _)| d5 <= safe_d5)
            .map(|(&(a, d5), c)| (a, d5, c.clone()));
        if let Some((a, d5, c)) = survivor {
            report.record(
                format!("sector={} H^{} at t^{} e^{{{}t/5}}", sector, p, a, d5),
                "0".into(),
                format_rational(&c),
            );
        }
    }
    report
}

/// Compares a derived Picard-Fuchs operator with the closed-form operator of
/// its sector's shape.
pub fn match_closed_form(derived: &PFResult) -> VerificationReport {
    let mut report = VerificationReport::new(
        &format!("match-closed-form[{}]", derived.sector),
        0,
    );
    match closed_form_operator(&derived.sector) {
        None => report.record(
            format!("shape of {}", derived.sector),
            "a supported shape".into(),
            "unsupported".into(),
        ),
        Some(expect) => {
            if derived.operator_t != expect {
                report.record(
                    format!("operator for {}", derived.sector),
                    expect.to_string(),
                    derived.operator_t.to_string(),
                );
            }
        }
    }
    report
}

/// Mirror-map consistency:
/// (a) the normalized series times its normalization reproduces the I-series;
/// (b) the scalar part of the normalized series is identically 1;
/// (c) the classical shadow: the B-side identity component reproduces
///     `F0 = 1 + 120 e^t + 113400 e^{2t} + ...` and `tau = t + 770 e^t + ...`.
pub fn mirror_consistency(d5max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("mirror-consistency", d5max);
    let data = extract_mirror_data(d5max);
    let mut sectors = vec![Sector::identity()];
    sectors.extend(
        Sector::age_one_w_sectors()
            .into_iter()
            .filter(amodel::is_supported_sector),
    );
    for g in &sectors {
        let i_series = ia(g, d5max).expect("supported sector");
        let j_series = jw(g, d5max).expect("supported sector");
        let norm = data.normalization(g).expect("supported sector").clone();
        // (a) definitional round-trip: jW(g) * H_g = iA(g)
        let back = j_series.div_unit(&norm.invert_unit());
        compare_series(&mut report, &format!("jW({})*H", g), &i_series, &back);
        // (b) scalar part of jW(g) on its own sector is exactly 1
        for d5 in 0..=d5max {
            let c = j_series.coeff(g, d5, 0).coeff(0);
            let want = if d5 == 0 { rat_int(1) } else { rat_int(0) };
            report.record_rationals(
                format!("jW({}) scalar part at d5={}", g, d5),
                &want,
                &c,
            );
        }
    }
    // (c) classical shadow from the B-side identity component
    let b = ib(&Sector::identity(), d5max).expect("identity supported");
    let e = Sector::identity();
    let mut f0 = LogSeries::zero(d5max);
    let mut g0_tilde = LogSeries::zero(d5max);
    for d5 in (0..=d5max).step_by(5) {
        f0.add_term(0, d5, &b.coeff(&e, d5, 0).coeff(0));
        g0_tilde.add_term(0, d5, &b.coeff(&e, d5, 1).coeff(-1));
    }
    let tau = g0_tilde.mul(&f0.invert_unit());
    for (loc, got, want) in [
        ("F0 coefficient of e^t", f0.coeff(0, 5), rat_int(120)),
        ("F0 coefficient of e^{2t}", f0.coeff(0, 10), rat_int(113400)),
        ("tau - t coefficient of e^t", tau.coeff(0, 5), rat_int(770)),
        ("A-side tau agrees", data.tau.coeff(0, 5), rat_int(770)),
    ] {
        report.record_rationals(loc.into(), &want, &got);
    }
    report
}

/// Counting checks on the even Chen-Ruan basis of the hypersurface orbifold.
pub fn basis_count_check() -> VerificationReport {
    let mut report = VerificationReport::new("basis-counts", 0);
    let basis = cr_basis(Space::W);
    report.record_rationals(
        "|even CR basis of W|".into(),
        &rat_int(204),
        &rat_int(basis.len() as i64),
    );
    let age_one = Sector::age_one_w_sectors();
    report.record_rationals(
        "age-1 sector count".into(),
        &rat_int(100),
        &rat_int(age_one.len() as i64),
    );
    let mut type_counts = std::collections::BTreeMap::new();
    for g in &age_one {
        *type_counts.entry(g.sorted_residues()).or_insert(0i64) += 1;
    }
    let mut counts: Vec<i64> = type_counts.values().copied().collect();
    counts.sort_unstable();
    if counts != vec![20, 20, 30, 30] {
        report.record(
            "age-1 type breakdown".into(),
            "[20, 20, 30, 30]".into(),
            format!("{:?}", counts),
        );
    }
    // degree-2 classes: H on the untwisted sector plus one class per age-1
    // sector
    let h11 = basis
        .iter()
        .filter(|b| b.sector.age() + u32::from(b.h_power) == 1)
        .count() as i64;
    report.record_rationals("h^{1,1} count".into(), &rat_int(101), &rat_int(h11));
    // derivative structure: a 4-tower over the identity plus a 2-tower per
    // age-1 sector spans the whole basis
    report.record_rationals(
        "4 + 2 * age-1 count".into(),
        &rat_int(basis.len() as i64),
        &rat_int(4 + 2 * age_one.len() as i64),
    );
    report
}

/// Exhaustive sweep of the index identity `c(d,h) = m_d - dim(Y_h) + 1` over
/// all compatible `(h, g)` pairs and degrees `d <= d_max`.
pub fn virtual_dim_sweep(d_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("virtual-dim-sweep", 5 * d_max);
    for h in Sector::enumerate(Space::Y) {
        for c in 0..5u8 {
            let g = h.inverse().shift_diagonal(c);
            let frac = sectors::degree_compatible(&h, &g).expect("g built compatible");
            let step = (frac * Rational::from_integer(5.into()))
                .to_integer()
                .try_into()
                .unwrap_or(0u32);
            let mut d5 = if step == 0 { 5 } else { step };
            while d5 <= 5 * d_max {
                match virtual_dim_check(&h, &g, d5) {
                    Ok((_, true)) => {}
                    Ok((m_d, false)) => report.record(
                        format!("h={} g={} d5={}", h, g, d5),
                        format!("c = m_d - dim + 1 with m_d = {}", m_d),
                        "identity violated".into(),
                    ),
                    Err(e) => report.record(
                        format!("h={} g={} d5={}", h, g, d5),
                        "compatible pair".into(),
                        e.to_string(),
                    ),
                }
                d5 += 5;
            }
        }
    }
    report
}

/// Runs the whole verification suite at one truncation, reports sorted by
/// check name.
pub fn run_all(d5max: u32) -> Vec<VerificationReport> {
    let mut reports = vec![
        basis_count_check(),
        mirror_consistency(d5max),
        virtual_dim_sweep(3),
    ];
    for g in representative_sectors() {
        reports.push(compare_ab(&g, d5max));
        let op = closed_form_operator(&g).expect("representative shape");
        reports.push(pf_annihilates(&op, &g, d5max));
        match crate::bmodel::derive_pf(&g, 6) {
            Ok(pf) => reports.push(match_closed_form(&pf)),
            Err(e) => {
                let mut r = VerificationReport::new(&format!("match-closed-form[{}]", g), 0);
                r.record(format!("derive_pf({})", g), "an operator".into(), format!("{:?}", e));
                reports.push(r);
            }
        }
    }
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representative_checks_pass_at_small_truncation() {
        for g in representative_sectors() {
            assert!(compare_ab(&g, 15).passed(), "A=B failed for {}", g);
            let op = closed_form_operator(&g).unwrap();
            assert!(
                pf_annihilates(&op, &g, 30).passed(),
                "annihilation failed for {}",
                g
            );
        }
    }

    #[test]
    fn wrong_operator_is_detected() {
        let e = Sector::identity();
        let wrong = closed_form_operator(&Sector::new([0, 0, 0, 1, 4]).unwrap()).unwrap();
        assert!(!pf_annihilates(&wrong, &e, 30).passed());
    }

    #[test]
    fn mutated_series_is_detected() {
        let g = Sector::identity();
        let a = ia(&g, 10).unwrap();
        let mut b = ib(&g, 10).unwrap();
        let bumped = b.coeff(&g, 5, 0).add(&crate::rings::ZLaurent::one());
        b.add_term(g, 5, 0, &crate::rings::ZLaurent::one());
        assert_eq!(b.coeff(&g, 5, 0), bumped);
        let mut report = VerificationReport::new("mutation", 10);
        compare_series(&mut report, "mutated", &a, &b);
        assert_eq!(report.mismatches.len(), 1);
        assert!(report.mismatches[0].location.contains("z^0"));
    }

    #[test]
    fn counting_and_sweep_reports_pass() {
        assert!(basis_count_check().passed());
        assert!(virtual_dim_sweep(3).passed());
    }

    #[test]
    fn mirror_consistency_passes() {
        let r = mirror_consistency(15);
        assert!(r.passed(), "mismatches: {:?}", r.mismatches);
    }

    #[test]
    fn report_json_schema() {
        let mut r = VerificationReport::new("demo", 5);
        r.record("here".into(), "1".into(), "2".into());
        let v = r.to_json();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["mismatches"][0]["where"], "here");
        assert_eq!(v["check"], "demo");
    }
}
