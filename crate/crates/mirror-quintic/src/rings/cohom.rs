//! Sector-graded cohomology-valued truncated series.
//!
//! A `CohomologySeries` stores, for each (sector g, fifth-integer degree
//! d5 = 5d, H-power p), a finite Laurent polynomial in z: the coefficient of
//! `e^{dt} 1_g H^p`.  The overall prefactor `e^{tH/z}` of the I/J-series is
//! kept symbolic until [`CohomologySeries::expand_prefactor`] is called.

use std::collections::BTreeMap;

use num::traits::{One, Zero};
use serde_json::{json, Value};

use super::{format_rational, parse_rational, LogSeries, Rational, ZLaurent};
use crate::sectors::{Sector, Space};

/// `(sector, d5, hPower)` index of one stored coefficient.
pub type SeriesKey = (Sector, u32, u8);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologySeries {
    pub space: Space,
    pub d5max: u32,
    /// True once the e^{tH/z} prefactor has been expanded into the terms.
    pub prefactor_applied: bool,
    terms: BTreeMap<SeriesKey, ZLaurent>,
}

impl CohomologySeries {
    pub fn new(space: Space, d5max: u32) -> Self {
        CohomologySeries {
            space,
            d5max,
            prefactor_applied: false,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, sector: &Sector, d5: u32, h_power: u8) -> ZLaurent {
        self.terms
            .get(&(*sector, d5, h_power))
            .cloned()
            .unwrap_or_else(ZLaurent::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SeriesKey, &ZLaurent)> {
        self.terms.iter()
    }

    /// The distinct sectors carrying at least one nonzero term.
    pub fn support_sectors(&self) -> Vec<Sector> {
        let mut out: Vec<Sector> = self.terms.keys().map(|&(g, _, _)| g).collect();
        out.dedup();
        out
    }

    /// Adds `v * e^{(d5/5)t} 1_g H^p`, enforcing nilpotency and truncation.
    pub fn add_term(&mut self, sector: Sector, d5: u32, h_power: u8, v: &ZLaurent) {
        if v.is_zero() || d5 > self.d5max {
            return;
        }
        let dim = sector
            .dim_in(self.space)
            .expect("sector lies in the series' space");
        if h_power > dim {
            return;
        }
        let key = (sector, d5, h_power);
        let entry = self.terms.entry(key).or_insert_with(ZLaurent::zero);
        *entry = entry.add(v);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space, "space mismatch");
        assert_eq!(
            self.prefactor_applied, other.prefactor_applied,
            "prefactor state mismatch"
        );
        let mut out = self.truncated(self.d5max.min(other.d5max));
        for (&(g, d5, p), v) in other.iter() {
            out.add_term(g, d5, p, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = CohomologySeries::new(self.space, self.d5max);
        out.prefactor_applied = self.prefactor_applied;
        if c.is_zero() {
            return out;
        }
        for (&(g, d5, p), v) in self.iter() {
            out.add_term(g, d5, p, &v.scale(c));
        }
        out
    }

    /// Re-truncates to a (typically smaller) `d5max`.
    pub fn truncated(&self, d5max: u32) -> Self {
        let mut out = CohomologySeries::new(self.space, d5max);
        out.prefactor_applied = self.prefactor_applied;
        for (&(g, d5, p), v) in self.iter() {
            out.add_term(g, d5, p, v);
        }
        out
    }

    /// Divides by a unit scalar series `u(t)` (no t-powers, constant term 1)
    /// via convolution against its inverse in the d5-grading.
    pub fn div_unit(&self, u: &LogSeries) -> Self {
        let inv = u.invert_unit();
        let mut out = CohomologySeries::new(self.space, self.d5max.min(u.d5max()));
        out.prefactor_applied = self.prefactor_applied;
        for (&(g, d5, p), v) in self.iter() {
            for (&(a, k), c) in inv.iter() {
                debug_assert_eq!(a, 0);
                if d5 + k <= out.d5max {
                    out.add_term(g, d5 + k, p, &v.scale(c));
                }
            }
        }
        out
    }

    /// Expands the symbolic prefactor `e^{tH/z}` and evaluates at z = 1.
    ///
    /// The component of `e^{tH} * self` on `1_g H^p` is
    /// `sum_{j <= p} t^{p-j}/(p-j)! * (self component on 1_g H^j)`,
    /// with each stored Laurent coefficient summed at z = 1.
    pub fn expand_prefactor(&self) -> BTreeMap<(Sector, u8), LogSeries> {
        assert!(!self.prefactor_applied, "prefactor already expanded");
        let mut out: BTreeMap<(Sector, u8), LogSeries> = BTreeMap::new();
        for g in self.support_sectors() {
            let dim = g.dim_in(self.space).expect("sector in space");
            for p in 0..=dim {
                let mut series = LogSeries::zero(self.d5max);
                for j in 0..=p {
                    // 1/(p-j)! factor of the exponential
                    let mut fact = Rational::one();
                    for m in 1..=(p - j) as u32 {
                        fact *= Rational::from_integer(m.into());
                    }
                    let inv_fact = fact.recip();
                    for (&(g2, d5, jp), v) in self.iter() {
                        if g2 == g && jp == j {
                            let c = v.eval_at_one() * &inv_fact;
                            series.add_term((p - j) as u32, d5, &c);
                        }
                    }
                }
                if !series.is_zero() {
                    out.insert((g, p), series);
                }
            }
        }
        out
    }

    /// JSON encoding: array of {sector, d5, hPower, z: [{exp, coeff}]}.
    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .iter()
            .map(|(&(g, d5, p), v)| {
                let z: Vec<Value> = v
                    .iter()
                    .map(|(e, c)| json!({"exp": e, "coeff": format_rational(c)}))
                    .collect();
                json!({"sector": g.to_string(), "d5": d5, "hPower": p, "z": z})
            })
            .collect();
        Value::Array(items)
    }

    /// Inverse of [`CohomologySeries::to_json`].
    pub fn from_json(space: Space, d5max: u32, v: &Value) -> Option<Self> {
        let mut out = CohomologySeries::new(space, d5max);
        for item in v.as_array()? {
            let sector: Sector = item.get("sector")?.as_str()?.parse().ok()?;
            let d5 = item.get("d5")?.as_u64()? as u32;
            let p = item.get("hPower")?.as_u64()? as u8;
            let mut zl = ZLaurent::zero();
            for t in item.get("z")?.as_array()? {
                let exp = t.get("exp")?.as_i64()?;
                let coeff = parse_rational(t.get("coeff")?.as_str()?)?;
                zl.add_term(exp, &coeff);
            }
            out.add_term(sector, d5, p, &zl);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, rat_int};

    fn one_z() -> ZLaurent {
        ZLaurent::one()
    }

    #[test]
    fn nilpotency_drops_high_h_powers() {
        let mut s = CohomologySeries::new(Space::W, 10);
        // H^4 vanishes on the identity sector (threefold)
        s.add_term(Sector::identity(), 0, 4, &one_z());
        assert!(s.is_zero());
        s.add_term(Sector::identity(), 0, 3, &one_z());
        assert!(!s.is_zero());
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let mut s = CohomologySeries::new(Space::W, 10);
        s.add_term(Sector::identity(), 5, 1, &ZLaurent::monomial(rat(1, 3), -2));
        let zero = CohomologySeries::new(Space::W, 10);
        assert_eq!(s.add(&zero), s);
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn expand_prefactor_of_constant_one() {
        // s = 1_e: components are t^p/p! on (e, H^p)
        let mut s = CohomologySeries::new(Space::W, 10);
        s.add_term(Sector::identity(), 0, 0, &one_z());
        let expanded = s.expand_prefactor();
        let h0 = &expanded[&(Sector::identity(), 0)];
        assert_eq!(h0.coeff(0, 0), rat_int(1));
        let h1 = &expanded[&(Sector::identity(), 1)];
        assert_eq!(h1.coeff(1, 0), rat_int(1));
        let h3 = &expanded[&(Sector::identity(), 3)];
        assert_eq!(h3.coeff(3, 0), rat(1, 6));
    }

    #[test]
    fn div_unit_round_trip() {
        let mut s = CohomologySeries::new(Space::W, 15);
        s.add_term(Sector::identity(), 0, 0, &one_z());
        s.add_term(Sector::identity(), 5, 0, &ZLaurent::monomial(rat_int(120), 0));
        let mut u = LogSeries::one(15);
        u.add_term(0, 5, &rat_int(120));
        let q = s.div_unit(&u);
        // (1 + 120 e^t)/(1 + 120 e^t) = 1 on the H^0 component
        assert_eq!(q.coeff(&Sector::identity(), 0, 0), ZLaurent::one());
        assert!(q.coeff(&Sector::identity(), 5, 0).is_zero());
        assert_eq!(q.coeff(&Sector::identity(), 10, 0), ZLaurent::zero());
    }

    #[test]
    fn json_round_trip() {
        let mut s = CohomologySeries::new(Space::W, 10);
        let g = Sector::new([0, 0, 0, 1, 4]).unwrap();
        s.add_term(g, 1, 1, &ZLaurent::monomial(rat(-7, 3), -4));
        s.add_term(Sector::identity(), 5, 0, &ZLaurent::monomial(rat_int(120), 0));
        let v = s.to_json();
        let back = CohomologySeries::from_json(Space::W, 10, &v).unwrap();
        assert_eq!(back, s);
    }
}
