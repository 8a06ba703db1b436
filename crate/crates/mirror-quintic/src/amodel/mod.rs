//! A-model series: ambient J-series, the hypersurface twist, I-series,
//! mirror-map data, and normalized J-series of the quintic orbifold.
//!
//! All series are truncated at a fifth-integer degree bound `d5max = 5*dmax`
//! and carry exact Laurent-polynomial z-coefficients.  The overall prefactor
//! `e^{tH/z}` stays symbolic; see `CohomologySeries::expand_prefactor`.

mod recursion;

pub use recursion::{
    all_rows, check_recursion, check_recursion_with_rows, equivariant_y_row, fixed_point_sector,
    EquivariantContext, EquivariantYRow,
};

use std::collections::BTreeMap;

use num::traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::rings::{
    format_rational, parse_rational, rat, CohomologySeries, LogSeries, Rational, ZLaurent,
};
use crate::sectors::{s_set, Sector, Space};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AModelError {
    #[error("sector {0} has no fixed coordinate and is not a sector of the ambient orbifold")]
    EmptySector(Sector),
    #[error("sector {0} is outside the implemented range (age <= 1 with >= 2 zero residues)")]
    UnsupportedSector(Sector),
    #[error("coordinate {0} is not a fixed point of sector {1}")]
    BadFixedPoint(usize, Sector),
    #[error("equivariant weights hit a pole: {0}")]
    SingularWeights(String),
}

/// H-graded coefficient block: entry `j` is the z-Laurent coefficient of H^j.
pub(crate) type HPoly = Vec<ZLaurent>;

/// Expansion of `1/(H + b z)` with H nilpotent past `dim`:
/// `sum_{j<=dim} (-1)^j b^{-j-1} H^j z^{-j-1}`.
pub(crate) fn invert_linear_factor(b: &Rational, dim: usize) -> HPoly {
    let mut out = Vec::with_capacity(dim + 1);
    let mut coeff = b.recip();
    let mut sign = Rational::one();
    for j in 0..=dim {
        out.push(ZLaurent::monomial(&sign * &coeff, -(j as i64) - 1));
        coeff /= b;
        sign = -sign;
    }
    out
}

pub(crate) fn h_mul(a: &HPoly, b: &HPoly, dim: usize) -> HPoly {
    let mut out = vec![ZLaurent::zero(); dim + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j <= dim {
                out[i + j] = out[i + j].add(&ai.mul(bj));
            }
        }
    }
    out
}

pub(crate) fn h_one(dim: usize) -> HPoly {
    let mut out = vec![ZLaurent::zero(); dim + 1];
    out[0] = ZLaurent::one();
    out
}

/// `1 / prod_{(b5,k) in pairs} (H + (b5/5) z)` truncated past H^dim.
pub(crate) fn invert_factor_product(pairs: &[(u32, usize)], dim: usize) -> HPoly {
    let mut acc = h_one(dim);
    for &(b5, _) in pairs {
        let b = rat(b5 as i64, 5);
        acc = h_mul(&acc, &invert_linear_factor(&b, dim), dim);
    }
    acc
}

/// The hypersurface modification factor `M_d = prod_{m=1}^{5d} (5H + m z)`
/// expanded in H-powers up to `dim`.
pub(crate) fn modification_factor(d5: u32, dim: usize) -> HPoly {
    let mut acc = h_one(dim);
    for m in 1..=d5 {
        let mut factor = vec![ZLaurent::zero(); dim + 1];
        factor[0] = ZLaurent::monomial(Rational::from_integer(m.into()), 1);
        if dim >= 1 {
            factor[1] = ZLaurent::monomial(Rational::from_integer(5.into()), 0);
        }
        acc = h_mul(&acc, &factor, dim);
    }
    acc
}

/// The ambient small J-series row of sector `g`:
/// `sum_h sum_d e^{dt} 1_{h^-1} / prod_{(b,k) in S(d,h)} (H + b z)`,
/// summed over presentations h of the class of g^-1 that index ambient
/// sectors, with degrees in the class d(h,g).
pub fn jy(g: &Sector, d5max: u32) -> Result<CohomologySeries, AModelError> {
    if g.zero_count() == 0 {
        return Err(AModelError::EmptySector(*g));
    }
    let mut out = CohomologySeries::new(Space::Y, d5max);
    for c in 0..5u8 {
        let h = g.inverse().shift_diagonal(c);
        if h.zero_count() == 0 {
            continue;
        }
        let sector = h.inverse();
        let dim = sector.dim_y().expect("sector has a fixed coordinate") as usize;
        let mut d5 = c as u32;
        while d5 <= d5max {
            if !(d5 == 0 && c != 0) {
                let pairs = s_set(d5, &h).pairs;
                let block = invert_factor_product(&pairs, dim);
                for (j, v) in block.iter().enumerate() {
                    out.add_term(sector, d5, j as u8, v);
                }
            }
            d5 += 5;
        }
    }
    Ok(out)
}

/// Multiplies each degree-d block by the modification factor `M_d`.
pub fn twist(s: &CohomologySeries) -> CohomologySeries {
    assert!(!s.prefactor_applied);
    let mut out = CohomologySeries::new(s.space, s.d5max);
    let mut cache: BTreeMap<(u32, usize), HPoly> = BTreeMap::new();
    for (&(g, d5, p), v) in s.iter() {
        let dim = g.dim_in(s.space).expect("sector in space") as usize;
        let m = cache
            .entry((d5, dim))
            .or_insert_with(|| modification_factor(d5, dim));
        for (q, mq) in m.iter().enumerate() {
            if p as usize + q <= dim {
                out.add_term(g, d5, p + q as u8, &v.mul(mq));
            }
        }
    }
    out
}

/// Restriction to the hypersurface: drops sectors without two fixed
/// coordinates and truncates H-powers to the hypersurface dimension.
pub fn pullback_to_w(s: &CohomologySeries) -> CohomologySeries {
    assert_eq!(s.space, Space::Y);
    let mut out = CohomologySeries::new(Space::W, s.d5max);
    out.prefactor_applied = s.prefactor_applied;
    for (&(g, d5, p), v) in s.iter() {
        if g.zero_count() >= 2 {
            // add_term enforces p <= dim_w
            out.add_term(g, d5, p, v);
        }
    }
    out
}

/// True for the sectors whose I-series the engine computes: the identity
/// and the age-1 sectors with at least two zero residues.
pub fn is_supported_sector(g: &Sector) -> bool {
    g.is_identity() || (g.age() == 1 && g.zero_count() >= 2)
}

/// The A-side I-series of sector `g`: twist of the ambient J-row restricted
/// to the hypersurface.
pub fn ia(g: &Sector, d5max: u32) -> Result<CohomologySeries, AModelError> {
    if !is_supported_sector(g) {
        return Err(AModelError::UnsupportedSector(*g));
    }
    Ok(pullback_to_w(&twist(&jy(g, d5max)?)))
}

/// Scalar series extracted from the I-functions: the normalizations F0 and
/// G_g, the H/z-coefficient G0 = t F0 + (pure series), and the mirror map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MirrorData {
    pub d5max: u32,
    /// H^0 z^0 component of the identity I-series; unit series, a = 0.
    pub f0: LogSeries,
    /// Full coefficient of H/z after prefactor expansion: t*F0 + remainder.
    pub g0: LogSeries,
    /// z^0 coefficient of the 1_g-component of the sector I-series.
    pub gg: BTreeMap<Sector, LogSeries>,
    /// tau(t) - t = G0/F0 - t: the mirror map minus the identity.
    pub tau: LogSeries,
}

/// Extracts F0, G0, all G_g, and the mirror map from the I-series.
pub fn extract_mirror_data(d5max: u32) -> MirrorData {
    let e = Sector::identity();
    let iae = ia(&e, d5max).expect("identity sector is supported");
    let mut f0 = LogSeries::zero(d5max);
    let mut g0_tilde = LogSeries::zero(d5max);
    for d5 in (0..=d5max).step_by(5) {
        f0.add_term(0, d5, &iae.coeff(&e, d5, 0).coeff(0));
        g0_tilde.add_term(0, d5, &iae.coeff(&e, d5, 1).coeff(-1));
    }
    let tau = g0_tilde.mul(&f0.invert_unit());
    let g0 = LogSeries::t(d5max).mul(&f0).add(&g0_tilde);
    let mut gg = BTreeMap::new();
    for g in Sector::age_one_w_sectors() {
        let iag = ia(&g, d5max).expect("age-1 sector is supported");
        let mut hg = LogSeries::zero(d5max);
        for d5 in 0..=d5max {
            hg.add_term(0, d5, &iag.coeff(&g, d5, 0).coeff(0));
        }
        gg.insert(g, hg);
    }
    MirrorData {
        d5max,
        f0,
        g0,
        gg,
        tau,
    }
}

impl MirrorData {
    /// The normalization series H_g: F0 for the identity, G_g otherwise.
    pub fn normalization(&self, g: &Sector) -> Option<&LogSeries> {
        if g.is_identity() {
            Some(&self.f0)
        } else {
            self.gg.get(g)
        }
    }

    /// JSON encoding {F0, G0, Gg: {sector: ...}, tau}, each series as
    /// [{a, d5, coeff}].
    pub fn to_json(&self) -> Value {
        let enc = |s: &LogSeries| -> Value {
            let items: Vec<Value> = s
                .iter()
                .map(|(&(a, d5), c)| json!({"a": a, "d5": d5, "coeff": format_rational(c)}))
                .collect();
            Value::Array(items)
        };
        let gg: serde_json::Map<String, Value> = self
            .gg
            .iter()
            .map(|(g, s)| (g.to_string(), enc(s)))
            .collect();
        json!({
            "F0": enc(&self.f0),
            "G0": enc(&self.g0),
            "Gg": Value::Object(gg),
            "tau": enc(&self.tau),
        })
    }

    pub fn from_json(d5max: u32, v: &Value) -> Option<Self> {
        let dec = |v: &Value| -> Option<LogSeries> {
            let mut s = LogSeries::zero(d5max);
            for item in v.as_array()? {
                let a = item.get("a")?.as_u64()? as u32;
                let d5 = item.get("d5")?.as_u64()? as u32;
                let c = parse_rational(item.get("coeff")?.as_str()?)?;
                s.add_term(a, d5, &c);
            }
            Some(s)
        };
        let mut gg = BTreeMap::new();
        for (k, s) in v.get("Gg")?.as_object()? {
            gg.insert(k.parse::<Sector>().ok()?, dec(s)?);
        }
        Some(MirrorData {
            d5max,
            f0: dec(v.get("F0")?)?,
            g0: dec(v.get("G0")?)?,
            gg,
            tau: dec(v.get("tau")?)?,
        })
    }
}

/// The normalized J-series `J^W_g(tau(t), z) = I^A_g(t,z)/H_g(t)`, returned
/// in the t-coordinate (no mirror-map substitution).
pub fn jw(g: &Sector, d5max: u32) -> Result<CohomologySeries, AModelError> {
    let iag = ia(g, d5max)?;
    let m = extract_mirror_data(d5max);
    let h = m
        .normalization(g)
        .expect("supported sectors have a normalization");
    Ok(iag.div_unit(h))
}

/// Substitutes a unit reparametrization into a scalar series: the term
/// `c t^a e^{(n/5) t}` becomes `c * var_image^a * (x u)^n` where `x` is the
/// new exponential variable and `u` a unit series in `x`.
fn substitute(s: &LogSeries, u: &LogSeries, var_image: &LogSeries) -> LogSeries {
    let d5max = s.d5max().min(u.d5max());
    let mut out = LogSeries::zero(d5max);
    // cache powers of u and var_image as needed
    let mut u_pows: BTreeMap<u32, LogSeries> = BTreeMap::new();
    let mut v_pows: BTreeMap<u32, LogSeries> = BTreeMap::new();
    for (&(a, n), c) in s.iter() {
        let un = u_pows.entry(n).or_insert_with(|| u.pow(n)).shift_d5(n);
        let va = v_pows.entry(a).or_insert_with(|| var_image.pow(a));
        let term = un.mul(va).scale(c);
        out = out.add(&term);
    }
    out
}

/// Re-expands a t-series in the mirror coordinate tau, where
/// `tau = t + m.tau(e^{t/5})`.  Solves `e^{t/5} = e^{tau/5} * U(e^{tau/5})`
/// by fixed-point iteration on `U = exp(-tau_series(x U)/5)`.
pub fn invert_mirror_map(m: &MirrorData, s: &LogSeries) -> LogSeries {
    let d5max = m.d5max.min(s.d5max());
    let f = m.tau.truncated(d5max);
    let mut u = LogSeries::one(d5max);
    for _ in 0..=d5max {
        let fu = substitute(&f, &u, &LogSeries::t(d5max));
        let next = fu.scale(&rat(-1, 5)).exp();
        if next == u {
            break;
        }
        u = next;
    }
    // t = tau - tau_series evaluated at e^{t/5} = x U
    let g_in_tau = substitute(&f, &u, &LogSeries::t(d5max));
    let var_image = LogSeries::t(d5max).sub(&g_in_tau);
    substitute(s, &u, &var_image)
}

/// Forward direction of the coordinate change: re-expands a tau-series in t
/// via `e^{tau/5} = e^{t/5} exp(tau_series(e^{t/5})/5)` and
/// `tau = t + tau_series`.
pub fn forward_substitute(m: &MirrorData, s: &LogSeries) -> LogSeries {
    let d5max = m.d5max.min(s.d5max());
    let f = m.tau.truncated(d5max);
    let v = f.scale(&rat(1, 5)).exp();
    let var_image = LogSeries::t(d5max).add(&f);
    substitute(s, &v, &var_image)
}
