//! Group and inertia-sector combinatorics.
//!
//! The group is G = {(r_0,...,r_4) in (Z/5)^5 : sum r_i = 0 mod 5}, acting on
//! the quintic threefold coordinatewise by fifth roots of unity.  Its elements
//! index the twisted sectors of the ambient orbifold Y (those with at least
//! one fixed coordinate, i.e. at least one r_i = 0) and of the hypersurface
//! orbifold W (at least two r_i = 0).  This module provides:
//!
//! - sector construction, inversion, ages and fixed-locus dimensions
//! - deterministic enumeration and the even-degree cohomology bases
//! - Poincare duality on W (pairing constant 25)
//! - degree-compatibility data: the fractional degree class d(h,g), the
//!   hypergeometric index set S(d,h), and its cardinality c(d,h)
//! - the virtual-dimension identity c(d,h) = m_d - dim(Y_h) + 1

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rings::{rat, rat_int, Rational};

/// The pairing constant of the orbifold Poincare pairing on W:
/// (1_g H^k, 1_{g^-1} H^{dim-k}) = 1/25.
pub const W_PAIRING_DENOM: i64 = 25;

/// Fixed-point basis normalization on the ambient Y side (appears only in
/// the equivariant localization rows, never in Poincare duality for W).
pub const Y_FIXED_POINT_DENOM: i64 = 125;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SectorError {
    #[error("residue sum {0} is not divisible by 5")]
    InvalidSector(i64),
    #[error("sectors {0} and {1} admit no common curve degrees")]
    IncompatiblePair(Sector, Sector),
}

/// Which orbifold a sector or basis is taken in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Space {
    /// The ambient quotient of P^4: sectors need one fixed coordinate.
    Y,
    /// The quintic hypersurface orbifold: sectors need two fixed coordinates.
    W,
}

impl Space {
    /// Minimum number of zero residues for a sector to appear in this space.
    pub fn min_zeros(self) -> u8 {
        match self {
            Space::Y => 1,
            Space::W => 2,
        }
    }
}

/// A group element (r_0,...,r_4) with residues in 0..4 summing to 0 mod 5.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sector {
    residues: [u8; 5],
}

impl Sector {
    /// Builds a sector from arbitrary integers, reducing mod 5.
    pub fn new(residues: [i64; 5]) -> Result<Self, SectorError> {
        let reduced = residues.map(|r| r.rem_euclid(5) as u8);
        let sum: i64 = reduced.iter().map(|&r| r as i64).sum();
        if sum % 5 != 0 {
            return Err(SectorError::InvalidSector(sum));
        }
        Ok(Sector { residues: reduced })
    }

    pub fn identity() -> Self {
        Sector { residues: [0; 5] }
    }

    pub fn residues(&self) -> [u8; 5] {
        self.residues
    }

    pub fn residue(&self, i: usize) -> u8 {
        self.residues[i]
    }

    pub fn is_identity(&self) -> bool {
        self.residues == [0; 5]
    }

    /// Age = sum of residues / 5; an integer for this group.
    pub fn age(&self) -> u32 {
        let sum: u32 = self.residues.iter().map(|&r| r as u32).sum();
        debug_assert_eq!(sum % 5, 0);
        sum / 5
    }

    pub fn zero_count(&self) -> u8 {
        self.residues.iter().filter(|&&r| r == 0).count() as u8
    }

    /// Dimension of the fixed locus in Y; `None` when the sector is not in Y.
    pub fn dim_y(&self) -> Option<u8> {
        self.zero_count().checked_sub(1)
    }

    /// Dimension of the fixed locus in W; `None` when the sector is not in W.
    pub fn dim_w(&self) -> Option<u8> {
        self.zero_count().checked_sub(2)
    }

    pub fn in_space(&self, space: Space) -> bool {
        self.zero_count() >= space.min_zeros()
    }

    /// Fixed-locus dimension in the given space, if the sector lies in it.
    pub fn dim_in(&self, space: Space) -> Option<u8> {
        match space {
            Space::Y => self.dim_y(),
            Space::W => self.dim_w(),
        }
    }

    /// Entrywise negation mod 5.
    pub fn inverse(&self) -> Sector {
        Sector {
            residues: self.residues.map(|r| (5 - r) % 5),
        }
    }

    /// Adds the constant diagonal tuple (c,c,c,c,c).
    pub fn shift_diagonal(&self, c: u8) -> Sector {
        Sector {
            residues: self.residues.map(|r| (r + c) % 5),
        }
    }

    /// Componentwise sum mod 5 (the group law).
    pub fn compose(&self, other: &Sector) -> Sector {
        let mut residues = [0u8; 5];
        for i in 0..5 {
            residues[i] = (self.residues[i] + other.residues[i]) % 5;
        }
        Sector { residues }
    }

    /// Lexicographically least representative of the class of `g` modulo
    /// the diagonal subgroup generated by (1,1,1,1,1).
    pub fn class_rep(&self) -> Sector {
        (0..5).map(|c| self.shift_diagonal(c)).min().unwrap()
    }

    /// Residues sorted ascending — the permutation type used to classify
    /// age-1 sectors into the four operator shapes.
    pub fn sorted_residues(&self) -> [u8; 5] {
        let mut r = self.residues;
        r.sort_unstable();
        r
    }

    /// Applies a coordinate permutation: entry `i` of the result is the
    /// residue at `perm[i]`.
    pub fn permuted(&self, perm: [usize; 5]) -> Sector {
        let mut residues = [0u8; 5];
        for i in 0..5 {
            residues[i] = self.residues[perm[i]];
        }
        Sector { residues }
    }

    /// All sectors of the given space, in lexicographic order.
    pub fn enumerate(space: Space) -> Vec<Sector> {
        let mut out = Vec::new();
        for code in 0..5u32.pow(5) {
            let mut residues = [0u8; 5];
            let mut rem = code;
            for i in (0..5).rev() {
                residues[i] = (rem % 5) as u8;
                rem /= 5;
            }
            let sum: u32 = residues.iter().map(|&r| r as u32).sum();
            if sum % 5 != 0 {
                continue;
            }
            let s = Sector { residues };
            if s.in_space(space) {
                out.push(s);
            }
        }
        out
    }

    /// The age-1 sectors of W, in lexicographic order.
    pub fn age_one_w_sectors() -> Vec<Sector> {
        Sector::enumerate(Space::W)
            .into_iter()
            .filter(|g| g.age() == 1)
            .collect()
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for Sector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(format!("expected 5 comma-separated residues, got {}", parts.len()));
        }
        let mut residues = [0i64; 5];
        for (i, p) in parts.iter().enumerate() {
            residues[i] = p
                .trim()
                .parse::<i64>()
                .map_err(|e| format!("bad residue {:?}: {}", p, e))?;
        }
        Sector::new(residues).map_err(|e| e.to_string())
    }
}

/// A Chen-Ruan even-degree basis class `1_g H^p`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct BasisElement {
    pub sector: Sector,
    pub h_power: u8,
}

/// The Chen-Ruan even-degree basis of the given space: for each sector g,
/// the classes 1_g H^p with 0 <= p <= dim of the fixed locus.
pub fn cr_basis(space: Space) -> Vec<BasisElement> {
    let mut out = Vec::new();
    for g in Sector::enumerate(space) {
        let dim = g.dim_in(space).expect("enumerated sector lies in space");
        for p in 0..=dim {
            out.push(BasisElement {
                sector: g,
                h_power: p,
            });
        }
    }
    out
}

/// Poincare dual of a W-basis class: `(1_g H^k)^dual = 25 * 1_{g^-1} H^{dim-k}`,
/// returned as the dual basis element together with the scalar 25.
pub fn poincare_dual_w(b: &BasisElement) -> (BasisElement, Rational) {
    let dim = b.sector.dim_w().expect("basis element lies in W");
    assert!(b.h_power <= dim);
    (
        BasisElement {
            sector: b.sector.inverse(),
            h_power: dim - b.h_power,
        },
        rat_int(W_PAIRING_DENOM),
    )
}

/// The fractional degree class d(h,g) = <(r_i(h)+r_i(g))/5>, defined (and
/// i-independent) exactly when h and g^-1 agree modulo the diagonal class.
pub fn degree_compatible(h: &Sector, g: &Sector) -> Option<Rational> {
    if h.class_rep() != g.inverse().class_rep() {
        return None;
    }
    let v = ((h.residue(0) + g.residue(0)) % 5) as i64;
    debug_assert!((0..5).all(|i| (h.residue(i) + g.residue(i)) % 5 == v as u8));
    Some(rat(v, 5))
}

/// The index set S(d,h) and its cardinality c(d,h) for a degree d = d5/5.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeData {
    /// Pairs (b5, k): b = b5/5 satisfies 0 < b <= d and <b> = r_k(h)/5.
    pub pairs: Vec<(u32, usize)>,
}

impl DegreeData {
    /// c(d,h) = |S(d,h)|.
    pub fn c_count(&self) -> usize {
        self.pairs.len()
    }
}

/// Enumerates S(d,h) = {(b,k) : 0 < b <= d, <b> = r_k(h)/5} with d = d5/5.
/// Pairs are listed with b increasing, then k.
pub fn s_set(d5: u32, h: &Sector) -> DegreeData {
    let mut pairs = Vec::new();
    for b5 in 1..=d5 {
        for k in 0..5 {
            if b5 % 5 == h.residue(k) as u32 {
                pairs.push((b5, k));
            }
        }
    }
    DegreeData { pairs }
}

/// Checks the virtual-dimension identity for a compatible pair at degree
/// d = d5/5: returns (m_d, ok) with m_d = 5d + 3 - age(h) - age(g) and
/// ok iff c(d,h) = m_d - dim(Y_h) + 1.
pub fn virtual_dim_check(h: &Sector, g: &Sector, d5: u32) -> Result<(i64, bool), SectorError> {
    let dhg = degree_compatible(h, g).ok_or(SectorError::IncompatiblePair(*h, *g))?;
    debug_assert_eq!(crate::rings::frac_part(&rat(d5 as i64, 5)), dhg);
    let m_d = d5 as i64 + 3 - h.age() as i64 - g.age() as i64;
    let dim_y = h.dim_y().expect("h has a fixed coordinate") as i64;
    let c = s_set(d5, h).c_count() as i64;
    Ok((m_d, c == m_d - dim_y + 1))
}
