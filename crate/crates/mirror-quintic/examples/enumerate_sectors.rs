//! Enumerates the twisted sectors of the ambient quotient and of the
//! hypersurface orbifold, and prints the counting invariants.
//!
//!     cargo run --example enumerate_sectors

use std::collections::BTreeMap;

use mirror_quintic::sectors::{cr_basis, Sector, Space};

fn main() {
    let ambient = Sector::enumerate(Space::Y);
    let surface = Sector::enumerate(Space::W);
    println!("ambient sectors (>= 1 zero residue): {}", ambient.len());
    println!("hypersurface sectors (>= 2 zero residues): {}", surface.len());

    let basis = cr_basis(Space::W);
    println!("even-degree basis classes on the hypersurface: {}", basis.len());

    let age_one = Sector::age_one_w_sectors();
    println!("age-1 hypersurface sectors: {}", age_one.len());

    let mut by_type: BTreeMap<[u8; 5], usize> = BTreeMap::new();
    for g in &age_one {
        *by_type.entry(g.sorted_residues()).or_default() += 1;
    }
    println!("age-1 breakdown by residue type:");
    for (ty, count) in &by_type {
        let strs: Vec<String> = ty.iter().map(|r| r.to_string()).collect();
        println!("  ({})  x{}", strs.join(","), count);
    }

    let degree_two = basis
        .iter()
        .filter(|b| b.sector.age() + u32::from(b.h_power) == 1)
        .count();
    println!("degree-2 classes (h^{{1,1}}): {}", degree_two);
}
