//! Checks the equivariant fixed-point recursion for the closed-form ambient
//! rows, with z kept symbolic and the torus weights specialized to exact
//! rationals.  Also shows a weight choice that hits a pole and must be
//! refused rather than silently divided through.
//!
//!     cargo run --example localization_recursion

use mirror_quintic::amodel::{check_recursion, AModelError, EquivariantContext};
use mirror_quintic::rings::rat_int;
use mirror_quintic::sectors::Sector;

fn main() {
    let c_max = 12;
    let b: i64 = 17;
    let ctx = EquivariantContext::new([0, 1, b, b * b, b * b * b].map(rat_int)).unwrap();
    for residues in [[0i64, 0, 0, 0, 0], [0, 0, 0, 2, 3], [0, 0, 1, 2, 2]] {
        let g = Sector::new(residues).unwrap();
        let ok = check_recursion(&g, &ctx, c_max).expect("weights are regular");
        println!(
            "recursion for ({}) with weights (0,1,{},{},{}), depth {}: {}",
            g, b, b * b, b * b * b, c_max,
            if ok { "holds" } else { "VIOLATED" }
        );
    }

    // arithmetic-progression weights land on a pole at this depth
    let singular = EquivariantContext::new([0, 1, 2, 3, 4].map(rat_int)).unwrap();
    match check_recursion(&Sector::identity(), &singular, c_max) {
        Err(AModelError::SingularWeights(msg)) => {
            println!("weights (0,1,2,3,4) at depth {}: refused ({})", c_max, msg);
        }
        other => println!("unexpected outcome for singular weights: {:?}", other),
    }
}
