//! Computes the A-side I-series of a sector by the hypergeometric route
//! (ambient J-row, hypersurface twist, restriction) and independently by the
//! closed-form B-side route, then prints both leading blocks.
//!
//!     cargo run --example i_functions [-- SECTOR]

use mirror_quintic::amodel::ia;
use mirror_quintic::bmodel::ib;
use mirror_quintic::sectors::Sector;

fn main() {
    let sector: Sector = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "0,0,1,1,3".to_string())
        .parse()
        .expect("sector is five residues summing to 0 mod 5");
    let d5max = 10;

    let a = ia(&sector, d5max).expect("supported sector");
    let b = ib(&sector, d5max).expect("supported sector");

    println!("I-series of sector ({}) through degree {}:", sector, d5max / 5);
    for (&(g, d5, p), v) in a.iter() {
        println!("  [A] component 1_{{{}}}  d5={}  H^{}:  {}", g, d5, p, v);
    }
    println!();
    for (&(g, d5, p), v) in b.iter() {
        println!("  [B] component 1_{{{}}}  d5={}  H^{}:  {}", g, d5, p, v);
    }
    println!();
    println!("series agree: {}", a == b);
}
