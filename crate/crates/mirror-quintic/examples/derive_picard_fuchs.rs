//! Derives the Picard-Fuchs operator of each representative sector by exact
//! pole-order reduction of period symbols, and checks the result against the
//! closed forms.
//!
//!     cargo run --example derive_picard_fuchs

use mirror_quintic::bmodel::derive_pf;
use mirror_quintic::verify::{closed_form_operator, representative_sectors};

fn main() {
    for g in representative_sectors() {
        let pf = derive_pf(&g, 6).expect("derivation succeeds");
        let expect = closed_form_operator(&g).expect("representative shape");
        println!("sector ({})", g);
        println!("  order    : {}", pf.order);
        println!("  operator : {}", pf.operator_t);
        println!("  matches closed form: {}", pf.operator_t == expect);
        println!();
    }
}
