//! Extracts the mirror-map data from the identity I-series and demonstrates
//! the coordinate change and its inverse.
//!
//!     cargo run --example mirror_map

use mirror_quintic::amodel::{extract_mirror_data, forward_substitute, invert_mirror_map};
use mirror_quintic::rings::{rat_int, LogSeries};

fn main() {
    let d5max = 25;
    let data = extract_mirror_data(d5max);

    println!("F0      = {}", data.f0);
    println!("tau - t = {}", data.tau);
    println!();
    println!("leading mirror-map coefficients:");
    println!("  F0:  e^t -> {},  e^2t -> {}", data.f0.coeff(0, 5), data.f0.coeff(0, 10));
    println!("  tau: e^t -> {}", data.tau.coeff(0, 5));
    println!();

    // round trip a sample series through the coordinate change
    let mut sample = LogSeries::zero(d5max);
    sample.add_term(0, 5, &rat_int(1));
    let in_t = forward_substitute(&data, &sample);
    let back = invert_mirror_map(&data, &in_t);
    println!("e^tau expressed in t: {}", in_t);
    println!("round trip exact: {}", back == sample);
}
