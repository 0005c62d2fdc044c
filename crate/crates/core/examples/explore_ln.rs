//! Enumerates L(n), groups it into Betti strata and runs the stratum checks.
//!
//! cargo run --release --example explore_ln -- 4

use std::time::Instant;

use lcm_lattice::classify::HomologyCache;
use lcm_lattice::explorer::{
    check_betti_monotonicity, enumerate_ln, stratify, verify_rigid_up_closure, DEFAULT_BUDGET,
};
use lcm_lattice::FieldSpec;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    let start = Instant::now();
    let found = enumerate_ln(n, DEFAULT_BUDGET).expect("n between 1 and 5");
    println!(
        "|L({n})| = {}{} ({:.2?})",
        found.keys.len(),
        if found.truncated {
            " (budget reached)"
        } else {
            ""
        },
        start.elapsed()
    );
    let cache = HomologyCache::new();
    let atlas = stratify(&found.keys, FieldSpec::Rationals, &cache).expect("small lattices");
    print!("{}", atlas.summary());
    let violations: usize = atlas
        .strata
        .values()
        .map(|s| verify_rigid_up_closure(s).violations.len())
        .sum();
    println!("rigid-up-closure violations: {violations}");
    if found.keys.len() <= 5000 {
        println!("{}", check_betti_monotonicity(&atlas));
    }
    println!("elapsed {:.2?}", start.elapsed());
}
