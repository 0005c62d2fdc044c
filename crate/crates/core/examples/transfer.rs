//! Moves a minimal resolution down a cover in L(4) along the closure map,
//! and searches below a rigid lattice for a concentrated one with the same
//! Betti numbers.

use lcm_lattice::classify::HomologyCache;
use lcm_lattice::explorer::{
    enumerate_ln, find_concentrated_below, minimal_resolution, stratify, transfer_resolution,
};
use lcm_lattice::lattice::lcm_lattice;
use lcm_lattice::resolution::signature;
use lcm_lattice::{corpus, FieldSpec};

fn main() {
    let field = FieldSpec::Rationals;
    let cache = HomologyCache::new();
    let keys = enumerate_ln(4, 10_000).expect("n = 4").keys;
    let atlas = stratify(&keys, field, &cache).expect("small lattices");

    let (stratum, lo, up) = atlas
        .strata
        .values()
        .find_map(|s| {
            s.edges
                .iter()
                .find(|&&(lo, _)| s.rigid[lo])
                .map(|&(lo, up)| (s, lo, up))
        })
        .expect("some stratum has a rigid cover");
    let (p, q) = (
        stratum.members[lo].to_lattice(),
        stratum.members[up].to_lattice(),
    );
    println!(
        "stratum {:?}: P = {} < Q = {}",
        stratum.betti, stratum.members[lo], stratum.members[up]
    );
    let moved = transfer_resolution(&q, &p, field, &cache).expect("the hypotheses hold");
    let (_, direct) = minimal_resolution(&p, field).expect("small lattice");
    println!(
        "transferred ranks {:?}, direct ranks {:?}",
        moved.ranks(),
        direct.ranks()
    );
    println!(
        "same signature: {}",
        signature(&moved) == signature(&direct)
    );

    // the rigid, dispersed ideal has nothing concentrated below it
    let lcm = lcm_lattice(&corpus::dispersed()).expect("minimal ideal");
    let below = find_concentrated_below(lcm.lattice(), field, &cache).expect("a rigid lattice");
    println!(
        "concentrated lattice below the dispersed ideal: {:?}",
        below.map(|l| l.len())
    );
}
