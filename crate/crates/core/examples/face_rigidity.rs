//! Augmented face lattices of simplicial complexes: acyclic complexes give
//! rigid lattices, and the projective plane is acyclic exactly away from
//! characteristic 2.

use lcm_lattice::classify::HomologyCache;
use lcm_lattice::explorer::{check_face_rigidity, face_lattice_rigidity_check};
use lcm_lattice::{corpus, FieldSpec};

fn main() {
    let cache = HomologyCache::new();
    let rp2 = corpus::rp2_complex();
    for field in [
        FieldSpec::Rationals,
        FieldSpec::Prime(2),
        FieldSpec::Prime(3),
    ] {
        let r = face_lattice_rigidity_check(&rp2, field, &cache).expect("rp2 has a face lattice");
        println!(
            "rp2 over {field}: reduced homology {:?}, acyclic {}, rigid {}",
            r.homology, r.acyclic, r.rigid
        );
    }
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let report =
        check_face_rigidity(seed, 50, 6, FieldSpec::Rationals, &cache).expect("random complexes");
    println!("{report}");
    for note in &report.notes {
        println!("  {note}");
    }
}
