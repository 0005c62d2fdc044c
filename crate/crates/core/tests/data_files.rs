//! The shipped input files parse to the ideals and complex of `corpus`.

use std::path::PathBuf;

use lcm_lattice::lattice::{augmented_face_lattice, coordinatize, SimplicialComplexRep};
use lcm_lattice::{corpus, MonomialIdeal};

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn ideal_files_match_corpus() {
    for (name, ideal) in corpus::all() {
        let parsed: MonomialIdeal = read(&format!("{name}.ideal")).parse().unwrap();
        assert_eq!(parsed, ideal, "{name}");
        assert!(parsed.is_minimally_generated(), "{name}");
    }
}

#[test]
fn complex_file_matches_corpus() {
    let k = SimplicialComplexRep::parse(&read("rp2.complex")).unwrap();
    assert_eq!(k, corpus::rp2_complex());
    assert_eq!(
        coordinatize(&augmented_face_lattice(&k).unwrap()),
        corpus::rp2()
    );
}
