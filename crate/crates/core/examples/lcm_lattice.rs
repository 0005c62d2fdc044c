//! Builds the lcm-lattice of an ideal, prints its elements with their
//! monomial labels, and writes the Hasse diagram as Graphviz source.
//!
//! cargo run --example lcm_lattice -- examples/data/N.ideal > n.dot

use lcm_lattice::lattice::{lcm_lattice, to_dot};
use lcm_lattice::{corpus, MonomialIdeal};

fn main() {
    let ideal: MonomialIdeal = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path)
            .expect("readable file")
            .parse()
            .expect("an ideal file"),
        None => corpus::n(),
    };
    let lcm = lcm_lattice(&ideal.minimalize_generators()).expect("a proper monomial ideal");
    let lattice = lcm.lattice();
    eprintln!("{} atoms, {} elements", lattice.n(), lattice.len());
    for &s in lattice.elements() {
        let ups: Vec<String> = lattice
            .upper_covers(s)
            .expect("an element")
            .iter()
            .map(|u| u.to_string())
            .collect();
        eprintln!(
            "  {s:<10} {:<12} covered by {}",
            lcm.format_label(s),
            ups.join(" ")
        );
    }
    print!("{}", to_dot(lattice, Some(&lcm)));
}
