//! Multigraded Betti numbers from the homology of open intervals in the
//! lcm-lattice, for each corpus ideal, and the characteristic dependence of
//! the projective plane ideal.

use lcm_lattice::classify::betti_table;
use lcm_lattice::lattice::lcm_lattice;
use lcm_lattice::resolution::format_betti_grid;
use lcm_lattice::{corpus, FieldSpec};

fn main() {
    for (name, ideal) in corpus::all() {
        let lcm = lcm_lattice(&ideal).expect("corpus ideals are minimal");
        let table = betti_table(lcm.lattice(), FieldSpec::Rationals).expect("small lattices");
        println!("{name} = {ideal}");
        print!("{}", format_betti_grid(&table.graded(&lcm)));
        println!();
    }

    // a torsion class in the homology of the projective plane shows up
    // only in characteristic 2
    let lcm = lcm_lattice(&corpus::rp2()).expect("a proper ideal");
    for field in [
        FieldSpec::Rationals,
        FieldSpec::Prime(2),
        FieldSpec::Prime(3),
    ] {
        let table = betti_table(lcm.lattice(), field).expect("small lattice");
        let top = lcm.lattice().top();
        let at_top: Vec<u64> = (0..table.totals().len())
            .map(|i| table.get(i, top))
            .collect();
        println!(
            "rp2 over {field}: totals {:?}, at the top element {at_top:?}",
            table.totals()
        );
    }
}
