//! Rigid, concentrated and lattice-linear flags, with witnesses, for an
//! ideal file or for every corpus ideal.
//!
//! cargo run --example classify -- examples/data/triangle_ring.ideal F2

use lcm_lattice::classify::classify_ideal;
use lcm_lattice::{corpus, FieldSpec, MonomialIdeal};

fn main() {
    let mut args = std::env::args().skip(1);
    let ideals: Vec<(String, MonomialIdeal)> = match args.next() {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable file");
            vec![(
                path,
                text.parse::<MonomialIdeal>()
                    .expect("an ideal file")
                    .minimalize_generators(),
            )]
        }
        None => corpus::all()
            .into_iter()
            .map(|(n, i)| (n.to_string(), i))
            .collect(),
    };
    let field: FieldSpec = args
        .next()
        .map_or(FieldSpec::Rationals, |f| f.parse().expect("a field name"));
    for (name, ideal) in ideals {
        let report =
            classify_ideal(&ideal, field).expect("classification succeeds on small ideals");
        println!("== {name}");
        println!("totals: {:?}", report.totals);
        println!("rigid: {}", report.rigid);
        println!("concentrated: {}", report.concentrated);
        println!("lattice-linear: {}", report.lattice_linear);
    }
}
