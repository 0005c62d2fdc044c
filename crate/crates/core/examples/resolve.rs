//! Taylor complex, Gaussian minimalization and the exactness check, ending
//! with the JSON dump of the minimal resolution.

use lcm_lattice::resolution::{
    minimalize, minimalize_with, signature, taylor_complex, verify_resolution, PivotRule,
    ResolutionDump,
};
use lcm_lattice::{corpus, FieldSpec};

fn main() {
    let ideal = corpus::dispersed();
    let taylor = taylor_complex(&ideal, FieldSpec::Rationals).expect("five generators");
    println!(
        "Taylor ranks {:?}, minimal: {}",
        taylor.ranks(),
        taylor.is_minimal()
    );

    let minimal = minimalize(&taylor);
    println!("minimal ranks {:?}", minimal.ranks());
    print!("{}", minimal.betti_grid());
    let report = verify_resolution(&minimal, &ideal).expect("matching ideal");
    println!(
        "{} strands checked, ok: {}",
        report.strands_checked,
        report.is_ok()
    );

    // a different pivot order lands on the same combinatorial data
    let other = minimalize_with(&taylor, PivotRule::Seeded(7));
    println!(
        "seeded pivots give the same signature: {}",
        signature(&other) == signature(&minimal)
    );

    let m = corpus::m();
    let res = minimalize(&taylor_complex(&m, FieldSpec::Prime(3)).expect("three generators"));
    println!("{}", ResolutionDump::new(&res, m.vars()).to_json());
}
