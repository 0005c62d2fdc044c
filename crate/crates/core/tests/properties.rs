//! Randomized invariants across the crate.

use proptest::prelude::*;

use lcm_lattice::classify::betti_table;
use lcm_lattice::explorer::{leq_in_ln, up_covers, LnKey};
use lcm_lattice::lattice::{coordinatize, lcm_lattice};
use lcm_lattice::resolution::{minimalize, signature, taylor_complex, verify_resolution};
use lcm_lattice::{FieldSpec, FiniteAtomicLattice, Monomial, MonomialIdeal, Support};

/// Minimally generated ideals with at most `gens` generators in `vars`
/// variables and exponents at most 3.
fn ideals(gens: usize, vars: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1..=vars)
        .prop_flat_map(move |v| prop::collection::vec(prop::collection::vec(0u32..=3, v), 1..=gens))
        .prop_filter_map("needs a non-unit generator", |exps| {
            let v = exps[0].len();
            let names: Vec<String> = (1..=v).map(|i| format!("x{i}")).collect();
            let gens: Vec<Monomial> = exps
                .into_iter()
                .filter(|e| e.iter().any(|&x| x > 0))
                .map(Monomial::new)
                .collect();
            if gens.is_empty() {
                return None;
            }
            Some(
                MonomialIdeal::new(names, gens)
                    .ok()?
                    .minimalize_generators(),
            )
        })
}

/// Closure of a random family on `n` atoms under intersection, with the
/// bottom, atoms and top added.
fn lattices(n: usize) -> impl Strategy<Value = FiniteAtomicLattice> {
    prop::collection::vec(0u64..1 << n, 0..6).prop_map(move |masks| {
        let full = (1u64 << n) - 1;
        let mut family: Vec<u64> = masks;
        family.extend([0, full]);
        family.extend((0..n).map(|i| 1u64 << i));
        loop {
            let mut added = false;
            for a in family.clone() {
                for b in family.clone() {
                    if !family.contains(&(a & b)) {
                        family.push(a & b);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        FiniteAtomicLattice::from_family(n, family.into_iter().map(Support)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn both_betti_computations_agree(ideal in ideals(4, 3)) {
        let lcm = lcm_lattice(&ideal).unwrap();
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2)] {
            let table = betti_table(lcm.lattice(), field).unwrap();
            let res = minimalize(&taylor_complex(&ideal, field).unwrap());
            let ranks: Vec<u64> = res.ranks().into_iter().map(|r| r as u64).collect();
            prop_assert_eq!(ranks, table.totals());
            prop_assert!(res.is_minimal());
            prop_assert!(verify_resolution(&res, &ideal).unwrap().is_ok());
        }
    }

    #[test]
    fn generator_order_does_not_change_betti_totals(ideal in ideals(4, 3), rot in 0usize..4) {
        let mut gens = ideal.generators().to_vec();
        let k = rot % gens.len();
        gens.rotate_left(k);
        let rotated = MonomialIdeal::new(ideal.vars().to_vec(), gens).unwrap();
        let a = betti_table(lcm_lattice(&ideal).unwrap().lattice(), FieldSpec::Rationals).unwrap();
        let b = betti_table(lcm_lattice(&rotated).unwrap().lattice(), FieldSpec::Rationals).unwrap();
        prop_assert_eq!(a.totals(), b.totals());
    }

    #[test]
    fn ideal_files_round_trip(ideal in ideals(5, 4)) {
        let text = ideal.to_file_string();
        prop_assert_eq!(text.parse::<MonomialIdeal>().unwrap(), ideal);
    }

    #[test]
    fn coordinatization_realizes_the_lattice(l in lattices(4)) {
        let ideal = coordinatize(&l);
        let lcm = lcm_lattice(&ideal).unwrap();
        prop_assert_eq!(lcm.lattice(), &l);
    }

    #[test]
    fn joins_and_meets(l in lattices(5)) {
        for &a in l.elements() {
            for &b in l.elements() {
                prop_assert_eq!(l.meet(a, b).unwrap(), a.intersect(b));
                let j = l.join(a, b).unwrap();
                prop_assert!(a.is_subset(j) && b.is_subset(j));
                // least among upper bounds
                for &c in l.elements() {
                    if a.is_subset(c) && b.is_subset(c) {
                        prop_assert!(j.is_subset(c));
                    }
                }
            }
        }
    }

    #[test]
    fn keys_round_trip(l in lattices(5)) {
        let key = LnKey::from_lattice(&l);
        prop_assert_eq!(key.to_string().parse::<LnKey>().unwrap(), key.clone());
        prop_assert_eq!(key.to_lattice(), l);
    }

    #[test]
    fn betti_totals_grow_along_covers(l in lattices(4)) {
        let field = FieldSpec::Rationals;
        let below = betti_table(&l, field).unwrap().totals();
        for q in up_covers(&l) {
            prop_assert!(leq_in_ln(&l, &q).unwrap());
            let above = betti_table(&q, field).unwrap().totals();
            for i in 0..below.len().max(above.len()) {
                prop_assert!(below.get(i).unwrap_or(&0) <= above.get(i).unwrap_or(&0));
            }
        }
    }

    #[test]
    fn minimal_signature_is_stable_under_field_change_for_boolean_like(ideal in ideals(3, 3)) {
        // with at most 3 generators the lcm-lattice is a lattice on 3 atoms,
        // whose Betti numbers do not depend on the characteristic
        let q = minimalize(&taylor_complex(&ideal, FieldSpec::Rationals).unwrap());
        let f2 = minimalize(&taylor_complex(&ideal, FieldSpec::Prime(2)).unwrap());
        prop_assert_eq!(q.ranks(), f2.ranks());
        prop_assert_eq!(signature(&q).degrees, signature(&f2).degrees);
    }
}
