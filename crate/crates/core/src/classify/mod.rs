//! Multigraded Betti numbers from lattice homology, and the predicates built
//! on them: rigidity, concentration, lattice-linearity, the Betti subposet.

mod report;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

pub use report::{classify_ideal, BettiEntry, ClassificationReport, Flag};

use crate::field::FieldSpec;
use crate::homology::{poset_homology, HomologyError, ReducedHomologyDims};
use crate::lattice::{lcm_lattice, FiniteAtomicLattice, LatticeError, LcmLattice, Poset, Support};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::resolution::{lattice_linear_support, minimalize, taylor_complex, ResolutionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

/// Reduced homology of open intervals, keyed by field and element set.
/// Two intervals with the same supports are the same poset, so entries are
/// shared across lattices.
#[derive(Debug, Default)]
pub struct HomologyCache {
    map: Mutex<HashMap<(FieldSpec, Vec<Support>), ReducedHomologyDims>>,
}

impl HomologyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn homology(
        &self,
        poset: &Poset,
        field: FieldSpec,
    ) -> Result<ReducedHomologyDims, HomologyError> {
        let key = (field, poset.elements().to_vec());
        if let Some(h) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(h.clone());
        }
        let h = poset_homology(poset, field)?;
        self.map.lock().expect("cache lock").insert(key, h.clone());
        Ok(h)
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Nonzero multigraded Betti numbers `β_{i,σ}` of a lattice over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    lattice: FiniteAtomicLattice,
    field: FieldSpec,
    entries: BTreeMap<(usize, Support), u64>,
}

/// `β_{i,σ} = dim H̃_{i-2}` of the open interval below `σ`, for `σ` above
/// the bottom; the bottom contributes only `β_{0} = 1`.
pub fn betti_table(
    lattice: &FiniteAtomicLattice,
    field: FieldSpec,
) -> Result<BettiTable, ClassifyError> {
    betti_table_cached(lattice, field, &HomologyCache::new())
}

pub fn betti_table_cached(
    lattice: &FiniteAtomicLattice,
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<BettiTable, ClassifyError> {
    let per_element: Vec<Vec<((usize, Support), u64)>> = lattice
        .elements()
        .par_iter()
        .filter(|s| !s.is_empty())
        .map(|&s| {
            let h = cache.homology(&lattice.open_interval(s)?, field)?;
            Ok(h.nonzero()
                .map(|(j, d)| (((j + 2) as usize, s), d))
                .collect())
        })
        .collect::<Result<_, ClassifyError>>()?;
    let mut entries: BTreeMap<(usize, Support), u64> = per_element.into_iter().flatten().collect();
    entries.insert((0, Support::EMPTY), 1);
    Ok(BettiTable {
        lattice: lattice.clone(),
        field,
        entries,
    })
}

impl BettiTable {
    pub fn lattice(&self) -> &FiniteAtomicLattice {
        &self.lattice
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, s: Support) -> u64 {
        self.entries.get(&(i, s)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((i, σ), β)` ordered by degree, then element.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, Support), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Total Betti numbers `(β_0, ..., β_t)`.
    pub fn totals(&self) -> Vec<u64> {
        let len = self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(1);
        let mut out = vec![0; len];
        for (&(i, _), &v) in &self.entries {
            out[i] += v;
        }
        out
    }

    /// Elements with `β_{i,σ} != 0`, in canonical order.
    pub fn betti_elements(&self, i: usize) -> Vec<Support> {
        self.entries
            .keys()
            .filter(|&&(j, _)| j == i)
            .map(|&(_, s)| s)
            .collect()
    }

    /// Elements with some nonzero Betti number (the bottom included).
    pub fn contributing(&self) -> BTreeSet<Support> {
        self.entries.keys().map(|&(_, s)| s).collect()
    }

    /// `β_{i,σ}` summed over all `i` with sign `(-1)^i`.
    pub fn alternating_sum(&self, s: Support) -> i64 {
        self.entries
            .iter()
            .filter(|(&(_, t), _)| t == s)
            .map(|(&(i, _), &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    /// Graded counts `(i, total degree of the label) -> Σ β`.
    pub fn graded(&self, labels: &LcmLattice) -> BTreeMap<(usize, u64), usize> {
        let mut out = BTreeMap::new();
        for (&(i, s), &v) in &self.entries {
            let degree = labels.label(s).map_or(0, Monomial::total_degree);
            *out.entry((i, degree)).or_insert(0) += v as usize;
        }
        out
    }
}

/// Which rigidity condition fails, with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidityViolation {
    /// `β_{degree, element} = value > 1`.
    R1 {
        degree: usize,
        element: Support,
        value: u64,
    },
    /// Two Betti elements of the same degree with `lower < upper`.
    R2 {
        degree: usize,
        lower: Support,
        upper: Support,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityVerdict {
    pub rigid: bool,
    pub violation: Option<RigidityViolation>,
}

/// Every `β_{i,σ}` is 0 or 1, and in each degree the Betti elements are
/// pairwise incomparable.
pub fn is_rigid(table: &BettiTable) -> RigidityVerdict {
    let violation = table
        .entries()
        .find(|&(_, v)| v > 1)
        .map(|((degree, element), value)| RigidityViolation::R1 {
            degree,
            element,
            value,
        })
        .or_else(|| {
            let top = table.totals().len();
            (0..top).find_map(|i| {
                let els = table.betti_elements(i);
                els.iter().enumerate().find_map(|(k, &lower)| {
                    els[k + 1..]
                        .iter()
                        .find(|&&upper| lower.is_proper_subset(upper))
                        .map(|&upper| RigidityViolation::R2 {
                            degree: i,
                            lower,
                            upper,
                        })
                })
            })
        });
    RigidityVerdict {
        rigid: violation.is_none(),
        violation,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcentrationVerdict {
    pub concentrated: bool,
    /// A non-contributing element and a contributing one that shows the
    /// failure.
    pub witness: Option<(Support, Support)>,
}

/// Every element below a contributing element contributes: the elements
/// with Betti numbers form a down-set. `0̂` contributes `β_0`.
///
/// This is the reading under which concentrated and lattice-linear agree
/// for rigid ideals; see [`is_concentrated_strict`] for the stronger one.
pub fn is_concentrated(table: &BettiTable) -> ConcentrationVerdict {
    concentration(table, |s, t| s.is_proper_subset(t))
}

/// Every element without Betti numbers lies strictly above every element
/// with them. Stronger than [`is_concentrated`]: a non-contributor that is
/// incomparable to some contributor fails here.
pub fn is_concentrated_strict(table: &BettiTable) -> ConcentrationVerdict {
    concentration(table, |s, t| !t.is_proper_subset(s))
}

/// First non-contributor `s` with a contributor `t` such that `bad(s, t)`.
fn concentration(
    table: &BettiTable,
    bad: impl Fn(Support, Support) -> bool,
) -> ConcentrationVerdict {
    let contributing = table.contributing();
    let witness = table
        .lattice
        .elements()
        .iter()
        .filter(|s| !contributing.contains(s))
        .find_map(|&s| contributing.iter().find(|&&t| bad(s, t)).map(|&t| (s, t)));
    ConcentrationVerdict {
        concentrated: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeLinearVerdict {
    pub linear: bool,
    /// True when the ideal is not rigid: the answer then only describes the
    /// basis that minimalization happened to produce.
    pub certificate_only: bool,
    /// `(degree, row multidegree, column multidegree)` of a non-cover entry.
    pub witness: Option<(usize, Monomial, Monomial)>,
}

/// Minimalizes the Taylor complex of `ideal` and checks that every nonzero
/// differential entry joins a cover of the lcm-lattice.
pub fn is_lattice_linear(
    ideal: &MonomialIdeal,
    field: FieldSpec,
) -> Result<LatticeLinearVerdict, ClassifyError> {
    let lcm = lcm_lattice(ideal)?;
    let rigid = is_rigid(&betti_table(lcm.lattice(), field)?).rigid;
    let res = minimalize(&taylor_complex(ideal, field)?);
    let support = lattice_linear_support(&res, &lcm)?;
    Ok(LatticeLinearVerdict {
        linear: support.linear,
        certificate_only: !rigid,
        witness: support.witness,
    })
}

/// The induced subposet on the bottom and every element with a nonzero
/// Betti number.
pub fn betti_subposet(table: &BettiTable) -> Poset {
    Poset::new(
        table
            .contributing()
            .into_iter()
            .chain(std::iter::once(Support::EMPTY)),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceVerdict {
    pub holds: bool,
    /// First Betti element whose interval homology changes.
    pub witness: Option<Support>,
}

/// For each Betti element `q`, compares the homology of `(0̂, q)` in the
/// lattice with that of `(0̂, q)` in the Betti subposet.
pub fn interval_homology_invariance(
    table: &BettiTable,
) -> Result<InvarianceVerdict, ClassifyError> {
    let sub = betti_subposet(table);
    for &q in sub.elements().iter().filter(|s| !s.is_empty()) {
        let full = poset_homology(&table.lattice.open_interval(q)?, table.field)?;
        let restricted = poset_homology(&sub.open_interval_below(q), table.field)?;
        if full != restricted {
            return Ok(InvarianceVerdict {
                holds: false,
                witness: Some(q),
            });
        }
    }
    Ok(InvarianceVerdict {
        holds: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::order_complex;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ideal(vars: &[&str], gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::from_strs(vars, gens).unwrap()
    }

    fn table_of(i: &MonomialIdeal, field: FieldSpec) -> (LcmLattice, BettiTable) {
        let l = lcm_lattice(i).unwrap();
        let t = betti_table(l.lattice(), field).unwrap();
        (l, t)
    }

    fn labels(l: &LcmLattice, els: &[Support]) -> Vec<String> {
        els.iter().map(|&s| l.format_label(s)).collect()
    }

    #[test]
    fn m_is_rigid_and_concentrated() {
        let m = ideal(&["a", "b"], &["a^2", "a*b", "b^2"]);
        let (l, t) = table_of(&m, Q);
        assert_eq!(t.totals(), vec![1, 3, 2]);
        assert_eq!(labels(&l, &t.betti_elements(2)), ["a^2*b", "a*b^2"]);
        let top = l.lattice().top();
        assert!((0..4).all(|i| t.get(i, top) == 0));
        assert!(is_rigid(&t).rigid);
        let c = is_concentrated(&t);
        assert!(c.concentrated);
        let ll = is_lattice_linear(&m, Q).unwrap();
        assert!(ll.linear && !ll.certificate_only);
        // everything but the top
        assert_eq!(betti_subposet(&t).len(), 6);
        assert!(!betti_subposet(&t).contains(top));
        assert!(interval_homology_invariance(&t).unwrap().holds);
    }

    #[test]
    fn n_is_not_rigid() {
        let n = ideal(&["a", "b", "c"], &["b*c", "a*c", "a^2*b"]);
        let (l, t) = table_of(&n, Q);
        let v = is_rigid(&t);
        assert!(!v.rigid);
        match v.violation.unwrap() {
            RigidityViolation::R2 {
                degree,
                lower,
                upper,
            } => {
                assert_eq!(degree, 2);
                assert_eq!(l.format_label(lower), "a*b*c");
                assert_eq!(l.format_label(upper), "a^2*b*c");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn r1_violation_on_a_big_interval() {
        // three atoms with no proper joins: the interval below the top is
        // three points, so β_{2,top} = 2
        let l = FiniteAtomicLattice::minimal(3).unwrap();
        let t = betti_table(&l, Q).unwrap();
        assert_eq!(t.get(2, l.top()), 2);
        assert!(matches!(
            is_rigid(&t).violation,
            Some(RigidityViolation::R1 { value: 2, .. })
        ));
    }

    #[test]
    fn koszul_is_lattice_linear() {
        let xyz = ideal(&["x", "y", "z"], &["x", "y", "z"]);
        let (_, t) = table_of(&xyz, Q);
        assert_eq!(t.totals(), vec![1, 3, 3, 1]);
        assert!(is_lattice_linear(&xyz, Q).unwrap().linear);
    }

    #[test]
    fn alternating_sums_match_euler_characteristic() {
        let e = ideal(
            &["a", "b", "c", "d"],
            &["b*d", "c*d^2", "a*c", "c^2*d", "a*b"],
        );
        let (l, t) = table_of(&e, Q);
        for &s in l.lattice().elements().iter().filter(|s| !s.is_empty()) {
            let k = order_complex(&l.lattice().open_interval(s).unwrap()).unwrap();
            assert_eq!(
                t.alternating_sum(s),
                k.reduced_euler_characteristic(),
                "at {s}"
            );
        }
    }

    #[test]
    fn cache_is_reused() {
        let cache = HomologyCache::new();
        let b3 = FiniteAtomicLattice::boolean(3).unwrap();
        let first = betti_table_cached(&b3, Q, &cache).unwrap();
        let filled = cache.len();
        let second = betti_table_cached(&b3, Q, &cache).unwrap();
        assert_eq!(first, second);
        assert_eq!(cache.len(), filled);
        assert_eq!(first.totals(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn concentration_readings_differ() {
        // on 4 atoms: the pairs 12, 13, 23, 14, the triples 123, 124, 134
        let family = [0, 1, 2, 4, 8, 3, 5, 6, 9, 7, 11, 13, 15].map(Support);
        let l = crate::lattice::FiniteAtomicLattice::from_family(4, family).unwrap();
        let t = betti_table(&l, Q).unwrap();
        assert_eq!(t.totals(), vec![1, 4, 4, 1]);
        assert!(is_rigid(&t).rigid);
        // 124 and 134 carry no Betti numbers and sit below no contributor,
        // but they are not above the contributors 3 and 23
        assert!(is_concentrated(&t).concentrated);
        let strict = is_concentrated_strict(&t);
        assert!(!strict.concentrated);
        assert_eq!(strict.witness, Some((Support(11), Support(4))));
        let lcm = LcmLattice::from_lattice(&l);
        assert!(is_lattice_linear(lcm.ideal(), Q).unwrap().linear);
    }
}
