//! Finite atomic lattices stored as intersection-closed families of atom
//! supports.
//!
//! An element of a finite atomic lattice on `n` atoms is identified with the
//! set of atoms below it. Meets are intersections of supports, joins are the
//! smallest member containing the union, and the order is inclusion. Atom
//! sets are `u64` bitmasks, so `n <= 63`.

mod face;
mod io;
mod lcm;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

pub use face::{augmented_cell_poset, augmented_face_lattice, NotALattice, SimplicialComplexRep};
pub use io::{to_dot, LatticeFile};
pub use lcm::{coordinatize, lcm_lattice, LcmLattice};

use crate::monomial::MonomialError;

pub const MAX_ATOMS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("{0} atoms requested; supported range is 1..=63")]
    AtomCount(usize),
    #[error("element {0} uses atoms outside 1..={1}")]
    OutOfRange(Support, usize),
    #[error("family is missing the bottom element {{}}")]
    MissingBottom,
    #[error("family is missing the top element")]
    MissingTop,
    #[error("family is missing the atom {{{0}}}")]
    MissingAtom(usize),
    #[error("family is not intersection-closed: {0} ∩ {1} is missing")]
    NotIntersectionClosed(Support, Support),
    #[error("{0} is not an element of the lattice")]
    NotAnElement(Support),
    #[error("lattices have different atom counts ({0} vs {1})")]
    AtomMismatch(usize, usize),
    #[error("ideal is not minimally generated; run minimalize_generators first")]
    NotMinimal,
    #[error("the unit ideal has no lcm-lattice")]
    UnitIdeal,
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error("malformed lattice file: {0}")]
    Format(String),
}

/// A set of atoms, as a bitmask (bit `i` is atom `i + 1`).
///
/// Ordered canonically: by cardinality, then by mask value. That order is a
/// linear extension of inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Support(pub u64);

impl Support {
    pub const EMPTY: Support = Support(0);

    pub fn full(n: usize) -> Support {
        Support(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn atom(i: usize) -> Support {
        Support(1 << i)
    }

    /// From 1-based atom numbers.
    pub fn from_atoms<I: IntoIterator<Item = usize>>(atoms: I) -> Support {
        Support(atoms.into_iter().fold(0, |m, a| m | 1u64 << (a - 1)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn is_subset(self, other: Support) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Support) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn comparable(self, other: Support) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    pub fn intersect(self, other: Support) -> Support {
        Support(self.0 & other.0)
    }

    pub fn union(self, other: Support) -> Support {
        Support(self.0 | other.0)
    }

    /// 0-based atom indices.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 >> i & 1 == 1)
    }

    /// 1-based atom numbers, as written in files.
    pub fn atom_list(self) -> Vec<usize> {
        self.atoms().map(|i| i + 1).collect()
    }
}

impl Ord for Support {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for Support {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<String> = self.atom_list().iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", atoms.join(","))
    }
}

/// A finite induced subposet of the subsets of the atoms, ordered by
/// inclusion. Elements are kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    elements: Vec<Support>,
}

impl Poset {
    pub fn new<I: IntoIterator<Item = Support>>(elements: I) -> Poset {
        let mut elements: Vec<Support> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        Poset { elements }
    }

    pub fn elements(&self) -> &[Support] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: Support) -> bool {
        self.elements.binary_search(&s).is_ok()
    }

    /// Cover pairs `(upper, lower)` of the induced order.
    pub fn covers(&self) -> Vec<(Support, Support)> {
        let mut out = Vec::new();
        for (i, &low) in self.elements.iter().enumerate() {
            let mut ups: Vec<Support> = Vec::new();
            for &up in &self.elements[i + 1..] {
                if low.is_proper_subset(up) && !ups.iter().any(|u| u.is_subset(up)) {
                    ups.push(up);
                }
            }
            out.extend(ups.into_iter().map(|u| (u, low)));
        }
        out
    }

    /// The open interval below `top`, inside this poset.
    pub fn open_interval_below(&self, top: Support) -> Poset {
        Poset {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|e| !e.is_empty() && e.is_proper_subset(top))
                .collect(),
        }
    }
}

/// A finite atomic lattice on `n` labelled atoms.
#[derive(Debug, Clone)]
pub struct FiniteAtomicLattice {
    n: usize,
    elements: Vec<Support>,
    index: HashMap<Support, usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl PartialEq for FiniteAtomicLattice {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl Eq for FiniteAtomicLattice {}

impl std::hash::Hash for FiniteAtomicLattice {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.elements.hash(state);
    }
}

impl FiniteAtomicLattice {
    /// Validates a support family: it must contain the empty set, every
    /// singleton and the full atom set, and be closed under intersection.
    /// Duplicates are ignored.
    pub fn from_family<I>(n: usize, family: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = Support>,
    {
        if n == 0 || n > MAX_ATOMS {
            return Err(LatticeError::AtomCount(n));
        }
        let full = Support::full(n);
        let mut elements: Vec<Support> = family.into_iter().collect();
        for &e in &elements {
            if !e.is_subset(full) {
                return Err(LatticeError::OutOfRange(e, n));
            }
        }
        elements.sort();
        elements.dedup();
        let index: HashMap<Support, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        if !index.contains_key(&Support::EMPTY) {
            return Err(LatticeError::MissingBottom);
        }
        if !index.contains_key(&full) {
            return Err(LatticeError::MissingTop);
        }
        if let Some(i) = (0..n).find(|&i| !index.contains_key(&Support::atom(i))) {
            return Err(LatticeError::MissingAtom(i + 1));
        }
        for (k, &a) in elements.iter().enumerate() {
            for &b in &elements[k + 1..] {
                if !index.contains_key(&a.intersect(b)) {
                    return Err(LatticeError::NotIntersectionClosed(a, b));
                }
            }
        }
        Ok(Self::from_sorted_unchecked(n, elements, index))
    }

    /// Builds from 1-based atom lists, the file representation.
    pub fn from_atom_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self, LatticeError> {
        let mut family = Vec::with_capacity(lists.len());
        for list in lists {
            if let Some(&a) = list.iter().find(|&&a| a == 0 || a > n.min(MAX_ATOMS)) {
                return Err(LatticeError::Format(format!(
                    "atom {a} out of range 1..={n}"
                )));
            }
            family.push(Support::from_atoms(list.iter().copied()));
        }
        Self::from_family(n, family)
    }

    /// The Boolean lattice of all subsets of `n` atoms.
    pub fn boolean(n: usize) -> Result<Self, LatticeError> {
        if n == 0 || n > 20 {
            return Err(LatticeError::AtomCount(n));
        }
        Self::from_family(n, (0..1u64 << n).map(Support))
    }

    /// The lattice with no proper joins: bottom, atoms, top.
    pub fn minimal(n: usize) -> Result<Self, LatticeError> {
        let mut fam = vec![Support::EMPTY, Support::full(n)];
        fam.extend((0..n).map(Support::atom));
        Self::from_family(n, fam)
    }

    pub(crate) fn from_sorted_unchecked(
        n: usize,
        elements: Vec<Support>,
        index: HashMap<Support, usize>,
    ) -> Self {
        let m = elements.len();
        let mut upper = vec![Vec::new(); m];
        let mut lower = vec![Vec::new(); m];
        for i in 0..m {
            // supersets arrive in canonical order, so a superset is a cover
            // iff it contains no cover found earlier
            let mut covers: Vec<usize> = Vec::new();
            for j in i + 1..m {
                if elements[i].is_proper_subset(elements[j])
                    && !covers.iter().any(|&c| elements[c].is_subset(elements[j]))
                {
                    covers.push(j);
                }
            }
            for &c in &covers {
                lower[c].push(i);
            }
            upper[i] = covers;
        }
        FiniteAtomicLattice {
            n,
            elements,
            index,
            upper,
            lower,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[Support] {
        &self.elements
    }

    pub fn contains(&self, s: Support) -> bool {
        self.index.contains_key(&s)
    }

    pub fn index_of(&self, s: Support) -> Option<usize> {
        self.index.get(&s).copied()
    }

    fn require(&self, s: Support) -> Result<usize, LatticeError> {
        self.index_of(s).ok_or(LatticeError::NotAnElement(s))
    }

    pub fn bottom(&self) -> Support {
        Support::EMPTY
    }

    pub fn top(&self) -> Support {
        Support::full(self.n)
    }

    pub fn atoms(&self) -> impl Iterator<Item = Support> {
        (0..self.n).map(Support::atom)
    }

    /// Smallest member containing `s` (which need not be a member).
    pub fn closure(&self, s: Support) -> Support {
        self.elements
            .iter()
            .filter(|e| s.is_subset(**e))
            .fold(self.top(), |acc, &e| acc.intersect(e))
    }

    pub fn join(&self, a: Support, b: Support) -> Result<Support, LatticeError> {
        self.require(a)?;
        self.require(b)?;
        Ok(self.closure(a.union(b)))
    }

    pub fn meet(&self, a: Support, b: Support) -> Result<Support, LatticeError> {
        self.require(a)?;
        self.require(b)?;
        Ok(a.intersect(b))
    }

    /// Members strictly between the bottom and `s`.
    pub fn open_interval(&self, s: Support) -> Result<Poset, LatticeError> {
        self.require(s)?;
        Ok(Poset {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|e| !e.is_empty() && e.is_proper_subset(s))
                .collect(),
        })
    }

    /// The closed interval `[bottom, s]`.
    pub fn down_set(&self, s: Support) -> Result<Poset, LatticeError> {
        self.require(s)?;
        Ok(Poset {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|e| e.is_subset(s))
                .collect(),
        })
    }

    pub fn as_poset(&self) -> Poset {
        Poset {
            elements: self.elements.clone(),
        }
    }

    pub fn upper_covers(&self, s: Support) -> Result<Vec<Support>, LatticeError> {
        let i = self.require(s)?;
        Ok(self.upper[i].iter().map(|&j| self.elements[j]).collect())
    }

    pub fn lower_covers(&self, s: Support) -> Result<Vec<Support>, LatticeError> {
        let i = self.require(s)?;
        Ok(self.lower[i].iter().map(|&j| self.elements[j]).collect())
    }

    /// Whether `upper` covers `lower`.
    pub fn is_cover(&self, lower: Support, upper: Support) -> bool {
        match (self.index_of(lower), self.index_of(upper)) {
            (Some(i), Some(j)) => self.upper[i].contains(&j),
            _ => false,
        }
    }

    /// All cover pairs `(upper, lower)`, in canonical order of `lower`.
    pub fn covers(&self) -> Vec<(Support, Support)> {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (j, i)))
            .map(|(j, i)| (self.elements[j], self.elements[i]))
            .collect()
    }

    /// Elements other than the top with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> Vec<Support> {
        self.elements
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.upper[i].len() == 1)
            .map(|(_, &e)| e)
            .collect()
    }

    /// Whether `s` is not the meet of two strictly larger members (the
    /// definition, checked directly rather than via covers).
    pub fn is_meet_irreducible(&self, s: Support) -> bool {
        if s == self.top() || !self.contains(s) {
            return false;
        }
        let above: Vec<Support> = self
            .elements
            .iter()
            .copied()
            .filter(|e| s.is_proper_subset(*e))
            .collect();
        !above
            .iter()
            .enumerate()
            .any(|(k, &a)| above[k + 1..].iter().any(|&b| a.intersect(b) == s))
    }
}

impl fmt::Display for FiniteAtomicLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "L{}[{}]", self.n, els.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(atoms: &[usize]) -> Support {
        Support::from_atoms(atoms.iter().copied())
    }

    #[test]
    fn validation() {
        assert!(FiniteAtomicLattice::from_family(0, [Support::EMPTY]).is_err());
        assert_eq!(
            FiniteAtomicLattice::from_family(2, [s(&[1]), s(&[2]), s(&[1, 2])]),
            Err(LatticeError::MissingBottom)
        );
        assert_eq!(
            FiniteAtomicLattice::from_family(3, [s(&[]), s(&[1]), s(&[2]), s(&[1, 2, 3])]),
            Err(LatticeError::MissingAtom(3))
        );
        let not_closed = [
            s(&[]),
            s(&[1]),
            s(&[2]),
            s(&[3]),
            s(&[4]),
            s(&[1, 2, 3]),
            s(&[2, 3, 4]),
            s(&[1, 2, 3, 4]),
        ];
        assert!(matches!(
            FiniteAtomicLattice::from_family(4, not_closed),
            Err(LatticeError::NotIntersectionClosed(..))
        ));
        assert!(matches!(
            FiniteAtomicLattice::from_atom_lists(
                2,
                &[vec![], vec![1], vec![2], vec![1, 2], vec![3]]
            ),
            Err(LatticeError::Format(_))
        ));
    }

    #[test]
    fn join_and_meet() {
        let b2 = FiniteAtomicLattice::boolean(2).unwrap();
        assert_eq!(b2.meet(s(&[1]), s(&[2])).unwrap(), Support::EMPTY);
        let m3 = FiniteAtomicLattice::minimal(3).unwrap();
        assert_eq!(m3.join(s(&[1]), s(&[2])).unwrap(), s(&[1, 2, 3]));
        assert!(matches!(
            m3.join(s(&[1, 2]), s(&[1])),
            Err(LatticeError::NotAnElement(_))
        ));
    }

    #[test]
    fn intervals() {
        let b2 = FiniteAtomicLattice::boolean(2).unwrap();
        assert!(b2.open_interval(s(&[1])).unwrap().is_empty());
        assert!(b2.open_interval(Support::EMPTY).unwrap().is_empty());
        assert_eq!(
            b2.open_interval(s(&[1, 2])).unwrap().elements(),
            &[s(&[1]), s(&[2])]
        );
    }

    #[test]
    fn cover_counts() {
        assert_eq!(FiniteAtomicLattice::boolean(2).unwrap().covers().len(), 4);
        let chain = FiniteAtomicLattice::from_family(1, [s(&[]), s(&[1])]).unwrap();
        assert_eq!(chain.covers().len(), 1);
        let three_chain = Poset::new([s(&[]), s(&[1]), s(&[1, 2])]);
        assert_eq!(three_chain.covers().len(), 2);
        assert_eq!(FiniteAtomicLattice::boolean(3).unwrap().covers().len(), 12);
    }

    #[test]
    fn meet_irreducible_examples() {
        let b3 = FiniteAtomicLattice::boolean(3).unwrap();
        assert_eq!(
            b3.meet_irreducibles(),
            vec![s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]
        );
        // single atom: bottom < atom = top; the bottom is meet-irreducible
        let one = FiniteAtomicLattice::from_family(1, [s(&[]), s(&[1])]).unwrap();
        assert_eq!(one.meet_irreducibles(), vec![Support::EMPTY]);
    }

    fn random_family(n: usize) -> impl Strategy<Value = Vec<Support>> {
        prop::collection::vec(0u64..(1 << n), 0..12)
            .prop_map(|v| v.into_iter().map(Support).collect())
    }

    /// Closes a family under intersection by brute force.
    fn close(n: usize, mut fam: Vec<Support>) -> Vec<Support> {
        fam.push(Support::EMPTY);
        fam.push(Support::full(n));
        fam.extend((0..n).map(Support::atom));
        loop {
            let mut added = false;
            let cur = fam.clone();
            for &a in &cur {
                for &b in &cur {
                    if !fam.contains(&a.intersect(b)) {
                        fam.push(a.intersect(b));
                        added = true;
                    }
                }
            }
            if !added {
                return fam;
            }
        }
    }

    proptest! {
        #[test]
        fn random_closed_families(raw in random_family(5)) {
            let fam = close(5, raw.clone());
            let lat = FiniteAtomicLattice::from_family(5, fam).unwrap();
            // the two characterisations of meet-irreducibility agree
            for &e in lat.elements() {
                let by_cover = lat.upper_covers(e).unwrap().len() == 1;
                prop_assert_eq!(by_cover, lat.is_meet_irreducible(e));
            }
            // closure under intersection; joins are least upper bounds
            for &a in lat.elements() {
                for &b in lat.elements() {
                    prop_assert!(lat.contains(a.intersect(b)));
                    let j = lat.join(a, b).unwrap();
                    prop_assert!(a.is_subset(j) && b.is_subset(j));
                    for &c in lat.elements() {
                        if a.is_subset(c) && b.is_subset(c) {
                            prop_assert!(j.is_subset(c));
                        }
                    }
                }
                // atomic: every element is the join of its atoms
                let j = e_join_atoms(&lat, a);
                prop_assert_eq!(j, a);
            }
            // covers: nothing strictly between
            for (up, low) in lat.covers() {
                prop_assert!(!lat.elements().iter().any(|&m| low.is_proper_subset(m) && m.is_proper_subset(up)));
            }
            // unclosed raw families with a bad pair are rejected
            let mut raw_fam = raw;
            raw_fam.extend([Support::EMPTY, Support::full(5)]);
            raw_fam.extend((0..5).map(Support::atom));
            let closed = raw_fam.iter().all(|&a| raw_fam.iter().all(|&b| raw_fam.contains(&a.intersect(b))));
            prop_assert_eq!(FiniteAtomicLattice::from_family(5, raw_fam).is_ok(), closed);
        }
    }

    fn e_join_atoms(lat: &FiniteAtomicLattice, a: Support) -> Support {
        a.atoms()
            .map(Support::atom)
            .fold(Support::EMPTY, |acc, at| lat.join(acc, at).unwrap())
    }
}
