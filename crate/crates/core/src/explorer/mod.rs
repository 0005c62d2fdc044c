//! The poset `L(n)` of finite atomic lattices on `n` ordered atoms.
//!
//! `P <= Q` iff the support family of `P` is contained in that of `Q`; the
//! witness is the join-preserving map `Q -> P` sending `σ` to its closure in
//! `P`. A cover adds exactly one element.

mod atlas;
mod enumerate;
mod theorems;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

pub use atlas::{stratify, Atlas, AtlasRecord, EdgeRecord, StratumRecord};
pub use enumerate::{enumerate_ln, Enumeration, DEFAULT_BUDGET, MAX_ENUMERATION_ATOMS};
pub use theorems::{
    check_betti_monotonicity, check_concentrated_iff_lattice_linear, check_cover_invariance,
    check_cross_validation, check_face_rigidity, check_scaling_uniqueness, check_transfers,
    cross_validate, face_lattice_rigidity_check, find_concentrated_below, lift_resolution,
    minimal_resolution, random_acyclic_complexes, random_complex, transfer_resolution,
    verify_rigid_up_closure, CheckReport, FaceRigidityReport, TransferError,
};

use crate::lattice::{FiniteAtomicLattice, LatticeError, Support};

/// Canonical encoding of a member of `L(n)`: `n` and the element masks in
/// canonical order. Displayed as `n:m1,m2,...` with decimal masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LnKey {
    n: usize,
    masks: Vec<u64>,
}

impl LnKey {
    pub fn from_lattice(lattice: &FiniteAtomicLattice) -> Self {
        LnKey {
            n: lattice.n(),
            masks: lattice.elements().iter().map(|s| s.bits()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn contains(&self, s: Support) -> bool {
        self.masks.binary_search_by(|&m| Support(m).cmp(&s)).is_ok()
    }

    pub fn to_lattice(&self) -> FiniteAtomicLattice {
        FiniteAtomicLattice::from_family(self.n, self.masks.iter().copied().map(Support))
            .expect("keys encode valid lattices")
    }
}

impl fmt::Display for LnKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let masks: Vec<String> = self.masks.iter().map(u64::to_string).collect();
        write!(f, "{}:{}", self.n, masks.join(","))
    }
}

impl FromStr for LnKey {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Format(format!("bad lattice key {s:?}"));
        let (n, masks) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let masks = masks
            .split(',')
            .map(|m| m.trim().parse::<u64>().map(Support).map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LnKey::from_lattice(&FiniteAtomicLattice::from_family(
            n, masks,
        )?))
    }
}

fn same_n(p: &FiniteAtomicLattice, q: &FiniteAtomicLattice) -> Result<(), LatticeError> {
    if p.n() == q.n() {
        Ok(())
    } else {
        Err(LatticeError::AtomMismatch(p.n(), q.n()))
    }
}

/// `P <= Q` in `L(n)`.
pub fn leq_in_ln(p: &FiniteAtomicLattice, q: &FiniteAtomicLattice) -> Result<bool, LatticeError> {
    same_n(p, q)?;
    Ok(p.len() <= q.len() && p.elements().iter().all(|&s| q.contains(s)))
}

/// The map `Q -> P`, `σ -> closure_P(σ)`, as pairs in canonical order of
/// `Q`. Defined when `P <= Q`; it is join-preserving and the identity on
/// atoms.
pub fn join_preserving_map(
    q: &FiniteAtomicLattice,
    p: &FiniteAtomicLattice,
) -> Result<Vec<(Support, Support)>, LatticeError> {
    if !leq_in_ln(p, q)? {
        return Err(LatticeError::Format(
            "the target is not below the source in L(n)".into(),
        ));
    }
    let map: Vec<(Support, Support)> = q.elements().iter().map(|&s| (s, p.closure(s))).collect();
    debug_assert!(is_join_preserving(q, p, &map));
    Ok(map)
}

/// Whether `map` (given on all of `Q`) preserves joins and fixes atoms.
pub fn is_join_preserving(
    q: &FiniteAtomicLattice,
    p: &FiniteAtomicLattice,
    map: &[(Support, Support)],
) -> bool {
    let f = |s: Support| map.iter().find(|(a, _)| *a == s).map(|&(_, b)| b);
    let atoms_fixed = q.atoms().all(|a| f(a) == Some(a));
    atoms_fixed
        && q.elements().iter().enumerate().all(|(k, &a)| {
            q.elements()[k..].iter().all(|&b| {
                let joined = q.join(a, b).ok().and_then(f);
                let images = f(a).zip(f(b)).and_then(|(x, y)| p.join(x, y).ok());
                joined.is_some() && joined == images
            })
        })
}

/// Lattices obtained by adding one subset that keeps the family
/// intersection-closed, in canonical key order.
pub fn up_covers(p: &FiniteAtomicLattice) -> Vec<FiniteAtomicLattice> {
    let present: HashSet<Support> = p.elements().iter().copied().collect();
    let n = p.n();
    let mut out: Vec<FiniteAtomicLattice> = (0..1u64 << n)
        .map(Support)
        .filter(|s| s.len() >= 2 && (s.len() as usize) < n && !present.contains(s))
        .filter(|&s| {
            p.elements()
                .iter()
                .all(|&t| present.contains(&s.intersect(t)) || s.intersect(t) == s)
        })
        .map(|s| {
            FiniteAtomicLattice::from_family(
                n,
                p.elements().iter().copied().chain(std::iter::once(s)),
            )
            .expect("closure was checked")
        })
        .collect();
    out.sort_by_key(LnKey::from_lattice);
    out
}

/// Lattices obtained by removing one meet-irreducible element that is not
/// an atom, the bottom, or the top, in canonical key order.
pub fn down_covers(p: &FiniteAtomicLattice) -> Vec<FiniteAtomicLattice> {
    let mut out: Vec<FiniteAtomicLattice> = p
        .meet_irreducibles()
        .into_iter()
        .filter(|s| s.len() >= 2)
        .map(|s| {
            FiniteAtomicLattice::from_family(
                p.n(),
                p.elements().iter().copied().filter(|&t| t != s),
            )
            .expect("removing a meet-irreducible keeps the family closed")
        })
        .collect();
    out.sort_by_key(LnKey::from_lattice);
    out
}

/// The smallest key in the orbit of `key` under relabelling the atoms; a
/// reading aid only, since `L(n)` keeps atoms labelled.
pub fn orbit_representative(key: &LnKey) -> LnKey {
    let n = key.n;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<LnKey> = None;
    loop {
        let mut masks: Vec<Support> = key
            .masks
            .iter()
            .map(|&m| {
                Support(
                    perm.iter()
                        .enumerate()
                        .filter(|(i, _)| m >> i & 1 == 1)
                        .fold(0, |acc, (_, &j)| acc | 1 << j),
                )
            })
            .collect();
        masks.sort();
        let candidate = LnKey {
            n,
            masks: masks.into_iter().map(Support::bits).collect(),
        };
        if best.as_ref().is_none_or(|b| &candidate < b) {
            best = Some(candidate);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.expect("at least the identity permutation")
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
