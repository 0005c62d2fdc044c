use std::collections::{HashMap, HashSet};

use super::{FiniteAtomicLattice, LatticeError, Support, MAX_ATOMS};
use crate::monomial::{Monomial, MonomialIdeal};

/// The lcm-lattice of a minimally generated monomial ideal: a finite atomic
/// lattice whose element with support `σ` is labelled by the lcm of the
/// generators indexed by `σ`.
#[derive(Debug, Clone)]
pub struct LcmLattice {
    ideal: MonomialIdeal,
    lattice: FiniteAtomicLattice,
    labels: Vec<Monomial>,
    by_label: HashMap<Monomial, Support>,
}

/// Builds the lcm-lattice of `ideal`, whose generators must be minimal.
///
/// Every element is represented by its full atom support
/// `{i : m_i divides the lcm}`.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<LcmLattice, LatticeError> {
    if ideal.generators().iter().any(Monomial::is_one) {
        return Err(LatticeError::UnitIdeal);
    }
    if !ideal.is_minimally_generated() {
        return Err(LatticeError::NotMinimal);
    }
    let n = ideal.ngens();
    if n > MAX_ATOMS {
        return Err(LatticeError::AtomCount(n));
    }
    // close {1} under lcm with single generators; this reaches every subset lcm
    let one = Monomial::one(ideal.nvars());
    let mut seen: HashSet<Monomial> = HashSet::from([one.clone()]);
    let mut queue = vec![one];
    while let Some(m) = queue.pop() {
        for g in ideal.generators() {
            let next = m.lcm(g)?;
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    let support_of = |m: &Monomial| {
        Support(
            ideal
                .generators()
                .iter()
                .enumerate()
                .filter(|(_, g)| g.divides(m).unwrap_or(false))
                .fold(0, |acc, (i, _)| acc | 1 << i),
        )
    };
    let mut by_label = HashMap::with_capacity(seen.len());
    for m in seen {
        by_label.insert(m.clone(), support_of(&m));
    }
    let lattice = FiniteAtomicLattice::from_family(n, by_label.values().copied())?;
    let labels: Vec<Monomial> = lattice
        .elements()
        .iter()
        .map(|&s| ideal.lcm_of_mask(s.0))
        .collect();
    debug_assert_eq!(labels.len(), by_label.len(), "labels must be injective");
    Ok(LcmLattice {
        ideal: ideal.clone(),
        lattice,
        labels,
        by_label,
    })
}

/// A monomial ideal whose lcm-lattice has exactly the support family of
/// `lattice`, with atoms in the same order.
///
/// One variable per meet-irreducible element `m`; the generator of atom `i`
/// is the product of the variables of the meet-irreducibles not containing
/// `i`. Every element is the meet of the meet-irreducibles above it, which
/// makes the lcm of the generators in `σ` have support exactly `σ`.
pub fn coordinatize(lattice: &FiniteAtomicLattice) -> MonomialIdeal {
    let irreducibles = lattice.meet_irreducibles();
    let k = irreducibles.len();
    let vars: Vec<String> = (1..=k).map(|j| format!("x{j}")).collect();
    let generators = (0..lattice.n())
        .map(|i| {
            Monomial::new(
                irreducibles
                    .iter()
                    .map(|m| u32::from(!m.contains(i)))
                    .collect(),
            )
        })
        .collect();
    MonomialIdeal::new(vars, generators).expect("at least one atom")
}

impl LcmLattice {
    /// The lcm-lattice of the coordinatization of `lattice`.
    pub fn from_lattice(lattice: &FiniteAtomicLattice) -> LcmLattice {
        let lcm =
            lcm_lattice(&coordinatize(lattice)).expect("coordinatization is minimally generated");
        debug_assert_eq!(&lcm.lattice, lattice);
        lcm
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn lattice(&self) -> &FiniteAtomicLattice {
        &self.lattice
    }

    pub fn label(&self, s: Support) -> Result<&Monomial, LatticeError> {
        self.lattice
            .index_of(s)
            .map(|i| &self.labels[i])
            .ok_or(LatticeError::NotAnElement(s))
    }

    /// The element carrying monomial `m`, if any.
    pub fn element_of(&self, m: &Monomial) -> Option<Support> {
        self.by_label.get(m).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = (Support, &Monomial)> {
        self.lattice.elements().iter().copied().zip(&self.labels)
    }

    pub fn format_label(&self, s: Support) -> String {
        match self.label(s) {
            Ok(m) => self.ideal.format_monomial(m),
            Err(_) => s.to_string(),
        }
    }
}
