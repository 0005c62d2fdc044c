use rayon::prelude::*;

use super::LnKey;
use crate::lattice::{LatticeError, Support};

/// Enumeration is refused above this many atoms.
pub const MAX_ENUMERATION_ATOMS: usize = 5;

/// Default cap on the number of lattices emitted.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Output of [`enumerate_ln`]: keys in canonical order, and whether the
/// budget cut the search short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub n: usize,
    pub keys: Vec<LnKey>,
    pub truncated: bool,
}

/// Lists every intersection-closed family on `n` atoms containing the
/// empty set, the singletons and the full set, each exactly once.
///
/// The free subsets (sizes `2..n`) are decided from largest to smallest.
/// When a subset is reached, all its proper supersets are decided, so it
/// must be included exactly when it is the intersection of included sets;
/// otherwise both choices lead to distinct closed families.
pub fn enumerate_ln(n: usize, budget: usize) -> Result<Enumeration, LatticeError> {
    if n == 0 || n > MAX_ENUMERATION_ATOMS {
        return Err(LatticeError::AtomCount(n));
    }
    let mut candidates: Vec<u64> = (0..1u64 << n)
        .filter(|m| (2..n as u32).contains(&m.count_ones()))
        .collect();
    candidates.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));

    // split the search tree on the first few decisions for the workers
    let split = candidates.len().min(8);
    let mut prefixes = Vec::new();
    expand(&candidates, 0, split, &mut Vec::new(), &mut |included| {
        prefixes.push(included.to_vec());
        true
    });
    // each part stops after budget + 1 leaves, which is enough to tell
    // whether the budget was exceeded
    let parts: Vec<Vec<Vec<u64>>> = prefixes
        .into_par_iter()
        .map(|mut included| {
            let mut found = Vec::new();
            expand(
                &candidates,
                split,
                candidates.len(),
                &mut included,
                &mut |inc| {
                    found.push(inc.to_vec());
                    found.len() <= budget
                },
            );
            found
        })
        .collect();
    // concatenating in prefix order reproduces the sequential search order,
    // so the truncated set does not depend on the worker count
    let mut families: Vec<Vec<u64>> = parts.into_iter().flatten().take(budget + 1).collect();
    let truncated = families.len() > budget;
    families.truncate(budget);
    let full = (1u64 << n) - 1;
    let mut keys: Vec<LnKey> = families
        .into_iter()
        .map(|included| {
            let mut masks: Vec<Support> = std::iter::once(0)
                .chain((0..n).map(|i| 1 << i))
                .chain(std::iter::once(full))
                .chain(included)
                .map(Support)
                .collect();
            masks.sort();
            masks.dedup();
            LnKey {
                n,
                masks: masks.into_iter().map(Support::bits).collect(),
            }
        })
        .collect();
    keys.sort();
    Ok(Enumeration { n, keys, truncated })
}

/// Depth-first over decisions `from..to`; `emit` is called on each leaf and
/// returns false to stop. Returns false if stopped early.
fn expand(
    candidates: &[u64],
    from: usize,
    to: usize,
    included: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    if from == to {
        return emit(included);
    }
    let c = candidates[from];
    let mut meet = u64::MAX;
    let mut supersets = 0;
    for &a in included.iter() {
        if a & c == c {
            meet &= a;
            supersets += 1;
        }
    }
    let forced = supersets >= 2 && meet == c;
    included.push(c);
    let keep_going = expand(candidates, from + 1, to, included, emit);
    included.pop();
    if !keep_going {
        return false;
    }
    if forced {
        return true;
    }
    expand(candidates, from + 1, to, included, emit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteAtomicLattice;

    /// Every subset of the free candidates, kept when closed.
    fn brute_force(n: usize) -> Vec<LnKey> {
        let free: Vec<u64> = (0..1u64 << n)
            .filter(|m| (2..n as u32).contains(&m.count_ones()))
            .collect();
        let mut out = Vec::new();
        for choice in 0..1u64 << free.len() {
            let mut family: Vec<Support> = (0..n).map(Support::atom).collect();
            family.push(Support::EMPTY);
            family.push(Support::full(n));
            family.extend(
                free.iter()
                    .enumerate()
                    .filter(|(k, _)| choice >> k & 1 == 1)
                    .map(|(_, &m)| Support(m)),
            );
            if let Ok(l) = FiniteAtomicLattice::from_family(n, family) {
                out.push(LnKey::from_lattice(&l));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_ln(1, DEFAULT_BUDGET).unwrap().keys.len(), 1);
        assert_eq!(enumerate_ln(2, DEFAULT_BUDGET).unwrap().keys.len(), 1);
        let l3 = enumerate_ln(3, DEFAULT_BUDGET).unwrap();
        assert!(!l3.truncated);
        assert_eq!(l3.keys, brute_force(3));
        assert!(enumerate_ln(6, 10).is_err());
        assert!(enumerate_ln(0, 10).is_err());
    }

    #[test]
    fn budget_truncates_deterministically() {
        let all = enumerate_ln(4, DEFAULT_BUDGET).unwrap();
        assert!(!all.truncated);
        let cut = enumerate_ln(4, 10).unwrap();
        assert!(cut.truncated);
        assert_eq!(cut.keys.len(), 10);
        assert_eq!(enumerate_ln(4, 10).unwrap(), cut);
        assert!(cut.keys.iter().all(|k| all.keys.binary_search(k).is_ok()));
        let exact = enumerate_ln(4, all.keys.len()).unwrap();
        assert_eq!(exact.keys, all.keys);
    }
}
