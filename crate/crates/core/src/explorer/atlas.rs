use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{up_covers, LnKey};
use crate::classify::{
    betti_table_cached, is_concentrated, is_rigid, ClassifyError, HomologyCache,
};
use crate::field::FieldSpec;

/// One line of the atlas file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub key: String,
    pub n: usize,
    pub betti: Vec<u64>,
    pub rigid: bool,
    pub concentrated: bool,
    pub field: FieldSpec,
}

/// One line of the edge file: a cover `lower < upper` inside a stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub lower: String,
    pub upper: String,
    pub betti: Vec<u64>,
}

/// The members of `L(n)` sharing one total Betti vector over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumRecord {
    pub field: FieldSpec,
    pub betti: Vec<u64>,
    pub members: Vec<LnKey>,
    pub rigid: Vec<bool>,
    pub concentrated: Vec<bool>,
    /// Covers `(lower, upper)` as indices into `members`.
    pub edges: Vec<(usize, usize)>,
}

impl StratumRecord {
    pub fn index_of(&self, key: &LnKey) -> Option<usize> {
        self.members.binary_search(key).ok()
    }

    /// Members with no cover below them inside the stratum.
    pub fn minima(&self) -> Vec<&LnKey> {
        (0..self.members.len())
            .filter(|&k| !self.edges.iter().any(|&(_, up)| up == k))
            .map(|k| &self.members[k])
            .collect()
    }
}

/// Betti data for a list of lattices, grouped into strata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atlas {
    pub n: usize,
    pub field: FieldSpec,
    pub records: Vec<AtlasRecord>,
    pub strata: BTreeMap<Vec<u64>, StratumRecord>,
}

/// Computes the total Betti vector and the rigid/concentrated flags of
/// every key, then groups by Betti vector and records the covers that stay
/// inside a stratum. Output order is canonical whatever the thread count.
pub fn stratify(
    keys: &[LnKey],
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<Atlas, ClassifyError> {
    let mut keys = keys.to_vec();
    keys.sort();
    keys.dedup();
    let n = keys.first().map_or(0, LnKey::n);
    let rows: Vec<(Vec<u64>, bool, bool, Vec<LnKey>)> = keys
        .par_iter()
        .map(|key| {
            let lattice = key.to_lattice();
            let table = betti_table_cached(&lattice, field, cache)?;
            let ups = up_covers(&lattice)
                .iter()
                .map(LnKey::from_lattice)
                .collect();
            Ok((
                table.totals(),
                is_rigid(&table).rigid,
                is_concentrated(&table).concentrated,
                ups,
            ))
        })
        .collect::<Result<_, ClassifyError>>()?;
    let betti_of: HashMap<&LnKey, &Vec<u64>> =
        keys.iter().zip(&rows).map(|(k, r)| (k, &r.0)).collect();
    let mut strata: BTreeMap<Vec<u64>, StratumRecord> = BTreeMap::new();
    for (key, (betti, rigid, concentrated, _)) in keys.iter().zip(&rows) {
        let s = strata
            .entry(betti.clone())
            .or_insert_with(|| StratumRecord {
                field,
                betti: betti.clone(),
                members: Vec::new(),
                rigid: Vec::new(),
                concentrated: Vec::new(),
                edges: Vec::new(),
            });
        // keys are sorted, so members stay sorted
        s.members.push(key.clone());
        s.rigid.push(*rigid);
        s.concentrated.push(*concentrated);
    }
    for (key, (betti, _, _, ups)) in keys.iter().zip(&rows) {
        let s = strata.get_mut(betti).expect("stratum exists");
        let lower = s.index_of(key).expect("member");
        for up in ups {
            if betti_of.get(up) == Some(&betti) {
                let upper = s.index_of(up).expect("same stratum");
                s.edges.push((lower, upper));
            }
        }
    }
    for s in strata.values_mut() {
        s.edges.sort_by(|a, b| {
            (&s.members[a.0], &s.members[a.1]).cmp(&(&s.members[b.0], &s.members[b.1]))
        });
    }
    let records = keys
        .iter()
        .zip(rows)
        .map(|(key, (betti, rigid, concentrated, _))| AtlasRecord {
            key: key.to_string(),
            n,
            betti,
            rigid,
            concentrated,
            field,
        })
        .collect();
    Ok(Atlas {
        n,
        field,
        records,
        strata,
    })
}

impl Atlas {
    /// One JSON object per lattice, in key order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    /// Intra-stratum covers, strata in Betti order, edges in key order.
    pub fn edges_jsonl(&self) -> String {
        let mut out = String::new();
        for s in self.strata.values() {
            for &(lo, up) in &s.edges {
                let e = EdgeRecord {
                    lower: s.members[lo].to_string(),
                    upper: s.members[up].to_string(),
                    betti: s.betti.clone(),
                };
                out.push_str(&serde_json::to_string(&e).expect("edges serialize"));
                out.push('\n');
            }
        }
        out
    }

    /// Human-readable stratum table.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "L({}) over {}: {} lattices, {} strata\n",
            self.n,
            self.field,
            self.records.len(),
            self.strata.len()
        );
        for s in self.strata.values() {
            let betti: Vec<String> = s.betti.iter().map(u64::to_string).collect();
            let _ = writeln!(
                out,
                "({}): {} members, {} rigid, {} concentrated, {} covers, {} minimal",
                betti.join(","),
                s.members.len(),
                s.rigid.iter().filter(|&&r| r).count(),
                s.concentrated.iter().filter(|&&c| c).count(),
                s.edges.len(),
                s.minima().len()
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::enumerate_ln;
    use crate::lattice::FiniteAtomicLattice;

    #[test]
    fn boolean_three_is_koszul() {
        let keys = enumerate_ln(3, 100).unwrap().keys;
        let atlas = stratify(&keys, FieldSpec::Rationals, &HomologyCache::new()).unwrap();
        let b3 = LnKey::from_lattice(&FiniteAtomicLattice::boolean(3).unwrap());
        let koszul = &atlas.strata[&vec![1, 3, 3, 1]];
        assert!(koszul.index_of(&b3).is_some());
        let text = atlas.to_jsonl();
        assert_eq!(text.lines().count(), keys.len());
        let first: AtlasRecord = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first.field, FieldSpec::Rationals);
        assert!(text.contains(r#""field":"Q""#));
        for line in atlas.edges_jsonl().lines() {
            let e: EdgeRecord = serde_json::from_str(line).unwrap();
            assert!(
                e.lower.parse::<LnKey>().unwrap().len() + 1
                    == e.upper.parse::<LnKey>().unwrap().len()
            );
        }
    }
}
