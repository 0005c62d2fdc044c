use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{FiniteAtomicLattice, LatticeError, LcmLattice};

/// JSON form of a lattice: `{"n": 3, "elements": [[], [1], [2], ...]}` with
/// 1-based, sorted atom lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub n: usize,
    pub elements: Vec<Vec<usize>>,
}

impl LatticeFile {
    pub fn from_lattice(lattice: &FiniteAtomicLattice) -> Self {
        LatticeFile {
            n: lattice.n(),
            elements: lattice.elements().iter().map(|s| s.atom_list()).collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteAtomicLattice, LatticeError> {
        FiniteAtomicLattice::from_atom_lists(self.n, &self.elements)
    }

    pub fn parse(text: &str) -> Result<FiniteAtomicLattice, LatticeError> {
        let file: LatticeFile =
            serde_json::from_str(text).map_err(|e| LatticeError::Format(e.to_string()))?;
        file.to_lattice()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice files always serialize")
    }
}

/// Graphviz source for the Hasse diagram, drawn bottom to top. Nodes are
/// labelled by atom support and, when `labels` is given, by monomial.
pub fn to_dot(lattice: &FiniteAtomicLattice, labels: Option<&LcmLattice>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, &s) in lattice.elements().iter().enumerate() {
        let text = match labels {
            Some(l) => format!("{s}\\n{}", l.format_label(s)),
            None => s.to_string(),
        };
        let _ = writeln!(out, "  e{i} [label=\"{text}\"];");
    }
    for (up, low) in lattice.covers() {
        let i = lattice.index_of(low).expect("cover endpoints are elements");
        let j = lattice.index_of(up).expect("cover endpoints are elements");
        let _ = writeln!(out, "  e{i} -> e{j};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lcm_lattice;
    use crate::monomial::MonomialIdeal;

    #[test]
    fn json_round_trip() {
        let b3 = FiniteAtomicLattice::boolean(3).unwrap();
        let file = LatticeFile::from_lattice(&b3);
        let text = file.to_json();
        assert!(text.starts_with(r#"{"n":3,"elements":[[],[1],[2],[3],[1,2]"#));
        assert_eq!(LatticeFile::parse(&text).unwrap(), b3);
        assert!(LatticeFile::parse(r#"{"n":2,"elements":[[],[1],[1,2]]}"#).is_err());
        assert!(LatticeFile::parse("{").is_err());
    }

    #[test]
    fn dot_has_cover_edges() {
        let i = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        let l = lcm_lattice(&i).unwrap();
        let dot = to_dot(l.lattice(), Some(&l));
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches("->").count(), 9);
        assert!(dot.contains("{1,2}\\na^2*b"));
    }
}
