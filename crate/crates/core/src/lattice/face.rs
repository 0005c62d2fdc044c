use std::collections::BTreeSet;
use std::fmt;

use super::{FiniteAtomicLattice, LatticeError, Support, MAX_ATOMS};

/// A simplicial complex on vertices `1..=v`, given by its facets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplexRep {
    nverts: usize,
    facets: Vec<Support>,
}

impl SimplicialComplexRep {
    /// Facets must be pairwise incomparable and cover every vertex.
    pub fn new(nverts: usize, facets: Vec<Support>) -> Result<Self, LatticeError> {
        if nverts == 0 || nverts > MAX_ATOMS {
            return Err(LatticeError::AtomCount(nverts));
        }
        let full = Support::full(nverts);
        for (k, &f) in facets.iter().enumerate() {
            if f.is_empty() || !f.is_subset(full) {
                return Err(LatticeError::OutOfRange(f, nverts));
            }
            if facets[..k].iter().any(|&g| g.comparable(f)) {
                return Err(LatticeError::Format(format!(
                    "facet {f} is comparable to another facet"
                )));
            }
        }
        let covered = facets.iter().fold(Support::EMPTY, |acc, &f| acc.union(f));
        if covered != full {
            let missing = (0..nverts).find(|&i| !covered.contains(i)).unwrap_or(0);
            return Err(LatticeError::MissingAtom(missing + 1));
        }
        let mut facets = facets;
        facets.sort();
        Ok(SimplicialComplexRep { nverts, facets })
    }

    /// Keeps only the maximal simplices of `simplices`.
    pub fn from_simplices(nverts: usize, simplices: &[Support]) -> Result<Self, LatticeError> {
        let facets: BTreeSet<Support> = simplices
            .iter()
            .copied()
            .filter(|&s| !simplices.iter().any(|&t| s.is_proper_subset(t)))
            .collect();
        Self::new(nverts, facets.into_iter().collect())
    }

    /// From 1-based vertex lists.
    pub fn from_facet_lists(nverts: usize, facets: &[&[usize]]) -> Result<Self, LatticeError> {
        let facets = facets
            .iter()
            .map(|f| Support::from_atoms(f.iter().copied()))
            .collect();
        Self::new(nverts, facets)
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn facets(&self) -> &[Support] {
        &self.facets
    }

    pub fn dimension(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    /// All nonempty faces, in canonical order.
    pub fn faces(&self) -> Vec<Support> {
        let mut out = BTreeSet::new();
        for &f in &self.facets {
            // enumerate the nonempty submasks of f
            let mut sub = f.0;
            while sub != 0 {
                out.insert(Support(sub));
                sub = (sub - 1) & f.0;
            }
        }
        out.into_iter().collect()
    }
}

impl SimplicialComplexRep {
    /// Reads the complex file format: a `vertices: v` line, then one facet
    /// per line as whitespace-separated 1-based vertices. Blank lines and
    /// `#` comments are skipped. Non-maximal simplices are dropped.
    pub fn parse(text: &str) -> Result<Self, LatticeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines
            .next()
            .ok_or_else(|| LatticeError::Format("line 1: empty complex file".into()))?;
        let nverts: usize = header
            .strip_prefix("vertices:")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| {
                LatticeError::Format(format!("expected `vertices: <count>`, found {header:?}"))
            })?;
        let mut simplices = Vec::new();
        for (line, text) in lines {
            let verts = text
                .split_whitespace()
                .map(|v| match v.parse::<usize>() {
                    Ok(v) if (1..=nverts).contains(&v) => Ok(v),
                    _ => Err(LatticeError::Format(format!(
                        "line {line}: bad vertex {v:?}"
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            simplices.push(Support::from_atoms(verts));
        }
        Self::from_simplices(nverts, &simplices)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("vertices: {}\n", self.nverts);
        for f in &self.facets {
            let verts: Vec<String> = f.atom_list().iter().map(usize::to_string).collect();
            out.push_str(&verts.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SimplicialComplexRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|s| s.to_string()).collect();
        write!(f, "K{}<{}>", self.nverts, facets.join(" "))
    }
}

/// Why an augmented face poset fails to be a finite atomic lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotALattice {
    pub reason: LatticeError,
}

impl fmt::Display for NotALattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a lattice: {}", self.reason)
    }
}

/// The face poset of `complex` with a bottom (the empty face) and a top
/// (all vertices) adjoined, as a support family.
pub fn augmented_face_lattice(
    complex: &SimplicialComplexRep,
) -> Result<FiniteAtomicLattice, NotALattice> {
    augmented_cell_poset(complex.nverts(), &complex.faces())
}

/// Like [`augmented_face_lattice`] for a cell complex entered as the vertex
/// sets of its cells (each cell identified with its vertex set).
pub fn augmented_cell_poset(
    nverts: usize,
    cells: &[Support],
) -> Result<FiniteAtomicLattice, NotALattice> {
    let mut family: Vec<Support> = cells.to_vec();
    family.push(Support::EMPTY);
    family.push(Support::full(nverts));
    FiniteAtomicLattice::from_family(nverts, family).map_err(|reason| NotALattice { reason })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(atoms: &[usize]) -> Support {
        Support::from_atoms(atoms.iter().copied())
    }

    #[test]
    fn file_round_trip() {
        let k = SimplicialComplexRep::parse("# two edges\nvertices: 3\n1 2\n2 3\n2\n").unwrap();
        assert_eq!(k.facets(), &[s(&[1, 2]), s(&[2, 3])]);
        assert_eq!(SimplicialComplexRep::parse(&k.to_file_string()).unwrap(), k);
        assert!(SimplicialComplexRep::parse("").is_err());
        assert!(SimplicialComplexRep::parse("vertices: 2\n1 3\n")
            .unwrap_err()
            .to_string()
            .contains("line 2"));
        assert!(SimplicialComplexRep::parse("vertices: 3\n1 2\n").is_err());
    }

    #[test]
    fn triangle_gives_boolean() {
        let k = SimplicialComplexRep::from_facet_lists(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(
            augmented_face_lattice(&k).unwrap(),
            FiniteAtomicLattice::boolean(3).unwrap()
        );
    }

    #[test]
    fn three_triangles_glued_pairwise() {
        // vertices 1..6; triangles {1,2,4}, {2,3,5}, {4,5,6} meet pairwise in 2, 4, 5
        let k = SimplicialComplexRep::from_facet_lists(6, &[&[1, 2, 4], &[2, 3, 5], &[4, 5, 6]])
            .unwrap();
        let l = augmented_face_lattice(&k).unwrap();
        // 6 vertices, 9 edges, 3 triangles, bottom, top
        assert_eq!(l.len(), 6 + 9 + 3 + 2);
        assert_eq!(l.n(), 6);
    }

    #[test]
    fn cells_without_meets_are_rejected() {
        // two triangles sharing an edge, then two squares sharing a path
        let cells = [
            s(&[1]),
            s(&[2]),
            s(&[3]),
            s(&[4]),
            s(&[1, 3]),
            s(&[1, 2, 3]),
            s(&[1, 3, 4]),
        ];
        let cells: Vec<Support> = cells.to_vec();
        assert!(augmented_cell_poset(4, &cells).is_ok());
        let bad = [
            s(&[1]),
            s(&[2]),
            s(&[3]),
            s(&[4]),
            s(&[5]),
            s(&[1, 2, 3, 4]),
            s(&[1, 3, 4, 5]),
        ];
        let err = augmented_cell_poset(5, &bad).unwrap_err();
        assert!(matches!(
            err.reason,
            LatticeError::NotIntersectionClosed(..)
        ));
    }

    #[test]
    fn complex_validation() {
        assert!(SimplicialComplexRep::from_facet_lists(3, &[&[1, 2], &[1, 2, 3]]).is_err());
        assert!(SimplicialComplexRep::from_facet_lists(3, &[&[1, 2]]).is_err());
        let k =
            SimplicialComplexRep::from_simplices(3, &[s(&[1, 2]), s(&[1, 2, 3]), s(&[3])]).unwrap();
        assert_eq!(k.facets(), &[s(&[1, 2, 3])]);
        assert_eq!(k.faces().len(), 7);
        assert_eq!(k.dimension(), 2);
    }
}
