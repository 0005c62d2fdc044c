//! Order complexes and reduced simplicial homology over a field.
//!
//! Faces are enumerated explicitly; the complexes that arise from intervals
//! of small lattices are tiny. The empty face is part of every complex, so
//! `H̃_{-1}` is 1 exactly for the empty complex.

use std::collections::HashMap;
use std::fmt::Write;

use crate::field::FieldSpec;
use crate::lattice::{Poset, SimplicialComplexRep};
use crate::linalg::{rank_of_integer_rows, SparseRow};

/// Complexes with more faces than this are refused.
pub const MAX_FACES: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("complex has more than {MAX_FACES} faces")]
    TooManyFaces,
}

/// A finite simplicial complex with its nonempty faces listed by dimension.
/// Each face is a strictly increasing list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceComplex {
    nverts: usize,
    faces: Vec<Vec<Vec<u32>>>,
}

/// The order complex of a poset: its faces are the chains.
pub type OrderComplex = FaceComplex;

/// Builds the order complex of `poset`. Vertex `k` is the `k`-th element in
/// canonical order, which is a linear extension, so every chain is already
/// sorted.
pub fn order_complex(poset: &Poset) -> Result<OrderComplex, HomologyError> {
    let els = poset.elements();
    let above: Vec<Vec<u32>> = (0..els.len())
        .map(|i| {
            (i + 1..els.len())
                .filter(|&j| els[i].is_proper_subset(els[j]))
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut total = 0usize;
    let mut stack: Vec<Vec<u32>> = (0..els.len() as u32).rev().map(|v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        total += 1;
        if total > MAX_FACES {
            return Err(HomologyError::TooManyFaces);
        }
        let last = *chain.last().expect("chains are nonempty") as usize;
        for &next in above[last].iter().rev() {
            let mut longer = chain.clone();
            longer.push(next);
            stack.push(longer);
        }
        let dim = chain.len() - 1;
        if faces.len() <= dim {
            faces.resize(dim + 1, Vec::new());
        }
        faces[dim].push(chain);
    }
    for layer in &mut faces {
        layer.sort();
    }
    Ok(FaceComplex {
        nverts: els.len(),
        faces,
    })
}

impl FaceComplex {
    pub fn from_simplicial(complex: &SimplicialComplexRep) -> FaceComplex {
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
        for face in complex.faces() {
            let verts: Vec<u32> = face.atoms().map(|v| v as u32).collect();
            let dim = verts.len() - 1;
            if faces.len() <= dim {
                faces.resize(dim + 1, Vec::new());
            }
            faces[dim].push(verts);
        }
        for layer in &mut faces {
            layer.sort();
        }
        FaceComplex {
            nverts: complex.nverts(),
            faces,
        }
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    /// Dimension of the complex; -1 for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    /// Faces of dimension `j` (the empty face for `j = -1`).
    pub fn faces(&self, j: i64) -> &[Vec<u32>] {
        static EMPTY_FACE: [Vec<u32>; 1] = [Vec::new()];
        match j {
            -1 => &EMPTY_FACE,
            j if j >= 0 && (j as usize) < self.faces.len() => &self.faces[j as usize],
            _ => &[],
        }
    }

    /// Face counts `f_{-1}, f_0, ..., f_dim`.
    pub fn face_counts(&self) -> Vec<usize> {
        std::iter::once(1)
            .chain(self.faces.iter().map(Vec::len))
            .collect()
    }

    pub fn reduced_euler_characteristic(&self) -> i64 {
        (-1..=self.dimension())
            .map(|j| sign(j) * self.faces(j).len() as i64)
            .sum()
    }

    /// Rows of the boundary map from `j`-faces to `(j-1)`-faces, one sparse
    /// row per `j`-face (the transpose of the usual matrix; same rank).
    pub fn boundary_rows(&self, j: i64) -> Vec<SparseRow<i64>> {
        if j < 0 {
            return Vec::new();
        }
        let lower: HashMap<&[u32], usize> = self
            .faces(j - 1)
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        self.faces(j)
            .iter()
            .map(|face| {
                let mut row: SparseRow<i64> = (0..face.len())
                    .map(|k| {
                        let mut facet = face.clone();
                        facet.remove(k);
                        let col = lower[facet.as_slice()];
                        (col, if k % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect()
    }

    /// Plain-text dump of the boundary matrix `∂_j` (rows are `(j-1)`-faces).
    pub fn boundary_matrix_text(&self, j: i64) -> String {
        let rows = self.faces(j - 1).len();
        let cols = self.faces(j).len();
        let mut dense = vec![vec![0i64; cols]; rows];
        for (c, row) in self.boundary_rows(j).into_iter().enumerate() {
            for (r, v) in row {
                dense[r][c] = v;
            }
        }
        let mut out = format!("# boundary d_{j}: {rows} x {cols}\n");
        for row in dense {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

fn sign(j: i64) -> i64 {
    if j.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `dim H̃_j` for `j >= -1`, over one field. Stored without trailing zeros,
/// so equality compares homology and not the dimension of the complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedHomologyDims {
    field: FieldSpec,
    dims: Vec<u64>,
}

impl ReducedHomologyDims {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `dim H̃_j`; zero outside the stored range.
    pub fn get(&self, j: i64) -> u64 {
        if j < -1 {
            return 0;
        }
        self.dims.get((j + 1) as usize).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(j, dim)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(k, &d)| (k as i64 - 1, d))
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.nonzero().map(|(j, d)| sign(j) * d as i64).sum()
    }

    /// Dims as a vector starting at `j = -1`, without trailing zeros.
    pub fn as_vec(&self) -> Vec<u64> {
        self.dims.clone()
    }
}

/// Reduced homology dimensions of `complex` over `field`, from exact ranks
/// of the boundary maps (including the augmentation `C_0 -> k`).
pub fn reduced_homology_dims(complex: &FaceComplex, field: FieldSpec) -> ReducedHomologyDims {
    let top = complex.dimension();
    // ranks[j + 1] = rank of ∂_j : C_j -> C_{j-1}, for j = -1 ..= top + 1
    let ranks: Vec<usize> = (-1..=top + 1)
        .map(|j| match j {
            -1 => 0,
            0 => usize::from(!complex.faces(0).is_empty()),
            j => rank_of_integer_rows(field, complex.boundary_rows(j)),
        })
        .collect();
    let mut dims: Vec<u64> = (-1..=top)
        .map(|j| {
            let k = (j + 1) as usize;
            (complex.faces(j).len() - ranks[k] - ranks[k + 1]) as u64
        })
        .collect();
    while dims.last() == Some(&0) {
        dims.pop();
    }
    ReducedHomologyDims { field, dims }
}

/// Reduced homology of the order complex of `poset`.
pub fn poset_homology(
    poset: &Poset,
    field: FieldSpec,
) -> Result<ReducedHomologyDims, HomologyError> {
    Ok(reduced_homology_dims(&order_complex(poset)?, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Support;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::Prime(2);

    fn s(atoms: &[usize]) -> Support {
        Support::from_atoms(atoms.iter().copied())
    }

    #[test]
    fn order_complex_examples() {
        let two_points = Poset::new([s(&[1]), s(&[2])]);
        let k = order_complex(&two_points).unwrap();
        assert_eq!(k.face_counts(), vec![1, 2]);
        let chain = Poset::new([s(&[1]), s(&[1, 2]), s(&[1, 2, 3])]);
        let k = order_complex(&chain).unwrap();
        assert_eq!(k.face_counts(), vec![1, 3, 3, 1]);
        let empty = order_complex(&Poset::new([])).unwrap();
        assert_eq!(empty.dimension(), -1);
        assert_eq!(reduced_homology_dims(&empty, Q).as_vec(), vec![1]);
    }

    #[test]
    fn homology_examples() {
        let two_points = order_complex(&Poset::new([s(&[1]), s(&[2])])).unwrap();
        assert_eq!(reduced_homology_dims(&two_points, Q).as_vec(), vec![0, 1]);
        let hollow =
            SimplicialComplexRep::from_facet_lists(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        let h = reduced_homology_dims(&FaceComplex::from_simplicial(&hollow), Q);
        assert_eq!(h.as_vec(), vec![0, 0, 1]);
        assert_eq!(h.get(1), 1);
        let solid = SimplicialComplexRep::from_facet_lists(3, &[&[1, 2, 3]]).unwrap();
        assert!(reduced_homology_dims(&FaceComplex::from_simplicial(&solid), F2).is_acyclic());
        // a filled triangle glued on at a vertex raises the dimension only
        let flagged =
            SimplicialComplexRep::from_facet_lists(5, &[&[1, 2], &[1, 3], &[2, 3], &[3, 4, 5]])
                .unwrap();
        assert_eq!(
            reduced_homology_dims(&FaceComplex::from_simplicial(&flagged), Q),
            h
        );
    }

    #[test]
    fn boundary_dump() {
        let edge = SimplicialComplexRep::from_facet_lists(2, &[&[1, 2]]).unwrap();
        let text = FaceComplex::from_simplicial(&edge).boundary_matrix_text(1);
        assert_eq!(text, "# boundary d_1: 2 x 1\n-1\n1\n");
    }
}
