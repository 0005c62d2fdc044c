//! Multigraded free resolutions of `R/M` with scalar differentials.
//!
//! A differential entry from a basis element of multidegree `c` to one of
//! multidegree `r` is `scalar * x^(c - r)`; only the scalar is stored, since
//! homogeneity forces the monomial factor.

mod io;
mod minimalize;
mod signature;
mod taylor;
mod verify;

use std::collections::BTreeMap;

pub use io::{format_betti_grid, ResolutionDump, ResolutionDumpDegree};
pub use minimalize::{minimalize, minimalize_with, PivotRule};
pub use signature::{
    lattice_linear_support, relabel, relabel_with, signature, signatures_equal, LatticeLinearity,
    ResolutionSignature,
};
pub use taylor::{taylor_complex, MAX_TAYLOR_GENERATORS};
pub use verify::{verify_resolution, VerificationReport, Violation};

use crate::field::{FieldError, FieldSpec, Scalar};
use crate::lattice::LatticeError;
use crate::monomial::{Monomial, MonomialError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error("{0} generators exceed the Taylor complex limit of {MAX_TAYLOR_GENERATORS}")]
    TooManyGenerators(usize),
    #[error("multidegree {0} is not an element of the lcm-lattice")]
    UnknownMultidegree(String),
    #[error("map is not order-preserving: {lower} divides {upper} but their images do not")]
    OrderViolation { lower: String, upper: String },
    #[error("entry in d_{degree} from {col} to {row} is not homogeneous")]
    NotHomogeneous {
        degree: usize,
        row: String,
        col: String,
    },
    #[error("malformed resolution: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// A sparse matrix of scalars stored by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![BTreeMap::new(); ncols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.cols[c].get(&r)
    }

    /// Sets an entry; zero removes it.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.nrows && c < self.cols.len(), "entry out of range");
        if v.is_zero() {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, Scalar> {
        &self.cols[c]
    }

    /// Nonzero entries as `(row, col, value)`, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }
}

/// A multigraded free resolution: basis multidegrees per homological degree
/// and the scalar differential matrices `D_i : F_i -> F_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultigradedFreeResolution {
    field: FieldSpec,
    nvars: usize,
    bases: Vec<Vec<Monomial>>,
    differentials: Vec<SparseMatrix>,
}

impl MultigradedFreeResolution {
    /// Assembles a resolution, checking shapes, fields, and homogeneity.
    /// `differentials[i - 1]` is `D_i`, with rows indexed by `bases[i - 1]`
    /// and columns by `bases[i]`.
    pub fn from_parts(
        field: FieldSpec,
        nvars: usize,
        bases: Vec<Vec<Monomial>>,
        differentials: Vec<SparseMatrix>,
    ) -> Result<Self, ResolutionError> {
        if bases.is_empty() {
            return Err(ResolutionError::Shape("no homological degrees".into()));
        }
        if differentials.len() + 1 != bases.len() {
            return Err(ResolutionError::Shape(format!(
                "{} bases need {} differentials, got {}",
                bases.len(),
                bases.len() - 1,
                differentials.len()
            )));
        }
        for b in bases.iter().flatten() {
            if b.nvars() != nvars {
                return Err(MonomialError::AmbientMismatch(nvars, b.nvars()).into());
            }
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.nrows() != bases[k].len() || d.ncols() != bases[k + 1].len() {
                return Err(ResolutionError::Shape(format!(
                    "d_{} has the wrong shape",
                    k + 1
                )));
            }
            for (_, _, v) in d.entries() {
                if v.field() != field {
                    return Err(FieldError::Mismatch {
                        expected: field,
                        found: v.field(),
                    }
                    .into());
                }
            }
        }
        let res = MultigradedFreeResolution {
            field,
            nvars,
            bases,
            differentials,
        };
        res.check_homogeneous()?;
        Ok(res)
    }

    pub(crate) fn check_homogeneous(&self) -> Result<(), ResolutionError> {
        for i in 1..=self.length() {
            for (r, c, _) in self.differential(i).entries() {
                let (row, col) = (&self.bases[i - 1][r], &self.bases[i][c]);
                if !row.divides(col)? {
                    return Err(ResolutionError::NotHomogeneous {
                        degree: i,
                        row: row.to_string(),
                        col: col.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The largest homological degree `p`.
    pub fn length(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, i: usize) -> &[Monomial] {
        self.bases.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn bases(&self) -> &[Vec<Monomial>] {
        &self.bases
    }

    /// `D_i` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &SparseMatrix {
        &self.differentials[i - 1]
    }

    /// Overwrites one scalar entry of `D_i`. Homogeneity is not rechecked.
    pub fn set_entry(&mut self, i: usize, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "scalar from another field");
        self.differentials[i - 1].set(r, c, v);
    }

    /// Minimal iff no nonzero entry joins two equal multidegrees.
    pub fn is_minimal(&self) -> bool {
        (1..=self.length()).all(|i| {
            self.differential(i)
                .entries()
                .all(|(r, c, _)| self.bases[i - 1][r] != self.bases[i][c])
        })
    }

    /// The same complex after replacing basis vector `idx` of `F_i` by
    /// `lambda` times itself.
    pub fn rescaled(&self, i: usize, idx: usize, lambda: &Scalar) -> Self {
        let inv = lambda.inverse().expect("rescaling factor must be nonzero");
        let mut out = self.clone();
        if i >= 1 {
            let d = &mut out.differentials[i - 1];
            for v in d.cols[idx].values_mut() {
                *v = &*v * lambda;
            }
        }
        if i < self.length() {
            let d = &mut out.differentials[i];
            for col in d.cols.iter_mut() {
                if let Some(v) = col.get_mut(&idx) {
                    *v = &*v * &inv;
                }
            }
        }
        out
    }

    /// The same complex with the basis of `F_i` reordered: new position `k`
    /// holds old basis vector `perm[k]`.
    pub fn permuted(&self, i: usize, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.bases[i].len(), "permutation length");
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut out = self.clone();
        out.bases[i] = perm.iter().map(|&old| self.bases[i][old].clone()).collect();
        if i >= 1 {
            let d = &self.differentials[i - 1];
            out.differentials[i - 1].cols = perm.iter().map(|&old| d.cols[old].clone()).collect();
        }
        if i < self.length() {
            let d = &mut out.differentials[i];
            for col in d.cols.iter_mut() {
                *col = col.iter().map(|(&r, v)| (inverse[r], v.clone())).collect();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialIdeal;

    #[test]
    fn from_parts_rejects_inhomogeneous_entries() {
        let q = FieldSpec::Rationals;
        let bases = vec![vec![Monomial::one(2)], vec![Monomial::new(vec![1, 0])]];
        let mut d = SparseMatrix::zeros(1, 1);
        d.set(0, 0, q.one());
        assert!(
            MultigradedFreeResolution::from_parts(q, 2, bases.clone(), vec![d.clone()]).is_ok()
        );
        let swapped = vec![
            vec![Monomial::new(vec![1, 0])],
            vec![Monomial::new(vec![0, 1])],
        ];
        assert!(matches!(
            MultigradedFreeResolution::from_parts(q, 2, swapped, vec![d.clone()]),
            Err(ResolutionError::NotHomogeneous { .. })
        ));
        let mut wrong_field = SparseMatrix::zeros(1, 1);
        wrong_field.set(0, 0, FieldSpec::Prime(3).one());
        assert!(matches!(
            MultigradedFreeResolution::from_parts(q, 2, bases.clone(), vec![wrong_field]),
            Err(ResolutionError::Field(_))
        ));
        assert!(MultigradedFreeResolution::from_parts(q, 2, bases, vec![]).is_err());
    }

    #[test]
    fn rescale_and_permute_keep_a_resolution() {
        let ideal = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        let q = FieldSpec::Rationals;
        let t = taylor_complex(&ideal, q).unwrap();
        let r = t.rescaled(2, 1, &q.from_i64(-3)).permuted(1, &[2, 0, 1]);
        assert!(verify_resolution(&r, &ideal).unwrap().is_ok());
        assert_eq!(r.ranks(), t.ranks());
    }
}
