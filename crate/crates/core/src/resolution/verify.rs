use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{MultigradedFreeResolution, ResolutionError};
use crate::field::Scalar;
use crate::lattice::lcm_lattice;
use crate::linalg::{rank_of_scalar_rows, SparseRow};
use crate::monomial::{Monomial, MonomialError, MonomialIdeal};

/// The first failed check of [`verify_resolution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `F_0` is not a single basis element of multidegree 1.
    BadDegreeZero,
    NotHomogeneous {
        degree: usize,
        row: Monomial,
        col: Monomial,
    },
    /// `D_{degree-1} D_degree` is nonzero on a column of this multidegree.
    NotAComplex {
        degree: usize,
        multidegree: Monomial,
    },
    /// A basis multidegree is not the label of any lattice element.
    UnknownMultidegree {
        degree: usize,
        multidegree: Monomial,
    },
    /// The strand at this lattice multidegree has homology in `degree`.
    NotExact {
        degree: usize,
        multidegree: Monomial,
    },
}

impl Violation {
    /// The multidegree at which the check failed.
    pub fn witness(&self) -> Option<&Monomial> {
        match self {
            Violation::BadDegreeZero => None,
            Violation::NotHomogeneous { col, .. } => Some(col),
            Violation::NotAComplex { multidegree, .. }
            | Violation::UnknownMultidegree { multidegree, .. }
            | Violation::NotExact { multidegree, .. } => Some(multidegree),
        }
    }

    pub fn describe(&self, vars: &[String]) -> String {
        match self {
            Violation::BadDegreeZero => "F_0 is not a single generator of multidegree 1".into(),
            Violation::NotHomogeneous { degree, row, col } => format!(
                "d_{degree} has an entry from {} to {}, which does not divide it",
                col.format_with(vars),
                row.format_with(vars)
            ),
            Violation::NotAComplex {
                degree,
                multidegree,
            } => format!(
                "d_{} d_{degree} is nonzero at multidegree {}",
                degree - 1,
                multidegree.format_with(vars)
            ),
            Violation::UnknownMultidegree {
                degree,
                multidegree,
            } => format!(
                "degree {degree} basis multidegree {} is not in the lcm-lattice",
                multidegree.format_with(vars)
            ),
            Violation::NotExact {
                degree,
                multidegree,
            } => format!(
                "strand at {} has homology in degree {degree}",
                multidegree.format_with(vars)
            ),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nvars = self.witness().map_or(0, Monomial::nvars);
        let vars: Vec<String> = (1..=nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.describe(&vars))
    }
}

/// Outcome of [`verify_resolution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Number of lattice multidegrees whose strands were checked.
    pub strands_checked: usize,
    pub violation: Option<Violation>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `res` is a multigraded free resolution of `R/ideal`:
/// homogeneity, `D D = 0`, lattice membership of multidegrees, and exactness
/// of the scalar strand below every element of the lcm-lattice.
pub fn verify_resolution(
    res: &MultigradedFreeResolution,
    ideal: &MonomialIdeal,
) -> Result<VerificationReport, ResolutionError> {
    if res.nvars() != ideal.nvars() {
        return Err(MonomialError::AmbientMismatch(ideal.nvars(), res.nvars()).into());
    }
    let fail = |violation| {
        Ok(VerificationReport {
            strands_checked: 0,
            violation: Some(violation),
        })
    };
    if res.basis(0) != [Monomial::one(res.nvars())] {
        return fail(Violation::BadDegreeZero);
    }
    if let Err(ResolutionError::NotHomogeneous { .. }) = res.check_homogeneous() {
        for i in 1..=res.length() {
            for (r, c, _) in res.differential(i).entries() {
                let (row, col) = (&res.basis(i - 1)[r], &res.basis(i)[c]);
                if !row.divides(col)? {
                    return fail(Violation::NotHomogeneous {
                        degree: i,
                        row: row.clone(),
                        col: col.clone(),
                    });
                }
            }
        }
    }
    if let Some(v) = composition_violation(res) {
        return fail(v);
    }
    let lattice = lcm_lattice(ideal)?;
    for i in 1..=res.length() {
        if let Some(m) = res
            .basis(i)
            .iter()
            .find(|m| lattice.element_of(m).is_none())
        {
            return fail(Violation::UnknownMultidegree {
                degree: i,
                multidegree: m.clone(),
            });
        }
    }
    let labels: Vec<&Monomial> = lattice.labels().map(|(_, m)| m).collect();
    let violation = labels
        .par_iter()
        .find_map_first(|&b| strand_violation(res, b));
    Ok(VerificationReport {
        strands_checked: labels.len(),
        violation,
    })
}

fn composition_violation(res: &MultigradedFreeResolution) -> Option<Violation> {
    for i in 2..=res.length() {
        let (lower, upper) = (res.differential(i - 1), res.differential(i));
        for c in 0..upper.ncols() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (&m, v) in upper.column(c) {
                for (&r, w) in lower.column(m) {
                    let term = w * v;
                    let sum = match acc.remove(&r) {
                        Some(s) => s + term,
                        None => term,
                    };
                    acc.insert(r, sum);
                }
            }
            if acc.values().any(|s| !s.is_zero()) {
                return Some(Violation::NotAComplex {
                    degree: i,
                    multidegree: res.basis(i)[c].clone(),
                });
            }
        }
    }
    None
}

/// Homology of the sub-complex spanned by basis elements whose multidegree
/// divides `b`. It must vanish, except for `b = 1` where it is `F_0`.
fn strand_violation(res: &MultigradedFreeResolution, b: &Monomial) -> Option<Violation> {
    let in_strand: Vec<Vec<bool>> = res
        .bases()
        .iter()
        .map(|basis| {
            basis
                .iter()
                .map(|m| m.divides(b).unwrap_or(false))
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = in_strand
        .iter()
        .map(|s| s.iter().filter(|&&x| x).count())
        .collect();
    let p = res.length();
    // ranks[i] = rank of the strand of D_i; D_0 and D_{p+1} are zero
    let mut ranks = vec![0usize; p + 2];
    for i in 1..=p {
        let d = res.differential(i);
        let rows = (0..d.ncols()).filter(|&c| in_strand[i][c]).map(|c| {
            d.column(c)
                .iter()
                .filter(|(&r, _)| in_strand[i - 1][r])
                .map(|(&r, v)| (r, v.clone()))
                .collect::<SparseRow<Scalar>>()
        });
        ranks[i] = rank_of_scalar_rows(res.field(), rows);
    }
    let bottom = b.is_one();
    (0..=p).find_map(|i| {
        let homology = sizes[i] - ranks[i] - ranks[i + 1];
        let expected = usize::from(bottom && i == 0);
        let extra = bottom && i > 0 && sizes[i] > 0;
        (homology != expected || extra).then(|| Violation::NotExact {
            degree: i,
            multidegree: b.clone(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::resolution::{minimalize, taylor_complex, SparseMatrix};

    #[test]
    fn corrupted_taylor_fails_at_xy() {
        let xy = MonomialIdeal::from_strs(&["x", "y"], &["x", "y"]).unwrap();
        let q = FieldSpec::Rationals;
        let mut t = taylor_complex(&xy, q).unwrap();
        assert!(verify_resolution(&t, &xy).unwrap().is_ok());
        t.set_entry(2, 0, 0, q.from_i64(5));
        let report = verify_resolution(&t, &xy).unwrap();
        let v = report.violation.unwrap();
        assert_eq!(v.witness(), Some(&Monomial::new(vec![1, 1])));
        assert_eq!(
            v.describe(xy.vars()),
            "d_1 d_2 is nonzero at multidegree x*y"
        );
    }

    #[test]
    fn missing_syzygy_is_not_exact() {
        // drop degree 2 from the Koszul complex on (x, y)
        let xy = MonomialIdeal::from_strs(&["x", "y"], &["x", "y"]).unwrap();
        let q = FieldSpec::Rationals;
        let t = taylor_complex(&xy, q).unwrap();
        let truncated = MultigradedFreeResolution::from_parts(
            q,
            2,
            t.bases()[..2].to_vec(),
            vec![t.differential(1).clone()],
        )
        .unwrap();
        let v = verify_resolution(&truncated, &xy)
            .unwrap()
            .violation
            .unwrap();
        assert_eq!(
            v,
            Violation::NotExact {
                degree: 1,
                multidegree: Monomial::new(vec![1, 1])
            }
        );
    }

    #[test]
    fn unknown_multidegree_and_bad_degree_zero() {
        let x = MonomialIdeal::from_strs(&["x", "y"], &["x"]).unwrap();
        let q = FieldSpec::Rationals;
        let mut d = SparseMatrix::zeros(1, 1);
        d.set(0, 0, q.one());
        let wrong = MultigradedFreeResolution::from_parts(
            q,
            2,
            vec![vec![Monomial::one(2)], vec![Monomial::new(vec![1, 1])]],
            vec![d],
        )
        .unwrap();
        assert!(matches!(
            verify_resolution(&wrong, &x).unwrap().violation,
            Some(Violation::UnknownMultidegree { degree: 1, .. })
        ));
        let empty = MultigradedFreeResolution::from_parts(q, 2, vec![vec![]], vec![]).unwrap();
        assert_eq!(
            verify_resolution(&empty, &x).unwrap().violation,
            Some(Violation::BadDegreeZero)
        );
    }

    #[test]
    fn minimal_resolution_verifies() {
        let ideal = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        let r = minimalize(&taylor_complex(&ideal, FieldSpec::Prime(5)).unwrap());
        let report = verify_resolution(&r, &ideal).unwrap();
        assert!(report.is_ok());
        assert_eq!(report.strands_checked, 7);
    }
}
