use std::collections::BTreeSet;

use super::{MultigradedFreeResolution, ResolutionError};
use crate::lattice::{LcmLattice, Support};
use crate::monomial::Monomial;

/// What survives of a resolution after forgetting scalars and basis order:
/// the sorted multidegrees in each degree, and which pairs of multidegrees
/// are joined by a nonzero entry of each differential.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResolutionSignature {
    pub degrees: Vec<Vec<Monomial>>,
    /// `edges[i - 1]` holds `(row multidegree, column multidegree)` for `D_i`.
    pub edges: Vec<BTreeSet<(Monomial, Monomial)>>,
}

pub fn signature(res: &MultigradedFreeResolution) -> ResolutionSignature {
    let degrees = res
        .bases()
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort();
            b
        })
        .collect();
    let edges = (1..=res.length())
        .map(|i| {
            res.differential(i)
                .entries()
                .map(|(r, c, _)| (res.basis(i - 1)[r].clone(), res.basis(i)[c].clone()))
                .collect()
        })
        .collect();
    ResolutionSignature { degrees, edges }
}

/// Whether `phi` carries `a` onto `b`. Fails if `phi` is undefined on a
/// multidegree of `a`.
pub fn signatures_equal<F>(
    a: &ResolutionSignature,
    b: &ResolutionSignature,
    phi: F,
) -> Result<bool, ResolutionError>
where
    F: Fn(&Monomial) -> Option<Monomial>,
{
    let map =
        |m: &Monomial| phi(m).ok_or_else(|| ResolutionError::UnknownMultidegree(m.to_string()));
    if a.degrees.len() != b.degrees.len() {
        return Ok(false);
    }
    for (da, db) in a.degrees.iter().zip(&b.degrees) {
        let mut mapped = da.iter().map(map).collect::<Result<Vec<_>, _>>()?;
        mapped.sort();
        if &mapped != db {
            return Ok(false);
        }
    }
    for (ea, eb) in a.edges.iter().zip(&b.edges) {
        let mapped = ea
            .iter()
            .map(|(r, c)| Ok((map(r)?, map(c)?)))
            .collect::<Result<BTreeSet<_>, ResolutionError>>()?;
        if &mapped != eb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of [`lattice_linear_support`]; `witness` is the first entry whose
/// multidegrees are not a cover, as `(degree, row, column)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeLinearity {
    pub linear: bool,
    pub witness: Option<(usize, Monomial, Monomial)>,
}

/// Whether every nonzero entry of every differential joins a pair of
/// multidegrees that form a cover in `lattice`.
pub fn lattice_linear_support(
    res: &MultigradedFreeResolution,
    lattice: &LcmLattice,
) -> Result<LatticeLinearity, ResolutionError> {
    let element = |m: &Monomial| {
        lattice
            .element_of(m)
            .ok_or_else(|| ResolutionError::UnknownMultidegree(lattice.ideal().format_monomial(m)))
    };
    for basis in res.bases() {
        for m in basis {
            element(m)?;
        }
    }
    for i in 1..=res.length() {
        for (r, c, _) in res.differential(i).entries() {
            let (row, col) = (&res.basis(i - 1)[r], &res.basis(i)[c]);
            if !lattice.lattice().is_cover(element(row)?, element(col)?) {
                return Ok(LatticeLinearity {
                    linear: false,
                    witness: Some((i, row.clone(), col.clone())),
                });
            }
        }
    }
    Ok(LatticeLinearity {
        linear: true,
        witness: None,
    })
}

/// Moves `res` from the lcm-lattice `source` to `target` along the element
/// map `f`, replacing each multidegree `label(σ)` by `label(f(σ))`. The
/// scalar matrices are kept. `f` must be order-preserving on the
/// multidegrees that occur.
pub fn relabel<F>(
    res: &MultigradedFreeResolution,
    source: &LcmLattice,
    target: &LcmLattice,
    f: F,
) -> Result<MultigradedFreeResolution, ResolutionError>
where
    F: Fn(Support) -> Support,
{
    let image = |m: &Monomial| -> Result<Monomial, ResolutionError> {
        let sigma = source.element_of(m).ok_or_else(|| {
            ResolutionError::UnknownMultidegree(source.ideal().format_monomial(m))
        })?;
        Ok(target.label(f(sigma))?.clone())
    };
    let distinct: BTreeSet<&Monomial> = res.bases().iter().flatten().collect();
    let pairs = distinct
        .iter()
        .map(|&m| Ok((m, image(m)?)))
        .collect::<Result<Vec<_>, ResolutionError>>()?;
    for (m1, i1) in &pairs {
        for (m2, i2) in &pairs {
            if m1.divides(m2)? && !i1.divides(i2)? {
                return Err(ResolutionError::OrderViolation {
                    lower: source.ideal().format_monomial(m1),
                    upper: source.ideal().format_monomial(m2),
                });
            }
        }
    }
    relabel_with(res, target.ideal().nvars(), |_, _, m| image(m))
}

/// Replaces basis multidegrees by `g(degree, index, multidegree)`, keeping
/// the scalars, and rechecks homogeneity.
pub fn relabel_with<G>(
    res: &MultigradedFreeResolution,
    nvars: usize,
    g: G,
) -> Result<MultigradedFreeResolution, ResolutionError>
where
    G: Fn(usize, usize, &Monomial) -> Result<Monomial, ResolutionError>,
{
    let bases = res
        .bases()
        .iter()
        .enumerate()
        .map(|(i, basis)| basis.iter().enumerate().map(|(k, m)| g(i, k, m)).collect())
        .collect::<Result<Vec<Vec<Monomial>>, _>>()?;
    let differentials = (1..=res.length())
        .map(|i| res.differential(i).clone())
        .collect();
    MultigradedFreeResolution::from_parts(res.field(), nvars, bases, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::lattice::lcm_lattice;
    use crate::monomial::MonomialIdeal;
    use crate::resolution::{minimalize, taylor_complex, verify_resolution};

    #[test]
    fn signature_ignores_scaling_and_order() {
        let ideal = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        let q = FieldSpec::Rationals;
        let r = minimalize(&taylor_complex(&ideal, q).unwrap());
        let s = signature(&r);
        assert!(signatures_equal(&s, &s, |m| Some(m.clone())).unwrap());
        let moved = r
            .rescaled(1, 0, &q.from_i64(7))
            .rescaled(2, 1, &q.from_i64(-2))
            .permuted(1, &[1, 2, 0]);
        assert_eq!(signature(&moved), s);
        assert!(signatures_equal(&s, &s, |_| None).is_err());
        assert_eq!(s.edges[1].len(), 4);
    }

    #[test]
    fn linear_support_examples() {
        let q = FieldSpec::Rationals;
        let m = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        let r = minimalize(&taylor_complex(&m, q).unwrap());
        assert!(
            lattice_linear_support(&r, &lcm_lattice(&m).unwrap())
                .unwrap()
                .linear
        );
        let xyz = MonomialIdeal::from_strs(&["x", "y", "z"], &["x", "y", "z"]).unwrap();
        let k = minimalize(&taylor_complex(&xyz, q).unwrap());
        assert_eq!(k.ranks(), vec![1, 3, 3, 1]);
        assert!(
            lattice_linear_support(&k, &lcm_lattice(&xyz).unwrap())
                .unwrap()
                .linear
        );
        // the unminimized Taylor complex of M has a^2*b^2 -> a^2*b^2 entries
        let t = taylor_complex(&m, q).unwrap();
        let verdict = lattice_linear_support(&t, &lcm_lattice(&m).unwrap()).unwrap();
        assert!(!verdict.linear);
        let other = MonomialIdeal::from_strs(&["a", "b"], &["a", "b"]).unwrap();
        assert!(lattice_linear_support(&r, &lcm_lattice(&other).unwrap()).is_err());
    }

    #[test]
    fn relabel_identity_and_order_violation() {
        let xy = MonomialIdeal::from_strs(&["x", "y"], &["x", "y"]).unwrap();
        let l = lcm_lattice(&xy).unwrap();
        let t = taylor_complex(&xy, FieldSpec::Rationals).unwrap();
        assert_eq!(relabel(&t, &l, &l, |s| s).unwrap(), t);
        // swapping the two atoms is fine; sending everything to an atom is not
        let swapped =
            relabel(&t, &l, &l, |s| Support(((s.0 & 1) << 1) | ((s.0 >> 1) & 1))).unwrap();
        assert!(verify_resolution(&swapped, &xy).unwrap().is_ok());
        let collapse = relabel(&t, &l, &l, |s| {
            if s.is_empty() {
                Support::atom(0)
            } else {
                Support::atom(1)
            }
        });
        assert!(matches!(
            collapse,
            Err(ResolutionError::OrderViolation { .. })
        ));
    }
}
