use std::collections::HashMap;

use super::{MultigradedFreeResolution, ResolutionError, SparseMatrix};
use crate::field::FieldSpec;
use crate::lattice::LatticeError;
use crate::monomial::{Monomial, MonomialIdeal};

/// Largest generator count accepted by [`taylor_complex`].
pub const MAX_TAYLOR_GENERATORS: usize = 20;

/// The Taylor resolution of `R/I`: degree `i` has one basis element per
/// `i`-subset `T` of the generators, of multidegree `lcm(T)`, and the entry
/// from `T` to `T \ {t}` is `(-1)^k` where `t` is the `k`-th element of `T`.
pub fn taylor_complex(
    ideal: &MonomialIdeal,
    field: FieldSpec,
) -> Result<MultigradedFreeResolution, ResolutionError> {
    if !ideal.is_minimally_generated() {
        return Err(LatticeError::NotMinimal.into());
    }
    let n = ideal.ngens();
    if n > MAX_TAYLOR_GENERATORS {
        return Err(ResolutionError::TooManyGenerators(n));
    }
    // subsets by size, each layer in increasing mask order
    let mut layers: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for mask in 0..(1u64 << n) {
        layers[mask.count_ones() as usize].push(mask);
    }
    let positions: Vec<HashMap<u64, usize>> = layers
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(k, &m)| (m, k)).collect())
        .collect();
    let bases: Vec<Vec<Monomial>> = layers
        .iter()
        .map(|layer| layer.iter().map(|&m| ideal.lcm_of_mask(m)).collect())
        .collect();
    let (one, minus_one) = (field.one(), field.from_i64(-1));
    let differentials = (1..=n)
        .map(|i| {
            let mut d = SparseMatrix::zeros(layers[i - 1].len(), layers[i].len());
            for (c, &mask) in layers[i].iter().enumerate() {
                let mut k = 0;
                for t in 0..n {
                    if mask >> t & 1 == 1 {
                        let r = positions[i - 1][&(mask & !(1 << t))];
                        d.set(
                            r,
                            c,
                            if k % 2 == 0 {
                                one.clone()
                            } else {
                                minus_one.clone()
                            },
                        );
                        k += 1;
                    }
                }
            }
            d
        })
        .collect();
    MultigradedFreeResolution::from_parts(field, ideal.nvars(), bases, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::verify_resolution;

    #[test]
    fn taylor_ranks_are_binomial() {
        let q = FieldSpec::Rationals;
        let xy = MonomialIdeal::from_strs(&["x", "y"], &["x", "y"]).unwrap();
        let t = taylor_complex(&xy, q).unwrap();
        assert_eq!(t.ranks(), vec![1, 2, 1]);
        assert!(t.is_minimal());
        let m = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        let t = taylor_complex(&m, q).unwrap();
        assert_eq!(t.ranks(), vec![1, 3, 3, 1]);
        assert!(!t.is_minimal());
        let e = MonomialIdeal::from_strs(
            &["a", "b", "c", "d"],
            &["b*d", "c*d^2", "a*c", "c^2*d", "a*b"],
        )
        .unwrap();
        let t = taylor_complex(&e, FieldSpec::Prime(2)).unwrap();
        assert_eq!(t.ranks(), vec![1, 5, 10, 10, 5, 1]);
        assert!(verify_resolution(&t, &e).unwrap().is_ok());
    }

    #[test]
    fn taylor_signs() {
        let xy = MonomialIdeal::from_strs(&["x", "y"], &["x", "y"]).unwrap();
        let t = taylor_complex(&xy, FieldSpec::Rationals).unwrap();
        let d2 = t.differential(2);
        // column {x, y}: row {y} gets +1 (drop x, position 0), row {x} gets -1
        assert_eq!(d2.get(1, 0).unwrap().to_string(), "1");
        assert_eq!(d2.get(0, 0).unwrap().to_string(), "-1");
    }

    #[test]
    fn size_guard() {
        let vars: Vec<String> = (0..21).map(|i| format!("x{i}")).collect();
        let gens: Vec<Monomial> = (0..21).map(|i| Monomial::variable(21, i)).collect();
        let big = MonomialIdeal::new(vars, gens).unwrap();
        assert!(matches!(
            taylor_complex(&big, FieldSpec::Rationals),
            Err(ResolutionError::TooManyGenerators(21))
        ));
    }
}
