use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{MultigradedFreeResolution, SparseMatrix};
use crate::field::Scalar;
use crate::monomial::Monomial;

/// Order in which cancellable entries are consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Highest homological degree first, then columns and rows in basis order.
    Canonical,
    /// Uniformly random among all cancellable entries, from a seeded stream.
    Seeded(u64),
}

/// Cancels unit entries between equal multidegrees until none remain, using
/// the canonical pivot order.
pub fn minimalize(res: &MultigradedFreeResolution) -> MultigradedFreeResolution {
    minimalize_with(res, PivotRule::Canonical)
}

pub fn minimalize_with(
    res: &MultigradedFreeResolution,
    rule: PivotRule,
) -> MultigradedFreeResolution {
    let mut work = Work::new(res);
    let mut rng = match rule {
        PivotRule::Canonical => None,
        PivotRule::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    loop {
        let pivot = match rng.as_mut() {
            None => work.first_pivot(),
            Some(rng) => work.all_pivots().choose(rng).copied(),
        };
        match pivot {
            Some((i, r, c)) => work.cancel(i, r, c),
            None => break,
        }
    }
    work.finish(res)
}

/// Differentials as columns plus a row index, with deleted basis elements
/// marked dead until the final compaction.
struct Work {
    bases: Vec<Vec<Monomial>>,
    alive: Vec<Vec<bool>>,
    // cols[i - 1][c] and rows[i - 1][r] describe D_i
    cols: Vec<Vec<BTreeMap<usize, Scalar>>>,
    rows: Vec<Vec<BTreeSet<usize>>>,
}

impl Work {
    fn new(res: &MultigradedFreeResolution) -> Self {
        let bases = res.bases().to_vec();
        let alive = bases.iter().map(|b| vec![true; b.len()]).collect();
        let mut cols = Vec::new();
        let mut rows = Vec::new();
        for i in 1..=res.length() {
            let d = res.differential(i);
            let mut row_index = vec![BTreeSet::new(); d.nrows()];
            for (r, c, _) in d.entries() {
                row_index[r].insert(c);
            }
            cols.push((0..d.ncols()).map(|c| d.column(c).clone()).collect());
            rows.push(row_index);
        }
        Work {
            bases,
            alive,
            cols,
            rows,
        }
    }

    fn is_pivot(&self, i: usize, r: usize, c: usize) -> bool {
        self.bases[i - 1][r] == self.bases[i][c]
    }

    fn first_pivot(&self) -> Option<(usize, usize, usize)> {
        for i in (1..self.bases.len()).rev() {
            for (c, col) in self.cols[i - 1].iter().enumerate() {
                if !self.alive[i][c] {
                    continue;
                }
                if let Some(&r) = col.keys().find(|&&r| self.is_pivot(i, r, c)) {
                    return Some((i, r, c));
                }
            }
        }
        None
    }

    fn all_pivots(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 1..self.bases.len() {
            for (c, col) in self.cols[i - 1].iter().enumerate() {
                if self.alive[i][c] {
                    out.extend(
                        col.keys()
                            .filter(|&&r| self.is_pivot(i, r, c))
                            .map(|&r| (i, r, c)),
                    );
                }
            }
        }
        out
    }

    /// Cancels column `c` of degree `i` against row `r` of degree `i - 1`:
    /// `D_i` becomes `δ - γ u^{-1} β` on the remaining basis, and the two
    /// basis elements leave `D_{i-1}` and `D_{i+1}`.
    fn cancel(&mut self, i: usize, r: usize, c: usize) {
        let k = i - 1;
        let u_inv = self.cols[k][c][&r]
            .inverse()
            .expect("nonzero entries are units");
        let gamma: Vec<(usize, Scalar)> = self.cols[k][c]
            .iter()
            .filter(|(&rr, _)| rr != r)
            .map(|(&rr, v)| (rr, v * &u_inv))
            .collect();
        let beta: Vec<(usize, Scalar)> = self.rows[k][r]
            .iter()
            .filter(|&&cc| cc != c)
            .map(|&cc| (cc, self.cols[k][cc][&r].clone()))
            .collect();
        for (cc, b) in &beta {
            for (rr, g) in &gamma {
                let delta = g * b;
                let col = &mut self.cols[k][*cc];
                let updated = match col.get(rr) {
                    Some(v) => v - &delta,
                    None => -delta,
                };
                if updated.is_zero() {
                    col.remove(rr);
                    self.rows[k][*rr].remove(cc);
                } else {
                    col.insert(*rr, updated);
                    self.rows[k][*rr].insert(*cc);
                }
            }
        }
        // drop column c and row r of D_i
        for rr in std::mem::take(&mut self.cols[k][c]).into_keys() {
            self.rows[k][rr].remove(&c);
        }
        for cc in std::mem::take(&mut self.rows[k][r]) {
            self.cols[k][cc].remove(&r);
        }
        // row c of D_{i+1}
        if i < self.cols.len() {
            for cc in std::mem::take(&mut self.rows[i][c]) {
                self.cols[i][cc].remove(&c);
            }
        }
        // column r of D_{i-1}
        if i >= 2 {
            for rr in std::mem::take(&mut self.cols[i - 2][r]).into_keys() {
                self.rows[i - 2][rr].remove(&r);
            }
        }
        self.alive[i][c] = false;
        self.alive[i - 1][r] = false;
    }

    fn finish(self, res: &MultigradedFreeResolution) -> MultigradedFreeResolution {
        let new_index: Vec<Vec<Option<usize>>> = self
            .alive
            .iter()
            .map(|flags| {
                let mut next = 0;
                flags
                    .iter()
                    .map(|&a| {
                        a.then(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let mut bases: Vec<Vec<Monomial>> = self
            .bases
            .into_iter()
            .zip(&self.alive)
            .map(|(b, flags)| {
                b.into_iter()
                    .zip(flags)
                    .filter(|(_, &a)| a)
                    .map(|(m, _)| m)
                    .collect()
            })
            .collect();
        let mut differentials: Vec<SparseMatrix> = self
            .cols
            .into_iter()
            .enumerate()
            .map(|(k, cols)| {
                let mut d = SparseMatrix::zeros(bases[k].len(), bases[k + 1].len());
                for (c, col) in cols.into_iter().enumerate() {
                    if let Some(nc) = new_index[k + 1][c] {
                        for (r, v) in col {
                            let nr = new_index[k][r].expect("live entries have live rows");
                            d.set(nr, nc, v);
                        }
                    }
                }
                d
            })
            .collect();
        while bases.len() > 1 && bases.last().is_some_and(Vec::is_empty) {
            bases.pop();
            differentials.pop();
        }
        MultigradedFreeResolution::from_parts(res.field(), res.nvars(), bases, differentials)
            .expect("cancellation preserves homogeneity")
    }
}
