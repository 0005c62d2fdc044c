//! Exact matrix rank over Q and GF(p).
//!
//! Matrices here are boundary and strand matrices: sparse, with small integer
//! entries. Rows are reduced one at a time against a table of pivot rows keyed
//! by leading column. Over Q the reduction is fraction-free (integer row
//! combinations divided by their content), first in `i64` with overflow
//! checks and, if that overflows, again in `BigInt`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{inv_mod, mul_mod, FieldError, FieldSpec, Scalar};

/// A sparse row: `(column, value)` pairs, strictly increasing in column,
/// with no zero values.
pub type SparseRow<T> = Vec<(usize, T)>;

/// A dense matrix of scalars over a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        ScalarMatrix {
            field,
            nrows,
            ncols,
            data: vec![field.zero(); nrows * ncols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every entry must belong to `field` and all
    /// rows must have the same length.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, FieldError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            for s in row {
                if s.field() != field {
                    return Err(FieldError::Mismatch {
                        expected: field,
                        found: s.field(),
                    });
                }
                data.push(s);
            }
        }
        Ok(ScalarMatrix {
            field,
            nrows,
            ncols,
            data,
        })
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("entries built in the requested field")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "scalar from another field");
        self.data[r * self.ncols + c] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.ncols.max(1)).take(self.nrows)
    }

    pub fn rank(&self) -> usize {
        exact_rank(self)
    }
}

/// Rank of a scalar matrix by exact elimination in its own field.
pub fn exact_rank(m: &ScalarMatrix) -> usize {
    let rows = m.rows().map(|row| {
        row.iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (c, s.clone()))
            .collect::<SparseRow<Scalar>>()
    });
    rank_of_scalar_rows(m.field, rows)
}

/// Rank of sparse scalar rows over `field`.
pub fn rank_of_scalar_rows<I>(field: FieldSpec, rows: I) -> usize
where
    I: IntoIterator<Item = SparseRow<Scalar>>,
{
    match field {
        FieldSpec::Prime(p) => {
            let rows = rows.into_iter().map(|r| {
                r.into_iter()
                    .map(|(c, s)| match s {
                        Scalar::Modular { value, p: q } if q == p => (c, value),
                        other => panic!("scalar over {} in a GF({p}) matrix", other.field()),
                    })
                    .collect()
            });
            rank_mod_p(rows, p)
        }
        FieldSpec::Rationals => {
            // clear denominators row by row; the row space is unchanged
            let rows: Vec<SparseRow<BigInt>> = rows
                .into_iter()
                .map(|r| {
                    let qs: Vec<(usize, num_rational::BigRational)> = r
                        .into_iter()
                        .map(|(c, s)| match s {
                            Scalar::Rational(q) => (c, q),
                            other => panic!("scalar over {} in a Q matrix", other.field()),
                        })
                        .collect();
                    let den = qs
                        .iter()
                        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
                    qs.into_iter()
                        .map(|(c, q)| (c, q.numer() * (&den / q.denom())))
                        .collect()
                })
                .collect();
            rank_integer_rows_big(rows)
        }
    }
}

/// Rank over `field` of a matrix with integer entries (e.g. a boundary
/// matrix), given as sparse rows.
pub fn rank_of_integer_rows(field: FieldSpec, rows: Vec<SparseRow<i64>>) -> usize {
    match field {
        FieldSpec::Prime(p) => {
            let pi = p as i64;
            let rows = rows.into_iter().map(|r| {
                r.into_iter()
                    .map(|(c, v)| (c, v.rem_euclid(pi) as u64))
                    .filter(|&(_, v)| v != 0)
                    .collect()
            });
            rank_mod_p(rows, p)
        }
        FieldSpec::Rationals => match rank_integer_rows_i64(&rows) {
            Some(r) => r,
            None => rank_integer_rows_big(
                rows.into_iter()
                    .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                    .collect(),
            ),
        },
    }
}

fn rank_mod_p<I>(rows: I, p: u64) -> usize
where
    I: IntoIterator<Item = SparseRow<u64>>,
{
    let mut pivots: HashMap<usize, SparseRow<u64>> = HashMap::new();
    for mut row in rows {
        row.retain(|&(_, v)| v % p != 0);
        while let Some(&(lead, lv)) = row.first() {
            match pivots.get(&lead) {
                Some(piv) => {
                    // row -= lv * piv, where piv has leading coefficient 1
                    row = axpy_mod(&row, piv, p - lv, p);
                }
                None => {
                    let inv = inv_mod(lv, p);
                    for e in row.iter_mut() {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a + k * b` over GF(p), dropping zeros.
fn axpy_mod(a: &[(usize, u64)], b: &[(usize, u64)], k: u64, p: u64) -> SparseRow<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, mul_mod(b[j].1, k, p)));
            j += 1;
        } else {
            let v = (a[i].1 + mul_mod(b[j].1, k, p)) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `x * a + y * b`, dropping zeros; `None` on overflow.
fn combine_i64(a: &[(usize, i64)], x: i64, b: &[(usize, i64)], y: i64) -> Option<SparseRow<i64>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, a[i].1.checked_mul(x)?));
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1.checked_mul(y)?));
            j += 1;
        } else {
            let v = a[i].1.checked_mul(x)?.checked_add(b[j].1.checked_mul(y)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn normalize_i64(row: &mut SparseRow<i64>) -> Option<()> {
    if row.iter().any(|&(_, v)| v == i64::MIN) {
        return None;
    }
    let g = row.iter().fold(0i64, |g, &(_, v)| g.gcd(&v));
    let sign = if row.first().is_some_and(|&(_, v)| v < 0) {
        -1
    } else {
        1
    };
    if g > 1 || sign < 0 {
        for e in row.iter_mut() {
            e.1 = e.1 / g * sign;
        }
    }
    Some(())
}

fn rank_integer_rows_i64(rows: &[SparseRow<i64>]) -> Option<usize> {
    let mut pivots: HashMap<usize, SparseRow<i64>> = HashMap::new();
    for row in rows {
        let mut row: SparseRow<i64> = row.iter().copied().filter(|&(_, v)| v != 0).collect();
        while !row.is_empty() {
            normalize_i64(&mut row)?;
            let lead = row[0].0;
            match pivots.get(&lead) {
                Some(piv) => {
                    let pv = piv[0].1;
                    let g = pv.gcd(&row[0].1);
                    let (x, y) = (pv / g, -(row[0].1 / g));
                    row = combine_i64(&row, x, piv, y)?;
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

fn combine_big(
    a: &[(usize, BigInt)],
    x: &BigInt,
    b: &[(usize, BigInt)],
    y: &BigInt,
) -> SparseRow<BigInt> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, &a[i].1 * x));
            i += 1;
        } else if take_b {
            out.push((b[j].0, &b[j].1 * y));
            j += 1;
        } else {
            let v = &a[i].1 * x + &b[j].1 * y;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn rank_integer_rows_big(rows: Vec<SparseRow<BigInt>>) -> usize {
    let mut pivots: HashMap<usize, SparseRow<BigInt>> = HashMap::new();
    for row in rows {
        let mut row: SparseRow<BigInt> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        loop {
            if row.is_empty() {
                break;
            }
            let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
            let flip = row[0].1.is_negative();
            for e in row.iter_mut() {
                e.1 = &e.1 / &g;
                if flip {
                    e.1 = -&e.1;
                }
            }
            let lead = row[0].0;
            match pivots.get(&lead) {
                Some(piv) => {
                    let g = piv[0].1.gcd(&row[0].1);
                    let x = &piv[0].1 / &g;
                    let y = -(&row[0].1 / &g);
                    row = combine_big(&row, &x, piv, &y);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rank_examples() {
        assert_eq!(ScalarMatrix::identity(Q, 3).rank(), 3);
        assert_eq!(ScalarMatrix::zeros(Q, 2, 4).rank(), 0);
        let m = [vec![2, 4], vec![1, 2]];
        assert_eq!(ScalarMatrix::from_i64_rows(Q, &m).rank(), 1);
        // mod 2 this is [[0, 0], [1, 0]]
        assert_eq!(
            ScalarMatrix::from_i64_rows(FieldSpec::Prime(2), &m).rank(),
            1
        );
        let even = [vec![2, 4], vec![4, 2]];
        assert_eq!(ScalarMatrix::from_i64_rows(Q, &even).rank(), 2);
        assert_eq!(
            ScalarMatrix::from_i64_rows(FieldSpec::Prime(2), &even).rank(),
            0
        );
        assert_eq!(ScalarMatrix::zeros(Q, 0, 0).rank(), 0);
    }

    #[test]
    fn mixed_fields_rejected() {
        let rows = vec![vec![Q.one(), FieldSpec::Prime(3).one()]];
        assert!(matches!(
            ScalarMatrix::from_rows(Q, rows),
            Err(FieldError::Mismatch { .. })
        ));
    }

    #[test]
    fn rational_entries() {
        let half = Scalar::parse("1/2", Q).unwrap();
        let third = Scalar::parse("1/3", Q).unwrap();
        let m = ScalarMatrix::from_rows(
            Q,
            vec![
                vec![half.clone(), third.clone()],
                vec![Q.one(), Scalar::parse("2/3", Q).unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn bigint_fallback_agrees() {
        // entries large enough that i64 cross-multiplication overflows
        let big = 3_000_000_007i64;
        let rows = vec![
            vec![(0, big), (1, 1), (2, 5)],
            vec![(0, big - 1), (1, big), (2, 7)],
            vec![(0, 1), (1, big - 2), (2, big)],
        ];
        let r = rank_of_integer_rows(Q, rows.clone());
        let big_rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
            .collect();
        assert_eq!(r, rank_integer_rows_big(big_rows));
        assert_eq!(r, 3);
    }

    /// Dense Gaussian elimination over rationals, the textbook way.
    #[allow(clippy::needless_range_loop)]
    fn naive_rank(rows: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for k in 0..ncols {
                        let t = &m[rank][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_naive(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 0..7)) {
            let sparse: Vec<SparseRow<i64>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
                .collect();
            let q = rank_of_integer_rows(Q, sparse.clone());
            prop_assert_eq!(q, naive_rank(&rows));
            for p in [2u64, 3, 5] {
                prop_assert!(rank_of_integer_rows(FieldSpec::Prime(p), sparse.clone()) <= q);
            }
        }
    }
}
