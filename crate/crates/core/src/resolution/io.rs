use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{MultigradedFreeResolution, ResolutionError, SparseMatrix};
use crate::field::{FieldSpec, Scalar};
use crate::monomial::parse_monomial;

/// JSON form of a resolution. Matrices are dense, rows indexed by the
/// previous degree's basis, entries as scalar strings (`"3/2"`, `"4 mod 7"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDump {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub degrees: Vec<ResolutionDumpDegree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDumpDegree {
    pub degree: usize,
    pub multidegrees: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Vec<Vec<String>>>,
}

impl ResolutionDump {
    pub fn new(res: &MultigradedFreeResolution, vars: &[String]) -> Self {
        let zero = res.field().zero().to_string();
        let degrees = (0..=res.length())
            .map(|i| {
                let differential = (i >= 1).then(|| {
                    let d = res.differential(i);
                    let mut dense = vec![vec![zero.clone(); d.ncols()]; d.nrows()];
                    for (r, c, v) in d.entries() {
                        dense[r][c] = v.to_string();
                    }
                    dense
                });
                ResolutionDumpDegree {
                    degree: i,
                    multidegrees: res.basis(i).iter().map(|m| m.format_with(vars)).collect(),
                    differential,
                }
            })
            .collect();
        ResolutionDump {
            field: res.field(),
            vars: vars.to_vec(),
            degrees,
        }
    }

    pub fn to_resolution(&self) -> Result<MultigradedFreeResolution, ResolutionError> {
        let bases = self
            .degrees
            .iter()
            .map(|d| {
                d.multidegrees
                    .iter()
                    .map(|m| parse_monomial(m, &self.vars, 0))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut differentials = Vec::new();
        for (k, d) in self.degrees.iter().enumerate().skip(1) {
            let dense = d
                .differential
                .as_ref()
                .ok_or_else(|| ResolutionError::Shape(format!("degree {k} has no differential")))?;
            let ncols = bases[k].len();
            if dense.len() != bases[k - 1].len() || dense.iter().any(|row| row.len() != ncols) {
                return Err(ResolutionError::Shape(format!("d_{k} has the wrong shape")));
            }
            let mut m = SparseMatrix::zeros(dense.len(), ncols);
            for (r, row) in dense.iter().enumerate() {
                for (c, text) in row.iter().enumerate() {
                    m.set(r, c, Scalar::parse(text, self.field)?);
                }
            }
            differentials.push(m);
        }
        MultigradedFreeResolution::from_parts(self.field, self.vars.len(), bases, differentials)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dumps always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, ResolutionError> {
        serde_json::from_str(text).map_err(|e| ResolutionError::Shape(e.to_string()))
    }
}

impl MultigradedFreeResolution {
    /// Graded Betti numbers `(i, total degree) -> count` read off the basis.
    pub fn graded_betti_numbers(&self) -> BTreeMap<(usize, u64), usize> {
        let mut out = BTreeMap::new();
        for (i, basis) in self.bases().iter().enumerate() {
            for m in basis {
                *out.entry((i, m.total_degree())).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn betti_grid(&self) -> String {
        format_betti_grid(&self.graded_betti_numbers())
    }
}

/// Betti table grid in the usual layout: column `i` is the homological
/// degree, row `j` holds the counts in total degree `i + j`, zeros as `.`.
pub fn format_betti_grid(counts: &BTreeMap<(usize, u64), usize>) -> String {
    let counts: BTreeMap<(usize, u64), usize> = counts
        .iter()
        .filter(|(_, &v)| v > 0)
        .map(|(&k, &v)| (k, v))
        .collect();
    let ncols = counts.keys().map(|&(i, _)| i + 1).max().unwrap_or(1);
    let rows: Vec<u64> = {
        let lo = counts
            .keys()
            .map(|&(i, d)| d.saturating_sub(i as u64))
            .min()
            .unwrap_or(0);
        let hi = counts
            .keys()
            .map(|&(i, d)| d.saturating_sub(i as u64))
            .max()
            .unwrap_or(0);
        (lo..=hi).collect()
    };
    let mut totals = vec![0usize; ncols];
    for (&(i, _), &v) in &counts {
        totals[i] += v;
    }
    let cell = |i: usize, j: u64| match counts.get(&(i, j + i as u64)) {
        Some(v) => v.to_string(),
        None => ".".to_string(),
    };
    let width = counts
        .values()
        .chain(&totals)
        .map(|v| v.to_string().len())
        .chain(std::iter::once(ncols.to_string().len()))
        .max()
        .unwrap_or(1);
    let label_width = rows
        .iter()
        .map(|j| j.to_string().len() + 1)
        .max()
        .unwrap_or(2)
        .max(6);
    let mut out = String::new();
    let header: Vec<String> = (0..ncols).map(|i| format!("{i:>width$}")).collect();
    let _ = writeln!(out, "{:>label_width$} {}", "", header.join(" "));
    let total_cells: Vec<String> = totals.iter().map(|t| format!("{t:>width$}")).collect();
    let _ = writeln!(out, "{:>label_width$} {}", "total:", total_cells.join(" "));
    for &j in &rows {
        let cells: Vec<String> = (0..ncols)
            .map(|i| format!("{:>width$}", cell(i, j)))
            .collect();
        let _ = writeln!(out, "{:>label_width$} {}", format!("{j}:"), cells.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialIdeal;
    use crate::resolution::{minimalize, taylor_complex};

    #[test]
    fn dump_round_trip() {
        let ideal = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        for field in [FieldSpec::Rationals, FieldSpec::Prime(7)] {
            let r = minimalize(&taylor_complex(&ideal, field).unwrap());
            let dump = ResolutionDump::new(&r, ideal.vars());
            let text = dump.to_json();
            let back = ResolutionDump::from_json(&text).unwrap();
            assert_eq!(back, dump);
            assert_eq!(back.to_resolution().unwrap(), r);
        }
        let r = minimalize(&taylor_complex(&ideal, FieldSpec::Prime(7)).unwrap());
        let text = ResolutionDump::new(&r, ideal.vars()).to_json();
        assert!(text.contains("mod 7"));
        assert!(text.contains("\"a^2*b\""));
    }

    #[test]
    fn grid_layout() {
        let ideal = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        let r = minimalize(&taylor_complex(&ideal, FieldSpec::Rationals).unwrap());
        let expected = "       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n";
        assert_eq!(r.betti_grid(), expected);
    }
}
