use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

use super::{
    betti_table, is_concentrated, is_lattice_linear, is_rigid, ClassifyError, RigidityViolation,
};
use crate::field::FieldSpec;
use crate::lattice::{lcm_lattice, LcmLattice, Support};
use crate::monomial::MonomialIdeal;
use crate::resolution::format_betti_grid;

/// A yes/no answer with an optional human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub value: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub certificate_only: bool,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.value { "yes" } else { "no" })?;
        match (&self.witness, self.certificate_only) {
            (Some(w), true) => write!(f, " ({w}; certificate only, ideal is not rigid)"),
            (Some(w), false) => write!(f, " ({w})"),
            (None, true) => f.write_str(" (certificate only, ideal is not rigid)"),
            (None, false) => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub degree: usize,
    pub support: Vec<usize>,
    pub multidegree: String,
    pub value: u64,
}

/// Betti data and the three predicates for one ideal over one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub ideal: String,
    pub field: FieldSpec,
    pub lattice_size: usize,
    pub totals: Vec<u64>,
    pub betti: Vec<BettiEntry>,
    pub grid: String,
    pub rigid: Flag,
    pub concentrated: Flag,
    pub lattice_linear: Flag,
}

fn element(l: &LcmLattice, s: Support) -> String {
    format!("{} {}", l.format_label(s), s)
}

pub fn classify_ideal(
    ideal: &MonomialIdeal,
    field: FieldSpec,
) -> Result<ClassificationReport, ClassifyError> {
    let lcm = lcm_lattice(ideal)?;
    let table = betti_table(lcm.lattice(), field)?;
    let betti = table
        .entries()
        .map(|((degree, s), value)| BettiEntry {
            degree,
            support: s.atom_list(),
            multidegree: lcm.format_label(s),
            value,
        })
        .collect();
    let rigidity = is_rigid(&table);
    let rigid = Flag {
        value: rigidity.rigid,
        witness: rigidity.violation.map(|v| match v {
            RigidityViolation::R1 {
                degree,
                element: s,
                value,
            } => {
                format!("beta_{degree} = {value} at {}", element(&lcm, s))
            }
            RigidityViolation::R2 {
                degree,
                lower,
                upper,
            } => format!(
                "degree {degree} Betti multidegrees {} < {}",
                element(&lcm, lower),
                element(&lcm, upper)
            ),
        }),
        certificate_only: false,
    };
    let conc = is_concentrated(&table);
    let concentrated = Flag {
        value: conc.concentrated,
        witness: conc.witness.map(|(p, t)| {
            format!(
                "witness p = {} lies below the contributing {}",
                element(&lcm, p),
                element(&lcm, t)
            )
        }),
        certificate_only: false,
    };
    let linear = is_lattice_linear(ideal, field)?;
    let lattice_linear = Flag {
        value: linear.linear,
        witness: linear.witness.map(|(i, row, col)| {
            format!(
                "d_{i} entry from {} to {} is not a cover",
                ideal.format_monomial(&col),
                ideal.format_monomial(&row)
            )
        }),
        certificate_only: linear.certificate_only,
    };
    Ok(ClassificationReport {
        ideal: ideal.to_string(),
        field,
        lattice_size: lcm.lattice().len(),
        totals: table.totals(),
        betti,
        grid: format_betti_grid(&table.graded(&lcm)),
        rigid,
        concentrated,
        lattice_linear,
    })
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Multidegrees with a nonzero Betti number in degree `i`.
    pub fn multidegrees(&self, i: usize) -> Vec<&str> {
        self.betti
            .iter()
            .filter(|e| e.degree == i)
            .map(|e| e.multidegree.as_str())
            .collect()
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let _ = writeln!(out, "ideal: {}", self.ideal);
        let _ = writeln!(out, "field: {}", self.field);
        let _ = writeln!(out, "lcm-lattice: {} elements", self.lattice_size);
        out.push_str(&self.grid);
        let totals: Vec<String> = self.totals.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "totals: {}", totals.join(" "));
        for i in 1..self.totals.len() {
            let degrees: Vec<String> = self
                .betti
                .iter()
                .filter(|e| e.degree == i)
                .map(|e| match e.value {
                    1 => e.multidegree.clone(),
                    v => format!("{}^{v}", e.multidegree),
                })
                .collect();
            let _ = writeln!(out, "degree {i}: {}", degrees.join(", "));
        }
        let _ = writeln!(out, "rigid: {}", self.rigid);
        let _ = writeln!(out, "concentrated: {}", self.concentrated);
        let _ = writeln!(out, "lattice-linear: {}", self.lattice_linear);
        f.write_str(&out)
    }
}
