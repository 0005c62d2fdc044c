use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{down_covers, leq_in_ln, up_covers, Atlas, LnKey, StratumRecord};
use crate::classify::{
    betti_table, betti_table_cached, is_concentrated, is_rigid, BettiTable, ClassifyError,
    HomologyCache,
};
use crate::field::{FieldSpec, Scalar};
use crate::homology::{reduced_homology_dims, FaceComplex};
use crate::lattice::{
    augmented_face_lattice, lcm_lattice, FiniteAtomicLattice, LatticeError, LcmLattice,
    NotALattice, SimplicialComplexRep, Support,
};
use crate::monomial::{random_ideal, MonomialIdeal};
use crate::resolution::{
    lattice_linear_support, minimalize, minimalize_with, relabel, relabel_with, signature,
    signatures_equal, taylor_complex, verify_resolution, MultigradedFreeResolution, PivotRule,
    ResolutionError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("{0} is not below {1} in L(n)")]
    NotBelow(String, String),
    #[error("different strata: {0:?} and {1:?}")]
    DifferentStrata(Vec<u64>, Vec<u64>),
    #[error("{0} is not rigid")]
    NotRigid(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("{0}")]
    NotALattice(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl From<NotALattice> for TransferError {
    fn from(e: NotALattice) -> Self {
        TransferError::NotALattice(e.to_string())
    }
}

/// Outcome of one theorem sweep.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
    /// Outcomes outside the theorem's hypotheses, recorded but not judged.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            checked: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checked, {} violations",
            self.name,
            self.checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            write!(f, "\n  violation: {v}")?;
        }
        Ok(())
    }
}

fn family_leq(p: &LnKey, q: &LnKey) -> bool {
    p.n() == q.n() && p.len() <= q.len() && p.masks().iter().all(|&m| q.contains(Support(m)))
}

fn padded_leq(a: &[u64], b: &[u64]) -> bool {
    (0..a.len().max(b.len())).all(|i| a.get(i).unwrap_or(&0) <= b.get(i).unwrap_or(&0))
}

/// Total Betti numbers weakly increase along every comparable pair.
pub fn check_betti_monotonicity(atlas: &Atlas) -> CheckReport {
    let keys: Vec<LnKey> = atlas
        .records
        .iter()
        .map(|r| r.key.parse().expect("atlas keys parse"))
        .collect();
    let parts: Vec<CheckReport> = (0..keys.len())
        .into_par_iter()
        .map(|i| {
            let mut report = CheckReport::new("betti-monotonicity");
            for j in 0..keys.len() {
                if i != j && family_leq(&keys[i], &keys[j]) {
                    report.checked += 1;
                    let (bp, bq) = (&atlas.records[i].betti, &atlas.records[j].betti);
                    if !padded_leq(bp, bq) {
                        report
                            .violations
                            .push(format!("{} <= {} but {bp:?} > {bq:?}", keys[i], keys[j]));
                    }
                }
            }
            report
        })
        .collect();
    let mut report = CheckReport::new("betti-monotonicity");
    parts.into_iter().for_each(|p| report.absorb(p));
    report
}

/// Within a stratum, a lattice above a rigid one is rigid: checked on
/// every cover and on every comparable pair.
pub fn verify_rigid_up_closure(stratum: &StratumRecord) -> CheckReport {
    let mut report = CheckReport::new("rigid-up-closure");
    for &(lo, up) in &stratum.edges {
        if stratum.rigid[lo] {
            report.checked += 1;
            if !stratum.rigid[up] {
                report.violations.push(format!(
                    "cover {} < {}: lower rigid, upper not",
                    stratum.members[lo], stratum.members[up]
                ));
            }
        }
    }
    let m = &stratum.members;
    for i in (0..m.len()).filter(|&i| stratum.rigid[i]) {
        for j in (0..m.len()).filter(|&j| j != i) {
            if family_leq(&m[i], &m[j]) {
                report.checked += 1;
                if !stratum.rigid[j] {
                    report
                        .violations
                        .push(format!("{} < {}: lower rigid, upper not", m[i], m[j]));
                }
            }
        }
    }
    report
}

/// The lcm-lattice of the coordinatization of `lattice` and its minimal
/// resolution.
pub fn minimal_resolution(
    lattice: &FiniteAtomicLattice,
    field: FieldSpec,
) -> Result<(LcmLattice, MultigradedFreeResolution), ResolutionError> {
    let lcm = LcmLattice::from_lattice(lattice);
    let res = minimalize(&taylor_complex(lcm.ideal(), field)?);
    Ok((lcm, res))
}

/// For rigid members, concentrated iff the minimal resolution has lattice
/// linear support. Non-rigid members are recorded as notes.
pub fn check_concentrated_iff_lattice_linear(
    atlas: &Atlas,
    rigid_only: bool,
) -> Result<CheckReport, TransferError> {
    let parts: Vec<CheckReport> = atlas
        .records
        .par_iter()
        .filter(|r| r.rigid || !rigid_only)
        .map(|r| {
            let mut report = CheckReport::new("concentrated-iff-lattice-linear");
            let key: LnKey = r.key.parse()?;
            let (lcm, res) = minimal_resolution(&key.to_lattice(), atlas.field)?;
            let linear = lattice_linear_support(&res, &lcm)?.linear;
            if r.rigid {
                report.checked += 1;
                if linear != r.concentrated {
                    report.violations.push(format!(
                        "{}: concentrated {} but lattice-linear {}",
                        r.key, r.concentrated, linear
                    ));
                }
            } else if linear != r.concentrated {
                report.notes.push(format!(
                    "{} (not rigid): concentrated {}, this basis lattice-linear {}",
                    r.key, r.concentrated, linear
                ));
            }
            Ok(report)
        })
        .collect::<Result<_, TransferError>>()?;
    let mut report = CheckReport::new("concentrated-iff-lattice-linear");
    parts.into_iter().for_each(|p| report.absorb(p));
    Ok(report)
}

/// Moving from `P` to a cover `Q = P ∪ {q}` leaves `β_{i,σ}` unchanged for
/// every `σ` below or incomparable to `q`.
pub fn check_cover_invariance(
    keys: &[LnKey],
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<CheckReport, ClassifyError> {
    let parts: Vec<CheckReport> = keys
        .par_iter()
        .map(|key| {
            let mut report = CheckReport::new("cover-invariance");
            let p = key.to_lattice();
            let tp = betti_table_cached(&p, field, cache)?;
            for q in up_covers(&p) {
                let added = *q
                    .elements()
                    .iter()
                    .find(|&&s| !p.contains(s))
                    .expect("a cover adds one element");
                let tq = betti_table_cached(&q, field, cache)?;
                for &s in p.elements().iter().filter(|&&s| !added.is_subset(s)) {
                    report.checked += 1;
                    let degrees = tp.totals().len().max(tq.totals().len());
                    if (0..degrees).any(|i| tp.get(i, s) != tq.get(i, s)) {
                        report
                            .violations
                            .push(format!("{key} + {added}: Betti numbers at {s} changed"));
                    }
                }
            }
            Ok(report)
        })
        .collect::<Result<_, ClassifyError>>()?;
    let mut report = CheckReport::new("cover-invariance");
    parts.into_iter().for_each(|p| report.absorb(p));
    Ok(report)
}

fn table(
    l: &FiniteAtomicLattice,
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<BettiTable, ClassifyError> {
    betti_table_cached(l, field, cache)
}

fn check_hypotheses(
    q: &FiniteAtomicLattice,
    p: &FiniteAtomicLattice,
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<BettiTable, TransferError> {
    let (kq, kp) = (LnKey::from_lattice(q), LnKey::from_lattice(p));
    if !leq_in_ln(p, q)? {
        return Err(TransferError::NotBelow(kp.to_string(), kq.to_string()));
    }
    let (tq, tp) = (table(q, field, cache)?, table(p, field, cache)?);
    if tq.totals() != tp.totals() {
        return Err(TransferError::DifferentStrata(tp.totals(), tq.totals()));
    }
    if !is_rigid(&tp).rigid {
        return Err(TransferError::NotRigid(kp.to_string()));
    }
    Ok(tq)
}

/// The minimal resolution of `Q`'s coordinatization, relabelled along
/// `σ -> closure_P(σ)`. Requires `P <= Q` in one stratum with `P` rigid;
/// the result is checked to be a minimal resolution of `P`'s
/// coordinatization.
pub fn transfer_resolution(
    q: &FiniteAtomicLattice,
    p: &FiniteAtomicLattice,
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<MultigradedFreeResolution, TransferError> {
    check_hypotheses(q, p, field, cache)?;
    let (lcm_q, res_q) = minimal_resolution(q, field)?;
    let lcm_p = LcmLattice::from_lattice(p);
    transfer_with(&res_q, &lcm_q, &lcm_p)
}

fn transfer_with(
    res_q: &MultigradedFreeResolution,
    lcm_q: &LcmLattice,
    lcm_p: &LcmLattice,
) -> Result<MultigradedFreeResolution, TransferError> {
    let p = lcm_p.lattice();
    let moved = relabel(res_q, lcm_q, lcm_p, |s| p.closure(s))?;
    let report = verify_resolution(&moved, lcm_p.ideal())?;
    if let Some(v) = report.violation {
        return Err(TransferError::Postcondition(format!(
            "transferred complex: {}",
            v.describe(lcm_p.ideal().vars())
        )));
    }
    if !moved.is_minimal() {
        return Err(TransferError::Postcondition(
            "transferred complex is not minimal".into(),
        ));
    }
    Ok(moved)
}

/// Carries a resolution of `P` up to `Q`: each basis element of degree `i`
/// and element `σ` goes to the unique degree-`i` Betti element `τ` of `Q`
/// with `closure_P(τ) = σ`.
pub fn lift_resolution(
    res_p: &MultigradedFreeResolution,
    lcm_p: &LcmLattice,
    lcm_q: &LcmLattice,
    table_q: &BettiTable,
) -> Result<MultigradedFreeResolution, TransferError> {
    let p = lcm_p.lattice();
    relabel_with(res_p, lcm_q.ideal().nvars(), |i, _, m| {
        let sigma = lcm_p
            .element_of(m)
            .ok_or_else(|| ResolutionError::UnknownMultidegree(lcm_p.ideal().format_monomial(m)))?;
        let above: Vec<Support> = table_q
            .betti_elements(i)
            .into_iter()
            .filter(|&t| p.closure(t) == sigma)
            .collect();
        match above.as_slice() {
            [tau] => Ok(lcm_q.label(*tau)?.clone()),
            _ => Err(ResolutionError::Shape(format!(
                "{} Betti elements of degree {i} lie over {sigma}",
                above.len()
            ))),
        }
    })
    .map_err(TransferError::from)
}

/// Theorem check on every comparable rigid pair `P < Q` of each stratum:
/// the transfer of `Q`'s minimal resolution verifies and matches `P`'s
/// signature under the closure map, and the lift of `P`'s resolution
/// matches `Q`'s.
pub fn check_transfers(atlas: &Atlas, cache: &HomologyCache) -> Result<CheckReport, TransferError> {
    let field = atlas.field;
    let mut pairs: Vec<(LnKey, LnKey)> = Vec::new();
    let mut involved: BTreeSet<LnKey> = BTreeSet::new();
    for s in atlas.strata.values() {
        for (_, pk) in s.members.iter().enumerate().filter(|&(i, _)| s.rigid[i]) {
            for qk in s
                .members
                .iter()
                .filter(|&qk| qk != pk && family_leq(pk, qk))
            {
                pairs.push((pk.clone(), qk.clone()));
                involved.insert(pk.clone());
                involved.insert(qk.clone());
            }
        }
    }
    let resolved: HashMap<LnKey, (LcmLattice, MultigradedFreeResolution, BettiTable)> = involved
        .into_par_iter()
        .map(|k| {
            let l = k.to_lattice();
            let (lcm, res) = minimal_resolution(&l, field)?;
            let t = table(&l, field, cache)?;
            Ok((k, (lcm, res, t)))
        })
        .collect::<Result<_, TransferError>>()?;
    let parts: Vec<CheckReport> = pairs
        .par_iter()
        .map(|(pk, qk)| {
            let mut report = CheckReport::new("resolution-transfer");
            report.checked += 1;
            let (lcm_p, res_p, _) = &resolved[pk];
            let (lcm_q, res_q, table_q) = &resolved[qk];
            let p = lcm_p.lattice();
            let forward = transfer_with(res_q, lcm_q, lcm_p).and_then(|_| {
                let phi = |m: &crate::monomial::Monomial| {
                    lcm_q
                        .element_of(m)
                        .and_then(|s| lcm_p.label(p.closure(s)).ok().cloned())
                };
                Ok(signatures_equal(&signature(res_q), &signature(res_p), phi)?)
            });
            match forward {
                Ok(true) => {}
                Ok(false) => report
                    .violations
                    .push(format!("{qk} -> {pk}: signatures differ")),
                Err(e) => report.violations.push(format!("{qk} -> {pk}: {e}")),
            }
            let backward = lift_resolution(res_p, lcm_p, lcm_q, table_q).and_then(|lifted| {
                let ok = verify_resolution(&lifted, lcm_q.ideal())?.is_ok();
                Ok(ok && signature(&lifted) == signature(res_q))
            });
            match backward {
                Ok(true) => {}
                Ok(false) => report
                    .violations
                    .push(format!("{pk} -> {qk}: lifted resolution differs")),
                Err(e) => report.violations.push(format!("{pk} -> {qk}: {e}")),
            }
            report
        })
        .collect();
    let mut report = CheckReport::new("resolution-transfer");
    parts.into_iter().for_each(|p| report.absorb(p));
    Ok(report)
}

/// Breadth-first search down from `q` through covers that stay in its
/// stratum, returning the first member that is rigid and concentrated.
pub fn find_concentrated_below(
    q: &FiniteAtomicLattice,
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<Option<FiniteAtomicLattice>, TransferError> {
    let tq = table(q, field, cache)?;
    if !is_rigid(&tq).rigid {
        return Err(TransferError::NotRigid(LnKey::from_lattice(q).to_string()));
    }
    let betti = tq.totals();
    let mut seen: BTreeSet<LnKey> = BTreeSet::from([LnKey::from_lattice(q)]);
    let mut queue: VecDeque<FiniteAtomicLattice> = VecDeque::from([q.clone()]);
    while let Some(l) = queue.pop_front() {
        let t = table(&l, field, cache)?;
        if is_rigid(&t).rigid && is_concentrated(&t).concentrated {
            return Ok(Some(l));
        }
        for d in down_covers(&l) {
            if seen.insert(LnKey::from_lattice(&d)) && table(&d, field, cache)?.totals() == betti {
                queue.push_back(d);
            }
        }
    }
    Ok(None)
}

/// Acyclicity of a complex and rigidity of its augmented face lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRigidityReport {
    pub acyclic: bool,
    pub rigid: bool,
    /// Reduced homology dimensions from degree -1.
    pub homology: Vec<u64>,
    /// Acyclic but not rigid: contradicts the proposition, so a bug.
    pub violation: bool,
}

pub fn face_lattice_rigidity_check(
    complex: &SimplicialComplexRep,
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<FaceRigidityReport, TransferError> {
    let lattice = augmented_face_lattice(complex)?;
    let homology = reduced_homology_dims(&FaceComplex::from_simplicial(complex), field);
    let acyclic = homology.is_acyclic();
    let rigid = is_rigid(&table(&lattice, field, cache)?).rigid;
    Ok(FaceRigidityReport {
        acyclic,
        rigid,
        homology: homology.as_vec(),
        violation: acyclic && !rigid,
    })
}

/// A random simplicial complex on 2 to `max_verts` vertices: a few random
/// faces, isolated points for uncovered vertices, and with probability one
/// half a cone over the result.
pub fn random_complex<R: Rng>(rng: &mut R, max_verts: usize) -> SimplicialComplexRep {
    let max_verts = max_verts.max(2);
    let cone = rng.gen_bool(0.5);
    let base = if cone {
        rng.gen_range(1..max_verts)
    } else {
        rng.gen_range(2..=max_verts)
    };
    let mut faces: Vec<Support> = (0..rng.gen_range(1..=4))
        .map(|_| Support(rng.gen_range(1..1u64 << base)))
        .collect();
    faces.extend((0..base).map(Support::atom));
    if cone {
        faces = faces
            .into_iter()
            .map(|f| f.union(Support::atom(base)))
            .collect();
        SimplicialComplexRep::from_simplices(base + 1, &faces).expect("cones cover their vertices")
    } else {
        SimplicialComplexRep::from_simplices(base, &faces).expect("every vertex is a face")
    }
}

/// `count` acyclic complexes over `field` drawn from a seeded stream.
pub fn random_acyclic_complexes(
    seed: u64,
    count: usize,
    max_verts: usize,
    field: FieldSpec,
) -> Vec<SimplicialComplexRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = random_complex(&mut rng, max_verts);
        if reduced_homology_dims(&FaceComplex::from_simplicial(&k), field).is_acyclic() {
            out.push(k);
        }
    }
    out
}

/// Rigidity of the augmented face lattice for `count` random acyclic
/// complexes whose augmented face posets are lattices.
pub fn check_face_rigidity(
    seed: u64,
    count: usize,
    max_verts: usize,
    field: FieldSpec,
    cache: &HomologyCache,
) -> Result<CheckReport, TransferError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("face-rigidity");
    let mut skipped = 0;
    while report.checked < count {
        let k = random_complex(&mut rng, max_verts);
        if augmented_face_lattice(&k).is_err() {
            skipped += 1;
            continue;
        }
        let r = face_lattice_rigidity_check(&k, field, cache)?;
        if !r.acyclic {
            continue;
        }
        report.checked += 1;
        if r.violation {
            report.violations.push(format!(
                "{k}: acyclic over {field} but its face lattice is not rigid"
            ));
        }
    }
    if skipped > 0 {
        report.notes.push(format!(
            "{skipped} complexes skipped because the augmented face poset is not a lattice"
        ));
    }
    Ok(report)
}

/// GPW Betti numbers against minimalized Taylor complexes on random ideals:
/// totals, and per element the count of basis elements carrying its label.
/// Both complexes must pass [`verify_resolution`].
pub fn check_cross_validation(
    seed: u64,
    count: usize,
    fields: &[FieldSpec],
) -> Result<CheckReport, TransferError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ideals: Vec<MonomialIdeal> = (0..count)
        .map(|_| random_ideal(&mut rng, 5, 4, 3))
        .collect();
    let parts: Vec<CheckReport> = ideals
        .par_iter()
        .map(|ideal| {
            let mut report = CheckReport::new("cross-validation");
            for &field in fields {
                report.violations.extend(cross_validate(ideal, field)?);
                report.checked += 1;
            }
            Ok(report)
        })
        .collect::<Result<_, TransferError>>()?;
    let mut report = CheckReport::new("cross-validation");
    parts.into_iter().for_each(|p| report.absorb(p));
    Ok(report)
}

/// Disagreements between the two Betti computations for one ideal.
pub fn cross_validate(
    ideal: &MonomialIdeal,
    field: FieldSpec,
) -> Result<Vec<String>, TransferError> {
    let mut problems = Vec::new();
    let lcm = lcm_lattice(ideal)?;
    let table = betti_table(lcm.lattice(), field)?;
    let taylor = taylor_complex(ideal, field)?;
    let minimal = minimalize(&taylor);
    for (what, res) in [("taylor", &taylor), ("minimal", &minimal)] {
        if let Some(v) = verify_resolution(res, ideal)?.violation {
            problems.push(format!(
                "{ideal} over {field}: {what} complex fails: {}",
                v.describe(ideal.vars())
            ));
        }
    }
    let ranks: Vec<u64> = minimal.ranks().into_iter().map(|r| r as u64).collect();
    if ranks != table.totals() {
        problems.push(format!(
            "{ideal} over {field}: ranks {ranks:?} but Betti totals {:?}",
            table.totals()
        ));
    }
    for (s, label) in lcm.labels() {
        for i in 0..=minimal.length().max(table.totals().len()) {
            let here = minimal.basis(i).iter().filter(|m| *m == label).count() as u64;
            if here != table.get(i, s) {
                problems.push(format!(
                    "{ideal} over {field}: beta_{i} at {} is {} but the resolution has {here}",
                    ideal.format_monomial(label),
                    table.get(i, s)
                ));
            }
        }
    }
    Ok(problems)
}

/// Minimalizes `schedules` randomly permuted, rescaled copies of the Taylor
/// complex of each ideal with random pivot orders, and compares every
/// signature with the canonical one.
pub fn check_scaling_uniqueness(
    ideals: &[MonomialIdeal],
    field: FieldSpec,
    schedules: usize,
    seed: u64,
) -> Result<CheckReport, TransferError> {
    let mut report = CheckReport::new("scaling-uniqueness");
    for (k, ideal) in ideals.iter().enumerate() {
        let taylor = taylor_complex(ideal, field)?;
        let reference = signature(&minimalize(&taylor));
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        for _ in 0..schedules {
            let mut shuffled = taylor.clone();
            for i in 0..=shuffled.length() {
                let mut perm: Vec<usize> = (0..shuffled.basis(i).len()).collect();
                perm.shuffle(&mut rng);
                shuffled = shuffled.permuted(i, &perm);
                for idx in 0..perm.len() {
                    shuffled = shuffled.rescaled(i, idx, &random_unit(&mut rng, field));
                }
            }
            let res = minimalize_with(&shuffled, PivotRule::Seeded(rng.gen()));
            report.checked += 1;
            if signature(&res) != reference {
                report
                    .violations
                    .push(format!("{ideal} over {field}: signature changed"));
            }
            if let Some(v) = verify_resolution(&res, ideal)?.violation {
                report.violations.push(format!(
                    "{ideal} over {field}: {}",
                    v.describe(ideal.vars())
                ));
            }
        }
    }
    Ok(report)
}

fn random_unit<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(1..p) as i64),
        FieldSpec::Rationals => {
            let v = field.from_i64(rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 });
            if rng.gen_bool(0.5) {
                v.inverse().expect("nonzero")
            } else {
                v
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::explorer::{enumerate_ln, stratify};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn l3_sweeps_pass() {
        let cache = HomologyCache::new();
        let keys = enumerate_ln(3, 1000).unwrap().keys;
        let atlas = stratify(&keys, Q, &cache).unwrap();
        assert!(check_betti_monotonicity(&atlas).passed());
        for s in atlas.strata.values() {
            assert!(verify_rigid_up_closure(s).passed());
        }
        assert!(check_concentrated_iff_lattice_linear(&atlas, true)
            .unwrap()
            .passed());
        assert!(check_cover_invariance(&keys, Q, &cache).unwrap().passed());
        assert!(check_transfers(&atlas, &cache).unwrap().passed());
    }

    #[test]
    fn identity_transfer() {
        let cache = HomologyCache::new();
        let l = lcm_lattice(&corpus::m()).unwrap().lattice().clone();
        let moved = transfer_resolution(&l, &l, Q, &cache).unwrap();
        let (_, direct) = minimal_resolution(&l, Q).unwrap();
        assert_eq!(moved, direct);
        assert_eq!(
            find_concentrated_below(&l, Q, &cache).unwrap(),
            Some(l.clone())
        );
        let b3 = FiniteAtomicLattice::boolean(3).unwrap();
        // LCM(M) sits below B3 but in another stratum
        assert!(matches!(
            transfer_resolution(&b3, &l, Q, &cache),
            Err(TransferError::DifferentStrata(..))
        ));
        assert!(matches!(
            transfer_resolution(&l, &b3, Q, &cache),
            Err(TransferError::NotBelow(..))
        ));
    }

    #[test]
    fn face_checks() {
        let cache = HomologyCache::new();
        let triangle = SimplicialComplexRep::from_facet_lists(3, &[&[1, 2, 3]]).unwrap();
        let r = face_lattice_rigidity_check(&triangle, Q, &cache).unwrap();
        assert!(r.acyclic && r.rigid && !r.violation);
        let two = SimplicialComplexRep::from_facet_lists(4, &[&[1, 2, 3], &[2, 3, 4]]).unwrap();
        let r = face_lattice_rigidity_check(&two, Q, &cache).unwrap();
        assert!(r.acyclic && r.rigid);
        let hollow =
            SimplicialComplexRep::from_facet_lists(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        let r = face_lattice_rigidity_check(&hollow, Q, &cache).unwrap();
        assert!(!r.acyclic);
        assert_eq!(r.homology, vec![0, 0, 1]);
    }

    #[test]
    fn face_rigidity_smoke() {
        let r = check_face_rigidity(3, 10, 5, Q, &HomologyCache::new()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 10);
    }

    #[test]
    fn cross_validation_and_scaling_smoke() {
        let r = check_cross_validation(1, 10, &[Q, FieldSpec::Prime(2)]).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 20);
        let r = check_scaling_uniqueness(&[corpus::m(), corpus::xyz()], Q, 3, 5).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_scaling_uniqueness(&[corpus::m()], FieldSpec::Prime(3), 3, 5).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn random_complexes_are_deterministic() {
        let a = random_acyclic_complexes(7, 5, 6, Q);
        assert_eq!(a, random_acyclic_complexes(7, 5, 6, Q));
        assert!(a.iter().all(|k| k.nverts() <= 6));
    }
}
