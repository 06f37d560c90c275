//! Executable checks of the structural results on M2(R;s), run
//! exhaustively over small rings.
//!
//! Each [`CheckId`] names one statement. [`run_check`] evaluates the
//! statement's hypotheses on the given context first; unmet hypotheses
//! give [`Status::HypothesesNotMet`], never a pass.

mod census;
mod checks;
mod lift;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::catalog::CatalogRing;
use crate::error::{Error, Result};
use crate::formal::{FMContext, FMatrix};
use crate::ring::ElementId;

pub use census::{census, CensusRow, CENSUS_HEADER};
pub use lift::{lift_precision, lift_series_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "T2.1")]
    RadicalFormula,
    #[serde(rename = "L2.2")]
    LocalRadical,
    #[serde(rename = "E2.3")]
    JCleanBasics,
    #[serde(rename = "L2.4")]
    UnitJClean,
    #[serde(rename = "L2.5")]
    ConjugationInvariance,
    #[serde(rename = "L2.6")]
    PowerInRadical,
    #[serde(rename = "L2.7")]
    IdempotentForms,
    #[serde(rename = "L2.8")]
    DiagonalJClean,
    #[serde(rename = "L2.9")]
    DiagonalNilClean,
    #[serde(rename = "C2.10")]
    NotJCleanWitness,
    #[serde(rename = "L2.11")]
    DiagonalClean,
    #[serde(rename = "C2.12")]
    DiagonalizableClean,
    #[serde(rename = "T2.13")]
    CleanSplit,
    #[serde(rename = "P2.14")]
    NilVersusJ,
    #[serde(rename = "L2.15")]
    StandardForm,
    #[serde(rename = "T2.16")]
    RightRoots,
    #[serde(rename = "L2.17")]
    FormLifting,
    #[serde(rename = "T2.18")]
    JCleanLifting,
    #[serde(rename = "C2.19")]
    CleanLifting,
    #[serde(rename = "L3.1")]
    Determinant,
    #[serde(rename = "P3.2")]
    DetTrObstruction,
    #[serde(rename = "P3.3")]
    DetTrRadical,
    #[serde(rename = "R3.4")]
    DetTrRadicalS,
    #[serde(rename = "L3.5")]
    UpperTriangular,
    #[serde(rename = "T3.6")]
    CharPoly,
}

/// A hypothesis a check may require of its context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    Local,
    Commutative,
    SInRadical,
    SUnit,
    WeaklyBleached,
}

impl Requirement {
    fn holds(self, ctx: &FMContext) -> bool {
        let an = ctx.analysis();
        match self {
            Requirement::Local => an.is_local,
            Requirement::Commutative => an.is_commutative,
            Requirement::SInRadical => ctx.s_in_jacobson(),
            Requirement::SUnit => ctx.s_is_unit(),
            Requirement::WeaklyBleached => an.is_weakly_bleached == Some(true),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Requirement::Local => "base ring is local",
            Requirement::Commutative => "base ring is commutative",
            Requirement::SInRadical => "s lies in J(R)",
            Requirement::SUnit => "s is a unit",
            Requirement::WeaklyBleached => "base ring is weakly bleached",
        }
    }
}

impl CheckId {
    pub const ALL: [CheckId; 25] = [
        CheckId::RadicalFormula,
        CheckId::LocalRadical,
        CheckId::JCleanBasics,
        CheckId::UnitJClean,
        CheckId::ConjugationInvariance,
        CheckId::PowerInRadical,
        CheckId::IdempotentForms,
        CheckId::DiagonalJClean,
        CheckId::DiagonalNilClean,
        CheckId::NotJCleanWitness,
        CheckId::DiagonalClean,
        CheckId::DiagonalizableClean,
        CheckId::CleanSplit,
        CheckId::NilVersusJ,
        CheckId::StandardForm,
        CheckId::RightRoots,
        CheckId::FormLifting,
        CheckId::JCleanLifting,
        CheckId::CleanLifting,
        CheckId::Determinant,
        CheckId::DetTrObstruction,
        CheckId::DetTrRadical,
        CheckId::DetTrRadicalS,
        CheckId::UpperTriangular,
        CheckId::CharPoly,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::RadicalFormula => "T2.1",
            CheckId::LocalRadical => "L2.2",
            CheckId::JCleanBasics => "E2.3",
            CheckId::UnitJClean => "L2.4",
            CheckId::ConjugationInvariance => "L2.5",
            CheckId::PowerInRadical => "L2.6",
            CheckId::IdempotentForms => "L2.7",
            CheckId::DiagonalJClean => "L2.8",
            CheckId::DiagonalNilClean => "L2.9",
            CheckId::NotJCleanWitness => "C2.10",
            CheckId::DiagonalClean => "L2.11",
            CheckId::DiagonalizableClean => "C2.12",
            CheckId::CleanSplit => "T2.13",
            CheckId::NilVersusJ => "P2.14",
            CheckId::StandardForm => "L2.15",
            CheckId::RightRoots => "T2.16",
            CheckId::FormLifting => "L2.17",
            CheckId::JCleanLifting => "T2.18",
            CheckId::CleanLifting => "C2.19",
            CheckId::Determinant => "L3.1",
            CheckId::DetTrObstruction => "P3.2",
            CheckId::DetTrRadical => "P3.3",
            CheckId::DetTrRadicalS => "R3.4",
            CheckId::UpperTriangular => "L3.5",
            CheckId::CharPoly => "T3.6",
        }
    }

    /// One-line statement of what the check verifies.
    pub fn statement(self) -> &'static str {
        match self {
            CheckId::RadicalFormula => "J(M2) = [[J, J_s], [J_s, J]] against quasi-regularity; J_s = J_{s^2}",
            CheckId::LocalRadical => "s in J: J(M2) = [[J, R], [R, J]]; A unit iff a, d units",
            CheckId::JCleanBasics => "radical elements are sJc; a unit u is sJc iff u - 1 in J; A sJc iff I - A sJc",
            CheckId::UnitJClean => "A unit and sJc iff A - I in J(M2)",
            CheckId::ConjugationInvariance => "A sJc iff P A P^-1 sJc",
            CheckId::PowerInRadical => "s in J: some A^n in J(M2) iff A in J(M2)",
            CheckId::IdempotentForms => "non-trivial idempotents are similar to diag(1,0) (s unit) or exactly one of diag(1,0), diag(0,1) (s in J)",
            CheckId::DiagonalJClean => "sJc iff A or I - A in J(M2) or A similar to diag(v,w) / diag(w,v), v in 1+J, w in J",
            CheckId::DiagonalNilClean => "snc iff A or I - A nilpotent or A similar to diag(v,w) / diag(w,v), v in 1+Nil, w in Nil",
            CheckId::NotJCleanWitness => "commutative, s unit: [[1,1],[1,0]] is not sJc",
            CheckId::DiagonalClean => "sc iff A or I - A a unit or A similar to diag(w,v) (s unit) / either orientation (s in J)",
            CheckId::DiagonalizableClean => "sc iff A or I - A a unit or A similar to a diagonal matrix",
            CheckId::CleanSplit => "sc iff A unit or I - A unit or A sJc",
            CheckId::NilVersusJ => "all non-trivial A snc iff all non-trivial A sJc and J nil",
            CheckId::StandardForm => "s in J, A and I - A non-units: A similar to [[u,1],[v,w]] or [[w,1],[v,u]]",
            CheckId::RightRoots => "s in J: sJc iff radical cases or a standard form whose quadratics have right roots",
            CheckId::FormLifting => "standard forms of A(0) lift to A(x) with matching constant terms",
            CheckId::JCleanLifting => "A(x) sJc iff A(0) sJc",
            CheckId::CleanLifting => "A(x) sc iff A(0) sc",
            CheckId::Determinant => "det_s multiplicative; unit iff det_s unit, adjugate inverse; similarity keeps det_s and tr",
            CheckId::DetTrObstruction => "det_s, tr in J and A not in J(M2) implies A not sJc",
            CheckId::DetTrRadical => "det_s, tr in J and A sJc iff A in J(M2)",
            CheckId::DetTrRadicalS => "s in J: det_s, tr in J iff A in J(M2)",
            CheckId::UpperTriangular => "upper triangular matrices are sc",
            CheckId::CharPoly => "sJc iff radical cases or t^2 - tr t + det_s has roots in J and in 1+J",
        }
    }

    /// Hypotheses checked before the statement runs.
    pub fn requirements(self) -> &'static [Requirement] {
        use Requirement::*;
        match self {
            CheckId::RadicalFormula
            | CheckId::JCleanBasics
            | CheckId::UnitJClean
            | CheckId::ConjugationInvariance => &[],
            CheckId::LocalRadical
            | CheckId::PowerInRadical
            | CheckId::StandardForm
            | CheckId::RightRoots => &[Local, SInRadical],
            CheckId::IdempotentForms
            | CheckId::DiagonalJClean
            | CheckId::DiagonalNilClean
            | CheckId::DiagonalClean
            | CheckId::DiagonalizableClean
            | CheckId::CleanSplit
            | CheckId::NilVersusJ => &[Local],
            CheckId::NotJCleanWitness => &[Commutative, Local, SUnit],
            CheckId::FormLifting | CheckId::JCleanLifting | CheckId::CleanLifting => {
                &[Local, WeaklyBleached]
            }
            CheckId::Determinant | CheckId::DetTrObstruction => &[Commutative],
            CheckId::DetTrRadical | CheckId::UpperTriangular | CheckId::CharPoly => {
                &[Commutative, Local]
            }
            CheckId::DetTrRadicalS => &[Commutative, Local, SInRadical],
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HypothesesNotMet,
    /// The check could not run, e.g. a cap was exceeded.
    Aborted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::HypothesesNotMet => "hypotheses-not-met",
            Status::Aborted => "aborted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub matrices: Vec<FMatrix>,
    /// The same matrices with element names.
    pub rendered: Vec<String>,
    pub explanation: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// Cases (matrices, pairs, elements) the statement was evaluated on.
    pub examined: u64,
    /// Cases where the statement's antecedent or positive side held.
    pub hits: u64,
    pub violations: u64,
    pub certificates_verified: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub sample_size: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub check: CheckId,
    pub statement: String,
    pub ring: String,
    pub ring_size: usize,
    pub s: ElementId,
    pub s_name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub counts: Counts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Outcome of evaluating a statement on one case.
#[derive(Debug, Clone, Default)]
pub(crate) struct Step {
    hit: bool,
    certificates: u64,
    failure: Option<(Vec<FMatrix>, String)>,
}

impl Step {
    pub(crate) fn ok() -> Self {
        Step::default()
    }

    pub(crate) fn hit(hit: bool) -> Self {
        Step {
            hit,
            ..Step::default()
        }
    }

    pub(crate) fn fail(matrices: Vec<FMatrix>, explanation: impl Into<String>) -> Self {
        Step {
            failure: Some((matrices, explanation.into())),
            ..Step::default()
        }
    }

    pub(crate) fn certified(mut self, n: u64) -> Self {
        self.certificates += n;
        self
    }
}

/// Accumulates steps; keeps the first failure in canonical order.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub(crate) counts: Counts,
    pub(crate) counterexample: Option<(Vec<FMatrix>, String)>,
    pub(crate) sampling: Option<Sampling>,
    pub(crate) notes: Vec<String>,
}

impl Tally {
    pub(crate) fn absorb(&mut self, step: Step) {
        self.counts.examined += 1;
        self.counts.hits += step.hit as u64;
        self.counts.certificates_verified += step.certificates;
        if let Some(failure) = step.failure {
            self.counts.violations += 1;
            self.counterexample.get_or_insert(failure);
        }
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Evaluates `f` on every item in parallel and absorbs the steps in
    /// input order.
    pub(crate) fn sweep<T, F>(&mut self, items: Vec<T>, f: F) -> Result<()>
    where
        T: Send + Sync,
        F: Fn(&T) -> Result<Step> + Sync + Send,
    {
        let steps: Vec<Result<Step>> = items.par_iter().map(&f).collect();
        for step in steps {
            self.absorb(step?);
        }
        Ok(())
    }

    /// Sweeps every `(i, j)` with `i < rows`, `j < cols` without
    /// materializing the pairs; rows run in parallel and merge in order.
    pub(crate) fn sweep_grid<F>(&mut self, rows: usize, cols: usize, f: F) -> Result<()>
    where
        F: Fn(usize, usize) -> Result<Step> + Sync + Send,
    {
        let partials: Vec<Result<Tally>> = (0..rows)
            .into_par_iter()
            .map(|i| {
                let mut row = Tally::default();
                for j in 0..cols {
                    row.absorb(f(i, j)?);
                }
                Ok(row)
            })
            .collect();
        for row in partials {
            let row = row?;
            self.counts.examined += row.counts.examined;
            self.counts.hits += row.counts.hits;
            self.counts.violations += row.counts.violations;
            self.counts.certificates_verified += row.counts.certificates_verified;
            if let Some(failure) = row.counterexample {
                self.counterexample.get_or_insert(failure);
            }
        }
        Ok(())
    }

    /// Sweeps all matrices of the context in canonical order.
    pub(crate) fn sweep_all<F>(&mut self, ctx: &FMContext, f: F) -> Result<()>
    where
        F: Fn(usize, &FMatrix) -> Result<Step> + Sync + Send,
    {
        let count = ctx.matrix_count();
        if count > ctx.caps().enumeration {
            return Err(Error::CapExceeded {
                what: "enumeration",
                size: count,
                cap: ctx.caps().enumeration,
            });
        }
        let steps: Vec<Result<Step>> = (0..count as usize)
            .into_par_iter()
            .map(|i| f(i, &ctx.matrix(i)))
            .collect();
        for step in steps {
            self.absorb(step?);
        }
        Ok(())
    }
}

fn unmet(ctx: &FMContext, id: CheckId) -> Vec<&'static str> {
    id.requirements()
        .iter()
        .filter(|r| !r.holds(ctx))
        .map(|r| r.describe())
        .collect()
}

/// Runs one check on `M2(R;s)` for a catalog ring.
pub fn run_check(
    id: CheckId,
    ring: &CatalogRing,
    s: ElementId,
    caps: &Caps,
) -> Result<CheckReport> {
    let ctx = FMContext::from_catalog(ring, s, *caps)?;
    Ok(run_check_in(id, &ring.name, &ctx))
}

/// Runs one check in an existing context, sharing its cached tables.
///
/// Errors inside the check become [`Status::HypothesesNotMet`] for violated
/// preconditions and [`Status::Aborted`] otherwise.
pub fn run_check_in(id: CheckId, ring_name: &str, ctx: &FMContext) -> CheckReport {
    let start = Instant::now();
    let mut tally = Tally::default();
    let missing = unmet(ctx, id);
    let status = if !missing.is_empty() {
        for m in missing {
            tally.note(format!("hypothesis not met: {m}"));
        }
        Status::HypothesesNotMet
    } else {
        match checks::run(id, ctx, &mut tally) {
            Ok(()) if tally.counterexample.is_some() => Status::Fail,
            Ok(()) => Status::Pass,
            Err(e) if e.is_hypothesis() => {
                tally.note(format!("hypothesis not met: {e}"));
                Status::HypothesesNotMet
            }
            Err(e) => {
                tally.note(format!("check aborted: {e}"));
                Status::Aborted
            }
        }
    };
    report(id, ring_name, ctx, status, tally, start)
}

pub(crate) fn report(
    id: CheckId,
    ring_name: &str,
    ctx: &FMContext,
    status: Status,
    tally: Tally,
    start: Instant,
) -> CheckReport {
    let counterexample = tally
        .counterexample
        .map(|(matrices, explanation)| Counterexample {
            rendered: matrices.iter().map(|m| ctx.render(m)).collect(),
            matrices,
            explanation,
        });
    CheckReport {
        schema: 1,
        check: id,
        statement: id.statement().to_string(),
        ring: ring_name.to_string(),
        ring_size: ctx.base().size(),
        s: ctx.s(),
        s_name: ctx.base().name(ctx.s()).to_string(),
        status,
        counterexample,
        counts: tally.counts,
        sampling: tally.sampling,
        notes: tally.notes,
        elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
    }
}

/// Runs `ids` in one context, in order, sharing cached tables.
pub fn run_checks_in(ids: &[CheckId], ring_name: &str, ctx: &FMContext) -> Vec<CheckReport> {
    ids.iter()
        .map(|&id| run_check_in(id, ring_name, ctx))
        .collect()
}

/// Every check over every ring of `catalog` and every central `s`.
/// Contexts run in parallel; the result is ordered by ring, `s`, check.
pub fn run_all(catalog: &[CatalogRing], caps: &Caps) -> Vec<CheckReport> {
    let jobs: Vec<(&CatalogRing, ElementId)> = catalog
        .iter()
        .flat_map(|ring| ring.central_elements().into_iter().map(move |s| (ring, s)))
        .collect();
    jobs.par_iter()
        .map(|&(ring, s)| match FMContext::from_catalog(ring, s, *caps) {
            Ok(ctx) => run_checks_in(&CheckId::ALL, &ring.name, &ctx),
            Err(e) => vec![context_error(ring, s, &e)],
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn context_error(ring: &CatalogRing, s: ElementId, e: &Error) -> CheckReport {
    CheckReport {
        schema: 1,
        check: CheckId::RadicalFormula,
        statement: "context construction".into(),
        ring: ring.name.clone(),
        ring_size: ring.ring.size(),
        s,
        s_name: ring.ring.name(s).to_string(),
        status: if e.is_hypothesis() {
            Status::HypothesesNotMet
        } else {
            Status::Aborted
        },
        counterexample: None,
        counts: Counts::default(),
        sampling: None,
        notes: vec![e.to_string()],
        elapsed_ms: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn run(id: &str, ring: &str, s: u16) -> CheckReport {
        let ring = catalog::get(ring).unwrap();
        run_check(id.parse().unwrap(), &ring, ElementId(s), &Caps::default()).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
            assert_eq!(serde_json::from_str::<CheckId>(&json).unwrap(), id);
        }
        assert!(matches!(
            "T9.9".parse::<CheckId>(),
            Err(Error::UnknownCheck(_))
        ));
    }

    #[test]
    fn gating_examples() {
        let r = run("T2.16", "z4", 1);
        assert_eq!(r.status, Status::HypothesesNotMet);
        assert_eq!(r.counts.examined, 0);
        assert_eq!(run("C2.10", "z4", 2).status, Status::HypothesesNotMet);
        assert_eq!(run("T3.6", "twist", 0).status, Status::HypothesesNotMet);
        assert_eq!(run("L2.8", "z6", 1).status, Status::HypothesesNotMet);
    }

    #[test]
    fn witness_check_records_the_matrix() {
        let r = run("C2.10", "z2", 1);
        assert_eq!(r.status, Status::Pass);
        assert!(r.notes.iter().any(|n| n.contains("[[1,1],[1,0]]")));
    }

    #[test]
    fn char_poly_check_on_z4() {
        let r = run("T3.6", "z4", 1);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.counts.examined, 256);
    }

    #[test]
    fn every_check_passes_on_small_contexts() {
        for (ring, s) in [
            ("z2", 0),
            ("z2", 1),
            ("z3", 1),
            ("z4", 1),
            ("z4", 2),
            ("f2t2", 0),
        ] {
            let ring = catalog::get(ring).unwrap();
            let ctx = FMContext::from_catalog(&ring, ElementId(s), Caps::default()).unwrap();
            for r in run_checks_in(&CheckId::ALL, &ring.name, &ctx) {
                assert_ne!(
                    r.status,
                    Status::Fail,
                    "{} on {} s={s}: {:?}",
                    r.check,
                    ring.name,
                    r.counterexample
                );
                assert_ne!(
                    r.status,
                    Status::Aborted,
                    "{} on {} s={s}: {:?}",
                    r.check,
                    ring.name,
                    r.notes
                );
            }
        }
    }

    #[test]
    fn non_local_ring_gates_local_checks() {
        let z6 = catalog::get("z6").unwrap();
        let reports = run_all(&[z6], &Caps::default());
        assert_eq!(reports.len(), 2 * CheckId::ALL.len() * 3);
        for r in &reports {
            assert_ne!(r.status, Status::Fail, "{} s={}", r.check, r.s_name);
            if r.check.requirements().contains(&Requirement::Local) {
                assert_eq!(r.status, Status::HypothesesNotMet);
            }
        }
        assert!(run_all(&[], &Caps::default()).is_empty());
    }

    #[test]
    fn report_json_round_trip() {
        let r = run("L2.4", "z3", 2);
        let json = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(json.contains("\"schema\":1"));
    }
}
