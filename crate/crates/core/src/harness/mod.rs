//! Exhaustive and sampled verification sweeps over small relations.
//!
//! A sweep enumerates relations (all of them up to four elements, or a seeded
//! sample up to eight), evaluates every selected proposition on each, and
//! aggregates one [`PropositionReport`] per proposition and universe size.
//! Work is split into chunks of consecutive relations and merged in encoding
//! order, so reports do not depend on the number of worker threads.

mod catalog;
mod enumerate;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

pub use catalog::{
    canonical_subsets, check_proposition, evaluate, evaluate_relation, Direction, Evaluation,
    Finding, PropositionId, Subject,
};
pub use enumerate::{
    enumerate_relations, relation_count, sample_codes, MAX_EXHAUSTIVE_N, MAX_SAMPLED_N,
};

use crate::error::{Error, Result};
use crate::format::RelationDocument;
use crate::neighborhood::NeighborhoodKind;
use crate::relation::BinaryRelation;
use crate::universe::Universe;

const CHUNK: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub max_n: usize,
    pub mode: SweepMode,
    pub sample_count: usize,
    pub seed: Option<u64>,
    /// Empty selects the whole catalog.
    pub props: Vec<PropositionId>,
    /// Counterexamples kept per report; totals are always exact.
    pub max_counterexamples: usize,
    /// Worker threads; 0 uses rayon's default. Does not affect results.
    #[serde(skip)]
    pub workers: usize,
    /// Include wall-clock timings in reports. Timed reports are not
    /// byte-reproducible.
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_n: 3,
            mode: SweepMode::Exhaustive,
            sample_count: 1000,
            seed: None,
            props: Vec::new(),
            max_counterexamples: 5,
            workers: 0,
            timings: false,
        }
    }
}

impl SweepConfig {
    pub fn exhaustive(max_n: usize) -> Self {
        SweepConfig {
            max_n,
            ..Default::default()
        }
    }

    pub fn sampled(max_n: usize, sample_count: usize, seed: u64) -> Self {
        SweepConfig {
            max_n,
            mode: SweepMode::Sampled,
            sample_count,
            seed: Some(seed),
            ..Default::default()
        }
    }

    pub fn with_props(mut self, props: &[PropositionId]) -> Self {
        self.props = props.to_vec();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::InvalidConfig(m));
        if self.max_n == 0 {
            return invalid("max_n must be at least 1".into());
        }
        match self.mode {
            SweepMode::Exhaustive if self.max_n > MAX_EXHAUSTIVE_N => invalid(format!(
                "exhaustive sweeps are limited to n ≤ {MAX_EXHAUSTIVE_N}, got {}",
                self.max_n
            )),
            SweepMode::Sampled if self.max_n > MAX_SAMPLED_N => invalid(format!(
                "sampled sweeps are limited to n ≤ {MAX_SAMPLED_N}, got {}",
                self.max_n
            )),
            SweepMode::Sampled if self.seed.is_none() => {
                invalid("sampled mode requires a seed".into())
            }
            SweepMode::Sampled if self.sample_count == 0 => {
                invalid("sample_count must be positive".into())
            }
            _ => Ok(()),
        }
    }

    pub fn selected(&self) -> Vec<PropositionId> {
        if self.props.is_empty() {
            PropositionId::ALL.to_vec()
        } else {
            let mut props = self.props.clone();
            props.sort();
            props.dedup();
            props
        }
    }
}

/// A recorded refutation, replayable from the embedded relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub direction: Direction,
    pub gating: bool,
    /// Row-major encoding of the relation on `{1..n}`.
    pub code: u64,
    pub relation: RelationDocument,
    pub kinds: Vec<NeighborhoodKind>,
    pub witness: Vec<Vec<String>>,
    pub observed: String,
    pub expected: String,
}

impl Counterexample {
    fn new(r: &BinaryRelation, f: Finding) -> Self {
        let u = r.universe();
        Counterexample {
            direction: f.direction,
            gating: f.direction.gating(),
            code: r.code(),
            relation: RelationDocument::of(r),
            kinds: f.kinds,
            witness: f.witness.into_iter().map(|w| u.member_labels(w)).collect(),
            observed: f.observed,
            expected: f.expected,
        }
    }

    /// Re-evaluates the proposition on the recorded relation and returns true
    /// if the same refutation is produced.
    pub fn replays(&self, prop: PropositionId) -> Result<bool> {
        let r = self.relation.to_relation()?;
        let u = r.universe().clone();
        Ok(evaluate_relation(prop, &r).findings.into_iter().any(|f| {
            f.direction == self.direction
                && f.kinds == self.kinds
                && f.witness
                    .iter()
                    .map(|&w| u.member_labels(w))
                    .collect::<Vec<_>>()
                    == self.witness
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub prop: PropositionId,
    pub anchor: &'static str,
    pub description: &'static str,
    pub n: usize,
    pub relations_checked: u64,
    pub hypothesis_satisfied: u64,
    pub vacuous: u64,
    pub subsets_checked: u64,
    /// No counterexample in any direction.
    pub holds: bool,
    /// No counterexample in an acceptance-gating direction.
    pub gating_holds: bool,
    /// Relations refuting each direction, keyed by direction name.
    pub violations: BTreeMap<&'static str, u64>,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl PropositionReport {
    /// Verdict used in summaries: PASS when nothing was refuted, FAIL when a
    /// gating direction was refuted, REPORTED when only exploratory
    /// directions were.
    pub fn status(&self) -> &'static str {
        if self.holds {
            "PASS"
        } else if !self.gating_holds {
            "FAIL"
        } else {
            "REPORTED"
        }
    }

    pub fn gating_violations(&self) -> u64 {
        self.violations.get("forward").copied().unwrap_or(0)
    }
}

/// Everything a run produced.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub config: SweepConfig,
    pub reports: Vec<PropositionReport>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn gating_holds(&self) -> bool {
        self.reports.iter().all(|r| r.gating_holds)
    }

    pub fn get(&self, prop: PropositionId, n: usize) -> Option<&PropositionReport> {
        self.reports.iter().find(|r| r.prop == prop && r.n == n)
    }
}

#[derive(Default, Clone)]
struct Tally {
    relations: u64,
    satisfied: u64,
    subsets: u64,
    violations: BTreeMap<&'static str, u64>,
    gating_violations: u64,
    total: u64,
    kept: Vec<Counterexample>,
    elapsed: Duration,
}

impl Tally {
    fn absorb(&mut self, r: &BinaryRelation, e: Evaluation, elapsed: Duration, cap: usize) {
        self.relations += 1;
        self.elapsed += elapsed;
        if e.hypothesis {
            self.satisfied += 1;
            self.subsets += e.subsets_checked;
        }
        for f in e.findings {
            *self.violations.entry(f.direction.name()).or_default() += 1;
            if f.direction.gating() {
                self.gating_violations += 1;
            }
            self.total += 1;
            if self.kept.len() < cap {
                self.kept.push(Counterexample::new(r, f));
            }
        }
    }

    fn merge(&mut self, other: Tally, cap: usize) {
        self.relations += other.relations;
        self.satisfied += other.satisfied;
        self.subsets += other.subsets;
        for (k, v) in other.violations {
            *self.violations.entry(k).or_default() += v;
        }
        self.gating_violations += other.gating_violations;
        self.total += other.total;
        self.elapsed += other.elapsed;
        let room = cap.saturating_sub(self.kept.len());
        self.kept.extend(other.kept.into_iter().take(room));
    }

    fn into_report(self, prop: PropositionId, n: usize, timings: bool) -> PropositionReport {
        PropositionReport {
            prop,
            anchor: prop.anchor(),
            description: prop.description(),
            n,
            relations_checked: self.relations,
            hypothesis_satisfied: self.satisfied,
            vacuous: self.relations - self.satisfied,
            subsets_checked: self.subsets,
            holds: self.total == 0,
            gating_holds: self.gating_violations == 0,
            violations: self.violations,
            counterexample_count: self.total,
            counterexamples: self.kept,
            elapsed_ms: timings.then_some(self.elapsed.as_millis() as u64),
        }
    }
}

fn sweep_chunk(
    universe: &Arc<Universe>,
    codes: &[u64],
    props: &[PropositionId],
    cap: usize,
    timings: bool,
) -> Vec<Tally> {
    let subsets = canonical_subsets(universe.len());
    let mut tallies = vec![Tally::default(); props.len()];
    for &code in codes {
        let r = BinaryRelation::from_code(Arc::clone(universe), code);
        let subject = Subject::with_subsets(&r, Arc::clone(&subsets));
        for (tally, &prop) in tallies.iter_mut().zip(props) {
            let start = timings.then(Instant::now);
            let e = evaluate(prop, &subject);
            let elapsed = start.map(|s| s.elapsed()).unwrap_or_default();
            tally.absorb(&r, e, elapsed, cap);
        }
    }
    tallies
}

fn sweep_size(
    n: usize,
    cfg: &SweepConfig,
    props: &[PropositionId],
) -> Result<Vec<PropositionReport>> {
    let universe = Universe::numbered(n)?.shared();
    let codes: Vec<u64> = match cfg.mode {
        SweepMode::Exhaustive => (0..relation_count(n)).collect(),
        SweepMode::Sampled => sample_codes(n, cfg.sample_count, cfg.seed.unwrap_or_default()),
    };
    let cap = cfg.max_counterexamples;
    let chunks: Vec<Vec<Tally>> = codes
        .par_chunks(CHUNK)
        .map(|chunk| sweep_chunk(&universe, chunk, props, cap, cfg.timings))
        .collect();

    let mut merged = vec![Tally::default(); props.len()];
    for chunk in chunks {
        for (acc, t) in merged.iter_mut().zip(chunk) {
            acc.merge(t, cap);
        }
    }
    Ok(merged
        .into_iter()
        .zip(props)
        .map(|(t, &p)| t.into_report(p, n, cfg.timings))
        .collect())
}

/// Runs every selected proposition for each `n` in `1..=max_n`.
///
/// Reports are ordered by `n`, then by proposition id.
pub fn run_suite(cfg: &SweepConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let props = cfg.selected();
    let start = Instant::now();
    let run = || -> Result<Vec<PropositionReport>> {
        let mut reports = Vec::new();
        for n in 1..=cfg.max_n {
            reports.extend(sweep_size(n, cfg, &props)?);
        }
        Ok(reports)
    };
    let reports = if cfg.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(run)?
    } else {
        run()?
    };
    Ok(SuiteReport {
        config: cfg.clone(),
        reports,
        elapsed: start.elapsed(),
    })
}
