//! Differential and bound-audit campaigns over generated automata.

use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::awa::Awa;
use crate::constructions::{
    brv_construct_limited, bu_construct_limited, miyano_hayashi_limited, safety_fallback,
    u_construct_limited, Algorithm, BuState, MhSuccessors, UState,
};
use crate::error::ConstructionError;
use crate::io::{parse_awa, print_awa, ParseError};
use crate::lasso::LassoWord;
use crate::nba::Nba;
use crate::preorder::tpo;
use crate::scc::SccAnalysis;
use crate::semantics::{
    awa_accepts, check_preorder_step, distance_profile, distance_rules_hold,
    preorders_from_distances, unique_sequence,
};
use crate::verification::{
    ambiguity_check_limited, bounded_language_diff, check_breakpoint_countdown,
    check_three_item_correspondence, enumerate_lasso_macroruns, AmbiguityWitness, DiffReport,
    EnumerationError, DEFAULT_MAX_PERIOD, DEFAULT_MAX_PREFIX, DEFAULT_RUN_LIMIT,
};

use super::generator::{corpus_params, mix, random_weak_awa, GenParams};

/// What to run on each automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub algorithms: Vec<Algorithm>,
    pub max_prefix: usize,
    pub max_period: usize,
    /// Accepted lassos sampled for run-level checks.
    pub samples: usize,
    pub state_limit: usize,
    pub product_limit: usize,
    pub run_limit: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            algorithms: vec![Algorithm::Mh, Algorithm::Brv, Algorithm::Bu, Algorithm::U],
            max_prefix: DEFAULT_MAX_PREFIX,
            max_period: DEFAULT_MAX_PERIOD,
            samples: 20,
            state_limit: 200_000,
            product_limit: 5_000_000,
            run_limit: DEFAULT_RUN_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BuildOutcome {
    Built {
        macrostates: usize,
        transitions: usize,
        accepting: usize,
    },
    ResourceLimit {
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AmbiguityVerdict {
    Unambiguous,
    Ambiguous { witness: AmbiguityWitness },
    TooLarge { limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub algorithm: Algorithm,
    /// The construction actually run (`auto`, `bu` and `u` may fall back).
    pub resolved: Algorithm,
    pub outcome: BuildOutcome,
    pub diff: Option<DiffReport>,
    pub ambiguity: Option<AmbiguityVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: u128,
    pub bound: u128,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
    pub lasso: Option<LassoWord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignRecord {
    pub index: usize,
    pub params: Option<GenParams>,
    /// Seed for sampling lassos.
    pub sample_seed: u64,
    /// The automaton in `.awa` format.
    pub awa: String,
    pub single_scc: bool,
    pub very_weak: bool,
    pub constructions: Vec<ConstructionRecord>,
    pub lassos_checked: usize,
    pub bounds: Vec<BoundCheck>,
    pub failures: Vec<Failure>,
    pub resource_limited: bool,
}

impl CampaignRecord {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn construction(&self, algo: Algorithm) -> Option<&ConstructionRecord> {
        self.constructions.iter().find(|c| c.algorithm == algo)
    }

    pub fn brv_ambiguous(&self) -> bool {
        self.construction(Algorithm::Brv)
            .is_some_and(|c| matches!(c.ambiguity, Some(AmbiguityVerdict::Ambiguous { .. })))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignParams {
    pub seed: u64,
    pub count: usize,
    pub max_states: usize,
    pub alphabet_size: usize,
    pub config: CheckConfig,
}

impl CampaignParams {
    /// The desk-scale default: 200 automata, at most 5 states, two letters.
    pub fn desk(seed: u64) -> CampaignParams {
        CampaignParams {
            seed,
            count: 200,
            max_states: 5,
            alphabet_size: 2,
            config: CheckConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub params: CampaignParams,
    pub records: Vec<CampaignRecord>,
    pub passed: bool,
    pub failed_records: usize,
    pub resource_limited: usize,
    pub single_scc: usize,
    pub very_weak: usize,
    pub brv_ambiguous: usize,
}

impl CampaignReport {
    pub fn failing(&self) -> impl Iterator<Item = &CampaignRecord> {
        self.records.iter().filter(|r| !r.passed())
    }
}

/// Generates `count` automata and checks each one. Records are computed in
/// parallel and reported in index order.
pub fn campaign(p: &CampaignParams) -> CampaignReport {
    let records: Vec<CampaignRecord> = (0..p.count)
        .into_par_iter()
        .map(|i| {
            let gp = corpus_params(p.seed, i, p.max_states, p.alphabet_size);
            let a = random_weak_awa(&gp).expect("corpus parameters are valid");
            let sample_seed = mix(gp.seed, u64::MAX);
            check_automaton(i, Some(gp), &a, sample_seed, &p.config)
        })
        .collect();
    let count = |f: &dyn Fn(&CampaignRecord) -> bool| records.iter().filter(|r| f(r)).count();
    let failed_records = count(&|r| !r.passed());
    CampaignReport {
        params: p.clone(),
        passed: failed_records == 0,
        failed_records,
        resource_limited: count(&|r| r.resource_limited),
        single_scc: count(&|r| r.single_scc),
        very_weak: count(&|r| r.very_weak),
        brv_ambiguous: count(&|r| r.brv_ambiguous()),
        records,
    }
}

/// Typed results of the constructions whose macrostates the run-level
/// checks inspect.
#[derive(Default)]
struct Built {
    u: Option<Nba<UState>>,
    bu: Option<Nba<BuState>>,
    /// Every built automaton expected to be unambiguous, by name.
    unambiguous: Vec<(Algorithm, Nba<()>)>,
}

/// Runs all checks of `config` on one automaton.
pub fn check_automaton(
    index: usize,
    params: Option<GenParams>,
    a: &Awa,
    sample_seed: u64,
    config: &CheckConfig,
) -> CampaignRecord {
    let mut failures = Vec::new();
    let mut fail = |check: &str, detail: String, lasso: Option<LassoWord>| {
        failures.push(Failure {
            check: check.to_string(),
            detail,
            lasso,
        })
    };
    let sccs = match a.scc_analysis() {
        Ok(s) => s,
        Err(e) => {
            fail("weakness", e.to_string(), None);
            return CampaignRecord {
                index,
                params,
                sample_seed,
                awa: print_awa(a),
                single_scc: false,
                very_weak: false,
                constructions: Vec::new(),
                lassos_checked: 0,
                bounds: Vec::new(),
                failures,
                resource_limited: false,
            };
        }
    };
    let n = a.state_count();
    let single_scc = sccs.len() == 1 && sccs.largest() == n;
    let very_weak = !sccs.is_empty() && sccs.largest() == 1;
    let mut built = Built::default();
    let mut constructions = Vec::new();
    let mut resource_limited = false;

    for &algo in &config.algorithms {
        let resolved = algo.resolve(a).expect("weakness checked above");
        let rec = run_construction(a, algo, resolved, config, &mut built);
        if matches!(rec.outcome, BuildOutcome::ResourceLimit { .. })
            || matches!(rec.ambiguity, Some(AmbiguityVerdict::TooLarge { .. }))
        {
            resource_limited = true;
        }
        if let Some(d) = &rec.diff {
            if let crate::verification::DiffVerdict::Witness { word, accepted_by } = &d.verdict {
                fail(
                    &format!("diff/{}", rec.resolved),
                    format!("lasso accepted only by the {accepted_by:?} side"),
                    Some(word.clone()),
                );
            }
        }
        if resolved != Algorithm::Brv {
            if let Some(AmbiguityVerdict::Ambiguous { witness }) = &rec.ambiguity {
                fail(
                    &format!("unambiguity/{}", rec.resolved),
                    "two accepting runs".into(),
                    Some(witness.word.clone()),
                );
            }
        }
        constructions.push(rec);
    }

    let mut bounds = Vec::new();
    let tp = tpo(n).unwrap_or(u128::MAX);
    if single_scc {
        if let Some(u) = &built.u {
            bounds.push(bound("|U| <= 4 tpo(n)", u.state_count(), 4 * tp));
        }
        if let Some(bu) = &built.bu {
            bounds.push(bound(
                "|B_u| <= 4 n tpo(n)",
                bu.state_count(),
                4 * n as u128 * tp,
            ));
        }
    }
    if very_weak {
        if let Some(u) = &built.u {
            bounds.push(bound(
                "|U| <= 4 n 2^n",
                u.state_count(),
                4 * n as u128 * (1u128 << n),
            ));
        }
    }
    for b in bounds.iter().filter(|b| !b.ok) {
        fail(
            "bound",
            format!("{}: {} > {}", b.name, b.value, b.bound),
            None,
        );
    }

    let lassos = sample_accepted(a, config, sample_seed);
    for w in &lassos {
        for f in check_lasso(a, &sccs, w, &built, config.run_limit) {
            fail(&f.0, f.1, Some(w.clone()));
        }
    }

    CampaignRecord {
        index,
        params,
        sample_seed,
        awa: print_awa(a),
        single_scc,
        very_weak,
        constructions,
        lassos_checked: lassos.len(),
        bounds,
        failures,
        resource_limited,
    }
}

fn bound(name: &str, value: usize, bound: u128) -> BoundCheck {
    BoundCheck {
        name: name.to_string(),
        value: value as u128,
        bound,
        ok: value as u128 <= bound,
    }
}

fn run_construction(
    a: &Awa,
    algorithm: Algorithm,
    resolved: Algorithm,
    config: &CheckConfig,
    built: &mut Built,
) -> ConstructionRecord {
    let limit = config.state_limit;
    let result: Result<Nba<()>, ConstructionError> = match resolved {
        Algorithm::Mh => {
            miyano_hayashi_limited(a, MhSuccessors::All, limit).map(|b| b.map_payload(|_| ()))
        }
        Algorithm::Brv => brv_construct_limited(a, limit).map(|b| b.map_payload(|_| ())),
        Algorithm::Bu => bu_construct_limited(a, limit).map(|b| {
            let plain = b.map_payload(|_| ());
            built.bu = Some(b);
            plain
        }),
        Algorithm::U => u_construct_limited(a, limit).map(|b| {
            let plain = b.map_payload(|_| ());
            built.u = Some(b);
            plain
        }),
        Algorithm::Safety => safety_fallback(a).map(|b| b.map_payload(|_| ())),
        Algorithm::Auto => unreachable!("resolved by the caller"),
    };
    let b = match result {
        Ok(b) => b,
        Err(e) => {
            return ConstructionRecord {
                algorithm,
                resolved,
                outcome: BuildOutcome::ResourceLimit {
                    detail: e.to_string(),
                },
                diff: None,
                ambiguity: None,
            }
        }
    };
    let diff = bounded_language_diff(a, &b, config.max_prefix, config.max_period);
    let ambiguity = (resolved != Algorithm::Mh).then(|| {
        match ambiguity_check_limited(&b, config.product_limit) {
            Ok(None) => AmbiguityVerdict::Unambiguous,
            Ok(Some(witness)) => AmbiguityVerdict::Ambiguous { witness },
            Err(e) => AmbiguityVerdict::TooLarge { limit: e.0 },
        }
    });
    let outcome = BuildOutcome::Built {
        macrostates: b.state_count(),
        transitions: b.transition_count(),
        accepting: b.accepting_count(),
    };
    if matches!(resolved, Algorithm::Bu | Algorithm::U | Algorithm::Safety) {
        built.unambiguous.push((resolved, b));
    }
    ConstructionRecord {
        algorithm,
        resolved,
        outcome,
        diff: Some(diff),
        ambiguity,
    }
}

/// Up to `config.samples` accepted lassos in a seeded order: first from the
/// diff grid, then from a grid two letters longer on each side.
pub fn sample_accepted(a: &Awa, config: &CheckConfig, seed: u64) -> Vec<LassoWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut small = LassoWord::grid(a.letter_count(), config.max_prefix, config.max_period);
    small.shuffle(&mut rng);
    let mut out: Vec<LassoWord> = small
        .iter()
        .filter(|w| awa_accepts(a, a.initial(), w))
        .take(config.samples)
        .cloned()
        .collect();
    if out.len() < config.samples {
        let known: HashSet<LassoWord> = small.into_iter().collect();
        let mut big = LassoWord::grid(
            a.letter_count(),
            config.max_prefix + 2,
            config.max_period + 2,
        );
        big.retain(|w| !known.contains(w));
        big.shuffle(&mut rng);
        let missing = config.samples - out.len();
        out.extend(
            big.into_iter()
                .filter(|w| awa_accepts(a, a.initial(), w))
                .take(missing),
        );
    }
    out
}

/// Run-level checks on one accepted lasso; returns `(check, detail)` pairs.
fn check_lasso(
    a: &Awa,
    sccs: &SccAnalysis,
    w: &LassoWord,
    built: &Built,
    run_limit: usize,
) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let rw = unique_sequence(a, w);
    let d = match distance_profile(a, w, &rw) {
        Ok(d) => d,
        Err(e) => return vec![("distances".into(), e.to_string())],
    };
    if !distance_rules_hold(a, w, &rw, &d) {
        out.push(("distances".into(), "R1/R2 violated".into()));
    }
    let po = preorders_from_distances(sccs, &d);
    for i in 0..w.len() {
        let j = w.succ(i);
        for c in 0..sccs.len() {
            let ok = check_preorder_step(
                a,
                sccs,
                c,
                *rw.get(i),
                &po.get(i)[c],
                *rw.get(j),
                &po.get(j)[c],
                w.letter(i),
            );
            if !ok {
                out.push(("preorders".into(), format!("step {i} fails for SCC {c}")));
            }
        }
    }
    for (algo, b) in &built.unambiguous {
        match enumerate_lasso_macroruns(b, w, true, run_limit) {
            Ok(runs) if runs.len() == 1 => {}
            Ok(runs) => out.push((
                format!("runs/{algo}"),
                format!("{} accepting runs", runs.len()),
            )),
            Err(EnumerationError::LimitExceeded(l)) => out.push((
                format!("runs/{algo}"),
                format!("more than {l} accepting runs"),
            )),
            Err(e) => out.push((format!("runs/{algo}"), e.to_string())),
        }
    }
    if let Some(u) = &built.u {
        if let Ok(runs) = enumerate_lasso_macroruns(u, w, true, run_limit) {
            for run in &runs {
                if let Err(v) = check_three_item_correspondence(u, run, w, sccs, &rw, &d) {
                    out.push(("three-item".into(), v.to_string()));
                }
            }
        }
    }
    if let Some(bu) = &built.bu {
        if let Ok(runs) = enumerate_lasso_macroruns(bu, w, true, run_limit) {
            for run in &runs {
                if let Err(t) = check_breakpoint_countdown(bu, run, w, &d) {
                    out.push((
                        "countdown".into(),
                        format!("sup decrement fails at time {t}"),
                    ));
                }
            }
        }
    }
    out
}

/// Content of `record.json` in a failure artifact directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub config: CheckConfig,
    pub record: CampaignRecord,
}

pub const ARTIFACT_INPUT: &str = "input.awa";
pub const ARTIFACT_RECORD: &str = "record.json";

/// Writes one directory per failing record under `dir` and returns them.
pub fn write_artifacts(report: &CampaignReport, dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for r in report.failing() {
        let d = dir.join(format!("record-{:04}", r.index));
        write_artifact(&d, &report.params.config, r)?;
        out.push(d);
    }
    Ok(out)
}

pub fn write_artifact(dir: &Path, config: &CheckConfig, record: &CampaignRecord) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(ARTIFACT_INPUT), &record.awa)?;
    let art = Artifact {
        config: config.clone(),
        record: record.clone(),
    };
    fs::write(
        dir.join(ARTIFACT_RECORD),
        serde_json::to_string_pretty(&art).map_err(io::Error::other)?,
    )
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("cannot read artifact: {0}")]
    Io(#[from] io::Error),
    #[error("bad record.json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad input.awa: {0}")]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplayOutcome {
    pub original: CampaignRecord,
    pub replayed: CampaignRecord,
    /// The stored generator parameters rebuild the stored automaton.
    pub regenerates: Option<bool>,
}

impl ReplayOutcome {
    /// Same pass/fail verdict and the same failing checks.
    pub fn reproduces(&self) -> bool {
        self.original.failures == self.replayed.failures && self.regenerates != Some(false)
    }
}

pub fn replay(dir: &Path) -> Result<ReplayOutcome, ReplayError> {
    let art: Artifact = serde_json::from_str(&fs::read_to_string(dir.join(ARTIFACT_RECORD))?)?;
    let doc = parse_awa(&fs::read_to_string(dir.join(ARTIFACT_INPUT))?)?;
    let r = &art.record;
    let regenerates = r
        .params
        .as_ref()
        .map(|p| random_weak_awa(p).is_ok_and(|g| g == doc.awa));
    let replayed = check_automaton(
        r.index,
        r.params.clone(),
        &doc.awa,
        r.sample_seed,
        &art.config,
    );
    Ok(ReplayOutcome {
        original: art.record,
        replayed,
        regenerates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::awa::fixtures::t1;

    #[test]
    fn t1_passes_all_checks() {
        let r = check_automaton(0, None, &t1(), 1, &CheckConfig::default());
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.constructions.len(), 4);
        assert!(r.lassos_checked > 0);
    }

    #[test]
    fn empty_campaign_succeeds() {
        let mut p = CampaignParams::desk(3);
        p.count = 0;
        let r = campaign(&p);
        assert!(r.passed);
        assert!(r.records.is_empty());
    }

    #[test]
    fn campaign_is_deterministic() {
        let mut p = CampaignParams::desk(5);
        p.count = 12;
        p.max_states = 3;
        assert_eq!(campaign(&p), campaign(&p));
    }
}
