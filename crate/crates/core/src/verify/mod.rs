//! Seeded randomized suites checking the calculus against independent
//! oracles.
//!
//! Trial `k` of a run with seed `s` draws everything from a ChaCha stream
//! seeded with `s` on stream `k`, so trials are independent of each other and
//! of scheduling, and any failure can be replayed from `(suite, seed, trial,
//! bound)`.

mod complexes;
mod finite;
pub mod gen;
pub mod oracle;
mod order;
mod presented;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use gen::TrialRng;

pub use finite::{
    check_chains, check_hom_theorems, check_lattice, check_ranks, check_split, random_finite_module, FiniteCheck,
    PairSummary,
};
pub use order::check_ordinal_laws;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    SsumEquivalence,
    Findist,
    Eineq,
    PosetRank,
    ProductFormula,
    SumFormula,
    IncMap,
    AbLemma,
    SemiAdditivity,
    FinlenAdd,
    Regid,
    DimDegree,
    Genlen,
    Unmixed,
    ChainLength,
    LatticeOracle,
    Vasconcelos,
    Subim,
    Miyata,
    Noniso,
    Lowhi,
    Acyclicity,
    Acycunm,
    Period,
}

impl Suite {
    pub const ALL: [Suite; 24] = [
        Suite::SsumEquivalence,
        Suite::Findist,
        Suite::Eineq,
        Suite::PosetRank,
        Suite::ProductFormula,
        Suite::SumFormula,
        Suite::IncMap,
        Suite::AbLemma,
        Suite::SemiAdditivity,
        Suite::FinlenAdd,
        Suite::Regid,
        Suite::DimDegree,
        Suite::Genlen,
        Suite::Unmixed,
        Suite::ChainLength,
        Suite::LatticeOracle,
        Suite::Vasconcelos,
        Suite::Subim,
        Suite::Miyata,
        Suite::Noniso,
        Suite::Lowhi,
        Suite::Acyclicity,
        Suite::Acycunm,
        Suite::Period,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SsumEquivalence => "ssum-equivalence",
            Suite::Findist => "findist",
            Suite::Eineq => "eineq",
            Suite::PosetRank => "poset-rank",
            Suite::ProductFormula => "product-formula",
            Suite::SumFormula => "sum-formula",
            Suite::IncMap => "inc-map",
            Suite::AbLemma => "ab-lemma",
            Suite::SemiAdditivity => "semi-additivity",
            Suite::FinlenAdd => "finlen-add",
            Suite::Regid => "regid",
            Suite::DimDegree => "dim-degree",
            Suite::Genlen => "genlen",
            Suite::Unmixed => "unmixed",
            Suite::ChainLength => "chain-length",
            Suite::LatticeOracle => "lattice-oracle",
            Suite::Vasconcelos => "vasconcelos",
            Suite::Subim => "subim",
            Suite::Miyata => "miyata",
            Suite::Noniso => "noniso",
            Suite::Lowhi => "lowhi",
            Suite::Acyclicity => "acyclicity",
            Suite::Acycunm => "acycunm",
            Suite::Period => "period",
        }
    }

    pub fn from_name(name: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))
    }

    /// Oracle or enumeration bound used when none is given: total valence
    /// for the interleaving oracle, poset or expression size, or module
    /// order for the finite-module suites. Zero where no bound applies.
    pub fn default_bound(self) -> usize {
        match self {
            Suite::SsumEquivalence => 24,
            Suite::PosetRank | Suite::IncMap | Suite::AbLemma => 10,
            Suite::ProductFormula => 7,
            Suite::SumFormula => 60,
            Suite::SemiAdditivity | Suite::ChainLength | Suite::LatticeOracle => 64,
            Suite::Vasconcelos | Suite::Subim | Suite::Miyata | Suite::Noniso => 32,
            _ => 0,
        }
    }

    fn trial(self, rng: &mut TrialRng, trial: u64, bound: usize) -> TrialResult {
        match self {
            Suite::SsumEquivalence => order::ssum_equivalence(rng, bound),
            Suite::Findist => order::findist(rng),
            Suite::Eineq => order::eineq(rng),
            Suite::PosetRank => order::poset_rank(rng, bound),
            Suite::ProductFormula => order::product_formula(rng, bound),
            Suite::SumFormula => order::sum_formula(rng, bound),
            Suite::IncMap => order::inc_map(rng, bound),
            Suite::AbLemma => order::ab_lemma(rng, bound),
            Suite::SemiAdditivity => presented::semi_additivity(rng, trial, bound),
            Suite::FinlenAdd => presented::finlen_add(rng, trial),
            Suite::Regid => presented::regid(rng, trial),
            Suite::DimDegree => presented::dim_degree(rng, trial),
            Suite::Genlen => presented::genlen(rng, trial),
            Suite::Unmixed => presented::unmixed(rng, trial),
            Suite::ChainLength => finite::chain_length(rng, trial, bound),
            Suite::LatticeOracle => finite::lattice_oracle(rng, trial, bound),
            Suite::Vasconcelos => finite::vasconcelos(rng, trial, bound),
            Suite::Subim => finite::subim(rng, trial, bound),
            Suite::Miyata => finite::miyata(rng, trial, bound),
            Suite::Noniso => finite::noniso(rng, trial, bound),
            Suite::Lowhi => complexes::lowhi(rng, trial),
            Suite::Acyclicity => complexes::acyclicity(rng, trial),
            Suite::Acycunm => complexes::acycunm(rng, trial),
            Suite::Period => complexes::period(rng, trial),
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How a trial that did not fail went.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Checked {
    /// The hypotheses held and the conclusion was verified.
    Pass,
    /// The generated instance did not satisfy the hypotheses.
    Vacuous,
}

#[derive(Debug, Clone)]
pub(crate) struct Counterexample {
    input: Value,
    detail: String,
}

pub(crate) type TrialResult = std::result::Result<Checked, Counterexample>;

pub(crate) fn fail(input: &Value, detail: impl Into<String>) -> Counterexample {
    Counterexample { input: input.clone(), detail: detail.into() }
}

/// Returns a counterexample unless `cond` holds.
pub(crate) fn ensure(
    cond: bool,
    input: &Value,
    detail: impl FnOnce() -> String,
) -> std::result::Result<(), Counterexample> {
    if cond {
        Ok(())
    } else {
        Err(fail(input, detail()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub suite: String,
    pub seed: u64,
    pub trial: u64,
    pub bound: usize,
    pub input: Value,
    pub detail: String,
}

/// Outcome of a suite run. Serializes deterministically; the wall-clock
/// time is kept out of the serialized form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub bound: usize,
    /// Trials whose hypotheses held and whose conclusion was checked.
    pub checked: u64,
    /// Trials whose generated instance fell outside the hypotheses.
    pub vacuous: u64,
    pub failures: Vec<FailureRecord>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = TrialRng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn run_trial(suite: Suite, seed: u64, trial: u64, bound: usize) -> TrialResult {
    let mut rng = trial_rng(seed, trial);
    match catch_unwind(AssertUnwindSafe(|| suite.trial(&mut rng, trial, bound))) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            Err(fail(&Value::Null, format!("panic: {msg}")))
        }
    }
}

/// Runs `trials` trials in parallel. `bound` defaults to the suite's.
pub fn run_suite(suite: Suite, seed: u64, trials: u64, bound: Option<usize>) -> VerifyReport {
    let bound = bound.unwrap_or_else(|| suite.default_bound());
    let start = Instant::now();
    let results: Vec<(u64, TrialResult)> =
        (0..trials).into_par_iter().map(|t| (t, run_trial(suite, seed, t, bound))).collect();
    let mut report = VerifyReport {
        suite: suite.name().to_string(),
        seed,
        trials,
        bound,
        checked: 0,
        vacuous: 0,
        failures: Vec::new(),
        elapsed_ms: 0,
    };
    for (trial, r) in results {
        match r {
            Ok(Checked::Pass) => report.checked += 1,
            Ok(Checked::Vacuous) => report.vacuous += 1,
            Err(c) => report.failures.push(FailureRecord {
                suite: suite.name().to_string(),
                seed,
                trial,
                bound,
                input: c.input,
                detail: c.detail,
            }),
        }
    }
    report.failures.sort_by_key(|f| f.trial);
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

/// Re-runs the trial a failure record came from. Returns the fresh record if
/// the failure reproduces and `None` if the trial now passes.
pub fn replay(record: &FailureRecord) -> Result<Option<FailureRecord>> {
    let suite = Suite::from_name(&record.suite)?;
    Ok(match run_trial(suite, record.seed, record.trial, record.bound) {
        Ok(_) => None,
        Err(c) => Some(FailureRecord { input: c.input, detail: c.detail, ..record.clone() }),
    })
}

/// Runs a single trial, mainly for tests: `Ok(true)` if the hypotheses held
/// and the check passed, `Ok(false)` if vacuous, `Err` with the detail on
/// failure.
pub fn run_single(suite: Suite, seed: u64, trial: u64, bound: Option<usize>) -> std::result::Result<bool, String> {
    let bound = bound.unwrap_or_else(|| suite.default_bound());
    match run_trial(suite, seed, trial, bound) {
        Ok(Checked::Pass) => Ok(true),
        Ok(Checked::Vacuous) => Ok(false),
        Err(c) => Err(c.detail),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()).unwrap(), s);
        }
        assert!(matches!(Suite::from_name("nope"), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn every_suite_runs_a_few_trials() {
        for s in Suite::ALL {
            let r = run_suite(s, 3, 6, None);
            assert!(r.passed(), "{s}: {:?}", r.failures);
            assert_eq!(r.checked + r.vacuous, 6);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run_suite(Suite::SemiAdditivity, 11, 20, None)).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::SemiAdditivity, 11, 20, None)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn streams_differ_per_trial() {
        use rand::RngCore;
        let (mut a, mut b) = (trial_rng(1, 0), trial_rng(1, 1));
        assert_ne!(a.next_u64(), b.next_u64());
    }
}
