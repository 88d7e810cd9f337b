//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Runs under `cargo test`; use `cargo test -p ordlen --test acceptance` to
//! run it alone.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use ordlen::module::finite::finite_module_types;
use ordlen::module::{verify_semi_additivity, FgModule, ModuleMap};
use ordlen::ordinal::{shuffle_sum_oracle, shuffle_sum_recursive};
use ordlen::verify::{
    check_hom_theorems, check_lattice, check_ordinal_laws, check_split, gen, oracle, run_suite, trial_rng, FiniteCheck,
    Suite, VerifyReport,
};
use ordlen::{CanonicalForm, Ordinal, RingContext, RingMatrix};

const SEED: u64 = 20_261_016;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, and the check.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn suite_ok(r: &VerifyReport) -> Result<(), String> {
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!("{}: {} failures, first at trial {}: {}", r.suite, r.failures.len(), f.trial, f.detail)),
    }
}

/// Runs `suite` until at least `want` trials met their hypotheses, doubling
/// the trial count up to eight times `want`.
fn run_checked(suite: Suite, want: u64) -> Result<VerifyReport, String> {
    let mut trials = want;
    loop {
        let r = run_suite(suite, SEED, trials, None);
        suite_ok(&r)?;
        if r.checked >= want {
            return Ok(r);
        }
        if trials >= 8 * want {
            return Err(format!("{suite}: only {} of {} trials met the hypotheses", r.checked, r.trials));
        }
        trials *= 2;
    }
}

fn run_all(suite: Suite, trials: u64) -> Result<VerifyReport, String> {
    let r = run_suite(suite, SEED, trials, None);
    suite_ok(&r)?;
    Ok(r)
}

fn shuffle_sums() -> Outcome {
    let all: Vec<Ordinal> =
        (0..256u64).map(|k| Ordinal::from_coefficients(&[k % 4, (k / 4) % 4, (k / 16) % 4, k / 64])).collect();
    let bad = all.par_iter().flat_map_iter(|a| all.iter().map(move |b| (a, b))).find_any(|(a, b)| {
        let closed = a.shuffle_sum(b);
        closed != shuffle_sum_recursive(a, b) || shuffle_sum_oracle(a, b, 24).ok() != Some(closed)
    });
    if let Some((a, b)) = bad {
        return Err(format!("routes disagree on {a} and {b}"));
    }
    let r = run_all(Suite::SsumEquivalence, 1000)?;
    Ok(format!("{} exhaustive pairs, {} random pairs", all.len() * all.len(), r.checked))
}

fn ordinal_algebra() -> Outcome {
    for k in 0..1000 {
        let mut rng = trial_rng(SEED, k);
        let (a, b, c) = (gen::ordinal(&mut rng, 4, 5), gen::ordinal(&mut rng, 4, 5), gen::ordinal(&mut rng, 4, 5));
        check_ordinal_laws(&a, &b, &c).map_err(|e| format!("a = {a}, b = {b}, c = {c}: {e}"))?;
    }
    let f = run_all(Suite::Findist, 1000)?;
    let e = run_checked(Suite::Eineq, 1000)?;
    Ok(format!("1000 law triples, {} distributivity, {} splitting instances", f.checked, e.checked))
}

fn product_formula() -> Outcome {
    let r = run_all(Suite::ProductFormula, 200)?;
    Ok(format!("{} poset pairs", r.checked))
}

fn sums_and_maps() -> Outcome {
    let s = run_all(Suite::SumFormula, 200)?;
    let ab = run_checked(Suite::AbLemma, 200)?;
    let inc = run_checked(Suite::IncMap, 200)?;
    Ok(format!("{} sums, {} lower/upper set pairs, {} increasing maps", s.checked, ab.checked, inc.checked))
}

fn symbolic_lengths() -> Outcome {
    for k in 0..200 {
        let mut rng = trial_rng(SEED, k);
        let e = gen::pwo_expr(&mut rng, 60);
        let json = serde_json::to_string(&e).unwrap_or_default();
        let symbolic = e.symbolic_length().map_err(|err| format!("{json}: {err}"))?;
        let flat = e.flatten(60).map_err(|err| format!("{json}: {err}"))?;
        let brute = oracle::poset_ranks(&flat).into_iter().max().unwrap_or(0);
        if symbolic != Ordinal::from(brute as u64) || flat.rank_all().length != symbolic {
            return Err(format!("{json}: symbolic {symbolic}, brute force {brute}"));
        }
    }
    Ok("200 expressions".into())
}

fn semi_additivity() -> Outcome {
    let r = run_all(Suite::SemiAdditivity, 1500)?;
    let fin = run_all(Suite::FinlenAdd, 1500)?;
    // 0 → Z --2--> Z → Z/2 → 0
    let z = RingContext::Integers;
    let n_incl = ModuleMap::new(FgModule::free(z, 1), FgModule::free(z, 1), RingMatrix::from_i64(z, 1, 1, &[2]))
        .map_err(|e| e.to_string())?;
    let q = FgModule::cyclic(z, z.from_i64(2));
    let q_proj = ModuleMap::new(FgModule::free(z, 1), q, RingMatrix::identity(z, 1)).map_err(|e| e.to_string())?;
    let rep = verify_semi_additivity(&n_incl, &q_proj, None, 0).map_err(|e| e.to_string())?;
    let w = Ordinal::omega();
    if (rep.lower.clone(), rep.len_m.clone(), rep.upper.clone()) != (w.clone(), w.clone(), w.successor()) {
        return Err(format!("integer example gives {} ≤ {} ≤ {}", rep.lower, rep.len_m, rep.upper));
    }
    Ok(format!(
        "{} sequences, {} finite-length submodules, integer example {} ≤ {} ≤ {}",
        r.checked, fin.checked, rep.lower, rep.len_m, rep.upper
    ))
}

fn lattices() -> Outcome {
    let types = finite_module_types(RingContext::Integers, 64);
    types.par_iter().try_for_each(|t| {
        let fc = FiniteCheck::new(&t.to_module(), 64).map_err(|e| format!("{t}: {e}"))?;
        check_lattice(&fc).map_err(|e| format!("{t}: {e}"))
    })?;
    Ok(format!("{} abelian groups", types.len()))
}

fn order(cf: &CanonicalForm) -> usize {
    cf.factors.iter().map(|d| cf.ctx.quotient_size(d).expect("finite")).product()
}

fn hom_theorems(ctx: RingContext, bound: usize) -> Result<(usize, usize, u128), String> {
    let types = finite_module_types(ctx, bound);
    let checks: Vec<FiniteCheck> = types
        .par_iter()
        .map(|t| FiniteCheck::new(&t.to_module(), bound))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let pairs: Vec<(usize, usize)> = (0..types.len()).flat_map(|i| (0..types.len()).map(move |j| (i, j))).collect();
    let homs = pairs
        .par_iter()
        .map(|&(i, j)| {
            check_hom_theorems(&checks[i], &checks[j])
                .map(|s| s.homs)
                .map_err(|e| format!("{} → {}: {e}", types[i], types[j]))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let splits: Vec<(usize, usize)> =
        pairs.into_iter().filter(|&(i, j)| order(&types[i]) * order(&types[j]) <= bound).collect();
    splits.par_iter().try_for_each(|&(i, c)| {
        let n = types[i].to_module().direct_sum(&types[c].to_module());
        let fnn = FiniteCheck::new(&n, bound).map_err(|e| e.to_string())?;
        match check_split(&checks[i], &types[c], &fnn) {
            Ok(0) => Err(format!("no map {} → {n:?} has cokernel {}", types[i], types[c])),
            Ok(_) => Ok(()),
            Err(e) => Err(format!("{} ⊕ {}: {e}", types[i], types[c])),
        }
    })?;
    Ok((types.len(), splits.len(), homs))
}

fn finite_homs() -> Outcome {
    let mut parts = Vec::new();
    for ctx in [RingContext::Integers, RingContext::Polynomial(2), RingContext::Polynomial(3)] {
        let (types, splits, homs) = hom_theorems(ctx, 32)?;
        parts.push(format!("{}: {types} types, {homs} maps, {splits} split checks", ctx.name()));
    }
    Ok(parts.join("; "))
}

fn presented_modules() -> Outcome {
    let mut parts = Vec::new();
    for suite in [Suite::DimDegree, Suite::Genlen, Suite::Unmixed, Suite::Regid] {
        let r = run_all(suite, 1500)?;
        parts.push(format!("{suite} {}", r.checked));
    }
    Ok(parts.join(", "))
}

fn complexes() -> Outcome {
    let low = run_all(Suite::Lowhi, 300)?;
    let acyc = run_checked(Suite::Acyclicity, 300)?;
    let unm = run_all(Suite::Acycunm, 300)?;
    let per = run_checked(Suite::Period, 100)?;
    Ok(format!(
        "{} exact, {} criterion, {} free, {} periodic complexes",
        low.checked, acyc.checked, unm.checked, per.checked
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("shuffle sum, three constructions", Some(10), shuffle_sums),
        ("ordinal algebra", None, ordinal_algebra),
        ("product formula", Some(30), product_formula),
        ("sum formula, increasing maps, lower/upper sets", None, sums_and_maps),
        ("symbolic and explicit lengths", None, symbolic_lengths),
        ("semi-additivity", Some(60), semi_additivity),
        ("submodule lattices of groups of order ≤ 64", Some(60), lattices),
        ("homomorphisms of modules of order ≤ 32", None, finite_homs),
        ("dimension, generic length, unmixed modules", None, presented_modules),
        ("complexes", Some(120), complexes),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let late = limit.filter(|&s| took > Duration::from_secs(s));
        let (status, detail) = match (&outcome, late) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(s)) => ("FAIL", format!("{d}; over the {s} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        let limit = limit.map(|s| format!(", limit {s} s")).unwrap_or_default();
        println!("criterion {:>2} {status} {name}: {detail} ({:.2} s{limit})", k + 1, took.as_secs_f64());
    }
    if failed == 0 {
        println!("all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
