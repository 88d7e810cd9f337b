//! Suites for ordinal arithmetic and finite partial orders.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::gen::{self, TrialRng};
use super::{ensure, fail, oracle, Checked, TrialResult};
use crate::ordinal::{shuffle_sum_oracle, shuffle_sum_recursive, Ordinal};
use crate::pwo::FinitePoset;

fn ords(pairs: &[(&str, &Ordinal)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect())
}

pub(super) fn ssum_equivalence(rng: &mut TrialRng, bound: usize) -> TrialResult {
    let half = (bound as u64 / 2).max(1);
    let a = gen::ordinal_with_valence(rng, 3, 3, half);
    let b = gen::ordinal_with_valence(rng, 3, 3, half);
    let input = ords(&[("a", &a), ("b", &b)]);
    let closed = a.shuffle_sum(&b);
    let recursive = shuffle_sum_recursive(&a, &b);
    let brute = shuffle_sum_oracle(&a, &b, bound).map_err(|e| fail(&input, e.to_string()))?;
    ensure(closed == recursive && recursive == brute, &input, || {
        format!("coefficientwise {closed}, recursive {recursive}, interleavings {brute}")
    })?;
    Ok(Checked::Pass)
}

pub(super) fn findist(rng: &mut TrialRng) -> TrialResult {
    let a = gen::ordinal(rng, 4, 5);
    let b = gen::ordinal(rng, 4, 5);
    let one = Ordinal::one();
    let input = ords(&[("a", &a), ("b", &b)]);
    let lhs = a.shuffle_sum(&b).ord_sum(&one);
    let mid = a.ord_sum(&one).shuffle_sum(&b);
    let rhs = a.shuffle_sum(&b.ord_sum(&one));
    ensure(lhs == mid && mid == rhs, &input, || format!("(a#b)+1 = {lhs}, (a+1)#b = {mid}, a#(b+1) = {rhs}"))?;
    if a.is_zero() || b.is_zero() {
        return Ok(Checked::Pass);
    }
    // the extension to any θ below ω^(o+1), o the smaller order
    let o = a.order().min(b.order()) as u32;
    let theta = gen::ordinal(rng, o, 5);
    let input = ords(&[("a", &a), ("b", &b), ("theta", &theta)]);
    let lhs = a.shuffle_sum(&b).ord_sum(&theta);
    let mid = a.ord_sum(&theta).shuffle_sum(&b);
    let rhs = a.shuffle_sum(&b.ord_sum(&theta));
    ensure(lhs == mid && mid == rhs, &input, || format!("(a#b)+t = {lhs}, (a+t)#b = {mid}, a#(b+t) = {rhs}"))?;
    Ok(Checked::Pass)
}

/// An ordinal whose exponents all lie in `lo..=hi`.
fn ordinal_between(rng: &mut TrialRng, lo: u32, hi: u32, max_coeff: u64) -> Ordinal {
    Ordinal::from_terms((lo..=hi).map(|e| (e, if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..=max_coeff) })))
}

pub(super) fn eineq(rng: &mut TrialRng) -> TrialResult {
    let e: u32 = rng.gen_range(0..=3);
    let alpha = ordinal_between(rng, e, e + 2, 4);
    let below = if e == 0 { Ordinal::zero() } else { ordinal_between(rng, 0, e - 1, 4) };
    let beta = alpha.ord_sum(&below);
    let lambda =
        if rng.gen_bool(0.6) && e > 0 { ordinal_between(rng, 0, e - 1, 5) } else { ordinal_between(rng, 0, e + 1, 3) };
    let input = json!({"e": e, "alpha": alpha.to_string(), "beta": beta.to_string(), "lambda": lambda.to_string()});
    ensure(alpha.order() >= e as i64 || alpha.is_zero(), &input, || "generator broke ord α ≥ e".into())?;
    ensure(alpha.upper_part(e) == beta.upper_part(e), &input, || "generator broke α =_e β".into())?;
    if alpha.ord_sum(&lambda) > beta {
        return Ok(Checked::Vacuous);
    }
    ensure(lambda.degree() < e as i64, &input, || format!("α+λ ≤ β but deg λ = {}", lambda.degree()))?;
    Ok(Checked::Pass)
}

/// Commutativity, associativity and cancellation of the shuffle sum,
/// associativity of the ordinal sum, absorption and dominance.
pub fn check_ordinal_laws(a: &Ordinal, b: &Ordinal, c: &Ordinal) -> Result<(), String> {
    let s = |x: &Ordinal, y: &Ordinal| x.shuffle_sum(y);
    let p = |x: &Ordinal, y: &Ordinal| x.ord_sum(y);
    if s(a, b) != s(b, a) {
        return Err(format!("shuffle not commutative: {a}, {b}"));
    }
    if s(&s(a, b), c) != s(a, &s(b, c)) {
        return Err(format!("shuffle not associative: {a}, {b}, {c}"));
    }
    if (s(a, c) == s(b, c)) != (a == b) {
        return Err(format!("shuffle cancellation fails: {a}, {b}, {c}"));
    }
    if p(&p(a, b), c) != p(a, &p(b, c)) {
        return Err(format!("sum not associative: {a}, {b}, {c}"));
    }
    let absorbed = p(a, b) == *b;
    if absorbed != (a.is_zero() || a.degree() < b.degree()) {
        return Err(format!("absorption mismatch: {a} + {b} = {}", p(a, b)));
    }
    if p(a, b) > s(a, b) || p(b, a) > s(a, b) {
        return Err(format!("sum exceeds shuffle: {a}, {b}"));
    }
    Ok(())
}

fn poset_json(p: &FinitePoset) -> Value {
    serde_json::to_value(p).expect("poset serializes")
}

pub(super) fn poset_rank(rng: &mut TrialRng, bound: usize) -> TrialResult {
    let n = rng.gen_range(1..=bound.max(1));
    let p = gen::poset(rng, n);
    let input = poset_json(&p);
    let table = p.rank_all();
    let relaxed = oracle::poset_ranks(&p);
    ensure(table.rank == relaxed, &input, || format!("ranks {:?}, relaxation {:?}", table.rank, relaxed))?;
    let chain = p.max_chain_length().map_err(|e| fail(&input, e.to_string()))?;
    let top = *relaxed.iter().max().unwrap_or(&0);
    ensure(table.length == Ordinal::from(chain as u64) && chain == top, &input, || {
        format!("length {}, max chain {chain}, max rank {top}", table.length)
    })?;
    Ok(Checked::Pass)
}

pub(super) fn product_formula(rng: &mut TrialRng, bound: usize) -> TrialResult {
    let (np, nq) = (rng.gen_range(1..=bound.max(1)), rng.gen_range(1..=bound.max(1)));
    let (p, q) = (gen::poset(rng, np), gen::poset(rng, nq));
    let input = json!({"p": poset_json(&p), "q": poset_json(&q)});
    let (rp, rq) = (p.rank_all(), q.rank_all());
    let prod = p.product(&q);
    let rpq = prod.rank_all();
    let relaxed = oracle::poset_ranks(&prod);
    for a in 0..np {
        for b in 0..nq {
            let idx = a * nq + b;
            let expected = rp.rank_ordinal(a).shuffle_sum(&rq.rank_ordinal(b));
            ensure(rpq.rank_ordinal(idx) == expected && relaxed[idx] == rpq.rank[idx], &input, || {
                format!("rank of ({a},{b}) is {} (relaxation {}), expected {expected}", rpq.rank[idx], relaxed[idx])
            })?;
        }
    }
    let expected = rp.length.shuffle_sum(&rq.length);
    ensure(rpq.length == expected, &input, || format!("len P×Q = {}, expected {expected}", rpq.length))?;
    Ok(Checked::Pass)
}

pub(super) fn sum_formula(rng: &mut TrialRng, bound: usize) -> TrialResult {
    let n = rng.gen_range(0..=6);
    let p = gen::poset_with_top(rng, n);
    let n = rng.gen_range(0..=7);
    let q = gen::poset(rng, n);
    let input = json!({"p": poset_json(&p), "q": poset_json(&q)});
    let (lp, lq) = (p.rank_all().length, q.rank_all().length);
    let sum = p.sum(&q);
    let brute = oracle::poset_ranks(&sum).into_iter().max().unwrap_or(0);
    let expected = if q.is_empty() { lp.clone() } else { lp.ord_sum(&Ordinal::one()).ord_sum(&lq) };
    ensure(Ordinal::from(brute as u64) == expected, &input, || {
        format!("len(P+Q) = {brute}, len P = {lp}, len Q = {lq}")
    })?;

    let e = gen::pwo_expr(rng, bound.max(1));
    let input = serde_json::to_value(&e).expect("expression serializes");
    let symbolic = e.symbolic_length().map_err(|err| fail(&input, err.to_string()))?;
    let flat = e.flatten(bound.max(1)).map_err(|err| fail(&input, err.to_string()))?;
    let brute = oracle::poset_ranks(&flat).into_iter().max().unwrap_or(0);
    ensure(symbolic == Ordinal::from(brute as u64), &input, || {
        format!("symbolic length {symbolic}, brute force {brute}")
    })?;
    Ok(Checked::Pass)
}

/// A strictly increasing map from `p` (with minimum 0) into `q`, assigned in
/// rank order with each image chosen above the images of all predecessors.
fn increasing_map(rng: &mut TrialRng, p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let ranks = p.rank_all().rank;
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&a| ranks[a]);
    let mut f = vec![usize::MAX; p.len()];
    for &a in &order {
        let options: Vec<usize> =
            (0..q.len()).filter(|&y| (0..p.len()).all(|b| !p.lt(b, a) || q.lt(f[b], y))).collect();
        f[a] = *options.choose(rng)?;
    }
    Some(f)
}

pub(super) fn inc_map(rng: &mut TrialRng, bound: usize) -> TrialResult {
    let n = rng.gen_range(2..=bound.max(2));
    let q = gen::poset(rng, n);
    let mut attempt = None;
    for _ in 0..8 {
        let n = rng.gen_range(0..=4);
        let p = gen::poset_with_bottom(rng, n);
        if let Some(f) = increasing_map(rng, &p, &q) {
            attempt = Some((p, f));
            break;
        }
    }
    let Some((p, f)) = attempt else { return Ok(Checked::Vacuous) };
    let input = json!({"p": poset_json(&p), "q": poset_json(&q), "f": f});
    for a in 0..p.len() {
        for b in 0..p.len() {
            ensure(!p.lt(a, b) || q.lt(f[a], f[b]), &input, || "generator produced a non-increasing map".into())?;
        }
    }
    let (rp, rq) = (p.rank_all(), q.rank_all());
    let bottom = p.minimum().expect("bottom added");
    for a in 0..p.len() {
        let lhs = rq.rank_ordinal(f[bottom]).ord_sum(&rp.rank_ordinal(a));
        ensure(lhs <= rq.rank_ordinal(f[a]), &input, || {
            format!("rank f(⊥) + rank {a} = {lhs} > rank f({a}) = {}", rq.rank[f[a]])
        })?;
    }
    Ok(Checked::Pass)
}

pub(super) fn ab_lemma(rng: &mut TrialRng, bound: usize) -> TrialResult {
    let n = rng.gen_range(2..=bound.max(2));
    let p = gen::poset(rng, n);
    let x = rng.gen_range(0..n);
    let up: Vec<usize> = (0..n).filter(|&b| p.le(x, b)).collect();
    let b_set: Vec<usize> = up.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
    if b_set.is_empty() {
        return Ok(Checked::Vacuous);
    }
    let below: Vec<usize> = (0..n).filter(|&a| b_set.iter().all(|&b| p.le(a, b))).collect();
    let mut a_set: Vec<usize> = below.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
    if a_set.is_empty() {
        a_set.push(*below.choose(rng).expect("x lies below B"));
    }
    let input = json!({"p": poset_json(&p), "A": a_set, "B": b_set});
    let la = p.induced(&a_set).rank_all().length;
    let lb = p.induced(&b_set).rank_all().length;
    let ranks = p.rank_all();
    let hd_b = b_set.iter().map(|&b| ranks.rank[b]).max().expect("nonempty");
    ensure(la.ord_sum(&lb) <= Ordinal::from(hd_b as u64), &input, || {
        format!("len A + len B = {} > hdim_P B = {hd_b}", la.ord_sum(&lb))
    })?;
    Ok(Checked::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_on_small_examples() {
        let o = |s: &str| s.parse::<Ordinal>().unwrap();
        check_ordinal_laws(&o("w+1"), &o("w^2"), &o("3")).unwrap();
        check_ordinal_laws(&o("0"), &o("0"), &o("0")).unwrap();
        check_ordinal_laws(&o("2*w"), &o("2*w"), &o("w")).unwrap();
    }
}
