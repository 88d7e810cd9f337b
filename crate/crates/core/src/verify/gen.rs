//! Random instance generators. Everything is drawn from a caller-supplied
//! RNG so a trial is reproducible from `(seed, trial)` alone.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::euclid::{RingContext, RingElement, RingMatrix};
use crate::module::FgModule;
use crate::ordinal::Ordinal;
use crate::pwo::{FinitePoset, PwoExpr};

pub type TrialRng = ChaCha8Rng;

pub fn ordinal(rng: &mut TrialRng, max_deg: u32, max_coeff: u64) -> Ordinal {
    let coeffs: Vec<u64> =
        (0..=max_deg).map(|_| if rng.gen_bool(0.35) { 0 } else { rng.gen_range(0..=max_coeff) }).collect();
    Ordinal::from_coefficients(&coeffs)
}

/// A nonzero ordinal with total valence at most `max_valence`.
pub fn ordinal_with_valence(rng: &mut TrialRng, max_deg: u32, max_coeff: u64, max_valence: u64) -> Ordinal {
    loop {
        let a = ordinal(rng, max_deg, max_coeff);
        if !a.is_zero() && a.valence() <= max_valence.into() {
            return a;
        }
    }
}

/// A random order on `n` points: a random DAG on a shuffled labelling,
/// closed transitively.
pub fn poset(rng: &mut TrialRng, n: usize) -> FinitePoset {
    let density = rng.gen_range(0.1..0.6);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((labels[i], labels[j]));
            }
        }
    }
    FinitePoset::new(n, &pairs).expect("acyclic by construction")
}

pub fn poset_with_top(rng: &mut TrialRng, n: usize) -> FinitePoset {
    poset(rng, n).sum(&FinitePoset::chain(1))
}

pub fn poset_with_bottom(rng: &mut TrialRng, n: usize) -> FinitePoset {
    FinitePoset::chain(1).sum(&poset(rng, n))
}

/// A random expression over finite chains and small explicit posets whose
/// flattening has at most `max_size` elements.
pub fn pwo_expr(rng: &mut TrialRng, max_size: usize) -> PwoExpr {
    fn go(rng: &mut TrialRng, budget: usize, depth: u32) -> PwoExpr {
        let leaf = depth == 0 || budget < 2 || rng.gen_bool(0.3);
        if leaf {
            let n = rng.gen_range(0..=budget.min(6));
            return if rng.gen_bool(0.5) {
                PwoExpr::chain(Ordinal::from(n as u64))
            } else {
                PwoExpr::Explicit(poset(rng, n))
            };
        }
        if rng.gen_bool(0.5) {
            // a sum needs a left operand with a maximum
            let left_budget = rng.gen_range(1..budget);
            let mut left = go(rng, left_budget, depth - 1);
            if !left.has_max() {
                left = PwoExpr::chain(Ordinal::from(left_budget.min(3) as u64));
            }
            let used = left.size().unwrap_or(budget);
            let right = go(rng, budget.saturating_sub(used).max(1), depth - 1);
            PwoExpr::sum(left, right)
        } else {
            let a = rng.gen_range(1..=budget.min(8));
            let b = (budget / a).max(1);
            PwoExpr::product(go(rng, a, depth - 1), go(rng, b, depth - 1))
        }
    }
    loop {
        let e = go(rng, max_size, 4);
        if e.size().is_some_and(|s| s <= max_size) {
            return e;
        }
    }
}

/// Picks `Z`, `Z_(p)` or `F_p[x]` by `trial % 3`, with a random small prime.
pub fn context(rng: &mut TrialRng, trial: u64) -> RingContext {
    match trial % 3 {
        0 => RingContext::Integers,
        1 => RingContext::Localized(*[2, 3, 5].choose(rng).unwrap()),
        _ => RingContext::Polynomial(*[2, 3, 5, 7].choose(rng).unwrap()),
    }
}

/// Entries in `[-9, 9]`; localized fractions with denominators up to 9;
/// polynomials of degree at most 3. Zero with probability `zero_bias`.
pub fn element(rng: &mut TrialRng, ctx: RingContext, zero_bias: f64) -> RingElement {
    if rng.gen_bool(zero_bias) {
        return ctx.zero();
    }
    match ctx {
        RingContext::Integers => ctx.from_i64(rng.gen_range(-9..=9)),
        RingContext::Localized(p) => {
            let num = rng.gen_range(-9..=9);
            let den = loop {
                let d: i64 = rng.gen_range(1..=9);
                if d % p as i64 != 0 {
                    break d;
                }
            };
            ctx.fraction(BigInt::from(num), BigInt::from(den)).expect("unit denominator")
        }
        RingContext::Polynomial(p) => {
            let deg = rng.gen_range(0..=3);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..p as i64)).collect();
            ctx.polynomial(&coeffs).expect("valid coefficients")
        }
    }
}

pub fn nonzero_element(rng: &mut TrialRng, ctx: RingContext) -> RingElement {
    loop {
        let a = element(rng, ctx, 0.0);
        if !ctx.is_zero(&a) {
            return a;
        }
    }
}

pub fn unit(rng: &mut TrialRng, ctx: RingContext) -> RingElement {
    loop {
        let a = element(rng, ctx, 0.0);
        if ctx.is_unit(&a) {
            return a;
        }
    }
}

pub fn matrix(rng: &mut TrialRng, ctx: RingContext, rows: usize, cols: usize, zero_bias: f64) -> RingMatrix {
    RingMatrix::from_fn(ctx, rows, cols, |_, _| element(rng, ctx, zero_bias))
}

/// A product of random elementary operations, with its inverse.
pub fn unimodular(rng: &mut TrialRng, ctx: RingContext, n: usize) -> (RingMatrix, RingMatrix) {
    let mut u = RingMatrix::identity(ctx, n);
    let mut inv = RingMatrix::identity(ctx, n);
    if n == 0 {
        return (u, inv);
    }
    for _ in 0..2 * n + 1 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let op = rng.gen_range(0..3);
        if op == 0 && i != j {
            // row_i += c·row_j on u; col_j -= c·col_i on inv
            let c = element(rng, ctx, 0.2);
            for k in 0..n {
                let v = ctx.add(u.get(i, k), &ctx.mul(&c, u.get(j, k)));
                u.set(i, k, v);
                let w = ctx.sub(inv.get(k, j), &ctx.mul(inv.get(k, i), &c));
                inv.set(k, j, w);
            }
        } else if op == 1 {
            for k in 0..n {
                let (a, b) = (u.get(i, k).clone(), u.get(j, k).clone());
                u.set(i, k, b);
                u.set(j, k, a);
                let (a, b) = (inv.get(k, i).clone(), inv.get(k, j).clone());
                inv.set(k, i, b);
                inv.set(k, j, a);
            }
        } else {
            let c = unit(rng, ctx);
            let ci = ctx.unit_inverse(&c);
            for k in 0..n {
                let v = ctx.mul(&c, u.get(i, k));
                u.set(i, k, v);
                let w = ctx.mul(inv.get(k, i), &ci);
                inv.set(k, i, w);
            }
        }
    }
    (u, inv)
}

/// A random presentation with up to `max_gens` generators and relations.
pub fn module(rng: &mut TrialRng, ctx: RingContext, max_gens: usize) -> FgModule {
    let g = rng.gen_range(1..=max_gens);
    let r = rng.gen_range(0..=max_gens);
    let zero_bias = rng.gen_range(0.2..0.7);
    FgModule::new(g, matrix(rng, ctx, g, r, zero_bias)).expect("shape")
}

/// A module built as `R^free ⊕ ⊕ R/(dᵢ)` and then disguised by a random
/// change of generators and relations.
pub fn structured_module(rng: &mut TrialRng, ctx: RingContext, max_gens: usize) -> FgModule {
    let g = rng.gen_range(1..=max_gens);
    let free = rng.gen_range(0..=g);
    let factors: Vec<RingElement> = (0..g - free).map(|_| nonzero_element(rng, ctx)).collect();
    disguise(rng, &FgModule::from_parts(ctx, free, &factors))
}

/// The same module under a random invertible change of generators, a
/// random change of relation basis and possibly one redundant relation.
pub fn disguise(rng: &mut TrialRng, m: &FgModule) -> FgModule {
    let ctx = m.ctx;
    let g = m.generators();
    let (p, _) = unimodular(rng, ctx, g);
    let (q, _) = unimodular(rng, ctx, m.relations().cols());
    let mut rel = p.mul(m.relations()).and_then(|a| a.mul(&q)).expect("shapes");
    if rel.cols() > 0 && rng.gen_bool(0.5) {
        let combo = matrix(rng, ctx, rel.cols(), 1, 0.3);
        let extra = rel.mul(&combo).expect("shapes");
        rel = rel.hcat(&extra).expect("rows");
    }
    FgModule::new(g, rel).expect("shape")
}

/// `m` presented on new generators `P⁻¹·e`, together with the change of
/// coordinates `P` taking old coordinates to new and its inverse.
pub fn rebase(rng: &mut TrialRng, m: &FgModule) -> (FgModule, RingMatrix, RingMatrix) {
    let (p, p_inv) = unimodular(rng, m.ctx, m.generators());
    let rel = p.mul(m.relations()).expect("shapes");
    (FgModule::new(m.generators(), rel).expect("shape"), p, p_inv)
}
