//! Suites for lengths of presented modules over the three ring contexts.

use rand::Rng;
use serde_json::{json, Value};

use super::gen::{self, TrialRng};
use super::{ensure, fail, oracle, Checked, Counterexample, TrialResult};
use crate::euclid::{smith_normal_form, RingContext, RingMatrix};
use crate::module::{verify_semi_additivity, FgModule, ModuleMap};
use crate::ordinal::Ordinal;

type Step<T = ()> = std::result::Result<T, Counterexample>;

fn some_module(rng: &mut TrialRng, ctx: RingContext) -> FgModule {
    if rng.gen_bool(0.5) {
        gen::module(rng, ctx, 5)
    } else {
        gen::structured_module(rng, ctx, 5)
    }
}

fn check_lengths(mods: &[(&str, &FgModule)], input: &Value) -> Step {
    for (name, m) in mods {
        let (fast, slow) = (m.length(), oracle::module_length(m));
        ensure(fast == slow, input, || format!("len {name}: Smith form {fast}, determinantal {slow}"))?;
    }
    Ok(())
}

/// `0 → im φ → M → M/im φ → 0` for a map `φ: R^s → M` given by columns.
fn sequence_from_columns(m: &FgModule, phi: &RingMatrix) -> (ModuleMap, ModuleMap) {
    let ctx = m.ctx;
    let free = FgModule::free(ctx, phi.cols());
    let lifted = ModuleMap::new(free, m.clone(), phi.clone()).expect("free source").lifted_kernel();
    let n = FgModule::new(phi.cols(), lifted).expect("shape");
    let n_incl = ModuleMap::new(n, m.clone(), phi.clone()).expect("kernel relations map to zero");
    let q = FgModule::new(m.generators(), m.relations().hcat(phi).expect("rows")).expect("shape");
    let q_proj = ModuleMap::new(m.clone(), q, RingMatrix::identity(ctx, m.generators())).expect("quotient map");
    (n_incl, q_proj)
}

pub(super) fn semi_additivity(rng: &mut TrialRng, trial: u64, bound: usize) -> TrialResult {
    let ctx = gen::context(rng, trial);
    if rng.gen_bool(0.3) {
        return split_sequence(rng, ctx, bound);
    }
    let m = some_module(rng, ctx);
    let s = rng.gen_range(1..=3);
    let phi = gen::matrix(rng, ctx, m.generators(), s, 0.4);
    let input = json!({"module": m.to_json(), "map_columns": phi.to_json()});
    let (n_incl, q_proj) = sequence_from_columns(&m, &phi);
    let report = verify_semi_additivity(&n_incl, &q_proj, None, bound).map_err(|e| fail(&input, e.to_string()))?;
    check_lengths(&[("N", &n_incl.source), ("M", &m), ("Q", &q_proj.target)], &input)?;
    ensure(report.lower_holds && report.upper_holds, &input, || {
        format!("{} ≤ {} ≤ {} fails", report.lower, report.len_m, report.upper)
    })?;
    ensure(report.split_equality != Some(false), &input, || {
        format!("split sequence with len M = {} ≠ {}", report.len_m, report.upper)
    })?;
    Ok(Checked::Pass)
}

/// `0 → N → N ⊕ Q → Q → 0` in a disguised presentation, with its retraction.
fn split_sequence(rng: &mut TrialRng, ctx: RingContext, bound: usize) -> TrialResult {
    let n = gen::structured_module(rng, ctx, 3);
    let q = gen::structured_module(rng, ctx, 3);
    let (gn, gq) = (n.generators(), q.generators());
    let (m, p, p_inv) = gen::rebase(rng, &n.direct_sum(&q));
    let ident = |i: usize, j: usize| if i == j { ctx.one() } else { ctx.zero() };
    let incl = RingMatrix::from_fn(ctx, gn + gq, gn, ident);
    let proj = RingMatrix::from_fn(ctx, gq, gn + gq, |i, j| ident(i + gn, j));
    let retr = RingMatrix::from_fn(ctx, gn, gn + gq, ident);
    let input = json!({"n": n.to_json(), "q": q.to_json(), "m": m.to_json()});
    let mk = |s: &FgModule, t: &FgModule, a: RingMatrix| {
        ModuleMap::new(s.clone(), t.clone(), a).map_err(|e| fail(&input, e.to_string()))
    };
    let n_incl = mk(&n, &m, p.mul(&incl).expect("shape"))?;
    let q_proj = mk(&m, &q, proj.mul(&p_inv).expect("shape"))?;
    let r = mk(&m, &n, retr.mul(&p_inv).expect("shape"))?;
    let report = verify_semi_additivity(&n_incl, &q_proj, Some(&r), bound).map_err(|e| fail(&input, e.to_string()))?;
    check_lengths(&[("N", &n), ("M", &m), ("Q", &q)], &input)?;
    ensure(report.lower_holds && report.upper_holds && report.split_equality == Some(true), &input, || {
        format!("split: {} ≤ {} = {} fails", report.lower, report.len_m, report.upper)
    })?;
    Ok(Checked::Pass)
}

pub(super) fn finlen_add(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial);
    let m = gen::structured_module(rng, ctx, 5);
    let snf = smith_normal_form(m.relations());
    let torsion_rows: Vec<usize> = (0..snf.rank()).filter(|&i| !ctx.is_unit(&snf.d[i])).collect();
    let s = rng.gen_range(1..=3);
    // columns in the torsion part: combinations of the Smith basis vectors
    // of the torsion rows
    let phi = RingMatrix::from_fn(ctx, m.generators(), s, |_, _| ctx.zero());
    let mut phi = phi;
    for j in 0..s {
        for &i in &torsion_rows {
            let c = gen::element(rng, ctx, 0.3);
            for r in 0..m.generators() {
                let v = ctx.add(phi.get(r, j), &ctx.mul(snf.u_inv.get(r, i), &c));
                phi.set(r, j, v);
            }
        }
    }
    let input = json!({"module": m.to_json(), "map_columns": phi.to_json()});
    let (n_incl, q_proj) = sequence_from_columns(&m, &phi);
    let (n, q) = (&n_incl.source, &q_proj.target);
    check_lengths(&[("N", n), ("M", &m), ("Q", q)], &input)?;
    ensure(n.is_finite_length(), &input, || format!("torsion submodule has length {}", n.length()))?;
    let expected = q.length().ord_sum(&n.length());
    ensure(m.length() == expected, &input, || format!("len M = {}, len(M/N) + len N = {expected}", m.length()))?;
    Ok(Checked::Pass)
}

pub(super) fn regid(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial);
    let x = gen::nonzero_element(rng, ctx);
    let y = gen::element(rng, ctx, 0.25);
    let xy = ctx.mul(&x, &y);
    let input = json!({"ring": ctx, "x": ctx.element_to_json(&x), "ideal": ctx.element_to_json(&y)});
    let (r_x, r_i, r_xi) = (FgModule::cyclic(ctx, x.clone()), FgModule::cyclic(ctx, y), FgModule::cyclic(ctx, xy));
    let lhs = r_x.length().ord_sum(&r_i.length());
    ensure(lhs <= r_xi.length(), &input, || format!("len R/xR + len R/I = {lhs} > len R/xI = {}", r_xi.length()))?;
    // the sequence 0 → R/I --x--> R/xI → R/xR → 0 itself
    let mult = ModuleMap::new(r_i, r_xi.clone(), RingMatrix::from_columns(ctx, 1, &[vec![x]]))
        .map_err(|e| fail(&input, e.to_string()))?;
    let proj =
        ModuleMap::new(r_xi, r_x.clone(), RingMatrix::identity(ctx, 1)).map_err(|e| fail(&input, e.to_string()))?;
    let report = verify_semi_additivity(&mult, &proj, None, 0).map_err(|e| fail(&input, e.to_string()))?;
    ensure(report.lower_holds && report.upper_holds, &input, || "semi-additivity fails on the sequence".into())?;
    let len_r = FgModule::free(ctx, 1).length();
    ensure(r_x.length().degree() < len_r.degree(), &input, || {
        format!("deg len R/xR = {} not below deg len R = {}", r_x.length().degree(), len_r.degree())
    })?;
    Ok(Checked::Pass)
}

pub(super) fn dim_degree(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial);
    let m = some_module(rng, ctx);
    let input = m.to_json();
    check_lengths(&[("M", &m)], &input)?;
    let (dim, deg, slow) = (m.dimension(), m.length().degree(), oracle::module_dimension(&m));
    ensure(dim == deg && dim == slow, &input, || format!("dimension {dim}, degree {deg}, by minors {slow}"))?;
    Ok(Checked::Pass)
}

pub(super) fn genlen(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial);
    let m = some_module(rng, ctx);
    let input = m.to_json();
    let (len, dim, g) = (m.length(), m.dimension(), m.generic_length());
    if dim < 0 {
        ensure(g == 0u32.into() && len.is_zero(), &input, || format!("zero module with genlen {g}"))?;
        return Ok(Checked::Pass);
    }
    let top = len.upper_part(dim as u32);
    ensure(top == Ordinal::monomial(g.clone(), dim as u32), &input, || format!("upper part {top} ≠ {g}·ω^{dim}"))?;
    let (r, d) = oracle::rank_and_divisor(m.relations());
    let expected: u64 = if dim == 1 { (m.generators() - r) as u64 } else { ctx.factor_count(&d).expect("nonzero") };
    ensure(g == expected.into(), &input, || format!("genlen {g}, by minors {expected}"))?;
    Ok(Checked::Pass)
}

pub(super) fn unmixed(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial);
    let m = some_module(rng, ctx);
    let input = m.to_json();
    let (r, d) = oracle::rank_and_divisor(m.relations());
    let pure = r == m.generators() || ctx.is_unit(&d);
    let len = m.length();
    ensure(m.is_unmixed() == pure && pure == (len.is_zero() || len.is_monomial()), &input, || {
        format!("unmixed {}, free or torsion {pure}, length {len}", m.is_unmixed())
    })?;
    unmixed_quotient(rng, ctx)
}

/// `0 → N → M → Q → 0` with `Q` unmixed of the dimension of `M`, where the
/// length of `M` must be the shuffle sum.
fn unmixed_quotient(rng: &mut TrialRng, ctx: RingContext) -> TrialResult {
    let (m, phi) = if rng.gen_bool(0.5) {
        // M = R^a ⊕ T, N = T ⊕ R^b with b < a
        let a = rng.gen_range(1..=3);
        let b = rng.gen_range(0..a);
        let t: Vec<_> = (0..rng.gen_range(0..=2)).map(|_| gen::nonzero_element(rng, ctx)).collect();
        let base = FgModule::from_parts(ctx, a, &t);
        let g = base.generators();
        let mut cols: Vec<usize> = (0..b).collect();
        cols.extend(a..g);
        let phi = RingMatrix::from_fn(ctx, g, cols.len(), |i, j| if i == cols[j] { ctx.one() } else { ctx.zero() });
        let (m, p, _) = gen::rebase(rng, &base);
        let phi = p.mul(&phi).expect("shape");
        (m, phi)
    } else {
        let factors: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| gen::nonzero_element(rng, ctx)).collect();
        let m = gen::disguise(rng, &FgModule::from_parts(ctx, 0, &factors));
        let s = rng.gen_range(1..=2);
        let phi = gen::matrix(rng, ctx, m.generators(), s, 0.5);
        (m, phi)
    };
    let input = json!({"module": m.to_json(), "map_columns": phi.to_json()});
    let (n_incl, q_proj) = sequence_from_columns(&m, &phi);
    let (n, q) = (&n_incl.source, &q_proj.target);
    if !(q.is_unmixed() && q.dimension() == m.dimension()) {
        return Ok(Checked::Vacuous);
    }
    check_lengths(&[("N", n), ("M", &m), ("Q", q)], &input)?;
    let expected = q.length().shuffle_sum(&n.length());
    ensure(m.length() == expected, &input, || format!("len M = {}, len Q ⊕ len N = {expected}", m.length()))?;
    Ok(Checked::Pass)
}
