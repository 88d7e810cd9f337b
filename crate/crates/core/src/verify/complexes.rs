//! Suites for finite complexes: lengths of exact complexes, the acyclicity
//! criterion, generic Euler characteristics and four-term periodic
//! complexes.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;

use super::gen::{self, TrialRng};
use super::{ensure, fail, oracle, Checked, Counterexample, TrialResult};
use crate::euclid::{ColumnSpan, RingContext, RingElement, RingMatrix};
use crate::homology::ModuleComplex;
use crate::module::finite::{finite_module_types, FiniteModule};
use crate::module::{FgModule, ModuleMap};
use crate::ordinal::Ordinal;

type Step<T = ()> = std::result::Result<T, Counterexample>;

/// How `d_i` is chosen inside the cycles `L_{i-1}` of the spot below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fill {
    /// Columns span `L_{i-1}`: exact at `i - 1`.
    Span,
    /// Columns span a full-rank sublattice: torsion homology at `i - 1`.
    Scaled,
    /// Random combinations.
    Random,
}

struct Shape {
    t: usize,
    free: bool,
    /// `below[i - 1]` fills `d_i`.
    below: Vec<Fill>,
    /// How the relations of `M_t` fill its cycles; ignored for free modules.
    top: Fill,
    /// Most redundant columns in a span fill of `d_t` over free modules,
    /// each of which adds to the kernel at the top.
    top_extra: usize,
}

fn scaled_identity(rng: &mut TrialRng, ctx: RingContext, k: usize) -> RingMatrix {
    RingMatrix::from_fn(ctx, k, k, |i, j| if i == j { gen::nonzero_element(rng, ctx) } else { ctx.zero() })
}

/// A matrix whose columns lie in the column span of `l`, filled as `fill`
/// says, with up to `extra` redundant combinations for the span fills.
fn columns_in(rng: &mut TrialRng, l: &RingMatrix, fill: Fill, extra: usize) -> RingMatrix {
    let ctx = l.ctx;
    let k = l.cols();
    let coeffs = match fill {
        Fill::Random => {
            let g = rng.gen_range(1..=3);
            gen::matrix(rng, ctx, k, g, 0.3)
        }
        Fill::Span | Fill::Scaled => {
            let more =
                if rng.gen_bool(0.3) { rng.gen_range(0..=extra) } else { 0 }.max(usize::from(k == 0 && extra > 0));
            let head = if fill == Fill::Span { RingMatrix::identity(ctx, k) } else { scaled_identity(rng, ctx, k) };
            let c = head.hcat(&gen::matrix(rng, ctx, k, more, 0.3)).expect("rows");
            let (q, _) = gen::unimodular(rng, ctx, c.cols());
            c.mul(&q).expect("shapes")
        }
    };
    l.mul(&coeffs).expect("shapes")
}

fn random_complex(rng: &mut TrialRng, ctx: RingContext, shape: &Shape) -> ModuleComplex {
    let g0 = rng.gen_range(1..=2);
    let rel0 = if shape.free {
        RingMatrix::zeros(ctx, g0, 0)
    } else {
        let r = rng.gen_range(0..=2);
        gen::matrix(rng, ctx, g0, r, 0.4)
    };
    let mut modules = vec![FgModule::new(g0, rel0).expect("shape")];
    let mut maps: Vec<RingMatrix> = Vec::new();
    let mut cycles = RingMatrix::identity(ctx, g0);
    for i in 1..=shape.t {
        let extra = if shape.free && i == shape.t { shape.top_extra } else { 1 };
        let d = columns_in(rng, &cycles, shape.below[i - 1], extra);
        let g = d.cols();
        let lifted = ModuleMap::new(FgModule::free(ctx, g), modules[i - 1].clone(), d.clone())
            .expect("free source")
            .lifted_kernel();
        let rel = if shape.free {
            RingMatrix::zeros(ctx, g, 0)
        } else if i < shape.t {
            let r = rng.gen_range(0..=2);
            let c = gen::matrix(rng, ctx, lifted.cols(), r, 0.4);
            lifted.mul(&c).expect("shapes")
        } else {
            match shape.top {
                Fill::Span => lifted.clone(),
                Fill::Scaled => lifted.mul(&scaled_identity(rng, ctx, lifted.cols())).expect("shapes"),
                Fill::Random => {
                    let r = rng.gen_range(0..=2);
                    let c = gen::matrix(rng, ctx, lifted.cols(), r, 0.4);
                    lifted.mul(&c).expect("shapes")
                }
            }
        };
        modules.push(FgModule::new(g, rel).expect("shape"));
        maps.push(d);
        cycles = lifted;
    }
    if rng.gen_bool(0.5) {
        let changes: Vec<(RingMatrix, RingMatrix)> =
            modules.iter().map(|m| gen::unimodular(rng, ctx, m.generators())).collect();
        for (i, m) in modules.iter_mut().enumerate() {
            *m = FgModule::new(m.generators(), changes[i].0.mul(m.relations()).expect("shapes")).expect("shape");
        }
        for (k, d) in maps.iter_mut().enumerate() {
            *d = changes[k].0.mul(d).and_then(|x| x.mul(&changes[k + 1].1)).expect("shapes");
        }
    }
    modules.reverse();
    maps.reverse();
    ModuleComplex::new(modules, maps).expect("maps are well defined by construction")
}

fn boundaries(c: &ModuleComplex, i: usize) -> RingMatrix {
    let rel = c.module(i).relations().clone();
    if i == c.top() {
        rel
    } else {
        rel.hcat(&c.differential(i + 1).matrix).expect("rows")
    }
}

/// Free rank of `H_i` from ranks of minors alone.
fn homology_free_rank(c: &ModuleComplex, i: usize) -> usize {
    let g = c.module(i).generators();
    let cycles = if i == 0 {
        g
    } else {
        let below = c.module(i - 1).relations();
        let stacked = c.differential(i).matrix.hcat(below).expect("rows");
        g - (oracle::rank(&stacked) - oracle::rank(below))
    };
    cycles - oracle::rank(&boundaries(c, i))
}

/// `H_i = 0`, by solving for every cycle as a combination of boundaries and
/// checking the solution.
fn homology_vanishes(c: &ModuleComplex, i: usize) -> bool {
    let m = c.module(i);
    let cycles = if i == 0 { RingMatrix::identity(m.ctx, m.generators()) } else { c.differential(i).lifted_kernel() };
    let span = ColumnSpan::new(&boundaries(c, i));
    cycles.columns().iter().all(|col| span.contains(col).expect("shapes"))
}

fn oracle_dimension(c: &ModuleComplex, i: usize) -> i64 {
    if homology_free_rank(c, i) > 0 {
        1
    } else if homology_vanishes(c, i) {
        -1
    } else {
        0
    }
}

fn oracle_low_high(c: &ModuleComplex) -> (Ordinal, Ordinal) {
    let t = c.top();
    let lens: Vec<Ordinal> = (0..=t).map(|i| oracle::module_length(c.module(i))).collect();
    let low = (0..=t).filter(|i| i % 2 != t % 2).fold(Ordinal::zero(), |a, i| a.ord_sum(&lens[i]));
    let high = (0..=t).filter(|i| i % 2 == t % 2).fold(Ordinal::zero(), |a, i| a.shuffle_sum(&lens[i]));
    (low, high)
}

fn exact_below_top(c: &ModuleComplex, input: &Value) -> Step<bool> {
    let mut exact = true;
    for i in 0..c.top() {
        let lib = c.homology_at(i).map_err(|e| fail(input, e.to_string()))?.is_zero();
        let orc = homology_vanishes(c, i) && homology_free_rank(c, i) == 0;
        ensure(lib == orc, input, || format!("H_{i} = 0 is {lib} by Smith form, {orc} by the oracle"))?;
        exact &= lib;
    }
    Ok(exact)
}

pub(super) fn lowhi(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial);
    let t = rng.gen_range(1..=3);
    let shape = Shape { t, free: rng.gen_bool(0.4), below: vec![Fill::Span; t], top: Fill::Span, top_extra: 0 };
    let c = random_complex(rng, ctx, &shape);
    let input = c.to_json();
    ensure(c.is_valid(), &input, || "generated complex does not compose to zero".into())?;
    ensure(c.is_exact().map_err(|e| fail(&input, e.to_string()))?, &input, || "generated complex is not exact".into())?;
    ensure(homology_vanishes(&c, t) && homology_free_rank(&c, t) == 0, &input, || "oracle finds H_t ≠ 0".into())?;
    let (low, high) = oracle_low_high(&c);
    ensure(c.lower_length() == low && c.upper_length() == high, &input, || {
        format!("lowlen {} hilen {}, oracle {low} {high}", c.lower_length(), c.upper_length())
    })?;
    ensure(low <= high, &input, || format!("lowlen {low} > hilen {high}"))?;
    Ok(Checked::Pass)
}

fn check_report(c: &ModuleComplex, e: i64, input: &Value) -> Step<bool> {
    let r = c.acyclicity_check(e).map_err(|err| fail(input, err.to_string()))?;
    let t = c.top();
    let dims: Vec<i64> = (0..=t).rev().map(|i| oracle_dimension(c, i)).collect();
    ensure(r.homology_dims == dims, input, || format!("dims {:?}, oracle {dims:?}", r.homology_dims))?;
    let hypothesis = dims[1..].iter().all(|&d| d <= e);
    let (low, high) = oracle_low_high(c);
    let condition = high.cmp_at_level(&low, (e + 1) as u32).is_le();
    ensure(r.hypothesis_holds == hypothesis && r.condition_holds == condition, input, || {
        format!(
            "report says hypothesis {} condition {}, oracle {hypothesis} {condition}",
            r.hypothesis_holds, r.condition_holds
        )
    })?;
    if hypothesis && condition {
        ensure(dims[0] <= e, input, || {
            format!("dim H_t = {} exceeds level {e} with lowlen {low}, hilen {high}", dims[0])
        })?;
    }
    ensure(r.consistent, input, || format!("report verdict {}", r.verdict))?;
    Ok(hypothesis)
}

pub(super) fn acyclicity(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial / 2);
    let e: i64 = if trial.is_multiple_of(2) { -1 } else { 0 };
    let t = rng.gen_range(1..=3);
    let fills: &[Fill] = if e < 0 { &[Fill::Span] } else { &[Fill::Span, Fill::Scaled] };
    let below = (0..t).map(|_| if rng.gen_bool(0.1) { Fill::Random } else { *fills.choose(rng).unwrap() }).collect();
    let top = *[Fill::Span, Fill::Scaled, Fill::Random].choose(rng).unwrap();
    let free = rng.gen_bool(0.5);
    let c = random_complex(rng, ctx, &Shape { t, free, below, top, top_extra: 1 });
    let input = c.to_json();
    let hypothesis = check_report(&c, e, &input)?;
    let shifted = c.shifted(1);
    let r0 = c.acyclicity_check(e).map_err(|err| fail(&input, err.to_string()))?;
    let r1 = shifted.acyclicity_check(e).map_err(|err| fail(&input, err.to_string()))?;
    ensure(r0.verdict == r1.verdict, &input, || {
        format!("verdict {} changes to {} after shifting", r0.verdict, r1.verdict)
    })?;
    Ok(if hypothesis { Checked::Pass } else { Checked::Vacuous })
}

pub(super) fn acycunm(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial);
    let t = rng.gen_range(1..=3);
    let shape = Shape { t, free: true, below: vec![Fill::Span; t], top: Fill::Span, top_extra: 2 };
    let c = random_complex(rng, ctx, &shape);
    let input = c.to_json();
    ensure(exact_below_top(&c, &input)?, &input, || "generated complex is not exact below the top".into())?;
    let chi = c.generic_euler_char();
    let signed = if t % 2 == 0 { chi.clone() } else { -chi.clone() };
    let h = c.homology_at(t).map_err(|e| fail(&input, e.to_string()))?;
    let genlen = BigInt::from(h.generic_length());
    ensure(genlen == signed, &input, || format!("genlen H_t = {genlen}, (-1)^t χ = {signed}"))?;
    // the oracle reads the kernel rank of d_t off its minors
    let g: Vec<i64> = (0..=t).map(|i| c.module(i).generators() as i64).collect();
    let oracle_chi: i64 = g.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).sum();
    let kernel_rank = g[t] - oracle::rank(&c.differential(t).matrix) as i64;
    ensure(BigInt::from(oracle_chi) == chi, &input, || format!("χ = {chi}, from ranks {oracle_chi}"))?;
    ensure(BigInt::from(kernel_rank) == genlen, &input, || format!("kernel rank {kernel_rank}, genlen {genlen}"))?;
    let injective = c.differential(t).is_injective();
    ensure(injective == (oracle_chi == 0), &input, || format!("d_t injective is {injective} but χ = {oracle_chi}"))?;
    let r = c.acyclicity_check(0).map_err(|e| fail(&input, e.to_string()))?;
    ensure((r.lowlen == r.hilen) == (oracle_chi == 0), &input, || {
        format!("lowlen {} hilen {} with χ = {oracle_chi}", r.lowlen, r.hilen)
    })?;
    Ok(Checked::Pass)
}

/// A summand description: free rank and torsion factors, in
/// [`FgModule::from_parts`] order.
struct Parts {
    free: usize,
    factors: Vec<RingElement>,
}

impl Parts {
    fn generators(&self) -> usize {
        self.free + self.factors.len()
    }

    fn module(&self, ctx: RingContext) -> FgModule {
        FgModule::from_parts(ctx, self.free, &self.factors)
    }
}

/// A random homomorphism between modules in split form.
fn random_hom(rng: &mut TrialRng, ctx: RingContext, src: &Parts, tgt: &Parts) -> RingMatrix {
    RingMatrix::from_fn(ctx, tgt.generators(), src.generators(), |row, col| {
        let x = gen::element(rng, ctx, 0.3);
        match (col.checked_sub(src.free), row.checked_sub(tgt.free)) {
            (None, _) => x,
            (Some(_), None) => ctx.zero(),
            (Some(s), Some(r)) => {
                let (n, c) = (&src.factors[s], &tgt.factors[r]);
                ctx.mul(&ctx.exact_div(c, &ctx.gcd(c, n)).expect("gcd divides"), &x)
            }
        }
    })
}

fn torsion_parts(rng: &mut TrialRng, ctx: RingContext, nonzero: bool) -> Parts {
    let types: Vec<_> =
        finite_module_types(ctx, 16).into_iter().filter(|t| !nonzero || !t.factors.is_empty()).collect();
    let t = types.choose(rng).expect("types").clone();
    Parts { free: 0, factors: t.factors }
}

fn free_parts(rng: &mut TrialRng, ctx: RingContext) -> (Parts, Parts) {
    let n = Parts { free: rng.gen_range(1..=2), factors: Vec::new() };
    let k = Parts {
        free: rng.gen_range(0..=1),
        factors: (0..rng.gen_range(0..=1)).map(|_| gen::nonzero_element(rng, ctx)).collect(),
    };
    (n, k)
}

/// `d_3` is injective: for free `N` when `A` has full rank by minors, for
/// torsion `N` by running through its elements.
fn top_injective(ctx: RingContext, n: &Parts, a: &RingMatrix) -> bool {
    if n.factors.is_empty() {
        return oracle::rank(a) == n.generators();
    }
    let fm = FiniteModule::new(&n.module(ctx), 1 << 12).expect("small module");
    (0..fm.len()).filter(|&x| fm.element_of(&a.mul_vec(&fm.lift(x)).expect("shape")) == 0).count() == 1
}

/// `0 → N → M → M → N → 0` with `M = N ⊕ K`:
/// `d_1 = [I 0]`, `d_2 = [[0, 0], [H, I]]`, `d_3 = [A; -H·A]`. Exact at the
/// lower three spots exactly when `A` is surjective.
pub(super) fn period(rng: &mut TrialRng, trial: u64) -> TrialResult {
    let ctx = gen::context(rng, trial);
    let (n, k) = if rng.gen_bool(0.5) {
        free_parts(rng, ctx)
    } else {
        (torsion_parts(rng, ctx, true), torsion_parts(rng, ctx, false))
    };
    let (gn, gk) = (n.generators(), k.generators());
    let gm = gn + gk;
    let a = if rng.gen_bool(0.5) {
        random_hom(rng, ctx, &n, &n)
    } else if n.factors.is_empty() {
        gen::unimodular(rng, ctx, gn).0
    } else {
        scaled_identity_by_units(rng, ctx, gn)
    };
    let h = random_hom(rng, ctx, &n, &k);
    let d1 = RingMatrix::identity(ctx, gn).hcat(&RingMatrix::zeros(ctx, gn, gk)).expect("rows");
    let d2 = RingMatrix::zeros(ctx, gn, gm).vcat(&h.hcat(&RingMatrix::identity(ctx, gk)).expect("rows")).expect("cols");
    let ha = h.mul(&a).expect("shapes");
    let neg_ha = RingMatrix::from_fn(ctx, gk, gn, |i, j| ctx.neg(ha.get(i, j)));
    let d3 = a.vcat(&neg_ha).expect("cols");
    let (nm, km) = (n.module(ctx), k.module(ctx));
    let m = nm.direct_sum(&km);
    let (q, qi) = gen::unimodular(rng, ctx, gn);
    let (p, pi) = gen::unimodular(rng, ctx, gm);
    let conj = |l: &RingMatrix, x: &RingMatrix, r: &RingMatrix| l.mul(x).and_then(|y| y.mul(r)).expect("shapes");
    let n2 = FgModule::new(gn, q.mul(nm.relations()).expect("shapes")).expect("shape");
    let m2 = FgModule::new(gm, p.mul(m.relations()).expect("shapes")).expect("shape");
    let c = ModuleComplex::new(
        vec![n2.clone(), m2.clone(), m2, n2],
        vec![conj(&p, &d3, &qi), conj(&p, &d2, &pi), conj(&q, &d1, &pi)],
    )
    .map_err(|e| fail(&Value::Null, format!("construction: {e}")))?;
    let input = c.to_json();
    ensure(c.is_valid(), &input, || "construction does not compose to zero".into())?;
    if !exact_below_top(&c, &input)? {
        return Ok(Checked::Vacuous);
    }
    let e = nm.dimension() - 1;
    let r = c.acyclicity_check(e).map_err(|err| fail(&input, err.to_string()))?;
    let (nu, mu) = (nm.length(), m.length());
    ensure(r.lowlen == nu.ord_sum(&mu) && r.hilen == mu.shuffle_sum(&nu), &input, || {
        format!("lowlen {} hilen {}, expected {} and {}", r.lowlen, r.hilen, nu.ord_sum(&mu), mu.shuffle_sum(&nu))
    })?;
    ensure(r.lowlen == r.hilen, &input, || format!("lowlen {} ≠ hilen {}", r.lowlen, r.hilen))?;
    ensure(r.verdict == "conclusion verified", &input, || format!("verdict {}", r.verdict))?;
    ensure(top_injective(ctx, &n, &a), &input, || "the oracle finds a kernel at the top".into())?;
    Ok(Checked::Pass)
}

fn scaled_identity_by_units(rng: &mut TrialRng, ctx: RingContext, k: usize) -> RingMatrix {
    RingMatrix::from_fn(ctx, k, k, |i, j| if i == j { gen::unit(rng, ctx) } else { ctx.zero() })
}
