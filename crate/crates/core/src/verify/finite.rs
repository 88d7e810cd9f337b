//! Suites over finite modules, where the submodule lattice and every
//! homomorphism can be enumerated.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::gen::{self, TrialRng};
use super::{fail, oracle, Checked, TrialResult};
use crate::error::Result;
use crate::euclid::{RingContext, RingMatrix};
use crate::module::finite::{finite_module_types, kappa_gamma_finite, FiniteModule, HomSet, SubmoduleLattice};
use crate::module::{CanonicalForm, FgModule, ModuleMap};
use crate::ordinal::Ordinal;

/// A finite module with its element tables and submodule lattice.
pub struct FiniteCheck {
    pub module: FgModule,
    pub canonical: CanonicalForm,
    pub fm: FiniteModule,
    pub lattice: SubmoduleLattice,
}

impl FiniteCheck {
    pub fn new(m: &FgModule, bound: usize) -> Result<Self> {
        let fm = FiniteModule::new(m, bound)?;
        let lattice = SubmoduleLattice::new(&fm);
        Ok(FiniteCheck { module: m.clone(), canonical: m.canonical_form(), fm, lattice })
    }

    /// Composition length, read off the lattice.
    pub fn length(&self) -> usize {
        self.lattice.height[self.lattice.top]
    }

    pub fn order(&self) -> usize {
        self.fm.len()
    }
}

fn order_of(cf: &CanonicalForm) -> usize {
    cf.factors.iter().map(|d| cf.ctx.quotient_size(d).unwrap_or(usize::MAX)).product()
}

fn finite_context(rng: &mut TrialRng, trial: u64) -> RingContext {
    match gen::context(rng, trial) {
        RingContext::Polynomial(_) => RingContext::Polynomial(*[2, 3].choose(rng).unwrap()),
        ctx => ctx,
    }
}

fn types_up_to(ctx: RingContext, bound: usize) -> Vec<CanonicalForm> {
    finite_module_types(ctx, bound)
}

/// A random isomorphism type of order at most `bound`, in a random
/// presentation.
pub fn random_finite_module(rng: &mut TrialRng, ctx: RingContext, bound: usize) -> FgModule {
    let types = types_up_to(ctx, bound);
    let m = types.choose(rng).expect("zero module is a type").to_module();
    gen::disguise(rng, &m)
}

/// The lattice of submodules, ordered by reverse inclusion, has length
/// `len M`, its longest chain has `len M` steps, and chains of nonzero
/// submodules have at most `len M` members.
pub fn check_chains(fc: &FiniteCheck) -> std::result::Result<(), String> {
    let len = fc.module.length();
    let p = fc.lattice.reverse_inclusion_poset();
    let steps = p.max_chain_length().map_err(|e| e.to_string())?;
    if Ordinal::from(steps as u64) != len {
        return Err(format!("longest chain has {steps} steps, len M = {len}"));
    }
    let nonzero: Vec<usize> = (0..fc.lattice.len()).filter(|&i| i != fc.lattice.zero).collect();
    let members =
        if nonzero.is_empty() { 0 } else { p.induced(&nonzero).max_chain_length().map_err(|e| e.to_string())? + 1 };
    if Ordinal::from(members as u64) != len {
        return Err(format!("longest chain of nonzero submodules has {members} members, len M = {len}"));
    }
    Ok(())
}

/// The rank of the lattice is `len M` by the closed form and by minors, and
/// each submodule `N` has rank `len(M/N)`.
pub fn check_ranks(fc: &FiniteCheck) -> std::result::Result<(), String> {
    let len = fc.module.length();
    let minors = oracle::module_length(&fc.module);
    let table = fc.lattice.reverse_inclusion_poset().rank_all();
    if table.length != len || minors != len {
        return Err(format!("lattice rank {}, closed form {len}, by minors {minors}", table.length));
    }
    for (id, gens) in fc.lattice.gens.iter().enumerate() {
        let q = fc.fm.quotient(gens).length();
        if table.rank_ordinal(id) != q {
            return Err(format!("submodule {id} has rank {} but len(M/N) = {q}", table.rank[id]));
        }
    }
    Ok(())
}

pub fn check_lattice(fc: &FiniteCheck) -> std::result::Result<(), String> {
    check_chains(fc)?;
    check_ranks(fc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSummary {
    pub homs: u128,
    pub has_surjection: bool,
    pub has_injection: bool,
    pub kappa: usize,
    pub gamma: usize,
    pub isomorphic: bool,
}

/// Enumerates `Hom(M, N)` once and checks:
/// - when `len M ≤ len N`, every surjection has trivial kernel, counted on
///   the full table of the map;
/// - if there is both a surjection and an injection, `M ≅ N`;
/// - `κ + γ = 0` exactly when `M ≅ N`, with `κ` and `γ` confirmed on
///   witness maps through their Smith-form kernel and cokernel.
pub fn check_hom_theorems(m: &FiniteCheck, n: &FiniteCheck) -> std::result::Result<PairSummary, String> {
    let homs = HomSet::new(&m.fm, &n.fm, &n.lattice);
    let lat = &n.lattice;
    let surjections_checked = m.length() <= n.length();
    let mut first: Vec<Option<Vec<usize>>> = vec![None; lat.len()];
    let mut err = None;
    homs.for_each(|images, id| {
        if first[id].is_none() {
            first[id] = Some(images.to_vec());
        }
        if surjections_checked && id == lat.top && err.is_none() {
            let zeros = homs.table(images).iter().filter(|&&v| v == 0).count();
            if zeros != 1 {
                err = Some(format!("surjection with generator images {images:?} has kernel of order {zeros}"));
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let seen: Vec<usize> = (0..lat.len()).filter(|&i| first[i].is_some()).collect();
    let len_m = m.length();
    let kappa_id = *seen.iter().max_by_key(|&&i| lat.height[i]).expect("zero map");
    let gamma_id = *seen.iter().min_by_key(|&&i| lat.coheight[i]).expect("zero map");
    let (kappa, gamma) = (len_m - lat.height[kappa_id], lat.coheight[gamma_id]);
    let library = kappa_gamma_finite(&m.fm, &m.lattice, &n.fm, &n.lattice);
    if library != (kappa, gamma) {
        return Err(format!("κ, γ = {library:?} from the library, {:?} from enumeration", (kappa, gamma)));
    }
    let witness = |id: usize| homs.to_module_map(first[id].as_ref().expect("seen"));
    let kernel = witness(kappa_id).parts().kernel.length();
    if kernel != Ordinal::from(kappa as u64) {
        return Err(format!("κ = {kappa} but the witness kernel has length {kernel}"));
    }
    let cokernel = witness(gamma_id).parts().cokernel.length();
    if cokernel != Ordinal::from(gamma as u64) {
        return Err(format!("γ = {gamma} but the witness cokernel has length {cokernel}"));
    }
    let summary = PairSummary {
        homs: homs.count(),
        has_surjection: first[lat.top].is_some(),
        has_injection: seen.iter().any(|&i| lat.subs[i].count() == m.order()),
        kappa,
        gamma,
        isomorphic: m.canonical == n.canonical,
    };
    if (kappa + gamma == 0) != summary.isomorphic {
        return Err(format!("κ + γ = {} but isomorphic is {}", kappa + gamma, summary.isomorphic));
    }
    if summary.has_surjection && summary.has_injection && !summary.isomorphic {
        return Err("M surjects onto N and embeds in N, yet they differ".into());
    }
    Ok(summary)
}

/// For `N ≅ M ⊕ C`: every `f: M → N` whose cokernel is isomorphic to `C` is
/// injective with a complemented image, and for one such `f` per image an
/// explicit retraction `r` with `r ∘ f = id` is built and checked.
pub fn check_split(m: &FiniteCheck, c: &CanonicalForm, n: &FiniteCheck) -> std::result::Result<usize, String> {
    let homs = HomSet::new(&m.fm, &n.fm, &n.lattice);
    let lat = &n.lattice;
    let mut coker_is_c: Vec<Option<bool>> = vec![None; lat.len()];
    let mut retraction_done = vec![false; lat.len()];
    let mut matches = 0usize;
    let mut err: Option<String> = None;
    homs.for_each(|images, id| {
        if err.is_some() {
            return;
        }
        let is_c = *coker_is_c[id].get_or_insert_with(|| n.fm.quotient(&lat.gens[id]).canonical_form() == *c);
        if !is_c {
            return;
        }
        matches += 1;
        if lat.subs[id].count() != m.order() {
            err = Some(format!("map with generator images {images:?} has cokernel C but is not injective"));
            return;
        }
        if retraction_done[id] {
            return;
        }
        retraction_done[id] = true;
        if let Err(e) = explicit_retraction(&homs, m, n, images, id) {
            err = Some(e);
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(matches),
    }
}

fn explicit_retraction(
    homs: &HomSet<'_>,
    m: &FiniteCheck,
    n: &FiniteCheck,
    images: &[usize],
    id: usize,
) -> std::result::Result<(), String> {
    let lat = &n.lattice;
    let image = &lat.subs[id];
    let complement = lat
        .complement_of(image)
        .map(|b| &lat.subs[b])
        .ok_or_else(|| format!("image of {images:?} has no complement"))?;
    let table = homs.table(images);
    let mut preimage = vec![usize::MAX; n.order()];
    for (x, &y) in table.iter().enumerate() {
        preimage[y] = x;
    }
    // r(g) = f⁻¹(a) where g = a + b with a in the image, b in the complement
    let ctx = m.module.ctx;
    let mut columns = Vec::new();
    for g in n.fm.generator_elements() {
        let a = image
            .iter()
            .find(|&a| complement.contains(n.fm.add(g, n.fm.neg(a))))
            .ok_or_else(|| "complement does not split a generator".to_string())?;
        columns.push(m.fm.lift(preimage[a]));
    }
    let r_matrix = RingMatrix::from_columns(ctx, m.module.generators(), &columns);
    let r = ModuleMap::new(n.module.clone(), m.module.clone(), r_matrix).map_err(|e| format!("retraction: {e}"))?;
    let f = homs.to_module_map(images);
    let rf = r.compose(&f).map_err(|e| e.to_string())?;
    if !rf.agrees_with(&ModuleMap::identity(&m.module)) {
        return Err(format!("r ∘ f is not the identity for images {images:?}"));
    }
    Ok(())
}

fn module_json(m: &FgModule) -> Value {
    m.to_json()
}

fn build(m: &FgModule, bound: usize, input: &Value) -> std::result::Result<FiniteCheck, super::Counterexample> {
    FiniteCheck::new(m, bound).map_err(|e| fail(input, e.to_string()))
}

pub(super) fn chain_length(rng: &mut TrialRng, trial: u64, bound: usize) -> TrialResult {
    let ctx = finite_context(rng, trial);
    let m = random_finite_module(rng, ctx, bound);
    let input = module_json(&m);
    let fc = build(&m, bound, &input)?;
    check_chains(&fc).map_err(|e| fail(&input, e))?;
    Ok(Checked::Pass)
}

pub(super) fn lattice_oracle(rng: &mut TrialRng, trial: u64, bound: usize) -> TrialResult {
    let ctx = finite_context(rng, trial);
    let m = random_finite_module(rng, ctx, bound);
    let input = module_json(&m);
    let fc = build(&m, bound, &input)?;
    check_ranks(&fc).map_err(|e| fail(&input, e))?;
    Ok(Checked::Pass)
}

pub(super) fn vasconcelos(rng: &mut TrialRng, trial: u64, bound: usize) -> TrialResult {
    let ctx = finite_context(rng, trial);
    let m = random_finite_module(rng, ctx, bound);
    let input = module_json(&m);
    let fc = build(&m, bound, &input)?;
    check_hom_theorems(&fc, &fc).map_err(|e| fail(&input, e))?;
    // a second module of the same length, for surjections between them
    let len = m.length();
    let same: Vec<CanonicalForm> = types_up_to(ctx, bound).into_iter().filter(|t| t.length() == len).collect();
    let other = same.choose(rng).expect("M's own type").to_module();
    let other = gen::disguise(rng, &other);
    let input = json!({"m": m.to_json(), "n": other.to_json()});
    let fo = build(&other, bound, &input)?;
    check_hom_theorems(&fc, &fo).map_err(|e| fail(&input, e))?;
    Ok(Checked::Pass)
}

/// `M` and `N`: half the time the same type in different presentations.
fn random_pair(rng: &mut TrialRng, trial: u64, bound: usize) -> (FgModule, FgModule) {
    let ctx = finite_context(rng, trial);
    let m = random_finite_module(rng, ctx, bound);
    let n = if rng.gen_bool(0.5) { gen::disguise(rng, &m) } else { random_finite_module(rng, ctx, bound) };
    (m, n)
}

pub(super) fn subim(rng: &mut TrialRng, trial: u64, bound: usize) -> TrialResult {
    let (m, n) = random_pair(rng, trial, bound);
    let input = json!({"m": m.to_json(), "n": n.to_json()});
    let (fm, fnn) = (build(&m, bound, &input)?, build(&n, bound, &input)?);
    let s = check_hom_theorems(&fm, &fnn).map_err(|e| fail(&input, e))?;
    Ok(if s.has_surjection && s.has_injection { Checked::Pass } else { Checked::Vacuous })
}

pub(super) fn noniso(rng: &mut TrialRng, trial: u64, bound: usize) -> TrialResult {
    let (m, n) = random_pair(rng, trial, bound);
    let input = json!({"m": m.to_json(), "n": n.to_json()});
    let (fm, fnn) = (build(&m, bound, &input)?, build(&n, bound, &input)?);
    check_hom_theorems(&fm, &fnn).map_err(|e| fail(&input, e))?;
    Ok(Checked::Pass)
}

pub(super) fn miyata(rng: &mut TrialRng, trial: u64, bound: usize) -> TrialResult {
    let ctx = finite_context(rng, trial);
    let types = types_up_to(ctx, bound);
    let mt = types.choose(rng).expect("types").clone();
    let room = bound / order_of(&mt).max(1);
    let ct =
        types.iter().filter(|t| order_of(t) <= room).collect::<Vec<_>>().choose(rng).copied().expect("zero").clone();
    let m = gen::disguise(rng, &mt.to_module());
    let c = ct.to_module();
    let n = gen::disguise(rng, &m.direct_sum(&c));
    let input = json!({"m": m.to_json(), "c": c.to_json(), "n": n.to_json()});
    let (fm, fnn) = (build(&m, bound, &input)?, build(&n, bound, &input)?);
    let matches = check_split(&fm, &c.canonical_form(), &fnn).map_err(|e| fail(&input, e))?;
    if matches == 0 {
        return Err(fail(&input, "no map M → M ⊕ C has cokernel C, not even the inclusion"));
    }
    Ok(Checked::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: RingContext = RingContext::Integers;

    fn fc(factors: &[i64]) -> FiniteCheck {
        let f: Vec<_> = factors.iter().map(|&k| Z.from_i64(k)).collect();
        FiniteCheck::new(&FgModule::from_parts(Z, 0, &f), 64).unwrap()
    }

    #[test]
    fn pair_examples() {
        let s = check_hom_theorems(&fc(&[2]), &fc(&[4])).unwrap();
        assert_eq!((s.kappa, s.gamma, s.homs), (0, 1, 2));
        let s = check_hom_theorems(&fc(&[2]), &fc(&[3])).unwrap();
        assert_eq!((s.kappa, s.gamma), (1, 1));
        let s = check_hom_theorems(&fc(&[2, 4]), &fc(&[2, 4])).unwrap();
        assert!(s.isomorphic && s.has_surjection && s.has_injection);
    }

    #[test]
    fn split_examples() {
        let n = fc(&[2, 2, 4]);
        let c = FgModule::cyclic(Z, Z.from_i64(2)).canonical_form();
        assert!(check_split(&fc(&[2, 4]), &c, &n).unwrap() > 0);
    }

    #[test]
    fn lattice_examples() {
        check_lattice(&fc(&[2, 4])).unwrap();
        check_lattice(&fc(&[])).unwrap();
        check_lattice(&fc(&[6, 6])).unwrap();
    }
}
