//! Brute-force models of finite modules: every element is indexed, addition
//! and the action of `x` (for `F_p[x]`) are tabulated, and submodule lattices
//! and Hom sets are enumerated exhaustively.
//!
//! Elements are stored in canonical coordinates: if `u·F·v = diag(d)` is the
//! Smith form of the relations, the class of `x ∈ R^g` is determined by the
//! residues of `(u·x)_i` modulo the non-unit `d_i`. An element index is the
//! mixed-radix number formed by those residues.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CanonicalForm, FgModule, ModuleMap};
use crate::error::{Error, Result};
use crate::euclid::{smith_normal_form, RingContext, RingElement, RingMatrix};
use crate::ordinal::Ordinal;
use crate::pwo::FinitePoset;

/// Default limit on the number of elements of an enumerated module.
pub const DEFAULT_ENUMERATION_BOUND: usize = 64;

/// A set of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64).max(1)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

#[derive(Debug, Clone)]
struct Slot {
    /// Row of the Smith form this coordinate comes from.
    row: usize,
    modulus: RingElement,
    residues: Vec<RingElement>,
    digit: HashMap<RingElement, usize>,
    stride: usize,
}

#[derive(Debug, Clone)]
pub struct FiniteModule {
    pub module: FgModule,
    ctx: RingContext,
    n: usize,
    slots: Vec<Slot>,
    u: RingMatrix,
    u_inv: RingMatrix,
    add: Vec<usize>,
    neg: Vec<usize>,
    /// Multiplication by `x`, for polynomial rings.
    xact: Option<Vec<usize>>,
}

impl FiniteModule {
    pub fn new(module: &FgModule, bound: usize) -> Result<Self> {
        let ctx = module.ctx;
        let g = module.generators();
        let snf = smith_normal_form(module.relations());
        if snf.rank() < g {
            return Err(Error::InfiniteModule);
        }
        let mut slots = Vec::new();
        let mut n = 1usize;
        for (row, d) in snf.d.iter().enumerate() {
            if ctx.is_unit(d) {
                continue;
            }
            let residues =
                ctx.residues(d, bound).ok_or_else(|| Error::BoundExceeded { needed: format!("|R/({d})|"), bound })?;
            let stride = n;
            n = n
                .checked_mul(residues.len())
                .filter(|&m| m <= bound)
                .ok_or_else(|| Error::BoundExceeded { needed: format!("{}", module.canonical_form()), bound })?;
            let digit = residues.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
            slots.push(Slot { row, modulus: d.clone(), residues, digit, stride });
        }
        let mut fm = FiniteModule {
            module: module.clone(),
            ctx,
            n,
            slots,
            u: snf.u,
            u_inv: snf.u_inv,
            add: Vec::new(),
            neg: Vec::new(),
            xact: None,
        };
        fm.build_tables();
        Ok(fm)
    }

    fn build_tables(&mut self) {
        let ctx = self.ctx;
        let n = self.n;
        // Per-slot digit tables, then combined digitwise.
        let slot_add: Vec<Vec<usize>> = self
            .slots
            .iter()
            .map(|s| {
                let q = s.residues.len();
                let mut t = vec![0; q * q];
                for a in 0..q {
                    for b in 0..q {
                        let r = ctx.reduce(&ctx.add(&s.residues[a], &s.residues[b]), &s.modulus);
                        t[a * q + b] = s.digit[&r];
                    }
                }
                t
            })
            .collect();
        let digits: Vec<Vec<usize>> = (0..n).map(|i| self.digits(i)).collect();
        let mut add = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = self
                    .slots
                    .iter()
                    .enumerate()
                    .map(|(k, s)| {
                        let q = s.residues.len();
                        slot_add[k][digits[a][k] * q + digits[b][k]] * s.stride
                    })
                    .sum();
            }
        }
        self.neg = (0..n).map(|a| (0..n).find(|&b| add[a * n + b] == 0).expect("group")).collect();
        self.add = add;
        if let RingContext::Polynomial(_) = ctx {
            let x = ctx.generator();
            let slot_x: Vec<Vec<usize>> = self
                .slots
                .iter()
                .map(|s| s.residues.iter().map(|r| s.digit[&ctx.reduce(&ctx.mul(&x, r), &s.modulus)]).collect())
                .collect();
            self.xact = Some(
                (0..n)
                    .map(|a| self.slots.iter().enumerate().map(|(k, s)| slot_x[k][digits[a][k]] * s.stride).sum())
                    .collect(),
            );
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digits(&self, idx: usize) -> Vec<usize> {
        self.slots.iter().map(|s| (idx / s.stride) % s.residues.len()).collect()
    }

    /// Moduli of the cyclic summands, in slot order.
    pub fn moduli(&self) -> Vec<RingElement> {
        self.slots.iter().map(|s| s.modulus.clone()).collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn times_x(&self, a: usize) -> Option<usize> {
        self.xact.as_ref().map(|t| t[a])
    }

    fn mul_natural(&self, mut k: usize, a: usize) -> usize {
        let (mut acc, mut base) = (0, a);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// `r · a` for any ring element `r`.
    pub fn act(&self, r: &RingElement, a: usize) -> usize {
        let order = BigInt::from(self.n);
        match r {
            RingElement::Int(z) => self.mul_natural(z.mod_floor(&order).to_usize().unwrap(), a),
            RingElement::Frac(q) => {
                // The module is a p-group and the denominator is prime to p.
                let inv = q.denom().extended_gcd(&order).x;
                let k = (q.numer() * inv).mod_floor(&order);
                self.mul_natural(k.to_usize().unwrap(), a)
            }
            RingElement::Poly(c) => {
                let mut acc = 0;
                for &k in c.iter().rev() {
                    acc = self.times_x(acc).expect("polynomial module");
                    acc = self.add(acc, self.mul_natural(k as usize, a));
                }
                acc
            }
        }
    }

    /// The element with canonical coordinates `y`.
    fn element_of_coords(&self, y: &[RingElement]) -> usize {
        self.slots.iter().map(|s| s.digit[&self.ctx.reduce(&y[s.row], &s.modulus)] * s.stride).sum()
    }

    /// The class of `x ∈ R^g`.
    pub fn element_of(&self, x: &[RingElement]) -> usize {
        self.element_of_coords(&self.u.mul_vec(x).expect("length matches generators"))
    }

    /// A vector in `R^g` representing element `idx`.
    pub fn lift(&self, idx: usize) -> Vec<RingElement> {
        let ctx = self.ctx;
        let mut y = vec![ctx.zero(); self.module.generators()];
        for (s, d) in self.slots.iter().zip(self.digits(idx)) {
            y[s.row] = s.residues[d].clone();
        }
        self.u_inv.mul_vec(&y).expect("square")
    }

    /// Images of the presentation generators.
    pub fn generator_elements(&self) -> Vec<usize> {
        let g = self.module.generators();
        (0..g)
            .map(|j| {
                let mut e = vec![self.ctx.zero(); g];
                e[j] = self.ctx.one();
                self.element_of(&e)
            })
            .collect()
    }

    pub fn describe(&self, idx: usize) -> String {
        let parts: Vec<String> = self.lift(idx).iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    /// The submodule `set + R·e` for a submodule `set`.
    pub fn join_element(&self, set: &BitSet, e: usize) -> BitSet {
        let mut t = set.clone();
        let mut queue = vec![e];
        while let Some(g) = queue.pop() {
            if t.contains(g) {
                continue;
            }
            // t is a subgroup; add the cosets t + k·g until k·g falls into t.
            let base: Vec<usize> = t.iter().collect();
            let mut shift = g;
            while !t.contains(shift) {
                for &m in &base {
                    t.insert(self.add(m, shift));
                }
                shift = self.add(shift, g);
            }
            if let Some(xg) = self.times_x(g) {
                queue.push(xg);
            }
        }
        t
    }

    pub fn zero_submodule(&self) -> BitSet {
        let mut z = BitSet::new(self.n);
        z.insert(0);
        z
    }

    pub fn span(&self, elems: &[usize]) -> BitSet {
        elems.iter().fold(self.zero_submodule(), |s, &e| self.join_element(&s, e))
    }

    /// Submodule generated by the classes of the columns of `m`.
    pub fn submodule_generated_by_columns(&self, m: &RingMatrix) -> BitSet {
        let elems: Vec<usize> = m.columns().iter().map(|c| self.element_of(c)).collect();
        self.span(&elems)
    }

    /// Whether the submodule `a` has a complement `b` with `a ∩ b = 0` and
    /// `a + b` the whole module.
    pub fn has_complement(&self, a: &BitSet) -> bool {
        self.complement(a).is_some()
    }

    pub fn complement(&self, a: &BitSet) -> Option<BitSet> {
        let lattice = SubmoduleLattice::new(self);
        lattice.complement_of(a).map(|id| lattice.subs[id].clone())
    }

    /// The quotient by a submodule, presented by adding the lifted
    /// generators of `sub` as relations.
    pub fn quotient(&self, sub_gens: &[usize]) -> FgModule {
        let ctx = self.ctx;
        let lifts: Vec<Vec<RingElement>> = sub_gens.iter().map(|&e| self.lift(e)).collect();
        let extra = RingMatrix::from_columns(ctx, self.module.generators(), &lifts);
        FgModule::new(self.module.generators(), self.module.relations().hcat(&extra).expect("rows")).expect("shape")
    }
}

/// All submodules of a finite module, with the join table used to build
/// them.
#[derive(Debug, Clone)]
pub struct SubmoduleLattice {
    pub subs: Vec<BitSet>,
    /// Generators of each submodule, as element indices.
    pub gens: Vec<Vec<usize>>,
    index: HashMap<BitSet, usize>,
    n: usize,
    /// `join[s * n + e]` is the submodule `subs[s] + R·e`.
    join: Vec<usize>,
    /// Composition length of each submodule: longest chain up from zero.
    pub height: Vec<usize>,
    /// Longest chain from each submodule up to the whole module.
    pub coheight: Vec<usize>,
    pub zero: usize,
    pub top: usize,
}

impl SubmoduleLattice {
    /// Breadth-first closure of the zero submodule under joins with cyclic
    /// submodules. Every submodule is finitely generated, hence reached.
    pub fn new(fm: &FiniteModule) -> Self {
        let n = fm.len();
        let zero = fm.zero_submodule();
        let mut subs = vec![zero.clone()];
        let mut gens = vec![Vec::new()];
        let mut index = HashMap::from([(zero, 0)]);
        let mut join = Vec::new();
        let mut k = 0;
        while k < subs.len() {
            for e in 0..n {
                let t = fm.join_element(&subs[k], e);
                let id = match index.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = subs.len();
                        let mut g = gens[k].clone();
                        g.push(e);
                        index.insert(t.clone(), id);
                        subs.push(t);
                        gens.push(g);
                        id
                    }
                };
                join.push(id);
            }
            k += 1;
        }
        let top = subs.iter().position(|s| s.count() == n).expect("whole module reached");
        let mut lattice =
            SubmoduleLattice { subs, gens, index, n, join, height: Vec::new(), coheight: Vec::new(), zero: 0, top };
        lattice.compute_heights();
        lattice
    }

    fn compute_heights(&mut self) {
        let k = self.subs.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| self.subs[i].count());
        let mut height = vec![0; k];
        for (pos, &s) in order.iter().enumerate() {
            height[s] = order[..pos]
                .iter()
                .filter(|&&t| self.subs[t].count() < self.subs[s].count() && self.subs[t].is_subset(&self.subs[s]))
                .map(|&t| height[t] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut coheight = vec![0; k];
        for (pos, &s) in order.iter().enumerate().rev() {
            coheight[s] = order[pos + 1..]
                .iter()
                .filter(|&&t| self.subs[s].count() < self.subs[t].count() && self.subs[s].is_subset(&self.subs[t]))
                .map(|&t| coheight[t] + 1)
                .max()
                .unwrap_or(0);
        }
        self.height = height;
        self.coheight = coheight;
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn id_of(&self, s: &BitSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn join_with(&self, s: usize, e: usize) -> usize {
        self.join[s * self.n + e]
    }

    /// Submodules ordered by reverse inclusion: `i ≤ j` iff `subs[j] ⊆ subs[i]`.
    /// The zero submodule is the greatest element.
    pub fn reverse_inclusion_poset(&self) -> FinitePoset {
        FinitePoset::from_order_fn(self.subs.len(), |i, j| self.subs[j].is_subset(&self.subs[i]))
    }

    pub fn complement_of(&self, a: &BitSet) -> Option<usize> {
        let total = self.subs[self.top].count();
        let na = a.count();
        (0..self.subs.len()).find(|&b| {
            let sb = &self.subs[b];
            a.intersection_count(sb) == 1 && na * sb.count() == total
        })
    }
}

/// All submodules of a finite module ordered by reverse inclusion, with a
/// description of each as the span of some elements.
pub fn enumerate_submodules(m: &FgModule, bound: usize) -> Result<(FinitePoset, Vec<String>)> {
    let fm = FiniteModule::new(m, bound)?;
    let lattice = SubmoduleLattice::new(&fm);
    let labels = lattice
        .gens
        .iter()
        .map(|g| {
            if g.is_empty() {
                "0".to_string()
            } else {
                let parts: Vec<String> = g.iter().map(|&e| fm.describe(e)).collect();
                format!("<{}>", parts.join(", "))
            }
        })
        .collect();
    Ok((lattice.reverse_inclusion_poset(), labels))
}

/// Exhaustive enumeration of `Hom(source, target)` for finite modules.
///
/// A homomorphism is determined by the images `y_s` of the canonical
/// generators of the source, subject to `d_s · y_s = 0`.
pub struct HomSet<'a> {
    pub source: &'a FiniteModule,
    pub target: &'a FiniteModule,
    pub lattice: &'a SubmoduleLattice,
    candidates: Vec<Vec<usize>>,
    /// `multiples[s][y·q + d]` is `r_d · y` for the residues `r_d` of source slot `s`.
    multiples: Vec<Vec<usize>>,
}

impl<'a> HomSet<'a> {
    pub fn new(source: &'a FiniteModule, target: &'a FiniteModule, lattice: &'a SubmoduleLattice) -> Self {
        let candidates =
            source.moduli().iter().map(|d| (0..target.len()).filter(|&y| target.act(d, y) == 0).collect()).collect();
        let multiples = source
            .slots
            .iter()
            .map(|s| (0..target.len()).flat_map(|y| s.residues.iter().map(move |r| target.act(r, y))).collect())
            .collect();
        HomSet { source, target, lattice, candidates, multiples }
    }

    pub fn count(&self) -> u128 {
        self.candidates.iter().map(|c| c.len() as u128).product()
    }

    /// Calls `visit(images, image_id)` once per homomorphism, where
    /// `image_id` indexes the image in the target lattice.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize], usize)) {
        let k = self.candidates.len();
        let mut images = vec![0usize; k];
        let mut ids = vec![self.lattice.zero; k + 1];
        let mut choice = vec![0usize; k];
        if k == 0 {
            visit(&images, self.lattice.zero);
            return;
        }
        let mut level = 0;
        loop {
            if choice[level] == self.candidates[level].len() {
                choice[level] = 0;
                if level == 0 {
                    return;
                }
                level -= 1;
                choice[level] += 1;
                continue;
            }
            let y = self.candidates[level][choice[level]];
            images[level] = y;
            ids[level + 1] = self.lattice.join_with(ids[level], y);
            if level + 1 == k {
                visit(&images, ids[k]);
                choice[level] += 1;
            } else {
                level += 1;
            }
        }
    }

    /// The full table `m ↦ f(m)` of the homomorphism with the given images.
    pub fn table(&self, images: &[usize]) -> Vec<usize> {
        // Slot strides are cumulative, so the table grows one slot at a time.
        let mut table = Vec::with_capacity(self.source.len());
        table.push(0);
        for ((slot, mult), &y) in self.source.slots.iter().zip(&self.multiples).zip(images) {
            let q = slot.residues.len();
            let len = table.len();
            for d in 1..q {
                let step = mult[y * q + d];
                for j in 0..len {
                    table.push(self.target.add(table[j], step));
                }
            }
        }
        table
    }

    /// The homomorphism as a matrix on the presentation generators.
    pub fn to_module_map(&self, images: &[usize]) -> ModuleMap {
        let table = self.table(images);
        let ctx = self.source.ctx;
        let g_t = self.target.module.generators();
        let columns: Vec<Vec<RingElement>> =
            self.source.generator_elements().iter().map(|&e| self.target.lift(table[e])).collect();
        ModuleMap {
            source: self.source.module.clone(),
            target: self.target.module.clone(),
            matrix: RingMatrix::from_columns(ctx, g_t, &columns),
        }
    }
}

/// `κ(M, N)`, the least length of a kernel, and `γ(M, N)`, the least length
/// of a cokernel, over all homomorphisms `M → N`.
///
/// The kernel length is `len M − len(image)` and the cokernel length is the
/// length of the chain from the image up to `N` in the submodule lattice.
pub fn kappa_gamma(m: &FgModule, n: &FgModule, bound: usize) -> Result<(Ordinal, Ordinal)> {
    let fm = FiniteModule::new(m, bound)?;
    let fnn = FiniteModule::new(n, bound)?;
    let lat_m = SubmoduleLattice::new(&fm);
    let lat_n = SubmoduleLattice::new(&fnn);
    let (kappa, gamma) = kappa_gamma_finite(&fm, &lat_m, &fnn, &lat_n);
    Ok((Ordinal::from(kappa as u64), Ordinal::from(gamma as u64)))
}

pub fn kappa_gamma_finite(
    fm: &FiniteModule,
    lat_m: &SubmoduleLattice,
    fnn: &FiniteModule,
    lat_n: &SubmoduleLattice,
) -> (usize, usize) {
    let len_m = lat_m.height[lat_m.top];
    let mut seen = vec![false; lat_n.len()];
    HomSet::new(fm, fnn, lat_n).for_each(|_, id| seen[id] = true);
    let images: Vec<usize> = (0..lat_n.len()).filter(|&i| seen[i]).collect();
    let kappa = images.iter().map(|&i| len_m - lat_n.height[i]).min().expect("zero map");
    let gamma = images.iter().map(|&i| lat_n.coheight[i]).min().expect("zero map");
    (kappa, gamma)
}

/// Every finite module over `ctx` of at most `bound` elements, one per
/// isomorphism class, as canonical forms.
pub fn finite_module_types(ctx: RingContext, bound: usize) -> Vec<CanonicalForm> {
    // Primary components: for each prime (or monic irreducible) π and each
    // partition λ, the module ⊕ R/(π^λᵢ).
    let primes: Vec<(RingElement, usize)> = irreducibles(ctx, bound);
    let mut out = vec![Vec::<RingElement>::new()];
    let mut sizes = vec![1usize];
    for (pi, q) in primes {
        let mut next = Vec::new();
        let mut next_sizes = Vec::new();
        for (base, &size) in out.iter().zip(&sizes) {
            // partitions with parts as exponents, in nonincreasing order
            let max_total = (bound / size).ilog(q) as usize;
            for parts in partitions_up_to(max_total) {
                let mut summands = base.clone();
                let mut s = size;
                for &e in &parts {
                    let mut d = ctx.one();
                    for _ in 0..e {
                        d = ctx.mul(&d, &pi);
                    }
                    summands.push(d);
                    s *= q.pow(e as u32);
                }
                next.push(summands);
                next_sizes.push(s);
            }
        }
        out = next;
        sizes = next_sizes;
    }
    out.into_iter()
        .map(|summands| {
            let m = FgModule::from_parts(ctx, 0, &summands);
            m.canonical_form()
        })
        .collect()
}

/// Partitions of every total from 0 to `n`.
fn partitions_up_to(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for k in (1..=max.min(left)).rev() {
            cur.push(k);
            rec(left - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Irreducibles `π` (up to units) with `|R/(π)| ≤ bound`, paired with that size.
fn irreducibles(ctx: RingContext, bound: usize) -> Vec<(RingElement, usize)> {
    match ctx {
        RingContext::Integers => (2..=bound as i64)
            .filter(|&k| crate::euclid::is_prime(k as u64))
            .map(|k| (ctx.from_i64(k), k as usize))
            .collect(),
        RingContext::Localized(p) => {
            if (p as usize) <= bound {
                vec![(ctx.from_i64(p as i64), p as usize)]
            } else {
                Vec::new()
            }
        }
        RingContext::Polynomial(p) => {
            let mut out = Vec::new();
            let mut deg = 1u32;
            while (p as usize).checked_pow(deg).is_some_and(|q| q <= bound) {
                let q = (p as usize).pow(deg);
                for low in 0..q {
                    let mut c: Vec<i64> = (0..deg).map(|k| ((low / (p as usize).pow(k)) % p as usize) as i64).collect();
                    c.push(1);
                    let f = ctx.polynomial(&c).unwrap();
                    if ctx.factor_count(&f).unwrap() == 1 {
                        out.push((f, q));
                    }
                }
                deg += 1;
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: RingContext = RingContext::Integers;

    fn cyc(n: i64) -> FgModule {
        FgModule::cyclic(Z, Z.from_i64(n))
    }

    fn parts(ctx: RingContext, factors: &[i64]) -> FgModule {
        let f: Vec<_> = factors.iter().map(|&k| ctx.from_i64(k)).collect();
        FgModule::from_parts(ctx, 0, &f)
    }

    #[test]
    fn enumerate_examples() {
        let (p, labels) = enumerate_submodules(&cyc(4), 64).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.max_chain_length().unwrap(), 2);
        assert_eq!(labels[0], "0");
        let (p, _) = enumerate_submodules(&parts(Z, &[2, 2]), 64).unwrap();
        assert_eq!(p.len(), 5);
        let (p, _) = enumerate_submodules(&cyc(7), 64).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(enumerate_submodules(&FgModule::free(Z, 1), 64).unwrap_err(), Error::InfiniteModule);
        assert!(matches!(enumerate_submodules(&cyc(65), 64), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn zero_submodule_is_top_of_reverse_order() {
        let fm = FiniteModule::new(&parts(Z, &[2, 4]), 64).unwrap();
        let lat = SubmoduleLattice::new(&fm);
        let p = lat.reverse_inclusion_poset();
        assert_eq!(p.maximum(), Some(lat.zero));
        assert_eq!(p.minimum(), Some(lat.top));
        assert_eq!(p.rank_all().length, Ordinal::from(3));
    }

    #[test]
    fn subgroup_counts() {
        // (Z/2)^3 has 1 + 7 + 7 + 1 subgroups; (Z/p)^2 has p + 3.
        let fm = FiniteModule::new(&parts(Z, &[2, 2, 2]), 64).unwrap();
        assert_eq!(SubmoduleLattice::new(&fm).len(), 16);
        let fm = FiniteModule::new(&parts(Z, &[5, 5]), 64).unwrap();
        assert_eq!(SubmoduleLattice::new(&fm).len(), 8);
        let fm = FiniteModule::new(&parts(Z, &[2, 2, 2, 2, 2, 2]), 64).unwrap();
        assert_eq!(SubmoduleLattice::new(&fm).len(), 2825);
    }

    #[test]
    fn polynomial_submodules() {
        // F_2[x]/(x^2) is a chain; F_2[x]/(x^2+x) ≅ F_2 × F_2 has two simple submodules.
        let f2 = RingContext::Polynomial(2);
        let m = FgModule::cyclic(f2, f2.polynomial(&[0, 0, 1]).unwrap());
        assert_eq!(SubmoduleLattice::new(&FiniteModule::new(&m, 64).unwrap()).len(), 3);
        let m = FgModule::cyclic(f2, f2.polynomial(&[0, 1, 1]).unwrap());
        assert_eq!(SubmoduleLattice::new(&FiniteModule::new(&m, 64).unwrap()).len(), 4);
        // x acts as zero on F_2[x]/(x) ⊕ F_2[x]/(x): all 5 subspaces
        let m = FgModule::from_parts(f2, 0, &[f2.generator(), f2.generator()]);
        assert_eq!(SubmoduleLattice::new(&FiniteModule::new(&m, 64).unwrap()).len(), 5);
    }

    #[test]
    fn localized_submodules() {
        let z2 = RingContext::Localized(2);
        let m = FgModule::new(
            2,
            RingMatrix::new(
                z2,
                2,
                2,
                vec![
                    z2.fraction(4.into(), 3.into()).unwrap(),
                    z2.zero(),
                    z2.fraction(2.into(), 5.into()).unwrap(),
                    z2.from_i64(6),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        // gcd of entries has valuation 1, determinant 8: Z/2 ⊕ Z/4
        let fm = FiniteModule::new(&m, 64).unwrap();
        assert_eq!(fm.len(), 8);
        let lat = SubmoduleLattice::new(&fm);
        assert_eq!(lat.height[lat.top], 3);
    }

    #[test]
    fn element_round_trip() {
        let m = FgModule::new(2, RingMatrix::from_i64(Z, 2, 2, &[2, 4, 6, 8])).unwrap();
        let fm = FiniteModule::new(&m, 64).unwrap();
        assert_eq!(fm.len(), 8);
        for i in 0..fm.len() {
            assert_eq!(fm.element_of(&fm.lift(i)), i);
        }
    }

    #[test]
    fn kappa_gamma_examples() {
        let o = |n: u64| Ordinal::from(n);
        assert_eq!(kappa_gamma(&cyc(2), &cyc(4), 64).unwrap(), (o(0), o(1)));
        let m = parts(Z, &[2, 4]);
        assert_eq!(kappa_gamma(&m, &m, 64).unwrap(), (o(0), o(0)));
        assert_eq!(kappa_gamma(&cyc(2), &cyc(3), 64).unwrap(), (o(1), o(1)));
    }

    #[test]
    fn hom_counts_and_maps() {
        // |Hom(Z/4 ⊕ Z/2, Z/8 ⊕ Z/2)| = 4·2·2·2
        let (m, n) = (parts(Z, &[4, 2]), parts(Z, &[8, 2]));
        let (fm, fnn) = (FiniteModule::new(&m, 64).unwrap(), FiniteModule::new(&n, 64).unwrap());
        let lat = SubmoduleLattice::new(&fnn);
        let homs = HomSet::new(&fm, &fnn, &lat);
        assert_eq!(homs.count(), 32);
        let mut seen = 0;
        homs.for_each(|ys, id| {
            seen += 1;
            let f = homs.to_module_map(ys);
            let checked = ModuleMap::new(f.source.clone(), f.target.clone(), f.matrix.clone()).unwrap();
            let table = homs.table(ys);
            let mut image = BitSet::new(fnn.len());
            table.iter().for_each(|&y| image.insert(y));
            assert_eq!(lat.id_of(&image), Some(id));
            assert_eq!(checked.parts().image.length(), Ordinal::from(lat.height[id] as u64));
        });
        assert_eq!(seen, 32);
    }

    #[test]
    fn module_types() {
        // number of abelian groups of order n, summed over n ≤ 32
        assert_eq!(finite_module_types(Z, 32).len(), 55);
        let orders: Vec<usize> =
            finite_module_types(Z, 16).iter().map(|c| FiniteModule::new(&c.to_module(), 16).unwrap().len()).collect();
        assert_eq!(orders.iter().filter(|&&k| k == 16).count(), 5);
        assert_eq!(orders.iter().filter(|&&k| k == 12).count(), 2);
        // F_2[x]-modules of order 4: x, x+1 squared, x^2+x+1, products, and two-factor sums
        let f2 = finite_module_types(RingContext::Polynomial(2), 4);
        let of4 = f2.iter().filter(|c| FiniteModule::new(&c.to_module(), 4).unwrap().len() == 4).count();
        assert_eq!(of4, 6);
        assert_eq!(finite_module_types(RingContext::Localized(3), 27).len(), 1 + 1 + 2 + 3);
    }
}
