//! Reference computations that avoid the Smith normal form: ranks and
//! torsion read off determinantal divisors, and poset ranks by fixed-point
//! iteration.

use crate::euclid::{RingContext, RingElement, RingMatrix};
use crate::module::FgModule;
use crate::ordinal::Ordinal;
use crate::pwo::FinitePoset;

/// Laplace expansion along the first row.
pub fn det(ctx: RingContext, m: &[Vec<RingElement>]) -> RingElement {
    let n = m.len();
    match n {
        0 => ctx.one(),
        1 => m[0][0].clone(),
        2 => ctx.sub(&ctx.mul(&m[0][0], &m[1][1]), &ctx.mul(&m[0][1], &m[1][0])),
        _ => {
            let mut acc = ctx.zero();
            for j in 0..n {
                if ctx.is_zero(&m[0][j]) {
                    continue;
                }
                let minor: Vec<Vec<RingElement>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = ctx.mul(&m[0][j], &det(ctx, &minor));
                acc = if j % 2 == 0 { ctx.add(&acc, &term) } else { ctx.sub(&acc, &term) };
            }
            acc
        }
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// The gcd of all `r × r` minors; zero when they all vanish.
pub fn determinantal_divisor(a: &RingMatrix, r: usize) -> RingElement {
    let ctx = a.ctx;
    let mut g = ctx.zero();
    for rows in subsets(a.rows(), r) {
        for cols in subsets(a.cols(), r) {
            let m: Vec<Vec<RingElement>> =
                rows.iter().map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
            let d = det(ctx, &m);
            if !ctx.is_zero(&d) {
                g = ctx.gcd(&g, &d);
                if ctx.is_unit(&g) {
                    return g;
                }
            }
        }
    }
    g
}

/// Largest `r` with a nonzero `r × r` minor, and the divisor `D_r`.
pub fn rank_and_divisor(a: &RingMatrix) -> (usize, RingElement) {
    for r in (1..=a.rows().min(a.cols())).rev() {
        let d = determinantal_divisor(a, r);
        if !a.ctx.is_zero(&d) {
            return (r, d);
        }
    }
    (0, a.ctx.one())
}

pub fn rank(a: &RingMatrix) -> usize {
    rank_and_divisor(a).0
}

/// `(g − r)·ω + Ω(D_r)`: the free rank is the corank of the relations and
/// the torsion length counts prime factors of the product of the invariant
/// factors, which is `D_r`.
pub fn module_length(m: &FgModule) -> Ordinal {
    let (r, d) = rank_and_divisor(m.relations());
    let torsion = m.ctx.factor_count(&d).expect("nonzero divisor");
    Ordinal::from_terms([(1, (m.generators() - r) as u64), (0, torsion)])
}

pub fn module_dimension(m: &FgModule) -> i64 {
    let (r, d) = rank_and_divisor(m.relations());
    if r < m.generators() {
        1
    } else if m.ctx.is_unit(&d) {
        -1
    } else {
        0
    }
}

/// Ranks by repeated relaxation `rank(a) = max(rank(b) + 1 : b < a)`.
pub fn poset_ranks(p: &FinitePoset) -> Vec<usize> {
    let n = p.len();
    let mut rank = vec![0usize; n];
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if p.lt(b, a) && rank[b] + 1 > rank[a] {
                    rank[a] = rank[b] + 1;
                    changed = true;
                }
            }
        }
        if !changed {
            return rank;
        }
    }
}
