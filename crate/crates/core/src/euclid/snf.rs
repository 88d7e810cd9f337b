use super::{RingContext, RingElement, RingMatrix};
use crate::error::{Error, Result};

/// `u · a · v = diag(d)` with `d₁ | d₂ | …` normalized and nonzero; the
/// inverses of `u` and `v` are tracked alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: Vec<RingElement>,
    pub u: RingMatrix,
    pub u_inv: RingMatrix,
    pub v: RingMatrix,
    pub v_inv: RingMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// The full `rows × cols` diagonal matrix.
    pub fn diagonal(&self) -> RingMatrix {
        let ctx = self.u.ctx;
        RingMatrix::from_fn(ctx, self.u.rows(), self.v.rows(), |i, j| {
            if i == j && i < self.d.len() {
                self.d[i].clone()
            } else {
                ctx.zero()
            }
        })
    }
}

struct Work {
    ctx: RingContext,
    a: RingMatrix,
    u: RingMatrix,
    u_inv: RingMatrix,
    v: RingMatrix,
    v_inv: RingMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let t = m.get(i, c).clone();
                m.set(i, c, m.get(j, c).clone());
                m.set(j, c, t);
            }
        }
        swap_cols(&mut self.u_inv, i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        swap_cols(&mut self.v, i, j);
        let m = &mut self.v_inv;
        for c in 0..m.cols() {
            let t = m.get(i, c).clone();
            m.set(i, c, m.get(j, c).clone());
            m.set(j, c, t);
        }
    }

    /// Row `i` += k · row `j`.
    fn add_row(&mut self, i: usize, j: usize, k: &RingElement) {
        let ctx = self.ctx;
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let x = ctx.add(m.get(i, c), &ctx.mul(k, m.get(j, c)));
                m.set(i, c, x);
            }
        }
        // u_inv ← u_inv · E⁻¹: column j -= k · column i.
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            let x = ctx.sub(m.get(r, j), &ctx.mul(k, m.get(r, i)));
            m.set(r, j, x);
        }
    }

    /// Column `j` += k · column `i`.
    fn add_col(&mut self, j: usize, i: usize, k: &RingElement) {
        let ctx = self.ctx;
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let x = ctx.add(m.get(r, j), &ctx.mul(k, m.get(r, i)));
                m.set(r, j, x);
            }
        }
        // v_inv ← E⁻¹ · v_inv: row i -= k · row j.
        let m = &mut self.v_inv;
        for c in 0..m.cols() {
            let x = ctx.sub(m.get(i, c), &ctx.mul(k, m.get(j, c)));
            m.set(i, c, x);
        }
    }

    /// Row `i` *= unit `w`.
    fn scale_row(&mut self, i: usize, w: &RingElement) {
        let ctx = self.ctx;
        let w_inv = ctx.unit_inverse(w);
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let x = ctx.mul(w, m.get(i, c));
                m.set(i, c, x);
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            let x = ctx.mul(m.get(r, i), &w_inv);
            m.set(r, i, x);
        }
    }
}

fn swap_cols(m: &mut RingMatrix, i: usize, j: usize) {
    for r in 0..m.rows() {
        let t = m.get(r, i).clone();
        m.set(r, i, m.get(r, j).clone());
        m.set(r, j, t);
    }
}

/// Smith normal form by Euclidean elimination with a smallest-norm pivot.
pub fn smith_normal_form(a: &RingMatrix) -> SmithDecomposition {
    let ctx = a.ctx;
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        ctx,
        a: a.clone(),
        u: RingMatrix::identity(ctx, rows),
        u_inv: RingMatrix::identity(ctx, rows),
        v: RingMatrix::identity(ctx, cols),
        v_inv: RingMatrix::identity(ctx, cols),
    };
    let mut d = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&w.a, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            if let Some(i) = (t + 1..rows).find(|&i| !ctx.is_zero(w.a.get(i, t))) {
                let (q, r) = ctx.divmod(w.a.get(i, t), w.a.get(t, t)).expect("nonzero pivot");
                w.add_row(i, t, &ctx.neg(&q));
                if !ctx.is_zero(&r) {
                    w.swap_rows(t, i);
                }
                continue;
            }
            if let Some(j) = (t + 1..cols).find(|&j| !ctx.is_zero(w.a.get(t, j))) {
                let (q, r) = ctx.divmod(w.a.get(t, j), w.a.get(t, t)).expect("nonzero pivot");
                w.add_col(j, t, &ctx.neg(&q));
                if !ctx.is_zero(&r) {
                    w.swap_cols(t, j);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let pivot = w.a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !ctx.divides(&pivot, w.a.get(i, j))));
            match bad {
                Some(i) => w.add_row(t, i, &ctx.one()),
                None => break,
            }
        }
        let (unit, _) = ctx.normalize(w.a.get(t, t));
        w.scale_row(t, &ctx.unit_inverse(&unit));
        d.push(w.a.get(t, t).clone());
    }
    SmithDecomposition { d, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

fn smallest_entry(a: &RingMatrix, t: usize) -> Option<(usize, usize)> {
    let ctx = a.ctx;
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if ctx.is_zero(x) {
                continue;
            }
            if best.is_none_or(|(bi, bj)| ctx.norm(x) < ctx.norm(a.get(bi, bj))) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// A matrix together with its Smith decomposition, for repeated membership
/// queries against its column span.
#[derive(Debug, Clone)]
pub struct ColumnSpan {
    pub matrix: RingMatrix,
    pub snf: SmithDecomposition,
}

impl ColumnSpan {
    pub fn new(matrix: &RingMatrix) -> Self {
        ColumnSpan { matrix: matrix.clone(), snf: smith_normal_form(matrix) }
    }

    /// Some `x` with `matrix · x = b`, or `None` if `b` is outside the span.
    pub fn solve(&self, b: &[RingElement]) -> Result<Option<Vec<RingElement>>> {
        let ctx = self.matrix.ctx;
        let c = self.snf.u.mul_vec(b)?;
        let rank = self.snf.rank();
        if c[rank..].iter().any(|x| !ctx.is_zero(x)) {
            return Ok(None);
        }
        let mut y = vec![ctx.zero(); self.matrix.cols()];
        for i in 0..rank {
            match ctx.exact_div(&c[i], &self.snf.d[i]) {
                Some(q) => y[i] = q,
                None => return Ok(None),
            }
        }
        let x = self.snf.v.mul_vec(&y)?;
        if self.matrix.mul_vec(&x)? != b {
            return Err(Error::Invalid("membership certificate failed to verify".into()));
        }
        Ok(Some(x))
    }

    pub fn contains(&self, b: &[RingElement]) -> Result<bool> {
        Ok(self.solve(b)?.is_some())
    }
}

/// `x` with `a · x = b` when `b` lies in the column span of `a`.
pub fn membership_solve(a: &RingMatrix, b: &[RingElement]) -> Result<Option<Vec<RingElement>>> {
    if b.len() != a.rows() {
        return Err(Error::Shape(format!("right-hand side of length {} for {} rows", b.len(), a.rows())));
    }
    ColumnSpan::new(a).solve(b)
}

/// Columns generating `{x : a·x = 0}`; a basis, since the kernel is free.
pub fn kernel_basis(a: &RingMatrix) -> RingMatrix {
    let snf = smith_normal_form(a);
    snf.v.select_cols(snf.rank()..a.cols())
}

/// A basis of the column span of `a`: `u⁻¹ · diag(d)` restricted to the rank.
pub fn column_span_basis(a: &RingMatrix) -> RingMatrix {
    let snf = smith_normal_form(a);
    let ctx = a.ctx;
    let r = snf.rank();
    RingMatrix::from_fn(ctx, a.rows(), r, |i, j| ctx.mul(snf.u_inv.get(i, j), &snf.d[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    const Z: RingContext = RingContext::Integers;

    fn check(a: &RingMatrix) -> SmithDecomposition {
        let ctx = a.ctx;
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.diagonal(), "reassembly");
        let (r, c) = (a.rows(), a.cols());
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), RingMatrix::identity(ctx, r));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), RingMatrix::identity(ctx, c));
        for w in s.d.windows(2) {
            assert!(ctx.divides(&w[0], &w[1]), "divisibility chain");
        }
        for x in &s.d {
            assert_eq!(&ctx.associate(x), x, "normalized");
        }
        s
    }

    /// Integer determinant by cofactor expansion.
    fn det(m: &[Vec<i64>]) -> BigInt {
        if m.is_empty() {
            return BigInt::from(1);
        }
        let n = m.len();
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                BigInt::from(sign * m[0][j]) * det(&minor)
            })
            .sum()
    }

    #[test]
    fn worked_examples() {
        let id = RingMatrix::identity(Z, 3);
        assert_eq!(check(&id).d, vec![Z.one(); 3]);
        let a = RingMatrix::from_i64(Z, 2, 2, &[2, 4, 6, 8]);
        let s = check(&a);
        // d₁ is the gcd of the entries, d₁·d₂ the absolute determinant.
        assert_eq!(s.d, vec![Z.from_i64(2), Z.from_i64(4)]);
        assert_eq!(check(&RingMatrix::zeros(Z, 2, 3)).d, vec![]);
    }

    #[test]
    fn membership_examples() {
        let a = RingMatrix::from_i64(Z, 1, 1, &[2]);
        assert_eq!(membership_solve(&a, &[Z.from_i64(4)]).unwrap(), Some(vec![Z.from_i64(2)]));
        assert_eq!(membership_solve(&a, &[Z.from_i64(3)]).unwrap(), None);
        let a = RingMatrix::from_i64(Z, 2, 2, &[1, 0, 0, 6]);
        assert_eq!(membership_solve(&a, &[Z.zero(), Z.from_i64(6)]).unwrap(), Some(vec![Z.zero(), Z.one()]));
        assert!(membership_solve(&a, &[Z.zero()]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&RingMatrix::from_i64(Z, 1, 2, &[1, 1]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert_eq!(Z.add(&col[0], &col[1]), Z.zero());
        assert!(Z.is_unit(&col[0]));
        assert_eq!(kernel_basis(&RingMatrix::from_i64(Z, 2, 2, &[2, 1, 1, 1])).cols(), 0);
        assert_eq!(kernel_basis(&RingMatrix::zeros(Z, 1, 2)).cols(), 2);
    }

    #[test]
    fn polynomial_and_localized() {
        let f2 = RingContext::Polynomial(2);
        let x = f2.polynomial(&[0, 1]).unwrap();
        let x1 = f2.polynomial(&[1, 1]).unwrap();
        let a = RingMatrix::from_columns(f2, 2, &[vec![x.clone(), f2.zero()], vec![f2.zero(), x1.clone()]]);
        let s = check(&a);
        assert_eq!(s.d, vec![f2.one(), f2.mul(&x, &x1)]);
        let z3 = RingContext::Localized(3);
        let a = RingMatrix::from_i64(z3, 2, 2, &[6, 9, 2, 27]);
        let s = check(&a);
        // det = 144 = 16·9
        assert_eq!(s.d, vec![z3.one(), z3.from_i64(9)]);
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-9i64..=9, r * c)))
    }

    proptest! {
        #[test]
        fn integer_snf((r, c, vals) in small_matrix()) {
            let a = RingMatrix::from_i64(Z, r, c, &vals);
            let s = check(&a);
            if r == c && r > 0 {
                let rows: Vec<Vec<i64>> = vals.chunks(c).map(|ch| ch.to_vec()).collect();
                let dt = det(&rows).abs();
                let prod: BigInt = if s.rank() == r {
                    s.d.iter().map(|x| match x { RingElement::Int(n) => n.clone(), _ => unreachable!() }).product()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(prod, dt);
            }
            let k = kernel_basis(&a);
            prop_assert_eq!(k.cols(), c - s.rank());
            prop_assert!(a.mul(&k).unwrap().is_zero());
            let b = column_span_basis(&a);
            for col in a.columns() {
                prop_assert!(membership_solve(&b, &col).unwrap().is_some());
            }
            for col in b.columns() {
                prop_assert!(membership_solve(&a, &col).unwrap().is_some());
            }
        }

        #[test]
        fn polynomial_snf(r in 0usize..4, c in 0usize..4, seed in prop::collection::vec(0i64..5, 64)) {
            let ctx = RingContext::Polynomial(5);
            let a = RingMatrix::from_fn(ctx, r, c, |i, j| {
                let k = 4 * (i * 4 + j);
                ctx.polynomial(&seed[k..k + 4]).unwrap()
            });
            check(&a);
            prop_assert!(a.mul(&kernel_basis(&a)).unwrap().is_zero());
        }
    }
}
