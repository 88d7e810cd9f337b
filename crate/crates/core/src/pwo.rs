//! Foundation ranks on finite posets and symbolic well-partial-order
//! expressions.
//!
//! A [`FinitePoset`] stores its order as a dense reflexive, transitive
//! relation. The rank of an element is `0` for minimal elements and otherwise
//! one more than the largest rank strictly below it; the length of a poset is
//! its largest rank.
//!
//! A [`PwoExpr`] describes a (possibly infinite) partial well-order built from
//! chains of ordinal type, explicit finite posets, sums and products. Its
//! length is computed symbolically, and finite expressions can be flattened
//! into an explicit poset to cross-check the symbolic value.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Default size limit for [`PwoExpr::flatten`].
pub const DEFAULT_FLATTEN_BOUND: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    /// Row-major `n × n` matrix, `le[i * n + j]` iff `i ≤ j`.
    le: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub rank: Vec<usize>,
    pub length: Ordinal,
}

impl RankTable {
    pub fn rank_ordinal(&self, i: usize) -> Ordinal {
        Ordinal::from(self.rank[i] as u64)
    }
}

impl FinitePoset {
    /// Builds the poset generated by `pairs` (each `(i, j)` meaning `i ≤ j`),
    /// taking the reflexive-transitive closure.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(i, j) in pairs {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            le[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if le[i * n + j] && le[j * n + i] {
                    return Err(Error::Cycle(i, j));
                }
            }
        }
        Ok(FinitePoset { n, le })
    }

    /// Builds a poset from a relation the caller guarantees to be a partial
    /// order. Used for products and lattices, where the closure is known.
    pub fn from_order_fn(n: usize, mut le: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = i == j || le(i, j);
            }
        }
        debug_assert!(n > 64 || Self::is_partial_order(n, &m));
        FinitePoset { n, le: m }
    }

    fn is_partial_order(n: usize, le: &[bool]) -> bool {
        (0..n).all(|i| le[i * n + i])
            && (0..n).all(|i| (0..n).all(|j| i == j || !(le[i * n + j] && le[j * n + i])))
            && (0..n).all(|i| (0..n).all(|j| !le[i * n + j] || (0..n).all(|k| !le[j * n + k] || le[i * n + k])))
    }

    pub fn chain(len: usize) -> Self {
        Self::from_order_fn(len, |i, j| i <= j)
    }

    pub fn antichain(len: usize) -> Self {
        Self::from_order_fn(len, |i, j| i == j)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.n + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    /// All strict pairs `(i, j)` with `i < j` in the order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.lt(i, j)).collect()
    }

    /// The greatest element, if any.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.n).find(|&m| (0..self.n).all(|i| self.le(i, m)))
    }

    /// The least element, if any.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.n).find(|&m| (0..self.n).all(|i| self.le(m, i)))
    }

    /// The subposet on `elems`, reindexed in the given order.
    pub fn induced(&self, elems: &[usize]) -> FinitePoset {
        FinitePoset::from_order_fn(elems.len(), |i, j| self.le(elems[i], elems[j]))
    }

    /// `self + other`: the disjoint union with every element of `self` below
    /// every element of `other`. Elements of `other` are shifted by `self.len()`.
    pub fn sum(&self, other: &FinitePoset) -> FinitePoset {
        let (p, q) = (self.n, other.n);
        FinitePoset::from_order_fn(p + q, |i, j| match (i < p, j < p) {
            (true, true) => self.le(i, j),
            (true, false) => true,
            (false, true) => false,
            (false, false) => other.le(i - p, j - p),
        })
    }

    /// Componentwise order on `self × other`; the pair `(a, b)` has index
    /// `a * other.len() + b`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let q = other.n;
        FinitePoset::from_order_fn(self.n * q, |i, j| self.le(i / q, j / q) && other.le(i % q, j % q))
    }

    /// Ranks of all elements, computed along a linear extension.
    pub fn rank_all(&self) -> RankTable {
        let n = self.n;
        // Sorting by the number of strictly smaller elements yields a linear
        // extension: a < b implies everything below a is below b as well.
        let below: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| self.lt(i, j)).count()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| below[i]);
        let mut rank = vec![0usize; n];
        for (k, &b) in order.iter().enumerate() {
            rank[b] = order[..k].iter().filter(|&&a| self.lt(a, b)).map(|&a| rank[a] + 1).max().unwrap_or(0);
        }
        let length = Ordinal::from(rank.iter().copied().max().unwrap_or(0) as u64);
        RankTable { rank, length }
    }

    /// Number of edges in a longest chain.
    pub fn max_chain_length(&self) -> Result<usize> {
        if self.n == 0 {
            return Err(Error::EmptyPoset);
        }
        // Longest chain starting at each element, by memoized upward search.
        let mut memo: Vec<Option<usize>> = vec![None; self.n];
        fn up(p: &FinitePoset, a: usize, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(v) = memo[a] {
                return v;
            }
            let mut best = 0;
            for b in 0..p.n {
                if p.lt(a, b) {
                    best = best.max(1 + up(p, b, memo));
                }
            }
            memo[a] = Some(best);
            best
        }
        Ok((0..self.n).map(|a| up(self, a, &mut memo)).max().unwrap_or(0))
    }
}

#[derive(Serialize, Deserialize)]
struct PosetRepr {
    n: usize,
    le: Vec<(usize, usize)>,
}

impl Serialize for FinitePoset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetRepr { n: self.n, le: self.strict_pairs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PosetRepr::deserialize(d)?;
        FinitePoset::new(r.n, &r.le).map_err(serde::de::Error::custom)
    }
}

/// A partial well-order built from chains, explicit posets, sums and
/// products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PwoExpr {
    /// A chain of the given order type.
    Chain(Ordinal),
    Explicit(FinitePoset),
    Sum(Box<PwoExpr>, Box<PwoExpr>),
    Product(Box<PwoExpr>, Box<PwoExpr>),
}

impl PwoExpr {
    pub fn chain(o: Ordinal) -> Self {
        PwoExpr::Chain(o)
    }

    pub fn sum(p: PwoExpr, q: PwoExpr) -> Self {
        PwoExpr::Sum(Box::new(p), Box::new(q))
    }

    pub fn product(p: PwoExpr, q: PwoExpr) -> Self {
        PwoExpr::Product(Box::new(p), Box::new(q))
    }

    pub fn is_empty(&self) -> bool {
        match self {
            PwoExpr::Chain(o) => o.is_zero(),
            PwoExpr::Explicit(p) => p.is_empty(),
            PwoExpr::Sum(p, q) => p.is_empty() && q.is_empty(),
            PwoExpr::Product(p, q) => p.is_empty() || q.is_empty(),
        }
    }

    pub fn has_max(&self) -> bool {
        match self {
            PwoExpr::Chain(o) => o.is_successor(),
            PwoExpr::Explicit(p) => p.maximum().is_some(),
            PwoExpr::Sum(p, q) => q.has_max() || (q.is_empty() && p.has_max()),
            PwoExpr::Product(p, q) => p.has_max() && q.has_max(),
        }
    }

    /// Length computed from the sum and product formulas.
    ///
    /// A sum whose left operand is nonempty without a maximum is rejected:
    /// its length is not determined by the lengths of the operands.
    pub fn symbolic_length(&self) -> Result<Ordinal> {
        match self {
            PwoExpr::Chain(o) => Ok(o.predecessor().unwrap_or_else(|_| o.clone())),
            PwoExpr::Explicit(p) => Ok(p.rank_all().length),
            PwoExpr::Sum(p, q) => {
                if p.is_empty() {
                    return q.symbolic_length();
                }
                if q.is_empty() {
                    return p.symbolic_length();
                }
                if !p.has_max() {
                    return Err(Error::SumWithoutMaximum);
                }
                // The maximum of P sits below all of Q, adding one to every rank there.
                let (lp, lq) = (p.symbolic_length()?, q.symbolic_length()?);
                Ok(lp.ord_sum(&Ordinal::one()).ord_sum(&lq))
            }
            PwoExpr::Product(p, q) => {
                if self.is_empty() {
                    return Ok(Ordinal::zero());
                }
                Ok(p.symbolic_length()?.shuffle_sum(&q.symbolic_length()?))
            }
        }
    }

    /// Number of elements, or `None` when some chain is infinite.
    pub fn size(&self) -> Option<usize> {
        match self {
            PwoExpr::Chain(o) => o.to_natural().and_then(|n| usize::try_from(n).ok()),
            PwoExpr::Explicit(p) => Some(p.len()),
            PwoExpr::Sum(p, q) => p.size()?.checked_add(q.size()?),
            PwoExpr::Product(p, q) => p.size()?.checked_mul(q.size()?),
        }
    }

    /// The explicit poset denoted by a finite expression of at most `bound`
    /// elements.
    pub fn flatten(&self, bound: usize) -> Result<FinitePoset> {
        if let Some(o) = self.infinite_chain() {
            return Err(Error::InfiniteChain(o.to_string()));
        }
        match self.size() {
            Some(n) if n <= bound => Ok(self.build()),
            Some(n) => Err(Error::BoundExceeded { needed: n.to_string(), bound }),
            None => Err(Error::BoundExceeded { needed: "overflow".into(), bound }),
        }
    }

    fn infinite_chain(&self) -> Option<&Ordinal> {
        match self {
            PwoExpr::Chain(o) if !o.is_finite() => Some(o),
            PwoExpr::Chain(_) | PwoExpr::Explicit(_) => None,
            PwoExpr::Sum(p, q) | PwoExpr::Product(p, q) => p.infinite_chain().or_else(|| q.infinite_chain()),
        }
    }

    fn build(&self) -> FinitePoset {
        match self {
            PwoExpr::Chain(o) => FinitePoset::chain(o.to_natural().and_then(|n| usize::try_from(n).ok()).unwrap()),
            PwoExpr::Explicit(p) => p.clone(),
            PwoExpr::Sum(p, q) => p.build().sum(&q.build()),
            PwoExpr::Product(p, q) => p.build().product(&q.build()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diamond() -> FinitePoset {
        FinitePoset::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    /// Longest chain ending at each element, by enumerating all chains
    /// through repeated extension.
    fn brute_ranks(p: &FinitePoset) -> Vec<usize> {
        let n = p.len();
        let mut chains: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut best = vec![0; n];
        while let Some(c) = chains.pop() {
            let top = *c.last().unwrap();
            best[top] = best[top].max(c.len() - 1);
            for b in 0..n {
                if p.lt(top, b) {
                    let mut d = c.clone();
                    d.push(b);
                    chains.push(d);
                }
            }
        }
        best
    }

    #[test]
    fn make_poset_examples() {
        let c = FinitePoset::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(c, FinitePoset::chain(3));
        assert_eq!(FinitePoset::new(2, &[]).unwrap(), FinitePoset::antichain(2));
        assert_eq!(FinitePoset::new(2, &[(0, 1), (1, 0)]), Err(Error::Cycle(0, 1)));
        assert_eq!(FinitePoset::new(2, &[(0, 2)]), Err(Error::IndexOutOfRange { index: 2, n: 2 }));
    }

    #[test]
    fn rank_examples() {
        let r = FinitePoset::chain(4).rank_all();
        assert_eq!(r.rank, vec![0, 1, 2, 3]);
        assert_eq!(r.length, o("3"));
        let r = FinitePoset::antichain(5).rank_all();
        assert_eq!(r.rank, vec![0; 5]);
        assert_eq!(r.length, Ordinal::zero());
        let d = diamond();
        assert_eq!(d.rank_all().rank, brute_ranks(&d));
        assert_eq!(d.rank_all().rank, vec![0, 1, 1, 2]);
        assert_eq!(d.rank_all().length, o("2"));
    }

    #[test]
    fn chain_length_examples() {
        assert_eq!(FinitePoset::chain(4).max_chain_length().unwrap(), 3);
        assert_eq!(diamond().max_chain_length().unwrap(), 2);
        assert_eq!(FinitePoset::antichain(5).max_chain_length().unwrap(), 0);
        assert_eq!(FinitePoset::chain(0).max_chain_length(), Err(Error::EmptyPoset));
    }

    #[test]
    fn sum_and_product_examples() {
        let c2 = FinitePoset::chain(2);
        assert_eq!(c2.sum(&c2), FinitePoset::chain(4));
        let a = FinitePoset::antichain(2).sum(&FinitePoset::antichain(2));
        assert_eq!(a.len(), 4);
        assert_eq!(a.rank_all().length, o("1"));
        let d = diamond();
        assert_eq!(d.sum(&FinitePoset::chain(0)), d);
        let g = FinitePoset::chain(3).product(&c2);
        assert_eq!(g.rank_all().length, o("3"));
        assert_eq!(d.product(&FinitePoset::chain(1)), d);
        assert_eq!(c2.product(&c2), d);
    }

    #[test]
    fn symbolic_examples() {
        assert_eq!(PwoExpr::chain(o("w")).symbolic_length().unwrap(), o("w"));
        let s = PwoExpr::sum(PwoExpr::chain(o("3")), PwoExpr::chain(o("w")));
        assert_eq!(s.symbolic_length().unwrap(), o("w"));
        let p = PwoExpr::product(PwoExpr::chain(o("w+1")), PwoExpr::chain(o("w+1")));
        assert_eq!(p.symbolic_length().unwrap(), o("2*w"));
        let bad = PwoExpr::sum(PwoExpr::chain(o("w")), PwoExpr::chain(o("1")));
        assert_eq!(bad.symbolic_length(), Err(Error::SumWithoutMaximum));
        let empty = PwoExpr::product(PwoExpr::chain(o("w")), PwoExpr::chain(Ordinal::zero()));
        assert_eq!(empty.symbolic_length().unwrap(), Ordinal::zero());
    }

    #[test]
    fn has_max_examples() {
        assert!(!PwoExpr::chain(o("w")).has_max());
        assert!(PwoExpr::chain(o("5")).has_max());
        assert!(!PwoExpr::product(PwoExpr::chain(o("3")), PwoExpr::chain(o("w"))).has_max());
    }

    #[test]
    fn flatten_examples() {
        let s = PwoExpr::sum(PwoExpr::chain(o("2")), PwoExpr::chain(o("2")));
        assert_eq!(s.flatten(DEFAULT_FLATTEN_BOUND).unwrap(), FinitePoset::chain(4));
        let p = PwoExpr::product(PwoExpr::chain(o("3")), PwoExpr::chain(o("2")));
        let g = p.flatten(DEFAULT_FLATTEN_BOUND).unwrap();
        assert_eq!(g, FinitePoset::chain(3).product(&FinitePoset::chain(2)));
        assert!(matches!(PwoExpr::chain(o("w")).flatten(DEFAULT_FLATTEN_BOUND), Err(Error::InfiniteChain(_))));
        assert!(matches!(PwoExpr::chain(o("50")).flatten(10), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn json_forms() {
        let e: PwoExpr = serde_json::from_str(
            r#"{"product": [{"chain": "w+1"}, {"sum": [{"explicit": {"n": 2, "le": [[0, 1]]}}, {"chain": "3"}]}]}"#,
        )
        .unwrap();
        assert_eq!(e.symbolic_length().unwrap(), o("w+4"));
        let back: PwoExpr = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<FinitePoset>(r#"{"n": 2, "le": [[0,1],[1,0]]}"#).is_err());
    }

    fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                // Only pairs i < j keep the relation acyclic.
                let pairs: Vec<_> =
                    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| bits[i * n + j]).collect();
                FinitePoset::new(n, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_matches_chain_enumeration(p in arb_poset(7)) {
            prop_assert_eq!(p.rank_all().rank, brute_ranks(&p));
            prop_assert_eq!(p.rank_all().length, Ordinal::from(p.max_chain_length().unwrap() as u64));
        }

        #[test]
        fn product_ranks_add(p in arb_poset(5), q in arb_poset(5)) {
            let (rp, rq, rpq) = (p.rank_all(), q.rank_all(), p.product(&q).rank_all());
            for a in 0..p.len() {
                for b in 0..q.len() {
                    prop_assert_eq!(rpq.rank[a * q.len() + b], rp.rank[a] + rq.rank[b]);
                }
            }
        }
    }
}
