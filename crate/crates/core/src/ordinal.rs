//! Ordinals below `ω^ω` in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `a_d ω^d + … + a_1 ω + a_0` stored as its
//! nonzero terms in strictly decreasing exponent order. Coefficients are
//! arbitrary precision.
//!
//! Besides the ordinary (non-commutative) ordinal sum this module provides the
//! natural sum `⊕` in three forms: the coefficient-wise closed form
//! ([`Ordinal::shuffle_sum`]), the transfinite recursion
//! ([`shuffle_sum_recursive`]) and the maximum over interleavings of
//! principal terms ([`shuffle_sum_oracle`]).

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default total valence accepted by [`shuffle_sum_oracle`].
pub const DEFAULT_ORACLE_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exp: u32,
    pub coeff: BigUint,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(1u32)
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        Self::monomial(n, 0)
    }

    pub fn omega_pow(exp: u32) -> Self {
        Self::monomial(1u32, exp)
    }

    /// `c·ω^exp`; zero when `c` is zero.
    pub fn monomial(c: impl Into<BigUint>, exp: u32) -> Self {
        let coeff = c.into();
        if coeff.is_zero() {
            Self::zero()
        } else {
            Ordinal { terms: vec![Term { exp, coeff }] }
        }
    }

    /// Builds the ordinal `Σ c·ω^e` from arbitrary `(e, c)` pairs, merging
    /// equal exponents and dropping zero coefficients.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigUint>,
    {
        let mut v: Vec<Term> =
            terms.into_iter().map(|(exp, c)| Term { exp, coeff: c.into() }).filter(|t| !t.coeff.is_zero()).collect();
        v.sort_by_key(|t| std::cmp::Reverse(t.exp));
        let mut out: Vec<Term> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.exp == t.exp => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        Ordinal { terms: out }
    }

    /// Coefficients indexed by exponent, `coeffs[i]` multiplying `ω^i`.
    pub fn from_coefficients(coeffs: &[u64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as u32, c)))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.degree() <= 0
    }

    /// Nonzero with a nonzero constant term.
    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp == 0)
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// A single Cantor-normal-form term `a·ω^d` (zero is not a monomial).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Largest exponent; `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.terms.first().map_or(-1, |t| t.exp as i64)
    }

    /// Smallest exponent; `-1` for zero.
    pub fn order(&self) -> i64 {
        self.terms.last().map_or(-1, |t| t.exp as i64)
    }

    /// Sum of all coefficients.
    pub fn valence(&self) -> BigUint {
        self.terms.iter().map(|t| &t.coeff).sum()
    }

    /// `(degree, order, valence)`.
    pub fn profile(&self) -> (i64, i64, BigUint) {
        (self.degree(), self.order(), self.valence())
    }

    pub fn coefficient(&self, exp: u32) -> BigUint {
        self.terms.iter().find(|t| t.exp == exp).map_or_else(BigUint::zero, |t| t.coeff.clone())
    }

    /// The value as a natural number, if finite.
    pub fn to_natural(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exp == 0 => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// Ordinary ordinal sum `self + other`.
    pub fn ord_sum(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self.terms.iter().take_while(|t| t.exp > lead.exp).cloned().collect();
        let carry = self.terms.iter().find(|t| t.exp == lead.exp).map(|t| &t.coeff);
        for (k, t) in other.terms.iter().enumerate() {
            let mut t = t.clone();
            if k == 0 {
                if let Some(c) = carry {
                    t.coeff += c;
                }
            }
            terms.push(t);
        }
        Ordinal { terms }
    }

    /// Natural (Hessenberg) sum: coefficient-wise addition of the normal forms.
    pub fn shuffle_sum(&self, other: &Ordinal) -> Ordinal {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let take = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.exp.cmp(&y.exp),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match take {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(Term { exp: a[i].exp, coeff: &a[i].coeff + &b[j].coeff });
                    i += 1;
                    j += 1;
                }
            }
        }
        Ordinal { terms: out }
    }

    /// Order type of the lexicographic order on `self × other`, i.e. `self`
    /// copies of `other` (the conventional product `other·self`).
    pub fn paper_product(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.terms.first() else {
            return Ordinal::zero();
        };
        let mut acc = Ordinal::zero();
        for t in &self.terms {
            let piece = if t.exp == 0 {
                let mut terms = other.terms.clone();
                terms[0].coeff = &lead.coeff * &t.coeff;
                Ordinal { terms }
            } else {
                Ordinal::monomial(t.coeff.clone(), lead.exp + t.exp)
            };
            acc = acc.ord_sum(&piece);
        }
        acc
    }

    /// Splits into the part with exponents `>= e` and the part below `e`.
    pub fn split(&self, e: u32) -> (Ordinal, Ordinal) {
        let cut = self.terms.iter().position(|t| t.exp < e).unwrap_or(self.terms.len());
        (Ordinal { terms: self.terms[..cut].to_vec() }, Ordinal { terms: self.terms[cut..].to_vec() })
    }

    /// Terms with exponent `>= e`.
    pub fn upper_part(&self, e: u32) -> Ordinal {
        self.split(e).0
    }

    /// Compares the parts of `self` and `other` with exponents `>= e`.
    pub fn cmp_at_level(&self, other: &Ordinal, e: u32) -> Ordering {
        self.upper_part(e).cmp(&other.upper_part(e))
    }

    pub fn predecessor(&self) -> Result<Ordinal> {
        if !self.is_successor() {
            return Err(Error::NoPredecessor(self.to_string()));
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor is nonzero");
        last.coeff -= 1u32;
        if last.coeff.is_zero() {
            terms.pop();
        }
        Ok(Ordinal { terms })
    }

    pub fn successor(&self) -> Ordinal {
        self.ord_sum(&Ordinal::one())
    }

    /// Writes a nonzero ordinal as `rest + ω^o` with `o` its order.
    fn split_lowest(&self) -> (Ordinal, u32) {
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("nonzero ordinal");
        let o = last.exp;
        last.coeff -= 1u32;
        if last.coeff.is_zero() {
            terms.pop();
        }
        (Ordinal { terms }, o)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = a.exp.cmp(&b.exp).then_with(|| a.coeff.cmp(&b.coeff));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

/// The natural sum computed by the transfinite recursion: successor steps
/// peel off `1`, and when both arguments are limits the one of smaller order
/// `o` is written as `α′ + ω^o` and the result is `(α′ ⊕ β) + ω^o`.
pub fn shuffle_sum_recursive(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let (mut a, mut b) = (a.clone(), b.clone());
    // Suffixes to be added (ordinal sum) once the recursion bottoms out,
    // innermost last.
    let mut suffixes: Vec<Ordinal> = Vec::new();
    let base = loop {
        if a.is_zero() {
            break b;
        }
        if b.is_zero() {
            break a;
        }
        if a.is_successor() {
            a = a.predecessor().expect("successor");
            suffixes.push(Ordinal::one());
        } else if b.is_successor() {
            b = b.predecessor().expect("successor");
            suffixes.push(Ordinal::one());
        } else if a.order() <= b.order() {
            let (rest, o) = a.split_lowest();
            a = rest;
            suffixes.push(Ordinal::omega_pow(o));
        } else {
            let (rest, o) = b.split_lowest();
            b = rest;
            suffixes.push(Ordinal::omega_pow(o));
        }
    };
    suffixes.iter().rev().fold(base, |acc, s| acc.ord_sum(s))
}

/// Maximum ordinal sum over all interleavings of the principal terms of `a`
/// and `b`.
///
/// Each ordinal is expanded into `valence`-many terms `ω^ν` in descending
/// order. Every interleaving preserving both orders is summed left to right;
/// paths reaching the same position with the same partial sum are merged,
/// which leaves the set of reachable sums unchanged.
pub fn shuffle_sum_oracle(a: &Ordinal, b: &Ordinal, bound: usize) -> Result<Ordinal> {
    let total = a.valence() + b.valence();
    if total > BigUint::from(bound) {
        return Err(Error::BoundExceeded { needed: total.to_string(), bound });
    }
    let expand = |x: &Ordinal| -> Vec<u32> {
        x.terms.iter().flat_map(|t| std::iter::repeat_n(t.exp, t.coeff.to_usize().expect("bounded"))).collect()
    };
    let (sa, sb) = (expand(a), expand(b));
    let (m, n) = (sa.len(), sb.len());
    // Partial sums as coefficient vectors indexed by exponent: adding ω^e
    // clears every coefficient below e and bumps the one at e.
    let width = sa.iter().chain(&sb).max().map_or(0, |&e| e as usize + 1);
    let add = |s: &[u64], e: u32| -> Vec<u64> {
        let e = e as usize;
        let mut t = s.to_vec();
        t[..e].iter_mut().for_each(|c| *c = 0);
        t[e] += 1;
        t
    };
    // layer[i] holds the partial sums reachable after taking i terms of `a`
    // and (k - i) terms of `b`, for the current k.
    let mut layer: Vec<HashSet<Vec<u64>>> = vec![HashSet::new(); m + 1];
    layer[0].insert(vec![0; width]);
    for k in 0..m + n {
        let mut next: Vec<HashSet<Vec<u64>>> = vec![HashSet::new(); m + 1];
        for (i, sums) in layer.iter().enumerate().take(k + 1) {
            let j = k - i;
            for s in sums {
                if i < m {
                    next[i + 1].insert(add(s, sa[i]));
                }
                if j < n {
                    next[i].insert(add(s, sb[j]));
                }
            }
        }
        layer = next;
    }
    Ok(layer[m].iter().map(|c| Ordinal::from_coefficients(c)).max().unwrap_or_default())
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            if t.exp == 0 {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            if !t.coeff.is_one() {
                write!(f, "{}*", t.coeff)?;
            }
            f.write_str("w")?;
            if t.exp > 1 {
                write!(f, "^{}", t.exp)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.char_indices().collect(), pos: 0, src }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |(i, _)| *i)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn nat(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn omega(&mut self) -> Result<u32> {
        match self.peek() {
            Some('w') | Some('ω') => self.pos += 1,
            _ => return self.err("expected `w`"),
        }
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let at = self.offset();
        let e = self.nat()?;
        e.to_u32().ok_or(Error::Parse { pos: at, msg: "exponent too large".into() })
    }

    fn term(&mut self) -> Result<(u32, BigUint)> {
        match self.peek() {
            Some('w') | Some('ω') => Ok((self.omega()?, BigUint::one())),
            Some(c) if c.is_ascii_digit() => {
                let at = self.offset();
                let n = self.nat()?;
                if self.peek() != Some('*') {
                    return Ok((0, n));
                }
                self.pos += 1;
                if n.is_zero() {
                    return Err(Error::Parse { pos: at, msg: "coefficient 0".into() });
                }
                Ok((self.omega()?, n))
            }
            Some(_) => self.err("expected a term"),
            None => self.err("unexpected end of input"),
        }
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut terms = vec![self.term()?];
        while let Some(c) = self.peek() {
            if c != '+' {
                return self.err(format!("unexpected `{c}`"));
            }
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(Ordinal::from_terms(terms))
    }
}

/// Parses `term ("+" term)*` with `term := [nat "*"] "w" ["^" nat] | nat`.
/// Terms may come in any order; equal exponents are merged.
pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    Parser::new(text).expr()
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ordinal(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
