//! Exact arithmetic over three Euclidean domains: the integers `Z`, the
//! integers localized at a prime `Z_(p)`, and polynomials `F_p[x]`.
//!
//! Elements carry no context of their own; every operation goes through a
//! [`RingContext`], which is a small `Copy` value.

mod matrix;
pub mod poly;
mod snf;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use matrix::RingMatrix;
pub use snf::{column_span_basis, kernel_basis, membership_solve, smith_normal_form, ColumnSpan, SmithDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingContext {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zloc")]
    Localized(u64),
    #[serde(rename = "Fpx")]
    Polynomial(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElement {
    Int(BigInt),
    Frac(BigRational),
    /// Little-endian coefficients in `0..p`, no trailing zeros.
    Poly(Vec<u64>),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn valuation(n: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

impl RingContext {
    /// Checks that `p` is prime for the localized and polynomial contexts.
    pub fn validate(self) -> Result<Self> {
        match self {
            RingContext::Integers => Ok(self),
            RingContext::Localized(p) | RingContext::Polynomial(p) => {
                if is_prime(p) && p < (1 << 31) {
                    Ok(self)
                } else {
                    Err(Error::NotPrime(p))
                }
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            RingContext::Integers => "Z".into(),
            RingContext::Localized(p) => format!("Z_({p})"),
            RingContext::Polynomial(p) => format!("F_{p}[x]"),
        }
    }

    pub fn zero(self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> RingElement {
        match self {
            RingContext::Integers => RingElement::Int(n.into()),
            RingContext::Localized(_) => RingElement::Frac(BigRational::from_integer(n.into())),
            RingContext::Polynomial(p) => RingElement::Poly(poly::constant(n, p)),
        }
    }

    /// The indeterminate `x` of `F_p[x]`; the prime `p` in the other contexts.
    pub fn generator(self) -> RingElement {
        match self {
            RingContext::Integers => RingElement::Int(2.into()),
            RingContext::Localized(p) => self.from_i64(p as i64),
            RingContext::Polynomial(_) => RingElement::Poly(poly::x()),
        }
    }

    /// `num / den` in `Z_(p)`; fails if `p` divides the reduced denominator.
    pub fn fraction(self, num: BigInt, den: BigInt) -> Result<RingElement> {
        let RingContext::Localized(p) = self else {
            return Err(Error::InvalidElement(format!("fraction in {}", self.name())));
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = BigRational::new(num, den);
        if valuation(q.denom(), p) > 0 {
            return Err(Error::InvalidElement(format!("{q} is not in Z_({p})")));
        }
        Ok(RingElement::Frac(q))
    }

    /// Polynomial from little-endian coefficients, reduced modulo `p`.
    pub fn polynomial(self, coeffs: &[i64]) -> Result<RingElement> {
        let RingContext::Polynomial(p) = self else {
            return Err(Error::InvalidElement(format!("polynomial in {}", self.name())));
        };
        Ok(RingElement::Poly(poly::trim(coeffs.iter().map(|c| c.rem_euclid(p as i64) as u64).collect())))
    }

    /// Checks that `a` is a canonical element of this context.
    pub fn check(self, a: &RingElement) -> Result<()> {
        let ok = match (self, a) {
            (RingContext::Integers, RingElement::Int(_)) => true,
            (RingContext::Localized(p), RingElement::Frac(q)) => valuation(q.denom(), p) == 0,
            (RingContext::Polynomial(p), RingElement::Poly(c)) => c.last() != Some(&0) && c.iter().all(|&x| x < p),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{a} in {}", self.name())))
        }
    }

    pub fn is_zero(self, a: &RingElement) -> bool {
        match a {
            RingElement::Int(n) => n.is_zero(),
            RingElement::Frac(q) => q.is_zero(),
            RingElement::Poly(c) => c.is_empty(),
        }
    }

    pub fn add(self, a: &RingElement, b: &RingElement) -> RingElement {
        use RingElement::*;
        match (a, b) {
            (Int(x), Int(y)) => Int(x + y),
            (Frac(x), Frac(y)) => Frac(x + y),
            (Poly(x), Poly(y)) => Poly(poly::add(x, y, self.prime())),
            _ => mismatch(a, b),
        }
    }

    pub fn neg(self, a: &RingElement) -> RingElement {
        use RingElement::*;
        match a {
            Int(x) => Int(-x),
            Frac(x) => Frac(-x),
            Poly(x) => Poly(poly::neg(x, self.prime())),
        }
    }

    pub fn sub(self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &RingElement, b: &RingElement) -> RingElement {
        use RingElement::*;
        match (a, b) {
            (Int(x), Int(y)) => Int(x * y),
            (Frac(x), Frac(y)) => Frac(x * y),
            (Poly(x), Poly(y)) => Poly(poly::mul(x, y, self.prime())),
            _ => mismatch(a, b),
        }
    }

    fn prime(self) -> u64 {
        match self {
            RingContext::Integers => 0,
            RingContext::Localized(p) | RingContext::Polynomial(p) => p,
        }
    }

    /// Euclidean size: `|a|` on `Z`, the `p`-adic valuation on `Z_(p)`, the
    /// degree on `F_p[x]`. Only meaningful for nonzero `a`.
    pub fn norm(self, a: &RingElement) -> BigInt {
        match a {
            RingElement::Int(n) => n.abs(),
            RingElement::Frac(q) => valuation(q.numer(), self.prime()).into(),
            RingElement::Poly(c) => poly::degree(c).into(),
        }
    }

    /// `a = q·b + r` with `r = 0` or `norm(r) < norm(b)`.
    pub fn divmod(self, a: &RingElement, b: &RingElement) -> Result<(RingElement, RingElement)> {
        use RingElement::*;
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (a, b) {
            (Int(x), Int(y)) => {
                let (mut q, mut r) = x.div_mod_floor(y);
                if r.is_negative() {
                    r -= y;
                    q += 1;
                }
                (Int(q), Int(r))
            }
            (Frac(x), Frac(y)) => {
                let p = self.prime();
                if x.is_zero() || valuation(x.numer(), p) >= valuation(y.numer(), p) {
                    (Frac(x / y), self.zero())
                } else {
                    (self.zero(), a.clone())
                }
            }
            (Poly(x), Poly(y)) => {
                let (q, r) = poly::divrem(x, y, self.prime());
                (Poly(q), Poly(r))
            }
            _ => mismatch(a, b),
        })
    }

    pub fn is_unit(self, a: &RingElement) -> bool {
        match a {
            RingElement::Int(n) => n.abs().is_one(),
            RingElement::Frac(q) => !q.is_zero() && valuation(q.numer(), self.prime()) == 0,
            RingElement::Poly(c) => c.len() == 1,
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(self, u: &RingElement) -> RingElement {
        debug_assert!(self.is_unit(u));
        match u {
            RingElement::Int(n) => RingElement::Int(n.clone()),
            RingElement::Frac(q) => RingElement::Frac(q.recip()),
            RingElement::Poly(c) => RingElement::Poly(vec![poly::inv_mod(c[0], self.prime())]),
        }
    }

    /// Writes `a = unit · associate` with the associate normalized: a
    /// nonnegative integer, a power of `p`, or a monic polynomial.
    pub fn normalize(self, a: &RingElement) -> (RingElement, RingElement) {
        match a {
            RingElement::Int(n) => {
                let unit = if n.sign() == Sign::Minus { -1 } else { 1 };
                (self.from_i64(unit), RingElement::Int(n.abs()))
            }
            RingElement::Frac(q) => {
                if q.is_zero() {
                    return (self.one(), a.clone());
                }
                let v = valuation(q.numer(), self.prime());
                let pv = BigRational::from_integer(BigInt::from(self.prime()).pow(v as u32));
                (RingElement::Frac(q / &pv), RingElement::Frac(pv))
            }
            RingElement::Poly(c) => {
                if c.is_empty() {
                    return (self.one(), a.clone());
                }
                let (lead, m) = poly::monic(c, self.prime());
                (RingElement::Poly(vec![lead]), RingElement::Poly(m))
            }
        }
    }

    pub fn associate(self, a: &RingElement) -> RingElement {
        self.normalize(a).1
    }

    /// `a / b` when `b` divides `a`.
    pub fn exact_div(self, a: &RingElement, b: &RingElement) -> Option<RingElement> {
        if self.is_zero(b) {
            return self.is_zero(a).then(|| self.zero());
        }
        let (q, r) = self.divmod(a, b).ok()?;
        self.is_zero(&r).then_some(q)
    }

    pub fn divides(self, b: &RingElement, a: &RingElement) -> bool {
        self.exact_div(a, b).is_some()
    }

    /// Normalized greatest common divisor.
    pub fn gcd(self, a: &RingElement, b: &RingElement) -> RingElement {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !self.is_zero(&b) {
            let r = self.divmod(&a, &b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        self.associate(&a)
    }

    /// Number of irreducible factors of `a`, with multiplicity.
    pub fn factor_count(self, a: &RingElement) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::InvalidElement("factor count of zero".into()));
        }
        Ok(match a {
            RingElement::Int(n) => omega_integer(n.abs()),
            RingElement::Frac(q) => valuation(q.numer(), self.prime()),
            RingElement::Poly(c) => poly::factor_count(c, self.prime()),
        })
    }

    /// Canonical representative of `a` modulo a nonzero `d`.
    pub fn reduce(self, a: &RingElement, d: &RingElement) -> RingElement {
        match (a, d) {
            (RingElement::Frac(q), RingElement::Frac(m)) => {
                // Z_(p)/(p^v) ≅ Z/p^v: send num/den to num·den⁻¹ mod p^v.
                let modulus = self.associate(&RingElement::Frac(m.clone()));
                let RingElement::Frac(modulus) = modulus else { unreachable!() };
                let modulus = modulus.to_integer();
                let den_inv = q.denom().extended_gcd(&modulus).x;
                let r = (q.numer() * den_inv).mod_floor(&modulus);
                RingElement::Frac(BigRational::from_integer(r))
            }
            _ => self.divmod(a, d).expect("nonzero modulus").1,
        }
    }

    /// Canonical representatives of `R/(d)` for a nonzero non-unit `d`, or
    /// `None` when there are more than `bound` of them.
    pub fn residues(self, d: &RingElement, bound: usize) -> Option<Vec<RingElement>> {
        let size = self.quotient_size(d)?;
        if size > bound {
            return None;
        }
        Some(match self {
            RingContext::Integers | RingContext::Localized(_) => (0..size as i64).map(|k| self.from_i64(k)).collect(),
            RingContext::Polynomial(p) => {
                let deg = size.ilog(p as usize) as usize;
                (0..size)
                    .map(|mut k| {
                        let mut c = Vec::with_capacity(deg);
                        for _ in 0..deg {
                            c.push((k % p as usize) as u64);
                            k /= p as usize;
                        }
                        RingElement::Poly(poly::trim(c))
                    })
                    .collect()
            }
        })
    }

    /// Cardinality of `R/(d)` for nonzero `d`, if it fits in `usize`.
    pub fn quotient_size(self, d: &RingElement) -> Option<usize> {
        match d {
            RingElement::Int(n) => n.abs().to_usize(),
            RingElement::Frac(q) => {
                let v = valuation(q.numer(), self.prime());
                (self.prime() as usize).checked_pow(v as u32)
            }
            RingElement::Poly(c) => (self.prime() as usize).checked_pow(poly::degree(c) as u32),
        }
    }

    /// Parses an element from JSON: integers as numbers or strings,
    /// localized integers as `[num, den]` (or a plain integer), polynomials as
    /// little-endian coefficient arrays (or a plain constant).
    pub fn element_from_json(self, v: &serde_json::Value) -> Result<RingElement> {
        use serde_json::Value;
        let int = |v: &Value| -> Result<BigInt> {
            match v {
                Value::Number(n) => {
                    n.as_i64().map(BigInt::from).ok_or_else(|| Error::InvalidElement(format!("non-integer {n}")))
                }
                Value::String(s) => s.trim().parse().map_err(|_| Error::InvalidElement(format!("bad integer {s:?}"))),
                other => Err(Error::InvalidElement(format!("expected integer, got {other}"))),
            }
        };
        match self {
            RingContext::Integers => Ok(RingElement::Int(int(v)?)),
            RingContext::Localized(_) => match v {
                Value::Array(pair) if pair.len() == 2 => self.fraction(int(&pair[0])?, int(&pair[1])?),
                _ => self.fraction(int(v)?, BigInt::one()),
            },
            RingContext::Polynomial(p) => {
                let coeffs: Vec<BigInt> = match v {
                    Value::Array(cs) => cs.iter().map(int).collect::<Result<_>>()?,
                    _ => vec![int(v)?],
                };
                let pb = BigInt::from(p);
                Ok(RingElement::Poly(poly::trim(coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())))
            }
        }
    }

    pub fn element_to_json(self, a: &RingElement) -> serde_json::Value {
        use serde_json::Value;
        let int = |n: &BigInt| match n.to_i64() {
            Some(k) => Value::from(k),
            None => Value::from(n.to_string()),
        };
        match a {
            RingElement::Int(n) => int(n),
            RingElement::Frac(q) => Value::Array(vec![int(q.numer()), int(q.denom())]),
            RingElement::Poly(c) => Value::Array(c.iter().map(|&x| Value::from(x)).collect()),
        }
    }
}

fn mismatch(a: &RingElement, b: &RingElement) -> ! {
    panic!("ring element kinds differ: {a:?} and {b:?}")
}

/// Ω(n) for n ≥ 1 by trial division.
fn omega_integer(mut n: BigInt) -> u64 {
    if let Some(mut m) = n.to_u64() {
        let mut count = 0;
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            while m % d == 0 {
                m /= d;
                count += 1;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        return count + u64::from(m > 1);
    }
    let mut count = 0;
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        while (&n % &d).is_zero() {
            n /= &d;
            count += 1;
        }
        d += 1;
    }
    count + u64::from(n > BigInt::one())
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Int(n) => write!(f, "{n}"),
            RingElement::Frac(q) => write!(f, "{q}"),
            RingElement::Poly(c) if c.is_empty() => f.write_str("0"),
            RingElement::Poly(c) => {
                let mut first = true;
                for (i, &k) in c.iter().enumerate().rev() {
                    if k == 0 {
                        continue;
                    }
                    if !first {
                        f.write_str("+")?;
                    }
                    first = false;
                    match (i, k) {
                        (0, _) => write!(f, "{k}")?,
                        (_, 1) => f.write_str("x")?,
                        _ => write!(f, "{k}*x")?,
                    }
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
