//! Finitely generated modules over a [`RingContext`], given by presentation
//! matrices: a module with `g` generators and relation matrix `F` (`g` rows)
//! is `R^g / (column span of F)`.
//!
//! Over the supported one-dimensional principal ideal domains a module is
//! `R^f ⊕ R/(d₁) ⊕ … ⊕ R/(d_k)`, and its length is `f·ω + Σ Ω(dᵢ)` where `Ω`
//! counts irreducible factors with multiplicity.

pub mod finite;
mod map;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::euclid::{smith_normal_form, RingContext, RingElement, RingMatrix};
use crate::ordinal::Ordinal;

pub use map::{subquotient, verify_semi_additivity, MapParts, ModuleMap, SemiAdditivityReport};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgModule {
    pub ctx: RingContext,
    gens: usize,
    relations: RingMatrix,
}

/// Free rank and the non-unit invariant factors `d₁ | d₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub ctx: RingContext,
    pub free_rank: usize,
    pub factors: Vec<RingElement>,
}

impl FgModule {
    pub fn new(gens: usize, relations: RingMatrix) -> Result<Self> {
        if relations.rows() != gens {
            return Err(Error::Shape(format!("relation matrix has {} rows for {gens} generators", relations.rows())));
        }
        Ok(FgModule { ctx: relations.ctx, gens, relations })
    }

    pub fn free(ctx: RingContext, rank: usize) -> Self {
        FgModule { ctx, gens: rank, relations: RingMatrix::zeros(ctx, rank, 0) }
    }

    pub fn zero(ctx: RingContext) -> Self {
        Self::free(ctx, 0)
    }

    /// `R/(d)`.
    pub fn cyclic(ctx: RingContext, d: RingElement) -> Self {
        FgModule { ctx, gens: 1, relations: RingMatrix::from_columns(ctx, 1, &[vec![d]]) }
    }

    /// `R^free ⊕ ⊕ R/(dᵢ)`, one generator per summand.
    pub fn from_parts(ctx: RingContext, free: usize, factors: &[RingElement]) -> Self {
        let g = free + factors.len();
        let relations =
            RingMatrix::from_fn(
                ctx,
                g,
                factors.len(),
                |i, j| {
                    if i == free + j {
                        factors[j].clone()
                    } else {
                        ctx.zero()
                    }
                },
            );
        FgModule { ctx, gens: g, relations }
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &RingMatrix {
        &self.relations
    }

    pub fn direct_sum(&self, other: &FgModule) -> FgModule {
        FgModule { ctx: self.ctx, gens: self.gens + other.gens, relations: self.relations.direct_sum(&other.relations) }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let ctx = self.ctx;
        let snf = smith_normal_form(&self.relations);
        CanonicalForm {
            ctx,
            free_rank: self.gens - snf.rank(),
            factors: snf.d.into_iter().filter(|d| !ctx.is_unit(d)).collect(),
        }
    }

    pub fn is_isomorphic(&self, other: &FgModule) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn length(&self) -> Ordinal {
        self.canonical_form().length()
    }

    pub fn dimension(&self) -> i64 {
        self.length().degree()
    }

    /// Coefficient of `ω^dim` in the length.
    pub fn generic_length(&self) -> BigUint {
        let len = self.length();
        match len.degree() {
            -1 => BigUint::default(),
            d => len.coefficient(d as u32),
        }
    }

    /// Zero, or of monomial length `a·ω^d`.
    pub fn is_unmixed(&self) -> bool {
        let len = self.length();
        len.is_zero() || len.is_monomial()
    }

    pub fn is_zero(&self) -> bool {
        self.length().is_zero()
    }

    pub fn is_finite_length(&self) -> bool {
        self.canonical_form().free_rank == 0
    }

    pub fn to_json(&self) -> Value {
        let ctx = self.ctx;
        let columns: Vec<Value> = self
            .relations
            .columns()
            .iter()
            .map(|c| Value::Array(c.iter().map(|e| ctx.element_to_json(e)).collect()))
            .collect();
        json!({"ring": ctx, "generators": self.gens, "relations": columns})
    }

    /// Reads `{"ring", "generators", "relations"}` where the relations are a
    /// list of relation columns (each of length `generators`) or a matrix
    /// object.
    pub fn from_json(v: &Value) -> Result<FgModule> {
        let ctx: RingContext = serde_json::from_value(v.get("ring").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Invalid(format!("ring: {e}")))?;
        let ctx = ctx.validate()?;
        let gens = v
            .get("generators")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Invalid("missing or invalid \"generators\"".into()))? as usize;
        let relations = match v.get("relations") {
            None | Some(Value::Null) => RingMatrix::zeros(ctx, gens, 0),
            Some(m @ Value::Object(_)) => {
                let m = RingMatrix::from_json(m)?;
                if m.ctx != ctx {
                    return Err(Error::Invalid("relation matrix over a different ring".into()));
                }
                m
            }
            Some(Value::Array(cols)) => {
                let mut columns = Vec::with_capacity(cols.len());
                for (k, c) in cols.iter().enumerate() {
                    let c = c.as_array().ok_or_else(|| Error::Invalid(format!("relation {k} is not a list")))?;
                    if c.len() != gens {
                        return Err(Error::Shape(format!(
                            "relation {k} has {} entries for {gens} generators",
                            c.len()
                        )));
                    }
                    columns.push(c.iter().map(|e| ctx.element_from_json(e)).collect::<Result<Vec<_>>>()?);
                }
                RingMatrix::from_columns(ctx, gens, &columns)
            }
            Some(other) => return Err(Error::Invalid(format!("bad relations: {other}"))),
        };
        FgModule::new(gens, relations)
    }
}

impl CanonicalForm {
    pub fn length(&self) -> Ordinal {
        let torsion: u64 =
            self.factors.iter().map(|d| self.ctx.factor_count(d).expect("nonzero invariant factor")).sum();
        Ordinal::from_terms([(1, self.free_rank as u64), (0, torsion)])
    }

    pub fn to_module(&self) -> FgModule {
        FgModule::from_parts(self.ctx, self.free_rank, &self.factors)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ctx.name();
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(ring.clone()),
            r => parts.push(format!("{ring}^{r}")),
        }
        parts.extend(self.factors.iter().map(|d| format!("{ring}/({d})")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

impl Serialize for FgModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FgModule::from_json(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
