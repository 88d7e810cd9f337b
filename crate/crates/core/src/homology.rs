//! Finite chain complexes `0 → M_t → … → M_1 → M_0 → 0` of presented
//! modules, their lower and upper lengths, homology, and the length
//! criterion for acyclicity.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::euclid::{RingContext, RingMatrix};
use crate::module::{subquotient, FgModule, ModuleMap};
use crate::ordinal::Ordinal;

/// Stored in ascending order: `maps[i - 1]` is `d_i: M_i → M_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleComplex {
    modules: Vec<FgModule>,
    maps: Vec<ModuleMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub level: i64,
    pub lowlen: Ordinal,
    pub hilen: Ordinal,
    pub verdict: String,
    /// `dim H_i` for `i = t, …, 0`.
    pub homology_dims: Vec<i64>,
    /// `dim H_i ≤ e` for every `i < t`.
    pub hypothesis_holds: bool,
    /// `hilen ⪯ lowlen` compared on exponents `≥ e + 1`.
    pub condition_holds: bool,
    /// The same comparison on exponents `≥ e`; absent for `e = -1`.
    pub condition_at_stated_level: Option<bool>,
    /// `dim H_t ≤ e`.
    pub conclusion_holds: bool,
    /// False only if hypothesis and condition hold but the conclusion fails.
    pub consistent: bool,
}

impl ModuleComplex {
    /// `modules` lists `M_t, …, M_0` and `maps` lists `d_t, …, d_1` as matrices.
    /// Each map is checked to be well defined; composition is not checked
    /// (see [`ModuleComplex::validate`]).
    pub fn new(modules: Vec<FgModule>, maps: Vec<RingMatrix>) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::Invalid("a complex needs at least one module".into()));
        }
        if maps.len() + 1 != modules.len() {
            return Err(Error::Shape(format!(
                "{} modules need {} maps, got {}",
                modules.len(),
                modules.len() - 1,
                maps.len()
            )));
        }
        let ctx = modules[0].ctx;
        if modules.iter().any(|m| m.ctx != ctx) || maps.iter().any(|m| m.ctx != ctx) {
            return Err(Error::Invalid("complex mixes rings".into()));
        }
        let mut modules = modules;
        let mut maps = maps;
        modules.reverse();
        maps.reverse();
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(k, m)| ModuleMap::new(modules[k + 1].clone(), modules[k].clone(), m))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleComplex { modules, maps })
    }

    /// Builds from maps already checked; `maps` lists `d_t, …, d_1`.
    pub fn from_maps(maps: Vec<ModuleMap>) -> Result<Self> {
        let mut maps = maps;
        maps.reverse();
        if maps.is_empty() {
            return Err(Error::Invalid("use ModuleComplex::single for one module".into()));
        }
        for k in 1..maps.len() {
            if maps[k].target != maps[k - 1].source {
                return Err(Error::Shape(format!("d_{} and d_{} do not share a module", k + 1, k)));
            }
        }
        let mut modules = vec![maps[0].target.clone()];
        modules.extend(maps.iter().map(|m| m.source.clone()));
        Ok(ModuleComplex { modules, maps })
    }

    pub fn single(m: FgModule) -> Self {
        ModuleComplex { modules: vec![m], maps: Vec::new() }
    }

    pub fn ctx(&self) -> RingContext {
        self.modules[0].ctx
    }

    /// The top index `t`.
    pub fn top(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, i: usize) -> &FgModule {
        &self.modules[i]
    }

    /// `d_i: M_i → M_{i-1}` for `1 ≤ i ≤ t`.
    pub fn differential(&self, i: usize) -> &ModuleMap {
        &self.maps[i - 1]
    }

    /// The same complex with `k` zero modules appended below `M_0`, so every
    /// index moves up by `k`.
    pub fn shifted(&self, k: usize) -> ModuleComplex {
        let zero = FgModule::zero(self.ctx());
        let mut modules = vec![zero.clone(); k];
        modules.extend(self.modules.iter().cloned());
        let mut maps: Vec<ModuleMap> = (1..=k).map(|i| ModuleMap::zero(&modules[i], &modules[i - 1])).collect();
        maps.extend(self.maps.iter().cloned());
        ModuleComplex { modules, maps }
    }

    /// Fails with the first index `i` where `d_{i-1} ∘ d_i ≠ 0`.
    pub fn validate(&self) -> Result<()> {
        for i in 2..=self.top() {
            let comp = self.differential(i - 1).compose(self.differential(i))?;
            if !comp.is_zero_map() {
                return Err(Error::NotAComplex { index: i });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// `ker d_i / im d_{i+1}`, with `d_0` and `d_{t+1}` the zero maps.
    pub fn homology_at(&self, i: usize) -> Result<FgModule> {
        let t = self.top();
        if i > t {
            return Err(Error::ComplexIndex { index: i, len: t + 1 });
        }
        let m = &self.modules[i];
        let cycles =
            if i == 0 { RingMatrix::identity(m.ctx, m.generators()) } else { self.differential(i).lifted_kernel() };
        let boundaries =
            if i == t { m.relations().clone() } else { m.relations().hcat(&self.differential(i + 1).matrix)? };
        subquotient(&cycles, &boundaries)
    }

    pub fn is_exact(&self) -> Result<bool> {
        for i in 0..=self.top() {
            if !self.homology_at(i)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ordinal sum, in ascending index order, of `len M_i` over `i ≡ t + 1 (mod 2)`.
    pub fn lower_length(&self) -> Ordinal {
        let t = self.top();
        (0..=t).filter(|i| i % 2 != t % 2).fold(Ordinal::zero(), |acc, i| acc.ord_sum(&self.modules[i].length()))
    }

    /// Shuffle sum of `len M_i` over `i ≡ t (mod 2)`.
    pub fn upper_length(&self) -> Ordinal {
        let t = self.top();
        (0..=t).filter(|i| i % 2 == t % 2).fold(Ordinal::zero(), |acc, i| acc.shuffle_sum(&self.modules[i].length()))
    }

    /// `Σ (-1)^i genlen M_i`.
    pub fn generic_euler_char(&self) -> BigInt {
        self.modules.iter().enumerate().fold(BigInt::default(), |acc, (i, m)| {
            let g = BigInt::from(m.generic_length());
            if i % 2 == 0 {
                acc + g
            } else {
                acc - g
            }
        })
    }

    /// Evaluates the length criterion at level `e ≥ -1`: if every `H_i` with
    /// `i < t` has dimension at most `e` and `hilen ⪯ lowlen` above level
    /// `e + 1`, then `H_t` has dimension at most `e` too.
    pub fn acyclicity_check(&self, e: i64) -> Result<AcyclicityReport> {
        if e < -1 {
            return Err(Error::Invalid(format!("level {e} is below -1")));
        }
        self.validate()?;
        let t = self.top();
        let dims = (0..=t).rev().map(|i| self.homology_at(i).map(|h| h.dimension())).collect::<Result<Vec<_>>>()?;
        let (lowlen, hilen) = (self.lower_length(), self.upper_length());
        let hypothesis_holds = dims[1..].iter().all(|&d| d <= e);
        let at = |level: i64| hilen.cmp_at_level(&lowlen, level as u32).is_le();
        let condition_holds = at(e + 1);
        let conclusion_holds = dims[0] <= e;
        let verdict = if !hypothesis_holds {
            "hypothesis fails"
        } else if !condition_holds {
            "condition fails"
        } else if conclusion_holds {
            "conclusion verified"
        } else {
            "counterexample"
        };
        Ok(AcyclicityReport {
            level: e,
            verdict: verdict.into(),
            homology_dims: dims,
            hypothesis_holds,
            condition_holds,
            condition_at_stated_level: (e >= 0).then(|| at(e)),
            conclusion_holds,
            consistent: !(hypothesis_holds && condition_holds && !conclusion_holds),
            lowlen,
            hilen,
        })
    }

    /// `{"modules": [M_t, …, M_0], "maps": [d_t, …, d_1]}`.
    pub fn to_json(&self) -> Value {
        let modules: Vec<Value> = self.modules.iter().rev().map(FgModule::to_json).collect();
        let maps: Vec<Value> = self.maps.iter().rev().map(|m| m.matrix.to_json()).collect();
        json!({"modules": modules, "maps": maps})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let list = |key: &str| {
            v.get(key).and_then(Value::as_array).ok_or_else(|| Error::Invalid(format!("missing list \"{key}\"")))
        };
        let modules = list("modules")?.iter().map(FgModule::from_json).collect::<Result<Vec<_>>>()?;
        let maps = match v.get("maps") {
            None if modules.len() == 1 => Vec::new(),
            _ => list("maps")?.iter().map(RingMatrix::from_json).collect::<Result<Vec<_>>>()?,
        };
        ModuleComplex::new(modules, maps)
    }
}

impl AcyclicityReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
