//! Reading the JSON file formats used by the command line.
//!
//! A map file is `{"source": M, "target": N, "matrix": A}` where `M` and `N`
//! are either inline module objects or paths to module files, resolved
//! relative to the map file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::euclid::RingMatrix;
use crate::homology::ModuleComplex;
use crate::module::{FgModule, ModuleMap};
use crate::pwo::{FinitePoset, PwoExpr};

pub fn read_json(path: &Path) -> Result<Value> {
    let io = |msg: String| Error::Io { path: path.display().to_string(), msg };
    let text = fs::read_to_string(path).map_err(|e| io(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| io(e.to_string()))
}

fn typed<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Invalid(e.to_string()))
}

pub fn read_module(path: &Path) -> Result<FgModule> {
    FgModule::from_json(&read_json(path)?)
}

pub fn read_poset(path: &Path) -> Result<FinitePoset> {
    typed(read_json(path)?)
}

pub fn read_pwo_expr(path: &Path) -> Result<PwoExpr> {
    typed(read_json(path)?)
}

pub fn read_matrix(path: &Path) -> Result<RingMatrix> {
    RingMatrix::from_json(&read_json(path)?)
}

pub fn read_complex(path: &Path) -> Result<ModuleComplex> {
    ModuleComplex::from_json(&read_json(path)?)
}

pub fn read_map(path: &Path) -> Result<ModuleMap> {
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    map_from_json(&read_json(path)?, &base)
}

/// Parses a map object, resolving module paths against `base`.
pub fn map_from_json(v: &Value, base: &Path) -> Result<ModuleMap> {
    let module = |key: &str| -> Result<FgModule> {
        match v.get(key) {
            Some(Value::String(p)) => {
                let p = PathBuf::from(p);
                read_module(&if p.is_absolute() { p } else { base.join(p) })
            }
            Some(m @ Value::Object(_)) => FgModule::from_json(m),
            _ => Err(Error::Invalid(format!("map needs \"{key}\" as a module or a path"))),
        }
    };
    let matrix = RingMatrix::from_json(v.get("matrix").unwrap_or(&Value::Null))?;
    ModuleMap::new(module("source")?, module("target")?, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn inline_map() {
        let z = json!({"ring": "Z", "generators": 1});
        let z2 = json!({"ring": "Z", "generators": 1, "relations": [[2]]});
        let v = json!({"source": z, "target": z2, "matrix": {"ring": "Z", "rows": 1, "cols": 1, "entries": [1]}});
        let m = map_from_json(&v, Path::new(".")).unwrap();
        assert!(m.is_surjective());
        assert!(!m.is_injective());
    }

    #[test]
    fn pwo_expr_format() {
        let v = json!({"product": [{"chain": "w+1"}, {"chain": "w+1"}]});
        let e: PwoExpr = typed(v).unwrap();
        assert_eq!(e.symbolic_length().unwrap().to_string(), "2*w");
        let p: FinitePoset = typed(json!({"n": 4, "le": [[0, 1], [0, 2], [1, 3], [2, 3]]})).unwrap();
        assert_eq!(p.rank_all().length.to_string(), "2");
    }

    #[test]
    fn missing_file() {
        assert!(matches!(read_module(Path::new("/nonexistent/m.json")), Err(Error::Io { .. })));
    }
}
