use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{RingContext, RingElement};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`RingContext`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    pub ctx: RingContext,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn new(ctx: RingContext, rows: usize, cols: usize, entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        for e in &entries {
            ctx.check(e)?;
        }
        Ok(RingMatrix { ctx, rows, cols, entries })
    }

    pub fn from_fn(ctx: RingContext, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        RingMatrix { ctx, rows, cols, entries }
    }

    pub fn from_i64(ctx: RingContext, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Self::from_fn(ctx, rows, cols, |i, j| ctx.from_i64(values[i * cols + j]))
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(ctx: RingContext, rows: usize, columns: &[Vec<RingElement>]) -> Self {
        Self::from_fn(ctx, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn zeros(ctx: RingContext, rows: usize, cols: usize) -> Self {
        Self::from_fn(ctx, rows, cols, |_, _| ctx.zero())
    }

    pub fn identity(ctx: RingContext, n: usize) -> Self {
        Self::from_fn(ctx, n, n, |i, j| if i == j { ctx.one() } else { ctx.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<RingElement>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<RingElement> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ctx.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = self.ctx;
        Ok(Self::from_fn(ctx, self.rows, other.cols, |i, j| {
            let mut acc = ctx.zero();
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !ctx.is_zero(a) && !ctx.is_zero(b) {
                    acc = ctx.add(&acc, &ctx.mul(a, b));
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[RingElement]) -> Result<Vec<RingElement>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for a {}x{} matrix", v.len(), self.rows, self.cols)));
        }
        let ctx = self.ctx;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = ctx.zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !ctx.is_zero(a) && !ctx.is_zero(x) {
                        acc = ctx.add(&acc, &ctx.mul(a, x));
                    }
                }
                acc
            })
            .collect())
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!("cannot place {} rows beside {} rows", self.rows, other.rows)));
        }
        let c = self.cols;
        Ok(Self::from_fn(self.ctx, self.rows, c + other.cols, |i, j| {
            if j < c {
                self.get(i, j).clone()
            } else {
                other.get(i, j - c).clone()
            }
        }))
    }

    /// `self` stacked above `other`.
    pub fn vcat(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!("cannot stack {} columns on {} columns", self.cols, other.cols)));
        }
        let r = self.rows;
        Ok(Self::from_fn(self.ctx, r + other.rows, self.cols, |i, j| {
            if i < r {
                self.get(i, j).clone()
            } else {
                other.get(i - r, j).clone()
            }
        }))
    }

    /// Block diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &RingMatrix) -> RingMatrix {
        let ctx = self.ctx;
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(ctx, r + other.rows, c + other.cols, |i, j| match (i < r, j < c) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - r, j - c).clone(),
            _ => ctx.zero(),
        })
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> RingMatrix {
        let start = rows.start;
        Self::from_fn(self.ctx, rows.len(), self.cols, |i, j| self.get(start + i, j).clone())
    }

    pub fn select_cols(&self, cols: std::ops::Range<usize>) -> RingMatrix {
        let start = cols.start;
        Self::from_fn(self.ctx, self.rows, cols.len(), |i, j| self.get(i, start + j).clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ctx,
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(|e| self.ctx.element_to_json(e)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<RingMatrix> {
        let ctx: RingContext = serde_json::from_value(v.get("ring").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Invalid(format!("ring: {e}")))?;
        let ctx = ctx.validate()?;
        let dim = |key: &str| -> Result<usize> {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|n| n as usize)
                .ok_or_else(|| Error::Invalid(format!("missing or invalid \"{key}\"")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("missing \"entries\" array".into()))?
            .iter()
            .map(|e| ctx.element_from_json(e))
            .collect::<Result<Vec<_>>>()?;
        RingMatrix::new(ctx, rows, cols, entries)
    }
}

impl Serialize for RingMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        RingMatrix::from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let ctx = RingContext::Polynomial(3);
        let m = RingMatrix::from_fn(ctx, 2, 2, |i, j| ctx.polynomial(&[i as i64, j as i64, 1]).unwrap());
        let back: RingMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        let bad = json!({"ring": "Z", "rows": 2, "cols": 2, "entries": [1, 2, 3]});
        assert!(matches!(RingMatrix::from_json(&bad), Err(Error::Shape(_))));
        let bad = json!({"ring": {"Fpx": 4}, "rows": 0, "cols": 0, "entries": []});
        assert_eq!(RingMatrix::from_json(&bad), Err(Error::NotPrime(4)));
    }

    #[test]
    fn products() {
        let z = RingContext::Integers;
        let a = RingMatrix::from_i64(z, 2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = RingMatrix::from_i64(z, 3, 1, &[1, 0, -1]);
        assert_eq!(a.mul(&b).unwrap(), RingMatrix::from_i64(z, 2, 1, &[-2, -2]));
        assert!(b.mul(&a).is_err());
        assert_eq!(a.mul_vec(&b.column(0)).unwrap(), vec![z.from_i64(-2), z.from_i64(-2)]);
    }
}
