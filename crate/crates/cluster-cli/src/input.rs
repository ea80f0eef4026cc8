//! Input sources: named types, JSON matrix files, rank-2 Cartan data.

use std::fs;

use cluster_core::mutation::{
    affine_a_cartan, bipartite_exchange, bipartite_sign, cartan_counterpart, coxeter_graph_sign, named_cartan,
    ExchangeMatrix, ExtendedMatrix,
};
use cluster_core::{Error, IntMatrix, Result};
use serde_json::Value;

use crate::Source;

/// Cartan matrix of a type name. Besides the named finite types this accepts
/// `rank2:b,c` and the affine cycles `A<k>(1)`.
pub fn cartan_of(name: &str) -> Result<IntMatrix> {
    if let Some(k) = name.strip_prefix('A').and_then(|s| s.strip_suffix("(1)")) {
        let k: usize = k.parse().map_err(|_| Error::InvalidInput(format!("unknown type {name:?}")))?;
        if k < 2 {
            return Err(Error::InvalidInput("affine A needs k >= 2".into()));
        }
        return Ok(affine_a_cartan(k + 1));
    }
    named_cartan(name)
}

fn read_json(path: &str) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn rows_of(v: &Value) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("matrix rows: {e}")))?;
    IntMatrix::from_rows(&rows)
}

/// Matrix from a JSON file: `{"B": rows}`, `{"Btilde": rows, "n": k}`,
/// `{"A": rows}` or a bare array of rows. Returns the key found.
pub fn read_matrix(path: &str) -> Result<(String, IntMatrix)> {
    let v = read_json(path)?;
    if v.is_array() {
        return Ok(("B".into(), rows_of(&v)?));
    }
    for key in ["B", "Btilde", "A"] {
        if let Some(rows) = v.get(key) {
            let m = rows_of(rows)?;
            if key == "Btilde" {
                if let Some(n) = v.get("n").and_then(Value::as_u64) {
                    if n as usize != m.cols() {
                        return Err(Error::InvalidInput(format!("\"n\" is {n} but Btilde has {} columns", m.cols())));
                    }
                }
            }
            return Ok((key.into(), m));
        }
    }
    Err(Error::Parse(format!("{path}: expected a \"B\", \"Btilde\" or \"A\" key")))
}

fn rank2_name(bc: &str) -> String {
    format!("rank2:{bc}")
}

impl Source {
    /// The extended matrix named by the source; plain exchange matrices get
    /// no frozen rows.
    pub fn extended(&self) -> Result<ExtendedMatrix> {
        if let Some(path) = &self.btilde {
            let (_, m) = read_matrix(path)?;
            return ExtendedMatrix::new(m);
        }
        ExtendedMatrix::new(self.exchange()?.matrix().clone())
    }

    /// The exchange matrix `B` (the principal part for `--btilde`).
    pub fn exchange(&self) -> Result<ExchangeMatrix> {
        if let Some(name) = &self.r#type {
            let a = cartan_of(name)?;
            let eps = coxeter_graph_sign(&a).ok_or_else(|| Error::NotBipartite(name.clone()))?;
            return bipartite_exchange(&a, &eps);
        }
        if let Some(bc) = &self.rank2 {
            let a = named_cartan(&rank2_name(bc))?;
            let eps = coxeter_graph_sign(&a).ok_or_else(|| Error::NotBipartite(bc.clone()))?;
            return bipartite_exchange(&a, &eps);
        }
        if let Some(path) = &self.matrix {
            let (key, m) = read_matrix(path)?;
            return match key.as_str() {
                "A" => {
                    let eps = coxeter_graph_sign(&m).ok_or_else(|| Error::NotBipartite(path.clone()))?;
                    bipartite_exchange(&m, &eps)
                }
                "Btilde" => Ok(ExtendedMatrix::new(m)?.principal()),
                _ => ExchangeMatrix::new(m),
            };
        }
        if let Some(path) = &self.cartan {
            let (_, a) = read_matrix(path)?;
            let eps = coxeter_graph_sign(&a).ok_or_else(|| Error::NotBipartite(path.clone()))?;
            return bipartite_exchange(&a, &eps);
        }
        Ok(self.extended()?.principal())
    }

    /// Cartan matrix and bipartite sign.
    pub fn cartan(&self) -> Result<(IntMatrix, Vec<i64>)> {
        let a = if let Some(name) = &self.r#type {
            cartan_of(name)?
        } else if let Some(bc) = &self.rank2 {
            named_cartan(&rank2_name(bc))?
        } else if let Some(path) = &self.cartan {
            read_matrix(path)?.1
        } else {
            let b = self.exchange()?;
            let eps = bipartite_sign(&b).ok_or_else(|| Error::NotBipartite("exchange matrix".into()))?;
            return Ok((cartan_counterpart(&b), eps));
        };
        let eps = coxeter_graph_sign(&a).ok_or_else(|| Error::NotBipartite("Cartan matrix".into()))?;
        Ok((a, eps))
    }
}

/// `a:b` to `(a, b)`.
pub fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad bound {t:?}"));
    let (a, b) = (p(a)?, p(b)?);
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}
