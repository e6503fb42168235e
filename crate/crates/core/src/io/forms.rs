//! Eigenform datasets: truncated q-expansions of the newforms and oldform
//! translates spanning a space of weight-2 cusp forms.
//!
//! ```json
//! {"level": 90, "precision": 100,
//!  "forms": [{"label": "90c1", "distinguished": true, "an": [1, 1, 0, ...]},
//!            {"label": "15a1.d2", "d": 2, "an": [1, -1, -1, ...]}]}
//! ```
//!
//! For a translate (`d > 1`) the stored `an` are those of the base newform;
//! the translate `f(q^d)` is generated on demand.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::json::{int, ints, to_bigint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormRecord {
    label: String,
    distinguished: bool,
    shift: u64,
    base: Vec<BigInt>,
}

impl FormRecord {
    /// `base[n - 1] = a_n` of the underlying newform; `shift = d >= 1`.
    pub fn new(label: impl Into<String>, base: Vec<BigInt>, shift: u64) -> Self {
        FormRecord { label: label.into(), distinguished: false, shift: shift.max(1), base }
    }

    pub fn distinguished(mut self, yes: bool) -> Self {
        self.distinguished = yes;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_distinguished(&self) -> bool {
        self.distinguished
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn base(&self) -> &[BigInt] {
        &self.base
    }

    /// Coefficients `a_1 .. a_B` of `f(q^d)`: zero off multiples of `d`.
    pub fn coefficients(&self, precision: usize) -> Vec<BigInt> {
        let d = self.shift as usize;
        (1..=precision)
            .map(|n| if n % d == 0 { self.base.get(n / d - 1).cloned().unwrap_or_default() } else { BigInt::zero() })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenformDataset {
    level: u64,
    precision: usize,
    forms: Vec<FormRecord>,
}

impl EigenformDataset {
    /// Checks lengths, shifts, label uniqueness and the distinguished flag.
    pub fn new(level: u64, precision: usize, forms: Vec<FormRecord>) -> Result<Self> {
        if level == 0 || precision == 0 {
            return Err(Error::Schema("level and precision must be positive".into()));
        }
        let mut labels = BTreeSet::new();
        for f in &forms {
            if f.base.len() != precision {
                return Err(Error::LengthMismatch {
                    label: f.label.clone(),
                    expected: precision,
                    found: f.base.len(),
                });
            }
            if level % f.shift != 0 {
                return Err(Error::Schema(format!("{}: shift {} does not divide level {level}", f.label, f.shift)));
            }
            if !labels.insert(f.label.as_str()) {
                return Err(Error::Schema(format!("duplicate label {:?}", f.label)));
            }
        }
        if forms.iter().filter(|f| f.distinguished).count() > 1 {
            return Err(Error::Schema("more than one distinguished form".into()));
        }
        Ok(EigenformDataset { level, precision, forms })
    }

    /// Adds every translate `f(q^d)` for `d | level / M` of each newform of level `M`.
    /// Translates are labelled `<label>.d<d>`.
    pub fn with_translates(
        level: u64,
        precision: usize,
        newforms: Vec<(String, u64, Vec<BigInt>)>,
        distinguished: Option<&str>,
    ) -> Result<Self> {
        let mut forms = Vec::new();
        for (label, m, base) in newforms {
            if m == 0 || level % m != 0 {
                return Err(Error::Schema(format!("{label}: level {m} does not divide {level}")));
            }
            let is_dist = distinguished == Some(label.as_str());
            for d in (1..=level / m).filter(|d| (level / m) % d == 0) {
                let l = if d == 1 { label.clone() } else { format!("{label}.d{d}") };
                forms.push(FormRecord::new(l, base.clone(), d).distinguished(is_dist && d == 1));
            }
        }
        Self::new(level, precision, forms)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn forms(&self) -> &[FormRecord] {
        &self.forms
    }

    pub fn form(&self, label: &str) -> Result<&FormRecord> {
        self.forms.iter().find(|f| f.label == label).ok_or_else(|| Error::MissingForm(label.into()))
    }

    pub fn distinguished(&self) -> Option<&FormRecord> {
        self.forms.iter().find(|f| f.distinguished)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| Error::Schema("top level must be an object".into()))?;
        let uint = |key: &str| {
            obj.get(key)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Schema(format!("missing or invalid {key:?}")))
        };
        let level = uint("level")?;
        let precision = uint("precision")? as usize;
        let list = obj
            .get("forms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("missing \"forms\" array".into()))?;
        let forms = list.iter().enumerate().map(|(i, f)| parse_form(i, f)).collect::<Result<Vec<_>>>()?;
        Self::new(level, precision, forms)
    }

    /// Canonical JSON, one form per line.
    pub fn to_json(&self) -> String {
        let forms: Vec<String> = self
            .forms
            .iter()
            .map(|f| {
                let mut m = Map::new();
                m.insert("label".into(), json!(f.label));
                if f.distinguished {
                    m.insert("distinguished".into(), json!(true));
                }
                if f.shift > 1 {
                    m.insert("d".into(), json!(f.shift));
                }
                m.insert("an".into(), ints(&f.base));
                Value::Object(m).to_string()
            })
            .collect();
        format!(
            "{{\"level\":{},\"precision\":{},\"forms\":[\n{}\n]}}\n",
            int(&BigInt::from(self.level)),
            self.precision,
            forms.join(",\n")
        )
    }
}

fn parse_form(i: usize, f: &Value) -> Result<FormRecord> {
    let schema = |msg: &str| Error::Schema(format!("forms[{i}]: {msg}"));
    let obj = f.as_object().ok_or_else(|| schema("not an object"))?;
    let label = obj.get("label").and_then(Value::as_str).ok_or_else(|| schema("missing label"))?;
    let distinguished = match obj.get("distinguished") {
        None => false,
        Some(v) => v.as_bool().ok_or_else(|| schema("distinguished must be a boolean"))?,
    };
    let shift = match obj.get("d") {
        None => 1,
        Some(v) => v.as_u64().filter(|&d| d >= 1).ok_or_else(|| schema("d must be a positive integer"))?,
    };
    let an = obj
        .get("an")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("missing an array"))?
        .iter()
        .map(|x| to_bigint(x).ok_or_else(|| schema("coefficients must be integers")))
        .collect::<Result<Vec<_>>>()?;
    Ok(FormRecord::new(label, an, shift).distinguished(distinguished))
}
