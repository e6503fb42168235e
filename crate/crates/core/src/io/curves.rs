//! Plain-text curve lists, one `label conductor a1 a2 a3 a4 a6` record per line.

use num_bigint::BigInt;

use crate::ec::RationalCurve;
use crate::error::{Error, Result};

const FIELDS: usize = 7;

/// Parses every record or fails on the first bad line (1-based numbering).
/// Blank lines and text after `#` are ignored.
pub fn parse_curve_file(text: &str) -> Result<Vec<RationalCurve>> {
    let mut curves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |reason: String| Error::Parse { line, reason };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != FIELDS {
            return Err(err(format!("expected {FIELDS} fields, found {}", fields.len())));
        }
        let conductor: u64 = fields[1]
            .parse()
            .map_err(|_| err(format!("conductor {:?} is not a positive integer", fields[1])))?;
        let mut coeffs: [BigInt; 5] = Default::default();
        for (c, f) in coeffs.iter_mut().zip(&fields[2..]) {
            *c = f.parse().map_err(|_| err(format!("coefficient {f:?} is not an integer")))?;
        }
        let curve = RationalCurve::new(coeffs, Some(fields[0].to_string()), Some(conductor))
            .map_err(|e| err(e.to_string()))?;
        curves.push(curve);
    }
    Ok(curves)
}

/// Inverse of [`parse_curve_file`]; every curve needs a label and a conductor.
pub fn serialize_curve_file(curves: &[RationalCurve]) -> Result<String> {
    let mut out = String::new();
    for c in curves {
        let (Some(label), Some(n)) = (c.label(), c.conductor()) else {
            return Err(Error::InvalidArgument(format!("curve {c} lacks a label or conductor")));
        };
        let [a1, a2, a3, a4, a6] = c.coeffs();
        out.push_str(&format!("{label} {n} {a1} {a2} {a3} {a4} {a6}\n"));
    }
    Ok(out)
}
