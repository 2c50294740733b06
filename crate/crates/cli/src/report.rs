use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub n: Option<usize>,
    pub regime: RegimeInfo,
    pub results: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub timing_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeInfo {
    pub kind: String,
    /// Evaluation points used where a result was sampled.
    pub points: Vec<SampleRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub n: usize,
    pub purpose: String,
    pub points: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

pub fn big_matrix(m: &[Vec<BigInt>]) -> Value {
    Value::Array(
        m.iter()
            .map(|r| Value::Array(r.iter().map(big).collect()))
            .collect(),
    )
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command  {}\n", self.command));
        if let Some(n) = self.n {
            out.push_str(&format!("n        {n}\n"));
        }
        out.push_str(&format!("regime   {}\n", self.regime.kind));
        for rec in &self.regime.points {
            out.push_str(&format!(
                "  n={} {}: {} points\n",
                rec.n,
                rec.purpose,
                rec.points.len()
            ));
        }
        if let Value::Object(map) = &self.results {
            for (key, value) in map {
                render_entry(&mut out, "", key, value);
            }
        }
        if !self.checks.is_empty() {
            let rows: Vec<[String; 3]> = self
                .checks
                .iter()
                .map(|c| {
                    [
                        c.name.clone(),
                        if c.passed { "pass" } else { "FAIL" }.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            let w0 = rows.iter().map(|r| r[0].len()).max().unwrap_or(0);
            out.push_str("checks\n");
            for r in rows {
                out.push_str(&format!("  {:<w0$}  {:<4}  {}\n", r[0], r[1], r[2]));
            }
        }
        out.push_str(&format!(
            "result   {} ({} ms)\n",
            if self.passed { "pass" } else { "FAIL" },
            self.timing_ms
        ));
        out
    }
}

fn render_entry(out: &mut String, indent: &str, key: &str, value: &Value) {
    if let Some(grid) = as_grid(value) {
        out.push_str(&format!("{indent}{key}\n"));
        for line in grid.lines() {
            out.push_str(&format!("{indent}{line}\n"));
        }
    } else if let Value::Object(map) = value {
        out.push_str(&format!("{indent}{key}\n"));
        let deeper = format!("{indent}  ");
        for (k, v) in map {
            render_entry(out, &deeper, k, v);
        }
    } else {
        out.push_str(&format!("{indent}{key}  {}\n", compact(value)));
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Right-aligned grid for an array of arrays of scalars.
fn as_grid(v: &Value) -> Option<String> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.as_array()?
                .iter()
                .map(|c| (!c.is_array() && !c.is_object()).then(|| compact(c)))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for r in cells {
        let line: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&format!("  {}\n", line.join(" ")));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = Report {
            command: "gram".into(),
            n: Some(1),
            regime: RegimeInfo {
                kind: "symbolic".into(),
                points: vec![],
            },
            results: serde_json::json!({"matrix": [[1, 0], [0, 1]], "determinant": 1}),
            checks: vec![Check::new("unimodular", true, "det = 1")],
            passed: true,
            timing_ms: 3,
        };
        let text = r.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(r.to_table().contains("  1 0\n  0 1\n"));
    }

    #[test]
    fn big_values_fall_back_to_strings() {
        let huge = BigInt::from(1u8) << 80;
        assert!(big(&huge).is_string());
        assert_eq!(big(&BigInt::from(-3)), Value::from(-3));
    }
}
