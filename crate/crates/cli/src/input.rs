use std::path::Path;

use serde::Deserialize;

use crate::error::CliError;

/// `{"p": prime, "rows": [[int]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInput {
    pub p: u64,
    pub rows: Vec<Vec<i64>>,
}

pub fn read_matrix(path: &Path) -> Result<MatrixInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<MatrixInput, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad matrix JSON: {e}")))
}

/// `INT "x" "C" INT`: `m` copies of the cyclic extension of degree `d`.
pub fn parse_etale_spec(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("étale spec {spec:?} is not of the form <m>xC<d>"));
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (m, d) = compact.split_once('x').ok_or_else(bad)?;
    let d = d.strip_prefix('C').ok_or_else(bad)?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(m) || !digits(d) {
        return Err(bad());
    }
    let (m, d): (usize, usize) = (m.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?);
    if m == 0 || d == 0 {
        return Err(CliError::Input("étale spec needs m, d >= 1".into()));
    }
    Ok((m, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(parse_etale_spec("3xC1").unwrap(), (3, 1));
        assert_eq!(parse_etale_spec("2 x C2").unwrap(), (2, 2));
        for bad in ["3C1", "x C2", "3xD2", "3xC", "0xC2", "-1xC2"] {
            assert!(parse_etale_spec(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn matrices() {
        let m = parse_matrix(r#"{"p": 2, "rows": [[0, 1], [1, 1]]}"#).unwrap();
        assert_eq!(m.p, 2);
        assert!(parse_matrix(r#"{"p": 2}"#).is_err());
        assert!(parse_matrix(r#"{"p": 2, "rows": [], "q": 1}"#).is_err());
    }
}
