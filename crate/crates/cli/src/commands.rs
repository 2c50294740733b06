use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use milnor_core::algebra::{determinant, IntMatrix};
use milnor_core::artin::{etale_from_matrix, EtaleAlgebra};
use milnor_core::chow::{motive_of_y, rank_table, ChowBasis};
use milnor_core::gkm::EqClass;
use milnor_core::localization::{deg_pairing, deg_pairing_sampled, Regime};
use milnor_core::Error;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::expr::parse_class_expr;
use crate::input::{parse_etale_spec, read_matrix};
use crate::report::{big, big_matrix, Check, RegimeInfo, Report, SampleRecord};

/// Above this `n`, `--regime sampled` switches pairings to exact sampling.
pub const SYMBOLIC_CUTOFF: usize = 5;
pub const MAX_N_SYMBOLIC: usize = 6;
pub const MAX_N: usize = 8;

pub fn effective_regime(requested: Regime, n: usize) -> Regime {
    match requested {
        Regime::Sampled if n > SYMBOLIC_CUTOFF => Regime::Sampled,
        _ => Regime::Symbolic,
    }
}

/// Pairing evaluator that remembers the points it sampled.
pub struct Pairer {
    pub regime: Regime,
    n: usize,
    points: BTreeSet<Vec<BigInt>>,
}

impl Pairer {
    pub fn new(requested: Regime, n: usize) -> Self {
        Pairer {
            regime: effective_regime(requested, n),
            n,
            points: BTreeSet::new(),
        }
    }

    pub fn pair(&mut self, a: &EqClass, b: &EqClass) -> Result<BigInt, Error> {
        match self.regime {
            Regime::Symbolic => deg_pairing(a, b),
            Regime::Sampled => {
                let (v, plan) = deg_pairing_sampled(a, b)?;
                self.points.extend(plan.points);
                Ok(v)
            }
        }
    }

    pub fn matrix(&mut self, rows: &[EqClass], cols: &[EqClass]) -> Result<IntMatrix, Error> {
        rows.iter()
            .map(|r| cols.iter().map(|c| self.pair(r, c)).collect())
            .collect()
    }

    pub fn record(&self, purpose: &str) -> Option<SampleRecord> {
        (!self.points.is_empty()).then(|| SampleRecord {
            n: self.n,
            purpose: purpose.to_string(),
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(big).collect())
                .collect(),
        })
    }
}

pub fn regime_info(requested: Regime, records: Vec<SampleRecord>) -> RegimeInfo {
    RegimeInfo {
        kind: requested.to_string(),
        points: records,
    }
}

pub fn finish(
    command: String,
    n: Option<usize>,
    regime: RegimeInfo,
    results: Value,
    checks: Vec<Check>,
    start: Instant,
) -> Report {
    Report {
        command,
        n,
        regime,
        passed: checks.iter().all(|c| c.passed),
        results,
        checks,
        timing_ms: start.elapsed().as_millis() as u64,
    }
}

fn check_n(n: usize) -> Result<(), CliError> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "--n must be between 1 and {MAX_N}"
        )))
    }
}

pub fn run_pairing(
    n: usize,
    exprs: &[String],
    regime: Regime,
    echo: String,
) -> Result<Report, CliError> {
    let start = Instant::now();
    check_n(n)?;
    if exprs.is_empty() {
        return Err(CliError::Input("pairing needs at least one class".into()));
    }
    let parsed = exprs
        .iter()
        .map(|e| parse_class_expr(e))
        .collect::<Result<Vec<_>, _>>()?;
    let classes = parsed
        .iter()
        .map(|e| e.eval(n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut pairer = Pairer::new(regime, n);
    let m = pairer.matrix(&classes, &classes)?;
    let symmetric = (0..m.len()).all(|r| (0..m.len()).all(|c| m[r][c] == m[c][r]));
    let results = json!({
        "classes": parsed.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "matrix": big_matrix(&m),
    });
    let checks = vec![Check::new("symmetric", symmetric, "deg(a*b) = deg(b*a)")];
    let records = pairer.record("degree pairing").into_iter().collect();
    Ok(finish(
        echo,
        Some(n),
        regime_info(regime, records),
        results,
        checks,
        start,
    ))
}

pub fn run_gram(n: usize, regime: Regime, echo: String) -> Result<Report, CliError> {
    let start = Instant::now();
    check_n(n)?;
    let (labels, m, records) = match effective_regime(regime, n) {
        Regime::Symbolic => {
            let basis = ChowBasis::new(n)?;
            let labels: Vec<String> = basis
                .elements()
                .iter()
                .map(|b| b.label.to_string())
                .collect();
            (labels, basis.gram().clone(), Vec::new())
        }
        Regime::Sampled => {
            let basis = milnor_core::chow::basis_of_y(n)?;
            let classes: Vec<EqClass> = basis.iter().map(|b| b.class.clone()).collect();
            let mut pairer = Pairer::new(regime, n);
            let m = pairer.matrix(&classes, &classes)?;
            let labels = basis.iter().map(|b| b.label.to_string()).collect();
            (labels, m, pairer.record("gram").into_iter().collect())
        }
    };
    let det = determinant(&m);
    let results = json!({
        "labels": labels,
        "matrix": big_matrix(&m),
        "determinant": big(&det),
    });
    let checks = vec![Check::new(
        "unimodular",
        det.magnitude().is_one(),
        format!("det = {det}"),
    )];
    Ok(finish(
        echo,
        Some(n),
        regime_info(regime, records),
        results,
        checks,
        start,
    ))
}

pub fn run_decompose(
    n: usize,
    expr: &str,
    regime: Regime,
    echo: String,
) -> Result<Report, CliError> {
    let start = Instant::now();
    check_n(n)?;
    let parsed = parse_class_expr(expr)?;
    let gamma = parsed.eval(n)?;
    let basis = ChowBasis::new_in(effective_regime(regime, n), n)?;
    let d = basis.decompose(&gamma)?;
    let diff = &gamma - &basis.recombine(&d.coords)?;
    let residual = basis.pairings_with_basis(&diff)?;
    let nf = d.normal_form();
    let results = json!({
        "class": parsed.to_string(),
        "decomposition": d.to_string(),
        "coordinates": d
            .labelled()
            .map(|(l, c)| json!([l.to_string(), big(c)]))
            .collect::<Vec<_>>(),
        "alphas": nf.alphas.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "beta": nf.beta.iter().map(big).collect::<Vec<_>>(),
    });
    let checks = vec![Check::new(
        "round_trip",
        residual.iter().all(Zero::is_zero),
        "gamma minus its recombination pairs to zero with every basis element",
    )];
    Ok(finish(
        echo,
        Some(n),
        regime_info(regime, Vec::new()),
        results,
        checks,
        start,
    ))
}

pub enum MotiveInput {
    Matrix(PathBuf),
    Etale(String),
}

pub fn run_motive(input: &MotiveInput, n: Option<usize>, echo: String) -> Result<Report, CliError> {
    let start = Instant::now();
    let (algebra, l_name, mut results) = match input {
        MotiveInput::Matrix(path) => {
            let m = read_matrix(path)?;
            let ing = etale_from_matrix(m.p, &m.rows)?;
            let name = match (ing.field_name(), ing.algebra.factor_count()) {
                (Some(f), 1) => f,
                (Some(f), k) => format!("{f}^{k}"),
                (None, _) => "L".to_string(),
            };
            let profile: Value = ing
                .profile
                .degree_profile
                .as_ref()
                .map(|dp| dp.iter().map(|(d, c)| (d.to_string(), json!(c))).collect())
                .unwrap_or(Value::Null);
            let results = json!({
                "char_poly": ing.profile.char_poly.to_string(),
                "degree_profile": profile,
            });
            (ing.algebra, name, results)
        }
        MotiveInput::Etale(spec) => {
            let (m, d) = parse_etale_spec(spec)?;
            (
                EtaleAlgebra::copies_of_cyclic(m, d),
                "L".to_string(),
                json!({}),
            )
        }
    };
    let derived_n = algebra.total_degree() - 1;
    if let Some(n) = n {
        if n != derived_n {
            return Err(CliError::Input(format!(
                "--n {n} does not match L of degree {} (n = {derived_n})",
                algebra.total_degree()
            )));
        }
    }
    let n = derived_n;
    let hypothesis = algebra.check_hypothesis();
    let obj = results.as_object_mut().expect("object");
    obj.insert("L".into(), json!(l_name));
    obj.insert("L_structure".into(), json!(algebra.to_string()));
    obj.insert("factor_degrees".into(), json!(algebra.factor_degrees()));
    obj.insert("hypothesis".into(), json!(hypothesis.is_ok()));
    let mut checks = vec![Check::new(
        "hypothesis",
        hypothesis.is_ok(),
        match &hypothesis {
            Ok(()) => "L is a power of one Galois extension".to_string(),
            Err(e) => e.to_string(),
        },
    )];
    match motive_of_y(n, &algebra) {
        Ok(m) => {
            let base = rank_table(&m, false);
            let split = rank_table(&m, true);
            let total: usize = split.iter().sum();
            obj.insert("decomposition".into(), json!(m.display_named(&l_name)));
            obj.insert("ranks_base".into(), json!(base));
            obj.insert("ranks_split".into(), json!(split));
            checks.push(Check::new(
                "split_rank_sum",
                total == n * (n + 1),
                format!("{total} = n(n+1) = {}", n * (n + 1)),
            ));
        }
        Err(Error::HypothesisFailed(_)) => {
            obj.insert("decomposition".into(), Value::Null);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(finish(
        echo,
        Some(n),
        regime_info(Regime::Symbolic, Vec::new()),
        results,
        checks,
        start,
    ))
}
