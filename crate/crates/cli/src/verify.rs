use std::collections::BTreeMap;
use std::time::Instant;

use milnor_core::artin::{
    artin_hom_rank, etale_from_matrix, recover_invariant, small_galois_groups, EtaleAlgebra, GSet,
    PermGroup,
};
use milnor_core::chow::{
    eliminate_h, motive_of_y, phi_image, rank_table, BasisLabel, ChowBasis, EClass, HXiPoly,
};
use milnor_core::gkm::{class_h, class_of_ei, class_x, EqClass};
use milnor_core::localization::{lagrange_verify_in, pairing_t, sign_for, Regime};
use milnor_core::Error;
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::commands::{effective_regime, finish, regime_info, Pairer, MAX_N, MAX_N_SYMBOLIC};
use crate::error::CliError;
use crate::report::{big, big_matrix, Check, Report, SampleRecord};

struct Suite {
    checks: Vec<Check>,
    orthogonality: BTreeMap<String, Value>,
    degree_tables: BTreeMap<String, Value>,
    records: Vec<SampleRecord>,
}

impl Suite {
    fn check(&mut self, name: String, outcome: Result<bool, Error>, detail: impl Into<String>) {
        match outcome {
            Ok(passed) => self.checks.push(Check::new(name, passed, detail)),
            Err(e) => self.checks.push(Check::new(name, false, e.to_string())),
        }
    }
}

pub fn validate(n_max: usize, regime: Regime) -> Result<(), CliError> {
    let cap = match regime {
        Regime::Symbolic => MAX_N_SYMBOLIC,
        Regime::Sampled => MAX_N,
    };
    if !(1..=cap).contains(&n_max) {
        return Err(CliError::Input(format!(
            "--n-max must be between 1 and {cap} in the {regime} regime"
        )));
    }
    Ok(())
}

pub fn run_verify(n_max: usize, regime: Regime, echo: String) -> Result<Report, CliError> {
    validate(n_max, regime)?;
    let start = Instant::now();
    let mut suite = Suite {
        checks: Vec::new(),
        orthogonality: BTreeMap::new(),
        degree_tables: BTreeMap::new(),
        records: Vec::new(),
    };
    for n in 1..=n_max {
        verify_n(&mut suite, n, regime);
    }
    verify_global(&mut suite);
    let results = json!({
        "orthogonality": suite.orthogonality,
        "degree_tables": suite.degree_tables,
    });
    Ok(finish(
        echo,
        None,
        regime_info(regime, suite.records),
        results,
        suite.checks,
        start,
    ))
}

fn fiber_classes(n: usize) -> Result<Vec<EqClass>, Error> {
    (0..=n).map(|i| class_of_ei(n, i)).collect()
}

fn generators(n: usize) -> Result<Vec<EqClass>, Error> {
    let mut g = vec![class_h(n)?, class_x(n)?];
    g.extend(fiber_classes(n)?);
    Ok(g)
}

fn verify_n(suite: &mut Suite, n: usize, regime: Regime) {
    let mode = effective_regime(regime, n);
    let mut pairer = Pairer::new(regime, n);

    // fiber orthogonality
    let sign = sign_for(n);
    let outcome = fiber_classes(n)
        .and_then(|f| pairer.matrix(&f, &f))
        .map(|m| {
            let ok = (0..=n)
                .all(|i| (0..=n).all(|j| m[i][j] == BigInt::from(if i == j { sign } else { 0 })));
            suite.orthogonality.insert(n.to_string(), big_matrix(&m));
            ok
        });
    suite.check(
        format!("n={n} orthogonality"),
        outcome,
        format!("(-1)^(n-1) I, {mode}"),
    );

    // interpolation identity behind the fiber self-pairing
    let mut lagrange_points = Vec::new();
    let outcome = (0..=n)
        .map(|i| {
            lagrange_verify_in(mode, n, i).map(|r| {
                if let Some(plan) = &r.plan {
                    lagrange_points.extend(plan.points.iter().cloned());
                }
                r.ok
            })
        })
        .collect::<Result<Vec<bool>, Error>>()
        .map(|v| v.into_iter().all(|b| b));
    suite.check(
        format!("n={n} lagrange"),
        outcome,
        format!("all i in 0..={n}"),
    );
    if !lagrange_points.is_empty() {
        suite.records.push(SampleRecord {
            n,
            purpose: "lagrange".into(),
            points: lagrange_points
                .iter()
                .map(|p| p.iter().map(big).collect())
                .collect(),
        });
    }

    // degree table against C(2n - a, n)
    let outcome = (|| {
        let one = EqClass::one(n);
        let (h, x) = (class_h(n)?, class_x(n)?);
        let mut row = Vec::new();
        let mut ok = true;
        for a in 0..=n.min(2 * n - 2) {
            let b = 2 * n - 2 - a;
            let v = pairer.pair(&(&h.pow(a as u32) * &x.pow(b as u32)), &one)?;
            ok &= v == binomial(BigInt::from(2 * n - a), BigInt::from(n));
            row.push(big(&v));
        }
        suite.degree_tables.insert(n.to_string(), Value::Array(row));
        Ok(ok)
    })();
    suite.check(
        format!("n={n} degree_table"),
        outcome,
        "deg h^a x^b = C(2n-a, n)",
    );
    if let Some(rec) = pairer.record("degree pairing") {
        suite.records.push(rec);
    }

    if n <= 5 {
        let outcome = (|| {
            let basis = milnor_core::chow::basis_of_y(n)?;
            for (k, a) in basis.iter().enumerate() {
                for b in &basis[k..] {
                    pairing_t(&a.class, &b.class)?;
                }
            }
            Ok(true)
        })();
        suite.check(
            format!("n={n} integrality"),
            outcome,
            "basis pairings are polynomials",
        );
    }

    if n <= 6 {
        let outcome = generators(n).map(|g| {
            g.iter()
                .enumerate()
                .all(|(k, a)| a.satisfies_gkm() && g[k..].iter().all(|b| (a * b).satisfies_gkm()))
        });
        suite.check(
            format!("n={n} gkm"),
            outcome,
            "generators and pairwise products",
        );
    }

    if n <= 4 {
        let outcome = (|| {
            let basis = ChowBasis::new(n)?;
            let unimodular = basis.determinant().magnitude().is_one();
            let mut samples: Vec<EqClass> =
                basis.elements().iter().map(|b| b.class.clone()).collect();
            let g = generators(n)?;
            for (k, a) in g.iter().enumerate() {
                for b in &g[k..] {
                    samples.push(a * b);
                }
            }
            let mut round_trip = true;
            for gamma in &samples {
                let d = basis.decompose(gamma)?;
                let diff = gamma - &basis.recombine(&d.coords)?;
                round_trip &= basis.pairings_with_basis(&diff)?.iter().all(Zero::is_zero);
            }
            Ok(unimodular && round_trip)
        })();
        suite.check(
            format!("n={n} gram"),
            outcome,
            "|det| = 1 and decompose round-trips",
        );
    }

    if n == 2 {
        let outcome = (|| {
            let basis = ChowBasis::new(2)?;
            let x = class_x(2)?;
            let d = basis.decompose(&x)?;
            let want = [(BasisLabel::Power { x_exp: 0, h_exp: 1 }, 3)]
                .into_iter()
                .chain((0..=2).map(|i| (BasisLabel::Fiber(i), -1)));
            let coords_ok = want
                .into_iter()
                .all(|(l, c)| d.coordinate(l) == BigInt::from(c))
                && d.coords
                    .iter()
                    .map(|c| c.magnitude().clone())
                    .sum::<num_bigint::BigUint>()
                    == num_bigint::BigUint::from(6u8);
            let x2 = milnor_core::localization::deg_pairing(&(&x * &x), &EqClass::one(2))?;
            Ok(coords_ok && x2 == BigInt::from(6))
        })();
        suite.check(
            "n=2 decomposition_witness".into(),
            outcome,
            "x = 3h - E0 - E1 - E2, deg x^2 = 6",
        );
    }

    if (2..=4).contains(&n) {
        let outcome = (|| {
            let basis = ChowBasis::new(n)?;
            let zero = EClass::zero(n);
            let empty = vec![vec![BigInt::zero(); n]; n + 1];
            let mut ok = true;
            for i in 0..=n {
                for j in 1..n {
                    let mut z = empty.clone();
                    z[i][j] = BigInt::one();
                    let (e, rest) = eliminate_h(&zero, &z)?;
                    let want = EClass::from_poly(n, &HXiPoly::monomial(n, j - 1, BigInt::one()))?;
                    ok &= e == want && rest.iter().all(Zero::is_zero);
                    ok &= basis.decompose(&phi_image(&zero, &z)?)?
                        == basis.decompose(&phi_image(&e, &empty)?)?;
                }
            }
            Ok(ok)
        })();
        suite.check(
            format!("n={n} elimination"),
            outcome,
            "beta H^j -> beta h^n xi^(j-1)",
        );
    }

    let outcome = motive_of_y(n, &EtaleAlgebra::split(n + 1))
        .map(|m| rank_table(&m, true).iter().sum::<usize>() == n * (n + 1));
    suite.check(
        format!("n={n} split_rank_sum"),
        outcome,
        "sum of split ranks = n(n+1)",
    );

    if n == 2 {
        let outcome = motive_of_y(2, &EtaleAlgebra::copies_of_cyclic(1, 3))
            .map(|m| rank_table(&m, false) == [1, 2, 1] && rank_table(&m, true) == [1, 4, 1]);
        suite.check(
            "n=2 cubic_rank_tables".into(),
            outcome,
            "base (1,2,1), split (1,4,1)",
        );
    }

    let ok = (1..=n + 1).filter(|d| (n + 1).is_multiple_of(*d)).all(|d| {
        let group = PermGroup::cyclic(d);
        let reg = GSet::regular(&group);
        artin_hom_rank(&reg, &reg.copies((n + 1) / d)) == n + 1
    });
    suite.check(
        format!("n={n} artin_rank"),
        Ok(ok),
        "Hom(M(Spec K), M(Spec L)) has rank n+1",
    );
}

fn verify_global(suite: &mut Suite) {
    let outcome = (|| {
        let mut ok = true;
        for (_, group) in small_galois_groups() {
            let n = group.order() - 1;
            let normal: Vec<PermGroup> = group
                .small_subgroups()
                .into_iter()
                .filter(|h| h.is_normal_in(&group))
                .collect();
            for h in &normal {
                for h2 in &normal {
                    let v = recover_invariant(n, &group, h, h2)?;
                    ok &= v.subgroup_criterion_agrees && v.isomorphic == (h == h2);
                }
            }
        }
        Ok(ok)
    })();
    suite.check(
        "invariant_recovery".into(),
        outcome,
        "rank criterion = subgroup criterion on C2, C3, C4, C2xC2, S3",
    );

    let outcome = (|| {
        let companion = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]];
        let ing = etale_from_matrix(2, &companion)?;
        let m = motive_of_y(ing.n, &ing.algebra)?;
        let named = m.display_named(&ing.field_name().unwrap_or_default());
        let identity_rejected = matches!(
            etale_from_matrix(3, &[vec![1, 0], vec![0, 1]]),
            Err(Error::NotRegularSemisimple(_))
        );
        Ok(ing.hypothesis_satisfied && named == "M(P^2) ⊕ M(Spec F_8)(1)" && identity_rejected)
    })();
    suite.check(
        "ingestion".into(),
        outcome,
        "companion(x^3+x+1) mod 2 and the identity mod 3",
    );
}
