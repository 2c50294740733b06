use milnor_core::algebra::{
    fp_char_poly_profile, rat_sum, FpMatrix, FpPoly, LinearForm, MultiPoly, RatFunc,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const NVARS: usize = 3;

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, NVARS), -5i64..=5), 0..5).prop_map(
        |terms| MultiPoly::from_terms(NVARS, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))),
    )
}

fn form() -> impl Strategy<Value = LinearForm> {
    prop::collection::vec(-2i64..=2, NVARS)
        .prop_filter("nonzero", |c| c.iter().any(|&v| v != 0))
        .prop_map(LinearForm::new)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), prop::collection::vec(form(), 0..3)).prop_map(|(p, fs)| RatFunc::new(p, fs))
}

fn point() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(-20i64..=20, NVARS).prop_map(|v| {
        v.into_iter()
            .map(|x| BigRational::from_integer(x.into()))
            .collect()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_by_linear(q in poly(), l in form()) {
        let p = q.mul_linear(&l);
        prop_assert_eq!(p.exact_div_linear(&l).unwrap(), q);
    }

    #[test]
    fn normalization_is_idempotent(f in ratfunc()) {
        let again = RatFunc::from_parts(
            f.numerator().clone(),
            f.denominator().map(|(l, m)| (l.clone(), m)),
            f.content().clone(),
        );
        prop_assert_eq!(again, f);
    }

    #[test]
    fn sum_is_order_independent(terms in prop::collection::vec(ratfunc(), 1..5)) {
        let forward = rat_sum(NVARS, &terms);
        let mut rev = terms.clone();
        rev.reverse();
        prop_assert_eq!(&forward, &rat_sum(NVARS, &rev));
        let folded = terms.iter().fold(RatFunc::zero(NVARS), |acc, t| &acc + t);
        prop_assert_eq!(forward, folded);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), pt in point()) {
        if let (Ok(va), Ok(vb)) = (a.eval(&pt), b.eval(&pt)) {
            prop_assert_eq!((&a + &b).eval(&pt).unwrap(), &va + &vb);
            prop_assert_eq!((&a * &b).eval(&pt).unwrap(), va * vb);
        }
    }
}

fn leibniz_char_poly(p: u64, m: &[Vec<u64>]) -> FpPoly {
    // det(xI - M) by expansion over permutations
    let n = m.len();
    let mut total = FpPoly::zero(p);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut term = FpPoly::constant(p, 1);
        for (i, &j) in perm.iter().enumerate() {
            let entry = FpPoly::constant(p, (p - m[i][j] % p) % p);
            let factor = if i == j {
                FpPoly::x(p).add(&entry)
            } else {
                entry
            };
            term = term.mul(&factor);
        }
        total = if inversions % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
        // next permutation in lexicographic order
        let Some(k) = (0..n.saturating_sub(1))
            .rev()
            .find(|&k| perm[k] < perm[k + 1])
        else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| perm[k] < perm[l]).unwrap();
        perm.swap(k, l);
        perm[k + 1..].reverse();
    }
    total
}

fn fp_matrix() -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..6).prop_flat_map(|(p, n)| {
        (
            Just(p),
            prop::collection::vec(prop::collection::vec(0..p as i64, n), n),
        )
    })
}

proptest! {
    #[test]
    fn char_poly_matches_leibniz((p, rows) in fp_matrix()) {
        let m = FpMatrix::new(p, &rows).unwrap();
        let entries: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| v as u64).collect()).collect();
        prop_assert_eq!(m.char_poly(), leibniz_char_poly(p, &entries));
    }

    #[test]
    fn degree_profile_accounts_for_dimension((p, rows) in fp_matrix()) {
        let m = FpMatrix::new(p, &rows).unwrap();
        let profile = fp_char_poly_profile(&m);
        if let Some(dp) = &profile.degree_profile {
            let total: usize = dp.iter().map(|(d, c)| d * c).sum();
            prop_assert_eq!(total, rows.len());
        } else {
            prop_assert!(profile.repeated_factor.unwrap().degree().unwrap() >= 1);
        }
    }
}
