use milnor_core::artin::EtaleAlgebra;
use milnor_core::chow::{
    chern_of_e, eliminate_h, milnor_relation, motive_of_y, phi_image, rank_table, ChowBasis,
    EClass, HXiPoly,
};
use milnor_core::gkm::{class_h, class_of_ei, class_x, EqClass};
use milnor_core::localization::deg_pairing;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `Z[h1, h2] / (h1^{n+1}, h2^{n+1})` on `P^n × P^n`, dense.
#[derive(Clone, Debug, PartialEq)]
struct Biprojective {
    n: usize,
    c: Vec<Vec<BigInt>>,
}

impl Biprojective {
    fn monomial(n: usize, a: usize, b: usize) -> Self {
        let mut c = vec![vec![BigInt::zero(); n + 1]; n + 1];
        if a <= n && b <= n {
            c[a][b] = BigInt::one();
        }
        Biprojective { n, c }
    }

    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for a in 0..=self.n {
            for b in 0..=self.n {
                r.c[a][b] += &o.c[a][b];
            }
        }
        r
    }

    fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut r = Self::monomial(n, n + 1, 0);
        for a in 0..=n {
            for b in 0..=n {
                if self.c[a][b].is_zero() {
                    continue;
                }
                for a2 in 0..=n - a {
                    for b2 in 0..=n - b {
                        r.c[a + a2][b + b2] += &self.c[a][b] * &o.c[a2][b2];
                    }
                }
            }
        }
        r
    }

    fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::monomial(self.n, 0, 0), |acc, _| acc.mul(self))
    }

    fn top(&self) -> &BigInt {
        &self.c[self.n][self.n]
    }
}

/// `deg_Y h^a x^b = ∫ h1^a (h1 + h2)^{b+2}` over `P^n × P^n`.
fn degree_oracle_y(n: usize, a: usize, b: usize) -> BigInt {
    let h1 = Biprojective::monomial(n, 1, 0);
    let sum = h1.add(&Biprojective::monomial(n, 0, 1));
    h1.pow(a).mul(&sum.pow(b + 2)).top().clone()
}

/// `deg_E h^a xi^b = ∫ h1^a (h1 + h2)^{b+1}`.
fn degree_oracle_e(n: usize, a: usize, b: usize) -> BigInt {
    let h1 = Biprojective::monomial(n, 1, 0);
    let sum = h1.add(&Biprojective::monomial(n, 0, 1));
    h1.pow(a).mul(&sum.pow(b + 1)).top().clone()
}

#[test]
fn degree_table_matches_oracle() {
    for n in 1..=5usize {
        let one = EqClass::one(n);
        for a in 0..=n.min(2 * n - 2) {
            let b = 2 * n - 2 - a;
            let class = &class_h(n).unwrap().pow(a as u32) * &class_x(n).unwrap().pow(b as u32);
            assert_eq!(
                deg_pairing(&class, &one).unwrap(),
                degree_oracle_y(n, a, b),
                "n = {n}, a = {a}"
            );
        }
    }
}

#[test]
fn e_degrees_match_oracle() {
    for n in 1..=5usize {
        for a in 0..=n {
            for b in 0..=2 * n - 1 - a {
                if a + b != 2 * n - 1 {
                    continue;
                }
                let e = EClass::monomial(n, a, b).unwrap();
                assert_eq!(
                    e.degree(),
                    &degree_oracle_e(n, a, b),
                    "n = {n}, h^{a} xi^{b}"
                );
            }
        }
    }
}

/// Reduces a polynomial in `h1, h2` modulo `h1^{n+1}` and
/// `r = sum_i (-1)^i h1^i h2^{n-i}`, which is monic in `h2`.
fn reduce_h1_h2(
    n: usize,
    mut c: std::collections::BTreeMap<(usize, usize), BigInt>,
) -> Vec<(usize, usize, BigInt)> {
    let mut out = Vec::new();
    // key (h2 power, h1 power): largest h2 power first
    let mut work: std::collections::BTreeMap<(usize, usize), BigInt> = std::mem::take(&mut c)
        .into_iter()
        .map(|((a, b), v)| ((b, a), v))
        .collect();
    while let Some(((b, a), v)) = work.pop_last() {
        if v.is_zero() || a > n {
            continue;
        }
        if b < n {
            out.push((a, b, v));
            continue;
        }
        for i in 1..=n {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            *work.entry((b - i, a + i)).or_default() += &v * BigInt::from(sign);
        }
    }
    out.retain(|t| !t.2.is_zero());
    let mut merged: std::collections::BTreeMap<(usize, usize), BigInt> = Default::default();
    for (a, b, v) in out {
        *merged.entry((a, b)).or_default() += v;
    }
    merged
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((a, b), v)| (a, b, v))
        .collect()
}

fn substitute_xi(p: &HXiPoly) -> std::collections::BTreeMap<(usize, usize), BigInt> {
    // h -> h1, xi -> h1 + h2
    let mut out: std::collections::BTreeMap<(usize, usize), BigInt> = Default::default();
    for (a, b, c) in p.terms() {
        let mut binom = BigInt::one();
        for k in 0..=b {
            *out.entry((a + b - k, k)).or_default() += c * &binom;
            binom = binom * BigInt::from(b - k) / BigInt::from(k + 1);
        }
    }
    out
}

#[test]
fn relation_lies_in_the_oracle_ideal() {
    for n in 1..=5 {
        let rel = milnor_relation(n).unwrap();
        assert!(reduce_h1_h2(n, substitute_xi(&rel)).is_empty(), "n = {n}");
    }
}

#[test]
fn unsigned_relation_fails_oracle() {
    let n = 1;
    let mut wrong = HXiPoly::default();
    for (a, b, c) in milnor_relation(n).unwrap().terms() {
        wrong.add_term(a, b, c.abs());
    }
    assert!(!reduce_h1_h2(n, substitute_xi(&wrong)).is_empty());
}

#[test]
fn chern_classes_match_binomial_expansion() {
    for n in 1..=9usize {
        // (1 + h)^{n+1}, expanded by repeated multiplication
        let mut coeffs = vec![BigInt::one()];
        for _ in 0..=n {
            let mut next = vec![BigInt::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] += c;
                next[k + 1] += c;
            }
            coeffs = next;
        }
        for (i, want) in coeffs.iter().enumerate().take(n + 1) {
            assert_eq!(
                chern_of_e(n, i).unwrap().coefficient(i),
                want,
                "n = {n}, i = {i}"
            );
        }
    }
}

#[test]
fn gram_is_unimodular() {
    for n in 1..=4 {
        let basis = ChowBasis::new(n).unwrap();
        assert_eq!(basis.determinant().abs(), BigInt::one(), "n = {n}");
    }
}

fn random_product(n: usize, rng: &mut ChaCha8Rng) -> EqClass {
    let mut gens = vec![class_h(n).unwrap(), class_x(n).unwrap()];
    gens.extend((0..=n).map(|i| class_of_ei(n, i).unwrap()));
    let mut acc = EqClass::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = EqClass::one(n);
        for _ in 0..rng.gen_range(0..=3) {
            term = &term * &gens[rng.gen_range(0..gens.len())];
        }
        acc = &acc + &term.scale(&BigInt::from(rng.gen_range(-5i64..=5)));
    }
    acc
}

#[test]
fn decompose_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 1..=4 {
        let basis = ChowBasis::new(n).unwrap();
        let mut samples: Vec<EqClass> = basis.elements().iter().map(|b| b.class.clone()).collect();
        samples.extend((0..20).map(|_| random_product(n, &mut rng)));
        for gamma in samples {
            let d = basis.decompose(&gamma).unwrap();
            let diff = &gamma - &basis.recombine(&d.coords).unwrap();
            for b in basis.elements() {
                assert!(deg_pairing(&diff, &b.class).unwrap().is_zero(), "n = {n}");
            }
        }
    }
}

#[test]
fn split_ranks_sum_to_fixed_point_count() {
    for n in 1..=8 {
        let m = motive_of_y(n, &EtaleAlgebra::split(n + 1)).unwrap();
        assert_eq!(rank_table(&m, true).iter().sum::<usize>(), n * (n + 1));
        assert_eq!(rank_table(&m, true).len(), 2 * n - 1);
    }
}

#[test]
fn elimination_of_single_powers() {
    for n in 2..=4 {
        let basis = ChowBasis::new(n).unwrap();
        let zero = EClass::zero(n);
        for i in 0..=n {
            for j in 1..n {
                let mut z = vec![vec![BigInt::zero(); n]; n + 1];
                z[i][j] = BigInt::from(3);
                let (e, rest) = eliminate_h(&zero, &z).unwrap();
                assert!(rest.iter().all(Zero::is_zero));
                let want = HXiPoly::monomial(n, j - 1, BigInt::from(3));
                assert_eq!(e, EClass::from_poly(n, &want).unwrap());
                let before = basis.decompose(&phi_image(&zero, &z).unwrap()).unwrap();
                let after = basis
                    .decompose(&phi_image(&e, &vec![vec![BigInt::zero(); n]; n + 1]).unwrap())
                    .unwrap();
                assert_eq!(before, after, "n = {n}, i = {i}, j = {j}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn elimination_preserves_the_class(
        n in 1usize..=3,
        e_coeffs in prop::collection::vec(-3i64..=3, 12),
        z_coeffs in prop::collection::vec(-3i64..=3, 12),
    ) {
        let basis = ChowBasis::new(n).unwrap();
        let mut poly = HXiPoly::default();
        for (k, c) in e_coeffs.iter().enumerate() {
            poly.add_term(k % (n + 1), (k / (n + 1)) % n, BigInt::from(*c));
        }
        let e = EClass::from_poly(n, &poly).unwrap();
        let z: Vec<Vec<BigInt>> = (0..=n)
            .map(|i| (0..n).map(|j| BigInt::from(z_coeffs[(i * n + j) % z_coeffs.len()])).collect())
            .collect();
        let (e2, rest) = eliminate_h(&e, &z).unwrap();
        let rest_z: Vec<Vec<BigInt>> = rest
            .into_iter()
            .map(|b| {
                let mut v = vec![BigInt::zero(); n];
                v[0] = b;
                v
            })
            .collect();
        let before = basis.decompose(&phi_image(&e, &z).unwrap()).unwrap();
        let after = basis.decompose(&phi_image(&e2, &rest_z).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }
}
