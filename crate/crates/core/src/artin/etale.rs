use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::algebra::{fp_char_poly_profile, CharPolyProfile, FpMatrix};
use crate::artin::gset::{artin_hom_rank, GSet};
use crate::artin::perm::{Perm, PermGroup};
use crate::error::{Error, Result};

/// `L = prod K_i`, encoded by the Galois group of a common splitting field
/// and one transitive set `Hom(K_i, k^sep)` per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleAlgebra {
    group: PermGroup,
    factors: Vec<GSet>,
}

impl EtaleAlgebra {
    pub fn new(group: PermGroup, factors: Vec<GSet>) -> Result<Self> {
        if let Some(k) = factors.iter().position(|f| !f.is_transitive()) {
            return Err(Error::InvalidAction(format!(
                "factor {k} is not transitive"
            )));
        }
        Ok(EtaleAlgebra { group, factors })
    }

    /// `k^m`.
    pub fn split(m: usize) -> Self {
        let group = PermGroup::trivial();
        let point = GSet::point(&group);
        EtaleAlgebra {
            factors: vec![point; m],
            group,
        }
    }

    /// `m` copies of the fixed field of `sub`.
    pub fn copies_of_quotient(group: &PermGroup, sub: &PermGroup, m: usize) -> Result<Self> {
        let factor = GSet::cosets(group, sub)?;
        Self::new(group.clone(), vec![factor; m])
    }

    /// `m` copies of the cyclic extension of degree `d`.
    pub fn copies_of_cyclic(m: usize, d: usize) -> Self {
        let group = PermGroup::cyclic(d);
        let reg = GSet::regular(&group);
        EtaleAlgebra {
            factors: vec![reg; m],
            group,
        }
    }

    /// Product of cyclic extensions of the given degrees inside the cyclic
    /// extension of degree `lcm`, as over a finite field.
    pub fn from_cyclic_degrees(degrees: &[usize]) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(Error::MalformedInput("factor degree 0".into()));
        }
        let order = degrees.iter().fold(1, |acc, &d| acc.lcm(&d));
        let group = PermGroup::cyclic(order);
        let factors = degrees
            .iter()
            .map(|&d| {
                // index-d subgroup generated by the d-th power of Frobenius
                let sub = if d == order {
                    group.trivial_subgroup()
                } else {
                    group.subgroup(vec![Perm::rotation(order, d)])?
                };
                GSet::cosets(&group, &sub)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, factors)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn factors(&self) -> &[GSet] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_degrees(&self) -> Vec<usize> {
        self.factors.iter().map(GSet::size).collect()
    }

    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(GSet::size).sum()
    }

    /// `Hom(L, k^sep)`.
    pub fn point_set(&self) -> GSet {
        let mut it = self.factors.iter();
        match it.next() {
            None => GSet::point(&self.group).copies(0),
            Some(first) => it.fold(first.clone(), |acc, f| acc.disjoint_union(f)),
        }
    }

    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|f| f.size() == 1)
    }

    /// `L = K^m` for one Galois extension `K`: every factor has a normal
    /// stabilizer and all stabilizers coincide.
    pub fn check_hypothesis(&self) -> Result<()> {
        let Some(first) = self.factors.first() else {
            return Err(Error::HypothesisFailed("L has no factors".into()));
        };
        let stab = first.stabilizer(&self.group, 0);
        for (k, f) in self.factors.iter().enumerate() {
            let s = f.stabilizer(&self.group, 0);
            if !s.is_normal_in(&self.group) {
                return Err(Error::HypothesisFailed(format!("factor {k} is not Galois")));
            }
            if s != stab {
                return Err(Error::HypothesisFailed(format!(
                    "factor {k} (degree {}) is not isomorphic to factor 0 (degree {})",
                    f.size(),
                    first.size()
                )));
            }
        }
        Ok(())
    }

    pub fn satisfies_hypothesis(&self) -> bool {
        self.check_hypothesis().is_ok()
    }
}

impl fmt::Display for EtaleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_split() {
            return write!(f, "k^{}", self.factor_count());
        }
        let degrees = self.factor_degrees();
        if self.satisfies_hypothesis() {
            let d = degrees[0];
            if degrees.len() == 1 {
                write!(f, "K with [K:k] = {d}")
            } else {
                write!(f, "K^{} with [K:k] = {d}", degrees.len())
            }
        } else {
            let parts: Vec<String> = degrees.iter().map(|d| format!("K_{d}")).collect();
            write!(f, "{} with [K_d:k] = d", parts.join(" x "))
        }
    }
}

/// Result of reading an endomorphism over `Z/p` as an étale algebra.
#[derive(Debug, Clone)]
pub struct EtaleIngestion {
    pub p: u64,
    pub algebra: EtaleAlgebra,
    pub n: usize,
    pub hypothesis_satisfied: bool,
    pub profile: CharPolyProfile,
}

impl EtaleIngestion {
    /// `F_{p^d}` when `L` is a power of one field, else `None`.
    pub fn field_name(&self) -> Option<String> {
        if !self.hypothesis_satisfied {
            return None;
        }
        let d = self.algebra.factor_degrees()[0] as u32;
        Some(format!("F_{}", (self.p as u128).pow(d)))
    }
}

/// `L = F_p[φ]` for the matrix `φ`; rejects non-squarefree characteristic
/// polynomials.
pub fn etale_from_matrix(p: u64, rows: &[Vec<i64>]) -> Result<EtaleIngestion> {
    let matrix = FpMatrix::new(p, rows)?;
    if matrix.size() < 2 {
        return Err(Error::InvalidN(matrix.size().saturating_sub(1)));
    }
    let profile = fp_char_poly_profile(&matrix);
    let degree_profile: BTreeMap<usize, usize> = match profile.require_squarefree() {
        Ok(dp) => dp.clone(),
        Err(e) => return Err(Error::NotRegularSemisimple(e.to_string())),
    };
    let degrees: Vec<usize> = degree_profile
        .iter()
        .flat_map(|(&d, &count)| std::iter::repeat_n(d, count))
        .collect();
    let algebra = EtaleAlgebra::from_cyclic_degrees(&degrees)?;
    let hypothesis_satisfied = degree_profile.len() == 1;
    debug_assert_eq!(hypothesis_satisfied, algebra.satisfies_hypothesis());
    Ok(EtaleIngestion {
        p,
        n: matrix.size() - 1,
        hypothesis_satisfied,
        algebra,
        profile,
    })
}

/// Outcome of comparing `K = (k^sep)^H` and `K' = (k^sep)^{H'}` through the
/// motives of `Y` built from `L = K^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVerdict {
    pub isomorphic: bool,
    /// `K -> K'` detected by `rank Hom(M(Spec K'), M(Spec L)) = n + 1`.
    pub embeds_a_into_b: bool,
    pub embeds_b_into_a: bool,
    pub rank_a_into_b: usize,
    pub rank_b_into_a: usize,
    /// The same verdicts read off from `H' ⊆ H` and `H ⊆ H'`.
    pub subgroup_criterion_agrees: bool,
}

pub fn recover_invariant(
    n: usize,
    group: &PermGroup,
    h: &PermGroup,
    h_prime: &PermGroup,
) -> Result<InvariantVerdict> {
    crate::error::check_n(n)?;
    for sub in [h, h_prime] {
        if !sub.is_subgroup_of(group) || !sub.is_normal_in(group) {
            return Err(Error::NotNormal);
        }
    }
    let k = GSet::cosets(group, h)?;
    let k_prime = GSet::cosets(group, h_prime)?;
    for set in [&k, &k_prime] {
        if !(n + 1).is_multiple_of(set.size()) {
            return Err(Error::MalformedInput(format!(
                "degree {} does not divide n + 1 = {}",
                set.size(),
                n + 1
            )));
        }
    }
    let l = k.copies((n + 1) / k.size());
    let l_prime = k_prime.copies((n + 1) / k_prime.size());
    let rank_a_into_b = artin_hom_rank(&k_prime, &l);
    let rank_b_into_a = artin_hom_rank(&k, &l_prime);
    let embeds_a_into_b = rank_a_into_b == n + 1;
    let embeds_b_into_a = rank_b_into_a == n + 1;
    let subgroup_criterion_agrees = embeds_a_into_b == h_prime.is_subgroup_of(h)
        && embeds_b_into_a == h.is_subgroup_of(h_prime);
    Ok(InvariantVerdict {
        isomorphic: embeds_a_into_b && embeds_b_into_a,
        embeds_a_into_b,
        embeds_b_into_a,
        rank_a_into_b,
        rank_b_into_a,
        subgroup_criterion_agrees,
    })
}

/// The groups of the exhaustive invariant-recovery check.
pub fn small_galois_groups() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("C2", PermGroup::cyclic(2)),
        ("C3", PermGroup::cyclic(3)),
        ("C4", PermGroup::cyclic(4)),
        ("C2xC2", PermGroup::klein_four()),
        ("S3", PermGroup::symmetric(3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn companion(p: i64, monic_low_first: &[i64]) -> Vec<Vec<i64>> {
        let d = monic_low_first.len() - 1;
        let mut rows = vec![vec![0i64; d]; d];
        for i in 1..d {
            rows[i][i - 1] = 1;
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row[d - 1] = (-monic_low_first[i]).rem_euclid(p);
        }
        rows
    }

    #[test]
    fn companion_of_irreducible_cubic() {
        let ing = etale_from_matrix(2, &companion(2, &[1, 1, 0, 1])).unwrap();
        assert_eq!(ing.n, 2);
        assert!(ing.hypothesis_satisfied);
        assert_eq!(ing.algebra.group().order(), 3);
        assert_eq!(ing.algebra.factor_degrees(), vec![3]);
        assert_eq!(ing.field_name().as_deref(), Some("F_8"));
    }

    #[test]
    fn diagonal_is_split() {
        let rows = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
        let ing = etale_from_matrix(5, &rows).unwrap();
        assert!(ing.hypothesis_satisfied);
        assert!(ing.algebra.is_split());
        assert_eq!(ing.algebra.total_degree(), 3);
        assert_eq!(ing.algebra.group().order(), 1);
    }

    #[test]
    fn mixed_profile_fails_hypothesis() {
        let rows = vec![vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]];
        let ing = etale_from_matrix(2, &rows).unwrap();
        assert!(!ing.hypothesis_satisfied);
        assert_eq!(ing.algebra.factor_degrees(), vec![1, 2]);
        assert!(matches!(
            ing.algebra.check_hypothesis(),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn identity_is_not_regular_semisimple() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            etale_from_matrix(3, &rows),
            Err(Error::NotRegularSemisimple(_))
        ));
    }

    #[test]
    fn c4_fields_of_degree_four_and_two() {
        let c4 = PermGroup::cyclic(4);
        let index_two = c4.subgroup(vec![Perm::rotation(4, 2)]).unwrap();
        let v = recover_invariant(3, &c4, &c4.trivial_subgroup(), &index_two).unwrap();
        assert!(!v.isomorphic);
        assert!(v.subgroup_criterion_agrees);
        assert!(v.rank_a_into_b != 4 || v.rank_b_into_a != 4);
        let same = recover_invariant(3, &c4, &index_two, &index_two).unwrap();
        assert!(same.isomorphic);
    }

    #[test]
    fn non_normal_rejected() {
        let s3 = PermGroup::symmetric(3);
        let order_two = s3
            .small_subgroups()
            .into_iter()
            .find(|h| h.order() == 2)
            .unwrap();
        assert_eq!(
            recover_invariant(5, &s3, &order_two, &s3.trivial_subgroup()),
            Err(Error::NotNormal)
        );
    }
}
