use std::fmt;

use crate::artin::EtaleAlgebra;
use crate::error::{check_n, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// `M(P^n)`.
    ProjectiveSpace(usize),
    /// `M(Spec L)`.
    EtalePoint(EtaleAlgebra),
}

impl Generator {
    pub fn dimension(&self) -> usize {
        match self {
            Generator::ProjectiveSpace(n) => *n,
            Generator::EtalePoint(_) => 0,
        }
    }

    fn sort_key(&self) -> (usize, usize) {
        match self {
            Generator::ProjectiveSpace(n) => (0, *n),
            Generator::EtalePoint(l) => (1, l.total_degree()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub generator: Generator,
    pub twist: usize,
}

/// Direct sum of twisted generators, kept sorted by twist.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedMotive {
    summands: Vec<Summand>,
}

impl GradedMotive {
    pub fn new(mut summands: Vec<Summand>) -> Self {
        summands.sort_by_key(|s| (s.twist, s.generator.sort_key()));
        GradedMotive { summands }
    }

    pub fn tate(twist: usize) -> Self {
        Self::new(vec![Summand {
            generator: Generator::ProjectiveSpace(0),
            twist,
        }])
    }

    pub fn of_etale(l: EtaleAlgebra, twist: usize) -> Self {
        Self::new(vec![Summand {
            generator: Generator::EtalePoint(l),
            twist,
        }])
    }

    pub fn of_projective_space(n: usize, twist: usize) -> Self {
        Self::new(vec![Summand {
            generator: Generator::ProjectiveSpace(n),
            twist,
        }])
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Highest codimension carrying a nonzero Chow group.
    pub fn top_degree(&self) -> Option<usize> {
        self.summands
            .iter()
            .map(|s| s.twist + s.generator.dimension())
            .max()
    }
}

impl fmt::Display for GradedMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(f, "L")
    }
}

impl GradedMotive {
    pub fn display_named(&self, etale_name: &str) -> String {
        struct Named<'a>(&'a GradedMotive, &'a str);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.display_with(f, self.1)
            }
        }
        Named(self, etale_name).to_string()
    }

    fn display_with(&self, f: &mut fmt::Formatter<'_>, etale_name: &str) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                let base = match &s.generator {
                    Generator::ProjectiveSpace(0) => "Z".to_string(),
                    Generator::ProjectiveSpace(n) => format!("M(P^{n})"),
                    Generator::EtalePoint(_) => format!("M(Spec {etale_name})"),
                };
                if s.twist == 0 {
                    base
                } else {
                    format!("{base}({})", s.twist)
                }
            })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// `M(Y) = ⊕_{i=0}^{n-2} M(P^n)(i) ⊕ M(Spec L)(n-1)`.
pub fn motive_of_y(n: usize, l: &EtaleAlgebra) -> Result<GradedMotive> {
    check_n(n)?;
    l.check_hypothesis()?;
    if l.total_degree() != n + 1 {
        return Err(Error::HypothesisFailed(format!(
            "L has degree {} but n + 1 = {}",
            l.total_degree(),
            n + 1
        )));
    }
    let mut summands: Vec<Summand> = (0..n - 1)
        .map(|i| Summand {
            generator: Generator::ProjectiveSpace(n),
            twist: i,
        })
        .collect();
    summands.push(Summand {
        generator: Generator::EtalePoint(l.clone()),
        twist: n - 1,
    });
    Ok(GradedMotive::new(summands))
}

/// Ranks of `A^k` for `k = 0..=top_degree`. An étale point counts its
/// factors over the base and its degree after splitting.
pub fn rank_table(m: &GradedMotive, after_split: bool) -> Vec<usize> {
    let Some(top) = m.top_degree() else {
        return Vec::new();
    };
    let mut ranks = vec![0; top + 1];
    for s in m.summands() {
        match &s.generator {
            Generator::ProjectiveSpace(d) => {
                for r in &mut ranks[s.twist..=s.twist + d] {
                    *r += 1;
                }
            }
            Generator::EtalePoint(l) => {
                ranks[s.twist] += if after_split {
                    l.total_degree()
                } else {
                    l.factor_count()
                };
            }
        }
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = motive_of_y(2, &EtaleAlgebra::split(3)).unwrap();
        assert_eq!(m.to_string(), "M(P^2) ⊕ M(Spec L)(1)");
        assert_eq!(rank_table(&m, true), vec![1, 4, 1]);
        assert_eq!(rank_table(&m, false), vec![1, 4, 1]);

        let cubic = EtaleAlgebra::copies_of_cyclic(1, 3);
        let m = motive_of_y(2, &cubic).unwrap();
        assert_eq!(rank_table(&m, false), vec![1, 2, 1]);
        assert_eq!(rank_table(&m, true), vec![1, 4, 1]);

        let quad = EtaleAlgebra::copies_of_cyclic(1, 2);
        assert_eq!(motive_of_y(1, &quad).unwrap().to_string(), "M(Spec L)");

        let kk = EtaleAlgebra::copies_of_cyclic(2, 2);
        let m = motive_of_y(3, &kk).unwrap();
        assert_eq!(m.to_string(), "M(P^3) ⊕ M(P^3)(1) ⊕ M(Spec L)(2)");
        assert_eq!(rank_table(&m, false), vec![1, 2, 4, 2, 1]);
        assert_eq!(rank_table(&m, true), vec![1, 2, 6, 2, 1]);
    }

    #[test]
    fn hypothesis_enforced() {
        let mixed = EtaleAlgebra::from_cyclic_degrees(&[1, 2]).unwrap();
        assert!(matches!(
            motive_of_y(2, &mixed),
            Err(Error::HypothesisFailed(_))
        ));
        assert!(matches!(
            motive_of_y(3, &EtaleAlgebra::split(3)),
            Err(Error::HypothesisFailed(_))
        ));
    }
}
