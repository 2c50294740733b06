use crate::artin::gset::{artin_hom_rank, GSet};
use crate::artin::perm::PermGroup;
use crate::chow::{Generator, GradedMotive};
use crate::error::{Error, Result};

fn point_set(group: &PermGroup, g: &Generator) -> Result<GSet> {
    match g {
        Generator::ProjectiveSpace(_) => Ok(GSet::point(group)),
        Generator::EtalePoint(l) if l.group() == group => Ok(l.point_set()),
        Generator::EtalePoint(_) => Err(Error::InvalidAction(
            "étale algebra is not defined over the given group".into(),
        )),
    }
}

/// `#{(p, q) : p + q = k, 0 <= p <= a, 0 <= q <= b}`.
fn split_count(k: usize, a: usize, b: usize) -> usize {
    (0..=a.min(k)).filter(|&p| k - p <= b).count()
}

/// Rank of `Hom(M(X)(i), M(Y)(j)) = A^{dim X + i - j}(X × Y)`; a negative
/// index gives 0.
pub fn generator_hom_rank(
    group: &PermGroup,
    source: &Generator,
    source_twist: usize,
    target: &Generator,
    target_twist: usize,
) -> Result<usize> {
    let (a, b) = (source.dimension(), target.dimension());
    let Some(k) = (a + source_twist).checked_sub(target_twist) else {
        return Ok(0);
    };
    let count = split_count(k, a, b);
    if count == 0 {
        return Ok(0);
    }
    let orbits = artin_hom_rank(&point_set(group, source)?, &point_set(group, target)?);
    Ok(orbits * count)
}

pub fn motive_hom_rank(
    group: &PermGroup,
    source: &GradedMotive,
    target: &GradedMotive,
) -> Result<usize> {
    let mut total = 0;
    for s in source.summands() {
        for t in target.summands() {
            total += generator_hom_rank(group, &s.generator, s.twist, &t.generator, t.twist)?;
        }
    }
    Ok(total)
}
