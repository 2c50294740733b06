use std::collections::BTreeMap;

use crate::artin::perm::{Perm, PermGroup};
use crate::error::{Error, Result};

/// Finite set with a left action of a [`PermGroup`]. The action of every
/// group element is stored, indexed like `group.elements()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSet {
    size: usize,
    generator_images: Vec<Perm>,
    table: Vec<Perm>,
}

impl GSet {
    /// Action given by the images of the group's generators. Fails unless
    /// the images define a homomorphism from the group.
    pub fn new(group: &PermGroup, size: usize, generator_images: Vec<Perm>) -> Result<Self> {
        if generator_images.len() != group.generators().len() {
            return Err(Error::InvalidAction(format!(
                "{} generator images for {} generators",
                generator_images.len(),
                group.generators().len()
            )));
        }
        if generator_images.iter().any(|p| p.degree() != size) {
            return Err(Error::InvalidAction(format!(
                "image does not act on {size} points"
            )));
        }
        let elements = group.elements();
        let mut table: Vec<Option<Perm>> = vec![None; elements.len()];
        let id = group
            .index_of(&group.identity())
            .expect("identity is an element");
        table[id] = Some(Perm::identity(size));
        let mut stack = vec![id];
        while let Some(k) = stack.pop() {
            let here = table[k].clone().expect("visited");
            for (s, img) in group.generators().iter().zip(&generator_images) {
                let target = group.index_of(&s.compose(&elements[k])).expect("closed");
                let action = img.compose(&here);
                match &table[target] {
                    None => {
                        table[target] = Some(action);
                        stack.push(target);
                    }
                    Some(existing) if *existing != action => {
                        return Err(Error::InvalidAction(format!(
                            "group element {:?} acts inconsistently",
                            elements[target]
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(GSet {
            size,
            generator_images,
            table: table.into_iter().map(|p| p.expect("generated")).collect(),
        })
    }

    /// Left cosets `gH` with `Γ` acting by left multiplication.
    pub fn cosets(group: &PermGroup, sub: &PermGroup) -> Result<Self> {
        if !sub.is_subgroup_of(group) {
            return Err(Error::InvalidAction("not a subgroup".into()));
        }
        let mut index: BTreeMap<Vec<Perm>, usize> = BTreeMap::new();
        let mut of_element = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut coset: Vec<Perm> = sub.elements().iter().map(|h| g.compose(h)).collect();
            coset.sort();
            let next = index.len();
            of_element.push(*index.entry(coset).or_insert(next));
        }
        let size = index.len();
        let images = group
            .generators()
            .iter()
            .map(|s| {
                let mut img = vec![usize::MAX; size];
                for (k, g) in group.elements().iter().enumerate() {
                    let t = group.index_of(&s.compose(g)).expect("closed");
                    img[of_element[k]] = of_element[t];
                }
                Perm::new(img)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, size, images)
    }

    pub fn regular(group: &PermGroup) -> Self {
        Self::cosets(group, &group.trivial_subgroup()).expect("trivial subgroup")
    }

    pub fn point(group: &PermGroup) -> Self {
        Self::trivial_action(group, 1)
    }

    pub fn trivial_action(group: &PermGroup, size: usize) -> Self {
        let images = vec![Perm::identity(size); group.generators().len()];
        Self::new(group, size, images).expect("trivial action")
    }

    /// Diagonal action on `self × other`, point `(a, b)` at `a * other.size + b`.
    pub fn product(&self, other: &GSet) -> GSet {
        let combine = |p: &Perm, q: &Perm| {
            let mut img = Vec::with_capacity(self.size * other.size);
            for a in 0..self.size {
                for b in 0..other.size {
                    img.push(p.apply(a) * other.size + q.apply(b));
                }
            }
            Perm::new(img).expect("product of bijections")
        };
        GSet {
            size: self.size * other.size,
            generator_images: self
                .generator_images
                .iter()
                .zip(&other.generator_images)
                .map(|(p, q)| combine(p, q))
                .collect(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(p, q)| combine(p, q))
                .collect(),
        }
    }

    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        let combine = |p: &Perm, q: &Perm| {
            let img = p
                .images()
                .iter()
                .copied()
                .chain(q.images().iter().map(|&y| y + self.size))
                .collect();
            Perm::new(img).expect("union of bijections")
        };
        GSet {
            size: self.size + other.size,
            generator_images: self
                .generator_images
                .iter()
                .zip(&other.generator_images)
                .map(|(p, q)| combine(p, q))
                .collect(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(p, q)| combine(p, q))
                .collect(),
        }
    }

    /// `copies` disjoint copies; `copies = 0` gives the empty set.
    pub fn copies(&self, copies: usize) -> GSet {
        let empty = GSet {
            size: 0,
            generator_images: vec![Perm::identity(0); self.generator_images.len()],
            table: vec![Perm::identity(0); self.table.len()],
        };
        (0..copies).fold(empty, |acc, _| acc.disjoint_union(self))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.generator_images
    }

    /// Action of `group.elements()[element]`.
    pub fn action_of(&self, element: usize) -> &Perm {
        &self.table[element]
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && orbit_count(self) == 1
    }

    pub fn stabilizer(&self, group: &PermGroup, point: usize) -> PermGroup {
        let gens = group
            .elements()
            .iter()
            .zip(&self.table)
            .filter(|(g, act)| act.apply(point) == point && !g.is_identity())
            .map(|(g, _)| g.clone())
            .collect();
        group
            .subgroup(gens)
            .expect("stabilizer elements lie in the group")
    }
}

/// Number of orbits, by flood fill along generator images.
pub fn orbit_count(set: &GSet) -> usize {
    let mut seen = vec![false; set.size];
    let mut orbits = 0;
    for start in 0..set.size {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in &set.generator_images {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    orbits
}

/// Orbit count as the average number of fixed points.
pub fn burnside_count(set: &GSet) -> usize {
    let total: usize = set.table.iter().map(Perm::fixed_points).sum();
    assert_eq!(
        total % set.table.len(),
        0,
        "Burnside average must be integral"
    );
    total / set.table.len()
}

/// Orbits of the diagonal action on `a × b`.
pub fn artin_hom_rank(a: &GSet, b: &GSet) -> usize {
    orbit_count(&a.product(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_examples() {
        let c2 = PermGroup::cyclic(2);
        let reg = GSet::regular(&c2);
        assert_eq!(orbit_count(&reg), 1);
        assert_eq!(orbit_count(&reg.product(&reg)), 2);
        assert_eq!(artin_hom_rank(&reg, &reg), 2);
        let triv = PermGroup::trivial();
        assert_eq!(orbit_count(&GSet::trivial_action(&triv, 5)), 5);
    }

    #[test]
    fn theorem_scenario_rank() {
        // m copies of the regular set of size d
        for (m, d) in [(1, 3), (2, 2), (3, 1), (2, 3), (1, 5)] {
            let g = PermGroup::cyclic(d);
            let reg = GSet::regular(&g);
            assert_eq!(artin_hom_rank(&reg, &reg.copies(m)), m * d);
        }
    }

    #[test]
    fn point_target() {
        let s3 = PermGroup::symmetric(3);
        let a = GSet::regular(&s3).disjoint_union(&GSet::point(&s3));
        assert_eq!(artin_hom_rank(&a, &GSet::point(&s3)), orbit_count(&a));
        assert_eq!(orbit_count(&a), 2);
    }

    #[test]
    fn cosets_of_s3() {
        let s3 = PermGroup::symmetric(3);
        for h in s3.small_subgroups() {
            let set = GSet::cosets(&s3, &h).unwrap();
            assert_eq!(set.size() * h.order(), 6);
            assert!(set.is_transitive());
            assert_eq!(burnside_count(&set), 1);
        }
    }

    #[test]
    fn inconsistent_action_rejected() {
        // C4's generator cannot act as a 3-cycle
        let c4 = PermGroup::cyclic(4);
        let bad = Perm::new(vec![1, 2, 0]).unwrap();
        assert!(matches!(
            GSet::new(&c4, 3, vec![bad]),
            Err(Error::InvalidAction(_))
        ));
        let ok = Perm::new(vec![1, 0, 2]).unwrap();
        assert!(GSet::new(&c4, 3, vec![ok]).is_ok());
    }

    #[test]
    fn stabilizer_of_coset_point() {
        let c4 = PermGroup::cyclic(4);
        let h = c4.subgroup(vec![Perm::rotation(4, 2)]).unwrap();
        let set = GSet::cosets(&c4, &h).unwrap();
        assert_eq!(set.size(), 2);
        assert_eq!(set.stabilizer(&c4, 0), h);
    }
}
