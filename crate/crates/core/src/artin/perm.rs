use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Permutation of `{0..N-1}`, acting on the left: `(p * q)(x) = p(q(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v >= images.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidAction(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    /// `x -> x + shift mod degree`.
    pub fn rotation(degree: usize, shift: usize) -> Self {
        Perm((0..degree).map(|x| (x + shift) % degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(x, y)| x == *y).count()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Permutation group given by generators; elements are enumerated lazily.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: OnceLock<Vec<Perm>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidAction(format!(
                "generator {g:?} does not act on {degree} points"
            )));
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        })
    }

    pub fn trivial() -> Self {
        Self::new(1, Vec::new()).expect("valid")
    }

    pub fn cyclic(order: usize) -> Self {
        let order = order.max(1);
        let gens = if order == 1 {
            Vec::new()
        } else {
            vec![Perm::rotation(order, 1)]
        };
        Self::new(order, gens).expect("valid")
    }

    /// `C2 x C2` acting regularly on four points.
    pub fn klein_four() -> Self {
        let a = Perm(vec![1, 0, 3, 2]);
        let b = Perm(vec![2, 3, 0, 1]);
        Self::new(4, vec![a, b]).expect("valid")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            gens.push(Perm(swap));
        }
        if degree >= 3 {
            gens.push(Perm::rotation(degree, 1));
        }
        Self::new(degree.max(1), gens).expect("valid")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// Sorted list of elements, computed once.
    pub fn elements(&self) -> &[Perm] {
        self.elements.get_or_init(|| {
            let mut seen = BTreeSet::from([self.identity()]);
            let mut queue = VecDeque::from([self.identity()]);
            while let Some(g) = queue.pop_front() {
                for s in &self.generators {
                    let h = s.compose(&g);
                    if seen.insert(h.clone()) {
                        queue.push_back(h);
                    }
                }
            }
            seen.into_iter().collect()
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements().binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements().binary_search(p).ok()
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::InvalidAction(format!("{g:?} is not in the group")));
        }
        PermGroup::new(self.degree, gens)
    }

    pub fn trivial_subgroup(&self) -> PermGroup {
        PermGroup::new(self.degree, Vec::new()).expect("valid")
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Normal in `ambient`: closed under conjugation by ambient generators.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.generators.iter().all(|g| {
                let g_inv = g.inverse();
                self.generators
                    .iter()
                    .all(|h| self.contains(&g.compose(h).compose(&g_inv)))
            })
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.elements() == other.elements()
    }

    /// All subgroups generated by at most two elements, deduplicated.
    /// This is every subgroup for groups of order below 8.
    pub fn small_subgroups(&self) -> Vec<PermGroup> {
        let elems = self.elements();
        let mut found: Vec<PermGroup> = Vec::new();
        let mut push = |g: PermGroup| {
            if !found.iter().any(|f| f.same_elements(&g)) {
                found.push(g);
            }
        };
        push(self.trivial_subgroup());
        for (k, a) in elems.iter().enumerate() {
            for b in &elems[k..] {
                let gens: Vec<Perm> = [a, b]
                    .into_iter()
                    .filter(|p| !p.is_identity())
                    .cloned()
                    .collect();
                push(PermGroup::new(self.degree, gens).expect("members of the group"));
            }
        }
        found.sort_by_key(PermGroup::order);
        found
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.same_elements(other)
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}
