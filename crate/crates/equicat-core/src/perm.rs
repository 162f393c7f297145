//! Finite permutation groups on `0..degree`, enumerated from generators.
//!
//! Groups are stored as the full sorted element list (orders at desk scale are
//! small; enumeration is capped). Element ids are indices into that list, so
//! id-level comparisons agree with lexicographic comparisons of the underlying
//! permutations — canonical keys built from sorted id lists are deterministic
//! across runs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Vertex index; complexes use dense indices `0..degree`.
pub type Vertex = u32;

/// Index of a group element inside [`PermGroup::elements`].
pub type ElemId = usize;

/// Default cap on the order of an enumerated group.
pub const DEFAULT_ORDER_CAP: usize = 10_080;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    /// The image list is not a bijection of `0..degree`.
    InvalidPermutation { detail: &'static str },
    /// Enumeration from the generators exceeded the order cap.
    OrderCapExceeded { cap: usize },
    /// A permutation of the wrong degree was mixed in.
    DegreeMismatch { expected: usize, got: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::InvalidPermutation { detail } => {
                write!(f, "invalid permutation: {detail}")
            }
            GroupError::OrderCapExceeded { cap } => {
                write!(f, "group order exceeds the enumeration cap {cap}")
            }
            GroupError::DegreeMismatch { expected, got } => {
                write!(f, "permutation degree mismatch: expected {expected}, got {got}")
            }
        }
    }
}

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<Vertex>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as Vertex).collect(),
        }
    }

    /// Build from an image list, validating bijectivity.
    pub fn from_images(images: Vec<Vertex>) -> Result<Perm, GroupError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &v in &images {
            if (v as usize) >= d {
                return Err(GroupError::InvalidPermutation {
                    detail: "image out of range",
                });
            }
            if seen[v as usize] {
                return Err(GroupError::InvalidPermutation {
                    detail: "repeated image",
                });
            }
            seen[v as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Build from disjoint-or-not cycles; entries must be `< degree`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<Vertex>]) -> Result<Perm, GroupError> {
        let mut images: Vec<Vertex> = (0..degree as Vertex).collect();
        for cycle in cycles {
            for &v in cycle {
                if (v as usize) >= degree {
                    return Err(GroupError::InvalidPermutation {
                        detail: "cycle entry out of range",
                    });
                }
            }
            let mut distinct = BTreeSet::new();
            if !cycle.iter().all(|v| distinct.insert(*v)) {
                return Err(GroupError::InvalidPermutation {
                    detail: "repeated entry inside one cycle",
                });
            }
            // compose the cycle on the left of what is already there
            let prev = images.clone();
            for i in 0..cycle.len() {
                let from = cycle[i];
                let to = cycle[(i + 1) % cycle.len()];
                for slot in images.iter_mut().zip(prev.iter()) {
                    if *slot.1 == from {
                        *slot.0 = to;
                    }
                }
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.images[v as usize]
    }

    pub fn images(&self) -> &[Vertex] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (v, &gv) in self.images.iter().enumerate() {
            images[gv as usize] = v as Vertex;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &gv)| v as Vertex == gv)
    }

    /// Image of a sorted vertex list, re-sorted.
    pub fn apply_sorted(&self, simplex: &[Vertex]) -> Vec<Vertex> {
        let mut image: Vec<Vertex> = simplex.iter().map(|&v| self.apply(v)).collect();
        image.sort_unstable();
        image
    }
}

/// A finite permutation group: the closure of its generators, fully enumerated.
///
/// `elements` is sorted lexicographically, so `elements[0]` is the identity
/// and element ids order-embed the permutations themselves.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<Perm>,
    inverses: Vec<ElemId>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new(), DEFAULT_ORDER_CAP)
            .expect("trivial group enumerates")
    }

    /// Enumerate the group generated by `generators`, failing above `cap`.
    pub fn from_generators(
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<PermGroup, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        seen.insert(Perm::identity(degree));
        let mut queue: Vec<Perm> = seen.iter().cloned().collect();
        while let Some(p) = queue.pop() {
            for g in &generators {
                let q = g.compose(&p);
                if !seen.contains(&q) {
                    if seen.len() + 1 > cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    seen.insert(q.clone());
                    queue.push(q);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_iter().collect();
        let index: BTreeMap<&Perm, ElemId> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        Ok(PermGroup {
            degree,
            elements,
            generators,
            inverses,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn element(&self, id: ElemId) -> &Perm {
        &self.elements[id]
    }

    pub fn identity_id(&self) -> ElemId {
        0
    }

    pub fn elem_id(&self, p: &Perm) -> Option<ElemId> {
        self.elements.binary_search_by(|e| e.cmp(p)).ok()
    }

    pub fn inverse_id(&self, id: ElemId) -> ElemId {
        self.inverses[id]
    }

    pub fn compose_ids(&self, a: ElemId, b: ElemId) -> ElemId {
        let p = self.elements[a].compose(&self.elements[b]);
        self.elem_id(&p).expect("closure")
    }

    /// Conjugate `sub` (sorted element ids) by the element `g`.
    pub fn conjugate_subgroup(&self, sub: &[ElemId], g: ElemId) -> Vec<ElemId> {
        let ginv = self.inverse_id(g);
        let mut out: Vec<ElemId> = sub
            .iter()
            .map(|&h| self.compose_ids(self.compose_ids(g, h), ginv))
            .collect();
        out.sort_unstable();
        out
    }

    /// All conjugates of `sub`, as a sorted set of sorted id lists.
    pub fn conjugacy_class(&self, sub: &[ElemId]) -> BTreeSet<Vec<ElemId>> {
        (0..self.order())
            .map(|g| self.conjugate_subgroup(sub, g))
            .collect()
    }
}

/// The conjugacy class of a subgroup: an orbit type.
///
/// The canonical key is the lexicographically minimal sorted element-id list
/// over all conjugates, which gives a run-independent identity for strata.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubgroupClass {
    representative: Vec<ElemId>,
    members: BTreeSet<Vec<ElemId>>,
}

impl SubgroupClass {
    pub fn of(group: &PermGroup, sub: &[ElemId]) -> SubgroupClass {
        let members = group.conjugacy_class(sub);
        SubgroupClass {
            representative: sub.to_vec(),
            members,
        }
    }

    pub fn representative(&self) -> &[ElemId] {
        &self.representative
    }

    pub fn members(&self) -> &BTreeSet<Vec<ElemId>> {
        &self.members
    }

    /// Lexicographically minimal conjugate: the class key.
    pub fn canonical_key(&self) -> &[ElemId] {
        self.members.iter().next().expect("class is nonempty")
    }

    pub fn subgroup_order(&self) -> usize {
        self.representative.len()
    }

    /// Orbit-type order: `self ≤ other` iff some conjugate of `other`'s
    /// subgroup is contained in `self`'s representative. Smaller orbit type
    /// means bigger stabilizer; the class of the full group is the minimum.
    pub fn type_leq(&self, other: &SubgroupClass) -> bool {
        let rep: BTreeSet<ElemId> = self.representative.iter().copied().collect();
        other
            .members
            .iter()
            .any(|conj| conj.iter().all(|h| rep.contains(h)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::from_generators(
            3,
            vec![
                Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
                Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            ],
            DEFAULT_ORDER_CAP,
        )
        .unwrap()
    }

    /// Independent closure oracle: repeated pairwise products to a fixpoint.
    fn closure_order_oracle(degree: usize, gens: &[Perm]) -> usize {
        let mut set: BTreeSet<Perm> = BTreeSet::new();
        set.insert(Perm::identity(degree));
        for g in gens {
            set.insert(g.clone());
        }
        loop {
            let mut next = set.clone();
            for a in &set {
                for b in &set {
                    next.insert(a.compose(b));
                }
            }
            if next.len() == set.len() {
                return set.len();
            }
            set = next;
        }
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermGroup::from_generators(3, vec![], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn three_cycle_generates_order_three() {
        let g = PermGroup::from_generators(
            3,
            vec![Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()],
            10,
        )
        .unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn transposition_and_four_cycle_generate_s4() {
        let gens = vec![
            Perm::from_cycles(4, &[vec![0, 1]]).unwrap(),
            Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
        ];
        let expected = closure_order_oracle(4, &gens);
        assert_eq!(expected, 24);
        let g = PermGroup::from_generators(4, gens, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), expected);
    }

    #[test]
    fn order_cap_is_enforced() {
        let gens = vec![
            Perm::from_cycles(4, &[vec![0, 1]]).unwrap(),
            Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
        ];
        let err = PermGroup::from_generators(4, gens, 10).unwrap_err();
        assert_eq!(err, GroupError::OrderCapExceeded { cap: 10 });
    }

    #[test]
    fn malformed_permutations_are_rejected() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 3]]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 0]]).is_err());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let swap = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let p = swap.compose(&rot);
        // rot sends 0 to 1, swap sends 1 to 0
        assert_eq!(p.apply(0), 0);
        assert_eq!(p.apply(1), 2);
    }

    #[test]
    fn conjugate_transposition_subgroups_share_one_class() {
        let g = s3();
        let t01 = g
            .elem_id(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let t02 = g
            .elem_id(&Perm::from_cycles(3, &[vec![0, 2]]).unwrap())
            .unwrap();
        let id = g.identity_id();
        let mut a = vec![id, t01];
        let mut b = vec![id, t02];
        a.sort_unstable();
        b.sort_unstable();
        let ca = SubgroupClass::of(&g, &a);
        let cb = SubgroupClass::of(&g, &b);
        assert_eq!(ca.canonical_key(), cb.canonical_key());
        assert!(ca.type_leq(&cb) && cb.type_leq(&ca));
    }

    #[test]
    fn type_order_has_full_group_as_minimum() {
        let g = s3();
        let whole: Vec<ElemId> = (0..g.order()).collect();
        let trivial = vec![g.identity_id()];
        let cw = SubgroupClass::of(&g, &whole);
        let ct = SubgroupClass::of(&g, &trivial);
        assert!(cw.type_leq(&ct));
        assert!(!ct.type_leq(&cw));
        assert!(cw.type_leq(&cw) && ct.type_leq(&ct));
    }
}
