//! Simplicial actions of finite permutation groups on finite complexes.
//!
//! A [`GComplex`] couples a [`Complex`] with a [`PermGroup`] on its vertices
//! and precomputes the induced simplex action. The action is *regular* when a
//! group element that maps a simplex onto itself fixes it vertex-wise; under
//! regularity the setwise stabilizer of an open simplex equals the pointwise
//! one and plays the role of the point stabilizer, with each open simplex
//! treated as a single point type. Regularity is obtained by barycentric
//! subdivision when it does not already hold; once regular, further
//! subdivision keeps it regular.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{Complex, ComplexError, SimplexId};
use crate::perm::{ElemId, Perm, PermGroup, SubgroupClass, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionError {
    Complex(ComplexError),
    DegreeMismatch { group_degree: usize, vertices: usize },
    /// Some group element does not map simplices to simplices.
    NotAnAction { element: ElemId, simplex: Vec<Vertex> },
    /// Operation requires a regular action.
    NotRegular,
    /// Two subdivisions failed to regularize; indicates a bug.
    RegularizationFailed,
}

impl fmt::Display for ActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionError::Complex(e) => write!(f, "{e}"),
            ActionError::DegreeMismatch {
                group_degree,
                vertices,
            } => write!(
                f,
                "group degree {group_degree} does not match vertex count {vertices}"
            ),
            ActionError::NotAnAction { element, simplex } => write!(
                f,
                "element {element} maps simplex {simplex:?} outside the complex"
            ),
            ActionError::NotRegular => write!(f, "the action is not regular"),
            ActionError::RegularizationFailed => {
                write!(f, "regularization failed after two subdivisions")
            }
        }
    }
}

impl From<ComplexError> for ActionError {
    fn from(e: ComplexError) -> Self {
        ActionError::Complex(e)
    }
}

#[derive(Clone, Debug)]
pub struct GComplex {
    complex: Complex,
    group: PermGroup,
    /// `simplex_action[g][s]` = id of `g·s`.
    simplex_action: Vec<Vec<SimplexId>>,
    regular: bool,
}

impl GComplex {
    pub fn new(complex: Complex, group: PermGroup) -> Result<GComplex, ActionError> {
        if group.degree() != complex.vertex_count() {
            return Err(ActionError::DegreeMismatch {
                group_degree: group.degree(),
                vertices: complex.vertex_count(),
            });
        }
        let mut simplex_action = Vec::with_capacity(group.order());
        for (gid, g) in group.elements().iter().enumerate() {
            let mut row = Vec::with_capacity(complex.simplex_count());
            for s in complex.simplices() {
                let image = g.apply_sorted(s);
                match complex.simplex_id(&image) {
                    Some(id) => row.push(id),
                    None => {
                        return Err(ActionError::NotAnAction {
                            element: gid,
                            simplex: s.clone(),
                        })
                    }
                }
            }
            simplex_action.push(row);
        }
        let regular = Self::regularity_holds(&complex, &group, &simplex_action);
        Ok(GComplex {
            complex,
            group,
            simplex_action,
            regular,
        })
    }

    fn regularity_holds(
        complex: &Complex,
        group: &PermGroup,
        simplex_action: &[Vec<SimplexId>],
    ) -> bool {
        for (gid, g) in group.elements().iter().enumerate() {
            for (sid, s) in complex.simplices().iter().enumerate() {
                if simplex_action[gid][sid] == sid && s.iter().any(|&v| g.apply(v) != v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn is_regular_action(&self) -> bool {
        self.regular
    }

    pub fn apply(&self, g: ElemId, s: SimplexId) -> SimplexId {
        self.simplex_action[g][s]
    }

    /// Barycentric subdivision with the induced action. The induced
    /// permutation of the new vertices is the old action on simplices.
    pub fn subdivide(&self) -> GComplex {
        let sd = self.complex.barycentric_subdivision();
        let degree = self.complex.simplex_count();
        let lift = |perm_row: &Vec<SimplexId>| -> Perm {
            Perm::from_images(perm_row.iter().map(|&i| i as Vertex).collect())
                .expect("induced map is a bijection")
        };
        let generators = self
            .group
            .generators()
            .iter()
            .map(|g| {
                let gid = self.group.elem_id(g).expect("generator is an element");
                lift(&self.simplex_action[gid])
            })
            .collect();
        let group = PermGroup::from_generators(degree, generators, self.group.order().max(1))
            .expect("induced group has the same order");
        GComplex::new(sd, group).expect("induced action is simplicial")
    }

    /// Subdivide until the action is regular. One subdivision is tried first;
    /// a second always suffices, so anything beyond that is reported as a bug.
    pub fn regularize(&self) -> Result<GComplex, ActionError> {
        if self.regular {
            return Ok(self.clone());
        }
        let once = self.subdivide();
        if once.regular {
            return Ok(once);
        }
        let twice = once.subdivide();
        if twice.regular {
            Ok(twice)
        } else {
            Err(ActionError::RegularizationFailed)
        }
    }

    /// Pointwise stabilizer of a vertex.
    pub fn vertex_stabilizer(&self, v: Vertex) -> Vec<ElemId> {
        self.group
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.apply(v) == v)
            .map(|(id, _)| id)
            .collect()
    }

    /// Stabilizer of a simplex: setwise, which under regularity is pointwise.
    pub fn simplex_stabilizer(&self, s: SimplexId) -> Result<Vec<ElemId>, ActionError> {
        if !self.regular {
            return Err(ActionError::NotRegular);
        }
        Ok((0..self.group.order())
            .filter(|&g| self.simplex_action[g][s] == s)
            .collect())
    }

    /// Orbit type of a simplex: the conjugacy class of its stabilizer.
    pub fn orbit_type(&self, s: SimplexId) -> Result<SubgroupClass, ActionError> {
        Ok(SubgroupClass::of(&self.group, &self.simplex_stabilizer(s)?))
    }

    /// Simplices fixed vertex-wise by every element of `sub`. Face-closed.
    pub fn fixed_subcomplex(&self, sub: &[ElemId]) -> Vec<SimplexId> {
        self.complex
            .simplices()
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                sub.iter()
                    .all(|&g| s.iter().all(|&v| self.group.element(g).apply(v) == v))
            })
            .map(|(id, _)| id)
            .collect()
    }

    pub fn simplex_orbit(&self, s: SimplexId) -> Vec<SimplexId> {
        let set: BTreeSet<SimplexId> = (0..self.group.order())
            .map(|g| self.simplex_action[g][s])
            .collect();
        set.into_iter().collect()
    }

    pub fn vertex_orbit(&self, v: Vertex) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self
            .group
            .elements()
            .iter()
            .map(|g| g.apply(v))
            .collect();
        set.into_iter().collect()
    }

    /// Vertex orbits, each sorted, ordered by smallest member.
    pub fn vertex_orbits(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.complex.vertex_count()];
        let mut orbits = Vec::new();
        for v in 0..self.complex.vertex_count() as Vertex {
            if !seen[v as usize] {
                let orbit = self.vertex_orbit(v);
                for &w in &orbit {
                    seen[w as usize] = true;
                }
                orbits.push(orbit);
            }
        }
        orbits
    }

    /// All elements act trivially on no vertex: every vertex stabilizer is
    /// the identity alone.
    pub fn is_free(&self) -> bool {
        self.group.elements().iter().skip(1).all(|g| {
            (0..self.complex.vertex_count() as Vertex).all(|v| g.apply(v) != v)
        })
    }

    /// Deterministic registry of the orbit types occurring among simplices.
    /// Returns (classes sorted by canonical key, class index per simplex).
    pub fn orbit_type_registry(&self) -> Result<(Vec<SubgroupClass>, Vec<usize>), ActionError> {
        if !self.regular {
            return Err(ActionError::NotRegular);
        }
        let mut stab_to_class: BTreeMap<Vec<ElemId>, SubgroupClass> = BTreeMap::new();
        let mut stabs = Vec::with_capacity(self.complex.simplex_count());
        for s in 0..self.complex.simplex_count() {
            let stab = self.simplex_stabilizer(s)?;
            stab_to_class
                .entry(stab.clone())
                .or_insert_with(|| SubgroupClass::of(&self.group, &stab));
            stabs.push(stab);
        }
        let mut keyed: BTreeMap<Vec<ElemId>, SubgroupClass> = BTreeMap::new();
        for class in stab_to_class.values() {
            keyed.insert(class.canonical_key().to_vec(), class.clone());
        }
        let classes: Vec<SubgroupClass> = keyed.into_values().collect();
        let key_index: BTreeMap<Vec<ElemId>, usize> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.canonical_key().to_vec(), i))
            .collect();
        let per_simplex = stabs
            .into_iter()
            .map(|stab| key_index[stab_to_class[&stab].canonical_key()])
            .collect();
        Ok((classes, per_simplex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_ORDER_CAP;

    pub fn square_circle_reflection() -> GComplex {
        // circle 0-1-2-3 with the reflection through the axis 0,2
        let c = Complex::from_maximal(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
            .unwrap();
        let g = PermGroup::from_generators(
            4,
            vec![Perm::from_cycles(4, &[vec![1, 3]]).unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        GComplex::new(c, g).unwrap()
    }

    pub fn hexagon(generator_cycles: &[Vec<Vertex>]) -> GComplex {
        let edges: Vec<Vec<Vertex>> = (0..6u32).map(|i| vec![i, (i + 1) % 6]).collect();
        let c = Complex::from_maximal(6, &edges).unwrap();
        let gens = if generator_cycles.is_empty() {
            Vec::new()
        } else {
            vec![Perm::from_cycles(6, generator_cycles).unwrap()]
        };
        let g = PermGroup::from_generators(6, gens, DEFAULT_ORDER_CAP).unwrap();
        GComplex::new(c, g).unwrap()
    }

    /// Exhaustive regularity oracle straight from the definition.
    fn regular_oracle(gc: &GComplex) -> bool {
        for g in gc.group().elements() {
            for s in gc.complex().simplices() {
                let image = g.apply_sorted(s);
                if image == *s && s.iter().any(|&v| g.apply(v) != v) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn trivial_group_is_regular() {
        let gc = hexagon(&[]);
        assert!(gc.is_regular_action());
        assert!(regular_oracle(&gc));
    }

    #[test]
    fn antipodal_square_rotation_is_regular() {
        // order-2 rotation of the square circle swapping opposite vertices
        let c = Complex::from_maximal(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
            .unwrap();
        let g = PermGroup::from_generators(
            4,
            vec![Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        let gc = GComplex::new(c, g).unwrap();
        assert!(gc.is_regular_action());
        assert!(regular_oracle(&gc));
    }

    #[test]
    fn edge_swap_is_the_defining_irregular_case() {
        let c = Complex::from_maximal(2, &[vec![0, 1]]).unwrap();
        let g = PermGroup::from_generators(
            2,
            vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        let gc = GComplex::new(c, g).unwrap();
        assert!(!gc.is_regular_action());
        let reg = gc.regularize().unwrap();
        assert!(reg.is_regular_action());
        assert!(regular_oracle(&reg));
    }

    #[test]
    fn regularize_returns_regular_input_unchanged() {
        let gc = hexagon(&[vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(gc.is_regular_action());
        let reg = gc.regularize().unwrap();
        assert_eq!(reg.complex().simplex_count(), gc.complex().simplex_count());
    }

    #[test]
    fn stabilizers_on_reflected_square() {
        let gc = square_circle_reflection();
        assert!(gc.is_regular_action());
        let v0 = gc.complex().vertex_simplex_id(0);
        assert_eq!(gc.simplex_stabilizer(v0).unwrap().len(), 2);
        let e01 = gc.complex().simplex_id(&[0, 1]).unwrap();
        assert_eq!(gc.simplex_stabilizer(e01).unwrap(), vec![0]);
    }

    #[test]
    fn trivial_group_has_trivial_stabilizers() {
        let gc = hexagon(&[]);
        let v = gc.complex().vertex_simplex_id(0);
        assert_eq!(gc.simplex_stabilizer(v).unwrap(), vec![0]);
    }

    #[test]
    fn fixed_subcomplex_cases() {
        // whole complex under the trivial subgroup
        let gc = square_circle_reflection();
        let all = gc.fixed_subcomplex(&[0]);
        assert_eq!(all.len(), gc.complex().simplex_count());
        // the reflection fixes exactly the two axis vertices
        let whole: Vec<ElemId> = (0..gc.group().order()).collect();
        let fixed = gc.fixed_subcomplex(&whole);
        let expected = vec![
            gc.complex().vertex_simplex_id(0),
            gc.complex().vertex_simplex_id(2),
        ];
        let mut expected = expected;
        expected.sort_unstable();
        assert_eq!(fixed, expected);
        assert!(gc.complex().is_face_closed(&fixed));
        // a free rotation fixes nothing
        let rot = hexagon(&[vec![0, 2, 4], vec![1, 3, 5]]);
        let whole: Vec<ElemId> = (0..rot.group().order()).collect();
        assert!(rot.fixed_subcomplex(&whole).is_empty());
    }

    #[test]
    fn stabilizers_conjugate_along_the_action() {
        let gc = square_circle_reflection();
        for s in 0..gc.complex().simplex_count() {
            let stab = gc.simplex_stabilizer(s).unwrap();
            for g in 0..gc.group().order() {
                let image = gc.apply(g, s);
                let conj = gc.group().conjugate_subgroup(&stab, g);
                assert_eq!(conj, gc.simplex_stabilizer(image).unwrap());
            }
        }
    }

    #[test]
    fn regularity_is_stable_under_further_subdivision() {
        let gc = square_circle_reflection().regularize().unwrap();
        assert!(gc.subdivide().is_regular_action());
    }

    #[test]
    fn fixed_subcomplex_is_invariant_under_the_normalizer() {
        // S3 on the subdivided solid triangle; H generated by one swap
        let c = Complex::from_maximal(3, &[vec![0, 1, 2]]).unwrap();
        let g = PermGroup::from_generators(
            3,
            vec![
                Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
                Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            ],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        let gc = GComplex::new(c, g).unwrap().regularize().unwrap();
        let swap_id = gc
            .group()
            .elements()
            .iter()
            .position(|p| !p.is_identity() && p.compose(p).is_identity())
            .unwrap();
        let sub = {
            let mut s = vec![gc.group().identity_id(), swap_id];
            s.sort_unstable();
            s
        };
        let fixed = gc.fixed_subcomplex(&sub);
        assert!(gc.complex().is_face_closed(&fixed));
        let sub_set: alloc::collections::BTreeSet<ElemId> = sub.iter().copied().collect();
        for g in 0..gc.group().order() {
            let normalizes = gc.group().conjugate_subgroup(&sub, g).iter().copied().collect::<alloc::collections::BTreeSet<_>>() == sub_set;
            if normalizes {
                let image: alloc::collections::BTreeSet<_> =
                    fixed.iter().map(|&s| gc.apply(g, s)).collect();
                let original: alloc::collections::BTreeSet<_> = fixed.iter().copied().collect();
                assert_eq!(image, original);
            }
        }
    }
}
