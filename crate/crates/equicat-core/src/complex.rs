//! Finite abstract simplicial complexes over dense vertex indices.
//!
//! Simplices are sorted vertex lists; the complex stores every simplex
//! (all dimensions) in one lexicographically sorted table, so simplex ids are
//! deterministic and stable for a given complex.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Vertex;

/// Index into the sorted simplex table of a [`Complex`].
pub type SimplexId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    EmptySimplex,
    VertexOutOfRange { vertex: Vertex, count: usize },
    RepeatedVertex { simplex: Vec<Vertex> },
    NotFaceClosed { missing: Vec<Vertex> },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::EmptySimplex => write!(f, "empty simplex"),
            ComplexError::VertexOutOfRange { vertex, count } => {
                write!(f, "vertex {vertex} out of range 0..{count}")
            }
            ComplexError::RepeatedVertex { simplex } => {
                write!(f, "repeated vertex in simplex {simplex:?}")
            }
            ComplexError::NotFaceClosed { missing } => {
                write!(f, "missing face {missing:?}")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    vertex_count: usize,
    simplices: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Complex({} vertices, {} simplices)",
            self.vertex_count,
            self.simplices.len()
        )
    }
}

fn sorted_distinct(simplex: &[Vertex]) -> Result<Vec<Vertex>, ComplexError> {
    if simplex.is_empty() {
        return Err(ComplexError::EmptySimplex);
    }
    let mut s = simplex.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(ComplexError::RepeatedVertex {
            simplex: simplex.to_vec(),
        });
    }
    Ok(s)
}

/// All nonempty proper subsets of a sorted vertex list.
pub fn proper_faces(simplex: &[Vertex]) -> Vec<Vec<Vertex>> {
    let k = simplex.len();
    let mut out = Vec::new();
    for mask in 1u32..((1u32 << k) - 1) {
        let face: Vec<Vertex> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| simplex[i])
            .collect();
        out.push(face);
    }
    out
}

impl Complex {
    /// Build from generating simplices, closing under faces.
    pub fn from_maximal(
        vertex_count: usize,
        generators: &[Vec<Vertex>],
    ) -> Result<Complex, ComplexError> {
        let mut set: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        for s in generators {
            let s = sorted_distinct(s)?;
            for &v in &s {
                if (v as usize) >= vertex_count {
                    return Err(ComplexError::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
            for face in proper_faces(&s) {
                set.insert(face);
            }
            set.insert(s);
        }
        Ok(Complex {
            vertex_count,
            simplices: set.into_iter().collect(),
        })
    }

    /// Build from an explicit simplex list, validating face closure.
    pub fn from_simplices(
        vertex_count: usize,
        simplices: &[Vec<Vertex>],
    ) -> Result<Complex, ComplexError> {
        let closed = Complex::from_maximal(vertex_count, simplices)?;
        let given: BTreeSet<Vec<Vertex>> = simplices
            .iter()
            .map(|s| sorted_distinct(s))
            .collect::<Result<_, _>>()?;
        for s in &closed.simplices {
            if !given.contains(s) {
                return Err(ComplexError::NotFaceClosed { missing: s.clone() });
            }
        }
        Ok(closed)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self) -> &[Vec<Vertex>] {
        &self.simplices
    }

    pub fn simplex(&self, id: SimplexId) -> &[Vertex] {
        &self.simplices[id]
    }

    pub fn dim(&self, id: SimplexId) -> usize {
        self.simplices[id].len() - 1
    }

    pub fn simplex_id(&self, sorted: &[Vertex]) -> Option<SimplexId> {
        self.simplices
            .binary_search_by(|s| s.as_slice().cmp(sorted))
            .ok()
    }

    pub fn vertex_simplex_id(&self, v: Vertex) -> SimplexId {
        self.simplex_id(&[v]).expect("vertex simplices exist")
    }

    pub fn contains(&self, sorted: &[Vertex]) -> bool {
        self.simplex_id(sorted).is_some()
    }

    /// Counts per dimension, `counts[d]` = number of d-simplices.
    pub fn face_vector(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for s in &self.simplices {
            let d = s.len() - 1;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        counts
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.simplices
            .iter()
            .filter(|s| s.len() == 2)
            .map(|s| (s[0], s[1]))
    }

    /// Neighbors of `v` in the 1-skeleton, ascending.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// Ids of all proper faces of `id` that exist in the complex (all of them do).
    pub fn face_ids(&self, id: SimplexId) -> Vec<SimplexId> {
        proper_faces(self.simplex(id))
            .iter()
            .map(|f| self.simplex_id(f).expect("face closure"))
            .collect()
    }

    /// Connected components of a simplex subset under face incidence:
    /// two members are related when one is a face of the other.
    pub fn incidence_components(&self, subset: &[SimplexId]) -> Vec<Vec<SimplexId>> {
        let member: BTreeSet<SimplexId> = subset.iter().copied().collect();
        let mut uf = UnionFind::new(self.simplices.len());
        for &id in subset {
            for fid in self.face_ids(id) {
                if member.contains(&fid) {
                    uf.union(id, fid);
                }
            }
        }
        let mut comps: alloc::collections::BTreeMap<usize, Vec<SimplexId>> =
            alloc::collections::BTreeMap::new();
        for &id in subset {
            comps.entry(uf.find(id)).or_default().push(id);
        }
        comps
            .into_values()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Is the subset closed under taking faces?
    pub fn is_face_closed(&self, subset: &[SimplexId]) -> bool {
        let member: BTreeSet<SimplexId> = subset.iter().copied().collect();
        subset
            .iter()
            .all(|&id| self.face_ids(id).iter().all(|f| member.contains(f)))
    }

    /// Is the subset full: every simplex all of whose vertices appear in the
    /// subset's vertex set is itself a member?
    pub fn is_full(&self, subset: &[SimplexId]) -> Option<SimplexId> {
        let member: BTreeSet<SimplexId> = subset.iter().copied().collect();
        let mut vertices: BTreeSet<Vertex> = BTreeSet::new();
        for &id in subset {
            vertices.extend(self.simplex(id).iter().copied());
        }
        for (id, s) in self.simplices.iter().enumerate() {
            if s.iter().all(|v| vertices.contains(v)) && !member.contains(&id) {
                return Some(id);
            }
        }
        None
    }

    /// The full subcomplex induced by a vertex set, as sorted simplex ids.
    pub fn induced_subcomplex(&self, vertices: &BTreeSet<Vertex>) -> Vec<SimplexId> {
        self.simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().all(|v| vertices.contains(v)))
            .map(|(id, _)| id)
            .collect()
    }

    /// Barycentric subdivision. New vertex `i` sits at old simplex `i`;
    /// new simplices are the flags (chains) of the old face poset.
    /// Returns the subdivided complex (new vertex `i` corresponds to old
    /// simplex id `i`, so the correspondence needs no side table).
    pub fn barycentric_subdivision(&self) -> Complex {
        // every chain is enumerated once, headed by its maximal element and
        // extended by proper faces of the element pushed last
        fn extend(
            complex: &Complex,
            chain: &mut Vec<SimplexId>,
            chains: &mut BTreeSet<Vec<Vertex>>,
        ) {
            let mut as_vertices: Vec<Vertex> = chain.iter().map(|&i| i as Vertex).collect();
            as_vertices.sort_unstable();
            chains.insert(as_vertices);
            let last = *chain.last().expect("nonempty chain");
            for fid in complex.face_ids(last) {
                chain.push(fid);
                extend(complex, chain, chains);
                chain.pop();
            }
        }
        let mut chains: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        let mut chain = Vec::new();
        for id in 0..self.simplices.len() {
            chain.clear();
            chain.push(id);
            extend(self, &mut chain, &mut chains);
        }
        Complex {
            vertex_count: self.simplices.len(),
            simplices: chains.into_iter().collect(),
        }
    }

    /// Greedy free-face collapsing. Returns true when the complex collapses
    /// to a single vertex within `budget` elementary collapses.
    pub fn collapses_to_point(&self, budget: usize) -> bool {
        let mut alive: BTreeSet<Vec<Vertex>> = self.simplices.iter().cloned().collect();
        let mut steps = 0;
        loop {
            if alive.len() == 1 {
                return alive.iter().next().map(|s| s.len()) == Some(1);
            }
            let mut pair: Option<(Vec<Vertex>, Vec<Vertex>)> = None;
            'outer: for sigma in &alive {
                // cofaces of sigma one dimension up
                let mut cofaces = alive
                    .iter()
                    .filter(|t| {
                        t.len() == sigma.len() + 1 && sigma.iter().all(|v| t.contains(v))
                    })
                    .cloned();
                let first = cofaces.next();
                if let (Some(tau), None) = (first, cofaces.next()) {
                    // sigma must be a face of nothing else at all
                    let free = alive
                        .iter()
                        .filter(|t| t.len() > sigma.len() && sigma.iter().all(|v| t.contains(v)))
                        .count()
                        == 1;
                    if free {
                        pair = Some((sigma.clone(), tau));
                        break 'outer;
                    }
                }
            }
            match pair {
                Some((sigma, tau)) => {
                    alive.remove(&sigma);
                    alive.remove(&tau);
                }
                None => return false,
            }
            steps += 1;
            if steps > budget {
                return false;
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub fn triangle_boundary() -> Complex {
        Complex::from_maximal(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    pub fn solid_triangle() -> Complex {
        Complex::from_maximal(3, &[vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn face_closure_is_generated() {
        let c = solid_triangle();
        assert_eq!(c.face_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn from_simplices_rejects_missing_faces() {
        let err = Complex::from_simplices(3, &[vec![0, 1, 2], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, ComplexError::NotFaceClosed { .. }));
    }

    // Subdivision oracle: counts derived from chain counting in the face
    // poset. A d-simplex of the subdivision is a chain of d+1 distinct faces.
    fn chain_count_oracle(c: &Complex, len: usize) -> usize {
        fn chains_from(c: &Complex, top: SimplexId, len: usize) -> usize {
            if len == 1 {
                return 1;
            }
            c.face_ids(top)
                .iter()
                .map(|&f| chains_from(c, f, len - 1))
                .sum()
        }
        (0..c.simplex_count())
            .map(|id| chains_from(c, id, len))
            .sum()
    }

    #[test]
    fn subdividing_triangle_boundary_doubles_edges() {
        let c = triangle_boundary();
        let sd = c.barycentric_subdivision();
        assert_eq!(sd.face_vector(), vec![6, 6]);
    }

    #[test]
    fn subdividing_solid_triangle_matches_chain_oracle() {
        let c = solid_triangle();
        let expected: Vec<usize> = (1..=3).map(|len| chain_count_oracle(&c, len)).collect();
        assert_eq!(expected, vec![7, 12, 6]);
        let sd = c.barycentric_subdivision();
        assert_eq!(sd.face_vector(), expected);
    }

    #[test]
    fn circle_does_not_collapse_but_interval_does() {
        let circle = triangle_boundary();
        assert!(!circle.collapses_to_point(1000));
        let interval = Complex::from_maximal(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(interval.collapses_to_point(1000));
        let solid = solid_triangle();
        assert!(solid.collapses_to_point(1000));
    }

    #[test]
    fn incidence_components_split_disjoint_edges() {
        let c = Complex::from_maximal(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let all: Vec<SimplexId> = (0..c.simplex_count()).collect();
        assert_eq!(c.incidence_components(&all).len(), 2);
    }

    #[test]
    fn fullness_detects_missing_induced_simplex() {
        let c = triangle_boundary();
        // vertex set {0,1} induces the edge 01; the bare vertices are not full
        let ids = vec![c.vertex_simplex_id(0), c.vertex_simplex_id(1)];
        assert!(c.is_full(&ids).is_some());
        let with_edge = {
            let mut v = ids.clone();
            v.push(c.simplex_id(&[0, 1]).unwrap());
            v.sort_unstable();
            v
        };
        assert!(c.is_full(&with_edge).is_none());
    }
}
