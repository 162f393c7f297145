//! Categorical covers of G-complexes with re-verifiable certificates.
//!
//! A cover piece is a closed invariant *core* subcomplex L together with a
//! contiguity witness contracting L into a single vertex orbit; the open set
//! the piece certifies is the open star of L (all open simplices with a face
//! in L). Cores must be full subcomplexes: the open star of a full subcomplex
//! deformation-retracts onto it by the canonical simplicial projection, which
//! is what lets the witness on L stand in for the whole star. Dropping
//! fullness is unsound — a two-arc core whose connecting edges are missing
//! from it would certify a contraction its star does not admit.
//!
//! Everything is checked exhaustively: invariance, fullness, equivariance of
//! every witness step, contiguity of consecutive steps, the terminal
//! condition, and the covering condition.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::action::{ActionError, GComplex};
use crate::complex::{Complex, SimplexId};
use crate::perm::{ElemId, PermGroup, Vertex};
use crate::strata::{self, LowerBound, StrataError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverError {
    Action(ActionError),
    Strata(StrataError),
    /// A core is not face-closed.
    CoreNotClosed { piece: usize, missing: SimplexId },
    /// A core is not a full subcomplex.
    NotFull { piece: usize, simplex: SimplexId },
    /// A core is not invariant under the action.
    NotInvariant { piece: usize, element: ElemId, simplex: SimplexId },
    /// A simplex has no face in any core.
    NotCovering { simplex: SimplexId },
    /// Witness domain differs from the core vertex set.
    BadWitnessDomain { piece: usize },
    /// The first witness map is not the inclusion.
    BadInitial { piece: usize, vertex: Vertex },
    /// A witness step maps some core simplex to a non-simplex.
    NotSimplicial { piece: usize, step: usize, simplex: SimplexId },
    /// A witness step is not equivariant.
    NotEquivariant { piece: usize, element: ElemId, vertex: Vertex, step: usize },
    /// Two consecutive steps are not contiguous on some core simplex.
    NotContiguous { piece: usize, simplex: SimplexId, step: usize },
    /// The last map does not crush every core simplex into the target orbit.
    BadTerminal { piece: usize, simplex: SimplexId },
    /// The action is not free (required for quotient lifting).
    NotFree,
    /// A contiguity step does not lift uniquely through the quotient.
    LiftObstructed { piece: usize, step: usize, vertex: Vertex },
    /// The search gave out before verifying any cover.
    SearchBudgetExceeded,
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::Action(e) => write!(f, "{e}"),
            CoverError::Strata(e) => write!(f, "{e}"),
            CoverError::CoreNotClosed { piece, missing } => {
                write!(f, "piece {piece}: core is not face-closed (missing simplex {missing})")
            }
            CoverError::NotFull { piece, simplex } => {
                write!(f, "piece {piece}: core is not full (simplex {simplex} is induced but absent)")
            }
            CoverError::NotInvariant { piece, element, simplex } => write!(
                f,
                "piece {piece}: core not invariant (element {element} moves simplex {simplex} out)"
            ),
            CoverError::NotCovering { simplex } => {
                write!(f, "open stars do not cover: simplex {simplex} has no face in any core")
            }
            CoverError::BadWitnessDomain { piece } => {
                write!(f, "piece {piece}: witness domain differs from the core vertex set")
            }
            CoverError::BadInitial { piece, vertex } => {
                write!(f, "piece {piece}: first witness map moves vertex {vertex}")
            }
            CoverError::NotSimplicial { piece, step, simplex } => write!(
                f,
                "piece {piece}: step {step} maps simplex {simplex} to a non-simplex"
            ),
            CoverError::NotEquivariant { piece, element, vertex, step } => write!(
                f,
                "piece {piece}: step {step} not equivariant at element {element}, vertex {vertex}"
            ),
            CoverError::NotContiguous { piece, simplex, step } => write!(
                f,
                "piece {piece}: steps {step},{} not contiguous on simplex {simplex}",
                step + 1
            ),
            CoverError::BadTerminal { piece, simplex } => write!(
                f,
                "piece {piece}: final map does not crush simplex {simplex} into the target orbit"
            ),
            CoverError::NotFree => write!(f, "the action is not free"),
            CoverError::LiftObstructed { piece, step, vertex } => write!(
                f,
                "piece {piece}: step {step} does not lift uniquely at vertex {vertex}"
            ),
            CoverError::SearchBudgetExceeded => write!(f, "search budget exceeded"),
        }
    }
}

impl From<ActionError> for CoverError {
    fn from(e: ActionError) -> Self {
        CoverError::Action(e)
    }
}

impl From<StrataError> for CoverError {
    fn from(e: StrataError) -> Self {
        CoverError::Strata(e)
    }
}

/// A closed invariant full core; the open set it certifies is its open star.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPiece {
    pub core: Vec<SimplexId>,
}

/// A chain of simplicial vertex maps contracting a core into one vertex orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContiguityWitness {
    /// Sorted vertex set of the core; `steps[j][i]` is the image of
    /// `core_vertices[i]` under the j-th map.
    pub core_vertices: Vec<Vertex>,
    pub steps: Vec<Vec<Vertex>>,
    /// Representative of the target orbit.
    pub target: Vertex,
}

impl ContiguityWitness {
    pub fn identity(core_vertices: Vec<Vertex>, target: Vertex) -> ContiguityWitness {
        ContiguityWitness {
            steps: vec![core_vertices.clone()],
            core_vertices,
            target,
        }
    }

    fn image(&self, step: usize, v: Vertex) -> Option<Vertex> {
        self.core_vertices
            .binary_search(&v)
            .ok()
            .map(|i| self.steps[step][i])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoricalCover {
    pub pieces: Vec<(InvariantPiece, ContiguityWitness)>,
}

/// Vertex set of a simplex id list, sorted.
fn vertex_set(complex: &Complex, ids: &[SimplexId]) -> Vec<Vertex> {
    let set: BTreeSet<Vertex> = ids
        .iter()
        .flat_map(|&id| complex.simplex(id).iter().copied())
        .collect();
    set.into_iter().collect()
}

/// Check every invariant of a cover and return the upper bound it certifies.
pub fn verify_cover(gc: &GComplex, cover: &CategoricalCover) -> Result<usize, CoverError> {
    if !gc.is_regular_action() {
        return Err(CoverError::Action(ActionError::NotRegular));
    }
    let complex = gc.complex();
    let group = gc.group();
    for (pidx, (piece, witness)) in cover.pieces.iter().enumerate() {
        verify_piece(gc, complex, group, pidx, piece, witness)?;
    }
    // covering: every simplex has a face in some core, equivalently a vertex
    // of some core (cores are face-closed)
    let mut core_vertices: BTreeSet<Vertex> = BTreeSet::new();
    let mut per_piece: Vec<BTreeSet<Vertex>> = Vec::new();
    for (piece, _) in &cover.pieces {
        let vs: BTreeSet<Vertex> = vertex_set(complex, &piece.core).into_iter().collect();
        core_vertices.extend(vs.iter().copied());
        per_piece.push(vs);
    }
    for (sid, s) in complex.simplices().iter().enumerate() {
        let covered = per_piece
            .iter()
            .any(|vs| s.iter().any(|v| vs.contains(v)));
        if !covered {
            return Err(CoverError::NotCovering { simplex: sid });
        }
    }
    Ok(cover.pieces.len())
}

fn verify_piece(
    gc: &GComplex,
    complex: &Complex,
    group: &PermGroup,
    pidx: usize,
    piece: &InvariantPiece,
    witness: &ContiguityWitness,
) -> Result<(), CoverError> {
    let core_set: BTreeSet<SimplexId> = piece.core.iter().copied().collect();
    // face closure
    for &id in &piece.core {
        for f in complex.face_ids(id) {
            if !core_set.contains(&f) {
                return Err(CoverError::CoreNotClosed { piece: pidx, missing: f });
            }
        }
    }
    // invariance
    for g in 0..group.order() {
        for &id in &piece.core {
            let image = gc.apply(g, id);
            if !core_set.contains(&image) {
                return Err(CoverError::NotInvariant { piece: pidx, element: g, simplex: id });
            }
        }
    }
    // fullness
    if let Some(simplex) = complex.is_full(&piece.core) {
        return Err(CoverError::NotFull { piece: pidx, simplex });
    }
    // witness domain
    let expected = vertex_set(complex, &piece.core);
    if witness.core_vertices != expected || witness.steps.is_empty() {
        return Err(CoverError::BadWitnessDomain { piece: pidx });
    }
    if witness.steps.iter().any(|m| m.len() != expected.len()) {
        return Err(CoverError::BadWitnessDomain { piece: pidx });
    }
    // first map is the inclusion
    for (i, &v) in witness.core_vertices.iter().enumerate() {
        if witness.steps[0][i] != v {
            return Err(CoverError::BadInitial { piece: pidx, vertex: v });
        }
    }
    // each step simplicial on the core
    for (j, _) in witness.steps.iter().enumerate() {
        for &id in &piece.core {
            if image_simplex(complex, witness, j, id).is_none() {
                return Err(CoverError::NotSimplicial { piece: pidx, step: j, simplex: id });
            }
        }
    }
    // equivariance of every step
    for g in 0..group.order() {
        let perm = group.element(g);
        for (j, _) in witness.steps.iter().enumerate() {
            for &v in &witness.core_vertices {
                let gv = perm.apply(v);
                let lhs = witness.image(j, gv);
                let rhs = witness.image(j, v).map(|w| perm.apply(w));
                if lhs != rhs || lhs.is_none() {
                    return Err(CoverError::NotEquivariant {
                        piece: pidx,
                        element: g,
                        vertex: v,
                        step: j,
                    });
                }
            }
        }
    }
    // contiguity of consecutive steps
    for j in 0..witness.steps.len().saturating_sub(1) {
        for &id in &piece.core {
            let mut union: Vec<Vertex> = Vec::new();
            for &v in complex.simplex(id) {
                union.push(witness.image(j, v).expect("domain checked"));
                union.push(witness.image(j + 1, v).expect("domain checked"));
            }
            union.sort_unstable();
            union.dedup();
            if !complex.contains(&union) {
                return Err(CoverError::NotContiguous { piece: pidx, simplex: id, step: j });
            }
        }
    }
    // terminal condition: each core simplex crushed to one target-orbit vertex
    let last = witness.steps.len() - 1;
    let target_orbit: BTreeSet<Vertex> = gc.vertex_orbit(witness.target).into_iter().collect();
    for &id in &piece.core {
        let mut images: Vec<Vertex> = complex
            .simplex(id)
            .iter()
            .map(|&v| witness.image(last, v).expect("domain checked"))
            .collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != 1 || !target_orbit.contains(&images[0]) {
            return Err(CoverError::BadTerminal { piece: pidx, simplex: id });
        }
    }
    Ok(())
}

fn image_simplex(
    complex: &Complex,
    witness: &ContiguityWitness,
    step: usize,
    id: SimplexId,
) -> Option<Vec<Vertex>> {
    let mut image: Vec<Vertex> = complex
        .simplex(id)
        .iter()
        .map(|&v| witness.image(step, v))
        .collect::<Option<_>>()?;
    image.sort_unstable();
    image.dedup();
    if complex.contains(&image) {
        Some(image)
    } else {
        None
    }
}

/// Stabilizers may only grow along a witness. This holds automatically for
/// equivariant witnesses and doubles as an internal-consistency check.
pub fn stabilizer_growth_check(gc: &GComplex, witness: &ContiguityWitness) -> bool {
    for step in 0..witness.steps.len() {
        for &v in &witness.core_vertices {
            let sv: BTreeSet<ElemId> = gc.vertex_stabilizer(v).into_iter().collect();
            let target = witness.image(step, v).expect("domain");
            let st: BTreeSet<ElemId> = gc.vertex_stabilizer(target).into_iter().collect();
            if !sv.is_subset(&st) {
                return false;
            }
        }
    }
    true
}

/// Concatenate a cover of a closed invariant subcomplex with a cover of the
/// rest and verify the result. Either side may be empty.
pub fn compose_bounds(
    gc: &GComplex,
    closed_part: &CategoricalCover,
    complement: &CategoricalCover,
) -> Result<CategoricalCover, CoverError> {
    let mut pieces = closed_part.pieces.clone();
    pieces.extend(complement.pieces.iter().cloned());
    let combined = CategoricalCover { pieces };
    verify_cover(gc, &combined)?;
    Ok(combined)
}

/// Result of lifting a cover through a free quotient.
#[derive(Clone, Debug)]
pub struct LiftedCover {
    /// The complex actually covered (the input, subdivided if the naive
    /// quotient was not a simplicial covering).
    pub total: GComplex,
    pub quotient: Complex,
    /// Quotient vertex of each total vertex.
    pub vertex_map: Vec<Vertex>,
    pub cover: CategoricalCover,
    pub subdivisions: usize,
}

/// Build the simplicial quotient of a free action, or None when some simplex
/// degenerates (two vertices in one orbit) or the map is not |G|-to-one.
fn try_quotient(gc: &GComplex) -> Option<(Complex, Vec<Vertex>)> {
    let complex = gc.complex();
    let orbits = gc.vertex_orbits();
    let mut orbit_of = vec![0 as Vertex; complex.vertex_count()];
    for (oid, orbit) in orbits.iter().enumerate() {
        for &v in orbit {
            orbit_of[v as usize] = oid as Vertex;
        }
    }
    let mut images: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    let mut multiplicity: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
    for s in complex.simplices() {
        let mut image: Vec<Vertex> = s.iter().map(|&v| orbit_of[v as usize]).collect();
        image.sort_unstable();
        let before = image.len();
        image.dedup();
        if image.len() != before {
            return None;
        }
        *multiplicity.entry(image.clone()).or_insert(0) += 1;
        images.insert(image);
    }
    // a covering is exactly |G|-to-one on every simplex class
    if multiplicity.values().any(|&m| m != gc.group().order()) {
        return None;
    }
    let quotient_simplices: Vec<Vec<Vertex>> = images.into_iter().collect();
    let quotient = Complex::from_maximal(orbits.len(), &quotient_simplices).ok()?;
    Some((quotient, orbit_of))
}

/// A free action's simplicial quotient, subdivided until the projection is a
/// genuine covering of complexes.
#[derive(Clone, Debug)]
pub struct FreeQuotient {
    pub total: GComplex,
    pub quotient: Complex,
    /// Quotient vertex of each total vertex.
    pub vertex_map: Vec<Vertex>,
    pub subdivisions: usize,
}

/// Compute the quotient of a free action. The input is regularized and, when
/// the naive quotient degenerates (a simplex with two vertices in one orbit,
/// or a quotient simplex with the wrong number of preimages), subdivided.
pub fn free_quotient(gc: &GComplex) -> Result<FreeQuotient, CoverError> {
    if !gc.is_free() {
        return Err(CoverError::NotFree);
    }
    let mut total = gc.regularize()?;
    let mut subdivisions = 0;
    loop {
        match try_quotient(&total) {
            Some((quotient, vertex_map)) => {
                return Ok(FreeQuotient {
                    total,
                    quotient,
                    vertex_map,
                    subdivisions,
                })
            }
            None => {
                if subdivisions >= 2 {
                    return Err(CoverError::LiftObstructed { piece: 0, step: 0, vertex: 0 });
                }
                total = total.subdivide();
                subdivisions += 1;
            }
        }
    }
}

/// Lift a classical cover of the quotient of a free action to an equivariant
/// cover upstairs. Contiguity steps are lifted vertex-by-vertex; a vertex
/// that rests downstairs rests upstairs, and a moving vertex must have
/// exactly one admissible preimage.
pub fn lift_cover_through_free_quotient(
    gc: &GComplex,
    quotient_cover: &CategoricalCover,
) -> Result<LiftedCover, CoverError> {
    let FreeQuotient {
        total,
        quotient,
        vertex_map,
        subdivisions,
    } = free_quotient(gc)?;
    // verify the input cover downstairs under the trivial group
    let trivial = PermGroup::trivial(quotient.vertex_count());
    let qgc = GComplex::new(quotient.clone(), trivial)?;
    verify_cover(&qgc, quotient_cover)?;

    let complex = total.complex().clone();
    // preimages of each quotient vertex
    let mut fibers: Vec<Vec<Vertex>> = vec![Vec::new(); quotient.vertex_count()];
    for v in 0..complex.vertex_count() as Vertex {
        fibers[vertex_map[v as usize] as usize].push(v);
    }

    let mut lifted_pieces = Vec::new();
    for (pidx, (piece, witness)) in quotient_cover.pieces.iter().enumerate() {
        // lift the core: all simplices over the downstairs core
        let down_core: BTreeSet<SimplexId> = piece.core.iter().copied().collect();
        let core: Vec<SimplexId> = (0..complex.simplex_count())
            .filter(|&sid| {
                let mut image: Vec<Vertex> = complex
                    .simplex(sid)
                    .iter()
                    .map(|&v| vertex_map[v as usize])
                    .collect();
                image.sort_unstable();
                quotient
                    .simplex_id(&image)
                    .map(|qid| down_core.contains(&qid))
                    .unwrap_or(false)
            })
            .collect();
        let core_vertices = vertex_set(&complex, &core);
        let mut steps: Vec<Vec<Vertex>> = vec![core_vertices.clone()];
        for j in 1..witness.steps.len() {
            let prev = steps.last().expect("seeded").clone();
            let mut next = Vec::with_capacity(core_vertices.len());
            for (i, &w) in core_vertices.iter().enumerate() {
                let down_w = vertex_map[w as usize];
                let down_prev = witness.image(j - 1, down_w).expect("core vertex");
                let down_next = witness.image(j, down_w).expect("core vertex");
                if down_next == down_prev {
                    next.push(prev[i]);
                    continue;
                }
                let cur = prev[i];
                let mut candidates: Vec<Vertex> = fibers[down_next as usize]
                    .iter()
                    .copied()
                    .filter(|&u| {
                        let mut edge = vec![cur, u];
                        edge.sort_unstable();
                        edge.dedup();
                        complex.contains(&edge)
                    })
                    .collect();
                candidates.dedup();
                match candidates.as_slice() {
                    [unique] => next.push(*unique),
                    _ => {
                        return Err(CoverError::LiftObstructed {
                            piece: pidx,
                            step: j,
                            vertex: w,
                        })
                    }
                }
            }
            steps.push(next);
        }
        let target = *fibers[witness.target as usize]
            .first()
            .expect("nonempty fiber");
        lifted_pieces.push((
            InvariantPiece { core },
            ContiguityWitness {
                core_vertices,
                steps,
                target,
            },
        ));
    }
    let cover = CategoricalCover { pieces: lifted_pieces };
    verify_cover(&total, &cover)?;
    // projecting each lifted step recovers the input witness step exactly
    for ((_, lifted), (_, down)) in cover.pieces.iter().zip(&quotient_cover.pieces) {
        for (j, step) in lifted.steps.iter().enumerate() {
            for (i, &w) in lifted.core_vertices.iter().enumerate() {
                let down_w = vertex_map[w as usize];
                let expect = down.image(j, down_w).expect("core vertex");
                assert_eq!(vertex_map[step[i] as usize], expect, "lift projects back");
            }
        }
    }
    Ok(LiftedCover {
        total,
        quotient,
        vertex_map,
        cover,
        subdivisions,
    })
}

/// Outcome of the exhaustive small-complex search.
#[derive(Clone, Debug)]
pub enum BruteForceOutcome {
    /// Lower and upper met.
    Exact { value: usize, cover: CategoricalCover, lower: LowerBound },
    /// A verified upper bound that does not meet the lower bound.
    Bounds { lower: LowerBound, upper: usize, cover: CategoricalCover },
    /// Budget ran out before any cover verified.
    OnlyLower { lower: LowerBound },
}

#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub max_simplices: usize,
    pub max_pieces: usize,
    pub max_witness_steps: usize,
    pub max_states: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_simplices: 96,
            max_pieces: 6,
            max_witness_steps: 48,
            max_states: 200_000,
        }
    }
}

/// Search categorical covers by enumerating full invariant cores induced by
/// unions of vertex orbits, with breadth-first search over equivariant
/// contiguity moves for the witnesses. Deterministic throughout: cores are
/// ordered by ascending simplex count then lexicographically, witness search
/// deduplicates states by map fingerprint, ties break lexicographically.
///
/// For the trivial group the lower bound is refined classically: 1 when the
/// complex collapses to a point within budget, else 2 for a non-collapsing
/// connected complex (higher classical bounds are out of reach here and only
/// ever claimed through the strata bound).
pub fn brute_force_cat(
    gc: &GComplex,
    budget: &SearchBudget,
) -> Result<BruteForceOutcome, CoverError> {
    if !gc.is_regular_action() {
        return Err(CoverError::Action(ActionError::NotRegular));
    }
    if gc.complex().simplex_count() > budget.max_simplices {
        return Err(CoverError::SearchBudgetExceeded);
    }
    let report = strata::stratify(gc)?;
    let mut lower = strata::lower_bound(&report);
    if gc.group().order() == 1 && lower.value <= 1 {
        let collapses = gc.complex().collapses_to_point(budget.max_simplices * 4);
        if !collapses && gc.complex().simplex_count() > 1 {
            lower.value = 2;
        }
    }

    let complex = gc.complex();
    let orbits = gc.vertex_orbits();
    if orbits.len() > 16 {
        return Err(CoverError::SearchBudgetExceeded);
    }
    // candidate cores: full subcomplexes induced by unions of vertex orbits
    let mut cores: Vec<(Vec<SimplexId>, BTreeSet<Vertex>)> = Vec::new();
    for mask in 1u32..(1u32 << orbits.len()) {
        let mut vertices: BTreeSet<Vertex> = BTreeSet::new();
        for (i, orbit) in orbits.iter().enumerate() {
            if mask & (1 << i) != 0 {
                vertices.extend(orbit.iter().copied());
            }
        }
        let core = complex.induced_subcomplex(&vertices);
        cores.push((core, vertices));
    }
    cores.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    cores.dedup_by(|a, b| a.0 == b.0);

    let mut witness_cache: BTreeMap<Vec<SimplexId>, Option<ContiguityWitness>> = BTreeMap::new();
    let mut states_used = 0usize;
    let mut find_witness = |core: &Vec<SimplexId>,
                            states_used: &mut usize|
     -> Option<ContiguityWitness> {
        if let Some(cached) = witness_cache.get(core) {
            return cached.clone();
        }
        let found = search_witness(gc, core, budget, states_used);
        witness_cache.insert(core.clone(), found.clone());
        found
    };

    // greedy set-cover enumeration by piece count
    let simplex_count = complex.simplex_count();
    let covered_by: Vec<BTreeSet<SimplexId>> = cores
        .iter()
        .map(|(_, vertices)| {
            (0..simplex_count)
                .filter(|&sid| complex.simplex(sid).iter().any(|v| vertices.contains(v)))
                .collect()
        })
        .collect();
    let all: BTreeSet<SimplexId> = (0..simplex_count).collect();

    for pieces in 1..=budget.max_pieces {
        let mut chosen: Vec<usize> = Vec::new();
        if let Some(cover) = pick_cover(
            &cores,
            &covered_by,
            &all,
            pieces,
            0,
            &mut chosen,
            &mut find_witness,
            &mut states_used,
            budget,
        ) {
            let upper = verify_cover(gc, &cover)?;
            debug_assert_eq!(upper, pieces);
            return Ok(if upper <= lower.value {
                BruteForceOutcome::Exact { value: upper.max(lower.value), cover, lower }
            } else {
                BruteForceOutcome::Bounds { lower, upper, cover }
            });
        }
        if states_used > budget.max_states {
            return Ok(BruteForceOutcome::OnlyLower { lower });
        }
    }
    Ok(BruteForceOutcome::OnlyLower { lower })
}

#[allow(clippy::too_many_arguments)]
fn pick_cover(
    cores: &[(Vec<SimplexId>, BTreeSet<Vertex>)],
    covered_by: &[BTreeSet<SimplexId>],
    remaining: &BTreeSet<SimplexId>,
    pieces_left: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    find_witness: &mut impl FnMut(&Vec<SimplexId>, &mut usize) -> Option<ContiguityWitness>,
    states_used: &mut usize,
    budget: &SearchBudget,
) -> Option<CategoricalCover> {
    if remaining.is_empty() {
        let mut out = Vec::new();
        for &ci in chosen.iter() {
            let witness = find_witness(&cores[ci].0, states_used)?;
            out.push((InvariantPiece { core: cores[ci].0.clone() }, witness));
        }
        return Some(CategoricalCover { pieces: out });
    }
    if pieces_left == 0 || *states_used > budget.max_states {
        return None;
    }
    for ci in start..cores.len() {
        *states_used += 1;
        if covered_by[ci].intersection(remaining).next().is_none() {
            continue;
        }
        let next: BTreeSet<SimplexId> = remaining.difference(&covered_by[ci]).copied().collect();
        chosen.push(ci);
        if let Some(cover) = pick_cover(
            cores,
            covered_by,
            &next,
            pieces_left - 1,
            ci + 1,
            chosen,
            find_witness,
            states_used,
            budget,
        ) {
            return Some(cover);
        }
        chosen.pop();
        if *states_used > budget.max_states {
            return None;
        }
    }
    None
}

/// Breadth-first search for an equivariant contiguity contraction of a core
/// into a single vertex orbit. States are full vertex maps; one orbit of
/// vertices moves per step, which serializes any parallel move.
fn search_witness(
    gc: &GComplex,
    core: &[SimplexId],
    budget: &SearchBudget,
    states_used: &mut usize,
) -> Option<ContiguityWitness> {
    let complex = gc.complex();
    let core_vertices = vertex_set(complex, core);
    if core_vertices.is_empty() {
        return None;
    }
    let vindex: BTreeMap<Vertex, usize> = core_vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    // orbit representatives among core vertices (cores are invariant)
    let mut reps: Vec<Vertex> = Vec::new();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for &v in &core_vertices {
        if !seen.contains(&v) {
            reps.push(v);
            seen.extend(gc.vertex_orbit(v));
        }
    }
    // core simplices as vertex index lists for fast image checks
    let core_simplices: Vec<Vec<usize>> = core
        .iter()
        .map(|&id| complex.simplex(id).iter().map(|v| vindex[v]).collect())
        .collect();
    let neighbors: Vec<Vec<Vertex>> = (0..complex.vertex_count() as Vertex)
        .map(|v| complex.neighbors(v))
        .collect();

    let is_simplicial = |map: &[Vertex]| -> bool {
        core_simplices.iter().all(|s| {
            let mut image: Vec<Vertex> = s.iter().map(|&i| map[i]).collect();
            image.sort_unstable();
            image.dedup();
            complex.contains(&image)
        })
    };
    let contiguous = |a: &[Vertex], b: &[Vertex]| -> bool {
        core_simplices.iter().all(|s| {
            let mut union: Vec<Vertex> = s.iter().flat_map(|&i| [a[i], b[i]]).collect();
            union.sort_unstable();
            union.dedup();
            complex.contains(&union)
        })
    };
    let terminal_orbit = |map: &[Vertex]| -> Option<Vertex> {
        let mut orbit: Option<Vec<Vertex>> = None;
        for s in &core_simplices {
            let mut image: Vec<Vertex> = s.iter().map(|&i| map[i]).collect();
            image.sort_unstable();
            image.dedup();
            if image.len() != 1 {
                return None;
            }
            let o = gc.vertex_orbit(image[0]);
            match &orbit {
                None => orbit = Some(o),
                Some(prev) if *prev == o => {}
                _ => return None,
            }
        }
        orbit.map(|o| o[0])
    };
    // moving one orbit representative and extending equivariantly; the move
    // is admissible only when the whole orbit's images stay consistent
    let try_move = |map: &[Vertex], rep: Vertex, to: Vertex| -> Option<Vec<Vertex>> {
        let mut next = map.to_vec();
        let mut written = vec![false; next.len()];
        for g in 0..gc.group().order() {
            let perm = gc.group().element(g);
            let gv = perm.apply(rep);
            let idx = *vindex.get(&gv)?;
            let image = perm.apply(to);
            // a vertex may be reachable through two group elements; the
            // extension must agree or the move is inadmissible
            if written[idx] && next[idx] != image {
                return None;
            }
            next[idx] = image;
            written[idx] = true;
        }
        Some(next)
    };

    let start: Vec<Vertex> = core_vertices.clone();
    if let Some(target) = terminal_orbit(&start) {
        return Some(ContiguityWitness::identity(core_vertices, target));
    }
    let mut queue: alloc::collections::VecDeque<usize> = alloc::collections::VecDeque::new();
    let mut arena: Vec<(Vec<Vertex>, usize)> = vec![(start.clone(), usize::MAX)];
    let mut known: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    known.insert(start);
    queue.push_back(0);
    let mut depth_of: Vec<usize> = vec![0];
    while let Some(cur) = queue.pop_front() {
        if depth_of[cur] >= budget.max_witness_steps {
            continue;
        }
        let map = arena[cur].0.clone();
        for &rep in &reps {
            let from = map[vindex[&rep]];
            for &to in &neighbors[from as usize] {
                *states_used += 1;
                if *states_used > budget.max_states {
                    return None;
                }
                let Some(next) = try_move(&map, rep, to) else {
                    continue;
                };
                if known.contains(&next) {
                    continue;
                }
                if !is_simplicial(&next) || !contiguous(&map, &next) {
                    continue;
                }
                known.insert(next.clone());
                arena.push((next.clone(), cur));
                depth_of.push(depth_of[cur] + 1);
                let nid = arena.len() - 1;
                if let Some(target) = terminal_orbit(&next) {
                    // reconstruct the chain of maps
                    let mut chain = Vec::new();
                    let mut at = nid;
                    while at != usize::MAX {
                        chain.push(arena[at].0.clone());
                        at = arena[at].1;
                    }
                    chain.reverse();
                    return Some(ContiguityWitness {
                        core_vertices,
                        steps: chain,
                        target,
                    });
                }
                queue.push_back(nid);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Perm, DEFAULT_ORDER_CAP};

    fn point() -> GComplex {
        let c = Complex::from_maximal(1, &[vec![0]]).unwrap();
        GComplex::new(c, PermGroup::trivial(1)).unwrap()
    }

    fn square_reflection() -> GComplex {
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

    fn hexagon(gen: Option<Perm>) -> GComplex {
        let edges: Vec<Vec<Vertex>> = (0..6u32).map(|i| vec![i, (i + 1) % 6]).collect();
        let c = Complex::from_maximal(6, &edges).unwrap();
        let g = PermGroup::from_generators(
            6,
            gen.into_iter().collect(),
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        GComplex::new(c, g).unwrap()
    }

    /// Hand-built two-piece cover of the reflected square circle.
    pub fn square_reflection_cover(gc: &GComplex) -> CategoricalCover {
        let complex = gc.complex();
        let core_a: Vec<SimplexId> = [vec![0u32], vec![1], vec![3], vec![0, 1], vec![0, 3]]
            .iter()
            .map(|s| complex.simplex_id(s).unwrap())
            .collect();
        let mut core_a = core_a;
        core_a.sort_unstable();
        let core_b: Vec<SimplexId> = [vec![2u32], vec![1], vec![3], vec![1, 2], vec![2, 3]]
            .iter()
            .map(|s| complex.simplex_id(s).unwrap())
            .collect();
        let mut core_b = core_b;
        core_b.sort_unstable();
        let witness_a = ContiguityWitness {
            core_vertices: vec![0, 1, 3],
            steps: vec![vec![0, 1, 3], vec![0, 0, 0]],
            target: 0,
        };
        let witness_b = ContiguityWitness {
            core_vertices: vec![1, 2, 3],
            steps: vec![vec![1, 2, 3], vec![2, 2, 2]],
            target: 2,
        };
        CategoricalCover {
            pieces: vec![
                (InvariantPiece { core: core_a }, witness_a),
                (InvariantPiece { core: core_b }, witness_b),
            ],
        }
    }

    #[test]
    fn single_vertex_has_cover_of_size_one() {
        let gc = point();
        let cover = CategoricalCover {
            pieces: vec![(
                InvariantPiece { core: vec![0] },
                ContiguityWitness::identity(vec![0], 0),
            )],
        };
        assert_eq!(verify_cover(&gc, &cover).unwrap(), 1);
    }

    #[test]
    fn reflection_square_two_piece_cover_verifies() {
        let gc = square_reflection();
        let cover = square_reflection_cover(&gc);
        assert_eq!(verify_cover(&gc, &cover).unwrap(), 2);
        for (_, w) in &cover.pieces {
            assert!(stabilizer_growth_check(&gc, w));
        }
    }

    #[test]
    fn non_equivariant_move_is_named() {
        let gc = square_reflection();
        let mut cover = square_reflection_cover(&gc);
        // move vertex 1 to 0 but leave its mirror vertex 3 in place
        cover.pieces[0].1.steps[1] = vec![0, 0, 3];
        let err = verify_cover(&gc, &cover).unwrap_err();
        match err {
            CoverError::NotEquivariant { piece, step, .. } => {
                assert_eq!(piece, 0);
                assert_eq!(step, 1);
            }
            other => panic!("expected NotEquivariant, got {other:?}"),
        }
    }

    #[test]
    fn deleted_step_breaks_contiguity() {
        let gc = square_reflection();
        let mut cover = square_reflection_cover(&gc);
        // a jump from the inclusion straight to the far vertex of piece B
        cover.pieces[1].1.steps = vec![vec![1, 2, 3], vec![0, 0, 0]];
        cover.pieces[1].1.target = 0;
        let err = verify_cover(&gc, &cover).unwrap_err();
        assert!(matches!(err, CoverError::NotContiguous { piece: 1, .. }));
    }

    #[test]
    fn non_invariant_core_is_rejected() {
        let gc = square_reflection();
        let mut cover = square_reflection_cover(&gc);
        // drop the mirror image of edge {0,1} from the first core
        let complex = gc.complex();
        let e03 = complex.simplex_id(&[0, 3]).unwrap();
        cover.pieces[0].0.core.retain(|&s| s != e03);
        let err = verify_cover(&gc, &cover).unwrap_err();
        assert!(matches!(err, CoverError::NotInvariant { piece: 0, .. } | CoverError::NotFull { piece: 0, .. }));
    }

    #[test]
    fn uncovered_simplex_is_named() {
        let gc = square_reflection();
        let mut cover = square_reflection_cover(&gc);
        cover.pieces.pop();
        let err = verify_cover(&gc, &cover).unwrap_err();
        assert!(matches!(err, CoverError::NotCovering { .. }));
    }

    #[test]
    fn sparse_core_without_induced_edges_is_not_full() {
        // the two-arc core of the antipodal hexagon without its edges would
        // fake a one-piece cover; fullness rejects it
        let gc = hexagon(Some(Perm::from_cycles(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap()));
        let complex = gc.complex();
        let core: Vec<SimplexId> = (0..6u32)
            .map(|v| complex.vertex_simplex_id(v))
            .collect();
        let mut core = core;
        core.sort_unstable();
        let witness = ContiguityWitness {
            core_vertices: (0..6).collect(),
            steps: vec![(0..6).collect()],
            target: 0,
        };
        let cover = CategoricalCover {
            pieces: vec![(InvariantPiece { core }, witness)],
        };
        let err = verify_cover(&gc, &cover).unwrap_err();
        assert!(matches!(err, CoverError::NotFull { .. }));
    }

    #[test]
    fn brute_force_point_is_exact_one() {
        let outcome = brute_force_cat(&point(), &SearchBudget::default()).unwrap();
        match outcome {
            BruteForceOutcome::Exact { value, .. } => assert_eq!(value, 1),
            other => panic!("expected exact, got {other:?}"),
        }
    }

    #[test]
    fn brute_force_trivial_hexagon_is_exact_two() {
        let gc = hexagon(None);
        let outcome = brute_force_cat(&gc, &SearchBudget::default()).unwrap();
        match outcome {
            BruteForceOutcome::Exact { value, .. } => assert_eq!(value, 2),
            other => panic!("expected exact 2, got {other:?}"),
        }
    }

    #[test]
    fn brute_force_reflection_square_is_exact_two() {
        let gc = square_reflection().regularize().unwrap();
        let outcome = brute_force_cat(&gc, &SearchBudget::default()).unwrap();
        match outcome {
            BruteForceOutcome::Exact { value, cover, .. } => {
                assert_eq!(value, 2);
                assert_eq!(verify_cover(&gc, &cover).unwrap(), 2);
            }
            other => panic!("expected exact 2, got {other:?}"),
        }
    }

    #[test]
    fn lift_identity_through_trivial_group() {
        let gc = hexagon(None);
        let quotient_cover = {
            let outcome = brute_force_cat(&gc, &SearchBudget::default()).unwrap();
            match outcome {
                BruteForceOutcome::Exact { cover, .. } => cover,
                _ => panic!("hexagon cover"),
            }
        };
        let lifted = lift_cover_through_free_quotient(&gc, &quotient_cover).unwrap();
        assert_eq!(lifted.cover.pieces.len(), quotient_cover.pieces.len());
        assert_eq!(lifted.subdivisions, 0);
    }

    #[test]
    fn lift_through_rotation_of_order_three() {
        let gc = hexagon(Some(Perm::from_cycles(6, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap()));
        // quotient of the hexagon by the rotation degenerates, so the lift
        // subdivides once; build the classical cover of that quotient
        let quotient = free_quotient(&gc).unwrap().quotient;
        let qgc = GComplex::new(quotient, PermGroup::trivial(4)).unwrap();
        let qcover = match brute_force_cat(&qgc, &SearchBudget::default()).unwrap() {
            BruteForceOutcome::Exact { cover, .. } => cover,
            other => panic!("quotient cover, got {other:?}"),
        };
        let lifted = lift_cover_through_free_quotient(&gc, &qcover).unwrap();
        assert_eq!(lifted.cover.pieces.len(), 2);
        assert_eq!(lifted.subdivisions, 1);
        assert_eq!(verify_cover(&lifted.total, &lifted.cover).unwrap(), 2);
    }

    #[test]
    fn lift_through_antipodal_square() {
        let c = Complex::from_maximal(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
            .unwrap();
        let g = PermGroup::from_generators(
            4,
            vec![Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        let gc = GComplex::new(c, g).unwrap();
        let quotient = free_quotient(&gc).unwrap().quotient;
        let qn = quotient.vertex_count();
        let qgc = GComplex::new(quotient, PermGroup::trivial(qn)).unwrap();
        let qcover = match brute_force_cat(&qgc, &SearchBudget::default()).unwrap() {
            BruteForceOutcome::Exact { cover, .. } => cover,
            other => panic!("quotient cover, got {other:?}"),
        };
        let lifted = lift_cover_through_free_quotient(&gc, &qcover).unwrap();
        assert_eq!(lifted.cover.pieces.len(), 2);
    }

    #[test]
    fn nonfree_action_cannot_lift() {
        let gc = square_reflection();
        let err = lift_cover_through_free_quotient(&gc, &CategoricalCover::default()).unwrap_err();
        assert_eq!(err, CoverError::NotFree);
    }

    #[test]
    fn compose_with_empty_sides() {
        let gc = square_reflection();
        let cover = square_reflection_cover(&gc);
        let same = compose_bounds(&gc, &cover, &CategoricalCover::default()).unwrap();
        assert_eq!(same.pieces.len(), 2);
        let same = compose_bounds(&gc, &CategoricalCover::default(), &cover).unwrap();
        assert_eq!(same.pieces.len(), 2);
    }

    #[test]
    fn compose_minimal_strata_cover_with_free_part() {
        // stars of the two fixed vertices plus one piece for the free part:
        // a valid cover of size three, coarser than the tight one
        let gc = square_reflection();
        let complex = gc.complex();
        let fixed_cover = CategoricalCover {
            pieces: vec![
                (
                    InvariantPiece { core: vec![complex.vertex_simplex_id(0)] },
                    ContiguityWitness::identity(vec![0], 0),
                ),
                (
                    InvariantPiece { core: vec![complex.vertex_simplex_id(2)] },
                    ContiguityWitness::identity(vec![2], 2),
                ),
            ],
        };
        let free_core: Vec<SimplexId> = vec![
            complex.vertex_simplex_id(1),
            complex.vertex_simplex_id(3),
        ];
        let mut free_core = free_core;
        free_core.sort_unstable();
        let free_cover = CategoricalCover {
            pieces: vec![(
                InvariantPiece { core: free_core },
                ContiguityWitness::identity(vec![1, 3], 1),
            )],
        };
        let combined = compose_bounds(&gc, &fixed_cover, &free_cover).unwrap();
        assert_eq!(combined.pieces.len(), 3);
    }
}
