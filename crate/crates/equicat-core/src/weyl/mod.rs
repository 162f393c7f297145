//! Exact-rational piecewise-linear models of Weyl group actions on sections.
//!
//! Three model families, all with the same certificate shape: the fixed
//! points of the acting group give the lower bound (one categorical set per
//! fixed component), and an explicitly generated cover of invariant sets,
//! each contracting to a fixed point through an exactly equivariant
//! straight-line homotopy, gives the upper bound. Every verifier works in
//! exact rational arithmetic; nothing is floated.
//!
//! * [`torus::TorusModel`] — the subtorus of `(n+1)`-tuples with integer
//!   coordinate sum, acted on by coordinate permutations. Certifies the
//!   equivariant category of the special unitary group acting on itself by
//!   conjugation.
//! * [`projective::ProjModel`] — real projective n-space with even sign
//!   changes of homogeneous coordinates. Certifies the category of complex
//!   projective space with its torus action (and, sharing section and group,
//!   of the quaternionic and octonionic analogues).
//! * [`circle::CircleModel`] — the circle with one reflection, the section of
//!   the rotation action on the 2-sphere, together with the torus blow-down.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub mod circle;
pub mod projective;
pub mod rat;
pub mod torus;

use rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeylError {
    BadParameter { detail: String },
    /// Coordinates do not lie on the subtorus (sum not an integer).
    NotOnSubtorus,
    ZeroVector,
    /// Contraction requested at a point outside the set.
    NotMember { set: usize },
    Uncovered { point: String },
    MarginBelowRequirement { margin: Rat, required: Rat },
    EquivarianceFailed { set: usize, element: usize, t: Rat, point: String },
    MembershipNotInvariant { set: usize, element: usize, point: String },
    StarShapeFailed { set: usize, t: Rat, point: String },
    /// Two chart lifts of one point both admissible: the chart is not
    /// injective at this inflation.
    Collision { set: usize, point: String, lattice_step: Vec<i128> },
    FixedPointFailure { detail: String },
}

impl fmt::Display for WeylError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylError::BadParameter { detail } => write!(f, "bad parameter: {detail}"),
            WeylError::NotOnSubtorus => write!(f, "coordinate sum is not an integer"),
            WeylError::ZeroVector => write!(f, "zero vector has no projective class"),
            WeylError::NotMember { set } => write!(f, "point is not in set {set}"),
            WeylError::Uncovered { point } => write!(f, "uncovered point {point}"),
            WeylError::MarginBelowRequirement { margin, required } => {
                write!(f, "covering margin {margin} below required {required}")
            }
            WeylError::EquivarianceFailed { set, element, t, point } => write!(
                f,
                "equivariance fails on set {set}, element {element}, t={t}, point {point}"
            ),
            WeylError::MembershipNotInvariant { set, element, point } => write!(
                f,
                "membership of set {set} not invariant under element {element} at {point}"
            ),
            WeylError::StarShapeFailed { set, t, point } => {
                write!(f, "contraction leaves set {set} at t={t}, point {point}")
            }
            WeylError::Collision { set, point, lattice_step } => write!(
                f,
                "chart {set} identifies two lifts of {point} differing by {lattice_step:?}"
            ),
            WeylError::FixedPointFailure { detail } => {
                write!(f, "fixed point verification failed: {detail}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub sets: usize,
    pub elements: usize,
    pub points_per_set: usize,
    pub t_values: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringReport {
    /// Exhaustive scan of the rational grid at the given mesh; the margin is
    /// the minimum over grid points of the best membership slack.
    Grid { mesh: Rat, margin: Rat, points: u64 },
    /// Covering holds for every point by the stated structural reason.
    Symbolic { margin: Rat, reason: String },
}

impl CoveringReport {
    pub fn margin(&self) -> Rat {
        match self {
            CoveringReport::Grid { margin, .. } => *margin,
            CoveringReport::Symbolic { margin, .. } => *margin,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    /// Nonzero lattice steps checked against the doubled inflated cell.
    pub lattice_vectors: usize,
    /// Sampled chart points whose canonical forms were pairwise distinct.
    pub samples: usize,
    /// Chart lifts are unique because every admissible lift offset stays
    /// below one half per coordinate.
    pub structural: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarShapeReport {
    pub points_per_set: usize,
    pub t_values: usize,
}

/// Where the fixed points certifying the lower bound live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerBoundSide {
    /// Fixed points of the Weyl group on the section, each isolated.
    SectionWeylFixed,
    /// Fixed points of the ambient group action; used when the Weyl group
    /// acts trivially on the section and its fixed set is not discrete.
    AmbientGroupFixed,
}

/// A certified pair of bounds for one model, with everything the verifiers
/// established along the way.
#[derive(Clone, Debug)]
pub struct WeylBounds {
    pub model: String,
    pub lower: usize,
    pub fixed_points: Vec<String>,
    pub lower_side: LowerBoundSide,
    pub upper: usize,
    pub sets: Vec<String>,
    pub covering: CoveringReport,
    pub equivariance: EquivarianceReport,
    pub star_shape: StarShapeReport,
    pub injectivity: Option<InjectivityReport>,
    pub exact: bool,
    pub conclusion: String,
}

#[derive(Clone, Debug)]
pub enum WeylModel {
    Torus(torus::TorusModel),
    Projective(projective::ProjModel),
    Circle(circle::CircleModel),
}

/// Run every verifier of a model and assemble the certified bounds.
pub fn certify_weyl_cat(model: &WeylModel) -> Result<WeylBounds, WeylError> {
    match model {
        WeylModel::Torus(m) => m.certify(),
        WeylModel::Projective(m) => m.certify(),
        WeylModel::Circle(m) => m.certify(),
    }
}
