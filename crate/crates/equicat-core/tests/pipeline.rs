//! Cross-module flows: the exact circle model against its discretization,
//! quotient lifting feeding the verifier, and bound composition.

use equicat_core::complex::Complex;
use equicat_core::cover::{
    brute_force_cat, compose_bounds, free_quotient, lift_cover_through_free_quotient,
    verify_cover, BruteForceOutcome, CategoricalCover, ContiguityWitness, InvariantPiece,
    SearchBudget,
};
use equicat_core::perm::{Perm, PermGroup, DEFAULT_ORDER_CAP};
use equicat_core::strata::{lower_bound, stratify};
use equicat_core::weyl::circle::CircleModel;
use equicat_core::weyl::torus::TorusModel;
use equicat_core::GComplex;

fn circle_complex(n: u32) -> Complex {
    let edges: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Complex::from_maximal(n as usize, &edges).unwrap()
}

/// The reflection on a circle, discretized: the fixed-point count of the
/// exact model matches the certified lower bound of the complex, and the
/// searched cover meets it.
#[test]
fn circle_model_agrees_with_its_discretization() {
    let model = CircleModel::with_defaults();
    let fixed = model.verify_fixed_points().unwrap();

    // reflect the square circle through the two axis vertices
    let gc = GComplex::new(
        circle_complex(4),
        PermGroup::from_generators(
            4,
            vec![Perm::from_cycles(4, &[vec![1, 3]]).unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap(),
    )
    .unwrap()
    .regularize()
    .unwrap();
    let report = stratify(&gc).unwrap();
    let lb = lower_bound(&report);
    assert_eq!(lb.value, fixed.len());

    match brute_force_cat(&gc, &SearchBudget::default()).unwrap() {
        BruteForceOutcome::Exact { value, .. } => assert_eq!(value, fixed.len()),
        other => panic!("expected exact agreement, got {other:?}"),
    }
}

/// The subtorus model in dimension one is the circle with the coordinate
/// swap; its certified value matches the discrete reflection circle.
#[test]
fn dimension_one_torus_matches_the_reflected_circle() {
    let bounds = TorusModel::with_defaults(1).unwrap().certify().unwrap();
    assert_eq!(bounds.lower, 2);
    assert_eq!(bounds.upper, 2);
    assert!(bounds.exact);
}

/// Lift the quotient cover of a free rotation and recombine it with an empty
/// closed part through the composition operation.
#[test]
fn lifted_covers_compose_and_reverify() {
    let gc = GComplex::new(
        circle_complex(6),
        PermGroup::from_generators(
            6,
            vec![Perm::from_cycles(6, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap(),
    )
    .unwrap();
    // the quotient of the subdivided hexagon is a circle with four vertices;
    // cover it with two full closed arcs around an antipodal vertex pair
    let quotient = free_quotient(&gc).unwrap().quotient;
    assert_eq!(quotient.vertex_count(), 4);
    let arc = |center: u32, target: u32| -> (InvariantPiece, ContiguityWitness) {
        let mut vertices: Vec<u32> = quotient.neighbors(center);
        vertices.push(center);
        vertices.sort_unstable();
        let set: std::collections::BTreeSet<u32> = vertices.iter().copied().collect();
        let core = quotient.induced_subcomplex(&set);
        let steps = vec![
            vertices.clone(),
            vertices.iter().map(|_| target).collect(),
        ];
        (
            InvariantPiece { core },
            ContiguityWitness {
                core_vertices: vertices,
                steps,
                target,
            },
        )
    };
    // centers: vertex 0 and the vertex not adjacent to it
    let far = (1..4u32).find(|v| !quotient.contains(&[0, *v])).unwrap();
    let qcover = CategoricalCover {
        pieces: vec![arc(0, 0), arc(far, far)],
    };
    let lifted = lift_cover_through_free_quotient(&gc, &qcover).unwrap();
    assert_eq!(lifted.cover.pieces.len(), 2);
    assert_eq!(verify_cover(&lifted.total, &lifted.cover).unwrap(), 2);
    let composed = compose_bounds(&lifted.total, &CategoricalCover::default(), &lifted.cover)
        .unwrap();
    assert_eq!(composed.pieces.len(), 2);
}
