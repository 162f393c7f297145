//! Machine-readable reports. Field order is fixed by the struct layout and
//! all collections are ordered, so identical inputs produce byte-identical
//! JSON.

use serde::Serialize;

use equicat_core::strata::{
    Hierarchy, HierarchyKind, LowerBound, LowerCertificate, StratificationReport,
};
use equicat_core::weyl::{CoveringReport, LowerBoundSide, WeylBounds};
use equicat_core::GComplex;

use crate::certformat::CoverCertificate;

pub fn rat_str(r: &equicat_core::weyl::rat::Rat) -> String {
    format!("{r}")
}

#[derive(Serialize)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub simplices: usize,
}

impl ComplexSummary {
    pub fn of(gc: &GComplex) -> ComplexSummary {
        ComplexSummary {
            vertices: gc.complex().vertex_count(),
            simplices: gc.complex().simplex_count(),
        }
    }
}

#[derive(Serialize)]
pub struct OrbitTypeJson {
    pub index: usize,
    pub subgroup_order: usize,
    pub canonical_key: Vec<usize>,
}

#[derive(Serialize)]
pub struct StratumJson {
    pub id: usize,
    pub orbit_type: usize,
    pub simplices: Vec<usize>,
    pub closed: bool,
}

#[derive(Serialize)]
pub struct LowerBoundJson {
    pub value: usize,
    pub certificate: String,
    pub fixed_components_in_minimal: bool,
}

impl LowerBoundJson {
    pub fn of(lb: &LowerBound) -> LowerBoundJson {
        LowerBoundJson {
            value: lb.value,
            certificate: match lb.certificate {
                LowerCertificate::FixedComponents { .. } => "fixed-components".to_string(),
                LowerCertificate::MinimalStrata { .. } => "minimal-strata".to_string(),
            },
            fixed_components_in_minimal: lb.fixed_components_in_minimal,
        }
    }
}

#[derive(Serialize)]
pub struct FiltrationLevelJson {
    pub level: u64,
    pub simplices: Vec<usize>,
}

#[derive(Serialize)]
pub struct HierarchyJson {
    pub kind: String,
    pub values: Vec<u64>,
    pub filtration: Vec<FiltrationLevelJson>,
    pub semicontinuous: bool,
}

pub fn hierarchy_kind_name(kind: &HierarchyKind) -> String {
    match kind {
        HierarchyKind::OrbitSize => "orbit-size".to_string(),
        HierarchyKind::ChainFromPrincipal => "chain-from-principal".to_string(),
        HierarchyKind::ChainFromMinimal => "chain-from-minimal".to_string(),
        HierarchyKind::Custom(_) => "custom".to_string(),
    }
}

#[derive(Serialize)]
pub struct StratifyJson {
    pub name: String,
    pub regularized: bool,
    pub complex: ComplexSummary,
    pub orbit_types: Vec<OrbitTypeJson>,
    pub strata: Vec<StratumJson>,
    pub order: Vec<(usize, usize)>,
    pub minimal: Vec<usize>,
    pub fixed_components: Vec<Vec<usize>>,
    pub lower_bound: LowerBoundJson,
    pub hierarchies: Vec<HierarchyJson>,
}

pub fn stratify_json(
    name: &str,
    regularized: bool,
    gc: &GComplex,
    report: &StratificationReport,
    lb: &LowerBound,
    hierarchies: &[(Hierarchy, bool)],
) -> StratifyJson {
    StratifyJson {
        name: name.to_string(),
        regularized,
        complex: ComplexSummary::of(gc),
        orbit_types: report
            .classes
            .iter()
            .enumerate()
            .map(|(index, c)| OrbitTypeJson {
                index,
                subgroup_order: c.subgroup_order(),
                canonical_key: c.canonical_key().to_vec(),
            })
            .collect(),
        strata: report
            .strata
            .iter()
            .map(|s| StratumJson {
                id: s.id,
                orbit_type: s.class,
                simplices: s.simplices.clone(),
                closed: s.is_closed,
            })
            .collect(),
        order: report.order.clone(),
        minimal: report.minimal.clone(),
        fixed_components: report.fixed_components.clone(),
        lower_bound: LowerBoundJson::of(lb),
        hierarchies: hierarchies
            .iter()
            .map(|(h, semi)| HierarchyJson {
                kind: hierarchy_kind_name(&h.kind),
                values: h.values.clone(),
                filtration: equicat_core::strata::hierarchy_filtration(report, h)
                    .into_iter()
                    .map(|(level, simplices)| FiltrationLevelJson { level, simplices })
                    .collect(),
                semicontinuous: *semi,
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct BudgetJson {
    pub states: usize,
    pub max_pieces: usize,
    pub depth: usize,
}

#[derive(Serialize)]
pub struct BoundsJson {
    pub name: String,
    pub complex: ComplexSummary,
    pub lower: LowerBoundJson,
    pub upper: Option<usize>,
    pub exact: bool,
    pub engine: String,
    pub budget: BudgetJson,
    pub cover: Option<CoverCertificate>,
}

#[derive(Serialize)]
pub struct WeylVerifiersJson {
    pub equivariance: EquivarianceJson,
    pub covering: CoveringJson,
    pub star_shape: StarShapeJson,
    pub injectivity: Option<InjectivityJson>,
}

#[derive(Serialize)]
pub struct EquivarianceJson {
    pub elements: usize,
    pub points_per_set: usize,
    pub t_values: usize,
}

#[derive(Serialize)]
pub struct CoveringJson {
    pub mode: String,
    pub mesh: Option<String>,
    pub margin: String,
    pub points: Option<u64>,
    pub reason: Option<String>,
}

#[derive(Serialize)]
pub struct StarShapeJson {
    pub points_per_set: usize,
    pub t_values: usize,
}

#[derive(Serialize)]
pub struct InjectivityJson {
    pub lattice_vectors: usize,
    pub samples: usize,
    pub structural: bool,
}

#[derive(Serialize)]
pub struct WeylJson {
    pub model: String,
    pub parameters: WeylParamsJson,
    pub lower: WeylLowerJson,
    pub upper: WeylUpperJson,
    pub verifiers: WeylVerifiersJson,
    pub exact: bool,
    pub conclusion: String,
}

#[derive(Serialize)]
pub struct WeylParamsJson {
    pub inflation: Option<String>,
    pub min_margin: Option<String>,
    pub mesh: Option<String>,
    pub arc_radius: Option<String>,
}

#[derive(Serialize)]
pub struct WeylLowerJson {
    pub value: usize,
    pub certificate: String,
    pub side: String,
    pub fixed_points: Vec<String>,
}

#[derive(Serialize)]
pub struct WeylUpperJson {
    pub value: usize,
    pub certificate: String,
    pub sets: Vec<String>,
}

pub fn weyl_json(bounds: &WeylBounds, params: WeylParamsJson) -> WeylJson {
    WeylJson {
        model: bounds.model.clone(),
        parameters: params,
        lower: WeylLowerJson {
            value: bounds.lower,
            certificate: "fixed-components".to_string(),
            side: match bounds.lower_side {
                LowerBoundSide::SectionWeylFixed => "section-weyl-fixed".to_string(),
                LowerBoundSide::AmbientGroupFixed => "ambient-group-fixed".to_string(),
            },
            fixed_points: bounds.fixed_points.clone(),
        },
        upper: WeylUpperJson {
            value: bounds.upper,
            certificate: "verified-cover".to_string(),
            sets: bounds.sets.clone(),
        },
        verifiers: WeylVerifiersJson {
            equivariance: EquivarianceJson {
                elements: bounds.equivariance.elements,
                points_per_set: bounds.equivariance.points_per_set,
                t_values: bounds.equivariance.t_values,
            },
            covering: match &bounds.covering {
                CoveringReport::Grid { mesh, margin, points } => CoveringJson {
                    mode: "grid".to_string(),
                    mesh: Some(rat_str(mesh)),
                    margin: rat_str(margin),
                    points: Some(*points),
                    reason: None,
                },
                CoveringReport::Symbolic { margin, reason } => CoveringJson {
                    mode: "symbolic".to_string(),
                    mesh: None,
                    margin: rat_str(margin),
                    points: None,
                    reason: Some(reason.clone()),
                },
            },
            star_shape: StarShapeJson {
                points_per_set: bounds.star_shape.points_per_set,
                t_values: bounds.star_shape.t_values,
            },
            injectivity: bounds.injectivity.as_ref().map(|r| InjectivityJson {
                lattice_vectors: r.lattice_vectors,
                samples: r.samples,
                structural: r.structural,
            }),
        },
        exact: bounds.exact,
        conclusion: bounds.conclusion.clone(),
    }
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub name: String,
    pub verdict: String,
    pub pieces: Option<usize>,
    pub error: Option<String>,
}
