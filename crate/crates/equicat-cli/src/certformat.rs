//! On-disk certificate format for categorical covers.
//!
//! A certificate pins the exact complex it refers to (vertex count plus the
//! full sorted simplex table), so re-verification cannot silently drift to a
//! different subdivision. Round-trips are lossless.

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};

use equicat_core::complex::Complex;
use equicat_core::cover::{CategoricalCover, ContiguityWitness, InvariantPiece};
use equicat_core::perm::Vertex;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexShape {
    pub vertex_count: usize,
    pub simplices: Vec<Vec<Vertex>>,
}

impl ComplexShape {
    pub fn of(complex: &Complex) -> ComplexShape {
        ComplexShape {
            vertex_count: complex.vertex_count(),
            simplices: complex.simplices().to_vec(),
        }
    }

    pub fn matches(&self, complex: &Complex) -> bool {
        self.vertex_count == complex.vertex_count() && self.simplices == complex.simplices()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessCert {
    pub core_vertices: Vec<Vertex>,
    pub steps: Vec<Vec<Vertex>>,
    pub target: Vertex,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PieceCert {
    pub core: Vec<usize>,
    pub witness: WitnessCert,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoverCertificate {
    pub name: String,
    pub complex: ComplexShape,
    pub pieces: Vec<PieceCert>,
}

impl CoverCertificate {
    pub fn from_cover(name: &str, complex: &Complex, cover: &CategoricalCover) -> CoverCertificate {
        CoverCertificate {
            name: name.to_string(),
            complex: ComplexShape::of(complex),
            pieces: cover
                .pieces
                .iter()
                .map(|(piece, witness)| PieceCert {
                    core: piece.core.clone(),
                    witness: WitnessCert {
                        core_vertices: witness.core_vertices.clone(),
                        steps: witness.steps.clone(),
                        target: witness.target,
                    },
                })
                .collect(),
        }
    }

    /// Rebuild the in-memory cover, checking the certificate refers to the
    /// given complex.
    pub fn to_cover(&self, complex: &Complex) -> Result<CategoricalCover> {
        if !self.complex.matches(complex) {
            bail!(
                "certificate refers to a different complex ({} vertices, {} simplices)",
                self.complex.vertex_count,
                self.complex.simplices.len()
            );
        }
        Ok(CategoricalCover {
            pieces: self
                .pieces
                .iter()
                .map(|p| {
                    (
                        InvariantPiece { core: p.core.clone() },
                        ContiguityWitness {
                            core_vertices: p.witness.core_vertices.clone(),
                            steps: p.witness.steps.clone(),
                            target: p.witness.target,
                        },
                    )
                })
                .collect(),
        })
    }
}
