//! Geometrization type of a punctured-torus mapping torus and, for
//! pseudo-Anosov monodromy, its layered ideal triangulation.

mod equations;
mod triangulation;

pub use equations::{gluing_equations, GluingRow, GluingSystem, RowKind};
pub use triangulation::{layered_triangulation, shape_column, Edge, Tetrahedron, TriangulatedBundle, EDGES};
pub(crate) use triangulation::{apply, face_key, face_points, BOTTOM, TOP};

use serde::Serialize;

use crate::error::Result;
use crate::lamination::CurveClass;
use crate::mapping_class::{canonical_rl_form, classify, MappingClass, NTClass, RLForm};

/// Which of the three model geometries the mapping torus carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometrizationType {
    /// Periodic monodromy: a Seifert fibred `H² × R` manifold.
    SeifertH2xR { order: u32 },
    /// Reducible monodromy: the invariant curve sweeps out an essential torus.
    TorusReducible { invariant: CurveClass },
    /// Pseudo-Anosov monodromy, named by its canonical RL word.
    Hyperbolic { rl: RLForm },
}

impl GeometrizationType {
    pub fn tag(&self) -> &'static str {
        match self {
            GeometrizationType::SeifertH2xR { .. } => "seifert-h2xr",
            GeometrizationType::TorusReducible { .. } => "torus-reducible",
            GeometrizationType::Hyperbolic { .. } => "hyperbolic",
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum GeometrizationJson {
    SeifertH2xr { order: u32 },
    TorusReducible { invariant: [i64; 2] },
    Hyperbolic { rl_word: String },
}

impl Serialize for GeometrizationType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GeometrizationType::SeifertH2xR { order } => GeometrizationJson::SeifertH2xr { order: *order },
            GeometrizationType::TorusReducible { invariant } => GeometrizationJson::TorusReducible {
                invariant: [invariant.a(), invariant.b()],
            },
            GeometrizationType::Hyperbolic { rl } => GeometrizationJson::Hyperbolic { rl_word: rl.to_string() },
        }
        .serialize(s)
    }
}

/// Reads the geometry off the Nielsen–Thurston class.
pub fn trichotomy(phi: &MappingClass) -> Result<GeometrizationType> {
    Ok(match classify(phi) {
        NTClass::FiniteOrder { order } => GeometrizationType::SeifertH2xR { order },
        NTClass::Reducible { invariant } => GeometrizationType::TorusReducible { invariant },
        NTClass::PseudoAnosov { .. } => GeometrizationType::Hyperbolic {
            rl: canonical_rl_form(phi)?,
        },
    })
}
