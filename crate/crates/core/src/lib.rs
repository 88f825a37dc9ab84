//! Laminations, mapping classes, Teichmüller space and hyperbolic
//! structures for once-punctured torus bundles over the circle.

pub mod bundle;
pub mod error;
pub mod geom;
pub mod group;
pub mod lamination;
pub mod limitset;
pub mod mapping_class;
pub mod matrix;
pub mod scalar;
pub mod teich;

pub use bundle::{gluing_equations, layered_triangulation, trichotomy, GeometrizationType, GluingSystem, TriangulatedBundle};
pub use error::{Error, Result};
pub use geom::{
    fixed_trace_triple, holonomy, solve_shapes, translation_length, volume, CMat2, HolonomyRep, ShapeSolution, TraceTriple,
};
pub use group::FreeWord;
pub use lamination::{
    act_on_lamination, alternation_number, intersection_number, make_lamination, projective_class, CurveClass,
    FareyTriangulation, MeasuredLamination, Slope, Turn,
};
pub use mapping_class::{canonical_rl_form, classify, dilatation, parse_word, MappingClass, NTClass, RLForm};
pub use limitset::{coverage, ct_polyline, cusp_anchor, render_svg, Anchor, CTPolyline};
pub use matrix::IntMatrix;
pub use scalar::{QuadSurd, Scalar};
pub use teich::{
    act_on_teich, boundary_profile, four_curve_lengths, fuchsian_matrices, length_of_lamination, make_fricke,
    make_fricke_with_root, trace_of_slope, FrickePoint, LengthProfile, Root,
};
