use serde::Serialize;

use crate::bundle::layered_triangulation;
use crate::error::Result;
use crate::mapping_class::RLForm;

use super::{holonomy, solve_shapes, volume, HolonomyRep, ShapeSolution};

#[derive(Clone, Debug, Serialize)]
pub struct Traces {
    #[serde(rename = "A")]
    pub a: [f64; 2],
    #[serde(rename = "B")]
    pub b: [f64; 2],
    #[serde(rename = "AB")]
    pub ab: [f64; 2],
}

/// Everything `solve` reports for one word.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub rl_word: String,
    pub n_tets: usize,
    pub shapes: Vec<[f64; 2]>,
    pub residual: f64,
    pub iterations: usize,
    pub volume: f64,
    pub traces: Traces,
    pub commutator_trace: [f64; 2],
    /// Largest mismatch of `Phi ρ(γ) Phi⁻¹ = ±ρ(φ(γ))` on the generators.
    pub invariance_check: f64,
    #[serde(skip)]
    pub solution: ShapeSolution,
    #[serde(skip)]
    pub rep: HolonomyRep,
}

pub fn solve_report(rl: &RLForm) -> Result<SolveReport> {
    let tb = layered_triangulation(rl)?;
    let sol = solve_shapes(&tb.equations)?;
    let rep = holonomy(&sol, &tb)?;
    let c = |z: num_complex::Complex64| [z.re, z.im];
    Ok(SolveReport {
        rl_word: rl.to_string(),
        n_tets: tb.len(),
        shapes: sol.shapes.iter().map(|&z| c(z)).collect(),
        residual: sol.residual,
        iterations: sol.iterations,
        volume: volume(&sol),
        traces: Traces {
            a: c(rep.a.trace()),
            b: c(rep.b.trace()),
            ab: c((rep.a * rep.b).trace()),
        },
        commutator_trace: c(rep.commutator().trace()),
        invariance_check: rep.equivariance_error(),
        solution: sol,
        rep,
    })
}
