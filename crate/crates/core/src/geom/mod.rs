//! Hyperbolic structure on a layered bundle: shapes, volume, holonomy of
//! the fiber group, and the trace-coordinate fixed points of the monodromy.

mod cmat;
mod develop;
mod dilog;
mod report;
mod traces;

pub use cmat::CMat2;
pub use develop::{holonomy, HolonomyRep};
pub use dilog::bloch_wigner;
pub use report::{solve_report, SolveReport};
pub use traces::{
    fixed_trace_triple, fixed_trace_triples, four_curve_translation_lengths, select_geometric, translation_length, TraceRoots,
    TraceTriple,
};

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::bundle::{GluingRow, GluingSystem};
use crate::error::{Error, Result};

/// Volume of the regular ideal tetrahedron.
pub const REGULAR_TET_VOLUME: f64 = 1.014_941_606_409_653_6;

const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct ShapeSolution {
    pub shapes: Vec<Complex64>,
    /// Max-norm of the log gluing equations at `shapes`.
    pub residual: f64,
    pub iterations: usize,
}

impl Serialize for ShapeSolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json {
            shapes: Vec<[f64; 2]>,
            residual: f64,
            iterations: usize,
        }
        Json {
            shapes: self.shapes.iter().map(|z| [z.re, z.im]).collect(),
            residual: self.residual,
            iterations: self.iterations,
        }
        .serialize(s)
    }
}

fn three_shapes(z: Complex64) -> [Complex64; 3] {
    let one = Complex64::new(1.0, 0.0);
    [z, one / (one - z), one - one / z]
}

fn row_value(row: &GluingRow, zs: &[Complex64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (c, &z) in row.coeffs.iter().zip(zs) {
        let logs = three_shapes(z).map(|w| w.ln());
        s += logs[0] * c[0] as f64 + logs[1] * c[1] as f64 + logs[2] * c[2] as f64;
    }
    s - Complex64::new(0.0, row.rhs as f64 * PI)
}

fn residual_vector(rows: &[&GluingRow], zs: &[Complex64]) -> DVector<Complex64> {
    DVector::from_iterator(rows.len(), rows.iter().map(|r| row_value(r, zs)))
}

fn max_norm(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Derivatives with respect to `log z_t`.
fn jacobian(rows: &[&GluingRow], zs: &[Complex64]) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    DMatrix::from_fn(rows.len(), zs.len(), |i, t| {
        let c = rows[i].coeffs[t];
        let z = zs[t];
        c[0] as f64 + z / (one - z) * c[1] as f64 + one / (z - one) * c[2] as f64
    })
}

/// Damped Newton from a common starting shape. Returns the solution or
/// the residual history on failure.
fn newton(rows: &[&GluingRow], n: usize, start: Complex64) -> std::result::Result<ShapeSolution, Vec<f64>> {
    let mut zs = vec![start; n];
    let mut f = residual_vector(rows, &zs);
    let mut history = vec![max_norm(&f)];
    for it in 0..MAX_ITERATIONS {
        let r = max_norm(&f);
        if r < TOLERANCE {
            return Ok(ShapeSolution {
                shapes: zs,
                residual: r,
                iterations: it,
            });
        }
        let Some(d) = jacobian(rows, &zs).lu().solve(&(-&f)) else {
            return Err(history);
        };
        let mut step = 1.0;
        loop {
            let trial: Vec<Complex64> = zs.iter().zip(d.iter()).map(|(z, dz)| z * (dz * step).exp()).collect();
            let ft = residual_vector(rows, &trial);
            if max_norm(&ft) < r || step < 1e-4 {
                zs = trial;
                f = ft;
                break;
            }
            step /= 2.0;
        }
        history.push(max_norm(&f));
        if !history.last().is_some_and(|x| x.is_finite()) {
            return Err(history);
        }
    }
    let r = max_norm(&f);
    if r < TOLERANCE {
        Ok(ShapeSolution {
            shapes: zs,
            residual: r,
            iterations: MAX_ITERATIONS,
        })
    } else {
        Err(history)
    }
}

/// Solves from the regular shape `e^{iπ/3}`, falling back to a grid of
/// starts in the upper half disk.
pub fn solve_shapes(system: &GluingSystem) -> Result<ShapeSolution> {
    solve_shapes_from(system, Complex64::from_polar(1.0, PI / 3.0))
}

pub fn solve_shapes_from(system: &GluingSystem, start: Complex64) -> Result<ShapeSolution> {
    let rows: Vec<&GluingRow> = system.independent_rows().collect();
    let n = system.n_tetrahedra();
    let mut starts = vec![start];
    for r in [0.5, 0.8, 1.2, 2.0] {
        for k in 1..6 {
            starts.push(Complex64::from_polar(r, k as f64 * PI / 6.0));
        }
    }
    let mut trace = Vec::new();
    for s in starts {
        match newton(&rows, n, s) {
            Ok(sol) if sol.shapes.iter().all(|z| z.im > 0.0) => return Ok(sol),
            Ok(sol) => trace.extend(sol.shapes.iter().map(|z| z.im)),
            Err(h) => trace.extend(h),
        }
    }
    Err(Error::solver("gluing equations: no positively oriented solution", trace))
}

/// Sum of Bloch–Wigner dilogarithms of the shapes.
pub fn volume(sol: &ShapeSolution) -> f64 {
    sol.shapes.iter().map(|&z| bloch_wigner(z)).sum()
}
