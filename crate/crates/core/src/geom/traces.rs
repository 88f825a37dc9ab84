//! Complex trace coordinates fixed by the monodromy, and complex lengths.
//!
//! A doubly degenerate fiber group has character `(tr A, tr B, tr AB)`
//! fixed by the monodromy's trace moves up to a sign lift
//! `(x, y, z) ↦ (εx, δy, εδz)`, and lies on the parabolic-commutator
//! surface `x² + y² + z² = xyz`. Both routes to the group are computed
//! independently and cross-checked here.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bundle::layered_triangulation;
use crate::error::{Error, Result};
use crate::group::FreeWord;
use crate::mapping_class::{canonical_rl_form, classify, Letter, MappingClass, NTClass};

use super::develop::{holonomy, HolonomyRep};
use super::solve_shapes;

type C = Complex64;

/// Sign lifts `(ε, δ)` acting as `(εx, δy, εδz)`.
const LIFTS: [(f64, f64); 4] = [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceTriple {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub z: [f64; 2],
    /// The sign lift under which the triple is fixed.
    pub lift: [i8; 2],
}

impl TraceTriple {
    fn new(t: [C; 3], lift: (f64, f64)) -> TraceTriple {
        TraceTriple {
            x: [t[0].re, t[0].im],
            y: [t[1].re, t[1].im],
            z: [t[2].re, t[2].im],
            lift: [lift.0 as i8, lift.1 as i8],
        }
    }

    pub fn values(&self) -> [C; 3] {
        [self.x, self.y, self.z].map(|p| C::new(p[0], p[1]))
    }

    pub fn relation_residual(&self) -> f64 {
        let [x, y, z] = self.values();
        (x * x + y * y + z * z - x * y * z).norm()
    }

    pub fn is_real(&self) -> bool {
        self.values().iter().all(|v| v.im.abs() < 1e-9)
    }

    /// Distance to another triple, minimized over sign lifts.
    pub fn lift_distance(&self, t: [C; 3]) -> f64 {
        let s = self.values();
        LIFTS
            .iter()
            .map(|&(e, d)| {
                let u = [t[0] * e, t[1] * d, t[2] * (e * d)];
                (0..3).map(|i| (s[i] - u[i]).norm()).fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Move for one letter pushed forward on characters, with its Jacobian.
fn step(letter: Letter, t: [C; 3]) -> ([C; 3], [[C; 3]; 3]) {
    let [x, y, z] = t;
    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    match letter {
        // (x, y, z) ↦ (x, xy − z, y)
        Letter::R => ([x, x * y - z, y], [[one, zero, zero], [y, x, -one], [zero, one, zero]]),
        // (x, y, z) ↦ (xy − z, y, x)
        Letter::L => ([x * y - z, y, x], [[y, x, -one], [zero, one, zero], [one, zero, zero]]),
    }
}

fn mat_mul(a: &[[C; 3]; 3], b: &[[C; 3]; 3]) -> [[C; 3]; 3] {
    let mut out = [[C::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Trace-move action of a positive word (read right to left, matching
/// `act_on_teich`), with Jacobian.
fn act(word: &[Letter], t: [C; 3]) -> ([C; 3], [[C; 3]; 3]) {
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    let mut jac = [[one, zero, zero], [zero, one, zero], [zero, zero, one]];
    let mut cur = t;
    for &l in word.iter().rev() {
        let (next, j) = step(l, cur);
        jac = mat_mul(&j, &jac);
        cur = next;
    }
    (cur, jac)
}

fn system(word: &[Letter], t: [C; 3], lift: (f64, f64)) -> (DVector<C>, DMatrix<C>) {
    let s = [lift.0, lift.1, lift.0 * lift.1];
    let (img, jac) = act(word, t);
    let [x, y, z] = t;
    let mut f = DVector::zeros(4);
    let mut j = DMatrix::zeros(4, 3);
    for i in 0..3 {
        f[i] = img[i] - t[i] * s[i];
        for k in 0..3 {
            j[(i, k)] = jac[i][k];
        }
        j[(i, i)] -= C::new(s[i], 0.0);
    }
    f[3] = x * x + y * y + z * z - x * y * z;
    j[(3, 0)] = 2.0 * x - y * z;
    j[(3, 1)] = 2.0 * y - x * z;
    j[(3, 2)] = 2.0 * z - x * y;
    (f, j)
}

fn levenberg_marquardt(word: &[Letter], start: [C; 3], lift: (f64, f64)) -> Option<[C; 3]> {
    let norm = |f: &DVector<C>| f.iter().map(|v| v.norm_sqr()).sum::<f64>();
    let mut t = start;
    let (mut f, mut j) = system(word, t, lift);
    let mut r = norm(&f);
    // Levenberg–Marquardt damping, relaxed after every accepted step.
    let mut mu = 1e-3;
    for _ in 0..400 {
        if !r.is_finite() || r > 1e24 {
            return None;
        }
        if r < 1e-26 {
            return Some(t);
        }
        let jh = j.adjoint();
        let mut normal = &jh * &j;
        for i in 0..3 {
            normal[(i, i)] += C::new(mu, 0.0);
        }
        let d = normal.lu().solve(&(-(&jh * &f)))?;
        let trial = [t[0] + d[0], t[1] + d[1], t[2] + d[2]];
        let (ft, jt) = system(word, trial, lift);
        let rt = norm(&ft);
        if rt < r {
            (t, f, j, r) = (trial, ft, jt, rt);
            mu = (mu / 3.0).max(1e-12);
        } else {
            mu *= 4.0;
            if mu > 1e12 {
                return None;
            }
        }
    }
    let (f, _) = system(word, t, lift);
    (f.iter().map(|v| v.norm()).fold(0.0, f64::max) < 1e-10).then_some(t)
}

/// Every root found by seeded multi-start Levenberg–Marquardt, over all sign
/// lifts, deduplicated. Complex conjugates of roots are roots as well.
pub fn fixed_trace_triples(phi: &MappingClass) -> Result<Vec<TraceTriple>> {
    if !matches!(classify(phi), NTClass::PseudoAnosov { .. }) {
        return Err(Error::domain("fixed trace triples need a pseudo-Anosov class"));
    }
    let word = canonical_rl_form(phi)?.letters();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7472_6163_6573);
    let mut roots: Vec<TraceTriple> = Vec::new();
    let push = |roots: &mut Vec<TraceTriple>, t: [C; 3], lift| {
        let cand = TraceTriple::new(t, lift);
        let dup = roots
            .iter()
            .any(|r| r.lift == cand.lift && (0..3).all(|i| (r.values()[i] - t[i]).norm() < 1e-8));
        if !dup {
            roots.push(cand);
        }
    };
    for lift in LIFTS {
        for _ in 0..400 {
            let start = [(); 3].map(|_| C::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)));
            if let Some(t) = levenberg_marquardt(&word, start, lift) {
                // Skip the degenerate character (0, 0, 0).
                if t.iter().all(|v| v.norm() < 1e-4) {
                    continue;
                }
                push(&mut roots, t, lift);
                push(&mut roots, t.map(|v| v.conj()), lift);
            }
        }
    }
    Ok(roots)
}

/// The root realized by the hyperbolic structure, and the rest.
#[derive(Clone, Debug, Serialize)]
pub struct TraceRoots {
    pub geometric: TraceTriple,
    /// Distance from the holonomy traces, minimized over sign lifts.
    pub match_error: f64,
    pub companions: Vec<TraceTriple>,
}

/// Solves for fixed trace triples and selects the one matching the
/// holonomy of the layered triangulation.
pub fn fixed_trace_triple(phi: &MappingClass) -> Result<TraceRoots> {
    let roots = fixed_trace_triples(phi)?;
    let rl = canonical_rl_form(phi)?;
    let tb = layered_triangulation(&rl)?;
    let sol = solve_shapes(&tb.equations)?;
    let rep = holonomy(&sol, &tb)?;
    select_geometric(roots, &rep)
}

pub fn select_geometric(roots: Vec<TraceTriple>, rep: &HolonomyRep) -> Result<TraceRoots> {
    let target = [rep.a.trace(), rep.b.trace(), (rep.a * rep.b).trace()];
    let (idx, err) = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.lift_distance(target)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::solver("no fixed trace triple found", Vec::new()))?;
    if err > 1e-4 {
        return Err(Error::Tolerance {
            message: "no fixed trace triple matches the holonomy".into(),
            last: [err, roots.len() as f64],
        });
    }
    let mut companions = roots;
    let geometric = companions.remove(idx);
    Ok(TraceRoots {
        geometric,
        match_error: err,
        companions,
    })
}

/// `2 arccosh(tr/2)` with nonnegative real part; parabolic words give 0.
pub fn translation_length(rep: &HolonomyRep, word: &FreeWord) -> Result<C> {
    if word.is_empty() {
        return Err(Error::domain("the identity has no geodesic"));
    }
    let t = rep.eval(word).trace();
    if (t * t - 4.0).norm() < 1e-8 {
        return Ok(C::new(0.0, 0.0));
    }
    let l = (t / 2.0).acosh() * 2.0;
    Ok(if l.re < 0.0 { -l } else { l })
}

/// Real translation lengths of `A, B, AB, AB⁻¹`, the curves of slopes
/// `(1,0), (0,1), (1,1), (1,−1)`.
pub fn four_curve_translation_lengths(rep: &HolonomyRep) -> [f64; 4] {
    let words = [[1i8].as_slice(), &[2], &[1, 2], &[1, -2]];
    words.map(|w| {
        let w = FreeWord::from_letters(w).expect("valid letters");
        translation_length(rep, &w).expect("nonempty word").re
    })
}
