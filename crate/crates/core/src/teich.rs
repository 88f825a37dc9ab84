//! Teichmüller space of the once-punctured torus in Fricke trace coordinates.
//!
//! A point is a triple `(x, y, z)` of traces of `A`, `B` and `AB` with
//! `x² + y² + z² = xyz`, which forces the commutator trace to be `-2`. The
//! curve class `(a, b)` is represented by `A^a B^b` up to conjugacy and
//! inversion, so `(1,1)` has trace `z` and `(1,-1)` has trace `xy - z`.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lamination::{act_on_lamination, intersection_number, CurveClass, MeasuredLamination};
use crate::mapping_class::{classify, Letter, MappingClass, NTClass};
use crate::matrix::IntMatrix;
use crate::scalar::Scalar;

/// Float traces switch to log storage above this value.
const FLOAT_LOG_THRESHOLD: f64 = 1e8;
/// Exact traces switch to log storage once `ln t` exceeds this.
const EXACT_LOG_THRESHOLD: f64 = 575.0;
const LAMINATION_TOL: f64 = 1e-9;
const LAMINATION_MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct FrickePoint {
    x: Scalar,
    y: Scalar,
    z: Scalar,
}

/// Which solution `z` of the Fricke relation to take for given `x, y`.
///
/// The two roots `z` and `xy - z` are related by an `R` trace move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Root {
    #[default]
    Larger,
    Smaller,
}

impl FrickePoint {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Result<FrickePoint> {
        let p = FrickePoint { x, y, z };
        p.check()?;
        Ok(p)
    }

    pub(crate) fn unchecked(x: Scalar, y: Scalar, z: Scalar) -> FrickePoint {
        FrickePoint { x, y, z }
    }

    /// The base point `(3, 3, 3)`.
    pub fn symmetric() -> FrickePoint {
        FrickePoint::unchecked(Scalar::int(3), Scalar::int(3), Scalar::int(3))
    }

    /// Verifies `x, y, z > 2` and the relation (exactly, or to a relative
    /// `1e-9` for float coordinates).
    pub fn check(&self) -> Result<()> {
        let two = Scalar::int(2);
        for (name, t) in [("x", &self.x), ("y", &self.y), ("z", &self.z)] {
            if t.cmp_value(&two) != Some(Ordering::Greater) {
                return Err(Error::domain(format!("trace {name} = {t} is not greater than 2")));
            }
        }
        let defect = self.relation_defect();
        let ok = if defect.is_exact() {
            defect.is_zero()
        } else {
            let scale = self.x.to_f64() * self.y.to_f64() * self.z.to_f64();
            defect.to_f64().abs() <= 1e-9 * scale.max(1.0)
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("{self} violates x² + y² + z² = xyz")))
        }
    }

    /// `x² + y² + z² - xyz`.
    pub fn relation_defect(&self) -> Scalar {
        let (x, y, z) = (&self.x, &self.y, &self.z);
        x * x + y * y + z * z - &(x * y) * z
    }

    pub fn x(&self) -> &Scalar {
        &self.x
    }

    pub fn y(&self) -> &Scalar {
        &self.y
    }

    pub fn z(&self) -> &Scalar {
        &self.z
    }

    /// Trace of `AB⁻¹`, the class `(1,-1)`.
    pub fn w(&self) -> Scalar {
        &(&self.x * &self.y) - &self.z
    }

    pub fn is_exact(&self) -> bool {
        self.x.is_exact() && self.y.is_exact() && self.z.is_exact()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }
}

impl fmt::Display for FrickePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Serialize for FrickePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FrickePoint", 4)?;
        st.serialize_field("x", &self.x.exact_string())?;
        st.serialize_field("y", &self.y.exact_string())?;
        st.serialize_field("z", &self.z.exact_string())?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

/// Point with traces `x, y` and the larger admissible `z`.
pub fn make_fricke(x: &Scalar, y: &Scalar) -> Result<FrickePoint> {
    make_fricke_with_root(x, y, Root::Larger)
}

pub fn make_fricke_with_root(x: &Scalar, y: &Scalar, root: Root) -> Result<FrickePoint> {
    let two = Scalar::int(2);
    if x.cmp_value(&two) != Some(Ordering::Greater) || y.cmp_value(&two) != Some(Ordering::Greater) {
        return Err(Error::domain(format!("traces ({x}, {y}) must exceed 2")));
    }
    let xy = x * y;
    let disc = &xy * &xy - &(Scalar::int(4) * (x * x + y * y));
    if disc.signum() < 0 {
        return Err(Error::domain(format!(
            "no hyperbolic structure with traces ({x}, {y}): discriminant {} < 0",
            disc.to_f64()
        )));
    }
    let s = disc.sqrt().unwrap_or_else(|_| Scalar::Float(disc.to_f64().sqrt()));
    let z = match root {
        Root::Larger => (&xy + &s) * Scalar::ratio(1, 2),
        Root::Smaller => (&xy - &s) * Scalar::ratio(1, 2),
    };
    FrickePoint::new(x.clone(), y.clone(), z)
}

/// Pullback by `R`: `(x, y, z) ↦ (x, z, xz - y)`.
pub fn r_move(g: &FrickePoint) -> FrickePoint {
    FrickePoint::unchecked(g.x.clone(), g.z.clone(), &(&g.x * &g.z) - &g.y)
}

/// `(x, y, z) ↦ (x, xy - z, y)`.
pub fn r_move_inverse(g: &FrickePoint) -> FrickePoint {
    FrickePoint::unchecked(g.x.clone(), g.w(), g.y.clone())
}

/// Pullback by `L`: `(x, y, z) ↦ (z, y, yz - x)`.
pub fn l_move(g: &FrickePoint) -> FrickePoint {
    FrickePoint::unchecked(g.z.clone(), g.y.clone(), &(&g.y * &g.z) - &g.x)
}

/// `(x, y, z) ↦ (xy - z, y, x)`.
pub fn l_move_inverse(g: &FrickePoint) -> FrickePoint {
    FrickePoint::unchecked(g.w(), g.y.clone(), g.x.clone())
}

/// Push-forward of a marked structure, characterized by
/// `trace_{act(φ,g)}(M·c) = trace_g(c)` for every class `c`.
///
/// The moves above are pullbacks, so each generator contributes its inverse
/// move, and the word is read from the right.
pub fn act_on_teich(phi: &MappingClass, g: &FrickePoint) -> Result<FrickePoint> {
    g.check()?;
    let mut p = g.clone();
    for &(letter, s) in phi.unit_letters().iter().rev() {
        p = match (letter, s > 0) {
            (Letter::R, true) => r_move_inverse(&p),
            (Letter::R, false) => r_move(&p),
            (Letter::L, true) => l_move_inverse(&p),
            (Letter::L, false) => l_move(&p),
        };
    }
    Ok(p)
}

trait TraceOps: Clone {
    /// `a·b - c`.
    fn mul_sub(a: &Self, b: &Self, c: &Self) -> Self;
}

impl TraceOps for Scalar {
    fn mul_sub(a: &Self, b: &Self, c: &Self) -> Self {
        &(a * b) - c
    }
}

/// A positive trace held either as a scalar or as its logarithm.
#[derive(Clone, Debug)]
enum Trace {
    Value(Scalar),
    Log(f64),
}

impl Trace {
    fn ln(&self) -> f64 {
        match self {
            Trace::Value(s) => s.ln_abs(),
            Trace::Log(l) => *l,
        }
    }
}

impl TraceOps for Trace {
    fn mul_sub(a: &Self, b: &Self, c: &Self) -> Self {
        if let (Trace::Value(x), Trace::Value(y), Trace::Value(z)) = (a, b, c) {
            let r = &(x * y) - z;
            if r.is_exact() {
                let l = r.ln_abs();
                return if l > EXACT_LOG_THRESHOLD { Trace::Log(l) } else { Trace::Value(r) };
            }
            let v = r.to_f64();
            if v <= FLOAT_LOG_THRESHOLD {
                return Trace::Value(r);
            }
            if v.is_finite() {
                return Trace::Log(v.ln());
            }
        }
        let s = a.ln() + b.ln();
        Trace::Log(s + (-(c.ln() - s).exp()).ln_1p())
    }
}

/// Stern–Brocot descent to the primitive class `(a, b)` from the base
/// triple, calling `visit` on every intermediate `(t_u, t_v, t_{u+v})`.
fn descend<T: TraceOps>(x: T, y: T, z: T, a: i128, b: i128, mut visit: impl FnMut(&T, &T, &T)) -> T {
    let (a, b) = if a < 0 || (a == 0 && b < 0) { (-a, -b) } else { (a, b) };
    if b == 0 {
        return x;
    }
    if a == 0 {
        return y;
    }
    let (mut tu, mut tv, mut tw) = if b > 0 {
        (x, y, z)
    } else {
        let w = T::mul_sub(&x, &y, &z);
        (x, y, w)
    };
    let (mut m, mut k) = (a, b.abs());
    loop {
        visit(&tu, &tv, &tw);
        match m.cmp(&k) {
            Ordering::Equal => return tw,
            Ordering::Greater => {
                m -= k;
                let next = T::mul_sub(&tu, &tw, &tv);
                tv = std::mem::replace(&mut tw, next);
            }
            Ordering::Less => {
                k -= m;
                let next = T::mul_sub(&tw, &tv, &tu);
                tu = std::mem::replace(&mut tw, next);
            }
        }
    }
}

/// Trace of the class `c` at `g`, exact when `g` is exact.
pub fn trace_of_slope(g: &FrickePoint, c: CurveClass) -> Scalar {
    descend(g.x.clone(), g.y.clone(), g.z.clone(), c.a() as i128, c.b() as i128, |_, _, _| {})
}

/// Every triple visited while descending to `c`.
pub fn descent_triples(g: &FrickePoint, c: CurveClass) -> Vec<[Scalar; 3]> {
    let mut out = Vec::new();
    descend(g.x.clone(), g.y.clone(), g.z.clone(), c.a() as i128, c.b() as i128, |u, v, w| {
        out.push([u.clone(), v.clone(), w.clone()])
    });
    out
}

/// `ln trace` of the primitive class `(a, b)`, safe for astronomically
/// large traces.
pub fn log_trace(g: &FrickePoint, a: i128, b: i128) -> f64 {
    let t = |s: &Scalar| Trace::Value(s.clone());
    descend(t(&g.x), t(&g.y), t(&g.z), a, b, |_, _, _| {}).ln()
}

/// `2·arccosh(t/2)` from `L = ln t`:
/// `2L + 2·ln((1 + sqrt(1 - 4e^{-2L}))/2)`.
pub fn length_from_log_trace(l: f64) -> f64 {
    let e = (-2.0 * l).exp();
    2.0 * l + 2.0 * ((1.0 + (1.0 - 4.0 * e).max(0.0).sqrt()) / 2.0).ln()
}

/// Hyperbolic length of the geodesic in the primitive class `(a, b)`.
pub fn curve_length(g: &FrickePoint, a: i128, b: i128) -> f64 {
    length_from_log_trace(log_trace(g, a, b))
}

/// Length of a measured lamination.
///
/// Weighted curves are evaluated directly. Irrational laminations are
/// approximated by continued-fraction convergents of their slope, each
/// rescaled to the norm of `λ`, until successive estimates agree to `1e-9`.
pub fn length_of_lamination(g: &FrickePoint, lambda: &MeasuredLamination) -> Result<f64> {
    let [a, b] = lambda.vector()?;
    if b.is_zero() {
        return Ok(a.abs().to_f64() * curve_length(g, 1, 0));
    }
    let slope = a.checked_div(b)?;
    if let Some(r) = slope.as_rational() {
        // (a, b) = (b/d)·(n, d)
        let n = big_to_i128(r.numer())?;
        let d = big_to_i128(r.denom())?;
        let weight = (b / &Scalar::big(r.denom().clone())).abs().to_f64();
        return Ok(weight * curve_length(g, n, d));
    }
    let norm = lambda.norm();
    let mut x = slope;
    let (mut h_prev, mut h) = (0i128, 1i128);
    let (mut k_prev, mut k) = (1i128, 0i128);
    let mut prev = f64::NAN;
    for _ in 0..LAMINATION_MAX_DEPTH {
        let q = big_to_i128(&x.floor()?)?;
        let step = |q: i128, cur: i128, old: i128| {
            q.checked_mul(cur)
                .and_then(|v| v.checked_add(old))
                .ok_or(Error::Overflow("continued-fraction convergent"))
        };
        let h_next = step(q, h, h_prev)?;
        let k_next = step(q, k, k_prev)?;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let est = norm / (h as f64).hypot(k as f64) * curve_length(g, h, k);
        if (est - prev).abs() < LAMINATION_TOL {
            return Ok(est);
        }
        prev = est;
        let frac = &x - &Scalar::big(BigInt::from(q));
        if frac.is_zero() {
            return Ok(est);
        }
        x = frac.recip()?;
    }
    Err(Error::Tolerance {
        message: format!("lamination length did not converge within depth {LAMINATION_MAX_DEPTH}"),
        last: [prev, prev],
    })
}

fn big_to_i128(n: &BigInt) -> Result<i128> {
    n.to_i128().ok_or(Error::Overflow("curve coordinates"))
}

pub type Mat2 = [[Scalar; 2]; 2];

/// Generators `A = diag(λ, 1/λ)` and `B = [[b1, 1], [b1·b4 - 1, b4]]` with
/// `tr A = x`, `tr B = y`, `tr AB = z`. Exact when the coordinates and
/// `sqrt(x² - 4)` lie in one quadratic field, `f64` otherwise.
pub fn fuchsian_matrices(g: &FrickePoint) -> (Mat2, Mat2) {
    let half = Scalar::ratio(1, 2);
    let disc = &g.x * &g.x - Scalar::int(4);
    let s = disc.sqrt().unwrap_or_else(|_| Scalar::Float(disc.to_f64().sqrt()));
    let lam = (&g.x + &s) * half.clone();
    let lam_inv = (&g.x - &s) * half;
    let b1 = (&g.z - &(&g.y * &lam_inv)) / (&lam - &lam_inv);
    let b4 = &g.y - &b1;
    let b3 = &b1 * &b4 - Scalar::one();
    let a = [[lam, Scalar::zero()], [Scalar::zero(), lam_inv]];
    let b = [[b1, Scalar::one()], [b3, b4]];
    (a, b)
}

pub fn mat2_to_f64(m: &Mat2) -> [[f64; 2]; 2] {
    [[m[0][0].to_f64(), m[0][1].to_f64()], [m[1][0].to_f64(), m[1][1].to_f64()]]
}

/// Lengths of `(1,0), (0,1), (1,1), (1,-1)`, from traces `x, y, z, xy - z`.
pub fn four_curve_lengths(g: &FrickePoint) -> [f64; 4] {
    let l = |t: &Scalar| length_from_log_trace(t.ln_abs());
    [l(&g.x), l(&g.y), l(&g.z), l(&g.w())]
}

/// Row of the diagonal sweep `x = y`.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub x: f64,
    pub lengths: [f64; 4],
    pub max: f64,
}

/// Evaluates [`four_curve_lengths`] along `x = y = lo + i·step` for
/// `i = 0..=steps`, skipping traces without a hyperbolic structure
/// (`x < 2√2`).
pub fn fricke_diagonal_sweep(lo: f64, hi: f64, steps: usize) -> Vec<SweepRow> {
    (0..=steps)
        .filter_map(|i| {
            let x = lo + (hi - lo) * i as f64 / steps as f64;
            let t = Scalar::Float(x);
            let g = make_fricke(&t, &t).ok()?;
            let lengths = four_curve_lengths(&g);
            let max = lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            Some(SweepRow { x, lengths, max })
        })
        .collect()
}

/// Lengths of probes along the orbit `g_n = act_on_teich(φⁿ, g₀)`.
#[derive(Clone, Debug, Serialize)]
pub struct LengthProfile {
    pub probes: Vec<MeasuredLamination>,
    /// `lengths[n][i]`: length of probe `i` at `g_n`.
    pub lengths: Vec<Vec<f64>>,
    /// Limits of `length_i / length_0` predicted by intersection numbers
    /// with the attracting eigenlamination (pseudo-Anosov `φ` only).
    pub predicted_ratios: Option<Vec<f64>>,
    /// Predicted per-step growth factor (the dilatation).
    pub predicted_growth: Option<f64>,
}

impl LengthProfile {
    pub fn n_max(&self) -> usize {
        self.lengths.len() - 1
    }

    pub fn ratio(&self, n: usize, i: usize) -> f64 {
        self.lengths[n][i] / self.lengths[n][0]
    }

    /// `length_{g_n} / length_{g_{n-1}}` for probe `i`, `n ≥ 1`.
    pub fn growth(&self, n: usize, i: usize) -> f64 {
        self.lengths[n][i] / self.lengths[n - 1][i]
    }

    /// CSV with columns `n, probe_index, length, ratio_to_probe0`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(["n", "probe_index", "length", "ratio_to_probe0"]).map_err(io)?;
        for (n, row) in self.lengths.iter().enumerate() {
            for (i, l) in row.iter().enumerate() {
                w.write_record([
                    n.to_string(),
                    i.to_string(),
                    format!("{l:.15e}"),
                    format!("{:.15e}", self.ratio(n, i)),
                ])
                .map_err(io)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Probe lengths along `g_n = act_on_teich(φⁿ, g₀)` for `n = 0..=n_max`.
///
/// By equivariance the length of `c` at `g_n` equals the length of
/// `φ⁻ⁿ·c` at `g₀`; evaluating it that way keeps every trace descent on the
/// base triple, where log-domain arithmetic never cancels.
pub fn boundary_profile(
    g0: &FrickePoint,
    phi: &MappingClass,
    n_max: usize,
    probes: &[MeasuredLamination],
) -> Result<LengthProfile> {
    g0.check()?;
    if probes.is_empty() || probes.iter().any(MeasuredLamination::is_empty) {
        return Err(Error::domain("boundary profile needs nonempty probes"));
    }
    let inv = phi.matrix().inverse();
    let mut powers = vec![IntMatrix::identity()];
    for n in 1..=n_max {
        powers.push(powers[n - 1].checked_mul(&inv)?);
    }
    let columns: Vec<Vec<f64>> = probes
        .par_iter()
        .map(|probe| {
            powers
                .iter()
                .map(|m| length_of_lamination(g0, &act_on_lamination(m, probe)?))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let lengths = (0..=n_max)
        .map(|n| columns.iter().map(|c| c[n]).collect())
        .collect();
    let (predicted_ratios, predicted_growth) = match classify(phi) {
        NTClass::PseudoAnosov { dilatation, mu_u, .. } => {
            let i0 = intersection_number(&probes[0], &mu_u).to_f64();
            let ratios = probes
                .iter()
                .map(|p| intersection_number(p, &mu_u).to_f64() / i0)
                .collect();
            (Some(ratios), Some(dilatation.to_f64()))
        }
        _ => (None, None),
    };
    Ok(LengthProfile {
        probes: probes.to_vec(),
        lengths,
        predicted_ratios,
        predicted_growth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping_class::parse_word;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn class(a: i64, b: i64) -> CurveClass {
        CurveClass::new(a, b).unwrap()
    }

    #[test]
    fn make_fricke_roots() {
        let g = make_fricke(&s("3"), &s("3")).unwrap();
        assert_eq!(g.z(), &s("6"));
        let h = make_fricke_with_root(&s("3"), &s("3"), Root::Smaller).unwrap();
        assert_eq!(h, FrickePoint::symmetric());
        assert!(make_fricke(&s("2.9"), &s("2.9")).is_ok());
        assert!(make_fricke(&s("2.5"), &s("2.5")).is_err());
        assert!(make_fricke(&s("2"), &s("5")).is_err());
        // Irrational z stays exact.
        let g = make_fricke(&s("3"), &s("4")).unwrap();
        assert!(g.is_exact());
        assert!(g.relation_defect().is_zero());
    }

    #[test]
    fn trace_moves() {
        let g = FrickePoint::symmetric();
        assert_eq!(r_move(&g), FrickePoint::unchecked(s("3"), s("3"), s("6")));
        let h = r_move(&g);
        assert_eq!(r_move_inverse(&h), g);
        assert_eq!(r_move_inverse(&r_move(&h)), h);
        assert_eq!(l_move_inverse(&l_move(&h)), h);
        assert_eq!(act_on_teich(&parse_word("").unwrap(), &h).unwrap(), h);
        assert!(act_on_teich(&parse_word("R").unwrap(), &FrickePoint::unchecked(s("3"), s("3"), s("4"))).is_err());
    }

    #[test]
    fn traces_of_slopes() {
        let g = FrickePoint::symmetric();
        assert_eq!(trace_of_slope(&g, class(1, 0)), s("3"));
        assert_eq!(trace_of_slope(&g, class(2, 1)), s("6"));
        assert_eq!(trace_of_slope(&g, class(1, 1)), s("3"));
        assert_eq!(trace_of_slope(&g, class(1, -1)), s("6"));
        for t in descent_triples(&make_fricke(&s("3"), &s("4")).unwrap(), class(7, -12)) {
            let p = FrickePoint::unchecked(t[0].clone(), t[1].clone(), t[2].clone());
            assert!(p.relation_defect().is_zero());
        }
    }

    #[test]
    fn lengths_of_curves() {
        let g = FrickePoint::symmetric();
        let unit = length_of_lamination(&g, &MeasuredLamination::from_ints(0, 1)).unwrap();
        assert!((unit - 2.0 * 1.5f64.acosh()).abs() < 1e-14);
        assert!((unit - 1.924_847_300_238_2).abs() < 1e-10);
        let double = length_of_lamination(&g, &MeasuredLamination::from_ints(0, 2)).unwrap();
        assert!((double - 2.0 * unit).abs() < 1e-14);
        let l21 = length_of_lamination(&g, &MeasuredLamination::from_ints(2, 1)).unwrap();
        assert!((l21 - 2.0 * 3f64.acosh()).abs() < 1e-14);
        let half = MeasuredLamination::from_vector(s("3/2"), s("1/2"));
        let l31 = curve_length(&g, 3, 1);
        assert!((length_of_lamination(&g, &half).unwrap() - l31 / 2.0).abs() < 1e-14);
    }

    #[test]
    fn log_domain_matches_exact_lengths() {
        let g = FrickePoint::symmetric();
        for (a, b) in [(5, 3), (13, -8), (21, 34)] {
            let exact = trace_of_slope(&g, class(a, b)).to_f64();
            let via_log = curve_length(&g, a as i128, b as i128);
            assert!((via_log - 2.0 * (exact / 2.0).acosh()).abs() < 1e-12);
        }
    }

    #[test]
    fn irrational_lamination_length_is_a_limit() {
        let g = FrickePoint::symmetric();
        let mu = MeasuredLamination::from_vector(Scalar::int(2), s("-1+sqrt(5)"));
        let l = length_of_lamination(&g, &mu).unwrap();
        let scaled = length_of_lamination(&g, &mu.scale(&s("3"))).unwrap();
        assert!((scaled - 3.0 * l).abs() < 1e-8);
        // Matches a deep convergent of slope (√5-1)/2.
        let (p, q) = (832_040i128, 1_346_269i128);
        let approx = curve_length(&g, q, p) * mu.norm() / (p as f64).hypot(q as f64);
        assert!((l - approx).abs() < 1e-8);
    }

    #[test]
    fn fuchsian_generators_reproduce_traces() {
        for g in [FrickePoint::symmetric(), make_fricke(&s("3"), &s("4")).unwrap(), make_fricke(&s("2.9"), &s("3.3")).unwrap()] {
            let (a, b) = fuchsian_matrices(&g);
            let (a, b) = (mat2_to_f64(&a), mat2_to_f64(&b));
            let mul = |m: [[f64; 2]; 2], n: [[f64; 2]; 2]| {
                [
                    [m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]],
                    [m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]],
                ]
            };
            let inv = |m: [[f64; 2]; 2]| [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
            let tr = |m: [[f64; 2]; 2]| m[0][0] + m[1][1];
            let [x, y, z] = g.to_f64();
            assert!((tr(a) - x).abs() < 1e-12, "{g} {a:?} {x}");
            assert!((tr(b) - y).abs() < 1e-12);
            assert!((tr(mul(a, b)) - z).abs() < 1e-12);
            let k = mul(mul(a, b), mul(inv(a), inv(b)));
            assert!((tr(k) + 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn four_curves_at_symmetric_point() {
        let l = four_curve_lengths(&FrickePoint::symmetric());
        assert!((l[0] - 1.924_847_3).abs() < 1e-6);
        assert!((l[3] - 3.525_494_3).abs() < 1e-6);
    }

    #[test]
    fn reducible_orbit_fixes_its_curve() {
        let phi = parse_word("R").unwrap();
        let probes = [MeasuredLamination::from_ints(1, 0), MeasuredLamination::from_ints(0, 1)];
        let p = boundary_profile(&FrickePoint::symmetric(), &phi, 10, &probes).unwrap();
        for n in 0..=10 {
            assert!((p.lengths[n][0] - p.lengths[0][0]).abs() < 1e-12);
        }
        for n in 6..=10 {
            assert!(p.lengths[n][1] > p.lengths[n - 1][1]);
        }
        assert!(p.predicted_ratios.is_none());
    }

    #[test]
    fn csv_export_has_header_and_rows() {
        let phi = parse_word("R L").unwrap();
        let probes = [MeasuredLamination::from_ints(1, 0), MeasuredLamination::from_ints(0, 1)];
        let p = boundary_profile(&FrickePoint::symmetric(), &phi, 2, &probes).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,probe_index,length,ratio_to_probe0\n"));
        assert_eq!(text.lines().count(), 1 + 3 * 2);
    }
}
