//! Finite approximations of the Cannon–Thurston curve.
//!
//! Cusps of a reference Fuchsian punctured-torus group are the fixed points
//! of the conjugates `wKw⁻¹` of the commutator `K`; they are dense in the
//! real circle and correspond to cosets `w⟨K⟩`. Sending each such cusp to
//! the fixed point of `ρ(w)ρ(K)ρ(w)⁻¹` and reading the images in circular
//! order of the anchors traces out the curve at the cusps.

mod render;

pub use render::{raster_hash, render_svg, write_csv, Projection, Style};

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geom::{CMat2, HolonomyRep};
use crate::group::FreeWord;

type C = Complex64;

/// Hard cap on enumeration depth.
pub const MAX_DEPTH: usize = 20;

/// Reference Fuchsian generators with traces `(3, 3, 3)`.
const REF_A: [[i128; 2]; 2] = [[1, 1], [1, 2]];
const REF_B: [[i128; 2]; 2] = [[1, -1], [-1, 2]];

/// A point of the extended rational line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    /// `num/den` in lowest terms with `den > 0`.
    Finite { num: i128, den: i128 },
    Infinity,
}

impl Anchor {
    fn new(num: i128, den: i128) -> Anchor {
        if den == 0 {
            return Anchor::Infinity;
        }
        let g = num.gcd(&den);
        let s = if den < 0 { -1 } else { 1 };
        Anchor::Finite {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Anchor::Finite { num, den } => num as f64 / den as f64,
            Anchor::Infinity => f64::INFINITY,
        }
    }
}

/// Circular order cut at infinity: finite values ascending, then `∞`.
impl Ord for Anchor {
    fn cmp(&self, o: &Anchor) -> Ordering {
        match (*self, *o) {
            (Anchor::Infinity, Anchor::Infinity) => Ordering::Equal,
            (Anchor::Infinity, _) => Ordering::Greater,
            (_, Anchor::Infinity) => Ordering::Less,
            (Anchor::Finite { num: a, den: b }, Anchor::Finite { num: c, den: d }) => (a * d).cmp(&(c * b)),
        }
    }
}

impl PartialOrd for Anchor {
    fn partial_cmp(&self, o: &Anchor) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Finite { num, den: 1 } => write!(f, "{num}"),
            Anchor::Finite { num, den } => write!(f, "{num}/{den}"),
            Anchor::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Anchor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

type IMat = [[i128; 2]; 2];

fn imul(x: &IMat, y: &IMat) -> IMat {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

fn iinv(x: &IMat) -> IMat {
    [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]
}

fn ref_generator(l: i8) -> IMat {
    match l {
        1 => REF_A,
        -1 => iinv(&REF_A),
        2 => REF_B,
        _ => iinv(&REF_B),
    }
}

fn ref_commutator() -> IMat {
    imul(&imul(&REF_A, &REF_B), &imul(&iinv(&REF_A), &iinv(&REF_B)))
}

/// Fixed point of the reference commutator, as `(num, den)`.
fn base_cusp() -> (i128, i128) {
    let k = ref_commutator();
    // Parabolic with c ≠ 0: fixed point (a − d) / 2c.
    (k[0][0] - k[1][1], 2 * k[1][0])
}

fn apply_exact(m: &IMat, (p, q): (i128, i128)) -> Anchor {
    Anchor::new(m[0][0] * p + m[0][1] * q, m[1][0] * p + m[1][1] * q)
}

/// The real fixed point of `wKw⁻¹` in the reference Fuchsian group.
pub fn cusp_anchor(w: &FreeWord) -> Anchor {
    let m = w
        .letters()
        .iter()
        .fold([[1, 0], [0, 1]], |acc, &l| imul(&acc, &ref_generator(l)));
    apply_exact(&m, base_cusp())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CTPoint {
    pub anchor: Anchor,
    /// `None` is the point at infinity.
    #[serde(serialize_with = "ser_image")]
    pub image: Option<C>,
}

fn ser_image<S: Serializer>(z: &Option<C>, s: S) -> std::result::Result<S::Ok, S::Error> {
    z.map(|z| [z.re, z.im]).serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CTPolyline {
    pub depth: usize,
    pub points: Vec<CTPoint>,
    /// Images of the cusps of the empty word, `A` and `B`; the default
    /// projection sends them to the cube roots of unity.
    #[serde(skip)]
    pub frame: [Option<C>; 3],
}

impl CTPolyline {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The Möbius map sending the frame cusps to `1, ω, ω²`.
    pub fn normalizer(&self) -> Result<CMat2> {
        let [Some(p), Some(q), Some(r)] = self.frame else {
            return Err(Error::Projection("frame cusp at infinity".into()));
        };
        if (p - q).norm() < 1e-12 || (q - r).norm() < 1e-12 || (p - r).norm() < 1e-12 {
            return Err(Error::Projection("frame cusps coincide".into()));
        }
        let w = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        Ok(CMat2::from_three_points([p, q, r], [C::new(1.0, 0.0), w, w * w]))
    }

    /// Images after the frame normalization.
    pub fn normalized(&self) -> Result<Vec<Option<C>>> {
        let m = self.normalizer()?;
        Ok(self.points.iter().map(|p| m.apply(p.image)).collect())
    }
}

fn thread_cap() -> Option<usize> {
    std::env::var("MONODROMY_THREADS").ok()?.parse().ok().filter(|&n| n > 0)
}

struct Entry {
    anchor: Anchor,
    len: u8,
    code: u64,
    image: Option<C>,
}

/// Depth-first walk of reduced words extending `word`.
#[allow(clippy::too_many_arguments)]
fn walk(
    word: &mut Vec<i8>,
    fm: IMat,
    rm: CMat2,
    depth: usize,
    cusp: (i128, i128),
    pk: C,
    gens: &[(i8, IMat, CMat2); 4],
    out: &mut Vec<Entry>,
) {
    let code = word.iter().fold(0u64, |c, &l| c * 4 + (l.unsigned_abs() as u64 - 1) * 2 + (l < 0) as u64);
    out.push(Entry {
        anchor: apply_exact(&fm, cusp),
        len: word.len() as u8,
        code,
        image: rm.apply(Some(pk)),
    });
    if word.len() == depth {
        return;
    }
    for (l, f, r) in gens {
        if word.last() == Some(&-l) {
            continue;
        }
        word.push(*l);
        walk(word, imul(&fm, f), rm * *r, depth, cusp, pk, gens, out);
        word.pop();
    }
}

/// Cusp images of all cosets of `⟨K⟩` reached by words of length ≤ `depth`,
/// in circular order of their anchors.
pub fn ct_polyline(rep: &HolonomyRep, depth: usize) -> Result<CTPolyline> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(Error::domain(format!("depth must be in 1..={MAX_DEPTH}")));
    }
    let k = rep.commutator();
    if (k.trace() * k.trace() - 4.0).norm() > 1e-6 {
        return Err(Error::domain(format!("commutator trace {} is not ±2", k.trace())));
    }
    let pk = k
        .parabolic_fixed_point()
        .ok_or_else(|| Error::domain("commutator fixes infinity; conjugate the rep"))?;
    let cusp = base_cusp();
    let gens = [
        (1i8, REF_A, rep.a),
        (2, REF_B, rep.b),
        (-1, iinv(&REF_A), rep.a.inverse()),
        (-2, iinv(&REF_B), rep.b.inverse()),
    ];
    let id: IMat = [[1, 0], [0, 1]];
    let subtree = |g: &(i8, IMat, CMat2)| {
        let mut out = Vec::new();
        let mut word = vec![g.0];
        walk(&mut word, g.1, g.2, depth, cusp, pk, &gens, &mut out);
        out
    };
    let run = || gens.par_iter().map(subtree).collect::<Vec<_>>();
    let chunks = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::domain(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut entries = vec![Entry {
        anchor: apply_exact(&id, cusp),
        len: 0,
        code: 0,
        image: Some(pk),
    }];
    entries.extend(chunks.into_iter().flatten());
    entries.sort_by(|a, b| a.anchor.cmp(&b.anchor).then(a.len.cmp(&b.len)).then(a.code.cmp(&b.code)));
    entries.dedup_by(|b, a| a.anchor == b.anchor);
    let frame = [Some(pk), rep.a.apply(Some(pk)), rep.b.apply(Some(pk))];
    Ok(CTPolyline {
        depth,
        points: entries
            .into_iter()
            .map(|e| CTPoint {
                anchor: e.anchor,
                image: e.image,
            })
            .collect(),
        frame,
    })
}

/// Point on the unit sphere from a point of the extended plane.
fn to_sphere(z: Option<C>) -> [f64; 3] {
    match z {
        None => [0.0, 0.0, 1.0],
        Some(z) => {
            let r2 = z.norm_sqr();
            [2.0 * z.re / (1.0 + r2), 2.0 * z.im / (1.0 + r2), (r2 - 1.0) / (r2 + 1.0)]
        }
    }
}

/// Fixed generic rotation applied before binning, so that points on the
/// symmetry circles of the frame (the unit circle, the real axis) do not
/// sit on cell boundaries.
fn rotate(p: [f64; 3]) -> [f64; 3] {
    let (a, b, c) = (0.3f64, 0.7f64, 1.1f64);
    let rz = |p: [f64; 3], t: f64| [t.cos() * p[0] - t.sin() * p[1], t.sin() * p[0] + t.cos() * p[1], p[2]];
    let rx = |p: [f64; 3], t: f64| [p[0], t.cos() * p[1] - t.sin() * p[2], t.sin() * p[1] + t.cos() * p[2]];
    rz(rx(rz(p, a), b), c)
}

/// Fraction of cells hit in the `n × n` equal-area partition of the sphere
/// (equal height bands times equal longitude sectors, in a fixed generic
/// orientation), after the frame normalization.
pub fn coverage(poly: &CTPolyline, grid_n: usize) -> Result<f64> {
    if grid_n < 2 {
        return Err(Error::domain("grid_n must be at least 2"));
    }
    let pts = poly.normalized()?;
    Ok(coverage_of(&pts, grid_n))
}

pub(crate) fn coverage_of(pts: &[Option<C>], grid_n: usize) -> f64 {
    let mut hit = vec![false; grid_n * grid_n];
    for &z in pts {
        let [x, y, h] = rotate(to_sphere(z));
        let band = (((h + 1.0) / 2.0 * grid_n as f64) as usize).min(grid_n - 1);
        let lon = y.atan2(x) + std::f64::consts::PI;
        let sector = ((lon / std::f64::consts::TAU * grid_n as f64) as usize).min(grid_n - 1);
        hit[band * grid_n + sector] = true;
    }
    hit.iter().filter(|&&b| b).count() as f64 / (grid_n * grid_n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fuchsian() -> HolonomyRep {
        HolonomyRep::from_generators(
            CMat2::from_real([[1.0, 1.0], [1.0, 2.0]]),
            CMat2::from_real([[1.0, -1.0], [-1.0, 2.0]]),
        )
    }

    #[test]
    fn base_cusp_is_fixed_by_k() {
        let a = cusp_anchor(&FreeWord::identity());
        assert_eq!(a, cusp_anchor(&FreeWord::commutator()));
        assert_eq!(a, cusp_anchor(&FreeWord::commutator().pow(-3)));
        let w: FreeWord = "AbA".parse().unwrap();
        assert_eq!(cusp_anchor(&w), cusp_anchor(&w.concat(&FreeWord::commutator())));
    }

    #[test]
    fn anchors_separate_cosets() {
        let mut words = vec![FreeWord::identity()];
        for n in 1..=4 {
            words.extend(FreeWord::all_of_length(n));
        }
        for w in &words {
            for v in &words {
                let same = v.inverse().concat(w).commutator_power().is_some();
                assert_eq!(cusp_anchor(w) == cusp_anchor(v), same, "{w} {v}");
            }
        }
    }

    #[test]
    fn anchor_order_is_circular() {
        assert!(Anchor::new(-5, 2) < Anchor::new(1, 3));
        assert!(Anchor::new(7, 1) < Anchor::Infinity);
        assert_eq!(Anchor::new(2, -4), Anchor::new(-1, 2));
        assert_eq!(Anchor::new(3, 0), Anchor::Infinity);
    }

    #[test]
    fn fuchsian_images_are_real() {
        let poly = ct_polyline(&fuchsian(), 6).unwrap();
        for p in &poly.points {
            if let Some(z) = p.image {
                assert!(z.im.abs() < 1e-9);
            }
        }
        for z in poly.normalized().unwrap().into_iter().flatten() {
            assert!((z.norm() - 1.0).abs() < 1e-8);
        }
        // Anchors strictly increase.
        assert!(poly.points.windows(2).all(|w| w[0].anchor < w[1].anchor));
    }

    #[test]
    fn single_point_covers_one_quarter() {
        assert_eq!(coverage_of(&[Some(C::new(0.3, 0.1))], 2), 0.25);
    }

    #[test]
    fn depth_is_capped() {
        assert!(ct_polyline(&fuchsian(), 0).is_err());
        assert!(ct_polyline(&fuchsian(), MAX_DEPTH + 1).is_err());
    }
}
