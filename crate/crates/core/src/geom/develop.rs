//! Holonomy of the fiber group from a developed layered triangulation.
//!
//! The fiber `T(e₁, e₂)` sits at the bottom of layer 0 and is pleated along
//! its three edge classes. Rotating through the tetrahedra above an edge
//! gives that edge's cross-ratio parameter; developing the pleated lattice
//! triangulation of the plane with those parameters realizes the deck
//! translations `(1,0)` and `(0,1)` as Möbius maps `A` and `B`.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::bundle::{shape_column, TriangulatedBundle};
use crate::bundle::{BOTTOM, TOP};
use crate::error::{Error, Result};
use crate::group::FreeWord;
use crate::mapping_class::{Letter, MappingClass, Token};

use super::cmat::CMat2;
use super::{three_shapes, ShapeSolution};

type C = Complex64;
type Point = [i64; 2];

const DEGENERATE: f64 = 1e-8;

/// A representation of the fiber group together with the conjugator
/// realizing the monodromy: `Phi ρ(γ) Phi⁻¹ = ±ρ(φ(γ))`.
#[derive(Clone, Debug, Serialize)]
pub struct HolonomyRep {
    pub a: CMat2,
    pub b: CMat2,
    pub phi: CMat2,
    #[serde(skip)]
    monodromy: MappingClass,
    /// Fiber automorphism applied after the word (identity or `A ↦ A⁻¹, B ↦ B⁻¹`).
    #[serde(skip)]
    hyperelliptic: bool,
}

impl HolonomyRep {
    /// Builds a rep from given generators; `phi` defaults to the identity.
    pub fn from_generators(a: CMat2, b: CMat2) -> HolonomyRep {
        HolonomyRep {
            a,
            b,
            phi: CMat2::identity(),
            monodromy: MappingClass::identity(),
            hyperelliptic: false,
        }
    }

    pub fn eval(&self, w: &FreeWord) -> CMat2 {
        w.eval(CMat2::identity(), &self.a, &self.a.inverse(), &self.b, &self.b.inverse(), |x, y| *x * *y)
    }

    pub fn commutator(&self) -> CMat2 {
        self.eval(&FreeWord::commutator())
    }

    pub fn monodromy(&self) -> &MappingClass {
        &self.monodromy
    }

    /// The monodromy's action on fiber-group words.
    pub fn apply_monodromy(&self, w: &FreeWord) -> FreeWord {
        let v = self.monodromy.act_on_word(w);
        if self.hyperelliptic {
            v.substitute(&FreeWord::a().inverse(), &FreeWord::b().inverse())
        } else {
            v
        }
    }

    /// Largest projective mismatch of the twisted equivariance on `A`, `B`.
    pub fn equivariance_error(&self) -> f64 {
        [FreeWord::a(), FreeWord::b()]
            .iter()
            .map(|g| self.eval(g).conjugate(&self.phi).projective_distance(&self.eval(&self.apply_monodromy(g))))
            .fold(0.0, f64::max)
    }
}

/// Layers of the universal cover above the fiber: layer `k = p·n + j` holds
/// the translates of tetrahedron `j` pushed forward by `M^p`.
struct Layers<'a> {
    tb: &'a TriangulatedBundle,
    shapes: &'a [C],
}

impl Layers<'_> {
    fn base(&self, k: usize) -> ([Point; 4], usize) {
        let n = self.tb.len();
        let (p, j) = (k / n, k % n);
        let m = self
            .tb
            .monodromy()
            .checked_pow(p as i64)
            .expect("small layer powers fit");
        let v = self.tb.tetrahedra[j].vertices.map(|q| crate::bundle::apply(&m, q));
        (v, j)
    }

    /// The translate at layer `k` having `face` as a bottom (or top) face.
    fn find(&self, k: usize, face: &[Point; 3], bottom: bool) -> Result<([Point; 4], usize, usize)> {
        let (v, j) = self.base(k);
        let (key, fm) = crate::bundle::face_key(face);
        for f in if bottom { BOTTOM } else { TOP } {
            let (k2, m) = crate::bundle::face_key(&crate::bundle::face_points(&v, f));
            if k2 == key {
                let shift = [fm[0] - m[0], fm[1] - m[1]];
                return Ok((v.map(|q| [q[0] + shift[0], q[1] + shift[1]]), j, f));
            }
        }
        Err(Error::domain("face not found in layer"))
    }
}

fn even_with_last(k: usize) -> [usize; 3] {
    // First even permutation (lexicographic) ending in k.
    match k {
        0 => [1, 3, 2],
        1 => [0, 2, 3],
        2 => [0, 3, 1],
        _ => [0, 1, 2],
    }
}

fn shape_at(z: C, e: (usize, usize)) -> C {
    three_shapes(z)[shape_column((e.0 as u8, e.1 as u8))]
}

/// Position of vertex `k` from the other three and the tetrahedron's shape.
fn place_missing(pos: &[C; 4], k: usize, z: C) -> Result<C> {
    let [i0, i1, i2] = even_with_last(k);
    let zeta = shape_at(z, (i0, i1));
    let (a0, a1, a2) = (pos[i0], pos[i1], pos[i2]);
    if (a2 - a0).norm() < DEGENERATE || (a2 - a1).norm() < DEGENERATE || (a1 - a0).norm() < DEGENERATE {
        return Err(Error::domain("degenerate developing placement"));
    }
    let w = zeta * (a2 - a1) / (a2 - a0);
    Ok((a1 - w * a0) / (C::new(1.0, 0.0) - w))
}

/// Positions of `(∞, 0, 1, z)` after the map `x ↦ 1/(x + 2 + i)`.
fn initial_positions(z: C) -> [C; 4] {
    let s = C::new(2.0, 1.0);
    [C::new(0.0, 0.0), s.inv(), (s + 1.0).inv(), (z + s).inv()]
}

fn surface_cross_ratio(p: C, q: C, r: C, s: C) -> C {
    ((p - r) * (q - s)) / ((p - s) * (q - r))
}

/// Cross-ratio parameter of the fiber edge `PQ` seen from triangle `tri`.
fn edge_parameter(layers: &Layers, tri: [Point; 3], p: Point, q: Point) -> Result<C> {
    let (pts, j, f) = layers.find(0, &tri, true)?;
    let z0 = initial_positions(layers.shapes[j]);
    let mut pos: HashMap<Point, C> = (0..4).map(|i| (pts[i], z0[i])).collect();
    let r = *tri.iter().find(|x| **x != p && **x != q).expect("triangle");
    let (mut k, mut pts, mut fin) = (0usize, pts, f);
    for _ in 0..10_000 {
        let ip = pts.iter().position(|x| *x == p).expect("edge vertex");
        let iq = pts.iter().position(|x| *x == q).expect("edge vertex");
        let fout = (0..4).find(|&x| x != ip && x != iq && x != fin).expect("four faces");
        let face = crate::bundle::face_points(&pts, fout);
        let (npts, nj, nf, nk) = if BOTTOM.contains(&fout) {
            if k == 0 {
                let s = *face.iter().find(|x| **x != p && **x != q).expect("triangle");
                return Ok(surface_cross_ratio(pos[&p], pos[&q], pos[&r], pos[&s]));
            }
            let (a, b, c) = layers.find(k - 1, &face, false)?;
            (a, b, c, k - 1)
        } else {
            let (a, b, c) = layers.find(k + 1, &face, true)?;
            (a, b, c, k + 1)
        };
        let mut known = [C::new(0.0, 0.0); 4];
        for i in 0..4 {
            if i != nf {
                known[i] = pos[&npts[i]];
            }
        }
        let placed = place_missing(&known, nf, layers.shapes[nj])?;
        pos.insert(npts[nf], placed);
        (k, pts, fin) = (nk, npts, nf);
    }
    Err(Error::solver("edge rotation did not close", Vec::new()))
}

const U: [Point; 3] = [[0, 0], [0, 1], [1, 1]];

/// Develops the pleated fiber across a sequence of edges, starting from
/// the positions of `U`.
fn develop_surface(x: &HashMap<Point, C>, start: &[(Point, C)], path: &[(Point, Point)]) -> HashMap<Point, C> {
    let mut cur: Vec<(Point, C)> = start.to_vec();
    for &(p, q) in path {
        let get = |pt: Point, cur: &[(Point, C)]| cur.iter().find(|(a, _)| *a == pt).expect("vertex").1;
        let rp = cur.iter().find(|(a, _)| *a != p && *a != q).expect("triangle").0;
        let s = [p[0] + q[0] - rp[0], p[1] + q[1] - rp[1]];
        let mut d = [q[0] - p[0], q[1] - p[1]];
        if d < [0, 0] {
            d = [-d[0], -d[1]];
        }
        let m = cur.iter().map(|(a, _)| *a).min().expect("triangle");
        let mut shape: Vec<Point> = cur.iter().map(|(a, _)| [a[0] - m[0], a[1] - m[1]]).collect();
        shape.sort();
        let xe = if shape == U { x[&d] } else { x[&d].inv() };
        let (pp, qq, rr) = (get(p, &cur), get(q, &cur), get(rp, &cur));
        let ss = ((pp - rr) * qq - xe * pp * (qq - rr)) / ((pp - rr) - xe * (qq - rr));
        cur = vec![(p, pp), (q, qq), (s, ss)];
    }
    cur.into_iter().collect()
}

/// Conjugator `X` with `X g X⁻¹ = ±h` for both generator pairs, as the
/// null vector of the stacked linear system; the sign pattern with the
/// smallest singular value wins.
fn conjugator(gs: [CMat2; 2], hs: [CMat2; 2]) -> CMat2 {
    let mut best: Option<(f64, CMat2)> = None;
    for sa in [1.0, -1.0] {
        for sb in [1.0, -1.0] {
            let mut s = DMatrix::<C>::zeros(8, 4);
            for (blk, (g, h)) in gs.iter().zip([hs[0].scale(sa.into()), hs[1].scale(sb.into())]).enumerate() {
                let gm = [[g.a, g.b], [g.c, g.d]];
                let hm = [[h.a, h.b], [h.c, h.d]];
                // (X g − h X)_{ij}; unknown X_{rs} at column 2r + s.
                for i in 0..2 {
                    for j in 0..2 {
                        let row = 4 * blk + 2 * i + j;
                        for t in 0..2 {
                            s[(row, 2 * i + t)] += gm[t][j];
                            s[(row, 2 * t + j)] -= hm[i][t];
                        }
                    }
                }
            }
            let svd = s.svd(false, true);
            let v_t = svd.v_t.expect("requested");
            let (idx, sigma) = svd
                .singular_values
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("four singular values");
            let v: Vec<C> = v_t.row(idx).iter().map(|z| z.conj()).collect();
            let x = CMat2::new(v[0], v[1], v[2], v[3]).normalized();
            if best.as_ref().is_none_or(|(e, _)| sigma < e) {
                best = Some((*sigma, x));
            }
        }
    }
    best.expect("four sign patterns").1
}

/// Reads `A`, `B` and the monodromy conjugator off the developed bundle.
pub fn holonomy(sol: &ShapeSolution, tb: &TriangulatedBundle) -> Result<HolonomyRep> {
    let layers = Layers { tb, shapes: &sol.shapes };
    let mut x = HashMap::new();
    x.insert([1, 1], edge_parameter(&layers, U, [0, 0], [1, 1])?);
    x.insert([0, 1], edge_parameter(&layers, U, [0, 0], [0, 1])?);
    x.insert([1, 0], edge_parameter(&layers, U, [0, 1], [1, 1])?);

    let start = [
        ([0, 0], C::new(0.3, 0.2)),
        ([0, 1], C::new(-0.7, 1.1)),
        ([1, 1], C::new(1.9, -0.4)),
    ];
    let src = start.map(|(_, z)| z);
    let end_a = develop_surface(&x, &start, &[([0, 0], [1, 1]), ([1, 0], [1, 1])]);
    let a = CMat2::from_three_points(src, U.map(|p| end_a[&[p[0] + 1, p[1]]]));
    let end_b = develop_surface(&x, &start, &[([0, 1], [1, 1]), ([0, 1], [1, 2])]);
    let b = CMat2::from_three_points(src, U.map(|p| end_b[&[p[0], p[1] + 1]]));

    let rl = tb.rl();
    let tokens: Vec<Token> = rl
        .blocks()
        .iter()
        .flat_map(|&(r, l)| {
            [
                Token {
                    letter: Letter::R,
                    exp: r as i64,
                },
                Token {
                    letter: Letter::L,
                    exp: l as i64,
                },
            ]
        })
        .collect();
    let mut rep = HolonomyRep {
        a,
        b,
        phi: CMat2::identity(),
        monodromy: MappingClass::from_tokens(tokens)?,
        hyperelliptic: rl.sign() < 0,
    };
    let images = [FreeWord::a(), FreeWord::b()].map(|g| rep.eval(&rep.apply_monodromy(&g)));
    rep.phi = conjugator([a, b], images);

    let k = rep.commutator().trace();
    if (k + 2.0).norm() > 1e-8 {
        return Err(Error::solver(format!("commutator trace {k} is not -2"), vec![k.re, k.im]));
    }
    let err = rep.equivariance_error();
    if err > 1e-6 {
        return Err(Error::solver(format!("monodromy equivariance off by {err:e}"), vec![err]));
    }
    Ok(rep)
}
