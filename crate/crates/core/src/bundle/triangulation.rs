//! Layered ideal triangulation of the mapping torus of an RL word.
//!
//! The fiber triangulations are the lattice triangulations `T(u, v)` of the
//! plane by the triangles `{0, u, u+v}` and `{0, v, u+v}`. Each letter flips
//! one diagonal: `R` replaces `(u, v)` by `(u, u+v)`, `L` by `(u+v, v)`. The
//! flip is realised by one tetrahedron whose bottom faces lie in the old
//! triangulation and whose top faces lie in the new one. The last layer is
//! glued to the first through the inverse of the monodromy matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::mapping_class::{Letter, RLForm};
use crate::matrix::IntMatrix;

use super::equations::{gluing_equations, GluingSystem};

/// Vertex pair of a tetrahedron, `i < j`.
pub type Edge = (u8, u8);

/// The six edges in the fixed slot order used throughout.
pub const EDGES: [Edge; 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Which of the three shape parameters `z, z', z''` sits on an edge.
/// Opposite edges carry the same parameter.
pub fn shape_column(e: Edge) -> usize {
    match (e.0.min(e.1), e.0.max(e.1)) {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        _ => 2,
    }
}

pub(crate) type Point = [i64; 2];

type Gluing = (usize, [u8; 4]);

/// Faces are indexed by the opposite vertex. Faces 0 and 2 lie in the
/// lower fiber triangulation, faces 1 and 3 in the upper one.
pub(crate) const BOTTOM: [usize; 2] = [0, 2];
pub(crate) const TOP: [usize; 2] = [1, 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetrahedron {
    /// Plane positions of the four ideal vertices (the projection of the
    /// layer to the fiber), ordered so the tetrahedron is positively
    /// oriented.
    pub(crate) vertices: [Point; 4],
    pub letter: Letter,
    /// For each face, the neighbouring tetrahedron and the vertex map.
    pub gluings: [(usize, [u8; 4]); 4],
}

impl Tetrahedron {
    pub fn vertices(&self) -> [[i64; 2]; 4] {
        self.vertices
    }
}

#[derive(Clone, Debug)]
pub struct TriangulatedBundle {
    rl: RLForm,
    monodromy: IntMatrix,
    pub tetrahedra: Vec<Tetrahedron>,
    /// Each class lists its `(tetrahedron, edge)` slots.
    pub edge_classes: Vec<Vec<(usize, Edge)>>,
    pub equations: GluingSystem,
}

impl TriangulatedBundle {
    pub fn rl(&self) -> &RLForm {
        &self.rl
    }

    /// Signed product of the letters in word order.
    pub fn monodromy(&self) -> IntMatrix {
        self.monodromy
    }

    pub fn len(&self) -> usize {
        self.tetrahedra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tetrahedra.is_empty()
    }

    /// Plain-text export; the format is described in `docs/triangulation-format.md`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TriangulatedBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: String = self.rl.letters().iter().map(|l| l.symbol()).collect();
        let sign = if self.rl.sign() < 0 { "-" } else { "" };
        writeln!(f, "ptorus-bundle v1 {sign}{word}")?;
        writeln!(f, "tetrahedra {}", self.tetrahedra.len())?;
        for t in &self.tetrahedra {
            let faces: Vec<String> = t
                .gluings
                .iter()
                .map(|(k, p)| format!("{k}:{}{}{}{}", p[0], p[1], p[2], p[3]))
                .collect();
            writeln!(f, "{}", faces.join(" "))?;
        }
        writeln!(f, "edges {}", self.edge_classes.len())?;
        for class in &self.edge_classes {
            let slots: Vec<String> = class.iter().map(|(t, e)| format!("{t}:{}{}", e.0, e.1)).collect();
            writeln!(f, "{}", slots.join(" "))?;
        }
        Ok(())
    }
}

fn add(p: Point, q: Point) -> Point {
    [p[0] + q[0], p[1] + q[1]]
}

fn sub(p: Point, q: Point) -> Point {
    [p[0] - q[0], p[1] - q[1]]
}

pub(crate) fn apply(m: &IntMatrix, p: Point) -> Point {
    let v = m.apply([p[0] as i128, p[1] as i128]);
    [v[0] as i64, v[1] as i64]
}

/// Lattice triangle up to translation: sorted offsets from its least vertex,
/// together with that vertex.
pub(crate) fn face_key(points: &[Point]) -> ([Point; 3], Point) {
    let m = *points.iter().min().expect("nonempty face");
    let mut k = [sub(points[0], m), sub(points[1], m), sub(points[2], m)];
    k.sort();
    (k, m)
}

pub(crate) fn face_points(t: &[Point; 4], f: usize) -> [Point; 3] {
    let mut out = [[0; 2]; 3];
    let mut j = 0;
    for (i, p) in t.iter().enumerate() {
        if i != f {
            out[j] = *p;
            j += 1;
        }
    }
    out
}

fn permutation_parity(p: &[u8; 4]) -> u32 {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

fn layer_vertices(letters: &[Letter]) -> Vec<[Point; 4]> {
    let (mut u, mut v): (Point, Point) = ([1, 0], [0, 1]);
    let mut out = Vec::with_capacity(letters.len());
    for &letter in letters {
        let mut p = match letter {
            Letter::R => {
                let p = [[0, 0], u, add(add(u, u), v), add(u, v)];
                v = add(u, v);
                p
            }
            Letter::L => {
                let p = [[0, 0], v, add(u, add(v, v)), add(u, v)];
                u = add(u, v);
                p
            }
        };
        // Heights 1, 0, 1, 0 lift the flip to a tetrahedron in plane × R.
        let h = [1i64, 0, 1, 0];
        let col = |i: usize| [p[i][0] - p[0][0], p[i][1] - p[0][1], h[i] - h[0]];
        let (a, b, c) = (col(1), col(2), col(3));
        let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]);
        if det < 0 {
            p.swap(1, 3);
        }
        out.push(p);
    }
    out
}

/// One tetrahedron per letter of the cyclic word.
pub fn layered_triangulation(rl: &RLForm) -> Result<TriangulatedBundle> {
    let letters = rl.letters();
    if !letters.contains(&Letter::R) || !letters.contains(&Letter::L) {
        return Err(Error::domain("layered triangulation needs both letters"));
    }
    let monodromy = rl.matrix();
    let inv = monodromy.inverse();
    let verts = layer_vertices(&letters);
    let n = verts.len();

    let mut glue: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n];
    for k in 0..n {
        let next = (k + 1) % n;
        for f in TOP {
            let mut pts = face_points(&verts[k], f);
            if k == n - 1 {
                pts = pts.map(|p| apply(&inv, p));
            }
            let (key, m) = face_key(&pts);
            let src: Vec<usize> = (0..4).filter(|&i| i != f).collect();
            let g = BOTTOM
                .into_iter()
                .find(|&g| face_key(&face_points(&verts[next], g)).0 == key)
                .ok_or_else(|| Error::domain("layer faces do not match"))?;
            let (_, mg) = face_key(&face_points(&verts[next], g));
            let mut perm = [0u8; 4];
            perm[f] = g as u8;
            for (&i, p) in src.iter().zip(pts) {
                let rel = sub(p, m);
                let j = (0..4)
                    .find(|&j| j != g && sub(verts[next][j], mg) == rel)
                    .expect("matched faces share offsets");
                perm[i] = j as u8;
            }
            let mut back = [0u8; 4];
            for i in 0..4 {
                back[perm[i] as usize] = i as u8;
            }
            glue[k][f] = Some((next, perm));
            glue[next][g] = Some((k, back));
        }
    }
    let mut tetrahedra = Vec::with_capacity(n);
    for (k, g) in glue.into_iter().enumerate() {
        let gluings = g.map(|x| x.expect("every face is glued"));
        debug_assert!(gluings.iter().all(|(_, p)| permutation_parity(p) == 1));
        tetrahedra.push(Tetrahedron {
            vertices: verts[k],
            letter: letters[k],
            gluings,
        });
    }
    let edge_classes = edge_classes(&tetrahedra);
    if edge_classes.len() != n {
        return Err(Error::domain(format!("{} edge classes for {n} tetrahedra", edge_classes.len())));
    }
    let equations = gluing_equations(&tetrahedra, &edge_classes)?;
    Ok(TriangulatedBundle {
        rl: rl.clone(),
        monodromy,
        tetrahedra,
        edge_classes,
        equations,
    })
}

fn edge_classes(tets: &[Tetrahedron]) -> Vec<Vec<(usize, Edge)>> {
    let n = tets.len();
    let slot = |t: usize, e: Edge| t * 6 + EDGES.iter().position(|&x| x == e).expect("sorted edge");
    let mut parent: Vec<usize> = (0..6 * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (t, tet) in tets.iter().enumerate() {
        for (f, &(t2, p)) in tet.gluings.iter().enumerate() {
            for &e in &EDGES {
                if e.0 as usize == f || e.1 as usize == f {
                    continue;
                }
                let (a, b) = (p[e.0 as usize], p[e.1 as usize]);
                let ra = find(&mut parent, slot(t, e));
                let rb = find(&mut parent, slot(t2, (a.min(b), a.max(b))));
                if ra != rb {
                    parent[rb] = ra;
                }
            }
        }
    }
    let mut index = vec![usize::MAX; 6 * n];
    let mut classes: Vec<Vec<(usize, Edge)>> = Vec::new();
    for t in 0..n {
        for &e in &EDGES {
            let r = find(&mut parent, slot(t, e));
            if index[r] == usize::MAX {
                index[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[index[r]].push((t, e));
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping_class::{canonical_rl_form, parse_word};

    pub(crate) fn bundle(w: &str) -> TriangulatedBundle {
        layered_triangulation(&canonical_rl_form(&parse_word(w).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn counts_for_small_words() {
        for (w, n) in [("R L", 2), ("R^4 L", 5), ("R L L", 3), ("R R L L", 4)] {
            let b = bundle(w);
            assert_eq!(b.len(), n);
            assert_eq!(b.edge_classes.len(), n);
            assert_eq!(b.edge_classes.iter().map(Vec::len).sum::<usize>(), 6 * n);
        }
    }

    #[test]
    fn gluings_are_involutive_and_orientation_reversing() {
        let b = bundle("R^3 L R L^2");
        for (t, tet) in b.tetrahedra.iter().enumerate() {
            for (f, &(t2, p)) in tet.gluings.iter().enumerate() {
                assert_eq!(permutation_parity(&p), 1);
                let (back, q) = b.tetrahedra[t2].gluings[p[f] as usize];
                assert_eq!(back, t);
                for i in 0..4 {
                    assert_eq!(q[p[i] as usize], i as u8);
                }
            }
        }
    }

    #[test]
    fn figure_eight_edges_have_valence_six() {
        let b = bundle("R L");
        for class in &b.edge_classes {
            assert_eq!(class.len(), 6);
        }
    }

    #[test]
    fn negative_sign_words_triangulate() {
        let rl = RLForm::from_letters(-1, &[Letter::R, Letter::R, Letter::L]).unwrap();
        let b = layered_triangulation(&rl).unwrap();
        assert_eq!(b.edge_classes.len(), 3);
    }

    #[test]
    fn text_export_header() {
        let text = bundle("R^4 L").to_text();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("ptorus-bundle v1 RRRRL"));
        assert_eq!(lines.next(), Some("tetrahedra 5"));
        assert_eq!(text.lines().count(), 1 + 1 + 5 + 1 + 5);
    }

    #[test]
    fn shape_columns_pair_opposite_edges() {
        for &e in &EDGES {
            let opp: Vec<u8> = (0..4).filter(|&v| v != e.0 && v != e.1).collect();
            assert_eq!(shape_column(e), shape_column((opp[0], opp[1])));
        }
    }
}
