//! Gluing equations in logarithmic shape coordinates.
//!
//! Each row reads `Σ_t (a_t log z_t + b_t log z'_t + c_t log z''_t) = rhs · πi`
//! with `z' = 1/(1−z)` and `z'' = 1 − 1/z`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

use super::triangulation::{shape_column, Edge, Tetrahedron};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Edge { class: usize },
    Cusp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingRow {
    pub kind: RowKind,
    /// `[a, b, c]` exponents per tetrahedron.
    pub coeffs: Vec<[i32; 3]>,
    /// Right-hand side as a multiple of `πi`.
    pub rhs: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingSystem {
    /// Edge rows in edge-class order, then the completeness row.
    pub rows: Vec<GluingRow>,
    /// Index of the edge row implied by the others.
    pub redundant: usize,
}

impl GluingSystem {
    /// The square system handed to the solver.
    pub fn independent_rows(&self) -> impl Iterator<Item = &GluingRow> {
        self.rows.iter().enumerate().filter(|(i, _)| *i != self.redundant).map(|(_, r)| r)
    }

    pub fn edge_rows(&self) -> impl Iterator<Item = &GluingRow> {
        self.rows.iter().filter(|r| matches!(r.kind, RowKind::Edge { .. }))
    }

    pub fn cusp_row(&self) -> &GluingRow {
        self.rows.last().expect("system has a cusp row")
    }

    pub fn n_tetrahedra(&self) -> usize {
        self.rows.first().map_or(0, |r| r.coeffs.len())
    }
}

/// Assembles the system for an already glued triangulation.
pub fn gluing_equations(tets: &[Tetrahedron], classes: &[Vec<(usize, Edge)>]) -> Result<GluingSystem> {
    let n = tets.len();
    let mut rows: Vec<GluingRow> = classes
        .iter()
        .enumerate()
        .map(|(class, slots)| {
            let mut coeffs = vec![[0i32; 3]; n];
            for &(t, e) in slots {
                coeffs[t][shape_column(e)] += 1;
            }
            GluingRow {
                kind: RowKind::Edge { class },
                coeffs,
                rhs: 2,
            }
        })
        .collect();

    let reduced: Vec<Vec<i64>> = rows.iter().map(|r| reduce(&r.coeffs)).collect();
    let rk = rank(&reduced);
    if rk + 1 != n {
        return Err(Error::domain(format!("edge equations have rank {rk}, expected {}", n - 1)));
    }
    let redundant = (0..rows.len())
        .rev()
        .find(|&i| {
            let rest: Vec<Vec<i64>> = reduced.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
            rank(&rest) == rk
        })
        .expect("a dependent edge row exists");

    let cusp = cusp_cycle_rows(tets)
        .into_iter()
        .find(|row| {
            let mut ext = reduced.clone();
            ext.push(reduce(row));
            rank(&ext) > rk
        })
        .ok_or_else(|| Error::domain("no independent cusp cycle"))?;
    rows.push(GluingRow {
        kind: RowKind::Cusp,
        coeffs: cusp,
        rhs: 0,
    });
    Ok(GluingSystem { rows, redundant })
}

/// Eliminates `log z''` using `log z + log z' + log z'' = πi`.
fn reduce(coeffs: &[[i32; 3]]) -> Vec<i64> {
    coeffs
        .iter()
        .flat_map(|&[a, b, c]| [(a - c) as i64, (b - c) as i64])
        .collect()
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Ratio<i64>>> = rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect()).collect();
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(r, piv);
        for i in 0..m.len() {
            if i != r && m[i][c] != Ratio::from_integer(0) {
                let f = m[i][c] / m[r][c];
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        r += 1;
    }
    r
}

fn parity(p: &[u8; 4]) -> u32 {
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

/// First even permutation (lexicographically) starting with `v`.
fn even_with_first(v: u8) -> [u8; 4] {
    let rest: Vec<u8> = (0..4).filter(|&x| x != v).collect();
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    orders
        .iter()
        .map(|o| [v, rest[o[0]], rest[o[1]], rest[o[2]]])
        .find(|p| parity(p) == 0)
        .expect("half of the orders are even")
}

/// A side of a cusp-link triangle: triangle `(tet, vertex)` and the face it
/// lies on.
type Side = ((usize, u8), u8);
/// Crossing from one link triangle to the next.
type Crossing = ((usize, u8), u8, (usize, u8), u8);

/// Candidate completeness rows: one per fundamental cycle of a spanning
/// tree of the cusp triangulation, in breadth-first order.
fn cusp_cycle_rows(tets: &[Tetrahedron]) -> Vec<Vec<[i32; 3]>> {
    let root = (0usize, 0u8);
    let mut parent: HashMap<(usize, u8), Option<Crossing>> = HashMap::new();
    parent.insert(root, None);
    let mut queue = VecDeque::from([root]);
    let mut seen: HashSet<[Side; 2]> = HashSet::new();
    let mut nontree: Vec<Crossing> = Vec::new();
    while let Some(tri) = queue.pop_front() {
        let (t, v) = tri;
        for f in 0..4u8 {
            if f == v {
                continue;
            }
            let (t2, p) = tets[t].gluings[f as usize];
            let tri2 = (t2, p[v as usize]);
            let f2 = p[f as usize];
            let mut key = [(tri, f), (tri2, f2)];
            key.sort();
            if !seen.insert(key) {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(tri2) {
                e.insert(Some((tri, f, tri2, f2)));
                queue.push_back(tri2);
            } else {
                nontree.push((tri, f, tri2, f2));
            }
        }
    }
    let path_from_root = |mut tri: (usize, u8)| {
        let mut steps = Vec::new();
        while let Some(Some(step)) = parent.get(&tri) {
            steps.push(*step);
            tri = step.0;
        }
        steps.reverse();
        steps
    };
    nontree
        .iter()
        .map(|&(a, fa, b, fb)| {
            let mut walk = path_from_root(a);
            walk.push((a, fa, b, fb));
            for &(p, f, q, f2) in path_from_root(b).iter().rev() {
                walk.push((q, f2, p, f));
            }
            cycle_row(tets.len(), &walk)
        })
        .collect()
}

fn cycle_row(n: usize, walk: &[Crossing]) -> Vec<[i32; 3]> {
    let mut row = vec![[0i32; 3]; n];
    let m = walk.len();
    for i in 0..m {
        let (_, _, tri, fin) = walk[(i + m - 1) % m];
        let (tri_out, fout, _, _) = walk[i];
        debug_assert_eq!(tri, tri_out);
        if fin == fout {
            continue;
        }
        let (t, v) = tri;
        let c = (0..4u8).find(|&x| x != v && x != fin && x != fout).expect("four vertices");
        let p = even_with_first(v);
        let cyc = [p[1], p[2], p[3]];
        let positive = (0..3).any(|r| [cyc[r], cyc[(r + 1) % 3], cyc[(r + 2) % 3]] == [c, fin, fout]);
        row[t][shape_column((v, c))] += if positive { -1 } else { 1 };
    }
    row
}
