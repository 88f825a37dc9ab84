//! Brute-force oracles behind `monodromy oracle <name>`.

use monodromy::teich::mat2_to_f64;
use monodromy::{
    alternation_number, canonical_rl_form, fuchsian_matrices, intersection_number, layered_triangulation,
    make_fricke, parse_word, solve_shapes, trace_of_slope, volume, CurveClass, MeasuredLamination, Scalar,
};
use num_rational::Ratio;

pub const NAMES: [&str; 4] = ["intersection", "alternation", "volume", "slope-trace"];

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub mismatches: usize,
}

impl Table {
    pub fn render(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for row in std::iter::once(&self.header.iter().map(|s| s.to_string()).collect()).chain(&self.rows) {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: Vec<String>| {
            cells
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = line(self.header.iter().map(|s| s.to_string()).collect());
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r.clone()));
            out.push('\n');
        }
        out.push_str(&format!("{} rows, {} mismatches\n", self.rows.len(), self.mismatches));
        out
    }
}

fn primitive(bound: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if num_integer::gcd(a, b) == 1 {
                v.push((a, b));
            }
        }
    }
    v
}

/// Crossings of the closed geodesics of slopes `v` and `w` on the flat
/// square torus, one of them shifted by `(1/3, 1/7)`.
pub fn flat_torus_crossings(v: (i64, i64), w: (i64, i64)) -> u64 {
    let det = -v.0 * w.1 + w.0 * v.1;
    if det == 0 {
        return 0;
    }
    let xs = [0, v.0, -w.0, v.0 - w.0];
    let ys = [0, v.1, -w.1, v.1 - w.1];
    let d = 21 * det;
    let inside = |n: i64| if d > 0 { (0..d).contains(&n) } else { d < n && n <= 0 };
    let mut count = 0;
    for m in xs.iter().min().unwrap() - 1..=xs.iter().max().unwrap() + 1 {
        for n in ys.iter().min().unwrap() - 1..=ys.iter().max().unwrap() + 1 {
            let (bx, by) = (21 * m + 7, 21 * n + 3);
            if inside(-bx * w.1 + w.0 * by) && inside(v.0 * by - v.1 * bx) {
                count += 1;
            }
        }
    }
    count
}

fn intersection(bound: i64) -> Table {
    let vs = primitive(bound);
    // Grouped by intersection number to keep the table short.
    let mut by_value: std::collections::BTreeMap<u64, (usize, usize)> = Default::default();
    let mut mismatches = 0;
    for &v in &vs {
        for &w in &vs {
            let exact = intersection_number(&MeasuredLamination::from_ints(v.0, v.1), &MeasuredLamination::from_ints(w.0, w.1));
            let count = flat_torus_crossings(v, w);
            let e = by_value.entry(count).or_default();
            e.0 += 1;
            if exact != Scalar::int(count as i64) {
                e.1 += 1;
                mismatches += 1;
            }
        }
    }
    Table {
        header: vec!["crossings", "pairs", "mismatches"],
        rows: by_value
            .into_iter()
            .map(|(k, (n, bad))| vec![k.to_string(), n.to_string(), bad.to_string()])
            .collect(),
        mismatches,
    }
}

/// Switches in the cyclic left/right turn sequence of the straight line of
/// direction `(a, b)` through the arcs of slopes (1,0), (0,1), (1,1).
pub fn traced_switches(a: i64, b: i64) -> usize {
    let (x0, y0) = (Ratio::new(1i64, 101), Ratio::new(1i64, 103));
    let mut hits = Vec::new();
    for (start, speed, kind) in [(y0, b, 0usize), (x0, a, 1), (x0 - y0, a - b, 2)] {
        if speed == 0 {
            continue;
        }
        for k in -(a.abs() + b.abs() + 2)..=a.abs() + b.abs() + 2 {
            let t = (Ratio::from_integer(k) - start) / speed;
            if t >= Ratio::from_integer(0) && t < Ratio::from_integer(1) {
                hits.push((t, kind));
            }
        }
    }
    hits.sort();
    let n = hits.len();
    let turns: Vec<usize> = (0..n).map(|i| (hits[(i + 1) % n].1 + 3 - hits[i].1) % 3).collect();
    (0..n).filter(|&i| turns[i] != turns[(i + 1) % n]).count()
}

fn alternation(bound: i64) -> Table {
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (a, b) in primitive(bound) {
        let Ok(c) = CurveClass::new(a, b) else { continue };
        if (c.a(), c.b()) != (a, b) {
            continue;
        }
        let exact = alternation_number(&c.to_lamination()).expect("nonempty");
        let traced = traced_switches(a, b);
        let ok = exact == Scalar::int(traced as i64);
        mismatches += usize::from(!ok);
        rows.push(vec![format!("({a},{b})"), exact.to_string(), traced.to_string(), ok.to_string()]);
    }
    Table {
        header: vec!["class", "combinatorial", "traced", "match"],
        rows,
        mismatches,
    }
}

const CATALAN: f64 = 0.915_965_594_177_219;

fn volumes() -> Table {
    let known = [
        ("R L", 2.029_883_212_819_307, "2 regular ideal tetrahedra"),
        ("R^2 L^2", 4.0 * CATALAN, "1 regular ideal octahedron"),
        ("R L^2", 2.666_744_783_449_062, "census m009"),
    ];
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (w, v, source) in known {
        let got = canonical_rl_form(&parse_word(w).expect("valid word"))
            .and_then(|rl| layered_triangulation(&rl))
            .and_then(|tb| solve_shapes(&tb.equations))
            .map(|sol| volume(&sol));
        let (cell, diff) = match got {
            Ok(x) => (format!("{x:.12}"), (x - v).abs()),
            Err(e) => (e.to_string(), f64::INFINITY),
        };
        mismatches += usize::from(diff >= 1e-9);
        rows.push(vec![w.to_string(), cell, format!("{v:.12}"), format!("{diff:.1e}"), source.to_string()]);
    }
    Table {
        header: vec!["word", "computed", "known", "diff", "source"],
        rows,
        mismatches,
    }
}

type M = [[f64; 2]; 2];

fn mul(x: M, y: M) -> M {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

fn slope_traces(bound: i64) -> Table {
    let g = make_fricke(&Scalar::int(3), &Scalar::int(4)).expect("valid point");
    let (a, b) = fuchsian_matrices(&g);
    let (a, b) = (mat2_to_f64(&a), mat2_to_f64(&b));
    let b_inv = [[b[1][1], -b[0][1]], [-b[1][0], b[0][0]]];
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (p, q) in primitive(bound) {
        if p < 0 || (p == 0 && q < 0) {
            continue;
        }
        let exact = trace_of_slope(&g, CurveClass::new(p, q).expect("primitive"));
        // Christoffel word: p letters A, |q| letters B^{±1}, evenly spread.
        let (n, k, gen) = (p + q.abs(), q.abs(), if q < 0 { b_inv } else { b });
        let mut m = [[1.0, 0.0], [0.0, 1.0]];
        for i in 1..=n {
            m = mul(m, if (i * k) / n != ((i - 1) * k) / n { gen } else { a });
        }
        let word_trace = (m[0][0] + m[1][1]).abs();
        let diff = (exact.to_f64() - word_trace).abs() / word_trace;
        mismatches += usize::from(diff >= 1e-9);
        rows.push(vec![format!("({p},{q})"), exact.to_string(), format!("{word_trace:.10}"), format!("{diff:.1e}")]);
    }
    Table {
        header: vec!["slope", "exact trace", "matrix word", "rel diff"],
        rows,
        mismatches,
    }
}

pub fn run(name: &str, bound: Option<i64>) -> Option<Table> {
    Some(match name {
        "intersection" => intersection(bound.unwrap_or(10)),
        "alternation" => alternation(bound.unwrap_or(8)),
        "volume" => volumes(),
        "slope-trace" => slope_traces(bound.unwrap_or(4)),
        _ => return None,
    })
}
