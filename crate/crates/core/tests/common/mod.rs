//! Brute-force oracles and input generators shared by the integration tests.
#![allow(dead_code)]

use monodromy::mapping_class::Letter;
use monodromy::{FreeWord, MappingClass};
use num_rational::Ratio;
use rand::seq::IndexedRandom;
use rand::Rng;

/// Crossings of the closed geodesics of slopes `v` and `w` on the square
/// torus `R²/Z²`, counted directly: the curves `t·v` and `p + s·w` with
/// `t, s ∈ [0, 1)` meet wherever `t·v − s·w − p` is an integer point. The
/// offset `p = (1/3, 1/7)` keeps the second curve off the first.
pub fn flat_torus_crossings(v: (i64, i64), w: (i64, i64)) -> u64 {
    let det = v.0 * (-w.1) - (-w.0) * v.1;
    if det == 0 {
        return 0;
    }
    // Work in units of 1/21 so the offset is integral.
    let (px, py) = (7, 3);
    let xs = [0, v.0, -w.0, v.0 - w.0];
    let ys = [0, v.1, -w.1, v.1 - w.1];
    let (x0, x1) = (*xs.iter().min().unwrap() - 1, *xs.iter().max().unwrap() + 1);
    let (y0, y1) = (*ys.iter().min().unwrap() - 1, *ys.iter().max().unwrap() + 1);
    let mut count = 0;
    for m in x0..=x1 {
        for n in y0..=y1 {
            // Solve [v, −w] (t, s)ᵀ = (m + 1/3, n + 1/7) by Cramer's rule.
            let (bx, by) = (21 * m + px, 21 * n + py);
            let tn = bx * (-w.1) - (-w.0) * by;
            let sn = v.0 * by - v.1 * bx;
            let d = 21 * det;
            let inside = |num: i64| {
                if d > 0 {
                    0 <= num && num < d
                } else {
                    d < num && num <= 0
                }
            };
            if inside(tn) && inside(sn) {
                count += 1;
            }
        }
    }
    count
}

pub fn primitive_vectors(bound: i64) -> Vec<(i64, i64)> {
    let gcd = |mut a: i64, mut b: i64| {
        a = a.abs();
        b = b.abs();
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if gcd(a, b) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Cyclic sequence of arc types (0: horizontal, 1: vertical, 2: diagonal)
/// crossed by the straight line of direction `(a, b)` starting at
/// `(1/101, 1/103)`.
fn straight_line_crossings(a: i64, b: i64) -> Vec<usize> {
    let (x0, y0) = (Ratio::new(1i64, 101), Ratio::new(1i64, 103));
    let mut hits: Vec<(Ratio<i64>, usize)> = Vec::new();
    let mut push = |start: Ratio<i64>, speed: i64, kind: usize| {
        if speed == 0 {
            return;
        }
        for k in -20..=20 {
            let t = (Ratio::from_integer(k) - start) / speed;
            if t >= Ratio::from_integer(0) && t < Ratio::from_integer(1) {
                hits.push((t, kind));
            }
        }
    };
    push(y0, b, 0);
    push(x0, a, 1);
    push(x0 - y0, a - b, 2);
    hits.sort();
    hits.into_iter().map(|(_, k)| k).collect()
}

pub fn traced_switch_count(a: i64, b: i64) -> usize {
    let seq = straight_line_crossings(a, b);
    let turns: Vec<usize> = (0..seq.len()).map(|i| (seq[(i + 1) % seq.len()] + 3 - seq[i]) % 3).collect();
    (0..turns.len()).filter(|&i| turns[i] != turns[(i + 1) % turns.len()]).count()
}

/// Random word in `R^{±1}, L^{±1}`.
pub fn random_mapping_class<R: Rng>(rng: &mut R, max_len: usize) -> MappingClass {
    let n = rng.random_range(1..=max_len);
    let letters: Vec<(Letter, i8)> = (0..n)
        .map(|_| {
            let l = if rng.random_bool(0.5) { Letter::R } else { Letter::L };
            (l, if rng.random_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    let text: Vec<String> = letters
        .iter()
        .map(|(l, s)| format!("{}^{}", l.symbol(), s))
        .collect();
    monodromy::parse_word(&text.join(" ")).unwrap()
}

/// Random positive word containing both letters.
pub fn random_positive_word<R: Rng>(rng: &mut R, max_len: usize) -> String {
    loop {
        let n = rng.random_range(2..=max_len);
        let w: String = (0..n).map(|_| *['R', 'L'].choose(rng).unwrap()).collect();
        if w.contains('R') && w.contains('L') {
            return w;
        }
    }
}

pub fn random_fiber_word<R: Rng>(rng: &mut R, max_len: usize) -> FreeWord {
    loop {
        let n = rng.random_range(1..=max_len);
        let letters: Vec<i8> = (0..n).map(|_| *[1i8, -1, 2, -2].choose(rng).unwrap()).collect();
        let w = FreeWord::from_letters(&letters).unwrap();
        if !w.is_empty() {
            return w;
        }
    }
}
