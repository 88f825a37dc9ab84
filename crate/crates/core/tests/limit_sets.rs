mod common;

use common::random_fiber_word;
use monodromy::limitset::{raster_hash, Projection, Style};
use monodromy::teich::mat2_to_f64;
use monodromy::{
    canonical_rl_form, coverage, ct_polyline, cusp_anchor, fuchsian_matrices, holonomy, layered_triangulation,
    make_fricke, parse_word, render_svg, solve_shapes, Anchor, CMat2, CTPolyline, FreeWord, HolonomyRep, Scalar,
};
use num_complex::Complex64 as C;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn degenerate_rep(word: &str) -> HolonomyRep {
    let rl = canonical_rl_form(&parse_word(word).unwrap()).unwrap();
    let tb = layered_triangulation(&rl).unwrap();
    holonomy(&solve_shapes(&tb.equations).unwrap(), &tb).unwrap()
}

fn fuchsian_rep(x: Scalar, y: Scalar) -> HolonomyRep {
    let (a, b) = fuchsian_matrices(&make_fricke(&x, &y).unwrap());
    HolonomyRep::from_generators(CMat2::from_real(mat2_to_f64(&a)), CMat2::from_real(mat2_to_f64(&b)))
}

type M = [[i128; 2]; 2];

fn mul(x: M, y: M) -> M {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

fn inv(x: M) -> M {
    [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]
}

/// Double root of `c x² + (d − a) x − b = 0` for the parabolic `w K w⁻¹`
/// in the group generated by `[[1,1],[1,2]]` and `[[1,-1],[-1,2]]`.
fn conjugate_fixed_point(w: &FreeWord) -> Option<Ratio<i128>> {
    let (a, b) = ([[1, 1], [1, 2]], [[1, -1], [-1, 2]]);
    let g = |l: i8| match l {
        1 => a,
        -1 => inv(a),
        2 => b,
        _ => inv(b),
    };
    let k = mul(mul(a, b), mul(inv(a), inv(b)));
    let m = w.letters().iter().fold([[1, 0], [0, 1]], |acc, &l| mul(acc, g(l)));
    let x = mul(mul(m, k), inv(m));
    assert_eq!((x[0][0] + x[1][1]).abs(), 2);
    (x[1][0] != 0).then(|| Ratio::new(x[0][0] - x[1][1], 2 * x[1][0]))
}

fn words_up_to(n: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::identity()];
    for k in 1..=n {
        out.extend(FreeWord::all_of_length(k));
    }
    out
}

#[test]
fn anchors_match_exact_fixed_points() {
    for w in words_up_to(6) {
        let expected = match conjugate_fixed_point(&w) {
            Some(r) => Anchor::Finite {
                num: *r.numer(),
                den: *r.denom(),
            },
            None => Anchor::Infinity,
        };
        assert_eq!(cusp_anchor(&w), expected, "{w}");
    }
}

#[test]
fn distinct_cosets_have_distinct_anchors() {
    let words = words_up_to(6);
    let mut by_anchor: std::collections::HashMap<Anchor, Vec<&FreeWord>> = Default::default();
    for w in &words {
        by_anchor.entry(cusp_anchor(w)).or_default().push(w);
    }
    for (anchor, group) in by_anchor {
        for v in &group[1..] {
            let quotient = group[0].inverse().concat(v);
            assert!(quotient.commutator_power().is_some(), "{anchor}: {} vs {v}", group[0]);
        }
    }
}

fn image_at(poly: &CTPolyline, w: &FreeWord) -> Option<C> {
    let anchor = cusp_anchor(w);
    let i = poly.points.binary_search_by(|p| p.anchor.cmp(&anchor)).unwrap();
    poly.points[i].image
}

#[test]
fn image_points_are_equivariant() {
    let rep = degenerate_rep("R L");
    let poly = ct_polyline(&rep, 8).unwrap();
    let k = rep.commutator();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..50 {
        let w = random_fiber_word(&mut rng, 7);
        let z = image_at(&poly, &w).unwrap();
        // z is the fixed point of ρ(w) K ρ(w)⁻¹ ...
        let x = k.conjugate(&rep.eval(&w));
        let moved = x.apply(Some(z)).unwrap();
        assert!((moved - z).norm() < 1e-9 * (1.0 + z.norm() * z.norm()), "{w}");
        // ... and ρ(A) carries it to the point of A·w.
        let aw = FreeWord::a().concat(&w);
        let lhs = image_at(&poly, &aw).unwrap();
        let rhs = rep.a.apply(Some(z)).unwrap();
        assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()), "{w}: {lhs} vs {rhs}");
    }
}

#[test]
fn fuchsian_limit_set_is_a_round_circle() {
    for (x, y) in [(Scalar::int(3), Scalar::int(3)), (Scalar::int(3), Scalar::int(4)), (Scalar::Float(2.9), Scalar::Float(5.0))] {
        let poly = ct_polyline(&fuchsian_rep(x, y), 6).unwrap();
        for p in &poly.points {
            if let Some(z) = p.image {
                assert!(z.im.abs() < 1e-9 * (1.0 + z.norm()), "{z}");
            }
        }
        for z in poly.normalized().unwrap().into_iter().flatten() {
            assert!((z.norm() - 1.0).abs() < 1e-8, "{z}");
        }
    }
}

#[test]
fn degenerate_curve_leaves_the_circle() {
    let poly = ct_polyline(&degenerate_rep("R L"), 6).unwrap();
    let off = poly
        .normalized()
        .unwrap()
        .into_iter()
        .flatten()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    assert!(off > 0.1);
}

#[test]
fn anchors_are_strictly_increasing() {
    let poly = ct_polyline(&degenerate_rep("R^4 L"), 7).unwrap();
    assert!(poly.points.windows(2).all(|w| w[0].anchor < w[1].anchor));
}

#[test]
fn coverage_grows_with_depth() {
    let rep = degenerate_rep("R L");
    let mut prev = 0.0;
    for d in 2..=8 {
        let c = coverage(&ct_polyline(&rep, d).unwrap(), 50).unwrap();
        assert!(c >= prev, "depth {d}: {c} < {prev}");
        prev = c;
    }
}

#[test]
fn rendering_is_deterministic() {
    let rep = degenerate_rep("R L");
    let a = ct_polyline(&rep, 7).unwrap();
    let b = ct_polyline(&rep, 7).unwrap();
    assert_eq!(a, b);
    let proj = Projection::default();
    let style = Style::default();
    assert_eq!(render_svg(&a, &proj, &style).unwrap(), render_svg(&b, &proj, &style).unwrap());
}

#[test]
fn locked_raster_hashes() {
    let proj = Projection::default();
    let rl = ct_polyline(&degenerate_rep("R L"), 8).unwrap();
    assert_eq!(rl.len(), 11664);
    assert_eq!(
        raster_hash(&rl, &proj, 256).unwrap(),
        "ca9edeacc625ba02dfe649ecad418456b44ee488689cb2fc9dbb69eec7b5c4e0"
    );
    let r4l = ct_polyline(&degenerate_rep("R^4 L"), 8).unwrap();
    assert_eq!(
        raster_hash(&r4l, &proj, 256).unwrap(),
        "d412a7e652ad10e6190147604179e63441587543a2710249e3d0405dcb446d27"
    );
}

#[test]
fn bad_inputs_are_rejected() {
    let rep = degenerate_rep("R L");
    assert!(ct_polyline(&rep, 0).is_err());
    assert!(ct_polyline(&rep, 21).is_err());
    let loxodromic = HolonomyRep::from_generators(
        CMat2::from_real([[2.0, 1.0], [1.0, 1.0]]),
        CMat2::new(C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.5, 0.5), C::new(1.0, 0.0)),
    );
    assert!(ct_polyline(&loxodromic, 3).is_err());
}
