mod common;

use common::{primitive_vectors, random_mapping_class};
use monodromy::teich::{fricke_diagonal_sweep, mat2_to_f64};
use monodromy::{
    act_on_lamination, act_on_teich, boundary_profile, fuchsian_matrices, length_of_lamination, make_fricke,
    parse_word, trace_of_slope, CurveClass, FrickePoint, MeasuredLamination, Scalar,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type M = [[f64; 2]; 2];

fn mul(x: M, y: M) -> M {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

fn inv(x: M) -> M {
    [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]
}

/// Trace of the Christoffel word of `(a, b)` in the generators: `a` letters
/// `A` and `|b|` letters `B^{sign b}` spread as evenly as possible.
fn christoffel_trace(a: M, b: M, p: i64, q: i64) -> f64 {
    let (p, q, b) = if p < 0 { (-p, -q, b) } else { (p, q, b) };
    let b = if q < 0 { inv(b) } else { b };
    let q = q.abs();
    let n = p + q;
    let mut m = [[1.0, 0.0], [0.0, 1.0]];
    for i in 1..=n {
        let step = (i * q) / n != ((i - 1) * q) / n;
        m = mul(m, if step { b } else { a });
    }
    m[0][0] + m[1][1]
}

#[test]
fn slope_traces_match_matrix_words() {
    for g in [
        FrickePoint::symmetric(),
        make_fricke(&Scalar::int(3), &Scalar::int(4)).unwrap(),
        make_fricke(&Scalar::Float(2.9), &Scalar::Float(3.4)).unwrap(),
    ] {
        let (a, b) = fuchsian_matrices(&g);
        let (a, b) = (mat2_to_f64(&a), mat2_to_f64(&b));
        for (p, q) in primitive_vectors(5) {
            let exact = trace_of_slope(&g, CurveClass::new(p, q).unwrap()).to_f64();
            let oracle = christoffel_trace(a, b, p, q);
            assert!((exact - oracle.abs()).abs() < 1e-8 * exact.abs(), "{g} ({p},{q}): {exact} vs {oracle}");
        }
    }
}

#[test]
fn action_is_equivariant_for_traces() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let g = make_fricke(&Scalar::int(3), &Scalar::int(4)).unwrap();
    for _ in 0..50 {
        let phi = random_mapping_class(&mut rng, 6);
        let h = act_on_teich(&phi, &g).unwrap();
        assert_eq!(h.relation_defect(), Scalar::zero());
        for (p, q) in primitive_vectors(3) {
            let c = CurveClass::new(p, q).unwrap();
            let image = act_on_lamination(phi.matrix(), &c.to_lamination()).unwrap();
            let [x, y] = image.to_f64();
            let mc = CurveClass::new(x as i64, y as i64).unwrap();
            assert_eq!(trace_of_slope(&h, mc), trace_of_slope(&g, c), "{phi} on ({p},{q})");
        }
    }
}

#[test]
fn action_is_a_group_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let g = FrickePoint::symmetric();
    for _ in 0..50 {
        let f = random_mapping_class(&mut rng, 5);
        let h = random_mapping_class(&mut rng, 5);
        let fh = f.compose(&h).unwrap();
        let left = act_on_teich(&fh, &g).unwrap();
        let right = act_on_teich(&f, &act_on_teich(&h, &g).unwrap()).unwrap();
        assert_eq!(left, right, "{f} ∘ {h}");
    }
}

#[test]
fn boundary_ratios_converge_along_figure_eight_orbit() {
    let phi = parse_word("R L").unwrap().inverse();
    let probes = [MeasuredLamination::from_ints(1, 0), MeasuredLamination::from_ints(0, 1)];
    let profile = boundary_profile(&FrickePoint::symmetric(), &phi, 15, &probes).unwrap();
    let predicted = profile.predicted_ratios.clone().unwrap();
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((predicted[1] - golden).abs() < 1e-12 || (predicted[1] - 1.0 / golden).abs() < 1e-12);
    assert!((profile.ratio(15, 1) - predicted[1]).abs() < 1e-3);
    assert!((profile.growth(15, 0) - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-3);
    assert!((profile.predicted_growth.unwrap() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
}

#[test]
fn boundary_profile_matches_direct_evaluation() {
    let phi = parse_word("R^2 L").unwrap();
    let probe = MeasuredLamination::from_ints(2, 1);
    let profile = boundary_profile(&FrickePoint::symmetric(), &phi, 5, std::slice::from_ref(&probe)).unwrap();
    let mut g = FrickePoint::symmetric();
    for n in 0..=5 {
        let direct = length_of_lamination(&g, &probe).unwrap();
        assert!((profile.lengths[n][0] - direct).abs() < 1e-9 * direct, "n={n}");
        g = act_on_teich(&phi, &g).unwrap();
    }
}

#[test]
fn diagonal_sweep_keeps_one_curve_long() {
    let rows = fricke_diagonal_sweep(2.1, 20.0, 400);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.x >= 8f64.sqrt()));
    let inf = rows.iter().map(|r| r.max).fold(f64::INFINITY, f64::min);
    assert!(inf > 0.0);
    // At the symmetric point the longest of the four is the (1,-1) curve.
    let lengths = monodromy::four_curve_lengths(&FrickePoint::symmetric());
    assert!((lengths[3] - 2.0 * 3f64.acosh()).abs() < 1e-12);
}
