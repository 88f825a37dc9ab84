//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{flat_torus_crossings, primitive_vectors, random_fiber_word, traced_switch_count};
use monodromy::geom::four_curve_translation_lengths;
use monodromy::limitset::{Projection, Style};
use monodromy::teich::{fricke_diagonal_sweep, mat2_to_f64};
use monodromy::{
    act_on_lamination, alternation_number, boundary_profile, canonical_rl_form, classify, coverage, ct_polyline,
    fixed_trace_triple, fuchsian_matrices, holonomy, intersection_number, layered_triangulation, make_fricke,
    parse_word, render_svg, solve_shapes, translation_length, trichotomy, volume, CMat2, CurveClass, FrickePoint,
    GeometrizationType, HolonomyRep, IntMatrix, MeasuredLamination, NTClass, Scalar,
};
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coverage of the figure-eight curve at depth 12 on the 50 × 50 grid.
const RL_COVERAGE_DEPTH_12: f64 = 0.5272;
/// Infimum of the longest of the four curves over the diagonal Fricke sweep
/// `x = y ∈ [2.1, 20]` (1001 samples, hyperbolic ones only).
const SWEEP_INFIMUM: f64 = 2.780_534_00;
/// Same over the degenerate reps of the ten words in `four_curves`.
const DEGENERATE_INFIMUM: f64 = 1.087_070_14;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn rep_of(word: &str) -> Result<HolonomyRep, String> {
    let rl = canonical_rl_form(&parse_word(word).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let tb = layered_triangulation(&rl).map_err(|e| e.to_string())?;
    let sol = solve_shapes(&tb.equations).map_err(|e| e.to_string())?;
    holonomy(&sol, &tb).map_err(|e| e.to_string())
}

fn trichotomy_table() -> Outcome {
    let t = Instant::now();
    let tag = |w: &str| trichotomy(&parse_word(w).unwrap()).unwrap();
    check(
        tag("R") == GeometrizationType::TorusReducible { invariant: CurveClass::new(1, 0).unwrap() },
        "R is not torus-reducible along (1,0)",
    )?;
    check(tag("L R^-1 L") == GeometrizationType::SeifertH2xR { order: 4 }, "L R^-1 L is not Seifert of order 4")?;
    check(tag("R L").tag() == "hyperbolic", "R L is not hyperbolic")?;
    check(tag("R^4 L").tag() == "hyperbolic", "R^4 L is not hyperbolic")?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("4 tags exact in {:.2?}", t.elapsed()))
}

fn exact_dilatations() -> Outcome {
    for (w, expected) in [("R L", "(3+sqrt(5))/2"), ("R^4 L", "3+2*sqrt(2)")] {
        let phi = parse_word(w).unwrap();
        let NTClass::PseudoAnosov { dilatation, mu_u, mu_s } = classify(&phi) else {
            return Err(format!("{w} is not pseudo-Anosov"));
        };
        check(dilatation.exact_string() == expected, format!("{w}: {}", dilatation.exact_string()))?;
        let m = phi.matrix();
        check(
            act_on_lamination(m, &mu_u).unwrap() == mu_u.scale(&dilatation),
            format!("{w}: φ·μ_u ≠ λ·μ_u"),
        )?;
        check(
            act_on_lamination(m, &mu_s).unwrap() == mu_s.scale(&dilatation.recip().unwrap()),
            format!("{w}: φ·μ_s ≠ λ⁻¹·μ_s"),
        )?;
    }
    Ok("(3+sqrt(5))/2 and 3+2*sqrt(2); eigen-equations exact".into())
}

fn intersection_oracle() -> Outcome {
    let t = Instant::now();
    let vs = primitive_vectors(10);
    let mut pairs = 0;
    let mut mismatches = 0;
    for &v in &vs {
        for &w in &vs {
            let exact = intersection_number(&MeasuredLamination::from_ints(v.0, v.1), &MeasuredLamination::from_ints(w.0, w.1));
            if exact != Scalar::int(flat_torus_crossings(v, w) as i64) {
                mismatches += 1;
            }
            pairs += 1;
        }
    }
    check(mismatches == 0, format!("{mismatches} mismatches"))?;
    within(t.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{pairs} pairs, 0 mismatches in {:.2?}", t.elapsed()))
}

fn random_curve<R: Rng>(rng: &mut R, bound: i64) -> CurveClass {
    loop {
        if let Ok(c) = CurveClass::new(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound)) {
            return c;
        }
    }
}

fn big_twists() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb16);
    let mut tight = 0;
    for _ in 0..100 {
        let lambda = loop {
            let l = MeasuredLamination::from_vector(
                Scalar::ratio(rng.random_range(-50..=50), rng.random_range(1..=12)),
                Scalar::ratio(rng.random_range(-50..=50), rng.random_range(1..=12)),
            );
            if !l.is_empty() {
                break l;
            }
        };
        let alpha = random_curve(&mut rng, 9);
        let a = alpha.to_lamination();
        let i = intersection_number(&lambda, &a);
        for q in [10i64, 100, 1000] {
            let tw = IntMatrix::twist(alpha.a() as i128, alpha.b() as i128).checked_pow(q).unwrap();
            let lhs = act_on_lamination(&tw, &lambda).unwrap().scale(&Scalar::ratio(1, q)).distance_sq(&a.scale(&i));
            let rhs = &lambda.norm_sq() * &Scalar::ratio(1, q * q);
            match lhs.cmp_value(&rhs) {
                Some(std::cmp::Ordering::Greater) | None => {
                    return Err(format!("λ={lambda} α={alpha} q={q}: {lhs} > {rhs}"));
                }
                Some(std::cmp::Ordering::Equal) => tight += 1,
                _ => {}
            }
        }
    }
    Ok(format!("300 exact comparisons, {tight} with equality"))
}

fn compose_big_twists() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    while cases < 50 {
        let k = rng.random_range(3..=4);
        let slopes: Vec<CurveClass> = (0..k).map(|_| random_curve(&mut rng, 4)).collect();
        if !(0..k).all(|i| (i + 1..k).all(|j| slopes[i].intersection(&slopes[j]) > 0)) {
            continue;
        }
        let mut image = MeasuredLamination::from_ints(rng.random_range(-9..=9), rng.random_range(1..=9));
        for c in slopes.iter().rev() {
            let tw = IntMatrix::twist(c.a() as i128, c.b() as i128).checked_pow(1000).unwrap();
            image = act_on_lamination(&tw, &image).unwrap();
        }
        let [x, y] = image.to_f64();
        let (p, q) = (slopes[0].a() as f64, slopes[0].b() as f64);
        let sin = (x * q - y * p).abs() / (x.hypot(y) * p.hypot(q));
        worst = worst.max(sin);
        cases += 1;
    }
    check(worst < 1e-2, format!("worst |sin θ| = {worst:.3e}"))?;
    Ok(format!("50 cases, worst |sin θ| = {worst:.3e}"))
}

fn boundary_ratios() -> Outcome {
    let t = Instant::now();
    let phi = parse_word("R L").unwrap().inverse();
    let probes = [MeasuredLamination::from_ints(1, 0), MeasuredLamination::from_ints(0, 1)];
    let profile = boundary_profile(&FrickePoint::symmetric(), &phi, 15, &probes).map_err(|e| e.to_string())?;
    let predicted = profile.predicted_ratios.clone().ok_or("no predicted ratios")?;
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    check(
        (predicted[1] - golden).abs() < 1e-12 || (predicted[1] - 1.0 / golden).abs() < 1e-12,
        format!("predicted ratio {} is not golden", predicted[1]),
    )?;
    let ratio_err = (profile.ratio(15, 1) - predicted[1]).abs();
    let growth_err = (profile.growth(15, 0) - (3.0 + 5f64.sqrt()) / 2.0).abs();
    check(ratio_err < 1e-3, format!("ratio error {ratio_err:.3e}"))?;
    check(growth_err < 1e-3, format!("growth error {growth_err:.3e}"))?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("ratio err {ratio_err:.1e}, growth err {growth_err:.1e} in {:.2?}", t.elapsed()))
}

fn figure_eight() -> Outcome {
    let rl = canonical_rl_form(&parse_word("R L").unwrap()).unwrap();
    let tb = layered_triangulation(&rl).map_err(|e| e.to_string())?;
    let sol = solve_shapes(&tb.equations).map_err(|e| e.to_string())?;
    let target = C::new(0.5, 0.866_025_403_8);
    let shape_err = sol.shapes.iter().map(|z| (z - target).norm()).fold(0.0, f64::max);
    let vol_err = (volume(&sol) - 2.029_883_212_8).abs();
    let rep = holonomy(&sol, &tb).map_err(|e| e.to_string())?;
    let tr_err = (rep.commutator().trace() + 2.0).norm();
    check(shape_err < 1e-10, format!("shape error {shape_err:.3e}"))?;
    check(vol_err < 1e-9, format!("volume error {vol_err:.3e}"))?;
    check(tr_err < 1e-8, format!("commutator trace error {tr_err:.3e}"))?;
    Ok(format!("shape err {shape_err:.1e}, volume err {vol_err:.1e}, tr[A,B] err {tr_err:.1e}"))
}

fn monodromy_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x15);
    let mut worst: f64 = 0.0;
    let mut worst_trace: f64 = 0.0;
    for word in ["R L", "R^4 L"] {
        let rep = rep_of(word)?;
        for _ in 0..20 {
            let g = random_fiber_word(&mut rng, 8);
            let l0 = translation_length(&rep, &g).map_err(|e| e.to_string())?.re;
            let l1 = translation_length(&rep, &rep.apply_monodromy(&g)).map_err(|e| e.to_string())?.re;
            worst = worst.max((l0 - l1).abs());
        }
        let roots = fixed_trace_triple(&parse_word(word).unwrap()).map_err(|e| e.to_string())?;
        let target = [rep.a.trace(), rep.b.trace(), (rep.a * rep.b).trace()];
        worst_trace = worst_trace.max(roots.geometric.lift_distance(target));
    }
    check(worst < 1e-6, format!("length mismatch {worst:.3e}"))?;
    check(worst_trace < 1e-6, format!("trace mismatch {worst_trace:.3e}"))?;
    Ok(format!("40 words, length err {worst:.1e}; trace-route err {worst_trace:.1e}"))
}

fn cannon_thurston() -> Outcome {
    let t = Instant::now();
    let (a, b) = fuchsian_matrices(&make_fricke(&Scalar::int(3), &Scalar::int(4)).unwrap());
    let fuchsian = HolonomyRep::from_generators(CMat2::from_real(mat2_to_f64(&a)), CMat2::from_real(mat2_to_f64(&b)));
    let circle = ct_polyline(&fuchsian, 8).map_err(|e| e.to_string())?;
    let off = circle
        .normalized()
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|z| z.map_or(f64::INFINITY, |z| (z.norm() - 1.0).abs()))
        .fold(0.0, f64::max);
    check(off < 1e-8, format!("Fuchsian points {off:.3e} off the circle"))?;
    let rep = rep_of("R L")?;
    let mut cov = Vec::new();
    let mut deepest = None;
    for d in [8, 10, 12] {
        let poly = ct_polyline(&rep, d).map_err(|e| e.to_string())?;
        cov.push(coverage(&poly, 50).map_err(|e| e.to_string())?);
        deepest = Some(poly);
    }
    check(cov[0] < cov[1] && cov[1] < cov[2], format!("coverage not increasing: {cov:?}"))?;
    check(
        (cov[2] - RL_COVERAGE_DEPTH_12).abs() < 1e-12,
        format!("depth-12 coverage {} ≠ locked {RL_COVERAGE_DEPTH_12}", cov[2]),
    )?;
    let poly = deepest.unwrap();
    let (proj, style) = (Projection::default(), Style::default());
    let first = render_svg(&poly, &proj, &style).map_err(|e| e.to_string())?;
    let second = render_svg(&poly, &proj, &style).map_err(|e| e.to_string())?;
    check(first == second, "SVG bytes differ between runs")?;
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "circle err {off:.1e}; coverage {:.4} < {:.4} < {:.4}; SVG {} bytes stable; {:.2?}",
        cov[0],
        cov[1],
        cov[2],
        first.len(),
        t.elapsed()
    ))
}

fn alternation() -> Outcome {
    let classes = primitive_vectors(8);
    for &(a, b) in &classes {
        let combinatorial = alternation_number(&MeasuredLamination::from_ints(a, b)).map_err(|e| e.to_string())?;
        check(
            combinatorial == Scalar::int(traced_switch_count(a, b) as i64),
            format!("({a},{b}): {combinatorial} vs traced {}", traced_switch_count(a, b)),
        )?;
    }
    let mu = MeasuredLamination::from_vector(Scalar::int(2), Scalar::surd(1, 1, 1, 5).unwrap());
    for k in [Scalar::int(3), Scalar::ratio(7, 2), Scalar::surd(3, 1, 1, 5).unwrap()] {
        check(
            alternation_number(&mu.scale(&k)).unwrap() == &k * &alternation_number(&mu).unwrap(),
            format!("not homogeneous for k = {k}"),
        )?;
    }
    let target = alternation_number(&mu).unwrap().to_f64() / mu.norm();
    let (mut f0, mut f1) = (1i64, 1i64);
    for _ in 0..25 {
        (f0, f1) = (f1, f0 + f1);
    }
    let v = MeasuredLamination::from_ints(f0, f1);
    let err = (alternation_number(&v).unwrap().to_f64() / v.norm() - target).abs();
    check(err < 1e-6, format!("continuity error {err:.3e}"))?;
    Ok(format!("{} classes match tracing; homogeneous; continuity err {err:.1e}", classes.len()))
}

fn four_curves() -> Outcome {
    let rows = fricke_diagonal_sweep(2.1, 20.0, 1000);
    let sweep = rows.iter().map(|r| r.max).fold(f64::INFINITY, f64::min);
    check(rows.iter().all(|r| r.max > 0.0), "a sweep maximum is not positive")?;
    check(sweep > SWEEP_INFIMUM, format!("sweep infimum {sweep} ≤ locked {SWEEP_INFIMUM}"))?;
    let words = ["R L", "R^2 L", "R L^2", "R^3 L", "R^2 L^2", "R^4 L", "R^3 L^2", "R^2 L R L", "R L R L^2", "R^5 L"];
    let mut degenerate = f64::INFINITY;
    for w in words {
        let max = four_curve_translation_lengths(&rep_of(w)?).into_iter().fold(0.0, f64::max);
        check(max > 0.0, format!("{w}: all four lengths vanish"))?;
        degenerate = degenerate.min(max);
    }
    check(
        degenerate > DEGENERATE_INFIMUM,
        format!("degenerate infimum {degenerate} ≤ locked {DEGENERATE_INFIMUM}"),
    )?;
    Ok(format!("sweep inf {sweep:.6} ({} points), degenerate inf {degenerate:.6} (10 words)", rows.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("trichotomy table", trichotomy_table),
        ("exact pseudo-Anosov data", exact_dilatations),
        ("intersection vs flat-torus crossings", intersection_oracle),
        ("big twists", big_twists),
        ("composed big twists", compose_big_twists),
        ("boundary ratio convergence", boundary_ratios),
        ("figure-eight bundle", figure_eight),
        ("monodromy isometry invariance", monodromy_invariance),
        ("Cannon-Thurston renders", cannon_thurston),
        ("alternation number", alternation),
        ("four curves not all short", four_curves),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
