//! Bloch–Wigner dilogarithm `D(z) = Im Li₂(z) + arg(1−z) log|z|`.
//!
//! `D` is invariant (up to sign) under the six anharmonic substitutions, so
//! the argument is moved to the orbit element with the smallest
//! `u = −log(1−z)`, where the Bernoulli series
//! `Li₂(z) = Σ B_n u^{n+1}/(n+1)!` converges geometrically (`|u| ≤ π/3`).

use std::sync::OnceLock;

use num_complex::Complex64;

const TERMS: usize = 40;

/// `B_n / (n+1)!` for `n < TERMS`, with `B_1 = −1/2`.
fn coefficients() -> &'static [f64; TERMS] {
    static COEFFS: OnceLock<[f64; TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut b = [0.0f64; TERMS];
        b[0] = 1.0;
        // Σ_{k<m+1} C(m+1, k) B_k = 0.
        for m in 1..TERMS {
            let mut s = 0.0;
            let mut binom = 1.0;
            for (k, bk) in b.iter().enumerate().take(m) {
                s += binom * bk;
                binom = binom * (m + 1 - k) as f64 / (k + 1) as f64;
            }
            b[m] = -s / (m + 1) as f64;
        }
        let mut out = [0.0; TERMS];
        let mut fact = 1.0;
        for n in 0..TERMS {
            fact *= (n + 1) as f64;
            out[n] = b[n] / fact;
        }
        out
    })
}

fn li2_near_zero(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let c = coefficients();
    let mut pow = u;
    let mut sum = Complex64::new(0.0, 0.0);
    for &cn in c.iter() {
        sum += pow * cn;
        pow *= u;
    }
    sum
}

fn d_direct(z: Complex64) -> f64 {
    li2_near_zero(z).im + (Complex64::new(1.0, 0.0) - z).arg() * z.norm().ln()
}

pub fn bloch_wigner(z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    if z.norm() < 1e-300 || (z - one).norm() < 1e-300 {
        return 0.0;
    }
    let orbit = [
        (z, 1.0),
        (one - z.inv(), 1.0),
        ((one - z).inv(), 1.0),
        (z.inv(), -1.0),
        (one - z, -1.0),
        (z / (z - one), -1.0),
    ];
    let (w, s) = orbit
        .into_iter()
        .min_by(|a, b| {
            let ua = (one - a.0).ln().norm();
            let ub = (one - b.0).ln().norm();
            ua.total_cmp(&ub)
        })
        .expect("six candidates");
    s * d_direct(w)
}
