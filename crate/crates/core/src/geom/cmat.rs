//! Complex 2×2 matrices as Möbius transformations.

use std::ops::Mul;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat2 {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl CMat2 {
    pub const fn new(a: C, b: C, c: C, d: C) -> CMat2 {
        CMat2 { a, b, c, d }
    }

    pub fn identity() -> CMat2 {
        CMat2::new(C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0))
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> CMat2 {
        CMat2::new(m[0][0].into(), m[0][1].into(), m[1][0].into(), m[1][1].into())
    }

    pub fn det(&self) -> C {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C {
        self.a + self.d
    }

    /// Adjugate; the inverse when `det = 1`.
    pub fn inverse(&self) -> CMat2 {
        CMat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, k: C) -> CMat2 {
        CMat2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// Rescales to determinant one.
    pub fn normalized(&self) -> CMat2 {
        self.scale(self.det().sqrt().inv())
    }

    pub fn neg(&self) -> CMat2 {
        self.scale(C::new(-1.0, 0.0))
    }

    pub fn conjugate(&self, x: &CMat2) -> CMat2 {
        *x * *self * x.inverse()
    }

    /// Max-entry distance.
    pub fn distance(&self, o: &CMat2) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Distance in `PSL(2, C)`: the smaller of the distances to `±o`.
    pub fn projective_distance(&self, o: &CMat2) -> f64 {
        self.distance(o).min(self.distance(&o.neg()))
    }

    /// Möbius action on a finite point; `None` is the point at infinity.
    pub fn apply(&self, z: Option<C>) -> Option<C> {
        match z {
            None => (self.c.norm() > 0.0).then(|| self.a / self.c),
            Some(z) => {
                let den = self.c * z + self.d;
                (den.norm() > 0.0).then(|| (self.a * z + self.b) / den)
            }
        }
    }

    /// Attracting-or-parabolic fixed point on the sphere.
    pub fn fixed_point(&self) -> Option<C> {
        if self.c.norm() < 1e-300 {
            return None;
        }
        let t = self.trace();
        let disc = (t * t - 4.0).sqrt();
        Some((self.a - self.d + disc) / (2.0 * self.c))
    }

    /// Fixed point of a matrix known to be parabolic, `(a − d) / 2c`; unlike
    /// [`CMat2::fixed_point`] this does not amplify trace error through a square root.
    pub fn parabolic_fixed_point(&self) -> Option<C> {
        if self.c.norm() < 1e-300 {
            return None;
        }
        Some((self.a - self.d) / (2.0 * self.c))
    }

    /// The Möbius map sending `src[i]` to `dst[i]`, normalized to det 1.
    pub fn from_three_points(src: [C; 3], dst: [C; 3]) -> CMat2 {
        // Sends (a, b, c) to (0, ∞, 1).
        let to_std = |[a, b, c]: [C; 3]| CMat2::new(c - b, -a * (c - b), c - a, -b * (c - a));
        let m = to_std(dst).inverse() * to_std(src);
        m.normalized()
    }

    pub fn to_array(&self) -> [[[f64; 2]; 2]; 2] {
        let p = |z: C| [z.re, z.im];
        [[p(self.a), p(self.b)], [p(self.c), p(self.d)]]
    }
}

impl Mul for CMat2 {
    type Output = CMat2;

    fn mul(self, o: CMat2) -> CMat2 {
        CMat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Serialize for CMat2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}
