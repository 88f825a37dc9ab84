//! 2×2 integer matrices with checked arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `[[a, b], [c, d]]`, acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl IntMatrix {
    pub const fn new(a: i128, b: i128, c: i128, d: i128) -> IntMatrix {
        IntMatrix { a, b, c, d }
    }

    pub const fn identity() -> IntMatrix {
        IntMatrix::new(1, 0, 0, 1)
    }

    /// Right-handed twist generator `R = [[1,1],[0,1]]`.
    pub const R: IntMatrix = IntMatrix::new(1, 1, 0, 1);
    /// Left-handed twist generator `L = [[1,0],[1,1]]`.
    pub const L: IntMatrix = IntMatrix::new(1, 0, 1, 1);

    pub fn entries(&self) -> [[i128; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self) -> i128 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity()
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.is_identity() || self.neg().is_identity()
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> IntMatrix {
        debug_assert_eq!(self.det(), 1);
        IntMatrix::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn checked_mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        let dot = |x: i128, y: i128, z: i128, w: i128| -> Result<i128> {
            x.checked_mul(y)
                .and_then(|p| z.checked_mul(w).and_then(|q| p.checked_add(q)))
                .ok_or(Error::Overflow("matrix product"))
        };
        Ok(IntMatrix::new(
            dot(self.a, o.a, self.b, o.c)?,
            dot(self.a, o.b, self.b, o.d)?,
            dot(self.c, o.a, self.d, o.c)?,
            dot(self.c, o.b, self.d, o.d)?,
        ))
    }

    /// `self^n` for any integer `n` (negative powers need `det = 1`).
    pub fn checked_pow(&self, n: i64) -> Result<IntMatrix> {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = IntMatrix::identity();
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn apply(&self, v: [i128; 2]) -> [i128; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// `X M X^{-1}`.
    pub fn conjugate_by(&self, x: &IntMatrix) -> Result<IntMatrix> {
        x.checked_mul(self)?.checked_mul(&x.inverse())
    }

    /// Dehn twist about the curve `(p, q)`: `v ↦ v + det((p,q), v)·(p,q)`.
    ///
    /// For `(1,0)` this is `R`; in general it is `R` conjugated by any
    /// matrix sending `(1,0)` to `(p,q)`.
    pub fn twist(p: i128, q: i128) -> IntMatrix {
        IntMatrix::new(1 - p * q, p * p, -q * q, 1 + p * q)
    }

    /// Order of a matrix of finite order in SL(2,Z), if any.
    pub fn finite_order(&self) -> Option<u32> {
        let mut m = *self;
        for k in 1..=6 {
            if m.is_identity() {
                return Some(k);
            }
            m = m.checked_mul(self).ok()?;
        }
        None
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}
