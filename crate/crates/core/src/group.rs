//! Reduced words in the free group `F(A, B)` (the fiber group).
//!
//! Lower-case letters are inverses: `a = A⁻¹`, `b = B⁻¹`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Letters are stored as `±1` (A, a) and `±2` (B, b).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i8>);

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord(Vec::new())
    }

    pub fn a() -> FreeWord {
        FreeWord(vec![1])
    }

    pub fn b() -> FreeWord {
        FreeWord(vec![2])
    }

    /// Commutator `A B A⁻¹ B⁻¹`, the loop around the puncture.
    pub fn commutator() -> FreeWord {
        FreeWord(vec![1, 2, -1, -2])
    }

    pub fn from_letters(letters: &[i8]) -> Result<FreeWord> {
        if letters.iter().any(|&l| l == 0 || l.abs() > 2) {
            return Err(Error::domain("free-group letters are ±1 and ±2"));
        }
        let mut w = FreeWord::identity();
        for &l in letters {
            w.push(l);
        }
        Ok(w)
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, l: i8) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Replaces `A` by `ia` and `B` by `ib`.
    pub fn substitute(&self, ia: &FreeWord, ib: &FreeWord) -> FreeWord {
        let (ia_inv, ib_inv) = (ia.inverse(), ib.inverse());
        let mut w = FreeWord::identity();
        for &l in &self.0 {
            let img = match l {
                1 => ia,
                -1 => &ia_inv,
                2 => ib,
                _ => &ib_inv,
            };
            w = w.concat(img);
        }
        w
    }

    /// Abelianization in `Z²` with `A = (1,0)`, `B = (0,1)`.
    pub fn homology(&self) -> [i64; 2] {
        let mut h = [0i64; 2];
        for &l in &self.0 {
            h[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
        }
        h
    }

    /// If the word is a power of `ABab`, the exponent.
    pub fn commutator_power(&self) -> Option<i64> {
        let k = FreeWord::commutator();
        if !self.0.len().is_multiple_of(4) {
            return None;
        }
        let n = (self.0.len() / 4) as i64;
        [n, -n].into_iter().find(|&e| k.pow(e) == *self)
    }

    /// Evaluates the word in a group given the images of `A` and `B`.
    pub fn eval<T: Clone>(&self, one: T, a: &T, a_inv: &T, b: &T, b_inv: &T, mul: impl Fn(&T, &T) -> T) -> T {
        let mut acc = one;
        for &l in &self.0 {
            let g = match l {
                1 => a,
                -1 => a_inv,
                2 => b,
                _ => b_inv,
            };
            acc = mul(&acc, g);
        }
        acc
    }

    /// All reduced words of length exactly `n`, in lexicographic letter order
    /// `A, B, a, b`.
    pub fn all_of_length(n: usize) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::identity()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * 3);
            for w in &out {
                for l in [1, 2, -1, -2] {
                    if w.0.last() != Some(&-l) {
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(FreeWord(v));
                    }
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            let c = match l {
                1 => 'A',
                -1 => 'a',
                2 => 'B',
                _ => 'b',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<FreeWord> {
        let mut w = FreeWord::identity();
        for (i, c) in s.char_indices() {
            let l = match c {
                'A' => 1,
                'a' => -1,
                'B' => 2,
                'b' => -2,
                '1' if s.trim() == "1" => continue,
                c if c.is_whitespace() => continue,
                _ => {
                    return Err(Error::Parse {
                        offset: i,
                        message: format!("unexpected '{c}' in fiber-group word"),
                    })
                }
            };
            w.push(l);
        }
        Ok(w)
    }
}
