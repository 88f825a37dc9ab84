//! Mapping classes of the once-punctured torus as words in the twist
//! generators `R = [[1,1],[0,1]]` and `L = [[1,0],[1,1]]`.
//!
//! Words multiply left to right and act on column vectors, so `"R^4 L"` has
//! matrix `R⁴·L = [[5,4],[1,1]]`. The mapping class group is identified with
//! SL(2,Z); `-I` is the elliptic involution.
//!
//! Naming of the eigenlaminations: `mu_u` is the direction the matrix
//! *expands* (eigenvalue `λ`), `mu_s` the one it contracts (`λ⁻¹`). Forward
//! iterates of a point of Teichmüller space converge projectively to `mu_u`
//! under this labelling; literature that labels by the Teichmüller action
//! may swap the two names.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FreeWord;
use crate::lamination::{CurveClass, MeasuredLamination};
use crate::matrix::IntMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    R,
    L,
}

impl Letter {
    pub fn matrix(self) -> IntMatrix {
        match self {
            Letter::R => IntMatrix::R,
            Letter::L => IntMatrix::L,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::R => 'R',
            Letter::L => 'L',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Token {
    pub letter: Letter,
    pub exp: i64,
}

/// A word in `R^{±1}, L^{±1}` together with its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingClass {
    word: Vec<Token>,
    matrix: IntMatrix,
}

impl MappingClass {
    pub fn identity() -> MappingClass {
        MappingClass {
            word: Vec::new(),
            matrix: IntMatrix::identity(),
        }
    }

    pub fn from_tokens(word: Vec<Token>) -> Result<MappingClass> {
        let mut matrix = IntMatrix::identity();
        for t in &word {
            matrix = matrix.checked_mul(&t.letter.matrix().checked_pow(t.exp)?)?;
        }
        Ok(MappingClass { word, matrix })
    }

    pub fn from_letters(letters: &[Letter]) -> Result<MappingClass> {
        MappingClass::from_tokens(
            letters
                .iter()
                .map(|&letter| Token { letter, exp: 1 })
                .collect(),
        )
    }

    pub fn word(&self) -> &[Token] {
        &self.word
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> i128 {
        self.matrix.trace()
    }

    /// `self` followed by `other` (matrix `self · other`).
    pub fn compose(&self, other: &MappingClass) -> Result<MappingClass> {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Ok(MappingClass {
            word,
            matrix: self.matrix.checked_mul(&other.matrix)?,
        })
    }

    pub fn inverse(&self) -> MappingClass {
        MappingClass {
            word: self
                .word
                .iter()
                .rev()
                .map(|t| Token {
                    letter: t.letter,
                    exp: -t.exp,
                })
                .collect(),
            matrix: self.matrix.inverse(),
        }
    }

    pub fn pow(&self, n: i64) -> Result<MappingClass> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = MappingClass::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    /// Letters with exponents expanded to ±1, in word order.
    pub fn unit_letters(&self) -> Vec<(Letter, i8)> {
        let mut out = Vec::new();
        for t in &self.word {
            let s = if t.exp < 0 { -1 } else { 1 };
            for _ in 0..t.exp.unsigned_abs() {
                out.push((t.letter, s));
            }
        }
        out
    }

    /// Image of a fiber-group word under the induced automorphism
    /// `R: A↦A, B↦BA` and `L: A↦AB, B↦B` (composed in word order), which
    /// acts on homology by the matrix of the class.
    pub fn act_on_word(&self, w: &FreeWord) -> FreeWord {
        let mut images = [FreeWord::a(), FreeWord::b()];
        for &(letter, s) in self.unit_letters().iter() {
            // images ← images ∘ letter_* : substitute the letter's images into
            // the current images of A and B.
            let (ia, ib) = letter_images(letter, s);
            let new_a = ia.substitute(&images[0], &images[1]);
            let new_b = ib.substitute(&images[0], &images[1]);
            images = [new_a, new_b];
        }
        w.substitute(&images[0], &images[1])
    }
}

fn letter_images(letter: Letter, s: i8) -> (FreeWord, FreeWord) {
    let a = FreeWord::a();
    let b = FreeWord::b();
    match (letter, s > 0) {
        (Letter::R, true) => (a.clone(), b.concat(&a)),
        (Letter::R, false) => (a.clone(), b.concat(&a.inverse())),
        (Letter::L, true) => (a.concat(&b), b),
        (Letter::L, false) => (a.concat(&b.inverse()), b),
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .word
            .iter()
            .map(|t| {
                if t.exp == 1 {
                    t.letter.symbol().to_string()
                } else {
                    format!("{}^{}", t.letter.symbol(), t.exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses `WORD := TOKEN*`, `TOKEN := ("R"|"L") ("^" signed-integer)?`.
/// Tokens may be separated by whitespace; empty input is the identity.
pub fn parse_word(text: &str) -> Result<MappingClass> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut word = Vec::new();
    let err = |offset: usize, message: &str| Error::Parse {
        offset,
        message: message.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let letter = match c {
            b'R' => Letter::R,
            b'L' => Letter::L,
            _ => return Err(err(i, "expected 'R' or 'L'")),
        };
        i += 1;
        let mut exp = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let start = i;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                i += 1;
            }
            let digits = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if digits == i {
                return Err(err(start, "expected an integer exponent after '^'"));
            }
            exp = text[start..i]
                .parse()
                .map_err(|_| err(start, "exponent out of range"))?;
        }
        if i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'R' && bytes[i] != b'L' {
            return Err(err(i, "unexpected character after token"));
        }
        word.push(Token { letter, exp });
    }
    MappingClass::from_tokens(word)
}

/// Nielsen–Thurston type of a mapping class.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum NTClass {
    FiniteOrder {
        order: u32,
    },
    Reducible {
        invariant: CurveClass,
    },
    PseudoAnosov {
        dilatation: Scalar,
        mu_s: MeasuredLamination,
        mu_u: MeasuredLamination,
    },
}

impl NTClass {
    pub fn tag(&self) -> &'static str {
        match self {
            NTClass::FiniteOrder { .. } => "finite-order",
            NTClass::Reducible { .. } => "reducible",
            NTClass::PseudoAnosov { .. } => "pseudo-Anosov",
        }
    }
}

/// Trichotomy by trace: elliptic, parabolic, hyperbolic.
pub fn classify(phi: &MappingClass) -> NTClass {
    let m = phi.matrix();
    let t = m.trace();
    if m.is_plus_minus_identity() || t.abs() < 2 {
        let order = m.finite_order().expect("elliptic elements of SL(2,Z) have order ≤ 6");
        return NTClass::FiniteOrder { order };
    }
    if t.abs() == 2 {
        let s = t.signum();
        let (p, q, r, d) = (m.a - s, m.b, m.c, m.d - s);
        let dir = if p != 0 || q != 0 { (q, -p) } else { (d, -r) };
        let invariant = CurveClass::from_direction(dir.0 as i64, dir.1 as i64)
            .expect("parabolic matrices fix a primitive direction");
        return NTClass::Reducible { invariant };
    }
    let (dilatation, mu_s, mu_u) = pseudo_anosov_data(m).expect("hyperbolic matrix");
    NTClass::PseudoAnosov {
        dilatation,
        mu_s,
        mu_u,
    }
}

/// `(|t| + sqrt(t² - 4)) / 2` and the contracting/expanding eigendirections.
fn pseudo_anosov_data(m: &IntMatrix) -> Result<(Scalar, MeasuredLamination, MeasuredLamination)> {
    let t = m.trace();
    let disc = Scalar::big(BigInt::from(t * t - 4));
    let lambda = (Scalar::big(BigInt::from(t.abs())) + disc.sqrt()?) * Scalar::ratio(1, 2);
    let sigma = Scalar::int(t.signum() as i64);
    let eig_u = &sigma * &lambda;
    let eig_s = &sigma * &lambda.recip()?;
    let two = Scalar::int(2);
    let q = Scalar::big(BigInt::from(m.b));
    let p = Scalar::big(BigInt::from(m.a));
    // (q, e - p) solves the first row of (M - e) v = 0; q ≠ 0 for hyperbolic M.
    let dir = |e: &Scalar| MeasuredLamination::from_vector(&two * &q, &two * &(e - &p));
    Ok((lambda.clone(), dir(&eig_s), dir(&eig_u)))
}

/// Exact dilatation of a pseudo-Anosov class.
pub fn dilatation(phi: &MappingClass) -> Result<Scalar> {
    match classify(phi) {
        NTClass::PseudoAnosov { dilatation, .. } => Ok(dilatation),
        other => Err(Error::domain(format!(
            "{phi:?} is {} and has no dilatation",
            other.tag()
        ))),
    }
}

/// Canonical conjugacy representative `±R^{a1} L^{b1} … R^{ak} L^{bk}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RLForm {
    sign: i8,
    /// `(a_i, b_i)` exponent pairs, all ≥ 1, in the canonical rotation.
    blocks: Vec<(u32, u32)>,
}

impl RLForm {
    /// Builds the form from a cyclic positive word containing both letters.
    pub fn from_letters(sign: i8, letters: &[Letter]) -> Result<RLForm> {
        if !letters.contains(&Letter::R) || !letters.contains(&Letter::L) {
            return Err(Error::domain("an RL form needs both letters"));
        }
        // Rotate so the word starts with R and ends with L.
        let start = (0..letters.len())
            .find(|&i| letters[i] == Letter::R && letters[(i + letters.len() - 1) % letters.len()] == Letter::L)
            .expect("a cyclic word with both letters has an L→R boundary");
        let rotated: Vec<Letter> = letters[start..].iter().chain(&letters[..start]).copied().collect();
        let mut blocks = Vec::new();
        let mut i = 0;
        while i < rotated.len() {
            let mut a = 0;
            while i < rotated.len() && rotated[i] == Letter::R {
                a += 1;
                i += 1;
            }
            let mut b = 0;
            while i < rotated.len() && rotated[i] == Letter::L {
                b += 1;
                i += 1;
            }
            blocks.push((a, b));
        }
        // Canonical rotation: lexicographically least block sequence.
        let k = blocks.len();
        let best = (0..k)
            .min_by(|&x, &y| {
                let rx = blocks[x..].iter().chain(&blocks[..x]);
                let ry = blocks[y..].iter().chain(&blocks[..y]);
                rx.cmp(ry)
            })
            .unwrap_or(0);
        let blocks = blocks[best..].iter().chain(&blocks[..best]).copied().collect();
        Ok(RLForm { sign, blocks })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    /// Letters of the cyclic word, starting with `R`.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for &(a, b) in &self.blocks {
            out.extend(std::iter::repeat_n(Letter::R, a as usize));
            out.extend(std::iter::repeat_n(Letter::L, b as usize));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|&(a, b)| (a + b) as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The positive word as a mapping class (sign not included).
    pub fn to_mapping_class(&self) -> MappingClass {
        let mut word = Vec::new();
        for &(a, b) in &self.blocks {
            word.push(Token {
                letter: Letter::R,
                exp: a as i64,
            });
            word.push(Token {
                letter: Letter::L,
                exp: b as i64,
            });
        }
        MappingClass::from_tokens(word).expect("RL forms of representable classes fit")
    }

    /// `sign · matrix(word)`.
    pub fn matrix(&self) -> IntMatrix {
        let m = *self.to_mapping_class().matrix();
        if self.sign < 0 {
            m.neg()
        } else {
            m
        }
    }

    /// Word with unit exponents omitted, e.g. `R^4 L` (no sign prefix).
    pub fn word_string(&self) -> String {
        self.to_mapping_class().to_string()
    }

    /// True if `other` is a cyclic rotation of the same word with the same sign.
    pub fn is_rotation_of(&self, other: &RLForm) -> bool {
        if self.sign != other.sign || self.len() != other.len() {
            return false;
        }
        let a = self.letters();
        let b = other.letters();
        (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
    }
}

impl fmt::Display for RLForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", self.word_string())
    }
}

/// Conjugacy normal form of a pseudo-Anosov class.
///
/// The sign is chosen to make the trace positive; the matrix is then
/// conjugated into the nonnegative cone using continued-fraction convergents
/// of its expanding eigendirection, and `R`/`L` factors are peeled greedily.
pub fn canonical_rl_form(phi: &MappingClass) -> Result<RLForm> {
    let m = *phi.matrix();
    let t = m.trace();
    if t.abs() <= 2 {
        return Err(Error::domain(format!("{phi} is not pseudo-Anosov (trace {t})")));
    }
    let sign: i8 = if t > 0 { 1 } else { -1 };
    let m = if sign < 0 { m.neg() } else { m };
    let positive = conjugate_into_positive_cone(&m)?;
    let letters = peel_positive(&positive)?;
    RLForm::from_letters(sign, &letters)
}

fn conjugate_into_positive_cone(m: &IntMatrix) -> Result<IntMatrix> {
    let is_positive = |n: &IntMatrix| n.a > 0 && n.b > 0 && n.c > 0 && n.d > 0;
    if is_positive(m) {
        return Ok(*m);
    }
    let (_, _, mu_u) = pseudo_anosov_data(m)?;
    let [x, y] = mu_u.vector()?.clone();
    // Slope x/y of the attracting fixed point of v ↦ M v.
    let mut value = if y.is_zero() {
        return Err(Error::domain("expanding direction is rational"));
    } else {
        x.checked_div(&y)?
    };
    let swap = IntMatrix::new(0, -1, 1, 0);
    let (mut h_prev, mut h) = (BigInt::from(0), BigInt::from(1));
    let (mut k_prev, mut k) = (BigInt::from(1), BigInt::from(0));
    for _ in 0..500 {
        let a = value.floor()?;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let to_i = |v: &BigInt| v.to_i128().ok_or(Error::Overflow("convergent"));
        let mut x_mat = IntMatrix::new(to_i(&h)?, to_i(&h_prev)?, to_i(&k)?, to_i(&k_prev)?);
        if x_mat.det() == -1 {
            x_mat = IntMatrix::new(x_mat.b, x_mat.a, x_mat.d, x_mat.c);
        }
        for cand in [x_mat, x_mat.checked_mul(&swap)?] {
            let n = cand.inverse().checked_mul(m)?.checked_mul(&cand)?;
            if is_positive(&n) {
                return Ok(n);
            }
        }
        let frac = &value - &Scalar::big(a);
        value = frac.recip()?;
    }
    Err(Error::domain("failed to conjugate into the positive cone"))
}

fn peel_positive(m: &IntMatrix) -> Result<Vec<Letter>> {
    let mut n = *m;
    let mut letters = Vec::new();
    while !n.is_identity() {
        if n.a >= n.c && n.b >= n.d {
            n = IntMatrix::new(n.a - n.c, n.b - n.d, n.c, n.d);
            letters.push(Letter::R);
        } else if n.c >= n.a && n.d >= n.b {
            n = IntMatrix::new(n.a, n.b, n.c - n.a, n.d - n.b);
            letters.push(Letter::L);
        } else {
            return Err(Error::domain(format!("{m} is not a positive RL product")));
        }
    }
    Ok(letters)
}

/// JSON report for a mapping class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub word: String,
    pub matrix: [[i128; 2]; 2],
    pub trace: i128,
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dilatation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dilatation_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_s: Option<MeasuredLamination>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_u: Option<MeasuredLamination>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rl_form: Option<String>,
}

pub fn class_report(phi: &MappingClass) -> ClassReport {
    let class = classify(phi);
    let mut report = ClassReport {
        word: phi.to_string(),
        matrix: phi.matrix().entries(),
        trace: phi.trace(),
        class: class.tag().to_string(),
        order: None,
        invariant: None,
        dilatation: None,
        dilatation_value: None,
        mu_s: None,
        mu_u: None,
        rl_form: None,
    };
    match class {
        NTClass::FiniteOrder { order } => report.order = Some(order),
        NTClass::Reducible { invariant } => report.invariant = Some([invariant.a(), invariant.b()]),
        NTClass::PseudoAnosov {
            dilatation,
            mu_s,
            mu_u,
        } => {
            report.dilatation_value = Some(dilatation.to_f64());
            report.dilatation = Some(dilatation.to_string());
            report.mu_s = Some(mu_s);
            report.mu_u = Some(mu_u);
            report.rl_form = canonical_rl_form(phi).ok().map(|f| f.to_string());
        }
    }
    report
}
