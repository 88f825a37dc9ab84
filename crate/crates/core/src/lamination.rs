//! Measured laminations on the once-punctured torus.
//!
//! A measured lamination is a nonzero vector `(a, b)` modulo sign; a
//! weighted simple closed curve `w·(a,b)` embeds as the vector `w·(a, b)`.
//! The geometric intersection number is `|det|`, and the space of projective
//! classes is the circle of extended slopes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::scalar::Scalar;

/// A primitive integer pair `(a, b)` naming a simple closed curve, normalized
/// so that the first nonzero entry is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    a: i64,
    b: i64,
}

impl CurveClass {
    pub fn new(a: i64, b: i64) -> Result<CurveClass> {
        if a == 0 && b == 0 {
            return Err(Error::domain("(0,0) is not a curve class"));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::domain(format!("({a},{b}) is not primitive")));
        }
        Ok(if a < 0 || (a == 0 && b < 0) {
            CurveClass { a: -a, b: -b }
        } else {
            CurveClass { a, b }
        })
    }

    /// Primitive class in the direction of an arbitrary nonzero pair.
    pub fn from_direction(a: i64, b: i64) -> Result<CurveClass> {
        let g = a.gcd(&b);
        if g == 0 {
            return Err(Error::domain("zero direction"));
        }
        CurveClass::new(a / g, b / g)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Geometric intersection number of two curve classes.
    pub fn intersection(&self, other: &CurveClass) -> u64 {
        (self.a as i128 * other.b as i128 - self.b as i128 * other.a as i128).unsigned_abs() as u64
    }

    pub fn to_lamination(&self) -> MeasuredLamination {
        MeasuredLamination::from_vector(Scalar::int(self.a), Scalar::int(self.b))
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Extended slope `b/a` of a projective class.
#[derive(Clone, Debug, PartialEq)]
pub enum Slope {
    Finite(Scalar),
    Infinity,
}

impl Slope {
    pub fn to_f64(&self) -> f64 {
        match self {
            Slope::Finite(s) => s.to_f64(),
            Slope::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(s) => write!(f, "{s}"),
            Slope::Infinity => write!(f, "inf"),
        }
    }
}

/// A measured lamination, stored as a vector modulo sign.
///
/// The representative is normalized so that its first nonzero entry is
/// positive; the empty lamination is the zero vector.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredLamination {
    v: Option<[Scalar; 2]>,
}

impl MeasuredLamination {
    pub fn empty() -> MeasuredLamination {
        MeasuredLamination { v: None }
    }

    pub fn from_vector(a: Scalar, b: Scalar) -> MeasuredLamination {
        let sa = a.signum();
        let sb = b.signum();
        if sa == 0 && sb == 0 {
            return MeasuredLamination::empty();
        }
        let v = if sa < 0 || (sa == 0 && sb < 0) {
            [-a, -b]
        } else {
            [a, b]
        };
        MeasuredLamination { v: Some(v) }
    }

    pub fn from_ints(a: i64, b: i64) -> MeasuredLamination {
        MeasuredLamination::from_vector(Scalar::int(a), Scalar::int(b))
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_none()
    }

    /// Sign-normalized representative, or an error for the empty lamination.
    pub fn vector(&self) -> Result<&[Scalar; 2]> {
        self.v
            .as_ref()
            .ok_or_else(|| Error::domain("empty lamination"))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        match &self.v {
            Some([a, b]) => [a.to_f64(), b.to_f64()],
            None => [0.0, 0.0],
        }
    }

    /// Multiplies the transverse measure by a scalar; negative factors are
    /// absorbed by the sign quotient.
    pub fn scale(&self, k: &Scalar) -> MeasuredLamination {
        match &self.v {
            Some([a, b]) => MeasuredLamination::from_vector(a * k, b * k),
            None => MeasuredLamination::empty(),
        }
    }

    /// Squared Euclidean norm of the representative.
    pub fn norm_sq(&self) -> Scalar {
        match &self.v {
            Some([a, b]) => a * a + b * b,
            None => Scalar::zero(),
        }
    }

    pub fn norm(&self) -> f64 {
        let [a, b] = self.to_f64();
        a.hypot(b)
    }

    /// True when the two laminations have the same projective class.
    pub fn is_proportional(&self, other: &MeasuredLamination) -> bool {
        match (&self.v, &other.v) {
            (Some(_), Some(_)) => intersection_number(self, other).is_zero(),
            _ => false,
        }
    }

    /// Distance in the sign quotient, `min(|u - v|², |u + v|²)`, exact.
    pub fn distance_sq(&self, other: &MeasuredLamination) -> Scalar {
        let zero = [Scalar::zero(), Scalar::zero()];
        let u = self.v.as_ref().unwrap_or(&zero);
        let w = other.v.as_ref().unwrap_or(&zero);
        let minus = sq(&(&u[0] - &w[0])) + sq(&(&u[1] - &w[1]));
        let plus = sq(&(&u[0] + &w[0])) + sq(&(&u[1] + &w[1]));
        match minus.cmp_value(&plus) {
            Some(std::cmp::Ordering::Greater) => plus,
            _ => minus,
        }
    }
}

fn sq(x: &Scalar) -> Scalar {
    x * x
}

impl fmt::Display for MeasuredLamination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.v {
            Some([a, b]) => write!(f, "({a}, {b})"),
            None => write!(f, "empty"),
        }
    }
}

/// Wire form `{"a": "...", "b": "...", "field": "rational"|"surd(d)"|"float"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminationJson {
    pub a: String,
    pub b: String,
    pub field: String,
}

impl MeasuredLamination {
    pub fn to_json(&self) -> LaminationJson {
        let zero = [Scalar::zero(), Scalar::zero()];
        let [a, b] = self.v.as_ref().unwrap_or(&zero);
        let field = match (a, b) {
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => "float".to_string(),
            (Scalar::Surd(s), _) | (_, Scalar::Surd(s)) => format!("surd({})", s.radicand()),
            _ => "rational".to_string(),
        };
        let fmt_entry = |x: &Scalar| match x {
            Scalar::Float(v) => format!("{v:?}"),
            other if field == "float" => format!("{:?}", other.to_f64()),
            other => other.to_string(),
        };
        LaminationJson {
            a: fmt_entry(a),
            b: fmt_entry(b),
            field,
        }
    }

    pub fn from_json(j: &LaminationJson) -> Result<MeasuredLamination> {
        let parse = |s: &str| -> Result<Scalar> {
            if j.field == "float" {
                s.parse::<f64>().map(Scalar::Float).map_err(|_| Error::Parse {
                    offset: 0,
                    message: format!("bad float {s:?}"),
                })
            } else {
                s.parse::<Scalar>()
            }
        };
        let a = parse(&j.a)?;
        let b = parse(&j.b)?;
        let expected = match j.field.as_str() {
            "rational" | "float" => true,
            f => f.starts_with("surd(") && f.ends_with(')'),
        };
        if !expected {
            return Err(Error::Parse {
                offset: 0,
                message: format!("unknown field {:?}", j.field),
            });
        }
        Ok(MeasuredLamination::from_vector(a, b))
    }
}

impl Serialize for MeasuredLamination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MeasuredLamination {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LaminationJson::deserialize(d)?;
        MeasuredLamination::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// `weight · (a, b)` modulo sign.
pub fn make_lamination(weight: &Scalar, c: CurveClass) -> Result<MeasuredLamination> {
    match weight.signum() {
        0 => Err(Error::domain("zero weight gives the empty lamination")),
        s if s < 0 => Err(Error::domain("weight must be positive")),
        _ => Ok(c.to_lamination().scale(weight)),
    }
}

/// `|det(v1, v2)|`; zero when either lamination is empty.
pub fn intersection_number(l1: &MeasuredLamination, l2: &MeasuredLamination) -> Scalar {
    match (&l1.v, &l2.v) {
        (Some([a, b]), Some([c, d])) => (a * d - b * c).abs(),
        _ => Scalar::zero(),
    }
}

/// Extended slope `b/a`, with `a = 0` mapped to infinity.
pub fn projective_class(l: &MeasuredLamination) -> Result<Slope> {
    let [a, b] = l.vector()?;
    if a.is_zero() {
        Ok(Slope::Infinity)
    } else {
        Ok(Slope::Finite(b.checked_div(a)?))
    }
}

/// `M · v` modulo sign for `det M = 1`.
pub fn act_on_lamination(m: &IntMatrix, l: &MeasuredLamination) -> Result<MeasuredLamination> {
    if m.det() != 1 {
        return Err(Error::domain(format!("matrix {m} has determinant {} (expected 1)", m.det())));
    }
    let Some([x, y]) = &l.v else {
        return Ok(MeasuredLamination::empty());
    };
    let e = |n: i128| Scalar::big(BigInt::from(n));
    let [[p, q], [r, s]] = m.entries();
    Ok(MeasuredLamination::from_vector(
        e(p) * x + e(q) * y,
        e(r) * x + e(s) * y,
    ))
}

/// The ideal triangulation whose three arcs have slopes (1,0), (0,1), (1,1).
///
/// Lifted to the plane, the arcs cut the unit square along its diagonal into
/// a lower triangle `[0, e1, e1+e2]` and an upper triangle `[0, e2, e1+e2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyTriangulation {
    arcs: [CurveClass; 3],
}

impl Default for FareyTriangulation {
    fn default() -> Self {
        FareyTriangulation {
            arcs: [
                CurveClass { a: 1, b: 0 },
                CurveClass { a: 0, b: 1 },
                CurveClass { a: 1, b: 1 },
            ],
        }
    }
}

/// Direction a normal arc turns around the corner it cuts off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    Left,
    Right,
}

impl FareyTriangulation {
    pub fn arcs(&self) -> &[CurveClass; 3] {
        &self.arcs
    }

    /// Transverse measure deposited on each arc: `(|b|, |a|, |a - b|)`.
    pub fn normal_coordinates(&self, mu: &MeasuredLamination) -> Result<[Scalar; 3]> {
        let [a, b] = mu.vector()?;
        Ok([b.abs(), a.abs(), (a - b).abs()])
    }

    /// Number of normal arcs cutting off each corner, per triangle.
    ///
    /// Entry `k` counts the arcs joining the two arcs other than arc `k`;
    /// both triangles carry the same counts.
    pub fn corner_counts(&self, mu: &MeasuredLamination) -> Result<[Scalar; 3]> {
        let n = self.normal_coordinates(mu)?;
        let half = Scalar::ratio(1, 2);
        let corner = |i: usize, j: usize, k: usize| (&n[i] + &n[j] - &n[k]) * &half;
        Ok([corner(1, 2, 0), corner(0, 2, 1), corner(0, 1, 2)])
    }

    /// Alternation number `a(λ_F, μ)`.
    ///
    /// A normal arc turns left or right according to whether it passes from
    /// arc `i` to arc `i - 1` or `i + 1` (mod 3). Along a closed normal curve
    /// the turn repeats exactly when the curve pivots twice in a row around the
    /// corner of smallest count, which happens `2·min` times out of the
    /// `n0 + n1 + n2 = 2·max` crossings. The number of switches is therefore
    /// `2·(max - min)`, i.e. twice the largest corner count, and the measure
    /// version is the same expression in the normal coordinates.
    pub fn alternation_number(&self, mu: &MeasuredLamination) -> Result<Scalar> {
        let counts = self.corner_counts(mu)?;
        let mut best = counts[0].clone();
        for c in &counts[1..] {
            if c.cmp_value(&best) == Some(std::cmp::Ordering::Greater) {
                best = c.clone();
            }
        }
        Ok(Scalar::int(2) * best)
    }

    /// Traces the normal curve of a primitive class through the two
    /// triangles and returns its cyclic turn sequence.
    ///
    /// Positions on each arc are indexed from the arc's starting lattice
    /// point; corner families are nested around their vertex.
    pub fn turn_sequence(&self, c: CurveClass) -> Vec<Turn> {
        let n = [
            c.b().unsigned_abs() as usize,
            c.a().unsigned_abs() as usize,
            (c.a() - c.b()).unsigned_abs() as usize,
        ];
        // Corner counts opposite each arc index.
        let cnt = |i: usize, j: usize, k: usize| (n[i] + n[j] - n[k]) / 2;
        let c0 = cnt(1, 2, 0);
        let c1 = cnt(0, 2, 1);
        let c2 = cnt(0, 1, 2);
        // Lower triangle: P=0, Q=e1, S=e1+e2; arcs E0: P→Q, E1: Q→S, E2: P→S.
        // Upper triangle: P=0, U=e2, S=e1+e2; arcs E1: P→U, E0: U→S, E2: P→S.
        let partner = |lower: bool, edge: usize, pos: usize| -> (usize, usize) {
            if lower {
                match edge {
                    0 if pos < c1 => (2, pos),
                    0 => (1, n[0] - 1 - pos),
                    1 if pos < c2 => (0, n[0] - 1 - pos),
                    1 => (2, n[2] - 1 - (n[1] - 1 - pos)),
                    _ if pos < c1 => (0, pos),
                    _ => (1, n[1] - 1 - (n[2] - 1 - pos)),
                }
            } else {
                match edge {
                    1 if pos < c0 => (2, pos),
                    1 => (0, n[1] - 1 - pos),
                    0 if pos < c2 => (1, n[1] - 1 - pos),
                    0 => (2, n[2] - 1 - (n[0] - 1 - pos)),
                    _ if pos < c0 => (1, pos),
                    _ => (0, n[0] - 1 - (n[2] - 1 - pos)),
                }
            }
        };
        let start_edge = (0..3).find(|&e| n[e] > 0).expect("closed curve crosses an arc");
        let mut turns = Vec::with_capacity(n.iter().sum());
        let (mut edge, mut pos, mut lower) = (start_edge, 0usize, true);
        loop {
            let (next_edge, next_pos) = partner(lower, edge, pos);
            turns.push(if next_edge == (edge + 2) % 3 {
                Turn::Left
            } else {
                Turn::Right
            });
            edge = next_edge;
            pos = next_pos;
            lower = !lower;
            if edge == start_edge && pos == 0 && lower {
                break;
            }
        }
        turns
    }

    /// Number of cyclic turn switches of the traced normal curve.
    pub fn traced_switches(&self, c: CurveClass) -> usize {
        let t = self.turn_sequence(c);
        (0..t.len()).filter(|&i| t[i] != t[(i + 1) % t.len()]).count()
    }
}

/// `alternation_number` against the fixed triangulation λ_F.
pub fn alternation_number(mu: &MeasuredLamination) -> Result<Scalar> {
    FareyTriangulation::default().alternation_number(mu)
}
