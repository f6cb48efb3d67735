//! Exact arithmetic and sign predicates.
//!
//! Every geometric decision in this crate reduces to the sign of a rational
//! expression evaluated here. Coordinates are arbitrary-precision rationals,
//! so there is no rounding and no epsilon anywhere: a triple is collinear
//! exactly when its determinant is zero, a point is on a circle exactly when
//! the in-circle determinant is zero.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar. Always kept in canonical form (reduced fraction,
/// positive denominator), so equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// Exact fraction `numer/denom`. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Scalar(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Sign as -1 / 0 / +1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Closest f64. Display and plotting only; never fed back into predicates.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact square root if the value is a perfect rational square.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        let n = self.0.numer().sqrt();
        let d = self.0.denom().sqrt();
        if &(&n * &n) == self.0.numer() && &(&d * &d) == self.0.denom() {
            Some(Scalar(BigRational::new(n, d)))
        } else {
            None
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Failure to interpret a token as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a rational number: {token:?}")]
pub struct ScalarParseError {
    pub token: String,
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Accepts `int`, `int/int`, and decimal literals. Decimals are exact:
    /// d digits after the point become a power-of-ten denominator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarParseError {
            token: s.to_string(),
        };
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        if body.is_empty() {
            return Err(err());
        }
        let digits = |t: &str| -> Result<BigInt, ScalarParseError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                Err(err())
            } else {
                BigInt::from_str(t).map_err(|_| err())
            }
        };
        let value = if let Some((n, d)) = body.split_once('/') {
            let denom = digits(d)?;
            if denom.is_zero() {
                return Err(err());
            }
            BigRational::new(digits(n)?, denom)
        } else if let Some((whole, frac)) = body.split_once('.') {
            // "1.25" -> 125/100; allow "7." and ".5"
            if whole.is_empty() && frac.is_empty() {
                return Err(err());
            }
            let w = if whole.is_empty() {
                BigInt::zero()
            } else {
                digits(whole)?
            };
            let f = if frac.is_empty() {
                BigInt::zero()
            } else {
                digits(frac)?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            BigRational::new(w * &scale + f, scale)
        } else {
            BigRational::from_integer(digits(body)?)
        };
        Ok(Scalar(if sign < 0 { -value } else { value }))
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl<'a> $imp<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $imp<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $imp<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// A point of the input set, with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

/// Turn direction of an ordered point triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Position of a query point relative to a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CirclePosition {
    Inside,
    On,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("triple is collinear, no circle through it")]
    CollinearTriple,
    #[error("coincident pair, pencil undefined")]
    CoincidentPair,
}

/// 2x2 determinant of (b - a, c - a). Positive means counter-clockwise.
pub fn orientation_det(a: &Point, b: &Point, c: &Point) -> Scalar {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    match orientation_det(a, b, c).signum() {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

fn det3(m: [[Scalar; 3]; 3]) -> Scalar {
    let [[a, b, c], [d, e, f], [g, h, i]] = m;
    &a * (&e * &i - &f * &h) - &b * (&d * &i - &f * &g) + &c * (&d * &h - &e * &g)
}

/// Position of `q` relative to the circle through `a`, `b`, `c`.
///
/// The raw in-circle determinant sign is multiplied by the orientation sign
/// of the triple, so the answer does not depend on the order of `a,b,c`.
pub fn in_circle(a: &Point, b: &Point, c: &Point, q: &Point) -> Result<CirclePosition, KernelError> {
    let orient = orientation_det(a, b, c).signum();
    if orient == 0 {
        return Err(KernelError::CollinearTriple);
    }
    let row = |p: &Point| -> [Scalar; 3] {
        let dx = &p.x - &q.x;
        let dy = &p.y - &q.y;
        let sq = &dx * &dx + &dy * &dy;
        [dx, dy, sq]
    };
    let det = det3([row(a), row(b), row(c)]);
    Ok(match det.signum() * orient {
        1 => CirclePosition::Inside,
        -1 => CirclePosition::Outside,
        _ => CirclePosition::On,
    })
}

/// Circumcenter of a non-degenerate triple, from the 2x2 linear system
/// `2(b-a)·o = |b|^2-|a|^2`, `2(c-a)·o = |c|^2-|a|^2`.
pub fn circumcenter(a: &Point, b: &Point, c: &Point) -> Result<Point, KernelError> {
    let det = orientation_det(a, b, c);
    if det.is_zero() {
        return Err(KernelError::CollinearTriple);
    }
    let two = Scalar::from_int(2);
    let sq = |p: &Point| &p.x * &p.x + &p.y * &p.y;
    let (r1x, r1y, k1) = (&two * (&b.x - &a.x), &two * (&b.y - &a.y), sq(b) - sq(a));
    let (r2x, r2y, k2) = (&two * (&c.x - &a.x), &two * (&c.y - &a.y), sq(c) - sq(a));
    // Cramer's rule; the system determinant is 4 * orientation_det.
    let d = &r1x * &r2y - &r1y * &r2x;
    let x = (&k1 * &r2y - &r1y * &k2) / &d;
    let y = (&r1x * &k2 - &k1 * &r2x) / &d;
    Ok(Point::new(x, y))
}

pub fn squared_distance(a: &Point, b: &Point) -> Scalar {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

pub fn midpoint(a: &Point, b: &Point) -> Point {
    let two = Scalar::from_int(2);
    Point::new((&a.x + &b.x) / &two, (&a.y + &b.y) / &two)
}

/// Parameter of the circle through `a`, `b`, `p` in the pencil of circles
/// through `a` and `b`: the circumcenter equals `M + s*R` where `M` is the
/// midpoint of `ab` and `R` is `b - a` rotated by +90 degrees.
pub fn circumcenter_param(a: &Point, b: &Point, p: &Point) -> Result<Scalar, KernelError> {
    if a == b {
        return Err(KernelError::CoincidentPair);
    }
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let m = midpoint(a, b);
    let ux = &m.x - &p.x;
    let uy = &m.y - &p.y;
    // R = (-dy, dx). u·R vanishes exactly when p lies on line ab.
    let u_dot_r = &uy * &dx - &ux * &dy;
    if u_dot_r.is_zero() {
        return Err(KernelError::CollinearTriple);
    }
    let d_sq = &dx * &dx + &dy * &dy;
    let u_sq = &ux * &ux + &uy * &uy;
    let four = Scalar::from_int(4);
    let two = Scalar::from_int(2);
    Ok((&d_sq / &four - u_sq) / (two * u_dot_r))
}

/// Center of the pencil circle through `a` and `b` at parameter `s`.
pub fn pencil_center(a: &Point, b: &Point, s: &Scalar) -> Point {
    let m = midpoint(a, b);
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    Point::new(&m.x - s * &dy, &m.y + s * &dx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!("0.5".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        assert_eq!("1/3".parse::<Scalar>().unwrap(), Scalar::ratio(1, 3));
        assert_eq!("-2.25".parse::<Scalar>().unwrap(), Scalar::ratio(-9, 4));
        assert_eq!("-7".parse::<Scalar>().unwrap(), Scalar::from_int(-7));
        assert_eq!("+3/6".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        assert_eq!(".5".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        for bad in ["", "-", "1/0", "a", "1.2.3", "1/ 2", "0x4", "1e3"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn scalar_display_reduced() {
        assert_eq!(Scalar::ratio(2, 4).to_string(), "1/2");
        assert_eq!(Scalar::ratio(-4, 2).to_string(), "-2");
        assert_eq!(Scalar::ratio(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn orientation_basics() {
        assert_eq!(
            orientation(&pt(0, 0), &pt(1, 0), &pt(0, 1)),
            Orientation::CounterClockwise
        );
        assert_eq!(
            orientation(&pt(0, 0), &pt(1, 1), &pt(2, 2)),
            Orientation::Collinear
        );
        assert_eq!(
            orientation(&pt(0, 0), &pt(0, 1), &pt(1, 0)),
            Orientation::Clockwise
        );
    }

    #[test]
    fn in_circle_basics() {
        let (a, b, c) = (pt(0, 0), pt(2, 0), pt(0, 2));
        assert_eq!(in_circle(&a, &b, &c, &pt(1, 1)), Ok(CirclePosition::Inside));
        assert_eq!(in_circle(&a, &b, &c, &pt(2, 2)), Ok(CirclePosition::On));
        assert_eq!(
            in_circle(&a, &b, &c, &pt(3, 3)),
            Ok(CirclePosition::Outside)
        );
        // Clockwise triple must give the same answers.
        assert_eq!(in_circle(&c, &b, &a, &pt(1, 1)), Ok(CirclePosition::Inside));
        assert_eq!(
            in_circle(&a, &b, &pt(1, 1), &pt(1, 1)),
            Ok(CirclePosition::On)
        );
        assert_eq!(
            in_circle(&a, &b, &pt(4, 0), &pt(1, 1)),
            Err(KernelError::CollinearTriple)
        );
    }

    #[test]
    fn circumcenter_matches_known_values() {
        let o = circumcenter(&pt(0, 0), &pt(2, 0), &pt(0, 2)).unwrap();
        assert_eq!(o, pt(1, 1));
        assert_eq!(
            circumcenter(&pt(0, 0), &pt(1, 1), &pt(2, 2)),
            Err(KernelError::CollinearTriple)
        );
    }

    #[test]
    fn circumcenter_param_known_values() {
        let s = circumcenter_param(&pt(-1, 0), &pt(1, 0), &pt(0, 1)).unwrap();
        assert_eq!(s, Scalar::zero());

        let s = circumcenter_param(&pt(0, 0), &pt(2, 0), &pt(0, 2)).unwrap();
        assert_eq!(s, Scalar::ratio(1, 2));
        assert_eq!(pencil_center(&pt(0, 0), &pt(2, 0), &s), pt(1, 1));

        assert_eq!(
            circumcenter_param(&pt(0, 0), &pt(0, 0), &pt(1, 2)),
            Err(KernelError::CoincidentPair)
        );
        assert_eq!(
            circumcenter_param(&pt(0, 0), &pt(2, 0), &pt(5, 0)),
            Err(KernelError::CollinearTriple)
        );
    }

    #[test]
    fn circumcenter_param_agrees_with_linear_solve() {
        // Independent route: full circumcenter solve, then express it in the
        // pencil frame of the pair.
        let (a, b, p) = (pt(0, 0), pt(4, 0), pt(1, 1));
        let s = circumcenter_param(&a, &b, &p).unwrap();
        let center = pencil_center(&a, &b, &s);
        assert_eq!(center, circumcenter(&a, &b, &p).unwrap());
        assert_eq!(squared_distance(&center, &a), squared_distance(&center, &p));
        assert_eq!(squared_distance(&center, &a), squared_distance(&center, &b));
    }

    #[test]
    fn sqrt_exact_only_for_squares() {
        assert_eq!(
            Scalar::ratio(9, 4).sqrt_exact(),
            Some(Scalar::ratio(3, 2))
        );
        assert_eq!(Scalar::from_int(2).sqrt_exact(), None);
        assert_eq!(Scalar::from_int(-4).sqrt_exact(), None);
    }
}
