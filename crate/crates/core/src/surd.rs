//! Exact arithmetic in the real field Q(sqrt2)(s) with s^2 = 2 + 2*sqrt2.
//!
//! The octagon group generators live in this field: every generator entry is
//! `p + q*sqrt2 + (r + t*sqrt2)*s`, so products of generators stay exact and
//! relator identities can be checked without tolerances.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = Ratio<i128>;

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Element of Q(sqrt2): `a + b*sqrt2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Q2 {
    pub a: Rat,
    pub b: Rat,
}

impl Q2 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Q2 { a, b }
    }

    pub fn from_ints(a: i128, b: i128) -> Self {
        Q2 {
            a: Ratio::from_integer(a),
            b: Ratio::from_integer(b),
        }
    }

    pub fn zero() -> Self {
        Q2::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Q2::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(self.a) + rat_to_f64(self.b) * SQRT2
    }

    /// Galois conjugate a - b*sqrt2.
    pub fn conj(&self) -> Self {
        Q2 {
            a: self.a,
            b: -self.b,
        }
    }

    /// Field norm a^2 - 2 b^2 (rational).
    pub fn norm(&self) -> Rat {
        self.a * self.a - Ratio::from_integer(2) * self.b * self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Q2 {
            a: c.a / n,
            b: c.b / n,
        })
    }

    /// Sign of the real number a + b*sqrt2, computed exactly.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        // a + b*sqrt2 > 0  <=>  (a>0 and a^2 > 2b^2 when b<0) etc.
        let a = self.a;
        let b = self.b;
        if a >= Rat::zero() && b >= Rat::zero() {
            return 1;
        }
        if a <= Rat::zero() && b <= Rat::zero() {
            return -1;
        }
        // signs differ: compare a^2 vs 2 b^2
        let lhs = a * a;
        let rhs = Ratio::from_integer(2) * b * b;
        let big_a = lhs > rhs;
        if a.is_positive() {
            if big_a {
                1
            } else {
                -1
            }
        } else if big_a {
            -1
        } else {
            1
        }
    }
}

fn rat_to_f64(r: Rat) -> f64 {
    (*r.numer() as f64) / (*r.denom() as f64)
}

impl Add for Q2 {
    type Output = Q2;
    fn add(self, o: Q2) -> Q2 {
        Q2 {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for Q2 {
    type Output = Q2;
    fn sub(self, o: Q2) -> Q2 {
        Q2 {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Mul for Q2 {
    type Output = Q2;
    fn mul(self, o: Q2) -> Q2 {
        // (a1 + b1 r)(a2 + b2 r) = a1 a2 + 2 b1 b2 + (a1 b2 + a2 b1) r
        Q2 {
            a: self.a * o.a + Ratio::from_integer(2) * self.b * o.b,
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl Neg for Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl fmt::Display for Q2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt2", self.a, self.b)
    }
}

/// Element of Q(sqrt2)[s] with s^2 = 2 + 2*sqrt2: stored as `x + y*s`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Surd {
    pub x: Q2,
    pub y: Q2,
}

impl Surd {
    pub fn new(x: Q2, y: Q2) -> Self {
        Surd { x, y }
    }

    pub fn from_q2(x: Q2) -> Self {
        Surd { x, y: Q2::zero() }
    }

    pub fn from_ints(a: i128, b: i128, c: i128, d: i128) -> Self {
        Surd {
            x: Q2::from_ints(a, b),
            y: Q2::from_ints(c, d),
        }
    }

    pub fn zero() -> Self {
        Surd::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Surd::from_ints(1, 0, 0, 0)
    }

    /// The generator s = sqrt(2 + 2*sqrt2).
    pub fn s() -> Self {
        Surd::from_ints(0, 0, 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let s = (2.0 + 2.0 * SQRT2).sqrt();
        self.x.to_f64() + self.y.to_f64() * s
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        Surd {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        Surd {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        // (x1 + y1 s)(x2 + y2 s) = x1 x2 + y1 y2 s^2 + (x1 y2 + y1 x2) s,
        // s^2 = 2 + 2 sqrt2.
        let s2 = Q2::from_ints(2, 2);
        Surd {
            x: self.x * o.x + self.y * o.y * s2,
            y: self.x * o.y + self.y * o.x,
        }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*s", self.x, self.y)
    }
}

/// 2x2 matrix over the surd field, used for exact octagon-group arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SurdMatrix {
    pub m: [[Surd; 2]; 2],
}

impl SurdMatrix {
    pub fn new(a: Surd, b: Surd, c: Surd, d: Surd) -> Self {
        SurdMatrix { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        SurdMatrix::new(Surd::one(), Surd::zero(), Surd::zero(), Surd::one())
    }

    pub fn det(&self) -> Surd {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Surd {
        self.m[0][0] + self.m[1][1]
    }

    /// Inverse assuming det = 1.
    pub fn inv_unimodular(&self) -> Self {
        SurdMatrix::new(
            self.m[1][1],
            -self.m[0][1],
            -self.m[1][0],
            self.m[0][0],
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == SurdMatrix::identity()
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.is_identity() || (-*self).is_identity()
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [
            [self.m[0][0].to_f64(), self.m[0][1].to_f64()],
            [self.m[1][0].to_f64(), self.m[1][1].to_f64()],
        ]
    }

    /// Canonical representative of {M, -M}: first nonzero entry positive.
    pub fn psl_canonical(&self) -> Self {
        for i in 0..2 {
            for j in 0..2 {
                let e = self.m[i][j];
                if !e.is_zero() {
                    // exact sign of x + y*s: s > 0, decide via float guard then
                    // exact fallback on the quartic resolvent
                    let sign = surd_signum(&e);
                    return if sign < 0 { -*self } else { *self };
                }
            }
        }
        *self
    }
}

/// Exact sign of x + y*s (s = sqrt(2+2*sqrt2) > 0).
pub fn surd_signum(v: &Surd) -> i32 {
    if v.is_zero() {
        return 0;
    }
    let sx = v.x.signum();
    let sy = v.y.signum();
    if sy == 0 {
        return sx;
    }
    if sx == 0 {
        return sy;
    }
    if sx == sy {
        return sx;
    }
    // x and y*s have opposite signs: compare x^2 vs y^2 * s^2 in Q(sqrt2)
    let s2 = Q2::from_ints(2, 2);
    let lhs = v.x * v.x;
    let rhs = v.y * v.y * s2;
    let diff = lhs - rhs;
    let c = diff.signum();
    if c == 0 {
        // |x| = |y| s with opposite signs => value is zero, handled above
        return 0;
    }
    if c > 0 {
        sx
    } else {
        sy
    }
}

impl Mul for SurdMatrix {
    type Output = SurdMatrix;
    fn mul(self, o: SurdMatrix) -> SurdMatrix {
        let mut r = [[Surd::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] =
                    self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        SurdMatrix { m: r }
    }
}

impl Neg for SurdMatrix {
    type Output = SurdMatrix;
    fn neg(self) -> SurdMatrix {
        SurdMatrix::new(
            -self.m[0][0],
            -self.m[0][1],
            -self.m[1][0],
            -self.m[1][1],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q2_arithmetic() {
        let r = Q2::from_ints(1, 1); // 1 + sqrt2
        let p = r * r; // 3 + 2 sqrt2
        assert_eq!(p, Q2::from_ints(3, 2));
        assert!((r.to_f64() - (1.0 + SQRT2)).abs() < 1e-15);
        assert_eq!(r.inv().unwrap() * r, Q2::one());
    }

    #[test]
    fn surd_squares() {
        let s = Surd::s();
        assert_eq!(s * s, Surd::from_ints(2, 2, 0, 0));
        let v = Surd::from_ints(1, 1, 1, 0); // (1+sqrt2) + s
        let f = v.to_f64();
        let expect = 1.0 + SQRT2 + (2.0 + 2.0 * SQRT2).sqrt();
        assert!((f - expect).abs() < 1e-14);
    }

    #[test]
    fn surd_sign() {
        // s ~ 2.197, sqrt2 ~ 1.414: s - 2 > 0, s - 3 < 0
        let a = Surd::from_ints(-2, 0, 1, 0);
        assert_eq!(surd_signum(&a), 1);
        let b = Surd::from_ints(-3, 0, 1, 0);
        assert_eq!(surd_signum(&b), -1);
        let c = Surd::from_ints(0, 0, 0, 0);
        assert_eq!(surd_signum(&c), 0);
    }

    #[test]
    fn matrix_inverse() {
        // a unimodular matrix: [[1+sqrt2, s],[s, 1+sqrt2]] has det (1+sqrt2)^2 - s^2 = 3+2sqrt2-2-2sqrt2 = 1
        let t = SurdMatrix::new(
            Surd::from_ints(1, 1, 0, 0),
            Surd::s(),
            Surd::s(),
            Surd::from_ints(1, 1, 0, 0),
        );
        assert_eq!(t.det(), Surd::one());
        assert!(t.inv_unimodular().mul(t).is_identity());
    }
}
