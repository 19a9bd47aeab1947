//! Vectors of Lorentz-Minkowski 3-space.
//!
//! The inner product has signature `(+, +, -)`: the third coordinate is the
//! time-like axis. This is fixed throughout the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default relative tolerance for null tests.
pub const NULL_TOL: f64 = 1e-10;

/// A point or vector of Lorentz-Minkowski 3-space.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LorentzVec {
    pub x1: f64,
    pub x2: f64,
    /// Time-like coordinate.
    pub x3: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    SpaceLike,
    TimeLike,
    LightLike,
}

impl LorentzVec {
    pub const ZERO: LorentzVec = LorentzVec::new(0.0, 0.0, 0.0);

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        LorentzVec { x1, x2, x3 }
    }

    /// Builds a vector, rejecting NaN and infinite components.
    pub fn checked(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let v = LorentzVec::new(x1, x2, x3);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("LorentzVec component"))
        }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        LorentzVec::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    /// `<a, b> = a1 b1 + a2 b2 - a3 b3`.
    pub fn inner(&self, other: &LorentzVec) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2 - self.x3 * other.x3
    }

    /// Squared Lorentz norm `<v, v>`.
    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    pub fn euclid_norm_sq(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn euclid_norm(&self) -> f64 {
        self.euclid_norm_sq().sqrt()
    }

    /// Largest absolute coordinate; the pointwise norm used for sup-norm
    /// distances between surfaces.
    pub fn max_abs(&self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }

    pub fn causal_character(&self, tol: f64) -> CausalCharacter {
        causal_character(*self, tol)
    }
}

/// Lorentz inner product of two vectors.
pub fn lorentz_inner(a: LorentzVec, b: LorentzVec) -> f64 {
    a.inner(&b)
}

/// Classifies `v` as space-, time- or light-like.
///
/// `v` is light-like when `|<v,v>| <= tol * max(1, |v|^2)` with `|v|` the
/// Euclidean norm, so the test is relative for large vectors.
pub fn causal_character(v: LorentzVec, tol: f64) -> CausalCharacter {
    let q = v.norm_sq();
    let threshold = tol * v.euclid_norm_sq().max(1.0);
    if q.abs() <= threshold {
        CausalCharacter::LightLike
    } else if q > threshold {
        CausalCharacter::SpaceLike
    } else {
        CausalCharacter::TimeLike
    }
}

impl Add for LorentzVec {
    type Output = LorentzVec;
    fn add(self, o: LorentzVec) -> LorentzVec {
        LorentzVec::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for LorentzVec {
    fn add_assign(&mut self, o: LorentzVec) {
        *self = *self + o;
    }
}

impl Sub for LorentzVec {
    type Output = LorentzVec;
    fn sub(self, o: LorentzVec) -> LorentzVec {
        LorentzVec::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Mul<f64> for LorentzVec {
    type Output = LorentzVec;
    fn mul(self, s: f64) -> LorentzVec {
        LorentzVec::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<LorentzVec> for f64 {
    type Output = LorentzVec;
    fn mul(self, v: LorentzVec) -> LorentzVec {
        v * self
    }
}

impl Neg for LorentzVec {
    type Output = LorentzVec;
    fn neg(self) -> LorentzVec {
        LorentzVec::new(-self.x1, -self.x2, -self.x3)
    }
}

impl fmt::Display for LorentzVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x1, self.x2, self.x3)
    }
}
