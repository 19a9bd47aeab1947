//! Truncated Taylor series in one real variable.
//!
//! A [`PowerSeries`] stores real coefficients `a_0..a_N` of
//! `sum a_k (t - center)^k`. Evaluating the same coefficients at a complex
//! argument is how analytic extension off the real axis is realised: no
//! resummation, just the Taylor polynomial at `z`. Every series carries a
//! trust radius; evaluation beyond it is an error so callers re-center
//! instead of silently extrapolating.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lorentz::LorentzVec;

/// Complex values are plain `num_complex` numbers.
pub type ComplexVal = Complex64;

pub const DEFAULT_ORDER: usize = 32;

/// Trust radius for expansions of transcendental functions.
pub const TRANSCENDENTAL_TRUST: f64 = 1.0;

/// Denominators with `|b_0|` at or below this are treated as singular.
pub const SINGULAR_DENOMINATOR_TOL: f64 = 1e-12;

/// Truncated power series about a real center.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    center: f64,
    coeffs: Vec<f64>,
    trust_radius: f64,
}

impl PowerSeries {
    /// Builds a series from explicit coefficients. An empty coefficient list
    /// is promoted to the zero series of order 0.
    pub fn new(center: f64, mut coeffs: Vec<f64>, trust_radius: f64) -> Result<Self> {
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        if !center.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("series coefficient"));
        }
        if trust_radius.is_nan() || trust_radius <= 0.0 {
            return Err(Error::NonFinite("trust radius must be positive"));
        }
        Ok(PowerSeries {
            center,
            coeffs,
            trust_radius,
        })
    }

    /// Polynomial series (infinite trust radius).
    pub fn polynomial(center: f64, coeffs: Vec<f64>) -> Result<Self> {
        PowerSeries::new(center, coeffs, f64::INFINITY)
    }

    pub fn constant(center: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        PowerSeries {
            center,
            coeffs,
            trust_radius: f64::INFINITY,
        }
    }

    pub fn zero(center: f64, order: usize) -> Self {
        PowerSeries::constant(center, 0.0, order)
    }

    /// The expansion variable `t` itself: `center + (t - center)`.
    pub fn variable(center: f64, order: usize) -> Self {
        let mut s = PowerSeries::constant(center, center, order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    /// `scale * prod (t - root)`, expanded about `center` by multiplying
    /// linear factors so that the constant term vanishes exactly when the
    /// center coincides with a root.
    pub fn from_roots(center: f64, roots: &[f64], scale: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = scale;
        for &root in roots {
            let shift = center - root;
            for k in (0..=order).rev() {
                let lower = if k > 0 { coeffs[k - 1] } else { 0.0 };
                coeffs[k] = coeffs[k] * shift + lower;
            }
        }
        PowerSeries {
            center,
            coeffs,
            trust_radius: f64::INFINITY,
        }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn trust_radius(&self) -> f64 {
        self.trust_radius
    }

    pub fn with_trust_radius(mut self, radius: f64) -> Self {
        self.trust_radius = radius;
        self
    }

    /// Coefficient `a_k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Value at the center.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `k`-th derivative at the center, `k! a_k`.
    pub fn derivative_value(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for j in 2..=k {
            f *= j as f64;
        }
        self.coeff(k) * f
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    fn check_radius(&self, distance: f64) -> Result<()> {
        if distance > self.trust_radius {
            Err(Error::OutOfTrustRadius {
                center: self.center,
                distance,
                radius: self.trust_radius,
            })
        } else {
            Ok(())
        }
    }

    /// Horner evaluation at a complex argument.
    pub fn eval_at(&self, z: ComplexVal) -> Result<ComplexVal> {
        let h = z - self.center;
        self.check_radius(h.norm())?;
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = acc * h + a;
        }
        Ok(acc)
    }

    /// Horner evaluation at a real argument.
    pub fn eval_real(&self, t: f64) -> Result<f64> {
        let h = t - self.center;
        self.check_radius(h.abs())?;
        Ok(self.coeffs.iter().rev().fold(0.0, |acc, &a| acc * h + a))
    }

    /// Term-wise derivative. The derivative of an order-0 series is the zero
    /// series of order 0.
    pub fn derivative(&self) -> PowerSeries {
        if self.order() == 0 {
            return PowerSeries::zero(self.center, 0).with_trust_radius(self.trust_radius);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| k as f64 * a)
            .collect();
        PowerSeries {
            center: self.center,
            coeffs,
            trust_radius: self.trust_radius,
        }
    }

    /// Term-wise antiderivative taking `value_at_center` at the center.
    /// The order grows by one.
    pub fn antiderivative(&self, value_at_center: f64) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(value_at_center);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, &a)| a / (k + 1) as f64));
        PowerSeries {
            center: self.center,
            coeffs,
            trust_radius: self.trust_radius,
        }
    }

    /// Drops coefficients above `order` (no-op when already shorter).
    pub fn truncate(mut self, order: usize) -> PowerSeries {
        self.coeffs.truncate(order + 1);
        self
    }

    fn same_center(&self, other: &PowerSeries) -> Result<()> {
        if self.center != other.center {
            Err(Error::CenterMismatch(self.center, other.center))
        } else {
            Ok(())
        }
    }

    fn zip_with(&self, other: &PowerSeries, f: impl Fn(f64, f64) -> f64) -> Result<PowerSeries> {
        self.same_center(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| f(self.coeffs[k], other.coeffs[k])).collect();
        Ok(PowerSeries {
            center: self.center,
            coeffs,
            trust_radius: self.trust_radius.min(other.trust_radius),
        })
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> PowerSeries {
        PowerSeries {
            center: self.center,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
            trust_radius: self.trust_radius,
        }
    }

    pub fn neg(&self) -> PowerSeries {
        self.scale(-1.0)
    }

    pub fn add_constant(&self, c: f64) -> PowerSeries {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.same_center(other)?;
        let n = self.order().min(other.order());
        let mut coeffs = vec![0.0; n + 1];
        for (i, &a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(PowerSeries {
            center: self.center,
            coeffs,
            trust_radius: self.trust_radius.min(other.trust_radius),
        })
    }

    /// Quotient `self / other` by the recursive coefficient formula.
    pub fn div(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.same_center(other)?;
        let b0 = other.coeffs[0];
        if b0.abs() <= SINGULAR_DENOMINATOR_TOL {
            return Err(Error::DivisionBySingularSeries(b0));
        }
        let n = self.order().min(other.order());
        let mut q = vec![0.0; n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        let trust = self.trust_radius.min(other.trust_radius);
        // A quotient of polynomials is not a polynomial.
        let trust = if trust.is_infinite() && other.order() > 0 && other.coeffs[1..].iter().any(|&c| c != 0.0) {
            TRANSCENDENTAL_TRUST
        } else {
            trust
        };
        Ok(PowerSeries {
            center: self.center,
            coeffs: q,
            trust_radius: trust,
        })
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut exp: u32) -> PowerSeries {
        let mut result = PowerSeries::constant(self.center, 1.0, self.order());
        result.trust_radius = self.trust_radius;
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base).expect("same center");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same center");
            }
        }
        result
    }

    /// Taylor shift to a new center.
    pub fn recenter(&self, new_center: f64) -> Result<PowerSeries> {
        let d = new_center - self.center;
        if d.abs() >= self.trust_radius {
            return Err(Error::OutOfTrustRadius {
                center: self.center,
                distance: d.abs(),
                radius: self.trust_radius,
            });
        }
        let mut b = self.coeffs.clone();
        let n = self.order();
        if d != 0.0 {
            for i in 0..n {
                for j in (i..n).rev() {
                    b[j] += d * b[j + 1];
                }
            }
        }
        Ok(PowerSeries {
            center: new_center,
            coeffs: b,
            trust_radius: self.trust_radius - d.abs(),
        })
    }

    /// Composes an outer expansion `sum c_k h^k` (about this series' own
    /// constant term) with `h = self - self.value()`.
    pub fn compose_outer(&self, outer: &[f64]) -> PowerSeries {
        let order = self.order();
        let mut h = self.clone();
        h.coeffs[0] = 0.0;
        let mut acc = PowerSeries::constant(self.center, 0.0, order);
        acc.trust_radius = self.trust_radius;
        for &c in outer.iter().rev() {
            acc = acc.mul(&h).expect("same center");
            acc.coeffs[0] += c;
        }
        acc
    }
}

/// Elementary functions with built-in Taylor generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elementary {
    Sin,
    Cos,
    Exp,
    Sinh,
    Cosh,
}

impl Elementary {
    pub fn name(self) -> &'static str {
        match self {
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Exp => "exp",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Elementary::Sin,
            "cos" => Elementary::Cos,
            "exp" => Elementary::Exp,
            "sinh" => Elementary::Sinh,
            "cosh" => Elementary::Cosh,
            _ => return None,
        })
    }

    pub fn apply(self, x: f64) -> f64 {
        match self {
            Elementary::Sin => x.sin(),
            Elementary::Cos => x.cos(),
            Elementary::Exp => x.exp(),
            Elementary::Sinh => x.sinh(),
            Elementary::Cosh => x.cosh(),
        }
    }

    /// Taylor coefficients `f^(k)(a) / k!` for `k = 0..=order`.
    pub fn taylor_coeffs(self, a: f64, order: usize) -> Vec<f64> {
        let cycle: Vec<f64> = match self {
            Elementary::Sin => vec![a.sin(), a.cos(), -a.sin(), -a.cos()],
            Elementary::Cos => vec![a.cos(), -a.sin(), -a.cos(), a.sin()],
            Elementary::Exp => vec![a.exp()],
            Elementary::Sinh => vec![a.sinh(), a.cosh()],
            Elementary::Cosh => vec![a.cosh(), a.sinh()],
        };
        let mut inv_fact = 1.0;
        (0..=order)
            .map(|k| {
                if k > 0 {
                    inv_fact /= k as f64;
                }
                cycle[k % cycle.len()] * inv_fact
            })
            .collect()
    }

    /// Expansion of the function itself about `center`.
    pub fn series(self, center: f64, order: usize) -> PowerSeries {
        PowerSeries {
            center,
            coeffs: self.taylor_coeffs(center, order),
            trust_radius: TRANSCENDENTAL_TRUST,
        }
    }

    /// `f(inner)`, re-expanding `f` about the inner constant term.
    pub fn compose(self, inner: &PowerSeries) -> PowerSeries {
        let outer = self.taylor_coeffs(inner.value(), inner.order());
        let mut out = inner.compose_outer(&outer);
        out.trust_radius = inner.trust_radius.min(TRANSCENDENTAL_TRUST);
        out
    }
}

/// Complex-valued function of a real variable stored as two real series.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    pub re: PowerSeries,
    pub im: PowerSeries,
}

impl ComplexSeries {
    pub fn new(re: PowerSeries, im: PowerSeries) -> Self {
        ComplexSeries { re, im }
    }

    pub fn real(re: PowerSeries) -> Self {
        let im = PowerSeries::zero(re.center(), re.order());
        ComplexSeries { re, im }
    }

    pub fn constant(center: f64, value: ComplexVal, order: usize) -> Self {
        ComplexSeries {
            re: PowerSeries::constant(center, value.re, order),
            im: PowerSeries::constant(center, value.im, order),
        }
    }

    pub fn center(&self) -> f64 {
        self.re.center()
    }

    /// `re(z) + i im(z)`, both parts analytically continued.
    pub fn eval_at(&self, z: ComplexVal) -> Result<ComplexVal> {
        Ok(self.re.eval_at(z)? + ComplexVal::i() * self.im.eval_at(z)?)
    }

    pub fn value(&self) -> ComplexVal {
        ComplexVal::new(self.re.value(), self.im.value())
    }

    pub fn add(&self, o: &ComplexSeries) -> Result<ComplexSeries> {
        Ok(ComplexSeries::new(self.re.add(&o.re)?, self.im.add(&o.im)?))
    }

    pub fn sub(&self, o: &ComplexSeries) -> Result<ComplexSeries> {
        Ok(ComplexSeries::new(self.re.sub(&o.re)?, self.im.sub(&o.im)?))
    }

    pub fn mul(&self, o: &ComplexSeries) -> Result<ComplexSeries> {
        let re = self.re.mul(&o.re)?.sub(&self.im.mul(&o.im)?)?;
        let im = self.re.mul(&o.im)?.add(&self.im.mul(&o.re)?)?;
        Ok(ComplexSeries::new(re, im))
    }

    pub fn scale(&self, s: ComplexVal) -> ComplexSeries {
        ComplexSeries::new(
            self.re.scale(s.re).sub(&self.im.scale(s.im)).expect("same center"),
            self.re.scale(s.im).add(&self.im.scale(s.re)).expect("same center"),
        )
    }

    pub fn add_constant(&self, c: ComplexVal) -> ComplexSeries {
        ComplexSeries::new(self.re.add_constant(c.re), self.im.add_constant(c.im))
    }

    pub fn antiderivative(&self, value_at_center: ComplexVal) -> ComplexSeries {
        ComplexSeries::new(
            self.re.antiderivative(value_at_center.re),
            self.im.antiderivative(value_at_center.im),
        )
    }
}

/// An R^3-valued analytic curve: three series sharing center and order.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticCurve3 {
    comps: [PowerSeries; 3],
}

impl AnalyticCurve3 {
    pub fn new(c1: PowerSeries, c2: PowerSeries, c3: PowerSeries) -> Result<Self> {
        if c1.center() != c2.center() {
            return Err(Error::CenterMismatch(c1.center(), c2.center()));
        }
        if c1.center() != c3.center() {
            return Err(Error::CenterMismatch(c1.center(), c3.center()));
        }
        let n = c1.order().min(c2.order()).min(c3.order());
        let trust = c1.trust_radius().min(c2.trust_radius()).min(c3.trust_radius());
        let fix = |s: PowerSeries| s.truncate(n).with_trust_radius(trust);
        Ok(AnalyticCurve3 {
            comps: [fix(c1), fix(c2), fix(c3)],
        })
    }

    pub fn zero(center: f64, order: usize) -> Self {
        let z = PowerSeries::zero(center, order);
        AnalyticCurve3 {
            comps: [z.clone(), z.clone(), z],
        }
    }

    pub fn component(&self, i: usize) -> &PowerSeries {
        &self.comps[i]
    }

    pub fn components(&self) -> &[PowerSeries; 3] {
        &self.comps
    }

    pub fn center(&self) -> f64 {
        self.comps[0].center()
    }

    pub fn order(&self) -> usize {
        self.comps[0].order()
    }

    pub fn trust_radius(&self) -> f64 {
        self.comps[0].trust_radius()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.comps.iter().all(PowerSeries::is_exact_zero)
    }

    fn map(&self, f: impl Fn(&PowerSeries) -> PowerSeries) -> AnalyticCurve3 {
        AnalyticCurve3 {
            comps: [f(&self.comps[0]), f(&self.comps[1]), f(&self.comps[2])],
        }
    }

    fn try_zip(
        &self,
        other: &AnalyticCurve3,
        f: impl Fn(&PowerSeries, &PowerSeries) -> Result<PowerSeries>,
    ) -> Result<AnalyticCurve3> {
        let [a, b, c] = &self.comps;
        let [x, y, z] = &other.comps;
        AnalyticCurve3::new(f(a, x)?, f(b, y)?, f(c, z)?)
    }

    pub fn eval_at(&self, z: ComplexVal) -> Result<[ComplexVal; 3]> {
        Ok([
            self.comps[0].eval_at(z)?,
            self.comps[1].eval_at(z)?,
            self.comps[2].eval_at(z)?,
        ])
    }

    pub fn eval_real(&self, t: f64) -> Result<LorentzVec> {
        LorentzVec::checked(
            self.comps[0].eval_real(t)?,
            self.comps[1].eval_real(t)?,
            self.comps[2].eval_real(t)?,
        )
    }

    pub fn value(&self) -> LorentzVec {
        self.derivative_value(0)
    }

    /// `k`-th derivative at the center.
    pub fn derivative_value(&self, k: usize) -> LorentzVec {
        LorentzVec::new(
            self.comps[0].derivative_value(k),
            self.comps[1].derivative_value(k),
            self.comps[2].derivative_value(k),
        )
    }

    pub fn derivative(&self) -> AnalyticCurve3 {
        self.map(PowerSeries::derivative)
    }

    pub fn antiderivative(&self, value_at_center: LorentzVec) -> AnalyticCurve3 {
        let v = value_at_center.to_array();
        AnalyticCurve3 {
            comps: [
                self.comps[0].antiderivative(v[0]),
                self.comps[1].antiderivative(v[1]),
                self.comps[2].antiderivative(v[2]),
            ],
        }
    }

    pub fn add(&self, other: &AnalyticCurve3) -> Result<AnalyticCurve3> {
        self.try_zip(other, PowerSeries::add)
    }

    pub fn sub(&self, other: &AnalyticCurve3) -> Result<AnalyticCurve3> {
        self.try_zip(other, PowerSeries::sub)
    }

    pub fn scale(&self, s: f64) -> AnalyticCurve3 {
        self.map(|c| c.scale(s))
    }

    pub fn add_constant(&self, v: LorentzVec) -> AnalyticCurve3 {
        let v = v.to_array();
        AnalyticCurve3 {
            comps: [
                self.comps[0].add_constant(v[0]),
                self.comps[1].add_constant(v[1]),
                self.comps[2].add_constant(v[2]),
            ],
        }
    }

    /// Multiplies every component by a scalar series.
    pub fn mul_scalar(&self, s: &PowerSeries) -> Result<AnalyticCurve3> {
        AnalyticCurve3::new(self.comps[0].mul(s)?, self.comps[1].mul(s)?, self.comps[2].mul(s)?)
    }

    pub fn truncate(&self, order: usize) -> AnalyticCurve3 {
        self.map(|c| c.clone().truncate(order))
    }
}
