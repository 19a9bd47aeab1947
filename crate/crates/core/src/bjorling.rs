//! Singular Björling data and the surfaces it generates.
//!
//! Data is a null curve `gamma` and a null field `L` orthogonal to
//! `gamma'`, both given as series generators. The maxface is
//! `Re(gamma(z) - i Lambda(z))` with `Lambda' = L`; the minface is
//! `(gamma(u+v) + gamma(u-v))/2 + (Lambda(u+v) - Lambda(u-v))/2`.

use std::fmt;
use std::sync::Arc;

use crate::dsl::{CurveSpec, Expr, FieldSpec};
use crate::error::{Error, Result};
use crate::ladder::{Ladder, PiecewiseCurve};
use crate::lorentz::LorentzVec;
use crate::series::{AnalyticCurve3, ComplexVal, PowerSeries, DEFAULT_ORDER};

/// Imaginary residual allowed by the maxface reality check.
pub const REALITY_TOL: f64 = 1e-10;

type CurveGen = dyn Fn(f64, usize) -> Result<AnalyticCurve3> + Send + Sync;

/// An R^3-valued real-analytic function given by its expansion at any
/// center and order.
#[derive(Clone)]
pub struct CurveField {
    gen: Arc<CurveGen>,
    exact_zero: bool,
}

impl fmt::Debug for CurveField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveField")
            .field("exact_zero", &self.exact_zero)
            .finish_non_exhaustive()
    }
}

impl CurveField {
    pub fn from_fn(f: impl Fn(f64, usize) -> Result<AnalyticCurve3> + Send + Sync + 'static) -> CurveField {
        CurveField {
            gen: Arc::new(f),
            exact_zero: false,
        }
    }

    pub fn from_exprs(exprs: [Expr; 3]) -> CurveField {
        CurveField::from_fn(move |c, n| {
            AnalyticCurve3::new(exprs[0].lower(c, n)?, exprs[1].lower(c, n)?, exprs[2].lower(c, n)?)
        })
    }

    /// Parses three component expressions.
    pub fn parse(components: [&str; 3]) -> Result<CurveField> {
        let [a, b, c] = components.map(crate::dsl::parse);
        Ok(CurveField::from_exprs([a?, b?, c?]))
    }

    /// The exactly vanishing field.
    pub fn zero() -> CurveField {
        CurveField {
            gen: Arc::new(|c, n| Ok(AnalyticCurve3::zero(c, n))),
            exact_zero: true,
        }
    }

    /// `gamma'`.
    pub fn tangent(gamma: &CurveField) -> CurveField {
        let gamma = gamma.clone();
        CurveField::from_fn(move |c, n| Ok(gamma.expand(c, n + 1)?.derivative()))
    }

    /// `gamma'(t) * scale * prod (t - root)`. The polynomial factor is
    /// expanded from its roots, so the field vanishes exactly at a root
    /// used as center.
    pub fn scaled_tangent(gamma: &CurveField, roots: Vec<f64>, scale: f64) -> CurveField {
        let gamma = gamma.clone();
        CurveField::from_fn(move |c, n| {
            let poly = PowerSeries::from_roots(c, &roots, scale, n);
            gamma.expand(c, n + 1)?.derivative().mul_scalar(&poly)
        })
    }

    pub fn expand(&self, center: f64, order: usize) -> Result<AnalyticCurve3> {
        (self.gen)(center, order)
    }

    /// True only for [`CurveField::zero`].
    pub fn is_declared_zero(&self) -> bool {
        self.exact_zero
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Max,
    Min,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Max => "max",
            SurfaceKind::Min => "min",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A parametrised surface in E^3_1.
pub trait Surface: Sync {
    fn eval(&self, u: f64, v: f64) -> Result<LorentzVec>;
}

impl<F> Surface for F
where
    F: Fn(f64, f64) -> Result<LorentzVec> + Sync,
{
    fn eval(&self, u: f64, v: f64) -> Result<LorentzVec> {
        self(u, v)
    }
}

/// Parameter domains: a rectangle for maxfaces, the characteristic
/// diamond `a < u + v < b, a < u - v < b` (optionally clipped to
/// `|v| <= v_max`) for minfaces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainRect {
    Rect { u: (f64, f64), v: (f64, f64) },
    Diamond { a: f64, b: f64, v_max: Option<f64> },
}

impl DomainRect {
    pub fn rect(u: (f64, f64), v: (f64, f64)) -> Self {
        DomainRect::Rect { u, v }
    }

    pub fn diamond(a: f64, b: f64) -> Self {
        DomainRect::Diamond { a, b, v_max: None }
    }

    pub fn clipped_diamond(a: f64, b: f64, v_max: f64) -> Self {
        DomainRect::Diamond {
            a,
            b,
            v_max: Some(v_max),
        }
    }

    /// Membership: closed for rectangles, open for the diamond (the clip
    /// is closed).
    pub fn contains(&self, u: f64, v: f64) -> bool {
        match *self {
            DomainRect::Rect {
                u: (u0, u1),
                v: (v0, v1),
            } => u0 <= u && u <= u1 && v0 <= v && v <= v1,
            DomainRect::Diamond { a, b, v_max } => {
                a < u + v && u + v < b && a < u - v && u - v < b && v_max.is_none_or(|m| v.abs() <= m)
            }
        }
    }

    /// Bounding box `((u0, u1), (v0, v1))`.
    pub fn bounds(&self) -> ((f64, f64), (f64, f64)) {
        match *self {
            DomainRect::Rect { u, v } => (u, v),
            DomainRect::Diamond { a, b, v_max } => {
                let half = 0.5 * (b - a);
                let m = v_max.map_or(half, |m| m.min(half));
                ((a, b), (-m, m))
            }
        }
    }
}

/// Validated-or-not singular Björling data with its ladder of expansions.
#[derive(Clone, Debug)]
pub struct BjorlingData {
    name: Option<String>,
    gamma: CurveField,
    field: CurveField,
    interval: (f64, f64),
    order: usize,
    gamma_pw: PiecewiseCurve,
    tangent_pw: PiecewiseCurve,
    field_pw: PiecewiseCurve,
    lambda_pw: PiecewiseCurve,
}

impl BjorlingData {
    pub fn new(gamma: CurveField, field: CurveField, interval: (f64, f64), order: usize) -> Result<Self> {
        let (a, b) = interval;
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidData(format!("interval ({a}, {b}) must satisfy a < b")));
        }
        if order < 2 {
            return Err(Error::InvalidData(format!("series order {order} is below 2")));
        }
        let ladder = Ladder::over(a, b);
        let gamma_pw = PiecewiseCurve::build(ladder.clone(), |c| gamma.expand(c, order))?;
        let tangent_pw = PiecewiseCurve::build(ladder.clone(), |c| Ok(gamma.expand(c, order + 1)?.derivative()))?;
        let field_pw = PiecewiseCurve::build(ladder, |c| field.expand(c, order))?;
        let lambda_pw = field_pw.antiderivative(LorentzVec::ZERO)?;
        Ok(BjorlingData {
            name: None,
            gamma,
            field,
            interval,
            order,
            gamma_pw,
            tangent_pw,
            field_pw,
            lambda_pw,
        })
    }

    pub fn from_spec(spec: &CurveSpec, order: usize) -> Result<Self> {
        let gamma = CurveField::from_exprs(spec.gamma.clone());
        let field = match &spec.field {
            FieldSpec::Zero => CurveField::zero(),
            FieldSpec::Exprs(e) => CurveField::from_exprs(e.clone()),
        };
        let mut data = BjorlingData::new(gamma, field, spec.interval, order)?;
        data.name = spec.name.clone();
        Ok(data)
    }

    /// Convenience constructor from component expressions; `field = None`
    /// means `L = 0`.
    pub fn parse(gamma: [&str; 3], field: Option<[&str; 3]>, interval: (f64, f64)) -> Result<Self> {
        let field = match field {
            Some(f) => CurveField::parse(f)?,
            None => CurveField::zero(),
        };
        BjorlingData::new(CurveField::parse(gamma)?, field, interval, DEFAULT_ORDER)
    }

    /// Same curve with another field.
    pub fn with_field(&self, field: CurveField) -> Result<Self> {
        let mut data = BjorlingData::new(self.gamma.clone(), field, self.interval, self.order)?;
        data.name = self.name.clone();
        Ok(data)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gamma(&self) -> &CurveField {
        &self.gamma
    }

    pub fn field(&self) -> &CurveField {
        &self.field
    }

    pub fn ladder(&self) -> &Ladder {
        self.gamma_pw.ladder()
    }

    /// `L` was declared zero, or every ladder expansion is exactly zero.
    pub fn field_is_exact_zero(&self) -> bool {
        self.field.is_declared_zero() || self.field_pw.is_exact_zero()
    }

    /// Expansion of `gamma` about `t`.
    pub fn gamma_jet(&self, t: f64, order: usize) -> Result<AnalyticCurve3> {
        self.gamma.expand(t, order)
    }

    /// Expansion of `gamma'` about `t`.
    pub fn tangent_jet(&self, t: f64, order: usize) -> Result<AnalyticCurve3> {
        Ok(self.gamma.expand(t, order + 1)?.derivative())
    }

    /// Expansion of `L` about `t`.
    pub fn field_jet(&self, t: f64, order: usize) -> Result<AnalyticCurve3> {
        self.field.expand(t, order)
    }

    pub fn gamma_at(&self, t: f64) -> Result<LorentzVec> {
        self.gamma_pw.eval_real(t)
    }

    pub fn tangent_at(&self, t: f64) -> Result<LorentzVec> {
        self.tangent_pw.eval_real(t)
    }

    pub fn field_at(&self, t: f64) -> Result<LorentzVec> {
        self.field_pw.eval_real(t)
    }

    /// Antiderivative of `L`, zero at the left end of the interval.
    pub fn lambda_at(&self, t: f64) -> Result<LorentzVec> {
        self.lambda_pw.eval_real(t)
    }

    pub fn gamma_pieces(&self) -> &PiecewiseCurve {
        &self.gamma_pw
    }

    pub fn tangent_pieces(&self) -> &PiecewiseCurve {
        &self.tangent_pw
    }

    pub fn field_pieces(&self) -> &PiecewiseCurve {
        &self.field_pw
    }

    pub fn lambda_pieces(&self) -> &PiecewiseCurve {
        &self.lambda_pw
    }

    /// `L` at a complex point, by analytic continuation.
    pub fn field_at_complex(&self, z: ComplexVal) -> Result<[ComplexVal; 3]> {
        self.field_pw.eval_at(z)
    }

    pub fn maxface_eval(&self, u: f64, v: f64) -> Result<LorentzVec> {
        maxface_eval(self, u, v)
    }

    pub fn minface_eval(&self, u: f64, v: f64) -> Result<LorentzVec> {
        minface_eval(self, u, v)
    }

    pub fn maxface(&self) -> MaxFace<'_> {
        MaxFace(self)
    }

    pub fn minface(&self) -> MinFace<'_> {
        MinFace(self)
    }

    pub fn surface(&self, kind: SurfaceKind) -> Box<dyn Surface + '_> {
        match kind {
            SurfaceKind::Max => Box::new(MaxFace(self)),
            SurfaceKind::Min => Box::new(MinFace(self)),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MaxFace<'a>(pub &'a BjorlingData);

#[derive(Clone, Copy, Debug)]
pub struct MinFace<'a>(pub &'a BjorlingData);

impl Surface for MaxFace<'_> {
    fn eval(&self, u: f64, v: f64) -> Result<LorentzVec> {
        maxface_eval(self.0, u, v)
    }
}

impl Surface for MinFace<'_> {
    fn eval(&self, u: f64, v: f64) -> Result<LorentzVec> {
        minface_eval(self.0, u, v)
    }
}

/// Maxface value and the largest imaginary residual before it was
/// discarded.
pub fn maxface_eval_with_residual(data: &BjorlingData, u: f64, v: f64) -> Result<(LorentzVec, f64)> {
    let z = ComplexVal::new(u, v);
    let zb = z.conj();
    let g = data.gamma_pw.piece_near(u);
    let lam = data.lambda_pw.piece_near(u);
    let (gz, gzb) = (g.eval_at(z)?, g.eval_at(zb)?);
    let (lz, lzb) = (lam.eval_at(z)?, lam.eval_at(zb)?);
    let half_i = ComplexVal::new(0.0, 0.5);
    let mut out = [0.0; 3];
    let mut residual: f64 = 0.0;
    for k in 0..3 {
        let x = 0.5 * (gz[k] + gzb[k]) - half_i * (lz[k] - lzb[k]);
        let excess = x.im.abs() / x.re.abs().max(1.0);
        residual = residual.max(excess);
        out[k] = x.re;
    }
    if residual.is_nan() || residual > REALITY_TOL {
        return Err(Error::RealityCheckFailed { u, v, residual });
    }
    Ok((LorentzVec::checked(out[0], out[1], out[2])?, residual))
}

pub fn maxface_eval(data: &BjorlingData, u: f64, v: f64) -> Result<LorentzVec> {
    maxface_eval_with_residual(data, u, v).map(|(x, _)| x)
}

pub fn minface_eval(data: &BjorlingData, u: f64, v: f64) -> Result<LorentzVec> {
    let (a, b) = data.interval;
    let (s, t) = (u + v, u - v);
    if !(a < s && s < b && a < t && t < b) {
        return Err(Error::OutOfDomain { u, v, a, b });
    }
    let sum = data.gamma_at(s)? + data.gamma_at(t)?;
    let diff = data.lambda_at(s)? - data.lambda_at(t)?;
    Ok(0.5 * sum + 0.5 * diff)
}

/// The null curves `alpha`, `beta` with `X_min(u, v) = alpha(u - v) +
/// beta(u + v)`.
#[derive(Clone, Debug)]
pub struct NullPair {
    pub x0: f64,
    pub alpha: PiecewiseCurve,
    pub beta: PiecewiseCurve,
}

impl NullPair {
    pub fn eval(&self, u: f64, v: f64) -> Result<LorentzVec> {
        Ok(self.alpha.eval_real(u - v)? + self.beta.eval_real(u + v)?)
    }
}

/// `alpha(t) = (gamma(t) - int_{x0}^t L) / 2`,
/// `beta(s) = (gamma(s) + int_{x0}^s L) / 2`.
pub fn null_decompose(data: &BjorlingData, x0: f64) -> Result<NullPair> {
    let lx0 = data.lambda_at(x0)?;
    let build = |sign: f64| {
        let mut pieces = data.gamma_pw.pieces().iter().zip(data.lambda_pw.pieces());
        PiecewiseCurve::build(data.ladder().clone(), |_| {
            let (g, l) = pieces.next().expect("one piece per center");
            Ok(g.add(&l.add_constant(-lx0).scale(sign))?.scale(0.5))
        })
    };
    Ok(NullPair {
        x0,
        alpha: build(-1.0)?,
        beta: build(1.0)?,
    })
}

/// Admissibility conditions checked by [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    NullTangent,
    NullField,
    Orthogonal,
    NonTrivial,
    TangentNotPlusMinusField,
    TangentComponents,
    FieldComponents,
    GaussNotUnimodular,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::NullTangent,
        Condition::NullField,
        Condition::Orthogonal,
        Condition::NonTrivial,
        Condition::TangentNotPlusMinusField,
        Condition::TangentComponents,
        Condition::FieldComponents,
        Condition::GaussNotUnimodular,
    ];

    pub fn description(self) -> &'static str {
        match self {
            Condition::NullTangent => "<gamma', gamma'> = 0",
            Condition::NullField => "<L, L> = 0",
            Condition::Orthogonal => "<gamma', L> = 0",
            Condition::NonTrivial => "gamma' and L not both identically zero",
            Condition::TangentNotPlusMinusField => "gamma' not identically +L or -L",
            Condition::TangentComponents => "gamma_2' != +-gamma_3' where gamma' != 0",
            Condition::FieldComponents => "L_2 != +-L_3 where L != 0",
            Condition::GaussNotUnimodular => "|g| not identically 1",
        }
    }

    /// Whether the condition constrains surfaces of `kind`.
    pub fn applies_to(self, kind: SurfaceKind) -> bool {
        match self {
            Condition::TangentNotPlusMinusField | Condition::TangentComponents | Condition::FieldComponents => {
                kind == SurfaceKind::Min
            }
            Condition::GaussNotUnimodular => kind == SurfaceKind::Max,
            _ => true,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub condition: Condition,
    pub passed: bool,
    /// Largest violation for pointwise identities; for "not identically"
    /// conditions the largest margin found (zero when never satisfied).
    pub magnitude: f64,
    /// Sample point attaining `magnitude`.
    pub at: f64,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub samples: usize,
    pub tol: f64,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn check(&self, c: Condition) -> &CheckResult {
        self.checks
            .iter()
            .find(|r| r.condition == c)
            .expect("every condition is checked")
    }

    pub fn passes(&self, kind: SurfaceKind) -> bool {
        self.checks
            .iter()
            .filter(|r| r.condition.applies_to(kind))
            .all(|r| r.passed)
    }

    pub fn failures(&self, kind: SurfaceKind) -> Vec<&CheckResult> {
        self.checks
            .iter()
            .filter(|r| r.condition.applies_to(kind) && !r.passed)
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples {}  tol {:e}", self.samples, self.tol)?;
        for r in &self.checks {
            let scope = match (
                r.condition.applies_to(SurfaceKind::Max),
                r.condition.applies_to(SurfaceKind::Min),
            ) {
                (true, true) => "both",
                (true, false) => "max",
                _ => "min",
            };
            write!(
                f,
                "{:4} [{scope:4}] {}: {:.3e} at t = {:.6}",
                if r.passed { "ok" } else { "FAIL" },
                r.condition,
                r.magnitude,
                r.at
            )?;
            if let Some(n) = &r.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Tracker {
    condition: Condition,
    magnitude: f64,
    at: f64,
}

impl Tracker {
    fn new(condition: Condition) -> Self {
        Tracker {
            condition,
            magnitude: 0.0,
            at: f64::NAN,
        }
    }

    fn see(&mut self, value: f64, t: f64) {
        if value > self.magnitude || self.at.is_nan() {
            self.magnitude = value;
            self.at = t;
        }
    }

    fn finish(self, passed: bool, note: Option<String>) -> CheckResult {
        CheckResult {
            condition: self.condition,
            passed,
            magnitude: self.magnitude,
            at: self.at,
            note,
        }
    }
}

/// Checks every admissibility condition at `samples` cell-centred points
/// of the interval. Failed conditions are reported, not raised.
pub fn validate(data: &BjorlingData, samples: usize, tol: f64) -> Result<ValidationReport> {
    let samples = samples.max(2);
    let (a, b) = data.interval;
    let h = (b - a) / samples as f64;
    let ts: Vec<f64> = (0..samples).map(|i| a + (i as f64 + 0.5) * h).collect();

    let mut null_t = Tracker::new(Condition::NullTangent);
    let mut null_l = Tracker::new(Condition::NullField);
    let mut orth = Tracker::new(Condition::Orthogonal);
    let mut nontrivial = Tracker::new(Condition::NonTrivial);
    let mut pm = Tracker::new(Condition::TangentNotPlusMinusField);
    let mut tcomp = Tracker::new(Condition::TangentComponents);
    let mut fcomp = Tracker::new(Condition::FieldComponents);
    let (mut null_ok, mut null_l_ok, mut orth_ok) = (true, true, true);
    let (mut t_applicable, mut t_good, mut f_applicable, mut f_good) = (0, 0, 0, 0);

    for &t in &ts {
        let gp = data.tangent_at(t)?;
        let l = data.field_at(t)?;
        let (ng, nl) = (gp.euclid_norm(), l.euclid_norm());

        let v = gp.norm_sq().abs();
        null_t.see(v, t);
        null_ok &= v <= tol * ng.powi(2).max(1.0);
        let v = l.norm_sq().abs();
        null_l.see(v, t);
        null_l_ok &= v <= tol * nl.powi(2).max(1.0);
        let v = gp.inner(&l).abs();
        orth.see(v, t);
        orth_ok &= v <= tol * (ng * nl).max(1.0);

        nontrivial.see(ng.max(nl), t);
        pm.see((gp - l).euclid_norm().min((gp + l).euclid_norm()), t);

        if ng > tol {
            t_applicable += 1;
            let m = (gp.x2 - gp.x3).abs().min((gp.x2 + gp.x3).abs()) / ng;
            tcomp.see(m, t);
            if m > tol {
                t_good += 1;
            }
        }
        if nl > tol {
            f_applicable += 1;
            let m = (l.x2 - l.x3).abs().min((l.x2 + l.x3).abs()) / nl;
            fcomp.see(m, t);
            if m > tol {
                f_good += 1;
            }
        }
    }

    let scale = nontrivial.magnitude.max(1.0);
    let pm_passed = pm.magnitude > tol * scale;
    let nontrivial_passed = nontrivial.magnitude > tol;
    let isolated = |good: usize, applicable: usize| {
        (good < applicable).then(|| format!("violated at {} of {applicable} samples", applicable - good))
    };
    let t_note = isolated(t_good, t_applicable);
    let f_note = isolated(f_good, f_applicable);

    let mut gauss = Tracker::new(Condition::GaussNotUnimodular);
    let gauss_result = match crate::weierstrass::max_gauss_from_bjorling(data) {
        Ok(wd) => {
            let mut err = None;
            for &t in &ts {
                match wd.g_at(ComplexVal::new(t, 0.25)) {
                    Ok(g) => gauss.see((g.norm() - 1.0).abs(), t),
                    Err(e) => {
                        err = Some(e.to_string());
                        break;
                    }
                }
            }
            match err {
                Some(e) => gauss.finish(false, Some(e)),
                None => {
                    let passed = gauss.magnitude > tol;
                    gauss.finish(passed, Some("sampled at t + 0.25i".into()))
                }
            }
        }
        Err(e) => gauss.finish(false, Some(e.to_string())),
    };

    let checks = vec![
        null_t.finish(null_ok, None),
        null_l.finish(null_l_ok, None),
        orth.finish(orth_ok, None),
        nontrivial.finish(nontrivial_passed, None),
        pm.finish(pm_passed, None),
        tcomp.finish(t_applicable == 0 || t_good > 0, t_note),
        fcomp.finish(f_applicable == 0 || f_good > 0, f_note),
        gauss_result,
    ];
    debug_assert_eq!(checks.len(), Condition::ALL.len());
    Ok(ValidationReport { samples, tol, checks })
}
