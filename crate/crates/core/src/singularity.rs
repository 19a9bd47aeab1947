//! Classification of the singular points along the data curve.
//!
//! Zero tests are scale aware: a vector `v` counts as zero when
//! `|v| <= tol |v'| (b - a)`, a determinant `D(x, y)` when
//! `|D| <= tol |x| max(|y|, |y'| (b - a))`.

use std::fmt;
use std::fmt::Write as _;

use crate::bjorling::{BjorlingData, SurfaceKind};
use crate::error::{Error, Result};
use crate::lorentz::LorentzVec;
use crate::series::{AnalyticCurve3, PowerSeries};
use crate::weierstrass::MinQuad;

pub const DEFAULT_ZERO_TOL: f64 = 1e-8;

/// Relative disagreement above which the two quadruple formulas are
/// reported as inconsistent.
pub const BRANCH_AGREEMENT_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SingularityType {
    CuspidalEdge,
    Swallowtail,
    CuspidalCrosscap,
    Folded,
    Degenerate(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityKind {
    CuspidalEdge,
    Swallowtail,
    CuspidalCrosscap,
    Folded,
    Degenerate,
}

impl SingularityType {
    pub fn kind(&self) -> SingularityKind {
        match self {
            SingularityType::CuspidalEdge => SingularityKind::CuspidalEdge,
            SingularityType::Swallowtail => SingularityKind::Swallowtail,
            SingularityType::CuspidalCrosscap => SingularityKind::CuspidalCrosscap,
            SingularityType::Folded => SingularityKind::Folded,
            SingularityType::Degenerate(_) => SingularityKind::Degenerate,
        }
    }

    fn degenerate(reason: &str) -> Self {
        SingularityType::Degenerate(reason.to_string())
    }
}

impl SingularityKind {
    pub fn name(self) -> &'static str {
        match self {
            SingularityKind::CuspidalEdge => "cuspidal_edge",
            SingularityKind::Swallowtail => "swallowtail",
            SingularityKind::CuspidalCrosscap => "cuspidal_crosscap",
            SingularityKind::Folded => "folded",
            SingularityKind::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::Degenerate(r) => write!(f, "degenerate ({r})"),
            other => f.write_str(other.kind().name()),
        }
    }
}

/// `x_a y_b - x_b y_a`.
fn det(x: LorentzVec, y: LorentzVec, a: usize, b: usize) -> f64 {
    let (x, y) = (x.to_array(), y.to_array());
    x[a] * y[b] - x[b] * y[a]
}

fn proj(x: LorentzVec, a: usize, b: usize) -> f64 {
    let x = x.to_array();
    x[a].hypot(x[b])
}

/// Derivative data of `gamma` and `L` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    pub t: f64,
    /// Length of the data interval, the natural scale for zero tests.
    pub span: f64,
    pub gamma_prime: LorentzVec,
    pub gamma_2nd: LorentzVec,
    pub gamma_3rd: LorentzVec,
    pub gamma_4th: LorentzVec,
    pub l_val: LorentzVec,
    pub l_prime: LorentzVec,
    pub l_2nd: LorentzVec,
    /// `gamma_2' gamma_3'' - gamma_3' gamma_2''`
    pub d23_gamma: f64,
    /// `gamma_1' gamma_2'' - gamma_1'' gamma_2'`
    pub d12_gamma: f64,
    /// `L_2 L_3' - L_3 L_2'`
    pub d23_l: f64,
    /// `L_1 L_2' - L_1' L_2`
    pub d12_l: f64,
    /// `gamma_2' gamma_3''' - gamma_3' gamma_2'''`
    pub d23_gamma_3rd: f64,
    /// `L_3 / gamma_3'`
    pub c: Option<f64>,
    pub c_prime: Option<f64>,
    pub delta1: Option<f64>,
    pub delta2: Option<f64>,
    /// Only where `L = 0`, so `c = 0`.
    pub delta1_prime: Option<f64>,
    pub delta2_prime: Option<f64>,
    /// Largest relative disagreement of the `gamma'`- and `L`-based
    /// quadruple formulas, where both apply.
    pub branch_deviation: Option<f64>,
}

impl Diagnostics {
    fn vec_zero(&self, v: LorentzVec, dv: LorentzVec, tol: f64) -> bool {
        v.euclid_norm() <= tol * dv.euclid_norm() * self.span
    }

    fn det_zero(d: f64, x: f64, y: f64, dy: f64, span: f64, tol: f64) -> bool {
        d.abs() <= tol * x * y.max(dy * span)
    }

    pub fn gamma_prime_zero(&self, tol: f64) -> bool {
        self.vec_zero(self.gamma_prime, self.gamma_2nd, tol)
    }

    pub fn gamma_2nd_zero(&self, tol: f64) -> bool {
        self.vec_zero(self.gamma_2nd, self.gamma_3rd, tol)
    }

    pub fn l_zero(&self, tol: f64) -> bool {
        self.vec_zero(self.l_val, self.l_prime, tol)
    }

    pub fn l_prime_zero(&self, tol: f64) -> bool {
        self.vec_zero(self.l_prime, self.l_2nd, tol)
    }

    pub fn d23_gamma_zero(&self, tol: f64) -> bool {
        let (p, q, r) = (self.gamma_prime, self.gamma_2nd, self.gamma_3rd);
        Self::det_zero(
            self.d23_gamma,
            proj(p, 1, 2),
            proj(q, 1, 2),
            proj(r, 1, 2),
            self.span,
            tol,
        )
    }

    pub fn d12_gamma_zero(&self, tol: f64) -> bool {
        let (p, q, r) = (self.gamma_prime, self.gamma_2nd, self.gamma_3rd);
        Self::det_zero(
            self.d12_gamma,
            proj(p, 0, 1),
            proj(q, 0, 1),
            proj(r, 0, 1),
            self.span,
            tol,
        )
    }

    pub fn d23_l_zero(&self, tol: f64) -> bool {
        let (p, q, r) = (self.l_val, self.l_prime, self.l_2nd);
        Self::det_zero(self.d23_l, proj(p, 1, 2), proj(q, 1, 2), proj(r, 1, 2), self.span, tol)
    }

    pub fn d12_l_zero(&self, tol: f64) -> bool {
        let (p, q, r) = (self.l_val, self.l_prime, self.l_2nd);
        Self::det_zero(self.d12_l, proj(p, 0, 1), proj(q, 0, 1), proj(r, 0, 1), self.span, tol)
    }

    pub fn is_nondegenerate(&self, tol: f64) -> bool {
        self.d23_gamma.abs().max(self.d12_gamma.abs()) > tol
    }
}

/// Quadruple values from the `gamma'` formulas (`L = c gamma'`) and from
/// the `L` formulas (`gamma' = d L`): `[g1, g2, w1hat, w2hat]`.
pub fn closed_form_quads(gp: LorentzVec, l: LorentzVec) -> (Option<[f64; 4]>, Option<[f64; 4]>) {
    let tiny = 1e-12;
    let from_tangent = (gp.x1.abs() > tiny * gp.euclid_norm() && gp.x3.abs() > tiny * gp.euclid_norm()).then(|| {
        let c = l.x3 / gp.x3;
        [
            -(gp.x2 + gp.x3) / gp.x1,
            (gp.x2 - gp.x3) / gp.x1,
            (gp.x2 - gp.x3) * (1.0 - c) / 4.0,
            (gp.x2 + gp.x3) * (1.0 + c) / 4.0,
        ]
    });
    let from_field = (l.x1.abs() > tiny * l.euclid_norm() && l.x3.abs() > tiny * l.euclid_norm()).then(|| {
        let d = gp.x3 / l.x3;
        [
            -(l.x2 + l.x3) / l.x1,
            (l.x2 - l.x3) / l.x1,
            (l.x2 - l.x3) * (d - 1.0) / 4.0,
            (l.x2 + l.x3) * (1.0 + d) / 4.0,
        ]
    });
    (from_tangent, from_field)
}

/// Evaluates every diagnostic quantity at `t` from exact expansions there.
pub fn diagnostics_at(data: &BjorlingData, t: f64) -> Result<Diagnostics> {
    let g = data.tangent_jet(t, 3)?;
    let l = data.field_jet(t, 2)?;
    let (a, b) = data.interval();
    let gp = g.derivative_value(0);
    let g2 = g.derivative_value(1);
    let g3 = g.derivative_value(2);
    let g4 = g.derivative_value(3);
    let lv = l.derivative_value(0);
    let lp = l.derivative_value(1);
    let l2 = l.derivative_value(2);

    let d23_gamma = det(gp, g2, 1, 2);
    let d12_gamma = det(gp, g2, 0, 1);
    let d23_l = det(lv, lp, 1, 2);
    let d12_l = det(lv, lp, 0, 1);
    let d23_gamma_3rd = det(gp, g3, 1, 2);

    let tiny = 1e-12;
    let (c, c_prime) = if gp.x3.abs() > tiny * gp.euclid_norm().max(f64::MIN_POSITIVE) {
        (
            Some(lv.x3 / gp.x3),
            Some((lp.x3 * gp.x3 - lv.x3 * g2.x3) / (gp.x3 * gp.x3)),
        )
    } else {
        (None, None)
    };
    let g1_ok = gp.x1.abs() > tiny * gp.euclid_norm().max(f64::MIN_POSITIVE);
    let delta = |sign: f64| {
        let c = c?;
        let one = 1.0 + sign * c;
        (g1_ok && one.abs() > tiny).then(|| -4.0 * d23_gamma / (gp.x1.powi(3) * one))
    };
    let delta1 = delta(-1.0);
    let delta2 = delta(1.0);

    let mut diag = Diagnostics {
        t,
        span: b - a,
        gamma_prime: gp,
        gamma_2nd: g2,
        gamma_3rd: g3,
        gamma_4th: g4,
        l_val: lv,
        l_prime: lp,
        l_2nd: l2,
        d23_gamma,
        d12_gamma,
        d23_l,
        d12_l,
        d23_gamma_3rd,
        c,
        c_prime,
        delta1,
        delta2,
        delta1_prime: None,
        delta2_prime: None,
        branch_deviation: None,
    };

    if g1_ok && diag.l_zero(DEFAULT_ZERO_TOL) {
        if let Some(cp) = c_prime {
            let p = gp.x1;
            let prime = |sign: f64| -4.0 * (p * d23_gamma_3rd - d23_gamma * (3.0 * g2.x1 + sign * p * cp)) / p.powi(4);
            diag.delta1_prime = Some(prime(-1.0));
            diag.delta2_prime = Some(prime(1.0));
        }
    }

    if !diag.gamma_prime_zero(DEFAULT_ZERO_TOL) && !diag.l_zero(DEFAULT_ZERO_TOL) {
        if let (Some(x), Some(y)) = closed_form_quads(gp, lv) {
            let dev = x
                .iter()
                .zip(&y)
                .map(|(p, q)| (p - q).abs() / p.abs().max(q.abs()).max(1e-300))
                .fold(0.0, f64::max);
            diag.branch_deviation = Some(dev);
        }
    }
    Ok(diag)
}

/// `delta_1, delta_2` at `t`, or [`Error::UndefinedDelta`].
pub fn deltas(diag: &Diagnostics) -> Result<(f64, f64)> {
    match (diag.delta1, diag.delta2) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::UndefinedDelta(diag.t)),
    }
}

/// Non-degeneracy of `gamma` at `t`: `max(|D23|, |D12|) > tol` for the
/// derivatives of `gamma` at `t`. `gamma` may be expanded about any
/// center whose trust radius covers `t`.
pub fn is_nondegenerate(gamma: &AnalyticCurve3, t: f64, tol: f64) -> Result<bool> {
    let shifted = gamma
        .components()
        .iter()
        .map(|c| c.recenter(t))
        .collect::<Result<Vec<PowerSeries>>>()?;
    let [x, y, z]: [PowerSeries; 3] = shifted.try_into().expect("three components");
    let g = AnalyticCurve3::new(x, y, z)?;
    let (p, q) = (g.derivative_value(1), g.derivative_value(2));
    Ok(det(p, q, 1, 2).abs().max(det(p, q, 0, 1).abs()) > tol)
}

fn folded_or_degenerate(diag: &Diagnostics, tol: f64) -> SingularityType {
    if diag.is_nondegenerate(tol) {
        SingularityType::Folded
    } else {
        SingularityType::degenerate("L vanishes identically but gamma is degenerate")
    }
}

fn branch_check(diag: &Diagnostics) -> Option<SingularityType> {
    match diag.branch_deviation {
        Some(dev) if dev > BRANCH_AGREEMENT_TOL => Some(SingularityType::Degenerate(format!(
            "gamma' and L quadruple formulas disagree by {dev:.2e}"
        ))),
        _ => None,
    }
}

/// Maxface criteria from the diagnostics at one point.
pub fn classify_max_diag(diag: &Diagnostics, field_exact_zero: bool, tol: f64) -> SingularityType {
    use SingularityType as S;
    if field_exact_zero {
        return folded_or_degenerate(diag, tol);
    }
    if let Some(s) = branch_check(diag) {
        return s;
    }
    match (diag.gamma_prime_zero(tol), diag.l_zero(tol)) {
        (false, false) => {
            if diag.d12_gamma_zero(tol) {
                S::degenerate("gamma_1' gamma_2'' - gamma_1'' gamma_2' vanishes")
            } else if diag.d12_l_zero(tol) {
                S::degenerate("L_1 L_2' - L_1' L_2 vanishes")
            } else {
                S::CuspidalEdge
            }
        }
        (true, false) => {
            if diag.gamma_2nd_zero(tol) {
                S::degenerate("gamma' and gamma'' vanish")
            } else if diag.d12_l_zero(tol) {
                S::degenerate("L_1 L_2' - L_1' L_2 vanishes")
            } else {
                S::Swallowtail
            }
        }
        (false, true) => {
            if diag.l_prime_zero(tol) {
                S::degenerate("L and L' vanish")
            } else if diag.d12_gamma_zero(tol) {
                S::degenerate("gamma_1' gamma_2'' - gamma_1'' gamma_2' vanishes")
            } else {
                S::CuspidalCrosscap
            }
        }
        (true, true) => S::degenerate("gamma' and L both vanish"),
    }
}

/// Minface criteria from the diagnostics at one point.
pub fn classify_min_diag(diag: &Diagnostics, field_exact_zero: bool, tol: f64) -> SingularityType {
    use SingularityType as S;
    if field_exact_zero {
        return folded_or_degenerate(diag, tol);
    }
    if let Some(s) = branch_check(diag) {
        return s;
    }
    match (diag.gamma_prime_zero(tol), diag.l_zero(tol)) {
        (false, false) => {
            if diag.d23_gamma_zero(tol) {
                S::degenerate("D(gamma'_23, gamma''_23) vanishes")
            } else {
                S::CuspidalEdge
            }
        }
        (true, false) => {
            if diag.gamma_2nd_zero(tol) {
                S::degenerate("gamma' and gamma'' vanish")
            } else if diag.d23_l_zero(tol) {
                S::degenerate("D(L_23, L'_23) vanishes")
            } else {
                S::Swallowtail
            }
        }
        (false, true) => {
            if diag.l_prime_zero(tol) {
                S::degenerate("L and L' vanish")
            } else if diag.d23_gamma_zero(tol) {
                S::degenerate("D(gamma'_23, gamma''_23) vanishes")
            } else {
                S::CuspidalCrosscap
            }
        }
        (true, true) => S::degenerate("gamma' and L both vanish"),
    }
}

pub fn classify_max(data: &BjorlingData, t: f64, tol: f64) -> Result<SingularityType> {
    Ok(classify_max_diag(
        &diagnostics_at(data, t)?,
        data.field_is_exact_zero(),
        tol,
    ))
}

pub fn classify_min(data: &BjorlingData, t: f64, tol: f64) -> Result<SingularityType> {
    Ok(classify_min_diag(
        &diagnostics_at(data, t)?,
        data.field_is_exact_zero(),
        tol,
    ))
}

pub fn classify(data: &BjorlingData, kind: SurfaceKind, t: f64, tol: f64) -> Result<SingularityType> {
    match kind {
        SurfaceKind::Max => classify_max(data, t, tol),
        SurfaceKind::Min => classify_min(data, t, tol),
    }
}

/// The quantities entering the quadruple-level criteria at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaCombos {
    pub delta1: f64,
    pub delta2: f64,
    pub delta1_prime: f64,
    pub delta2_prime: f64,
    /// `delta_1' g_2'/g_2 + delta_2' g_1'/g_1`
    pub third: f64,
    /// Scale of `third`: `|delta_1' g_2'/g_2| + |delta_2' g_1'/g_1|`.
    pub third_scale: f64,
}

/// `delta_i = g_i' / (g_i^2 w_i)` and derivatives from the quadruple
/// expanded about `t`.
pub fn delta_combos(q: &MinQuad, t: f64) -> Result<DeltaCombos> {
    let undefined = |_| Error::UndefinedDelta(t);
    let lq = q.local(t, 3).map_err(|e| match e {
        Error::DegenerateCharacteristic(_) => Error::UndefinedDelta(t),
        other => other,
    })?;
    let delta = |g: &PowerSeries, w: &PowerSeries| -> Result<PowerSeries> {
        g.derivative().div(&g.mul(g)?.mul(w)?).map_err(undefined)
    };
    let d1 = delta(&lq.g1, &lq.w1hat)?;
    let d2 = delta(&lq.g2, &lq.w2hat)?;
    let (g1, g2) = (lq.g1.value(), lq.g2.value());
    let (dg1, dg2) = (lq.g1.derivative_value(1), lq.g2.derivative_value(1));
    let (p1, p2) = (d1.derivative_value(1), d2.derivative_value(1));
    let a = p1 * dg2 / g2;
    let b = p2 * dg1 / g1;
    Ok(DeltaCombos {
        delta1: d1.value(),
        delta2: d2.value(),
        delta1_prime: p1,
        delta2_prime: p2,
        third: a + b,
        third_scale: a.abs() + b.abs(),
    })
}

/// Minface criteria expressed through the Weierstrass quadruple only.
pub fn classify_min_weierstrass(q: &MinQuad, t: f64, tol: f64) -> Result<SingularityType> {
    use SingularityType as S;
    let d = delta_combos(q, t)?;
    let scale = d.delta1.abs() + d.delta2.abs();
    let diff_zero = (d.delta1 - d.delta2).abs() <= tol * scale;
    let sum_zero = (d.delta1 + d.delta2).abs() <= tol * scale;
    let third_zero = d.third.abs() <= tol * d.third_scale;
    Ok(match (diff_zero, sum_zero) {
        (false, false) => S::CuspidalEdge,
        (true, false) if !third_zero => S::CuspidalCrosscap,
        (false, true) if !third_zero => S::Swallowtail,
        (true, true) => S::degenerate("delta_1 - delta_2 and delta_1 + delta_2 both vanish"),
        _ => S::degenerate("delta_1' g_2'/g_2 + delta_2' g_1'/g_1 vanishes"),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanEntry {
    pub t: f64,
    pub class: SingularityType,
    pub diagnostics: Diagnostics,
    /// Found as a candidate or a root of an `L` component rather than a
    /// uniform sample.
    pub special: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityReport {
    pub kind: SurfaceKind,
    pub entries: Vec<ScanEntry>,
}

impl SingularityReport {
    pub fn count(&self, kind: SingularityKind) -> usize {
        self.entries.iter().filter(|e| e.class.kind() == kind).count()
    }

    pub fn points(&self, kind: SingularityKind) -> Vec<f64> {
        self.entries
            .iter()
            .filter(|e| e.class.kind() == kind)
            .map(|e| e.t)
            .collect()
    }

    pub fn has_degenerate(&self) -> bool {
        self.count(SingularityKind::Degenerate) > 0
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.16e}"));
        let mut s = String::from("t,type,D23,D12,norm_L,norm_gamma_prime,delta1,delta2\n");
        for e in &self.entries {
            let d = &e.diagnostics;
            let _ = writeln!(
                s,
                "{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
                e.t,
                e.class.kind().name(),
                d.d23_gamma,
                d.d12_gamma,
                d.l_val.euclid_norm(),
                d.gamma_prime.euclid_norm(),
                opt(d.delta1),
                opt(d.delta2)
            );
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}face singularities, {} points", self.kind, self.entries.len());
        for k in [
            SingularityKind::CuspidalEdge,
            SingularityKind::Swallowtail,
            SingularityKind::CuspidalCrosscap,
            SingularityKind::Folded,
            SingularityKind::Degenerate,
        ] {
            let _ = writeln!(s, "  {:18} {}", k.name(), self.count(k));
        }
        for e in self
            .entries
            .iter()
            .filter(|e| e.special || e.class.kind() != SingularityKind::CuspidalEdge)
        {
            if e.class.kind() == SingularityKind::Folded {
                continue;
            }
            let _ = writeln!(s, "  t = {:<22.16} {}", e.t, e.class);
        }
        s
    }
}

fn bisect(f: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Interior roots of each `L` component, by sign changes on `cells`
/// uniform cells refined with bisection.
pub fn field_component_roots(data: &BjorlingData, cells: usize) -> Result<Vec<f64>> {
    let (a, b) = data.interval();
    let cells = cells.max(2);
    let h = (b - a) / cells as f64;
    let nodes: Vec<f64> = (0..=cells)
        .map(|i| if i == cells { b } else { a + i as f64 * h })
        .collect();
    let vals = nodes.iter().map(|&t| data.field_at(t)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    for k in 0..3 {
        let f = |t: f64| -> Result<f64> { Ok(data.field_at(t)?.to_array()[k]) };
        for i in 0..cells {
            let (fa, fb) = (vals[i].to_array()[k], vals[i + 1].to_array()[k]);
            if fa == 0.0 {
                roots.push(nodes[i]);
            } else if fb != 0.0 && fa.signum() != fb.signum() {
                roots.push(bisect(&f, nodes[i], nodes[i + 1], fa)?);
            }
        }
        if vals[cells].to_array()[k] == 0.0 {
            roots.push(b);
        }
    }
    Ok(roots.into_iter().filter(|&r| a < r && r < b).collect())
}

/// Classifies at `samples` cell-centred points, at every interior root of
/// an `L` component, and at the given candidate points. Points closer
/// than 1e-7 to a candidate or root are merged into it.
pub fn scan_curve_with(
    data: &BjorlingData,
    kind: SurfaceKind,
    samples: usize,
    tol: f64,
    candidates: &[f64],
) -> Result<SingularityReport> {
    let (a, b) = data.interval();
    let merge = 1e-7;
    let mut special: Vec<f64> = Vec::new();
    let push = |t: f64, list: &mut Vec<f64>| {
        if a < t && t < b && list.iter().all(|&s| (s - t).abs() > merge) {
            list.push(t);
        }
    };
    for &c in candidates {
        push(c, &mut special);
    }
    if !data.field_is_exact_zero() {
        for r in field_component_roots(data, samples.max(2))? {
            push(r, &mut special);
        }
    }
    let samples = samples.max(2);
    let h = (b - a) / samples as f64;
    let mut points: Vec<(f64, bool)> = special.iter().map(|&t| (t, true)).collect();
    for i in 0..samples {
        let t = a + (i as f64 + 0.5) * h;
        if special.iter().all(|&s| (s - t).abs() > merge) {
            points.push((t, false));
        }
    }
    points.sort_by(|x, y| x.0.total_cmp(&y.0));

    let exact_zero = data.field_is_exact_zero();
    let entries = points
        .into_iter()
        .map(|(t, special)| {
            let diagnostics = diagnostics_at(data, t)?;
            let class = match kind {
                SurfaceKind::Max => classify_max_diag(&diagnostics, exact_zero, tol),
                SurfaceKind::Min => classify_min_diag(&diagnostics, exact_zero, tol),
            };
            Ok(ScanEntry {
                t,
                class,
                diagnostics,
                special,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SingularityReport { kind, entries })
}

pub fn scan_curve(data: &BjorlingData, kind: SurfaceKind, samples: usize) -> Result<SingularityReport> {
    scan_curve_with(data, kind, samples, DEFAULT_ZERO_TOL, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bjorling::CurveField;
    use crate::weierstrass::min_quad_from_bjorling;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn helicoid() -> BjorlingData {
        BjorlingData::parse(["cos(t)", "sin(t)", "t"], None, (0.0, TAU)).unwrap()
    }

    fn family(roots: Vec<f64>, scale: f64) -> BjorlingData {
        let gamma = CurveField::parse(["cos(t)", "sin(t)", "t"]).unwrap();
        BjorlingData::new(
            gamma.clone(),
            CurveField::scaled_tangent(&gamma, roots, scale),
            (0.0, TAU),
            32,
        )
        .unwrap()
    }

    #[test]
    fn helicoid_diagnostics_at_half_pi() {
        let d = diagnostics_at(&helicoid(), FRAC_PI_2).unwrap();
        assert!((d.d23_gamma - 1.0).abs() < 1e-15);
        assert!((d.d12_gamma - 1.0).abs() < 1e-15);
        assert!((d.delta1.unwrap() - 4.0).abs() < 1e-14);
        assert!((d.delta2.unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(d.c, Some(0.0));
    }

    #[test]
    fn deltas_undefined_where_gamma_1_prime_vanishes() {
        let d = diagnostics_at(&helicoid(), 0.0).unwrap();
        assert!(d.delta1.is_none() && d.delta2.is_none());
        assert!(matches!(deltas(&d), Err(Error::UndefinedDelta(_))));
    }

    #[test]
    fn nondegeneracy() {
        let g = helicoid().gamma_jet(3.0, 32).unwrap();
        assert!(is_nondegenerate(&g, PI, 1e-8).unwrap());
        assert!(is_nondegenerate(&g, 3.5, 1e-8).unwrap());
        let line = BjorlingData::parse(["t", "0", "t"], None, (0.0, 1.0)).unwrap();
        assert!(!is_nondegenerate(&line.gamma_jet(0.5, 8).unwrap(), 0.3, 1e-8).unwrap());
    }

    #[test]
    fn helicoid_is_folded() {
        let h = helicoid();
        for t in [0.5, 1.0, PI, 5.0] {
            assert_eq!(classify_max(&h, t, 1e-8).unwrap(), SingularityType::Folded);
            assert_eq!(classify_min(&h, t, 1e-8).unwrap(), SingularityType::Folded);
        }
        let line = BjorlingData::parse(["t", "0", "t"], None, (0.0, 1.0)).unwrap();
        assert_eq!(
            classify_max(&line, 0.5, 1e-8).unwrap().kind(),
            SingularityKind::Degenerate
        );
    }

    #[test]
    fn family_classification() {
        let r: f64 = 6.93;
        let n3 = family(vec![1.0, 0.5, 1.0 / 3.0], 1.0 / (3.0 * (r + 1.0).powi(3)));
        assert_eq!(classify_max(&n3, 0.5, 1e-8).unwrap(), SingularityType::CuspidalCrosscap);
        assert_eq!(classify_max(&n3, 0.7, 1e-8).unwrap(), SingularityType::CuspidalEdge);
        assert_eq!(
            classify_min(&n3, 1.0 / 3.0, 1e-8).unwrap(),
            SingularityType::CuspidalCrosscap
        );
        let n2 = family(vec![1.0, 0.5], 1.0 / (2.0 * (r + 1.0).powi(2)));
        assert_eq!(classify_min(&n2, PI, 1e-8).unwrap().kind(), SingularityKind::Degenerate);
    }

    #[test]
    fn weierstrass_classifier() {
        let r: f64 = 6.93;
        let n1 = family(vec![1.0], 1.0 / (r + 1.0));
        let q = min_quad_from_bjorling(&n1, 1.0).unwrap();
        assert_eq!(
            classify_min_weierstrass(&q, 1.0, 1e-8).unwrap(),
            SingularityType::CuspidalCrosscap
        );
        assert_eq!(
            classify_min_weierstrass(&q, 0.4, 1e-8).unwrap(),
            SingularityType::CuspidalEdge
        );
        let d = delta_combos(&q, 1.0).unwrap();
        assert!((d.delta1 - d.delta2).abs() <= 1e-9 * d.delta1.abs());

        let hq = min_quad_from_bjorling(&helicoid(), 1.0).unwrap();
        assert_eq!(
            classify_min_weierstrass(&hq, 1.0, 1e-8).unwrap().kind(),
            SingularityKind::Degenerate
        );
    }

    #[test]
    fn scan_finds_family_crosscaps() {
        let r: f64 = 6.93;
        let n3 = family(vec![1.0, 0.5, 1.0 / 3.0], 1.0 / (3.0 * (r + 1.0).powi(3)));
        for kind in [SurfaceKind::Max, SurfaceKind::Min] {
            let rep = scan_curve(&n3, kind, 200).unwrap();
            let mut pts = rep.points(SingularityKind::CuspidalCrosscap);
            pts.sort_by(f64::total_cmp);
            assert_eq!(pts.len(), 3, "{kind}: {}", rep.to_text());
            for (p, want) in pts.iter().zip([1.0 / 3.0, 0.5, 1.0]) {
                assert!((p - want).abs() <= 1e-8);
            }
        }
        let rep = scan_curve(&helicoid(), SurfaceKind::Max, 50).unwrap();
        assert_eq!(rep.count(SingularityKind::Folded), rep.entries.len());
        assert!(rep
            .to_csv()
            .starts_with("t,type,D23,D12,norm_L,norm_gamma_prime,delta1,delta2\n"));
    }
}
