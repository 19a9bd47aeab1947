//! Weierstrass data of the surfaces built from Björling data.
//!
//! Maxface: `Re int (1/2 (1 + g^2), i/2 (1 - g^2), g) omega` with `g` the
//! analytic extension of `(gamma_1' + i gamma_2') / gamma_3'` (or the same
//! quotient of `L`) and `omega = (gamma_1' - L_2) - i (L_1 + gamma_2')`.
//!
//! Minface: `X(u, v) = A(u - v) + B(u + v)` with
//! `A' = (2 g1, 1 - g1^2, -1 - g1^2) w1hat` and
//! `B' = (-2 g2, 1 - g2^2, 1 + g2^2) w2hat`, where `g1, w1hat` come from
//! `alpha' = (gamma' - L) / 2` and `g2, w2hat` from `beta' = (gamma' + L) / 2`.

use std::fmt;
use std::sync::Arc;

use crate::bjorling::{null_decompose, BjorlingData, DomainRect, NullPair, Surface};
use crate::error::{Error, Result};
use crate::ladder::{Ladder, PiecewiseCurve, PiecewiseSeries};
use crate::lorentz::LorentzVec;
use crate::series::{AnalyticCurve3, ComplexSeries, ComplexVal, PowerSeries, SINGULAR_DENOMINATOR_TOL};

/// Tolerance for agreement of the two Gauss map quotients.
pub const BRANCH_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussBranch {
    /// `(gamma_1' + i gamma_2') / gamma_3'`
    Tangent,
    /// `(L_1 + i L_2) / L_3`
    Field,
    /// Supplied directly.
    Explicit,
}

#[derive(Clone, Debug)]
struct MaxPiece {
    g: ComplexSeries,
    omega: ComplexSeries,
    phi: [ComplexSeries; 3],
    branch: GaussBranch,
}

/// Maxface Weierstrass data `(g, omega = h dz)` on a ladder along the real
/// axis, with the period integrand already integrated piecewise.
#[derive(Clone, Debug)]
pub struct MaxWeierstrass {
    ladder: Ladder,
    pieces: Vec<MaxPiece>,
}

impl MaxWeierstrass {
    /// Builds from explicit `(g, h)` expansions at every ladder center of
    /// `[a, b]`.
    pub fn from_fn(
        interval: (f64, f64),
        mut f: impl FnMut(f64) -> Result<(ComplexSeries, ComplexSeries)>,
    ) -> Result<Self> {
        let ladder = Ladder::over(interval.0, interval.1);
        let raw = ladder
            .centers()
            .iter()
            .map(|&c| f(c).map(|(g, h)| (g, h, GaussBranch::Explicit)))
            .collect::<Result<Vec<_>>>()?;
        MaxWeierstrass::assemble(ladder, raw)
    }

    fn assemble(ladder: Ladder, raw: Vec<(ComplexSeries, ComplexSeries, GaussBranch)>) -> Result<Self> {
        let mut pieces: Vec<MaxPiece> = Vec::with_capacity(raw.len());
        let zero = ComplexVal::new(0.0, 0.0);
        for (k, (g, omega, branch)) in raw.into_iter().enumerate() {
            let g2 = g.mul(&g)?;
            let one = ComplexVal::new(1.0, 0.0);
            let f1 = g2.add_constant(one).mul(&omega)?.scale(ComplexVal::new(0.5, 0.0));
            let f2 = g2
                .scale(ComplexVal::new(-1.0, 0.0))
                .add_constant(one)
                .mul(&omega)?
                .scale(ComplexVal::new(0.0, 0.5));
            let f3 = g.mul(&omega)?;
            let mut phi = [f1, f2, f3].map(|f| f.antiderivative(zero));
            if k > 0 {
                let m = ComplexVal::new(ladder.junction(k), 0.0);
                for (i, p) in phi.iter_mut().enumerate() {
                    let offset = pieces[k - 1].phi[i].eval_at(m)? - p.eval_at(m)?;
                    *p = p.add_constant(offset);
                }
            }
            pieces.push(MaxPiece { g, omega, phi, branch });
        }
        Ok(MaxWeierstrass { ladder, pieces })
    }

    fn piece(&self, x: f64) -> &MaxPiece {
        &self.pieces[self.ladder.nearest(x)]
    }

    pub fn ladder(&self) -> &Ladder {
        &self.ladder
    }

    pub fn g_at(&self, z: ComplexVal) -> Result<ComplexVal> {
        self.piece(z.re).g.eval_at(z)
    }

    /// Coefficient `h` of `omega = h dz`.
    pub fn omega_at(&self, z: ComplexVal) -> Result<ComplexVal> {
        self.piece(z.re).omega.eval_at(z)
    }

    /// Expansion of `g` used near `x`.
    pub fn g_series(&self, x: f64) -> &ComplexSeries {
        &self.piece(x).g
    }

    pub fn omega_series(&self, x: f64) -> &ComplexSeries {
        &self.piece(x).omega
    }

    pub fn branch_at(&self, x: f64) -> GaussBranch {
        self.piece(x).branch
    }

    /// Holomorphic primitive of `(1/2 (1 + g^2), i/2 (1 - g^2), g) omega`.
    pub fn primitive_at(&self, z: ComplexVal) -> Result<[ComplexVal; 3]> {
        let p = self.piece(z.re);
        Ok([p.phi[0].eval_at(z)?, p.phi[1].eval_at(z)?, p.phi[2].eval_at(z)?])
    }
}

/// Extracts the maxface Weierstrass data of Björling data.
pub fn max_gauss_from_bjorling(data: &BjorlingData) -> Result<MaxWeierstrass> {
    let order = data.order();
    let ladder = data.ladder().clone();
    let mut raw = Vec::with_capacity(ladder.len());
    for &c in ladder.centers() {
        let tp = data.tangent_jet(c, order)?;
        let l = data.field_jet(c, order)?;
        let quotient = |v: &AnalyticCurve3| -> Result<ComplexSeries> {
            let den = v.component(2);
            Ok(ComplexSeries::new(v.component(0).div(den)?, v.component(1).div(den)?))
        };
        let (dt, dl) = (tp.component(2).value().abs(), l.component(2).value().abs());
        let ok_t = dt > SINGULAR_DENOMINATOR_TOL;
        let ok_l = dl > SINGULAR_DENOMINATOR_TOL;
        let (g, branch) = match (ok_t, ok_l) {
            (false, false) => return Err(Error::UndefinedGauss(c)),
            (true, false) => (quotient(&tp)?, GaussBranch::Tangent),
            (false, true) => (quotient(&l)?, GaussBranch::Field),
            (true, true) => {
                let gt = quotient(&tp)?;
                let gl = quotient(&l)?;
                let deviation = (gt.value() - gl.value()).norm() / gt.value().norm().max(1.0);
                if deviation.is_nan() || deviation > BRANCH_TOL {
                    return Err(Error::BranchMismatch { t: c, deviation });
                }
                if dt >= dl {
                    (gt, GaussBranch::Tangent)
                } else {
                    (gl, GaussBranch::Field)
                }
            }
        };
        let re = tp.component(0).sub(l.component(1))?;
        let im = l.component(0).add(tp.component(1))?.neg();
        raw.push((g, ComplexSeries::new(re, im), branch));
    }
    MaxWeierstrass::assemble(ladder, raw)
}

/// `f(z) = Re(Phi(z) - Phi(base)) + basept`.
#[derive(Clone, Debug)]
pub struct MaxWeierstrassSurface {
    wd: MaxWeierstrass,
    basept: LorentzVec,
    phi_base: [ComplexVal; 3],
}

impl Surface for MaxWeierstrassSurface {
    fn eval(&self, u: f64, v: f64) -> Result<LorentzVec> {
        let phi = self.wd.primitive_at(ComplexVal::new(u, v))?;
        let d = |k: usize| (phi[k] - self.phi_base[k]).re;
        LorentzVec::checked(d(0), d(1), d(2)).map(|x| x + self.basept)
    }
}

pub fn maxface_from_weierstrass(
    wd: &MaxWeierstrass,
    base: ComplexVal,
    basept: LorentzVec,
) -> Result<MaxWeierstrassSurface> {
    Ok(MaxWeierstrassSurface {
        phi_base: wd.primitive_at(base)?,
        wd: wd.clone(),
        basept,
    })
}

/// Expansions of the minface quadruple about one center.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalQuad {
    pub g1: PowerSeries,
    pub g2: PowerSeries,
    pub w1hat: PowerSeries,
    pub w2hat: PowerSeries,
}

impl LocalQuad {
    pub fn center(&self) -> f64 {
        self.g1.center()
    }

    /// `A'` with `A(u - v)` the first null curve of the surface.
    pub fn first_integrand(&self) -> Result<AnalyticCurve3> {
        let sq = self.g1.mul(&self.g1)?;
        AnalyticCurve3::new(
            self.g1.mul(&self.w1hat)?.scale(2.0),
            sq.neg().add_constant(1.0).mul(&self.w1hat)?,
            sq.add_constant(1.0).mul(&self.w1hat)?.neg(),
        )
    }

    /// `B'` with `B(u + v)` the second null curve of the surface.
    pub fn second_integrand(&self) -> Result<AnalyticCurve3> {
        let sq = self.g2.mul(&self.g2)?;
        AnalyticCurve3::new(
            self.g2.mul(&self.w2hat)?.scale(-2.0),
            sq.neg().add_constant(1.0).mul(&self.w2hat)?,
            sq.add_constant(1.0).mul(&self.w2hat)?,
        )
    }
}

type QuadGen = dyn Fn(f64, usize) -> Result<LocalQuad> + Send + Sync;

/// How a [`MinQuad`] was obtained from Björling data.
#[derive(Clone, Debug)]
pub struct QuadDerivation {
    pub data: BjorlingData,
    pub x0: f64,
    pub null_pair: NullPair,
}

impl QuadDerivation {
    /// `c = L_3 / gamma_3'` about `t`.
    pub fn c(&self, t: f64, order: usize) -> Result<PowerSeries> {
        let tp = self.data.tangent_jet(t, order)?;
        let l = self.data.field_jet(t, order)?;
        l.component(2).div(tp.component(2))
    }

    /// `d = gamma_3' / L_3` about `t`.
    pub fn d(&self, t: f64, order: usize) -> Result<PowerSeries> {
        let tp = self.data.tangent_jet(t, order)?;
        let l = self.data.field_jet(t, order)?;
        tp.component(2).div(l.component(2))
    }
}

/// The real Weierstrass quadruple `(g1, g2, w1hat, w2hat)` of a minface,
/// available as an expansion about any point.
#[derive(Clone)]
pub struct MinQuad {
    gen: Arc<QuadGen>,
    order: usize,
    derivation: Option<QuadDerivation>,
}

impl fmt::Debug for MinQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MinQuad")
            .field("order", &self.order)
            .field("derived", &self.derivation.is_some())
            .finish_non_exhaustive()
    }
}

impl MinQuad {
    pub fn from_fn(order: usize, f: impl Fn(f64, usize) -> Result<LocalQuad> + Send + Sync + 'static) -> Self {
        MinQuad {
            gen: Arc::new(f),
            order,
            derivation: None,
        }
    }

    /// Constant quadruple.
    pub fn constant(g1: f64, g2: f64, w1hat: f64, w2hat: f64) -> Self {
        MinQuad::from_fn(1, move |c, n| {
            Ok(LocalQuad {
                g1: PowerSeries::constant(c, g1, n),
                g2: PowerSeries::constant(c, g2, n),
                w1hat: PowerSeries::constant(c, w1hat, n),
                w2hat: PowerSeries::constant(c, w2hat, n),
            })
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn derivation(&self) -> Option<&QuadDerivation> {
        self.derivation.as_ref()
    }

    pub fn local(&self, t: f64, order: usize) -> Result<LocalQuad> {
        (self.gen)(t, order)
    }

    /// `(g1, g2, w1hat, w2hat)` at `t`.
    pub fn values_at(&self, t: f64) -> Result<[f64; 4]> {
        let q = self.local(t, 0)?;
        Ok([q.g1.value(), q.g2.value(), q.w1hat.value(), q.w2hat.value()])
    }
}

/// Quadruple expansions about `t` computed from `alpha' = (gamma' - L)/2`
/// and `beta' = (gamma' + L)/2`.
pub fn local_quad(data: &BjorlingData, t: f64, order: usize) -> Result<LocalQuad> {
    let tp = data.tangent_jet(t, order)?;
    let l = data.field_jet(t, order)?;
    let ap = tp.sub(&l)?.scale(0.5);
    let bp = tp.add(&l)?.scale(0.5);
    let den1 = ap.component(1).sub(ap.component(2))?;
    let den2 = bp.component(1).add(bp.component(2))?;
    if den1.value().abs() <= SINGULAR_DENOMINATOR_TOL || den2.value().abs() <= SINGULAR_DENOMINATOR_TOL {
        return Err(Error::DegenerateCharacteristic(t));
    }
    Ok(LocalQuad {
        g1: ap.component(0).div(&den1)?,
        g2: bp.component(0).neg().div(&den2)?,
        w1hat: den1.scale(0.5),
        w2hat: den2.scale(0.5),
    })
}

pub fn min_quad_from_bjorling(data: &BjorlingData, x0: f64) -> Result<MinQuad> {
    let null_pair = null_decompose(data, x0)?;
    let d = data.clone();
    Ok(MinQuad {
        gen: Arc::new(move |t, n| local_quad(&d, t, n)),
        order: data.order(),
        derivation: Some(QuadDerivation {
            data: data.clone(),
            x0,
            null_pair,
        }),
    })
}

/// Surface integrated from a quadruple over a characteristic span.
#[derive(Clone, Debug)]
pub struct QuadSurface {
    first: PiecewiseCurve,
    second: PiecewiseCurve,
    offset: LorentzVec,
}

impl QuadSurface {
    pub fn first_curve(&self) -> &PiecewiseCurve {
        &self.first
    }

    pub fn second_curve(&self) -> &PiecewiseCurve {
        &self.second
    }
}

impl Surface for QuadSurface {
    fn eval(&self, u: f64, v: f64) -> Result<LorentzVec> {
        Ok(self.first.eval_real(u - v)? + self.second.eval_real(u + v)? + self.offset)
    }
}

/// Builds `X(u, v) = basept + A(u - v) - A(t0) + B(u + v) - B(s0)` with
/// `(t0, s0)` the characteristic coordinates of `origin`. Both `u - v`
/// and `u + v` are expected to stay in `span`.
pub fn minface_from_quad(q: &MinQuad, basept: LorentzVec, origin: (f64, f64), span: (f64, f64)) -> Result<QuadSurface> {
    let ladder = Ladder::over(span.0, span.1);
    let locals = ladder
        .centers()
        .iter()
        .map(|&c| q.local(c, q.order))
        .collect::<Result<Vec<_>>>()?;
    let mut it = locals.iter();
    let first = PiecewiseCurve::build(ladder.clone(), |_| it.next().expect("one per center").first_integrand())?
        .antiderivative(LorentzVec::ZERO)?;
    let mut it = locals.iter();
    let second = PiecewiseCurve::build(ladder, |_| it.next().expect("one per center").second_integrand())?
        .antiderivative(LorentzVec::ZERO)?;
    let (u0, v0) = origin;
    let offset = basept - first.eval_real(u0 - v0)? - second.eval_real(u0 + v0)?;
    Ok(QuadSurface { first, second, offset })
}

/// Points of `region` where `g1(u - v) g2(u + v) = 1`: lattice nodes where
/// the defect is negligible plus sign changes along lattice edges, refined
/// by bisection to 1e-10.
pub fn min_singular_locus(q: &MinQuad, region: &DomainRect, grid: usize) -> Result<Vec<(f64, f64)>> {
    let grid = grid.max(2);
    let ((u0, u1), (v0, v1)) = region.bounds();
    let lo = (u0 - v1).min(u0 + v0);
    let hi = (u1 - v0).max(u1 + v1);
    let ladder = Ladder::over(lo, hi);
    let g1 = PiecewiseSeries::build(ladder.clone(), |c| Ok(q.local(c, q.order)?.g1))?;
    let g2 = PiecewiseSeries::build(ladder, |c| Ok(q.local(c, q.order)?.g2))?;
    let defect = |u: f64, v: f64| -> Result<f64> { Ok(g1.eval_real(u - v)? * g2.eval_real(u + v)? - 1.0) };

    let du = (u1 - u0) / (grid - 1) as f64;
    let dv = (v1 - v0) / (grid - 1) as f64;
    let node = |i: usize, j: usize| (u0 + i as f64 * du, v0 + j as f64 * dv);
    let mut values = vec![None; grid * grid];
    for j in 0..grid {
        for i in 0..grid {
            let (u, v) = node(i, j);
            if region.contains(u, v) {
                values[j * grid + i] = Some(defect(u, v)?);
            }
        }
    }

    let mut out = Vec::new();
    let zero_tol = 1e-12;
    for j in 0..grid {
        for i in 0..grid {
            let Some(fa) = values[j * grid + i] else { continue };
            let (ua, va) = node(i, j);
            if fa.abs() <= zero_tol {
                out.push((ua, va));
                continue;
            }
            for (ni, nj) in [(i + 1, j), (i, j + 1)] {
                if ni >= grid || nj >= grid {
                    continue;
                }
                let Some(fb) = values[nj * grid + ni] else { continue };
                if fb.abs() <= zero_tol || fa.signum() == fb.signum() {
                    continue;
                }
                let (ub, vb) = node(ni, nj);
                let (mut lo_s, mut hi_s, mut flo) = (0.0_f64, 1.0_f64, fa);
                let len = (ub - ua).abs().max((vb - va).abs());
                while (hi_s - lo_s) * len > 1e-10 {
                    let mid = 0.5 * (lo_s + hi_s);
                    let fm = defect(ua + mid * (ub - ua), va + mid * (vb - va))?;
                    if fm == 0.0 {
                        lo_s = mid;
                        hi_s = mid;
                        break;
                    }
                    if fm.signum() == flo.signum() {
                        lo_s = mid;
                        flo = fm;
                    } else {
                        hi_s = mid;
                    }
                }
                let s = 0.5 * (lo_s + hi_s);
                out.push((ua + s * (ub - ua), va + s * (vb - va)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bjorling::CurveField;
    use std::f64::consts::{FRAC_PI_2, TAU};

    fn helicoid() -> BjorlingData {
        BjorlingData::parse(["cos(t)", "sin(t)", "t"], None, (0.0, TAU)).unwrap()
    }

    #[test]
    fn helicoid_gauss_map() {
        let wd = max_gauss_from_bjorling(&helicoid()).unwrap();
        let g0 = wd.g_at(ComplexVal::new(0.0, 0.0)).unwrap();
        assert!((g0 - ComplexVal::new(0.0, 1.0)).norm() < 1e-15);
        for t in [0.4, 2.0, 5.5] {
            let g = wd.g_at(ComplexVal::new(t, 0.0)).unwrap();
            assert!((g - ComplexVal::new(-t.sin(), t.cos())).norm() < 1e-13);
        }
        let off = wd.g_at(ComplexVal::new(1.0, 0.3)).unwrap();
        assert!((off.norm() - 1.0).abs() > 0.1);
    }

    #[test]
    fn null_line_gauss_map_is_constant() {
        let th: f64 = 0.7;
        let (c, s) = (format!("{}*t", th.cos()), format!("{}*t", th.sin()));
        let d = BjorlingData::parse([&c, &s, "t"], None, (-1.0, 1.0)).unwrap();
        let wd = max_gauss_from_bjorling(&d).unwrap();
        for t in [-0.9, 0.0, 0.6] {
            let g = wd.g_at(ComplexVal::new(t, 0.1)).unwrap();
            assert!((g - ComplexVal::from_polar(1.0, th)).norm() < 1e-14);
        }
    }

    #[test]
    fn undefined_gauss() {
        let d = BjorlingData::parse(["t", "0", "0"], None, (0.0, 1.0)).unwrap();
        assert!(matches!(max_gauss_from_bjorling(&d), Err(Error::UndefinedGauss(_))));
    }

    #[test]
    fn plane_from_constant_data() {
        let wd = MaxWeierstrass::from_fn((-1.0, 1.0), |c| {
            Ok((
                ComplexSeries::constant(c, ComplexVal::new(0.0, 0.0), 4),
                ComplexSeries::constant(c, ComplexVal::new(1.0, 0.0), 4),
            ))
        })
        .unwrap();
        let f = maxface_from_weierstrass(&wd, ComplexVal::new(0.0, 0.0), LorentzVec::ZERO).unwrap();
        for (u, v) in [(0.3, 0.2), (-0.8, 0.5), (0.0, 0.0)] {
            let x = f.eval(u, v).unwrap();
            assert!((x - LorentzVec::new(u / 2.0, -v / 2.0, 0.0)).max_abs() < 1e-15);
        }
        let p = LorentzVec::new(1.0, 2.0, 3.0);
        let f = maxface_from_weierstrass(&wd, ComplexVal::new(0.4, -0.1), p).unwrap();
        assert_eq!(f.eval(0.4, -0.1).unwrap(), p);
    }

    #[test]
    fn helicoid_quadruple_at_half_pi() {
        let q = min_quad_from_bjorling(&helicoid(), 1.0).unwrap();
        let [g1, g2, w1, w2] = q.values_at(FRAC_PI_2).unwrap();
        assert!((g1 - 1.0).abs() < 1e-15);
        assert!((g2 - 1.0).abs() < 1e-15);
        assert!((w1 + 0.25).abs() < 1e-15);
        assert!((w2 - 0.25).abs() < 1e-15);
        for t in [0.5, 1.7, 4.0] {
            let [g1, g2, ..] = q.values_at(t).unwrap();
            assert!((g1 * g2 - 1.0).abs() < 1e-13);
        }
        assert!(matches!(q.local(0.0, 4), Err(Error::DegenerateCharacteristic(_))));
    }

    #[test]
    fn constant_quadruple_gives_null_plane() {
        let q = MinQuad::constant(0.0, 0.0, 0.5, 0.5);
        let basept = LorentzVec::new(1.0, 0.0, 0.0);
        let x = minface_from_quad(&q, basept, (0.2, 0.1), (-2.0, 2.0)).unwrap();
        assert_eq!(x.eval(0.2, 0.1).unwrap(), basept);
        let h = 1e-3;
        let xu = (x.eval(0.3 + h, 0.0).unwrap() - x.eval(0.3 - h, 0.0).unwrap()) * (0.5 / h);
        let xv = (x.eval(0.3, h).unwrap() - x.eval(0.3, -h).unwrap()) * (0.5 / h);
        assert!(xu.norm_sq().abs() > 0.1);
        let (a, b) = ((xu - xv) * 0.5, (xu + xv) * 0.5);
        assert!(a.norm_sq().abs() < 1e-12 && b.norm_sq().abs() < 1e-12);
        assert!((a - LorentzVec::new(0.0, 0.5, -0.5)).max_abs() < 1e-10);
        assert!((b - LorentzVec::new(0.0, 0.5, 0.5)).max_abs() < 1e-10);
    }

    #[test]
    fn singular_locus() {
        let q = min_quad_from_bjorling(&helicoid(), 1.0).unwrap();
        let region = DomainRect::rect((0.9, 2.2), (-0.3, 0.3));
        let pts = min_singular_locus(&q, &region, 21).unwrap();
        assert!(pts.len() >= 21);
        assert!(pts.iter().all(|&(_, v)| v.abs() <= 1e-8));

        let q = MinQuad::constant(2.0, 2.0, 1.0, 1.0);
        assert!(min_singular_locus(&q, &region, 11).unwrap().is_empty());
    }

    #[test]
    fn branch_agreement_on_family_data() {
        let gamma = CurveField::parse(["cos(t)", "sin(t)", "t"]).unwrap();
        let d = BjorlingData::new(
            gamma.clone(),
            CurveField::scaled_tangent(&gamma, vec![1.0, 0.5], 0.3),
            (0.0, TAU),
            32,
        )
        .unwrap();
        let wd = max_gauss_from_bjorling(&d).unwrap();
        let g = wd.g_at(ComplexVal::new(2.0, 0.0)).unwrap();
        assert!((g - ComplexVal::new(-2f64.sin(), 2f64.cos())).norm() < 1e-13);
    }
}
