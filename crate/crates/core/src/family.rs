//! The crosscap family `L_n = gamma' / (n (r + 1)^n) prod_{i=1}^n (w - 1/i)`
//! and the sup-norm distance of its surfaces to the `L = 0` surface.

use std::fmt::Write as _;

use crate::bjorling::{validate, BjorlingData, CurveField, DomainRect, Surface, SurfaceKind};
use crate::dsl::CurveSpec;
use crate::error::{Error, Result};
use crate::series::ComplexVal;
use crate::singularity::{scan_curve_with, SingularityKind, DEFAULT_ZERO_TOL};

pub const DEFAULT_GRID: usize = 101;
pub const DEFAULT_SCAN_SAMPLES: usize = 200;

/// Smallest radius (plus 10%) of a ball about the origin containing the
/// closure of `domain`; rectangles are read as sets of `u + iv`, the
/// diamond through `max |u +- v|`.
pub fn domain_radius(domain: &DomainRect) -> f64 {
    match *domain {
        DomainRect::Rect {
            u: (u0, u1),
            v: (v0, v1),
        } => [(u0, v0), (u0, v1), (u1, v0), (u1, v1)]
            .iter()
            .map(|&(u, v)| f64::hypot(u, v))
            .fold(0.0, f64::max),
        DomainRect::Diamond { a, b, .. } => a.abs().max(b.abs()),
    }
}

pub fn choose_radius(max_domain: &DomainRect, min_domain: &DomainRect) -> f64 {
    1.1 * domain_radius(max_domain).max(domain_radius(min_domain))
}

/// Scalar factor `1 / (n (r + 1)^n)`.
pub fn family_scale(n: usize, r: f64) -> f64 {
    1.0 / (n as f64 * (r + 1.0).powi(n as i32))
}

/// The crosscap locations `1, 1/2, ..., 1/n`.
pub fn crosscap_points(n: usize) -> Vec<f64> {
    (1..=n).map(|i| 1.0 / i as f64).collect()
}

/// `L_n`; `n = 0` gives the exactly vanishing field.
pub fn perturbation_field(gamma: &CurveField, n: usize, r: f64) -> CurveField {
    if n == 0 {
        return CurveField::zero();
    }
    CurveField::scaled_tangent(gamma, crosscap_points(n), family_scale(n, r))
}

/// A curve together with the domains on which its family is compared.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub n: usize,
    pub r: f64,
    pub gamma: CurveField,
    pub interval: (f64, f64),
    pub max_domain: DomainRect,
    pub min_domain: DomainRect,
    pub order: usize,
}

impl FamilyParams {
    /// `Omega = (a, b) x (-v_max, v_max)`, the diamond over `(a, b)`
    /// clipped to the same `v` range, and `r` from [`choose_radius`].
    pub fn new(gamma: CurveField, interval: (f64, f64), v_max: f64, order: usize) -> Self {
        let (a, b) = interval;
        let max_domain = DomainRect::rect((a, b), (-v_max, v_max));
        let min_domain = DomainRect::clipped_diamond(a, b, v_max);
        FamilyParams {
            n: 1,
            r: choose_radius(&max_domain, &min_domain),
            gamma,
            interval,
            max_domain,
            min_domain,
            order,
        }
    }

    pub fn from_spec(spec: &CurveSpec, v_max: f64, order: usize) -> Self {
        FamilyParams::new(CurveField::from_exprs(spec.gamma.clone()), spec.interval, v_max, order)
    }

    /// The helicoid `(cos t, sin t, t)` on `(0, 2 pi)` with `|v| < 0.5`.
    pub fn helicoid(order: usize) -> Result<Self> {
        let gamma = CurveField::parse(["cos(t)", "sin(t)", "t"])?;
        Ok(FamilyParams::new(gamma, (0.0, std::f64::consts::TAU), 0.5, order))
    }

    pub fn with_n(&self, n: usize) -> Self {
        FamilyParams { n, ..self.clone() }
    }

    pub fn domain(&self, kind: SurfaceKind) -> DomainRect {
        match kind {
            SurfaceKind::Max => self.max_domain,
            SurfaceKind::Min => self.min_domain,
        }
    }

    pub fn field(&self) -> CurveField {
        perturbation_field(&self.gamma, self.n, self.r)
    }

    /// `{gamma, L_n}` without validation.
    pub fn data(&self) -> Result<BjorlingData> {
        BjorlingData::new(self.gamma.clone(), self.field(), self.interval, self.order)
    }

    /// The `L = 0` data the family converges to.
    pub fn base_data(&self) -> Result<BjorlingData> {
        self.with_n(0).data()
    }
}

/// Validated family data for surfaces of `kind`.
pub fn family_member(params: &FamilyParams, kind: SurfaceKind) -> Result<BjorlingData> {
    let data = params.data()?;
    let report = validate(&data, 64, DEFAULT_ZERO_TOL)?;
    let failures = report.failures(kind);
    if !failures.is_empty() {
        let names: Vec<String> = failures.iter().map(|c| c.condition.to_string()).collect();
        return Err(Error::InvalidData(format!("n = {}: {}", params.n, names.join("; "))));
    }
    Ok(data)
}

/// Sup-norm estimate on a lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupNorm {
    /// Value on the refined lattice.
    pub value: f64,
    /// Value on the coarse lattice.
    pub coarse: f64,
    /// Refined lattice spacing `(du, dv)`.
    pub spacing: (f64, f64),
}

fn lattice(region: &DomainRect, grid: usize) -> (Vec<(f64, f64)>, (f64, f64)) {
    let grid = grid.max(2);
    let ((u0, u1), (v0, v1)) = region.bounds();
    let du = (u1 - u0) / (grid - 1) as f64;
    let dv = (v1 - v0) / (grid - 1) as f64;
    let mut pts = Vec::with_capacity(grid * grid);
    for j in 0..grid {
        let v = if j == grid - 1 { v1 } else { v0 + j as f64 * dv };
        for i in 0..grid {
            let u = if i == grid - 1 { u1 } else { u0 + i as f64 * du };
            if region.contains(u, v) {
                pts.push((u, v));
            }
        }
    }
    (pts, (du, dv))
}

fn sup_on<F>(pts: &[(f64, f64)], f: F) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = pts.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = pts
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || c.iter().try_fold(0.0_f64, |m, &(u, v)| Ok(m.max(f(u, v)?))))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .try_fold(0.0_f64, |m, r: Result<f64>| Ok(m.max(r?)))
    })
}

/// `sup |X - Y|` with `|.|` the largest coordinate modulus, over a single
/// `grid x grid` lattice of the region's bounding box clipped to the
/// region.
pub fn sup_norm_on_grid(
    x: &dyn Surface,
    y: &dyn Surface,
    region: &DomainRect,
    grid: usize,
) -> Result<(f64, (f64, f64))> {
    let (pts, spacing) = lattice(region, grid);
    let value = sup_on(&pts, |u, v| Ok((x.eval(u, v)? - y.eval(u, v)?).max_abs()))?;
    Ok((value, spacing))
}

/// Sup-norm distance on `grid` and on the refined lattice with
/// `2 grid - 1` points per side; the refined value is reported.
pub fn sup_norm_distance(x: &dyn Surface, y: &dyn Surface, region: &DomainRect, grid: usize) -> Result<SupNorm> {
    let (coarse, _) = sup_norm_on_grid(x, y, region, grid)?;
    let (value, spacing) = sup_norm_on_grid(x, y, region, 2 * grid.max(2) - 1)?;
    Ok(SupNorm { value, coarse, spacing })
}

/// `sup |L(u + iv)|` over a rectangle by analytic continuation of `L`.
pub fn sup_norm_field(data: &BjorlingData, region: &DomainRect, grid: usize) -> Result<f64> {
    let (pts, _) = lattice(region, grid);
    sup_on(&pts, |u, v| {
        let l = data.field_at_complex(ComplexVal::new(u, v))?;
        Ok(l.iter().map(|c| c.norm()).fold(0.0, f64::max))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub sup_norm_l: f64,
    pub sup_dist_max: f64,
    pub sup_dist_min: f64,
    /// Crosscaps of the minface along the curve.
    pub crosscap_count: usize,
    /// Crosscaps of the maxface along the curve.
    pub crosscap_count_max: usize,
    pub spacing_max: (f64, f64),
    pub spacing_min: (f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceOptions {
    pub grid: usize,
    pub scan_samples: usize,
    pub tol: f64,
}

impl Default for ConvergenceOptions {
    fn default() -> Self {
        ConvergenceOptions {
            grid: DEFAULT_GRID,
            scan_samples: DEFAULT_SCAN_SAMPLES,
            tol: DEFAULT_ZERO_TOL,
        }
    }
}

/// One row: distances of the `n`-th surfaces to the `L = 0` surfaces and
/// crosscap counts.
pub fn convergence_row(
    params: &FamilyParams,
    base: &BjorlingData,
    opts: &ConvergenceOptions,
) -> Result<ConvergenceRow> {
    let n = params.n;
    let data = params.data()?;
    let dmax = sup_norm_distance(&data.maxface(), &base.maxface(), &params.max_domain, opts.grid)?;
    let dmin = sup_norm_distance(&data.minface(), &base.minface(), &params.min_domain, opts.grid)?;
    let sup_l = sup_norm_field(&data, &params.max_domain, 2 * opts.grid - 1)?;
    let candidates = crosscap_points(n);
    let count = |kind| -> Result<usize> {
        let rep = scan_curve_with(&data, kind, opts.scan_samples, opts.tol, &candidates)?;
        Ok(rep.count(SingularityKind::CuspidalCrosscap))
    };
    Ok(ConvergenceRow {
        n,
        sup_norm_l: sup_l,
        sup_dist_max: dmax.value,
        sup_dist_min: dmin.value,
        crosscap_count: count(SurfaceKind::Min)?,
        crosscap_count_max: count(SurfaceKind::Max)?,
        spacing_max: dmax.spacing,
        spacing_min: dmin.spacing,
    })
}

/// Rows for `n = 1..=n_max`.
pub fn convergence_table(
    params: &FamilyParams,
    n_max: usize,
    opts: &ConvergenceOptions,
) -> Result<Vec<ConvergenceRow>> {
    let base = params.base_data()?;
    (1..=n_max)
        .map(|n| convergence_row(&params.with_n(n), &base, opts))
        .collect()
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("n,sup_norm_L,sup_dist_max,sup_dist_min,crosscap_count\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{:.16e},{:.16e},{:.16e},{}",
            r.n, r.sup_norm_l, r.sup_dist_max, r.sup_dist_min, r.crosscap_count
        );
    }
    s
}

pub fn convergence_text(rows: &[ConvergenceRow]) -> String {
    let mut s = format!(
        "{:>3} {:>12} {:>12} {:>12} {:>10} {:>10}\n",
        "n", "sup|L_n|", "dist max", "dist min", "n*dist max", "crosscaps"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>3} {:>12.4e} {:>12.4e} {:>12.4e} {:>10.4e} {:>10}",
            r.n,
            r.sup_norm_l,
            r.sup_dist_max,
            r.sup_dist_min,
            r.n as f64 * r.sup_dist_max,
            r.crosscap_count
        );
    }
    s
}
