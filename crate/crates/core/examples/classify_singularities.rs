//! Singular points along the curve for a few data sets.

use std::f64::consts::TAU;

use bjorling::bjorling::{BjorlingData, CurveField, SurfaceKind};
use bjorling::singularity::{classify, scan_curve};

fn main() -> anyhow::Result<()> {
    let helicoid = BjorlingData::parse(["cos(t)", "sin(t)", "t"], None, (0.0, TAU))?;
    println!(
        "helicoid, L = 0, maxface at t = 1: {:?}",
        classify(&helicoid, SurfaceKind::Max, 1.0, 1e-8)?
    );

    let gamma = CurveField::parse(["cos(t)", "sin(t)", "t"])?;
    let crosscaps = helicoid.with_field(CurveField::scaled_tangent(&gamma, vec![1.0, 0.5], 0.05))?;
    let report = scan_curve(&crosscaps, SurfaceKind::Min, 64)?;
    print!("L = gamma' (t - 1)(t - 1/2) / 20, minface\n{}", report.to_text());

    let catenary = BjorlingData::parse(
        ["t", "cosh(t)", "sinh(t)"],
        Some(["(0.5 - t)/4", "(0.5 - t)*sinh(t)/4", "(0.5 - t)*cosh(t)/4"]),
        (-1.0, 1.5),
    )?;
    for kind in [SurfaceKind::Max, SurfaceKind::Min] {
        let report = scan_curve(&catenary, kind, 10)?;
        print!("catenary data, {kind}\n{}", report.to_text());
    }
    Ok(())
}
