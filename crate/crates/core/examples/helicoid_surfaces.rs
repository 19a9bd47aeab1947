//! Helicoid maxface and minface from `gamma = (cos t, sin t, t)`, `L = 0`,
//! compared with their closed forms and written as OBJ meshes.
//!
//! cargo run --example helicoid_surfaces -- [out_dir]

use std::f64::consts::TAU;
use std::path::PathBuf;

use bjorling::bjorling::{BjorlingData, DomainRect, SurfaceKind};
use bjorling::lorentz::LorentzVec;
use bjorling::surface::{export_obj, sample_patch};

fn main() -> anyhow::Result<()> {
    let out: PathBuf = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    let data = BjorlingData::parse(["cos(t)", "sin(t)", "t"], None, (0.0, TAU))?;

    let mut err_max = 0.0_f64;
    let mut err_min = 0.0_f64;
    for j in 0..=8 {
        let v = -0.4 + 0.1 * j as f64;
        for i in 0..=20 {
            let u = 0.2 + i as f64 * (TAU - 0.4) / 20.0;
            let x = data.maxface_eval(u, v)?;
            err_max = err_max.max((x - LorentzVec::new(u.cos() * v.cosh(), u.sin() * v.cosh(), u)).max_abs());
            if let Ok(y) = data.minface_eval(u, v) {
                err_min = err_min.max((y - LorentzVec::new(u.cos() * v.cos(), u.sin() * v.cos(), u)).max_abs());
            }
        }
    }
    println!("maxface vs (cos u cosh v, sin u cosh v, u): {err_max:.2e}");
    println!("minface vs (cos u cos v, sin u cos v, u):   {err_min:.2e}");

    for kind in [SurfaceKind::Max, SurfaceKind::Min] {
        let region = match kind {
            SurfaceKind::Max => DomainRect::rect((0.0, TAU), (-0.5, 0.5)),
            SurfaceKind::Min => DomainRect::clipped_diamond(0.0, TAU, 0.5),
        };
        let patch = sample_patch(&*data.surface(kind), &region, 81, 21)?;
        let path = out.join(format!("helicoid_{}.obj", kind.name()));
        export_obj(&patch, &path)?;
        println!(
            "{}: {} vertices, {} singular, written to {}",
            kind,
            patch.present(),
            patch.singular_count(),
            path.display()
        );
    }
    Ok(())
}
