//! Members of the crosscap family over the helicoid: crosscaps at
//! `1, 1/2, ..., 1/n` and OBJ meshes of both surfaces.
//!
//! cargo run --example crosscap_family -- [n] [out_dir]

use std::path::PathBuf;

use bjorling::bjorling::SurfaceKind;
use bjorling::family::{crosscap_points, family_member, FamilyParams};
use bjorling::singularity::{scan_curve_with, SingularityKind, DEFAULT_ZERO_TOL};
use bjorling::surface::{export_obj, sample_patch};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(3), |s| s.parse())?;
    let out: PathBuf = args.next().map_or_else(std::env::temp_dir, PathBuf::from);

    let params = FamilyParams::helicoid(32)?.with_n(n);
    println!("n = {n}, r = {:.4}", params.r);
    for kind in [SurfaceKind::Max, SurfaceKind::Min] {
        let data = family_member(&params, kind)?;
        let report = scan_curve_with(&data, kind, 200, DEFAULT_ZERO_TOL, &crosscap_points(n))?;
        println!(
            "{kind}: crosscaps at {:?}",
            report.points(SingularityKind::CuspidalCrosscap)
        );

        let patch = sample_patch(&*data.surface(kind), &params.domain(kind), 121, 31)?;
        let path = out.join(format!("crosscap_{n}_{}.obj", kind.name()));
        export_obj(&patch, &path)?;
        println!(
            "{kind}: {} singular vertices, mesh at {}",
            patch.singular_count(),
            path.display()
        );
    }
    Ok(())
}
