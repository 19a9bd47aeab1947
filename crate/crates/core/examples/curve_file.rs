//! Loading curve files and reporting the side conditions.
//!
//! cargo run --example curve_file -- [path.toml]

use bjorling::bjorling::{validate, BjorlingData, SurfaceKind};
use bjorling::dsl::{parse_curve_file, read_curve_file};

fn main() -> anyhow::Result<()> {
    let spec = match std::env::args().nth(1) {
        Some(path) => read_curve_file(path)?,
        None => parse_curve_file(include_str!("../curves/catenary.toml"), "catenary.toml")?,
    };
    println!("{:?} on {:?}", spec.name, spec.interval);
    println!("gamma = ({}, {}, {})", spec.gamma[0], spec.gamma[1], spec.gamma[2]);

    let data = BjorlingData::from_spec(&spec, 32)?;
    let report = validate(&data, 100, 1e-8)?;
    print!("{report}");
    for kind in [SurfaceKind::Max, SurfaceKind::Min] {
        println!(
            "{kind}: {}",
            if report.passes(kind) { "admissible" } else { "rejected" }
        );
    }

    let bad = "gamma = [\"cos(t)\", \"sin(t\", \"t\"]\nL = \"zero\"\ninterval = [0, 1]\n";
    if let Err(e) = parse_curve_file(bad, "broken.toml") {
        println!("{e}");
    }
    Ok(())
}
