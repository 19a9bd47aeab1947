//! Distance of the crosscap family to the helicoid as n grows.
//!
//! cargo run --release --example convergence_study -- [n_max]

use bjorling::family::{convergence_table, convergence_text, ConvergenceOptions, FamilyParams};

fn main() -> anyhow::Result<()> {
    let n_max: usize = std::env::args().nth(1).map_or(Ok(8), |s| s.parse())?;
    let params = FamilyParams::helicoid(32)?;
    println!("r = {:.6}", params.r);
    let rows = convergence_table(&params, n_max, &ConvergenceOptions::default())?;
    print!("{}", convergence_text(&rows));

    let first = &rows[0];
    for r in &rows {
        println!(
            "n = {}  dist_max / |L_n| = {:.4}  dist_min / |L_n| = {:.4}  n*dist_max / dist_max(1) = {:.4}",
            r.n,
            r.sup_dist_max / r.sup_norm_l,
            r.sup_dist_min / r.sup_norm_l,
            r.n as f64 * r.sup_dist_max / first.sup_dist_max
        );
    }
    Ok(())
}
