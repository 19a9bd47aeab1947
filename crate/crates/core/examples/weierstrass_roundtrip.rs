//! Björling data to Weierstrass data and back.

use std::f64::consts::TAU;

use bjorling::bjorling::{BjorlingData, CurveField, DomainRect, Surface};
use bjorling::series::ComplexVal;
use bjorling::weierstrass::{
    max_gauss_from_bjorling, maxface_from_weierstrass, min_quad_from_bjorling, min_singular_locus, minface_from_quad,
};

fn main() -> anyhow::Result<()> {
    let gamma = CurveField::parse(["cos(t)", "sin(t)", "t"])?;
    let field = CurveField::scaled_tangent(&gamma, vec![1.0, 0.5], 0.02);
    let data = BjorlingData::new(gamma, field, (0.0, TAU), 32)?;

    let wd = max_gauss_from_bjorling(&data)?;
    println!("g(1 + 0.2i) = {}", wd.g_at(ComplexVal::new(1.0, 0.2))?);
    let base = ComplexVal::new(1.0, 0.0);
    let rebuilt = maxface_from_weierstrass(&wd, base, data.gamma_at(1.0)?)?;

    let q = min_quad_from_bjorling(&data, 1.5)?;
    println!("(g1, g2, w1, w2) at t = 1.5: {:?}", q.values_at(1.5)?);
    let rebuilt_min = minface_from_quad(&q, data.gamma_at(1.5)?, (1.5, 0.0), (0.5, 2.6))?;

    let mut dmax = 0.0_f64;
    let mut dmin = 0.0_f64;
    for i in 0..=10 {
        for j in 0..=10 {
            let u = 0.8 + 1.5 * i as f64 / 10.0;
            let v = -0.3 + 0.6 * j as f64 / 10.0;
            dmax = dmax.max((rebuilt.eval(u, v)? - data.maxface_eval(u, v)?).max_abs());
            dmin = dmin.max((rebuilt_min.eval(u, v)? - data.minface_eval(u, v)?).max_abs());
        }
    }
    println!("maxface round trip: {dmax:.2e}");
    println!("minface round trip: {dmin:.2e}");

    let locus = min_singular_locus(&q, &DomainRect::rect((0.9, 2.2), (-0.3, 0.3)), 21)?;
    let off_axis = locus.iter().filter(|(_, v)| v.abs() > 1e-8).count();
    println!("singular locus: {} points, {off_axis} off the curve", locus.len());
    Ok(())
}
