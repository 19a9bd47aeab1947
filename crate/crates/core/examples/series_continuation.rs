//! Power series evaluated off the real axis.

use bjorling::dsl::{lower, parse};
use bjorling::series::{ComplexVal, Elementary};

fn main() -> anyhow::Result<()> {
    let cos = Elementary::Cos.series(0.0, 30);
    let z = ComplexVal::new(0.0, 0.3);
    println!("cos(0.3i) = {}   cosh(0.3) = {}", cos.eval_at(z)?, 0.3f64.cosh());

    let exp = Elementary::Exp.series(0.0, 30);
    println!(
        "exp(1) = {}   e = {}",
        exp.eval_at(ComplexVal::new(1.0, 0.0))?,
        std::f64::consts::E
    );

    let moved = exp.recenter(0.5)?;
    println!("exp recentered at 0.5: a0..a3 = {:?}", &moved.coeffs()[..4]);

    let tan = Elementary::Sin.series(0.0, 10).div(&Elementary::Cos.series(0.0, 10))?;
    println!("tan: {:?}", &tan.coeffs()[..6]);

    let e = parse("cos(t)^2 + sin(t)^2")?;
    let one = lower(&e, 0.7, 12)?;
    let drift = one.coeffs()[1..].iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    println!("{e} at 0.7: a0 = {}, max |a_k| (k > 0) = {drift:.1e}", one.value());

    let s = lower(&parse("sinh(t) * exp(-t/2)")?, 0.5, 24)?;
    for v in [0.0, 0.2, 0.4] {
        println!("f(0.5 + {v}i) = {}", s.eval_at(ComplexVal::new(0.5, v))?);
    }
    Ok(())
}
