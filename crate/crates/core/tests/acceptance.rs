use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bjorling::bjorling::{null_decompose, BjorlingData, DomainRect, Surface, SurfaceKind};
use bjorling::family::{convergence_table, ConvergenceOptions, FamilyParams};
use bjorling::lorentz::LorentzVec;
use bjorling::series::ComplexVal;
use bjorling::singularity::{
    classify_min, classify_min_weierstrass, delta_combos, diagnostics_at, scan_curve, SingularityKind,
};
use bjorling::surface::sample_patch;
use bjorling::weierstrass::{
    max_gauss_from_bjorling, maxface_from_weierstrass, min_quad_from_bjorling, minface_from_quad,
};

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

struct DataSet {
    name: &'static str,
    data: BjorlingData,
    /// Window of the curve where the minface quadruple has no poles.
    quad_span: (f64, f64),
}

fn helicoid() -> BjorlingData {
    BjorlingData::parse(["cos(t)", "sin(t)", "t"], None, (0.0, TAU)).unwrap()
}

fn family(n: usize) -> BjorlingData {
    FamilyParams::helicoid(32).unwrap().with_n(n).data().unwrap()
}

fn catenary() -> BjorlingData {
    BjorlingData::parse(
        ["t", "cosh(t)", "sinh(t)"],
        Some(["(0.5 - t)/4", "(0.5 - t)*sinh(t)/4", "(0.5 - t)*cosh(t)/4"]),
        (-1.0, 1.5),
    )
    .unwrap()
}

fn data_sets() -> Vec<DataSet> {
    vec![
        DataSet {
            name: "helicoid",
            data: helicoid(),
            quad_span: (0.5, 2.6),
        },
        DataSet {
            name: "family n=1",
            data: family(1),
            quad_span: (0.5, 2.6),
        },
        DataSet {
            name: "family n=2",
            data: family(2),
            quad_span: (0.5, 2.6),
        },
        DataSet {
            name: "catenary",
            data: catenary(),
            quad_span: (-1.0, 1.5),
        },
    ]
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + stream)
}

fn lattice(u: (f64, f64), v: (f64, f64), nu: usize, nv: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..nv).flat_map(move |j| {
        (0..nu).map(move |i| {
            (
                u.0 + (u.1 - u.0) * i as f64 / (nu - 1) as f64,
                v.0 + (v.1 - v.0) * j as f64 / (nv - 1) as f64,
            )
        })
    })
}

fn helicoid_maxface() -> Outcome {
    let start = Instant::now();
    let data = BjorlingData::parse(["cos(t)", "sin(t)", "t"], None, (0.0, TAU)).unwrap();
    let mut worst = 0.0_f64;
    for (u, v) in lattice((0.2, TAU - 0.2), (-0.4, 0.4), 101, 41) {
        let x = data.maxface_eval(u, v).unwrap();
        let want = LorentzVec::new(u.cos() * v.cosh(), u.sin() * v.cosh(), u);
        worst = worst.max((x - want).euclid_norm());
    }
    let secs = start.elapsed().as_secs_f64();
    (
        worst <= 1e-8 && secs < 5.0,
        format!("max error {worst:.2e} (<= 1e-8), {secs:.3} s (< 5 s)"),
    )
}

fn helicoid_minface() -> Outcome {
    let data = helicoid();
    let diamond = DomainRect::clipped_diamond(0.0, TAU, 0.4);
    let mut worst = 0.0_f64;
    let mut count = 0;
    for (u, v) in lattice((0.2, TAU - 0.2), (-0.4, 0.4), 101, 41) {
        if !diamond.contains(u, v) {
            continue;
        }
        let x = data.minface_eval(u, v).unwrap();
        let want = LorentzVec::new(u.cos() * v.cos(), u.sin() * v.cos(), u);
        worst = worst.max((x - want).euclid_norm());
        count += 1;
    }
    (
        worst <= 1e-8,
        format!("max error {worst:.2e} (<= 1e-8) over {count} diamond points"),
    )
}

fn crosscap_counting() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0_f64;
    let mut counts = Vec::new();
    for n in 1..=6 {
        let data = family(n);
        for kind in [SurfaceKind::Max, SurfaceKind::Min] {
            let pts = scan_curve(&data, kind, 200)
                .unwrap()
                .points(SingularityKind::CuspidalCrosscap);
            counts.push(pts.len());
            let mut hit = vec![false; n];
            for p in &pts {
                let (k, d) = (1..=n)
                    .map(|k| (k, (p - 1.0 / k as f64).abs()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                worst = worst.max(d);
                if d > 1e-8 || hit[k - 1] {
                    ok = false;
                }
                hit[k - 1] = true;
            }
            ok &= pts.len() == n;
        }
    }
    (
        ok,
        format!("crosscap counts (max, min) for n = 1..6: {counts:?}; worst offset from 1/k {worst:.1e} (<= 1e-8)"),
    )
}

fn convergence() -> Outcome {
    let params = FamilyParams::helicoid(32).unwrap();
    let rows = convergence_table(&params, 8, &ConvergenceOptions::default()).unwrap();
    let dmax: Vec<f64> = rows.iter().map(|r| r.sup_dist_max).collect();
    let dmin: Vec<f64> = rows.iter().map(|r| r.sup_dist_min).collect();
    let decreasing = |d: &[f64]| d.windows(2).all(|w| w[1] < w[0]);
    let spread = |d: &[f64]| {
        let scaled: Vec<f64> = d.iter().enumerate().map(|(i, x)| (i + 1) as f64 * x).collect();
        let hi = scaled.iter().cloned().fold(f64::MIN, f64::max);
        let lo = scaled.iter().cloned().fold(f64::MAX, f64::min);
        hi / lo
    };
    let (smax, smin) = (spread(&dmax), spread(&dmin));
    let ok = decreasing(&dmax) && decreasing(&dmin) && smax <= 3.0 && smin <= 3.0;
    let list = |d: &[f64]| d.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" ");
    (
        ok,
        format!(
            "strictly decreasing: max {} min {}; spread of n*sup_dist: max {smax:.2} min {smin:.2} (<= 3); \
             sup_dist_max [{}] sup_dist_min [{}]",
            decreasing(&dmax),
            decreasing(&dmin),
            list(&dmax),
            list(&dmin)
        ),
    )
}

/// Up to `count` points of `(a, b)` where both classifiers have their
/// delta quantities: the given candidates first, then seeded draws.
fn delta_points(
    data: &BjorlingData,
    q: &bjorling::weierstrass::MinQuad,
    candidates: &[f64],
    count: usize,
    stream: u64,
) -> Vec<f64> {
    let (a, b) = data.interval();
    let defined = |t: f64| {
        diagnostics_at(data, t)
            .map(|d| d.delta1.is_some() && d.delta2.is_some())
            .unwrap_or(false)
            && delta_combos(q, t).is_ok()
    };
    let mut pts: Vec<f64> = candidates.iter().copied().filter(|&t| defined(t)).collect();
    let mut r = rng(stream);
    let mut tries = 0;
    while pts.len() < count && tries < 100 * count {
        tries += 1;
        let t = r.random_range(a + 1e-3..b - 1e-3);
        if defined(t) {
            pts.push(t);
        }
    }
    pts
}

fn criterion_equivalence() -> Outcome {
    let sets: Vec<(&str, BjorlingData, Vec<f64>)> = vec![
        ("family n=1", family(1), vec![1.0]),
        ("family n=2", family(2), vec![1.0, 0.5]),
        ("catenary", catenary(), vec![0.5]),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (s, (name, data, cands)) in sets.iter().enumerate() {
        let q = min_quad_from_bjorling(data, cands[0]).unwrap();
        let pts = delta_points(data, &q, cands, 100, 10 + s as u64);
        let mut agree = 0;
        let mut crosscaps = 0;
        for &t in &pts {
            let direct = classify_min(data, t, 1e-8).unwrap();
            let via_quad = classify_min_weierstrass(&q, t, 1e-8).unwrap();
            if direct.kind() == via_quad.kind() {
                agree += 1;
            } else {
                eprintln!("  {name}: t = {t}: {direct:?} vs {via_quad:?}");
            }
            crosscaps += (direct.kind() == SingularityKind::CuspidalCrosscap) as usize;
        }
        ok &= pts.len() >= 100 && agree == pts.len();
        notes.push(format!("{name} {agree}/{} ({crosscaps} crosscaps)", pts.len()));
    }
    (ok, format!("agreement: {}", notes.join(", ")))
}

fn structural_identities() -> Outcome {
    let mut ok = true;
    let (mut worst_a, mut worst_d) = (0.0_f64, 0.0_f64);
    let mut total = 0;
    for (s, set) in data_sets().iter().enumerate() {
        let data = &set.data;
        let x0 = 0.5 * (set.quad_span.0 + set.quad_span.1);
        let q = min_quad_from_bjorling(data, x0).unwrap();
        let pair = null_decompose(data, x0).unwrap();
        let pts = delta_points(data, &q, &[], 100, 20 + s as u64);
        total += pts.len();
        ok &= pts.len() >= 100;
        for &t in &pts {
            let [g1, _, w1, _] = q.values_at(t).unwrap();
            let lhs = -(1.0 + g1 * g1) * w1;
            let alpha3 = pair.alpha.piece_near(t).derivative().eval_real(t).unwrap().x3;
            let rel = (lhs - alpha3).abs() / lhs.abs().max(alpha3.abs());
            worst_a = worst_a.max(rel);

            let d = delta_combos(&q, t).unwrap();
            let g = diagnostics_at(data, t).unwrap();
            let (gp, l) = (g.gamma_prime, g.l_val);
            let rhs = -8.0 * gp.x3 * l.x3 * g.d23_gamma / (gp.x1.powi(3) * (gp.x3 * gp.x3 - l.x3 * l.x3));
            let scale = rhs.abs().max(d.delta1.abs()).max(d.delta2.abs());
            worst_d = worst_d.max(((d.delta1 - d.delta2) - rhs).abs() / scale);
        }
    }
    ok &= worst_a <= 1e-8 && worst_d <= 1e-8;
    (
        ok,
        format!("{total} points: third-coordinate identity {worst_a:.1e}, delta difference {worst_d:.1e} (<= 1e-8 relative)"),
    )
}

fn round_trips() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for set in data_sets() {
        let data = &set.data;
        let (a, b) = data.interval();
        let mid = 0.5 * (a + b);
        let wd = max_gauss_from_bjorling(data).unwrap();
        let wmax = maxface_from_weierstrass(&wd, ComplexVal::new(mid, 0.0), data.gamma_at(mid).unwrap()).unwrap();
        let mut dmax = 0.0_f64;
        for (u, v) in lattice((a, b), (-0.4, 0.4), 20, 20) {
            dmax = dmax.max((wmax.eval(u, v).unwrap() - data.maxface_eval(u, v).unwrap()).max_abs());
        }

        let (s0, s1) = set.quad_span;
        let x0 = 0.5 * (s0 + s1);
        let q = min_quad_from_bjorling(data, x0).unwrap();
        let wmin = minface_from_quad(&q, data.gamma_at(x0).unwrap(), (x0, 0.0), (s0, s1)).unwrap();
        let diamond = DomainRect::diamond(s0, s1);
        let vmax = 0.5 * (s1 - s0);
        let mut dmin = 0.0_f64;
        let mut n = 0;
        for (u, v) in lattice((s0, s1), (-vmax, vmax), 20, 20) {
            if diamond.contains(u, v) {
                dmin = dmin.max((wmin.eval(u, v).unwrap() - data.minface_eval(u, v).unwrap()).max_abs());
                n += 1;
            }
        }
        ok &= dmax <= 1e-8 && dmin <= 1e-8;
        notes.push(format!("{} max {dmax:.1e} min {dmin:.1e} ({n} pts)", set.name));
    }
    (ok, format!("{} (<= 1e-8)", notes.join(", ")))
}

fn pde_proxies() -> Outcome {
    let h = 1e-3;
    let mut ok = true;
    let (mut lap, mut wave) = (0.0_f64, 0.0_f64);
    let mut used = 0;
    for set in data_sets() {
        let data = &set.data;
        let (a, b) = data.interval();
        for kind in [SurfaceKind::Max, SurfaceKind::Min] {
            let region = match kind {
                SurfaceKind::Max => DomainRect::rect((a, b), (-0.4, 0.4)),
                SurfaceKind::Min => DomainRect::clipped_diamond(a, b, 0.4),
            };
            let surface = data.surface(kind);
            let patch = sample_patch(&*surface, &region, 22, 22).unwrap();
            for j in 1..21 {
                for i in 1..21 {
                    let k = patch.index(i, j);
                    if patch.vertices[k].is_none() || patch.singular[k] {
                        continue;
                    }
                    let (u, v) = patch.param(i, j);
                    let e = |du: f64, dv: f64| surface.eval(u + du, v + dv);
                    let (Ok(c), Ok(up), Ok(um), Ok(vp), Ok(vm)) =
                        (e(0.0, 0.0), e(h, 0.0), e(-h, 0.0), e(0.0, h), e(0.0, -h))
                    else {
                        continue;
                    };
                    let xuu = (up + um - c * 2.0) * (1.0 / (h * h));
                    let xvv = (vp + vm - c * 2.0) * (1.0 / (h * h));
                    used += 1;
                    match kind {
                        SurfaceKind::Max => lap = lap.max((xuu + xvv).max_abs()),
                        SurfaceKind::Min => wave = wave.max((xuu - xvv).max_abs()),
                    }
                }
            }
        }
    }
    ok &= lap <= 1e-4 && wave <= 1e-4 && used > 0;
    (
        ok,
        format!("{used} interior points: Laplacian {lap:.1e}, d'Alembertian {wave:.1e} (<= 1e-4)"),
    )
}

fn first_jet() -> Outcome {
    let h = 1e-5;
    let mut worst = 0.0_f64;
    for (s, set) in data_sets().iter().enumerate() {
        let data = &set.data;
        let (a, b) = data.interval();
        let mut r = rng(40 + s as u64);
        for _ in 0..50 {
            let u = r.random_range(a + 1e-3..b - 1e-3);
            let l = data.field_at(u).unwrap();
            for kind in [SurfaceKind::Max, SurfaceKind::Min] {
                let x = data.surface(kind);
                let xv = (x.eval(u, h).unwrap() - x.eval(u, -h).unwrap()) * (0.5 / h);
                worst = worst.max((xv - l).max_abs());
            }
        }
    }
    (
        worst <= 1e-6,
        format!("max |dX/dv(u, 0) - L(u)| = {worst:.1e} (<= 1e-6)"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("helicoid maxface", helicoid_maxface),
        ("helicoid minface", helicoid_minface),
        ("crosscap counting", crosscap_counting),
        ("convergence", convergence),
        ("criterion equivalence", criterion_equivalence),
        ("structural identities", structural_identities),
        ("round trips", round_trips),
        ("PDE proxies", pde_proxies),
        ("first jet", first_jet),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = match std::panic::catch_unwind(run) {
            Ok(r) => r,
            Err(e) => (
                false,
                format!(
                    "panicked: {}",
                    e.downcast_ref::<String>()
                        .map(String::as_str)
                        .or(e.downcast_ref::<&str>().copied())
                        .unwrap_or("?")
                ),
            ),
        };
        failed += !ok as usize;
        println!("{} {}. {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
