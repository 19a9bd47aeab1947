use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use bjorling::bjorling::{validate, BjorlingData, DomainRect, SurfaceKind};
use bjorling::dsl::read_curve_file;
use bjorling::family::{
    convergence_csv, convergence_table, crosscap_points, family_member, ConvergenceOptions, FamilyParams,
};
use bjorling::series::DEFAULT_ORDER;
use bjorling::singularity::{scan_curve_with, SingularityKind, DEFAULT_ZERO_TOL};
use bjorling::surface::{export_csv, export_obj, sample_patch, write_atomic};

#[derive(Parser)]
#[command(
    name = "bjorling",
    version,
    about = "Maxfaces and minfaces from singular Björling data"
)]
struct Cli {
    /// Series truncation order.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Zero tolerance for validation and classification.
    #[arg(long, global = true, default_value_t = DEFAULT_ZERO_TOL)]
    tol: f64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Max,
    Min,
    Both,
}

impl Kind {
    fn kinds(self) -> &'static [SurfaceKind] {
        match self {
            Kind::Max => &[SurfaceKind::Max],
            Kind::Min => &[SurfaceKind::Min],
            Kind::Both => &[SurfaceKind::Max, SurfaceKind::Min],
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the side conditions of a curve file.
    Validate {
        curve: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Both)]
        kind: Kind,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Sample a surface and write OBJ and CSV.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Half-width of the sampled strip in v.
        #[arg(long, default_value_t = 0.5)]
        v_max: f64,
        /// OBJ path; the CSV goes next to it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify singular points along the curve.
    Classify {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 1 when a degenerate point is found.
        #[arg(long)]
        fail_on_degenerate: bool,
    },
    /// Surfaces and singularity reports of the n-th crosscap family member.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Both)]
        kind: Kind,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value_t = 0.5)]
        v_max: f64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Sup-norm distances of the family to the L = 0 surfaces.
    Converge {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value_t = 0.5)]
        v_max: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Boundary and first-jet conditions at random points of the curve.
    Check {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

fn load(path: &Path, order: usize) -> anyhow::Result<BjorlingData> {
    Ok(BjorlingData::from_spec(&read_curve_file(path)?, order)?)
}

fn domain(data: &BjorlingData, kind: SurfaceKind, v_max: f64) -> DomainRect {
    let (a, b) = data.interval();
    match kind {
        SurfaceKind::Max => DomainRect::rect((a, b), (-v_max, v_max)),
        SurfaceKind::Min => DomainRect::clipped_diamond(a, b, v_max),
    }
}

fn write_patch(data: &BjorlingData, kind: SurfaceKind, grid: usize, v_max: f64, obj: &Path) -> anyhow::Result<()> {
    let patch = sample_patch(&*data.surface(kind), &domain(data, kind, v_max), grid, grid)?;
    export_obj(&patch, obj)?;
    export_csv(&patch, &obj.with_extension("csv"))?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let order = cli.order;
    match cli.command {
        Command::Validate { curve, kind, samples } => {
            let data = load(&curve, order)?;
            let report = validate(&data, samples, cli.tol)?;
            print!("{report}");
            let mut ok = true;
            for &k in kind.kinds() {
                for f in report.failures(k) {
                    eprintln!("{k}: violated: {}", f.condition);
                    ok = false;
                }
            }
            Ok(ok)
        }
        Command::Build {
            kind,
            curve,
            grid,
            v_max,
            out,
        } => {
            let data = load(&curve, order)?;
            match kind {
                Kind::Both => {
                    for &k in kind.kinds() {
                        let path = out.with_file_name(format!(
                            "{}_{}.obj",
                            out.file_stem().and_then(|s| s.to_str()).unwrap_or("surface"),
                            k.name()
                        ));
                        write_patch(&data, k, grid, v_max, &path)?;
                    }
                }
                _ => write_patch(&data, kind.kinds()[0], grid, v_max, &out)?,
            }
            Ok(true)
        }
        Command::Classify {
            kind,
            curve,
            samples,
            out,
            fail_on_degenerate,
        } => {
            let data = load(&curve, order)?;
            let mut degenerate = false;
            for &k in kind.kinds() {
                let report = scan_curve_with(&data, k, samples, cli.tol, &[])?;
                degenerate |= report.has_degenerate();
                let csv = report.to_csv();
                match &out {
                    Some(p) if kind == Kind::Both => {
                        write_atomic(&p.with_extension(format!("{}.csv", k.name())), csv.as_bytes())?
                    }
                    Some(p) => write_atomic(p, csv.as_bytes())?,
                    None => print!("{csv}"),
                }
            }
            Ok(!(fail_on_degenerate && degenerate))
        }
        Command::Family {
            n,
            curve,
            kind,
            grid,
            v_max,
            out_dir,
        } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let spec = read_curve_file(&curve)?;
            let params = FamilyParams::from_spec(&spec, v_max, order).with_n(n);
            std::fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
            for &k in kind.kinds() {
                let data = family_member(&params, k)?;
                let patch = sample_patch(&*data.surface(k), &params.domain(k), grid, grid)?;
                export_obj(&patch, &out_dir.join(format!("family_{n}_{}.obj", k.name())))?;
                export_csv(&patch, &out_dir.join(format!("family_{n}_{}.csv", k.name())))?;
                let report = scan_curve_with(&data, k, 200, cli.tol, &crosscap_points(n))?;
                write_atomic(
                    &out_dir.join(format!("singularities_{n}_{}.csv", k.name())),
                    report.to_csv().as_bytes(),
                )?;
                println!(
                    "{k}: {} cuspidal crosscaps at {:?}",
                    report.count(SingularityKind::CuspidalCrosscap),
                    report.points(SingularityKind::CuspidalCrosscap)
                );
            }
            Ok(true)
        }
        Command::Converge {
            max_n,
            curve,
            grid,
            v_max,
            out,
        } => {
            if max_n == 0 {
                bail!("--max-n must be at least 1");
            }
            let spec = read_curve_file(&curve)?;
            let params = FamilyParams::from_spec(&spec, v_max, order);
            let opts = ConvergenceOptions {
                grid,
                tol: cli.tol,
                ..ConvergenceOptions::default()
            };
            let rows = convergence_table(&params, max_n, &opts)?;
            write_atomic(&out, convergence_csv(&rows).as_bytes())?;
            Ok(true)
        }
        Command::Check { curve, samples } => {
            let data = load(&curve, order)?;
            let (a, b) = data.interval();
            let mut rng = StdRng::seed_from_u64(cli.seed);
            let h = 1e-5;
            let mut worst = 0.0_f64;
            for _ in 0..samples {
                let u = rng.random_range(a + 2.0 * h..b - 2.0 * h);
                let l = data.field_at(u)?;
                let g = data.gamma_at(u)?;
                for &k in &[SurfaceKind::Max, SurfaceKind::Min] {
                    let s = data.surface(k);
                    let x0 = s.eval(u, 0.0)?;
                    let xv = (s.eval(u, h)? - s.eval(u, -h)?) * (0.5 / h);
                    worst = worst.max((x0 - g).max_abs()).max((xv - l).max_abs());
                }
            }
            let ok = worst <= 1e-6;
            println!(
                "max deviation {worst:.3e} over {samples} points (seed {}): {}",
                cli.seed,
                if ok { "ok" } else { "FAILED" }
            );
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
