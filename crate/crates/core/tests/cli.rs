use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn curve(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("curves").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bjorling"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_accepts_helicoid() {
    let out = run(&["validate", path_str(&curve("helicoid.toml"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn validate_rejects_non_null_curve() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("circle.toml");
    std::fs::write(
        &file,
        "gamma = [\"cos(t)\", \"sin(t)\", \"0\"]\nL = \"zero\"\ninterval = [0, 1]\n",
    )
    .unwrap();
    let out = run(&["validate", path_str(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("<gamma', gamma'> = 0"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--kind", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/no/such/curve.toml"]).status.code(), Some(2));
}

#[test]
fn build_max_reproduces_helicoid() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("helicoid.obj");
    let out = run(&[
        "build",
        "--kind",
        "max",
        "--curve",
        path_str(&curve("helicoid.toml")),
        "--grid",
        "31",
        "--out",
        path_str(&obj),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let obj_text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(obj_text.lines().filter(|l| l.starts_with("v ")).count(), 31 * 31);
    assert_eq!(obj_text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 30 * 30);

    let csv = std::fs::read_to_string(obj.with_extension("csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("u,v,x1,x2,x3,singular"));
    let mut worst = 0.0_f64;
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let (u, v) = (f[0], f[1]);
        let want = [u.cos() * v.cosh(), u.sin() * v.cosh(), u];
        for k in 0..3 {
            worst = worst.max((f[2 + k] - want[k]).abs());
        }
    }
    assert!(worst <= 1e-8, "{worst:e}");
}

#[test]
fn build_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for name in ["a.obj", "b.obj"] {
        let obj = dir.path().join(name);
        let out = run(&[
            "build",
            "--kind",
            "min",
            "--curve",
            path_str(&curve("catenary.toml")),
            "--grid",
            "17",
            "--out",
            path_str(&obj),
        ]);
        assert_eq!(out.status.code(), Some(0));
        bytes.push((
            std::fs::read(&obj).unwrap(),
            std::fs::read(obj.with_extension("csv")).unwrap(),
        ));
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn failed_build_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("missing").join("x.obj");
    let out = run(&[
        "build",
        "--kind",
        "max",
        "--curve",
        path_str(&curve("helicoid.toml")),
        "--grid",
        "5",
        "--out",
        path_str(&obj),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!obj.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn converge_counts_crosscaps() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("conv.csv");
    let out = run(&[
        "converge",
        "--max-n",
        "6",
        "--curve",
        path_str(&curve("helicoid.toml")),
        "--grid",
        "41",
        "--out",
        path_str(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,sup_norm_L,sup_dist_max,sup_dist_min,crosscap_count")
    );
    let counts: Vec<usize> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(counts, [1, 2, 3, 4, 5, 6]);
}

#[test]
fn classify_flags_degenerate_points() {
    let line = curve("null_line.toml");
    let out = run(&[
        "classify",
        "--kind",
        "max",
        "--curve",
        path_str(&line),
        "--samples",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8_lossy(&out.stdout);
    assert!(csv.starts_with("t,type,D23,D12,norm_L,norm_gamma_prime,delta1,delta2\n"));
    assert_eq!(csv.lines().count(), 9);
    let out = run(&[
        "classify",
        "--kind",
        "max",
        "--curve",
        path_str(&line),
        "--samples",
        "8",
        "--fail-on-degenerate",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_writes_surfaces_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "family",
        "--n",
        "2",
        "--curve",
        path_str(&curve("helicoid.toml")),
        "--grid",
        "21",
        "--out-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for kind in ["max", "min"] {
        for f in [
            format!("family_2_{kind}.obj"),
            format!("family_2_{kind}.csv"),
            format!("singularities_2_{kind}.csv"),
        ] {
            assert!(dir.path().join(&f).exists(), "{f}");
        }
        let report = std::fs::read_to_string(dir.path().join(format!("singularities_2_{kind}.csv"))).unwrap();
        assert_eq!(report.lines().filter(|l| l.contains(",cuspidal_crosscap,")).count(), 2);
    }
}

#[test]
fn check_is_seeded() {
    let args = |seed: &'static str| {
        run(&[
            "check",
            "--curve",
            path_str(&curve("catenary.toml")),
            "--samples",
            "10",
            "--seed",
            seed,
        ])
    };
    let (a, b) = (args("3"), args("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
