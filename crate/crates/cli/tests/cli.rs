use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

use tempfile::TempDir;

fn sgincl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgincl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Fixtures {
    _dir: TempDir,
    order3: PathBuf,
    order4: PathBuf,
}

fn fixtures() -> &'static Fixtures {
    static F: OnceLock<Fixtures> = OnceLock::new();
    F.get_or_init(|| {
        let dir = TempDir::new().unwrap();
        let order3 = dir.path().join("order3.sgcat");
        let order4 = dir.path().join("order4.sgcat");
        for (n, p) in [("3", &order3), ("4", &order4)] {
            let o = sgincl(&[
                "enumerate",
                "--order",
                n,
                "--mode",
                "iso",
                "--out",
                p.to_str().unwrap(),
            ]);
            assert!(o.status.success());
        }
        Fixtures {
            _dir: dir,
            order3,
            order4,
        }
    })
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn enumerate_prints_counts() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.sgcat");
    let o = sgincl(&[
        "enumerate",
        "--order",
        "4",
        "--mode",
        "equiv",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["order 1: 1", "order 2: 4", "order 3: 18", "order 4: 126"] {
        assert!(text.contains(line), "{text}");
    }
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .starts_with("SGCAT v1 mode=equiv\n"));
}

#[test]
fn enumerate_rejects_large_order() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.sgcat");
    assert_eq!(
        sgincl(&["enumerate", "--order", "7", "--out", path(&out)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let l2 = write(&dir, "l2.txt", "order 2\n0 0\n1 1\n");
    assert_eq!(
        sgincl(&["check", "--semigroup", path(&l2), "--system", "xy = x"])
            .status
            .code(),
        Some(0)
    );

    let o = sgincl(&["check", "--semigroup", path(&l2), "--system", "xy = y"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "violated: inclusion 0 fails at (x→0, y→1): xy = 0 but y = 1\n"
    );

    assert_eq!(
        sgincl(&["check", "--semigroup", path(&l2), "--system", "xy <="])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.txt");
    assert_eq!(
        sgincl(&["check", "--semigroup", path(&missing), "--system", "xy = x"])
            .status
            .code(),
        Some(3)
    );
    let bad = write(&dir, "bad.txt", "order 2\n0 1\n0 0\n");
    assert_eq!(
        sgincl(&["check", "--semigroup", path(&bad), "--system", "xy = x"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn check_accepts_json() {
    let dir = TempDir::new().unwrap();
    let r2 = write(
        &dir,
        "r2.json",
        r#"{"order": 2, "table": [[0, 1], [0, 1]]}"#,
    );
    assert_eq!(
        sgincl(&["check", "--semigroup", path(&r2), "--system", "xy = y"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn classify_null_row() {
    let o = sgincl(&[
        "classify",
        "--catalog",
        path(&fixtures().order3),
        "--classes",
        "Z,L,R,IL,IR",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("canonical_id,Z,L,R,IL,IR\n"));
    assert!(text.lines().any(|l| l == "2:0000,1,0,0,1,1"), "{text}");
}

#[test]
fn classify_unknown_class_is_usage_error() {
    let o = sgincl(&[
        "classify",
        "--catalog",
        path(&fixtures().order3),
        "--classes",
        "Z,Nope",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_prop1() {
    let o = sgincl(&[
        "verify",
        "--catalog",
        path(&fixtures().order3),
        "--props",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("P1 PASS"));
}

#[test]
fn verify_range_and_json() {
    let o = sgincl(&[
        "verify",
        "--catalog",
        path(&fixtures().order3),
        "--props",
        "1..3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["equal"], true);
}

#[test]
fn verify_reports_failure_with_exit_one() {
    // The statement for proposition 7 does not hold as written.
    let o = sgincl(&[
        "verify",
        "--catalog",
        path(&fixtures().order3),
        "--props",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("P7 FAIL"));
}

#[test]
fn corrupt_catalog_is_io_error() {
    let dir = TempDir::new().unwrap();
    let truncated = write(&dir, "t.sgcat", "SGCAT v1 mode=iso\n1:0\n2:00");
    assert_eq!(
        sgincl(&["verify", "--catalog", path(&truncated)])
            .status
            .code(),
        Some(3)
    );
    let nonassoc = write(&dir, "n.sgcat", "SGCAT v1 mode=iso\n1:0\n2:0100\n");
    let o = sgincl(&["lattice", "--catalog", path(&nonassoc)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:0100"));
}

#[test]
fn probe_passes() {
    let o = sgincl(&[
        "probe",
        "--catalog",
        path(&fixtures().order3),
        "--trials",
        "200",
        "--seed",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("probe PASS\n"));
}

#[test]
fn lattice_dot() {
    let o = sgincl(&[
        "lattice",
        "--catalog",
        path(&fixtures().order4),
        "--emit",
        "dot",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph lattice {"));
    assert!(dot.contains("reconstructed"));
    assert!(dot.contains("GL∪RB∪GR\\nGL∪IRB∪GR\\nGRB_l∪GR\\nGL∪GRB_r\\nI"));
}

#[test]
fn prop32_passes() {
    let o = sgincl(&["prop32"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("prop32 PASS\n"));
}

#[test]
fn explore_cover_always_succeeds() {
    let o = sgincl(&[
        "explore-cover",
        "--catalog",
        path(&fixtures().order3),
        "--trials",
        "50",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn classes_json() {
    let o = sgincl(&["classes"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.to_string().contains("xyz = xz"));
}

#[test]
fn outputs_do_not_depend_on_jobs() {
    let f = fixtures();
    let runs: [&[&str]; 3] = [
        &["verify", "--catalog", path(&f.order4)],
        &[
            "probe",
            "--catalog",
            path(&f.order3),
            "--trials",
            "300",
            "--seed",
            "11",
        ],
        &["lattice", "--catalog", path(&f.order4), "--emit", "text"],
    ];
    for args in runs {
        let base = sgincl(&[&["--jobs", "1"], args].concat());
        for jobs in ["1", "2", "4"] {
            let o = sgincl(&[&["--jobs", jobs], args].concat());
            assert_eq!(o.stdout, base.stdout, "{args:?} with --jobs {jobs}");
            assert_eq!(o.status.code(), base.status.code());
        }
    }
}

#[test]
fn enumerate_is_deterministic_across_jobs() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.sgcat");
    let b = dir.path().join("b.sgcat");
    sgincl(&[
        "--jobs",
        "1",
        "enumerate",
        "--order",
        "4",
        "--out",
        path(&a),
    ]);
    sgincl(&[
        "--jobs",
        "3",
        "enumerate",
        "--order",
        "4",
        "--out",
        path(&b),
    ]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
