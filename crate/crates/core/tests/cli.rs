use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_morse-scs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn scenario_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios"))
}

#[test]
fn usual_coherent_state_row() {
    let csv = stdout(&["ho-dispersion", "--type", "usual", "--z", "1"]);
    assert_eq!(
        csv,
        "type,z,gamma,t,mean_x,mean_p,var_x,var_p,product\n\
         usual,1,0,0,1.41421356237,0,0.5,0.5,0.25\n"
    );
}

#[test]
fn quadratic_vacuum_and_product_band() {
    let csv = stdout(&["ho-dispersion", "--z", "0:3:31"]);
    let rows = rows(&csv);
    let usual0 = rows
        .iter()
        .find(|r| r[0] == "usual" && r[1] == "0")
        .unwrap();
    let quad0 = rows
        .iter()
        .find(|r| r[0] == "quadratic" && r[1] == "0")
        .unwrap();
    assert_eq!(usual0[2..], quad0[2..]);
    for r in rows.iter().filter(|r| r[0] == "quadratic") {
        let product: f64 = r[8].parse().unwrap();
        assert!((0.25 - 1e-12..=0.30).contains(&product), "{r:?}");
    }
}

#[test]
fn output_is_deterministic_across_runs_and_strategies() {
    let args = [
        "entropy-angle",
        "--z",
        "1,3",
        "--gamma",
        "0.2,0.7",
        "--theta",
        "0:pi:37",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    let c = stdout(&seq_args);
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a.lines().count(), 1 + 2 * 2 * 2 * 37);
}

#[test]
fn flags_override_scenario_file() {
    let dir = tempfile::tempdir().unwrap();
    let scn = dir.path().join("s.scn");
    std::fs::write(&scn, "# test\ntype = osc\nz = 1, 2\ngamma = 0.5\n").unwrap();
    let csv = stdout(&["entropy", "--scenario", scn.to_str().unwrap(), "--z", "3"]);
    let rows = rows(&csv);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][..3], ["osc", "3", "0.5"]);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let out = run(&[
        "entropy",
        "--type",
        "energy",
        "--z",
        "2",
        "--gamma",
        "0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("type,z,gamma,theta,phi,S\nenergy,2,0.5,1.57079632679,0,"));
}

fn assert_single_line_error(out: &Output, code: i32) {
    assert_eq!(out.status.code(), Some(code));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_scenarios_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let scn = dir.path().join("bad.scn");
    std::fs::write(&scn, "z = 1\ncolour = blue\n").unwrap();
    assert_single_line_error(&run(&["entropy", "--scenario", scn.to_str().unwrap()]), 2);
    assert_single_line_error(&run(&["entropy", "--type", "usual,osc"]), 2);
    assert_single_line_error(&run(&["entropy-time", "--system", "ho"]), 2);
    assert_single_line_error(&run(&["ho-dispersion", "--type", "energy"]), 2);
    assert_single_line_error(&run(&["entropy", "--type", "usual", "--gamma", "1.2"]), 2);
    assert_single_line_error(&run(&["entropy", "--p", "0.5", "--system", "morse"]), 2);
    assert_single_line_error(&run(&["entropy-angle", "--theta", "4"]), 2);
    assert_single_line_error(&run(&["entropy", "--z", "0:1:0"]), 2);
    assert_single_line_error(&run(&["no-such-command"]), 2);
    assert_single_line_error(&run(&["entropy", "--scenario", "/nonexistent/file.scn"]), 2);
}

#[test]
fn truncation_cap_exits_3() {
    assert_single_line_error(&run(&["ho-dispersion", "--z", "100"]), 3);
}

#[test]
fn spectrum_zero_frequency_holds_the_mean() {
    let csv = stdout(&["entropy-spectrum", "--type", "osc", "--gamma", "0.5"]);
    let rows = rows(&csv);
    assert_eq!(rows[0][5], "0");
    assert_eq!(rows[0][9], "0");
    let mean: f64 = rows[0][6].parse().unwrap();
    let s = stdout(&[
        "entropy-time",
        "--type",
        "osc",
        "--gamma",
        "0.5",
        "--t",
        "0:pi:4097",
    ]);
    let values: Vec<f64> = rows_f64(&s, 6);
    let average = values[..4096].iter().sum::<f64>() / 4096.0;
    assert!((average - mean).abs() < 1e-9, "{average} vs {mean}");
}

fn rows_f64(csv: &str, col: usize) -> Vec<f64> {
    rows(csv).iter().map(|r| r[col].parse().unwrap()).collect()
}

#[test]
fn shipped_scenarios_run() {
    let dir = tempfile::tempdir().unwrap();
    let mut names: Vec<_> = std::fs::read_dir(scenario_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    assert!(names.len() >= 6);
    for path in names {
        let stem = path.file_stem().unwrap().to_str().unwrap().to_string();
        let command = if stem == "ho_dispersion" {
            "ho-dispersion"
        } else if stem.ends_with("density") {
            "density"
        } else if stem.ends_with("time") {
            "entropy-time"
        } else if stem.ends_with("spectrum") {
            "entropy-spectrum"
        } else if stem.ends_with("angle") {
            "entropy-angle"
        } else {
            "entropy"
        };
        let out = dir.path().join(format!("{stem}.csv"));
        let status = run(&[
            command,
            "--scenario",
            path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(
            status.status.success(),
            "{stem}: {}",
            String::from_utf8_lossy(&status.stderr)
        );
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.lines().count() > 1, "{stem}");
        assert!(!text.contains("nan") && !text.contains("inf"), "{stem}");
    }
}
