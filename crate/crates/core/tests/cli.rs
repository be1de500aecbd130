use std::path::PathBuf;
use std::process::{Command, Output};

fn qmetro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmetro"))
        .args(args)
        .env_remove("QMETRO_CONFIG")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qmetro-cli-{}-{name}", std::process::id()))
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn preset_is_deterministic() {
    let a = qmetro(&["preset", "fig2a"]);
    let b = qmetro(&["preset", "fig2a"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lines = stdout_lines(&a);
    assert_eq!(
        lines[0],
        "protocol,l,n,d,alpha_sq,qcrb,qcrb_trace_inverse,mean_photon,hl,sql,flags"
    );
    // 80 alpha points, 5 photon additions
    assert_eq!(lines.len(), 1 + 80 * 5);
    assert!(lines[1..].iter().all(|l| l.starts_with("linear,0,")));
}

#[test]
fn single_point_sweep() {
    let out = qmetro(&[
        "sweep",
        "--protocols",
        "independent",
        "--alpha-sq",
        "4",
        "--d",
        "1",
        "--n",
        "4",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..5], &["independent", "0", "4", "1", "4"]);
    let mean_photon: f64 = fields[7].parse().unwrap();
    assert!((mean_photon - 10.3887323944).abs() < 1e-9);
}

#[test]
fn json_output_parses() {
    let out = qmetro(&[
        "sweep",
        "--protocols",
        "linear,nonlinear",
        "--alpha-sq",
        "1:2:2",
        "--d",
        "5",
        "--n",
        "7",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["protocol"], "linear");
    assert!(rows[0]["qcrb"].as_f64().unwrap() > 0.0);
}

#[test]
fn homodyne_rows_carry_a_flag() {
    let out = qmetro(&[
        "sweep",
        "--protocols",
        "homodyne",
        "--alpha-sq",
        "1",
        "--d",
        "2",
        "--n",
        "1",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert!(lines[1].ends_with("zero_derivative"), "{}", lines[1]);
}

#[test]
fn config_file_then_flags() {
    let config = scratch("config.txt");
    std::fs::write(
        &config,
        "# sweep defaults\nprotocols = nonlinear\nalpha_sq = 2\nd = 3\nn = 1, 2\n",
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qmetro"))
        .args(["sweep", "--n", "5"])
        .env("QMETRO_CONFIG", &config)
        .output()
        .unwrap();
    std::fs::remove_file(&config).ok();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("nonlinear,0,5,3,2,"), "{}", lines[1]);
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["preset", "fig99"][..],
        &["sweep", "--protocols", ""][..],
        &["sweep", "--protocols", "telepathy"][..],
        &["sweep", "--alpha-sq", "3:1:4"][..],
        &["preset", "fig2a", "--format", "xml"][..],
    ] {
        let out = qmetro(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn unwritable_output_exits_with_one() {
    let out = qmetro(&["preset", "fig1a", "--out", "/nonexistent-dir/rows.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_file_matches_stdout() {
    let path = scratch("fig3b.csv");
    let to_file = qmetro(&["preset", "fig3b", "--out", path.to_str().unwrap()]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, qmetro(&["preset", "fig3b"]).stdout);
}
