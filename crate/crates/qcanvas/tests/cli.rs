mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::data;
use qcanvas::io::labels::{read_labels, write_labels};
use qcanvas::io::qcim;

fn qcanvas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcanvas"))
        .args(args)
        .env_remove("QCANVAS_THREADS")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Run {
    _dir: tempfile::TempDir,
    records: PathBuf,
    labels: PathBuf,
    tensors: PathBuf,
}

fn pipeline(pairs: &str) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let params = data("toy_params.toml");
    let records = dir.path().join("rec.jsonl");
    let labels = dir.path().join("labels.csv");
    let tensors = dir.path().join("t.qcim");
    let out = qcanvas(&["simulate", "--params", s(&params), "--pairs", pairs, "--te", "0.01", "--out", s(&records)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = qcanvas(&["label", "--records", s(&records), "--out", s(&labels)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = qcanvas(&["encode", "--records", s(&records), "--out", s(&tensors)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    Run {
        _dir: dir,
        records,
        labels,
        tensors,
    }
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&qcanvas(&["--help"])), 0);
    assert_eq!(code(&qcanvas(&["--version"])), 0);
    assert_eq!(code(&qcanvas(&[])), 1);
    assert_eq!(code(&qcanvas(&["simulate", "--pairs", "all"])), 1);
    assert_eq!(code(&qcanvas(&["frobnicate"])), 1);
}

#[test]
fn dry_run_counts_pairs() {
    let params = data("toy_params.toml");
    let out = qcanvas(&["simulate", "--params", s(&params), "--pairs", "all", "--te", "0.01", "--dry-run"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "55");
    let out = qcanvas(&["simulate", "--params", s(&params), "--pairs", "H-H,Li-F", "--te", "0.01", "--dry-run"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
}

#[test]
fn unknown_element_and_missing_files_are_usage_errors() {
    let params = data("toy_params.toml");
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.jsonl");
    let out = qcanvas(&["simulate", "--params", s(&params), "--pairs", "H-Xx", "--te", "0.01", "--out", s(&out_path)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("Xx"));
    assert!(!out_path.exists());
    let out = qcanvas(&["label", "--records", "/nonexistent/r.jsonl", "--out", s(&dir.path().join("l.csv"))]);
    assert_eq!(code(&out), 1);
}

#[test]
fn single_homonuclear_pair() {
    let run = pipeline("H-H");
    let recs = qcanvas::io::records::read_records(&run.records).unwrap();
    assert_eq!(recs.len(), 1);
    assert!(recs[0].gross_charge_a.abs() < 1e-10 && recs[0].gross_charge_b.abs() < 1e-10);
    let manifest = std::fs::read_to_string(qcanvas::io::manifest::manifest_path(&run.records)).unwrap();
    assert!(manifest.contains("ip_ea_method: koopmans"));
    assert!(manifest.contains("unconverged: []"));
}

#[test]
fn pair_list_file_and_consistent_validation() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("pairs.txt");
    std::fs::write(&list, "# homonuclear only\nH-H\nC-C\nNa-Na\n").unwrap();
    let run = pipeline(s(&list));

    let tensors = qcim::read_tensors(&run.tensors).unwrap();
    assert_eq!(tensors.len(), 3);
    let ch9: f64 = tensors.iter().map(|t| t.channel(qcanvas_core::image::Channel::QAbsdiff).iter().map(|&v| v as f64).sum::<f64>()).sum();
    assert_eq!(ch9, 0.0);

    let out = qcanvas(&["validate", "--records", s(&run.records), "--labels", s(&run.labels), "--tensors", s(&run.tensors)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn validation_catches_tampering() {
    let run = pipeline("H-Li,C-O");
    let mut rows = read_labels(&run.labels).unwrap();
    let id = rows[1].pair_id.clone();
    rows[1].e_g = rows[1].e_g.map(|g| g + 0.5);
    write_labels(&rows, &run.labels).unwrap();
    let out = qcanvas(&["validate", "--records", s(&run.records), "--labels", s(&run.labels)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains(&id));

    let mut tensors = qcim::read_tensors(&run.tensors).unwrap();
    tensors.pop();
    qcim::write_tensors(&tensors, &run.tensors).unwrap();
    let out = qcanvas(&["validate", "--records", s(&run.records), "--tensors", s(&run.tensors)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn stats_sections_follow_inputs() {
    let run = pipeline("H-H,H-Li,Li-F,C-O,Na-Cl");
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let groups = data("groups.toml");

    let out = qcanvas(&["stats", "--labels", s(&run.labels), "--out", s(&report)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = qcanvas::io::report::read_report(&report).unwrap();
    assert_eq!(r.records, 5);
    assert!(r.channel_stats.is_none() && r.group_pairs.is_none());

    let out = qcanvas(&[
        "stats", "--labels", s(&run.labels), "--tensors", s(&run.tensors), "--groups", s(&groups), "--out", s(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = qcanvas::io::report::read_report(&report).unwrap();
    assert_eq!(r.channel_stats.as_ref().unwrap().len(), 10);
    let gp = r.group_pairs.unwrap();
    assert_eq!(gp.iter().map(|g| g.count).sum::<usize>(), 5);
    assert!(gp.iter().any(|g| g.group_a == "alkali" && g.group_b == "halogen" && g.count == 2));

    let partial = dir.path().join("g.toml");
    std::fs::write(&partial, "alkali = [\"Li\", \"Na\"]\n").unwrap();
    let out = qcanvas(&["stats", "--labels", s(&run.labels), "--groups", s(&partial), "--out", s(&report)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains('H'));
}

const UNBOUND: &str = r#"
[[element]]
symbol = "X"
z = 1
shells = ["s"]
onsite = [-0.3]
hubbard_u = 0.1
n_valence = 1.0
hop_scale = 0.0
hop_decay = 1.5
overlap_scale = 0.0
overlap_decay = 1.5
rep_a = 1.0
rep_b = 1.0

[[element]]
symbol = "H"
z = 2
shells = ["s"]
onsite = [-0.2]
hubbard_u = 0.11
n_valence = 1.0
hop_scale = 0.5
hop_decay = 1.5
overlap_scale = 0.2
overlap_decay = 1.5
rep_a = 2.0
rep_b = 2.0
"#;

#[test]
fn flagged_pairs_give_partial_exit_and_need_opt_in_to_label() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("p.toml");
    std::fs::write(&params, UNBOUND).unwrap();
    let records = dir.path().join("r.jsonl");
    let labels = dir.path().join("l.csv");

    let out = qcanvas(&["simulate", "--params", s(&params), "--pairs", "X-X,H-H", "--te", "0.01", "--out", s(&records)]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    let manifest = std::fs::read_to_string(qcanvas::io::manifest::manifest_path(&records)).unwrap();
    assert!(manifest.contains("\"X-X\""));

    let out = qcanvas(&["label", "--records", s(&records), "--out", s(&labels)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("X-X"));

    let out = qcanvas(&["label", "--records", s(&records), "--out", s(&labels), "--skip-unconverged"]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("warning") && stderr(&out).contains("X-X"));
    let rows = read_labels(&labels).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].pair_id, "H-H");

    let out = qcanvas(&["validate", "--records", s(&records), "--labels", s(&labels)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn thread_count_comes_from_the_environment() {
    let params = data("toy_params.toml");
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let run = |out: &Path, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qcanvas"))
            .args(["simulate", "--params", s(&params), "--pairs", "H-Li,C-O,F-Cu,Ti-Cl", "--te", "0.01", "--out", s(out)])
            .env("QCANVAS_THREADS", threads)
            .status()
            .unwrap()
    };
    assert!(run(&a, "1").success());
    assert!(run(&b, "3").success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let bad = Command::new(env!("CARGO_BIN_EXE_qcanvas"))
        .args(["simulate", "--params", s(&params), "--pairs", "H-H", "--te", "0.01", "--dry-run"])
        .env("QCANVAS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 1);
}
