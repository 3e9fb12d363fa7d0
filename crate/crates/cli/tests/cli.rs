use std::fs;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qtilt::format::{AlgebraSpecFile, ModuleSpecFile};
use qtilt::repmod::random_module;
use qtilt::{fixtures, Representation};
use qtilt_cli::{cmd_basis, cmd_cover, cmd_endo, cmd_verify, Options, EXIT_ASSERTION, EXIT_CAP, EXIT_INPUT, EXIT_PASS};

fn qtilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtilt")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

#[test]
fn basis_dimensions() {
    for (name, dim) in [("A2", 3), ("EX49A", 6), ("EX49B", 9), ("EX65A", 11)] {
        let r = cmd_basis(name, &Options::default()).unwrap().report;
        assert_eq!(r.payload["dim"], dim, "{name}");
        assert_eq!(r.payload["basis"].as_array().unwrap().len(), dim);
    }
    let out = qtilt(&["basis", "fixture:EX49A"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert_eq!(json(&out)["payload"]["dim"], 6);
}

#[test]
fn hasse_counts_and_dot() {
    for (name, n) in [("A2", 2), ("EX49A", 8), ("EX49B", 12)] {
        let out = qtilt(&["hasse", name]);
        assert_eq!(out.status.code(), Some(EXIT_PASS));
        assert_eq!(json(&out)["payload"]["vertices"], n, "{name}");
    }
    let out = qtilt(&["hasse", "EX49A", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 9);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (d1, d2) = (dir.path().join("a.dot"), dir.path().join("b.dot"));
    let run = |p: &std::path::Path| qtilt(&["hasse", "EX49B", "--seed", "7", "--out", p.to_str().unwrap()]);
    let (o1, o2) = (run(&d1), run(&d2));
    assert_eq!(o1.stdout, o2.stdout);
    assert_eq!(fs::read(&d1).unwrap(), fs::read(&d2).unwrap());
    let a = qtilt(&["verify", "EX49A", "thm45", "apr:3"]);
    let b = qtilt(&["verify", "EX49A", "thm45", "apr:3"]);
    assert_eq!(a.stdout, b.stdout);
    let seeded = qtilt(&["verify", "EX49A", "thm45", "apr:3", "--seed", "1"]);
    assert_ne!(json(&a)["digest"], json(&seeded)["digest"]);
    assert_eq!(json(&seeded)["seed"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(qtilt(&["basis", "EX65A"]).status.code(), Some(EXIT_PASS));
    assert_eq!(qtilt(&["basis", "fixture:NOPE"]).status.code(), Some(EXIT_INPUT));
    assert_eq!(qtilt(&["basis", "/nonexistent/file.toml"]).status.code(), Some(EXIT_INPUT));
    assert_eq!(qtilt(&["endo", "EX65A", "apr:1"]).status.code(), Some(EXIT_INPUT));
    assert_eq!(qtilt(&["verify", "EX49A", "bogus", "A"]).status.code(), Some(EXIT_INPUT));
    assert_eq!(qtilt(&["hasse", "EX49A", "--cap-vertices", "3"]).status.code(), Some(EXIT_CAP));
    assert_eq!(qtilt(&["hasse", "EX65A", "--cap-vertices", "20"]).status.code(), Some(EXIT_CAP));
    // S_1 ⊕ S_1 ⊕ P_2 over A2 is not basic
    let dir = tempfile::tempdir().unwrap();
    let a2 = fixtures::algebra("A2").unwrap();
    let s1 = Representation::simple(&a2, 0);
    let p = dir.path().join("s1.toml");
    fs::write(&p, ModuleSpecFile::from_representation(&s1, Some("A2".into())).to_toml()).unwrap();
    let q = dir.path().join("p2.toml");
    fs::write(&q, ModuleSpecFile::from_representation(&Representation::projective(&a2, 1), Some("A2".into())).to_toml()).unwrap();
    let out = qtilt(&["endo", "A2", p.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_ASSERTION));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn endo_examples() {
    let r = cmd_endo("EX49A", &["apr:3".into()], &Options::default()).unwrap();
    assert!(r.report.passed);
    assert_eq!(r.report.payload["dim"], 9);
    let r = cmd_endo("EX65A", &["apr:4".into()], &Options::default()).unwrap();
    assert_eq!(r.report.payload["relations"].as_array().unwrap().len(), 0);
    assert_eq!(r.report.payload["vertices"].as_array().unwrap().len(), 4);
    let r = cmd_endo("A2", &["A".into()], &Options::default()).unwrap();
    assert_eq!(r.report.payload["dim"], 3);
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("b.toml");
    let out = qtilt(&["endo", "EX49A", "apr:3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let b = AlgebraSpecFile::parse(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let basis = qtilt(&["basis", out_path.to_str().unwrap()]);
    assert_eq!(json(&basis)["payload"]["dim"], 9);
    assert_eq!(b.vertices.len(), 3);
}

#[test]
fn verify_examples() {
    let o = Options::default();
    assert!(cmd_verify("EX49A", "thm45", &["apr:3".into()], &o).unwrap().report.passed);
    assert!(cmd_verify("A2", "lemma41", &["DA".into()], &o).unwrap().report.passed);
    assert!(cmd_verify("EX49A", "prop46", &["apr:3".into()], &o).unwrap().report.passed);
    assert!(cmd_verify("EX49A", "prop43", &["apr:3".into()], &o).unwrap().report.passed);
}

#[test]
fn cover_examples() {
    let o = Options::default();
    let r = cmd_cover("EX65A", "EX65A_Z2", "verify", &[], &o).unwrap().report;
    assert!(r.passed);
    assert_eq!(r.payload["connected"], true);
    let r = cmd_cover("EX49A", "TRIVIAL_Z2", "build", &[], &o).unwrap().report;
    assert_eq!(r.payload["components"], 2);
    let out = qtilt(&["cover", "EX65A", "EX65A_Z2", "build", "--group", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert_eq!(json(&out)["payload"]["vertices"], 12);
    assert_eq!(qtilt(&["cover", "EX65A", "EX65A_Z2", "build", "--group", "2,2"]).status.code(), Some(EXIT_INPUT));
    let r = cmd_cover("EX65A", "EX65A_Z2", "pullup-tilting", &["apr:4".into()], &o).unwrap().report;
    assert!(r.passed);
    assert_eq!(r.payload["summands"], 8);
    let r = cmd_cover("EX65A", "EX65A_Z2", "endo-cover", &["apr:4".into()], &o).unwrap().report;
    assert!(r.passed);
    assert_eq!(r.payload["endo"]["connected"], true);
}

#[test]
fn pushdown_and_pullup_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixtures::algebra("EX65A").unwrap();
    let m = Representation::projective(&a, 0);
    let p = dir.path().join("p1.toml");
    fs::write(&p, ModuleSpecFile::from_representation(&m, Some("EX65A".into())).to_toml()).unwrap();
    let up = dir.path().join("up.toml");
    let out = qtilt(&["cover", "EX65A", "EX65A_Z2", "pullup", p.to_str().unwrap(), "--out", up.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let total: u64 = json(&out)["payload"]["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).sum();
    assert_eq!(total, 2 * m.total_dim() as u64);
    let out = qtilt(&["cover", "EX65A", "EX65A_Z2", "pushdown", up.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let dims: Vec<u64> = json(&out)["payload"]["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(dims, m.dims().iter().map(|&d| 2 * d as u64).collect::<Vec<_>>());
    let out = qtilt(&["cover", "EX65A", "EX65A_Z2", "first-kind", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
}

#[test]
fn format_round_trip() {
    for name in fixtures::ALGEBRA_NAMES {
        let spec = fixtures::algebra_spec(name).unwrap();
        let text = spec.to_toml();
        let again = AlgebraSpecFile::parse(&text).unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.to_toml(), text);
        let from = AlgebraSpecFile::from_presentation(&spec.to_presentation().unwrap());
        assert_eq!(AlgebraSpecFile::parse(&from.to_toml()).unwrap(), from);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in fixtures::ALGEBRA_NAMES {
        let a = fixtures::algebra(name).unwrap();
        for _ in 0..5 {
            let m = random_module(&a, &mut rng, 3);
            let file = ModuleSpecFile::from_representation(&m, Some(name.into()));
            let text = file.to_toml();
            let parsed = ModuleSpecFile::parse(&text).unwrap();
            assert_eq!(parsed, file);
            assert_eq!(parsed.to_toml(), text);
            assert!(parsed.to_representation(&a).unwrap().same_matrices(&m));
        }
    }
}
