use std::path::PathBuf;
use std::process::{Command, Output};

use hocat::chain::{disk, sphere, ChainMap, ConeSign};
use hocat::excat::{InstanceId, Mor, Obj};
use hocat_cli::commands::random_workspace;
use hocat_cli::format::{save, Workspace};
use hocat_cli::suites::{run, RunConfig};
use serde_json::Value;

fn hocat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hocat"))
        .args(args)
        .env_remove("HOCAT_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("hocat-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, contents).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn workspace(&self, name: &str, ws: &Workspace) -> String {
        let p = self.0.join(name);
        save(ws, &p).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn without_timing(mut v: Value) -> Value {
    if let Value::Array(reports) = &mut v {
        for r in reports {
            r.as_object_mut().unwrap().remove("timing_ms");
        }
    }
    v
}

#[test]
fn passing_check_exits_zero() {
    let o = hocat(&[
        "check",
        "--suite",
        "excat",
        "--instance",
        "FGAB",
        "--cases",
        "10",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn flipped_cone_sign_is_caught() {
    let o = hocat(&[
        "check",
        "--suite",
        "chain.cone_sequence",
        "--cases",
        "10",
        "--flip-cone-sign",
    ]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("failure in chain.cone_sequence"));
}

#[test]
fn mutant_fails_chain_suite_for_every_instance() {
    for inst in InstanceId::ALL {
        let good = RunConfig {
            cases: 10,
            seed: 7,
            ..RunConfig::default()
        };
        let bad = RunConfig {
            cone_sign: ConeSign::Flipped,
            ..good
        };
        assert!(run("chain", inst, &good).unwrap().passed());
        assert!(!run("chain", inst, &bad).unwrap().passed(), "{inst:?}");
    }
}

#[test]
fn input_errors_exit_two() {
    let s = Scratch::new("errors");
    let missing = s.0.join("absent.json");
    let o = hocat(&["classify", missing.to_str().unwrap(), "--name", "f"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("io error"));

    let broken = s.file(
        "broken.json",
        "{\n  \"instance\": \"VECTQ\",\n  \"objects\": {\n    \"A\": \n}",
    );
    let o = hocat(&["classify", &broken, "--name", "f"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));

    let o = hocat(&["check", "--instance", "RING", "--cases", "1"]);
    assert_eq!(code(&o), 2);
    let o = hocat(&["check", "--suite", "nonsense", "--cases", "1"]);
    assert_eq!(code(&o), 2);
    let o = hocat(&["cone"]);
    assert_eq!(code(&o), 2);

    let ws = s.workspace("ws.json", &random_workspace(InstanceId::VectQ, 1));
    let o = hocat(&["classify", &ws, "--name", "missing"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn check_is_deterministic() {
    let args = [
        "--output",
        "json",
        "check",
        "--suite",
        "resolve",
        "--instance",
        "all",
        "--seed",
        "11",
        "--cases",
        "8",
    ];
    let a: Value = serde_json::from_str(&stdout(&hocat(&args))).unwrap();
    let b: Value = serde_json::from_str(&stdout(&hocat(&args))).unwrap();
    assert_eq!(without_timing(a), without_timing(b));

    let cfg = RunConfig {
        cases: 8,
        seed: 99,
        ..RunConfig::default()
    };
    for inst in InstanceId::ALL {
        let x = run("model", inst, &cfg).unwrap();
        let y = run("model", inst, &cfg).unwrap();
        assert_eq!(x.body(), y.body());
    }
}

#[test]
fn seed_from_environment() {
    let run_with = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_hocat"))
            .args(["random", "--instance", "FGAB"])
            .env("HOCAT_SEED", seed)
            .output()
            .unwrap();
        stdout(&o)
    };
    assert_eq!(
        run_with("5"),
        stdout(&hocat(&["random", "--instance", "FGAB", "--seed", "5"]))
    );
}

#[test]
fn workspaces_round_trip() {
    for seed in 0..200u64 {
        let inst = InstanceId::ALL[(seed % 3) as usize];
        let ws = random_workspace(inst, seed);
        let text = ws.to_json();
        let back = Workspace::from_json(&text).unwrap();
        assert_eq!(text, back.to_json(), "seed {seed} on {inst:?}");
    }
}

#[test]
fn commands_on_a_random_workspace() {
    let s = Scratch::new("commands");
    for inst in InstanceId::ALL {
        let ws = s.workspace(&format!("{}.json", inst.name()), &random_workspace(inst, 4));
        for args in [
            vec!["classify", &ws, "--name", "f"],
            vec!["classify", &ws, "--name", "h"],
            vec!["cone", &ws, "--name", "h"],
            vec!["factorize", &ws, "--name", "h"],
            vec![
                "factorize",
                &ws,
                "--name",
                "h",
                "--kind",
                "trivcof-fib",
                "--flavor",
                "plus",
            ],
            vec!["resolve", &ws, "--name", "Z"],
            vec!["resolve", &ws, "--name", "C"],
            vec!["dk-gamma", &ws, "--name", "Z", "--level", "2"],
            vec!["dk-n", &ws, "--name", "S"],
        ] {
            let mut full = vec!["--output", "json"];
            full.extend(args.iter().copied());
            let o = hocat(&full);
            assert_eq!(
                code(&o),
                0,
                "{args:?} on {inst:?}: {}{}",
                stdout(&o),
                stderr(&o)
            );
            let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
            assert!(
                v.get("result").is_some() || v.get("complexes").is_some(),
                "{args:?}"
            );
        }
    }
}

#[test]
fn ext_over_the_integers() {
    let s = Scratch::new("ext");
    let ws = s.file(
        "groups.json",
        r#"{
  "instance": "FGAB",
  "objects": {
    "Z4": { "free": 0, "torsion": ["4"] },
    "Z6": { "free": 0, "torsion": ["6"] }
  }
}"#,
    );
    let o = hocat(&[
        "--output", "json", "ext", &ws, "--n", "1", "--a", "Z4", "--b", "Z6",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["ext"]["free"], 0);
    assert_eq!(v["result"]["ext"]["torsion"], serde_json::json!(["2"]));
    let o = hocat(&["ext", &ws, "--n", "2", "--a", "Z4", "--b", "Z6"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn lifting_a_disk_against_its_collapse() {
    let s = Scratch::new("lift");
    let e = Obj::vect(1);
    let (s0, d1) = (sphere(0, &e), disk(1, &e));
    let zero = hocat::chain::Complex::zero(InstanceId::VectQ);
    let incl = ChainMap::from_fn(&s0, &d1, |n| {
        if n == 0 {
            Mor::identity(&e)
        } else {
            Mor::zero(s0.obj(n), d1.obj(n))
        }
    })
    .unwrap();
    let mut ws = Workspace::new(InstanceId::VectQ);
    ws.add_chain_map("i", &incl);
    ws.add_chain_map("p", &ChainMap::zero(&d1, &zero));
    let path = s.workspace("square.json", &ws);
    for flavor in ["plus", "geq0"] {
        let o = hocat(&[
            "lift", &path, "--top", "i", "--left", "i", "--right", "p", "--bottom", "p",
            "--flavor", flavor,
        ]);
        assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).contains("verified: true"));
    }
}

#[test]
fn free_algebras_report_dimensions() {
    let o = hocat(&["--output", "json", "freealg", "--q", "2", "--d", "4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["result"].is_object());
}
