use std::fs;
use std::path::Path;
use std::process::Command;

use fglobs::cli::{golden_configs, golden_text, run, RunConfig};

fn fglobs(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fglobs")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn typical_todd_run_exits_two() {
    let (code, out, _) = fglobs(&["obstruct", "--prime", "3", "--n", "5", "--orientation", "todd-p-typical", "--x-bound", "27"]);
    assert_eq!(code, 2);
    assert!(out.contains("x^9: remainder β^10·t^4 (mod 3)"), "{out}");
    for x in 1..9 {
        assert!(out.contains(&format!("x^{x}: remainder 0 (mod 3)")), "x^{x}");
    }
}

#[test]
fn pow_choice_is_an_alias() {
    let (a, out_a, _) = fglobs(&["obstruct", "--pow-choice", "9"]);
    let (b, out_b, _) = fglobs(&["obstruct", "--x-bound", "9"]);
    assert_eq!((a, b), (2, 2));
    assert_eq!(out_a, out_b);
}

#[test]
fn identity_run_exits_zero() {
    let (code, out, _) = fglobs(&["obstruct", "--prime", "3", "--n", "5", "--orientation", "identity"]);
    assert_eq!(code, 0);
    assert!(out.contains("no obstruction found"));
}

#[test]
fn frobenius_over_fp() {
    let (code, out, _) = fglobs(&["frobenius", "--ring", "fp", "--prime", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(x·t^4 - x^5)/t^4");
}

#[test]
fn errors_exit_one() {
    assert_eq!(fglobs(&[]).0, 1);
    assert_eq!(fglobs(&["obstruct", "--prime", "6"]).0, 1);
    assert_eq!(fglobs(&["obstruct", "--n", "zero"]).0, 1);
    assert_eq!(fglobs(&["jn", "--prime", "2", "--d", "3"]).0, 1);
    assert_eq!(fglobs(&["obstruct", "--orientation", "nope", "--x-bound", "3"]).0, 1);
    assert_eq!(fglobs(&["frobenius", "--bogus"]).0, 1);
    let dir = std::env::temp_dir().join(format!("fglobs-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.json");
    fs::write(&empty, "{}").unwrap();
    let (code, _, err) = fglobs(&["--config", empty.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("no command"), "{err}");
    let unknown = dir.join("unknown.json");
    fs::write(&unknown, r#"{"command": "obstruct", "colour": 1}"#).unwrap();
    assert_eq!(fglobs(&["--config", unknown.to_str().unwrap()]).0, 1);
    assert_eq!(fglobs(&["--config", dir.join("missing.json").to_str().unwrap()]).0, 1);
}

#[test]
fn config_file_and_flags_merge() {
    let dir = std::env::temp_dir().join(format!("fglobs-cfg-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.json");
    fs::write(&cfg, r#"{"command": "frobenius", "ring": "fp", "prime": 3, "output": "json"}"#).unwrap();
    let (code, out, _) = fglobs(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["frobenius"], "(x·t^2 - x^3)/t^2");
    let (_, out, _) = fglobs(&["--config", cfg.to_str().unwrap(), "--prime", "5", "--output", "text"]);
    assert_eq!(out.trim(), "(x·t^4 - x^5)/t^4");
}

#[test]
fn jn_reports_the_leading_terms() {
    let (code, out, _) = fglobs(&["jn", "--prime", "2", "--n", "5", "--d", "2"]);
    assert_eq!(code, 2);
    assert!(out.contains("t^2·(v1^6 + v2^2)"), "{out}");
    let (_, json, _) = fglobs(&["jn", "--prime", "2", "--d", "4", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["leading_mod_p"], "v1^4*v2^2");
}

#[test]
fn other_commands_run() {
    let (code, out, _) = fglobs(&["rigidity", "--order", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("t^0 comparison forces d = 0: true"));
    let (code, out, _) = fglobs(&["fgl", "--prime", "3", "--x-bound", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("[3](t) = 3·t - 3·β·t^2 + β^2·t^3"), "{out}");
    assert!(out.contains("x + 1/2·β·x^2 - 1/4·β^3·x^4 - 1/20·β^4·x^5"), "{out}");
    let (code, out, _) = fglobs(&["sharp", "--ring", "additive", "--weights", "1", "--x-bound", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("x + x^2·t^-1"), "{out}");
    let (code, out, _) = fglobs(&["bm-experiment", "--ring", "additive", "--x-bound", "3", "--t-bound", "3", "--output", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["orderings"].as_array().unwrap().len(), 2);
    assert_eq!(fglobs(&["bm-experiment", "--prime", "3"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["obstruct", "--x-bound", "12", "--output", "json"];
    assert_eq!(fglobs(&args).1, fglobs(&args).1);
}

#[test]
fn goldens_regenerate_bit_identically() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, cfg) in golden_configs() {
        let shipped = fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(golden_text(&cfg).unwrap(), shipped, "{name}");
    }
    let out = std::env::temp_dir().join(format!("fglobs-golden-{}", std::process::id()));
    let (code, _, _) = fglobs(&["golden", "--path", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    for (name, _) in golden_configs() {
        let a = fs::read(dir.join(format!("{name}.json"))).unwrap();
        let b = fs::read(out.join(format!("{name}.json"))).unwrap();
        assert_eq!(a, b, "{name}");
    }
    assert!(run(&RunConfig::default()).is_err());
}

#[test]
fn window_growth_keeps_reported_coefficients() {
    let verdict = |x: &str, t: &str| {
        let (_, out, _) = fglobs(&["obstruct", "--x-bound", x, "--t-bound", t, "--output", "json"]);
        serde_json::from_str::<serde_json::Value>(&out).unwrap()
    };
    let a = verdict("10", "4");
    let b = verdict("12", "5");
    for (sa, sb) in a["slices"].as_array().unwrap().iter().zip(b["slices"].as_array().unwrap()) {
        assert_eq!(sa["remainder_terms"], sb["remainder_terms"]);
    }
}
