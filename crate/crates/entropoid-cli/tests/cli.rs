use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entropoid"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

fn scratch(name: &str) -> PathBuf {
    let d = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn kex_demo_agrees_over_the_pipe() {
    let o = run(&["kex-demo", "--lambda", "128", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let a = field(&out, "alice_shared");
    assert_eq!(a.len(), 64);
    assert!(a.bytes().all(|c| c.is_ascii_hexdigit()));
    assert_eq!(a, field(&out, "bob_shared"));
    assert_eq!(field(&out, "bytes_on_wire"), "64");
    assert_eq!(field(&out, "agree"), "true");
}

#[test]
fn seed_makes_runs_repeatable() {
    for args in [
        &["kex-demo", "--lambda", "64", "--seed", "11"][..],
        &["params", "--lambda", "40", "--seed", "11"][..],
        &["analyze", "--lambda", "16", "--trials", "3", "--seed", "11"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = run(&["kex-demo", "--lambda", "64", "--seed", "1"]);
    let b = run(&["kex-demo", "--lambda", "64", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn tables_e7_prints_the_grid() {
    let o = run(&["tables", "--which", "e7"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("E_7^2(6, 3, 3, 4)"));
    // x1 = 0 row of the span grid: the neutral element (0, 6) has span 1.
    let row = out
        .lines()
        .skip_while(|l| !l.ends_with("|<x>|"))
        .nth(2)
        .unwrap();
    assert_eq!(row.split_whitespace().collect::<Vec<_>>(), ["0", "9", "2", "36", "4", "9", "36", "1"]);
}

#[test]
fn sign_and_verify_across_processes() {
    let d = scratch("sigflow");
    let params = d.join("p.txt");
    let msg = d.join("m.txt");
    std::fs::write(&msg, b"entropoid message").unwrap();
    assert!(run(&["params", "--lambda", "128", "--seed", "3", "--out", s(&params)]).status.success());
    for scheme in ["cderp", "conservative"] {
        let prefix = d.join(scheme);
        let o = run(&["keygen", "--params", s(&params), "--scheme", scheme, "--seed", "4", "--out", s(&prefix)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let key = prefix.with_extension("key");
        let public = prefix.with_extension("pub");
        let sig = d.join(format!("{scheme}.sig"));
        let o = run(&["sign", "--params", s(&params), "--key", s(&key), "--msg", s(&msg), "--out", s(&sig)]);
        assert!(o.status.success());
        let sig_hex = field(&stdout(&o), "signature").to_string();
        assert_eq!(hex::encode(std::fs::read(&sig).unwrap()), sig_hex);

        let verify = |sig: &Path| {
            run(&["verify", "--params", s(&params), "--key", s(&public), "--msg", s(&msg), "--sig", s(sig)])
                .status
                .code()
        };
        assert_eq!(verify(&sig), Some(0));

        let mut bytes = std::fs::read(&sig).unwrap();
        bytes[5] ^= 1;
        let bad = d.join(format!("{scheme}.bad"));
        std::fs::write(&bad, &bytes).unwrap();
        assert_eq!(verify(&bad), Some(1));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["tables", "--which", "e8"]).status.code(), Some(2));
    assert_eq!(run(&["params"]).status.code(), Some(2));
    let o = run(&["verify", "--params", "/nonexistent", "--key", "k", "--msg", "m", "--sig", "s"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let d = scratch("config");
    let cfg = d.join("run.conf");
    std::fs::write(&cfg, "# toy run\nlambda=32\nseed=19\n").unwrap();
    let a = run(&["--config", s(&cfg), "params"]);
    let b = run(&["params", "--lambda", "32", "--seed", "19"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    std::fs::write(&cfg, "colour=red\n").unwrap();
    assert_eq!(run(&["--config", s(&cfg), "params"]).status.code(), Some(2));
}

#[test]
fn analyze_emits_csv_and_delp_solves() {
    let o = run(&["analyze", "--base", "4", "--level", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "base,i,r_i,n_ij,H1,H2,Hmin,Hmin_closed_form");
    assert!(lines.next().unwrap().starts_with("4,3,"));

    let o = run(&["delp", "--base", "5", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "verified"), "true");
}
