//! `--json` output of every subcommand against files in `tests/golden/`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::io::Write;
use std::path::PathBuf;

use svkit_cli::run_command;
use tempfile::NamedTempFile;

const PK: &str = r#"{"kind": "product_kernel", "base": {"kind": "sym", "n": 2},
                     "kernel": {"kind": "free", "rank": 1}, "colors": ["a", "b"]}"#;
const GH: &str = r#"{"kind": "product_kernel", "base": {"kind": "trivial", "n": 1},
                     "kernel": {"kind": "free", "rank": 2}, "generators": ["g", "h"], "colors": ["s"]}"#;
const C2: &str = r#"{"kind": "cyclic_rotation", "n": 2, "colors": ["r", "b"]}"#;
const SYM3: &str = r#"{"kind": "sym", "n": 3}"#;
const Z3: &str = r#"{"generators": ["a"], "relators": ["a a a"]}"#;
const Z2: &str = r#"{"generators": ["a", "b"], "relators": ["a b a^-1 b^-1"]}"#;

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn golden(name: &str, config: Option<&str>, args: &[&str], status: i32) {
    let cfg = config.map(file);
    let mut argv = vec!["svkit".to_string(), "--json".to_string()];
    if let Some(f) = &cfg {
        argv.push("--config".into());
        argv.push(f.path().display().to_string());
    }
    argv.extend(args.iter().map(|s| s.to_string()));
    let out = run_command(&argv, None);
    assert_eq!(out.status, status, "{name}: {out:?}");
    serde_json::from_str::<serde_json::Value>(&out.stdout).unwrap_or_else(|e| panic!("{name}: {e}: {}", out.stdout));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(out.stdout, expected, "{name}");
}

#[test]
fn eval() {
    golden("eval", None, &["eval", "-e", "quad((s (s . .) .), [2, 1, 3], [1, 1, 1], (s . (s . .)))^2"], 0);
    golden("eval_identity", None, &["eval", "-e", "quad((s . .), [2,1], [1,1], (s . .))^2"], 0);
}

#[test]
fn eq() {
    golden("eq_true", Some(GH), &["eq", "iota1(s, g) * iota1(s, h)", "iota1(s, g h)"], 0);
    golden("eq_false", Some(GH), &["eq", "iota1(s, g) * iota1(s, h)", "iota1(s, h g)"], 1);
}

#[test]
fn act_and_twist() {
    golden("act", None, &["act", "-e", "quad((s . .), [2,1], [1,1], (s . .))", "-p", "{s: 0(0)}"], 0);
    golden("twist", Some(C2), &["twist", "-e", "quad((r . .), [2,1], [r, 1], (r . .))", "-p", "{r: 0(1)}"], 0);
}

#[test]
fn in_kernel() {
    golden("in_kernel_true", Some(PK), &["in-kernel", "-e", "iota(t)"], 0);
    golden("in_kernel_false", Some(PK), &["in-kernel", "-e", "iota(s)"], 1);
}

#[test]
fn retract() {
    golden("retract", Some(C2), &["retract", "-e", "quad((r (r . .) .), [1,2,3], [1,1,r], (r . (r . .)))"], 0);
    golden("retract_at_point", Some(C2), &["retract", "-e", "iota(r)", "-p", "{r: 1(0)}"], 0);
}

#[test]
fn decompose() {
    golden("decompose", Some(PK), &["decompose", "-e", "quad((a . .), [1,2], [t, t^-1], (a . .))", "--verify"], 0);
    golden("decompose_outside_kernel", Some(PK), &["decompose", "-e", "iota(s)"], 2);
}

#[test]
fn witness() {
    golden("witness", Some(PK), &["witness", "-e", "iota(s)", "--brick", "{a:0}", "--label", "t", "--verify"], 0);
}

#[test]
fn gens_and_analyze() {
    golden("gens", Some(C2), &["gens"], 0);
    golden("analyze", Some(SYM3), &["analyze", "-n", "2"], 0);
}

#[test]
fn kuznetsov() {
    let z3 = file(Z3);
    let z2 = file(Z2);
    let p3 = z3.path().display().to_string();
    let p2 = z2.path().display().to_string();
    golden("kuznetsov_trivial", None, &["kuznetsov", "--presentation", &p3, "--word", "a a a", "--budget", "24"], 0);
    golden("kuznetsov_nontrivial", None, &["kuznetsov", "--presentation", &p3, "--word", "a", "--budget", "24"], 0);
    golden(
        "kuznetsov_exhausted",
        None,
        &["kuznetsov", "--presentation", &p2, "--word", "a", "--budget", "6", "--max-states", "50"],
        3,
    );
}

#[test]
fn selftest() {
    golden("selftest", None, &["selftest"], 0);
}

#[test]
fn errors() {
    golden("syntax_error", None, &["eval", "-e", "iota(1) *"], 2);
    golden("unknown_color", None, &["eval", "-e", "iota1(q, 1)"], 2);
}
