use std::io::Write;
use std::process::{Command, Stdio};

use svkit::label::{KernelSpec, LabelGroup};
use svkit_cli::run_command;

fn svkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_svkit"))
}

#[test]
fn expression_from_stdin() {
    let mut child = svkit()
        .args(["eval"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"quad((s . .), [2,1], [1,1], (s . .))").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "quad((s . .), [2, 1], [1, 1], (s . .))\n");
}

#[test]
fn exit_statuses() {
    let status = |args: &[&str]| svkit().args(args).output().unwrap().status.code();
    assert_eq!(status(&["eq", "id", "id"]), Some(0));
    assert_eq!(status(&["eq", "id", "quad((s . .), [2,1], [1,1], (s . .))"]), Some(1));
    assert_eq!(status(&["no-such-command"]), Some(2));
    assert_eq!(status(&["eval", "-e", "quad((s . .), [1], [1], (s . .))"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
}

#[test]
fn syntax_errors_show_position() {
    let out = svkit().args(["eval", "-e", "id *\n  nope"]).output().unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2:3"), "{err}");
    assert!(err.contains("iota"), "{err}");
}

#[test]
fn given_oracle_overrides_the_default() {
    let o = LabelGroup::product_kernel(LabelGroup::sym(2).unwrap(), KernelSpec::Free { rank: 1 }).unwrap();
    let out = run_command(["svkit", "in-kernel", "-e", "iota(t)"], Some(&o));
    assert_eq!((out.status, out.stdout.as_str()), (0, "true\n"));
    let out = run_command(["svkit", "in-kernel", "-e", "iota(s)"], Some(&o));
    assert_eq!((out.status, out.stdout.as_str()), (1, "false\n"));
}

#[test]
fn text_output_of_decompose_verifies() {
    let o = LabelGroup::product_kernel(LabelGroup::cyclic_rotation(3).unwrap(), KernelSpec::FreeAbelian { rank: 2 }).unwrap();
    let out = run_command(
        ["svkit", "decompose", "--verify", "-e", "quad((0 . (1 . .)), [1,2,3], [k0, k1^2, k0^-1 k1], (0 . (1 . .)))"],
        Some(&o),
    );
    assert_eq!(out.status, 0, "{out:?}");
    assert!(out.stdout.lines().last().unwrap() == "verified: true");
}
