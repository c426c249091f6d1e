use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const FIGURE: &str = "shape: 4,4,4,3\n**..\n..*.\n****\n..*\n";

fn altperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altperm"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = altperm(args);
    assert!(
        out.status.success(),
        "altperm {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn psi_worked_example() {
    assert_eq!(ok(&["psi", "52318674"]), "3142\n");
    assert_eq!(ok(&["psi-inv", "3142"]), "52318674\n");
    // 153426 fixes 1, 3, 4, 6 and is reverse alternating
    assert_eq!(ok(&["psi", "--reverse", "153426"]), "21\n");
}

#[test]
fn psi_rejects_identity() {
    let out = altperm(&["psi", "12345"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("positions 1 and 2"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(altperm(&["psi"]).status.code(), Some(2));
    assert_eq!(altperm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(altperm(&["counts", "--n", "x"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let fig = write(dir.path(), "fig.tab", FIGURE);
    let out = altperm(&[
        "render",
        fig.to_str().unwrap(),
        "--trace",
        "1",
        "--trace",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn phi_of_figure() {
    let dir = tempfile::tempdir().unwrap();
    let fig = write(dir.path(), "fig.tab", FIGURE);
    assert_eq!(ok(&["phi", fig.to_str().unwrap()]), "74836215\n");
}

#[test]
fn invalid_tableau_is_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.tab", "shape: 2,1\n*.\n.\n");
    let out = altperm(&["phi", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rule (1)"));

    let out = altperm(&["phi", dir.path().join("missing.tab").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn theta_then_psi_tab() {
    let dir = tempfile::tempdir().unwrap();
    let dt = write(dir.path(), "dt.tab", "shape: 2,1\n.*\n*\n");
    let lifted = ok(&["theta", dt.to_str().unwrap()]);
    assert_eq!(lifted, "shape: 2,2,2,1,1,1\n.*\n..\n..\n*\n.\n.\n");
    let at = write(dir.path(), "at.tab", &lifted);
    assert_eq!(ok(&["phi", at.to_str().unwrap()]), "42318675\n");
    assert_eq!(
        ok(&["psi-tab", at.to_str().unwrap()]),
        "shape: 2,1\n.*\n*\n"
    );
}

#[test]
fn commuting_square_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let at = write(
        dir.path(),
        "at.tab",
        "shape: 2,2,2,1,1,1\n.*\n..\n..\n*\n.\n.\n",
    );
    let at = at.to_str().unwrap();
    let image = ok(&["phi", at]);
    let via_words = ok(&["psi", image.trim()]);
    let reduced = write(dir.path(), "dt.tab", &ok(&["psi-tab", at]));
    let via_tableaux = ok(&["phi", reduced.to_str().unwrap()]);
    assert_eq!(via_words, via_tableaux);
}

#[test]
fn counts_machine_format() {
    assert_eq!(
        ok(&["counts", "--n", "4", "--machine"]),
        "4 0 2 2\n4 1 2 2\n4 2 1 1\n4 3 0 0\n4 4 0 0\n"
    );
    assert!(ok(&["counts", "--n", "6"]).contains("sum      61      61\n"));
}

#[test]
fn caps_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_altperm"))
        .args(["counts", "--n", "9"])
        .env("ALTPERM_MAX_ALT_N", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ALTPERM_MAX_ALT_N"));
}

#[test]
fn verify_small_range() {
    let out = ok(&["verify", "--max-n", "6", "--machine"]);
    assert!(out
        .lines()
        .all(|l| l.starts_with("CHECK ") && l.contains(" PASS")));
    assert!(out.contains("CHECK equidistribution-alternating n=4..6 PASS\n"));
    let human = ok(&["verify", "--max-n", "6"]);
    assert!(human.ends_with(" 0 failed\n"));
}

#[test]
fn render_text_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let fig = write(dir.path(), "fig.tab", FIGURE);
    let fig = fig.to_str().unwrap();
    let text = ok(&["render", fig]);
    assert!(text.starts_with("+---+---+---+---+\n| * | * |   |   | 1\n"));
    assert!(text.ends_with("+-8-+-7-+-6-+\n"));

    let svg = dir.path().join("fig.svg");
    let svg_path = svg.to_str().unwrap();
    assert_eq!(
        ok(&["render", fig, "--svg", svg_path, "--trace", "1", "--trace", "6"]),
        ""
    );
    let first = fs::read(&svg).unwrap();
    ok(&[
        "render", fig, "--svg", svg_path, "--trace", "6", "--trace", "1",
    ]);
    assert_eq!(first, fs::read(&svg).unwrap());

    let out = altperm(&["render", fig, "--trace", "9"]);
    assert_eq!(out.status.code(), Some(1));
}
