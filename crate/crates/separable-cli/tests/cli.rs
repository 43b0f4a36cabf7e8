//! End-to-end checks of the command-line surface: exit codes, file
//! round-trips, and deterministic CSV output.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_separable"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("separable-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bounds_prints_known_value() {
    let out = bin()
        .args(["bounds", "--geometry", "euclidean", "--lambda", "0.93"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // pi / (4 * 0.93)
    assert!(text.contains("8.4451415419080456e-1"), "{text}");
    assert!(text.contains("family-at-leg"));
}

#[test]
fn verify_exit_codes() {
    let path = tmp("grid.pack");
    let out = bin()
        .args(["generate", "--kind", "square-grid", "--n", "3", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());

    let ok = bin().arg("verify").arg(&path).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));

    // lambda above rho is an input error.
    let bad = bin()
        .arg("verify")
        .arg(&path)
        .args(["--lambda", "1.01"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));

    // A non-separable override is a property violation: shrink rho first by
    // writing a modified file.
    let text = std::fs::read_to_string(&path).unwrap();
    let squeezed = text.replace(
        "rho 1.0000000000000000e0",
        "rho 1.0099999999999999e0",
    );
    let path2 = tmp("squeezed.pack");
    std::fs::write(&path2, squeezed).unwrap();
    let fail = bin().arg("verify").arg(&path2).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));

    let missing = bin().arg("verify").arg(tmp("nope.pack")).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn sweep_csv_is_deterministic() {
    let a = bin()
        .args([
            "sweep",
            "--geometry",
            "euclidean",
            "--quantity",
            "density",
            "--end",
            "1.0",
            "--steps",
            "100",
        ])
        .output()
        .unwrap();
    assert!(a.status.success());
    let b = bin()
        .args([
            "sweep",
            "--geometry",
            "euclidean",
            "--quantity",
            "density",
            "--end",
            "1.0",
            "--steps",
            "100",
        ])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 102, "header plus 101 rows");
    assert!(text.starts_with("lambda,value,regime\n"));
    // The kink at sqrt(3)/2: regimes switch between regular and family.
    assert!(text.contains("regular"));
    assert!(text.contains("family-at-leg"));
}

#[test]
fn decompose_and_contact_reports() {
    let path = tmp("hex.pack");
    bin()
        .args(["generate", "--kind", "hex-patch", "--n", "7", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    let cells = tmp("hex.cells");
    let svg = tmp("hex.svg");
    let out = bin()
        .arg("decompose")
        .arg(&path)
        .arg("--cells")
        .arg(&cells)
        .arg("--svg")
        .arg(&svg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let cells_text = std::fs::read_to_string(&cells).unwrap();
    assert!(cells_text.starts_with("separable-cells v1"));
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));

    let contact = bin().arg("contact").arg(&path).output().unwrap();
    let text = String::from_utf8(contact.stdout).unwrap();
    assert!(text.contains("contacts 12"), "{text}");
    assert!(text.contains("triangle-free false"));
}

#[test]
fn regions_sweep_spherical() {
    let out = bin()
        .args([
            "sweep",
            "--geometry",
            "spherical",
            "--quantity",
            "regions",
            "--start",
            "0.01",
            "--end",
            "0.6",
            "--steps",
            "50",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("y-regular-min"));
    assert!(text.contains("branch-point"));
}
