//! Black-box tests of the binary: exit codes, validation messages, field
//! overrides, and byte-identical reports on repeated runs.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn mhi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mhi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn fixture_runs_succeed() {
    for args in [
        vec!["plumbing", &fixture("three_lines.json")],
        vec!["plumbing", &fixture("danielewski_3.json")],
        vec!["arrangement", &fixture("coordinate_axes_2d.json")],
        vec!["cech", &fixture("triangle_cech.json")],
        vec!["gw", &fixture("three_lines_matrix.json"), "--matrix", "--diagonalize"],
        vec!["gw", "n_eps(2)"],
    ] {
        let out = mhi(&args);
        assert!(out.status.success(), "args {args:?}: {:?}", out);
    }
}

#[test]
fn self_edge_exits_2_with_field_path() {
    let f = write_temp(
        r#"{"field":{"kind":"real_closed"},
            "vertices":[{"name":"A","d":0}],
            "edges":[{"i":0,"j":0,"points":[{"m":1,"residue":"rational"}]}]}"#,
    );
    let out = mhi(&["plumbing", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("self-edge at edges[0]"), "{stderr}");
}

#[test]
fn duplicate_hyperplane_exits_2() {
    let f = write_temp(r#"{"dim":2,"hyperplanes":[[1,0,0],[2,0,0]]}"#);
    let out = mhi(&["arrangement", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate hyperplane"));
}

#[test]
fn odd_weight_exits_3_unless_rank_only() {
    let f = write_temp(
        r#"{"field":{"kind":"real_closed"},
            "vertices":[{"name":"E","d":-1}],
            "edges":[]}"#,
    );
    let path = f.path().to_str().unwrap().to_owned();
    let out = mhi(&["plumbing", &path]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank-only"));

    let out = mhi(&["plumbing", &path, "--rank-only"]);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("classical Mumford matrix"));
}

#[test]
fn artin_point_on_homology_path_exits_3() {
    let f = write_temp(
        r#"{"field":{"kind":"real_closed"},
            "vertices":[{"name":"A","d":0},{"name":"B","d":0}],
            "edges":[{"i":0,"j":1,"points":[{"m":1,"residue":{"quadratic":"-1"}}]}]}"#,
    );
    let out = mhi(&["plumbing", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn inconsistent_face_data_exits_2_naming_the_composite() {
    // a three-level cover where the explicit face map breaks d o d = 0
    let f = write_temp(
        r#"{"strata":[
              {"subset":[0],"kind":"points","count":1},
              {"subset":[1],"kind":"points","count":1},
              {"subset":[2],"kind":"points","count":1},
              {"subset":[0,1],"kind":"points","count":1},
              {"subset":[0,2],"kind":"points","count":1},
              {"subset":[1,2],"kind":"points","count":1},
              {"subset":[0,1,2],"kind":"points","count":1}],
            "face_data":[{"from":[0,1,2],"to":[0,1],"matrix":[[3]]}]}"#,
    );
    let out = mhi(&["cech", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("d o d != 0"), "{stderr}");
}

#[test]
fn field_override_must_be_compatible() {
    // a real-closed token in the record is invalid over F_5
    let f = write_temp(
        r#"{"field":{"kind":"real_closed"},
            "vertices":[{"name":"A","d":0},{"name":"B","d":0}],
            "edges":[{"i":0,"j":1,"points":[{"m":1,"residue":{"quadratic":"-1"}}]}]}"#,
    );
    let out = mhi(&["--field", "fq:5", "plumbing", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // rational-only records are compatible with any field
    let out = mhi(&["--field", "fq:5", "plumbing", &fixture("three_lines.json")]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("F_5"));
}

#[test]
fn invalid_field_flag_is_rejected() {
    let out = mhi(&["--field", "fq:4", "gw", "H"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mhi(&["--field", "zz", "gw", "H"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gw_parse_errors_carry_a_position() {
    let out = mhi(&["gw", "H + "]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 4"));
}

#[test]
fn empty_arrangement_at_infinity() {
    let f = write_temp(r#"{"dim":2,"hyperplanes":[]}"#);
    let out = mhi(&["arrangement", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("Pi_inf = 1 + 1(2)[3]"), "{stdout}");
}

#[test]
fn single_stratum_cech_passthrough() {
    let f = write_temp(r#"{"strata":[{"subset":[0],"kind":"p1"}]}"#);
    let out = mhi(&["cech", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("H_0 = 1"), "{stdout}");
    assert!(stdout.contains("H_2 = 1(1)"), "{stdout}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["--format", "record", "plumbing", &fixture("three_lines.json")],
        vec!["--format", "record", "arrangement", &fixture("coordinate_axes_2d.json")],
        vec!["--format", "record", "cech", &fixture("triangle_cech.json")],
    ] {
        let a = mhi(&args);
        let b = mhi(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
    }
}

#[test]
fn seed_is_echoed_in_the_record() {
    let out = mhi(&["--format", "record", "--seed", "42", "gw", "H"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"seed\": 42"));
}
