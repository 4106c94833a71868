mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::Command;

use common::{cli, fixture_path, hand_ch, named};
use corrpoly::geometry::{parse_inequalities, write_inequalities};
use corrpoly::scenario::{parse_points, presets, Scenario};

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_corrpoly"))
}

#[test]
fn vertices_command() {
    let r = cli(&["vertices", "--preset", "ch"]);
    assert_eq!(r.code, 0);
    let rows = data_rows(&r.stdout);
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|l| l.split(' ').count() == 8));
    assert_eq!(r.stderr, "vertices: 16\n");

    let r = cli(&["vertices", "--preset", "ghz26"]);
    let rows = data_rows(&r.stdout);
    assert_eq!(rows.len(), 64);
    assert!(rows.iter().all(|l| l.split(' ').count() == 26));

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("one.txt");
    fs::write(&f, "events: A1\n").unwrap();
    let r = cli(&["vertices", "--scenario", f.to_str().unwrap()]);
    assert_eq!(data_rows(&r.stdout), vec!["0", "1"]);
}

#[test]
fn facets_command() {
    let r = cli(&["facets", "--preset", "ch", "--verify"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stderr, "facets: 24\nverified: 24 facets\n");
    let s = presets::ch();
    let file = parse_inequalities(&r.stdout).unwrap();
    file.check_basis(&s).unwrap();
    let got: BTreeSet<_> = file.inequalities.iter().cloned().collect();
    assert_eq!(got, hand_ch(&s));
    // serialize(parse(x)) == x
    assert_eq!(write_inequalities(&s, &file.inequalities), r.stdout);

    let r = cli(&["facets", "--preset", "two-by-three", "--order", "max-cutoff"]);
    assert_eq!(data_rows(&r.stdout).len(), 684);
}

#[test]
fn facets_from_vertex_file() {
    let dir = tempfile::tempdir().unwrap();
    let v = dir.path().join("v.txt");
    let out = cli(&["vertices", "--preset", "bell-wigner"]).stdout;
    fs::write(&v, &out).unwrap();
    assert_eq!(parse_points(&out).unwrap().len(), 8);
    let a = cli(&["facets", "--vertices", v.to_str().unwrap()]);
    let b = cli(&["facets", "--preset", "bell-wigner"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(data_rows(&a.stdout), data_rows(&b.stdout));

    // a square in a plane of R^3: four facets and one equality
    fs::write(&v, "0 0 1\n1 0 1\n0 1 1\n1 1 1\n").unwrap();
    let r = cli(&["facets", "--vertices", v.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.matches("# equality:").count(), 1);
    assert_eq!(data_rows(&r.stdout).len(), 4);
}

#[test]
fn scenario_file_round_trip() {
    let s = presets::two_by_three();
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("two-by-three.txt");
    fs::write(&f, s.to_text()).unwrap();
    let parsed = Scenario::parse("two-by-three", &s.to_text()).unwrap();
    assert_eq!(parsed, s);
    assert_eq!(parsed.to_text(), s.to_text());
    let a = cli(&["facets", "--scenario", f.to_str().unwrap()]);
    let b = cli(&["facets", "--preset", "two-by-three"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn orbits_command() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ch.txt");
    fs::write(&f, cli(&["facets", "--preset", "ch"]).stdout).unwrap();
    let r = cli(&["orbits", "--facets", f.to_str().unwrap(), "--group", "complement"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stderr, "orbits: 5 (group order 16)\nclosure: pass\n");
    let r = cli(&["orbits", "--facets", f.to_str().unwrap(), "--group", "trivial", "-v"]);
    assert_eq!(r.stderr, "orbits: 24 (group order 1)\nclosure: pass\n");
    assert_eq!(r.stdout.matches("  via id\n").count(), 24);

    // drop one facet: the set is no longer closed
    let text = fs::read_to_string(&f).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    fs::write(&f, lines.join("\n")).unwrap();
    let r = cli(&["orbits", "--facets", f.to_str().unwrap()]);
    assert!(r.stderr.contains("closure: fail"), "{}", r.stderr);
}

#[test]
fn check_command() {
    let s = presets::two_by_three();
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    let facets = cli(&["facets", "--preset", "two-by-three"]).stdout;
    fs::write(&f, &facets).unwrap();
    let ineqs = parse_inequalities(&facets).unwrap().inequalities;
    let list = named(&s, "named_two_by_three.txt");
    let id_of = |label: &str| {
        let c = corrpoly::geometry::canonicalize(common::get(&list, label)).unwrap();
        ineqs.iter().position(|q| *q == c).unwrap() + 1
    };

    let r = cli(&[
        "check", "--facets", f.to_str().unwrap(), "--model", "singlet-symmetric-parallel",
        "--exact", "--records", "violated",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stderr, "violated: 12 / 684\n");
    assert!(r.stdout.contains(&format!("\n{},0,1/4,1/4,1\n", id_of("zero-a"))));
    assert!(r.stdout.contains(&format!("\n{},0,1/8,1/8,1\n", id_of("zero-b"))));

    // same thing through explicit angles
    let r2 = cli(&[
        "check", "--facets", f.to_str().unwrap(), "--singlet", "0,2pi/3,4pi/3", "--exact",
        "--records", "violated",
    ]);
    assert_eq!(r2.stdout, r.stdout);

    // the uniform mixture of all vertices is interior
    let p = dir.path().join("p.txt");
    let mut row = vec!["1/2"; 6];
    row.extend(vec!["1/4"; 9]);
    fs::write(&p, row.join(" ")).unwrap();
    let r = cli(&["check", "--facets", f.to_str().unwrap(), "--point", p.to_str().unwrap()]);
    assert_eq!(r.stderr, "violated: 0 / 684\n");
}

#[test]
fn single_point_scan_equals_check() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    fs::write(&f, cli(&["facets", "--preset", "two-by-three"]).stdout).unwrap();
    let scan = cli(&[
        "scan", "--facets", f.to_str().unwrap(), "--family", "singlet-mirror-parallel",
        "--axis", "2pi/3:2pi/3:1",
    ]);
    let check = cli(&["check", "--facets", f.to_str().unwrap(), "--singlet", "0,2pi/3,4pi/3"]);
    assert_eq!(scan.code, 0, "{}", scan.stderr);
    let stripped: Vec<String> = scan
        .stdout
        .lines()
        .map(|l| l.split_once(',').unwrap().1.to_string())
        .collect();
    let expected: Vec<&str> = check.stdout.lines().collect();
    assert_eq!(stripped, expected);
}

#[test]
fn scan_command_writes_summary_and_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("s.json");
    let envelope = dir.path().join("e.csv");
    let r = cli(&[
        "scan", "--preset", "two-by-three", "--grid", "fig2", "--points", "65", "--records", "violated",
        "--summary", summary.to_str().unwrap(), "--envelope", envelope.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let s = fs::read_to_string(&summary).unwrap();
    assert!(s.contains("\"grid_points\": 65"));
    assert!(s.contains("\"refined\""));
    let e = fs::read_to_string(&envelope).unwrap();
    assert_eq!(e.lines().count(), 66);
    assert!(e.starts_with("grid_param_1,violated_count,max_violation,argmax_id\n"));
    assert!(r.stdout.lines().skip(1).all(|l| l.ends_with(",1")));
}

#[test]
fn membership_command() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.txt");
    fs::write(
        &p,
        "1/2 1/2 1/2 1/2 1/4 1/4 1/4 1/4\n1/2 1/2 1/2 1/2 1/2 1/2 1/2 0\n1 0 1 1 1 1 0 0\n",
    )
    .unwrap();
    let r = cli(&["membership", "--preset", "ch", "--point", p.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let blocks: Vec<&str> = r.stdout.split("point ").skip(1).collect();
    assert!(blocks[0].contains("status: inside\nweights: 1/16 1/16"));
    assert_eq!(blocks[0].matches("1/16").count(), 16);
    assert!(blocks[1].contains("status: outside"));
    assert!(blocks[1].contains(
        "violated_facet_text: -P(A1) - P(B1) + P(A1B1) + P(A1B2) + P(A2B1) - P(A2B2) <= 0\nviolated_facet_value: 1/2"
    ));
    // vertex t = (A1, B1, B2): weight one on itself
    let w: Vec<&str> = blocks[2]
        .lines()
        .find(|l| l.starts_with("weights:"))
        .unwrap()
        .split_whitespace()
        .skip(1)
        .collect();
    assert_eq!(w.iter().filter(|x| **x == "1").count(), 1);
    assert_eq!(w.iter().filter(|x| **x == "0").count(), 15);
    assert_eq!(r.stderr, "inside: 2 / 3\n");
}

#[test]
fn exit_codes() {
    let status = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["vertices", "--preset", "ch"]), 0);
    assert_eq!(status(&["--help"]), 0);
    assert_eq!(status(&["frobnicate"]), 1);
    assert_eq!(status(&["vertices"]), 1);
    assert_eq!(status(&["vertices", "--preset", "nope"]), 1);
    assert_eq!(status(&["facets", "--preset", "ghz26"]), 1);
    assert_eq!(status(&["check", "--preset", "ch", "--facets", "/no/such/file", "--model", "ghz-pi2"]), 1);
    assert_eq!(status(&["facets", "--preset", "two-by-three", "--ray-cap", "5"]), 2);
    assert_eq!(status(&["check", "--preset", "two-by-three", "--model", "ghz-pi2"]), 2);
    assert_eq!(
        status(&["check", "--preset", "two-by-three", "--singlet", "0,pi/5,1", "--exact"]),
        2
    );
    let bad = fixture_path("ch_hand.txt");
    assert_eq!(status(&["membership", "--preset", "ch", "--point", bad.to_str().unwrap()]), 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    fs::write(&f, cli(&["facets", "--preset", "two-by-three"]).stdout).unwrap();
    for args in [
        vec!["facets", "--preset", "two-by-three"],
        vec!["orbits", "--facets", f.to_str().unwrap(), "-v"],
        vec!["check", "--facets", f.to_str().unwrap(), "--model", "singlet-less-symmetric-opposite"],
        vec!["scan", "--facets", f.to_str().unwrap(), "--grid", "fig2", "--points", "40"],
    ] {
        let mut one = args.clone();
        one.extend(["--threads", "1"]);
        let mut eight = args.clone();
        eight.extend(["--threads", "8"]);
        let (a, b) = (cli(&one), cli(&eight));
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
}

#[test]
fn ghz_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ghz.txt");
    let r = cli(&["facets", "--preset", "ghz26", "--slow", "--out", f.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stderr, "facets: 53856\n");
    let r = cli(&["orbits", "--facets", f.to_str().unwrap()]);
    assert_eq!(r.stderr, "orbits: 46 (group order 3072)\nclosure: pass\n");
    let r = cli(&["check", "--facets", f.to_str().unwrap(), "--ghz", "0,pi/2", "--exact", "--records", "none"]);
    assert_eq!(r.stderr, "violated: 1329 / 53856\n");
}
