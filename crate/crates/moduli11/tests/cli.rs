//! End-to-end tests of the command-line surface: exit codes, output
//! formats, and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli11"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn table1_passes() {
    let out = run(&["table1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 7, "six rows plus the summary");
    assert!(text.contains("d5       2,2,2,2,2"));
    assert!(text.contains("d6       1,1,2,2,1"));
}

#[test]
fn classify_canonical_and_scaled() {
    let out = run(&["classify", "--coeffs", "-1,1,-1,1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("label: d1"));

    let out = run(&["classify", "--coeffs", "0,0,0,3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("label: d6"));

    let out = run(&["classify", "--coeffs", "0,0,0,0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("label: zero"));
}

#[test]
fn classify_rejects_non_codifferential() {
    let out = run(&["classify", "--coeffs", "1,1,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("not a codifferential"));
    // the y(x+y) residual shows up in the eff->e slot
    assert!(text.contains("phi[eff->e]: 2"));
}

#[test]
fn classify_usage_errors() {
    let out = run(&["classify", "--coeffs", "1,2,3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["classify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mc_residuals_and_exit() {
    let out = run(&["mc", "--coeffs", "1,0,0,0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("codifferential: yes"));

    let out = run(&["mc", "--coeffs", "0,1,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("phi[eef->f]: 1"));
}

#[test]
fn cohomology_formats() {
    let out = run(&["cohomology", "--alg", "d3", "--max-degree", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for n in 0..=8 {
        assert!(text.contains(&format!("n={n} ")));
    }
    assert_eq!(text.matches("h=0").count(), 9, "d3 vanishes everywhere");

    let out = run(&[
        "cohomology",
        "--alg",
        "d2",
        "--max-degree",
        "6",
        "--parity-split",
    ]);
    let text = stdout(&out);
    assert!(text.contains("h_even="));

    let out = run(&[
        "cohomology",
        "--alg",
        "d5",
        "--max-degree",
        "4",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("algebra,n,dim,rank,h,h_even,h_odd\n"));
    // rank D_4 = dim C^4 - h^4 - rank D_3 = 32 - 2 - 10
    assert!(text.contains("d5,4,32,20,2,1,1"));
}

#[test]
fn cohomology_json_round_trips() {
    let out = run(&[
        "cohomology",
        "--alg",
        "d6",
        "--max-degree",
        "6",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report = coderiv::cohomology::CohomologyReport::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.algebra, "d6");
    assert_eq!(report.h_values(), vec![1, 1, 2, 2, 1, 1, 2]);
    assert_eq!(report.to_json().trim(), stdout(&out).trim());
}

#[test]
fn cohomology_degree_cap_is_a_usage_error() {
    let out = run(&["cohomology", "--alg", "d1", "--max-degree", "15"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_of_the_zero_structure() {
    // D = 0, so h^n = dim C^n = 2^{n+1}
    let out = run(&["cohomology", "--alg", "zero", "--max-degree", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("zero,0,2,0,2,1,1"));
    assert!(text.contains("zero,2,8,0,8,4,4"));
}

#[test]
fn unknown_algebra_label() {
    let out = run(&["cohomology", "--alg", "d9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn equiv_command() {
    let out = run(&["equiv", "--left", "2,0,0,0", "--right", "1,0,0,0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("equivalent: b=1/2"));

    let out = run(&["equiv", "--left", "-1,1,0,0", "--right", "1,0,1,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not equivalent"));

    let out = run(&["equiv", "--left", "1,1,0,0", "--right", "1,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn deform_command() {
    let out = run(&["deform", "--alg", "d5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("odd H^2 generators: phi[ee->f]"));
    assert!(text.contains("miniversal = infinitesimal"));
    assert!(text.contains("jump targets: d1"));

    let out = run(&["deform", "--alg", "d1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no infinitesimal deformations"));

    let out = run(&["deform", "--alg", "d6", "--samples", "1,2,-1/2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("jump targets: d1"));

    let out = run(&["deform", "--alg", "zero"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn diagram_formats() {
    let out = run(&["diagram"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.contains("d5 -> d1 [style=dashed];"));
    assert!(dot.contains("d6 -> d1 [style=dashed];"));
    assert!(!dot.contains("zero"));

    let out = run(&["diagram", "--format", "json", "--include-zero"]);
    let diagram = coderiv::deform::ModuliDiagram::from_json(&stdout(&out)).unwrap();
    assert_eq!(diagram.nodes.len(), 7);
    assert_eq!(diagram.edges.len(), 2);
}

#[test]
fn selfcheck_passes() {
    let out = run(&["selfcheck", "--max-degree", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for suite in [
        "dim-growth",
        "d-squared",
        "jacobi",
        "table1",
        "orbit-invariance",
        "diagram",
    ] {
        assert!(text.contains(&format!("suite {suite}: PASS")), "{suite}");
    }
    assert!(text.contains("selfcheck: PASS"));
    // the long d6 suite only joins at max-degree 12
    assert!(!text.contains("d6-pattern"));
}

#[test]
fn selfcheck_at_degree_12_includes_the_d6_pattern_suite() {
    let out = run(&["selfcheck", "--max-degree", "12"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("suite d6-pattern: PASS"));
}

#[test]
fn outputs_are_byte_deterministic() {
    for args in [
        vec![
            "cohomology",
            "--alg",
            "d5",
            "--max-degree",
            "5",
            "--format",
            "json",
        ],
        vec!["deform", "--alg", "d6"],
        vec!["diagram"],
        vec!["classify", "--coeffs", "-3,3,-3,7"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
