//! One line per acceptance criterion, computed from two runs of the full
//! suite through the binary. Expected outcomes are asserted at the end:
//! every criterion passes except W-equivariance, whose literal form fails by
//! a scalar cocycle while the rho-shifted form holds. Runs without the test
//! harness so the lines always reach stdout.

use std::process::Command;
use std::time::Instant;

use serde_json::Value;

fn run_suite() -> (Vec<u8>, Option<i32>, f64) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_springer"))
        .args(["--no-cache", "--format", "json", "suite"])
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code(), start.elapsed().as_secs_f64())
}

fn report<'a>(suite: &'a Value, check: &str) -> &'a Value {
    suite["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == check)
        .unwrap_or_else(|| panic!("suite has no {check}"))
}

fn types(r: &Value) -> Vec<String> {
    r["results"].as_array().unwrap().iter().map(|x| x["type"].as_str().unwrap().to_string()).collect()
}

fn passed(r: &Value, required: &[&str]) -> bool {
    r["status"] == "pass" && required.iter().all(|t| types(r).iter().any(|x| x == t))
}

fn witnesses(r: &Value) -> impl Iterator<Item = &Value> {
    r["results"].as_array().unwrap().iter().map(|x| &x["witness"])
}

fn main() {
    let (first, code, secs) = run_suite();
    let (second, _, _) = run_suite();
    let suite: Value = serde_json::from_slice(&first).expect("suite JSON");
    let mut lines: Vec<(u32, bool, String)> = Vec::new();

    let hecke = report(&suite, "hecke-relations");
    let both_sides = witnesses(hecke)
        .flat_map(|w| w.as_array().unwrap())
        .flat_map(|flavor| flavor[1].as_array().unwrap())
        .all(|rel| rel["algebra"] == true && rel["module"] == true);
    lines.push((
        1,
        passed(hecke, &["A1", "A2", "A3", "B2", "B3", "C3", "G2"]) && both_sides,
        "H_t and nil-Hecke relations, in the algebra and on polynomials".into(),
    ));

    lines.push((2, passed(report(&suite, "nil-words"), &["A2", "B2", "G2"]), "nil operators independent of reduced word".into()));

    let flat = report(&suite, "flatness");
    lines.push((3, passed(flat, &["A2", "B2", "G2"]) && flat["order"] == 4, "curvature zero through height 4".into()));

    let eq = report(&suite, "equivariance");
    let rows: Vec<&Value> = witnesses(eq).flat_map(|w| w.as_array().unwrap()).collect();
    let cocycle = rows.iter().all(|r| r["scalar_defect"] == r["predicted_defect"] && r["gauged"] == true);
    lines.push((
        4,
        passed(eq, &["A2", "B2"]),
        format!("literal W-equivariance; defect is a scalar cocycle and the rho-shifted identity holds: {cocycle}"),
    ));

    let roots = report(&suite, "roots");
    lines.push((5, passed(roots, &["A4", "B4", "C4", "D4", "F4", "G2"]), "length bound with equality exactly on R+'".into()));

    let toda = report(&suite, "limit-toda");
    lines.push((6, passed(toda, &["A1", "A2", "B2", "G2"]) && toda["order"] == 3, "Toda limit through height 3".into()));

    let chev = report(&suite, "chevalley-flag");
    let sl2 = chev["results"][0]["summary"].as_str().unwrap() == "s1*s1 = (q1) e";
    let table = witnesses(chev).all(|w| w["commutative"] == true && w["associative"] == true && w["monk"] == true);
    lines.push((7, passed(chev, &["A1", "A2", "B2"]) && sl2 && table, "quantum Chevalley, s*s = q e in rank one".into()));

    lines.push((
        8,
        passed(report(&suite, "casimir-toda"), &["A1", "A2", "A3", "B2", "B3", "C3", "G2"]),
        "quadratic Toda Hamiltonian on 1 (x) 1".into(),
    ));

    let cm = report(&suite, "limit-cm");
    let simple_only = witnesses(cm).all(|w| {
        w["roots"].as_array().unwrap().iter().all(|r| {
            let height: i64 = r["root"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).sum();
            (r["survives"] == true) == (height == 1)
        })
    });
    lines.push((9, passed(cm, &["A1", "A2", "B2", "G2"]) && simple_only, "Calogero-Moser to Toda, potential on simple roots".into()));

    lines.push((10, passed(report(&suite, "cm-spectral"), &["A1"]), "rank-one spectral curve".into()));

    let shift = report(&suite, "shift");
    let w = &shift["results"][0]["witness"];
    let residual_zero = w["frobenius_residual"].as_array().unwrap().iter().all(|g| g.as_array().unwrap().is_empty());
    lines.push((
        11,
        passed(shift, &["A1"]) && residual_zero,
        format!("shift operators; {}", shift["results"][0]["summary"].as_str().unwrap()),
    ));

    lines.push((12, first == second, format!("two suite runs byte-identical ({} bytes, {secs:.1} s each)", first.len())));

    for (n, ok, what) in &lines {
        println!("criterion {n}: {} {what}", if *ok { "PASS" } else { "FAIL" });
    }
    assert_eq!(code, Some(1), "suite exits 1 while equivariance fails");
    for (n, ok, _) in &lines {
        assert_eq!(*ok, *n != 4, "criterion {n}");
    }
    assert!(cocycle, "equivariance defect is not the predicted scalar");
}
