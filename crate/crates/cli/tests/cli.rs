use std::process::{Command, Output};

use tlk_core::algebra::{builtin_target, count_colorings, upper_quandle};
use tlk_core::catalog::builtin_catalog;
use tlk_core::cover::double_cover;
use tlk_core::gauss::TwistedCode;
use tlk_core::ribbon::{abstract_diagram, surface_invariants};

const TREFOIL: &str = "(O1+ U2+ O3+ U1+ O2+ U3+)";

fn tlk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tlk(args);
    assert!(
        out.status.success(),
        "tlk {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn color_matches_library_byte_for_byte() {
    let got = stdout(&["color", TREFOIL, "--variant", "upper", "--target", "quandle:R3", "--json"]);
    let code = TwistedCode::parse(TREFOIL).unwrap();
    let n = count_colorings(
        &upper_quandle(&code).unwrap(),
        &builtin_target("R3").unwrap(),
    )
    .unwrap();
    assert_eq!(got, format!("{}\n", serde_json::json!(n)));
    assert_eq!(got.trim(), "9");
}

#[test]
fn cover_matches_library_byte_for_byte() {
    assert_eq!(stdout(&["cover", "(*)"]), "()\n");
    let got = stdout(&["cover", TREFOIL, "--json"]);
    let lib = double_cover(&TwistedCode::parse(TREFOIL).unwrap());
    assert_eq!(got, format!("{}\n", serde_json::to_value(&lib).unwrap()));
}

#[test]
fn stats_and_surface_match_library() {
    let code = TwistedCode::parse(TREFOIL).unwrap();
    assert_eq!(
        stdout(&["stats", TREFOIL, "--json"]),
        format!("{}\n", serde_json::to_value(code.stats()).unwrap())
    );
    let inv = surface_invariants(&abstract_diagram(&code));
    assert_eq!(
        stdout(&["surface", TREFOIL, "--json"]),
        format!("{}\n", serde_json::to_value(&inv).unwrap())
    );
}

#[test]
fn catalog_lookup_by_name() {
    assert_eq!(
        stdout(&["stats", "--name", "trefoil", "--json"]),
        stdout(&["stats", TREFOIL, "--json"])
    );
    let listed = stdout(&["catalog", "--json"]);
    let lib = serde_json::to_value(builtin_catalog()).unwrap();
    assert_eq!(listed, format!("{lib}\n"));
}

#[test]
fn external_catalog_file() {
    let dir = std::env::temp_dir().join(format!("tlk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cat.json");
    std::fs::write(
        &path,
        r#"[{"name":"kink","code":"(O1+ U1+)","notes":"one kink"}]"#,
    )
    .unwrap();
    let path = path.to_str().unwrap();
    let got = stdout(&["stats", "--name", "kink", "--catalog", path, "--json"]);
    assert_eq!(got, stdout(&["stats", "(O1+ U1+)", "--json"]));
    // built-in names are not visible through an external catalog
    let out = tlk(&["stats", "--name", "trefoil", "--catalog", path]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    // domain error: invalid code
    let out = tlk(&["validate", "(O1+"]);
    assert_eq!(out.status.code(), Some(1));
    // domain error: upper group of a barred code
    let out = tlk(&["group", "(*)", "--variant", "upper"]);
    assert_eq!(out.status.code(), Some(1));
    // domain error: unknown target
    let out = tlk(&["color", "()", "--target", "group:R3"]);
    assert_eq!(out.status.code(), Some(1));
    // usage errors
    let out = tlk(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tlk(&["stats"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tlk(&["stats", "()", "--name", "unknot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_suite_and_determinism() {
    let args = [
        "verify",
        "--suite",
        "known-values",
        "--seed",
        "7",
        "--json",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let reports: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(reports[0]["suite"], "known-values");
    assert_eq!(reports[0]["passed"], true);

    let out = tlk(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fuzz_small_budget_passes() {
    let out = tlk(&[
        "fuzz",
        "--name",
        "unknot-bar",
        "--walks",
        "3",
        "--steps",
        "4",
        "--seed",
        "5",
        "--json",
    ]);
    assert!(out.status.success());
    let reports: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(reports[0]["passed"], true);
    assert_eq!(reports[0]["walks"], 3);
}

#[test]
fn moves_round_trip_through_json() {
    let got = stdout(&["moves", "(O1+ * U1+ *)", "--json"]);
    let sites: Vec<tlk_core::moves::MoveSite> = serde_json::from_str(&got).unwrap();
    let lib = tlk_core::moves::enumerate_moves(&TwistedCode::parse("(O1+ * U1+ *)").unwrap());
    assert_eq!(sites, lib);
}
