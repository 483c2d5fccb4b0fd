//! End-to-end tests against the compiled binary: exit codes, output
//! formats, determinism, and the JSON schema.

use std::io::Write;
use std::process::{Command, Output};

const S3: &str = "< x, y | x^3, y^2, (x y)^2 >";
const Z2_LATTICE: &str = "< x, y | x y x^-1 y^-1 >";

fn outerd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_outerd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn json(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(output)).expect("stdout is JSON")
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(exit_code(&outerd(&["--help"])), 0);
    assert_eq!(exit_code(&outerd(&["--version"])), 0);
    assert_eq!(exit_code(&outerd(&["verify", "--help"])), 0);
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_eq!(exit_code(&outerd(&[])), 1);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(exit_code(&outerd(&["enumerate", "--inline", S3, "--frobnicate"])), 1);
}

#[test]
fn input_must_be_exactly_one_of_file_or_inline() {
    let neither = outerd(&["parse"]);
    assert_eq!(exit_code(&neither), 1);
    assert!(stderr(&neither).contains("exactly one presentation"));

    let both = outerd(&["parse", "some-file.txt", "--inline", S3]);
    assert_eq!(exit_code(&both), 1);
}

#[test]
fn parse_echoes_a_canonical_form_that_reparses() {
    let first = outerd(&["parse", "--inline", S3]);
    assert_eq!(exit_code(&first), 0);
    let canonical = stdout(&first);
    assert_eq!(canonical.trim(), "< x, y | x x x, y y, x y x y >");

    let second = outerd(&["parse", "--inline", canonical.trim()]);
    assert_eq!(exit_code(&second), 0);
    assert_eq!(stdout(&second), canonical);
}

#[test]
fn parse_json_lists_generators_relators_and_warnings() {
    let output = outerd(&["parse", "--json", "--inline", S3]);
    assert_eq!(exit_code(&output), 0);
    let doc = json(&output);
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["generators"], serde_json::json!(["x", "y"]));
    assert_eq!(doc["relators"], serde_json::json!(["x x x", "y y", "x y x y"]));
    assert_eq!(doc["warnings"], serde_json::json!([]));
}

#[test]
fn parse_reports_syntax_errors_with_a_position() {
    let output = outerd(&["parse", "--inline", "< x | x^"]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr(&output).contains("syntax error at byte 8"));
}

#[test]
fn reduced_relators_surface_as_warnings() {
    let text = outerd(&["parse", "--inline", "< x | x x x^-1 x >"]);
    assert_eq!(exit_code(&text), 0);
    assert!(stderr(&text).contains("warning:"));

    let doc = json(&outerd(&["parse", "--json", "--inline", "< x | x x x^-1 x >"]));
    let warnings = doc["warnings"].as_array().unwrap();
    assert_eq!(warnings.len(), 1);
    assert!(warnings[0].as_str().unwrap().contains("reduced"));
}

#[test]
fn enumerate_prints_order_classes_and_sizes() {
    let s3 = outerd(&["enumerate", "--inline", S3]);
    assert_eq!(exit_code(&s3), 0);
    assert_eq!(stdout(&s3), "order=6 classes=3 sizes=[1,2,3]\n");

    let z4 = outerd(&["enumerate", "--inline", "< x | x^4 >"]);
    assert_eq!(stdout(&z4), "order=4 classes=4 sizes=[1,1,1,1]\n");
}

#[test]
fn enumerate_reads_presentations_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.txt");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "{S3}").unwrap();
    drop(file);

    let output = outerd(&["enumerate", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout(&output), "order=6 classes=3 sizes=[1,2,3]\n");
}

#[test]
fn missing_file_is_a_usage_error() {
    let output = outerd(&["enumerate", "/nonexistent/path.txt"]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr(&output).contains("cannot read"));
}

#[test]
fn exhausted_coset_budget_exits_two_and_names_the_flag() {
    let output = outerd(&["enumerate", "--inline", "< x | >", "--coset-budget", "50"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("--coset-budget"));
}

#[test]
fn enumerate_rejects_the_free_abelian_backend() {
    let output = outerd(&[
        "enumerate",
        "--inline",
        Z2_LATTICE,
        "--backend",
        "free-abelian",
        "--rank",
        "2",
        "--trust-abelian",
        "--classes",
        "(0,0)",
    ]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr(&output).contains("finite"));
}

#[test]
fn oracle_prints_all_three_dimensions() {
    let output = outerd(&["oracle", "--inline", S3]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout(&output), "order=6 classes=3 dim_der=3 dim_int=3 dim_out=0\n");
}

#[test]
fn oracle_cap_exits_two_and_names_the_flag() {
    let output = outerd(&["oracle", "--inline", S3, "--oracle-cap", "4"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("--oracle-cap"));
}

#[test]
fn complex_reports_component_shapes() {
    let output = outerd(&["complex", "--inline", S3]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].contains("vertices=1 edges=2 cells=3"));
    assert!(lines[1].contains("vertices=2 edges=4 cells=6"));
    assert!(lines[2].contains("vertices=3 edges=6 cells=9"));
}

#[test]
fn verify_on_a_finite_group_exits_zero_with_matching_routes() {
    let output = outerd(&["verify", "--json", "--inline", S3]);
    assert_eq!(exit_code(&output), 0);
    let doc = json(&output);
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["group"]["order"], 6);
    assert_eq!(doc["group"]["num_classes_listed"], 3);
    assert_eq!(doc["group"]["class_sizes"], serde_json::json!([1, 2, 3]));
    assert_eq!(doc["components"].as_array().unwrap().len(), 3);
    assert_eq!(doc["oracle"]["dim_der"], 3);
    assert_eq!(doc["oracle"]["dim_int"], 3);
    assert_eq!(doc["oracle"]["dim_out"], 0);
    assert_eq!(
        doc["matches"],
        serde_json::json!({"der": true, "int": true, "out": true})
    );

    // Component sums agree with the oracle dimensions.
    let components = doc["components"].as_array().unwrap();
    let total = |key: &str| -> u64 {
        components.iter().map(|c| c[key].as_u64().unwrap()).sum()
    };
    assert_eq!(total("dim_ker_d1"), 3);
    assert_eq!(total("rank_d0"), 3);
    assert_eq!(total("h1"), 0);
}

#[test]
fn text_and_json_verify_reports_carry_the_same_numbers() {
    let text = stdout(&outerd(&["verify", "--inline", S3]));
    assert!(text.contains("totals: dim_ker_d1=3 rank_d0=3 h1=0"));
    assert!(text.contains("oracle: order=6 classes=3 dim_der=3 dim_int=3 dim_out=0"));
    assert!(text.contains("matches: der=yes int=yes out=yes"));
}

#[test]
fn verify_on_the_rank_two_lattice_has_null_oracle_and_exits_zero() {
    let output = outerd(&[
        "verify",
        "--json",
        "--inline",
        Z2_LATTICE,
        "--backend",
        "free-abelian",
        "--rank",
        "2",
        "--trust-abelian",
        "--classes",
        "(0,0),(1,0)",
    ]);
    assert_eq!(exit_code(&output), 0);
    let doc = json(&output);
    assert_eq!(doc["group"]["order"], "infinite");
    assert_eq!(doc["oracle"], serde_json::Value::Null);
    assert_eq!(doc["matches"], serde_json::Value::Null);
    let components = doc["components"].as_array().unwrap();
    assert_eq!(components.len(), 2);
    for component in components {
        assert_eq!(component["h1"], 2);
    }
}

#[test]
fn free_abelian_mode_requires_trust_rank_and_classes() {
    let base = ["verify", "--inline", Z2_LATTICE, "--backend", "free-abelian"];

    let no_trust = outerd(&[&base[..], &["--rank", "2", "--classes", "(0,0)"]].concat());
    assert_eq!(exit_code(&no_trust), 1);
    assert!(stderr(&no_trust).contains("--trust-abelian"));

    let no_rank = outerd(&[&base[..], &["--trust-abelian", "--classes", "(0,0)"]].concat());
    assert_eq!(exit_code(&no_rank), 1);
    assert!(stderr(&no_rank).contains("--rank"));

    let no_classes = outerd(&[&base[..], &["--trust-abelian", "--rank", "2"]].concat());
    assert_eq!(exit_code(&no_classes), 1);
    assert!(stderr(&no_classes).contains("--classes"));

    let bad_rank =
        outerd(&[&base[..], &["--trust-abelian", "--rank", "3", "--classes", "(0,0,0)"]].concat());
    assert_eq!(exit_code(&bad_rank), 1);
    assert!(stderr(&bad_rank).contains("generator count"));

    let bad_arity =
        outerd(&[&base[..], &["--trust-abelian", "--rank", "2", "--classes", "(0,0,0)"]].concat());
    assert_eq!(exit_code(&bad_arity), 1);
    assert!(stderr(&bad_arity).contains("coordinates"));
}

#[test]
fn finite_mode_rejects_lattice_only_flags() {
    let with_rank = outerd(&["verify", "--inline", S3, "--rank", "2"]);
    assert_eq!(exit_code(&with_rank), 1);
    let with_classes = outerd(&["verify", "--inline", S3, "--classes", "(0)"]);
    assert_eq!(exit_code(&with_classes), 1);
}

#[test]
fn cohomology_emits_outer_cocycles_for_the_lattice() {
    let output = outerd(&[
        "cohomology",
        "--json",
        "--inline",
        Z2_LATTICE,
        "--backend",
        "free-abelian",
        "--rank",
        "2",
        "--trust-abelian",
        "--classes",
        "(0,0)",
    ]);
    assert_eq!(exit_code(&output), 0);
    let doc = json(&output);
    let component = &doc["components"][0];
    assert_eq!(component["h1"], 2);
    let cocycles = component["outer_cocycles"].as_array().unwrap();
    assert_eq!(cocycles.len(), 2);
    assert_eq!(cocycles[0], serde_json::json!(["1/1", "0/1"]));
    assert_eq!(cocycles[1], serde_json::json!(["0/1", "1/1"]));
}

#[test]
fn finite_cohomology_reports_no_outer_cocycles() {
    let doc = json(&outerd(&["cohomology", "--json", "--inline", S3]));
    for component in doc["components"].as_array().unwrap() {
        assert_eq!(component["outer_cocycles"], serde_json::json!([]));
    }
}

#[test]
fn export_dot_draws_the_order_two_loop() {
    let output = outerd(&["export-dot", "--inline", "< x | x^2 >", "--class-index", "1"]);
    assert_eq!(exit_code(&output), 0);
    let dot = stdout(&output);
    assert_eq!(
        dot,
        "digraph component {\n    n0 [label=\"1\"];\n    n0 -> n0 [label=\"x\"];\n}\n"
    );
}

#[test]
fn export_dot_draws_parallel_edges_for_the_three_cycles() {
    let output = outerd(&["export-dot", "--inline", S3, "--class-index", "1"]);
    assert_eq!(exit_code(&output), 0);
    let dot = stdout(&output);
    assert_eq!(dot.matches("[label=\"x\"]").count() + dot.matches("[label=\"y\"]").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 4);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 2);
}

#[test]
fn export_dot_checks_the_class_index() {
    let output = outerd(&["export-dot", "--inline", S3, "--class-index", "7"]);
    assert_eq!(exit_code(&output), 1);
    assert!(stderr(&output).contains("out of range"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["verify", "--json", "--inline", S3],
        vec!["cohomology", "--inline", S3],
        vec![
            "verify",
            "--json",
            "--inline",
            Z2_LATTICE,
            "--backend",
            "free-abelian",
            "--rank",
            "2",
            "--trust-abelian",
            "--classes",
            "(0,0),(1,0)",
        ],
        vec!["export-dot", "--inline", S3, "--class-index", "2"],
    ] {
        let first = outerd(&args);
        let second = outerd(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.stderr, second.stderr, "{args:?}");
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
    }
}

#[test]
fn the_seed_flag_is_accepted_and_does_not_change_output() {
    let zero = outerd(&["verify", "--json", "--seed", "0", "--inline", S3]);
    let seven = outerd(&["verify", "--json", "--seed", "7", "--inline", S3]);
    assert_eq!(exit_code(&zero), 0);
    assert_eq!(zero.stdout, seven.stdout);
}

#[test]
fn quaternion_group_verifies() {
    let doc = json(&outerd(&["verify", "--json", "--inline", "< i, j | i^4, i^2 j^-2, j^-1 i j i >"]));
    assert_eq!(doc["group"]["order"], 8);
    assert_eq!(doc["group"]["num_classes_listed"], 5);
    assert_eq!(doc["oracle"]["dim_der"], 3);
    assert_eq!(doc["oracle"]["dim_out"], 0);
    assert_eq!(
        doc["matches"],
        serde_json::json!({"der": true, "int": true, "out": true})
    );
}
