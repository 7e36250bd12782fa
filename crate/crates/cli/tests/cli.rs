use std::process::{Command, Output};

fn nilvec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilvec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stderr).expect("structured error on stderr")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn golden_reports() {
    let cases: [(&[&str], &str); 4] = [
        (&["closure", "--format", "json", "--gen", "Dx", "--gen", "y*Dx + x*Dz"], "heisenberg_closure.json"),
        (&["classify", "--format", "json", "--gen", "Dx", "--gen", "y*Dx + x*Dz"], "heisenberg_classify.json"),
        (
            &["split", "--ideal", "kernel", "--format", "json", "--gen", "Dx", "--gen", "x^2*Dz"],
            "single_chain_split.json",
        ),
        (&["generate", "--recipe", "heisenberg", "--seed", "4", "--format", "json"], "generate_heisenberg.json"),
    ];
    for (args, file) in cases {
        let o = nilvec(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o), golden(file), "{file}");
    }
}

#[test]
fn cap_errors_exit_with_one() {
    let o = nilvec(&["closure", "--gen", "Dx", "--gen", "x*Dx", "--gen", "x^3*Dx"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr_json(&o);
    assert_eq!(err["error"], "ClosureCapExceeded");
    assert!(o.stdout.is_empty());

    let o = nilvec(&["closure", "--cap-dim", "4", "--gen", "Dx", "--gen", "x^5*Dz"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["cap"]["kind"], "dimension");
}

#[test]
fn domain_errors_exit_with_one() {
    let o = nilvec(&["classify", "--gen", "Dx", "--gen", "x*Dx"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "NotNilpotent");
    let o = nilvec(&["project", "--kept", "x", "--gen", "Dx", "--gen", "y*Dx", "--gen", "Dy"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "ProjectionHypothesisViolated");
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    let o = nilvec(&["rank", "--gen", "x**2*Dz"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr_json(&o);
    assert_eq!(err["error"], "parse");
    assert_eq!(err["position"], 1);
    assert!(err["found"].as_str().unwrap().contains("**"));

    assert_eq!(nilvec(&["bracket", "--gen", "Dx"]).status.code(), Some(2));
    assert_eq!(nilvec(&["closure"]).status.code(), Some(2));
    assert_eq!(nilvec(&["generate", "--recipe", "none"]).status.code(), Some(2));
    assert_eq!(nilvec(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nilvec(&["closure", "--cap-dim", "0", "--gen", "Dx"]).status.code(), Some(2));
    assert_eq!(nilvec(&["closure", "--vars", "a,b,c,d", "--gen", "Da"]).status.code(), Some(2));
    let o = nilvec(&["split", "--ideal", "9", "--gen", "Dx", "--gen", "y*Dx"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generators_from_a_file() {
    let dir = std::env::temp_dir().join(format!("nilvec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.txt");
    std::fs::write(&path, "# Heisenberg\nDx\n\ny*Dx + x*Dz   # lift\n").unwrap();
    let from_file = nilvec(&["closure", "--format", "json", "--file", path.to_str().unwrap()]);
    let inline = nilvec(&["closure", "--format", "json", "--gen", "Dx", "--gen", "y*Dx + x*Dz"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, inline.stdout);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let gens = ["--gen", "Dx", "--gen", "y*Dx", "--gen", "Dy + (x^2 + y^2)*Dz", "--gen", "(x + y)*Dz"];
    for cmd in ["closure", "center", "series"] {
        let mut args = vec![cmd];
        args.extend(gens);
        let text = stdout(&nilvec(&args));
        args.extend(["--format", "json"]);
        let json: serde_json::Value = serde_json::from_slice(&nilvec(&args).stdout).unwrap();
        let dim = json["dim"].as_u64().unwrap();
        assert!(text.lines().any(|l| l == format!("dim: {dim}")), "{cmd}: {text}");
    }
    let text = stdout(&nilvec(&["classify", "--gen", "Dx", "--gen", "y*Dx + x*Dz"]));
    assert!(text.contains("label: center-dim1") && text.contains("subcase: heisenberg"));
}

#[test]
fn other_variable_names() {
    let o = nilvec(&["closure", "--vars", "u,v", "--format", "json", "--gen", "Du", "--gen", "u*Dv"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["basis"], serde_json::json!(["Du", "Dv", "u*Dv"]));
}

#[test]
fn bracket_and_rank() {
    let o = nilvec(&["bracket", "--format", "json", "--gen", "Dx", "--gen", "x^2*exp(y)*Dz"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["bracket"], "2*x*exp(y)*Dz");
    let o = nilvec(&["rank", "--format", "json", "--gen", "Dx", "--gen", "y*Dx", "--gen", "x*Dz"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["rank"], 2);
}

#[test]
fn jordan_and_match() {
    let gens = ["--gen", "Dz", "--gen", "Dx", "--gen", "Dy", "--gen", "z*Dx", "--gen", "z^2*Dx + z*Dy"];
    let mut args = vec!["jordan", "--op", "Dz", "--ideal", "kernel", "--kept", "z", "--format", "json"];
    args.extend(gens);
    let json: serde_json::Value = serde_json::from_slice(&nilvec(&args).stdout).unwrap();
    assert_eq!(json["lengths"], serde_json::json!([3, 1]));
    let mut args = vec!["match", "--template", "two-block-semidirect", "--format", "json"];
    args.extend(gens);
    let json: serde_json::Value = serde_json::from_slice(&nilvec(&args).stdout).unwrap();
    assert_eq!(json["matched"], serde_json::json!(["two-block-semidirect"]));
}

#[test]
fn absent_seed_means_zero() {
    let a = nilvec(&["generate", "--recipe", "single-chain", "--format", "json"]);
    let b = nilvec(&["generate", "--recipe", "single-chain", "--seed", "0", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = nilvec(&["generate", "--recipe", "single-chain", "--seed", "1", "--format", "json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn every_recipe_generates_deterministically() {
    for recipe in ["two-block", "center-lift", "heisenberg", "single-chain", "nonabelian-image", "abelian-image", "abelian-1", "abelian-2", "abelian-3"] {
        let args = ["generate", "--recipe", recipe, "--seed", "5", "--degree-bound", "3", "--format", "json"];
        let a = nilvec(&args);
        assert!(a.status.success(), "{recipe}");
        assert_eq!(a.stdout, nilvec(&args).stdout, "{recipe}");
    }
    let o = nilvec(&["generate", "--recipe", "two-block", "--degree-bound", "65"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "InvalidSpec");
}
