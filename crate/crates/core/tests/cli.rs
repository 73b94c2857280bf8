use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spincover"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn orders() {
    for (n, want) in [("3", "48\n"), ("4", "384\n"), ("5", "3840\n")] {
        assert_eq!(
            run(&["--n", n, "order"]),
            (0, want.to_string(), String::new())
        );
    }
    let (code, out, _) = run(&["--n", "4", "--format", "json", "order"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 384);
}

#[test]
fn normal_forms_and_products() {
    assert_eq!(run(&["normal-form", "--word", "R2 R1 R2"]).1, "R1 R2 R1\n");
    assert_eq!(run(&["mul", "--a", "R1", "--b", "R1^3"]).1, "R1^4\n");
    assert_eq!(run(&["center"]).1, "Id\nR1^4\n");
    assert_eq!(
        run(&["--n", "4", "center"]).1,
        "Id\nR1^4\nR1^2 R3^2\nR1^6 R3^2\n"
    );
}

#[test]
fn models_report_generator_order() {
    let (code, out, _) = run(&["models", "verify", "--which", "sl24"]);
    assert_eq!(code, 0);
    assert!(out.contains("R1 order: 4"));
}

#[test]
fn element_listing_is_deterministic_json() {
    let a = run(&["--format", "json", "elements"]);
    let b = run(&["--format", "json", "elements"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 48);
}

#[test]
fn path_commands() {
    let (code, out, _) = run(&["path", "contract", "--word", "R31 R23 R12 R32"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: contracted"));
    let (code, out, _) = run(&["path", "reduce", "--word", "R32 R31 R23 R12"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("-> Id\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["verify"]).0, 2);
    assert_eq!(run(&["verify", "--criterion", "99"]).0, 2);
    let (code, _, err) = run(&["normal-form", "--word", "R9"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    assert_eq!(run(&["verify", "--criterion", "1"]).0, 0);
    assert_eq!(run(&["verify", "--criterion", "10"]).0, 1);
}
