use std::process::{Command, Output};

fn octo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octo-e6")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn octonion_table_renders() {
    let o = octo(&["octonions"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().nth(2).unwrap().split_whitespace().collect::<Vec<_>>()[..4] == ["i", "i", "-1", "k"]);
}

#[test]
fn verify_octonion_suite_passes() {
    let o = octo(&["verify", "--suite", "octonion", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn group_check_passes_and_tolerance_is_validated() {
    let o = octo(&["group-check", "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("𝒯³ = 𝓘"));
    assert_eq!(octo(&["group-check", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(octo(&["group-check", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn basis_and_killing() {
    let o = octo(&["basis", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("index,name,kind"));
    assert_eq!(text.lines().count(), 79);

    let o = octo(&["killing", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["diagonal"].as_array().unwrap().len(), 78);
    assert_eq!(v["negative"], 52);
    assert_eq!(v["positive"], 26);
    let negative = v["diagonal"].as_array().unwrap().iter().filter(|d| d["value"].as_str().unwrap().starts_with('-')).count();
    assert_eq!(negative, 52);
}

#[test]
fn table_export_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("octo-e6-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.csv"), dir.join("b.csv"));
    for path in [&a, &b] {
        let o = octo(&["table", "--format", "csv", "-o", path.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert!(String::from_utf8(ta).unwrap().starts_with("i,j,k,c\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn closure_reports_dimension() {
    let o = octo(&["closure", "--gens", "A_i,A_j"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("closure dim: 3"));
    let o = octo(&["closure", "--gens", "A_l,G_l,B1_tz", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["closure_dim"], 3);
    assert_eq!(octo(&["closure", "--gens", "not_a_name"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(octo(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(octo(&["verify", "--suite", "everything"]).status.code(), Some(2));
    assert_eq!(octo(&["verify", "--jacobi", "some"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_octo-e6"))
        .arg("octonions")
        .env("OCTOE6_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_octo-e6"))
        .args(["closure", "--gens", "A_i,A_j"])
        .env("OCTOE6_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
}
