use std::process::{Command, Output};

fn sgkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgkit")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("sgkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn tb_on_a_fixture_succeeds() {
    let out = sgkit(&["tb", "--fixture", "torus_page_k2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("torus_knot_k2"), "{text}");
}

#[test]
fn machine_output_is_json_and_can_be_written_to_a_file() {
    let path = tmp("rot.json");
    let out = sgkit(&["rot", "--fixture", "twist_page_m2", "--format", "machine", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let printed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(printed, written);
    assert_eq!(written["problems"][0]["rot"], 0);
}

#[test]
fn input_files_are_read() {
    let path = tmp("doc.toml");
    std::fs::write(&path, "[[matrices]]\nname = \"m\"\nrows = [[4, 6], [6, 4]]\n").unwrap();
    let out = sgkit(&["snf", "--input", path.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["matrices"][0]["diagonal"], serde_json::json!([2, 10]));
}

#[test]
fn malformed_input_exits_2() {
    let path = tmp("bad.toml");
    std::fs::write(&path, "[[curves]]\nname = \"K\"\nsurface = \"missing\"\nword = [\"+a\"]\n").unwrap();
    let out = sgkit(&["tb", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}

#[test]
fn missing_input_file_and_unknown_fixture_exit_2() {
    assert_eq!(sgkit(&["tb", "--input", "/nonexistent/doc.toml"]).status.code(), Some(2));
    assert_eq!(sgkit(&["tb", "--fixture", "no_such_fixture"]).status.code(), Some(2));
    assert_eq!(sgkit(&["show-fixture", "no_such_fixture"]).status.code(), Some(2));
    assert_eq!(sgkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn fixtures_are_listed_and_shown() {
    let list = sgkit(&["list-fixtures"]);
    assert_eq!(list.status.code(), Some(0));
    let names = String::from_utf8_lossy(&list.stdout);
    assert!(names.lines().any(|l| l == "trefoil_facts"));
    let shown = sgkit(&["show-fixture", "hf_trefoil_n9"]);
    assert_eq!(shown.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&shown.stdout).contains("[[hf_modules]]"));
}

#[test]
fn sg_bounds_prints_traces() {
    let out = sgkit(&["sg-bounds", "--fixture", "torus_facts"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("T_m(2,5)") && text.contains("R1"), "{text}");
}

#[test]
fn unsolvable_rotation_problem_exits_1() {
    let path = tmp("stein.toml");
    std::fs::write(
        &path,
        r#"[[stein_problems]]
name = "p"
one_handles = ["x"]
distinguished = "B"
curves = [
  { name = "A", traversal = [2], rotation = 0 },
  { name = "B", traversal = [1], rotation = 1 },
]
"#,
    )
    .unwrap();
    let out = sgkit(&["rot", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coefficient"));
}
