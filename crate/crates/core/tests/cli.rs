use std::process::{Command, Output};

fn ziegler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ziegler"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_builtin_as_json() {
    let o = ziegler(&["--json", "analyze", "AZ"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["syzygies"]["mdr"], 5);
    assert_eq!(v["lattice"]["tau"], 42);
}

#[test]
fn compare_reports_the_pair() {
    let o = ziegler(&["compare", "AD", "ADp"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ZIEGLER PAIR"));
}

#[test]
fn parse_errors_exit_with_two() {
    assert_eq!(ziegler(&["analyze", "x(y+"]).status.code(), Some(2));
    assert_eq!(ziegler(&["lattice", "x^2+y^2+z^2"]).status.code(), Some(2));
    assert_eq!(ziegler(&["lattice", "x(2x)"]).status.code(), Some(2));
    assert_eq!(ziegler(&["bogus"]).status.code(), Some(2));
}

#[test]
fn degenerate_hexagons_exit_with_three() {
    let dir = std::env::temp_dir().join(format!("ziegler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // equally spaced parameters on a parabola give parallel chords meeting at a vertex-free triple point
    let path = dir.join("collinear.json");
    std::fs::write(
        &path,
        r#"{"vertices": [[0,0,1],[1,1,1],[2,4,1],[3,9,1],[4,16,1],[5,25,1]]}"#,
    )
    .unwrap();
    assert_eq!(
        ziegler(&["pascal", path.to_str().unwrap()]).status.code(),
        Some(3)
    );
    assert_eq!(ziegler(&["octic", "TRIANGLE"]).status.code(), Some(3));
}

#[test]
fn files_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("ziegler-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("pencil.txt");
    std::fs::write(&input, "xy(x-y)(x+y)z\n").unwrap();
    let out = dir.join("lattice.json");
    let o = ziegler(&[
        "--json",
        "--out",
        out.to_str().unwrap(),
        "lattice",
        input.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["lattice"]["tau"], 9 + 4);
    let az = dir.join("az.json");
    std::fs::write(
        &az,
        r#"{"lines": [[1,0,0],[0,1,0],[0,0,1],[1,1,-1],[1,-1,1],[2,-2,1],[2,-1,-2],[2,1,1],[2,-1,-1]], "diagonals": [[1,0,0],[0,1,0],[0,0,1]]}"#,
    )
    .unwrap();
    let o = ziegler(&["pascal", az.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Pascal line: y-3z"));
    let svg = dir.join("az.svg");
    assert_eq!(
        ziegler(&["--out", svg.to_str().unwrap(), "render", "AZ"])
            .status
            .code(),
        Some(0)
    );
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn search_is_reproducible() {
    let a = ziegler(&["--seed", "9", "search", "--count", "5"]);
    let b = ziegler(&["--seed", "9", "search", "--count", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 6);
    let c = ziegler(&["--seed", "10", "search", "--count", "5"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn defects_and_octic_text() {
    let o = ziegler(&["defects", "AZp"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vanishing exactly above it: true"));
    let o = ziegler(&["octic", "AZ"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Pascal line: y-3z"));
    assert!(stdout(&o).contains("agrees with the I_8 \\ J_8 gap element mod J_8: true"));
}
