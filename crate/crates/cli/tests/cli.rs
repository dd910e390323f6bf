use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grove-forge")).args(args).output().expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn count_only() {
    let o = bin(&["enumerate", "--size", "2", "--count-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
    assert_eq!(stdout(&bin(&["enumerate", "--size", "4", "--count-only"])), "81\n");
}

#[test]
fn enumerate_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("groves.jsonl");
    let o = bin(&["enumerate", "--size", "3", "--out", file.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(text.lines().count(), 9);
    let o = bin(&["check", "--input", file.to_str().unwrap(), "--section5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("grove: valid").count(), 9);
}

#[test]
fn permutation_only() {
    let o = bin(&["enumerate", "--size", "3", "--permutation-only"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 9);
    assert_eq!(stdout(&bin(&["enumerate", "--size", "4", "--permutation-only", "--count-only"])), "57\n");
}

#[test]
fn check_sample_triangle() {
    let o = bin(&["check", "--input", golden("sample_ast_n4.json").to_str().unwrap(), "--glick"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(1));
    assert!(text.starts_with("p1_range: fail"), "{text}");
    for p in ["p2_sum", "p3_toprows", "p4_leftcols", "p5_rightcols", "p6_uptriangles"] {
        assert!(text.contains(&format!("{p}: pass")), "{text}");
    }
    let o = bin(&["check", "--input", golden("sample_ast_n4.json").to_str().unwrap(), "--glick", "--strict-p1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_sample_grove() {
    let o = bin(&["check", "--input", golden("sample_grove_n4.json").to_str().unwrap(), "--section5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("grove: valid\n0 1 0 0\n 0 -1 1\n  1 0\n   0\n"));
}

#[test]
fn invalid_grove_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.json", r#"{"n": 2, "edges": [[-1,-1,0,0]]}"#);
    let o = bin(&["check", "--input", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("grove: invalid"));
}

#[test]
fn malformed_input_names_field() {
    let dir = tempfile::tempdir().unwrap();
    for (text, field) in [(r#"{"n": 4}"#, "edges"), (r#"{"rows": [[1]]}"#, "n"), (r#"{"n": 2, "rows": 5}"#, "rows")] {
        let f = write(dir.path(), "bad.json", text);
        let o = bin(&["check", "--input", &f]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        let err = String::from_utf8_lossy(&o.stderr).to_string();
        assert!(err.contains(field), "{text}: {err}");
    }
    let f = write(dir.path(), "junk.json", "{not json");
    assert_eq!(bin(&["render", "--input", &f, "--format", "ascii"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["enumerate"]).status.code(), Some(2));
    assert_eq!(bin(&["enumerate", "--size", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["recurrence", "--level", "2", "--point", "1,1"]).status.code(), Some(2));
    assert_eq!(bin(&["render", "--input", "/nonexistent.json", "--format", "svg"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_grove-forge"))
        .args(["enumerate", "--size", "2", "--count-only"])
        .env("GROVE_FORGE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a.json", r#"{"n": 2, "rows": [[0,0],[1]]}"#);
    let search = bin(&["reconstruct", "--input", &f, "--method", "search"]);
    assert_eq!(stdout(&search), "{\"n\": 2, \"edges\": [[-1,-1,0,0],[0,0,1,-1]]}\n");
    let trace = dir.path().join("trace");
    let built = bin(&["reconstruct", "--input", &f, "--trace-svg", trace.to_str().unwrap()]);
    assert!(built.status.success());
    let g = write(dir.path(), "g.json", &stdout(&built));
    let o = bin(&["check", "--input", &g]);
    assert!(stdout(&o).starts_with("grove: valid\n0 0\n 1\n"));
    let pages = std::fs::read_dir(&trace).unwrap().count();
    assert!(pages >= 3);

    let f = write(dir.path(), "b.json", r#"{"n": 2, "rows": [[1,1],[0]]}"#);
    assert_eq!(bin(&["reconstruct", "--input", &f, "--method", "search"]).status.code(), Some(1));
    assert_eq!(bin(&["reconstruct", "--input", &f]).status.code(), Some(1));
}

#[test]
fn recurrence_output() {
    let o = bin(&["recurrence", "--level", "2"]);
    assert_eq!(
        stdout(&o),
        concat!(
            r#"{"point": [1,1,0], "monomials": [{"coeff": 1, "exps": [[0,1,0,1],[1,0,-1,1],[0,0,-1,-1]]}, "#,
            r#"{"coeff": 1, "exps": [[1,0,0,1],[0,1,-1,1],[0,0,-1,-1]]}, "#,
            r#"{"coeff": 1, "exps": [[1,1,-1,1],[0,0,0,1],[0,0,-1,-1]]}]}"#,
            "\n"
        )
    );
    let o = bin(&["recurrence", "--level", "4", "--point", "2,1,1", "--stats"]);
    assert!(stdout(&o).contains("monomials 81,"));
}

#[test]
fn render_matches_goldens() {
    let input = golden("sample_grove_n4.json");
    let svg = bin(&["render", "--input", input.to_str().unwrap(), "--format", "svg"]);
    assert_eq!(svg.stdout, std::fs::read(golden("sample_grove_n4.svg")).unwrap());
    let ascii = bin(&["render", "--input", golden("sample_ast_n4.json").to_str().unwrap(), "--format", "ascii"]);
    assert_eq!(stdout(&ascii), "0 1 0 0\n 0 -1 1\n  1 0\n   0\n");
    assert_eq!(ascii.stdout, std::fs::read(golden("sample_grove_n4.txt")).unwrap());
    let before = std::fs::read(&input).unwrap();
    bin(&["render", "--input", input.to_str().unwrap(), "--format", "svg"]);
    assert_eq!(std::fs::read(&input).unwrap(), before);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let r = report.to_str().unwrap();
    assert_eq!(bin(&["verify", "--max-size", "2", "--strict", "--report", r]).status.code(), Some(0));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"passed\": true"));
    assert_eq!(bin(&["verify", "--max-size", "4", "--report", r]).status.code(), Some(0));
    assert_eq!(bin(&["verify", "--max-size", "4", "--strict", "--report", r]).status.code(), Some(1));
    assert_eq!(bin(&["verify", "--max-size", "9", "--report", r]).status.code(), Some(2));
}
