use std::process::{Command, Output};

fn facerel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facerel")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn inspect_tetrahedron_counts() {
    let o = facerel(&["inspect", "--graph", "corpus:tetrahedron"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("V=4 E=6 F=4 genus=1 rank=2\n"));
}

#[test]
fn spin_lines() {
    let cases = [
        ("tetrahedron", "untwisted all-Lie: exists (unique); twisted: exists"),
        ("theta", "untwisted all-Lie: none (obstruction at total class); twisted: exists"),
        ("cube", "untwisted all-Lie: exists"),
    ];
    for (g, line) in cases {
        let o = facerel(&["spin", "--graph", &format!("corpus:{}", g)]);
        assert_eq!(o.status.code(), Some(0), "{}", g);
        assert!(stdout(&o).contains(line), "{}: {}", g, stdout(&o));
    }
}

#[test]
fn solve_exit_codes() {
    let ok = facerel(&["solve", "--graph", "corpus:tetrahedron", "--max-degree", "6"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.starts_with("# convention:"));
    assert!(text.contains("status: unique"));
    assert!(text.contains("residual: zero through degree 6"));

    let theta = facerel(&["solve", "--graph", "corpus:theta"]);
    assert_eq!(theta.status.code(), Some(0));
    assert!(stdout(&theta).contains("c[] = 1"));

    let bad = facerel(&["solve", "--graph", "corpus:theta", "--charge-sign", "-"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("inconsistent at degree 0"));
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["inspect", "--graph", "/definitely/not/here.graph"],
        vec!["spin", "--graph", "corpus:dodecahedron"],
        vec!["solve", "--graph", "corpus:tetrahedron", "--basis", "/definitely/not/here.json"],
        vec!["solve", "--graph", "corpus:tetrahedron", "--framing", "1,2;3"],
        vec!["corpus", "nothing"],
    ] {
        assert_eq!(facerel(&args).status.code(), Some(2), "{:?}", args);
    }
    let dir = std::env::temp_dir().join(format!("facerel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.graph");
    std::fs::write(&broken, "v 1 : 2 3\n").unwrap();
    assert_eq!(facerel(&["inspect", "--graph", broken.to_str().unwrap()]).status.code(), Some(2));
    let basis = dir.join("basis.json");
    std::fs::write(&basis, r#"{"a": [[1,0,0,0,0,0]], "b": [[1,0,0,0,0,0]]}"#).unwrap();
    assert_eq!(
        facerel(&["solve", "--graph", "corpus:tetrahedron", "--basis", basis.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_is_parseable_with_sorted_keys() {
    let o = facerel(&["--format", "json", "inspect", "--graph", "corpus:prism3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["rank"], 4);
}
