use std::process::{Command, Output};

fn steinhaus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinhaus"))
        .args(args)
        .env_remove("STEINHAUS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    steinhaus(args).status.code().unwrap()
}

#[test]
fn renders_a_triangle() {
    let o = steinhaus(&["figure", "triangle", "--mod", "5", "--seq", "2,4,3,1,1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("2 4 3 1 1\n 1 2 4 2\n  3 1 1\n   4 2\n    1\n"), "{text}");
    assert!(text.contains("cells 15"));
}

#[test]
fn figure_json_round_trips() {
    let o = steinhaus(&["--format", "json", "figure", "dat", "--mod", "15", "--a", "0", "--d1", "8", "--d2", "1", "--order", "5"]);
    assert!(o.status.success());
    let f = steinhaus_core::Figure::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(f.cardinality(), 15);
    assert!(!f.is_balanced());
}

#[test]
fn derivation_and_rotation() {
    assert_eq!(stdout(&steinhaus(&["derive", "--mod", "5", "--seq", "2,4,3,1,1"])), "1,2,4,2\n");
    assert_eq!(stdout(&steinhaus(&["rotate", "120", "--mod", "5", "--seq", "2,2,0,3,3"])), "3,1,4,4,0\n");
    assert_eq!(stdout(&steinhaus(&["rotate", "240", "--mod", "5", "--seq", "2,2,0,3,3"])), "0,1,1,4,2\n");
}

#[test]
fn search_reports_found_sequences() {
    let o = steinhaus(&["search", "triangle", "--mod", "5", "--order", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("4 balanced triangles; exhaustive\n"), "{text}");
    assert!(text.contains("  2,2,3,3\n"));
    let none = stdout(&steinhaus(&["search", "triangle", "--mod", "15", "--order", "5"]));
    assert!(none.starts_with("no balanced triangle; exhaustive"), "{none}");
}

#[test]
fn search_json_is_reproducible() {
    let args = ["--format", "json", "search", "triangle", "--mod", "7", "--order", "6"];
    let a = stdout(&steinhaus(&args));
    let mut threaded = vec!["--threads", "3"];
    threaded.extend_from_slice(&args);
    assert_eq!(a, stdout(&steinhaus(&args)));
    assert_eq!(a, stdout(&steinhaus(&threaded)));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["exhaustive"], true);
    assert!(v.get("elapsedMs").is_none());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["figure", "triangle", "--mod", "5", "--seq", "1,2"]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["no-such-command"]), 1);
    assert_eq!(code(&["figure", "lozenge", "--mod", "5", "--seq", "1,2"]), 1);
    assert_eq!(code(&["verify", "universal", "--mod", "7", "--d", "3", "--lambda", "2"]), 0);
    assert_eq!(code(&["verify", "universal", "--mod", "5", "--d", "1", "--lambda", "1", "--pascal-heights", "swapped"]), 2);
    assert_eq!(code(&["idao", "verify", "--firsts", "0,-1,1,0,-1,1", "--diffs", "1,-2,1,1,-2,1", "--k1", "6", "--k2", "6"]), 2);
    assert_eq!(code(&["search", "triangle", "--mod", "15", "--order", "5", "--budget", "100"]), 3);
}

#[test]
fn idao_commands() {
    let o = steinhaus(&["idao", "verify", "--firsts", "0,-1,1", "--diffs", "1,-2,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(6,3)-interlaced doubly arithmetic"));
    assert_eq!(stdout(&steinhaus(&["idao", "wendt", "--k", "6"])), "k 6: rank 4, determinant 0\n");
}

#[test]
fn verify_prints_a_table() {
    let o = steinhaus(&["verify", "universal", "--mod", "7", "--d", "3", "--lambda", "2"]);
    let text = stdout(&o);
    assert!(text.lines().last().unwrap().starts_with("all "), "{text}");
    assert!(text.contains("pascal triangle"));
}

#[test]
fn tetrahedra() {
    let o = steinhaus(&["figure", "tetra", "--mod", "5", "--base", "0443100/212013/43201/4302/233/04/4"]);
    let text = stdout(&o);
    assert!(text.contains("floor 6\n  2\n"), "{text}");
    assert!(text.contains("cells 84"));
    let s = stdout(&steinhaus(&["search", "tetra", "--mod", "2", "--order", "2"]));
    assert!(s.starts_with("6 balanced tetrahedra; exhaustive"), "{s}");
}

#[test]
fn admissible_orders() {
    assert_eq!(stdout(&steinhaus(&["admissible", "--mod", "15", "--kind", "triangle"])), "m mod 15: 0,5,9,14\n");
}
