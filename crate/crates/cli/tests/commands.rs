use std::path::PathBuf;
use std::process::Command;

fn widthlab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_widthlab")).args(args).env_remove("WIDTHLAB_MAX_N").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("widthlab-commands-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn data(name: &str) -> String {
    format!("{}/../core/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn generators() {
    let (code, q3) = widthlab(&["gen", "hypercube", "3"]);
    assert_eq!(code, 0);
    assert!(q3.starts_with("graph 8\n"));
    assert_eq!(q3.lines().filter(|l| l.starts_with("e ")).count(), 12);
    let (_, c4) = widthlab(&["gen", "multipartite", "2", "2"]);
    assert_eq!(c4.lines().count(), 5);
    assert_eq!(widthlab(&["gen", "tree", "6"]).0, 2);
    assert_eq!(widthlab(&["gen", "cycle", "two"]).0, 2);
    assert_eq!(widthlab(&["frobnicate"]).0, 2);
}

#[test]
fn widths() {
    let (_, k33) = widthlab(&["gen", "multipartite", "3", "3"]);
    let k33 = scratch("k33.graph", &k33);
    let (code, out) = widthlab(&["width", &k33, "--param", "lw", "--i", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last(), Some("result lw 2 2 exact"));
    let c5 = data("c5.graph");
    assert_eq!(widthlab(&["width", &c5, "--param", "pw"]).1.lines().last(), Some("result pw 1 3 exact"));
    let (_, profile) = widthlab(&["width", &c5, "--profile", "--imax", "3"]);
    let lw: Vec<&str> = profile.lines().filter(|l| l.starts_with("result lw")).collect();
    assert_eq!(lw, ["result lw 1 3 exact", "result lw 2 2 exact", "result lw 3 2 exact"]);
    let (_, grid) = widthlab(&["gen", "grid", "4", "4"]);
    let grid = scratch("grid.graph", &grid);
    assert_eq!(widthlab(&["width", &grid, "--param", "lw", "--i", "2"]).0, 3);
    let (code, out) = widthlab(&["width", &grid, "--param", "lw", "--i", "2", "--bound"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("upper_bound\n"));
}

#[test]
fn validation() {
    let (code, out) = widthlab(&["validate", &data("c5.graph"), &data("c5_grid.dec")]);
    assert_eq!((code, out.as_str()), (0, "decomposition 0 ok width 2\n"));
    let broken = std::fs::read_to_string(data("c5_grid.dec")).unwrap().replace("bag 1 : 0", "bag 1 :");
    let (code, out) = widthlab(&["validate", &data("c5.graph"), &scratch("broken.dec", &broken)]);
    assert_eq!(code, 1);
    assert!(out.contains("violation M"), "{out}");
    let empty_graph = scratch("empty.graph", "graph 0\n");
    let empty_dec = scratch("empty.dec", "decomposition path 1\nbag 0 :\n");
    assert_eq!(widthlab(&["validate", &empty_graph, &empty_dec]).0, 0);
}

#[test]
fn games_and_medians() {
    let c5 = data("c5.graph");
    let verify = |k: &str| widthlab(&["game", &c5, "--mode", "verify", "--variant", "invisible", "--k", k]);
    let (code, out) = verify("3");
    assert_eq!(code, 0);
    assert!(out.starts_with("verdict wins_monotone"));
    let (code, out) = verify("2");
    assert_eq!(code, 1);
    assert!(out.starts_with("verdict loses") && out.contains("outcome robber_wins_cooperation"));

    let (_, q3) = widthlab(&["gen", "hypercube", "3"]);
    assert_eq!(widthlab(&["median", &scratch("q3.graph", &q3), "check"]), (0, "median\n".into()));
    let (_, k23) = widthlab(&["gen", "multipartite", "2", "3"]);
    let (code, out) = widthlab(&["median", &scratch("k23.graph", &k23), "check"]);
    assert_eq!(code, 1);
    assert!(out.contains("triple"));
    let (_, grid) = widthlab(&["gen", "grid", "2", "3"]);
    let (_, emb) = widthlab(&["median", &scratch("grid23.graph", &grid), "embed"]);
    assert!(emb.starts_with("lattice 2 2 3\n"));
}
