use std::path::PathBuf;
use std::process::{Command, Output};

fn wvmaps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wvmaps")).args(args).output().expect("runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen_fixture(name: &str) -> PathBuf {
    let p = scratch(&format!("{name}.smap"));
    let o = wvmaps(&["gen", "fixture", "--name", name, "-o", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn check_exit_codes() {
    let cube = gen_fixture("cube");
    let o = wvmaps(&["check", cube.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chi = 2"));

    let h2 = gen_fixture("h2_g2");
    let o = wvmaps(&["check", h2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("meet improperly"));

    let text = std::fs::read_to_string(&cube).unwrap();
    let cut = scratch("truncated.smap");
    std::fs::write(&cut, &text[..text.len() / 2]).unwrap();
    let o = wvmaps(&["check", cut.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let o = wvmaps(&["check", scratch("missing.smap").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_gamma_and_bad_genus() {
    let p = scratch("gamma_o_2.smap");
    let o = wvmaps(&["gen", "gamma", "--orientable", "-g", "2", "-o", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let labels: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(labels["labels"]["x"], 0);
    let map = wvmaps::smap::parse_smap(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(map.vertex_count(), 10);

    let o = wvmaps(&["gen", "gamma", "--nonorientable", "-g", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wvmaps(&["gen", "gamma", "--orientable", "--nonorientable", "-g", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wvmaps(&["gen", "fixture", "--name", "dodecahedron"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_is_byte_stable() {
    let a = wvmaps(&["gen", "gamma", "--nonorientable", "-g", "5"]);
    let b = wvmaps(&["gen", "gamma", "--nonorientable", "-g", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let map = wvmaps::smap::parse_smap(&text).unwrap();
    assert_eq!(wvmaps::smap::write_smap(&map), text);
}

#[test]
fn analyze_counterexample_and_cube() {
    let p = scratch("gamma_o_2_analyze.smap");
    wvmaps(&["gen", "gamma", "--orientable", "-g", "2", "-o", p.to_str().unwrap()]);
    let o = wvmaps(&["analyze", p.to_str().unwrap(), "0", "1", "--exhaustive", "--json"]);
    assert_eq!(o.status.code(), Some(1), "no W_v-path is a negative verdict");
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["pairs"][0]["kappa"], 4);
    assert_eq!(r["pairs"][0]["wv_exists"], false);

    let cube = gen_fixture("cube");
    let o = wvmaps(&["analyze", cube.to_str().unwrap(), "0", "7", "--exhaustive", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["pairs"][0]["kappa"], 3);
    assert!(r["pairs"][0]["wv_max_disjoint"].as_u64().unwrap() >= 3);
    let tags: Vec<&str> = r["pairs"][0]["checks"].as_array().unwrap().iter().map(|c| c["tag"].as_str().unwrap()).collect();
    assert!(tags.contains(&"T2.1") && tags.contains(&"L3.1"));
}

#[test]
fn analyze_cofacial_and_bad_input() {
    let cube = gen_fixture("cube");
    let c = cube.to_str().unwrap();
    let o = wvmaps(&["analyze", c, "0", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cofacial"));
    assert_eq!(wvmaps(&["analyze", c, "2", "2"]).status.code(), Some(2));
    assert_eq!(wvmaps(&["analyze", c, "0", "99"]).status.code(), Some(2));
    let h2 = gen_fixture("h2_g2");
    assert_eq!(wvmaps(&["analyze", h2.to_str().unwrap(), "0", "1"]).status.code(), Some(1));
}

#[test]
fn verify_is_independent_of_jobs() {
    let a = wvmaps(&["verify", "--suite", "2,5", "--trials", "200", "--json", "--jobs", "1"]);
    let b = wvmaps(&["verify", "--suite", "2,5", "--trials", "200", "--json", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_names_a_faulty_fixture() {
    let h2 = gen_fixture("h2_g2");
    let o = wvmaps(&["verify", "--suite", "1", "--fixture", h2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL criterion 1") && out.contains("h2_g2") && out.contains("[POLY]"), "{out}");
}
