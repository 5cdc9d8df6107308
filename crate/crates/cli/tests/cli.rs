use std::path::Path;
use std::process::{Command, Output};

fn flagorbit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagorbit"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn distance_pair_selector() {
    let dir = tempfile::tempdir().unwrap();
    let o = flagorbit(
        dir.path(),
        &["distance", "--type", "A3", "--p1", "1", "--p2", "1", "--pair", "dominant,lowest"],
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("d 2 greedy 2 oracle 2"));
}

#[test]
fn distance_full_sweep_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = flagorbit(dir.path(), &["distance", "--type", "A2", "--p1", "0", "--p2", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 9);
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn shadow_emission_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["shadow", "--type", "A3", "--p1", "1", "--p2", "2"];
    let mut seen = Vec::new();
    for name in ["a", "b"] {
        let o = flagorbit(dir.path(), &[&args[..], &["--out", name]].concat());
        assert!(o.status.success());
        let json = std::fs::read(dir.path().join(format!("{name}.json"))).unwrap();
        let dot = std::fs::read(dir.path().join(format!("{name}.dot"))).unwrap();
        seen.push((json, dot));
    }
    assert_eq!(seen[0], seen[1]);
    let dot = String::from_utf8(seen[0].1.clone()).unwrap();
    assert!(dot.starts_with("digraph "));
}

#[test]
fn shadow_dense_coset_of_p1_squared() {
    let dir = tempfile::tempdir().unwrap();
    let o = flagorbit(
        dir.path(),
        &["shadow", "--type", "A1", "--p1", "0", "--p2", "0", "--coset", "dense", "--emit", "json"],
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("3 nodes, 2 edges"));
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("shadow.json")).unwrap()).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
    assert!(!dir.path().join("shadow.dot").exists());
}

#[test]
fn verify_reports_the_crosscheck() {
    let dir = tempfile::tempdir().unwrap();
    let o = flagorbit(
        dir.path(),
        &["verify", "--type", "A2", "--p1", "0", "--p2", "0", "--q", "2,3"],
    );
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("12 B-orbits"));
    assert!(s.contains("1 label collisions"));
    assert!(s.contains("verify: pass"));
}

#[test]
fn orbitlab_writes_the_orbit_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = flagorbit(
        dir.path(),
        &["orbitlab", "--type", "A1", "--p1", "0", "--p2", "0", "--q", "2,3,5"],
    );
    assert!(o.status.success());
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("orbits.json")).unwrap()).unwrap();
    assert_eq!(v["schema"], "flagorbit.orbits/1");
    assert_eq!(v["orbits"].as_array().unwrap().len(), 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    // dense orbit: dim 2, q(q-1) points
    let dense = v["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .max_by_key(|o| o["dim"].as_u64())
        .unwrap();
    assert_eq!(dense["dim"], 2);
    assert_eq!(dense["counts"][0], "2");
}

#[test]
fn manifest_keys_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.manifest");
    std::fs::write(&path, "# comment\ntype=A1\np1=0\np2=0\nq=2,3\n").unwrap();
    let m = path.to_str().unwrap();
    let o = flagorbit(dir.path(), &["verify", "--manifest", m]);
    assert!(o.status.success());
    // the flag overrides the manifest's q=2
    let o = flagorbit(dir.path(), &["verify", "--manifest", m, "--q", "2,3,5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("5 B-orbits"));
    // unknown keys are a usage error
    std::fs::write(&path, "tipo=A1\n").unwrap();
    let o = flagorbit(dir.path(), &["verify", "--manifest", m]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // usage: bad type
    let o = flagorbit(dir.path(), &["rootsys", "--type", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
    // usage: missing q
    let o = flagorbit(dir.path(), &["verify", "--type", "A1", "--p1", "0", "--p2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    // budget refusal
    let o = flagorbit(
        dir.path(),
        &["verify", "--type", "A1", "--p1", "0", "--p2", "0", "--q", "2", "--budget", "1"],
    );
    assert_eq!(o.status.code(), Some(3));
    // domain error: shadow needs a simply-laced type
    let o = flagorbit(dir.path(), &["shadow", "--type", "C3", "--p1", "2", "--p2", "2"]);
    assert_eq!(o.status.code(), Some(2));
}
