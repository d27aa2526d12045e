use std::path::PathBuf;
use std::process::{Command, Output};

fn pralg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pralg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pralg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn eval_and_rdepth() {
    let o = pralg(&["eval", "--term", "comp(n,s)", "--input", "7"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "1\n"));
    let o = pralg(&["eval", "--term", "rec(id[1],comp(pi[2,2],s))", "--input", "3,4"]);
    assert_eq!(stdout(&o), "7\n");
    let o = pralg(&["rdepth", "--term", "rec(id[1], comp(pi[2,2], s))", "--grz"]);
    assert_eq!(stdout(&o), "1\nE^2\n");
}

#[test]
fn equiv_from_files_and_replay() {
    let a = scratch("A.pr", "comp(prod(s,n),prod(n,s))\n");
    let b = scratch("B.pr", "prod(comp(s,n),comp(n,s))\n");
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    let o = pralg(&["equiv", "--left", a, "--right", b, "--budget", "10000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let proof = stdout(&o);
    assert!(proof.trim_start().starts_with('['));
    let p = scratch("proof.json", &proof);
    let o = pralg(&["replay", "--term", a, "--proof", p.to_str().unwrap()]);
    assert_eq!(stdout(&o), "prod(comp(s,n),comp(n,s))\n");
    // byte-stable
    let again = pralg(&["equiv", "--left", a, "--right", b, "--budget", "10000", "--seed", "1"]);
    assert_eq!(stdout(&again), proof);
}

#[test]
fn json_files_are_detected() {
    let json = stdout(&pralg(&["json", "--term", "comp(pi[2,2],s)"]));
    let f = scratch("t.json", &json);
    let o = pralg(&["print", "--term", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "comp(pi[2,2],s)\n");
}

#[test]
fn exit_codes() {
    assert_eq!(pralg(&["check", "--term", "comp(s,pi[2,1])"]).status.code(), Some(1));
    assert_eq!(pralg(&["exteq", "--left", "s", "--right", "n"]).status.code(), Some(2));
    let o = pralg(&["equiv", "--left", "comp(prod(s,n),prod(n,s))", "--right", "prod(comp(s,n),comp(n,s))", "--groups", "II", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let o = pralg(&["eval"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("term syntax"));
}

#[test]
fn schemes_and_profiles() {
    let t = stdout(&pralg(&["scheme", "--name", "insertion-sort", "--n", "3"]));
    let o = pralg(&["eval", "--term", t.trim(), "--input", "3,1,2"]);
    assert_eq!(stdout(&o), "1,2,3\n");
    let csv = stdout(&pralg(&["profile", "--name", "max", "--max-n", "3"]));
    assert!(csv.starts_with("n,rdepth\n1,0\n2,"), "{csv}");
    assert_eq!(pralg(&["scheme", "--name", "bogo", "--n", "3"]).status.code(), Some(1));
}

#[test]
fn dot_goldens() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    for name in ["succ", "add", "mult", "interchange", "circt"] {
        let o = pralg(&["dot", "--term", &format!("{dir}/{name}.pr")]);
        let want = std::fs::read_to_string(format!("{dir}/{name}.dot")).unwrap();
        assert_eq!(stdout(&o), want, "{name}");
    }
}

#[test]
fn depth_check_and_rewrites() {
    let o = pralg(&["theorem2", "--trials", "100", "--max-depth", "5", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations: 0"));
    let list = stdout(&pralg(&["rewrite", "--list", "--groups", "I,II,III,Defn,Derived"]));
    assert_eq!(list.lines().count(), 25);
    let rws = stdout(&pralg(&["rewrite", "--term", "comp(comp(s,s),s)", "--groups", "II"]));
    assert!(rws.lines().any(|l| l.starts_with("II.1 fwd []")), "{rws}");
}
