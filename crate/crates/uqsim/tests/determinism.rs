use std::path::Path;
use std::process::Command;

fn run(args: &[&str], config: &Path, out: &Path) {
    let o = Command::new(env!("CARGO_BIN_EXE_uqsim"))
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out-dir")
        .arg(out)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

const NOISY: &str = r#"
[target]
model = "dipole"
j = 1.0
n = 5
[hardware]
platform = "uqs2"
n = 5
[trotter]
t_prime = 2.0
epsilon = 0.01
[simulation]
initial = 3
eta_local = 0.02
eta_int = 0.02
seed = 11
observables = ["ZZIII", "XIXII"]
"#;

#[test]
fn simulate_dumps_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("n.toml");
    std::fs::write(&cfg, NOISY).unwrap();
    run(&["simulate", "--single-thread"], &cfg, &dir.path().join("a"));
    run(&["simulate", "--single-thread"], &cfg, &dir.path().join("b"));
    for f in ["state.txt", "log.json", "observables.csv"] {
        assert_eq!(std::fs::read(dir.path().join("a").join(f)).unwrap(), std::fs::read(dir.path().join("b").join(f)).unwrap(), "{f}");
    }
    run(&["simulate", "--single-thread", "--seed", "12"], &cfg, &dir.path().join("c"));
    assert_ne!(std::fs::read(dir.path().join("a/state.txt")).unwrap(), std::fs::read(dir.path().join("c/state.txt")).unwrap());
}

#[test]
fn sweep_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/fig4a.toml"))
        .unwrap()
        .replace("repetitions = 20", "repetitions = 4")
        .replace("steps = [100]", "steps = [20, 40]");
    std::fs::write(&cfg, text).unwrap();
    run(&["adiabatic", "--single-thread"], &cfg, &dir.path().join("a"));
    run(&["adiabatic", "--jobs", "4"], &cfg, &dir.path().join("b"));
    for f in ["runs.csv", "sweep.csv", "trajectory.csv", "final_state.txt"] {
        assert_eq!(std::fs::read(dir.path().join("a").join(f)).unwrap(), std::fs::read(dir.path().join("b").join(f)).unwrap(), "{f}");
    }
}
