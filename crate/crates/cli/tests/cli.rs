//! End-to-end checks of the command-line surface: exit codes, file outputs,
//! and reproducibility through the public entry point.

use qia_cli::run_cli;

fn run(args: &[&str]) -> i32 {
    run_cli(std::iter::once("qia").chain(args.iter().copied()))
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["run", "--bogus-flag"]), 2);
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(run(&["--help"]), 0);
    assert_eq!(run(&["attack", "--help"]), 0);
}

#[test]
fn honest_run_passes_its_check() {
    assert_eq!(run(&["run", "--n", "4", "--seed", "7", "--check"]), 0);
}

#[test]
fn run_with_fixed_keys_and_transcript_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("transcript.csv");
    let code = run(&[
        "run",
        "--n",
        "2",
        "--seed",
        "3",
        "--keys",
        "11,00,01",
        "--out",
        out.to_str().unwrap(),
        "--check",
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("m,alice_bell,bob_bell,pauli,r14,r23"));
}

#[test]
fn impersonated_run_fails_its_check() {
    // Detection at n=6 is near-certain; seed 1 is a rejecting run.
    let code = run(&[
        "run",
        "--n",
        "6",
        "--seed",
        "1",
        "--adversary",
        "impersonation",
        "--check",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn run_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(
        &path,
        "# worked example\nn=2\nseed=5\ndecoy_error_threshold=0\nadversary=none\nnoise=none\nkeys=11,00,01\n",
    )
    .unwrap();
    assert_eq!(
        run(&["run", "--config", path.to_str().unwrap(), "--check"]),
        0
    );
    std::fs::write(&path, "seed=5\n").unwrap();
    assert_eq!(run(&["run", "--config", path.to_str().unwrap()]), 1);
}

#[test]
fn attack_checks_pass() {
    assert_eq!(run(&["attack", "ir", "--check"]), 0);
    assert_eq!(
        run(&["attack", "ir", "--priors", "0.7,0.1,0.1,0.1", "--check"]),
        0
    );
    assert_eq!(
        run(&[
            "attack",
            "impersonation",
            "--n",
            "2",
            "--trials",
            "20000",
            "--seed",
            "9",
            "--check"
        ]),
        0
    );
    assert_eq!(
        run(&["attack", "fraud", "--mode", "single", "--amps", "1,0,1,0", "--check"]),
        0
    );
    assert_eq!(
        run(&["attack", "fraud", "--mode", "entangled", "--check"]),
        0
    );
}

#[test]
fn fraud_rejects_unnormalized_amplitudes() {
    assert_eq!(
        run(&["attack", "fraud", "--mode", "single", "--amps", "1,1,1,0"]),
        1
    );
    assert_eq!(run(&["attack", "ir", "--priors", "1,1,1,1"]), 1);
}

#[test]
fn fraud_minimize_self_check() {
    assert_eq!(
        run(&[
            "attack",
            "fraud",
            "--mode",
            "entangled",
            "--minimize",
            "--resolution",
            "16",
            "--check"
        ]),
        0
    );
}

#[test]
fn fraud_key_pair_sweep_and_report_export() {
    assert_eq!(
        run(&[
            "attack",
            "fraud",
            "--mode",
            "single",
            "--all-keys",
            "--check"
        ]),
        0
    );
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fraud.csv");
    assert_eq!(
        run(&[
            "attack",
            "fraud",
            "--mode",
            "entangled",
            "--trials",
            "5000",
            "--seed",
            "4",
            "--out",
            out.to_str().unwrap(),
            "--check"
        ]),
        0
    );
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("attack,trials,detections"));
    assert!(text.contains("fraud,5000,"));
    // --out without --trials is refused at parse time.
    assert_eq!(run(&["attack", "fraud", "--out", out.to_str().unwrap()]), 2);
}

#[test]
fn noise_sweep_writes_requested_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let code = run(&[
        "noise-sweep",
        "--mode",
        "rotation",
        "--steps",
        "91",
        "--out",
        out.to_str().unwrap(),
        "--check",
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 92);
    assert_eq!(lines[0], "angle_degrees,analytic,simulated");
    assert!(lines[1].starts_with("0,"));
    assert!(lines[91].starts_with("90,"));

    assert_eq!(
        run(&["noise-sweep", "--mode", "rotation", "--steps", "1"]),
        1
    );
}

#[test]
fn sweep_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        assert_eq!(
            run(&[
                "noise-sweep",
                "--mode",
                "dephasing",
                "--steps",
                "181",
                "--out",
                path.to_str().unwrap()
            ]),
            0
        );
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn table_and_curve_and_demo() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.txt");
    assert_eq!(run(&["table", "--out", table.to_str().unwrap()]), 0);
    let text = std::fs::read_to_string(&table).unwrap();
    assert!(text.contains("|phi+>12 (x) |psi->34"));
    assert!(text.contains("64 cases, 0 mismatches"));

    let curve = dir.path().join("curve.csv");
    assert_eq!(
        run(&["curve", "--n-max", "10", "--out", curve.to_str().unwrap()]),
        0
    );
    let text = std::fs::read_to_string(&curve).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.contains("6,0.999755859375"));

    assert_eq!(run(&["demo"]), 0);
}
