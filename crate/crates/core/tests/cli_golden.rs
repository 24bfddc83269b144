//! Byte-exact checks of every CLI command against files in `tests/golden/`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const PLANTED_KEY: &str = "MODEL=Army3; ROTORS=P4,P1,P5; RINGS=AAA; POS=GHT; REFLECTOR=U1";
const PLANTED_PLAIN: &str = "ANXOBERKOMMANDOXWETTERVORHERSAGEFUERDIENORDSEEXREGENUNDSTURM";

fn enigma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enigma"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("run enigma")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn check_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

fn success(args: &[&str]) -> String {
    let out = enigma(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stderr(&out), "");
    stdout(&out)
}

#[test]
fn analyze_reports() {
    for model in ["army", "naval", "operational"] {
        for format in ["table", "tsv"] {
            let text = success(&["analyze", "--model", model, "--format", format]);
            check_golden(&format!("analyze_{model}_{format}.txt"), &text);
        }
    }
    let op = success(&["analyze", "--model", "operational"]);
    assert_eq!(op.lines().last().unwrap(), "total:   1 × 10^23");
    let army = success(&["analyze", "--model", "army"]);
    assert!(army.lines().any(|l| l.starts_with("plugboard") && l.contains("532,985,208,200,576")));
    assert_eq!(success(&["analyze", "--model", "naval", "--format", "tsv"]).lines().count(), 6);
}

#[test]
fn encrypt_matches_planted_fixture_and_decrypts() {
    let cipher =
        success(&["encrypt", "--machine", "data/synthetic.machine", "--key", PLANTED_KEY, "--text", PLANTED_PLAIN]);
    assert_eq!(
        cipher,
        fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/planted.txt")).unwrap()
    );
    let plain = success(&[
        "decrypt",
        "--machine",
        "data/synthetic.machine",
        "--key",
        PLANTED_KEY,
        "--input",
        "tests/fixtures/planted.txt",
        "--strict",
    ]);
    assert_eq!(plain, format!("{PLANTED_PLAIN}\n"));
}

#[test]
fn encrypt_reads_stdin_and_writes_output_file() {
    use std::io::Write;
    use std::process::Stdio;
    let dir = std::env::temp_dir().join(format!("enigma-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let target = dir.join("out.txt");
    let mut child = Command::new(env!("CARGO_BIN_EXE_enigma"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(["encrypt", "--machine", "data/synthetic.machine", "--key", PLANTED_KEY, "--output"])
        .arg(&target)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"anx ober-kommando\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&target).unwrap(), "IVSMFQEFTPKKOUS\n");
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn historical_vector() {
    let out = success(&[
        "encrypt",
        "--machine",
        "data/historical.machine",
        "--key",
        "MODEL=Army3; ROTORS=I,II,III; RINGS=AAA; POS=AAA; REFLECTOR=B; STEP=historical",
        "--text",
        "AAAAA",
    ]);
    assert_eq!(out, "BDZGO\n");
}

#[test]
fn malformed_rotor_line_exits_2() {
    let out =
        enigma(&["encrypt", "--machine", "tests/fixtures/short_rotor.machine", "--key", PLANTED_KEY, "--text", "A"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    check_golden("error_short_rotor.txt", &stderr(&out));
    assert!(stderr(&out).contains("line 3"));
}

#[test]
fn strict_rejection_exits_3() {
    let out = enigma(&[
        "encrypt",
        "--machine",
        "data/synthetic.machine",
        "--key",
        PLANTED_KEY,
        "--text",
        "HELLO WORLD",
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(3));
    check_golden("error_strict.txt", &stderr(&out));
    assert!(stderr(&out).contains("position 5"));
}

#[test]
fn invalid_keys_exit_2() {
    for key in [
        "MODEL=Army3; ROTORS=P1,P1,P3; REFLECTOR=U1",
        "MODEL=Army3; ROTORS=P1,P2,P3; REFLECTOR=U9",
        "MODEL=Army3; ROTORS=P1,P2,P3; PLUG=AB AC; REFLECTOR=U1",
        "MODEL=Army3; ROTORS=P1,P2; REFLECTOR=U1",
        "MODEL=Army3; ROTORS=P1,P2,P3; REFLECTOR=U1; SPEED=9",
    ] {
        let out = enigma(&["encrypt", "--machine", "data/synthetic.machine", "--key", key, "--text", "A"]);
        assert_eq!(out.status.code(), Some(2), "{key}");
        assert!(stderr(&out).starts_with("error: key: "), "{}", stderr(&out));
    }
}

#[test]
fn unknown_flags_and_commands_exit_2() {
    assert_eq!(enigma(&["analyze", "--verbose"]).status.code(), Some(2));
    assert_eq!(enigma(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(enigma(&["analyze", "--model", "roman"]).status.code(), Some(2));
    assert_eq!(
        enigma(&["encrypt", "--machine", "missing.machine", "--key", PLANTED_KEY, "--text", "A"]).status.code(),
        Some(2)
    );
}

#[test]
fn validate_command() {
    let text = success(&["validate", "--machine", "data/synthetic.machine", "--key", PLANTED_KEY]);
    check_golden("validate_synthetic.txt", &text);
    let text = success(&["validate", "--machine", "data/historical.machine"]);
    assert_eq!(text, "machine ok: 8 rotors, 2 static rotors, 4 reflectors\n");
    let out = enigma(&["validate", "--machine", "tests/fixtures/short_rotor.machine"]);
    assert_eq!(out.status.code(), Some(2));
}

fn search_args(jobs: &str) -> Vec<String> {
    [
        "search",
        "--machine",
        "data/synthetic.machine",
        "--ciphertext",
        "tests/fixtures/planted.txt",
        "--crib",
        "OBERKOMMANDOXWETTERV",
        "--offset",
        "3",
        "--pool",
        "P1,P2,P3,P4,P5",
        "--reflector",
        "U1",
        "--top-k",
        "5",
        "--jobs",
        jobs,
    ]
    .map(String::from)
    .to_vec()
}

#[test]
fn search_finds_planted_key_deterministically() {
    let one = enigma(&search_args("1").iter().map(String::as_str).collect::<Vec<_>>());
    let eight = enigma(&search_args("8").iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
    assert_eq!(one.stdout, eight.stdout);
    let text = stdout(&one);
    check_golden("search_planted.txt", &text);
    let rank1 = text.lines().find(|l| l.trim_start().starts_with("1 ")).unwrap();
    assert!(rank1.ends_with("MODEL=Army3; ROTORS=P4,P1,P5; RINGS=AAA; POS=GHT; PLUG=; REFLECTOR=U1; STEP=odometer"));
}

#[test]
fn search_rejects_overlong_crib() {
    let out = enigma(&[
        "search",
        "--machine",
        "data/synthetic.machine",
        "--ciphertext",
        "tests/fixtures/planted.txt",
        "--crib",
        "ANXOBERKOMMANDOXWETTERVORHERSAGEFUERDIENORDSEEXREGENUNDSTURMX",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("overruns ciphertext"));
    let out = enigma(&[
        "search",
        "--machine",
        "data/synthetic.machine",
        "--ciphertext",
        "tests/fixtures/planted.txt",
        "--crib",
        "ANX",
        "--pool",
        "P1,P2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
