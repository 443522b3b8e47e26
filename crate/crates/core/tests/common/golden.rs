//! Golden corpus of CLI invocations under `tests/golden`.

use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub stdin: Option<String>,
}

pub fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            Case {
                name: parts[0].to_owned(),
                args: parts[1].split_whitespace().map(str::to_owned).collect(),
                stdin: parts.get(2).map(|s| s.to_string()),
            }
        })
        .collect()
}

/// Exit code followed by the porcelain output, from whichever stream the
/// binary wrote it to.
pub fn run_case(case: &Case) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bns"));
    cmd.current_dir(dir())
        .arg("--porcelain")
        .args(&case.args)
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    cmd.stdin(match &case.stdin {
        Some(f) => Stdio::from(std::fs::File::open(dir().join(f)).expect("stdin fixture")),
        None => Stdio::null(),
    });
    let out = cmd.output().expect("run bns");
    format!(
        "exit={}\n{}{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

pub fn expected_path(case: &Case) -> PathBuf {
    dir().join("expected").join(format!("{}.out", case.name))
}

/// Names of cases whose output differs from the stored expectation. With
/// `BNS_BLESS=1` the expectations are rewritten instead.
pub fn mismatches() -> Vec<String> {
    let bless = std::env::var_os("BNS_BLESS").is_some();
    let mut bad = Vec::new();
    for case in cases() {
        let got = run_case(&case);
        let path = expected_path(&case);
        if bless {
            std::fs::write(&path, &got).expect("write expectation");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            _ => {
                eprintln!("golden mismatch in {}:\n{got}", case.name);
                bad.push(case.name);
            }
        }
    }
    bad
}
