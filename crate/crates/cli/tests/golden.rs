//! Transcript tests: `tests/golden/*.txt` hold blocks of
//!
//! ```text
//! $ <arguments>
//! <expected stdout>
//! [exit <code>]            or   [exit <code> <ErrorCode>]
//! ```
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the transcripts from the current output.

use std::fs;
use std::path::Path;

use tkr_cli::run;

struct Case {
    args: String,
    expected: String,
}

fn parse(text: &str) -> Vec<Case> {
    let mut cases = Vec::new();
    let mut lines = text.lines().peekable();
    while let Some(line) = lines.next() {
        let Some(args) = line.strip_prefix("$ ") else { continue };
        let mut expected = String::new();
        while let Some(l) = lines.next_if(|l| !l.starts_with("$ ")) {
            expected.push_str(l);
            expected.push('\n');
            if l.starts_with("[exit ") {
                break;
            }
        }
        cases.push(Case {
            args: args.to_string(),
            expected,
        });
    }
    cases
}

fn render(args: &str) -> String {
    let r = run(std::iter::once("tkr").chain(args.split_whitespace()));
    let mut out = r.stdout;
    if !out.is_empty() && !out.ends_with('\n') {
        out.push('\n');
    }
    match r.stderr.split(':').next().filter(|_| r.code != 0) {
        Some(code) => out.push_str(&format!("[exit {} {}]\n", r.code, code)),
        None => out.push_str(&format!("[exit {}]\n", r.code)),
    }
    out
}

#[test]
fn transcripts() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    let mut total = 0;
    let mut files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    for path in files.iter().filter(|p| p.extension().is_some_and(|e| e == "txt")) {
        let text = fs::read_to_string(path).unwrap();
        let mut rewritten = String::new();
        for case in parse(&text) {
            total += 1;
            let got = render(&case.args);
            if got != case.expected {
                failures.push(format!(
                    "{}: $ {}\n--- expected\n{}--- got\n{}",
                    path.display(),
                    case.args,
                    case.expected,
                    got
                ));
            }
            rewritten.push_str(&format!("$ {}\n{}\n", case.args, got));
        }
        if update {
            fs::write(path, rewritten).unwrap();
        }
    }
    assert!(total > 0);
    if !update {
        assert!(failures.is_empty(), "{} of {total} transcripts differ:\n{}", failures.len(), failures.join("\n"));
    }
}
