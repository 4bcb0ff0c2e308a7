//! A name that is both a builtin and a file in the working directory is refused.
//! Kept in its own test binary because it changes the working directory.

use tkr_cli::run;

#[test]
fn builtin_shadowed_by_file_is_ambiguous() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("rp2"), "complex rp2 dim=0\ncells 0: p\n").unwrap();
    std::env::set_current_dir(dir.path()).unwrap();
    let r = run(["tkr", "tkr", "rp2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("Ambiguous:"), "{}", r.stderr);
    let r = run(["tkr", "homology", "./rp2"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "H_0 = Z\n"));
}
