//! Acceptance: exact-mode CLI outputs are byte-identical across runs.

mod common;
use common::run;

#[test]
fn criterion_11_determinism() {
    let commands: [&[&str]; 8] = [
        &["basis", "--d", "3", "--a", "1"],
        &["basis", "--d", "2", "--a", "0"],
        &["basis", "--d", "5", "--a", "2", "--r", "1/3"],
        &["mub", "--d", "2"],
        &["mub", "--d", "4"],
        &["pauli", "--d", "3", "--a", "1", "--b", "1"],
        &["group", "--d", "2", "--cayley"],
        &["ring", "--N", "6"],
    ];
    for args in commands {
        let (code1, out1, _) = run(args);
        let (code2, out2, _) = run(args);
        assert_eq!(code1, 0, "command {args:?} failed");
        assert_eq!(code1, code2);
        assert!(!out1.is_empty());
        assert!(
            out1 == out2,
            "exact-mode output of {args:?} differs between runs"
        );
    }
    println!("PASS criterion 11: exact-mode CLI outputs are byte-identical across runs");
}
