use depcat_core::checker::{Checker, Verdict};
use depcat_core::fixtures::golden;

#[test]
fn golden_corpus_verdicts() {
    let (sig, pos, neg) = golden();
    assert!(pos.len() >= 40 && neg.len() >= 20);
    let ck = Checker::new(&sig);
    let mut wrong = Vec::new();
    for j in &pos {
        let v = ck.judge(j);
        if !v.is_derivable() {
            wrong.push(format!("expected derivable: {:?}\n  got {:?}", j, v));
        }
    }
    for j in &neg {
        match ck.judge(j) {
            Verdict::NotDerivable { .. } => {}
            v => wrong.push(format!("expected not derivable: {:?}\n  got {:?}", j, v)),
        }
    }
    assert!(wrong.is_empty(), "{}", wrong.join("\n"));
}
