use depcat_core::suites;

#[test]
fn soundness_corpus_holds_in_finsets_and_the_generic_model() {
    let (fin, term) = suites::soundness();
    assert!(fin.total >= 30);
    assert!(fin.passed(), "{:#?}", fin.failures);
    assert!(term.passed(), "{:#?}", term.failures);
}

#[test]
fn checker_agrees_with_the_generic_model() {
    let (r, derivable) = suites::completeness();
    assert!(r.total >= 30);
    assert!(derivable >= 10 && r.total - derivable >= 10, "{} of {}", derivable, r.total);
    assert!(r.passed(), "{:#?}", r.failures);
}

#[test]
fn substitution_lemma_in_finsets() {
    let r = suites::substitution(120, 7);
    assert!(r.total >= 100, "{}", r.total);
    assert!(r.passed(), "{:#?}", r.failures);
}

#[test]
fn stlc_corpus_agrees_through_the_bridge() {
    let r = suites::stlc();
    assert!(r.total >= 20, "{}", r.total);
    assert!(r.passed(), "{:#?}", r.failures);
}

const WRONG_V: &[&str] = &[
    "ConsR", "ConsId", "Coh0Sigma", "Coh1Sigma", "Coh2Sigma", "PiBeta", "PiUniq", "PiUP2", "PiUP3", "DcompPi1",
    "DcompPi2", "PairIso", "PairSubst", "RSigmaComp", "RSigmaUniq", "RSigmaSubst", "AppBeta", "LamUniq", "LamSubst",
    "SigmaAssoc", "DObjCat",
];

#[test]
fn each_mutant_fails_its_laws() {
    let expected: &[(&str, &[&str])] = &[
        ("wrong v", WRONG_V),
        ("broken Σ coherence", &["Coh0Sigma"]),
        ("non-unique bang", &["TermUniq"]),
        ("broken dev substitution", &["PiUP2", "PiUP3", "DcompPi2", "LamUniq", "LamSubst", "AppSubst"]),
        ("wrong atomic decomposition", &["AtomicDecomposition"]),
    ];
    let got = suites::mutant_reports(60, 1);
    assert_eq!(got.len(), expected.len());
    for ((name, r), (ename, laws)) in got.iter().zip(expected) {
        assert_eq!(name, ename);
        assert_eq!(r.failing(), laws.to_vec(), "{}", name);
    }
}
