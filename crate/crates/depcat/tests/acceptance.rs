//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::cell::OnceCell;
use std::process::ExitCode;
use std::time::Instant;

use depcat::{bridge_roundtrip, finset_laws, report_ok, term_laws, Budget};
use depcat_core::bridge::parse_instance;
use depcat_core::checker::{Checker, Verdict};
use depcat_core::cwf::{Law, LawReport};
use depcat_core::fixtures;
use depcat_core::suites::{self, SuiteReport};

const SEED: u64 = 0;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn law_summary(r: &LawReport) -> Outcome {
    if report_ok(r) {
        let n: usize = r.entries.iter().map(|e| e.checked).sum();
        Ok(format!("{} laws, {} checks", r.entries.len(), n))
    } else {
        Err(format!("failing {:?}, unchecked {:?}", r.failing(), r.unchecked()))
    }
}

fn suite_summary(r: &SuiteReport, min: usize) -> Outcome {
    if r.total < min {
        Err(format!("only {} items, need {}", r.total, min))
    } else if !r.passed() {
        Err(format!("{} of {} failed; first: {}", r.failures.len(), r.total, r.failures[0]))
    } else {
        Ok(format!("{} items", r.total))
    }
}

fn golden() -> Outcome {
    let (sig, pos, neg) = fixtures::golden();
    if pos.len() < 40 || neg.len() < 20 {
        return Err(format!("{} positive, {} negative", pos.len(), neg.len()));
    }
    let ck = Checker::new(&sig);
    let wrong_pos = pos.iter().filter(|j| !ck.judge(j).is_derivable()).count();
    let wrong_neg = neg.iter().filter(|j| !matches!(ck.judge(j), Verdict::NotDerivable { .. })).count();
    if wrong_pos + wrong_neg > 0 {
        return Err(format!("{} positive and {} negative verdicts wrong", wrong_pos, wrong_neg));
    }
    Ok(format!("{} positive, {} negative", pos.len(), neg.len()))
}

fn derived(r: &LawReport) -> Outcome {
    let mut low = Vec::new();
    for law in Law::ALL.iter().filter(|l| l.is_derived()) {
        match r.get(law.name()) {
            Some(e) if e.failed == 0 && e.checked >= 50 => {}
            Some(e) => low.push(format!("{} ({} checked, {} failed)", e.name, e.checked, e.failed)),
            None => low.push(format!("{} missing", law.name())),
        }
    }
    if low.is_empty() {
        Ok(format!("{} derived laws, ≥50 instances each", Law::ALL.iter().filter(|l| l.is_derived()).count()))
    } else {
        Err(low.join(", "))
    }
}

fn completeness() -> Outcome {
    let (r, derivable) = suites::completeness();
    let s = suite_summary(&r, 30)?;
    if derivable == 0 || derivable == r.total {
        return Err(format!("{} of {} derivable; need both kinds", derivable, r.total));
    }
    Ok(format!("{}, {} derivable", s, derivable))
}

fn roundtrip() -> Outcome {
    let inst = parse_instance(fixtures::ATOMS2).map_err(|e| e.to_string())?;
    if inst.atoms.len() != 2 || inst.atoms.iter().any(|(_, s)| s.len() > 2) || inst.depth != 3 {
        return Err("atoms2 is not two atoms of size ≤ 2 at depth 3".into());
    }
    law_summary(&bridge_roundtrip(&inst, 100, SEED))
}

const WRONG_V: &[&str] = &[
    "ConsR", "ConsId", "Coh0Sigma", "Coh1Sigma", "Coh2Sigma", "PiBeta", "PiUniq", "PiUP2", "PiUP3", "DcompPi1",
    "DcompPi2", "PairIso", "PairSubst", "RSigmaComp", "RSigmaUniq", "RSigmaSubst", "AppBeta", "LamUniq", "LamSubst",
    "SigmaAssoc", "DObjCat",
];

fn mutants() -> Outcome {
    let expected: &[(&str, &[&str])] = &[
        ("wrong v", WRONG_V),
        ("broken Σ coherence", &["Coh0Sigma"]),
        ("non-unique bang", &["TermUniq"]),
        ("broken dev substitution", &["PiUP2", "PiUP3", "DcompPi2", "LamUniq", "LamSubst", "AppSubst"]),
        ("wrong atomic decomposition", &["AtomicDecomposition"]),
    ];
    let got = suites::mutant_reports(60, SEED + 1);
    let mut bad = Vec::new();
    for ((name, laws), (gname, r)) in expected.iter().zip(&got) {
        if name != gname || r.failing() != laws.to_vec() {
            bad.push(format!("{}: caught by {:?}", gname, r.failing()));
        }
    }
    if bad.is_empty() && got.len() == expected.len() {
        Ok(format!("{} mutants", got.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    println!("seed {}", SEED);
    let finset = OnceCell::new();
    let finset = || finset.get_or_init(|| finset_laws(200, SEED));
    let criteria: Vec<Criterion> = vec![
        ("golden corpus", Box::new(golden)),
        ("FinSet law suite", Box::new(|| law_summary(finset()))),
        ("derived formers in FinSet", Box::new(|| derived(finset()))),
        ("term model law suite", Box::new(|| law_summary(&term_laws(Budget::Full, SEED)))),
        ("soundness", Box::new(|| {
            let (fin, term) = suites::soundness();
            Ok(format!("FinSet {}; term model {}", suite_summary(&fin, 30)?, suite_summary(&term, 30)?))
        })),
        ("completeness", Box::new(completeness)),
        ("substitution lemma", Box::new(|| suite_summary(&suites::substitution(120, 7), 100))),
        ("S ⊣ D round trip", Box::new(roundtrip)),
        ("STLC through the bridge", Box::new(|| suite_summary(&suites::stlc(), 20))),
        ("fault injection", Box::new(mutants)),
    ];
    let mut ok = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("PASS {:>2} {} ({}) [{:.1}s]", i + 1, name, d, secs),
            Err(e) => {
                ok = false;
                println!("FAIL {:>2} {}: {} [{:.1}s]", i + 1, name, e, secs)
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
