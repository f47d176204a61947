//! Sample signatures and instances shipped with the crate.

use alloc::vec::Vec;

use crate::checker::{Checker, Judgement};
use crate::parser::{parse_file, Item, SourceFile};
use crate::signature::{validate_signature, Signature, ValidateOptions, ValidatedSignature};

/// N with zero, succ and a recursor into N.
pub const NAT: &str = include_str!("../fixtures/nat.mltt");
/// Identity types over a base type with J into a fixed motive.
pub const ID: &str = include_str!("../fixtures/id.mltt");
/// Integers modulo 3.
pub const Z3: &str = include_str!("../fixtures/z3.mltt");
/// Z3 interpreted as the integers modulo 3.
pub const ZMOD3_ENV: &str = include_str!("../fixtures/zmod3.env");
/// A Z3 env whose successor is truncated, breaking the axiom.
pub const TRUNC_ENV: &str = include_str!("../fixtures/trunc.env");
/// Z3 with a family F over it and a section f.
pub const Z3F: &str = include_str!("../fixtures/z3f.mltt");
/// A finite-set interpretation of z3f.
pub const Z3F_ENV: &str = include_str!("../fixtures/z3f.env");
/// Derivable judgements over z3f.
pub const SOUNDNESS: &str = include_str!("../fixtures/soundness.mltt");
/// Term equations over z3f, derivable or not.
pub const COMPLETENESS: &str = include_str!("../fixtures/completeness.mltt");
/// An axiom that fails the termination guard.
pub const UNGUARDED: &str = include_str!("../fixtures/unguarded.mltt");
/// Simply typed judgements over two base types.
pub const STLC: &str = include_str!("../fixtures/stlc.mltt");
/// Shared declarations for the golden checker corpus.
pub const GOLDEN_PREAMBLE: &str = include_str!("../fixtures/golden_preamble.mltt");
/// Judgements that must be derivable under the golden preamble.
pub const GOLDEN_POS: &str = include_str!("../fixtures/golden_pos.mltt");
/// Judgements that must not be.
pub const GOLDEN_NEG: &str = include_str!("../fixtures/golden_neg.mltt");
/// A CtxCCC instance with two atoms of size 2.
pub const ATOMS2: &str = include_str!("../fixtures/atoms2.ctxccc");

/// Parses and validates a fixture. Panics on malformed input, which for
/// the shipped fixtures is a bug.
pub fn load(src: &str, trust_axioms: bool) -> (SourceFile, ValidatedSignature) {
    let file = parse_file(src).expect("fixture parses");
    let sig = validate_signature(&Signature::from_source(&file), ValidateOptions { trust_axioms })
        .expect("fixture signature is valid");
    (file, sig)
}

pub fn checks(file: &SourceFile) -> Vec<Judgement> {
    file.items
        .iter()
        .filter_map(|it| match &it.item {
            Item::Check(j) => Some(j.clone()),
            _ => None,
        })
        .collect()
}

/// The golden corpus: signature, derivable and non-derivable judgements.
pub fn golden() -> (ValidatedSignature, Vec<Judgement>, Vec<Judgement>) {
    let (pos, sig) = load(&alloc::format!("{}\n{}", GOLDEN_PREAMBLE, GOLDEN_POS), false);
    let (neg, _) = load(&alloc::format!("{}\n{}", GOLDEN_PREAMBLE, GOLDEN_NEG), false);
    (sig, checks(&pos), checks(&neg))
}

/// Whether every `check` item of a fixture is derivable.
pub fn all_checks_pass(src: &str) -> bool {
    let (file, sig) = load(src, false);
    let ck = Checker::new(&sig);
    checks(&file).iter().all(|j| ck.judge(j).is_derivable())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_signatures_check() {
        for (name, src) in [("nat", NAT), ("id", ID), ("z3", Z3), ("stlc", STLC)] {
            let (file, sig) = load(src, false);
            let ck = Checker::new(&sig);
            for j in checks(&file) {
                assert!(ck.judge(&j).is_derivable(), "{}: {:?} => {:?}", name, j, ck.judge(&j));
            }
        }
    }

    #[test]
    fn unguarded_needs_trust() {
        let file = parse_file(UNGUARDED).unwrap();
        let sig = Signature::from_source(&file);
        assert!(validate_signature(&sig, ValidateOptions { trust_axioms: false }).is_err());
        assert!(validate_signature(&sig, ValidateOptions { trust_axioms: true }).is_ok());
    }
}
