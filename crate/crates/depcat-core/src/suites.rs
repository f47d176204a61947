//! Model-level checks over the shipped corpora: soundness, completeness, the
//! substitution lemma, STLC through the bridge, and the broken models.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge::{check_ccc_laws, parse_instance, stlc_agree, stlc_setup, DModel};
use crate::checker::Judgement;
use crate::cwf::{check_laws, LawReport, Model};
use crate::env::parse_env;
use crate::finset::{exhaustive_seeds, random_seeds, Elem, FinSetModel, FinSetSampler};
use crate::fixtures;
use crate::interp::{
    check_completeness, check_soundness, check_substitution, check_substitution_mor, check_substitution_ty,
    generic_structure, Interpreter,
};
use crate::mutants::{Fault, Mutant, MutantSampler, ReversedDecomposition};
use crate::print::print_judgement;
use crate::signature::ValidatedSignature;
use crate::syntax::{Ctx, CtxMor, Name, Sym, Tm, Ty};
use crate::term_model::{TermModel, TermSampler};

/// Counts and the first few failures of a suite run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub total: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

/// The z3f signature used by the suites.
pub fn z3f() -> ValidatedSignature {
    fixtures::load(fixtures::Z3F, false).1
}

fn corpus(body: &str) -> Vec<Judgement> {
    let (file, _) = fixtures::load(&format!("{}\n{}", fixtures::Z3F, body), false);
    fixtures::checks(&file)
}

/// Every corpus judgement is derivable and holds in `it`.
pub fn soundness_in<M: Model>(it: &Interpreter<'_, '_, M>, js: &[Judgement]) -> SuiteReport {
    let mut r = SuiteReport::default();
    for j in js {
        r.total += 1;
        let v = it.checker().judge(j);
        if !v.is_derivable() {
            r.fail(format!("not derivable: {}: {:?}", print_judgement(j), v));
            continue;
        }
        match check_soundness(it, j) {
            Ok(None) => {}
            Ok(Some(w)) => r.fail(format!("{}: {}", print_judgement(j), w)),
            Err(e) => r.fail(format!("{}: {}", print_judgement(j), e)),
        }
    }
    r
}

/// The soundness corpus in FinSet (under z3f.env) and in the generic model.
pub fn soundness() -> (SuiteReport, SuiteReport) {
    let sig = z3f();
    let js = corpus(fixtures::SOUNDNESS);
    let fm = FinSetModel::new();
    let fs = parse_env(fixtures::Z3F_ENV, &sig, &fm).expect("z3f env parses");
    let fin = soundness_in(&Interpreter::new(&fm, &fs, &sig), &js);
    let tm = TermModel::new(&sig);
    let ts = generic_structure(&sig);
    let term = soundness_in(&Interpreter::new(&tm, &ts, &sig), &js);
    (fin, term)
}

/// Checker and generic model agree on every corpus equation. Also returns
/// how many of the equations were derivable.
pub fn completeness() -> (SuiteReport, usize) {
    let sig = z3f();
    let tm = TermModel::new(&sig);
    let ts = generic_structure(&sig);
    let it = Interpreter::new(&tm, &ts, &sig);
    let mut r = SuiteReport::default();
    let mut derivable = 0;
    for j in corpus(fixtures::COMPLETENESS) {
        let Judgement::TermEq(g, a, b, ty) = &j else { continue };
        r.total += 1;
        if it.checker().equal_terms(g, a, b, ty).is_derivable() {
            derivable += 1;
        }
        match check_completeness(&it, g, a, b, ty) {
            Ok(None) => {}
            Ok(Some(w)) => r.fail(w),
            Err(e) => r.fail(format!("{}: {}", print_judgement(&j), e)),
        }
    }
    (r, derivable)
}

/// One substitution instance: Γ ⊢ t : A, f : Δ → Γ and h : Γ → Θ.
#[derive(Clone, Debug)]
pub struct SubstSample {
    pub gamma: Ctx,
    pub tm: Tm,
    pub ty: Ty,
    pub f: CtxMor,
    pub h: CtxMor,
}

fn z3() -> Ty {
    Ty::constant("Z3", Vec::new())
}

/// Γ = (x:Z3, y:F[x]) with t = y, so the type depends on the context.
fn dependent_sample(s: &mut TermSampler<'_>) -> Option<SubstSample> {
    let fam = Ty::constant("F", alloc::vec![Tm::var(0, "x")]);
    let gamma = Ctx::empty().push(Name::new("x"), z3()).push(Name::new("y"), fam.clone());
    let delta = s.random_ctx(2);
    let a = s.term(&delta, &z3(), 3)?;
    let fa = Tm::Const(crate::syntax::Sym::new("f"), alloc::vec![a.clone()]);
    let f = CtxMor { dom: delta, cod: gamma.clone(), comps: alloc::vec![a, fa] };
    let theta = s.random_ctx(2);
    let h = s.random_mor(&gamma, &theta)?;
    Some(SubstSample { gamma, tm: Tm::var(0, "y"), ty: fam.shift(1), f, h })
}

fn plain_sample(s: &mut TermSampler<'_>) -> Option<SubstSample> {
    let gamma = s.random_ctx(2);
    let ty = s.pick_ty();
    let tm = s.term(&gamma, &ty, 3)?;
    let delta = s.random_ctx(2);
    let f = s.random_mor(&delta, &gamma)?;
    let theta = s.random_ctx(2);
    let h = s.random_mor(&gamma, &theta)?;
    Some(SubstSample { gamma, tm, ty, f, h })
}

/// Closed types whose carriers have at most three elements, so that
/// β-redex domains stay small in FinSet.
fn small_types() -> Vec<Ty> {
    alloc::vec![
        Ty::Unit,
        z3(),
        Ty::arrow(Ty::Unit, z3()),
        Ty::arrow(z3(), Ty::Unit),
        Ty::product(z3(), Ty::Unit),
        Ty::sigma("x", Ty::Unit, z3()),
    ]
}

/// Seeded samples over z3f; a quarter of them use a dependent context.
pub fn substitution_samples(sig: &ValidatedSignature, n: usize, seed: u64) -> Vec<SubstSample> {
    let mut s = TermSampler::new(sig, seed);
    s.types = small_types();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n && attempts < 50 * n {
        attempts += 1;
        let smp = if rng.gen_ratio(1, 4) { dependent_sample(&mut s) } else { plain_sample(&mut s) };
        out.extend(smp);
    }
    out
}

/// The three substitution equations on `n` samples, interpreted in FinSet.
pub fn substitution(n: usize, seed: u64) -> SuiteReport {
    let sig = z3f();
    let fm = FinSetModel::new();
    let fs = parse_env(fixtures::Z3F_ENV, &sig, &fm).expect("z3f env parses");
    let it = Interpreter::new(&fm, &fs, &sig);
    let mut r = SuiteReport::default();
    for smp in substitution_samples(&sig, n, seed) {
        r.total += 1;
        let checks = [
            ("term", check_substitution(&it, &smp.gamma, &smp.tm, &smp.ty, &smp.f)),
            ("type", check_substitution_ty(&it, &smp.gamma, &smp.ty, &smp.f)),
            ("morphism", check_substitution_mor(&it, &smp.h, &smp.f)),
        ];
        for (what, c) in checks {
            match c {
                Ok(None) => {}
                Ok(Some(w)) => r.fail(format!("{} substitution: {}", what, w)),
                Err(e) => r.fail(format!("{} substitution: {}", what, e)),
            }
        }
    }
    r
}

/// The STLC corpus in D(c) for the atoms2 instance, compared through ε with
/// direct evaluation in c. Equations compare both sides as well.
pub fn stlc() -> SuiteReport {
    let inst = parse_instance(fixtures::ATOMS2).expect("atoms2 parses");
    let fin = inst.build();
    let (file, sig) = fixtures::load(fixtures::STLC, false);
    let (b0, b1) = (Sym::new("b0"), Sym::new("b1"));
    let points = [(Sym::new("c0"), b0.clone(), Elem::Int(0)), (Sym::new("c1"), b1.clone(), Elem::sym("a"))];
    let (st, env) = stlc_setup(&fin, &[b0, b1], &points).expect("constants fit the instance");
    let d = DModel::new(&fin);
    let it = Interpreter::new(&d, &st, &sig);
    let mut r = SuiteReport::default();
    for j in fixtures::checks(&file) {
        r.total += 1;
        if !it.checker().judge(&j).is_derivable() {
            r.fail(format!("not derivable: {}", print_judgement(&j)));
            continue;
        }
        let res = match &j {
            Judgement::Term(g, t, a) => stlc_agree(&it, &env, g, t, a),
            Judgement::TermEq(g, t, u, a) => stlc_agree(&it, &env, g, t, a).and_then(|x| match x {
                None => Ok(stlc_agree(&it, &env, g, u, a)?.or(
                    (!d.eq_dmor(&it.term(g, t, a)?, &it.term(g, u, a)?)).then(|| String::from("sides differ in D(c)")),
                )),
                w => Ok(w),
            }),
            _ => {
                r.total -= 1;
                continue;
            }
        };
        match res {
            Ok(None) => {}
            Ok(Some(w)) => r.fail(format!("{}: {}", print_judgement(&j), w)),
            Err(e) => r.fail(format!("{}: {}", print_judgement(&j), e)),
        }
    }
    r
}

/// Law reports for each broken model: the FinSet mutants over every instance
/// with carriers of size ≤ 2 plus `random` seeded ones, and the reversed
/// decomposition over the atoms2 objects of depth ≤ 2.
pub fn mutant_reports(random: usize, seed: u64) -> Vec<(&'static str, LawReport)> {
    let mut seeds = exhaustive_seeds(2);
    seeds.extend(random_seeds(random, seed));
    let mut out: Vec<_> = Fault::ALL
        .iter()
        .map(|&f| (f.name(), check_laws(&Mutant::new(f), &mut MutantSampler(FinSetSampler::new(seed)), &seeds)))
        .collect();
    let fin = parse_instance(fixtures::ATOMS2).expect("atoms2 parses").build();
    let objs = fin.objects_up_to(2);
    out.push(("wrong atomic decomposition", check_ccc_laws(&ReversedDecomposition(&fin), &fin, &objs, random, seed)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_well_typed() {
        let sig = z3f();
        let ck = crate::checker::Checker::new(&sig);
        for smp in substitution_samples(&sig, 20, 4) {
            assert!(ck.check_term(&smp.gamma, &smp.tm, &smp.ty).is_derivable(), "{:?}", smp);
            assert!(ck.check_ctx_morphism(&smp.f.dom, &smp.f.comps, &smp.f.cod).is_derivable(), "{:?}", smp.f);
            assert!(ck.check_ctx_morphism(&smp.h.dom, &smp.h.comps, &smp.h.cod).is_derivable(), "{:?}", smp.h);
        }
    }
}
