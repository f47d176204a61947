//! Property tests for the kernel's structural invariants.

use depcat_core::checker::{Checker, Verdict};
use depcat_core::fixtures;
use depcat_core::parser::{parse_file, Item, Scoped};
use depcat_core::print::{print_tm_in, print_ty_in};
use depcat_core::signature::{validate_signature, Signature, ValidateOptions, ValidatedSignature};
use depcat_core::syntax::{compose_cm, id_cm, Ctx, CtxMor, Name, Tm, Ty};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Raw syntax

#[derive(Clone, Debug)]
struct Node {
    tag: u8,
    pick: usize,
    kids: Vec<Node>,
}

fn node() -> impl Strategy<Value = Node> {
    let leaf = (any::<u8>(), 0usize..8).prop_map(|(tag, pick)| Node { tag, pick, kids: vec![] });
    leaf.prop_recursive(4, 40, 3, |inner| {
        (any::<u8>(), 0usize..8, prop::collection::vec(inner, 0..=3))
            .prop_map(|(tag, pick, kids)| Node { tag, pick, kids })
    })
}

fn to_tm(n: &Node, scope: usize) -> Tm {
    let kid = |i: usize, sc: usize| n.kids.get(i).map(|k| to_tm(k, sc)).unwrap_or(Tm::Star);
    let kty = |i: usize, sc: usize| n.kids.get(i).map(|k| to_ty(k, sc)).unwrap_or(Ty::Unit);
    match n.tag % 8 {
        0 | 1 if scope > 0 => Tm::var(n.pick % scope, "v"),
        0 | 1 => Tm::Star,
        2 => Tm::lam("x", kid(0, scope + 1)),
        3 => Tm::lam_ann("x", kty(1, scope), kid(0, scope + 1)),
        4 => Tm::app(kid(0, scope), kid(1, scope)),
        5 => Tm::pair(kid(0, scope), kid(1, scope)),
        6 => Tm::rsig(kty(2, scope + 1), kid(0, scope + 2), kid(1, scope)),
        _ => Tm::constant("f", vec![kid(0, scope), kid(1, scope)]),
    }
}

fn to_ty(n: &Node, scope: usize) -> Ty {
    let kid = |i: usize, sc: usize| n.kids.get(i).map(|k| to_tm(k, sc)).unwrap_or(Tm::Star);
    let kty = |i: usize, sc: usize| n.kids.get(i).map(|k| to_ty(k, sc)).unwrap_or(Ty::Unit);
    match n.tag % 4 {
        0 => Ty::Unit,
        1 => Ty::pi("x", kty(0, scope), kty(1, scope + 1)),
        2 => Ty::sigma("x", kty(0, scope), kty(1, scope + 1)),
        _ => Ty::constant("K", vec![kid(0, scope)]),
    }
}

fn unit_ctx(n: usize) -> Ctx {
    Ctx::from_entries((0..n).map(|i| (Name::new(&format!("v{}", i)), Ty::Unit)).collect())
}

fn morphism(dom: usize, cod: usize, comps: &[Node]) -> CtxMor {
    let terms = (0..cod).map(|i| comps.get(i).map(|n| to_tm(n, dom)).unwrap_or(Tm::Star)).collect();
    CtxMor::new(unit_ctx(dom), unit_ctx(cod), terms).unwrap()
}

const RAW_DECLS: &str = "typeconst K (u:Unit)\ntermconst f (a:Unit, b:Unit) : Unit\n";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn identity_substitution(n in 0usize..4, e in node()) {
        let t = to_tm(&e, n);
        prop_assert_eq!(t.gen_subst(&id_cm(&unit_ctx(n))).unwrap(), t);
        let a = to_ty(&e, n);
        prop_assert_eq!(a.gen_subst(&id_cm(&unit_ctx(n))).unwrap(), a);
    }

    #[test]
    fn substitution_composes(
        (k, m, n) in (0usize..3, 0usize..3, 0usize..3),
        e in node(),
        gs in prop::collection::vec(node(), 3),
        fs in prop::collection::vec(node(), 3),
    ) {
        // e over Γ (n vars), g : Δ → Γ, f : Θ → Δ
        let g = morphism(m, n, &gs);
        let f = morphism(k, m, &fs);
        let gf = compose_cm(&g, &f).unwrap();
        let t = to_tm(&e, n);
        prop_assert_eq!(t.gen_subst(&g).unwrap().gen_subst(&f).unwrap(), t.gen_subst(&gf).unwrap());
        let a = to_ty(&e, n);
        prop_assert_eq!(a.gen_subst(&g).unwrap().gen_subst(&f).unwrap(), a.gen_subst(&gf).unwrap());
    }

    #[test]
    fn context_morphisms_form_a_category(
        (j, k, m, n) in (0usize..3, 0usize..3, 0usize..3, 0usize..3),
        hs in prop::collection::vec(node(), 3),
        gs in prop::collection::vec(node(), 3),
        fs in prop::collection::vec(node(), 3),
    ) {
        let h = morphism(m, n, &hs);
        let g = morphism(k, m, &gs);
        let f = morphism(j, k, &fs);
        let left = compose_cm(&compose_cm(&h, &g).unwrap(), &f).unwrap();
        let right = compose_cm(&h, &compose_cm(&g, &f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(compose_cm(&h, &id_cm(&unit_ctx(m))).unwrap(), h.clone());
        prop_assert_eq!(compose_cm(&id_cm(&unit_ctx(n)), &h).unwrap(), h);
    }

    #[test]
    fn substitution_does_not_capture(n in 0usize..4, body in node(), arg in node()) {
        let b = to_tm(&body, n + 1);
        let a = to_tm(&arg, n);
        let out = b.subst(&a);
        let mut allowed: std::collections::BTreeSet<usize> =
            b.free_vars().into_iter().filter(|&i| i > 0).map(|i| i - 1).collect();
        allowed.extend(a.free_vars());
        prop_assert!(out.free_vars().is_subset(&allowed), "{:?} ⊄ {:?}", out.free_vars(), allowed);
    }

    #[test]
    fn print_then_parse_is_identity(n in 0usize..3, e in node()) {
        let file = parse_file(RAW_DECLS).unwrap();
        let scoped = Scoped { file: &file };
        let ctx = unit_ctx(n);
        let t = to_tm(&e, n);
        let text = print_tm_in(&ctx, &t);
        prop_assert_eq!(scoped.tm(&ctx, &text).map_err(|e| format!("{}: {}", text, e)), Ok(t));
        let a = to_ty(&e, n);
        let text = print_ty_in(&ctx, &a);
        prop_assert_eq!(scoped.ty(&ctx, &text).map_err(|e| format!("{}: {}", text, e)), Ok(a));
    }

    #[test]
    fn parse_errors_point_into_the_input(words in prop::collection::vec(
        prop::sample::select(vec![
            "check", "|-", "star", ":", "Unit", "Pi", "(", ")", "x", "\\", ".", "=", "[", "]", ",",
            "type", "Sigma", "\n", "typeconst", "N", "->", "*", "rsig", "?", "axiom",
        ]),
        1..24,
    )) {
        let text = words.join(" ");
        if let Err(e) = parse_file(&text) {
            let lines: Vec<&str> = text.split('\n').collect();
            prop_assert!(e.span.line >= 1 && e.span.line <= lines.len(), "{:?} in {:?}", e, text);
            prop_assert!(e.span.col >= 1 && e.span.col <= lines[e.span.line - 1].chars().count() + 1,
                "{:?} in {:?}", e, text);
        }
    }
}

// ---------------------------------------------------------------------------
// Well-typed syntax

const TYPED_DECLS: &str = "typeconst B ()\ntermconst b () : B[]\n\
    typeconst K (u:Unit -> Unit)\ntermconst k (u:Unit -> Unit) : K[u]\n";

fn typed_sig() -> ValidatedSignature {
    let file = parse_file(TYPED_DECLS).unwrap();
    validate_signature(&Signature::from_source(&file), ValidateOptions { trust_axioms: false }).unwrap()
}

fn b() -> Ty {
    Ty::constant("B", vec![])
}

fn simple_ty(rng: &mut ChaCha8Rng, depth: usize) -> Ty {
    match if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..4) } {
        0 => Ty::Unit,
        1 => b(),
        2 => Ty::arrow(simple_ty(rng, depth - 1), simple_ty(rng, depth - 1)),
        _ => Ty::product(simple_ty(rng, depth - 1), simple_ty(rng, depth - 1)),
    }
}

/// A random term of simple type `a` over `g` (outermost first), with redexes.
/// λs are annotated so that redex heads infer.
fn gen(rng: &mut ChaCha8Rng, g: &[Ty], a: &Ty, depth: usize) -> Tm {
    let vars: Vec<usize> = (0..g.len()).filter(|&i| &g[g.len() - 1 - i] == a).collect();
    if !vars.is_empty() && rng.gen_bool(0.35) {
        return Tm::var(vars[rng.gen_range(0..vars.len())], "v");
    }
    if depth > 0 && rng.gen_bool(0.25) {
        let c = simple_ty(rng, 1);
        let mut inner = g.to_vec();
        inner.push(c.clone());
        let body = gen(rng, &inner, a, depth - 1);
        return Tm::app(Tm::lam_ann("y", c.clone(), body), gen(rng, g, &c, depth - 1));
    }
    if depth > 0 && rng.gen_bool(0.15) {
        let c = simple_ty(rng, 1);
        let p = gen(rng, g, &Ty::product(a.clone(), c.clone()), depth - 1);
        return Tm::proj1(p, a, &c.shift(1));
    }
    match a {
        Ty::Unit => Tm::Star,
        Ty::Pi(_, dom, cod) => {
            let mut inner = g.to_vec();
            inner.push((**dom).clone());
            Tm::lam_ann("x", (**dom).clone(), gen(rng, &inner, &cod.unshift(1).unwrap(), depth.saturating_sub(1)))
        }
        Ty::Sigma(_, x, y) => Tm::pair(
            gen(rng, g, x, depth.saturating_sub(1)),
            gen(rng, g, &y.unshift(1).unwrap(), depth.saturating_sub(1)),
        ),
        _ => Tm::constant("b", vec![]),
    }
}

/// An η/β-expanded copy of `t : a`.
fn expand(rng: &mut ChaCha8Rng, t: &Tm, a: &Ty) -> Tm {
    match (rng.gen_range(0..3), a) {
        (0, _) => Tm::app(Tm::lam_ann("x", a.clone(), Tm::var(0, "x")), t.clone()),
        (_, Ty::Pi(_, dom, _)) => Tm::lam_ann("x", (**dom).clone(), Tm::app(t.shift(1), Tm::var(0, "x"))),
        (_, Ty::Sigma(_, x, y)) => {
            let y = y.clone();
            Tm::pair(Tm::proj1(t.clone(), x, &y), Tm::proj2(t.clone(), x, &y))
        }
        (_, Ty::Unit) => Tm::Star,
        _ => Tm::app(Tm::lam_ann("x", a.clone(), Tm::var(0, "x")), t.clone()),
    }
}

struct Sample {
    ctx: Ctx,
    tys: Vec<Ty>,
    ty: Ty,
    tm: Tm,
}

fn sample(seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(0..3);
    let tys: Vec<Ty> = (0..n).map(|_| simple_ty(&mut rng, 2)).collect();
    let ctx = Ctx::from_entries(tys.iter().enumerate().map(|(i, t)| (Name::new(&format!("v{}", i)), t.clone())).collect());
    let ty = simple_ty(&mut rng, 2);
    let tm = gen(&mut rng, &tys, &ty, 3);
    Sample { ctx, tys, ty, tm }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_terms_check(seed in any::<u64>()) {
        let sig = typed_sig();
        let s = sample(seed);
        let v = Checker::new(&sig).check_term(&s.ctx, &s.tm, &s.ty);
        prop_assert!(v.is_derivable(), "{:?} : {:?} => {:?}", s.tm, s.ty, v);
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let sig = typed_sig();
        let ck = Checker::new(&sig);
        let s = sample(seed);
        let n1 = ck.normalize_term(&s.ctx, &s.tm, &s.ty).unwrap();
        let n2 = ck.normalize_term(&s.ctx, &n1, &s.ty).unwrap();
        prop_assert_eq!(n1, n2);
    }

    #[test]
    fn equality_is_an_equivalence_and_a_congruence(seed in any::<u64>()) {
        let sig = typed_sig();
        let ck = Checker::new(&sig);
        let s = sample(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let t1 = expand(&mut rng, &s.tm, &s.ty);
        let t2 = expand(&mut rng, &t1, &s.ty);
        let eq = |a: &Tm, b: &Tm, ty: &Ty| ck.equal_terms(&s.ctx, a, b, ty).is_derivable();
        prop_assert!(eq(&s.tm, &s.tm, &s.ty));
        prop_assert!(eq(&s.tm, &t1, &s.ty) && eq(&t1, &s.tm, &s.ty));
        prop_assert!(eq(&t1, &t2, &s.ty) && eq(&s.tm, &t2, &s.ty));
        // congruence under pairing and λ
        let pair_ty = Ty::product(s.ty.clone(), Ty::Unit);
        prop_assert!(eq(&Tm::pair(s.tm.clone(), Tm::Star), &Tm::pair(t1.clone(), Tm::Star), &pair_ty));
        let fun_ty = Ty::arrow(b(), s.ty.clone());
        prop_assert!(eq(&Tm::lam("w", s.tm.shift(1)), &Tm::lam("w", t1.shift(1)), &fun_ty));
    }

    #[test]
    fn conversion_transports_terms(seed in any::<u64>()) {
        let sig = typed_sig();
        let ck = Checker::new(&sig);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = gen(&mut rng, &[], &Ty::arrow(Ty::Unit, Ty::Unit), 3);
        let f2 = expand(&mut rng, &f, &Ty::arrow(Ty::Unit, Ty::Unit));
        let (ka, kb) = (Ty::constant("K", vec![f.clone()]), Ty::constant("K", vec![f2]));
        prop_assert!(ck.equal_types(&Ctx::empty(), &ka, &kb).is_derivable());
        let t = Tm::constant("k", vec![f]);
        prop_assert!(ck.check_term(&Ctx::empty(), &t, &ka).is_derivable());
        prop_assert!(ck.check_term(&Ctx::empty(), &t, &kb).is_derivable());
    }

    #[test]
    fn weakening_is_admissible(seed in any::<u64>(), at in 0usize..3) {
        let sig = typed_sig();
        let ck = Checker::new(&sig);
        let s = sample(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(!seed);
        let extra = simple_ty(&mut rng, 2);
        // insert a fresh variable below the last `cut` entries
        let cut = at.min(s.tys.len());
        let mut entries = s.ctx.entries().to_vec();
        entries.insert(entries.len() - cut, (Name::new("w"), extra));
        let bigger = Ctx::from_entries(entries);
        let v = ck.check_term(&bigger, &s.tm.shift_from(1, cut), &s.ty);
        prop_assert!(v.is_derivable(), "{:?}", v);
    }

    #[test]
    fn substitution_is_admissible(seed in any::<u64>()) {
        let sig = typed_sig();
        let ck = Checker::new(&sig);
        let s = sample(seed);
        let Some((_, last)) = s.ctx.last().cloned() else { return Ok(()); };
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
        let parent = s.ctx.parent().unwrap();
        let a = gen(&mut rng, &s.tys[..s.tys.len() - 1], &last, 2);
        let v = ck.check_term(&parent, &s.tm.subst(&a), &s.ty);
        prop_assert!(v.is_derivable(), "{:?}", v);
    }

    #[test]
    fn empty_signature_equality_is_decided(seed in any::<u64>()) {
        let sig = ValidatedSignature::empty();
        let ck = Checker::new(&sig);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut unit_ty = || loop {
            let t = simple_ty(&mut rng, 2);
            if !format!("{:?}", t).contains("Const") {
                return t;
            }
        };
        let ty = unit_ty();
        let g = [Ty::arrow(Ty::Unit, Ty::Unit)];
        let ctx = Ctx::from_entries(vec![(Name::new("f"), g[0].clone())]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let (x, y) = (gen(&mut rng, &g, &ty, 3), gen(&mut rng, &g, &ty, 3));
        let v = ck.equal_terms(&ctx, &x, &y, &ty);
        prop_assert!(!matches!(v, Verdict::Unknown { .. }), "{:?}", v);
    }
}

/// Removing later declarations keeps a valid signature valid.
#[test]
fn validation_is_monotone() {
    for src in [fixtures::NAT, fixtures::ID, fixtures::Z3, fixtures::STLC, fixtures::GOLDEN_PREAMBLE] {
        let file = parse_file(src).unwrap();
        let decls: Vec<_> = file
            .items
            .iter()
            .filter(|it| matches!(it.item, Item::TypeConst { .. } | Item::TermConst { .. } | Item::Axiom { .. }))
            .cloned()
            .collect();
        for n in 0..=decls.len() {
            let mut prefix = file.clone();
            prefix.items = decls[..n].to_vec();
            let v = validate_signature(&Signature::from_source(&prefix), ValidateOptions { trust_axioms: false });
            assert!(v.is_ok(), "prefix {} of a fixture: {:?}", n, v.err());
        }
    }
}
