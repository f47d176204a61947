//! Signatures: type and term constants with telescopic formats, plus oriented
//! equational axioms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::checker::{Checker, Verdict};
pub use crate::parser::AxiomEq;
use crate::parser::{Item, SourceFile};
use crate::syntax::{Ctx, Sym, Tm, Ty};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstDecl {
    pub name: Sym,
    pub tele: Ctx,
    /// Present iff this is a term constant.
    pub cod: Option<Ty>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub ctx: Ctx,
    pub eq: AxiomEq,
}

impl Axiom {
    pub fn head(&self) -> Option<&Sym> {
        match &self.eq {
            AxiomEq::Ty(Ty::Const(c, _), _) => Some(c),
            AxiomEq::Tm(Tm::Const(c, _), _, _) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigItem {
    Const(ConstDecl),
    Axiom(Axiom),
}

/// An unchecked signature: declarations in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub items: Vec<SigItem>,
}

impl Signature {
    pub fn empty() -> Signature {
        Signature::default()
    }

    pub fn from_source(file: &SourceFile) -> Signature {
        let mut items = Vec::new();
        for it in &file.items {
            match &it.item {
                Item::TypeConst { name, tele } => {
                    items.push(SigItem::Const(ConstDecl { name: name.clone(), tele: tele.clone(), cod: None }))
                }
                Item::TermConst { name, tele, cod } => items.push(SigItem::Const(ConstDecl {
                    name: name.clone(),
                    tele: tele.clone(),
                    cod: Some(cod.clone()),
                })),
                Item::Axiom { ctx, eq } => items.push(SigItem::Axiom(Axiom { ctx: ctx.clone(), eq: eq.clone() })),
                _ => {}
            }
        }
        Signature { items }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigError {
    IllFormedFormat(Sym, String),
    IllTypedAxiom(usize, String),
    /// The axiom fails the termination guard; pass `trust_axioms` to accept it.
    UnguardedAxiom(usize, String),
    DuplicateConstant(Sym),
}

impl fmt::Display for SigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigError::IllFormedFormat(c, r) => write!(f, "ill-formed format for {}: {}", c, r),
            SigError::IllTypedAxiom(i, r) => write!(f, "axiom #{} is ill-typed: {}", i, r),
            SigError::UnguardedAxiom(i, r) => {
                write!(f, "axiom #{} is not guarded ({}); use --trust-axioms to accept it", i, r)
            }
            SigError::DuplicateConstant(c) => write!(f, "duplicate constant {}", c),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidateOptions {
    pub trust_axioms: bool,
}

/// A signature that passed [`validate_signature`]. Immutable.
#[derive(Clone, Debug)]
pub struct ValidatedSignature {
    consts: Vec<ConstDecl>,
    index: BTreeMap<Sym, usize>,
    axioms: Vec<Axiom>,
    by_head: BTreeMap<Sym, Vec<usize>>,
    trusted: BTreeSet<usize>,
}

impl ValidatedSignature {
    fn new() -> ValidatedSignature {
        ValidatedSignature {
            consts: Vec::new(),
            index: BTreeMap::new(),
            axioms: Vec::new(),
            by_head: BTreeMap::new(),
            trusted: BTreeSet::new(),
        }
    }

    /// The empty signature Φ.
    pub fn empty() -> ValidatedSignature {
        ValidatedSignature::new()
    }

    pub fn get(&self, c: &Sym) -> Option<&ConstDecl> {
        self.index.get(c).map(|&i| &self.consts[i])
    }

    pub fn type_const(&self, c: &Sym) -> Option<&ConstDecl> {
        self.get(c).filter(|d| d.cod.is_none())
    }

    pub fn term_const(&self, c: &Sym) -> Option<&ConstDecl> {
        self.get(c).filter(|d| d.cod.is_some())
    }

    pub fn consts(&self) -> &[ConstDecl] {
        &self.consts
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn axioms_for(&self, head: &Sym) -> &[usize] {
        self.by_head.get(head).map_or(&[], |v| v.as_slice())
    }

    pub fn is_trusted(&self, axiom: usize) -> bool {
        self.trusted.contains(&axiom)
    }

    /// Whether any axiom was accepted only through `trust_axioms`; equality
    /// is then fuel-bounded.
    pub fn has_trusted_axioms(&self) -> bool {
        !self.trusted.is_empty()
    }

    /// Precedence used by the axiom guard: later declarations are bigger.
    fn precedence(&self, c: &Sym) -> usize {
        self.index.get(c).copied().unwrap_or(0)
    }
}

fn verdict_reason(v: Verdict) -> Option<String> {
    match v {
        Verdict::Derivable => None,
        Verdict::NotDerivable { reason, subgoal } => Some(format!("{} ({})", reason, subgoal)),
        Verdict::Unknown { reason } => Some(reason),
    }
}

pub fn validate_signature(sig: &Signature, opts: ValidateOptions) -> Result<ValidatedSignature, SigError> {
    let mut out = ValidatedSignature::new();
    let mut axiom_no = 0usize;
    for item in &sig.items {
        match item {
            SigItem::Const(d) => {
                if out.index.contains_key(&d.name) {
                    return Err(SigError::DuplicateConstant(d.name.clone()));
                }
                let ck = Checker::new(&out);
                if let Some(r) = verdict_reason(ck.check_ctx(&d.tele)) {
                    return Err(SigError::IllFormedFormat(d.name.clone(), r));
                }
                if let Some(cod) = &d.cod {
                    if let Some(r) = verdict_reason(ck.check_type(&d.tele, cod)) {
                        return Err(SigError::IllFormedFormat(d.name.clone(), r));
                    }
                }
                out.index.insert(d.name.clone(), out.consts.len());
                out.consts.push(d.clone());
            }
            SigItem::Axiom(ax) => {
                let i = axiom_no;
                axiom_no += 1;
                let ck = Checker::new(&out);
                let typed = match &ax.eq {
                    AxiomEq::Ty(a, b) => verdict_reason(ck.check_type(&ax.ctx, a))
                        .or_else(|| verdict_reason(ck.check_type(&ax.ctx, b))),
                    AxiomEq::Tm(a, b, t) => verdict_reason(ck.check_term(&ax.ctx, a, t))
                        .or_else(|| verdict_reason(ck.check_term(&ax.ctx, b, t))),
                };
                if let Some(r) = typed {
                    return Err(SigError::IllTypedAxiom(i, r));
                }
                let head = match ax.head() {
                    Some(h) => h.clone(),
                    None => return Err(SigError::IllTypedAxiom(i, "left-hand side must be a constant application".into())),
                };
                if let Err(r) = check_pattern(ax) {
                    return Err(SigError::IllTypedAxiom(i, r));
                }
                if let Err(r) = guard(&out, ax) {
                    if !opts.trust_axioms {
                        return Err(SigError::UnguardedAxiom(i, r));
                    }
                    out.trusted.insert(out.axioms.len());
                }
                out.by_head.entry(head).or_default().push(out.axioms.len());
                out.axioms.push(ax.clone());
            }
        }
    }
    Ok(out)
}

/// Left-hand side arguments must be built from variables, `star`, pairs and
/// constant applications, so that matching is syntactic.
fn check_pattern(ax: &Axiom) -> Result<(), String> {
    fn pat(t: &Tm) -> bool {
        match t {
            Tm::Var(_) | Tm::Star => true,
            Tm::Pair(a, b) => pat(a) && pat(b),
            Tm::Const(_, args) => args.iter().all(pat),
            _ => false,
        }
    }
    let args = match &ax.eq {
        AxiomEq::Ty(Ty::Const(_, args), _) | AxiomEq::Tm(Tm::Const(_, args), _, _) => args,
        _ => return Err("left-hand side must be a constant application".into()),
    };
    if args.iter().all(pat) {
        Ok(())
    } else {
        Err("left-hand side arguments must be patterns (variables, star, pairs, constants)".into())
    }
}

/// First-order view of a tree for the path ordering. Non-constant syntax nodes
/// and bound variables get heads below every constant.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Fo {
    Var(usize),
    Node(Head, Vec<Fo>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Head {
    Syn(u8),
    Const(usize),
}

fn head_cmp(a: Head, b: Head) -> Option<Ordering> {
    match (a, b) {
        (Head::Const(x), Head::Const(y)) => Some(x.cmp(&y)),
        (Head::Const(_), Head::Syn(_)) => Some(Ordering::Greater),
        (Head::Syn(_), Head::Const(_)) => Some(Ordering::Less),
        (Head::Syn(x), Head::Syn(y)) if x == y => Some(Ordering::Equal),
        _ => None,
    }
}

fn fo_tm(sig: &ValidatedSignature, t: &Tm, depth: usize) -> Fo {
    match t {
        Tm::Var(v) if v.index < depth => Fo::Node(Head::Syn(0), Vec::new()),
        Tm::Var(v) => Fo::Var(v.index - depth),
        Tm::Star => Fo::Node(Head::Syn(1), Vec::new()),
        Tm::Lam(_, ann, b) => {
            let mut kids = Vec::new();
            if let Some(a) = ann {
                kids.push(fo_ty(sig, a, depth));
            }
            kids.push(fo_tm(sig, b, depth + 1));
            Fo::Node(Head::Syn(2), kids)
        }
        Tm::App(f, a) => Fo::Node(Head::Syn(3), alloc::vec![fo_tm(sig, f, depth), fo_tm(sig, a, depth)]),
        Tm::Pair(a, b) => Fo::Node(Head::Syn(4), alloc::vec![fo_tm(sig, a, depth), fo_tm(sig, b, depth)]),
        Tm::RSig { motive, body, scrut, .. } => Fo::Node(
            Head::Syn(5),
            alloc::vec![fo_ty(sig, motive, depth + 1), fo_tm(sig, body, depth + 2), fo_tm(sig, scrut, depth)],
        ),
        Tm::Const(c, args) => {
            Fo::Node(Head::Const(sig.precedence(c)), args.iter().map(|a| fo_tm(sig, a, depth)).collect())
        }
    }
}

fn fo_ty(sig: &ValidatedSignature, t: &Ty, depth: usize) -> Fo {
    match t {
        Ty::Unit => Fo::Node(Head::Syn(6), Vec::new()),
        Ty::Pi(_, a, b) => Fo::Node(Head::Syn(7), alloc::vec![fo_ty(sig, a, depth), fo_ty(sig, b, depth + 1)]),
        Ty::Sigma(_, a, b) => Fo::Node(Head::Syn(8), alloc::vec![fo_ty(sig, a, depth), fo_ty(sig, b, depth + 1)]),
        Ty::Const(c, args) => {
            Fo::Node(Head::Const(sig.precedence(c)), args.iter().map(|a| fo_tm(sig, a, depth)).collect())
        }
    }
}

fn occurs(x: usize, t: &Fo) -> bool {
    match t {
        Fo::Var(y) => x == *y,
        Fo::Node(_, kids) => kids.iter().any(|k| occurs(x, k)),
    }
}

/// Lexicographic path ordering `s > t`.
fn lpo_gt(s: &Fo, t: &Fo) -> bool {
    match (s, t) {
        (Fo::Var(_), _) => false,
        (Fo::Node(..), Fo::Var(x)) => occurs(*x, s),
        (Fo::Node(f, ss), Fo::Node(g, ts)) => {
            if ss.iter().any(|si| si == t || lpo_gt(si, t)) {
                return true;
            }
            match head_cmp(*f, *g) {
                Some(Ordering::Greater) => ts.iter().all(|tj| lpo_gt(s, tj)),
                Some(Ordering::Equal) => {
                    ts.iter().all(|tj| lpo_gt(s, tj)) && {
                        let mut r = false;
                        for (a, b) in ss.iter().zip(ts.iter()) {
                            if a == b {
                                continue;
                            }
                            r = lpo_gt(a, b);
                            break;
                        }
                        r || ss.len() > ts.len() && ss.iter().zip(ts.iter()).all(|(a, b)| a == b)
                    }
                }
                _ => false,
            }
        }
    }
}

/// The termination guard: fv(rhs) ⊆ fv(lhs), rhs no bigger than lhs in the
/// path ordering, and a type axiom may not change the head constant.
fn guard(sig: &ValidatedSignature, ax: &Axiom) -> Result<(), String> {
    let (l, r, lfv, rfv) = match &ax.eq {
        AxiomEq::Ty(a, b) => {
            if let (Ty::Const(c, _), Ty::Const(d, _)) = (a, b) {
                if c != d {
                    return Err(format!("type axiom relates distinct head constants {} and {}", c, d));
                }
            }
            (fo_ty(sig, a, 0), fo_ty(sig, b, 0), a.free_vars(), b.free_vars())
        }
        AxiomEq::Tm(a, b, _) => (fo_tm(sig, a, 0), fo_tm(sig, b, 0), a.free_vars(), b.free_vars()),
    };
    if !rfv.is_subset(&lfv) {
        return Err("right-hand side mentions variables absent from the left".into());
    }
    if l == r {
        return Err("trivial axiom".into());
    }
    if !lpo_gt(&l, &r) {
        return Err("right-hand side is not smaller than the left".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_file;

    fn validate(src: &str, trust: bool) -> Result<ValidatedSignature, SigError> {
        let f = parse_file(src).unwrap();
        validate_signature(&Signature::from_source(&f), ValidateOptions { trust_axioms: trust })
    }

    #[test]
    fn empty_is_valid() {
        assert!(validate_signature(&Signature::empty(), ValidateOptions::default()).is_ok());
    }

    #[test]
    fn undeclared_codomain() {
        // The parser rejects unknown names, so build the signature directly.
        let sig = Signature {
            items: alloc::vec![SigItem::Const(ConstDecl {
                name: Sym::new("zero"),
                tele: Ctx::empty(),
                cod: Some(Ty::constant("N", Vec::new())),
            })],
        };
        assert!(matches!(
            validate_signature(&sig, ValidateOptions::default()),
            Err(SigError::IllFormedFormat(..))
        ));
    }

    #[test]
    fn unguarded_needs_trust() {
        let src = "typeconst N ()\ntermconst f (x:N[]) : N[]\naxiom (x:N[]) |- f[x] = f[f[x]] : N[]";
        assert!(matches!(validate(src, false), Err(SigError::UnguardedAxiom(0, _))));
        let v = validate(src, true).unwrap();
        assert!(v.has_trusted_axioms());
    }

    #[test]
    fn rhs_variables_must_occur_left() {
        let src = "typeconst N ()\ntermconst c () : N[]\naxiom (x:N[]) |- c[] = x : N[]";
        assert!(matches!(validate(src, false), Err(SigError::UnguardedAxiom(..))));
    }
}
