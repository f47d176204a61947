//! Untyped syntax trees in de Bruijn form.
//!
//! Variables carry a display name for printing, but equality only ever looks
//! at indices, so the derived `PartialEq` on every tree is α-equivalence.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

/// Display name of a variable or binder. Never affects equality.
#[derive(Clone)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Name {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Default for Name {
    fn default() -> Name {
        Name::new("x")
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PartialEq for Name {
    fn eq(&self, _: &Name) -> bool {
        true
    }
}

impl Eq for Name {}

impl PartialOrd for Name {
    fn partial_cmp(&self, other: &Name) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Name {
    fn cmp(&self, _: &Name) -> Ordering {
        Ordering::Equal
    }
}

impl Hash for Name {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

/// A type- or term-constant symbol.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(s: &str) -> Sym {
        Sym(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A variable occurrence: de Bruijn index plus display name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub index: usize,
    pub name: Name,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    Unit,
    Pi(Name, Arc<Ty>, Arc<Ty>),
    Sigma(Name, Arc<Ty>, Arc<Ty>),
    Const(Sym, Vec<Tm>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tm {
    Var(Var),
    Star,
    /// `λx.b`, optionally annotated with the domain.
    Lam(Name, Option<Arc<Ty>>, Arc<Tm>),
    App(Arc<Tm>, Arc<Tm>),
    Pair(Arc<Tm>, Arc<Tm>),
    /// `R^Σ_{[z]C}([x,y]g, p)`; `motive` binds z, `body` binds x then y.
    RSig {
        z: Name,
        motive: Arc<Ty>,
        x: Name,
        y: Name,
        body: Arc<Tm>,
        scrut: Arc<Tm>,
    },
    Const(Sym, Vec<Tm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstError {
    UnboundVariable(usize),
    DomainMismatch,
}

impl fmt::Display for SubstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstError::UnboundVariable(i) => write!(f, "unbound variable #{}", i),
            SubstError::DomainMismatch => f.write_str("context morphism domain mismatch"),
        }
    }
}

/// What to do with a free variable during a traversal. `free` is the index
/// relative to the outside of the traversal, `depth` the number of binders
/// crossed so far.
trait VarMap {
    fn var(&self, v: &Var, free: usize, depth: usize) -> Result<Tm, SubstError>;
}

struct Shift {
    by: usize,
    cutoff: usize,
}

impl VarMap for Shift {
    fn var(&self, v: &Var, free: usize, depth: usize) -> Result<Tm, SubstError> {
        let idx = if free >= self.cutoff { free + self.by } else { free };
        Ok(Tm::Var(Var { index: idx + depth, name: v.name.clone() }))
    }
}

struct Unshift {
    by: usize,
}

impl VarMap for Unshift {
    fn var(&self, v: &Var, free: usize, depth: usize) -> Result<Tm, SubstError> {
        if free < self.by {
            return Err(SubstError::UnboundVariable(free));
        }
        Ok(Tm::Var(Var { index: free - self.by + depth, name: v.name.clone() }))
    }
}

/// Replace index `at` by `with` (a term over the context with `at` removed),
/// lowering the variables above it.
struct SubstAt<'a> {
    at: usize,
    with: &'a Tm,
}

impl VarMap for SubstAt<'_> {
    fn var(&self, v: &Var, free: usize, depth: usize) -> Result<Tm, SubstError> {
        match free.cmp(&self.at) {
            Ordering::Less => Ok(Tm::Var(Var { index: free + depth, name: v.name.clone() })),
            Ordering::Equal => Ok(self.with.shift(self.at + depth)),
            Ordering::Greater => Ok(Tm::Var(Var { index: free - 1 + depth, name: v.name.clone() })),
        }
    }
}

/// Simultaneous substitution: free index i becomes `env[i]`.
struct Instantiate<'a> {
    env: &'a [Tm],
}

impl VarMap for Instantiate<'_> {
    fn var(&self, _: &Var, free: usize, depth: usize) -> Result<Tm, SubstError> {
        match self.env.get(free) {
            Some(t) => Ok(t.shift(depth)),
            None => Err(SubstError::UnboundVariable(free)),
        }
    }
}

impl Ty {
    fn traverse(&self, m: &dyn VarMap, depth: usize) -> Result<Ty, SubstError> {
        Ok(match self {
            Ty::Unit => Ty::Unit,
            Ty::Pi(n, a, b) => Ty::Pi(
                n.clone(),
                Arc::new(a.traverse(m, depth)?),
                Arc::new(b.traverse(m, depth + 1)?),
            ),
            Ty::Sigma(n, a, b) => Ty::Sigma(
                n.clone(),
                Arc::new(a.traverse(m, depth)?),
                Arc::new(b.traverse(m, depth + 1)?),
            ),
            Ty::Const(c, args) => Ty::Const(
                c.clone(),
                args.iter().map(|t| t.traverse(m, depth)).collect::<Result<_, _>>()?,
            ),
        })
    }

    pub fn contract_pair_elims(&self) -> Ty {
        match self {
            Ty::Unit => Ty::Unit,
            Ty::Pi(n, a, b) => Ty::Pi(n.clone(), Arc::new(a.contract_pair_elims()), Arc::new(b.contract_pair_elims())),
            Ty::Sigma(n, a, b) => {
                Ty::Sigma(n.clone(), Arc::new(a.contract_pair_elims()), Arc::new(b.contract_pair_elims()))
            }
            Ty::Const(c, args) => Ty::Const(c.clone(), args.iter().map(Tm::contract_pair_elims).collect()),
        }
    }

    /// Weaken by `by` fresh variables inserted at the outermost end.
    pub fn shift(&self, by: usize) -> Ty {
        self.shift_from(by, 0)
    }

    /// Weaken by `by` variables inserted below index `cutoff`.
    pub fn shift_from(&self, by: usize, cutoff: usize) -> Ty {
        if by == 0 {
            return self.clone();
        }
        self.traverse(&Shift { by, cutoff }, 0).expect("shift is total")
    }

    /// Strengthen by dropping the `by` innermost variables, which must not occur.
    pub fn unshift(&self, by: usize) -> Result<Ty, SubstError> {
        self.traverse(&Unshift { by }, 0)
    }

    /// `self[a/x]` where x is the innermost variable.
    pub fn subst(&self, a: &Tm) -> Ty {
        self.subst_at(0, a)
    }

    pub fn subst_at(&self, at: usize, a: &Tm) -> Ty {
        self.traverse(&SubstAt { at, with: a }, 0).expect("single substitution is total")
    }

    /// Simultaneous substitution of `env[i]` for free index i.
    pub fn instantiate(&self, env: &[Tm]) -> Result<Ty, SubstError> {
        self.traverse(&Instantiate { env }, 0)
    }

    /// Generalized substitution along a context morphism into `f`'s codomain.
    pub fn gen_subst(&self, f: &CtxMor) -> Result<Ty, SubstError> {
        self.instantiate(&f.env())
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_fv(0, &mut out);
        out
    }

    fn collect_fv(&self, depth: usize, out: &mut BTreeSet<usize>) {
        match self {
            Ty::Unit => {}
            Ty::Pi(_, a, b) | Ty::Sigma(_, a, b) => {
                a.collect_fv(depth, out);
                b.collect_fv(depth + 1, out);
            }
            Ty::Const(_, args) => args.iter().for_each(|t| t.collect_fv(depth, out)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Ty::Unit => 1,
            Ty::Pi(_, a, b) | Ty::Sigma(_, a, b) => 1 + a.size() + b.size(),
            Ty::Const(_, args) => 1 + args.iter().map(Tm::size).sum::<usize>(),
        }
    }

    pub fn pi(name: &str, a: Ty, b: Ty) -> Ty {
        Ty::Pi(Name::new(name), Arc::new(a), Arc::new(b))
    }

    pub fn sigma(name: &str, a: Ty, b: Ty) -> Ty {
        Ty::Sigma(Name::new(name), Arc::new(a), Arc::new(b))
    }

    /// Non-dependent function type; `b` lives over the same context as `a`.
    pub fn arrow(a: Ty, b: Ty) -> Ty {
        Ty::pi("_", a, b.shift(1))
    }

    pub fn product(a: Ty, b: Ty) -> Ty {
        Ty::sigma("_", a, b.shift(1))
    }

    pub fn constant(name: &str, args: Vec<Tm>) -> Ty {
        Ty::Const(Sym::new(name), args)
    }
}

impl Tm {
    fn traverse(&self, m: &dyn VarMap, depth: usize) -> Result<Tm, SubstError> {
        Ok(match self {
            Tm::Var(v) => {
                if v.index < depth {
                    Tm::Var(v.clone())
                } else {
                    m.var(v, v.index - depth, depth)?
                }
            }
            Tm::Star => Tm::Star,
            Tm::Lam(n, ann, b) => Tm::Lam(
                n.clone(),
                match ann {
                    Some(a) => Some(Arc::new(a.traverse(m, depth)?)),
                    None => None,
                },
                Arc::new(b.traverse(m, depth + 1)?),
            ),
            Tm::App(f, a) => Tm::App(Arc::new(f.traverse(m, depth)?), Arc::new(a.traverse(m, depth)?)),
            Tm::Pair(a, b) => Tm::Pair(Arc::new(a.traverse(m, depth)?), Arc::new(b.traverse(m, depth)?)),
            Tm::RSig { z, motive, x, y, body, scrut } => Tm::RSig {
                z: z.clone(),
                motive: Arc::new(motive.traverse(m, depth + 1)?),
                x: x.clone(),
                y: y.clone(),
                body: Arc::new(body.traverse(m, depth + 2)?),
                scrut: Arc::new(scrut.traverse(m, depth)?),
            },
            Tm::Const(c, args) => Tm::Const(
                c.clone(),
                args.iter().map(|t| t.traverse(m, depth)).collect::<Result<_, _>>()?,
            ),
        })
    }

    pub fn shift(&self, by: usize) -> Tm {
        self.shift_from(by, 0)
    }

    pub fn shift_from(&self, by: usize, cutoff: usize) -> Tm {
        if by == 0 {
            return self.clone();
        }
        self.traverse(&Shift { by, cutoff }, 0).expect("shift is total")
    }

    pub fn unshift(&self, by: usize) -> Result<Tm, SubstError> {
        self.traverse(&Unshift { by }, 0)
    }

    /// `self[a/x]` where x is the innermost variable.
    pub fn subst(&self, a: &Tm) -> Tm {
        self.subst_at(0, a)
    }

    pub fn subst_at(&self, at: usize, a: &Tm) -> Tm {
        self.traverse(&SubstAt { at, with: a }, 0).expect("single substitution is total")
    }

    pub fn instantiate(&self, env: &[Tm]) -> Result<Tm, SubstError> {
        self.traverse(&Instantiate { env }, 0)
    }

    pub fn gen_subst(&self, f: &CtxMor) -> Result<Tm, SubstError> {
        self.instantiate(&f.env())
    }

    /// Contracts every Σ-eliminator whose scrutinee is a literal pair.
    /// Substituting a pair for a variable creates such redexes.
    pub fn contract_pair_elims(&self) -> Tm {
        match self {
            Tm::Var(_) | Tm::Star => self.clone(),
            Tm::Lam(n, ann, b) => Tm::Lam(
                n.clone(),
                ann.as_ref().map(|a| Arc::new(a.contract_pair_elims())),
                Arc::new(b.contract_pair_elims()),
            ),
            Tm::App(f, a) => Tm::app(f.contract_pair_elims(), a.contract_pair_elims()),
            Tm::Pair(a, b) => Tm::pair(a.contract_pair_elims(), b.contract_pair_elims()),
            Tm::RSig { z, motive, x, y, body, scrut } => {
                let body = body.contract_pair_elims();
                match scrut.contract_pair_elims() {
                    Tm::Pair(a, b) => body.subst(&b.shift(1)).subst(&a).contract_pair_elims(),
                    scrut => Tm::RSig {
                        z: z.clone(),
                        motive: Arc::new(motive.contract_pair_elims()),
                        x: x.clone(),
                        y: y.clone(),
                        body: Arc::new(body),
                        scrut: Arc::new(scrut),
                    },
                }
            }
            Tm::Const(c, args) => Tm::Const(c.clone(), args.iter().map(Tm::contract_pair_elims).collect()),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_fv(0, &mut out);
        out
    }

    fn collect_fv(&self, depth: usize, out: &mut BTreeSet<usize>) {
        match self {
            Tm::Var(v) => {
                if v.index >= depth {
                    out.insert(v.index - depth);
                }
            }
            Tm::Star => {}
            Tm::Lam(_, ann, b) => {
                if let Some(a) = ann {
                    a.collect_fv(depth, out);
                }
                b.collect_fv(depth + 1, out);
            }
            Tm::App(f, a) | Tm::Pair(f, a) => {
                f.collect_fv(depth, out);
                a.collect_fv(depth, out);
            }
            Tm::RSig { motive, body, scrut, .. } => {
                motive.collect_fv(depth + 1, out);
                body.collect_fv(depth + 2, out);
                scrut.collect_fv(depth, out);
            }
            Tm::Const(_, args) => args.iter().for_each(|t| t.collect_fv(depth, out)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Tm::Var(_) | Tm::Star => 1,
            Tm::Lam(_, ann, b) => 1 + ann.as_ref().map_or(0, |a| a.size()) + b.size(),
            Tm::App(f, a) | Tm::Pair(f, a) => 1 + f.size() + a.size(),
            Tm::RSig { motive, body, scrut, .. } => 1 + motive.size() + body.size() + scrut.size(),
            Tm::Const(_, args) => 1 + args.iter().map(Tm::size).sum::<usize>(),
        }
    }

    pub fn var(index: usize, name: &str) -> Tm {
        Tm::Var(Var { index, name: Name::new(name) })
    }

    pub fn lam(name: &str, body: Tm) -> Tm {
        Tm::Lam(Name::new(name), None, Arc::new(body))
    }

    pub fn lam_ann(name: &str, dom: Ty, body: Tm) -> Tm {
        Tm::Lam(Name::new(name), Some(Arc::new(dom)), Arc::new(body))
    }

    pub fn app(f: Tm, a: Tm) -> Tm {
        Tm::App(Arc::new(f), Arc::new(a))
    }

    pub fn pair(a: Tm, b: Tm) -> Tm {
        Tm::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn rsig(motive: Ty, body: Tm, scrut: Tm) -> Tm {
        Tm::RSig {
            z: Name::new("z"),
            motive: Arc::new(motive),
            x: Name::new("x"),
            y: Name::new("y"),
            body: Arc::new(body),
            scrut: Arc::new(scrut),
        }
    }

    pub fn constant(name: &str, args: Vec<Tm>) -> Tm {
        Tm::Const(Sym::new(name), args)
    }

    /// `π₁(p) ≝ R^Σ_{[z]A}([x,y]x, p)`; `a` over the ambient context, `b` over it extended by x.
    pub fn proj1(p: Tm, a: &Ty, _b: &Ty) -> Tm {
        Tm::rsig(a.shift(1), Tm::var(1, "x"), p)
    }

    /// `π₂(p) ≝ R^Σ_{[z]B[π₁(z)/x]}([x,y]y, p)`.
    pub fn proj2(p: Tm, a: &Ty, b: &Ty) -> Tm {
        let z = Tm::var(0, "z");
        let fst_z = Tm::proj1(z, &a.shift(1), &b.shift_from(1, 1));
        let motive = b.shift_from(1, 1).subst(&fst_z);
        Tm::rsig(motive, Tm::var(0, "y"), p)
    }
}

/// A pre-context: entry i's type lives over entries `0..i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ctx {
    entries: Vec<(Name, Ty)>,
}

impl Ctx {
    pub fn empty() -> Ctx {
        Ctx { entries: Vec::new() }
    }

    /// Extend with a fresh variable; rejects a name already bound here.
    pub fn extend(&self, name: &str, ty: Ty) -> Result<Ctx, String> {
        if self.entries.iter().any(|(n, _)| n.as_str() == name) {
            return Err(alloc::format!("variable {} already bound", name));
        }
        Ok(self.push(Name::new(name), ty))
    }

    /// Extend without the freshness check; the checker rejects duplicates.
    pub fn push(&self, name: Name, ty: Ty) -> Ctx {
        let mut entries = self.entries.clone();
        entries.push((name, ty));
        Ctx { entries }
    }

    pub fn from_entries(entries: Vec<(Name, Ty)>) -> Ctx {
        Ctx { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Name, Ty)] {
        &self.entries
    }

    /// Type of de Bruijn index `i`, weakened to live over the whole context.
    pub fn lookup(&self, i: usize) -> Option<Ty> {
        let n = self.entries.len();
        if i >= n {
            return None;
        }
        Some(self.entries[n - 1 - i].1.shift(i + 1))
    }

    pub fn name_of(&self, i: usize) -> Option<&Name> {
        let n = self.entries.len();
        if i >= n {
            None
        } else {
            Some(&self.entries[n - 1 - i].0)
        }
    }

    pub fn prefix(&self, len: usize) -> Ctx {
        Ctx { entries: self.entries[..len].to_vec() }
    }

    /// Drop the innermost entry.
    pub fn parent(&self) -> Option<Ctx> {
        if self.entries.is_empty() {
            None
        } else {
            Some(self.prefix(self.entries.len() - 1))
        }
    }

    pub fn last(&self) -> Option<&(Name, Ty)> {
        self.entries.last()
    }

    /// Append a telescope whose first type lives over `self`.
    pub fn append(&self, tail: &[(Name, Ty)]) -> Ctx {
        let mut entries = self.entries.clone();
        entries.extend(tail.iter().cloned());
        Ctx { entries }
    }

    /// Display names that do not clash with anything bound here.
    pub fn fresh_name(&self, base: &str) -> Name {
        if !self.entries.iter().any(|(n, _)| n.as_str() == base) {
            return Name::new(base);
        }
        let mut i = self.entries.len();
        loop {
            let cand = alloc::format!("{}{}", base, i);
            if !self.entries.iter().any(|(n, _)| n.as_str() == cand) {
                return Name::new(&cand);
            }
            i += 1;
        }
    }
}

/// Generalized substitution on a telescope `tail` living over `f`'s codomain.
pub fn gen_subst_tail(tail: &[(Name, Ty)], f: &CtxMor) -> Result<Vec<(Name, Ty)>, SubstError> {
    let mut env = f.env();
    let mut out = Vec::with_capacity(tail.len());
    for (n, ty) in tail {
        out.push((n.clone(), ty.instantiate(&env)?));
        let mut next = vec![Tm::var(0, n.as_str())];
        next.extend(env.iter().map(|t| t.shift(1)));
        env = next;
    }
    Ok(out)
}

/// A context morphism `dom → cod`: component i is the image of cod's variable i
/// (counted from the outermost).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CtxMor {
    pub dom: Ctx,
    pub cod: Ctx,
    pub comps: Vec<Tm>,
}

impl CtxMor {
    pub fn new(dom: Ctx, cod: Ctx, comps: Vec<Tm>) -> Result<CtxMor, SubstError> {
        if comps.len() != cod.len() {
            return Err(SubstError::DomainMismatch);
        }
        Ok(CtxMor { dom, cod, comps })
    }

    /// Substitution environment indexed by de Bruijn index of the codomain.
    pub fn env(&self) -> Vec<Tm> {
        self.comps.iter().rev().cloned().collect()
    }

    /// The empty morphism `Γ → ⋄`.
    pub fn bang(dom: &Ctx) -> CtxMor {
        CtxMor { dom: dom.clone(), cod: Ctx::empty(), comps: Vec::new() }
    }
}

/// `id_Γ ≝ (x₁, …, x_n)`.
pub fn id_cm(ctx: &Ctx) -> CtxMor {
    let n = ctx.len();
    let comps = (0..n)
        .map(|k| Tm::Var(Var { index: n - 1 - k, name: ctx.entries[k].0.clone() }))
        .collect();
    CtxMor { dom: ctx.clone(), cod: ctx.clone(), comps }
}

/// `g ∘ f ≝ (g₁[f], …, g_n[f])`.
pub fn compose_cm(g: &CtxMor, f: &CtxMor) -> Result<CtxMor, SubstError> {
    if f.cod != g.dom {
        return Err(SubstError::DomainMismatch);
    }
    let env = f.env();
    let comps = g.comps.iter().map(|t| t.instantiate(&env)).collect::<Result<_, _>>()?;
    Ok(CtxMor { dom: f.dom.clone(), cod: g.cod.clone(), comps })
}

/// Capture-free `body[a/x]` for the innermost variable x of body's context.
pub fn subst(body: &Tm, a: &Tm) -> Tm {
    body.subst(a)
}

pub fn alpha_eq_tm(a: &Tm, b: &Tm) -> bool {
    a == b
}

pub fn alpha_eq_ty(a: &Ty, b: &Ty) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_do_not_affect_equality() {
        assert_eq!(Tm::lam("x", Tm::var(0, "x")), Tm::lam("y", Tm::var(0, "y")));
        let k1 = Tm::lam("x", Tm::lam("y", Tm::var(1, "x")));
        let k2 = Tm::lam("y", Tm::lam("x", Tm::var(0, "x")));
        assert_ne!(k1, k2);
        assert_eq!(Ty::pi("x", Ty::Unit, Ty::Unit), Ty::pi("y", Ty::Unit, Ty::Unit));
    }

    #[test]
    fn substitution_under_binder_shifts() {
        // (λy. x)[y/x] over context (y0, x): x is index 0, the outer y index 1.
        let body = Tm::lam("y", Tm::var(1, "x"));
        let out = body.subst(&Tm::var(0, "y"));
        assert_eq!(out, Tm::lam("y", Tm::var(1, "y")));
    }

    #[test]
    fn identity_morphism_is_neutral() {
        let ctx = Ctx::empty().extend("x", Ty::Unit).unwrap().extend("y", Ty::Unit).unwrap();
        let id = id_cm(&ctx);
        assert_eq!(id.comps, vec![Tm::var(1, "x"), Tm::var(0, "y")]);
        let t = Tm::pair(Tm::var(0, "y"), Tm::var(1, "x"));
        assert_eq!(t.gen_subst(&id).unwrap(), t);
        assert_eq!(compose_cm(&id, &id).unwrap(), id);
    }

    #[test]
    fn gen_subst_reports_unbound() {
        let f = CtxMor::bang(&Ctx::empty());
        assert_eq!(Tm::var(0, "x").gen_subst(&f), Err(SubstError::UnboundVariable(0)));
    }
}
