//! The syntactic model: contexts, context morphisms, types and terms, with
//! equality decided by the checker. Every constructed type and term is kept
//! in normal form, so structurally equal values are the common case.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checker::{CheckError, Checker, Verdict};
use crate::cwf::{MResult, Model, ModelError, Sampler, Seed};
use crate::print::{print_ctx, print_ctx_mor, print_tm_in, print_ty_in};
use crate::signature::ValidatedSignature;
use crate::syntax::{compose_cm, id_cm, Ctx, CtxMor, Name, Sym, Tm, Ty, Var};

/// Γ ⊢ A type
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TyIn {
    pub ctx: Ctx,
    pub ty: Ty,
}

/// Γ ⊢ a : A
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TmIn {
    pub ctx: Ctx,
    pub tm: Tm,
    pub ty: Ty,
}

impl fmt::Debug for TyIn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", print_ctx(&self.ctx), print_ty_in(&self.ctx, &self.ty))
    }
}

impl fmt::Debug for TmIn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} |- {} : {}",
            print_ctx(&self.ctx),
            print_tm_in(&self.ctx, &self.tm),
            print_ty_in(&self.ctx, &self.ty)
        )
    }
}

/// Morphisms print as `Δ |- (t₁, …) : Γ`.
#[derive(Clone, PartialEq, Eq)]
pub struct ShowMor<'a>(pub &'a CtxMor);

impl fmt::Display for ShowMor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ctx_mor(self.0))
    }
}

pub struct TermModel<'s> {
    ck: Checker<'s>,
}

fn from_check(e: CheckError) -> ModelError {
    match e {
        CheckError::Type(t) => ModelError::Mismatch(alloc::format!("{}", t)),
        CheckError::OutOfFuel => ModelError::Undecided("axiom rewriting fuel exhausted".into()),
    }
}

fn from_verdict(v: Verdict) -> MResult<()> {
    match v {
        Verdict::Derivable => Ok(()),
        Verdict::NotDerivable { reason, subgoal } => Err(ModelError::Mismatch(alloc::format!("{} in {}", reason, subgoal))),
        Verdict::Unknown { reason } => Err(ModelError::Undecided(reason)),
    }
}

impl<'s> TermModel<'s> {
    pub fn new(sig: &'s ValidatedSignature) -> Self {
        TermModel { ck: Checker::new(sig) }
    }

    pub fn with_checker(ck: Checker<'s>) -> Self {
        TermModel { ck }
    }

    pub fn checker(&self) -> &Checker<'s> {
        &self.ck
    }

    pub fn ty(&self, ctx: &Ctx, ty: &Ty) -> MResult<TyIn> {
        let ty = ty.contract_pair_elims();
        Ok(TyIn { ctx: ctx.clone(), ty: self.ck.normalize_type(ctx, &ty).map_err(from_check)? })
    }

    pub fn tm(&self, ctx: &Ctx, tm: &Tm, ty: &Ty) -> MResult<TmIn> {
        let (tm, ty) = (&tm.contract_pair_elims(), &ty.contract_pair_elims());
        let ty = self.ck.normalize_type(ctx, ty).map_err(from_check)?;
        let tm = self.ck.normalize_term(ctx, tm, &ty).map_err(from_check)?;
        Ok(TmIn { ctx: ctx.clone(), tm, ty })
    }

    /// A checked context morphism.
    pub fn mor(&self, dom: &Ctx, cod: &Ctx, comps: Vec<Tm>) -> MResult<CtxMor> {
        let comps: Vec<Tm> = comps.iter().map(Tm::contract_pair_elims).collect();
        from_verdict(self.ck.check_ctx_morphism(dom, &comps, cod))?;
        // normalize componentwise at the substituted codomain types
        let mut out: Vec<Tm> = Vec::with_capacity(comps.len());
        for (i, t) in comps.iter().enumerate() {
            let env: Vec<Tm> = out.iter().rev().cloned().collect();
            let ty = cod.entries()[i].1.instantiate(&env).map_err(|e| ModelError::Mismatch(alloc::format!("{}", e)))?;
            out.push(self.ck.normalize_term(dom, t, &ty).map_err(from_check)?);
        }
        Ok(CtxMor { dom: dom.clone(), cod: cod.clone(), comps: out })
    }

    fn same_ctx(&self, a: &Ctx, b: &Ctx) -> bool {
        a == b || self.ck.equal_ctxs(a, b).is_derivable()
    }

    fn require_ctx(&self, a: &Ctx, b: &Ctx, what: &str) -> MResult<()> {
        if self.same_ctx(a, b) {
            Ok(())
        } else {
            Err(ModelError::Mismatch(alloc::format!("{}: {} vs {}", what, print_ctx(a), print_ctx(b))))
        }
    }

    fn fresh(&self, ctx: &Ctx) -> Name {
        ctx.fresh_name("x")
    }
}

fn subst_err(e: crate::syntax::SubstError) -> ModelError {
    ModelError::Mismatch(alloc::format!("{}", e))
}

impl<'s> Model for TermModel<'s> {
    type Obj = Ctx;
    type Mor = CtxMor;
    type DObj = TyIn;
    type DMor = TmIn;

    fn terminal(&self) -> Ctx {
        Ctx::empty()
    }

    fn bang(&self, g: &Ctx) -> MResult<CtxMor> {
        Ok(CtxMor::bang(g))
    }

    fn id(&self, g: &Ctx) -> MResult<CtxMor> {
        Ok(id_cm(g))
    }

    fn compose(&self, g: &CtxMor, f: &CtxMor) -> MResult<CtxMor> {
        self.require_ctx(&f.cod, &g.dom, "compose")?;
        let f = CtxMor { cod: g.dom.clone(), ..f.clone() };
        let c = compose_cm(g, &f).map_err(subst_err)?;
        self.mor(&c.dom, &c.cod, c.comps)
    }

    fn dom(&self, f: &CtxMor) -> Ctx {
        f.dom.clone()
    }

    fn cod(&self, f: &CtxMor) -> Ctx {
        f.cod.clone()
    }

    fn base(&self, a: &TyIn) -> Ctx {
        a.ctx.clone()
    }

    fn dmor_dom(&self, f: &TmIn) -> Ctx {
        f.ctx.clone()
    }

    fn dmor_cod(&self, f: &TmIn) -> TyIn {
        TyIn { ctx: f.ctx.clone(), ty: f.ty.clone() }
    }

    fn reindex(&self, a: &TyIn, phi: &CtxMor) -> MResult<TyIn> {
        self.require_ctx(&phi.cod, &a.ctx, "reindex")?;
        let t = a.ty.gen_subst(phi).map_err(subst_err)?;
        self.ty(&phi.dom, &t)
    }

    fn reindex_dmor(&self, f: &TmIn, phi: &CtxMor) -> MResult<TmIn> {
        self.require_ctx(&phi.cod, &f.ctx, "reindex")?;
        let tm = f.tm.gen_subst(phi).map_err(subst_err)?;
        let ty = f.ty.gen_subst(phi).map_err(subst_err)?;
        self.tm(&phi.dom, &tm, &ty)
    }

    fn ext(&self, a: &TyIn) -> MResult<Ctx> {
        Ok(a.ctx.push(self.fresh(&a.ctx), a.ty.clone()))
    }

    fn p1(&self, a: &TyIn) -> MResult<CtxMor> {
        let n = a.ctx.len();
        let comps = (0..n)
            .map(|k| Tm::Var(Var { index: n - k, name: a.ctx.entries()[k].0.clone() }))
            .collect();
        Ok(CtxMor { dom: self.ext(a)?, cod: a.ctx.clone(), comps })
    }

    fn p2(&self, a: &TyIn) -> MResult<TmIn> {
        let ctx = self.ext(a)?;
        let name = ctx.last().unwrap().0.clone();
        Ok(TmIn { ctx, tm: Tm::Var(Var { index: 0, name }), ty: a.ty.shift(1) })
    }

    fn extend(&self, phi: &CtxMor, a: &TyIn, g: &TmIn) -> MResult<CtxMor> {
        self.require_ctx(&phi.cod, &a.ctx, "extend")?;
        self.require_ctx(&phi.dom, &g.ctx, "extend")?;
        let expect = self.reindex(a, phi)?;
        if expect.ty != g.ty {
            from_verdict(self.ck.equal_types(&g.ctx, &expect.ty, &g.ty))?;
        }
        let mut comps = phi.comps.clone();
        comps.push(g.tm.clone());
        Ok(CtxMor { dom: phi.dom.clone(), cod: self.ext(a)?, comps })
    }

    fn unit(&self) -> TyIn {
        TyIn { ctx: Ctx::empty(), ty: Ty::Unit }
    }

    fn unit_bang(&self, g: &Ctx) -> MResult<TmIn> {
        Ok(TmIn { ctx: g.clone(), tm: Tm::Star, ty: Ty::Unit })
    }

    fn sigma(&self, a: &TyIn, b: &TyIn) -> MResult<TyIn> {
        self.require_ctx(&b.ctx, &self.ext(a)?, "Σ")?;
        let name = b.ctx.last().unwrap().0.clone();
        Ok(TyIn { ctx: a.ctx.clone(), ty: Ty::Sigma(name, Arc::new(a.ty.clone()), Arc::new(b.ty.clone())) })
    }

    fn varpi1(&self, a: &TyIn, b: &TyIn) -> MResult<TmIn> {
        let s = self.sigma(a, b)?;
        let ctx = self.ext(&s)?;
        let z = Tm::Var(Var { index: 0, name: ctx.last().unwrap().0.clone() });
        let tm = Tm::proj1(z, &a.ty.shift(1), &b.ty.shift_from(1, 1));
        self.tm(&ctx, &tm, &a.ty.shift(1))
    }

    fn varpi2(&self, a: &TyIn, b: &TyIn) -> MResult<TmIn> {
        let s = self.sigma(a, b)?;
        let ctx = self.ext(&s)?;
        let z = Tm::Var(Var { index: 0, name: ctx.last().unwrap().0.clone() });
        let (a1, b1) = (a.ty.shift(1), b.ty.shift_from(1, 1));
        let ty = b1.subst(&Tm::proj1(z.clone(), &a1, &b1));
        self.tm(&ctx, &Tm::proj2(z, &a1, &b1), &ty)
    }

    fn dpair(&self, phi: &CtxMor, a: &TyIn, b: &TyIn, g: &TmIn, h: &TmIn) -> MResult<TmIn> {
        let s = self.reindex(&self.sigma(a, b)?, phi)?;
        self.tm(&phi.dom, &Tm::pair(g.tm.clone(), h.tm.clone()), &s.ty)
    }

    fn pi(&self, a: &TyIn, b: &TyIn) -> MResult<TyIn> {
        self.require_ctx(&b.ctx, &self.ext(a)?, "Π")?;
        let name = b.ctx.last().unwrap().0.clone();
        Ok(TyIn { ctx: a.ctx.clone(), ty: Ty::Pi(name, Arc::new(a.ty.clone()), Arc::new(b.ty.clone())) })
    }

    fn dev(&self, a: &TyIn, b: &TyIn) -> MResult<TmIn> {
        let pi = self.pi(a, b)?;
        let a_up = self.reindex(a, &self.p1(&pi)?)?;
        let ctx = self.ext(&a_up)?;
        let f = Tm::Var(Var { index: 1, name: ctx.entries()[ctx.len() - 2].0.clone() });
        let x = Tm::Var(Var { index: 0, name: ctx.last().unwrap().0.clone() });
        self.tm(&ctx, &Tm::app(f, x), &b.ty.shift_from(1, 1))
    }

    fn lam(&self, a: &TyIn, b: &TyIn, f: &TmIn) -> MResult<TmIn> {
        let pi = self.pi(a, b)?;
        self.require_ctx(&f.ctx, &b.ctx, "Λ")?;
        if f.ty != b.ty {
            from_verdict(self.ck.equal_types(&b.ctx, &f.ty, &b.ty))?;
        }
        let name = b.ctx.last().unwrap().0.clone();
        self.tm(&a.ctx, &Tm::Lam(name, Some(Arc::new(a.ty.clone())), Arc::new(f.tm.clone())), &pi.ty)
    }

    fn eq_obj(&self, x: &Ctx, y: &Ctx) -> bool {
        self.same_ctx(x, y)
    }

    fn eq_mor(&self, x: &CtxMor, y: &CtxMor) -> bool {
        if x == y {
            return true;
        }
        self.same_ctx(&x.dom, &y.dom)
            && self.same_ctx(&x.cod, &y.cod)
            && self.ck.equal_ctx_morphisms(&x.dom, &x.comps, &y.comps, &x.cod).is_derivable()
    }

    fn eq_dobj(&self, x: &TyIn, y: &TyIn) -> bool {
        x == y || (self.same_ctx(&x.ctx, &y.ctx) && self.ck.equal_types(&x.ctx, &x.ty, &y.ty).is_derivable())
    }

    fn eq_dmor(&self, x: &TmIn, y: &TmIn) -> bool {
        x == y
            || (self.same_ctx(&x.ctx, &y.ctx)
                && self.ck.equal_types(&x.ctx, &x.ty, &y.ty).is_derivable()
                && self.ck.equal_terms(&x.ctx, &x.tm, &y.tm, &x.ty).is_derivable())
    }

    fn conditional(&self) -> bool {
        self.ck.signature().has_trusted_axioms()
    }
}

/// Closed types over the empty signature (plus `atoms`) of depth ≤ `depth`.
pub fn closed_types(depth: usize, atoms: &[Ty]) -> Vec<Ty> {
    let mut layer: Vec<Ty> = core::iter::once(Ty::Unit).chain(atoms.iter().cloned()).collect();
    for _ in 0..depth {
        let mut next = layer.clone();
        for a in &layer {
            for b in &layer {
                next.push(Ty::pi("x", a.clone(), b.clone()));
                next.push(Ty::sigma("x", a.clone(), b.clone()));
            }
        }
        next.sort();
        next.dedup();
        layer = next;
    }
    layer
}

/// Every context of length ≤ `len` whose entries are drawn from `types` (all closed).
pub fn contexts(len: usize, types: &[Ty]) -> Vec<Ctx> {
    let mut out = alloc::vec![Ctx::empty()];
    let mut frontier = out.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for c in &frontier {
            for t in types {
                next.push(c.push(c.fresh_name("g"), t.clone()));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Random well-typed terms, including β-redexes and eliminations of
/// variables, for closed types over a signature.
pub struct TermSampler<'s> {
    pub rng: ChaCha8Rng,
    sig: &'s ValidatedSignature,
    /// Closed D-objects to draw from.
    pub types: Vec<Ty>,
    pub max_depth: usize,
    pub candidates: usize,
}

impl<'s> TermSampler<'s> {
    pub fn new(sig: &'s ValidatedSignature, seed: u64) -> Self {
        let atoms: Vec<Ty> = sig
            .consts()
            .iter()
            .filter(|c| c.cod.is_none() && c.tele.is_empty())
            .map(|c| Ty::Const(c.name.clone(), Vec::new()))
            .collect();
        TermSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            sig,
            types: closed_types(1, &atoms),
            max_depth: 3,
            candidates: 6,
        }
    }

    pub fn pick_ty(&mut self) -> Ty {
        self.types.choose(&mut self.rng).cloned().unwrap_or(Ty::Unit)
    }

    /// A term of `ty` in `ctx`, or `None` if none was found.
    pub fn term(&mut self, ctx: &Ctx, ty: &Ty, depth: usize) -> Option<Tm> {
        for _ in 0..4 {
            if let Some(t) = self.term_once(ctx, ty, depth) {
                return Some(t);
            }
        }
        self.term_once(ctx, ty, 0)
    }

    fn vars_of(&self, ctx: &Ctx, ty: &Ty) -> Vec<Tm> {
        (0..ctx.len())
            .filter(|&i| ctx.lookup(i).as_ref() == Some(ty))
            .map(|i| Tm::var(i, ctx.name_of(i).unwrap().as_str()))
            .collect()
    }

    fn term_once(&mut self, ctx: &Ctx, ty: &Ty, depth: usize) -> Option<Tm> {
        let vars = self.vars_of(ctx, ty);
        let choice = if depth == 0 { 0 } else { self.rng.gen_range(0..6) };
        match choice {
            1 => {
                // β-redex (λy:C. body) c
                let c = self.pick_ty();
                let arg = self.term(ctx, &c, depth - 1)?;
                let inner = ctx.push(ctx.fresh_name("y"), c.clone());
                let body = self.term(&inner, &ty.shift(1), depth - 1)?;
                return Some(Tm::app(Tm::lam_ann("y", c, body), arg));
            }
            2 => {
                // first projection of something Σ-typed
                let c = self.pick_ty();
                let p = self.term(ctx, &Ty::sigma("x", ty.clone(), c.shift(1)), depth - 1)?;
                return Some(Tm::proj1(p, ty, &c.shift(1)));
            }
            3 => {
                // eliminate a Σ- or Π-typed variable
                let n = ctx.len();
                if n > 0 {
                    let i = self.rng.gen_range(0..n);
                    let vi = Tm::var(i, ctx.name_of(i).unwrap().as_str());
                    match ctx.lookup(i)? {
                        Ty::Sigma(_, a, b) => {
                            let inner = ctx.push(ctx.fresh_name("p"), (*a).clone());
                            let inner = inner.push(inner.fresh_name("q"), (*b).clone());
                            let body = self.term(&inner, &ty.shift(2), depth - 1)?;
                            return Some(Tm::rsig(ty.shift(1), body, vi));
                        }
                        Ty::Pi(_, a, b)
                            if !b.free_vars().contains(&0) && b.unshift(1).ok().as_ref() == Some(ty) =>
                        {
                            let arg = self.term(ctx, &a, depth - 1)?;
                            return Some(Tm::app(vi, arg));
                        }
                        _ => {}
                    }
                }
            }
            _ => {}
        }
        if !vars.is_empty() && self.rng.gen_bool(0.5) {
            return vars.choose(&mut self.rng).cloned();
        }
        let d = depth.saturating_sub(1);
        match ty {
            Ty::Unit => Some(Tm::Star),
            Ty::Pi(n, a, b) => {
                let inner = ctx.push(ctx.fresh_name(n.as_str()), (**a).clone());
                let body = self.term(&inner, b, d)?;
                Some(Tm::lam_ann(n.as_str(), (**a).clone(), body))
            }
            Ty::Sigma(_, a, b) => {
                let x = self.term(ctx, a, d)?;
                let y = self.term(ctx, &b.subst(&x), d)?;
                Some(Tm::pair(x, y))
            }
            Ty::Const(..) => {
                if let Some(v) = vars.choose(&mut self.rng) {
                    return Some(v.clone());
                }
                self.const_term(ctx, ty, d)
            }
        }
    }

    /// A term constant application whose codomain is `ty`, with closed telescope.
    fn const_term(&mut self, ctx: &Ctx, ty: &Ty, depth: usize) -> Option<Tm> {
        let mut cands: Vec<(Sym, Vec<Ty>)> = Vec::new();
        for c in self.sig.consts() {
            if c.cod.as_ref() != Some(ty) {
                continue;
            }
            let tys: Option<Vec<Ty>> = c.tele.entries().iter().map(|(_, t)| t.unshift(0).ok()).collect();
            let closed = c.tele.entries().iter().all(|(_, t)| t.free_vars().is_empty());
            if let (Some(tys), true) = (tys, closed) {
                cands.push((c.name.clone(), tys));
            }
        }
        // prefer nullary constants when out of depth
        cands.sort_by_key(|c| c.1.len());
        if cands.is_empty() {
            return None;
        }
        let (name, tys) = if depth == 0 { cands[0].clone() } else { cands.choose(&mut self.rng)?.clone() };
        let mut args = Vec::new();
        for t in &tys {
            args.push(self.term(ctx, t, depth.saturating_sub(1))?);
        }
        Some(Tm::Const(name, args))
    }

    pub fn random_ctx(&mut self, max_len: usize) -> Ctx {
        let n = self.rng.gen_range(0..=max_len);
        let mut c = Ctx::empty();
        for _ in 0..n {
            let t = self.pick_ty();
            c = c.push(c.fresh_name("g"), t);
        }
        c
    }

    pub fn random_mor(&mut self, dom: &Ctx, cod: &Ctx) -> Option<CtxMor> {
        let mut comps: Vec<Tm> = Vec::new();
        for (_, t) in cod.entries() {
            let env: Vec<Tm> = comps.iter().rev().cloned().collect();
            let ty = t.instantiate(&env).ok()?;
            comps.push(self.term(dom, &ty, self.max_depth)?);
        }
        Some(CtxMor { dom: dom.clone(), cod: cod.clone(), comps })
    }

    /// Seeds over every context in `ctxs`, with A and B drawn at random.
    pub fn seeds(&mut self, ctxs: &[Ctx]) -> Vec<Seed<Ctx, TyIn>> {
        ctxs.iter()
            .map(|g| {
                let a = TyIn { ctx: g.clone(), ty: self.pick_ty() };
                let ga = g.push(g.fresh_name("x"), a.ty.clone());
                let b = TyIn { ctx: ga, ty: self.pick_ty() };
                Seed { gamma: g.clone(), a, b }
            })
            .collect()
    }
}

/// η-expansions of a term at its type, one level deep.
fn eta_variants(t: &Tm, ty: &Ty) -> Vec<Tm> {
    match ty {
        Ty::Pi(n, a, _) => alloc::vec![Tm::lam_ann(n.as_str(), (**a).clone(), Tm::app(t.shift(1), Tm::var(0, n.as_str())))],
        Ty::Sigma(_, a, b) => alloc::vec![Tm::pair(Tm::proj1(t.clone(), a, b), Tm::proj2(t.clone(), a, b))],
        _ => Vec::new(),
    }
}

impl<'m, 's> Sampler<TermModel<'m>> for TermSampler<'s> {
    fn object(&mut self) -> Ctx {
        self.random_ctx(2)
    }

    fn dobj(&mut self, base: &Ctx) -> Option<TyIn> {
        Some(TyIn { ctx: base.clone(), ty: self.pick_ty() })
    }

    fn mor(&mut self, dom: &Ctx, cod: &Ctx) -> Option<CtxMor> {
        self.random_mor(dom, cod)
    }

    fn dmor(&mut self, a: &TyIn) -> Option<TmIn> {
        let d = self.max_depth;
        let tm = self.term(&a.ctx, &a.ty, d)?;
        Some(TmIn { ctx: a.ctx.clone(), tm, ty: a.ty.clone() })
    }

    fn mor_candidates(&mut self, dom: &Ctx, cod: &Ctx, hint: Option<&CtxMor>) -> Vec<CtxMor> {
        let mut v: Vec<CtxMor> = (0..self.candidates).filter_map(|_| self.random_mor(dom, cod)).collect();
        v.extend(hint.cloned());
        v
    }

    fn dmor_candidates(&mut self, a: &TyIn, hint: Option<&TmIn>) -> Vec<TmIn> {
        let mut v: Vec<TmIn> = (0..self.candidates).filter_map(|_| self.dmor(a)).collect();
        if let Some(h) = hint {
            for t in eta_variants(&h.tm, &h.ty) {
                v.push(TmIn { tm: t, ..h.clone() });
            }
            v.push(h.clone());
        }
        v
    }
}

/// Renders a morphism for reports.
pub fn show_mor(f: &CtxMor) -> String {
    print_ctx_mor(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwf::{check_laws, lam_inv, Model};

    #[test]
    fn type_counts() {
        assert_eq!(closed_types(0, &[]).len(), 1);
        assert_eq!(closed_types(1, &[]).len(), 3);
        assert_eq!(closed_types(2, &[]).len(), 19);
        assert_eq!(contexts(2, &closed_types(2, &[])).len(), 1 + 19 + 361);
    }

    #[test]
    fn dev_and_lam_invert() {
        let sig = ValidatedSignature::empty();
        let m = TermModel::new(&sig);
        let g = Ctx::empty().push(Name::new("u"), Ty::Unit);
        let a = m.ty(&g, &Ty::product(Ty::Unit, Ty::Unit)).unwrap();
        let b = TyIn { ctx: m.ext(&a).unwrap(), ty: Ty::Unit };
        let f = m.p2(&a).unwrap();
        let f = m.tm(&f.ctx, &Tm::Star, &Ty::Unit).unwrap();
        let k = m.lam(&a, &b, &f).unwrap();
        assert!(m.eq_dmor(&lam_inv(&m, &a, &b, &k).unwrap(), &f));
    }

    #[test]
    fn small_random_law_run() {
        let sig = ValidatedSignature::empty();
        let m = TermModel::new(&sig);
        let mut s = TermSampler::new(&sig, 3);
        let ctxs = contexts(1, &closed_types(1, &[]));
        let seeds = s.seeds(&ctxs);
        let r = check_laws(&m, &mut s, &seeds);
        assert!(r.all_passed(), "{}", r);
    }
}
