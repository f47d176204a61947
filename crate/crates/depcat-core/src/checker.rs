//! Bidirectional type checker with normalization by evaluation.
//!
//! Judgmental equality is decided by evaluating to values, reading back
//! β-normal η-long forms (λ at Π, pairs at Σ, `star` at the unit type) and
//! comparing them up to α. Axioms fire left to right while evaluating a
//! constant application whose arguments match the left-hand side.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};
use core::fmt;

use crate::parser::AxiomEq;
use crate::print::{print_ctx, print_tm_in, print_ty_in};
use crate::signature::ValidatedSignature;
use crate::syntax::{Ctx, CtxMor, Name, Sym, Tm, Ty};

pub const DEFAULT_FUEL: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgement {
    Ctx(Ctx),
    Type(Ctx, Ty),
    Term(Ctx, Tm, Ty),
    CtxEq(Ctx, Ctx),
    TypeEq(Ctx, Ty, Ty),
    TermEq(Ctx, Tm, Tm, Ty),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Derivable,
    NotDerivable { reason: String, subgoal: String },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_derivable(&self) -> bool {
        matches!(self, Verdict::Derivable)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Derivable => f.write_str("derivable"),
            Verdict::NotDerivable { reason, subgoal } => write!(f, "{} in {}", reason, subgoal),
            Verdict::Unknown { reason } => write!(f, "unknown: {}", reason),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeError {
    pub rule: &'static str,
    pub message: String,
    pub subgoal: String,
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} in {}", self.rule, self.message, self.subgoal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckError {
    Type(TypeError),
    OutOfFuel,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::Type(e) => e.fmt(f),
            CheckError::OutOfFuel => f.write_str("axiom rewriting fuel exhausted"),
        }
    }
}

type R<T> = Result<T, CheckError>;

#[derive(Clone)]
enum Val {
    Lam(Rc<Closure>),
    Pair(Rc<(Val, Val)>),
    Star,
    Neu(Rc<Neu>),
}

struct Closure {
    name: Name,
    env: Vec<Val>,
    body: Arc<Tm>,
}

enum Neu {
    Var(usize),
    App(Rc<Neu>, Val),
    Fst(Rc<Neu>),
    Snd(Rc<Neu>),
    Const(Sym, Vec<Val>),
}

#[derive(Clone)]
enum VTy {
    Unit,
    Pi(Name, Rc<VTy>, TyClo),
    Sigma(Name, Rc<VTy>, TyClo),
    Const(Sym, Vec<Val>),
}

#[derive(Clone)]
struct TyClo {
    env: Vec<Val>,
    body: Arc<Ty>,
}

fn stuck(what: &str) -> CheckError {
    CheckError::Type(TypeError { rule: "eval", message: format!("stuck evaluation: {}", what), subgoal: String::new() })
}

fn lookup(env: &[Val], i: usize) -> R<Val> {
    if i < env.len() {
        Ok(env[env.len() - 1 - i].clone())
    } else {
        Err(stuck("unbound variable"))
    }
}

fn with(env: &[Val], v: Val) -> Vec<Val> {
    let mut e = env.to_vec();
    e.push(v);
    e
}

/// Checks judgements against one validated signature.
pub struct Checker<'s> {
    sig: &'s ValidatedSignature,
    fuel_limit: u64,
    fuel: Cell<u64>,
    /// Types (and display names) of the variables in scope, by de Bruijn level.
    levels: RefCell<Vec<(Name, VTy)>>,
    /// Syntactic context mirroring `levels`, for error messages.
    syn: RefCell<Vec<(Name, Ty)>>,
}

impl<'s> Checker<'s> {
    pub fn new(sig: &'s ValidatedSignature) -> Checker<'s> {
        Checker::with_fuel(sig, DEFAULT_FUEL)
    }

    pub fn with_fuel(sig: &'s ValidatedSignature, fuel: u64) -> Checker<'s> {
        Checker {
            sig,
            fuel_limit: fuel,
            fuel: Cell::new(fuel),
            levels: RefCell::new(Vec::new()),
            syn: RefCell::new(Vec::new()),
        }
    }

    pub fn signature(&self) -> &'s ValidatedSignature {
        self.sig
    }

    fn reset(&self) {
        self.fuel.set(self.fuel_limit);
        self.levels.borrow_mut().clear();
        self.syn.borrow_mut().clear();
    }

    fn depth(&self) -> usize {
        self.levels.borrow().len()
    }

    fn push(&self, name: Name, ty: VTy, syn: Ty) -> usize {
        let mut lv = self.levels.borrow_mut();
        lv.push((name.clone(), ty));
        self.syn.borrow_mut().push((name, syn));
        lv.len() - 1
    }

    /// Push a binder whose syntactic type is read back from `ty`.
    fn push_v(&self, name: Name, ty: VTy) -> R<usize> {
        let syn = self.rb_ty(&ty)?;
        Ok(self.push(name, ty, syn))
    }

    fn pop(&self) {
        self.levels.borrow_mut().pop();
        self.syn.borrow_mut().pop();
    }

    fn under<T>(&self, name: Name, ty: VTy, f: impl FnOnce(&Self, Val) -> R<T>) -> R<T> {
        let l = self.push_v(name, ty)?;
        let r = f(self, Val::Neu(Rc::new(Neu::Var(l))));
        self.pop();
        r
    }

    fn env(&self) -> Vec<Val> {
        (0..self.depth()).map(|l| Val::Neu(Rc::new(Neu::Var(l)))).collect()
    }

    fn cur_ctx(&self) -> Ctx {
        Ctx::from_entries(self.syn.borrow().clone())
    }

    fn type_error(&self, rule: &'static str, message: String, subgoal: String) -> CheckError {
        CheckError::Type(TypeError { rule, message, subgoal })
    }

    fn goal_tm(&self, a: &Tm, ty: Option<&VTy>) -> String {
        let ctx = self.cur_ctx();
        let ty = ty.and_then(|t| self.rb_ty(t).ok());
        let mut s = print_ctx(&ctx);
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str("|- ");
        s.push_str(&print_tm_in(&ctx, a));
        if let Some(t) = ty {
            s.push_str(" : ");
            s.push_str(&print_ty_in(&ctx, &t));
        }
        s
    }

    fn goal_ty(&self, a: &Ty) -> String {
        let ctx = self.cur_ctx();
        let mut s = print_ctx(&ctx);
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str("|- ");
        s.push_str(&print_ty_in(&ctx, a));
        s.push_str(" type");
        s
    }

    // ---- evaluation ----

    fn eval(&self, env: &[Val], t: &Tm) -> R<Val> {
        match t {
            Tm::Var(v) => lookup(env, v.index),
            Tm::Star => Ok(Val::Star),
            Tm::Lam(n, _, b) => Ok(Val::Lam(Rc::new(Closure { name: n.clone(), env: env.to_vec(), body: b.clone() }))),
            Tm::App(f, a) => {
                let fv = self.eval(env, f)?;
                let av = self.eval(env, a)?;
                self.apply(&fv, av)
            }
            Tm::Pair(a, b) => Ok(Val::Pair(Rc::new((self.eval(env, a)?, self.eval(env, b)?)))),
            Tm::RSig { body, scrut, .. } => {
                let p = self.eval(env, scrut)?;
                let (a, b) = (self.fst(&p)?, self.snd(&p)?);
                let mut e = env.to_vec();
                e.push(a);
                e.push(b);
                self.eval(&e, body)
            }
            Tm::Const(c, args) => {
                let vals = args.iter().map(|a| self.eval(env, a)).collect::<R<Vec<_>>>()?;
                self.call_const(c, vals)
            }
        }
    }

    fn apply(&self, f: &Val, a: Val) -> R<Val> {
        match f {
            Val::Lam(c) => self.eval(&with(&c.env, a), &c.body),
            Val::Neu(n) => Ok(Val::Neu(Rc::new(Neu::App(n.clone(), a)))),
            _ => Err(stuck("application of a non-function")),
        }
    }

    fn fst(&self, p: &Val) -> R<Val> {
        match p {
            Val::Pair(ab) => Ok(ab.0.clone()),
            Val::Neu(n) => Ok(Val::Neu(Rc::new(Neu::Fst(n.clone())))),
            _ => Err(stuck("projection of a non-pair")),
        }
    }

    fn snd(&self, p: &Val) -> R<Val> {
        match p {
            Val::Pair(ab) => Ok(ab.1.clone()),
            Val::Neu(n) => Ok(Val::Neu(Rc::new(Neu::Snd(n.clone())))),
            _ => Err(stuck("projection of a non-pair")),
        }
    }

    fn eval_ty(&self, env: &[Val], t: &Ty) -> R<VTy> {
        match t {
            Ty::Unit => Ok(VTy::Unit),
            Ty::Pi(n, a, b) => Ok(VTy::Pi(
                n.clone(),
                Rc::new(self.eval_ty(env, a)?),
                TyClo { env: env.to_vec(), body: b.clone() },
            )),
            Ty::Sigma(n, a, b) => Ok(VTy::Sigma(
                n.clone(),
                Rc::new(self.eval_ty(env, a)?),
                TyClo { env: env.to_vec(), body: b.clone() },
            )),
            Ty::Const(c, args) => {
                let vals = args.iter().map(|a| self.eval(env, a)).collect::<R<Vec<_>>>()?;
                self.call_ty_const(c, vals)
            }
        }
    }

    fn inst(&self, c: &TyClo, v: Val) -> R<VTy> {
        self.eval_ty(&with(&c.env, v), &c.body)
    }

    fn burn(&self, axiom: usize) -> R<()> {
        if self.sig.is_trusted(axiom) {
            let f = self.fuel.get();
            if f == 0 {
                return Err(CheckError::OutOfFuel);
            }
            self.fuel.set(f - 1);
        }
        Ok(())
    }

    fn call_const(&self, c: &Sym, args: Vec<Val>) -> R<Val> {
        for &ai in self.sig.axioms_for(c) {
            let ax = &self.sig.axioms()[ai];
            if let AxiomEq::Tm(Tm::Const(_, pats), rhs, _) = &ax.eq {
                if let Some(env) = self.match_args(&ax.ctx, pats, &args)? {
                    self.burn(ai)?;
                    return self.eval(&env, rhs);
                }
            }
        }
        Ok(Val::Neu(Rc::new(Neu::Const(c.clone(), args))))
    }

    fn call_ty_const(&self, c: &Sym, args: Vec<Val>) -> R<VTy> {
        for &ai in self.sig.axioms_for(c) {
            let ax = &self.sig.axioms()[ai];
            if let AxiomEq::Ty(Ty::Const(_, pats), rhs) = &ax.eq {
                if let Some(env) = self.match_args(&ax.ctx, pats, &args)? {
                    self.burn(ai)?;
                    return self.eval_ty(&env, rhs);
                }
            }
        }
        Ok(VTy::Const(c.clone(), args))
    }

    /// Match constant arguments against an axiom's left-hand side patterns.
    /// Returns the environment for the axiom context on success.
    fn match_args(&self, ctx: &Ctx, pats: &[Tm], args: &[Val]) -> R<Option<Vec<Val>>> {
        let m = ctx.len();
        let mut binds: Vec<Option<Val>> = alloc::vec![None; m];
        let mut repeats: Vec<(usize, Val)> = Vec::new();
        for (p, v) in pats.iter().zip(args) {
            if !self.match_tm(m, p, v, &mut binds, &mut repeats)? {
                return Ok(None);
            }
        }
        let env: Vec<Val> = binds.iter().map(|b| b.clone().unwrap_or(Val::Star)).collect();
        for (k, v) in repeats {
            let ty = self.eval_ty(&env[..k], &ctx.entries()[k].1)?;
            let bound = env[k].clone();
            if self.rb(&ty, &bound)? != self.rb(&ty, &v)? {
                return Ok(None);
            }
        }
        Ok(Some(env))
    }

    fn match_tm(
        &self,
        m: usize,
        p: &Tm,
        v: &Val,
        binds: &mut [Option<Val>],
        repeats: &mut Vec<(usize, Val)>,
    ) -> R<bool> {
        match p {
            Tm::Var(x) => {
                let k = m - 1 - x.index;
                if binds[k].is_none() {
                    binds[k] = Some(v.clone());
                } else {
                    repeats.push((k, v.clone()));
                }
                Ok(true)
            }
            Tm::Star => Ok(true),
            Tm::Pair(a, b) => {
                let (Ok(va), Ok(vb)) = (self.fst(v), self.snd(v)) else {
                    return Ok(false);
                };
                Ok(self.match_tm(m, a, &va, binds, repeats)? && self.match_tm(m, b, &vb, binds, repeats)?)
            }
            Tm::Const(c, ps) => match v {
                Val::Neu(n) => match &**n {
                    Neu::Const(d, vs) if d == c && vs.len() == ps.len() => {
                        for (p, v) in ps.iter().zip(vs) {
                            if !self.match_tm(m, p, v, binds, repeats)? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    }
                    _ => Ok(false),
                },
                _ => Ok(false),
            },
            _ => Ok(false),
        }
    }

    // ---- readback ----

    fn rb(&self, ty: &VTy, v: &Val) -> R<Tm> {
        match ty {
            VTy::Unit => Ok(Tm::Star),
            VTy::Pi(n, a, b) => {
                let name = match v {
                    Val::Lam(c) => c.name.clone(),
                    _ => n.clone(),
                };
                let dom = self.rb_ty(a)?;
                let body = self.under(name.clone(), (**a).clone(), |ck, x| {
                    let bt = ck.inst(b, x.clone())?;
                    let fx = ck.apply(v, x)?;
                    ck.rb(&bt, &fx)
                })?;
                Ok(Tm::Lam(name, Some(Arc::new(dom)), Arc::new(body)))
            }
            VTy::Sigma(_, a, b) => {
                let (p1, p2) = (self.fst(v)?, self.snd(v)?);
                let bt = self.inst(b, p1.clone())?;
                Ok(Tm::pair(self.rb(a, &p1)?, self.rb(&bt, &p2)?))
            }
            VTy::Const(..) => match v {
                Val::Neu(n) => Ok(self.rb_neu(n)?.0),
                _ => Err(stuck("canonical value at a constant type")),
            },
        }
    }

    fn rb_neu(&self, n: &Neu) -> R<(Tm, VTy)> {
        match n {
            Neu::Var(l) => {
                let lv = self.levels.borrow();
                let (name, ty) = lv.get(*l).cloned().ok_or_else(|| stuck("escaped variable"))?;
                Ok((Tm::var(lv.len() - 1 - l, name.as_str()), ty))
            }
            Neu::App(h, a) => {
                let (ht, hty) = self.rb_neu(h)?;
                match hty {
                    VTy::Pi(_, dom, cod) => {
                        let at = self.rb(&dom, a)?;
                        Ok((Tm::app(ht, at), self.inst(&cod, a.clone())?))
                    }
                    _ => Err(stuck("neutral application at a non-Π type")),
                }
            }
            Neu::Fst(h) | Neu::Snd(h) => {
                let is_fst = matches!(n, Neu::Fst(_));
                let (ht, hty) = self.rb_neu(h)?;
                match hty {
                    VTy::Sigma(n, a, b) => {
                        let a_syn = self.rb_ty(&a)?;
                        let b_syn = self.under(n, (*a).clone(), |ck, x| ck.rb_ty(&ck.inst(&b, x)?))?;
                        if is_fst {
                            Ok((Tm::proj1(ht, &a_syn, &b_syn), (*a).clone()))
                        } else {
                            let fst = Val::Neu(Rc::new(Neu::Fst(h.clone())));
                            Ok((Tm::proj2(ht, &a_syn, &b_syn), self.inst(&b, fst)?))
                        }
                    }
                    _ => Err(stuck("neutral projection at a non-Σ type")),
                }
            }
            Neu::Const(c, args) => {
                let decl = self.sig.get(c).ok_or_else(|| stuck("unknown constant"))?;
                let tms = self.rb_args(&decl.tele, args)?;
                let cod = decl.cod.as_ref().ok_or_else(|| stuck("type constant in term position"))?;
                Ok((Tm::Const(c.clone(), tms), self.eval_ty(args, cod)?))
            }
        }
    }

    fn rb_args(&self, tele: &Ctx, args: &[Val]) -> R<Vec<Tm>> {
        let mut out = Vec::with_capacity(args.len());
        for (i, (_, t)) in tele.entries().iter().enumerate() {
            let ty = self.eval_ty(&args[..i], t)?;
            out.push(self.rb(&ty, &args[i])?);
        }
        Ok(out)
    }

    fn rb_ty(&self, t: &VTy) -> R<Ty> {
        match t {
            VTy::Unit => Ok(Ty::Unit),
            VTy::Pi(n, a, b) | VTy::Sigma(n, a, b) => {
                let a_syn = self.rb_ty(a)?;
                let b_syn = self.under(n.clone(), (**a).clone(), |ck, x| ck.rb_ty(&ck.inst(b, x)?))?;
                let (n, a, b) = (n.clone(), Arc::new(a_syn), Arc::new(b_syn));
                Ok(if matches!(t, VTy::Pi(..)) { Ty::Pi(n, a, b) } else { Ty::Sigma(n, a, b) })
            }
            VTy::Const(c, args) => {
                let decl = self.sig.get(c).ok_or_else(|| stuck("unknown constant"))?;
                Ok(Ty::Const(c.clone(), self.rb_args(&decl.tele, args)?))
            }
        }
    }

    fn conv_ty(&self, a: &VTy, b: &VTy) -> R<bool> {
        Ok(self.rb_ty(a)? == self.rb_ty(b)?)
    }

    // ---- bidirectional checking ----

    fn check_ty_in(&self, t: &Ty) -> R<VTy> {
        match t {
            Ty::Unit => Ok(VTy::Unit),
            Ty::Pi(n, a, b) | Ty::Sigma(n, a, b) => {
                let va = self.check_ty_in(a)?;
                self.push(n.clone(), va, (**a).clone());
                let r = self.check_ty_in(b);
                self.pop();
                r?;
                self.eval_ty(&self.env(), t)
            }
            Ty::Const(c, args) => {
                let decl = match self.sig.type_const(c) {
                    Some(d) => d,
                    None => {
                        let msg = if self.sig.term_const(c).is_some() {
                            format!("{} is a term constant", c)
                        } else {
                            format!("unknown type constant {}", c)
                        };
                        return Err(self.type_error("Type-Const", msg, self.goal_ty(t)));
                    }
                };
                let vals = self.check_args(&decl.tele, args, "Type-Const", &|| self.goal_ty(t))?;
                self.call_ty_const(c, vals)
            }
        }
    }

    fn check_args(&self, tele: &Ctx, args: &[Tm], rule: &'static str, goal: &dyn Fn() -> String) -> R<Vec<Val>> {
        if tele.len() != args.len() {
            return Err(self.type_error(
                rule,
                format!("expected {} arguments, got {}", tele.len(), args.len()),
                goal(),
            ));
        }
        let env = self.env();
        let mut vals = Vec::with_capacity(args.len());
        for (i, (_, t)) in tele.entries().iter().enumerate() {
            let ty = self.eval_ty(&vals, t)?;
            self.check_in(&args[i], &ty)?;
            vals.push(self.eval(&env, &args[i])?);
        }
        Ok(vals)
    }

    fn check_in(&self, t: &Tm, ty: &VTy) -> R<()> {
        match (t, ty) {
            (Tm::Lam(n, ann, body), VTy::Pi(_, a, b)) => {
                if let Some(ann) = ann {
                    let va = self.check_ty_in(ann)?;
                    if !self.conv_ty(&va, a)? {
                        return Err(self.type_error(
                            "Π-Intro",
                            "domain annotation does not match the expected type".into(),
                            self.goal_tm(t, Some(ty)),
                        ));
                    }
                }
                self.under(n.clone(), (**a).clone(), |ck, x| {
                    let bt = ck.inst(b, x)?;
                    ck.check_in(body, &bt)
                })
            }
            (Tm::Lam(_, None, _), _) => Err(self.type_error(
                "Π-Intro",
                "a λ-abstraction needs a Π type".into(),
                self.goal_tm(t, Some(ty)),
            )),
            (Tm::Pair(a, b), VTy::Sigma(_, ta, tb)) => {
                self.check_in(a, ta)?;
                let va = self.eval(&self.env(), a)?;
                let bt = self.inst(tb, va)?;
                self.check_in(b, &bt)
            }
            (Tm::Pair(..), _) => Err(self.type_error(
                "Σ-Intro",
                "a pair needs a Σ type".into(),
                self.goal_tm(t, Some(ty)),
            )),
            _ => {
                let got = self.infer_in(t)?;
                if self.conv_ty(&got, ty)? {
                    Ok(())
                } else {
                    let ctx = self.cur_ctx();
                    let got_s = self.rb_ty(&got).map(|g| print_ty_in(&ctx, &g)).unwrap_or_default();
                    Err(self.type_error(
                        "Tm-Con",
                        format!("type mismatch: inferred {}", got_s),
                        self.goal_tm(t, Some(ty)),
                    ))
                }
            }
        }
    }

    fn infer_in(&self, t: &Tm) -> R<VTy> {
        match t {
            Tm::Var(v) => {
                let lv = self.levels.borrow();
                if v.index < lv.len() {
                    Ok(lv[lv.len() - 1 - v.index].1.clone())
                } else {
                    drop(lv);
                    Err(self.type_error("Var", format!("unbound variable {}", v.name.as_str()), self.goal_tm(t, None)))
                }
            }
            Tm::Star => Ok(VTy::Unit),
            Tm::Lam(n, Some(ann), body) => {
                let va = self.check_ty_in(ann)?;
                let cod = self.under(n.clone(), va.clone(), |ck, _| {
                    let bt = ck.infer_in(body)?;
                    ck.rb_ty(&bt)
                })?;
                Ok(VTy::Pi(n.clone(), Rc::new(va), TyClo { env: self.env(), body: Arc::new(cod) }))
            }
            Tm::Lam(_, None, _) => Err(self.type_error(
                "Π-Intro",
                "cannot infer the type of an unannotated λ".into(),
                self.goal_tm(t, None),
            )),
            Tm::App(f, a) => {
                if let Tm::Lam(n, None, body) = &**f {
                    let ta = self.infer_in(a)?;
                    let cod = self.under(n.clone(), ta, |ck, _| {
                        let bt = ck.infer_in(body)?;
                        ck.rb_ty(&bt)
                    })?;
                    let va = self.eval(&self.env(), a)?;
                    return self.eval_ty(&with(&self.env(), va), &cod);
                }
                match self.infer_in(f)? {
                    VTy::Pi(_, dom, cod) => {
                        self.check_in(a, &dom)?;
                        let va = self.eval(&self.env(), a)?;
                        self.inst(&cod, va)
                    }
                    _ => Err(self.type_error(
                        "Π-Elim",
                        "applied term is not a function".into(),
                        self.goal_tm(t, None),
                    )),
                }
            }
            Tm::Pair(a, b) => {
                let ta = self.infer_in(a)?;
                let tb = self.infer_in(b)?;
                let b_syn = self.rb_ty(&tb)?.shift(1);
                Ok(VTy::Sigma(Name::new("_"), Rc::new(ta), TyClo { env: self.env(), body: Arc::new(b_syn) }))
            }
            Tm::RSig { z, motive, x, y, body, scrut } => {
                let tp = self.infer_in(scrut)?;
                let VTy::Sigma(_, ta, tb) = tp.clone() else {
                    return Err(self.type_error(
                        "Σ-Elim",
                        "eliminated term is not a dependent pair".into(),
                        self.goal_tm(t, None),
                    ));
                };
                let env = self.env();
                self.under(z.clone(), tp, |ck, _| ck.check_ty_in(motive).map(|_| ()))?;
                self.under(x.clone(), (*ta).clone(), |ck, vx| {
                    let ty_y = ck.inst(&tb, vx.clone())?;
                    ck.under(y.clone(), ty_y, |ck, vy| {
                        let want = ck.eval_ty(&with(&env, Val::Pair(Rc::new((vx, vy)))), motive)?;
                        ck.check_in(body, &want)
                    })
                })?;
                let vp = self.eval(&env, scrut)?;
                self.eval_ty(&with(&env, vp), motive)
            }
            Tm::Const(c, args) => {
                let decl = match self.sig.term_const(c) {
                    Some(d) => d,
                    None => {
                        let msg = if self.sig.type_const(c).is_some() {
                            format!("{} is a type constant", c)
                        } else {
                            format!("unknown term constant {}", c)
                        };
                        return Err(self.type_error("Term-Const", msg, self.goal_tm(t, None)));
                    }
                };
                let vals = self.check_args(&decl.tele, args, "Term-Const", &|| self.goal_tm(t, None))?;
                self.eval_ty(&vals, decl.cod.as_ref().expect("term constant"))
            }
        }
    }

    /// Enter Γ, checking Ctx-Ext (freshness and well-formed types).
    fn enter_ctx(&self, ctx: &Ctx) -> R<()> {
        for (i, (n, ty)) in ctx.entries().iter().enumerate() {
            if ctx.entries()[..i].iter().any(|(m, _)| m.as_str() == n.as_str()) {
                return Err(self.type_error(
                    "Ctx-Ext",
                    format!("variable {} is already in the context", n.as_str()),
                    format!("{} ctx", print_ctx(&ctx.prefix(i + 1))),
                ));
            }
            let v = self.check_ty_in(ty)?;
            self.push(n.clone(), v, ty.clone());
        }
        Ok(())
    }

    fn run(&self, f: impl FnOnce(&Self) -> R<()>) -> Verdict {
        self.reset();
        let r = f(self);
        self.reset();
        match r {
            Ok(()) => Verdict::Derivable,
            Err(CheckError::Type(e)) => {
                Verdict::NotDerivable { reason: format!("{}: {}", e.rule, e.message), subgoal: e.subgoal }
            }
            Err(CheckError::OutOfFuel) => Verdict::Unknown { reason: "axiom rewriting fuel exhausted".into() },
        }
    }

    fn not_equal(&self, rule: &'static str, what: String) -> CheckError {
        let ctx = self.cur_ctx();
        self.type_error(rule, "sides are not judgmentally equal".into(), {
            let mut s = print_ctx(&ctx);
            if !s.is_empty() {
                s.push(' ');
            }
            s.push_str("|- ");
            s.push_str(&what);
            s
        })
    }

    // ---- public judgement API ----

    pub fn check_ctx(&self, ctx: &Ctx) -> Verdict {
        self.run(|ck| ck.enter_ctx(ctx))
    }

    pub fn check_type(&self, ctx: &Ctx, a: &Ty) -> Verdict {
        self.run(|ck| {
            ck.enter_ctx(ctx)?;
            ck.check_ty_in(a).map(|_| ())
        })
    }

    pub fn check_term(&self, ctx: &Ctx, a: &Tm, ty: &Ty) -> Verdict {
        self.run(|ck| {
            ck.enter_ctx(ctx)?;
            let vt = ck.check_ty_in(ty)?;
            ck.check_in(a, &vt)
        })
    }

    pub fn infer_term(&self, ctx: &Ctx, a: &Tm) -> Result<Ty, CheckError> {
        self.reset();
        let r = (|| {
            self.enter_ctx(ctx)?;
            let t = self.infer_in(a)?;
            self.rb_ty(&t)
        })();
        self.reset();
        r
    }

    pub fn equal_types(&self, ctx: &Ctx, a: &Ty, b: &Ty) -> Verdict {
        self.run(|ck| {
            ck.enter_ctx(ctx)?;
            let va = ck.check_ty_in(a)?;
            let vb = ck.check_ty_in(b)?;
            if ck.conv_ty(&va, &vb)? {
                Ok(())
            } else {
                Err(ck.not_equal("Ty-Eq", format!("{} = {} type", print_ty_in(ctx, a), print_ty_in(ctx, b))))
            }
        })
    }

    pub fn equal_terms(&self, ctx: &Ctx, a: &Tm, b: &Tm, ty: &Ty) -> Verdict {
        self.run(|ck| {
            ck.enter_ctx(ctx)?;
            let vt = ck.check_ty_in(ty)?;
            ck.check_in(a, &vt)?;
            ck.check_in(b, &vt)?;
            let env = ck.env();
            let na = ck.rb(&vt, &ck.eval(&env, a)?)?;
            let nb = ck.rb(&vt, &ck.eval(&env, b)?)?;
            if na == nb {
                Ok(())
            } else {
                Err(ck.not_equal(
                    "Tm-Eq",
                    format!("{} = {} : {}", print_tm_in(ctx, a), print_tm_in(ctx, b), print_ty_in(ctx, ty)),
                ))
            }
        })
    }

    pub fn equal_ctxs(&self, g: &Ctx, d: &Ctx) -> Verdict {
        self.run(|ck| {
            ck.enter_ctx(d)?;
            ck.reset_scope();
            if g.len() != d.len() {
                return Err(ck.type_error(
                    "Ctx-EqExt",
                    "contexts have different lengths".into(),
                    format!("{} = {} ctx", print_ctx(g), print_ctx(d)),
                ));
            }
            for (i, ((n, a), (_, b))) in g.entries().iter().zip(d.entries()).enumerate() {
                if g.entries()[..i].iter().any(|(m, _)| m.as_str() == n.as_str()) {
                    return Err(ck.type_error(
                        "Ctx-Ext",
                        format!("variable {} is already in the context", n.as_str()),
                        format!("{} ctx", print_ctx(&g.prefix(i + 1))),
                    ));
                }
                let va = ck.check_ty_in(a)?;
                let vb = ck.check_ty_in(b)?;
                if !ck.conv_ty(&va, &vb)? {
                    let pre = g.prefix(i);
                    return Err(ck.not_equal(
                        "Ctx-EqExt",
                        format!("{} = {} type", print_ty_in(&pre, a), print_ty_in(&pre, b)),
                    ));
                }
                ck.push(n.clone(), va, a.clone());
            }
            Ok(())
        })
    }

    fn reset_scope(&self) {
        self.levels.borrow_mut().clear();
        self.syn.borrow_mut().clear();
    }

    /// Δ ⊢ (f₁, …, f_n) : Γ.
    pub fn check_ctx_morphism(&self, dom: &Ctx, comps: &[Tm], cod: &Ctx) -> Verdict {
        self.run(|ck| {
            ck.enter_ctx(cod)?;
            ck.reset_scope();
            ck.enter_ctx(dom)?;
            if comps.len() != cod.len() {
                return Err(ck.type_error(
                    "Ctx-Mor",
                    format!("expected {} components, got {}", cod.len(), comps.len()),
                    format!("{} |- ({} components) : {}", print_ctx(dom), comps.len(), print_ctx(cod)),
                ));
            }
            let env = ck.env();
            let mut vals = Vec::new();
            for (g, (_, a)) in comps.iter().zip(cod.entries()) {
                let ty = ck.eval_ty(&vals, a)?;
                ck.check_in(g, &ty)?;
                vals.push(ck.eval(&env, g)?);
            }
            Ok(())
        })
    }

    /// Componentwise judgmental equality of two morphisms `dom → cod`.
    pub fn equal_ctx_morphisms(&self, dom: &Ctx, f: &[Tm], g: &[Tm], cod: &Ctx) -> Verdict {
        self.run(|ck| {
            ck.enter_ctx(dom)?;
            if f.len() != cod.len() || g.len() != cod.len() {
                return Err(ck.type_error("Ctx-Mor", "component count mismatch".into(), String::new()));
            }
            let env = ck.env();
            let mut vals = Vec::new();
            for ((a, b), (_, t)) in f.iter().zip(g).zip(cod.entries()) {
                let ty = ck.eval_ty(&vals, t)?;
                ck.check_in(a, &ty)?;
                ck.check_in(b, &ty)?;
                let va = ck.eval(&env, a)?;
                let vb = ck.eval(&env, b)?;
                if ck.rb(&ty, &va)? != ck.rb(&ty, &vb)? {
                    return Err(ck.not_equal(
                        "Ctx-Mor",
                        format!("{} = {}", print_tm_in(dom, a), print_tm_in(dom, b)),
                    ));
                }
                vals.push(va);
            }
            Ok(())
        })
    }

    /// β-normal η-long form of Γ ⊢ a : A.
    pub fn normalize_term(&self, ctx: &Ctx, a: &Tm, ty: &Ty) -> Result<Tm, CheckError> {
        self.reset();
        let r = (|| {
            self.enter_ctx(ctx)?;
            let vt = self.check_ty_in(ty)?;
            self.check_in(a, &vt)?;
            self.rb(&vt, &self.eval(&self.env(), a)?)
        })();
        self.reset();
        r
    }

    pub fn normalize_type(&self, ctx: &Ctx, a: &Ty) -> Result<Ty, CheckError> {
        self.reset();
        let r = (|| {
            self.enter_ctx(ctx)?;
            let vt = self.check_ty_in(a)?;
            self.rb_ty(&vt)
        })();
        self.reset();
        r
    }

    /// The R^Σ-encoded projections of Γ ⊢ p : Σ(x:A)B.
    pub fn derived_projections(&self, ctx: &Ctx, p: &Tm, a: &Ty, b: &Ty) -> Result<(Tm, Tm), CheckError> {
        let sig = Ty::Sigma(Name::new("x"), Arc::new(a.clone()), Arc::new(b.clone()));
        match self.check_term(ctx, p, &sig) {
            Verdict::Derivable => Ok((Tm::proj1(p.clone(), a, b), Tm::proj2(p.clone(), a, b))),
            Verdict::NotDerivable { reason, subgoal } => {
                Err(CheckError::Type(TypeError { rule: "Σ-Elim", message: reason, subgoal }))
            }
            Verdict::Unknown { .. } => Err(CheckError::OutOfFuel),
        }
    }

    pub fn judge(&self, j: &Judgement) -> Verdict {
        match j {
            Judgement::Ctx(g) => self.check_ctx(g),
            Judgement::Type(g, a) => self.check_type(g, a),
            Judgement::Term(g, a, t) => self.check_term(g, a, t),
            Judgement::CtxEq(g, d) => self.equal_ctxs(g, d),
            Judgement::TypeEq(g, a, b) => self.equal_types(g, a, b),
            Judgement::TermEq(g, a, b, t) => self.equal_terms(g, a, b, t),
        }
    }
}

pub fn check_ctx(sig: &ValidatedSignature, ctx: &Ctx) -> Verdict {
    Checker::new(sig).check_ctx(ctx)
}

pub fn check_type(sig: &ValidatedSignature, ctx: &Ctx, a: &Ty) -> Verdict {
    Checker::new(sig).check_type(ctx, a)
}

pub fn check_term(sig: &ValidatedSignature, ctx: &Ctx, a: &Tm, ty: &Ty) -> Verdict {
    Checker::new(sig).check_term(ctx, a, ty)
}

pub fn infer_term(sig: &ValidatedSignature, ctx: &Ctx, a: &Tm) -> Result<Ty, CheckError> {
    Checker::new(sig).infer_term(ctx, a)
}

pub fn equal_terms(sig: &ValidatedSignature, ctx: &Ctx, a: &Tm, b: &Tm, ty: &Ty) -> Verdict {
    Checker::new(sig).equal_terms(ctx, a, b, ty)
}

pub fn equal_types(sig: &ValidatedSignature, ctx: &Ctx, a: &Ty, b: &Ty) -> Verdict {
    Checker::new(sig).equal_types(ctx, a, b)
}

pub fn equal_ctxs(sig: &ValidatedSignature, g: &Ctx, d: &Ctx) -> Verdict {
    Checker::new(sig).equal_ctxs(g, d)
}

pub fn check_ctx_morphism(sig: &ValidatedSignature, f: &CtxMor) -> Verdict {
    Checker::new(sig).check_ctx_morphism(&f.dom, &f.comps, &f.cod)
}

pub fn derived_projections(
    sig: &ValidatedSignature,
    ctx: &Ctx,
    p: &Tm,
    a: &Ty,
    b: &Ty,
) -> Result<(Tm, Tm), CheckError> {
    Checker::new(sig).derived_projections(ctx, p, a, b)
}

pub fn judge(sig: &ValidatedSignature, j: &Judgement) -> Verdict {
    Checker::new(sig).judge(j)
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx_prefix = |g: &Ctx| {
            let s = print_ctx(g);
            if s.is_empty() {
                s
            } else {
                s + " "
            }
        };
        let s = match self {
            Judgement::Ctx(g) => format!("{}ctx", ctx_prefix(g)),
            Judgement::CtxEq(g, d) => format!("{} = {} ctx", print_ctx(g), print_ctx(d)),
            Judgement::Type(g, a) => format!("{}|- {} type", ctx_prefix(g), print_ty_in(g, a)),
            Judgement::Term(g, a, t) => format!("{}|- {} : {}", ctx_prefix(g), print_tm_in(g, a), print_ty_in(g, t)),
            Judgement::TypeEq(g, a, b) => {
                format!("{}|- {} = {} type", ctx_prefix(g), print_ty_in(g, a), print_ty_in(g, b))
            }
            Judgement::TermEq(g, a, b, t) => format!(
                "{}|- {} = {} : {}",
                ctx_prefix(g),
                print_tm_in(g, a),
                print_tm_in(g, b),
                print_ty_in(g, t)
            ),
        };
        f.write_str(&s)
    }
}
