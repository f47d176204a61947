//! Interpretation of well-typed syntax in any [`Model`], given a structure
//! assigning D-objects to type constants and D-morphisms to term constants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::checker::{CheckError, Checker, Judgement, Verdict};
use crate::cwf::{app, pair_iso, section, sigma_elim, unit_over, Model, ModelError};
use crate::print::{print_ctx, print_tm_in, print_ty_in};
use crate::signature::{AxiomEq, ValidatedSignature};
use crate::syntax::{compose_cm, Ctx, CtxMor, Sym, Tm, Ty};
use crate::term_model::{TermModel, TmIn, TyIn};

/// S(C) ∈ 𝒟(S(Δ_C)) for type constants, S(F) : S(Δ_F) ⇾ S(B_F) for term constants.
pub struct Structure<M: Model> {
    pub types: BTreeMap<Sym, M::DObj>,
    pub terms: BTreeMap<Sym, M::DMor>,
}

impl<M: Model> Default for Structure<M> {
    fn default() -> Self {
        Structure { types: BTreeMap::new(), terms: BTreeMap::new() }
    }
}

impl<M: Model> Clone for Structure<M> {
    fn clone(&self) -> Self {
        Structure { types: self.types.clone(), terms: self.terms.clone() }
    }
}

impl<M: Model> Structure<M> {
    pub fn new() -> Self {
        Self::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterpError {
    /// The input is not well typed, so it has no denotation.
    IllTyped(String),
    MissingConstant(Sym),
    Model(ModelError),
    OutOfFuel,
}

impl fmt::Display for InterpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpError::IllTyped(m) => write!(f, "ill-typed: {}", m),
            InterpError::MissingConstant(c) => write!(f, "no interpretation for constant {}", c),
            InterpError::Model(e) => write!(f, "{}", e),
            InterpError::OutOfFuel => f.write_str("axiom rewriting fuel exhausted"),
        }
    }
}

impl From<ModelError> for InterpError {
    fn from(e: ModelError) -> Self {
        InterpError::Model(e)
    }
}

impl From<CheckError> for InterpError {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Type(t) => InterpError::IllTyped(format!("{}", t)),
            CheckError::OutOfFuel => InterpError::OutOfFuel,
        }
    }
}

fn verdict(v: Verdict) -> Result<(), InterpError> {
    match v {
        Verdict::Derivable => Ok(()),
        Verdict::NotDerivable { reason, subgoal } => Err(InterpError::IllTyped(format!("{} in {}", reason, subgoal))),
        Verdict::Unknown { .. } => Err(InterpError::OutOfFuel),
    }
}

pub type IResult<T> = Result<T, InterpError>;

/// Interprets judgements of one signature in one model. Results are memoized
/// per α-equivalence class of the input.
pub struct Interpreter<'a, 's, M: Model> {
    pub model: &'a M,
    pub structure: &'a Structure<M>,
    ck: Checker<'s>,
    ctx_memo: RefCell<BTreeMap<Ctx, M::Obj>>,
    ty_memo: RefCell<BTreeMap<(Ctx, Ty), M::DObj>>,
    tm_memo: RefCell<BTreeMap<(Ctx, Tm, Ty), M::DMor>>,
}

impl<'a, 's, M: Model> Interpreter<'a, 's, M> {
    pub fn new(model: &'a M, structure: &'a Structure<M>, sig: &'s ValidatedSignature) -> Self {
        Self::with_checker(model, structure, Checker::new(sig))
    }

    pub fn with_checker(model: &'a M, structure: &'a Structure<M>, ck: Checker<'s>) -> Self {
        Interpreter {
            model,
            structure,
            ck,
            ctx_memo: RefCell::new(BTreeMap::new()),
            ty_memo: RefCell::new(BTreeMap::new()),
            tm_memo: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn checker(&self) -> &Checker<'s> {
        &self.ck
    }

    /// ⟦Γ⟧
    pub fn ctx(&self, g: &Ctx) -> IResult<M::Obj> {
        if let Some(o) = self.ctx_memo.borrow().get(g) {
            return Ok(o.clone());
        }
        let o = match g.parent() {
            None => self.model.terminal(),
            Some(p) => {
                let (_, a) = g.last().unwrap();
                self.model.ext(&self.ty(&p, a)?)?
            }
        };
        self.ctx_memo.borrow_mut().insert(g.clone(), o.clone());
        Ok(o)
    }

    /// ⟦Γ ⊢ A⟧ ∈ 𝒟(⟦Γ⟧)
    pub fn ty(&self, g: &Ctx, a: &Ty) -> IResult<M::DObj> {
        let key = (g.clone(), a.clone());
        if let Some(o) = self.ty_memo.borrow().get(&key) {
            return Ok(o.clone());
        }
        let m = self.model;
        let d = match a {
            Ty::Unit => unit_over(m, &self.ctx(g)?)?,
            Ty::Pi(n, dom, cod) | Ty::Sigma(n, dom, cod) => {
                let da = self.ty(g, dom)?;
                let db = self.ty(&g.push(g.fresh_name(n.as_str()), (**dom).clone()), cod)?;
                if matches!(a, Ty::Pi(..)) {
                    m.pi(&da, &db)?
                } else {
                    m.sigma(&da, &db)?
                }
            }
            Ty::Const(c, args) => {
                let decl = self.ck.signature().type_const(c).ok_or_else(|| InterpError::MissingConstant(c.clone()))?;
                let s = self.structure.types.get(c).ok_or_else(|| InterpError::MissingConstant(c.clone()))?;
                let f = self.mor(g, args, &decl.tele)?;
                m.reindex(s, &f)?
            }
        };
        self.ty_memo.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    /// ⟦(f₁, …, f_n)⟧ : ⟦Γ⟧ → ⟦Δ⟧
    pub fn mor(&self, g: &Ctx, comps: &[Tm], cod: &Ctx) -> IResult<M::Mor> {
        if comps.len() != cod.len() {
            return Err(InterpError::IllTyped(format!("{} components for a context of length {}", comps.len(), cod.len())));
        }
        let m = self.model;
        let mut phi = m.bang(&self.ctx(g)?)?;
        for (i, t) in comps.iter().enumerate() {
            let env: Vec<Tm> = comps[..i].iter().rev().cloned().collect();
            let a = &cod.entries()[i].1;
            let a_here = a.instantiate(&env).map_err(|e| InterpError::IllTyped(format!("{}", e)))?;
            let dt = self.tm(g, t, &a_here)?;
            phi = m.extend(&phi, &self.ty(&cod.prefix(i), a)?, &dt)?;
        }
        Ok(phi)
    }

    pub fn ctx_mor(&self, f: &CtxMor) -> IResult<M::Mor> {
        verdict(self.ck.check_ctx_morphism(&f.dom, &f.comps, &f.cod))?;
        self.mor(&f.dom, &f.comps, &f.cod)
    }

    /// ⟦Γ ⊢ t : A⟧ : ⟦Γ⟧ ⇾ ⟦A⟧. Undefined (an error) unless the judgement is derivable.
    pub fn term(&self, g: &Ctx, t: &Tm, a: &Ty) -> IResult<M::DMor> {
        verdict(self.ck.check_term(g, t, a))?;
        self.tm(g, t, a)
    }

    fn whnf_ty(&self, g: &Ctx, a: &Ty) -> IResult<Ty> {
        match a {
            Ty::Const(..) => Ok(self.ck.normalize_type(g, a)?),
            _ => Ok(a.clone()),
        }
    }

    fn tm(&self, g: &Ctx, t: &Tm, a: &Ty) -> IResult<M::DMor> {
        let key = (g.clone(), t.clone(), a.clone());
        if let Some(o) = self.tm_memo.borrow().get(&key) {
            return Ok(o.clone());
        }
        let d = self.tm_uncached(g, t, a)?;
        self.tm_memo.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    fn tm_uncached(&self, g: &Ctx, t: &Tm, a: &Ty) -> IResult<M::DMor> {
        let m = self.model;
        match t {
            Tm::Var(v) => {
                let p = g.parent().ok_or_else(|| InterpError::IllTyped("unbound variable".into()))?;
                let (_, last) = g.last().unwrap();
                let dl = self.ty(&p, last)?;
                if v.index == 0 {
                    Ok(m.p2(&dl)?)
                } else {
                    let inner = Tm::var(v.index - 1, v.name.as_str());
                    let ty = p.lookup(v.index - 1).ok_or_else(|| InterpError::IllTyped("unbound variable".into()))?;
                    let d = self.tm(&p, &inner, &ty)?;
                    Ok(m.reindex_dmor(&d, &m.p1(&dl)?)?)
                }
            }
            Tm::Star => Ok(m.unit_bang(&self.ctx(g)?)?),
            Tm::Lam(_, _, body) => match self.whnf_ty(g, a)? {
                Ty::Pi(n, dom, cod) => {
                    let da = self.ty(g, &dom)?;
                    let inner = g.push(g.fresh_name(n.as_str()), (*dom).clone());
                    let db = self.ty(&inner, &cod)?;
                    Ok(m.lam(&da, &db, &self.tm(&inner, body, &cod)?)?)
                }
                _ => Err(InterpError::IllTyped("λ at a non-Π type".into())),
            },
            Tm::App(f, x) => match self.ck.infer_term(g, f)? {
                Ty::Pi(n, dom, cod) => {
                    let da = self.ty(g, &dom)?;
                    let db = self.ty(&g.push(g.fresh_name(n.as_str()), (*dom).clone()), &cod)?;
                    let df = self.tm(g, f, &Ty::Pi(n, dom.clone(), cod))?;
                    Ok(app(m, &da, &db, &df, &self.tm(g, x, &dom)?)?)
                }
                _ => Err(InterpError::IllTyped("application of a non-function".into())),
            },
            Tm::Pair(x, y) => match self.whnf_ty(g, a)? {
                Ty::Sigma(n, dom, cod) => {
                    // π₂{Pair ∘ ⟨ā, ⟦b⟧⟩}
                    let da = self.ty(g, &dom)?;
                    let db = self.ty(&g.push(g.fresh_name(n.as_str()), (*dom).clone()), &cod)?;
                    let abar = section(m, &da, &self.tm(g, x, &dom)?)?;
                    let u = m.extend(&abar, &db, &self.tm(g, y, &cod.subst(x))?)?;
                    let (pair, _) = pair_iso(m, &da, &db)?;
                    let s = m.sigma(&da, &db)?;
                    Ok(m.reindex_dmor(&m.p2(&s)?, &m.compose(&pair, &u)?)?)
                }
                _ => Err(InterpError::IllTyped("pair at a non-Σ type".into())),
            },
            Tm::RSig { z, motive, x, y, body, scrut } => match self.ck.infer_term(g, scrut)? {
                Ty::Sigma(n, dom, cod) => {
                    let da = self.ty(g, &dom)?;
                    let gx = g.push(g.fresh_name(x.as_str()), (*dom).clone());
                    let db = self.ty(&g.push(g.fresh_name(n.as_str()), (*dom).clone()), &cod)?;
                    let gxy = gx.push(gx.fresh_name(y.as_str()), (*cod).clone());
                    let body_ty = motive.shift_from(2, 1).subst(&Tm::pair(Tm::var(1, x.as_str()), Tm::var(0, y.as_str())));
                    let dg = self.tm(&gxy, body, &body_ty)?;
                    let sig = Ty::Sigma(n, dom, cod);
                    let ds = m.sigma(&da, &db)?;
                    let dp = self.tm(g, scrut, &sig)?;
                    let _ = z;
                    Ok(m.reindex_dmor(&sigma_elim(m, &da, &db, &dg)?, &section(m, &ds, &dp)?)?)
                }
                _ => Err(InterpError::IllTyped("eliminated term is not a pair".into())),
            },
            Tm::Const(c, args) => {
                let decl = self.ck.signature().term_const(c).ok_or_else(|| InterpError::MissingConstant(c.clone()))?;
                let s = self.structure.terms.get(c).ok_or_else(|| InterpError::MissingConstant(c.clone()))?;
                let f = self.mor(g, args, &decl.tele)?;
                Ok(m.reindex_dmor(s, &f)?)
            }
        }
    }
}

/// One way a structure fails to be an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// The constant or axiom at fault.
    pub item: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.item, self.message)
    }
}

/// Checks that S interprets every constant at its declared format and
/// satisfies every axiom. Returns all violations found.
pub fn validate_algebra<M: Model>(model: &M, sig: &ValidatedSignature, s: &Structure<M>) -> Vec<Violation> {
    let it = Interpreter::new(model, s, sig);
    let mut out = Vec::new();
    let mut bad = |item: String, message: String| out.push(Violation { item, message });
    for c in sig.consts() {
        let name = format!("{}", c.name);
        let tele = match it.ctx(&c.tele) {
            Ok(t) => t,
            Err(e) => {
                bad(name, format!("telescope has no denotation: {}", e));
                continue;
            }
        };
        match &c.cod {
            None => match s.types.get(&c.name) {
                None => bad(name, "missing".into()),
                Some(d) => {
                    if !model.eq_obj(&model.base(d), &tele) {
                        bad(name, format!("interpreted over {:?}, expected {:?}", model.base(d), tele));
                    }
                }
            },
            Some(b) => match s.terms.get(&c.name) {
                None => bad(name, "missing".into()),
                Some(f) => match it.ty(&c.tele, b) {
                    Err(e) => bad(name, format!("codomain has no denotation: {}", e)),
                    Ok(db) => {
                        if !model.eq_obj(&model.dmor_dom(f), &tele) || !model.eq_dobj(&model.dmor_cod(f), &db) {
                            bad(name, format!("{:?} does not inhabit {:?}", f, db));
                        }
                    }
                },
            },
        }
    }
    for (i, ax) in sig.axioms().iter().enumerate() {
        let label = format!("axiom {}", i + 1);
        let r: IResult<Option<String>> = (|| match &ax.eq {
            AxiomEq::Ty(l, r) => {
                let (dl, dr) = (it.ty(&ax.ctx, l)?, it.ty(&ax.ctx, r)?);
                Ok((!model.eq_dobj(&dl, &dr)).then(|| {
                    format!(
                        "{} = {} fails: {:?} vs {:?}",
                        print_ty_in(&ax.ctx, l),
                        print_ty_in(&ax.ctx, r),
                        dl,
                        dr
                    )
                }))
            }
            AxiomEq::Tm(l, r, a) => {
                let (dl, dr) = (it.tm(&ax.ctx, l, a)?, it.tm(&ax.ctx, r, a)?);
                Ok((!model.eq_dmor(&dl, &dr)).then(|| {
                    format!(
                        "{} = {} fails: {:?} vs {:?}",
                        print_tm_in(&ax.ctx, l),
                        print_tm_in(&ax.ctx, r),
                        dl,
                        dr
                    )
                }))
            }
        })();
        match r {
            Ok(None) => {}
            Ok(Some(msg)) => bad(label, msg),
            Err(e) => bad(label, format!("{}", e)),
        }
    }
    out
}

/// The generic structure in the term model: S(C) = (Δ_C ⊢ C[x⃗]) and
/// S(F) = (Δ_F ⊢ F[x⃗] : B_F).
pub fn generic_structure<'s>(sig: &ValidatedSignature) -> Structure<TermModel<'s>> {
    let mut s = Structure::new();
    for c in sig.consts() {
        let n = c.tele.len();
        let args: Vec<Tm> = (0..n).map(|k| Tm::var(n - 1 - k, c.tele.entries()[k].0.as_str())).collect();
        match &c.cod {
            None => {
                s.types.insert(c.name.clone(), TyIn { ctx: c.tele.clone(), ty: Ty::Const(c.name.clone(), args) });
            }
            Some(b) => {
                let tm = TmIn { ctx: c.tele.clone(), tm: Tm::Const(c.name.clone(), args), ty: b.clone() };
                s.terms.insert(c.name.clone(), tm);
            }
        }
    }
    s
}

/// Soundness on one judgement: a derivable typing has a denotation of the
/// right D-object, and a derivable equation has equal sides.
/// `Ok(None)` means the judgement holds semantically.
pub fn check_soundness<M: Model>(it: &Interpreter<'_, '_, M>, j: &Judgement) -> IResult<Option<String>> {
    let m = it.model;
    Ok(match j {
        Judgement::Ctx(g) => {
            it.ctx(g)?;
            None
        }
        Judgement::Type(g, a) => {
            let d = it.ty(g, a)?;
            (!m.eq_obj(&m.base(&d), &it.ctx(g)?)).then(|| "type over the wrong object".into())
        }
        Judgement::Term(g, t, a) => {
            let d = it.term(g, t, a)?;
            let want = it.ty(g, a)?;
            (!m.eq_dobj(&m.dmor_cod(&d), &want)).then(|| format!("{:?} does not inhabit {:?}", d, want))
        }
        Judgement::CtxEq(g, d) => (!m.eq_obj(&it.ctx(g)?, &it.ctx(d)?)).then(|| "contexts differ".into()),
        Judgement::TypeEq(g, a, b) => {
            let (x, y) = (it.ty(g, a)?, it.ty(g, b)?);
            (!m.eq_dobj(&x, &y)).then(|| format!("{:?} vs {:?}", x, y))
        }
        Judgement::TermEq(g, a, b, t) => {
            let (x, y) = (it.term(g, a, t)?, it.term(g, b, t)?);
            (!m.eq_dmor(&x, &y)).then(|| format!("{:?} vs {:?}", x, y))
        }
    })
}

/// ⟦t[f]⟧ = ⟦t⟧{⟦f⟧} for Γ ⊢ t : A and f : Δ → Γ.
pub fn check_substitution<M: Model>(
    it: &Interpreter<'_, '_, M>,
    g: &Ctx,
    t: &Tm,
    a: &Ty,
    f: &CtxMor,
) -> IResult<Option<String>> {
    let m = it.model;
    let lhs = it.term(&f.dom, &t.gen_subst(f).map_err(|e| InterpError::IllTyped(format!("{}", e)))?, &a.gen_subst(f).map_err(|e| InterpError::IllTyped(format!("{}", e)))?)?;
    let df = it.ctx_mor(f)?;
    let rhs = m.reindex_dmor(&it.term(g, t, a)?, &df)?;
    Ok((!m.eq_dmor(&lhs, &rhs)).then(|| format!("{:?} vs {:?}", lhs, rhs)))
}

/// ⟦A[f]⟧ = ⟦A⟧{⟦f⟧} for Γ ⊢ A type and f : Δ → Γ.
pub fn check_substitution_ty<M: Model>(
    it: &Interpreter<'_, '_, M>,
    g: &Ctx,
    a: &Ty,
    f: &CtxMor,
) -> IResult<Option<String>> {
    let m = it.model;
    let lhs = it.ty(&f.dom, &a.gen_subst(f).map_err(|e| InterpError::IllTyped(format!("{}", e)))?)?;
    let rhs = m.reindex(&it.ty(g, a)?, &it.ctx_mor(f)?)?;
    Ok((!m.eq_dobj(&lhs, &rhs)).then(|| format!("{:?} vs {:?}", lhs, rhs)))
}

/// ⟦h ∘ f⟧ = ⟦h⟧ ∘ ⟦f⟧ for f : Δ → Γ and h : Γ → Θ.
pub fn check_substitution_mor<M: Model>(
    it: &Interpreter<'_, '_, M>,
    h: &CtxMor,
    f: &CtxMor,
) -> IResult<Option<String>> {
    let m = it.model;
    let hf = compose_cm(h, f).map_err(|e| InterpError::IllTyped(format!("{}", e)))?;
    let lhs = it.ctx_mor(&hf)?;
    let rhs = m.compose(&it.ctx_mor(h)?, &it.ctx_mor(f)?)?;
    Ok((!m.eq_mor(&lhs, &rhs)).then(|| format!("{:?} vs {:?}", lhs, rhs)))
}

/// In the generic model, ⟦t⟧ is the class of t itself.
pub fn check_generic_identity(
    it: &Interpreter<'_, '_, TermModel<'_>>,
    g: &Ctx,
    t: &Tm,
    a: &Ty,
) -> IResult<Option<String>> {
    let d = it.term(g, t, a)?;
    let own = TmIn { ctx: g.clone(), tm: t.clone(), ty: a.clone() };
    Ok((!it.model.eq_dmor(&d, &own)).then(|| {
        format!("{} |- {} denotes {:?}", print_ctx(g), print_tm_in(g, t), d)
    }))
}

/// Checker equality and denotational equality in the generic model agree.
pub fn check_completeness(
    it: &Interpreter<'_, '_, TermModel<'_>>,
    g: &Ctx,
    a: &Tm,
    b: &Tm,
    ty: &Ty,
) -> IResult<Option<String>> {
    let syntactic = it.checker().equal_terms(g, a, b, ty);
    if matches!(syntactic, Verdict::Unknown { .. }) {
        return Err(InterpError::OutOfFuel);
    }
    let semantic = it.model.eq_dmor(&it.term(g, a, ty)?, &it.term(g, b, ty)?);
    Ok((syntactic.is_derivable() != semantic).then(|| {
        format!(
            "{} = {} : checker says {}, model says {}",
            print_tm_in(g, a),
            print_tm_in(g, b),
            syntactic.is_derivable(),
            semantic
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{DFinSet, Elem, FinSet, FinSetModel};
    use crate::parser::parse_file;
    use crate::signature::{validate_signature, Signature, ValidateOptions};
    use crate::syntax::Name;

    fn sig(src: &str) -> ValidatedSignature {
        let f = parse_file(src).unwrap();
        validate_signature(&Signature::from_source(&f), ValidateOptions { trust_axioms: true }).unwrap()
    }

    #[test]
    fn closed_terms_in_finsets() {
        let sig = ValidatedSignature::empty();
        let m = FinSetModel::new();
        let s = Structure::new();
        let it = Interpreter::new(&m, &s, &sig);
        let ty = Ty::product(Ty::Unit, Ty::arrow(Ty::Unit, Ty::Unit));
        let t = Tm::pair(Tm::Star, Tm::lam("x", Tm::var(0, "x")));
        let d = it.term(&Ctx::empty(), &t, &ty).unwrap();
        assert_eq!(d.table().len(), 1);
        assert!(matches!(&d.table()[0], Elem::Pair(..)));
        assert!(it.term(&Ctx::empty(), &Tm::Star, &ty).is_err());
    }

    #[test]
    fn constants_and_axioms() {
        let sig = sig("typeconst B ()\ntermconst t () : B[]\ntermconst f () : B[]\naxiom () |- t[] = f[] : B[]\n");
        let m = FinSetModel::new();
        let one = FinSet::singleton();
        let mut s: Structure<FinSetModel> = Structure::new();
        s.types.insert(Sym::new("B"), DFinSet::constant(one.clone(), FinSet::range(2)));
        let b = s.types[&Sym::new("B")].clone();
        s.terms.insert(Sym::new("t"), crate::finset::DFinFun::new(b.clone(), alloc::vec![Elem::Int(0)]).unwrap());
        s.terms.insert(Sym::new("f"), crate::finset::DFinFun::new(b.clone(), alloc::vec![Elem::Int(1)]).unwrap());
        let v = validate_algebra(&m, &sig, &s);
        assert_eq!(v.len(), 1, "{:?}", v);
        s.terms.insert(Sym::new("f"), crate::finset::DFinFun::new(b, alloc::vec![Elem::Int(0)]).unwrap());
        assert!(validate_algebra(&m, &sig, &s).is_empty());
    }

    #[test]
    fn generic_model_interprets_terms_as_themselves() {
        let sig = sig("typeconst B ()\ntermconst t () : B[]\n");
        let m = TermModel::new(&sig);
        let s = generic_structure(&sig);
        assert!(validate_algebra(&m, &sig, &s).is_empty());
        let it = Interpreter::new(&m, &s, &sig);
        let g = Ctx::empty().push(Name::new("p"), Ty::product(Ty::constant("B", alloc::vec![]), Ty::Unit));
        let t = Tm::app(Tm::lam_ann("q", Ty::Unit, Tm::proj1(Tm::var(1, "p"), &Ty::constant("B", alloc::vec![]), &Ty::Unit)), Tm::Star);
        assert_eq!(check_generic_identity(&it, &g, &t, &Ty::constant("B", alloc::vec![])), Ok(None));
    }
}
