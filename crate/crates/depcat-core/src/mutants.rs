//! Deliberately broken models, for checking that the law suites notice.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bridge::{Atomized, CObj, CMor, CtxCcc, FinCtxCcc};
use crate::cwf::{MResult, Model, ModelError, Sampler};
use crate::finset::{DFinFun, DFinSet, Elem, FinFun, FinSet, FinSetModel, FinSetSampler};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// v_A picks the least element of its fiber.
    WrongV,
    /// Σ-elements carry the size of the base, so Σ no longer commutes with reindexing.
    SigmaCoherence,
    /// The terminal object has a second element, which `!` ignores.
    NonUniqueBang,
    /// Λ and dev permute Π-fibers by the position of the base point.
    DevSubst,
}

impl Fault {
    pub const ALL: &'static [Fault] = &[Fault::WrongV, Fault::SigmaCoherence, Fault::NonUniqueBang, Fault::DevSubst];

    pub fn name(self) -> &'static str {
        match self {
            Fault::WrongV => "wrong v",
            Fault::SigmaCoherence => "broken Σ coherence",
            Fault::NonUniqueBang => "non-unique bang",
            Fault::DevSubst => "broken dev substitution",
        }
    }
}

/// FinSet with one operation broken.
#[derive(Clone, Debug)]
pub struct Mutant {
    pub inner: FinSetModel,
    pub fault: Fault,
}

impl Mutant {
    pub fn new(fault: Fault) -> Self {
        Mutant { inner: FinSetModel::new(), fault }
    }

    fn sigma_tag(a: &DFinSet) -> u32 {
        a.base.len() as u32
    }

    fn shift(base: &FinSet, x: &Elem) -> usize {
        base.index_of(x).unwrap_or(0)
    }

    /// The element `k` places after `e` in `fiber`, cyclically.
    fn rotate(fiber: &FinSet, e: &Elem, k: usize, forward: bool) -> MResult<Elem> {
        let n = fiber.len();
        let i = fiber.index_of(e).ok_or_else(|| ModelError::Mismatch("not in the Π-fiber".into()))?;
        let j = if forward { (i + k) % n } else { (i + n - k % n) % n };
        Ok(fiber.elems()[j].clone())
    }
}

fn split(e: &Elem) -> MResult<(&Elem, &Elem)> {
    match e {
        Elem::Pair(a, b) => Ok((a, b)),
        _ => Err(ModelError::Mismatch("expected a pair".into())),
    }
}

fn untag(e: &Elem) -> MResult<&Elem> {
    match e {
        Elem::Tag(_, x) => Ok(x),
        _ => Err(ModelError::Mismatch("expected a tagged element".into())),
    }
}

fn ns() -> Elem {
    Elem::sym("⋆")
}

impl Model for Mutant {
    type Obj = FinSet;
    type Mor = FinFun;
    type DObj = DFinSet;
    type DMor = DFinFun;

    fn terminal(&self) -> FinSet {
        match self.fault {
            Fault::NonUniqueBang => FinSet::new(alloc::vec![Elem::Unit, ns()]),
            _ => self.inner.terminal(),
        }
    }

    fn bang(&self, g: &FinSet) -> MResult<FinFun> {
        match self.fault {
            Fault::NonUniqueBang => FinFun::new(g.clone(), self.terminal(), alloc::vec![Elem::Unit; g.len()]),
            _ => self.inner.bang(g),
        }
    }

    fn id(&self, g: &FinSet) -> MResult<FinFun> {
        self.inner.id(g)
    }

    fn compose(&self, g: &FinFun, f: &FinFun) -> MResult<FinFun> {
        self.inner.compose(g, f)
    }

    fn dom(&self, f: &FinFun) -> FinSet {
        self.inner.dom(f)
    }

    fn cod(&self, f: &FinFun) -> FinSet {
        self.inner.cod(f)
    }

    fn base(&self, a: &DFinSet) -> FinSet {
        self.inner.base(a)
    }

    fn dmor_dom(&self, f: &DFinFun) -> FinSet {
        self.inner.dmor_dom(f)
    }

    fn dmor_cod(&self, f: &DFinFun) -> DFinSet {
        self.inner.dmor_cod(f)
    }

    fn reindex(&self, a: &DFinSet, phi: &FinFun) -> MResult<DFinSet> {
        self.inner.reindex(a, phi)
    }

    fn reindex_dmor(&self, f: &DFinFun, phi: &FinFun) -> MResult<DFinFun> {
        self.inner.reindex_dmor(f, phi)
    }

    fn ext(&self, a: &DFinSet) -> MResult<FinSet> {
        self.inner.ext(a)
    }

    fn p1(&self, a: &DFinSet) -> MResult<FinFun> {
        self.inner.p1(a)
    }

    fn p2(&self, a: &DFinSet) -> MResult<DFinFun> {
        let v = self.inner.p2(a)?;
        if self.fault != Fault::WrongV {
            return Ok(v);
        }
        let table = v
            .dom()
            .elems()
            .iter()
            .map(|e| Ok(a.fiber(split(e)?.0).and_then(|f| f.elems().first()).cloned().unwrap_or(Elem::Unit)))
            .collect::<MResult<Vec<_>>>()?;
        DFinFun::new(v.cod.clone(), table)
    }

    fn extend(&self, phi: &FinFun, a: &DFinSet, g: &DFinFun) -> MResult<FinFun> {
        self.inner.extend(phi, a, g)
    }

    fn unit(&self) -> DFinSet {
        DFinSet::constant(self.terminal(), FinSet::singleton())
    }

    fn unit_bang(&self, g: &FinSet) -> MResult<DFinFun> {
        self.inner.unit_bang(g)
    }

    fn sigma(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinSet> {
        let s = self.inner.sigma(a, b)?;
        if self.fault != Fault::SigmaCoherence {
            return Ok(s);
        }
        let t = Self::sigma_tag(a);
        let fibers = s
            .fibers()
            .iter()
            .map(|f| FinSet::new(f.elems().iter().map(|e| Elem::Tag(t, Arc::new(e.clone()))).collect()))
            .collect();
        DFinSet::new(s.base.clone(), fibers)
    }

    fn varpi1(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinFun> {
        if self.fault != Fault::SigmaCoherence {
            return self.inner.varpi1(a, b);
        }
        let p = self.p1(&self.sigma(a, b)?)?;
        let cod = self.reindex(a, &p)?;
        let table = p.dom.elems().iter().map(|e| Ok(split(untag(split(e)?.1)?)?.0.clone())).collect::<MResult<_>>()?;
        DFinFun::new(cod, table)
    }

    fn varpi2(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinFun> {
        if self.fault != Fault::SigmaCoherence {
            return self.inner.varpi2(a, b);
        }
        let p = self.p1(&self.sigma(a, b)?)?;
        let u = self.extend(&p, a, &self.varpi1(a, b)?)?;
        let cod = self.reindex(b, &u)?;
        let table = p.dom.elems().iter().map(|e| Ok(split(untag(split(e)?.1)?)?.1.clone())).collect::<MResult<_>>()?;
        DFinFun::new(cod, table)
    }

    fn dpair(&self, phi: &FinFun, a: &DFinSet, b: &DFinSet, g: &DFinFun, h: &DFinFun) -> MResult<DFinFun> {
        let d = self.inner.dpair(phi, a, b, g, h)?;
        if self.fault != Fault::SigmaCoherence {
            return Ok(d);
        }
        let t = Self::sigma_tag(a);
        let cod = self.reindex(&self.sigma(a, b)?, phi)?;
        DFinFun::new(cod, d.table().iter().map(|e| Elem::Tag(t, Arc::new(e.clone()))).collect())
    }

    fn pi(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinSet> {
        self.inner.pi(a, b)
    }

    fn dev(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinFun> {
        if self.fault != Fault::DevSubst {
            return self.inner.dev(a, b);
        }
        let pi = self.pi(a, b)?;
        let d = self.inner.dev(a, b)?;
        let dom = d.dom().clone();
        let mut table = Vec::with_capacity(dom.len());
        for e in dom.elems() {
            let (xf, av) = split(e)?;
            let (x, f) = split(xf)?;
            let fiber = pi.fiber(x).ok_or_else(|| ModelError::Mismatch("dev".into()))?;
            let orig = Self::rotate(fiber, f, Self::shift(&a.base, x), false)?;
            table.push(orig.call(av).cloned().ok_or_else(|| ModelError::Mismatch("dev".into()))?);
        }
        DFinFun::new(d.cod.clone(), table)
    }

    fn lam(&self, a: &DFinSet, b: &DFinSet, f: &DFinFun) -> MResult<DFinFun> {
        let l = self.inner.lam(a, b, f)?;
        if self.fault != Fault::DevSubst {
            return Ok(l);
        }
        let table = a
            .base
            .elems()
            .iter()
            .zip(l.table())
            .zip(l.cod.fibers())
            .map(|((x, e), fiber)| Self::rotate(fiber, e, Self::shift(&a.base, x), true))
            .collect::<MResult<_>>()?;
        DFinFun::new(l.cod.clone(), table)
    }

    fn eq_obj(&self, x: &FinSet, y: &FinSet) -> bool {
        x == y
    }

    fn eq_mor(&self, x: &FinFun, y: &FinFun) -> bool {
        x == y
    }

    fn eq_dobj(&self, x: &DFinSet, y: &DFinSet) -> bool {
        x == y
    }

    fn eq_dmor(&self, x: &DFinFun, y: &DFinFun) -> bool {
        x == y
    }
}

/// The FinSet sampler, driving a mutant.
#[derive(Clone, Debug)]
pub struct MutantSampler(pub FinSetSampler);

impl Sampler<Mutant> for MutantSampler {
    fn object(&mut self) -> FinSet {
        Sampler::<FinSetModel>::object(&mut self.0)
    }

    fn dobj(&mut self, base: &FinSet) -> Option<DFinSet> {
        Sampler::<FinSetModel>::dobj(&mut self.0, base)
    }

    fn mor(&mut self, dom: &FinSet, cod: &FinSet) -> Option<FinFun> {
        Sampler::<FinSetModel>::mor(&mut self.0, dom, cod)
    }

    fn dmor(&mut self, a: &DFinSet) -> Option<DFinFun> {
        Sampler::<FinSetModel>::dmor(&mut self.0, a)
    }

    fn mor_candidates(&mut self, dom: &FinSet, cod: &FinSet, hint: Option<&FinFun>) -> Vec<FinFun> {
        Sampler::<FinSetModel>::mor_candidates(&mut self.0, dom, cod, hint)
    }

    fn dmor_candidates(&mut self, a: &DFinSet, hint: Option<&DFinFun>) -> Vec<DFinFun> {
        Sampler::<FinSetModel>::dmor_candidates(&mut self.0, a, hint)
    }
}

/// A finite contextual CCC whose decompositions list the atoms back to front.
#[derive(Clone, Copy)]
pub struct ReversedDecomposition<'c>(pub &'c FinCtxCcc);

impl<'c> CtxCcc for ReversedDecomposition<'c> {
    type Obj = CObj;
    type Mor = CMor;

    fn terminal(&self) -> CObj {
        self.0.terminal()
    }

    fn id(&self, a: &CObj) -> MResult<CMor> {
        self.0.id(a)
    }

    fn compose(&self, g: &CMor, f: &CMor) -> MResult<CMor> {
        self.0.compose(g, f)
    }

    fn bang(&self, a: &CObj) -> MResult<CMor> {
        self.0.bang(a)
    }

    fn dom(&self, f: &CMor) -> CObj {
        self.0.dom(f)
    }

    fn cod(&self, f: &CMor) -> CObj {
        self.0.cod(f)
    }

    fn product(&self, d: &CObj, g: &CObj) -> MResult<CObj> {
        self.0.product(d, g)
    }

    fn p1(&self, d: &CObj, g: &CObj) -> MResult<CMor> {
        self.0.p1(d, g)
    }

    fn p2(&self, d: &CObj, g: &CObj) -> MResult<CMor> {
        self.0.p2(d, g)
    }

    fn pairing(&self, f: &CMor, g: &CMor) -> MResult<CMor> {
        self.0.pairing(f, g)
    }

    fn exp(&self, d: &CObj, g: &CObj) -> MResult<CObj> {
        self.0.exp(d, g)
    }

    fn ev(&self, d: &CObj, g: &CObj) -> MResult<CMor> {
        self.0.ev(d, g)
    }

    fn curry(&self, theta: &CObj, d: &CObj, g: &CObj, f: &CMor) -> MResult<CMor> {
        self.0.curry(theta, d, g, f)
    }

    fn decompose(&self, a: &CObj) -> MResult<Vec<CObj>> {
        let mut v = self.0.decompose(a)?;
        v.reverse();
        Ok(v)
    }

    fn is_atom(&self, a: &CObj) -> bool {
        self.0.is_atom(a)
    }

    fn atomize(&self, a: &CObj) -> MResult<Atomized<CObj, CMor>> {
        self.0.atomize(a)
    }

    fn eq_obj(&self, x: &CObj, y: &CObj) -> bool {
        self.0.eq_obj(x, y)
    }

    fn eq_mor(&self, x: &CMor, y: &CMor) -> bool {
        self.0.eq_mor(x, y)
    }
}
