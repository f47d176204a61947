//! Contextual CCCs and their passage to and from constant contextual CCCwDs:
//! the constructions D and S, right-shifting, the counit ε, and a classical
//! evaluator for the simply typed fragment.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt::{self, Debug};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checker::Checker;
use crate::cwf::{plus, pair_iso, unit_over, LawReport, MResult, Model, ModelError, Outcome, Sampler, Seed};
use crate::finset::{Elem, FinSet};
use crate::interp::{IResult, InterpError, Interpreter, Structure};
use crate::syntax::{Ctx, Sym, Tm, Ty};

// ---------------------------------------------------------------------------
// The interface

/// An atom ⌈Δ⌉ with an isomorphism pack : Δ → ⌈Δ⌉, unpack : ⌈Δ⌉ → Δ.
#[derive(Clone, Debug)]
pub struct Atomized<O, M> {
    pub atom: O,
    pub pack: M,
    pub unpack: M,
}

/// A strict CCC whose objects decompose uniquely as T × Δ₁ × … × Δₙ with atomic Δᵢ.
pub trait CtxCcc {
    type Obj: Clone + Debug;
    type Mor: Clone + Debug;

    fn terminal(&self) -> Self::Obj;
    fn id(&self, a: &Self::Obj) -> MResult<Self::Mor>;
    /// g ∘ f
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> MResult<Self::Mor>;
    fn bang(&self, a: &Self::Obj) -> MResult<Self::Mor>;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;

    fn product(&self, d: &Self::Obj, g: &Self::Obj) -> MResult<Self::Obj>;
    fn p1(&self, d: &Self::Obj, g: &Self::Obj) -> MResult<Self::Mor>;
    fn p2(&self, d: &Self::Obj, g: &Self::Obj) -> MResult<Self::Mor>;
    /// (f, g) : Θ → Δ × Γ
    fn pairing(&self, f: &Self::Mor, g: &Self::Mor) -> MResult<Self::Mor>;

    /// Γ^Δ
    fn exp(&self, d: &Self::Obj, g: &Self::Obj) -> MResult<Self::Obj>;
    /// ev : Γ^Δ × Δ → Γ
    fn ev(&self, d: &Self::Obj, g: &Self::Obj) -> MResult<Self::Mor>;
    /// λ(ϑ) : Θ → Γ^Δ for ϑ : Θ × Δ → Γ
    fn curry(&self, theta: &Self::Obj, d: &Self::Obj, g: &Self::Obj, f: &Self::Mor) -> MResult<Self::Mor>;

    /// The non-terminal atoms Δ₁, …, Δₙ.
    fn decompose(&self, a: &Self::Obj) -> MResult<Vec<Self::Obj>>;
    fn is_atom(&self, a: &Self::Obj) -> bool;
    /// Atoms are their own atomization, with identity pack and unpack.
    fn atomize(&self, a: &Self::Obj) -> MResult<Atomized<Self::Obj, Self::Mor>>;

    fn eq_obj(&self, x: &Self::Obj, y: &Self::Obj) -> bool;
    fn eq_mor(&self, x: &Self::Mor, y: &Self::Mor) -> bool;
}

// ---------------------------------------------------------------------------
// The finite instance

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum STy {
    Unit,
    Base(Sym),
    Prod(Arc<STy>, Arc<STy>),
    Arr(Arc<STy>, Arc<STy>),
}

impl STy {
    pub fn base(name: &str) -> STy {
        STy::Base(Sym::new(name))
    }

    pub fn prod(a: STy, b: STy) -> STy {
        STy::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn arr(a: STy, b: STy) -> STy {
        STy::Arr(Arc::new(a), Arc::new(b))
    }

    pub fn depth(&self) -> usize {
        match self {
            STy::Unit | STy::Base(_) => 1,
            STy::Prod(a, b) | STy::Arr(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for STy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            STy::Unit => f.write_str("1"),
            STy::Base(s) => write!(f, "{}", s),
            STy::Prod(a, b) => write!(f, "({} * {})", a, b),
            STy::Arr(a, b) => write!(f, "({} -> {})", a, b),
        }
    }
}

impl Debug for STy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// T × τ₁ × … × τₙ, as the list of its (never unit) atom types.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CObj(pub Arc<Vec<STy>>);

impl CObj {
    pub fn terminal() -> CObj {
        CObj(Arc::new(Vec::new()))
    }

    pub fn new(types: Vec<STy>) -> CObj {
        CObj(Arc::new(types))
    }

    pub fn atom(t: STy) -> CObj {
        if t == STy::Unit {
            CObj::terminal()
        } else {
            CObj::new(alloc::vec![t])
        }
    }

    pub fn types(&self) -> &[STy] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the depths of the atom types.
    pub fn depth(&self) -> usize {
        self.0.iter().map(STy::depth).sum()
    }

    fn push(&self, t: STy) -> CObj {
        let mut v = (*self.0).clone();
        v.push(t);
        CObj::new(v)
    }
}

impl fmt::Display for CObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("T");
        }
        f.write_str("[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", t)?;
        }
        f.write_str("]")
    }
}

impl Debug for CObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A function between carriers, tabulated in the order of the domain carrier.
#[derive(Clone, PartialEq, Eq)]
pub struct CMor {
    pub dom: CObj,
    pub cod: CObj,
    pub table: Arc<Vec<Elem>>,
}

impl Debug for CMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.dom, self.cod)?;
        for (i, y) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", y)?;
        }
        f.write_str("]")
    }
}

pub const CCC_LIMIT: usize = 1 << 16;

/// The CtxCCC of finite sets generated by named base carriers under 1, × and ⇒.
/// An object [τ₁, …, τₙ] has carrier ((•, a₁), …, aₙ); the right-nested
/// atom type ℛ(Δ) = ((τ₁ * τ₂) * …) * τₙ makes Δ × Γ = Δ ++ [ℛ(Γ)].
pub struct FinCtxCcc {
    bases: BTreeMap<Sym, FinSet>,
    pub limit: usize,
    ty_cache: RefCell<BTreeMap<STy, FinSet>>,
    obj_cache: RefCell<BTreeMap<CObj, FinSet>>,
}

fn mismatch<T>(what: String) -> MResult<T> {
    Err(ModelError::Mismatch(what))
}

fn split(e: &Elem) -> MResult<(&Elem, &Elem)> {
    match (e.fst(), e.snd()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => mismatch(format!("{} is not a pair", e)),
    }
}

fn ctx_elem(parts: &[Elem]) -> Elem {
    parts.iter().fold(Elem::Unit, |acc, a| Elem::pair(acc, a.clone()))
}

fn ctx_parts(e: &Elem, n: usize) -> MResult<Vec<Elem>> {
    let mut out = Vec::with_capacity(n);
    let mut cur = e;
    for _ in 0..n {
        let (l, r) = split(cur)?;
        out.push(r.clone());
        cur = l;
    }
    out.reverse();
    Ok(out)
}

fn r_elem(parts: &[Elem]) -> Elem {
    match parts.split_first() {
        None => Elem::Unit,
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, a| Elem::pair(acc, a.clone())),
    }
}

fn r_parts(e: &Elem, n: usize) -> MResult<Vec<Elem>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(n);
    let mut cur = e;
    for _ in 1..n {
        let (l, r) = split(cur)?;
        out.push(r.clone());
        cur = l;
    }
    out.push(cur.clone());
    out.reverse();
    Ok(out)
}

/// ℛ(Δ) as a type; 1 for T.
pub fn r_type(o: &CObj) -> STy {
    match o.types().split_first() {
        None => STy::Unit,
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, t| STy::prod(acc, t.clone())),
    }
}

impl FinCtxCcc {
    pub fn new(bases: Vec<(Sym, FinSet)>) -> FinCtxCcc {
        FinCtxCcc {
            bases: bases.into_iter().collect(),
            limit: CCC_LIMIT,
            ty_cache: RefCell::new(BTreeMap::new()),
            obj_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn with_limit(mut self, limit: usize) -> FinCtxCcc {
        self.limit = limit;
        self
    }

    pub fn base_types(&self) -> Vec<STy> {
        self.bases.keys().map(|s| STy::Base(s.clone())).collect()
    }

    fn check(&self, n: Option<u128>) -> MResult<usize> {
        match n {
            Some(n) if n <= self.limit as u128 => Ok(n as usize),
            _ => Err(ModelError::CardinalityLimit { limit: self.limit }),
        }
    }

    pub fn carrier_ty(&self, t: &STy) -> MResult<FinSet> {
        if let Some(s) = self.ty_cache.borrow().get(t) {
            return Ok(s.clone());
        }
        let s = match t {
            STy::Unit => FinSet::singleton(),
            STy::Base(b) => match self.bases.get(b) {
                Some(s) => s.clone(),
                None => return Err(ModelError::Mismatch(format!("unknown base type {}", b))),
            },
            STy::Prod(a, b) => {
                let (ca, cb) = (self.carrier_ty(a)?, self.carrier_ty(b)?);
                self.check((ca.len() as u128).checked_mul(cb.len() as u128))?;
                let mut v = Vec::with_capacity(ca.len() * cb.len());
                for x in ca.elems() {
                    for y in cb.elems() {
                        v.push(Elem::pair(x.clone(), y.clone()));
                    }
                }
                FinSet::new(v)
            }
            STy::Arr(a, b) => {
                let (ca, cb) = (self.carrier_ty(a)?, self.carrier_ty(b)?);
                self.check((cb.len() as u128).checked_pow(ca.len() as u32))?;
                FinSet::new(all_tables(ca.len(), cb.elems()).into_iter().map(|t| graph(&ca, t)).collect())
            }
        };
        self.ty_cache.borrow_mut().insert(t.clone(), s.clone());
        Ok(s)
    }

    pub fn carrier(&self, o: &CObj) -> MResult<FinSet> {
        if let Some(s) = self.obj_cache.borrow().get(o) {
            return Ok(s.clone());
        }
        let mut n: u128 = 1;
        let mut sets = Vec::new();
        for t in o.types() {
            let c = self.carrier_ty(t)?;
            n = self.check(n.checked_mul(c.len() as u128))? as u128;
            sets.push(c);
        }
        let mut cur = alloc::vec![Elem::Unit];
        for c in &sets {
            let mut next = Vec::with_capacity(cur.len() * c.len());
            for x in &cur {
                for y in c.elems() {
                    next.push(Elem::pair(x.clone(), y.clone()));
                }
            }
            cur = next;
        }
        let s = FinSet::new(cur);
        self.obj_cache.borrow_mut().insert(o.clone(), s.clone());
        Ok(s)
    }

    pub fn apply(&self, f: &CMor, x: &Elem) -> MResult<Elem> {
        match self.carrier(&f.dom)?.index_of(x) {
            Some(i) => Ok(f.table[i].clone()),
            None => mismatch(format!("{} is not in {}", x, f.dom)),
        }
    }

    pub fn tabulate(&self, dom: &CObj, cod: &CObj, mut f: impl FnMut(&Elem) -> MResult<Elem>) -> MResult<CMor> {
        let cd = self.carrier(dom)?;
        let cc = self.carrier(cod)?;
        let mut table = Vec::with_capacity(cd.len());
        for x in cd.elems() {
            let y = f(x)?;
            if !cc.contains(&y) {
                return mismatch(format!("{} is not in {}", y, cod));
            }
            table.push(y);
        }
        Ok(CMor { dom: dom.clone(), cod: cod.clone(), table: Arc::new(table) })
    }

    pub fn hom_size(&self, dom: &CObj, cod: &CObj) -> MResult<u128> {
        let (a, b) = (self.carrier(dom)?.len(), self.carrier(cod)?.len());
        Ok((b as u128).checked_pow(a as u32).unwrap_or(u128::MAX))
    }

    /// Every morphism dom → cod.
    pub fn hom(&self, dom: &CObj, cod: &CObj) -> MResult<Vec<CMor>> {
        self.check(Some(self.hom_size(dom, cod)?))?;
        let (cd, cc) = (self.carrier(dom)?, self.carrier(cod)?);
        Ok(all_tables(cd.len(), cc.elems())
            .into_iter()
            .map(|t| CMor { dom: dom.clone(), cod: cod.clone(), table: Arc::new(t) })
            .collect())
    }

    pub fn random_mor<R: Rng>(&self, rng: &mut R, dom: &CObj, cod: &CObj) -> MResult<Option<CMor>> {
        let (cd, cc) = (self.carrier(dom)?, self.carrier(cod)?);
        if cc.is_empty() && !cd.is_empty() {
            return Ok(None);
        }
        let table = (0..cd.len()).map(|_| cc.elems()[rng.gen_range(0..cc.len())].clone()).collect();
        Ok(Some(CMor { dom: dom.clone(), cod: cod.clone(), table: Arc::new(table) }))
    }

    /// The constant morphism T → cod at `e`.
    pub fn point(&self, cod: &CObj, e: Elem) -> MResult<CMor> {
        self.tabulate(&CObj::terminal(), cod, |_| Ok(e.clone()))
    }

    /// Types of depth ≤ `depth`, built from the base types with × and ⇒.
    pub fn types_up_to(&self, depth: usize) -> Vec<STy> {
        let mut all: BTreeSet<STy> = BTreeSet::new();
        if depth == 0 {
            return Vec::new();
        }
        all.extend(self.base_types());
        for _ in 1..depth {
            let prev: Vec<STy> = all.iter().cloned().collect();
            for a in &prev {
                for b in &prev {
                    all.insert(STy::prod(a.clone(), b.clone()));
                    all.insert(STy::arr(a.clone(), b.clone()));
                }
            }
        }
        let mut v: Vec<STy> = all.into_iter().collect();
        v.sort_by_key(|t| (t.depth(), t.clone()));
        v
    }

    /// Objects whose atom depths sum to at most `depth`.
    pub fn objects_up_to(&self, depth: usize) -> Vec<CObj> {
        let types = self.types_up_to(depth);
        let mut out = alloc::vec![CObj::terminal()];
        let mut frontier = alloc::vec![CObj::terminal()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for o in &frontier {
                for t in &types {
                    if o.depth() + t.depth() <= depth {
                        next.push(o.push(t.clone()));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// T and the single-type objects among `objects`.
    pub fn atoms_of(objects: &[CObj]) -> Vec<CObj> {
        objects.iter().filter(|o| o.len() <= 1).cloned().collect()
    }

    fn same(&self, x: &CObj, y: &CObj, what: &str) -> MResult<()> {
        if x == y {
            Ok(())
        } else {
            mismatch(format!("{}: {} vs {}", what, x, y))
        }
    }
}

fn all_tables(n: usize, cod: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * cod.len());
        for t in &out {
            for y in cod {
                let mut t2 = t.clone();
                t2.push(y.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn graph(dom: &FinSet, table: Vec<Elem>) -> Elem {
    Elem::fun(dom.elems().iter().cloned().zip(table).collect())
}

impl CtxCcc for FinCtxCcc {
    type Obj = CObj;
    type Mor = CMor;

    fn terminal(&self) -> CObj {
        CObj::terminal()
    }

    fn id(&self, a: &CObj) -> MResult<CMor> {
        self.tabulate(a, a, |x| Ok(x.clone()))
    }

    fn compose(&self, g: &CMor, f: &CMor) -> MResult<CMor> {
        self.same(&f.cod, &g.dom, "compose")?;
        let table = f.table.iter().map(|y| self.apply(g, y)).collect::<MResult<Vec<_>>>()?;
        Ok(CMor { dom: f.dom.clone(), cod: g.cod.clone(), table: Arc::new(table) })
    }

    fn bang(&self, a: &CObj) -> MResult<CMor> {
        self.tabulate(a, &CObj::terminal(), |_| Ok(Elem::Unit))
    }

    fn dom(&self, f: &CMor) -> CObj {
        f.dom.clone()
    }

    fn cod(&self, f: &CMor) -> CObj {
        f.cod.clone()
    }

    fn product(&self, d: &CObj, g: &CObj) -> MResult<CObj> {
        Ok(if g.is_empty() { d.clone() } else { d.push(r_type(g)) })
    }

    fn p1(&self, d: &CObj, g: &CObj) -> MResult<CMor> {
        if g.is_empty() {
            return self.id(d);
        }
        self.tabulate(&self.product(d, g)?, d, |e| Ok(split(e)?.0.clone()))
    }

    fn p2(&self, d: &CObj, g: &CObj) -> MResult<CMor> {
        if g.is_empty() {
            return self.bang(d);
        }
        let n = g.len();
        self.tabulate(&self.product(d, g)?, g, |e| Ok(ctx_elem(&r_parts(split(e)?.1, n)?)))
    }

    fn pairing(&self, f: &CMor, g: &CMor) -> MResult<CMor> {
        self.same(&f.dom, &g.dom, "pairing")?;
        let cod = self.product(&f.cod, &g.cod)?;
        let n = g.cod.len();
        let mut i = 0;
        self.tabulate(&f.dom, &cod, |_| {
            let (a, b) = (&f.table[i], &g.table[i]);
            i += 1;
            Ok(if n == 0 { a.clone() } else { Elem::pair(a.clone(), r_elem(&ctx_parts(b, n)?)) })
        })
    }

    fn exp(&self, d: &CObj, g: &CObj) -> MResult<CObj> {
        let r = r_type(d);
        Ok(CObj::new(g.types().iter().map(|t| STy::arr(r.clone(), t.clone())).collect()))
    }

    fn ev(&self, d: &CObj, g: &CObj) -> MResult<CMor> {
        let e = self.exp(d, g)?;
        let dom = self.product(&e, d)?;
        let n = g.len();
        self.tabulate(&dom, g, |x| {
            let (fs, r) = if d.is_empty() { (x, &Elem::Unit) } else { split(x)? };
            let parts = ctx_parts(fs, n)?;
            let out = parts
                .iter()
                .map(|f| f.call(r).cloned().ok_or_else(|| ModelError::Mismatch(format!("{} undefined at {}", f, r))))
                .collect::<MResult<Vec<_>>>()?;
            Ok(ctx_elem(&out))
        })
    }

    fn curry(&self, theta: &CObj, d: &CObj, g: &CObj, f: &CMor) -> MResult<CMor> {
        self.same(&f.dom, &self.product(theta, d)?, "curry domain")?;
        self.same(&f.cod, g, "curry codomain")?;
        let rs = self.carrier_ty(&r_type(d))?;
        let n = g.len();
        let cod = self.exp(d, g)?;
        self.tabulate(theta, &cod, |x| {
            let mut cols: Vec<Vec<(Elem, Elem)>> = (0..n).map(|_| Vec::with_capacity(rs.len())).collect();
            for r in rs.elems() {
                let arg = if d.is_empty() { x.clone() } else { Elem::pair(x.clone(), r.clone()) };
                let parts = ctx_parts(&self.apply(f, &arg)?, n)?;
                for (col, y) in cols.iter_mut().zip(parts) {
                    col.push((r.clone(), y));
                }
            }
            Ok(ctx_elem(&cols.into_iter().map(Elem::fun).collect::<Vec<_>>()))
        })
    }

    fn decompose(&self, a: &CObj) -> MResult<Vec<CObj>> {
        Ok(a.types().iter().map(|t| CObj::atom(t.clone())).collect())
    }

    fn is_atom(&self, a: &CObj) -> bool {
        a.len() <= 1
    }

    fn atomize(&self, a: &CObj) -> MResult<Atomized<CObj, CMor>> {
        if a.len() <= 1 {
            let id = self.id(a)?;
            return Ok(Atomized { atom: a.clone(), pack: id.clone(), unpack: id });
        }
        let n = a.len();
        let atom = CObj::atom(r_type(a));
        let pack = self.tabulate(a, &atom, |e| Ok(Elem::pair(Elem::Unit, r_elem(&ctx_parts(e, n)?))))?;
        let unpack = self.tabulate(&atom, a, |e| Ok(ctx_elem(&r_parts(split(e)?.1, n)?)))?;
        Ok(Atomized { atom, pack, unpack })
    }

    fn eq_obj(&self, x: &CObj, y: &CObj) -> bool {
        x == y
    }

    fn eq_mor(&self, x: &CMor, y: &CMor) -> bool {
        x == y
    }
}

// ---------------------------------------------------------------------------
// D(c)

/// A D-object of D(c): an atom, placed over `base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DAtom<O> {
    pub base: O,
    pub atom: O,
}

/// A D-morphism of D(c): a morphism base → atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DArrow<O, M> {
    pub base: O,
    pub atom: O,
    pub mor: M,
}

/// The constant CtxCCCwD D(c): D-objects over any Γ are the atoms of c,
/// Γ.Θ = Γ × Θ, Σ(Θ, Ξ) = ⌈Θ × Ξ⌉ and Π(Θ, Ξ) = ⌈Ξ^Θ⌉.
pub struct DModel<'c, C: CtxCcc> {
    pub c: &'c C,
}

impl<'c, C: CtxCcc> DModel<'c, C> {
    pub fn new(c: &'c C) -> Self {
        DModel { c }
    }

    fn same(&self, x: &C::Obj, y: &C::Obj, what: &str) -> MResult<()> {
        if self.c.eq_obj(x, y) {
            Ok(())
        } else {
            mismatch(format!("{}: {:?} vs {:?}", what, x, y))
        }
    }

    fn c_compose(&self, fs: &[&C::Mor]) -> MResult<C::Mor> {
        let mut acc = fs[fs.len() - 1].clone();
        for g in fs[..fs.len() - 1].iter().rev() {
            acc = self.c.compose(g, &acc)?;
        }
        Ok(acc)
    }
}

impl<'c, C: CtxCcc> Model for DModel<'c, C> {
    type Obj = C::Obj;
    type Mor = C::Mor;
    type DObj = DAtom<C::Obj>;
    type DMor = DArrow<C::Obj, C::Mor>;

    fn terminal(&self) -> C::Obj {
        self.c.terminal()
    }

    fn bang(&self, g: &C::Obj) -> MResult<C::Mor> {
        self.c.bang(g)
    }

    fn id(&self, g: &C::Obj) -> MResult<C::Mor> {
        self.c.id(g)
    }

    fn compose(&self, g: &C::Mor, f: &C::Mor) -> MResult<C::Mor> {
        self.c.compose(g, f)
    }

    fn dom(&self, f: &C::Mor) -> C::Obj {
        self.c.dom(f)
    }

    fn cod(&self, f: &C::Mor) -> C::Obj {
        self.c.cod(f)
    }

    fn base(&self, a: &Self::DObj) -> C::Obj {
        a.base.clone()
    }

    fn dmor_dom(&self, f: &Self::DMor) -> C::Obj {
        f.base.clone()
    }

    fn dmor_cod(&self, f: &Self::DMor) -> Self::DObj {
        DAtom { base: f.base.clone(), atom: f.atom.clone() }
    }

    fn reindex(&self, a: &Self::DObj, phi: &C::Mor) -> MResult<Self::DObj> {
        self.same(&self.c.cod(phi), &a.base, "reindex")?;
        Ok(DAtom { base: self.c.dom(phi), atom: a.atom.clone() })
    }

    fn reindex_dmor(&self, f: &Self::DMor, phi: &C::Mor) -> MResult<Self::DMor> {
        self.same(&self.c.cod(phi), &f.base, "reindex_dmor")?;
        Ok(DArrow { base: self.c.dom(phi), atom: f.atom.clone(), mor: self.c.compose(&f.mor, phi)? })
    }

    fn ext(&self, a: &Self::DObj) -> MResult<C::Obj> {
        self.c.product(&a.base, &a.atom)
    }

    fn p1(&self, a: &Self::DObj) -> MResult<C::Mor> {
        self.c.p1(&a.base, &a.atom)
    }

    fn p2(&self, a: &Self::DObj) -> MResult<Self::DMor> {
        Ok(DArrow { base: self.ext(a)?, atom: a.atom.clone(), mor: self.c.p2(&a.base, &a.atom)? })
    }

    fn extend(&self, phi: &C::Mor, a: &Self::DObj, g: &Self::DMor) -> MResult<C::Mor> {
        self.same(&self.c.cod(phi), &a.base, "extend")?;
        self.same(&self.c.dom(phi), &g.base, "extend domain")?;
        self.same(&g.atom, &a.atom, "extend fiber")?;
        self.c.pairing(phi, &g.mor)
    }

    fn unit(&self) -> Self::DObj {
        DAtom { base: self.c.terminal(), atom: self.c.terminal() }
    }

    fn unit_bang(&self, g: &C::Obj) -> MResult<Self::DMor> {
        Ok(DArrow { base: g.clone(), atom: self.c.terminal(), mor: self.c.bang(g)? })
    }

    fn sigma(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DObj> {
        self.same(&b.base, &self.ext(a)?, "sigma")?;
        let at = self.c.atomize(&self.c.product(&a.atom, &b.atom)?)?;
        Ok(DAtom { base: a.base.clone(), atom: at.atom })
    }

    fn varpi1(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DMor> {
        let s = self.sigma(a, b)?;
        let at = self.c.atomize(&self.c.product(&a.atom, &b.atom)?)?;
        let mor = self.c_compose(&[&self.c.p1(&a.atom, &b.atom)?, &at.unpack, &self.c.p2(&a.base, &s.atom)?])?;
        Ok(DArrow { base: self.ext(&s)?, atom: a.atom.clone(), mor })
    }

    fn varpi2(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DMor> {
        let s = self.sigma(a, b)?;
        let at = self.c.atomize(&self.c.product(&a.atom, &b.atom)?)?;
        let mor = self.c_compose(&[&self.c.p2(&a.atom, &b.atom)?, &at.unpack, &self.c.p2(&a.base, &s.atom)?])?;
        Ok(DArrow { base: self.ext(&s)?, atom: b.atom.clone(), mor })
    }

    fn dpair(
        &self,
        phi: &C::Mor,
        a: &Self::DObj,
        b: &Self::DObj,
        g: &Self::DMor,
        h: &Self::DMor,
    ) -> MResult<Self::DMor> {
        let s = self.sigma(a, b)?;
        let delta = self.c.dom(phi);
        self.same(&g.base, &delta, "dpair")?;
        self.same(&h.base, &delta, "dpair")?;
        self.same(&g.atom, &a.atom, "dpair first")?;
        self.same(&h.atom, &b.atom, "dpair second")?;
        let at = self.c.atomize(&self.c.product(&a.atom, &b.atom)?)?;
        let mor = self.c.compose(&at.pack, &self.c.pairing(&g.mor, &h.mor)?)?;
        Ok(DArrow { base: delta, atom: s.atom, mor })
    }

    fn pi(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DObj> {
        self.same(&b.base, &self.ext(a)?, "pi")?;
        let at = self.c.atomize(&self.c.exp(&a.atom, &b.atom)?)?;
        Ok(DAtom { base: a.base.clone(), atom: at.atom })
    }

    fn dev(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DMor> {
        let p = self.pi(a, b)?;
        let y = self.ext(&p)?;
        let x = self.c.product(&y, &a.atom)?;
        let at = self.c.atomize(&self.c.exp(&a.atom, &b.atom)?)?;
        let u = self.c_compose(&[&at.unpack, &self.c.p2(&a.base, &p.atom)?, &self.c.p1(&y, &a.atom)?])?;
        let v = self.c.p2(&y, &a.atom)?;
        let mor = self.c.compose(&self.c.ev(&a.atom, &b.atom)?, &self.c.pairing(&u, &v)?)?;
        Ok(DArrow { base: x, atom: b.atom.clone(), mor })
    }

    fn lam(&self, a: &Self::DObj, b: &Self::DObj, f: &Self::DMor) -> MResult<Self::DMor> {
        let p = self.pi(a, b)?;
        self.same(&f.base, &self.ext(a)?, "lam domain")?;
        self.same(&f.atom, &b.atom, "lam codomain")?;
        let at = self.c.atomize(&self.c.exp(&a.atom, &b.atom)?)?;
        let mor = self.c.compose(&at.pack, &self.c.curry(&a.base, &a.atom, &b.atom, &f.mor)?)?;
        Ok(DArrow { base: a.base.clone(), atom: p.atom, mor })
    }

    fn eq_obj(&self, x: &C::Obj, y: &C::Obj) -> bool {
        self.c.eq_obj(x, y)
    }

    fn eq_mor(&self, x: &C::Mor, y: &C::Mor) -> bool {
        self.c.eq_mor(x, y)
    }

    fn eq_dobj(&self, x: &Self::DObj, y: &Self::DObj) -> bool {
        self.c.eq_obj(&x.base, &y.base) && self.c.eq_obj(&x.atom, &y.atom)
    }

    fn eq_dmor(&self, x: &Self::DMor, y: &Self::DMor) -> bool {
        self.c.eq_obj(&x.base, &y.base) && self.c.eq_obj(&x.atom, &y.atom) && self.c.eq_mor(&x.mor, &y.mor)
    }
}

/// A constant CCCwD with contextuality data.
pub trait ConCtx: Model {
    /// The core A̲ ∈ 𝒟(T) with A = A̲{!}.
    fn core(&self, a: &Self::DObj) -> MResult<Self::DObj>;
    /// D₁, …, Dₙ with Γ = T.D₁.….Dₙ, each Dᵢ over T.D₁.….Dᵢ₋₁.
    fn decompose(&self, g: &Self::Obj) -> MResult<Vec<Self::DObj>>;
}

impl<'c, C: CtxCcc> ConCtx for DModel<'c, C> {
    fn core(&self, a: &Self::DObj) -> MResult<Self::DObj> {
        Ok(DAtom { base: self.c.terminal(), atom: a.atom.clone() })
    }

    fn decompose(&self, g: &C::Obj) -> MResult<Vec<Self::DObj>> {
        let mut prefix = self.c.terminal();
        let mut out = Vec::new();
        for atom in self.c.decompose(g)? {
            let next = self.c.product(&prefix, &atom)?;
            out.push(DAtom { base: prefix, atom });
            prefix = next;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Right-shifting and S(d)

/// ℛ(Δ) ∈ 𝒟(T) with r(Δ) : T.ℛ(Δ) → Δ and ℓ(Δ) : Δ ⇾ ℛ(Δ){!_Δ}.
pub struct RightShift<M: Model> {
    pub r_obj: M::DObj,
    pub r: M::Mor,
    pub l: M::DMor,
}

impl<M: Model> Clone for RightShift<M> {
    fn clone(&self) -> Self {
        RightShift { r_obj: self.r_obj.clone(), r: self.r.clone(), l: self.l.clone() }
    }
}

/// ℛ(T) is taken to be 1 with r = π₁ and ℓ = 𝐛_T, so that every object shifts.
pub fn right_shift<M: ConCtx>(m: &M, delta: &M::Obj) -> MResult<RightShift<M>> {
    let ds = m.decompose(delta)?;
    let t = m.terminal();
    let Some((first, rest)) = ds.split_first() else {
        let u = m.unit();
        return Ok(RightShift { r: m.p1(&u)?, l: m.unit_bang(&t)?, r_obj: u });
    };
    let c1 = m.core(first)?;
    let mut rs = RightShift::<M> { r: m.id(&m.ext(first)?)?, l: m.p2(first)?, r_obj: c1 };
    for d in rest {
        let core = m.core(d)?;
        let bp = m.reindex(&core, &m.bang(&m.ext(&rs.r_obj)?)?)?;
        let r_obj = m.sigma(&rs.r_obj, &bp)?;
        let (_, pair_inv) = pair_iso(m, &rs.r_obj, &bp)?;
        let r = m.compose(&plus(m, &rs.r, d)?, &pair_inv)?;
        let g = m.reindex_dmor(&rs.l, &m.p1(d)?)?;
        let l = m.dpair(&m.bang(&m.ext(d)?)?, &rs.r_obj, &bp, &g, &m.p2(d)?)?;
        rs = RightShift { r_obj, r, l };
    }
    Ok(rs)
}

/// The CtxCCC S(d): Δ × Γ = Δ.ℛ(Γ){!}, with exponentials built by recursion
/// on the length of the base.
pub struct SCcc<'d, D: ConCtx> {
    pub d: &'d D,
}

struct ExpStage<D: Model> {
    /// Γ^Δ up to the previous stage
    e_prev: D::Obj,
    /// ℛ(Δ){!_{e_prev}}
    a: D::DObj,
    b: D::DObj,
    pi: D::DObj,
    e: D::Obj,
    d_i: D::DObj,
}

impl<'d, D: ConCtx> SCcc<'d, D> {
    pub fn new(d: &'d D) -> Self {
        SCcc { d }
    }

    fn r_over(&self, rs: &RightShift<D>, at: &D::Obj) -> MResult<D::DObj> {
        self.d.reindex(&rs.r_obj, &self.d.bang(at)?)
    }

    fn exp_stages(&self, delta: &D::Obj, gamma: &D::Obj) -> MResult<(RightShift<D>, Vec<ExpStage<D>>)> {
        let m = self.d;
        let rs = right_shift(m, delta)?;
        let mut e = m.terminal();
        let mut out = Vec::new();
        for d_i in m.decompose(gamma)? {
            let core = m.core(&d_i)?;
            let a = self.r_over(&rs, &e)?;
            let b = m.reindex(&core, &m.bang(&m.ext(&a)?)?)?;
            let pi = m.pi(&a, &b)?;
            let next = m.ext(&pi)?;
            out.push(ExpStage { e_prev: e, a, b, pi, e: next.clone(), d_i });
            e = next;
        }
        Ok((rs, out))
    }
}

impl<'d, D: ConCtx> CtxCcc for SCcc<'d, D> {
    type Obj = D::Obj;
    type Mor = D::Mor;

    fn terminal(&self) -> D::Obj {
        self.d.terminal()
    }

    fn id(&self, a: &D::Obj) -> MResult<D::Mor> {
        self.d.id(a)
    }

    fn compose(&self, g: &D::Mor, f: &D::Mor) -> MResult<D::Mor> {
        self.d.compose(g, f)
    }

    fn bang(&self, a: &D::Obj) -> MResult<D::Mor> {
        self.d.bang(a)
    }

    fn dom(&self, f: &D::Mor) -> D::Obj {
        self.d.dom(f)
    }

    fn cod(&self, f: &D::Mor) -> D::Obj {
        self.d.cod(f)
    }

    fn product(&self, d: &D::Obj, g: &D::Obj) -> MResult<D::Obj> {
        let rs = right_shift(self.d, g)?;
        self.d.ext(&self.r_over(&rs, d)?)
    }

    fn p1(&self, d: &D::Obj, g: &D::Obj) -> MResult<D::Mor> {
        let rs = right_shift(self.d, g)?;
        self.d.p1(&self.r_over(&rs, d)?)
    }

    fn p2(&self, d: &D::Obj, g: &D::Obj) -> MResult<D::Mor> {
        let m = self.d;
        let rs = right_shift(m, g)?;
        let rd = self.r_over(&rs, d)?;
        let x = m.ext(&rd)?;
        m.compose(&rs.r, &m.extend(&m.bang(&x)?, &rs.r_obj, &m.p2(&rd)?)?)
    }

    fn pairing(&self, f: &D::Mor, g: &D::Mor) -> MResult<D::Mor> {
        let m = self.d;
        let rs = right_shift(m, &m.cod(g))?;
        m.extend(f, &self.r_over(&rs, &m.cod(f))?, &m.reindex_dmor(&rs.l, g)?)
    }

    fn exp(&self, d: &D::Obj, g: &D::Obj) -> MResult<D::Obj> {
        let (_, stages) = self.exp_stages(d, g)?;
        Ok(stages.last().map(|s| s.e.clone()).unwrap_or_else(|| self.d.terminal()))
    }

    fn ev(&self, d: &D::Obj, g: &D::Obj) -> MResult<D::Mor> {
        let m = self.d;
        let (rs, stages) = self.exp_stages(d, g)?;
        let t = m.terminal();
        let mut ev = m.bang(&m.ext(&self.r_over(&rs, &t)?)?)?;
        for s in &stages {
            let r_here = self.r_over(&rs, &s.e)?;
            let r_prev = self.r_over(&rs, &s.e_prev)?;
            let q = m.extend(&m.compose(&m.p1(&s.pi)?, &m.p1(&r_here)?)?, &r_prev, &m.p2(&r_here)?)?;
            ev = m.extend(&m.compose(&ev, &q)?, &s.d_i, &m.dev(&s.a, &s.b)?)?;
        }
        Ok(ev)
    }

    fn curry(&self, theta: &D::Obj, d: &D::Obj, g: &D::Obj, f: &D::Mor) -> MResult<D::Mor> {
        let m = self.d;
        let (rs, stages) = self.exp_stages(d, g)?;
        let mut thetas = alloc::vec![f.clone()];
        for s in stages.iter().rev() {
            let last = thetas.last().unwrap().clone();
            thetas.push(m.compose(&m.p1(&s.d_i)?, &last)?);
        }
        thetas.reverse();
        let a2 = self.r_over(&rs, theta)?;
        let mut lam = m.bang(theta)?;
        for (i, s) in stages.iter().enumerate() {
            let core = m.core(&s.d_i)?;
            let b2 = m.reindex(&core, &m.bang(&m.ext(&a2)?)?)?;
            let body = m.reindex_dmor(&m.p2(&s.d_i)?, &thetas[i + 1])?;
            lam = m.extend(&lam, &s.pi, &m.lam(&a2, &b2, &body)?)?;
        }
        Ok(lam)
    }

    fn decompose(&self, a: &D::Obj) -> MResult<Vec<D::Obj>> {
        self.d.decompose(a)?.iter().map(|di| self.d.ext(&self.d.core(di)?)).collect()
    }

    fn is_atom(&self, a: &D::Obj) -> bool {
        self.d.decompose(a).map(|v| v.len() <= 1).unwrap_or(false)
    }

    fn atomize(&self, a: &D::Obj) -> MResult<Atomized<D::Obj, D::Mor>> {
        let m = self.d;
        if m.decompose(a)?.is_empty() {
            let id = m.id(a)?;
            return Ok(Atomized { atom: a.clone(), pack: id.clone(), unpack: id });
        }
        let rs = right_shift(m, a)?;
        Ok(Atomized { atom: m.ext(&rs.r_obj)?, pack: m.extend(&m.bang(a)?, &rs.r_obj, &rs.l)?, unpack: rs.r })
    }

    fn eq_obj(&self, x: &D::Obj, y: &D::Obj) -> bool {
        self.d.eq_obj(x, y)
    }

    fn eq_mor(&self, x: &D::Mor, y: &D::Mor) -> bool {
        self.d.eq_mor(x, y)
    }
}

// ---------------------------------------------------------------------------
// ε : D(S(d)) → d

/// The core of an atom T or T.A̲ of S(d); `None` for T.
fn atom_core<D: ConCtx>(d: &D, atom: &D::Obj) -> MResult<Option<D::DObj>> {
    let ds = d.decompose(atom)?;
    match ds.len() {
        0 => Ok(None),
        1 => Ok(Some(ds[0].clone())),
        n => mismatch(format!("{:?} is not an atom (length {})", atom, n)),
    }
}

/// T ↦ 1{!_Γ}, T.A̲ ↦ A̲{!_Γ}.
pub fn eps_dobj<D: ConCtx>(d: &D, a: &DAtom<D::Obj>) -> MResult<D::DObj> {
    match atom_core(d, &a.atom)? {
        None => unit_over(d, &a.base),
        Some(core) => d.reindex(&core, &d.bang(&a.base)?),
    }
}

/// f ↦ π₂{f}
pub fn eps_dmor<D: ConCtx>(d: &D, f: &DArrow<D::Obj, D::Mor>) -> MResult<D::DMor> {
    match atom_core(d, &f.atom)? {
        None => d.unit_bang(&f.base),
        Some(core) => d.reindex_dmor(&d.p2(&core)?, &f.mor),
    }
}

/// g ↦ ⟨!, g⟩
pub fn eps_inv_dmor<D: ConCtx>(d: &D, atom: &D::Obj, g: &D::DMor) -> MResult<DArrow<D::Obj, D::Mor>> {
    let base = d.dmor_dom(g);
    let mor = match atom_core(d, atom)? {
        None => d.bang(&base)?,
        Some(core) => d.extend(&d.bang(&base)?, &core, g)?,
    };
    Ok(DArrow { base, atom: atom.clone(), mor })
}

// ---------------------------------------------------------------------------
// Law suites

fn fail(what: &str, x: &dyn Debug, y: &dyn Debug) -> Outcome {
    let mut s = format!("{}: {:?} != {:?}", what, x, y);
    if s.len() > 400 {
        let mut cut = 400;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str("...");
    }
    Outcome::Fail(s)
}

fn lift(r: MResult<Outcome>) -> Outcome {
    match r {
        Ok(o) => o,
        Err(ModelError::CardinalityLimit { .. }) => Outcome::Skip,
        Err(e) => Outcome::Fail(format!("{}", e)),
    }
}

fn mor_eq<C: CtxCcc>(c: &C, what: &str, x: &C::Mor, y: &C::Mor) -> Outcome {
    if c.eq_mor(x, y) {
        Outcome::Pass
    } else {
        fail(what, x, y)
    }
}

fn obj_eq<C: CtxCcc>(c: &C, what: &str, x: &C::Obj, y: &C::Obj) -> Outcome {
    if c.eq_obj(x, y) {
        Outcome::Pass
    } else {
        fail(what, x, y)
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    match (a, b) {
        (f @ Outcome::Fail(_), _) | (_, f @ Outcome::Fail(_)) => f,
        (Outcome::Skip, o) | (o, Outcome::Skip) => o,
        _ => Outcome::Pass,
    }
}

pub const CCC_LAWS: &[&str] = &[
    "CccIdL",
    "CccIdR",
    "CccAssoc",
    "CccTermUniq",
    "ProdBeta1",
    "ProdBeta2",
    "ProdEta",
    "ProdUnit",
    "ExpBeta",
    "ExpEta",
    "AtomicDecomposition",
    "AtomizeIso",
];

macro_rules! take {
    ($e:expr) => {
        match $e? {
            Some(v) => v,
            None => return Ok(Outcome::Skip),
        }
    };
}

/// Strict CCC and contextuality laws on `samples` random triples drawn from
/// `objects`, with random morphisms from `fin`. Unary laws run on every object.
pub fn check_ccc_laws<C: CtxCcc<Obj = CObj, Mor = CMor>>(
    c: &C,
    fin: &FinCtxCcc,
    objects: &[CObj],
    samples: usize,
    seed: u64,
) -> LawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = LawReport::new();
    for name in CCC_LAWS {
        rep.entry_mut(name);
    }
    for d in objects {
        rep.record("CccTermUniq", lift(law_term_uniq(c, fin, d)));
        rep.record("AtomicDecomposition", lift(law_decomposition(c, d)));
        rep.record("AtomizeIso", lift(law_atomize(c, d)));
        rep.record("ProdUnit", lift(law_prod_unit(c, d)));
    }
    for _ in 0..samples {
        let d = objects.choose(&mut rng).unwrap().clone();
        let g = objects.choose(&mut rng).unwrap().clone();
        let th = objects.choose(&mut rng).unwrap().clone();
        let r = &mut rng;
        rep.record("CccIdL", lift((|| {
            let f = take!(fin.random_mor(r, &d, &g));
            Ok(mor_eq(c, "id ∘ f", &c.compose(&c.id(&g)?, &f)?, &f))
        })()));
        rep.record("CccIdR", lift((|| {
            let f = take!(fin.random_mor(r, &d, &g));
            Ok(mor_eq(c, "f ∘ id", &c.compose(&f, &c.id(&d)?)?, &f))
        })()));
        rep.record("CccAssoc", lift((|| {
            let f = take!(fin.random_mor(r, &d, &g));
            let g2 = take!(fin.random_mor(r, &g, &th));
            let h = take!(fin.random_mor(r, &th, &d));
            let lhs = c.compose(&h, &c.compose(&g2, &f)?)?;
            Ok(mor_eq(c, "h ∘ (g ∘ f)", &lhs, &c.compose(&c.compose(&h, &g2)?, &f)?))
        })()));
        rep.record("ProdBeta1", lift((|| {
            let f = take!(fin.random_mor(r, &th, &d));
            let g2 = take!(fin.random_mor(r, &th, &g));
            Ok(mor_eq(c, "p1 ∘ (f, g)", &c.compose(&c.p1(&d, &g)?, &c.pairing(&f, &g2)?)?, &f))
        })()));
        rep.record("ProdBeta2", lift((|| {
            let f = take!(fin.random_mor(r, &th, &d));
            let g2 = take!(fin.random_mor(r, &th, &g));
            Ok(mor_eq(c, "p2 ∘ (f, g)", &c.compose(&c.p2(&d, &g)?, &c.pairing(&f, &g2)?)?, &g2))
        })()));
        rep.record("ProdEta", lift((|| {
            let h = take!(fin.random_mor(r, &th, &c.product(&d, &g)?));
            let back = c.pairing(&c.compose(&c.p1(&d, &g)?, &h)?, &c.compose(&c.p2(&d, &g)?, &h)?)?;
            Ok(mor_eq(c, "(p1 ∘ h, p2 ∘ h)", &back, &h))
        })()));
        rep.record("ExpBeta", lift((|| {
            let f = take!(fin.random_mor(r, &c.product(&th, &d)?, &g));
            let lam = c.curry(&th, &d, &g, &f)?;
            let cross = c.pairing(&c.compose(&lam, &c.p1(&th, &d)?)?, &c.p2(&th, &d)?)?;
            Ok(mor_eq(c, "ev ∘ (λϑ × id)", &c.compose(&c.ev(&d, &g)?, &cross)?, &f))
        })()));
        rep.record("ExpEta", lift((|| {
            let k = take!(fin.random_mor(r, &th, &c.exp(&d, &g)?));
            let cross = c.pairing(&c.compose(&k, &c.p1(&th, &d)?)?, &c.p2(&th, &d)?)?;
            let back = c.curry(&th, &d, &g, &c.compose(&c.ev(&d, &g)?, &cross)?)?;
            Ok(mor_eq(c, "λ(ev ∘ (k × id))", &back, &k))
        })()));
    }
    rep
}

fn law_term_uniq<C: CtxCcc<Obj = CObj, Mor = CMor>>(c: &C, fin: &FinCtxCcc, d: &CObj) -> MResult<Outcome> {
    let b = c.bang(d)?;
    for f in fin.hom(d, &c.terminal())? {
        if !c.eq_mor(&f, &b) {
            return Ok(fail("morphism into T", &f, &b));
        }
    }
    Ok(Outcome::Pass)
}

fn law_decomposition<C: CtxCcc>(c: &C, d: &C::Obj) -> MResult<Outcome> {
    let atoms = c.decompose(d)?;
    let t = c.terminal();
    let mut acc = t.clone();
    for a in &atoms {
        if !c.is_atom(a) || c.eq_obj(a, &t) {
            return Ok(fail("decomposition member is not a non-terminal atom", a, d));
        }
        acc = c.product(&acc, a)?;
    }
    let mut out = obj_eq(c, "T × Δ₁ × … × Δₙ", &acc, d);
    if c.is_atom(d) && !c.eq_obj(d, &t) {
        let own = c.decompose(d)?;
        if own.len() != 1 || !c.eq_obj(&own[0], d) {
            out = both(out, fail("atom decomposes to itself", &own, d));
        }
    }
    Ok(out)
}

fn law_atomize<C: CtxCcc>(c: &C, d: &C::Obj) -> MResult<Outcome> {
    let at = c.atomize(d)?;
    if !c.is_atom(&at.atom) {
        return Ok(fail("atomization is an atom", &at.atom, d));
    }
    let mut out = both(
        mor_eq(c, "pack ∘ unpack", &c.compose(&at.pack, &at.unpack)?, &c.id(&at.atom)?),
        mor_eq(c, "unpack ∘ pack", &c.compose(&at.unpack, &at.pack)?, &c.id(d)?),
    );
    if c.is_atom(d) {
        out = both(out, obj_eq(c, "atoms atomize to themselves", &at.atom, d));
        out = both(out, mor_eq(c, "pack on an atom", &at.pack, &c.id(d)?));
    }
    Ok(out)
}

fn law_prod_unit<C: CtxCcc>(c: &C, d: &C::Obj) -> MResult<Outcome> {
    let t = c.terminal();
    let mut out = both(
        obj_eq(c, "Δ × T", &c.product(d, &t)?, d),
        mor_eq(c, "p1 : Δ × T → Δ", &c.p1(d, &t)?, &c.id(d)?),
    );
    for a in c.decompose(d)? {
        out = both(out, obj_eq(c, "T × Θ", &c.product(&t, &a)?, &a));
    }
    Ok(out)
}

pub const ROUNDTRIP_LAWS: &[&str] = &[
    "EtaObjects",
    "EtaMorphisms",
    "EpsInverse",
    "EpsStructure",
    "HomBijection",
    "RightShiftSection",
    "RightShiftRetraction",
];

/// Round-trip options: `pairs` random object pairs on top of every pair of
/// objects of depth ≤ 2, and the largest hom-set enumerated exhaustively.
#[derive(Clone, Copy, Debug)]
pub struct RoundTrip {
    pub pairs: usize,
    pub hom_cap: u128,
    pub seed: u64,
}

impl Default for RoundTrip {
    fn default() -> Self {
        RoundTrip { pairs: 100, hom_cap: 64, seed: 0 }
    }
}

/// S(D(c)) = c on the nose, ε : D(S(d)) → d for d = D(c) is a structure
/// preserving bijection, 𝒟(Γ, A) ≅ c(Γ, T.A̲), and the right-shifting equations.
pub fn roundtrip_check(fin: &FinCtxCcc, objects: &[CObj], opts: RoundTrip) -> LawReport {
    let d = DModel::new(fin);
    let s = SCcc::new(&d);
    let ds = DModel::new(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rep = LawReport::new();
    for name in ROUNDTRIP_LAWS {
        rep.entry_mut(name);
    }
    let atoms = FinCtxCcc::atoms_of(objects);

    for o in objects {
        rep.record("EtaObjects", lift((|| {
            let mut out = obj_eq(fin, "terminal", &s.terminal(), &fin.terminal());
            let (x, y) = (CtxCcc::decompose(&s, o)?, CtxCcc::decompose(fin, o)?);
            if x != y {
                out = both(out, fail("decomposition", &x, &y));
            }
            if s.is_atom(o) != fin.is_atom(o) {
                out = both(out, fail("atomicity", o, &fin.is_atom(o)));
            }
            let (a, b) = (s.atomize(o)?, fin.atomize(o)?);
            out = both(out, obj_eq(fin, "atomization", &a.atom, &b.atom));
            out = both(out, mor_eq(fin, "pack", &a.pack, &b.pack));
            Ok(both(out, mor_eq(fin, "unpack", &a.unpack, &b.unpack)))
        })()));
        rep.record("RightShiftSection", lift((|| {
            let rs = right_shift(&d, o)?;
            let back = d.compose(&rs.r, &d.extend(&d.bang(o)?, &rs.r_obj, &rs.l)?)?;
            Ok(mor_eq(fin, "r ∘ ⟨!, ℓ⟩", &back, &d.id(o)?))
        })()));
        rep.record("RightShiftRetraction", lift((|| {
            let rs = right_shift(&d, o)?;
            let tr = d.ext(&rs.r_obj)?;
            let back = d.extend(&d.bang(&tr)?, &rs.r_obj, &d.reindex_dmor(&rs.l, &rs.r)?)?;
            Ok(mor_eq(fin, "⟨!, ℓ{r}⟩", &back, &d.id(&tr)?))
        })()));
    }

    let small: Vec<&CObj> = objects.iter().filter(|o| o.depth() <= 2).collect();
    let mut pairs: Vec<(CObj, CObj)> = Vec::new();
    for a in &small {
        for b in &small {
            pairs.push(((*a).clone(), (*b).clone()));
        }
    }
    for _ in 0..opts.pairs {
        pairs.push((objects.choose(&mut rng).unwrap().clone(), objects.choose(&mut rng).unwrap().clone()));
    }
    for (x, y) in &pairs {
        rep.record("EtaObjects", lift((|| {
            Ok(both(
                obj_eq(fin, "product", &s.product(x, y)?, &fin.product(x, y)?),
                obj_eq(fin, "exponential", &s.exp(x, y)?, &fin.exp(x, y)?),
            ))
        })()));
        let r = &mut rng;
        rep.record("EtaMorphisms", lift((|| {
            let mut out = mor_eq(fin, "p1", &s.p1(x, y)?, &fin.p1(x, y)?);
            out = both(out, mor_eq(fin, "p2", &s.p2(x, y)?, &fin.p2(x, y)?));
            out = both(out, mor_eq(fin, "ev", &s.ev(x, y)?, &fin.ev(x, y)?));
            let th = objects.choose(r).unwrap().clone();
            if let (Some(f), Some(g)) = (fin.random_mor(r, &th, x)?, fin.random_mor(r, &th, y)?) {
                out = both(out, mor_eq(fin, "pairing", &s.pairing(&f, &g)?, &fin.pairing(&f, &g)?));
            }
            if let Some(f) = fin.random_mor(r, &fin.product(&th, x)?, y)? {
                out = both(out, mor_eq(fin, "curry", &s.curry(&th, x, y, &f)?, &fin.curry(&th, x, y, &f)?));
            }
            Ok(out)
        })()));
    }

    for g in objects {
        for a in &atoms {
            rep.record("EpsInverse", lift(eps_inverse(fin, &d, g, a, opts.hom_cap)));
            rep.record("HomBijection", lift(hom_bijection(fin, &d, g, a, opts.hom_cap)));
        }
    }
    // D(S(D(c))) over deep objects is slow and Π of deep atoms overflows the
    // carrier limit, so structure preservation is sampled on shallow ones.
    let shallow: Vec<&CObj> = atoms.iter().filter(|a| a.depth() <= 2).collect();
    let shallow_objs: Vec<&CObj> = objects.iter().filter(|o| o.depth() <= 2).collect();
    let want = opts.pairs.max(1);
    let (mut done, mut tries) = (0, 0);
    while done < want && tries < 4 * want && !shallow.is_empty() {
        tries += 1;
        let g = (*shallow_objs.choose(&mut rng).unwrap()).clone();
        let a = (*shallow.choose(&mut rng).unwrap()).clone();
        let b = (*shallow.choose(&mut rng).unwrap()).clone();
        let o = lift(eps_structure(&d, &ds, &g, &a, &b));
        if o != Outcome::Skip {
            done += 1;
        }
        rep.record("EpsStructure", o);
    }
    rep
}

fn eps_inverse(fin: &FinCtxCcc, d: &DModel<FinCtxCcc>, g: &CObj, a: &CObj, cap: u128) -> MResult<Outcome> {
    if fin.hom_size(g, a)? > cap {
        return Ok(Outcome::Skip);
    }
    for f in fin.hom(g, a)? {
        let arrow = DArrow { base: g.clone(), atom: a.clone(), mor: f };
        let e = eps_dmor(d, &arrow)?;
        let back = eps_inv_dmor(d, a, &e)?;
        if back != arrow {
            return Ok(fail("ε⁻¹ ∘ ε", &back, &arrow));
        }
        let again = eps_dmor(d, &back)?;
        if !d.eq_dmor(&again, &e) {
            return Ok(fail("ε ∘ ε⁻¹", &again, &e));
        }
    }
    Ok(Outcome::Pass)
}

/// 𝒟_d(Γ, A̲{!}) against c(Γ, T.A̲), compared as sets of graphs through ε⁻¹.
fn hom_bijection(fin: &FinCtxCcc, d: &DModel<FinCtxCcc>, g: &CObj, a: &CObj, cap: u128) -> MResult<Outcome> {
    let ta = fin.product(&fin.terminal(), a)?;
    if fin.hom_size(g, &ta)? > cap {
        return Ok(Outcome::Skip);
    }
    let target: BTreeSet<Vec<Elem>> = fin.hom(g, &ta)?.into_iter().map(|f| (*f.table).clone()).collect();
    let a_bar = match atom_core(d, a)? {
        None => unit_over(d, g)?,
        Some(core) => d.reindex(&core, &d.bang(g)?)?,
    };
    let mut image = BTreeSet::new();
    let mut count = 0usize;
    for f in fin.hom(g, &a_bar.atom)? {
        let dm = DArrow { base: g.clone(), atom: a_bar.atom.clone(), mor: f };
        image.insert((*eps_inv_dmor(d, a, &dm)?.mor.table).clone());
        count += 1;
    }
    if count != target.len() || image != target {
        return Ok(Outcome::Fail(format!(
            "{} over {}: {} D-morphisms, {} morphisms, {} images",
            a,
            g,
            count,
            target.len(),
            image.len()
        )));
    }
    Ok(Outcome::Pass)
}

fn eps_structure<'c>(
    d: &DModel<'c, FinCtxCcc>,
    ds: &DModel<'_, SCcc<'_, DModel<'c, FinCtxCcc>>>,
    g: &CObj,
    a: &CObj,
    b: &CObj,
) -> MResult<Outcome> {
    let da = DAtom { base: g.clone(), atom: a.clone() };
    let ea = eps_dobj(d, &da)?;
    let ga = ds.ext(&da)?;
    let db = DAtom { base: ga.clone(), atom: b.clone() };
    let eb = eps_dobj(d, &db)?;
    let ob = |x: &DAtom<CObj>, y: &DAtom<CObj>, what: &str| {
        if d.eq_dobj(x, y) {
            Outcome::Pass
        } else {
            fail(what, x, y)
        }
    };
    let mb = |x: &DArrow<CObj, CMor>, y: &DArrow<CObj, CMor>, what: &str| {
        if d.eq_dmor(x, y) {
            Outcome::Pass
        } else {
            fail(what, x, y)
        }
    };
    let mut out = obj_eq(d.c, "comprehension", &ga, &d.ext(&ea)?);
    out = both(out, ob(&eps_dobj(d, &DAtom { base: g.clone(), atom: ds.unit().atom })?, &unit_over(d, g)?, "unit"));
    out = both(out, ob(&eps_dobj(d, &ds.sigma(&da, &db)?)?, &d.sigma(&ea, &eb)?, "Σ"));
    out = both(out, ob(&eps_dobj(d, &ds.pi(&da, &db)?)?, &d.pi(&ea, &eb)?, "Π"));
    out = both(out, mb(&eps_dmor(d, &ds.p2(&da)?)?, &d.p2(&ea)?, "π₂"));
    out = both(out, mb(&eps_dmor(d, &ds.unit_bang(g)?)?, &d.unit_bang(g)?, "𝐛"));
    out = both(out, mb(&eps_dmor(d, &ds.varpi1(&da, &db)?)?, &d.varpi1(&ea, &eb)?, "ϖ₁"));
    out = both(out, mb(&eps_dmor(d, &ds.varpi2(&da, &db)?)?, &d.varpi2(&ea, &eb)?, "ϖ₂"));
    out = both(out, mb(&eps_dmor(d, &ds.dev(&da, &db)?)?, &d.dev(&ea, &eb)?, "dev"));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Sampling D(c)

/// Samples for `check_laws` on D(c) and on D(S(D(c))), which share carriers.
pub struct DSampler<'a> {
    pub fin: &'a FinCtxCcc,
    pub rng: ChaCha8Rng,
    pub objects: Vec<CObj>,
    pub atoms: Vec<CObj>,
    pub candidate_cap: u128,
    pub fallback_samples: usize,
}

impl<'a> DSampler<'a> {
    pub fn new(fin: &'a FinCtxCcc, objects: Vec<CObj>, atoms: Vec<CObj>, seed: u64) -> Self {
        DSampler {
            fin,
            rng: ChaCha8Rng::seed_from_u64(seed),
            objects,
            atoms,
            candidate_cap: 20_000,
            fallback_samples: 256,
        }
    }

    /// Every (Γ, A, B) with Γ from `objects` and A, B from `atoms`.
    pub fn seeds(&self) -> Vec<Seed<CObj, DAtom<CObj>>> {
        let mut out = Vec::new();
        for g in &self.objects {
            for a in &self.atoms {
                let ga = self.fin.product(g, a).unwrap_or_else(|_| g.clone());
                for b in &self.atoms {
                    out.push(Seed {
                        gamma: g.clone(),
                        a: DAtom { base: g.clone(), atom: a.clone() },
                        b: DAtom { base: ga.clone(), atom: b.clone() },
                    });
                }
            }
        }
        out
    }

    /// `n` triples (Γ, A, B) drawn uniformly from `objects` and `atoms`.
    pub fn random_seeds(&mut self, n: usize) -> Vec<Seed<CObj, DAtom<CObj>>> {
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let (Some(g), Some(a), Some(b)) = (
                self.objects.choose(&mut self.rng).cloned(),
                self.atoms.choose(&mut self.rng).cloned(),
                self.atoms.choose(&mut self.rng).cloned(),
            ) else {
                break;
            };
            let ga = self.fin.product(&g, &a).unwrap_or_else(|_| g.clone());
            out.push(Seed { gamma: g.clone(), a: DAtom { base: g, atom: a }, b: DAtom { base: ga, atom: b } });
        }
        out
    }

    fn candidates(&mut self, dom: &CObj, cod: &CObj, hint: Option<&CMor>) -> Vec<CMor> {
        match self.fin.hom_size(dom, cod) {
            Ok(n) if n <= self.candidate_cap => self.fin.hom(dom, cod).unwrap_or_default(),
            Ok(_) => {
                let mut v: Vec<CMor> = hint.into_iter().cloned().collect();
                for _ in 0..self.fallback_samples {
                    if let Ok(Some(f)) = self.fin.random_mor(&mut self.rng, dom, cod) {
                        v.push(f);
                    }
                }
                v
            }
            Err(_) => hint.into_iter().cloned().collect(),
        }
    }
}

impl<'a, 'b, C: CtxCcc<Obj = CObj, Mor = CMor>> Sampler<DModel<'b, C>> for DSampler<'a> {
    fn object(&mut self) -> CObj {
        self.objects.choose(&mut self.rng).unwrap().clone()
    }

    fn dobj(&mut self, base: &CObj) -> Option<DAtom<CObj>> {
        Some(DAtom { base: base.clone(), atom: self.atoms.choose(&mut self.rng)?.clone() })
    }

    fn mor(&mut self, dom: &CObj, cod: &CObj) -> Option<CMor> {
        self.fin.random_mor(&mut self.rng, dom, cod).ok().flatten()
    }

    fn dmor(&mut self, a: &DAtom<CObj>) -> Option<DArrow<CObj, CMor>> {
        let mor = self.fin.random_mor(&mut self.rng, &a.base, &a.atom).ok().flatten()?;
        Some(DArrow { base: a.base.clone(), atom: a.atom.clone(), mor })
    }

    fn mor_candidates(&mut self, dom: &CObj, cod: &CObj, hint: Option<&CMor>) -> Vec<CMor> {
        self.candidates(dom, cod, hint)
    }

    fn dmor_candidates(&mut self, a: &DAtom<CObj>, hint: Option<&DArrow<CObj, CMor>>) -> Vec<DArrow<CObj, CMor>> {
        self.candidates(&a.base, &a.atom, hint.map(|h| &h.mor))
            .into_iter()
            .map(|mor| DArrow { base: a.base.clone(), atom: a.atom.clone(), mor })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// The simply typed fragment

/// Interpretations of nullary base types and constants for classical evaluation.
pub struct StlcEnv<C: CtxCcc> {
    pub types: BTreeMap<Sym, C::Obj>,
    /// Points T → ⟦B⟧.
    pub consts: BTreeMap<Sym, C::Mor>,
}

fn unsupported<T>(what: &str) -> IResult<T> {
    Err(InterpError::Model(ModelError::Unsupported(what.to_string())))
}

fn strengthen(t: &Ty) -> IResult<Ty> {
    t.unshift(1).or_else(|_| unsupported("dependent type outside the simply typed fragment"))
}

/// ⟦A⟧: 1 ↦ T, A × B ↦ ⌈⟦A⟧ × ⟦B⟧⌉, A → B ↦ ⌈⟦B⟧^⟦A⟧⌉.
pub fn stlc_type<C: CtxCcc>(c: &C, env: &StlcEnv<C>, ty: &Ty) -> IResult<C::Obj> {
    Ok(match ty {
        Ty::Unit => c.terminal(),
        Ty::Const(s, args) if args.is_empty() => match env.types.get(s) {
            Some(o) => o.clone(),
            None => return Err(InterpError::MissingConstant(s.clone())),
        },
        Ty::Const(..) => return unsupported("indexed type constant"),
        Ty::Sigma(_, a, b) => {
            let (x, y) = (stlc_type(c, env, a)?, stlc_type(c, env, &strengthen(b)?)?);
            c.atomize(&c.product(&x, &y)?)?.atom
        }
        Ty::Pi(_, a, b) => {
            let (x, y) = (stlc_type(c, env, a)?, stlc_type(c, env, &strengthen(b)?)?);
            c.atomize(&c.exp(&x, &y)?)?.atom
        }
    })
}

pub fn stlc_ctx<C: CtxCcc>(c: &C, env: &StlcEnv<C>, g: &Ctx) -> IResult<C::Obj> {
    let mut acc = c.terminal();
    for (_, t) in g.entries() {
        acc = c.product(&acc, &stlc_type(c, env, t)?)?;
    }
    Ok(acc)
}

/// The classical semantics ⟦Γ ⊢ t : A⟧ : ⟦Γ⟧ → ⟦A⟧ in a CtxCCC.
pub fn stlc_eval<C: CtxCcc>(c: &C, ck: &Checker, env: &StlcEnv<C>, g: &Ctx, t: &Tm, a: &Ty) -> IResult<C::Mor> {
    let here = stlc_ctx(c, env, g)?;
    let whnf = |ty: &Ty| -> IResult<Ty> { Ok(ck.normalize_type(g, ty)?) };
    Ok(match t {
        Tm::Var(v) => {
            let p = g.parent().ok_or_else(|| InterpError::IllTyped("unbound variable".into()))?;
            let (_, last) = g.last().unwrap();
            let (pc, lc) = (stlc_ctx(c, env, &p)?, stlc_type(c, env, last)?);
            if v.index == 0 {
                c.p2(&pc, &lc)?
            } else {
                let ty = p.lookup(v.index - 1).ok_or_else(|| InterpError::IllTyped("unbound variable".into()))?;
                let inner = stlc_eval(c, ck, env, &p, &Tm::var(v.index - 1, v.name.as_str()), &ty)?;
                c.compose(&inner, &c.p1(&pc, &lc)?)?
            }
        }
        Tm::Star => c.bang(&here)?,
        Tm::Lam(_, _, body) => match whnf(a)? {
            Ty::Pi(n, dom, cod) => {
                let (x, y) = (stlc_type(c, env, &dom)?, stlc_type(c, env, &strengthen(&cod)?)?);
                let inner = g.push(g.fresh_name(n.as_str()), (*dom).clone());
                let f = stlc_eval(c, ck, env, &inner, body, &cod)?;
                c.compose(&c.atomize(&c.exp(&x, &y)?)?.pack, &c.curry(&here, &x, &y, &f)?)?
            }
            _ => return Err(InterpError::IllTyped("λ at a non-function type".into())),
        },
        Tm::App(f, x) => match ck.infer_term(g, f)? {
            Ty::Pi(n, dom, cod) => {
                let (xa, yb) = (stlc_type(c, env, &dom)?, stlc_type(c, env, &strengthen(&cod)?)?);
                let fm = stlc_eval(c, ck, env, g, f, &Ty::Pi(n, dom.clone(), cod))?;
                let unpack = c.atomize(&c.exp(&xa, &yb)?)?.unpack;
                let arg = stlc_eval(c, ck, env, g, x, &dom)?;
                c.compose(&c.ev(&xa, &yb)?, &c.pairing(&c.compose(&unpack, &fm)?, &arg)?)?
            }
            _ => return Err(InterpError::IllTyped("application of a non-function".into())),
        },
        Tm::Pair(x, y) => match whnf(a)? {
            Ty::Sigma(_, dom, cod) => {
                let cod = strengthen(&cod)?;
                let (xa, yb) = (stlc_type(c, env, &dom)?, stlc_type(c, env, &cod)?);
                let pair = c.pairing(&stlc_eval(c, ck, env, g, x, &dom)?, &stlc_eval(c, ck, env, g, y, &cod)?)?;
                c.compose(&c.atomize(&c.product(&xa, &yb)?)?.pack, &pair)?
            }
            _ => return Err(InterpError::IllTyped("pair at a non-product type".into())),
        },
        Tm::RSig { motive, x, y, body, scrut, .. } => match ck.infer_term(g, scrut)? {
            Ty::Sigma(n, dom, cod) => {
                let _ = n;
                let cod1 = strengthen(&cod)?;
                let (xa, yb) = (stlc_type(c, env, &dom)?, stlc_type(c, env, &cod1)?);
                let gx = g.push(g.fresh_name(x.as_str()), (*dom).clone());
                let inner = gx.push(gx.fresh_name(y.as_str()), (*cod).clone());
                let body_ty = motive.shift_from(2, 1).subst(&Tm::pair(Tm::var(1, x.as_str()), Tm::var(0, y.as_str())));
                let gm = stlc_eval(c, ck, env, &inner, body, &body_ty)?;
                let sm = stlc_eval(c, ck, env, g, scrut, &Ty::Sigma(n.clone(), dom.clone(), cod.clone()))?;
                let u = c.compose(&c.atomize(&c.product(&xa, &yb)?)?.unpack, &sm)?;
                let fst = c.compose(&c.p1(&xa, &yb)?, &u)?;
                let snd = c.compose(&c.p2(&xa, &yb)?, &u)?;
                c.compose(&gm, &c.pairing(&c.pairing(&c.id(&here)?, &fst)?, &snd)?)?
            }
            _ => return Err(InterpError::IllTyped("eliminated term is not a pair".into())),
        },
        Tm::Const(s, args) if args.is_empty() => match env.consts.get(s) {
            Some(pt) => c.compose(pt, &c.bang(&here)?)?,
            None => return Err(InterpError::MissingConstant(s.clone())),
        },
        Tm::Const(..) => return unsupported("term constant with arguments"),
    })
}

/// Interprets the nullary constants of a simply typed signature in the
/// instance: each type constant named like a base carrier becomes that
/// atom, each term constant the given element.
#[allow(clippy::type_complexity)]
pub fn stlc_setup<'c>(
    fin: &'c FinCtxCcc,
    type_consts: &[Sym],
    points: &[(Sym, Sym, Elem)],
) -> MResult<(Structure<DModel<'c, FinCtxCcc>>, StlcEnv<FinCtxCcc>)> {
    let mut s = Structure::new();
    let mut env = StlcEnv { types: BTreeMap::new(), consts: BTreeMap::new() };
    for b in type_consts {
        let atom = CObj::atom(STy::Base(b.clone()));
        fin.carrier(&atom)?;
        s.types.insert(b.clone(), DAtom { base: CObj::terminal(), atom: atom.clone() });
        env.types.insert(b.clone(), atom);
    }
    for (name, ty, e) in points {
        let atom = CObj::atom(STy::Base(ty.clone()));
        let pt = fin.point(&atom, Elem::pair(Elem::Unit, e.clone()))?;
        s.terms.insert(name.clone(), DArrow { base: CObj::terminal(), atom, mor: pt.clone() });
        env.consts.insert(name.clone(), pt);
    }
    Ok((s, env))
}

/// Compares ε⁻¹ of the CwF denotation in D(c) with the classical one.
/// `Ok(None)` when they agree.
pub fn stlc_agree(
    it: &Interpreter<'_, '_, DModel<'_, FinCtxCcc>>,
    env: &StlcEnv<FinCtxCcc>,
    g: &Ctx,
    t: &Tm,
    a: &Ty,
) -> IResult<Option<String>> {
    let fin = it.model.c;
    let dm = it.term(g, t, a)?;
    let via_d = fin.pairing(&fin.bang(&dm.base)?, &dm.mor)?;
    let classical = stlc_eval(fin, it.checker(), env, g, t, a)?;
    Ok((via_d != classical).then(|| format!("{:?} vs {:?}", via_d, classical)))
}

// ---------------------------------------------------------------------------
// Instance files

/// A finite CtxCCC description: named base carriers and a depth bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub atoms: Vec<(Sym, FinSet)>,
    pub depth: usize,
}

impl Instance {
    pub fn build(&self) -> FinCtxCcc {
        FinCtxCcc::new(self.atoms.clone())
    }
}

fn parse_elem(s: &str) -> Elem {
    match s.parse::<i64>() {
        Ok(n) => Elem::Int(n),
        Err(_) => Elem::sym(s),
    }
}

/// Lines `atom <name> = {e, …}` and `depth <n>`; `#` starts a comment.
pub fn parse_instance(src: &str) -> Result<Instance, String> {
    let mut atoms = Vec::new();
    let mut depth = None;
    for (no, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| format!("line {}: {}", no + 1, m);
        if let Some(rest) = line.strip_prefix("depth") {
            depth = Some(rest.trim().parse::<usize>().map_err(|_| err("expected a number after depth"))?);
        } else if let Some(rest) = line.strip_prefix("atom") {
            let (name, set) = rest.split_once('=').ok_or_else(|| err("expected atom <name> = {...}"))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                return Err(err("bad atom name"));
            }
            let body = set
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| err("carrier must be written {e, ...}"))?;
            let elems: Vec<Elem> =
                body.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_elem).collect();
            if elems.is_empty() {
                return Err(err("empty carrier"));
            }
            if atoms.iter().any(|(n, _): &(Sym, FinSet)| n.as_str() == name) {
                return Err(err("duplicate atom"));
            }
            atoms.push((Sym::new(name), FinSet::new(elems)));
        } else {
            return Err(err("expected `atom` or `depth`"));
        }
    }
    if atoms.is_empty() {
        return Err("no atoms declared".into());
    }
    Ok(Instance { atoms, depth: depth.unwrap_or(2) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwf::check_laws;

    fn two() -> FinCtxCcc {
        FinCtxCcc::new(alloc::vec![(Sym::new("b0"), FinSet::range(2)), (Sym::new("b1"), FinSet::new(alloc::vec![Elem::sym("a")]))])
    }

    #[test]
    fn object_enumeration() {
        let c = two();
        assert_eq!(c.types_up_to(1).len(), 2);
        assert_eq!(c.types_up_to(2).len(), 10);
        let objs = c.objects_up_to(2);
        assert_eq!(objs.len(), 1 + 10 + 4);
    }

    #[test]
    fn right_shift_of_length_two() {
        let c = two();
        let d = DModel::new(&c);
        let o = CObj::new(alloc::vec![STy::base("b0"), STy::base("b1")]);
        let rs = right_shift(&d, &o).unwrap();
        assert_eq!(rs.r_obj.atom, CObj::atom(STy::prod(STy::base("b0"), STy::base("b1"))));
        let one = CObj::atom(STy::base("b0"));
        let rs1 = right_shift(&d, &one).unwrap();
        assert_eq!(rs1.r, c.id(&one).unwrap());
    }

    #[test]
    fn ccc_laws_hold_for_the_instance_and_its_round_trip() {
        let c = two();
        let objs = c.objects_up_to(2);
        let r = check_ccc_laws(&c, &c, &objs, 100, 1);
        assert!(r.all_passed() && r.unchecked().is_empty(), "{}", r);
        let d = DModel::new(&c);
        let s = SCcc::new(&d);
        let r = check_ccc_laws(&s, &c, &objs, 60, 2);
        assert!(r.all_passed() && r.unchecked().is_empty(), "{}", r);
    }

    #[test]
    fn d_of_c_satisfies_the_cwf_laws() {
        let c = two();
        let objs = c.objects_up_to(1);
        let atoms = FinCtxCcc::atoms_of(&objs);
        let d = DModel::new(&c);
        let mut s = DSampler::new(&c, objs, atoms, 3);
        let seeds = s.seeds();
        let r = check_laws(&d, &mut s, &seeds);
        assert!(r.all_passed() && r.unchecked().is_empty(), "{}", r);
    }

    #[test]
    fn round_trip_small() {
        let c = two();
        let objs = c.objects_up_to(2);
        let r = roundtrip_check(&c, &objs, RoundTrip { pairs: 30, ..RoundTrip::default() });
        assert!(r.all_passed() && r.unchecked().is_empty(), "{}", r);
    }

    #[test]
    fn instance_files() {
        let i = parse_instance("# demo\natom b0 = {0, 1}\natom b1 = {a}\ndepth 3\n").unwrap();
        assert_eq!(i.depth, 3);
        assert_eq!(i.atoms.len(), 2);
        assert!(parse_instance("atom b0 = {}\n").is_err());
        assert!(parse_instance("nonsense\n").is_err());
    }
}
