//! Finite sets and set-indexed families: the set-theoretic model, executable.
//!
//! Carriers are canonical sorted vectors of [`Elem`], so structurally equal
//! constructions compare equal. Comprehension Γ.A holds pairs (x, a), Σ
//! fibers hold pairs (a, b) and Π fibers hold dependent function tables.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cwf::{plus, MResult, Model, ModelError, Sampler, Seed};

/// Elements of carriers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    /// •
    Unit,
    Int(i64),
    Sym(Arc<str>),
    Pair(Arc<Elem>, Arc<Elem>),
    /// A finite function as a graph sorted by argument.
    Fun(Arc<Vec<(Elem, Elem)>>),
    Tag(u32, Arc<Elem>),
}

impl Elem {
    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn sym(s: &str) -> Elem {
        Elem::Sym(Arc::from(s))
    }

    pub fn fun(mut graph: Vec<(Elem, Elem)>) -> Elem {
        graph.sort();
        graph.dedup_by(|x, y| x.0 == y.0);
        Elem::Fun(Arc::new(graph))
    }

    pub fn fst(&self) -> Option<&Elem> {
        match self {
            Elem::Pair(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn snd(&self) -> Option<&Elem> {
        match self {
            Elem::Pair(_, b) => Some(b),
            _ => None,
        }
    }

    /// Apply a function element.
    pub fn call(&self, x: &Elem) -> Option<&Elem> {
        match self {
            Elem::Fun(g) => g.binary_search_by(|(a, _)| a.cmp(x)).ok().map(|i| &g[i].1),
            Elem::Tag(_, e) => e.call(x),
            _ => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Unit => f.write_str("•"),
            Elem::Int(i) => write!(f, "{}", i),
            Elem::Sym(s) => f.write_str(s),
            Elem::Pair(a, b) => write!(f, "({}, {})", a, b),
            Elem::Fun(g) => {
                f.write_str("[")?;
                for (i, (a, b)) in g.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{} -> {}", a, b)?;
                }
                f.write_str("]")
            }
            Elem::Tag(t, e) => write!(f, "#{}:{}", t, e),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set, kept sorted and duplicate-free.
#[derive(Clone, Eq, PartialOrd, Ord)]
pub struct FinSet(Arc<Vec<Elem>>);

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl core::hash::Hash for FinSet {
    fn hash<H: core::hash::Hasher>(&self, h: &mut H) {
        self.0.hash(h)
    }
}

impl FinSet {
    pub fn new(mut elems: Vec<Elem>) -> FinSet {
        elems.sort();
        elems.dedup();
        FinSet(Arc::new(elems))
    }

    /// Already sorted and deduplicated.
    fn sorted(elems: Vec<Elem>) -> FinSet {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        FinSet(Arc::new(elems))
    }

    pub fn empty() -> FinSet {
        FinSet(Arc::new(Vec::new()))
    }

    pub fn singleton() -> FinSet {
        FinSet::sorted(alloc::vec![Elem::Unit])
    }

    /// {0, …, n-1}
    pub fn range(n: usize) -> FinSet {
        FinSet::sorted((0..n as i64).map(Elem::Int).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.0
    }

    pub fn index_of(&self, x: &Elem) -> Option<usize> {
        self.0.binary_search(x).ok()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.index_of(x).is_some()
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", e)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A family of finite sets over `base`; `fibers[i]` sits over `base.elems()[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DFinSet {
    pub base: FinSet,
    fibers: Arc<Vec<FinSet>>,
}

impl DFinSet {
    pub fn new(base: FinSet, fibers: Vec<FinSet>) -> MResult<DFinSet> {
        if base.len() != fibers.len() {
            return Err(ModelError::Mismatch(alloc::format!(
                "{} fibers over a base of size {}",
                fibers.len(),
                base.len()
            )));
        }
        Ok(DFinSet { base, fibers: Arc::new(fibers) })
    }

    pub fn constant(base: FinSet, fiber: FinSet) -> DFinSet {
        let fibers = alloc::vec![fiber; base.len()];
        DFinSet { base, fibers: Arc::new(fibers) }
    }

    pub fn fibers(&self) -> &[FinSet] {
        &self.fibers
    }

    pub fn fiber(&self, x: &Elem) -> Option<&FinSet> {
        self.base.index_of(x).map(|i| &self.fibers[i])
    }

    /// Σ_x |A_x|
    pub fn total(&self) -> usize {
        self.fibers.iter().map(FinSet::len).sum()
    }

    /// Number of sections, saturating.
    pub fn sections(&self) -> u128 {
        self.fibers.iter().fold(1u128, |acc, f| acc.saturating_mul(f.len() as u128))
    }

    /// The comprehension {(x, a) | a ∈ A_x}.
    pub fn comprehension(&self) -> FinSet {
        let mut v = Vec::with_capacity(self.total());
        for (x, f) in self.base.elems().iter().zip(self.fibers.iter()) {
            for a in f.elems() {
                v.push(Elem::pair(x.clone(), a.clone()));
            }
        }
        FinSet::sorted(v)
    }
}

impl fmt::Display for DFinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, s)) in self.base.elems().iter().zip(self.fibers.iter()).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", x, s)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for DFinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn fmt_table(f: &mut fmt::Formatter<'_>, dom: &FinSet, table: &[Elem]) -> fmt::Result {
    f.write_str("{")?;
    for (i, (x, y)) in dom.elems().iter().zip(table).enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{} -> {}", x, y)?;
    }
    f.write_str("}")
}

/// A function between finite sets, tabulated along `dom`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinFun {
    pub dom: FinSet,
    pub cod: FinSet,
    table: Arc<Vec<Elem>>,
}

impl FinFun {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<Elem>) -> MResult<FinFun> {
        if table.len() != dom.len() || !table.iter().all(|y| cod.contains(y)) {
            return Err(ModelError::Mismatch(alloc::format!("not a function {} -> {}", dom, cod)));
        }
        Ok(FinFun { dom, cod, table: Arc::new(table) })
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, x: &Elem) -> Option<&Elem> {
        self.dom.index_of(x).map(|i| &self.table[i])
    }
}

impl fmt::Display for FinFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_table(f, &self.dom, &self.table)
    }
}

impl fmt::Debug for FinFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A section of a family: `table[i] ∈ cod.fibers()[i]`, with `cod.base == dom`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DFinFun {
    pub cod: DFinSet,
    table: Arc<Vec<Elem>>,
}

impl DFinFun {
    pub fn new(cod: DFinSet, table: Vec<Elem>) -> MResult<DFinFun> {
        let ok = table.len() == cod.base.len() && table.iter().zip(cod.fibers()).all(|(y, f)| f.contains(y));
        if !ok {
            return Err(ModelError::Mismatch(alloc::format!("not a section of {}", cod)));
        }
        Ok(DFinFun { cod, table: Arc::new(table) })
    }

    pub fn dom(&self) -> &FinSet {
        &self.cod.base
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, x: &Elem) -> Option<&Elem> {
        self.cod.base.index_of(x).map(|i| &self.table[i])
    }
}

impl fmt::Display for DFinFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_table(f, &self.cod.base, &self.table)
    }
}

impl fmt::Debug for DFinFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub const DEFAULT_LIMIT: usize = 1_000_000;

/// The model. `limit` bounds every carrier it constructs; `pi_tag` wraps Π
/// elements in a tag, giving a second, isomorphic Π structure.
#[derive(Clone, Debug)]
pub struct FinSetModel {
    pub limit: usize,
    pub pi_tag: Option<u32>,
}

impl Default for FinSetModel {
    fn default() -> Self {
        FinSetModel { limit: DEFAULT_LIMIT, pi_tag: None }
    }
}

fn mismatch<T>(what: &str) -> MResult<T> {
    Err(ModelError::Mismatch(what.into()))
}

fn at<'a>(f: &'a FinFun, x: &Elem) -> MResult<&'a Elem> {
    f.apply(x).ok_or_else(|| ModelError::Mismatch(alloc::format!("{} outside the domain of {}", x, f)))
}

fn dat<'a>(f: &'a DFinFun, x: &Elem) -> MResult<&'a Elem> {
    f.apply(x).ok_or_else(|| ModelError::Mismatch(alloc::format!("{} outside the domain of {}", x, f)))
}

fn split(x: &Elem) -> MResult<(&Elem, &Elem)> {
    match x {
        Elem::Pair(a, b) => Ok((a, b)),
        _ => mismatch("expected a pair"),
    }
}

impl FinSetModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_limit(limit: usize) -> Self {
        FinSetModel { limit, pi_tag: None }
    }

    fn check_size(&self, n: u128) -> MResult<()> {
        if n > self.limit as u128 {
            Err(ModelError::CardinalityLimit { limit: self.limit })
        } else {
            Ok(())
        }
    }

    fn wrap(&self, e: Elem) -> Elem {
        match self.pi_tag {
            Some(t) => Elem::Tag(t, Arc::new(e)),
            None => e,
        }
    }

    /// All dependent functions a ↦ b with b ∈ fam(a), over `dom`.
    fn dependent_functions(&self, dom: &FinSet, fam: &[&FinSet]) -> MResult<Vec<Elem>> {
        let n = fam.iter().fold(1u128, |acc, f| acc.saturating_mul(f.len() as u128));
        self.check_size(n)?;
        let mut out = Vec::with_capacity(n as usize);
        if fam.iter().any(|f| f.is_empty()) {
            return Ok(out);
        }
        let mut idx = alloc::vec![0usize; fam.len()];
        loop {
            let graph = dom.elems().iter().zip(fam.iter().zip(&idx)).map(|(a, (f, &i))| (a.clone(), f.elems()[i].clone()));
            out.push(self.wrap(Elem::Fun(Arc::new(graph.collect()))));
            // odometer, last position fastest
            let mut k = fam.len();
            loop {
                if k == 0 {
                    out.sort();
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < fam[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    fn unwrap_fun<'a>(&self, e: &'a Elem) -> MResult<&'a Elem> {
        match (self.pi_tag, e) {
            (None, Elem::Fun(_)) => Ok(e),
            (Some(t), Elem::Tag(u, inner)) if t == *u => Ok(inner),
            _ => mismatch("not an element of this Π"),
        }
    }

    /// Every section of `a`, or `CardinalityLimit` past `limit`.
    pub fn enumerate_dmorphisms(&self, a: &DFinSet, limit: usize) -> MResult<Vec<DFinFun>> {
        if a.sections() > limit as u128 {
            return Err(ModelError::CardinalityLimit { limit });
        }
        Ok(all_sections(a))
    }
}

fn all_sections(a: &DFinSet) -> Vec<DFinFun> {
    let fibers = a.fibers();
    let mut out = Vec::new();
    if fibers.iter().any(|f| f.is_empty()) {
        return out;
    }
    let mut idx = alloc::vec![0usize; fibers.len()];
    loop {
        let table = fibers.iter().zip(&idx).map(|(f, &i)| f.elems()[i].clone()).collect();
        out.push(DFinFun { cod: a.clone(), table: Arc::new(table) });
        let mut k = fibers.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < fibers[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn all_functions(dom: &FinSet, cod: &FinSet) -> Vec<FinFun> {
    let fam = DFinSet::constant(dom.clone(), cod.clone());
    all_sections(&fam)
        .into_iter()
        .map(|s| FinFun { dom: dom.clone(), cod: cod.clone(), table: s.table })
        .collect()
}

impl Model for FinSetModel {
    type Obj = FinSet;
    type Mor = FinFun;
    type DObj = DFinSet;
    type DMor = DFinFun;

    fn terminal(&self) -> FinSet {
        FinSet::singleton()
    }

    fn bang(&self, g: &FinSet) -> MResult<FinFun> {
        Ok(FinFun { dom: g.clone(), cod: FinSet::singleton(), table: Arc::new(alloc::vec![Elem::Unit; g.len()]) })
    }

    fn id(&self, g: &FinSet) -> MResult<FinFun> {
        Ok(FinFun { dom: g.clone(), cod: g.clone(), table: g.0.clone() })
    }

    fn compose(&self, g: &FinFun, f: &FinFun) -> MResult<FinFun> {
        if f.cod != g.dom {
            return mismatch("compose: codomain and domain differ");
        }
        let table = f.table.iter().map(|y| at(g, y).cloned()).collect::<MResult<_>>()?;
        Ok(FinFun { dom: f.dom.clone(), cod: g.cod.clone(), table: Arc::new(table) })
    }

    fn dom(&self, f: &FinFun) -> FinSet {
        f.dom.clone()
    }

    fn cod(&self, f: &FinFun) -> FinSet {
        f.cod.clone()
    }

    fn base(&self, a: &DFinSet) -> FinSet {
        a.base.clone()
    }

    fn dmor_dom(&self, f: &DFinFun) -> FinSet {
        f.cod.base.clone()
    }

    fn dmor_cod(&self, f: &DFinFun) -> DFinSet {
        f.cod.clone()
    }

    fn reindex(&self, a: &DFinSet, phi: &FinFun) -> MResult<DFinSet> {
        if phi.cod != a.base {
            return mismatch("reindex: morphism does not land in the base");
        }
        let mut fibers = Vec::with_capacity(phi.dom.len());
        for y in phi.table.iter() {
            fibers.push(a.fiber(y).cloned().ok_or_else(|| ModelError::Mismatch("reindex".into()))?);
        }
        Ok(DFinSet { base: phi.dom.clone(), fibers: Arc::new(fibers) })
    }

    fn reindex_dmor(&self, f: &DFinFun, phi: &FinFun) -> MResult<DFinFun> {
        let cod = self.reindex(&f.cod, phi)?;
        let table = phi.table.iter().map(|y| dat(f, y).cloned()).collect::<MResult<_>>()?;
        Ok(DFinFun { cod, table: Arc::new(table) })
    }

    fn ext(&self, a: &DFinSet) -> MResult<FinSet> {
        self.check_size(a.total() as u128)?;
        Ok(a.comprehension())
    }

    fn p1(&self, a: &DFinSet) -> MResult<FinFun> {
        let dom = self.ext(a)?;
        let table = dom.elems().iter().map(|e| split(e).map(|p| p.0.clone())).collect::<MResult<_>>()?;
        Ok(FinFun { dom, cod: a.base.clone(), table: Arc::new(table) })
    }

    fn p2(&self, a: &DFinSet) -> MResult<DFinFun> {
        let p = self.p1(a)?;
        let cod = self.reindex(a, &p)?;
        let table = p.dom.elems().iter().map(|e| split(e).map(|p| p.1.clone())).collect::<MResult<_>>()?;
        Ok(DFinFun { cod, table: Arc::new(table) })
    }

    fn extend(&self, phi: &FinFun, a: &DFinSet, g: &DFinFun) -> MResult<FinFun> {
        if g.cod != self.reindex(a, phi)? {
            return mismatch("extend: term does not inhabit A{φ}");
        }
        let table = phi.table.iter().zip(g.table.iter()).map(|(x, y)| Elem::pair(x.clone(), y.clone())).collect();
        Ok(FinFun { dom: phi.dom.clone(), cod: self.ext(a)?, table: Arc::new(table) })
    }

    fn unit(&self) -> DFinSet {
        DFinSet::constant(FinSet::singleton(), FinSet::singleton())
    }

    fn unit_bang(&self, g: &FinSet) -> MResult<DFinFun> {
        let cod = DFinSet::constant(g.clone(), FinSet::singleton());
        Ok(DFinFun { cod, table: Arc::new(alloc::vec![Elem::Unit; g.len()]) })
    }

    fn sigma(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinSet> {
        if b.base != self.ext(a)? {
            return mismatch("Σ: B is not over Γ.A");
        }
        let mut fibers = Vec::with_capacity(a.base.len());
        for (x, ax) in a.base.elems().iter().zip(a.fibers()) {
            let mut v = Vec::new();
            for av in ax.elems() {
                let bx = b.fiber(&Elem::pair(x.clone(), av.clone())).unwrap();
                for bv in bx.elems() {
                    v.push(Elem::pair(av.clone(), bv.clone()));
                }
            }
            self.check_size(v.len() as u128)?;
            fibers.push(FinSet::sorted(v));
        }
        Ok(DFinSet { base: a.base.clone(), fibers: Arc::new(fibers) })
    }

    fn varpi1(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinFun> {
        let s = self.sigma(a, b)?;
        let p = self.p1(&s)?;
        let cod = self.reindex(a, &p)?;
        let table = p.dom.elems().iter().map(|e| Ok(split(split(e)?.1)?.0.clone())).collect::<MResult<_>>()?;
        Ok(DFinFun { cod, table: Arc::new(table) })
    }

    fn varpi2(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinFun> {
        let s = self.sigma(a, b)?;
        let p = self.p1(&s)?;
        let u = self.extend(&p, a, &self.varpi1(a, b)?)?;
        let cod = self.reindex(b, &u)?;
        let table = p.dom.elems().iter().map(|e| Ok(split(split(e)?.1)?.1.clone())).collect::<MResult<_>>()?;
        Ok(DFinFun { cod, table: Arc::new(table) })
    }

    fn dpair(&self, phi: &FinFun, a: &DFinSet, b: &DFinSet, g: &DFinFun, h: &DFinFun) -> MResult<DFinFun> {
        if h.cod != self.reindex(b, &self.extend(phi, a, g)?)? {
            return mismatch("dpair: second component has the wrong type");
        }
        let cod = self.reindex(&self.sigma(a, b)?, phi)?;
        let table = g.table.iter().zip(h.table.iter()).map(|(x, y)| Elem::pair(x.clone(), y.clone())).collect();
        Ok(DFinFun { cod, table: Arc::new(table) })
    }

    fn pi(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinSet> {
        if b.base != self.ext(a)? {
            return mismatch("Π: B is not over Γ.A");
        }
        let mut fibers = Vec::with_capacity(a.base.len());
        for (x, ax) in a.base.elems().iter().zip(a.fibers()) {
            let fam: Vec<&FinSet> =
                ax.elems().iter().map(|av| b.fiber(&Elem::pair(x.clone(), av.clone())).unwrap()).collect();
            fibers.push(FinSet::sorted(self.dependent_functions(ax, &fam)?));
        }
        Ok(DFinSet { base: a.base.clone(), fibers: Arc::new(fibers) })
    }

    fn dev(&self, a: &DFinSet, b: &DFinSet) -> MResult<DFinFun> {
        let pi = self.pi(a, b)?;
        let pp = self.p1(&pi)?;
        let a_up = self.reindex(a, &pp)?;
        let dom = self.ext(&a_up)?;
        let cod = self.reindex(b, &plus(self, &pp, a)?)?;
        let mut table = Vec::with_capacity(dom.len());
        for e in dom.elems() {
            let (xf, av) = split(e)?;
            let f = self.unwrap_fun(split(xf)?.1)?;
            table.push(f.call(av).cloned().ok_or_else(|| ModelError::Mismatch("dev".into()))?);
        }
        Ok(DFinFun { cod, table: Arc::new(table) })
    }

    fn lam(&self, a: &DFinSet, b: &DFinSet, f: &DFinFun) -> MResult<DFinFun> {
        if &f.cod != b {
            return mismatch("Λ: body does not inhabit B");
        }
        let cod = self.pi(a, b)?;
        let mut table = Vec::with_capacity(a.base.len());
        for (x, ax) in a.base.elems().iter().zip(a.fibers()) {
            let mut graph = Vec::with_capacity(ax.len());
            for av in ax.elems() {
                graph.push((av.clone(), dat(f, &Elem::pair(x.clone(), av.clone()))?.clone()));
            }
            table.push(self.wrap(Elem::Fun(Arc::new(graph))));
        }
        Ok(DFinFun { cod, table: Arc::new(table) })
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

pub type FinSeed = Seed<FinSet, DFinSet>;

/// Random finite sets, families and maps, with exhaustive candidate sets for
/// uniqueness checks whenever they fit under `candidate_cap`.
#[derive(Clone, Debug)]
pub struct FinSetSampler {
    pub rng: ChaCha8Rng,
    pub max_size: usize,
    pub candidate_cap: usize,
    /// Candidates drawn when the exhaustive set is too large.
    pub fallback_samples: usize,
}

impl FinSetSampler {
    pub fn new(seed: u64) -> Self {
        FinSetSampler { rng: ChaCha8Rng::seed_from_u64(seed), max_size: 3, candidate_cap: 20_000, fallback_samples: 256 }
    }

    fn fiber(&mut self) -> FinSet {
        // empty fibers are rarer than the rest
        let n = if self.rng.gen_ratio(1, 8) { 0 } else { self.rng.gen_range(1..=self.max_size) };
        FinSet::range(n)
    }

    fn random_section(&mut self, a: &DFinSet) -> Option<DFinFun> {
        let mut table = Vec::with_capacity(a.base.len());
        for f in a.fibers() {
            table.push(f.elems().choose(&mut self.rng)?.clone());
        }
        Some(DFinFun { cod: a.clone(), table: Arc::new(table) })
    }
}

impl Sampler<FinSetModel> for FinSetSampler {
    fn object(&mut self) -> FinSet {
        FinSet::range(self.rng.gen_range(0..=self.max_size))
    }

    fn dobj(&mut self, base: &FinSet) -> Option<DFinSet> {
        let fibers = (0..base.len()).map(|_| self.fiber()).collect();
        Some(DFinSet { base: base.clone(), fibers: Arc::new(fibers) })
    }

    fn mor(&mut self, dom: &FinSet, cod: &FinSet) -> Option<FinFun> {
        let s = self.random_section(&DFinSet::constant(dom.clone(), cod.clone()))?;
        Some(FinFun { dom: dom.clone(), cod: cod.clone(), table: s.table })
    }

    fn dmor(&mut self, a: &DFinSet) -> Option<DFinFun> {
        self.random_section(a)
    }

    fn mor_candidates(&mut self, dom: &FinSet, cod: &FinSet, hint: Option<&FinFun>) -> Vec<FinFun> {
        let fam = DFinSet::constant(dom.clone(), cod.clone());
        if fam.sections() <= self.candidate_cap as u128 {
            return all_functions(dom, cod);
        }
        let mut v: Vec<FinFun> = (0..self.fallback_samples).filter_map(|_| self.mor(dom, cod)).collect();
        v.extend(hint.cloned());
        v
    }

    fn dmor_candidates(&mut self, a: &DFinSet, hint: Option<&DFinFun>) -> Vec<DFinFun> {
        if a.sections() <= self.candidate_cap as u128 {
            return all_sections(a);
        }
        let mut v: Vec<DFinFun> = (0..self.fallback_samples).filter_map(|_| self.random_section(a)).collect();
        v.extend(hint.cloned());
        v
    }
}

fn families(base: &FinSet, max_fiber: usize, max_total: usize) -> Vec<DFinSet> {
    let mut out = Vec::new();
    let mut sizes = alloc::vec![0usize; base.len()];
    loop {
        if sizes.iter().sum::<usize>() <= max_total {
            let fibers = sizes.iter().map(|&n| FinSet::range(n)).collect();
            out.push(DFinSet { base: base.clone(), fibers: Arc::new(fibers) });
        }
        let mut k = sizes.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            sizes[k] += 1;
            if sizes[k] <= max_fiber {
                break;
            }
            sizes[k] = 0;
        }
    }
}

/// Every (Γ, A, B) with |Γ| ≤ `n`, fibers of A and B of size ≤ `n` and |Γ.A| ≤ `n`.
pub fn exhaustive_seeds(n: usize) -> Vec<FinSeed> {
    let m = FinSetModel::new();
    let mut out = Vec::new();
    for g in 0..=n {
        let gamma = FinSet::range(g);
        for a in families(&gamma, n, n) {
            let ga = m.ext(&a).unwrap();
            for b in families(&ga, n, usize::MAX) {
                out.push(Seed { gamma: gamma.clone(), a: a.clone(), b });
            }
        }
    }
    out
}

/// `count` random seeds with |Γ| ≤ 3 and all fibers of size ≤ 3.
pub fn random_seeds(count: usize, seed: u64) -> Vec<FinSeed> {
    let mut s = FinSetSampler::new(seed);
    (0..count)
        .map(|_| {
            let gamma = FinSet::range(s.rng.gen_range(1..=3));
            let a = s.dobj(&gamma).unwrap();
            let b = s.dobj(&a.comprehension()).unwrap();
            Seed { gamma, a, b }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwf::{check_laws, pi_uniqueness};

    fn fam(base: usize, sizes: &[usize]) -> DFinSet {
        DFinSet::new(FinSet::range(base), sizes.iter().map(|&n| FinSet::range(n)).collect()).unwrap()
    }

    #[test]
    fn comprehension_and_projections() {
        let m = FinSetModel::new();
        let a = fam(2, &[1, 2]);
        let ga = m.ext(&a).unwrap();
        assert_eq!(ga.len(), 3);
        let p = m.p1(&a).unwrap();
        assert_eq!(p.table(), &[Elem::Int(0), Elem::Int(1), Elem::Int(1)]);
        let v = m.p2(&a).unwrap();
        assert_eq!(v.table(), &[Elem::Int(0), Elem::Int(0), Elem::Int(1)]);
    }

    #[test]
    fn pi_fiber_counts_dependent_functions() {
        let m = FinSetModel::new();
        let a = fam(1, &[2]);
        let b = DFinSet::new(m.ext(&a).unwrap(), alloc::vec![FinSet::range(3), FinSet::range(2)]).unwrap();
        let pi = m.pi(&a, &b).unwrap();
        assert_eq!(pi.fibers()[0].len(), 6);
        let s = m.sigma(&a, &b).unwrap();
        assert_eq!(s.fibers()[0].len(), 5);
    }

    #[test]
    fn cardinality_limit_is_an_error() {
        let m = FinSetModel::with_limit(10);
        let a = fam(1, &[3]);
        let b = DFinSet::constant(m.ext(&a).unwrap(), FinSet::range(3));
        assert_eq!(m.pi(&a, &b), Err(ModelError::CardinalityLimit { limit: 10 }));
        assert!(m.enumerate_dmorphisms(&fam(3, &[3, 3, 3]), 26).is_err());
        assert_eq!(m.enumerate_dmorphisms(&fam(3, &[3, 3, 3]), 27).unwrap().len(), 27);
    }

    #[test]
    fn empty_base_and_empty_fibers() {
        let m = FinSetModel::new();
        let a = fam(2, &[0, 1]);
        let b = DFinSet::constant(m.ext(&a).unwrap(), FinSet::empty());
        let pi = m.pi(&a, &b).unwrap();
        assert_eq!(pi.fibers()[0].len(), 1);
        assert_eq!(pi.fibers()[1].len(), 0);
        assert_eq!(exhaustive_seeds(3).len(), 1148);
    }

    #[test]
    fn random_instances_pass_all_laws() {
        let m = FinSetModel::new();
        let mut s = FinSetSampler::new(7);
        let r = check_laws(&m, &mut s, &random_seeds(20, 7));
        assert!(r.all_passed(), "{}", r);
    }

    #[test]
    fn tagged_pi_is_isomorphic() {
        let m1 = FinSetModel::new();
        let m2 = FinSetModel { pi_tag: Some(1), ..FinSetModel::new() };
        let a = fam(2, &[1, 2]);
        let b = DFinSet::constant(m1.ext(&a).unwrap(), FinSet::range(2));
        assert_ne!(m1.pi(&a, &b).unwrap(), m2.pi(&a, &b).unwrap());
        assert!(pi_uniqueness(&m1, &m2, &a, &b).unwrap());
    }
}
