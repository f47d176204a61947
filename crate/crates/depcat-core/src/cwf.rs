//! The strict model interface (a CwF with unit, coherent Σ and coherent Π
//! structure), the formers derived from it, and a law harness that checks
//! every equation through the model's own equality.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Debug};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelError {
    /// Arguments whose domains or codomains do not line up.
    Mismatch(String),
    /// An enumerated carrier would exceed the configured bound.
    CardinalityLimit { limit: usize },
    /// Equality could not be decided (trusted axioms ran out of fuel).
    Undecided(String),
    /// The operation is not available on this argument.
    Unsupported(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Mismatch(m) => write!(f, "mismatch: {}", m),
            ModelError::CardinalityLimit { limit } => write!(f, "cardinality limit {} exceeded", limit),
            ModelError::Undecided(m) => write!(f, "undecided: {}", m),
            ModelError::Unsupported(m) => write!(f, "unsupported: {}", m),
        }
    }
}

pub type MResult<T> = Result<T, ModelError>;

/// A strict model. Objects are contexts, D-objects over Γ are types, and
/// D-morphisms Γ ⇾ A are terms. Every operation must be pure.
///
/// Conventions: `reindex(a, φ)` is A{φ}; `ext(a)` is Γ.A for A ∈ 𝒟(Γ);
/// `p1(a)` is π₁ : Γ.A → Γ and `p2(a)` is π₂ : Γ.A ⇾ A{π₁};
/// `extend(φ, a, g)` is ⟨φ, g⟩ : Δ → Γ.A for g : Δ ⇾ A{φ}.
pub trait Model {
    type Obj: Clone + Debug;
    type Mor: Clone + Debug;
    type DObj: Clone + Debug;
    type DMor: Clone + Debug;

    fn terminal(&self) -> Self::Obj;
    /// !_Γ : Γ → T
    fn bang(&self, g: &Self::Obj) -> MResult<Self::Mor>;
    fn id(&self, g: &Self::Obj) -> MResult<Self::Mor>;
    /// g ∘ f
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> MResult<Self::Mor>;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    /// Γ for A ∈ 𝒟(Γ)
    fn base(&self, a: &Self::DObj) -> Self::Obj;
    fn dmor_dom(&self, f: &Self::DMor) -> Self::Obj;
    fn dmor_cod(&self, f: &Self::DMor) -> Self::DObj;

    fn reindex(&self, a: &Self::DObj, phi: &Self::Mor) -> MResult<Self::DObj>;
    fn reindex_dmor(&self, f: &Self::DMor, phi: &Self::Mor) -> MResult<Self::DMor>;

    fn ext(&self, a: &Self::DObj) -> MResult<Self::Obj>;
    fn p1(&self, a: &Self::DObj) -> MResult<Self::Mor>;
    fn p2(&self, a: &Self::DObj) -> MResult<Self::DMor>;
    fn extend(&self, phi: &Self::Mor, a: &Self::DObj, g: &Self::DMor) -> MResult<Self::Mor>;

    /// 1 ∈ 𝒟(T)
    fn unit(&self) -> Self::DObj;
    /// 𝐛_Γ : Γ ⇾ 1{!_Γ}
    fn unit_bang(&self, g: &Self::Obj) -> MResult<Self::DMor>;

    /// Σ(A, B) ∈ 𝒟(Γ) for A ∈ 𝒟(Γ), B ∈ 𝒟(Γ.A)
    fn sigma(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DObj>;
    /// ϖ₁ : Γ.Σ(A,B) ⇾ A{π₁}
    fn varpi1(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DMor>;
    /// ϖ₂ : Γ.Σ(A,B) ⇾ B{⟨π₁, ϖ₁⟩}
    fn varpi2(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DMor>;
    /// ⦃g, h⦄ : Δ ⇾ Σ(A,B){φ} for φ : Δ → Γ, g : Δ ⇾ A{φ}, h : Δ ⇾ B{⟨φ, g⟩}
    fn dpair(
        &self,
        phi: &Self::Mor,
        a: &Self::DObj,
        b: &Self::DObj,
        g: &Self::DMor,
        h: &Self::DMor,
    ) -> MResult<Self::DMor>;

    /// Π(A, B) ∈ 𝒟(Γ)
    fn pi(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DObj>;
    /// dev : Γ.Π(A,B).A{π₁} ⇾ B{⟨π₁∘π₁, π₂⟩}
    fn dev(&self, a: &Self::DObj, b: &Self::DObj) -> MResult<Self::DMor>;
    /// Λ(f) : Γ ⇾ Π(A,B) for f : Γ.A ⇾ B
    fn lam(&self, a: &Self::DObj, b: &Self::DObj, f: &Self::DMor) -> MResult<Self::DMor>;

    fn eq_obj(&self, x: &Self::Obj, y: &Self::Obj) -> bool;
    fn eq_mor(&self, x: &Self::Mor, y: &Self::Mor) -> bool;
    fn eq_dobj(&self, x: &Self::DObj, y: &Self::DObj) -> bool;
    fn eq_dmor(&self, x: &Self::DMor, y: &Self::DMor) -> bool;

    /// True when equality is only semi-decided, so passing laws are conditional.
    fn conditional(&self) -> bool {
        false
    }
}

// ---------------------------------------------------------------------------
// Derived formers

/// φ^{+A} = ⟨φ∘π₁, π₂⟩ : Δ.A{φ} → Γ.A. With A a Σ-type this is φ*.
pub fn plus<M: Model>(m: &M, phi: &M::Mor, a: &M::DObj) -> MResult<M::Mor> {
    let a_phi = m.reindex(a, phi)?;
    let p = m.p1(&a_phi)?;
    let v = m.p2(&a_phi)?;
    m.extend(&m.compose(phi, &p)?, a, &v)
}

/// φ⁺⁺ = ⟨φ⁺∘π₁, π₂⟩ : Δ.A{φ}.B{φ⁺} → Γ.A.B
pub fn plus_plus<M: Model>(m: &M, phi: &M::Mor, a: &M::DObj, b: &M::DObj) -> MResult<M::Mor> {
    let pa = plus(m, phi, a)?;
    plus(m, &pa, b)
}

/// ā = ⟨id, a⟩ : Γ → Γ.A
pub fn section<M: Model>(m: &M, a: &M::DObj, t: &M::DMor) -> MResult<M::Mor> {
    let g = m.dmor_dom(t);
    m.extend(&m.id(&g)?, a, t)
}

/// Pair : Γ.A.B → Γ.Σ(A,B) and its inverse ⟨⟨π₁, ϖ₁⟩, ϖ₂⟩.
pub fn pair_iso<M: Model>(m: &M, a: &M::DObj, b: &M::DObj) -> MResult<(M::Mor, M::Mor)> {
    let pa = m.p1(a)?;
    let pb = m.p1(b)?;
    let phi = m.compose(&pa, &pb)?;
    let g = m.reindex_dmor(&m.p2(a)?, &pb)?;
    let h = m.p2(b)?;
    let s = m.sigma(a, b)?;
    let pair = m.extend(&phi, &s, &m.dpair(&phi, a, b, &g, &h)?)?;
    let ps = m.p1(&s)?;
    let u = m.extend(&ps, a, &m.varpi1(a, b)?)?;
    let inv = m.extend(&u, b, &m.varpi2(a, b)?)?;
    Ok((pair, inv))
}

/// R^Σ(f) = f{Pair⁻¹} : Γ.Σ(A,B) ⇾ P for f : Γ.A.B ⇾ P{Pair}.
pub fn sigma_elim<M: Model>(m: &M, a: &M::DObj, b: &M::DObj, f: &M::DMor) -> MResult<M::DMor> {
    let (_, inv) = pair_iso(m, a, b)?;
    m.reindex_dmor(f, &inv)
}

/// Λ⁻¹(k) = dev{⟨⟨id, k⟩∘π₁, π₂⟩} : Γ.A ⇾ B for k : Γ ⇾ Π(A,B).
pub fn lam_inv<M: Model>(m: &M, a: &M::DObj, b: &M::DObj, k: &M::DMor) -> MResult<M::DMor> {
    let pi = m.pi(a, b)?;
    let kbar = section(m, &pi, k)?;
    let pa = m.p1(a)?;
    let a_up = m.reindex(a, &m.p1(&pi)?)?;
    let sigma = m.extend(&m.compose(&kbar, &pa)?, &a_up, &m.p2(a)?)?;
    m.reindex_dmor(&m.dev(a, b)?, &sigma)
}

/// App(k, t) = Λ⁻¹(k){t̄} : Γ ⇾ B{t̄}
pub fn app<M: Model>(m: &M, a: &M::DObj, b: &M::DObj, k: &M::DMor, t: &M::DMor) -> MResult<M::DMor> {
    let body = lam_inv(m, a, b, k)?;
    m.reindex_dmor(&body, &section(m, a, t)?)
}

/// 1{!_Γ}
pub fn unit_over<M: Model>(m: &M, g: &M::Obj) -> MResult<M::DObj> {
    m.reindex(&m.unit(), &m.bang(g)?)
}

/// A morphism in the category of D-objects: (φ : Δ → Γ, f : Δ.D ⇾ C{φ∘π₁}) from D to C.
#[derive(Clone, Debug)]
pub struct DObjMorphism<Mor, DObj, DMor> {
    pub src: DObj,
    pub tgt: DObj,
    pub phi: Mor,
    pub f: DMor,
}

pub type DObjMor<M> = DObjMorphism<<M as Model>::Mor, <M as Model>::DObj, <M as Model>::DMor>;

/// (id, π₂) : A → A
pub fn dobj_id<M: Model>(m: &M, a: &M::DObj) -> MResult<DObjMor<M>> {
    Ok(DObjMorphism { src: a.clone(), tgt: a.clone(), phi: m.id(&m.base(a))?, f: m.p2(a)? })
}

/// (ψ, g) ∘ (φ, f) = (ψ∘φ, g{⟨φ∘π₁, f⟩})
pub fn dobj_compose<M: Model>(m: &M, second: &DObjMor<M>, first: &DObjMor<M>) -> MResult<DObjMor<M>> {
    let p = m.p1(&first.src)?;
    let u = m.extend(&m.compose(&first.phi, &p)?, &first.tgt, &first.f)?;
    Ok(DObjMorphism {
        src: first.src.clone(),
        tgt: second.tgt.clone(),
        phi: m.compose(&second.phi, &first.phi)?,
        f: m.reindex_dmor(&second.f, &u)?,
    })
}

pub fn dobj_eq<M: Model>(m: &M, x: &DObjMor<M>, y: &DObjMor<M>) -> bool {
    m.eq_dobj(&x.src, &y.src) && m.eq_dobj(&x.tgt, &y.tgt) && m.eq_mor(&x.phi, &y.phi) && m.eq_dmor(&x.f, &y.f)
}

/// Both composites of a purported isomorphism are identities.
pub fn is_iso_pair<M: Model>(m: &M, to: &DObjMor<M>, from: &DObjMor<M>) -> MResult<bool> {
    let there = dobj_compose(m, from, to)?;
    let back = dobj_compose(m, to, from)?;
    Ok(dobj_eq(m, &there, &dobj_id(m, &to.src)?) && dobj_eq(m, &back, &dobj_id(m, &to.tgt)?))
}

/// Triple : Σ(Σ(A,B), C) → Σ(A, Σ(B, C{Pair})) and its inverse, over id_Γ.
pub fn sigma_assoc<M: Model>(
    m: &M,
    a: &M::DObj,
    b: &M::DObj,
    c: &M::DObj,
) -> MResult<(DObjMor<M>, DObjMor<M>)> {
    let s = m.sigma(a, b)?;
    let (pair, _) = pair_iso(m, a, b)?;
    let c_pair = m.reindex(c, &pair)?;
    let t = m.sigma(b, &c_pair)?;
    let src = m.sigma(&s, c)?;
    let tgt = m.sigma(a, &t)?;
    let id = m.id(&m.base(a))?;

    // forward, over X = Γ.Σ(S, C)
    let q = m.p1(&src)?;
    let w1 = m.varpi1(&s, c)?;
    let w2 = m.varpi2(&s, c)?;
    let u = m.extend(&q, &s, &w1)?;
    let g = m.reindex_dmor(&m.varpi1(a, b)?, &u)?;
    let g2 = m.reindex_dmor(&m.varpi2(a, b)?, &u)?;
    let phi1 = m.extend(&q, a, &g)?;
    let inner = m.dpair(&phi1, b, &c_pair, &g2, &w2)?;
    let fwd = m.dpair(&q, a, &t, &g, &inner)?;

    // backward, over Y = Γ.Σ(A, T)
    let q = m.p1(&tgt)?;
    let v1 = m.varpi1(a, &t)?;
    let v2 = m.varpi2(a, &t)?;
    let u1 = m.extend(&q, a, &v1)?;
    let u2 = m.extend(&u1, &t, &v2)?;
    let b1 = m.reindex_dmor(&m.varpi1(b, &c_pair)?, &u2)?;
    let c1 = m.reindex_dmor(&m.varpi2(b, &c_pair)?, &u2)?;
    let inner = m.dpair(&q, a, b, &v1, &b1)?;
    let bwd = m.dpair(&q, &s, c, &inner, &c1)?;

    Ok((
        DObjMorphism { src: src.clone(), tgt: tgt.clone(), phi: id.clone(), f: fwd },
        DObjMorphism { src: tgt, tgt: src, phi: id, f: bwd },
    ))
}

/// Σ(1{!}, A{π₁}) ≅ A, as (to, from).
pub fn unit_law_left<M: Model>(m: &M, a: &M::DObj) -> MResult<(DObjMor<M>, DObjMor<M>)> {
    let g = m.base(a);
    let u = unit_over(m, &g)?;
    let a_up = m.reindex(a, &m.p1(&u)?)?;
    let l = m.sigma(&u, &a_up)?;
    let id = m.id(&g)?;
    let to = DObjMorphism { src: l.clone(), tgt: a.clone(), phi: id.clone(), f: m.varpi2(&u, &a_up)? };
    let pa = m.p1(a)?;
    let bang = m.unit_bang(&m.ext(a)?)?;
    let f = m.dpair(&pa, &u, &a_up, &bang, &m.p2(a)?)?;
    Ok((to, DObjMorphism { src: a.clone(), tgt: l, phi: id, f }))
}

/// Σ(A, 1{!}) ≅ A, as (to, from).
pub fn unit_law_right<M: Model>(m: &M, a: &M::DObj) -> MResult<(DObjMor<M>, DObjMor<M>)> {
    let g = m.base(a);
    let ga = m.ext(a)?;
    let u = unit_over(m, &ga)?;
    let r = m.sigma(a, &u)?;
    let id = m.id(&g)?;
    let to = DObjMorphism { src: r.clone(), tgt: a.clone(), phi: id.clone(), f: m.varpi1(a, &u)? };
    let pa = m.p1(a)?;
    let f = m.dpair(&pa, a, &u, &m.p2(a)?, &m.unit_bang(&ga)?)?;
    Ok((to, DObjMorphism { src: a.clone(), tgt: r, phi: id, f }))
}

/// Two Π-structures on the same (A, B) are related by ι = Λ'(dev) and
/// ȷ = Λ(dev'); returns whether (id, ι) and (id, ȷ) are mutually inverse.
/// `m2` must agree with `m1` on everything but Π.
pub fn pi_uniqueness<M: Model>(m1: &M, m2: &M, a: &M::DObj, b: &M::DObj) -> MResult<bool> {
    let transport = |from: &M, to: &M| -> MResult<DObjMor<M>> {
        let p = from.pi(a, b)?;
        let q = to.pi(a, b)?;
        let pp = m1.p1(&p)?;
        let a_up = m1.reindex(a, &pp)?;
        let b_up = m1.reindex(b, &plus(m1, &pp, a)?)?;
        let f = to.lam(&a_up, &b_up, &from.dev(a, b)?)?;
        Ok(DObjMorphism { src: p, tgt: q, phi: m1.id(&m1.base(a))?, f })
    };
    let iota = transport(m1, m2)?;
    let jota = transport(m2, m1)?;
    is_iso_pair(m1, &iota, &jota)
}

// ---------------------------------------------------------------------------
// Law harness

/// Supplies the parameters each law quantifies over. `None` means no such
/// value exists (an empty fiber, say) and the instance is skipped.
pub trait Sampler<M: Model> {
    fn object(&mut self) -> M::Obj;
    fn dobj(&mut self, base: &M::Obj) -> Option<M::DObj>;
    fn mor(&mut self, dom: &M::Obj, cod: &M::Obj) -> Option<M::Mor>;
    /// A D-morphism base(a) ⇾ a.
    fn dmor(&mut self, a: &M::DObj) -> Option<M::DMor>;
    /// Candidates for a uniqueness check: exhaustive where feasible.
    /// `hint` is the value uniqueness should single out.
    fn mor_candidates(&mut self, dom: &M::Obj, cod: &M::Obj, hint: Option<&M::Mor>) -> Vec<M::Mor>;
    fn dmor_candidates(&mut self, a: &M::DObj, hint: Option<&M::DMor>) -> Vec<M::DMor>;
}

/// One law instance: Γ, A ∈ 𝒟(Γ), B ∈ 𝒟(Γ.A). Everything else is sampled.
#[derive(Clone, Debug)]
pub struct Seed<O, D> {
    pub gamma: O,
    pub a: D,
    pub b: D,
}

pub type ModelSeed<M> = Seed<<M as Model>::Obj, <M as Model>::DObj>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

macro_rules! laws {
    ($($l:ident),* $(,)?) => {
        /// The laws in canonical report order.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Law { $($l),* }
        impl Law {
            pub const ALL: &'static [Law] = &[$(Law::$l),*];
            pub fn name(self) -> &'static str {
                match self { $(Law::$l => stringify!($l)),* }
            }
        }
    };
}

laws! {
    CatIdL, CatIdR, CatAssoc, TermUniq,
    TyId, TyComp, TmId, TmComp, ConsL, ConsR, ConsNat, ConsId, Strict,
    UnitSubst, StarSubst, UnitUniq,
    SigmaPi1, SigmaPi2, SigmaUniq, Coh0Sigma, Coh1Sigma, Coh2Sigma,
    PiBeta, PiUniq, PiUP2, PiUP3, DcompPi1, DcompPi2,
    PairIso, PairSubst, RSigmaComp, RSigmaUniq, RSigmaSubst,
    AppBeta, LamUniq, LamSubst, AppSubst,
    SigmaAssoc, UnitLawLeft, UnitLawRight, DObjCat,
}

impl Law {
    pub fn from_name(s: &str) -> Option<Law> {
        Law::ALL.iter().copied().find(|l| l.name() == s)
    }

    /// Laws that are theorems about the derived formers rather than axioms.
    pub fn is_derived(self) -> bool {
        self >= Law::PairIso
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawEntry {
    pub name: &'static str,
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
    pub witness: Option<String>,
}

impl LawEntry {
    pub fn new(name: &'static str) -> LawEntry {
        LawEntry { name, checked: 0, skipped: 0, failed: 0, witness: None }
    }

    pub fn record(&mut self, o: Outcome) {
        match o {
            Outcome::Pass => self.checked += 1,
            Outcome::Skip => self.skipped += 1,
            Outcome::Fail(w) => {
                self.checked += 1;
                self.failed += 1;
                if self.witness.is_none() {
                    self.witness = Some(w);
                }
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Conditional,
    /// Every instance was skipped.
    Unchecked,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Conditional => "CONDITIONAL",
            Status::Unchecked => "UNCHECKED",
        }
    }
}

/// Per-law results in a fixed order. Renders as `LAW <name> <STATUS> [witness]` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub entries: Vec<LawEntry>,
    pub conditional: bool,
}

impl LawReport {
    pub fn new() -> LawReport {
        LawReport::default()
    }

    pub fn entry_mut(&mut self, name: &'static str) -> &mut LawEntry {
        match self.entries.iter().position(|e| e.name == name) {
            Some(i) => &mut self.entries[i],
            None => {
                self.entries.push(LawEntry::new(name));
                self.entries.last_mut().unwrap()
            }
        }
    }

    pub fn record(&mut self, name: &'static str, o: Outcome) {
        self.entry_mut(name).record(o)
    }

    pub fn get(&self, name: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn status(&self, e: &LawEntry) -> Status {
        if e.failed > 0 {
            Status::Fail
        } else if e.checked == 0 {
            Status::Unchecked
        } else if self.conditional {
            Status::Conditional
        } else {
            Status::Pass
        }
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed())
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.entries.iter().filter(|e| !e.passed()).map(|e| e.name).collect()
    }

    pub fn unchecked(&self) -> Vec<&'static str> {
        self.entries.iter().filter(|e| e.checked == 0).map(|e| e.name).collect()
    }

    pub fn merge(&mut self, other: &LawReport) {
        self.conditional |= other.conditional;
        for e in &other.entries {
            let mine = self.entry_mut(e.name);
            mine.checked += e.checked;
            mine.skipped += e.skipped;
            mine.failed += e.failed;
            if mine.witness.is_none() {
                mine.witness = e.witness.clone();
            }
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "LAW {} {}", e.name, self.status(e).as_str())?;
            if let Some(w) = &e.witness {
                write!(f, " {}", w)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

const WITNESS_MAX: usize = 400;

fn clip(mut s: String) -> String {
    if s.len() > WITNESS_MAX {
        let mut cut = WITNESS_MAX;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str("...");
    }
    s
}

fn witness(what: &str, lhs: &dyn Debug, rhs: &dyn Debug) -> Outcome {
    Outcome::Fail(clip(format!("{}: {:?} != {:?}", what, lhs, rhs)))
}

macro_rules! need {
    ($e:expr) => {
        match $e {
            Some(v) => v,
            None => return Ok(Outcome::Skip),
        }
    };
}

/// Laws stated across a coherence identification are skipped where it fails;
/// the coherence law itself reports the failure.
macro_rules! coherent {
    ($m:expr, $x:expr, $y:expr) => {
        if !$m.eq_dobj($x, $y) {
            return Ok(Outcome::Skip);
        }
    };
}

fn eq_mor<M: Model>(m: &M, what: &str, x: &M::Mor, y: &M::Mor) -> Outcome {
    if m.eq_mor(x, y) {
        Outcome::Pass
    } else {
        witness(what, x, y)
    }
}

fn eq_dobj<M: Model>(m: &M, what: &str, x: &M::DObj, y: &M::DObj) -> Outcome {
    if m.eq_dobj(x, y) {
        Outcome::Pass
    } else {
        witness(what, x, y)
    }
}

fn eq_dmor<M: Model>(m: &M, what: &str, x: &M::DMor, y: &M::DMor) -> Outcome {
    if m.eq_dmor(x, y) {
        Outcome::Pass
    } else {
        witness(what, x, y)
    }
}

fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut any = false;
    for o in outcomes {
        match o {
            Outcome::Pass => any = true,
            Outcome::Skip => {}
            f @ Outcome::Fail(_) => return f,
        }
    }
    if any {
        Outcome::Pass
    } else {
        Outcome::Skip
    }
}

/// Run one law on one seed.
pub fn check_law<M: Model, S: Sampler<M>>(m: &M, s: &mut S, law: Law, seed: &ModelSeed<M>) -> Outcome {
    match run_law(m, s, law, seed) {
        Ok(o) => o,
        Err(e) => Outcome::Fail(clip(format!("{}", e))),
    }
}

/// Every law over every seed, in canonical order.
pub fn check_laws<M: Model, S: Sampler<M>>(m: &M, s: &mut S, seeds: &[ModelSeed<M>]) -> LawReport {
    check_some_laws(m, s, seeds, Law::ALL)
}

pub fn check_some_laws<M: Model, S: Sampler<M>>(
    m: &M,
    s: &mut S,
    seeds: &[ModelSeed<M>],
    laws: &[Law],
) -> LawReport {
    let mut r = LawReport { entries: Vec::new(), conditional: m.conditional() };
    for &law in laws {
        let e = r.entry_mut(law.name());
        for seed in seeds {
            e.record(check_law(m, s, law, seed));
        }
    }
    r
}

fn run_law<M: Model, S: Sampler<M>>(m: &M, s: &mut S, law: Law, seed: &ModelSeed<M>) -> MResult<Outcome> {
    let (g, a, b) = (&seed.gamma, &seed.a, &seed.b);
    Ok(match law {
        Law::CatIdL | Law::CatIdR => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            if law == Law::CatIdL {
                eq_mor(m, "id∘φ", &m.compose(&m.id(g)?, &phi)?, &phi)
            } else {
                eq_mor(m, "φ∘id", &m.compose(&phi, &m.id(&d)?)?, &phi)
            }
        }
        Law::CatAssoc => {
            let d = s.object();
            let t = s.object();
            let x = s.object();
            let psi = need!(s.mor(&t, &d));
            let phi = need!(s.mor(&d, g));
            let chi = need!(s.mor(g, &x));
            let l = m.compose(&m.compose(&chi, &phi)?, &psi)?;
            let r = m.compose(&chi, &m.compose(&phi, &psi)?)?;
            eq_mor(m, "(χ∘φ)∘ψ", &l, &r)
        }
        Law::TermUniq => {
            let t = m.terminal();
            let bang = m.bang(g)?;
            let cands = s.mor_candidates(g, &t, Some(&bang));
            all(cands.iter().map(|k| eq_mor(m, "k : Γ → T", k, &bang)))
        }
        Law::TyId => all([eq_dobj(m, "A{id}", &m.reindex(a, &m.id(g)?)?, a), {
            let ga = m.ext(a)?;
            eq_dobj(m, "B{id}", &m.reindex(b, &m.id(&ga)?)?, b)
        }]),
        Law::TyComp => {
            let d = s.object();
            let t = s.object();
            let phi = need!(s.mor(&d, g));
            let psi = need!(s.mor(&t, &d));
            let l = m.reindex(a, &m.compose(&phi, &psi)?)?;
            let r = m.reindex(&m.reindex(a, &phi)?, &psi)?;
            eq_dobj(m, "A{φ∘ψ}", &l, &r)
        }
        Law::TmId => {
            let t = need!(s.dmor(a));
            eq_dmor(m, "t{id}", &m.reindex_dmor(&t, &m.id(g)?)?, &t)
        }
        Law::TmComp => {
            let t = need!(s.dmor(a));
            let d = s.object();
            let th = s.object();
            let phi = need!(s.mor(&d, g));
            let psi = need!(s.mor(&th, &d));
            let l = m.reindex_dmor(&t, &m.compose(&phi, &psi)?)?;
            let r = m.reindex_dmor(&m.reindex_dmor(&t, &phi)?, &psi)?;
            eq_dmor(m, "t{φ∘ψ}", &l, &r)
        }
        Law::ConsL | Law::ConsR | Law::ConsNat => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            let gt = need!(s.dmor(&m.reindex(a, &phi)?));
            let ext = m.extend(&phi, a, &gt)?;
            match law {
                Law::ConsL => eq_mor(m, "π₁∘⟨φ,g⟩", &m.compose(&m.p1(a)?, &ext)?, &phi),
                Law::ConsR => eq_dmor(m, "π₂{⟨φ,g⟩}", &m.reindex_dmor(&m.p2(a)?, &ext)?, &gt),
                _ => {
                    let th = s.object();
                    let psi = need!(s.mor(&th, &d));
                    let l = m.compose(&ext, &psi)?;
                    let r = m.extend(&m.compose(&phi, &psi)?, a, &m.reindex_dmor(&gt, &psi)?)?;
                    eq_mor(m, "⟨φ,g⟩∘ψ", &l, &r)
                }
            }
        }
        Law::ConsId => {
            let ga = m.ext(a)?;
            eq_mor(m, "⟨π₁,π₂⟩", &m.extend(&m.p1(a)?, a, &m.p2(a)?)?, &m.id(&ga)?)
        }
        Law::Strict => {
            // π₂^{Γ.A}{π₁^{Γ.A.A{π₁}}} = π₂^{Γ.A.A{π₁}}, compared along the diagonal
            let pa = m.p1(a)?;
            let a2 = m.reindex(a, &pa)?;
            let p_outer = m.p1(&a2)?;
            let lhs = m.reindex_dmor(&m.p2(a)?, &p_outer)?;
            let rhs = m.p2(&a2)?;
            let ga = m.ext(a)?;
            let delta = m.extend(&m.id(&ga)?, &a2, &m.p2(a)?)?;
            all([
                eq_dobj(m, "codomains", &m.dmor_cod(&lhs), &m.dmor_cod(&rhs)),
                eq_dmor(m, "diagonal", &m.reindex_dmor(&lhs, &delta)?, &m.reindex_dmor(&rhs, &delta)?),
            ])
        }
        Law::UnitSubst | Law::StarSubst => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            if law == Law::UnitSubst {
                eq_dobj(m, "1{!}{φ}", &m.reindex(&unit_over(m, g)?, &phi)?, &unit_over(m, &d)?)
            } else {
                eq_dmor(m, "𝐛{φ}", &m.reindex_dmor(&m.unit_bang(g)?, &phi)?, &m.unit_bang(&d)?)
            }
        }
        Law::UnitUniq => {
            let u = unit_over(m, g)?;
            let bang = m.unit_bang(g)?;
            let cands = s.dmor_candidates(&u, Some(&bang));
            all(cands.iter().map(|k| eq_dmor(m, "k : Γ ⇾ 1{!}", k, &bang)))
        }
        Law::SigmaPi1 | Law::SigmaPi2 => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            let gt = need!(s.dmor(&m.reindex(a, &phi)?));
            let h = need!(s.dmor(&m.reindex(b, &m.extend(&phi, a, &gt)?)?));
            let sg = m.sigma(a, b)?;
            let pr = m.dpair(&phi, a, b, &gt, &h)?;
            let u = m.extend(&phi, &sg, &pr)?;
            if law == Law::SigmaPi1 {
                eq_dmor(m, "ϖ₁{⟨φ,⦃g,h⦄⟩}", &m.reindex_dmor(&m.varpi1(a, b)?, &u)?, &gt)
            } else {
                eq_dmor(m, "ϖ₂{⟨φ,⦃g,h⦄⟩}", &m.reindex_dmor(&m.varpi2(a, b)?, &u)?, &h)
            }
        }
        Law::SigmaUniq => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            let sg = m.sigma(a, b)?;
            let target = m.reindex(&sg, &phi)?;
            let cands = s.dmor_candidates(&target, None);
            let mut out = Vec::new();
            for k in &cands {
                let u = m.extend(&phi, &sg, k)?;
                let g1 = m.reindex_dmor(&m.varpi1(a, b)?, &u)?;
                let g2 = m.reindex_dmor(&m.varpi2(a, b)?, &u)?;
                out.push(eq_dmor(m, "⦃ϖ₁{⟨φ,k⟩}, ϖ₂{⟨φ,k⟩}⦄", &m.dpair(&phi, a, b, &g1, &g2)?, k));
            }
            all(out)
        }
        Law::Coh0Sigma | Law::Coh1Sigma | Law::Coh2Sigma => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            let a_phi = m.reindex(a, &phi)?;
            let b_phi = m.reindex(b, &plus(m, &phi, a)?)?;
            let sg = m.sigma(a, b)?;
            match law {
                Law::Coh0Sigma => eq_dobj(m, "Σ(A,B){φ}", &m.reindex(&sg, &phi)?, &m.sigma(&a_phi, &b_phi)?),
                _ => {
                    coherent!(m, &m.reindex(&sg, &phi)?, &m.sigma(&a_phi, &b_phi)?);
                    let star = plus(m, &phi, &sg)?;
                    if law == Law::Coh1Sigma {
                        let l = m.reindex_dmor(&m.varpi1(a, b)?, &star)?;
                        eq_dmor(m, "ϖ₁{φ*}", &l, &m.varpi1(&a_phi, &b_phi)?)
                    } else {
                        let l = m.reindex_dmor(&m.varpi2(a, b)?, &star)?;
                        eq_dmor(m, "ϖ₂{φ*}", &l, &m.varpi2(&a_phi, &b_phi)?)
                    }
                }
            }
        }
        Law::PiBeta => {
            let f = need!(s.dmor(b));
            eq_dmor(m, "Λ⁻¹(Λ(f))", &lam_inv(m, a, b, &m.lam(a, b, &f)?)?, &f)
        }
        Law::PiUniq => {
            let pi = m.pi(a, b)?;
            let cands = s.dmor_candidates(&pi, None);
            let mut out = Vec::new();
            for k in &cands {
                out.push(eq_dmor(m, "Λ(Λ⁻¹(k))", &m.lam(a, b, &lam_inv(m, a, b, k)?)?, k));
            }
            all(out)
        }
        Law::PiUP2 => {
            let c = need!(s.dobj(g));
            let pc = m.p1(&c)?;
            let a_c = m.reindex(a, &pc)?;
            let b_c = m.reindex(b, &plus(m, &pc, a)?)?;
            let h = need!(s.dmor(&b_c));
            let pi = m.pi(a, b)?;
            let lh = m.lam(&a_c, &b_c, &h)?;
            let u = m.extend(&pc, &pi, &lh)?;
            let a_pi = m.reindex(a, &m.p1(&pi)?)?;
            let v = m.extend(&m.compose(&u, &m.p1(&a_c)?)?, &a_pi, &m.p2(&a_c)?)?;
            eq_dmor(m, "dev{⟨⟨π₁,Λ(h)⟩∘π₁,π₂⟩}", &m.reindex_dmor(&m.dev(a, b)?, &v)?, &h)
        }
        Law::PiUP3 => {
            let c = need!(s.dobj(g));
            let dd = need!(s.dobj(g));
            let pc = m.p1(&c)?;
            let pd = m.p1(&dd)?;
            let gt = need!(s.dmor(&m.reindex(&c, &pd)?));
            let sigma = m.extend(&pd, &c, &gt)?;
            let a_c = m.reindex(a, &pc)?;
            let b_c = m.reindex(b, &plus(m, &pc, a)?)?;
            let a_d = m.reindex(a, &pd)?;
            let b_d = m.reindex(b, &plus(m, &pd, a)?)?;
            let h = need!(s.dmor(&b_c));
            let lhs = m.lam(&a_d, &b_d, &m.reindex_dmor(&h, &plus(m, &sigma, &a_c)?)?)?;
            let rhs = m.reindex_dmor(&m.lam(&a_c, &b_c, &h)?, &sigma)?;
            eq_dmor(m, "Λ(h{σ⁺}) vs Λ(h){σ}", &lhs, &rhs)
        }
        Law::DcompPi1 | Law::DcompPi2 => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            let a_phi = m.reindex(a, &phi)?;
            let b_phi = m.reindex(b, &plus(m, &phi, a)?)?;
            let pi = m.pi(a, b)?;
            if law == Law::DcompPi1 {
                eq_dobj(m, "Π(A,B){φ}", &m.reindex(&pi, &phi)?, &m.pi(&a_phi, &b_phi)?)
            } else {
                coherent!(m, &m.reindex(&pi, &phi)?, &m.pi(&a_phi, &b_phi)?);
                let phi_pi = plus(m, &phi, &pi)?;
                let a_pi = m.reindex(a, &m.p1(&pi)?)?;
                let outer = plus(m, &phi_pi, &a_pi)?;
                let l = m.reindex_dmor(&m.dev(a, b)?, &outer)?;
                eq_dmor(m, "dev{⟨φ⁺∘π₁,π₂⟩}", &l, &m.dev(&a_phi, &b_phi)?)
            }
        }
        Law::PairIso => {
            let (pair, inv) = pair_iso(m, a, b)?;
            let gab = m.ext(b)?;
            let gs = m.ext(&m.sigma(a, b)?)?;
            all([
                eq_mor(m, "Pair⁻¹∘Pair", &m.compose(&inv, &pair)?, &m.id(&gab)?),
                eq_mor(m, "Pair∘Pair⁻¹", &m.compose(&pair, &inv)?, &m.id(&gs)?),
            ])
        }
        Law::PairSubst => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            let (pair, _) = pair_iso(m, a, b)?;
            let sg = m.sigma(a, b)?;
            let first = eq_mor(
                m,
                "π₁∘Pair",
                &m.compose(&m.p1(&sg)?, &pair)?,
                &m.compose(&m.p1(a)?, &m.p1(b)?)?,
            );
            let a_phi = m.reindex(a, &phi)?;
            let b_phi = m.reindex(b, &plus(m, &phi, a)?)?;
            coherent!(m, &m.reindex(&sg, &phi)?, &m.sigma(&a_phi, &b_phi)?);
            let (pair2, _) = pair_iso(m, &a_phi, &b_phi)?;
            let l = m.compose(&plus(m, &phi, &sg)?, &pair2)?;
            let r = m.compose(&pair, &plus_plus(m, &phi, a, b)?)?;
            all([first, eq_mor(m, "φ*∘Pair'", &l, &r)])
        }
        Law::RSigmaComp | Law::RSigmaUniq | Law::RSigmaSubst => {
            let sg = m.sigma(a, b)?;
            let gs = m.ext(&sg)?;
            let p = need!(s.dobj(&gs));
            let (pair, _) = pair_iso(m, a, b)?;
            match law {
                Law::RSigmaComp => {
                    let f = need!(s.dmor(&m.reindex(&p, &pair)?));
                    eq_dmor(m, "R^Σ(f){Pair}", &m.reindex_dmor(&sigma_elim(m, a, b, &f)?, &pair)?, &f)
                }
                Law::RSigmaUniq => {
                    let cands = s.dmor_candidates(&p, None);
                    let mut out = Vec::new();
                    for k in &cands {
                        let r = sigma_elim(m, a, b, &m.reindex_dmor(k, &pair)?)?;
                        out.push(eq_dmor(m, "R^Σ(k{Pair})", &r, k));
                    }
                    all(out)
                }
                _ => {
                    let f = need!(s.dmor(&m.reindex(&p, &pair)?));
                    let d = s.object();
                    let phi = need!(s.mor(&d, g));
                    let a_phi = m.reindex(a, &phi)?;
                    let b_phi = m.reindex(b, &plus(m, &phi, a)?)?;
                    coherent!(m, &m.reindex(&sg, &phi)?, &m.sigma(&a_phi, &b_phi)?);
                    let l = m.reindex_dmor(&sigma_elim(m, a, b, &f)?, &plus(m, &phi, &sg)?)?;
                    let f2 = m.reindex_dmor(&f, &plus_plus(m, &phi, a, b)?)?;
                    eq_dmor(m, "R^Σ(f){φ*}", &l, &sigma_elim(m, &a_phi, &b_phi, &f2)?)
                }
            }
        }
        Law::AppBeta => {
            let f = need!(s.dmor(b));
            let t = need!(s.dmor(a));
            let l = app(m, a, b, &m.lam(a, b, &f)?, &t)?;
            eq_dmor(m, "App(Λ(f),t)", &l, &m.reindex_dmor(&f, &section(m, a, &t)?)?)
        }
        Law::LamUniq => {
            let pi = m.pi(a, b)?;
            let k = need!(s.dmor(&pi));
            let pa = m.p1(a)?;
            let a_up = m.reindex(a, &pa)?;
            let b_up = m.reindex(b, &plus(m, &pa, a)?)?;
            let body = app(m, &a_up, &b_up, &m.reindex_dmor(&k, &pa)?, &m.p2(a)?)?;
            eq_dmor(m, "λ(App(k{π₁},π₂))", &m.lam(a, b, &body)?, &k)
        }
        Law::LamSubst | Law::AppSubst => {
            let d = s.object();
            let phi = need!(s.mor(&d, g));
            let a_phi = m.reindex(a, &phi)?;
            let pa = plus(m, &phi, a)?;
            let b_phi = m.reindex(b, &pa)?;
            coherent!(m, &m.reindex(&m.pi(a, b)?, &phi)?, &m.pi(&a_phi, &b_phi)?);
            if law == Law::LamSubst {
                let f = need!(s.dmor(b));
                let l = m.reindex_dmor(&m.lam(a, b, &f)?, &phi)?;
                eq_dmor(m, "λ(f){φ}", &l, &m.lam(&a_phi, &b_phi, &m.reindex_dmor(&f, &pa)?)?)
            } else {
                let k = need!(s.dmor(&m.pi(a, b)?));
                let t = need!(s.dmor(a));
                let l = m.reindex_dmor(&app(m, a, b, &k, &t)?, &phi)?;
                let r = app(m, &a_phi, &b_phi, &m.reindex_dmor(&k, &phi)?, &m.reindex_dmor(&t, &phi)?)?;
                eq_dmor(m, "App(k,t){φ}", &l, &r)
            }
        }
        Law::SigmaAssoc => {
            let gs = m.ext(&m.sigma(a, b)?)?;
            let c = need!(s.dobj(&gs));
            let (to, from) = sigma_assoc(m, a, b, &c)?;
            iso_outcome(m, "Triple", &to, &from)?
        }
        Law::UnitLawLeft => {
            let (to, from) = unit_law_left(m, a)?;
            iso_outcome(m, "Σ(1,A{π₁}) ≅ A", &to, &from)?
        }
        Law::UnitLawRight => {
            let (to, from) = unit_law_right(m, a)?;
            iso_outcome(m, "Σ(A,1) ≅ A", &to, &from)?
        }
        Law::DObjCat => {
            let d = s.object();
            let t = s.object();
            let e = need!(s.dobj(&d));
            let dd = need!(s.dobj(&t));
            let psi = need!(s.mor(&t, &d));
            let phi = need!(s.mor(&d, g));
            let chi = need!(s.mor(g, g));
            let f1 = need!(s.dmor(&m.reindex(&e, &m.compose(&psi, &m.p1(&dd)?)?)?));
            let f2 = need!(s.dmor(&m.reindex(a, &m.compose(&phi, &m.p1(&e)?)?)?));
            let f3 = need!(s.dmor(&m.reindex(a, &m.compose(&chi, &m.p1(a)?)?)?));
            let m1 = DObjMorphism { src: dd.clone(), tgt: e.clone(), phi: psi, f: f1 };
            let m2 = DObjMorphism { src: e, tgt: a.clone(), phi, f: f2 };
            let m3 = DObjMorphism { src: a.clone(), tgt: a.clone(), phi: chi, f: f3 };
            let l = dobj_compose(m, &dobj_compose(m, &m3, &m2)?, &m1)?;
            let r = dobj_compose(m, &m3, &dobj_compose(m, &m2, &m1)?)?;
            let idl = dobj_compose(m, &dobj_id(m, &m2.tgt)?, &m2)?;
            let idr = dobj_compose(m, &m2, &dobj_id(m, &m2.src)?)?;
            let check = |what: &str, x: &DObjMor<M>, y: &DObjMor<M>| {
                if dobj_eq(m, x, y) {
                    Outcome::Pass
                } else {
                    witness(what, x, y)
                }
            };
            all([check("assoc", &l, &r), check("id∘m", &idl, &m2), check("m∘id", &idr, &m2)])
        }
    })
}

fn iso_outcome<M: Model>(m: &M, what: &str, to: &DObjMor<M>, from: &DObjMor<M>) -> MResult<Outcome> {
    let there = dobj_compose(m, from, to)?;
    let back = dobj_compose(m, to, from)?;
    let id_src = dobj_id(m, &to.src)?;
    let id_tgt = dobj_id(m, &to.tgt)?;
    Ok(if !dobj_eq(m, &there, &id_src) {
        witness(&format!("{} inverse∘iso", what), &there, &id_src)
    } else if !dobj_eq(m, &back, &id_tgt) {
        witness(&format!("{} iso∘inverse", what), &back, &id_tgt)
    } else {
        Outcome::Pass
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_names_round_trip_in_order() {
        for (i, l) in Law::ALL.iter().enumerate() {
            assert_eq!(Law::from_name(l.name()), Some(*l));
            if i > 0 {
                assert!(Law::ALL[i - 1] < *l);
            }
        }
        assert_eq!(Law::ALL.len(), 41);
        assert!(Law::PairIso.is_derived() && !Law::DcompPi2.is_derived());
    }

    #[test]
    fn report_renders_lines() {
        let mut r = LawReport::new();
        r.record("ConsR", Outcome::Pass);
        r.record("ConsId", Outcome::Fail("w".into()));
        r.record("Strict", Outcome::Skip);
        let s = alloc::string::ToString::to_string(&r);
        assert_eq!(s, "LAW ConsR PASS\nLAW ConsId FAIL w\nLAW Strict UNCHECKED\n");
        assert_eq!(r.failing(), ["ConsId"]);
    }
}
