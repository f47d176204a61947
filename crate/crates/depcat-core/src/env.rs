//! Env files: finite-set interpretations of a signature's constants.
//!
//! ```text
//! # comments start with #
//! S(N) = {0, 1, 2}              # type constant with empty telescope
//! S(Vec) = {0: {a}, 1: {b, c}}  # family over the telescope's carrier
//! S(zero) = • -> 0              # term constant with empty telescope
//! S(succ) = 0 -> 1, 1 -> 2, 2 -> 2
//! ```
//!
//! Keys are elements of the telescope's carrier. For a telescope
//! x₁:A₁, …, xₖ:Aₖ the carrier element ((•, a₁), …, aₖ) may be written as the
//! tuple (a₁, …, aₖ), or as a₁ alone when k = 1.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::finset::{DFinFun, DFinSet, Elem, FinSet, FinSetModel};
use crate::interp::{Interpreter, Structure};
use crate::signature::ValidatedSignature;
use crate::syntax::Sym;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for EnvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Lit {
    Atom(Elem),
    Tuple(Vec<Lit>),
}

impl Lit {
    fn elem(&self) -> Elem {
        match self {
            Lit::Atom(e) => e.clone(),
            Lit::Tuple(parts) => {
                let mut it = parts.iter().map(Lit::elem);
                let first = it.next().unwrap_or(Elem::Unit);
                it.fold(first, Elem::pair)
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Value {
    Set(Vec<Lit>),
    Family(Vec<(Lit, Vec<Lit>)>),
    Map(Vec<(Lit, Lit)>),
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line, _src: src }
    }

    fn err<T>(&self, m: &str) -> Result<T, EnvError> {
        Err(EnvError { line: self.line, message: format!("{} (column {})", m, self.pos + 1) })
    }

    fn ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.ws();
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), EnvError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(&format!("expected `{}`", s))
        }
    }

    fn word(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || matches!(self.chars[self.pos], '_' | '\'' | '-'))
        {
            if self.chars[self.pos] == '-' && (self.pos > start || self.chars.get(self.pos + 1) == Some(&'>')) {
                break;
            }
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn lit(&mut self) -> Result<Lit, EnvError> {
        match self.peek() {
            Some('•') | Some('*') => {
                self.pos += 1;
                Ok(Lit::Atom(Elem::Unit))
            }
            Some('(') => {
                self.pos += 1;
                if self.eat(")") {
                    return Ok(Lit::Atom(Elem::Unit));
                }
                let mut parts = alloc::vec![self.lit()?];
                while self.eat(",") {
                    parts.push(self.lit()?);
                }
                self.expect(")")?;
                Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Lit::Tuple(parts) })
            }
            _ => {
                let w = self.word();
                if w.is_empty() {
                    return self.err("expected an element");
                }
                Ok(Lit::Atom(match w.parse::<i64>() {
                    Ok(n) => Elem::Int(n),
                    Err(_) => Elem::sym(&w),
                }))
            }
        }
    }

    fn set_body(&mut self) -> Result<Vec<Lit>, EnvError> {
        let mut out = Vec::new();
        if self.eat("}") {
            return Ok(out);
        }
        loop {
            out.push(self.lit()?);
            if self.eat("}") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn value(&mut self) -> Result<Value, EnvError> {
        if self.eat("{") {
            if self.eat("}") {
                return Ok(Value::Set(Vec::new()));
            }
            let first = self.lit()?;
            if self.eat(":") {
                self.expect("{")?;
                let mut fam = alloc::vec![(first, self.set_body()?)];
                while self.eat(",") {
                    let k = self.lit()?;
                    self.expect(":")?;
                    self.expect("{")?;
                    fam.push((k, self.set_body()?));
                }
                self.expect("}")?;
                return Ok(Value::Family(fam));
            }
            let mut set = alloc::vec![first];
            if !self.eat("}") {
                self.expect(",")?;
                set.extend(self.set_body()?);
            }
            return Ok(Value::Set(set));
        }
        let mut map = Vec::new();
        loop {
            let k = self.lit()?;
            self.expect("->")?;
            map.push((k, self.lit()?));
            if !self.eat(",") {
                break;
            }
        }
        Ok(Value::Map(map))
    }

    fn done(&mut self) -> Result<(), EnvError> {
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

fn parse_lines(src: &str) -> Result<Vec<(usize, String, Value)>, EnvError> {
    let mut out = Vec::new();
    for (no, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut c = Cursor::new(line, no + 1);
        let name = if c.eat("S(") {
            let n = c.word();
            c.expect(")")?;
            n
        } else {
            let n = c.word();
            if c.eat("@") {
                c.word();
            }
            n
        };
        if name.is_empty() {
            return c.err("expected `S(<constant>) = ...`");
        }
        c.expect("=")?;
        let v = c.value()?;
        c.done()?;
        out.push((no + 1, name, v));
    }
    Ok(out)
}

fn key(base: &FinSet, arity: usize, k: &Lit) -> Option<Elem> {
    let e = k.elem();
    if base.contains(&e) {
        return Some(e);
    }
    let ctx = match (k, arity) {
        (Lit::Atom(Elem::Unit), 0) => Elem::Unit,
        (Lit::Tuple(parts), n) if parts.len() == n => parts.iter().fold(Elem::Unit, |acc, p| Elem::pair(acc, p.elem())),
        (_, 1) => Elem::pair(Elem::Unit, e),
        _ => return None,
    };
    base.contains(&ctx).then_some(ctx)
}

/// Builds a FinSet structure for `sig` from env text. Constants are
/// processed in declaration order so telescopes can mention earlier ones.
pub fn parse_env(src: &str, sig: &ValidatedSignature, model: &FinSetModel) -> Result<Structure<FinSetModel>, EnvError> {
    let mut lines: BTreeMap<String, (usize, Value)> = BTreeMap::new();
    for (line, name, v) in parse_lines(src)? {
        if lines.insert(name.clone(), (line, v)).is_some() {
            return Err(EnvError { line, message: format!("{} is interpreted twice", name) });
        }
    }
    let mut s: Structure<FinSetModel> = Structure::new();
    for c in sig.consts() {
        let name = c.name.as_str().to_string();
        let Some((line, v)) = lines.remove(&name) else {
            return Err(EnvError { line: 0, message: format!("no interpretation for {}", name) });
        };
        let err = |m: String| EnvError { line, message: m };
        let it = Interpreter::new(model, &s, sig);
        let base = it.ctx(&c.tele).map_err(|e| err(format!("telescope of {}: {}", name, e)))?;
        let k = c.tele.len();
        let lookup = |l: &Lit| key(&base, k, l).ok_or_else(|| err(format!("{:?} is not in the carrier {}", l.elem(), base)));
        match (&c.cod, v) {
            (None, Value::Set(elems)) => {
                let fiber = FinSet::new(elems.iter().map(Lit::elem).collect());
                s.types.insert(c.name.clone(), DFinSet::constant(base.clone(), fiber));
            }
            (None, Value::Family(fam)) => {
                let mut fibers: Vec<Option<FinSet>> = alloc::vec![None; base.len()];
                for (kl, elems) in &fam {
                    let x = lookup(kl)?;
                    let i = base.index_of(&x).unwrap();
                    if fibers[i].is_some() {
                        return Err(err(format!("fiber over {} given twice", x)));
                    }
                    fibers[i] = Some(FinSet::new(elems.iter().map(Lit::elem).collect()));
                }
                let fibers = fibers
                    .into_iter()
                    .enumerate()
                    .map(|(i, f)| f.ok_or_else(|| err(format!("no fiber over {}", base.elems()[i]))))
                    .collect::<Result<Vec<_>, _>>()?;
                s.types.insert(c.name.clone(), DFinSet::new(base.clone(), fibers).map_err(|e| err(format!("{}", e)))?);
            }
            (Some(b), Value::Map(pairs)) => {
                let cod = it.ty(&c.tele, b).map_err(|e| err(format!("codomain of {}: {}", name, e)))?;
                let mut table: Vec<Option<Elem>> = alloc::vec![None; base.len()];
                for (kl, vl) in &pairs {
                    let x = lookup(kl)?;
                    let i = base.index_of(&x).unwrap();
                    if table[i].is_some() {
                        return Err(err(format!("{} mapped twice", x)));
                    }
                    table[i] = Some(vl.elem());
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(i, y)| y.ok_or_else(|| err(format!("{} is not defined at {}", name, base.elems()[i]))))
                    .collect::<Result<Vec<_>, _>>()?;
                let f = DFinFun::new(cod, table).map_err(|e| err(format!("{}: {}", name, e)))?;
                s.terms.insert(c.name.clone(), f);
            }
            (None, _) => return Err(err(format!("{} is a type constant; give a set or a family", name))),
            (Some(_), _) => return Err(err(format!("{} is a term constant; give a mapping `x -> y, ...`", name))),
        }
    }
    if let Some((name, (line, _))) = lines.into_iter().next() {
        return Err(EnvError { line, message: format!("{} is not declared", name) });
    }
    Ok(s)
}

/// The carrier element over T, for printing denotations of closed terms.
pub fn point(s: &Structure<FinSetModel>, c: &Sym) -> Option<Elem> {
    s.terms.get(c).and_then(|f| f.table().first().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::interp::validate_algebra;

    #[test]
    fn z3_envs() {
        let (_, sig) = fixtures::load(fixtures::Z3, false);
        let m = FinSetModel::new();
        let good = parse_env(fixtures::ZMOD3_ENV, &sig, &m).unwrap();
        assert!(validate_algebra(&m, &sig, &good).is_empty());
        assert_eq!(point(&good, &Sym::new("z")), Some(Elem::Int(0)));
        let bad = parse_env(fixtures::TRUNC_ENV, &sig, &m).unwrap();
        assert_eq!(validate_algebra(&m, &sig, &bad).len(), 1);
    }

    #[test]
    fn families_and_errors() {
        let src = "typeconst N ()\ntypeconst V (n:N[])\ntermconst v (n:N[]) : V[n]\n";
        let f = crate::parser::parse_file(src).unwrap();
        let sig = crate::signature::validate_signature(
            &crate::signature::Signature::from_source(&f),
            crate::signature::ValidateOptions::default(),
        )
        .unwrap();
        let m = FinSetModel::new();
        let s = parse_env("S(N) = {0, 1}\nS(V) = {0: {a}, 1: {b, c}}\nS(v) = 0 -> a, 1 -> c\n", &sig, &m).unwrap();
        assert!(validate_algebra(&m, &sig, &s).is_empty());
        let e = parse_env("S(N) = {0, 1}\nS(V) = {0: {a}, 1: {b, c}}\nS(v) = 0 -> b, 1 -> c\n", &sig, &m).err().unwrap();
        assert_eq!(e.line, 3);
        assert!(parse_env("S(N) = {0, 1}\n", &sig, &m).is_err());
        assert!(parse_env("S(N) = {0, 1\n", &sig, &m).is_err());
    }
}
