//! ASCII pretty printer. Output parses back to an α-equal tree.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::checker::Judgement;
use crate::syntax::{Ctx, CtxMor, Name, Tm, Ty};

const KEYWORDS: &[&str] = &[
    "Unit", "Pi", "Sigma", "star", "rsig", "pi1", "pi2", "type", "ctx", "typeconst", "termconst", "axiom",
    "def", "check", "eval",
];

/// Printer state: the display names of the variables in scope, innermost last.
pub struct Printer {
    scope: Vec<String>,
    reserved: BTreeSet<String>,
}

impl Printer {
    pub fn new() -> Printer {
        Printer { scope: Vec::new(), reserved: BTreeSet::new() }
    }

    /// Start inside `ctx`, so its variables print by name.
    pub fn in_ctx(ctx: &Ctx) -> Printer {
        let mut p = Printer::new();
        p.push_ctx(ctx);
        p
    }

    /// Names that binders must avoid, typically the signature's constants.
    pub fn reserve<'a>(mut self, names: impl IntoIterator<Item = &'a str>) -> Printer {
        self.reserved.extend(names.into_iter().map(|s| s.to_string()));
        self
    }

    fn push_ctx(&mut self, ctx: &Ctx) {
        for (n, _) in ctx.entries() {
            let chosen = self.fresh(n);
            self.scope.push(chosen);
        }
    }

    fn fresh(&self, n: &Name) -> String {
        let base = match n.as_str() {
            "" | "_" => "x",
            s => s,
        };
        let taken = |s: &str| {
            self.scope.iter().any(|t| t == s) || self.reserved.contains(s) || KEYWORDS.contains(&s)
        };
        if !taken(base) {
            return base.to_string();
        }
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { "x" } else { stem };
        let mut i = 1usize;
        loop {
            let cand = format!("{}{}", stem, i);
            if !taken(&cand) {
                return cand;
            }
            i += 1;
        }
    }

    fn bind<R>(&mut self, n: &Name, f: impl FnOnce(&mut Printer, &str) -> R) -> R {
        let chosen = self.fresh(n);
        self.scope.push(chosen.clone());
        let r = f(self, &chosen);
        self.scope.pop();
        r
    }

    pub fn ty(&mut self, out: &mut String, t: &Ty) {
        match t {
            Ty::Unit => out.push_str("Unit"),
            Ty::Pi(n, a, b) | Ty::Sigma(n, a, b) => {
                out.push_str(if matches!(t, Ty::Pi(..)) { "Pi (" } else { "Sigma (" });
                let chosen = self.fresh(n);
                out.push_str(&chosen);
                out.push(':');
                self.ty(out, a);
                out.push_str(") ");
                self.scope.push(chosen);
                self.ty(out, b);
                self.scope.pop();
            }
            Ty::Const(c, args) => {
                out.push_str(c.as_str());
                self.args(out, args);
            }
        }
    }

    fn args(&mut self, out: &mut String, args: &[Tm]) {
        out.push('[');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            self.tm_prec(out, a, 0);
        }
        out.push(']');
    }

    pub fn tm(&mut self, out: &mut String, t: &Tm) {
        self.tm_prec(out, t, 0)
    }

    // prec 0: anything; 1: application head; 2: argument
    fn tm_prec(&mut self, out: &mut String, t: &Tm, prec: u8) {
        match t {
            Tm::Var(v) => {
                let n = self.scope.len();
                if v.index < n {
                    out.push_str(&self.scope[n - 1 - v.index]);
                } else {
                    out.push_str(v.name.as_str());
                }
            }
            Tm::Star => out.push_str("star"),
            Tm::Lam(n, ann, b) => {
                if prec > 0 {
                    out.push('(');
                }
                out.push('\\');
                let chosen = self.fresh(n);
                match ann {
                    Some(a) => {
                        out.push('(');
                        out.push_str(&chosen);
                        out.push(':');
                        self.ty(out, a);
                        out.push(')');
                    }
                    None => out.push_str(&chosen),
                }
                out.push_str(". ");
                self.scope.push(chosen);
                self.tm_prec(out, b, 0);
                self.scope.pop();
                if prec > 0 {
                    out.push(')');
                }
            }
            Tm::App(f, a) => {
                if prec > 1 {
                    out.push('(');
                }
                self.tm_prec(out, f, 1);
                out.push(' ');
                self.tm_prec(out, a, 2);
                if prec > 1 {
                    out.push(')');
                }
            }
            Tm::Pair(a, b) => {
                out.push('(');
                self.tm_prec(out, a, 0);
                out.push_str(", ");
                self.tm_prec(out, b, 0);
                out.push(')');
            }
            Tm::RSig { z, motive, x, y, body, scrut } => {
                out.push_str("rsig[");
                self.bind(z, |p, zn| {
                    out.push_str(zn);
                    out.push('.');
                    p.ty(out, motive);
                });
                out.push_str("](");
                self.bind(x, |p, xn| {
                    p.bind(y, |p, yn| {
                        out.push_str(xn);
                        out.push('.');
                        out.push_str(yn);
                        out.push('.');
                        p.tm_prec(out, body, 0);
                    })
                });
                out.push_str(", ");
                self.tm_prec(out, scrut, 0);
                out.push(')');
            }
            Tm::Const(c, args) => {
                out.push_str(c.as_str());
                self.args(out, args);
            }
        }
    }

    /// `(x:A, y:B)`, or the empty string for ⋄.
    pub fn ctx(&mut self, out: &mut String, ctx: &Ctx) {
        if ctx.is_empty() {
            return;
        }
        out.push('(');
        let base = self.scope.len();
        for (i, (n, ty)) in ctx.entries().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let chosen = self.fresh(n);
            out.push_str(&chosen);
            out.push(':');
            self.ty(out, ty);
            self.scope.push(chosen);
        }
        self.scope.truncate(base);
        out.push(')');
    }
}

impl Default for Printer {
    fn default() -> Printer {
        Printer::new()
    }
}

pub fn print_ty(t: &Ty) -> String {
    let mut s = String::new();
    Printer::new().ty(&mut s, t);
    s
}

pub fn print_tm(t: &Tm) -> String {
    let mut s = String::new();
    Printer::new().tm(&mut s, t);
    s
}

pub fn print_ty_in(ctx: &Ctx, t: &Ty) -> String {
    let mut s = String::new();
    Printer::in_ctx(ctx).ty(&mut s, t);
    s
}

pub fn print_tm_in(ctx: &Ctx, t: &Tm) -> String {
    let mut s = String::new();
    Printer::in_ctx(ctx).tm(&mut s, t);
    s
}

pub fn print_ctx(ctx: &Ctx) -> String {
    let mut s = String::new();
    Printer::new().ctx(&mut s, ctx);
    s
}

/// A judgement in the surface syntax of `check` items.
pub fn print_judgement(j: &Judgement) -> String {
    let paren = |g: &Ctx| if g.is_empty() { String::from("()") } else { print_ctx(g) };
    let head = |g: &Ctx| if g.is_empty() { String::from("|-") } else { format!("{} |-", print_ctx(g)) };
    match j {
        Judgement::Ctx(g) => format!("{} ctx", paren(g)),
        Judgement::CtxEq(g, d) => format!("{} = {} ctx", paren(g), paren(d)),
        Judgement::Type(g, a) => format!("{} {} type", head(g), print_ty_in(g, a)),
        Judgement::TypeEq(g, a, b) => format!("{} {} = {} type", head(g), print_ty_in(g, a), print_ty_in(g, b)),
        Judgement::Term(g, t, a) => format!("{} {} : {}", head(g), print_tm_in(g, t), print_ty_in(g, a)),
        Judgement::TermEq(g, a, b, t) => {
            format!("{} {} = {} : {}", head(g), print_tm_in(g, a), print_tm_in(g, b), print_ty_in(g, t))
        }
    }
}

/// `(g1, ..., gn)` with components printed over the domain.
pub fn print_ctx_mor(f: &CtxMor) -> String {
    let mut p = Printer::in_ctx(&f.dom);
    let mut s = String::from("(");
    for (i, g) in f.comps.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        p.tm(&mut s, g);
    }
    s.push(')');
    s
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ty(self))
    }
}

impl fmt::Display for Tm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_tm(self))
    }
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = print_ctx(self);
        if s.is_empty() {
            f.write_char('⋄')
        } else {
            f.write_str(&s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_ascii() {
        assert_eq!(print_tm(&Tm::lam("x", Tm::var(0, "x"))), "\\x. x");
        assert_eq!(print_ty(&Ty::pi("x", Ty::Unit, Ty::Unit)), "Pi (x:Unit) Unit");
    }

    #[test]
    fn renames_shadowing_binders() {
        // λx. λx. (outer x): inner binder must be renamed for the reference to survive.
        let t = Tm::lam("x", Tm::lam("x", Tm::var(1, "x")));
        assert_eq!(print_tm(&t), "\\x. \\x1. x");
    }
}
