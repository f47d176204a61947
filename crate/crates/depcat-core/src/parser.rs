//! Lexer and recursive-descent parser for `.mltt` files.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::checker::Judgement;
use crate::syntax::{Ctx, Name, Sym, Tm, Ty};

/// 1-based source position range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub end_line: usize,
    pub end_col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    DuplicateConstant(String),
    ForwardReference(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error at {}: {}", self.span, m),
            ParseErrorKind::DuplicateConstant(c) => write!(f, "duplicate constant {} at {}", c, self.span),
            ParseErrorKind::ForwardReference(c) => {
                write!(f, "constant {} used before its declaration at {}", c, self.span)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomEq {
    Ty(Ty, Ty),
    Tm(Tm, Tm, Ty),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefBody {
    Ty(Ty),
    Tm(Tm, Ty),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    TypeConst { name: Sym, tele: Ctx },
    TermConst { name: Sym, tele: Ctx, cod: Ty },
    Axiom { ctx: Ctx, eq: AxiomEq },
    Def { name: Sym, tele: Ctx, body: DefBody },
    Check(Judgement),
    Eval { ctx: Ctx, tm: Tm, ty: Ty },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpannedItem {
    pub item: Item,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceFile {
    pub items: Vec<SpannedItem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Colon,
    Dot,
    Lambda,
    Arrow,
    Times,
    Eq,
    Turnstile,
    Define,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{}`", s),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrack => "`[`",
            Tok::RBrack => "`]`",
            Tok::Comma => "`,`",
            Tok::Colon => "`:`",
            Tok::Dot => "`.`",
            Tok::Lambda => "`\\`",
            Tok::Arrow => "`->`",
            Tok::Times => "`*`",
            Tok::Eq => "`=`",
            Tok::Turnstile => "`|-`",
            Tok::Define => "`:=`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

const ITEM_KEYWORDS: &[&str] = &["typeconst", "termconst", "axiom", "def", "check", "eval"];
const RESERVED: &[&str] = &[
    "Unit", "Pi", "Sigma", "star", "rsig", "pi1", "pi2", "type", "ctx", "typeconst", "termconst", "axiom",
    "def", "check", "eval",
];

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            adv(1, &mut i, &mut col);
            continue;
        }
        if c == '#' || (c == '-' && chars.get(i + 1) == Some(&'-')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let tok = match s.as_str() {
                "Π" => Tok::Ident("Pi".into()),
                "Σ" => Tok::Ident("Sigma".into()),
                "λ" => Tok::Lambda,
                _ => Tok::Ident(s),
            };
            (tok, j - i)
        } else {
            let next = chars.get(i + 1).copied();
            match (c, next) {
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('|', Some('-')) => (Tok::Turnstile, 2),
                (':', Some('=')) => (Tok::Define, 2),
                ('(', _) | ('⟨', _) => (Tok::LParen, 1),
                (')', _) | ('⟩', _) => (Tok::RParen, 1),
                ('[', _) => (Tok::LBrack, 1),
                (']', _) => (Tok::RBrack, 1),
                (',', _) => (Tok::Comma, 1),
                (':', _) => (Tok::Colon, 1),
                ('.', _) => (Tok::Dot, 1),
                ('\\', _) | ('λ', _) => (Tok::Lambda, 1),
                ('→', _) => (Tok::Arrow, 1),
                ('*', _) | ('×', _) => (Tok::Times, 1),
                ('=', _) => (Tok::Eq, 1),
                ('⊢', _) => (Tok::Turnstile, 1),
                ('⋆', _) => (Tok::Ident("star".into()), 1),
                ('Π', _) => (Tok::Ident("Pi".into()), 1),
                ('Σ', _) => (Tok::Ident("Sigma".into()), 1),
                _ => {
                    return Err(ParseError {
                        kind: ParseErrorKind::Syntax(format!("unexpected character {:?}", c)),
                        span: Span { line, col, end_line: line, end_col: col + 1 },
                    })
                }
            }
        };
        adv(len, &mut i, &mut col);
        out.push((tok, Span { line: start.0, col: start.1, end_line: line, end_col: col }));
    }
    out.push((Tok::Eof, Span { line, col, end_line: line, end_col: col }));
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ConstKind {
    Type,
    Term,
}

struct Decl {
    kind: ConstKind,
    arity: usize,
    def: Option<DefBody>,
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: usize,
    /// Every constant declared anywhere in the file, with its declaring item.
    prescan: BTreeMap<String, usize>,
    decls: BTreeMap<String, Decl>,
    scope: Vec<Option<String>>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        if self.pos >= self.end {
            &Tok::Eof
        } else {
            &self.toks[self.pos].0
        }
    }

    fn span(&self) -> Span {
        self.toks[self.pos.min(self.toks.len() - 1)].1
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError { kind: ParseErrorKind::Syntax(msg.into()), span: self.span() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek().clone();
        if self.pos < self.end {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", t, self.peek()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{}`, found {}", kw, self.peek()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected identifier, found {}", t)),
        }
    }

    fn binder(&mut self) -> PResult<String> {
        let span = self.span();
        let s = self.ident()?;
        if self.decls.contains_key(&s) {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax(format!("variable {} clashes with a constant", s)),
                span,
            });
        }
        Ok(s)
    }

    fn lookup_var(&self, s: &str) -> Option<usize> {
        self.scope.iter().rev().position(|n| n.as_deref() == Some(s))
    }

    fn constant(&mut self, name: &str, span: Span, item_index: usize, want: ConstKind) -> PResult<(Sym, usize)> {
        match self.decls.get(name) {
            Some(d) if d.kind == want => Ok((Sym::new(name), d.arity)),
            Some(_) => Err(ParseError {
                kind: ParseErrorKind::Syntax(format!(
                    "{} is a {} constant",
                    name,
                    if want == ConstKind::Type { "term" } else { "type" }
                )),
                span,
            }),
            None => match self.prescan.get(name) {
                Some(&j) if j >= item_index => {
                    Err(ParseError { kind: ParseErrorKind::ForwardReference(name.into()), span })
                }
                _ => Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("unknown identifier {}", name)),
                    span,
                }),
            },
        }
    }

    fn const_args(&mut self, item: usize, bare_ok: bool) -> PResult<Option<Vec<Tm>>> {
        if *self.peek() != Tok::LBrack {
            return if bare_ok { Ok(None) } else { self.err("expected `[`") };
        }
        self.bump();
        let mut args = Vec::new();
        if *self.peek() != Tok::RBrack {
            loop {
                args.push(self.term(item)?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrack)?;
        Ok(Some(args))
    }

    fn apply_const_ty(&mut self, name: &str, span: Span, item: usize) -> PResult<Ty> {
        let (sym, arity) = self.constant(name, span, item, ConstKind::Type)?;
        let args = self.const_args(item, true)?.unwrap_or_default();
        if args.len() != arity {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax(format!("{} expects {} arguments, got {}", name, arity, args.len())),
                span,
            });
        }
        match &self.decls[name].def {
            Some(DefBody::Ty(body)) => {
                let env: Vec<Tm> = args.into_iter().rev().collect();
                body.instantiate(&env).or_else(|e| self.err(format!("{}", e)))
            }
            _ => Ok(Ty::Const(sym, args)),
        }
    }

    fn apply_const_tm(&mut self, name: &str, span: Span, item: usize) -> PResult<Tm> {
        let (sym, arity) = self.constant(name, span, item, ConstKind::Term)?;
        let args = self.const_args(item, true)?.unwrap_or_default();
        if args.len() != arity {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax(format!("{} expects {} arguments, got {}", name, arity, args.len())),
                span,
            });
        }
        match &self.decls[name].def {
            Some(DefBody::Tm(body, _)) => {
                let env: Vec<Tm> = args.into_iter().rev().collect();
                body.instantiate(&env).or_else(|e| self.err(format!("{}", e)))
            }
            _ => Ok(Tm::Const(sym, args)),
        }
    }

    fn ty(&mut self, item: usize) -> PResult<Ty> {
        let a = self.prod(item)?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            self.scope.push(None);
            let b = self.ty(item);
            self.scope.pop();
            return Ok(Ty::Pi(Name::new("_"), Arc::new(a), Arc::new(b?)));
        }
        Ok(a)
    }

    fn prod(&mut self, item: usize) -> PResult<Ty> {
        let a = self.ty_atom(item)?;
        if *self.peek() == Tok::Times {
            self.bump();
            self.scope.push(None);
            let b = self.prod(item);
            self.scope.pop();
            return Ok(Ty::Sigma(Name::new("_"), Arc::new(a), Arc::new(b?)));
        }
        Ok(a)
    }

    fn ty_atom(&mut self, item: usize) -> PResult<Ty> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(s) if s == "Unit" => {
                self.bump();
                Ok(Ty::Unit)
            }
            Tok::Ident(s) if s == "Pi" || s == "Sigma" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let x = self.binder()?;
                self.expect(Tok::Colon)?;
                let a = self.ty(item)?;
                self.expect(Tok::RParen)?;
                self.scope.push(Some(x.clone()));
                let b = self.ty(item);
                self.scope.pop();
                let (n, a, b) = (Name::new(&x), Arc::new(a), Arc::new(b?));
                Ok(if s == "Pi" { Ty::Pi(n, a, b) } else { Ty::Sigma(n, a, b) })
            }
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                self.apply_const_ty(&s, span, item)
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty(item)?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            t => self.err(format!("expected a type, found {}", t)),
        }
    }

    fn term(&mut self, item: usize) -> PResult<Tm> {
        if *self.peek() == Tok::Lambda {
            return self.lambda(item);
        }
        let mut head = self.tm_atom(item)?;
        loop {
            if *self.peek() == Tok::Lambda {
                let arg = self.lambda(item)?;
                return Ok(Tm::app(head, arg));
            }
            if !self.starts_atom() {
                return Ok(head);
            }
            let arg = self.tm_atom(item)?;
            head = Tm::app(head, arg);
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::LParen => true,
            Tok::Ident(s) => {
                !RESERVED.contains(&s.as_str()) || matches!(s.as_str(), "star" | "rsig" | "pi1" | "pi2")
            }
            _ => false,
        }
    }

    fn lambda(&mut self, item: usize) -> PResult<Tm> {
        self.expect(Tok::Lambda)?;
        let (x, ann) = if *self.peek() == Tok::LParen {
            self.bump();
            let x = self.binder()?;
            self.expect(Tok::Colon)?;
            let a = self.ty(item)?;
            self.expect(Tok::RParen)?;
            (x, Some(Arc::new(a)))
        } else {
            (self.binder()?, None)
        };
        self.expect(Tok::Dot)?;
        self.scope.push(Some(x.clone()));
        let body = self.term(item);
        self.scope.pop();
        Ok(Tm::Lam(Name::new(&x), ann, Arc::new(body?)))
    }

    fn tm_atom(&mut self, item: usize) -> PResult<Tm> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(s) if s == "star" => {
                self.bump();
                Ok(Tm::Star)
            }
            Tok::Ident(s) if s == "rsig" => {
                self.bump();
                self.expect(Tok::LBrack)?;
                let z = self.binder()?;
                self.expect(Tok::Dot)?;
                self.scope.push(Some(z.clone()));
                let motive = self.ty(item);
                self.scope.pop();
                let motive = motive?;
                self.expect(Tok::RBrack)?;
                self.expect(Tok::LParen)?;
                let x = self.binder()?;
                self.expect(Tok::Dot)?;
                let y = self.binder()?;
                self.expect(Tok::Dot)?;
                self.scope.push(Some(x.clone()));
                self.scope.push(Some(y.clone()));
                let body = self.term(item);
                self.scope.truncate(self.scope.len() - 2);
                let body = body?;
                self.expect(Tok::Comma)?;
                let scrut = self.term(item)?;
                self.expect(Tok::RParen)?;
                Ok(Tm::RSig {
                    z: Name::new(&z),
                    motive: Arc::new(motive),
                    x: Name::new(&x),
                    y: Name::new(&y),
                    body: Arc::new(body),
                    scrut: Arc::new(scrut),
                })
            }
            Tok::Ident(s) if s == "pi1" || s == "pi2" => {
                self.bump();
                self.expect(Tok::LBrack)?;
                let sig = self.ty(item)?;
                self.expect(Tok::RBrack)?;
                self.expect(Tok::LParen)?;
                let p = self.term(item)?;
                self.expect(Tok::RParen)?;
                match sig {
                    Ty::Sigma(_, a, b) => {
                        Ok(if s == "pi1" { Tm::proj1(p, &a, &b) } else { Tm::proj2(p, &a, &b) })
                    }
                    _ => Err(ParseError {
                        kind: ParseErrorKind::Syntax(format!("{} needs a Sigma type annotation", s)),
                        span,
                    }),
                }
            }
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                if let Some(i) = self.lookup_var(&s) {
                    return Ok(Tm::var(i, &s));
                }
                self.apply_const_tm(&s, span, item)
            }
            Tok::LParen => {
                self.bump();
                let a = self.term(item)?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let b = self.term(item)?;
                    self.expect(Tok::RParen)?;
                    return Ok(Tm::pair(a, b));
                }
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            t => self.err(format!("expected a term, found {}", t)),
        }
    }

    /// `(x:A, ...)`, bare `x:A, ...`, or nothing. Pushes the variables into scope.
    fn ctx_entries(&mut self, item: usize) -> PResult<Ctx> {
        let parens = *self.peek() == Tok::LParen;
        if parens {
            self.bump();
            if *self.peek() == Tok::RParen {
                self.bump();
                return Ok(Ctx::empty());
            }
        } else if !matches!(self.peek(), Tok::Ident(s) if !RESERVED.contains(&s.as_str())) {
            return Ok(Ctx::empty());
        }
        let mut entries = Vec::new();
        loop {
            let x = self.binder()?;
            self.expect(Tok::Colon)?;
            let a = self.ty(item)?;
            entries.push((Name::new(&x), a));
            self.scope.push(Some(x));
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        if parens {
            self.expect(Tok::RParen)?;
        }
        Ok(Ctx::from_entries(entries))
    }

    fn telescope(&mut self, item: usize) -> PResult<Ctx> {
        if *self.peek() != Tok::LParen {
            return self.err("expected a parenthesized telescope");
        }
        self.ctx_entries(item)
    }

    fn declare(&mut self, name: &str, span: Span, decl: Decl) -> PResult<()> {
        if self.decls.contains_key(name) {
            return Err(ParseError { kind: ParseErrorKind::DuplicateConstant(name.into()), span });
        }
        self.decls.insert(name.to_string(), decl);
        Ok(())
    }

    /// Position of the first top-level token satisfying `pred` in `pos..end`.
    fn find_top(&self, pred: impl Fn(&Tok) -> bool, last: bool) -> Option<usize> {
        self.find_top_until(self.end, pred, last)
    }

    fn find_top_until(&self, end: usize, pred: impl Fn(&Tok) -> bool, last: bool) -> Option<usize> {
        let mut depth = 0i32;
        let mut found = None;
        for k in self.pos..end {
            let t = &self.toks[k].0;
            match t {
                Tok::LParen | Tok::LBrack => depth += 1,
                Tok::RParen | Tok::RBrack => depth -= 1,
                _ => {}
            }
            if depth == 0 && pred(t) {
                found = Some(k);
                if !last {
                    break;
                }
            }
        }
        found
    }

    fn with_end<T>(&mut self, end: usize, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
        let saved = self.end;
        self.end = end;
        let r = f(self);
        let r = match r {
            Ok(v) if self.pos < end => self.err(format!("unexpected {}", self.peek())).map(|()| v),
            r => r,
        };
        self.end = saved;
        r
    }

    /// The judgement right of `|-`, ending at `self.end`.
    fn judgement_body(&mut self, ctx: Ctx, item: usize) -> PResult<Judgement> {
        let end = self.end;
        let last_is_type = end > self.pos && self.toks[end - 1].0 == Tok::Ident("type".into());
        if last_is_type {
            let inner_end = end - 1;
            let eq = self.find_top_until(inner_end, |t| *t == Tok::Eq, false);
            let j = match eq {
                Some(e) => {
                    let a = self.with_end(e, |p| p.ty(item))?;
                    self.expect(Tok::Eq)?;
                    let b = self.with_end(inner_end, |p| p.ty(item))?;
                    Judgement::TypeEq(ctx, a, b)
                }
                None => Judgement::Type(ctx, self.with_end(inner_end, |p| p.ty(item))?),
            };
            self.expect_kw("type")?;
            return Ok(j);
        }
        let colon = match self.find_top(|t| *t == Tok::Colon, true) {
            Some(c) => c,
            None => return self.err("expected `: <type>` or `type`"),
        };
        let eq = self.find_top_until(colon, |t| *t == Tok::Eq, false);
        let j = match eq {
            Some(e) => {
                let a = self.with_end(e, |p| p.term(item))?;
                self.expect(Tok::Eq)?;
                let b = self.with_end(colon, |p| p.term(item))?;
                self.expect(Tok::Colon)?;
                let t = self.ty(item)?;
                Judgement::TermEq(ctx, a, b, t)
            }
            None => {
                let a = self.with_end(colon, |p| p.term(item))?;
                self.expect(Tok::Colon)?;
                let t = self.ty(item)?;
                Judgement::Term(ctx, a, t)
            }
        };
        Ok(j)
    }

    fn ctx_judgement(&mut self, item: usize) -> PResult<Judgement> {
        let end = self.end;
        if !(end > self.pos && self.toks[end - 1].0 == Tok::Ident("ctx".into())) {
            return self.err("expected `|-` or a `ctx` judgement");
        }
        let eq = self.find_top(|t| *t == Tok::Eq, false);
        let j = match eq {
            Some(e) => {
                let g = self.with_end(e, |p| p.ctx_entries(item))?;
                self.scope.clear();
                self.expect(Tok::Eq)?;
                let d = self.with_end(end - 1, |p| p.ctx_entries(item))?;
                Judgement::CtxEq(g, d)
            }
            None => Judgement::Ctx(self.with_end(end - 1, |p| p.ctx_entries(item))?),
        };
        self.expect_kw("ctx")?;
        Ok(j)
    }

    fn item(&mut self, item: usize) -> PResult<Item> {
        self.scope.clear();
        let kw_span = self.span();
        let kw = match self.bump() {
            Tok::Ident(s) if ITEM_KEYWORDS.contains(&s.as_str()) => s,
            t => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("expected an item keyword, found {}", t)),
                    span: kw_span,
                })
            }
        };
        match kw.as_str() {
            "typeconst" => {
                let span = self.span();
                let name = self.ident()?;
                let tele = self.telescope(item)?;
                self.declare(&name, span, Decl { kind: ConstKind::Type, arity: tele.len(), def: None })?;
                Ok(Item::TypeConst { name: Sym::new(&name), tele })
            }
            "termconst" => {
                let span = self.span();
                let name = self.ident()?;
                let tele = self.telescope(item)?;
                self.expect(Tok::Colon)?;
                let cod = self.ty(item)?;
                self.declare(&name, span, Decl { kind: ConstKind::Term, arity: tele.len(), def: None })?;
                Ok(Item::TermConst { name: Sym::new(&name), tele, cod })
            }
            "def" => {
                let span = self.span();
                let name = self.ident()?;
                let tele = self.telescope(item)?;
                let body = if self.is_kw("type") {
                    self.bump();
                    self.expect(Tok::Define)?;
                    DefBody::Ty(self.ty(item)?)
                } else {
                    self.expect(Tok::Colon)?;
                    let cod = self.ty(item)?;
                    self.expect(Tok::Define)?;
                    DefBody::Tm(self.term(item)?, cod)
                };
                let kind = if matches!(body, DefBody::Ty(_)) { ConstKind::Type } else { ConstKind::Term };
                self.declare(&name, span, Decl { kind, arity: tele.len(), def: Some(body.clone()) })?;
                Ok(Item::Def { name: Sym::new(&name), tele, body })
            }
            "axiom" | "check" | "eval" => {
                let turnstile = self.find_top(|t| *t == Tok::Turnstile, false);
                let Some(ts) = turnstile else {
                    if kw == "check" {
                        return Ok(Item::Check(self.ctx_judgement(item)?));
                    }
                    return self.err("expected `|-`");
                };
                let ctx = self.with_end(ts, |p| p.ctx_entries(item))?;
                self.expect(Tok::Turnstile)?;
                let j = self.judgement_body(ctx, item)?;
                match kw.as_str() {
                    "check" => Ok(Item::Check(j)),
                    "axiom" => match j {
                        Judgement::TypeEq(ctx, a, b) => Ok(Item::Axiom { ctx, eq: AxiomEq::Ty(a, b) }),
                        Judgement::TermEq(ctx, a, b, t) => Ok(Item::Axiom { ctx, eq: AxiomEq::Tm(a, b, t) }),
                        _ => Err(ParseError {
                            kind: ParseErrorKind::Syntax("an axiom must be an equation".into()),
                            span: kw_span,
                        }),
                    },
                    _ => match j {
                        Judgement::Term(ctx, tm, ty) => Ok(Item::Eval { ctx, tm, ty }),
                        _ => Err(ParseError {
                            kind: ParseErrorKind::Syntax("eval expects `|- a : A`".into()),
                            span: kw_span,
                        }),
                    },
                }
            }
            _ => unreachable!(),
        }
    }
}

fn item_end(toks: &[(Tok, Span)], from: usize) -> usize {
    let mut depth = 0i32;
    for (k, (t, _)) in toks.iter().enumerate().skip(from + 1) {
        match t {
            Tok::LParen | Tok::LBrack => depth += 1,
            Tok::RParen | Tok::RBrack => depth -= 1,
            Tok::Ident(s) if depth <= 0 && ITEM_KEYWORDS.contains(&s.as_str()) => return k,
            Tok::Eof => return k,
            _ => {}
        }
    }
    toks.len() - 1
}

pub fn parse_file(text: &str) -> Result<SourceFile, ParseError> {
    let toks = lex(text)?;
    let mut prescan = BTreeMap::new();
    let mut item_index = 0usize;
    for w in toks.windows(2) {
        if let Tok::Ident(kw) = &w[0].0 {
            if ITEM_KEYWORDS.contains(&kw.as_str()) {
                item_index += 1;
                if matches!(kw.as_str(), "typeconst" | "termconst" | "def") {
                    if let Tok::Ident(n) = &w[1].0 {
                        prescan.entry(n.clone()).or_insert(item_index - 1);
                    }
                }
            }
        }
    }
    let eof = toks.len() - 1;
    let mut p = Parser { toks, pos: 0, end: eof, prescan, decls: BTreeMap::new(), scope: Vec::new() };
    let mut items = Vec::new();
    while p.pos < eof {
        let start = p.pos;
        let end = item_end(&p.toks, start);
        let item = p.with_end(end, |p| p.item(items.len()))?;
        let s0 = p.toks[start].1;
        let s1 = p.toks[end - 1].1;
        items.push(SpannedItem {
            item,
            span: Span { line: s0.line, col: s0.col, end_line: s1.end_line, end_col: s1.end_col },
        });
        p.end = eof;
    }
    Ok(SourceFile { items })
}

fn standalone<T>(text: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let toks = lex(text)?;
    let eof = toks.len() - 1;
    let mut p = Parser { toks, pos: 0, end: eof, prescan: BTreeMap::new(), decls: BTreeMap::new(), scope: Vec::new() };
    p.with_end(eof, f)
}

/// Parse a closed type in the empty signature (or with free names resolved against `ctx`).
pub fn parse_ty(ctx: &Ctx, text: &str) -> Result<Ty, ParseError> {
    standalone(text, |p| {
        p.scope = ctx.entries().iter().map(|(n, _)| Some(n.as_str().to_string())).collect();
        p.ty(0)
    })
}

pub fn parse_tm(ctx: &Ctx, text: &str) -> Result<Tm, ParseError> {
    standalone(text, |p| {
        p.scope = ctx.entries().iter().map(|(n, _)| Some(n.as_str().to_string())).collect();
        p.term(0)
    })
}

pub fn parse_ctx(text: &str) -> Result<Ctx, ParseError> {
    standalone(text, |p| p.ctx_entries(0))
}

/// Parse a type or term inside `ctx`, resolving constants declared in `file`.
pub struct Scoped<'a> {
    pub file: &'a SourceFile,
}

impl Scoped<'_> {
    fn parser(&self, text: &str) -> PResult<Parser> {
        let toks = lex(text)?;
        let eof = toks.len() - 1;
        let mut decls = BTreeMap::new();
        for it in &self.file.items {
            let (name, kind, arity, def) = match &it.item {
                Item::TypeConst { name, tele } => (name, ConstKind::Type, tele.len(), None),
                Item::TermConst { name, tele, .. } => (name, ConstKind::Term, tele.len(), None),
                Item::Def { name, tele, body } => {
                    let k = if matches!(body, DefBody::Ty(_)) { ConstKind::Type } else { ConstKind::Term };
                    (name, k, tele.len(), Some(body.clone()))
                }
                _ => continue,
            };
            decls.insert(name.as_str().to_string(), Decl { kind, arity, def });
        }
        Ok(Parser { toks, pos: 0, end: eof, prescan: BTreeMap::new(), decls, scope: Vec::new() })
    }

    pub fn ty(&self, ctx: &Ctx, text: &str) -> Result<Ty, ParseError> {
        let mut p = self.parser(text)?;
        p.scope = ctx.entries().iter().map(|(n, _)| Some(n.as_str().to_string())).collect();
        let end = p.end;
        p.with_end(end, |p| p.ty(usize::MAX))
    }

    pub fn tm(&self, ctx: &Ctx, text: &str) -> Result<Tm, ParseError> {
        let mut p = self.parser(text)?;
        p.scope = ctx.entries().iter().map(|(n, _)| Some(n.as_str().to_string())).collect();
        let end = p.end;
        p.with_end(end, |p| p.term(usize::MAX))
    }

    pub fn ctx(&self, text: &str) -> Result<Ctx, ParseError> {
        let mut p = self.parser(text)?;
        let end = p.end;
        p.with_end(end, |p| p.ctx_entries(usize::MAX))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_check_items() {
        let f = parse_file("check |- star : Unit\ncheck |- \\x. x : Pi (x:Unit) Unit").unwrap();
        assert_eq!(f.items.len(), 2);
        assert_eq!(f.items[0].item, Item::Check(Judgement::Term(Ctx::empty(), Tm::Star, Ty::Unit)));
        assert_eq!(
            f.items[1].item,
            Item::Check(Judgement::Term(Ctx::empty(), Tm::lam("x", Tm::var(0, "x")), Ty::pi("x", Ty::Unit, Ty::Unit)))
        );
    }

    #[test]
    fn nat_constants() {
        let f = parse_file("typeconst N ()\ntermconst zero () : N[]").unwrap();
        assert_eq!(f.items[0].item, Item::TypeConst { name: Sym::new("N"), tele: Ctx::empty() });
        assert_eq!(
            f.items[1].item,
            Item::TermConst { name: Sym::new("zero"), tele: Ctx::empty(), cod: Ty::constant("N", Vec::new()) }
        );
    }

    #[test]
    fn forward_and_duplicate() {
        let e = parse_file("termconst zero () : N[]\ntypeconst N ()").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ForwardReference("N".into()));
        assert_eq!(e.span.line, 1);
        let e = parse_file("typeconst N ()\ntypeconst N ()").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateConstant("N".into()));
        assert_eq!(e.span.line, 2);
    }

    #[test]
    fn sugar() {
        let t = parse_ty(&Ctx::empty(), "Unit -> Unit * Unit").unwrap();
        assert_eq!(t, Ty::arrow(Ty::Unit, Ty::product(Ty::Unit, Ty::Unit)));
        let t = parse_ty(&Ctx::empty(), "Π(x:Unit) Σ(y:Unit) Unit").unwrap();
        assert_eq!(t, Ty::pi("x", Ty::Unit, Ty::sigma("y", Ty::Unit, Ty::Unit)));
    }

    #[test]
    fn ctx_judgements() {
        let f = parse_file("check (x:Unit, x:Unit) ctx\ncheck x:Unit = y:Unit ctx").unwrap();
        assert!(matches!(&f.items[0].item, Item::Check(Judgement::Ctx(c)) if c.len() == 2));
        assert!(matches!(&f.items[1].item, Item::Check(Judgement::CtxEq(a, b)) if a.len() == 1 && b.len() == 1));
    }

    #[test]
    fn errors_have_spans() {
        let e = parse_file("check |- star :").unwrap_err();
        assert_eq!(e.span.line, 1);
        let e = parse_file("check |- \\x . ? : Unit").unwrap_err();
        assert_eq!((e.span.line, e.span.col), (1, 15));
    }
}
