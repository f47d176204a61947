//! The `depcat` command line: type checking, evaluation in finite-set and
//! term models, and the law suites.
//!
//! [`run`] does everything except touching the process, so the binary and
//! the tests share one code path.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use depcat_core::bridge::{
    check_ccc_laws, parse_instance, roundtrip_check, DModel, DSampler, FinCtxCcc, Instance, RoundTrip, SCcc,
};
use depcat_core::checker::{Checker, Judgement, Verdict, DEFAULT_FUEL};
use depcat_core::cwf::{check_laws, LawReport};
use depcat_core::env::parse_env;
use depcat_core::finset::{exhaustive_seeds, random_seeds, FinSetModel, FinSetSampler};
use depcat_core::interp::{generic_structure, validate_algebra, Interpreter};
use depcat_core::parser::{parse_file, Item, SourceFile, Span};
use depcat_core::print::{print_judgement, print_tm_in, print_ty_in};
use depcat_core::signature::{validate_signature, Signature, ValidateOptions, ValidatedSignature};
use depcat_core::term_model::{closed_types, contexts, TermModel, TermSampler};
use depcat_core::{Ctx, Tm, Ty};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ALGEBRA: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "depcat", version, about = "Type checker and model checker for MLTT with 1, Π and Σ")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for sampled law instances.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Rewrite fuel for trusted axioms. Defaults to $DEPCAT_FUEL, then 1000.
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Decide every `check` item of a file.
    Check {
        file: PathBuf,
        /// Accept axioms that fail the termination guard.
        #[arg(long)]
        trust_axioms: bool,
    },
    /// Print the denotation of every `eval` item of a file.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EvalModel::Finset)]
        model: EvalModel,
        /// Finite-set interpretation of the file's constants.
        #[arg(long)]
        env: Option<PathBuf>,
        #[arg(long)]
        trust_axioms: bool,
    },
    /// Run the model law suite.
    Laws {
        #[arg(long, value_enum, default_value_t = LawModel::Finset)]
        model: LawModel,
        /// A number of sampled instances, `small` or `full`.
        #[arg(long)]
        budget: Option<Budget>,
        /// Instance file for `--model bridge-instance`.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Check that S and D round-trip on a finite CtxCCC.
    Bridge {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        budget: Option<Budget>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalModel {
    Finset,
    Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LawModel {
    Finset,
    Term,
    BridgeInstance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    Small,
    Full,
    Count(usize),
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Budget, String> {
        match s {
            "small" => Ok(Budget::Small),
            "full" => Ok(Budget::Full),
            n => n.parse().map(Budget::Count).map_err(|_| format!("expected a number, `small` or `full`, got `{}`", n)),
        }
    }
}

impl Budget {
    fn count(self, small: usize, full: usize) -> usize {
        match self {
            Budget::Small => small,
            Budget::Full => full,
            Budget::Count(n) => n,
        }
    }
}

/// What a run produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    format: Format,
    stdout: String,
    stderr: String,
}

impl Out {
    fn item(&mut self, text: &str, obj: Value) {
        match self.format {
            Format::Text => self.stdout.push_str(text),
            Format::Json => self.stdout.push_str(&obj.to_string()),
        }
        self.stdout.push('\n');
    }

    fn error(&mut self, msg: &str) {
        let _ = writeln!(self.stderr, "error: {}", msg);
    }

    fn finish(self, code: i32) -> Output {
        Output { code, stdout: self.stdout, stderr: self.stderr }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code, stdout: String::new(), stderr: text }
            } else {
                Output { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let fuel = cli.fuel.or_else(|| std::env::var("DEPCAT_FUEL").ok().and_then(|v| v.parse().ok())).unwrap_or(DEFAULT_FUEL);
    let mut out = Out { format: cli.format, stdout: String::new(), stderr: String::new() };
    let code = match &cli.cmd {
        Cmd::Check { file, trust_axioms } => cmd_check(&mut out, file, *trust_axioms, fuel),
        Cmd::Eval { file, model, env, trust_axioms } => {
            cmd_eval(&mut out, file, *model, env.as_deref(), *trust_axioms, fuel)
        }
        Cmd::Laws { model, budget, instance } => cmd_laws(&mut out, *model, *budget, instance.as_deref(), cli.seed),
        Cmd::Bridge { instance, budget } => cmd_bridge(&mut out, instance, *budget, cli.seed),
    };
    out.finish(code)
}

fn read(out: &mut Out, path: &Path) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Some(s),
        Err(e) => {
            out.error(&format!("cannot read {}: {}", path.display(), e));
            None
        }
    }
}

fn load(out: &mut Out, path: &Path, trust_axioms: bool) -> Result<(SourceFile, ValidatedSignature), i32> {
    let src = read(out, path).ok_or(EXIT_INPUT)?;
    let file = parse_file(&src).map_err(|e| {
        out.error(&format!("{}: {}", path.display(), e));
        EXIT_INPUT
    })?;
    let sig = validate_signature(&Signature::from_source(&file), ValidateOptions { trust_axioms }).map_err(|e| {
        out.error(&format!("{}: {}", path.display(), e));
        EXIT_FAIL
    })?;
    Ok((file, sig))
}

fn span_json(s: &Span) -> Value {
    json!({ "line": s.line, "col": s.col, "end_line": s.end_line, "end_col": s.end_col })
}

/// `OK`, `FAIL <reason>@<span>` or `UNKNOWN <reason>@<span>` per `check` item.
pub fn cmd_check_items(ck: &Checker, file: &SourceFile) -> Vec<(Span, Judgement, Verdict)> {
    file.items
        .iter()
        .filter_map(|it| match &it.item {
            Item::Check(j) => Some((it.span, j.clone(), ck.judge(j))),
            _ => None,
        })
        .collect()
}

fn cmd_check(out: &mut Out, path: &Path, trust_axioms: bool, fuel: u64) -> i32 {
    let (file, sig) = match load(out, path, trust_axioms) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let ck = Checker::with_fuel(&sig, fuel);
    let mut code = EXIT_OK;
    for (span, j, v) in cmd_check_items(&ck, &file) {
        let jt = print_judgement(&j);
        match &v {
            Verdict::Derivable => out.item("OK", json!({"item": "check", "span": span_json(&span), "judgement": jt, "verdict": "OK"})),
            Verdict::NotDerivable { reason, subgoal } => {
                code = EXIT_FAIL;
                out.item(
                    &format!("FAIL {} in {}@{}", reason, subgoal, span),
                    json!({"item": "check", "span": span_json(&span), "judgement": jt, "verdict": "FAIL", "reason": reason, "subgoal": subgoal}),
                );
            }
            Verdict::Unknown { reason } => {
                code = EXIT_FAIL;
                out.item(
                    &format!("UNKNOWN {}@{}", reason, span),
                    json!({"item": "check", "span": span_json(&span), "judgement": jt, "verdict": "UNKNOWN", "reason": reason}),
                );
            }
        }
    }
    code
}

fn eval_items(file: &SourceFile) -> Vec<(Span, Ctx, Tm, Ty)> {
    file.items
        .iter()
        .filter_map(|it| match &it.item {
            Item::Eval { ctx, tm, ty } => Some((it.span, ctx.clone(), tm.clone(), ty.clone())),
            _ => None,
        })
        .collect()
}

fn cmd_eval(out: &mut Out, path: &Path, model: EvalModel, env: Option<&Path>, trust_axioms: bool, fuel: u64) -> i32 {
    let (file, sig) = match load(out, path, trust_axioms) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let items = eval_items(&file);
    let mut code = EXIT_OK;
    let mut report = |out: &mut Out, span: Span, g: &Ctx, t: &Tm, a: &Ty, r: Result<String, String>| {
        let jt = format!("{} : {}", print_tm_in(g, t), print_ty_in(g, a));
        match r {
            Ok(v) => out.item(
                &format!("{} = {}", jt, v),
                json!({"item": "eval", "span": span_json(&span), "term": jt, "value": v}),
            ),
            Err(e) => {
                code = EXIT_FAIL;
                out.item(
                    &format!("FAIL {}@{}", e, span),
                    json!({"item": "eval", "span": span_json(&span), "term": jt, "error": e}),
                );
            }
        }
    };
    match model {
        EvalModel::Finset => {
            let fm = FinSetModel::new();
            let src = match env {
                Some(p) => match read(out, p) {
                    Some(s) => s,
                    None => return EXIT_INPUT,
                },
                None if sig.consts().is_empty() => String::new(),
                None => {
                    out.error("the signature has constants; pass --env to interpret them");
                    return EXIT_INPUT;
                }
            };
            let s = match parse_env(&src, &sig, &fm) {
                Ok(s) => s,
                Err(e) => {
                    out.error(&format!("{}: {}", env.map(|p| p.display().to_string()).unwrap_or_default(), e));
                    return EXIT_INPUT;
                }
            };
            let violations = validate_algebra(&fm, &sig, &s);
            if !violations.is_empty() {
                for v in &violations {
                    out.error(&format!("algebra violation: {}", v));
                }
                return EXIT_ALGEBRA;
            }
            let it = Interpreter::with_checker(&fm, &s, Checker::with_fuel(&sig, fuel));
            for (span, g, t, a) in &items {
                let r = it.term(g, t, a).map(|d| d.to_string()).map_err(|e| e.to_string());
                report(out, *span, g, t, a, r);
            }
        }
        EvalModel::Term => {
            let tm = TermModel::with_checker(Checker::with_fuel(&sig, fuel));
            let s = generic_structure(&sig);
            let it = Interpreter::with_checker(&tm, &s, Checker::with_fuel(&sig, fuel));
            for (span, g, t, a) in &items {
                let r = it.term(g, t, a).map(|d| print_tm_in(&d.ctx, &d.tm)).map_err(|e| e.to_string());
                report(out, *span, g, t, a, r);
            }
        }
    }
    code
}

/// FinSet laws on every instance with carriers of size ≤ 3 plus `budget`
/// random ones.
pub fn finset_laws(budget: usize, seed: u64) -> LawReport {
    let m = FinSetModel::new();
    let mut s = FinSetSampler::new(seed);
    let mut seeds = exhaustive_seeds(3);
    seeds.extend(random_seeds(budget, seed));
    check_laws(&m, &mut s, &seeds)
}

/// Term model laws over the empty signature. `small` covers contexts of
/// length ≤ 1 over types of depth ≤ 1, `full` length ≤ 2 and depth ≤ 2, and
/// a count takes that many contexts from the full list.
pub fn term_laws(budget: Budget, seed: u64) -> LawReport {
    let sig = ValidatedSignature::empty();
    let m = TermModel::new(&sig);
    let mut s = TermSampler::new(&sig, seed);
    let ctxs = match budget {
        Budget::Small => {
            s.types = closed_types(1, &[]);
            contexts(1, &s.types)
        }
        Budget::Full | Budget::Count(_) => {
            s.types = closed_types(2, &[]);
            let all = contexts(2, &s.types);
            match budget {
                Budget::Count(n) => all.into_iter().take(n).collect(),
                _ => all,
            }
        }
    };
    let seeds = s.seeds(&ctxs);
    check_laws(&m, &mut s, &seeds)
}

/// CwF laws on D(c) and CCC laws on S(D(c)) for an instance c. Contexts
/// range over objects up to the instance depth; the D-objects A and B over
/// T and the base atoms, since uniqueness checks enumerate hom-sets into Γ.A.B.
pub fn bridge_laws(inst: &Instance, budget: usize, seed: u64) -> (LawReport, LawReport) {
    let c = inst.build();
    let objs = c.objects_up_to(inst.depth);
    let atoms: Vec<_> = FinCtxCcc::atoms_of(&objs).into_iter().filter(|a| a.depth() <= 1).collect();
    let d = DModel::new(&c);
    let mut sampler = DSampler::new(&c, objs.clone(), atoms, seed);
    sampler.candidate_cap = 256;
    sampler.fallback_samples = 64;
    let seeds = sampler.random_seeds(budget);
    let cwf = check_laws(&d, &mut sampler, &seeds);
    let s = SCcc::new(&d);
    let ccc = check_ccc_laws(&s, &c, &objs, budget, seed);
    (cwf, ccc)
}

/// The S ⊣ D round trip on objects up to the instance depth.
pub fn bridge_roundtrip(inst: &Instance, pairs: usize, seed: u64) -> LawReport {
    let c = inst.build();
    let objs = c.objects_up_to(inst.depth);
    roundtrip_check(&c, &objs, RoundTrip { pairs, seed, ..RoundTrip::default() })
}

/// Whether a report counts as passing: no failures and nothing left unchecked.
pub fn report_ok(r: &LawReport) -> bool {
    r.all_passed() && r.unchecked().is_empty()
}

fn emit_report(out: &mut Out, suite: &str, r: &LawReport) {
    out.item(&format!("SUITE {}", suite), json!({"suite": suite}));
    for e in &r.entries {
        let status = r.status(e).as_str();
        let mut text = format!("LAW {} {}", e.name, status);
        if let Some(w) = &e.witness {
            text.push(' ');
            text.push_str(w);
        }
        out.item(
            &text,
            json!({
                "suite": suite, "law": e.name, "status": status,
                "checked": e.checked, "skipped": e.skipped, "failed": e.failed, "witness": e.witness,
            }),
        );
    }
}

fn load_instance(out: &mut Out, path: &Path) -> Option<Instance> {
    let src = read(out, path)?;
    match parse_instance(&src) {
        Ok(i) => Some(i),
        Err(e) => {
            out.error(&format!("{}: {}", path.display(), e));
            None
        }
    }
}

fn cmd_laws(out: &mut Out, model: LawModel, budget: Option<Budget>, instance: Option<&Path>, seed: u64) -> i32 {
    out.item(&format!("seed {}", seed), json!({"seed": seed}));
    let reports: Vec<(&str, LawReport)> = match model {
        LawModel::Finset => {
            let n = budget.unwrap_or(Budget::Count(200)).count(50, 1000);
            vec![("finset", finset_laws(n, seed))]
        }
        LawModel::Term => vec![("term", term_laws(budget.unwrap_or(Budget::Small), seed))],
        LawModel::BridgeInstance => {
            let Some(path) = instance else {
                out.error("--model bridge-instance needs --instance");
                return EXIT_INPUT;
            };
            let Some(inst) = load_instance(out, path) else { return EXIT_INPUT };
            let (cwf, ccc) = bridge_laws(&inst, budget.unwrap_or(Budget::Count(50)).count(20, 200), seed);
            vec![("D(c)", cwf), ("S(D(c))", ccc)]
        }
    };
    let mut code = EXIT_OK;
    for (name, r) in &reports {
        emit_report(out, name, r);
        if !report_ok(r) {
            code = EXIT_FAIL;
        }
    }
    code
}

fn cmd_bridge(out: &mut Out, instance: &Path, budget: Option<Budget>, seed: u64) -> i32 {
    let Some(inst) = load_instance(out, instance) else { return EXIT_INPUT };
    out.item(&format!("seed {}", seed), json!({"seed": seed}));
    let r = bridge_roundtrip(&inst, budget.unwrap_or(Budget::Count(100)).count(30, 1000), seed);
    emit_report(out, "roundtrip", &r);
    let ok = report_ok(&r);
    let verdict = if ok { "PASS" } else { "FAIL" };
    out.item(&format!("ROUNDTRIP {}", verdict), json!({"roundtrip": verdict}));
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
