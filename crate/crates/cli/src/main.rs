use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alog_core::alog::alog_reduct;
use alog_core::audit::{self, SuiteReport};
use alog_core::ground::{ground_program_with, DomainConfig};
use alog_core::slogp::check_slogp;
use alog_core::solver::{candidate_universe, solve_mode, Semantics, SemanticsMode};
use alog_core::{parse_literals, parse_program, Error, GroundProgram, Interpretation, Limits};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "alog", version, about = "Answer sets of programs with sets, under the alog and slog+ semantics")]
struct Cli {
    /// Integer range for grounding, overriding `#int`.
    #[arg(long, global = true, value_name = "MIN..MAX", value_parser = parse_range)]
    int_range: Option<(i64, i64)>,
    /// Largest candidate universe searched exhaustively.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every answer set.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "alog")]
        semantics: Mode,
    },
    /// Decide whether a set of literals is an answer set.
    Check {
        file: PathBuf,
        /// Comma-separated ground literals.
        #[arg(long, value_name = "LITERALS", allow_hyphen_values = true)]
        set: String,
        #[arg(long, value_enum, default_value = "alog")]
        semantics: Mode,
        /// Print the reduct that decided the verdict.
        #[arg(long)]
        show_reduct: bool,
    },
    /// Print the answer sets found under only one of the semantics.
    Diff { file: PathBuf },
    /// Run the randomized property suites.
    Audit {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Parse a program and print it back in normal form.
    Parse { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Alog,
    #[value(name = "slog+")]
    SlogPlus,
    Both,
}

impl From<Mode> for SemanticsMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Alog => SemanticsMode::Alog,
            Mode::SlogPlus => SemanticsMode::SlogPlus,
            Mode::Both => SemanticsMode::Both,
        }
    }
}

fn mode_name(m: SemanticsMode) -> &'static str {
    match m {
        SemanticsMode::Alog => "alog",
        SemanticsMode::SlogPlus => "slog+",
        SemanticsMode::Both => "both",
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected MIN..MAX")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad minimum: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad maximum: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// A failure already reported on stderr, carrying the exit code.
struct Failure(u8);

fn fail(file: &Path, e: &Error) -> Failure {
    match e {
        Error::Parse(p) => eprintln!("{}:{p}", file.display()),
        other => eprintln!("{}: {other}", file.display()),
    }
    Failure(if e.is_cap() { 2 } else { 1 })
}

struct Ctx {
    int_range: Option<(i64, i64)>,
    limits: Limits,
    json: bool,
}

impl Ctx {
    fn load(&self, file: &Path) -> Result<GroundProgram, Failure> {
        let src = std::fs::read_to_string(file).map_err(|e| {
            eprintln!("{}: {e}", file.display());
            Failure(1)
        })?;
        let p = parse_program(&src).map_err(|e| fail(file, &e.into()))?;
        let mut d = DomainConfig::for_program(&p);
        if let Some((lo, hi)) = self.int_range {
            d = d.with_int_range(lo, hi);
        }
        ground_program_with(&p, &d, &self.limits).map_err(|e| fail(file, &e))
    }
}

fn lits_json(a: &Interpretation) -> Value {
    Value::Array(a.iter().map(|l| Value::String(l.to_string())).collect())
}

fn sets_line(sets: &[Interpretation]) -> Vec<String> {
    if sets.is_empty() {
        return vec!["INCONSISTENT".into()];
    }
    sets.iter().map(ToString::to_string).collect()
}

fn stats(g: &GroundProgram) -> Value {
    let n = candidate_universe(g).len();
    json!({
        "ground_rules": g.rules.len(),
        "candidate_universe": n,
        "candidates": 1u64.checked_shl(n as u32).unwrap_or(u64::MAX),
    })
}

fn solve_cmd(ctx: &Ctx, file: &Path, mode: SemanticsMode) -> Result<(), Failure> {
    let g = ctx.load(file)?;
    let results = solve_mode(&g, mode, &ctx.limits).map_err(|e| fail(file, &e))?;
    if ctx.json {
        let mut sets = Map::new();
        for (sem, found) in &results {
            sets.insert(sem.as_str().into(), Value::Array(found.iter().map(lits_json).collect()));
        }
        let doc = json!({
            "program": file.display().to_string(),
            "semantics": mode_name(mode),
            "answer_sets": sets,
            "stats": stats(&g),
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        return Ok(());
    }
    let prefix = results.len() > 1;
    for (sem, found) in &results {
        for line in sets_line(found) {
            if prefix {
                println!("{sem}: {line}");
            } else {
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn check_cmd(ctx: &Ctx, file: &Path, set: &str, mode: SemanticsMode, show_reduct: bool) -> Result<(), Failure> {
    let g = ctx.load(file)?;
    let a: Interpretation = parse_literals(set)
        .map_err(|e| {
            eprintln!("--set:{e}");
            Failure(1)
        })?
        .into_iter()
        .collect();
    let sems = mode.semantics();
    let mut verdicts = Map::new();
    for sem in &sems {
        let (accepted, tried, reduct) = if !a.is_consistent() {
            (false, None, None)
        } else {
            match sem {
                Semantics::Alog => {
                    let accepted =
                        alog_core::alog::is_alog_answer_set_with(&g, &a, &ctx.limits).map_err(|e| fail(file, &e))?;
                    let reduct = alog_reduct(&g, &a).map_err(|e| fail(file, &e))?;
                    (accepted, None, Some(reduct))
                }
                Semantics::SlogPlus => {
                    let c = check_slogp(&g, &a, &ctx.limits).map_err(|e| fail(file, &e))?;
                    (c.witness.is_some(), Some(c.tried), c.witness)
                }
            }
        };
        if ctx.json {
            let mut v = json!({ "answer_set": accepted, "consistent": a.is_consistent() });
            if let Some(t) = tried {
                v["reducts_tried"] = json!(t as u64);
            }
            if show_reduct {
                v["reduct"] = reduct.map_or(Value::Null, |r| Value::String(r.to_string()));
            }
            verdicts.insert(sem.as_str().into(), v);
            continue;
        }
        let mut verdict = String::from(if accepted { "ANSWER SET" } else { "NOT AN ANSWER SET" });
        if !a.is_consistent() {
            verdict.push_str(" (inconsistent)");
        } else if let Some(t) = tried {
            verdict.push_str(&format!(" ({t} reduct{} tried)", if t == 1 { "" } else { "s" }));
        }
        if sems.len() > 1 {
            println!("{sem}: {verdict}");
        } else {
            println!("{verdict}");
        }
        if show_reduct {
            if let Some(r) = reduct {
                print!("{r}");
            }
        }
    }
    if ctx.json {
        let doc = json!({
            "program": file.display().to_string(),
            "set": lits_json(&a),
            "semantics": mode_name(mode),
            "verdicts": verdicts,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    }
    Ok(())
}

fn diff_cmd(ctx: &Ctx, file: &Path) -> Result<(), Failure> {
    let g = ctx.load(file)?;
    let results = solve_mode(&g, SemanticsMode::Both, &ctx.limits).map_err(|e| fail(file, &e))?;
    let (strong, weak) = (&results[0].1, &results[1].1);
    let only_strong: Vec<Interpretation> = strong.iter().filter(|a| !weak.contains(a)).cloned().collect();
    let only_weak: Vec<Interpretation> = weak.iter().filter(|a| !strong.contains(a)).cloned().collect();
    if ctx.json {
        let doc = json!({
            "program": file.display().to_string(),
            "semantics": "both",
            "answer_sets": {
                "alog": strong.iter().map(lits_json).collect::<Vec<_>>(),
                "slog+": weak.iter().map(lits_json).collect::<Vec<_>>(),
            },
            "exclusive": {
                "alog": only_strong.iter().map(lits_json).collect::<Vec<_>>(),
                "slog+": only_weak.iter().map(lits_json).collect::<Vec<_>>(),
            },
            "stats": stats(&g),
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        return Ok(());
    }
    for (name, sets) in [("alog", &only_strong), ("slog+", &only_weak)] {
        if sets.is_empty() {
            println!("{name} only: none");
        }
        for a in sets {
            println!("{name} only: {a}");
        }
    }
    Ok(())
}

fn audit_cmd(ctx: &Ctx, seed: u64, count: usize) -> Result<(), Failure> {
    let l = &ctx.limits;
    type Suite<'a> = (bool, Box<dyn Fn() -> alog_core::Result<SuiteReport> + 'a>);
    let suites: Vec<Suite> = vec![
        (true, Box::new(|| audit::theorem1(seed, count, l))),
        (true, Box::new(|| audit::answer_set_properties(seed, count, l))),
        (true, Box::new(|| audit::splitting(seed, count, Semantics::Alog, l))),
        (false, Box::new(|| audit::splitting(seed, count, Semantics::SlogPlus, l))),
        (true, Box::new(|| audit::set_free_agreement(seed, count, l))),
        (true, Box::new(|| audit::universe_restriction(seed, count, l))),
    ];
    let mut failed = false;
    let mut reports = Vec::new();
    for (required, run) in suites {
        let r = run().map_err(|e| {
            eprintln!("audit: {e}");
            Failure(if e.is_cap() { 2 } else { 1 })
        })?;
        failed |= required && !r.passed();
        reports.push((required, r));
    }
    if ctx.json {
        let doc: Vec<Value> = reports
            .iter()
            .map(|(required, r)| {
                json!({
                    "suite": r.name,
                    "cases": r.cases,
                    "required": required,
                    "findings": r.findings.iter().map(|f| json!({
                        "seed": f.seed, "program": f.program, "detail": f.detail,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({ "seed": seed, "count": count, "suites": doc })).unwrap());
    } else {
        for (required, r) in &reports {
            let status = match (r.passed(), required) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "FINDING",
            };
            println!("{status} {} ({} cases, {} findings)", r.name, r.cases, r.findings.len());
            for f in &r.findings {
                print!("{f}");
            }
        }
    }
    if failed {
        return Err(Failure(3));
    }
    Ok(())
}

fn parse_cmd(file: &Path) -> Result<(), Failure> {
    let src = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        Failure(1)
    })?;
    let p = parse_program(&src).map_err(|e| fail(file, &e.into()))?;
    print!("{p}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits.max_candidates = cap;
    }
    let ctx = Ctx { int_range: cli.int_range, limits, json: cli.json };
    match cli.command {
        Command::Solve { file, semantics } => solve_cmd(&ctx, &file, semantics.into()),
        Command::Check { file, set, semantics, show_reduct } => {
            check_cmd(&ctx, &file, &set, semantics.into(), show_reduct)
        }
        Command::Diff { file } => diff_cmd(&ctx, &file),
        Command::Audit { seed, count } => audit_cmd(&ctx, seed, count),
        Command::Parse { file } => parse_cmd(&file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code)) => ExitCode::from(code),
    }
}
