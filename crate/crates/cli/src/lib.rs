//! Command-line front end.
//!
//! Exit codes: 0 success or accepted, 1 rejected / not equivalent /
//! violated, 2 parse or validation error, 3 budget or size limit.

pub mod dot;

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use ldlf::afa::{translate_afa_over, Afa};
use ldlf::fa::{
    compile_dfa, dealternate, determinize, enumerate_accepted, equivalent_with_budget, minimize,
    Dfa, Nfa, DEFAULT_STATE_BUDGET,
};
use ldlf::formula::is_atom_name;
use ldlf::metric::{
    check_program, enumerate_models_with, extract_constraints_with, feasible, Feasibility,
    MetricProgram, TimeModel,
};
use ldlf::pbf::Pbf;
use ldlf::trace::enumerate_traces;
use ldlf::twafa::{translate_2afa_over, TwoAfa};
use ldlf::{atoms, format, oracle, parse_formula, parse_program, parse_trace};
use ldlf::{Alphabet, AnyTrace, Error, Formula, Trace};

#[derive(Debug, Parser)]
#[command(name = "ldlf", version, about = "Finite-trace LTLf/LDLf toolkit")]
struct Cli {
    /// Cap on automaton states built by any construction.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_BUDGET)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct FormulaSource {
    /// Formula text.
    #[arg(short = 'f', long = "formula")]
    formula: Option<String>,
    /// File holding the formula.
    #[arg(long)]
    formula_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct OtherFormulaSource {
    /// Second formula text.
    #[arg(short = 'g', long = "other")]
    other: Option<String>,
    /// File holding the second formula.
    #[arg(long)]
    other_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TraceSource {
    /// Trace text, e.g. `{a};{a,b}` or `{a}@0;{b}@5`.
    #[arg(short = 't', long = "trace")]
    trace: Option<String>,
    /// File holding the trace.
    #[arg(long)]
    trace_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ProgramSource {
    /// File holding the metric program.
    #[arg(short = 'p', long = "program")]
    program: Option<PathBuf>,
    /// Program text.
    #[arg(long)]
    program_text: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Afa,
    Nfa,
    Dfa,
    MinDfa,
    #[value(name = "2afa")]
    TwoAfa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Minimal DFA for future formulas, 2AFA with past operators, oracle with metric ones.
    Auto,
    Oracle,
    Afa,
    Nfa,
    Dfa,
    #[value(name = "2afa")]
    TwoAfa,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a formula.
    Parse {
        #[command(flatten)]
        formula: FormulaSource,
    },
    /// Build an automaton and report its size.
    Compile {
        #[command(flatten)]
        formula: FormulaSource,
        #[arg(long, value_enum)]
        to: Target,
        /// Extra atoms, comma separated.
        #[arg(long)]
        ap: Option<String>,
        /// Write the automaton as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check one trace.
    Accepts {
        #[command(flatten)]
        formula: FormulaSource,
        #[command(flatten)]
        trace: TraceSource,
        #[arg(long, value_enum, default_value = "oracle")]
        backend: Backend,
        /// Write the 2AFA run on the trace as DOT (2afa backend only).
        #[arg(long)]
        run_dot: Option<PathBuf>,
    },
    /// Keep the traces of a file, one per line, that satisfy the formula.
    Filter {
        #[command(flatten)]
        formula: FormulaSource,
        /// Trace file, or `-` for standard input.
        #[arg(long)]
        traces: PathBuf,
        /// Keep the violating traces instead.
        #[arg(long)]
        negate: bool,
        #[arg(long, value_enum, default_value = "auto")]
        backend: Backend,
    },
    /// List accepted traces up to a length.
    Enumerate {
        #[command(flatten)]
        formula: FormulaSource,
        /// Atoms, comma separated; the formula's atoms are added.
        #[arg(long, default_value = "")]
        ap: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Decide language equivalence of two formulas.
    Equiv {
        #[command(flatten)]
        formula: FormulaSource,
        #[command(flatten)]
        other: OtherFormulaSource,
    },
    /// Metric logic programs.
    Metric {
        #[command(subcommand)]
        command: MetricCommand,
    },
}

#[derive(Debug, Subcommand)]
enum MetricCommand {
    /// List rule violations on a timed trace.
    Check {
        #[command(flatten)]
        program: ProgramSource,
        #[command(flatten)]
        trace: TraceSource,
    },
    /// Least timestamps making an untimed trace satisfy the program.
    Times {
        #[command(flatten)]
        program: ProgramSource,
        #[command(flatten)]
        trace: TraceSource,
        /// Require strictly increasing timestamps.
        #[arg(long)]
        strict: bool,
    },
    /// Timed models of exactly the given length.
    Enumerate {
        #[command(flatten)]
        program: ProgramSource,
        /// Atoms, comma separated; defaults to the program's atoms.
        #[arg(long)]
        ap: Option<String>,
        #[arg(long)]
        horizon: usize,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<ldlf::ParseError> for Failure {
    fn from(e: ldlf::ParseError) -> Self {
        Failure::Lib(e.into())
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Budget { .. } | Error::SizeLimit(_)) => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Invalid(s) => s.clone(),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Invalid(format!("standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn inline_or_file(inline: &Option<String>, file: &Option<PathBuf>) -> Result<String, Failure> {
    match (inline, file) {
        (Some(s), _) => Ok(s.clone()),
        (None, Some(p)) => read_file(p),
        (None, None) => Err(Failure::Invalid("missing input".into())),
    }
}

impl FormulaSource {
    fn load(&self) -> Result<Formula, Failure> {
        Ok(parse_formula(&inline_or_file(
            &self.formula,
            &self.formula_file,
        )?)?)
    }
}

impl OtherFormulaSource {
    fn load(&self) -> Result<Formula, Failure> {
        Ok(parse_formula(&inline_or_file(
            &self.other,
            &self.other_file,
        )?)?)
    }
}

impl TraceSource {
    fn load(&self) -> Result<AnyTrace, Failure> {
        Ok(parse_trace(
            inline_or_file(&self.trace, &self.trace_file)?.trim(),
        )?)
    }
}

impl ProgramSource {
    fn load(&self) -> Result<MetricProgram, Failure> {
        let text = match (&self.program_text, &self.program) {
            (Some(s), _) => s.clone(),
            (None, Some(p)) => read_file(p)?,
            (None, None) => return Err(Failure::Invalid("missing program".into())),
        };
        Ok(parse_program(&text)?)
    }
}

fn parse_atom_list(s: &str) -> Result<BTreeSet<String>, Failure> {
    let mut out = BTreeSet::new();
    for a in s.split(',').map(str::trim).filter(|a| !a.is_empty()) {
        if !is_atom_name(a) {
            return Err(Failure::Invalid(format!("'{a}' is not an atom name")));
        }
        out.insert(a.to_string());
    }
    Ok(out)
}

/// A formula compiled once for repeated membership checks.
enum Checker {
    Oracle(Formula),
    Afa(Afa),
    Nfa(Nfa),
    Dfa(Dfa),
    TwoAfa(TwoAfa),
}

impl Checker {
    fn build(f: &Formula, ap: &Alphabet, backend: Backend, budget: usize) -> Result<Self, Failure> {
        let backend = match backend {
            Backend::Auto if f.has_metric() => Backend::Oracle,
            Backend::Auto if f.has_past() => Backend::TwoAfa,
            Backend::Auto => Backend::Dfa,
            b => b,
        };
        Ok(match backend {
            Backend::Oracle => Checker::Oracle(f.clone()),
            Backend::Afa => Checker::Afa(translate_afa_over(f, ap)?),
            Backend::Nfa => Checker::Nfa(dealternate(&translate_afa_over(f, ap)?, budget)?),
            Backend::Dfa => Checker::Dfa(minimize(&compile_dfa(f, ap, budget)?)),
            Backend::TwoAfa => Checker::TwoAfa(translate_2afa_over(f, ap)?),
            Backend::Auto => unreachable!(),
        })
    }

    fn check(&self, t: &AnyTrace) -> Result<bool, Failure> {
        let untimed = || t.untimed();
        Ok(match self {
            Checker::Oracle(f) => oracle::holds_any(f, t)?,
            Checker::Afa(a) => a.accepts(&untimed())?,
            Checker::Nfa(n) => n.accepts(&untimed())?,
            Checker::Dfa(d) => d.accepts(&untimed())?,
            Checker::TwoAfa(a) => a.accepts(&untimed())?,
        })
    }
}

fn trace_atoms(t: &AnyTrace) -> impl Iterator<Item = String> + '_ {
    t.letters().iter().flat_map(|l| l.atoms().iter().cloned())
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(|e| Failure::Invalid(format!("write failed: {e}")))?
    };
}

fn execute(cli: Cli, io: &mut Io<'_>) -> Outcome {
    let budget = cli.budget;
    match cli.command {
        Command::Parse { formula } => {
            say!(io.out, "{}", format(&formula.load()?));
            Ok(0)
        }
        Command::Compile {
            formula,
            to,
            ap,
            dot,
        } => {
            let f = formula.load()?;
            let extra = match ap {
                Some(s) => parse_atom_list(&s)?,
                None => BTreeSet::new(),
            };
            let ap = Alphabet::new(atoms(&f).into_iter().chain(extra));
            let (states, transitions, text) = match to {
                Target::Afa => {
                    let a = translate_afa_over(&f, &ap)?;
                    let t = a
                        .transition_table()
                        .iter()
                        .flatten()
                        .filter(|p| **p != Pbf::False)
                        .count();
                    (a.state_count(), t, dot::afa_to_dot(&a))
                }
                Target::TwoAfa => {
                    let a = translate_2afa_over(&f, &ap)?;
                    let t = a.transition_count();
                    (a.state_count(), t, dot::twafa_to_dot(&a))
                }
                Target::Nfa => {
                    let n = dealternate(&translate_afa_over(&f, &ap)?, budget)?;
                    (n.state_count(), n.transition_count(), dot::nfa_to_dot(&n))
                }
                Target::Dfa | Target::MinDfa => {
                    let n = dealternate(&translate_afa_over(&f, &ap)?, budget)?;
                    let mut d = determinize(&n, budget)?;
                    if to == Target::MinDfa {
                        d = minimize(&d);
                    }
                    let t = d.state_count() * d.alphabet().letter_count();
                    (d.state_count(), t, dot::dfa_to_dot(&d))
                }
            };
            say!(io.out, "alphabet: {ap}");
            say!(io.out, "states: {states}");
            say!(io.out, "transitions: {transitions}");
            if let Some(path) = dot {
                write_file(&path, &text)?;
            }
            Ok(0)
        }
        Command::Accepts {
            formula,
            trace,
            backend,
            run_dot,
        } => {
            let f = formula.load()?;
            let t = trace.load()?;
            let ap = Alphabet::new(atoms(&f).into_iter().chain(trace_atoms(&t)));
            if run_dot.is_some() && backend != Backend::TwoAfa {
                return Err(Failure::Invalid("--run-dot needs --backend 2afa".into()));
            }
            let checker = Checker::build(&f, &ap, backend, budget)?;
            let verdict = checker.check(&t)?;
            if let (Some(path), Checker::TwoAfa(a)) = (run_dot, &checker) {
                write_file(&path, &dot::run_to_dot(a, &a.run_graph(&t.untimed())?))?;
            }
            say!(io.out, "{}", if verdict { "ACCEPTED" } else { "REJECTED" });
            Ok(if verdict { 0 } else { 1 })
        }
        Command::Filter {
            formula,
            traces,
            negate,
            backend,
        } => {
            let f = formula.load()?;
            let text = read_file(&traces)?;
            let mut lines = Vec::new();
            for (k, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let t = parse_trace(line).map_err(|e| {
                    Failure::Invalid(format!("{}:{}: {e}", traces.display(), k + 1))
                })?;
                lines.push((line, t));
            }
            let ap = Alphabet::new(
                atoms(&f).into_iter().chain(
                    lines
                        .iter()
                        .flat_map(|(_, t)| trace_atoms(t).collect::<Vec<_>>()),
                ),
            );
            let checker = Checker::build(&f, &ap, backend, budget)?;
            let mut kept = 0;
            for (line, t) in &lines {
                if checker.check(t)? != negate {
                    kept += 1;
                    say!(io.out, "{line}");
                }
            }
            say!(io.err, "kept {kept} of {}", lines.len());
            Ok(0)
        }
        Command::Enumerate {
            formula,
            ap,
            max_len,
        } => {
            let f = formula.load()?;
            let ap = Alphabet::new(atoms(&f).into_iter().chain(parse_atom_list(&ap)?));
            if f.has_metric() {
                return Err(Error::UntimedMetric.into());
            }
            if f.has_past() {
                let a = translate_2afa_over(&f, &ap)?;
                for t in enumerate_traces(&ap, max_len)? {
                    if a.accepts(&t)? {
                        say!(io.out, "{t}");
                    }
                }
            } else {
                let d = minimize(&compile_dfa(&f, &ap, budget)?);
                for t in enumerate_accepted(&d, max_len)? {
                    say!(io.out, "{t}");
                }
            }
            Ok(0)
        }
        Command::Equiv { formula, other } => {
            let (f, g) = (formula.load()?, other.load()?);
            let e = equivalent_with_budget(&f, &g, budget)?;
            if e.equivalent {
                say!(io.out, "EQUIVALENT");
                Ok(0)
            } else {
                say!(io.out, "NOT EQUIVALENT");
                let cex = e.counterexample.map(|t| t.to_string()).unwrap_or_default();
                say!(io.out, "counterexample: {cex}");
                Ok(1)
            }
        }
        Command::Metric { command } => metric(command, io),
    }
}

fn metric(command: MetricCommand, io: &mut Io<'_>) -> Outcome {
    let model = |strict: bool| {
        if strict {
            TimeModel::Strict
        } else {
            TimeModel::NonDecreasing
        }
    };
    match command {
        MetricCommand::Check { program, trace } => {
            let p = program.load()?;
            let t = match trace.load()? {
                AnyTrace::Timed(t) => t,
                AnyTrace::Untimed(t) if t.is_empty() => Trace::empty().with_times(Vec::new())?,
                AnyTrace::Untimed(_) => {
                    return Err(Failure::Invalid("metric check needs a timed trace".into()))
                }
            };
            let violations = check_program(&p, &t);
            if violations.is_empty() {
                say!(io.out, "SATISFIED");
                return Ok(0);
            }
            for v in &violations {
                say!(io.out, "{v}");
            }
            Ok(1)
        }
        MetricCommand::Times {
            program,
            trace,
            strict,
        } => {
            let p = program.load()?;
            let t = match trace.load()? {
                AnyTrace::Untimed(t) => t,
                AnyTrace::Timed(_) => {
                    return Err(Failure::Invalid(
                        "metric times needs an untimed trace".into(),
                    ))
                }
            };
            let system = match extract_constraints_with(&p, &t, model(strict)) {
                Ok(s) => s,
                Err(violations) => {
                    say!(io.out, "VIOLATED");
                    for v in &violations {
                        say!(io.out, "{v}");
                    }
                    return Ok(1);
                }
            };
            match feasible(&system) {
                Feasibility::Witness(times) => {
                    say!(io.out, "{}", t.with_times(times)?);
                    Ok(0)
                }
                Feasibility::Infeasible(cycle) => {
                    say!(io.out, "INFEASIBLE");
                    for k in cycle {
                        say!(io.out, "constraint {k}: {}", system.constraints[k]);
                    }
                    Ok(1)
                }
            }
        }
        MetricCommand::Enumerate {
            program,
            ap,
            horizon,
            strict,
        } => {
            let p = program.load()?;
            let atoms = match ap {
                Some(s) => parse_atom_list(&s)?,
                None => p.atoms(),
            };
            for t in enumerate_models_with(&p, &Alphabet::new(atoms), horizon, model(strict))? {
                say!(io.out, "{t}");
            }
            Ok(0)
        }
    }
}

/// Runs the command line `args` (program name first), writing to the given
/// streams, and returns the exit code.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut io = Io { out, err };
    match execute(cli, &mut io) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(io.err, "error: {}", failure.message());
            failure.exit_code()
        }
    }
}

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
