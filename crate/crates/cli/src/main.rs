use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcalc::kalmar::Outcome;
use pcalc::semantics::{is_tautology, Verdict};
use pcalc::transform::{self, Route};
use pcalc::{check, enumerate, proof_file, CalculusId, Derivation, Error, Formula, SchemeId, Step};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

#[derive(Parser)]
#[command(name = "pcalc", version, about = "Proof synthesis and checking for classical positive propositional calculi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a closed proof of a tautology.
    Prove {
        formula: String,
        #[arg(long, default_value = "P", value_parser = parse_calc)]
        calc: CalculusId,
        /// Route for P: `direct` (Kalmar construction) or `reduction` (via conjunctive decomposition).
        #[arg(long, default_value = "direct", value_parser = parse_route)]
        route: Route,
        /// Where to write the proof; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check a proof file.
    Check { proof: PathBuf },
    /// Decide whether a formula is a tautology.
    Tautology { formula: String },
    /// Translate an ID proof into an I proof of the translated conclusion.
    Translate {
        proof: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Print a normal form.
    Normalize {
        formula: String,
        #[arg(long, conflicts_with = "tau", required_unless_present = "tau")]
        gamma: bool,
        #[arg(long)]
        tau: bool,
        /// Also print each rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Split a formula into equivalent conjuncts.
    Decompose {
        formula: String,
        #[arg(long, value_enum, default_value_t = DecomposeMode::Id)]
        mode: DecomposeMode,
    },
    /// Prove or refute every formula within the bounds and summarize.
    Enumerate {
        #[arg(long)]
        max_connectives: usize,
        #[arg(long)]
        max_atoms: u32,
        #[arg(long, default_value = "ID", value_parser = parse_calc)]
        calc: CalculusId,
        #[arg(long, default_value = "direct", value_parser = parse_route)]
        route: Route,
        /// Print one line per formula, in the order R.
        #[arg(long)]
        list: bool,
    },
    /// Length and axiom usage of a proof file.
    Stats { proof: PathBuf },
}

#[derive(Args)]
struct FormatArg {
    /// Write the JSON form instead of the text form.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeMode {
    /// Implicative-disjunctive conjuncts.
    Id,
    /// Implicative conjuncts.
    Implicative,
}

fn parse_calc(s: &str) -> Result<CalculusId, String> {
    s.to_ascii_uppercase().parse()
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse()
}

/// Why a command did not succeed. `Negative` answers the question asked in
/// the negative (exit 1); `Usage` means the question was malformed (exit 2).
enum Failure {
    Negative(String),
    Usage(String),
}

type Reply = Result<String, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_formula(s: &str) -> Result<Formula, Failure> {
    Formula::parse(s).map_err(|e| usage(format!("cannot parse `{s}`: {e}")))
}

fn read_proof(path: &Path) -> Result<Derivation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    proof_file::from_any(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn render(d: &Derivation, json: bool) -> String {
    if json {
        proof_file::to_json(d) + "\n"
    } else {
        proof_file::to_text(d)
    }
}

/// Writes `d` to `out`, or returns it for standard output.
fn emit(d: &Derivation, out: Option<&Path>, json: bool, summary: String) -> Reply {
    let text = render(d, json);
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok(summary)
        }
        None => Ok(text),
    }
}

fn engine_error(e: Error) -> Failure {
    match e {
        // a kernel rejection of synthesized output is a bug, not a user error
        Error::Check(_) | Error::Kernel(_) => panic!("internal error: {e}"),
        e => usage(e),
    }
}

fn synthesize(a: &Formula, calc: CalculusId, route: Route) -> Result<Result<Derivation, String>, Failure> {
    match transform::synthesize(a, calc, route).map_err(engine_error)? {
        Outcome::Proof(d) => {
            check(&d).unwrap_or_else(|e| panic!("internal error: synthesized proof of {a} fails: {e}"));
            assert!(d.is_closed() && d.conclusion() == a, "internal error: proof of the wrong formula");
            Ok(Ok(d))
        }
        Outcome::Countermodel(v) => Ok(Err(v.to_string())),
    }
}

fn prove(formula: &str, calc: CalculusId, route: Route, out: Option<&Path>, json: bool) -> Reply {
    let a = read_formula(formula)?;
    match synthesize(&a, calc, route)? {
        Ok(d) => emit(&d, out, json, format!("proved in {calc}: {} steps\n", d.len())),
        Err(v) => Err(Failure::Negative(format!("not a tautology\ncountermodel: {v}\n"))),
    }
}

fn check_file(path: &Path) -> Reply {
    let d = read_proof(path)?;
    match check(&d) {
        Ok(()) => Ok(format!("ok: {} ({}, {} steps)\n", sequent(&d), d.calculus(), d.len())),
        Err(e) => Err(Failure::Negative(format!("invalid proof: {e}\n"))),
    }
}

fn sequent(d: &Derivation) -> String {
    let hyps: Vec<String> = d.hypotheses().iter().map(Formula::to_string).collect();
    if hyps.is_empty() {
        format!("|- {}", d.conclusion())
    } else {
        format!("{} |- {}", hyps.join(", "), d.conclusion())
    }
}

fn tautology(formula: &str) -> Reply {
    let a = read_formula(formula)?;
    match is_tautology(&a) {
        Verdict::Valid => Ok("tautology\n".into()),
        Verdict::Countermodel(v) => Err(Failure::Negative(format!("not a tautology\ncountermodel: {v}\n"))),
    }
}

fn translate(path: &Path, out: Option<&Path>, json: bool) -> Reply {
    let d = read_proof(path)?;
    if let Err(e) = check(&d) {
        return Err(Failure::Negative(format!("invalid proof: {e}\n")));
    }
    let t = transform::translate_derivation(&d).map_err(usage)?;
    emit(&t, out, json, format!("translated: {} ({} steps)\n", sequent(&t), t.len()))
}

fn normalize(formula: &str, tau: bool, trace: bool) -> Reply {
    let a = read_formula(formula)?;
    let mut out = String::new();
    if tau {
        writeln!(out, "{}", transform::tau(&a).map_err(usage)?).unwrap();
        return Ok(out);
    }
    let g = transform::gamma(&a);
    if trace {
        let mut cur = a.clone();
        for (rule, path) in &g.trace {
            cur = transform::apply_rule(&cur, *rule, path).expect("trace replays");
            writeln!(out, "({rule}) {cur}").unwrap();
        }
    }
    writeln!(out, "{}", g.formula).unwrap();
    Ok(out)
}

fn decompose(formula: &str, mode: DecomposeMode) -> Reply {
    let a = read_formula(formula)?;
    let dec = match mode {
        DecomposeMode::Id => transform::decompose(&a),
        DecomposeMode::Implicative => transform::decompose_to_implicative(&a),
    }
    .map_err(engine_error)?;
    let mut out = String::new();
    for c in &dec.conjuncts {
        writeln!(out, "{c}").unwrap();
    }
    let e = &dec.equivalence;
    writeln!(
        out,
        "equivalence checked in {}: {} steps forward, {} steps backward",
        e.calculus(),
        e.forward().len(),
        e.backward().len()
    )
    .unwrap();
    Ok(out)
}

#[derive(Default)]
struct Row {
    formulas: usize,
    tautologies: usize,
    total_steps: usize,
    max_steps: usize,
}

impl Row {
    fn add(&mut self, steps: Option<usize>) {
        self.formulas += 1;
        if let Some(n) = steps {
            self.tautologies += 1;
            self.total_steps += n;
            self.max_steps = self.max_steps.max(n);
        }
    }

    fn line(&self, label: &str) -> String {
        let mean = if self.tautologies == 0 { 0.0 } else { self.total_steps as f64 / self.tautologies as f64 };
        format!(
            "{label:>11} {:>9} {:>11} {:>9} {:>10.1}\n",
            self.formulas, self.tautologies, self.max_steps, mean
        )
    }
}

fn enumerate_cmd(max_connectives: usize, max_atoms: u32, calc: CalculusId, route: Route, list: bool) -> Reply {
    if max_atoms == 0 {
        return Err(usage("--max-atoms must be at least 1"));
    }
    let mut rows: BTreeMap<usize, Row> = BTreeMap::new();
    let mut out = String::new();
    for a in enumerate::formulas(max_atoms, max_connectives, calc.fragment()) {
        let steps = match synthesize(&a, calc, route)? {
            Ok(d) => {
                if list {
                    writeln!(out, "{a}\tproved\t{}", d.len()).unwrap();
                }
                Some(d.len())
            }
            Err(v) => {
                if list {
                    writeln!(out, "{a}\tcountermodel\t{v}").unwrap();
                }
                None
            }
        };
        rows.entry(a.connectives()).or_default().add(steps);
    }
    let mut total = Row::default();
    writeln!(out, "{:>11} {:>9} {:>11} {:>9} {:>10}", "connectives", "formulas", "tautologies", "max len", "mean len")
        .unwrap();
    for (n, row) in &rows {
        out += &row.line(&n.to_string());
        total.formulas += row.formulas;
        total.tautologies += row.tautologies;
        total.total_steps += row.total_steps;
        total.max_steps = total.max_steps.max(row.max_steps);
    }
    out += &total.line("total");
    writeln!(out, "all {} proofs kernel-checked in {calc}", total.tautologies).unwrap();
    Ok(out)
}

fn stats(path: &Path) -> Reply {
    let d = read_proof(path)?;
    let valid = check(&d);
    let (mut hyps, mut mps) = (0, 0);
    for s in d.steps() {
        match s {
            Step::Hyp { .. } => hyps += 1,
            Step::Mp { .. } => mps += 1,
            Step::Axiom { .. } => {}
        }
    }
    let mut out = String::new();
    writeln!(out, "calculus    {}", d.calculus()).unwrap();
    writeln!(out, "sequent     {}", sequent(&d)).unwrap();
    writeln!(out, "valid       {}", if valid.is_ok() { "yes" } else { "no" }).unwrap();
    writeln!(out, "steps       {}", d.len()).unwrap();
    writeln!(out, "max size    {}", d.steps().iter().map(|s| s.formula().size()).max().unwrap_or(0)).unwrap();
    writeln!(out, "hyp         {hyps}").unwrap();
    writeln!(out, "mp          {mps}").unwrap();
    let h = d.scheme_histogram();
    for s in SchemeId::ALL {
        if d.calculus().has_scheme(s) {
            writeln!(out, "{:<11} {}", s.to_string(), h[s as usize]).unwrap();
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Reply {
    match cli.command {
        Command::Prove { formula, calc, route, out, format } => prove(&formula, calc, route, out.as_deref(), format.json),
        Command::Check { proof } => check_file(&proof),
        Command::Tautology { formula } => tautology(&formula),
        Command::Translate { proof, out, format } => translate(&proof, out.as_deref(), format.json),
        Command::Normalize { formula, tau, trace, .. } => normalize(&formula, tau, trace),
        Command::Decompose { formula, mode } => decompose(&formula, mode),
        Command::Enumerate { max_connectives, max_atoms, calc, route, list } => {
            enumerate_cmd(max_connectives, max_atoms, calc, route, list)
        }
        Command::Stats { proof } => stats(&proof),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on its own usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
