//! Command-line frontend for the polyradix library.
//!
//! Exit status contract: 0 for success and positive verdicts, 1 for negative
//! mathematical verdicts (no finite expansion, non-integral inverse, failed
//! merge conditions, missed clique target), 2 for usage and parse errors, 3
//! for exhausted budgets and inconclusive runs. `POLYRADIX_BUDGET` overrides
//! the default step budget.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use polyradix::cns::{self, Cycle, FepVerdict, Limits, StartSet, WitnessReport};
use polyradix::crt_merge::{
    in_w, merge_digit_systems_with, necessary_conditions, psi_inverse, CrtSolution, MergeReport,
};
use polyradix::gb_ideal::strong_gb;
use polyradix::intpoly::IntPoly;
use polyradix::quotient::{DigitSystem, DigitSystemFile, Expansion};
use polyradix::simultaneous::{
    clique_search, verify_sim, CliqueReport, SimExpansion, SimSystem, SimVerifyReport,
};
use polyradix::Error;

const DEFAULT_BUDGET: u64 = 1_000_000;
const JSON_VERSION: u64 = 1;

#[derive(Parser)]
#[command(name = "polyradix", version, about = "Exact polynomial digit systems over the integers")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Start {
    Generators,
    Units,
}

impl From<Start> for StartSet {
    fn from(s: Start) -> StartSet {
        match s {
            Start::Generators => StartSet::Generators,
            Start::Units => StartSet::UnitsOnly,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Resultant of two polynomials (Sylvester convention, first argument's
    /// rows on top)
    Resultant {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Strong Groebner basis of the ideal (f1, f2) in Z[x]
    Gb {
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
    },
    /// Chinese-Remainder reduction (--value) or integral inverse (--residues)
    Crt {
        /// Comma-separated monic moduli, e.g. "x+5,x+7"
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        moduli: Vec<String>,
        /// Polynomial to reduce componentwise
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
        /// Comma-separated residues to interpolate integrally
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        residues: Option<Vec<String>>,
    },
    /// Expand an element in a digit system loaded from a file
    Expand {
        /// Digit system file: { "modulus": "<poly>", "digits": [...] }
        #[arg(long)]
        system: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        budget: Option<u64>,
        /// Print digits most significant first
        #[arg(long)]
        msb: bool,
    },
    /// Decide the finite expansion property by witness-set closure
    CheckCns {
        /// Polynomial with classical digits 0..|f(0)|-1
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        /// Digit system file for a general digit set
        #[arg(long, conflicts_with = "poly")]
        system: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Start::Generators)]
        start: Start,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Merge two digit system files into one modulo the product polynomial
    Merge {
        ds1: PathBuf,
        ds2: PathBuf,
        /// Write the merged digit system here on success
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simultaneous number systems
    Simul {
        #[command(subcommand)]
        cmd: SimulCommand,
    },
    /// Maximum clique of the unit-resultant graph over a coefficient box
    Clique {
        #[arg(long)]
        degree: usize,
        #[arg(long = "box")]
        box_bound: i64,
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
    },
}

#[derive(Subcommand)]
enum SimulCommand {
    /// Expand an integer (or component values) over classical bases
    Expand {
        /// Comma-separated integer bases, e.g. "-3,-4"
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        bases: Vec<i64>,
        /// Integer to expand diagonally
        #[arg(long, allow_hyphen_values = true)]
        value: Option<i64>,
        /// Comma-separated component values instead of a diagonal integer
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "value")]
        components: Option<Vec<i64>>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        msb: bool,
        /// Print the trajectory in arrow notation
        #[arg(long)]
        trace: bool,
    },
    /// Verify a simultaneous system: pairwise ideals and product expansions
    Verify {
        /// System file: { "moduli": [...], "digits": [...] } (digits optional)
        #[arg(long)]
        moduli: Option<PathBuf>,
        /// Classical bases instead of a file
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bases: Option<Vec<i64>>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Clique search (same as the top-level command)
    Clique {
        #[arg(long)]
        degree: usize,
        #[arg(long = "box")]
        box_bound: i64,
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
    },
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

/// Maps library errors onto the exit contract.
fn error_code(e: &CliError) -> u8 {
    match e {
        CliError::Lib(Error::BudgetExhausted(_)) | CliError::Lib(Error::Inconclusive(_)) => 3,
        _ => 2,
    }
}

enum CliError {
    Lib(Error),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = Result<ExitCode, CliError>;

fn budget(explicit: Option<u64>) -> u64 {
    explicit
        .or_else(|| {
            std::env::var("POLYRADIX_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_BUDGET)
}

fn limits(explicit: Option<u64>) -> Limits {
    let b = budget(explicit);
    Limits {
        orbit_budget: b.max(Limits::default().orbit_budget),
        ..Limits::default()
    }
}

fn parse_poly(s: &str) -> Result<IntPoly, CliError> {
    IntPoly::parse(s).map_err(CliError::Lib)
}

fn load_system(path: &PathBuf) -> Result<DigitSystem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file: DigitSystemFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    DigitSystem::from_file(&file).map_err(CliError::Lib)
}

fn emit(format: Format, json: Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("valid json")),
        Format::Text => println!("{text}"),
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Resultant { p, q } => cmd_resultant(cli.format, p, q),
        Command::Gb { f1, f2 } => cmd_gb(cli.format, f1, f2),
        Command::Crt {
            moduli,
            value,
            residues,
        } => cmd_crt(cli.format, moduli, value.as_deref(), residues.as_deref()),
        Command::Expand {
            system,
            value,
            budget: b,
            msb,
        } => cmd_expand(cli.format, system, value, *b, *msb),
        Command::CheckCns {
            poly,
            system,
            start,
            budget: b,
        } => cmd_check_cns(cli.format, poly.as_deref(), system.as_ref(), *start, *b),
        Command::Merge { ds1, ds2, out } => cmd_merge(cli.format, ds1, ds2, out.as_ref()),
        Command::Simul { cmd } => match cmd {
            SimulCommand::Expand {
                bases,
                value,
                components,
                budget: b,
                msb,
                trace,
            } => cmd_simul_expand(cli.format, bases, *value, components.as_deref(), *b, *msb, *trace),
            SimulCommand::Verify {
                moduli,
                bases,
                budget: b,
            } => cmd_simul_verify(cli.format, moduli.as_ref(), bases.as_deref(), *b),
            SimulCommand::Clique {
                degree,
                box_bound,
                target,
                cap,
            } => cmd_clique(cli.format, *degree, *box_bound, *target, *cap),
        },
        Command::Clique {
            degree,
            box_bound,
            target,
            cap,
        } => cmd_clique(cli.format, *degree, *box_bound, *target, *cap),
    }
}

fn cmd_resultant(format: Format, p: &str, q: &str) -> CliResult {
    let a = parse_poly(p)?;
    let b = parse_poly(q)?;
    let r = a.resultant(&b).map_err(CliError::Lib)?;
    emit(
        format,
        json!({
            "version": JSON_VERSION,
            "op": "resultant",
            "p": a.to_string(),
            "q": b.to_string(),
            "resultant": r.to_string(),
            "magnitude": r.abs().to_string(),
        }),
        &r.to_string(),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_gb(format: Format, f1: &str, f2: &str) -> CliResult {
    let a = parse_poly(f1)?;
    let b = parse_poly(f2)?;
    let gb = strong_gb(&a, &b).map_err(CliError::Lib)?;
    let fq = gb.clone().finite_quotient();
    let necessary = necessary_conditions(&a, &b, &fq).map_err(CliError::Lib)?;
    let strs = |v: &[IntPoly]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let mult_res = gb
        .resultant_from_multipliers()
        .map(|r| r.to_string())
        .ok();
    let mut text = String::new();
    let _ = writeln!(text, "basis:        {}", strs(gb.gens()).join(", "));
    let _ = writeln!(text, "minimal:      {}", strs(&gb.minimal_basis()).join(", "));
    let _ = writeln!(
        text,
        "multipliers:  {}",
        gb.multipliers().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(
        text,
        "radices:      {}",
        gb.radices().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(text, "cardinality:  {}", gb.cardinality());
    let _ = writeln!(
        text,
        "multiplier resultant: {}",
        mult_res.clone().unwrap_or_else(|| "refused (leading coefficients share a factor)".into())
    );
    let _ = writeln!(
        text,
        "maximal period possible: {} (S(1) = {})",
        if necessary.possible { "yes" } else { "no" },
        necessary.s_one
    );
    let _ = write!(text, "unit ideal:   {}", if gb.is_unit_ideal() { "yes" } else { "no" });
    emit(
        format,
        json!({
            "version": JSON_VERSION,
            "op": "gb",
            "basis": strs(gb.gens()),
            "minimal_basis": strs(&gb.minimal_basis()),
            "multipliers": gb.multipliers().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "radices": gb.radices().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "cardinality": gb.cardinality().to_string(),
            "unit_ideal": gb.is_unit_ideal(),
            "multiplier_resultant": mult_res,
            "maximal_period_possible": necessary.possible,
            "s_one": necessary.s_one,
        }),
        &text,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_crt(
    format: Format,
    moduli: &[String],
    value: Option<&str>,
    residues: Option<&[String]>,
) -> CliResult {
    let moduli: Vec<IntPoly> = moduli
        .iter()
        .map(|s| parse_poly(s))
        .collect::<Result<_, _>>()?;
    if moduli.len() < 2 {
        return Err(CliError::Lib(Error::InvalidInput(
            "at least two moduli required".into(),
        )));
    }
    match (value, residues) {
        (Some(v), None) => {
            let a = parse_poly(v)?;
            let reductions: Vec<String> = moduli
                .iter()
                .map(|f| {
                    polyradix::QuotientRing::new(f.clone())
                        .map(|r| r.reduce(&a).to_string())
                        .map_err(CliError::Lib)
                })
                .collect::<Result<_, _>>()?;
            emit(
                format,
                json!({
                    "version": JSON_VERSION,
                    "op": "crt-reduce",
                    "value": a.to_string(),
                    "residues": reductions,
                }),
                &format!("({})", reductions.join(", ")),
            );
            Ok(ExitCode::SUCCESS)
        }
        (None, Some(rs)) => {
            if rs.len() != moduli.len() {
                return Err(CliError::Lib(Error::InvalidInput(
                    "one residue per modulus required".into(),
                )));
            }
            let residues: Vec<IntPoly> = rs
                .iter()
                .map(|s| parse_poly(s))
                .collect::<Result<_, _>>()?;
            let member = in_w(&residues, &moduli).map_err(CliError::Lib)?;
            // fold the pairwise integral inverse across the moduli
            let mut acc = residues[0].clone();
            let mut modulus = moduli[0].clone();
            let mut integral = true;
            for (r, f) in residues.iter().zip(&moduli).skip(1) {
                match psi_inverse(&acc, r, &modulus, f).map_err(CliError::Lib)? {
                    CrtSolution::Integral(a) => {
                        acc = a;
                        modulus = &modulus * f;
                    }
                    CrtSolution::NotIntegral => {
                        integral = false;
                        break;
                    }
                }
            }
            let json = json!({
                "version": JSON_VERSION,
                "op": "crt-inverse",
                "in_fibred_product": member,
                "integral": integral,
                "value": if integral { Value::String(acc.to_string()) } else { Value::Null },
            });
            if integral {
                emit(format, json, &acc.to_string());
                Ok(ExitCode::SUCCESS)
            } else {
                emit(format, json, "not integrally interpolable");
                Ok(ExitCode::from(1))
            }
        }
        _ => Err(CliError::Lib(Error::InvalidInput(
            "pass exactly one of --value or --residues".into(),
        ))),
    }
}

fn expansion_json(kind: &str, digits: &[String], cycle: Option<Vec<String>>) -> Value {
    let mut v = json!({
        "version": JSON_VERSION,
        "op": "expand",
        "kind": kind,
        "digits": digits,
    });
    if let Some(c) = cycle {
        v["cycle"] = json!(c);
    }
    v
}

fn cmd_expand(
    format: Format,
    system: &PathBuf,
    value: &str,
    b: Option<u64>,
    msb: bool,
) -> CliResult {
    let ds = load_system(system)?;
    let e = ds.ring().reduce(&parse_poly(value)?);
    let exp = ds.expand(&e, budget(b)).map_err(CliError::Lib)?;
    let values = |digits: &[usize]| -> Vec<String> {
        let mut v: Vec<String> = digits.iter().map(|&i| ds.digits()[i].to_string()).collect();
        if msb {
            v.reverse();
        }
        v
    };
    match exp {
        Expansion::Finite { digits } => {
            let v = values(&digits);
            emit(format, expansion_json("finite", &v, None), &v.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        Expansion::Periodic { digits, cycle, .. } => {
            let v = values(&digits);
            let c: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            emit(
                format,
                expansion_json("periodic", &v, Some(c.clone())),
                &format!("periodic, cycle: {}", c.join(" -> ")),
            );
            Ok(ExitCode::from(1))
        }
        Expansion::Budget { digits } => {
            let v = values(&digits);
            emit(format, expansion_json("budget", &v, None), "budget exhausted");
            Ok(ExitCode::from(3))
        }
    }
}

fn cycles_json(cycles: &[Cycle]) -> Value {
    json!(cycles
        .iter()
        .map(|c| {
            json!({
                "length": c.len(),
                "states": c.states.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        })
        .collect::<Vec<_>>())
}

fn witness_outcome(format: Format, report: &WitnessReport) -> CliResult {
    let verdict = match report.verdict {
        FepVerdict::Fep => "fep",
        FepVerdict::NotFep => "not-fep",
        FepVerdict::Inconclusive => "inconclusive",
    };
    let mut text = format!(
        "verdict: {verdict}\nwitness size: {}",
        report.witness_size
    );
    if let Some(l) = report.zero_expansion_length {
        let _ = write!(text, "\nzero expansion length: {l}");
    }
    for c in &report.cycles {
        let states: Vec<String> = c.states.iter().map(ToString::to_string).collect();
        let _ = write!(text, "\ncycle of length {}: {}", c.len(), states.join(" -> "));
    }
    if let Some(reason) = &report.inconclusive_reason {
        let _ = write!(text, "\nreason: {reason}");
    }
    emit(
        format,
        json!({
            "version": JSON_VERSION,
            "op": "check-cns",
            "verdict": verdict,
            "witness_size": report.witness_size,
            "zero_expansion_length": report.zero_expansion_length,
            "cycles": cycles_json(&report.cycles),
            "inconclusive_reason": report.inconclusive_reason,
        }),
        &text,
    );
    Ok(match report.verdict {
        FepVerdict::Fep => ExitCode::SUCCESS,
        FepVerdict::NotFep => ExitCode::from(1),
        FepVerdict::Inconclusive => ExitCode::from(3),
    })
}

fn cmd_check_cns(
    format: Format,
    poly: Option<&str>,
    system: Option<&PathBuf>,
    start: Start,
    b: Option<u64>,
) -> CliResult {
    let lim = limits(b);
    let ds = match (poly, system) {
        (Some(s), None) => DigitSystem::classical(parse_poly(s)?).map_err(CliError::Lib)?,
        (None, Some(path)) => load_system(path)?,
        _ => {
            return Err(CliError::Lib(Error::InvalidInput(
                "pass a polynomial or --system".into(),
            )))
        }
    };
    let report = cns::decide_fep(&ds, start.into(), &lim).map_err(CliError::Lib)?;
    witness_outcome(format, &report)
}

fn merge_json(report: &MergeReport) -> Value {
    let cond = |c: &polyradix::crt_merge::Cond| match c {
        polyradix::crt_merge::Cond::Pass(d) => json!({"pass": true, "detail": d}),
        polyradix::crt_merge::Cond::Fail(d) => json!({"pass": false, "detail": d}),
        polyradix::crt_merge::Cond::NotEvaluated => json!({"pass": Value::Null, "detail": "not evaluated"}),
    };
    json!({
        "version": JSON_VERSION,
        "op": "merge",
        "conditions": {
            "i": cond(&report.cond_i),
            "ii": cond(&report.cond_ii),
            "iii": cond(&report.cond_iii),
            "iv": cond(&report.cond_iv),
        },
        "d_tilde": report.d_tilde.as_ref().map(ToString::to_string),
        "s_period": report.s_period,
        "l1": report.l1,
        "l2": report.l2,
        "l_merged": report.l_merged,
        "fep": report.fep,
        "merged": report.merged.as_ref().map(|m| {
            let f = m.to_file();
            json!({"modulus": f.modulus, "digits": f.digits})
        }),
    })
}

fn cmd_merge(format: Format, ds1: &PathBuf, ds2: &PathBuf, out: Option<&PathBuf>) -> CliResult {
    let a = load_system(ds1)?;
    let b = load_system(ds2)?;
    let report = merge_digit_systems_with(&a, &b, &Limits::default()).map_err(CliError::Lib)?;
    if let (Some(path), Some(merged)) = (out, report.merged.as_ref()) {
        let file = merged.to_file();
        std::fs::write(path, serde_json::to_string_pretty(&file).expect("valid json"))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let ok = report.fep == Some(true);
    let mut text = String::new();
    for (name, c) in [
        ("i", &report.cond_i),
        ("ii", &report.cond_ii),
        ("iii", &report.cond_iii),
        ("iv", &report.cond_iv),
    ] {
        let _ = writeln!(
            text,
            "condition ({name}): {}",
            match c {
                polyradix::crt_merge::Cond::Pass(d) => format!("pass ({d})"),
                polyradix::crt_merge::Cond::Fail(d) => format!("FAIL ({d})"),
                polyradix::crt_merge::Cond::NotEvaluated => "not evaluated".into(),
            }
        );
    }
    if let Some(m) = &report.merged {
        let digits: Vec<String> = m.digits().iter().map(ToString::to_string).collect();
        let _ = writeln!(
            text,
            "merged: {} digits for {}: {}",
            digits.len(),
            m.ring().modulus(),
            digits.join(", ")
        );
    }
    let _ = write!(text, "finite expansion property: {:?}", report.fep);
    emit(format, merge_json(&report), &text);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_simul_expand(
    format: Format,
    bases: &[i64],
    value: Option<i64>,
    components: Option<&[i64]>,
    b: Option<u64>,
    msb: bool,
    trace: bool,
) -> CliResult {
    let sys = SimSystem::classical(bases).map_err(CliError::Lib)?;
    let start = match (value, components) {
        (Some(v), None) => sys.diagonal(&BigInt::from(v)),
        (None, Some(c)) => sys.state_from_ints(c).map_err(CliError::Lib)?,
        _ => {
            return Err(CliError::Lib(Error::InvalidInput(
                "pass exactly one of --value or --components".into(),
            )))
        }
    };
    if trace {
        let mut cur = start.clone();
        let mut steps = 0u64;
        let max = budget(b);
        while !cur.is_zero() && steps < max {
            let (d, next) = sys.step(&cur);
            println!("{cur} --{}--> {next}", sys.digit_reps()[d]);
            cur = next;
            steps += 1;
        }
    }
    let exp = sys.expand(&start, budget(b));
    let render = |digits: &[usize]| -> Vec<String> {
        let mut v: Vec<String> = digits
            .iter()
            .map(|&i| sys.digit_reps()[i].to_string())
            .collect();
        if msb {
            v.reverse();
        }
        v
    };
    match exp {
        SimExpansion::Finite { digits } => {
            let v = render(&digits);
            emit(format, expansion_json("finite", &v, None), &v.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        SimExpansion::Periodic { digits, cycle, .. } => {
            let v = render(&digits);
            let c: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            emit(
                format,
                expansion_json("periodic", &v, Some(c.clone())),
                &format!("periodic, cycle: {}", c.join(" -> ")),
            );
            Ok(ExitCode::from(1))
        }
        SimExpansion::Budget { digits } => {
            let v = render(&digits);
            emit(format, expansion_json("budget", &v, None), "budget exhausted");
            Ok(ExitCode::from(3))
        }
    }
}

#[derive(serde::Deserialize)]
struct SimSystemFile {
    moduli: Vec<String>,
    #[serde(default)]
    digits: Vec<String>,
}

fn verify_json(report: &SimVerifyReport) -> Value {
    let verdict = |v: FepVerdict| match v {
        FepVerdict::Fep => "fep",
        FepVerdict::NotFep => "not-fep",
        FepVerdict::Inconclusive => "inconclusive",
    };
    json!({
        "version": JSON_VERSION,
        "op": "simul-verify",
        "pairwise": report.pairwise.iter().map(|p| json!({
            "i": p.i,
            "j": p.j,
            "resultant": p.resultant.to_string(),
            "unit_ideal": p.unit_ideal,
        })).collect::<Vec<_>>(),
        "pairwise_ok": report.pairwise_ok,
        "product_modulus": report.product_modulus.to_string(),
        "product_fep": verdict(report.product_fep),
        "full_fep": report.full_fep,
        "integers_expand": verdict(report.integers_expand),
    })
}

fn cmd_simul_verify(
    format: Format,
    moduli: Option<&PathBuf>,
    bases: Option<&[i64]>,
    b: Option<u64>,
) -> CliResult {
    let sys = match (moduli, bases) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let file: SimSystemFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let moduli: Vec<IntPoly> = file
                .moduli
                .iter()
                .map(|s| parse_poly(s))
                .collect::<Result<_, _>>()?;
            let digits: Vec<IntPoly> = if file.digits.is_empty() {
                let m: BigInt = moduli.iter().map(|f| f.constant_term().abs()).product();
                let m = u64::try_from(&m).map_err(|_| {
                    CliError::Lib(Error::InvalidInput("digit set too large".into()))
                })?;
                (0..m).map(IntPoly::constant).collect()
            } else {
                file.digits
                    .iter()
                    .map(|s| parse_poly(s))
                    .collect::<Result<_, _>>()?
            };
            SimSystem::new(moduli, digits).map_err(CliError::Lib)?
        }
        (None, Some(bs)) => SimSystem::classical(bs).map_err(CliError::Lib)?,
        _ => {
            return Err(CliError::Lib(Error::InvalidInput(
                "pass exactly one of --moduli or --bases".into(),
            )))
        }
    };
    let report = verify_sim(&sys, &limits(b)).map_err(CliError::Lib)?;
    let mut text = String::new();
    for pr in &report.pairwise {
        let _ = writeln!(
            text,
            "ideal (f{}, f{}): {} (resultant {})",
            pr.i, pr.j,
            if pr.unit_ideal { "unit" } else { "proper" },
            pr.resultant
        );
    }
    let _ = writeln!(text, "product modulus: {}", report.product_modulus);
    let _ = writeln!(text, "product expansions: {:?}", report.product_fep);
    let _ = writeln!(text, "integers expand: {:?}", report.integers_expand);
    let _ = write!(
        text,
        "simultaneous number system: {}",
        if report.full_fep { "yes" } else { "no" }
    );
    emit(format, verify_json(&report), &text);
    Ok(if report.full_fep {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn clique_json(report: &CliqueReport) -> Value {
    json!({
        "version": JSON_VERSION,
        "op": "clique",
        "vertices": report.vertex_count,
        "edges": report.edge_count,
        "max_clique_size": report.max_size,
        "max_clique": report.max_clique.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "target": report.target,
        "target_found": report.target_found,
    })
}

fn cmd_clique(
    format: Format,
    degree: usize,
    box_bound: i64,
    target: Option<usize>,
    cap: u64,
) -> CliResult {
    let report = clique_search(degree, box_bound, target, cap).map_err(CliError::Lib)?;
    let clique: Vec<String> = report.max_clique.iter().map(ToString::to_string).collect();
    let mut text = format!(
        "vertices: {}\nedges: {}\nmaximum clique size: {}\nwitness: {}",
        report.vertex_count,
        report.edge_count,
        report.max_size,
        clique.join(", ")
    );
    if let (Some(t), Some(found)) = (report.target, report.target_found) {
        let _ = write!(text, "\nclique of size {t}: {}", if found { "found" } else { "none" });
    }
    emit(format, clique_json(&report), &text);
    Ok(match report.target_found {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}
