//! Command-line front-end: every command yields one [`CommandResult`] that is
//! printed as JSON, plus a process exit code.
//!
//! Exit codes: 0 ok, 1 usage or syntax error, 2 domain error, 3 guard
//! violation, 4 failed checks in `verify-suite`.

use std::fmt::Display;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use scattered::embed::{self, RestrictionSpec};
use scattered::ramsey::{self, SpectrumEntry, SpectrumKind};
use scattered::{condense, oracle, types, verify, ChainTerm, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "scattered", version, about = "Symbolic calculator for countable scattered chains")]
pub struct Cli {
    /// Accepted for harness compatibility; every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a term and report its basic invariants.
    Parse { term: String },
    /// Canonical form of a term.
    Canon { term: String },
    /// The reversed chain.
    Rev { term: String },
    /// Finite condensation rank.
    Rank { term: String },
    /// Finite condensation, or the whole sequence with --steps.
    Condense {
        term: String,
        #[arg(long)]
        steps: bool,
    },
    /// Try to certify that the first chain embeds into the second.
    Embeds { source: String, target: String },
    /// Try to certify mutual embeddability.
    Equiv { left: String, right: String },
    /// Drop summands of a finite sum (at the root, or at --at PATH).
    Restrict {
        term: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        drop: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        at: Vec<usize>,
    },
    /// Count (n, σ)-types, or list them with --list.
    Types {
        term: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        list: bool,
    },
    /// Type-sum upper bounds on T(1..=n, S).
    Bound {
        term: String,
        #[arg(long)]
        n: usize,
    },
    /// Big Ramsey spectrum T(1..=n, S), exact where a formula applies.
    Spectrum {
        term: String,
        #[arg(long)]
        n: usize,
    },
    /// Tangent number T_n, the big Ramsey degree of n in the rationals.
    Devlin {
        #[arg(long)]
        n: usize,
    },
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run the invariant battery.
    VerifySuite,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Joint order patterns of increasing sequences, by formula and by search.
    Patterns {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Ground set for the search; defaults to the total length.
        #[arg(long)]
        ground: Option<usize>,
    },
    /// Exhaustive finite Ramsey check N → (m)^n_k.
    Ramsey {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Lower-bound coloring checked at a finite scale.
    Witness {
        #[arg(long)]
        term: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long = "N")]
        big_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub command: String,
    /// Canonical printed form of the (first) input term.
    pub input_term: Option<String>,
    pub payload: Value,
    pub warnings: Vec<String>,
}

impl CommandResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("command results serialize")
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> (CommandResult, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => usage_error(&e),
    }
}

pub fn usage_error(e: &clap::Error) -> (CommandResult, i32) {
    let result = CommandResult {
        status: Status::Error,
        command: String::new(),
        input_term: None,
        payload: json!({ "code": "usage_error", "message": e.render().to_string().trim_end() }),
        warnings: Vec::new(),
    };
    (result, EXIT_USAGE)
}

pub fn execute(cli: &Cli) -> (CommandResult, i32) {
    let mut out = Output::default();
    let name = command_name(&cli.command);
    match dispatch(&cli.command, &mut out) {
        Ok((payload, code)) => {
            let status = if code == EXIT_OK { Status::Ok } else { Status::Error };
            (out.finish(status, name, payload), code)
        }
        Err(e) => {
            let payload = json!({ "code": e.code(), "message": e.to_string() });
            (out.finish(Status::Error, name, payload), exit_code(&e))
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::Arity(_) | Error::ZeroRepeat => EXIT_USAGE,
        Error::Guard(_) => EXIT_GUARD,
        Error::ZeroInput(_) | Error::Domain(_) | Error::MissingSpectrum(_) | Error::MixedKinds(_) => EXIT_DOMAIN,
    }
}

fn command_name(c: &Command) -> String {
    let name = match c {
        Command::Parse { .. } => "parse",
        Command::Canon { .. } => "canon",
        Command::Rev { .. } => "rev",
        Command::Rank { .. } => "rank",
        Command::Condense { .. } => "condense",
        Command::Embeds { .. } => "embeds",
        Command::Equiv { .. } => "equiv",
        Command::Restrict { .. } => "restrict",
        Command::Types { .. } => "types",
        Command::Bound { .. } => "bound",
        Command::Spectrum { .. } => "spectrum",
        Command::Devlin { .. } => "devlin",
        Command::Oracle(OracleCommand::Patterns { .. }) => "oracle patterns",
        Command::Oracle(OracleCommand::Ramsey { .. }) => "oracle ramsey",
        Command::Oracle(OracleCommand::Witness { .. }) => "oracle witness",
        Command::VerifySuite => "verify-suite",
    };
    name.to_string()
}

#[derive(Default)]
struct Output {
    input_term: Option<String>,
    warnings: Vec<String>,
}

impl Output {
    /// Parses a term; the first one parsed is echoed as `input_term`.
    fn term(&mut self, text: &str) -> scattered::Result<ChainTerm> {
        let t = scattered::parse(text)?;
        if self.input_term.is_none() {
            self.input_term = Some(t.canonicalize().to_string());
        }
        Ok(t)
    }

    fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    fn finish(self, status: Status, command: String, payload: Value) -> CommandResult {
        CommandResult {
            status,
            command,
            input_term: self.input_term,
            payload,
            warnings: self.warnings,
        }
    }
}

/// An exact integer as a JSON number, however large.
fn big(v: &impl Display) -> Value {
    serde_json::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("payloads serialize")
}

fn positive(n: usize, what: &str) -> scattered::Result<usize> {
    if n == 0 {
        return Err(Error::Domain(format!("{what} needs n ≥ 1")));
    }
    Ok(n)
}

fn dispatch(command: &Command, out: &mut Output) -> scattered::Result<(Value, i32)> {
    let ok = |v: Value| Ok((v, EXIT_OK));
    match command {
        Command::Parse { term } => {
            let t = out.term(term)?;
            let c = t.canonicalize();
            ok(json!({
                "parsed": t.to_string(),
                "canonical": c.to_string(),
                "tails": c.tails(),
                "finite_size": c.size_if_finite(),
                "omega_depth": c.omega_depth(),
                "nodes": t.node_count(),
            }))
        }
        Command::Canon { term } => {
            let t = out.term(term)?;
            ok(json!({ "canonical": t.canonicalize().to_string() }))
        }
        Command::Rev { term } => {
            let t = out.term(term)?;
            ok(json!({ "reverse": t.canonicalize().reverse().to_string() }))
        }
        Command::Rank { term } => {
            let t = out.term(term)?;
            ok(json!({ "rank": condense::fc_rank(&t)? }))
        }
        Command::Condense { term, steps } => {
            let t = out.term(term)?;
            if *steps {
                let seq: Vec<String> = condense::condense_steps(&t)?.iter().map(ToString::to_string).collect();
                ok(json!({ "steps": seq }))
            } else {
                ok(json!({ "condensed": condense::fin_condense(&t)?.to_string() }))
            }
        }
        Command::Embeds { source, target } => {
            let (a, b) = (out.term(source)?, out.term(target)?);
            let v = embed::embeds(&a, &b);
            ok(json!({
                "source": a.canonicalize().to_string(),
                "target": b.canonicalize().to_string(),
                "outcome": v.outcome,
                "trace": v.trace,
            }))
        }
        Command::Equiv { left, right } => {
            let (a, b) = (out.term(left)?, out.term(right)?);
            let v = embed::equivalent(&a, &b);
            ok(json!({
                "left": a.canonicalize().to_string(),
                "right": b.canonicalize().to_string(),
                "outcome": v.outcome,
                "trace": v.trace,
            }))
        }
        Command::Restrict { term, drop, at } => {
            let t = out.term(term)?;
            let mut spec = RestrictionSpec::drop(drop.iter().copied());
            if !at.is_empty() {
                spec = spec.at(at.clone());
            }
            let report = embed::check_increasing(&t);
            if !report.all_hold() {
                out.warn("increasing condition not certified at every node; the restriction may not be equivalent to the term");
            }
            let restricted = embed::restrict(&t, &spec);
            let back = embed::embeds(&restricted, &t);
            ok(json!({
                "restricted": restricted.to_string(),
                "spec": spec,
                "embeds_back": back.outcome,
                "increasing": report,
            }))
        }
        Command::Types { term, n, list } => {
            let t = out.term(term)?;
            let count = types::count_types(&t, *n)?;
            let mut payload = json!({ "n": n, "count": big(&count) });
            if *list {
                let trees: Vec<Value> = types::enumerate_types(&t, *n)?
                    .iter()
                    .map(|ty| json!({ "text": ty.to_string(), "tree": ty }))
                    .collect();
                payload["types"] = Value::Array(trees);
            }
            ok(payload)
        }
        Command::Bound { term, n } => {
            let t = out.term(term)?;
            let entries = (1..=positive(*n, "bound")?)
                .map(|k| {
                    Ok(SpectrumEntry {
                        n: k,
                        value: ramsey::spectrum_upper(&t, k)?,
                        kind: SpectrumKind::UpperBound,
                        provenance: "type-sum".into(),
                    })
                })
                .collect::<scattered::Result<Vec<_>>>()?;
            ok(to_value(&entries))
        }
        Command::Spectrum { term, n } => {
            let t = out.term(term)?;
            let entries = ramsey::spectrum(&t, positive(*n, "spectrum")?)?;
            let bounded: Vec<String> = entries
                .iter()
                .filter(|e| e.kind == SpectrumKind::UpperBound)
                .map(|e| e.n.to_string())
                .collect();
            if !bounded.is_empty() {
                out.warn(format!("entries n = {} are upper bounds, not exact values", bounded.join(", ")));
            }
            ok(to_value(&entries))
        }
        Command::Devlin { n } => {
            let seq = ramsey::devlin_sequence(*n)?;
            ok(json!({
                "n": n,
                "value": big(seq.last().expect("n ≥ 1")),
                "sequence": seq.iter().map(big).collect::<Vec<_>>(),
            }))
        }
        Command::Oracle(OracleCommand::Patterns { m, ground }) => {
            let total: usize = m.iter().sum();
            let ground = ground.unwrap_or(total);
            let formula = ramsey::pattern_count(m)?;
            let brute = oracle::brute_pattern_count(m, ground)?;
            ok(json!({
                "m": m,
                "ground": ground,
                "formula": big(&formula),
                "brute": brute,
                "agree": formula == brute.into(),
            }))
        }
        Command::Oracle(OracleCommand::Ramsey { big_n, n, k, m }) => {
            let holds = oracle::ramsey_check(*big_n, *n, *k, *m)?;
            ok(json!({ "N": big_n, "n": n, "k": k, "m": m, "holds": holds }))
        }
        Command::Oracle(OracleCommand::Witness { term, n, t, big_n }) => {
            let s = out.term(term)?;
            let report = oracle::witness_lower_bound(&s, *n, *t, *big_n)?;
            out.warn(format!("verdict holds at scale N = {big_n} only; it is not a proof about the infinite chain"));
            ok(to_value(&report))
        }
        Command::VerifySuite => {
            let report = verify::run_suite();
            let code = if report.failed == 0 { EXIT_OK } else { EXIT_VERIFY };
            if code != EXIT_OK {
                out.warn(format!("{} of {} checks failed", report.failed, report.checks.len()));
            }
            Ok((to_value(&report), code))
        }
    }
}
