//! The `scl` command-line frontend.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    conjecture_check, generic_check, lower_bound, min_vanishing, sample_generic_word, universal_word, upper_bound_C,
};
use crate::cones::{
    enumerate_disc_vectors_with_limits, extremal_rays_with_limit, is_essential, is_extremal, AmbientSet, ConeSpec,
    DiscVector,
};
use crate::config::{OutputFormat, Overrides, RunConfig};
use crate::engine::{scl_with_limit, SclBracket};
use crate::error::{Error, Result};
use crate::graphs::{IntFlow, MDGraph};
use crate::hardness::{
    build_table, collapse, decide_small_scl, reduce_ss_to_smallscl, solve_subset, table_witnesses, SubsetInstance,
    Variant,
};
use crate::scorecard::{run_selected, CRITERION_COUNT};
use crate::synth::synthesize_extremal;
use crate::words::{parse_word, Word};

#[derive(Debug, Parser)]
#[command(name = "scl", version, about = "Exact stable commutator length toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutputArg {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputArg>,
    /// JSON run configuration; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Disc-vector bound B for the LP.
    #[arg(long, global = true)]
    pub bound: Option<i64>,
    /// Report the LP at B without the B+1 stabilization run.
    #[arg(long, global = true)]
    pub no_stabilize: bool,
    /// Seed for sampled words.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// scl of a word such as "a b a^-1 b^-1".
    Compute { word: String },
    /// Lower bound, LP upper bound and their bracket.
    Bounds { word: String },
    /// The universal word w_n and the closed-form bound C(2n).
    Universal {
        n: usize,
        #[arg(long)]
        compute: bool,
    },
    /// A sampled generic word of n blocks.
    Generic {
        n: usize,
        #[arg(long)]
        compute: bool,
    },
    /// Subset-sum variants and the reduction to SMALL SCL.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Disc vectors of V(z) up to the bound.
    Discs {
        /// Rows of z as JSON, e.g. "[[1,-1]]", or @file.
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
    },
    /// Essentiality and bounded extremality of one disc vector.
    Essential {
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        /// Flow as a JSON n×n matrix, or @file.
        #[arg(long)]
        flow: String,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Extreme rays of V(z).
    Rays {
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
    },
    /// Realise an abstract graph as an extremal point.
    Synth {
        /// MD-graph JSON file: {"vertices": 1, "edges": [[0, 0]]}.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Compare the gcd conjecture with the LP value.
    Conjecture { n: i64, p: i64, q: i64, r: i64 },
    /// Run the acceptance criteria and print a scorecard.
    Verify {
        /// Comma-separated criterion ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Ss,
    Ssp,
    Varssp,
    Mixedssp,
    Coss,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Ss => Variant::Ss,
            VariantArg::Ssp => Variant::Ssp,
            VariantArg::Varssp => Variant::VarSsp,
            VariantArg::Mixedssp => Variant::MixedSsp,
            VariantArg::Coss => Variant::Coss,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum GadgetCommand {
    /// Solve a subset-sum variant by brute force.
    Subset {
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Comma-separated integers, or a JSON list of vectors.
        #[arg(allow_hyphen_values = true)]
        values: String,
    },
    /// The reduction table for a zero-sum list and r.
    Table {
        #[arg(allow_hyphen_values = true)]
        values: String,
        #[arg(long)]
        r: i64,
    },
    /// Collapse vectors to integers.
    Collapse {
        /// JSON list of equal-length vectors.
        #[arg(allow_hyphen_values = true)]
        vectors: String,
        #[arg(long)]
        usage: i64,
    },
    /// Decide SMALL SCL for a zero-sum list.
    Smallscl {
        #[arg(allow_hyphen_values = true)]
        values: String,
    },
    /// Run the SS to SMALL SCL reduction with a full transcript.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        values: String,
    },
}

/// A command result: JSON document plus a short text rendering.
struct Report {
    json: Value,
    text: String,
}

impl Report {
    fn new(value: impl Serialize, text: impl Into<String>) -> Result<Self> {
        Ok(Report {
            json: serde_json::to_value(value)?,
            text: text.into(),
        })
    }
}

fn read_arg(text: &str) -> Result<String> {
    match text.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(text.to_string()),
    }
}

fn parse_list(text: &str) -> Result<Vec<i64>> {
    let t = text.trim();
    if t.starts_with('[') {
        return Ok(serde_json::from_str(t)?);
    }
    t.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::parse(s.trim(), "expected an integer"))
        })
        .collect()
}

fn parse_vectors(text: &str) -> Result<Vec<Vec<i64>>> {
    let t = text.trim();
    if t.starts_with("[[") {
        Ok(serde_json::from_str(t)?)
    } else {
        Ok(parse_list(t)?.into_iter().map(|v| vec![v]).collect())
    }
}

fn parse_spec(rows: &str) -> Result<ConeSpec> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(&read_arg(rows)?)?;
    let n = rows.first().map_or(0, Vec::len);
    ConeSpec::from_rows(n, rows)
}

fn compute(w: &Word, cfg: &RunConfig) -> Result<Report> {
    let r = scl_with_limit(w, cfg.bound, cfg.stabilize, cfg.limits.scl_n)?;
    let text = format!("scl({w}) = {} [{:?}, B = {}]", r.value, r.status, r.bound_used);
    let mut json = serde_json::to_value(&r)?;
    json["word"] = json!(w.to_string());
    Ok(Report { json, text })
}

fn bounds(w: &Word, cfg: &RunConfig) -> Result<Report> {
    let (p, cert_x) = min_vanishing(w.x());
    let (q, cert_y) = min_vanishing(w.y());
    let lower = lower_bound(w);
    let upper = scl_with_limit(w, cfg.bound, false, cfg.limits.scl_n)?;
    let bracket = SclBracket {
        lower,
        upper: upper.value.clone(),
    };
    let text = format!(
        "{} <= scl({w}) <= {}{}",
        bracket.lower,
        bracket.upper,
        if bracket.is_certified() { " (certified)" } else { "" }
    );
    Report::new(
        json!({
            "word": w.to_string(),
            "p": p,
            "q": q,
            "certificate_x": cert_x,
            "certificate_y": cert_y,
            "bracket": bracket,
            "certified": bracket.is_certified(),
            "upper": upper,
        }),
        text,
    )
}

fn universal(n: usize, do_compute: bool, cfg: &RunConfig) -> Result<Report> {
    let w = universal_word(n)?;
    let c = upper_bound_C(2 * n)?;
    let mut json = json!({ "n": n, "word": w.to_string(), "closed_form_bound": c });
    let mut text = format!("w_{n} = {w}\nC({}) = {c}", 2 * n);
    if do_compute {
        let r = compute(&w, cfg)?;
        text.push('\n');
        text.push_str(&r.text);
        json["scl"] = r.json;
    }
    Ok(Report { json, text })
}

fn generic(n: usize, do_compute: bool, cfg: &RunConfig) -> Result<Report> {
    let w = sample_generic_word(n, cfg.seed)?;
    let mut json = json!({
        "n": n,
        "seed": cfg.seed,
        "word": w.to_string(),
        "generic": generic_check(w.x()) && generic_check(w.y()),
        "lower_bound": lower_bound(&w),
        "closed_form_bound": upper_bound_C(2 * n)?,
    });
    let mut text = format!("{w}");
    if do_compute {
        let r = compute(&w, cfg)?;
        text.push('\n');
        text.push_str(&r.text);
        json["scl"] = r.json;
    }
    Ok(Report { json, text })
}

fn gadget(cmd: &GadgetCommand) -> Result<Report> {
    match cmd {
        GadgetCommand::Subset { variant, values } => {
            let inst = SubsetInstance::new((*variant).into(), parse_vectors(values)?)?;
            let ans = solve_subset(&inst)?;
            let text = format!("{:?}: {}", inst.variant, ans.answer);
            Report::new(json!({ "instance": inst, "result": ans }), text)
        }
        GadgetCommand::Table { values, r } => {
            let table = build_table(&parse_list(values)?, *r)?;
            let witnesses = table_witnesses(&table)?;
            let text = table
                .labels()
                .iter()
                .zip(&table.columns)
                .map(|(l, c)| format!("{l}: {c:?}"))
                .collect::<Vec<_>>()
                .join("\n");
            let witnesses: Vec<Value> = witnesses
                .into_iter()
                .map(|(l, p)| json!({ "lambda": l, "properties": p, "all": p.all() }))
                .collect();
            Report::new(
                json!({ "labels": table.labels(), "table": table, "witnesses": witnesses }),
                text,
            )
        }
        GadgetCommand::Collapse { vectors, usage } => {
            let c = collapse(&parse_vectors(vectors)?, *usage)?;
            let text = format!("multipliers {:?}\nvalues {:?}", c.multipliers, c.values);
            Report::new(c, text)
        }
        GadgetCommand::Smallscl { values } => {
            let d = decide_small_scl(&parse_list(values)?)?;
            let text = format!("scl below {}: {}", d.threshold, d.answer);
            Report::new(d, text)
        }
        GadgetCommand::Reduce { values } => {
            let red = reduce_ss_to_smallscl(&parse_list(values)?)?;
            let text = format!(
                "SS{:?} = {} over {} rounds (consistent: {})",
                red.input,
                red.answer,
                red.rounds.len(),
                red.rounds_consistent()
            );
            Report::new(red, text)
        }
    }
}

fn execute(cli: &Cli, cfg: &RunConfig) -> Result<Report> {
    match &cli.command {
        Command::Compute { word } => compute(&parse_word(word)?, cfg),
        Command::Bounds { word } => bounds(&parse_word(word)?, cfg),
        Command::Universal { n, compute } => universal(*n, *compute, cfg),
        Command::Generic { n, compute } => generic(*n, *compute, cfg),
        Command::Gadget(g) => gadget(g),
        Command::Discs { rows } => {
            let spec = parse_spec(rows)?;
            let discs = enumerate_disc_vectors_with_limits(&spec, cfg.bound, cfg.limits.disc_n, cfg.limits.disc_bound)?;
            let text = format!("{} disc vectors with outflow at most {}", discs.len(), cfg.bound);
            Report::new(json!({ "bound": cfg.bound, "count": discs.len(), "discs": discs }), text)
        }
        Command::Essential { rows, flow, n_max } => {
            let spec = parse_spec(rows)?;
            let entries: Vec<Vec<i64>> = serde_json::from_str(&read_arg(flow)?)?;
            let d = DiscVector::new(&spec, IntFlow::from_matrix(&entries)?)?;
            let essential = is_essential(&spec, &d);
            let report = is_extremal(&spec, &d.flow, *n_max, AmbientSet::DiscPlusCone);
            let text = format!("essential: {essential}, extremal up to N = {n_max}: {}", report.is_extremal());
            Report::new(
                json!({ "essential": essential, "extremal": report.is_extremal(), "report": report }),
                text,
            )
        }
        Command::Rays { rows } => {
            let spec = parse_spec(rows)?;
            let rays = extremal_rays_with_limit(&spec, cfg.limits.ray_n)?;
            let text = format!("{} extreme rays", rays.len());
            Report::new(json!({ "count": rays.len(), "rays": rays }), text)
        }
        Command::Synth { graph } => {
            let g: MDGraph = serde_json::from_str(&std::fs::read_to_string(graph)?)?;
            g.validate()?;
            let r = synthesize_extremal(&g)?;
            let text = format!(
                "verified: f = {:?}, e* = {}, w = {:?}, n = {}",
                r.f,
                r.e_star,
                r.w,
                r.n()
            );
            Report::new(r, text)
        }
        Command::Conjecture { n, p, q, r } => {
            let rep = conjecture_check(*n, *p, *q, *r)?;
            let text = format!(
                "{}: predicted {} computed {} ({})",
                rep.word,
                rep.predicted,
                rep.computed.value,
                if rep.matches() { "match" } else { "mismatch" }
            );
            let mut json = serde_json::to_value(&rep)?;
            json["matches"] = json!(rep.matches());
            Ok(Report { json, text })
        }
        Command::Verify { only } => {
            let ids: Vec<u8> = if only.is_empty() {
                (1..=CRITERION_COUNT).collect()
            } else {
                only.clone()
            };
            let card = run_selected(&ids);
            let mut text: Vec<String> = card.criteria.iter().map(|c| c.to_string()).collect();
            text.push(format!("{} of {} criteria passed", card.passed, card.criteria.len()));
            Report::new(&card, text.join("\n"))
        }
    }
}

/// Parse arguments, run, print; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let flags = Overrides {
        bound: cli.global.bound,
        stabilize: cli.global.no_stabilize.then_some(false),
        seed: cli.global.seed,
        output: cli.global.output.map(|o| match o {
            OutputArg::Json => OutputFormat::Json,
            OutputArg::Text => OutputFormat::Text,
        }),
    };
    let result = RunConfig::resolve(cli.global.config.as_deref(), &flags)
        .and_then(|cfg| execute(&cli, &cfg).map(|r| (cfg, r)));
    match result {
        Ok((cfg, report)) => {
            let printed = match cfg.output {
                OutputFormat::Json => serde_json::to_string_pretty(&report.json)
                    .map_err(Error::from)
                    .and_then(|s| writeln!(out, "{s}").map_err(Error::from)),
                OutputFormat::Text => writeln!(out, "{}", report.text).map_err(Error::from),
            };
            match printed {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
