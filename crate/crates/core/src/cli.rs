//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage or invalid arguments,
//! 3 enumeration cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::closedform::closed_form_result;
use crate::enumerate::{
    chain_name, enumerate_chains_capped, export_tree_dot_capped, per_start_counts, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::exactalg::count_order_k;
use crate::opgraph::{build_space, Family};
use crate::sequences::{
    compare_recurrence, known_recurrence, oeis_compare, sources, verify_recurrence,
    RecurrenceMatch, RecurrenceSpec, SequenceMode, SequenceRecord,
};
use crate::symcalc3::{annotate_vanishing, verify_identities};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "diffops",
    version,
    about = "Meaningful compositions of differential operations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    B,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
        }
    }
}

#[derive(Debug, Args)]
struct SpaceArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    dim: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count meaningful compositions of a given order.
    Count {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        order: usize,
        /// Break the count down by leftmost operation.
        #[arg(long)]
        per_start: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List meaningful compositions, or their walk tree as DOT.
    Enumerate {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Mark chains that vanish identically (ℝ³ only).
        #[arg(long)]
        annotate: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Characteristic polynomial of the adjacency matrix.
    Charpoly {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Linear recurrence satisfied by the counts.
    Recurrence {
        #[command(flatten)]
        space: SpaceArgs,
        /// Number of terms to verify the recurrence against.
        #[arg(long, default_value_t = 50)]
        terms: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recurrence table for a range of dimensions, both families.
    Table {
        #[arg(long, default_value = "3..10", value_parser = parse_dims)]
        dims: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the ℝ³ composition identities on seeded random fields.
    VerifyIdentities {
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare computed counts with a sequence database entry.
    Oeis {
        #[arg(long)]
        id: String,
        /// Fetch the b-file instead of using bundled fixtures.
        #[arg(long)]
        online: bool,
        #[arg(long, default_value_t = 30)]
        terms: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_dims(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EnumerationTooLarge { .. } => EXIT_CAP,
        Error::InvalidDimension(_)
        | Error::InvalidOperation { .. }
        | Error::InvalidOrder(_)
        | Error::NotMeaningful(_)
        | Error::InsufficientBaseCases { .. }
        | Error::InsufficientTerms { .. }
        | Error::UnknownSequence(_)
        | Error::InvalidDirection(_)
        | Error::ZeroDirection
        | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

/// Usage line for the subcommand named in `args`, or the top-level one.
fn usage_for(args: &[OsString]) -> String {
    let mut cmd = Cli::command();
    cmd.build();
    let sub = args.get(1).and_then(|a| a.to_str()).unwrap_or_default();
    match cmd.find_subcommand_mut(sub) {
        Some(sub) => sub.render_usage().to_string(),
        None => cmd.render_usage().to_string(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.render().to_string();
            let _ = write!(err, "{text}");
            if !text.contains("Usage:") {
                let _ = writeln!(err, "\n{}", usage_for(&args));
            }
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_INTERNAL,
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let code = exit_code(&e);
            if code == EXIT_USAGE {
                let _ = writeln!(err, "\n{}", usage_for(&args));
            }
            code
        }
    }
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::InvalidArgument(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn family_str(f: Family) -> &'static str {
    match f {
        Family::A => "a",
        Family::B => "b",
    }
}

fn bracketed(v: &[BigInt]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn dispatch(command: Command) -> Result<String> {
    match command {
        Command::Count {
            space,
            order,
            per_start,
            format,
        } => count(space, order, per_start, format),
        Command::Enumerate {
            space,
            order,
            format,
            annotate,
            cap,
            seed,
        } => enumerate(space, order, format, annotate, cap, seed),
        Command::Charpoly { space, format } => charpoly(space, format),
        Command::Recurrence {
            space,
            terms,
            format,
        } => recurrence(space, terms, format),
        Command::Table { dims, format } => table(dims, format),
        Command::VerifyIdentities {
            trials,
            degree,
            seed,
            format,
        } => {
            let report = verify_identities(trials, degree, seed)?;
            match format {
                Format::Text => Ok(report.to_text()),
                Format::Json => Ok(to_json(
                    &serde_json::to_value(&report).expect("serializable"),
                )),
                f => Err(unsupported(f, "verify-identities")),
            }
        }
        Command::Oeis {
            id,
            online,
            terms,
            format,
        } => oeis(&id, online, terms, format),
    }
}

fn count(args: SpaceArgs, order: usize, per_start: bool, format: Format) -> Result<String> {
    let family = Family::from(args.family);
    let space = build_space(args.dim, family)?;
    let total = count_order_k(&space, order)?;
    let breakdown = if per_start {
        Some(per_start_counts(&space, order)?)
    } else {
        None
    };
    match format {
        Format::Text => {
            let mut s = format!("{total}\n");
            if let Some(b) = breakdown {
                for (op, c) in &b.counts {
                    s.push_str(&format!("  {op}: {c}\n"));
                }
            }
            Ok(s)
        }
        Format::Json => {
            let mut v = json!({
                "family": family_str(family),
                "dim": args.dim,
                "order": order,
                "count": total.to_string(),
            });
            if let Some(b) = breakdown {
                let map: serde_json::Map<String, Value> = b
                    .counts
                    .iter()
                    .map(|(op, c)| (op.0.to_string(), Value::from(c.to_string())))
                    .collect();
                v["per_start"] = Value::Object(map);
            }
            Ok(to_json(&v))
        }
        f => Err(unsupported(f, "count")),
    }
}

fn enumerate(
    args: SpaceArgs,
    order: usize,
    format: Format,
    annotate: bool,
    cap: usize,
    seed: u64,
) -> Result<String> {
    let space = build_space(args.dim, args.family.into())?;
    if format == Format::Dot {
        return export_tree_dot_capped(&space, order, cap);
    }
    let mut chains = enumerate_chains_capped(&space, order, cap)?;
    if annotate {
        if args.dim != 3 {
            return Err(Error::InvalidArgument("--annotate needs --dim 3".into()));
        }
        annotate_vanishing(&mut chains, 25, seed)?;
    }
    match format {
        Format::Text => {
            let mut s = String::new();
            for c in &chains {
                s.push_str(&chain_name(c, args.dim));
                match c.vanishes_identically {
                    Some(true) => s.push_str(" = 0"),
                    Some(false) => s.push_str(" ≠ 0"),
                    None => {}
                }
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => {
            let list: Vec<Value> = chains
                .iter()
                .map(|c| {
                    let mut v = json!({
                        "name": chain_name(c, args.dim),
                        "ops": c.indices(),
                        "domain": c.signature.domain,
                        "codomain": c.signature.codomain,
                    });
                    if let Some(z) = c.vanishes_identically {
                        v["vanishes"] = Value::from(z);
                    }
                    v
                })
                .collect();
            Ok(to_json(&json!({
                "family": family_str(space.family()),
                "dim": args.dim,
                "order": order,
                "count": chains.len(),
                "chains": list,
            })))
        }
        f => Err(unsupported(f, "enumerate")),
    }
}

fn charpoly(args: SpaceArgs, format: Format) -> Result<String> {
    let family = Family::from(args.family);
    let result = closed_form_result(family, args.dim)?;
    let status = if result.matched_computed {
        "match"
    } else {
        "mismatch"
    };
    match format {
        Format::Text => Ok(format!("{}\nclosed-form: {status}\n", result.computed)),
        Format::Json => Ok(to_json(&json!({
            "family": family_str(family),
            "dim": args.dim,
            "polynomial": result.computed.to_string(),
            "coefficients": strings(result.computed.coeffs()),
            "closed_form": status,
        }))),
        f => Err(unsupported(f, "charpoly")),
    }
}

fn recurrence(args: SpaceArgs, terms: usize, format: Format) -> Result<String> {
    let family = Family::from(args.family);
    let record = SequenceRecord::build(family, args.dim, terms)?;
    let verified = verify_recurrence(&record, terms)?;
    let sym = family.count_symbol();
    let equation = record.recurrence.display_with(sym);
    let status = if verified { "ok" } else { "failed" };
    match format {
        Format::Text => Ok(format!(
            "coefficients: {}\n{equation}\nverified on k = 1..{terms}: {status}\n",
            bracketed(&record.recurrence.coefficients)
        )),
        Format::Json => Ok(to_json(&json!({
            "family": family_str(family),
            "dim": args.dim,
            "coefficients": strings(&record.recurrence.coefficients),
            "equation": equation,
            "verified_terms": terms,
            "verified": verified,
        }))),
        f => Err(unsupported(f, "recurrence")),
    }
}

struct TableRow {
    family: Family,
    n: usize,
    recurrence: RecurrenceSpec,
    published: Option<RecurrenceMatch>,
}

fn table_rows(dims: RangeInclusive<usize>) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for family in [Family::A, Family::B] {
        for n in dims.clone() {
            let record = SequenceRecord::build(family, n, 60)?;
            let published = known_recurrence(family, n)
                .map(|known| compare_recurrence(&record.recurrence, &known, &record.terms));
            rows.push(TableRow {
                family,
                n,
                recurrence: record.recurrence,
                published,
            });
        }
    }
    Ok(rows)
}

fn match_str(m: Option<RecurrenceMatch>) -> &'static str {
    match m {
        Some(RecurrenceMatch::Exact) => "exact",
        Some(RecurrenceMatch::AnnihilatesTerms) => "annihilates",
        Some(RecurrenceMatch::Mismatch) => "mismatch",
        None => "-",
    }
}

fn table(dims: RangeInclusive<usize>, format: Format) -> Result<String> {
    let rows = table_rows(dims)?;
    match format {
        Format::Text => {
            let mut s = String::new();
            let mut current = None;
            for r in &rows {
                if current != Some(r.family) {
                    if current.is_some() {
                        s.push('\n');
                    }
                    s.push_str(&format!("family {}\n", r.family));
                    current = Some(r.family);
                }
                s.push_str(&format!(
                    "  n = {:<3} {}    [{}]\n",
                    r.n,
                    r.recurrence.display_with(r.family.count_symbol()),
                    match_str(r.published)
                ));
            }
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from("family,n,coefficients,published\n");
            for r in &rows {
                let coeffs: Vec<String> = strings(&r.recurrence.coefficients);
                s.push_str(&format!(
                    "{},{},\"{}\",{}\n",
                    family_str(r.family),
                    r.n,
                    coeffs.join(" "),
                    match_str(r.published)
                ));
            }
            Ok(s)
        }
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "family": family_str(r.family),
                        "n": r.n,
                        "coefficients": strings(&r.recurrence.coefficients),
                        "equation": r.recurrence.display_with(r.family.count_symbol()),
                        "published": match_str(r.published),
                    })
                })
                .collect();
            Ok(to_json(&Value::Array(list)))
        }
        Format::Dot => Err(unsupported(format, "table")),
    }
}

fn oeis(id: &str, online: bool, terms: usize, format: Format) -> Result<String> {
    let found = sources(id);
    if found.is_empty() {
        return Err(Error::UnknownSequence(id.to_owned()));
    }
    let mode = if online {
        SequenceMode::Online
    } else {
        SequenceMode::Offline
    };
    let mut reports = Vec::new();
    for (family, n) in found {
        let mut record = SequenceRecord::build(family, n, terms)?;
        record.oeis_id = Some(id.to_owned());
        reports.push(oeis_compare(&record, mode)?);
    }
    match format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "{} vs {}(k), family {}, n = {}: {} ({} terms matched, offset {}, source {})\n",
                    r.id,
                    r.family.count_symbol(),
                    r.family,
                    r.n,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.matched_terms,
                    r.offset,
                    r.source.as_str()
                ));
                if let Some(reason) = &r.fallback_reason {
                    s.push_str(&format!("  online fetch failed: {reason}\n"));
                }
            }
            Ok(s)
        }
        Format::Json => Ok(to_json(
            &serde_json::to_value(&reports).expect("serializable"),
        )),
        f => Err(unsupported(f, "oeis")),
    }
}
