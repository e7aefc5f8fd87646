//! The `multmat` command line.
//!
//! Exit codes: 0 success or realizable, 1 infeasible, not found or invalid,
//! 2 usage or parse error, 3 budget exceeded.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::budan::verify_budan_fourier;
use crate::census::{census, CensusMode, TSV_HEADER};
use crate::enumerate::{EnumerationSpec, DEFAULT_BUDGET};
use crate::error::Error;
use crate::field::FieldContext;
use crate::format::{
    format_lambda, format_rows, matrix_json, parse_field, parse_lambda, parse_matrix, parse_poly, parse_rational,
    parse_roots, result_json,
};
use crate::multiplicity::{multiplicity_matrix_of, truncate_raw, validate_matrix, MultiplicityMatrix};
use crate::realize::{extend, realize, search_lambda, ExtensionOutcome, RealizationResult};
use crate::transforms::{normalize_lambda, transform_poly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "multmat",
    version,
    about = "Multiplicity matrices of polynomials over Q and Q(sqrt d)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldArg {
    /// Q, Q(sqrt(d)) or Q(sqrt d); inferred from the literals when omitted.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity matrix of a polynomial at a point sequence.
    Matrix {
        /// Ascending coefficients, e.g. "0 0 -3 1".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Comma-separated points, e.g. "0,1,2".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        json: bool,
    },
    /// Check that a matrix satisfies the multiplicity-matrix axioms.
    Validate {
        /// Matrix file, or "-" for stdin.
        file: String,
    },
    /// Decide, extend or search for a realization of a matrix.
    Realize {
        /// Matrix file, or "-" for stdin.
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Try degrees n, n+1, ..., n+P.
        #[arg(long, value_name = "P")]
        extend: Option<usize>,
        /// Search for points starting (0, 1) instead of taking --lambda.
        #[arg(long, conflicts_with_all = ["lambda", "extend"])]
        search: bool,
        #[arg(long, default_value_t = 3)]
        height: u64,
        #[command(flatten)]
        field: FieldArg,
        /// Move the points to (0, 1, ...) first.
        #[arg(long)]
        normalize: bool,
        /// Add the witness in conventional notation.
        #[arg(long)]
        pretty: bool,
    },
    /// Enumerate m x (n+1) matrices, optionally deciding each one.
    Census {
        m: usize,
        n: usize,
        /// Prescribed first column, e.g. "3,2".
        #[arg(long)]
        fix_col0: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "search")]
        lambda: Option<String>,
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 3)]
        height: u64,
        #[command(flatten)]
        field: FieldArg,
        /// One matrix per row-permutation class.
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        header: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Drop the first ELL columns of a matrix.
    Truncate {
        file: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        json: bool,
    },
    /// Affine change of variable taking the first two points to 0 and 1.
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Also rewrite this polynomial as f(r x + s).
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Compare sign variations with a known rational root list.
    BudanCheck {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Roots with multiplicities, e.g. "0:2,3:1".
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

/// Failure of a command, with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidDiscriminant(_) | Error::ContextMismatch { .. } => EXIT_USAGE,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_NEGATIVE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read_source(path: &str) -> std::result::Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("{path}: {e}"),
        })?;
    }
    Ok(s)
}

fn read_matrix(path: &str) -> std::result::Result<MultiplicityMatrix, Failure> {
    Ok(validate_matrix(&parse_matrix(&read_source(path)?)?)?)
}

fn field_of(arg: &FieldArg) -> std::result::Result<Option<FieldContext>, Failure> {
    Ok(arg.field.as_deref().map(parse_field).transpose()?)
}

fn print_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("json values serialize")
    )
}

fn exit_for(r: &RealizationResult) -> i32 {
    if r.is_realizable() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn with_pretty(mut v: Value, r: &RealizationResult, pretty: bool) -> Value {
    if pretty {
        v["pretty"] = json!(r.witness.as_ref().map(|w| w.pretty()));
    }
    v
}

fn execute(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Matrix {
            poly,
            lambda,
            field,
            json,
        } => {
            let declared = field_of(&field)?;
            let lambda = parse_lambda(&lambda, declared)?;
            let f = parse_poly(&poly, Some(declared.unwrap_or(lambda.context())))?;
            let m = multiplicity_matrix_of(&f, &lambda)?;
            if json {
                print_json(out, &matrix_json(&m.to_raw()))?;
            } else {
                writeln!(out, "{m}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Validate { file } => {
            let m = read_matrix(&file)?;
            writeln!(out, "valid {}x{}", m.m(), m.n() + 1)?;
            Ok(EXIT_OK)
        }
        Command::Realize {
            file,
            lambda,
            extend: p_max,
            search,
            height,
            field,
            normalize,
            pretty,
        } => {
            let m = read_matrix(&file)?;
            let declared = field_of(&field)?;
            if search {
                let ctx = declared.unwrap_or(FieldContext::RATIONALS);
                let s = search_lambda(&m, ctx, height)?;
                let status = match (s.found.is_empty(), s.exhaustive) {
                    (false, _) => "found",
                    (true, true) => "none",
                    (true, false) => "none-within-bounds",
                };
                let solutions: Vec<Value> = s
                    .found
                    .iter()
                    .map(|(l, r)| json!({ "lambda": format_lambda(l), "result": with_pretty(result_json(r), r, pretty) }))
                    .collect();
                print_json(
                    out,
                    &json!({ "status": status, "exhaustive": s.exhaustive, "field": ctx.to_string(), "solutions": solutions }),
                )?;
                return Ok(if s.found.is_empty() { EXIT_NEGATIVE } else { EXIT_OK });
            }
            let lambda = lambda.ok_or_else(|| Failure {
                code: EXIT_USAGE,
                message: "realize needs --lambda or --search".into(),
            })?;
            let mut lambda = parse_lambda(&lambda, declared)?;
            let mut extra = serde_json::Map::new();
            if normalize {
                let (k, map) = normalize_lambda(&lambda)?;
                extra.insert("lambda".into(), json!(format_lambda(&k)));
                extra.insert(
                    "map".into(),
                    json!({ "r": map.r().to_string(), "s": map.s().to_string() }),
                );
                lambda = k;
            }
            let (mut v, code) = match p_max {
                None => {
                    let r = realize(&m, &lambda)?;
                    (with_pretty(result_json(&r), &r, pretty), exit_for(&r))
                }
                Some(p_max) => match extend(&m, &lambda, p_max)? {
                    ExtensionOutcome::Extension { p, result } => {
                        let mut v = with_pretty(result_json(&result), &result, pretty);
                        v["p"] = json!(p);
                        (v, EXIT_OK)
                    }
                    ExtensionOutcome::NoExtensionUpTo(p_max) => (
                        json!({ "status": "no-extension", "p_max": p_max, "witness": null }),
                        EXIT_NEGATIVE,
                    ),
                },
            };
            for (k, x) in extra {
                v[k] = x;
            }
            print_json(out, &v)?;
            Ok(code)
        }
        Command::Census {
            m,
            n,
            fix_col0,
            lambda,
            search,
            height,
            field,
            canonical,
            header,
            budget,
        } => {
            let declared = field_of(&field)?;
            let mut spec = EnumerationSpec::new(m, n).canonical(canonical).with_budget(budget);
            if let Some(c) = fix_col0 {
                let col0 = c
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad column entry {x:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                spec = spec.with_col0(col0);
            }
            let mode = match (lambda, search) {
                (Some(l), _) => CensusMode::Lambda(parse_lambda(&l, declared)?),
                (None, true) => CensusMode::Search {
                    context: declared.unwrap_or(FieldContext::RATIONALS),
                    height,
                },
                (None, false) => CensusMode::Unchecked,
            };
            let records = census(&spec, &mode)?;
            if header {
                writeln!(out, "{TSV_HEADER}")?;
            }
            for r in &records {
                writeln!(out, "{}", r.to_tsv())?;
            }
            Ok(EXIT_OK)
        }
        Command::Truncate { file, ell, json } => {
            let rows = truncate_raw(&parse_matrix(&read_source(&file)?)?, ell)?;
            if json {
                print_json(out, &matrix_json(&rows))?;
            } else {
                writeln!(out, "{}", format_rows(&rows))?;
            }
            Ok(EXIT_OK)
        }
        Command::Normalize { lambda, poly, field } => {
            let declared = field_of(&field)?;
            let lambda = parse_lambda(&lambda, declared)?;
            let (k, map) = normalize_lambda(&lambda)?;
            writeln!(out, "lambda {}", format_lambda(&k))?;
            writeln!(out, "r {}", map.r())?;
            writeln!(out, "s {}", map.s())?;
            if let Some(p) = poly {
                let f = parse_poly(&p, Some(lambda.context()))?;
                writeln!(out, "poly {}", transform_poly(&f, &map)?)?;
            }
            Ok(EXIT_OK)
        }
        Command::BudanCheck { poly, roots, a, b } => {
            let f = parse_poly(&poly, Some(FieldContext::RATIONALS))?;
            let roots = parse_roots(&roots)?;
            let report = verify_budan_fourier(&f, &roots, &parse_rational(&a)?, &parse_rational(&b)?)?;
            print_json(out, &crate::format::report_json(&report))?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line on `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
