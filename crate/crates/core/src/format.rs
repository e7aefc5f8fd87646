//! Text and JSON formats shared by the command line.
//!
//! Field elements are written `p/q`, `a+b*sqrt(d)`, `sqrt(d)` or
//! `(a+b*sqrt(d))/c`. Polynomials are ascending coefficient lists separated by
//! spaces, point sequences are comma separated, matrices are one row per line.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::budan::SignVariationReport;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, Rational};
use crate::multiplicity::{LambdaSequence, MultiplicityMatrix};
use crate::poly::Polynomial;
use crate::realize::{Certificate, Origin, RealizationResult, Status};

fn parse_err(what: &str, s: &str) -> Error {
    Error::Parse(format!("bad {what}: {s:?}"))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let r: Rational = t.parse().map_err(|_| parse_err("rational", s))?;
    Ok(r)
}

/// Coefficient written in front of `sqrt(..)`: empty, a sign, or `q*`.
fn parse_surd_coefficient(s: &str) -> Result<Rational> {
    match s {
        "" | "+" => Ok(Rational::from_integer(1.into())),
        "-" => Ok(Rational::from_integer((-1).into())),
        _ => {
            let body = s.strip_suffix('*').ok_or_else(|| parse_err("surd coefficient", s))?;
            parse_rational(body)
        }
    }
}

fn parse_bare_element(s: &str) -> Result<FieldElement> {
    let Some(at) = s.find("sqrt(") else {
        return Ok(FieldElement::rational(parse_rational(s)?));
    };
    let close = s[at..]
        .find(')')
        .map(|k| at + k)
        .ok_or_else(|| parse_err("element", s))?;
    if close + 1 != s.len() {
        return Err(parse_err("element", s));
    }
    let d: i64 = s[at + 5..close]
        .trim()
        .parse()
        .map_err(|_| parse_err("discriminant", s))?;
    let ctx = FieldContext::quadratic(d)?;
    let prefix = &s[..at];
    let split = prefix
        .char_indices()
        .rev()
        .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !prefix[..i].ends_with('/'))
        .map(|(i, _)| i);
    let (a, b) = match split {
        Some(i) => (parse_rational(&prefix[..i])?, parse_surd_coefficient(&prefix[i..])?),
        None => (Rational::from_integer(0.into()), parse_surd_coefficient(prefix)?),
    };
    FieldElement::new(ctx, a, b)
}

/// Parses one element literal; its context is `Q` unless it mentions `sqrt(d)`.
pub fn parse_element(s: &str) -> Result<FieldElement> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(parse_err("element", s));
    }
    if let Some(inner) = t.strip_prefix('(') {
        let close = inner.rfind(")/").ok_or_else(|| parse_err("element", s))?;
        let num = parse_bare_element(&inner[..close])?;
        let den = parse_rational(&inner[close + 2..])?;
        return num.checked_div(&FieldElement::from_rational(num.context(), den));
    }
    parse_bare_element(&t)
}

/// `Q`, `Q(sqrt(d))` or `Q(sqrt d)`.
pub fn parse_field(s: &str) -> Result<FieldContext> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Ok(FieldContext::rationals());
    }
    let inner = t
        .strip_prefix("Q(sqrt")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err("field", s))?;
    let inner = inner
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(inner);
    let d: i64 = inner.parse().map_err(|_| parse_err("field", s))?;
    FieldContext::quadratic(d)
}

/// Joins the literals' contexts with an optional declared one and lifts every element.
pub fn unify(elements: Vec<FieldElement>, declared: Option<FieldContext>) -> Result<(FieldContext, Vec<FieldElement>)> {
    let mut ctx = declared.unwrap_or(FieldContext::RATIONALS);
    let mut fixed = declared.is_some_and(|c| !c.is_rational());
    for e in &elements {
        let c = e.context();
        if c.is_rational() {
            continue;
        }
        if fixed || !ctx.is_rational() {
            ctx.ensure_same(&c)?;
        }
        ctx = c;
        fixed = true;
    }
    let lifted = elements.iter().map(|e| e.lift(ctx)).collect::<Result<Vec<_>>>()?;
    Ok((ctx, lifted))
}

pub fn parse_poly(s: &str, declared: Option<FieldContext>) -> Result<Polynomial> {
    let items = s.split_whitespace().map(parse_element).collect::<Result<Vec<_>>>()?;
    if items.is_empty() {
        return Err(parse_err("polynomial", s));
    }
    let (ctx, coeffs) = unify(items, declared)?;
    Polynomial::new(ctx, coeffs)
}

pub fn parse_lambda(s: &str, declared: Option<FieldContext>) -> Result<LambdaSequence> {
    if s.trim().is_empty() {
        return Err(parse_err("point sequence", s));
    }
    let items = s.split(',').map(parse_element).collect::<Result<Vec<_>>>()?;
    let (ctx, points) = unify(items, declared)?;
    LambdaSequence::new(ctx, points)
}

pub fn format_lambda(l: &LambdaSequence) -> String {
    l.to_string()
}

/// Roots with multiplicities: `"0:2,3:1"`.
pub fn parse_roots(s: &str) -> Result<Vec<(Rational, usize)>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| {
            let (r, e) = item.split_once(':').ok_or_else(|| parse_err("root", item))?;
            let e: usize = e.trim().parse().map_err(|_| parse_err("multiplicity", item))?;
            Ok((parse_rational(r)?, e))
        })
        .collect()
}

#[derive(Deserialize)]
struct MatrixDoc {
    rows: Vec<Vec<usize>>,
}

/// Reads a matrix as text rows (blank lines and `#` comments skipped), as
/// `{"rows": [[..], ..]}`, or as a bare JSON array of rows.
pub fn parse_matrix(s: &str) -> Result<Vec<Vec<usize>>> {
    let t = s.trim();
    if t.starts_with('{') {
        let doc: MatrixDoc = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(doc.rows);
    }
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
    }
    t.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
                .map(|w| w.parse::<usize>().map_err(|_| parse_err("matrix entry", w)))
                .collect()
        })
        .collect()
}

pub fn format_rows(rows: &[Vec<usize>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn matrix_json(rows: &[Vec<usize>]) -> Value {
    json!({ "rows": rows })
}

/// Rows joined by `;`, entries by spaces.
pub fn matrix_inline(m: &MultiplicityMatrix) -> String {
    m.to_raw()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

fn origin_json(o: &Origin) -> Value {
    match o {
        Origin::Entry { row, column } => json!({ "row": row, "column": column }),
        Origin::Pinned { coefficient } => json!({ "coefficient": coefficient }),
    }
}

pub fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::InconsistentEqualities { combination } => json!({
            "kind": "inconsistent-equalities",
            "combination": combination
                .iter()
                .map(|(o, w)| {
                    let mut v = origin_json(o);
                    v["weight"] = json!(w.to_string());
                    v
                })
                .collect::<Vec<_>>(),
        }),
        Certificate::VanishedDisequality { origin } => {
            let mut v = origin_json(origin);
            v["kind"] = json!("vanished-disequality");
            v
        }
        Certificate::ForcedMismatch { row, column } => json!({
            "kind": "forced-mismatch",
            "row": row,
            "column": column,
        }),
    }
}

pub fn result_json(r: &RealizationResult) -> Value {
    json!({
        "status": match r.status {
            Status::Realizable => "realizable",
            Status::Infeasible => "infeasible",
        },
        "witness": r.witness.as_ref().map(|w| w.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>()),
        "dimension": r.dimension,
        "unique": r.unique,
        "certificate": r.certificate.as_ref().map(certificate_json),
    })
}

pub fn report_json(r: &SignVariationReport) -> Value {
    json!({
        "a": r.a.to_string(),
        "b": r.b.to_string(),
        "v_a": r.v_a,
        "v_b": r.v_b,
        "root_count": r.root_count,
        "nu": r.nu,
    })
}
