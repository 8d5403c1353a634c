//! Text formats: `.qnd` quandles, `.grp` group tables and `.cyc` cochains.
//! `#` starts a comment anywhere on a line; blank lines are skipped.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cocycle::Cochain;
use crate::constructions::{FiniteGroup, GroupError};
use crate::quandle::{verify_quandle, FiniteQuandle, QuandleError};
use crate::symmetric::{verify_good_involution, InvolutionViolation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("rho is not a good involution: {}", .0[0])]
    Involution(Vec<InvolutionViolation>),
}

/// Non-empty lines with comments removed, tagged with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

pub(crate) fn parse_numbers<T: std::str::FromStr>(line: usize, fields: &[&str]) -> Result<Vec<T>, FormatError> {
    fields.iter().map(|f| f.parse::<T>().map_err(|_| syntax(line, format!("bad number {f:?}")))).collect()
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>, keyword: &str, arity: usize) -> Result<(usize, Vec<usize>), FormatError> {
    let (line, text) = lines.next().ok_or_else(|| FormatError::Truncated(format!("missing `{keyword}` header")))?;
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields[0] != keyword || fields.len() != arity + 1 {
        return Err(syntax(line, format!("expected `{keyword}` followed by {arity} number(s)")));
    }
    Ok((line, parse_numbers(line, &fields[1..])?))
}

fn read_table(lines: &mut dyn Iterator<Item = (usize, &str)>, n: usize) -> Result<Vec<Vec<usize>>, FormatError> {
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (line, text) = lines.next().ok_or_else(|| FormatError::Truncated(format!("table row {r} missing")))?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != n {
            return Err(syntax(line, format!("row has {} entries, expected {n}", fields.len())));
        }
        let row: Vec<usize> = parse_numbers(line, &fields)?;
        if let Some(v) = row.iter().find(|&&v| v >= n) {
            return Err(syntax(line, format!("entry {v} out of range 0..{n}")));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Contents of a `.qnd` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleFile {
    pub quandle: FiniteQuandle,
    pub rho: Option<Vec<usize>>,
}

pub fn parse_qnd(text: &str) -> Result<QuandleFile, FormatError> {
    let mut lines = content_lines(text);
    let (_, h) = header(&mut lines, "quandle", 1)?;
    let n = h[0];
    if n == 0 {
        return Err(FormatError::Quandle(QuandleError::Empty));
    }
    let rows = read_table(&mut lines, n)?;
    let quandle = verify_quandle(&rows)?;
    let mut rho = None;
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields[0] != "rho" || rho.is_some() {
            return Err(syntax(line, "unexpected line after the table"));
        }
        if fields.len() != n + 1 {
            return Err(syntax(line, format!("rho needs {n} entries")));
        }
        let r: Vec<usize> = parse_numbers(line, &fields[1..])?;
        verify_good_involution(&quandle, &r).map_err(FormatError::Involution)?;
        rho = Some(r);
    }
    Ok(QuandleFile { quandle, rho })
}

pub fn write_qnd(x: &FiniteQuandle, rho: Option<&[usize]>) -> String {
    let mut out = format!("quandle {}\n", x.order());
    for row in x.rows() {
        out.push_str(&join(&row));
        out.push('\n');
    }
    if let Some(r) = rho {
        let _ = writeln!(out, "rho {}", join(r));
    }
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// `group <m>`, an `m × m` multiplication table, then optionally
/// `labels l_0 … l_{m−1}`.
pub fn parse_grp(text: &str) -> Result<FiniteGroup, FormatError> {
    let mut lines = content_lines(text);
    let (_, h) = header(&mut lines, "group", 1)?;
    let m = h[0];
    let rows = read_table(&mut lines, m)?;
    let mut labels = None;
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields[0] != "labels" || labels.is_some() {
            return Err(syntax(line, "unexpected line after the table"));
        }
        if fields.len() != m + 1 {
            return Err(syntax(line, format!("labels needs {m} entries")));
        }
        labels = Some(fields[1..].iter().map(|s| s.to_string()).collect());
    }
    Ok(FiniteGroup::from_table(&rows, labels)?)
}

pub fn write_grp(g: &FiniteGroup) -> String {
    let mut out = format!("group {}\n", g.order());
    for row in g.rows() {
        out.push_str(&join(&row));
        out.push('\n');
    }
    if let Some(l) = g.labels() {
        let _ = writeln!(out, "labels {}", l.join(" "));
    }
    out
}

/// `cochain <k> <n> <m>` followed by `x_1 … x_k value` lines; unlisted
/// tuples are zero and repeated tuples are rejected.
pub fn parse_cyc(text: &str) -> Result<Cochain, FormatError> {
    let mut lines = content_lines(text);
    let (hline, h) = header(&mut lines, "cochain", 3)?;
    let (k, n, m) = (h[0], h[1], h[2] as u64);
    if n == 0 {
        return Err(syntax(hline, "quandle order must be positive"));
    }
    if (n as f64).powi(k as i32) > 5.0e7 {
        return Err(syntax(hline, "cochain too large"));
    }
    let mut f = Cochain::zero(k, n, m);
    let mut seen = vec![false; f.values().len()];
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != k + 1 {
            return Err(syntax(line, format!("expected {k} indices and a value")));
        }
        let tuple: Vec<usize> = parse_numbers(line, &fields[..k])?;
        if let Some(v) = tuple.iter().find(|&&v| v >= n) {
            return Err(syntax(line, format!("index {v} out of range 0..{n}")));
        }
        let value: i64 = parse_numbers(line, &fields[k..])?[0];
        let idx = f.index(&tuple);
        if std::mem::replace(&mut seen[idx], true) {
            return Err(syntax(line, format!("tuple {tuple:?} listed twice")));
        }
        f.set(&tuple, value);
    }
    Ok(f)
}

pub fn write_cyc(f: &Cochain) -> String {
    let mut out = format!("cochain {} {} {}\n", f.arity(), f.order(), f.modulus());
    for (t, v) in f.support() {
        let _ = writeln!(out, "{} {v}", join(&t));
    }
    out
}
