//! Partition listings: a bound line followed by one interval per line.
//!
//! ```text
//! g = 1 1 1 1
//! [0 0 0 0 ; 1 1 1 0] x1
//! ```

use std::fmt::Write as _;

use hdepth::{ExponentVector, HilbertPartition, Interval};

use crate::ParseError;

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn ints(text: &str, line: usize, column: usize) -> Result<Vec<u32>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for word in text.split_whitespace() {
        let at = text[offset..].find(word).map_or(offset, |i| offset + i);
        offset = at + word.len();
        let n = word
            .parse()
            .map_err(|_| err(line, column + text[..at].chars().count(), format!("expected an exponent, found {word:?}")))?;
        out.push(n);
    }
    Ok(out)
}

/// Reads a partition listing; multiplicities default to one.
pub fn parse_partition(text: &str) -> Result<HilbertPartition, ParseError> {
    let mut bound: Option<ExponentVector> = None;
    let mut parts = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let col = content.chars().count() - trimmed.chars().count() + 1;
        if let Some(rest) = trimmed.strip_prefix("g") {
            let Some(rest) = rest.trim_start().strip_prefix('=') else {
                return Err(err(line, col, "expected `g = ...`"));
            };
            if bound.is_some() {
                return Err(err(line, col, "`g` is defined twice"));
            }
            let start = col + trimmed.chars().count() - rest.chars().count();
            let g = ExponentVector::new(ints(rest, line, start)?).map_err(|e| err(line, col, e.to_string()))?;
            bound = Some(g);
            continue;
        }
        let Some(g) = &bound else {
            return Err(err(line, col, "`g = ...` must come before the intervals"));
        };
        let Some(body) = trimmed.strip_prefix('[') else {
            return Err(err(line, col, "expected `[a ; b] xK`"));
        };
        let Some(close) = body.find(']') else {
            return Err(err(line, col, "missing `]`"));
        };
        let inner = &body[..close];
        let Some(semi) = inner.find(';') else {
            return Err(err(line, col, "expected `;` between the endpoints"));
        };
        let low = ints(&inner[..semi], line, col + 1)?;
        let high = ints(&inner[semi + 1..], line, col + 2 + inner[..semi].chars().count())?;
        let after = &body[close + 1..];
        let tail = after.trim();
        let mult_col = col + 1 + body[..=close].chars().count() + (after.len() - after.trim_start().len());
        let mult: usize = match tail {
            "" => 1,
            t => t
                .strip_prefix('x')
                .and_then(|k| k.parse().ok())
                .filter(|&k| k > 0)
                .ok_or_else(|| err(line, mult_col, format!("expected a multiplicity `xK`, found {t:?}")))?,
        };
        let build = |v: Vec<u32>| ExponentVector::new(v).map_err(|e| err(line, col, e.to_string()));
        let (low, high) = (build(low)?, build(high)?);
        if low.dim() != g.dim() || high.dim() != g.dim() {
            return Err(err(line, col, format!("endpoints need {} entries", g.dim())));
        }
        let iv = Interval::new(low, high).map_err(|e| err(line, col, e.to_string()))?;
        parts.extend(std::iter::repeat_n(iv, mult));
    }
    let g = bound.ok_or_else(|| err(last_line, 1, "missing `g = ...`"))?;
    HilbertPartition::new(g, parts).map_err(|e| err(last_line, 1, e.to_string()))
}

fn coords(a: &ExponentVector) -> String {
    a.coords().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// One `[a ; b] xK` line per distinct interval, in lexicographic order.
pub fn partition_lines(pp: &HilbertPartition) -> Vec<String> {
    pp.grouped()
        .into_iter()
        .map(|(iv, k)| format!("[{} ; {}] x{k}", coords(iv.low()), coords(iv.high())))
        .collect()
}

/// A listing that [`parse_partition`] reads back.
pub fn print_partition(pp: &HilbertPartition) -> String {
    let mut s = format!("g = {}\n", coords(pp.bound()));
    for line in partition_lines(pp) {
        writeln!(s, "{line}").expect("writing to a string");
    }
    s
}
