//! G-set text format: header `n m`, then `m` lines `i j w` with 1-based
//! vertices. A line with `i == j` carries the field `h_i = w`.

use std::collections::HashSet;
use std::fmt::Write;

use super::{Edge, IsingInstance};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn parse_gset<T: Scalar>(text: &str) -> Result<IsingInstance<T>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let mut tokens = header.split_whitespace();
    let n: usize = parse_token(tokens.next(), header_line, "vertex count")?;
    let m: usize = parse_token(tokens.next(), header_line, "line count")?;
    if tokens.next().is_some() {
        return Err(parse_err(header_line, "header must be `n m`"));
    }
    if n == 0 {
        return Err(parse_err(header_line, "vertex count must be at least 1"));
    }

    let mut fields = vec![T::zero(); n];
    let mut field_seen = vec![false; n];
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut consumed = 0;
    for (line, content) in lines.by_ref().take(m) {
        consumed += 1;
        let mut tokens = content.split_whitespace();
        let i: usize = parse_token(tokens.next(), line, "vertex")?;
        let j: usize = parse_token(tokens.next(), line, "vertex")?;
        let w: T = parse_token(tokens.next(), line, "weight")?;
        if tokens.next().is_some() {
            return Err(parse_err(line, "expected `i j w`"));
        }
        for x in [i, j] {
            if x == 0 || x > n {
                return Err(Error::Range {
                    vertex: x,
                    n,
                    line: Some(line),
                });
            }
        }
        if !w.is_finite() {
            return Err(parse_err(line, "weight is not finite"));
        }
        let (a, b) = (i.min(j) - 1, i.max(j) - 1);
        if a == b {
            if std::mem::replace(&mut field_seen[a], true) {
                return Err(Error::DuplicateEdge { line, u: a, v: b });
            }
            fields[a] = w;
            continue;
        }
        if !seen.insert((a, b)) {
            return Err(Error::DuplicateEdge { line, u: a, v: b });
        }
        if w != T::zero() {
            edges.push(Edge {
                u: a,
                v: b,
                coupling: w,
            });
        }
    }
    if consumed < m {
        return Err(parse_err(
            text.lines().count().max(1),
            &format!("header announces {m} lines, found {consumed}"),
        ));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(
            line,
            &format!("more than the announced {m} lines"),
        ));
    }
    edges.sort_by_key(|x| (x.u, x.v));
    Ok(IsingInstance::from_sorted(n, fields, edges))
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_token<X: std::str::FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<X> {
    let token = token.ok_or_else(|| parse_err(line, &format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(line, &format!("invalid {what} `{token}`")))
}

/// Canonical text: field lines by vertex, then edges by `(u, v)`; weights in
/// shortest round-trip decimal.
pub fn serialize<T: Scalar>(instance: &IsingInstance<T>) -> String {
    let field_lines: Vec<(usize, T)> = instance
        .fields()
        .iter()
        .enumerate()
        .filter(|(_, &h)| h != T::zero())
        .map(|(i, &h)| (i, h))
        .collect();
    let mut out = String::new();
    let m = field_lines.len() + instance.num_edges();
    writeln!(out, "{} {}", instance.n(), m).unwrap();
    for (i, h) in field_lines {
        writeln!(out, "{} {} {}", i + 1, i + 1, h).unwrap();
    }
    for e in instance.edges() {
        writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.coupling).unwrap();
    }
    out
}
