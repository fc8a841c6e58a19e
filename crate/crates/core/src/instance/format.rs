//! Line-oriented text format with 1-based vertex ids.
//!
//! ```text
//! c comment
//! p tms <n> <m> <pairs>
//! e <u> <v> [<w>]
//! t <u> <v>
//! k <budget>
//! a <p> <q>
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use super::{InstanceError, TmsInstance};
use crate::graph::{Graph, GraphError};
use crate::weight::Weight;
use crate::{Alpha, Vertex};

/// Syntax or semantic error; `line` is 1-based, 0 for whole-file problems.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<Vertex, ParseError> {
    let v: usize = number(line, tok, "vertex")?;
    if v == 0 || v > n {
        return Err(err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn expect_len(line: usize, toks: &[&str], lo: usize, hi: usize) -> Result<(), ParseError> {
    if toks.len() < lo || toks.len() > hi {
        return Err(err(line, format!("`{}` record has the wrong field count", toks[0])));
    }
    Ok(())
}

pub fn parse_instance<W: Weight>(text: &str) -> Result<TmsInstance<W>, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph: Graph<W> = Graph::new(0);
    let mut pairs = Vec::new();
    let mut pair_line = BTreeMap::new();
    let mut k = None;
    let mut alpha = Alpha::zero();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = toks.first() else { continue };
        if tag == "c" {
            continue;
        }
        if tag != "p" && header.is_none() {
            return Err(err(line, "expected `p tms` header first"));
        }
        let n = graph.n();
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate header"));
                }
                expect_len(line, &toks, 5, 5)?;
                if toks[1] != "tms" {
                    return Err(err(line, format!("unknown problem `{}`", toks[1])));
                }
                let n = number(line, toks[2], "vertex count")?;
                let m = number(line, toks[3], "edge count")?;
                let t = number(line, toks[4], "pair count")?;
                header = Some((n, m, t));
                graph = Graph::new(n);
            }
            "e" => {
                expect_len(line, &toks, 3, 4)?;
                let u = vertex(line, toks[1], n)?;
                let v = vertex(line, toks[2], n)?;
                let w = match toks.get(3) {
                    Some(tok) => W::from_str_radix(tok, 10)
                        .map_err(|_| err(line, format!("invalid weight `{tok}`")))?,
                    None => W::one(),
                };
                graph.add_weighted_edge(u, v, w).map_err(|e| match e {
                    GraphError::ZeroWeight(..) => err(line, "edge weight must be positive"),
                    other => err(line, other.to_string()),
                })?;
            }
            "t" => {
                expect_len(line, &toks, 3, 3)?;
                let u = vertex(line, toks[1], n)?;
                let v = vertex(line, toks[2], n)?;
                let p = (u.min(v), u.max(v));
                if pair_line.insert(p, line).is_some() {
                    return Err(err(line, format!("terminal pair {} {} listed twice", p.0 + 1, p.1 + 1)));
                }
                pairs.push(p);
            }
            "k" => {
                expect_len(line, &toks, 2, 2)?;
                if k.replace(number(line, toks[1], "budget")?).is_some() {
                    return Err(err(line, "duplicate budget"));
                }
            }
            "a" => {
                expect_len(line, &toks, 3, 3)?;
                let p: u64 = number(line, toks[1], "alpha numerator")?;
                let q: u64 = number(line, toks[2], "alpha denominator")?;
                if q == 0 {
                    return Err(err(line, "alpha denominator must be positive"));
                }
                alpha = Alpha::new(p, q);
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }

    let Some((_, m, t)) = header else {
        return Err(err(0, "missing `p tms` header"));
    };
    if graph.m() != m {
        return Err(err(0, format!("header declares {m} edges, found {}", graph.m())));
    }
    if pairs.len() != t {
        return Err(err(0, format!("header declares {t} pairs, found {}", pairs.len())));
    }
    let k = k.ok_or_else(|| err(0, "missing `k` budget record"))?;
    TmsInstance::new(graph, pairs, k, alpha).map_err(|e| match e {
        InstanceError::CrossComponent(u, v) => err(
            pair_line[&(u, v)],
            format!("terminal pair {} {} spans two components", u + 1, v + 1),
        ),
        other => err(0, other.to_string()),
    })
}

/// Canonical text form. Unit weights and zero slack are omitted.
pub fn write_instance<W: Weight>(inst: &TmsInstance<W>) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "p tms {} {} {}", g.n(), g.m(), inst.terminals.len()).unwrap();
    for (u, v, w) in g.edges() {
        if w.is_one() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        } else {
            writeln!(out, "e {} {} {}", u + 1, v + 1, w).unwrap();
        }
    }
    for &(u, v) in &inst.terminals {
        writeln!(out, "t {} {}", u.min(v) + 1, u.max(v) + 1).unwrap();
    }
    writeln!(out, "k {}", inst.k).unwrap();
    if !inst.alpha.is_zero() {
        writeln!(out, "a {} {}", inst.alpha.numer(), inst.alpha.denom()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type I = TmsInstance<u64>;

    #[test]
    fn parses_minimal_instance() {
        let inst: I = parse_instance("p tms 2 1 1\ne 1 2\nt 1 2\nk 1\n").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.terminals, vec![(0, 1)]);
        assert_eq!(inst.k, 1);
        assert!(inst.is_plain());
    }

    #[test]
    fn parses_alpha_exactly() {
        let inst: I = parse_instance("c slack\np tms 2 1 1\ne 1 2\nt 1 2\nk 1\na 2 4\n").unwrap();
        assert_eq!(inst.alpha, Alpha::new(1, 2));
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_instance::<u64>("p tms 2 1 2\ne 1 2\nt 1 2\nt 2 1\nk 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_instance::<u64>("p tms 2 1 1\ne 1 2 0\nt 1 2\nk 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_instance::<u64>("p tms 3 1 1\ne 1 2\nt 1 3\nk 0\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_instance::<u64>("p tms 2 1 1\ne 1 x\n").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (2, "invalid vertex `x`"));
        let e = parse_instance::<u64>("e 1 2\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn round_trip_preserves_weights_and_alpha() {
        let text = "p tms 3 2 2\ne 1 2 7\ne 2 3\nt 1 3\nt 2 2\nk 2\na 1 3\n";
        let inst: I = parse_instance(text).unwrap();
        assert_eq!(write_instance(&inst), text);
        assert_eq!(parse_instance::<u64>(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn writer_normalizes_orientation() {
        let inst: I = parse_instance("p tms 2 1 1\ne 2 1\nt 2 1\nk 0\n").unwrap();
        assert_eq!(write_instance(&inst), "p tms 2 1 1\ne 1 2\nt 1 2\nk 0\n");
    }
}
