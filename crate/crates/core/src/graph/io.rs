//! Edge-list text format and graph6.
//!
//! Edge list: the first meaningful line holds `n`; every further non-empty line
//! is `u v` or `u v w` with 0-based vertices and `w` written as `p` or `p/q`.
//! `u u w` sets a loop. Lines starting with `#` are comments.

use std::fmt::Write as _;

use num_traits::One;

use super::Graph;
use crate::error::{Error, Result};
use crate::scalar::{int, parse_rational};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(first_line, format!("bad vertex count {header:?}")))?;
    if n == 0 {
        return Err(parse_err(first_line, "vertex count must be at least 1"));
    }

    let mut g = Graph::new(n);
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(parse_err(lineno, "expected `u v` or `u v w`"));
        }
        let vertex = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad vertex {s:?}")))?;
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            Ok(v)
        };
        let u = vertex(fields[0])?;
        let v = vertex(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => parse_rational(s).ok_or_else(|| parse_err(lineno, format!("bad weight {s:?}")))?,
            None => int(1),
        };
        if g.weight(u, v) != int(0) && g.weight(u, v) != w {
            return Err(parse_err(
                lineno,
                format!("conflicting weights for ({u}, {v}): {} vs {w}", g.weight(u, v)),
            ));
        }
        g.set_weight(u, v, w)?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (v, w) in g.loops() {
        writeln!(out, "{v} {v} {w}").unwrap();
    }
    for (e, w) in g.edges() {
        if w.is_one() {
            writeln!(out, "{} {}", e.u, e.v).unwrap();
        } else {
            writeln!(out, "{} {} {w}", e.u, e.v).unwrap();
        }
    }
    out
}

/// Reads a single graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, "graph6 bytes must lie in 63..=126"));
    }
    let (n, rest) = match bytes {
        [126, 126, r @ ..] => {
            if r.len() < 6 {
                return Err(parse_err(1, "truncated graph6 size"));
            }
            (sixes(&r[..6]), &r[6..])
        }
        [126, r @ ..] => {
            if r.len() < 3 {
                return Err(parse_err(1, "truncated graph6 size"));
            }
            (sixes(&r[..3]), &r[3..])
        }
        [b, r @ ..] => ((*b - 63) as usize, r),
        [] => return Err(parse_err(1, "empty graph6 string")),
    };
    if n == 0 {
        return Err(parse_err(1, "vertex count must be at least 1"));
    }
    let needed = (n * (n - 1) / 2).div_ceil(6);
    if rest.len() != needed {
        return Err(parse_err(
            1,
            format!("expected {needed} adjacency bytes, found {}", rest.len()),
        ));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_weight(u, v, int(1))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

fn sixes(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as usize)
}

/// graph6 encoding; only for loopless unit-weight graphs.
pub fn to_graph6(g: &Graph) -> Result<String> {
    if !g.is_unit_weighted() {
        return Err(Error::Precondition("graph6 needs a loopless unit-weight graph".into()));
    }
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Edge list or graph6, chosen by the first meaningful line. A vertex count
/// starts with a digit, which can never begin a graph6 string.
pub fn parse_graph_auto(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with(">>graph6<<") || first.as_bytes().first().is_some_and(|&b| b >= 63) {
        parse_graph6(first)
    } else {
        parse_graph(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{path, star};
    use crate::scalar::rat;

    #[test]
    fn edge_list_examples() {
        let p3 = parse_graph("3\n0 1\n1 2").unwrap();
        assert_eq!(p3, path(3).unwrap());
        let k1 = parse_graph("1").unwrap();
        assert_eq!(k1.order(), 1);
        assert_eq!(k1.edge_count(), 0);
        let g = parse_graph("2\n0 0 5\n0 1 1/2").unwrap();
        assert_eq!(g.weight(0, 0), int(5));
        assert_eq!(g.weight(0, 1), rat(1, 2));
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_graph("3\n0 1 2 3"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3\n0 3"), Err(Error::VertexOutOfRange { vertex: 3, n: 3 })));
        assert!(matches!(parse_graph("3\n0 1 2\n1 0 3"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_graph("3\n0 1 2\n1 0 2").is_ok());
        assert!(matches!(parse_graph("x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2\n0 1 1/0"), Err(Error::Parse { .. })));
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse_graph("# a path\n3\n# middle\n0 1\n\n1 2\n").unwrap();
        assert_eq!(g, path(3).unwrap());
    }

    #[test]
    fn graph6_known_strings() {
        // P3 with edges 0-1, 1-2: bits (0,1)=1 (0,2)=0 (1,2)=1 -> 101000 = 40
        assert_eq!(to_graph6(&path(3).unwrap()).unwrap(), "Bg");
        assert_eq!(parse_graph6("Bg").unwrap(), path(3).unwrap());
        assert_eq!(parse_graph6(">>graph6<<Bg").unwrap(), path(3).unwrap());
        // K_{1,3}: edges 0-1, 0-2, 0-3 -> bits 1 1 0 1 0 0
        assert_eq!(parse_graph6("Cs").unwrap(), star(4).unwrap());
        assert!(parse_graph6("Bgg").is_err());
    }

    #[test]
    fn auto_detects_format() {
        assert_eq!(parse_graph_auto("Bg\n").unwrap(), path(3).unwrap());
        assert_eq!(parse_graph_auto("3\n0 1\n1 2").unwrap(), path(3).unwrap());
    }
}
