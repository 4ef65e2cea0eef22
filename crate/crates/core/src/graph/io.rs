//! Edge-list and graph6 text formats.

use super::Graph;
use crate::error::{MmError, Result};

/// Parses lines of `u v` pairs, optionally preceded by `n <count>`.
///
/// Blank lines and lines starting with `#` are skipped. Without a header the
/// vertex count is one more than the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared = None;
    let mut edges = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| MmError::Parse {
                line: line_no,
                message: format!("expected a nonnegative integer, found {s:?}"),
            })
        };
        if fields.len() == 2 && fields[0] == "n" {
            if seen_content {
                return Err(MmError::Parse {
                    line: line_no,
                    message: "the `n` header must come first".into(),
                });
            }
            declared = Some(parse(fields[1])?);
            seen_content = true;
            continue;
        }
        seen_content = true;
        if fields.len() != 2 {
            return Err(MmError::Parse {
                line: line_no,
                message: format!("expected `u v`, found {line:?}"),
            });
        }
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(MmError::validation(format!("loop at vertex {u} on line {line_no}")));
        }
        edges.push((u, v));
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < inferred => {
            return Err(MmError::validation(format!(
                "edge endpoint {} exceeds declared vertex count {n}",
                inferred - 1
            )))
        }
        Some(n) => n,
        None => inferred,
    };
    Graph::new(n, edges)
}

impl Graph {
    /// Edge-list text accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.order());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn g6_err(message: impl Into<String>) -> MmError {
    MmError::Parse { line: 1, message: message.into() }
}

/// Parses a single graph6 string (an optional `>>graph6<<` header is allowed).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(g6_err("empty graph6 string"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(g6_err(format!("byte {b} outside the graph6 range")));
    }
    let (n, body) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, &bytes[4..])
    } else {
        return Err(g6_err("graphs with more than 258047 vertices are not supported"));
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(g6_err(format!(
            "expected {needed} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_examples() {
        assert_eq!(parse_edge_list("n 2\n0 1").unwrap(), Graph::complete(2));
        assert_eq!(parse_edge_list("0 1\n1 2\n0 2").unwrap(), Graph::complete(3));
        assert!(matches!(parse_edge_list("0 0"), Err(MmError::Validation(_))));
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        match parse_edge_list("0 1\n\n1 x") {
            Err(MmError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_edge_list("n 2\n0 5").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn edge_list_dedups_and_round_trips() {
        let g = parse_edge_list("n 4\n0 1\n1 0\n2 3").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert_eq!(parse_edge_list("n 3").unwrap(), Graph::empty(3));
    }

    #[test]
    fn graph6_known_strings() {
        // Standard encodings: K4 is "C~", "Bg" is the path 0-1-2.
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph6("Bg").unwrap(), Graph::path(3));
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(parse_graph6(">>graph6<<A_").unwrap(), Graph::complete(2));
        assert!(parse_graph6("C~~").is_err());
    }

    #[test]
    fn graph6_round_trip() {
        for g in [Graph::path(7), Graph::cycle(9), Graph::complete_bipartite(3, 5)] {
            assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
        }
        let big = Graph::path(70);
        assert_eq!(parse_graph6(&to_graph6(&big)).unwrap(), big);
    }
}
