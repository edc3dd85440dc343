//! DIMACS-like graph file format.
//!
//! Header `p edge <n> <m>`, one `e <u> <v>` line per edge, optional
//! `s <u> <1|2>` side-label lines, `c` comment lines ignored. Files are
//! 1-indexed as is conventional; internal ids are 0-indexed, converted
//! only here at the I/O boundary.

use crate::error::Error;
use crate::graph::{parse_error, Graph, GraphBuilder, Side};

pub fn parse_graph(text: &str) -> Result<Graph, Error> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(u32, u32, usize)> = Vec::new();
    let mut side_lines: Vec<(u32, Side, usize)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_error(lineno, "duplicate problem line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(parse_error(lineno, "expected `p edge <n> <m>`"));
                }
                let n = fields[2]
                    .parse::<usize>()
                    .map_err(|_| parse_error(lineno, "bad vertex count"))?;
                let m = fields[3]
                    .parse::<usize>()
                    .map_err(|_| parse_error(lineno, "bad edge count"))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) =
                    header.ok_or_else(|| parse_error(lineno, "edge before problem line"))?;
                if fields.len() != 3 {
                    return Err(parse_error(lineno, "expected `e <u> <v>`"));
                }
                let u = parse_vertex(fields[1], n, lineno)?;
                let v = parse_vertex(fields[2], n, lineno)?;
                if u == v {
                    return Err(parse_error(lineno, format!("self-loop at vertex {}", u + 1)));
                }
                edges.push((u.min(v), u.max(v), lineno));
            }
            "s" => {
                let (n, _) =
                    header.ok_or_else(|| parse_error(lineno, "side label before problem line"))?;
                if fields.len() != 3 {
                    return Err(parse_error(lineno, "expected `s <u> <1|2>`"));
                }
                let u = parse_vertex(fields[1], n, lineno)?;
                let side = match fields[2] {
                    "1" => Side::S1,
                    "2" => Side::S2,
                    other => {
                        return Err(parse_error(lineno, format!("bad side `{other}`, expected 1 or 2")))
                    }
                };
                side_lines.push((u, side, lineno));
            }
            other => {
                return Err(parse_error(lineno, format!("unknown line type `{other}`")));
            }
        }
    }

    let (n, m) = header.ok_or_else(|| parse_error(last_line.max(1), "missing problem line"))?;
    if edges.len() != m {
        return Err(parse_error(
            last_line.max(1),
            format!("header declares {m} edges but file contains {}", edges.len()),
        ));
    }

    let mut builder = GraphBuilder::new(n);
    let mut edge_line = std::collections::BTreeMap::new();
    for &(u, v, lineno) in &edges {
        if edge_line.insert((u, v), lineno).is_some() {
            return Err(parse_error(
                lineno,
                format!("duplicate edge ({},{})", u + 1, v + 1),
            ));
        }
        builder.add_edge(u, v);
    }

    if !side_lines.is_empty() {
        let mut sides: Vec<Option<Side>> = vec![None; n];
        for &(u, side, lineno) in &side_lines {
            if sides[u as usize].replace(side).is_some() {
                return Err(parse_error(
                    lineno,
                    format!("duplicate side label for vertex {}", u + 1),
                ));
            }
        }
        if sides.iter().any(|s| s.is_none()) {
            let missing = sides.iter().position(|s| s.is_none()).unwrap();
            return Err(parse_error(
                last_line,
                format!("vertex {} has no side label", missing + 1),
            ));
        }
        let sides: Vec<Side> = sides.into_iter().map(|s| s.unwrap()).collect();
        // reject monochromatic edges before building, naming the edge line
        for (&(u, v), &lineno) in &edge_line {
            if sides[u as usize] == sides[v as usize] {
                return Err(parse_error(
                    lineno,
                    format!("edge ({},{}) joins two vertices on side {:?}", u + 1, v + 1, sides[u as usize]),
                ));
            }
        }
        builder.set_sides(sides);
    }

    Ok(builder.build())
}

fn parse_vertex(field: &str, n: usize, lineno: usize) -> Result<u32, Error> {
    let id = field
        .parse::<usize>()
        .map_err(|_| parse_error(lineno, format!("bad vertex id `{field}`")))?;
    if id == 0 || id > n {
        return Err(parse_error(
            lineno,
            format!("vertex id {id} out of range 1..={n}"),
        ));
    }
    Ok((id - 1) as u32)
}

/// Canonical form: header, edges in sorted order, then side labels in
/// vertex order. `emit_graph(parse_graph(x)) == emit_graph(parse_graph(emit_graph(parse_graph(x))))`.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    if let Some(sides) = g.sides() {
        for (v, side) in sides.iter().enumerate() {
            let tag = match side {
                Side::S1 => 1,
                Side::S2 => 2,
            };
            out.push_str(&format!("s {} {}\n", v + 1, tag));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_complete_bipartite;

    #[test]
    fn parse_single_edge() {
        let g = parse_graph("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = "c a comment\np edge 4 3\ne 3 1\ne 1 2\n\ne 4 3\n";
        let g = parse_graph(text).unwrap();
        let emitted = emit_graph(&g);
        assert_eq!(emitted, "p edge 4 3\ne 1 2\ne 1 3\ne 3 4\n");
        assert_eq!(parse_graph(&emitted).unwrap(), g);
    }

    #[test]
    fn sided_round_trip() {
        let g = gen_complete_bipartite(2, 3);
        let text = emit_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert!(text.contains("s 1 1\n") && text.contains("s 5 2\n"));
    }

    #[test]
    fn vertex_out_of_range() {
        let err = parse_graph("p edge 2 1\ne 3 1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("out of range"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn duplicate_edge_named() {
        let err = parse_graph("p edge 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_header() {
        assert!(parse_graph("p edge two 1\n").is_err());
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("p edge 2 5\ne 1 2\n").is_err());
    }

    #[test]
    fn bad_side_labels() {
        // incomplete labeling
        assert!(parse_graph("p edge 2 1\ne 1 2\ns 1 1\n").is_err());
        // monochromatic edge
        assert!(parse_graph("p edge 2 1\ne 1 2\ns 1 1\ns 2 1\n").is_err());
        // bad side value
        assert!(parse_graph("p edge 2 0\ns 1 3\ns 2 1\n").is_err());
    }
}
