//! Text formats for graphs and the named-graph mini-language used by
//! the CLI (K_n, C_n, P_n, T_{n,r}).

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::path::Path;

/// Serialize as "n m" followed by one "u v" line per edge, sorted
/// lexicographically (the output is deterministic).
pub fn graph_to_text(g: &Graph) -> String {
    let edges = g.edges(); // already sorted (u < v, lexicographic)
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parse either the native "n m" header or a DIMACS-like
/// "p edge n m" header; edge lines are "u v" (0-indexed) or
/// "e u v" (1-indexed, DIMACS convention). Lines starting with
/// 'c' or '#' are comments.
pub fn graph_from_text(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut dimacs = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("c ") || line == "c" {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: {line:?}", lineno + 1));
        if n.is_none() {
            match fields.as_slice() {
                ["p", "edge", ns, _m] | ["p", "col", ns, _m] => {
                    dimacs = true;
                    n = Some(ns.parse().map_err(|_| bad("bad vertex count"))?);
                }
                [ns, _m] => {
                    n = Some(ns.parse().map_err(|_| bad("bad vertex count"))?);
                }
                _ => return Err(bad("expected \"n m\" or \"p edge n m\" header")),
            }
            continue;
        }
        let nn = n.unwrap();
        let (u, v): (usize, usize) = match fields.as_slice() {
            ["e", us, vs] => {
                let u: usize = us.parse().map_err(|_| bad("bad endpoint"))?;
                let v: usize = vs.parse().map_err(|_| bad("bad endpoint"))?;
                if u == 0 || v == 0 {
                    return Err(bad("DIMACS edges are 1-indexed"));
                }
                (u - 1, v - 1)
            }
            [us, vs] => {
                let off = usize::from(dimacs);
                let u: usize = us.parse().map_err(|_| bad("bad endpoint"))?;
                let v: usize = vs.parse().map_err(|_| bad("bad endpoint"))?;
                if dimacs && (u == 0 || v == 0) {
                    return Err(bad("DIMACS edges are 1-indexed"));
                }
                (u - off, v - off)
            }
            _ => return Err(bad("expected \"u v\"")),
        };
        if u >= nn || v >= nn || u == v {
            return Err(bad("endpoint out of range"));
        }
        edges.push((u.min(v), u.max(v)));
    }
    let n = n.ok_or_else(|| Error::Parse("empty graph file".into()))?;
    Ok(Graph::from_edges(n, &edges))
}

/// A built-in named graph: "K5", "C7", "P4", or "T9,3" (Turán).
pub fn named_graph(name: &str) -> Option<Graph> {
    let rest = name.get(1..)?;
    match name.chars().next()? {
        'K' => rest.parse().ok().map(Graph::complete),
        'C' => rest.parse().ok().filter(|&n| n >= 3).map(Graph::cycle),
        'P' => rest.parse().ok().map(Graph::path),
        'T' => {
            let (ns, rs) = rest.split_once(',')?;
            let n: usize = ns.parse().ok()?;
            let r: usize = rs.parse().ok()?;
            (r >= 1 && r <= n).then(|| crate::constructions::build_turan(n, r))
        }
        _ => None,
    }
}

/// Resolve a CLI graph argument: a built-in name first, else a path.
pub fn load_graph(arg: &str) -> Result<Graph> {
    if let Some(g) = named_graph(arg) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(Path::new(arg))?;
    graph_from_text(&text)
}

pub fn save_graph(g: &Graph, path: &Path) -> Result<()> {
    std::fs::write(path, graph_to_text(g))?;
    Ok(())
}
