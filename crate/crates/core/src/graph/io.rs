//! Text formats for graphs, deletion instances, and cover files.
//!
//! Graph files start with `p <n> <m>` followed by `m` lines `e <u> <v>`
//! with 0-based endpoints. Instance files append `x <id>...` lines for the
//! cover and a final `k <budget>`. Lines starting with `#` are comments.

use super::{DeletionInstance, Graph};
use crate::error::{parse_err, Result};

struct Parsed {
    graph: Graph,
    cover: Option<Vec<usize>>,
    budget: Option<usize>,
}

fn parse_usize(line_no: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line_no, format!("{what} `{token}` is not a non-negative integer")))
}

fn parse_lines(text: &str, allow_instance: bool) -> Result<Parsed> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    let mut seen_edges = 0usize;
    let mut cover: Option<Vec<usize>> = None;
    let mut budget: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match tag {
            "p" => {
                if graph.is_some() {
                    return Err(parse_err(line_no, "second `p` header"));
                }
                let [n, m] = rest.as_slice() else {
                    return Err(parse_err(line_no, "header must be `p <n> <m>`"));
                };
                let n = parse_usize(line_no, n, "vertex count")?;
                declared_edges = parse_usize(line_no, m, "edge count")?;
                graph = Some(Graph::empty(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(line_no, "edge before `p` header"))?;
                let [u, v] = rest.as_slice() else {
                    return Err(parse_err(line_no, "edge line must be `e <u> <v>`"));
                };
                let u = parse_usize(line_no, u, "endpoint")?;
                let v = parse_usize(line_no, v, "endpoint")?;
                g.add_edge(u, v).map_err(|e| parse_err(line_no, e.to_string()))?;
                seen_edges += 1;
            }
            "x" if allow_instance => {
                if graph.is_none() {
                    return Err(parse_err(line_no, "cover line before `p` header"));
                }
                let ids = cover.get_or_insert_with(Vec::new);
                for tok in rest {
                    ids.push(parse_usize(line_no, tok, "cover vertex")?);
                }
            }
            "k" if allow_instance => {
                if budget.is_some() {
                    return Err(parse_err(line_no, "second `k` line"));
                }
                let [b] = rest.as_slice() else {
                    return Err(parse_err(line_no, "budget line must be `k <budget>`"));
                };
                budget = Some(parse_usize(line_no, b, "budget")?);
            }
            other => {
                return Err(parse_err(line_no, format!("unknown line tag `{other}`")));
            }
        }
    }
    let graph = parse_lines_tail(graph, declared_edges, seen_edges)?;
    Ok(Parsed { graph, cover, budget })
}

fn parse_lines_tail(graph: Option<Graph>, declared: usize, seen: usize) -> Result<Graph> {
    let graph = graph.ok_or_else(|| parse_err(0, "missing `p` header"))?;
    if declared != seen {
        return Err(parse_err(
            0,
            format!("header declares {declared} edges but {seen} edge lines follow"),
        ));
    }
    Ok(graph)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    Ok(parse_lines(text, false)?.graph)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

pub fn parse_instance(text: &str) -> Result<DeletionInstance> {
    let parsed = parse_lines(text, true)?;
    let budget = parsed
        .budget
        .ok_or_else(|| parse_err(0, "instance file is missing the `k <budget>` line"))?;
    DeletionInstance::new(parsed.graph, parsed.cover.unwrap_or_default(), budget)
        .map_err(|e| parse_err(0, e.to_string()))
}

/// Accepts either a bare graph file or a full instance file, returning just
/// the graph.
pub fn parse_graph_lenient(text: &str) -> Result<Graph> {
    Ok(parse_lines(text, true)?.graph)
}

pub fn write_instance(inst: &DeletionInstance) -> String {
    let mut out = write_graph(&inst.graph);
    out.push('x');
    for &v in inst.cover.ids() {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    out.push_str(&format!("k {}\n", inst.budget));
    out
}

pub fn parse_cover(text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| parse_usize(0, tok, "cover vertex"))
        .collect()
}

pub fn write_cover(ids: &[usize]) -> String {
    let mut out = ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    out.push('\n');
    out
}
