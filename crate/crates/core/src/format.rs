//! Line-oriented text formats for instances, flows and toll vectors.
//!
//! ```text
//! network <n> <m> <s> <t>
//! edge <id> <tail> <head> <a> <b>
//! flow <id> <value>
//! demand <value>
//! ```
//!
//! Toll files hold `toll <id> <value>` lines, optionally followed by
//! `support <k>` and `induced-length <value>`. Blank lines and `#` comments
//! are ignored everywhere.

use crate::flows::{Flow, LinearLatency, TollVector};
use crate::graph::{GraphError, Network};
use crate::rational::{parse_nonnegative, Exact, Rational};
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Semantic(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// An instance as read from text; `flow` is present when any `flow` line
/// was given, with unlisted edges carrying zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInstance {
    pub network: Network,
    pub latencies: Vec<LinearLatency>,
    pub demand: Option<Rational>,
    pub flow: Option<Flow>,
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn number(line: usize, field: &str) -> Result<Rational, FormatError> {
    parse_nonnegative(field).map_err(|e| syntax(line, e.0))
}

fn count(line: usize, field: &str, what: &str) -> Result<usize, FormatError> {
    field.parse().map_err(|_| syntax(line, format!("bad {what} '{field}'")))
}

pub fn parse_instance(text: &str) -> Result<ParsedInstance, FormatError> {
    let mut header: Option<(usize, usize, String, String)> = None;
    let mut edges: Vec<Option<(String, String, Rational, Rational)>> = Vec::new();
    let mut flows: HashMap<usize, Rational> = HashMap::new();
    let mut demand: Option<Rational> = None;

    for (line, f) in records(text) {
        match f[0] {
            "network" => {
                if f.len() != 5 {
                    return Err(syntax(line, "expected 'network <n> <m> <s> <t>'"));
                }
                if header.is_some() {
                    return Err(syntax(line, "duplicate network header"));
                }
                let m = count(line, f[2], "edge count")?;
                header = Some((count(line, f[1], "node count")?, m, f[3].to_string(), f[4].to_string()));
                edges = vec![None; m];
            }
            "edge" => {
                let Some((_, m, _, _)) = &header else { return Err(syntax(line, "edge before network header")) };
                if f.len() != 6 {
                    return Err(syntax(line, "expected 'edge <id> <tail> <head> <a> <b>'"));
                }
                let id = count(line, f[1], "edge id")?;
                if id >= *m {
                    return Err(syntax(line, format!("edge id {id} out of range 0..{m}")));
                }
                if edges[id].is_some() {
                    return Err(syntax(line, format!("duplicate edge id {id}")));
                }
                edges[id] = Some((f[2].to_string(), f[3].to_string(), number(line, f[4])?, number(line, f[5])?));
            }
            "flow" => {
                if f.len() != 3 {
                    return Err(syntax(line, "expected 'flow <edge-id> <value>'"));
                }
                let id = count(line, f[1], "edge id")?;
                if flows.insert(id, number(line, f[2])?).is_some() {
                    return Err(syntax(line, format!("duplicate flow for edge {id}")));
                }
            }
            "demand" => {
                if f.len() != 2 {
                    return Err(syntax(line, "expected 'demand <value>'"));
                }
                if demand.replace(number(line, f[1])?).is_some() {
                    return Err(syntax(line, "duplicate demand"));
                }
            }
            other => return Err(syntax(line, format!("unknown record '{other}'"))),
        }
    }

    let (n, m, s, t) = header.ok_or_else(|| FormatError::Semantic("missing network header".into()))?;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut intern = |name: &str| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };
    let (si, ti) = (intern(&s), intern(&t));
    let mut arcs = Vec::with_capacity(m);
    let mut latencies = Vec::with_capacity(m);
    for (id, edge) in edges.into_iter().enumerate() {
        let (u, v, a, b) = edge.ok_or_else(|| FormatError::Semantic(format!("edge {id} is missing")))?;
        arcs.push((intern(&u), intern(&v)));
        latencies.push(LinearLatency::new(a, b));
    }
    if names.len() != n {
        return Err(FormatError::Semantic(format!("header declares {n} nodes but {} are named", names.len())));
    }
    let network = Network::with_names(names, si, ti, &arcs)?;

    if let Some(&bad) = flows.keys().find(|&&e| e >= m) {
        return Err(FormatError::Semantic(format!("flow for unknown edge {bad}")));
    }
    let flow = if flows.is_empty() {
        None
    } else {
        let values: Vec<Rational> = (0..m).map(|e| flows.remove(&e).unwrap_or_else(Rational::zero)).collect();
        let outflow = network.out_edges(si).iter().map(|&e| &values[e]).sum::<Rational>()
            - network.in_edges(si).iter().map(|&e| &values[e]).sum::<Rational>();
        let d = demand.clone().unwrap_or(outflow);
        Some(Flow::new(values, d))
    };
    Ok(ParsedInstance { network, latencies, demand, flow })
}

pub fn write_instance(net: &Network, latencies: &[LinearLatency], demand: Option<&Rational>, flow: Option<&Flow>) -> String {
    let mut out = String::new();
    let names = net.node_names();
    writeln!(out, "network {} {} {} {}", net.node_count(), net.edge_count(), names[net.source()], names[net.sink()]).unwrap();
    for edge in net.edges() {
        let l = &latencies[edge.id];
        writeln!(out, "edge {} {} {} {} {}", edge.id, names[edge.tail], names[edge.head], Exact(&l.a), Exact(&l.b)).unwrap();
    }
    if let Some(d) = demand {
        writeln!(out, "demand {}", Exact(d)).unwrap();
    }
    if let Some(flow) = flow {
        out.push_str(&write_flow(flow));
    }
    out
}

/// `flow` lines for every edge with positive flow.
pub fn write_flow(flow: &Flow) -> String {
    let mut out = String::new();
    for (e, f) in flow.edge_flows().iter().enumerate() {
        if f.is_positive() {
            writeln!(out, "flow {e} {}", Exact(f)).unwrap();
        }
    }
    out
}

pub fn write_tolls(tolls: &TollVector, induced_length: Option<&Rational>) -> String {
    let mut out = String::new();
    for e in tolls.support() {
        writeln!(out, "toll {e} {}", Exact(tolls.get(e))).unwrap();
    }
    writeln!(out, "support {}", tolls.support_size()).unwrap();
    if let Some(l) = induced_length {
        writeln!(out, "induced-length {}", Exact(l)).unwrap();
    }
    out
}

/// Reads a toll file for a network with `m` edges. A `support` line, when
/// present, must match the number of positive tolls.
pub fn parse_tolls(text: &str, m: usize) -> Result<TollVector, FormatError> {
    let mut tolls = vec![Rational::zero(); m];
    let mut seen = vec![false; m];
    let mut support: Option<(usize, usize)> = None;
    for (line, f) in records(text) {
        match (f[0], f.len()) {
            ("toll", 3) => {
                let e = count(line, f[1], "edge id")?;
                if e >= m {
                    return Err(syntax(line, format!("edge id {e} out of range 0..{m}")));
                }
                if std::mem::replace(&mut seen[e], true) {
                    return Err(syntax(line, format!("duplicate toll for edge {e}")));
                }
                tolls[e] = number(line, f[2])?;
            }
            ("support", 2) => support = Some((line, count(line, f[1], "support size")?)),
            ("induced-length", 2) => {
                number(line, f[1])?;
            }
            _ => return Err(syntax(line, format!("unexpected record '{}'", f.join(" ")))),
        }
    }
    let tolls = TollVector::from_values(tolls).expect("parsed values are nonnegative");
    if let Some((line, k)) = support {
        if k != tolls.support_size() {
            return Err(syntax(line, format!("support {k} but {} positive tolls", tolls.support_size())));
        }
    }
    Ok(tolls)
}
