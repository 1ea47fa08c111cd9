//! Command implementations behind the `mintb` binary. Every command takes
//! its input as text and returns the text it would print, so the binary is a
//! thin shell around these functions.

use anyhow::{anyhow, Context};
use sha2::{Digest, Sha256};
use std::fmt::{self, Write};
use std::time::Instant;
use tollbooth::flows::{
    build_l_instance, compute_equilibrium, compute_social_optimum, social_cost, verify_opt_inducing, Flow, FlowError,
};
use tollbooth::format::{parse_instance, parse_tolls, write_instance, write_tolls, FormatError, ParsedInstance};
use tollbooth::gadgets::{gen_partition_gadget, gen_random_sp, gen_vc_gadget, Instance, PartitionInput, VcInput};
use tollbooth::mintb::{solve_mintb, LengthValue, MintbError, SolveOptions};
use tollbooth::oracle::{brute_force_mintb, min_support_to_induce, OracleError};
use tollbooth::rational::{parse_nonnegative, Exact, Rational};
use tollbooth::sp::NodeKind;

pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_SP: i32 = 3;
pub const EXIT_INVALID_FLOW: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    fn new(code: i32, error: impl Into<anyhow::Error>) -> Self {
        Failure { code, error: error.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::new(EXIT_PARSE, e)
    }
}

impl From<MintbError> for Failure {
    fn from(e: MintbError) -> Self {
        let code = match &e {
            MintbError::NotSeriesParallel(_) => EXIT_NOT_SP,
            MintbError::Flow(FlowError::NotSeriesParallel(_)) => EXIT_NOT_SP,
            MintbError::Inconsistent(_) => EXIT_VERIFICATION,
            _ => EXIT_INVALID_FLOW,
        };
        Failure::new(code, e)
    }
}

impl From<FlowError> for Failure {
    fn from(e: FlowError) -> Self {
        let code = match &e {
            FlowError::NotSeriesParallel(_) => EXIT_NOT_SP,
            _ => EXIT_INVALID_FLOW,
        };
        Failure::new(code, e)
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match &e {
            OracleError::NoFeasibleSupport(_) => EXIT_NEGATIVE,
            OracleError::CapExceeded { .. } | OracleError::PathExplosion(_) => EXIT_PARSE,
        };
        Failure::new(code, e)
    }
}

pub type CmdResult = Result<CmdOutput, Failure>;

#[derive(Debug, Clone)]
pub struct CmdOutput {
    pub stdout: String,
    pub report: RunReport,
    pub code: i32,
}

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub command: String,
    pub digest: String,
    pub support: Option<usize>,
    pub induced_length: Option<String>,
    pub wall_ms: u128,
    pub verdicts: Vec<(String, bool)>,
}

impl RunReport {
    fn start(command: &str, input: &str) -> (Self, Instant) {
        let digest = hex::encode(&Sha256::digest(input.as_bytes())[..8]);
        (RunReport { command: command.to_string(), digest, ..Default::default() }, Instant::now())
    }

    fn finish(mut self, started: Instant) -> Self {
        self.wall_ms = started.elapsed().as_millis();
        self
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digest={}", self.command, self.digest)?;
        if let Some(k) = self.support {
            write!(f, " support={k}")?;
        }
        if let Some(l) = &self.induced_length {
            write!(f, " induced-length={l}")?;
        }
        for (name, ok) in &self.verdicts {
            write!(f, " {name}={ok}")?;
        }
        write!(f, " wall-ms={}", self.wall_ms)
    }
}

fn demand_of(p: &ParsedInstance) -> Result<Rational, Failure> {
    p.demand
        .clone()
        .or_else(|| p.flow.as_ref().map(|f| f.demand().clone()))
        .ok_or_else(|| Failure::new(EXIT_PARSE, anyhow!("instance has neither a demand nor a flow")))
}

/// The flow to work with: the file's annotation, or the exact optimum when
/// asked for or when the file has none and `compute` is set.
fn flow_of(p: &ParsedInstance, compute: bool) -> Result<Flow, Failure> {
    let demand = demand_of(p)?;
    match (&p.flow, compute) {
        (_, true) => Ok(compute_social_optimum(&p.network, &p.latencies, &demand)?),
        (Some(f), false) => {
            if f.demand() != &demand {
                return Err(Failure::new(EXIT_INVALID_FLOW, anyhow!("flow routes {} but demand is {}", Exact(f.demand()), Exact(&demand))));
            }
            Ok(f.clone())
        }
        (None, false) => Err(Failure::new(
            EXIT_INVALID_FLOW,
            anyhow!("instance has no flow annotation; pass --compute-optimum"),
        )),
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveFlags {
    pub compute_optimum: bool,
    pub induce: Option<Rational>,
    pub trace: bool,
}

pub fn cmd_solve(input: &str, flags: &SolveFlags) -> CmdResult {
    let (mut report, started) = RunReport::start("solve", input);
    let parsed = parse_instance(input)?;
    let flow = flow_of(&parsed, flags.compute_optimum)?;
    let demand = flow.demand().clone();
    let options = SolveOptions { induce: flags.induce.clone(), skip_optimality_check: false };
    let sol = solve_mintb(&parsed.network, &parsed.latencies, &demand, &flow, &options)?;
    let verified = verify_opt_inducing(&parsed.network, &parsed.latencies, &demand, &flow, &sol.tolls)?;
    report.verdicts.push(("opt-inducing".into(), verified));
    if !verified {
        return Err(Failure::new(EXIT_VERIFICATION, anyhow!("computed tolls fail re-verification")));
    }
    let mut out = String::new();
    if flags.trace {
        for (index, (node, list)) in sol.tree.nodes().iter().zip(&sol.lists).enumerate() {
            let kind = match node.kind {
                NodeKind::Leaf(_) => "leaf",
                NodeKind::Series(..) => "series",
                NodeKind::Parallel(..) => "parallel",
            };
            let used = if list.is_used() { "used" } else { "unused" };
            writeln!(out, "# list {index} {kind} {used} {}", list.render()).unwrap();
        }
    }
    out.push_str(&write_tolls(&sol.tolls, Some(&sol.induced_length)));
    report.support = Some(sol.support);
    report.induced_length = Some(Exact(&sol.induced_length).to_string());
    Ok(CmdOutput { stdout: out, report: report.finish(started), code: 0 })
}

pub fn cmd_verify(input: &str, tolls_text: &str, compute_optimum: bool) -> CmdResult {
    let (mut report, started) = RunReport::start("verify", &format!("{input}\0{tolls_text}"));
    let parsed = parse_instance(input)?;
    let tolls = parse_tolls(tolls_text, parsed.network.edge_count())?;
    let flow = flow_of(&parsed, compute_optimum)?;
    let ok = verify_opt_inducing(&parsed.network, &parsed.latencies, flow.demand(), &flow, &tolls)?;
    report.support = Some(tolls.support_size());
    report.verdicts.push(("opt-inducing".into(), ok));
    let code = if ok { 0 } else { EXIT_NEGATIVE };
    Ok(CmdOutput { stdout: format!("opt-inducing {ok}\nsupport {}\n", tolls.support_size()), report: report.finish(started), code })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleTarget {
    Free,
    Length(LengthValue),
}

pub fn parse_target(text: &str) -> anyhow::Result<OracleTarget> {
    Ok(match text {
        "free" => OracleTarget::Free,
        "inf" => OracleTarget::Length(LengthValue::Infinite),
        other => OracleTarget::Length(LengthValue::Finite(parse_nonnegative(other).map_err(|e| anyhow!(e.0))?)),
    })
}

pub fn cmd_oracle(input: &str, max_support: Option<usize>, target: &OracleTarget, compute_optimum: bool) -> CmdResult {
    let (mut report, started) = RunReport::start("oracle", input);
    let parsed = parse_instance(input)?;
    let flow = flow_of(&parsed, compute_optimum)?;
    let inst = build_l_instance(&parsed.network, &parsed.latencies, &flow)?;
    let cap = max_support.unwrap_or(parsed.network.edge_count());
    let mut out = String::new();
    match target {
        OracleTarget::Free => {
            let (k, tolls) = brute_force_mintb(&inst, cap)?;
            let ok = verify_opt_inducing(&parsed.network, &parsed.latencies, flow.demand(), &flow, &tolls)?;
            report.verdicts.push(("opt-inducing".into(), ok));
            if !ok {
                return Err(Failure::new(EXIT_VERIFICATION, anyhow!("oracle witness fails re-verification")));
            }
            let length = inst.induced_length(&tolls).expect("verified tolls induce a length");
            out.push_str(&write_tolls(&tolls, Some(&length)));
            report.support = Some(k);
            report.induced_length = Some(Exact(&length).to_string());
        }
        OracleTarget::Length(target) => match min_support_to_induce(&inst, target, cap)? {
            None => {
                writeln!(out, "infeasible {target}").unwrap();
                report.induced_length = Some(target.to_string());
                return Ok(CmdOutput { stdout: out, report: report.finish(started), code: EXIT_NEGATIVE });
            }
            Some((k, Some(tolls))) => {
                let ok = inst.induced_length(&tolls).is_some();
                report.verdicts.push(("opt-inducing".into(), ok));
                if !ok {
                    return Err(Failure::new(EXIT_VERIFICATION, anyhow!("oracle witness fails re-verification")));
                }
                out.push_str(&write_tolls(&tolls, target.finite()));
                report.support = Some(k);
                report.induced_length = Some(target.to_string());
            }
            Some((k, None)) => {
                writeln!(out, "min-support {k}\ninduced-length inf").unwrap();
                report.support = Some(k);
                report.induced_length = Some("inf".into());
            }
        },
    }
    Ok(CmdOutput { stdout: out, report: report.finish(started), code: 0 })
}

fn emit_instance(inst: &Instance) -> String {
    let mut out = String::new();
    for (e, label) in inst.edge_labels.iter().enumerate() {
        writeln!(out, "# edge {e} = {label}").unwrap();
    }
    out.push_str(&write_instance(&inst.network, &inst.latencies, Some(&inst.demand), inst.flow.as_ref()));
    out
}

/// Edge-list text: `u v` per line over vertices `1..=n`, with an optional
/// `vertices <n>` line (default: the largest id mentioned).
pub fn parse_vc_graph(text: &str) -> anyhow::Result<VcInput> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let f: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        match f.as_slice() {
            [] => {}
            ["vertices", k] => n = Some(k.parse().with_context(|| format!("line {}: bad vertex count", i + 1))?),
            [u, v] => edges.push((
                u.parse().with_context(|| format!("line {}: bad vertex '{u}'", i + 1))?,
                v.parse().with_context(|| format!("line {}: bad vertex '{v}'", i + 1))?,
            )),
            _ => return Err(anyhow!("line {}: expected 'u v' or 'vertices <n>'", i + 1)),
        }
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v): &(usize, usize)| u.max(v)).max().unwrap_or(0));
    Ok(VcInput::new(n, edges)?)
}

pub fn cmd_gen_vc(graph_text: &str) -> CmdResult {
    let (report, started) = RunReport::start("gen-vc", graph_text);
    let vc = parse_vc_graph(graph_text).map_err(|e| Failure::new(EXIT_PARSE, e))?;
    Ok(CmdOutput { stdout: emit_instance(&gen_vc_gadget(&vc)), report: report.finish(started), code: 0 })
}

pub fn cmd_gen_partition(set: &str) -> CmdResult {
    let (report, started) = RunReport::start("gen-partition", set);
    let alphas = set
        .split(',')
        .map(|s| parse_nonnegative(s.trim()).map_err(|e| anyhow!(e.0)))
        .collect::<anyhow::Result<Vec<_>>>()
        .map_err(|e| Failure::new(EXIT_PARSE, e))?;
    let p = PartitionInput::new(alphas).map_err(|e| Failure::new(EXIT_PARSE, e))?;
    Ok(CmdOutput { stdout: emit_instance(&gen_partition_gadget(&p)), report: report.finish(started), code: 0 })
}

pub fn cmd_gen_random(seed: u64, edges: usize, coeff_bound: u32) -> CmdResult {
    let (report, started) = RunReport::start("gen-random", &format!("{seed} {edges} {coeff_bound}"));
    if edges == 0 {
        return Err(Failure::new(EXIT_PARSE, anyhow!("need at least one edge")));
    }
    let mut inst = gen_random_sp(seed, edges, coeff_bound);
    inst.flow = Some(compute_social_optimum(&inst.network, &inst.latencies, &inst.demand)?);
    let stdout = write_instance(&inst.network, &inst.latencies, Some(&inst.demand), inst.flow.as_ref());
    Ok(CmdOutput { stdout, report: report.finish(started), code: 0 })
}

pub fn cmd_optflow(input: &str, equilibrium: bool) -> CmdResult {
    let (report, started) = RunReport::start("optflow", input);
    let parsed = parse_instance(input)?;
    let demand = demand_of(&parsed)?;
    let flow = if equilibrium {
        compute_equilibrium(&parsed.network, &parsed.latencies, &demand)?
    } else {
        compute_social_optimum(&parsed.network, &parsed.latencies, &demand)?
    };
    let cost = social_cost(&parsed.network, &parsed.latencies, &flow)?;
    let mut out = format!("demand {}\n", Exact(&demand));
    for (e, f) in flow.edge_flows().iter().enumerate() {
        writeln!(out, "flow {e} {}", Exact(f)).unwrap();
    }
    writeln!(out, "# social cost {}", Exact(&cost)).unwrap();
    Ok(CmdOutput { stdout: out, report: report.finish(started), code: 0 })
}
