use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use kcanon::graph::parse_graph;
use kcanon::oracle::{
    brute_force_automorphisms, brute_force_isomorphic, enumerate_connected_graphs, exact_solve_pair, OracleIsomorphism,
    MAX_BRUTE_FORCE_NODES,
};
use kcanon::signatures::{canonical_labeling_with, iso_screen_with, DistinctReason, SignatureSet};
use kcanon::solver::{kcl_residual, pair_currents, PseudoinverseSystem, UniversalSinkSystem};
use kcanon::{Fingerprint, Graph, IsoVerdict, NodeId, OrbitPartition, PairSolver, SolveMethod, Tolerance};
use serde::Serialize;

use crate::args::{Format, Method, OracleQuery, RunConfig};
use crate::error::CliError;
use crate::output::{join, to_json, Json, F17};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISTINCT: i32 = 1;
pub const EXIT_VERIFY_MISMATCH: i32 = 4;
pub const EXIT_UNDECIDED: i32 = 5;

pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            exit_code: EXIT_OK,
        }
    }
}

pub struct Context {
    pub config: RunConfig,
    pub tol: Tolerance,
    started: Instant,
}

impl Context {
    pub fn new(config: RunConfig) -> Result<Self, CliError> {
        let tol = Tolerance::new(config.tol).map_err(|e| CliError::input("InvalidTolerance", e))?;
        if !(config.sink_weight > 0.0 && config.sink_weight.is_finite()) {
            return Err(CliError::input(
                "InvalidSinkWeight",
                format!("sink weight must be positive and finite, got {}", config.sink_weight),
            ));
        }
        Ok(Context {
            config,
            tol,
            started: Instant::now(),
        })
    }

    fn method(&self) -> SolveMethod {
        self.config.method.into()
    }

    fn text(&self) -> bool {
        self.config.format == Format::Text
    }

    fn log(&self, what: &str) {
        match self.config.verbose {
            0 => {}
            1 => eprintln!("{what}"),
            _ => eprintln!("{what} ({:.3} s)", self.started.elapsed().as_secs_f64()),
        }
    }

    fn solver<'g>(&self, g: &'g Graph) -> Result<Box<dyn PairSolver + 'g>, CliError> {
        Ok(match self.config.method {
            Method::Grounded => Box::new(kcanon::LaplacianSystem::new(g)?),
            Method::Pseudoinverse => Box::new(PseudoinverseSystem::new(g)?),
            Method::UniversalSink => Box::new(UniversalSinkSystem::new(g, self.config.sink_weight)?),
        })
    }

    fn signatures(&self, g: &Graph) -> Result<SignatureSet, CliError> {
        let set = match self.config.method {
            Method::Grounded => SignatureSet::compute(g, self.tol)?,
            Method::Pseudoinverse => SignatureSet::compute_with(g, &PseudoinverseSystem::new(g)?, self.tol)?,
            Method::UniversalSink => {
                let s = UniversalSinkSystem::new(g, self.config.sink_weight)?;
                SignatureSet::compute_with(g, &s, self.tol)?
            }
        };
        self.log(&format!(
            "signatures: n={} m={} pair_solves={}",
            set.n, set.m, set.stats.pair_solves
        ));
        Ok(set)
    }

    fn sink_weight(&self) -> Option<F17> {
        (self.config.method == Method::UniversalSink).then_some(F17(self.config.sink_weight))
    }

    fn solver_info(&self) -> SolverInfo {
        let method = self.method();
        SolverInfo {
            method,
            approximate: method.is_approximate(),
            sink_weight: self.sink_weight(),
        }
    }
}

pub fn load(path: &Path) -> Result<Graph, CliError> {
    let shown = path.display();
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| CliError::input("Io", e).in_file(&shown))?;
    parse_graph(&text).map_err(|e| CliError::from(e).in_file(&shown))
}

#[derive(Serialize)]
struct SolverInfo {
    method: SolveMethod,
    approximate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sink_weight: Option<F17>,
}

const APPROXIMATE_NOTE: &str = "approximate: universal-sink voltages are not the network's voltages";

// voltages

#[derive(Serialize)]
struct CurrentRow {
    u: NodeId,
    v: NodeId,
    current: F17,
}

#[derive(Serialize)]
struct VoltagesReport {
    command: &'static str,
    n: usize,
    m: usize,
    source: NodeId,
    sink: NodeId,
    #[serde(flatten)]
    solver: SolverInfo,
    voltages: Vec<F17>,
    currents: Vec<CurrentRow>,
    effective_resistance: F17,
    kcl_residual: F17,
}

pub fn voltages(cx: &Context, path: &Path, a: NodeId, b: NodeId) -> Result<Outcome, CliError> {
    let g = load(path)?;
    let solver = cx.solver(&g)?;
    let profile = solver.solve_pair(a, b)?;
    let currents = pair_currents(&g, &profile)?;
    let report = VoltagesReport {
        command: "voltages",
        n: g.n(),
        m: g.m(),
        source: a,
        sink: b,
        solver: cx.solver_info(),
        voltages: profile.voltages.iter().map(|&x| F17(x)).collect(),
        currents: currents
            .currents
            .iter()
            .map(|c| CurrentRow {
                u: c.u,
                v: c.v,
                current: F17(c.current),
            })
            .collect(),
        effective_resistance: F17(profile.potential_drop()),
        kcl_residual: F17(kcl_residual(&g, &profile)),
    };
    if !cx.text() {
        return Ok(Outcome::ok(to_json(&report)));
    }
    let mut out = String::new();
    writeln!(out, "method {}", report.solver.method.as_str()).unwrap();
    if report.solver.approximate {
        writeln!(out, "{APPROXIMATE_NOTE}").unwrap();
    }
    writeln!(out, "source {a} sink {b}").unwrap();
    for (k, v) in report.voltages.iter().enumerate() {
        writeln!(out, "voltage {} {v}", k + 1).unwrap();
    }
    for c in &report.currents {
        writeln!(out, "current {} {} {}", c.u, c.v, c.current).unwrap();
    }
    writeln!(out, "effective_resistance {}", report.effective_resistance).unwrap();
    writeln!(out, "kcl_residual {}", report.kcl_residual).unwrap();
    Ok(Outcome::ok(out))
}

// orbits

#[derive(Serialize)]
struct CandidateRow {
    members: Vec<NodeId>,
    digest: String,
}

#[derive(Serialize)]
struct Verification {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_orbits: Option<Vec<Vec<NodeId>>>,
    /// Every oracle orbit lies inside one candidate class.
    #[serde(skip_serializing_if = "Option::is_none")]
    orbits_within_candidates: Option<bool>,
}

#[derive(Serialize)]
struct OrbitsReport {
    command: &'static str,
    n: usize,
    m: usize,
    tol: F17,
    #[serde(flatten)]
    solver: SolverInfo,
    orbit_candidates: Vec<CandidateRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<Verification>,
}

fn verify_orbits(g: &Graph, partition: &OrbitPartition) -> Result<Verification, CliError> {
    if g.n() > MAX_BRUTE_FORCE_NODES {
        return Ok(Verification {
            status: "skipped",
            reason: Some(format!(
                "{} nodes exceeds the oracle limit of {MAX_BRUTE_FORCE_NODES}",
                g.n()
            )),
            group_order: None,
            oracle_orbits: None,
            orbits_within_candidates: None,
        });
    }
    let truth = brute_force_automorphisms(g)?;
    let status = if partition.same_sets(&truth.orbits) {
        "match"
    } else {
        "mismatch"
    };
    Ok(Verification {
        status,
        reason: None,
        group_order: Some(truth.order),
        orbits_within_candidates: Some(partition.contains_all(&truth.orbits)),
        oracle_orbits: Some(truth.orbits),
    })
}

pub fn orbits(cx: &Context, path: &Path, verify: bool) -> Result<Outcome, CliError> {
    let g = load(path)?;
    let set = cx.signatures(&g)?;
    let partition = OrbitPartition::from_signatures(&set);
    let verify = verify.then(|| verify_orbits(&g, &partition)).transpose()?;
    let exit_code = match &verify {
        Some(v) if v.status == "mismatch" => EXIT_VERIFY_MISMATCH,
        _ => EXIT_OK,
    };
    let report = OrbitsReport {
        command: "orbits",
        n: g.n(),
        m: g.m(),
        tol: F17(cx.tol.value()),
        solver: cx.solver_info(),
        orbit_candidates: partition
            .classes
            .iter()
            .map(|c| CandidateRow {
                members: c.members.clone(),
                digest: c.digest(cx.tol),
            })
            .collect(),
        verify,
    };
    let stdout = if cx.text() {
        let mut out = String::new();
        if report.solver.approximate {
            writeln!(out, "{APPROXIMATE_NOTE}").unwrap();
        }
        for c in &report.orbit_candidates {
            writeln!(out, "candidate {} digest {}", join(&c.members), c.digest).unwrap();
        }
        if let Some(v) = &report.verify {
            writeln!(out, "verify {}", v.status).unwrap();
            if let Some(r) = &v.reason {
                writeln!(out, "reason {r}").unwrap();
            }
            if let (Some(order), Some(orbits)) = (v.group_order, &v.oracle_orbits) {
                writeln!(out, "group_order {order}").unwrap();
                for o in orbits {
                    writeln!(out, "oracle_orbit {}", join(o)).unwrap();
                }
            }
        }
        out
    } else {
        to_json(&report)
    };
    Ok(Outcome { stdout, exit_code })
}

// iso

#[derive(Serialize)]
struct IsoReport {
    command: &'static str,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget_exhausted: Option<bool>,
    /// `mapping[k - 1]` is the node of the second graph matched to node `k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    mapping: Option<Vec<NodeId>>,
    fingerprints: [String; 2],
    #[serde(flatten)]
    solver: SolverInfo,
}

pub fn iso(cx: &Context, first: &Path, second: &Path) -> Result<Outcome, CliError> {
    let (g1, g2) = (load(first)?, load(second)?);
    let (s1, s2) = (cx.signatures(&g1)?, cx.signatures(&g2)?);
    let verdict = iso_screen_with(&g1, &s1, &g2, &s2, cx.config.budget)?;
    let mut report = IsoReport {
        command: "iso",
        verdict: verdict.name(),
        reason: None,
        budget_exhausted: None,
        mapping: None,
        fingerprints: [
            Fingerprint::from_signatures(&s1).digest(),
            Fingerprint::from_signatures(&s2).digest(),
        ],
        solver: cx.solver_info(),
    };
    let exit_code = match &verdict {
        IsoVerdict::IsomorphicCertified(p) => {
            report.mapping = Some(p.images());
            EXIT_OK
        }
        IsoVerdict::DistinctCertified(r) => {
            report.reason = Some(match r {
                DistinctReason::NodeCount => "node-count",
                DistinctReason::EdgeCount => "edge-count",
                DistinctReason::Fingerprint => "fingerprint",
            });
            EXIT_DISTINCT
        }
        IsoVerdict::PossiblyIsomorphic { budget_exhausted } => {
            report.budget_exhausted = Some(*budget_exhausted);
            EXIT_UNDECIDED
        }
    };
    let stdout = if cx.text() {
        let mut out = format!("verdict {}\n", report.verdict);
        if let Some(r) = report.reason {
            writeln!(out, "reason {r}").unwrap();
        }
        if let Some(b) = report.budget_exhausted {
            writeln!(out, "budget_exhausted {b}").unwrap();
        }
        if let Some(m) = &report.mapping {
            for (k, img) in m.iter().enumerate() {
                writeln!(out, "map {} {img}", k + 1).unwrap();
            }
        }
        writeln!(out, "fingerprint1 {}", report.fingerprints[0]).unwrap();
        writeln!(out, "fingerprint2 {}", report.fingerprints[1]).unwrap();
        out
    } else {
        to_json(&report)
    };
    Ok(Outcome { stdout, exit_code })
}

// fingerprint

#[derive(Serialize)]
struct FingerprintReport {
    command: &'static str,
    tol: F17,
    #[serde(flatten)]
    solver: SolverInfo,
    fingerprint: Json,
    sha256: String,
}

pub fn fingerprint(cx: &Context, path: &Path) -> Result<Outcome, CliError> {
    let g = load(path)?;
    let fp = Fingerprint::from_signatures(&cx.signatures(&g)?);
    let canonical = fp.canonical_json();
    let sha256 = fp.digest();
    if cx.text() {
        return Ok(Outcome::ok(format!("{canonical}\nsha256 {sha256}\n")));
    }
    let report = FingerprintReport {
        command: "fingerprint",
        tol: F17(cx.tol.value()),
        solver: cx.solver_info(),
        fingerprint: Json(canonical),
        sha256,
    };
    Ok(Outcome::ok(to_json(&report)))
}

// canon

#[derive(Serialize)]
struct CanonReport {
    command: &'static str,
    n: usize,
    m: usize,
    certified: bool,
    expansions: u64,
    /// `order[p - 1]` is the input node placed at canonical position `p`.
    order: Vec<NodeId>,
    /// `relabeling[k - 1]` is the canonical label of input node `k`.
    relabeling: Vec<NodeId>,
    form: Json,
    form_sha256: String,
    #[serde(flatten)]
    solver: SolverInfo,
}

pub fn canon(cx: &Context, path: &Path) -> Result<Outcome, CliError> {
    let g = load(path)?;
    let set = cx.signatures(&g)?;
    let c = canonical_labeling_with(&g, &set, cx.config.budget);
    cx.log(&format!(
        "canon: {} expansions, certified={}",
        c.expansions, c.certified
    ));
    let report = CanonReport {
        command: "canon",
        n: g.n(),
        m: g.m(),
        certified: c.certified,
        expansions: c.expansions,
        order: c.order.clone(),
        relabeling: c.relabeling.images(),
        form_sha256: c.digest(),
        form: Json(c.form),
        solver: cx.solver_info(),
    };
    if !cx.text() {
        return Ok(Outcome::ok(to_json(&report)));
    }
    Ok(Outcome::ok(format!(
        "certified {}\norder {}\nrelabeling {}\nform {}\nform_sha256 {}\n",
        report.certified,
        join(&report.order),
        join(&report.relabeling),
        report.form.0,
        report.form_sha256
    )))
}

// oracle

#[derive(Serialize)]
struct AutomorphismsReport {
    command: &'static str,
    query: &'static str,
    n: usize,
    group_order: u64,
    orbits: Vec<Vec<NodeId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    automorphisms: Option<Vec<Vec<NodeId>>>,
}

#[derive(Serialize)]
struct OracleIsoReport {
    command: &'static str,
    query: &'static str,
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mapping: Option<Vec<NodeId>>,
}

#[derive(Serialize)]
struct ExactValue {
    exact: String,
    value: F17,
}

#[derive(Serialize)]
struct ExactSolveReport {
    command: &'static str,
    query: &'static str,
    source: NodeId,
    sink: NodeId,
    voltages: Vec<ExactValue>,
    effective_resistance: ExactValue,
}

#[derive(Serialize)]
struct EnumerateReport {
    command: &'static str,
    query: &'static str,
    n: usize,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    graphs: Option<Vec<Json>>,
}

pub fn oracle(cx: &Context, query: &OracleQuery) -> Result<Outcome, CliError> {
    match query {
        OracleQuery::Automorphisms { graph, list } => {
            let g = load(graph)?;
            let rep = brute_force_automorphisms(&g)?;
            let automorphisms = list.then(|| rep.automorphisms.iter().map(|p| p.images()).collect::<Vec<_>>());
            let report = AutomorphismsReport {
                command: "oracle",
                query: "automorphisms",
                n: g.n(),
                group_order: rep.order,
                orbits: rep.orbits,
                automorphisms,
            };
            if !cx.text() {
                return Ok(Outcome::ok(to_json(&report)));
            }
            let mut out = format!("group_order {}\n", report.group_order);
            for o in &report.orbits {
                writeln!(out, "orbit {}", join(o)).unwrap();
            }
            for p in report.automorphisms.iter().flatten() {
                writeln!(out, "automorphism {}", join(p)).unwrap();
            }
            Ok(Outcome::ok(out))
        }
        OracleQuery::Isomorphic { first, second } => {
            let (g1, g2) = (load(first)?, load(second)?);
            let mapping = match brute_force_isomorphic(&g1, &g2)? {
                OracleIsomorphism::Isomorphic(p) => Some(p.images()),
                OracleIsomorphism::ProvenDistinct => None,
            };
            let exit_code = if mapping.is_some() { EXIT_OK } else { EXIT_DISTINCT };
            let report = OracleIsoReport {
                command: "oracle",
                query: "isomorphic",
                isomorphic: mapping.is_some(),
                mapping,
            };
            let stdout = if cx.text() {
                match &report.mapping {
                    Some(m) => format!("isomorphic\nmapping {}\n", join(m)),
                    None => "proven distinct\n".to_string(),
                }
            } else {
                to_json(&report)
            };
            Ok(Outcome { stdout, exit_code })
        }
        OracleQuery::Solve { graph, a, b } => {
            let g = load(graph)?;
            let v = exact_solve_pair(&g, *a, *b)?;
            let value = |q: &kcanon::oracle::ExactRational| ExactValue {
                exact: q.to_string(),
                value: F17(q.to_f64()),
            };
            let r = &v[*a - 1] - &v[*b - 1];
            let report = ExactSolveReport {
                command: "oracle",
                query: "solve",
                source: *a,
                sink: *b,
                voltages: v.iter().map(value).collect(),
                effective_resistance: value(&r),
            };
            if !cx.text() {
                return Ok(Outcome::ok(to_json(&report)));
            }
            let mut out = String::new();
            for (k, x) in report.voltages.iter().enumerate() {
                writeln!(out, "voltage {} {} {}", k + 1, x.exact, x.value).unwrap();
            }
            let r = &report.effective_resistance;
            writeln!(out, "effective_resistance {} {}", r.exact, r.value).unwrap();
            Ok(Outcome::ok(out))
        }
        OracleQuery::Enumerate { n, list } => {
            let graphs = enumerate_connected_graphs(*n)?;
            let report = EnumerateReport {
                command: "oracle",
                query: "enumerate",
                n: *n,
                count: graphs.len(),
                graphs: list.then(|| graphs.iter().map(|g| Json(g.to_json())).collect()),
            };
            if !cx.text() {
                return Ok(Outcome::ok(to_json(&report)));
            }
            let mut out = format!("count {}\n", report.count);
            for g in report.graphs.iter().flatten() {
                writeln!(out, "{}", g.0).unwrap();
            }
            Ok(Outcome::ok(out))
        }
    }
}
