//! Command-line driver: membership tests, the elimination-derivation
//! pipelines, polytope conversions, and quantum sampling.
//!
//! Every command emits a machine-readable JSON report on stdout (and to
//! `--out` when given) plus a one-line human summary on stderr. Exit code
//! 0 means pass/member/boundary, 1 fail/nonmember, 2 usage or input
//! errors; `--strict-member` demands full membership.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qcorr::chordal::Graph;
use qcorr::corsets::{
    cor2m_member, cor33_feasibility, sample_quantum, Correlation, FeasibilityStatus,
};
use qcorr::fme::{
    build_named_system, eliminate_in_order, mutually_implies, remove_redundant, FmeError,
    SystemName,
};
use qcorr::json;
use qcorr::polytope::{
    canonical_vertices, cut_polytope_vertices, h_to_v, polytopes_equal, v_to_h, CutSpec,
    CutVariant, HPolytope,
};

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Quantum correlation sets: membership, derivations, polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this path as well as stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit the timing field so identical inputs give identical bytes.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Test membership of a correlation JSON file.
    Member {
        #[arg(long, value_enum)]
        scenario: Scenario,
        /// Feasibility tolerance (boundary band half-width).
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Exit nonzero on boundary outcomes too.
        #[arg(long)]
        strict_member: bool,
        input: PathBuf,
    },
    /// Rebuild a derived inequality system and verify its equivalence.
    Derive {
        #[arg(value_enum)]
        name: DeriveName,
        /// Setting count for the cor2m emission.
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Polytope conversions, generators, and comparisons.
    Polytope {
        #[command(subcommand)]
        op: PolytopeCmd,
    },
    /// Sample a quantum correlation; writes bare correlation JSON.
    Sample {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    Cor2m,
    Cor33,
    CutRelax,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveName {
    Lemma2,
    Lemma4,
    Cor2m,
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Vertex enumeration of a polytope JSON (H or V form).
    Vertices { input: PathBuf },
    /// Facet enumeration of a polytope JSON (H or V form).
    Facets { input: PathBuf },
    /// Exact equality of two polytopes by canonical vertex comparison.
    Compare { a: PathBuf, b: PathBuf },
    /// Cut polytope of a graph: vertices, or facets with --facets.
    Cut {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::ZeroOne)]
        variant: VariantArg,
        #[arg(long)]
        facets: bool,
    },
    /// Cycle-inequality metric polytope of a graph (H form).
    Metric {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    ZeroOne,
    PlusMinusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Member,
    Nonmember,
    Boundary,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    status: Status,
    details: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<f64>,
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn run(cli: &Cli) -> Result<(Status, serde_json::Value, bool), String> {
    match &cli.command {
        Command::Member {
            scenario,
            tol,
            strict_member,
            input,
        } => {
            let corr = json::parse_correlation(&read_file(input)?).map_err(|e| e.to_string())?;
            let (status, details) = run_member(*scenario, &corr, *tol)?;
            Ok((status, details, *strict_member))
        }
        Command::Derive { name, m } => {
            let (status, details) = run_derive(*name, *m)?;
            Ok((status, details, false))
        }
        Command::Polytope { op } => {
            let (status, details) = run_polytope(op)?;
            Ok((status, details, false))
        }
        Command::Sample { n, m, dim, seed } => {
            if *n == 0 || *m == 0 || *dim == 0 {
                return Err("n, m, dim must be positive".into());
            }
            let corr = sample_quantum(*n, *m, *dim, *seed);
            Ok((Status::Pass, json::correlation_to_json(&corr), false))
        }
    }
}

fn run_member(
    scenario: Scenario,
    corr: &Correlation,
    tol: f64,
) -> Result<(Status, serde_json::Value), String> {
    match scenario {
        Scenario::Cor2m => {
            let report = cor2m_member(corr).map_err(|e| e.to_string())?;
            let listing = |checks: &[qcorr::corsets::CyclicCheck]| -> Vec<serde_json::Value> {
                checks
                    .iter()
                    .map(|c| serde_json::json!({ "inequality": c.label, "residual": c.residual }))
                    .collect()
            };
            let status = if report.member {
                Status::Member
            } else {
                Status::Nonmember
            };
            Ok((
                status,
                serde_json::json!({
                    "violated": listing(&report.violated),
                    "saturated": listing(&report.saturated),
                }),
            ))
        }
        Scenario::Cor33 => {
            let outcome = cor33_feasibility(corr, tol).map_err(|e| e.to_string())?;
            let status = match outcome.status {
                FeasibilityStatus::Member => Status::Member,
                FeasibilityStatus::Boundary => Status::Boundary,
                FeasibilityStatus::Nonmember => Status::Nonmember,
            };
            let witness = outcome
                .witness
                .as_ref()
                .map(json::witness_to_json)
                .unwrap_or(serde_json::Value::Null);
            Ok((
                status,
                serde_json::json!({ "margin": outcome.margin, "witness": witness }),
            ))
        }
        Scenario::CutRelax => {
            let graph = Graph::complete_bipartite(corr.n(), corr.m());
            let cuts = cut_polytope_vertices(&CutSpec {
                graph,
                variant: CutVariant::ZeroOne,
            })
            .map_err(|e| e.to_string())?;
            let facets = v_to_h(&cuts).map_err(|e| e.to_string())?;
            let angles = qcorr::corsets::to_angles(corr);
            // pi-unit coordinates in the canonical edge order (row-major)
            let point: Vec<f64> = (0..corr.n())
                .flat_map(|x| {
                    (0..corr.m()).map(move |y| (x, y))
                })
                .map(|(x, y)| angles.radians(x, y) / std::f64::consts::PI)
                .collect();
            let mut violations = Vec::new();
            for (coeffs, rhs) in &facets.ineqs {
                let lhs: f64 = coeffs
                    .iter()
                    .zip(&point)
                    .map(|(c, p)| rat_f64(c) * p)
                    .sum();
                let slack = rat_f64(rhs) - lhs;
                if slack < -tol {
                    violations.push(serde_json::json!({
                        "facet": facet_text(coeffs, rhs),
                        "slack": slack,
                    }));
                }
            }
            let status = if violations.is_empty() {
                Status::Member
            } else {
                Status::Nonmember
            };
            Ok((
                status,
                serde_json::json!({ "facets": facets.ineqs.len(), "violated": violations }),
            ))
        }
    }
}

fn rat_f64(r: &qcorr::fme::Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn facet_text(coeffs: &[qcorr::fme::Rat], rhs: &qcorr::fme::Rat) -> String {
    use num_traits::Zero;
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{c}*x{i}"))
        .collect();
    format!("{} <= {rhs}", terms.join(" + "))
}

fn run_derive(name: DeriveName, m: usize) -> Result<(Status, serde_json::Value), String> {
    match name {
        DeriveName::Lemma2 => {
            let start = build_named_system(SystemName::Cor33Angles);
            let derived = eliminate_in_order(&start, &["alpha", "beta", "gamma"], |s| {
                remove_redundant(&s)
            })
            .map_err(fme_err)?;
            let target = build_named_system(SystemName::Lemma2);
            let equivalent = mutually_implies(&derived, &target).map_err(fme_err)?;
            let status = if equivalent { Status::Pass } else { Status::Fail };
            Ok((
                status,
                serde_json::json!({
                    "start_inequalities": start.len(),
                    "derived_inequalities": derived.len(),
                    "equivalent_to_lemma2": equivalent,
                    "system": json::linsystem_to_json(&derived),
                }),
            ))
        }
        DeriveName::Lemma4 => {
            let p1 = HPolytope::from_linsystem(&build_named_system(SystemName::Lemma2));
            let p2 = HPolytope::from_linsystem(&build_named_system(SystemName::TlmFull));
            let v1 = h_to_v(&p1).map_err(|e| e.to_string())?;
            let v2 = h_to_v(&p2).map_err(|e| e.to_string())?;
            let equal = v1 == v2;
            let status = if equal { Status::Pass } else { Status::Fail };
            Ok((
                status,
                serde_json::json!({
                    "lemma2_vertices": v1.vertices.len(),
                    "tlm_full_vertices": v2.vertices.len(),
                    "equal": equal,
                }),
            ))
        }
        DeriveName::Cor2m => {
            if m == 0 {
                return Err("--m must be positive".into());
            }
            let sys = build_named_system(SystemName::Cor2m(m));
            Ok((
                Status::Pass,
                serde_json::json!({
                    "inequalities": sys.len(),
                    "system": json::linsystem_to_json(&sys),
                }),
            ))
        }
    }
}

fn fme_err(e: FmeError) -> String {
    e.to_string()
}

fn run_polytope(op: &PolytopeCmd) -> Result<(Status, serde_json::Value), String> {
    match op {
        PolytopeCmd::Vertices { input } => {
            let p = json::parse_polytope(&read_file(input)?).map_err(|e| e.to_string())?;
            let v = canonical_vertices(&p).map_err(|e| e.to_string())?;
            Ok((
                Status::Pass,
                serde_json::json!({
                    "vertex_count": v.vertices.len(),
                    "polytope": json::vpolytope_to_json(&v),
                }),
            ))
        }
        PolytopeCmd::Facets { input } => {
            let p = json::parse_polytope(&read_file(input)?).map_err(|e| e.to_string())?;
            let v = canonical_vertices(&p).map_err(|e| e.to_string())?;
            let h = v_to_h(&v).map_err(|e| e.to_string())?;
            Ok((
                Status::Pass,
                serde_json::json!({
                    "facet_count": h.ineqs.len(),
                    "equation_count": h.equations.len(),
                    "polytope": json::hpolytope_to_json(&h),
                }),
            ))
        }
        PolytopeCmd::Compare { a, b } => {
            let pa = json::parse_polytope(&read_file(a)?).map_err(|e| e.to_string())?;
            let pb = json::parse_polytope(&read_file(b)?).map_err(|e| e.to_string())?;
            let equal = polytopes_equal(&pa, &pb).map_err(|e| e.to_string())?;
            let status = if equal { Status::Pass } else { Status::Fail };
            Ok((status, serde_json::json!({ "equal": equal })))
        }
        PolytopeCmd::Cut {
            graph,
            variant,
            facets,
        } => {
            let g = json::parse_graph(&read_file(graph)?).map_err(|e| e.to_string())?;
            let spec = CutSpec {
                graph: g,
                variant: match variant {
                    VariantArg::ZeroOne => CutVariant::ZeroOne,
                    VariantArg::PlusMinusOne => CutVariant::PlusMinusOne,
                },
            };
            let v = cut_polytope_vertices(&spec).map_err(|e| e.to_string())?;
            if *facets {
                let h = v_to_h(&v).map_err(|e| e.to_string())?;
                Ok((
                    Status::Pass,
                    serde_json::json!({
                        "facet_count": h.ineqs.len(),
                        "polytope": json::hpolytope_to_json(&h),
                    }),
                ))
            } else {
                Ok((
                    Status::Pass,
                    serde_json::json!({
                        "vertex_count": v.vertices.len(),
                        "polytope": json::vpolytope_to_json(&v),
                    }),
                ))
            }
        }
        PolytopeCmd::Metric { graph } => {
            let g = json::parse_graph(&read_file(graph)?).map_err(|e| e.to_string())?;
            let h = metric(&g)?;
            Ok((
                Status::Pass,
                serde_json::json!({
                    "inequality_count": h.ineqs.len(),
                    "polytope": json::hpolytope_to_json(&h),
                }),
            ))
        }
    }
}

fn metric(g: &Graph) -> Result<HPolytope, String> {
    qcorr::polytope::metric_polytope_h(g).map_err(|e| e.to_string())
}

fn command_name(cli: &Cli) -> String {
    match &cli.command {
        Command::Member { scenario, .. } => format!(
            "member --scenario {}",
            match scenario {
                Scenario::Cor2m => "cor2m",
                Scenario::Cor33 => "cor33",
                Scenario::CutRelax => "cut-relax",
            }
        ),
        Command::Derive { name, .. } => format!(
            "derive {}",
            match name {
                DeriveName::Lemma2 => "lemma2",
                DeriveName::Lemma4 => "lemma4",
                DeriveName::Cor2m => "cor2m",
            }
        ),
        Command::Polytope { op } => format!(
            "polytope {}",
            match op {
                PolytopeCmd::Vertices { .. } => "vertices",
                PolytopeCmd::Facets { .. } => "facets",
                PolytopeCmd::Compare { .. } => "compare",
                PolytopeCmd::Cut { .. } => "cut",
                PolytopeCmd::Metric { .. } => "metric",
            }
        ),
        Command::Sample { .. } => "sample".to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok((status, details, strict)) => {
            let output = if matches!(cli.command, Command::Sample { .. }) {
                // bare payload, directly consumable by the member command
                serde_json::to_string_pretty(&details).expect("serializable payload")
            } else {
                let report = RunReport {
                    command: command_name(&cli),
                    status,
                    details,
                    timing: (!cli.no_timing).then(|| started.elapsed().as_secs_f64()),
                };
                serde_json::to_string_pretty(&report).expect("serializable report")
            };
            println!("{output}");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{output}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            eprintln!(
                "{}: {:?} in {:.3}s",
                command_name(&cli),
                status,
                started.elapsed().as_secs_f64()
            );
            let ok = match status {
                Status::Pass | Status::Member => true,
                Status::Boundary => !strict,
                Status::Fail | Status::Nonmember => false,
            };
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
