//! `pstlab`: spectral analysis of quantum-walk transfer on weighted graphs.

mod output;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pstlab::gapcert::{self, NeighborSets};
use pstlab::graph::io::parse_graph_auto;
use pstlab::graph::trees::DEFAULT_MAX_TREE_ORDER;
use pstlab::pst::{decide_pst, Model};
use pstlab::scan::{round_floats, scan_trees_with, ScanOptions};
use pstlab::spectra::GraphSpectra;
use pstlab::walksim::fidelity_scan_model;
use pstlab::{Error, Graph};

use output::{write_atomic, Failure};

#[derive(Parser)]
#[command(name = "pstlab", version, about = "Exact spectral tools for perfect state transfer")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Tolerance for numeric assertions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Matrix {
    Adjacency,
    Laplacian,
}

impl From<Matrix> for Model {
    fn from(m: Matrix) -> Self {
        match m {
            Matrix::Adjacency => Model::Adjacency,
            Matrix::Laplacian => Model::Laplacian,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cospectrality, support partition, gap certificate and residue report for a pair.
    Analyze { file: PathBuf, i: usize, j: usize },
    /// Decide perfect state transfer between two vertices (exit 0 if PST, 1 if not).
    DecidePst {
        file: PathBuf,
        i: usize,
        j: usize,
        #[arg(long, value_enum, default_value_t = Matrix::Adjacency)]
        matrix: Matrix,
    },
    /// Scan every tree up to a given order.
    ScanTrees {
        #[arg(long)]
        max_n: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the transfer fidelity on a uniform time grid.
    Simulate {
        file: PathBuf,
        i: usize,
        j: usize,
        #[arg(long, default_value_t = 4.0 * PI)]
        t_max: f64,
        #[arg(long, default_value_t = 10_001)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Matrix::Adjacency)]
        matrix: Matrix,
        /// CSV destination; without it the CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gap bound from the edge weights at a strongly cospectral pair.
    Bound {
        file: PathBuf,
        i: usize,
        j: usize,
        /// Neighbors of i through which every other i-j path leaves i (comma separated).
        #[arg(long, value_delimiter = ',', requires = "j_side")]
        i_side: Option<Vec<usize>>,
        /// Neighbors of j through which every other i-j path enters j.
        #[arg(long, value_delimiter = ',', requires = "i_side")]
        j_side: Option<Vec<usize>>,
    },
    /// Support-gap check for a cospectral pair joined by a bridge.
    BridgeCheck { file: PathBuf, i: usize, j: usize },
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    parse_graph_auto(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn check_vertices(g: &Graph, vs: &[usize]) -> Result<(), Failure> {
    for &v in vs {
        if v >= g.order() {
            return Err(Failure::from(Error::VertexOutOfRange { vertex: v, n: g.order() }));
        }
    }
    Ok(())
}

fn emit(format: Format, value: Value, text: impl FnOnce(&Value) -> String) {
    let mut value = value;
    round_floats(&mut value);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("value serializes")),
        Format::Text => print!("{}", text(&value)),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn analyze(cli: &Cli, file: &Path, i: usize, j: usize) -> Result<ExitCode, Failure> {
    let g = load(file)?;
    check_vertices(&g, &[i, j])?;
    if i == j {
        return Err(Failure::vertices(format!("analyze needs two distinct vertices, got {i} twice")));
    }
    let sp = GraphSpectra::new(&g);
    let pp = sp.pair(i, j)?;
    let cospectral = sp.is_cospectral(i, j)?;
    let strong = sp.is_strongly_cospectral(i, j)?;
    let support = sp.support_poly(i)?;
    let roots: Vec<f64> = sp.support_roots(i)?.iter().map(|b| b.mid).collect();
    let mut report = json!({
        "n": g.order(),
        "i": i,
        "j": j,
        "cospectral": cospectral,
        "strongly_cospectral": strong,
        "phi": pp.phi.to_string(),
        "phi_i": pp.phi_i.to_string(),
        "phi_j": pp.phi_j.to_string(),
        "phi_ij": pp.phi_ij.to_string(),
        "path_sum": pp.s.to_string(),
        "support_poly": support.to_string(),
        "support_roots": roots,
        "min_support_gap": sp.min_support_gap(i).ok(),
    });
    let mut violations = Vec::new();
    if strong {
        let part = sp.support_partition(i, j)?;
        report["partition"] = json!({
            "plus_poly": part.plus_poly.to_string(),
            "minus_poly": part.minus_poly.to_string(),
            "plus_roots": part.plus_roots.iter().map(|b| b.mid).collect::<Vec<_>>(),
            "minus_roots": part.minus_roots.iter().map(|b| b.mid).collect::<Vec<_>>(),
        });
        let (plus, minus) = gapcert::alpha_pair_with(&sp, i, j)?;
        report["alpha"] = json!({
            "plus": plus.to_string(),
            "minus": minus.to_string(),
        });
    }
    let cert = gapcert::certify_gap_with(&sp, i, j, cli.tolerance)?;
    violations.extend(cert.invariant_violations.iter().cloned());
    report["gap_certificate"] = to_value(&cert);
    report["residue_mass"] = to_value(&gapcert::residue_mass_with(&sp, i, j, None, cli.tolerance)?);
    emit(cli.format, report, |v| {
        let mut s = format!(
            "pair ({i}, {j}) on {} vertices\ncospectral: {}\nstrongly cospectral: {}\nsupport: {}\n",
            g.order(),
            cospectral,
            strong,
            support
        );
        if let Some(gap) = v["min_support_gap"].as_f64() {
            s += &format!("min support gap: {gap}\n");
        }
        if let Some(a) = v.get("alpha") {
            s += &format!("alpha+: {}\nalpha-: {}\n", a["plus"].as_str().unwrap(), a["minus"].as_str().unwrap());
        }
        s += &format!("gap certificate: {}\n", cert.conclusion);
        s += &format!(
            "residue mass: {} (bound {})\n",
            v["residue_mass"]["mass"], v["residue_mass"]["bound"]
        );
        s
    });
    if violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure::invariant(violations.join("; ")))
    }
}

fn decide(cli: &Cli, file: &Path, i: usize, j: usize, matrix: Matrix) -> Result<ExitCode, Failure> {
    let g = load(file)?;
    check_vertices(&g, &[i, j])?;
    if i == j {
        return Err(Failure::vertices("transfer needs two distinct vertices".into()));
    }
    let cert = decide_pst(&g, i, j, matrix.into())?;
    let pst = cert.is_pst();
    emit(cli.format, to_value(&cert), |v| match pst {
        true => format!("PST between {i} and {j} at t = {}\n", v["t_min"]),
        false => format!("NO_PST between {i} and {j}: {}\n", v["failing_condition"].as_str().unwrap_or("")),
    });
    if !cert.invariant_violations.is_empty() {
        return Err(Failure::invariant(cert.invariant_violations.join("; ")));
    }
    Ok(if pst { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn enumeration_cap() -> Result<usize, Failure> {
    match std::env::var("PSTLAB_MAX_N") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map(|c| c.min(DEFAULT_MAX_TREE_ORDER))
            .map_err(|_| Failure::parse(format!("PSTLAB_MAX_N = {s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_TREE_ORDER),
    }
}

fn scan(cli: &Cli, max_n: usize, jobs: usize, out: Option<&Path>) -> Result<ExitCode, Failure> {
    let report = scan_trees_with(ScanOptions {
        max_n,
        jobs,
        tolerance: cli.tolerance,
        cap: enumeration_cap()?,
    })?;
    let violations = report.violations();
    let full = report.to_json_value();
    match out {
        Some(path) => {
            write_atomic(path, (serde_json::to_string_pretty(&full).expect("value serializes") + "\n").as_bytes())?;
            let summary = json!({
                "out": path.display().to_string(),
                "max_n": max_n,
                "tree_counts": report.tree_counts(),
                "pst_pairs": report.orders.iter().map(|o| o.pst_pairs.len()).collect::<Vec<_>>(),
                "violations": violations,
                "wall_time_s": report.wall_time_s,
            });
            emit(cli.format, summary, |_| scan_text(&report, &violations));
        }
        None => emit(cli.format, full, |_| scan_text(&report, &violations)),
    }
    if violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure::invariant(format!("{} scan invariant violations", violations.len())))
    }
}

fn scan_text(report: &pstlab::scan::ScanReport, violations: &[String]) -> String {
    let mut s = String::from("n  trees  cospectral  strong  certified  pst\n");
    for o in &report.orders {
        s += &format!(
            "{:<2} {:>6} {:>11} {:>7} {:>10} {:>4}\n",
            o.n,
            o.trees,
            o.cospectral_pairs,
            o.strongly_cospectral_pairs,
            o.certified_pairs,
            o.pst_pairs.len()
        );
    }
    for v in violations {
        s += &format!("violation: {v}\n");
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    cli: &Cli,
    file: &Path,
    i: usize,
    j: usize,
    t_max: f64,
    steps: usize,
    matrix: Matrix,
    out: Option<&Path>,
) -> Result<ExitCode, Failure> {
    let g = load(file)?;
    check_vertices(&g, &[i, j])?;
    let series = fidelity_scan_model(&g, i, j, t_max, steps, matrix.into())?;
    let csv = series.to_csv();
    match out {
        Some(path) => {
            write_atomic(path, csv.as_bytes())?;
            let peak = json!({"i": i, "j": j, "peak_t": series.peak_t, "peak_value": series.peak_value});
            emit(cli.format, peak, |v| format!("peak fidelity {} at t = {}\n", v["peak_value"], v["peak_t"]));
        }
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn bound(cli: &Cli, file: &Path, i: usize, j: usize, sets: Option<NeighborSets>) -> Result<ExitCode, Failure> {
    let g = load(file)?;
    check_vertices(&g, &[i, j])?;
    if let Some(s) = &sets {
        check_vertices(&g, &s.i_side)?;
        check_vertices(&g, &s.j_side)?;
    }
    let b = gapcert::general_bound_with(&GraphSpectra::new(&g), i, j, sets, cli.tolerance)?;
    emit(cli.format, to_value(&b), |v| {
        format!("bound {} for support gap {} at ({i}, {j})\n", v["value"], v["gap"])
    });
    Ok(ExitCode::SUCCESS)
}

fn bridge(cli: &Cli, file: &Path, i: usize, j: usize) -> Result<ExitCode, Failure> {
    let g = load(file)?;
    check_vertices(&g, &[i, j])?;
    let r = gapcert::bridge_gap_check_with(&GraphSpectra::new(&g), i, j, cli.tolerance)?;
    let holds = r.holds;
    emit(cli.format, to_value(&r), |v| {
        let verdict = if v["is_p2"] == json!(true) {
            "exempt (P2)"
        } else if holds {
            "at most 1"
        } else {
            "greater than 1"
        };
        format!("support gap {} at bridge ({i}, {j}): {verdict}\n", v["gap"])
    });
    if holds {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure::invariant(format!("support gap {} exceeds 1 at bridge ({i}, {j})", r.gap)))
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Analyze { file, i, j } => analyze(cli, file, *i, *j),
        Command::DecidePst { file, i, j, matrix } => decide(cli, file, *i, *j, *matrix),
        Command::ScanTrees { max_n, jobs, out } => scan(cli, *max_n, *jobs, out.as_deref()),
        Command::Simulate {
            file,
            i,
            j,
            t_max,
            steps,
            matrix,
            out,
        } => simulate(cli, file, *i, *j, *t_max, *steps, *matrix, out.as_deref()),
        Command::Bound {
            file,
            i,
            j,
            i_side,
            j_side,
        } => {
            let sets = match (i_side, j_side) {
                (Some(a), Some(b)) => Some(NeighborSets {
                    i_side: a.clone(),
                    j_side: b.clone(),
                }),
                _ => None,
            };
            bound(cli, file, *i, *j, sets)
        }
        Command::BridgeCheck { file, i, j } => bridge(cli, file, *i, *j),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("pstlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
