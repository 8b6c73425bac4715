//! The `velo` command-line front end.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 budget exceeded,
//! 3 connectivity requirement not met.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::budget::Budgets;
use crate::connectivity::{connectivity_report_with_budget, ConnectivityReport, Verdict};
use crate::cycles::{enumerate_cycles, rooted_cycle_count, velocities_of};
use crate::dynamics::{
    build_plan, claim_bound, convergence_check, empirical_velocity, random_walk, schedule_with_budget,
    TrajectoryPrefix,
};
use crate::error::Error;
use crate::graph::{parse_dgf, serialize_dgf, strongly_connected_components, DisplacementGraph};
use crate::patch::{gamma_norm_oracle_with_budget, oracle_radius};
use crate::polytope::{anisotropy, contains_polytope, dimensionality, gauge_norm, is_symmetric, RationalPolytope};
use crate::rational::{format_rational, parse_rational, Rational, RationalVec};
use crate::realizer::realize;
use crate::svg::polytope_svg;
use crate::velocity::{velocity_polytope_with_budget, velocity_set_with_budget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_CONNECTIVITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "velo", version, about = "Velocity polytopes and Γ-norms of periodic graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArg {
    /// Displacement graph in DGF format
    pub graph: PathBuf,
    /// Treat every edge as undirected (adds the reversed edge)
    #[arg(long)]
    pub undirected: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Velocity polytope (per strongly connected component if needed)
    Polytope {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        /// Write an SVG plot (dimension 2 only)
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Γ-norm of an integer vector via the gauge of the velocity polytope
    Norm {
        #[command(flatten)]
        input: GraphArg,
        #[arg(required = true, allow_negative_numbers = true, num_args = 1..)]
        x: Vec<i64>,
        /// Also run the BFS oracle at this n
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 8)]
        n: u64,
        /// Patch radius for the oracle (default n·(‖x‖∞ + C + 1))
        #[arg(long)]
        radius: Option<usize>,
    },
    /// List simple cycles with displacements and basic velocities
    Cycles {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        json: bool,
    },
    /// Scheduled trajectory for weighted cycles, or a random walk
    Simulate {
        #[command(flatten)]
        input: GraphArg,
        /// `INDEX:WEIGHT`, cycle index as listed by `cycles`
        #[arg(long = "cycle", value_name = "INDEX:WEIGHT")]
        cycles: Vec<String>,
        #[arg(long, default_value_t = 16)]
        k_max: u64,
        /// Random walk of this length instead of a schedule
        #[arg(long, conflicts_with = "cycles")]
        walk: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start vertex name for the random walk
        #[arg(long)]
        start: Option<String>,
    },
    /// Graph realizing a polytope given as JSON
    Realize { polytope: PathBuf },
    /// Test the velocity-polytope obstruction to a morphism FROM → TO
    CheckMorphism {
        from: PathBuf,
        to: PathBuf,
        #[arg(long)]
        undirected: bool,
    },
    /// In- and circumradius of the velocity polytope
    Anisotropy {
        /// Displacement graph (omit when --polytope is given)
        graph: Option<PathBuf>,
        #[arg(long, conflicts_with = "graph")]
        polytope: Option<PathBuf>,
        /// Symmetric positive definite metric, rows separated by `;`
        #[arg(long, value_name = "a,b;c,d")]
        metric: Option<String>,
        #[arg(long)]
        undirected: bool,
    },
    /// Components, cycles, basic velocities, polytope and anisotropy
    Report {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::NotStronglyConnected(_) => EXIT_CONNECTIVITY,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

type CliResult = std::result::Result<(), CliError>;

fn input_error(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, undirected: bool) -> std::result::Result<DisplacementGraph, CliError> {
    let g = parse_dgf(&read(path)?).map_err(|e| CliError {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(if undirected { g.symmetrized() } else { g })
}

fn vec_text(v: &RationalVec) -> String {
    v.to_strings().join(" ")
}

fn polytope_text(p: &RationalPolytope) -> String {
    let mut s = format!("dim {}\n", p.dim());
    if p.is_empty() {
        s.push_str("empty (no cycles: no infinite trajectory exists)\n");
        return s;
    }
    for v in p.vertices() {
        s.push_str(&format!("vertex {}\n", vec_text(v)));
    }
    if let Some(fs) = p.facets() {
        for f in fs {
            s.push_str(&format!("facet {} <= {}\n", vec_text(&f.a), format_rational(&f.b)));
        }
    }
    s
}

fn report_json(g: &DisplacementGraph, r: &ConnectivityReport) -> Value {
    json!({
        "verdict": r.verdict.as_str(),
        "scc_count": r.scc_count,
        "scc_membership": g.vertices().iter().zip(&r.scc_membership)
            .map(|(name, c)| json!([name, c])).collect::<Vec<_>>(),
        "cycle_lattice_rank": r.cycle_lattice_rank,
        "cycle_lattice_index": r.cycle_lattice_index.as_ref().map(|i| i.to_string()),
        "cone_full": r.cone_full,
    })
}

fn connectivity_text(g: &DisplacementGraph, r: &ConnectivityReport) -> String {
    let comps: Vec<String> = strongly_connected_components(g)
        .iter()
        .map(|c| {
            format!(
                "{{{}}}",
                c.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    format!(
        "verdict {}\nscc_count {}\ncomponents {}\ncycle_lattice_rank {}\ncycle_lattice_index {}\ncone_full {}\n",
        r.verdict,
        r.scc_count,
        comps.join(" "),
        r.cycle_lattice_rank,
        r.cycle_lattice_index
            .as_ref()
            .map_or_else(|| "-".to_string(), |i| i.to_string()),
        r.cone_full
    )
}

fn parse_metric(text: &str) -> std::result::Result<Vec<Vec<Rational>>, CliError> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| parse_rational(x).map_err(CliError::from))
                .collect()
        })
        .collect()
}

fn cmd_polytope(
    input: &GraphArg,
    text: bool,
    svg: Option<&Path>,
    budgets: &Budgets,
    out: &mut dyn Write,
) -> CliResult {
    let g = load_graph(&input.graph, input.undirected)?;
    if svg.is_some() && g.dim() != 2 {
        return Err(input_error(format!(
            "--svg supports dimension 2 only, graph has dimension {}",
            g.dim()
        )));
    }
    let comps = strongly_connected_components(&g);
    if comps.len() == 1 {
        let p = velocity_polytope_with_budget(&g, budgets)?;
        if text {
            write!(out, "{}", polytope_text(&p))?;
        } else {
            writeln!(out, "{}", p.to_json())?;
        }
        if let Some(path) = svg {
            fs::write(path, polytope_svg(&p)?)?;
        }
        return Ok(());
    }
    let set = velocity_set_with_budget(&g, budgets)?;
    if set.components.is_empty() {
        let p = RationalPolytope::empty(g.dim());
        if text {
            write!(out, "{}", polytope_text(&p))?;
        } else {
            writeln!(out, "{}", p.to_json())?;
        }
        return Ok(());
    }
    if text {
        writeln!(out, "components {}", set.components.len())?;
        for c in &set.components {
            let names: Vec<&str> = c.vertices.iter().map(|&v| g.vertex_name(v)).collect();
            writeln!(out, "component {} {{{}}}", c.scc, names.join(", "))?;
            write!(out, "{}", polytope_text(&c.polytope))?;
        }
    } else {
        let comps: Vec<Value> = set
            .components
            .iter()
            .map(|c| {
                json!({
                    "scc": c.scc,
                    "vertices": c.vertices.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
                    "polytope": c.polytope.to_json_value(),
                })
            })
            .collect();
        let doc = json!({ "dim": g.dim(), "components": comps });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    }
    if svg.is_some() {
        return Err(input_error("--svg needs a strongly connected quotient"));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_norm(
    input: &GraphArg,
    x: &[i64],
    oracle: bool,
    n: u64,
    radius: Option<usize>,
    budgets: &Budgets,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let g = load_graph(&input.graph, input.undirected)?;
    if x.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: x.len(),
        }
        .into());
    }
    let report = connectivity_report_with_budget(&g, budgets.cycles)?;
    if report.verdict != Verdict::StronglyConnectedPeriodic {
        write!(err, "{}", connectivity_text(&g, &report))?;
        return Err(CliError {
            code: EXIT_CONNECTIVITY,
            message: format!("Γ-norm needs a strongly connected periodic graph (verdict {})", report.verdict),
        });
    }
    let p = velocity_polytope_with_budget(&g, budgets)?;
    let gauge = gauge_norm(&p, &RationalVec::from_ints(x))?;
    writeln!(out, "{gauge}")?;
    if oracle {
        let radius = radius.unwrap_or_else(|| oracle_radius(&g, x, n));
        let value = gamma_norm_oracle_with_budget(&g, x, n, radius, budgets.patch_vertices)?;
        writeln!(out, "oracle n={n} radius={radius} {}", format_rational(&value))?;
        if let Some(gv) = gauge.finite() {
            let gap = (&value - gv).abs();
            writeln!(out, "gap {}", format_rational(&gap))?;
        }
    }
    Ok(())
}


fn cmd_cycles(input: &GraphArg, json_out: bool, budgets: &Budgets, out: &mut dyn Write) -> CliResult {
    let g = load_graph(&input.graph, input.undirected)?;
    let cycles = enumerate_cycles(&g, budgets.cycles)?;
    let velocities = velocities_of(&g, &cycles);
    if json_out {
        let list: Vec<Value> = cycles
            .iter()
            .map(|c| {
                json!({
                    "edges": c.edges,
                    "listing": c.listing(&g),
                    "displacement": c.displacement(&g),
                    "velocity": c.velocity(&g).to_strings(),
                })
            })
            .collect();
        let doc = json!({
            "cycles": list,
            "rooted_count": rooted_cycle_count(&cycles),
            "basic_velocities": velocities.iter().map(RationalVec::to_strings).collect::<Vec<_>>(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        return Ok(());
    }
    for (i, c) in cycles.iter().enumerate() {
        let d = c.displacement(&g);
        writeln!(
            out,
            "[{i}] {}  displacement ({})  velocity {}",
            c.listing(&g),
            d.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            c.velocity(&g)
        )?;
    }
    writeln!(
        out,
        "{} cycles ({} rooted), {} basic velocities",
        cycles.len(),
        rooted_cycle_count(&cycles),
        velocities.len()
    )?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    input: &GraphArg,
    cycle_args: &[String],
    k_max: u64,
    walk: Option<usize>,
    seed: u64,
    start: Option<&str>,
    budgets: &Budgets,
    out: &mut dyn Write,
) -> CliResult {
    let g = load_graph(&input.graph, input.undirected)?;
    let p = velocity_polytope_with_budget(&g, budgets)?;
    if p.is_empty() {
        return Err(input_error("graph has no cycles"));
    }
    let (prefix, target) = if let Some(len) = walk {
        let start = match start {
            Some(name) => g
                .vertex_index(name)
                .ok_or_else(|| input_error(format!("unknown vertex `{name}`")))?,
            None => 0,
        };
        (TrajectoryPrefix::new(random_walk(&g, start, len, seed)?), None)
    } else {
        let cycles = enumerate_cycles(&g, budgets.cycles)?;
        let mut weighted = Vec::new();
        for arg in cycle_args {
            let (idx, w) = arg
                .split_once(':')
                .ok_or_else(|| input_error(format!("expected INDEX:WEIGHT, got `{arg}`")))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| input_error(format!("bad cycle index `{idx}`")))?;
            let c = cycles
                .get(idx)
                .ok_or_else(|| input_error(format!("cycle index {idx} out of range")))?;
            weighted.push((c.clone(), parse_rational(w)?));
        }
        if weighted.is_empty() {
            return Err(input_error("give --cycle INDEX:WEIGHT at least once, or --walk N"));
        }
        let plan = build_plan(&g, &weighted)?;
        let target = plan.target_velocity(&g);
        (schedule_with_budget(&plan, k_max, budgets.prefix_edges)?, Some(target))
    };
    let w = empirical_velocity(&g, &prefix)?;
    let dist = convergence_check(&g, &prefix, &p)?;
    writeln!(out, "steps {}", prefix.len())?;
    writeln!(out, "velocity {}", vec_text(&w))?;
    if let Some(t) = target {
        writeln!(out, "target {}", vec_text(&t))?;
        writeln!(out, "error_inf {}", format_rational(&w.sub(&t).inf_norm()))?;
    }
    writeln!(out, "distance_to_polytope {}", format_rational(&dist))?;
    writeln!(out, "bound {}", format_rational(&claim_bound(&g, prefix.len())))?;
    Ok(())
}

fn cmd_realize(path: &Path, out: &mut dyn Write) -> CliResult {
    let p = RationalPolytope::from_json(&read(path)?)?;
    let g = realize(&p)?;
    write!(out, "{}", serialize_dgf(&g))?;
    Ok(())
}

fn strongly_connected_polytope(
    path: &Path,
    undirected: bool,
    budgets: &Budgets,
) -> std::result::Result<RationalPolytope, CliError> {
    let g = load_graph(path, undirected)?;
    velocity_polytope_with_budget(&g, budgets).map_err(|e| {
        let mut c = CliError::from(e);
        c.message = format!("{}: {}", path.display(), c.message);
        c
    })
}

fn cmd_check_morphism(from: &Path, to: &Path, undirected: bool, budgets: &Budgets, out: &mut dyn Write) -> CliResult {
    let p_from = strongly_connected_polytope(from, undirected, budgets)?;
    let p_to = strongly_connected_polytope(to, undirected, budgets)?;
    if contains_polytope(&p_to, &p_from)? {
        writeln!(out, "inconclusive")?;
    } else {
        writeln!(out, "morphism impossible")?;
    }
    Ok(())
}

fn anisotropy_lines(p: &RationalPolytope, metric: Option<&[Vec<Rational>]>) -> std::result::Result<String, CliError> {
    let a = anisotropy(p, metric)?;
    Ok(format!(
        "inradius2 {}\ncircumradius2 {}\nisotropic {}\n",
        format_rational(&a.inradius2),
        format_rational(&a.circumradius2),
        a.isotropic
    ))
}

fn cmd_anisotropy(
    graph: Option<&Path>,
    polytope: Option<&Path>,
    metric: Option<&str>,
    undirected: bool,
    budgets: &Budgets,
    out: &mut dyn Write,
) -> CliResult {
    let p = match (graph, polytope) {
        (Some(g), None) => strongly_connected_polytope(g, undirected, budgets)?,
        (None, Some(p)) => RationalPolytope::from_json(&read(p)?)?,
        _ => return Err(input_error("give a graph file or --polytope")),
    };
    let metric = metric.map(parse_metric).transpose()?;
    write!(out, "{}", anisotropy_lines(&p, metric.as_deref())?)?;
    Ok(())
}

fn cmd_report(input: &GraphArg, json_out: bool, budgets: &Budgets, out: &mut dyn Write) -> CliResult {
    let g = load_graph(&input.graph, input.undirected)?;
    let report = connectivity_report_with_budget(&g, budgets.cycles)?;
    let cycles = enumerate_cycles(&g, budgets.cycles)?;
    let velocities = velocities_of(&g, &cycles);
    let polytope = if report.scc_count == 1 {
        Some(velocity_polytope_with_budget(&g, budgets)?)
    } else {
        None
    };
    let dims = polytope
        .as_ref()
        .filter(|p| !p.is_empty())
        .map(dimensionality)
        .transpose()?;
    let aniso = match (&polytope, dims) {
        (Some(p), Some((d, true))) if d == g.dim() => anisotropy(p, None).ok(),
        _ => None,
    };

    if json_out {
        let doc = json!({
            "connectivity": report_json(&g, &report),
            "cycle_count": cycles.len(),
            "rooted_cycle_count": rooted_cycle_count(&cycles),
            "basic_velocities": velocities.iter().map(RationalVec::to_strings).collect::<Vec<_>>(),
            "polytope": polytope.as_ref().map(RationalPolytope::to_json_value),
            "affine_dim": dims.map(|d| d.0),
            "origin_interior": dims.map(|d| d.1),
            "symmetric": polytope.as_ref().map(is_symmetric),
            "anisotropy": aniso.as_ref().map(|a| json!({
                "inradius2": format_rational(&a.inradius2),
                "circumradius2": format_rational(&a.circumradius2),
                "isotropic": a.isotropic,
            })),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        return Ok(());
    }
    write!(out, "{}", connectivity_text(&g, &report))?;
    writeln!(
        out,
        "cycles {} (rooted {})",
        cycles.len(),
        rooted_cycle_count(&cycles)
    )?;
    writeln!(out, "basic_velocities {}", velocities.len())?;
    for v in &velocities {
        writeln!(out, "  {}", vec_text(v))?;
    }
    match &polytope {
        Some(p) => {
            write!(out, "{}", polytope_text(p))?;
            if let Some((d, interior)) = dims {
                writeln!(out, "affine_dim {d}\norigin_interior {interior}")?;
                writeln!(out, "symmetric {}", is_symmetric(p))?;
            }
            if let Some(a) = &aniso {
                writeln!(
                    out,
                    "inradius2 {}\ncircumradius2 {}\nisotropic {}",
                    format_rational(&a.inradius2),
                    format_rational(&a.circumradius2),
                    a.isotropic
                )?;
            }
        }
        None => writeln!(out, "polytope per component: see `velo polytope`")?,
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let budgets = match Budgets::from_env() {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let result = match &cli.command {
        Command::Polytope { input, text, svg, .. } => cmd_polytope(input, *text, svg.as_deref(), &budgets, out),
        Command::Norm {
            input,
            x,
            oracle,
            n,
            radius,
        } => cmd_norm(input, x, *oracle, *n, *radius, &budgets, out, err),
        Command::Cycles { input, json } => cmd_cycles(input, *json, &budgets, out),
        Command::Simulate {
            input,
            cycles,
            k_max,
            walk,
            seed,
            start,
        } => cmd_simulate(input, cycles, *k_max, *walk, *seed, start.as_deref(), &budgets, out),
        Command::Realize { polytope } => cmd_realize(polytope, out),
        Command::CheckMorphism { from, to, undirected } => cmd_check_morphism(from, to, *undirected, &budgets, out),
        Command::Anisotropy {
            graph,
            polytope,
            metric,
            undirected,
        } => cmd_anisotropy(
            graph.as_deref(),
            polytope.as_deref(),
            metric.as_deref(),
            *undirected,
            &budgets,
            out,
        ),
        Command::Report { input, json } => cmd_report(input, *json, &budgets, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
