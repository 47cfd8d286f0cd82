//! `rayleigh`: exact resistance, voltage and spanning-tree queries on graph
//! files, plus the randomized identity suite.
//!
//! Exit codes: 0 success, 1 a verification report failed, 2 usage or parse
//! error, 3 disconnected graph, 4 unknown vertex or edge, 5 violated
//! precondition.

mod graphfile;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use rayleigh::exactnum::{decimal_string, fraction_string, Rational};
use rayleigh::graph::{EdgeId, GraphError, Multigraph, VertexId, VertexPartition};
use rayleigh::reduction::{reduce_two_terminal, ReductionError};
use rayleigh::resistnet::{
    euler_decomposition, euler_decomposition_resistance_only, euler_total, resistance_derivative, EulerTermKind, Network,
    NetworkError,
};
use rayleigh::spantree::{
    closed_form, count_deletion_contraction, count_enumeration, count_identified, count_matrix_tree,
    vertex_deletion_count, Family, TreeError,
};
use rayleigh::verify::{parse_tags, run_tags, GraphGenSpec, SuiteConfig, Tag, VerifyError, DEFAULT_CAP};

const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("parse error: {0}")]
    Parse(#[from] graphfile::ParseError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Disconnected => 3,
            CliError::UnknownVertex(_) | CliError::UnknownEdge(_) => 4,
            CliError::Precondition(_) => 5,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::UnknownVertex(v) => CliError::UnknownVertex(v),
            GraphError::UnknownEdge(e) => CliError::UnknownEdge(e),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<NetworkError> for CliError {
    fn from(e: NetworkError) -> Self {
        match e {
            NetworkError::Disconnected => CliError::Disconnected,
            NetworkError::Graph(g) => g.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::Disconnected => CliError::Disconnected,
            TreeError::Graph(g) => g.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Disconnected => CliError::Disconnected,
            ReductionError::Graph(g) => g.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::UnknownTag(_) => CliError::Usage(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "rayleigh", version, about = "Exact effective resistance and spanning-tree queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Matrix,
    Dc,
    Enum,
    VertexDel,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Form {
    #[value(name = "I", alias = "i")]
    One,
    #[value(name = "II", alias = "ii")]
    Two,
}

#[derive(Subcommand)]
enum Command {
    /// Effective resistance r(p,q).
    Resistance { file: PathBuf, p: String, q: String },
    /// Voltage j_z(x,y): potential at x, grounded at z, unit current in at y.
    Voltage { file: PathBuf, z: String, x: String, y: String },
    /// Number of spanning trees.
    Spantree {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "matrix")]
        method: Method,
        /// Vertex to delete for `vertex-del` (default: first non-cut vertex).
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Spanning trees after identifying each comma-separated group, e.g. `0,2 1,3`.
    Identify {
        file: PathBuf,
        #[arg(required = true)]
        groups: Vec<String>,
        /// Also print the identified graph in file format.
        #[arg(long)]
        graph: bool,
    },
    /// Per-edge decomposition of r(s,t).
    Euler {
        file: PathBuf,
        s: String,
        t: String,
        #[arg(long, value_enum, default_value = "I")]
        form: Form,
    },
    /// Exact derivative of r(s,t) with respect to the length of an edge.
    Derivative { file: PathBuf, edge: String, s: String, t: String },
    /// Resistance by series, parallel and Delta-Y rewriting, with the trace.
    Reduce { file: PathBuf, s: String, t: String },
    /// Closed-form spanning-tree count: path, cycle, banana, complete, fan or wheel.
    ClosedForm {
        family: String,
        n: usize,
        #[arg(default_value_t = 1)]
        a: usize,
    },
    /// Run the identity suite on seeded random graphs.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Comma-separated tags; all tags when omitted.
        #[arg(long, value_delimiter = ',')]
        tags: Vec<String>,
        /// Enumerate every tuple on graphs with at most five vertices.
        #[arg(long)]
        exhaustive: bool,
        /// Sampled tuples per instance and tag.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Generate unit-length graphs only.
        #[arg(long)]
        unit: bool,
    },
}

fn load(path: &Path) -> Result<Multigraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(graphfile::parse(&text)?)
}

fn vertex(g: &Multigraph, token: &str) -> Result<VertexId, CliError> {
    let v = graphfile::vertex_arg(token).ok_or_else(|| CliError::Usage(format!("bad vertex id `{token}`")))?;
    g.check_vertex(v)?;
    Ok(v)
}

fn edge(g: &Multigraph, token: &str) -> Result<EdgeId, CliError> {
    let e = graphfile::edge_arg(token).ok_or_else(|| CliError::Usage(format!("bad edge id `{token}`")))?;
    g.edge(e)?;
    Ok(e)
}

fn network(g: Multigraph) -> Result<Network, CliError> {
    if g.vertex_count() > 0 && !g.is_connected() {
        return Err(CliError::Disconnected);
    }
    Ok(Network::new(g)?)
}

fn value_lines(x: &Rational) -> Vec<String> {
    vec![fraction_string(x), decimal_string(x, DECIMAL_DIGITS)]
}

fn spantree(g: &Multigraph, method: Method, at: Option<&str>) -> Result<BigInt, CliError> {
    if g.vertex_count() == 0 {
        return Err(TreeError::Empty.into());
    }
    let chosen = at.map(|t| vertex(g, t)).transpose()?;
    if !g.is_connected() {
        return Ok(BigInt::zero());
    }
    Ok(match method {
        Method::Matrix => count_matrix_tree(g)?,
        Method::Dc => count_deletion_contraction(g)?,
        Method::Enum => count_enumeration(g)?,
        Method::VertexDel => {
            let u = match chosen {
                Some(u) => u,
                None => *g
                    .vertices()
                    .iter()
                    .find(|&&v| g.vertex_count() == 1 || !g.is_cut_vertex(v).unwrap_or(true))
                    .expect("a connected graph has a non-cut vertex"),
            };
            vertex_deletion_count(g, u)?.0
        }
    })
}

fn kind_name(kind: EulerTermKind) -> &'static str {
    match kind {
        EulerTermKind::BridgeOnPath => "bridge-separating",
        EulerTermKind::BridgeOffPath => "bridge-other",
        EulerTermKind::NonBridge => "non-bridge",
    }
}

fn run(command: Command) -> Result<(Vec<String>, bool), CliError> {
    let ok = |lines| Ok((lines, true));
    match command {
        Command::Resistance { file, p, q } => {
            let g = load(&file)?;
            let (p, q) = (vertex(&g, &p)?, vertex(&g, &q)?);
            ok(value_lines(&network(g)?.resistance(p, q)?))
        }
        Command::Voltage { file, z, x, y } => {
            let g = load(&file)?;
            let (z, x, y) = (vertex(&g, &z)?, vertex(&g, &x)?, vertex(&g, &y)?);
            ok(value_lines(&network(g)?.voltage(z, x, y)?))
        }
        Command::Spantree { file, method, vertex } => {
            let g = load(&file)?;
            ok(vec![spantree(&g, method, vertex.as_deref())?.to_string()])
        }
        Command::Identify { file, groups, graph } => {
            let g = load(&file)?;
            let mut parsed = Vec::new();
            for group in &groups {
                let members = group
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| vertex(&g, t.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                parsed.push(members);
            }
            let partition = VertexPartition::new(parsed);
            partition.validate(&g)?;
            let (h, _) = g.identify(&partition)?;
            let count = if h.is_connected() { count_identified(&g, &partition)? } else { BigInt::zero() };
            let mut lines = vec![count.to_string()];
            if graph {
                lines.extend(graphfile::render(&h).lines().map(str::to_string));
            }
            ok(lines)
        }
        Command::Euler { file, s, t, form } => {
            let g = load(&file)?;
            let (s, t) = (vertex(&g, &s)?, vertex(&g, &t)?);
            let net = network(g)?;
            let mut lines = Vec::new();
            let terms = match form {
                Form::One => euler_decomposition(&net, s, t)?,
                Form::Two => euler_decomposition_resistance_only(&net, s, t)?,
            };
            for term in &terms {
                match form {
                    Form::One => lines.push(format!("{} {} {}", term.edge, kind_name(term.kind), fraction_string(&term.contribution))),
                    Form::Two => lines.push(format!("{} {}", term.edge, fraction_string(&term.contribution))),
                }
            }
            lines.push(format!("total {}", fraction_string(&euler_total(&terms))));
            ok(lines)
        }
        Command::Derivative { file, edge: e, s, t } => {
            let g = load(&file)?;
            let e = edge(&g, &e)?;
            let (s, t) = (vertex(&g, &s)?, vertex(&g, &t)?);
            ok(value_lines(&resistance_derivative(&network(g)?, e, s, t)?))
        }
        Command::Reduce { file, s, t } => {
            let g = load(&file)?;
            let (s, t) = (vertex(&g, &s)?, vertex(&g, &t)?);
            let (value, trace) = reduce_two_terminal(&g, s, t)?;
            let mut lines = match value {
                Some(r) => value_lines(&r),
                None => vec!["irreducible".to_string()],
            };
            lines.extend(trace.to_lines());
            ok(lines)
        }
        Command::ClosedForm { family, n, a } => {
            let f = Family::parse(&family).ok_or_else(|| CliError::Usage(format!("unknown family `{family}`")))?;
            ok(vec![closed_form(f, n, a)?.to_string()])
        }
        Command::Verify {
            seed,
            count,
            tags,
            exhaustive,
            cap,
            unit,
        } => {
            let tags = if tags.is_empty() { Tag::ALL.to_vec() } else { parse_tags(&tags)? };
            let graphs = if unit { GraphGenSpec::unit(seed) } else { GraphGenSpec::small(seed) };
            let config = SuiteConfig {
                graphs,
                count,
                cap,
                exhaustive,
            };
            let report = run_tags(&config, &tags)?;
            let failed = report.failures().count();
            eprintln!("{} reports, {} failed", report.reports.len(), failed);
            for (tag, n) in &report.skipped {
                eprintln!("skipped {tag}: {n}");
            }
            Ok((report.to_lines(), failed == 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((lines, passed)) => {
            for line in lines {
                println!("{line}");
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
