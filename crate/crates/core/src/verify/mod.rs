//! Seeded random instances and the identity suite: every resistance and
//! spanning-tree identity evaluated as an exact residual on generated graphs.
//!
//! Reports are reproducible bit-for-bit from `(seed, spec, tags)`. Instances
//! run in parallel, but results are always ordered by instance index and then
//! by tag order.

mod evaluators;
mod generate;

pub use generate::*;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactnum::{fraction_string, Rational};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::resistnet::Network;

/// Finite-difference step for the float mirror of the derivative check.
pub const DERIVATIVE_STEP: f64 = 1e-6;
/// Relative tolerance `|fd - exact| / max(1, |exact|)` for the derivative check.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-6;
/// Default number of sampled tuples per instance and tag.
pub const DEFAULT_CAP: usize = 20;
/// Exhaustive mode applies to graphs with at most this many vertices.
pub const EXHAUSTIVE_MAX_VERTICES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("no connected graph within the spec after {0} attempts")]
    Unsatisfiable(usize),
    #[error("network of a generated graph: {0}")]
    Network(String),
    #[error("unknown tag `{0}`")]
    UnknownTag(String),
}

macro_rules! tags {
    ($($variant:ident => $name:literal: $about:literal,)*) => {
        /// Identity families the suite can check.
        #[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Tag {
            $(#[doc = $about] $variant,)*
        }

        impl Tag {
            pub const ALL: &'static [Tag] = &[$(Tag::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Tag::$variant => $name,)*
                }
            }

            pub fn about(self) -> &'static str {
                match self {
                    $(Tag::$variant => $about,)*
                }
            }
        }
    };
}

tags! {
    Magic => "magic": "chain of equal voltage differences",
    Shorting => "shorting": "explicit shorting law and its three-point form",
    Euler1 => "euler1": "per-edge decomposition of r(s,t) with bridge terms",
    Euler2 => "euler2": "per-edge decomposition from resistances only",
    Cutting => "cutting": "explicit cutting law, both forms",
    Monotonic1 => "monotonic1": "explicit contraction law, both forms",
    Monotonic2 => "monotonic2": "change of resistance under an edge-length change",
    Convex => "convex": "r(s,t) as a convex combination of deletion and contraction",
    VolTransfer => "vol-transfer": "voltage transfer under shorting, cutting and contraction",
    TreeResistance => "tree-resistance": "r(p,q) = t(G_pq) / t(G)",
    TreeVoltage => "tree-voltage": "j_p(q,s) from three identified counts",
    Averaging => "averaging": "averages of t over contractions and deletions",
    Unions => "unions": "counts of graphs glued from parts",
    Quadratic => "quadratic": "quadratic identity for two identified pairs",
    ContractId => "contract-id": "quadratic identity under edge contraction",
    DeleteId => "delete-id": "quadratic identity under edge deletion",
    SpanEuler => "span-euler": "per-edge sum of squared brackets equals 4 t(G) t(G_st)",
    VertexDel => "vertex-del": "count through deleting a non-cut vertex",
    StarAug => "star-aug": "count after adding a star of multi-edges",
    Foster => "foster": "sum of r(p,q)/L over edges equals n - 1",
    Derivative => "derivative": "exact dr/dL against central finite differences",
}

impl Tag {
    pub fn parse(name: &str) -> Result<Tag, VerifyError> {
        Tag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == name)
            .ok_or_else(|| VerifyError::UnknownTag(name.to_string()))
    }

    /// Float-mirror tags pass within [`DERIVATIVE_TOLERANCE`]; all others
    /// need a residual of exactly zero.
    pub fn is_exact(self) -> bool {
        self != Tag::Derivative
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses tag names, rejecting unknown ones and dropping repeats.
pub fn parse_tags<S: AsRef<str>>(names: &[S]) -> Result<Vec<Tag>, VerifyError> {
    let mut out = Vec::new();
    for name in names {
        let tag = Tag::parse(name.as_ref().trim())?;
        if !out.contains(&tag) {
            out.push(tag);
        }
    }
    Ok(out)
}

/// One evaluated selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub tag: Tag,
    pub instance: usize,
    pub graph_hash: String,
    pub selection: String,
    /// For exact tags the first non-zero component residual, or zero; for
    /// the derivative, the relative finite-difference error as an exact
    /// fraction of the `f64`.
    pub residual: Rational,
    pub pass: bool,
    /// Set when an evaluator failed unexpectedly; such reports never pass.
    pub error: Option<String>,
}

impl IdentityReport {
    /// Line-delimited record: tag, graph hash, selection, residual, pass.
    pub fn record(&self) -> String {
        let mut line = format!(
            "{}\t{}\t{}\t{}\t{}",
            self.tag,
            self.graph_hash,
            self.selection,
            fraction_string(&self.residual),
            if self.pass { "pass" } else { "FAIL" }
        );
        if let Some(e) = &self.error {
            line.push_str("\terror: ");
            line.push_str(e);
        }
        line
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub graphs: GraphGenSpec,
    pub count: usize,
    /// Sampled tuples per instance and tag.
    pub cap: usize,
    /// Enumerate every tuple on graphs with at most
    /// [`EXHAUSTIVE_MAX_VERTICES`] vertices.
    pub exhaustive: bool,
}

impl SuiteConfig {
    pub fn new(graphs: GraphGenSpec, count: usize) -> Self {
        Self {
            graphs,
            count,
            cap: DEFAULT_CAP,
            exhaustive: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub reports: Vec<IdentityReport>,
    /// Selections dropped because a hypothesis (non-bridge, non-cut vertex,
    /// distinct vertices, ...) did not hold.
    pub skipped: BTreeMap<Tag, usize>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports.iter().filter(|r| !r.pass)
    }

    pub fn count(&self, tag: Tag) -> usize {
        self.reports.iter().filter(|r| r.tag == tag).count()
    }

    pub fn to_lines(&self) -> Vec<String> {
        self.reports.iter().map(IdentityReport::record).collect()
    }
}

/// Short stable hash of a graph's ids, endpoints and lengths.
pub fn graph_hash(g: &Multigraph) -> String {
    let mut h = Sha256::new();
    for v in g.vertices() {
        h.update(format!("v {}\n", v.0));
    }
    for e in g.edges() {
        h.update(format!("e {} {} {} {}\n", e.id.0, e.u.0, e.v.0, fraction_string(&e.length)));
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Independent stream per `(seed, instance, salt)`.
pub(crate) fn derived_rng(seed: u64, instance: usize, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((instance as u64) << 8 | salt);
    rng
}

/// Slot of a selection tuple.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) enum Slot {
    Vertex,
    Edge,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) enum Item {
    V(VertexId),
    E(EdgeId),
}

impl Item {
    pub(crate) fn v(self) -> VertexId {
        match self {
            Item::V(v) => v,
            Item::E(_) => panic!("slot holds an edge"),
        }
    }

    pub(crate) fn e(self) -> EdgeId {
        match self {
            Item::E(e) => e,
            Item::V(_) => panic!("slot holds a vertex"),
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::V(v) => write!(f, "{v}"),
            Item::E(e) => write!(f, "{e}"),
        }
    }
}

/// Tuples for `shape`: all of them in exhaustive mode on small graphs,
/// otherwise `cap` independent draws.
pub(crate) fn selections(g: &Multigraph, shape: &[Slot], cap: usize, exhaustive: bool, rng: &mut ChaCha8Rng) -> Vec<Vec<Item>> {
    let pool = |slot: Slot| -> Vec<Item> {
        match slot {
            Slot::Vertex => g.vertices().iter().map(|&v| Item::V(v)).collect(),
            Slot::Edge => g.edges().iter().map(|e| Item::E(e.id)).collect(),
        }
    };
    let pools: Vec<Vec<Item>> = shape.iter().map(|&s| pool(s)).collect();
    if pools.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    if shape.is_empty() {
        return vec![Vec::new()];
    }
    if exhaustive && g.vertex_count() <= EXHAUSTIVE_MAX_VERTICES {
        let mut out: Vec<Vec<Item>> = vec![Vec::new()];
        for p in &pools {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    p.iter().map(move |&x| {
                        let mut t = prefix.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        return out;
    }
    (0..cap)
        .map(|_| pools.iter().map(|p| p[rng.gen_range(0..p.len())]).collect())
        .collect()
}

/// Result of one evaluation.
pub(crate) enum Outcome {
    /// Component residuals of exact identities.
    Exact(Vec<Rational>),
    /// Relative error of a float-mirror check.
    Float(f64),
    /// A hypothesis of the identity does not hold for this selection.
    Skip,
    Error(String),
}

fn first_nonzero(rs: Vec<Rational>) -> Rational {
    rs.into_iter().find(|r| !r.is_zero()).unwrap_or_else(Rational::zero)
}

/// Shared per-instance data.
pub(crate) struct Instance {
    pub graph: Multigraph,
    pub net: Network,
    /// `graph` with all lengths set to 1, for the counting identities.
    pub unit: Multigraph,
    pub unit_net: Network,
    /// Second graph from the same spec, glued to `unit` by the union checks.
    pub partner: Multigraph,
}

fn run_instance(config: &SuiteConfig, tags: &[Tag], index: usize) -> Result<(Vec<IdentityReport>, BTreeMap<Tag, usize>), VerifyError> {
    let seed = config.graphs.seed;
    let graph = generate(&config.graphs.for_instance(index, 0))?;
    let partner = generate(&config.graphs.for_instance(index, 1))?.with_unit_lengths();
    let unit = graph.with_unit_lengths();
    let net = |g: &Multigraph| Network::new(g.clone()).map_err(|e| VerifyError::Network(e.to_string()));
    let inst = Instance {
        net: net(&graph)?,
        unit_net: net(&unit)?,
        graph,
        unit,
        partner,
    };
    let mut reports = Vec::new();
    let mut skipped = BTreeMap::new();
    for &tag in tags {
        let target = if evaluators::uses_unit(tag) { &inst.unit } else { &inst.graph };
        let hash = graph_hash(target);
        let mut rng = derived_rng(seed, index, 16 + tag as u64);
        for sel in selections(target, evaluators::shape(tag), config.cap, config.exhaustive, &mut rng) {
            let selection = sel.iter().map(Item::to_string).collect::<Vec<_>>().join(",");
            let selection = if selection.is_empty() { "-".to_string() } else { selection };
            let (residual, pass, error) = match evaluators::evaluate(tag, &inst, &sel, &mut rng) {
                Outcome::Skip => {
                    *skipped.entry(tag).or_insert(0) += 1;
                    continue;
                }
                Outcome::Exact(rs) => {
                    let r = first_nonzero(rs);
                    let pass = r.is_zero();
                    (r, pass, None)
                }
                Outcome::Float(rel) => {
                    let r = Rational::from_float(rel).unwrap_or_else(|| Rational::from_integer(1.into()));
                    let pass = rel.is_finite() && rel.abs() <= DERIVATIVE_TOLERANCE;
                    (r.abs(), pass, None)
                }
                Outcome::Error(e) => (Rational::zero(), false, Some(e)),
            };
            reports.push(IdentityReport {
                tag,
                instance: index,
                graph_hash: hash.clone(),
                selection,
                residual,
                pass,
                error,
            });
        }
    }
    Ok((reports, skipped))
}

/// Runs `tags` (by name) on `config.count` generated instances.
pub fn run_suite<S: AsRef<str>>(config: &SuiteConfig, tags: &[S]) -> Result<SuiteReport, VerifyError> {
    let tags = parse_tags(tags)?;
    run_tags(config, &tags)
}

pub fn run_tags(config: &SuiteConfig, tags: &[Tag]) -> Result<SuiteReport, VerifyError> {
    config.graphs.validate()?;
    if tags.is_empty() {
        return Ok(SuiteReport::default());
    }
    let per_instance: Vec<_> = (0..config.count)
        .into_par_iter()
        .map(|i| run_instance(config, tags, i))
        .collect::<Result<_, _>>()?;
    let mut out = SuiteReport::default();
    for (reports, skipped) in per_instance {
        out.reports.extend(reports);
        for (tag, n) in skipped {
            *out.skipped.entry(tag).or_insert(0) += n;
        }
    }
    Ok(out)
}
