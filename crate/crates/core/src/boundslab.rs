//! Closed-form bounds, weight sums and the weight-scaling experiment.
//!
//! Bound arithmetic is exact; floors are taken only when reporting.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::path::Path;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::berge::{blue_edges, has_berge_through, is_berge_free};
use crate::hypercore::{binomial, count_sub_copies, enumerate_sub_copies, shadow, turan_hypergraph, Hypergraph, HypergraphError, UniformHypergraph, VertexSet};
use crate::par;

pub type Rational = Ratio<i128>;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("weight table has no entry for edge size {0}")]
    MissingWeight(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("generator {generator} produced a hypergraph with a Berge copy of the pattern at n = {n}")]
    GeneratorNotFree { generator: String, n: usize },
    #[error("weight table: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

type Result<T> = std::result::Result<T, BoundsError>;

fn invalid(msg: String) -> BoundsError {
    BoundsError::InvalidParameters(msg)
}

fn binom(n: usize, k: usize) -> i128 {
    i128::from(binomial(n as u64, k as u64))
}

/// An exact rational with its floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundValue {
    pub value: Rational,
    pub floor: i128,
}

impl BoundValue {
    pub fn new(value: Rational) -> Self {
        BoundValue { value, floor: value.floor().to_integer() }
    }
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (floor {})", format_rational(&self.value), self.floor)
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            value: String,
            floor: i128,
        }
        Repr { value: format_rational(&self.value), floor: self.floor }.serialize(s)
    }
}

/// Upper bound on `ex_r(n, K_s^(r))`:
/// `C(n, r) * (1 - (n - s + 1) / ((n - r + 1) * C(s - 1, r - 1)))`.
pub fn decaen_bound(n: usize, r: usize, s: usize) -> Result<BoundValue> {
    if !(r >= 2 && s > r && n >= s) {
        return Err(invalid(format!("need n >= s > r >= 2, got n = {n}, r = {r}, s = {s}")));
    }
    let sub = Rational::new((n - s + 1) as i128, (n - r + 1) as i128 * binom(s - 1, r - 1));
    Ok(BoundValue::new(Rational::from_integer(binom(n, r)) * (Rational::from_integer(1) - sub)))
}

/// `1 - 1 / ((s - r + 1) * C(s - 1, r - 1))`, the largest edge density the
/// bound above allows for any `n >= s`.
pub fn alpha_constant(r: usize, s: usize) -> Result<Rational> {
    if !(r >= 2 && s > r) {
        return Err(invalid(format!("need s > r >= 2, got r = {r}, s = {s}")));
    }
    Ok(Rational::from_integer(1) - Rational::new(1, (s - r + 1) as i128 * binom(s - 1, r - 1)))
}

/// `sum |h|^r` over the edges.
pub fn weight_sum(h: &Hypergraph, r: u32) -> Result<u128> {
    h.edges().iter().try_fold(0u128, |acc, e| (e.len() as u128).checked_pow(r).and_then(|w| acc.checked_add(w)).ok_or(BoundsError::Overflow))
}

/// Weight per edge size.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTable {
    weights: BTreeMap<usize, u64>,
}

#[derive(Deserialize)]
struct WeightRow {
    m: usize,
    w: u64,
}

impl WeightTable {
    pub fn new(weights: BTreeMap<usize, u64>) -> Self {
        WeightTable { weights }
    }

    /// `w(m) = f(m)` for `m` in `sizes`.
    pub fn from_fn(sizes: impl IntoIterator<Item = usize>, f: impl Fn(usize) -> u64) -> Self {
        WeightTable { weights: sizes.into_iter().map(|m| (m, f(m))).collect() }
    }

    /// Reads a CSV with header `m,w`.
    pub fn from_reader(reader: impl io::Read) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for row in csv::Reader::from_reader(reader).deserialize() {
            let WeightRow { m, w } = row?;
            if weights.insert(m, w).is_some() {
                return Err(invalid(format!("edge size {m} listed twice")));
            }
        }
        Ok(WeightTable { weights })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_reader(std::fs::File::open(path)?)
    }

    pub fn get(&self, m: usize) -> Option<u64> {
        self.weights.get(&m).copied()
    }
}

/// `sum w(|h|)` over the edges.
pub fn weighted_sum(h: &Hypergraph, w: &WeightTable) -> Result<u128> {
    h.edges().iter().try_fold(0u128, |acc, e| {
        let m = e.len();
        Ok(acc + u128::from(w.get(m).ok_or(BoundsError::MissingWeight(m))?))
    })
}

/// One edge holding every vertex.
pub fn single_edge_example(n: usize) -> Result<Hypergraph> {
    if n == 0 {
        return Err(invalid("need at least one vertex".into()));
    }
    Ok(Hypergraph::from_sets(n, vec![VertexSet::prefix(n)])?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeAudit {
    pub edge: Vec<usize>,
    /// `r`-subsets of the edge lying in fewer than `|E(F)|` edges of the host.
    pub blue: u64,
    pub non_blue: u64,
    /// Bound on the non-blue count: those `r`-sets form an `F`-free, hence
    /// `K_{|V(F)|}^(r)`-free, `r`-graph on the edge.
    pub bound: BoundValue,
    /// `blue >= (1 - alpha) * C(|h|, r)`.
    pub blue_share_holds: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim1Report {
    pub r: usize,
    pub s: usize,
    pub alpha: Option<String>,
    pub edges: Vec<EdgeAudit>,
    pub violations: usize,
}

impl Claim1Report {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// For each edge of a Berge-`F`-free host, compares the number of non-blue
/// `r`-subsets with the clique bound on `|h|` vertices.
pub fn claim1_audit(h: &Hypergraph, f: &UniformHypergraph) -> Result<Claim1Report> {
    let (r, s) = (f.r(), f.n());
    if !is_berge_free(h, std::slice::from_ref(f)) {
        return Err(BoundsError::Precondition("host contains a Berge copy of the pattern".into()));
    }
    if let Some(e) = h.edges().iter().find(|e| e.len() < s) {
        return Err(BoundsError::Precondition(format!("edge {:?} has fewer than {s} vertices", e.to_vec())));
    }
    if h.edge_count() > 0 && s <= r {
        return Err(BoundsError::Precondition("pattern must have more vertices than its uniformity".into()));
    }
    let alpha = if s > r && r >= 2 { Some(alpha_constant(r, s)?) } else { None };
    let blue = blue_edges(h, f);
    let mut edges = Vec::new();
    for &e in h.edges() {
        let total = binom(e.len(), r);
        let inside = blue.edges().iter().filter(|b| b.is_subset(e)).count() as i128;
        let bound = decaen_bound(e.len(), r, s)?;
        let non_blue = total - inside;
        let alpha = alpha.expect("s > r");
        let blue_share_holds = Rational::from_integer(inside) >= (Rational::from_integer(1) - alpha) * Rational::from_integer(total);
        edges.push(EdgeAudit {
            edge: e.to_vec(),
            blue: inside as u64,
            non_blue: non_blue as u64,
            bound,
            blue_share_holds,
            holds: Rational::from_integer(non_blue) <= bound.value && blue_share_holds,
        });
    }
    let violations = edges.iter().filter(|a| !a.holds).count();
    Ok(Claim1Report { r, s, alpha: alpha.as_ref().map(format_rational), edges, violations })
}

/// Copies of `F` in the `r`-shadow of `h`, `r = |f|`'s uniformity.
pub fn copies_in_shadow(h: &Hypergraph, f: &UniformHypergraph) -> u64 {
    count_sub_copies(f, &shadow(h, f.r()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowCopyReport {
    pub copies: u64,
    /// Copies with two of their edges inside a common edge of the host.
    pub with_shared_container: u64,
}

impl ShadowCopyReport {
    pub fn all_share(&self) -> bool {
        self.copies == self.with_shared_container
    }
}

/// Checks every copy of `F` in the shadow for two edges under one host
/// edge. Always true when the host is Berge-`F`-free: otherwise picking
/// any container per edge would give distinct containers.
pub fn shadow_copy_structure(h: &Hypergraph, f: &UniformHypergraph) -> ShadowCopyReport {
    let copies = enumerate_sub_copies(f, &shadow(h, f.r()));
    let shared = copies
        .iter()
        .filter(|copy| h.edges().iter().any(|&big| copy.iter().filter(|e| e.is_subset(big)).count() >= 2))
        .count();
    ShadowCopyReport { copies: copies.len() as u64, with_shared_container: shared as u64 }
}

/// Hypergraph families fed to the scaling experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    /// [`single_edge_example`].
    SingleEdge,
    /// `T^r(n, parts)`.
    Turan { r: usize, parts: usize },
    /// Random edges of size between `|V(F)|` and `max(|V(F)|, floor(sqrt n))`,
    /// each kept only if the result stays Berge-`F`-free.
    GreedyRandom { attempts_per_vertex: usize },
}

impl Generator {
    pub fn name(&self) -> String {
        match self {
            Generator::SingleEdge => "single-edge".into(),
            Generator::Turan { r, parts } => format!("turan-r{r}-p{parts}"),
            Generator::GreedyRandom { .. } => "greedy-random".into(),
        }
    }

    /// Whether every produced edge has size at most a fixed function of
    /// `F` and `sqrt n`.
    pub fn bounded_size(&self) -> bool {
        !matches!(self, Generator::SingleEdge)
    }

    pub fn generate(&self, n: usize, f: &UniformHypergraph, seed: u64) -> Result<Hypergraph> {
        match *self {
            Generator::SingleEdge => single_edge_example(n),
            Generator::Turan { r, parts } => Ok(turan_hypergraph(n, r, parts)?.into_base()),
            Generator::GreedyRandom { attempts_per_vertex } => Ok(greedy_random(n, f, seed, attempts_per_vertex * n)),
        }
    }
}

fn greedy_random(n: usize, f: &UniformHypergraph, seed: u64, attempts: usize) -> Hypergraph {
    let lo = f.n();
    let hi = lo.max((n as f64).sqrt().floor() as usize);
    let mut h = Hypergraph::empty(n);
    if lo > n {
        return h;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let size = rng.gen_range(lo..=hi.min(n));
        let mut e = VertexSet::EMPTY;
        while e.len() < size {
            e.insert(rng.gen_range(0..n));
        }
        if h.contains_edge(e) {
            continue;
        }
        let next = h.with_edge(e).expect("edge within range");
        let t = next.edge_index(e).expect("edge just added");
        if !has_berge_through(&next, f, t) {
            h = next;
        }
    }
    h
}

/// One generator run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentRow {
    pub generator: String,
    pub n: usize,
    pub r: u32,
    pub pattern: String,
    pub edge_count: usize,
    pub weight_sum: u128,
    #[serde(serialize_with = "serialize_rational")]
    pub ratio: Rational,
    /// `sum w(|h|) / n^r` when a weight table was supplied.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub weighted_ratio: Option<Rational>,
    pub seed: u64,
}

fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn serialize_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    q.as_ref().map(format_rational).serialize(s)
}

/// Inputs to [`scaling_experiment`].
#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub pattern: UniformHypergraph,
    pub pattern_name: String,
    /// Exponent in `sum |h|^r`.
    pub r: u32,
    pub generators: Vec<Generator>,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub weights: Option<WeightTable>,
    pub workers: usize,
}

fn row_seed(seed: u64, n: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(n as u64)
}

/// Rows ordered by generator, then `n`. Each generated hypergraph is
/// re-checked for Berge-freeness before it is measured.
pub fn scaling_experiment(plan: &ExperimentPlan) -> Result<Vec<ExperimentRow>> {
    if plan.n_min == 0 || plan.n_min > plan.n_max {
        return Err(invalid(format!("bad range {}..={}", plan.n_min, plan.n_max)));
    }
    let cells: Vec<(Generator, usize)> = plan.generators.iter().flat_map(|&g| (plan.n_min..=plan.n_max).map(move |n| (g, n))).collect();
    let rows = par::map_ordered(&cells, plan.workers, |&(g, n)| -> Result<ExperimentRow> {
        let h = g.generate(n, &plan.pattern, row_seed(plan.seed, n))?;
        if !is_berge_free(&h, std::slice::from_ref(&plan.pattern)) {
            return Err(BoundsError::GeneratorNotFree { generator: g.name(), n });
        }
        let ws = weight_sum(&h, plan.r)?;
        let scale = (n as i128).checked_pow(plan.r).ok_or(BoundsError::Overflow)?;
        let ratio = Rational::new(i128::try_from(ws).map_err(|_| BoundsError::Overflow)?, scale);
        let weighted_ratio = match &plan.weights {
            Some(w) => Some(Rational::new(weighted_sum(&h, w)? as i128, scale)),
            None => None,
        };
        Ok(ExperimentRow {
            generator: g.name(),
            n,
            r: plan.r,
            pattern: plan.pattern_name.clone(),
            edge_count: h.edge_count(),
            weight_sum: ws,
            ratio,
            weighted_ratio,
            seed: plan.seed,
        })
    });
    rows.into_iter().collect()
}

/// Writes rows as CSV with columns
/// `generator,n,r,pattern,edge_count,weight_sum,ratio,seed`; the ratio is
/// printed to six decimals.
pub fn write_experiment_csv(rows: &[ExperimentRow], out: impl io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["generator", "n", "r", "pattern", "edge_count", "weight_sum", "ratio", "seed"])?;
    for row in rows {
        let ratio = format!("{:.6}", *row.ratio.numer() as f64 / *row.ratio.denom() as f64);
        w.write_record([
            row.generator.clone(),
            row.n.to_string(),
            row.r.to_string(),
            row.pattern.clone(),
            row.edge_count.to_string(),
            row.weight_sum.to_string(),
            ratio,
            row.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Ceiling on `sum |h|^r / n^r` for Berge-`F`-free hosts whose edges all
/// have at least `s = |V(F)|` vertices, `r` the uniformity of `F`.
///
/// Each edge `h` has at least `(1 - alpha) C(|h|, r)` blue `r`-subsets,
/// and a blue `r`-set lies in at most `|E(F)| - 1` edges, so
/// `(1 - alpha) sum C(|h|, r) <= (|E(F)| - 1) C(n, r)`. Since
/// `m^r / C(m, r)` decreases for `m >= r`, `|h|^r <= s^r / C(s, r) * C(|h|, r)`,
/// and `C(n, r) <= n^r / r!`.
pub fn weight_ratio_ceiling(f: &UniformHypergraph) -> Result<Rational> {
    let (r, s) = (f.r(), f.n());
    let alpha = alpha_constant(r, s)?;
    let per_edge = Rational::new((s as i128).pow(r as u32), binom(s, r));
    let factorial: i128 = (1..=r as i128).product();
    let multiplicity = Rational::from_integer(f.edge_count() as i128 - 1);
    Ok(per_edge * multiplicity / ((Rational::from_integer(1) - alpha) * Rational::from_integer(factorial)))
}
