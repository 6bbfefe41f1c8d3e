//! `bergekit` command line. Exit codes: 0 success, 1 a check failed (or,
//! for `detect`, no copy was found), 2 usage or input error.

mod report;

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use bergekit::berge::{enumerate_berge_copies, find_berge, is_berge_free};
use bergekit::boundslab::{
    alpha_constant, claim1_audit, decaen_bound, format_rational, scaling_experiment, single_edge_example, weight_ratio_ceiling, write_experiment_csv, ExperimentPlan, Generator, WeightTable,
};
use bergekit::extremal::{ex_berge, ex_generalized, ex_uniform, ramsey_number, verify_expansion_chain, verify_sandwich, ExtremalOptions, ExtremalResult, SearchBudget};
use bergekit::hypercore::format::{load_hypergraph, load_uniform, write_hg, write_rbhg};
use bergekit::hypercore::{
    canonical_form, clique_replacement, complete_uniform, count_cliques, count_sub_copies, expansion, shadow, star_construction, turan_hypergraph, Hypergraph, UniformHypergraph,
};
use bergekit::matchdecomp::{audit_exhaustive, audit_random, redblue_reduction, AuditReport};
use clap::{Args, Parser, Subcommand};
use report::Recorder;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bergekit", version, about = "Exact computations on Berge hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a standard construction as an .hg file.
    #[command(subcommand)]
    Construct(Construct),
    /// Write the r-shadow of a hypergraph.
    Shadow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for a Berge copy of a pattern; exit 0 if found, 1 if not.
    Detect {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Where to write the embedding as JSON.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Count copies of a pattern, or of K_s, in a host.
    Count {
        #[arg(long)]
        host: PathBuf,
        #[arg(long, conflicts_with = "clique", required_unless_present = "clique")]
        pattern: Option<PathBuf>,
        #[arg(long)]
        clique: Option<usize>,
    },
    /// Exact extremal numbers.
    #[command(subcommand)]
    Ex(Ex),
    /// Diagonal two-color Ramsey number of a pattern.
    Ramsey {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value_t = 6)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check an inequality or structural statement exactly.
    #[command(subcommand)]
    Verify(Verify),
    /// Closed-form bounds as exact rationals.
    #[command(subcommand)]
    Bounds(Bounds),
    /// Weight-scaling runs written as CSV.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand)]
enum Construct {
    /// Rainbow r-sets over a balanced partition into `parts` classes.
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        parts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pad every edge of a pattern to size r with fresh vertices.
    Expansion {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All r-subsets of s vertices.
    Complete {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All r-sets containing the vertices 0..t.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One edge holding every vertex.
    SingleEdge {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One r-edge per r-clique of a uniform input.
    CliqueReplacement {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    max_time: Option<f64>,
    /// Allow sizes outside the supported exact grid.
    #[arg(long)]
    force: bool,
    /// Report every extremal class, not just one.
    #[arg(long)]
    all_witnesses: bool,
}

impl SearchArgs {
    fn options(&self) -> anyhow::Result<ExtremalOptions> {
        if self.threads == 0 {
            bail!("--threads must be positive");
        }
        let mut budget = SearchBudget::with_workers(self.threads);
        if let Some(m) = self.max_nodes {
            budget.max_nodes = m;
        }
        if let Some(t) = self.max_time {
            budget.max_time = Some(Duration::try_from_secs_f64(t).context("--max-time")?);
        }
        Ok(ExtremalOptions { budget, all_witnesses: self.all_witnesses, force: self.force })
    }
}

#[derive(Subcommand)]
enum Ex {
    /// Most edges in an F-free k-graph.
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Most edges in an r-graph without a Berge copy of F.
    Berge {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Most copies of K_s^(k) in an F-free k-graph.
    Generalized {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// ex_k(n, K_r, F) <= ex_r(n, Berge-F) <= ex_k(n, K_r, F) + ex_k(n, F).
    Sandwich {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// ex_r(n, Berge-F0) <= ex_r(n, Berge-F0^{+k}) <= ex_r(n, F0^{+r}).
    ExpansionChain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Matching partitions on random or exhaustively listed bipartite graphs.
    Lemma5 {
        /// Number of seeded random graphs.
        #[arg(long)]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        max_side: usize,
        /// Every graph with |A| <= A and |B| <= B, given as `A,B`.
        #[arg(long, value_parser = parse_pair)]
        exhaustive: Option<(usize, usize)>,
    },
    /// Red-blue reduction of an r-graph onto its k-shadow.
    Lemma4 {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// Also check the colored graph is free of this k-graph.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Write the colored graph as .rbhg.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-edge blue-share audit of a Berge-F-free host.
    Claim1 {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Berge_k copies of F equal Berge_k copies of its Berge_l copies.
    Observation {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum Bounds {
    /// Clique bound on ex_r(n, K_s^(r)).
    Decaen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Density constant alpha(r, s).
    Alpha {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Ceiling on sum |h|^r / n^r for hosts with edges of size >= |V(F)|.
    Ceiling {
        #[arg(long)]
        pattern: PathBuf,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Rows of sum |h|^r / n^r for Berge-F-free generator outputs.
    Weightsum {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        csv: PathBuf,
        /// `single-edge`, `greedy` or `turan:R:P`; repeatable.
        #[arg(long = "generator", default_value = "greedy", value_parser = parse_generator)]
        generators: Vec<Generator>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV with columns m,w.
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_generator(s: &str) -> Result<Generator, String> {
    match s.split(':').collect::<Vec<_>>().as_slice() {
        ["single-edge"] => Ok(Generator::SingleEdge),
        ["greedy"] => Ok(Generator::GreedyRandom { attempts_per_vertex: 8 }),
        ["turan", r, p] => Ok(Generator::Turan { r: r.parse().map_err(|e| format!("{e}"))?, parts: p.parse().map_err(|e| format!("{e}"))? }),
        _ => Err(format!("unknown generator {s:?}")),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pattern(rec: &mut Recorder, path: &Path) -> anyhow::Result<UniformHypergraph> {
    rec.input(path)?;
    Ok(load_uniform(path)?)
}

fn host(rec: &mut Recorder, path: &Path) -> anyhow::Result<Hypergraph> {
    rec.input(path)?;
    Ok(load_hypergraph(path)?)
}

/// Emits the report; exit 0 iff every assertion passed.
fn conclude(rec: Recorder, outputs: Value) -> anyhow::Result<u8> {
    let report = rec.finish(outputs);
    print_json(&report)?;
    Ok(if report.passed { 0 } else { 1 })
}

fn construct(cmd: Construct) -> anyhow::Result<u8> {
    let (h, out) = match cmd {
        Construct::Turan { n, r, parts, out } => (turan_hypergraph(n, r, parts)?.into_base(), out),
        Construct::Expansion { pattern, r, out } => (expansion(&load_uniform(&pattern)?, r)?.into_base(), out),
        Construct::Complete { s, r, out } => (complete_uniform(s, r)?.into_base(), out),
        Construct::Star { n, r, t, out } => (star_construction(n, r, t)?.into_base(), out),
        Construct::SingleEdge { n, out } => (single_edge_example(n)?, out),
        Construct::CliqueReplacement { input, r, out } => (clique_replacement(&load_uniform(&input)?, r)?.into_base(), out),
    };
    write_or_print(out.as_deref(), &write_hg(&h))?;
    Ok(0)
}

fn extremal_report(mut rec: Recorder, result: ExtremalResult) -> anyhow::Result<u8> {
    rec.check("exhausted", result.exhausted, format!("{} nodes", result.nodes));
    conclude(rec, serde_json::to_value(&result)?)
}

fn ex(cmd: Ex, mut rec: Recorder) -> anyhow::Result<u8> {
    let result = match cmd {
        Ex::Uniform { n, k, pattern: p, search } => ex_uniform(n, k, &pattern(&mut rec, &p)?, &search.options()?)?,
        Ex::Berge { n, r, pattern: p, search } => ex_berge(n, r, &pattern(&mut rec, &p)?, &search.options()?)?,
        Ex::Generalized { n, k, s, pattern: p, search } => ex_generalized(n, k, s, &pattern(&mut rec, &p)?, &search.options()?)?,
    };
    extremal_report(rec, result)
}

fn audit_json(report: &AuditReport) -> Value {
    json!({
        "graphs": report.graphs,
        "certified": report.certified,
        "no_certificate": report.no_certificate,
        "unresolved": report.unresolved,
        "structural_failures": report.structural_failures,
        "first_failure": report.first_failure,
    })
}

fn verify(cmd: Verify, mut rec: Recorder) -> anyhow::Result<u8> {
    match cmd {
        Verify::Sandwich { n, k, r, pattern: p, search } => {
            let f = pattern(&mut rec, &p)?;
            let rep = verify_sandwich(n, k, r, &f, &search.options()?)?;
            let (g, b, u) = (rep.generalized.value, rep.berge.value, rep.uniform.value);
            rec.check("exhausted", rep.exhausted, "all three searches completed");
            rec.check("lower", rep.lower_holds, format!("{g} <= {b}"));
            rec.check("upper", rep.upper_holds, format!("{b} <= {g} + {u}"));
            rec.check("construction_berge_free", rep.construction_berge_free, format!("{} edges", rep.construction_edges));
            conclude(rec, serde_json::to_value(&rep)?)
        }
        Verify::ExpansionChain { n, r, k, pattern: p, search } => {
            let f0 = pattern(&mut rec, &p)?;
            let rep = verify_expansion_chain(n, r, k, &f0, &search.options()?)?;
            rec.check("exhausted", rep.exhausted, "all three searches completed");
            rec.check("left", rep.left_holds, format!("{} <= {}", rep.left.value, rep.middle.value));
            rec.check("right", rep.right_holds, format!("{} <= {}", rep.middle.value, rep.right.value));
            conclude(rec, serde_json::to_value(&rep)?)
        }
        Verify::Lemma5 { random, seed, max_side, exhaustive } => {
            let mut outputs = serde_json::Map::new();
            if random.is_none() && exhaustive.is_none() {
                bail!("give --random N and/or --exhaustive A,B");
            }
            for (label, report) in [
                ("exhaustive", exhaustive.map(|(a, b)| audit_exhaustive(a, b))),
                ("random", random.map(|count| audit_random(count, seed, max_side))),
            ] {
                let Some(report) = report else { continue };
                rec.check(&format!("{label}_structural"), report.structural_failures == 0, format!("{} structural failures", report.structural_failures));
                rec.check(
                    &format!("{label}_certified"),
                    report.all_certified(),
                    format!("{} of {} graphs certified, {} without certificate, {} unresolved", report.certified, report.graphs, report.no_certificate, report.unresolved),
                );
                outputs.insert(label.into(), audit_json(&report));
            }
            conclude(rec, Value::Object(outputs))
        }
        Verify::Lemma4 { host: h, k, r, pattern: p, out } => {
            let h0 = host(&mut rec, &h)?;
            let r0 = h0.uniformity().ok_or_else(|| anyhow!("host must be a nonempty uniform hypergraph"))?;
            let h0 = UniformHypergraph::new(h0, r0)?;
            let f = p.as_deref().map(|p| pattern(&mut rec, p)).transpose()?;
            if let Some(f) = &f {
                if !is_berge_free(h0.base(), std::slice::from_ref(f)) {
                    bail!("host contains a Berge copy of the pattern");
                }
            }
            let (colored, rep) = redblue_reduction(&h0, k, r)?;
            rec.check("g_at_least_edges", rep.g_at_least_edges, format!("g = {} against {} edges", rep.g_value, rep.edges));
            rec.check("a2_subsets_blue", rep.a2_subsets_blue, "k-subsets of A2 edges are blue");
            if let Some(f) = &f {
                let copies = count_sub_copies(f, colored.base().base());
                rec.check("colored_pattern_free", copies == 0, format!("{copies} copies"));
            }
            if let Some(out) = out {
                std::fs::write(&out, write_rbhg(&colored)).with_context(|| format!("writing {}", out.display()))?;
            }
            conclude(rec, serde_json::to_value(&rep)?)
        }
        Verify::Claim1 { host: h, pattern: p } => {
            let h = host(&mut rec, &h)?;
            let f = pattern(&mut rec, &p)?;
            let rep = claim1_audit(&h, &f)?;
            rec.check("violations", rep.passed(), format!("{} of {} edges violate", rep.violations, rep.edges.len()));
            conclude(rec, serde_json::to_value(&rep)?)
        }
        Verify::Observation { pattern: p, l, k } => {
            let f = pattern(&mut rec, &p)?;
            if !(f.r() <= l && l <= k) {
                bail!("need r <= l <= k");
            }
            let forms = |hs: Vec<Hypergraph>| -> HashSet<Hypergraph> { hs.into_iter().map(|h| canonical_form(&h).form).collect() };
            let direct = forms(enumerate_berge_copies(&f, k)?);
            let middle = enumerate_berge_copies(&f, l)?;
            let mut composed = HashSet::new();
            for g in &middle {
                composed.extend(forms(enumerate_berge_copies(&UniformHypergraph::new(g.clone(), l)?, k)?));
            }
            rec.check("equal", direct == composed, format!("{} direct, {} composed", direct.len(), composed.len()));
            conclude(rec, json!({ "berge_l": middle.len(), "berge_k": direct.len(), "composed": composed.len() }))
        }
    }
}

fn bounds(cmd: Bounds) -> anyhow::Result<u8> {
    match cmd {
        Bounds::Decaen { n, r, s } => println!("{}", decaen_bound(n, r, s)?),
        Bounds::Alpha { r, s } => println!("{}", format_rational(&alpha_constant(r, s)?)),
        Bounds::Ceiling { pattern } => println!("{}", format_rational(&weight_ratio_ceiling(&load_uniform(&pattern)?)?)),
    }
    Ok(0)
}

fn experiment(cmd: Experiment, mut rec: Recorder) -> anyhow::Result<u8> {
    let Experiment::Weightsum { pattern: p, r, n_min, n_max, csv, generators, seed, weights, threads } = cmd;
    let f = pattern(&mut rec, &p)?;
    let weights = match weights {
        Some(w) => {
            rec.input(&w)?;
            Some(WeightTable::load(&w)?)
        }
        None => None,
    };
    let name = p.file_stem().map_or_else(|| "pattern".into(), |s| s.to_string_lossy().into_owned());
    let plan = ExperimentPlan { pattern: f, pattern_name: name, r, generators, n_min, n_max, seed, weights, workers: threads.max(1) };
    let rows = scaling_experiment(&plan)?;
    let file = std::fs::File::create(&csv).with_context(|| format!("creating {}", csv.display()))?;
    write_experiment_csv(&rows, file)?;
    rec.check("rows", !rows.is_empty(), format!("{} rows written to {}", rows.len(), csv.display()));
    conclude(rec, serde_json::to_value(&rows)?)
}

fn run(cli: Cli, args: Vec<String>) -> anyhow::Result<u8> {
    let mut rec = Recorder::new(args);
    match cli.command {
        Command::Construct(c) => construct(c),
        Command::Shadow { input, r, out } => {
            let h = load_hypergraph(&input)?;
            write_or_print(out.as_deref(), &write_hg(shadow(&h, r).base()))?;
            Ok(0)
        }
        Command::Detect { host: h, pattern: p, witness } => {
            let h = host(&mut rec, &h)?;
            let f = pattern(&mut rec, &p)?;
            let found = find_berge(&h, &f);
            if let (Some(w), Some(path)) = (&found, &witness) {
                std::fs::write(path, serde_json::to_string_pretty(w)?).with_context(|| format!("writing {}", path.display()))?;
            }
            rec.check("berge_copy_found", found.is_some(), if found.is_some() { "copy found" } else { "host is Berge-free" });
            conclude(rec, json!({ "found": found.is_some(), "witness": found }))
        }
        Command::Count { host: h, pattern: p, clique } => {
            let h = host(&mut rec, &h)?;
            let outputs = match (p, clique) {
                (Some(p), _) => {
                    let f = pattern(&mut rec, &p)?;
                    json!({ "copies": count_sub_copies(f.base(), &h) })
                },
                (None, Some(s)) => {
                    let r = h.uniformity().ok_or_else(|| anyhow!("clique counting needs a nonempty uniform host"))?;
                    json!({ "cliques": count_cliques(&UniformHypergraph::new(h, r)?, s)? })
                }
                (None, None) => bail!("give --pattern or --clique"),
            };
            conclude(rec, outputs)
        }
        Command::Ex(cmd) => ex(cmd, rec),
        Command::Ramsey { pattern: p, cap, threads } => {
            let f = pattern(&mut rec, &p)?;
            let result = ramsey_number(&f, cap, threads.max(1))?;
            let valid = result.witness.as_ref().is_none_or(|w| w.validate(&f));
            rec.check("witness_valid", valid, "stored coloring has no monochromatic copy");
            conclude(rec, serde_json::to_value(&result)?)
        }
        Command::Verify(cmd) => verify(cmd, rec),
        Command::Bounds(cmd) => bounds(cmd),
        Command::Experiment(cmd) => experiment(cmd, rec),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(cli, args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
