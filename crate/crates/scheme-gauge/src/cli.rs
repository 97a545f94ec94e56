//! Command-line front end: four subcommands over the library pipeline.
//!
//! * `analyze`  — relaxation value, gauge dual and verified certificates of
//!   one graph inside the scheme generated by its coherent closure.
//! * `gamma`    — quadratic-relaxation pair bounds for two edge-disjoint
//!   graphs on a common vertex set, with gauge classification.
//! * `max2sat`  — DIMACS CNF instance through the quadratic-form encoding
//!   and the scheme pipeline.
//! * `batch`    — one graph6 string per line, processed in parallel, with a
//!   gauge classification per row and a summary.
//!
//! All results go to stdout as JSON (JSONL/CSV for batch) and are
//! byte-stable for identical inputs and seeds; diagnostics go to stderr.
//! Exit codes: 0 success, 1 internal or numeric failure, 2 bad input.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds;
use crate::coherent::{coherent_closure, Membership};
use crate::error::{Error, Result};
use crate::graphs::{named_graph, parse_graph6, Graph};
use crate::linalg::gram_factor;
use crate::max2sat::{self, parse_dimacs};
use crate::oracles;
use crate::report::{
    AnalyzeReport, BatchRow, BatchSummary, ClosureSection, GammaReport, OracleSection,
    SchemeSection, Tagged, SCHEMA_VERSION,
};
use crate::rounding::{round_hyperplane, RoundingResult};
use crate::schemes::{scheme_from_configuration, scheme_from_drg, AssociationScheme};

const VALUE_TOL: f64 = 1e-7;

#[derive(Parser)]
#[command(
    name = "scheme-gauge",
    version,
    about = "Relaxation and gauge-dual bounds for graphs in association schemes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one graph: closure, scheme, relaxation value, gauge dual,
    /// certificates, optional oracles and hyperplane rounding.
    Analyze {
        /// Named graph (e.g. "petersen", "cycle(5)", "paley(9)") or a
        /// graph6 string.
        #[arg(long, conflicts_with = "file")]
        graph: Option<String>,
        /// File whose first nonempty line is a graph6 string.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Also run the exact brute-force oracles (size-gated).
        #[arg(long)]
        oracle: bool,
        /// Run randomized hyperplane rounding with this many trials.
        #[arg(long, value_name = "TRIALS")]
        round: Option<usize>,
        /// Seed for the rounding generator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Override the oracle size gates.
        #[arg(long)]
        force: bool,
    },
    /// Pair bounds for two edge-disjoint graphs on the same vertices.
    Gamma {
        /// First graph: named spec or graph6 string.
        #[arg(long)]
        graph: String,
        /// Second graph: "complement", "dist2" (distance-2 graph of the
        /// first), a named spec, or a graph6 string.
        #[arg(long)]
        second: String,
        /// Also run the exact quadratic-program oracle (size-gated).
        #[arg(long)]
        oracle: bool,
        /// Run randomized hyperplane rounding with this many trials.
        #[arg(long, value_name = "TRIALS")]
        round: Option<usize>,
        /// Seed for the rounding generator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Override the oracle size gates.
        #[arg(long)]
        force: bool,
    },
    /// Bound a MAX 2-SAT instance given as a DIMACS CNF file.
    Max2sat {
        /// Path to the DIMACS CNF file.
        cnf: PathBuf,
        /// Run randomized hyperplane rounding with this many trials.
        #[arg(long, value_name = "TRIALS")]
        round: Option<usize>,
        /// Seed for the rounding generator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Override the oracle size gates.
        #[arg(long)]
        force: bool,
    },
    /// Classify every graph6 line of a file (distance-regular graphs with
    /// their distance-2 graphs); parallel, deterministic output order.
    Batch {
        /// File with one graph6 string per line.
        file: PathBuf,
        /// Output format.
        #[arg(long, value_enum, default_value_t = BatchFormat::Jsonl)]
        format: BatchFormat,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum BatchFormat {
    Jsonl,
    Csv,
}

/// Parses arguments from the environment, runs the chosen subcommand and
/// returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.cmd {
        Cmd::Analyze { graph, file, oracle, round, seed, force } => {
            cmd_analyze(graph.as_deref(), file.as_deref(), oracle, round, seed, force)
        }
        Cmd::Gamma { graph, second, oracle, round, seed, force } => {
            cmd_gamma(&graph, &second, oracle, round, seed, force)
        }
        Cmd::Max2sat { cnf, round, seed, force } => cmd_max2sat(&cnf, round, seed, force),
        Cmd::Batch { file, format } => cmd_batch(&file, format),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Input problems exit 2; numeric or internal failures exit 1.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Graph6 { .. }
        | Error::InvalidGraph(_)
        | Error::NamedGraph(_)
        | Error::Dimacs { .. }
        | Error::TooLarge(_)
        | Error::InvalidArgument(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Accepts either a named-graph spec or a graph6 string.
fn resolve_graph(spec: &str) -> Result<Graph> {
    match named_graph(spec) {
        Ok(g) => Ok(g),
        Err(name_err) => parse_graph6(spec).map_err(|g6_err| {
            Error::InvalidArgument(format!(
                "`{spec}` is neither a named graph ({name_err}) nor graph6 ({g6_err})"
            ))
        }),
    }
}

fn load_graph(spec: Option<&str>, file: Option<&std::path::Path>) -> Result<Graph> {
    match (spec, file) {
        (Some(s), None) => resolve_graph(s),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| Error::InvalidArgument("file has no graph6 line".into()))?;
            parse_graph6(line)
        }
        _ => Err(Error::InvalidArgument(
            "provide exactly one of --graph or --file".into(),
        )),
    }
}

fn scheme_section(s: &AssociationScheme) -> SchemeSection {
    SchemeSection {
        classes: s.class_count(),
        degrees: s.degrees().to_vec(),
        p: s.p().iter().map(|row| row.iter().copied().map(crate::report::round_sig).collect()).collect(),
        multiplicities: s.multiplicities().iter().copied().map(crate::report::round_sig).collect(),
    }
}

/// Locates the scheme class index corresponding to closure class `c`.
fn scheme_class(s: &AssociationScheme, cfg: &crate::coherent::CoherentConfiguration, c: usize) -> Result<usize> {
    for u in 0..s.n() {
        for v in 0..s.n() {
            if cfg.color(u, v) == c {
                return Ok(s.color(u, v));
            }
        }
    }
    Err(Error::NotScheme("empty closure class".into()))
}

/// Writes one line to stdout; a closed pipe (e.g. piping into `head`) is
/// treated as a normal end of output.
fn emit(line: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{line}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        other => other.map_err(Error::Io),
    }
}

fn print_json<T: Serialize>(doc: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| Error::InvalidArgument(format!("serialization failed: {e}")))?;
    emit(&text)
}

fn cmd_analyze(
    spec: Option<&str>,
    file: Option<&std::path::Path>,
    oracle: bool,
    round: Option<usize>,
    seed: u64,
    force: bool,
) -> Result<()> {
    let g = load_graph(spec, file)?;
    let label = spec.map_or_else(|| crate::graphs::to_graph6(&g), str::to_owned);
    let a = g.adjacency_bin();
    let cfg = coherent_closure(&[a.clone()])?;
    let flags = cfg.classify()?;
    let membership = cfg.membership(&a)?;

    let mut report = AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        graph: label,
        n: g.n(),
        edges: g.edge_count(),
        closure: ClosureSection {
            classes: cfg.class_count(),
            fibers: cfg.fibers().len(),
            homogeneous: flags.homogeneous,
            commutative: flags.commutative,
            symmetric: flags.symmetric,
            membership: match membership {
                Membership::Belongs(_) => "belongs".into(),
                Membership::Splits(_) => "splits".into(),
                Membership::Neither => "neither".into(),
            },
        },
        scheme: None,
        bounds_unavailable: None,
        eta: None,
        eta_dual: None,
        eta_dual_lp: None,
        product: None,
        product_equals_edges: None,
        certificates_verified: None,
        oracle: None,
        fcc_ratio: None,
        rounding: None,
    };

    let mut certs = None;
    if !(flags.homogeneous && flags.commutative && flags.symmetric) {
        report.bounds_unavailable =
            Some("coherent closure is not a symmetric commutative scheme".into());
    } else {
        let s = scheme_from_configuration(&cfg)?;
        report.scheme = Some(scheme_section(&s));
        match membership {
            Membership::Belongs(c) if g.edge_count() > 0 => {
                let i = scheme_class(&s, &cfg, c)?;
                match bounds::eta_scheme(&s, i) {
                    Ok(cs) => {
                        let dual = bounds::eta_dual_scheme(&s, i)?;
                        let (equal, product) = bounds::eta_product_check(&s, i)?;
                        report.eta = Some(Tagged::new(cs.eta, VALUE_TOL));
                        report.eta_dual = Some(Tagged::new(dual.value, VALUE_TOL));
                        report.eta_dual_lp = Some(Tagged::new(dual.lp_value, VALUE_TOL));
                        report.product = Some(Tagged::new(product, VALUE_TOL));
                        report.product_equals_edges = Some(equal);
                        report.certificates_verified = Some(true);
                        certs = Some(cs);
                    }
                    Err(Error::Disconnected) => {
                        report.bounds_unavailable = Some("graph is disconnected".into());
                    }
                    Err(e) => return Err(e),
                }
            }
            Membership::Belongs(_) => {
                report.bounds_unavailable = Some("graph has no edges".into());
            }
            _ => {
                report.bounds_unavailable =
                    Some("adjacency matrix is not a single scheme class".into());
            }
        }
    }

    if oracle {
        let mut section = OracleSection { mc: None, fcc: None, qp: None, skipped: Vec::new() };
        let mc_limit = if force { usize::MAX } else { oracles::MAX_CUT_VERTICES };
        match oracles::maxcut_bruteforce_limited(&g, mc_limit) {
            Ok((mc, _)) => section.mc = Some(mc),
            Err(Error::TooLarge(_)) => section.skipped.push("maxcut skipped (size)".into()),
            Err(e) => return Err(e),
        }
        let fcc_limit = if force { usize::MAX } else { oracles::MAX_FCC_VERTICES };
        match oracles::fcc_lp_limited(&g, fcc_limit) {
            Ok(sol) => {
                if let Some(dual) = &report.eta_dual {
                    report.fcc_ratio = Some(Tagged::new(sol.value / dual.value, VALUE_TOL));
                }
                section.fcc = Some(Tagged::new(sol.value, VALUE_TOL));
            }
            Err(Error::TooLarge(_)) => section.skipped.push("fcc skipped (size)".into()),
            Err(e) => return Err(e),
        }
        report.oracle = Some(section);
    }

    if let Some(trials) = round {
        match &certs {
            Some(cs) => {
                let vectors = gram_factor(&cs.m, 1e-6)?;
                report.rounding =
                    Some(round_hyperplane(&vectors, &g.laplacian(), None, trials, seed)?);
            }
            None => {
                eprintln!("note: rounding skipped (no relaxation solution available)");
            }
        }
    }

    print_json(&report)
}

fn cmd_gamma(
    spec: &str,
    second: &str,
    oracle: bool,
    round: Option<usize>,
    seed: u64,
    force: bool,
) -> Result<()> {
    let g1 = resolve_graph(spec)?;
    let g2 = match second {
        "complement" => g1.complement(),
        "dist2" => {
            let ds = g1.distance_graphs()?;
            // distance_graphs is [G_1, ..., G_diam]
            ds.get(1)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument("graph has diameter < 2".into()))?
        }
        other => resolve_graph(other)?,
    };
    if g2.n() != g1.n() {
        return Err(Error::InvalidArgument(format!(
            "vertex counts differ: {} vs {}",
            g1.n(),
            g2.n()
        )));
    }
    if g1.edges().iter().any(|&(u, v)| g2.has_edge(u, v)) {
        return Err(Error::InvalidArgument("graphs share an edge".into()));
    }

    let mut report = GammaReport {
        schema_version: SCHEMA_VERSION,
        graph: spec.to_owned(),
        second: second.to_owned(),
        n: g1.n(),
        edges_first: g1.edge_count(),
        edges_second: g2.edge_count(),
        scheme: None,
        bounds_unavailable: None,
        gamma: None,
        gamma_dual: None,
        gamma_dual_method: None,
        product: None,
        pair_edges: None,
        classification: None,
        oracle: None,
        rounding: None,
    };

    let mut pair = None;
    if g1.edge_count() == 0 || g2.edge_count() == 0 {
        report.bounds_unavailable = Some("a graph of the pair is edgeless".into());
    } else {
        let (a1, a2) = (g1.adjacency_bin(), g2.adjacency_bin());
        let cfg = coherent_closure(&[a1.clone(), a2.clone()])?;
        let flags = cfg.classify()?;
        if !(flags.homogeneous && flags.commutative && flags.symmetric) {
            report.bounds_unavailable =
                Some("coherent closure is not a symmetric commutative scheme".into());
        } else {
            let s = scheme_from_configuration(&cfg)?;
            report.scheme = Some(scheme_section(&s));
            let memb = |a: &crate::graphs::BinMatrix| -> Result<Option<usize>> {
                Ok(match cfg.membership(a)? {
                    Membership::Belongs(c) => Some(scheme_class(&s, &cfg, c)?),
                    _ => None,
                })
            };
            match (memb(&a1)?, memb(&a2)?) {
                (Some(i1), Some(i2)) => {
                    let class = bounds::gauge_classification(&s, i1, i2)?;
                    // closed form applies when the first graph is
                    // distance-regular and the second is its distance-2 graph
                    let closed = scheme_from_drg(&g1).is_ok()
                        && g1
                            .distance_graphs()
                            .ok()
                            .and_then(|ds| ds.get(1).cloned())
                            .is_some_and(|d2| d2.adjacency_bin() == a2);
                    let (dual, method) = if closed {
                        (bounds::gamma_dual_drg(&g1)?.value, "closed-form")
                    } else {
                        (class.gamma_dual, "lp")
                    };
                    report.gamma = Some(Tagged::new(class.gamma, VALUE_TOL));
                    report.gamma_dual = Some(Tagged::new(dual, VALUE_TOL));
                    report.gamma_dual_method = Some(method.into());
                    report.product = Some(Tagged::new(class.product, VALUE_TOL));
                    report.pair_edges = Some(class.pair_edges);
                    report.classification = Some(class.class);
                    pair = Some((s, i1, i2));
                }
                _ => {
                    report.bounds_unavailable =
                        Some("an adjacency matrix is not a single scheme class".into());
                }
            }
        }
    }

    if oracle {
        let mut section = OracleSection { mc: None, fcc: None, qp: None, skipped: Vec::new() };
        let limit = if force { usize::MAX } else { oracles::MAX_CUT_VERTICES };
        match oracles::qp_bruteforce_limited(&g1, &g2, limit) {
            Ok((qp, _)) => section.qp = Some(qp),
            Err(Error::TooLarge(_)) => section.skipped.push("qp skipped (size)".into()),
            Err(e) => return Err(e),
        }
        report.oracle = Some(section);
    }

    if let Some(trials) = round {
        match &pair {
            Some((s, i1, i2)) => {
                let (m, _) = bounds::gamma_primal_point(s, *i1, *i2)?;
                let vectors = gram_factor(&m, 1e-6)?;
                report.rounding = Some(round_hyperplane(
                    &vectors,
                    &g1.laplacian(),
                    Some(&g2.signless_laplacian()),
                    trials,
                    seed,
                )?);
            }
            None => eprintln!("note: rounding skipped (no relaxation solution available)"),
        }
    }

    print_json(&report)
}

/// Document wrapping the pipeline report with schema version, the induced
/// bound on satisfied clauses, and optional rounding.
#[derive(Serialize)]
struct Max2SatDocument {
    schema_version: u32,
    #[serde(flatten)]
    pipeline: max2sat::PipelineReport,
    /// gamma_scaled + constant: upper bound on satisfiable clauses.
    #[serde(skip_serializing_if = "Option::is_none")]
    clause_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rounding: Option<RoundingResult>,
}

fn cmd_max2sat(path: &std::path::Path, round: Option<usize>, seed: u64, force: bool) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    let inst = parse_dimacs(&text)?;
    let limit = if force { 63 } else { oracles::MAX_SAT_VARS };
    let pipeline = max2sat::bound_pipeline(&inst, limit)?;

    let clause_bound = pipeline
        .gamma_scaled
        .map(|g| crate::report::round_sig(g + pipeline.constant));
    let mut rounding = None;
    if let Some(trials) = round {
        if pipeline.bounds_unavailable.is_none() {
            let q = max2sat::encode(&inst);
            let gp = max2sat::to_graph_pair(&q)?;
            let b = max2sat::scheme_pair_bounds(&gp)?;
            let (m, _) = bounds::gamma_primal_point(&b.scheme, b.i1, b.i2)?;
            let vectors = gram_factor(&m, 1e-6)?;
            rounding = Some(round_hyperplane(
                &vectors,
                &gp.g1.laplacian(),
                Some(&gp.g2.signless_laplacian()),
                trials,
                seed,
            )?);
        } else {
            eprintln!("note: rounding skipped (no relaxation solution available)");
        }
    }

    print_json(&Max2SatDocument {
        schema_version: SCHEMA_VERSION,
        pipeline,
        clause_bound,
        rounding,
    })
}

fn batch_row(index: usize, line: &str) -> BatchRow {
    let mut row = BatchRow {
        index,
        graph6: line.to_owned(),
        n: None,
        edges: None,
        gamma: None,
        gamma_dual: None,
        product: None,
        pair_edges: None,
        classification: None,
        error: None,
    };
    let run = || -> Result<(usize, usize, bounds::GaugeClassification)> {
        let g = parse_graph6(line)?;
        let (s, _) = scheme_from_drg(&g)?;
        if s.class_count() < 2 {
            return Err(Error::InvalidArgument("diameter < 2".into()));
        }
        Ok((g.n(), g.edge_count(), bounds::gauge_classification(&s, 1, 2)?))
    };
    match run() {
        Ok((n, edges, class)) => {
            row.n = Some(n);
            row.edges = Some(edges);
            row.gamma = Some(Tagged::new(class.gamma, VALUE_TOL));
            row.gamma_dual = Some(Tagged::new(class.gamma_dual, VALUE_TOL));
            row.product = Some(Tagged::new(class.product, VALUE_TOL));
            row.pair_edges = Some(class.pair_edges);
            row.classification = Some(class.class);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

fn batch_threads(jobs: usize) -> usize {
    let requested = std::env::var("SCHEME_GAUGE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
    requested.min(jobs).max(1)
}

fn cmd_batch(path: &std::path::Path, format: BatchFormat) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    let lines: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect();

    let rows: Mutex<Vec<Option<BatchRow>>> = Mutex::new(vec![None; lines.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..batch_threads(lines.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= lines.len() {
                    break;
                }
                let row = batch_row(i, &lines[i]);
                rows.lock().unwrap()[i] = Some(row);
            });
        }
    });
    let rows: Vec<BatchRow> = rows.into_inner().unwrap().into_iter().flatten().collect();

    let summary = BatchSummary {
        schema_version: SCHEMA_VERSION,
        graphs: rows.len(),
        equality: rows
            .iter()
            .filter(|r| r.classification == Some(bounds::GaugeClass::Equality))
            .count(),
        strict: rows
            .iter()
            .filter(|r| r.classification == Some(bounds::GaugeClass::Strict))
            .count(),
        failed: rows.iter().filter(|r| r.error.is_some()).count(),
    };

    match format {
        BatchFormat::Jsonl => {
            for row in &rows {
                let line = serde_json::to_string(row)
                    .map_err(|e| Error::InvalidArgument(format!("serialization: {e}")))?;
                emit(&line)?;
            }
            let line = serde_json::to_string(&summary)
                .map_err(|e| Error::InvalidArgument(format!("serialization: {e}")))?;
            emit(&line)?;
        }
        BatchFormat::Csv => {
            emit(BatchRow::csv_header())?;
            for row in &rows {
                emit(&row.to_csv())?;
            }
            emit(&format!(
                "# graphs={} equality={} strict={} failed={}",
                summary.graphs, summary.equality, summary.strict, summary.failed
            ))?;
        }
    }
    Ok(())
}
