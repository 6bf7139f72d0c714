//! `qwalk`: build graphs from expressions, walk them, and check transfer
//! claims.
//!
//! Exit codes: 0 on success, 1 when a checked claim fails (a FAIL line in
//! `verify-paper`, a missing transfer under `pst --expect-pst`, or a
//! reduction drifting past tolerance), 2 on usage or parse errors.

mod expr;
mod output;

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use qwalk_core::reductions::{
    cartesian_amplitude, circulant_join_amplitude, join_amplitude, self_join_amplitude,
};
use qwalk_core::walk::{amplitude, decompose};
use qwalk_core::{verify, Amplitude, Graph};

use expr::Expr;
use output::{
    csv_line, float_repr, to_json, AmplitudeRecord, EigenvalueRecord, ExportReport, Format,
    OutcomeRecord, PstReport, ReduceReport, SpectrumReport, VerifyReport,
};

#[derive(Parser)]
#[command(name = "qwalk", version, about = "continuous-time quantum walks on structured graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Fidelity and comparison tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for the randomized corpus in verify-paper.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sorted spectrum with integrality flags.
    Spectrum { expr: String },
    /// Check transfer fidelity between two vertices at a time, or search
    /// a time window for it.
    Pst {
        expr: String,
        a: usize,
        b: usize,
        #[command(flatten)]
        time: TimeSpec,
        /// Exit with status 1 when no transfer is found.
        #[arg(long)]
        expect_pst: bool,
        /// Grid resolution for --search.
        #[arg(long, default_value_t = 1024)]
        grid: usize,
    },
    /// Re-check every recorded claim and print one PASS/FAIL line each.
    VerifyPaper {
        /// Keep claims whose id or tag starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Write the graph as an edge list file.
    Export { expr: String, path: PathBuf },
    /// Evaluate the top operator's closed-form amplitude and compare it
    /// against the brute-force walk on the assembled graph.
    Reduce {
        expr: String,
        a: usize,
        b: usize,
        /// Time: decimal or pi form (pi/2, 3pi/4, pi/sqrt2, 2pi/Delta).
        #[arg(long)]
        t: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TimeSpec {
    /// Time to check: decimal or pi form (pi/2, 3pi/4, pi/sqrt2, 2pi/Delta).
    #[arg(long)]
    t: Option<String>,
    /// Search (0, TMAX] and refine near-unit peaks instead.
    #[arg(long, value_name = "TMAX")]
    search: Option<f64>,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Spectrum { expr } => cmd_spectrum(cli, expr),
        Command::Pst { expr, a, b, time, expect_pst, grid } => {
            cmd_pst(cli, expr, *a, *b, time, *expect_pst, *grid)
        }
        Command::VerifyPaper { filter } => cmd_verify(cli, filter.as_deref()),
        Command::Export { expr, path } => cmd_export(cli, expr, path),
        Command::Reduce { expr, a, b, t } => cmd_reduce(cli, expr, *a, *b, t),
    }
}

fn parse_expr(text: &str) -> anyhow::Result<Expr> {
    expr::parse(text).map_err(|e| anyhow::anyhow!("{e}"))
}

fn build(text: &str) -> anyhow::Result<(Expr, Graph)> {
    let parsed = parse_expr(text)?;
    let graph = expr::eval(&parsed)?;
    Ok((parsed, graph))
}

fn cmd_spectrum(cli: &Cli, text: &str) -> anyhow::Result<i32> {
    let (parsed, graph) = build(text)?;
    let spectrum = decompose(&graph);
    let eigenvalues: Vec<EigenvalueRecord> = spectrum
        .eigenvalues()
        .iter()
        .map(|&value| EigenvalueRecord { value, integer: (value - value.round()).abs() <= cli.tol })
        .collect();
    let report = SpectrumReport {
        expr: parsed.to_string(),
        order: graph.order(),
        integral: eigenvalues.iter().all(|e| e.integer),
        eigenvalues,
    };
    match cli.format {
        Format::Json => print!("{}", to_json(&report)),
        Format::Csv => {
            print!("{}", csv_line(&["index", "value", "integer"]));
            for (i, e) in report.eigenvalues.iter().enumerate() {
                print!(
                    "{}",
                    csv_line(&[i.to_string(), float_repr(e.value), e.integer.to_string()])
                );
            }
        }
        Format::Plain => {
            println!(
                "{}: {} vertices, spectrum {}",
                report.expr,
                report.order,
                if report.integral { "integral" } else { "not integral" }
            );
            for e in &report.eigenvalues {
                println!("  {} {}", float_repr(e.value), if e.integer { "integer" } else { "nonintegral" });
            }
        }
    }
    Ok(0)
}

fn cmd_pst(
    cli: &Cli,
    text: &str,
    a: usize,
    b: usize,
    time: &TimeSpec,
    expect_pst: bool,
    grid: usize,
) -> anyhow::Result<i32> {
    let (parsed, graph) = build(text)?;
    let (mode, t, verdict) = if let Some(spec) = &time.t {
        let t = expr::resolve_time(spec, &parsed)?;
        let verdict = qwalk_core::pst::check_pst_with_tolerance(&graph, a, b, t, cli.tol)?;
        ("check", t, verdict)
    } else {
        let t_max = time.search.expect("clap enforces the time group");
        anyhow::ensure!(t_max > 0.0, "--search window must be positive");
        let verdicts = qwalk_core::pst::search_pst(&graph, a, t_max, grid)?;
        let verdict = verdicts
            .into_iter()
            .find(|v| v.b == b)
            .with_context(|| format!("vertex {b} is out of range or equals the source"))?;
        ("search", t_max, verdict)
    };
    let report = PstReport::new(parsed.to_string(), mode.to_string(), t, &verdict);
    match cli.format {
        Format::Json => print!("{}", to_json(&report)),
        Format::Csv => {
            print!(
                "{}",
                csv_line(&["expr", "a", "b", "mode", "t", "found", "fidelity", "t_star", "antipodal"])
            );
            print!(
                "{}",
                csv_line(&[
                    report.expr.clone(),
                    report.a.to_string(),
                    report.b.to_string(),
                    report.mode.clone(),
                    float_repr(report.t),
                    report.found.to_string(),
                    float_repr(report.fidelity),
                    float_repr(report.t_star),
                    report.antipodal.to_string(),
                ])
            );
        }
        Format::Plain => {
            if report.found {
                println!(
                    "{}: transfer {} -> {} at t = {}, fidelity {}{}",
                    report.expr,
                    report.a,
                    report.b,
                    float_repr(report.t_star),
                    float_repr(report.fidelity),
                    if report.antipodal { ", antipodal" } else { "" }
                );
            } else {
                println!(
                    "{}: no transfer {} -> {} ({}), best fidelity {} at t = {}",
                    report.expr,
                    report.a,
                    report.b,
                    if mode == "check" {
                        format!("at t = {}", float_repr(report.t))
                    } else {
                        format!("searched (0, {}]", float_repr(report.t))
                    },
                    float_repr(report.fidelity),
                    float_repr(report.t_star),
                );
            }
        }
    }
    Ok(if expect_pst && !report.found { 1 } else { 0 })
}

fn cmd_verify(cli: &Cli, filter: Option<&str>) -> anyhow::Result<i32> {
    let outcomes: Vec<OutcomeRecord> = verify::run_all(cli.seed)
        .into_iter()
        .filter(|o| {
            filter.is_none_or(|f| o.id.starts_with(f) || o.source.starts_with(f))
        })
        .map(|o| OutcomeRecord { id: o.id, source: o.source, passed: o.passed, detail: o.detail })
        .collect();
    anyhow::ensure!(
        !outcomes.is_empty(),
        "filter '{}' matches no claims",
        filter.unwrap_or_default()
    );
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let report = VerifyReport {
        seed: cli.seed,
        filter: filter.map(str::to_string),
        total: outcomes.len(),
        failed,
        outcomes,
    };
    match cli.format {
        Format::Json => print!("{}", to_json(&report)),
        Format::Csv => {
            print!("{}", csv_line(&["id", "source", "passed", "detail"]));
            for o in &report.outcomes {
                print!(
                    "{}",
                    csv_line(&[o.id.as_str(), o.source.as_str(), if o.passed { "true" } else { "false" }, o.detail.as_str()])
                );
            }
        }
        Format::Plain => {
            for o in &report.outcomes {
                println!(
                    "{} {} [{}] {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.id,
                    o.source,
                    o.detail
                );
            }
            println!("{} claims, {} failed (seed {})", report.total, report.failed, report.seed);
        }
    }
    Ok(if failed > 0 { 1 } else { 0 })
}

fn cmd_export(cli: &Cli, text: &str, path: &PathBuf) -> anyhow::Result<i32> {
    let (parsed, graph) = build(text)?;
    std::fs::write(path, graph.to_edge_list())
        .with_context(|| format!("writing {}", path.display()))?;
    let report = ExportReport {
        expr: parsed.to_string(),
        path: path.display().to_string(),
        order: graph.order(),
        edges: graph.edge_count(),
    };
    match cli.format {
        Format::Json => print!("{}", to_json(&report)),
        Format::Csv => {
            print!("{}", csv_line(&["expr", "path", "order", "edges"]));
            print!(
                "{}",
                csv_line(&[
                    report.expr.as_str(),
                    report.path.as_str(),
                    &report.order.to_string(),
                    &report.edges.to_string(),
                ])
            );
        }
        Format::Plain => println!(
            "wrote {} vertices, {} edges to {}",
            report.order, report.edges, report.path
        ),
    }
    Ok(0)
}

/// Closed-form amplitude for the top operator of `parsed`, with the pair
/// `(a, b)` given in composite vertex numbering.
fn reduction_amplitude(
    parsed: &Expr,
    composite: &Graph,
    a: usize,
    b: usize,
    t: f64,
) -> anyhow::Result<(&'static str, Amplitude)> {
    composite.check_vertex(a)?;
    composite.check_vertex(b)?;
    match parsed {
        Expr::Join(x, y) => {
            let g = expr::eval(x)?;
            let h = expr::eval(y)?;
            anyhow::ensure!(
                a < g.order() && b < g.order(),
                "the join rule covers pairs inside the first operand (vertices 0..{})",
                g.order()
            );
            Ok(("join", join_amplitude(&g, &h, a, b, t)?))
        }
        Expr::SelfJoin(x, m) => {
            let g = expr::eval(x)?;
            let n = g.order();
            anyhow::ensure!(
                a / n == b / n,
                "the self-join rule covers pairs inside one copy (here copies are blocks of {n})"
            );
            let inner = self_join_amplitude(&g, *m, a % n, b % n, t)?;
            // report the composite pair the rule just computed
            Ok(("selfjoin", Amplitude { a, b, t, value: inner.value }))
        }
        Expr::CirculantJoin(x, c) => {
            let g = expr::eval(x)?;
            let spec = expr::connector_spec(c)?;
            anyhow::ensure!(
                a.is_multiple_of(2),
                "the circulant-join rule starts in copy 0: even vertices in the interleaved layout"
            );
            let amp = circulant_join_amplitude(&g, &spec, a / 2, b % 2, b / 2, t)?;
            debug_assert_eq!((amp.a, amp.b), (a, b));
            Ok(("cjoin", amp))
        }
        Expr::Cartesian(..) => {
            let mut factors = Vec::new();
            flatten_cartesian(parsed, &mut factors);
            let graphs: Vec<Graph> =
                factors.iter().map(|f| expr::eval(f)).collect::<Result<_, _>>()?;
            let mut spec = Vec::with_capacity(graphs.len());
            let (mut ra, mut rb) = (a, b);
            for g in graphs.iter().rev() {
                let n = g.order();
                spec.push((g, ra % n, rb % n));
                ra /= n;
                rb /= n;
            }
            spec.reverse();
            let amp = cartesian_amplitude(&spec, t)?;
            debug_assert_eq!((amp.a, amp.b), (a, b));
            Ok(("cart", amp))
        }
        _ => anyhow::bail!(
            "no reduction rule for this top-level shape; use join, selfjoin, cjoin, or cart"
        ),
    }
}

fn flatten_cartesian<'e>(e: &'e Expr, out: &mut Vec<&'e Expr>) {
    if let Expr::Cartesian(x, y) = e {
        flatten_cartesian(x, out);
        flatten_cartesian(y, out);
    } else {
        out.push(e);
    }
}

fn cmd_reduce(cli: &Cli, text: &str, a: usize, b: usize, t_spec: &str) -> anyhow::Result<i32> {
    let (parsed, graph) = build(text)?;
    let t = expr::resolve_time(t_spec, &parsed)?;
    let (rule, reduced) = reduction_amplitude(&parsed, &graph, a, b, t)?;
    let oracle = amplitude(&graph, a, b, t);
    let absdiff = (reduced.value - oracle.value).norm();
    let report = ReduceReport {
        expr: parsed.to_string(),
        rule: rule.to_string(),
        t,
        reduction: AmplitudeRecord::from(&reduced),
        oracle: AmplitudeRecord::from(&oracle),
        absdiff,
        within_tol: absdiff <= cli.tol,
    };
    match cli.format {
        Format::Json => print!("{}", to_json(&report)),
        Format::Csv => {
            print!(
                "{}",
                csv_line(&["route", "a", "b", "t", "re", "im", "mag", "absdiff", "within_tol"])
            );
            for (route, rec) in [("reduction", &report.reduction), ("oracle", &report.oracle)] {
                print!(
                    "{}",
                    csv_line(&[
                        route.to_string(),
                        rec.a.to_string(),
                        rec.b.to_string(),
                        float_repr(rec.t),
                        float_repr(rec.re),
                        float_repr(rec.im),
                        float_repr(rec.mag),
                        float_repr(report.absdiff),
                        report.within_tol.to_string(),
                    ])
                );
            }
        }
        Format::Plain => {
            println!("{}: rule {} at t = {}", report.expr, report.rule, float_repr(report.t));
            for (route, rec) in [("reduction", &report.reduction), ("oracle   ", &report.oracle)] {
                println!(
                    "  {} {} -> {}: re = {}, im = {}, mag = {}",
                    route,
                    rec.a,
                    rec.b,
                    float_repr(rec.re),
                    float_repr(rec.im),
                    float_repr(rec.mag)
                );
            }
            println!(
                "  absdiff {} ({} tolerance {})",
                float_repr(report.absdiff),
                if report.within_tol { "within" } else { "EXCEEDS" },
                float_repr(cli.tol)
            );
        }
    }
    Ok(if report.within_tol { 0 } else { 1 })
}
