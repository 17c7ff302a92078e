//! `spanner`: generate point sets, build cone spanners, measure them and
//! verify the detour inequalities from the command line.
//!
//! Exit status: 0 on success, 1 when a verification or bound check fails,
//! 2 on usage or input errors.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cone_spanners::analysis::{
    degree_stats, per_edge_stretch, per_edge_stretch_bound, spanning_ratio, theoretical_bound,
    Adjacency,
};
use cone_spanners::build::{build, build_theta};
use cone_spanners::io::{
    export_svg, generate, read_graph, read_points, write_graph, write_points, BoundingBox,
    Distribution, GraphFormat, PointFormat, PointSetSpec, SvgOptions,
};
use cone_spanners::lemma::{
    report_rows, reproduce_tables, run_harness, stretch_constant, HarnessOptions, Lemma,
    StretchCase, TABLE_TOLERANCE,
};
use cone_spanners::{ConeScheme, GraphKind, SpannerGraph};

/// Slack allowed when comparing a measured ratio with a published bound.
const BOUND_SLACK: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "spanner", version, about = "Cone-based geometric spanners")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a point set.
    Gen {
        #[arg(long, value_parser = parse_distribution)]
        dist: Distribution,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bounding box as `min_x,min_y,max_x,max_y`.
        #[arg(long, value_parser = parse_bbox)]
        bbox: Option<BoundingBox>,
        /// Output file; `.json` writes JSON, anything else CSV.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a spanner on a point set and print degree statistics.
    Build {
        #[arg(long, value_parser = parse_kind)]
        kind: GraphKind,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long = "in")]
        input: PathBuf,
        /// Output file; `.dot` writes DOT, anything else JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spanning ratio of a graph, or per-edge stretch against Theta6.
    Stretch {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        against_theta6: bool,
        /// Per-pair (or per-edge) CSV report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the lemma checks or reproduce the stretch-constant tables.
    Verify {
        /// 2 to 6, or `all`.
        #[arg(long, default_value = "all")]
        lemma: String,
        /// `pi/N` or radians; all of pi/15, pi/18, pi/21, pi/24 when absent.
        #[arg(long)]
        theta: Option<String>,
        /// Applicable checks wanted per lemma.
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        tables: bool,
        /// CSV report `check,theta,case,trials,failures,worst_slack`.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the published spanning-ratio bound.
    Bounds {
        #[arg(long, value_parser = parse_kind)]
        kind: GraphKind,
        #[arg(long)]
        k: usize,
    },
    /// Export graphs as DOT or SVG.
    Export {
        /// Graph JSON; repeat for side-by-side SVG panels.
        #[arg(long, required = true)]
        graph: Vec<PathBuf>,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: PathBuf,
        /// Draw the cone rays around this point (SVG only).
        #[arg(long)]
        cone_fan: Option<usize>,
        #[arg(long)]
        labels: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Dot,
    Svg,
}

fn parse_distribution(s: &str) -> Result<Distribution, String> {
    s.parse().map_err(|e: cone_spanners::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    s.parse().map_err(|e: cone_spanners::Error| e.to_string())
}

fn parse_bbox(s: &str) -> Result<BoundingBox, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        &[min_x, min_y, max_x, max_y] => Ok(BoundingBox {
            min_x,
            min_y,
            max_x,
            max_y,
        }),
        _ => Err("expected min_x,min_y,max_x,max_y".into()),
    }
}

/// `pi/N`, `pi`, `N*pi/M`-free forms only, or a plain number of radians.
fn parse_theta(s: &str) -> Result<f64> {
    let t = s.trim().to_ascii_lowercase();
    let value = if let Some(rest) = t.strip_prefix("pi") {
        let rest = rest.trim();
        if rest.is_empty() {
            PI
        } else if let Some(d) = rest.strip_prefix('/') {
            let d: f64 = d.trim().parse().with_context(|| format!("bad theta {s:?}"))?;
            PI / d
        } else {
            bail!("bad theta {s:?}; expected pi/N or radians");
        }
    } else {
        t.parse::<f64>().with_context(|| format!("bad theta {s:?}"))?
    };
    if !(value > 0.0 && value.is_finite()) {
        bail!("theta must be positive, got {s:?}");
    }
    Ok(value)
}

/// Number of cones `k` with `2 pi / k = theta`.
fn cones_for_theta(theta: f64) -> Result<usize> {
    let k = (2.0 * PI / theta).round();
    if k < 3.0 || (k * theta - 2.0 * PI).abs() > 1e-9 {
        bail!("theta {theta} is not 2*pi/k for an integer k >= 3");
    }
    Ok(k as usize)
}

fn parse_lemmas(s: &str) -> Result<Vec<Lemma>> {
    if s == "all" {
        return Ok(Lemma::ALL.to_vec());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u8>()
                .ok()
                .and_then(Lemma::from_number)
                .with_context(|| format!("unknown lemma {p:?}; expected 2-6 or all"))
        })
        .collect()
}

/// A failed check, reported with exit status 1.
struct Failed;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Result<(), Failed>> {
    match command {
        Command::Gen {
            dist,
            n,
            seed,
            bbox,
            out,
        } => {
            let spec = PointSetSpec {
                distribution: dist,
                n,
                seed,
                bbox: bbox.unwrap_or_default(),
            };
            let points = generate(&spec)?;
            write_points(&points, &out, PointFormat::from_path(&out))
                .with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {} {} points to {}", points.len(), dist, out.display());
            Ok(Ok(()))
        }
        Command::Build {
            kind,
            k,
            input,
            out,
        } => {
            let points = read_points(&input, PointFormat::from_path(&input))
                .with_context(|| format!("reading {}", input.display()))?;
            let k = if kind == GraphKind::HalfTheta6 { 6 } else { k };
            let scheme = ConeScheme::new(k)?;
            let graph = build(kind, &points, &scheme)?;
            print_build_report(&graph);
            if let Some(out) = out {
                write_graph(&graph, &out, GraphFormat::from_path(&out))
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(Ok(()))
        }
        Command::Stretch {
            graph,
            against_theta6,
            report,
        } => {
            let graph = read_graph(&graph).with_context(|| format!("reading {}", graph.display()))?;
            if against_theta6 {
                stretch_against_theta6(&graph, report.as_deref())
            } else {
                stretch(&graph, report.as_deref())
            }
        }
        Command::Verify {
            lemma,
            theta,
            trials,
            seed,
            tables,
            report,
        } => {
            if tables {
                verify_tables()
            } else {
                let lemmas = parse_lemmas(&lemma)?;
                let thetas = match theta {
                    Some(t) => vec![parse_theta(&t)?],
                    None => [15.0, 18.0, 21.0, 24.0].iter().map(|d| PI / d).collect(),
                };
                verify_lemmas(&lemmas, &thetas, trials, seed, report.as_deref())
            }
        }
        Command::Bounds { kind, k } => {
            println!("{}", theoretical_bound(kind, k));
            Ok(Ok(()))
        }
        Command::Export {
            graph,
            format,
            out,
            cone_fan,
            labels,
        } => {
            let graphs: Vec<SpannerGraph> = graph
                .iter()
                .map(|p| read_graph(p).with_context(|| format!("reading {}", p.display())))
                .collect::<Result<_>>()?;
            match format {
                ExportFormat::Dot => {
                    if graphs.len() != 1 {
                        bail!("DOT export takes exactly one graph");
                    }
                    write_graph(&graphs[0], &out, GraphFormat::Dot)?;
                }
                ExportFormat::Svg => {
                    let refs: Vec<&SpannerGraph> = graphs.iter().collect();
                    let options = SvgOptions {
                        cone_fan,
                        labels,
                        ..SvgOptions::default()
                    };
                    export_svg(&refs, &out, &options)?;
                }
            }
            println!("wrote {}", out.display());
            Ok(Ok(()))
        }
    }
}

fn print_build_report(graph: &SpannerGraph) {
    let stats = degree_stats(graph);
    let argmax = |v: &[usize]| {
        v.iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map_or(0, |(i, _)| i)
    };
    println!("kind: {}", graph.kind);
    println!("k: {}", graph.scheme.k());
    println!("points: {}", graph.len());
    println!("edges: {}", graph.edge_count());
    println!(
        "max in-degree: {} (point {})",
        stats.max_in,
        argmax(&stats.in_degree)
    );
    println!(
        "max out-degree: {} (point {})",
        stats.max_out,
        argmax(&stats.out_degree)
    );
    println!("max total degree: {}", stats.max_total);
}

fn stretch(graph: &SpannerGraph, report: Option<&Path>) -> Result<Result<(), Failed>> {
    let r = spanning_ratio(graph)?;
    println!("spanning ratio: {}", r.max_ratio);
    println!("witness: {} {}", r.witness.0, r.witness.1);
    println!("pairs: {}", r.pair_count);
    if r.disconnected_pairs > 0 {
        println!("disconnected pairs: {}", r.disconnected_pairs);
    }
    if let Some(path) = report {
        let adjacency = Adjacency::new(graph);
        let mut csv = String::from("a,b,euclidean,graph,ratio\n");
        for a in 0..graph.len() {
            let tree = adjacency.dijkstra(a);
            for b in a + 1..graph.len() {
                let e = graph.points.distance(a, b);
                let d = tree.distance(b).unwrap_or(f64::INFINITY);
                writeln!(csv, "{a},{b},{e:?},{d:?},{:?}", d / e).expect("write");
            }
        }
        fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    }
    let bound = theoretical_bound(graph.kind, graph.scheme.k());
    println!("published bound: {bound}");
    if let Some(b) = bound.finite() {
        if !r.is_connected() || r.max_ratio > b + BOUND_SLACK {
            eprintln!("spanning ratio exceeds the published bound {b}");
            return Ok(Err(Failed));
        }
    }
    Ok(Ok(()))
}

fn stretch_against_theta6(graph: &SpannerGraph, report: Option<&Path>) -> Result<Result<(), Failed>> {
    let theta6 = build_theta(&graph.points, &ConeScheme::new(6)?)?;
    let r = per_edge_stretch(&theta6, graph)?;
    println!("per-edge stretch: {}", r.max_ratio);
    if let Some((a, b)) = r.witness {
        println!("witness: {a} {b}");
    }
    println!("theta6 edges: {}", r.edge_count);
    if r.unreachable_edges > 0 {
        println!("unreachable edges: {}", r.unreachable_edges);
    }
    if let Some(path) = report {
        let adjacency = Adjacency::new(graph);
        let mut csv = String::from("source,target,length,path,ratio\n");
        for a in 0..theta6.len() {
            let out = theta6.out_edges(a);
            if out.is_empty() {
                continue;
            }
            let tree = adjacency.dijkstra(a);
            for e in out {
                let d = tree.distance(e.target).unwrap_or(f64::INFINITY);
                writeln!(csv, "{},{},{:?},{d:?},{:?}", e.source, e.target, e.length, d / e.length)
                    .expect("write");
            }
        }
        fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    }
    if graph.kind == GraphKind::ThetaTheta {
        if let Some(b) = per_edge_stretch_bound(graph.scheme.k()) {
            println!("published per-edge bound: {b}");
            if r.unreachable_edges > 0 || r.max_ratio > b + BOUND_SLACK {
                eprintln!("per-edge stretch exceeds the published bound {b}");
                return Ok(Err(Failed));
            }
        }
    }
    Ok(Ok(()))
}

fn verify_lemmas(
    lemmas: &[Lemma],
    thetas: &[f64],
    trials: usize,
    seed: u64,
    report: Option<&Path>,
) -> Result<Result<(), Failed>> {
    let mut csv = String::from("check,theta,case,trials,failures,worst_slack\n");
    let mut failed = false;
    for &theta in thetas {
        let k = cones_for_theta(theta)?;
        if k % 6 != 0 || k < 30 {
            bail!("lemma checks need k = 6k' with k' >= 5, got k = {k}");
        }
        let options = HarnessOptions {
            lemmas: lemmas.to_vec(),
            min_trials: trials,
            seed,
            ..HarnessOptions::new(k)
        };
        let r = run_harness(&options)?;
        println!(
            "theta = pi/{}: {} configurations from {} random and {} sampled sets",
            k / 2,
            r.configs,
            r.random_sets,
            r.sampled_sets
        );
        for t in &r.tallies {
            println!(
                "  {} {:<16} trials {:>9} failures {:>4} worst slack {:e}",
                t.lemma, t.case, t.trials, t.failures, t.worst_slack
            );
            if let Some(f) = &t.first_failure {
                eprintln!("    first failure: {f}");
            }
        }
        for lemma in lemmas {
            if r.trials(*lemma) < trials {
                println!("  {lemma}: only {} applicable checks", r.trials(*lemma));
                failed = true;
            }
        }
        if !r.outside_cases.is_empty() {
            println!("  a' outside the analyzed cases: {:?}", r.outside_cases);
        }
        if r.invariant_violations > 0 {
            eprintln!("  {} configurations violate the invariants", r.invariant_violations);
        }
        failed |= !r.passed();
        for row in report_rows(&r) {
            csv.push_str(&row.join(","));
            csv.push('\n');
        }
    }
    if let Some(path) = report {
        fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    }
    if failed {
        eprintln!("verification failed");
        Ok(Err(Failed))
    } else {
        println!("all checks passed");
        Ok(Ok(()))
    }
}

fn verify_tables() -> Result<Result<(), Failed>> {
    let entries = reproduce_tables()?;
    println!(
        "{:<24} {:>6} {:>10} {:>10} {:>9}",
        "case", "theta", "published", "computed", "rel.err"
    );
    for e in &entries {
        println!(
            "{:<24} {:>6} {:>10.4} {:>10.4} {:>9.2e} {}",
            e.case.label(),
            format!("pi/{}", e.denominator),
            e.published,
            e.computed.t,
            e.relative_error,
            if e.matches() { "ok" } else { "MISMATCH" }
        );
    }
    let matched = entries.iter().filter(|e| e.matches()).count();
    println!(
        "{matched}/{} entries matched within {}%",
        entries.len(),
        TABLE_TOLERANCE * 100.0
    );
    let theta = PI / 15.0;
    let x = stretch_constant(theta, StretchCase::C62LowBeta)?;
    let y = stretch_constant(theta, StretchCase::C62HighBeta)?;
    let z = stretch_constant(theta, StretchCase::C66LowAlpha)?;
    let s = stretch_constant(theta, StretchCase::C66HighAlphaOrC65)?;
    println!("theta = pi/15: max X = {:.5}, max Y = {:.5}, min Z = {:.5}, 8 sin(theta/2) = {:.5}",
        x.bound_on_detour, y.bound_on_detour, z.bound_on_detour, s.bound_on_detour);
    if matched == entries.len() {
        Ok(Ok(()))
    } else {
        Ok(Err(Failed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_forms() {
        assert_eq!(parse_theta("pi/15").unwrap(), PI / 15.0);
        assert_eq!(parse_theta("PI / 18").unwrap(), PI / 18.0);
        assert_eq!(parse_theta("0.25").unwrap(), 0.25);
        assert!(parse_theta("pi*2").is_err());
        assert!(parse_theta("-1").is_err());
        assert_eq!(cones_for_theta(PI / 15.0).unwrap(), 30);
        assert_eq!(cones_for_theta(2.0 * PI / 30.0).unwrap(), 30);
        assert!(cones_for_theta(0.25).is_err());
    }

    #[test]
    fn lemma_lists() {
        assert_eq!(parse_lemmas("all").unwrap().len(), 5);
        assert_eq!(parse_lemmas("2,4").unwrap(), vec![Lemma::ThetaPath, Lemma::UpperDetour]);
        assert!(parse_lemmas("7").is_err());
    }

    #[test]
    fn bbox_parsing() {
        let b = parse_bbox("0,0,10,5").unwrap();
        assert_eq!((b.max_x, b.max_y), (10.0, 5.0));
        assert!(parse_bbox("1,2,3").is_err());
    }
}
