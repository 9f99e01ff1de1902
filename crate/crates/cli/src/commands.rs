use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use chebyprop::bidirectional::{cheby_push_rw, RandomWalkConfig};
use chebyprop::eval::{cache_dir_from_env, load_or_compute, measure, select_sources, SourceSelection};
use chebyprop::graph::{load_edge_list_path, load_graph_path, LoadOptions};
use chebyprop::kernels::{chebyshev_truncation, taylor_truncation};
use chebyprop::solvers::{cheby_power, cheby_push, default_push_thresholds, power_method, push};
use chebyprop::{Algorithm, Error, Estimate, Graph, Kernel};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{BenchArgs, ConvertArgs, GraphKernel, QueryArgs, TruthArgs};

pub enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(msg) => Failure::Usage(msg),
            other => Failure::Runtime(other.into()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn load_inputs(input: &GraphKernel) -> Outcome<(Graph, Kernel)> {
    // parse the kernel first so a typo fails fast, before a large graph load
    let kernel = Kernel::parse_spec(&input.kernel)?;
    let graph = load_graph_path(&input.graph)
        .with_context(|| format!("loading graph {}", input.graph.display()))?;
    Ok((graph, kernel))
}

fn source_id(g: &Graph, label: u64) -> Outcome<u32> {
    g.compact_id(label)
        .ok_or_else(|| Failure::Usage(format!("source {label} does not occur in the graph")))
}

fn resolve_sources(g: &Graph, labels: &[u64], selection: SourceSelection, seed: u64) -> Outcome<Vec<u32>> {
    if labels.is_empty() {
        Ok(select_sources(g, selection.strategy, selection.count, seed)?)
    } else {
        labels.iter().map(|&l| source_id(g, l)).collect()
    }
}

fn output(path: Option<&Path>) -> Outcome<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Options shared by every solver invocation in a run.
struct RunOptions {
    trunc_eps: Option<f64>,
    delta: Option<f64>,
    walk_seed: u64,
}

/// Runs `algo` with its single tunable parameter: the truncation tolerance
/// for `pw`/`chebypower`, `eps_a` for the push algorithms and `eps_r` for the
/// bidirectional estimator.
fn run_algorithm(g: &Graph, kernel: &Kernel, s: u32, algo: Algorithm, param: f64, opts: &RunOptions) -> Outcome<Estimate> {
    let push_tolerance = |eps_a: f64| -> Outcome<f64> {
        match opts.trunc_eps {
            Some(t) => Ok(t),
            None if eps_a > 0.0 && eps_a < 2.0 => Ok(eps_a / 2.0),
            None => Err(Failure::Usage(format!(
                "eps_a = {eps_a} needs an explicit truncation tolerance (--trunc-eps or --eps)"
            ))),
        }
    };
    let mut est = match algo {
        Algorithm::PowerMethod => {
            let n = taylor_truncation(kernel, param)?.0;
            let mut est = power_method(g, kernel, s, n)?;
            est.stats.params.insert("eps".into(), param);
            est
        }
        Algorithm::ChebyPower => {
            let k = chebyshev_truncation(kernel, param)?.0;
            let mut est = cheby_power(g, kernel, s, k)?;
            est.stats.params.insert("eps".into(), param);
            est
        }
        Algorithm::Push => {
            let n = taylor_truncation(kernel, push_tolerance(param)?)?.0;
            let zeta = kernel.taylor_coeffs(n - 1);
            let mut est = push(g, kernel, s, n, &default_push_thresholds(&zeta, param))?;
            est.stats.params.insert("eps_a".into(), param);
            est
        }
        Algorithm::ChebyPush => {
            let k = chebyshev_truncation(kernel, push_tolerance(param)?)?.0;
            cheby_push(g, kernel, s, k, param)?
        }
        Algorithm::ChebyPushRw => {
            let Kernel::Ppr { alpha } = kernel else {
                return Err(Failure::Usage("chebypush-rw supports only ppr kernels".into()));
            };
            let delta = opts.delta.unwrap_or(1.0 / g.n() as f64);
            let cfg = RandomWalkConfig::new(g.n(), *alpha, param, delta, opts.walk_seed)?;
            cheby_push_rw(g, s, &cfg, None)?
        }
    };
    if let Some(t) = opts.trunc_eps {
        if matches!(algo, Algorithm::Push | Algorithm::ChebyPush) {
            est.stats.params.insert("trunc_eps".into(), t);
        }
    }
    Ok(est)
}

pub fn query(args: QueryArgs) -> Outcome<()> {
    let (g, kernel) = load_inputs(&args.input)?;
    let s = source_id(&g, args.source)?;
    let param = match args.algo {
        Algorithm::PowerMethod | Algorithm::ChebyPower => args.eps.unwrap_or(1e-5),
        Algorithm::Push | Algorithm::ChebyPush => args.eps_a,
        Algorithm::ChebyPushRw => args.eps_r,
    };
    let opts = RunOptions {
        trunc_eps: args.eps.filter(|_| matches!(args.algo, Algorithm::Push | Algorithm::ChebyPush)),
        delta: args.delta,
        walk_seed: args.walk_seed,
    };
    let est = run_algorithm(&g, &kernel, s, args.algo, param, &opts)?;
    let labels = g.original_ids();
    let top: Vec<_> = est
        .top(args.top)
        .into_iter()
        .map(|(u, v)| json!({ "node": labels[u as usize], "value": v }))
        .collect();
    let doc = json!({
        "graph": args.input.graph.display().to_string(),
        "kernel": kernel.descriptor(),
        "algorithm": args.algo.tag(),
        "source": args.source,
        // stats.source is the compact id
        "source_id": s,
        "top": top,
        "stats": est.stats,
    });
    let mut out = output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &doc).context("writing JSON")?;
    writeln!(out).context("writing JSON")?;
    out.flush().context("writing JSON")?;
    Ok(())
}

/// One CSV line of a benchmark sweep.
#[derive(Debug, Clone, Serialize)]
struct BenchmarkRow {
    dataset: String,
    algorithm: &'static str,
    kernel: String,
    source: u64,
    /// The grid value exactly as given on the command line.
    param: String,
    l1: f64,
    l2: f64,
    deg_norm_inf: f64,
    wall_time: f64,
    iterations: usize,
    push_work: u64,
}

fn parse_grid(name: &str, values: &[String]) -> Outcome<Vec<(String, f64)>> {
    if values.is_empty() {
        return Err(Failure::Usage(format!("--{name} grid is empty")));
    }
    values
        .iter()
        .map(|v| {
            let trimmed = v.trim();
            match trimmed.parse::<f64>() {
                Ok(x) if x >= 0.0 && x.is_finite() => Ok((trimmed.to_string(), x)),
                _ => Err(Failure::Usage(format!("--{name} value {v:?} is not a nonnegative number"))),
            }
        })
        .collect()
}

fn cache_dir(explicit: &Option<PathBuf>) -> PathBuf {
    explicit.clone().unwrap_or_else(cache_dir_from_env)
}

pub fn bench(args: BenchArgs) -> Outcome<()> {
    let (g, kernel) = load_inputs(&args.input)?;
    if args.algos.is_empty() {
        return Err(Failure::Usage("no algorithms selected".into()));
    }
    let grids: Vec<Vec<(String, f64)>> = args
        .algos
        .iter()
        .map(|a| match a {
            Algorithm::PowerMethod | Algorithm::ChebyPower => parse_grid("eps", &args.eps),
            Algorithm::Push | Algorithm::ChebyPush => parse_grid("eps-a", &args.eps_a),
            Algorithm::ChebyPushRw => parse_grid("eps-r", &args.eps_r),
        })
        .collect::<Outcome<_>>()?;
    let sources = resolve_sources(&g, &args.source_labels, args.sources, args.seed)?;
    let dataset = args.dataset.clone().unwrap_or_else(|| {
        args.input
            .graph
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    let dir = cache_dir(&args.cache_dir);
    let opts = RunOptions {
        trunc_eps: args.trunc_eps,
        delta: args.delta,
        walk_seed: args.walk_seed,
    };
    let descriptor = kernel.descriptor();
    let labels = g.original_ids();

    let run_source = |&s: &u32| -> Outcome<Vec<Vec<BenchmarkRow>>> {
        let (truth, _) = load_or_compute(&dir, &g, &kernel, s)
            .with_context(|| format!("ground truth for source {}", labels[s as usize]))?;
        args.algos
            .iter()
            .zip(&grids)
            .map(|(&algo, grid)| {
                grid.iter()
                    .map(|(text, value)| {
                        let est = run_algorithm(&g, &kernel, s, algo, *value, &opts)?;
                        let err = measure(&truth.vector, &est.y_hat, &g);
                        Ok(BenchmarkRow {
                            dataset: dataset.clone(),
                            algorithm: algo.tag(),
                            kernel: descriptor.clone(),
                            source: labels[s as usize],
                            param: text.clone(),
                            l1: err.l1,
                            l2: err.l2,
                            deg_norm_inf: err.deg_norm_inf,
                            wall_time: est.stats.wall_time,
                            iterations: est.stats.iterations,
                            push_work: est.stats.push_work,
                        })
                    })
                    .collect()
            })
            .collect()
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = args.threads {
        pool = pool.num_threads(t.max(1));
    }
    let pool = pool.build().map_err(|e| anyhow!("building thread pool: {e}"))?;
    let per_source: Vec<Vec<Vec<BenchmarkRow>>> =
        pool.install(|| sources.par_iter().map(run_source).collect::<Outcome<_>>())?;

    let mut writer = csv::Writer::from_writer(output(args.out.as_deref())?);
    for a in 0..args.algos.len() {
        for rows in &per_source {
            for row in &rows[a] {
                writer.serialize(row).context("writing CSV")?;
            }
        }
    }
    writer.flush().context("writing CSV")?;
    Ok(())
}

pub fn truth(args: TruthArgs) -> Outcome<()> {
    let (g, kernel) = load_inputs(&args.input)?;
    let sources = resolve_sources(&g, &args.source_labels, args.sources, args.seed)?;
    let dir = cache_dir(&args.cache_dir);
    let labels = g.original_ids();
    let mut out = io::stdout().lock();
    for s in sources {
        let (t, fresh) = load_or_compute(&dir, &g, &kernel, s)
            .with_context(|| format!("ground truth for source {}", labels[s as usize]))?;
        let path = chebyprop::eval::cache_path(&dir, &g, &kernel, s);
        writeln!(
            out,
            "{} source={} steps={} {}",
            if fresh { "computed" } else { "cached" },
            labels[s as usize],
            t.truncation,
            path.display()
        )
        .context("writing to stdout")?;
    }
    Ok(())
}

pub fn convert(args: ConvertArgs) -> Outcome<()> {
    let g = load_edge_list_path(&args.input, &LoadOptions::default())
        .with_context(|| format!("loading {}", args.input.display()))?;
    let file = File::create(&args.output).with_context(|| format!("creating {}", args.output.display()))?;
    g.write_csr(file).context("writing CSR")?;
    eprintln!("n={} m={} written to {}", g.n(), g.m(), args.output.display());
    Ok(())
}
