//! Command-line driver: run experiment specs, query the bound calculator,
//! cross-check the fast implementations against the brute-force oracles, and
//! print Pareto fronts.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use spu_moea::analysis::{self, BoundInputs};
use spu_moea::core::{Direction, ObjectiveVector, RngStream};
use spu_moea::harness::{self, ExperimentSpec, RunOptions};
use spu_moea::moea::Algorithm;
use spu_moea::oracle::{self, OracleBudget};
use spu_moea::problems::{
    brute_force_pareto, ojzj_pareto_front, EnumerationLimit, MotspProblem, OjzjParams,
    OjzjProblem, ParetoFront,
};
use spu_moea::ranking;

#[derive(Parser)]
#[command(name = "spu-moea", version, about = "Multi-objective evolutionary experiment driver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment spec and write rows.csv and summary.json.
    Run(RunArgs),
    /// Evaluate the runtime-bound calculator over a grid or a single point.
    Bounds(BoundsArgs),
    /// Cross-check sorting, hypervolume, fronts, and rank-sum p-values
    /// against the brute-force oracles.
    Verify(VerifyArgs),
    /// Print a Pareto front: closed form for the jump benchmark, brute
    /// force for small tour instances.
    Front(FrontArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment spec (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output directory; overrides the spec's output_dir.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record real wall-clock times per run. Off by default so reruns stay
    /// byte-identical.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// JSON file holding an array of bound-input objects.
    #[arg(long, conflicts_with_all = ["n", "k", "mu", "ps", "pc", "variant"])]
    grid: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    ps: Option<f64>,
    #[arg(long)]
    pc: Option<f64>,
    /// sms_emoa or nsga2.
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Algorithm>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Base seed for the randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run the full-size suites instead of the quick defaults.
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
struct FrontArgs {
    /// Jump benchmark size (with --k).
    #[arg(long, requires = "k", conflicts_with = "instance")]
    n: Option<usize>,
    /// Jump benchmark gap width (with --n).
    #[arg(long, requires = "n")]
    k: Option<usize>,
    /// Tour instance file(s): one JSON file or one TSPLIB file per objective.
    #[arg(long, num_args = 1..)]
    instance: Vec<PathBuf>,
    /// Write the front here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_variant(s: &str) -> Result<Algorithm, String> {
    match s {
        "sms_emoa" | "sms-emoa" => Ok(Algorithm::SmsEmoa),
        "nsga2" | "nsga-ii" => Ok(Algorithm::Nsga2),
        other => Err(format!("unknown variant {other:?}; use sms_emoa or nsga2")),
    }
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Bounds(args) => bounds(args),
        Command::Verify(args) => verify(args),
        Command::Front(args) => front(args),
    }
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let spec = ExperimentSpec::from_json_file(&args.spec)
        .with_context(|| format!("reading spec {}", args.spec.display()))?;
    let out_dir = args
        .out
        .clone()
        .or_else(|| spec.output_dir.clone())
        .ok_or_else(|| anyhow!("no output directory: set output_dir in the spec or pass --out"))?;
    let options = RunOptions {
        workers: args.workers,
        timing: args.timing,
        output_dir: Some(out_dir.clone()),
    };
    let output = harness::run_experiment(&spec, &options)?;
    println!("wrote {} ({} rows)", out_dir.join("rows.csv").display(), output.rows.len());
    println!("wrote {}", out_dir.join("summary.json").display());
    println!();
    println!(
        "{:<24} {:>6} {:>14} {:>14} {:>12}  vs {}",
        "scenario", "n", "mean", "std", "p", output.summary.baseline
    );
    for s in &output.summary.scenarios {
        let p = match s.p_vs_baseline {
            Some(p) if s.significant_vs_baseline == Some(true) => format!("{p:.4}*"),
            Some(p) => format!("{p:.4}"),
            None => "-".to_string(),
        };
        println!(
            "{:<24} {:>6} {:>14.2} {:>14.2} {:>12}",
            s.scenario, s.replications, s.mean_indicator, s.std_indicator, p
        );
    }
    Ok(())
}

fn bounds(args: BoundsArgs) -> anyhow::Result<()> {
    let grid: Vec<BoundInputs> = if let Some(path) = &args.grid {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
    } else {
        match (args.n, args.k, args.mu, args.ps, args.pc, args.variant) {
            (Some(n), Some(k), Some(mu), Some(p_s), Some(p_c), Some(variant)) => {
                vec![BoundInputs { n, k, mu, p_s, p_c, variant }]
            }
            _ => bail!("provide --grid, or all of --n --k --mu --ps --pc --variant"),
        }
    };
    let rows = harness::bounds_query(&grid)?;
    println!(
        "{:<9} {:>5} {:>4} {:>6} {:>6} {:>6} {:>12} {:>4} {:>12} {:>13} {:>11}",
        "variant", "n", "k", "mu", "p_s", "p_c", "C", "M", "bound_ln", "bound", "ratio"
    );
    for row in &rows {
        let variant = match row.inputs.variant {
            Algorithm::SmsEmoa => "sms_emoa",
            Algorithm::Nsga2 => "nsga2",
        };
        println!(
            "{:<9} {:>5} {:>4} {:>6} {:>6} {:>6} {:>12.4} {:>4} {:>12.4} {:>13.6e} {:>11.4e}",
            variant,
            row.inputs.n,
            row.inputs.k,
            row.inputs.mu,
            row.inputs.p_s,
            row.inputs.p_c,
            row.c,
            row.optimal_m,
            row.bound_ln,
            row.bound_linear,
            row.ratio_vs_first
        );
        for warning in &row.warnings {
            eprintln!("warning ({variant} n={} k={}): {warning}", row.inputs.n, row.inputs.k);
        }
    }
    Ok(())
}

fn front(args: FrontArgs) -> anyhow::Result<()> {
    let front: ParetoFront = if let (Some(n), Some(k)) = (args.n, args.k) {
        ojzj_pareto_front(&OjzjParams::new(n, k)?)
    } else if !args.instance.is_empty() {
        let problem = MotspProblem::new(load_instance(&args.instance)?);
        brute_force_pareto(&problem, &EnumerationLimit::default())?
    } else {
        bail!("provide --n and --k, or --instance");
    };
    let mut text = String::new();
    for point in front.points() {
        let line: Vec<String> = point.values().iter().map(|v| v.to_string()).collect();
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {} points to {}", front.points().len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn load_instance(paths: &[PathBuf]) -> anyhow::Result<spu_moea::problems::MotspInstance> {
    use spu_moea::problems::io;
    match paths {
        [single] if single.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => {
            Ok(io::motsp_from_json_file(single)?)
        }
        [_] => bail!("a single instance file must be JSON; TSPLIB costs need one file per objective"),
        many => Ok(io::motsp_from_tsplib_files(many)?),
    }
}

// --- verify suites -------------------------------------------------------

fn verify(args: VerifyArgs) -> anyhow::Result<()> {
    let budget = OracleBudget::default();
    let (sorts, fronts_hv, max_n, rank_sums) =
        if args.full { (1000, 200, 14, 200) } else { (200, 50, 12, 100) };

    verify_sorting(args.seed, sorts, &budget)?;
    println!("ok: non-dominated sorting vs quadratic extraction ({sorts} multisets)");
    verify_hypervolume(args.seed, fronts_hv, &budget)?;
    println!("ok: hypervolume and contributions vs raster count ({fronts_hv} fronts)");
    let cases = verify_fronts(max_n)?;
    println!("ok: closed-form jump fronts vs exhaustive enumeration ({cases} parameter pairs)");
    verify_rank_sum(args.seed, rank_sums, &budget)?;
    println!("ok: rank-sum p-values vs full enumeration ({rank_sums} samples)");
    Ok(())
}

fn random_vectors(rng: &mut RngStream, count: usize, dirs: &[Direction]) -> Vec<ObjectiveVector> {
    use rand::Rng;
    (0..count)
        .map(|_| {
            let values: Vec<f64> = dirs.iter().map(|_| rng.gen_range(0..20) as f64).collect();
            ObjectiveVector::new(values, dirs.to_vec()).expect("finite integer objectives")
        })
        .collect()
}

fn verify_sorting(seed: u64, cases: usize, budget: &OracleBudget) -> anyhow::Result<()> {
    use rand::Rng;
    let mut rng = RngStream::new(seed, 1);
    for case in 0..cases {
        let m = 2 + rng.gen_range(0..2usize);
        let dirs: Vec<Direction> = (0..m)
            .map(|_| if rng.gen::<bool>() { Direction::Maximize } else { Direction::Minimize })
            .collect();
        let n = 1 + rng.gen_range(0..64usize);
        let population = random_vectors(&mut rng, n, &dirs);
        let fast = ranking::non_dominated_sort(&population)?;
        let slow = oracle::sort_quadratic(&population, budget)?;
        if fast.fronts() != slow.as_slice() {
            bail!("sorting mismatch on case {case}: {population:?}");
        }
    }
    Ok(())
}

/// Random strictly-sorted integer antichain and a reference point below it.
fn random_integer_front(rng: &mut RngStream) -> (Vec<ObjectiveVector>, ObjectiveVector) {
    use rand::Rng;
    let len = 1 + rng.gen_range(0..8usize);
    let mut f1: Vec<i64> = Vec::new();
    let mut next = 1 + rng.gen_range(0..3i64);
    for _ in 0..len {
        f1.push(next);
        next += 1 + rng.gen_range(0..4i64);
    }
    let mut f2 = Vec::new();
    let mut top = 40 + rng.gen_range(0..10i64);
    for _ in 0..len {
        f2.push(top);
        top -= 1 + rng.gen_range(0..4i64);
    }
    let front: Vec<ObjectiveVector> =
        f1.iter().zip(&f2).map(|(&a, &b)| ObjectiveVector::max2(a as f64, b as f64)).collect();
    (front, ObjectiveVector::max2(0.0, 0.0))
}

fn verify_hypervolume(seed: u64, cases: usize, budget: &OracleBudget) -> anyhow::Result<()> {
    let mut rng = RngStream::new(seed, 2);
    for case in 0..cases {
        let (front, reference) = random_integer_front(&mut rng);
        let fast = ranking::hv_2d(&front, &reference)?;
        let slow = oracle::hv_raster(&front, &reference, budget)?;
        if fast != slow {
            bail!("hypervolume mismatch on case {case}: {fast} vs {slow}");
        }
        let contributions = ranking::hv_contributions_2d(&front, Some(&reference))?;
        for (i, &delta) in contributions.iter().enumerate() {
            let mut rest = front.clone();
            rest.remove(i);
            let without =
                if rest.is_empty() { 0.0 } else { oracle::hv_raster(&rest, &reference, budget)? };
            if delta != slow - without {
                bail!("contribution mismatch on case {case} point {i}: {delta} vs {}", slow - without);
            }
        }
    }
    Ok(())
}

fn verify_fronts(max_n: usize) -> anyhow::Result<usize> {
    let limit = EnumerationLimit::default();
    let mut cases = 0;
    for n in 5..=max_n {
        for k in 2..=(n - 1) / 2 {
            let params = OjzjParams::new(n, k)?;
            let closed = ojzj_pareto_front(&params);
            let enumerated = brute_force_pareto(&OjzjProblem::new(params), &limit)?;
            // Enumeration reports no inner flags, so compare the points.
            if closed.points() != enumerated.points() {
                bail!("front mismatch at n={n} k={k}");
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn verify_rank_sum(seed: u64, cases: usize, budget: &OracleBudget) -> anyhow::Result<()> {
    use rand::Rng;
    let mut rng = RngStream::new(seed, 3);
    for case in 0..cases {
        let n = 1 + rng.gen_range(0..6usize);
        let m = 1 + rng.gen_range(0..6usize);
        let picks = rand::seq::index::sample(&mut rng, 1_000_000, n + m);
        let values: Vec<f64> = picks.iter().map(|v| v as f64).collect();
        let (a, b) = values.split_at(n);
        let fast = analysis::wilcoxon_exact_p(a, b)?;
        let slow = oracle::exact_rank_sum_p(a, b, budget)?;
        if fast != slow {
            bail!("rank-sum mismatch on case {case}: {fast} vs {slow} for a={a:?} b={b:?}");
        }
    }
    Ok(())
}
