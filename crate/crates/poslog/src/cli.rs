//! Command-line front end: one thin binary dispatching to the library.
//!
//! Exit codes: 0 success, 1 semantic failure, 2 usage error; `learn-exact`
//! exits 3 when no separating stratification exists.

use std::ffi::OsString;
use std::fs;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::{parse_examples, parse_rule, render_dataset};
use crate::exact::{stratify_separable, SeparationProblem};
use crate::heuristic::{learn, LearnConfig};
use crate::logic::{Clause, Vocabulary};
use crate::map_infer::{generate_dataset, WeightedClauseTheory};
use crate::rational::{to_poss_theory, z_ordering};
use crate::theory::{Label, PossTheory};
use crate::vc::{build_shatter_instance, is_shattered, vc_lower_bound, vc_subset_bound, vc_upper_bound};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Parser)]
#[command(name = "poslog", version, about = "Stratified possibilistic logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy learning of a stratified theory from labeled defaults
    LearnHeur(LearnHeurArgs),
    /// Exact separating-stratification search over a fixed clause pool
    LearnExact(LearnExactArgs),
    /// Z-ordering of a consistent default set, written as a theory file
    Zrank(ZrankArgs),
    /// Covering query: prints `+` or `-` for one default rule
    Query(QueryArgs),
    /// Evaluates a theory on a dataset; prints a TSV report
    Eval(EvalArgs),
    /// Generates labeled defaults from MAP entailments of a weighted theory
    GenMap(GenMapArgs),
    /// VC-dimension bounds and shattering checks
    Vc(VcArgs),
}

#[derive(Args)]
struct LearnHeurArgs {
    /// Training dataset file
    #[arg(long)]
    train: String,
    /// Revision iterations
    #[arg(long, default_value_t = 50)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget in seconds
    #[arg(long)]
    timeout_secs: Option<u64>,
    /// Misclassified defaults sampled per iteration
    #[arg(long, default_value_t = 10)]
    sample_size: usize,
    /// Theory file of hard constraints for the protected stratum
    #[arg(long)]
    hard: Option<String>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Output theory file
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct LearnExactArgs {
    /// Clause pool file (theory format; weights are ignored)
    #[arg(long)]
    theory: String,
    /// Training dataset file
    #[arg(long)]
    train: String,
    /// Output theory file
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct ZrankArgs {
    /// Dataset of defaults; negative examples are skipped with a warning
    #[arg(long)]
    defaults: String,
    /// Output theory file (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    theory: String,
    /// Rule text, e.g. "penguin ~> !flies"
    #[arg(long = "default")]
    rule: String,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    theory: String,
    #[arg(long)]
    data: String,
}

#[derive(Args)]
struct GenMapArgs {
    /// Weighted clause theory file
    #[arg(long)]
    weighted: String,
    /// Maximum evidence width in literals
    #[arg(long, default_value_t = 5)]
    k: usize,
    #[arg(long)]
    n_train: usize,
    #[arg(long)]
    n_test: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_train: String,
    #[arg(long)]
    out_test: String,
}

#[derive(Args)]
struct VcArgs {
    /// n k m: prints the upper, lower and subset bounds as TSV
    #[arg(long, num_args = 3, value_names = ["N", "K", "M"], conflicts_with = "shatter")]
    bounds: Option<Vec<usize>>,
    /// Builds the n-variable shattering instance and checks it exhaustively
    #[arg(long)]
    shatter: Option<usize>,
}

/// Parses `argv` (including the program name) and dispatches.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::LearnHeur(args) => cmd_learn_heur(args),
        Command::LearnExact(args) => cmd_learn_exact(args),
        Command::Zrank(args) => cmd_zrank(args),
        Command::Query(args) => cmd_query(args),
        Command::Eval(args) => cmd_eval(args),
        Command::GenMap(args) => cmd_gen_map(args),
        Command::Vc(args) => cmd_vc(args),
    }
}

fn cmd_learn_heur(args: LearnHeurArgs) -> Result<i32> {
    let mut vocab = Vocabulary::new();
    let data = parse_examples(&fs::read_to_string(&args.train)?, &mut vocab)?;
    let hard_constraints = match &args.hard {
        Some(path) => {
            let t = PossTheory::parse(&fs::read_to_string(path)?, &mut vocab)?;
            let mut clauses: Vec<Clause> = t.hard_stratum().to_vec();
            for stratum in t.strata() {
                clauses.extend(stratum.iter().cloned());
            }
            clauses
        }
        None => Vec::new(),
    };
    let cfg = LearnConfig {
        iterations: args.iters,
        timeout: args.timeout_secs.map(Duration::from_secs),
        sample_size: args.sample_size,
        rng_seed: args.seed,
        hard_constraints,
        worker_count: args.workers,
    };
    let outcome = learn(&data, &cfg)?;
    let n = data.len() as u64;
    eprintln!("iteration\terrors\tsample_error");
    let as_count = |r: &num_rational::Ratio<u64>| r.numer() * n / r.denom();
    eprintln!(
        "0\t{}\t{}",
        as_count(&outcome.initial_error),
        ratio_to_f64(&outcome.initial_error)
    );
    for (i, e) in outcome.iteration_errors.iter().enumerate() {
        eprintln!("{}\t{}\t{}", i + 1, as_count(e), ratio_to_f64(e));
    }
    if outcome.timed_out {
        eprintln!("# timeout reached");
    }
    fs::write(&args.out, outcome.theory.render(&vocab))?;
    Ok(EXIT_OK)
}

fn cmd_learn_exact(args: LearnExactArgs) -> Result<i32> {
    let mut vocab = Vocabulary::new();
    let pool_theory = PossTheory::parse(&fs::read_to_string(&args.theory)?, &mut vocab)?;
    let mut pool: Vec<Clause> = pool_theory.hard_stratum().to_vec();
    for stratum in pool_theory.strata() {
        pool.extend(stratum.iter().cloned());
    }
    let data = parse_examples(&fs::read_to_string(&args.train)?, &mut vocab)?;
    let positives = data
        .iter()
        .filter(|e| e.label == Label::Pos)
        .map(|e| e.rule.clone())
        .collect();
    let negatives = data
        .iter()
        .filter(|e| e.label == Label::Neg)
        .map(|e| e.rule.clone())
        .collect();
    let problem = SeparationProblem::new(pool, positives, negatives);
    match stratify_separable(&problem).theory {
        Some(theory) => {
            fs::write(&args.out, theory.render(&vocab))?;
            println!("FOUND");
            Ok(EXIT_OK)
        }
        None => {
            println!("NONE");
            Ok(EXIT_NOT_FOUND)
        }
    }
}

fn cmd_zrank(args: ZrankArgs) -> Result<i32> {
    let mut vocab = Vocabulary::new();
    let data = parse_examples(&fs::read_to_string(&args.defaults)?, &mut vocab)?;
    let negatives = data.iter().filter(|e| e.label == Label::Neg).count();
    if negatives > 0 {
        eprintln!("warning: ignoring {negatives} negative example(s); the Z-ordering uses positive defaults only");
    }
    let positives: Vec<_> = data
        .iter()
        .filter(|e| e.label == Label::Pos)
        .map(|e| e.rule.clone())
        .collect();
    let theory = to_poss_theory(&z_ordering(&positives)?);
    let rendered = theory.render(&vocab);
    match &args.out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(EXIT_OK)
}

fn cmd_query(args: QueryArgs) -> Result<i32> {
    let mut vocab = Vocabulary::new();
    let theory = PossTheory::parse(&fs::read_to_string(&args.theory)?, &mut vocab)?;
    let rule = parse_rule(&args.rule, &mut vocab)?;
    println!("{}", theory.covers(&rule));
    Ok(EXIT_OK)
}

fn cmd_eval(args: EvalArgs) -> Result<i32> {
    let mut vocab = Vocabulary::new();
    let theory = PossTheory::parse(&fs::read_to_string(&args.theory)?, &mut vocab)?;
    let data = parse_examples(&fs::read_to_string(&args.data)?, &mut vocab)?;
    let report = theory.evaluate(&data)?;
    println!("n\terrors\tsample_error\taccuracy");
    println!(
        "{}\t{}\t{}\t{}",
        report.n,
        report.errors,
        ratio_to_f64(&report.sample_error),
        ratio_to_f64(&report.accuracy()),
    );
    Ok(EXIT_OK)
}

fn cmd_gen_map(args: GenMapArgs) -> Result<i32> {
    let mut vocab = Vocabulary::new();
    let weighted = WeightedClauseTheory::parse(&fs::read_to_string(&args.weighted)?, &mut vocab)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let train = generate_dataset(&weighted, args.k, args.n_train, &mut rng)?;
    let test = generate_dataset(&weighted, args.k, args.n_test, &mut rng)?;
    fs::write(&args.out_train, render_dataset(&train, &vocab))?;
    fs::write(&args.out_test, render_dataset(&test, &vocab))?;
    Ok(EXIT_OK)
}

fn cmd_vc(args: VcArgs) -> Result<i32> {
    match (args.bounds, args.shatter) {
        (Some(values), None) => {
            let (n, k, m) = (values[0], values[1], values[2]);
            println!("n\tk\tm\tupper\tlower\tsubset");
            println!(
                "{n}\t{k}\t{m}\t{}\t{}\t{}",
                vc_upper_bound(n, k),
                vc_lower_bound(n, k)?,
                vc_subset_bound(n, m, k)?
            );
            Ok(EXIT_OK)
        }
        (None, Some(n)) => {
            let mut vocab = Vocabulary::new();
            let inst = build_shatter_instance(n, &mut vocab)?;
            if is_shattered(&inst)? {
                println!("PASS");
                Ok(EXIT_OK)
            } else {
                println!("FAIL");
                Ok(EXIT_FAILURE)
            }
        }
        _ => Err(Error::Invalid("pass exactly one of --bounds or --shatter".into())),
    }
}

fn ratio_to_f64(r: &num_rational::Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
