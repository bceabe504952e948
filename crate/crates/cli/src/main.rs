//! `lobby`: command-line front end for the lobbying solvers.
//!
//! Reports go to stdout as JSON (CSV for `bench`). Exit status is 0 on
//! success or a feasible result, 1 when the goal is out of reach within the
//! budget, and 2 on any error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lobbying::experiment::ratio_rows;
use lobbying::generate::{
    from_knapsack, from_optimal_lobbying, from_subset_sum, gen_random, AgendaPolicy, GenConfig, ThresholdPolicy,
};
use lobbying::io::{parse_instance, serialize_instance};
use lobbying::oracle::{oracle_exact_spend, oracle_min_budget, oracle_weighted};
use lobbying::{
    cover_numbers, evaluate, greedy_vb_with, solve, solve_exact_mb, solve_weighted_mb_ib, solve_weighted_vb_exact,
    Comparison, Criterion, Error, Execution, GreedyRule, Instance, Method, SolveReport, SolverKind, SolverOptions,
    Threshold,
};

#[derive(Parser)]
#[command(name = "lobby", version, about = "Probabilistic lobbying solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that an instance file is well formed and valid.
    Validate { file: PathBuf },
    /// Outcome of the vote without any bribery.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum)]
        criterion: CriterionArg,
    },
    /// Cheapest bribery plan.
    Solve(SolveArgs),
    /// Greedy voter bribery with its step trace.
    Greedy {
        file: PathBuf,
        #[arg(long, value_enum)]
        criterion: CriterionArg,
        #[arg(long, value_enum, default_value_t = RuleArg::Multicover)]
        rule: RuleArg,
    },
    /// Exhaustive reference solver; same flags as `solve`.
    Oracle(SolveArgs),
    /// Write a random or reduction-built instance.
    Gen(GenArgs),
    /// Compare greedy and exact voter bribery on a seeded batch (CSV).
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Sm,
    Am,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Sm => Criterion::StrictMajority,
            CriterionArg::Am => Criterion::AverageMajority,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Mb,
    Ib,
    Vb,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Mb => Method::Micro,
            MethodArg::Ib => Method::Issue,
            MethodArg::Vb => Method::Voter,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Multicover,
    NextStep,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionArg {
    Subsetsum,
    Knapsack,
    Ol,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, value_enum)]
    criterion: CriterionArg,
    /// Reach the weight objective instead of winning every issue.
    #[arg(long, conflicts_with = "exact")]
    weighted: bool,
    /// Spend exactly the budget (micro bribery only).
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, default_value_t = 9)]
    max_cost: u64,
    #[arg(long)]
    budget: Option<u64>,
    /// Draw a random agenda instead of all ones.
    #[arg(long)]
    random_agenda: bool,
    /// Draw a random threshold and comparison instead of 1/2 strict.
    #[arg(long)]
    random_threshold: bool,
    /// Draw weights up to this value and a random objective.
    #[arg(long)]
    max_weight: Option<u64>,
    #[arg(long, value_enum)]
    reduction: Option<ReductionArg>,
    /// Subset sum elements, or knapsack item costs.
    #[arg(long, value_delimiter = ',')]
    values: Vec<u64>,
    /// Knapsack item profits.
    #[arg(long, value_delimiter = ',')]
    profits: Vec<u64>,
    /// Subset sum target, knapsack capacity, or the lobbying voter count `b`.
    #[arg(long)]
    target: Option<u64>,
    /// Knapsack minimum profit.
    #[arg(long)]
    min_profit: Option<u64>,
    /// Optimal lobbying matrix as comma-separated 0/1 rows, e.g. `011,101`.
    #[arg(long, value_delimiter = ',')]
    matrix: Vec<String>,
    /// Optimal lobbying agenda as a 0/1 string.
    #[arg(long)]
    agenda: Option<String>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, value_enum, default_value_t = CriterionArg::Am)]
    criterion: CriterionArg,
    /// Largest voter count drawn.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Largest issue count drawn.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Largest discretization level drawn.
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, default_value_t = 9)]
    max_cost: u64,
    /// Solve on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

/// Whether the command reached its goal (exit 0) or not (exit 1).
type Status = bool;

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("invalid instance {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Unwinnable issues make a report, not an error.
fn report_or_unwinnable(inst: &Instance, result: lobbying::Result<SolveReport>, solver: SolverKind) -> Result<SolveReport> {
    match result {
        Err(Error::InfeasibleIssue { .. }) => Ok(SolveReport {
            feasible: false,
            min_cost: None,
            plan: None,
            per_issue_cost: vec![None; inst.issues()],
            solver,
        }),
        other => Ok(other?),
    }
}

fn run_solve(args: &SolveArgs, oracle: bool) -> Result<Status> {
    let inst = read_instance(&args.file)?;
    let (method, criterion) = (Method::from(args.method), Criterion::from(args.criterion));
    let opts = SolverOptions::from_env();
    if args.exact {
        if method != Method::Micro {
            bail!("--exact is only defined for micro bribery (--method mb)");
        }
        if oracle {
            let feasible = oracle_exact_spend(&inst, criterion, &opts)?;
            #[derive(Serialize)]
            struct ExactAnswer {
                feasible: bool,
                budget: u64,
                solver: SolverKind,
            }
            print_json(&ExactAnswer {
                feasible,
                budget: inst.budget(),
                solver: SolverKind::Oracle,
            })?;
            return Ok(feasible);
        }
        let report = solve_exact_mb(&inst, criterion, &opts)?;
        print_json(&report)?;
        return Ok(report.feasible);
    }
    let report = match (oracle, args.weighted) {
        (true, false) => oracle_min_budget(&inst, method, criterion, &opts)?,
        (true, true) => oracle_weighted(&inst, method, criterion, &opts)?,
        (false, false) => report_or_unwinnable(&inst, solve(&inst, method, criterion), SolverKind::ExactPoly)?,
        (false, true) if method == Method::Voter => solve_weighted_vb_exact(&inst, criterion, &opts)?,
        (false, true) => solve_weighted_mb_ib(&inst, method, criterion)?,
    };
    print_json(&report)?;
    Ok(report.feasible)
}

fn run_gen(args: &GenArgs) -> Result<Status> {
    let need = |v: Option<u64>, flag: &str| v.with_context(|| format!("this reduction needs --{flag}"));
    let inst = match args.reduction {
        None => {
            let cfg = GenConfig {
                voters: (args.m, args.m),
                issues: (args.n, args.n),
                k: (args.k, args.k),
                max_cost: args.max_cost,
                seed: args.seed,
                agenda: if args.random_agenda {
                    AgendaPolicy::Random
                } else {
                    AgendaPolicy::AllOnes
                },
                threshold: if args.random_threshold {
                    ThresholdPolicy::Random
                } else {
                    ThresholdPolicy::Fixed {
                        threshold: Threshold::HALF,
                        comparison: Comparison::Strict,
                    }
                },
                budget: args.budget,
                max_weight: args.max_weight,
            };
            gen_random(&cfg)?
        }
        Some(ReductionArg::Subsetsum) => from_subset_sum(&args.values, need(args.target, "target")?)?,
        Some(ReductionArg::Knapsack) => from_knapsack(
            &args.values,
            &args.profits,
            need(args.target, "target")?,
            need(args.min_profit, "min-profit")?,
        )?,
        Some(ReductionArg::Ol) => {
            let bits = |s: &str| -> Result<Vec<bool>> {
                s.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => bail!("expected 0 or 1, found `{other}`"),
                    })
                    .collect()
            };
            let matrix = args.matrix.iter().map(|row| bits(row)).collect::<Result<Vec<_>>>()?;
            let agenda = bits(args.agenda.as_deref().context("this reduction needs --agenda")?)?;
            from_optimal_lobbying(&matrix, &agenda, need(args.target, "target")?)?
        }
    };
    let text = serialize_instance(&inst);
    match &args.output {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?,
        None => writeln!(std::io::stdout().lock(), "{text}")?,
    }
    Ok(true)
}

fn run_bench(args: &BenchArgs) -> Result<Status> {
    let cfg = GenConfig {
        voters: (1, args.m),
        issues: (1, args.n),
        k: (0, args.k),
        max_cost: args.max_cost,
        seed: args.seed,
        agenda: AgendaPolicy::Random,
        threshold: ThresholdPolicy::Random,
        budget: None,
        max_weight: None,
    };
    let execution = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let opts = SolverOptions::from_env().with_execution(execution);
    let rows = ratio_rows(&cfg, args.count, args.criterion.into(), &opts)?;
    let mut out = csv::Writer::from_writer(std::io::stdout().lock());
    out.write_record([
        "index",
        "seed",
        "voters",
        "issues",
        "k",
        "exact_cost",
        "greedy_cost",
        "ratio",
        "cover_number",
        "ln_n_plus_1",
        "within_bound",
    ])?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for row in &rows {
        out.write_record([
            row.index.to_string(),
            row.seed.to_string(),
            row.voters.to_string(),
            row.issues.to_string(),
            row.k.to_string(),
            opt(row.exact_cost.map(|c| c.to_string())),
            opt(row.greedy_cost.map(|c| c.to_string())),
            opt(row.ratio.map(|r| format!("{r:.6}"))),
            opt(row.cover_number.map(|n| n.to_string())),
            opt(row.bound.map(|b| format!("{b:.6}"))),
            row.within_bound().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(true)
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Validate { file } => {
            let inst = read_instance(&file)?;
            #[derive(Serialize)]
            struct Summary {
                valid: bool,
                voters: usize,
                issues: usize,
                k: u32,
                normalized: bool,
                weighted: bool,
            }
            print_json(&Summary {
                valid: true,
                voters: inst.voters(),
                issues: inst.issues(),
                k: inst.k(),
                normalized: inst.is_normalized(),
                weighted: inst.weights().is_some(),
            })?;
            Ok(true)
        }
        Command::Eval { file, criterion } => {
            let inst = read_instance(&file)?;
            let criterion = Criterion::from(criterion);
            let outcome = evaluate(&inst, criterion);
            let cover = cover_numbers(&inst, criterion).ok();
            #[derive(Serialize)]
            struct Evaluation {
                criterion: Criterion,
                outcome: String,
                matches_agenda: bool,
                cover: Option<lobbying::CoverProfile>,
            }
            print_json(&Evaluation {
                criterion,
                outcome: outcome.to_string(),
                matches_agenda: outcome.matches(inst.agenda()),
                cover,
            })?;
            Ok(true)
        }
        Command::Solve(args) => run_solve(&args, false),
        Command::Oracle(args) => run_solve(&args, true),
        Command::Greedy { file, criterion, rule } => {
            let inst = read_instance(&file)?;
            let rule = match rule {
                RuleArg::Multicover => GreedyRule::Multicover,
                RuleArg::NextStep => GreedyRule::NextStep,
            };
            match greedy_vb_with(&inst, criterion.into(), rule)? {
                Some(trace) => {
                    let within = trace.within_budget(&inst);
                    print_json(&trace)?;
                    Ok(within)
                }
                None => {
                    print_json(&serde_json::json!({ "feasible": false, "reason": "an issue cannot be won" }))?;
                    Ok(false)
                }
            }
        }
        Command::Gen(args) => run_gen(&args),
        Command::Bench(args) => run_bench(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
