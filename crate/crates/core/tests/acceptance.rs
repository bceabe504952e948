//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lobbying::experiment::RatioRow;
use lobbying::generate::{
    from_knapsack, from_optimal_lobbying, from_subset_sum, gen_random, AgendaPolicy, GenConfig, ThresholdPolicy,
};
use lobbying::oracle::{oracle_exact_spend, oracle_min_budget, oracle_weighted};
use lobbying::schedule::{min_cost_schedule, schedule_oracle, ScheduleInstance};
use lobbying::solve::{harmonic, log_ratio_bound};
use lobbying::{
    apply_bribery, cover_numbers, evaluate, greedy_vb, kernelize_vb, normalize_agenda, plan_cost, running_example,
    solve_exact_mb, solve_ib, solve_mb_am, solve_mb_sm, solve_vb_exact, solve_weighted_mb_ib, solve_weighted_vb_exact,
    Comparison, Criterion, Error, Instance, Level, Method, Money, RawInstance, SolveReport, SolverOptions, Threshold,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn small_config() -> GenConfig {
    GenConfig {
        voters: (1, 3),
        issues: (1, 3),
        k: (0, 3),
        max_cost: 9,
        agenda: AgendaPolicy::Random,
        threshold: ThresholdPolicy::Random,
        ..GenConfig::default()
    }
}

fn sixty_weak() -> Instance {
    running_example().with_threshold(Threshold::new(3, 5).unwrap(), Comparison::Weak)
}

/// Solver result as an optional minimum; unwinnable issues count as `None`.
fn min_of(r: lobbying::Result<SolveReport>) -> Result<Option<Money>, String> {
    match r {
        Ok(rep) => Ok(rep.min_cost),
        Err(Error::InfeasibleIssue { .. }) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn optimized(inst: &Instance, method: Method, criterion: Criterion) -> lobbying::Result<SolveReport> {
    match (method, criterion) {
        (Method::Micro, Criterion::StrictMajority) => solve_mb_sm(inst),
        (Method::Micro, Criterion::AverageMajority) => solve_mb_am(inst),
        (Method::Issue, c) => solve_ib(inst, c),
        (Method::Voter, c) => solve_vb_exact(inst, c, &SolverOptions::default()),
    }
}

fn criterion_1() -> Check {
    let inst = running_example();
    let sm = evaluate(&inst, Criterion::StrictMajority).to_string();
    let am = evaluate(&inst, Criterion::AverageMajority).to_string();
    if sm == "000" && am == "100" {
        Ok(format!("SM {sm}, AM {am}"))
    } else {
        Err(format!("SM {sm}, AM {am}; expected 000 and 100"))
    }
}

/// Fewest single-level raises that win issue `j`, by trying every column.
fn raises_by_enumeration(inst: &Instance, j: usize) -> Option<u64> {
    let m = inst.voters();
    let bases: Vec<Level> = (0..m).map(|i| inst.oriented_level(i, j)).collect();
    let mut column = bases.clone();
    let mut best: Option<u64> = None;
    loop {
        if inst.column_wins(Criterion::AverageMajority, column.iter().copied()) {
            let steps: u64 = column.iter().zip(&bases).map(|(&o, &b)| u64::from(o - b)).sum();
            best = Some(best.map_or(steps, |b| b.min(steps)));
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return best;
            }
            column[pos] += 1;
            if column[pos] <= inst.top() {
                break;
            }
            column[pos] = bases[pos];
            pos += 1;
        }
    }
}

fn criterion_2() -> Check {
    let inst = sixty_weak();
    let cover = cover_numbers(&inst, Criterion::AverageMajority).map_err(|e| e.to_string())?;
    let third = raises_by_enumeration(&inst, 2);
    if cover.per_issue[..2] == [0, 2] && Some(cover.per_issue[2]) == third && third == Some(3) {
        Ok(format!("per issue {:?}, N = {}", cover.per_issue, cover.total))
    } else {
        Err(format!("per issue {:?}, enumeration gives {third:?} for issue 3", cover.per_issue))
    }
}

/// Instances per method/criterion pair; `LOBBY_ACCEPTANCE_SCALE` multiplies it.
fn per_combination() -> u64 {
    400 * scale()
}

fn scale() -> u64 {
    std::env::var("LOBBY_ACCEPTANCE_SCALE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1u64)
        .max(1)
}

fn criterion_3() -> Check {
    let cfg = small_config();
    let opts = SolverOptions::default();
    let (mut compared, mut finite) = (0, 0);
    for method in Method::ALL {
        for criterion in Criterion::ALL {
            for seed in 0..per_combination() {
                let inst = gen_random(&cfg.with_seed(seed)).map_err(|e| e.to_string())?;
                let fast = min_of(optimized(&inst, method, criterion))?;
                let slow = min_of(oracle_min_budget(&inst, method, criterion, &opts))?;
                if fast != slow {
                    return Err(format!("{method}-{criterion} seed {seed}: solver {fast:?}, oracle {slow:?}"));
                }
                compared += 1;
                finite += usize::from(slow.is_some());
            }
        }
    }
    Ok(format!("{compared} instances over 6 combinations ({finite} winnable), all equal"))
}

fn random_schedule(rng: &mut ChaCha8Rng) -> ScheduleInstance {
    let mut paths = Vec::new();
    let mut jobs = 0;
    let limit = rng.gen_range(0..=20);
    while jobs < limit {
        let len = rng.gen_range(0..=(limit - jobs).min(6));
        paths.push((0..len).map(|_| rng.gen_range(0..=20)).collect::<Vec<Money>>());
        jobs += len.max(1);
    }
    let total: usize = paths.iter().map(Vec::len).sum();
    let q = rng.gen_range(0..=total + 1);
    ScheduleInstance::new(paths, q)
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let count = 600;
    for idx in 0..count {
        let si = random_schedule(&mut rng);
        let dp = min_cost_schedule(&si).map_err(|e| e.to_string())?.map(|s| s.cost);
        let brute = schedule_oracle(&si).map_err(|e| e.to_string())?;
        if dp != brute {
            return Err(format!("instance {idx}: DP {dp:?}, oracle {brute:?}"));
        }
    }
    Ok(format!("{count} instances equal"))
}

fn criterion_5() -> Check {
    let cfg = small_config();
    let opts = SolverOptions::default();
    let mut solvable = 0;
    let mut worst: f64 = 1.0;
    for criterion in Criterion::ALL {
        for seed in 0..per_combination() {
            let inst = gen_random(&cfg.with_seed(seed)).map_err(|e| e.to_string())?;
            let exact = solve_vb_exact(&inst, criterion, &opts).map_err(|e| e.to_string())?;
            let greedy = greedy_vb(&inst, criterion).map_err(|e| e.to_string())?;
            let row = RatioRow {
                index: seed as usize,
                seed,
                voters: inst.voters(),
                issues: inst.issues(),
                k: inst.k(),
                exact_cost: exact.min_cost,
                greedy_cost: greedy.as_ref().map(|g| g.total_cost),
                ratio: None,
                cover_number: greedy.as_ref().map(|g| g.cover_number),
                bound: None,
            };
            if exact.min_cost.is_some() != greedy.is_some() {
                return Err(format!("{criterion} seed {seed}: exact {:?}, greedy {:?}", exact.min_cost, row.greedy_cost));
            }
            if !row.within_bound() {
                let n = row.cover_number.unwrap();
                return Err(format!(
                    "{criterion} seed {seed}: greedy {:?}, optimum {:?}, N = {n}, H(N) = {:?}, ln N + 1 = {:.4}",
                    row.greedy_cost,
                    row.exact_cost,
                    harmonic(n),
                    log_ratio_bound(n)
                ));
            }
            if let (Some(opt), Some(g)) = (row.exact_cost, row.greedy_cost) {
                solvable += 1;
                if opt > 0 {
                    worst = worst.max(g as f64 / opt as f64);
                }
            }
        }
    }
    Ok(format!("{solvable} solvable instances within bound, worst ratio {worst:.3}"))
}

fn subsets(len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << len).map(move |mask| (0..len).filter(|&i| mask >> i & 1 == 1).collect())
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let opts = SolverOptions::default();
    let rounds = 120 * scale();
    for _ in 0..rounds {
        let a: Vec<u64> = (0..rng.gen_range(1..=10)).map(|_| rng.gen_range(1..=30)).collect();
        let total: u64 = a.iter().sum();
        let s = rng.gen_range(1..=total + 5);
        let direct = subsets(a.len()).any(|sub| !sub.is_empty() && sub.iter().map(|&i| a[i]).sum::<u64>() == s);
        let inst = from_subset_sum(&a, s).map_err(|e| e.to_string())?;
        let oracle = oracle_exact_spend(&inst, Criterion::StrictMajority, &opts).map_err(|e| e.to_string())?;
        let dp = solve_exact_mb(&inst, Criterion::StrictMajority, &opts).map_err(|e| e.to_string())?;
        if oracle != direct || dp.feasible != direct {
            return Err(format!("subset sum {a:?} -> {s}: direct {direct}, oracle {oracle}, dp {}", dp.feasible));
        }
    }
    for round in 0..rounds {
        let items = rng.gen_range(1..=12);
        let w: Vec<Money> = (0..items).map(|_| rng.gen_range(0..=15)).collect();
        let p: Vec<u64> = (0..items).map(|_| rng.gen_range(1..=15)).collect();
        let cap = rng.gen_range(0..=w.iter().sum::<u64>());
        let goal = rng.gen_range(0..=p.iter().sum::<u64>());
        let direct = subsets(items).any(|sub| {
            sub.iter().map(|&i| w[i]).sum::<u64>() <= cap && sub.iter().map(|&i| p[i]).sum::<u64>() >= goal
        });
        let inst = from_knapsack(&w, &p, cap, goal).map_err(|e| e.to_string())?;
        let solved = solve_weighted_mb_ib(&inst, Method::Micro, Criterion::StrictMajority).map_err(|e| e.to_string())?;
        if solved.feasible != direct {
            return Err(format!("knapsack round {round}: direct {direct}, solver {}", solved.feasible));
        }
    }
    for round in 0..rounds {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=3);
        let e: Vec<Vec<bool>> = (0..m).map(|_| (0..n).map(|_| rng.gen()).collect()).collect();
        let z: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let b = rng.gen_range(0..=m as u64);
        // choose at most b voters to vote the agenda everywhere
        let direct = subsets(m).any(|sub| {
            sub.len() as u64 <= b
                && (0..n).all(|j| {
                    let agree = (0..m).filter(|&i| sub.contains(&i) || e[i][j] == z[j]).count();
                    2 * agree > m
                })
        });
        let inst = from_optimal_lobbying(&e, &z, b).map_err(|e| e.to_string())?;
        let oracle = oracle_min_budget(&inst, Method::Voter, Criterion::StrictMajority, &opts).map_err(|e| e.to_string())?;
        let exact = solve_vb_exact(&inst, Criterion::StrictMajority, &opts).map_err(|e| e.to_string())?;
        if oracle.feasible != direct || exact.feasible != direct {
            return Err(format!(
                "optimal lobbying round {round}: direct {direct}, oracle {}, solver {}",
                oracle.feasible, exact.feasible
            ));
        }
    }
    Ok(format!("{rounds} subset-sum, {rounds} knapsack, {rounds} optimal-lobbying sources agree"))
}

fn criterion_7() -> Check {
    let opts = SolverOptions::default();
    let mut count = 0;
    for seed in 0..300 * scale() {
        let cfg = GenConfig {
            issues: (1, 8),
            budget: Some(seed % 51),
            max_weight: Some(6),
            ..small_config()
        }
        .with_seed(seed);
        let inst = gen_random(&cfg).map_err(|e| e.to_string())?;
        for method in [Method::Micro, Method::Issue] {
            for criterion in Criterion::ALL {
                let dp = solve_weighted_mb_ib(&inst, method, criterion).map_err(|e| e.to_string())?;
                let brute = oracle_weighted(&inst, method, criterion, &opts).map_err(|e| e.to_string())?;
                if (dp.min_cost, dp.feasible) != (brute.min_cost, brute.feasible) {
                    return Err(format!(
                        "{method}-{criterion} seed {seed}: DP {:?}/{}, oracle {:?}/{}",
                        dp.min_cost, dp.feasible, brute.min_cost, brute.feasible
                    ));
                }
                count += 1;
            }
        }
        if inst.issues() <= 3 {
            for criterion in Criterion::ALL {
                let exact = solve_weighted_vb_exact(&inst, criterion, &opts).map_err(|e| e.to_string())?;
                let brute = oracle_weighted(&inst, Method::Voter, criterion, &opts).map_err(|e| e.to_string())?;
                if exact.min_cost != brute.min_cost {
                    return Err(format!(
                        "vb-{criterion} seed {seed}: search {:?}, oracle {:?}",
                        exact.min_cost, brute.min_cost
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} weighted solves equal the oracle"))
}

/// A random instance whose voters are copied one to three times each.
fn duplicated(seed: u64) -> Instance {
    let cfg = GenConfig {
        voters: (1, 3),
        issues: (1, 3),
        k: (0, 1),
        budget: None,
        agenda: AgendaPolicy::Random,
        threshold: ThresholdPolicy::Random,
        ..GenConfig::default()
    }
    .with_seed(seed);
    let base = gen_random(&cfg).unwrap().to_raw();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut raw = RawInstance {
        levels: Vec::new(),
        costs: Vec::new(),
        ..base.clone()
    };
    for i in 0..base.levels.len() {
        for _ in 0..rng.gen_range(1..=3) {
            raw.levels.push(base.levels[i].clone());
            raw.costs.push(base.costs[i].clone());
        }
    }
    raw.budget = rng.gen_range(0..=30);
    Instance::validate(raw).unwrap()
}

fn criterion_8() -> Check {
    let opts = SolverOptions::default();
    let (mut compared, mut shrunk) = (0, 0);
    let count = 150 * scale();
    for seed in 0..count {
        let inst = duplicated(seed);
        let kernel = kernelize_vb(&inst).map_err(|e| e.to_string())?;
        let before = solve_vb_exact(&inst, Criterion::StrictMajority, &opts).map_err(|e| e.to_string())?;
        let after = solve_vb_exact(&kernel.instance, Criterion::StrictMajority, &opts).map_err(|e| e.to_string())?;
        if kernel.instance.voters() < inst.voters() {
            shrunk += 1;
        }
        if before.min_cost.is_some_and(|c| c <= inst.budget()) {
            compared += 1;
            if before.min_cost != after.min_cost {
                return Err(format!("seed {seed}: original {:?}, kernel {:?}", before.min_cost, after.min_cost));
            }
        } else if after.feasible {
            return Err(format!("seed {seed}: kernel feasible at {:?} but original is not", after.min_cost));
        }
    }
    Ok(format!("{compared} within-budget optima preserved, {shrunk} of {count} instances shrunk"))
}

fn plan_wins(inst: &Instance, report: &SolveReport, criterion: Criterion) -> bool {
    let Some(plan) = &report.plan else { return !report.feasible };
    let cost_ok = plan_cost(inst, plan).ok() == report.min_cost;
    let after = apply_bribery(inst, plan).expect("solver plans apply");
    cost_ok && evaluate(&after, criterion).matches(inst.agenda())
}

fn criterion_9() -> Check {
    let opts = SolverOptions::default();
    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    });
    let cfg = small_config();
    let result = runner.run(&any::<u64>(), |seed| {
        let inst = gen_random(&cfg.with_seed(seed)).unwrap();
        let norm = normalize_agenda(&inst);
        for c in Criterion::ALL {
            let original = evaluate(&inst, c);
            let flipped = evaluate(&norm, c);
            for j in 0..inst.issues() {
                prop_assert_eq!(flipped.bits[j], original.bits[j] == inst.agenda()[j], "normalization, {}", c);
            }
            for method in Method::ALL {
                if let Ok(report) = optimized(&inst, method, c) {
                    if report.feasible {
                        prop_assert!(plan_wins(&inst, &report, c), "plan of {}-{}", method, c);
                    }
                }
            }
        }
        let raw = inst.to_raw();
        // one voter: criteria coincide and micro equals issue bribery
        let single = Instance::validate(RawInstance {
            levels: raw.levels[..1].to_vec(),
            costs: raw.costs[..1].to_vec(),
            ..raw.clone()
        })
        .unwrap();
        prop_assert_eq!(
            evaluate(&single, Criterion::StrictMajority),
            evaluate(&single, Criterion::AverageMajority)
        );
        for c in Criterion::ALL {
            let mb = min_of(optimized(&single, Method::Micro, c)).unwrap();
            let ib = min_of(optimized(&single, Method::Issue, c)).unwrap();
            prop_assert_eq!(mb, ib, "m=1 MB vs IB, {}", c);
        }
        // one issue: micro equals voter bribery
        let one_issue = Instance::validate(RawInstance {
            levels: raw.levels.iter().map(|r| r[..1].to_vec()).collect(),
            costs: raw.costs.iter().map(|r| r[..1].to_vec()).collect(),
            agenda: raw.agenda[..1].to_vec(),
            weights: None,
            objective: None,
            ..raw.clone()
        })
        .unwrap();
        for c in Criterion::ALL {
            let mb = min_of(optimized(&one_issue, Method::Micro, c)).unwrap();
            let vb = min_of(solve_vb_exact(&one_issue, c, &opts)).unwrap();
            prop_assert_eq!(mb, vb, "n=1 MB vs VB, {}", c);
        }
        // k = 0 at one half, strict: the two criteria coincide
        if inst.k() == 0 {
            let half = inst.with_threshold(Threshold::HALF, Comparison::Strict);
            prop_assert_eq!(
                evaluate(&half, Criterion::StrictMajority),
                evaluate(&half, Criterion::AverageMajority)
            );
        }
        Ok(())
    });
    match result {
        Ok(()) => Ok("256 random cases, all invariants hold".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Name, check, and the time it is expected to fit in.
type Entry = (&'static str, fn() -> Check, Duration);

fn main() -> ExitCode {
    let criteria: [Entry; 9] = [
        ("1 running-example evaluation", criterion_1, Duration::from_millis(1)),
        ("2 cover numbers", criterion_2, Duration::from_secs(1)),
        ("3 solver-oracle equivalence", criterion_3, Duration::from_secs(60)),
        ("4 path schedule DP", criterion_4, Duration::from_secs(10)),
        ("5 greedy ratio bound", criterion_5, Duration::from_secs(60)),
        ("6 reduction fidelity", criterion_6, Duration::from_secs(60)),
        ("7 weighted DP", criterion_7, Duration::from_secs(30)),
        ("8 kernel soundness", criterion_8, Duration::from_secs(60)),
        ("9 structural invariants", criterion_9, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let slow = if took > budget {
            format!(" (over the {budget:?} budget)")
        } else {
            String::new()
        };
        match result {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{took:.2?}]{slow}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{took:.2?}]");
            }
        }
    }
    if failed == 0 {
        println!("all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
