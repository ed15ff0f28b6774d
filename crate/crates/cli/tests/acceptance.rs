//! One PASS/FAIL line per acceptance criterion of the primary component.
//! Exits non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bwythoff::exact::IrrationalSpec;
use bwythoff::verify::{
    check_complementarity, check_n_to_p, check_p_to_n, difference_pairs, FIXTURE_SPECS,
};
use bwythoff::{
    formula_positions, parse_beta_spec, solve_grid, solve_grid_naive, BeattyPair, FormulaSet,
    Outcome, Position, RuleSet,
};
use bwythoff_cli::selfplay;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pair(spec: &str) -> BeattyPair {
    BeattyPair::new(parse_beta_spec(spec).unwrap()).unwrap()
}

fn variant(spec: &str) -> RuleSet {
    RuleSet::variant(parse_beta_spec(spec).unwrap()).unwrap()
}

fn solver_matches_formula(spec: &str, n: u64) -> Result<Duration, String> {
    let t = Instant::now();
    let grid = solve_grid(&variant(spec), n).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let fs = formula_positions(&pair(spec), n).map_err(|e| e.to_string())?;
    let solver = grid.p_positions();
    let formula = fs.positions();
    ensure(solver == formula, || {
        let first = solver
            .iter()
            .zip(&formula)
            .find(|(a, b)| a != b)
            .map(|(a, b)| format!("solver {a} vs formula {b}"))
            .unwrap_or_else(|| format!("{} vs {} positions", solver.len(), formula.len()));
        format!("{spec} at {n}: {first}")
    })?;
    Ok(elapsed)
}

fn main_theorem_pi() -> Result<String, String> {
    let elapsed = solver_matches_formula("pi", 2000)?;
    ensure(elapsed <= Duration::from_secs(30), || {
        format!("solve took {elapsed:.2?}")
    })?;
    Ok(format!("solve {elapsed:.2?}"))
}

fn main_theorem_backends() -> Result<String, String> {
    for spec in &FIXTURE_SPECS[1..] {
        solver_matches_formula(spec, 1000)?;
    }
    Ok(format!("{} specs at n_max 1000", FIXTURE_SPECS.len() - 1))
}

fn p_to_n() -> Result<String, String> {
    for spec in FIXTURE_SPECS {
        let fs = formula_positions(&pair(spec), 1000).unwrap();
        let v = check_p_to_n(&variant(spec), &fs).unwrap();
        ensure(v.is_empty(), || format!("{spec}: {:?}", v.first()))?;
    }
    Ok("0 violations on 5 fixtures".into())
}

fn n_to_p() -> Result<String, String> {
    for spec in FIXTURE_SPECS {
        let fs = formula_positions(&pair(spec), 1000).unwrap();
        let v = check_n_to_p(&variant(spec), &fs, 1000).unwrap();
        ensure(v.is_empty(), || format!("{spec}: {:?}", v.first()))?;
    }
    Ok("0 violations on 5 fixtures".into())
}

fn four_difference_pairs() -> Result<String, String> {
    for spec in FIXTURE_SPECS {
        let fs = FormulaSet::first(&pair(spec), 100_000).unwrap();
        let r = difference_pairs(&fs);
        ensure(r.violations.is_empty(), || {
            format!("{spec}: {:?}", r.violations.first())
        })?;
    }
    let r = difference_pairs(&FormulaSet::first(&pair("pi"), 26).unwrap());
    ensure(r.histogram.all_four_occur(), || {
        format!("pi by 26: {:?}", r.histogram)
    })?;
    Ok(format!(
        "pi first seen at n = {:?}",
        r.first_seen.map(|n| n.unwrap_or(0))
    ))
}

fn complementarity() -> Result<String, String> {
    for spec in FIXTURE_SPECS {
        ensure(check_complementarity(&pair(spec), 100_000).unwrap(), || {
            spec.to_string()
        })?;
    }
    Ok("limit 10^5 on 5 fixtures".into())
}

fn example_one() -> Result<String, String> {
    let p = pair("pi");
    ensure(p.k() == 3, || format!("k = {}", p.k()))?;
    let beta = p.beta().beatty_prefix(8).unwrap();
    ensure(beta == [3, 6, 9, 12, 15, 18, 21, 25], || {
        format!("beta prefix {beta:?}")
    })?;
    let alpha = p.alpha().beatty_prefix(8).unwrap();
    ensure(alpha == [1, 2, 4, 5, 7, 8, 10, 11], || {
        format!("alpha prefix {alpha:?}")
    })?;
    Ok("k = 3, prefixes match".into())
}

fn naive_cross_check() -> Result<String, String> {
    let mut cases: Vec<(String, RuleSet)> = FIXTURE_SPECS
        .iter()
        .map(|s| (s.to_string(), variant(s)))
        .collect();
    for k in [1, 2, 3, 5] {
        cases.push((format!("invariant k={k}"), RuleSet::invariant(k)));
    }
    for (name, rules) in &cases {
        let fast = solve_grid(rules, 300).unwrap();
        let slow = solve_grid_naive(rules, 300).unwrap();
        ensure(fast == slow, || name.clone())?;
    }
    Ok(format!("{} rule sets at n_max 300", cases.len()))
}

fn variant_matters() -> Result<String, String> {
    let rules = RuleSet::variant(IrrationalSpec::pi()).unwrap();
    let a = solve_grid(&rules, 200).unwrap();
    let b = solve_grid(&rules.to_invariant(), 200).unwrap();
    let first = (0..=200u64)
        .flat_map(|x| (0..=200u64).map(move |y| Position::new(x, y)))
        .find(|&p| a.classify(p).unwrap() != b.classify(p).unwrap());
    let expected = Position::new(1, 3);
    ensure(first == Some(expected), || {
        format!("first divergence {first:?}")
    })?;
    ensure(
        a.classify(expected).unwrap() == Outcome::P && b.classify(expected).unwrap() == Outcome::N,
        || "outcomes at (1, 3)".into(),
    )?;
    Ok("first divergent cell (1, 3): variant P, invariant N".into())
}

fn self_play() -> Result<String, String> {
    let s = selfplay(&variant("pi"), 100, 200, 0).unwrap();
    ensure(s.engine_wins == 100 && s.within_ply_bound, || {
        format!("{s:?}")
    })?;
    Ok("100/100, seed 0".into())
}

fn precision_safety() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bwythoff"))
        .args(["verify", "--beta", "dec:2.7", "--n", "500"])
        .output()
        .map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(3), || {
        format!("exit {:?}", out.status.code())
    })?;
    ensure(out.stdout.is_empty(), || "a report was printed".into())?;
    ensure(stderr.contains("precision exhausted"), || {
        stderr.to_string()
    })?;
    Ok("exit 3, PrecisionExhausted".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 11] = [
        ("main theorem, pi, n_max 2000, <= 30 s", main_theorem_pi),
        (
            "main theorem across backends, n_max 1000",
            main_theorem_backends,
        ),
        ("P->N: no move between formula positions", p_to_n),
        ("N->P: every other position reaches the formula set", n_to_p),
        (
            "four difference pairs up to n = 10^5",
            four_difference_pairs,
        ),
        ("Rayleigh complementarity up to 10^5", complementarity),
        ("Example 1 values for pi", example_one),
        (
            "optimized and naive solvers agree at 300",
            naive_cross_check,
        ),
        ("variant rule changes the P-set", variant_matters),
        ("self-play from N positions", self_play),
        ("precision safety for dec:2.7", precision_safety),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {name}  ({detail}; {secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}  ({detail}; {secs:.2}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
