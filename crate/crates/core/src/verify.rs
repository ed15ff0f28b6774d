//! Checks the closed-form P-set `{(⌊nα⌋, ⌊nβ⌋), (⌊nβ⌋, ⌊nα⌋)}` against the
//! solver and against the game rules directly.
//!
//! The two routes are independent: [`verify_theorem`] compares the solver's
//! grid with the formula set, while [`check_p_to_n`] and [`check_n_to_p`]
//! only use the formula set and the move rules.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::BeattyPair;
use crate::rules::{apply_move, Move, Position, RuleSet};
use crate::solver::{solve_grid_with, Outcome, SolverConfig};

/// The β values every theorem check runs against: both digit constants
/// and three surds covering both parities of `⌊β⌋`.
pub const FIXTURE_SPECS: [&str; 5] = [
    "pi",
    "e",
    "surd:(2+1*sqrt(2))/1",
    "surd:(1+1*sqrt(3))/1",
    "surd:(3+1*sqrt(13))/2",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaEntry {
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

/// `(n, ⌊nα⌋, ⌊nβ⌋)` for every `n ≥ 0` with `⌊nβ⌋ ≤ n_max`.
#[derive(Debug, Clone)]
pub struct FormulaSet {
    pair: BeattyPair,
    n_max: u64,
    entries: Vec<FormulaEntry>,
    /// `partner[v]` is the other coordinate of the formula position that
    /// has `v` as a coordinate, when that position is in range.
    partner: Vec<Option<u64>>,
    by_difference: BTreeMap<i64, Vec<u64>>,
}

/// Formula positions with `⌊nβ⌋ ≤ n_max`.
pub fn formula_positions(pair: &BeattyPair, n_max: u64) -> Result<FormulaSet> {
    let betas = pair.beta().beatty_up_to(n_max)?;
    let alphas = pair.alpha().beatty_prefix(betas.len() as u64)?;
    let mut entries = vec![FormulaEntry { n: 0, a: 0, b: 0 }];
    entries.extend(
        alphas
            .into_iter()
            .zip(betas)
            .enumerate()
            .map(|(i, (a, b))| FormulaEntry {
                n: i as u64 + 1,
                a,
                b,
            }),
    );
    Ok(FormulaSet::build(pair.clone(), n_max, entries))
}

impl FormulaSet {
    /// The first `count` entries after `n = 0`, with `n_max = ⌊count·β⌋`.
    pub fn first(pair: &BeattyPair, count: u64) -> Result<FormulaSet> {
        let n_max = pair.beta().floor_mul(count)?;
        formula_positions(pair, n_max)
    }

    fn build(pair: BeattyPair, n_max: u64, entries: Vec<FormulaEntry>) -> Self {
        let mut partner = vec![None; n_max as usize + 1];
        let mut by_difference: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
        for e in &entries {
            partner[e.a as usize] = Some(e.b);
            partner[e.b as usize] = Some(e.a);
            let d = e.a as i64 - e.b as i64;
            by_difference.entry(d).or_default().push(e.n);
            if d != 0 {
                by_difference.entry(-d).or_default().push(e.n);
            }
        }
        FormulaSet {
            pair,
            n_max,
            entries,
            partner,
            by_difference,
        }
    }

    pub fn pair(&self) -> &BeattyPair {
        &self.pair
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn entries(&self) -> &[FormulaEntry] {
        &self.entries
    }

    pub fn contains(&self, pos: Position) -> bool {
        pos.x <= self.n_max && pos.y <= self.n_max && self.partner[pos.x as usize] == Some(pos.y)
    }

    /// Both orientations of every entry, lexicographically sorted.
    pub fn positions(&self) -> Vec<Position> {
        let mut out: Vec<Position> = self
            .entries
            .iter()
            .flat_map(|e| [Position::new(e.a, e.b), Position::new(e.b, e.a)])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Formula positions whose coordinate difference `x - y` is `d`.
    fn with_difference(&self, d: i64) -> impl Iterator<Item = Position> + '_ {
        self.by_difference
            .get(&d)
            .into_iter()
            .flatten()
            .map(move |&n| {
                let e = self.entries[n as usize];
                if e.a as i64 - e.b as i64 == d {
                    Position::new(e.a, e.b)
                } else {
                    Position::new(e.b, e.a)
                }
            })
    }
}

/// A move between two formula positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PtoNViolation {
    pub from: Position,
    #[serde(rename = "move")]
    pub mv: Move,
    pub to: Position,
}

/// A non-formula position with no legal move into the formula set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NtoPViolation {
    pub position: Position,
    /// Formula positions that were candidates but not legally reachable.
    pub attempted: Vec<Position>,
}

/// No legal move may connect two formula positions.
pub fn check_p_to_n(rules: &RuleSet, fs: &FormulaSet) -> Result<Vec<PtoNViolation>> {
    let mut violations = Vec::new();
    for from in fs.positions() {
        for mv in rules.legal_moves(from)? {
            let to = apply_move(from, mv)?;
            if fs.contains(to) {
                violations.push(PtoNViolation { from, mv, to });
            }
        }
    }
    Ok(violations)
}

/// The region [`check_n_to_p`] inspects: `0..=bound` on both axes, where
/// `bound = min(n_max, fs.n_max) - (⌊β⌋ + 1)`.
pub fn n_to_p_bound(fs: &FormulaSet, n_max: u64) -> Option<u64> {
    n_max.min(fs.n_max()).checked_sub(fs.pair().k() + 1)
}

/// A legal move from `pos` into the formula set, found by looking up the
/// formula positions on the same row, column and nearby differences.
pub fn witness_move(
    rules: &RuleSet,
    fs: &FormulaSet,
    pos: Position,
) -> Result<(Option<Move>, Vec<Position>)> {
    let mut attempted = Vec::new();
    let mut candidates = Vec::new();
    if let Some(Some(y)) = fs.partner.get(pos.x as usize) {
        candidates.push(Position::new(pos.x, *y));
    }
    if let Some(Some(x)) = fs.partner.get(pos.y as usize) {
        candidates.push(Position::new(*x, pos.y));
    }
    let d = pos.x as i64 - pos.y as i64;
    let reach = rules.k().saturating_sub(1).min(i64::MAX as u64) as i64;
    for dd in d.saturating_sub(reach)..=d.saturating_add(reach) {
        candidates.extend(
            fs.with_difference(dd)
                .filter(|t| t.x < pos.x && t.y < pos.y),
        );
    }
    for target in candidates {
        let Some(mv) = Move::between(pos, target) else {
            continue;
        };
        if rules.is_legal(pos, mv)? {
            return Ok((Some(mv), attempted));
        }
        attempted.push(target);
    }
    Ok((None, attempted))
}

/// Every non-formula position inside the guarded region must have a legal
/// move into the formula set.
pub fn check_n_to_p(rules: &RuleSet, fs: &FormulaSet, n_max: u64) -> Result<Vec<NtoPViolation>> {
    let Some(bound) = n_to_p_bound(fs, n_max) else {
        return Ok(Vec::new());
    };
    let mut violations = Vec::new();
    for x in 0..=bound {
        for y in 0..=bound {
            let pos = Position::new(x, y);
            if fs.contains(pos) {
                continue;
            }
            let (mv, attempted) = witness_move(rules, fs, pos)?;
            if mv.is_none() {
                violations.push(NtoPViolation {
                    position: pos,
                    attempted,
                });
            }
        }
    }
    Ok(violations)
}

/// `Δb` relative to `⌊β⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaStep {
    Floor,
    FloorPlusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DifferencePair {
    pub da: u64,
    pub db: BetaStep,
}

/// Counts of the four admissible consecutive differences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DifferenceHistogram {
    #[serde(rename = "(1,floor)")]
    pub one_floor: u64,
    #[serde(rename = "(1,floor+1)")]
    pub one_floor_plus_one: u64,
    #[serde(rename = "(2,floor)")]
    pub two_floor: u64,
    #[serde(rename = "(2,floor+1)")]
    pub two_floor_plus_one: u64,
}

impl DifferenceHistogram {
    pub fn get(&self, pair: DifferencePair) -> u64 {
        match (pair.da, pair.db) {
            (1, BetaStep::Floor) => self.one_floor,
            (1, BetaStep::FloorPlusOne) => self.one_floor_plus_one,
            (2, BetaStep::Floor) => self.two_floor,
            (2, BetaStep::FloorPlusOne) => self.two_floor_plus_one,
            _ => 0,
        }
    }

    fn bump(&mut self, pair: DifferencePair) {
        match (pair.da, pair.db) {
            (1, BetaStep::Floor) => self.one_floor += 1,
            (1, BetaStep::FloorPlusOne) => self.one_floor_plus_one += 1,
            (2, BetaStep::Floor) => self.two_floor += 1,
            (2, BetaStep::FloorPlusOne) => self.two_floor_plus_one += 1,
            _ => unreachable!("only admissible pairs are counted"),
        }
    }

    pub fn total(&self) -> u64 {
        self.one_floor + self.one_floor_plus_one + self.two_floor + self.two_floor_plus_one
    }

    pub fn all_four_occur(&self) -> bool {
        self.one_floor > 0
            && self.one_floor_plus_one > 0
            && self.two_floor > 0
            && self.two_floor_plus_one > 0
    }
}

/// A consecutive difference outside the four admissible pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DifferenceViolation {
    pub n: u64,
    pub da: u64,
    pub db: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DifferenceReport {
    pub histogram: DifferenceHistogram,
    pub violations: Vec<DifferenceViolation>,
    /// `n` at which each pair first occurs, in the histogram's order.
    pub first_seen: [Option<u64>; 4],
}

/// Classifies `(a_n - a_{n-1}, b_n - b_{n-1})` for consecutive entries.
pub fn difference_pairs(fs: &FormulaSet) -> DifferenceReport {
    let k = fs.pair().k();
    let mut report = DifferenceReport::default();
    for w in fs.entries().windows(2) {
        let (prev, cur) = (w[0], w[1]);
        let (da, db) = (cur.a - prev.a, cur.b - prev.b);
        let step = match db {
            _ if db == k => Some(BetaStep::Floor),
            _ if db == k + 1 => Some(BetaStep::FloorPlusOne),
            _ => None,
        };
        match step {
            Some(db) if da == 1 || da == 2 => {
                let pair = DifferencePair { da, db };
                report.histogram.bump(pair);
                let slot = (da as usize - 1) * 2 + (db == BetaStep::FloorPlusOne) as usize;
                report.first_seen[slot].get_or_insert(cur.n);
            }
            _ => report
                .violations
                .push(DifferenceViolation { n: cur.n, da, db }),
        }
    }
    report
}

/// True iff every integer in `1..=limit` lies in exactly one of the two
/// Beatty sequences.
pub fn check_complementarity(pair: &BeattyPair, limit: u64) -> Result<bool> {
    let mut hits = vec![0u8; limit as usize + 1];
    for v in pair
        .alpha()
        .beatty_up_to(limit)?
        .into_iter()
        .chain(pair.beta().beatty_up_to(limit)?)
    {
        hits[v as usize] = hits[v as usize].saturating_add(1);
    }
    Ok(hits[1..].iter().all(|&h| h == 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub x: u64,
    pub y: u64,
    pub solver: Outcome,
    pub formula: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub beta: String,
    pub n_max: u64,
    pub k: u64,
    pub theorem_holds: bool,
    pub first_discrepancy: Option<Discrepancy>,
    pub solver_p_positions: usize,
    pub formula_p_positions: usize,
    pub p_to_n_violations: Vec<PtoNViolation>,
    pub n_to_p_checked_bound: Option<u64>,
    pub n_to_p_violations: Vec<NtoPViolation>,
    pub difference_pairs: DifferenceHistogram,
    pub difference_pair_violations: Vec<DifferenceViolation>,
    pub complementarity_holds: bool,
}

/// Solves the grid, builds the formula set, and runs every check.
pub fn verify_theorem(rules: &RuleSet, n_max: u64) -> Result<VerificationReport> {
    verify_theorem_with(rules, n_max, &SolverConfig::default())
}

pub fn verify_theorem_with(
    rules: &RuleSet,
    n_max: u64,
    config: &SolverConfig,
) -> Result<VerificationReport> {
    if !rules.is_variant() {
        return Err(Error::NotVariant);
    }
    let beta = rules.beta().expect("variant rules carry beta").clone();
    let pair = BeattyPair::new(beta)?;
    let grid = solve_grid_with(rules, n_max, config)?;
    let fs = formula_positions(&pair, n_max)?;

    let mut first_discrepancy = None;
    'scan: for x in 0..=n_max {
        for y in 0..=n_max {
            let pos = Position::new(x, y);
            let solver = grid.classify(pos)?;
            let formula = if fs.contains(pos) {
                Outcome::P
            } else {
                Outcome::N
            };
            if solver != formula {
                first_discrepancy = Some(Discrepancy {
                    x,
                    y,
                    solver,
                    formula,
                });
                break 'scan;
            }
        }
    }

    let p_to_n = check_p_to_n(rules, &fs)?;
    let n_to_p = check_n_to_p(rules, &fs, n_max)?;
    let diffs = difference_pairs(&fs);
    let complementarity_holds = check_complementarity(&pair, n_max.max(1))?;

    let theorem_holds = first_discrepancy.is_none()
        && p_to_n.is_empty()
        && n_to_p.is_empty()
        && diffs.violations.is_empty()
        && complementarity_holds;

    Ok(VerificationReport {
        beta: pair.beta().render(),
        n_max,
        k: rules.k(),
        theorem_holds,
        first_discrepancy,
        solver_p_positions: grid.p_count(),
        formula_p_positions: fs.positions().len(),
        p_to_n_violations: p_to_n,
        n_to_p_checked_bound: n_to_p_bound(&fs, n_max),
        n_to_p_violations: n_to_p,
        difference_pairs: diffs.histogram,
        difference_pair_violations: diffs.violations,
        complementarity_holds,
    })
}
