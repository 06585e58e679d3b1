//! Deterministic experiments that check the combinatorial and numeric claims
//! on small cases and report every counterexample.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Limits;
use crate::dual_graph::{cubical_distances_from, facet_neighbors};
use crate::error::{Error, Result};
use crate::grassmann::{
    extract_arrangement, sample_positive_point, second_largest_witness, torus_normalize, Arithmetic,
    ArrangementPartition, PluckerVector, RationalMatrix,
};
use crate::order_theory::{build_young_grid, grid_inequalities, infer_poset, swapping_distance, trial_seed};
use crate::subset::{all_subsets, in_ball, sort_merge_unchecked, sorted_pair_unchecked, KSubset};
use crate::triangulation::{enumerate_maximal_sorted, eulerian_number, SortedCollection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    TriangulationCounts,
    UnsortedTripleLemma,
    SecondLargestNecessity,
    SecondLargestSufficiency,
    CubicalConjecture,
    BallBound,
    OnPlane,
    YoungGrid,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::TriangulationCounts,
        Experiment::UnsortedTripleLemma,
        Experiment::SecondLargestNecessity,
        Experiment::SecondLargestSufficiency,
        Experiment::CubicalConjecture,
        Experiment::BallBound,
        Experiment::OnPlane,
        Experiment::YoungGrid,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Experiment::TriangulationCounts => "triangulation-counts",
            Experiment::UnsortedTripleLemma => "unsorted-triple-lemma",
            Experiment::SecondLargestNecessity => "second-largest-necessity",
            Experiment::SecondLargestSufficiency => "second-largest-sufficiency",
            Experiment::CubicalConjecture => "cubical-conjecture",
            Experiment::BallBound => "ball-bound",
            Experiment::OnPlane => "on-plane",
            Experiment::YoungGrid => "young-grid",
        }
    }

    pub fn run(self, p: &ExperimentParams, opts: &VerifyOptions) -> Result<ExperimentReport> {
        match self {
            Experiment::TriangulationCounts => verify_triangulation_counts(p.k, p.n, &opts.limits),
            Experiment::UnsortedTripleLemma => verify_unsorted_triple_lemma(p.k, p.n, &opts.limits),
            Experiment::SecondLargestNecessity => verify_second_largest_necessity(p.k, p.n, p.trials, p.seed, opts),
            Experiment::SecondLargestSufficiency => verify_second_largest_sufficiency(p.k, p.n, p.seed, opts),
            Experiment::CubicalConjecture => verify_cubical_conjecture(p.k, p.n, p.t, p.trials, p.seed, opts),
            Experiment::BallBound => verify_ball_bound(p.k, p.n, p.t, p.trials, p.seed, opts),
            Experiment::OnPlane => verify_on_plane(p.k, p.n, &opts.limits),
            Experiment::YoungGrid => verify_young_grids(p.k, p.n, p.trials, p.seed, opts),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown experiment {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentParams {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub limits: Limits,
    /// Numeric experiments beyond `n = 8` need certified floats.
    pub allow_float: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseFailure {
    pub case: String,
    pub payload: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub id: String,
    pub params: Value,
    pub cases: u64,
    pub skipped: u64,
    /// Counterexamples to proved statements.
    pub failures: Vec<CaseFailure>,
    /// Anomalies in cases no proof covers; never fail the run.
    pub evidence: Vec<CaseFailure>,
    pub counters: BTreeMap<String, u64>,
    pub passed: bool,
    #[serde(skip)]
    pub runtime: Duration,
}

impl ExperimentReport {
    fn new(e: Experiment, params: Value) -> Self {
        ExperimentReport {
            id: e.id().to_string(),
            params,
            cases: 0,
            skipped: 0,
            failures: Vec::new(),
            evidence: Vec::new(),
            counters: BTreeMap::new(),
            passed: true,
            runtime: Duration::ZERO,
        }
    }

    fn fail(&mut self, case: impl Into<String>, payload: Value) {
        self.failures.push(CaseFailure { case: case.into(), payload });
    }

    fn count(&mut self, key: &str, by: u64) {
        *self.counters.entry(key.to_string()).or_default() += by;
    }

    fn finish(mut self, start: Instant) -> Self {
        self.passed = self.failures.is_empty();
        self.runtime = start.elapsed();
        self
    }

    pub fn csv_header() -> &'static str {
        "id,params,cases,skipped,failures,evidence,passed"
    }

    pub fn csv_row(&self) -> String {
        let params = self
            .params
            .as_object()
            .map(|m| m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.id,
            params,
            self.cases,
            self.skipped,
            self.failures.len(),
            self.evidence.len(),
            self.passed
        )
    }
}

fn subsets_json(s: &[KSubset]) -> Value {
    Value::Array(s.iter().map(|x| Value::String(x.compact())).collect())
}

fn numeric_mode(n: usize, opts: &VerifyOptions) -> Result<Arithmetic> {
    if n <= 8 {
        Ok(Arithmetic::Exact)
    } else if opts.allow_float {
        Ok(Arithmetic::Float { bits: opts.limits.precision_bits })
    } else {
        Err(Error::Parameter(format!("n = {n} needs float arithmetic; enable it explicitly")))
    }
}

struct Sample {
    cell: usize,
    matrix: RationalMatrix,
    arrangement: ArrangementPartition,
}

/// A random positive point normalised so a random maximal cell is on top.
fn normalized_sample(cells: &[SortedCollection], k: usize, n: usize, seed: u64, trial: usize, arith: Arithmetic) -> Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial as u64));
    let cell = rng.gen_range(0..cells.len());
    let a = sample_positive_point(k, n, rng.next_u64())?;
    let (scaling, normalized) = torus_normalize(&a, &cells[cell], arith)?;
    let arrangement = extract_arrangement(&normalized)?;
    let matrix = match scaling.exact_alpha(&a)? {
        Some(alpha) => a.scale_columns(&alpha)?,
        None => a,
    };
    Ok(Sample { cell, matrix, arrangement })
}

fn sample_payload(s: &Sample, cells: &[SortedCollection]) -> Value {
    json!({
        "J": subsets_json(cells[s.cell].members()),
        "matrix": s.matrix.to_json_value(),
        "blocks_from_top": s.arrangement.partition.blocks().iter().rev().take(4).map(|b| subsets_json(b)).collect::<Vec<_>>(),
    })
}

/// Enumeration size against the Eulerian number.
pub fn verify_triangulation_counts(k: usize, n: usize, limits: &Limits) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut r = ExperimentReport::new(Experiment::TriangulationCounts, json!({"k": k, "n": n}));
    let found = enumerate_maximal_sorted(k, n, limits)?.len();
    let expected = eulerian_number(n - 1, k - 1);
    r.cases = 1;
    r.count("cells", found as u64);
    if expected != found.into() {
        r.fail(format!("({k},{n})"), json!({"enumerated": found, "eulerian": expected.to_string()}));
    }
    Ok(r.finish(start))
}

fn check_small(k: usize, n: usize, limits: &Limits) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::Parameter(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    if crate::subset::binomial(n, k) > limits.max_subsets as u128 {
        return Err(Error::SizeLimit(format!("C({n},{k}) exceeds {}", limits.max_subsets)));
    }
    Ok(())
}

/// For every `U, V` sorted and `W` sorted with neither, the six sets made
/// from `U, V` and the sort images of `W` against them are not sorted.
pub fn verify_unsorted_triple_lemma(k: usize, n: usize, limits: &Limits) -> Result<ExperimentReport> {
    let start = Instant::now();
    check_small(k, n, limits)?;
    let mut r = ExperimentReport::new(Experiment::UnsortedTripleLemma, json!({"k": k, "n": n}));
    let all = all_subsets(n, k);
    let outcome: Vec<(u64, u64, Vec<CaseFailure>)> = all
        .par_iter()
        .map(|w| {
            let (mut cases, mut skipped, mut bad) = (0, 0, Vec::new());
            for (iu, u) in all.iter().enumerate() {
                for v in &all[iu + 1..] {
                    if [u, v].contains(&w) {
                        continue;
                    }
                    if !sorted_pair_unchecked(u, v) || sorted_pair_unchecked(w, u) || sorted_pair_unchecked(w, v) {
                        skipped += 1;
                        continue;
                    }
                    cases += 1;
                    let (a, b) = sort_merge_unchecked(w, u);
                    let (c, d) = sort_merge_unchecked(w, v);
                    let t = [*u, *v, a, b, c, d];
                    let sorted = t.iter().all(|x| t.iter().all(|y| sorted_pair_unchecked(x, y)));
                    if sorted {
                        bad.push(CaseFailure {
                            case: format!("W={} U={} V={}", w.compact(), u.compact(), v.compact()),
                            payload: json!({"T": subsets_json(&t)}),
                        });
                    }
                }
            }
            (cases, skipped, bad)
        })
        .collect();
    for (c, s, bad) in outcome {
        r.cases += c;
        r.skipped += s;
        r.failures.extend(bad);
    }
    Ok(r.finish(start))
}

/// `{W} ∪ J` is sorted, or `W` fails to be sorted with exactly one member.
pub fn second_largest_condition(j: &[KSubset], w: &KSubset) -> bool {
    j.iter().filter(|m| !sorted_pair_unchecked(m, w)).count() <= 1
}

/// Members of the second block of random normalised points satisfy one of
/// the two necessary conditions.
pub fn verify_second_largest_necessity(
    k: usize,
    n: usize,
    trials: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let arith = numeric_mode(n, opts)?;
    let cells = enumerate_maximal_sorted(k, n, &opts.limits)?;
    let mut r = ExperimentReport::new(
        Experiment::SecondLargestNecessity,
        json!({"k": k, "n": n, "trials": trials, "seed": seed}),
    );
    if k == 1 {
        r.skipped = trials as u64;
        return Ok(r.finish(start));
    }
    let samples: Vec<Sample> = (0..trials)
        .into_par_iter()
        .map(|t| normalized_sample(&cells, k, n, seed, t, arith))
        .collect::<Result<_>>()?;
    for (t, s) in samples.iter().enumerate() {
        let j = cells[s.cell].members();
        for w in s.arrangement.partition.block_from_top(2).unwrap_or(&[]) {
            r.cases += 1;
            if !second_largest_condition(j, w) {
                let mut payload = sample_payload(s, &cells);
                payload["W"] = Value::String(w.compact());
                r.fail(format!("trial {t}"), payload);
            }
        }
    }
    Ok(r.finish(start))
}

/// Every subset in a facet-neighbour of every cell is realised as the unique
/// second largest minor, and there are at most `n` of them per cell.
pub fn verify_second_largest_sufficiency(k: usize, n: usize, seed: u64, opts: &VerifyOptions) -> Result<ExperimentReport> {
    let start = Instant::now();
    let arith = numeric_mode(n, opts)?;
    let cells = enumerate_maximal_sorted(k, n, &opts.limits)?;
    let mut r = ExperimentReport::new(Experiment::SecondLargestSufficiency, json!({"k": k, "n": n, "seed": seed}));
    let outcome: Vec<Result<(u64, usize, Vec<CaseFailure>)>> = cells
        .par_iter()
        .map(|j| {
            let mut ws: Vec<KSubset> = facet_neighbors(j)?.into_iter().map(|(d, _)| d.replacement).collect();
            ws.sort();
            ws.dedup();
            let mut bad = Vec::new();
            if ws.len() > n {
                bad.push(CaseFailure {
                    case: format!("J={j} count"),
                    payload: json!({"J": subsets_json(j.members()), "W": subsets_json(&ws)}),
                });
            }
            for w in &ws {
                match second_largest_witness(j, w, seed, arith, &opts.limits) {
                    Ok(_) => {}
                    Err(e @ (Error::WitnessSearchExhausted { .. } | Error::PrecisionFailure(_))) => bad.push(CaseFailure {
                        case: format!("J={j} W={}", w.compact()),
                        payload: json!({"J": subsets_json(j.members()), "W": w.compact(), "error": e.to_string()}),
                    }),
                    Err(e) => return Err(e),
                }
            }
            Ok((ws.len() as u64, ws.len(), bad))
        })
        .collect();
    for o in outcome {
        let (cases, count, bad) = o?;
        r.cases += cases;
        let best = r.counters.entry("max_per_cell".into()).or_default();
        *best = (*best).max(count as u64);
        r.failures.extend(bad);
    }
    r.count("cells", cells.len() as u64);
    Ok(r.finish(start))
}

/// On random normalised points, a subset at cubical distance `t <= t_max`
/// never reaches the top `t` blocks. Cases covered by a proof fail the run;
/// others are reported as evidence.
pub fn verify_cubical_conjecture(
    k: usize,
    n: usize,
    t_max: usize,
    trials: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let arith = numeric_mode(n, opts)?;
    let cells = enumerate_maximal_sorted(k, n, &opts.limits)?;
    let mut r = ExperimentReport::new(
        Experiment::CubicalConjecture,
        json!({"k": k, "n": n, "t": t_max, "trials": trials, "seed": seed}),
    );
    let samples: Vec<Sample> = (0..trials)
        .into_par_iter()
        .map(|t| normalized_sample(&cells, k, n, seed, t, arith))
        .collect::<Result<_>>()?;
    let mut used: Vec<usize> = samples.iter().map(|s| s.cell).collect();
    used.sort();
    used.dedup();
    let dists: BTreeMap<usize, BTreeMap<KSubset, usize>> = used
        .par_iter()
        .map(|&c| Ok((c, cubical_distances_from(&cells[c], &opts.limits)?)))
        .collect::<Result<_>>()?;
    for (t, s) in samples.iter().enumerate() {
        let j = cells[s.cell].members();
        for (w, &d) in &dists[&s.cell] {
            if d > t_max {
                r.skipped += 1;
                continue;
            }
            r.cases += 1;
            let proved = d <= 3 || k == 2 || j.iter().any(|m| sorted_pair_unchecked(m, w));
            r.count(if proved { "proved_cases" } else { "open_cases" }, 1);
            let rank = s.arrangement.partition.rank_from_top(w).unwrap_or(usize::MAX);
            if rank <= d {
                let mut payload = sample_payload(s, &cells);
                payload["W"] = Value::String(w.compact());
                payload["distance"] = json!(d);
                payload["rank_from_top"] = json!(rank);
                let case = CaseFailure { case: format!("trial {t} W={}", w.compact()), payload };
                if proved {
                    r.failures.push(case);
                } else {
                    r.evidence.push(case);
                }
            }
        }
    }
    Ok(r.finish(start))
}

/// Members of the `t`-th block from the top lie in the ball of radius
/// `2^(t-1)` around every top member, both for normalised points (maximal top
/// block) and for the raw samples (generic top block).
pub fn verify_ball_bound(
    k: usize,
    n: usize,
    t_max: usize,
    trials: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let arith = numeric_mode(n, opts)?;
    if t_max >= usize::BITS as usize {
        return Err(Error::Parameter(format!("t = {t_max} is too large")));
    }
    let cells = enumerate_maximal_sorted(k, n, &opts.limits)?;
    let mut r = ExperimentReport::new(
        Experiment::BallBound,
        json!({"k": k, "n": n, "t": t_max, "trials": trials, "seed": seed}),
    );
    let pairs: Vec<(Sample, ArrangementPartition)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = normalized_sample(&cells, k, n, seed, t, arith)?;
            let raw = sample_positive_point(k, n, trial_seed(seed ^ 0xB411, t as u64))?;
            let raw = extract_arrangement(&crate::grassmann::plucker_all(&raw))?;
            Ok((s, raw))
        })
        .collect::<Result<_>>()?;
    for (trial, (s, raw)) in pairs.iter().enumerate() {
        for (label, arr) in [("normalized", &s.arrangement), ("raw", raw)] {
            let top = arr.partition.block_from_top(1).unwrap_or(&[]);
            for t in 1..=t_max {
                let radius = 1usize << (t - 1);
                for y in arr.partition.block_from_top(t).unwrap_or(&[]) {
                    for j in top {
                        r.cases += 1;
                        if !in_ball(&y.epsilon(), &j.epsilon(), radius) {
                            let mut payload = if label == "raw" { json!({}) } else { sample_payload(s, &cells) };
                            payload["Y"] = Value::String(y.compact());
                            payload["J"] = Value::String(j.compact());
                            payload["t"] = json!(t);
                            r.fail(format!("trial {trial} {label}"), payload);
                        }
                    }
                }
            }
        }
    }
    Ok(r.finish(start))
}

/// Window sums of the sort images are the floor and ceiling of the mean of
/// the window sums of the pair, for every pair and every window.
pub fn verify_on_plane(k: usize, n: usize, limits: &Limits) -> Result<ExperimentReport> {
    let start = Instant::now();
    check_small(k, n, limits)?;
    let mut r = ExperimentReport::new(Experiment::OnPlane, json!({"k": k, "n": n}));
    let all = all_subsets(n, k);
    let outcome: Vec<(u64, Vec<CaseFailure>)> = all
        .par_iter()
        .enumerate()
        .map(|(ii, x)| {
            let (mut cases, mut bad) = (0, Vec::new());
            for y in &all[ii..] {
                let (a, b) = sort_merge_unchecked(x, y);
                for i in 1..=n {
                    for j in i..=n {
                        cases += 1;
                        let sum = x.window_count(i, j) + y.window_count(i, j);
                        let mut got = [a.window_count(i, j), b.window_count(i, j)];
                        got.sort();
                        if got != [sum / 2, sum.div_ceil(2)] {
                            bad.push(CaseFailure {
                                case: format!("I={} J={} window {i}..{j}", x.compact(), y.compact()),
                                payload: json!({"sort": [a.compact(), b.compact()], "sums": got}),
                            });
                        }
                    }
                }
            }
            (cases, bad)
        })
        .collect();
    for (c, bad) in outcome {
        r.cases += c;
        r.failures.extend(bad);
    }
    Ok(r.finish(start))
}

/// For every cell and every subset sorted with part of it: the grid builds,
/// its swapping distance bounds the cubical distance, its inequalities are
/// derived by the poset closure and hold on `trials` normalised samples.
pub fn verify_young_grids(k: usize, n: usize, trials: usize, seed: u64, opts: &VerifyOptions) -> Result<ExperimentReport> {
    let start = Instant::now();
    let arith = numeric_mode(n, opts)?;
    let cells = enumerate_maximal_sorted(k, n, &opts.limits)?;
    let mut r = ExperimentReport::new(
        Experiment::YoungGrid,
        json!({"k": k, "n": n, "trials": trials, "seed": seed}),
    );
    let all = all_subsets(n, k);
    let outcome: Vec<Result<ExperimentReport>> = cells
        .par_iter()
        .enumerate()
        .map(|(ci, j)| {
            let mut part = ExperimentReport::new(Experiment::YoungGrid, Value::Null);
            let dists = cubical_distances_from(j, &opts.limits)?;
            let poset = infer_poset(j)?;
            let points: Vec<PluckerVector> = (0..trials)
                .map(|t| {
                    let a = sample_positive_point(k, n, trial_seed(seed, (ci * trials + t) as u64))?;
                    Ok(torus_normalize(&a, j, arith)?.1)
                })
                .collect::<Result<_>>()?;
            for w in all.iter().filter(|w| !j.contains(w)) {
                let grid = match build_young_grid(j, w) {
                    Ok(g) => g,
                    Err(Error::NotApplicable(_)) => {
                        part.skipped += 1;
                        continue;
                    }
                    Err(e @ (Error::ConstructionFailure(_) | Error::LemmaViolation { .. })) => {
                        part.fail(format!("J={j} W={}", w.compact()), json!({"error": e.to_string()}));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                part.cases += 1;
                let s = swapping_distance(&grid);
                let d = dists[w];
                if d > s {
                    part.fail(format!("J={j} W={}", w.compact()), json!({"cube_distance": d, "swapping_distance": s}));
                }
                for rel in grid_inequalities(&grid) {
                    if !poset.less(&rel.lower, &rel.upper) {
                        part.count("relations_not_inferred", 1);
                        part.evidence.push(CaseFailure {
                            case: format!("J={j} W={}", w.compact()),
                            payload: json!({"lower": rel.lower.compact(), "upper": rel.upper.compact()}),
                        });
                    }
                    for (t, p) in points.iter().enumerate() {
                        if p.compare(&rel.lower, &rel.upper)? != std::cmp::Ordering::Less {
                            part.fail(
                                format!("J={j} W={} sample {t}", w.compact()),
                                json!({"lower": rel.lower.compact(), "upper": rel.upper.compact()}),
                            );
                        }
                    }
                }
            }
            Ok(part)
        })
        .collect();
    for o in outcome {
        let part = o?;
        r.cases += part.cases;
        r.skipped += part.skipped;
        r.failures.extend(part.failures);
        r.evidence.extend(part.evidence);
        for (key, v) in part.counters {
            r.count(&key, v);
        }
    }
    Ok(r.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    #[test]
    fn counts() {
        let r = verify_triangulation_counts(2, 6, &Limits::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.counters["cells"], 26);
        assert_eq!(verify_triangulation_counts(1, 5, &Limits::default()).unwrap().counters["cells"], 1);
    }

    #[test]
    fn triple_lemma_small() {
        let r = verify_unsorted_triple_lemma(2, 5, &Limits::default()).unwrap();
        assert!(r.passed && r.cases > 0 && r.skipped > 0);
    }

    #[test]
    fn on_plane_small() {
        assert!(verify_on_plane(3, 6, &Limits::default()).unwrap().passed);
    }

    #[test]
    fn numeric_experiments_small() {
        assert!(verify_second_largest_necessity(2, 5, 10, 1, &opts()).unwrap().passed);
        assert!(verify_second_largest_necessity(1, 4, 3, 1, &opts()).unwrap().cases == 0);
        assert!(verify_cubical_conjecture(2, 5, 3, 5, 1, &opts()).unwrap().passed);
        assert!(verify_ball_bound(2, 5, 3, 5, 1, &opts()).unwrap().passed);
        assert!(verify_second_largest_sufficiency(2, 5, 1, &opts()).unwrap().passed);
    }

    #[test]
    fn young_grids_small() {
        let r = verify_young_grids(2, 5, 2, 1, &opts()).unwrap();
        assert!(r.passed, "{:?}", r.failures.first());
        assert!(r.cases > 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_ball_bound(2, 5, 2, 6, 9, &opts()).unwrap();
        let b = verify_ball_bound(2, 5, 2, 6, 9, &opts()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn float_needs_opt_in() {
        assert!(matches!(verify_ball_bound(2, 9, 2, 1, 0, &opts()), Err(Error::Parameter(_))));
    }

    #[test]
    fn experiment_names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.id().parse::<Experiment>().unwrap(), e);
        }
        assert!("nope".parse::<Experiment>().is_err());
    }
}
