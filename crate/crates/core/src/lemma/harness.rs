//! Lemma verification over random point sets topped up with sampled
//! boundary configurations, with deterministic aggregation.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_6;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::checks::{
    check_detour_lemma, check_lemma_abba, check_lemma_thetapath, detour_lemma_for, CheckOutcome,
    Lemma,
};
use super::config::{CanonicalConfig, ExtractStats, SixCone, ThetaFamily};
use super::sampler::sample_point_set;
use crate::error::Result;
use crate::geom::{ConeScheme, PointSet};

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessOptions {
    /// Number of cones `k = 6k'`.
    pub k: usize,
    pub lemmas: Vec<Lemma>,
    /// Applicable checks wanted per lemma.
    pub min_trials: usize,
    pub seed: u64,
    /// Uniform random sets tried before switching to the sampler.
    pub random_sets: usize,
    pub points_per_set: usize,
    /// Upper bound on sampled sets, to guarantee termination.
    pub max_sampled_sets: usize,
}

impl HarnessOptions {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            lemmas: Lemma::ALL.to_vec(),
            min_trials: 10_000,
            seed: 1,
            random_sets: 20,
            points_per_set: 100,
            max_sampled_sets: 2_000_000,
        }
    }
}

/// Pass/fail counts for one lemma in one case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tally {
    pub lemma: Lemma,
    pub case: String,
    pub trials: usize,
    pub failures: usize,
    /// Smallest slack seen; `+inf` when nothing was checked.
    pub worst_slack: f64,
    pub first_failure: Option<String>,
}

impl Tally {
    fn new(lemma: Lemma, case: String) -> Self {
        Self {
            lemma,
            case,
            trials: 0,
            failures: 0,
            worst_slack: f64::INFINITY,
            first_failure: None,
        }
    }

    fn record(&mut self, outcome: &CheckOutcome, context: impl FnOnce() -> String) {
        match outcome {
            CheckOutcome::Skip => {}
            CheckOutcome::Pass { slack } => {
                self.trials += 1;
                self.worst_slack = self.worst_slack.min(*slack);
            }
            CheckOutcome::Fail { slack, detail } => {
                self.trials += 1;
                self.failures += 1;
                self.worst_slack = self.worst_slack.min(*slack);
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("{}: {detail}", context()));
                }
            }
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.trials += other.trials;
        self.failures += other.failures;
        self.worst_slack = self.worst_slack.min(other.worst_slack);
        if self.first_failure.is_none() {
            self.first_failure.clone_from(&other.first_failure);
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct HarnessReport {
    pub k: usize,
    pub theta: f64,
    pub tallies: Vec<Tally>,
    pub random_sets: usize,
    pub sampled_sets: usize,
    pub configs: usize,
    pub degenerate: ExtractStats,
    /// Configurations whose `a'` falls in a 6-cone none of the detour
    /// lemmas covers.
    pub outside_cases: BTreeMap<String, usize>,
    pub invariant_violations: usize,
}

impl HarnessReport {
    pub fn trials(&self, lemma: Lemma) -> usize {
        self.tallies
            .iter()
            .filter(|t| t.lemma == lemma)
            .map(|t| t.trials)
            .sum()
    }

    pub fn failures(&self) -> usize {
        self.tallies.iter().map(|t| t.failures).sum::<usize>() + self.invariant_violations
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Case label of a configuration for a given lemma.
fn case_label(lemma: Lemma, config: &CanonicalConfig) -> String {
    match (lemma, config.case) {
        (Lemma::UpperDetour, _) if config.beta <= FRAC_PI_6 => "C62_low_beta".into(),
        (Lemma::UpperDetour, _) => "C62_high_beta".into(),
        (Lemma::LowerDetour, _) => "C66_low_alpha".into(),
        (Lemma::SmallDetour, Some(SixCone::C65)) => "C65".into(),
        (Lemma::SmallDetour, _) => "C66_high_alpha".into(),
        (_, Some(case)) => case.label().into(),
        (_, None) => "none".into(),
    }
}

/// Everything learned from one point set.
#[derive(Debug, Default)]
struct SetResult {
    tallies: BTreeMap<(Lemma, String), Tally>,
    configs: usize,
    degenerate: ExtractStats,
    outside_cases: BTreeMap<String, usize>,
    invariant_violations: usize,
}

impl SetResult {
    fn tally(&mut self, lemma: Lemma, case: String) -> &mut Tally {
        self.tallies
            .entry((lemma, case.clone()))
            .or_insert_with(|| Tally::new(lemma, case))
    }

    fn merge(&mut self, other: SetResult) {
        for (key, t) in other.tallies {
            self.tally(key.0, key.1).merge(&t);
        }
        self.configs += other.configs;
        self.degenerate.b_equals_b_prime += other.degenerate.b_equals_b_prime;
        self.degenerate.a_equals_a_prime += other.degenerate.a_equals_a_prime;
        self.degenerate.other_coincidence += other.degenerate.other_coincidence;
        for (case, n) in other.outside_cases {
            *self.outside_cases.entry(case).or_default() += n;
        }
        self.invariant_violations += other.invariant_violations;
    }

    fn trials(&self, lemma: Lemma) -> usize {
        self.tallies
            .iter()
            .filter(|(key, _)| key.0 == lemma)
            .map(|(_, t)| t.trials)
            .sum()
    }
}

/// Runs every wanted check on the configurations of one point set.
/// `all_pairs` additionally runs the Theta6 path lemma on every ordered
/// pair rather than only on Theta6 edges.
fn check_set(
    points: &PointSet,
    scheme: &ConeScheme,
    lemmas: &[Lemma],
    all_pairs: bool,
) -> Result<SetResult> {
    let family = ThetaFamily::build(points, scheme)?;
    let extraction = family.extract_configs()?;
    let mut result = SetResult {
        configs: extraction.configs.len(),
        degenerate: extraction.stats,
        ..SetResult::default()
    };

    if lemmas.contains(&Lemma::ThetaPath) {
        let pairs: Vec<(usize, usize)> = if all_pairs {
            let n = points.len();
            (0..n)
                .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
                .collect()
        } else {
            family.theta6.edge_pairs()
        };
        for (a, b) in pairs {
            let outcome = check_lemma_thetapath(&family.theta6, &family.paths, a, b);
            result
                .tally(Lemma::ThetaPath, "pair".into())
                .record(&outcome, || format!("pair ({a}, {b})"));
        }
    }

    for config in &extraction.configs {
        if !config.invariant_violations().is_empty() {
            result.invariant_violations += 1;
        }
        let describe = || {
            format!(
                "config a={} b={} b'={} a'={} alpha={} beta={} gamma={}",
                config.a, config.b, config.b_prime, config.a_prime, config.alpha, config.beta, config.gamma
            )
        };
        if lemmas.contains(&Lemma::Abba) {
            let outcome = check_lemma_abba(config);
            result
                .tally(Lemma::Abba, case_label(Lemma::Abba, config))
                .record(&outcome, describe);
        }
        match detour_lemma_for(config) {
            Some(lemma) => {
                if lemmas.contains(&lemma) {
                    let outcome = check_detour_lemma(lemma, &family, config);
                    result
                        .tally(lemma, case_label(lemma, config))
                        .record(&outcome, describe);
                }
            }
            None => {
                let label = config.case.map_or("none", SixCone::label).to_string();
                *result.outside_cases.entry(label).or_default() += 1;
            }
        }
    }
    Ok(result)
}

fn uniform_set(n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let coords: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
        if let Ok(set) = PointSet::from_coords(coords) {
            return set;
        }
    }
}

fn sub_seed(seed: u64, stream: u64, index: u64) -> u64 {
    // splitmix64 finalizer over the combined words
    let mut z = seed ^ stream.rotate_left(32) ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const SAMPLER_BATCH: usize = 4096;

pub fn run_harness(options: &HarnessOptions) -> Result<HarnessReport> {
    let scheme = ConeScheme::new(options.k)?;
    let lemmas = &options.lemmas;
    let enough = |r: &SetResult| lemmas.iter().all(|&l| r.trials(l) >= options.min_trials);

    // random sets, in parallel, merged in seed order
    let random: Vec<Result<SetResult>> = (0..options.random_sets as u64)
        .into_par_iter()
        .map(|i| {
            let set = uniform_set(options.points_per_set, sub_seed(options.seed, 1, i));
            check_set(&set, &scheme, lemmas, true)
        })
        .collect();
    let mut total = SetResult::default();
    for r in random {
        total.merge(r?);
    }

    // sampled sets in fixed-size batches until every lemma has enough trials
    let mut sampled_sets = 0;
    let mut batch = 0u64;
    while !enough(&total) && sampled_sets < options.max_sampled_sets {
        let results: Vec<Result<Option<SetResult>>> = (0..SAMPLER_BATCH as u64)
            .into_par_iter()
            .map(|j| {
                let index = batch * SAMPLER_BATCH as u64 + j;
                let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(options.seed, 2, index));
                let extra = rng.gen_range(0..4);
                match sample_point_set(&scheme, extra, &mut rng) {
                    Some(set) => check_set(&set, &scheme, lemmas, true).map(Some),
                    None => Ok(None),
                }
            })
            .collect();
        for r in results {
            if let Some(r) = r? {
                total.merge(r);
            }
        }
        sampled_sets += SAMPLER_BATCH;
        batch += 1;
    }

    Ok(HarnessReport {
        k: options.k,
        theta: scheme.theta(),
        tallies: total.tallies.into_values().collect(),
        random_sets: options.random_sets,
        sampled_sets,
        configs: total.configs,
        degenerate: total.degenerate,
        outside_cases: total.outside_cases,
        invariant_violations: total.invariant_violations,
    })
}

/// Rows `check,theta,case,trials,failures,worst_slack`.
pub fn report_rows(report: &HarnessReport) -> Vec<[String; 6]> {
    report
        .tallies
        .iter()
        .map(|t| {
            [
                t.lemma.label().to_string(),
                format!("pi/{}", report.k / 2),
                t.case.clone(),
                t.trials.to_string(),
                t.failures.to_string(),
                format!("{:e}", t.worst_slack),
            ]
        })
        .collect()
}
