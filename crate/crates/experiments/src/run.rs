//! Experiment drivers.
//!
//! Trial `t` at size `n` always draws from the stream
//! `(mix(mix(seed, n), tag), t)`, and per-trial results are combined either
//! by integer addition or in trial order. Output therefore does not depend
//! on how many threads ran the trials.

use std::time::Instant;

use dice_core::enumeration::{
    count_balanced, enumerate_multiset, exact_pairwise_stats, exact_triple_stats, multiplicity,
    Caps, EnumerationError,
};
use dice_core::fourier::{
    self, box_bound_report, conditional_from_pmf, convolve_exact, gaussian_compare, maxnorm_check,
    tail_check_pmf, BoxBoundReport, BoxConstants, CheckStatus, FourierError, GaussianFit,
    MaxNormReport, TailReport,
};
use dice_core::samplers::{
    mix_seed, multiset_counts, DiceSource, Method, RngStream, SamplerError, SamplerStats,
};
use dice_core::tournament::{
    build_tournament, outdegree_concentration, path2_identity_check, pattern_frequencies,
    triple_census, PatternClass, TournamentError, TripleCensus,
};
use dice_core::{Die, DieError, Model};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, ExperimentConfig, Kind};
use crate::report::{
    exact_value, median, Check, Estimate, ExactValue, ExperimentReport, Section, Status,
};

const TAG_PAIRS: u64 = 1;
const TAG_TRIPLES: u64 = 2;
const TAG_TOURNAMENT: u64 = 3;
const TAG_CLT: u64 = 4;
const TAG_SAMPLE: u64 = 5;

/// Above this many vertices the O(m³) path count is skipped.
const PATH2_MAX_M: usize = 400;
/// Above this many k-subsets the pattern census is skipped.
const PATTERN_MAX_SUBSETS: u128 = 300_000_000;
/// Dice lists longer than this are left out of report details.
const LIST_LIMIT: usize = 2000;
/// Calibrated gate on the Gaussian fit's relative error at the mode,
/// applied from `MODE_GATE_MIN_N` sides up.
pub const MODE_RELATIVE_ERROR_GATE: f64 = 0.15;
pub const MODE_GATE_MIN_N: usize = 36;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid config: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Die(#[from] DieError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Validates `cfg` and runs it on a pool of `cfg.threads` workers.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| RunError::ThreadPool(e.to_string()))?;
    let start = Instant::now();
    let mut report = pool.install(|| match cfg.kind {
        Kind::Ties => run_ties(cfg),
        Kind::Transitivity => run_transitivity(cfg),
        Kind::Tournament => run_tournament(cfg),
        Kind::Clt => run_clt(cfg),
        Kind::Enumerate => run_enumerate(cfg),
        Kind::Sample => run_sample(cfg),
    })?;
    if cfg.timing {
        report.wall_time_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

fn stream(cfg: &ExperimentConfig, n: usize, tag: u64, trial: u64) -> RngStream {
    RngStream::new(mix_seed(mix_seed(cfg.seed, n as u64), tag), trial)
}

fn draw(source: &DiceSource, n: usize, rng: &mut impl rand::Rng) -> Result<Die, RunError> {
    Ok(source.sample(n, rng)?.0)
}

fn add<const K: usize>(a: [u64; K], b: [u64; K]) -> [u64; K] {
    std::array::from_fn(|i| a[i] + b[i])
}

/// Soft check that `values` (in increasing-n order) strictly decrease.
fn decreasing_check(name: &str, points: &[(usize, f64)]) -> Option<Check> {
    if points.len() < 2 {
        return None;
    }
    let mut sorted = points.to_vec();
    sorted.sort_by_key(|p| p.0);
    let ok = sorted.windows(2).all(|w| w[1].1 < w[0].1);
    let detail = sorted
        .iter()
        .map(|(n, v)| format!("n={n}: {v:.6}"))
        .collect::<Vec<_>>()
        .join(", ");
    Some(Check::from_bool(name, ok, false, detail))
}

fn estimate_matches_exact(e: Option<&Estimate>, exact: &ExactValue) -> Check {
    match e {
        Some(e) => Check::from_bool(
            "estimate_within_radius_of_exact",
            (e.value - exact.approx).abs() <= e.radius99 + 1e-12,
            false,
            format!(
                "{} = {:.6} ± {:.6}, exact {:.6}",
                e.name, e.value, e.radius99, exact.approx
            ),
        ),
        None => Check::new(
            "estimate_within_radius_of_exact",
            Status::Undefined,
            false,
            "no estimate",
        ),
    }
}

fn above_cap(name: &str, n: usize, cap: usize) -> Check {
    Check::new(
        name,
        Status::Vacuous,
        false,
        format!("n = {n} is above the cap of {cap}"),
    )
}

pub fn run_ties(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let source = cfg.source();
    let mut report = ExperimentReport::new(cfg);
    let mut trend = Vec::new();
    for &n in &cfg.n {
        let [ties, a_wins] = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = stream(cfg, n, TAG_PAIRS, t).rng();
                let a = draw(&source, n, &mut rng)?;
                let b = draw(&source, n, &mut rng)?;
                let o = a.beats(&b)?;
                Ok::<_, RunError>([o.is_tie() as u64, o.a_wins() as u64])
            })
            .try_reduce(|| [0, 0], |x, y| Ok(add(x, y)))?;
        let mut s = Section::new(n);
        s.push_estimate(Estimate::proportion("tie_frequency", ties, cfg.trials));
        s.push_estimate(Estimate::proportion(
            "a_beats_b_frequency",
            a_wins,
            cfg.trials,
        ));
        trend.push((n, ties as f64 / cfg.trials as f64));
        if cfg.exact {
            let cap = Caps::default().pairwise;
            if n <= cap {
                let census = exact_pairwise_stats(n, cfg.model)?;
                let exact = exact_value("tie_probability", &census.tie_probability);
                s.checks
                    .push(estimate_matches_exact(s.estimate("tie_frequency"), &exact));
                s.exact.push(exact);
            } else {
                s.checks.push(above_cap("exact_mode", n, cap));
            }
        }
        report.sections.push(s);
    }
    report.checks.extend(decreasing_check(
        "tie_frequency_strictly_decreasing",
        &trend,
    ));
    Ok(report)
}

/// Counts `[chains, favourable]` where a chain is `A > B > C` and favourable
/// means also `A > C`.
pub fn chain_counts<'a, I>(triples: I) -> Result<[u64; 2], DieError>
where
    I: IntoIterator<Item = (&'a Die, &'a Die, &'a Die)>,
{
    let mut acc = [0, 0];
    for (a, b, c) in triples {
        if a.beats(b)?.a_wins() && b.beats(c)?.a_wins() {
            acc[0] += 1;
            acc[1] += a.beats(c)?.a_wins() as u64;
        }
    }
    Ok(acc)
}

/// `P(A beats C | A beats B, B beats C)` as an estimate plus its status.
pub fn conditional_estimate(chains: u64, favourable: u64) -> (Option<Estimate>, Check) {
    match Estimate::proportion("a_beats_c_given_chain", favourable, chains) {
        Some(e) => (
            Some(e),
            Check::new(
                "conditional_defined",
                Status::Pass,
                false,
                format!("{chains} chains"),
            ),
        ),
        None => (
            None,
            Check::new(
                "conditional_defined",
                Status::Undefined,
                false,
                "no trial had A beat B and B beat C",
            ),
        ),
    }
}

pub fn run_transitivity(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let source = cfg.source();
    let mut report = ExperimentReport::new(cfg);
    for &n in &cfg.n {
        let [chains, favourable] = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = stream(cfg, n, TAG_TRIPLES, t).rng();
                let a = draw(&source, n, &mut rng)?;
                let b = draw(&source, n, &mut rng)?;
                let c = draw(&source, n, &mut rng)?;
                Ok::<_, RunError>(chain_counts([(&a, &b, &c)])?)
            })
            .try_reduce(|| [0, 0], |x, y| Ok(add(x, y)))?;
        let mut s = Section::new(n);
        let (estimate, defined) = conditional_estimate(chains, favourable);
        s.push_estimate(estimate);
        s.push_estimate(Estimate::proportion("chain_frequency", chains, cfg.trials));
        s.checks.push(defined);
        if cfg.exact {
            let cap = Caps::default().triples;
            if n > cap {
                s.checks.push(above_cap("exact_mode", n, cap));
            } else {
                match exact_triple_stats(n, cfg.model) {
                    Ok(q) => {
                        let exact = exact_value("a_beats_c_given_chain", &q);
                        s.checks.push(estimate_matches_exact(
                            s.estimate("a_beats_c_given_chain"),
                            &exact,
                        ));
                        s.exact.push(exact);
                    }
                    Err(EnumerationError::UndefinedConditional) => s.checks.push(Check::new(
                        "exact_conditional_defined",
                        Status::Undefined,
                        false,
                        "no ordered triple of dice forms a chain",
                    )),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        report.sections.push(s);
    }
    Ok(report)
}

fn binomial(m: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i as u128 + 1))
}

#[derive(Serialize)]
struct PatternDetail {
    k: usize,
    subsets: u64,
    labeled_reference: f64,
    /// Largest `|labeled frequency - 2^(-C(k,2))|`.
    labeled_max_deviation: f64,
    classes: Vec<PatternClass>,
}

pub fn run_tournament(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let source = cfg.source();
    let mut report = ExperimentReport::new(cfg);
    let m = cfg.m;
    for &n in &cfg.n {
        let mut census = TripleCensus {
            transitive: 0,
            intransitive: 0,
            incomplete: 0,
            total: 0,
        };
        let mut concentrated = 0u64;
        let mut ties = 0u64;
        let mut degree_identity = Vec::new();
        let mut triangle_identity = Vec::new();
        let mut patterns: Vec<(usize, u64, Vec<u64>, Vec<PatternClass>)> = Vec::new();
        for t in 0..cfg.trials {
            let dice = source.sample_many(n, m, stream(cfg, n, TAG_TOURNAMENT, t))?;
            let tour = build_tournament(&dice)?;
            let c = triple_census(&tour);
            census.transitive += c.transitive;
            census.intransitive += c.intransitive;
            census.incomplete += c.incomplete;
            census.total += c.total;
            ties += tour.tie_pairs().len() as u64;
            let deg = outdegree_concentration(&tour, cfg.epsilon);
            concentrated += (deg.concentrated_fraction * m as f64).round() as u64;
            if m <= PATH2_MAX_M {
                let p = path2_identity_check(&tour);
                degree_identity.push(p.degree_identity);
                triangle_identity.extend(p.triangle_identity);
            }
            for &k in &cfg.k {
                if binomial(m, k) > PATTERN_MAX_SUBSETS {
                    continue;
                }
                let pc = pattern_frequencies(&tour, k)?;
                match patterns.iter_mut().find(|p| p.0 == k) {
                    Some(acc) => {
                        acc.1 += pc.subsets;
                        for (x, y) in acc.2.iter_mut().zip(&pc.labeled) {
                            *x += y;
                        }
                        for (x, y) in acc.3.iter_mut().zip(&pc.classes) {
                            x.count += y.count;
                        }
                    }
                    None => patterns.push((k, pc.subsets, pc.labeled, pc.classes)),
                }
            }
        }

        let mut s = Section::new(n);
        s.push_estimate(Estimate::proportion(
            "intransitive_fraction",
            census.intransitive,
            census.complete(),
        ));
        s.push_estimate(Estimate::proportion(
            "tie_free_triple_fraction",
            census.complete(),
            census.total,
        ));
        s.push_estimate(Estimate::proportion(
            "concentrated_outdegree_fraction",
            concentrated,
            m as u64 * cfg.trials,
        ));
        let pairs = (m * m.saturating_sub(1) / 2) as u64 * cfg.trials;
        s.push_estimate(Estimate::proportion("tie_pair_fraction", ties, pairs));

        s.checks.push(match census.intransitive_fraction() {
            Some(f) => Check::from_bool(
                "intransitive_fraction_near_quarter",
                (0.20..=0.30).contains(&f),
                false,
                format!(
                    "{f:.4} among {} tie-free triples, gate [0.20, 0.30]",
                    census.complete()
                ),
            ),
            None => Check::new(
                "intransitive_fraction_near_quarter",
                Status::Undefined,
                false,
                "no tie-free triple",
            ),
        });
        let frac = concentrated as f64 / (m as u64 * cfg.trials) as f64;
        s.checks.push(Check::from_bool(
            "outdegree_concentrated",
            frac >= 0.9,
            false,
            format!(
                "{frac:.4} of vertices within ε = {} of ½, gate 0.9",
                cfg.epsilon
            ),
        ));
        s.checks.push(if degree_identity.is_empty() {
            above_cap("path2_degree_identity", m, PATH2_MAX_M)
        } else {
            Check::from_bool(
                "path2_degree_identity",
                degree_identity.iter().all(|&b| b),
                true,
                format!("{} tournaments", degree_identity.len()),
            )
        });
        s.checks.push(if triangle_identity.is_empty() {
            Check::new(
                "path2_triangle_identity",
                Status::Vacuous,
                true,
                "no tie-free tournament",
            )
        } else {
            Check::from_bool(
                "path2_triangle_identity",
                triangle_identity.iter().all(|&b| b),
                true,
                format!("{} tie-free tournaments", triangle_identity.len()),
            )
        });

        for &k in &cfg.k {
            if !patterns.iter().any(|p| p.0 == k) {
                s.checks.push(Check::new(
                    format!("pattern_k{k}"),
                    Status::Vacuous,
                    false,
                    format!("C({m}, {k}) subsets exceed the census limit of {PATTERN_MAX_SUBSETS}"),
                ));
            }
        }
        let mut details = Vec::new();
        for (k, subsets, labeled, mut classes) in patterns {
            let reference = 0.5f64.powi((k * (k - 1) / 2) as i32);
            let mut max_dev = 0.0f64;
            if subsets > 0 {
                for &c in &labeled {
                    max_dev = max_dev.max((c as f64 / subsets as f64 - reference).abs());
                }
            }
            for class in &mut classes {
                class.frequency = if subsets > 0 {
                    class.count as f64 / subsets as f64
                } else {
                    0.0
                };
                s.push_estimate(Estimate::proportion(
                    format!("pattern_k{k}_{}", class.label),
                    class.count,
                    subsets,
                ));
                s.push_summary(
                    &format!("pattern_k{k}_{}.uniform_reference", class.label),
                    class.uniform_reference,
                    1,
                );
            }
            s.push_summary(
                &format!("pattern_k{k}_labeled_max_deviation"),
                max_dev,
                subsets,
            );
            details.push(PatternDetail {
                k,
                subsets,
                labeled_reference: reference,
                labeled_max_deviation: max_dev,
                classes,
            });
        }
        s.details = serde_json::json!({
            "m": m,
            "tournaments": cfg.trials,
            "triple_census": census,
            "patterns": details,
        });
        report.sections.push(s);
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvolutionRecord {
    /// `P[U<0 | V=0]`, `P[U=0 | V=0]`, `P[U>0 | V=0]` as reduced fractions.
    pub conditional: [String; 3],
    pub conditional_approx: [f64; 3],
    pub gaussian: GaussianFit,
    pub tails: Vec<TailReport>,
    /// Agreement with the enumeration census, when it was run.
    pub matches_enumeration: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DieRecord {
    pub index: u64,
    pub die: String,
    pub maxnorm: MaxNormReport,
    pub box_bound: Option<BoxBoundReport>,
    pub convolution: Option<ConvolutionRecord>,
}

fn analyse_die(
    cfg: &ExperimentConfig,
    die: &Die,
    index: u64,
    census: Option<&dice_core::enumeration::ExactCensus>,
) -> DieRecord {
    let box_bound = (cfg.grid > 0).then(|| {
        let constants = BoxConstants {
            alpha: cfg.box_alpha,
            beta: cfg.box_beta,
        };
        box_bound_report(die, cfg.grid, constants)
    });
    let convolution = match convolve_exact(die) {
        Ok(pmf) => {
            let cb = conditional_from_pmf(&pmf);
            let matches_enumeration = census
                .and_then(|c| c.fractions_for(die))
                .map(|f| f.beats == cb.below && f.ties == cb.zero && f.loses == cb.above);
            Some(ConvolutionRecord {
                conditional: [&cb.below, &cb.zero, &cb.above].map(|q| q.to_string()),
                conditional_approx: cb.as_f64(),
                gaussian: gaussian_compare(&pmf),
                tails: cfg
                    .tail_c
                    .iter()
                    .map(|&c| tail_check_pmf(&pmf, die, c))
                    .collect(),
                matches_enumeration,
            })
        }
        Err(FourierError::AboveCap { .. }) | Err(FourierError::TableTooLarge { .. }) => None,
    };
    DieRecord {
        index,
        die: die.to_string(),
        maxnorm: maxnorm_check(die),
        box_bound,
        convolution,
    }
}

pub fn run_clt(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let source = cfg.source();
    let mut report = ExperimentReport::new(cfg);
    let mut defect_trend = Vec::new();
    let mut tie_trend = Vec::new();
    for &n in &cfg.n {
        let census = if n <= Caps::default().pairwise {
            Some(exact_pairwise_stats(n, cfg.model)?)
        } else {
            None
        };
        let records: Vec<DieRecord> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let die = draw(&source, n, &mut stream(cfg, n, TAG_CLT, t).rng())?;
                Ok(analyse_die(cfg, &die, t, census.as_ref()))
            })
            .collect::<Result<_, RunError>>()?;
        let mut s = clt_section(n, &records);
        if let Some(v) = s.summary("symmetry_defect_normalized.median") {
            defect_trend.push((n, v.value));
        }
        if let Some(v) = s.summary("tie_probability_given_balanced.median") {
            tie_trend.push((n, v.value));
        }
        s.details = serde_json::to_value(&records).expect("records serialize");
        report.sections.push(s);
    }
    report.checks.extend(decreasing_check(
        "symmetry_defect_median_decreasing",
        &defect_trend,
    ));
    report.checks.extend(decreasing_check(
        "tie_probability_median_decreasing",
        &tie_trend,
    ));
    Ok(report)
}

fn clt_section(n: usize, records: &[DieRecord]) -> Section {
    let mut s = Section::new(n);
    let dice = records.len() as u64;
    let maxnorm_failures = records.iter().filter(|r| !r.maxnorm.passes).count() as u64;
    s.push_estimate(Estimate::proportion(
        "maxnorm_failure_fraction",
        maxnorm_failures,
        dice,
    ));
    let mut max_g: Vec<f64> = records.iter().map(|r| r.maxnorm.max_abs_g).collect();
    if let Some(v) = median(&mut max_g) {
        s.push_summary("max_abs_g.median", v, dice);
    }

    let boxes: Vec<&BoxBoundReport> = records
        .iter()
        .filter_map(|r| r.box_bound.as_ref())
        .collect();
    if boxes.is_empty() {
        s.checks.push(Check::new(
            "box_bound",
            Status::Vacuous,
            false,
            "grid disabled",
        ));
    } else {
        let fails = boxes
            .iter()
            .filter(|b| b.status == CheckStatus::Fail)
            .count();
        let vacuous = boxes
            .iter()
            .filter(|b| b.status == CheckStatus::Vacuous)
            .count();
        let status = if fails > 0 {
            Status::Fail
        } else if vacuous == boxes.len() {
            Status::Vacuous
        } else {
            Status::Pass
        };
        let b = boxes[0];
        let mut detail = format!(
            "thresholds α ≥ {:.4e}, β ≥ {:.4e}; {fails} fail, {vacuous} vacuous of {}",
            b.alpha_threshold,
            b.beta_threshold,
            boxes.len()
        );
        let mut slacks: Vec<f64> = boxes.iter().filter_map(|b| b.slack).collect();
        if let Some(v) = median(&mut slacks) {
            s.push_summary("box_bound_slack.median", v, slacks.len() as u64);
            detail.push_str(&format!("; median slack {v:.3e}"));
        }
        s.checks
            .push(Check::new("box_bound", status, false, detail));
    }

    let convs: Vec<&ConvolutionRecord> = records
        .iter()
        .filter_map(|r| r.convolution.as_ref())
        .collect();
    if convs.is_empty() {
        s.checks.push(above_cap(
            "convolution",
            n,
            fourier::DEFAULT_CONVOLUTION_CAP,
        ));
        return s;
    }
    let count = convs.len() as u64;
    let mut ties: Vec<f64> = convs.iter().map(|c| c.conditional_approx[1]).collect();
    let mut below: Vec<f64> = convs.iter().map(|c| c.conditional_approx[0]).collect();
    s.push_summary(
        "tie_probability_given_balanced.median",
        median(&mut ties).unwrap(),
        count,
    );
    s.push_summary(
        "beat_probability_given_balanced.median",
        median(&mut below).unwrap(),
        count,
    );

    let fits: Vec<_> = convs
        .iter()
        .filter_map(|c| match &c.gaussian {
            GaussianFit::Fitted(r) => Some(r),
            GaussianFit::Degenerate { .. } => None,
        })
        .collect();
    s.push_summary(
        "gaussian_degenerate_count",
        (convs.len() - fits.len()) as f64,
        count,
    );
    if !fits.is_empty() {
        let k = fits.len() as u64;
        let stat = |f: &dyn Fn(&&fourier::GaussianReport) -> f64| {
            let mut v: Vec<f64> = fits.iter().map(f).collect();
            median(&mut v).unwrap()
        };
        s.push_summary(
            "symmetry_defect_normalized.median",
            stat(&|r| r.symmetry_defect_normalized),
            k,
        );
        s.push_summary(
            "sup_error_normalized.median",
            stat(&|r| r.sup_error_normalized),
            k,
        );
        s.push_summary(
            "mode_relative_error.median",
            stat(&|r| r.mode_relative_error),
            k,
        );
        s.push_summary(
            "c_over_local_limit.median",
            stat(&|r| r.c / r.c_local_limit),
            k,
        );
        s.push_summary(
            "sup_error_over_bound.median",
            stat(&|r| r.sup_error / r.sup_bound),
            k,
        );
        let worst = fits
            .iter()
            .map(|r| r.mode_relative_error)
            .fold(0.0, f64::max);
        s.push_summary("mode_relative_error.max", worst, k);
        let detail =
            format!("max {worst:.4} over {k} fitted dice, gate {MODE_RELATIVE_ERROR_GATE}");
        s.checks.push(if n >= MODE_GATE_MIN_N {
            Check::from_bool(
                "mode_relative_error_below_gate",
                worst < MODE_RELATIVE_ERROR_GATE,
                false,
                detail,
            )
        } else {
            Check::new(
                "mode_relative_error_below_gate",
                Status::Vacuous,
                false,
                format!("{detail}; gate applies from n = {MODE_GATE_MIN_N}"),
            )
        });
    }

    let tails: Vec<&TailReport> = convs.iter().flat_map(|c| &c.tails).collect();
    let applicable: Vec<&&TailReport> = tails.iter().filter(|t| t.maxnorm_passes).collect();
    let failing = applicable
        .iter()
        .filter(|t| t.status == CheckStatus::Fail)
        .count();
    s.checks.push(if tails.is_empty() || applicable.is_empty() {
        Check::new(
            "tail_inequality",
            Status::Vacuous,
            true,
            "no die passes the max-norm check",
        )
    } else {
        Check::new(
            "tail_inequality",
            if failing == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            true,
            format!(
                "{failing} of {} (die, C) pairs violate the bound",
                applicable.len()
            ),
        )
    });

    let compared: Vec<bool> = convs.iter().filter_map(|c| c.matches_enumeration).collect();
    if !compared.is_empty() {
        let ok = compared.iter().filter(|&&b| b).count();
        s.checks.push(Check::from_bool(
            "conditional_matches_enumeration",
            ok == compared.len(),
            true,
            format!("{ok} of {} dice agree exactly", compared.len()),
        ));
    }
    s
}

#[derive(Serialize)]
struct EnumerationDetail {
    dice: Option<Vec<String>>,
}

pub fn run_enumerate(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let mut report = ExperimentReport::new(cfg);
    let caps = Caps::default();
    for &n in &cfg.n {
        let dice = enumerate_multiset(n)?;
        let mut s = Section::new(n);
        let multiset = dice.len() as u64;
        let balanced = count_balanced(n);
        s.exact.push(ExactValue {
            name: "multiset_count".into(),
            exact: multiset.to_string(),
            approx: multiset as f64,
        });
        s.exact.push(ExactValue {
            name: "balanced_count".into(),
            exact: balanced.to_string(),
            approx: balanced.to_f64().unwrap_or(f64::INFINITY),
        });
        let dp = multiset_counts(n, usize::MAX)?.total();
        s.checks.push(Check::from_bool(
            "multiset_count_matches_dp",
            dp == multiset as u128,
            true,
            format!("enumerated {multiset}, counted {dp}"),
        ));
        let weighted: num_bigint::BigUint = dice.iter().map(multiplicity).sum();
        s.checks.push(Check::from_bool(
            "balanced_count_matches_multiplicities",
            weighted == balanced,
            true,
            format!("Σ multiplicities {weighted}, counted {balanced}"),
        ));
        if cfg.exact {
            if n <= caps.pairwise {
                let census = exact_pairwise_stats(n, cfg.model)?;
                s.exact
                    .push(exact_value("tie_probability", &census.tie_probability));
            } else {
                s.checks.push(above_cap("exact_pairwise", n, caps.pairwise));
            }
            if n <= caps.triples {
                match exact_triple_stats(n, cfg.model) {
                    Ok(q) => s.exact.push(exact_value("a_beats_c_given_chain", &q)),
                    Err(EnumerationError::UndefinedConditional) => s.checks.push(Check::new(
                        "exact_conditional_defined",
                        Status::Undefined,
                        false,
                        "no ordered triple of dice forms a chain",
                    )),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        let list = (dice.len() <= LIST_LIMIT).then(|| dice.iter().map(|d| d.to_string()).collect());
        s.details =
            serde_json::to_value(EnumerationDetail { dice: list }).expect("strings serialize");
        report.sections.push(s);
    }
    Ok(report)
}

pub fn run_sample(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let source = cfg.source();
    let mut report = ExperimentReport::new(cfg);
    for &n in &cfg.n {
        let draws: Vec<(Die, SamplerStats)> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| Ok(source.sample(n, &mut stream(cfg, n, TAG_SAMPLE, t).rng())?))
            .collect::<Result<_, RunError>>()?;
        let mut stats = SamplerStats::default();
        for (_, st) in &draws {
            stats.merge(*st);
        }
        let mut s = Section::new(n);
        s.push_estimate(Estimate::proportion(
            "acceptance_rate",
            stats.accepts,
            stats.attempts,
        ));
        let bound = (n as f64).powf(-1.5) / 4.0;
        s.push_summary("acceptance_rate_lower_bound", bound, 1);
        s.checks.push(
            if source.method == Method::Rejection && source.model == Model::BalancedSequence {
                let rate = stats.accepts as f64 / stats.attempts as f64;
                Check::from_bool(
                    "acceptance_rate_above_bound",
                    rate >= bound,
                    false,
                    format!(
                        "{rate:.4e} over {} attempts, bound {bound:.4e}",
                        stats.attempts
                    ),
                )
            } else {
                Check::new(
                    "acceptance_rate_above_bound",
                    Status::Vacuous,
                    false,
                    format!(
                        "bound applies to rejection sampling, not {}",
                        source.method.as_str()
                    ),
                )
            },
        );
        let list: Option<Vec<String>> =
            (draws.len() <= LIST_LIMIT).then(|| draws.iter().map(|(d, _)| d.to_string()).collect());
        s.details = serde_json::json!({ "method": source.method, "dice": list });
        report.sections.push(s);
    }
    Ok(report)
}
