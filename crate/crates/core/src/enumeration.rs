//! Exhaustive small-n ground truth.
//!
//! Both models are handled through multiset classes: a balanced-sequence
//! census weights each class by the number of orderings
//! `n! / Π_v c_v!`, a multiset census gives each class weight one. Since the
//! beats relation only depends on the multiset, this is exact.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::die::{target_sum, Die, Model, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("a die needs at least one side")]
    ZeroSides,
    #[error("n = {n} is above the {what} cap of {cap}")]
    AboveCap {
        n: usize,
        cap: usize,
        what: &'static str,
    },
    #[error("conditioning event has probability zero")]
    UndefinedConditional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub enumerate: usize,
    pub pairwise: usize,
    pub triples: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumerate: 12,
            pairwise: 9,
            triples: 6,
        }
    }
}

fn check(n: usize, cap: usize, what: &'static str) -> Result<(), EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroSides);
    }
    if n > cap {
        return Err(EnumerationError::AboveCap { n, cap, what });
    }
    Ok(())
}

/// All n-sided multiset dice in lexicographic order.
pub fn enumerate_multiset(n: usize) -> Result<Vec<Die>, EnumerationError> {
    enumerate_multiset_capped(n, Caps::default().enumerate)
}

pub fn enumerate_multiset_capped(n: usize, cap: usize) -> Result<Vec<Die>, EnumerationError> {
    check(n, cap, "enumeration")?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    extend(n, 1, target_sum(n) as usize, &mut prefix, &mut out);
    Ok(out)
}

fn extend(n: usize, lo: usize, remaining: usize, prefix: &mut Vec<u32>, out: &mut Vec<Die>) {
    let left = n - prefix.len();
    if left == 0 {
        if remaining == 0 {
            out.push(Die::from_valid(prefix.clone(), Model::MultisetCanonical));
        }
        return;
    }
    for v in lo..=n {
        // Every later face is at least v and at most n.
        if v * left > remaining {
            break;
        }
        if remaining - v > n * (left - 1) {
            continue;
        }
        prefix.push(v as u32);
        extend(n, v, remaining - v, prefix, out);
        prefix.pop();
    }
}

/// Number of sequences in `[n]^n` summing to `n(n+1)/2`, by repeated
/// polynomial multiplication.
pub fn count_balanced(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let target = target_sum(n) as usize;
    let mut poly = vec![BigUint::zero(); target + 1];
    poly[0] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); target + 1];
        for (s, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for f in 1..=n {
                if s + f > target {
                    break;
                }
                next[s + f] += c;
            }
        }
        poly = next;
    }
    poly.swap_remove(target)
}

/// `n! / Π_v c_v!`: how many balanced sequences share this multiset.
pub fn multiplicity(die: &Die) -> BigUint {
    let mut result = factorial(die.n());
    for &c in &die.histogram() {
        result /= factorial(c as usize);
    }
    result
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn class_weights(classes: &[Die], model: Model) -> Vec<BigUint> {
    classes
        .iter()
        .map(|d| match model {
            Model::BalancedSequence => multiplicity(d),
            Model::MultisetCanonical => BigUint::one(),
        })
        .collect()
}

fn ratio(num: BigUint, den: &BigUint) -> BigRational {
    BigRational::new(num.into(), den.clone().into())
}

/// Exact fractions of (weighted) opponents a die beats, ties, loses to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeatFractions {
    pub beats: BigRational,
    pub ties: BigRational,
    pub loses: BigRational,
}

#[derive(Debug, Clone)]
pub struct ExactCensus {
    pub n: usize,
    pub model: Model,
    /// Number of dice in the model's support.
    pub support_count: BigUint,
    /// Multiset classes, lexicographic.
    pub classes: Vec<Die>,
    /// Weight of each class under the model.
    pub weights: Vec<BigUint>,
    /// `beat_matrix[a][b]` is the verdict of class `a` against class `b`.
    pub beat_matrix: Vec<Vec<Verdict>>,
    /// Probability that two independent dice tie.
    pub tie_probability: BigRational,
    /// Per class, against a random opponent.
    pub per_class: Vec<BeatFractions>,
}

impl ExactCensus {
    pub fn class_index(&self, die: &Die) -> Option<usize> {
        let key = die.with_model(Model::MultisetCanonical);
        self.classes
            .binary_search_by(|c| c.faces().cmp(key.faces()))
            .ok()
    }

    /// Fractions for an arbitrary die of this size (looked up by class).
    pub fn fractions_for(&self, die: &Die) -> Option<&BeatFractions> {
        self.class_index(die).map(|i| &self.per_class[i])
    }
}

pub fn exact_pairwise_stats(n: usize, model: Model) -> Result<ExactCensus, EnumerationError> {
    exact_pairwise_stats_capped(n, model, Caps::default())
}

pub fn exact_pairwise_stats_capped(
    n: usize,
    model: Model,
    caps: Caps,
) -> Result<ExactCensus, EnumerationError> {
    check(n, caps.pairwise, "pairwise")?;
    let classes = enumerate_multiset_capped(n, caps.enumerate.max(caps.pairwise))?;
    let weights = class_weights(&classes, model);
    let support_count: BigUint = weights.iter().sum();

    let beat_matrix: Vec<Vec<Verdict>> = classes
        .par_iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| a.beats(b).expect("same n").verdict)
                .collect()
        })
        .collect();

    let per_class_counts: Vec<[BigUint; 3]> = beat_matrix
        .par_iter()
        .map(|row| {
            let mut acc = [BigUint::zero(), BigUint::zero(), BigUint::zero()];
            for (verdict, w) in row.iter().zip(&weights) {
                let slot = match verdict {
                    Verdict::AWins => 0,
                    Verdict::Tie => 1,
                    Verdict::BWins => 2,
                };
                acc[slot] += w;
            }
            acc
        })
        .collect();

    let mut tie_pairs = BigUint::zero();
    for (counts, w) in per_class_counts.iter().zip(&weights) {
        tie_pairs += &counts[1] * w;
    }
    let tie_probability = ratio(tie_pairs, &(&support_count * &support_count));

    let per_class = per_class_counts
        .into_iter()
        .map(|[beats, ties, loses]| BeatFractions {
            beats: ratio(beats, &support_count),
            ties: ratio(ties, &support_count),
            loses: ratio(loses, &support_count),
        })
        .collect();

    Ok(ExactCensus {
        n,
        model,
        support_count,
        classes,
        weights,
        beat_matrix,
        tie_probability,
        per_class,
    })
}

/// `P(A beats C | A beats B and B beats C)` for independent uniform dice.
pub fn exact_triple_stats(n: usize, model: Model) -> Result<BigRational, EnumerationError> {
    exact_triple_stats_capped(n, model, Caps::default())
}

pub fn exact_triple_stats_capped(
    n: usize,
    model: Model,
    caps: Caps,
) -> Result<BigRational, EnumerationError> {
    check(n, caps.triples, "triple")?;
    let census = exact_pairwise_stats_capped(
        n,
        model,
        Caps {
            pairwise: caps.pairwise.max(n),
            ..caps
        },
    )?;
    let m = census.classes.len();
    let wins = |a: usize, b: usize| census.beat_matrix[a][b] == Verdict::AWins;
    let w = &census.weights;

    let (conditioned, favourable) = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut cond = BigUint::zero();
            let mut fav = BigUint::zero();
            for b in (0..m).filter(|&b| wins(a, b)) {
                let mut c_all = BigUint::zero();
                let mut c_fav = BigUint::zero();
                for c in (0..m).filter(|&c| wins(b, c)) {
                    c_all += &w[c];
                    if wins(a, c) {
                        c_fav += &w[c];
                    }
                }
                let ab = &w[a] * &w[b];
                cond += &ab * c_all;
                fav += ab * c_fav;
            }
            (cond, fav)
        })
        .reduce(
            || (BigUint::zero(), BigUint::zero()),
            |x, y| (x.0 + y.0, x.1 + y.1),
        );

    if conditioned.is_zero() {
        return Err(EnumerationError::UndefinedConditional);
    }
    Ok(ratio(favourable, &conditioned))
}
