//! Distributional tests for the samplers against exact enumeration.

use std::collections::HashMap;

use dice_core::enumeration::{count_balanced, enumerate_multiset};
use dice_core::samplers::{
    balanced_counts, sample_balanced_completion, sample_balanced_exact, sample_balanced_rejection,
    sample_multiset, RngStream, DEFAULT_ATTEMPT_CAP, DEFAULT_EXACT_CAP,
};
use dice_core::{Die, Model};
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const DRAWS: usize = 100_000;

type Draw = fn(usize, &mut ChaCha8Rng) -> Die;

fn rejection(n: usize, rng: &mut ChaCha8Rng) -> Die {
    sample_balanced_rejection(n, rng, DEFAULT_ATTEMPT_CAP)
        .unwrap()
        .0
}
fn completion(n: usize, rng: &mut ChaCha8Rng) -> Die {
    sample_balanced_completion(n, rng, DEFAULT_ATTEMPT_CAP)
        .unwrap()
        .0
}
fn exact(n: usize, rng: &mut ChaCha8Rng) -> Die {
    sample_balanced_exact(n, rng).unwrap()
}
fn multiset(n: usize, rng: &mut ChaCha8Rng) -> Die {
    sample_multiset(n, rng).unwrap()
}

fn histogram<K: std::hash::Hash + Eq>(
    draws: usize,
    seed: u64,
    mut f: impl FnMut(&mut ChaCha8Rng) -> K,
) -> HashMap<K, u64> {
    let mut rng = RngStream::new(seed, 0).rng();
    let mut h = HashMap::new();
    for _ in 0..draws {
        *h.entry(f(&mut rng)).or_insert(0) += 1;
    }
    h
}

fn chi2_p_value(stat: f64, df: usize) -> f64 {
    1.0 - ChiSquared::new(df as f64).unwrap().cdf(stat)
}

/// Goodness of fit to the uniform law on `support` sequences.
fn uniform_p_value(h: &HashMap<Vec<u32>, u64>, support: usize, draws: usize) -> f64 {
    assert_eq!(
        h.len(),
        support,
        "some sequence was never drawn or an extra one was"
    );
    let expected = draws as f64 / support as f64;
    let stat: f64 = h
        .values()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    chi2_p_value(stat, support - 1)
}

/// All sequences in `[n]^n` with the balanced sum.
fn brute_balanced(n: usize) -> usize {
    let target = (n * (n + 1) / 2) as u64;
    (0..(n as u64).pow(n as u32))
        .filter(|&code| {
            let (mut c, mut s) = (code, 0);
            for _ in 0..n {
                s += c % n as u64 + 1;
                c /= n as u64;
            }
            s == target
        })
        .count()
}

#[test]
fn balanced_samplers_are_uniform_at_small_n() {
    let samplers: [(&str, Draw); 3] = [
        ("rejection", rejection),
        ("completion", completion),
        ("exact", exact),
    ];
    for n in [2usize, 3, 5] {
        let support = brute_balanced(n);
        assert_eq!(count_balanced(n).to_usize(), Some(support));
        for (i, (name, draw)) in samplers.iter().enumerate() {
            let h = histogram(DRAWS, 100 + i as u64 * 10 + n as u64, |rng| {
                draw(n, rng).faces().to_vec()
            });
            let p = uniform_p_value(&h, support, DRAWS);
            assert!(p > 1e-3, "{name} at n = {n}: p = {p}");
        }
    }
}

#[test]
fn three_sided_support_is_the_seven_sequences() {
    let h = histogram(DRAWS, 3, |rng| exact(3, rng).faces().to_vec());
    let mut keys: Vec<_> = h.keys().cloned().collect();
    keys.sort();
    let expected: Vec<Vec<u32>> = vec![
        vec![1, 2, 3],
        vec![1, 3, 2],
        vec![2, 1, 3],
        vec![2, 2, 2],
        vec![2, 3, 1],
        vec![3, 1, 2],
        vec![3, 2, 1],
    ];
    assert_eq!(keys, expected);
}

#[test]
fn multiset_sampler_is_uniform_over_enumeration() {
    for n in [1usize, 4, 5, 6] {
        let support = enumerate_multiset(n).unwrap();
        let h = histogram(DRAWS, 40 + n as u64, |rng| {
            multiset(n, rng).faces().to_vec()
        });
        for die in &support {
            assert!(h.contains_key(die.faces()), "{die} never drawn at n = {n}");
        }
        if support.len() > 1 {
            let p = uniform_p_value(&h, support.len(), DRAWS);
            assert!(p > 1e-3, "n = {n}: p = {p}");
        }
    }
    let four: Vec<String> = enumerate_multiset(4)
        .unwrap()
        .iter()
        .map(|d| d.to_string())
        .collect();
    assert_eq!(
        four,
        [
            "(1,1,4,4)",
            "(1,2,3,4)",
            "(1,3,3,3)",
            "(2,2,2,4)",
            "(2,2,3,3)"
        ]
    );
}

#[test]
fn exact_and_rejection_agree_at_ten_sides() {
    let n = 10;
    // Cells are the first two faces; their exact law follows from the
    // completion counts.
    let key = |d: Die| (d.faces()[0], d.faces()[1]);
    let a = histogram(DRAWS, 7, |rng| key(exact(n, rng)));
    let b = histogram(DRAWS, 8, |rng| key(rejection(n, rng)));
    let mut cells: Vec<_> = a.keys().chain(b.keys()).copied().collect();
    cells.sort();
    cells.dedup();
    let stat: f64 = cells
        .iter()
        .map(|c| {
            let (x, y) = (
                *a.get(c).unwrap_or(&0) as f64,
                *b.get(c).unwrap_or(&0) as f64,
            );
            (x - y).powi(2) / (x + y)
        })
        .sum();
    let p = chi2_p_value(stat, cells.len() - 1);
    assert!(p > 1e-3, "two-sample p = {p}");

    let counts = balanced_counts(n, DEFAULT_EXACT_CAP).unwrap();
    let total = counts.total().to_f64().unwrap();
    let target = n * (n + 1) / 2;
    let mut gof = 0.0;
    for first in 1..=n as u32 {
        for second in 1..=n as u32 {
            let rest = target - first as usize - second as usize;
            let prob = counts.completions(n - 2, rest).to_f64().unwrap() / total;
            let expected = prob * DRAWS as f64;
            let observed = *a.get(&(first, second)).unwrap_or(&0) as f64;
            gof += (observed - expected).powi(2) / expected;
        }
    }
    let p = chi2_p_value(gof, n * n - 1);
    assert!(p > 1e-3, "exact sampler vs completion counts: p = {p}");
}

#[test]
fn rejection_acceptance_rate_clears_lower_bound() {
    for (n, accepts) in [(16usize, 10_000u64), (64, 10_000)] {
        let mut rng = RngStream::new(11, n as u64).rng();
        let mut attempts = 0u64;
        for _ in 0..accepts {
            attempts += sample_balanced_rejection(n, &mut rng, DEFAULT_ATTEMPT_CAP)
                .unwrap()
                .1
                .attempts;
        }
        let rate = accepts as f64 / attempts as f64;
        let bound = (n as f64).powf(-1.5) / 4.0;
        assert!(rate >= bound, "n = {n}: rate {rate} below {bound}");
    }
}

#[test]
fn streams_are_reproducible() {
    let draw = |seed, stream| {
        let mut rng = RngStream::new(seed, stream).rng();
        (0..5).map(|_| completion(30, &mut rng)).collect::<Vec<_>>()
    };
    assert_eq!(draw(5, 9), draw(5, 9));
    assert_ne!(draw(5, 9), draw(5, 10));
}

#[test]
fn model_tags_are_respected() {
    let mut rng = RngStream::new(0, 0).rng();
    assert_eq!(exact(8, &mut rng).model(), Model::BalancedSequence);
    let d = multiset(8, &mut rng);
    assert_eq!(d.model(), Model::MultisetCanonical);
    assert!(d.faces().windows(2).all(|w| w[0] <= w[1]));
}
