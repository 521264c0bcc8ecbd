//! Uniform samplers for both dice models.
//!
//! Randomness comes from [`RngStream`]: ChaCha8 (`rand_chacha` 0.9) keyed by
//! a 64-bit seed, with the trial index selecting one of its 2^64
//! independent streams. A given `(seed, stream_index)` reproduces the same
//! dice on every platform and under any thread schedule.
//!
//! Balanced-sequence dice can be drawn three ways:
//!
//! * [`sample_balanced_rejection`]: i.i.d. faces, accept when the sum is
//!   `n(n+1)/2`.
//! * [`sample_balanced_completion`]: i.i.d. first `n-1` faces; the last face
//!   is forced by the sum and the draw is rejected when it falls outside
//!   `[1, n]`. Every balanced sequence has exactly one admissible prefix, so
//!   the output law is the same as plain rejection at roughly `n` times the
//!   acceptance rate.
//! * [`sample_balanced_exact`]: unranking against exact completion counts.
//!
//! Multiset dice are drawn by unranking against exact counts of bounded
//! partitions ([`sample_multiset`]).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::die::{target_sum, Die, Model};

pub const DEFAULT_ATTEMPT_CAP: u64 = 1_000_000_000;
pub const DEFAULT_EXACT_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("a die needs at least one side")]
    ZeroSides,
    #[error("rejection sampler gave up after {cap} attempts at n = {n}")]
    AttemptCapExceeded { n: usize, cap: u64 },
    #[error("n = {n} is above the exact-mode cap of {cap}")]
    AboveExactCap { n: usize, cap: usize },
    #[error("the {method} sampler does not produce {model} dice")]
    Unsupported { method: &'static str, model: Model },
}

/// A reproducible random stream: one per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        RngStream { seed, stream_index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// SplitMix64 finalizer; used to derive sub-seeds (per experiment, per n)
/// from a master seed.
pub fn mix_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerStats {
    pub attempts: u64,
    pub accepts: u64,
}

impl SamplerStats {
    pub fn acceptance_rate(&self) -> Option<f64> {
        (self.attempts > 0).then(|| self.accepts as f64 / self.attempts as f64)
    }

    pub fn merge(&mut self, other: SamplerStats) {
        self.attempts += other.attempts;
        self.accepts += other.accepts;
    }
}

/// Plain rejection: draw `n` i.i.d. uniform faces until they sum to
/// `n(n+1)/2`.
pub fn sample_balanced_rejection<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    attempt_cap: u64,
) -> Result<(Die, SamplerStats), SamplerError> {
    if n == 0 {
        return Err(SamplerError::ZeroSides);
    }
    let target = target_sum(n);
    let mut faces = vec![0u32; n];
    let mut stats = SamplerStats::default();
    while stats.attempts < attempt_cap {
        stats.attempts += 1;
        let mut sum = 0u64;
        for face in faces.iter_mut() {
            *face = rng.random_range(1..=n as u32);
            sum += *face as u64;
        }
        if sum == target {
            stats.accepts = 1;
            return Ok((Die::from_valid(faces, Model::BalancedSequence), stats));
        }
    }
    Err(SamplerError::AttemptCapExceeded {
        n,
        cap: attempt_cap,
    })
}

/// Rejection on the first `n-1` faces with the last face forced by the sum.
pub fn sample_balanced_completion<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    attempt_cap: u64,
) -> Result<(Die, SamplerStats), SamplerError> {
    if n == 0 {
        return Err(SamplerError::ZeroSides);
    }
    let target = target_sum(n) as i64;
    let mut faces = vec![0u32; n];
    let mut stats = SamplerStats::default();
    while stats.attempts < attempt_cap {
        stats.attempts += 1;
        let mut sum = 0i64;
        for face in faces[..n - 1].iter_mut() {
            *face = rng.random_range(1..=n as u32);
            sum += *face as i64;
        }
        let last = target - sum;
        if (1..=n as i64).contains(&last) {
            faces[n - 1] = last as u32;
            stats.accepts = 1;
            return Ok((Die::from_valid(faces, Model::BalancedSequence), stats));
        }
    }
    Err(SamplerError::AttemptCapExceeded {
        n,
        cap: attempt_cap,
    })
}

/// Uniform integer in `[0, bound)`, by rejection on `bound.bits()` random bits.
pub(crate) fn random_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    if let Some(b) = bound.to_u128() {
        return BigUint::from(rng.random_range(0..b));
    }
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) {
        u32::MAX
    } else {
        (1u32 << (bits % 32)) - 1
    };
    let mut digits = vec![0u32; words];
    loop {
        for d in digits.iter_mut() {
            *d = rng.random();
        }
        digits[words - 1] &= top_mask;
        let x = BigUint::from_slice(&digits);
        if &x < bound {
            return x;
        }
    }
}

/// Exact counts of sequences in `[n]^k` by sum, for `k = 0..=n` and sums up
/// to `n(n+1)/2`.
#[derive(Debug)]
pub struct BalancedCounts {
    n: usize,
    target: usize,
    /// Row `k` holds the counts for sequences of length `k`, indexed by sum.
    rows: Vec<Vec<BigUint>>,
}

impl BalancedCounts {
    pub fn build(n: usize) -> Self {
        let target = target_sum(n) as usize;
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
        let mut first = vec![BigUint::zero(); target + 1];
        first[0] = BigUint::from(1u32);
        rows.push(first);
        for k in 1..=n {
            let prev = &rows[k - 1];
            let mut row = vec![BigUint::zero(); target + 1];
            // row[s] = Σ_{f=1..n} prev[s-f], kept as a sliding window.
            for s in 1..=target {
                let mut v = &row[s - 1] + &prev[s - 1];
                if s > n {
                    v -= &prev[s - 1 - n];
                }
                row[s] = v;
            }
            rows.push(row);
        }
        BalancedCounts { n, target, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of balanced sequences.
    pub fn total(&self) -> &BigUint {
        &self.rows[self.n][self.target]
    }

    /// Number of sequences in `[n]^len` summing to `sum` (zero when out of range).
    pub fn completions(&self, len: usize, sum: usize) -> BigUint {
        self.rows
            .get(len)
            .and_then(|row| row.get(sum))
            .cloned()
            .unwrap_or_default()
    }

    /// The balanced sequence with lexicographic rank `rank`.
    pub fn unrank(&self, mut rank: BigUint) -> Die {
        let n = self.n;
        let mut faces = Vec::with_capacity(n);
        let mut remaining = self.target;
        for pos in 0..n {
            let len = n - pos - 1;
            let mut chosen = None;
            for f in 1..=n.min(remaining) {
                let w = &self.rows[len][remaining - f];
                if &rank < w {
                    chosen = Some(f);
                    break;
                }
                rank -= w;
            }
            let f = chosen.expect("rank below total count");
            faces.push(f as u32);
            remaining -= f;
        }
        Die::from_valid(faces, Model::BalancedSequence)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Die {
        self.unrank(random_below(self.total(), rng))
    }
}

/// Exact counts of multisets of `p` values from `{0, ..., k}` with sum `m`,
/// for `p <= n`, `k < n`, `m <= n(n-1)/2`. A multiset die is such a multiset
/// (with `p = n`, `k = n - 1`) shifted up by one.
#[derive(Debug)]
pub struct MultisetCounts {
    n: usize,
    max_sum: usize,
    offsets: Vec<usize>,
    counts: Vec<u128>,
}

impl MultisetCounts {
    pub fn build(n: usize) -> Self {
        let max_sum = n * n.saturating_sub(1) / 2;
        let kmax = n.saturating_sub(1);
        let len_of = |p: usize, k: usize| max_sum.min(p * k) + 1;
        let mut offsets = Vec::with_capacity((n + 1) * (kmax + 1) + 1);
        let mut acc = 0usize;
        for p in 0..=n {
            for k in 0..=kmax {
                offsets.push(acc);
                acc += len_of(p, k);
            }
        }
        offsets.push(acc);
        let mut table = MultisetCounts {
            n,
            max_sum,
            offsets,
            counts: vec![0u128; acc],
        };
        for p in 0..=n {
            for k in 0..=kmax {
                for m in 0..len_of(p, k) {
                    let v = if p == 0 || k == 0 {
                        u128::from(m == 0)
                    } else {
                        let without_k = table.get(p, k - 1, m);
                        let with_k = if m >= k {
                            table.get(p - 1, k, m - k)
                        } else {
                            0
                        };
                        without_k
                            .checked_add(with_k)
                            .expect("multiset counts overflow u128 above n = 64")
                    };
                    let at = table.index(p, k) + m;
                    table.counts[at] = v;
                }
            }
        }
        table
    }

    fn index(&self, p: usize, k: usize) -> usize {
        self.offsets[p * self.n.max(1) + k]
    }

    fn get(&self, p: usize, k: usize, m: usize) -> u128 {
        if m > self.max_sum.min(p * k) {
            return 0;
        }
        self.counts[self.index(p, k) + m]
    }

    /// Number of n-sided multiset dice.
    pub fn total(&self) -> u128 {
        self.get(self.n, self.n.saturating_sub(1), self.max_sum)
    }

    /// The multiset die with rank `rank` in descending-largest-part order.
    pub fn unrank(&self, mut rank: u128) -> Die {
        let n = self.n;
        let (mut p, mut k, mut m) = (n, n.saturating_sub(1), self.max_sum);
        let mut faces = Vec::with_capacity(n);
        while p > 0 {
            if k == 0 {
                faces.extend(std::iter::repeat_n(1u32, p));
                break;
            }
            let with_k = if m >= k { self.get(p - 1, k, m - k) } else { 0 };
            if rank < with_k {
                faces.push(k as u32 + 1);
                p -= 1;
                m -= k;
            } else {
                rank -= with_k;
                k -= 1;
            }
        }
        Die::from_valid(faces, Model::MultisetCanonical)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Die {
        self.unrank(rng.random_range(0..self.total()))
    }
}

fn cached<T, F>(
    cell: &'static OnceLock<Mutex<HashMap<usize, Arc<T>>>>,
    n: usize,
    build: F,
) -> Arc<T>
where
    F: FnOnce(usize) -> T,
{
    let map = cell.get_or_init(Default::default);
    if let Some(t) = map.lock().unwrap().get(&n) {
        return Arc::clone(t);
    }
    // Built outside the lock; a racing builder just produces an equal table.
    let built = Arc::new(build(n));
    let mut guard = map.lock().unwrap();
    Arc::clone(guard.entry(n).or_insert(built))
}

/// Shared, read-only balanced counts for `n`.
pub fn balanced_counts(n: usize, cap: usize) -> Result<Arc<BalancedCounts>, SamplerError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BalancedCounts>>>> = OnceLock::new();
    if n == 0 {
        return Err(SamplerError::ZeroSides);
    }
    if n > cap {
        return Err(SamplerError::AboveExactCap { n, cap });
    }
    Ok(cached(&CACHE, n, BalancedCounts::build))
}

/// Shared, read-only multiset counts for `n`. The cap can be raised up to
/// 64, where the counts still fit in 128 bits.
pub fn multiset_counts(n: usize, cap: usize) -> Result<Arc<MultisetCounts>, SamplerError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MultisetCounts>>>> = OnceLock::new();
    if n == 0 {
        return Err(SamplerError::ZeroSides);
    }
    let cap = cap.min(64);
    if n > cap {
        return Err(SamplerError::AboveExactCap { n, cap });
    }
    Ok(cached(&CACHE, n, MultisetCounts::build))
}

pub fn sample_balanced_exact<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Die, SamplerError> {
    Ok(balanced_counts(n, DEFAULT_EXACT_CAP)?.sample(rng))
}

pub fn sample_multiset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Die, SamplerError> {
    Ok(multiset_counts(n, DEFAULT_EXACT_CAP)?.sample(rng))
}

/// How balanced-sequence dice are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Rejection,
    Completion,
    Exact,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Rejection => "rejection",
            Method::Completion => "completion",
            Method::Exact => "exact",
        }
    }
}

/// A model plus a generation method: everything needed to draw dice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiceSource {
    pub model: Model,
    pub method: Method,
    pub attempt_cap: u64,
    pub exact_cap: usize,
}

impl DiceSource {
    pub fn new(model: Model, method: Method) -> Self {
        DiceSource {
            model,
            method,
            attempt_cap: DEFAULT_ATTEMPT_CAP,
            exact_cap: DEFAULT_EXACT_CAP,
        }
    }

    /// Completion sampling for balanced dice, exact unranking for multisets.
    pub fn default_for(model: Model) -> Self {
        match model {
            Model::BalancedSequence => DiceSource::new(model, Method::Completion),
            Model::MultisetCanonical => DiceSource::new(model, Method::Exact),
        }
    }

    /// Checks that this source can produce `n`-sided dice, building any
    /// exact tables up front.
    pub fn prepare(&self, n: usize) -> Result<(), SamplerError> {
        if n == 0 {
            return Err(SamplerError::ZeroSides);
        }
        match (self.model, self.method) {
            (Model::BalancedSequence, Method::Exact) => {
                balanced_counts(n, self.exact_cap).map(drop)
            }
            (Model::MultisetCanonical, Method::Exact) => {
                multiset_counts(n, self.exact_cap).map(drop)
            }
            (Model::BalancedSequence, _) => Ok(()),
            (model, method) => Err(SamplerError::Unsupported {
                method: method.as_str(),
                model,
            }),
        }
    }

    pub fn sample<R: Rng + ?Sized>(
        &self,
        n: usize,
        rng: &mut R,
    ) -> Result<(Die, SamplerStats), SamplerError> {
        match (self.model, self.method) {
            (Model::BalancedSequence, Method::Rejection) => {
                sample_balanced_rejection(n, rng, self.attempt_cap)
            }
            (Model::BalancedSequence, Method::Completion) => {
                sample_balanced_completion(n, rng, self.attempt_cap)
            }
            (Model::BalancedSequence, Method::Exact) => {
                let die = balanced_counts(n, self.exact_cap)?.sample(rng);
                Ok((
                    die,
                    SamplerStats {
                        attempts: 1,
                        accepts: 1,
                    },
                ))
            }
            (Model::MultisetCanonical, Method::Exact) => {
                let die = multiset_counts(n, self.exact_cap)?.sample(rng);
                Ok((
                    die,
                    SamplerStats {
                        attempts: 1,
                        accepts: 1,
                    },
                ))
            }
            (model, method) => Err(SamplerError::Unsupported {
                method: method.as_str(),
                model,
            }),
        }
    }

    /// Draws `count` dice from one stream.
    pub fn sample_many(
        &self,
        n: usize,
        count: usize,
        stream: RngStream,
    ) -> Result<Vec<Die>, SamplerError> {
        let mut rng = stream.rng();
        (0..count)
            .map(|_| self.sample(n, &mut rng).map(|(d, _)| d))
            .collect()
    }
}
