//! Dice, the beats relation and the `f_A` / `g_A` statistics.
//!
//! Half-integer quantities are carried as [`HalfInt`], an integer holding
//! twice the value. With that representation the identities
//! `Σ_j f_A(j) = n²/2`, `Σ_j g_A(j) = 0` and the sign criterion
//! `Σ_j g_A(b_j) > 0 ⇔ B beats A` are checked with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which uniform measure a die was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Uniform over ordered sequences in `[n]^n` with the right sum.
    BalancedSequence,
    /// Uniform over multisets; faces are kept sorted.
    MultisetCanonical,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::BalancedSequence => "balanced",
            Model::MultisetCanonical => "multiset",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DieError {
    #[error("a die needs at least one face")]
    Empty,
    #[error("face {face} at position {index} is outside [1, {n}]")]
    FaceOutOfRange { face: i64, index: usize, n: usize },
    #[error("faces sum to {sum}, but {n} sides require a sum of {expected}")]
    WrongSum { sum: i64, expected: i64, n: usize },
    #[error("cannot compare a {left}-sided die with a {right}-sided die")]
    SideMismatch { left: usize, right: usize },
    #[error("index {j} is outside [1, {n}]")]
    IndexOutOfRange { j: i64, n: usize },
}

/// A half-integer stored as twice its value.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    /// Twice the value; always an integer.
    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn signum(self) -> i64 {
        self.0.signum()
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        HalfInt(iter.map(|h| h.0).sum())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    AWins,
    BWins,
    Tie,
}

impl Verdict {
    /// The verdict with the roles of A and B exchanged.
    pub fn flip(self) -> Verdict {
        match self {
            Verdict::AWins => Verdict::BWins,
            Verdict::BWins => Verdict::AWins,
            Verdict::Tie => Verdict::Tie,
        }
    }

    fn from_counts(greater: u64, less: u64) -> Verdict {
        match greater.cmp(&less) {
            Ordering::Greater => Verdict::AWins,
            Ordering::Less => Verdict::BWins,
            Ordering::Equal => Verdict::Tie,
        }
    }
}

/// Pair counts for one comparison of A against B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeatOutcome {
    /// Pairs `(i, j)` with `a_i > b_j`.
    pub greater: u64,
    /// Pairs with `a_i < b_j`.
    pub less: u64,
    /// Pairs with `a_i = b_j`.
    pub equal: u64,
    pub verdict: Verdict,
}

impl BeatOutcome {
    fn new(greater: u64, less: u64, equal: u64) -> Self {
        BeatOutcome {
            greater,
            less,
            equal,
            verdict: Verdict::from_counts(greater, less),
        }
    }

    pub fn total(&self) -> u64 {
        self.greater + self.less + self.equal
    }

    pub fn a_wins(&self) -> bool {
        self.verdict == Verdict::AWins
    }

    pub fn is_tie(&self) -> bool {
        self.verdict == Verdict::Tie
    }
}

#[derive(Deserialize)]
struct RawDie {
    faces: Vec<u32>,
    model: Model,
}

impl TryFrom<RawDie> for Die {
    type Error = DieError;
    fn try_from(raw: RawDie) -> Result<Die, DieError> {
        Die::new(raw.faces, raw.model)
    }
}

/// A validated n-sided die.
///
/// Faces lie in `[1, n]` and sum to `n(n+1)/2`. Multiset-model dice keep
/// their faces sorted non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDie")]
pub struct Die {
    faces: Vec<u32>,
    model: Model,
}

/// `n(n+1)/2`, the required face sum.
pub fn target_sum(n: usize) -> u64 {
    let n = n as u64;
    n * (n + 1) / 2
}

impl Die {
    pub fn new(faces: Vec<u32>, model: Model) -> Result<Die, DieError> {
        Self::from_signed(faces.into_iter().map(i64::from), model)
    }

    /// Validates arbitrary integers (so that zero or negative faces produce
    /// a range diagnostic rather than a conversion failure).
    pub fn from_signed<I>(faces: I, model: Model) -> Result<Die, DieError>
    where
        I: IntoIterator<Item = i64>,
    {
        let raw: Vec<i64> = faces.into_iter().collect();
        let n = raw.len();
        if n == 0 {
            return Err(DieError::Empty);
        }
        for (index, &face) in raw.iter().enumerate() {
            if face < 1 || face > n as i64 {
                return Err(DieError::FaceOutOfRange { face, index, n });
            }
        }
        let sum: i64 = raw.iter().sum();
        let expected = target_sum(n) as i64;
        if sum != expected {
            return Err(DieError::WrongSum { sum, expected, n });
        }
        let mut faces: Vec<u32> = raw.into_iter().map(|f| f as u32).collect();
        if model == Model::MultisetCanonical {
            faces.sort_unstable();
        }
        Ok(Die { faces, model })
    }

    /// Builds a die from faces already known to be valid (samplers and
    /// enumerators). Checked in debug builds.
    pub(crate) fn from_valid(mut faces: Vec<u32>, model: Model) -> Die {
        if model == Model::MultisetCanonical {
            faces.sort_unstable();
        }
        debug_assert!(Die::new(faces.clone(), model).is_ok());
        Die { faces, model }
    }

    /// The standard die `(1, 2, ..., n)`.
    pub fn standard(n: usize, model: Model) -> Die {
        Die::from_valid((1..=n as u32).collect(), model)
    }

    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn n(&self) -> usize {
        self.faces.len()
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Same faces, reinterpreted under another model.
    pub fn with_model(&self, model: Model) -> Die {
        Die::from_valid(self.faces.clone(), model)
    }

    /// `counts[v]` is the number of faces equal to `v`, for `v` in `0..=n`.
    pub fn histogram(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.n() + 1];
        for &f in &self.faces {
            counts[f as usize] += 1;
        }
        counts
    }

    fn sorted_faces(&self) -> std::borrow::Cow<'_, [u32]> {
        if self.model == Model::MultisetCanonical {
            std::borrow::Cow::Borrowed(&self.faces)
        } else {
            let mut v = self.faces.clone();
            v.sort_unstable();
            std::borrow::Cow::Owned(v)
        }
    }

    fn check_index(&self, j: i64) -> Result<usize, DieError> {
        if j < 1 || j > self.n() as i64 {
            return Err(DieError::IndexOutOfRange { j, n: self.n() });
        }
        Ok(j as usize)
    }

    /// `f_A(j) = #{i : a_i < j} + ½ #{i : a_i = j}`.
    pub fn f_of(&self, j: i64) -> Result<HalfInt, DieError> {
        let j = self.check_index(j)? as u32;
        let doubled = self
            .faces
            .iter()
            .map(|&a| match a.cmp(&j) {
                Ordering::Less => 2,
                Ordering::Equal => 1,
                Ordering::Greater => 0,
            })
            .sum::<i64>();
        Ok(HalfInt(doubled))
    }

    /// `g_A(j) = f_A(j) - j + ½`.
    pub fn g_of(&self, j: i64) -> Result<HalfInt, DieError> {
        let f = self.f_of(j)?;
        Ok(HalfInt(f.0 - 2 * j + 1))
    }

    /// `f_A(1), ..., f_A(n)` in one pass over the histogram.
    pub fn f_table(&self) -> Vec<HalfInt> {
        let counts = self.histogram();
        let mut below = 0i64;
        (1..=self.n())
            .map(|j| {
                let c = counts[j] as i64;
                let f = HalfInt(2 * below + c);
                below += c;
                f
            })
            .collect()
    }

    /// `g_A(1), ..., g_A(n)`; index `j - 1` holds `g_A(j)`.
    pub fn g_table(&self) -> Vec<HalfInt> {
        self.f_table()
            .into_iter()
            .enumerate()
            .map(|(idx, f)| HalfInt(f.0 - 2 * (idx as i64 + 1) + 1))
            .collect()
    }

    /// `max_j |g_A(j)|`.
    pub fn max_abs_g(&self) -> HalfInt {
        self.g_table()
            .into_iter()
            .map(HalfInt::abs)
            .max()
            .unwrap_or(HalfInt::ZERO)
    }

    /// `(n+1-a_1, ..., n+1-a_n)`.
    pub fn complement(&self) -> Die {
        let top = self.n() as u32 + 1;
        Die::from_valid(self.faces.iter().map(|&a| top - a).collect(), self.model)
    }

    fn check_sides(&self, other: &Die) -> Result<(), DieError> {
        if self.n() != other.n() {
            return Err(DieError::SideMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Compares `self` (A) against `other` (B) by sorting both face lists
    /// and merging.
    pub fn beats(&self, other: &Die) -> Result<BeatOutcome, DieError> {
        self.check_sides(other)?;
        let a = self.sorted_faces();
        let b = other.sorted_faces();
        let n = b.len() as u64;
        let (mut greater, mut less, mut equal) = (0u64, 0u64, 0u64);
        let mut below = 0usize;
        let mut i = 0usize;
        while i < a.len() {
            let value = a[i];
            let mut run = 0u64;
            while i < a.len() && a[i] == value {
                run += 1;
                i += 1;
            }
            while below < b.len() && b[below] < value {
                below += 1;
            }
            let mut at = below;
            while at < b.len() && b[at] == value {
                at += 1;
            }
            let lt = below as u64;
            let eq = (at - below) as u64;
            greater += run * lt;
            equal += run * eq;
            less += run * (n - lt - eq);
        }
        Ok(BeatOutcome::new(greater, less, equal))
    }

    /// Quadratic pair-by-pair counter used as a test reference.
    pub fn beats_reference(&self, other: &Die) -> Result<BeatOutcome, DieError> {
        self.check_sides(other)?;
        let (mut greater, mut less, mut equal) = (0u64, 0u64, 0u64);
        for &a in &self.faces {
            for &b in &other.faces {
                match a.cmp(&b) {
                    Ordering::Greater => greater += 1,
                    Ordering::Less => less += 1,
                    Ordering::Equal => equal += 1,
                }
            }
        }
        Ok(BeatOutcome::new(greater, less, equal))
    }

    /// `Σ_j g_A(b_j)` with `self` as A. Positive iff B beats A, negative iff
    /// A beats B, zero iff they tie.
    pub fn score_sum(&self, other: &Die) -> Result<HalfInt, DieError> {
        self.check_sides(other)?;
        let g = self.g_table();
        Ok(other.faces.iter().map(|&b| g[b as usize - 1]).sum())
    }
}

impl fmt::Display for Die {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, face) in self.faces.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{face}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn die(faces: &[u32]) -> Die {
        Die::new(faces.to_vec(), Model::BalancedSequence).unwrap()
    }

    /// All sequences in `[n]^n` with the right sum, by brute force.
    fn all_balanced(n: usize) -> Vec<Die> {
        let total = (n as u64).pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let faces: Vec<u32> = (0..n)
                .map(|_| {
                    let f = (c % n as u64) as u32 + 1;
                    c /= n as u64;
                    f
                })
                .collect();
            if faces.iter().map(|&f| f as u64).sum::<u64>() == target_sum(n) {
                out.push(die(&faces));
            }
        }
        out
    }

    #[test]
    fn validation_diagnostics() {
        assert!(Die::new(vec![1, 1, 4, 4], Model::BalancedSequence).is_ok());
        assert_eq!(
            Die::new(vec![1, 1, 1, 1], Model::BalancedSequence),
            Err(DieError::WrongSum {
                sum: 4,
                expected: 10,
                n: 4
            })
        );
        assert_eq!(
            Die::new(vec![0, 2, 4, 4], Model::BalancedSequence),
            Err(DieError::FaceOutOfRange {
                face: 0,
                index: 0,
                n: 4
            })
        );
        assert_eq!(
            Die::new(vec![], Model::BalancedSequence),
            Err(DieError::Empty)
        );
        let err = Die::from_signed([-1, 3, 4, 4], Model::BalancedSequence).unwrap_err();
        assert!(err.to_string().contains("outside [1, 4]"));
    }

    #[test]
    fn multiset_dice_are_sorted() {
        let d = Die::new(vec![4, 1, 4, 1], Model::MultisetCanonical).unwrap();
        assert_eq!(d.faces(), &[1, 1, 4, 4]);
        let d = Die::new(vec![4, 1, 4, 1], Model::BalancedSequence).unwrap();
        assert_eq!(d.faces(), &[4, 1, 4, 1]);
    }

    #[test]
    fn eight_versus_six() {
        let out = die(&[1, 1, 4, 4]).beats(&die(&[1, 3, 3, 3])).unwrap();
        assert_eq!((out.greater, out.less, out.equal), (8, 6, 2));
        assert_eq!(out.verdict, Verdict::AWins);
    }

    #[test]
    fn self_comparison_ties() {
        let a = die(&[2, 2, 3, 3]);
        let out = a.beats(&a).unwrap();
        assert_eq!(out.greater, out.less);
        assert!(out.is_tie());
        assert_eq!(a.score_sum(&a).unwrap(), HalfInt::ZERO);
    }

    #[test]
    fn fast_beats_matches_reference_small() {
        let a = die(&[2, 2, 3, 3]);
        let b = die(&[1, 2, 3, 4]);
        assert_eq!(a.beats(&b).unwrap(), a.beats_reference(&b).unwrap());
        let out = a.beats_reference(&b).unwrap();
        assert_eq!((out.greater, out.less, out.equal), (6, 6, 4));
        assert!(out.is_tie());
    }

    #[test]
    fn mismatched_sides_rejected() {
        let a = die(&[1, 2, 3]);
        let b = die(&[1, 2, 3, 4]);
        assert_eq!(
            a.beats(&b),
            Err(DieError::SideMismatch { left: 3, right: 4 })
        );
        assert!(a.score_sum(&b).is_err());
        assert!(a.beats_reference(&b).is_err());
    }

    #[test]
    fn f_and_g_values() {
        let a = die(&[1, 1, 4, 4]);
        assert_eq!(a.f_of(1).unwrap().doubled(), 2);
        assert_eq!(a.f_of(4).unwrap().doubled(), 6);
        let g: Vec<i64> = (1..=4).map(|j| a.g_of(j).unwrap().doubled()).collect();
        assert_eq!(g, vec![1, 1, -1, -1]);
        assert_eq!(
            a.g_table().iter().map(|h| h.doubled()).collect::<Vec<_>>(),
            g
        );
        assert_eq!(a.f_of(0), Err(DieError::IndexOutOfRange { j: 0, n: 4 }));
        assert!(a.g_of(5).is_err());
        assert_eq!(HalfInt::from_doubled(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_doubled(6).to_string(), "3");
    }

    #[test]
    fn standard_die_has_zero_g() {
        for n in 1..30 {
            let d = Die::standard(n, Model::BalancedSequence);
            assert!(d.g_table().iter().all(|g| *g == HalfInt::ZERO));
            assert_eq!(d.max_abs_g(), HalfInt::ZERO);
        }
    }

    #[test]
    fn score_sum_example() {
        let a = die(&[1, 1, 4, 4]);
        let b = die(&[1, 3, 3, 3]);
        assert_eq!(a.score_sum(&b).unwrap().doubled(), -2);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(die(&[1, 1, 4, 4]).complement().faces(), &[4, 4, 1, 1]);
        let s = Die::standard(6, Model::BalancedSequence);
        assert_eq!(s.complement().faces(), &[6, 5, 4, 3, 2, 1]);
        let mut sorted = s.complement().faces().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, s.faces());
    }

    #[test]
    fn exhaustive_reduction_small_n() {
        for n in 1..=5 {
            let dice = all_balanced(n);
            for a in &dice {
                let f_sum: i64 = a.f_table().iter().map(|h| h.doubled()).sum();
                assert_eq!(f_sum, (n * n) as i64);
                assert_eq!(a.g_table().into_iter().sum::<HalfInt>(), HalfInt::ZERO);
                for b in &dice {
                    let out = a.beats(b).unwrap();
                    assert_eq!(out, a.beats_reference(b).unwrap());
                    let s = a.score_sum(b).unwrap().signum();
                    let expected = match out.verdict {
                        Verdict::AWins => -1,
                        Verdict::BWins => 1,
                        Verdict::Tie => 0,
                    };
                    assert_eq!(s, expected, "{a} vs {b}");
                    assert_eq!(b.score_sum(a).unwrap().signum(), -s);
                    let dual = b.complement().beats(&a.complement()).unwrap();
                    assert_eq!(dual.verdict, out.verdict);
                }
            }
        }
    }

    fn arb_die(n: usize) -> impl Strategy<Value = Die> {
        // Shuffle the standard die, then apply random mass-preserving moves.
        let moves = proptest::collection::vec((0..n, 0..n), 0..4 * n);
        (Just(n), moves).prop_map(|(n, moves)| {
            let mut faces: Vec<u32> = (1..=n as u32).collect();
            for (i, j) in moves {
                if i != j && faces[i] < n as u32 && faces[j] > 1 {
                    faces[i] += 1;
                    faces[j] -= 1;
                }
            }
            Die::new(faces, Model::BalancedSequence).unwrap()
        })
    }

    proptest! {
        #[test]
        fn fast_and_reference_agree(
            (a, b) in (2usize..80).prop_flat_map(|n| (arb_die(n), arb_die(n)))
        ) {
            let fast = a.beats(&b).unwrap();
            prop_assert_eq!(fast, a.beats_reference(&b).unwrap());
            prop_assert_eq!(fast.total(), (a.n() * a.n()) as u64);
            let rev = b.beats(&a).unwrap();
            prop_assert_eq!((rev.greater, rev.less), (fast.less, fast.greater));
            prop_assert_eq!(rev.verdict, fast.verdict.flip());
            prop_assert_eq!(
                a.score_sum(&b).unwrap().signum(),
                -b.score_sum(&a).unwrap().signum()
            );
            let dual = b.complement().beats(&a.complement()).unwrap();
            prop_assert_eq!(dual.verdict, fast.verdict);
            prop_assert_eq!(a.complement().complement(), a);
        }

        #[test]
        fn g_sums_to_zero(a in (1usize..120).prop_flat_map(arb_die)) {
            prop_assert_eq!(a.g_table().into_iter().sum::<HalfInt>(), HalfInt::ZERO);
            let n = a.n() as i64;
            prop_assert_eq!(a.f_table().iter().map(|h| h.doubled()).sum::<i64>(), n * n);
        }
    }
}
