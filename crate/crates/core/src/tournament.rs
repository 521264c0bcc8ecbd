//! The beats digraph over a set of dice.
//!
//! Ties leave a vertex pair without an edge, so the graph is a near
//! tournament. Triples touching a tie are counted as `incomplete` and kept
//! out of the transitive / intransitive split.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::die::{Die, DieError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("vertex {vertex} is out of range for {m} vertices")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("pair ({0}, {1}) appears more than once")]
    DuplicatePair(usize, usize),
    #[error("pattern size must be 3 or 4, got {0}")]
    PatternSize(usize),
}

/// Directed graph with at most one edge per vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    m: usize,
    /// `rel[i * m + j]` is 1 if i beats j, -1 if j beats i, 0 for a tie or
    /// the diagonal.
    rel: Vec<i8>,
}

impl Tournament {
    /// Builds from a predicate on pairs `i < j`: `Some(true)` for `i → j`,
    /// `Some(false)` for `j → i`, `None` for a tie.
    pub fn from_fn<F>(m: usize, mut f: F) -> Tournament
    where
        F: FnMut(usize, usize) -> Option<bool>,
    {
        let mut rel = vec![0i8; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let r = match f(i, j) {
                    Some(true) => 1,
                    Some(false) => -1,
                    None => 0,
                };
                rel[i * m + j] = r;
                rel[j * m + i] = -r;
            }
        }
        Tournament { m, rel }
    }

    /// Builds from `(winner, loser)` pairs; pairs not mentioned are ties.
    pub fn from_edges<I>(m: usize, edges: I) -> Result<Tournament, TournamentError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rel = vec![0i8; m * m];
        for (w, l) in edges {
            for v in [w, l] {
                if v >= m {
                    return Err(TournamentError::VertexOutOfRange { vertex: v, m });
                }
            }
            if w == l {
                return Err(TournamentError::SelfLoop(w));
            }
            if rel[w * m + l] != 0 {
                return Err(TournamentError::DuplicatePair(w.min(l), w.max(l)));
            }
            rel[w * m + l] = 1;
            rel[l * m + w] = -1;
        }
        Ok(Tournament { m, rel })
    }

    /// `i → j` whenever `i < j`.
    pub fn transitive(m: usize) -> Tournament {
        Tournament::from_fn(m, |_, _| Some(true))
    }

    /// Rotational tournament on an odd number of vertices: `i → i + d (mod m)`
    /// for `d = 1, ..., (m-1)/2`. Every out-degree is `(m-1)/2`.
    pub fn rotational(m: usize) -> Tournament {
        assert!(
            m % 2 == 1,
            "rotational tournaments need an odd vertex count"
        );
        let half = (m - 1) / 2;
        Tournament::from_fn(m, |i, j| Some(j - i <= half))
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// True when `i` beats `j`.
    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.m + j] == 1
    }

    pub fn is_tie(&self, i: usize, j: usize) -> bool {
        i != j && self.rel[i * self.m + j] == 0
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.m {
                if self.beats(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Unordered tied pairs as `(i, j)` with `i < j`.
    pub fn tie_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in i + 1..self.m {
                if self.rel[i * self.m + j] == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        self.rel
            .chunks(self.m.max(1))
            .take(self.m)
            .map(|row| row.iter().filter(|&&r| r == 1).count() as u64)
            .collect()
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        self.rel
            .chunks(self.m.max(1))
            .take(self.m)
            .map(|row| row.iter().filter(|&&r| r == -1).count() as u64)
            .collect()
    }
}

/// Computes all `C(m, 2)` verdicts.
pub fn build_tournament(dice: &[Die]) -> Result<Tournament, DieError> {
    let m = dice.len();
    if let Some(first) = dice.first() {
        for d in dice {
            if d.n() != first.n() {
                return Err(DieError::SideMismatch {
                    left: first.n(),
                    right: d.n(),
                });
            }
        }
    }
    let rows: Vec<Vec<i8>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (i + 1..m)
                .map(|j| {
                    let out = dice[i].beats(&dice[j]).expect("sides checked");
                    match out.greater.cmp(&out.less) {
                        std::cmp::Ordering::Greater => 1,
                        std::cmp::Ordering::Less => -1,
                        std::cmp::Ordering::Equal => 0,
                    }
                })
                .collect()
        })
        .collect();
    let mut rel = vec![0i8; m * m];
    for (i, row) in rows.iter().enumerate() {
        for (off, &r) in row.iter().enumerate() {
            let j = i + 1 + off;
            rel[i * m + j] = r;
            rel[j * m + i] = -r;
        }
    }
    Ok(Tournament { m, rel })
}

fn choose2(x: u64) -> u64 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

fn choose3(x: u64) -> u64 {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TripleCensus {
    pub transitive: u64,
    pub intransitive: u64,
    /// Triples with at least one tied pair.
    pub incomplete: u64,
    pub total: u64,
}

impl TripleCensus {
    pub fn complete(&self) -> u64 {
        self.transitive + self.intransitive
    }

    /// Fraction of tie-free triples that are directed 3-cycles.
    pub fn intransitive_fraction(&self) -> Option<f64> {
        let c = self.complete();
        (c > 0).then(|| self.intransitive as f64 / c as f64)
    }
}

/// Classifies every vertex triple in `O(m² + ties·m)` using
/// `Σ_y d₊(y) d₋(y) = transitive + 3·cyclic + (paths whose ends tie)`.
pub fn triple_census(t: &Tournament) -> TripleCensus {
    let m = t.m as u64;
    let total = choose3(m);
    let out = t.out_degrees();
    let inn = t.in_degrees();
    let paths: u64 = out.iter().zip(&inn).map(|(a, b)| a * b).sum();

    let ties = t.tie_pairs();
    let mut tie_degree = vec![0u64; t.m];
    for &(i, j) in &ties {
        tie_degree[i] += 1;
        tie_degree[j] += 1;
    }
    let mut tie_ended_paths = 0u64;
    let mut tie_triangles = 0u64;
    for &(x, z) in &ties {
        for y in 0..t.m {
            if (t.beats(x, y) && t.beats(y, z)) || (t.beats(z, y) && t.beats(y, x)) {
                tie_ended_paths += 1;
            }
            if y > z && t.is_tie(x, y) && t.is_tie(z, y) {
                tie_triangles += 1;
            }
        }
    }
    // Triples with >= 1 tie, by inclusion-exclusion over the tie graph.
    let touching = ties.len() as u64 * m.saturating_sub(2)
        - tie_degree.iter().map(|&d| choose2(d)).sum::<u64>()
        + tie_triangles;
    let triangles = total - touching;
    let twice_cyclic = paths - tie_ended_paths - triangles;
    debug_assert!(twice_cyclic.is_multiple_of(2));
    let intransitive = twice_cyclic / 2;
    TripleCensus {
        transitive: triangles - intransitive,
        intransitive,
        incomplete: touching,
        total,
    }
}

/// Direct `O(m³)` classification; the reference for [`triple_census`].
pub fn triple_census_brute(t: &Tournament) -> TripleCensus {
    let m = t.m;
    let mut census = TripleCensus {
        transitive: 0,
        intransitive: 0,
        incomplete: 0,
        total: choose3(m as u64),
    };
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if t.is_tie(a, b) || t.is_tie(b, c) || t.is_tie(a, c) {
                    census.incomplete += 1;
                } else if (t.beats(a, b) && t.beats(b, c) && t.beats(c, a))
                    || (t.beats(b, a) && t.beats(c, b) && t.beats(a, c))
                {
                    census.intransitive += 1;
                } else {
                    census.transitive += 1;
                }
            }
        }
    }
    census
}

/// Both sides of the path-counting identity behind the triple/degree
/// equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Path2Report {
    /// Ordered triples `(x, y, z)` with `x → y → z`, counted directly.
    pub paths: u64,
    /// `Σ_y d₊(y) d₋(y)`.
    pub degree_sum: u64,
    /// Tie-free vertex triples.
    pub triangles: u64,
    pub directed_triangles: u64,
    pub tie_free: bool,
    /// `paths == degree_sum`.
    pub degree_identity: bool,
    /// `paths == triangles + 2·directed_triangles`; only asserted when the
    /// graph has no ties.
    pub triangle_identity: Option<bool>,
}

pub fn path2_identity_check(t: &Tournament) -> Path2Report {
    let m = t.m;
    let mut paths = 0u64;
    for y in 0..m {
        for x in 0..m {
            if !t.beats(x, y) {
                continue;
            }
            for z in 0..m {
                if t.beats(y, z) {
                    paths += 1;
                }
            }
        }
    }
    let degree_sum: u64 = t
        .out_degrees()
        .iter()
        .zip(t.in_degrees())
        .map(|(a, b)| a * b)
        .sum();
    let census = triple_census_brute(t);
    let tie_free = census.incomplete == 0 && t.tie_pairs().is_empty();
    Path2Report {
        paths,
        degree_sum,
        triangles: census.complete(),
        directed_triangles: census.intransitive,
        tie_free,
        degree_identity: paths == degree_sum,
        triangle_identity: tie_free.then(|| paths == census.complete() + 2 * census.intransitive),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeSummary {
    pub mean: f64,
    pub variance: f64,
    pub epsilon: f64,
    /// Fraction of vertices with `d₊(x)/(m-1)` in `[½-ε, ½+ε]`.
    pub concentrated_fraction: f64,
}

pub fn outdegree_concentration(t: &Tournament, epsilon: f64) -> DegreeSummary {
    let m = t.m;
    let degrees = t.out_degrees();
    if m == 0 {
        return DegreeSummary {
            mean: 0.0,
            variance: 0.0,
            epsilon,
            concentrated_fraction: 1.0,
        };
    }
    let mean = degrees.iter().sum::<u64>() as f64 / m as f64;
    let variance = degrees
        .iter()
        .map(|&d| (d as f64 - mean).powi(2))
        .sum::<f64>()
        / m as f64;
    // A lone vertex has no opponents; count it as balanced.
    let concentrated = if m == 1 {
        1
    } else {
        let opponents = (m - 1) as f64;
        degrees
            .iter()
            .filter(|&&d| (d as f64 / opponents - 0.5).abs() <= epsilon + 1e-12)
            .count()
    };
    DegreeSummary {
        mean,
        variance,
        epsilon,
        concentrated_fraction: concentrated as f64 / m as f64,
    }
}

/// One isomorphism class of k-vertex tournaments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternClass {
    /// Sorted out-degree sequence, e.g. `"1,1,1"` for the 3-cycle.
    pub scores: String,
    pub label: &'static str,
    /// Smallest labeled code in the class.
    pub canonical: u32,
    /// Number of labeled tournaments in the class.
    pub labeled_size: u32,
    pub count: u64,
    pub frequency: f64,
    /// `labeled_size · 2^(-C(k,2))`: the frequency in a uniformly random
    /// tournament.
    pub uniform_reference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternCensus {
    pub k: usize,
    /// Tie-free k-subsets.
    pub subsets: u64,
    /// Counts per labeled outcome; bit `p` of the code is set when the
    /// lower-indexed vertex of pair `p` (lexicographic pair order) wins.
    pub labeled: Vec<u64>,
    /// `2^(-C(k,2))`.
    pub labeled_reference: f64,
    pub classes: Vec<PatternClass>,
}

fn pairs_of(k: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            v.push((i, j));
        }
    }
    v
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Labeled code → canonical code (minimum over all vertex relabelings).
pub fn canonical_codes(k: usize) -> Vec<u32> {
    let pairs = pairs_of(k);
    let mut pair_index = vec![vec![0usize; k]; k];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        pair_index[i][j] = p;
        pair_index[j][i] = p;
    }
    let perms = permutations(k);
    (0..1u32 << pairs.len())
        .map(|code| {
            perms
                .iter()
                .map(|perm| {
                    let mut relabeled = 0u32;
                    for (p, &(i, j)) in pairs.iter().enumerate() {
                        let i_wins = code >> p & 1 == 1;
                        let (a, b) = (perm[i], perm[j]);
                        // After relabeling, the pair is (min, max); the bit
                        // records whether the smaller label wins.
                        let low_wins = if a < b { i_wins } else { !i_wins };
                        if low_wins {
                            relabeled |= 1 << pair_index[a][b];
                        }
                    }
                    relabeled
                })
                .min()
                .unwrap()
        })
        .collect()
}

fn score_sequence(k: usize, code: u32) -> Vec<u32> {
    let mut scores = vec![0u32; k];
    for (p, (i, j)) in pairs_of(k).into_iter().enumerate() {
        if code >> p & 1 == 1 {
            scores[i] += 1;
        } else {
            scores[j] += 1;
        }
    }
    scores.sort_unstable();
    scores
}

fn class_label(scores: &[u32]) -> &'static str {
    match scores {
        [0, 1, 2] => "transitive",
        [1, 1, 1] => "cyclic",
        [0, 1, 2, 3] => "transitive",
        [1, 1, 1, 3] => "cycle_with_source",
        [0, 2, 2, 2] => "cycle_with_sink",
        [1, 1, 2, 2] => "strong",
        _ => "other",
    }
}

/// Frequencies of each k-vertex sub-tournament among tie-free k-subsets.
pub fn pattern_frequencies(t: &Tournament, k: usize) -> Result<PatternCensus, TournamentError> {
    if !(3..=4).contains(&k) {
        return Err(TournamentError::PatternSize(k));
    }
    let pairs = pairs_of(k);
    let m = t.m;
    let width = 1usize << pairs.len();

    let code_of = |verts: &[usize]| -> Option<u32> {
        let mut code = 0u32;
        for (p, &(i, j)) in pairs.iter().enumerate() {
            match t.rel[verts[i] * m + verts[j]] {
                1 => code |= 1 << p,
                -1 => {}
                _ => return None,
            }
        }
        Some(code)
    };

    let labeled = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut counts = vec![0u64; width];
            let mut verts = [a, 0, 0, 0];
            for b in a + 1..m {
                if t.rel[a * m + b] == 0 {
                    continue;
                }
                verts[1] = b;
                for c in b + 1..m {
                    verts[2] = c;
                    if k == 3 {
                        if let Some(code) = code_of(&verts[..3]) {
                            counts[code as usize] += 1;
                        }
                        continue;
                    }
                    if t.rel[a * m + c] == 0 || t.rel[b * m + c] == 0 {
                        continue;
                    }
                    for d in c + 1..m {
                        verts[3] = d;
                        if let Some(code) = code_of(&verts) {
                            counts[code as usize] += 1;
                        }
                    }
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; width],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );

    let subsets: u64 = labeled.iter().sum();
    let canon = canonical_codes(k);
    let mut reps: Vec<u32> = canon.clone();
    reps.sort_unstable();
    reps.dedup();
    let scale = 1.0 / width as f64;
    let classes = reps
        .into_iter()
        .map(|rep| {
            let members: Vec<usize> = (0..width).filter(|&c| canon[c] == rep).collect();
            let count: u64 = members.iter().map(|&c| labeled[c]).sum();
            let scores = score_sequence(k, rep);
            PatternClass {
                scores: scores
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                label: class_label(&scores),
                canonical: rep,
                labeled_size: members.len() as u32,
                count,
                frequency: if subsets > 0 {
                    count as f64 / subsets as f64
                } else {
                    0.0
                },
                uniform_reference: members.len() as f64 * scale,
            }
        })
        .collect();

    Ok(PatternCensus {
        k,
        subsets,
        labeled,
        labeled_reference: scale,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::die::Model;
    use crate::enumeration::enumerate_multiset;
    use proptest::prelude::*;

    fn cycle3() -> Tournament {
        Tournament::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn identical_dice_tie() {
        let d = Die::new(vec![1, 3, 3, 3], Model::BalancedSequence).unwrap();
        let t = build_tournament(&[d.clone(), d.clone(), d]).unwrap();
        assert!(t.edges().is_empty());
        assert_eq!(t.tie_pairs().len(), 3);
        let c = triple_census(&t);
        assert_eq!((c.incomplete, c.total), (1, 1));
    }

    #[test]
    fn mismatched_dice_rejected() {
        let a = Die::standard(3, Model::BalancedSequence);
        let b = Die::standard(4, Model::BalancedSequence);
        assert!(build_tournament(&[a, b]).is_err());
    }

    #[test]
    fn four_sided_near_tournament() {
        let dice = enumerate_multiset(4).unwrap();
        let t = build_tournament(&dice).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i == j {
                    continue;
                }
                let v = dice[i].beats_reference(&dice[j]).unwrap();
                assert_eq!(t.beats(i, j), v.a_wins());
                assert_eq!(t.is_tie(i, j), v.is_tie());
            }
        }
        assert_eq!(t.edges().len() + t.tie_pairs().len(), 10);
    }

    #[test]
    fn edge_validation() {
        assert_eq!(
            Tournament::from_edges(3, [(0, 1), (1, 0)]).err(),
            Some(TournamentError::DuplicatePair(0, 1))
        );
        assert_eq!(
            Tournament::from_edges(3, [(1, 1)]).err(),
            Some(TournamentError::SelfLoop(1))
        );
        assert!(Tournament::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn three_vertex_cases() {
        let c = triple_census(&cycle3());
        assert_eq!((c.intransitive, c.transitive), (1, 0));
        let c = triple_census(&Tournament::transitive(3));
        assert_eq!((c.intransitive, c.transitive), (0, 1));

        let r = path2_identity_check(&cycle3());
        assert_eq!((r.paths, r.degree_sum), (3, 3));
        assert_eq!(r.triangle_identity, Some(true));
        let r = path2_identity_check(&Tournament::transitive(3));
        assert_eq!((r.paths, r.degree_sum), (1, 1));
    }

    #[test]
    fn degree_summaries() {
        let s = outdegree_concentration(&Tournament::rotational(11), 0.0);
        assert_eq!(s.mean, 5.0);
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.concentrated_fraction, 1.0);
        let s = outdegree_concentration(&Tournament::transitive(100), 0.1);
        assert!(s.concentrated_fraction < 0.3, "{s:?}");
    }

    #[test]
    fn pattern_class_sizes() {
        let sizes = |k| {
            let canon = canonical_codes(k);
            let mut reps = canon.clone();
            reps.sort_unstable();
            reps.dedup();
            let mut out: Vec<(Vec<u32>, usize)> = reps
                .iter()
                .map(|&r| {
                    (
                        score_sequence(k, r),
                        canon.iter().filter(|&&c| c == r).count(),
                    )
                })
                .collect();
            out.sort();
            out
        };
        assert_eq!(sizes(3), vec![(vec![0, 1, 2], 6), (vec![1, 1, 1], 2)]);
        // Brute-force labeled classification of all 64 tournaments on 4
        // vertices: 24 transitive, 8 + 8 with a 3-cycle and a source/sink,
        // 24 strongly connected.
        assert_eq!(
            sizes(4),
            vec![
                (vec![0, 1, 2, 3], 24),
                (vec![0, 2, 2, 2], 8),
                (vec![1, 1, 1, 3], 8),
                (vec![1, 1, 2, 2], 24)
            ]
        );
        // Score sequence separates the classes for k <= 4.
        for k in [3, 4] {
            let canon = canonical_codes(k);
            for a in 0..canon.len() {
                for b in 0..canon.len() {
                    let same_scores = score_sequence(k, a as u32) == score_sequence(k, b as u32);
                    assert_eq!(same_scores, canon[a] == canon[b]);
                }
            }
        }
    }

    #[test]
    fn pattern_frequencies_small() {
        let p = pattern_frequencies(&cycle3(), 3).unwrap();
        assert_eq!(p.subsets, 1);
        let cyc = p.classes.iter().find(|c| c.label == "cyclic").unwrap();
        assert_eq!(cyc.count, 1);
        assert_eq!(cyc.uniform_reference, 0.25);
        let p = pattern_frequencies(&Tournament::transitive(6), 4).unwrap();
        assert_eq!(p.subsets, 15);
        assert_eq!(
            p.classes
                .iter()
                .find(|c| c.label == "transitive")
                .unwrap()
                .count,
            15
        );
        assert_eq!(p.labeled_reference, 1.0 / 64.0);
        assert!(pattern_frequencies(&cycle3(), 5).is_err());
    }

    fn xorshift(mut s: u64) -> impl FnMut() -> u64 {
        move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        }
    }

    fn random_tournament(m: usize, seed: u64, tie_rate: u64) -> Tournament {
        let mut next = xorshift(seed | 1);
        Tournament::from_fn(m, |_, _| {
            let r = next() % 100;
            if r < tie_rate {
                None
            } else {
                Some(r.is_multiple_of(2))
            }
        })
    }

    #[test]
    fn fifty_vertex_census_matches_brute_force() {
        for seed in 1..6 {
            for tie_rate in [0, 5, 30] {
                let t = random_tournament(50, seed * 7919, tie_rate);
                assert_eq!(triple_census(&t), triple_census_brute(&t));
            }
        }
    }

    #[test]
    fn pattern_counts_match_brute_force() {
        let t = random_tournament(14, 42, 10);
        for k in [3usize, 4] {
            let p = pattern_frequencies(&t, k).unwrap();
            let mut expected = vec![0u64; p.labeled.len()];
            let pairs = pairs_of(k);
            let verts_iter: Vec<Vec<usize>> = if k == 3 {
                (0..14)
                    .flat_map(|a| {
                        (a + 1..14).flat_map(move |b| (b + 1..14).map(move |c| vec![a, b, c]))
                    })
                    .collect()
            } else {
                (0..14)
                    .flat_map(|a| {
                        (a + 1..14).flat_map(move |b| {
                            (b + 1..14)
                                .flat_map(move |c| (c + 1..14).map(move |d| vec![a, b, c, d]))
                        })
                    })
                    .collect()
            };
            for v in verts_iter {
                if pairs.iter().any(|&(i, j)| t.is_tie(v[i], v[j])) {
                    continue;
                }
                let code = pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(i, j))| t.beats(v[i], v[j]))
                    .fold(0u32, |acc, (p, _)| acc | 1 << p);
                expected[code as usize] += 1;
            }
            assert_eq!(p.labeled, expected);
            if k == 3 {
                let c = triple_census_brute(&t);
                let cyc = p
                    .classes
                    .iter()
                    .find(|c| c.label == "cyclic")
                    .unwrap()
                    .count;
                assert_eq!(cyc, c.intransitive);
            }
        }
    }

    proptest! {
        #[test]
        fn path2_identity_on_tournaments(m in 1usize..=64, seed in any::<u64>()) {
            let t = random_tournament(m, seed, 0);
            let r = path2_identity_check(&t);
            prop_assert!(r.tie_free);
            prop_assert!(r.degree_identity);
            prop_assert_eq!(r.triangle_identity, Some(true));
            let c = triple_census(&t);
            prop_assert_eq!(c.incomplete, 0);
            prop_assert_eq!(2 * c.intransitive, r.paths - c.complete());
        }

        #[test]
        fn census_partitions_triples(m in 0usize..=30, seed in any::<u64>(), ties in 0u64..60) {
            let t = random_tournament(m, seed, ties);
            let c = triple_census(&t);
            prop_assert_eq!(c.transitive + c.intransitive + c.incomplete, c.total);
            prop_assert_eq!(c, triple_census_brute(&t));
            let r = path2_identity_check(&t);
            prop_assert!(r.degree_identity);
            prop_assert_eq!(t.edges().len() + t.tie_pairs().len(), m * m.saturating_sub(1) / 2);
        }
    }
}
