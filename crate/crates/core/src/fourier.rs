//! The lattice law of a die and its local limit behaviour.
//!
//! For a fixed die A, pick `j` uniformly from `[n]` and look at
//! `(U, V) = (g_A(j), j - (n+1)/2)`. If `B` is a uniform sequence in `[n]^n`
//! then `Σ_j g_A(b_j)` and `Σ_j (b_j - (n+1)/2)` are distributed as the
//! n-fold sum `(U^{*n}, V^{*n})`. Conditioning on `V^{*n} = 0` restricts B to
//! balanced sequences, and the sign of `U^{*n}` decides the beats verdict.
//! So the exact convolution below computes the fraction of balanced dice
//! that A beats, ties and loses to, without ever comparing dice.
//!
//! Coordinates are in doubled units throughout: `x = 2U^{*n}` and
//! `y = 2V^{*n}`, both integers.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::die::Die;
use crate::rns::{add_mod, primes_for_bits, Garner};

pub const DEFAULT_CONVOLUTION_CAP: usize = 40;
/// Upper bound on residue-table memory for one convolution.
const TABLE_BYTES_LIMIT: usize = 2 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FourierError {
    #[error("n = {n} is above the convolution cap of {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error("convolution table of {cells} cells exceeds the memory limit")]
    TableTooLarge { cells: usize },
}

/// The n atoms `(2·g_A(j), 2j - n - 1)`, each of weight `1/n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeLaw {
    pub n: usize,
    pub atoms: Vec<(i64, i64)>,
}

impl LatticeLaw {
    pub fn sum_u(&self) -> i64 {
        self.atoms.iter().map(|a| a.0).sum()
    }

    pub fn sum_v(&self) -> i64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// `(Σ u², Σ uv, Σ v²)` over the atoms, doubled units. Since each atom
    /// has weight `1/n`, these are also the covariance entries of the
    /// n-fold sum `(x, y)`.
    pub fn second_moments(&self) -> (i128, i128, i128) {
        self.atoms.iter().fold((0, 0, 0), |(uu, uv, vv), &(u, v)| {
            let (u, v) = (u as i128, v as i128);
            (uu + u * u, uv + u * v, vv + v * v)
        })
    }
}

pub fn lattice_law(die: &Die) -> LatticeLaw {
    let n = die.n() as i64;
    let atoms = die
        .g_table()
        .into_iter()
        .enumerate()
        .map(|(idx, g)| (g.doubled(), 2 * (idx as i64 + 1) - n - 1))
        .collect();
    LatticeLaw { n: die.n(), atoms }
}

/// `f̂(α, β) = n^{-1} Σ_j e(α g_A(j) + β j)` with `e(x) = exp(2πix)`.
pub fn char_fn(die: &Die, alpha: f64, beta: f64) -> Complex64 {
    let weights: Vec<Complex64> = die
        .g_table()
        .iter()
        .map(|g| unit(alpha * g.to_f64()))
        .collect();
    horner(&weights, beta) / die.n() as f64
}

fn unit(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x.rem_euclid(1.0))
}

/// `Σ_j w_j e(β j)` for `j = 1..=len`, by Horner's rule in `e(β)`.
fn horner(weights: &[Complex64], beta: f64) -> Complex64 {
    let z = unit(beta);
    let mut acc = Complex64::new(0.0, 0.0);
    for w in weights.iter().rev() {
        acc = (acc + w) * z;
    }
    acc
}

/// Evenly spaced samples of `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Self {
        Axis { lo, hi, steps }
    }

    /// `[-½, ½]` with `steps` points.
    pub fn torus(steps: usize) -> Self {
        Axis::new(-0.5, 0.5, steps)
    }

    pub fn point(&self, i: usize) -> f64 {
        if self.steps <= 1 {
            return self.lo;
        }
        self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
    }
}

/// `f̂` sampled on a rectangular grid; `values[ia * beta.steps + ib]` holds
/// `(re, im)` at `(alpha.point(ia), beta.point(ib))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharGrid {
    pub n: usize,
    pub die: String,
    pub alpha: Axis,
    pub beta: Axis,
    pub values: Vec<[f64; 2]>,
}

impl CharGrid {
    pub fn at(&self, ia: usize, ib: usize) -> Complex64 {
        let [re, im] = self.values[ia * self.beta.steps + ib];
        Complex64::new(re, im)
    }

    pub fn max_modulus(&self) -> f64 {
        self.values
            .iter()
            .map(|&[re, im]| re.hypot(im))
            .fold(0.0, f64::max)
    }
}

pub fn char_grid(die: &Die, alpha: Axis, beta: Axis) -> CharGrid {
    let g = die.g_table();
    let n = die.n() as f64;
    let values = (0..alpha.steps)
        .into_par_iter()
        .flat_map_iter(|ia| {
            let a = alpha.point(ia);
            let weights: Vec<Complex64> = g.iter().map(|g| unit(a * g.to_f64())).collect();
            (0..beta.steps)
                .map(|ib| {
                    let v = horner(&weights, beta.point(ib)) / n;
                    [v.re, v.im]
                })
                .collect::<Vec<_>>()
        })
        .collect();
    CharGrid {
        n: die.n(),
        die: die.to_string(),
        alpha,
        beta,
        values,
    }
}

/// Constants of the box outside which `|f̂|ⁿ` is claimed to be at most
/// `n^{-10}`: `|α| ≥ alpha · log n / n` or `|β| ≥ beta · (log n / n)^{3/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxConstants {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for BoxConstants {
    fn default() -> Self {
        BoxConstants {
            alpha: 1e7,
            beta: 1e9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The claim says nothing at this n.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxBoundReport {
    pub n: usize,
    pub constants: BoxConstants,
    pub alpha_threshold: f64,
    pub beta_threshold: f64,
    pub grid_steps: usize,
    /// `n^{-10}`.
    pub bound: f64,
    /// Largest `|f̂|ⁿ` over grid points outside the box.
    pub outside_max: Option<f64>,
    /// `outside_max / bound`.
    pub slack: Option<f64>,
    /// Largest `|f̂|` over the whole grid; at most 1.
    pub grid_max_modulus: f64,
    pub status: CheckStatus,
}

pub fn box_bound_report(die: &Die, grid_steps: usize, constants: BoxConstants) -> BoxBoundReport {
    let n = die.n();
    let nf = n as f64;
    let ln = nf.ln();
    let alpha_threshold = constants.alpha * ln / nf;
    let beta_threshold = constants.beta * (ln / nf).powf(1.5);
    let bound = nf.powi(-10);
    let grid = char_grid(die, Axis::torus(grid_steps), Axis::torus(grid_steps));
    let grid_max_modulus = grid.max_modulus();

    let vacuous = alpha_threshold > 0.5 && beta_threshold > 0.5;
    let mut outside_max: Option<f64> = None;
    if !vacuous {
        for ia in 0..grid_steps {
            let a = grid.alpha.point(ia);
            for ib in 0..grid_steps {
                let b = grid.beta.point(ib);
                if a.abs() >= alpha_threshold || b.abs() >= beta_threshold {
                    let v = grid.at(ia, ib).norm().powf(nf);
                    outside_max = Some(outside_max.map_or(v, |m| m.max(v)));
                }
            }
        }
    }
    let status = match outside_max {
        _ if vacuous => CheckStatus::Vacuous,
        None => CheckStatus::Vacuous,
        Some(v) if v <= bound => CheckStatus::Pass,
        Some(_) => CheckStatus::Fail,
    };
    BoxBoundReport {
        n,
        constants,
        alpha_threshold,
        beta_threshold,
        grid_steps,
        bound,
        outside_max,
        slack: outside_max.map(|v| v / bound),
        grid_max_modulus,
        status,
    }
}

/// Exact law of `(x, y) = (2U^{*n}, 2V^{*n})` as counts of sequences in
/// `[n]^n`. Cell `(col, row)` is the point
/// `x = x_min + col`, `y = y_min + 2·row`.
#[derive(Debug, Clone)]
pub struct JointPmf {
    pub law: LatticeLaw,
    pub x_min: i64,
    pub y_min: i64,
    pub width: usize,
    pub height: usize,
    pub counts: Vec<BigUint>,
    /// `nⁿ`.
    pub total: BigUint,
}

impl JointPmf {
    pub fn n(&self) -> usize {
        self.law.n
    }

    fn cell(&self, x: i64, y: i64) -> Option<usize> {
        let col = x - self.x_min;
        let dy = y - self.y_min;
        if col < 0 || dy < 0 || dy % 2 != 0 {
            return None;
        }
        let (col, row) = (col as usize, (dy / 2) as usize);
        (col < self.width && row < self.height).then(|| row * self.width + col)
    }

    pub fn count(&self, x: i64, y: i64) -> BigUint {
        self.cell(x, y)
            .map(|i| self.counts[i].clone())
            .unwrap_or_default()
    }

    pub fn probability(&self, x: i64, y: i64) -> f64 {
        self.cell(x, y)
            .map_or(0.0, |i| ratio_f64(&self.counts[i], &self.total))
    }

    pub fn x_at(&self, col: usize) -> i64 {
        self.x_min + col as i64
    }

    pub fn y_at(&self, row: usize) -> i64 {
        self.y_min + 2 * row as i64
    }

    /// Row index of `y = 0`.
    pub fn zero_row(&self) -> usize {
        (-self.y_min / 2) as usize
    }

    pub fn row(&self, row: usize) -> &[BigUint] {
        &self.counts[row * self.width..(row + 1) * self.width]
    }

    pub fn mass_sum(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Counts of `x`, summed over `y`; index `col`.
    pub fn u_marginal(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.width];
        for row in self.counts.chunks(self.width) {
            for (o, c) in out.iter_mut().zip(row) {
                *o += c;
            }
        }
        out
    }

    /// Counts of `y`, summed over `x`; index `row`.
    pub fn v_marginal(&self) -> Vec<BigUint> {
        self.counts
            .chunks(self.width)
            .map(|row| row.iter().sum())
            .collect()
    }

    /// Number of balanced sequences: the mass of the row `y = 0`.
    pub fn zero_row_mass(&self) -> BigUint {
        self.row(self.zero_row()).iter().sum()
    }
}

/// Counts are written as decimal strings; they overflow every JSON number
/// type well before the convolution cap.
impl Serialize for JointPmf {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let counts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        let mut st = serializer.serialize_struct("JointPmf", 8)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("x_min", &self.x_min)?;
        st.serialize_field("y_min", &self.y_min)?;
        st.serialize_field("y_step", &2)?;
        st.serialize_field("width", &self.width)?;
        st.serialize_field("height", &self.height)?;
        st.serialize_field("total", &self.total.to_string())?;
        st.serialize_field("counts", &counts)?;
        st.end()
    }
}

fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(1000);
    match (num >> shift).to_f64().zip((den >> shift).to_f64()) {
        Some((a, b)) => a / b,
        None => f64::NAN,
    }
}

pub fn convolve_exact(die: &Die) -> Result<JointPmf, FourierError> {
    convolve_exact_capped(die, DEFAULT_CONVOLUTION_CAP)
}

/// n-fold convolution of the lattice law, exact.
///
/// Counts are accumulated modulo enough ~61-bit primes for their product to
/// exceed `nⁿ`, then rebuilt with Garner's algorithm. Each step adds `n`
/// shifted copies of the current table, one per atom.
pub fn convolve_exact_capped(die: &Die, cap: usize) -> Result<JointPmf, FourierError> {
    let n = die.n();
    if n > cap {
        return Err(FourierError::AboveCap { n, cap });
    }
    let law = lattice_law(die);
    let u_min = law.atoms.iter().map(|a| a.0).min().unwrap();
    let u_max = law.atoms.iter().map(|a| a.0).max().unwrap();
    let span = (u_max - u_min) as usize;
    let width = n * span + 1;
    let height = n * (n - 1) + 1;
    let cells = width * height;

    let bits = (n as f64 * (n as f64).log2()).ceil() as u64 + 1;
    let k = primes_for_bits(bits).ok_or(FourierError::TableTooLarge { cells })?;
    if cells.saturating_mul(k * 8 * 2) > TABLE_BYTES_LIMIT {
        return Err(FourierError::TableTooLarge { cells });
    }
    let garner = Garner::new(k);
    let shifts: Vec<usize> = law.atoms.iter().map(|a| (a.0 - u_min) as usize).collect();

    let residues: Vec<Vec<u64>> = garner
        .primes()
        .par_iter()
        .map(|&p| convolve_mod(&shifts, n, span, p))
        .collect();

    let counts: Vec<BigUint> = (0..cells)
        .into_par_iter()
        .map(|i| {
            let r: Vec<u64> = residues.iter().map(|t| t[i]).collect();
            garner.reconstruct(&r)
        })
        .collect();

    let total = BigUint::from(n).pow(n as u32);
    Ok(JointPmf {
        x_min: n as i64 * u_min,
        y_min: -((n * (n - 1)) as i64),
        width,
        height,
        counts,
        total,
        law,
    })
}

/// One prime's worth of the convolution. Row offset of atom `j` is `j`,
/// column offset is `shifts[j]`.
fn convolve_mod(shifts: &[usize], n: usize, span: usize, p: u64) -> Vec<u64> {
    let mut cur = vec![1u64];
    let (mut h, mut w) = (1usize, 1usize);
    for _ in 0..n {
        let (nh, nw) = (h + n - 1, w + span);
        let mut next = vec![0u64; nh * nw];
        for (dy, &dx) in shifts.iter().enumerate() {
            for r in 0..h {
                let src = &cur[r * w..(r + 1) * w];
                let start = (r + dy) * nw + dx;
                let dst = &mut next[start..start + w];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = add_mod(*d, s, p);
                }
            }
        }
        cur = next;
        h = nh;
        w = nw;
    }
    cur
}

/// `(P[U<0 | V=0], P[U=0 | V=0], P[U>0 | V=0])`. The first entry is the
/// fraction of balanced dice that A beats, the last the fraction that beat A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalBeat {
    pub below: BigRational,
    pub zero: BigRational,
    pub above: BigRational,
    /// Number of balanced sequences (the conditioning mass).
    pub balanced: BigUint,
}

impl ConditionalBeat {
    pub fn as_f64(&self) -> [f64; 3] {
        [&self.below, &self.zero, &self.above].map(|q| q.to_f64().unwrap_or(f64::NAN))
    }
}

pub fn conditional_beat_prob(die: &Die) -> Result<ConditionalBeat, FourierError> {
    Ok(conditional_from_pmf(&convolve_exact(die)?))
}

pub fn conditional_from_pmf(pmf: &JointPmf) -> ConditionalBeat {
    let row = pmf.row(pmf.zero_row());
    let (mut below, mut zero, mut above) = (BigUint::zero(), BigUint::zero(), BigUint::zero());
    for (col, c) in row.iter().enumerate() {
        match pmf.x_at(col).signum() {
            -1 => below += c,
            0 => zero += c,
            _ => above += c,
        }
    }
    let balanced: BigUint = &below + &zero + &above;
    let q = |num: BigUint| BigRational::new(BigInt::from(num), BigInt::from(balanced.clone()));
    ConditionalBeat {
        below: q(below),
        zero: q(zero),
        above: q(above),
        balanced,
    }
}

/// Result of comparing the exact law with a moment-matched discrete Gaussian.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GaussianFit {
    /// The covariance is singular (e.g. the standard die, where `U ≡ 0`).
    Degenerate {
        n: usize,
        det: f64,
    },
    Fitted(GaussianReport),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianReport {
    pub n: usize,
    /// Covariance of `(x, y)` in doubled units.
    pub cov_uu: f64,
    pub cov_uv: f64,
    pub cov_vv: f64,
    /// Support of the law sits on a sublattice with this many `x` steps per
    /// point along each row.
    pub lattice_step: i64,
    /// Normalization `c` in `G = c·exp(-½ zᵀΣ⁻¹z)`, fitted so that `G`
    /// carries the exact mass of the row `y = 0`.
    pub c: f64,
    /// `c` predicted by the local limit theorem, `2·step / (2π √det Σ)`.
    pub c_local_limit: f64,
    /// `P[V^{*n} = 0]`.
    pub zero_row_probability: f64,
    /// `max |P - G|` over the table.
    pub sup_error: f64,
    pub sup_error_normalized: f64,
    /// `max_x |P[(x,0)] - P[(-x,0)]|`.
    pub symmetry_defect: f64,
    pub symmetry_defect_normalized: f64,
    /// `|P - G| / P` at the most likely point.
    pub mode_relative_error: f64,
    /// `10^50 (log n)^7 / n^3`, for comparison with `sup_error`.
    pub sup_bound: f64,
    /// `P[(0,0)]` and its bound `10^17 (log n / n)^{5/2}`.
    pub origin_probability: f64,
    pub origin_bound: f64,
}

pub fn gaussian_compare(pmf: &JointPmf) -> GaussianFit {
    let n = pmf.n();
    let (uu, uv, vv) = pmf.law.second_moments();
    let det_exact = uu * vv - uv * uv;
    if uu == 0 || det_exact <= 0 || n < 2 {
        return GaussianFit::Degenerate {
            n,
            det: det_exact as f64,
        };
    }

    // Support ⊂ {(n·u₁ + r·(u₂-u₁) + step·t, row r)}: the atoms' differences
    // generate it, and the second atom is the only one needed to move a row.
    let atoms = &pmf.law.atoms;
    let (u1, du) = (atoms[0].0, atoms[1].0 - atoms[0].0);
    let step = atoms
        .iter()
        .enumerate()
        .map(|(j, a)| (a.0 - atoms[0].0 - j as i64 * du).abs())
        .fold(0i64, |g, v| g.gcd(&v))
        .max(1);
    let x_base = n as i64 * u1;
    let on_lattice = |x: i64, row: usize| (x - x_base - row as i64 * du).rem_euclid(step) == 0;

    let (suu, suv, svv, det) = (uu as f64, uv as f64, vv as f64, det_exact as f64);
    let quad = |x: f64, y: f64| (svv * x * x - 2.0 * suv * x * y + suu * y * y) / det;
    let shape = |x: i64, y: i64| (-0.5 * quad(x as f64, y as f64)).exp();

    let zero_row = pmf.zero_row();
    let zero_row_probability = ratio_f64(&pmf.zero_row_mass(), &pmf.total);
    let row_shape: f64 = (0..pmf.width)
        .map(|col| pmf.x_at(col))
        .filter(|&x| on_lattice(x, zero_row))
        .map(|x| shape(x, 0))
        .sum();
    let c = zero_row_probability / row_shape;

    let mut sup_error = 0.0f64;
    let mut mode = (0.0f64, 0.0f64);
    for row in 0..pmf.height {
        let y = pmf.y_at(row);
        for col in 0..pmf.width {
            let x = pmf.x_at(col);
            let p = ratio_f64(&pmf.counts[row * pmf.width + col], &pmf.total);
            let g = if on_lattice(x, row) {
                c * shape(x, y)
            } else {
                0.0
            };
            sup_error = sup_error.max((p - g).abs());
            if p > mode.0 {
                mode = (p, g);
            }
        }
    }

    let symmetry_defect = (0..pmf.width)
        .map(|col| pmf.x_at(col))
        .filter(|&x| x > 0)
        .map(|x| (pmf.probability(x, 0) - pmf.probability(-x, 0)).abs())
        .fold(0.0, f64::max);

    let nf = n as f64;
    let ln = nf.ln();
    GaussianFit::Fitted(GaussianReport {
        n,
        cov_uu: suu,
        cov_uv: suv,
        cov_vv: svv,
        lattice_step: step,
        c,
        c_local_limit: 2.0 * step as f64 / (2.0 * PI * det.sqrt()),
        zero_row_probability,
        sup_error,
        sup_error_normalized: sup_error / zero_row_probability,
        symmetry_defect,
        symmetry_defect_normalized: symmetry_defect / zero_row_probability,
        mode_relative_error: (mode.0 - mode.1).abs() / mode.0,
        sup_bound: 1e50 * ln.powi(7) / nf.powi(3),
        origin_probability: pmf.probability(0, 0),
        origin_bound: 1e17 * (ln / nf).powf(2.5),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxNormReport {
    pub n: usize,
    pub max_abs_g: f64,
    /// `2 √(n log n)`.
    pub bound: f64,
    pub passes: bool,
}

pub fn maxnorm_check(die: &Die) -> MaxNormReport {
    let nf = die.n() as f64;
    let bound = 2.0 * (nf * nf.ln()).sqrt();
    let max_abs_g = die.max_abs_g();
    MaxNormReport {
        n: die.n(),
        max_abs_g: max_abs_g.to_f64(),
        bound,
        passes: max_abs_g.to_f64() <= bound,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailReport {
    pub n: usize,
    pub c: f64,
    /// `2 C n √(log n)`, in the units of `U`.
    pub threshold: f64,
    /// Exact `P[|U^{*n}| ≥ threshold]` as `numerator / nⁿ`.
    pub tail_count: String,
    pub tail_probability: f64,
    /// `2 exp(-2C²)`.
    pub bound: f64,
    pub holds: bool,
    /// The inequality is only claimed for dice passing the max-norm check.
    pub maxnorm_passes: bool,
    pub status: CheckStatus,
}

pub fn tail_check(die: &Die, c: f64) -> Result<TailReport, FourierError> {
    Ok(tail_check_pmf(&convolve_exact(die)?, die, c))
}

pub fn tail_check_pmf(pmf: &JointPmf, die: &Die, c: f64) -> TailReport {
    let n = pmf.n();
    let nf = n as f64;
    let threshold = 2.0 * c * nf * nf.ln().sqrt();
    let doubled_threshold = 2.0 * threshold;
    let marginal = pmf.u_marginal();
    let tail: BigUint = marginal
        .iter()
        .enumerate()
        .filter(|(col, _)| pmf.x_at(*col).abs() as f64 >= doubled_threshold)
        .map(|(_, count)| count)
        .sum();
    let tail_probability = ratio_f64(&tail, &pmf.total);
    let bound = 2.0 * (-2.0 * c * c).exp();
    let holds = tail_probability <= bound;
    let maxnorm_passes = maxnorm_check(die).passes;
    let status = match (maxnorm_passes, holds) {
        (false, _) => CheckStatus::Vacuous,
        (true, true) => CheckStatus::Pass,
        (true, false) => CheckStatus::Fail,
    };
    TailReport {
        n,
        c,
        threshold,
        tail_count: tail.to_string(),
        tail_probability,
        bound,
        holds,
        maxnorm_passes,
        status,
    }
}
