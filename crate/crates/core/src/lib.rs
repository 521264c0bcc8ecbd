//! Random n-sided dice and the machinery for studying how often they are
//! intransitive.
//!
//! An n-sided die is a sequence of n integers in `[1, n]` summing to
//! `n(n+1)/2`. Two random models are supported: uniform over ordered
//! sequences ([`Model::BalancedSequence`]) and uniform over multisets
//! ([`Model::MultisetCanonical`]).
//!
//! * [`die`]: the [`Die`] type, the beats relation, and the `f_A` / `g_A`
//!   score statistics (all in doubled units so every identity is exact).
//! * [`samplers`]: seeded, stream-splittable samplers for both models.
//! * [`enumeration`]: exhaustive small-n oracles with exact rational answers.
//! * [`tournament`]: the beats digraph over a set of dice and its triple,
//!   degree and pattern statistics.
//! * [`fourier`]: the lattice law of `(g_A(j), j - (n+1)/2)`, its
//!   characteristic function, exact n-fold convolution and the
//!   discrete-Gaussian comparison.

pub mod die;
pub mod enumeration;
pub mod fourier;
mod rns;
pub mod samplers;
pub mod tournament;

pub use die::{BeatOutcome, Die, DieError, HalfInt, Model, Verdict};
pub use samplers::{RngStream, SamplerError, SamplerStats};
