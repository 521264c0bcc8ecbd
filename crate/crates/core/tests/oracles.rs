//! Cross-module agreement: the score-sum reduction, the exact convolution and
//! the enumeration census must tell the same story.

use dice_core::enumeration::{count_balanced, exact_pairwise_stats};
use dice_core::fourier::{
    char_fn, conditional_beat_prob, convolve_exact, lattice_law, tail_check_pmf,
};
use dice_core::samplers::{balanced_counts, DiceSource, RngStream, DEFAULT_EXACT_CAP};
use dice_core::{Die, Model, Verdict};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn sample(n: usize, seed: u64, count: usize) -> Vec<Die> {
    DiceSource::default_for(Model::BalancedSequence)
        .sample_many(n, count, RngStream::new(seed, n as u64))
        .unwrap()
}

#[test]
fn reduction_holds_on_random_pairs() {
    for n in [50usize, 100] {
        let dice = sample(n, 1, 20_000);
        for pair in dice.chunks(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let fast = a.beats(b).unwrap();
            assert_eq!(fast, a.beats_reference(b).unwrap());
            assert_eq!(fast.total(), (n * n) as u64);
            let back = b.beats(a).unwrap();
            assert_eq!(
                (back.greater, back.less, back.verdict),
                (fast.less, fast.greater, fast.verdict.flip())
            );
            let (ab, ba) = (a.score_sum(b).unwrap(), b.score_sum(a).unwrap());
            assert_eq!(ab.signum(), -ba.signum());
            let expected = match ab.signum() {
                1 => Verdict::BWins,
                -1 => Verdict::AWins,
                _ => Verdict::Tie,
            };
            assert_eq!(fast.verdict, expected);
            let dual = b.complement().beats(&a.complement()).unwrap();
            assert_eq!(dual.verdict, fast.verdict);
        }
    }
}

/// Direct count over every balanced opponent.
fn brute_conditional(a: &Die) -> [BigRational; 3] {
    let n = a.n();
    let counts = balanced_counts(n, DEFAULT_EXACT_CAP).unwrap();
    let total = counts.total().clone();
    let mut tally = [BigUint::zero(), BigUint::zero(), BigUint::zero()];
    let mut rank = BigUint::zero();
    while rank < total {
        let b = counts.unrank(rank.clone());
        let slot = match a.beats(&b).unwrap().verdict {
            Verdict::AWins => 0,
            Verdict::Tie => 1,
            Verdict::BWins => 2,
        };
        tally[slot] += 1u32;
        rank += 1u32;
    }
    tally.map(|c| BigRational::new(BigInt::from(c), BigInt::from(total.clone())))
}

#[test]
fn conditional_matches_direct_count_at_seven_sides() {
    for a in sample(7, 2, 6) {
        let cb = conditional_beat_prob(&a).unwrap();
        assert_eq!([cb.below, cb.zero, cb.above], brute_conditional(&a), "{a}");
    }
}

#[test]
fn conditional_matches_census_for_multiset_weights() {
    // Under the multiset model the census weights classes equally, so the
    // convolution (which weights sequences) must differ unless n is tiny.
    let census = exact_pairwise_stats(5, Model::MultisetCanonical).unwrap();
    let balanced = exact_pairwise_stats(5, Model::BalancedSequence).unwrap();
    let mut differs = false;
    for (i, class) in census.classes.iter().enumerate() {
        let cb = conditional_beat_prob(class).unwrap();
        assert_eq!(cb.below, balanced.per_class[i].beats);
        differs |= cb.below != census.per_class[i].beats;
    }
    assert!(differs);
}

fn arb_die(max_n: usize) -> impl Strategy<Value = Die> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| sample(n, seed, 1).pop().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_law_has_zero_mean(die in arb_die(60)) {
        let law = lattice_law(&die);
        prop_assert_eq!(law.atoms.len(), die.n());
        prop_assert_eq!((law.sum_u(), law.sum_v()), (0, 0));
        for (j, &(u, _)) in law.atoms.iter().enumerate() {
            prop_assert_eq!(u, die.g_of(j as i64 + 1).unwrap().doubled());
        }
    }

    #[test]
    fn joint_pmf_invariants(die in arb_die(14)) {
        let n = die.n();
        let pmf = convolve_exact(&die).unwrap();
        prop_assert_eq!(pmf.mass_sum(), BigUint::from(n).pow(n as u32));
        prop_assert_eq!(pmf.zero_row_mass(), count_balanced(n));
        let mut mean = BigInt::zero();
        for (col, c) in pmf.u_marginal().into_iter().enumerate() {
            mean += BigInt::from(pmf.x_at(col)) * BigInt::from(c);
        }
        prop_assert!(mean.is_zero());
        let cb = dice_core::fourier::conditional_from_pmf(&pmf);
        prop_assert_eq!(cb.below + cb.zero + cb.above, BigRational::from_integer(1.into()));
    }

    #[test]
    fn char_fn_is_bounded_and_hermitian(die in arb_die(80), a in -0.5f64..0.5, b in -0.5f64..0.5) {
        let z = char_fn(&die, a, b);
        prop_assert!(z.norm() <= 1.0 + 1e-12);
        prop_assert!((char_fn(&die, -a, -b) - z.conj()).norm() <= 1e-12);
        prop_assert!((char_fn(&die, 0.0, 0.0).re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn tail_mass_is_monotone_in_c(die in arb_die(12)) {
        let pmf = convolve_exact(&die).unwrap();
        let mut last = f64::INFINITY;
        for c in [0.05, 0.25, 0.5, 1.0, 2.0] {
            let t = tail_check_pmf(&pmf, &die, c);
            prop_assert!(t.tail_probability <= last);
            last = t.tail_probability;
        }
    }
}
