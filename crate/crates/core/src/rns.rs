//! Residue number system used by the exact lattice convolution.
//!
//! Counts are tracked modulo several primes just below 2^61 and rebuilt as
//! big integers with Garner's mixed-radix reconstruction. Sums of two
//! residues stay below 2^62, so additions never overflow a `u64`.

use num_bigint::BigUint;

pub(crate) const PRIMES: [u64; 16] = [
    0x1fff_ffff_ffff_ffff,
    0x1fff_ffff_ffff_ffe1,
    0x1fff_ffff_ffff_ffd3,
    0x1fff_ffff_ffff_ff1b,
    0x1fff_ffff_ffff_fefd,
    0x1fff_ffff_ffff_fee5,
    0x1fff_ffff_ffff_fead,
    0x1fff_ffff_ffff_fe79,
    0x1fff_ffff_ffff_fe6d,
    0x1fff_ffff_ffff_fe2f,
    0x1fff_ffff_ffff_fded,
    0x1fff_ffff_ffff_fdbd,
    0x1fff_ffff_ffff_fd5d,
    0x1fff_ffff_ffff_fd09,
    0x1fff_ffff_ffff_fce1,
    0x1fff_ffff_ffff_fccd,
];

/// Each prime contributes a little over 60 bits.
const BITS_PER_PRIME: u64 = 60;

/// Number of primes whose product exceeds `2^bits`, or `None` if the
/// table is too short.
pub(crate) fn primes_for_bits(bits: u64) -> Option<usize> {
    let k = bits / BITS_PER_PRIME + 1;
    (k as usize <= PRIMES.len()).then_some(k as usize)
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Precomputed Garner constants for the first `k` primes.
pub(crate) struct Garner {
    primes: Vec<u64>,
    /// `inv[i][j]` = `p_j^{-1} mod p_i` for `j < i`.
    inv: Vec<Vec<u64>>,
}

impl Garner {
    pub(crate) fn new(k: usize) -> Self {
        let primes = PRIMES[..k].to_vec();
        let inv = (0..k)
            .map(|i| {
                (0..i)
                    .map(|j| pow_mod(primes[j] % primes[i], primes[i] - 2, primes[i]))
                    .collect()
            })
            .collect();
        Garner { primes, inv }
    }

    pub(crate) fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Mixed-radix digits `d` with `x = d_0 + d_1 p_0 + d_2 p_0 p_1 + ...`.
    fn digits(&self, residues: &[u64]) -> Vec<u64> {
        let k = self.primes.len();
        debug_assert_eq!(residues.len(), k);
        let mut d = Vec::with_capacity(k);
        for (i, (&p, &r)) in self.primes.iter().zip(residues).enumerate() {
            let mut x = r % p;
            for (&dj, &inv) in d.iter().zip(&self.inv[i]) {
                let diff = (x + p - dj % p) % p;
                x = mul_mod(diff, inv, p);
            }
            d.push(x);
        }
        d
    }

    /// The unique integer in `[0, Π p)` with the given residues.
    pub(crate) fn reconstruct(&self, residues: &[u64]) -> BigUint {
        if residues.iter().all(|&r| r == 0) {
            return BigUint::default();
        }
        let d = self.digits(residues);
        let mut acc = BigUint::from(*d.last().unwrap());
        for i in (0..d.len() - 1).rev() {
            acc *= self.primes[i];
            acc += d[i];
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, ToPrimitive};

    #[test]
    fn primes_are_prime_and_fit() {
        for &p in &PRIMES {
            assert!(p < 1 << 61);
            // Fermat check with a few bases is enough for a fixed table.
            for base in [2u64, 3, 5, 7, 11, 13] {
                assert_eq!(pow_mod(base, p - 1, p), 1);
            }
        }
    }

    #[test]
    fn reconstruct_round_trips() {
        let g = Garner::new(4);
        let mut x = BigUint::one();
        for step in 0..200u64 {
            x = &x * 40u32 + step;
            if x.bits() >= 240 {
                x = BigUint::from(step + 17);
            }
            let residues: Vec<u64> = g
                .primes()
                .iter()
                .map(|&p| (&x % p).to_u64().unwrap())
                .collect();
            assert_eq!(g.reconstruct(&residues), x);
        }
    }

    #[test]
    fn prime_count_covers_bits() {
        let k = primes_for_bits(213).unwrap();
        let product: BigUint = PRIMES[..k].iter().map(|&p| BigUint::from(p)).product();
        assert!(product.bits() > 213);
        assert!(primes_for_bits(60 * 16 + 5).is_none());
    }
}
