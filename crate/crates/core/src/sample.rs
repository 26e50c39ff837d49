//! Seeded, portable pseudo-random sampling of rational classes.
//!
//! The generator is SplitMix64 with the usual constants; the derivation of
//! classes from the raw stream is fixed and documented in the README so a
//! verify run can be reproduced bit-for-bit elsewhere. Nothing here is
//! cryptographic; determinism across platforms is the only requirement.

use crate::lattice::{CohomClass, IntersectionLattice};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in [lo, hi] via modulo; the tiny bias is irrelevant,
    /// reproducibility is what matters.
    pub fn next_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// One random coefficient: numerator in [-9, 9], denominator in [1, 4].
pub fn random_coeff(rng: &mut SplitMix64) -> Rational {
    let num = rng.next_in(-9, 9);
    let den = rng.next_in(1, 4);
    Rational::new(num, den).expect("positive denominator")
}

/// A random rational class over the lattice basis, one coefficient per
/// basis element in order.
pub fn random_class(rng: &mut SplitMix64, lattice: &IntersectionLattice) -> CohomClass {
    let coeffs = (0..lattice.rank()).map(|_| random_coeff(rng)).collect();
    CohomClass::new(lattice, coeffs).expect("coefficient count matches rank")
}

/// Rejection-samples until `accept` holds. The rejection loop is part of the
/// documented stream: retries consume generator output deterministically.
pub fn random_class_where(
    rng: &mut SplitMix64,
    lattice: &IntersectionLattice,
    mut accept: impl FnMut(&CohomClass) -> bool,
) -> CohomClass {
    loop {
        let c = random_class(rng, lattice);
        if accept(&c) {
            return c;
        }
    }
}

/// A rational drawn as k/1000 with k in [1, 999]; used to pick a point in
/// the open unit interval.
pub fn random_unit_fraction(rng: &mut SplitMix64) -> Rational {
    Rational::new(rng.next_in(1, 999), 1000).expect("fixed denominator")
}

/// Random unimodular integer matrix built as a product of `2n` elementary
/// moves: row transvections with coefficient in [-3, 3], swaps, negations.
pub fn random_unimodular(rng: &mut SplitMix64, n: usize, moves: usize) -> Vec<Vec<BigInt>> {
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for _ in 0..moves.max(2 * n) {
        match rng.next_u64() % 3 {
            0 => {
                let i = rng.next_in(0, n as i64 - 1) as usize;
                let j = rng.next_in(0, n as i64 - 1) as usize;
                if i != j {
                    let k = BigInt::from(rng.next_in(-3, 3));
                    let src = u[j].clone();
                    for (dst, s) in u[i].iter_mut().zip(&src) {
                        *dst += s * &k;
                    }
                }
            }
            1 => {
                let i = rng.next_in(0, n as i64 - 1) as usize;
                let j = rng.next_in(0, n as i64 - 1) as usize;
                if i != j {
                    u.swap(i, j);
                }
            }
            _ => {
                let i = rng.next_in(0, n as i64 - 1) as usize;
                for v in u[i].iter_mut() {
                    *v = -v.clone();
                }
            }
        }
    }
    u
}
