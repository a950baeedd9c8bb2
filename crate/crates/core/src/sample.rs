//! Seeded random generators for the verification sweeps.
//!
//! All sampling uses an explicitly seeded ChaCha8 stream, so identical seeds
//! reproduce identical inputs across runs and platforms. Quotient elements
//! are uniform combinations of 1–3 distinct basis monomials of degree ≤ 3
//! and weight ≤ 4 with coefficients from {−2, −1, 1, 2}; operators put such
//! elements on 1–3 distinct ∂-orders ≤ 3.

use rand::seq::index;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diffop::{DiffOperator, OperatorCoefficient};
use crate::diffpoly::{enumerate_alpha, enumerate_monomials, DiffMonomial, DiffPolynomial};
use crate::rational::{rat, Rational};

/// The reproducible RNG used by every sweep.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const COEFFS: [i64; 4] = [-2, -1, 1, 2];

/// The α₂-monomials of degree ≤ 3 and weight ≤ 4 — the support pool of the
/// element sampler. Every combination of these is already a nonzero normal
/// form at m = 2.
pub fn alpha2_support_pool() -> Vec<DiffMonomial> {
    let mut out = Vec::new();
    for d in 1..=3 {
        for w in 0..=4 {
            out.extend(enumerate_alpha(2, d, w).expect("m = 2 is valid"));
        }
    }
    out
}

fn combination<R: Rng>(rng: &mut R, pool: &[DiffMonomial], max_terms: usize) -> DiffPolynomial {
    let count = rng.random_range(1..=max_terms.min(pool.len()));
    let picks = index::sample(rng, pool.len(), count);
    DiffPolynomial::from_terms(picks.iter().map(|i| {
        let coeff = COEFFS[rng.random_range(0..COEFFS.len())];
        (pool[i].clone(), rat(coeff))
    }))
}

/// A random nonzero element of the quotient at m = 2, already in normal form.
pub fn sample_quotient_element<R: Rng>(rng: &mut R) -> DiffPolynomial {
    combination(rng, &alpha2_support_pool(), 3)
}

/// A random nonzero scalar-free operator with ∂-degree ≤ 3, coefficient
/// weight ≤ 4.
pub fn sample_operator<R: Rng>(rng: &mut R) -> DiffOperator {
    let order_count = rng.random_range(1..=3usize);
    let orders = index::sample(rng, 4, order_count);
    DiffOperator::from_terms(orders.iter().map(|order| {
        let poly = sample_quotient_element(rng);
        (
            order as u32,
            OperatorCoefficient::from_poly(&poly).expect("pool elements are constant-free"),
        )
    }))
}

/// A random polynomial with zero constant term, *not* reduced and not
/// restricted to basis monomials: 1–4 distinct monomials of degree ≤ 3 and
/// weight ≤ 5 with coefficients from {−2, −1, 1, 2}. May lie in the ideal.
pub fn sample_polynomial<R: Rng>(rng: &mut R) -> DiffPolynomial {
    let mut pool = Vec::new();
    for d in 1..=3 {
        for w in 0..=5 {
            pool.extend(enumerate_monomials(d, w));
        }
    }
    let count = rng.random_range(1..=4usize);
    let picks = index::sample(rng, pool.len(), count);
    DiffPolynomial::from_terms(picks.iter().map(|i| {
        let coeff = COEFFS[rng.random_range(0..COEFFS.len())];
        (pool[i].clone(), rat(coeff))
    }))
}

/// A random rational with small numerator and denominator, never zero.
pub fn sample_scalar<R: Rng>(rng: &mut R) -> Rational {
    let num = COEFFS[rng.random_range(0..COEFFS.len())];
    let den = rng.random_range(1..=3i64);
    crate::rational::ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_is_the_expected_nine() {
        let pool = alpha2_support_pool();
        assert_eq!(pool.len(), 9);
        assert!(pool.iter().all(|m| m.is_alpha(2).unwrap()));
        assert!(pool.iter().all(|m| m.degree() <= 2 && m.weight() <= 4));
    }

    #[test]
    fn sampling_is_reproducible() {
        let mut a = seeded_rng(7);
        let mut b = seeded_rng(7);
        for _ in 0..10 {
            assert_eq!(sample_quotient_element(&mut a), sample_quotient_element(&mut b));
            assert_eq!(sample_operator(&mut a), sample_operator(&mut b));
            assert_eq!(sample_polynomial(&mut a), sample_polynomial(&mut b));
        }
    }

    #[test]
    fn samples_are_nonzero_and_scalar_free() {
        let mut rng = seeded_rng(1);
        for _ in 0..50 {
            assert!(!sample_quotient_element(&mut rng).is_zero());
            let op = sample_operator(&mut rng);
            assert!(!op.is_zero());
            assert!(op.is_scalar_free());
            assert!(op.degree().unwrap() <= 3);
            assert!(op.max_coefficient_weight().unwrap() <= 4);
        }
    }
}
