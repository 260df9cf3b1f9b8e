use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::FamilyError;
use crate::scalar::Rational;
use crate::unipoly::UniPoly;

/// Which coefficient polynomial in α to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaKind {
    /// Coefficient of x^{s+2q}y^s + x^s y^{s+2q} in g_{q+s,0}.
    Example9 { q: u64, s: u64 },
    /// Coefficient of x^{4v−1}y^{2v−1} + x^{2v−1}y^{4v−1} in g_{3v−1,v}.
    Example10 { v: u64 },
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The coefficient polynomial whose roots α₀ add a large exponent to the ticket.
pub fn alpha_polynomial(kind: AlphaKind) -> Result<UniPoly<Rational>, FamilyError> {
    // Σ_a n!/(a!(a+shift)!(top−2a)!) α^{top−2a}
    let (n, shift, top, amax) = match kind {
        AlphaKind::Example9 { q, s } => {
            if q < 3 || s < 2 || s > q - 1 {
                return Err(FamilyError::ParamOutOfRange(format!("need q ≥ 3 and 2 ≤ s ≤ q−1, got q={q}, s={s}")));
            }
            (q + s, q, s, s / 2)
        }
        AlphaKind::Example10 { v } => {
            if v < 2 {
                return Err(FamilyError::ParamOutOfRange(format!("need v ≥ 2, got {v}")));
            }
            (3 * v - 1, v, 2 * v - 1, v - 1)
        }
    };
    let mut coeffs = vec![Rational::zero(); top as usize + 1];
    let nf = factorial(n);
    for a in 0..=amax {
        let denom = factorial(a) * factorial(a + shift) * factorial(top - 2 * a);
        coeffs[(top - 2 * a) as usize] = Rational::new(nf.clone(), denom);
    }
    Ok(UniPoly::new(coeffs))
}

/// Divisors of a, which form the ticket of the monomials-plus-binomial family.
pub fn divisor_ticket(a: u64) -> BTreeSet<u64> {
    (1..=a).filter(|d| a % d == 0).collect()
}

/// Closed-form ticket of the family {x^a + ζ_q^k y^a} ∪ {degree-a monomials},
/// scanned over [1, qa].
pub fn molluzzo_ticket(a: u64, q: u64) -> BTreeSet<u64> {
    (1..=q * a).filter(|&m| molluzzo_contains(a, q, m)).collect()
}

/// Whether some residue class k has every element of {ia : i ≡ k (mod q), 0 ≤ i ≤ m}
/// divisible by m.
pub fn molluzzo_contains(a: u64, q: u64, m: u64) -> bool {
    (0..q).any(|k| (k..=m).step_by(q as usize).all(|i| (i * a) % m == 0))
}

/// Positive integers not of the form a(r−1) + br with a, b ≥ 0.
pub fn frobenius_gaps(r: u64) -> BTreeSet<u64> {
    assert!(r >= 2, "need r ≥ 2");
    let limit = r * (r - 1);
    let mut representable = vec![false; limit as usize + 1];
    representable[0] = true;
    for n in 1..=limit as usize {
        representable[n] = (n >= r as usize - 1 && representable[n - (r as usize - 1)])
            || (n >= r as usize && representable[n - r as usize]);
    }
    (1..=limit).filter(|&n| !representable[n as usize]).collect()
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The largest m with r > C(n+m−1, n−1).
pub fn linear_forced_limit(r: u64, n: u64) -> u64 {
    let mut m = 0;
    while (r as u128) > binomial(n + m, n - 1) {
        m += 1;
    }
    m
}
