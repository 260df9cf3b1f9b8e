use std::collections::HashMap;

use crate::scalar::{int, Rational};
use crate::unipoly::UniPoly;

/// The n-th cyclotomic polynomial, obtained by dividing x^n - 1 by Φ_d for
/// every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u64) -> UniPoly<Rational> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut HashMap<u64, UniPoly<Rational>>) -> UniPoly<Rational> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = UniPoly::<Rational>::monomial(int(1), n as usize);
    num = &num - &UniPoly::<Rational>::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let phi_d = cyclotomic_memo(d, memo);
        num = num.div_exact(&phi_d).expect("cyclotomic factor must divide x^n - 1");
    }
    memo.insert(n, num.clone());
    num
}
