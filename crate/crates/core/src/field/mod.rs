//! Exact coefficient fields: ℚ, cyclotomic fields and towers of at most two
//! simple extensions.

mod cyclotomic;
mod elem;
mod tower;

pub use cyclotomic::cyclotomic_polynomial;
pub use elem::FieldElem;
pub use tower::FieldTower;

use std::sync::Arc;

use crate::scalar::{FieldError, Rational};

pub fn build_cyclotomic(n: u64) -> Arc<FieldTower> {
    FieldTower::cyclotomic(n)
}

pub fn extend(base: &Arc<FieldTower>, minpoly: &[FieldElem]) -> Result<Arc<FieldTower>, FieldError> {
    FieldTower::extend(base, minpoly)
}

/// Elementwise constructor from integer coordinates, mainly for tests and generators.
pub fn elem(tower: &Arc<FieldTower>, coords: &[i64]) -> FieldElem {
    let coords: Vec<Rational> = coords.iter().map(|&c| crate::scalar::int(c)).collect();
    FieldElem::from_coords(tower, coords).expect("coordinate count must match tower degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational, Field};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    #[test]
    fn gaussian_integers() {
        let k = build_cyclotomic(4);
        let i = k.generator(0);
        assert_eq!(&i * &i, FieldElem::from_int(-1));
        let one_plus_i = &FieldElem::one() + &i;
        let inv = one_plus_i.try_inv().unwrap();
        let expected = &FieldElem::rational(rational(1, 2)) - &(&FieldElem::rational(rational(1, 2)) * &i);
        assert_eq!(inv, expected);
    }

    #[test]
    fn sqrt2_inside_q_zeta8() {
        let k = build_cyclotomic(8);
        let z = k.generator(0);
        let s = &z + &z.pow(7);
        assert_eq!(&s * &s, FieldElem::from_int(2));
    }

    #[test]
    fn additive_identity() {
        let k = build_cyclotomic(5);
        let a = elem(&k, &[1, -2, 3, 4]);
        assert_eq!(&a + &FieldElem::zero(), a);
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(FieldElem::rational(rational(5, 3)).try_inv().unwrap(), FieldElem::rational(rational(3, 5)));
    }

    #[test]
    fn reducible_minpoly_reports_zero_divisor() {
        // θ² − θ = θ(θ − 1)
        let k =
            extend(&FieldTower::rationals(), &[FieldElem::zero(), FieldElem::from_int(-1), FieldElem::one()]).unwrap();
        let theta = k.generator(0);
        assert_eq!(theta.try_inv(), Err(FieldError::ZeroDivisor));
        assert_eq!(FieldElem::zero().try_inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn tower_mismatch() {
        let a = build_cyclotomic(4).generator(0);
        let b = build_cyclotomic(3).generator(0);
        assert_eq!(a.checked_add(&b), Err(FieldError::TowerMismatch));
    }

    #[test]
    fn cyclotomic_towers() {
        assert_eq!(build_cyclotomic(4).degree(), 2);
        assert_eq!(build_cyclotomic(12).degree(), 4);
        let q1 = build_cyclotomic(1);
        assert_eq!(q1.degree(), 1);
        assert_eq!(q1.generator(0), FieldElem::one());
    }

    #[test]
    fn depth_two_extensions() {
        let q = FieldTower::rationals();
        let k = FieldTower::adjoin_sqrt(&q, int(-2)).unwrap();
        let a = k.generator(0);
        assert_eq!(&a * &a, FieldElem::from_int(-2));

        let half = FieldTower::adjoin_sqrt(&q, rational(-1, 2)).unwrap();
        let b = half.generator(0);
        assert_eq!(&b * &b, FieldElem::rational(rational(-1, 2)));

        let omega = build_cyclotomic(3);
        let k2 = extend(
            &omega,
            &[FieldElem::from_int(3), FieldElem::zero(), FieldElem::from_int(5), FieldElem::zero(), FieldElem::one()],
        )
        .unwrap();
        assert_eq!(k2.depth(), 2);
        assert_eq!(k2.degree(), 8);
        let al = k2.generator(1);
        let a2 = &al * &al;
        let val = &(&(&a2 * &a2) + &(&FieldElem::from_int(5) * &a2)) + &FieldElem::from_int(3);
        assert!(val.is_zero());
        assert_eq!(
            extend(&k2, &[FieldElem::one(), FieldElem::zero(), FieldElem::one()]),
            Err(FieldError::TowerDepthExceeded)
        );
    }

    #[test]
    fn roots_of_unity() {
        let k = build_cyclotomic(20);
        for q in [1u64, 2, 4, 5, 10, 20] {
            let z = k.root_of_unity(q).unwrap();
            assert!(z.pow(q as u32).is_one(), "q = {q}");
            for d in 1..q {
                assert!(!z.pow(d as u32).is_one(), "q = {q} not primitive");
            }
        }
        let w = build_cyclotomic(3).root_of_unity(6).unwrap();
        assert!(w.pow(6).is_one());
        assert!(!w.pow(3).is_one() && !w.pow(2).is_one());
        assert_eq!(build_cyclotomic(8).root_of_unity(3), Err(FieldError::MissingRoot(3)));
    }

    fn towers() -> Vec<Arc<FieldTower>> {
        let mut ts: Vec<_> = [3u64, 4, 5, 8, 12, 20].iter().map(|&n| build_cyclotomic(n)).collect();
        ts.push(FieldTower::rationals());
        ts.push(
            extend(
                &build_cyclotomic(3),
                &[
                    FieldElem::from_int(3),
                    FieldElem::zero(),
                    FieldElem::from_int(5),
                    FieldElem::zero(),
                    FieldElem::one(),
                ],
            )
            .unwrap(),
        );
        ts
    }

    fn random_elem(t: &Arc<FieldTower>, seed: &[i64]) -> FieldElem {
        let coords = (0..t.degree()).map(|i| rational(seed[i % seed.len()] - (i as i64), 1 + (i as i64 % 3))).collect();
        FieldElem::from_coords(t, coords).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn field_axioms(ti in 0usize..8, a in proptest::collection::vec(-9i64..9, 8), b in proptest::collection::vec(-9i64..9, 8), c in proptest::collection::vec(-9i64..9, 8)) {
            let t = &towers()[ti];
            let (x, y, z) = (random_elem(t, &a), random_elem(t, &b), random_elem(t, &c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert!((&x * &x.try_inv().unwrap()).is_one());
            }
        }
    }
}
