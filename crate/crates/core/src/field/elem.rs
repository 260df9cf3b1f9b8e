use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::tower::FieldTower;
use crate::scalar::{add_q, format_rational, mul_q, sub_q, Field, FieldError, Rational, RefOps};

/// An element of a number-field tower.
///
/// Canonical form: an element whose value is rational is always stored as
/// `Rational`, independent of any tower; otherwise it carries its tower and the
/// full coordinate vector. Equality is therefore structural.
#[derive(Clone)]
pub enum FieldElem {
    Rational(Rational),
    Algebraic(Arc<FieldTower>, Vec<Rational>),
}

impl FieldElem {
    pub fn rational(q: Rational) -> Self {
        FieldElem::Rational(q)
    }

    /// Builds an element from flat coordinates (length must equal the tower degree).
    pub fn from_coords(tower: &Arc<FieldTower>, coords: Vec<Rational>) -> Result<Self, FieldError> {
        if coords.len() != tower.degree() {
            return Err(FieldError::InvalidMinPoly(format!(
                "expected {} coordinates, got {}",
                tower.degree(),
                coords.len()
            )));
        }
        Ok(Self::normalize(tower, coords))
    }

    fn normalize(tower: &Arc<FieldTower>, mut coords: Vec<Rational>) -> Self {
        if coords.iter().skip(1).all(Zero::is_zero) {
            FieldElem::Rational(std::mem::take(&mut coords[0]))
        } else {
            FieldElem::Algebraic(tower.clone(), coords)
        }
    }

    /// The tower this element is tied to; `None` for rational values.
    pub fn tower(&self) -> Option<&Arc<FieldTower>> {
        match self {
            FieldElem::Rational(_) => None,
            FieldElem::Algebraic(t, _) => Some(t),
        }
    }

    /// Flat coordinates with respect to `tower`.
    pub fn coords_in(&self, tower: &FieldTower) -> Result<Vec<Rational>, FieldError> {
        match self {
            FieldElem::Rational(q) => {
                let mut v = vec![Rational::zero(); tower.degree()];
                v[0] = q.clone();
                Ok(v)
            }
            FieldElem::Algebraic(t, c) => {
                if **t == *tower {
                    Ok(c.clone())
                } else {
                    Err(FieldError::TowerMismatch)
                }
            }
        }
    }

    fn binary(
        &self,
        other: &Self,
        on_rational: impl Fn(&Rational, &Rational) -> Rational,
        on_coords: impl Fn(&Arc<FieldTower>, &[Rational], &[Rational]) -> Vec<Rational>,
    ) -> Result<Self, FieldError> {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => Ok(FieldElem::Rational(on_rational(a, b))),
            (FieldElem::Algebraic(t, a), FieldElem::Rational(_)) => {
                let b = other.coords_in(t)?;
                Ok(Self::normalize(t, on_coords(t, a, &b)))
            }
            (FieldElem::Rational(_), FieldElem::Algebraic(t, b)) => {
                let a = self.coords_in(t)?;
                Ok(Self::normalize(t, on_coords(t, &a, b)))
            }
            (FieldElem::Algebraic(t, a), FieldElem::Algebraic(u, b)) => {
                if !Arc::ptr_eq(t, u) && **t != **u {
                    return Err(FieldError::TowerMismatch);
                }
                Ok(Self::normalize(t, on_coords(t, a, b)))
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.binary(other, add_q, |_, a, b| a.iter().zip(b).map(|(x, y)| add_q(x, y)).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.binary(other, sub_q, |_, a, b| a.iter().zip(b).map(|(x, y)| sub_q(x, y)).collect())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        match (self, other) {
            (FieldElem::Rational(q), FieldElem::Algebraic(t, c))
            | (FieldElem::Algebraic(t, c), FieldElem::Rational(q)) => {
                if q.is_zero() {
                    return Ok(FieldElem::zero());
                }
                Ok(FieldElem::Algebraic(t.clone(), c.iter().map(|x| mul_q(x, q)).collect()))
            }
            _ => self.binary(other, mul_q, |t, a, b| t.mul_coords(a, b)),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Whether this element can be used alongside elements of `tower`.
    pub fn lives_in(&self, tower: &FieldTower) -> bool {
        self.tower().is_none_or(|t| **t == *tower)
    }
}

impl<'a> RefOps<FieldElem> for &'a FieldElem {}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => a == b,
            (FieldElem::Algebraic(t, a), FieldElem::Algebraic(u, b)) => a == b && (Arc::ptr_eq(t, u) || **t == **u),
            _ => false,
        }
    }
}

impl Eq for FieldElem {}

fn expect<T>(r: Result<T, FieldError>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("field arithmetic failed: {e}"),
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        expect(self.checked_add(rhs))
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        expect(self.checked_sub(rhs))
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        expect(self.checked_mul(rhs))
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(q) => FieldElem::Rational(-q),
            FieldElem::Algebraic(t, c) => FieldElem::Algebraic(t.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        &self + &rhs
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        &self - &rhs
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        &self * &rhs
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl<'a> AddAssign<&'a FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &'a FieldElem) {
        match (&mut *self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => *a = add_q(a, b),
            _ => *self = &*self + rhs,
        }
    }
}

impl<'a> SubAssign<&'a FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &'a FieldElem) {
        match (&mut *self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => *a = sub_q(a, b),
            _ => *self = &*self - rhs,
        }
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        FieldElem::Rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, FieldElem::Rational(q) if q.is_zero())
    }
}

impl One for FieldElem {
    fn one() -> Self {
        FieldElem::Rational(Rational::one())
    }

    fn is_one(&self) -> bool {
        matches!(self, FieldElem::Rational(q) if q.is_one())
    }
}

impl Field for FieldElem {
    fn try_inv(&self) -> Result<Self, FieldError> {
        match self {
            FieldElem::Rational(q) => Ok(FieldElem::Rational(q.try_inv()?)),
            FieldElem::Algebraic(t, c) => Ok(Self::normalize(t, t.inv_coords(c)?)),
        }
    }

    fn from_rational(q: Rational) -> Self {
        FieldElem::Rational(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        match self {
            FieldElem::Rational(q) => Some(q.clone()),
            FieldElem::Algebraic(..) => None,
        }
    }

    fn compatible(&self, other: &Self) -> bool {
        match (self.tower(), other.tower()) {
            (Some(t), Some(u)) => Arc::ptr_eq(t, u) || **t == **u,
            _ => true,
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{}", format_rational(q)),
            FieldElem::Algebraic(t, c) => {
                let d1 = t.level_degrees().first().copied().unwrap_or(1);
                let mut first = true;
                for (idx, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let (i, j) = (idx % d1, idx / d1);
                    write!(f, "{}", format_rational(x))?;
                    match i {
                        0 => {}
                        1 => write!(f, "*a")?,
                        _ => write!(f, "*a^{i}")?,
                    }
                    match j {
                        0 => {}
                        1 => write!(f, "*b")?,
                        _ => write!(f, "*b^{j}")?,
                    }
                }
                Ok(())
            }
        }
    }
}
