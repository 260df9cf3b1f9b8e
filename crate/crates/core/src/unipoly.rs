//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Field, FieldError, RefOps};

/// Coefficients low-to-high; the zero polynomial has no coefficients and a
/// nonzero polynomial never has a zero leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UniPoly<K>
where
    for<'a> &'a K: RefOps<K>,
{
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    /// c·x^k
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// x - a
    pub fn linear_root(a: K) -> Self {
        Self::new(vec![-a, K::one()])
    }

    /// The falling factorial (x)_s = x(x-1)...(x-s+1), expanded in the monomial basis.
    pub fn falling_factorial(s: usize) -> Self {
        (0..s).fold(Self::one(), |acc, i| &acc * &Self::linear_root(K::from_int(i as i64)))
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs.iter().rev().fold(K::zero(), |acc, c| {
            let mut v = &acc * x;
            v += c;
            v
        })
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let dd = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].try_inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] * &lead_inv;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[k - dd + i] -= &t;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division; `None` if the divisor does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Extended Euclid: returns (g, s) with s·self ≡ g (mod modulus), g the last nonzero remainder.
    pub fn xgcd_mod(&self, modulus: &Self) -> Result<(Self, Self), FieldError> {
        let (mut r0, mut r1) = (modulus.clone(), self.div_rem(modulus)?.1);
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        if r1.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        loop {
            let (q, r) = r0.div_rem(&r1)?;
            if r.is_zero() {
                return Ok((r1, s1));
            }
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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
}

impl<'a, K: Field> Add for &'a UniPoly<K>
where
    for<'b> &'b K: RefOps<K>,
{
    type Output = UniPoly<K>;
    fn add(self, rhs: Self) -> UniPoly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::<K>::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, K: Field> Sub for &'a UniPoly<K>
where
    for<'b> &'b K: RefOps<K>,
{
    type Output = UniPoly<K>;
    fn sub(self, rhs: Self) -> UniPoly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::<K>::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, K: Field> Mul for &'a UniPoly<K>
where
    for<'b> &'b K: RefOps<K>,
{
    type Output = UniPoly<K>;
    fn mul(self, rhs: Self) -> UniPoly<K> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::<K>::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] += &t;
            }
        }
        UniPoly::<K>::new(out)
    }
}

impl<'a, K: Field> Neg for &'a UniPoly<K>
where
    for<'b> &'b K: RefOps<K>,
{
    type Output = UniPoly<K>;
    fn neg(self) -> UniPoly<K> {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<K: Field + fmt::Display> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*m")?,
                _ => write!(f, "({c})*m^{k}")?,
            }
        }
        Ok(())
    }
}
