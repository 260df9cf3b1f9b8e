//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{Field, RefOps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooSmall { degree: u32, target: u32 },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

/// An exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponents compared left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// All monomials of total degree `d` in `nvars` variables, in descending graded-lex order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(d);
                out.push(Monomial::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(nvars, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return out;
        }
        rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with no stored zero coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<K> {
    nvars: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> Poly<K>
where
    for<'a> &'a K: RefOps<K>,
{
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, K::one())
    }

    /// The variable x_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        Self::from_terms(nvars, [(Monomial::var(nvars, i), K::one())])
    }

    /// c·x^exps
    pub fn term(c: K, exps: Vec<u32>) -> Self {
        let nvars = exps.len();
        Self::from_terms(nvars, [(Monomial::new(exps), c)])
    }

    /// Sums the given terms; repeated monomials are combined and zeros dropped.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero(nvars);
        for (mono, c) in terms {
            assert_eq!(mono.nvars(), nvars, "monomial has the wrong number of variables");
            p.add_term(mono, &c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> + '_ {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys().rev()
    }

    pub fn coeff(&self, mono: &Monomial) -> K {
        self.terms.get(mono).cloned().unwrap_or_else(K::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    /// Value of the constant term.
    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Whether every coefficient is compatible with `c`.
    pub fn coefficients_compatible(&self, c: &K) -> bool {
        self.terms.values().all(|x| x.compatible(c))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &K> + '_ {
        self.terms.values()
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::RingMismatch);
        }
        let sample = self.terms.values().find(|c| c.to_rational().is_none());
        if let Some(c) = sample {
            if !other.coefficients_compatible(c) {
                return Err(PolyError::RingMismatch);
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let t = a * b;
                out.add_term(ma.mul(mb), &t);
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// p^m by binary exponentiation; p^0 = 1.
    pub fn pow(&self, mut m: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Sum of the terms of total degree exactly k.
    pub fn graded_component(&self, k: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index {var} out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), &(c * &K::from_int(e as i64)));
        }
        out
    }

    /// Composition with x ↦ M·x + shift, where row i of M gives the image of x_i.
    pub fn linear_substitution(&self, matrix: &[Vec<K>], shift: Option<&[K]>) -> Self {
        let n = self.nvars;
        assert_eq!(matrix.len(), n, "substitution matrix must be nvars x nvars");
        let images: Vec<Self> = (0..n)
            .map(|i| {
                assert_eq!(matrix[i].len(), n, "substitution matrix must be nvars x nvars");
                let mut img = Self::from_terms(n, (0..n).map(|j| (Monomial::var(n, j), matrix[i][j].clone())));
                if let Some(s) = shift {
                    img.add_term(Monomial::one(n), &s[i]);
                }
                img
            })
            .collect();
        self.compose(&images)
    }

    /// Substitutes `images[i]` for x_i. All images must share a ring.
    pub fn compose(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul_unchecked(&powers[i][e]);
                }
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, &cc);
            }
        }
        out
    }

    /// Appends a new last variable so every term has total degree d.
    pub fn homogenize(&self, d: u32) -> Result<Self, PolyError> {
        if let Some(deg) = self.degree() {
            if deg > d {
                return Err(PolyError::DegreeTooSmall { degree: deg, target: d });
            }
        }
        Ok(Poly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps.push(d - m.degree());
                    (Monomial::new(exps), c.clone())
                })
                .collect(),
        })
    }

    /// Sets variable `var` to 1 and drops it from the ring.
    pub fn dehomogenize(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index {var} out of range");
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.remove(var);
            out.add_term(Monomial::new(exps), c);
        }
        out
    }

    /// Whether p = c·q for some nonzero scalar c.
    pub fn is_proportional(&self, other: &Self) -> Result<bool, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        self.check_ring(other)?;
        if self.terms.len() != other.terms.len() || !self.terms.keys().eq(other.terms.keys()) {
            return Ok(false);
        }
        let (a0, b0) = (self.terms.values().next().unwrap(), other.terms.values().next().unwrap());
        Ok(self.terms.values().zip(other.terms.values()).all(|(a, b)| a * b0 == b * a0))
    }

    pub fn evaluate(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars, "point has the wrong dimension");
        let mut powers: Vec<Vec<K>> = point.iter().map(|x| vec![K::one(), x.clone()]).collect();
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L>
    where
        for<'a> &'a L: RefOps<L>,
    {
        Poly::<L>::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Formats with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, K> {
        PolyDisplay { poly: self, names }
    }
}

/// Default variable names: x, y, z for up to three variables, otherwise x1, x2, ...
pub fn default_var_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

pub struct PolyDisplay<'a, K> {
    poly: &'a Poly<K>,
    names: &'a [String],
}

impl<K: Field + fmt::Display> fmt::Display for PolyDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .exps
                .iter()
                .zip(self.names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<K: Field + fmt::Display> fmt::Display for Poly<K>
where
    for<'a> &'a K: RefOps<K>,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars);
        write!(f, "{}", PolyDisplay { poly: self, names: &names })
    }
}

impl<K: fmt::Debug> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.nvars)?;
        f.debug_map().entries(self.terms.iter().rev().map(|(m, c)| (&m.exps, c))).finish()
    }
}

fn expect<T>(r: Result<T, PolyError>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("polynomial arithmetic failed: {e}"),
    }
}

impl<'a, K: Field> Add for &'a Poly<K>
where
    for<'b> &'b K: RefOps<K>,
{
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        expect(self.checked_add(rhs))
    }
}

impl<'a, K: Field> Sub for &'a Poly<K>
where
    for<'b> &'b K: RefOps<K>,
{
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        expect(self.checked_sub(rhs))
    }
}

impl<'a, K: Field> Mul for &'a Poly<K>
where
    for<'b> &'b K: RefOps<K>,
{
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        expect(self.checked_mul(rhs))
    }
}

impl<'a, K: Field> Neg for &'a Poly<K>
where
    for<'b> &'b K: RefOps<K>,
{
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}
