use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::cyclotomic::cyclotomic_polynomial;
use super::elem::FieldElem;
use crate::scalar::{Field, FieldError, Rational};
use crate::unipoly::UniPoly;

/// One simple extension: a monic minimal polynomial whose coefficients are
/// flat coordinate vectors in the tower below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Level {
    pub(crate) minpoly: Vec<Vec<Rational>>,
}

impl Level {
    fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// ℚ extended by at most two nested simple algebraic extensions.
///
/// Elements are stored as flat coordinate vectors of length `degree()`: the
/// coordinate at `i + d1 * j` multiplies `a^i b^j`, where `a` generates the
/// first level (degree `d1`) and `b` the second.
#[derive(Clone, Debug)]
pub struct FieldTower {
    levels: Vec<Level>,
    cyclotomic_order: Option<u64>,
    base: Option<Arc<FieldTower>>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.levels == other.levels
    }
}

impl Eq for FieldTower {}

impl FieldTower {
    /// The rationals: an empty tower.
    pub fn rationals() -> Arc<FieldTower> {
        Arc::new(FieldTower { levels: Vec::new(), cyclotomic_order: None, base: None })
    }

    /// ℚ(ζ_n), with minimal polynomial Φ_n.
    pub fn cyclotomic(n: u64) -> Arc<FieldTower> {
        let phi = cyclotomic_polynomial(n);
        let minpoly = phi.into_coeffs().into_iter().map(|c| vec![c]).collect();
        Arc::new(FieldTower { levels: vec![Level { minpoly }], cyclotomic_order: Some(n), base: None })
    }

    /// Adjoins a root of `minpoly` (coefficients low-to-high, elements of `base`).
    ///
    /// Irreducibility is not checked; a reducible polynomial surfaces later as
    /// `FieldError::ZeroDivisor` when some inversion hits a zero divisor.
    pub fn extend(base: &Arc<FieldTower>, minpoly: &[FieldElem]) -> Result<Arc<FieldTower>, FieldError> {
        if base.depth() >= 2 {
            return Err(FieldError::TowerDepthExceeded);
        }
        if minpoly.len() < 3 {
            return Err(FieldError::InvalidMinPoly("degree must be at least 2".into()));
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(FieldError::InvalidMinPoly("polynomial must be monic".into()));
        }
        let coeffs = minpoly.iter().map(|c| c.coords_in(base)).collect::<Result<Vec<_>, _>>()?;
        let mut levels = base.levels.clone();
        levels.push(Level { minpoly: coeffs });
        let base_for_new = if base.depth() == 1 { Some(base.clone()) } else { None };
        Ok(Arc::new(FieldTower { levels, cyclotomic_order: base.cyclotomic_order, base: base_for_new }))
    }

    /// Convenience: adjoins a square root of the rational `c` (minimal polynomial x² − c).
    pub fn adjoin_sqrt(base: &Arc<FieldTower>, c: Rational) -> Result<Arc<FieldTower>, FieldError> {
        Self::extend(base, &[FieldElem::rational(-c), FieldElem::zero(), FieldElem::one()])
    }

    /// Number of simple extensions (0, 1 or 2).
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.levels.iter().map(Level::degree).collect()
    }

    /// Degree over ℚ.
    pub fn degree(&self) -> usize {
        self.levels.iter().map(Level::degree).product()
    }

    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.cyclotomic_order
    }

    /// The tower below the top level (ℚ for depth ≤ 1).
    pub fn base(&self) -> Arc<FieldTower> {
        match (&self.base, self.depth()) {
            (Some(b), _) => b.clone(),
            _ => FieldTower::rationals(),
        }
    }

    /// Minimal polynomial of a level, with coefficients as elements of the tower below it.
    pub fn minpoly(&self, level: usize) -> Vec<FieldElem> {
        let below = if level == 0 { FieldTower::rationals() } else { self.base() };
        self.levels[level]
            .minpoly
            .iter()
            .map(|c| FieldElem::from_coords(&below, c.clone()).expect("stored coordinates are well-formed"))
            .collect()
    }

    fn d1(&self) -> usize {
        self.levels.first().map_or(1, Level::degree)
    }

    /// The generator of the given level (0-based).
    pub fn generator(self: &Arc<Self>, level: usize) -> FieldElem {
        assert!(level < self.depth(), "tower has no level {level}");
        let mut coords = vec![Rational::zero(); self.degree()];
        let idx = if level == 0 { 1 } else { self.d1() };
        if idx < coords.len() {
            coords[idx] = Rational::one();
            FieldElem::from_coords(self, coords).expect("generator coordinates")
        } else {
            // degree-one level: the root is rational
            let mp = &self.levels[level].minpoly;
            FieldElem::rational(-mp[0][0].clone())
        }
    }

    /// A primitive q-th root of unity, if the tower's first level is cyclotomic of
    /// an order that provides one.
    pub fn root_of_unity(self: &Arc<Self>, q: u64) -> Result<FieldElem, FieldError> {
        match q {
            0 => return Err(FieldError::MissingRoot(0)),
            1 => return Ok(FieldElem::one()),
            2 => return Ok(-FieldElem::one()),
            _ => {}
        }
        let n = self.cyclotomic_order.ok_or(FieldError::MissingRoot(q))?;
        let zeta_n = if n <= 2 { FieldElem::from_int(if n == 1 { 1 } else { -1 }) } else { self.generator(0) };
        // ℚ(ζ_n) also contains ζ_2n = -ζ_n^((n+1)/2) when n is odd.
        let (order, zeta) = if n % 2 == 1 { (2 * n, -zeta_n.pow((n as u32 + 1) / 2)) } else { (n, zeta_n) };
        if order % q != 0 {
            return Err(FieldError::MissingRoot(q));
        }
        Ok(zeta.pow((order / q) as u32))
    }

    /// Product of two coordinate vectors, reduced modulo each level's minimal polynomial.
    pub(crate) fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        match self.levels.len() {
            0 => vec![&a[0] * &b[0]],
            1 => mul_mod_rational(a, b, &self.levels[0].minpoly),
            _ => {
                let d1 = self.d1();
                let mp1 = &self.levels[0].minpoly;
                let mp2 = &self.levels[1].minpoly;
                let d2 = mp2.len() - 1;
                let mut prod: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d1]; 2 * d2 - 1];
                for (i, ai) in a.chunks(d1).enumerate() {
                    if ai.iter().all(Zero::is_zero) {
                        continue;
                    }
                    for (j, bj) in b.chunks(d1).enumerate() {
                        if bj.iter().all(Zero::is_zero) {
                            continue;
                        }
                        let t = mul_mod_rational(ai, bj, mp1);
                        add_into(&mut prod[i + j], &t);
                    }
                }
                for k in (d2..prod.len()).rev() {
                    if prod[k].iter().all(Zero::is_zero) {
                        continue;
                    }
                    let c = std::mem::replace(&mut prod[k], vec![Rational::zero(); d1]);
                    for (i, m) in mp2.iter().take(d2).enumerate() {
                        let t = mul_mod_rational(&c, m, mp1);
                        sub_into(&mut prod[k - d2 + i], &t);
                    }
                }
                prod.truncate(d2);
                prod.concat()
            }
        }
    }

    /// Inverse of a nonzero coordinate vector via the extended Euclidean algorithm
    /// against the top level's minimal polynomial, recursing into the level below.
    pub(crate) fn inv_coords(self: &Arc<Self>, a: &[Rational]) -> Result<Vec<Rational>, FieldError> {
        if a.iter().all(Zero::is_zero) {
            return Err(FieldError::DivisionByZero);
        }
        match self.levels.len() {
            0 => Ok(vec![a[0].try_inv()?]),
            1 => {
                let mp = UniPoly::<Rational>::new(self.levels[0].minpoly.iter().map(|c| c[0].clone()).collect());
                let (g, s) = UniPoly::<Rational>::new(a.to_vec()).xgcd_mod(&mp)?;
                if g.degree() != Some(0) {
                    return Err(FieldError::ZeroDivisor);
                }
                let s = s.scale(&g.coeffs()[0].try_inv()?);
                let mut out = s.into_coeffs();
                out.resize(self.degree(), Rational::zero());
                Ok(out)
            }
            _ => {
                let base = self.base();
                let d1 = self.d1();
                let to_base = |c: &[Rational]| FieldElem::from_coords(&base, c.to_vec());
                let mp = UniPoly::<FieldElem>::new(
                    self.levels[1].minpoly.iter().map(|c| to_base(c)).collect::<Result<_, _>>()?,
                );
                let elem = UniPoly::<FieldElem>::new(a.chunks(d1).map(to_base).collect::<Result<_, _>>()?);
                let (g, s) = elem.xgcd_mod(&mp)?;
                if g.degree() != Some(0) {
                    return Err(FieldError::ZeroDivisor);
                }
                let s = s.scale(&g.coeffs()[0].try_inv()?);
                let d2 = self.levels[1].degree();
                let mut out = Vec::with_capacity(self.degree());
                for j in 0..d2 {
                    out.extend(s.coeff(j).coords_in(&base)?);
                }
                Ok(out)
            }
        }
    }
}

fn add_into(dst: &mut [Rational], src: &[Rational]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += s;
        }
    }
}

fn sub_into(dst: &mut [Rational], src: &[Rational]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= s;
        }
    }
}

/// a·b modulo a monic polynomial over ℚ, given as one-element coordinate vectors.
fn mul_mod_rational(a: &[Rational], b: &[Rational], minpoly: &[Vec<Rational>]) -> Vec<Rational> {
    let d = minpoly.len() - 1;
    if d == 1 {
        return vec![&a[0] * &b[0]];
    }
    let mut prod = vec![Rational::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    for k in (d..prod.len()).rev() {
        if prod[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut prod[k]);
        for (i, m) in minpoly.iter().take(d).enumerate() {
            if !m[0].is_zero() {
                prod[k - d + i] -= &c * &m[0];
            }
        }
    }
    prod.truncate(d);
    prod
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.depth(), self.cyclotomic_order) {
            (0, _) => write!(f, "Q"),
            (1, Some(n)) => write!(f, "Q(zeta_{n})"),
            (2, Some(n)) => write!(f, "Q(zeta_{n})[b]/(degree {})", self.levels[1].degree()),
            _ => write!(f, "Q-tower of degree {}", self.degree()),
        }
    }
}
