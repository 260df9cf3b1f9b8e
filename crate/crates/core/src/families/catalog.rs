use std::sync::Arc;

use num_traits::{One, Zero};

use super::combinatorial::{alpha_polynomial, linear_forced_limit, AlphaKind};
use super::cyclotomic::{cyclotomic_lift, CyclotomicSpec};
use super::{FamilyError, GeneratedFamily, GeneratorParams};
use crate::field::{FieldElem, FieldTower};
use crate::poly::{Monomial, Poly};
use crate::scalar::{int, rational_sqrt, Field, Rational};
use crate::unipoly::UniPoly;
use crate::NfPoly;

fn out_of_range(msg: impl Into<String>) -> FamilyError {
    FamilyError::ParamOutOfRange(msg.into())
}

fn q_of(x: i64) -> FieldElem {
    FieldElem::from_int(x)
}

/// Σ c·x^i y^j
fn binary(terms: &[(u32, u32, FieldElem)]) -> NfPoly {
    Poly::from_terms(2, terms.iter().map(|(i, j, c)| (Monomial::new(vec![*i, *j]), c.clone())))
}

fn ternary(terms: &[(u32, u32, u32, i64)]) -> NfPoly {
    Poly::from_terms(3, terms.iter().map(|&(i, j, k, c)| (Monomial::new(vec![i, j, k]), q_of(c))))
}

fn quad(a: &FieldElem, b: &FieldElem, c: &FieldElem) -> NfPoly {
    binary(&[(2, 0, a.clone()), (1, 1, b.clone()), (0, 2, c.clone())])
}

fn xy() -> NfPoly {
    binary(&[(1, 1, FieldElem::one())])
}

/// ℚ(ζ_q), or ℚ itself when q ≤ 2.
fn cyclotomic_field(q: u64) -> Arc<FieldTower> {
    if q <= 2 {
        FieldTower::rationals()
    } else {
        FieldTower::cyclotomic(q)
    }
}

fn root(tower: &Arc<FieldTower>, q: u64) -> Result<FieldElem, FamilyError> {
    tower.root_of_unity(q).map_err(|_| FamilyError::MissingRoot(q))
}

/// A root of `p` (rational coefficients): rational when one is found cheaply,
/// otherwise the generator of `base` extended by the monic reduction of `p`.
/// A factor α^k is removed first; irreducibility of the rest is the caller's contract.
fn adjoin_root(base: &Arc<FieldTower>, p: &UniPoly<Rational>) -> Result<(Arc<FieldTower>, FieldElem), FamilyError> {
    let coeffs = p.coeffs();
    let low = coeffs.iter().position(|c| !c.is_zero()).ok_or_else(|| out_of_range("zero polynomial"))?;
    let stripped = &coeffs[low..];
    let lead = stripped.last().unwrap().clone();
    let monic: Vec<Rational> = stripped.iter().map(|c| c / &lead).collect();
    match monic.len() {
        0 | 1 => Err(out_of_range("polynomial has no nonzero root")),
        2 => Ok((base.clone(), FieldElem::rational(-monic[0].clone()))),
        _ => {
            if monic.len() == 3 {
                let disc = &monic[1] * &monic[1] - &monic[0] * int(4);
                if let Some(s) = rational_sqrt(&disc) {
                    let two = int(2);
                    return Ok((base.clone(), FieldElem::rational((-&monic[1] + s) / two)));
                }
            }
            let minpoly: Vec<FieldElem> = monic.into_iter().map(FieldElem::rational).collect();
            let tower = FieldTower::extend(base, &minpoly)?;
            let g = tower.generator(tower.depth() - 1);
            Ok((tower, g))
        }
    }
}

fn sqrt_in(base: &Arc<FieldTower>, c: &Rational) -> Result<(Arc<FieldTower>, FieldElem), FamilyError> {
    if c.is_zero() {
        return Err(out_of_range("square root of zero requested"));
    }
    adjoin_root(base, &UniPoly::new(vec![-c.clone(), Rational::zero(), Rational::one()]))
}

/// α from explicit coordinates over `base`, a square root to adjoin, or a default.
fn alpha_param(
    base: &Arc<FieldTower>,
    params: &GeneratorParams,
    default: impl FnOnce() -> Result<(Arc<FieldTower>, FieldElem), FamilyError>,
) -> Result<(Arc<FieldTower>, FieldElem), FamilyError> {
    match (&params.alpha, &params.alpha_sq) {
        (Some(_), Some(_)) => Err(out_of_range("give either alpha or alpha_sq, not both")),
        (Some(coords), None) => {
            let mut c = coords.clone();
            if c.len() == 1 {
                c.resize(base.degree(), Rational::zero());
            }
            let a = FieldElem::from_coords(base, c)
                .map_err(|_| out_of_range(format!("alpha needs 1 or {} coordinates", base.degree())))?;
            Ok((base.clone(), a))
        }
        (None, Some(sq)) => sqrt_in(base, sq),
        (None, None) => default(),
    }
}

fn require(value: Option<u64>, name: &str, generator: &str) -> Result<u64, FamilyError> {
    value.ok_or_else(|| out_of_range(format!("{generator} requires --{name}")))
}

fn family(name: &str, tower: Arc<FieldTower>, polys: Vec<NfPoly>) -> GeneratedFamily {
    GeneratedFamily { name: name.to_string(), tower, polys }
}

pub(super) fn desboves_elkies() -> GeneratedFamily {
    let k = FieldTower::cyclotomic(8);
    let z = k.generator(0);
    let i = z.pow(2);
    let s2 = &z + &z.pow(7);
    let one = FieldElem::one();
    let polys = vec![quad(&one, &s2, &-&one), quad(&i, &-&s2, &i), quad(&-&one, &s2, &one), quad(&-&i, &-&s2, &-&i)];
    family("desboves_elkies", k, polys)
}

/// 4-cyclotomic on {x², μxy, −y², 0}.
pub(super) fn desboves_mu(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let mu_sq = params.mu_sq.clone().unwrap_or_else(|| int(2));
    let base = FieldTower::cyclotomic(4);
    let (tower, mu) = if let Some(r) = rational_sqrt(&-&mu_sq) {
        (base.clone(), &base.generator(0) * &FieldElem::rational(r))
    } else {
        sqrt_in(&base, &mu_sq)?
    };
    let spec = CyclotomicSpec::new(vec![
        binary(&[(2, 0, FieldElem::one())]),
        binary(&[(1, 1, mu)]),
        binary(&[(0, 2, q_of(-1))]),
        Poly::zero(2),
    ])?;
    Ok(family("desboves_mu", tower.clone(), cyclotomic_lift(&spec, &tower)?))
}

pub(super) fn young(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let base = FieldTower::cyclotomic(3);
    let (tower, a) = alpha_param(&base, params, || Ok((base.clone(), q_of(2))))?;
    if a.is_zero() || a.is_one() || a == q_of(-1) {
        return Err(out_of_range("young requires alpha ∉ {0, 1, −1}"));
    }
    let w = root(&tower, 3)?;
    let w2 = &w * &w;
    let m1 = q_of(-1);
    let polys = vec![quad(&a, &m1, &a), quad(&m1, &a, &m1), quad(&(&w * &a), &m1, &(&w2 * &a)), quad(&-&w, &a, &-&w2)];
    Ok(family("young", tower, polys))
}

pub(super) fn example5() -> GeneratedFamily {
    let k = FieldTower::cyclotomic(3);
    let w = k.generator(0);
    let w2 = &w * &w;
    let (one, zero) = (FieldElem::one(), FieldElem::zero());
    let polys = vec![quad(&one, &zero, &one), quad(&w, &zero, &w2), quad(&w2, &zero, &w), xy()];
    family("example5", k, polys)
}

pub(super) fn example5_integral() -> GeneratedFamily {
    let q = |a, b, c| quad(&q_of(a), &q_of(b), &q_of(c));
    let polys = vec![q(1, 2, 0), q(1, 0, -1), q(0, 2, 1), q(1, 1, 1)];
    family("example5_integral", FieldTower::rationals(), polys)
}

pub(super) fn example6() -> GeneratedFamily {
    let k = FieldTower::cyclotomic(24);
    let z = k.generator(0);
    let i = z.pow(6);
    let s2 = &z.pow(3) + &z.pow(21);
    let s3 = &z.pow(2) + &z.pow(22);
    let is2 = &i * &s2;
    let polys = vec![quad(&s3, &s2, &-&s3), quad(&s3, &-&s2, &-&s3), quad(&s3, &is2, &s3), quad(&s3, &-&is2, &s3)];
    family("example6", k, polys)
}

pub(super) fn example7(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let q = require(params.q, "q", "example7")?;
    if q < 2 {
        return Err(out_of_range("example7 requires q ≥ 2"));
    }
    let k = cyclotomic_field(q);
    let z = root(&k, q)?;
    let polys = (0..q as u32).map(|j| binary(&[(1, 0, FieldElem::one()), (0, 1, z.pow(j))])).collect();
    Ok(family("example7", k, polys))
}

fn swapped_quadratics(z: &FieldElem, q: u64, middle: &FieldElem) -> Vec<NfPoly> {
    let zinv = z.try_inv().expect("roots of unity are invertible");
    (0..q as u32).map(|j| quad(&z.pow(j), middle, &zinv.pow(j))).collect()
}

pub(super) fn example8(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let q = require(params.q, "q", "example8")?;
    if q < 3 || q % 2 == 0 {
        return Err(out_of_range("example8 requires odd q ≥ 3"));
    }
    let k = cyclotomic_field(q);
    let z = root(&k, q)?;
    let mut polys = swapped_quadratics(&z, q, &FieldElem::zero());
    polys.push(xy());
    Ok(family("example8", k, polys))
}

pub(super) fn example9(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let q = params.q.unwrap_or(3);
    if q < 3 {
        return Err(out_of_range("example9 requires q ≥ 3"));
    }
    let base = cyclotomic_field(q);
    let (tower, alpha) = alpha_param(&base, params, || {
        let s = match (params.s, q) {
            (Some(s), _) => s,
            (None, 3) => 2,
            (None, _) => return Err(out_of_range("example9 requires --s, --alpha or --alpha-sq when q ≠ 3")),
        };
        adjoin_root(&base, &alpha_polynomial(AlphaKind::Example9 { q, s })?)
    })?;
    let z = root(&tower, q)?;
    let mut polys = swapped_quadratics(&z, q, &alpha);
    polys.push(xy());
    Ok(family("example9", tower, polys))
}

pub(super) fn example10(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let v = params.v.unwrap_or(2);
    if v < 2 {
        return Err(out_of_range("example10 requires v ≥ 2"));
    }
    let q = 2 * v;
    // ℚ(ζ_20) holds both ζ_10 and the root i of the extra factor α² + 1 at v = 5
    let base = if v == 5 && params.alpha.is_none() && params.alpha_sq.is_none() {
        FieldTower::cyclotomic(20)
    } else {
        cyclotomic_field(q)
    };
    let (tower, alpha) = alpha_param(&base, params, || {
        if v == 5 {
            return Ok((base.clone(), root(&base, 4)?));
        }
        adjoin_root(&base, &alpha_polynomial(AlphaKind::Example10 { v })?)
    })?;
    let z = root(&tower, q)?;
    Ok(family("example10", tower, swapped_quadratics(&z, q, &alpha)))
}

/// ε^j x² + i xy + ε^{−j} y² for j < 5, and √−5·xy.
pub(super) fn example10_v5() -> GeneratedFamily {
    let k = FieldTower::cyclotomic(20);
    let z = k.generator(0);
    let i = z.pow(5);
    let eps = z.pow(4);
    let sqrt5 = &FieldElem::one() + &(&q_of(2) * &(&eps + &eps.pow(4)));
    let mut polys = swapped_quadratics(&eps, 5, &i);
    polys.push(binary(&[(1, 1, &i * &sqrt5)]));
    family("example10_v5", k, polys)
}

fn monomials(a: u32) -> Vec<NfPoly> {
    (0..=a).map(|j| binary(&[(a - j, j, FieldElem::one())])).collect()
}

pub(super) fn hat_f(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let a = require(params.a, "a", "hat_F")?;
    if a < 1 {
        return Err(out_of_range("hat_F requires a ≥ 1"));
    }
    let a = a as u32;
    let k = FieldTower::rationals();
    let mut polys = vec![binary(&[(a, 0, FieldElem::one()), (0, a, FieldElem::one())])];
    polys.extend(monomials(a));
    Ok(family("hat_F", k, polys))
}

pub(super) fn tilde_f(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let a = require(params.a, "a", "tilde_F")?;
    let q = require(params.q, "q", "tilde_F")?;
    if a < 2 || q < 2 {
        return Err(out_of_range("tilde_F requires a ≥ 2 and q ≥ 2"));
    }
    let a = a as u32;
    let k = cyclotomic_field(q);
    let z = root(&k, q)?;
    let mut polys: Vec<NfPoly> = (0..q as u32).map(|j| binary(&[(a, 0, FieldElem::one()), (0, a, z.pow(j))])).collect();
    polys.extend(monomials(a));
    Ok(family("tilde_F", k, polys))
}

pub(super) fn euler_binet() -> GeneratedFamily {
    // (x+3y)(x²+3y²) = x³ + 3x²y + 3xy² + 9y³ and (x²+3y²)² = x⁴ + 6x²y² + 9y⁴
    let polys = vec![
        ternary(&[(3, 0, 1, 1), (2, 1, 1, 3), (1, 2, 1, 3), (0, 3, 1, 9), (0, 0, 4, -1)]),
        ternary(&[(3, 0, 1, -1), (2, 1, 1, 3), (1, 2, 1, -3), (0, 3, 1, 9), (0, 0, 4, 1)]),
        ternary(&[(4, 0, 0, 1), (2, 2, 0, 6), (0, 4, 0, 9), (1, 0, 3, -1), (0, 1, 3, 3)]),
        ternary(&[(4, 0, 0, -1), (2, 2, 0, -6), (0, 4, 0, -9), (1, 0, 3, 1), (0, 1, 3, 3)]),
    ];
    family("euler_binet", FieldTower::rationals(), polys)
}

/// The restriction f(x, x, y).
pub(super) fn euler_binet_binary() -> GeneratedFamily {
    let x = binary(&[(1, 0, FieldElem::one())]);
    let y = binary(&[(0, 1, FieldElem::one())]);
    let polys = euler_binet().polys.iter().map(|f| f.compose(&[x.clone(), x.clone(), y.clone()])).collect();
    family("euler_binet_binary", FieldTower::rationals(), polys)
}

pub(super) fn euler_septic() -> GeneratedFamily {
    let b = |t: &[(u32, u32, i64)]| binary(&t.iter().map(|&(i, j, c)| (i, j, q_of(c))).collect::<Vec<_>>());
    let polys = vec![
        b(&[(7, 0, 1), (5, 2, 1), (3, 4, -2), (2, 5, 3), (1, 6, 1)]),
        b(&[(6, 1, 1), (5, 2, -3), (4, 3, -2), (2, 5, 1), (0, 7, 1)]),
        b(&[(7, 0, 1), (5, 2, 1), (3, 4, -2), (2, 5, -3), (1, 6, 1)]),
        b(&[(6, 1, 1), (5, 2, 3), (4, 3, -2), (2, 5, 1), (0, 7, 1)]),
    ];
    family("euler_septic", FieldTower::rationals(), polys)
}

/// The first r tuples (lexicographically) of non-negative integers with sum
/// m(r,n) + 1, as linear forms Σ i_k x_k.
pub(super) fn biermann(params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    let r = require(params.r, "r", "biermann")?;
    let n = require(params.n, "n", "biermann")?;
    if r < 2 || n < 2 {
        return Err(out_of_range("biermann requires r ≥ 2 and n ≥ 2"));
    }
    let m = linear_forced_limit(r, n);
    let mut tuples = Vec::new();
    let mut current = Vec::with_capacity(n as usize);
    lex_tuples(n as usize, (m + 1) as u32, &mut current, &mut tuples, r as usize);
    let polys = tuples
        .into_iter()
        .map(|t| {
            Poly::from_terms(
                n as usize,
                t.iter().enumerate().map(|(k, &c)| (Monomial::var(n as usize, k), q_of(c as i64))),
            )
        })
        .collect();
    Ok(family("biermann", FieldTower::rationals(), polys))
}

fn lex_tuples(len: usize, sum: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, limit: usize) {
    if out.len() >= limit {
        return;
    }
    if current.len() + 1 == len {
        current.push(sum);
        out.push(current.clone());
        current.pop();
        return;
    }
    for c in 0..=sum {
        current.push(c);
        lex_tuples(len, sum - c, current, out, limit);
        current.pop();
        if out.len() >= limit {
            return;
        }
    }
}
