use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::One;

use super::FamilyError;
use crate::field::{FieldElem, FieldTower};
use crate::poly::{Monomial, Poly};
use crate::scalar::{Field, Rational};
use crate::NfPoly;

/// Components g_0..g_{q−1} of a q-cyclotomic family, with pairwise disjoint supports.
#[derive(Clone, Debug)]
pub struct CyclotomicSpec {
    q: u64,
    components: Vec<NfPoly>,
}

impl CyclotomicSpec {
    pub fn new(components: Vec<NfPoly>) -> Result<Self, FamilyError> {
        let q = components.len() as u64;
        if q < 2 {
            return Err(FamilyError::ParamOutOfRange("a cyclotomic spec needs at least two components".into()));
        }
        let nvars = components[0].nvars();
        if components.iter().any(|g| g.nvars() != nvars) {
            return Err(FamilyError::ParamOutOfRange("components have different numbers of variables".into()));
        }
        for i in 0..components.len() {
            let si: BTreeSet<&Monomial> = components[i].support().collect();
            for j in i + 1..components.len() {
                if components[j].support().any(|m| si.contains(m)) {
                    return Err(FamilyError::DisjointnessViolated(i, j));
                }
            }
        }
        Ok(CyclotomicSpec { q, components })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn components(&self) -> &[NfPoly] {
        &self.components
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }
}

fn zeta(tower: &Arc<FieldTower>, q: u64) -> Result<FieldElem, FamilyError> {
    tower.root_of_unity(q).map_err(|_| FamilyError::MissingRoot(q))
}

/// f_j = Σ_k ζ_q^{jk} g_k for 0 ≤ j < q.
pub fn cyclotomic_lift(spec: &CyclotomicSpec, tower: &Arc<FieldTower>) -> Result<Vec<NfPoly>, FamilyError> {
    let z = zeta(tower, spec.q)?;
    Ok(transform(&spec.components, &z, FieldElem::one()))
}

/// g_ℓ = (1/q) Σ_j ζ_q^{−jℓ} f_j, the inverse of [`cyclotomic_lift`].
pub fn cyclotomic_invert(polys: &[NfPoly], tower: &Arc<FieldTower>) -> Result<Vec<NfPoly>, FamilyError> {
    let q = polys.len() as u64;
    if q < 2 {
        return Err(FamilyError::ParamOutOfRange("inversion needs at least two polynomials".into()));
    }
    let z = zeta(tower, q)?;
    let zinv = z.try_inv()?;
    let scale = FieldElem::rational(Rational::new(1.into(), (q as i64).into()));
    Ok(transform(polys, &zinv, scale))
}

/// out_j = c · Σ_k z^{jk} p_k
fn transform(polys: &[NfPoly], z: &FieldElem, c: FieldElem) -> Vec<NfPoly> {
    let q = polys.len();
    let nvars = polys[0].nvars();
    let powers: Vec<FieldElem> = (0..q as u32).map(|e| z.pow(e)).collect();
    (0..q)
        .map(|j| {
            let mut acc = Poly::zero(nvars);
            for (k, p) in polys.iter().enumerate() {
                if !p.is_zero() {
                    acc = &acc + &p.scale(&powers[(j * k) % q]);
                }
            }
            acc.scale(&c)
        })
        .collect()
}

/// g_{m,k} as the sum over index multisets with Σ i ≡ k (mod q), weighted by
/// multinomial coefficients.
pub fn g_component_combinatorial(spec: &CyclotomicSpec, m: u32, k: u64) -> NfPoly {
    let q = spec.q as usize;
    let active: Vec<usize> = (0..q).filter(|&i| !spec.components[i].is_zero()).collect();
    let nvars = spec.nvars();
    let mut powers: Vec<Vec<NfPoly>> = Vec::with_capacity(active.len());
    for &i in &active {
        let mut row = vec![Poly::one(nvars)];
        for e in 1..=m as usize {
            let next = &row[e - 1] * &spec.components[i];
            row.push(next);
        }
        powers.push(row);
    }
    let factorials: Vec<Rational> = (0..=m as i64)
        .scan(Rational::one(), |acc, i| {
            if i > 0 {
                *acc *= Rational::from_integer(i.into());
            }
            Some(acc.clone())
        })
        .collect();

    let mut total = Poly::zero(nvars);
    let mut counts = vec![0u32; active.len()];
    compositions(m, &mut counts, 0, &mut |c| {
        let residue: u64 = c.iter().zip(&active).map(|(&n, &i)| n as u64 * i as u64).sum::<u64>() % spec.q;
        if residue != k % spec.q {
            return;
        }
        let mut coef = factorials[m as usize].clone();
        let mut term = Poly::one(nvars);
        for (slot, &n) in c.iter().enumerate() {
            coef /= &factorials[n as usize];
            if n > 0 {
                term = &term * &powers[slot][n as usize];
            }
        }
        total = &total + &term.scale(&FieldElem::rational(coef));
    });
    total
}

fn compositions(rest: u32, counts: &mut Vec<u32>, slot: usize, visit: &mut impl FnMut(&[u32])) {
    if slot + 1 >= counts.len() {
        if let Some(last) = counts.last_mut() {
            *last = rest;
            visit(counts);
        }
        return;
    }
    for n in 0..=rest {
        counts[slot] = n;
        compositions(rest - n, counts, slot + 1, visit);
    }
    counts[slot] = 0;
}

/// All g_{m,k}, k = 0..q−1, computed by inverting the m-th powers of the lift
/// and checked against the combinatorial sum.
pub fn g_components(spec: &CyclotomicSpec, m: u32, tower: &Arc<FieldTower>) -> Result<Vec<NfPoly>, FamilyError> {
    let lifted = cyclotomic_lift(spec, tower)?;
    let powers: Vec<NfPoly> = lifted.iter().map(|f| f.pow(m)).collect();
    let inverted = cyclotomic_invert(&powers, tower)?;
    for (k, g) in inverted.iter().enumerate() {
        if *g != g_component_combinatorial(spec, m, k as u64) {
            return Err(FamilyError::ComponentMismatch { m, k: k as u64 });
        }
    }
    Ok(inverted)
}

/// The single component g_{m,k}; see [`g_components`].
pub fn g_component(spec: &CyclotomicSpec, m: u32, k: u64, tower: &Arc<FieldTower>) -> Result<NfPoly, FamilyError> {
    if m == 0 || k >= spec.q {
        return Err(FamilyError::ParamOutOfRange(format!("need m ≥ 1 and k < {}", spec.q)));
    }
    Ok(g_components(spec, m, tower)?.swap_remove(k as usize))
}

/// Whether any component of the m-th power vanishes.
pub fn some_component_vanishes(spec: &CyclotomicSpec, m: u32, tower: &Arc<FieldTower>) -> Result<bool, FamilyError> {
    Ok(g_components(spec, m, tower)?.iter().any(Poly::is_zero))
}
