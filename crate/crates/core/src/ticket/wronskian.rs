use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use num_traits::Zero;

use super::exhaustive::scan;
use super::{dependence_of, green_bound, BoundSource, Family, Method, TicketError, TicketReport};
use crate::linalg::{integer_roots, unipoly_matrix_det};
use crate::poly::Poly;
use crate::scalar::{Field, RefOps};
use crate::unipoly::UniPoly;

/// A family in non-homogeneous form, translated so that the base point is the
/// origin and scaled so that every member has constant term 1.
#[derive(Clone, Debug)]
pub struct PreparedFamily<K> {
    pub members: Vec<Poly<K>>,
    pub base_point: Vec<K>,
    pub dehomogenized_var: usize,
}

#[derive(Clone, Debug)]
pub struct WronskianData<K> {
    pub dehomogenized_var: usize,
    pub base_point: Vec<K>,
    pub eval_point: Vec<K>,
    /// W(m; y) as a polynomial in m.
    pub w: UniPoly<K>,
    /// Integer roots of W in [1, green bound].
    pub candidates: BTreeSet<u64>,
}

/// Integer points of max-norm exactly `norm`, in lexicographic order.
fn shell(dim: usize, norm: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut p = vec![-norm; dim];
    loop {
        if p.iter().any(|c| c.abs() == norm) || norm == 0 {
            out.push(p.clone());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if p[i] < norm {
                p[i] += 1;
                for c in &mut p[i + 1..] {
                    *c = -norm;
                }
                break;
            }
        }
    }
}

/// The first point, by increasing max-norm up to `cap`, accepted by `accept`.
fn search_point<T>(dim: usize, cap: i64, mut accept: impl FnMut(&[i64]) -> Option<T>) -> Option<T> {
    for norm in 0..=cap {
        for p in shell(dim, norm) {
            if let Some(t) = accept(&p) {
                return Some(t);
            }
        }
    }
    None
}

fn search_cap(r: usize) -> i64 {
    50 * r as i64
}

/// Dehomogenizes, then finds a base point P where no member vanishes and the
/// normalized linear parts are pairwise distinct.
pub fn wronskian_prepare<K: Field + Display>(family: &Family<K>) -> Result<PreparedFamily<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    let var = family.dehomogenizing_var();
    let affine: Vec<Poly<K>> = family.members().iter().map(|f| f.dehomogenize(var)).collect();
    let dim = family.nvars() - 1;
    let identity: Vec<Vec<K>> =
        (0..dim).map(|i| (0..dim).map(|j| if i == j { K::one() } else { K::zero() }).collect()).collect();
    let cap = search_cap(family.r());
    let mut failure = None;
    let found = search_point(dim, cap, |p| {
        let point: Vec<K> = p.iter().map(|&c| K::from_int(c)).collect();
        let values: Vec<K> = affine.iter().map(|f| f.evaluate(&point)).collect();
        if values.iter().any(Zero::is_zero) {
            return None;
        }
        let mut members = Vec::with_capacity(affine.len());
        for (f, v) in affine.iter().zip(&values) {
            let inv = match v.try_inv() {
                Ok(i) => i,
                Err(e) => {
                    failure = Some(e);
                    return None;
                }
            };
            members.push(f.linear_substitution(&identity, Some(&point)).scale(&inv));
        }
        let linear: Vec<Poly<K>> = members.iter().map(|g| g.graded_component(1)).collect();
        let distinct = (0..linear.len()).all(|i| (i + 1..linear.len()).all(|j| linear[i] != linear[j]));
        distinct.then_some(PreparedFamily { members, base_point: point, dehomogenized_var: var })
    });
    match (found, failure) {
        (Some(p), _) => Ok(p),
        (None, Some(e)) => Err(e.into()),
        (None, None) => Err(TicketError::SearchExhausted(cap as u64)),
    }
}

/// Multiplicity vectors (ℓ_1, …, ℓ_d) with Σ i·ℓ_i = k.
fn weighted_partitions(k: u32, d: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, part: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if part == 0 {
            if rest == 0 {
                let mut v = current.clone();
                v.reverse();
                out.push(v);
            }
            return;
        }
        for l in 0..=rest / part {
            current.push(l);
            rec(rest - l * part, part - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, d, &mut Vec::new(), &mut out);
    out
}

fn factorial<K: Field>(n: u32) -> K
where
    for<'a> &'a K: RefOps<K>,
{
    (2..=n as i64).fold(K::one(), |acc, i| &acc * &K::from_int(i))
}

/// W(m; y): the determinant whose (k, j) entry is the degree-k graded part of
/// f_j^m at y, expanded as a polynomial in m.
pub fn wronskian_polynomial_at<K: Field + Display>(
    prepared: &PreparedFamily<K>,
    y: &[K],
) -> Result<UniPoly<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    let r = prepared.members.len();
    let d = prepared.members.iter().filter_map(Poly::degree).max().unwrap_or(0).max(1);
    let falling: Vec<UniPoly<K>> = (0..r).map(UniPoly::<K>::falling_factorial).collect();
    let mut matrix = vec![Vec::with_capacity(r); r];
    for f in &prepared.members {
        // graded parts (f)_i evaluated at y, i = 1..d
        let parts: Vec<K> = (1..=d).map(|i| f.graded_component(i).evaluate(y)).collect();
        for (k, row) in matrix.iter_mut().enumerate() {
            let mut entry = UniPoly::<K>::zero();
            for ell in weighted_partitions(k as u32, d) {
                let mut c = K::one();
                let mut denom = K::one();
                for (i, &l) in ell.iter().enumerate() {
                    if l > 0 {
                        c = &c * &pow(&parts[i], l);
                        denom = &denom * &factorial::<K>(l);
                    }
                }
                if c.is_zero() {
                    continue;
                }
                let s: u32 = ell.iter().sum();
                entry = &entry + &falling[s as usize].scale(&c.try_div(&denom)?);
            }
            row.push(entry);
        }
    }
    Ok(unipoly_matrix_det::<K>(&matrix)?)
}

fn pow<K: Field>(x: &K, e: u32) -> K
where
    for<'a> &'a K: RefOps<K>,
{
    (0..e).fold(K::one(), |acc, _| &acc * x)
}

/// Prepares the family, picks an evaluation point separating the linear parts,
/// and returns W with its integer roots in [1, green bound].
pub fn wronskian_polynomial<K: Field + Display>(family: &Family<K>) -> Result<WronskianData<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    let prepared = wronskian_prepare(family)?;
    let linear: Vec<Poly<K>> = prepared.members.iter().map(|g| g.graded_component(1)).collect();
    let dim = family.nvars() - 1;
    let cap = search_cap(family.r());
    let y = search_point(dim, cap, |p| {
        let point: Vec<K> = p.iter().map(|&c| K::from_int(c)).collect();
        let values: Vec<K> = linear.iter().map(|l| l.evaluate(&point)).collect();
        let distinct = (0..values.len()).all(|i| (i + 1..values.len()).all(|j| values[i] != values[j]));
        distinct.then_some(point)
    })
    .ok_or(TicketError::SearchExhausted(cap as u64))?;
    let w = wronskian_polynomial_at(&prepared, &y)?;
    let roots = integer_roots(&w, 1, green_bound(family.r()) as i64)?;
    Ok(WronskianData {
        dehomogenized_var: prepared.dehomogenized_var,
        base_point: prepared.base_point,
        eval_point: y,
        w,
        candidates: roots.into_iter().map(|m| m as u64).collect(),
    })
}

/// Ticket from the Wronskian candidates, each verified by a rank computation.
/// Exponents that are not roots of W have independent powers, so every
/// defect up to the Green bound is filled in.
pub fn ticket_via_wronskian<K: Field + Display>(family: &Family<K>) -> Result<TicketReport<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    let bound = green_bound(family.r());
    let data = match wronskian_polynomial(family) {
        Ok(d) => d,
        Err(TicketError::SearchExhausted(_)) => {
            let results = scan(family, 1, bound, None)?;
            let mut report = TicketReport::assemble(family, Method::Wronskian, bound, BoundSource::Green, results);
            report.wronskian_fallback = true;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let mut results = BTreeMap::new();
    for m in 1..=bound {
        let entry =
            if data.candidates.contains(&m) { dependence_of::<K>(&family.powers(m as u32))? } else { (0, None) };
        results.insert(m, entry);
    }
    let mut report = TicketReport::assemble(family, Method::Wronskian, bound, BoundSource::Wronskian, results);
    report.wronskian = Some(data);
    Ok(report)
}

/// The reduced 4×4 determinant for four members 1 + a_j t + b_j t²: rows
/// 1, a_j, (m−1)a_j² + 2b_j, (m−2)a_j³ + 6a_j b_j.
pub fn wprime_quartic<K: Field + Display>(family: &Family<K>) -> Result<UniPoly<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    if family.r() != 4 || family.nvars() != 2 || family.degree() != 2 {
        return Err(TicketError::ShapeMismatch("four binary quadratics required".into()));
    }
    let prepared = wronskian_prepare(family)?;
    let t = |e: u32| crate::poly::Monomial::new(vec![e]);
    let m_minus = |c: i64| UniPoly::<K>::new(vec![K::from_int(-c), K::one()]);
    let mut rows: Vec<Vec<UniPoly<K>>> = vec![Vec::new(); 4];
    for f in &prepared.members {
        let (a, b) = (f.coeff(&t(1)), f.coeff(&t(2)));
        let a2 = &a * &a;
        let a3 = &a2 * &a;
        rows[0].push(UniPoly::<K>::one());
        rows[1].push(UniPoly::<K>::constant(a.clone()));
        rows[2].push(&m_minus(1).scale(&a2) + &UniPoly::<K>::constant(&K::from_int(2) * &b));
        rows[3].push(&m_minus(2).scale(&a3) + &UniPoly::<K>::constant(&(&K::from_int(6) * &a) * &b));
    }
    Ok(unipoly_matrix_det::<K>(&rows)?)
}
