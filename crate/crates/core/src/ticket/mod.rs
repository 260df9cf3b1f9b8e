//! Families of polynomials, dependence of their powers, and tickets.

mod exhaustive;
mod wronskian;

pub use exhaustive::{ticket_both, ticket_exhaustive, ticket_exhaustive_with_threads};
pub use wronskian::{
    ticket_via_wronskian, wprime_quartic, wronskian_polynomial, wronskian_polynomial_at, wronskian_prepare,
    PreparedFamily, WronskianData,
};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{rank_mod_prime, LinalgError, Matrix};
use crate::poly::{Monomial, Poly, PolyError};
use crate::scalar::{Field, FieldError, RefOps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TicketError {
    #[error("a family needs at least two members")]
    TooFewMembers,
    #[error("member {0} is the zero polynomial")]
    ZeroMember(usize),
    #[error("members {0} and {1} are proportional")]
    ProportionalPair(usize, usize),
    #[error("members do not share a polynomial ring")]
    MixedRing,
    #[error("no admissible point found within max-norm {0}")]
    SearchExhausted(u64),
    #[error("family does not have the required shape: {0}")]
    ShapeMismatch(String),
    #[error("the Wronskian polynomial vanished identically")]
    DegenerateWronskian,
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<LinalgError> for TicketError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Field(f) => TicketError::Field(f),
            LinalgError::ZeroPolynomial => TicketError::DegenerateWronskian,
            other => TicketError::ShapeMismatch(other.to_string()),
        }
    }
}

impl From<PolyError> for TicketError {
    fn from(_: PolyError) -> Self {
        TicketError::MixedRing
    }
}

/// A validated family: pairwise non-proportional members of one common degree.
///
/// Members that were not homogeneous of a common degree are homogenized to the
/// largest degree with an appended last variable; `homogeneous` records which
/// case applied.
#[derive(Clone, Debug)]
pub struct Family<K> {
    members: Vec<Poly<K>>,
    nvars: usize,
    degree: u32,
    homogeneous: bool,
}

impl<K: Field + std::fmt::Display> Family<K>
where
    for<'a> &'a K: RefOps<K>,
{
    pub fn members(&self) -> &[Poly<K>] {
        &self.members
    }

    pub fn r(&self) -> usize {
        self.members.len()
    }

    /// Number of variables of the homogeneous form.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Whether the input was already homogeneous of a common degree.
    pub fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// The variable set to 1 when passing to the non-homogeneous form: the first
    /// variable for homogeneous input, the appended one otherwise.
    pub fn dehomogenizing_var(&self) -> usize {
        if self.homogeneous {
            0
        } else {
            self.nvars - 1
        }
    }

    /// r × (number of degree-md monomials) matrix whose row j lists the
    /// coefficients of f_j^m, columns in descending graded-lex order.
    pub fn coefficient_matrix(&self, m: u32) -> Matrix<K> {
        let basis = Monomial::all_of_degree(self.nvars, m * self.degree);
        let mut data = Vec::with_capacity(self.r() * basis.len());
        for f in &self.members {
            let p = f.pow(m);
            data.extend(basis.iter().map(|mono| p.coeff(mono)));
        }
        Matrix::new(self.r(), basis.len(), data)
    }

    pub fn powers(&self, m: u32) -> Vec<Poly<K>> {
        self.members.iter().map(|f| f.pow(m)).collect()
    }
}

/// Checks the members and builds a family, homogenizing when needed.
pub fn validate_family<K: Field + std::fmt::Display>(polys: Vec<Poly<K>>) -> Result<Family<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    if polys.len() < 2 {
        return Err(TicketError::TooFewMembers);
    }
    let nvars = polys[0].nvars();
    if polys.iter().any(|p| p.nvars() != nvars) {
        return Err(TicketError::MixedRing);
    }
    if let Some(i) = polys.iter().position(Poly::is_zero) {
        return Err(TicketError::ZeroMember(i));
    }
    let algebraic = polys.iter().flat_map(|p| p.coefficients()).find(|c| c.to_rational().is_none()).cloned();
    if let Some(c) = algebraic {
        if !polys.iter().all(|p| p.coefficients_compatible(&c)) {
            return Err(TicketError::MixedRing);
        }
    }
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if polys[i].is_proportional(&polys[j])? {
                return Err(TicketError::ProportionalPair(i, j));
            }
        }
    }
    let degree = polys.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let homogeneous = polys.iter().all(|p| p.is_homogeneous() && p.degree() == Some(degree));
    if homogeneous {
        if degree == 0 {
            return Err(TicketError::ProportionalPair(0, 1));
        }
        return Ok(Family { members: polys, nvars, degree, homogeneous });
    }
    let members = polys.iter().map(|p| p.homogenize(degree)).collect::<Result<Vec<_>, _>>()?;
    Ok(Family { members, nvars: nvars + 1, degree, homogeneous })
}

/// λ with Σ_j λ_j f_j^m = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct DependenceWitness<K> {
    pub m: u32,
    pub lambda: Vec<K>,
}

impl<K: Field + std::fmt::Display> DependenceWitness<K>
where
    for<'a> &'a K: RefOps<K>,
{
    /// Re-expands Σ λ_j f_j^m and checks that it vanishes.
    pub fn verify(&self, family: &Family<K>) -> bool {
        if self.lambda.len() != family.r() || self.lambda.iter().all(Zero::is_zero) {
            return false;
        }
        let mut acc = Poly::zero(family.nvars());
        for (f, l) in family.members().iter().zip(&self.lambda) {
            if !l.is_zero() {
                acc = &acc + &f.pow(self.m).scale(l);
            }
        }
        acc.is_zero()
    }
}

/// Defect r − rank of a list of polynomials, with the first left-kernel vector.
/// Columns are the union of the supports, which has the same rank as the full basis.
pub(crate) fn dependence_of<K: Field>(powers: &[Poly<K>]) -> Result<(usize, Option<Vec<K>>), FieldError>
where
    for<'a> &'a K: RefOps<K>,
{
    let support: BTreeSet<&Monomial> = powers.iter().flat_map(|p| p.support()).collect();
    let r = powers.len();
    let mut data = Vec::with_capacity(support.len() * r);
    for mono in support.iter().rev() {
        data.extend(powers.iter().map(|p| p.coeff(mono)));
    }
    if data.len() >= r && rationally_independent(&data, r) {
        return Ok((0, None));
    }
    let transposed = Matrix::new(support.len(), r, data);
    let kernel = transposed.nullspace()?;
    Ok((kernel.len(), kernel.into_iter().next()))
}

/// Full rank modulo a prime implies full rank over ℚ, so families with rational
/// coefficients skip the exact elimination at most independent exponents.
fn rationally_independent<K: Field>(data: &[K], r: usize) -> bool {
    let Some(values) = data.iter().map(Field::to_rational).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let rows: Vec<Vec<_>> = values.chunks(r).map(<[_]>::to_vec).collect();
    rank_mod_prime(&rows) == Some(r)
}

/// Whether the m-th powers are dependent, with a witness when they are.
pub fn is_dependent<K: Field + std::fmt::Display>(
    family: &Family<K>,
    m: u32,
) -> Result<(bool, Option<DependenceWitness<K>>), TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    let (defect, w) = dependence_of::<K>(&family.powers(m))?;
    Ok((defect > 0, w.map(|lambda| DependenceWitness { m, lambda })))
}

/// δ_m = r − rank of the m-th powers.
pub fn defect<K: Field + std::fmt::Display>(family: &Family<K>, m: u32) -> Result<usize, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    Ok(dependence_of::<K>(&family.powers(m))?.0)
}

/// (r−1)² − 1, an upper bound for every ticket element of an r-member family.
pub fn green_bound(r: usize) -> u64 {
    let r = r as u64;
    assert!(r >= 2, "families have at least two members");
    (r - 1) * (r - 1) - 1
}

/// C(n, k), or `None` once the value exceeds `cap`.
fn binomial_capped(n: u64, k: u64, cap: u64) -> Option<u64> {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 * (k as u128 + 1) {
            return None;
        }
    }
    (acc <= cap as u128).then_some(acc as u64)
}

/// Exponents m with r > C(n+md−1, n−1): the m-th powers cannot be independent.
pub fn forced_exponents(r: usize, n: usize, d: u32) -> BTreeSet<u64> {
    let (r, n, d) = (r as u64, n as u64, d as u64);
    let mut out = BTreeSet::new();
    if n < 2 || d == 0 {
        return out;
    }
    for m in 1.. {
        match binomial_capped(n + m * d - 1, n - 1, r) {
            Some(dim) if r > dim => {
                out.insert(m);
            }
            _ => break,
        }
    }
    out
}

/// The bound on |T(F)| from the Wronskian argument: C(r−1, 2) in general, and
/// C(r,2) − (r−1) − Σ_{i=1}^{u} (r−2−i·d) with u = ⌊(r−2)/d⌋ when the degree d is known.
pub fn theorem1_bound(r: usize, d: Option<u32>) -> u64 {
    let r = r as i64;
    let base = r * (r - 1) / 2 - (r - 1);
    let Some(d) = d else {
        return base as u64;
    };
    let d = d as i64;
    let u = (r - 2).max(0) / d;
    let extra: i64 = (1..=u).map(|i| r - 2 - i * d).sum();
    (base - extra) as u64
}

/// Where the scan bound of a report came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSource {
    Green,
    User,
    Wronskian,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundSource::Green => "green",
            BoundSource::User => "user",
            BoundSource::Wronskian => "wronskian",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Wronskian,
    Both,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Wronskian => "wronskian",
            Method::Both => "both",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TicketReport<K> {
    pub r: usize,
    pub n: usize,
    pub d: u32,
    pub homogeneous: bool,
    pub method: Method,
    pub ticket: BTreeSet<u64>,
    pub defects: BTreeMap<u64, usize>,
    pub witnesses: BTreeMap<u64, DependenceWitness<K>>,
    pub bound_used: u64,
    pub bound_source: BoundSource,
    /// Set when the scan stopped below the Green bound, so only the lower part of the ticket is known.
    pub lower_portion_only: bool,
    pub forced: BTreeSet<u64>,
    pub dysfunctional: bool,
    pub conjecture2_sum: u64,
    pub theorem1_bound: u64,
    pub wronskian: Option<WronskianData<K>>,
    /// The Wronskian path could not find a base point and the exhaustive scan was used instead.
    pub wronskian_fallback: bool,
    /// With both methods run: whether they disagreed.
    pub cross_check_mismatch: Option<bool>,
}

impl<K: Field + std::fmt::Display> TicketReport<K>
where
    for<'a> &'a K: RefOps<K>,
{
    pub(crate) fn assemble(
        family: &Family<K>,
        method: Method,
        bound: u64,
        bound_source: BoundSource,
        results: BTreeMap<u64, (usize, Option<Vec<K>>)>,
    ) -> Self {
        let mut defects = BTreeMap::new();
        let mut witnesses = BTreeMap::new();
        for (m, (delta, w)) in results {
            defects.insert(m, delta);
            if let Some(lambda) = w {
                witnesses.insert(m, DependenceWitness { m: m as u32, lambda });
            }
        }
        let ticket: BTreeSet<u64> = defects.iter().filter(|(_, &d)| d > 0).map(|(&m, _)| m).collect();
        let r = family.r();
        TicketReport {
            r,
            n: family.nvars(),
            d: family.degree(),
            homogeneous: family.homogeneous(),
            method,
            dysfunctional: ticket.len() + 2 > r,
            conjecture2_sum: defects.values().map(|&d| d as u64).sum(),
            ticket,
            defects,
            witnesses,
            bound_used: bound,
            bound_source,
            lower_portion_only: bound < green_bound(r),
            forced: forced_exponents(r, family.nvars(), family.degree()),
            theorem1_bound: theorem1_bound(r, Some(family.degree())),
            wronskian: None,
            wronskian_fallback: false,
            cross_check_mismatch: None,
        }
    }

    /// Re-verifies every witness by expansion.
    pub fn verify_witnesses(&self, family: &Family<K>) -> bool {
        self.witnesses.values().all(|w| w.verify(family))
    }
}
