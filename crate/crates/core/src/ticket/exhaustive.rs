use std::collections::BTreeMap;
use std::fmt::Display;

use rayon::prelude::*;

use super::{dependence_of, green_bound, BoundSource, Family, Method, TicketError, TicketReport};
use crate::poly::Poly;
use crate::scalar::{Field, RefOps};

type PerExponent<K> = BTreeMap<u64, (usize, Option<Vec<K>>)>;

/// Checks every exponent in [1, bound] (default: the Green bound) on the
/// global thread pool.
pub fn ticket_exhaustive<K: Field + Display>(
    family: &Family<K>,
    bound: Option<u64>,
) -> Result<TicketReport<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    ticket_exhaustive_with_threads(family, bound, None)
}

/// As [`ticket_exhaustive`], with an explicit thread count (`Some(1)` runs
/// sequentially). Reports do not depend on the thread count.
pub fn ticket_exhaustive_with_threads<K: Field + Display>(
    family: &Family<K>,
    bound: Option<u64>,
    threads: Option<usize>,
) -> Result<TicketReport<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    let (bound, source) = match bound {
        Some(b) => (b, BoundSource::User),
        None => (green_bound(family.r()), BoundSource::Green),
    };
    let results = scan(family, 1, bound, threads)?;
    Ok(TicketReport::assemble(family, Method::Exhaustive, bound, source, results))
}

/// Runs both methods and records whether they agree.
pub fn ticket_both<K: Field + Display>(
    family: &Family<K>,
    bound: Option<u64>,
    threads: Option<usize>,
) -> Result<TicketReport<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    let exhaustive = ticket_exhaustive_with_threads(family, bound, threads)?;
    let mut report = super::ticket_via_wronskian(family)?;
    let shared = exhaustive.bound_used.min(report.bound_used);
    let restrict =
        |r: &TicketReport<K>| -> BTreeMap<u64, usize> { r.defects.range(..=shared).map(|(&m, &d)| (m, d)).collect() };
    report.cross_check_mismatch = Some(restrict(&exhaustive) != restrict(&report));
    report.method = Method::Both;
    Ok(report)
}

/// Defects and witnesses for every m in [lo, hi].
pub(crate) fn scan<K: Field + Display>(
    family: &Family<K>,
    lo: u64,
    hi: u64,
    threads: Option<usize>,
) -> Result<PerExponent<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    if hi < lo {
        return Ok(BTreeMap::new());
    }
    let workers = match threads {
        Some(t) => t.max(1),
        None => rayon::current_num_threads(),
    };
    if workers == 1 || hi - lo < 4 {
        return scan_block(family, lo, hi);
    }
    // Contiguous blocks keep the incremental power update cheap inside each block.
    let nblocks = (workers * 4) as u64;
    let width = ((hi - lo + 1) + nblocks - 1) / nblocks;
    let blocks: Vec<(u64, u64)> =
        (0..nblocks).map(|b| (lo + b * width, (lo + (b + 1) * width - 1).min(hi))).filter(|(a, b)| a <= b).collect();
    let run = || -> Result<Vec<PerExponent<K>>, TicketError> {
        blocks.par_iter().map(|&(a, b)| scan_block(family, a, b)).collect()
    };
    let parts = match threads {
        Some(t) => {
            rayon::ThreadPoolBuilder::new().num_threads(t).build().expect("thread pool construction").install(run)?
        }
        None => run()?,
    };
    Ok(parts.into_iter().flatten().collect())
}

fn scan_block<K: Field + Display>(family: &Family<K>, lo: u64, hi: u64) -> Result<PerExponent<K>, TicketError>
where
    for<'a> &'a K: RefOps<K>,
{
    let mut out = BTreeMap::new();
    let mut powers: Vec<Poly<K>> = family.powers(lo as u32);
    for m in lo..=hi {
        if m > lo {
            powers = powers.iter().zip(family.members()).map(|(p, f)| p * f).collect();
        }
        out.insert(m, dependence_of::<K>(&powers)?);
    }
    Ok(out)
}
