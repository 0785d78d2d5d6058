//! Generalized Wall-Sun-Sun primes: primes `p` with `gcd(b, p) = 1` and
//! `pi(p^2) = pi(p)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::lucas::{self, LucasParams};

/// Which rule decided the verdict of a [`WssCertificate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WssPath {
    /// `p = 2`: Wall-Sun-Sun exactly when `(a, b) = (3, 3) (mod 4)`.
    TwoAdicTable,
    /// `p >= 3`, `p | a`: requires `ord_{p^2}(b) = ord_p(b)` and `p^2 | a`.
    PrimeDividesA,
    /// `p >= 5` ramified in the quadratic field: never Wall-Sun-Sun.
    RamifiedPrime,
    /// Direct comparison of `pi(p)` and `pi(p^2)`.
    PeriodCompare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WssCertificate {
    pub p: u64,
    pub pi_p: u64,
    pub pi_p2: u64,
    pub is_wss: bool,
    pub path: WssPath,
    /// `U_{pi(p)} = 0 (mod p^2)`.
    pub usub_condition: bool,
}

fn check_query(params: &LucasParams, p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if params.b % p == 0 {
        return Err(Error::PrimeDividesB { p, b: params.b });
    }
    Ok(())
}

/// Closed-form verdicts that avoid comparing periods.
///
/// The `p = 2` rule needs `a != 0 (mod 4)` and the ramified rule needs the
/// squarefree conditions on `(a, b)`; outside those hypotheses this returns
/// `None` and the caller falls back to the period comparison.
pub fn shortcut_verdict(params: &LucasParams, p: u64) -> Result<Option<bool>> {
    check_query(params, p)?;
    if p == 2 {
        if params.a % 4 == 0 {
            return Ok(None);
        }
        return Ok(Some(params.residues(4) == (3, 3)));
    }
    if params.a % p == 0 {
        let p2 = p * p;
        let same_order = arith::mul_order(params.b, p2)? == arith::mul_order(params.b, p)?;
        return Ok(Some(same_order && params.a % p2 == 0));
    }
    if p >= 5 && params.star_valid && params.delta(p)? == 0 {
        return Ok(Some(false));
    }
    Ok(None)
}

/// `U_{pi(p)} = 0 (mod p^2)`, the weaker congruence implied by the Wall-Sun-Sun condition.
pub fn usub_condition(params: &LucasParams, p: u64) -> Result<bool> {
    check_query(params, p)?;
    let pi = lucas::period_prime(params, p)?.pi;
    Ok(lucas::lucas_u_mod(params, pi, p * p) == 0)
}

/// Certify whether `p` is an `(a, b)`-Wall-Sun-Sun prime. Both periods are
/// always computed, and a fast-path verdict must agree with them.
pub fn is_wss(params: &LucasParams, p: u64) -> Result<WssCertificate> {
    check_query(params, p)?;
    let pi_p = lucas::period_prime(params, p)?.pi;
    let pi_p2 = lucas::period_prime_squared(params, p)?.pi;
    let usub = lucas::lucas_u_mod(params, pi_p, p * p) == 0;
    let by_periods = pi_p == pi_p2;
    let path = match shortcut_verdict(params, p)? {
        Some(verdict) => {
            if verdict != by_periods {
                return Err(Error::Inconsistency(format!(
                    "closed-form verdict {verdict} disagrees with periods pi(p)={pi_p}, pi(p^2)={pi_p2} for (a,b)=({},{}), p={p}",
                    params.a, params.b
                )));
            }
            if p == 2 {
                WssPath::TwoAdicTable
            } else if params.a % p == 0 {
                WssPath::PrimeDividesA
            } else {
                WssPath::RamifiedPrime
            }
        }
        None => WssPath::PeriodCompare,
    };
    Ok(WssCertificate { p, pi_p, pi_p2, is_wss: by_periods, path, usub_condition: usub })
}

/// All Wall-Sun-Sun primes `p <= p_max` (primes dividing `b` are skipped), ascending.
pub fn search_wss(params: &LucasParams, p_max: u64) -> Result<Vec<WssCertificate>> {
    search_wss_jobs(params, p_max, 1)
}

/// [`search_wss`] with the prime range split across `jobs` workers.
pub fn search_wss_jobs(params: &LucasParams, p_max: u64, jobs: usize) -> Result<Vec<WssCertificate>> {
    if p_max < 2 {
        return Err(Error::InvalidParams(format!("p_max must be at least 2, got {p_max}")));
    }
    if p_max > u32::MAX as u64 {
        return Err(Error::InvalidParams(format!("p_max {p_max} exceeds the supported range")));
    }
    let primes: Vec<u64> = arith::primes_up_to(p_max)
        .into_iter()
        .filter(|p| params.b % p != 0)
        .collect();
    let scan = |chunk: &[u64]| -> Result<Vec<WssCertificate>> {
        let mut hits = Vec::new();
        for &p in chunk {
            let cert = is_wss(params, p)?;
            if cert.is_wss {
                hits.push(cert);
            }
        }
        Ok(hits)
    };
    if jobs <= 1 {
        return scan(&primes);
    }
    let chunk = primes.len().div_ceil(jobs * 8).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start {jobs} workers: {e}")))?;
    let parts: Vec<Result<Vec<WssCertificate>>> =
        pool.install(|| primes.par_chunks(chunk).map(scan).collect());
    let mut hits = Vec::new();
    for part in parts {
        hits.extend(part?);
    }
    Ok(hits)
}
