//! Lucas sequences `U_0 = 0, U_1 = 1, U_n = a U_{n-1} + b U_{n-2}` and
//! their period lengths modulo `m`.
//!
//! All fast paths go through the companion matrix `C = [[0, b], [1, a]]`:
//! `C^n = [[b U_{n-1}, b U_n], [U_n, U_{n+1}]]`, so `C^n = I (mod m)` exactly
//! when `(U_n, U_{n+1}) = (0, 1) (mod m)` and the order of `C` is the period.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{self, mul_mod, Factorization, DEFAULT_EFFORT};
use crate::error::{Error, Result};

/// The pair `(a, b)` together with the derived discriminant proxy `dtilde`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LucasParams {
    pub a: u64,
    pub b: u64,
    /// `a^2 + 4b` for odd `a`, `(a/2)^2 + b` for even `a`.
    pub dtilde: u64,
    /// `a != 0 (mod 4)`, `b` squarefree and `dtilde` squarefree.
    pub star_valid: bool,
}

impl LucasParams {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidParams(format!(
                "a and b must be positive integers, got ({a}, {b})"
            )));
        }
        if a > u32::MAX as u64 || b > (u64::MAX >> 4) {
            return Err(Error::InvalidParams(format!("(a, b) = ({a}, {b}) is out of range")));
        }
        let dtilde = if a % 2 == 1 { a * a + 4 * b } else { (a / 2) * (a / 2) + b };
        let star_valid = a % 4 != 0 && arith::is_squarefree(b)? && arith::is_squarefree(dtilde)?;
        Ok(LucasParams { a, b, dtilde, star_valid })
    }

    /// `a^2 + 4b`, the discriminant of `x^2 - a x - b`.
    pub fn disc(&self) -> u128 {
        self.a as u128 * self.a as u128 + 4 * self.b as u128
    }

    /// Legendre symbol of `dtilde` at the odd prime `p`.
    pub fn delta(&self, p: u64) -> Result<i8> {
        arith::jacobi((self.dtilde % p) as i64, p)
    }

    /// `(a mod m, b mod m)`.
    pub fn residues(&self, m: u64) -> (u64, u64) {
        (self.a % m, self.b % m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodMethod {
    BruteIteration,
    MatrixOrder,
    LiftCheck,
    DirectMod2Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodResult {
    pub modulus: u64,
    pub pi: u64,
    pub method: PeriodMethod,
}

/// Per-prime data: the Legendre symbol of `dtilde` and `ord_p(b^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeContext {
    pub p: u64,
    pub delta_p: i8,
    /// `ord_p(b^2)`; `None` when `p | b`.
    pub lambda: Option<u64>,
}

impl PrimeContext {
    /// Context for an odd prime `p`.
    pub fn new(params: &LucasParams, p: u64) -> Result<Self> {
        check_prime(p)?;
        if p == 2 {
            return Err(Error::InvalidParams("prime context needs an odd prime".into()));
        }
        let delta_p = params.delta(p)?;
        let b = params.b % p;
        let lambda = if b == 0 { None } else { Some(arith::mul_order(mul_mod(b, b, p), p)?) };
        Ok(PrimeContext { p, delta_p, lambda })
    }
}

/// 2x2 matrix with entries reduced modulo `m`, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Mat2 {
    e: [[u64; 2]; 2],
    m: u64,
}

impl Mat2 {
    pub(crate) fn identity(m: u64) -> Self {
        Mat2 { e: [[1 % m, 0], [0, 1 % m]], m }
    }

    pub(crate) fn companion(params: &LucasParams, m: u64) -> Self {
        Mat2 { e: [[0, params.b % m], [1 % m, params.a % m]], m }
    }

    fn mul(&self, o: &Mat2) -> Mat2 {
        let m = self.m;
        let dot = |i: usize, j: usize| {
            let s = self.e[i][0] as u128 * o.e[0][j] as u128 + self.e[i][1] as u128 * o.e[1][j] as u128;
            (s % m as u128) as u64
        };
        Mat2 { e: [[dot(0, 0), dot(0, 1)], [dot(1, 0), dot(1, 1)]], m }
    }

    pub(crate) fn pow(&self, mut k: u64) -> Mat2 {
        let mut acc = Mat2::identity(self.m);
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub(crate) fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.m)
    }
}

/// `U_n mod m` in `O(log n)` matrix products.
pub fn lucas_u_mod(params: &LucasParams, n: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    Mat2::companion(params, m).pow(n).e[1][0]
}

/// Exact period by iterating the pair `(U_n, U_{n+1})` until it returns to `(0, 1)`.
pub fn period(params: &LucasParams, m: u64) -> Result<PeriodResult> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("modulus must be at least 2, got {m}")));
    }
    if params.b.gcd(&m) != 1 {
        return Err(Error::NotCoprime { value: params.b, modulus: m });
    }
    let (a, b) = (params.a % m, params.b % m);
    let (mut x, mut y) = (0u64, 1 % m);
    let mut n = 0u64;
    loop {
        let next = ((a as u128 * y as u128 + b as u128 * x as u128) % m as u128) as u64;
        (x, y) = (y, next);
        n += 1;
        if x == 0 && y == 1 {
            return Ok(PeriodResult { modulus: m, pi: n, method: PeriodMethod::BruteIteration });
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn check_period_prime(params: &LucasParams, p: u64) -> Result<()> {
    check_prime(p)?;
    if params.b % p == 0 {
        return Err(Error::PrimeDividesB { p, b: params.b });
    }
    if p > u32::MAX as u64 {
        return Err(Error::InvalidParams(format!("prime {p} exceeds the supported range (< 2^32)")));
    }
    Ok(())
}

fn merge(a: &Factorization, b: &Factorization) -> Factorization {
    let mut factors = a.factors.clone();
    for &(q, e) in &b.factors {
        match factors.iter_mut().find(|(r, _)| *r == q) {
            Some((_, f)) => *f += e,
            None => factors.push((q, e)),
        }
    }
    factors.sort_unstable();
    Factorization { value: a.value * b.value, factors }
}

/// `pi(p)` as the order of the companion matrix in `GL_2(F_p)`.
///
/// The search starts from an exponent of the group containing `C`:
/// `p - 1` when the characteristic polynomial splits, `p^2 - 1` when it is
/// irreducible and `p(p - 1)` when it has a double root.
pub fn period_prime(params: &LucasParams, p: u64) -> Result<PeriodResult> {
    check_period_prime(params, p)?;
    if p == 2 {
        let r = period(params, 2)?;
        return Ok(PeriodResult { method: PeriodMethod::DirectMod2Table, ..r });
    }
    let below = arith::factorize(p - 1, DEFAULT_EFFORT)?;
    let multiple = match params.delta(p)? {
        1 => below,
        -1 => merge(&below, &arith::factorize(p + 1, DEFAULT_EFFORT)?),
        _ => merge(&below, &Factorization { value: p, factors: vec![(p, 1)] }),
    };
    let c = Mat2::companion(params, p);
    let pi = arith::strip_to_order(multiple.value, &multiple, |k| c.pow(k).is_identity());
    Ok(PeriodResult { modulus: p, pi, method: PeriodMethod::MatrixOrder })
}

/// `pi(p^2)`. For odd `p` this is `pi(p)` or `p * pi(p)`, decided by one
/// matrix power modulo `p^2`; `p = 2` is enumerated directly modulo 4.
pub fn period_prime_squared(params: &LucasParams, p: u64) -> Result<PeriodResult> {
    check_period_prime(params, p)?;
    if p == 2 {
        let r = period(params, 4)?;
        return Ok(PeriodResult { method: PeriodMethod::DirectMod2Table, ..r });
    }
    let pi_p = period_prime(params, p)?.pi;
    let p2 = p * p;
    let pi = if Mat2::companion(params, p2).pow(pi_p).is_identity() { pi_p } else { p * pi_p };
    Ok(PeriodResult { modulus: p2, pi, method: PeriodMethod::LiftCheck })
}
