//! Exact integer utilities: primality, factorization, Jacobi symbols,
//! multiplicative orders and squarefreeness.
//!
//! Machine-word inputs use 128-bit intermediates for every modular product,
//! so any modulus below 2^64 is handled exactly. Unbounded inputs go through
//! `num-bigint`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on Pollard-rho iterations per cofactor.
pub const DEFAULT_EFFORT: u64 = 1 << 22;

/// Trial division handles every prime below this bound.
const TRIAL_BOUND: u64 = 10_000;

/// Witness set that makes Miller-Rabin deterministic below 3.3 * 10^24,
/// which covers all of u64.
const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// 3.317044064679887385961981 * 10^24: below this the witness set is a proof.
const MR_DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

#[inline]
pub fn mul_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 * y as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `x` modulo `m`, if it exists.
pub fn inv_mod(x: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (x % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Reduce a signed value into `[0, m)`.
#[inline]
pub fn reduce_signed(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Exponent of the prime `p` in `n` (`n > 0`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Deterministic primality for the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 43 * 43 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Outcome of a primality test on an unbounded integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primality {
    Composite,
    /// Proven prime (deterministic witness set applies).
    Prime,
    /// Passed every witness but lies above the range where the witnesses are a proof.
    ProbablePrime,
}

pub fn is_prime_big(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime(small) { Primality::Prime } else { Primality::Composite };
    }
    for &p in &MR_WITNESSES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return Primality::Composite;
    }
    if n.to_u128().is_some_and(|v| v < MR_DETERMINISTIC_LIMIT) {
        Primality::Prime
    } else {
        Primality::ProbablePrime
    }
}

/// A complete factorization of a machine-word integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Product of the prime powers, as a wide integer so it cannot overflow.
    pub fn recompose(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Euler's totient of `value`.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }
}

/// Factor `n` completely: trial division below 10^4, then Brent's variant of
/// Pollard rho with at most `effort_bound` iterations per split attempt.
pub fn factorize(n: u64, effort_bound: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidParams("cannot factor 0".into()));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p < TRIAL_BOUND && p * p <= rest {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if is_prime(m) {
                primes.push(m);
                continue;
            }
            match split_u64(m, effort_bound) {
                Some(d) => {
                    stack.push(d);
                    stack.push(m / d);
                }
                None => {
                    return Err(Error::IncompleteFactorization {
                        value: n.to_string(),
                        cofactor: m.to_string(),
                    })
                }
            }
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Ok(Factorization { value: n, factors })
}

/// Find a nontrivial divisor of the odd composite `n`.
fn split_u64(n: u64, effort_bound: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let r = isqrt(n);
    if r * r == n {
        return Some(r);
    }
    let mut budget = effort_bound;
    for c in 1..64u64 {
        if budget == 0 {
            break;
        }
        let (found, used) = brent_u64(n, c, budget);
        budget = budget.saturating_sub(used);
        if let Some(d) = found {
            return Some(d);
        }
    }
    None
}

fn brent_u64(n: u64, c: u64, budget: u64) -> (Option<u64>, u64) {
    const BATCH: u64 = 128;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    let mut used = 0;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        used += r;
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += steps;
            used += steps;
        }
        r *= 2;
        if used > budget && g == 1 {
            return (None, used);
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            used += 1;
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 || used > budget {
                break;
            }
        }
    }
    if g == n || g == 1 {
        (None, used)
    } else {
        (Some(g), used)
    }
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// A prime power inside a [`BigFactorization`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigPrimePower {
    pub prime: BigUint,
    pub exponent: u32,
    pub certainty: Primality,
}

/// Factorization of an unbounded positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFactorization {
    pub value: BigUint,
    pub factors: Vec<BigPrimePower>,
}

impl BigFactorization {
    /// True when some factor is only a probable prime.
    pub fn has_probable_factors(&self) -> bool {
        self.factors.iter().any(|f| f.certainty == Primality::ProbablePrime)
    }

    pub fn recompose(&self) -> BigUint {
        self.factors
            .iter()
            .map(|f| f.prime.pow(f.exponent))
            .product()
    }
}

/// Factor an unbounded positive integer. Cofactors that fit a machine word
/// are delegated to [`factorize`]. For wider cofactors `effort_bound` is a
/// budget of word multiplications, so each rho step costs `limbs^2`.
pub fn factorize_big(n: &BigUint, effort_bound: u64) -> Result<BigFactorization> {
    if n.is_zero() {
        return Err(Error::InvalidParams("cannot factor 0".into()));
    }
    let mut found: Vec<(BigUint, Primality)> = Vec::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < TRIAL_BOUND && rest.to_u64().is_none() {
        while (&rest % p).is_zero() {
            found.push((BigUint::from(p), Primality::Prime));
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            let f = factorize(small, effort_bound).map_err(|_| Error::IncompleteFactorization {
                value: n.to_string(),
                cofactor: m.to_string(),
            })?;
            for (q, e) in f.factors {
                for _ in 0..e {
                    found.push((BigUint::from(q), Primality::Prime));
                }
            }
            continue;
        }
        match is_prime_big(&m) {
            Primality::Composite => {}
            certainty => {
                found.push((m, certainty));
                continue;
            }
        }
        match split_big(&m, effort_bound) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => {
                return Err(Error::IncompleteFactorization {
                    value: n.to_string(),
                    cofactor: m.to_string(),
                })
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    let mut factors: Vec<BigPrimePower> = Vec::new();
    for (q, certainty) in found {
        match factors.last_mut() {
            Some(last) if last.prime == q => last.exponent += 1,
            _ => factors.push(BigPrimePower { prime: q, exponent: 1, certainty }),
        }
    }
    Ok(BigFactorization { value: n.clone(), factors })
}

fn split_big(n: &BigUint, effort_bound: u64) -> Option<BigUint> {
    let r = n.sqrt();
    if &r * &r == *n {
        return Some(r);
    }
    let one = BigUint::one();
    // one step costs about limbs^2 word multiplications; charge it that way
    let limbs = n.bits().div_ceil(64).max(1);
    let step = limbs * limbs;
    let mut used = 0u64;
    for c in 1..32u64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut g = one.clone();
        'cycle: while g.is_one() {
            let x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut q = one.clone();
            for _ in 0..r {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
                used += step;
                if used > effort_bound {
                    break;
                }
            }
            g = q.gcd(n);
            r *= 2;
            if used > effort_bound {
                break 'cycle;
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
        if used > effort_bound {
            return None;
        }
    }
    None
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> Result<i8> {
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut a = reduce_signed(a as i128, n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        (a, n) = (n % a, a);
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Multiplicative order of `b` modulo `m`, found by stripping prime factors
/// from the group order phi(m).
pub fn mul_order(b: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("modulus must be at least 2, got {m}")));
    }
    let b = b % m;
    if b.gcd(&m) != 1 {
        return Err(Error::NotCoprime { value: b, modulus: m });
    }
    let phi = factorize(m, DEFAULT_EFFORT)?.totient();
    let phi_factors = factorize(phi, DEFAULT_EFFORT)?;
    Ok(strip_to_order(phi, &phi_factors, |k| pow_mod(b, k, m) == 1))
}

/// Smallest divisor `k` of `multiple` with `is_identity(k)`, assuming
/// `is_identity(multiple)` holds and the predicate is closed under taking
/// multiples (true for any group-element power test).
pub(crate) fn strip_to_order(
    multiple: u64,
    factors: &Factorization,
    mut is_identity: impl FnMut(u64) -> bool,
) -> u64 {
    let mut order = multiple;
    for &(q, e) in &factors.factors {
        for _ in 0..e {
            if order % q == 0 && is_identity(order / q) {
                order /= q;
            } else {
                break;
            }
        }
    }
    order
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidParams("squarefreeness of 0 is undefined".into()));
    }
    Ok(factorize(n, DEFAULT_EFFORT)?.is_squarefree())
}

/// All primes `<= n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}
