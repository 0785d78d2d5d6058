//! Dense univariate polynomials over `Z` (exact, unbounded coefficients)
//! and over prime fields `F_p`: arithmetic, gcd, factorization over `F_p`,
//! resultants and discriminants.
//!
//! Resultant sign convention: `Res(f, g)` is the determinant of the Sylvester
//! matrix with the rows of `f` on top, i.e.
//! `lc(f)^deg(g) * lc(g)^deg(f) * prod (alpha_i - beta_j)` over the roots of
//! `f` and `g`. In particular `Res(x - a, x - b) = a - b`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Polynomial with integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The trinomial `x^n + a x^m + b`.
    pub fn trinomial(n: usize, m: usize, a: &BigInt, b: &BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        coeffs[m] += a;
        coeffs[0] += b;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divide every coefficient by `c`, or `None` if some division is inexact.
    pub fn exact_div_scalar(&self, c: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = IntPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self = q d + r`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-division by zero polynomial");
        let Some(ds) = self.degree() else { return IntPoly::zero() };
        if ds < dd {
            return self.clone();
        }
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let mut steps = ds - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &t * dc;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps -= 1;
        }
        let mut out = IntPoly::new(r);
        if steps > 0 {
            out = out.scale(&lc.pow(steps as u32));
        }
        out
    }

    /// Reduce coefficients modulo the prime `p`.
    pub fn reduce(&self, p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64"))
                .collect(),
        )
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn write_terms<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (usize, T, bool, bool)>,
) -> fmt::Result {
    // (exponent, |coefficient|, negative, coefficient is one)
    let mut first = true;
    for (i, c, neg, unit) in terms.rev() {
        let sign = match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        f.write_str(sign)?;
        let coef = if unit && i > 0 { String::new() } else { c.to_string() };
        match i {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{coef}x")?,
            _ => write!(f, "{coef}x^{i}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.abs(), c.is_negative(), c.abs().is_one())),
        )
    }
}

/// Resultant via the subresultant pseudo-remainder sequence.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = BigInt::one();
    if df < dg {
        std::mem::swap(&mut a, &mut b);
        if df % 2 == 1 && dg % 2 == 1 {
            sign = -sign;
        }
    }
    let da = a.degree().unwrap();
    if b.degree() == Some(0) {
        return sign * b.lead().pow(da as u32);
    }
    let mut g_s = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        let divisor = &g_s * h.pow(delta as u32);
        b = r.exact_div_scalar(&divisor).expect("subresultant division is exact");
        g_s = a.lead();
        if delta > 0 {
            h = g_s.pow(delta as u32) / h.pow(delta as u32 - 1);
        }
        let da = a.degree().unwrap();
        if b.degree() == Some(0) {
            let num = b.lead().pow(da as u32);
            let h_final = if da == 0 { num * &h } else { num / h.pow(da as u32 - 1) };
            return sign * h_final;
        }
    }
}

/// `(-1)^(N(N-1)/2) * Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidParams("discriminant needs degree >= 1".into()))?;
    let res = resultant(f, &f.derivative());
    let d = res / f.lead();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Polynomial over `F_p`, constant term first, coefficients in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Coefficients are reduced; `p` must be a prime below 2^32.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(p >= 2 && p <= u32::MAX as u64);
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| arith::reduce_signed(c as i128, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Monic lift to `Z[x]` with coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn check(&self, o: &ModPoly) -> Result<()> {
        if self.p == o.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, o.p))
        }
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ModPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ModPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect())
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        ModPoly::new(p, out)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        ModPoly::new(self.p, self.coeffs.iter().map(|&x| mul_mod(x, c, self.p)).collect())
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p).expect("nonzero residue is invertible");
        self.scale(inv)
    }

    pub fn derivative(&self) -> ModPoly {
        ModPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        if self.degree().is_none_or(|s| s < dd) {
            return (ModPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p).expect("invertible leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let t = mul_mod(r[top], inv, p);
            if t == 0 {
                continue;
            }
            q[top - dd] = t;
            let shift = top - dd;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul_mod(t, dc, p)) % p;
            }
        }
        r.truncate(dd);
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.divrem(d).1
    }

    pub fn mul_mod(&self, o: &ModPoly, m: &ModPoly) -> ModPoly {
        self.mul(o).rem(m)
    }

    /// `self^e mod m` for an unbounded exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// `g(x)` with `self = g(x^p)`; valid when the derivative vanishes.
    fn pth_root(&self) -> ModPoly {
        let p = self.p as usize;
        ModPoly::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    fn pow_small(&self, k: u32) -> ModPoly {
        (0..k).fold(ModPoly::one(self.p), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c, false, c == 1)),
        )?;
        write!(f, " (mod {})", self.p)
    }
}

/// Monic gcd of two polynomials over the same field.
pub fn mod_gcd(f: &ModPoly, g: &ModPoly) -> Result<ModPoly> {
    f.check(g)?;
    Ok(f.gcd(g))
}

/// Factorization over `F_p`: `unit * prod factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModFactorization {
    pub unit: u64,
    /// Monic irreducible factors, sorted by degree then coefficients.
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModFactorization {
    pub fn expand(&self, p: u64) -> ModPoly {
        self.factors
            .iter()
            .fold(ModPoly::new(p, vec![self.unit]), |acc, (f, e)| acc.mul(&f.pow_small(*e)))
    }
}

/// Seed for the equal-degree splitting; fixed so runs are reproducible.
const EDF_SEED: u64 = 0x5741_4c4c_5355_4e00;

/// Complete factorization over `F_p`: squarefree decomposition, then
/// distinct-degree and equal-degree (Cantor-Zassenhaus) splitting.
pub fn factor_mod_p(f: &ModPoly) -> Result<ModFactorization> {
    if f.is_zero() {
        return Err(Error::InvalidParams("cannot factor the zero polynomial".into()));
    }
    let unit = f.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ f.p);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree(&part) {
            for irreducible in equal_degree(&block, d, &mut rng) {
                factors.push((irreducible, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(ModFactorization { unit, factors })
}

/// Squarefree parts with multiplicities for a monic polynomial.
fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let p = f.p;
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree_decomposition(&c.monic().pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Split a monic squarefree polynomial into products of equal-degree irreducibles.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = ModPoly::x(p);
    let mut h = x.rem(&rest);
    let pb = BigUint::from(p);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&pb, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest.monic(), deg));
    }
    out
}

/// Split a product of distinct monic irreducibles of degree `d`.
fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    let half_exp = if p == 2 {
        BigUint::zero()
    } else {
        (BigUint::from(p).pow(d as u32) - 1u32) >> 1
    };
    loop {
        let r = ModPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = f.gcd(&r);
        let candidate = if !g.is_one() {
            g
        } else if p == 2 {
            // absolute trace r + r^2 + ... + r^(2^(d-1))
            let mut t = r.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            f.gcd(&acc)
        } else {
            f.gcd(&r.pow_mod(&half_exp, f).sub(&ModPoly::one(p)))
        };
        let cd = candidate.degree().unwrap_or(0);
        if cd > 0 && cd < n {
            let other = f.divrem(&candidate).0;
            let mut out = equal_degree(&candidate, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// True when `f` (nonconstant) is irreducible over `F_p`.
pub fn is_irreducible_mod_p(f: &ModPoly) -> bool {
    let Some(n) = f.degree().filter(|&n| n > 0) else { return false };
    let f = f.monic();
    if !f.gcd(&f.derivative()).is_one() {
        return false;
    }
    let blocks = distinct_degree(&f);
    blocks.len() == 1 && blocks[0].1 == n
}

/// Smallest prime `q <= q_max` with `f mod q` irreducible of full degree;
/// such a `q` certifies irreducibility of the monic `f` over `Q`.
pub fn irreducibility_witness(f: &IntPoly, q_max: u64) -> Option<u64> {
    let n = f.degree()?;
    arith::primes_up_to(q_max).into_iter().find(|&q| {
        let fq = f.reduce(q);
        fq.degree() == Some(n) && is_irreducible_mod_p(&fq)
    })
}

/// `true` when the big integer is divisible by `p`.
pub(crate) fn divisible(x: &BigInt, p: u64) -> bool {
    (x % BigInt::from(p)).is_zero()
}

pub(crate) fn big_to_biguint_abs(x: &BigInt) -> BigUint {
    match x.sign() {
        Sign::Minus => (-x).to_biguint().unwrap(),
        _ => x.to_biguint().unwrap(),
    }
}
