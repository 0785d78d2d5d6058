//! Monogenicity of trinomials.
//!
//! A monic irreducible `T` with root `theta` is monogenic when
//! `Z[theta]` is the full ring of integers, i.e. no prime divides the index
//! `[Z_K : Z[theta]]`. Only primes dividing `disc(T)` can divide the index,
//! so every engine here decides index coprimality prime by prime:
//!
//! * [`jks_prime_check`] uses the closed-form trinomial criteria,
//! * [`dedekind_index_coprime`] runs Dedekind's criterion on any monic `T`.
//!
//! For the power-compositional family `F_n(x) = x^(2 s^n) - a x^(s^n) - b`
//! the verdict is predicted by whether a prime divisor of `s` is an
//! `(a, b)`-Wall-Sun-Sun prime; [`cross_validate`] computes both sides.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, inv_mod, mul_mod, reduce_signed, DEFAULT_EFFORT};
use crate::error::{Error, Result};
use crate::lucas::LucasParams;
use crate::poly::{self, big_to_biguint_abs, divisible, IntPoly, ModPoly};
use crate::wss;

/// The trinomial `x^N + A x^M + B` with the quantities of Swan's formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrinomialSpec {
    /// `N`
    pub degree: u64,
    /// `M`, with `0 < M < N`
    pub middle: u64,
    /// `A`
    pub coef_a: i64,
    /// `B`
    pub coef_b: i64,
    /// `gcd(N, M)`
    pub r: u64,
    pub n1: u64,
    pub m1: u64,
    /// `N^N1 B^(N1-M1) - (-1)^N1 M^M1 (N-M)^(N1-M1) A^N1`
    #[serde(with = "bigint_string")]
    pub d: BigInt,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn pow_big(base: i64, e: u64) -> BigInt {
    BigInt::from(base).pow(e as u32)
}

impl TrinomialSpec {
    pub fn new(degree: u64, middle: u64, coef_a: i64, coef_b: i64) -> Result<Self> {
        if middle == 0 || middle >= degree {
            return Err(Error::InvalidParams(format!(
                "need 0 < M < N, got N = {degree}, M = {middle}"
            )));
        }
        if degree > u32::MAX as u64 {
            return Err(Error::InvalidParams(format!("degree {degree} is too large")));
        }
        let r = degree.gcd(&middle);
        let (n1, m1) = (degree / r, middle / r);
        let first = pow_big(degree as i64, n1) * pow_big(coef_b, n1 - m1);
        let mut second = pow_big(middle as i64, m1)
            * pow_big((degree - middle) as i64, n1 - m1)
            * pow_big(coef_a, n1);
        if n1 % 2 == 1 {
            second = -second;
        }
        Ok(TrinomialSpec { degree, middle, coef_a, coef_b, r, n1, m1, d: first - second })
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::trinomial(
            self.degree as usize,
            self.middle as usize,
            &BigInt::from(self.coef_a),
            &BigInt::from(self.coef_b),
        )
    }

    /// `p | disc`, decided from the factored Swan form.
    pub fn prime_divides_discriminant(&self, p: u64) -> bool {
        (self.middle > 1 && self.coef_b.unsigned_abs() % p == 0) || divisible(&self.d, p)
    }
}

/// `disc = sign * B^(M-1) * D^r`, kept in factored form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwanDiscriminant {
    /// `(-1)^(N(N-1)/2)`
    pub sign: i8,
    pub b: i64,
    pub b_exponent: u64,
    #[serde(with = "bigint_string")]
    pub d: BigInt,
    pub d_exponent: u64,
}

impl SwanDiscriminant {
    /// Expand to the exact integer; only sensible for small degrees.
    pub fn value(&self) -> BigInt {
        let v = pow_big(self.b, self.b_exponent) * self.d.pow(self.d_exponent as u32);
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }
}

pub fn swan_discriminant(t: &TrinomialSpec) -> SwanDiscriminant {
    let n = t.degree;
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
    SwanDiscriminant { sign, b: t.coef_b, b_exponent: t.middle - 1, d: t.d.clone(), d_exponent: t.r }
}

/// `F_n(x) = f(x^(s^n))` for `f(x) = x^2 - a x - b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCompositionalSpec {
    pub params: LucasParams,
    pub s: u64,
    pub n: u32,
}

/// Largest `s^n` accepted; keeps `F_n` at a few thousand coefficients.
const MAX_INNER_DEGREE: u64 = 1 << 12;

impl PowerCompositionalSpec {
    pub fn new(params: LucasParams, s: u64, n: u32) -> Result<Self> {
        if s == 0 || n == 0 {
            return Err(Error::InvalidParams(format!("need s >= 1 and n >= 1, got s = {s}, n = {n}")));
        }
        if s.checked_pow(n).is_none_or(|v| v > MAX_INNER_DEGREE) {
            return Err(Error::InvalidParams(format!("s^n = {s}^{n} exceeds {MAX_INNER_DEGREE}")));
        }
        Ok(PowerCompositionalSpec { params, s, n })
    }

    /// `s^n`
    pub fn inner_degree(&self) -> u64 {
        self.s.pow(self.n)
    }

    /// `x^(2 s^n) + (-a) x^(s^n) + (-b)`.
    pub fn trinomial(&self) -> Result<TrinomialSpec> {
        let k = self.inner_degree();
        TrinomialSpec::new(2 * k, k, -(self.params.a as i64), -(self.params.b as i64))
    }

    pub fn to_poly(&self) -> IntPoly {
        let k = self.inner_degree() as usize;
        IntPoly::trinomial(
            2 * k,
            k,
            &BigInt::from(-(self.params.a as i64)),
            &BigInt::from(-(self.params.b as i64)),
        )
    }
}

/// Primes dividing `disc(F_n) = (-b)^(s^n - 1) s^(2n s^n) (a^2 + 4b)^(s^n)`,
/// read off the factored form. Primes of `b` only appear when `s >= 2`.
pub fn disc_primes(spec: &PowerCompositionalSpec) -> Result<Vec<u64>> {
    let params = &spec.params;
    if !params.star_valid {
        return Err(Error::NotStarValid { a: params.a, b: params.b });
    }
    let disc = params
        .disc()
        .to_u64()
        .ok_or_else(|| Error::InvalidParams("a^2 + 4b exceeds 64 bits".into()))?;
    let mut primes: Vec<u64> = arith::factorize(disc, DEFAULT_EFFORT)?.primes().collect();
    if spec.s >= 2 {
        primes.extend(arith::factorize(params.b, DEFAULT_EFFORT)?.primes());
        primes.extend(arith::factorize(spec.s, DEFAULT_EFFORT)?.primes());
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// Dedekind's criterion: `true` iff `p` does not divide `[Z_K : Z[theta]]`
/// for a root `theta` of the monic irreducible `t`.
pub fn dedekind_index_coprime(t: &IntPoly, p: u64) -> Result<bool> {
    if !t.is_monic() || t.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidParams("Dedekind's criterion needs a monic nonconstant polynomial".into()));
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > u32::MAX as u64 {
        return Err(Error::InvalidParams(format!("prime {p} exceeds the supported range (< 2^32)")));
    }
    let t_bar = t.reduce(p);
    let factors = poly::factor_mod_p(&t_bar)?;
    let mut g = IntPoly::one();
    let mut g_bar = ModPoly::one(p);
    for (tau, _) in &factors.factors {
        g = &g * &tau.lift();
        g_bar = g_bar.mul(tau);
    }
    let (h_bar, rem) = t_bar.divrem(&g_bar);
    if !rem.is_zero() {
        return Err(Error::Inconsistency(format!("radical does not divide {t} mod {p}")));
    }
    let h = h_bar.lift();
    let f = (&(&g * &h) - t)
        .exact_div_scalar(&BigInt::from(p))
        .ok_or_else(|| Error::Inconsistency(format!("g*h - T is not divisible by {p} for T = {t}")))?;
    let common = f.reduce(p).gcd(&g_bar).gcd(&h_bar);
    Ok(common.is_one())
}

/// Which rule decided a per-prime index verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexRule {
    /// `p | A` and `p | B`: coprime iff `p^2` does not divide `B`.
    SharedFactorAB,
    /// `p | A`, `p` does not divide `B`.
    FactorOfAOnly,
    /// `p | B`, `p` does not divide `A`.
    FactorOfBOnly,
    /// `p` divides `M` but not `AB`: coprimality of the auxiliary `G`, `H` mod `p`.
    FactorOfMiddle,
    /// `p` divides none of `A`, `B`, `M`: `p^2` must not divide `D / r^N1`.
    CoprimeToABM,
    /// Generic Dedekind criterion.
    DedekindGeneric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexVerdict {
    pub index_coprime: bool,
    pub rule: IndexRule,
}

/// `x mod p` for a signed big integer, in `[0, p)`.
fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// `(c + (-c)^(p^k)) / p mod p`, computed exactly through arithmetic mod `p^2`.
fn frobenius_quotient(c: i64, p: u64, k: u32) -> u64 {
    let p2 = BigInt::from(p) * p;
    let exp = BigUint::from(p).pow(k);
    let neg = BigInt::from(-c).mod_floor(&p2);
    let pow = neg.to_biguint().unwrap().modpow(&exp, &p2.to_biguint().unwrap());
    let sum = (BigInt::from(c) + BigInt::from(pow)).mod_floor(&p2);
    debug_assert!(divisible(&sum, p));
    residue(&(sum / p), p)
}

fn pow_res(x: u64, e: u64, p: u64) -> u64 {
    arith::pow_mod(x, e, p)
}

/// Closed-form index test for a trinomial at a prime `p | disc(t)`.
/// The trinomial must be irreducible (asserted by the caller).
pub fn jks_prime_check(t: &TrinomialSpec, p: u64) -> Result<IndexVerdict> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !t.prime_divides_discriminant(p) {
        return Err(Error::InvalidParams(format!("{p} does not divide the discriminant")));
    }
    let pi = p as i128;
    let (a, b) = (t.coef_a, t.coef_b);
    let pa = (a as i128) % pi == 0;
    let pb = (b as i128) % pi == 0;
    let pm = t.middle % p == 0;
    let neg = |x: u64| (p - x % p) % p;

    let verdict = match (pa, pb) {
        (true, true) => IndexVerdict {
            index_coprime: (b as i128) % (pi * pi) != 0,
            rule: IndexRule::SharedFactorAB,
        },
        (true, false) => {
            let a2 = reduce_signed((a as i128) / pi, p);
            let e = arith::valuation(t.degree, p);
            let b1 = frobenius_quotient(b, p, e);
            let bm = reduce_signed(b as i128, p);
            let inner = (mul_mod(pow_res(neg(bm), t.m1, p), pow_res(a2, t.n1, p), p) + p
                - pow_res(neg(b1), t.n1, p))
                % p;
            let ok = (a2 == 0 && b1 != 0) || mul_mod(a2, inner, p) != 0;
            IndexVerdict { index_coprime: ok, rule: IndexRule::FactorOfAOnly }
        }
        (false, true) => {
            let j = arith::valuation(t.degree - t.middle, p);
            let a1 = frobenius_quotient(a, p, j);
            let b2 = reduce_signed((b as i128) / pi, p);
            let am = reduce_signed(a as i128, p);
            let d = t.n1 - t.m1;
            let inner = (mul_mod(pow_res(neg(am), t.m1, p), pow_res(a1, d, p), p) + p
                - pow_res(neg(b2), d, p))
                % p;
            let prod = mul_mod(mul_mod(a1, pow_res(b2, t.middle - 1, p), p), inner, p);
            let ok = (a1 == 0 && b2 != 0) || prod != 0;
            IndexVerdict { index_coprime: ok, rule: IndexRule::FactorOfBOnly }
        }
        (false, false) if pm => IndexVerdict {
            index_coprime: middle_factor_coprime(t, p)?,
            rule: IndexRule::FactorOfMiddle,
        },
        (false, false) => {
            let r_pow = BigInt::from(t.r).pow(t.n1 as u32);
            let (q, rem) = t.d.div_rem(&r_pow);
            if !rem.is_zero() {
                return Err(Error::Inconsistency(format!("r^N1 does not divide D = {}", t.d)));
            }
            IndexVerdict {
                index_coprime: !(q % (BigInt::from(p) * p)).is_zero(),
                rule: IndexRule::CoprimeToABM,
            }
        }
    };
    Ok(verdict)
}

/// `p | M`, `p` coprime to `AB`: with `N = u p^m`, `M = v p^m`, test whether
/// `G = x^u + A x^v + B` and `H = (A x^M + B + (-A x^v - B)^(p^m)) / p` are
/// coprime modulo `p`. Both are built over the integers.
fn middle_factor_coprime(t: &TrinomialSpec, p: u64) -> Result<bool> {
    if p > u32::MAX as u64 {
        return Err(Error::InvalidParams(format!("prime {p} exceeds the supported range (< 2^32)")));
    }
    let m = arith::valuation(t.degree, p).min(arith::valuation(t.middle, p));
    let pm = p.pow(m);
    let (u, v) = ((t.degree / pm) as usize, (t.middle / pm) as usize);
    let a = BigInt::from(t.coef_a);
    let b = BigInt::from(t.coef_b);
    let g = IntPoly::trinomial(u, v, &a, &b);

    // (-A y - B)^(p^m) with y = x^v, expanded by the binomial theorem
    let k = pm as usize;
    let (na, nb) = (-&a, -&b);
    let mut coeffs = vec![BigInt::zero(); k * v + 1];
    let mut binom = BigInt::one();
    for j in 0..=k {
        coeffs[j * v] = &binom * na.pow(j as u32) * nb.pow((k - j) as u32);
        binom = binom * (k - j) / (j + 1);
    }
    let mut numerator = IntPoly::new(coeffs);
    numerator = &numerator + &IntPoly::monomial(a.clone(), t.middle as usize);
    numerator = &numerator + &IntPoly::monomial(b.clone(), 0);
    let h = numerator
        .exact_div_scalar(&BigInt::from(p))
        .ok_or_else(|| Error::Inconsistency(format!("auxiliary numerator not divisible by {p}")))?;
    Ok(g.reduce(p).gcd(&h.reduce(p)).is_one())
}

/// `c + d * alpha` in `(Z / q Z)[x] / (x^2 - a x - b)` with `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadElem {
    pub c: u64,
    pub d: u64,
    pub modulus: u64,
    a: u64,
    b: u64,
}

impl QuadElem {
    pub fn new(c: u64, d: u64, modulus: u64, params: &LucasParams) -> Self {
        QuadElem { c: c % modulus, d: d % modulus, modulus, a: params.a % modulus, b: params.b % modulus }
    }

    pub fn one(modulus: u64, params: &LucasParams) -> Self {
        Self::new(1, 0, modulus, params)
    }

    /// The class of `x`, a root of `x^2 - a x - b`.
    pub fn alpha(modulus: u64, params: &LucasParams) -> Self {
        Self::new(0, 1, modulus, params)
    }

    pub fn scalar(&self, c: u64) -> Self {
        QuadElem { c: c % self.modulus, d: 0, ..*self }
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0 && self.d == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        let q = self.modulus;
        QuadElem { c: (self.c + o.c) % q, d: (self.d + o.d) % q, ..*self }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let q = self.modulus;
        QuadElem { c: (self.c + q - o.c) % q, d: (self.d + q - o.d) % q, ..*self }
    }

    /// `(c1 + d1 a)(c2 + d2 a) = (c1 c2 + d1 d2 b) + (c1 d2 + c2 d1 + d1 d2 a) alpha`.
    pub fn mul(&self, o: &Self) -> Self {
        let q = self.modulus;
        let dd = mul_mod(self.d, o.d, q);
        let c = (mul_mod(self.c, o.c, q) + mul_mod(dd, self.b, q)) % q;
        let d = (mul_mod(self.c, o.d, q) + mul_mod(o.c, self.d, q) + mul_mod(dd, self.a, q)) % q;
        QuadElem { c, d, ..*self }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = QuadElem { c: 1 % self.modulus, d: 0, ..*self };
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

    /// `self^2 - a self - b`.
    pub fn eval_quadratic(&self) -> Self {
        let a = self.scalar(self.a);
        let b = self.scalar(self.b);
        self.mul(self).sub(&a.mul(self)).sub(&b)
    }
}

pub fn quad_pow(base: &QuadElem, k: u64) -> QuadElem {
    base.pow(k)
}

fn check_main2_prime(params: &LucasParams, p: u64) -> Result<i8> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 || p > u32::MAX as u64 {
        return Err(Error::InvalidParams(format!("need an odd prime below 2^32, got {p}")));
    }
    if params.b % p == 0 {
        return Err(Error::PrimeDividesB { p, b: params.b });
    }
    let delta = params.delta(p)?;
    if delta == 1 {
        return Err(Error::SplitPrime { p });
    }
    Ok(delta)
}

fn vanishes_after_frobenius(root: QuadElem, p: u64, m: u32) -> bool {
    let mut x = root;
    for _ in 0..m {
        x = x.pow(p);
    }
    x.eval_quadratic().is_zero()
}

/// `f(alpha^(p^m)) = 0 (mod p^2)` in the quadratic order modulo `p^2`.
///
/// For a ramified `p` the root is the scalar `a / 2 (mod p^2)`.
pub fn frobenius_root_check(params: &LucasParams, p: u64, m: u32) -> Result<bool> {
    let delta = check_main2_prime(params, p)?;
    let p2 = p * p;
    let root = if delta == -1 {
        QuadElem::alpha(p2, params)
    } else {
        let half = inv_mod(2, p2).expect("p is odd");
        QuadElem::new(mul_mod(params.a % p2, half, p2), 0, p2, params)
    };
    Ok(vanishes_after_frobenius(root, p, m))
}

/// Ramified case only: the same test at the lift `a/2 + k p` of the double root.
pub fn frobenius_lift_check(params: &LucasParams, p: u64, m: u32, k: u64) -> Result<bool> {
    if check_main2_prime(params, p)? != 0 {
        return Err(Error::InvalidParams(format!("{p} is not ramified")));
    }
    let p2 = p * p;
    let half = inv_mod(2, p2).expect("p is odd");
    let c = (mul_mod(params.a % p2, half, p2) + mul_mod(k % p, p, p2)) % p2;
    Ok(vanishes_after_frobenius(QuadElem::new(c, 0, p2, params), p, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IrreducibilitySource {
    /// Guaranteed for `F_n` by the squarefree/parity conditions on `(a, b)`.
    SquarefreeParityConditions,
    /// Irreducible modulo the prime `q`, hence over `Q`.
    CertifiedModPrime { q: u64 },
    AssumedByCaller,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeVerdict {
    pub p: u64,
    pub index_coprime: bool,
    pub decided_by: IndexRule,
    /// Dedekind's verdict when the cross-check ran.
    pub dedekind: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonogenicityReport {
    pub poly: TrinomialSpec,
    pub prime_verdicts: Vec<PrimeVerdict>,
    pub monogenic: bool,
    pub irreducibility_source: IrreducibilitySource,
    /// Prediction from the Wall-Sun-Sun side, when the hypotheses hold.
    pub prediction: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonoOptions {
    /// Also run Dedekind's criterion at every prime and fail on disagreement.
    pub dedekind_cross_check: bool,
}

impl Default for MonoOptions {
    fn default() -> Self {
        MonoOptions { dedekind_cross_check: cfg!(debug_assertions) }
    }
}

fn verdict_at(t: &TrinomialSpec, poly: &IntPoly, p: u64, opts: MonoOptions) -> Result<PrimeVerdict> {
    let jks = jks_prime_check(t, p)?;
    let dedekind = if opts.dedekind_cross_check && p <= u32::MAX as u64 {
        let d = dedekind_index_coprime(poly, p)?;
        if d != jks.index_coprime {
            return Err(Error::Inconsistency(format!(
                "closed-form rule {:?} says {} but Dedekind says {d} for {poly} at p = {p}",
                jks.rule, jks.index_coprime
            )));
        }
        Some(d)
    } else {
        None
    };
    Ok(PrimeVerdict { p, index_coprime: jks.index_coprime, decided_by: jks.rule, dedekind })
}

/// Decide monogenicity of `F_n` prime by prime.
pub fn is_monogenic_family(spec: &PowerCompositionalSpec) -> Result<MonogenicityReport> {
    is_monogenic_family_with(spec, MonoOptions::default())
}

pub fn is_monogenic_family_with(spec: &PowerCompositionalSpec, opts: MonoOptions) -> Result<MonogenicityReport> {
    let params = &spec.params;
    if !params.star_valid {
        return Err(Error::NotStarValid { a: params.a, b: params.b });
    }
    let t = spec.trinomial()?;
    let poly = spec.to_poly();
    let prime_verdicts = disc_primes(spec)?
        .into_iter()
        .map(|p| verdict_at(&t, &poly, p, opts))
        .collect::<Result<Vec<_>>>()?;
    let monogenic = prime_verdicts.iter().all(|v| v.index_coprime);
    let prediction = if prediction_hypotheses(params, spec.s)?.overall {
        Some(predict_monogenic(params, spec.s)?)
    } else {
        None
    };
    Ok(MonogenicityReport {
        poly: t,
        prime_verdicts,
        monogenic,
        irreducibility_source: IrreducibilitySource::SquarefreeParityConditions,
        prediction,
    })
}

/// Monogenicity of an arbitrary trinomial. Every prime factor of
/// `B^(M-1) D^r` is checked with the closed-form rule and, when requested,
/// with Dedekind's criterion. Irreducibility is certified modulo a small
/// prime when possible; otherwise it is assumed.
pub fn trinomial_report(t: &TrinomialSpec, opts: MonoOptions, effort: u64) -> Result<MonogenicityReport> {
    if t.d.is_zero() || t.coef_b == 0 {
        return Err(Error::InvalidParams("trinomial has a repeated root (zero discriminant)".into()));
    }
    let poly = t.to_poly();
    let source = match poly::irreducibility_witness(&poly, 1000) {
        Some(q) => IrreducibilitySource::CertifiedModPrime { q },
        None => IrreducibilitySource::AssumedByCaller,
    };
    let mut primes = Vec::new();
    if t.middle > 1 {
        primes.extend(arith::factorize(t.coef_b.unsigned_abs(), effort)?.primes());
    }
    for f in arith::factorize_big(&big_to_biguint_abs(&t.d), effort)?.factors {
        let p = f.prime.to_u64().ok_or_else(|| {
            Error::InvalidParams(format!("discriminant prime factor {} exceeds 64 bits", f.prime))
        })?;
        primes.push(p);
    }
    primes.sort_unstable();
    primes.dedup();
    let prime_verdicts = primes
        .into_iter()
        .map(|p| verdict_at(t, &poly, p, opts))
        .collect::<Result<Vec<_>>>()?;
    let monogenic = prime_verdicts.iter().all(|v| v.index_coprime);
    Ok(MonogenicityReport {
        poly: t.clone(),
        prime_verdicts,
        monogenic,
        irreducibility_source: source,
        prediction: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub star: bool,
    pub gcd_bs: bool,
    pub delta_conditions: bool,
    pub overall: bool,
}

/// Hypotheses of the Wall-Sun-Sun/monogenicity equivalence, flagged separately:
/// `(a, b)` star-valid, `gcd(b, s) = 1`, `delta_p != 1` for odd `p | s`,
/// and `delta_3 = -1` when `3 | s`.
pub fn prediction_hypotheses(params: &LucasParams, s: u64) -> Result<HypothesisReport> {
    if s == 0 {
        return Err(Error::InvalidParams("s must be positive".into()));
    }
    let star = params.star_valid;
    let gcd_bs = params.b.gcd(&s) == 1;
    let mut delta_conditions = true;
    for p in arith::factorize(s, DEFAULT_EFFORT)?.primes().filter(|&p| p >= 3) {
        let delta = params.delta(p)?;
        if delta == 1 || (p == 3 && delta != -1) {
            delta_conditions = false;
        }
    }
    Ok(HypothesisReport { star, gcd_bs, delta_conditions, overall: star && gcd_bs && delta_conditions })
}

/// Monogenic iff no prime divisor of `s` is an `(a, b)`-Wall-Sun-Sun prime.
/// Independent of `n`; refuses inputs outside the hypotheses.
pub fn predict_monogenic(params: &LucasParams, s: u64) -> Result<bool> {
    if !prediction_hypotheses(params, s)?.overall {
        return Err(Error::HypothesesNotMet { a: params.a, b: params.b, s });
    }
    for p in arith::factorize(s, DEFAULT_EFFORT)?.primes() {
        if wss::is_wss(params, p)?.is_wss {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossRow {
    pub n: u32,
    pub predicted: Option<bool>,
    pub computed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub a: u64,
    pub b: u64,
    pub s: u64,
    pub hypotheses: HypothesisReport,
    pub rows: Vec<CrossRow>,
    /// `None` outside the prediction hypotheses, where nothing is predicted.
    pub agree: Option<bool>,
    /// All computed verdicts coincide across `n`.
    pub n_independent: bool,
}

impl CrossValidation {
    pub fn outside_hypotheses(&self) -> bool {
        !self.hypotheses.overall
    }
}

/// Compare the prediction with the computed verdict for `n = 1..=n_max`.
pub fn cross_validate(params: &LucasParams, s: u64, n_max: u32) -> Result<CrossValidation> {
    cross_validate_with(params, s, n_max, MonoOptions::default())
}

pub fn cross_validate_with(params: &LucasParams, s: u64, n_max: u32, opts: MonoOptions) -> Result<CrossValidation> {
    if n_max == 0 {
        return Err(Error::InvalidParams("n_max must be positive".into()));
    }
    let hypotheses = prediction_hypotheses(params, s)?;
    let predicted = if hypotheses.overall { Some(predict_monogenic(params, s)?) } else { None };
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let spec = PowerCompositionalSpec::new(*params, s, n)?;
        let report = is_monogenic_family_with(&spec, opts)?;
        rows.push(CrossRow { n, predicted, computed: report.monogenic });
    }
    let agree = predicted.map(|p| rows.iter().all(|r| r.computed == p));
    let n_independent = rows.windows(2).all(|w| w[0].computed == w[1].computed);
    Ok(CrossValidation { a: params.a, b: params.b, s, hypotheses, rows, agree, n_independent })
}
