use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallsun_core::poly::{discriminant, factor_mod_p, mod_gcd, resultant, IntPoly, ModPoly};

/// Sylvester determinant by fraction-free Bareiss elimination.
fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (n, m) = (f.degree().unwrap(), g.degree().unwrap());
    let size = n + m;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (i, c) in f.coeffs().iter().rev().enumerate() {
            mat[row][row + i] = c.clone();
        }
    }
    for row in 0..n {
        for (i, c) in g.coeffs().iter().rev().enumerate() {
            mat[m + row][row + i] = c.clone();
        }
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[size - 1][size - 1]
}

fn random_int_poly(rng: &mut ChaCha8Rng, deg: usize, monic: bool, span: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-span..=span)).collect();
    if monic {
        c[deg] = 1;
    } else if c[deg] == 0 {
        c[deg] = 1 + rng.gen_range(0..span);
    }
    IntPoly::from_i64(&c)
}

#[test]
fn resultant_matches_sylvester_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..400 {
        let (df, dg) = (rng.gen_range(1..8), rng.gen_range(1..8));
        let f = random_int_poly(&mut rng, df, false, 9);
        let g = random_int_poly(&mut rng, dg, false, 9);
        assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g), "f = {f}, g = {g}");
    }
    // constant operand and the linear sign convention
    let c = IntPoly::from_i64(&[3]);
    let f = IntPoly::from_i64(&[1, 2, 3]);
    assert_eq!(resultant(&c, &f), sylvester_resultant(&c, &f));
    assert_eq!(resultant(&f, &c), sylvester_resultant(&f, &c));
}

#[test]
fn discriminant_of_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let (df, dg) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let f = random_int_poly(&mut rng, df, true, 6);
        let g = random_int_poly(&mut rng, dg, true, 6);
        let lhs = discriminant(&(&f * &g)).unwrap();
        let r = resultant(&f, &g);
        let rhs = discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r;
        assert_eq!(lhs, rhs, "f = {f}, g = {g}");
    }
}

/// Oracle for irreducibility: no roots, and gcd(f, x^(p^d) - x) = 1 for 1 <= d <= deg/2.
fn certainly_irreducible(f: &ModPoly) -> bool {
    let p = f.modulus();
    let n = f.degree().unwrap();
    if n == 1 {
        return true;
    }
    if p <= 31 && (0..p).any(|x| f.eval(x) == 0) {
        return false;
    }
    let x = ModPoly::x(p);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(&p.into(), f);
        if !f.gcd(&h.sub(&x)).is_one() {
            return false;
        }
    }
    true
}

#[test]
fn factorization_reconstructs_and_factors_are_irreducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let primes = [2u64, 3, 5, 13, 31];
    for i in 0..1000 {
        let p = primes[i % primes.len()];
        let deg = rng.gen_range(1..=64);
        let mut c: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
        c[deg] = rng.gen_range(1..p);
        // bias toward repeated factors in a quarter of the cases
        let mut f = ModPoly::new(p, c);
        if i % 4 == 0 && deg <= 20 {
            f = f.mul(&f).mul(&ModPoly::new(p, vec![1, 1]));
        }
        let fac = factor_mod_p(&f).unwrap();
        assert_eq!(fac.expand(p), f, "p = {p}");
        for (g, e) in &fac.factors {
            assert!(*e >= 1);
            assert_eq!(g.lead(), 1);
            assert!(certainly_irreducible(g), "{g} reported irreducible");
        }
    }
}

/// Brute-force gcd: highest-degree monic polynomial dividing both.
fn brute_gcd(f: &ModPoly, g: &ModPoly) -> ModPoly {
    let p = f.modulus();
    if f.is_zero() && g.is_zero() {
        return ModPoly::zero(p);
    }
    let bound = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
    let mut best = ModPoly::one(p);
    for deg in 1..=bound {
        let count = p.pow(deg as u32);
        for idx in 0..count {
            let mut c = Vec::with_capacity(deg + 1);
            let mut v = idx;
            for _ in 0..deg {
                c.push(v % p);
                v /= p;
            }
            c.push(1);
            let d = ModPoly::new(p, c);
            if f.rem(&d).is_zero() && g.rem(&d).is_zero() {
                best = d;
            }
        }
    }
    best
}

#[test]
fn gcd_exhaustive_small_fields() {
    for p in [2u64, 3] {
        let total = p.pow(4);
        let all: Vec<ModPoly> = (0..total)
            .map(|idx| {
                let mut v = idx;
                ModPoly::new(p, (0..4).map(|_| { let c = v % p; v /= p; c }).collect())
            })
            .collect();
        for f in &all {
            for g in &all {
                assert_eq!(mod_gcd(f, g).unwrap(), brute_gcd(f, g), "f = {f}, g = {g}");
            }
        }
    }
}

proptest! {
    #[test]
    fn int_poly_ring_laws(
        a in proptest::collection::vec(-50i64..50, 0..8),
        b in proptest::collection::vec(-50i64..50, 0..8),
        x in -20i64..20,
    ) {
        let (f, g) = (IntPoly::from_i64(&a), IntPoly::from_i64(&b));
        let x = BigInt::from(x);
        prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
        prop_assert_eq!((&f + &g).eval(&x), f.eval(&x) + g.eval(&x));
        prop_assert_eq!(&(&f - &g) + &g, f);
    }
}
