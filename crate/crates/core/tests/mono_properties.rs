use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallsun_core::arith;
use wallsun_core::lucas::{period_prime, period_prime_squared, LucasParams};
use wallsun_core::mono::{
    cross_validate, dedekind_index_coprime, is_monogenic_family, jks_prime_check, frobenius_root_check,
    frobenius_lift_check, swan_discriminant, trinomial_report, MonoOptions, PowerCompositionalSpec,
    QuadElem, TrinomialSpec,
};
use wallsun_core::poly::{discriminant, irreducibility_witness};
use wallsun_core::wss::is_wss;

fn star_pairs(count: usize, seed: u64, bound: u64) -> Vec<LucasParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let params = LucasParams::new(rng.gen_range(1..bound), rng.gen_range(1..bound)).unwrap();
        if params.star_valid {
            out.push(params);
        }
    }
    out
}

fn nonzero(rng: &mut ChaCha8Rng, span: i64) -> i64 {
    loop {
        let v = rng.gen_range(-span..=span);
        if v != 0 {
            return v;
        }
    }
}

#[test]
fn swan_matches_resultant_on_random_trinomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..300 {
        let n = rng.gen_range(2..=24);
        let m = rng.gen_range(1..n);
        let t = TrinomialSpec::new(n, m, nonzero(&mut rng, 1000), nonzero(&mut rng, 1000)).unwrap();
        assert_eq!(swan_discriminant(&t).value(), discriminant(&t.to_poly()).unwrap(), "{}", t.to_poly());
    }
}

#[test]
fn family_discriminant_closed_form() {
    for params in star_pairs(40, 8, 40) {
        let (a, b) = (params.a as i64, params.b as i64);
        for s in 1..=6u64 {
            let spec = PowerCompositionalSpec::new(params, s, 1).unwrap();
            let k = s as u32;
            let expected = BigInt::from(-b).pow(k - 1) * BigInt::from(s).pow(2 * k) * BigInt::from(a * a + 4 * b).pow(k);
            let swan = swan_discriminant(&spec.trinomial().unwrap()).value();
            assert_eq!(swan, expected, "(a,b,s)=({a},{b},{s})");
            if s <= 3 {
                assert_eq!(discriminant(&spec.to_poly()).unwrap(), expected);
            }
        }
    }
}

#[test]
fn closed_form_rule_agrees_with_dedekind() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut compared = 0;
    let mut blocked = 0;
    while compared < 150 {
        let n = rng.gen_range(2..=30);
        let m = rng.gen_range(1..n);
        // small primes on purpose, so that the rarer branches are hit
        let span = if rng.gen_bool(0.5) { 12 } else { 200 };
        let t = TrinomialSpec::new(n, m, nonzero(&mut rng, span), nonzero(&mut rng, span)).unwrap();
        let poly = t.to_poly();
        if irreducibility_witness(&poly, 1000).is_none() {
            continue;
        }
        for p in arith::primes_up_to(100) {
            if !t.prime_divides_discriminant(p) {
                continue;
            }
            let jks = jks_prime_check(&t, p).unwrap();
            assert_eq!(jks.index_coprime, dedekind_index_coprime(&poly, p).unwrap(), "{poly} at p = {p} ({:?})", jks.rule);
            if !jks.index_coprime {
                blocked += 1;
            }
        }
        compared += 1;
    }
    assert!(blocked > 0, "corpus never exercises a non-coprime index");
}

#[test]
fn quadratics_are_monogenic() {
    let opts = MonoOptions { dedekind_cross_check: true };
    for params in star_pairs(100, 1, 10_000) {
        let t = TrinomialSpec::new(2, 1, -(params.a as i64), -(params.b as i64)).unwrap();
        let report = trinomial_report(&t, opts, arith::DEFAULT_EFFORT).unwrap();
        assert!(report.monogenic, "(a,b)=({},{})", params.a, params.b);
    }
}

fn inert_primes(params: &LucasParams, bound: u64) -> Vec<u64> {
    arith::primes_up_to(bound)
        .into_iter()
        .skip(1)
        .filter(|&p| params.b % p != 0 && params.delta(p).unwrap() == -1)
        .collect()
}

/// Exact multiplicative order of `x` given a known multiple.
fn element_order(x: &QuadElem, multiple: u64, one: &QuadElem) -> u64 {
    assert_eq!(&x.pow(multiple), one);
    let mut order = multiple;
    for q in arith::factorize(multiple, arith::DEFAULT_EFFORT).unwrap().primes() {
        while order % q == 0 && &x.pow(order / q) == one {
            order /= q;
        }
    }
    order
}

#[test]
fn root_order_equals_period_at_inert_primes() {
    for params in star_pairs(12, 200, 60) {
        for p in inert_primes(&params, 200) {
            // modulo p: walk the powers of alpha one at a time
            let one = QuadElem::one(p, &params);
            let alpha = QuadElem::alpha(p, &params);
            let mut x = alpha;
            let mut walk = 1;
            while x != one {
                x = x.mul(&alpha);
                walk += 1;
            }
            assert_eq!(walk, period_prime(&params, p).unwrap().pi, "(a,b)=({},{}) p={p}", params.a, params.b);

            let p2 = p * p;
            let one = QuadElem::one(p2, &params);
            let alpha = QuadElem::alpha(p2, &params);
            let order = element_order(&alpha, p * (p * p - 1), &one);
            assert_eq!(order, period_prime_squared(&params, p).unwrap().pi);

            // alpha^(p+1) = -b (mod p)
            let frob = QuadElem::alpha(p, &params).pow(p + 1);
            assert_eq!((frob.c, frob.d), (p - params.b % p, 0));
        }
    }
}

#[test]
fn wss_iff_root_survives_frobenius() {
    for params in star_pairs(30, 31, 500) {
        for p in inert_primes(&params, 200) {
            let wss = is_wss(&params, p).unwrap().is_wss;
            assert_eq!(frobenius_root_check(&params, p, 1).unwrap(), wss, "(a,b)=({},{}) p={p}", params.a, params.b);
            assert_eq!(frobenius_root_check(&params, p, 2).unwrap(), wss);
        }
    }
}

#[test]
fn ramified_primes_never_block() {
    let mut seen = 0;
    for params in star_pairs(150, 77, 80) {
        let ramified: Vec<u64> = arith::primes_up_to(200)
            .into_iter()
            .skip(1)
            .filter(|&p| params.b % p != 0 && params.delta(p).unwrap() == 0)
            .collect();
        for &p in &ramified {
            for m in 1..=2 {
                assert!(!frobenius_root_check(&params, p, m).unwrap());
                if p <= 50 {
                    for k in 0..p {
                        assert!(!frobenius_lift_check(&params, p, m, k).unwrap(), "(a,b)=({},{}) p={p} k={k}", params.a, params.b);
                    }
                }
            }
            for s in [2, 3] {
                let report = is_monogenic_family(&PowerCompositionalSpec::new(params, s, 1).unwrap()).unwrap();
                let v = report.prime_verdicts.iter().find(|v| v.p == p).expect("ramified prime divides the discriminant");
                assert!(v.index_coprime, "(a,b,s)=({},{},{s}) p={p}", params.a, params.b);
            }
            seen += 1;
        }
    }
    assert!(seen >= 50);
}

#[test]
fn verdict_does_not_depend_on_n() {
    for params in star_pairs(15, 4, 30) {
        for s in [2, 3] {
            let cv = cross_validate(&params, s, 3).unwrap();
            assert!(cv.n_independent, "(a,b,s)=({},{},{s})", params.a, params.b);
            if cv.agree.is_some() {
                assert_eq!(cv.agree, Some(true));
            }
        }
    }
}

#[test]
fn quadratic_with_discriminant_prime_above_32_bits() {
    let b = (1u64 << 31..).find(|b| arith::is_prime(1 + 4 * b)).unwrap();
    let t = TrinomialSpec::new(2, 1, -1, -(b as i64)).unwrap();
    let report = trinomial_report(&t, MonoOptions { dedekind_cross_check: true }, arith::DEFAULT_EFFORT).unwrap();
    assert!(report.monogenic);
    assert_eq!(report.prime_verdicts.len(), 1);
    assert!(report.prime_verdicts[0].p > u32::MAX as u64);
}
