use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallsun_core::arith;
use wallsun_core::lucas::{period, LucasParams};
use wallsun_core::wss::{is_wss, shortcut_verdict, search_wss, search_wss_jobs, WssPath};

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

#[test]
fn wss_implies_usub_condition() {
    for params in star_pairs(30, 3, 200) {
        for p in arith::primes_up_to(500).into_iter().skip(1) {
            if params.b % p == 0 {
                continue;
            }
            let cert = is_wss(&params, p).unwrap();
            assert_eq!(cert.is_wss, cert.pi_p == cert.pi_p2);
            if cert.is_wss {
                assert!(cert.usub_condition, "(a,b)=({},{}) p={p}", params.a, params.b);
            }
        }
    }
}

#[test]
fn fast_paths_agree_with_brute_periods() {
    // independent oracle: brute pair iteration modulo p and p^2
    for a in 1..=50 {
        for b in 1..=50 {
            let params = LucasParams::new(a, b).unwrap();
            for p in arith::primes_up_to(100) {
                if b % p == 0 {
                    continue;
                }
                let Some(verdict) = shortcut_verdict(&params, p).unwrap() else { continue };
                let brute = period(&params, p).unwrap().pi == period(&params, p * p).unwrap().pi;
                assert_eq!(verdict, brute, "(a,b)=({a},{b}) p={p}");
            }
        }
    }
}

#[test]
fn certificate_paths() {
    let cert = is_wss(&LucasParams::new(23, 11).unwrap(), 2).unwrap();
    assert_eq!(cert.path, WssPath::TwoAdicTable);
    assert!(cert.is_wss);
    let cert = is_wss(&LucasParams::new(9, 2).unwrap(), 3).unwrap();
    assert_eq!(cert.path, WssPath::PrimeDividesA);
    assert!(!cert.is_wss);
    let cert = is_wss(&LucasParams::new(1, 1).unwrap(), 5).unwrap();
    assert_eq!(cert.path, WssPath::RamifiedPrime);
    assert!(!cert.is_wss);
    let cert = is_wss(&LucasParams::new(2, 1).unwrap(), 31).unwrap();
    assert_eq!(cert.path, WssPath::PeriodCompare);
    assert!(cert.is_wss);
}

#[test]
fn search_skips_primes_dividing_b() {
    let params = LucasParams::new(23, 11).unwrap();
    let hits = search_wss(&params, 200).unwrap();
    assert!(hits.iter().all(|c| c.p != 11));
    assert!(hits.windows(2).all(|w| w[0].p < w[1].p));
}

#[test]
fn search_independent_of_partitioning() {
    for params in star_pairs(5, 11, 100) {
        let serial = search_wss(&params, 3_000).unwrap();
        for jobs in [2, 4, 9] {
            assert_eq!(search_wss_jobs(&params, 3_000, jobs).unwrap(), serial);
        }
    }
}
