use serde::Serialize;
use serde_json::{json, Map, Value};
use wallsun_core::arith::{self, DEFAULT_EFFORT};
use wallsun_core::lucas::{period, period_prime, period_prime_squared, LucasParams};
use wallsun_core::mono::{
    cross_validate_with, is_monogenic_family_with, swan_discriminant, trinomial_report, MonoOptions,
    MonogenicityReport, PowerCompositionalSpec, TrinomialSpec,
};
use wallsun_core::wss::search_wss_jobs;
use wallsun_core::Error;

use crate::output::Emission;

/// A failure that ends the process with `code`.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IncompleteFactorization { .. } => 3,
            Error::Inconsistency(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<Emission, Failure>;

fn object<T: Serialize>(x: &T) -> Map<String, Value> {
    match serde_json::to_value(x).expect("library types serialize") {
        Value::Object(m) => m,
        other => panic!("expected an object, got {other}"),
    }
}

fn inputs(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn yes_no(b: Option<bool>) -> String {
    match b {
        Some(true) => "true".into(),
        Some(false) => "false".into(),
        None => "n/a".into(),
    }
}

pub fn wss_search(a: u64, b: u64, pmax: u64, jobs: usize) -> CmdResult {
    let params = LucasParams::new(a, b)?;
    let hits = search_wss_jobs(&params, pmax, jobs)?;
    let rows: Vec<_> = hits.iter().map(object).collect();
    Ok(Emission {
        command: "wss search".into(),
        inputs: inputs(&[("a", a.into()), ("b", b.into()), ("pmax", pmax.into())]),
        results: json!({ "count": hits.len(), "hits": hits }),
        columns: vec!["p", "pi_p", "pi_p2", "path", "is_wss", "usub_condition"],
        rows,
        summary: vec![("hits".into(), hits.len().to_string())],
        ok: true,
    })
}

/// Wall-Sun-Sun primes below 100 and the period modulo `p^2`, per `(a, b)`.
pub const REFERENCE_ROWS: [((u64, u64), &[(u64, u64)]); 8] = [
    ((2, 1), &[(13, 28), (31, 30)]),
    ((3, 26), &[(71, 126)]),
    ((10, 41), &[(29, 120)]),
    ((11, 43), &[(2, 3), (5, 24)]),
    ((15, 14), &[(29, 28)]),
    ((23, 11), &[(2, 3), (3, 3), (71, 35)]),
    ((25, 7), &[(5, 8)]),
    ((27, 22), &[(13, 84)]),
];

fn pairs_text(pairs: &[(u64, u64)]) -> String {
    pairs.iter().map(|(p, pi)| format!("[{p},{pi}]")).collect::<Vec<_>>().join(" ")
}

pub fn reference_table(jobs: usize) -> CmdResult {
    let mut rows = Vec::new();
    let mut passed = 0;
    for ((a, b), expected) in REFERENCE_ROWS {
        let hits = search_wss_jobs(&LucasParams::new(a, b)?, 100, jobs)?;
        let computed: Vec<(u64, u64)> = hits.iter().map(|c| (c.p, c.pi_p2)).collect();
        let pass = computed == expected;
        passed += usize::from(pass);
        rows.push(object(&json!({
            "a": a,
            "b": b,
            "expected": pairs_text(expected),
            "computed": pairs_text(&computed),
            "status": if pass { "PASS" } else { "FAIL" },
        })));
    }
    let total = REFERENCE_ROWS.len();
    Ok(Emission {
        command: "table1".into(),
        inputs: inputs(&[("pmax", 100.into())]),
        results: json!({ "rows": rows, "passed": passed, "total": total }),
        columns: vec!["a", "b", "expected", "computed", "status"],
        rows,
        summary: vec![("passed".into(), format!("{passed}/{total}"))],
        ok: passed == total,
    })
}

pub fn period_cmd(a: u64, b: u64, m: u64) -> CmdResult {
    let params = LucasParams::new(a, b)?;
    if m < 2 {
        return Err(Failure::usage(format!("modulus must be at least 2, got {m}")));
    }
    let f = arith::factorize(m, DEFAULT_EFFORT)?;
    let result = match f.factors.as_slice() {
        [(p, 1)] if *p < 1 << 32 && b % p != 0 => period_prime(&params, *p)?,
        [(p, 2)] if *p < 1 << 32 && b % p != 0 => period_prime_squared(&params, *p)?,
        _ => period(&params, m)?,
    };
    let row = object(&result);
    Ok(Emission {
        command: "period".into(),
        inputs: inputs(&[("a", a.into()), ("b", b.into()), ("m", m.into())]),
        results: Value::Object(row.clone()),
        columns: vec!["modulus", "pi", "method"],
        rows: vec![row],
        summary: vec![],
        ok: true,
    })
}

fn verdict_rows(report: &MonogenicityReport) -> Vec<Map<String, Value>> {
    report.prime_verdicts.iter().map(object).collect()
}

fn failing_primes(report: &MonogenicityReport) -> String {
    let bad: Vec<String> = report
        .prime_verdicts
        .iter()
        .filter(|v| !v.index_coprime)
        .map(|v| v.p.to_string())
        .collect();
    if bad.is_empty() { "none".into() } else { bad.join(" ") }
}

const VERDICT_COLUMNS: [&str; 4] = ["p", "index_coprime", "decided_by", "dedekind"];

pub fn mono_check(a: u64, b: u64, s: u64, n: u32, dedekind: bool) -> CmdResult {
    let params = LucasParams::new(a, b)?;
    let spec = PowerCompositionalSpec::new(params, s, n)?;
    let report = is_monogenic_family_with(&spec, MonoOptions { dedekind_cross_check: dedekind })?;
    let hypotheses = wallsun_core::mono::prediction_hypotheses(&params, s)?;
    let agreement = report.prediction.map(|p| p == report.monogenic);
    let poly = report.poly.to_poly().to_string();
    Ok(Emission {
        command: "mono check".into(),
        inputs: inputs(&[("a", a.into()), ("b", b.into()), ("s", s.into()), ("n", n.into())]),
        results: json!({
            "polynomial": poly,
            "degree": report.poly.degree,
            "monogenic": report.monogenic,
            "prime_verdicts": report.prime_verdicts,
            "irreducibility_source": report.irreducibility_source,
            "hypotheses": hypotheses,
            "prediction": report.prediction,
            "agreement": agreement,
        }),
        columns: VERDICT_COLUMNS.to_vec(),
        rows: verdict_rows(&report),
        summary: vec![
            ("polynomial".into(), poly),
            ("monogenic".into(), report.monogenic.to_string()),
            ("failing primes".into(), failing_primes(&report)),
            (
                "hypotheses".into(),
                format!(
                    "star={} gcd(b,s)=1:{} delta={} overall={}",
                    hypotheses.star, hypotheses.gcd_bs, hypotheses.delta_conditions, hypotheses.overall
                ),
            ),
            ("prediction".into(), yes_no(report.prediction)),
            ("agreement".into(), yes_no(agreement)),
        ],
        ok: agreement != Some(false),
    })
}

pub fn mono_trinomial(degree: u64, middle: u64, coef_a: i64, coef_b: i64) -> CmdResult {
    let t = TrinomialSpec::new(degree, middle, coef_a, coef_b)?;
    let swan = swan_discriminant(&t);
    let report = trinomial_report(&t, MonoOptions { dedekind_cross_check: true }, DEFAULT_EFFORT)?;
    let poly = t.to_poly().to_string();
    Ok(Emission {
        command: "mono trinomial".into(),
        inputs: inputs(&[("N", degree.into()), ("M", middle.into()), ("A", coef_a.into()), ("B", coef_b.into())]),
        results: json!({
            "polynomial": poly,
            "discriminant": swan.value().to_string(),
            "monogenic": report.monogenic,
            "prime_verdicts": report.prime_verdicts,
            "irreducibility_source": report.irreducibility_source,
        }),
        columns: VERDICT_COLUMNS.to_vec(),
        rows: verdict_rows(&report),
        summary: vec![
            ("polynomial".into(), poly),
            ("discriminant".into(), swan.value().to_string()),
            ("irreducibility".into(), format!("{:?}", report.irreducibility_source)),
            ("monogenic".into(), report.monogenic.to_string()),
            ("failing primes".into(), failing_primes(&report)),
        ],
        ok: true,
    })
}

pub fn cross_validate_cmd(a: u64, b: u64, s: u64, n_max: u32, dedekind: bool) -> CmdResult {
    let params = LucasParams::new(a, b)?;
    let cv = cross_validate_with(&params, s, n_max, MonoOptions { dedekind_cross_check: dedekind })?;
    let rows: Vec<_> = cv.rows.iter().map(object).collect();
    Ok(Emission {
        command: "cross-validate".into(),
        inputs: inputs(&[("a", a.into()), ("b", b.into()), ("s", s.into()), ("n_max", n_max.into())]),
        results: json!({
            "hypotheses": cv.hypotheses,
            "rows": cv.rows,
            "agree": cv.agree,
            "n_independent": cv.n_independent,
            "outside_hypotheses": cv.outside_hypotheses(),
        }),
        columns: vec!["n", "predicted", "computed"],
        rows,
        summary: vec![
            ("outside hypotheses".into(), cv.outside_hypotheses().to_string()),
            ("agree".into(), yes_no(cv.agree)),
            ("n independent".into(), cv.n_independent.to_string()),
        ],
        ok: cv.agree != Some(false) && cv.n_independent,
    })
}
