//! One PASS/FAIL line per acceptance criterion, with wall-clock time against
//! a pinned budget. All numeric comparisons are exact rational equality.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brute_definiteness, det, int_matrix, sym_from};
use dualgraph_cli::dsl::parse;
use dualgraph_cli::report::analyze;
use dualgraph_core::ade::{ade_classify, AdeFamily, AdeType};
use dualgraph_core::catalog::{enumerate_compatible, template, GermKind, GermTemplateSpec, ParamBounds};
use dualgraph_core::k2a::{delta_sum_coefficients, deltas, plumbing_mismatches, search_infeasible, K2AConfig};
use dualgraph_core::linalg::definiteness;
use dualgraph_core::quotient::{chain_graph, end_codiscrepancies, hj_contract, hj_expand, CyclicQuotient, TParams};
use dualgraph_core::sections::ic_three_curves;
use dualgraph_core::{anticanonical_degree, codiscrepancy, Rational, SymMatrix};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Check = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_degrees(name: &str) -> Result<(Vec<(String, Rational)>, bool), String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = parse(&text).map_err(|e| format!("{name}: {e}"))?;
    let rep = analyze(&doc).map_err(|e| format!("{name}: {}", e.error.message))?;
    let degrees = rep
        .degrees
        .iter()
        .map(|(id, d)| (id.clone(), d.display.parse::<Rational>().expect("display is a rational")))
        .collect();
    Ok((degrees, rep.ample))
}

fn named(items: &[(&str, Rational)]) -> Vec<(String, Rational)> {
    items.iter().map(|(id, r)| (id.to_string(), r.clone())).collect()
}

fn ic_section() -> Check {
    let (got, ample) = fixture_degrees("ic_m9.graph")?;
    let want = named(&[("C1", Rational::new(1, 9)), ("C2", Rational::new(1, 9)), ("C3", Rational::new(4, 9))]);
    ensure(got == want && ample, || format!("fixture: {got:?}, ample={ample}"))?;
    for m in [9u32, 11, 13] {
        let g = ic_three_curves(m).map_err(|e| e.to_string())?;
        let mi = m as i64;
        for (id, want) in [("C1", Rational::new(1, mi)), ("C2", Rational::new(1, mi)), ("C3", Rational::new(mi - 1, 2 * mi))] {
            let got = anticanonical_degree(&g, id).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("m={m} {id}: {got}, expected {want}"))?;
        }
    }
    Ok("fixture 1/9, 1/9, 4/9; generator m = 9, 11, 13".into())
}

fn iib_section() -> Check {
    let (got, ample) = fixture_degrees("iib.graph")?;
    let want = named(&[("C1", Rational::new(1, 4)), ("C2", Rational::new(1, 4))]);
    ensure(got == want && ample, || format!("fixture: {got:?}, ample={ample}"))?;
    Ok("1/4, 1/4, ample".into())
}

fn catalog() -> Check {
    let bounds = ParamBounds::by_rank(20);
    let mut count = 0;
    for kind in GermKind::ALL {
        for spec in GermTemplateSpec::enumerate(kind, &bounds) {
            let g = template(&spec).map_err(|e| e.to_string())?.into_graph();
            let want = match spec {
                GermTemplateSpec::IC { m } => AdeType::d(m as usize),
                GermTemplateSpec::IIB => AdeType::e(6),
                GermTemplateSpec::KAD { m, l } => AdeType::d((m + 2 * l + 1) as usize),
                GermTemplateSpec::K3A { m } => AdeType::d((m + 2) as usize),
                GermTemplateSpec::K2A { k, m, l, n } => AdeType::a((k * m + l * n - 1) as usize),
            };
            let got = ade_classify(&g);
            ensure(got == Some(want), || format!("{spec}: {got:?}, expected {want}"))?;
            let d = det(&int_matrix(&g)).unsigned_abs();
            ensure(d == want.lattice_determinant() as u128, || format!("{spec}: |det| = {d}"))?;
            let theta = codiscrepancy(&g).map_err(|e| format!("{spec}: {e}"))?;
            ensure(theta.coefficients().values().all(Rational::is_zero), || format!("{spec}: nonzero codiscrepancy"))?;
            count += 1;
        }
    }
    Ok(format!("{count} templates of rank <= 20"))
}

fn end_coefficients() -> Check {
    let params = TParams::enumerate(2..=15, 1..=6);
    for t in &params {
        let s = t.quotient().map_err(|e| e.to_string())?;
        let (first, last) = end_codiscrepancies(s);
        let (m, a) = (t.m() as i64, t.a() as i64);
        ensure(first == Rational::new(m - a, m) && last == Rational::new(a, m), || {
            format!("{t}: ({first}, {last})")
        })?;
    }
    Ok(format!("{} parameter triples", params.len()))
}

fn oracle_equivalence() -> Check {
    let params = TParams::enumerate(2..=9, 1..=4);
    let mut count = 0usize;
    for &p0 in &params {
        for &p1 in &params {
            for &p2 in &params {
                let cfg = K2AConfig::new(p0, p1, p2);
                let miss = plumbing_mismatches(&cfg).map_err(|e| format!("{cfg}: {e}"))?;
                ensure(miss.is_empty(), || format!("{cfg}: {miss:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} configurations"))
}

fn index_two_infeasible() -> Check {
    let found = search_infeasible(7, 6);
    ensure(found.is_empty(), || format!("feasible: {}", found[0]))?;
    // m_0 > 2 forces both outer points to be 1/2(1,1)-type ends
    let coeffs = delta_sum_coefficients(2, 1, 2, 1);
    ensure(coeffs.0 == 0.into() && coeffs.1 == 0.into(), || format!("coefficients {coeffs:?}"))?;
    for m0 in 3..=30u64 {
        for t0 in TParams::enumerate(m0..=m0, 1..=3) {
            for (p1, p2) in [(1, 1), (1, 2), (3, 2)] {
                let cfg = K2AConfig::new(t0, TParams::new(2, p1, 1).unwrap(), TParams::new(2, p2, 1).unwrap());
                let (d1, d2) = deltas(&cfg);
                ensure(&d1 + &d2 == 0.into(), || format!("{cfg}: delta sum {}", &d1 + &d2))?;
            }
        }
    }
    Ok("search(7, 6) empty; delta_1 + delta_2 = 0 when m_0 > 2".into())
}

fn gluing() -> Check {
    let bounds = ParamBounds::by_rank(20);
    let branched = [GermKind::IC, GermKind::IIB, GermKind::KAD, GermKind::K3A];
    for (i, &a) in branched.iter().enumerate() {
        for &b in &branched[i..] {
            let found = enumerate_compatible(a, b, &bounds);
            ensure(found.is_empty(), || {
                let g = &found[0];
                format!("{a} x {b}: {} + {} gives {}", g.first, g.second, g.ade)
            })?;
        }
    }
    let chains = enumerate_compatible(GermKind::K2A, GermKind::K2A, &bounds);
    ensure(!chains.is_empty(), || "k2A x k2A: nothing glues".into())?;
    if let Some(g) = chains.iter().find(|g| g.ade.family != AdeFamily::A) {
        return Err(format!("k2A x k2A: {} + {} gives {}", g.first, g.second, g.ade));
    }
    Ok(format!("10 branched pairs empty; k2A x k2A: {} gluings, all type A", chains.len()))
}

fn seeded_runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn properties() -> Check {
    let mut pairs = 0;
    for n in 2..=200u64 {
        for q in 1..n {
            let Ok(s) = CyclicQuotient::new(n, q) else { continue };
            let chain = hj_expand(s);
            ensure(chain.contract() == s, || format!("{s}: round trip"))?;
            let mut reversed = chain.entries().to_vec();
            reversed.reverse();
            ensure(hj_expand(s.partner()).entries() == reversed.as_slice(), || format!("{s}: duality"))?;
            pairs += 1;
        }
    }

    let matrices = (1usize..=6).prop_flat_map(|n| {
        (prop::collection::vec(-6i64..=1, n), prop::collection::vec(-2i64..=2, n * (n - 1) / 2))
            .prop_map(|(d, o)| sym_from(&d, &o))
    });
    let mut runner = seeded_runner(500);
    runner
        .run(&matrices, |m| {
            let sym = SymMatrix::from_int_rows(&m).unwrap();
            prop_assert_eq!(definiteness(&sym), brute_definiteness(&m));
            Ok(())
        })
        .map_err(|e| format!("definiteness: {e}"))?;

    let chains = prop::collection::vec(2i64..=7, 1..=10);
    let mut runner = seeded_runner(200);
    runner
        .run(&chains, |entries| {
            let g = chain_graph(hj_contract(&entries).unwrap()).graph;
            for t in codiscrepancy(&g).unwrap().coefficients().values() {
                prop_assert!(!t.is_negative() && *t < Rational::one());
            }
            Ok(())
        })
        .map_err(|e| format!("codiscrepancy: {e}"))?;
    Ok(format!("{pairs} quotients, 500 matrices, 200 chains"))
}

fn main() -> ExitCode {
    // (number, name, budget in seconds, check)
    let criteria: [Criterion; 8] = [
        (1, "IC section degrees", 1, ic_section),
        (2, "IIB section degrees", 1, iib_section),
        (3, "template catalog", 60, catalog),
        (4, "T-chain end coefficients", 60, end_coefficients),
        (5, "two-curve closed forms vs plumbing", 30, oracle_equivalence),
        (6, "index-two configurations infeasible", 10, index_two_infeasible),
        (7, "gluing compatibility", 30, gluing),
        (8, "property suites", 60, properties),
    ];
    let mut failed = 0;
    for (n, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {n} {status} [{:.3} s / {budget} s] {name}: {detail}", elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
