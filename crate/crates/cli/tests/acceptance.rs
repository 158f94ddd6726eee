//! Acceptance criteria, one PASS/FAIL line each. Every criterion runs to completion; the test
//! fails at the end if any of them did.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;
use wpp_mori::coxring::{
    classify, kstar_presentation, mult2_presentation_for, point_ideal, verify_presentation, Check,
    CheckStatus, Mult2Witness, TripleClass,
};
use wpp_mori::groebner::{buchberger, krull_dimension, quotient_by, saturate, Ideal, DEFAULT_BUDGET};
use wpp_mori::m0n::{quotient_images, search_weights, unimodularly_equivalent, verify_reduction, LatticeReduction};
use wpp_mori::mult::{symbolic_slice, TieBreak};
use wpp_mori::orthpair::{check_pair, mds_test, mds_test_with, MdsVerdict};
use wpp_mori::verifygens::{BlowupInput, Verifier};
use wpp_mori::weights::{coprime_triples, count_monomials};
use wpp_mori::{MonomialOrder, Ring, SparsePoly, WeightTriple};
use wpp_mori_cli::scan::{run_scan, ScanConfig};

const N10: &str = include_str!("../fixtures/n10.reduction");
const MULT2_7_3_11: &str = include_str!("../fixtures/mult2_7_3_11.inst");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn scan_inconclusive(a_min: u64, c_max: u64, mu_cap: u32) -> Result<BTreeSet<[u64; 3]>, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = ScanConfig {
        a_min,
        c_max,
        mu_cap,
        workers: rayon::current_num_threads(),
        out: dir.path().join("scan.jsonl"),
    };
    let outcome = run_scan(&cfg).map_err(|e| format!("{e:#}"))?;
    Ok(outcome.inconclusive().into_iter().collect())
}

fn compare_sets(got: &BTreeSet<[u64; 3]>, want: &BTreeSet<[u64; 3]>) -> Outcome {
    if got == want {
        Ok(format!("inconclusive = {got:?}"))
    } else {
        Err(format!(
            "extra inconclusive {:?}, missing {:?}",
            got.difference(want).collect::<Vec<_>>(),
            want.difference(got).collect::<Vec<_>>()
        ))
    }
}

fn small_table() -> Outcome {
    let got = scan_inconclusive(1, 13, 5)?;
    compare_sets(&got, &BTreeSet::from([[9, 10, 13]]))
}

fn mid_table() -> Outcome {
    let got = scan_inconclusive(7, 17, 8)?;
    let want = BTreeSet::from([
        [7, 13, 16],
        [9, 10, 13],
        [9, 13, 16],
        [11, 13, 16],
        [12, 13, 17],
        [13, 14, 17],
        [13, 16, 17],
    ]);
    compare_sets(&got, &want)
}

fn small_minimum_range() -> Outcome {
    let triples: Vec<WeightTriple> = coprime_triples(1, 30).into_iter().filter(|w| w.a() <= 6).collect();
    let open: Vec<[u64; 3]> = triples
        .par_iter()
        .filter(|w| !mds_test(w, 6).is_mori_dream())
        .map(|w| w.as_array())
        .collect();
    if open.is_empty() {
        Ok(format!("{} triples, all MoriDream at mu_cap 6", triples.len()))
    } else {
        Err(format!("{} of {} inconclusive at mu_cap 6: {open:?}", open.len(), triples.len()))
    }
}

fn kstar_suite() -> Outcome {
    let triples: Vec<WeightTriple> = coprime_triples(1, 50)
        .into_iter()
        .filter(|w| matches!(classify(w), TripleClass::KStar(_)))
        .collect();
    let failures: Vec<String> = triples
        .par_iter()
        .filter_map(|w| {
            let check = || -> Result<(), String> {
                let p = kstar_presentation(w).map_err(|e| e.to_string())?;
                let r = verify_presentation(&p).map_err(|e| e.to_string())?;
                if !r.all_passed() {
                    return Err(r.to_string());
                }
                if p.multiplicities() != vec![0, 0, 1, 1, -1] {
                    return Err(format!("multiplicities {:?}", p.multiplicities()));
                }
                if p.toric != w.as_array().contains(&1) {
                    return Err(format!("toric flag {}", p.toric));
                }
                Ok(())
            };
            check().err().map(|e| format!("{:?}: {e}", w.as_array()))
        })
        .collect();
    if failures.is_empty() {
        Ok(format!("{} K* triples verified", triples.len()))
    } else {
        Err(failures.join("; "))
    }
}

/// Every ordered `(a, b, c, n, m)` with `2a = nb + mc`, `b >= 3m`, `c >= 3n`, weights pairwise
/// coprime, at most `bound`, and no weight in the monoid of the other two.
fn mult2_witnesses(bound: u64) -> Vec<Mult2Witness> {
    let mut out = Vec::new();
    for a in 1..=bound {
        for b in 1..=bound {
            for c in 1..=bound {
                let Ok(w) = WeightTriple::new(a, b, c) else {
                    continue;
                };
                let in_monoid = |x: u64, p: u64, q: u64| (0..=x / p).any(|i| (x - i * p).is_multiple_of(q));
                if in_monoid(a, b, c) || in_monoid(b, a, c) || in_monoid(c, a, b) {
                    continue;
                }
                debug_assert!(!matches!(classify(&w), TripleClass::KStar(_)));
                for n in 1..=c / 3 {
                    for m in 1..=b / 3 {
                        if n * b + m * c == 2 * a {
                            out.push(Mult2Witness { weights: [a, b, c], n, m });
                        }
                    }
                }
            }
        }
    }
    out
}

fn mult2_suite() -> Outcome {
    let witnesses = mult2_witnesses(40);
    let failures: Vec<String> = witnesses
        .par_iter()
        .filter_map(|wit| {
            let check = || -> Result<(), String> {
                let p = mult2_presentation_for(wit).map_err(|e| e.to_string())?;
                let r = verify_presentation(&p).map_err(|e| e.to_string())?;
                for c in [
                    Check::Homogeneity,
                    Check::Multiplicities,
                    Check::Identities,
                    Check::PointIdeal,
                    Check::SymbolicSquare,
                ] {
                    match r.status(c) {
                        Some(CheckStatus::Passed) => {}
                        other => return Err(format!("{c}: {other:?}")),
                    }
                }
                Ok(())
            };
            check().err().map(|e| format!("{wit:?}: {e}"))
        })
        .collect();
    if witnesses.is_empty() {
        return Err("no witnesses enumerated".into());
    }
    if failures.is_empty() {
        Ok(format!("{} ordered witnesses verified", witnesses.len()))
    } else {
        Err(format!("{} failures, first: {}", failures.len(), failures[0]))
    }
}

fn verify_gens_golden() -> Outcome {
    let input = BlowupInput::parse(MULT2_7_3_11).map_err(|e| e.to_string())?;
    let cert = Verifier::new(&input)
        .and_then(|v| v.verify(32))
        .map_err(|e| e.to_string())?;
    if cert.holds && cert.dims() == (3, Some(3), Some(2)) {
        Ok("true with dims (3, 3, 2)".into())
    } else {
        Err(format!("holds {} dims {:?}", cert.holds, cert.dims()))
    }
}

fn n10_reduction() -> Outcome {
    let r = LatticeReduction::parse(N10).map_err(|e| e.to_string())?;
    let report = verify_reduction(&r).map_err(|e| e.to_string())?;
    if !report.valid {
        return Err(format!("reduction invalid: {:?}", report.failure));
    }
    let p = r.projection.as_ref().ok_or("fixture has no projection")?;
    for k in &r.kernel {
        for row in p {
            let dot: i64 = row.iter().zip(k).map(|(x, y)| x * y).sum();
            if dot != 0 {
                return Err(format!("projection row {row:?} does not kill {k:?}"));
            }
        }
    }
    let images = quotient_images(&r).map_err(|e| e.to_string())?;
    let target = [[3, 5], [-3, -1], [-1, -6]];
    if !unimodularly_equivalent(&images.columns, &target) {
        return Err(format!("images {:?} not equivalent to [3 -3 -1; 5 -1 -6]", images.rows()));
    }
    if images.combination([17, 13, 12]) != [0, 0] {
        return Err(format!("17 w1 + 13 w2 + 12 w3 = {:?}", images.combination([17, 13, 12])));
    }
    let found = search_weights(&r, 20).map_err(|e| e.to_string())?;
    if !found.contains(&[17, 13, 12]) {
        return Err(format!("search_weights(20) = {found:?}"));
    }
    Ok(format!("valid, images {:?}", images.rows()))
}

fn oracle_equivalence() -> Outcome {
    let mut triples = Vec::new();
    for a in 1..=60u64 {
        for b in a..=60 {
            for c in b..=60 {
                if a * b * c <= 60 {
                    if let Ok(w) = WeightTriple::new(a, b, c) {
                        triples.push(w);
                    }
                }
            }
        }
    }
    let s = Ring::xyz();
    let xyz = SparsePoly::term(&s, 1, &[1, 1, 1]);
    let discrepancies: Vec<String> = triples
        .par_iter()
        .flat_map_iter(|w| {
            let mut bad = Vec::new();
            let order = MonomialOrder::weighted_grevlex(&w.as_array());
            let point = point_ideal(w).expect("point ideal");
            for mu in 1..=3u32 {
                let sat = saturate(&point.power(mu).expect("power"), &xyz).expect("saturation");
                let gb = buchberger(&sat, &order, DEFAULT_BUDGET).expect("basis");
                for d in 0..=30u64 {
                    let expected = count_monomials(w, d) - gb.standard_monomial_count(&w.as_array(), d);
                    let got = symbolic_slice(w, d, mu).dim;
                    if got != expected {
                        bad.push(format!("{:?} d={d} mu={mu}: {got} vs {expected}", w.as_array()));
                    }
                }
            }
            bad
        })
        .collect();
    if discrepancies.is_empty() {
        Ok(format!("{} triples, d <= 30, mu <= 3", triples.len()))
    } else {
        Err(format!("{} discrepancies, first: {}", discrepancies.len(), discrepancies[0]))
    }
}

fn witness_independence() -> Outcome {
    let mut compared = 0;
    for w in coprime_triples(1, 13) {
        let fwd = mds_test_with(&w, 14, TieBreak::Forward);
        let rev = mds_test_with(&w, 14, TieBreak::Reverse);
        match (&fwd, &rev) {
            (MdsVerdict::MoriDream(p), MdsVerdict::MoriDream(q)) => {
                if p.signature() != q.signature() {
                    return Err(format!("{:?}: {:?} vs {:?}", w.as_array(), p.signature(), q.signature()));
                }
                for pair in [p, q] {
                    check_pair(&w, pair).map_err(|e| format!("{:?}: {e}", w.as_array()))?;
                    if pair.mu1 == 2 && pair.mu2 == 2 {
                        return Err(format!("{:?}: mu1 = mu2 = 2", w.as_array()));
                    }
                }
                compared += 1;
            }
            (MdsVerdict::Inconclusive { .. }, MdsVerdict::Inconclusive { .. }) => {}
            _ => return Err(format!("{:?}: verdicts differ", w.as_array())),
        }
    }
    Ok(format!("{compared} MoriDream triples agree"))
}

type Terms = Vec<(i64, [u32; 3])>;

fn poly_strategy(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    proptest::collection::vec((-3i64..=3, [0..=max_exp, 0..=max_exp, 0..=max_exp]), 1..=max_terms)
}

fn ideal_strategy() -> impl Strategy<Value = Vec<Terms>> {
    proptest::collection::vec(poly_strategy(3, 3), 1..=3)
}

fn build(r: &Ring, terms: &Terms) -> SparsePoly {
    terms
        .iter()
        .fold(SparsePoly::zero(r), |acc, (c, e)| &acc + &SparsePoly::term(r, *c, e))
}

fn ideal_of(r: &Ring, gens: &[Terms]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| build(r, g)).collect()).unwrap()
}

fn groebner_suite() -> Outcome {
    let r = Ring::xyz();
    let mut runner = TestRunner::new(Config {
        cases: 48,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(ideal_strategy(), poly_strategy(4, 5), poly_strategy(4, 5), -4i64..=4), |(gens, f, g, k)| {
            let gb = ideal_of(&r, &gens).groebner_basis().unwrap();
            let (f, g) = (build(&r, &f), build(&r, &g));
            let nf = gb.normal_form(&f).unwrap();
            prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
            let k = BigRational::from_integer(BigInt::from(k));
            let lhs = gb.normal_form(&(&f.scale(&k) + &g)).unwrap();
            prop_assert_eq!(lhs, &nf.scale(&k) + &gb.normal_form(&g).unwrap());
            Ok(())
        })
        .map_err(|e| format!("normal form: {e}"))?;
    runner
        .run(&ideal_strategy(), |gens| {
            let ideal = ideal_of(&r, &gens);
            let gb = ideal.groebner_basis().unwrap();
            for g in ideal.generators() {
                prop_assert!(gb.contains(g).unwrap());
            }
            let again = gb.to_ideal().groebner_basis().unwrap();
            prop_assert_eq!(again.elements(), gb.elements());
            Ok(())
        })
        .map_err(|e| format!("fixed point: {e}"))?;
    runner
        .run(&(ideal_strategy(), 0usize..3), |(gens, v)| {
            let ideal = ideal_of(&r, &gens);
            let gb = ideal.groebner_basis().unwrap();
            let f = SparsePoly::var(&r, v);
            let q = quotient_by(&ideal, &f).unwrap().groebner_basis().unwrap();
            let s = saturate(&ideal, &f).unwrap();
            let sb = s.groebner_basis().unwrap();
            for g in gb.elements() {
                prop_assert!(q.contains(g).unwrap());
            }
            for g in q.elements() {
                prop_assert!(sb.contains(g).unwrap());
                prop_assert!(gb.contains(&(g * &f)).unwrap());
            }
            prop_assert!(quotient_by(&s, &f).unwrap().same_as(&s).unwrap());
            Ok(())
        })
        .map_err(|e| format!("containments: {e}"))?;
    let golden = [
        (krull_dimension(&Ideal::parse(&r, &["x", "y"]).unwrap()), Some(1)),
        (krull_dimension(&Ideal::zero(&r)), Some(3)),
        (krull_dimension(&Ideal::zero(&Ring::new(&["a", "b", "c", "d", "e"]))), Some(5)),
        (krull_dimension(&Ideal::parse(&r, &["x - 1", "y", "z^2"]).unwrap()), Some(0)),
        (krull_dimension(&Ideal::parse(&r, &["x*y - 1", "x"]).unwrap()), None),
    ];
    for (i, (got, want)) in golden.into_iter().enumerate() {
        let got = got.map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("golden dimension {i}: {got:?} vs {want:?}"));
        }
    }
    Ok("normal form, fixed point, containment and dimension laws hold".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("small table, c <= 13 at mu_cap 5", small_table),
        ("mid table, 7 <= a, c <= 17 at mu_cap 8", mid_table),
        ("min(a,b,c) <= 6, c <= 30 at mu_cap 6", small_minimum_range),
        ("K* presentations, c <= 50", kstar_suite),
        ("multiplicity-two presentations, c <= 40", mult2_suite),
        ("verify-gens on (7,3,11)", verify_gens_golden),
        ("n = 10 lattice reduction", n10_reduction),
        ("slice dimensions vs Groebner oracle", oracle_equivalence),
        ("witness independence, c <= 13", witness_independence),
        ("Groebner engine laws", groebner_suite),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS ({secs:.1}s) {name}: {msg}", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL ({secs:.1}s) {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
