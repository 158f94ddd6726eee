//! Slice dimensions from Hasse-derivative linear algebra against two independent oracles:
//! Gröbner bases of `I^mu : (xyz)^inf` and plain partial derivatives at `(1, 1, 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use wpp_mori::coxring::point_ideal;
use wpp_mori::groebner::{buchberger, saturate, DEFAULT_BUDGET};
use wpp_mori::linalg::bareiss_rank;
use wpp_mori::mult::SliceEngine;
use wpp_mori::weights::{count_monomials, monomials_of_degree};
use wpp_mori::{MonomialOrder, Ring, SparsePoly, WeightTriple};

fn small_triples(max_product: u64) -> Vec<WeightTriple> {
    let mut out = Vec::new();
    for a in 1..=max_product {
        for b in a..=max_product {
            for c in b..=max_product {
                if a * b * c > max_product {
                    break;
                }
                if let Ok(w) = WeightTriple::new(a, b, c) {
                    out.push(w);
                }
            }
        }
    }
    out
}

#[test]
fn groebner_oracle_agrees() {
    let triples = small_triples(60);
    assert!(triples.len() > 50);
    let s = Ring::xyz();
    let xyz = SparsePoly::term(&s, 1, &[1, 1, 1]);
    let mut discrepancies = Vec::new();
    for w in &triples {
        let order = MonomialOrder::weighted_grevlex(&w.as_array());
        let point = point_ideal(w).unwrap();
        let mut engine = SliceEngine::new(w);
        for mu in 1..=3u32 {
            let sat = saturate(&point.power(mu).unwrap(), &xyz).unwrap();
            let gb = buchberger(&sat, &order, DEFAULT_BUDGET).unwrap();
            for d in 0..=30u64 {
                let expected = count_monomials(w, d) - gb.standard_monomial_count(&w.as_array(), d);
                let got = engine.dim(d, mu);
                if got != expected {
                    discrepancies.push((w.as_array(), d, mu, got, expected));
                }
            }
        }
    }
    assert!(discrepancies.is_empty(), "{discrepancies:?}");
}

/// Falling factorial `i (i-1) ... (i-p+1)`.
fn falling(i: u32, p: u32) -> BigInt {
    (0..p).fold(BigInt::one(), |acc, k| acc * (i as i64 - k as i64))
}

/// Dimension of forms of degree `d` whose partial derivatives of order `< mu` vanish at
/// `(1, 1, 1)`.
fn derivative_dim(w: &WeightTriple, d: u64, mu: u32) -> usize {
    let ms = monomials_of_degree(w, d);
    if ms.is_empty() {
        return 0;
    }
    let mut rows = Vec::new();
    for order in 0..mu {
        for p in 0..=order {
            for q in 0..=(order - p) {
                let r = order - p - q;
                rows.push(
                    ms.iter()
                        .map(|e| {
                            let [i, j, k] = e.as_array();
                            falling(i, p) * falling(j, q) * falling(k, r)
                        })
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    if rows.iter().all(|r| r.iter().all(Zero::is_zero)) {
        return ms.len();
    }
    ms.len() - bareiss_rank(&rows)
}

#[test]
fn derivative_oracle_agrees() {
    for w in [[1, 1, 1], [1, 2, 3], [2, 3, 5], [3, 4, 5], [7, 3, 11], [4, 11, 13], [9, 10, 13]] {
        let w = WeightTriple::new(w[0], w[1], w[2]).unwrap();
        let mut engine = SliceEngine::new(&w);
        let top = 3 * (w.product() as f64).sqrt().ceil() as u64;
        for d in (0..=top).step_by(((top / 40).max(1)) as usize) {
            for mu in 0..=4u32 {
                assert_eq!(engine.dim(d, mu), derivative_dim(&w, d, mu), "{w:?} d={d} mu={mu}");
            }
        }
    }
}

#[test]
fn slice_bases_lie_in_the_symbolic_power() {
    let w = WeightTriple::new(2, 3, 5).unwrap();
    let s = Ring::xyz();
    let xyz = SparsePoly::term(&s, 1, &[1, 1, 1]);
    let sat = saturate(&point_ideal(&w).unwrap().power(2).unwrap(), &xyz).unwrap();
    let gb = buchberger(&sat, &MonomialOrder::weighted_grevlex(&[2, 3, 5]), DEFAULT_BUDGET).unwrap();
    let mut engine = SliceEngine::new(&w);
    for d in 0..=25 {
        for f in engine.basis(d, 2) {
            assert!(gb.contains(&f).unwrap(), "{f}");
        }
    }
}
