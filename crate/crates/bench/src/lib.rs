//! Workloads shared by the benchmarks.

use wpp_mori::coxring::point_ideal;
use wpp_mori::groebner::Ideal;
use wpp_mori::{SparsePoly, WeightTriple};

/// Triples spanning the cheap K* case up to pair searches with multiplicity above five.
pub const TRIPLES: [[u64; 3]; 4] = [[2, 3, 5], [7, 3, 11], [7, 9, 10], [4, 11, 13]];

pub fn triple(t: [u64; 3]) -> WeightTriple {
    WeightTriple::new(t[0], t[1], t[2]).expect("benchmark triples are coprime")
}

/// `I^mu` for the point ideal of `w`, the input of the saturation oracle.
pub fn point_power(w: &WeightTriple, mu: u32) -> Ideal {
    point_ideal(w)
        .and_then(|i| i.power(mu))
        .expect("point ideal power")
}

pub fn xyz(ideal: &Ideal) -> SparsePoly {
    SparsePoly::term(ideal.ring(), 1, &[1, 1, 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_build() {
        for t in TRIPLES {
            let w = triple(t);
            assert_eq!(point_power(&w, 2).ring().nvars(), 3);
        }
    }
}
