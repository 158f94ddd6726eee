//! Orthogonal-pair search deciding whether the blow-up of `P(a,b,c)` at `[1,1,1]` is a Mori
//! dream surface.
//!
//! `f1` is a form of least degree `d1` with `d1^2 <= mu1^2 abc`; `f2` is a form of least degree
//! `d2` with `d1 d2 = mu1 mu2 abc` and `f1 ∤ f2`, where `mu_i` are exact multiplicities at
//! the point. Both searches run on dimensions of the slices `V(d, mu)`.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::mult::{normalize_sign, SliceEngine, TieBreak};
use crate::poly::{divides, SparsePoly, WeightedDegree};
use crate::weights::{intersection, ClassElement, WeightTriple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalPair {
    pub f1: SparsePoly,
    pub d1: u64,
    pub mu1: u32,
    pub f2: SparsePoly,
    pub d2: u64,
    pub mu2: u32,
}

impl OrthogonalPair {
    pub fn signature(&self) -> PairSignature {
        PairSignature {
            d1: self.d1,
            mu1: self.mu1,
            d2: self.d2,
            mu2: self.mu2,
        }
    }
}

/// The numeric part `(d1, mu1, d2, mu2)` of an orthogonal pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairSignature {
    pub d1: u64,
    pub mu1: u32,
    pub d2: u64,
    pub mu2: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MdsVerdict {
    MoriDream(OrthogonalPair),
    /// No orthogonal pair with degrees up to `d_cap` in the stage that gave up.
    Inconclusive { mu_cap: u32, d_cap: u64 },
}

impl MdsVerdict {
    pub fn is_mori_dream(&self) -> bool {
        matches!(self, MdsVerdict::MoriDream(_))
    }

    pub fn pair(&self) -> Option<&OrthogonalPair> {
        match self {
            MdsVerdict::MoriDream(p) => Some(p),
            MdsVerdict::Inconclusive { .. } => None,
        }
    }
}

fn isqrt_ceil(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while r * r < n {
        r += 1;
    }
    r
}

/// Least `mu` with `d^2 <= mu^2 abc`.
pub fn mu_star(w: &WeightTriple, d: u64) -> u32 {
    let abc = w.product() as u128;
    let d2 = d as u128 * d as u128;
    let mut mu = (isqrt_ceil(d2.div_ceil(abc))) as u32;
    while (mu as u128) * (mu as u128) * abc < d2 {
        mu += 1;
    }
    while mu > 0 && ((mu - 1) as u128) * ((mu - 1) as u128) * abc >= d2 {
        mu -= 1;
    }
    mu
}

/// Search state for one weight triple; slice dimensions are shared between the two stages.
#[derive(Clone, Debug)]
pub struct PairSearch {
    engine: SliceEngine,
    tie: TieBreak,
}

impl PairSearch {
    pub fn new(w: &WeightTriple, tie: TieBreak) -> Self {
        Self {
            engine: SliceEngine::new(w),
            tie,
        }
    }

    pub fn engine(&mut self) -> &mut SliceEngine {
        &mut self.engine
    }

    pub fn find_f1(&mut self, d_cap: u64) -> Option<(u64, u32, SparsePoly)> {
        let w = *self.engine.weights();
        for d in 1..=d_cap {
            let mu = mu_star(&w, d);
            if self.engine.is_nonzero(d, mu) {
                let (mu_exact, f) = self
                    .engine
                    .generic_exact_multiplicity(d, mu, self.tie)
                    .expect("slice checked nonzero");
                return Some((d, mu_exact, f));
            }
        }
        None
    }

    pub fn find_f2(
        &mut self,
        d1: u64,
        mu1: u32,
        f1: &SparsePoly,
        d_cap: u64,
    ) -> Option<(u64, u32, SparsePoly)> {
        let w = *self.engine.weights();
        let den = mu1 as u64 * w.product();
        // d1 * d2 must be a multiple of mu1 * abc.
        let step = den / d1.gcd(&den);
        let mut d2 = step;
        while d2 <= d_cap {
            let mu2 = ((d1 as u128 * d2 as u128) / den as u128) as u32;
            if let Some(f2) = self.try_f2(d1, mu1, f1, d2, mu2) {
                return Some((d2, mu2, f2));
            }
            d2 += step;
        }
        None
    }

    fn try_f2(&mut self, d1: u64, mu1: u32, f1: &SparsePoly, d2: u64, mu2: u32) -> Option<SparsePoly> {
        let dim_v = self.engine.dim(d2, mu2);
        if dim_v == 0 || self.engine.dim(d2, mu2 + 1) == dim_v {
            return None;
        }
        // Multiples of f1 inside V(d2, mu2) are f1 * V(d2 - d1, mu2 - mu1).
        let dim_b = if d2 >= d1 {
            self.engine.dim(d2 - d1, mu2.saturating_sub(mu1))
        } else {
            0
        };
        if dim_b == dim_v {
            return None;
        }
        let mut basis = self.engine.basis(d2, mu2);
        if self.tie == TieBreak::Reverse {
            basis.reverse();
        }
        let mut outside_a: Option<SparsePoly> = None;
        let mut outside_b: Option<SparsePoly> = None;
        for g in basis {
            let exact = self.engine.rees_multiplicity(&g).expect("basis forms are nonzero") == mu2;
            let divisible = divides(f1, &g).expect("f1 is nonzero");
            if exact && !divisible {
                return Some(g);
            }
            if exact && outside_a.is_none() {
                outside_a = Some(g);
            } else if !divisible && outside_b.is_none() {
                outside_b = Some(g);
            }
        }
        // v lies outside A but inside B, w the other way round, so v + w avoids both.
        let v = outside_a.expect("V is not contained in A");
        let w = outside_b.expect("V is not contained in B");
        Some(normalize_sign(&(&v + &w)))
    }
}

/// Minimal `f1` of degree at most `d_cap`.
pub fn find_f1(w: &WeightTriple, d_cap: u64) -> Option<(u64, u32, SparsePoly)> {
    PairSearch::new(w, TieBreak::Forward).find_f1(d_cap)
}

/// Minimal `f2` for a given `f1`, with degree at most `d_cap`.
pub fn find_f2(
    w: &WeightTriple,
    d1: u64,
    mu1: u32,
    f1: &SparsePoly,
    d_cap: u64,
) -> Option<(u64, u32, SparsePoly)> {
    PairSearch::new(w, TieBreak::Forward).find_f2(d1, mu1, f1, d_cap)
}

/// Degree bound for `f1`: `mu_cap * ceil(sqrt(abc))`.
pub fn f1_degree_cap(w: &WeightTriple, mu_cap: u32) -> u64 {
    mu_cap as u64 * isqrt_ceil(w.product() as u128) as u64
}

/// Degree bound for `f2` keeping `mu2 <= mu_cap`.
pub fn f2_degree_cap(w: &WeightTriple, mu_cap: u32, d1: u64, mu1: u32) -> u64 {
    ((mu_cap as u128 * mu1 as u128 * w.product() as u128) / d1 as u128) as u64
}

pub fn mds_test(w: &WeightTriple, mu_cap: u32) -> MdsVerdict {
    mds_test_with(w, mu_cap, TieBreak::Forward)
}

pub fn mds_test_with(w: &WeightTriple, mu_cap: u32, tie: TieBreak) -> MdsVerdict {
    assert!(mu_cap >= 1, "mu_cap must be positive");
    let mut search = PairSearch::new(w, tie);
    let cap1 = f1_degree_cap(w, mu_cap);
    let Some((d1, mu1, f1)) = search.find_f1(cap1) else {
        return MdsVerdict::Inconclusive { mu_cap, d_cap: cap1 };
    };
    let cap2 = f2_degree_cap(w, mu_cap, d1, mu1);
    match search.find_f2(d1, mu1, &f1, cap2) {
        Some((d2, mu2, f2)) => MdsVerdict::MoriDream(OrthogonalPair {
            f1,
            d1,
            mu1,
            f2,
            d2,
            mu2,
        }),
        None => MdsVerdict::Inconclusive { mu_cap, d_cap: cap2 },
    }
}

pub fn pair_degrees(w: &WeightTriple, mu_cap: u32) -> Option<PairSignature> {
    mds_test(w, mu_cap).pair().map(OrthogonalPair::signature)
}

/// Rechecks every defining property of an orthogonal pair except minimality.
pub fn check_pair(w: &WeightTriple, p: &OrthogonalPair) -> Result<(), String> {
    let abc = w.product() as u128;
    let (d1, d2) = (p.d1 as u128, p.d2 as u128);
    let (m1, m2) = (p.mu1 as u128, p.mu2 as u128);
    if d1 * d1 > m1 * m1 * abc {
        return Err(format!("d1^2 = {} exceeds mu1^2 abc = {}", d1 * d1, m1 * m1 * abc));
    }
    if d1 * d2 != m1 * m2 * abc {
        return Err(format!("d1 d2 = {} differs from mu1 mu2 abc = {}", d1 * d2, m1 * m2 * abc));
    }
    for (name, f, d, mu) in [("f1", &p.f1, p.d1, p.mu1), ("f2", &p.f2, p.d2, p.mu2)] {
        if f.weighted_degree(w) != WeightedDegree::Homogeneous(d) {
            return Err(format!("{name} is not homogeneous of degree {d}"));
        }
        let m = crate::mult::rees_multiplicity(w, f).map_err(|e| e.to_string())?;
        if m != mu {
            return Err(format!("{name} has multiplicity {m}, expected {mu}"));
        }
    }
    if divides(&p.f1, &p.f2).map_err(|e| e.to_string())? {
        return Err("f1 divides f2".into());
    }
    let u = ClassElement::new(p.d1 as i64, -(p.mu1 as i64));
    let v = ClassElement::new(p.d2 as i64, -(p.mu2 as i64));
    if !intersection(w, &u, &v).is_zero() {
        return Err("classes are not orthogonal".into());
    }
    Ok(())
}
