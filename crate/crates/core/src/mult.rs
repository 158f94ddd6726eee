//! Vanishing order at the torus point `[1,1,1]` of `P(a,b,c)`.
//!
//! A form of degree `d` divided by a fixed monomial `m0` of the same degree is a Laurent
//! polynomial on the two-dimensional torus. Its order of vanishing at `(1,1)` is read off from
//! Hasse derivatives, which on a monomial `s^u t^v` evaluate to `C(u,α)·C(v,β)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, mul_mod};
use crate::poly::{Monomial, MonomialOrder, Ring, SparsePoly, WeightedDegree};
use crate::weights::{count_monomials, monomials_of_degree, ExponentVector, WeightTriple};

/// Prime used to certify full rank before falling back to exact elimination.
const RANK_PRIME: u64 = (1 << 61) - 1;

/// Order in which candidate basis vectors are tried when picking witnesses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreak {
    #[default]
    Forward,
    Reverse,
}

/// Integer map `Z^3 -> Z^2` restricting to an isomorphism from `{u : au1 + bu2 + cu3 = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusChart {
    rows: [[i64; 3]; 2],
    /// Basis of the degree-zero lattice dual to `rows`.
    basis: [[i64; 3]; 2],
}

impl TorusChart {
    pub fn matrix(&self) -> [[i64; 3]; 2] {
        self.rows
    }

    /// Lattice basis `b1, b2` of the degree-zero exponents with `M b_i = e_i`.
    pub fn kernel_basis(&self) -> [[i64; 3]; 2] {
        self.basis
    }

    pub fn apply(&self, v: [i64; 3]) -> (i64, i64) {
        let dot = |r: &[i64; 3]| r[0] * v[0] + r[1] * v[1] + r[2] * v[2];
        (dot(&self.rows[0]), dot(&self.rows[1]))
    }

    /// Chart coordinates of `m / m0` for two exponent vectors of equal degree.
    pub fn coordinates(&self, m: &ExponentVector, m0: &ExponentVector) -> (i64, i64) {
        self.apply([
            m.i as i64 - m0.i as i64,
            m.j as i64 - m0.j as i64,
            m.k as i64 - m0.k as i64,
        ])
    }
}

fn dot3(a: &[i64; 3], b: &[i64; 3]) -> i128 {
    (0..3).map(|i| a[i] as i128 * b[i] as i128).sum()
}

/// Builds the chart from the Smith normal form of the `1 x 3` weight matrix, then
/// Lagrange-reduces the kernel basis so chart coordinates stay small.
pub fn torus_chart(w: &WeightTriple) -> TorusChart {
    let row = vec![vec![w.a() as i64, w.b() as i64, w.c() as i64]];
    let snf = linalg::smith_normal_form(&row).expect("weights fit in i64");
    debug_assert_eq!(snf.diagonal, vec![1]);
    let col = |j: usize| [snf.v[0][j], snf.v[1][j], snf.v[2][j]];
    let mut b = [col(1), col(2)];
    let row_of = |i: usize| [snf.v_inv[i][0], snf.v_inv[i][1], snf.v_inv[i][2]];
    let mut m = [row_of(1), row_of(2)];

    // Keep M * B = I while reducing: b2 -= q b1 forces m1 += q m2, swaps swap both.
    loop {
        if dot3(&b[0], &b[0]) > dot3(&b[1], &b[1]) {
            b.swap(0, 1);
            m.swap(0, 1);
        }
        let n0 = dot3(&b[0], &b[0]);
        let q = (2 * dot3(&b[0], &b[1]) + n0).div_euclid(2 * n0) as i64;
        if q == 0 {
            break;
        }
        for i in 0..3 {
            b[1][i] -= q * b[0][i];
            m[0][i] += q * m[1][i];
        }
        if dot3(&b[1], &b[1]) >= n0 {
            break;
        }
    }
    TorusChart { rows: m, basis: b }
}

/// Generalized binomial coefficient `C(u, k) = u (u-1) ... (u-k+1) / k!` for any integer `u`.
pub fn binomial(u: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(u - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

fn binomials_upto(u: i64, k: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for i in 0..k as i64 {
        acc *= BigInt::from(u - i);
        acc /= BigInt::from(i + 1);
        out.push(acc.clone());
    }
    out
}

fn binomials_upto_mod(u: i64, k: u32, p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut acc = 1u64;
    out.push(acc);
    for i in 0..k as i64 {
        let factor = (u - i).rem_euclid(p as i64) as u64;
        acc = mul_mod(acc, factor, p);
        acc = mul_mod(acc, linalg::inv_mod((i + 1) as u64, p), p);
        out.push(acc);
    }
    out
}

/// Hasse-derivative conditions for vanishing to order `mu` at `[1,1,1]` on forms of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionMatrix {
    /// Derivative orders `(α, β)` with `α + β < mu`, graded then by decreasing `α`.
    pub orders: Vec<(u32, u32)>,
    /// Column monomials in lexicographic order; the first one is the chart base `m0`.
    pub monomials: Vec<ExponentVector>,
    /// Chart coordinates `(u_m, v_m)` of `m / m0`.
    pub coordinates: Vec<(i64, i64)>,
    pub entries: Vec<Vec<BigInt>>,
}

fn derivative_orders(mu: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for k in 0..mu {
        for beta in 0..=k {
            out.push((k - beta, beta));
        }
    }
    out
}

fn chart_coordinates(chart: &TorusChart, monomials: &[ExponentVector]) -> Vec<(i64, i64)> {
    match monomials.first() {
        None => Vec::new(),
        Some(m0) => monomials.iter().map(|m| chart.coordinates(m, m0)).collect(),
    }
}

pub fn condition_matrix(w: &WeightTriple, d: u64, mu: u32) -> ConditionMatrix {
    build_condition_matrix(&torus_chart(w), w, d, mu)
}

fn build_condition_matrix(
    chart: &TorusChart,
    w: &WeightTriple,
    d: u64,
    mu: u32,
) -> ConditionMatrix {
    let monomials = monomials_of_degree(w, d);
    let coordinates = chart_coordinates(chart, &monomials);
    let orders = derivative_orders(mu);
    let k = mu.saturating_sub(1);
    let tables: Vec<(Vec<BigInt>, Vec<BigInt>)> = coordinates
        .iter()
        .map(|&(u, v)| (binomials_upto(u, k), binomials_upto(v, k)))
        .collect();
    let entries = orders
        .iter()
        .map(|&(al, be)| {
            tables
                .iter()
                .map(|(bu, bv)| &bu[al as usize] * &bv[be as usize])
                .collect()
        })
        .collect();
    ConditionMatrix {
        orders,
        monomials,
        coordinates,
        entries,
    }
}

fn condition_matrix_mod_p(coordinates: &[(i64, i64)], mu: u32, p: u64) -> Vec<Vec<u64>> {
    let k = mu.saturating_sub(1);
    let tables: Vec<(Vec<u64>, Vec<u64>)> = coordinates
        .iter()
        .map(|&(u, v)| (binomials_upto_mod(u, k, p), binomials_upto_mod(v, k, p)))
        .collect();
    derivative_orders(mu)
        .iter()
        .map(|&(al, be)| {
            tables
                .iter()
                .map(|(bu, bv)| mul_mod(bu[al as usize], bv[be as usize], p))
                .collect()
        })
        .collect()
}

/// `V(d, mu)`: forms of degree `d` with multiplicity at least `mu` at `[1,1,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSlice {
    pub d: u64,
    pub mu: u32,
    pub dim: usize,
    pub basis: Vec<SparsePoly>,
}

fn vector_to_poly(ring: &Ring, monomials: &[ExponentVector], v: &[BigInt]) -> SparsePoly {
    let p = SparsePoly::from_terms(
        ring,
        monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| {
            (
                Monomial::new(vec![m.i, m.j, m.k]),
                BigRational::from_integer(c.clone()),
            )
        }),
    );
    normalize_sign(&p)
}

/// Makes the grevlex-leading coefficient positive.
pub(crate) fn normalize_sign(p: &SparsePoly) -> SparsePoly {
    let order = MonomialOrder::grevlex(p.ring().nvars());
    match p.leading_term(&order) {
        Some((_, c)) if c.is_negative() => -p,
        _ => p.clone(),
    }
}

/// Per-weight-triple evaluator that memoizes slice dimensions.
#[derive(Clone, Debug)]
pub struct SliceEngine {
    w: WeightTriple,
    chart: TorusChart,
    ring: Ring,
    dims: HashMap<(u64, u32), usize>,
}

impl SliceEngine {
    pub fn new(w: &WeightTriple) -> Self {
        Self {
            w: *w,
            chart: torus_chart(w),
            ring: Ring::xyz(),
            dims: HashMap::new(),
        }
    }

    pub fn weights(&self) -> &WeightTriple {
        &self.w
    }

    pub fn chart(&self) -> &TorusChart {
        &self.chart
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `dim V(d, mu)`.
    pub fn dim(&mut self, d: u64, mu: u32) -> usize {
        if let Some(&dim) = self.dims.get(&(d, mu)) {
            return dim;
        }
        let dim = self.compute_dim(d, mu);
        self.dims.insert((d, mu), dim);
        dim
    }

    fn compute_dim(&self, d: u64, mu: u32) -> usize {
        let n = count_monomials(&self.w, d);
        if n == 0 || mu == 0 {
            return n;
        }
        let monomials = monomials_of_degree(&self.w, d);
        let coords = chart_coordinates(&self.chart, &monomials);
        let nrows = (mu as usize) * (mu as usize + 1) / 2;
        // Rank over Q is at least the rank mod p, so a full rank mod p is exact.
        let rank_p = linalg::rank_mod_p(&condition_matrix_mod_p(&coords, mu, RANK_PRIME), RANK_PRIME);
        if rank_p == nrows.min(n) {
            return n - rank_p;
        }
        let m = build_condition_matrix(&self.chart, &self.w, d, mu);
        n - linalg::bareiss_rank(&m.entries)
    }

    /// Whether `V(d, mu)` is nonzero, short-circuiting when there are more monomials than
    /// conditions.
    pub fn is_nonzero(&mut self, d: u64, mu: u32) -> bool {
        let n = count_monomials(&self.w, d);
        let nrows = (mu as usize) * (mu as usize + 1) / 2;
        if n > nrows {
            return true;
        }
        self.dim(d, mu) > 0
    }

    /// Kernel basis of the order-`mu` condition matrix as polynomials in `x, y, z`.
    ///
    /// The basis is the reduced-echelon one, so it depends only on the subspace.
    pub fn basis(&mut self, d: u64, mu: u32) -> Vec<SparsePoly> {
        let m = build_condition_matrix(&self.chart, &self.w, d, mu);
        let n = m.monomials.len();
        let kernel = if mu == 0 {
            (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
                .collect()
        } else {
            linalg::integer_kernel(&m.entries, n)
        };
        self.dims.insert((d, mu), kernel.len());
        kernel
            .iter()
            .map(|v| vector_to_poly(&self.ring, &m.monomials, v))
            .collect()
    }

    pub fn slice(&mut self, d: u64, mu: u32) -> SymbolicSlice {
        let basis = self.basis(d, mu);
        SymbolicSlice {
            d,
            mu,
            dim: basis.len(),
            basis,
        }
    }

    pub fn rees_multiplicity(&self, f: &SparsePoly) -> Result<u32> {
        rees_multiplicity_with(&self.chart, &self.w, f)
    }

    /// Largest `mu >= mu_min` with `V(d, mu) = V(d, mu_min)`, and a form of exactly that
    /// multiplicity taken from the basis of `V(d, mu)`.
    pub fn generic_exact_multiplicity(
        &mut self,
        d: u64,
        mu_min: u32,
        tie: TieBreak,
    ) -> Result<(u32, SparsePoly)> {
        let dim0 = self.dim(d, mu_min);
        if dim0 == 0 {
            return Err(Error::EmptySlice { degree: d, mu: mu_min });
        }
        let mut mu = mu_min;
        while self.dim(d, mu + 1) == dim0 {
            mu += 1;
        }
        let mut basis = self.basis(d, mu);
        if tie == TieBreak::Reverse {
            basis.reverse();
        }
        for f in basis {
            if self.rees_multiplicity(&f)? == mu {
                return Ok((mu, f));
            }
        }
        unreachable!("V(d, mu+1) is a proper subspace, so some basis vector lies outside it")
    }
}

pub fn symbolic_slice(w: &WeightTriple, d: u64, mu: u32) -> SymbolicSlice {
    SliceEngine::new(w).slice(d, mu)
}

pub fn slice_dim(w: &WeightTriple, d: u64, mu: u32) -> usize {
    SliceEngine::new(w).dim(d, mu)
}

pub fn rees_multiplicity(w: &WeightTriple, f: &SparsePoly) -> Result<u32> {
    rees_multiplicity_with(&torus_chart(w), w, f)
}

pub fn generic_exact_multiplicity(
    w: &WeightTriple,
    d: u64,
    mu_min: u32,
) -> Result<(u32, SparsePoly)> {
    SliceEngine::new(w).generic_exact_multiplicity(d, mu_min, TieBreak::Forward)
}

fn rees_multiplicity_with(chart: &TorusChart, w: &WeightTriple, f: &SparsePoly) -> Result<u32> {
    if f.ring().nvars() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected a polynomial in three variables, got ring {}",
            f.ring()
        )));
    }
    let d = match f.weighted_degree(w) {
        WeightedDegree::Zero => return Err(Error::ZeroPolynomial),
        WeightedDegree::Inhomogeneous => return Err(Error::Inhomogeneous),
        WeightedDegree::Homogeneous(d) => d,
    };
    let m0 = monomials_of_degree(w, d)[0];
    let terms: Vec<((i64, i64), &BigRational)> = f
        .terms()
        .map(|(m, c)| {
            let e = m.exponents();
            (chart.coordinates(&ExponentVector::new(e[0], e[1], e[2]), &m0), c)
        })
        .collect();
    let mut k: u32 = 0;
    let mut tables: Vec<(Vec<BigInt>, Vec<BigInt>)> = terms
        .iter()
        .map(|&((u, v), _)| (binomials_upto(u, 0), binomials_upto(v, 0)))
        .collect();
    loop {
        if k > 0 {
            tables = terms
                .iter()
                .map(|&((u, v), _)| (binomials_upto(u, k), binomials_upto(v, k)))
                .collect();
        }
        for alpha in (0..=k).rev() {
            let beta = k - alpha;
            let s: BigRational = terms
                .iter()
                .zip(&tables)
                .map(|((_, c), (bu, bv))| {
                    *c * BigRational::from_integer(&bu[alpha as usize] * &bv[beta as usize])
                })
                .sum();
            if !s.is_zero() {
                return Ok(k);
            }
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: u64, b: u64, c: u64) -> WeightTriple {
        WeightTriple::new(a, b, c).unwrap()
    }

    fn xyz(s: &str) -> SparsePoly {
        SparsePoly::parse(&Ring::xyz(), s).unwrap()
    }

    #[test]
    fn chart_is_an_isomorphism_on_degree_zero_lattice() {
        for t in [(1, 1, 1), (7, 3, 11), (2, 3, 5), (13, 16, 17), (1, 2, 29)] {
            let w = w(t.0, t.1, t.2);
            let chart = torus_chart(&w);
            let [b1, b2] = chart.kernel_basis();
            for b in [b1, b2] {
                assert_eq!(w.a() as i64 * b[0] + w.b() as i64 * b[1] + w.c() as i64 * b[2], 0);
            }
            assert_eq!(chart.apply(b1), (1, 0));
            assert_eq!(chart.apply(b2), (0, 1));
        }
    }

    #[test]
    fn chart_image_of_binomial_is_primitive() {
        let chart = torus_chart(&w(7, 3, 11));
        let (u, v) = chart.apply([2, -1, -1]);
        use num_integer::Integer;
        assert_eq!(u.gcd(&v), 1);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(2, 5), BigInt::from(0));
        assert_eq!(binomial(7, 0), BigInt::from(1));
    }

    #[test]
    fn slice_examples() {
        assert_eq!(symbolic_slice(&w(1, 1, 1), 2, 1).dim, 5);
        assert_eq!(symbolic_slice(&w(1, 1, 1), 2, 2).dim, 3);
        assert_eq!(symbolic_slice(&w(1, 1, 1), 2, 0).dim, 6);
        let s = symbolic_slice(&w(7, 3, 11), 33, 2);
        let f = xyz("y^11 + z^3 - 3*x*y^5*z + x^3*y^4");
        let m = condition_matrix(&w(7, 3, 11), 33, 2);
        let v: Vec<BigInt> = m
            .monomials
            .iter()
            .map(|e| f.coeff(&Monomial::new(vec![e.i, e.j, e.k])).to_integer())
            .collect();
        for row in &m.entries {
            let s: BigInt = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        assert!(s.dim >= 1);
    }

    #[test]
    fn rees_multiplicity_examples() {
        assert_eq!(rees_multiplicity(&w(1, 1, 1), &xyz("x - y")).unwrap(), 1);
        assert_eq!(rees_multiplicity(&w(7, 3, 11), &xyz("x^2 - y*z")).unwrap(), 1);
        let f = xyz("y^11 + z^3 - 3*x*y^5*z + x^3*y^4");
        assert_eq!(rees_multiplicity(&w(7, 3, 11), &f).unwrap(), 2);
        assert_eq!(rees_multiplicity(&w(1, 1, 1), &xyz("x")).unwrap(), 0);
        assert_eq!(rees_multiplicity(&w(1, 1, 1), &xyz("0")), Err(Error::ZeroPolynomial));
        assert_eq!(rees_multiplicity(&w(1, 1, 1), &xyz("x + y^2")), Err(Error::Inhomogeneous));
    }

    #[test]
    fn generic_exact_multiplicity_examples() {
        let (mu, f) = generic_exact_multiplicity(&w(1, 1, 1), 1, 1).unwrap();
        assert_eq!(mu, 1);
        assert_eq!(rees_multiplicity(&w(1, 1, 1), &f).unwrap(), 1);
        let (mu, f) = generic_exact_multiplicity(&w(2, 3, 5), 5, 1).unwrap();
        assert_eq!((mu, f), (1, xyz("x*y - z")));
        let (mu, f) = generic_exact_multiplicity(&w(7, 3, 11), 33, 2).unwrap();
        assert_eq!(mu, 2);
        assert_eq!(rees_multiplicity(&w(7, 3, 11), &f).unwrap(), 2);
        assert!(matches!(
            generic_exact_multiplicity(&w(2, 3, 5), 1, 1),
            Err(Error::EmptySlice { .. })
        ));
    }

    #[test]
    fn slices_are_nested_and_match_brute_force_rank() {
        let mut eng = SliceEngine::new(&w(3, 4, 5));
        for d in 0..40 {
            for mu in 0..5 {
                let a = eng.dim(d, mu);
                let b = eng.dim(d, mu + 1);
                assert!(b <= a);
                let m = condition_matrix(&w(3, 4, 5), d, mu);
                let n = m.monomials.len();
                let exact = if mu == 0 { n } else { n - linalg::bareiss_rank(&m.entries) };
                assert_eq!(a, exact, "d={d} mu={mu}");
            }
        }
    }

    #[test]
    fn binomials_have_multiplicity_one() {
        let w = w(7, 3, 11);
        for d in 20..60 {
            let mons = monomials_of_degree(&w, d);
            for p in &mons {
                for q in &mons {
                    if p >= q {
                        continue;
                    }
                    let f = &SparsePoly::term(&Ring::xyz(), 1, &p.as_array())
                        - &SparsePoly::term(&Ring::xyz(), 1, &q.as_array());
                    assert_eq!(rees_multiplicity(&w, &f).unwrap(), 1);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn random_form(w: &WeightTriple, d: u64, coeffs: &[i64]) -> SparsePoly {
            let mons = monomials_of_degree(w, d);
            SparsePoly::from_terms(
                &Ring::xyz(),
                mons.iter().zip(coeffs.iter().cycle()).map(|(m, &c)| {
                    (
                        Monomial::new(vec![m.i, m.j, m.k]),
                        BigRational::from_integer(c.into()),
                    )
                }),
            )
        }

        proptest! {
            #[test]
            fn multiplicity_is_additive(
                d1 in 1u64..25, d2 in 1u64..25,
                c1 in proptest::collection::vec(-3i64..4, 1..8),
                c2 in proptest::collection::vec(-3i64..4, 1..8),
                mu1 in 0u32..3, mu2 in 0u32..3,
            ) {
                let w = WeightTriple::new(2, 3, 5).unwrap();
                let mut eng = SliceEngine::new(&w);
                // Mix random forms with forms forced to vanish at the point.
                let pick = |eng: &mut SliceEngine, d: u64, c: &[i64], mu: u32| {
                    let basis = eng.basis(d, mu);
                    let mut f = SparsePoly::zero(&Ring::xyz());
                    for (b, &k) in basis.iter().zip(c.iter().cycle()) {
                        f = &f + &b.scale(&BigRational::from_integer(k.into()));
                    }
                    if f.is_zero() { random_form(&w, d, c) } else { f }
                };
                let f = pick(&mut eng, d1, &c1, mu1);
                let g = pick(&mut eng, d2, &c2, mu2);
                prop_assume!(!f.is_zero() && !g.is_zero());
                let mf = rees_multiplicity(&w, &f).unwrap();
                let mg = rees_multiplicity(&w, &g).unwrap();
                prop_assert_eq!(rees_multiplicity(&w, &(&f * &g)).unwrap(), mf + mg);
            }
        }
    }
}
