//! Weighted grading of `K[x,y,z]` and the numerical-monoid arithmetic around it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pairwise coprime positive weights `(a, b, c)` with `deg x = a`, `deg y = b`, `deg z = c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u64; 3]", into = "[u64; 3]")]
pub struct WeightTriple {
    a: u64,
    b: u64,
    c: u64,
}

impl WeightTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::NonPositiveWeight(a, b, c));
        }
        for (first, second, p, q) in [("a", "b", a, b), ("b", "c", b, c), ("a", "c", a, c)] {
            let g = p.gcd(&q);
            if g != 1 {
                return Err(Error::NotCoprime { first, second, gcd: g });
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    /// `abc`, the denominator of `H^2`.
    pub fn product(&self) -> u64 {
        self.a * self.b * self.c
    }

    /// Reorders the weights: entry `i` of the result is `self[perm[i]]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let w = self.as_array();
        Self {
            a: w[perm[0]],
            b: w[perm[1]],
            c: w[perm[2]],
        }
    }

    pub fn degree_of(&self, e: &ExponentVector) -> u64 {
        self.a * e.i as u64 + self.b * e.j as u64 + self.c * e.k as u64
    }

    /// True if some weight equals one, i.e. the blow-up is toric.
    pub fn has_unit_weight(&self) -> bool {
        self.a == 1 || self.b == 1 || self.c == 1
    }
}

impl TryFrom<[u64; 3]> for WeightTriple {
    type Error = Error;

    fn try_from(w: [u64; 3]) -> Result<Self> {
        Self::new(w[0], w[1], w[2])
    }
}

impl From<WeightTriple> for [u64; 3] {
    fn from(w: WeightTriple) -> Self {
        w.as_array()
    }
}

impl fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Exponents of a monomial `x^i y^j z^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl ExponentVector {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Self { i, j, k }
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.i, self.j, self.k]
    }
}

/// The divisor class `d H + mu E` on the blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassElement {
    pub d: i64,
    pub mu: i64,
}

impl ClassElement {
    pub fn new(d: i64, mu: i64) -> Self {
        Self { d, mu }
    }
}

/// All exponent vectors of weighted degree `d`, in lexicographic order on `(i, j, k)`.
pub fn monomials_of_degree(w: &WeightTriple, d: u64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let (a, b, c) = (w.a, w.b, w.c);
    for i in 0..=d / a {
        let rest = d - a * i;
        for j in 0..=rest / b {
            let r = rest - b * j;
            if r.is_multiple_of(c) {
                out.push(ExponentVector::new(i as u32, j as u32, (r / c) as u32));
            }
        }
    }
    out
}

/// Number of monomials of weighted degree `d`, without materializing them.
pub fn count_monomials(w: &WeightTriple, d: u64) -> usize {
    let (a, b, c) = (w.a, w.b, w.c);
    let mut n = 0;
    for i in 0..=d / a {
        let rest = d - a * i;
        for j in 0..=rest / b {
            if (rest - b * j).is_multiple_of(c) {
                n += 1;
            }
        }
    }
    n
}

/// Whether `n = alpha p + beta q` for some non-negative integers `alpha`, `beta`.
pub fn monoid_member(n: u64, p: u64, q: u64) -> bool {
    monoid_decomposition(n, p, q).is_some()
}

/// The representation `n = alpha p + beta q` with the smallest `alpha`, if any.
pub fn monoid_decomposition(n: u64, p: u64, q: u64) -> Option<(u64, u64)> {
    assert!(p > 0 && q > 0, "monoid generators must be positive");
    (0..=n / p).find_map(|alpha| {
        let rest = n - alpha * p;
        rest.is_multiple_of(q).then_some((alpha, rest / q))
    })
}

/// The Frobenius number `pq - p - q` of the monoid generated by coprime `p, q >= 2`.
pub fn frobenius(p: u64, q: u64) -> Result<u64> {
    if p == 0 || q == 0 {
        return Err(Error::NoFrobeniusNumber(p, q, "generators must be positive"));
    }
    if p == 1 || q == 1 {
        return Err(Error::NoFrobeniusNumber(
            p,
            q,
            "a generator equals 1, every non-negative integer is representable",
        ));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NoFrobeniusNumber(p, q, "generators are not coprime"));
    }
    Ok(p * q - p - q)
}

/// Intersection number of `u` and `v` on the blow-up, using `H^2 = 1/abc`, `H.E = 0`, `E^2 = -1`.
pub fn intersection(w: &WeightTriple, u: &ClassElement, v: &ClassElement) -> BigRational {
    let hh = BigRational::new(BigInt::from(u.d) * v.d, BigInt::from(w.product()));
    hh - BigRational::from_integer(BigInt::from(u.mu) * v.mu)
}

/// All pairwise coprime triples `a_min <= a < b < c <= c_max`, in lexicographic order.
pub fn coprime_triples(a_min: u64, c_max: u64) -> Vec<WeightTriple> {
    let mut out = Vec::new();
    for c in 1..=c_max {
        for b in 1..c {
            for a in a_min.max(1)..b {
                if let Ok(w) = WeightTriple::new(a, b, c) {
                    out.push(w);
                }
            }
        }
    }
    out.sort();
    out
}
