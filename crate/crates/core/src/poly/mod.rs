//! Sparse multivariate polynomials with exact rational coefficients.

mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::WeightTriple;

pub use monomial::{Monomial, MonomialOrder};

/// An ordered list of variable names. Cheap to clone and compare.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Arc<Vec<String>>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[..i].contains(n), "duplicate variable name {n}");
        }
        Self { names: Arc::new(names) }
    }

    /// `K[x, y, z]`.
    pub fn xyz() -> Self {
        Self::new(&["x", "y", "z"])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A new ring with `prefix` variables placed before these and `suffix` after.
    pub fn extended<S: AsRef<str>>(&self, prefix: &[S], suffix: &[S]) -> Self {
        let mut names: Vec<String> = prefix.iter().map(|s| s.as_ref().to_string()).collect();
        names.extend(self.names.iter().cloned());
        names.extend(suffix.iter().map(|s| s.as_ref().to_string()));
        Self::new(&names)
    }

    fn describe(&self) -> String {
        self.names.join(", ")
    }

    fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.describe(), other.describe()))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.describe())
    }
}

/// Weighted degree of a polynomial, if it has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightedDegree {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Homogeneous(u64),
    Inhomogeneous,
}

impl WeightedDegree {
    pub fn value(&self) -> Option<u64> {
        match self {
            WeightedDegree::Homogeneous(d) => Some(*d),
            _ => None,
        }
    }
}

/// A polynomial over an explicit [`Ring`], stored as a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl SparsePoly {
    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Ring, c: BigRational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, rat(c))
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), BigRational::one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name} in {ring}")))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { ring: ring.clone(), terms }
    }

    /// Monomial with integer coefficient, from an exponent slice.
    pub fn term(ring: &Ring, c: i64, exps: &[u32]) -> Self {
        Self::monomial(ring, Monomial::new(exps.to_vec()), rat(c))
    }

    /// Builds a polynomial, summing coefficients of repeated monomials.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        parse::parse(ring, text)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms sorted from largest to smallest monomial under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Largest exponent of variable `index` occurring in any term.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[index]).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.ring.check_same(&other.ring)?;
        let mut out = SparsePoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut result = SparsePoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(&self.ring);
        }
        SparsePoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(&self.ring);
        }
        SparsePoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Divides by the leading coefficient under `order`; zero stays zero.
    pub fn monic(&self, order: &MonomialOrder) -> SparsePoly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Weighted degree for the given per-variable weights.
    pub fn weighted_degree_by(&self, weights: &[u64]) -> WeightedDegree {
        assert_eq!(weights.len(), self.ring.nvars(), "one weight per variable");
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        match degs.next() {
            None => WeightedDegree::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    WeightedDegree::Homogeneous(d)
                } else {
                    WeightedDegree::Inhomogeneous
                }
            }
        }
    }

    /// Weighted degree in `K[x, y, z]` with `deg x = a`, `deg y = b`, `deg z = c`.
    pub fn weighted_degree(&self, w: &WeightTriple) -> WeightedDegree {
        assert_eq!(self.ring.nvars(), 3, "weighted_degree expects a polynomial in x, y, z");
        self.weighted_degree_by(&w.as_array())
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, ring {} has {}",
                point.len(),
                self.ring,
                self.ring.nvars()
            )));
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Multivariate division by a single divisor: `self = q * divisor + r` where no term of
    /// `r` is divisible by the leading monomial of `divisor` under `order`.
    pub fn div_rem(
        &self,
        divisor: &SparsePoly,
        order: &MonomialOrder,
    ) -> Result<(SparsePoly, SparsePoly)> {
        self.ring.check_same(&divisor.ring)?;
        let (lm, lc) = divisor.leading_term(order).ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), lc.recip());
        let mut p = self.clone();
        let mut q = SparsePoly::zero(&self.ring);
        let mut r = SparsePoly::zero(&self.ring);
        while let Some((m, c)) = p.leading_term(order) {
            let (m, c) = (m.clone(), c.clone());
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c * &lc_inv;
                for (dm, dc) in &divisor.terms {
                    p.add_term(dm.mul(&qm), -(dc * &qc));
                }
                q.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }

    /// `Some(q)` with `self = q * divisor` if the division is exact.
    pub fn exact_div(&self, divisor: &SparsePoly) -> Result<Option<SparsePoly>> {
        let order = MonomialOrder::grevlex(self.ring.nvars());
        let (q, r) = self.div_rem(divisor, &order)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Rewrites the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<SparsePoly> {
        let map: Vec<usize> = self
            .ring
            .names()
            .iter()
            .map(|n| {
                target.index_of(n).ok_or_else(|| {
                    Error::RingMismatch(self.ring.describe(), target.describe())
                })
            })
            .collect::<Result<_>>()?;
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; all images share one ring.
    pub fn substitute(&self, images: &[SparsePoly]) -> Result<SparsePoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidInput(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        for p in images {
            target.check_same(&p.ring)?;
        }
        let mut powers: Vec<Vec<SparsePoly>> = vec![vec![SparsePoly::one(&target)]; images.len()];
        let mut out = SparsePoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Numerators scaled to coprime integers with positive leading coefficient under `order`.
    pub fn primitive_part(&self, order: &MonomialOrder) -> Vec<(Monomial, BigInt)> {
        use num_integer::Integer;
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<(Monomial, BigInt)> = self
            .sorted_terms(order)
            .into_iter()
            .map(|(m, c)| (m.clone(), (c * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        let mut g = BigInt::zero();
        for (_, c) in &ints {
            g = g.gcd(c);
        }
        if ints.first().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_zero() {
            for (_, c) in ints.iter_mut() {
                *c = &*c / &g;
            }
        }
        ints
    }
}

/// Whether `f` divides `g`, decided by division of `g` by `{f}` under grevlex.
pub fn divides(f: &SparsePoly, g: &SparsePoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(g.exact_div(f)?.is_some())
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    /// Panics if the rings differ; use [`SparsePoly::checked_add`] to get an error instead.
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&rat(-1))
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: SparsePoly) -> SparsePoly {
        &self + &rhs
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

pub(crate) fn fmt_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in ring.names().iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for SparsePoly {
    /// Terms from largest to smallest in grevlex, e.g. `x^2 - 3/2*y*z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let order = MonomialOrder::grevlex(self.ring.nvars());
        for (i, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                fmt_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz(s: &str) -> SparsePoly {
        SparsePoly::parse(&Ring::xyz(), s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&xyz("x - y") * &xyz("x + y"), xyz("x^2 - y^2"));
        assert_eq!(xyz("x^2 - y*z").pow(0), xyz("1"));
        let f = xyz("y^11 + z^3 - 3*x*y^5*z + x^3*y^4");
        assert_eq!(&f * &xyz("1"), f);
        assert_eq!(&f - &f, SparsePoly::zero(&Ring::xyz()));
        assert_eq!(xyz("x + y").pow(3), xyz("x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let p = SparsePoly::parse(&Ring::new(&["x", "y"]), "x").unwrap();
        assert!(matches!(p.checked_add(&xyz("x")), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn weighted_degree_examples() {
        let w = WeightTriple::new(7, 3, 11).unwrap();
        assert_eq!(xyz("x^2 - y*z").weighted_degree(&w), WeightedDegree::Homogeneous(14));
        let w1 = WeightTriple::new(1, 1, 1).unwrap();
        assert_eq!(xyz("x + y^2").weighted_degree(&w1), WeightedDegree::Inhomogeneous);
        assert_eq!(
            xyz("y^11 + z^3 - 3*x*y^5*z + x^3*y^4").weighted_degree(&w),
            WeightedDegree::Homogeneous(33)
        );
        assert_eq!(xyz("0").weighted_degree(&w), WeightedDegree::Zero);
    }

    #[test]
    fn divides_examples() {
        assert!(divides(&xyz("x - y"), &xyz("x^2 - y^2")).unwrap());
        assert!(!divides(&xyz("x - y"), &xyz("x - z")).unwrap());
        assert!(!divides(&xyz("x^2 - y*z"), &xyz("y^11 + z^3 - 3*x*y^5*z + x^3*y^4")).unwrap());
        assert!(matches!(divides(&xyz("0"), &xyz("x")), Err(Error::DivisionByZero)));
    }

    #[test]
    fn evaluate_examples() {
        let one = BigRational::one();
        let p = vec![one.clone(), one.clone(), one.clone()];
        assert_eq!(xyz("x^2 - y*z").evaluate(&p).unwrap(), BigRational::zero());
        let r2 = Ring::new(&["x", "y"]);
        let f = SparsePoly::parse(&r2, "x + y").unwrap();
        assert_eq!(f.evaluate(&[one.clone(), one.clone()]).unwrap(), rat(2));
        assert!(f.evaluate(&p).is_err());
        // f2 of the (7,3,11) rank-2 presentation vanishes at the point.
        assert!(xyz("x*z - y^6").evaluate(&p).unwrap().is_zero());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "x^2 - 3/2*y*z + 1",
            "-x*y^5*z + 7",
            "0",
            "-1/3",
            "y^11 + x^3*y^4 - 3*x*y^5*z + z^3",
        ] {
            let p = xyz(s);
            assert_eq!(xyz(&p.to_string()), p, "{s}");
        }
        assert_eq!(xyz("z + x").to_string(), "x + z");
    }

    #[test]
    fn embed_and_substitute() {
        let big = Ring::xyz().extended::<&str>(&[], &["s1", "t"]);
        let f = xyz("x^2 - y*z").embed(&big).unwrap();
        assert_eq!(f, SparsePoly::parse(&big, "x^2 - y*z").unwrap());
        // s1 -> (x^2 - yz), t -> 1
        let g = SparsePoly::parse(&big, "s1*t - x^2 + y*z").unwrap();
        let images: Vec<SparsePoly> = ["x", "y", "z", "x^2 - y*z", "1"]
            .iter()
            .map(|s| xyz(s))
            .collect();
        assert!(g.substitute(&images).unwrap().is_zero());
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let p = xyz("-1/2*x + 3/4*y");
        let order = MonomialOrder::grevlex(3);
        let ints = p.primitive_part(&order);
        assert_eq!(ints[0].1, BigInt::from(2));
        assert_eq!(ints[1].1, BigInt::from(-3));
    }
}
