//! Buchberger's algorithm over the rationals, normal forms, quotients, saturation and
//! Krull dimension.
//!
//! Internally polynomials are kept as primitive integer polynomials with terms sorted from
//! the largest monomial down; the reduced basis handed out is monic over the rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Ring, SparsePoly};

/// Default number of S-pair reductions before giving up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

type Term = (Monomial, BigInt);
type RatTerm = (Monomial, BigRational);

/// A finitely generated ideal of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<SparsePoly>,
}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<SparsePoly>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch(
                    g.ring().names().join(", "),
                    ring.names().join(", "),
                ));
            }
        }
        Ok(Self {
            ring: ring.clone(),
            generators,
        })
    }

    /// Parses each generator in the polynomial text format.
    pub fn parse(ring: &Ring, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| SparsePoly::parse(ring, s))
            .collect::<Result<_>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[SparsePoly] {
        &self.generators
    }

    pub fn with_generator(&self, f: SparsePoly) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(f);
        Self::new(&self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Self> {
        let mut gens = Vec::new();
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f.checked_mul(g)?);
            }
        }
        Self::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut out = Ideal::new(&self.ring, vec![SparsePoly::one(&self.ring)])?;
        for _ in 0..k {
            out = out.product(self)?;
        }
        Ok(out)
    }

    /// Reduced Gröbner basis under grevlex with the ring's variable order.
    pub fn groebner_basis(&self) -> Result<GroebnerBasis> {
        buchberger(self, &MonomialOrder::grevlex(self.ring.nvars()), DEFAULT_BUDGET)
    }

    pub fn contains(&self, f: &SparsePoly) -> Result<bool> {
        self.groebner_basis()?.contains(f)
    }

    /// Equality of ideals, compared through reduced grevlex bases.
    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Ok(false);
        }
        Ok(self.groebner_basis()?.elements == other.groebner_basis()?.elements)
    }
}

/// A reduced Gröbner basis: monic, no leading monomial divides another, sorted by leading
/// monomial in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<SparsePoly>,
    sorted: Vec<Vec<RatTerm>>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[SparsePoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|p| p[0].0.clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.sorted.iter().any(|p| p[0].0.is_one())
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            generators: self.elements.clone(),
        }
    }

    /// Remainder of `f` on full division by the basis; zero exactly when `f` is in the ideal.
    pub fn normal_form(&self, f: &SparsePoly) -> Result<SparsePoly> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch(
                f.ring().names().join(", "),
                self.ring.names().join(", "),
            ));
        }
        let mut p: Vec<RatTerm> = f
            .sorted_terms(&self.order)
            .into_iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let mut rem: Vec<RatTerm> = Vec::new();
        while !p.is_empty() {
            let lead = &p[0].0;
            match self.sorted.iter().find(|g| g[0].0.divides(lead)) {
                Some(g) => {
                    let q = g[0].0.quotient_of(lead);
                    let c = p[0].1.clone();
                    p = sub_scaled_rat(&p[1..], &c, &q, &g[1..], &self.order);
                }
                None => {
                    rem.push(p.remove(0));
                }
            }
        }
        Ok(SparsePoly::from_terms(&self.ring, rem))
    }

    pub fn contains(&self, f: &SparsePoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Dimension of `K[vars]/I`: the largest set of variables containing no leading monomial.
    /// `None` when the ideal is the whole ring.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.is_unit_ideal() {
            return None;
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .leading_monomials()
            .iter()
            .map(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        assert!(n < 64, "too many variables for the independent-set search");
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Some(best)
    }

    /// Number of standard monomials of the given weighted degree, i.e. the codimension of
    /// `I_d` in the degree-`d` part of the ring for an ideal homogeneous w.r.t. `weights`.
    pub fn standard_monomial_count(&self, weights: &[u64], d: u64) -> usize {
        let leads = self.leading_monomials();
        let mut count = 0;
        for_each_monomial(weights, d, &mut |e| {
            let m = Monomial::new(e.to_vec());
            if !leads.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        });
        count
    }
}

/// Calls `visit` on every exponent vector with `sum e_i w_i = d`.
pub fn for_each_monomial(weights: &[u64], d: u64, visit: &mut dyn FnMut(&[u32])) {
    fn rec(weights: &[u64], i: usize, left: u64, e: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if i == weights.len() {
            if left == 0 {
                visit(e);
            }
            return;
        }
        let w = weights[i];
        assert!(w > 0, "weights must be positive");
        let mut k = 0u32;
        while k as u64 * w <= left {
            e.push(k);
            rec(weights, i + 1, left - k as u64 * w, e, visit);
            e.pop();
            k += 1;
        }
    }
    let mut e = Vec::with_capacity(weights.len());
    rec(weights, 0, d, &mut e, visit);
}

/// `p - c * q * g` for rational term lists sorted decreasingly.
fn sub_scaled_rat(
    p: &[RatTerm],
    c: &BigRational,
    q: &Monomial,
    g: &[RatTerm],
    order: &MonomialOrder,
) -> Vec<RatTerm> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted: Vec<RatTerm> = g.iter().map(|(m, x)| (m.mul(q), -(x * c))).collect();
    while i < p.len() || j < shifted.len() {
        let ord = match (p.get(i), shifted.get(j)) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(shifted[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let s = &p[i].1 + &shifted[j].1;
                if !s.is_zero() {
                    out.push((p[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `a * p - b * q * g` for integer term lists sorted decreasingly.
fn lin_comb(
    a: &BigInt,
    p: &[Term],
    b: &BigInt,
    q: &Monomial,
    g: &[Term],
    order: &MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    let mut shifted_mon: Option<Monomial> = None;
    while i < p.len() || j < g.len() {
        if shifted_mon.is_none() && j < g.len() {
            shifted_mon = Some(g[j].0.mul(q));
        }
        let ord = match (p.get(i), shifted_mon.as_ref()) {
            (Some(x), Some(y)) => order.cmp(&x.0, y),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                let c = if a_one { p[i].1.clone() } else { a * &p[i].1 };
                out.push((p[i].0.clone(), c));
                i += 1;
            }
            Ordering::Less => {
                let m = shifted_mon.take().unwrap();
                out.push((m, -(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let m = shifted_mon.take().unwrap();
                let s = if a_one { p[i].1.clone() } else { a * &p[i].1 } - b * &g[j].1;
                if !s.is_zero() {
                    out.push((m, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn make_primitive(p: &mut [Term]) {
    let mut g = BigInt::zero();
    for (_, c) in p.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if p.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, c) in p.iter_mut() {
            *c = &*c / &g;
        }
    }
}

#[derive(Clone, Debug)]
struct WorkPoly {
    terms: Vec<Term>,
    sugar: u64,
}

impl WorkPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    polys: Vec<WorkPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    steps: u64,
    budget: u64,
}

impl Engine<'_> {
    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .find(|&k| self.polys[k].lm().divides(m))
    }

    /// Fully reduces `p` by the active polynomials; the result is primitive.
    fn reduce(&self, p: WorkPoly) -> WorkPoly {
        let WorkPoly { terms: mut p, mut sugar } = p;
        let mut rem: Vec<Term> = Vec::new();
        let mut start = 0;
        while start < p.len() {
            let m = &p[start].0;
            match self.find_reducer(m) {
                Some(k) => {
                    let g = &self.polys[k];
                    let q = g.lm().quotient_of(m);
                    sugar = sugar.max(g.sugar + q.total_degree());
                    let lg = &g.terms[0].1;
                    let lp = &p[start].1;
                    let gg = lg.gcd(lp);
                    let a = lg / &gg;
                    let b = lp / &gg;
                    if !a.is_one() {
                        for (_, c) in rem.iter_mut() {
                            *c *= &a;
                        }
                    }
                    p = lin_comb(&a, &p[start + 1..], &b, &q, &g.terms[1..], self.order);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
            if start == 0 && p.len() > 32 && rem.len() + p.len() > 64 {
                // Keep coefficient growth in check on long reductions.
                let mut all: Vec<Term> = rem.clone();
                all.extend(p.iter().cloned());
                let mut g = BigInt::zero();
                for (_, c) in &all {
                    g = g.gcd(c);
                    if g.is_one() {
                        break;
                    }
                }
                if !g.is_one() && !g.is_zero() {
                    for (_, c) in rem.iter_mut() {
                        *c = &*c / &g;
                    }
                    for (_, c) in p.iter_mut() {
                        *c = &*c / &g;
                    }
                }
            }
        }
        make_primitive(&mut rem);
        WorkPoly { terms: rem, sugar }
    }

    fn spoly(&self, pair: &Pair) -> WorkPoly {
        let f = &self.polys[pair.i];
        let g = &self.polys[pair.j];
        let qf = f.lm().quotient_of(&pair.lcm);
        let qg = g.lm().quotient_of(&pair.lcm);
        let lf = &f.terms[0].1;
        let lg = &g.terms[0].1;
        let gg = lf.gcd(lg);
        let a = lg / &gg;
        let b = lf / &gg;
        // a * qf * f - b * qg * g, leading terms cancel.
        let left: Vec<Term> = f.terms[1..]
            .iter()
            .map(|(m, c)| (m.mul(&qf), c * &a))
            .collect();
        let terms = lin_comb(&BigInt::one(), &left, &b, &qg, &g.terms[1..], self.order);
        WorkPoly {
            terms,
            sugar: pair.sugar,
        }
    }

    /// Gebauer–Möller update with the new basis element at index `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm().clone();
        let sh = self.polys[h].sugar;
        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let lg = self.polys[g].lm();
                let lcm = lh.lcm(lg);
                let sugar = (sh + lh.quotient_of(&lcm).total_degree())
                    .max(self.polys[g].sugar + lg.quotient_of(&lcm).total_degree());
                Pair { i: g, j: h, lcm, sugar }
            })
            .collect();

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        for idx in 0..candidates.len() {
            let p = &candidates[idx];
            let coprime = self.polys[p.i].lm().gcd_is_one(&lh);
            let dominated = candidates[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|o| o.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        candidates = kept
            .into_iter()
            .filter(|p| !self.polys[p.i].lm().gcd_is_one(&lh))
            .collect();

        // Drop old pairs whose lcm is strictly divisible by lm(h) in the Buchberger sense.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && polys[p.i].lm().lcm(&lh) != p.lcm
                && polys[p.j].lm().lcm(&lh) != p.lcm)
        });
        self.pairs.extend(candidates);

        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn add(&mut self, p: WorkPoly) {
        self.polys.push(p);
        let h = self.polys.len() - 1;
        self.update(h);
    }

    fn select_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => order.cmp(&a.lcm, &b.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn run(&mut self) -> Result<()> {
        while let Some(pair) = self.select_pair() {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::BudgetExhausted {
                    steps: self.steps - 1,
                    context: "buchberger",
                });
            }
            let s = self.spoly(&pair);
            if s.terms.is_empty() {
                continue;
            }
            let r = self.reduce(s);
            if !r.terms.is_empty() {
                if r.lm().is_one() {
                    // Unit ideal: nothing else matters.
                    self.pairs.clear();
                    self.active.clear();
                    self.polys.push(r);
                    self.active.push(self.polys.len() - 1);
                    return Ok(());
                }
                self.add(r);
            }
        }
        Ok(())
    }
}

/// Reduced Gröbner basis of `ideal` under `order`, aborting after `budget` pair reductions.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    let ring = ideal.ring();
    assert_eq!(order.nvars(), ring.nvars(), "order and ring disagree on variable count");
    let mut engine = Engine {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        steps: 0,
        budget,
    };
    let mut inputs: Vec<WorkPoly> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| WorkPoly {
            terms: g.primitive_part(order),
            sugar: g.total_degree().unwrap_or(0),
        })
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for p in inputs {
        let r = engine.reduce(p);
        if r.terms.is_empty() {
            continue;
        }
        if r.lm().is_one() {
            engine.active.clear();
            engine.pairs.clear();
            engine.polys.push(r);
            engine.active.push(engine.polys.len() - 1);
            break;
        }
        engine.add(r);
    }
    engine.run()?;

    // Inter-reduce the minimal basis.
    let mut basis: Vec<WorkPoly> = engine.active.iter().map(|&k| engine.polys[k].clone()).collect();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut reduced: Vec<WorkPoly> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<usize> = (0..basis.len()).filter(|&j| j != i).collect();
        let sub = Engine {
            order,
            polys: basis.clone(),
            active: others,
            pairs: Vec::new(),
            steps: 0,
            budget,
        };
        let head = basis[i].terms[0].clone();
        let tail = WorkPoly {
            terms: basis[i].terms[1..].to_vec(),
            sugar: basis[i].sugar,
        };
        // Reduce only the tail; rescale the head consistently.
        let (tail_red, scale) = reduce_tail(&sub, tail);
        let mut terms = vec![(head.0, head.1 * scale)];
        terms.extend(tail_red);
        make_primitive(&mut terms);
        reduced.push(WorkPoly {
            terms,
            sugar: basis[i].sugar,
        });
    }
    let sorted: Vec<Vec<RatTerm>> = reduced
        .iter()
        .map(|p| {
            let lc = BigRational::from_integer(p.terms[0].1.clone());
            p.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()) / &lc))
                .collect()
        })
        .collect();
    let elements = sorted
        .iter()
        .map(|t| SparsePoly::from_terms(ring, t.iter().cloned()))
        .collect();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elements,
        sorted,
    })
}

/// Reduces every term of `p` and returns the remainder with the factor applied to the
/// input (so `remainder = factor * p mod basis`).
fn reduce_tail(engine: &Engine<'_>, p: WorkPoly) -> (Vec<Term>, BigInt) {
    let mut p = p.terms;
    let mut rem: Vec<Term> = Vec::new();
    let mut factor = BigInt::one();
    let mut start = 0;
    while start < p.len() {
        let m = &p[start].0;
        match engine.find_reducer(m) {
            Some(k) => {
                let g = &engine.polys[k];
                let q = g.lm().quotient_of(m);
                let lg = &g.terms[0].1;
                let lp = &p[start].1;
                let gg = lg.gcd(lp);
                let a = lg / &gg;
                let b = lp / &gg;
                if !a.is_one() {
                    for (_, c) in rem.iter_mut() {
                        *c *= &a;
                    }
                    factor *= &a;
                }
                p = lin_comb(&a, &p[start + 1..], &b, &q, &g.terms[1..], engine.order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    (rem, factor)
}

/// Generators of `I ∩ K[x_k, ..., x_n]` read off a basis under an order eliminating the
/// first `k` variables, rewritten in `target`.
fn contract(gb: &GroebnerBasis, k: usize, target: &Ring) -> Result<Vec<SparsePoly>> {
    gb.elements()
        .iter()
        .filter(|g| (0..k).all(|i| g.degree_in(i) == 0))
        .map(|g| restrict(g, k, target))
        .collect()
}

fn restrict(g: &SparsePoly, k: usize, target: &Ring) -> Result<SparsePoly> {
    Ok(SparsePoly::from_terms(
        target,
        g.terms()
            .map(|(m, c)| (Monomial::new(m.exponents()[k..].to_vec()), c.clone())),
    ))
}

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// `I : f^∞` by eliminating `ω` from `I + <1 - ω f>`.
pub fn saturate(ideal: &Ideal, f: &SparsePoly) -> Result<Ideal> {
    saturate_with_budget(ideal, f, DEFAULT_BUDGET)
}

pub fn saturate_with_budget(ideal: &Ideal, f: &SparsePoly, budget: u64) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ring = ideal.ring();
    let omega = fresh_name(ring, "omega");
    let big = ring.extended(&[omega.as_str()], &[]);
    let w = SparsePoly::var(&big, 0);
    let mut gens: Vec<SparsePoly> = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&big))
        .collect::<Result<_>>()?;
    let fb = f.embed(&big)?;
    gens.push(&SparsePoly::one(&big) - &(&w * &fb));
    let gb = buchberger(
        &Ideal::new(&big, gens)?,
        &MonomialOrder::elimination(1, big.nvars()),
        budget,
    )?;
    Ideal::new(ring, contract(&gb, 1, ring)?)
}

/// `I : <f>` via `I ∩ <f> = (τ I + (1 - τ) <f>) ∩ K[vars]`, divided by `f`.
pub fn quotient_by(ideal: &Ideal, f: &SparsePoly) -> Result<Ideal> {
    quotient_by_with_budget(ideal, f, DEFAULT_BUDGET)
}

pub fn quotient_by_with_budget(ideal: &Ideal, f: &SparsePoly, budget: u64) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ring = ideal.ring();
    let tau = fresh_name(ring, "tau");
    let big = ring.extended(&[tau.as_str()], &[]);
    let t = SparsePoly::var(&big, 0);
    let one_minus_t = &SparsePoly::one(&big) - &t;
    let mut gens: Vec<SparsePoly> = ideal
        .generators()
        .iter()
        .map(|g| Ok(&t * &g.embed(&big)?))
        .collect::<Result<_>>()?;
    gens.push(&one_minus_t * &f.embed(&big)?);
    let gb = buchberger(
        &Ideal::new(&big, gens)?,
        &MonomialOrder::elimination(1, big.nvars()),
        budget,
    )?;
    let meet = contract(&gb, 1, ring)?;
    let mut out = Vec::with_capacity(meet.len());
    for g in meet {
        let q = g
            .exact_div(f)?
            .expect("elements of I ∩ <f> are multiples of f");
        out.push(q);
    }
    Ideal::new(ring, out)
}

/// Krull dimension of `K[vars]/I`; `None` if `1 ∈ I`.
pub fn krull_dimension(ideal: &Ideal) -> Result<Option<usize>> {
    Ok(ideal.groebner_basis()?.krull_dimension())
}

pub fn normal_form(f: &SparsePoly, gb: &GroebnerBasis) -> Result<SparsePoly> {
    gb.normal_form(f)
}
