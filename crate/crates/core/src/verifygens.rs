//! Verification of a guessed generating set for the Cox ring of the blow-up at `[1, 1, 1]`.
//!
//! Given forms `f_i` with Rees multiplicities `m_i`, the candidate ring is
//! `K[x, y, z, s_1, ..., s_k, t] / (B : t^inf)` with `B_0 = {t^{m_i} s_i - f_i}`. The guess is
//! confirmed when `dim <B, t> = dim K[x, y, z]` and `dim <B, t, f> < dim K[x, y, z]` for
//! `f = xyz`; otherwise elements of `(B : t) \ B` are added one at a time.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, quotient_by_with_budget, GroebnerBasis, Ideal, DEFAULT_BUDGET};
use crate::mult::rees_multiplicity;
use crate::poly::{Monomial, MonomialOrder, Ring, SparsePoly};
use crate::weights::WeightTriple;

/// A blow-up instance: weights, named forms `f_i`, extra relations and the product `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupInput {
    pub weights: WeightTriple,
    pub names: Vec<String>,
    /// The forms `f_i` in `K[x, y, z]`.
    pub forms: Vec<SparsePoly>,
    /// Relations in `K[x, y, z, s_1, ..., s_k, t]` added to `B_0`.
    pub relations: Vec<SparsePoly>,
    /// Product of the generators of `K[x, y, z]` not vanishing at the point.
    pub nonvanishing: SparsePoly,
}

impl BlowupInput {
    pub fn new(weights: WeightTriple, names: Vec<String>, forms: Vec<SparsePoly>) -> Result<Self> {
        if names.len() != forms.len() {
            return Err(Error::InvalidInput("one name per form required".into()));
        }
        let s = Ring::xyz();
        for f in &forms {
            if f.ring() != &s {
                return Err(Error::RingMismatch(f.ring().names().join(", "), "x, y, z".into()));
            }
        }
        Ok(Self {
            weights,
            names,
            forms,
            relations: Vec::new(),
            nonvanishing: SparsePoly::term(&s, 1, &[1, 1, 1]),
        })
    }

    /// `K[x, y, z, s_1, ..., s_k, t]` with the given generator names.
    pub fn ring(&self) -> Ring {
        Ring::xyz().extended::<&str>(&[], &self.names.iter().map(String::as_str).chain(["t"]).collect::<Vec<_>>())
    }

    /// Parses the instance format:
    ///
    /// ```text
    /// weights: 7 3 11
    /// forms:
    /// s1 = x^2 - y*z
    /// relations:
    /// y^5*s1 - z*s2 - x*s3
    /// nonvanishing: x*y*z
    /// ```
    ///
    /// `#` starts a comment; the `relations:` and `nonvanishing:` sections are optional.
    pub fn parse(text: &str) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Forms,
            Relations,
        }
        let mut weights = None;
        let mut names = Vec::new();
        let mut form_text = Vec::new();
        let mut relation_text = Vec::new();
        let mut nonvanishing_text = None;
        let mut section = Section::None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("weights:") {
                let v: Vec<u64> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err("bad weight")))
                    .collect::<Result<_>>()?;
                if v.len() != 3 {
                    return Err(err("expected three weights"));
                }
                weights = Some(WeightTriple::new(v[0], v[1], v[2])?);
                section = Section::None;
            } else if line == "forms:" {
                section = Section::Forms;
            } else if line == "relations:" {
                section = Section::Relations;
            } else if let Some(rest) = line.strip_prefix("nonvanishing:") {
                nonvanishing_text = Some(rest.trim().to_string());
                section = Section::None;
            } else {
                match section {
                    Section::Forms => {
                        let (name, poly) = line.split_once('=').ok_or_else(|| err("expected name = form"))?;
                        let name = name.trim();
                        if name.is_empty()
                            || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                            || ["x", "y", "z", "t"].contains(&name)
                        {
                            return Err(err("invalid generator name"));
                        }
                        names.push(name.to_string());
                        form_text.push(poly.trim().to_string());
                    }
                    Section::Relations => relation_text.push(line.to_string()),
                    Section::None => return Err(err("text outside of a section")),
                }
            }
        }
        let weights = weights.ok_or_else(|| Error::Parse("missing weights: line".into()))?;
        if names.is_empty() {
            return Err(Error::Parse("missing forms: section".into()));
        }
        let s = Ring::xyz();
        let forms = form_text
            .iter()
            .map(|t| SparsePoly::parse(&s, t))
            .collect::<Result<_>>()?;
        let mut input = Self::new(weights, names, forms)?;
        let ring = input.ring();
        input.relations = relation_text
            .iter()
            .map(|t| SparsePoly::parse(&ring, t))
            .collect::<Result<_>>()?;
        if let Some(t) = nonvanishing_text {
            input.nonvanishing = SparsePoly::parse(&s, &t)?;
        }
        Ok(input)
    }
}

/// Rees multiplicity of each form, paired with a flag set when it is zero (form not in `I`).
pub fn rees_multiplicities(input: &BlowupInput) -> Result<Vec<(u32, bool)>> {
    input
        .forms
        .iter()
        .map(|f| rees_multiplicity(&input.weights, f).map(|m| (m, m == 0)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscoveryStep {
    pub degree: (u64, i64),
    pub element: SparsePoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub holds: bool,
    /// Why the verdict is negative.
    pub reason: Option<String>,
    pub dim_r1: usize,
    /// `None` stands for the empty zero set (unit ideal).
    pub dim_with_t: Option<usize>,
    pub dim_with_t_f: Option<usize>,
    pub multiplicities: Vec<u32>,
    pub generators: Vec<SparsePoly>,
    pub trace: Vec<DiscoveryStep>,
}

impl Certificate {
    pub fn dims(&self) -> (usize, Option<usize>, Option<usize>) {
        (self.dim_r1, self.dim_with_t, self.dim_with_t_f)
    }
}

fn fmt_dim(d: Option<usize>) -> String {
    d.map_or_else(|| "empty".to_string(), |d| d.to_string())
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.holds)?;
        if let Some(r) = &self.reason {
            writeln!(f, "reason: {r}")?;
        }
        writeln!(
            f,
            "dims: {} {} {}",
            self.dim_r1,
            fmt_dim(self.dim_with_t),
            fmt_dim(self.dim_with_t_f)
        )?;
        let ms: Vec<String> = self.multiplicities.iter().map(u32::to_string).collect();
        writeln!(f, "multiplicities: {}", ms.join(" "))?;
        writeln!(f, "generators:")?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        writeln!(f, "trace:")?;
        for (i, s) in self.trace.iter().enumerate() {
            writeln!(f, "{} ({}, {}) {}", i + 1, s.degree.0, s.degree.1, s.element)?;
        }
        Ok(())
    }
}

/// The verification problem in the ring `K[x, y, z, s_1, ..., s_k, t]`.
pub struct Verifier {
    input: BlowupInput,
    ring: Ring,
    order: MonomialOrder,
    multiplicities: Vec<u32>,
    budget: u64,
}

impl Verifier {
    pub fn new(input: &BlowupInput) -> Result<Self> {
        Self::with_budget(input, DEFAULT_BUDGET)
    }

    /// `budget` bounds every Gröbner computation (pair reductions).
    pub fn with_budget(input: &BlowupInput, budget: u64) -> Result<Self> {
        let ring = input.ring();
        for r in &input.relations {
            if r.ring() != &ring {
                return Err(Error::RingMismatch(
                    r.ring().names().join(", "),
                    ring.names().join(", "),
                ));
            }
        }
        let multiplicities = rees_multiplicities(input)?.into_iter().map(|(m, _)| m).collect();
        Ok(Self {
            order: MonomialOrder::grevlex(ring.nvars()),
            ring,
            input: input.clone(),
            multiplicities,
            budget,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    fn t_index(&self) -> usize {
        self.ring.nvars() - 1
    }

    /// `B_0 = {t^{m_i} s_i - f_i}`.
    pub fn initial_relations(&self) -> Result<Vec<SparsePoly>> {
        let k = self.input.forms.len();
        let mut out = Vec::with_capacity(k);
        for (i, f) in self.input.forms.iter().enumerate() {
            let mut e = vec![0u32; self.ring.nvars()];
            e[3 + i] = 1;
            e[self.t_index()] = self.multiplicities[i];
            let lhs = SparsePoly::term(&self.ring, 1, &e);
            out.push(&lhs - &f.embed(&self.ring)?);
        }
        Ok(out)
    }

    /// `Z^2`-degree `(d, e)` of a monomial: `deg s_i = (deg f_i, -m_i)`, `deg t = (0, 1)`.
    pub fn bidegree(&self, m: &Monomial) -> (u64, i64) {
        let w = self.input.weights.as_array();
        let e = m.exponents();
        let mut d = e[0] as u64 * w[0] + e[1] as u64 * w[1] + e[2] as u64 * w[2];
        let mut mu = e[self.t_index()] as i64;
        for (i, f) in self.input.forms.iter().enumerate() {
            let fd = f.weighted_degree(&self.input.weights).value().unwrap_or(0);
            d += e[3 + i] as u64 * fd;
            mu -= e[3 + i] as i64 * self.multiplicities[i] as i64;
        }
        (d, mu)
    }

    /// `t^N psi(g)` in `K[x, y, z, t]` with `s_i -> f_i t^{-m_i}`, shifted to be a polynomial.
    /// Zero exactly when `g` lies in `<B_0> : t^inf`.
    pub fn psi(&self, g: &SparsePoly) -> Result<SparsePoly> {
        let target = Ring::new(&["x", "y", "z", "t"]);
        let k = self.input.forms.len();
        let forms: Vec<SparsePoly> = self
            .input
            .forms
            .iter()
            .map(|f| f.embed(&target))
            .collect::<Result<_>>()?;
        let shift = g
            .terms()
            .map(|(m, _)| {
                let e = m.exponents();
                (0..k).map(|i| e[3 + i] as i64 * self.multiplicities[i] as i64).sum::<i64>()
                    - e[self.t_index()] as i64
            })
            .max()
            .unwrap_or(0)
            .max(0);
        let mut out = SparsePoly::zero(&target);
        for (m, c) in g.terms() {
            let e = m.exponents();
            let down: i64 = (0..k).map(|i| e[3 + i] as i64 * self.multiplicities[i] as i64).sum();
            let tpow = (e[self.t_index()] as i64 - down + shift) as u32;
            let mut term = SparsePoly::monomial(
                &target,
                Monomial::new(vec![e[0], e[1], e[2], tpow]),
                c.clone(),
            );
            for (i, f) in forms.iter().enumerate() {
                if e[3 + i] > 0 {
                    term = &term * &f.pow(e[3 + i]);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    fn basis(&self, gens: Vec<SparsePoly>) -> Result<GroebnerBasis> {
        buchberger(&Ideal::new(&self.ring, gens)?, &self.order, self.budget)
    }

    fn dimensions(&self, b: &[SparsePoly]) -> Result<(Option<usize>, Option<usize>)> {
        let t = SparsePoly::var(&self.ring, self.t_index());
        let mut with_t = b.to_vec();
        with_t.push(t);
        let d1 = self.basis(with_t.clone())?.krull_dimension();
        with_t.push(self.input.nonvanishing.embed(&self.ring)?);
        let d2 = self.basis(with_t)?.krull_dimension();
        Ok((d1, d2))
    }

    /// One element of `(<B> : t) \ <B>` of minimal `Z^2`-degree (ties: smallest leading
    /// monomial), reduced modulo `<B>`; `None` when `<B> : t = <B>`.
    pub fn discover_saturation_element(&self, b: &[SparsePoly]) -> Result<Option<SparsePoly>> {
        let gb = self.basis(b.to_vec())?;
        let t = SparsePoly::var(&self.ring, self.t_index());
        let quotient = quotient_by_with_budget(&Ideal::new(&self.ring, b.to_vec())?, &t, self.budget)?;
        let mut best: Option<((u64, i64), SparsePoly)> = None;
        for g in quotient.generators() {
            let r = gb.normal_form(g)?;
            if r.is_zero() {
                continue;
            }
            let r = r.monic(&self.order);
            let lead = r.leading_term(&self.order).expect("nonzero").0.clone();
            let deg = self.bidegree(&lead);
            let better = match &best {
                None => true,
                Some((bd, bp)) => match deg.cmp(bd) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        let bl = bp.leading_term(&self.order).expect("nonzero").0;
                        self.order.cmp(&lead, bl) == Ordering::Less
                    }
                },
            };
            if better {
                best = Some((deg, r));
            }
        }
        Ok(best.map(|(_, p)| p))
    }

    /// Runs the dimension test, enlarging `B` by at most `discovery_budget` elements.
    pub fn verify(&self, discovery_budget: usize) -> Result<Certificate> {
        let dim_r1 = 3;
        let mut b = self.initial_relations()?;
        let mut cert = Certificate {
            holds: false,
            reason: None,
            dim_r1,
            dim_with_t: None,
            dim_with_t_f: None,
            multiplicities: self.multiplicities.clone(),
            generators: Vec::new(),
            trace: Vec::new(),
        };
        if let Some(i) = self.multiplicities.iter().position(|&m| m == 0) {
            cert.reason = Some(format!(
                "form {} does not vanish at the point",
                self.input.names[i]
            ));
        }
        for r in &self.input.relations {
            if !self.psi(r)?.is_zero() {
                (cert.dim_with_t, cert.dim_with_t_f) = self.dimensions(&b)?;
                cert.generators = b;
                cert.reason = Some(format!("relation {r} is not in <B0> : t^inf"));
                return Ok(cert);
            }
            if !b.contains(r) {
                b.push(r.clone());
            }
        }
        loop {
            let (d1, d2) = self.dimensions(&b)?;
            cert.dim_with_t = d1;
            cert.dim_with_t_f = d2;
            let below = |d: Option<usize>| d.is_none_or(|d| d < dim_r1);
            if cert.reason.is_none() && d1 == Some(dim_r1) && below(d2) {
                cert.holds = true;
                cert.generators = b;
                return Ok(cert);
            }
            if cert.trace.len() >= discovery_budget {
                return Err(Error::BudgetExhausted {
                    steps: cert.trace.len() as u64,
                    context: "saturation discovery",
                });
            }
            match self.discover_saturation_element(&b)? {
                Some(g) => {
                    let lead = g.leading_term(&self.order).expect("nonzero").0.clone();
                    cert.trace.push(DiscoveryStep {
                        degree: self.bidegree(&lead),
                        element: g.clone(),
                    });
                    b.push(g);
                }
                None => {
                    cert.generators = b;
                    if cert.reason.is_none() {
                        cert.reason = Some("saturation reached without meeting the dimension test".into());
                    }
                    return Ok(cert);
                }
            }
        }
    }
}

pub fn verify(input: &BlowupInput, discovery_budget: usize) -> Result<Certificate> {
    Verifier::new(input)?.verify(discovery_budget)
}

pub fn discover_saturation_element(input: &BlowupInput, b: &[SparsePoly]) -> Result<Option<SparsePoly>> {
    Verifier::new(input)?.discover_saturation_element(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(with_relations: bool) -> BlowupInput {
        let forms = crate::coxring::mult2_forms(&crate::coxring::Mult2Witness {
            weights: [7, 3, 11],
            n: 1,
            m: 1,
        })
        .unwrap();
        let mut s = String::from("weights: 7 3 11\nforms:\n");
        s += &format!("s1 = {}\ns2 = {}\ns3 = {}\ns4 = {}\n", forms.f1, forms.f2, forms.f3, forms.f4);
        if with_relations {
            let p = crate::coxring::mult2_presentation(&WeightTriple::new(7, 3, 11).unwrap()).unwrap();
            s += "relations:\n";
            for r in &p.relations {
                s += &format!("{r}\n");
            }
        }
        BlowupInput::parse(&s).unwrap()
    }

    #[test]
    fn multiplicities_of_the_mult2_forms() {
        let input = instance(false);
        let ms: Vec<u32> = rees_multiplicities(&input).unwrap().iter().map(|p| p.0).collect();
        assert_eq!(ms, vec![1, 1, 1, 2]);
        let s = Ring::xyz();
        let x = BlowupInput::new(
            WeightTriple::new(7, 3, 11).unwrap(),
            vec!["s1".into()],
            vec![SparsePoly::var(&s, 0)],
        )
        .unwrap();
        assert_eq!(rees_multiplicities(&x).unwrap(), vec![(0, true)]);
    }

    #[test]
    fn golden_dimensions() {
        let cert = verify(&instance(true), 0).unwrap();
        assert!(cert.holds, "{cert}");
        assert_eq!(cert.dims(), (3, Some(3), Some(2)));
    }

    #[test]
    fn discovery_from_initial_relations() {
        let input = instance(false);
        let v = Verifier::new(&input).unwrap();
        let b0 = v.initial_relations().unwrap();
        let (d1, _) = v.dimensions(&b0).unwrap();
        assert_ne!(d1, Some(3));
        let cert = v.verify(20).unwrap();
        assert!(cert.holds, "{cert}");
        assert_eq!(cert.dims(), (3, Some(3), Some(2)));
        assert!(!cert.trace.is_empty());
        let first = &cert.trace[0].element;
        assert_eq!(first, &SparsePoly::parse(v.ring(), "z*s1 - x*s2 - y*s3").unwrap());
        // Discovery is monotone: no element lies in the ideal of its predecessors.
        for (i, step) in cert.trace.iter().enumerate() {
            let before: Vec<SparsePoly> =
                cert.generators.iter().take(4 + i).cloned().collect();
            let gb = v.basis(before).unwrap();
            assert!(!gb.contains(&step.element).unwrap());
            assert!(v.psi(&step.element).unwrap().is_zero());
        }
        assert!(matches!(v.verify(1), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn kstar_instance() {
        let input = BlowupInput::parse("weights: 5 2 3\nforms:\nT3 = x - y*z\nT4 = y^3 - z^2\n").unwrap();
        let cert = verify(&input, 5).unwrap();
        assert!(cert.holds);
        assert!(cert.trace.is_empty());
    }

    #[test]
    fn corrupted_relation_is_rejected() {
        let mut input = instance(true);
        input.relations[4] = &input.relations[4] + &SparsePoly::var(&input.ring(), 0);
        let cert = verify(&input, 5).unwrap();
        assert!(!cert.holds);
        assert!(cert.reason.unwrap().contains("not in"));
    }

    #[test]
    fn psi_detects_saturation_membership() {
        let input = instance(true);
        let v = Verifier::new(&input).unwrap();
        for r in &input.relations {
            assert!(v.psi(r).unwrap().is_zero(), "{r}");
        }
        let bad = SparsePoly::parse(v.ring(), "s1*s2 - x*s3").unwrap();
        assert!(!v.psi(&bad).unwrap().is_zero());
    }

    #[test]
    fn trivial_discovery() {
        let s = Ring::xyz();
        let input = BlowupInput::new(
            WeightTriple::new(1, 2, 3).unwrap(),
            vec!["s1".into()],
            vec![SparsePoly::parse(&s, "y - x^2").unwrap()],
        )
        .unwrap();
        let v = Verifier::new(&input).unwrap();
        let r = v.ring().clone();
        let b = vec![SparsePoly::parse(&r, "t*x").unwrap()];
        let g = v.discover_saturation_element(&b).unwrap().unwrap();
        assert_eq!(g, SparsePoly::parse(&r, "x").unwrap());
        let b = vec![SparsePoly::parse(&r, "x").unwrap()];
        assert!(v.discover_saturation_element(&b).unwrap().is_none());
    }

    #[test]
    fn parse_errors() {
        assert!(BlowupInput::parse("forms:\ns1 = x\n").is_err());
        assert!(BlowupInput::parse("weights: 7 3 11\n").is_err());
        assert!(BlowupInput::parse("weights: 7 3 11\nforms:\nt = x\n").is_err());
        assert!(BlowupInput::parse("weights: 7 3 11\nforms:\ns1 = x\nrelations:\nw\n").is_err());
        assert!(BlowupInput::parse("weights: 6 3 11\nforms:\ns1 = x\n").is_err());
    }
}
