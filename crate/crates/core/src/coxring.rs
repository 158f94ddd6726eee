//! Classification of weight triples and explicit Cox ring presentations for the two
//! families with small Rees multiplicity: `K*`-surfaces (one weight in the monoid of the
//! other two) and the multiplicity-two family `2a = nb + mc`, `b >= 3m`, `c >= 3n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, saturate, Ideal, DEFAULT_BUDGET};
use crate::linalg::smith_normal_form;
use crate::mult::rees_multiplicity;
use crate::poly::{Monomial, MonomialOrder, Ring, SparsePoly, WeightedDegree};
use crate::weights::{monoid_decomposition, WeightTriple};

/// Reordered weights `(a, b, c)` with `a = alpha b + beta c` and `b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KStarWitness {
    pub weights: [u64; 3],
    pub alpha: u64,
    pub beta: u64,
}

/// Reordered weights `(a, b, c)` with `2a = nb + mc`, `b >= 3m`, `c >= 3n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mult2Witness {
    pub weights: [u64; 3],
    pub n: u64,
    pub m: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleClass {
    KStar(KStarWitness),
    Mult2(Mult2Witness),
    Other,
}

impl fmt::Display for TripleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleClass::KStar(k) => {
                let [a, b, c] = k.weights;
                write!(f, "KStar: {a} = {}*{b} + {}*{c}", k.alpha, k.beta)
            }
            TripleClass::Mult2(w) => {
                let [a, b, c] = w.weights;
                write!(f, "Mult2: 2*{a} = {}*{b} + {}*{c} (n={}, m={})", w.n, w.m, w.n, w.m)
            }
            TripleClass::Other => write!(f, "Other"),
        }
    }
}

/// Reorderings `(i, j, k)` putting weight `i` first.
const REORDERINGS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub fn classify(w: &WeightTriple) -> TripleClass {
    if let Some(k) = kstar_witness(w) {
        return TripleClass::KStar(k);
    }
    match mult2_witness(w) {
        Some(m) => TripleClass::Mult2(m),
        None => TripleClass::Other,
    }
}

/// Smallest special weight first; the other two in increasing order; smallest `alpha`.
fn kstar_witness(w: &WeightTriple) -> Option<KStarWitness> {
    let arr = w.as_array();
    REORDERINGS
        .iter()
        .map(|p| [arr[p[0]], arr[p[1]], arr[p[2]]])
        .filter(|[_, b, c]| b < c)
        .filter_map(|[a, b, c]| {
            monoid_decomposition(a, b, c).map(|(alpha, beta)| KStarWitness {
                weights: [a, b, c],
                alpha,
                beta,
            })
        })
        .min_by_key(|k| k.weights[0])
}

/// Ties broken by smallest reordered `a`, then smallest `n`, then smallest `b`.
fn mult2_witness(w: &WeightTriple) -> Option<Mult2Witness> {
    let arr = w.as_array();
    let mut best: Option<Mult2Witness> = None;
    for p in REORDERINGS {
        let [a, b, c] = [arr[p[0]], arr[p[1]], arr[p[2]]];
        let mut n = 1;
        while n * b < 2 * a {
            let rest = 2 * a - n * b;
            if rest % c == 0 {
                let m = rest / c;
                if b >= 3 * m && c >= 3 * n {
                    let cand = Mult2Witness { weights: [a, b, c], n, m };
                    let key = |x: &Mult2Witness| (x.weights[0], x.n, x.weights[1]);
                    if best.as_ref().is_none_or(|cur| key(&cand) < key(cur)) {
                        best = Some(cand);
                    }
                }
            }
            n += 1;
        }
    }
    best
}

/// The `n` with `2b = 3n + c` and `c > 3n` for a triple `(3, b, c)`, `b < c`, in which no
/// entry lies in the monoid of the other two.
pub fn cor3bc_witness(b: u64, c: u64) -> Result<u64> {
    let bad = |msg: String| Err(Error::InvalidInput(msg));
    if b >= c {
        return bad(format!("need b < c, got b={b}, c={c}"));
    }
    let w = WeightTriple::new(3, b, c)?;
    if kstar_witness(&w).is_some() {
        return bad(format!("one of (3, {b}, {c}) lies in the monoid of the other two"));
    }
    if !(b + c).is_multiple_of(3) {
        return bad(format!("b + c = {} is not divisible by 3", b + c));
    }
    if 2 * b <= c {
        return bad(format!("2b = {} does not exceed c = {c}", 2 * b));
    }
    let n = (2 * b - c) / 3;
    if n == 0 || c <= 3 * n {
        return bad(format!("no positive n with c > 3n for b={b}, c={c}"));
    }
    Ok(n)
}

/// A generator of a Cox ring presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxGenerator {
    pub name: String,
    /// Column of the degree matrix `Q`: coefficients of `H` and `E`.
    pub degree: (u64, i64),
    pub multiplicity: i64,
    /// The form in `K[x, y, z]` this generator stands for (`None` for the section `t`).
    pub image: Option<SparsePoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    KStar,
    Mult2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxPresentation {
    pub kind: PresentationKind,
    /// The reordered weights `(a, b, c)` the presentation is written in.
    pub weights: WeightTriple,
    pub ring: Ring,
    pub generators: Vec<CoxGenerator>,
    pub relations: Vec<SparsePoly>,
    /// Set when the presented ideal is the saturation of the relations by this variable.
    pub saturation_variable: Option<String>,
    pub toric: bool,
    /// `(n, m)` for the multiplicity-two family, `(alpha, beta)` for `K*`.
    pub parameters: (u64, u64),
    pub notes: Vec<String>,
}

impl CoxPresentation {
    pub fn degree_matrix(&self) -> [Vec<i64>; 2] {
        [
            self.generators.iter().map(|g| g.degree.0 as i64).collect(),
            self.generators.iter().map(|g| g.degree.1).collect(),
        ]
    }

    pub fn multiplicities(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.multiplicity).collect()
    }

    /// Forms in `K[x, y, z]` substituted for the generators, `t -> 1`.
    fn images(&self, s: &Ring) -> Vec<SparsePoly> {
        self.generators
            .iter()
            .map(|g| g.image.clone().unwrap_or_else(|| SparsePoly::one(s)))
            .collect()
    }

    fn image_of(&self, name: &str) -> Option<&SparsePoly> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .and_then(|g| g.image.as_ref())
    }
}

impl fmt::Display for CoxPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            PresentationKind::KStar => "kstar",
            PresentationKind::Mult2 => "mult2",
        };
        let w = &self.weights;
        writeln!(f, "presentation: {kind} weights {} {} {}", w.a(), w.b(), w.c())?;
        writeln!(f, "parameters: {} {}", self.parameters.0, self.parameters.1)?;
        writeln!(f, "toric: {}", self.toric)?;
        writeln!(f, "generators:")?;
        for g in &self.generators {
            write!(f, "{} {} {} {}", g.name, g.degree.0, g.degree.1, g.multiplicity)?;
            if let Some(img) = &g.image {
                write!(f, " = {img}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        if let Some(v) = &self.saturation_variable {
            writeln!(f, "saturate: {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

fn mono(s: &Ring, exps: [u64; 3]) -> SparsePoly {
    SparsePoly::term(s, 1, &exps.map(|e| e as u32))
}

fn binomial(s: &Ring, lhs: [u64; 3], rhs: [u64; 3]) -> SparsePoly {
    &mono(s, lhs) - &mono(s, rhs)
}

pub fn kstar_presentation(w: &WeightTriple) -> Result<CoxPresentation> {
    let k = match classify(w) {
        TripleClass::KStar(k) => k,
        other => return Err(Error::InvalidInput(format!("{w:?} is not a K* triple ({other})"))),
    };
    let [a, b, c] = k.weights;
    let rw = WeightTriple::new(a, b, c)?;
    let s = Ring::xyz();
    let ring = Ring::new(&["T1", "T2", "T3", "T4", "T5"]);
    let gens = vec![
        CoxGenerator {
            name: "T1".into(),
            degree: (b, 0),
            multiplicity: 0,
            image: Some(mono(&s, [0, 1, 0])),
        },
        CoxGenerator {
            name: "T2".into(),
            degree: (c, 0),
            multiplicity: 0,
            image: Some(mono(&s, [0, 0, 1])),
        },
        CoxGenerator {
            name: "T3".into(),
            degree: (a, -1),
            multiplicity: 1,
            image: Some(binomial(&s, [1, 0, 0], [0, k.alpha, k.beta])),
        },
        CoxGenerator {
            name: "T4".into(),
            degree: (b * c, -1),
            multiplicity: 1,
            image: Some(binomial(&s, [0, c, 0], [0, 0, b])),
        },
        CoxGenerator {
            name: "T5".into(),
            degree: (0, 1),
            multiplicity: -1,
            image: None,
        },
    ];
    let relation = SparsePoly::term(&ring, 1, &[0, 0, 0, 1, 1])
        - SparsePoly::term(&ring, 1, &[c as u32, 0, 0, 0, 0])
        + SparsePoly::term(&ring, 1, &[0, b as u32, 0, 0, 0]);
    Ok(CoxPresentation {
        kind: PresentationKind::KStar,
        weights: rw,
        ring,
        generators: gens,
        relations: vec![relation],
        saturation_variable: None,
        toric: w.has_unit_weight(),
        parameters: (k.alpha, k.beta),
        notes: Vec::new(),
    })
}

fn half(x: u64, what: &str) -> Result<u64> {
    if !x.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("{what} = {x} is odd")));
    }
    Ok(x / 2)
}

fn sub(x: u64, y: u64, what: &str) -> Result<u64> {
    x.checked_sub(y)
        .ok_or_else(|| Error::InvalidInput(format!("{what}: {x} - {y} is negative")))
}

/// The binomials `f1, f2, f3` and the combination `f4` for a multiplicity-two witness.
pub struct Mult2Forms {
    pub f1: SparsePoly,
    pub f2: SparsePoly,
    pub f3: SparsePoly,
    pub f4: SparsePoly,
}

struct HalfExponents {
    c_minus_n: u64,
    c_plus_n: u64,
    b_minus_m: u64,
    b_plus_m: u64,
    c_minus_3n: u64,
    b_minus_3m: u64,
}

fn half_exponents(wit: &Mult2Witness) -> Result<HalfExponents> {
    let [_, b, c] = wit.weights;
    let (n, m) = (wit.n, wit.m);
    Ok(HalfExponents {
        c_minus_n: half(sub(c, n, "c - n")?, "c - n")?,
        c_plus_n: half(c + n, "c + n")?,
        b_minus_m: half(sub(b, m, "b - m")?, "b - m")?,
        b_plus_m: half(b + m, "b + m")?,
        c_minus_3n: half(sub(c, 3 * n, "c - 3n")?, "c - 3n")?,
        b_minus_3m: half(sub(b, 3 * m, "b - 3m")?, "b - 3m")?,
    })
}

pub fn mult2_forms(wit: &Mult2Witness) -> Result<Mult2Forms> {
    let h = half_exponents(wit)?;
    let (n, m) = (wit.n, wit.m);
    let s = Ring::xyz();
    let f1 = binomial(&s, [2, 0, 0], [0, n, m]);
    let f2 = binomial(&s, [1, 0, h.b_minus_m], [0, h.c_plus_n, 0]);
    let f3 = binomial(&s, [1, h.c_minus_n, 0], [0, 0, h.b_plus_m]);
    let f4 = &(&(&mono(&s, [1, h.c_minus_3n, h.b_minus_3m]) * &f1)
        - &(&mono(&s, [0, h.c_minus_n, 0]) * &f2))
        - &(&mono(&s, [0, 0, h.b_minus_m]) * &f3);
    Ok(Mult2Forms { f1, f2, f3, f4 })
}

pub fn mult2_presentation(w: &WeightTriple) -> Result<CoxPresentation> {
    let wit = match classify(w) {
        TripleClass::Mult2(m) => m,
        other => {
            return Err(Error::InvalidInput(format!(
                "{w:?} is not in the multiplicity-two family ({other})"
            )))
        }
    };
    mult2_presentation_for(&wit)
}

/// Presentation for an explicit witness (which need not be the one `classify` picks).
pub fn mult2_presentation_for(wit: &Mult2Witness) -> Result<CoxPresentation> {
    let [a, b, c] = wit.weights;
    let rw = WeightTriple::new(a, b, c)?;
    let (n, m) = (wit.n, wit.m);
    let h = half_exponents(wit)?;
    let forms = mult2_forms(wit)?;
    let ring = Ring::new(&["x", "y", "z", "s1", "s2", "s3", "s4", "t"]);
    let s = Ring::xyz();

    let gen = |name: &str, d: u64, mu: i64, image: Option<SparsePoly>| CoxGenerator {
        name: name.into(),
        degree: (d, -mu),
        multiplicity: mu,
        image,
    };
    let generators = vec![
        gen("x", a, 0, Some(mono(&s, [1, 0, 0]))),
        gen("y", b, 0, Some(mono(&s, [0, 1, 0]))),
        gen("z", c, 0, Some(mono(&s, [0, 0, 1]))),
        gen("s1", 2 * a, 1, Some(forms.f1.clone())),
        gen("s2", b * h.c_plus_n, 1, Some(forms.f2.clone())),
        gen("s3", c * h.b_plus_m, 1, Some(forms.f3.clone())),
        gen("s4", b * c, 2, Some(forms.f4.clone())),
        CoxGenerator {
            name: "t".into(),
            degree: (0, 1),
            multiplicity: -1,
            image: None,
        },
    ];

    // Exponent vectors over (x, y, z, s1, s2, s3, s4, t).
    let t = |c: i64, e: [u64; 8]| SparsePoly::term(&ring, c, &e.map(|v| v as u32));
    let sum = |parts: Vec<SparsePoly>| {
        parts
            .into_iter()
            .fold(SparsePoly::zero(&ring), |acc, p| &acc + &p)
    };
    let (cmn, cpn, bmm, bpm, c3n, b3m) = (
        h.c_minus_n,
        h.c_plus_n,
        h.b_minus_m,
        h.b_plus_m,
        h.c_minus_3n,
        h.b_minus_3m,
    );
    let naive_s2_square = sum(vec![
        t(1, [0, 0, 0, 0, 2, 0, 0, 0]),
        t(1, [0, 0, b3m, 1, 0, 1, 0, 0]),
        t(-1, [0, 1, 0, 0, 0, 0, 1, 0]),
    ]);
    let mut relations = vec![
        sum(vec![t(1, [2, 0, 0, 0, 0, 0, 0, 0]), t(-1, [0, n, m, 0, 0, 0, 0, 0]), t(-1, [0, 0, 0, 1, 0, 0, 0, 1])]),
        sum(vec![t(1, [1, 0, bmm, 0, 0, 0, 0, 0]), t(-1, [0, cpn, 0, 0, 0, 0, 0, 0]), t(-1, [0, 0, 0, 0, 1, 0, 0, 1])]),
        sum(vec![t(1, [1, cmn, 0, 0, 0, 0, 0, 0]), t(-1, [0, 0, bpm, 0, 0, 0, 0, 0]), t(-1, [0, 0, 0, 0, 0, 1, 0, 1])]),
        sum(vec![
            t(1, [1, c3n, b3m, 1, 0, 0, 0, 0]),
            t(-1, [0, cmn, 0, 0, 1, 0, 0, 0]),
            t(-1, [0, 0, bmm, 0, 0, 1, 0, 0]),
            t(-1, [0, 0, 0, 0, 0, 0, 1, 1]),
        ]),
        sum(vec![
            t(1, [0, c3n, b3m, 2, 0, 0, 0, 0]),
            t(-1, [0, 0, 0, 0, 1, 1, 0, 0]),
            t(-1, [1, 0, 0, 0, 0, 0, 1, 0]),
        ]),
        sum(vec![t(1, [0, cmn, 0, 1, 0, 0, 0, 0]), t(-1, [0, 0, m, 0, 1, 0, 0, 0]), t(-1, [1, 0, 0, 0, 0, 1, 0, 0])]),
        sum(vec![t(1, [0, 0, bmm, 1, 0, 0, 0, 0]), t(-1, [1, 0, 0, 0, 1, 0, 0, 0]), t(-1, [0, n, 0, 0, 0, 1, 0, 0])]),
        sum(vec![t(1, [0, 0, 0, 0, 0, 2, 0, 0]), t(1, [0, c3n, 0, 1, 1, 0, 0, 0]), t(-1, [0, 0, m, 0, 0, 0, 1, 0])]),
        naive_s2_square,
    ];

    let mut pres = CoxPresentation {
        kind: PresentationKind::Mult2,
        weights: rw,
        ring: ring.clone(),
        generators,
        relations: Vec::new(),
        saturation_variable: Some("t".into()),
        toric: false,
        parameters: (n, m),
        notes: Vec::new(),
    };
    let images = pres.images(&s);
    if !relations[8].substitute(&images)?.is_zero() {
        relations[8] = sum(vec![
            t(1, [0, 0, 0, 0, 2, 0, 0, 0]),
            t(1, [0, 0, b3m, 1, 0, 1, 0, 0]),
            t(-1, [0, n, 0, 0, 0, 0, 1, 0]),
        ]);
        pres.notes.push(format!(
            "relation s2^2 + z^{b3m}*s1*s3 - y*s4 does not vanish on the defining forms; \
             using s2^2 + z^{b3m}*s1*s3 - y^{n}*s4"
        ));
    }
    pres.relations = relations;
    Ok(pres)
}

/// Ideal of the point `[1, 1, 1]` in `K[x, y, z]`: the kernel of `x, y, z -> u^a, u^b, u^c`.
pub fn point_ideal(w: &WeightTriple) -> Result<Ideal> {
    let ring = Ring::new(&["u", "x", "y", "z"]);
    let u = SparsePoly::var(&ring, 0);
    let gens = (0..3)
        .map(|i| &SparsePoly::var(&ring, i + 1) - &u.pow(w.as_array()[i] as u32))
        .collect();
    let gb = buchberger(
        &Ideal::new(&ring, gens)?,
        &MonomialOrder::elimination(1, 4),
        DEFAULT_BUDGET,
    )?;
    let s = Ring::xyz();
    let kept = gb
        .elements()
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| {
            SparsePoly::from_terms(
                &s,
                g.terms()
                    .map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c.clone())),
            )
        })
        .collect();
    Ideal::new(&s, kept)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Homogeneity,
    Multiplicities,
    Identities,
    PointIdeal,
    SymbolicSquare,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::Homogeneity => "(1) relations are Z^2-homogeneous",
            Check::Multiplicities => "(2) Rees multiplicities of generators",
            Check::Identities => "(3) relations vanish on the defining forms",
            Check::PointIdeal => "(4) binomials generate the saturated point ideal",
            Check::SymbolicSquare => "(5) f4 in (I^2 : J^inf) but not in I^2",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed(String),
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<(Check, CheckStatus)>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|(_, s)| !matches!(s, CheckStatus::Failed(_)))
    }

    pub fn status(&self, check: Check) -> Option<&CheckStatus> {
        self.checks.iter().find(|(c, _)| *c == check).map(|(_, s)| s)
    }

    pub fn failures(&self) -> Vec<(Check, String)> {
        self.checks
            .iter()
            .filter_map(|(c, s)| match s {
                CheckStatus::Failed(msg) => Some((*c, msg.clone())),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, s) in &self.checks {
            match s {
                CheckStatus::Passed => writeln!(f, "PASS {c}")?,
                CheckStatus::Failed(msg) => writeln!(f, "FAIL {c}: {msg}")?,
                CheckStatus::NotApplicable => writeln!(f, "n/a  {c}")?,
            }
        }
        Ok(())
    }
}

/// Degree of a monomial in the generator ring under the columns of `Q`.
fn bidegree(p: &CoxPresentation, m: &Monomial) -> (i128, i128) {
    m.exponents()
        .iter()
        .zip(&p.generators)
        .fold((0, 0), |(d, e), (&k, g)| {
            (d + k as i128 * g.degree.0 as i128, e + k as i128 * g.degree.1 as i128)
        })
}

fn check_homogeneity(p: &CoxPresentation) -> CheckStatus {
    for r in &p.relations {
        let mut degs = r.terms().map(|(m, _)| bidegree(p, m));
        if let Some(first) = degs.next() {
            if degs.any(|d| d != first) {
                return CheckStatus::Failed(format!("relation {r} is not homogeneous"));
            }
        }
    }
    CheckStatus::Passed
}

fn check_multiplicities(p: &CoxPresentation) -> Result<CheckStatus> {
    for g in &p.generators {
        let Some(img) = &g.image else {
            if g.degree != (0, 1) || g.multiplicity != -1 {
                return Ok(CheckStatus::Failed(format!(
                    "{} has no defining form but is not the exceptional section",
                    g.name
                )));
            }
            continue;
        };
        if g.degree.1 != -g.multiplicity {
            return Ok(CheckStatus::Failed(format!(
                "{}: E-coefficient {} does not match multiplicity {}",
                g.name, g.degree.1, g.multiplicity
            )));
        }
        match img.weighted_degree(&p.weights) {
            WeightedDegree::Homogeneous(d) if d == g.degree.0 => {}
            other => {
                return Ok(CheckStatus::Failed(format!(
                    "{}: degree {:?} does not match Q column {}",
                    g.name, other, g.degree.0
                )))
            }
        }
        let mu = rees_multiplicity(&p.weights, img)?;
        if mu as i64 != g.multiplicity {
            return Ok(CheckStatus::Failed(format!(
                "{} = {img}: Rees multiplicity {mu}, expected {}",
                g.name, g.multiplicity
            )));
        }
    }
    Ok(CheckStatus::Passed)
}

fn check_identities(p: &CoxPresentation) -> Result<CheckStatus> {
    let s = Ring::xyz();
    let images = p.images(&s);
    for r in &p.relations {
        let v = r.substitute(&images)?;
        if !v.is_zero() {
            return Ok(CheckStatus::Failed(format!("relation {r} maps to {v}")));
        }
    }
    Ok(CheckStatus::Passed)
}

fn same_ideal(i: &Ideal, j: &Ideal, order: &MonomialOrder) -> Result<bool> {
    Ok(buchberger(i, order, DEFAULT_BUDGET)?.elements()
        == buchberger(j, order, DEFAULT_BUDGET)?.elements())
}

fn check_point_ideal(p: &CoxPresentation) -> Result<CheckStatus> {
    let s = Ring::xyz();
    let order = MonomialOrder::weighted_grevlex(&p.weights.as_array());
    let point = point_ideal(&p.weights)?;
    let xyz = mono(&s, [1, 1, 1]);
    let (binomials, partial): (Vec<&str>, Vec<&str>) = match p.kind {
        PresentationKind::KStar => (vec!["T3", "T4"], vec!["T3", "T4"]),
        PresentationKind::Mult2 => (vec!["s1", "s2", "s3"], vec!["s1", "s2"]),
    };
    let collect = |names: &[&str]| -> Result<Ideal> {
        let gens = names
            .iter()
            .map(|n| {
                p.image_of(n)
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput(format!("generator {n} missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&s, gens)
    };
    let full = collect(&binomials)?;
    let sat = saturate(&collect(&partial)?, &xyz)?;
    if !same_ideal(&sat, &full, &order)? {
        return Ok(CheckStatus::Failed(format!(
            "saturation of <{}> by xyz differs from <{}>",
            partial.join(", "),
            binomials.join(", ")
        )));
    }
    if !same_ideal(&full, &point, &order)? {
        return Ok(CheckStatus::Failed(format!(
            "<{}> is not the ideal of the point",
            binomials.join(", ")
        )));
    }
    Ok(CheckStatus::Passed)
}

fn check_symbolic_square(p: &CoxPresentation) -> Result<CheckStatus> {
    let s = Ring::xyz();
    let get = |n: &str| {
        p.image_of(n)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("generator {n} missing")))
    };
    let f4 = get("s4")?;
    let i = Ideal::new(&s, vec![get("s1")?, get("s2")?, get("s3")?])?;
    let mu = rees_multiplicity(&p.weights, &f4)?;
    if mu < 2 {
        return Ok(CheckStatus::Failed(format!(
            "f4 has Rees multiplicity {mu} < 2"
        )));
    }
    let order = MonomialOrder::weighted_grevlex(&p.weights.as_array());
    let gb = buchberger(&i.power(2)?, &order, DEFAULT_BUDGET)?;
    if gb.contains(&f4)? {
        return Ok(CheckStatus::Failed("f4 lies in I^2".into()));
    }
    Ok(CheckStatus::Passed)
}

/// Runs the five checks; Gröbner resource errors propagate, mismatches are reported.
pub fn verify_presentation(p: &CoxPresentation) -> Result<VerificationReport> {
    let mut checks = vec![
        (Check::Homogeneity, check_homogeneity(p)),
        (Check::Multiplicities, check_multiplicities(p)?),
        (Check::Identities, check_identities(p)?),
        (Check::PointIdeal, check_point_ideal(p)?),
    ];
    let fifth = match p.kind {
        PresentationKind::Mult2 => check_symbolic_square(p)?,
        PresentationKind::KStar => CheckStatus::NotApplicable,
    };
    checks.push((Check::SymbolicSquare, fifth));
    Ok(VerificationReport { checks })
}

/// Describing matrix of a `K*` triple, written for `a = alpha b + beta c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescribingMatrix {
    pub rows: [[i64; 5]; 3],
    /// Generator behind each column.
    pub columns: [&'static str; 5],
}

impl DescribingMatrix {
    /// `P Q^T` for the degree matrix of the matching presentation; zero for a valid matrix.
    pub fn times_degrees(&self, p: &CoxPresentation) -> [[i64; 2]; 3] {
        let mut out = [[0i64; 2]; 3];
        for (r, row) in self.rows.iter().enumerate() {
            for (col, name) in self.columns.iter().enumerate() {
                let g = p
                    .generators
                    .iter()
                    .find(|g| g.name == *name)
                    .expect("column names match generators");
                out[r][0] += row[col] * g.degree.0 as i64;
                out[r][1] += row[col] * g.degree.1;
            }
        }
        out
    }

    /// Whether the columns generate `Z^3`.
    pub fn columns_span_lattice(&self) -> Result<bool> {
        let m: Vec<Vec<i64>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let snf = smith_normal_form(&m)?;
        Ok(snf.rank == 3 && snf.diagonal.iter().take(3).all(|&d| d.abs() == 1))
    }
}

pub fn describing_matrix(w: &WeightTriple) -> Result<DescribingMatrix> {
    let k = match classify(w) {
        TripleClass::KStar(k) => k,
        other => return Err(Error::InvalidInput(format!("{w:?} is not a K* triple ({other})"))),
    };
    let [_, b, c] = k.weights.map(|v| v as i64);
    let (m, n) = (k.alpha as i64, k.beta as i64);
    Ok(DescribingMatrix {
        rows: [
            [-c, b, 0, 0, 0],
            [-c, 0, 1, 1, 0],
            [-m, -n, 0, 1, 1],
        ],
        columns: ["T1", "T2", "T4", "T5", "T3"],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::monoid_member;

    fn w(a: u64, b: u64, c: u64) -> WeightTriple {
        WeightTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert!(matches!(
            classify(&w(2, 3, 5)),
            TripleClass::KStar(KStarWitness { weights: [5, 2, 3], alpha: 1, beta: 1 })
        ));
        assert_eq!(
            classify(&w(7, 3, 11)),
            TripleClass::Mult2(Mult2Witness { weights: [7, 3, 11], n: 1, m: 1 })
        );
        assert_eq!(classify(&w(3, 7, 11)), classify(&w(7, 3, 11)));
        assert_eq!(classify(&w(7, 10, 19)), TripleClass::Other);
    }

    #[test]
    fn kstar_matches_monoid_condition() {
        for t in crate::weights::coprime_triples(1, 50) {
            let [a, b, c] = t.as_array();
            let expected =
                monoid_member(a, b, c) || monoid_member(b, a, c) || monoid_member(c, a, b);
            assert_eq!(matches!(classify(&t), TripleClass::KStar(_)), expected, "{t:?}");
        }
    }

    #[test]
    fn kstar_presentation_example() {
        let p = kstar_presentation(&w(5, 2, 3)).unwrap();
        assert_eq!(p.degree_matrix(), [vec![2, 3, 5, 6, 0], vec![0, 0, -1, -1, 1]]);
        assert_eq!(p.multiplicities(), vec![0, 0, 1, 1, -1]);
        assert_eq!(p.relations[0], SparsePoly::parse(&p.ring, "T4*T5 - T1^3 + T2^2").unwrap());
        assert!(!p.toric);
        assert!(kstar_presentation(&w(1, 4, 7)).unwrap().toric);
        assert!(kstar_presentation(&w(7, 3, 11)).is_err());
        assert!(verify_presentation(&p).unwrap().all_passed());
    }

    #[test]
    fn mult2_example() {
        let p = mult2_presentation(&w(7, 3, 11)).unwrap();
        let s = Ring::xyz();
        assert_eq!(p.relations[0], SparsePoly::parse(&p.ring, "x^2 - y*z - s1*t").unwrap());
        assert_eq!(p.generators[6].degree, (33, -2));
        let forms = mult2_forms(&Mult2Witness { weights: [7, 3, 11], n: 1, m: 1 }).unwrap();
        // y^{(c-n)/2} f1 - z^m f2 - x f3 = 0
        let zero = &(&(&mono(&s, [0, 5, 0]) * &forms.f1) - &(&mono(&s, [0, 0, 1]) * &forms.f2))
            - &(&mono(&s, [1, 0, 0]) * &forms.f3);
        assert!(zero.is_zero());
        let report = verify_presentation(&p).unwrap();
        assert!(report.all_passed(), "{report}");
        assert!(p.notes.is_empty());
    }

    #[test]
    fn mult2_degrees_of_s2_s3() {
        for t in crate::weights::coprime_triples(1, 30) {
            if let TripleClass::Mult2(wit) = classify(&t) {
                let [a, b, c] = wit.weights;
                let (n, m) = (wit.n, wit.m);
                assert_eq!(a + c * (b - m) / 2, b * (c + n) / 2);
                let p = mult2_presentation(&t).unwrap();
                let f = mult2_forms(&wit).unwrap();
                let rw = p.weights;
                assert_eq!(f.f2.weighted_degree(&rw).value(), Some(p.generators[4].degree.0));
                assert_eq!(f.f3.weighted_degree(&rw).value(), Some(p.generators[5].degree.0));
            }
        }
    }

    #[test]
    fn corrupted_relation_fails_homogeneity() {
        let mut p = mult2_presentation(&w(7, 3, 11)).unwrap();
        p.relations[3] = &p.relations[3] + &SparsePoly::var(&p.ring, 0);
        let r = verify_presentation(&p).unwrap();
        assert!(matches!(r.status(Check::Homogeneity), Some(CheckStatus::Failed(_))));
    }

    #[test]
    fn y_power_correction_is_recorded() {
        // n = 3 here, so the plain y*s4 relation needs y^3.
        let t = crate::weights::coprime_triples(1, 40)
            .into_iter()
            .find(|t| matches!(classify(t), TripleClass::Mult2(m) if m.n >= 2))
            .unwrap();
        let p = mult2_presentation(&t).unwrap();
        assert_eq!(p.notes.len(), 1);
        assert!(verify_presentation(&p).unwrap().all_passed());
    }

    #[test]
    fn cor3bc_examples() {
        assert_eq!(cor3bc_witness(7, 11).unwrap(), 1);
        assert_eq!(cor3bc_witness(5, 7).unwrap(), 1);
        assert!(cor3bc_witness(5, 8).is_err());
        assert_eq!(cor3bc_witness(4, 5).unwrap(), 1);
        assert!(cor3bc_witness(4, 7).is_err());
        assert!(cor3bc_witness(11, 7).is_err());
        let n = cor3bc_witness(7, 11).unwrap();
        let p = mult2_presentation_for(&Mult2Witness { weights: [7, 3, 11], n, m: 1 }).unwrap();
        assert!(verify_presentation(&p).unwrap().all_passed());
    }

    #[test]
    fn describing_matrix_kernel() {
        for t in crate::weights::coprime_triples(1, 25) {
            if let TripleClass::KStar(_) = classify(&t) {
                let d = describing_matrix(&t).unwrap();
                let p = kstar_presentation(&t).unwrap();
                assert_eq!(d.times_degrees(&p), [[0, 0]; 3], "{t:?}");
                assert!(d.columns_span_lattice().unwrap(), "{t:?}");
            }
        }
        let d = describing_matrix(&w(2, 3, 5)).unwrap();
        assert_eq!(d.rows, [[-3, 2, 0, 0, 0], [-3, 0, 1, 1, 0], [-1, -1, 0, 1, 1]]);
        assert!(describing_matrix(&w(7, 3, 11)).is_err());
    }

    #[test]
    fn point_ideal_small() {
        let i = point_ideal(&w(1, 2, 3)).unwrap();
        let s = Ring::xyz();
        assert!(i.contains(&SparsePoly::parse(&s, "y - x^2").unwrap()).unwrap());
        assert!(i.contains(&SparsePoly::parse(&s, "z - x*y").unwrap()).unwrap());
        assert!(!i.contains(&SparsePoly::parse(&s, "z - x").unwrap()).unwrap());
    }
}
