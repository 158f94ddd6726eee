//! Command bodies. Each returns the text (or JSON) to print so tests can call them directly.

use anyhow::Result;
use serde_json::{json, Value};
use wpp_mori::coxring::{
    classify as classify_triple, kstar_presentation, mult2_presentation, verify_presentation,
    CheckStatus, CoxPresentation, PresentationKind, TripleClass, VerificationReport,
};
use wpp_mori::m0n::{search_weights, verify_reduction, LatticeReduction};
use wpp_mori::orthpair::{mds_test as run_mds_test, MdsVerdict};
use wpp_mori::verifygens::{BlowupInput, Certificate, Verifier};
use wpp_mori::WeightTriple;

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn class_json(c: &TripleClass) -> Value {
    match c {
        TripleClass::KStar(k) => json!({
            "class": "KStar", "weights": k.weights, "alpha": k.alpha, "beta": k.beta,
        }),
        TripleClass::Mult2(m) => json!({
            "class": "Mult2", "weights": m.weights, "n": m.n, "m": m.m,
        }),
        TripleClass::Other => json!({ "class": "Other" }),
    }
}

pub fn classify(w: &WeightTriple, as_json: bool) -> String {
    let c = classify_triple(w);
    if as_json {
        to_text(&class_json(&c))
    } else {
        format!("{c}\n")
    }
}

fn verdict_json(w: &WeightTriple, v: &MdsVerdict) -> Value {
    match v {
        MdsVerdict::MoriDream(p) => json!({
            "weights": w.as_array(),
            "verdict": "MoriDream",
            "signature": p.signature(),
            "f1": p.f1.to_string(),
            "f2": p.f2.to_string(),
        }),
        MdsVerdict::Inconclusive { mu_cap, d_cap } => json!({
            "weights": w.as_array(),
            "verdict": "Inconclusive",
            "mu_cap": mu_cap,
            "d_cap": d_cap,
        }),
    }
}

fn verdict_text(v: &MdsVerdict) -> String {
    match v {
        MdsVerdict::MoriDream(p) => format!(
            "verdict: MoriDream\nsignature: {} {} {} {}\nf1: {}\nf2: {}\n",
            p.d1, p.mu1, p.d2, p.mu2, p.f1, p.f2
        ),
        MdsVerdict::Inconclusive { mu_cap, d_cap } => {
            format!("verdict: Inconclusive\nmu_cap: {mu_cap}\nd_cap: {d_cap}\n")
        }
    }
}

pub fn mds_test(w: &WeightTriple, mu_cap: u32, as_json: bool) -> String {
    let v = run_mds_test(w, mu_cap);
    if as_json {
        to_text(&verdict_json(w, &v))
    } else {
        verdict_text(&v)
    }
}

fn report_json(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|(c, s)| {
            let (status, detail) = match s {
                CheckStatus::Passed => ("passed", None),
                CheckStatus::Failed(m) => ("failed", Some(m.clone())),
                CheckStatus::NotApplicable => ("n/a", None),
            };
            json!({ "check": format!("{c:?}"), "status": status, "detail": detail })
        })
        .collect();
    json!({ "all_passed": r.all_passed(), "checks": checks })
}

fn presentation_json(p: &CoxPresentation) -> Value {
    let generators: Vec<Value> = p
        .generators
        .iter()
        .map(|g| {
            json!({
                "name": g.name,
                "degree": [g.degree.0, g.degree.1],
                "multiplicity": g.multiplicity,
                "image": g.image.as_ref().map(|f| f.to_string()),
            })
        })
        .collect();
    let kind = match p.kind {
        PresentationKind::KStar => "KStar",
        PresentationKind::Mult2 => "Mult2",
    };
    json!({
        "kind": kind,
        "weights": p.weights.as_array(),
        "parameters": [p.parameters.0, p.parameters.1],
        "toric": p.toric,
        "generators": generators,
        "relations": p.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "saturation_variable": p.saturation_variable,
        "notes": p.notes,
    })
}

/// Presentation plus verification report, or just the test verdict for other triples.
pub fn coxring(w: &WeightTriple, mu_cap: u32, as_json: bool) -> Result<String> {
    let class = classify_triple(w);
    let pres = match class {
        TripleClass::KStar(_) => Some(kstar_presentation(w)?),
        TripleClass::Mult2(_) => Some(mult2_presentation(w)?),
        TripleClass::Other => None,
    };
    let Some(pres) = pres else {
        let v = run_mds_test(w, mu_cap);
        return Ok(if as_json {
            to_text(&json!({ "class": class_json(&class), "verdict": verdict_json(w, &v) }))
        } else {
            format!("{class}\n{}", verdict_text(&v))
        });
    };
    let report = verify_presentation(&pres)?;
    Ok(if as_json {
        to_text(&json!({
            "class": class_json(&class),
            "presentation": presentation_json(&pres),
            "verification": report_json(&report),
        }))
    } else {
        format!("{class}\n{pres}verification:\n{report}")
    })
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "holds": c.holds,
        "reason": c.reason,
        "dims": [Some(c.dim_r1), c.dim_with_t, c.dim_with_t_f],
        "multiplicities": c.multiplicities,
        "generators": c.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "trace": c.trace.iter().map(|s| json!({
            "degree": [s.degree.0, s.degree.1],
            "element": s.element.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// Parses an instance and runs the generator verification.
pub fn verify_gens(text: &str, budget: Option<u64>, steps: usize, as_json: bool) -> Result<(bool, String)> {
    let input = BlowupInput::parse(text)?;
    let verifier = match budget {
        Some(b) => Verifier::with_budget(&input, b)?,
        None => Verifier::new(&input)?,
    };
    let cert = verifier.verify(steps)?;
    let out = if as_json {
        to_text(&certificate_json(&cert))
    } else {
        cert.to_string()
    };
    Ok((cert.holds, out))
}

/// Verifies a lattice reduction; `search_bound` also lists candidate weight triples.
pub fn m0n(text: &str, search_bound: Option<u64>, as_json: bool) -> Result<(bool, String)> {
    let r = LatticeReduction::parse(text)?;
    let report = verify_reduction(&r)?;
    let found = match search_bound {
        Some(bound) if report.images.is_some() => Some(search_weights(&r, bound)?),
        _ => None,
    };
    let out = if as_json {
        to_text(&json!({
            "n": r.n,
            "valid": report.valid,
            "failure": report.failure,
            "invariant_factors": report.invariant_factors,
            "images": report.images.as_ref().map(|i| i.rows()),
            "weights_found": found,
        }))
    } else {
        let mut s = report.to_string();
        if let Some(found) = found {
            s += "weights found:\n";
            for [a, b, c] in found {
                s += &format!("{a} {b} {c}\n");
            }
        }
        s
    };
    Ok((report.valid, out))
}
