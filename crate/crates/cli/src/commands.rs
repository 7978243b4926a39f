use std::path::Path;

use cabcoh::curve::{is_smooth_with, CurveSpec, SmoothnessEvidence, SmoothnessOptions};
use cabcoh::generic::{chain_start, default_symbolic_cap, locus_with, GenericFamily};
use cabcoh::genus0::{residue_reduce, Genus0Spec};
use cabcoh::reduction::{DifferentialForm, MonomialForm, Poly2, Reducer};
use cabcoh::valuation::solve_jr;
use cabcoh::{valp, BigRational, CabParams, Error, Valuation};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::failure::{emit, read_input, Failure};
use crate::LocusMode;

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn load_curve(path: &Path) -> Result<CabParams, Failure> {
    let spec = CurveSpec::from_json(&read_input(path)?)?;
    Ok(CabParams::from_spec(&spec)?)
}

pub fn check(path: &Path, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let spec = CurveSpec::from_json(&read_input(path)?)?;
    let curve = match CabParams::from_spec(&spec) {
        Ok(c) => c,
        Err(Error::InvalidCurve(errors)) => {
            let report = json!({ "valid": false, "errors": errors });
            emit(out, &to_json(&report))?;
            return Err(Failure::validation(format!("invalid curve: {}", errors.join("; "))));
        }
        Err(e) => return Err(e.into()),
    };
    let cert = is_smooth_with(&curve, SmoothnessOptions { fast_path: true, seed })?;
    let (evidence, witness) = match &cert.evidence {
        SmoothnessEvidence::SquarefreeF0 => ("squarefree-f0", Value::Null),
        SmoothnessEvidence::ResultantGcdConstant { .. } => ("resultant-gcd-constant", Value::Null),
        SmoothnessEvidence::ClearedFactors { .. } => ("cleared-factors", Value::Null),
        SmoothnessEvidence::Witness(w) => {
            if !w.verify(&curve) {
                return Err(Failure::Assertion("singular witness does not re-verify".into()));
            }
            let value = match w.rational_coordinates() {
                Some((x, y)) => json!([x, y]),
                None => json!({ "modulus": w.field.modulus().coeffs(), "x": w.x, "y": w.y }),
            };
            ("witness", value)
        }
    };
    let mut report = json!({
        "valid": true,
        "p": curve.p(),
        "a": curve.a(),
        "b": curve.b(),
        "genus": curve.genus(),
        "smooth": cert.is_smooth(),
        "evidence": evidence,
    });
    if !witness.is_null() {
        report["witness"] = witness;
    }
    emit(out, &to_json(&report))
}

/// Parses `"i j dx"` or `"coef i j dy"` items separated by `;`.
pub fn parse_form(text: &str) -> Result<DifferentialForm<BigRational>, Failure> {
    let mut form = DifferentialForm::zero();
    let mut any = false;
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let tokens: Vec<&str> = item.split_whitespace().collect();
        let (coef, mono) = match tokens.len() {
            3 => (BigRational::from_integer(1.into()), item.to_string()),
            4 => {
                let c: BigRational =
                    tokens[0].parse().map_err(|_| Failure::validation(format!("bad coefficient {:?}", tokens[0])))?;
                (c, tokens[1..].join(" "))
            }
            _ => return Err(Failure::validation(format!("bad form item {item:?}"))),
        };
        let m: MonomialForm = mono.parse()?;
        form.add_term(m, coef);
        any = true;
    }
    if !any {
        return Err(Failure::validation("empty form"));
    }
    Ok(form)
}

fn poly_json(p: &Poly2<BigRational>) -> Value {
    Value::Array(p.terms().map(|(&(i, j), c)| json!([i, j, c.to_string()])).collect())
}

fn valuation_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(n) => json!(n),
        Valuation::Infinite => Value::Null,
    }
}

pub fn reduce(path: &Path, form_text: &str, certificate: bool, out: Option<&Path>) -> Result<(), Failure> {
    let curve = load_curve(path)?;
    if !is_smooth_with(&curve, SmoothnessOptions::default())?.is_smooth() {
        return Err(Failure::validation(format!("curve is singular mod {}", curve.p())));
    }
    let form = parse_form(form_text)?;
    let reducer = Reducer::for_curve(&curve);
    let r = reducer.reduce_to_basis(&form, certificate)?;
    let vector: Vec<Value> = r
        .vector
        .entries()
        .map(|((i, j), c)| {
            let v = valp(c, curve.p()).expect("p was validated");
            json!({ "i": i, "j": j, "value": c.to_string(), "valp": valuation_json(v) })
        })
        .collect();
    let mut report = json!({
        "p": curve.p(),
        "a": curve.a(),
        "b": curve.b(),
        "form": form_text,
        "vector": vector,
        "steps": r.stats.steps,
    });
    if let Some(cert) = &r.certificate {
        let verified = reducer.check_certificate(&form, &r.vector, cert)?;
        if !verified {
            return Err(Failure::Assertion("certificate does not verify".into()));
        }
        report["certificate"] = json!({
            "g": poly_json(&cert.g),
            "h": poly_json(&cert.h),
            "u": poly_json(&cert.u),
            "v": poly_json(&cert.v),
            "verified": verified,
        });
    }
    emit(out, &to_json(&report))
}

#[allow(clippy::too_many_arguments)]
pub fn generic(
    a: u32,
    b: u32,
    p: u64,
    d: u32,
    symbolic_cap: Option<u32>,
    chain_cap: u32,
    mode: LocusMode,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let rc = solve_jr(p, a, b)?;
    let symbolic_cap = symbolic_cap.unwrap_or_else(|| default_symbolic_cap(b));
    let (_, i_d) = chain_start(p, a, b, &rc, d)?;
    let fits_full = i_d.to_u32().is_some_and(|i| i <= symbolic_cap);
    let (family, cap) = match mode {
        LocusMode::Full => (GenericFamily::new(p, a, b)?, symbolic_cap),
        LocusMode::LongChain => (GenericFamily::superelliptic(p, a, b)?, chain_cap),
        LocusMode::Auto if fits_full => (GenericFamily::new(p, a, b)?, symbolic_cap),
        LocusMode::Auto => (GenericFamily::superelliptic(p, a, b)?, chain_cap),
    };
    let report = locus_with(&family, &rc, d, cap)?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    emit(out, &text)
}

pub fn genus0(path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let spec = Genus0Spec::from_json(&read_input(path)?)?;
    let form = spec.to_form()?;
    let residues = residue_reduce(&form);
    let report = json!({
        "punctures": spec.punctures,
        "residues": residues,
        "integral": residues.is_integral(),
    });
    emit(out, &to_json(&report))
}
