//! One handler per subcommand. Each returns the filled report plus the exit
//! code: 0 = verified/true, 1 = falsified/exhausted, while usage and
//! internal errors bubble up as `Err` and exit 2.

use serde_json::{json, Value};

use diffnil::records::{certificate_records, grassmann_records, operator_records, polynomial_records};
use diffnil::sample::{sample_operator, sample_quotient_element, seeded_rng};
use diffnil::{
    component_dimension, derivation_kernel_dimension, enumerate_alpha, injectivity_rank,
    nil_bound, nil_index_element, nil_index_operator, parse_operator, parse_polynomial, phi,
    phi_power_nil_index, reduce, witness_corollary, witness_matrix, witness_theorem2,
    DiffPolynomial, Error, PrimalityWitness, Result, WitnessOutcome,
};

use crate::report::Report;

pub fn cmd_reduce(m: u32, poly_text: &str) -> Result<(Report, i32)> {
    let f = parse_polynomial(poly_text)?;
    let (nf, certificate) = reduce(&f, m)?;
    let member = nf.is_zero();
    let mut report = Report::new("reduce");
    report.param("m", m);
    report.param("poly", poly_text);
    report.result = json!({
        "normal_form": nf.to_string(),
        "normal_form_records": polynomial_records(nf.poly()),
        "member": member,
    });
    report.certificate = Some(json!(certificate_records(&certificate)));
    report.line(format!("normal form: {nf}"));
    report.line(format!("member: {member}"));
    Ok((report, 0))
}

pub fn cmd_member(m: u32, poly_text: &str) -> Result<(Report, i32)> {
    let f = parse_polynomial(poly_text)?;
    let (nf, certificate) = reduce(&f, m)?;
    let member = nf.is_zero();
    let mut report = Report::new("member");
    report.param("m", m);
    report.param("poly", poly_text);
    report.result = json!({ "member": member });
    report.line(format!("member: {member}"));
    if member {
        report.certificate = Some(json!(certificate_records(&certificate)));
        for term in certificate.terms() {
            report.line(format!(
                "  {} * {} * (x^{m})^({})",
                term.coefficient, term.cofactor, term.k
            ));
        }
    } else {
        report.line(format!("normal form: {nf}"));
    }
    Ok((report, if member { 0 } else { 1 }))
}

pub fn cmd_embed(m: u32, poly_text: &str) -> Result<(Report, i32)> {
    let f = parse_polynomial(poly_text)?;
    let image = phi(m, &f)?;
    let mut report = Report::new("embed");
    report.param("m", m);
    report.param("poly", poly_text);
    report.result = json!({
        "image": image.to_string(),
        "image_records": grassmann_records(&image),
        "term_count": image.support_size(),
    });
    report.line(format!("phi: {image}"));
    Ok((report, 0))
}

/// Default cap: the closed form plus slack for a single-variable probe, the
/// operator-style bound `w + 2` at m = 2, otherwise the caller must choose.
fn default_nil_cap(f: &DiffPolynomial, m: u32) -> Result<u32> {
    let monos: Vec<_> = f.terms().collect();
    if let [(mono, _)] = monos.as_slice() {
        if mono.degree() == 1 {
            let i = mono.exponents().next().expect("degree-1 monomial").0;
            return Ok((i + 1) * m - i + 2);
        }
    }
    if m == 2 {
        let reduced = diffnil::normal_form(f, m)?;
        return Ok(reduced.poly().max_weight().unwrap_or(0) + 2);
    }
    Err(Error::InvalidParameter(
        "no default cap for this input; pass --cap".into(),
    ))
}

pub fn cmd_nilindex(m: u32, poly_text: &str, cap: Option<u32>) -> Result<(Report, i32)> {
    let f = parse_polynomial(poly_text)?;
    let cap = match cap {
        Some(c) => c,
        None => default_nil_cap(&f, m)?,
    };
    let outcome = nil_index_element(&f, m, cap)?;
    let mut report = Report::new("nilindex");
    report.param("m", m);
    report.param("poly", poly_text);
    report.param("cap", cap);
    report.result = json!({
        "nil_index": outcome,
        "exhausted": outcome.is_none(),
    });
    match outcome {
        Some(n) => report.line(format!("nil index: {n}")),
        None => report.line(format!("exhausted at cap {cap}")),
    }
    Ok((report, if outcome.is_some() { 0 } else { 1 }))
}

pub fn verify_ritt(m: u32, max_i: u32) -> Result<(Report, i32)> {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all_pass = true;
    for i in 0..=max_i {
        let expected = (i + 1) * m - i;
        let cap = expected + 2;
        let grassmann = phi_power_nil_index(m, i, cap)?;
        let membership = nil_index_element(&DiffPolynomial::variable(i), m, cap)?;
        let pass = grassmann == Some(expected) && membership == Some(expected);
        all_pass &= pass;
        rows.push(json!({
            "i": i,
            "expected": expected,
            "grassmann": grassmann,
            "membership": membership,
            "pass": pass,
        }));
        lines.push(format!(
            "i={i}: expected {expected}, grassmann {grassmann:?}, membership {membership:?} — {}",
            if pass { "ok" } else { "MISMATCH" }
        ));
    }
    let mut report = Report::new("verify-ritt");
    report.param("m", m);
    report.param("max_i", max_i);
    report.result = json!({ "suite": "ritt", "rows": rows, "all_pass": all_pass });
    for line in lines {
        report.line(line);
    }
    report.line(format!("all verified: {all_pass}"));
    Ok((report, if all_pass { 0 } else { 1 }))
}

/// Shared shape of the per-slice sweeps.
fn slice_sweep<F>(
    name: &str,
    m: u32,
    degrees: std::ops::RangeInclusive<u32>,
    max_weight: u32,
    mut check: F,
) -> Result<(Report, i32)>
where
    F: FnMut(u32, u32) -> Result<(Value, bool, String)>,
{
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all_pass = true;
    for d in degrees {
        for w in 0..=max_weight {
            let (mut row, pass, detail) = check(d, w)?;
            all_pass &= pass;
            if let Value::Object(map) = &mut row {
                map.insert("d".into(), json!(d));
                map.insert("w".into(), json!(w));
                map.insert("pass".into(), json!(pass));
            }
            rows.push(row);
            if !pass {
                lines.push(format!("d={d} w={w}: {detail} — FAIL"));
            }
        }
    }
    let mut report = Report::new(&format!("verify-{name}"));
    report.param("m", m);
    report.result = json!({ "suite": name, "slices": rows, "all_pass": all_pass });
    for line in lines {
        report.line(line);
    }
    report.line(format!("slices checked: {}", report.result["slices"].as_array().unwrap().len()));
    report.line(format!("all verified: {all_pass}"));
    Ok((report, if all_pass { 0 } else { 1 }))
}

pub fn verify_injectivity(m: u32, max_degree: u32, max_weight: u32) -> Result<(Report, i32)> {
    let mut report = slice_sweep("injectivity", m, 0..=max_degree, max_weight, |d, w| {
        let (rank, count) = injectivity_rank(m, d, w)?;
        Ok((
            json!({ "rank": rank, "basis_count": count }),
            rank == count,
            format!("rank {rank} != basis count {count}"),
        ))
    })?;
    report.0.param("max_degree", max_degree);
    report.0.param("max_weight", max_weight);
    Ok(report)
}

pub fn verify_basis(m: u32, max_degree: u32, max_weight: u32) -> Result<(Report, i32)> {
    let mut report = slice_sweep("basis", m, 0..=max_degree, max_weight, |d, w| {
        let dimension = component_dimension(m, d, w)?;
        let count = enumerate_alpha(m, d, w)?.len();
        Ok((
            json!({ "dimension": dimension, "alpha_count": count }),
            dimension == count,
            format!("dimension {dimension} != alpha count {count}"),
        ))
    })?;
    report.0.param("max_degree", max_degree);
    report.0.param("max_weight", max_weight);
    Ok(report)
}

pub fn verify_constants(m: u32, max_degree: u32, max_weight: u32) -> Result<(Report, i32)> {
    let mut report = slice_sweep("constants", m, 1..=max_degree, max_weight, |d, w| {
        let kernel = derivation_kernel_dimension(m, d, w)?;
        Ok((
            json!({ "kernel_dimension": kernel }),
            kernel == 0,
            format!("kernel dimension {kernel} != 0"),
        ))
    })?;
    report.0.param("max_degree", max_degree);
    report.0.param("max_weight", max_weight);
    Ok(report)
}

pub fn verify_triangular(m: u32, max_degree: u32, max_weight: u32) -> Result<(Report, i32)> {
    let mut report = slice_sweep("triangular", m, 0..=max_degree, max_weight, |d, w| {
        let matrix = witness_matrix(m, d, w)?;
        let pass = matrix.is_triangular_with_nonzero_diagonal();
        Ok((
            json!({ "size": matrix.alphas.len() }),
            pass,
            "witness matrix is not triangular with nonzero diagonal".to_string(),
        ))
    })?;
    report.0.param("max_degree", max_degree);
    report.0.param("max_weight", max_weight);
    Ok(report)
}

fn require_m2(m: u32, suite: &str) -> Result<()> {
    if m != 2 {
        return Err(Error::InvalidParameter(format!(
            "the {suite} suite is stated for m = 2 only"
        )));
    }
    Ok(())
}

pub fn verify_nilpotent(m: u32, samples: u32, seed: u64) -> Result<(Report, i32)> {
    require_m2(m, "nilpotent")?;
    let mut rng = seeded_rng(seed);
    let mut rows = Vec::new();
    let mut all_pass = true;
    for trial in 0..samples {
        let f = sample_quotient_element(&mut rng);
        let bound = f.max_weight().unwrap_or(0) + 2;
        let index = nil_index_element(&f, 2, bound)?;
        let pass = index.is_some();
        all_pass &= pass;
        rows.push(json!({
            "trial": trial,
            "element": f.to_string(),
            "bound": bound,
            "nil_index": index,
            "pass": pass,
        }));
    }
    let mut report = Report::new("verify-nilpotent");
    report.param("m", m);
    report.param("samples", samples);
    report.param("seed", seed);
    report.result = json!({ "suite": "nilpotent", "samples": rows, "all_pass": all_pass });
    report.line(format!("samples: {samples}"));
    report.line(format!("all verified: {all_pass}"));
    Ok((report, if all_pass { 0 } else { 1 }))
}

pub fn verify_operator_nil(m: u32, samples: u32, seed: u64) -> Result<(Report, i32)> {
    require_m2(m, "operator-nil")?;
    let mut rng = seeded_rng(seed);
    let mut rows = Vec::new();
    let mut all_pass = true;
    for trial in 0..samples {
        let a = sample_operator(&mut rng);
        let bound = nil_bound(&a)?;
        let index = nil_index_operator(&a)?;
        let pass = index <= bound;
        all_pass &= pass;
        rows.push(json!({
            "trial": trial,
            "operator": a.to_string(),
            "bound": bound,
            "nil_index": index,
            "pass": pass,
        }));
    }
    let mut report = Report::new("verify-operator-nil");
    report.param("m", m);
    report.param("samples", samples);
    report.param("seed", seed);
    report.result = json!({ "suite": "operator-nil", "samples": rows, "all_pass": all_pass });
    report.line(format!("samples: {samples}"));
    report.line(format!("all verified: {all_pass}"));
    Ok((report, if all_pass { 0 } else { 1 }))
}

pub fn cmd_witness_element(a_text: &str, b_text: &str, cap: u32) -> Result<(Report, i32)> {
    let a = parse_polynomial(a_text)?;
    let b = parse_polynomial(b_text)?;
    let outcome = witness_corollary(&a, &b, cap)?;
    let mut report = Report::new("witness");
    report.param("kind", "element");
    report.param("a", a_text);
    report.param("b", b_text);
    report.param("cap", cap);
    match &outcome {
        WitnessOutcome::Found(PrimalityWitness::Element { k, product }) => {
            report.result = json!({
                "found": true,
                "kind": "element",
                "k": k,
                "product": product.to_string(),
                "product_records": polynomial_records(product.poly()),
            });
            report.line(format!("witness: k={k}, product {product}"));
            Ok((report, 0))
        }
        WitnessOutcome::Exhausted { k_cap, .. } => {
            report.result = json!({ "found": false, "k_cap": k_cap });
            report.line(format!(
                "exhausted at k <= {k_cap} — existence is guaranteed, suspect a bug"
            ));
            Ok((report, 1))
        }
        WitnessOutcome::Found(other) => Err(Error::Internal(format!(
            "element search returned an operator witness: {other:?}"
        ))),
    }
}

pub fn cmd_witness_operator(
    a_text: &str,
    b_text: &str,
    k_cap: u32,
    c_cap: u32,
) -> Result<(Report, i32)> {
    let a = parse_operator(a_text)?;
    let b = parse_operator(b_text)?;
    let outcome = witness_theorem2(&a, &b, k_cap, c_cap)?;
    let mut report = Report::new("witness");
    report.param("kind", "operator");
    report.param("a", a_text);
    report.param("b", b_text);
    report.param("k_cap", k_cap);
    report.param("c_cap", c_cap);
    match &outcome {
        WitnessOutcome::Found(PrimalityWitness::Operator { c, k, product }) => {
            report.result = json!({
                "found": true,
                "kind": "operator",
                "c": c.to_string(),
                "k": k,
                "product": product.to_string(),
                "product_records": operator_records(product),
            });
            report.line(format!("witness: c={c}, k={k}"));
            report.line(format!("product: {product}"));
            Ok((report, 0))
        }
        WitnessOutcome::Exhausted { k_cap, c_cap } => {
            report.result = json!({ "found": false, "k_cap": k_cap, "c_cap": c_cap });
            report.line("exhausted the search caps".to_string());
            Ok((report, 1))
        }
        WitnessOutcome::Found(other) => Err(Error::Internal(format!(
            "operator search returned an element witness: {other:?}"
        ))),
    }
}
