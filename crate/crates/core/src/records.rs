//! Structured (serializable) forms of the algebra values, used by report
//! emitters. Coefficients are decimal rational strings; exponent and vector
//! lists are ordered deterministically.

use serde::Serialize;

use crate::diffop::DiffOperator;
use crate::diffpoly::DiffPolynomial;
use crate::grassmann::GrassmannElement;
use crate::ideal::MembershipCertificate;

/// One polynomial term: `[[order, exponent], …]` with orders ascending.
#[derive(Debug, Clone, Serialize)]
pub struct PolyTermRecord {
    pub exponents: Vec<(u32, u32)>,
    pub coefficient: String,
}

/// Terms in descending monomial order (leading term first).
pub fn polynomial_records(f: &DiffPolynomial) -> Vec<PolyTermRecord> {
    f.terms_desc()
        .map(|(mono, coeff)| PolyTermRecord {
            exponents: mono.exponents().collect(),
            coefficient: coeff.to_string(),
        })
        .collect()
}

/// One Grassmann term: `[[kind, level, order], …]` in the canonical
/// generator order.
#[derive(Debug, Clone, Serialize)]
pub struct GrassmannTermRecord {
    pub vectors: Vec<(String, u32, u32)>,
    pub coefficient: String,
}

pub fn grassmann_records(u: &GrassmannElement) -> Vec<GrassmannTermRecord> {
    u.terms()
        .map(|(mono, coeff)| GrassmannTermRecord {
            vectors: mono
                .vectors()
                .iter()
                .map(|v| (v.kind.label().to_string(), v.level, v.order))
                .collect(),
            coefficient: coeff.to_string(),
        })
        .collect()
}

/// One certificate summand: `coefficient · cofactor · (xᵐ)^{(k)}`, with the
/// cofactor in the polynomial grammar.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateRecord {
    pub cofactor: String,
    pub k: u32,
    pub coefficient: String,
}

pub fn certificate_records(certificate: &MembershipCertificate) -> Vec<CertificateRecord> {
    certificate
        .terms()
        .iter()
        .map(|term| CertificateRecord {
            cofactor: term.cofactor.to_string(),
            k: term.k,
            coefficient: term.coefficient.to_string(),
        })
        .collect()
}

/// One operator coefficient: the ∂-order, the adjoined-scalar part and the
/// quotient part.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorTermRecord {
    pub order: u32,
    pub scalar: String,
    pub poly: Vec<PolyTermRecord>,
}

/// Coefficients in descending ∂-order (leading coefficient first).
pub fn operator_records(a: &DiffOperator) -> Vec<OperatorTermRecord> {
    let mut records: Vec<OperatorTermRecord> = a
        .coefficients()
        .map(|(order, coeff)| OperatorTermRecord {
            order,
            scalar: coeff.scalar().to_string(),
            poly: polynomial_records(coeff.poly().poly()),
        })
        .collect();
    records.reverse();
    records
}
