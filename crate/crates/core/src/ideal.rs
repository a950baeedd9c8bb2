//! Exact oracles for the differential ideal [xᵐ] in k₊{x}: membership with
//! re-expandable certificates, the canonical normal form onto the α_m-basis,
//! an independent normal form through the Grassmann embedding, bigraded
//! dimension counts, and nilpotency indices of elements of the quotient.
//!
//! The ideal and the derivation are bihomogeneous, so every question splits
//! along (degree, weight) components. Within one component the normal form
//! is computed by triangular elimination over the spanning products
//! `M·(xᵐ)^{(k)}`: the leading monomial of `(xᵐ)^{(k)}` is the balanced
//! monomial `x_q^{m−r}·x_{q+1}^r` (k = qm + r), every monomial violating the
//! α_m-condition is divisible by one of these, and each elimination step
//! cancels the largest non-α monomial while introducing only smaller ones,
//! so the sweep terminates with the unique α_m-combination of the coset and
//! a certificate that re-expands to the eliminated part.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::diffpoly::{enumerate_alpha, enumerate_monomials, DiffMonomial, DiffPolynomial};
use crate::embedding::phi;
use crate::error::{check_m, Error, Result};
use crate::limits;
use crate::linalg::{QMatrix, Solve};
use crate::rational::Rational;

/// A polynomial supported only on α_m-monomials: the canonical
/// representative of its coset modulo [xᵐ].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    m: u32,
    poly: DiffPolynomial,
}

impl NormalForm {
    pub(crate) fn new_unchecked(m: u32, poly: DiffPolynomial) -> Self {
        debug_assert!(poly.terms().all(|(mono, _)| mono.alpha_unchecked(m)));
        Self { m, poly }
    }

    pub fn zero(m: u32) -> Self {
        Self { m, poly: DiffPolynomial::zero() }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> &DiffPolynomial {
        &self.poly
    }

    pub fn into_poly(self) -> DiffPolynomial {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// One summand of a membership certificate: `coefficient · cofactor ·
/// (xᵐ)^{(k)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    pub cofactor: DiffMonomial,
    pub k: u32,
    pub coefficient: Rational,
}

/// An explicit decomposition over the ideal generators. Re-expanding it
/// reproduces the decomposed polynomial exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    m: u32,
    terms: Vec<CertificateTerm>,
}

impl MembershipCertificate {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> &[CertificateTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Σ coefficient · cofactor · (xᵐ)^{(k)}, exactly.
    pub fn expand(&self) -> Result<DiffPolynomial> {
        let mut out = DiffPolynomial::zero();
        for term in &self.terms {
            let generator = generator_derivative(self.m, term.k)?;
            let scaled = DiffPolynomial::monomial(term.cofactor.clone(), term.coefficient.clone());
            out = &out + &(&scaled * &generator);
        }
        Ok(out)
    }
}

/// Cache of (xᵐ)^{(k)} chains, keyed by m. Idempotent under concurrent use.
static GENERATOR_CACHE: LazyLock<Mutex<HashMap<u32, Vec<DiffPolynomial>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The `k`-th derivative of `x_0^m`: homogeneous of degree `m`, weight `k`.
pub fn generator_derivative(m: u32, k: u32) -> Result<DiffPolynomial> {
    check_m(m)?;
    let mut cache = GENERATOR_CACHE.lock().unwrap();
    let chain = cache.entry(m).or_insert_with(|| {
        vec![DiffPolynomial::monomial(
            DiffMonomial::variable_pow(0, m),
            Rational::one(),
        )]
    });
    while chain.len() <= k as usize {
        let next = chain.last().unwrap().derive();
        chain.push(next);
    }
    Ok(chain[k as usize].clone())
}

/// The leading monomial of `(xᵐ)^{(k)}`: `x_q^{m−r}·x_{q+1}^r` where
/// `k = q·m + r`.
fn generator_leading_monomial(m: u32, k: u32) -> DiffMonomial {
    let (q, r) = (k / m, k % m);
    DiffMonomial::from_exponents([(q, m - r), (q + 1, r)])
}

/// All products `M·(xᵐ)^{(k)}` with `deg M = d−m`, `w(M) = w−k`,
/// `0 ≤ k ≤ w`; empty when `d < m`. This spans the `(d, w)` component of
/// the ideal.
pub fn ideal_spanning_set(m: u32, d: u32, w: u32) -> Result<Vec<DiffPolynomial>> {
    check_m(m)?;
    if d < m {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for k in 0..=w {
        let generator = generator_derivative(m, k)?;
        for cofactor in enumerate_monomials(d - m, w - k) {
            let scaled = DiffPolynomial::monomial(cofactor, Rational::one());
            out.push(&scaled * &generator);
        }
    }
    Ok(out)
}

fn check_constant_free(f: &DiffPolynomial) -> Result<()> {
    if f.has_constant_term() {
        return Err(Error::InvalidInput(
            "nonzero constant term: not an element of the zero-constant-term algebra".into(),
        ));
    }
    Ok(())
}

/// Splits `f` into its normal form and a certificate for the eliminated
/// part: `f = certificate.expand() + normal_form`, exactly.
pub fn reduce(f: &DiffPolynomial, m: u32) -> Result<(NormalForm, MembershipCertificate)> {
    check_m(m)?;
    check_constant_free(f)?;
    let cap = limits::max_terms();
    let mut work = f.clone();
    let mut certificate = Vec::new();
    loop {
        // the largest monomial violating the α_m-condition
        let target = work
            .terms_desc()
            .find(|(mono, _)| !mono.alpha_unchecked(m))
            .map(|(mono, coeff)| (mono.clone(), coeff.clone()));
        let Some((mono, coeff)) = target else {
            return Ok((
                NormalForm::new_unchecked(m, work),
                MembershipCertificate { m, terms: certificate },
            ));
        };
        // first violating derivative order and the matching generator derivative
        let (order, exp) = mono
            .exponents()
            .find(|&(o, e)| e + mono.exponent(o + 1) >= m)
            .ok_or_else(|| Error::Internal(format!("{mono} has no violating position")))?;
        let k = order * m + (m - exp.min(m));
        let divisor = generator_leading_monomial(m, k);
        let cofactor = mono.try_divide(&divisor).ok_or_else(|| {
            Error::Internal(format!("{divisor} does not divide {mono} at k = {k}"))
        })?;
        let generator = generator_derivative(m, k)?;
        let scale = coeff / generator.coefficient(&divisor);
        let scaled = DiffPolynomial::monomial(cofactor.clone(), scale.clone());
        work = &work - &(&scaled * &generator);
        limits::check_terms(work.support_size(), cap);
        certificate.push(CertificateTerm { cofactor, k, coefficient: scale });
    }
}

/// The unique α_m-combination congruent to `f` modulo [xᵐ]. Idempotent;
/// zero exactly when `f` is a member.
pub fn normal_form(f: &DiffPolynomial, m: u32) -> Result<NormalForm> {
    Ok(reduce(f, m)?.0)
}

/// Decides `f ∈ [xᵐ]`; on membership returns the certificate that
/// re-expands to `f`.
pub fn membership(f: &DiffPolynomial, m: u32) -> Result<Option<MembershipCertificate>> {
    let (nf, certificate) = reduce(f, m)?;
    Ok(if nf.is_zero() { Some(certificate) } else { None })
}

/// Normal form computed through the Grassmann embedding instead of the
/// spanning-set elimination: solves `Σ c_α · φ_m(α) = φ_m(f)` per bigraded
/// component. Injectivity of the embedding makes the solution unique and
/// equal to [`normal_form`]; any other outcome of the linear solve is an
/// internal invariant violation.
pub fn normal_form_via_embedding(f: &DiffPolynomial, m: u32) -> Result<NormalForm> {
    check_m(m)?;
    check_constant_free(f)?;
    let mut out = DiffPolynomial::zero();
    for ((d, w), slice) in f.slices() {
        let alphas: Vec<DiffMonomial> = {
            let mut list = enumerate_alpha(m, d, w)?;
            list.reverse(); // ascending
            list
        };
        let image = phi(m, &slice)?;
        if alphas.is_empty() {
            if !image.is_zero() {
                return Err(Error::Internal(format!(
                    "component ({d}, {w}) has no basis monomials but a nonzero image"
                )));
            }
            continue;
        }
        let basis_images = alphas
            .iter()
            .map(|mono| phi(m, &DiffPolynomial::monomial(mono.clone(), Rational::one())))
            .collect::<Result<Vec<_>>>()?;
        let mut coordinates = std::collections::BTreeMap::new();
        for img in basis_images.iter().chain([&image]) {
            for (mono, _) in img.terms() {
                let next = coordinates.len();
                coordinates.entry(mono.clone()).or_insert(next);
            }
        }
        let mut matrix = QMatrix::zero(coordinates.len(), alphas.len());
        for (col, img) in basis_images.iter().enumerate() {
            for (mono, coeff) in img.terms() {
                matrix.set(coordinates[mono], col, coeff.clone());
            }
        }
        let mut rhs = vec![Rational::zero(); coordinates.len()];
        for (mono, coeff) in image.terms() {
            rhs[coordinates[mono]] = coeff.clone();
        }
        match matrix.solve(&rhs) {
            Solve::Solvable { solution, unique: true } => {
                for (mono, coeff) in alphas.into_iter().zip(solution) {
                    out.add_term(mono, coeff);
                }
            }
            Solve::Solvable { unique: false, .. } => {
                return Err(Error::Internal(format!(
                    "embedded basis of component ({d}, {w}) is linearly dependent"
                )));
            }
            Solve::Inconsistent => {
                return Err(Error::Internal(format!(
                    "image of component ({d}, {w}) escapes the embedded basis span"
                )));
            }
        }
    }
    Ok(NormalForm::new_unchecked(m, out))
}

/// Dimension of the `(d, w)` component of the quotient: the number of
/// monomials minus the rank of the ideal's spanning set there.
pub fn component_dimension(m: u32, d: u32, w: u32) -> Result<usize> {
    check_m(m)?;
    let monomials = enumerate_monomials(d, w);
    let spanning = ideal_spanning_set(m, d, w)?;
    if spanning.is_empty() {
        return Ok(monomials.len());
    }
    let index: HashMap<&DiffMonomial, usize> =
        monomials.iter().enumerate().map(|(i, mono)| (mono, i)).collect();
    let mut matrix = QMatrix::zero(spanning.len(), monomials.len());
    for (row, poly) in spanning.iter().enumerate() {
        for (mono, coeff) in poly.terms() {
            matrix.set(row, index[mono], coeff.clone());
        }
    }
    Ok(monomials.len() - matrix.rank())
}

/// Dimension of the kernel of the derivation map from the `(d, w)` component
/// of the quotient to the `(d, w+1)` component, in α_m-coordinates.
pub fn derivation_kernel_dimension(m: u32, d: u32, w: u32) -> Result<usize> {
    check_m(m)?;
    if d == 0 {
        return Err(Error::InvalidParameter(
            "the derivation kernel is measured on components of degree >= 1".into(),
        ));
    }
    let sources = enumerate_alpha(m, d, w)?;
    if sources.is_empty() {
        return Ok(0);
    }
    let targets = enumerate_alpha(m, d, w + 1)?;
    let index: HashMap<&DiffMonomial, usize> =
        targets.iter().enumerate().map(|(i, mono)| (mono, i)).collect();
    let mut matrix = QMatrix::zero(targets.len(), sources.len());
    for (col, source) in sources.iter().enumerate() {
        let derived = DiffPolynomial::monomial(source.clone(), Rational::one()).derive();
        let nf = normal_form(&derived, m)?;
        for (mono, coeff) in nf.poly().terms() {
            let row = *index.get(mono).ok_or_else(|| {
                Error::Internal(format!("normal form left the target component: {mono}"))
            })?;
            matrix.set(row, col, coeff.clone());
        }
    }
    Ok(sources.len() - matrix.rank())
}

/// Minimal `N ≤ cap` with `f^N ∈ [xᵐ]`, computed with powers reduced after
/// every multiplication. `None` when the cap is exhausted. `f` must be
/// nonzero modulo the ideal.
pub fn nil_index_element(f: &DiffPolynomial, m: u32, cap: u32) -> Result<Option<u32>> {
    let base = normal_form(f, m)?;
    if base.is_zero() {
        return Err(Error::InvalidInput(
            "the element is zero modulo the ideal; its nil index is undefined".into(),
        ));
    }
    let mut power = base.poly().clone();
    for n in 2..=cap {
        power = normal_form(&(&power * base.poly()), m)?.into_poly();
        if power.is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn mono(pairs: &[(u32, u32)]) -> DiffMonomial {
        DiffMonomial::from_exponents(pairs.iter().copied())
    }

    fn poly(terms: &[(&[(u32, u32)], i64)]) -> DiffPolynomial {
        DiffPolynomial::from_terms(
            terms
                .iter()
                .map(|(pairs, c)| (mono(pairs), rat(*c))),
        )
    }

    #[test]
    fn generator_derivatives() {
        assert_eq!(generator_derivative(2, 0).unwrap(), poly(&[(&[(0, 2)], 1)]));
        assert_eq!(
            generator_derivative(2, 1).unwrap(),
            poly(&[(&[(0, 1), (1, 1)], 2)])
        );
        assert_eq!(
            generator_derivative(2, 3).unwrap(),
            poly(&[(&[(1, 1), (2, 1)], 6), (&[(0, 1), (3, 1)], 2)])
        );
        let g = generator_derivative(3, 7).unwrap();
        assert!(g.terms().all(|(mono, _)| mono.degree() == 3 && mono.weight() == 7));
    }

    #[test]
    fn spanning_sets() {
        assert_eq!(
            ideal_spanning_set(2, 2, 2).unwrap(),
            vec![poly(&[(&[(1, 2)], 2), (&[(0, 1), (2, 1)], 2)])]
        );
        assert!(ideal_spanning_set(2, 1, 5).unwrap().is_empty());
        assert_eq!(
            ideal_spanning_set(2, 3, 1).unwrap(),
            vec![
                poly(&[(&[(0, 2), (1, 1)], 1)]),
                poly(&[(&[(0, 2), (1, 1)], 2)]),
            ]
        );
    }

    #[test]
    fn membership_with_certificate() {
        let f = poly(&[(&[(0, 1), (1, 1)], 1)]);
        let cert = membership(&f, 2).unwrap().expect("x_0·x_1 is half of (x²)'");
        assert_eq!(cert.terms().len(), 1);
        assert_eq!(cert.terms()[0].cofactor, DiffMonomial::unit());
        assert_eq!(cert.terms()[0].k, 1);
        assert_eq!(cert.terms()[0].coefficient, ratio(1, 2));
        assert_eq!(cert.expand().unwrap(), f);

        assert!(membership(&poly(&[(&[(0, 1), (2, 1)], 1)]), 2).unwrap().is_none());

        let cube = poly(&[(&[(1, 3)], 1)]);
        let cert = membership(&cube, 2).unwrap().expect("x_1³ is a member");
        assert_eq!(cert.expand().unwrap(), cube);
    }

    #[test]
    fn membership_of_zero_is_trivial() {
        let cert = membership(&DiffPolynomial::zero(), 2).unwrap().unwrap();
        assert!(cert.is_empty());
        assert!(matches!(
            membership(&DiffPolynomial::constant(rat(1)), 2),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(
            normal_form(&poly(&[(&[(1, 2)], 1)]), 2).unwrap().poly(),
            &poly(&[(&[(0, 1), (2, 1)], -1)])
        );
        let alpha = poly(&[(&[(0, 1), (2, 1)], 1)]);
        assert_eq!(normal_form(&alpha, 2).unwrap().poly(), &alpha);
        assert!(normal_form(&poly(&[(&[(0, 2)], 1)]), 2).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_exact_and_idempotent() {
        let f = poly(&[(&[(1, 2)], 3), (&[(0, 1), (3, 1)], -2), (&[(0, 3)], 1)]);
        let (nf, cert) = reduce(&f, 2).unwrap();
        assert_eq!(&(&cert.expand().unwrap() + nf.poly()), &f);
        let again = normal_form(nf.poly(), 2).unwrap();
        assert_eq!(&again, &nf);
    }

    #[test]
    fn embedding_normal_form_agrees() {
        let cases = [
            poly(&[(&[(1, 2)], 1)]),
            poly(&[(&[(0, 1), (1, 1)], 1)]),
            poly(&[(&[(1, 2)], 3), (&[(0, 1), (3, 1)], -2), (&[(0, 3)], 1)]),
            poly(&[(&[(2, 2)], 1), (&[(1, 1), (3, 1)], 5)]),
        ];
        for f in &cases {
            for m in [2, 3] {
                assert_eq!(
                    normal_form_via_embedding(f, m).unwrap(),
                    normal_form(f, m).unwrap(),
                    "f = {f}, m = {m}"
                );
            }
        }
        assert_eq!(
            normal_form_via_embedding(&poly(&[(&[(1, 2)], 1)]), 2)
                .unwrap()
                .poly(),
            &poly(&[(&[(0, 1), (2, 1)], -1)])
        );
        assert!(normal_form_via_embedding(&poly(&[(&[(0, 1), (1, 1)], 1)]), 2)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn component_dimensions() {
        assert_eq!(component_dimension(2, 2, 2).unwrap(), 1);
        assert_eq!(component_dimension(2, 1, 7).unwrap(), 1);
        assert_eq!(component_dimension(3, 2, 2).unwrap(), 2);
    }

    #[test]
    fn derivation_kernels_vanish() {
        assert_eq!(derivation_kernel_dimension(2, 1, 3).unwrap(), 0);
        assert_eq!(derivation_kernel_dimension(2, 2, 2).unwrap(), 0);
        assert_eq!(derivation_kernel_dimension(3, 2, 1).unwrap(), 0);
        assert!(derivation_kernel_dimension(2, 0, 0).is_err());
    }

    #[test]
    fn nil_indices_of_generators() {
        let x1 = DiffPolynomial::variable(1);
        assert_eq!(nil_index_element(&x1, 2, 10).unwrap(), Some(3));
        let x2 = DiffPolynomial::variable(2);
        assert_eq!(nil_index_element(&x2, 3, 10).unwrap(), Some(7));
        let x0 = DiffPolynomial::variable(0);
        assert_eq!(nil_index_element(&x0, 4, 10).unwrap(), Some(4));
        // exhaustion below the true index
        assert_eq!(nil_index_element(&x1, 2, 2).unwrap(), None);
        // zero modulo the ideal is rejected
        let sq = poly(&[(&[(0, 2)], 1)]);
        assert!(matches!(
            nil_index_element(&sq, 2, 5),
            Err(Error::InvalidInput(_))
        ));
    }
}
