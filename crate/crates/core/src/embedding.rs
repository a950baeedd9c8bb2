//! The differential-algebra homomorphism φ_m from D_m = k₊{x}/[xᵐ] into the
//! even part of Λ(V_m), together with the witness machinery that makes its
//! injectivity machine-checkable: each α_m-monomial `M` is assigned a
//! Grassmann monomial `μ(M)` that appears in the image of `M` but in no image
//! of a smaller α_m-monomial, so the matrix of witness coefficients is
//! triangular with a nonzero diagonal.

use std::collections::{BTreeSet, HashMap};
use std::sync::{LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::diffpoly::{enumerate_alpha, DiffMonomial, DiffPolynomial};
use crate::error::{check_m, Error, Result};
use crate::grassmann::{BasisVector, GrassmannElement, GrassmannMonomial};
use crate::linalg::QMatrix;
use crate::rational::{binomial, Rational};

/// Generator images are reused heavily by power and rank sweeps; cache them
/// per `(m, i)`. The cache is idempotent: a key always maps to the same value.
static PHI_GEN_CACHE: LazyLock<Mutex<HashMap<(u32, u32), GrassmannElement>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The image of `x_i`: the `i`-th derivative of `Σ_k ξ_0^k ∧ η_0^k`, i.e.
/// `Σ_{l=0}^{m−2} Σ_{j=0}^{i} C(i,j) · ξ_j^l ∧ η_{i−j}^l`. Even, of Grassmann
/// degree 2 and weight `i`.
pub fn phi_generator(m: u32, i: u32) -> Result<GrassmannElement> {
    check_m(m)?;
    if let Some(g) = PHI_GEN_CACHE.lock().unwrap().get(&(m, i)) {
        return Ok(g.clone());
    }
    let mut terms = Vec::new();
    for level in 0..=(m - 2) {
        for j in 0..=i {
            terms.push((
                vec![BasisVector::xi(level, j), BasisVector::eta(level, i - j)],
                binomial(i, j),
            ));
        }
    }
    let g = GrassmannElement::from_terms(m, terms)?;
    PHI_GEN_CACHE
        .lock()
        .unwrap()
        .insert((m, i), g.clone());
    Ok(g)
}

/// The homomorphism φ_m applied to an element of k₊{x}: multiplicative,
/// linear, and commuting with the derivations. Inputs must have zero
/// constant term; reduction modulo the ideal is *not* required first.
pub fn phi(m: u32, f: &DiffPolynomial) -> Result<GrassmannElement> {
    check_m(m)?;
    if f.has_constant_term() {
        return Err(Error::InvalidInput(
            "the embedding is defined on zero-constant-term polynomials".into(),
        ));
    }
    let mut total = GrassmannElement::zero(m);
    for (mono, coeff) in f.terms() {
        let mut image: Option<GrassmannElement> = None;
        'factors: for (order, exp) in mono.exponents() {
            let generator = phi_generator(m, order)?;
            for _ in 0..exp {
                let next = match image.take() {
                    None => generator.clone(),
                    Some(partial) => {
                        if partial.is_zero() {
                            image = Some(partial);
                            break 'factors;
                        }
                        partial.wedge(&generator)?
                    }
                };
                image = Some(next);
            }
        }
        let image = image.ok_or_else(|| {
            Error::Internal("unit monomial survived the constant-term check".into())
        })?;
        total = total.add(&image.scale(coeff))?;
    }
    Ok(total)
}

/// The injectivity witness of an α_m-monomial `M = x_{k_n}⋯x_{k_0}` with
/// `k_0 ≤ … ≤ k_n`: position `j` (counted from the smallest order)
/// contributes `ξ_{k_j−q}^r ∧ η_q^r` where `q, r` are the quotient and
/// remainder of `j` by `m−1`. All contributed vectors are distinct.
pub fn mu_witness(m: u32, mono: &DiffMonomial) -> Result<GrassmannMonomial> {
    check_m(m)?;
    if mono.is_unit() {
        return Err(Error::EmptyInput("the unit monomial has no witness".into()));
    }
    if !mono.is_alpha(m)? {
        return Err(Error::InvalidInput(format!(
            "{mono} is not an α_{m}-monomial"
        )));
    }
    let orders = mono.orders_with_multiplicity();
    let mut vectors = Vec::with_capacity(2 * orders.len());
    for (j, &order) in orders.iter().enumerate() {
        let q = j as u32 / (m - 1);
        let r = j as u32 % (m - 1);
        if order < q {
            return Err(Error::Internal(format!(
                "witness underflow at position {j} of {mono}"
            )));
        }
        vectors.push(BasisVector::xi(r, order - q));
        vectors.push(BasisVector::eta(r, q));
    }
    match GrassmannMonomial::from_vectors(vectors) {
        Some((_, witness)) => Ok(witness),
        None => Err(Error::Internal(format!(
            "witness vectors of {mono} collided"
        ))),
    }
}

/// The stored coefficient of `mu` in `u`, zero if absent.
pub fn coefficient_of(u: &GrassmannElement, mu: &GrassmannMonomial) -> Rational {
    u.coefficient(mu)
}

/// The matrix of witness coefficients over one bigraded component.
#[derive(Debug, Clone)]
pub struct WitnessMatrix {
    /// α_m-monomials of the component, ascending in the monomial order.
    pub alphas: Vec<DiffMonomial>,
    /// `entries[row][col]` = coefficient of `μ(alphas[row])` in the image
    /// of `alphas[col]`.
    pub entries: Vec<Vec<Rational>>,
}

impl WitnessMatrix {
    /// The shape predicate the witness construction promises: entries below
    /// the diagonal vanish and the diagonal itself does not.
    pub fn is_triangular_with_nonzero_diagonal(&self) -> bool {
        self.entries.iter().enumerate().all(|(row, entries)| {
            entries
                .iter()
                .enumerate()
                .all(|(col, v)| match col.cmp(&row) {
                    std::cmp::Ordering::Less => v.is_zero(),
                    std::cmp::Ordering::Equal => !v.is_zero(),
                    std::cmp::Ordering::Greater => true,
                })
        })
    }
}

/// α_m-monomials of the `(d, w)` component, witnesses on rows and images on
/// columns, both sorted ascending. The unit monomial (which has no witness)
/// is excluded; it only occurs for `d = 0`.
pub fn witness_matrix(m: u32, d: u32, w: u32) -> Result<WitnessMatrix> {
    let mut alphas: Vec<DiffMonomial> = enumerate_alpha(m, d, w)?
        .into_iter()
        .filter(|mono| !mono.is_unit())
        .collect();
    alphas.reverse(); // enumerate_alpha lists descending
    let images: Vec<GrassmannElement> = alphas
        .iter()
        .map(|mono| phi(m, &DiffPolynomial::monomial(mono.clone(), Rational::one())))
        .collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(alphas.len());
    for row_mono in &alphas {
        let mu = mu_witness(m, row_mono)?;
        entries.push(images.iter().map(|img| img.coefficient(&mu)).collect());
    }
    Ok(WitnessMatrix { alphas, entries })
}

/// Rank of the α_m-basis of the `(d, w)` component under φ_m, in Grassmann
/// monomial coordinates, next to the basis count. Injectivity predicts the
/// two to be equal.
pub fn injectivity_rank(m: u32, d: u32, w: u32) -> Result<(usize, usize)> {
    let alphas: Vec<DiffMonomial> = enumerate_alpha(m, d, w)?
        .into_iter()
        .filter(|mono| !mono.is_unit())
        .collect();
    if alphas.is_empty() {
        return Ok((0, 0));
    }
    let images: Vec<GrassmannElement> = alphas
        .iter()
        .map(|mono| phi(m, &DiffPolynomial::monomial(mono.clone(), Rational::one())))
        .collect::<Result<_>>()?;
    let columns: BTreeSet<GrassmannMonomial> = images
        .iter()
        .flat_map(|img| img.terms().map(|(mono, _)| mono.clone()))
        .collect();
    let index: HashMap<&GrassmannMonomial, usize> =
        columns.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut matrix = QMatrix::zero(alphas.len(), columns.len());
    for (row, img) in images.iter().enumerate() {
        for (mono, coeff) in img.terms() {
            matrix.set(row, index[mono], coeff.clone());
        }
    }
    Ok((matrix.rank(), alphas.len()))
}

/// Minimal `q ≤ cap` with `φ_m(x_i)^q = 0`, or `None` when the cap is
/// exhausted. This is the Grassmann-side nilpotency oracle.
pub fn phi_power_nil_index(m: u32, i: u32, cap: u32) -> Result<Option<u32>> {
    let generator = phi_generator(m, i)?;
    let mut acc = generator.clone();
    for q in 2..=cap {
        acc = acc.wedge(&generator)?;
        if acc.is_zero() {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn mono(pairs: &[(u32, u32)]) -> DiffMonomial {
        DiffMonomial::from_exponents(pairs.iter().copied())
    }

    fn poly_mono(pairs: &[(u32, u32)]) -> DiffPolynomial {
        DiffPolynomial::monomial(mono(pairs), rat(1))
    }

    fn grass(m: u32, terms: &[(&[BasisVector], i64)]) -> GrassmannElement {
        GrassmannElement::from_terms(m, terms.iter().map(|(vs, c)| (vs.to_vec(), rat(*c))))
            .unwrap()
    }

    #[test]
    fn generator_images() {
        assert_eq!(
            phi_generator(2, 0).unwrap(),
            grass(2, &[(&[BasisVector::xi(0, 0), BasisVector::eta(0, 0)], 1)])
        );
        assert_eq!(
            phi_generator(2, 1).unwrap(),
            grass(
                2,
                &[
                    (&[BasisVector::xi(0, 1), BasisVector::eta(0, 0)], 1),
                    (&[BasisVector::xi(0, 0), BasisVector::eta(0, 1)], 1),
                ]
            )
        );
        assert_eq!(
            phi_generator(3, 0).unwrap(),
            grass(
                3,
                &[
                    (&[BasisVector::xi(0, 0), BasisVector::eta(0, 0)], 1),
                    (&[BasisVector::xi(1, 0), BasisVector::eta(1, 0)], 1),
                ]
            )
        );
        assert!(phi_generator(1, 0).is_err());
    }

    #[test]
    fn generator_image_is_iterated_derivative() {
        for m in [2, 3, 4] {
            let mut derived = phi_generator(m, 0).unwrap();
            for i in 1..=6 {
                derived = derived.derive();
                assert_eq!(derived, phi_generator(m, i).unwrap(), "m={m} i={i}");
            }
        }
    }

    #[test]
    fn phi_collapses_the_relation() {
        let x0_squared = poly_mono(&[(0, 2)]);
        assert!(phi(2, &x0_squared).unwrap().is_zero());

        // x_1² + x_0·x_2 = (x²)''/2 lies in the ideal; its images cancel
        let f = DiffPolynomial::from_terms([
            (mono(&[(1, 2)]), rat(1)),
            (mono(&[(0, 1), (2, 1)]), rat(1)),
        ]);
        assert!(phi(2, &f).unwrap().is_zero());
    }

    #[test]
    fn phi_of_basis_monomial() {
        let expected = grass(
            2,
            &[(
                &[
                    BasisVector::xi(0, 0),
                    BasisVector::eta(0, 0),
                    BasisVector::xi(0, 1),
                    BasisVector::eta(0, 1),
                ],
                2,
            )],
        );
        assert_eq!(phi(2, &poly_mono(&[(0, 1), (2, 1)])).unwrap(), expected);
    }

    #[test]
    fn phi_rejects_constant_terms() {
        let f = DiffPolynomial::constant(rat(1));
        assert!(matches!(phi(2, &f), Err(Error::InvalidInput(_))));
        assert!(phi(2, &DiffPolynomial::zero()).unwrap().is_zero());
    }

    #[test]
    fn witness_assignments() {
        assert_eq!(
            mu_witness(2, &mono(&[(0, 1), (2, 1)])).unwrap(),
            GrassmannMonomial::from_vectors(vec![
                BasisVector::xi(0, 0),
                BasisVector::eta(0, 0),
                BasisVector::xi(0, 1),
                BasisVector::eta(0, 1),
            ])
            .unwrap()
            .1
        );
        assert_eq!(
            mu_witness(2, &mono(&[(0, 1)])).unwrap(),
            GrassmannMonomial::from_vectors(vec![
                BasisVector::xi(0, 0),
                BasisVector::eta(0, 0),
            ])
            .unwrap()
            .1
        );
        // positions 0 and 1 of x_0² land in remainder classes 0 and 1 at m = 3
        assert_eq!(
            mu_witness(3, &mono(&[(0, 2)])).unwrap(),
            GrassmannMonomial::from_vectors(vec![
                BasisVector::xi(0, 0),
                BasisVector::eta(0, 0),
                BasisVector::xi(1, 0),
                BasisVector::eta(1, 0),
            ])
            .unwrap()
            .1
        );
        assert!(matches!(
            mu_witness(2, &mono(&[(1, 2)])),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            mu_witness(2, &DiffMonomial::unit()),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn witness_coefficients() {
        let mu = mu_witness(2, &mono(&[(0, 1), (2, 1)])).unwrap();
        let image = phi(2, &poly_mono(&[(0, 1), (2, 1)])).unwrap();
        assert_eq!(coefficient_of(&image, &mu), rat(2));
        assert_eq!(coefficient_of(&GrassmannElement::zero(2), &mu), rat(0));
        let image_sq = phi(2, &poly_mono(&[(1, 2)])).unwrap();
        assert_eq!(coefficient_of(&image_sq, &mu), rat(-2));
    }

    #[test]
    fn witness_matrices_are_triangular() {
        let w = witness_matrix(2, 1, 3).unwrap();
        assert_eq!(w.alphas, vec![mono(&[(3, 1)])]);
        assert_eq!(w.entries, vec![vec![rat(-1)]]);
        assert!(w.is_triangular_with_nonzero_diagonal());

        let w = witness_matrix(2, 2, 2).unwrap();
        assert_eq!(w.entries, vec![vec![rat(2)]]);

        let w = witness_matrix(2, 2, 4).unwrap();
        assert_eq!(w.alphas, vec![mono(&[(0, 1), (4, 1)]), mono(&[(1, 1), (3, 1)])]);
        assert_eq!(w.entries, vec![vec![rat(-4), rat(1)], vec![rat(0), rat(3)]]);
        assert!(w.is_triangular_with_nonzero_diagonal());
    }

    #[test]
    fn injectivity_ranks() {
        assert_eq!(injectivity_rank(2, 2, 2).unwrap(), (1, 1));
        assert_eq!(injectivity_rank(2, 0, 0).unwrap(), (0, 0));
        let (rank, count) = injectivity_rank(3, 3, 3).unwrap();
        assert_eq!(rank, count);
        assert_eq!(rank, 2);
    }

    #[test]
    fn grassmann_nil_oracle_matches_minimal_powers() {
        assert_eq!(phi_power_nil_index(2, 0, 10).unwrap(), Some(2));
        assert_eq!(phi_power_nil_index(2, 1, 10).unwrap(), Some(3));
        assert_eq!(phi_power_nil_index(3, 1, 10).unwrap(), Some(5));
        assert_eq!(phi_power_nil_index(2, 1, 2).unwrap(), None);
    }
}
