//! Differential operators over the quotient at m = 2.
//!
//! Coefficients live in the quotient with an externally adjoined unity: a
//! rational scalar plus a normal form. Operators are finite sums
//! `Σ a_n ∂^n` multiplied with the commutation rule `∂·c = c·∂ + c'`,
//! extended to `∂^n·c = Σ_j C(n,j)·c^{(j)}·∂^{n−j}`; every coefficient is
//! reduced to normal form after each arithmetic step. The module also
//! computes nilpotency indices with their a-priori bound and produces the
//! nonvanishing products that witness primality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diffpoly::DiffPolynomial;
use crate::error::{Error, Result};
use crate::ideal::{normal_form, NormalForm};
use crate::rational::{binomial, Rational};

/// The ambient quotient exponent of this module.
pub const OPERATOR_M: u32 = 2;

/// An element `scalar·1 + poly` of the coefficient algebra: the quotient
/// with an adjoined unity. Zero exactly when both parts are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorCoefficient {
    scalar: Rational,
    poly: NormalForm,
}

impl OperatorCoefficient {
    pub fn new(scalar: Rational, poly: NormalForm) -> Result<Self> {
        if poly.m() != OPERATOR_M {
            return Err(Error::InvalidParameter(format!(
                "operator coefficients live over m = {OPERATOR_M}, got a normal form at m = {}",
                poly.m()
            )));
        }
        Ok(Self { scalar, poly })
    }

    pub fn from_scalar(scalar: Rational) -> Self {
        Self { scalar, poly: NormalForm::zero(OPERATOR_M) }
    }

    /// Reduces an arbitrary zero-constant-term polynomial into the quotient.
    pub fn from_poly(poly: &DiffPolynomial) -> Result<Self> {
        Ok(Self {
            scalar: Rational::zero(),
            poly: normal_form(poly, OPERATOR_M)?,
        })
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn poly(&self) -> &NormalForm {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.poly.is_zero()
    }

    pub fn has_scalar_part(&self) -> bool {
        !self.scalar.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        Self {
            scalar: &self.scalar + &other.scalar,
            poly: NormalForm::new_unchecked(
                OPERATOR_M,
                self.poly.poly() + other.poly.poly(),
            ),
        }
    }

    fn scale(&self, c: &Rational) -> Self {
        Self {
            scalar: &self.scalar * c,
            poly: NormalForm::new_unchecked(OPERATOR_M, self.poly.poly().scale(c)),
        }
    }

    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Product in the coefficient algebra, reduced to normal form.
    fn mul(&self, other: &Self) -> Result<Self> {
        let cross = &(&other.poly.poly().scale(&self.scalar)
            + &self.poly.poly().scale(&other.scalar));
        let product = normal_form(&(self.poly.poly() * other.poly.poly()), OPERATOR_M)?;
        Ok(Self {
            scalar: &self.scalar * &other.scalar,
            poly: NormalForm::new_unchecked(OPERATOR_M, cross + product.poly()),
        })
    }

    /// Derivative in the coefficient algebra; the adjoined unity is a
    /// constant, so only the quotient part contributes.
    fn derive(&self) -> Result<Self> {
        Ok(Self {
            scalar: Rational::zero(),
            poly: normal_form(&self.poly.poly().derive(), OPERATOR_M)?,
        })
    }

    /// Maximal weight of the quotient part's support.
    fn weight(&self) -> u32 {
        self.poly.poly().max_weight().unwrap_or(0)
    }
}

impl fmt::Display for OperatorCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.scalar.is_zero() {
            write!(f, "{}", self.scalar)?;
            first = false;
        }
        if !self.poly.is_zero() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.poly)?;
        }
        Ok(())
    }
}

/// A differential operator `Σ a_n ∂^n` with finitely many nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffOperator {
    coeffs: BTreeMap<u32, OperatorCoefficient>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The multiplicative unit: scalar 1 at ∂-order 0.
    pub fn one() -> Self {
        Self::term(0, OperatorCoefficient::from_scalar(Rational::one()))
    }

    /// The bare operator ∂.
    pub fn partial() -> Self {
        Self::term(1, OperatorCoefficient::from_scalar(Rational::one()))
    }

    pub fn term(order: u32, coefficient: OperatorCoefficient) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coefficient.is_zero() {
            coeffs.insert(order, coefficient);
        }
        Self { coeffs }
    }

    /// An order-0 operator from a polynomial, reduced into the quotient.
    pub fn from_poly(poly: &DiffPolynomial) -> Result<Self> {
        Ok(Self::term(0, OperatorCoefficient::from_poly(poly)?))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, OperatorCoefficient)>,
    {
        let mut out = Self::zero();
        for (order, coeff) in terms {
            out.add_coefficient(order, coeff);
        }
        out
    }

    fn add_coefficient(&mut self, order: u32, coeff: OperatorCoefficient) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(order) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients by ∂-order, ascending.
    pub fn coefficients(&self) -> impl Iterator<Item = (u32, &OperatorCoefficient)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    /// The ∂-degree; `None` for the zero operator.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The coefficient at the maximal ∂-order.
    pub fn leading_coefficient(&self) -> Result<&OperatorCoefficient> {
        self.coeffs
            .values()
            .next_back()
            .ok_or_else(|| Error::EmptyInput("leading coefficient of the zero operator".into()))
    }

    /// True when every coefficient has zero scalar part, i.e. the operator
    /// lies in the quotient's operator ring rather than its unital closure.
    pub fn is_scalar_free(&self) -> bool {
        self.coeffs.values().all(|c| !c.has_scalar_part())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&order, coeff) in &other.coeffs {
            out.add_coefficient(order, coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&order, coeff) in &other.coeffs {
            out.add_coefficient(order, coeff.neg());
        }
        out
    }

    /// Operator product via `∂^n·c = Σ_j C(n,j)·c^{(j)}·∂^{n−j}`; associative
    /// and unital, all coefficients reduced after every combination. The
    /// right factor's coefficients are differentiated up to the left
    /// ∂-degree, so prefer the lower-degree operand on the left.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let max_order = self.degree().unwrap_or(0) as usize;
        let mut out = Self::zero();
        for (&j, b) in &other.coeffs {
            // derivative chain b, b', b'', … reused across the left orders
            let mut chain = vec![b.clone()];
            while chain.len() <= max_order && !chain.last().unwrap().is_zero() {
                chain.push(chain.last().unwrap().derive()?);
            }
            for (&i, a) in &self.coeffs {
                for (t, derived) in chain.iter().enumerate().take(i as usize + 1) {
                    if derived.is_zero() {
                        break;
                    }
                    let contribution = a.mul(derived)?.scale(&binomial(i, t as u32));
                    out.add_coefficient(i + j - t as u32, contribution);
                }
            }
        }
        Ok(out)
    }

    /// The `n`-fold product, `n ≥ 1`. The accumulated (high-degree) factor
    /// stays on the right.
    pub fn pow(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("operator power requires n >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            if acc.is_zero() {
                return Ok(acc);
            }
            acc = self.mul(&acc)?;
        }
        Ok(acc)
    }

    /// Maximum coefficient weight (quotient parts only).
    pub fn max_coefficient_weight(&self) -> Option<u32> {
        self.coeffs.values().map(|c| c.weight()).max()
    }
}

/// `a·b − b·a`.
pub fn commutator(a: &DiffOperator, b: &DiffOperator) -> Result<DiffOperator> {
    Ok(a.mul(b)?.sub(&b.mul(a)?))
}

fn check_nilpotency_input(a: &DiffOperator) -> Result<()> {
    if a.is_zero() {
        return Err(Error::InvalidInput("the zero operator has no nil index".into()));
    }
    if !a.is_scalar_free() {
        return Err(Error::InvalidInput(
            "nilpotency requires all scalar parts zero: scalars are units, never nilpotent".into(),
        ));
    }
    Ok(())
}

/// An `N` with `a^N = 0`, valid for any scalar-free `a`: one more than
/// `w_a + n_a`, where `w_a` is the maximal coefficient weight and `n_a` the
/// ∂-degree, plus one. Coefficient weights of `a^N` grow at most linearly,
/// `N·(w_a + n_a)`, while every monomial of a degree-`d` coefficient needs
/// weight at least `d(d−1)` to survive in the quotient and `d ≥ N`; the
/// quadratic floor overtakes the linear growth at `N = w_a + n_a + 2`.
pub fn nil_bound(a: &DiffOperator) -> Result<u32> {
    check_nilpotency_input(a)?;
    let weight = a.max_coefficient_weight().unwrap_or(0);
    let degree = a.degree().unwrap_or(0);
    Ok(weight + degree + 2)
}

/// Minimal `N` with `a^N = 0`, by repeated reduced multiplication. Exceeding
/// [`nil_bound`] is impossible; it is reported as an internal invariant
/// violation.
pub fn nil_index_operator(a: &DiffOperator) -> Result<u32> {
    let bound = nil_bound(a)?;
    let mut power = a.clone();
    for n in 2..=bound {
        power = a.mul(&power)?;
        if power.is_zero() {
            return Ok(n);
        }
    }
    Err(Error::Internal(format!(
        "operator power did not vanish within its bound {bound}"
    )))
}

/// A verified nonvanishing product certifying that two ideals multiply
/// nontrivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimalityWitness {
    /// `b^{(k)}·a ≠ 0` in the quotient.
    Element { k: u32, product: NormalForm },
    /// `[(c∂)^k, a]·b ≠ 0` in the operator ring.
    Operator {
        c: DiffPolynomial,
        k: u32,
        product: DiffOperator,
    },
}

/// Result of a witness search: the witness, or the exhausted caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(PrimalityWitness),
    Exhausted { k_cap: u32, c_cap: Option<u32> },
}

impl WitnessOutcome {
    pub fn found(&self) -> Option<&PrimalityWitness> {
        match self {
            WitnessOutcome::Found(w) => Some(w),
            WitnessOutcome::Exhausted { .. } => None,
        }
    }
}

/// Minimal `k ≤ cap` with `b^{(k)}·a ≠ 0` modulo the ideal. Existence is
/// guaranteed for nonzero `a`, `b`, so exhaustion is a suspected-bug
/// diagnostic rather than a mathematical result.
pub fn witness_corollary(
    a: &DiffPolynomial,
    b: &DiffPolynomial,
    cap: u32,
) -> Result<WitnessOutcome> {
    let a_nf = normal_form(a, OPERATOR_M)?;
    let b_nf = normal_form(b, OPERATOR_M)?;
    if a_nf.is_zero() || b_nf.is_zero() {
        return Err(Error::InvalidInput(
            "witness search requires both elements nonzero modulo the ideal".into(),
        ));
    }
    let mut derived = b_nf.into_poly();
    for k in 0..=cap {
        let product = normal_form(&(&derived * a_nf.poly()), OPERATOR_M)?;
        if !product.is_zero() {
            return Ok(WitnessOutcome::Found(PrimalityWitness::Element {
                k,
                product,
            }));
        }
        derived = normal_form(&derived.derive(), OPERATOR_M)?.into_poly();
    }
    Ok(WitnessOutcome::Exhausted { k_cap: cap, c_cap: None })
}

/// Searches for `(c, k)` with `[(c∂)^k, a]·b ≠ 0`, where `c` ranges over the
/// single derivatives `x_j`, `j ≤ c_cap`, and `k` starts from the minimal
/// order that makes the derived leading coefficients multiply nontrivially.
/// `k = 0` is skipped: the commutator with the identity vanishes.
pub fn witness_theorem2(
    a: &DiffOperator,
    b: &DiffOperator,
    k_cap: u32,
    c_cap: u32,
) -> Result<WitnessOutcome> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput(
            "witness search requires both operators nonzero".into(),
        ));
    }
    if !a.is_scalar_free() || !b.is_scalar_free() {
        return Err(Error::InvalidInput(
            "witness search is stated for operators with scalar-free coefficients".into(),
        ));
    }
    let a_lead = a.leading_coefficient()?.poly().poly().clone();
    let b_lead = b.leading_coefficient()?.poly().poly().clone();
    // minimal k with (a_lead)^{(k)}·b_lead ≠ 0
    let start = match witness_corollary(&b_lead, &a_lead, k_cap)? {
        WitnessOutcome::Found(PrimalityWitness::Element { k, .. }) => k.max(1),
        _ => {
            return Ok(WitnessOutcome::Exhausted { k_cap, c_cap: Some(c_cap) });
        }
    };
    for k in start..=k_cap {
        for j in 0..=c_cap {
            let c = DiffPolynomial::variable(j);
            let c_partial = DiffOperator::term(1, OperatorCoefficient::from_poly(&c)?);
            let product = commutator(&c_partial.pow(k)?, a)?.mul(b)?;
            if !product.is_zero() {
                return Ok(WitnessOutcome::Found(PrimalityWitness::Operator {
                    c,
                    k,
                    product,
                }));
            }
        }
    }
    Ok(WitnessOutcome::Exhausted { k_cap, c_cap: Some(c_cap) })
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // flatten into (magnitude text, negative) terms, highest order first
        let mut parts: Vec<(String, bool)> = Vec::new();
        for (&order, coeff) in self.coeffs.iter().rev() {
            let suffix = match order {
                0 => String::new(),
                1 => "*D".to_string(),
                n => format!("*D^{n}"),
            };
            if !coeff.scalar.is_zero() {
                let negative = coeff.scalar < Rational::zero();
                let magnitude = if negative { -coeff.scalar.clone() } else { coeff.scalar.clone() };
                if order == 0 {
                    parts.push((format!("{magnitude}"), negative));
                } else {
                    parts.push((format!("{magnitude}{suffix}"), negative));
                }
            }
            for (mono, c) in coeff.poly.poly().terms_desc() {
                let negative = c < &Rational::zero();
                let magnitude = if negative { -c } else { c.clone() };
                parts.push((format!("{magnitude}*{mono}{suffix}"), negative));
            }
        }
        for (idx, (text, negative)) in parts.iter().enumerate() {
            if idx == 0 {
                if *negative {
                    write!(f, "-")?;
                }
            } else if *negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{text}")?;
        }
        Ok(())
    }
}
