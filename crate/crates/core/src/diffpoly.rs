//! The differential polynomial ring `k{x}` in one indeterminate.
//!
//! Elements are sparse rational combinations of monomials in the derivatives
//! `x_0, x_1, x_2, …` of `x`, with the derivation `x_n' = x_{n+1}` extended
//! by the Leibniz law. The module also provides the bigrading by (degree,
//! weight), the `α_m` predicate, monomial enumeration per bigraded component,
//! and the monomial order used by the normal-form machinery: of two distinct
//! monomials, the one with the *smaller* exponent at the first differing
//! derivative order is the larger.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_m, Error, Result};
use crate::limits;
use crate::rational::Rational;

/// A monomial `x_0^{p_0} x_1^{p_1} ⋯`, stored as a sparse map from
/// derivative order to positive exponent. The empty map is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffMonomial {
    exps: BTreeMap<u32, u32>,
}

impl DiffMonomial {
    /// The unit monomial `1`.
    pub fn unit() -> Self {
        Self::default()
    }

    /// The single variable `x_order`.
    pub fn variable(order: u32) -> Self {
        Self::variable_pow(order, 1)
    }

    /// The power `x_order^exp`.
    pub fn variable_pow(order: u32, exp: u32) -> Self {
        let mut exps = BTreeMap::new();
        if exp > 0 {
            exps.insert(order, exp);
        }
        Self { exps }
    }

    /// Builds a monomial from `(order, exponent)` pairs; exponents of the
    /// same order accumulate and zero exponents are dropped.
    pub fn from_exponents<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut exps = BTreeMap::new();
        for (order, exp) in pairs {
            if exp > 0 {
                *exps.entry(order).or_insert(0) += exp;
            }
        }
        Self { exps }
    }

    /// Exponent of `x_order` (0 if absent).
    pub fn exponent(&self, order: u32) -> u32 {
        self.exps.get(&order).copied().unwrap_or(0)
    }

    /// The `(order, exponent)` pairs, orders ascending.
    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps.iter().map(|(&o, &e)| (o, e))
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree `Σ p_i`.
    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    /// Weight `Σ i·p_i`; the derivation raises it by exactly 1.
    pub fn weight(&self) -> u32 {
        self.exps.iter().map(|(&o, &e)| o * e).sum()
    }

    /// Product of two monomials (exponent vectors add).
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (&o, &e) in &other.exps {
            *exps.entry(o).or_insert(0) += e;
        }
        Self { exps }
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn try_divide(&self, divisor: &Self) -> Option<Self> {
        let mut exps = self.exps.clone();
        for (&o, &e) in &divisor.exps {
            match exps.get_mut(&o) {
                Some(have) if *have >= e => {
                    *have -= e;
                    if *have == 0 {
                        exps.remove(&o);
                    }
                }
                _ => return None,
            }
        }
        Some(Self { exps })
    }

    /// Whether `p_i + p_{i+1} < m` holds for every derivative order `i`.
    /// The unit monomial is vacuously `α_m`.
    pub fn is_alpha(&self, m: u32) -> Result<bool> {
        check_m(m)?;
        Ok(self.alpha_unchecked(m))
    }

    pub(crate) fn alpha_unchecked(&self, m: u32) -> bool {
        self.exps
            .iter()
            .all(|(&o, &e)| e + self.exponent(o + 1) < m)
    }

    /// Derivative orders repeated with multiplicity, ascending
    /// (`x_0·x_2 → [0, 2]`, `x_1² → [1, 1]`).
    pub fn orders_with_multiplicity(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (&o, &e) in &self.exps {
            out.extend(std::iter::repeat(o).take(e as usize));
        }
        out
    }
}

/// The monomial order: at the first derivative order where the exponent
/// vectors differ, the monomial with the smaller exponent is the larger.
/// Monomials of unequal degree are compared by the same rule after implicit
/// zero padding; the unit monomial is the maximum.
impl Ord for DiffMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                // self has a positive exponent where other has 0
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(&oa, &ea)), Some(&(&ob, &eb))) => {
                    if oa < ob {
                        return Ordering::Less;
                    }
                    if ob < oa {
                        return Ordering::Greater;
                    }
                    if ea != eb {
                        return if ea < eb { Ordering::Greater } else { Ordering::Less };
                    }
                    a.next();
                    b.next();
                }
            }
        }
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Free-function form of the monomial order. `Greater` means `p` is larger.
pub fn compare_order(p: &DiffMonomial, q: &DiffMonomial) -> Ordering {
    p.cmp(q)
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&o, &e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{o}")?;
            } else {
                write!(f, "x{o}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Partitions of `n` into at most `k` positive parts, parts descending
/// within each partition.
fn partitions_at_most(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, k: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        if k == 0 {
            return;
        }
        let mut p = n.min(max_part);
        while p >= 1 {
            acc.push(p);
            go(n - p, k - 1, p, acc, out);
            acc.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, k, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// All monomials of degree exactly `d` and weight exactly `w`, i.e. the
/// partitions of `w` into at most `d` parts realized as exponent vectors
/// (missing factors are `x_0`s). Listed in descending monomial order.
pub fn enumerate_monomials(d: u32, w: u32) -> Vec<DiffMonomial> {
    let mut out: Vec<DiffMonomial> = partitions_at_most(w, d)
        .into_iter()
        .map(|parts| {
            let zeros = d - parts.len() as u32;
            DiffMonomial::from_exponents(
                parts.into_iter().map(|o| (o, 1)).chain([(0u32, zeros)]),
            )
        })
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// The `α_m` sublist of [`enumerate_monomials`], same order.
pub fn enumerate_alpha(m: u32, d: u32, w: u32) -> Result<Vec<DiffMonomial>> {
    check_m(m)?;
    Ok(enumerate_monomials(d, w)
        .into_iter()
        .filter(|mono| mono.alpha_unchecked(m))
        .collect())
}

/// A sparse rational combination of [`DiffMonomial`]s. No zero coefficient
/// is ever stored. A nonzero coefficient on the unit monomial is a constant
/// term; most quotient-algebra operations require it to be absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPolynomial {
    terms: BTreeMap<DiffMonomial, Rational>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single-term polynomial `coeff · mono`.
    pub fn monomial(mono: DiffMonomial, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Self { terms }
    }

    /// The variable `x_order` with coefficient 1.
    pub fn variable(order: u32) -> Self {
        Self::monomial(DiffMonomial::variable(order), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(DiffMonomial::unit(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (DiffMonomial, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (mono, coeff) in terms {
            out.add_term(mono, coeff);
        }
        out
    }

    pub(crate) fn add_term(&mut self, mono: DiffMonomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Number of stored terms.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `mono`, zero if absent.
    pub fn coefficient(&self, mono: &DiffMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&DiffMonomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&DiffMonomial::unit())
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&DiffMonomial::unit())
    }

    /// The maximum monomial of the support under the monomial order.
    pub fn leading_monomial(&self) -> Result<&DiffMonomial> {
        self.terms
            .keys()
            .next_back()
            .ok_or_else(|| Error::EmptyInput("leading monomial of the zero polynomial".into()))
    }

    /// Maximum weight over supported monomials.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    /// Maximum degree over supported monomials.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// The derivation: `x_n ↦ x_{n+1}` extended by linearity and Leibniz.
    /// Each output term keeps the degree of its source and gains weight 1.
    pub fn derive(&self) -> Self {
        let mut out = Self::zero();
        for (mono, coeff) in &self.terms {
            for (order, exp) in mono.exponents() {
                let mut bumped: Vec<(u32, u32)> = mono.exponents().collect();
                for pair in bumped.iter_mut() {
                    if pair.0 == order {
                        pair.1 -= 1;
                    }
                }
                bumped.push((order + 1, 1));
                out.add_term(
                    DiffMonomial::from_exponents(bumped),
                    coeff * Rational::from_integer(exp.into()),
                );
            }
        }
        out
    }

    /// The `k`-th derivative.
    pub fn nth_derivative(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.derive();
        }
        out
    }

    /// Splits into bigraded components, keyed by `(degree, weight)`.
    pub fn slices(&self) -> BTreeMap<(u32, u32), DiffPolynomial> {
        let mut out: BTreeMap<(u32, u32), DiffPolynomial> = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            out.entry((mono.degree(), mono.weight()))
                .or_default()
                .add_term(mono.clone(), coeff.clone());
        }
        out
    }
}

impl Add for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: Self) -> DiffPolynomial {
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.add_term(mono.clone(), coeff.clone());
        }
        out
    }
}

impl Sub for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: Self) -> DiffPolynomial {
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.add_term(mono.clone(), -coeff);
        }
        out
    }
}

impl Neg for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn neg(self) -> DiffPolynomial {
        DiffPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn mul(self, rhs: Self) -> DiffPolynomial {
        let cap = limits::max_terms();
        let mut out = DiffPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
                limits::check_terms(out.terms.len(), cap);
            }
        }
        out
    }
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (mono, coeff)) in self.terms_desc().enumerate() {
            let negative = coeff < &Rational::zero();
            let magnitude = if negative { -coeff } else { coeff.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_unit() {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn mono(pairs: &[(u32, u32)]) -> DiffMonomial {
        DiffMonomial::from_exponents(pairs.iter().copied())
    }

    #[test]
    fn derive_zero() {
        assert_eq!(DiffPolynomial::zero().derive(), DiffPolynomial::zero());
    }

    #[test]
    fn derive_leibniz_on_two_factors() {
        // (x_0·x_1)' = x_1² + x_0·x_2
        let f = DiffPolynomial::monomial(mono(&[(0, 1), (1, 1)]), rat(1));
        let expected = DiffPolynomial::from_terms([
            (mono(&[(1, 2)]), rat(1)),
            (mono(&[(0, 1), (2, 1)]), rat(1)),
        ]);
        assert_eq!(f.derive(), expected);
    }

    #[test]
    fn derive_square() {
        // (x_0²)' = 2·x_0·x_1
        let f = DiffPolynomial::monomial(mono(&[(0, 2)]), rat(1));
        let expected = DiffPolynomial::monomial(mono(&[(0, 1), (1, 1)]), rat(2));
        assert_eq!(f.derive(), expected);
    }

    #[test]
    fn multiply_basic() {
        let x0 = DiffPolynomial::variable(0);
        assert_eq!(
            &x0 * &x0,
            DiffPolynomial::monomial(mono(&[(0, 2)]), rat(1))
        );

        let x1 = DiffPolynomial::variable(1);
        let sum = &x0 + &x1;
        let diff = &x0 - &x1;
        let expected = DiffPolynomial::from_terms([
            (mono(&[(0, 2)]), rat(1)),
            (mono(&[(1, 2)]), rat(-1)),
        ]);
        assert_eq!(&sum * &diff, expected);

        let a = DiffPolynomial::monomial(mono(&[(1, 1)]), rat(2));
        let b = DiffPolynomial::monomial(mono(&[(0, 1), (2, 1)]), rat(3));
        assert_eq!(
            &a * &b,
            DiffPolynomial::monomial(mono(&[(0, 1), (1, 1), (2, 1)]), rat(6))
        );
    }

    #[test]
    fn alpha_predicate() {
        assert!(mono(&[(0, 1), (2, 1)]).is_alpha(2).unwrap());
        assert!(!mono(&[(1, 2)]).is_alpha(2).unwrap());
        assert!(DiffMonomial::unit().is_alpha(2).unwrap());
        assert!(mono(&[(1, 2)]).is_alpha(3).unwrap());
        assert!(matches!(
            mono(&[(0, 1)]).is_alpha(1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn enumeration() {
        assert_eq!(
            enumerate_monomials(2, 2),
            vec![mono(&[(1, 2)]), mono(&[(0, 1), (2, 1)])]
        );
        assert_eq!(enumerate_monomials(1, 5), vec![mono(&[(5, 1)])]);
        assert_eq!(enumerate_monomials(0, 0), vec![DiffMonomial::unit()]);
        assert!(enumerate_monomials(0, 3).is_empty());
    }

    #[test]
    fn enumeration_alpha() {
        assert_eq!(
            enumerate_alpha(2, 2, 2).unwrap(),
            vec![mono(&[(0, 1), (2, 1)])]
        );
        assert_eq!(
            enumerate_alpha(2, 2, 3).unwrap(),
            vec![mono(&[(0, 1), (3, 1)])]
        );
        assert_eq!(
            enumerate_alpha(3, 2, 2).unwrap(),
            vec![mono(&[(1, 2)]), mono(&[(0, 1), (2, 1)])]
        );
        assert!(enumerate_alpha(1, 2, 2).is_err());
    }

    #[test]
    fn order_rule() {
        // x_1² is larger than x_0·x_2 (first differing order 0, exponent 0 < 1)
        let p = mono(&[(0, 1), (2, 1)]);
        let q = mono(&[(1, 2)]);
        assert_eq!(compare_order(&p, &q), Ordering::Less);
        assert_eq!(compare_order(&q, &p), Ordering::Greater);

        let r = mono(&[(0, 1), (3, 1)]);
        assert_eq!(compare_order(&r, &r), Ordering::Equal);

        // x_0² vs x_0·x_1: first differing order 0, exponents 2 > 1
        assert_eq!(
            compare_order(&mono(&[(0, 2)]), &mono(&[(0, 1), (1, 1)])),
            Ordering::Less
        );

        // the unit monomial is the maximum
        assert_eq!(
            compare_order(&DiffMonomial::unit(), &mono(&[(0, 1)])),
            Ordering::Greater
        );
    }

    #[test]
    fn leading_monomials() {
        let f = DiffPolynomial::from_terms([
            (mono(&[(0, 1), (2, 1)]), rat(1)),
            (mono(&[(1, 2)]), rat(1)),
        ]);
        assert_eq!(f.leading_monomial().unwrap(), &mono(&[(1, 2)]));

        let g = DiffPolynomial::monomial(mono(&[(3, 1)]), rat(5));
        assert_eq!(g.leading_monomial().unwrap(), &mono(&[(3, 1)]));

        let h = DiffPolynomial::from_terms([
            (mono(&[(0, 1), (3, 1)]), rat(1)),
            (mono(&[(1, 1), (2, 1)]), rat(1)),
        ]);
        assert_eq!(h.leading_monomial().unwrap(), &mono(&[(1, 1), (2, 1)]));

        assert!(matches!(
            DiffPolynomial::zero().leading_monomial(),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn display_format() {
        let f = DiffPolynomial::from_terms([
            (mono(&[(0, 1), (1, 1)]), rat(2)),
            (mono(&[(3, 2)]), ratio(-1, 2)),
        ]);
        // x_3² is larger than x_0·x_1, so it prints first
        assert_eq!(f.to_string(), "-1/2*x3^2 + 2*x0*x1");
        assert_eq!(DiffPolynomial::zero().to_string(), "0");
    }
}
