//! The Grassmann algebra Λ(V_m) with derivation.
//!
//! `V_m` has basis vectors `ξ_i^k` and `η_i^k` where the level `k` ranges
//! over `0 ..= m−2` and the derivative order `i` is unbounded. The algebra
//! carries no unit element: the empty monomial is not admitted. The
//! derivation increments the order of one factor at a time — plain Leibniz,
//! no Koszul sign.
//!
//! Monomials are stored as strictly ascending vector lists under the key
//! `(level, order, ξ before η)`; the sign of any reordering is normalized
//! into the coefficient at construction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{check_m, Error, Result};
use crate::limits;
use crate::rational::Rational;

/// Which of the two generator families a basis vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    Xi,
    Eta,
}

impl GeneratorKind {
    pub fn label(self) -> &'static str {
        match self {
            GeneratorKind::Xi => "xi",
            GeneratorKind::Eta => "eta",
        }
    }
}

/// A basis vector `ξ_order^level` or `η_order^level`. The derived ordering
/// `(level, order, kind)` is the canonical generator order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisVector {
    pub level: u32,
    pub order: u32,
    pub kind: GeneratorKind,
}

impl BasisVector {
    pub fn xi(level: u32, order: u32) -> Self {
        Self { level, order, kind: GeneratorKind::Xi }
    }

    pub fn eta(level: u32, order: u32) -> Self {
        Self { level, order, kind: GeneratorKind::Eta }
    }

    fn derived(self) -> Self {
        Self { order: self.order + 1, ..self }
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.kind.label(), self.level, self.order)
    }
}

/// A product of distinct basis vectors, strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GrassmannMonomial {
    vectors: Vec<BasisVector>,
}

impl GrassmannMonomial {
    /// Canonicalizes an arbitrary factor list. Returns the permutation sign
    /// together with the sorted monomial, or `None` when a vector repeats
    /// (the product is zero).
    pub fn from_vectors(mut vectors: Vec<BasisVector>) -> Option<(i8, Self)> {
        let mut negative = false;
        for i in 1..vectors.len() {
            let mut j = i;
            while j > 0 && vectors[j - 1] > vectors[j] {
                vectors.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if vectors.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((if negative { -1 } else { 1 }, Self { vectors }))
    }

    pub fn vectors(&self) -> &[BasisVector] {
        &self.vectors
    }

    /// Grassmann degree: the number of factors.
    pub fn degree(&self) -> usize {
        self.vectors.len()
    }

    /// Sum of the orders of the factors.
    pub fn weight(&self) -> u32 {
        self.vectors.iter().map(|v| v.order).sum()
    }

    /// Merges two ascending factor lists, counting crossing inversions.
    /// `None` when a factor repeats.
    fn wedge(&self, other: &Self) -> Option<(i8, Self)> {
        let a = &self.vectors;
        let b = &other.vectors;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    inversions += a.len() - i;
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Self { vectors: out }))
    }
}

impl fmt::Display for GrassmannMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.vectors {
            if !first {
                write!(f, "∧")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A sparse rational combination of [`GrassmannMonomial`]s inside Λ(V_m).
/// The ambient `m` travels with the element; operations on elements of
/// different ambient algebras are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannElement {
    m: u32,
    terms: BTreeMap<GrassmannMonomial, Rational>,
}

impl GrassmannElement {
    pub fn zero(m: u32) -> Self {
        Self { m, terms: BTreeMap::new() }
    }

    /// Builds `coeff · (v_1 ∧ … ∧ v_d)` from an arbitrary factor order.
    /// Validates levels against the ambient `m` and rejects the empty
    /// product: the algebra has no unit.
    pub fn monomial(m: u32, vectors: Vec<BasisVector>, coeff: Rational) -> Result<Self> {
        check_m(m)?;
        if vectors.is_empty() {
            return Err(Error::EmptyInput(
                "the Grassmann algebra has no unit element; empty products are not admitted".into(),
            ));
        }
        for v in &vectors {
            if v.level > m - 2 {
                return Err(Error::InvalidParameter(format!(
                    "generator level {} out of range for m = {m}",
                    v.level
                )));
            }
        }
        let mut out = Self::zero(m);
        if let Some((sign, mono)) = GrassmannMonomial::from_vectors(vectors) {
            out.add_term(mono, coeff * Rational::from_integer(sign.into()));
        }
        Ok(out)
    }

    pub fn from_terms<I>(m: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<BasisVector>, Rational)>,
    {
        check_m(m)?;
        let mut out = Self::zero(m);
        for (vectors, coeff) in terms {
            let one = Self::monomial(m, vectors, coeff)?;
            out = out.add(&one)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, mono: GrassmannMonomial, coeff: Rational) {
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

    pub fn ambient_m(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GrassmannMonomial, &Rational)> {
        self.terms.iter()
    }

    /// The stored coefficient of `mono`, zero if absent.
    pub fn coefficient(&self, mono: &GrassmannMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::InvalidParameter(format!(
                "mixed ambient algebras: m = {} vs m = {}",
                self.m, other.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(mono.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(mono.clone(), -coeff);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        Self {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// The exterior product. Bilinear; on monomials, zero when a vector
    /// repeats, otherwise the merged ascending monomial with the sign of the
    /// merge permutation.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let cap = limits::max_terms();
        let mut out = Self::zero(self.m);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, mono)) = ma.wedge(mb) {
                    out.add_term(mono, ca * cb * Rational::from_integer(sign.into()));
                    limits::check_terms(out.terms.len(), cap);
                }
            }
        }
        Ok(out)
    }

    /// The derivation: linear, and on a monomial the sum over positions of
    /// the monomial with that factor's order incremented, re-canonicalized.
    pub fn derive(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, coeff) in &self.terms {
            for pos in 0..mono.vectors.len() {
                let mut vectors = mono.vectors.clone();
                vectors[pos] = vectors[pos].derived();
                if let Some((sign, bumped)) = GrassmannMonomial::from_vectors(vectors) {
                    out.add_term(bumped, coeff * Rational::from_integer(sign.into()));
                }
            }
        }
        out
    }

    /// The `n`-fold wedge power, `n ≥ 1`. Vanishing partial products are
    /// pruned immediately.
    pub fn power(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "power requires n >= 1 (the algebra has no unit)".into(),
            ));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            if acc.is_zero() {
                return Ok(acc);
            }
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// True when every supported monomial has even degree; zero is even.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|mono| mono.degree() % 2 == 0)
    }
}

/// A weight every nonzero degree-`big_degree` monomial of Λ(V_2) reaches:
/// `d(d−1)` with `d = ⌊big_degree/2⌋`. Stated only for `m = 2`; other `m`
/// are rejected rather than guessed.
pub fn weight_lower_bound(big_degree: u32, m: u32) -> Result<u32> {
    check_m(m)?;
    if m != 2 {
        return Err(Error::Unsupported(format!(
            "the weight floor formula is only established for m = 2, got m = {m}"
        )));
    }
    let d = big_degree / 2;
    Ok(d * (d.saturating_sub(1)))
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (mono, coeff)) in self.terms.iter().enumerate() {
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
            write!(f, "{magnitude}*{mono}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn elem(m: u32, terms: &[(&[BasisVector], i64)]) -> GrassmannElement {
        GrassmannElement::from_terms(
            m,
            terms.iter().map(|(vs, c)| (vs.to_vec(), rat(*c))),
        )
        .unwrap()
    }

    #[test]
    fn wedge_square_of_pair_vanishes() {
        let u = elem(2, &[(&[BasisVector::xi(0, 0), BasisVector::eta(0, 0)], 1)]);
        assert!(u.wedge(&u).unwrap().is_zero());
    }

    #[test]
    fn wedge_sign_normalization() {
        let xi = elem(2, &[(&[BasisVector::xi(0, 0)], 1)]);
        let eta = elem(2, &[(&[BasisVector::eta(0, 0)], 1)]);
        let pair = elem(2, &[(&[BasisVector::xi(0, 0), BasisVector::eta(0, 0)], 1)]);
        assert_eq!(xi.wedge(&eta).unwrap(), pair);
        assert_eq!(eta.wedge(&xi).unwrap(), pair.scale(&rat(-1)));
    }

    #[test]
    fn derivation_of_generator_pair() {
        let pair = elem(2, &[(&[BasisVector::xi(0, 0), BasisVector::eta(0, 0)], 1)]);
        let expected = elem(
            2,
            &[
                (&[BasisVector::xi(0, 1), BasisVector::eta(0, 0)], 1),
                (&[BasisVector::xi(0, 0), BasisVector::eta(0, 1)], 1),
            ],
        );
        assert_eq!(pair.derive(), expected);

        let second = elem(
            2,
            &[
                (&[BasisVector::xi(0, 2), BasisVector::eta(0, 0)], 1),
                (&[BasisVector::xi(0, 1), BasisVector::eta(0, 1)], 2),
                (&[BasisVector::xi(0, 0), BasisVector::eta(0, 2)], 1),
            ],
        );
        assert_eq!(pair.derive().derive(), second);
    }

    #[test]
    fn generator_derivative_rule() {
        let xi = elem(2, &[(&[BasisVector::xi(0, 0)], 1)]);
        assert_eq!(xi.derive(), elem(2, &[(&[BasisVector::xi(0, 1)], 1)]));
    }

    #[test]
    fn powers() {
        let pair = elem(2, &[(&[BasisVector::xi(0, 0), BasisVector::eta(0, 0)], 1)]);
        assert!(pair.power(2).unwrap().is_zero());

        let u = elem(
            2,
            &[
                (&[BasisVector::xi(0, 1), BasisVector::eta(0, 0)], 1),
                (&[BasisVector::xi(0, 0), BasisVector::eta(0, 1)], 1),
            ],
        );
        let expected = elem(
            2,
            &[(
                &[
                    BasisVector::xi(0, 0),
                    BasisVector::eta(0, 0),
                    BasisVector::xi(0, 1),
                    BasisVector::eta(0, 1),
                ],
                -2,
            )],
        );
        assert_eq!(u.power(2).unwrap(), expected);
        assert!(u.power(3).unwrap().is_zero());
        assert!(u.power(0).is_err());
    }

    #[test]
    fn evenness() {
        let pair = elem(2, &[(&[BasisVector::xi(0, 0), BasisVector::eta(0, 0)], 1)]);
        assert!(pair.is_even());
        let single = elem(2, &[(&[BasisVector::xi(0, 0)], 1)]);
        assert!(!single.is_even());
        assert!(GrassmannElement::zero(2).is_even());
    }

    #[test]
    fn weight_floor_values() {
        assert_eq!(weight_lower_bound(4, 2).unwrap(), 2);
        assert_eq!(weight_lower_bound(2, 2).unwrap(), 0);
        assert_eq!(weight_lower_bound(6, 2).unwrap(), 6);
        assert!(matches!(weight_lower_bound(4, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ambient_checks() {
        let a = elem(2, &[(&[BasisVector::xi(0, 0)], 1)]);
        let b = elem(3, &[(&[BasisVector::xi(1, 0)], 1)]);
        assert!(matches!(a.wedge(&b), Err(Error::InvalidParameter(_))));
        // level 1 requires m >= 3
        assert!(GrassmannElement::monomial(2, vec![BasisVector::xi(1, 0)], rat(1)).is_err());
        // empty product rejected: no unit element
        assert!(GrassmannElement::monomial(2, vec![], rat(1)).is_err());
    }
}
