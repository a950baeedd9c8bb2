//! Text grammar for polynomials and operators.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 'x' nat ('^' nat)?          # xk is the k-th derivative of x
//!         | 'D' ('^' nat)?              # operators only
//! coeff  := nat | nat '/' nat
//! ```
//!
//! Whitespace is insignificant between tokens. Polynomial parsing keeps the
//! written combination exactly; operator parsing multiplies the factors of a
//! term in written order in the operator ring, so coefficients end up
//! reduced into the quotient.

use num_bigint::BigInt;
use num_traits::One;

use crate::diffop::{DiffOperator, OperatorCoefficient};
use crate::diffpoly::{DiffMonomial, DiffPolynomial};
use crate::error::{Error, Result};
use crate::rational::Rational;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn digits(&mut self, what: &str) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            if self.bytes.get(self.pos) == Some(&b'-') {
                return Err(self.error(format!("negative {what}")));
            }
            return Err(self.error(format!("expected {what}")));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn nat_u32(&mut self, what: &str) -> Result<u32> {
        let digits = self.digits(what)?;
        digits
            .parse::<u32>()
            .map_err(|_| self.error(format!("{what} out of range: {digits}")))
    }

    fn nat_bigint(&mut self, what: &str) -> Result<BigInt> {
        let digits = self.digits(what)?;
        digits
            .parse::<BigInt>()
            .map_err(|_| self.error(format!("malformed rational: {digits}")))
    }
}

enum Factor {
    Variable { order: u32, exp: u32 },
    Partial { exp: u32 },
}

struct Term {
    coefficient: Rational,
    factors: Vec<Factor>,
}

fn parse_coefficient(cur: &mut Cursor) -> Result<Rational> {
    let numerator = cur.nat_bigint("coefficient")?;
    if cur.peek() == Some(b'/') {
        cur.bump();
        let pos = cur.pos;
        let denominator = cur.nat_bigint("denominator")?;
        if denominator == BigInt::from(0) {
            return Err(Error::Parse { pos, msg: "malformed rational: zero denominator".into() });
        }
        Ok(Rational::new(numerator, denominator))
    } else {
        Ok(Rational::from_integer(numerator))
    }
}

fn parse_exponent(cur: &mut Cursor) -> Result<u32> {
    if cur.peek() == Some(b'^') {
        cur.bump();
        cur.nat_u32("exponent")
    } else {
        Ok(1)
    }
}

fn parse_factor(cur: &mut Cursor, allow_partial: bool) -> Result<Factor> {
    match cur.peek() {
        Some(b'x') => {
            cur.bump();
            let order = cur.nat_u32("derivative order")?;
            let exp = parse_exponent(cur)?;
            Ok(Factor::Variable { order, exp })
        }
        Some(b'D') if allow_partial => {
            cur.bump();
            let exp = parse_exponent(cur)?;
            Ok(Factor::Partial { exp })
        }
        Some(b'D') => Err(cur.error("operator factor 'D' is not allowed in a polynomial")),
        _ => Err(cur.error("expected a factor")),
    }
}

fn parse_term(cur: &mut Cursor, allow_partial: bool) -> Result<Term> {
    let mut term = match cur.peek() {
        Some(c) if c.is_ascii_digit() => Term {
            coefficient: parse_coefficient(cur)?,
            factors: Vec::new(),
        },
        Some(_) => Term {
            coefficient: Rational::one(),
            factors: vec![parse_factor(cur, allow_partial)?],
        },
        None => return Err(cur.error("expected a term")),
    };
    while cur.peek() == Some(b'*') {
        cur.bump();
        term.factors.push(parse_factor(cur, allow_partial)?);
    }
    Ok(term)
}

fn parse_terms(text: &str, allow_partial: bool) -> Result<Vec<Term>> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(cur.error("empty input"));
    }
    let mut terms = Vec::new();
    let mut negate = if cur.peek() == Some(b'-') {
        cur.bump();
        true
    } else {
        false
    };
    loop {
        let mut term = parse_term(&mut cur, allow_partial)?;
        if negate {
            term.coefficient = -term.coefficient;
        }
        terms.push(term);
        match cur.peek() {
            None => return Ok(terms),
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(c) => return Err(cur.error(format!("expected '+' or '-', found '{}'", c as char))),
        }
        cur.bump();
    }
}

/// Parses the polynomial grammar.
pub fn parse_polynomial(text: &str) -> Result<DiffPolynomial> {
    let mut out = DiffPolynomial::zero();
    for term in parse_terms(text, false)? {
        let mono = DiffMonomial::from_exponents(term.factors.iter().map(|f| match f {
            Factor::Variable { order, exp } => (*order, *exp),
            Factor::Partial { .. } => unreachable!("rejected by the factor parser"),
        }));
        out = &out + &DiffPolynomial::monomial(mono, term.coefficient);
    }
    Ok(out)
}

/// Parses the operator grammar. The factors of each term multiply in
/// written order in the operator ring, so e.g. `x0*D` and `D*x0` differ.
pub fn parse_operator(text: &str) -> Result<DiffOperator> {
    let mut out = DiffOperator::zero();
    for term in parse_terms(text, true)? {
        let mut acc = DiffOperator::term(0, OperatorCoefficient::from_scalar(term.coefficient));
        for factor in &term.factors {
            let factor_op = match factor {
                Factor::Variable { exp: 0, .. } | Factor::Partial { exp: 0 } => {
                    DiffOperator::one()
                }
                Factor::Variable { order, exp } => DiffOperator::from_poly(
                    &DiffPolynomial::monomial(
                        DiffMonomial::variable_pow(*order, *exp),
                        Rational::one(),
                    ),
                )?,
                Factor::Partial { exp } => DiffOperator::partial().pow(*exp)?,
            };
            acc = acc.mul(&factor_op)?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

impl std::str::FromStr for DiffPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

impl std::str::FromStr for DiffOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_operator(s)
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
    fn polynomial_grammar() {
        let f = parse_polynomial("2*x0*x1 - 1/2*x3^2").unwrap();
        let expected = DiffPolynomial::from_terms([
            (mono(&[(0, 1), (1, 1)]), rat(2)),
            (mono(&[(3, 2)]), ratio(-1, 2)),
        ]);
        assert_eq!(f, expected);

        assert_eq!(
            parse_polynomial("x0^2").unwrap(),
            DiffPolynomial::monomial(mono(&[(0, 2)]), rat(1))
        );
        assert_eq!(
            parse_polynomial(" - x1 + x1 + 3 ").unwrap(),
            DiffPolynomial::constant(rat(3))
        );
        assert_eq!(parse_polynomial("0").unwrap(), DiffPolynomial::zero());
    }

    #[test]
    fn polynomial_errors() {
        assert!(matches!(
            parse_polynomial("x-1"),
            Err(Error::Parse { pos: 1, .. })
        ));
        match parse_polynomial("x0^-1") {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("negative")),
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial("1/0*x2") {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("zero denominator")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("2*3").is_err());
        assert!(parse_polynomial("x0*D").is_err());
        assert!(parse_polynomial("x0 +").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for text in ["2*x0*x1 - 1/2*x3^2", "x0^2", "-x1", "5/3*x2^3 + x0"] {
            let f = parse_polynomial(text).unwrap();
            assert_eq!(parse_polynomial(&f.to_string()).unwrap(), f, "{text}");
        }
    }

    #[test]
    fn operator_grammar() {
        let a = parse_operator("x0*D^2 + x1*D + 1").unwrap();
        assert_eq!(a.degree(), Some(2));
        assert_eq!(parse_operator(&a.to_string()).unwrap(), a);

        // factors multiply in written order: D*x0 = x0*D + x1
        let left = parse_operator("D*x0").unwrap();
        let right = parse_operator("x0*D + x1").unwrap();
        assert_eq!(left, right);

        // coefficients reduce into the quotient: x0^2 vanishes
        assert!(parse_operator("x0^2*D").unwrap().is_zero());

        assert_eq!(parse_operator("D^0").unwrap(), DiffOperator::one());
    }
}
