//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in a fixed number of variables `x1..xn` and stores
//! only nonzero terms, keyed by [`Monomial`] in graded-lex order. Exponents are
//! machine integers with checked arithmetic; coefficients are arbitrary
//! precision rationals kept in lowest terms.
//!
//! The canonical text form lists terms from the largest monomial down, e.g.
//! `3*x1^2*x3 - 1/2*x2`, and [`Polynomial::parse`] reads the same grammar back.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational coefficient (always in lowest terms, positive denominator).
pub type Coefficient = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("composition expects {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("variable index {index} out of range for dimension {dimension}")]
    VariableOutOfRange { index: usize, dimension: usize },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Total degree of a polynomial. The zero polynomial has degree
/// [`Degree::NegInfinity`], which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector `x1^a1 * ... * xn^an`.
///
/// Field order matters: the derived `Ord` compares total degree first and
/// then exponents lexicographically, which is graded-lex with `x1 > x2 > ...`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exponents: Box<[u32]>,
}

impl Monomial {
    pub fn one(dimension: usize) -> Self {
        Monomial {
            degree: 0,
            exponents: vec![0; dimension].into_boxed_slice(),
        }
    }

    pub fn new(exponents: Vec<u32>) -> Result<Self, PolyError> {
        let degree = exponents
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .ok_or(PolyError::ExponentOverflow)?;
        Ok(Monomial {
            degree,
            exponents: exponents.into_boxed_slice(),
        })
    }

    pub fn variable(dimension: usize, index: usize) -> Self {
        let mut exponents = vec![0; dimension];
        exponents[index] = 1;
        Monomial {
            degree: 1,
            exponents: exponents.into_boxed_slice(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents[index]
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.dimension(), other.dimension());
        let degree = self.degree.checked_add(other.degree)?;
        let exponents = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial {
            degree,
            exponents: exponents.into_boxed_slice(),
        })
    }
}

/// Sparse polynomial in `dimension` variables with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dimension: usize,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(dimension: usize) -> Self {
        assert!(dimension > 0, "polynomial dimension must be positive");
        Polynomial {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dimension: usize, value: Coefficient) -> Self {
        let mut p = Polynomial::zero(dimension);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(dimension), value);
        }
        p
    }

    pub fn one(dimension: usize) -> Self {
        Polynomial::constant(dimension, Coefficient::one())
    }

    /// The coordinate function `x_{index+1}` (indices are zero-based).
    pub fn var(dimension: usize, index: usize) -> Self {
        assert!(index < dimension, "variable index out of range");
        let mut p = Polynomial::zero(dimension);
        p.terms
            .insert(Monomial::variable(dimension, index), Coefficient::one());
        p
    }

    pub fn monomial(coefficient: Coefficient, exponents: Vec<u32>) -> Result<Self, PolyError> {
        let dimension = exponents.len();
        if dimension == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let mut p = Polynomial::zero(dimension);
        if !coefficient.is_zero() {
            p.terms.insert(Monomial::new(exponents)?, coefficient);
        }
        Ok(p)
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, merging like terms.
    pub fn from_terms<I>(dimension: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Coefficient, Monomial)>,
    {
        if dimension == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let mut p = Polynomial::zero(dimension);
        for (c, m) in terms {
            if m.dimension() != dimension {
                return Err(PolyError::DimensionMismatch {
                    left: dimension,
                    right: m.dimension(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial (graded-lex) down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Coefficient {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Coefficient::zero)
    }

    pub fn total_degree(&self) -> Degree {
        // graded order: the last key has the largest total degree
        match self.terms.keys().next_back() {
            Some(m) => Degree::Finite(m.degree()),
            None => Degree::NegInfinity,
        }
    }

    /// Largest exponent of `var` over all terms; zero for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// True when every stored coefficient is nonzero and every monomial has
    /// the ambient dimension.
    pub fn is_normalized(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| !c.is_zero() && m.dimension() == self.dimension)
    }

    fn add_term(&mut self, monomial: Monomial, coefficient: Coefficient) {
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dimension(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.dimension != other.dimension {
            return Err(PolyError::DimensionMismatch {
                left: self.dimension,
                right: other.dimension,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dimension(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dimension(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &Coefficient) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.dimension);
        }
        Polynomial {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dimension(other)?;
        let mut out = Polynomial::zero(self.dimension);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> Result<Polynomial, PolyError> {
        let mut result = Polynomial::one(self.dimension);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Substitutes `args[i]` for variable `x_{i+1}` and expands.
    pub fn compose(&self, args: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if args.len() != self.dimension {
            return Err(PolyError::ArityMismatch {
                expected: self.dimension,
                got: args.len(),
            });
        }
        let target_dim = args[0].dimension;
        for a in args {
            if a.dimension != target_dim {
                return Err(PolyError::DimensionMismatch {
                    left: target_dim,
                    right: a.dimension,
                });
            }
        }
        let mut powers = PowerCache::new(args);
        let mut out = Polynomial::zero(target_dim);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target_dim, c.clone());
            for (var, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.checked_mul(powers.get(var, e)?)?;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn partial(&self, var: usize) -> Result<Polynomial, PolyError> {
        if var >= self.dimension {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                dimension: self.dimension,
            });
        }
        let mut out = Polynomial::zero(self.dimension);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            let dm = Monomial {
                degree: m.degree - 1,
                exponents: exps.into_boxed_slice(),
            };
            out.add_term(dm, c * Coefficient::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Re-expresses `self` in `dimension` variables, sending variable `i` to
    /// variable `targets[i]`.
    pub fn embed(&self, dimension: usize, targets: &[usize]) -> Result<Polynomial, PolyError> {
        if targets.len() != self.dimension {
            return Err(PolyError::ArityMismatch {
                expected: self.dimension,
                got: targets.len(),
            });
        }
        if let Some(&bad) = targets.iter().find(|&&t| t >= dimension) {
            return Err(PolyError::VariableOutOfRange {
                index: bad,
                dimension,
            });
        }
        let mut out = Polynomial::zero(dimension);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; dimension];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[targets[i]] = exps[targets[i]]
                    .checked_add(e)
                    .ok_or(PolyError::ExponentOverflow)?;
            }
            out.add_term(Monomial::new(exps)?, c.clone());
        }
        Ok(out)
    }

    /// Parses the canonical text form in `dimension` variables.
    pub fn parse(text: &str, dimension: usize) -> Result<Polynomial, PolyError> {
        if dimension == 0 {
            return Err(PolyError::ZeroDimension);
        }
        Parser::new(text, dimension).polynomial()
    }
}

/// Lazily built powers `args[var]^e`, shared across the terms of one composition.
struct PowerCache<'a> {
    args: &'a [Polynomial],
    powers: Vec<Vec<Polynomial>>,
}

impl<'a> PowerCache<'a> {
    fn new(args: &'a [Polynomial]) -> Self {
        PowerCache {
            args,
            powers: vec![Vec::new(); args.len()],
        }
    }

    fn get(&mut self, var: usize, exponent: u32) -> Result<&Polynomial, PolyError> {
        let list = &mut self.powers[var];
        if list.is_empty() {
            list.push(self.args[var].clone());
        }
        while list.len() < exponent as usize {
            let next = list.last().unwrap().checked_mul(&self.args[var])?;
            list.push(next);
        }
        Ok(&list[exponent as usize - 1])
    }
}

fn fmt_coefficient(c: &Coefficient) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(fmt_coefficient(&abs));
            }
            for (var, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", var + 1)),
                    _ => factors.push(format!("x{}^{}", var + 1, e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dimension: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, dimension: usize) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            dimension,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&'a str, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        // ASCII digits are valid UTF-8
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(self.dimension);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (c, m) = self.term()?;
            out.add_term(m, if sign < 0 { -c } else { c });
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(ch) => return self.err(format!("unexpected character '{}'", ch as char)),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Coefficient, Monomial), PolyError> {
        let mut coeff = Coefficient::one();
        let mut exps = vec![0u32; self.dimension];
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let idx: usize = self
                        .digits()?
                        .parse()
                        .map_err(|_| PolyError::Parse {
                            pos: self.pos,
                            msg: "bad variable index".into(),
                        })?;
                    if idx == 0 || idx > self.dimension {
                        return self.err(format!(
                            "variable x{idx} outside dimension {}",
                            self.dimension
                        ));
                    }
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.digits()?.parse().map_err(|_| PolyError::ExponentOverflow)?;
                    }
                    exps[idx - 1] = exps[idx - 1]
                        .checked_add(e)
                        .ok_or(PolyError::ExponentOverflow)?;
                }
                Some(ch) if ch.is_ascii_digit() => {
                    let num: BigInt = self.digits()?.parse().unwrap();
                    let mut value = Coefficient::from_integer(num);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den: BigInt = self.digits()?.parse().unwrap();
                        if den.is_zero() {
                            return self.err("zero denominator");
                        }
                        value /= Coefficient::from_integer(den);
                    }
                    coeff *= value;
                }
                _ => return self.err("expected coefficient or variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, Monomial::new(exps)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, dim: usize) -> Polynomial {
        Polynomial::parse(s, dim).unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let x1 = Polynomial::var(2, 0);
        let sum = x1.checked_add(&x1.neg()).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.total_degree(), Degree::NegInfinity);
    }

    #[test]
    fn like_terms_merge() {
        let a = p("x1 + x2", 2);
        let b = p("x2", 2);
        assert_eq!(a.checked_add(&b).unwrap(), p("x1 + 2*x2", 2));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(PolyError::DimensionMismatch { left: 2, right: 3 })
        ));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn products() {
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        let prod = x1.checked_mul(&x2).unwrap();
        assert_eq!(prod.to_string(), "x1*x2");
        assert_eq!(prod.total_degree(), Degree::Finite(2));
        let diff = p("x1 + 1", 1).checked_mul(&p("x1 - 1", 1)).unwrap();
        assert_eq!(diff, p("x1^2 - 1", 1));
    }

    #[test]
    fn exponent_overflow_is_checked() {
        let big = Polynomial::monomial(Coefficient::one(), vec![u32::MAX - 1]).unwrap();
        assert_eq!(big.checked_mul(&big), Err(PolyError::ExponentOverflow));
    }

    #[test]
    fn compose_examples() {
        let f = p("x1 + x2^2", 2);
        let id = [Polynomial::var(2, 0), Polynomial::var(2, 1)];
        assert_eq!(f.compose(&id).unwrap(), f);

        let g = p("x1*x2", 2);
        let out = g.compose(&[p("x1 + x2^3", 2), p("x2", 2)]).unwrap();
        assert_eq!(out, p("x1*x2 + x2^4", 2));
        assert_eq!(out.total_degree(), Degree::Finite(4));

        let sq = p("x1^2", 2);
        let f1 = p("x1^3 + x2", 3);
        let f2 = p("x2^4 + x3", 3);
        assert_eq!(
            sq.compose(&[f1, f2]).unwrap().total_degree(),
            Degree::Finite(6)
        );
    }

    #[test]
    fn compose_arity_mismatch() {
        let f = p("x1 + x2", 2);
        assert_eq!(
            f.compose(&[Polynomial::var(2, 0)]),
            Err(PolyError::ArityMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x1^3", 2).partial(0).unwrap(), p("3*x1^2", 2));
        assert!(p("x2", 2).partial(0).unwrap().is_zero());
        assert_eq!(p("x1*x2^2", 2).partial(1).unwrap(), p("2*x1*x2", 2));
        assert!(p("x1", 2).partial(2).is_err());
    }

    #[test]
    fn total_degree_examples() {
        assert_eq!(p("x1 + x2^5", 2).total_degree(), Degree::Finite(5));
        assert_eq!(Polynomial::zero(2).total_degree(), Degree::NegInfinity);
        assert_eq!(p("x1^3*x2^2", 2).total_degree(), Degree::Finite(5));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn canonical_text() {
        let f = p("-1/2*x2 + 3*x1^2*x3", 3);
        assert_eq!(f.to_string(), "3*x1^2*x3 - 1/2*x2");
        assert_eq!(p("-x1 + 2/4", 1).to_string(), "-x1 + 1/2");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
        assert_eq!(p("x1 - x1", 2).to_string(), "0");
        // graded-lex: degree first, then x1 > x2
        assert_eq!(
            p("x2^2 + x1*x2 + x1^2 + x3^3", 3).to_string(),
            "x3^3 + x1^2 + x1*x2 + x2^2"
        );
    }

    #[test]
    fn parse_errors() {
        assert!(Polynomial::parse("x4", 3).is_err());
        assert!(Polynomial::parse("x0", 3).is_err());
        assert!(Polynomial::parse("1/0", 1).is_err());
        assert!(Polynomial::parse("x1 +", 1).is_err());
        assert!(Polynomial::parse("y", 1).is_err());
    }

    #[test]
    fn embed_relabels_variables() {
        let f = p("x1^2 + x2", 2);
        assert_eq!(f.embed(3, &[2, 0]).unwrap(), p("x3^2 + x1", 3));
    }
}
