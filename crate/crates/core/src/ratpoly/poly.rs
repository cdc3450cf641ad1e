use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::{MonomialDisplay, MultiIndex};
use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`MultiIndex`], so iteration is
/// in graded-lex order and no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn monomial(exponents: MultiIndex, c: Rational) -> Self {
        let nvars = exponents.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Polynomial { nvars, terms }
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), Rational::one())
    }

    /// `s = x_1 + ... + x_m`.
    pub fn s(nvars: usize) -> Self {
        let terms = (0..nvars)
            .map(|i| (MultiIndex::unit(nvars, i), Rational::one()))
            .collect();
        Polynomial { nvars, terms }
    }

    /// `p = x_1 x_2 ... x_m`.
    pub fn product_of_vars(nvars: usize) -> Self {
        Self::monomial(MultiIndex::new(vec![1; nvars]), Rational::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong number of variables");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_dims(&self, other: &Polynomial) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by a monomial `c * x^m`.
    pub fn mul_monomial(&self, m: &MultiIndex, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, ca)| (a.mul(m), ca * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `∂/∂x_i` (0-based).
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e > 0 {
                out.add_term(m.with(i, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Highest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    /// Common total degree of all terms.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let mut degrees = self.terms.keys().map(MultiIndex::degree);
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Exact quotient by `s = x_1 + ... + x_m`.
    ///
    /// Synthetic division by `s`, viewed as the monic linear polynomial
    /// `x_m + (x_1 + ... + x_{m-1})` in the last variable.
    pub fn divide_by_s(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.nvars == 0 {
            return Err(Error::NotDivisible);
        }
        let last = self.nvars - 1;
        // coefficients c_j of x_last^j, with x_last stripped
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_power
                .entry(m.get(last))
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.with(last, 0), c.clone());
        }
        let top = *by_power.keys().next_back().unwrap();
        let zero = Polynomial::zero(self.nvars);
        let sigma = &Polynomial::s(self.nvars) - &Polynomial::var(self.nvars, last);

        let mut quotient = Polynomial::zero(self.nvars);
        let mut carry = Polynomial::zero(self.nvars); // q_j of the previous step
        for j in (0..=top).rev() {
            let c_j = by_power.get(&j).unwrap_or(&zero);
            let next = c_j - &(&sigma * &carry);
            if j == 0 {
                return if next.is_zero() {
                    Ok(quotient)
                } else {
                    Err(Error::NotDivisible)
                };
            }
            // q_{j-1} = c_j - sigma q_j
            for (m, c) in &next.terms {
                quotient.add_term(m.with(last, j - 1), c.clone());
            }
            carry = next;
        }
        unreachable!()
    }

    /// Multiplies every term of degree `m` by `s^(r - m)`.
    pub fn homogenize(&self, r: u32) -> Result<Polynomial> {
        if let Some(d) = self.total_degree() {
            if d > r {
                return Err(Error::DegreeTooHigh {
                    degree: d,
                    target: r,
                });
            }
        }
        let s = Polynomial::s(self.nvars);
        let mut powers = vec![Polynomial::one(self.nvars)];
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let gap = (r - m.degree()) as usize;
            while powers.len() <= gap {
                let next = powers.last().unwrap() * &s;
                powers.push(next);
            }
            out = &out + &powers[gap].mul_monomial(m, c);
        }
        Ok(out)
    }

    /// Exact substitution `x_i := replacement`.
    pub fn substitute(&self, i: usize, replacement: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, replacement.nvars, "substitution across rings");
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_power
                .entry(m.get(i))
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.with(i, 0), c.clone());
        }
        let mut out = Polynomial::zero(self.nvars);
        let mut power = Polynomial::one(self.nvars);
        let mut at = 0;
        for (e, rest) in by_power {
            while at < e {
                power = &power * replacement;
                at += 1;
            }
            out = &out + &(&rest * &power);
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }

    /// Exact quotient by the monomial `x^m`, if every term is divisible.
    pub fn divide_by_monomial(&self, m: &MultiIndex) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            terms.insert(a.checked_div(m)?, c.clone());
        }
        Some(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Drops variable `i`, which must not occur.
    pub fn remove_var(&self, i: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert_eq!(m.get(i), 0, "removing a variable that occurs");
                    (m.remove_var(i), c.clone())
                })
                .collect(),
        }
    }

    /// Re-reads the polynomial in a ring with more variables.
    pub fn extend_to(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend_to(nvars), c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial arithmetic across rings")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Writes `|c| * m` without sign, omitting unit factors.
pub(crate) fn write_term_magnitude(
    f: &mut fmt::Formatter<'_>,
    m: &MultiIndex,
    c: &Rational,
) -> fmt::Result {
    let c = c.abs();
    if m.is_constant() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{}", MonomialDisplay(m))
    } else {
        write!(f, "{c}*{}", MonomialDisplay(m))
    }
}

impl fmt::Display for Polynomial {
    /// Highest terms first, e.g. `x^2 - 1/2*y*z + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term_magnitude(f, m, c)?;
        }
        Ok(())
    }
}
