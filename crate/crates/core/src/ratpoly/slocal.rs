use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::monomial::MultiIndex;
use super::poly::Polynomial;
use super::Rational;
use crate::error::{Error, Result};

/// A polynomial divided by a power of `s`: the value is `numerator / s^s_power`.
///
/// Always normalized: either `s_power == 0` or the numerator is not a
/// multiple of `s`. Zero is stored with `s_power == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SLocalPoly {
    numerator: Polynomial,
    s_power: u32,
}

impl SLocalPoly {
    pub fn new(numerator: Polynomial, s_power: u32) -> Self {
        let mut numerator = numerator;
        let mut s_power = s_power;
        if numerator.is_zero() {
            s_power = 0;
        }
        while s_power > 0 {
            match numerator.divide_by_s() {
                Ok(q) => {
                    numerator = q;
                    s_power -= 1;
                }
                Err(_) => break,
            }
        }
        SLocalPoly { numerator, s_power }
    }

    pub fn zero(nvars: usize) -> Self {
        Polynomial::zero(nvars).into()
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::one(nvars).into()
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Polynomial::constant(nvars, c).into()
    }

    /// Homogenizes `p` to degree `r`, allowing negative powers of `s`:
    /// a term of degree `m` picks up the factor `s^(r - m)`.
    pub fn homogenize(p: &Polynomial, r: u32) -> Self {
        let top = p.total_degree().unwrap_or(0);
        let shift = top.saturating_sub(r);
        let lifted = p
            .homogenize(r + shift)
            .expect("shift covers every term degree");
        SLocalPoly::new(lifted, shift)
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn s_power(&self) -> u32 {
        self.s_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.s_power == 0
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.numerator)
    }

    pub fn into_polynomial(self) -> Result<Polynomial> {
        if self.s_power == 0 {
            Ok(self.numerator)
        } else {
            Err(Error::NotPolynomial)
        }
    }

    /// Numerator rescaled to the denominator `s^target` (`target >= s_power`).
    fn numerator_at(&self, target: u32) -> Polynomial {
        debug_assert!(target >= self.s_power);
        let gap = target - self.s_power;
        if gap == 0 {
            self.numerator.clone()
        } else {
            &self.numerator * &Polynomial::s(self.nvars()).pow(gap)
        }
    }

    pub fn checked_add(&self, other: &SLocalPoly) -> Result<SLocalPoly> {
        let m = self.s_power.max(other.s_power);
        let sum = self.numerator_at(m).checked_add(&other.numerator_at(m))?;
        Ok(SLocalPoly::new(sum, m))
    }

    pub fn checked_sub(&self, other: &SLocalPoly) -> Result<SLocalPoly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &SLocalPoly) -> Result<SLocalPoly> {
        let num = self.numerator.checked_mul(&other.numerator)?;
        Ok(SLocalPoly::new(num, self.s_power + other.s_power))
    }

    pub fn scale(&self, c: &Rational) -> SLocalPoly {
        SLocalPoly::new(self.numerator.scale(c), self.s_power)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> SLocalPoly {
        SLocalPoly::new(&self.numerator * p, self.s_power)
    }

    pub fn mul_monomial(&self, m: &MultiIndex, c: &Rational) -> SLocalPoly {
        SLocalPoly::new(self.numerator.mul_monomial(m, c), self.s_power)
    }

    /// Multiplies by `s^e`.
    pub fn mul_s_pow(&self, e: u32) -> SLocalPoly {
        if e <= self.s_power {
            SLocalPoly {
                numerator: self.numerator.clone(),
                s_power: self.s_power - e,
            }
        } else {
            SLocalPoly::new(self.numerator_at(e), 0)
        }
    }

    /// Divides by `s^e`.
    pub fn div_s_pow(&self, e: u32) -> SLocalPoly {
        SLocalPoly::new(self.numerator.clone(), self.s_power + e)
    }

    /// `∂/∂x_i`, using `∂s/∂x_i = 1`.
    pub fn derivative(&self, i: usize) -> SLocalPoly {
        let dn = self.numerator.derivative(i);
        if self.s_power == 0 {
            return dn.into();
        }
        let m = Rational::from_integer(self.s_power.into());
        let num = &(&dn * &Polynomial::s(self.nvars())) - &self.numerator.scale(&m);
        SLocalPoly::new(num, self.s_power + 1)
    }

    /// Degree of homogeneity, `deg(numerator) - s_power`; may be negative.
    pub fn homogeneous_degree(&self) -> Result<i64> {
        let d = self.numerator.homogeneous_degree()?;
        Ok(i64::from(d) - i64::from(self.s_power))
    }

    /// Substitutes `x_i := replacement` in the numerator, keeping the power
    /// of `s` as a formal denominator.
    pub fn substitute_numerator(&self, i: usize, replacement: &Polynomial) -> SLocalPoly {
        SLocalPoly {
            numerator: self.numerator.substitute(i, replacement),
            s_power: self.s_power,
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        let s: Rational = point.iter().sum();
        let mut denom = Rational::from_integer(1.into());
        for _ in 0..self.s_power {
            denom *= &s;
        }
        if denom.is_zero() {
            return None;
        }
        Some(self.numerator.evaluate(point) / denom)
    }
}

impl From<Polynomial> for SLocalPoly {
    fn from(p: Polynomial) -> Self {
        SLocalPoly {
            numerator: p,
            s_power: 0,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&SLocalPoly> for &SLocalPoly {
            type Output = SLocalPoly;
            fn $method(self, rhs: &SLocalPoly) -> SLocalPoly {
                self.$checked(rhs).expect("arithmetic across rings")
            }
        }
        impl $trait<SLocalPoly> for SLocalPoly {
            type Output = SLocalPoly;
            fn $method(self, rhs: SLocalPoly) -> SLocalPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &SLocalPoly {
    type Output = SLocalPoly;
    fn neg(self) -> SLocalPoly {
        SLocalPoly {
            numerator: -&self.numerator,
            s_power: self.s_power,
        }
    }
}

impl Neg for SLocalPoly {
    type Output = SLocalPoly;
    fn neg(self) -> SLocalPoly {
        -&self
    }
}
