use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::blade::IndexSet;
use super::field::VectorField;
use crate::error::{Error, Result};
use crate::ratpoly::{MultiIndex, Polynomial, Rational, SLocalPoly};

/// A differential `k`-form on the orthant in `nvars = n + 1` coordinates
/// with coefficients in the ring localized at `s`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffForm {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<IndexSet, SLocalPoly>,
}

impl DiffForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        DiffForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn scalar(f: impl Into<SLocalPoly>) -> Self {
        let f = f.into();
        let mut out = DiffForm::zero(f.nvars(), 0);
        out.add_term(IndexSet::empty(), f);
        out
    }

    /// `f dx_I`.
    pub fn term(index: IndexSet, f: impl Into<SLocalPoly>) -> Self {
        let f = f.into();
        let mut out = DiffForm::zero(f.nvars(), index.len());
        out.add_term(index, f);
        out
    }

    /// `dx_i` (0-based).
    pub fn dx(nvars: usize, i: usize) -> Self {
        DiffForm::term(IndexSet::singleton(i), Polynomial::one(nvars))
    }

    /// `dx_I` with unit coefficient.
    pub fn basis(nvars: usize, index: IndexSet) -> Self {
        DiffForm::term(index, Polynomial::one(nvars))
    }

    pub fn from_terms<I>(nvars: usize, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (IndexSet, SLocalPoly)>,
    {
        let mut out = DiffForm::zero(nvars, degree);
        for (index, f) in terms {
            out.add_term(index, f);
        }
        out
    }

    pub(crate) fn add_term(&mut self, index: IndexSet, f: SLocalPoly) {
        assert_eq!(index.len(), self.degree, "index set of the wrong size");
        assert_eq!(f.nvars(), self.nvars, "coefficient in the wrong ring");
        if f.is_zero() || self.degree > self.nvars {
            return;
        }
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&IndexSet, &SLocalPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, index: IndexSet) -> SLocalPoly {
        self.terms
            .get(&index)
            .cloned()
            .unwrap_or_else(|| SLocalPoly::zero(self.nvars))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(SLocalPoly::is_polynomial)
    }

    /// Highest power of `s` in any denominator.
    pub fn max_s_power(&self) -> u32 {
        self.terms.values().map(SLocalPoly::s_power).max().unwrap_or(0)
    }

    /// Flattened `(index set, monomial) -> coefficient` view of a
    /// polynomial form.
    pub fn monomial_terms(&self) -> Result<Vec<((IndexSet, MultiIndex), Rational)>> {
        let mut out = Vec::new();
        for (index, f) in &self.terms {
            let p = f.as_polynomial().ok_or(Error::NotPolynomial)?;
            for (m, c) in p.terms() {
                out.push(((*index, m.clone()), c.clone()));
            }
        }
        Ok(out)
    }

    /// Common homogeneous degree `r` of all coefficients (may be negative
    /// for s-localized forms).
    pub fn homogeneous_degree(&self) -> Result<i64> {
        let mut degrees = self.terms.values().map(SLocalPoly::homogeneous_degree);
        let first = degrees.next().ok_or(Error::ZeroPolynomial)??;
        for d in degrees {
            if d? != first {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(first)
    }

    /// The zero form belongs to every degree, so a zero summand of another
    /// degree is accepted.
    fn check_compatible(&self, other: &DiffForm) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (index, f) in &other.terms {
            out.add_term(*index, f.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> DiffForm {
        self.map_coefficients(|f| f.scale(c))
    }

    pub fn mul_scalar(&self, g: &SLocalPoly) -> DiffForm {
        self.map_coefficients(|f| f * g)
    }

    pub fn mul_poly(&self, g: &Polynomial) -> DiffForm {
        self.map_coefficients(|f| f.mul_poly(g))
    }

    pub fn mul_s_pow(&self, e: u32) -> DiffForm {
        self.map_coefficients(|f| f.mul_s_pow(e))
    }

    pub fn div_s_pow(&self, e: u32) -> DiffForm {
        self.map_coefficients(|f| f.div_s_pow(e))
    }

    pub fn map_coefficients(&self, mut g: impl FnMut(&SLocalPoly) -> SLocalPoly) -> DiffForm {
        let mut out = DiffForm::zero(self.nvars, self.degree);
        for (index, f) in &self.terms {
            out.add_term(*index, g(f));
        }
        out
    }

    /// `self ∧ other`. Degrees beyond the ambient dimension give zero.
    pub fn wedge(&self, other: &DiffForm) -> DiffForm {
        assert_eq!(self.nvars, other.nvars, "wedge across ambient dimensions");
        let mut out = DiffForm::zero(self.nvars, self.degree + other.degree);
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                if let Some(sign) = i.wedge_sign(*j) {
                    let c = f * g;
                    out.add_term(i.union(*j), if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Left contraction `i_V`: inserts `V` into the first slot.
    pub fn contract_left(&self, v: &VectorField) -> DiffForm {
        assert_eq!(self.nvars, v.nvars(), "contraction across ambient dimensions");
        if self.degree == 0 {
            return DiffForm::zero(self.nvars, 0);
        }
        let mut out = DiffForm::zero(self.nvars, self.degree - 1);
        for (index, f) in &self.terms {
            for (pos, j) in index.iter().enumerate() {
                let vj = v.component(j);
                if vj.is_zero() {
                    continue;
                }
                let c = f * vj;
                out.add_term(index.remove(j), if pos % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// Right contraction `j_V`: inserts `V` into the last slot, so
    /// `j_V = (-1)^(k-1) i_V` on `k`-forms.
    pub fn contract_right(&self, v: &VectorField) -> DiffForm {
        let left = self.contract_left(v);
        if self.degree.is_multiple_of(2) {
            -left
        } else {
            left
        }
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.nvars, self.degree + 1);
        for (index, f) in &self.terms {
            for j in 0..self.nvars {
                if index.contains(j) {
                    continue;
                }
                let df = f.derivative(j);
                if df.is_zero() {
                    continue;
                }
                // dx_j ∧ dx_I
                let sign = IndexSet::singleton(j).wedge_sign(*index).unwrap();
                out.add_term(index.insert(j), if sign < 0 { -df } else { df });
            }
        }
        out
    }

    /// Pullback `k_i^*` to the face `x_i = 0` (0-based), still written in
    /// ambient coordinates. Powers of `s` stay as formal denominators.
    pub fn pullback_face(&self, i: usize) -> DiffForm {
        let zero = Polynomial::zero(self.nvars);
        let mut out = DiffForm::zero(self.nvars, self.degree);
        for (index, f) in &self.terms {
            if index.contains(i) {
                continue;
            }
            out.add_term(*index, f.substitute_numerator(i, &zero));
        }
        out
    }

    /// True when the pullback to every face `x_i = 0` vanishes.
    pub fn has_vanishing_trace(&self) -> bool {
        (0..self.nvars).all(|i| self.pullback_face(i).is_zero())
    }

    /// Pointwise value at a rational point (with `s != 0` when needed).
    pub fn evaluate(&self, point: &[Rational]) -> Option<BTreeMap<IndexSet, Rational>> {
        self.terms
            .iter()
            .map(|(index, f)| f.evaluate(point).map(|v| (*index, v)))
            .collect()
    }
}

impl Add<&DiffForm> for &DiffForm {
    type Output = DiffForm;
    fn add(self, rhs: &DiffForm) -> DiffForm {
        self.checked_add(rhs).expect("adding incompatible forms")
    }
}

impl Add for DiffForm {
    type Output = DiffForm;
    fn add(self, rhs: DiffForm) -> DiffForm {
        &self + &rhs
    }
}

impl Sub<&DiffForm> for &DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: &DiffForm) -> DiffForm {
        self.checked_sub(rhs).expect("subtracting incompatible forms")
    }
}

impl Sub for DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: DiffForm) -> DiffForm {
        &self - &rhs
    }
}

impl Neg for &DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        DiffForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, f)| (*i, -f)).collect(),
        }
    }
}

impl Neg for DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        -&self
    }
}
