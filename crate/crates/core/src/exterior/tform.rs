use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::blade::IndexSet;
use super::form::DiffForm;
use crate::error::{Error, Result};
use crate::ratpoly::{MultiIndex, Polynomial, Rational, SLocalPoly};

/// A polynomial `k`-form on the simplex `T`, in the coordinates
/// `x_1, .., x_n` obtained by eliminating `x_{n+1}` through `s = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TForm {
    n: usize,
    degree: usize,
    terms: BTreeMap<IndexSet, Polynomial>,
}

impl TForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        TForm {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(f: Polynomial) -> Self {
        TForm::term(IndexSet::empty(), f)
    }

    pub fn term(index: IndexSet, f: Polynomial) -> Self {
        let mut out = TForm::zero(f.nvars(), index.len());
        out.add_term(index, f);
        out
    }

    pub fn dx(n: usize, i: usize) -> Self {
        TForm::term(IndexSet::singleton(i), Polynomial::one(n))
    }

    pub fn from_terms<I>(n: usize, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (IndexSet, Polynomial)>,
    {
        let mut out = TForm::zero(n, degree);
        for (index, f) in terms {
            out.add_term(index, f);
        }
        out
    }

    pub(crate) fn add_term(&mut self, index: IndexSet, f: Polynomial) {
        assert_eq!(index.len(), self.degree, "index set of the wrong size");
        assert_eq!(f.nvars(), self.n, "coefficient in the wrong ring");
        if f.is_zero() || self.degree > self.n {
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

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&IndexSet, &Polynomial)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, index: IndexSet) -> Polynomial {
        self.terms
            .get(&index)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    /// Highest total degree among the coefficients.
    pub fn max_coefficient_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Polynomial::total_degree).max()
    }

    pub fn monomial_terms(&self) -> Vec<((IndexSet, MultiIndex), Rational)> {
        self.terms
            .iter()
            .flat_map(|(index, f)| f.terms().map(|(m, c)| ((*index, m.clone()), c.clone())))
            .collect()
    }

    pub fn checked_add(&self, other: &TForm) -> Result<TForm> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (index, f) in &other.terms {
            out.add_term(*index, f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> TForm {
        self.map_coefficients(|f| f.scale(c))
    }

    pub fn mul_poly(&self, g: &Polynomial) -> TForm {
        self.map_coefficients(|f| f * g)
    }

    fn map_coefficients(&self, mut g: impl FnMut(&Polynomial) -> Polynomial) -> TForm {
        let mut out = TForm::zero(self.n, self.degree);
        for (index, f) in &self.terms {
            out.add_term(*index, g(f));
        }
        out
    }

    pub fn wedge(&self, other: &TForm) -> TForm {
        assert_eq!(self.n, other.n, "wedge across simplex dimensions");
        let mut out = TForm::zero(self.n, self.degree + other.degree);
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

    pub fn d(&self) -> TForm {
        let mut out = TForm::zero(self.n, self.degree + 1);
        for (index, f) in &self.terms {
            for j in 0..self.n {
                if index.contains(j) {
                    continue;
                }
                let df = f.derivative(j);
                let sign = IndexSet::singleton(j).wedge_sign(*index).unwrap();
                out.add_term(index.insert(j), if sign < 0 { -df } else { df });
            }
        }
        out
    }

    /// Contraction with a polynomial vector field on `T`.
    pub fn contract(&self, v: &[Polynomial]) -> TForm {
        assert_eq!(v.len(), self.n);
        if self.degree == 0 {
            return TForm::zero(self.n, 0);
        }
        let mut out = TForm::zero(self.n, self.degree - 1);
        for (index, f) in &self.terms {
            for (pos, j) in index.iter().enumerate() {
                let c = f * &v[j];
                out.add_term(index.remove(j), if pos % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// The Koszul operator on `T`: contraction with the radial field
    /// `Σ (x_i - 1/(n+1)) ∂/∂x_i` centred at the barycentre.
    pub fn koszul(&self) -> TForm {
        let centre = Polynomial::constant(self.n, Rational::new(1.into(), ((self.n + 1) as i64).into()));
        let v: Vec<Polynomial> = (0..self.n)
            .map(|i| &Polynomial::var(self.n, i) - &centre)
            .collect();
        self.contract(&v)
    }

    /// Pullback to the facet `i` of `T` (0-based, `0 ..= n`): facet `i < n`
    /// is `x_{i+1} = 0`, facet `n` is `x_1 + .. + x_n = 1`. Written in the
    /// same coordinates with the eliminated variable absent.
    pub fn pullback_face(&self, i: usize) -> TForm {
        assert!(i <= self.n);
        let mut out = TForm::zero(self.n, self.degree);
        if i < self.n {
            let zero = Polynomial::zero(self.n);
            for (index, f) in &self.terms {
                if !index.contains(i) {
                    out.add_term(*index, f.substitute(i, &zero));
                }
            }
            return out;
        }
        // eliminate the last coordinate: x_n = 1 - Σ_{j<n} x_j
        let last = self.n - 1;
        let mut repl = Polynomial::one(self.n);
        for j in 0..last {
            repl = &repl - &Polynomial::var(self.n, j);
        }
        for (index, f) in &self.terms {
            let g = f.substitute(last, &repl);
            if !index.contains(last) {
                out.add_term(*index, g);
                continue;
            }
            // dx_I = dx_{I'} ∧ dx_last with dx_last = -Σ_{j<last} dx_j
            let rest = index.remove(last);
            for j in 0..last {
                if let Some(sign) = rest.wedge_sign(IndexSet::singleton(j)) {
                    let c = if sign < 0 { g.clone() } else { -&g };
                    out.add_term(rest.insert(j), c);
                }
            }
        }
        out
    }

    pub fn has_vanishing_trace(&self) -> bool {
        (0..=self.n).all(|i| self.pullback_face(i).is_zero())
    }

    /// Homogeneous lift to the orthant: each coefficient homogenized to
    /// degree `r` with powers of `s`, index sets kept verbatim.
    pub fn lift(&self, r: u32) -> Result<DiffForm> {
        if let Some(deg) = self.max_coefficient_degree() {
            if deg > r {
                return Err(Error::DegreeTooHigh { degree: deg, target: r });
            }
        }
        let nvars = self.n + 1;
        let mut out = DiffForm::zero(nvars, self.degree);
        for (index, f) in &self.terms {
            out.add_term(*index, SLocalPoly::from(f.extend_to(nvars).homogenize(r)?));
        }
        Ok(out)
    }

    /// Lift that accepts coefficient degrees above `r`, paying with
    /// negative powers of `s`.
    pub(crate) fn lift_localized(&self, r: u32) -> DiffForm {
        let nvars = self.n + 1;
        let mut out = DiffForm::zero(nvars, self.degree);
        for (index, f) in &self.terms {
            out.add_term(*index, SLocalPoly::homogenize(&f.extend_to(nvars), r));
        }
        out
    }
}

impl DiffForm {
    /// Pullback `i^*` to `T`: `x_{n+1} := 1 - Σ x_i`, `dx_{n+1} := -Σ dx_i`,
    /// and every power of `s` becomes 1.
    pub fn restrict_to_t(&self) -> TForm {
        let nvars = self.nvars();
        assert!(nvars >= 2, "the simplex needs n >= 1");
        let n = nvars - 1;
        let mut repl = Polynomial::one(nvars);
        for j in 0..n {
            repl = &repl - &Polynomial::var(nvars, j);
        }
        let mut out = TForm::zero(n, self.degree());
        for (index, f) in self.terms() {
            let g = f.numerator().substitute(n, &repl).remove_var(n);
            if !index.contains(n) {
                out.add_term(*index, g);
                continue;
            }
            let rest = index.remove(n);
            for j in 0..n {
                if let Some(sign) = rest.wedge_sign(IndexSet::singleton(j)) {
                    let c = if sign < 0 { g.clone() } else { -&g };
                    out.add_term(rest.insert(j), c);
                }
            }
        }
        out
    }
}

impl Add<&TForm> for &TForm {
    type Output = TForm;
    fn add(self, rhs: &TForm) -> TForm {
        self.checked_add(rhs).expect("adding incompatible forms")
    }
}

impl Sub<&TForm> for &TForm {
    type Output = TForm;
    fn sub(self, rhs: &TForm) -> TForm {
        self.checked_add(&-rhs).expect("subtracting incompatible forms")
    }
}

impl Neg for &TForm {
    type Output = TForm;
    fn neg(self) -> TForm {
        self.map_coefficients(|f| -f)
    }
}
