//! The degenerate metric `g` with `<dx_i, dx_j>_g = δ_ij x_i` and the
//! Hodge star `*_g` it induces against the Euclidean volume form.

use crate::error::{Error, Result};
use crate::exterior::{DiffForm, IndexSet, SimplexContext};
use crate::ratpoly::{MultiIndex, Rational, SLocalPoly};

/// `x_I = ∏_{i∈I} x_i` as an exponent vector.
fn index_monomial(nvars: usize, index: IndexSet) -> MultiIndex {
    let mut e = vec![0; nvars];
    for i in index.iter() {
        e[i] = 1;
    }
    MultiIndex::new(e)
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

impl SimplexContext {
    /// `<α, β>_g`. Distinct basis covectors are orthogonal and
    /// `<dx_I, dx_I>_g = x_I`.
    pub fn inner_g(&self, alpha: &DiffForm, beta: &DiffForm) -> Result<SLocalPoly> {
        self.check(alpha)?;
        self.check(beta)?;
        if alpha.degree() != beta.degree() {
            return Err(Error::DegreeMismatch {
                expected: alpha.degree(),
                found: beta.degree(),
            });
        }
        let nvars = self.nvars();
        let mut total = SLocalPoly::zero(nvars);
        for (index, f) in alpha.terms() {
            let g = beta.coeff(*index);
            if g.is_zero() {
                continue;
            }
            total = &total + &(f * &g).mul_monomial(&index_monomial(nvars, *index), &one());
        }
        Ok(total)
    }

    /// `*_g(f dx_I) = ε(I, I^c) f x_I dx_{I^c}`, so that
    /// `α ∧ *_g β = <α, β>_g vol`.
    pub fn hodge_star(&self, beta: &DiffForm) -> DiffForm {
        let nvars = self.nvars();
        assert_eq!(beta.nvars(), nvars, "Hodge star across ambient dimensions");
        let mut out = DiffForm::zero(nvars, nvars - beta.degree().min(nvars));
        if beta.degree() > nvars {
            return out;
        }
        for (index, f) in beta.terms() {
            let rest = index.complement(nvars);
            let sign = index.wedge_sign(rest).unwrap();
            let c = Rational::from_integer(sign.into());
            out = &out + &DiffForm::term(rest, f.mul_monomial(&index_monomial(nvars, *index), &c));
        }
        out
    }

    /// The polynomial preimage under `*_g`, which exists exactly when
    /// `*_g β` is divisible by `p`.
    pub fn hodge_star_inverse(&self, beta: &DiffForm) -> Result<DiffForm> {
        self.check(beta)?;
        let nvars = self.nvars();
        let k = beta.degree().min(nvars);
        let star = self.hodge_star(beta);
        let p = MultiIndex::new(vec![1; nvars]);
        let sign = if (k * (nvars - k)).is_multiple_of(2) { one() } else { -one() };
        let mut out = DiffForm::zero(nvars, star.degree());
        for (index, f) in star.terms() {
            let q = f.numerator().divide_by_monomial(&p).ok_or(Error::NotInRange)?;
            out = &out + &DiffForm::term(*index, SLocalPoly::new(q.scale(&sign), f.s_power()));
        }
        Ok(out)
    }
}
