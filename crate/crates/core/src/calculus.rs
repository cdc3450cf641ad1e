//! Differential operators: `d`, the Lie derivative along `X`, the modified
//! derivative `𝐝 = d - s^{-1} ds ∧ 𝔏_X`, its polynomial form `s𝐝`, the
//! Koszul operator, the vertical/horizontal splitting and the horizontal
//! extension `h_r`.

use crate::error::Result;
use crate::exterior::{DiffForm, SimplexContext, TForm};
use crate::ratpoly::{int, Rational};

impl SimplexContext {
    pub fn d(&self, alpha: &DiffForm) -> DiffForm {
        alpha.d()
    }

    /// `𝔏_X = d i_X + i_X d`.
    pub fn lie_x(&self, alpha: &DiffForm) -> DiffForm {
        let tail = self.i_x(&alpha.d());
        if alpha.degree() == 0 {
            return tail;
        }
        &self.i_x(alpha).d() + &tail
    }

    /// `r + k` for a homogeneous form; `None` for the zero form.
    fn euler_weight(alpha: &DiffForm) -> Result<Option<Rational>> {
        if alpha.is_zero() {
            return Ok(None);
        }
        let r = alpha.homogeneous_degree()?;
        Ok(Some(int(r + alpha.degree() as i64)))
    }

    /// `𝐝α = dα - (r+k) s^{-1} ds ∧ α` on homogeneous `α`.
    pub fn bold_d(&self, alpha: &DiffForm) -> Result<DiffForm> {
        self.check(alpha)?;
        let Some(w) = Self::euler_weight(alpha)? else {
            return Ok(DiffForm::zero(alpha.nvars(), alpha.degree() + 1));
        };
        let correction = self.ds_wedge(alpha).scale(&w).div_s_pow(1);
        Ok(&alpha.d() - &correction)
    }

    /// `s𝐝α = s dα - (r+k) ds ∧ α`, polynomial on polynomial input.
    pub fn s_bold_d(&self, alpha: &DiffForm) -> Result<DiffForm> {
        self.check(alpha)?;
        let Some(w) = Self::euler_weight(alpha)? else {
            return Ok(DiffForm::zero(alpha.nvars(), alpha.degree() + 1));
        };
        Ok(&alpha.d().mul_poly(self.s()) - &self.ds_wedge(alpha).scale(&w))
    }

    /// `κ = i_{X^κ}`.
    pub fn koszul(&self, alpha: &DiffForm) -> DiffForm {
        alpha.contract_left(self.x_kappa())
    }

    /// `(vertical, horizontal) = (ds ∧ i_X(s^{-1}α), i_X(ds ∧ s^{-1}α))`.
    pub fn split(&self, alpha: &DiffForm) -> (DiffForm, DiffForm) {
        if alpha.degree() == 0 {
            return (DiffForm::zero(alpha.nvars(), 0), alpha.clone());
        }
        let a = alpha.div_s_pow(1);
        let vertical = self.ds_wedge(&self.i_x(&a));
        let horizontal = self.i_x(&self.ds_wedge(&a));
        (vertical, horizontal)
    }

    /// `h_r(a) = α' - s^{-1} ds ∧ i_X α'` for the homogeneous lift `α'`.
    ///
    /// Coefficients of degree above `r` are allowed; they lift with negative
    /// powers of `s`.
    pub fn h_r(&self, a: &TForm, r: u32) -> Result<DiffForm> {
        self.check_t(a)?;
        let lifted = a.lift_localized(r);
        if a.degree() == 0 {
            return Ok(lifted);
        }
        let correction = self.ds_wedge(&self.i_x(&lifted)).div_s_pow(1);
        Ok(&lifted - &correction)
    }
}
