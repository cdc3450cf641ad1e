use super::blade::IndexSet;
use super::field::VectorField;
use super::form::DiffForm;
use super::tform::TForm;
use crate::error::{Error, Result};
use crate::ratpoly::{Polynomial, SLocalPoly};

/// The orthant `O` in `R^{n+1}` together with the simplex `T = {s = 1}`
/// and the solid simplex `{s <= 1}`, with the fixed objects every
/// operator needs.
#[derive(Clone, Debug)]
pub struct SimplexContext {
    n: usize,
    s: Polynomial,
    p: Polynomial,
    x: VectorField,
    grad_s: VectorField,
    x_kappa: VectorField,
    vol: DiffForm,
    ds: DiffForm,
}

/// Largest simplex dimension accepted; keeps index sets in a `u32`.
pub const MAX_N: usize = 16;

impl SimplexContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::range(format!("simplex dimension n = {n} must lie in 1..={MAX_N}")));
        }
        let nvars = n + 1;
        let ds = DiffForm::from_terms(
            nvars,
            1,
            (0..nvars).map(|i| (IndexSet::singleton(i), SLocalPoly::one(nvars))),
        );
        Ok(SimplexContext {
            n,
            s: Polynomial::s(nvars),
            p: Polynomial::product_of_vars(nvars),
            x: VectorField::euler(nvars),
            grad_s: VectorField::grad_s(nvars),
            x_kappa: VectorField::koszul(nvars),
            vol: DiffForm::basis(nvars, IndexSet::full(nvars)),
            ds,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of ambient coordinates, `n + 1`.
    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn s(&self) -> &Polynomial {
        &self.s
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn x(&self) -> &VectorField {
        &self.x
    }

    pub fn grad_s(&self) -> &VectorField {
        &self.grad_s
    }

    pub fn x_kappa(&self) -> &VectorField {
        &self.x_kappa
    }

    pub fn vol(&self) -> &DiffForm {
        &self.vol
    }

    pub fn ds(&self) -> &DiffForm {
        &self.ds
    }

    pub(crate) fn check(&self, alpha: &DiffForm) -> Result<()> {
        if alpha.nvars() == self.nvars() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.nvars(),
                right: alpha.nvars(),
            })
        }
    }

    pub(crate) fn check_t(&self, a: &TForm) -> Result<()> {
        if a.n() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: a.n(),
            })
        }
    }

    /// `ds ∧ α`.
    pub fn ds_wedge(&self, alpha: &DiffForm) -> DiffForm {
        self.ds.wedge(alpha)
    }

    /// `α ∧ ds = (-1)^k ds ∧ α`.
    pub fn wedge_ds(&self, alpha: &DiffForm) -> DiffForm {
        alpha.wedge(&self.ds)
    }

    /// `i_X α`.
    pub fn i_x(&self, alpha: &DiffForm) -> DiffForm {
        alpha.contract_left(&self.x)
    }

    /// `j_X α`, contraction in the last slot.
    pub fn j_x(&self, alpha: &DiffForm) -> DiffForm {
        alpha.contract_right(&self.x)
    }

    /// `i_{∇s} α`.
    pub fn i_grad_s(&self, alpha: &DiffForm) -> DiffForm {
        alpha.contract_left(&self.grad_s)
    }

    /// Pullback `i^*` to `T`.
    pub fn restrict_to_t(&self, alpha: &DiffForm) -> Result<TForm> {
        self.check(alpha)?;
        Ok(alpha.restrict_to_t())
    }

    /// A homogeneous polynomial extension `α'` of degree `r` with
    /// `i^* α' = a`: coefficients homogenized with `s`.
    pub fn lift_t_representative(&self, a: &TForm, r: u32) -> Result<DiffForm> {
        self.check_t(a)?;
        a.lift(r)
    }
}
