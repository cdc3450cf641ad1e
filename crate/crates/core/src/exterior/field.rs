use crate::ratpoly::{Polynomial, Rational, SLocalPoly};

/// A vector field `Σ V_i ∂/∂x_i` with s-localized components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    components: Vec<SLocalPoly>,
}

impl VectorField {
    pub fn new(components: Vec<SLocalPoly>) -> Self {
        assert!(!components.is_empty());
        let nvars = components.len();
        assert!(components.iter().all(|c| c.nvars() == nvars));
        VectorField { components }
    }

    pub fn from_polys(components: Vec<Polynomial>) -> Self {
        VectorField::new(components.into_iter().map(SLocalPoly::from).collect())
    }

    /// The Euler field `X = Σ x_i ∂/∂x_i`.
    pub fn euler(nvars: usize) -> Self {
        VectorField::from_polys((0..nvars).map(|i| Polynomial::var(nvars, i)).collect())
    }

    /// `∇s = Σ ∂/∂x_i`.
    pub fn grad_s(nvars: usize) -> Self {
        VectorField::from_polys(vec![Polynomial::one(nvars); nvars])
    }

    /// `X^κ = X - s ∇s / nvars`, the radial field centred at the barycentre.
    pub fn koszul(nvars: usize) -> Self {
        let shift = Polynomial::s(nvars).scale(&Rational::new(1.into(), (nvars as i64).into()));
        VectorField::from_polys(
            (0..nvars)
                .map(|i| &Polynomial::var(nvars, i) - &shift)
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &SLocalPoly {
        &self.components[i]
    }

    pub fn components(&self) -> &[SLocalPoly] {
        &self.components
    }
}
