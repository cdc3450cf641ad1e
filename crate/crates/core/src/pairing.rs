//! Exact integration over the solid simplex `𝐓 = {x >= 0, s <= 1}` and the
//! pairing matrices `(α, β) ↦ ∫_𝐓 α ∧ β` between form spaces.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{DiffForm, IndexSet, SimplexContext, TForm};
use crate::linalg::Matrix;
use crate::ratpoly::{int, MultiIndex, Rational, SLocalPoly};
use crate::spaces::{FormSpace, SpaceKind};

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `∫_𝐓 x^a dV = ∏ a_i! / (|a| + n + 1)!`, with `n + 1 = a.nvars()`.
pub fn integrate_monomial_tbold(a: &MultiIndex) -> Rational {
    let num = a.exponents().iter().fold(BigInt::one(), |acc, &e| acc * factorial(e));
    Rational::new(num, factorial(a.degree() + a.nvars() as u32))
}

/// `∫_𝐓 x^a s^{-m} dV`: the integrand is homogeneous of degree
/// `|a| - m`, so the radial integral rescales the `m = 0` moment by
/// `(|a| + n + 1)/(|a| - m + n + 1)`.
fn integrate_localized_monomial(a: &MultiIndex, m: u32) -> Result<Rational> {
    let top = i64::from(a.degree()) + a.nvars() as i64;
    let weight = top - i64::from(m);
    if weight <= 0 {
        return Err(Error::range("integrand is not integrable at the origin"));
    }
    Ok(integrate_monomial_tbold(a) * int(top) / int(weight))
}

fn integrate_coefficient(f: &SLocalPoly) -> Result<Rational> {
    let mut total = Rational::zero();
    for (m, c) in f.numerator().terms() {
        total += c * integrate_localized_monomial(m, f.s_power())?;
    }
    Ok(total)
}

fn check_top_degree(ctx: &SimplexContext, mu: &DiffForm) -> Result<()> {
    ctx.check(mu)?;
    if !mu.is_zero() && mu.degree() != ctx.nvars() {
        return Err(Error::DegreeMismatch {
            expected: ctx.nvars(),
            found: mu.degree(),
        });
    }
    Ok(())
}

impl SimplexContext {
    /// `∫_𝐓 μ` for a polynomial `(n+1)`-form.
    pub fn integrate_tbold(&self, mu: &DiffForm) -> Result<Rational> {
        check_top_degree(self, mu)?;
        if !mu.is_polynomial() {
            return Err(Error::NotPolynomial);
        }
        integrate_coefficient(&mu.coeff(IndexSet::full(self.nvars())))
    }

    /// `∫_T a ∧ b`, evaluated as `(-1)^n (n + r + r' + 1) ∫_𝐓 α ∧ β` with
    /// `α = h_r(a)` horizontal and `β = h_{r'}(b) ∧ ds` vertical.
    ///
    /// Coefficients of `a` and `b` may exceed `r`, `r'`; the integrand is
    /// then s-localized but still homogeneous and integrable.
    pub fn pair_t(&self, a: &TForm, b: &TForm, r: u32, r_prime: u32) -> Result<Rational> {
        self.check_t(a)?;
        self.check_t(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(Rational::zero());
        }
        if a.degree() + b.degree() != self.n() {
            return Err(Error::DegreeMismatch {
                expected: self.n() - a.degree().min(self.n()),
                found: b.degree(),
            });
        }
        let alpha = self.h_r(a, r)?;
        let beta = self.wedge_ds(&self.h_r(b, r_prime)?);
        let mu = alpha.wedge(&beta);
        check_top_degree(self, &mu)?;
        let integral = integrate_coefficient(&mu.coeff(IndexSet::full(self.nvars())))?;
        let weight = int((self.n() + r as usize + r_prime as usize + 1) as i64);
        let sign = if self.n().is_multiple_of(2) { int(1) } else { int(-1) };
        Ok(sign * weight * integral)
    }

    /// `∫_𝐓 α ∧ β` for polynomial forms of complementary degree, without
    /// building the product form.
    pub fn pair_tbold(&self, alpha: &DiffForm, beta: &DiffForm) -> Result<Rational> {
        self.check(alpha)?;
        self.check(beta)?;
        let nvars = self.nvars();
        if alpha.is_zero() || beta.is_zero() {
            return Ok(Rational::zero());
        }
        if alpha.degree() + beta.degree() != nvars {
            return Err(Error::DegreeMismatch {
                expected: nvars - alpha.degree().min(nvars),
                found: beta.degree(),
            });
        }
        let mut total = Rational::zero();
        for (i, f) in alpha.terms() {
            let g = beta.coeff(i.complement(nvars));
            if g.is_zero() {
                continue;
            }
            let sign = i.wedge_sign(i.complement(nvars)).unwrap();
            let f = f.as_polynomial().ok_or(Error::NotPolynomial)?;
            let g = g.as_polynomial().ok_or(Error::NotPolynomial)?;
            let mut part = Rational::zero();
            for (ma, ca) in f.terms() {
                for (mb, cb) in g.terms() {
                    part += ca * cb * integrate_monomial_tbold(&ma.mul(mb));
                }
            }
            if sign < 0 {
                total -= part;
            } else {
                total += part;
            }
        }
        Ok(total)
    }
}

/// Exact matrix of `∫_𝐓 α_i ∧ β_j` over two bases.
#[derive(Clone, Debug)]
pub struct PairingMatrix<'a> {
    pub rows: &'a FormSpace,
    pub cols: &'a FormSpace,
    pub entries: Matrix,
}

/// Assembles the pairing matrix; form degrees must sum to `n + 1`.
pub fn pairing_matrix<'a>(a: &'a FormSpace, b: &'a FormSpace) -> Result<PairingMatrix<'a>> {
    if a.nvars() != b.nvars() {
        return Err(Error::DimensionMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    if a.form_degree() + b.form_degree() != a.nvars() {
        return Err(Error::DegreeMismatch {
            expected: a.nvars() - a.form_degree().min(a.nvars()),
            found: b.form_degree(),
        });
    }
    let ctx = SimplexContext::new(a.n())?;
    let mut entries = Matrix::zeros(a.dim(), b.dim());
    for (i, alpha) in a.basis().iter().enumerate() {
        for (j, beta) in b.basis().iter().enumerate() {
            entries.set(i, j, ctx.pair_tbold(alpha, beta)?);
        }
    }
    Ok(PairingMatrix {
        rows: a,
        cols: b,
        entries,
    })
}

/// Gram matrix `∫_𝐓 α_i ∧ *_g α_j = ∫_𝐓 <α_i, α_j>_g vol`.
pub fn gram_matrix(space: &FormSpace) -> Result<Matrix> {
    let ctx = SimplexContext::new(space.n())?;
    let stars: Vec<DiffForm> = space.basis().iter().map(|b| ctx.hodge_star(b)).collect();
    let mut m = Matrix::zeros(space.dim(), space.dim());
    for (i, alpha) in space.basis().iter().enumerate() {
        for (j, star) in stars.iter().enumerate() {
            m.set(i, j, ctx.pair_tbold(alpha, star)?);
        }
    }
    Ok(m)
}

/// Outcome of one pairing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCheck {
    pub rows_label: String,
    pub cols_label: String,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// `None` when the matrix is not square.
    pub determinant: Option<Rational>,
}

impl PairingCheck {
    pub fn from_matrix(m: &PairingMatrix<'_>) -> Self {
        let square = m.entries.is_square();
        PairingCheck {
            rows_label: m.rows.label(),
            cols_label: m.cols.label(),
            rows: m.entries.rows(),
            cols: m.entries.cols(),
            rank: m.entries.rank(),
            determinant: square.then(|| m.entries.determinant()),
        }
    }

    /// Square with nonzero determinant. The empty matrix counts as
    /// nondegenerate.
    pub fn nondegenerate(&self) -> bool {
        self.determinant.as_ref().is_some_and(|d| !d.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub n: usize,
    pub r: u32,
    pub k: usize,
    pub checks: Vec<PairingCheck>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(PairingCheck::nondegenerate)
    }
}

fn check_pair(n: usize, left: (u32, usize, SpaceKind), right: (u32, usize, SpaceKind)) -> Result<PairingCheck> {
    let a = FormSpace::build(n, left.0, left.1, left.2)?;
    let b = FormSpace::build(n, right.0, right.1, right.2)?;
    Ok(PairingCheck::from_matrix(&pairing_matrix(&a, &b)?))
}

/// `𝐏_r⁻Λ^k` against `ring𝐏_{r+k}Λ^{n-k}` and `𝐏_rΛ^k` against
/// `ring𝐏⁻_{r+k+1}Λ^{n-k}`.
pub fn verify_duality(n: usize, r: u32, k: usize) -> Result<DualityReport> {
    if k > n {
        return Err(Error::range(format!("form degree k = {k} exceeds n = {n}")));
    }
    let rk = r + k as u32;
    let checks = vec![
        check_pair(n, (r, k, SpaceKind::Pminus), (rk, n - k, SpaceKind::RingP))?,
        check_pair(n, (r, k, SpaceKind::P), (rk + 1, n - k, SpaceKind::RingPminus))?,
    ];
    Ok(DualityReport { n, r, k, checks })
}

/// `𝐇_rΛ^k` against `ring𝐇_{r+k}Λ^{n+1-k}`, `0 <= k <= n + 1`.
pub fn verify_h_duality(n: usize, r: u32, k: usize) -> Result<DualityReport> {
    if k > n + 1 {
        return Err(Error::range(format!("form degree k = {k} exceeds n + 1 = {}", n + 1)));
    }
    let check = check_pair(n, (r, k, SpaceKind::H), (r + k as u32, n + 1 - k, SpaceKind::RingH))?;
    Ok(DualityReport {
        n,
        r,
        k,
        checks: vec![check],
    })
}

/// The two spaces paired in the duality statement for `family`
/// (`H`, `P` or `Pminus`; ring kinds select their base family):
///
/// * `𝐏_r⁻Λ^k` and `ring𝐏_{r+k}Λ^{n-k}`, `k <= n`;
/// * `𝐏_rΛ^k` and `ring𝐏⁻_{r+k+1}Λ^{n-k}`, `k <= n`;
/// * `𝐇_rΛ^k` and `ring𝐇_{r+k}Λ^{n+1-k}`, `k <= n + 1`.
pub fn duality_spaces(n: usize, r: u32, k: usize, family: SpaceKind) -> Result<(FormSpace, FormSpace)> {
    let family = family.base();
    let max_k = if family == SpaceKind::H { n + 1 } else { n };
    if k > max_k {
        return Err(Error::range(format!("form degree k = {k} exceeds {max_k} for n = {n}")));
    }
    let rk = r + k as u32;
    let (partner_r, partner_k) = match family {
        SpaceKind::H => (rk, n + 1 - k),
        SpaceKind::P => (rk + 1, n - k),
        _ => (rk, n - k),
    };
    let partner = match family {
        SpaceKind::H => SpaceKind::RingH,
        SpaceKind::P => SpaceKind::RingPminus,
        _ => SpaceKind::RingP,
    };
    Ok((
        FormSpace::build(n, r, k, family)?,
        FormSpace::build(n, partner_r, partner_k, partner)?,
    ))
}

/// The check selected by `family` for one `(n, r, k)` cell.
pub fn verify_family(n: usize, r: u32, k: usize, family: SpaceKind) -> Result<PairingCheck> {
    let (a, b) = duality_spaces(n, r, k, family)?;
    Ok(PairingCheck::from_matrix(&pairing_matrix(&a, &b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{frac, Polynomial};
    use crate::spaces::{basis_h, basis_pminus};

    #[test]
    fn moments() {
        assert_eq!(integrate_monomial_tbold(&MultiIndex::new(vec![0, 0, 0])), frac(1, 6));
        assert_eq!(integrate_monomial_tbold(&MultiIndex::new(vec![1, 0, 0])), frac(1, 24));
        assert_eq!(integrate_monomial_tbold(&MultiIndex::new(vec![1, 1, 0])), frac(1, 120));
    }

    #[test]
    fn top_form_integrals() {
        let ctx = SimplexContext::new(2).unwrap();
        assert_eq!(ctx.integrate_tbold(ctx.vol()).unwrap(), frac(1, 6));
        let xvol = ctx.vol().mul_poly(&Polynomial::var(3, 0));
        assert_eq!(ctx.integrate_tbold(&xvol).unwrap(), frac(1, 24));
        assert_eq!(ctx.integrate_tbold(&DiffForm::zero(3, 3)).unwrap(), frac(0, 1));
        assert!(ctx.integrate_tbold(&DiffForm::dx(3, 0)).is_err());
        assert_eq!(ctx.integrate_tbold(&ctx.vol().div_s_pow(1)), Err(Error::NotPolynomial));
    }

    #[test]
    fn localized_integral_matches_polynomial_one() {
        // s * vol / s = vol
        let ctx = SimplexContext::new(2).unwrap();
        let f = SLocalPoly::new(&Polynomial::var(3, 0) * ctx.s(), 1);
        let g = SLocalPoly::from(Polynomial::var(3, 0));
        assert_eq!(f, g);
        let h = SLocalPoly::new(Polynomial::var(3, 0).pow(2), 1);
        // ∫ x^2/s over the solid simplex = (2!/5!) * 5/4
        assert_eq!(integrate_coefficient(&h).unwrap(), frac(1, 48));
    }

    #[test]
    fn pair_t_example() {
        let ctx = SimplexContext::new(2).unwrap();
        let t = |i| TForm::dx(2, i);
        let tv = |i| Polynomial::var(2, i);
        let a = &t(0).mul_poly(&tv(1)) - &t(1).mul_poly(&tv(0));
        assert_eq!(ctx.pair_t(&a, &t(0), 1, 0).unwrap(), frac(1, 6));
        assert_eq!(ctx.pair_t(&TForm::zero(2, 1), &t(0), 1, 0).unwrap(), frac(0, 1));
    }

    #[test]
    fn pairing_examples() {
        let a = basis_pminus(2, 1, 1).unwrap();
        let b = FormSpace::build(2, 2, 1, SpaceKind::RingP).unwrap();
        let m = pairing_matrix(&a, &b).unwrap();
        assert_eq!((m.entries.rows(), m.entries.cols()), (3, 3));
        assert!(!m.entries.determinant().is_zero());
        assert!(pairing_matrix(&a, &a).is_err());

        let h = basis_h(2, 1, 1).unwrap();
        let g = gram_matrix(&h).unwrap();
        assert!(g.is_positive_definite());
    }

    #[test]
    fn duality_reports() {
        assert!(verify_duality(2, 1, 1).unwrap().passed());
        assert!(verify_duality(1, 1, 0).unwrap().passed());
        assert!(verify_h_duality(2, 1, 3).unwrap().passed());
    }
}
