//! The homogeneous polynomial form spaces on the orthant:
//!
//! * `𝐇_rΛ^k`: all `k`-forms with coefficients homogeneous of degree `r`;
//! * `𝐏_rΛ^k = ds ∧ 𝐇_rΛ^k` (vertical, so these are `(k+1)`-forms);
//! * `𝐏_r⁻Λ^k = i_X 𝐇_{r-1}Λ^{k+1}` (horizontal `k`-forms);
//!
//! and their subspaces with vanishing trace on every face `x_i = 0`.
//! Restriction to `T` identifies `𝐏_r⁻Λ^k` with `𝒫_r⁻Λ^k(T)` and
//! `i^* ∘ j_X` identifies `𝐏_rΛ^k` with `𝒫_rΛ^k(T)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exterior::{DiffForm, IndexSet, SimplexContext, TForm};
use crate::linalg::{Insertion, SparseEchelon, SparseVec};
use crate::ratpoly::{MultiIndex, Polynomial, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SpaceKind {
    H,
    P,
    Pminus,
    RingH,
    RingP,
    RingPminus,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 6] = [
        SpaceKind::H,
        SpaceKind::P,
        SpaceKind::Pminus,
        SpaceKind::RingH,
        SpaceKind::RingP,
        SpaceKind::RingPminus,
    ];

    pub fn is_ring(self) -> bool {
        matches!(self, SpaceKind::RingH | SpaceKind::RingP | SpaceKind::RingPminus)
    }

    /// The full space a ring space sits in.
    pub fn base(self) -> SpaceKind {
        match self {
            SpaceKind::RingH => SpaceKind::H,
            SpaceKind::RingP => SpaceKind::P,
            SpaceKind::RingPminus => SpaceKind::Pminus,
            other => other,
        }
    }

    pub fn ring(self) -> SpaceKind {
        match self {
            SpaceKind::H => SpaceKind::RingH,
            SpaceKind::P => SpaceKind::RingP,
            SpaceKind::Pminus => SpaceKind::RingPminus,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::H => "H",
            SpaceKind::P => "P",
            SpaceKind::Pminus => "Pminus",
            SpaceKind::RingH => "ringH",
            SpaceKind::RingP => "ringP",
            SpaceKind::RingPminus => "ringPminus",
        }
    }

    /// Degree of the member forms of the `(k, ·)` space of this kind.
    pub fn form_degree(self, k: usize) -> usize {
        match self.base() {
            SpaceKind::P => k + 1,
            _ => k,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpaceKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::range(format!("unknown space `{s}` (expected H, P, Pminus, ringH, ringP or ringPminus)")))
    }
}

pub(crate) type FormKey = (IndexSet, MultiIndex);

/// Sparse coordinate vector of a polynomial form.
pub(crate) fn form_vector(alpha: &DiffForm) -> Result<SparseVec<FormKey>> {
    Ok(alpha.monomial_terms()?.into_iter().collect())
}

/// A finite-dimensional space of homogeneous polynomial forms, given by an
/// exactly independent basis.
#[derive(Clone, Debug)]
pub struct FormSpace {
    n: usize,
    k: usize,
    r: u32,
    kind: SpaceKind,
    basis: Vec<DiffForm>,
    echelon: OnceLock<SparseEchelon<FormKey>>,
}

impl FormSpace {
    fn new(n: usize, k: usize, r: u32, kind: SpaceKind, basis: Vec<DiffForm>) -> Self {
        FormSpace {
            n,
            k,
            r,
            kind,
            basis,
            echelon: OnceLock::new(),
        }
    }

    /// Builds the space of the given kind.
    pub fn build(n: usize, r: u32, k: usize, kind: SpaceKind) -> Result<FormSpace> {
        let base = match kind.base() {
            SpaceKind::H => basis_h(n, r, k)?,
            SpaceKind::P => basis_p(n, r, k)?,
            _ => basis_pminus(n, r, k)?,
        };
        Ok(if kind.is_ring() { ring_subspace(&base) } else { base })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    /// Degree of the member forms (`k + 1` for `𝐏` spaces).
    pub fn form_degree(&self) -> usize {
        self.kind.form_degree(self.k)
    }

    pub fn basis(&self) -> &[DiffForm] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Short name such as `P^-_2 Λ^1`.
    pub fn label(&self) -> String {
        let (ring, base) = if self.kind.is_ring() { ("ring", self.kind.base()) } else { ("", self.kind) };
        let sym = match base {
            SpaceKind::H => "H",
            SpaceKind::P => "P",
            _ => "P^-",
        };
        format!("{ring}{sym}_{} Λ^{}", self.r, self.k)
    }

    fn echelon(&self) -> &SparseEchelon<FormKey> {
        self.echelon.get_or_init(|| {
            let mut e = SparseEchelon::new();
            for b in &self.basis {
                let v = form_vector(b).expect("basis forms are polynomial");
                let outcome = e.insert(v);
                debug_assert_eq!(outcome, Insertion::Independent);
            }
            e
        })
    }

    /// Coordinates of `alpha` in the basis, or `None` if it lies outside
    /// the space.
    pub fn member(&self, alpha: &DiffForm) -> Result<Option<Vec<Rational>>> {
        if alpha.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                left: self.nvars(),
                right: alpha.nvars(),
            });
        }
        if alpha.is_zero() {
            return Ok(Some(vec![Rational::from_integer(0.into()); self.dim()]));
        }
        if alpha.degree() != self.form_degree() {
            return Err(Error::DegreeMismatch {
                expected: self.form_degree(),
                found: alpha.degree(),
            });
        }
        let Ok(v) = form_vector(alpha) else {
            return Ok(None);
        };
        Ok(self.echelon().express(v).map(|coords| {
            let mut out = vec![Rational::from_integer(0.into()); self.dim()];
            for (i, c) in coords {
                out[i] = c;
            }
            out
        }))
    }

    pub fn contains(&self, alpha: &DiffForm) -> bool {
        matches!(self.member(alpha), Ok(Some(_)))
    }

    /// `Σ c_i b_i`.
    pub fn combination(&self, coords: &[Rational]) -> DiffForm {
        assert_eq!(coords.len(), self.dim());
        let mut out = DiffForm::zero(self.nvars(), self.form_degree());
        for (c, b) in coords.iter().zip(&self.basis) {
            out = &out + &b.scale(c);
        }
        out
    }
}

fn check_k(n: usize, k: usize, max: usize) -> Result<()> {
    if k > max {
        Err(Error::range(format!("form degree k = {k} exceeds {max} for n = {n}")))
    } else {
        Ok(())
    }
}

/// Keeps the generators that are independent of the ones before them.
fn independent_subset(generators: impl IntoIterator<Item = DiffForm>) -> Vec<DiffForm> {
    let mut e = SparseEchelon::new();
    let mut out = Vec::new();
    for g in generators {
        let v = form_vector(&g).expect("generators are polynomial");
        if e.insert(v) == Insertion::Independent {
            out.push(g);
        }
    }
    out
}

/// All `x^a dx_I` with `|a| = r`, `|I| = k`.
fn monomial_forms(n: usize, r: u32, k: usize) -> Vec<DiffForm> {
    let nvars = n + 1;
    let monomials = MultiIndex::all_of_degree(nvars, r);
    let mut out = Vec::new();
    for index in IndexSet::all_of_size(nvars, k) {
        for m in &monomials {
            out.push(DiffForm::term(index, Polynomial::monomial(m.clone(), Rational::from_integer(1.into()))));
        }
    }
    out
}

/// `𝐇_rΛ^k`, `0 <= k <= n + 1`.
pub fn basis_h(n: usize, r: u32, k: usize) -> Result<FormSpace> {
    SimplexContext::new(n)?;
    check_k(n, k, n + 1)?;
    Ok(FormSpace::new(n, k, r, SpaceKind::H, monomial_forms(n, r, k)))
}

/// `𝐏_rΛ^k = ds ∧ 𝐇_rΛ^k`, `0 <= k <= n`.
pub fn basis_p(n: usize, r: u32, k: usize) -> Result<FormSpace> {
    let ctx = SimplexContext::new(n)?;
    check_k(n, k, n)?;
    let gens = monomial_forms(n, r, k).into_iter().map(|b| ctx.ds_wedge(&b));
    Ok(FormSpace::new(n, k, r, SpaceKind::P, independent_subset(gens)))
}

/// `𝐏_r⁻Λ^k = i_X 𝐇_{r-1}Λ^{k+1}`, `r >= 1`, `0 <= k <= n + 1`.
pub fn basis_pminus(n: usize, r: u32, k: usize) -> Result<FormSpace> {
    let ctx = SimplexContext::new(n)?;
    check_k(n, k, n + 1)?;
    if r == 0 {
        return Err(Error::ExcludedR0);
    }
    let basis = if k + 1 > n + 1 {
        Vec::new()
    } else {
        let gens = monomial_forms(n, r - 1, k + 1).into_iter().map(|b| ctx.i_x(&b));
        independent_subset(gens)
    };
    Ok(FormSpace::new(n, k, r, SpaceKind::Pminus, basis))
}

/// Combinations `c` with `Σ c_j v_j = 0`, one per dependent input, each
/// with coefficient 1 on that input.
pub(crate) fn kernel_combinations<K: Ord + Clone>(images: Vec<SparseVec<K>>) -> Vec<SparseVec<usize>> {
    let mut e = SparseEchelon::new();
    let mut out = Vec::new();
    for (j, v) in images.into_iter().enumerate() {
        if let Insertion::Dependent(mut c) = e.insert(v) {
            for value in c.values_mut() {
                *value = -value.clone();
            }
            c.insert(j, Rational::from_integer(1.into()));
            out.push(c);
        }
    }
    out
}

/// The subspace of forms whose pullback to every face `x_i = 0` vanishes.
pub fn ring_subspace(space: &FormSpace) -> FormSpace {
    let nvars = space.nvars();
    let images: Vec<SparseVec<(usize, IndexSet, MultiIndex)>> = space
        .basis
        .iter()
        .map(|b| {
            let mut v = SparseVec::new();
            for i in 0..nvars {
                for ((index, m), c) in b.pullback_face(i).monomial_terms().expect("polynomial basis") {
                    v.insert((i, index, m), c);
                }
            }
            v
        })
        .collect();
    let basis = kernel_combinations(images)
        .into_iter()
        .map(|c| {
            let mut out = DiffForm::zero(nvars, space.form_degree());
            for (j, value) in c {
                out = &out + &space.basis[j].scale(&value);
            }
            out
        })
        .collect();
    FormSpace::new(space.n, space.k, space.r, space.kind.ring(), basis)
}

impl SimplexContext {
    /// The isomorphism to forms on `T`: `i^*` on `𝐏⁻` (and `𝐇`), `i^* ∘ j_X`
    /// on `𝐏`.
    pub fn to_t(&self, alpha: &DiffForm, kind: SpaceKind) -> Result<TForm> {
        self.check(alpha)?;
        Ok(match kind.base() {
            SpaceKind::P => self.j_x(alpha).restrict_to_t(),
            _ => alpha.restrict_to_t(),
        })
    }

    /// Inverse of [`SimplexContext::to_t`]: `h_r` for `𝐏⁻`, `h_r(·) ∧ ds`
    /// for `𝐏`. Fails with `NotPolynomialResult` when `a` is outside
    /// `𝒫_r⁻Λ^k(T)` (resp. `𝒫_rΛ^k(T)`).
    pub fn from_t(&self, a: &TForm, kind: SpaceKind, r: u32) -> Result<DiffForm> {
        self.check_t(a)?;
        let out = match kind.base() {
            SpaceKind::P => self.wedge_ds(&self.h_r(a, r)?),
            SpaceKind::Pminus => self.h_r(a, r)?,
            SpaceKind::H => return self.lift_t_representative(a, r),
            _ => unreachable!(),
        };
        if out.is_polynomial() {
            Ok(out)
        } else {
            Err(Error::NotPolynomialResult)
        }
    }
}
