//! Oracles shared by the integration tests. They avoid the library's own
//! integration, determinant and trace routines so they can check them.
#![allow(dead_code)]

use std::collections::BTreeMap;

use feec_core::ratpoly::int;
use feec_core::{DiffForm, IndexSet, MultiIndex, Polynomial, Rational, TForm};
use num_traits::{One, Zero};
use rand::Rng;

type Terms = BTreeMap<Vec<u32>, Rational>;

fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(1 - u_1 - ... - u_m)^e` expanded.
fn one_minus_sum_pow(m: usize, e: u32) -> Terms {
    let mut base = Terms::new();
    base.insert(vec![0; m], Rational::one());
    for i in 0..m {
        let mut v = vec![0; m];
        v[i] = 1;
        base.insert(v, -Rational::one());
    }
    let mut out = Terms::new();
    out.insert(vec![0; m], Rational::one());
    for _ in 0..e {
        out = mul_terms(&out, &base);
    }
    out
}

/// `∫ f` over `{u >= 0, u_1 + ... + u_m <= 1}` by integrating out the last
/// variable from `0` to `1 - Σ` the others, repeatedly.
pub fn iterated_simplex_integral(f: &Polynomial) -> Rational {
    let mut terms: Terms = f.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect();
    let mut m = f.nvars();
    while m > 0 {
        let mut next = Terms::new();
        for (e, c) in &terms {
            let a = e[m - 1];
            let coeff = c / int(i64::from(a) + 1);
            let mut head = Terms::new();
            head.insert(e[..m - 1].to_vec(), coeff);
            for (e2, c2) in mul_terms(&head, &one_minus_sum_pow(m - 1, a + 1)) {
                *next.entry(e2).or_insert_with(Rational::zero) += c2;
            }
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
        m -= 1;
    }
    terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero)
}

/// `∫_𝐓` of a polynomial top-degree form on the orthant.
pub fn integrate_tbold_oracle(mu: &DiffForm) -> Rational {
    let top = IndexSet::full(mu.nvars());
    let c = mu.coeff(top);
    iterated_simplex_integral(c.as_polynomial().expect("polynomial integrand"))
}

/// `∫_T a` for a top-degree form on `T`, through the parametrization
/// `u ↦ (u, 1 - Σu)`; its orientation differs from that of `T` by `(-1)^n`.
pub fn integrate_t_oracle(a: &TForm) -> Rational {
    let n = a.n();
    if a.degree() != n {
        return Rational::zero();
    }
    let value = iterated_simplex_integral(&a.coeff(IndexSet::full(n)));
    if n % 2 == 1 {
        -value
    } else {
        value
    }
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `dim 𝒫_rΛ^k(T) = C(r+k, k) C(n+r, n-k)`.
pub fn dim_p(n: usize, r: u32, k: usize) -> u64 {
    let (n, r, k) = (n as u64, u64::from(r), k as u64);
    binomial(r + k, k) * binomial(n + r, n - k)
}

/// `dim 𝒫_r⁻Λ^k(T) = C(r+k-1, k) C(n+r, n-k)`, `r >= 1`.
pub fn dim_pminus(n: usize, r: u32, k: usize) -> u64 {
    let (n, r, k) = (n as u64, u64::from(r), k as u64);
    binomial(r + k - 1, k) * binomial(n + r, n - k)
}

/// `dim 𝐇_rΛ^k = C(n+1, k) C(n+r, n)`.
pub fn dim_h(n: usize, r: u32, k: usize) -> u64 {
    let (n, r, k) = (n as u64, u64::from(r), k as u64);
    binomial(n + 1, k) * binomial(n + r, n)
}

/// Whether the pullback of `alpha` to `x_i = 0` vanishes, computed by
/// dropping `dx_i` terms and setting `x_i = 0` in the rest.
pub fn vanishes_on_face(alpha: &DiffForm, i: usize) -> bool {
    let zero = Polynomial::zero(alpha.nvars());
    alpha
        .terms()
        .filter(|(index, _)| !index.contains(i))
        .all(|(_, c)| c.numerator().substitute(i, &zero).is_zero())
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = [-5i64, -3, -2, -1, 1, 2, 3, 4, 7][rng.gen_range(0..9)];
    Rational::new(num.into(), rng.gen_range(1i64..=4).into())
}

/// Random polynomial `k`-form in `nvars` variables with coefficients
/// homogeneous of degree `r`.
pub fn random_form(rng: &mut impl Rng, nvars: usize, k: usize, r: u32) -> DiffForm {
    let sets = IndexSet::all_of_size(nvars, k);
    let mut out = DiffForm::zero(nvars, k);
    if sets.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(1..=5) {
        let mut e = vec![0; nvars];
        for _ in 0..r {
            e[rng.gen_range(0..nvars)] += 1;
        }
        let p = Polynomial::monomial(MultiIndex::new(e), small_rational(rng));
        out = &out + &DiffForm::term(sets[rng.gen_range(0..sets.len())], p);
    }
    out
}

/// Random polynomial `k`-form on `T` (in `n` coordinates) of degree `<= r`.
pub fn random_tform(rng: &mut impl Rng, n: usize, k: usize, r: u32) -> TForm {
    let sets = IndexSet::all_of_size(n, k);
    let mut out = TForm::zero(n, k);
    if sets.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(1..=4) {
        let mut e = vec![0; n];
        for _ in 0..rng.gen_range(0..=r) {
            e[rng.gen_range(0..n)] += 1;
        }
        let p = Polynomial::monomial(MultiIndex::new(e), small_rational(rng));
        out = &out + &TForm::term(sets[rng.gen_range(0..sets.len())], p);
    }
    out
}

/// Equality ignoring the nominal degree of zero forms.
pub fn same(a: &DiffForm, b: &DiffForm) -> bool {
    a == b || (a.is_zero() && b.is_zero())
}
