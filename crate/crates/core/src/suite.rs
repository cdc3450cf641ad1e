//! Self-checks run by `feec verify`: operator identities on seeded random
//! forms, structure of the bases, the Hodge involution, integration
//! consistency, the `T` correspondence and the duality pairings.
//!
//! Work is split into independent [`Cell`]s so callers can run them in
//! parallel; each cell seeds its own generator, so results do not depend on
//! the schedule.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exterior::{DiffForm, IndexSet, SimplexContext, TForm};
use crate::pairing::{integrate_monomial_tbold, verify_duality, verify_h_duality};
use crate::ratpoly::{int, MultiIndex, Polynomial, Rational};
use crate::spaces::{FormSpace, SpaceKind};

pub const DEFAULT_SEED: u64 = 0x5eed_f0f5;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Group {
    Identities,
    Hodge,
    Spaces,
    Integration,
    Correspondence,
    Duality,
}

impl Group {
    pub const ALL: [Group; 6] = [
        Group::Identities,
        Group::Hodge,
        Group::Spaces,
        Group::Integration,
        Group::Correspondence,
        Group::Duality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::Identities => "identities",
            Group::Hodge => "hodge",
            Group::Spaces => "spaces",
            Group::Integration => "integration",
            Group::Correspondence => "correspondence",
            Group::Duality => "duality",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One unit of work: a group of checks at fixed `(n, r)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Cell {
    pub group: Group,
    pub n: usize,
    pub r: u32,
}

/// Outcome of a named check, with the failing cases spelled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub group: Group,
    pub name: String,
    pub n: usize,
    pub r: u32,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random cases per form degree in the identity and integration cells.
    pub cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            cases: 12,
        }
    }
}

/// All cells for one `n` and `r <= max_r`.
pub fn cells(n: usize, max_r: u32) -> Vec<Cell> {
    let mut out = Vec::new();
    for group in Group::ALL {
        let first = match group {
            Group::Correspondence | Group::Duality => 1,
            _ => 0,
        };
        for r in first..=max_r {
            out.push(Cell { group, n, r });
        }
    }
    out
}

/// Runs a cell. Errors from the library are recorded as failures.
pub fn run_cell(cell: Cell, config: SuiteConfig) -> Vec<Check> {
    let seed = config.seed ^ ((cell.n as u64) << 40) ^ (u64::from(cell.r) << 32) ^ ((cell.group as u64) << 24);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Checks::new(cell);
    let ctx = match SimplexContext::new(cell.n) {
        Ok(ctx) => ctx,
        Err(e) => {
            out.record("context", Err(e));
            return out.finish();
        }
    };
    match cell.group {
        Group::Identities => identities(&ctx, cell.r, config.cases, &mut rng, &mut out),
        Group::Hodge => hodge(&ctx, cell.r, &mut out),
        Group::Spaces => spaces(&ctx, cell.r, &mut out),
        Group::Integration => integration(&ctx, cell.r, config.cases, &mut rng, &mut out),
        Group::Correspondence => correspondence(&ctx, cell.r, &mut out),
        Group::Duality => duality(&ctx, cell.r, &mut out),
    }
    out.finish()
}

struct Checks {
    cell: Cell,
    checks: Vec<Check>,
}

impl Checks {
    fn new(cell: Cell) -> Self {
        Checks { cell, checks: Vec::new() }
    }

    fn entry(&mut self, name: &str) -> &mut Check {
        if let Some(i) = self.checks.iter().position(|c| c.name == name) {
            return &mut self.checks[i];
        }
        self.checks.push(Check {
            group: self.cell.group,
            name: name.to_string(),
            n: self.cell.n,
            r: self.cell.r,
            cases: 0,
            failures: Vec::new(),
        });
        self.checks.last_mut().unwrap()
    }

    /// `Ok(None)` passes, `Ok(Some(msg))` fails with `msg`.
    fn record(&mut self, name: &str, outcome: Result<Option<String>>) {
        let check = self.entry(name);
        check.cases += 1;
        match outcome {
            Ok(None) => {}
            Ok(Some(msg)) => check.failures.push(msg),
            Err(e) => check.failures.push(format!("error: {e}")),
        }
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, name: &str, left: T, right: T, context: impl FnOnce() -> String) {
        let outcome = if left == right {
            None
        } else {
            Some(format!("{}: {left:?} != {right:?}", context()))
        };
        self.record(name, Ok(outcome));
    }

    fn finish(self) -> Vec<Check> {
        self.checks
    }
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    let mut num: i64 = rng.gen_range(-6..=6);
    if num == 0 {
        num = 1;
    }
    Rational::new(num.into(), rng.gen_range(1i64..=3).into())
}

fn random_monomial(rng: &mut impl Rng, nvars: usize, degree: u32) -> MultiIndex {
    let mut e = vec![0; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    MultiIndex::new(e)
}

fn random_index(rng: &mut impl Rng, nvars: usize, k: usize) -> IndexSet {
    let all = IndexSet::all_of_size(nvars, k);
    all[rng.gen_range(0..all.len())]
}

/// A random polynomial `k`-form on `nvars` coordinates whose coefficients
/// are homogeneous of degree `r`, with at most `max_terms` terms.
pub fn random_form(rng: &mut impl Rng, nvars: usize, k: usize, r: u32, max_terms: usize) -> DiffForm {
    let mut out = DiffForm::zero(nvars, k);
    if k > nvars {
        return out;
    }
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let p = Polynomial::monomial(random_monomial(rng, nvars, r), small_rational(rng));
        out = &out + &DiffForm::term(random_index(rng, nvars, k), p);
    }
    out
}

/// A random polynomial `k`-form on `T` with coefficients of degree at most
/// `r`.
pub fn random_tform(rng: &mut impl Rng, n: usize, k: usize, r: u32, max_terms: usize) -> TForm {
    let mut out = TForm::zero(n, k);
    if k > n {
        return out;
    }
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let degree = rng.gen_range(0..=r);
        let p = Polynomial::monomial(random_monomial(rng, n, degree), small_rational(rng));
        out = &out + &TForm::term(random_index(rng, n, k), p);
    }
    out
}

/// Equality that ignores the nominal degree of zero forms.
fn same(a: &DiffForm, b: &DiffForm) -> Option<String> {
    let equal = a == b || (a.is_zero() && b.is_zero());
    (!equal).then(|| format!("{a} != {b}"))
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn identities(ctx: &SimplexContext, r: u32, cases: usize, rng: &mut impl Rng, out: &mut Checks) {
    let nvars = ctx.nvars();
    let s = DiffForm::scalar(ctx.s().clone());
    for k in 0..=nvars {
        for _ in 0..cases {
            let a = random_form(rng, nvars, k, r, 4);
            let lhs = &ctx.ds_wedge(&ctx.i_x(&a)) + &ctx.i_x(&ctx.ds_wedge(&a));
            out.record("ds∧ i_X + i_X ds∧ = s", Ok(same(&lhs, &s.wedge(&a))));

            let lhs = &ctx.ds_wedge(&ctx.i_grad_s(&a)) + &ctx.i_grad_s(&ctx.ds_wedge(&a));
            out.record("ds∧ i_∇s + i_∇s ds∧ = n+1", Ok(same(&lhs, &a.scale(&int(nvars as i64)))));

            let weight = int(i64::from(r) + k as i64);
            out.record("L_X = r + k", Ok(same(&ctx.lie_x(&a), &a.scale(&weight))));

            if k < nvars {
                let b = random_form(rng, nvars, k + 1, r, 4);
                let outcome = ctx.inner_g(&ctx.ds_wedge(&a), &b).and_then(|left| {
                    let right = ctx.inner_g(&a, &ctx.i_x(&b))?;
                    Ok((left != right).then(|| format!("<ds∧α,β> = {left:?}, <α,i_Xβ> = {right:?}")))
                });
                out.record("<ds∧α, β>_g = <α, i_X β>_g", outcome);
            }

            let (v, h) = ctx.split(&a);
            out.record("split sums to identity", Ok(same(&(&v + &h), &a)));
            out.record("split is g-orthogonal", ctx.inner_g(&v, &h).map(|ip| (!ip.is_zero()).then(|| format!("{ip:?}"))));
            out.record("split parts are vertical/horizontal", Ok((!ctx.ds_wedge(&v).is_zero() || !ctx.i_x(&h).is_zero()).then(|| format!("split of {a}"))));

            out.record("d∘d = 0", Ok((!a.d().d().is_zero()).then(|| a.to_string())));

            let outcome = ctx.bold_d(&a).and_then(|da| ctx.bold_d(&da)).map(|dda| (!dda.is_zero()).then(|| dda.to_string()));
            out.record("𝐝∘𝐝 = 0", outcome);

            let l = rng.gen_range(0..=nvars - k);
            let rb = rng.gen_range(0..=r);
            let b = random_form(rng, nvars, l, rb, 3);
            let outcome = (|| {
                let lhs = ctx.bold_d(&a.wedge(&b))?;
                let rhs = &ctx.bold_d(&a)?.wedge(&b) + &a.wedge(&ctx.bold_d(&b)?).scale(&sign(k));
                Ok(same(&lhs, &rhs))
            })();
            out.record("𝐝 antiderivation", outcome);

            let outcome = (|| {
                let lhs = ctx.bold_d(&ctx.wedge_ds(&a))?;
                let rhs = ctx.wedge_ds(&ctx.bold_d(&a)?);
                Ok(same(&lhs, &rhs))
            })();
            out.record("𝐝(α∧ds) = 𝐝α∧ds", outcome);

            let outcome = (|| {
                let lhs = ctx.bold_d(&ctx.j_x(&a))?;
                let rhs = ctx.j_x(&ctx.bold_d(&a)?);
                Ok(same(&lhs, &rhs))
            })();
            out.record("𝐝 j_X = j_X 𝐝", outcome);
        }
    }
}

fn hodge(ctx: &SimplexContext, r: u32, out: &mut Checks) {
    let nvars = ctx.nvars();
    for k in 0..=nvars {
        let space = match FormSpace::build(ctx.n(), r, k, SpaceKind::H) {
            Ok(space) => space,
            Err(e) => {
                out.record("*_g∘*_g = ±p", Err(e));
                continue;
            }
        };
        let factor = sign(k * (nvars - k));
        for alpha in space.basis() {
            let twice = ctx.hodge_star(&ctx.hodge_star(alpha));
            let expected = alpha.mul_poly(ctx.p()).scale(&factor);
            out.record("*_g∘*_g = ±p", Ok(same(&twice, &expected)));
            let back = ctx.hodge_star_inverse(&ctx.hodge_star(alpha));
            out.record("*_g^{-1}∘*_g = id", back.map(|b| same(&b, alpha)));
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn spaces(ctx: &SimplexContext, r: u32, out: &mut Checks) {
    let n = ctx.n();
    let (nn, rr) = (n as u64, u64::from(r));
    for k in 0..=n {
        let kk = k as u64;
        for kind in [SpaceKind::P, SpaceKind::Pminus] {
            if kind == SpaceKind::Pminus && r == 0 {
                continue;
            }
            let expected = match kind {
                SpaceKind::P => binomial(rr + kk, kk) * binomial(nn + rr, nn - kk),
                _ => binomial(rr + kk - 1, kk) * binomial(nn + rr, nn - kk),
            };
            let space = match FormSpace::build(n, r, k, kind) {
                Ok(space) => space,
                Err(e) => {
                    out.record("dimension formula", Err(e));
                    continue;
                }
            };
            out.expect_eq("dimension formula", space.dim() as u64, expected, || format!("{} (n={n})", space.label()));
            for alpha in space.basis() {
                let annihilated = match kind {
                    SpaceKind::P => ctx.ds_wedge(alpha),
                    _ => ctx.i_x(alpha),
                };
                out.record("P vertical, P⁻ horizontal", Ok((!annihilated.is_zero()).then(|| alpha.to_string())));
            }
        }
    }
    for k in 0..=n + 1 {
        for kind in [SpaceKind::RingH, SpaceKind::RingP, SpaceKind::RingPminus] {
            if (kind == SpaceKind::RingP && k > n) || (kind == SpaceKind::RingPminus && r == 0) {
                continue;
            }
            match FormSpace::build(n, r, k, kind) {
                Ok(space) => {
                    for alpha in space.basis() {
                        let bad = (0..ctx.nvars()).find(|&i| !alpha.pullback_face(i).is_zero());
                        out.record("ring spaces vanish on faces", Ok(bad.map(|i| format!("{alpha} on face {i}"))));
                    }
                }
                Err(e) => out.record("ring spaces vanish on faces", Err(e)),
            }
        }
    }
}

/// `∫_T` of a top-degree form on `T` through the parametrization
/// `u ↦ (u, 1 - Σu)` of the standard simplex, which reverses orientation
/// when `n` is odd.
fn integrate_t_direct(a: &TForm) -> Rational {
    let n = a.n();
    let mut total = Rational::zero();
    if a.degree() != n {
        return total;
    }
    for (m, c) in a.coeff(IndexSet::full(n)).terms() {
        // ∫_{Δ_n} u^m = ∏ m_i! / (|m| + n)!: the solid-simplex moment in n variables
        total += c * integrate_monomial_tbold(m);
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

fn integration(ctx: &SimplexContext, r: u32, cases: usize, rng: &mut impl Rng, out: &mut Checks) {
    let n = ctx.n();
    let nvars = ctx.nvars();
    for _ in 0..cases {
        let mu = random_form(rng, nvars, nvars, r, 4);
        let outcome = ctx.integrate_tbold(&mu).map(|bold| {
            let weight = int((n + r as usize + 1) as i64);
            let lhs = weight * bold;
            let rhs = integrate_t_direct(&ctx.i_x(&mu).restrict_to_t());
            (lhs != rhs).then(|| format!("{mu}: {lhs} != {rhs}"))
        });
        out.record("(n+r+1)∫_𝐓 μ = ∫_T i_X μ", outcome);

        let k = rng.gen_range(0..=n);
        let r_prime = rng.gen_range(0..=r);
        let a = random_tform(rng, n, k, r, 3);
        let b = random_tform(rng, n, n - k, r_prime, 3);
        let outcome = ctx.pair_t(&a, &b, r, r_prime).map(|paired| {
            let direct = integrate_t_direct(&a.wedge(&b));
            (paired != direct).then(|| format!("({a}, {b}): {paired} != {direct}"))
        });
        out.record("pair_t = ∫_T a∧b", outcome);
    }
}

fn correspondence(ctx: &SimplexContext, r: u32, out: &mut Checks) {
    let n = ctx.n();
    for k in 0..=n {
        for kind in [SpaceKind::P, SpaceKind::Pminus, SpaceKind::RingP, SpaceKind::RingPminus] {
            let space = match FormSpace::build(n, r, k, kind) {
                Ok(space) => space,
                Err(e) => {
                    out.record("from_T ∘ to_T = id", Err(e));
                    continue;
                }
            };
            for alpha in space.basis() {
                let outcome = ctx.to_t(alpha, kind).and_then(|a| {
                    let back = ctx.from_t(&a, kind, r)?;
                    let trace_ok = !kind.is_ring() || a.has_vanishing_trace();
                    Ok(same(&back, alpha).or_else(|| (!trace_ok).then(|| format!("trace of {a}"))))
                });
                out.record("from_T ∘ to_T = id", outcome);
            }
        }

        let outcome = (|| {
            let p = FormSpace::build(n, r, k, SpaceKind::P)?;
            let lower = FormSpace::build(n, r - 1, (k + 1).min(n), SpaceKind::P)?;
            let mut msgs = Vec::new();
            for alpha in p.basis() {
                let da = ctx.bold_d(alpha)?;
                if k < n && !lower.contains(&da) {
                    msgs.push(format!("𝐝({alpha}) ∉ P_{}", r - 1));
                }
                if ctx.to_t(&da, SpaceKind::P)? != ctx.to_t(alpha, SpaceKind::P)?.d() {
                    msgs.push(format!("diagram fails at {alpha}"));
                }
            }
            Ok((!msgs.is_empty()).then(|| msgs.join("; ")))
        })();
        out.record("𝐝 on P commutes with d on T", outcome);

        let outcome = (|| {
            let pm = FormSpace::build(n, r, k, SpaceKind::Pminus)?;
            let upper = FormSpace::build(n, r, k + 1, SpaceKind::Pminus)?;
            let mut msgs = Vec::new();
            for alpha in pm.basis() {
                let sda = ctx.s_bold_d(alpha)?;
                if !upper.contains(&sda) {
                    msgs.push(format!("s𝐝({alpha}) ∉ P⁻_{r}"));
                }
                if sda.restrict_to_t() != alpha.restrict_to_t().d() {
                    msgs.push(format!("diagram fails at {alpha}"));
                }
            }
            Ok((!msgs.is_empty()).then(|| msgs.join("; ")))
        })();
        out.record("s𝐝 on P⁻ commutes with d on T", outcome);

        let outcome = (|| {
            let lower_p = FormSpace::build(n, r - 1, k, SpaceKind::P)?;
            let pm = FormSpace::build(n, r, k, SpaceKind::Pminus)?;
            let p = FormSpace::build(n, r, k, SpaceKind::P)?;
            let mut msgs = Vec::new();
            for alpha in lower_p.basis() {
                let jx = ctx.j_x(alpha);
                if !pm.contains(&jx) || jx.restrict_to_t() != ctx.to_t(alpha, SpaceKind::P)? {
                    msgs.push(format!("j_X at {alpha}"));
                }
                let sa = alpha.mul_poly(ctx.s());
                if !p.contains(&sa) || ctx.to_t(&sa, SpaceKind::P)? != ctx.to_t(alpha, SpaceKind::P)? {
                    msgs.push(format!("s· at {alpha}"));
                }
            }
            for alpha in pm.basis() {
                let wedged = ctx.wedge_ds(alpha);
                if !p.contains(&wedged) || ctx.to_t(&wedged, SpaceKind::P)? != alpha.restrict_to_t() {
                    msgs.push(format!("∧ds at {alpha}"));
                }
            }
            if r >= 2 {
                let lower_pm = FormSpace::build(n, r - 1, k, SpaceKind::Pminus)?;
                for alpha in lower_pm.basis() {
                    let sa = alpha.mul_poly(ctx.s());
                    if !pm.contains(&sa) || sa.restrict_to_t() != alpha.restrict_to_t() {
                        msgs.push(format!("s· at {alpha}"));
                    }
                }
            }
            Ok((!msgs.is_empty()).then(|| msgs.join("; ")))
        })();
        out.record("inclusions P_{r-1} ⊂ P⁻_r ⊂ P_r", outcome);
    }
}

fn duality(ctx: &SimplexContext, r: u32, out: &mut Checks) {
    let n = ctx.n();
    for k in 0..=n {
        let outcome = verify_duality(n, r, k).map(|report| {
            let bad: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.nondegenerate())
                .map(|c| format!("{} × {}: {}×{} rank {}", c.rows_label, c.cols_label, c.rows, c.cols, c.rank))
                .collect();
            (!bad.is_empty()).then(|| bad.join("; "))
        });
        out.record("P⁻/P pairings nondegenerate", outcome);
    }
    for k in 0..=n + 1 {
        let outcome = verify_h_duality(n, r, k).map(|report| {
            let c = &report.checks[0];
            (!c.nondegenerate()).then(|| format!("{} × {}: {}×{} rank {}", c.rows_label, c.cols_label, c.rows, c.cols, c.rank))
        });
        out.record("H pairing nondegenerate", outcome);
    }
}
