//! Cycles on products of flag varieties and powers of the quadric: incidence
//! classes, the classes `η_i`, `θ_i`, `θ'_i` and the correspondence `α_i`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quadpow::{basis, delta, rho, Correspondence, QuadBasis, QuadCycle, QuadMonomial};
use crate::schubert::{
    chern_taut, class_o1, class_w, class_z, from_quadric, push_pull, push_pull_h, FlagCycle, FlagModel, SchubertModels,
};

mod mixed;

pub use mixed::MixedCycle;

fn check_rank(model: &FlagModel, i: u32, low: u32) -> Result<()> {
    let d = model.context().d();
    if i < low || i > d {
        return Err(Error::OutOfRange(alloc::format!("index {i} outside {low}..={d}")));
    }
    Ok(())
}

/// The class of the incidence variety `{(U, x) : x ∈ U}` in `G_i × X`.
///
/// Assembled in the product basis from the `Z` and `W` classes, with the
/// integral correction in even dimension, and then checked against the
/// pull-push definition on every basis class of `X`.
pub fn incidence_class(model: &FlagModel, i: u32) -> Result<MixedCycle<'_>> {
    check_rank(model, i, 0)?;
    let ctx = model.context();
    let (n, d) = (ctx.n(), ctx.d());
    let gi = model.flag(&[i])?;
    let top_l = || -> Result<QuadCycle> {
        if ctx.is_even() && n % 4 == 0 {
            QuadCycle::l_prime(ctx)
        } else {
            QuadCycle::l(ctx, d)
        }
    };
    let mut out = MixedCycle::zero(model, gi, 1);
    for m in 0..=d {
        let term = MixedCycle::external(&class_z(model, i, n - i - m)?, &QuadCycle::h_power(ctx, m))?;
        out = out.add(&term)?;
    }
    for m in i..=d {
        let l = if m == d { top_l()? } else { QuadCycle::l(ctx, m)? };
        out = out.add(&MixedCycle::external(&class_w(model, i, m - i)?, &l)?)?;
    }
    if ctx.is_even() {
        let correction = MixedCycle::external(&class_z(model, i, n - i - d)?, &top_l()?)?;
        out = out.sub(&correction.scale(2))?;
    }
    for b in basis(ctx) {
        let x = QuadCycle::basis_element(ctx, b)?;
        if out.act_on_quad(&x)? != push_pull(model, i, &x)? {
            return Err(Error::Inconsistent(alloc::format!("incidence class of G_{i} on {x}")));
        }
    }
    Ok(out)
}

/// Product of the pullbacks of the incidence class along the `m` projections
/// `G_i × X^m → G_i × X`.
fn incidence_power(model: &FlagModel, i: u32, m: usize) -> Result<MixedCycle<'_>> {
    let f = incidence_class(model, i)?;
    let mut out = MixedCycle::one(model, f.index(), m);
    for slot in 0..m {
        out = out.mul(&f.pull_proj(m, &[slot])?)?;
    }
    Ok(out)
}

/// `η_i` on `G_i × X^i`.
pub fn eta(model: &FlagModel, i: u32) -> Result<MixedCycle<'_>> {
    check_rank(model, i, 1)?;
    incidence_power(model, i, i as usize)
}

/// `θ_i` on `G_i × X^{i+1}`: the tuples of points lying on a common
/// `i`-dimensional isotropic subspace.
pub fn theta(model: &FlagModel, i: u32) -> Result<MixedCycle<'_>> {
    check_rank(model, i, 1)?;
    incidence_power(model, i, i as usize + 1)
}

/// `Σ` over the components of `G_i` of `f(component)`.
fn over_components<F>(models: &SchubertModels, i: u32, arity: usize, f: F) -> Result<QuadCycle>
where
    F: Fn(&FlagModel) -> Result<QuadCycle>,
{
    let mut out = QuadCycle::zero(models.context(), arity);
    for model in models.components(i) {
        out = out.add(&f(model)?)?;
    }
    Ok(out)
}

/// The image of `Z^i_{n-i}` under `θ_i` viewed as a correspondence
/// `G_i ⇝ X^{i+1}`.
pub fn theta_action(models: &SchubertModels, i: u32) -> Result<QuadCycle> {
    check_rank(models.primary(), i, 1)?;
    let n = models.context().n();
    over_components(models, i, i as usize + 1, |model| theta(model, i)?.act_on_flag(&class_z(model, i, n - i)?))
}

/// The action of [`theta_action`] on `x`, evaluated instead through
/// `G_i × X^i`: `p_*((π_*π^*(x) · Z^i_{n-i}) × [X^i] · η_i)`.
pub fn theta_action_via_eta(models: &SchubertModels, i: u32, x: &QuadCycle) -> Result<QuadCycle> {
    check_rank(models.primary(), i, 1)?;
    let n = models.context().n();
    over_components(models, i, i as usize, |model| {
        let z = push_pull(model, i, x)?.mul(&class_z(model, i, n - i)?)?;
        eta(model, i)?.act_on_flag(&z)
    })
}

/// `α_i = (θ_i)_*(Z^i_{n-i}) + ρ_i` as a correspondence `X ⇝ X^i`.
pub fn alpha(models: &SchubertModels, i: u32) -> Result<Correspondence> {
    let cycle = theta_action(models, i)?.add(&rho(models.context(), i)?)?;
    Correspondence::new(cycle, 1)
}

/// `θ'_i` modulo 2, stored on `F(0,i) × X²`: the product of the pullback of
/// `Δ_1` along `(x, y, f) ↦ (x, π_0 f)` and of the incidence class along
/// `(x, y, f) ↦ (π_i f, y)`.
pub fn theta_prime(model: &FlagModel, i: u32) -> Result<MixedCycle<'_>> {
    check_rank(model, i, 1)?;
    let ctx = model.context();
    let flag = model.flag(&[0, i])?;
    let mut first = MixedCycle::zero(model, flag, 2);
    for (m, &c) in delta(ctx, 1)?.mod2().terms() {
        let [a, b] = [m.factors()[0], m.factors()[1]];
        let on_flag = from_quadric(model, &QuadCycle::basis_element(ctx, b)?)?.pullback(flag)?;
        let left = QuadCycle::from_monomial(ctx, QuadMonomial::new(&[a, QuadBasis::H(0)]), c);
        first = first.add(&MixedCycle::external(&on_flag, &left)?)?;
    }
    let second = incidence_class(model, i)?.pullback_flag(flag)?.pull_proj(2, &[1])?;
    Ok(first.mul(&second)?.mod2())
}

/// `π_{(i-1̲,i)*} π_{(i-1,i̲)}^*` from `G_i` to `G_{i-1}`.
pub fn down_up<'m>(x: &FlagCycle<'m>, i: u32) -> Result<FlagCycle<'m>> {
    let model = x.model();
    check_rank(model, i, 1)?;
    x.pullback(model.flag(&[i - 1, i])?)?.pushforward(model.flag(&[i - 1])?)
}

/// `σ^j_{i-1} = π_*π^*(z^i_{n-2i+j})` on `G_{i-1}`, modulo 2.
pub fn sigma(model: &FlagModel, i: u32, j: u32) -> Result<FlagCycle<'_>> {
    let n = model.context().n();
    if j > i || n < 2 * i {
        return Err(Error::OutOfRange(alloc::format!("σ^{j} below G_{i}")));
    }
    Ok(down_up(&class_z(model, i, n - 2 * i + j)?, i)?.mod2())
}

/// [`sigma`] summed over the components of `G_i`, in the plus model.
pub fn sigma_summed(models: &SchubertModels, i: u32, j: u32) -> Result<FlagCycle<'_>> {
    let primary = models.primary();
    let mut out = FlagCycle::zero(primary, primary.flag(&[i.saturating_sub(1)])?).mod2();
    for model in models.components(i) {
        out = out.add(&sigma(model, i, j)?.transport(primary)?)?;
    }
    Ok(out)
}

/// `p_{X^i*}(w^i_{k-i} · z^i_{n-i} · η_i)` modulo 2, for `1 ≤ i ≤ k ≤ d`.
pub fn eta_image(models: &SchubertModels, i: u32, k: u32) -> Result<QuadCycle> {
    check_rank(models.primary(), i, 1)?;
    if k < i || k > models.context().d() {
        return Err(Error::OutOfRange(alloc::format!("k = {k} with i = {i}")));
    }
    let n = models.context().n();
    let out = over_components(models, i, i as usize, |model| {
        let weight = class_w(model, i, k - i)?.mul(&class_z(model, i, n - i)?)?.mod2();
        eta(model, i)?.mod2().act_on_flag(&weight)
    })?;
    Ok(out.mod2())
}

/// The expansion of [`eta_image`] through `G_{i-1}`:
/// `Σ_m Σ_j p_*(w^{i-1}_{k-m-j} · σ^j_{i-1} · z^{i-1}_{n-i+1} · η_{i-1}) × h^m`.
///
/// `σ^j_{i-1}` is a pushforward from `G_i`, so for `i = d` in even dimension
/// the contributions of both components are added.
pub fn eta_image_expansion(models: &SchubertModels, i: u32, k: u32) -> Result<QuadCycle> {
    check_rank(models.primary(), i, 2)?;
    let ctx = models.context();
    let (n, d) = (ctx.n(), ctx.d());
    if k < i || k > d {
        return Err(Error::OutOfRange(alloc::format!("k = {k} with i = {i}")));
    }
    let out = over_components(models, i, i as usize, |model| {
        let lower = eta(model, i - 1)?.mod2();
        let z = class_z(model, i - 1, n - i + 1)?;
        let mut out = QuadCycle::zero(ctx, i as usize).mod2();
        for m in 0..=k {
            for j in i.saturating_sub(m)..=(k - m).min(i) {
                let weight = class_w(model, i - 1, k - m - j)?.mul(&sigma(model, i, j)?)?.mul(&z)?;
                let piece = lower.act_on_flag(&weight)?.external(&QuadCycle::h_power(ctx, m))?;
                out = out.add(&piece)?;
            }
        }
        Ok(out)
    })?;
    Ok(out.mod2())
}

/// Both sides of the reduction from `G_i` to `G_{i-1}`, modulo 2, on
/// `G_i × X^i`: `z^i_{n-i} · η_i`, and the pushforward from `F(i-1,i) × X^i`
/// of the incidence class on the last factor times `z^{i-1}_{n-i+1} · η_{i-1}`
/// on the others.
pub fn eta_reduction_sides(model: &FlagModel, i: u32) -> Result<(MixedCycle<'_>, MixedCycle<'_>)> {
    check_rank(model, i, 2)?;
    let n = model.context().n();
    let m = i as usize;
    let lhs = eta(model, i)?.mul_flag(&class_z(model, i, n - i)?)?.mod2();
    let flag = model.flag(&[i - 1, i])?;
    let last = incidence_class(model, i)?.pullback_flag(flag)?.pull_proj(m, &[m - 1])?;
    let positions: Vec<usize> = (0..m - 1).collect();
    let rest = eta(model, i - 1)?
        .mul_flag(&class_z(model, i - 1, n - i + 1)?)?
        .pullback_flag(flag)?
        .pull_proj(m, &positions)?;
    let rhs = last.mul(&rest)?.pushforward_flag(model.flag(&[i])?)?.mod2();
    Ok((lhs, rhs))
}

/// Both sides of the relation between the two incidence classes pulled back
/// to `F(i-1,i) × X`, modulo 2: `[F(i-1,0)]` and
/// `(c_1(𝒪(1)) × 1 + 1 × h) · [F(i,0)]`.
pub fn incidence_relation_sides(model: &FlagModel, i: u32) -> Result<(MixedCycle<'_>, MixedCycle<'_>)> {
    check_rank(model, i, 1)?;
    let ctx = model.context();
    let flag = model.flag(&[i - 1, i])?;
    let lhs = incidence_class(model, i - 1)?.pullback_flag(flag)?.mod2();
    let factor = MixedCycle::external(&class_o1(model, i)?, &QuadCycle::unit(ctx, 1))?
        .add(&MixedCycle::external(&FlagCycle::one(model, flag), &QuadCycle::h_power(ctx, 1))?)?;
    let rhs = factor.mul(&incidence_class(model, i)?.pullback_flag(flag)?)?.mod2();
    Ok((lhs, rhs))
}

/// The coordinate of `q` on `l_m`-dual classes in the last factor:
/// `p_*(q · [X^{a-1}] × l_m)` on the first `a - 1` factors.
pub fn top_right_coordinate(q: &QuadCycle, m: u32) -> Result<QuadCycle> {
    let a = q.arity();
    if a == 0 {
        return Err(Error::ArityMismatch { expected: 1, found: 0 });
    }
    let ctx = q.context();
    let probe = QuadCycle::unit(ctx, a - 1).external(&QuadCycle::l(ctx, m)?)?;
    let keep: Vec<usize> = (0..a - 1).collect();
    q.mul(&probe)?.push_proj(&keep)
}

/// `deg(Z^i_{n-i} · Π_l Z^i_{n-i-a_l} · Σ_{j=0}^{i-m} W^i_{k-m-j} · c_j(T_i))`
/// modulo 2, where `W^i_t` stands for `π_*π^*(h^{t+i})` for every `t`.
pub fn shifted_degree(models: &SchubertModels, i: u32, k: u32, m: u32, a: &[u32]) -> Result<i64> {
    let model = models.primary();
    let d = model.context().d();
    let n = model.context().n();
    let valid = i >= 1 && i < d && k > i && k <= d && (1..=i).contains(&m);
    if !valid || a.len() != i as usize || a.iter().any(|&x| x > d) {
        return Err(Error::OutOfRange(alloc::format!("i = {i}, k = {k}, m = {m}, a = {a:?}")));
    }
    let gi = model.flag(&[i])?;
    let mut product = class_z(model, i, n - i)?;
    for &x in a {
        product = product.mul(&class_z(model, i, n - i - x)?)?;
    }
    let mut sum = FlagCycle::zero(model, gi);
    for j in 0..=(i - m) {
        if k < m + j {
            continue;
        }
        let w = push_pull_h(model, i, k - m - j + i)?;
        sum = sum.add(&w.mul(&chern_taut(model, i, j)?)?)?;
    }
    Ok(product.mul(&sum)?.mod2().deg())
}

/// `deg(Z^i_{n-i} · Π_l Z^i_{n-i-a_l} · W^i_{k-i})` modulo 2, the pairing of
/// [`eta_image`] against `l_{a_1} × ⋯ × l_{a_i}`.
pub fn eta_image_degree(models: &SchubertModels, i: u32, k: u32, a: &[u32]) -> Result<i64> {
    let ctx = models.context();
    let (n, d) = (ctx.n(), ctx.d());
    check_rank(models.primary(), i, 1)?;
    if k < i || k > d || a.len() != i as usize || a.iter().any(|&x| x > d) {
        return Err(Error::OutOfRange(alloc::format!("i = {i}, k = {k}, a = {a:?}")));
    }
    let mut total = 0;
    for model in models.components(i) {
        let mut product = class_z(model, i, n - i)?.mul(&class_w(model, i, k - i)?)?;
        for &x in a {
            product = product.mul(&class_z(model, i, n - i - x)?)?;
        }
        total += product.deg();
    }
    Ok(total.rem_euclid(2))
}
