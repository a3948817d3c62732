use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Display;

use super::{multisets, Param, Task, Workspace};
use crate::bridge::{
    down_up, eta, eta_image, eta_image_degree, eta_image_expansion, eta_reduction_sides, incidence_class,
    incidence_relation_sides, shifted_degree, sigma, sigma_summed, theta_action_via_eta, theta_prime,
    top_right_coordinate, MixedCycle,
};
use crate::context::QuadricContext;
use crate::error::Result;
use crate::quadpow::{
    delta, diagonal, primordial_shape, rho, sym_of_h_powers, Correspondence, QuadCycle, QuadMonomial,
};
use crate::schubert::{
    chern_quot, chern_taut, class_o1, class_w, class_z, from_quadric, push_pull_h, to_quadric, FlagCycle, FlagModel,
};

pub(super) struct Outcome {
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

fn same<T: PartialEq + Display>(lhs: T, rhs: T) -> Result<Outcome> {
    Ok(Outcome { holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() })
}

/// Runs `same` over a list and reports the first mismatch, or a count.
fn all_same<T: PartialEq + Display>(pairs: Vec<(String, T, T)>) -> Result<Outcome> {
    let total = pairs.len();
    for (label, lhs, rhs) in pairs {
        if lhs != rhs {
            return Ok(Outcome {
                holds: false,
                lhs: alloc::format!("{label}: {lhs}"),
                rhs: alloc::format!("{label}: {rhs}"),
            });
        }
    }
    let summary = alloc::format!("{total} sub-identities agree");
    Ok(Outcome { holds: true, lhs: summary.clone(), rhs: summary })
}

fn ext(ctx: &QuadricContext, factors: &[QuadCycle]) -> Result<QuadCycle> {
    let mut out = QuadCycle::unit(ctx, 0);
    for f in factors {
        out = out.external(f)?;
    }
    Ok(out)
}

fn h(ctx: &QuadricContext, k: u32) -> QuadCycle {
    QuadCycle::h_power(ctx, k)
}

/// `h × h² × ⋯ × h^{i-1}`.
fn h_run(ctx: &QuadricContext, i: u32) -> Vec<QuadCycle> {
    (1..i).map(|j| h(ctx, j)).collect()
}

/// `sym(h × ⋯ × h^{i-1} × 1 × l_0) + Σ_{k=i-1}^{d} sym(h × ⋯ × h^{i-1} × h^k × l_k)`.
fn cyclic_target(ctx: &QuadricContext, i: u32) -> Result<QuadCycle> {
    let run = h_run(ctx, i);
    let with = |a: QuadCycle, b: QuadCycle| -> Result<QuadCycle> {
        let mut f = run.clone();
        f.push(a);
        f.push(b);
        Ok(ext(ctx, &f)?.sym())
    };
    let mut out = with(h(ctx, 0), QuadCycle::l(ctx, 0)?)?;
    for k in (i - 1)..=ctx.d() {
        out = out.add(&with(h(ctx, k), QuadCycle::l(ctx, k)?)?)?;
    }
    Ok(out)
}

/// `h × ⋯ × h^{i-1} × h^{i-1} × last`.
fn doubled(ctx: &QuadricContext, i: u32, last: QuadCycle) -> Result<QuadCycle> {
    let mut f = h_run(ctx, i);
    f.push(h(ctx, i - 1));
    f.push(last);
    ext(ctx, &f)
}

fn z_or_zero(m: &FlagModel, i: u32, j: i64) -> Result<FlagCycle<'_>> {
    let gi = m.flag(&[i])?;
    let d = m.context().d() as i64;
    let n = m.context().n() as i64;
    let i = i as i64;
    if j < n - i - d || j > n - i {
        return Ok(FlagCycle::zero(m, gi));
    }
    class_z(m, i as u32, j as u32)
}

fn w_or_zero(m: &FlagModel, i: u32, j: i64) -> Result<FlagCycle<'_>> {
    let gi = m.flag(&[i])?;
    if j < 0 || j + i as i64 > m.context().d() as i64 {
        return Ok(FlagCycle::zero(m, gi));
    }
    class_w(m, i, j as u32)
}

fn exponents(low: u32, high_exclusive: u32, extra: Option<u32>) -> Vec<u32> {
    let mut v: Vec<u32> = (low..high_exclusive).collect();
    v.extend(extra);
    v
}

fn sym_mod2(ctx: &QuadricContext, e: &[u32]) -> QuadCycle {
    sym_of_h_powers(ctx, e).mod2()
}

fn list(v: &[Vec<u32>]) -> String {
    let parts: Vec<String> = v.iter().map(|a| Param::List(a.clone()).to_string()).collect();
    alloc::format!("{{{}}}", parts.join(", "))
}

pub(super) fn evaluate(ws: &Workspace, task: &Task) -> Result<Outcome> {
    let ctx = ws.context();
    let (n, d) = (ctx.n(), ctx.d());
    let model = |c: usize| -> Result<&FlagModel> {
        let models = ws.models()?;
        models.all().get(c).ok_or_else(|| crate::Error::OutOfRange(alloc::format!("component {c}")))
    };
    match *task {
        Task::DiagonalClass => {
            let mut lhs = delta(ctx, 1)?.mod2();
            let ld = QuadCycle::l(ctx, d)?;
            if !ld.mul(&ld)?.is_zero() {
                lhs = lhs.add(&h(ctx, d).external(&h(ctx, d))?)?;
            }
            same(lhs, diagonal(ctx).mod2())
        }
        Task::Difference { i } => {
            let halved = {
                let mut f = h_run(ctx, i);
                f.push(h(ctx, i - 1));
                f.push(QuadCycle::l(ctx, i - 1)?);
                ext(ctx, &f)?.sym()
            };
            same(cyclic_target(ctx, i)?.sub(&halved)?, delta(ctx, i)?)
        }
        Task::CyclicSum { i } => {
            let lhs = delta(ctx, i - 1)?.external(&h(ctx, i - 1))?.cyclic_sum();
            same(lhs, cyclic_target(ctx, i)?)
        }
        Task::Halving { i } => {
            let x = doubled(ctx, i, QuadCycle::l(ctx, i - 1)?)?;
            same(x.sym(), x.alternating_sum().scale(2))
        }
        Task::HalvingByH { i } => {
            let lhs = doubled(ctx, i, QuadCycle::l(ctx, i - 1)?)?.sym();
            same(lhs, doubled(ctx, i, h(ctx, n - i + 1))?.alternating_sum())
        }
        Task::DoubleL { i } => same(QuadCycle::l(ctx, i - 1)?.scale(2), h(ctx, n - i + 1)),

        Task::PushPullH { c, i } => {
            let m = model(c)?;
            same(push_pull_h(m, i, i)?, FlagCycle::one(m, m.flag(&[i])?))
        }
        Task::ZRelation { c, i, j } => {
            let m = model(c)?;
            let f = m.flag(&[i - 1, i])?;
            let xi = class_o1(m, i)?;
            let lhs = class_z(m, i - 1, j)?.pullback(f)?;
            let rhs =
                xi.mul(&z_or_zero(m, i, j as i64 - 1)?.pullback(f)?)?.add(&z_or_zero(m, i, j as i64)?.pullback(f)?)?;
            same(lhs, rhs)
        }
        Task::WRelation { c, i, j } => {
            let m = model(c)?;
            let f = m.flag(&[i - 1, i])?;
            let xi = class_o1(m, i)?;
            let lhs = class_w(m, i - 1, j)?.pullback(f)?;
            let rhs =
                xi.mul(&w_or_zero(m, i, j as i64 - 1)?.pullback(f)?)?.add(&w_or_zero(m, i, j as i64)?.pullback(f)?)?;
            same(lhs, rhs)
        }
        Task::TopWRelation { c, i } => {
            let m = model(c)?;
            let f = m.flag(&[i - 1, i])?;
            let xi = class_o1(m, i)?;
            let lhs = class_w(m, i - 1, d + 1 - i)?.pullback(f)?;
            let rhs =
                xi.mul(&class_w(m, i, d - i)?.pullback(f)?)?.add(&class_z(m, i, d + 1 - i)?.pullback(f)?.scale(2))?;
            same(lhs, rhs)
        }

        Task::Summation { c, i, k, m: shift } => {
            let m = model(c)?;
            let lhs = down_up(&class_w(m, i, k - i)?.mul(&class_z(m, i, n - i - shift)?)?, i)?;
            let mut rhs = FlagCycle::zero(m, m.flag(&[i - 1])?);
            for j in i.saturating_sub(shift)..=(k - shift).min(i) {
                let term = class_w(m, i - 1, k - shift - j)?.mul(&down_up(&class_z(m, i, n - 2 * i + j)?, i)?)?;
                rhs = rhs.add(&term)?;
            }
            same(lhs, rhs)
        }

        Task::ChernSigma { i, j } => {
            let m = ws.models()?.primary();
            same(chern_taut(m, i - 1, j)?.mod2(), sigma_summed(ws.models()?, i, j)?)
        }
        Task::QuotientDivisible { c, i, l } => {
            let m = model(c)?;
            same(chern_quot(m, i - 1, l)?.mod2(), FlagCycle::zero(m, m.flag(&[i - 1])?).mod2())
        }
        Task::QuotientVsW { c, i, t } => {
            let m = model(c)?;
            same(class_w(m, i - 1, t)?.mod2(), chern_quot(m, i - 1, t)?.mod2())
        }
        Task::WhitneyStep { i, j } => {
            let m = ws.models()?.primary();
            let low = (j as i64 - d as i64 + i as i64 - 1).max(1) as u32;
            let mut rhs = chern_quot(m, i - 1, j)?.mod2();
            for k in low..j {
                rhs = rhs.add(&class_w(m, i - 1, j - k)?.mul(&sigma_summed(ws.models()?, i, k)?)?)?;
            }
            same(chern_taut(m, i - 1, j)?.mod2(), rhs)
        }
        Task::SummationTop { c, i, j } => {
            let m = model(c)?;
            let lhs = down_up(&class_w(m, i, d - i)?.mul(&class_z(m, i, n - i - d + j)?)?, i)?;
            let mut rhs = FlagCycle::zero(m, m.flag(&[i - 1])?);
            for k in (j + i).saturating_sub(d)..=j {
                let term = class_w(m, i - 1, j - k)?.mul(&down_up(&class_z(m, i, n - 2 * i + k)?, i)?)?;
                rhs = rhs.add(&term)?;
            }
            same(lhs, rhs)
        }
        Task::Shift { c, i, j } => {
            let m = model(c)?;
            let lhs = down_up(&class_w(m, i, d - i)?.mul(&class_z(m, i, n - i - d + j)?)?.mod2(), i)?;
            let rhs = class_w(m, i - 1, d - i + 1)?.mul(&down_up(&class_z(m, i, n - i - d + j - 1)?, i)?)?.mod2();
            same(lhs, rhs)
        }

        Task::Route { i, x } => {
            let direct = Correspondence::new(ws.theta_action(i)?, 1)?;
            let x = QuadCycle::basis_element(ctx, x)?;
            same(direct.action(&x)?, theta_action_via_eta(ws.models()?, i, &x)?)
        }
        Task::LowVanish { i, k } => {
            let direct = Correspondence::new(ws.theta_action(i)?, 1)?;
            same(direct.action(&h(ctx, k))?, QuadCycle::zero(ctx, i as usize))
        }
        Task::IncidenceRelation { c, i } => {
            let (lhs, rhs) = incidence_relation_sides(model(c)?, i)?;
            same(lhs, rhs)
        }
        Task::Reduction { c, i } => {
            let (lhs, rhs) = eta_reduction_sides(model(c)?, i)?;
            same(lhs, rhs)
        }
        Task::Expansion { i, k } => {
            let models = ws.models()?;
            same(eta_image(models, i, k)?, eta_image_expansion(models, i, k)?)
        }
        Task::ExtraTerm { i } => {
            let mut total = QuadCycle::zero(ctx, i as usize - 1).mod2();
            for m in ws.models()?.components(i) {
                let w = class_w(m, i, d - i)?;
                let weight = down_up(&w.mul(&w)?, i)?.mul(&class_z(m, i - 1, n - i + 1)?)?.mod2();
                total = total.add(&eta(m, i - 1)?.mod2().act_on_flag(&weight)?)?;
            }
            same(total, QuadCycle::zero(ctx, i as usize - 1).mod2())
        }
        Task::ImageIsSym { i, k } => same(eta_image(ws.models()?, i, k)?, sym_mod2(ctx, &exponents(1, i, Some(k)))),
        Task::CoordinateLow { i, k } => {
            let coordinate = top_right_coordinate(&eta_image(ws.models()?, i, k)?, i - 1)?;
            same(coordinate, sym_mod2(ctx, &exponents(1, i - 1, Some(k))))
        }
        Task::CoordinateLowExpanded { i, k } => {
            let models = ws.models()?;
            let mut sum = QuadCycle::zero(ctx, i as usize - 1).mod2();
            for m in models.components(i) {
                let lower = eta(m, i - 1)?.mod2();
                let z = class_z(m, i - 1, n - i + 1)?;
                for j in 1..=(k - i + 1).min(i) {
                    let weight = class_w(m, i - 1, k - i + 1 - j)?.mul(&sigma(m, i, j)?)?.mul(&z)?;
                    sum = sum.add(&lower.act_on_flag(&weight)?)?;
                }
            }
            same(top_right_coordinate(&eta_image(models, i, k)?, i - 1)?, sum)
        }
        Task::WhitneyCollapse { i, k } => {
            let m = ws.models()?.primary();
            let mut sum = FlagCycle::zero(m, m.flag(&[i - 1])?).mod2();
            for j in 0..=(k - i + 1).min(i) {
                sum = sum.add(&class_w(m, i - 1, k - i + 1 - j)?.mul(&sigma_summed(ws.models()?, i, j)?)?)?;
            }
            same(sum, FlagCycle::zero(m, m.flag(&[i - 1])?).mod2())
        }
        Task::LowerImage { i, k } => {
            same(eta_image(ws.models()?, i - 1, k)?, sym_mod2(ctx, &exponents(1, i - 1, Some(k))))
        }
        Task::CoordinateHigh { i, k } => {
            let models = ws.models()?;
            let coordinate = top_right_coordinate(&eta_image_expansion(models, i, k)?, k)?;
            same(coordinate, eta_image(models, i - 1, i - 1)?)
        }

        Task::AlphaOnH { i, k } => {
            let alpha = Correspondence::new(ws.theta_action(i)?.add(&rho(ctx, i)?)?, 1)?.mod2();
            let lhs = alpha.action(&h(ctx, k))?;
            let rhs = match k {
                0 => sym_mod2(ctx, &exponents(1, i, Some(0))),
                k if k < i => QuadCycle::zero(ctx, i as usize).mod2(),
                k => sym_mod2(ctx, &exponents(1, i, Some(k))),
            };
            same(lhs, rhs)
        }
        Task::AlphaSymmetric { i } => {
            let alpha = ws.theta_action(i)?.add(&rho(ctx, i)?)?;
            let holds = alpha.is_symmetric();
            Ok(Outcome { holds, lhs: alpha.to_string(), rhs: "symmetric".to_string() })
        }
        Task::Nonessential { i } => {
            let alpha = ws.theta_action(i)?.add(&rho(ctx, i)?)?.mod2();
            let difference = alpha.sub(&delta(ctx, i)?.mod2())?;
            let holds = difference.is_nonessential();
            Ok(Outcome { holds, lhs: difference.to_string(), rhs: "nonessential".to_string() })
        }

        Task::ShiftedDegree { i, k, m } => {
            let models = ws.models()?;
            let mut expected: Vec<u32> = (1..=i).filter(|&x| x != m).chain([k]).collect();
            expected.sort_unstable();
            let mut odd = Vec::new();
            for a in multisets(i as usize, d) {
                if shifted_degree(models, i, k, m, &a)? == 1 {
                    odd.push(a);
                }
            }
            same(list(&odd), list(&[expected]))
        }
        Task::TopRightDegree { i, k } => {
            let models = ws.models()?;
            let expected = exponents(1, i, Some(k));
            let mut odd = Vec::new();
            for a in multisets(i as usize, d) {
                if eta_image_degree(models, i, k, &a)? == 1 {
                    odd.push(a);
                }
            }
            same(list(&odd), list(&[expected]))
        }

        Task::Primordial { i, i1, ref coefficients } => {
            let pi = primordial_shape(ctx, i1, coefficients)?;
            let twist = QuadCycle::unit(ctx, 1).external(&h(ctx, i1 - i))?;
            let twisted = Correspondence::new(pi.cycle().mul(&twist)?, 1)?;
            let composed = Correspondence::new(rho(ctx, i)?.mod2(), 1)?.compose(&twisted)?.into_cycle();
            let lower = rho(ctx, i - 1)?.mod2();
            let expected = QuadCycle::unit(ctx, 1).external(&lower)?;
            let pattern: Vec<usize> = core::iter::once(0).chain(0..i as usize).collect();
            let pulled = composed.pull_diagonal(i as usize, &pattern)?;
            Ok(Outcome {
                holds: composed == expected && pulled == lower,
                lhs: alloc::format!("{composed}; diagonal pullback {pulled}"),
                rhs: alloc::format!("{expected}; diagonal pullback {lower}"),
            })
        }

        Task::ThetaPrimeTable { c, i } => {
            let m = model(c)?;
            let t = theta_prime(m, i)?;
            let flag = m.flag(&[0, i])?;
            let z = class_z(m, i, n - i)?.pullback(flag)?;
            let mut entries: Vec<QuadCycle> = (0..i).map(|k| h(ctx, k)).collect();
            entries.push(QuadCycle::l(ctx, 0)?);
            let mut pairs = Vec::new();
            for (p, a) in entries.iter().enumerate() {
                for (q, b) in entries.iter().enumerate() {
                    if p == q {
                        continue;
                    }
                    let image = t.act_on_quad(&a.external(b)?)?;
                    let expected = if q == i as usize {
                        from_quadric(m, a)?.pullback(flag)?.mul(&z)?.mod2()
                    } else {
                        FlagCycle::zero(m, flag).mod2()
                    };
                    pairs.push((alloc::format!("{a} x {b}"), image, expected));
                }
            }
            all_same(pairs)
        }
        Task::ThetaPrimeOnRho { c, i } => {
            let m = model(c)?;
            same(theta_prime_on_rho(m, i)?, theta_prime_on_rho_expected(m, i)?)
        }
        Task::ThetaPrimePush { c, i } => {
            let m = model(c)?;
            let flag = m.flag(&[0, i])?;
            let hyperplane = from_quadric(m, &h(ctx, 1))?.pullback(flag)?;
            let lhs = theta_prime_on_rho(m, i)?.mul_flag(&hyperplane)?.pushforward_flag(m.flag(&[i])?)?;
            let rhs = MixedCycle::external(&class_z(m, i, n - i)?, &sym_of_h_powers(ctx, &exponents(0, i - 1, None)))?;
            same(lhs, rhs.mod2())
        }
        Task::ThetaPrimeStep { c, i, k } => {
            let m = model(c)?;
            let z = class_z(m, i, n - i)?;
            let arity = (i - k + 1) as usize;
            let start = MixedCycle::external(&z, &sym_of_h_powers(ctx, &exponents(0, i - k + 1, None)))?.mod2();
            let factor = incidence_class(m, i)?.mul_quad(&h(ctx, k))?.pull_proj(arity, &[arity - 1])?;
            let keep: Vec<usize> = (0..arity - 1).collect();
            let lhs = start.mul(&factor)?.push_proj(&keep)?;
            let rhs = MixedCycle::external(&z, &sym_of_h_powers(ctx, &exponents(0, i - k, None)))?.mod2();
            same(lhs, rhs)
        }

        Task::GdDegree { ref a } => {
            let models = ws.models()?;
            let mut total = 0i64;
            for m in models.components(d) {
                let mut product = FlagCycle::one(m, m.flag(&[d])?);
                for &x in a {
                    product = product.mul(&class_z(m, d, n - d - x)?)?;
                }
                total += product.deg();
            }
            let full = a.len() == d as usize + 1 && a.iter().enumerate().all(|(j, &x)| x == j as u32);
            same(alloc::format!("deg = {}", total.rem_euclid(2)), alloc::format!("deg = {}", full as u8))
        }

        Task::CrossProduct { c, a, b } => {
            let m = model(c)?;
            let qa = QuadCycle::basis_element(ctx, a)?;
            let qb = QuadCycle::basis_element(ctx, b)?;
            let product = from_quadric(m, &qa)?.mul(&from_quadric(m, &qb)?)?;
            all_same(alloc::vec![
                ("integral".to_string(), to_quadric(&product)?, qa.mul(&qb)?),
                ("mod 2".to_string(), to_quadric(&product.mod2())?, qa.mod2().mul(&qb.mod2())?),
            ])
        }
        Task::CrossDegree { c, a } => {
            let m = model(c)?;
            let qa = QuadCycle::basis_element(ctx, a)?;
            let fa = from_quadric(m, &qa)?;
            let degrees = alloc::format!("deg {} / {}", fa.deg(), fa.mod2().deg());
            let expected = alloc::format!("deg {} / {}", qa.deg(), qa.mod2().deg());
            all_same(alloc::vec![
                ("round trip".to_string(), to_quadric(&fa)?.to_string(), qa.to_string()),
                ("degree".to_string(), degrees, expected),
            ])
        }
    }
}

/// `(Id_{X^{i-1}} × θ'_i)_*(ρ_i mod 2)` on `F(0,i) × X^{i-1}`: the last two
/// factors of `ρ_i` feed `θ'_i`.
fn theta_prime_on_rho(m: &FlagModel, i: u32) -> Result<MixedCycle<'_>> {
    let ctx = m.context();
    let t = theta_prime(m, i)?;
    let split = i as usize - 1;
    let mut out = MixedCycle::zero(m, m.flag(&[0, i])?, split).mod2();
    for (mono, &c) in rho(ctx, i)?.mod2().terms() {
        let f = mono.factors();
        let pair = QuadCycle::from_monomial(ctx, QuadMonomial::new(&f[split..]), c);
        let rest = QuadCycle::from_monomial(ctx, QuadMonomial::new(&f[..split]), 1);
        out = out.add(&MixedCycle::external(&t.act_on_quad(&pair)?, &rest)?)?;
    }
    Ok(out)
}

/// `Σ_{k<i} π^*(h^k) · π^*(z^i_{n-i}) × sym(×_{j≠k} h^j)`.
fn theta_prime_on_rho_expected(m: &FlagModel, i: u32) -> Result<MixedCycle<'_>> {
    let ctx = m.context();
    let flag = m.flag(&[0, i])?;
    let z = class_z(m, i, ctx.n() - i)?.pullback(flag)?;
    let mut out = MixedCycle::zero(m, flag, i as usize - 1).mod2();
    for k in 0..i {
        let e: Vec<u32> = (0..i).filter(|&j| j != k).collect();
        let on_flag = from_quadric(m, &h(ctx, k))?.pullback(flag)?.mul(&z)?;
        out = out.add(&MixedCycle::external(&on_flag, &sym_of_h_powers(ctx, &e))?)?;
    }
    Ok(out.mod2())
}
