use super::{basis, dual_basis_element, Correspondence, QuadCycle, QuadMonomial};
use crate::context::QuadricContext;
use crate::error::{Error, Result};

fn external_all(ctx: &QuadricContext, factors: &[QuadCycle]) -> QuadCycle {
    factors.iter().fold(QuadCycle::unit(ctx, 0), |acc, f| acc.external(f).expect("arity within bounds"))
}

fn h_run(ctx: &QuadricContext, from: u32, to_exclusive: u32) -> impl Iterator<Item = QuadCycle> + '_ {
    (from..to_exclusive).map(move |j| QuadCycle::h_power(ctx, j))
}

/// `sym(h^{e_1} × ⋯ × h^{e_m})` on `X^m`.
pub fn sym_of_h_powers(ctx: &QuadricContext, exponents: &[u32]) -> QuadCycle {
    let factors: alloc::vec::Vec<QuadCycle> = exponents.iter().map(|&e| QuadCycle::h_power(ctx, e)).collect();
    external_all(ctx, &factors).sym()
}

/// `ρ_i = sym(1 × h × ⋯ × h^{i-1} × l_0)` on `X^{i+1}`; `ρ_0 = l_0`.
pub fn rho(ctx: &QuadricContext, i: u32) -> Result<QuadCycle> {
    if i > ctx.d() {
        return Err(Error::OutOfRange(alloc::format!("rho index {i} > d = {}", ctx.d())));
    }
    let mut factors: alloc::vec::Vec<QuadCycle> = h_run(ctx, 0, i).collect();
    factors.push(QuadCycle::l(ctx, 0)?);
    Ok(external_all(ctx, &factors).sym())
}

/// The Rost correspondence `1 × l_0 + l_0 × 1` on `X ⇝ X`.
pub fn rost(ctx: &QuadricContext) -> Correspondence {
    Correspondence::new(rho(ctx, 1).expect("d ≥ 1"), 1).expect("source arity 1")
}

/// `Δ_i = sym(h × ⋯ × h^{i-1} × 1 × l_0) + Σ_{k=i}^{d} sym(h × ⋯ × h^{i-1} × h^k × l_k)`
/// on `X^{i+1}`, for `1 ≤ i ≤ d`. In even dimension `l_d` is the basis class
/// `l_d`, not `l_d'`.
pub fn delta(ctx: &QuadricContext, i: u32) -> Result<QuadCycle> {
    let d = ctx.d();
    if i == 0 || i > d {
        return Err(Error::OutOfRange(alloc::format!("delta index {i} outside 1..={d}")));
    }
    let head: alloc::vec::Vec<QuadCycle> = h_run(ctx, 1, i).collect();
    let mut first = head.clone();
    first.push(QuadCycle::unit(ctx, 1));
    first.push(QuadCycle::l(ctx, 0)?);
    let mut out = external_all(ctx, &first).sym();
    for k in i..=d {
        let mut factors = head.clone();
        factors.push(QuadCycle::h_power(ctx, k));
        factors.push(QuadCycle::l(ctx, k)?);
        out = out.add(&external_all(ctx, &factors).sym())?;
    }
    Ok(out)
}

/// The class of the diagonal in `X × X`, determined by adjunction:
/// `deg([Δ] · (u × v)) = deg(u · v)` for all basis classes `u`, `v`.
pub fn diagonal(ctx: &QuadricContext) -> QuadCycle {
    let mut out = QuadCycle::zero(ctx, 2);
    for u in basis(ctx) {
        for v in basis(ctx) {
            let dual = QuadMonomial::new(&[dual_basis_element(ctx, u), dual_basis_element(ctx, v)]);
            let restricted =
                QuadCycle::from_monomial(ctx, dual, 1).pull_diagonal(1, &[0, 0]).expect("diagonal pattern is valid");
            let c = restricted.deg();
            if c != 0 {
                out.add_term(QuadMonomial::new(&[u, v]), c);
            }
        }
    }
    out
}

/// The mod-2 correspondence
/// `1 × l_{i_1-1} + l_{i_1-1} × 1 + Σ_{j=i_1}^{d-i_1+1} a_j (h^j × l_{j+i_1-1} + l_{j+i_1-1} × h^j)`.
/// `coefficients[t]` is `a_{i_1+t}`; its length must be `max(0, d − 2i_1 + 2)`.
pub fn primordial_shape(ctx: &QuadricContext, i1: u32, coefficients: &[bool]) -> Result<Correspondence> {
    let d = ctx.d();
    if i1 == 0 || i1 > d {
        return Err(Error::OutOfRange(alloc::format!("first Witt index {i1} outside 1..={d}")));
    }
    let expected = (d + 2).saturating_sub(2 * i1) as usize;
    if coefficients.len() != expected {
        return Err(Error::OutOfRange(alloc::format!(
            "{} coefficients given, {expected} expected",
            coefficients.len()
        )));
    }
    let one = QuadCycle::unit(ctx, 1);
    let l_top = QuadCycle::l(ctx, i1 - 1)?;
    let mut out = one.external(&l_top)?.add(&l_top.external(&one)?)?;
    for (t, &a) in coefficients.iter().enumerate() {
        if a {
            let j = i1 + t as u32;
            let h = QuadCycle::h_power(ctx, j);
            let l = QuadCycle::l(ctx, j + i1 - 1)?;
            out = out.add(&h.external(&l)?)?.add(&l.external(&h)?)?;
        }
    }
    Correspondence::new(out.mod2(), 1)
}
