//! Distinguished classes: the quadric itself as `G_0`, the pull-push classes
//! `Z^i_j` and `W^i_j`, Chern classes of tautological bundles and the relative
//! hyperplane class of `F(i-1,i) → G_i`.

use super::{FlagCycle, FlagIndex, FlagModel};
use crate::context::Orientation;
use crate::error::{Error, Result};
use crate::polyring::IntPolynomial;
use crate::quadpow::QuadCycle;
use crate::weyl::Family;

fn g0() -> FlagIndex {
    FlagIndex(1)
}

/// Converts a cycle on `X` into the Schubert basis of `G_0`.
pub fn from_quadric<'m>(model: &'m FlagModel, x: &QuadCycle) -> Result<FlagCycle<'m>> {
    if x.context().n() != model.context().n() {
        return Err(Error::ContextMismatch);
    }
    if x.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: x.arity() });
    }
    let table = model.quadric_basis();
    let mut out = FlagCycle::zero(model, g0());
    if x.ring() == crate::coeff::CoeffRing::Mod2 {
        out = out.mod2();
    }
    for (m, &c) in x.terms() {
        let b = m.factors()[0];
        let (_, j) = table.iter().find(|(q, _)| *q == b).expect("every basis element is matched");
        out.add_term(*j, c);
    }
    Ok(out)
}

/// Converts a cycle on `G_0` back to the quadric basis.
pub fn to_quadric(x: &FlagCycle<'_>) -> Result<QuadCycle> {
    if x.index() != g0() {
        return Err(Error::FlagMismatch(alloc::format!("{} is not G_0", x.index())));
    }
    let model = x.model();
    let ctx = model.context();
    let mut out = QuadCycle::zero(ctx, 1);
    if x.ring() == crate::coeff::CoeffRing::Mod2 {
        out = out.mod2();
    }
    for (j, c) in x.terms() {
        let (b, _) = model.quadric_basis().iter().find(|(_, k)| *k == j).expect("every class is matched");
        out.add_term(crate::quadpow::QuadMonomial::new(&[*b]), c);
    }
    Ok(out)
}

/// `π_{(0,i̲)*} ∘ π_{(0̲,i)}^*(x)` on `G_i` for a cycle `x` on `X`.
pub fn push_pull<'m>(model: &'m FlagModel, i: u32, x: &QuadCycle) -> Result<FlagCycle<'m>> {
    let gi = model.flag(&[i])?;
    let incidence = model.flag(&[0, i])?;
    from_quadric(model, x)?.pullback(incidence)?.pushforward(gi)
}

/// `π_{(0,i̲)*} ∘ π_{(0̲,i)}^*(h^t)` for any `t ≥ 0`; it is `W^i_{t-i}` inside
/// the range where that class is defined.
pub fn push_pull_h(model: &FlagModel, i: u32, t: u32) -> Result<FlagCycle<'_>> {
    push_pull(model, i, &QuadCycle::h_power(model.context(), t))
}

/// `Z^i_j = π_{(0,i̲)*} π_{(0̲,i)}^*(l_{n-i-j})`, for `n-i-d ≤ j ≤ n-i`.
pub fn class_z(model: &FlagModel, i: u32, j: u32) -> Result<FlagCycle<'_>> {
    let ctx = model.context();
    let (n, d) = (ctx.n(), ctx.d());
    if i > d || j > n - i || n - i - j > d {
        return Err(Error::OutOfRange(alloc::format!("Z^{i}_{j} is undefined for n = {n}")));
    }
    push_pull(model, i, &QuadCycle::l(ctx, n - i - j)?)
}

/// `W^i_j = π_{(0,i̲)*} π_{(0̲,i)}^*(h^{j+i})` for `j + i ≤ d`; `W^0_j = h^j`.
pub fn class_w(model: &FlagModel, i: u32, j: u32) -> Result<FlagCycle<'_>> {
    let d = model.context().d();
    if i + j > d {
        return Err(Error::OutOfRange(alloc::format!("W^{i}_{j} needs i + j ≤ {d}")));
    }
    push_pull_h(model, i, i + j)
}

/// The Chern root `y_k` (`1 ≤ k ≤ r`) of the tautological flag:
/// `c_1(U_k / U_{k-1}) = -x_k`, except that the last root is `+x_r` for the
/// minus orientation in type `D`.
pub fn tautological_root(model: &FlagModel, k: usize) -> IntPolynomial {
    let ctx = model.context();
    let m = ctx.rank();
    let x = IntPolynomial::var(m, k);
    let flip = ctx.family() == Family::D && k == m && ctx.orientation() == Some(Orientation::Minus);
    if flip {
        x
    } else {
        -&x
    }
}

fn total_chern_taut(model: &FlagModel, i: u32) -> IntPolynomial {
    let m = model.context().rank();
    let mut out = IntPolynomial::one(m);
    for k in 1..=(i as usize + 1) {
        out = &out * &(&IntPolynomial::one(m) + &tautological_root(model, k));
    }
    out
}

fn total_chern_quot(model: &FlagModel, i: u32) -> IntPolynomial {
    let m = model.context().rank();
    let one = IntPolynomial::one(m);
    let mut out = one.clone();
    for k in 1..=m {
        let factor = if k <= i as usize + 1 {
            &one - &tautological_root(model, k)
        } else {
            let x = IntPolynomial::var(m, k);
            &one - &(&x * &x)
        };
        out = &out * &factor;
    }
    out
}

/// `c_j(T_i)` on `G_i`, `0 ≤ j ≤ i + 1`.
pub fn chern_taut(model: &FlagModel, i: u32, j: u32) -> Result<FlagCycle<'_>> {
    let gi = model.flag(&[i])?;
    if j > i + 1 {
        return Err(Error::OutOfRange(alloc::format!("c_{j} of a bundle of rank {}", i + 1)));
    }
    let f = total_chern_taut(model, i).homogeneous_part(j);
    FlagCycle::from_polynomial(model, gi, &f, 1)
}

/// `c_j(V𝟙 / T_i)` on `G_i`, `0 ≤ j ≤ n + 1 - i`.
pub fn chern_quot(model: &FlagModel, i: u32, j: u32) -> Result<FlagCycle<'_>> {
    let gi = model.flag(&[i])?;
    let rank = model.context().n() + 1 - i;
    if j > rank {
        return Err(Error::OutOfRange(alloc::format!("c_{j} of a bundle of rank {rank}")));
    }
    let f = total_chern_quot(model, i).homogeneous_part(j);
    FlagCycle::from_polynomial(model, gi, &f, 1)
}

/// `c_1(𝒪(1))` on `F(i-1,i)` viewed as the projective bundle of hyperplanes
/// in `T_i` over `G_i`, `1 ≤ i ≤ d`.
pub fn class_o1(model: &FlagModel, i: u32) -> Result<FlagCycle<'_>> {
    if i == 0 || i > model.context().d() {
        return Err(Error::OutOfRange(alloc::format!("O(1) on F(i-1,i) needs 1 ≤ i ≤ {}", model.context().d())));
    }
    let index = model.flag(&[i - 1, i])?;
    FlagCycle::from_polynomial(model, index, &tautological_root(model, i as usize + 1), 1)
}
