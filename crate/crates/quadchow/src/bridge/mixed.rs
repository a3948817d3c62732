use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::quadpow::QuadCycle;
use crate::schubert::{FlagCycle, FlagIndex, FlagModel};

/// A cycle on `F(I) × X^m`, stored as `Σ_j σ_j × q_j` with `σ_j` running over
/// the Schubert basis of `F(I)`. The flag factor always comes first.
#[derive(Clone)]
pub struct MixedCycle<'m> {
    model: &'m FlagModel,
    index: FlagIndex,
    arity: usize,
    ring: CoeffRing,
    parts: BTreeMap<usize, QuadCycle>,
}

impl PartialEq for MixedCycle<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.model, other.model)
            && self.index == other.index
            && self.arity == other.arity
            && self.parts == other.parts
    }
}

impl Eq for MixedCycle<'_> {}

impl<'m> MixedCycle<'m> {
    pub fn zero(model: &'m FlagModel, index: FlagIndex, arity: usize) -> Self {
        MixedCycle { model, index, arity, ring: CoeffRing::Integer, parts: BTreeMap::new() }
    }

    /// `[F(I) × X^m]`.
    pub fn one(model: &'m FlagModel, index: FlagIndex, arity: usize) -> Self {
        let mut out = Self::zero(model, index, arity);
        out.add_part(0, &QuadCycle::unit(model.context(), arity));
        out
    }

    /// The external product `x × q`.
    pub fn external(x: &FlagCycle<'m>, q: &QuadCycle) -> Result<Self> {
        let model = x.model();
        if q.context().n() != model.context().n() {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zero(model, x.index(), q.arity());
        out.ring = x.ring().join(q.ring());
        for (j, c) in x.terms() {
            out.add_part(j, &q.scale(c));
        }
        Ok(out)
    }

    pub fn model(&self) -> &'m FlagModel {
        self.model
    }

    pub fn index(&self) -> FlagIndex {
        self.index
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// The nonzero `(j, q_j)`.
    pub fn parts(&self) -> impl Iterator<Item = (usize, &QuadCycle)> {
        self.parts.iter().map(|(&j, q)| (j, q))
    }

    /// Number of nonzero monomials `σ_j × m`.
    pub fn len(&self) -> usize {
        self.parts.values().map(QuadCycle::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Adds `σ_j × q`.
    pub fn add_part(&mut self, j: usize, q: &QuadCycle) {
        let q = if self.ring == CoeffRing::Mod2 { q.mod2() } else { q.clone() };
        let sum = match self.parts.remove(&j) {
            Some(old) => old.add(&q).expect("parts share the quadric"),
            None => q,
        };
        if !sum.is_zero() {
            self.parts.insert(j, sum);
        }
    }

    fn empty_like(&self, index: FlagIndex, arity: usize, ring: CoeffRing) -> Self {
        MixedCycle { model: self.model, index, arity, ring, parts: BTreeMap::new() }
    }

    fn check_same(&self, other: &MixedCycle<'_>) -> Result<()> {
        if !core::ptr::eq(self.model, other.model) {
            return Err(Error::ContextMismatch);
        }
        if self.index != other.index {
            return Err(Error::FlagMismatch(alloc::format!("{} vs {}", self.index, other.index)));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &MixedCycle<'_>) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.empty_like(self.index, self.arity, self.ring.join(other.ring));
        for (j, q) in self.parts().chain(other.parts()) {
            out.add_part(j, q);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MixedCycle<'_>) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.empty_like(self.index, self.arity, self.ring);
        for (j, q) in self.parts() {
            out.add_part(j, &q.scale(k));
        }
        out
    }

    pub fn mod2(&self) -> Self {
        let mut out = self.empty_like(self.index, self.arity, CoeffRing::Mod2);
        for (j, q) in self.parts() {
            out.add_part(j, q);
        }
        out
    }

    pub fn mul(&self, other: &MixedCycle<'_>) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.empty_like(self.index, self.arity, self.ring.join(other.ring));
        for (a, qa) in self.parts() {
            for (b, qb) in other.parts() {
                let q = qa.mul(qb)?;
                if q.is_zero() {
                    continue;
                }
                for &(j, c) in self.model.product_coordinates(self.index, a, b)? {
                    out.add_part(j, &q.scale(c));
                }
            }
        }
        Ok(out)
    }

    /// `(x × [X^m]) · self`.
    pub fn mul_flag(&self, x: &FlagCycle<'m>) -> Result<Self> {
        MixedCycle::external(x, &QuadCycle::unit(self.model.context(), self.arity))?.mul(self)
    }

    /// `([F(I)] × y) · self`.
    pub fn mul_quad(&self, y: &QuadCycle) -> Result<Self> {
        let mut out = self.empty_like(self.index, self.arity, self.ring.join(y.ring()));
        for (j, q) in self.parts() {
            out.add_part(j, &q.mul(y)?);
        }
        Ok(out)
    }

    /// `self × y` on `F(I) × X^{m+k}`.
    pub fn external_quad(&self, y: &QuadCycle) -> Result<Self> {
        self.map_quad(self.arity + y.arity(), |q| q.external(y))
    }

    /// Applies a linear map to every quadric part.
    pub fn map_quad<F>(&self, arity: usize, f: F) -> Result<Self>
    where
        F: Fn(&QuadCycle) -> Result<QuadCycle>,
    {
        let mut out = self.empty_like(self.index, arity, self.ring);
        for (j, q) in self.parts() {
            let image = f(q)?;
            if image.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: image.arity() });
            }
            out.ring = out.ring.join(image.ring());
            out.add_part(j, &image);
        }
        Ok(out)
    }

    /// Pullback along `F(I) × X^k → F(I) × X^m` projecting onto `positions`.
    pub fn pull_proj(&self, arity: usize, positions: &[usize]) -> Result<Self> {
        self.map_quad(arity, |q| q.pull_proj(arity, positions))
    }

    /// Pushforward to `F(I) × X^{keep}`.
    pub fn push_proj(&self, keep: &[usize]) -> Result<Self> {
        self.map_quad(keep.len(), |q| q.push_proj(keep))
    }

    pub fn permute(&self, p: &[usize]) -> Result<Self> {
        self.map_quad(self.arity, |q| q.permute(p))
    }

    /// Pullback along `F(target) × X^m → F(I) × X^m`, `I ⊆ target`.
    pub fn pullback_flag(&self, target: FlagIndex) -> Result<Self> {
        let mut out = self.empty_like(target, self.arity, self.ring);
        for (j, q) in self.parts() {
            let up = FlagCycle::schubert(self.model, self.index, j)?.pullback(target)?;
            for (k, c) in up.terms() {
                out.add_part(k, &q.scale(c));
            }
        }
        Ok(out)
    }

    /// Pushforward along `F(I) × X^m → F(target) × X^m`, `target ⊆ I`.
    pub fn pushforward_flag(&self, target: FlagIndex) -> Result<Self> {
        let mut out = self.empty_like(target, self.arity, self.ring);
        for (j, q) in self.parts() {
            let down = FlagCycle::schubert(self.model, self.index, j)?.pushforward(target)?;
            for (k, c) in down.terms() {
                out.add_part(k, &q.scale(c));
            }
        }
        Ok(out)
    }

    /// Pushforward to `X^m`.
    pub fn integrate_flag(&self) -> QuadCycle {
        let point = self.model.ring(self.index).point();
        let mut out = QuadCycle::zero(self.model.context(), self.arity);
        if self.ring == CoeffRing::Mod2 {
            out = out.mod2();
        }
        if let Some(q) = self.parts.get(&point) {
            out = out.add(q).expect("same quadric");
        }
        out
    }

    /// Pushforward to `F(I)`.
    pub fn integrate_quad(&self) -> FlagCycle<'m> {
        let mut out = FlagCycle::zero(self.model, self.index);
        if self.ring == CoeffRing::Mod2 {
            out = out.mod2();
        }
        for (j, q) in self.parts() {
            out.add_term(j, q.deg());
        }
        out
    }

    /// The action `F(I) ⇝ X^m`: `z ↦ p_{X^m*}((z × [X^m]) · self)`.
    pub fn act_on_flag(&self, z: &FlagCycle<'m>) -> Result<QuadCycle> {
        Ok(self.mul_flag(z)?.integrate_flag())
    }

    /// The action `X^m ⇝ F(I)`: `y ↦ p_{F(I)*}(self · ([F(I)] × y))`.
    pub fn act_on_quad(&self, y: &QuadCycle) -> Result<FlagCycle<'m>> {
        if y.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: y.arity() });
        }
        Ok(self.mul_quad(y)?.integrate_quad())
    }

    /// For a cycle on `G_0 × X^m`, the same cycle on `X^{1+m}`.
    pub fn to_quadric(&self) -> Result<QuadCycle> {
        let ctx = self.model.context();
        let mut out = QuadCycle::zero(ctx, self.arity + 1);
        if self.ring == CoeffRing::Mod2 {
            out = out.mod2();
        }
        for (j, q) in self.parts() {
            let x = crate::schubert::to_quadric(&FlagCycle::schubert(self.model, self.index, j)?)?;
            out = out.add(&x.external(q)?)?;
        }
        Ok(out)
    }

    /// Common codimension; `None` for zero or inhomogeneous cycles.
    pub fn codim(&self) -> Option<u32> {
        let ring = self.model.ring(self.index);
        let mut codims = self.parts().map(|(j, q)| q.codim().map(|c| c + ring.length(j)));
        let first = codims.next()??;
        codims.all(|c| c == Some(first)).then_some(first)
    }

    /// Invariance under permutations of the quadric factors.
    pub fn is_symmetric(&self) -> bool {
        self.parts.values().all(QuadCycle::is_symmetric)
    }
}

impl fmt::Debug for MixedCycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {} × X^{}", self, self.index, self.arity)?;
        if self.ring == CoeffRing::Mod2 {
            f.write_str(" (mod 2)")?;
        }
        Ok(())
    }
}

impl fmt::Display for MixedCycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let reps = self.model.ring(self.index).reps();
        let parts: Vec<_> = self.parts().collect();
        for (pos, (j, q)) in parts.into_iter().enumerate() {
            if pos > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "σ{} × ({})", reps[j], q)?;
        }
        Ok(())
    }
}
