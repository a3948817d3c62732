use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::{FlagIndex, FlagModel};
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::polyring::IntPolynomial;

/// An element of `CH(F(I))` (or `Ch` with `Z/2` coefficients) in the Schubert
/// basis. Keys are positions in [`super::FlagRing::reps`].
#[derive(Clone)]
pub struct FlagCycle<'m> {
    model: &'m FlagModel,
    index: FlagIndex,
    ring: CoeffRing,
    terms: BTreeMap<usize, i64>,
}

impl PartialEq for FlagCycle<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.model, other.model)
            && self.index == other.index
            && self.ring == other.ring
            && self.terms == other.terms
    }
}

impl Eq for FlagCycle<'_> {}

impl<'m> FlagCycle<'m> {
    pub fn zero(model: &'m FlagModel, index: FlagIndex) -> Self {
        FlagCycle { model, index, ring: CoeffRing::Integer, terms: BTreeMap::new() }
    }

    /// The fundamental class `[F(I)]`.
    pub fn one(model: &'m FlagModel, index: FlagIndex) -> Self {
        Self::schubert(model, index, 0).expect("identity is a representative")
    }

    pub fn schubert(model: &'m FlagModel, index: FlagIndex, j: usize) -> Result<Self> {
        model.check_index(index)?;
        if j >= model.ring(index).len() {
            return Err(Error::OutOfRange(alloc::format!("Schubert index {j} on {index}")));
        }
        let mut out = Self::zero(model, index);
        out.add_term(j, 1);
        Ok(out)
    }

    /// The class of a point of `F(I)`.
    pub fn point(model: &'m FlagModel, index: FlagIndex) -> Result<Self> {
        model.check_index(index)?;
        Self::schubert(model, index, model.ring(index).point())
    }

    /// The class of `f / denominator` for a `W_P`-invariant polynomial `f`.
    pub fn from_polynomial(
        model: &'m FlagModel,
        index: FlagIndex,
        f: &IntPolynomial,
        denominator: i128,
    ) -> Result<Self> {
        let mut out = Self::zero(model, index);
        for (j, c) in model.coordinates(index, f, denominator)? {
            out.add_term(j, c);
        }
        Ok(out)
    }

    pub fn model(&self) -> &'m FlagModel {
        self.model
    }

    pub fn index(&self) -> FlagIndex {
        self.index
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&j, &c)| (j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, j: usize) -> i64 {
        self.terms.get(&j).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, j: usize, c: i64) {
        let entry = self.terms.entry(j).or_insert(0);
        *entry = self.ring.reduce(*entry + c);
        if *entry == 0 {
            self.terms.remove(&j);
        }
    }

    fn check_same(&self, other: &FlagCycle<'_>) -> Result<()> {
        if !core::ptr::eq(self.model, other.model) {
            return Err(Error::ContextMismatch);
        }
        if self.index != other.index {
            return Err(Error::FlagMismatch(alloc::format!("{} vs {}", self.index, other.index)));
        }
        Ok(())
    }

    fn empty_like(&self, ring: CoeffRing) -> Self {
        FlagCycle { model: self.model, index: self.index, ring, terms: BTreeMap::new() }
    }

    pub fn add(&self, other: &FlagCycle<'_>) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.ring = self.ring.join(other.ring);
        if out.ring != self.ring {
            out = out.reduced();
        }
        for (j, c) in other.terms() {
            out.add_term(j, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FlagCycle<'_>) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// The same class in another model of the same quadric. Only allowed when
    /// both models present `F(I)` by the same parabolic subgroup, i.e. away
    /// from the component of `G_d` that distinguishes the orientations.
    pub fn transport<'n>(&self, target: &'n FlagModel) -> Result<FlagCycle<'n>> {
        if self.model.context().n() != target.context().n() {
            return Err(Error::ContextMismatch);
        }
        let (from, to) = (self.model.ring(self.index), target.ring(self.index));
        if from.parabolic() != to.parabolic() || from.reps() != to.reps() {
            return Err(Error::FlagMismatch(alloc::format!(
                "{} is presented differently in the two models",
                self.index
            )));
        }
        Ok(FlagCycle { model: target, index: self.index, ring: self.ring, terms: self.terms.clone() })
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.empty_like(self.ring);
        for (j, c) in self.terms() {
            out.add_term(j, c * k);
        }
        out
    }

    fn reduced(&self) -> Self {
        let mut out = self.empty_like(self.ring);
        for (j, c) in self.terms() {
            out.add_term(j, c);
        }
        out
    }

    /// Reduction modulo 2.
    pub fn mod2(&self) -> Self {
        let mut out = self.clone();
        out.ring = CoeffRing::Mod2;
        out.reduced()
    }

    /// The integral cycle with the same coefficients (representatives in
    /// `{0, 1}` for a mod-2 cycle).
    pub fn lift(&self) -> Self {
        let mut out = self.clone();
        out.ring = CoeffRing::Integer;
        out
    }

    pub fn mul(&self, other: &FlagCycle<'_>) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.empty_like(self.ring.join(other.ring));
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                for &(j, c) in self.model.product_coordinates(self.index, a, b)? {
                    out.add_term(j, ca * cb * c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::one(self.model, self.index);
        out.ring = self.ring;
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Pullback along `F(target) → F(self.index)`, defined when
    /// `self.index ⊆ target`.
    pub fn pullback(&self, target: FlagIndex) -> Result<Self> {
        self.model.check_index(target)?;
        if !self.index.is_subset(target) {
            return Err(Error::FlagMismatch(alloc::format!("{} is not contained in {}", self.index, target)));
        }
        let src = self.model.ring(self.index);
        let tgt = self.model.ring(target);
        let mut out = FlagCycle { model: self.model, index: target, ring: self.ring, terms: BTreeMap::new() };
        for (j, c) in self.terms() {
            let k = tgt.position(&src.reps()[j]).expect("representatives of a larger parabolic");
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// Pushforward along `F(self.index) → F(target)`, defined when
    /// `target ⊆ self.index`.
    pub fn pushforward(&self, target: FlagIndex) -> Result<Self> {
        self.model.check_index(target)?;
        if !target.is_subset(self.index) {
            return Err(Error::FlagMismatch(alloc::format!("{} is not contained in {}", target, self.index)));
        }
        let table = self.model.push_table(self.index, target);
        let mut out = FlagCycle { model: self.model, index: target, ring: self.ring, terms: BTreeMap::new() };
        for (j, c) in self.terms() {
            if let Some(k) = table[j] {
                out.add_term(k, c);
            }
        }
        Ok(out)
    }

    /// Degree: the coefficient of the point class.
    pub fn deg(&self) -> i64 {
        self.coefficient(self.model.ring(self.index).point())
    }

    /// The common codimension of all terms; `None` for zero or mixed cycles.
    pub fn codim(&self) -> Option<u32> {
        let ring = self.model.ring(self.index);
        let mut codims = self.terms.keys().map(|&j| ring.length(j));
        let first = codims.next()?;
        codims.all(|c| c == first).then_some(first)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        let ring = self.model.ring(self.index);
        let mut out = self.empty_like(self.ring);
        for (j, c) in self.terms() {
            if ring.length(j) == k {
                out.add_term(j, c);
            }
        }
        out
    }
}

impl fmt::Debug for FlagCycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self, self.index)?;
        if self.ring == CoeffRing::Mod2 {
            f.write_str(" (mod 2)")?;
        }
        Ok(())
    }
}

/// Terms print as `σ[w]` with `w` in window notation, in the order of the
/// representatives.
impl fmt::Display for FlagCycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let reps = self.model.ring(self.index).reps();
        let terms: Vec<_> = self.terms().collect();
        for (pos, (j, c)) in terms.into_iter().enumerate() {
            match (pos, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if c.unsigned_abs() != 1 {
                write!(f, "{} ", c.unsigned_abs())?;
            }
            write!(f, "σ{}", reps[j])?;
        }
        Ok(())
    }
}
