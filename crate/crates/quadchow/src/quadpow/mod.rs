//! Chow rings of powers `X^m` of a split quadric in the monomial basis.
//!
//! A single factor has the basis `h^a` (`a ≤ d`, or `a < d` for even `n`),
//! `l_b` (`b ≤ d`) and, for even `n`, the second ruling `l_d'`; in even
//! dimension `h^d = l_d + l_d'`. Monomials on `X^m` are external products of
//! basis elements and coefficients are integers or residues mod 2.

mod correspondence;
mod literal;
mod named;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

pub use correspondence::Correspondence;
pub use literal::parse;
pub use named::{delta, diagonal, primordial_shape, rho, rost, sym_of_h_powers};

use crate::coeff::CoeffRing;
use crate::context::QuadricContext;
use crate::error::{Error, Result};

/// Largest number of factors of a quadric power.
pub const MAX_ARITY: usize = 8;

/// Basis element of `CH(X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadBasis {
    /// `h^a`, codimension `a`.
    H(u8),
    /// `l_b`, the class of a `b`-dimensional isotropic subspace.
    L(u8),
    /// `l_d'`, the second ruling in even dimension; carries `d`.
    LPrime(u8),
}

impl QuadBasis {
    fn sort_key(self) -> (u8, i16, u8) {
        match self {
            QuadBasis::H(a) => (0, a as i16, 0),
            QuadBasis::L(b) => (1, -(b as i16), 0),
            QuadBasis::LPrime(b) => (1, -(b as i16), 1),
        }
    }

    pub fn codim(self, ctx: &QuadricContext) -> u32 {
        match self {
            QuadBasis::H(a) => a as u32,
            QuadBasis::L(b) | QuadBasis::LPrime(b) => ctx.n() - b as u32,
        }
    }

    /// Whether this is a valid basis element for `ctx`.
    pub fn is_valid(self, ctx: &QuadricContext) -> bool {
        let d = ctx.d() as u8;
        match self {
            QuadBasis::H(a) => a < d || (a == d && !ctx.is_even()),
            QuadBasis::L(b) => b <= d,
            QuadBasis::LPrime(b) => ctx.is_even() && b == d,
        }
    }
}

impl Ord for QuadBasis {
    /// Increasing codimension; `l_d` before `l_d'`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for QuadBasis {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The basis of `CH(X)` in increasing codimension.
pub fn basis(ctx: &QuadricContext) -> Vec<QuadBasis> {
    let d = ctx.d() as u8;
    let top_h = if ctx.is_even() { d } else { d + 1 };
    let mut out: Vec<QuadBasis> = (0..top_h).map(QuadBasis::H).collect();
    for b in (0..=d).rev() {
        out.push(QuadBasis::L(b));
        if b == d && ctx.is_even() {
            out.push(QuadBasis::LPrime(d));
        }
    }
    out
}

/// `h^k` on a single factor as a combination of basis elements.
pub fn h_power_terms(ctx: &QuadricContext, k: u32) -> Vec<(QuadBasis, i64)> {
    let (n, d) = (ctx.n(), ctx.d());
    if k > n {
        Vec::new()
    } else if k < d || (k == d && !ctx.is_even()) {
        alloc::vec![(QuadBasis::H(k as u8), 1)]
    } else if k == d {
        alloc::vec![(QuadBasis::L(d as u8), 1), (QuadBasis::LPrime(d as u8), 1)]
    } else {
        alloc::vec![(QuadBasis::L((n - k) as u8), 2)]
    }
}

/// Product of two basis elements of `CH(X)`.
pub fn basis_product(ctx: &QuadricContext, a: QuadBasis, b: QuadBasis) -> Vec<(QuadBasis, i64)> {
    use QuadBasis::*;
    let n = ctx.n();
    if a.codim(ctx) + b.codim(ctx) > n {
        return Vec::new();
    }
    match (a, b) {
        (H(x), H(y)) => h_power_terms(ctx, x as u32 + y as u32),
        (H(x), L(y)) | (L(y), H(x)) => alloc::vec![(L(y - x), 1)],
        (H(x), LPrime(y)) | (LPrime(y), H(x)) => {
            alloc::vec![(if x == 0 { LPrime(y) } else { L(y - x) }, 1)]
        }
        // Only two middle classes of an even quadric have complementary codimensions.
        (L(_) | LPrime(_), L(_) | LPrime(_)) => {
            let same = matches!((a, b), (L(_), L(_)) | (LPrime(_), LPrime(_)));
            if same == (n % 4 == 0) {
                alloc::vec![(L(0), 1)]
            } else {
                Vec::new()
            }
        }
    }
}

/// `deg(a·b)` for basis elements of `CH(X)`.
pub fn pairing(ctx: &QuadricContext, a: QuadBasis, b: QuadBasis) -> i64 {
    basis_product(ctx, a, b).into_iter().filter(|(c, _)| *c == QuadBasis::L(0)).map(|(_, k)| k).sum()
}

/// The basis element `b^∨` with `deg(b·b^∨) = 1` and `deg(b·c) = 0` for every
/// other basis element `c`.
pub fn dual_basis_element(ctx: &QuadricContext, b: QuadBasis) -> QuadBasis {
    let mut found = None;
    for c in basis(ctx) {
        match pairing(ctx, b, c) {
            0 => {}
            1 if found.is_none() => found = Some(c),
            other => panic!("intersection form is not unimodular at {b:?}, {c:?}: {other}"),
        }
    }
    found.expect("every basis element has a dual")
}

/// A basis monomial of `CH(X^m)`: an external product of basis elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadMonomial {
    len: u8,
    slots: [QuadBasis; MAX_ARITY],
}

impl QuadMonomial {
    pub fn new(factors: &[QuadBasis]) -> Self {
        assert!(factors.len() <= MAX_ARITY, "at most {MAX_ARITY} factors");
        let mut slots = [QuadBasis::H(0); MAX_ARITY];
        slots[..factors.len()].copy_from_slice(factors);
        QuadMonomial { len: factors.len() as u8, slots }
    }

    pub fn unit(arity: usize) -> Self {
        Self::new(&alloc::vec![QuadBasis::H(0); arity])
    }

    pub fn arity(&self) -> usize {
        self.len as usize
    }

    pub fn factors(&self) -> &[QuadBasis] {
        &self.slots[..self.arity()]
    }

    pub fn codim(&self, ctx: &QuadricContext) -> u32 {
        self.factors().iter().map(|b| b.codim(ctx)).sum()
    }

    pub fn with_factor(mut self, slot: usize, b: QuadBasis) -> Self {
        self.slots[slot] = b;
        self
    }

    pub fn concat(&self, other: &QuadMonomial) -> Self {
        let mut factors = self.factors().to_vec();
        factors.extend_from_slice(other.factors());
        Self::new(&factors)
    }

    /// The factors at `positions`, in that order.
    pub fn select(&self, positions: &[usize]) -> Self {
        let factors: Vec<_> = positions.iter().map(|&p| self.slots[p]).collect();
        Self::new(&factors)
    }

    pub fn is_point(&self) -> bool {
        self.factors().iter().all(|&b| b == QuadBasis::L(0))
    }
}

/// Product of two monomials of the same arity, expanded in the basis.
pub fn monomial_product(ctx: &QuadricContext, a: &QuadMonomial, b: &QuadMonomial) -> Vec<(QuadMonomial, i64)> {
    let mut partial = alloc::vec![(QuadMonomial::unit(a.arity()), 1i64)];
    for slot in 0..a.arity() {
        let local = basis_product(ctx, a.slots[slot], b.slots[slot]);
        let mut next = Vec::with_capacity(partial.len() * local.len());
        for (m, c) in &partial {
            for &(f, k) in &local {
                next.push((m.with_factor(slot, f), c * k));
            }
        }
        partial = next;
        if partial.is_empty() {
            break;
        }
    }
    partial
}

/// `deg(a·b)` on `X^m`, which factors over the slots.
pub fn monomial_pairing(ctx: &QuadricContext, a: &QuadMonomial, b: &QuadMonomial) -> i64 {
    let mut out = 1;
    for slot in 0..a.arity() {
        out *= pairing(ctx, a.slots[slot], b.slots[slot]);
        if out == 0 {
            break;
        }
    }
    out
}

/// All permutations of `0..m` as images `p[j]`.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                prefix.push(j);
                rec(prefix, used, out);
                prefix.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut alloc::vec![false; m], &mut out);
    out
}

/// Sign of a permutation given by its images.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of `CH(X^m)` (or `Ch(X^m)` for mod-2 coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadCycle {
    ctx: QuadricContext,
    arity: usize,
    ring: CoeffRing,
    terms: BTreeMap<QuadMonomial, i64>,
}

impl QuadCycle {
    pub fn zero(ctx: &QuadricContext, arity: usize) -> Self {
        assert!(arity <= MAX_ARITY, "at most {MAX_ARITY} factors");
        QuadCycle { ctx: ctx.unoriented(), arity, ring: CoeffRing::Integer, terms: BTreeMap::new() }
    }

    /// The fundamental class `[X^m]`.
    pub fn unit(ctx: &QuadricContext, arity: usize) -> Self {
        Self::from_monomial(ctx, QuadMonomial::unit(arity), 1)
    }

    pub fn from_monomial(ctx: &QuadricContext, m: QuadMonomial, c: i64) -> Self {
        let mut out = Self::zero(ctx, m.arity());
        out.add_term(m, c);
        out
    }

    /// A single basis element on `X`.
    pub fn basis_element(ctx: &QuadricContext, b: QuadBasis) -> Result<Self> {
        if !b.is_valid(ctx) {
            return Err(Error::OutOfRange(alloc::format!("{b:?} for n = {}", ctx.n())));
        }
        Ok(Self::from_monomial(ctx, QuadMonomial::new(&[b]), 1))
    }

    /// `h^k` on `X`.
    pub fn h_power(ctx: &QuadricContext, k: u32) -> Self {
        let mut out = Self::zero(ctx, 1);
        for (b, c) in h_power_terms(ctx, k) {
            out.add_term(QuadMonomial::new(&[b]), c);
        }
        out
    }

    /// `l_b` on `X` (`b ≤ d`).
    pub fn l(ctx: &QuadricContext, b: u32) -> Result<Self> {
        Self::basis_element(ctx, QuadBasis::L(b as u8))
    }

    /// `l_d'` on `X`, for even `n`.
    pub fn l_prime(ctx: &QuadricContext) -> Result<Self> {
        Self::basis_element(ctx, QuadBasis::LPrime(ctx.d() as u8))
    }

    pub fn context(&self) -> &QuadricContext {
        &self.ctx
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QuadMonomial, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &QuadMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: QuadMonomial, c: i64) {
        debug_assert_eq!(m.arity(), self.arity);
        let entry = self.terms.entry(m).or_insert(0);
        *entry = self.ring.reduce(*entry + c);
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    fn empty_like(&self, arity: usize, ring: CoeffRing) -> Self {
        QuadCycle { ctx: self.ctx, arity, ring, terms: BTreeMap::new() }
    }

    fn check_compatible(&self, other: &QuadCycle) -> Result<()> {
        if self.ctx.n() != other.ctx.n() {
            return Err(Error::ContextMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadCycle) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.ring = self.ring.join(other.ring);
        out.renormalize();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QuadCycle) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.empty_like(self.arity, self.ring);
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    fn renormalize(&mut self) {
        let ring = self.ring;
        self.terms.retain(|_, c| {
            *c = ring.reduce(*c);
            *c != 0
        });
    }

    /// Coefficient-wise reduction modulo 2.
    pub fn mod2(&self) -> Self {
        let mut out = self.clone();
        out.ring = CoeffRing::Mod2;
        out.renormalize();
        out
    }

    /// Reinterprets mod-2 coefficients `0/1` as integers.
    pub fn lift(&self) -> Self {
        let mut out = self.clone();
        out.ring = CoeffRing::Integer;
        out
    }

    /// Internal product on `X^m`.
    pub fn mul(&self, other: &QuadCycle) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.empty_like(self.arity, self.ring.join(other.ring));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                for (m, k) in monomial_product(&self.ctx, a, b) {
                    out.add_term(m, ca * cb * k);
                }
            }
        }
        Ok(out)
    }

    /// External product `x × y` on `X^{a+b}`.
    pub fn external(&self, other: &QuadCycle) -> Result<Self> {
        if self.ctx.n() != other.ctx.n() {
            return Err(Error::ContextMismatch);
        }
        let arity = self.arity + other.arity;
        if arity > MAX_ARITY {
            return Err(Error::ArityMismatch { expected: MAX_ARITY, found: arity });
        }
        let mut out = self.empty_like(arity, self.ring.join(other.ring));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Pushforward along the automorphism of `X^m` moving factor `j` to
    /// position `p[j]`.
    pub fn permute(&self, p: &[usize]) -> Result<Self> {
        let mut seen = alloc::vec![false; self.arity];
        if p.len() != self.arity || p.iter().any(|&t| t >= self.arity || core::mem::replace(&mut seen[t], true)) {
            return Err(Error::InvalidPattern(alloc::format!("{p:?} is not a permutation")));
        }
        let mut out = self.empty_like(self.arity, self.ring);
        for (m, c) in &self.terms {
            let mut image = *m;
            for (j, &t) in p.iter().enumerate() {
                image.slots[t] = m.slots[j];
            }
            out.add_term(image, *c);
        }
        Ok(out)
    }

    /// `Σ_{s ∈ S_m} s_*(x)`, summed over all `m!` permutations.
    pub fn sym(&self) -> Self {
        self.signed_permutation_sum(false)
    }

    /// `Σ_{s ∈ A_m} s_*(x)` over the alternating group.
    pub fn alternating_sum(&self) -> Self {
        self.signed_permutation_sum(true)
    }

    fn signed_permutation_sum(&self, even_only: bool) -> Self {
        let mut out = self.empty_like(self.arity, self.ring);
        for p in permutations(self.arity) {
            if even_only && permutation_sign(&p) < 0 {
                continue;
            }
            for (m, c) in &self.terms {
                let mut image = *m;
                for (j, &t) in p.iter().enumerate() {
                    image.slots[t] = m.slots[j];
                }
                out.add_term(image, *c);
            }
        }
        out
    }

    /// `Σ_{j=0}^{m-1} σ^j_*(x)` for the cyclic shift `σ: k ↦ k+1 mod m`.
    pub fn cyclic_sum(&self) -> Self {
        let m = self.arity;
        let mut out = self.empty_like(m, self.ring);
        for shift in 0..m {
            let p: Vec<usize> = (0..m).map(|j| (j + shift) % m).collect();
            for (mono, c) in &self.terms {
                let mut image = *mono;
                for (j, &t) in p.iter().enumerate() {
                    image.slots[t] = mono.slots[j];
                }
                out.add_term(image, *c);
            }
        }
        out
    }

    /// Pushforward to the factors listed in `keep` (in that order); the other
    /// factors are integrated.
    pub fn push_proj(&self, keep: &[usize]) -> Result<Self> {
        self.check_selection(keep)?;
        let dropped: Vec<usize> = (0..self.arity).filter(|j| !keep.contains(j)).collect();
        let mut out = self.empty_like(keep.len(), self.ring);
        for (m, c) in &self.terms {
            if dropped.iter().all(|&j| m.slots[j] == QuadBasis::L(0)) {
                out.add_term(m.select(keep), *c);
            }
        }
        Ok(out)
    }

    /// Pullback along the projection `X^arity → X^m` onto the factors
    /// `positions` (factor `j` of `self` lands in slot `positions[j]`).
    pub fn pull_proj(&self, arity: usize, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.arity || arity > MAX_ARITY {
            return Err(Error::InvalidPattern(alloc::format!("{positions:?} into {arity} factors")));
        }
        let mut seen = alloc::vec![false; arity];
        if positions.iter().any(|&t| t >= arity || core::mem::replace(&mut seen[t], true)) {
            return Err(Error::InvalidPattern(alloc::format!("{positions:?} into {arity} factors")));
        }
        let mut out = self.empty_like(arity, self.ring);
        for (m, c) in &self.terms {
            let mut image = QuadMonomial::unit(arity);
            for (j, &t) in positions.iter().enumerate() {
                image.slots[t] = m.slots[j];
            }
            out.add_term(image, *c);
        }
        Ok(out)
    }

    /// Pullback along `f: X^{arity} → X^m` with `f(y)_j = y_{pattern[j]}`.
    /// Factors sent to the same slot are multiplied.
    pub fn pull_diagonal(&self, arity: usize, pattern: &[usize]) -> Result<Self> {
        if pattern.len() != self.arity || arity > MAX_ARITY || pattern.iter().any(|&t| t >= arity) {
            return Err(Error::InvalidPattern(alloc::format!("{pattern:?} into {arity} factors")));
        }
        let mut out = self.empty_like(arity, self.ring);
        for (m, c) in &self.terms {
            let mut partial = alloc::vec![(QuadMonomial::unit(arity), *c)];
            for (j, &t) in pattern.iter().enumerate() {
                let mut next = Vec::new();
                for (p, k) in &partial {
                    for (b, e) in basis_product(&self.ctx, p.slots[t], m.slots[j]) {
                        next.push((p.with_factor(t, b), k * e));
                    }
                }
                partial = next;
            }
            for (p, k) in partial {
                out.add_term(p, k);
            }
        }
        Ok(out)
    }

    fn check_selection(&self, keep: &[usize]) -> Result<()> {
        let mut seen = alloc::vec![false; self.arity];
        if keep.iter().any(|&j| j >= self.arity || core::mem::replace(&mut seen[j], true)) {
            return Err(Error::InvalidPattern(alloc::format!("{keep:?} from {} factors", self.arity)));
        }
        Ok(())
    }

    /// Degree: the sum of the coefficients of the point class `l_0 × ⋯ × l_0`.
    /// Terms of other codimensions are ignored.
    pub fn deg(&self) -> i64 {
        let total: i64 = self.terms.iter().filter(|(m, _)| m.is_point()).map(|(_, c)| c).sum();
        self.ring.reduce(total)
    }

    /// Like [`QuadCycle::deg`] but rejects inhomogeneous cycles.
    pub fn deg_strict(&self) -> Result<i64> {
        if self.codim().is_none() && !self.is_zero() {
            return Err(Error::Inhomogeneous);
        }
        Ok(self.deg())
    }

    /// Common codimension of all terms, `None` if inhomogeneous or zero.
    pub fn codim(&self) -> Option<u32> {
        let mut codims = self.terms.keys().map(|m| m.codim(&self.ctx));
        let first = codims.next()?;
        codims.all(|c| c == first).then_some(first)
    }

    /// True iff the cycle is a combination of external products of powers of
    /// `h`. Besides the basis classes `h^a`, such products involve
    /// `h^d = l_d + l_d'` in even dimension and `h^{n-b} = 2 l_b` above the
    /// middle, so the check runs in the basis where those are coordinates.
    pub fn is_nonessential(&self) -> bool {
        // Per slot: 0 = h^a, 1 = l_d + l_d', 2 = l_d' (never reached), 3 = l_b (only as 2 l_b).
        let d = self.ctx.d() as u8;
        let even = self.ctx.is_even();
        let rebase = |b: QuadBasis| -> Vec<((u8, u8), i64)> {
            match b {
                QuadBasis::H(a) => alloc::vec![((0, a), 1)],
                QuadBasis::L(x) if even && x == d => alloc::vec![((1, x), 1), ((2, x), -1)],
                QuadBasis::LPrime(x) => alloc::vec![((2, x), 1)],
                QuadBasis::L(x) => alloc::vec![((3, x), 1)],
            }
        };
        let mut coords: BTreeMap<Vec<(u8, u8)>, i64> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut partial: Vec<(Vec<(u8, u8)>, i64)> = alloc::vec![(Vec::new(), c)];
            for &b in m.factors() {
                let mut next = Vec::new();
                for (key, k) in &partial {
                    for (tag, e) in rebase(b) {
                        let mut key = key.clone();
                        key.push(tag);
                        next.push((key, k * e));
                    }
                }
                partial = next;
            }
            for (key, k) in partial {
                *coords.entry(key).or_insert(0) += k;
            }
        }
        coords.iter().all(|(key, &c)| {
            let c = self.ring.reduce(c);
            if key.iter().any(|t| t.0 == 2) {
                return c == 0;
            }
            let twos = key.iter().filter(|t| t.0 == 3).count() as u32;
            match self.ring {
                CoeffRing::Mod2 => twos == 0 || c == 0,
                CoeffRing::Integer => c % (1i64 << twos) == 0,
            }
        })
    }

    /// Invariance under all permutations of the factors.
    pub fn is_symmetric(&self) -> bool {
        permutations(self.arity).iter().all(|p| self.permute(p).map(|x| x == *self).unwrap_or(false))
    }
}

#[cfg(test)]
mod tests;
