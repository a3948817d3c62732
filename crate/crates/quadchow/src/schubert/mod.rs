//! Chow rings of the orthogonal grassmannians `G_i` and partial flag varieties
//! `F(I)` of a split quadric.
//!
//! `F(I)` is `G/P_I`, where `P_I` is generated by the simple reflections whose
//! nodes are not attached to `I`. Its Chow group is free on Schubert classes
//! `σ_w`, `w` a minimal coset representative; `σ_w` has codimension `ℓ(w)`.
//! Classes are represented in the rational coinvariant algebra starting from
//! the point class `σ_{w_0} = Π_{α>0} α / |W|` and applying divided
//! differences. Integer numerators `|W|·σ_w` are stored so that all
//! arithmetic stays in `i128`.
//!
//! Nodes: `G_i` sits at node `i + 1`. In type `D` the grassmannian `G_{d-1}`
//! sits at both spin nodes `{r-1, r}`, and `G_d` at node `r` (plus orientation)
//! or `r-1` (minus orientation).

mod cycle;
mod named;
#[cfg(test)]
mod tests;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

pub use cycle::FlagCycle;
pub use named::{
    chern_quot, chern_taut, class_o1, class_w, class_z, from_quadric, push_pull, push_pull_h, tautological_root,
    to_quadric,
};

use crate::context::{Orientation, QuadricContext};
use crate::error::{Error, Result};
use crate::polyring::{IntPolynomial, Monomial};
use crate::quadpow::{basis, QuadBasis};
use crate::weyl::{Family, SignedPermutation, WeylGroup};

/// A nonempty subset `I ⊆ {0, …, d}` naming `F(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagIndex(u8);

impl FlagIndex {
    pub fn new(ctx: &QuadricContext, dims: &[u32]) -> Result<Self> {
        let mut mask = 0u8;
        for &i in dims {
            if i > ctx.d() {
                return Err(Error::OutOfRange(alloc::format!("flag dimension {i} > d = {}", ctx.d())));
            }
            mask |= 1 << i;
        }
        if mask == 0 {
            return Err(Error::OutOfRange("empty flag index".into()));
        }
        Ok(FlagIndex(mask))
    }

    /// The grassmannian `G_i`.
    pub fn grassmannian(ctx: &QuadricContext, i: u32) -> Result<Self> {
        Self::new(ctx, &[i])
    }

    pub fn contains(self, i: u32) -> bool {
        i < 8 && self.0 & (1 << i) != 0
    }

    pub fn is_subset(self, other: FlagIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: FlagIndex) -> FlagIndex {
        FlagIndex(self.0 | other.0)
    }

    pub fn dims(self) -> Vec<u32> {
        (0..8).filter(|&i| self.contains(i)).collect()
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Dynkin nodes (1-based) attached to this index set.
    pub fn nodes(self, ctx: &QuadricContext) -> Vec<usize> {
        let r = ctx.rank();
        let d = ctx.d();
        let mut nodes = Vec::new();
        for i in self.dims() {
            if ctx.family() == Family::D && i + 1 == d {
                nodes.extend([r - 1, r]);
            } else if ctx.family() == Family::D && i == d {
                nodes.push(match ctx.orientation() {
                    Some(Orientation::Minus) => r - 1,
                    _ => r,
                });
            } else {
                nodes.push(i as usize + 1);
            }
        }
        nodes.sort_unstable();
        nodes.dedup();
        nodes
    }

    /// Generators of the parabolic subgroup: the nodes not attached to `I`.
    pub fn parabolic(self, ctx: &QuadricContext) -> Vec<usize> {
        let nodes = self.nodes(ctx);
        (1..=ctx.rank()).filter(|j| !nodes.contains(j)).collect()
    }
}

impl fmt::Display for FlagIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims = self.dims();
        if dims.len() == 1 {
            return write!(f, "G_{}", dims[0]);
        }
        f.write_str("F(")?;
        for (k, i) in dims.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str(")")
    }
}

/// Combinatorial data of one `F(I)` together with lazily built polynomial
/// representatives and product tables.
pub struct FlagRing {
    index: FlagIndex,
    parabolic: Vec<usize>,
    reps: Vec<SignedPermutation>,
    lengths: Vec<u32>,
    lookup: BTreeMap<SignedPermutation, usize>,
    /// `children[j]` lists `(c, i)` with `reps[c] = s_i · reps[j]`, where `i` is
    /// the smallest left descent of `reps[c]`.
    children: Vec<Vec<(usize, usize)>>,
    numerators: OnceBox<Vec<IntPolynomial>>,
    products: Vec<OnceBox<Vec<(usize, i64)>>>,
}

impl FlagRing {
    fn new(group: &WeylGroup, ctx: &QuadricContext, index: FlagIndex) -> Self {
        let parabolic = index.parabolic(ctx);
        let reps = group.min_coset_reps(&parabolic);
        let lengths: Vec<u32> = reps.iter().map(|w| group.length(w).expect("group element")).collect();
        let lookup: BTreeMap<_, _> = reps.iter().enumerate().map(|(j, w)| (*w, j)).collect();
        let mut children = alloc::vec![Vec::new(); reps.len()];
        for (c, w) in reps.iter().enumerate().skip(1) {
            let i = (1..=group.rank())
                .find(|&i| group.is_left_descent(w, i))
                .expect("non-identity elements have a left descent");
            let parent = lookup[&group.left_mul_simple(i, w)];
            children[parent].push((c, i));
        }
        let pairs = reps.len() * (reps.len() + 1) / 2;
        FlagRing {
            index,
            parabolic,
            reps,
            lengths,
            lookup,
            children,
            numerators: OnceBox::new(),
            products: (0..pairs).map(|_| OnceBox::new()).collect(),
        }
    }

    pub fn index(&self) -> FlagIndex {
        self.index
    }

    pub fn parabolic(&self) -> &[usize] {
        &self.parabolic
    }

    /// Number of Schubert classes.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Minimal coset representatives, sorted by length; position 0 is the
    /// identity (the fundamental class) and the last one is the point class.
    pub fn reps(&self) -> &[SignedPermutation] {
        &self.reps
    }

    pub fn length(&self, j: usize) -> u32 {
        self.lengths[j]
    }

    pub fn position(&self, w: &SignedPermutation) -> Option<usize> {
        self.lookup.get(w).copied()
    }

    pub fn dimension(&self) -> u32 {
        *self.lengths.last().expect("rings are nonempty")
    }

    pub fn point(&self) -> usize {
        self.reps.len() - 1
    }

    /// Number of Schubert classes in each codimension.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = alloc::vec![0; self.dimension() as usize + 1];
        for &l in &self.lengths {
            out[l as usize] += 1;
        }
        out
    }

    fn pair_slot(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        b * (b + 1) / 2 + a
    }
}

/// The Schubert model of every `F(I)` for one quadric.
pub struct FlagModel {
    ctx: QuadricContext,
    group: WeylGroup,
    top: OnceBox<IntPolynomial>,
    rings: Vec<OnceBox<FlagRing>>,
    pushes: Vec<OnceBox<Vec<Option<usize>>>>,
    quadric: OnceBox<Vec<(QuadBasis, usize)>>,
}

impl fmt::Debug for FlagModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagModel").field("ctx", &self.ctx).finish_non_exhaustive()
    }
}

/// The Schubert models of one quadric. In even dimension the maximal
/// isotropic grassmannian `G_d` has two components, modelled by the two
/// orientations; classes on it are pairs, and degrees and pushforwards to
/// other varieties add up over the components. Everything not involving
/// `G_d` is computed in the plus model.
#[derive(Debug)]
pub struct SchubertModels {
    models: Vec<FlagModel>,
}

impl SchubertModels {
    pub fn new(n: u32) -> Result<Self> {
        let plus = FlagModel::new(QuadricContext::new(n)?)?;
        let mut models = alloc::vec![plus];
        if n % 2 == 0 {
            models.push(FlagModel::new(QuadricContext::with_orientation(n, Orientation::Minus)?)?);
        }
        Ok(SchubertModels { models })
    }

    pub fn context(&self) -> &QuadricContext {
        self.models[0].context()
    }

    /// The plus model.
    pub fn primary(&self) -> &FlagModel {
        &self.models[0]
    }

    pub fn all(&self) -> &[FlagModel] {
        &self.models
    }

    /// The models covering `G_i`: both components for `i = d` in even
    /// dimension, the plus model otherwise.
    pub fn components(&self, i: u32) -> &[FlagModel] {
        if i == self.context().d() {
            &self.models
        } else {
            &self.models[..1]
        }
    }
}

impl FlagModel {
    pub const MIN_N: u32 = 3;

    pub fn new(ctx: QuadricContext) -> Result<Self> {
        if ctx.n() < Self::MIN_N {
            return Err(Error::DimensionOutOfRange { n: ctx.n(), min: Self::MIN_N, max: QuadricContext::MAX_N });
        }
        let group = WeylGroup::new(ctx.family(), ctx.rank())?;
        let subsets = 1usize << (ctx.d() + 1);
        Ok(FlagModel {
            ctx,
            group,
            top: OnceBox::new(),
            rings: (0..subsets).map(|_| OnceBox::new()).collect(),
            pushes: (0..subsets * subsets).map(|_| OnceBox::new()).collect(),
            quadric: OnceBox::new(),
        })
    }

    pub fn context(&self) -> &QuadricContext {
        &self.ctx
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn flag(&self, dims: &[u32]) -> Result<FlagIndex> {
        FlagIndex::new(&self.ctx, dims)
    }

    /// Every index set, from `{0}` up to `{0, …, d}`.
    pub fn all_indices(&self) -> Vec<FlagIndex> {
        (1..self.rings.len()).map(|m| FlagIndex(m as u8)).collect()
    }

    pub fn ring(&self, index: FlagIndex) -> &FlagRing {
        self.rings[index.0 as usize].get_or_init(|| Box::new(FlagRing::new(&self.group, &self.ctx, index)))
    }

    fn check_index(&self, index: FlagIndex) -> Result<()> {
        if (index.0 as usize) < self.rings.len() && index.0 != 0 {
            Ok(())
        } else {
            Err(Error::FlagMismatch(alloc::format!("{index} is not a flag variety of this quadric")))
        }
    }

    fn nvars(&self) -> usize {
        self.ctx.rank()
    }

    /// `Π_{α>0} α`, the numerator of the point class on the full flag variety.
    pub fn top_numerator(&self) -> &IntPolynomial {
        self.top.get_or_init(|| {
            let m = self.nvars();
            let mut out = IntPolynomial::one(m);
            for root in self.group.positive_roots() {
                let mut linear = IntPolynomial::zero(m);
                for (k, &c) in root.iter().enumerate().take(m) {
                    if c != 0 {
                        linear.add_term(Monomial::var(k), c as i128);
                    }
                }
                out = &out * &linear;
            }
            Box::new(out)
        })
    }

    /// `|W|`, the denominator of every Schubert numerator.
    pub fn denominator(&self) -> i128 {
        self.group.order() as i128
    }

    /// `|W|·σ_w` for every minimal coset representative `w` of `F(I)`.
    pub fn numerators(&self, index: FlagIndex) -> &[IntPolynomial] {
        let ring = self.ring(index);
        ring.numerators.get_or_init(|| Box::new(self.compute_numerators(ring)))
    }

    /// `σ_v = ∂_i σ_{v s_i}` along right ascents, memoized up to `w_0`.
    fn compute_numerators(&self, ring: &FlagRing) -> Vec<IntPolynomial> {
        let g = &self.group;
        let family = g.family();
        let mut memo: BTreeMap<SignedPermutation, IntPolynomial> = BTreeMap::new();
        memo.insert(g.longest_element(), self.top_numerator().clone());
        for w in &ring.reps {
            let mut chain = Vec::new();
            let mut v = *w;
            while !memo.contains_key(&v) {
                let i = (1..=g.rank())
                    .find(|&i| !g.is_right_descent(&v, i))
                    .expect("only the longest element has no ascent");
                chain.push((v, i));
                v = g.right_mul_simple(&v, i);
            }
            while let Some((u, i)) = chain.pop() {
                let above = &memo[&g.right_mul_simple(&u, i)];
                let p = above.divided_difference(family, i).expect("numerators are divisible by simple roots");
                memo.insert(u, p);
            }
        }
        ring.reps.iter().map(|w| memo.remove(w).expect("computed above")).collect()
    }

    /// Coordinates of a homogeneous `W_P`-invariant polynomial of degree `k`:
    /// the coefficient of `σ_w` is `∂_w f`, computed down a tree of left
    /// descents.
    fn extract_homogeneous(&self, ring: &FlagRing, f: &IntPolynomial, k: u32) -> Result<Vec<(usize, i128)>> {
        let family = self.group.family();
        let mut out = Vec::new();
        if f.is_zero() {
            return Ok(out);
        }
        let mut stack = alloc::vec![(0usize, f.clone())];
        while let Some((node, g)) = stack.pop() {
            if g.is_zero() {
                continue;
            }
            if ring.lengths[node] == k {
                let c = g.constant_term();
                if g.len() != 1 || c == 0 {
                    return Err(Error::Inhomogeneous);
                }
                out.push((node, c));
                continue;
            }
            for &(child, i) in &ring.children[node] {
                if ring.lengths[child] <= k {
                    stack.push((child, g.divided_difference(family, i)?));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Schubert coordinates of the class of `f / denominator`, where `f` is a
    /// `W_P`-invariant polynomial. Non-integral coordinates are an error.
    pub fn coordinates(&self, index: FlagIndex, f: &IntPolynomial, denominator: i128) -> Result<Vec<(usize, i64)>> {
        self.check_index(index)?;
        if f.nvars() != self.nvars() {
            return Err(Error::RankMismatch { expected: self.nvars(), found: f.nvars() });
        }
        let ring = self.ring(index);
        let family = self.group.family();
        for &i in &ring.parabolic {
            if !f.divided_difference(family, i)?.is_zero() {
                return Err(Error::NotInvariant(alloc::format!("{index}")));
            }
        }
        let mut out = Vec::new();
        let top = f.degree().unwrap_or(0).min(ring.dimension());
        for k in 0..=top {
            let part = f.homogeneous_part(k);
            for (j, c) in self.extract_homogeneous(ring, &part, k)? {
                out.push((j, divide_exact(c, denominator)?));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Structure constants of `σ_a · σ_b` on `F(I)`.
    pub fn product_coordinates(&self, index: FlagIndex, a: usize, b: usize) -> Result<&[(usize, i64)]> {
        self.check_index(index)?;
        let ring = self.ring(index);
        if a >= ring.len() || b >= ring.len() {
            return Err(Error::OutOfRange(alloc::format!("Schubert index on {index}")));
        }
        let cell = &ring.products[ring.pair_slot(a, b)];
        let table = cell.get_or_try_init(|| {
            let k = ring.lengths[a] + ring.lengths[b];
            if k > ring.dimension() {
                return Ok(Box::new(Vec::new()));
            }
            if a == 0 || b == 0 {
                return Ok(Box::new(alloc::vec![(a.max(b), 1)]));
            }
            let nums = self.numerators(index);
            let f = &nums[a] * &nums[b];
            let denom = self.denominator() * self.denominator();
            let coords = self.extract_homogeneous(ring, &f, k)?;
            let out: Result<Vec<_>> = coords.into_iter().map(|(j, c)| Ok((j, divide_exact(c, denom)?))).collect();
            out.map(Box::new)
        })?;
        Ok(table)
    }

    /// For `J ⊆ I`, the image of each Schubert class of `F(I)` under
    /// pushforward to `F(J)`: `σ_w ↦ σ_u` when `w = u·v` with
    /// `v = w_{0,P_J} w_{0,P_I}` and lengths adding, and `0` otherwise.
    fn push_table(&self, source: FlagIndex, target: FlagIndex) -> &[Option<usize>] {
        let slot = source.0 as usize * self.rings.len() + target.0 as usize;
        self.pushes[slot].get_or_init(|| {
            let g = &self.group;
            let src = self.ring(source);
            let tgt = self.ring(target);
            let v = g
                .multiply(&g.parabolic_longest(&tgt.parabolic), &g.parabolic_longest(&src.parabolic))
                .expect("same group");
            let table = src
                .reps
                .iter()
                .map(|w| {
                    let (u, x) = g.parabolic_decompose(w, &tgt.parabolic).expect("valid parabolic");
                    if x == v {
                        tgt.position(&u)
                    } else {
                        None
                    }
                })
                .collect();
            Box::new(table)
        })
    }

    /// The Schubert class of `G_0 = X` matching each quadric basis element.
    ///
    /// Off the middle codimension the match is by codimension. In the middle
    /// codimension of an even-dimensional quadric, `l_d` is the ruling of the
    /// plus component of `G_d`: the class whose pull-push through `F(0,d)` onto
    /// that component is `[G_d]`. The labels therefore agree between the two
    /// orientations, and on the minus component `l_d'` is the class pushing
    /// to `[G_d]`.
    pub fn quadric_basis(&self) -> &[(QuadBasis, usize)] {
        self.quadric.get_or_init(|| Box::new(self.compute_quadric_basis()))
    }

    fn compute_quadric_basis(&self) -> Vec<(QuadBasis, usize)> {
        let ctx = &self.ctx;
        let g0 = FlagIndex(1);
        let ring = self.ring(g0);
        let by_codim = |k: u32| -> Vec<usize> { (0..ring.len()).filter(|&j| ring.lengths[j] == k).collect() };
        let own_ruling = if ctx.is_even() {
            let d = ctx.d();
            let gd = FlagIndex(1 << d);
            let f0d = FlagIndex(1 | (1 << d));
            let down = self.push_table(f0d, gd);
            let candidates = by_codim(d);
            let chosen = candidates.iter().copied().find(|&c| {
                // pull σ_c to F(0,d), push to G_d, and look for the fundamental class
                let up = self.ring(f0d).position(&ring.reps[c]).expect("pullback is re-indexing");
                down[up] == Some(0)
            });
            chosen
        } else {
            None
        };
        let minus = ctx.orientation() == Some(Orientation::Minus);
        let middle = |prime: bool| -> usize {
            let own = own_ruling.expect("one middle class pushes to 1");
            if prime == minus {
                own
            } else {
                *by_codim(ctx.d()).iter().find(|&&c| c != own).expect("two middle classes")
            }
        };
        basis(ctx)
            .into_iter()
            .map(|b| {
                let k = b.codim(ctx);
                let options = by_codim(k);
                let j = match b {
                    QuadBasis::L(x) if ctx.is_even() && u32::from(x) == ctx.d() => middle(false),
                    QuadBasis::LPrime(_) => middle(true),
                    _ => {
                        debug_assert_eq!(options.len(), 1);
                        options[0]
                    }
                };
                (b, j)
            })
            .collect()
    }
}

fn divide_exact(c: i128, denominator: i128) -> Result<i64> {
    if c % denominator != 0 {
        return Err(Error::Integrality(alloc::format!("{c} / {denominator}")));
    }
    i64::try_from(c / denominator).map_err(|_| Error::Integrality(alloc::format!("{c} / {denominator} overflows")))
}
