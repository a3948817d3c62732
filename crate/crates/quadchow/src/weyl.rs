//! Signed-permutation Weyl groups of types B and D.
//!
//! Elements act on `{±1, …, ±m}` with `w(-j) = -w(j)` and are stored in window
//! notation `[w(1), …, w(m)]`. Composition is `(wv)(j) = w(v(j))`. Simple
//! reflections: `s_i` swaps `i` and `i+1` for `i < m`; `s_m` negates `m` in
//! type B and sends `(m-1, m)` to `(-m, -(m-1))` in type D.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    B,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    rank: u8,
    window: [i8; MAX_RANK],
}

impl SignedPermutation {
    pub fn identity(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        let mut window = [0i8; MAX_RANK];
        for (j, slot) in window.iter_mut().enumerate().take(rank) {
            *slot = j as i8 + 1;
        }
        SignedPermutation { rank: rank as u8, window }
    }

    /// Builds an element from its window; absolute values must be a
    /// permutation of `1..=m`.
    pub fn from_window(entries: &[i8]) -> Result<Self> {
        let rank = entries.len();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::OutOfRange(alloc::format!("window of length {rank}")));
        }
        let mut seen = [false; MAX_RANK];
        for &e in entries {
            let a = e.unsigned_abs() as usize;
            if a == 0 || a > rank || seen[a - 1] {
                return Err(Error::OutOfRange(alloc::format!("window entries {entries:?}")));
            }
            seen[a - 1] = true;
        }
        let mut window = [0i8; MAX_RANK];
        window[..rank].copy_from_slice(entries);
        Ok(SignedPermutation { rank: rank as u8, window })
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn window(&self) -> &[i8] {
        &self.window[..self.rank()]
    }

    /// Image of a signed index `j ∈ {±1, …, ±m}`.
    pub fn apply(&self, j: i8) -> i8 {
        let v = self.window[j.unsigned_abs() as usize - 1];
        if j < 0 {
            -v
        } else {
            v
        }
    }

    pub fn negative_count(&self) -> usize {
        self.window().iter().filter(|&&e| e < 0).count()
    }

    pub fn is_identity(&self) -> bool {
        self.window().iter().enumerate().all(|(j, &e)| e == j as i8 + 1)
    }

    fn compose_unchecked(&self, other: &Self) -> Self {
        let mut window = [0i8; MAX_RANK];
        for (j, slot) in window.iter_mut().enumerate().take(self.rank()) {
            *slot = self.apply(other.window[j]);
        }
        SignedPermutation { rank: self.rank, window }
    }

    fn inverse_unchecked(&self) -> Self {
        let mut window = [0i8; MAX_RANK];
        for (j, &e) in self.window().iter().enumerate() {
            let target = e.unsigned_abs() as usize - 1;
            window[target] = if e < 0 { -(j as i8 + 1) } else { j as i8 + 1 };
        }
        SignedPermutation { rank: self.rank, window }
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (j, e) in self.window().iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// A root as a coefficient vector on the coordinate functionals `x_1..x_m`.
type Root = [i8; MAX_RANK];

fn is_positive(root: &Root) -> bool {
    root.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// Finite Weyl group of type `B_m` or `D_m`, fully enumerated.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    family: Family,
    rank: usize,
    positive_roots: Vec<Root>,
    simple_roots: Vec<Root>,
    simple: Vec<SignedPermutation>,
    elements: Vec<SignedPermutation>,
    lengths: Vec<u32>,
    index: BTreeMap<SignedPermutation, usize>,
}

impl WeylGroup {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::B => 1,
            Family::D => 2,
        };
        if rank < min || rank > MAX_RANK {
            return Err(Error::UnsupportedRank { family, rank });
        }
        let positive_roots = positive_roots(family, rank);
        let simple_roots = (1..=rank).map(|i| simple_root(family, rank, i)).collect();
        let simple: Vec<_> = (1..=rank).map(|i| simple_reflection(family, rank, i)).collect();

        let mut seen = BTreeSet::new();
        let mut frontier = alloc::vec![SignedPermutation::identity(rank)];
        seen.insert(frontier[0]);
        while let Some(w) = frontier.pop() {
            for s in &simple {
                let ws = w.compose_unchecked(s);
                if seen.insert(ws) {
                    frontier.push(ws);
                }
            }
        }
        let mut group = WeylGroup {
            family,
            rank,
            positive_roots,
            simple_roots,
            simple,
            elements: Vec::new(),
            lengths: Vec::new(),
            index: BTreeMap::new(),
        };
        let mut keyed: Vec<(u32, SignedPermutation)> =
            seen.into_iter().map(|w| (group.compute_length(&w), w)).collect();
        keyed.sort();
        for (pos, (len, w)) in keyed.into_iter().enumerate() {
            group.elements.push(w);
            group.lengths.push(len);
            group.index.insert(w, pos);
        }
        Ok(group)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements, sorted by length and then by window.
    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn index_of(&self, w: &SignedPermutation) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        self.index.contains_key(w)
    }

    pub fn identity(&self) -> SignedPermutation {
        SignedPermutation::identity(self.rank)
    }

    /// The simple reflection `s_i`, `1 ≤ i ≤ m`.
    pub fn simple_reflection(&self, i: usize) -> SignedPermutation {
        self.simple[i - 1]
    }

    /// The simple root `α_i` as a coefficient vector.
    pub fn simple_root(&self, i: usize) -> [i8; MAX_RANK] {
        self.simple_roots[i - 1]
    }

    pub fn positive_roots(&self) -> &[[i8; MAX_RANK]] {
        &self.positive_roots
    }

    pub fn longest_element(&self) -> SignedPermutation {
        *self.elements.last().expect("groups are nonempty")
    }

    fn check(&self, w: &SignedPermutation) -> Result<()> {
        if w.rank() != self.rank || !self.contains(w) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, w: &SignedPermutation, v: &SignedPermutation) -> Result<SignedPermutation> {
        self.check(w)?;
        self.check(v)?;
        Ok(w.compose_unchecked(v))
    }

    pub fn inverse(&self, w: &SignedPermutation) -> Result<SignedPermutation> {
        self.check(w)?;
        Ok(w.inverse_unchecked())
    }

    pub fn length(&self, w: &SignedPermutation) -> Result<u32> {
        match self.index_of(w) {
            Some(pos) if w.rank() == self.rank => Ok(self.lengths[pos]),
            _ => Err(Error::GroupMismatch),
        }
    }

    /// `w · s_i` without membership checks; `w` must belong to the group.
    pub fn right_mul_simple(&self, w: &SignedPermutation, i: usize) -> SignedPermutation {
        w.compose_unchecked(&self.simple[i - 1])
    }

    /// `s_i · w` without membership checks.
    pub fn left_mul_simple(&self, i: usize, w: &SignedPermutation) -> SignedPermutation {
        self.simple[i - 1].compose_unchecked(w)
    }

    fn act_on_root(&self, w: &SignedPermutation, root: &Root) -> Root {
        let mut image = [0i8; MAX_RANK];
        for (j, &c) in root.iter().enumerate().take(self.rank) {
            if c != 0 {
                let target = w.window[j];
                let slot = target.unsigned_abs() as usize - 1;
                image[slot] += if target < 0 { -c } else { c };
            }
        }
        image
    }

    fn compute_length(&self, w: &SignedPermutation) -> u32 {
        self.positive_roots.iter().filter(|root| !is_positive(&self.act_on_root(w, root))).count() as u32
    }

    /// `ℓ(w s_i) < ℓ(w)`, equivalently `w(α_i) < 0`.
    pub fn is_right_descent(&self, w: &SignedPermutation, i: usize) -> bool {
        !is_positive(&self.act_on_root(w, &self.simple_roots[i - 1]))
    }

    /// `ℓ(s_i w) < ℓ(w)`.
    pub fn is_left_descent(&self, w: &SignedPermutation, i: usize) -> bool {
        self.is_right_descent(&w.inverse_unchecked(), i)
    }

    /// A reduced word `[i_1, …, i_k]` with `w = s_{i_1} ⋯ s_{i_k}`, obtained by
    /// repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self, w: &SignedPermutation) -> Result<Vec<usize>> {
        self.check(w)?;
        let mut word = Vec::new();
        let mut current = *w;
        while !current.is_identity() {
            let i = (1..=self.rank)
                .find(|&i| self.is_right_descent(&current, i))
                .expect("non-identity elements have a right descent");
            word.push(i);
            current = self.right_mul_simple(&current, i);
        }
        word.reverse();
        Ok(word)
    }

    /// Elements with no right descent in `parabolic`, sorted by length.
    pub fn min_coset_reps(&self, parabolic: &[usize]) -> Vec<SignedPermutation> {
        self.elements.iter().filter(|w| parabolic.iter().all(|&i| !self.is_right_descent(w, i))).copied().collect()
    }

    /// Elements of the parabolic subgroup generated by `parabolic`.
    pub fn parabolic_subgroup(&self, parabolic: &[usize]) -> Vec<SignedPermutation> {
        self.elements
            .iter()
            .filter(|w| self.parabolic_decompose_unchecked(w, parabolic).0.is_identity())
            .copied()
            .collect()
    }

    /// Longest element of the parabolic subgroup.
    pub fn parabolic_longest(&self, parabolic: &[usize]) -> SignedPermutation {
        *self.parabolic_subgroup(parabolic).last().expect("parabolic subgroups contain the identity")
    }

    /// Factors `w = w_min · w_par` with `w_min` a minimal coset representative
    /// and `w_par` in the parabolic subgroup.
    pub fn parabolic_decompose(
        &self,
        w: &SignedPermutation,
        parabolic: &[usize],
    ) -> Result<(SignedPermutation, SignedPermutation)> {
        self.check(w)?;
        if let Some(&bad) = parabolic.iter().find(|&&i| i == 0 || i > self.rank) {
            return Err(Error::OutOfRange(alloc::format!("simple reflection {bad}")));
        }
        Ok(self.parabolic_decompose_unchecked(w, parabolic))
    }

    fn parabolic_decompose_unchecked(
        &self,
        w: &SignedPermutation,
        parabolic: &[usize],
    ) -> (SignedPermutation, SignedPermutation) {
        let mut min = *w;
        let mut par = self.identity();
        while let Some(&i) = parabolic.iter().find(|&&i| self.is_right_descent(&min, i)) {
            min = self.right_mul_simple(&min, i);
            par = self.left_mul_simple(i, &par);
        }
        (min, par)
    }
}

fn simple_root(family: Family, rank: usize, i: usize) -> Root {
    let mut root = [0i8; MAX_RANK];
    if i < rank {
        root[i - 1] = 1;
        root[i] = -1;
    } else {
        match family {
            Family::B => root[rank - 1] = 1,
            Family::D => {
                root[rank - 2] = 1;
                root[rank - 1] = 1;
            }
        }
    }
    root
}

fn positive_roots(family: Family, rank: usize) -> Vec<Root> {
    let mut roots = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            for sign in [-1, 1] {
                let mut root = [0i8; MAX_RANK];
                root[i] = 1;
                root[j] = sign;
                roots.push(root);
            }
        }
        if family == Family::B {
            let mut root = [0i8; MAX_RANK];
            root[i] = 1;
            roots.push(root);
        }
    }
    roots
}

/// The simple reflection `s_i` of `family` in rank `rank`, `1 ≤ i ≤ rank`.
pub fn simple_reflection(family: Family, rank: usize, i: usize) -> SignedPermutation {
    let mut w = SignedPermutation::identity(rank);
    if i < rank {
        w.window.swap(i - 1, i);
    } else {
        match family {
            Family::B => w.window[rank - 1] = -(rank as i8),
            Family::D => {
                w.window[rank - 2] = -(rank as i8);
                w.window[rank - 1] = -(rank as i8 - 1);
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(m: usize) -> usize {
        (1..=m).product()
    }

    #[test]
    fn orders() {
        assert_eq!(WeylGroup::new(Family::B, 1).unwrap().order(), 2);
        assert_eq!(WeylGroup::new(Family::B, 2).unwrap().order(), 8);
        assert_eq!(WeylGroup::new(Family::D, 3).unwrap().order(), 24);
        for m in 1..=MAX_RANK {
            assert_eq!(WeylGroup::new(Family::B, m).unwrap().order(), (1 << m) * factorial(m));
        }
        for m in 2..=MAX_RANK {
            assert_eq!(WeylGroup::new(Family::D, m).unwrap().order(), (1 << (m - 1)) * factorial(m));
        }
    }

    #[test]
    fn unsupported_ranks() {
        assert!(matches!(WeylGroup::new(Family::D, 1), Err(Error::UnsupportedRank { .. })));
        assert!(matches!(WeylGroup::new(Family::B, 6), Err(Error::UnsupportedRank { .. })));
        assert!(matches!(WeylGroup::new(Family::B, 0), Err(Error::UnsupportedRank { .. })));
    }

    #[test]
    fn longest_lengths() {
        for m in 1..=MAX_RANK {
            let g = WeylGroup::new(Family::B, m).unwrap();
            assert_eq!(g.length(&g.longest_element()).unwrap() as usize, m * m);
        }
        for m in 2..=MAX_RANK {
            let g = WeylGroup::new(Family::D, m).unwrap();
            assert_eq!(g.length(&g.longest_element()).unwrap() as usize, m * m - m);
        }
        let b3 = WeylGroup::new(Family::B, 3).unwrap();
        assert_eq!(b3.length(&b3.longest_element()).unwrap(), 9);
        let d3 = WeylGroup::new(Family::D, 3).unwrap();
        assert_eq!(d3.length(&d3.longest_element()).unwrap(), 6);
    }

    /// Independent length oracle: breadth-first distance in the Cayley graph.
    fn cayley_distances(g: &WeylGroup) -> BTreeMap<SignedPermutation, u32> {
        let mut dist = BTreeMap::new();
        dist.insert(g.identity(), 0);
        let mut layer = alloc::vec![g.identity()];
        let mut k = 0;
        while !layer.is_empty() {
            k += 1;
            let mut next = Vec::new();
            for w in &layer {
                for i in 1..=g.rank() {
                    let ws = g.right_mul_simple(w, i);
                    if let alloc::collections::btree_map::Entry::Vacant(slot) = dist.entry(ws) {
                        slot.insert(k);
                        next.push(ws);
                    }
                }
            }
            layer = next;
        }
        dist
    }

    #[test]
    fn lengths_match_word_metric() {
        for (family, m) in [(Family::B, 3), (Family::B, 4), (Family::D, 3), (Family::D, 4)] {
            let g = WeylGroup::new(family, m).unwrap();
            let dist = cayley_distances(&g);
            for w in g.elements() {
                assert_eq!(g.length(w).unwrap(), dist[w], "{family:?}{m} {w}");
            }
        }
    }

    #[test]
    fn simple_steps_change_length_by_one() {
        for (family, m) in [(Family::B, 4), (Family::D, 4), (Family::D, 5)] {
            let g = WeylGroup::new(family, m).unwrap();
            for w in g.elements() {
                let l = g.length(w).unwrap() as i64;
                for i in 1..=m {
                    let ws = g.right_mul_simple(w, i);
                    let lws = g.length(&ws).unwrap() as i64;
                    assert_eq!((l - lws).abs(), 1);
                    assert_eq!(g.is_right_descent(w, i), lws < l);
                }
            }
        }
    }

    #[test]
    fn d_evenness() {
        let g = WeylGroup::new(Family::D, 4).unwrap();
        assert!(g.elements().iter().all(|w| w.negative_count() % 2 == 0));
    }

    #[test]
    fn group_axioms_and_mismatch() {
        let g = WeylGroup::new(Family::B, 3).unwrap();
        for w in g.elements() {
            let inv = g.inverse(w).unwrap();
            assert!(g.multiply(w, &inv).unwrap().is_identity());
            assert!(g.multiply(&inv, w).unwrap().is_identity());
        }
        let other = WeylGroup::new(Family::B, 2).unwrap();
        let w = other.longest_element();
        assert_eq!(g.multiply(&w, &w), Err(Error::GroupMismatch));
        let d = WeylGroup::new(Family::D, 3).unwrap();
        let odd = SignedPermutation::from_window(&[-1, 2, 3]).unwrap();
        assert_eq!(d.length(&odd), Err(Error::GroupMismatch));
    }

    #[test]
    fn reduced_words_multiply_back() {
        for (family, m) in [(Family::B, 3), (Family::D, 4), (Family::B, 4)] {
            let g = WeylGroup::new(family, m).unwrap();
            for w in g.elements() {
                let word = g.reduced_word(w).unwrap();
                assert_eq!(word.len() as u32, g.length(w).unwrap());
                let product = word.iter().fold(g.identity(), |acc, &i| g.right_mul_simple(&acc, i));
                assert_eq!(&product, w);
            }
        }
        let g = WeylGroup::new(Family::B, 2).unwrap();
        assert!(g.reduced_word(&g.identity()).unwrap().is_empty());
        assert_eq!(g.reduced_word(&g.simple_reflection(1)).unwrap(), [1]);
    }

    /// Brute force: the longest element of B_2 is a product of exactly four
    /// simple reflections and of no shorter word.
    #[test]
    fn b2_longest_needs_four_letters() {
        let g = WeylGroup::new(Family::B, 2).unwrap();
        let w0 = g.longest_element();
        let mut shortest = None;
        'outer: for len in 0..=4u32 {
            for code in 0..(1u32 << len) {
                let w =
                    (0..len).fold(g.identity(), |acc, bit| g.right_mul_simple(&acc, 1 + ((code >> bit) & 1) as usize));
                if w == w0 {
                    shortest = Some(len);
                    break 'outer;
                }
            }
        }
        assert_eq!(shortest, Some(4));
        assert_eq!(g.reduced_word(&w0).unwrap().len(), 4);
    }

    #[test]
    fn coset_representatives() {
        let b2 = WeylGroup::new(Family::B, 2).unwrap();
        assert_eq!(b2.min_coset_reps(&[2]).len(), 4);
        assert_eq!(b2.min_coset_reps(&[1, 2]), alloc::vec![b2.identity()]);
        assert_eq!(b2.min_coset_reps(&[]).len(), 8);
    }

    fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
        (0u32..(1 << m)).map(move |mask| (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect())
    }

    #[test]
    fn coset_tiling_is_exact() {
        for (family, m) in [(Family::B, 2), (Family::B, 3), (Family::D, 3), (Family::B, 4), (Family::D, 4)] {
            let g = WeylGroup::new(family, m).unwrap();
            for parabolic in subsets(m) {
                let reps = g.min_coset_reps(&parabolic);
                let sub = g.parabolic_subgroup(&parabolic);
                assert_eq!(reps.len() * sub.len(), g.order());
                let mut hit = BTreeSet::new();
                for u in &reps {
                    for v in &sub {
                        let uv = g.multiply(u, v).unwrap();
                        assert_eq!(g.length(&uv).unwrap(), g.length(u).unwrap() + g.length(v).unwrap());
                        assert!(hit.insert(uv));
                    }
                }
                assert_eq!(hit.len(), g.order());
            }
        }
    }

    #[test]
    fn decomposition_lengths_add() {
        let g = WeylGroup::new(Family::B, 3).unwrap();
        for w in g.elements() {
            let (min, par) = g.parabolic_decompose(w, &[1]).unwrap();
            assert_eq!(g.multiply(&min, &par).unwrap(), *w);
            assert_eq!(g.length(w).unwrap(), g.length(&min).unwrap() + g.length(&par).unwrap());
            assert!(!g.is_right_descent(&min, 1));
        }
        let (min, par) = g.parabolic_decompose(&g.identity(), &[1, 3]).unwrap();
        assert!(min.is_identity() && par.is_identity());
        let p = g.simple_reflection(3);
        assert_eq!(g.parabolic_decompose(&p, &[3]).unwrap(), (g.identity(), p));
    }
}
