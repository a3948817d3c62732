//! Sparse multivariate polynomials with the signed-permutation action and the
//! divided-difference operators of types B and D.
//!
//! Exponent vectors are packed into a `u64`, one byte per variable with `x_1`
//! in the most significant byte, so the map order is lexicographic with
//! `x_1 > x_2 > …`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weyl::{Family, SignedPermutation};

pub const MAX_VARS: usize = 8;

pub type Rational = Ratio<i128>;
pub type Polynomial = Poly<Rational>;
pub type IntPolynomial = Poly<i128>;

/// Coefficient types usable in [`Poly`].
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(k: usize) -> u32 {
        8 * (MAX_VARS - 1 - k) as u32
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::ONE;
        for (k, &e) in exps.iter().enumerate() {
            m = m.with_exponent(k, e);
        }
        m
    }

    pub fn var(k: usize) -> Self {
        Monomial::ONE.with_exponent(k, 1)
    }

    /// Exponent of the variable with 0-based index `k`.
    pub fn exponent(self, k: usize) -> u8 {
        (self.0 >> Self::shift(k)) as u8
    }

    pub fn with_exponent(self, k: usize, e: u8) -> Self {
        let s = Self::shift(k);
        Monomial((self.0 & !(0xffu64 << s)) | ((e as u64) << s))
    }

    pub fn degree(self) -> u32 {
        self.0.to_be_bytes().iter().map(|&b| b as u32).sum()
    }

    pub fn exponents(self, nvars: usize) -> Vec<u8> {
        (0..nvars).map(|k| self.exponent(k)).collect()
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        let mut bytes = self.0.to_be_bytes();
        for (b, o) in bytes.iter_mut().zip(other.0.to_be_bytes()) {
            *b = b.checked_add(o).expect("exponent overflow");
        }
        Monomial(u64::from_be_bytes(bytes))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in 0..MAX_VARS {
            let e = self.exponent(k);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `degree` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(k: usize, nvars: usize, left: u32, current: Monomial, out: &mut Vec<Monomial>) {
        if k + 1 == nvars {
            out.push(current.with_exponent(k, left as u8));
            return;
        }
        for e in (0..=left).rev() {
            rec(k + 1, nvars, left - e, current.with_exponent(k, e as u8), out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, nvars, degree, Monomial::ONE, &mut out);
    out
}

#[derive(Clone, PartialEq)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, Monomial::ONE, c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    /// The variable `x_k` with 1-based index `k`.
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= nvars);
        Self::monomial(nvars, Monomial::var(k - 1), C::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::ONE)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(*m, a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if rank != self.nvars {
            return Err(Error::RankMismatch { expected: self.nvars, found: rank });
        }
        Ok(())
    }

    /// The Weyl action `x_k ↦ x_{w(k)}` with `x_{-j} = -x_j`.
    pub fn act(&self, w: &SignedPermutation) -> Result<Self> {
        self.check_rank(w.rank())?;
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut image = Monomial::ONE;
            let mut negative = false;
            for k in 0..self.nvars {
                let e = m.exponent(k);
                if e == 0 {
                    continue;
                }
                let target = w.apply(k as i8 + 1);
                image = image.with_exponent(target.unsigned_abs() as usize - 1, e);
                if target < 0 && e % 2 == 1 {
                    negative = !negative;
                }
            }
            out.add_term(image, if negative { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// `∂_i f = (f − s_i f) / α_i` for the simple root `α_i` of `family`.
    pub fn divided_difference(&self, family: Family, i: usize) -> Result<Self> {
        let m = self.nvars;
        if i == 0 || i > m || (family == Family::D && m < 2) {
            return Err(Error::OutOfRange(alloc::format!("simple index {i} in rank {m}")));
        }
        let s = crate::weyl::simple_reflection(family, m, i);
        let numerator = self - &self.act(&s)?;
        let divisor = if i < m {
            Divisor::Binomial { a: i - 1, b: i, lambda_negative: false }
        } else {
            match family {
                Family::B => Divisor::Variable(m - 1),
                Family::D => Divisor::Binomial { a: m - 2, b: m - 1, lambda_negative: true },
            }
        };
        numerator.exact_divide(divisor).ok_or(Error::InexactDivision { index: i })
    }

    /// `∂_{i_1} ∘ ⋯ ∘ ∂_{i_k}` applied to `self` (rightmost letter first).
    pub fn divided_difference_word(&self, family: Family, word: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &i in word.iter().rev() {
            if out.is_zero() {
                break;
            }
            out = out.divided_difference(family, i)?;
        }
        Ok(out)
    }

    fn exact_divide(&self, divisor: Divisor) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        match divisor {
            Divisor::Variable(a) => {
                for (m, c) in &self.terms {
                    let e = m.exponent(a);
                    if e == 0 {
                        return None;
                    }
                    out.add_term(m.with_exponent(a, e - 1), c.clone());
                }
            }
            Divisor::Binomial { a, b, lambda_negative } => {
                // Group by the remaining variables and the total degree in
                // (x_a, x_b); each group is a binary form divided by
                // x_a − λ x_b via synthetic division.
                let mut groups: BTreeMap<(Monomial, u32), BTreeMap<u32, C>> = BTreeMap::new();
                for (m, c) in &self.terms {
                    let (ea, eb) = (m.exponent(a) as u32, m.exponent(b) as u32);
                    let rest = m.with_exponent(a, 0).with_exponent(b, 0);
                    groups.entry((rest, ea + eb)).or_default().insert(ea, c.clone());
                }
                let lambda = |x: C| if lambda_negative { -x } else { x };
                for ((rest, e), coeffs) in groups {
                    if e == 0 {
                        return None;
                    }
                    // c_p = d_{p-1} − λ d_p, where c_p multiplies x_a^p x_b^{e−p}.
                    let mut d = C::zero();
                    let mut quotient: Vec<C> = alloc::vec![C::zero(); e as usize];
                    for p in (1..=e).rev() {
                        let c_p = coeffs.get(&p).cloned().unwrap_or_else(C::zero);
                        let d_prev = if p == e { c_p } else { c_p + lambda(d.clone()) };
                        quotient[p as usize - 1] = d_prev.clone();
                        d = d_prev;
                    }
                    let c_0 = coeffs.get(&0).cloned().unwrap_or_else(C::zero);
                    if c_0 + lambda(d) != C::zero() {
                        return None;
                    }
                    for (p, coeff) in quotient.into_iter().enumerate() {
                        let q = rest.with_exponent(a, p as u8).with_exponent(b, (e - 1) as u8 - p as u8);
                        out.add_term(q, coeff);
                    }
                }
            }
        }
        Some(out)
    }

    /// Homogeneous component of degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.degree() == k {
                out.add_term(*m, c.clone());
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Divisor {
    /// `x_a`.
    Variable(usize),
    /// `x_a − λ x_b` with `λ = ±1`.
    Binomial { a: usize, b: usize, lambda_negative: bool },
}

/// The simple root `α_i` of `family` in rank `nvars` as a polynomial.
pub fn simple_root<C: Scalar>(family: Family, nvars: usize, i: usize) -> Poly<C> {
    let x = |k| Poly::<C>::var(nvars, k);
    if i < nvars {
        &x(i) - &x(i + 1)
    } else {
        match family {
            Family::B => x(nvars),
            Family::D => &x(nvars - 1) + &x(nvars),
        }
    }
}

impl<C: Scalar> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map_coefficients(|c| -c.clone())
    }
}

impl<C: Scalar> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Scalar> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            if pos > 0 {
                f.write_str(" + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m:?}")?;
            } else {
                write!(f, "({c})*{m:?}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::WeylGroup;
    use proptest::prelude::*;

    fn q(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn x(nvars: usize, k: usize) -> Polynomial {
        Polynomial::var(nvars, k)
    }

    #[test]
    fn monomial_packing() {
        let m = Monomial::from_exponents(&[3, 0, 2]);
        assert_eq!(m.exponents(3), [3, 0, 2]);
        assert_eq!(m.degree(), 5);
        assert!(Monomial::var(0) > Monomial::var(1));
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 5).len(), 56);
    }

    #[test]
    fn act_examples() {
        let g = WeylGroup::new(Family::B, 3).unwrap();
        let f = &x(3, 1) * &x(3, 2);
        assert_eq!(f.act(&g.identity()).unwrap(), f);
        assert_eq!(x(3, 3).act(&g.simple_reflection(3)).unwrap(), -&x(3, 3));
        assert!(matches!(x(2, 1).act(&g.identity()), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn divided_difference_examples() {
        let sq = &x(2, 1) * &x(2, 1);
        assert_eq!(sq.divided_difference(Family::B, 1).unwrap(), &x(2, 1) + &x(2, 2));
        for (family, m) in [(Family::B, 3), (Family::D, 3), (Family::D, 4)] {
            for i in 1..=m {
                let alpha: Polynomial = simple_root(family, m, i);
                assert_eq!(alpha.divided_difference(family, i).unwrap(), Polynomial::constant(m, q(2)));
            }
        }
        let inv = &(&x(3, 2) * &x(3, 2)) + &(&x(3, 3) * &x(3, 3));
        assert!(inv.divided_difference(Family::D, 3).unwrap().is_zero());
        assert!(inv.divided_difference(Family::B, 3).unwrap().is_zero());
    }

    #[test]
    fn inexact_division_is_reported() {
        let f = x(2, 1);
        assert_eq!(f.exact_divide(Divisor::Binomial { a: 0, b: 1, lambda_negative: false }), None);
        assert_eq!(f.exact_divide(Divisor::Variable(1)), None);
    }

    /// Independent termwise formulas for the three root shapes.
    fn termwise(family: Family, m: usize, i: usize, f: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero(m);
        for (mono, c) in f.terms() {
            let mut add = |mono: Monomial, c: i128| out.add_term(mono, c);
            if i < m {
                let (a, b) = (mono.exponent(i - 1), mono.exponent(i));
                let base = mono.with_exponent(i - 1, 0).with_exponent(i, 0);
                // (x^a y^b − x^b y^a)/(x − y)
                let (lo, hi, sign) = if a >= b { (b, a, 1) } else { (a, b, -1) };
                for t in 0..(hi - lo) {
                    let e1 = lo + t;
                    let e2 = hi - 1 - t;
                    add(base.with_exponent(i - 1, e2).with_exponent(i, e1), sign * c);
                }
            } else if family == Family::B {
                let a = mono.exponent(m - 1);
                if a % 2 == 1 {
                    add(mono.with_exponent(m - 1, a - 1), 2 * c);
                }
            } else {
                // substitute y = −x_m: x_{m−1}^a x_m^b = (−1)^b x^a y^b, root x − y
                let (a, b) = (mono.exponent(m - 2), mono.exponent(m - 1));
                let base = mono.with_exponent(m - 2, 0).with_exponent(m - 1, 0);
                let (lo, hi, sign) = if a >= b { (b, a, 1) } else { (a, b, -1) };
                for t in 0..(hi - lo) {
                    let e1 = lo + t;
                    let e2 = hi - 1 - t;
                    let back = if (b + e1) % 2 == 0 { 1 } else { -1 };
                    add(base.with_exponent(m - 2, e2).with_exponent(m - 1, e1), sign * back * c);
                }
            }
        }
        out
    }

    fn arb_int_poly(m: usize) -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec((prop::collection::vec(0u8..5, m), -4i128..5), 0..6).prop_map(move |terms| {
            let mut p = IntPolynomial::zero(m);
            for (exps, c) in terms {
                p.add_term(Monomial::from_exponents(&exps), c);
            }
            p
        })
    }

    fn arb_family_rank() -> impl Strategy<Value = (Family, usize)> {
        prop_oneof![Just((Family::B, 2)), Just((Family::B, 3)), Just((Family::D, 3)), Just((Family::D, 4))]
    }

    proptest! {
        #[test]
        fn matches_termwise_formula((family, m) in arb_family_rank(), seed in any::<u64>(), f in arb_int_poly(4)) {
            let i = 1 + (seed as usize % m);
            let f = IntPolynomial { nvars: m, terms: f.terms.into_iter()
                .filter(|(mono, _)| (m..4).all(|k| mono.exponent(k) == 0)).collect() };
            prop_assert_eq!(f.divided_difference(family, i).unwrap(), termwise(family, m, i, &f));
        }

        #[test]
        fn leibniz_and_nilpotence((family, m) in arb_family_rank(), seed in any::<u64>(),
                                  f in arb_int_poly(4), g in arb_int_poly(4)) {
            let restrict = |p: IntPolynomial| IntPolynomial { nvars: m, terms: p.terms.into_iter()
                .filter(|(mono, _)| (m..4).all(|k| mono.exponent(k) == 0)).collect() };
            let (f, g) = (restrict(f), restrict(g));
            let i = 1 + (seed as usize % m);
            let s = WeylGroup::new(family, m).unwrap().simple_reflection(i);
            let lhs = (&f * &g).divided_difference(family, i).unwrap();
            let rhs = &(&f.divided_difference(family, i).unwrap() * &g)
                + &(&f.act(&s).unwrap() * &g.divided_difference(family, i).unwrap());
            prop_assert_eq!(lhs, rhs);
            prop_assert!(f.divided_difference_word(family, &[i, i]).unwrap().is_zero());
            let d = f.divided_difference(family, i).unwrap();
            if let (Some(df), Some(dd)) = (f.degree(), d.degree()) {
                prop_assert!(dd < df);
            }
        }

        #[test]
        fn action_is_multiplicative(seed in any::<u64>(), f in arb_int_poly(3), g in arb_int_poly(3)) {
            let group = WeylGroup::new(Family::B, 3).unwrap();
            let w = group.elements()[seed as usize % group.order()];
            let v = group.elements()[(seed >> 20) as usize % group.order()];
            prop_assert_eq!((&f * &g).act(&w).unwrap(), &f.act(&w).unwrap() * &g.act(&w).unwrap());
            let wv = group.multiply(&w, &v).unwrap();
            prop_assert_eq!(f.act(&wv).unwrap(), f.act(&v).unwrap().act(&w).unwrap());
        }
    }

    /// All reduced words of `w`, by exhaustive descent.
    fn all_reduced_words(g: &WeylGroup, w: &SignedPermutation) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return alloc::vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 1..=g.rank() {
            if g.is_right_descent(w, i) {
                for mut word in all_reduced_words(g, &g.right_mul_simple(w, i)) {
                    word.push(i);
                    out.push(word);
                }
            }
        }
        out
    }

    #[test]
    fn word_independence_exhaustive() {
        for (family, m) in [(Family::B, 3), (Family::D, 3)] {
            let g = WeylGroup::new(family, m).unwrap();
            let probe = {
                let a = &(&x(m, 1) * &x(m, 1)) * &(&x(m, 1) * &x(m, 2));
                let b = &(&x(m, 2) * &x(m, 3)).pow(2) * &x(m, 3);
                let c = &(&x(m, 1) * &x(m, 2)) * &(&x(m, 3) * &x(m, 3));
                &(&(&a + &b) + &c) + &x(m, 1).pow(5).scale(&q(3))
            };
            for w in g.elements() {
                let words = all_reduced_words(&g, w);
                let first = probe.divided_difference_word(family, &words[0]).unwrap();
                for word in &words[1..] {
                    assert_eq!(probe.divided_difference_word(family, word).unwrap(), first, "{w}");
                }
            }
        }
    }
}
