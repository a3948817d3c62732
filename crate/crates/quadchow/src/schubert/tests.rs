use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::coeff::CoeffRing;
use crate::quadpow::{basis, QuadCycle};

fn model(n: u32) -> FlagModel {
    FlagModel::new(QuadricContext::new(n).unwrap()).unwrap()
}

fn oriented(n: u32, o: Orientation) -> FlagModel {
    FlagModel::new(QuadricContext::with_orientation(n, o).unwrap()).unwrap()
}

fn full(m: &FlagModel) -> FlagIndex {
    let dims: Vec<u32> = (0..=m.context().d()).collect();
    m.flag(&dims).unwrap()
}

fn basis_of<'m>(m: &'m FlagModel, index: FlagIndex) -> Vec<FlagCycle<'m>> {
    (0..m.ring(index).len()).map(|j| FlagCycle::schubert(m, index, j).unwrap()).collect()
}

/// Coefficients of `Π (1 + q + ⋯ + q^{e-1})` over the degrees `e` of `W`.
fn poincare(family: Family, rank: usize) -> Vec<usize> {
    let mut degrees: Vec<usize> = (1..rank).map(|k| 2 * k).collect();
    degrees.push(if family == Family::B { 2 * rank } else { rank });
    let mut poly = alloc::vec![1usize];
    for e in degrees {
        let mut next = alloc::vec![0; poly.len() + e - 1];
        for (k, &c) in poly.iter().enumerate() {
            for t in 0..e {
                next[k + t] += c;
            }
        }
        poly = next;
    }
    poly
}

#[test]
fn full_flag_sizes_and_ranks() {
    for (n, size) in [(3, 8), (4, 24), (5, 48), (6, 192), (7, 384)] {
        let m = model(n);
        let ring = m.ring(full(&m));
        assert_eq!(ring.len(), size, "n = {n}");
        assert_eq!(ring.ranks(), poincare(m.context().family(), m.context().rank()));
    }
    assert!(FlagModel::new(QuadricContext::new(2).unwrap()).is_err());
}

#[test]
fn quadric_ranks() {
    for n in 3..=8 {
        let m = model(n);
        let ring = m.ring(m.flag(&[0]).unwrap());
        let ranks = ring.ranks();
        assert_eq!(ranks.len() as u32, n + 1);
        for (k, &r) in ranks.iter().enumerate() {
            let expected = if n % 2 == 0 && k as u32 == n / 2 { 2 } else { 1 };
            assert_eq!(r, expected, "n = {n}, codim {k}");
        }
    }
}

/// Every numerator extracts to its own unit vector.
#[test]
fn numerators_are_dual_to_divided_differences() {
    for n in 3..=5 {
        let m = model(n);
        for index in m.all_indices() {
            for (j, f) in m.numerators(index).iter().enumerate() {
                assert_eq!(m.coordinates(index, f, m.denominator()).unwrap(), alloc::vec![(j, 1)], "n={n} {index}");
            }
        }
    }
}

#[test]
fn ring_axioms_small() {
    for n in 3..=4 {
        let m = model(n);
        for index in m.all_indices() {
            let b = basis_of(&m, index);
            let one = FlagCycle::one(&m, index);
            for x in &b {
                assert_eq!(&x.mul(&one).unwrap(), x);
                for y in &b {
                    let xy = x.mul(y).unwrap();
                    assert_eq!(xy, y.mul(x).unwrap());
                    for z in &b {
                        assert_eq!(xy.mul(z).unwrap(), x.mul(&y.mul(z).unwrap()).unwrap());
                    }
                }
            }
        }
    }
}

/// `CH(G_0)` matches the quadric ring on products, degrees and reductions.
#[test]
fn cross_model_quadric_ring() {
    for n in 3..=8 {
        for o in [Orientation::Plus, Orientation::Minus] {
            let m = oriented(n, o);
            let ctx = *m.context();
            for a in basis(&ctx) {
                let qa = QuadCycle::basis_element(&ctx, a).unwrap();
                let fa = from_quadric(&m, &qa).unwrap();
                assert_eq!(to_quadric(&fa).unwrap(), qa);
                assert_eq!(fa.deg(), qa.deg());
                for b in basis(&ctx) {
                    let qb = QuadCycle::basis_element(&ctx, b).unwrap();
                    let fb = from_quadric(&m, &qb).unwrap();
                    let prod = fa.mul(&fb).unwrap();
                    assert_eq!(to_quadric(&prod).unwrap(), qa.mul(&qb).unwrap(), "n={n} {a:?}·{b:?}");
                    assert_eq!(to_quadric(&prod.mod2()).unwrap(), qa.mod2().mul(&qb.mod2()).unwrap());
                }
            }
        }
    }
}

/// Below the middle the two orientations present the same variety with the
/// same tautological classes.
#[test]
fn transport_between_orientations() {
    for n in [4, 6, 8] {
        let plus = oriented(n, Orientation::Plus);
        let minus = oriented(n, Orientation::Minus);
        let d = n / 2;
        for i in 0..d {
            for j in (n - i - d)..=(n - i) {
                assert_eq!(class_z(&minus, i, j).unwrap().transport(&plus).unwrap(), class_z(&plus, i, j).unwrap());
            }
            for j in 0..=(d - i) {
                assert_eq!(class_w(&minus, i, j).unwrap().transport(&plus).unwrap(), class_w(&plus, i, j).unwrap());
            }
            for j in 0..=(i + 1) {
                let c = chern_taut(&minus, i, j).unwrap().transport(&plus).unwrap();
                assert_eq!(c, chern_taut(&plus, i, j).unwrap());
            }
        }
        assert!(class_z(&minus, d, d).unwrap().transport(&plus).is_err());
        assert!(class_z(&oriented(5, Orientation::Plus), 0, 5).unwrap().transport(&plus).is_err());
    }
}

#[test]
fn pull_push_basics() {
    for n in 3..=6 {
        let m = model(n);
        let d = m.context().d();
        let ctx = *m.context();
        assert_eq!(to_quadric(&class_z(&m, 0, n).unwrap()).unwrap(), QuadCycle::l(&ctx, 0).unwrap());
        for i in 0..=d {
            let gi = m.flag(&[i]).unwrap();
            assert_eq!(class_w(&m, i, 0).unwrap(), FlagCycle::one(&m, gi), "n={n} i={i}");
            for j in (n - i - d)..=(n - i) {
                assert_eq!(class_z(&m, i, j).unwrap().codim(), Some(j));
            }
            // too little codimension to survive the pushforward
            for t in 0..i {
                assert!(push_pull_h(&m, i, t).unwrap().is_zero());
            }
        }
        assert!(class_z(&m, 0, n + 1).is_err());
        assert!(class_w(&m, d, 1).is_err());
    }
}

fn z_or_zero<'m>(m: &'m FlagModel, i: u32, j: i64) -> FlagCycle<'m> {
    let gi = m.flag(&[i]).unwrap();
    u32::try_from(j).ok().and_then(|j| class_z(m, i, j).ok()).unwrap_or_else(|| FlagCycle::zero(m, gi))
}

fn w_or_zero<'m>(m: &'m FlagModel, i: u32, j: i64) -> FlagCycle<'m> {
    let gi = m.flag(&[i]).unwrap();
    u32::try_from(j).ok().and_then(|j| class_w(m, i, j).ok()).unwrap_or_else(|| FlagCycle::zero(m, gi))
}

/// The projective-bundle relations on `F(i-1,i)`; these fix the sign of the
/// Chern roots.
#[test]
fn bundle_relations_fix_conventions() {
    for n in 3..=6 {
        for o in [Orientation::Plus, Orientation::Minus] {
            let m = oriented(n, o);
            let d = m.context().d();
            for i in 1..=d {
                let f = m.flag(&[i - 1, i]).unwrap();
                let xi = class_o1(&m, i).unwrap();
                fn lift_to<'m>(x: FlagCycle<'m>, f: FlagIndex) -> FlagCycle<'m> {
                    x.pullback(f).unwrap()
                }
                let up = |x| lift_to(x, f);
                for j in (n + 1 - i - d)..=(n + 1 - i) {
                    let lhs = up(class_z(&m, i - 1, j).unwrap());
                    let rhs = xi
                        .mul(&up(z_or_zero(&m, i, j as i64 - 1)))
                        .unwrap()
                        .add(&up(z_or_zero(&m, i, j as i64)))
                        .unwrap();
                    assert_eq!(lhs, rhs, "Z relation n={n} i={i} j={j}");
                }
                for j in 0..(d + 1 - i) {
                    let lhs = up(class_w(&m, i - 1, j).unwrap());
                    let rhs = xi
                        .mul(&up(w_or_zero(&m, i, j as i64 - 1)))
                        .unwrap()
                        .add(&up(w_or_zero(&m, i, j as i64)))
                        .unwrap();
                    assert_eq!(lhs, rhs, "W relation n={n} i={i} j={j}");
                }
                let lhs = up(class_w(&m, i - 1, d + 1 - i).unwrap());
                let rhs = xi
                    .mul(&up(class_w(&m, i, d - i).unwrap()))
                    .unwrap()
                    .add(&up(class_z(&m, i, d + 1 - i).unwrap()).scale(2))
                    .unwrap();
                assert_eq!(lhs, rhs, "top W relation n={n} i={i}");
            }
        }
    }
}

#[test]
fn relative_hyperplane_class() {
    for n in 3..=6 {
        let m = model(n);
        for i in 1..=m.context().d() {
            let gi = m.flag(&[i]).unwrap();
            let xi = class_o1(&m, i).unwrap();
            for t in 0..=i {
                let pushed = xi.pow(t).unwrap().pushforward(gi).unwrap();
                let expected = if t == i { FlagCycle::one(&m, gi) } else { FlagCycle::zero(&m, gi) };
                assert_eq!(pushed, expected, "n={n} i={i} t={t}");
            }
            let back = m.flag(&[i - 1]).unwrap();
            let through = class_z(&m, i, n - 2 * i).unwrap().pullback(m.flag(&[i - 1, i]).unwrap()).unwrap();
            assert_eq!(through.pushforward(back).unwrap(), FlagCycle::one(&m, back));
        }
    }
}

#[test]
fn whitney_and_divisibility() {
    for n in 3..=6 {
        let m = model(n);
        let d = m.context().d();
        for i in 0..=d {
            let gi = m.flag(&[i]).unwrap();
            let taut: Vec<_> = (0..=i + 1).map(|j| chern_taut(&m, i, j).unwrap()).collect();
            let quot: Vec<_> = (0..=n + 1 - i).map(|j| chern_quot(&m, i, j).unwrap()).collect();
            assert_eq!(taut[0], FlagCycle::one(&m, gi));
            for k in 1..=(n + 2) as usize {
                let mut total = FlagCycle::zero(&m, gi);
                for (a, ca) in taut.iter().enumerate() {
                    if k >= a && k - a < quot.len() {
                        total = total.add(&ca.mul(&quot[k - a]).unwrap()).unwrap();
                    }
                }
                assert!(total.is_zero(), "n={n} i={i} k={k}");
            }
        }
        for i in 1..=d {
            for l in (d - i + 2)..=(n + 2 - i) {
                assert!(chern_quot(&m, i - 1, l).unwrap().mod2().is_zero(), "n={n} i={i} l={l}");
            }
        }
    }
}

#[test]
fn chern_roots_are_checked_for_invariance() {
    let m = model(5);
    let g1 = m.flag(&[1]).unwrap();
    let x1 = crate::polyring::IntPolynomial::var(3, 1);
    assert!(matches!(FlagCycle::from_polynomial(&m, g1, &x1, 1), Err(Error::NotInvariant(_))));
    let g0 = m.flag(&[0]).unwrap();
    assert!(FlagCycle::from_polynomial(&m, g0, &x1, 1).is_ok());
    assert!(matches!(FlagCycle::from_polynomial(&m, g0, &x1, 2), Err(Error::Integrality(_))));
}

/// Pushforward on Schubert classes agrees with the divided difference of the
/// relative longest element on polynomial representatives.
#[test]
fn pushforward_two_routes() {
    for n in 3..=5 {
        let m = model(n);
        let g = m.group();
        for src in m.all_indices() {
            for tgt in m.all_indices() {
                if !tgt.is_subset(src) {
                    continue;
                }
                let v = g
                    .multiply(
                        &g.parabolic_longest(m.ring(tgt).parabolic()),
                        &g.parabolic_longest(m.ring(src).parabolic()),
                    )
                    .unwrap();
                let word = g.reduced_word(&v).unwrap();
                for (j, f) in m.numerators(src).iter().enumerate() {
                    let pushed = f.divided_difference_word(g.family(), &word).unwrap();
                    let by_poly = FlagCycle::from_polynomial(&m, tgt, &pushed, m.denominator()).unwrap();
                    let by_table = FlagCycle::schubert(&m, src, j).unwrap().pushforward(tgt).unwrap();
                    assert_eq!(by_poly, by_table, "n={n} {src}->{tgt} j={j}");
                }
            }
        }
    }
}

#[test]
fn projection_formula_exhaustive() {
    for n in 3..=5 {
        let m = model(n);
        for src in m.all_indices() {
            for tgt in m.all_indices() {
                if !tgt.is_subset(src) || tgt == src {
                    continue;
                }
                for x in basis_of(&m, src) {
                    let pushed = x.pushforward(tgt).unwrap();
                    for y in basis_of(&m, tgt) {
                        let lhs = y.pullback(src).unwrap().mul(&x).unwrap().pushforward(tgt).unwrap();
                        assert_eq!(lhs, y.mul(&pushed).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn pullback_is_functorial_and_injective() {
    let m = model(5);
    let g0 = m.flag(&[0]).unwrap();
    let f01 = m.flag(&[0, 1]).unwrap();
    let all = full(&m);
    for x in basis_of(&m, g0) {
        let direct = x.pullback(all).unwrap();
        assert_eq!(x.pullback(f01).unwrap().pullback(all).unwrap(), direct);
        assert_eq!(x.pullback(g0).unwrap(), x);
        assert!(!direct.is_zero());
    }
    assert!(FlagCycle::one(&m, f01).pullback(g0).is_err());
    assert!(FlagCycle::one(&m, g0).pushforward(f01).is_err());
}

#[test]
fn degree_and_mod2() {
    let m = model(5);
    for index in m.all_indices() {
        let pt = FlagCycle::point(&m, index).unwrap();
        assert_eq!(pt.deg(), 1);
        assert_eq!(FlagCycle::one(&m, index).deg(), if m.ring(index).dimension() == 0 { 1 } else { 0 });
        assert!(pt.scale(2).mod2().is_zero());
        assert_eq!(pt.mod2().ring(), CoeffRing::Mod2);
    }
}

type Terms = Vec<(usize, i64)>;

fn arb_pair(n: u32, dims: &'static [u32]) -> impl Strategy<Value = (Terms, Terms)> {
    let m = model(n);
    let len = m.ring(m.flag(dims).unwrap()).len();
    let side = prop::collection::vec((0..len, -3i64..4), 0..4);
    (side.clone(), side)
}

fn build<'m>(m: &'m FlagModel, index: FlagIndex, terms: &[(usize, i64)]) -> FlagCycle<'m> {
    let mut x = FlagCycle::zero(m, index);
    for &(j, c) in terms {
        x.add_term(j, c);
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_is_a_ring_map((a, b) in arb_pair(5, &[1])) {
        let m = model(5);
        let g1 = m.flag(&[1]).unwrap();
        let f = m.flag(&[0, 1, 2]).unwrap();
        let (x, y) = (build(&m, g1, &a), build(&m, g1, &b));
        let lhs = x.pullback(f).unwrap().mul(&y.pullback(f).unwrap()).unwrap();
        prop_assert_eq!(lhs, x.mul(&y).unwrap().pullback(f).unwrap());
    }

    #[test]
    fn mod2_is_a_ring_map((a, b) in arb_pair(6, &[0, 2])) {
        let m = model(6);
        let f = m.flag(&[0, 2]).unwrap();
        let (x, y) = (build(&m, f, &a), build(&m, f, &b));
        prop_assert_eq!(x.mul(&y).unwrap().mod2(), x.mod2().mul(&y.mod2()).unwrap());
    }
}
