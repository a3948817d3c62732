use alloc::string::ToString;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::context::Orientation;

fn ctx(n: u32) -> QuadricContext {
    QuadricContext::new(n).unwrap()
}

fn lit(c: &QuadricContext, s: &str) -> QuadCycle {
    parse(c, s).unwrap()
}

#[test]
fn spec_products() {
    let c3 = ctx(3);
    assert_eq!(lit(&c3, "h*h").to_string(), "2 l1");
    assert_eq!(lit(&c3, "l0*l0"), QuadCycle::zero(&c3, 1));
    let c4 = ctx(4);
    assert_eq!(lit(&c4, "l2*l2").to_string(), "l0");
    assert!(lit(&c4, "l2*l2'").is_zero());
    assert_eq!(lit(&c4, "l2'*l2'").to_string(), "l0");
    let c6 = ctx(6);
    assert!(lit(&c6, "l3*l3").is_zero());
    assert_eq!(lit(&c6, "l3*l3'").to_string(), "l0");
    assert_eq!(lit(&c6, "h^3").to_string(), "l3 + l3'");
    assert_eq!(lit(&c6, "h*l3'").to_string(), "l2");
    assert_eq!(lit(&c6, "h^4").to_string(), "2 l2");
    assert!(lit(&c6, "h*l0").is_zero());
}

#[test]
fn top_power_of_h_has_degree_two() {
    for n in 2..=8 {
        let c = ctx(n);
        let top = QuadCycle::h_power(&c, n);
        assert_eq!(top.push_proj(&[]).unwrap().deg(), 2, "n = {n}");
        assert_eq!(top.deg(), 2);
        assert!(QuadCycle::h_power(&c, n + 1).is_zero());
    }
}

/// `h^a · h^b = h^{a+b}` must hold however the powers are expanded.
#[test]
fn powers_of_h_are_consistent() {
    for n in 2..=8 {
        let c = ctx(n);
        for a in 0..=n {
            for b in 0..=n {
                let lhs = QuadCycle::h_power(&c, a).mul(&QuadCycle::h_power(&c, b)).unwrap();
                assert_eq!(lhs, QuadCycle::h_power(&c, a + b), "n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn ring_axioms_exhaustive() {
    for n in 2..=8 {
        let c = ctx(n);
        let basis: Vec<QuadCycle> = basis(&c).into_iter().map(|b| QuadCycle::basis_element(&c, b).unwrap()).collect();
        let one = QuadCycle::unit(&c, 1);
        for x in &basis {
            assert_eq!(&x.mul(&one).unwrap(), x);
            for y in &basis {
                let xy = x.mul(y).unwrap();
                assert_eq!(xy, y.mul(x).unwrap());
                if let (Some(a), Some(b), Some(cc)) = (x.codim(), y.codim(), xy.codim()) {
                    assert_eq!(a + b, cc);
                }
                for z in &basis {
                    assert_eq!(xy.mul(z).unwrap(), x.mul(&y.mul(z).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn intersection_form_is_unimodular() {
    for n in 2..=8 {
        let c = ctx(n);
        for b in basis(&c) {
            let dual = dual_basis_element(&c, b);
            assert_eq!(pairing(&c, b, dual), 1);
            assert_eq!(b.codim(&c) + dual.codim(&c), n);
            assert_eq!(dual_basis_element(&c, dual), b);
        }
    }
    let c4 = ctx(4);
    assert_eq!(dual_basis_element(&c4, QuadBasis::L(2)), QuadBasis::L(2));
    let c6 = ctx(6);
    assert_eq!(dual_basis_element(&c6, QuadBasis::L(3)), QuadBasis::LPrime(3));
}

#[test]
fn sym_examples() {
    let c = ctx(5);
    let rost_cycle = lit(&c, "1 x l0").sym();
    assert_eq!(rost_cycle.to_string(), "1 x l0 + l0 x 1");
    assert_eq!(lit(&c, "h x h").sym(), lit(&c, "2 h x h"));
    let x = lit(&c, "h x h^2 x l1");
    assert!(x.sym().is_symmetric());
    assert_eq!(x.sym().len(), 6);
}

#[test]
fn external_and_projection() {
    let c = ctx(5);
    let x = lit(&c, "h^2 + 3 l1");
    let with_point = x.external(&lit(&c, "l0")).unwrap();
    assert_eq!(with_point.push_proj(&[0]).unwrap(), x);
    assert!(x.external(&QuadCycle::zero(&c, 1)).unwrap().is_zero());
    assert!(x.external(&QuadCycle::unit(&c, 1)).unwrap().push_proj(&[0]).unwrap().is_zero());
    let pulled = x.pull_proj(3, &[1]).unwrap();
    assert_eq!(pulled, lit(&c, "1 x h^2 x 1 + 3 1 x l1 x 1"));
    assert!(x.push_proj(&[0, 0]).is_err());
}

#[test]
fn diagonal_pullbacks() {
    let c = ctx(5);
    assert_eq!(lit(&c, "h x h").pull_diagonal(1, &[0, 0]).unwrap(), lit(&c, "h^2"));
    let x = lit(&c, "h x l2 x l0");
    assert_eq!(x.pull_diagonal(3, &[0, 1, 2]).unwrap(), x);
    let one_rho = QuadCycle::unit(&c, 1).external(&rho(&c, 1).unwrap()).unwrap();
    assert_eq!(one_rho.pull_diagonal(2, &[0, 0, 1]).unwrap(), rho(&c, 1).unwrap());
    assert!(x.pull_diagonal(2, &[0, 2, 1]).is_err());
}

#[test]
fn named_cycles() {
    for n in 2..=8 {
        let c = ctx(n);
        assert_eq!(rho(&c, 0).unwrap(), lit(&c, "l0"));
        assert_eq!(rho(&c, 1).unwrap(), lit(&c, "1 x l0 + l0 x 1"));
        assert_eq!(rost(&c).cycle(), &rho(&c, 1).unwrap());
        for i in 1..=c.d() {
            let expected = n + i * (i - 1) / 2;
            assert_eq!(rho(&c, i).unwrap().codim(), Some(expected));
            assert_eq!(delta(&c, i).unwrap().codim(), Some(expected));
            assert!(rho(&c, i).unwrap().is_symmetric());
        }
        assert!(rho(&c, c.d() + 1).is_err());
        assert!(delta(&c, 0).is_err());
    }
}

/// The diagonal acts as the identity and agrees with the explicit sum
/// `Σ b × b^∨` over the basis.
#[test]
fn diagonal_class() {
    for n in 2..=8 {
        let c = ctx(n);
        let diag = Correspondence::new(diagonal(&c), 1).unwrap();
        let mut explicit = QuadCycle::zero(&c, 2);
        for b in basis(&c) {
            explicit.add_term(QuadMonomial::new(&[b, dual_basis_element(&c, b)]), 1);
        }
        assert_eq!(diag.cycle(), &explicit);
        for b in basis(&c) {
            let x = QuadCycle::basis_element(&c, b).unwrap();
            assert_eq!(diag.action(&x).unwrap(), x);
        }
    }
}

#[test]
fn delta_one_against_diagonal() {
    for n in 2..=8 {
        let c = ctx(n);
        let d = c.d();
        let mut lhs = delta(&c, 1).unwrap().mod2();
        let middle_square = QuadCycle::h_power(&c, d).mul(&QuadCycle::h_power(&c, d)).unwrap();
        if c.is_even() && !lit(&c, "ld*ld").is_zero() {
            let hd = QuadCycle::h_power(&c, d);
            lhs = lhs.add(&hd.external(&hd).unwrap()).unwrap();
        }
        assert_eq!(lhs, diagonal(&c).mod2(), "n = {n}");
        assert!(!middle_square.is_zero());
    }
}

#[test]
fn primordial_shapes() {
    for n in 2..=8 {
        let c = ctx(n);
        let d = c.d();
        let zeros = alloc::vec![false; d as usize];
        assert_eq!(primordial_shape(&c, 1, &zeros).unwrap().cycle(), &rho(&c, 1).unwrap().mod2());
        for i1 in 1..=d {
            let len = (d + 2).saturating_sub(2 * i1) as usize;
            for mask in 0u32..(1 << len) {
                let a: Vec<bool> = (0..len).map(|t| mask & (1 << t) != 0).collect();
                let pi = primordial_shape(&c, i1, &a).unwrap();
                assert_eq!(pi.transpose(), pi);
                assert_eq!(pi.cycle().codim(), Some(n - i1 + 1));
            }
        }
        assert!(primordial_shape(&c, 0, &[]).is_err());
    }
}

#[test]
fn nonessential() {
    let c = ctx(5);
    assert!(lit(&c, "h^2 x h").is_nonessential());
    assert!(!lit(&c, "1 x l0").is_nonessential());
}

#[test]
fn literal_examples_and_errors() {
    let c = ctx(4);
    assert_eq!(lit(&c, "l_2'"), lit(&c, "ld'"));
    assert_eq!(lit(&c, "l_1"), lit(&c, "l1"));
    assert_eq!(lit(&c, "-(h x 1) + 2 (h x 1)").to_string(), "h x 1");
    assert_eq!(lit(&c, "2 1 x l0").to_string(), "2 1 x l0");
    assert_eq!(lit(&c, "2 x l0").to_string(), "2 1 x l0");
    assert!(matches!(parse(&c, "h +"), Err(Error::Parse { .. })));
    assert!(matches!(parse(&c, "l1'"), Err(Error::Parse { .. })));
    assert!(matches!(parse(&c, "l7"), Err(Error::Parse { .. })));
    assert!(matches!(parse(&c, "h * (h x h)"), Err(Error::Parse { .. })));
    assert!(matches!(parse(&c, "q"), Err(Error::Parse { .. })));
    assert!(matches!(parse(&ctx(5), "l2'"), Err(Error::Parse { .. })));
}

fn arb_context() -> impl Strategy<Value = QuadricContext> {
    (2u32..=8, any::<bool>()).prop_map(|(n, minus)| {
        let o = if minus { Orientation::Minus } else { Orientation::Plus };
        QuadricContext::with_orientation(n, o).unwrap()
    })
}

fn arb_cycle(c: QuadricContext, arity: usize) -> impl Strategy<Value = QuadCycle> {
    let b = basis(&c);
    prop::collection::vec((prop::collection::vec(0..b.len(), arity), -3i64..4), 0..5).prop_map(move |terms| {
        let mut x = QuadCycle::zero(&c, arity);
        for (idx, k) in terms {
            let factors: Vec<QuadBasis> = idx.iter().map(|&i| b[i]).collect();
            x.add_term(QuadMonomial::new(&factors), k);
        }
        x
    })
}

fn arb_triple() -> impl Strategy<Value = (QuadCycle, QuadCycle, QuadCycle, QuadCycle)> {
    arb_context().prop_flat_map(|c| (arb_cycle(c, 2), arb_cycle(c, 3), arb_cycle(c, 2), arb_cycle(c, 1)))
}

proptest! {
    #[test]
    fn literal_round_trip(x in arb_context().prop_flat_map(|c| (1usize..4).prop_flat_map(move |m| arb_cycle(c, m)))) {
        prop_assume!(!x.is_zero());
        let printed = x.to_string();
        let reparsed = parse(x.context(), &printed).unwrap();
        prop_assert_eq!(&reparsed, &x);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn correspondence_laws((a, b, c2, x) in arb_triple()) {
        // a: X ⇝ X, b: X ⇝ X^2, c2: X ⇝ X, x on X
        let alpha = Correspondence::new(a, 1).unwrap();
        let beta = Correspondence::new(b, 1).unwrap();
        let gamma = Correspondence::new(c2, 1).unwrap();
        let ba = beta.compose(&alpha).unwrap();
        prop_assert_eq!(ba.action(&x).unwrap(), beta.action(&alpha.action(&x).unwrap()).unwrap());
        let left = beta.compose(&alpha.compose(&gamma).unwrap()).unwrap();
        let right = ba.compose(&gamma).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(alpha.compose(&gamma).unwrap().transpose(),
                        gamma.transpose().compose(&alpha.transpose()).unwrap());
        prop_assert_eq!(beta.transpose().transpose(), beta.clone());
        let ba2 = beta.mod2().compose(&alpha.mod2()).unwrap();
        prop_assert_eq!(ba2, ba.mod2());
    }

    #[test]
    fn mod2_is_a_ring_map((a, _b, c2, _x) in arb_triple()) {
        prop_assert_eq!(a.mul(&c2).unwrap().mod2(), a.mod2().mul(&c2.mod2()).unwrap());
        prop_assert_eq!(a.scale(2).mod2(), QuadCycle::zero(a.context(), 2).mod2());
    }

    #[test]
    fn projection_formula((a, _b, _c, x) in arb_triple()) {
        // p_{1*}(a · p_1^*(x)) = p_{1*}(a) · x
        let lhs = a.mul(&x.pull_proj(2, &[0]).unwrap()).unwrap().push_proj(&[0]).unwrap();
        let rhs = a.push_proj(&[0]).unwrap().mul(&x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// Exhaustive correspondence laws on basis correspondences for small `n`.
#[test]
fn correspondence_laws_exhaustive_small() {
    for n in 2..=4 {
        let c = ctx(n);
        let b = basis(&c);
        let monos: Vec<QuadCycle> = b
            .iter()
            .flat_map(|&u| b.iter().map(move |&v| (u, v)))
            .map(|(u, v)| QuadCycle::from_monomial(&c, QuadMonomial::new(&[u, v]), 1))
            .collect();
        for m1 in &monos {
            let a = Correspondence::new(m1.clone(), 1).unwrap();
            for m2 in &monos {
                let bb = Correspondence::new(m2.clone(), 1).unwrap();
                let ba = bb.compose(&a).unwrap();
                for &u in &b {
                    let x = QuadCycle::basis_element(&c, u).unwrap();
                    assert_eq!(ba.action(&x).unwrap(), bb.action(&a.action(&x).unwrap()).unwrap());
                }
                assert_eq!(ba.transpose(), a.transpose().compose(&bb.transpose()).unwrap());
            }
        }
    }
}
