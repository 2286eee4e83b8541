use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use padic_roots::hensel::{newton_seed, PerturbedMonomial};
use padic_roots::oracle::{self, IntPoly};
use padic_roots::padic::{Literal, PadicNumber, Prime, Valuation};
use padic_roots::residue::{decompose_k, sol_p};
use padic_roots::solvers::solve_monomial;

const DIGITS: u32 = 24;

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13]).prop_map(|p| Prime::new(p).unwrap())
}

fn unit_int(p: Prime) -> impl Strategy<Value = i64> {
    let p = p.get() as i64;
    (1..p, 0..1_000_000i64, any::<bool>()).prop_map(move |(d, rest, neg)| {
        let v = d + p * rest;
        if neg {
            -v
        } else {
            v
        }
    })
}

/// `(p, x)` with `x` an integer-valued p-adic number of valuation in `-3..6`.
fn padic() -> impl Strategy<Value = (Prime, PadicNumber)> {
    prime().prop_flat_map(|p| {
        (unit_int(p), -3i64..6)
            .prop_map(move |(u, v)| (p, PadicNumber::from_integer(u, p, DIGITS).shift(v)))
    })
}

fn pair() -> impl Strategy<Value = (Prime, PadicNumber, PadicNumber)> {
    prime().prop_flat_map(|p| {
        (unit_int(p), -3i64..6, unit_int(p), -3i64..6).prop_map(move |(a, va, b, vb)| {
            (
                p,
                PadicNumber::from_integer(a, p, DIGITS).shift(va),
                PadicNumber::from_integer(b, p, DIGITS).shift(vb),
            )
        })
    })
}

/// An element of `E_p`: `1 + p u`.
fn ep(p: Prime, u: i64) -> PadicNumber {
    PadicNumber::from_integer(1 + p.get() as i64 * u, p, DIGITS)
}

fn exact(v: Valuation) -> i64 {
    v.exact().expect("exact valuation")
}

proptest! {
    #[test]
    fn valuation_is_multiplicative((_, x, y) in pair()) {
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(exact(xy.valuation()), exact(x.valuation()) + exact(y.valuation()));
        let q = x.div(&y).unwrap();
        prop_assert_eq!(exact(q.valuation()), exact(x.valuation()) - exact(y.valuation()));
    }

    #[test]
    fn ultrametric_inequality((_, x, y) in pair()) {
        let (vx, vy) = (exact(x.valuation()), exact(y.valuation()));
        let sum = x.add(&y).unwrap();
        prop_assert!(sum.valuation().is_at_least(vx.min(vy)));
        if vx != vy {
            prop_assert_eq!(sum.valuation(), Valuation::Exact(vx.min(vy)));
        }
    }

    #[test]
    fn ring_round_trips((_, x, y) in pair()) {
        let back = x.add(&y).unwrap().sub(&y).unwrap();
        prop_assert!(back.sub(&x).unwrap().is_indistinguishable_from_zero());
        let back = x.mul(&y).unwrap().div(&y).unwrap();
        prop_assert!(back.sub(&x).unwrap().valuation().is_at_least(exact(x.valuation()) + DIGITS as i64 - 1));
        prop_assert_eq!(x.neg().neg(), x.clone());
    }

    #[test]
    fn digit_form_round_trips((p, x) in padic()) {
        let text = x.to_string();
        let lit: Literal = text.parse().unwrap();
        prop_assert_eq!(lit.to_padic(p, DIGITS).unwrap(), x);
    }

    #[test]
    fn integer_expansion_is_the_residue(p in prime(), n in -1_000_000i64..1_000_000) {
        let e = 10u32;
        let x = PadicNumber::from_integer(n, p, 30);
        let modulus = BigInt::from(p.get()).pow(e);
        let expected = BigInt::from(n).mod_floor(&modulus);
        prop_assert_eq!(BigInt::from(x.residue_mod(e).unwrap()), expected);
    }

    // x = y != 0 (mod p): v(x^k - y^k) = v(k) + v(x - y)
    #[test]
    fn power_difference(p in prime(), k in 1u64..40, x in 1i64..1_000_000, j in 1u32..10, d in 1i64..50) {
        let pv = p.get() as i64;
        prop_assume!(x % pv != 0 && d % pv != 0);
        let xp = PadicNumber::from_integer(x, p, 40);
        let yp = PadicNumber::from_integer(BigInt::from(x) + BigInt::from(d) * BigInt::from(pv).pow(j), p, 40);
        let s = decompose_k(k, p).unwrap().s as i64;
        let lhs = xp.pow(k).sub(&yp.pow(k)).unwrap().valuation();
        prop_assert_eq!(lhs, Valuation::Exact(s + j as i64));
    }

    // x^(p^s) - x_0^(p^s) = o[p^s] for units
    #[test]
    fn fermat_drop(p in prime(), s in 0u32..4, x in 1i64..1_000_000) {
        prop_assume!(x % p.get() as i64 != 0);
        let xp = PadicNumber::from_integer(x, p, 30);
        let x0 = PadicNumber::from_integer(xp.leading_digit().unwrap(), p, 30);
        let e = p.get().pow(s);
        let drop = xp.pow(e).sub(&x0.pow(e)).unwrap().valuation();
        prop_assert!(drop.exceeds(s as i64));
        let fermat = xp.pow(p.get() - 1).sub(&PadicNumber::one(p, 30)).unwrap().valuation();
        prop_assert!(fermat.is_at_least(1));
    }

    #[test]
    fn ep_is_a_group_and_a_ball(p in prime(), u in -10_000i64..10_000, w in -10_000i64..10_000) {
        let (a, b) = (ep(p, u), ep(p, w));
        prop_assert!(a.in_ep() && b.in_ep());
        prop_assert!(a.mul(&b).unwrap().in_ep());
        prop_assert!(a.inverse().unwrap().in_ep());
        prop_assert!(a.sub(&b).unwrap().valuation().is_at_least(1));
        prop_assert_eq!(a.add(&b).unwrap().valuation(), Valuation::Exact(0));
    }

    // sum_j alpha^(k-j-1) beta^j = k gamma with gamma in E_p
    #[test]
    fn averaging_lemma(p in prime(), k in 2u64..20, u in -10_000i64..10_000, w in -10_000i64..10_000) {
        let (alpha, beta) = (ep(p, u), ep(p, w));
        let mut sum = PadicNumber::zero(p);
        for j in 0..k {
            sum = sum.add(&alpha.pow(k - j - 1).mul(&beta.pow(j)).unwrap()).unwrap();
        }
        let gamma = sum.div(&PadicNumber::from_integer(k, p, DIGITS)).unwrap();
        prop_assert!(gamma.in_ep(), "gamma = {}", gamma);
    }

    #[test]
    fn sol_p_has_gcd_size_when_nonempty(p in prime(), k in 1u64..40, a0 in 1u64..13) {
        prop_assume!(a0 < p.get());
        let a = PadicNumber::from_integer(a0, p, 4);
        let r = sol_p(k, &a).unwrap();
        if !r.is_empty() {
            prop_assert_eq!(r.kappa_p as u64, k.gcd(&(p.get() - 1)));
        }
    }

    // Each root sits in its own ball, has leading digit xi, and solves
    // x^k = a to the requested precision.
    #[test]
    fn monomial_roots_are_localized(p in prime(), k in 1u64..13, z in 1i64..100_000, r in 0i64..1000, n in 1u32..20) {
        prop_assume!(z % p.get() as i64 != 0);
        let s = decompose_k(k, p).unwrap().s;
        let a_int = BigInt::from(z).pow(k as u32) + BigInt::from(p.get()).pow(s + 1) * r;
        let a = PadicNumber::from_integer(a_int.clone(), p, n + 2 * s + 4);
        let report = solve_monomial(k, &a, n).unwrap();
        prop_assert_eq!(report.roots.len() as u64, k.gcd(&(p.get() - 1)));
        let f = IntPoly::monomial(k, a_int);
        for w in report.roots.windows(2) {
            prop_assert!(w[0].xi < w[1].xi);
        }
        for root in &report.roots {
            prop_assert_eq!(root.root.leading_digit(), Some(root.xi));
            prop_assert!(oracle::verify_root(&f, &root.root, n).unwrap());
        }
    }

    // Newton seed iterates never leave B_1(xi) and clear the o[k^2] bar.
    #[test]
    fn newton_seed_clears_bar(p in prime(), k in 1u64..13, z in 1i64..100_000, r in 0i64..1000) {
        prop_assume!(z % p.get() as i64 != 0);
        let s = decompose_k(k, p).unwrap().s;
        let a_int = BigInt::from(z).pow(k as u32) + BigInt::from(p.get()).pow(s + 1) * r;
        let a = PadicNumber::from_integer(a_int, p, 30);
        for xi in sol_p(k, &a).unwrap().sol_set {
            let w = newton_seed(&a, k, xi, 30).unwrap();
            prop_assert_eq!(w.seed.leading_digit(), Some(xi));
            let f = PerturbedMonomial::monomial(k, a.clone()).unwrap();
            prop_assert!(f.eval(&w.seed).unwrap().valuation().exceeds(2 * s as i64));
        }
    }
}
