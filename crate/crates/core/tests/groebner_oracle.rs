mod common;

use common::*;
use hk_core::{
    buchberger, colength, normal_form, GradedRing, Ideal, Polynomial, TermOrder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn colength_matches_truncated_linear_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..40 {
        let p = [2, 3, 5][case % 3];
        let n = 1 + case % 3;
        let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let ring = ring_of(p, n, Some(&weights));
        let ideal = random_zero_dim_ideal(&mut rng, &ring, 3);
        let gb = buchberger(&ideal, TermOrder::Grevlex).unwrap();
        let top = gb.standard_monomials().unwrap().iter().map(|s| s.degree).max().unwrap();
        let cap = 8.max(top + 1);
        if cap > 10 {
            continue;
        }
        let hf = truncated_hilbert_function(&ring, ideal.generators(), cap);
        assert_eq!(*hf.last().unwrap(), 0, "case {case}: quotient reaches the cap");
        assert_eq!(hf.iter().sum::<u64>(), colength(&ideal).unwrap(), "case {case}");
    }
}

#[test]
fn membership_and_idempotence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..25 {
        let p = [2, 3, 5, 7][case % 4];
        let ring = ring_of(p, 3, None);
        let graded = GradedRing::polynomial(ring.clone());
        let gens: Vec<Polynomial> = (0..3)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                random_form(&mut rng, &ring, d, 0.5)
            })
            .filter(|f| !f.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&graded, gens.clone()).unwrap();
        for order in [TermOrder::Grevlex, TermOrder::Lex] {
            let gb = buchberger(&ideal, order).unwrap();
            let mut h = Polynomial::zero(&ring).with_order(order);
            for g in &gens {
                let d = rng.gen_range(0..=2);
                let c = random_form(&mut rng, &ring, d, 0.5);
                h = &h + &(&c * g).with_order(order);
            }
            assert!(normal_form(&h, &gb).unwrap().is_zero(), "case {case} {order}");

            let f = random_form(&mut rng, &ring, 3, 0.7).with_order(order);
            let once = normal_form(&f, &gb).unwrap();
            assert_eq!(normal_form(&once, &gb).unwrap(), once);
            // remainder is irreducible: no term divisible by a leading monomial
            for t in once.terms() {
                assert!(gb.leading_monomials().iter().all(|lm| !lm.divides(&t.monomial)));
            }
        }
    }
}

#[test]
fn reduced_basis_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..20 {
        let ring = ring_of([2, 3, 5][case % 3], 3, None);
        let ideal = random_zero_dim_ideal(&mut rng, &ring, 3);
        let gb = buchberger(&ideal, TermOrder::Grevlex).unwrap();
        let lms = gb.leading_monomials();
        for (k, g) in gb.generators().iter().enumerate() {
            assert_eq!(g.leading_term().unwrap().coeff, 1);
            for t in g.terms() {
                for (l, lm) in lms.iter().enumerate() {
                    if l != k {
                        assert!(!lm.divides(&t.monomial), "case {case}: not reduced");
                    }
                }
            }
        }
        // the input generators reduce to zero, and the basis regenerates the same ideal
        for f in ideal.generators() {
            assert!(normal_form(f, &gb).unwrap().is_zero());
        }
        let again = buchberger(
            &Ideal::new(&GradedRing::polynomial(ring.clone()), gb.generators().to_vec()).unwrap(),
            TermOrder::Grevlex,
        )
        .unwrap();
        assert_eq!(again, gb);
    }
}

#[test]
fn colength_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..15 {
        let ring = ring_of(3, 3, Some(&[1, 2, 1]));
        let ideal = random_zero_dim_ideal(&mut rng, &ring, 3);
        let a = buchberger(&ideal, TermOrder::Grevlex).unwrap().count_standard_monomials().unwrap();
        let b = buchberger(&ideal, TermOrder::Lex).unwrap().count_standard_monomials().unwrap();
        assert_eq!(a, b);
        assert_eq!(
            buchberger(&ideal, TermOrder::Lex).unwrap().standard_monomials().unwrap().len() as u64,
            b
        );
    }
}
