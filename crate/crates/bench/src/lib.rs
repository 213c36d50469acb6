//! Shared fixtures for the benchmarks.

use hk_core::{GradedRing, Ideal, Monomial, PolyRing, Polynomial};

/// `(x^2, xy, y^3)` over `F_p[x, y]`.
pub fn running_example(p: u64) -> Ideal {
    let r = PolyRing::standard(p, &["x", "y"]).unwrap();
    let m = |e: &[u32]| Polynomial::monomial(&r, 1, Monomial::new(e.to_vec()));
    Ideal::new(&GradedRing::polynomial(r.clone()), vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 3])]).unwrap()
}

/// A dense zero-dimensional ideal of quadrics and cubics in three variables.
pub fn dense_ternary(p: u64) -> Ideal {
    let r = PolyRing::standard(p, &["x", "y", "z"]).unwrap();
    let f = |t: &[(i64, [u32; 3])]| Polynomial::from_terms(&r, Default::default(), t.iter().map(|(c, e)| (*c, e.to_vec()))).unwrap();
    let gens = vec![
        f(&[(1, [2, 0, 0]), (1, [0, 1, 1]), (2, [1, 0, 1])]),
        f(&[(1, [0, 2, 0]), (1, [1, 0, 1]), (1, [1, 1, 0])]),
        f(&[(1, [0, 0, 3]), (1, [1, 1, 1]), (1, [2, 1, 0])]),
    ];
    Ideal::new(&GradedRing::polynomial(r.clone()), gens).unwrap()
}

/// `(x, y, z)` over `F_3[x, y, z] / (xy - z^2)`.
pub fn a1_maximal() -> Ideal {
    let s = PolyRing::standard(3, &["x", "y", "z"]).unwrap();
    let m = |e: &[u32]| Polynomial::monomial(&s, 1, Monomial::new(e.to_vec()));
    let r = GradedRing::quotient(s.clone(), vec![&m(&[1, 1, 0]) - &m(&[0, 0, 2])]).unwrap();
    Ideal::new(&r, vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]).unwrap()
}
