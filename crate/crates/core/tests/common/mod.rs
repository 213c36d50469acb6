//! Test-only oracles, independent of the Groebner and Hilbert code paths.

#![allow(dead_code)]

use std::sync::Arc;

use hk_core::{GradedRing, Ideal, Monomial, PolyRing, Polynomial, TermOrder};
use rand::Rng;

/// All exponent vectors of weighted degree exactly `d`.
pub fn monomials_of_degree(weights: &[u32], d: u64) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], pos: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[pos] as u64;
        let mut e = 0u64;
        while e * w <= left {
            cur.push(e as u32);
            go(weights, pos + 1, left - e * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Rank of a matrix over F_p by row reduction to echelon form.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = modpow(rows[rank][col], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut().filter(|r| !r[col].is_multiple_of(p)) {
            let factor = row[col];
            for (v, pv) in row.iter_mut().zip(pivot_row) {
                *v = (*v + p - factor * pv % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `dim (S/I)_d` from the span of `m * g` in degree `d`. Generators must be
/// homogeneous.
pub fn hilbert_function_at(ring: &Arc<PolyRing>, gens: &[Polynomial], d: u64) -> u64 {
    let p = ring.characteristic() as u64;
    let w = ring.weights();
    let basis = monomials_of_degree(w, d);
    let index: std::collections::HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let gd = g.homogeneous_degree().expect("homogeneous generator");
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(w, d - gd) {
            let mut row = vec![0u64; basis.len()];
            for t in g.terms() {
                let prod: Vec<u32> = t.monomial.exponents().iter().zip(&m).map(|(a, b)| a + b).collect();
                let col = index[&prod];
                row[col] = (row[col] + t.coeff as u64) % p;
            }
            rows.push(row);
        }
    }
    (basis.len() - rank_mod_p(rows, p)) as u64
}

/// `dim (S/I)_d` for `d = 0..=cap`.
pub fn truncated_hilbert_function(ring: &Arc<PolyRing>, gens: &[Polynomial], cap: u64) -> Vec<u64> {
    (0..=cap).map(|d| hilbert_function_at(ring, gens, d)).collect()
}

/// The whole Hilbert function of a finite-length `S/I`, stopping once
/// `max weight` consecutive positive degrees vanish.
pub fn finite_hilbert_function(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Vec<u64> {
    let window = *ring.weights().iter().max().unwrap() as usize;
    let mut h = vec![hilbert_function_at(ring, gens, 0)];
    let mut zeros = 0;
    while zeros < window {
        let v = hilbert_function_at(ring, gens, h.len() as u64);
        zeros = if v == 0 { zeros + 1 } else { 0 };
        h.push(v);
    }
    h.truncate(h.len() - window);
    h
}

pub fn ring_of(p: u64, n: usize, weights: Option<&[u32]>) -> Arc<PolyRing> {
    let names = ["x", "y", "z", "w"];
    match weights {
        Some(w) => PolyRing::weighted(p, &names[..n], w).unwrap(),
        None => PolyRing::standard(p, &names[..n]).unwrap(),
    }
}

pub fn random_form<R: Rng>(rng: &mut R, ring: &Arc<PolyRing>, degree: u64, density: f64) -> Polynomial {
    let p = ring.characteristic() as i64;
    let mut terms = Vec::new();
    for e in monomials_of_degree(ring.weights(), degree) {
        if rng.gen_bool(density) {
            terms.push((rng.gen_range(1..p), e));
        }
    }
    Polynomial::from_terms(ring, TermOrder::Grevlex, terms).unwrap()
}

/// A random homogeneous zero-dimensional ideal of a polynomial ring,
/// generator degrees in `1..=max_deg`; retried until zero-dimensional.
pub fn random_zero_dim_ideal<R: Rng>(rng: &mut R, ring: &Arc<PolyRing>, max_deg: u64) -> Ideal {
    let n = ring.nvars();
    let graded = GradedRing::polynomial(ring.clone());
    loop {
        let count = n + rng.gen_range(0..=1);
        let mut gens = Vec::new();
        while gens.len() < count {
            let d = rng.gen_range(1..=max_deg);
            let f = random_form(rng, ring, d, 0.6);
            if !f.is_zero() {
                gens.push(f);
            }
        }
        let ideal = Ideal::new(&graded, gens).unwrap();
        let gb = hk_core::buchberger(&ideal, TermOrder::Grevlex).unwrap();
        if gb.is_zero_dimensional() && !gb.is_unit() {
            return ideal;
        }
    }
}

pub fn monomial(ring: &Arc<PolyRing>, e: &[u32]) -> Polynomial {
    Polynomial::monomial(ring, 1, Monomial::new(e.to_vec()))
}
