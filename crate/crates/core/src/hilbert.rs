//! Hilbert series `P_M(t) = sum_i dim_K(M_i) t^i` of `R` and `R/I`, kept as
//! exact rational functions `N(t) / prod (1 - t^{s_i})`.
//!
//! Numerators come from the initial ideal of a Groebner basis; `S/I` and
//! `S/in(I)` share a Hilbert function for any term order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, groebner_basis, GbOptions, Ideal};
use crate::laurent::LaurentPoly;
use crate::monomial::{Monomial, TermOrder};
use crate::ring::GradedRing;

/// `numerator / prod_i (1 - t^{s_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: LaurentPoly,
    /// Sorted ascending.
    denominator: Vec<u32>,
}

/// `1 - t^s = (1 - t) g(t)` with `g = 1 + t + ... + t^{s-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRootFactor {
    pub s: u32,
    pub g: LaurentPoly,
}

impl UnitRootFactor {
    pub fn new(s: u32) -> Self {
        assert!(s >= 1, "denominator exponents are positive");
        UnitRootFactor { s, g: LaurentPoly::geometric(s) }
    }

    /// Checks `(1 - t) g(t) = 1 - t^s` and `g(1) = s`.
    pub fn holds(&self) -> bool {
        &LaurentPoly::one_minus_t_pow(1) * &self.g == LaurentPoly::one_minus_t_pow(self.s)
            && self.g.eval_at_one() == BigInt::from(self.s)
    }
}

impl HilbertSeries {
    pub fn new(numerator: LaurentPoly, mut denominator: Vec<u32>) -> Self {
        assert!(denominator.iter().all(|&s| s >= 1), "denominator exponents are positive");
        denominator.sort_unstable();
        HilbertSeries { numerator, denominator }
    }

    pub fn polynomial(numerator: LaurentPoly) -> Self {
        HilbertSeries { numerator, denominator: Vec::new() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    /// `prod (1 - t^{s_i})` as a polynomial.
    pub fn denominator_polynomial(&self) -> LaurentPoly {
        self.denominator
            .iter()
            .fold(LaurentPoly::one(), |acc, &s| &acc * &LaurentPoly::one_minus_t_pow(s))
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_function(&self, other: &HilbertSeries) -> bool {
        &self.numerator * &other.denominator_polynomial()
            == &other.numerator * &self.denominator_polynomial()
    }

    /// Cancels every denominator factor `1 - t^s` that divides the numerator
    /// exactly, largest `s` first.
    pub fn reduced(&self) -> HilbertSeries {
        let mut numerator = self.numerator.clone();
        let mut kept = Vec::new();
        for &s in self.denominator.iter().rev() {
            match numerator.div_exact(&LaurentPoly::one_minus_t_pow(s)) {
                Some(q) => numerator = q,
                None => kept.push(s),
            }
        }
        HilbertSeries::new(numerator, kept)
    }

    /// The series as a Laurent polynomial, if it is one.
    pub fn as_polynomial(&self) -> Option<LaurentPoly> {
        self.numerator.div_exact(&self.denominator_polynomial())
    }

    /// `P_{M(-k)}(t) = t^k P_M(t)`.
    pub fn twist(&self, k: i64) -> HilbertSeries {
        HilbertSeries { numerator: self.numerator.shift(k), denominator: self.denominator.clone() }
    }

    /// Order of the pole at `t = 1`: the number of denominator factors minus
    /// the multiplicity of `1` as a root of the numerator (never negative).
    pub fn pole_order(&self) -> usize {
        let l = self.denominator.len();
        match self.numerator.root_multiplicity_at_one() {
            None => 0,
            Some(m) => l.saturating_sub(m),
        }
    }

    /// Krull dimension of the module, read off as the pole order at `t = 1`.
    pub fn dimension(&self) -> usize {
        self.pole_order()
    }

    /// `P(1)`, after rewriting each `1 - t^s` as `(1 - t) g_s(t)` and
    /// cancelling the `(1 - t)` factors against the numerator.
    pub fn evaluate_at_one(&self) -> Result<BigRational> {
        let order = self.pole_order();
        if order > 0 {
            return Err(Error::PositivePoleOrder(order));
        }
        let mut n = self.numerator.clone();
        for _ in &self.denominator {
            let (q, r) = n.div_one_minus_t();
            if !r.is_zero() {
                return Err(Error::PositivePoleOrder(1));
            }
            n = q;
        }
        let g_at_one: BigInt = self.denominator.iter().map(|&s| BigInt::from(s)).product();
        Ok(BigRational::new(n.eval_at_one(), g_at_one))
    }

    /// `((1 - t)^d P)(1)` with `d` the pole order; the multiplicity in the
    /// standard grading. Never zero for a nonzero series.
    pub fn multiplicity(&self) -> BigRational {
        let cancel = self.denominator.len() - self.pole_order();
        let mut n = self.numerator.clone();
        for _ in 0..cancel {
            n = n.div_one_minus_t().0;
        }
        let g_at_one: BigInt = self.denominator.iter().map(|&s| BigInt::from(s)).product();
        BigRational::new(n.eval_at_one(), g_at_one)
    }

    /// Power-series coefficients of `t^low .. t^up_to`, `low` being the
    /// numerator's lowest exponent.
    pub fn expand(&self, up_to: i64) -> Vec<(i64, BigInt)> {
        if self.numerator.is_zero() {
            return Vec::new();
        }
        let low = self.numerator.low_exponent();
        if up_to < low {
            return Vec::new();
        }
        let len = (up_to - low + 1) as usize;
        let mut c: Vec<BigInt> = (0..len).map(|k| self.numerator.coefficient(low + k as i64)).collect();
        for &s in &self.denominator {
            let s = s as usize;
            for k in s..len {
                let prev = c[k - s].clone();
                c[k] += prev;
            }
        }
        c.into_iter().enumerate().map(|(k, v)| (low + k as i64, v)).collect()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        let den: Vec<String> = self
            .denominator
            .iter()
            .map(|&s| if s == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{s})") })
            .collect();
        write!(f, "({}) / {}", self.numerator, den.join(""))
    }
}

/// A quotient of integer Laurent polynomials, compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl RationalFunction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        RationalFunction { numerator, denominator }
    }

    pub fn same_function(&self, other: &RationalFunction) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn as_polynomial(&self) -> Option<LaurentPoly> {
        self.numerator.div_exact(&self.denominator)
    }

    /// Value at `t = 1` when the denominator does not vanish there.
    pub fn eval_at_one(&self) -> Option<BigRational> {
        let d = self.denominator.eval_at_one();
        (!d.is_zero()).then(|| BigRational::new(self.numerator.eval_at_one(), d))
    }
}

impl From<&HilbertSeries> for RationalFunction {
    fn from(s: &HilbertSeries) -> Self {
        RationalFunction::new(s.numerator.clone(), s.denominator_polynomial())
    }
}

/// Numerator `N(t)` with `P_{S/(M)}(t) = N(t) / prod (1 - t^{w_i})` for the
/// monomial ideal generated by `generators`.
///
/// Pivot recursion `N(I) = N(I + (x^e)) + t^{deg x^e} N(I : x^e)`, where
/// `x` occurs in at least two generators and `e` is its smallest positive
/// exponent among them. Base case: pairwise coprime generators give
/// `prod (1 - t^{deg m})`.
pub fn monomial_hilbert_numerator(generators: &[Monomial], weights: &[u32]) -> LaurentPoly {
    let gens = minimalize(generators.to_vec());
    numerator_rec(gens, weights)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.exponents().iter().map(|&e| e as u64).sum::<u64>());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> LaurentPoly {
    if gens.iter().any(Monomial::is_one) {
        return LaurentPoly::zero();
    }
    let nvars = weights.len();
    let mut occurrences = vec![0usize; nvars];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                occurrences[i] += 1;
            }
        }
    }
    let pivot_var = (0..nvars).filter(|&i| occurrences[i] >= 2).max_by_key(|&i| (occurrences[i], nvars - i));
    let Some(var) = pivot_var else {
        // pairwise coprime
        return gens.iter().fold(LaurentPoly::one(), |acc, g| {
            &acc * &LaurentPoly::one_minus_t_pow(g.degree(weights) as u32)
        });
    };
    let e = gens
        .iter()
        .map(|g| g.exponents()[var])
        .filter(|&e| e > 0)
        .min()
        .expect("variable occurs");
    let mut pivot = vec![0u32; nvars];
    pivot[var] = e;
    let pivot = Monomial::new(pivot);

    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = g.exponents().to_vec();
            ex[var] = ex[var].saturating_sub(e);
            Monomial::new(ex)
        })
        .collect();
    let sum = numerator_rec(minimalize(with_pivot), weights);
    let quotient = numerator_rec(minimalize(colon), weights);
    &sum + &quotient.shift(pivot.degree(weights) as i64)
}

/// `P_R(t)`. For a polynomial ring this is `1 / prod (1 - t^{w_i})`; for a
/// quotient the numerator comes from the initial ideal of the relations.
pub fn hilbert_series_ring(ring: &GradedRing) -> Result<HilbertSeries> {
    let weights = ring.ambient().weights().to_vec();
    if ring.is_polynomial_ring() {
        return Ok(HilbertSeries::new(LaurentPoly::one(), weights));
    }
    let gb = groebner_basis(ring.ambient(), ring.relations(), TermOrder::Grevlex, &GbOptions::default())?;
    let numerator = monomial_hilbert_numerator(&gb.leading_monomials(), &weights);
    Ok(HilbertSeries::new(numerator, weights))
}

/// `P_{R/I}(t)` in reduced form; for finite-length quotients the result is
/// a polynomial listing the dimension of every graded piece.
pub fn hilbert_series_quotient(ideal: &Ideal) -> Result<HilbertSeries> {
    hilbert_series_quotient_with(ideal, TermOrder::Grevlex, &GbOptions::default())
}

pub fn hilbert_series_quotient_with(ideal: &Ideal, order: TermOrder, opts: &GbOptions) -> Result<HilbertSeries> {
    ideal.require_homogeneous()?;
    let gb = buchberger_with(ideal, order, opts)?;
    let weights = ideal.ring().ambient().weights().to_vec();
    let numerator = monomial_hilbert_numerator(&gb.leading_monomials(), &weights);
    Ok(HilbertSeries::new(numerator, weights).reduced())
}

pub fn twist(series: &HilbertSeries, k: i64) -> HilbertSeries {
    series.twist(k)
}

pub fn evaluate_at_one(series: &HilbertSeries) -> Result<BigRational> {
    series.evaluate_at_one()
}

pub fn dimension_from_series(series: &HilbertSeries) -> usize {
    series.dimension()
}

/// Exact rational as an integer, when it is one.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    r.denom().is_one().then(|| r.numer().clone())
}
