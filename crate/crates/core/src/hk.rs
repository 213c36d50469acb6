//! Frobenius bracket powers `I^[q]`, the length identity
//! `lambda(R/I^[q]) = q^d lambda(R/I)` for ideals of finite projective
//! dimension, and the finite-stage Hilbert-Kunz ratio sequence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::groebner::{colength_with, GbOptions, Ideal};
use crate::hilbert::{hilbert_series_quotient_with, hilbert_series_ring, HilbertSeries, RationalFunction};
use crate::laurent::LaurentPoly;
use crate::monomial::TermOrder;
use crate::resolution::{
    chi_from_betti, chi_reduced, frobenius_betti, graded_betti, verify_factorization, ChiPolynomial, ChiRoute,
};

/// `q = p^e`, checked against overflow.
pub fn frobenius_q(p: u32, e: u32) -> Result<u64> {
    (p as u64).checked_pow(e).filter(|&q| q <= u32::MAX as u64).ok_or(Error::ExponentOverflow)
}

/// `I^[q]`, generated by the `q`-th powers of the generators of `I`.
pub fn bracket_power(ideal: &Ideal, q: u64) -> Result<Ideal> {
    let field = ideal.ring().ambient().field();
    if field.log_p(q).is_none() {
        return Err(Error::NotPowerOfP { q, p: field.characteristic() as u64 });
    }
    let gens = ideal.generators().iter().map(|g| g.pow(q)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens)
}

/// `lambda(R/I^[p^e])`.
pub fn frobenius_length(ideal: &Ideal, e: u32, opts: &GbOptions) -> Result<u64> {
    let q = frobenius_q(ideal.ring().characteristic(), e)?;
    colength_with(&bracket_power(ideal, q)?, TermOrder::Grevlex, opts)
}

/// Krull dimension `d` of the ring, from the pole order of `P_R`.
pub fn ring_dimension(ideal: &Ideal) -> Result<usize> {
    Ok(hilbert_series_ring(ideal.ring())?.dimension())
}

/// Why `pd(R/I) < infinity` is believed, if it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdEvidence {
    /// Ambient polynomial ring: every module has finite projective dimension.
    RegularAmbient,
    /// Caller asserted a regular sequence; `confirmed` records whether
    /// `P_{R/I} = prod(1 - t^{d_i}) P_R` held exactly.
    RegularSequence { confirmed: bool },
    /// No certificate; results are reported, never asserted.
    Unverified,
}

impl PdEvidence {
    pub fn certified(&self) -> bool {
        matches!(self, PdEvidence::RegularAmbient | PdEvidence::RegularSequence { confirmed: true })
    }

    pub fn describe(&self) -> &'static str {
        match self {
            PdEvidence::RegularAmbient => "regular ambient ring",
            PdEvidence::RegularSequence { confirmed: true } => "regular sequence (Koszul series confirmed)",
            PdEvidence::RegularSequence { confirmed: false } => "regular sequence claimed but Koszul series mismatch",
            PdEvidence::Unverified => "finite projective dimension not certified",
        }
    }
}

/// Decides the projective-dimension evidence for `R/I`.
pub fn pd_evidence(ideal: &Ideal, regular_sequence: bool) -> Result<PdEvidence> {
    if ideal.ring().is_polynomial_ring() {
        return Ok(PdEvidence::RegularAmbient);
    }
    if !regular_sequence {
        return Ok(PdEvidence::Unverified);
    }
    let report = verify_factorization(ideal, ChiRoute::RegularSequence)?;
    Ok(PdEvidence::RegularSequence { confirmed: report.holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub e: u32,
    pub q: u64,
    pub d: usize,
    pub colength: u64,
    pub length_bracket: u64,
    /// `q^d lambda(R/I)`
    pub predicted: BigInt,
    pub equal: bool,
    /// `lambda(R/I^[q]) / q^d`
    pub ratio: BigRational,
    pub evidence: PdEvidence,
}

/// Compares `lambda(R/I^[q])` with `q^d lambda(R/I)` exactly.
pub fn length_identity_check(ideal: &Ideal, e: u32, regular_sequence: bool, opts: &GbOptions) -> Result<FrobeniusReport> {
    ideal.require_homogeneous()?;
    let evidence = pd_evidence(ideal, regular_sequence)?;
    let d = ring_dimension(ideal)?;
    let q = frobenius_q(ideal.ring().characteristic(), e)?;
    let colength = colength_with(ideal, TermOrder::Grevlex, opts)?;
    let length_bracket = frobenius_length(ideal, e, opts)?;
    let qd: BigInt = Pow::pow(BigInt::from(q), d);
    let predicted = &qd * BigInt::from(colength);
    Ok(FrobeniusReport {
        e,
        q,
        d,
        colength,
        length_bracket,
        equal: predicted == BigInt::from(length_bracket),
        ratio: BigRational::new(BigInt::from(length_bracket), qd),
        predicted,
        evidence,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioEntry {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    pub ratio: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhkEstimate {
    pub colength: u64,
    pub d: usize,
    pub ratios: Vec<RatioEntry>,
    /// Set when the sequence stopped early, with the failing `e`.
    pub truncated_at: Option<(u32, Error)>,
    /// Lengths strictly increase with `e`.
    pub lengths_increasing: bool,
    /// Ratios never increase with `e`.
    pub ratios_nonincreasing: bool,
    /// Every ratio is at least `lambda(R/I)`.
    pub part1_satisfied_so_far: bool,
}

impl EhkEstimate {
    pub fn last_ratio(&self) -> Option<&BigRational> {
        self.ratios.last().map(|r| &r.ratio)
    }
}

/// `lambda(R/I^[q]) / q^d` for `e = 1..=e_max`, exact. A degree-budget
/// failure ends the sequence and the completed prefix is returned.
pub fn ehk_estimate(ideal: &Ideal, e_max: u32, opts: &GbOptions) -> Result<EhkEstimate> {
    if e_max < 1 {
        return Err(Error::Precondition("e_max must be at least 1".into()));
    }
    ideal.require_homogeneous()?;
    let d = ring_dimension(ideal)?;
    let colength = colength_with(ideal, TermOrder::Grevlex, opts)?;
    let p = ideal.ring().characteristic();

    // e-values are independent; results are assembled in e-order
    let results: Vec<Result<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=e_max)
            .map(|e| scope.spawn(move || frobenius_length(ideal, e, opts)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut ratios = Vec::new();
    let mut truncated_at = None;
    for (e, res) in (1..=e_max).zip(results) {
        match res {
            Ok(length) => {
                let q = frobenius_q(p, e)?;
                let qd: BigInt = Pow::pow(BigInt::from(q), d);
                ratios.push(RatioEntry { e, q, length, ratio: BigRational::new(length.into(), qd) });
            }
            Err(err @ Error::DegreeBudgetExceeded { .. }) => {
                truncated_at = Some((e, err));
                break;
            }
            Err(err) => return Err(err),
        }
    }
    let lambda = BigRational::from_integer(colength.into());
    Ok(EhkEstimate {
        colength,
        d,
        lengths_increasing: ratios.windows(2).all(|w| w[0].length < w[1].length),
        ratios_nonincreasing: ratios.windows(2).all(|w| w[0].ratio >= w[1].ratio),
        part1_satisfied_so_far: ratios.iter().all(|r| r.ratio >= lambda),
        ratios,
        truncated_at,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub estimate: EhkEstimate,
    pub evidence: PdEvidence,
    /// `ratio >= lambda(R/I)` at every computed `e`.
    pub part1_holds_so_far: bool,
    /// `ratio == lambda(R/I)` at every computed `e`; only evaluated when the
    /// finite projective dimension route applies.
    pub part2_exact: Option<bool>,
    pub note: String,
}

/// Juxtaposes the ratio sequence with `lambda(R/I)`. Finite-stage evidence
/// only: no statement about the limit is made.
pub fn conjecture_report(ideal: &Ideal, e_max: u32, regular_sequence: bool, opts: &GbOptions) -> Result<ConjectureReport> {
    let evidence = pd_evidence(ideal, regular_sequence)?;
    let estimate = ehk_estimate(ideal, e_max, opts)?;
    let lambda = BigRational::from_integer(estimate.colength.into());
    let part2_exact = evidence
        .certified()
        .then(|| estimate.ratios.iter().all(|r| r.ratio == lambda));
    let computed = estimate.ratios.len();
    let note = match part2_exact {
        Some(true) => format!("part (2) verified exactly at each tested e (1..={computed}); finite-stage evidence, not a limit"),
        Some(false) => format!("part (2) FAILED at a tested e despite {}; finite-stage evidence", evidence.describe()),
        None if estimate.part1_satisfied_so_far => {
            format!("part (1) direction holds at each tested e (1..={computed}); finite-stage evidence, not a limit")
        }
        None => format!("ratio below lambda(R/I) at some tested e (1..={computed}); finite-stage evidence"),
    };
    Ok(ConjectureReport { part1_holds_so_far: estimate.part1_satisfied_so_far, estimate, evidence, part2_exact, note })
}

/// Both sides of `P_{F^e(R/I)}(t) = chi~(t^q) (1 + t + ... + t^{q-1})^d p(t) / g(t)`.
#[derive(Clone, Debug)]
pub struct FrobeniusSeriesReport {
    pub e: u32,
    pub q: u64,
    pub d: usize,
    pub colength: u64,
    /// `P_{R/I^[q]}` from the Groebner basis of the bracket power.
    pub direct: HilbertSeries,
    pub chi: ChiPolynomial,
    pub chi_reduced: ChiPolynomial,
    /// `chi` of the Frobenius-transformed Betti table; equals `chi(t^q)`.
    pub chi_frobenius: ChiPolynomial,
    pub chi_frobenius_matches_substitution: bool,
    /// `chi~(t^q) (1 + ... + t^{q-1})^d p(t) / g(t)`.
    pub derived: RationalFunction,
    pub series_equal: bool,
    pub direct_at_one: BigRational,
    pub derived_at_one: BigRational,
    /// `q^d lambda(R/I)`
    pub predicted: BigInt,
    pub values_match: bool,
}

impl FrobeniusSeriesReport {
    pub fn holds(&self) -> bool {
        self.series_equal && self.values_match && self.chi_frobenius_matches_substitution
    }
}

/// Computes the Hilbert series of `R/I^[q]` directly and through the Betti
/// numbers of `R/I`, and compares both, including the value at `t = 1`.
pub fn frobenius_series_identity(ideal: &Ideal, e: u32, opts: &GbOptions) -> Result<FrobeniusSeriesReport> {
    if !ideal.ring().is_polynomial_ring() {
        return Err(Error::QuotientRingUnsupported);
    }
    ideal.require_homogeneous()?;
    let p = ideal.ring().characteristic();
    let q = frobenius_q(p, e)?;
    let ring_series = hilbert_series_ring(ideal.ring())?;
    let d = ring_series.dimension();

    let bracket = bracket_power(ideal, q)?;
    let direct = hilbert_series_quotient_with(&bracket, TermOrder::Grevlex, opts)?;

    let betti = graded_betti(ideal)?;
    let chi = chi_from_betti(&betti);
    let chi_reduced = chi_reduced(&chi, d)?;
    let chi_frobenius = chi_from_betti(&frobenius_betti(&betti, q)?);
    let chi_frobenius_matches_substitution = chi_frobenius.0 == chi.0.substitute_power(q as u32);

    // P_R = p(t) / ((1 - t)^d g(t)) with g = prod g_{s_i}
    let p_poly = ring_series.numerator().clone();
    let g_poly = ring_series
        .denominator()
        .iter()
        .fold(LaurentPoly::one(), |acc, &s| &acc * &LaurentPoly::geometric(s));
    let numerator = &(&chi_reduced.0.substitute_power(q as u32) * &LaurentPoly::geometric(q as u32).pow(d as u32))
        * &p_poly;
    let derived = RationalFunction::new(numerator, g_poly);

    let series_equal = RationalFunction::from(&direct).same_function(&derived);
    let direct_at_one = direct.evaluate_at_one()?;
    let derived_at_one = derived.eval_at_one().expect("g(1) = prod s_i is nonzero");
    let colength = colength_with(ideal, TermOrder::Grevlex, opts)?;
    let predicted: BigInt = Pow::pow(BigInt::from(q), d) * BigInt::from(colength);
    let predicted_q = BigRational::from_integer(predicted.clone());
    let values_match = direct_at_one == predicted_q && derived_at_one == predicted_q;
    Ok(FrobeniusSeriesReport {
        e,
        q,
        d,
        colength,
        direct,
        chi,
        chi_reduced,
        chi_frobenius,
        chi_frobenius_matches_substitution,
        derived,
        series_equal,
        direct_at_one,
        derived_at_one,
        predicted,
        values_match,
    })
}
