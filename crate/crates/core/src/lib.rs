//! Exact commutative algebra over prime fields: Groebner bases, Hilbert
//! series, graded Betti numbers via Koszul homology, and lengths of
//! Frobenius bracket powers `lambda(R/I^[q])`.

pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod hk;
pub mod laurent;
pub mod monomial;
pub mod poly;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use monomial::{Monomial, TermOrder};
pub use poly::{ArithOp, Polynomial, Term};
pub use ring::{GradedRing, PolyRing};
pub use groebner::{
    buchberger, buchberger_with, colength, colength_with, groebner_basis, normal_form, GbOptions,
    GroebnerBasis, Ideal, StandardMonomial,
};
pub use hilbert::{
    dimension_from_series, evaluate_at_one, hilbert_series_quotient, hilbert_series_quotient_with,
    hilbert_series_ring, monomial_hilbert_numerator, twist, HilbertSeries, RationalFunction,
    UnitRootFactor,
};
pub use laurent::LaurentPoly;
pub use resolution::{
    chi_from_betti, chi_reduced, frobenius_betti, graded_betti, koszul_chi, koszul_homology,
    verify_factorization, BettiTable, ChiPolynomial, ChiRoute, FactorizationReport, KoszulSlice,
};
pub use hk::{
    bracket_power, conjecture_report, ehk_estimate, frobenius_length, frobenius_q, frobenius_series_identity,
    length_identity_check, pd_evidence, ring_dimension, ConjectureReport, EhkEstimate, FrobeniusReport,
    FrobeniusSeriesReport, PdEvidence, RatioEntry,
};
