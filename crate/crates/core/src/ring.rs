//! Weighted polynomial rings over `F_p` and their homogeneous quotients.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// The ambient ring `F_p[x_1, ..., x_n]` with `deg x_i = w_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if vars.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w == 0) {
            return Err(Error::InvalidRing(format!("weight {w} is not positive")));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, weights }))
    }

    /// Standard grading, every weight 1.
    pub fn standard(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect(), vec![1; vars.len()])
    }

    pub fn weighted(p: u64, vars: &[&str], weights: &[u32]) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect(), weights.to_vec())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        m.degree(&self.weights)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars() {
            return Err(Error::ArityMismatch { expected: self.nvars(), found: m.nvars() });
        }
        Ok(())
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))?;
        if self.weights.iter().any(|&w| w != 1) {
            let w: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
            write!(f, " weights ({})", w.join(","))?;
        }
        Ok(())
    }
}

/// A graded ring `S / J`: the ambient weighted polynomial ring `S` together
/// with homogeneous relations generating `J` (possibly none).
#[derive(Clone, Debug)]
pub struct GradedRing {
    ambient: Arc<PolyRing>,
    relations: Vec<Polynomial>,
}

impl GradedRing {
    pub fn polynomial(ambient: Arc<PolyRing>) -> Self {
        GradedRing { ambient, relations: Vec::new() }
    }

    pub fn quotient(ambient: Arc<PolyRing>, relations: Vec<Polynomial>) -> Result<Self> {
        for r in &relations {
            if !Arc::ptr_eq(r.ring(), &ambient) && **r.ring() != *ambient {
                return Err(Error::RingMismatch);
            }
            if r.is_zero() {
                return Err(Error::InvalidRing("quotient relation is zero".into()));
            }
            if r.homogeneous_degree().is_none() {
                return Err(Error::Inhomogeneous(r.to_string()));
            }
        }
        Ok(GradedRing { ambient, relations })
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn characteristic(&self) -> u32 {
        self.ambient.characteristic()
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ambient)?;
        if !self.relations.is_empty() {
            let r: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
            write!(f, " / ({})", r.join(", "))?;
        }
        Ok(())
    }
}
