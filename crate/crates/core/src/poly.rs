//! Sparse polynomials over `F_p` in canonical form.
//!
//! Terms are kept strictly descending in the polynomial's term order with no
//! zero coefficients, so structural equality is ideal-free equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::ring::PolyRing;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coeff: u32,
    pub monomial: Monomial,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    order: TermOrder,
    terms: Vec<Term>,
}

/// The arithmetic operation selector for [`Polynomial::arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), order: TermOrder::default(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring, 1, Monomial::var(ring.nvars(), index))
    }

    pub fn monomial(ring: &Arc<PolyRing>, c: i64, m: Monomial) -> Self {
        let c = ring.field().reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![Term { coeff: c, monomial: m }] };
        Polynomial { ring: ring.clone(), order: TermOrder::default(), terms }
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, order: TermOrder, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Vec<u32>)>,
    {
        let field = ring.field();
        let mut raw = Vec::new();
        for (c, e) in terms {
            let m = Monomial::new(e);
            ring.check_monomial(&m)?;
            raw.push(Term { coeff: field.reduce(c), monomial: m });
        }
        Ok(Self::normalize(ring.clone(), order, raw))
    }

    /// Sorts, merges duplicates and drops zero coefficients.
    pub(crate) fn normalize(ring: Arc<PolyRing>, order: TermOrder, mut raw: Vec<Term>) -> Self {
        let w = ring.weights().to_vec();
        let field = ring.field();
        raw.sort_by(|a, b| order.compare(&b.monomial, &a.monomial, &w));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.monomial == t.monomial => {
                    last.coeff = field.add(last.coeff, t.coeff);
                }
                _ => {
                    if terms.last().is_some_and(|l| l.coeff == 0) {
                        terms.pop();
                    }
                    terms.push(t);
                }
            }
        }
        if terms.last().is_some_and(|l| l.coeff == 0) {
            terms.pop();
        }
        Polynomial { ring, order, terms }
    }

    pub(crate) fn from_sorted_terms(ring: Arc<PolyRing>, order: TermOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        Polynomial { ring, order, terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    /// The same polynomial re-sorted for another term order.
    pub fn with_order(&self, order: TermOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        Self::normalize(self.ring.clone(), order, self.terms.clone())
    }

    /// Common weighted degree of all terms; `None` for inhomogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degs = self.terms.iter().map(|t| self.ring.degree(&t.monomial));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> u64 {
        self.terms.iter().map(|t| self.ring.degree(&t.monomial)).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `self + c * m * other`, merging in one pass.
    pub(crate) fn add_scaled(&self, c: u32, m: &Monomial, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if c == 0 || other.is_zero() {
            return Ok(self.clone());
        }
        let resorted;
        let other = if other.order == self.order {
            other
        } else {
            resorted = other.with_order(self.order);
            &resorted
        };
        let out = merge_scaled(&self.terms, c, m, &other.terms, self.order, &self.ring)?;
        Ok(Polynomial::from_sorted_terms(self.ring.clone(), self.order, out))
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add_scaled(1, &Monomial::one(self.ring.nvars()), other)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let minus_one = self.ring.field().neg(1);
        self.add_scaled(minus_one, &Monomial::one(self.ring.nvars()), other)
    }

    pub fn negate(&self) -> Polynomial {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: field.neg(t.coeff), monomial: t.monomial.clone() })
            .collect();
        Polynomial::from_sorted_terms(self.ring.clone(), self.order, terms)
    }

    /// `c * m * self`; the order of terms is preserved by multiplicativity.
    pub fn mul_term(&self, c: u32, m: &Monomial) -> Result<Polynomial> {
        let field = self.ring.field();
        if c == 0 {
            return Ok(Polynomial { terms: Vec::new(), ..self.clone() });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term { coeff: field.mul(c, t.coeff), monomial: t.monomial.mul(m)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_sorted_terms(self.ring.clone(), self.order, terms))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                raw.push(Term {
                    coeff: field.mul(a.coeff, b.coeff),
                    monomial: a.monomial.mul(&b.monomial)?,
                });
            }
        }
        Ok(Polynomial::normalize(self.ring.clone(), self.order, raw))
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
            ArithOp::Neg => {
                self.check_ring(other)?;
                Ok(self.negate())
            }
        }
    }

    /// `self^q`. When `q` is a power of the characteristic the Frobenius map
    /// is applied term by term; otherwise by repeated squaring.
    pub fn pow(&self, q: u64) -> Result<Polynomial> {
        if q < 1 {
            return Err(Error::InvalidPower(q));
        }
        let field = self.ring.field();
        if field.log_p(q).is_some() {
            let q32 = u32::try_from(q).map_err(|_| Error::ExponentOverflow)?;
            let terms = self
                .terms
                .iter()
                .map(|t| Ok(Term { coeff: field.pow(t.coeff, q), monomial: t.monomial.scale(q32)? }))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Polynomial::from_sorted_terms(self.ring.clone(), self.order, terms));
        }
        self.pow_by_squaring(q)
    }

    /// `self^q` by plain repeated squaring, for any `q >= 1`.
    pub fn pow_by_squaring(&self, q: u64) -> Result<Polynomial> {
        if q < 1 {
            return Err(Error::InvalidPower(q));
        }
        let mut base = self.clone();
        let mut acc = Polynomial::constant(&self.ring, 1).with_order(self.order);
        let mut e = q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t) if t.coeff == 1 => self.clone(),
            Some(t) => {
                let inv = self.ring.field().inv(t.coeff);
                self.mul_term(inv, &Monomial::one(self.ring.nvars())).expect("degree unchanged")
            }
        }
    }
}

/// Merges `a + c * m * b` for term lists sorted descending in `order`.
pub(crate) fn merge_scaled(
    a: &[Term],
    c: u32,
    m: &Monomial,
    b: &[Term],
    order: TermOrder,
    ring: &PolyRing,
) -> Result<Vec<Term>> {
    let field = ring.field();
    let weights = ring.weights();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut pending: Option<Term> = None;
    loop {
        if pending.is_none() && j < b.len() {
            let t = &b[j];
            pending = Some(Term { coeff: field.mul(c, t.coeff), monomial: t.monomial.mul(m)? });
            j += 1;
        }
        match (a.get(i), pending.take()) {
            (None, None) => break,
            (Some(_), None) => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            (None, Some(y)) => out.push(y),
            (Some(x), Some(y)) => match order.compare(&x.monomial, &y.monomial, weights) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                    pending = Some(y);
                }
                Ordering::Less => out.push(y),
                Ordering::Equal => {
                    let s = field.add(x.coeff, y.coeff);
                    if s != 0 {
                        out.push(Term { coeff: s, monomial: y.monomial });
                    }
                    i += 1;
                }
            },
        }
    }
    Ok(out)
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !same_ring(&self.ring, &other.ring) {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$call(rhs).expect(concat!("polynomial ", stringify!($method)))
            }
        }
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}

impl fmt::Display for Polynomial {
    /// Prints in the input grammar: `2*x^2*y + z - 1` style, with
    /// canonical nonnegative coefficients joined by `+`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono = t.monomial.display(self.ring.vars()).to_string();
            match (t.coeff, t.monomial.is_one()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                (c, false) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}
