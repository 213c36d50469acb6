//! Buchberger's algorithm over `F_p`, normal forms, standard monomials and
//! colengths `lambda(R/I)`.
//!
//! Ideals of a quotient ring `S/J` are handled by adjoining the relations of
//! `J` to the generators and working in `S`, so that
//! `lambda(R/I) = dim_K S/(J + I)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{merge_scaled, Polynomial, Term};
use crate::ring::{GradedRing, PolyRing};

/// An ideal of a graded ring, stored by generators in the ambient ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: GradedRing,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &GradedRing, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
            if **g.ring() != **ring.ambient() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal { ring: ring.clone(), generators })
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    /// Fails with the first inhomogeneous generator.
    pub fn require_homogeneous(&self) -> Result<()> {
        match self.generators.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::Inhomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// Relations of the ring followed by the ideal's generators.
    pub fn ambient_generators(&self) -> Vec<Polynomial> {
        self.ring.relations().iter().chain(&self.generators).cloned().collect()
    }
}

/// Knobs for [`buchberger_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbOptions {
    /// Abort when an S-pair or generator of higher weighted degree must be
    /// processed.
    pub degree_budget: Option<u64>,
}

/// A reduced Groebner basis; generators monic and sorted ascending by
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    order: TermOrder,
    generators: Vec<Polynomial>,
}

/// A standard monomial with its weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardMonomial {
    pub monomial: Monomial,
    pub degree: u64,
}

/// Work queue key: (degree, kind, i, j). Input generators (kind 0) come
/// before S-pairs (kind 1) of the same degree.
type QueueKey = (u64, u8, usize, usize);

struct Engine<'a> {
    ring: &'a Arc<PolyRing>,
    basis: Vec<Polynomial>,
    queue: BTreeSet<QueueKey>,
    homogeneous: bool,
    pure_powers: Vec<Option<u32>>,
}

impl<'a> Engine<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        self.basis[i].leading_monomial().expect("basis elements are nonzero")
    }

    fn pair_key(&self, i: usize, j: usize) -> QueueKey {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let l = self.lm(i).lcm(self.lm(j));
        (self.ring.degree(&l), 1, i, j)
    }

    /// Every monomial of weighted degree above this bound lies in the
    /// current initial ideal, once all variables have a pure power.
    fn zero_dim_bound(&self) -> Option<u64> {
        let mut bound = 0u64;
        for (a, w) in self.pure_powers.iter().zip(self.ring.weights()) {
            bound += ((*a)? as u64 - 1) * *w as u64;
        }
        Some(bound)
    }

    fn add(&mut self, h: Polynomial) {
        let h = h.make_monic();
        let k = self.basis.len();
        if let Some((var, e)) = h.leading_monomial().and_then(Monomial::pure_power) {
            let slot = &mut self.pure_powers[var];
            *slot = Some(slot.map_or(e, |old| old.min(e)));
        }
        self.basis.push(h);
        for i in 0..k {
            // criterion 1: coprime leading monomials give S-polynomials reducing to 0
            if self.lm(i).is_coprime(self.lm(k)) {
                continue;
            }
            let key = self.pair_key(i, k);
            self.queue.insert(key);
        }
    }

    /// Chain criterion: some `lm(k)` divides `lcm(lm(i), lm(j))` and both
    /// pairs with `k` are already settled.
    fn chain_criterion(&self, i: usize, j: usize) -> bool {
        let l = self.lm(i).lcm(self.lm(j));
        (0..self.basis.len()).any(|k| {
            k != i
                && k != j
                && self.lm(k).divides(&l)
                && !self.queue.contains(&self.pair_key(i, k))
                && !self.queue.contains(&self.pair_key(j, k))
        })
    }

    fn s_polynomial(&self, i: usize, j: usize) -> Result<Polynomial> {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let l = self.lm(i).lcm(self.lm(j));
        let mf = l.div(self.lm(i)).expect("lcm is a multiple");
        let mg = l.div(self.lm(j)).expect("lcm is a multiple");
        let left = f.mul_term(1, &mf)?;
        left.add_scaled(self.ring.field().neg(1), &mg, g)
    }
}

/// Fully reduces `f` modulo monic `reducers`.
fn reduce(f: &Polynomial, reducers: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let order = f.order();
    let field = ring.field();
    let mut rest: Vec<Term> = f.terms().to_vec();
    let mut start = 0;
    let mut remainder: Vec<Term> = Vec::new();
    while start < rest.len() {
        let lead = &rest[start];
        let divisor = reducers.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lead.monomial.div(lm).map(|q| (g, q))
        });
        match divisor {
            Some((g, quotient)) => {
                let c = field.neg(lead.coeff);
                // the leading terms cancel exactly
                rest = merge_scaled(&rest[start..], c, &quotient, g.terms(), order, &ring)?;
                start = 0;
            }
            None => {
                remainder.push(lead.clone());
                start += 1;
            }
        }
    }
    Ok(Polynomial::from_sorted_terms(ring, order, remainder))
}

/// Reduced Groebner basis of the ideal (with the ring's relations
/// adjoined), no degree budget.
pub fn buchberger(ideal: &Ideal, order: TermOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, &GbOptions::default())
}

pub fn buchberger_with(ideal: &Ideal, order: TermOrder, opts: &GbOptions) -> Result<GroebnerBasis> {
    groebner_basis(ideal.ring().ambient(), &ideal.ambient_generators(), order, opts)
}

/// Reduced Groebner basis of the ideal generated by `polys` in `ring`.
///
/// Work items are processed by ascending weighted degree, then input
/// generators before S-pairs, then pair index. For homogeneous input,
/// items above the zero-dimensionality bound are dropped once every
/// variable has a pure power among the leading monomials.
pub fn groebner_basis(
    ring: &Arc<PolyRing>,
    polys: &[Polynomial],
    order: TermOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis> {
    let inputs: Vec<Polynomial> = polys
        .iter()
        .map(|p| {
            if **p.ring() != **ring {
                Err(Error::RingMismatch)
            } else {
                Ok(p.with_order(order))
            }
        })
        .filter(|p| p.as_ref().map_or(true, |p| !p.is_zero()))
        .collect::<Result<_>>()?;
    let homogeneous = inputs.iter().all(Polynomial::is_homogeneous);
    let mut engine = Engine {
        ring,
        basis: Vec::new(),
        queue: BTreeSet::new(),
        homogeneous,
        pure_powers: vec![None; ring.nvars()],
    };
    for (idx, g) in inputs.iter().enumerate() {
        engine.queue.insert((g.max_degree(), 0, idx, 0));
    }

    while let Some(key) = engine.queue.pop_first() {
        let (degree, kind, i, j) = key;
        if engine.homogeneous {
            if let Some(bound) = engine.zero_dim_bound() {
                if degree > bound {
                    continue;
                }
            }
        }
        if kind == 1 && engine.chain_criterion(i, j) {
            continue;
        }
        if let Some(budget) = opts.degree_budget {
            if degree > budget {
                return Err(Error::DegreeBudgetExceeded { degree, budget });
            }
        }
        let candidate = if kind == 0 { inputs[i].clone() } else { engine.s_polynomial(i, j)? };
        let h = reduce(&candidate, &engine.basis)?;
        if h.is_zero() {
            continue;
        }
        if h.leading_monomial().is_some_and(Monomial::is_one) {
            let one = Polynomial::constant(ring, 1).with_order(order);
            return Ok(GroebnerBasis { ring: ring.clone(), order, generators: vec![one] });
        }
        engine.add(h);
    }

    GroebnerBasis::reduced_from(ring.clone(), order, engine.basis)
}

impl GroebnerBasis {
    /// Minimalizes and interreduces a Groebner basis.
    fn reduced_from(ring: Arc<PolyRing>, order: TermOrder, basis: Vec<Polynomial>) -> Result<Self> {
        let mut minimal: Vec<Polynomial> = Vec::new();
        for (k, g) in basis.iter().enumerate() {
            let lm = g.leading_monomial().expect("nonzero");
            let redundant = basis.iter().enumerate().any(|(l, other)| {
                let olm = other.leading_monomial().expect("nonzero");
                l != k && olm.divides(lm) && (olm != lm || l < k)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for (k, g) in minimal.iter().enumerate() {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, p)| p.clone())
                .collect();
            let lead = g.terms()[0].clone();
            let tail = Polynomial::from_sorted_terms(ring.clone(), order, g.terms()[1..].to_vec());
            let tail = reduce(&tail, &others)?;
            let mut terms = vec![lead];
            terms.extend_from_slice(tail.terms());
            reduced.push(Polynomial::from_sorted_terms(ring.clone(), order, terms).make_monic());
        }
        let weights = ring.weights().to_vec();
        reduced.sort_by(|a, b| {
            order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap(), &weights)
        });
        Ok(GroebnerBasis { ring, order, generators: reduced })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    /// Largest weighted degree among the generators.
    pub fn max_degree(&self) -> u64 {
        self.generators.iter().map(Polynomial::max_degree).max().unwrap_or(0)
    }

    /// Whether the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].leading_monomial().is_some_and(Monomial::is_one)
    }

    /// Smallest pure-power exponent per variable among the leading monomials.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        if self.is_unit() {
            return Some(vec![0; self.ring.nvars()]);
        }
        let mut bounds: Vec<Option<u32>> = vec![None; self.ring.nvars()];
        for m in self.leading_monomials() {
            if let Some((var, e)) = m.pure_power() {
                bounds[var] = Some(bounds[var].map_or(e, |b| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }

    /// True iff every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    /// Monomials outside the initial ideal, sorted by degree then exponents.
    pub fn standard_monomials(&self) -> Result<Vec<StandardMonomial>> {
        let bounds = self.pure_power_bounds().ok_or(Error::NotZeroDimensional)?;
        let lms = self.leading_monomials();
        let mut out = Vec::new();
        let mut exps = vec![0u32; bounds.len()];
        enumerate_box(&bounds, 0, &mut exps, &mut |e| {
            let m = Monomial::new(e.to_vec());
            if !lms.iter().any(|lm| lm.divides(&m)) {
                out.push(m);
            }
        });
        let weights = self.ring.weights();
        let mut out: Vec<StandardMonomial> = out
            .into_iter()
            .map(|m| StandardMonomial { degree: m.degree(weights), monomial: m })
            .collect();
        out.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.monomial.cmp(&b.monomial)));
        Ok(out)
    }

    /// Number of standard monomials, without materializing them.
    pub fn count_standard_monomials(&self) -> Result<u64> {
        let bounds = self.pure_power_bounds().ok_or(Error::NotZeroDimensional)?;
        if self.is_unit() {
            return Ok(0);
        }
        let lms = self.leading_monomials();
        let n = bounds.len();
        let last = n - 1;
        let mut total = 0u64;
        let mut exps = vec![0u32; n];
        // for a fixed prefix the admissible last exponents form [0, cap)
        enumerate_box(&bounds[..last], 0, &mut exps[..last], &mut |prefix| {
            let mut cap = bounds[last];
            for lm in &lms {
                let e = lm.exponents();
                if e[..last].iter().zip(prefix).all(|(a, b)| a <= b) {
                    cap = cap.min(e[last]);
                }
            }
            total += cap as u64;
        });
        Ok(total)
    }
}

fn enumerate_box(bounds: &[u32], pos: usize, exps: &mut [u32], visit: &mut impl FnMut(&[u32])) {
    if pos == bounds.len() {
        visit(exps);
        return;
    }
    for e in 0..bounds[pos] {
        exps[pos] = e;
        enumerate_box(bounds, pos + 1, exps, visit);
    }
    exps[pos] = 0;
}

/// Remainder of `f` modulo the basis; zero iff `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if **f.ring() != *gb.ring {
        return Err(Error::RingMismatch);
    }
    if f.order() != gb.order && !f.is_zero() {
        return Err(Error::OrderMismatch {
            expected: gb.order.to_string(),
            found: f.order().to_string(),
        });
    }
    reduce(&f.with_order(gb.order), &gb.generators)
}

/// `lambda(R/I)` for an ideal of `R = S/J`, as `dim_K S/(J + I)`.
pub fn colength(ideal: &Ideal) -> Result<u64> {
    colength_with(ideal, TermOrder::Grevlex, &GbOptions::default())
}

pub fn colength_with(ideal: &Ideal, order: TermOrder, opts: &GbOptions) -> Result<u64> {
    buchberger_with(ideal, order, opts)?.count_standard_monomials()
}
