//! Graded Betti numbers of finite-length cyclic modules `S/I` over a
//! weighted polynomial ring, computed as Koszul homology:
//! `b_ij = dim_K Tor_i(S/I, K)_j = dim H_i(K(x_1..x_n) ⊗ S/I)_j`.
//!
//! `S/I` is finite-dimensional, so each graded slice of the Koszul complex
//! is a finite `F_p`-vector space and homology is plain rank computation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{buchberger, normal_form, GroebnerBasis, Ideal};
use crate::hilbert::{hilbert_series_quotient, hilbert_series_ring, HilbertSeries};
use crate::laurent::LaurentPoly;
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;

/// Graded Betti numbers `b_ij`, only nonzero entries stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    characteristic: u32,
    entries: BTreeMap<(usize, i64), u64>,
}

impl BettiTable {
    pub fn new(characteristic: u32, entries: impl IntoIterator<Item = ((usize, i64), u64)>) -> Self {
        let entries = entries.into_iter().filter(|(_, b)| *b > 0).collect();
        BettiTable { characteristic, entries }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), u64> {
        &self.entries
    }

    /// `(i, j, b_ij)` sorted by `i` then `j`.
    pub fn triples(&self) -> Vec<(usize, i64, u64)> {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b)).collect()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    /// Total Betti number `sum_j b_ij`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, b)| b).sum()
    }
}

impl fmt::Display for BettiTable {
    /// Grid with one row per homological degree and one column per internal
    /// degree; zero entries print as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(pd) = self.projective_dimension() else {
            return write!(f, "(empty)");
        };
        let js: Vec<i64> = {
            let lo = self.entries.keys().map(|k| k.1).min().unwrap();
            let hi = self.entries.keys().map(|k| k.1).max().unwrap();
            (lo..=hi).collect()
        };
        let cell = |s: &str, w: usize| format!("{s:>w$}");
        let mut width = 3;
        for j in &js {
            width = width.max(j.to_string().len());
        }
        for b in self.entries.values() {
            width = width.max(b.to_string().len());
        }
        let label_w = 3.max(pd.to_string().len());
        write!(f, "{}", cell("i\\j", label_w))?;
        for j in &js {
            write!(f, " {}", cell(&j.to_string(), width))?;
        }
        writeln!(f)?;
        for i in 0..=pd {
            write!(f, "{}", cell(&i.to_string(), label_w))?;
            for &j in &js {
                let b = self.get(i, j);
                let s = if b == 0 { ".".to_string() } else { b.to_string() };
                write!(f, " {}", cell(&s, width))?;
            }
            if i < pd {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// An Euler characteristic `chi(t) = sum_{i,j} (-1)^i b_ij t^j` in
/// `Z[t, t^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiPolynomial(pub LaurentPoly);

impl ChiPolynomial {
    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }
}

impl fmt::Display for ChiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Ranks and dimensions of one graded slice `K_{i,j}` of the Koszul complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulSlice {
    pub i: usize,
    pub j: i64,
    pub dim: usize,
    /// rank of `d_i : K_{i,j} -> K_{i-1,j}`
    pub rank_out: usize,
    /// rank of `d_{i+1} : K_{i+1,j} -> K_{i,j}`
    pub rank_in: usize,
    pub homology: usize,
}

/// The complex `K(x_1..x_n) ⊗ S/I` with `S/I` in its standard-monomial basis.
struct KoszulComplex {
    field: PrimeField,
    nvars: usize,
    weights: Vec<u32>,
    /// degree of each standard monomial
    basis_degrees: Vec<i64>,
    /// `mult[k][b]` = coordinates of `x_k * basis[b]`
    mult: Vec<Vec<Vec<(usize, u32)>>>,
}

type Cell = (u32, usize);

impl KoszulComplex {
    fn new(gb: &GroebnerBasis) -> Result<Self> {
        let ring = gb.ring().clone();
        let std = gb.standard_monomials()?;
        let index: HashMap<&Monomial, usize> =
            std.iter().enumerate().map(|(k, s)| (&s.monomial, k)).collect();
        let nvars = ring.nvars();
        let mut mult = Vec::with_capacity(nvars);
        for k in 0..nvars {
            let x = Monomial::var(nvars, k);
            let mut row = Vec::with_capacity(std.len());
            for s in &std {
                let prod = Polynomial::monomial(&ring, 1, s.monomial.mul(&x)?).with_order(gb.order());
                let nf = normal_form(&prod, gb)?;
                let coords = nf
                    .terms()
                    .iter()
                    .map(|t| (index[&t.monomial], t.coeff))
                    .collect();
                row.push(coords);
            }
            mult.push(row);
        }
        Ok(KoszulComplex {
            field: ring.field(),
            nvars,
            weights: ring.weights().to_vec(),
            basis_degrees: std.iter().map(|s| s.degree as i64).collect(),
            mult,
        })
    }

    fn subset_degree(&self, subset: u32) -> i64 {
        (0..self.nvars).filter(|k| subset & (1 << k) != 0).map(|k| self.weights[k] as i64).sum()
    }

    /// Basis cells `(subset, standard monomial)` of `K_i`, grouped by degree.
    fn cells(&self, i: usize) -> BTreeMap<i64, Vec<Cell>> {
        let mut by_degree: BTreeMap<i64, Vec<Cell>> = BTreeMap::new();
        for subset in 0u32..(1 << self.nvars) {
            if subset.count_ones() as usize != i {
                continue;
            }
            let sd = self.subset_degree(subset);
            for (b, &bd) in self.basis_degrees.iter().enumerate() {
                by_degree.entry(sd + bd).or_default().push((subset, b));
            }
        }
        by_degree
    }

    /// `d(e_T ⊗ m) = sum_r (-1)^r e_{T - t_r} ⊗ x_{t_r} m`, `t_0 < t_1 < ...`.
    fn boundary(&self, (subset, b): Cell) -> Vec<(Cell, u32)> {
        let mut out = Vec::new();
        let mut position = 0;
        for k in 0..self.nvars {
            if subset & (1 << k) == 0 {
                continue;
            }
            let face = subset & !(1 << k);
            for &(target, c) in &self.mult[k][b] {
                let c = if position % 2 == 0 { c } else { self.field.neg(c) };
                out.push(((face, target), c));
            }
            position += 1;
        }
        out
    }

    /// Matrix of `d_i` restricted to degree `j`, rows indexed by domain cells.
    fn boundary_matrix(&self, domain: &[Cell], codomain: &[Cell]) -> Vec<Vec<u32>> {
        let col: HashMap<Cell, usize> = codomain.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        domain
            .iter()
            .map(|&cell| {
                let mut row = vec![0u32; codomain.len()];
                for (target, c) in self.boundary(cell) {
                    let k = col[&target];
                    row[k] = self.field.add(row[k], c);
                }
                row
            })
            .collect()
    }
}

/// Rank over `F_p` by Gaussian elimination.
pub(crate) fn rank(field: PrimeField, mut rows: Vec<Vec<u32>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for v in &mut rows[rank][col..] {
            *v = field.mul(*v, inv);
        }
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (v, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v = field.sub(*v, field.mul(factor, pv));
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers plus the per-slice rank audit.
pub fn koszul_homology(ideal: &Ideal) -> Result<(BettiTable, Vec<KoszulSlice>)> {
    if !ideal.ring().is_polynomial_ring() {
        return Err(Error::QuotientRingUnsupported);
    }
    ideal.require_homogeneous()?;
    let gb = buchberger(ideal, TermOrder::Grevlex)?;
    if !gb.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional);
    }
    let complex = KoszulComplex::new(&gb)?;
    let n = complex.nvars;
    let cells: Vec<BTreeMap<i64, Vec<Cell>>> = (0..=n).map(|i| complex.cells(i)).collect();

    // ranks[i][j] = rank of d_i in degree j, for 1 <= i <= n
    let mut ranks: Vec<BTreeMap<i64, usize>> = vec![BTreeMap::new(); n + 2];
    for i in 1..=n {
        for (&j, domain) in &cells[i] {
            let codomain = cells[i - 1].get(&j).map_or(&[][..], Vec::as_slice);
            let r = if codomain.is_empty() {
                0
            } else {
                rank(complex.field, complex.boundary_matrix(domain, codomain))
            };
            ranks[i].insert(j, r);
        }
    }

    let max_std = complex.basis_degrees.iter().copied().max().unwrap_or(0);
    let bound = max_std + complex.weights.iter().map(|&w| w as i64).sum::<i64>();
    let mut slices = Vec::new();
    let mut entries = Vec::new();
    for (i, by_degree) in cells.iter().enumerate() {
        for (&j, cells_ij) in by_degree {
            assert!((0..=bound).contains(&j), "Koszul slice outside the degree range");
            let rank_out = ranks[i].get(&j).copied().unwrap_or(0);
            let rank_in = ranks.get(i + 1).and_then(|r| r.get(&j)).copied().unwrap_or(0);
            let homology = cells_ij.len() - rank_out - rank_in;
            slices.push(KoszulSlice { i, j, dim: cells_ij.len(), rank_out, rank_in, homology });
            entries.push(((i, j), homology as u64));
        }
    }
    Ok((BettiTable::new(complex.field.characteristic(), entries), slices))
}

/// `b_ij` of `S/I` for a homogeneous zero-dimensional ideal of a weighted
/// polynomial ring.
pub fn graded_betti(ideal: &Ideal) -> Result<BettiTable> {
    koszul_homology(ideal).map(|(table, _)| table)
}

pub fn chi_from_betti(betti: &BettiTable) -> ChiPolynomial {
    use num_bigint::BigInt;
    ChiPolynomial(LaurentPoly::from_terms(betti.entries.iter().map(|(&(i, j), &b)| {
        let b = BigInt::from(b);
        (j, if i % 2 == 0 { b } else { -b })
    })))
}

/// `chi~` with `chi = chi~ (1 - t)^d`, by `d` exact synthetic divisions.
pub fn chi_reduced(chi: &ChiPolynomial, d: usize) -> Result<ChiPolynomial> {
    let mut current = chi.0.clone();
    for _ in 0..d {
        let (q, r) = current.div_one_minus_t();
        if !num_traits::Zero::is_zero(&r) {
            return Err(Error::NotDivisible { d });
        }
        current = q;
    }
    Ok(ChiPolynomial(current))
}

/// Moves every entry `(i, j)` to `(i, q j)`, the Betti table of the `e`-th
/// Frobenius power of the module when `q = p^e`.
pub fn frobenius_betti(betti: &BettiTable, q: u64) -> Result<BettiTable> {
    let p = betti.characteristic as u64;
    if PrimeField::new(p)?.log_p(q).is_none() {
        return Err(Error::NotPowerOfP { q, p });
    }
    Ok(BettiTable::new(
        betti.characteristic,
        betti.entries.iter().map(|(&(i, j), &b)| ((i, j * q as i64), b)),
    ))
}

/// `chi = prod (1 - t^{d_i})`, the Euler characteristic of the Koszul
/// resolution of a homogeneous regular sequence with degrees `d_i`.
pub fn koszul_chi(degrees: &[u64]) -> ChiPolynomial {
    ChiPolynomial(degrees.iter().fold(LaurentPoly::one(), |acc, &d| {
        &acc * &LaurentPoly::one_minus_t_pow(d as u32)
    }))
}

/// How `chi` is obtained for [`verify_factorization`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiRoute {
    /// Koszul homology; polynomial rings only.
    Betti,
    /// The generators are asserted to form a regular sequence.
    RegularSequence,
}

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub route: ChiRoute,
    pub betti: Option<BettiTable>,
    pub chi: ChiPolynomial,
    pub module_series: HilbertSeries,
    pub ring_series: HilbertSeries,
    /// `chi(t) * P_R(t)`
    pub product: HilbertSeries,
    pub holds: bool,
}

/// Checks `P_{R/I}(t) = chi(t) P_R(t)` as rational functions.
pub fn verify_factorization(ideal: &Ideal, route: ChiRoute) -> Result<FactorizationReport> {
    ideal.require_homogeneous()?;
    let (betti, chi) = match route {
        ChiRoute::Betti => {
            let table = graded_betti(ideal)?;
            let chi = chi_from_betti(&table);
            (Some(table), chi)
        }
        ChiRoute::RegularSequence => {
            let degrees: Vec<u64> =
                ideal.generators().iter().map(|g| g.homogeneous_degree().expect("homogeneous")).collect();
            (None, koszul_chi(&degrees))
        }
    };
    let module_series = hilbert_series_quotient(ideal)?;
    let ring_series = hilbert_series_ring(ideal.ring())?;
    let product = HilbertSeries::new(
        &chi.0 * ring_series.numerator(),
        ring_series.denominator().to_vec(),
    )
    .reduced();
    let holds = module_series.same_function(&product);
    Ok(FactorizationReport { route, betti, chi, module_series, ring_series, product, holds })
}
