//! Truncated multigraded Hilbert series and the module expressions they
//! come from.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::error::{check_dim, Error, Result};
use crate::poset::{BoxPoints, ExponentVector, Interval};

/// A polynomial with positive integer coefficients supported on `[0, bound]`.
///
/// This holds `H_M(X)` truncated at `bound` as well as every residual the
/// search produces. Absent keys have coefficient zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    bound: ExponentVector,
    coeffs: BTreeMap<ExponentVector, u64>,
}

/// Subtraction would have produced a negative coefficient.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
#[error("coefficient at {witness} would become negative (short by {deficit})")]
pub struct NegativityError {
    pub witness: ExponentVector,
    pub deficit: u64,
}

impl TruncatedSeries {
    pub fn zero(bound: ExponentVector) -> Self {
        Self {
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums the given terms. Repeated exponents accumulate; zero
    /// coefficients are dropped.
    pub fn from_terms<I>(bound: ExponentVector, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, u64)>,
    {
        let mut s = Self::zero(bound);
        for (a, c) in terms {
            check_dim(s.dim(), a.dim())?;
            if !a.is_below(&s.bound) {
                return Err(Error::OutOfBound {
                    point: a,
                    bound: s.bound.clone(),
                });
            }
            s.add_at(a, c);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.bound.dim()
    }

    pub fn bound(&self) -> &ExponentVector {
        &self.bound
    }

    pub fn coeff(&self, a: &ExponentVector) -> u64 {
        self.coeffs.get(a).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in lexicographic order of the exponent.
    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, u64)> + '_ {
        self.coeffs.iter().map(|(a, &c)| (a, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> + '_ {
        self.coeffs.keys()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Sum of all coefficients.
    pub fn total_mass(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn max_coeff(&self) -> u64 {
        self.coeffs.values().copied().max().unwrap_or(0)
    }

    /// Every coefficient is at most one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.max_coeff() <= 1
    }

    fn add_at(&mut self, a: ExponentVector, c: u64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(a).or_insert(0);
        *slot = slot.checked_add(c).expect("coefficient overflow");
    }

    /// Coefficientwise sum. Both operands must share the bound.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.bound, other.bound, "series bounds differ");
        let mut out = self.clone();
        for (a, c) in other.iter() {
            out.add_at(a.clone(), c);
        }
        out
    }

    /// The terms with exponent `≼ bound`, re-bounded at `bound`.
    pub fn restrict(&self, bound: &ExponentVector) -> Result<Self> {
        check_dim(self.dim(), bound.dim())?;
        if !bound.is_below(&self.bound) {
            return Err(Error::OutOfBound {
                point: bound.clone(),
                bound: self.bound.clone(),
            });
        }
        Ok(Self {
            bound: bound.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(a, _)| a.is_below(bound))
                .map(|(a, &c)| (a.clone(), c))
                .collect(),
        })
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(bound={}, ", self.bound)?;
        f.debug_map().entries(self.coeffs.iter()).finish()?;
        f.write_str(")")
    }
}

/// `Q[a,b]`: coefficient one at every lattice point of the interval.
pub fn interval_poly(iv: &Interval, bound: &ExponentVector) -> Result<TruncatedSeries> {
    check_dim(bound.dim(), iv.dim())?;
    if !iv.high().is_below(bound) {
        return Err(Error::OutOfBound {
            point: iv.high().clone(),
            bound: bound.clone(),
        });
    }
    Ok(TruncatedSeries {
        bound: bound.clone(),
        coeffs: iv.points().map(|c| (c, 1)).collect(),
    })
}

/// `p - q`, provided no coefficient goes negative.
///
/// # Panics
///
/// If the operands have different bounds.
pub fn subtract_checked(p: &TruncatedSeries, q: &TruncatedSeries) -> Result<TruncatedSeries, NegativityError> {
    assert_eq!(p.bound, q.bound, "series bounds differ");
    let mut out = p.clone();
    for (a, c) in q.iter() {
        let have = p.coeff(a);
        if have < c {
            return Err(NegativityError {
                witness: a.clone(),
                deficit: c - have,
            });
        }
        if have == c {
            out.coeffs.remove(a);
        } else {
            out.coeffs.insert(a.clone(), have - c);
        }
    }
    Ok(out)
}

/// A monomial ideal, kept as its minimal generating set (sorted).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by the given monomials, discarding any
    /// generator divisible by another.
    pub fn new(dim: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        for g in &generators {
            check_dim(dim, g.dim())?;
        }
        let mut gens = generators;
        gens.sort_by_key(|g| (g.degree(), g.clone()));
        gens.dedup();
        let mut minimal: Vec<ExponentVector> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimal.iter().any(|m| m.is_below(&g)) {
                minimal.push(g);
            }
        }
        minimal.sort();
        Ok(Self {
            dim,
            generators: minimal,
        })
    }

    /// The zero ideal.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            generators: Vec::new(),
        }
    }

    /// The whole ring, generated by `1`.
    pub fn unit(dim: usize) -> Self {
        Self {
            dim,
            generators: vec![ExponentVector::zero(dim)],
        }
    }

    /// `(X_1, ..., X_n)`.
    pub fn maximal(dim: usize) -> Self {
        Self {
            dim,
            generators: (0..dim).rev().map(|i| ExponentVector::unit(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// `X^u ∈ I`, i.e. some generator divides `X^u`.
    pub fn contains(&self, u: &ExponentVector) -> bool {
        debug_assert_eq!(self.dim, u.dim());
        self.generators.iter().any(|g| g.is_below(u))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Componentwise maximum of the generator exponents (zero for the zero
    /// ideal).
    pub fn max_degrees(&self) -> ExponentVector {
        self.generators
            .iter()
            .fold(ExponentVector::zero(self.dim), |acc, g| acc.join(g))
    }

    /// `X^c · I`.
    pub fn shifted(&self, c: &ExponentVector) -> Self {
        let mut generators: Vec<_> = self.generators.iter().map(|g| g.add(c)).collect();
        generators.sort();
        Self {
            dim: self.dim,
            generators,
        }
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ideal")?;
        f.debug_list().entries(&self.generators).finish()
    }
}

/// One direct summand of a [`ModuleExpr`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Summand {
    /// `R(-shift)`.
    Free { shift: ExponentVector },
    /// `(I/J)(-shift)` with `J ⊆ I`.
    Quotient {
        numerator: MonomialIdeal,
        denominator: MonomialIdeal,
        shift: ExponentVector,
    },
}

impl Summand {
    pub fn shift(&self) -> &ExponentVector {
        match self {
            Summand::Free { shift } | Summand::Quotient { shift, .. } => shift,
        }
    }

    /// The coefficient of `X^a` in this summand's Hilbert series (0 or 1).
    pub fn hilbert_function(&self, a: &ExponentVector) -> u64 {
        let Some(u) = a.checked_sub(self.shift()) else {
            return 0;
        };
        match self {
            Summand::Free { .. } => 1,
            Summand::Quotient {
                numerator,
                denominator,
                ..
            } => u64::from(numerator.contains(&u) && !denominator.contains(&u)),
        }
    }
}

/// A finite direct sum of shifted free modules and shifted quotients of
/// monomial ideals.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModuleExpr {
    dim: usize,
    terms: Vec<Summand>,
}

impl ModuleExpr {
    /// The zero module in `dim` variables.
    pub fn new(dim: usize) -> Self {
        Self { dim, terms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Summand] {
        &self.terms
    }

    pub fn push(&mut self, term: Summand) -> Result<()> {
        match &term {
            Summand::Free { shift } => check_dim(self.dim, shift.dim())?,
            Summand::Quotient {
                numerator,
                denominator,
                shift,
            } => {
                check_dim(self.dim, shift.dim())?;
                check_dim(self.dim, numerator.dim())?;
                check_dim(self.dim, denominator.dim())?;
                if !numerator.contains_ideal(denominator) {
                    return Err(Error::InvalidModule(format!(
                        "denominator {denominator:?} is not contained in numerator {numerator:?}"
                    )));
                }
            }
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn with_free(mut self, shift: ExponentVector) -> Result<Self> {
        self.push(Summand::Free { shift })?;
        Ok(self)
    }

    pub fn with_quotient(
        mut self,
        numerator: MonomialIdeal,
        denominator: MonomialIdeal,
        shift: ExponentVector,
    ) -> Result<Self> {
        self.push(Summand::Quotient {
            numerator,
            denominator,
            shift,
        })?;
        Ok(self)
    }

    /// `R^k`.
    pub fn free(dim: usize, rank: usize) -> Self {
        Self {
            dim,
            terms: (0..rank)
                .map(|_| Summand::Free {
                    shift: ExponentVector::zero(dim),
                })
                .collect(),
        }
    }

    /// The ideal `I` viewed as a module, `I/0`.
    pub fn ideal(ideal: MonomialIdeal) -> Self {
        let dim = ideal.dim();
        Self {
            dim,
            terms: vec![Summand::Quotient {
                numerator: ideal,
                denominator: MonomialIdeal::zero(dim),
                shift: ExponentVector::zero(dim),
            }],
        }
    }

    /// Direct sum of two expressions.
    pub fn direct_sum(mut self, other: ModuleExpr) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        self.terms.extend(other.terms);
        Ok(self)
    }
}

/// A degree bound that makes the module positively determined: the join of
/// every shift and every (shifted) generator exponent.
pub fn determine_bound(m: &ModuleExpr) -> ExponentVector {
    let mut g = ExponentVector::zero(m.dim);
    for t in &m.terms {
        g = g.join(t.shift());
        if let Summand::Quotient {
            numerator,
            denominator,
            shift,
        } = t
        {
            for e in numerator.generators().iter().chain(denominator.generators()) {
                g = g.join(&e.add(shift));
            }
        }
    }
    g
}

/// `H_M(X)` truncated at `g`.
pub fn series_of(m: &ModuleExpr, g: &ExponentVector) -> Result<TruncatedSeries> {
    check_dim(m.dim, g.dim())?;
    let required = determine_bound(m);
    if !required.is_below(g) {
        return Err(Error::BoundTooSmall {
            given: g.clone(),
            required,
        });
    }
    let mut out = TruncatedSeries::zero(g.clone());
    for t in &m.terms {
        let lo = t.shift().coords().to_vec();
        for a in BoxPoints::new(lo, g.coords().to_vec()) {
            let c = t.hilbert_function(&a);
            out.add_at(a, c);
        }
    }
    Ok(out)
}

/// A Hilbert partition: a multiset of intervals whose induced polynomials
/// are meant to sum to a truncated series.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HilbertPartition {
    bound: ExponentVector,
    parts: Vec<Interval>,
}

impl HilbertPartition {
    pub fn new(bound: ExponentVector, parts: Vec<Interval>) -> Result<Self> {
        for p in &parts {
            check_dim(bound.dim(), p.dim())?;
            if !p.high().is_below(&bound) {
                return Err(Error::OutOfBound {
                    point: p.high().clone(),
                    bound,
                });
            }
        }
        Ok(Self { bound, parts })
    }

    pub fn dim(&self) -> usize {
        self.bound.dim()
    }

    pub fn bound(&self) -> &ExponentVector {
        &self.bound
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Smallest saturation among the high endpoints; `n` when empty.
    pub fn min_rho(&self) -> usize {
        self.parts
            .iter()
            .map(|p| p.high().saturation(&self.bound))
            .min()
            .unwrap_or(self.dim())
    }

    /// Distinct parts with multiplicities, ordered by `(low, high)`.
    pub fn grouped(&self) -> Vec<(Interval, usize)> {
        let mut counts: BTreeMap<&Interval, usize> = BTreeMap::new();
        for p in &self.parts {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts.into_iter().map(|(iv, k)| (iv.clone(), k)).collect()
    }

    /// The sum of the induced polynomials.
    pub fn series(&self) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.bound.clone());
        for p in &self.parts {
            for c in p.points() {
                out.add_at(c, 1);
            }
        }
        out
    }
}

/// Whether the parts of `pp` sum exactly to `h`.
pub fn verify_partition(h: &TruncatedSeries, pp: &HilbertPartition) -> bool {
    h.bound() == pp.bound() && pp.series() == *h
}
