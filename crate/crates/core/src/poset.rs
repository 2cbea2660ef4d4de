//! The lattice ℕⁿ under the componentwise order, together with the
//! saturation statistics taken relative to a degree bound `g`.
//!
//! A coordinate `j` of a point `a ≼ g` is *saturated* when `a_j = g_j`.
//! The number of saturated coordinates is the point's [`rho`], and the set
//! of saturated coordinates is its [`z_set`]. An interval `[a, b]` whose
//! high endpoint has many saturated coordinates is what a Hilbert partition
//! wants: it stands for free modules over the saturated variables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// Largest exponent accepted in any coordinate. Keeps box sizes and grid
/// strides comfortably inside machine integers.
pub const MAX_EXPONENT: u32 = 1 << 15;

/// Largest supported number of variables (variable sets are 64-bit masks).
pub const MAX_VARIABLES: usize = 64;

/// A point of ℕⁿ: the exponent vector of a monomial, or a multidegree.
///
/// Ordering (`Ord`) is lexicographic, which is a linear extension of the
/// componentwise order. Use [`leq`] or [`ExponentVector::is_below`] for the
/// partial order itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.len() > MAX_VARIABLES {
            return Err(Error::TooManyVariables(coords.len()));
        }
        if let Some(&e) = coords.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentTooLarge(e));
        }
        Ok(Self(coords))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The vector with every coordinate equal to `value`.
    pub fn splat(n: usize, value: u32) -> Self {
        assert!(value <= MAX_EXPONENT);
        Self(vec![value; n])
    }

    /// The `i`-th unit vector.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Componentwise `self ≼ other`. Dimensions must agree.
    pub fn is_below(&self, other: &Self) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub(crate) fn join(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub(crate) fn meet(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other ≼ self`.
    pub(crate) fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// Number of coordinates where `self` meets `bound`.
    pub(crate) fn saturation(&self, bound: &Self) -> usize {
        self.0.iter().zip(&bound.0).filter(|(a, g)| a == g).count()
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl From<ExponentVector> for Vec<u32> {
    fn from(v: ExponentVector) -> Self {
        v.0
    }
}

impl TryFrom<Vec<u32>> for ExponentVector {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

/// A set of variable indices (0-based), stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct VariableSet(u64);

impl VariableSet {
    pub const EMPTY: Self = Self(0);

    pub fn from_mask(mask: u64) -> Self {
        Self(mask)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VARIABLES);
        if n == 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_VARIABLES);
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for VariableSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Self::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl From<VariableSet> for Vec<usize> {
    fn from(s: VariableSet) -> Self {
        s.iter().collect()
    }
}

impl TryFrom<Vec<usize>> for VariableSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        if let Some(&i) = v.iter().find(|&&i| i >= MAX_VARIABLES) {
            return Err(Error::TooManyVariables(i + 1));
        }
        Ok(v.into_iter().collect())
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The closed box `[low, high] = { c : low ≼ c ≼ high }`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    low: ExponentVector,
    high: ExponentVector,
}

impl Interval {
    pub fn new(low: ExponentVector, high: ExponentVector) -> Result<Self> {
        check_dim(low.dim(), high.dim())?;
        if !low.is_below(&high) {
            return Err(Error::InvalidInterval { low, high });
        }
        Ok(Self { low, high })
    }

    /// The degenerate interval `[a, a]`.
    pub fn point(a: ExponentVector) -> Self {
        Self {
            high: a.clone(),
            low: a,
        }
    }

    pub fn low(&self) -> &ExponentVector {
        &self.low
    }

    pub fn high(&self) -> &ExponentVector {
        &self.high
    }

    pub fn dim(&self) -> usize {
        self.low.dim()
    }

    pub fn contains(&self, c: &ExponentVector) -> bool {
        self.low.is_below(c) && c.is_below(&self.high)
    }

    /// Number of lattice points, `Π (high_i - low_i + 1)`.
    pub fn size(&self) -> u64 {
        self.low
            .coords()
            .iter()
            .zip(self.high.coords())
            .map(|(a, b)| u64::from(b - a + 1))
            .product()
    }

    /// Lattice points in lexicographic ascending order.
    pub fn points(&self) -> BoxPoints {
        BoxPoints::new(self.low.coords().to_vec(), self.high.coords().to_vec())
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} ; {}]", self.low, self.high)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Odometer over the points of a box, last coordinate fastest, so points
/// come out in lexicographic ascending order.
pub struct BoxPoints {
    low: Vec<u32>,
    high: Vec<u32>,
    cur: Option<Vec<u32>>,
}

impl BoxPoints {
    pub(crate) fn new(low: Vec<u32>, high: Vec<u32>) -> Self {
        let cur = if low.iter().zip(&high).all(|(a, b)| a <= b) {
            Some(low.clone())
        } else {
            None
        };
        Self { low, high, cur }
    }
}

impl Iterator for BoxPoints {
    type Item = ExponentVector;

    fn next(&mut self) -> Option<ExponentVector> {
        let cur = self.cur.as_mut()?;
        let out = ExponentVector(cur.clone());
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.high[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = self.low[i];
        }
        Some(out)
    }
}

fn check_below_bound(a: &ExponentVector, g: &ExponentVector) -> Result<()> {
    check_dim(g.dim(), a.dim())?;
    if a.is_below(g) {
        Ok(())
    } else {
        Err(Error::OutOfBound {
            point: a.clone(),
            bound: g.clone(),
        })
    }
}

/// `a ≼ b` componentwise.
pub fn leq(a: &ExponentVector, b: &ExponentVector) -> Result<bool> {
    check_dim(a.dim(), b.dim())?;
    Ok(a.is_below(b))
}

/// Returns `(a ∨ b, a ∧ b)`: the componentwise maximum and minimum.
pub fn join_meet(a: &ExponentVector, b: &ExponentVector) -> Result<(ExponentVector, ExponentVector)> {
    check_dim(a.dim(), b.dim())?;
    Ok((a.join(b), a.meet(b)))
}

/// Number of coordinates with `a_j = g_j`.
pub fn rho(a: &ExponentVector, g: &ExponentVector) -> Result<usize> {
    check_below_bound(a, g)?;
    Ok(a.saturation(g))
}

/// The saturated coordinates `{ j : a_j = g_j }`.
pub fn z_set(a: &ExponentVector, g: &ExponentVector) -> Result<VariableSet> {
    check_below_bound(a, g)?;
    Ok(saturated_set(a, g))
}

pub(crate) fn saturated_set(a: &ExponentVector, g: &ExponentVector) -> VariableSet {
    a.coords()
        .iter()
        .zip(g.coords())
        .enumerate()
        .filter(|(_, (x, y))| x == y)
        .map(|(j, _)| j)
        .collect()
}

/// The shifts `c ∈ [a, b]` whose coordinates in `Z_b` are pinned to `a`,
/// in lexicographic order.
///
/// Each shift `c` stands for the free module over the variables `Z_b`
/// generated in degree `c`; truncated at `g` these boxes tile `[a, b]`.
pub fn g_set(iv: &Interval, g: &ExponentVector) -> Result<Vec<ExponentVector>> {
    check_below_bound(iv.high(), g)?;
    Ok(shifts_of(iv, g))
}

pub(crate) fn shifts_of(iv: &Interval, g: &ExponentVector) -> Vec<ExponentVector> {
    let z = saturated_set(iv.high(), g);
    let mut hi = iv.high().coords().to_vec();
    for j in z.iter() {
        hi[j] = iv.low().coords()[j];
    }
    BoxPoints::new(iv.low().coords().to_vec(), hi).collect()
}

/// Peels `[a, b0]` off the interval `[a, b]` and tiles the remainder.
///
/// The result is `[a, b0]` followed by, for each coordinate `i` with
/// `b0_i < b_i`, the interval whose `i`-th coordinate runs over
/// `b0_i + 1 ..= b_i`, whose earlier coordinates are capped at `b0` and
/// whose later coordinates are unrestricted. The pieces are pairwise
/// disjoint, their union is `[a, b]`, and every high endpoint is `≽ b0`.
pub fn split_interval(iv: &Interval, b0: &ExponentVector, g: &ExponentVector) -> Result<Vec<Interval>> {
    check_dim(iv.dim(), b0.dim())?;
    check_below_bound(iv.high(), g)?;
    if !iv.low().is_below(b0) || !b0.is_below(iv.high()) {
        return Err(Error::Precondition(format!(
            "split point {b0} must lie in {iv}"
        )));
    }
    let a = iv.low().coords();
    let b = iv.high().coords();
    let p = b0.coords();
    let mut out = vec![Interval {
        low: iv.low().clone(),
        high: b0.clone(),
    }];
    for i in 0..a.len() {
        if p[i] == b[i] {
            continue;
        }
        let mut low = a.to_vec();
        low[i] = p[i] + 1;
        let high: Vec<u32> = (0..a.len()).map(|j| if j < i { p[j] } else { b[j] }).collect();
        out.push(Interval {
            low: ExponentVector(low),
            high: ExponentVector(high),
        });
    }
    Ok(out)
}

/// Whether two intervals share a lattice point: `a ∨ a' ≼ b ∧ b'`.
pub fn intervals_intersect(x: &Interval, y: &Interval) -> Result<bool> {
    check_dim(x.dim(), y.dim())?;
    Ok(x.low().join(y.low()).is_below(&x.high().meet(y.high())))
}
