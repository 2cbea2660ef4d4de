//! Hilbert depth by backtracking over upper-discrete Hilbert partitions.

mod engine;
mod grid;
mod oracle;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use grid::MAX_GRID_POINTS;
pub use oracle::{brute_force_hdepth, BruteForceCap};

pub(crate) use engine::{Engine, Gate, NoGate, Parts};
pub(crate) use grid::Grid;

use crate::error::{check_dim, Error, Result};
use crate::poset::{saturated_set, shifts_of, BoxPoints, ExponentVector, Interval, VariableSet};
use crate::series::{determine_bound, series_of, HilbertPartition, ModuleExpr, TruncatedSeries};

/// Which uncovered point the search branches on.
///
/// Only points minimal in the residual support are ever branched on; the
/// order picks among those.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum ElementOrder {
    #[serde(rename = "lexAsc")]
    LexAsc,
    #[serde(rename = "lexDesc")]
    LexDesc,
    #[serde(rename = "byRhoAsc")]
    ByRhoAsc,
    #[default]
    #[serde(rename = "fewestCoversFirst")]
    FewestCoversFirst,
}

/// Order in which the covers of the chosen point are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum CoverOrder {
    #[default]
    #[serde(rename = "lexAsc")]
    LexAsc,
    #[serde(rename = "lexDesc")]
    LexDesc,
    #[serde(rename = "smallestBoxFirst")]
    SmallestBoxFirst,
    #[serde(rename = "largestBoxFirst")]
    LargestBoxFirst,
}

/// How the depth value is located.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Driver {
    /// Binary search over `s ∈ [0, n]`.
    #[default]
    #[serde(rename = "binary")]
    Binary,
    /// Try `s = n, n-1, …` until one succeeds.
    #[serde(rename = "scan")]
    Scan,
}

macro_rules! named_enum {
    ($ty:ty, $($variant:path => $name:literal),+ $(,)?) => {
        impl $ty {
            pub const NAMES: &'static [&'static str] = &[$($name),+];

            pub fn name(self) -> &'static str {
                match self { $($variant => $name),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($name => Ok($variant),)+
                    _ => Err(format!("unknown value {s:?}, expected one of: {}", Self::NAMES.join(", "))),
                }
            }
        }
    };
}

named_enum!(ElementOrder,
    ElementOrder::LexAsc => "lexAsc",
    ElementOrder::LexDesc => "lexDesc",
    ElementOrder::ByRhoAsc => "byRhoAsc",
    ElementOrder::FewestCoversFirst => "fewestCoversFirst",
);

named_enum!(CoverOrder,
    CoverOrder::LexAsc => "lexAsc",
    CoverOrder::LexDesc => "lexDesc",
    CoverOrder::SmallestBoxFirst => "smallestBoxFirst",
    CoverOrder::LargestBoxFirst => "largestBoxFirst",
);

named_enum!(Driver,
    Driver::Binary => "binary",
    Driver::Scan => "scan",
);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub element_order: ElementOrder,
    pub cover_order: CoverOrder,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub driver: Driver,
    /// Remember residuals already shown to be dead ends.
    pub memoize_failures: bool,
    /// Prune with the per-level counting condition (squarefree bounds only).
    pub counting_bound: bool,
    /// Test cover feasibility by pairwise disjointness with the intervals
    /// chosen so far instead of by residual coefficients. Only meaningful
    /// for multiplicity-free inputs with convex support, i.e. monomial
    /// quotients; ignored elsewhere.
    pub disjointness_check: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            element_order: ElementOrder::default(),
            cover_order: CoverOrder::default(),
            node_limit: None,
            time_limit: None,
            driver: Driver::default(),
            memoize_failures: false,
            counting_bound: true,
            disjointness_check: false,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.node_limit == Some(0) {
            return Err(Error::Precondition("node limit must be positive".into()));
        }
        if self.time_limit == Some(Duration::ZERO) {
            return Err(Error::Precondition("time limit must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_visited: u64,
    pub covers_tried: u64,
    pub dead_ends: u64,
    pub memo_hits: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes_visited += other.nodes_visited;
        self.covers_tried += other.covers_tried;
        self.dead_ends += other.dead_ends;
        self.memo_hits += other.memo_hits;
        self.elapsed += other.elapsed;
    }
}

/// One summand `K[vars](-shift)` of a Hilbert or Stanley decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Space {
    pub shift: ExponentVector,
    pub vars: VariableSet,
}

impl Space {
    /// The monomials of this space that lie in `[0, bound]`.
    pub fn truncated_points(&self, bound: &ExponentVector) -> BoxPoints {
        let lo = self.shift.coords().to_vec();
        let hi = lo
            .iter()
            .enumerate()
            .map(|(j, &c)| if self.vars.contains(j) { bound.coords()[j] } else { c })
            .collect();
        BoxPoints::new(lo, hi)
    }
}

/// A direct sum of spaces `K[Z](-c)`, truncated at `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDecomposition {
    pub bound: ExponentVector,
    pub spaces: Vec<Space>,
}

impl HilbertDecomposition {
    /// Smallest number of variables over all spaces; `n` when empty.
    pub fn depth(&self) -> usize {
        self.spaces.iter().map(|s| s.vars.len()).min().unwrap_or(self.bound.dim())
    }

    /// Truncated Hilbert series of the direct sum.
    pub fn series(&self) -> Result<TruncatedSeries> {
        spaces_series(&self.bound, &self.spaces)
    }
}

pub(crate) fn spaces_series(bound: &ExponentVector, spaces: &[Space]) -> Result<TruncatedSeries> {
    let mut terms = Vec::new();
    for sp in spaces {
        check_dim(bound.dim(), sp.shift.dim())?;
        if !sp.shift.is_below(bound) {
            return Err(Error::OutOfBound {
                point: sp.shift.clone(),
                bound: bound.clone(),
            });
        }
        terms.extend(sp.truncated_points(bound).map(|c| (c, 1)));
    }
    TruncatedSeries::from_terms(bound.clone(), terms)
}

/// Outcome of a single `hdepth ≥ s` query.
#[derive(Clone, Debug)]
pub struct CheckOutcome<C> {
    pub certificate: Option<C>,
    pub stats: SearchStats,
}

/// Result of a depth computation.
#[derive(Clone, Debug)]
pub struct DepthReport<C> {
    pub value: usize,
    pub certificate: C,
    pub stats: SearchStats,
}

/// Dense residual counts for `p` on `grid`.
pub(crate) fn dense_counts(grid: &Grid, p: &TruncatedSeries) -> Result<Vec<u32>> {
    let mut counts = vec![0u32; grid.len()];
    for (a, c) in p.iter() {
        counts[grid.index(a.coords())] =
            u32::try_from(c).map_err(|_| Error::Precondition(format!("coefficient {c} at {a} is too large")))?;
    }
    Ok(counts)
}

pub(crate) fn parts_to_partition(grid: &Grid, parts: &Parts) -> HilbertPartition {
    let parts = parts
        .iter()
        .map(|&(lo, hi)| Interval::new(grid.vector(lo), grid.vector(hi)).expect("engine intervals are ordered"))
        .collect();
    HilbertPartition::new(grid.bound().clone(), parts).expect("engine intervals lie below the bound")
}

fn check_level(p: &TruncatedSeries, s: usize) -> Result<()> {
    if s > p.dim() {
        return Err(Error::Precondition(format!("s = {s} exceeds the number of variables {}", p.dim())));
    }
    Ok(())
}

/// Uncovered points of `p` whose saturation is below `s`, in the order the
/// configuration prefers them.
pub fn find_elements_to_cover(p: &TruncatedSeries, s: usize, cfg: &SearchConfig) -> Result<Vec<ExponentVector>> {
    check_level(p, s)?;
    let grid = Grid::new(p.bound())?;
    let counts = dense_counts(&grid, p)?;
    let mut engine = Engine::new(&grid, counts, s, cfg, &NoGate);
    let mut elems: Vec<usize> = (0..grid.len()).filter(|&i| engine.needs_cover(i)).collect();
    match cfg.element_order {
        ElementOrder::LexAsc => {}
        ElementOrder::LexDesc => elems.reverse(),
        ElementOrder::ByRhoAsc => elems.sort_by_key(|&i| (grid.rho(i), i)),
        ElementOrder::FewestCoversFirst => {
            let mut keyed: Vec<_> = elems.iter().map(|&i| (engine.covers(i).len(), i)).collect();
            keyed.sort();
            elems = keyed.into_iter().map(|(_, i)| i).collect();
        }
    }
    Ok(elems.into_iter().map(|i| grid.vector(i)).collect())
}

/// High endpoints `x` with saturation exactly `s` such that `[a, x]` can be
/// subtracted from `p`, in the configured cover order.
pub fn find_possible_covers(
    p: &TruncatedSeries,
    s: usize,
    a: &ExponentVector,
    cfg: &SearchConfig,
) -> Result<Vec<ExponentVector>> {
    check_level(p, s)?;
    check_dim(p.dim(), a.dim())?;
    let grid = Grid::new(p.bound())?;
    let counts = dense_counts(&grid, p)?;
    let idx = grid.index(a.coords());
    if p.coeff(a) == 0 || grid.rho(idx) >= s {
        return Err(Error::Precondition(format!(
            "{a} must be in the support with saturation below {s}"
        )));
    }
    let mut engine = Engine::new(&grid, counts, s, cfg, &NoGate);
    Ok(engine.covers(idx).into_iter().map(|i| grid.vector(i)).collect())
}

/// Looks for a Hilbert partition of `p` all of whose high endpoints have
/// saturation at least `s`.
///
/// `Ok` with no certificate means no such partition exists; running out of
/// budget is an error, never a negative answer.
pub fn check_hilbert_depth(p: &TruncatedSeries, s: usize, cfg: &SearchConfig) -> Result<CheckOutcome<HilbertPartition>> {
    cfg.validate()?;
    check_level(p, s)?;
    let grid = Grid::new(p.bound())?;
    let counts = dense_counts(&grid, p)?;
    let search_cfg = SearchConfig {
        disjointness_check: false,
        ..cfg.clone()
    };
    let mut engine = Engine::new(&grid, counts, s, &search_cfg, &NoGate);
    let found = engine.run()?;
    Ok(CheckOutcome {
        certificate: found.map(|parts| parts_to_partition(&grid, &parts)),
        stats: engine.stats,
    })
}

/// Finds the largest `s` for which `check(s)` succeeds, given that success
/// is monotone in `s` and `check(0)` always succeeds.
pub(crate) fn depth_driver<C>(
    n: usize,
    driver: Driver,
    mut check: impl FnMut(usize) -> Result<CheckOutcome<C>>,
) -> Result<DepthReport<C>> {
    let mut stats = SearchStats::default();
    let mut best: Option<(usize, C)> = None;
    match driver {
        Driver::Binary => {
            let (mut lo, mut hi) = (0usize, n);
            while lo < hi {
                let mid = (lo + hi).div_ceil(2);
                let out = check(mid)?;
                stats.absorb(&out.stats);
                match out.certificate {
                    Some(c) => {
                        lo = mid;
                        best = Some((mid, c));
                    }
                    None => hi = mid - 1,
                }
            }
        }
        Driver::Scan => {
            for s in (1..=n).rev() {
                let out = check(s)?;
                stats.absorb(&out.stats);
                if let Some(c) = out.certificate {
                    best = Some((s, c));
                    break;
                }
            }
        }
    }
    let (value, certificate) = match best {
        Some(b) => b,
        None => {
            let out = check(0)?;
            stats.absorb(&out.stats);
            let c = out
                .certificate
                .ok_or_else(|| Error::Precondition("no partition exists even for s = 0".into()))?;
            (0, c)
        }
    };
    Ok(DepthReport {
        value,
        certificate,
        stats,
    })
}

/// Hilbert depth of the polynomial `p` (any ℕ-combination of monomials
/// below its bound), with an optimal partition.
pub fn hdepth_of_series(p: &TruncatedSeries, cfg: &SearchConfig) -> Result<DepthReport<HilbertPartition>> {
    cfg.validate()?;
    depth_driver(p.dim(), cfg.driver, |s| check_hilbert_depth(p, s, cfg))
}

/// Hilbert depth of a module expression, computed on its series truncated
/// at [`determine_bound`].
pub fn hdepth(m: &ModuleExpr, cfg: &SearchConfig) -> Result<DepthReport<HilbertPartition>> {
    let g = determine_bound(m);
    let p = series_of(m, &g)?;
    hdepth_of_series(&p, cfg)
}

/// Turns each part `[a, b]` into the spaces `K[Z_b](-c)` for `c` in the
/// pinned shift set of the part.
pub fn render_decomposition(pp: &HilbertPartition) -> HilbertDecomposition {
    let g = pp.bound();
    let spaces = pp
        .parts()
        .iter()
        .flat_map(|part| {
            let vars = saturated_set(part.high(), g);
            shifts_of(part, g).into_iter().map(move |shift| Space { shift, vars })
        })
        .collect();
    HilbertDecomposition {
        bound: g.clone(),
        spaces,
    }
}

/// Whether the truncated spaces of `d` add up to exactly `h`.
pub fn verify_decomposition(h: &TruncatedSeries, d: &HilbertDecomposition) -> bool {
    h.bound() == &d.bound && d.series().is_ok_and(|s| s == *h)
}
