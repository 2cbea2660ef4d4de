//! The backtracking search for a Hilbert partition whose high endpoints all
//! have at least `s` saturated coordinates.
//!
//! A node is the residual polynomial left after subtracting the intervals
//! chosen so far. Points of the residual with saturation `≥ s` never need
//! an interval: they are finished off by singletons `[a, a]`. Every other
//! point must end up inside an interval whose high endpoint has saturation
//! exactly `s` (larger endpoints can always be shrunk to one of those and
//! the leftover re-tiled). The engine branches on one residual point that
//! is minimal in the residual support: such a point can only be covered by
//! an interval starting at itself, so trying all of its covers is
//! exhaustive.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::Grid;
use super::{CoverOrder, ElementOrder, SearchConfig, SearchStats};
use crate::error::{Error, Limit, Result};

/// Extra admissibility test for a cover `[low, high]` (grid indices).
pub(crate) trait Gate {
    fn allows(&self, grid: &Grid, low: usize, high: usize) -> bool;
}

pub(crate) struct NoGate;

impl Gate for NoGate {
    fn allows(&self, _: &Grid, _: usize, _: usize) -> bool {
        true
    }
}

/// Intervals as `(low, high)` grid indices, with repetition.
pub(crate) type Parts = Vec<(usize, usize)>;

pub(crate) struct Engine<'a, G: Gate> {
    grid: &'a Grid,
    s: usize,
    cfg: &'a SearchConfig,
    gate: &'a G,
    residual: Vec<u32>,
    original: Vec<bool>,
    level_mass: Vec<u64>,
    chosen: Parts,
    targets: Vec<Option<Box<[usize]>>>,
    binom: Vec<Vec<i128>>,
    memo: Option<HashSet<u128>>,
    keys: Vec<u128>,
    hash: u128,
    started: Instant,
    pub stats: SearchStats,
}

impl<'a, G: Gate> Engine<'a, G> {
    pub fn new(grid: &'a Grid, counts: Vec<u32>, s: usize, cfg: &'a SearchConfig, gate: &'a G) -> Self {
        debug_assert_eq!(counts.len(), grid.len());
        let mut level_mass = vec![0u64; grid.n() + 1];
        for (i, &c) in counts.iter().enumerate() {
            level_mass[grid.rho(i)] += u64::from(c);
        }
        let binom = pascal(grid.n());
        let (memo, keys, hash) = if cfg.memoize_failures {
            let keys = zobrist_keys(grid.len());
            let hash = counts
                .iter()
                .zip(&keys)
                .fold(0u128, |h, (&c, &k)| h.wrapping_add(k.wrapping_mul(u128::from(c))));
            (Some(HashSet::new()), keys, hash)
        } else {
            (None, Vec::new(), 0)
        };
        Self {
            grid,
            s,
            cfg,
            gate,
            original: counts.iter().map(|&c| c > 0).collect(),
            residual: counts,
            level_mass,
            chosen: Vec::new(),
            targets: vec![None; grid.len()],
            binom,
            memo,
            keys,
            hash,
            started: Instant::now(),
            stats: SearchStats::default(),
        }
    }

    /// Runs the search. On success returns the chosen intervals followed by
    /// the singleton completion of the residual.
    pub fn run(&mut self) -> Result<Option<Parts>> {
        self.started = Instant::now();
        let found = self.node();
        self.stats.elapsed = self.started.elapsed();
        if !found? {
            return Ok(None);
        }
        let mut parts = self.chosen.clone();
        for (i, &c) in self.residual.iter().enumerate() {
            parts.extend(std::iter::repeat_n((i, i), c as usize));
        }
        Ok(Some(parts))
    }

    fn node(&mut self) -> Result<bool> {
        self.stats.nodes_visited += 1;
        self.check_limits()?;

        if self.cfg.counting_bound && self.grid.is_squarefree() && !self.level_counts_feasible() {
            return Ok(self.dead_end());
        }
        if let Some(memo) = &self.memo {
            if memo.contains(&self.hash) {
                self.stats.memo_hits += 1;
                self.stats.dead_ends += 1;
                return Ok(false);
            }
        }

        let minimal = self.minimal_uncovered();
        if minimal.is_empty() {
            return Ok(self.leaf_ok() || self.dead_end());
        }
        let Some((a, covers)) = self.choose(&minimal) else {
            return Ok(self.dead_end());
        };
        for x in covers {
            self.stats.covers_tried += 1;
            self.apply(a, x);
            if self.node()? {
                return Ok(true);
            }
            self.undo(a, x);
        }
        Ok(self.dead_end())
    }

    fn dead_end(&mut self) -> bool {
        self.stats.dead_ends += 1;
        if let Some(memo) = &mut self.memo {
            memo.insert(self.hash);
        }
        false
    }

    fn check_limits(&self) -> Result<()> {
        if let Some(limit) = self.cfg.node_limit {
            if self.stats.nodes_visited > limit {
                return Err(Error::LimitExceeded(Limit::Nodes(limit)));
            }
        }
        if let Some(limit) = self.cfg.time_limit {
            if self.stats.nodes_visited.is_multiple_of(64) && self.started.elapsed() > limit {
                return Err(Error::LimitExceeded(Limit::Time(limit)));
            }
        }
        Ok(())
    }

    /// Every remaining point is finished by a singleton; those must pass
    /// the gate too.
    fn leaf_ok(&self) -> bool {
        self.residual
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || self.gate.allows(self.grid, i, i))
    }

    /// Residual points with saturation below `s` that have no other such
    /// point below them, in ascending index order.
    fn minimal_uncovered(&self) -> Vec<usize> {
        let mut mins: Vec<usize> = Vec::new();
        for (i, &c) in self.residual.iter().enumerate() {
            if c == 0 || self.grid.rho(i) >= self.s {
                continue;
            }
            if !mins.iter().any(|&m| self.grid.leq(m, i)) {
                mins.push(i);
            }
        }
        mins
    }

    fn choose(&mut self, minimal: &[usize]) -> Option<(usize, Vec<usize>)> {
        let pick = match self.cfg.element_order {
            ElementOrder::LexAsc => minimal[0],
            ElementOrder::LexDesc => *minimal.last().unwrap(),
            ElementOrder::ByRhoAsc => *minimal.iter().min_by_key(|&&i| (self.grid.rho(i), i)).unwrap(),
            ElementOrder::FewestCoversFirst => {
                let mut best: Option<(usize, usize)> = None;
                for &a in minimal {
                    let cap = best.map_or(usize::MAX, |(_, k)| k);
                    let k = self.count_covers(a, cap);
                    if k == 0 {
                        return None;
                    }
                    if k < cap {
                        best = Some((a, k));
                    }
                }
                best.unwrap().0
            }
        };
        let covers = self.covers(pick);
        if covers.is_empty() {
            None
        } else {
            Some((pick, covers))
        }
    }

    /// Number of admissible covers of `a`, counting no further than `cap`.
    fn count_covers(&mut self, a: usize, cap: usize) -> usize {
        self.ensure_targets(a);
        let targets = self.targets[a].take().unwrap();
        let mut k = 0;
        for &x in targets.iter() {
            if self.admissible(a, x) {
                k += 1;
                if k >= cap {
                    break;
                }
            }
        }
        self.targets[a] = Some(targets);
        k
    }

    /// Admissible covers of `a` in the configured order.
    pub fn covers(&mut self, a: usize) -> Vec<usize> {
        self.ensure_targets(a);
        let targets = self.targets[a].take().unwrap();
        let out = targets.iter().copied().filter(|&x| self.admissible(a, x)).collect();
        self.targets[a] = Some(targets);
        out
    }

    /// Whether `a` is a residual point below level `s`.
    pub fn needs_cover(&self, a: usize) -> bool {
        self.residual[a] > 0 && self.grid.rho(a) < self.s
    }

    fn admissible(&self, a: usize, x: usize) -> bool {
        let fits = if self.cfg.disjointness_check {
            self.original[a]
                && self.original[x]
                && self.chosen.iter().all(|&(lo, hi)| !self.grid.boxes_meet(lo, hi, a, x))
        } else {
            self.grid.for_each_in_box(a, x, |i| self.residual[i] > 0)
        };
        fits && self.gate.allows(self.grid, a, x)
    }

    /// Candidate high endpoints for `a`: points `x ≽ a` with saturation
    /// exactly `s`, sorted per the cover order. Cached per point.
    fn ensure_targets(&mut self, a: usize) {
        if self.targets[a].is_some() {
            return;
        }
        let grid = self.grid;
        let mut xs = Vec::new();
        grid.for_each_in_box(a, grid.top(), |x| {
            if grid.rho(x) == self.s {
                xs.push(x);
            }
            true
        });
        match self.cfg.cover_order {
            CoverOrder::LexAsc => {}
            CoverOrder::LexDesc => xs.reverse(),
            CoverOrder::SmallestBoxFirst => xs.sort_by_key(|&x| (grid.box_size(a, x), x)),
            CoverOrder::LargestBoxFirst => xs.sort_by_key(|&x| (std::cmp::Reverse(grid.box_size(a, x)), x)),
        }
        self.targets[a] = Some(xs.into_boxed_slice());
    }

    fn apply(&mut self, a: usize, x: usize) {
        let grid = self.grid;
        let (residual, level_mass, keys, hash) =
            (&mut self.residual, &mut self.level_mass, &self.keys, &mut self.hash);
        grid.for_each_in_box(a, x, |i| {
            residual[i] -= 1;
            level_mass[grid.rho(i)] -= 1;
            if !keys.is_empty() {
                *hash = hash.wrapping_sub(keys[i]);
            }
            true
        });
        self.chosen.push((a, x));
    }

    fn undo(&mut self, a: usize, x: usize) {
        let grid = self.grid;
        let (residual, level_mass, keys, hash) =
            (&mut self.residual, &mut self.level_mass, &self.keys, &mut self.hash);
        grid.for_each_in_box(a, x, |i| {
            residual[i] += 1;
            level_mass[grid.rho(i)] += 1;
            if !keys.is_empty() {
                *hash = hash.wrapping_add(keys[i]);
            }
            true
        });
        let popped = self.chosen.pop();
        debug_assert_eq!(popped, Some((a, x)));
    }

    /// Necessary condition for squarefree bounds.
    ///
    /// With `g ≼ (1,…,1)` an interval from level `j` to level `s` holds
    /// `C(s-j, k-j)` points of level `k`. Below level `s` the residual mass
    /// per level therefore fixes, level by level, how many intervals must
    /// start there; those counts must be nonnegative and each interval
    /// consumes its own point of level `s`.
    fn level_counts_feasible(&self) -> bool {
        let s = self.s;
        let h = &self.level_mass;
        let mut starts = vec![0i128; s];
        let mut total = 0i128;
        for k in 0..s {
            let mut left = i128::from(h[k]);
            for (j, &st) in starts.iter().enumerate().take(k) {
                left -= st * self.binom[s - j][k - j];
            }
            if left < 0 {
                return false;
            }
            starts[k] = left;
            total += left;
        }
        total <= i128::from(h[s])
    }
}

fn pascal(n: usize) -> Vec<Vec<i128>> {
    let mut rows = vec![vec![1i128]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = vec![1i128; r + 1];
        for k in 1..r {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

/// Deterministic per-point keys for additive residual hashing.
fn zobrist_keys(len: usize) -> Vec<u128> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1b0a);
    (0..len).map(|_| rng.gen::<u128>() | 1).collect()
}
