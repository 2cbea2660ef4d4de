use crate::error::{Error, Result};
use crate::poset::{BoxPoints, ExponentVector, MAX_VARIABLES};

/// Largest lattice `[0, g]` the dense search will allocate.
pub const MAX_GRID_POINTS: usize = 1 << 22;

/// Dense indexing of the lattice `[0, g]`.
///
/// Index order is lexicographic order of the points (first coordinate most
/// significant), so scanning indices upward visits a linear extension of
/// the componentwise order.
pub(crate) struct Grid {
    n: usize,
    bound: ExponentVector,
    strides: Vec<usize>,
    coords: Vec<u32>,
    rho: Vec<u8>,
    sat: Vec<u64>,
    squarefree: bool,
}

impl Grid {
    pub fn new(bound: &ExponentVector) -> Result<Self> {
        let n = bound.dim();
        if n > MAX_VARIABLES {
            return Err(Error::TooManyVariables(n));
        }
        let g = bound.coords();
        let mut len = 1usize;
        for &e in g {
            len = len
                .checked_mul(e as usize + 1)
                .filter(|&l| l <= MAX_GRID_POINTS)
                .ok_or_else(|| Error::GridTooLarge(bound.clone()))?;
        }
        let mut strides = vec![1usize; n];
        for j in (0..n.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * (g[j + 1] as usize + 1);
        }
        let mut coords = Vec::with_capacity(len * n);
        let mut rho = Vec::with_capacity(len);
        let mut sat = Vec::with_capacity(len);
        for p in BoxPoints::new(vec![0; n], g.to_vec()) {
            let mut mask = 0u64;
            for (j, (a, b)) in p.coords().iter().zip(g).enumerate() {
                if a == b {
                    mask |= 1 << j;
                }
            }
            coords.extend_from_slice(p.coords());
            rho.push(mask.count_ones() as u8);
            sat.push(mask);
        }
        Ok(Self {
            n,
            bound: bound.clone(),
            strides,
            coords,
            rho,
            sat,
            squarefree: g.iter().all(|&e| e <= 1),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> &ExponentVector {
        &self.bound
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }

    pub fn index(&self, a: &[u32]) -> usize {
        a.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    pub fn coords(&self, i: usize) -> &[u32] {
        &self.coords[i * self.n..(i + 1) * self.n]
    }

    pub fn vector(&self, i: usize) -> ExponentVector {
        ExponentVector::new(self.coords(i).to_vec()).expect("grid point is valid")
    }

    pub fn rho(&self, i: usize) -> usize {
        self.rho[i] as usize
    }

    /// Saturated coordinates of point `i` as a bit mask.
    pub fn saturated(&self, i: usize) -> u64 {
        self.sat[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.coords(i).iter().zip(self.coords(j)).all(|(a, b)| a <= b)
    }

    pub fn box_size(&self, lo: usize, hi: usize) -> u64 {
        self.coords(lo)
            .iter()
            .zip(self.coords(hi))
            .map(|(a, b)| u64::from(b - a + 1))
            .product()
    }

    /// Whether the boxes `[lo1, hi1]` and `[lo2, hi2]` share a point.
    pub fn boxes_meet(&self, lo1: usize, hi1: usize, lo2: usize, hi2: usize) -> bool {
        let (a1, b1, a2, b2) = (self.coords(lo1), self.coords(hi1), self.coords(lo2), self.coords(hi2));
        (0..self.n).all(|j| a1[j].max(a2[j]) <= b1[j].min(b2[j]))
    }

    /// Calls `f` on every index of the box `[lo, hi]` in ascending order,
    /// stopping early (and returning `false`) as soon as `f` does.
    pub fn for_each_in_box(&self, lo: usize, hi: usize, mut f: impl FnMut(usize) -> bool) -> bool {
        let n = self.n;
        let a = self.coords(lo);
        let b = self.coords(hi);
        let mut cur = [0u32; MAX_VARIABLES];
        cur[..n].copy_from_slice(a);
        let mut idx = lo;
        loop {
            if !f(idx) {
                return false;
            }
            let mut j = n;
            loop {
                if j == 0 {
                    return true;
                }
                j -= 1;
                if cur[j] < b[j] {
                    cur[j] += 1;
                    idx += self.strides[j];
                    break;
                }
                idx -= (cur[j] - a[j]) as usize * self.strides[j];
                cur[j] = a[j];
            }
        }
    }

    /// The box `[lo, hi']` where `hi'` agrees with `hi` except on the
    /// coordinates in `pinned`, which are lowered to `lo`'s values.
    pub fn pinned_high(&self, lo: usize, hi: usize, pinned: u64) -> usize {
        let a = self.coords(lo);
        let b = self.coords(hi);
        let mut idx = 0;
        for j in 0..self.n {
            let c = if pinned & (1 << j) != 0 { a[j] } else { b[j] };
            idx += c as usize * self.strides[j];
        }
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_follow_lex_order() {
        let g = ExponentVector::new(vec![2, 1, 3]).unwrap();
        let grid = Grid::new(&g).unwrap();
        assert_eq!(grid.len(), 24);
        let pts: Vec<_> = (0..grid.len()).map(|i| grid.vector(i)).collect();
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(grid.index(p.coords()), i);
            assert_eq!(grid.rho(i), p.saturation(&g));
        }
        assert!(!grid.is_squarefree());
    }

    #[test]
    fn box_walk_matches_filter() {
        let g = ExponentVector::new(vec![2, 2, 1]).unwrap();
        let grid = Grid::new(&g).unwrap();
        for lo in 0..grid.len() {
            for hi in 0..grid.len() {
                if !grid.leq(lo, hi) {
                    continue;
                }
                let mut walked = Vec::new();
                grid.for_each_in_box(lo, hi, |i| {
                    walked.push(i);
                    true
                });
                let expected: Vec<_> = (0..grid.len())
                    .filter(|&i| grid.leq(lo, i) && grid.leq(i, hi))
                    .collect();
                assert_eq!(walked, expected);
                assert_eq!(walked.len() as u64, grid.box_size(lo, hi));
            }
        }
    }

    #[test]
    fn refuses_huge_lattices() {
        let g = ExponentVector::splat(30, 1);
        assert!(matches!(Grid::new(&g), Err(Error::GridTooLarge(_))));
    }
}
