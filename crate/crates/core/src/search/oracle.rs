//! Exhaustive Hilbert depth for tiny polynomials.
//!
//! Enumerates every Hilbert partition, with arbitrary intervals `a ≼ b ≼ g`
//! and repetition, and maximizes the smallest saturation of a high
//! endpoint. Shares no code with the backtracking engine: only the series
//! type and the lattice primitives.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::poset::{BoxPoints, ExponentVector};
use crate::series::TruncatedSeries;

/// Size limits for [`brute_force_hdepth`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceCap {
    pub max_support: usize,
    pub max_coeff: u64,
}

impl Default for BruteForceCap {
    fn default() -> Self {
        Self {
            max_support: 16,
            max_coeff: 3,
        }
    }
}

type State = BTreeMap<ExponentVector, u64>;

/// Maximum over all Hilbert partitions of `p` of the smallest saturation
/// among their high endpoints. The empty polynomial has depth `n`.
pub fn brute_force_hdepth(p: &TruncatedSeries, cap: BruteForceCap) -> Result<usize> {
    if p.support_len() > cap.max_support {
        return Err(Error::CapExceeded(format!(
            "support of {} points exceeds {}",
            p.support_len(),
            cap.max_support
        )));
    }
    if p.max_coeff() > cap.max_coeff {
        return Err(Error::CapExceeded(format!(
            "coefficient {} exceeds {}",
            p.max_coeff(),
            cap.max_coeff
        )));
    }
    let state: State = p.iter().map(|(a, c)| (a.clone(), c)).collect();
    let mut memo = HashMap::new();
    Ok(best(&state, p.bound(), &mut memo))
}

fn best(state: &State, g: &ExponentVector, memo: &mut HashMap<State, usize>) -> usize {
    // The lexicographically first point can only be the low end of the
    // interval that covers it.
    let Some(a) = state.keys().next().cloned() else {
        return g.dim();
    };
    if let Some(&v) = memo.get(state) {
        return v;
    }
    let mut value = 0;
    for b in BoxPoints::new(a.coords().to_vec(), g.coords().to_vec()) {
        let sat = b.saturation(g);
        if sat <= value {
            continue;
        }
        let Some(rest) = remove_box(state, &a, &b) else {
            continue;
        };
        value = value.max(sat.min(best(&rest, g, memo)));
        if value == g.dim() {
            break;
        }
    }
    memo.insert(state.clone(), value);
    value
}

fn remove_box(state: &State, a: &ExponentVector, b: &ExponentVector) -> Option<State> {
    let mut rest = state.clone();
    for c in BoxPoints::new(a.coords().to_vec(), b.coords().to_vec()) {
        let slot = rest.get_mut(&c)?;
        *slot -= 1;
        if *slot == 0 {
            rest.remove(&c);
        }
    }
    Some(rest)
}
