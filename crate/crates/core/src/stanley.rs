//! Stanley depth of quotients `I/J` of monomial ideals.
//!
//! Every graded piece of `I/J` is at most one-dimensional, so a Hilbert
//! partition of its series induces a Stanley decomposition as soon as no
//! space `X^c · K[Z]` runs into `J`. The search is the Hilbert one with that
//! test applied to each candidate cover.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::poset::{ExponentVector, VariableSet};
use crate::search::{
    dense_counts, depth_driver, render_decomposition, spaces_series, parts_to_partition, CheckOutcome,
    DepthReport, Engine, Gate, Grid, SearchConfig, Space,
};
use crate::series::{determine_bound, series_of, ModuleExpr, MonomialIdeal, Summand, TruncatedSeries};

/// `I/J` with `J ⊆ I`, together with its degree bound and truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientModule {
    numerator: MonomialIdeal,
    denominator: MonomialIdeal,
    bound: ExponentVector,
    series: TruncatedSeries,
}

impl QuotientModule {
    pub fn new(numerator: MonomialIdeal, denominator: MonomialIdeal) -> Result<Self> {
        let dim = numerator.dim();
        let m = ModuleExpr::new(dim).with_quotient(numerator, denominator, ExponentVector::zero(dim))?;
        let bound = determine_bound(&m);
        Self::with_bound(&m, bound)
    }

    /// Like [`QuotientModule::new`] but truncating at a caller-chosen bound,
    /// which must dominate the generators.
    pub fn with_bound(m: &ModuleExpr, bound: ExponentVector) -> Result<Self> {
        let [Summand::Quotient {
            numerator,
            denominator,
            shift,
        }] = m.terms()
        else {
            return Err(Error::InvalidModule("expected a single quotient summand".into()));
        };
        let series = series_of(m, &bound)?;
        if let Some((at, coeff)) = series.iter().find(|(_, c)| *c > 1) {
            return Err(Error::NotMultiplicityFree { at: at.clone(), coeff });
        }
        Ok(Self {
            numerator: numerator.shifted(shift),
            denominator: denominator.shifted(shift),
            bound,
            series,
        })
    }

    /// Accepts a module expression with exactly one summand. A shifted
    /// quotient `(I/J)(-c)` is rewritten as `X^c I / X^c J`, and a free
    /// summand `R(-c)` as `(X^c)/0`.
    pub fn from_module(m: &ModuleExpr) -> Result<Self> {
        let dim = m.dim();
        let (numerator, denominator) = match m.terms() {
            [Summand::Free { shift }] => (MonomialIdeal::unit(dim).shifted(shift), MonomialIdeal::zero(dim)),
            [Summand::Quotient {
                numerator,
                denominator,
                shift,
            }] => (numerator.shifted(shift), denominator.shifted(shift)),
            [] => return Err(Error::InvalidModule("the zero module has no Stanley decomposition to search".into())),
            _ => {
                return Err(Error::InvalidModule(
                    "Stanley depth needs a single quotient of monomial ideals, not a direct sum".into(),
                ))
            }
        };
        Self::new(numerator, denominator)
    }

    pub fn dim(&self) -> usize {
        self.bound.dim()
    }

    pub fn numerator(&self) -> &MonomialIdeal {
        &self.numerator
    }

    pub fn denominator(&self) -> &MonomialIdeal {
        &self.denominator
    }

    pub fn bound(&self) -> &ExponentVector {
        &self.bound
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// Exponent obtained from `c` by pushing the coordinates in `z` up to
    /// the larger of the bound and the top degree of `J`.
    fn saturate(&self, c: &[u32], z: u64) -> Vec<u32> {
        let top = self.denominator.max_degrees();
        c.iter()
            .enumerate()
            .map(|(j, &x)| {
                if z & (1 << j) != 0 {
                    self.bound.coords()[j].max(top.coords()[j])
                } else {
                    x
                }
            })
            .collect()
    }

    fn kills(&self, c: &[u32], z: u64) -> bool {
        let sat = ExponentVector::new(self.saturate(c, z)).expect("saturated exponent within limits");
        self.denominator.contains(&sat)
    }
}

/// Whether some monomial in the variables `z` sends `X^c` into `J`, i.e.
/// whether `K[z]` meets the annihilator of the degree-`c` piece.
pub fn annihilator_intersects(c: &ExponentVector, z: VariableSet, q: &QuotientModule) -> Result<bool> {
    check_dim(q.dim(), c.dim())?;
    if q.series.coeff(c) == 0 {
        return Err(Error::Precondition(format!("{c} is not in the support of the quotient")));
    }
    Ok(q.kills(c.coords(), z.mask()))
}

struct AnnihilatorGate<'a> {
    q: &'a QuotientModule,
}

impl Gate for AnnihilatorGate<'_> {
    fn allows(&self, grid: &Grid, low: usize, high: usize) -> bool {
        if self.q.denominator.is_zero() {
            return true;
        }
        let z = grid.saturated(high);
        let top = grid.pinned_high(low, high, z);
        grid.for_each_in_box(low, top, |c| !self.q.kills(grid.coords(c), z))
    }
}

/// A Stanley decomposition, each space truncated at `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyDecomposition {
    pub bound: ExponentVector,
    pub spaces: Vec<Space>,
}

impl StanleyDecomposition {
    /// Smallest number of variables over all spaces; `n` when empty.
    pub fn depth(&self) -> usize {
        self.spaces.iter().map(|s| s.vars.len()).min().unwrap_or(self.bound.dim())
    }
}

/// Looks for a Stanley decomposition of `q` whose spaces all have at least
/// `s` variables.
pub fn check_stanley_depth(
    q: &QuotientModule,
    s: usize,
    cfg: &SearchConfig,
) -> Result<CheckOutcome<StanleyDecomposition>> {
    cfg.validate()?;
    if s > q.dim() {
        return Err(Error::Precondition(format!("s = {s} exceeds the number of variables {}", q.dim())));
    }
    let grid = Grid::new(&q.bound)?;
    let counts = dense_counts(&grid, &q.series)?;
    let gate = AnnihilatorGate { q };
    let mut engine = Engine::new(&grid, counts, s, cfg, &gate);
    let found = engine.run()?;
    let certificate = found.map(|parts| {
        let d = render_decomposition(&parts_to_partition(&grid, &parts));
        StanleyDecomposition {
            bound: d.bound,
            spaces: d.spaces,
        }
    });
    Ok(CheckOutcome {
        certificate,
        stats: engine.stats,
    })
}

/// Stanley depth of `q` with an optimal decomposition.
pub fn sdepth(q: &QuotientModule, cfg: &SearchConfig) -> Result<DepthReport<StanleyDecomposition>> {
    cfg.validate()?;
    depth_driver(q.dim(), cfg.driver, |s| check_stanley_depth(q, s, cfg))
}

/// Checks that the spaces of `d` tile the truncated series of `q` without
/// overlap and that none of them meets `J`.
pub fn verify_stanley_decomposition(q: &QuotientModule, d: &StanleyDecomposition) -> bool {
    if d.bound != q.bound {
        return false;
    }
    let Ok(series) = spaces_series(&d.bound, &d.spaces) else {
        return false;
    };
    series == q.series
        && d
            .spaces
            .iter()
            .all(|sp| !q.kills(sp.shift.coords(), sp.vars.mask()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[u32]) -> ExponentVector {
        ExponentVector::new(c.to_vec()).unwrap()
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| ev(g)).collect()).unwrap()
    }

    fn x1_over_x1x2() -> QuotientModule {
        QuotientModule::new(ideal(2, &[&[1, 0]]), ideal(2, &[&[1, 1]])).unwrap()
    }

    #[test]
    fn annihilator_examples() {
        let free = QuotientModule::new(MonomialIdeal::maximal(3), MonomialIdeal::zero(3)).unwrap();
        for z in [VariableSet::EMPTY, VariableSet::full(3)] {
            assert!(!annihilator_intersects(&ev(&[1, 0, 0]), z, &free).unwrap());
        }

        let q = x1_over_x1x2();
        assert_eq!(q.bound(), &ev(&[1, 1]));
        assert!(annihilator_intersects(&ev(&[1, 0]), [1].into_iter().collect(), &q).unwrap());
        assert!(!annihilator_intersects(&ev(&[1, 0]), [0].into_iter().collect(), &q).unwrap());
        assert!(annihilator_intersects(&ev(&[0, 0]), VariableSet::EMPTY, &q).is_err());
    }

    #[test]
    fn verifier_rejects_overlap_and_annihilated_spaces() {
        let q = x1_over_x1x2();
        // I/J has the single monomial X1 below the bound (1,1).
        let good = StanleyDecomposition {
            bound: ev(&[1, 1]),
            spaces: vec![Space {
                shift: ev(&[1, 0]),
                vars: [0].into_iter().collect(),
            }],
        };
        assert!(verify_stanley_decomposition(&q, &good));

        let doubled = StanleyDecomposition {
            spaces: vec![good.spaces[0].clone(), good.spaces[0].clone()],
            ..good.clone()
        };
        assert!(!verify_stanley_decomposition(&q, &doubled));

        let bad = StanleyDecomposition {
            spaces: vec![Space {
                shift: ev(&[1, 0]),
                vars: [1].into_iter().collect(),
            }],
            ..good
        };
        // X1·K[X2] truncated at (1,1) would also claim X1X2, which lies in J.
        assert!(!verify_stanley_decomposition(&q, &bad));
    }

    #[test]
    fn gate_rejects_space_reaching_into_denominator() {
        // Both X1 and X1X2 survive in (X1)/(X1X2^2) below (1,2); the cover
        // [X1, X1X2^2] is not available since X1X2^2 is in J, but the
        // cover of X1 by X1X2 with saturation 1 must still be rejected when
        // it would claim K[X2].
        let q = QuotientModule::new(ideal(2, &[&[1, 0]]), ideal(2, &[&[1, 2]])).unwrap();
        assert_eq!(q.series().support_len(), 2);
        let out = check_stanley_depth(&q, 1, &SearchConfig::default()).unwrap();
        let d = out.certificate.expect("X1·K[X1] ⊕ X1X2·K[X1] works");
        assert!(verify_stanley_decomposition(&q, &d));
        assert!(d.spaces.iter().all(|sp| sp.vars == [0].into_iter().collect()));
        assert!(check_stanley_depth(&q, 2, &SearchConfig::default()).unwrap().certificate.is_none());
    }

    #[test]
    fn single_term_modules_only() {
        let sum = ModuleExpr::free(2, 2);
        assert!(matches!(QuotientModule::from_module(&sum), Err(Error::InvalidModule(_))));
        let shifted = ModuleExpr::new(2).with_free(ev(&[1, 0])).unwrap();
        let q = QuotientModule::from_module(&shifted).unwrap();
        assert_eq!(q.numerator().generators(), &[ev(&[1, 0])]);
    }
}
