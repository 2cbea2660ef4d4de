//! Exact multigraded Hilbert depth of ℕⁿ-graded modules, and Stanley depth
//! of quotients of monomial ideals.
//!
//! A module is described by a [`ModuleExpr`] (shifted free modules and
//! shifted quotients `I/J` of monomial ideals). Its Hilbert series is
//! truncated at a degree bound `g` ([`determine_bound`], [`series_of`]), and
//! the depth is the largest `s` for which the truncated series splits into
//! interval polynomials `Q[a,b]` whose high endpoints `b` all meet `g` in at
//! least `s` coordinates. [`hdepth`] finds that `s` together with a
//! certificate [`HilbertPartition`]; [`sdepth`] does the same for Stanley
//! decompositions of a [`QuotientModule`].
//!
//! ```
//! use hdepth::{hdepth, ModuleExpr, MonomialIdeal, SearchConfig};
//!
//! let m = ModuleExpr::ideal(MonomialIdeal::maximal(5));
//! let report = hdepth(&m, &SearchConfig::default()).unwrap();
//! assert_eq!(report.value, 3);
//! ```

pub mod error;
pub mod poset;
pub mod search;
pub mod series;
pub mod stanley;

pub use error::{Error, Limit, Result};
pub use poset::{
    g_set, intervals_intersect, join_meet, leq, rho, split_interval, z_set, ExponentVector, Interval, VariableSet,
    MAX_EXPONENT, MAX_VARIABLES,
};
pub use search::{
    brute_force_hdepth, check_hilbert_depth, find_elements_to_cover, find_possible_covers, hdepth,
    hdepth_of_series, render_decomposition, verify_decomposition, BruteForceCap, CheckOutcome, CoverOrder,
    DepthReport, Driver, ElementOrder, HilbertDecomposition, SearchConfig, SearchStats, Space,
};
pub use series::{
    determine_bound, interval_poly, series_of, subtract_checked, verify_partition, HilbertPartition, ModuleExpr,
    MonomialIdeal, NegativityError, Summand, TruncatedSeries,
};
pub use stanley::{
    annihilator_intersects, check_stanley_depth, sdepth, verify_stanley_decomposition, QuotientModule,
    StanleyDecomposition,
};
