//! Benchmark instances shared by the criterion benches.

use hdepth::{ModuleExpr, MonomialIdeal};

/// The maximal ideal `(X_1, …, X_n)` as a module.
pub fn maximal_ideal(n: usize) -> ModuleExpr {
    ModuleExpr::ideal(MonomialIdeal::maximal(n))
}

/// `R^k ⊕ m` in `n` variables.
pub fn free_plus_maximal(n: usize, k: usize) -> ModuleExpr {
    ModuleExpr::free(n, k)
        .direct_sum(maximal_ideal(n))
        .expect("same number of variables")
}
