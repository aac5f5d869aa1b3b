//! Products and divided powers on free complexes, with axiom checkers.

mod algebra;
mod checks;
pub mod random;

pub use algebra::{DGGammaAlgebra, GammaTable, MulTable, DEFAULT_MAX_DIVIDED_POWER};
pub use checks::{
    axiom5_coefficient, check_all_dg, check_all_gamma, check_dg_axiom, check_gamma_axiom, CheckBudget, DgAxiom,
};
