//! Free resolutions of monomial ideals with DG algebra and divided-power
//! structures: Koszul, Taylor, tensor and generalized Taylor (star)
//! constructions, comparison maps, Scarf subcomplexes, and checkers for
//! every axiom involved.

pub mod chainmaps;
pub mod cli;
pub mod complex;
pub mod constructions;
pub mod dg;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod report;
pub mod scarf;

pub use complex::{FreeComplex, ModuleElement, RingElement};
pub use dg::DGGammaAlgebra;
pub use error::{Error, Result};
pub use monomial::{Monomial, VarContext};
