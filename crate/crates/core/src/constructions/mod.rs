//! Builders for the Koszul, Taylor, tensor and generalized Taylor (star)
//! algebras.

mod koszul;
mod product;
mod star;
mod structure;
mod taylor;
mod tensor;

use serde::{Deserialize, Serialize};

pub use koszul::koszul_principal;
pub use star::{check_slot_independence, comparison_coefficient, star_gamma_at_slot, star_product};
pub use structure::{extract_structure_constants, StructureConstants};
pub use taylor::{taylor, MAX_TAYLOR_GENERATORS};
pub use tensor::tensor_product;

use crate::complex::Construction;
use crate::dg::{DGGammaAlgebra, DEFAULT_MAX_DIVIDED_POWER};
use crate::error::{Error, Result};
use crate::monomial::VarContext;

/// Sign convention for the star product. `Unsigned` drops the Koszul sign
/// from the product table and exists to exhibit the failure it causes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignMode {
    #[default]
    Corrected,
    Unsigned,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOptions {
    /// Bound `K` on stored divided powers.
    pub max_divided_power: usize,
    /// Accept the generator `1` in Taylor and Koszul builders.
    pub allow_unit_generators: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_divided_power: DEFAULT_MAX_DIVIDED_POWER,
            allow_unit_generators: false,
        }
    }
}

/// Largest basis a tensor or star product may have.
pub const MAX_PRODUCT_BASIS: usize = 4096;

/// Mixed-radix indexing of basis tuples; the first factor varies slowest.
#[derive(Debug, Clone)]
pub(crate) struct TupleIndex {
    radices: Vec<usize>,
    len: usize,
}

impl TupleIndex {
    pub(crate) fn new(radices: Vec<usize>) -> Result<Self> {
        let len = radices
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|&n| n <= MAX_PRODUCT_BASIS)
            .ok_or_else(|| {
                Error::Construction(format!(
                    "product basis would exceed {MAX_PRODUCT_BASIS} elements"
                ))
            })?;
        Ok(TupleIndex { radices, len })
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn id(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&t, &n)| acc * n + t)
    }

    pub(crate) fn tuple(&self, mut id: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &n) in self.radices.iter().enumerate().rev() {
            out[slot] = id % n;
            id /= n;
        }
        out
    }
}

/// Checks that every factor lives over the first factor's context.
pub(crate) fn common_context(fs: &[DGGammaAlgebra]) -> Result<VarContext> {
    let first = fs.first().ok_or(Error::EmptyInput("no factors"))?;
    let ctx = first.complex().ctx().clone();
    for f in &fs[1..] {
        if f.complex().ctx() != &ctx {
            return Err(Error::ContextMismatch {
                expected: ctx.len(),
                found: f.complex().nvars(),
            });
        }
    }
    Ok(ctx)
}

pub(crate) fn check_factor_bounds(fs: &[DGGammaAlgebra], k: usize) -> Result<()> {
    for (i, f) in fs.iter().enumerate() {
        if f.bound() < k {
            return Err(Error::Construction(format!(
                "factor {} stores divided powers up to {}, product needs {k}",
                i + 1,
                f.bound()
            )));
        }
    }
    Ok(())
}

/// Rebuilds the algebra a construction tag describes.
pub fn build_construction(ctx: &VarContext, c: &Construction, opts: &BuildOptions) -> Result<DGGammaAlgebra> {
    match c {
        Construction::Koszul { generator } => koszul_principal(ctx, generator, opts),
        Construction::Taylor { generators } => taylor(ctx, generators, opts),
        Construction::Tensor { factors } => tensor_product(&build_factors(ctx, factors, opts)?, opts),
        Construction::Star { factors, sign_mode } => {
            star_product(&build_factors(ctx, factors, opts)?, *sign_mode, opts)
        }
        Construction::Scarf { .. } => Err(Error::Construction(
            "a Scarf complex carries no product table".into(),
        )),
    }
}

pub fn build_factors(ctx: &VarContext, factors: &[Construction], opts: &BuildOptions) -> Result<Vec<DGGammaAlgebra>> {
    factors.iter().map(|f| build_construction(ctx, f, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_index_round_trip() {
        let ix = TupleIndex::new(vec![2, 3, 4]).unwrap();
        assert_eq!(ix.len(), 24);
        for id in 0..24 {
            assert_eq!(ix.id(&ix.tuple(id)), id);
        }
        assert_eq!(ix.tuple(1), vec![0, 0, 1]);
        assert_eq!(ix.tuple(4), vec![0, 1, 0]);
        assert!(TupleIndex::new(vec![100, 100]).is_err());
    }

    #[test]
    fn rebuild_from_tags() {
        let c = VarContext::new(&["x", "y", "z", "w"]).unwrap();
        let o = BuildOptions::default();
        let p = |s: &str| c.parse(s).unwrap();
        let f1 = taylor(&c, &[p("x*y"), p("y*z")], &o).unwrap();
        let f2 = koszul_principal(&c, &p("z*w"), &o).unwrap();
        let s = star_product(&[f1.clone(), f2.clone()], SignMode::Unsigned, &o).unwrap();
        let tag = s.complex().construction().unwrap();
        assert_eq!(build_construction(&c, tag, &o).unwrap(), s);
        let t = tensor_product(&[f1, f2], &o).unwrap();
        assert_eq!(build_construction(&c, t.complex().construction().unwrap(), &o).unwrap(), t);
    }
}
