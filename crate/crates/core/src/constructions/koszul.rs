use crate::complex::{BasisElement, Construction, FreeComplex, Label, ModuleElement};
use crate::dg::{DGGammaAlgebra, GammaTable, MulTable};
use crate::error::{Error, Result};
use crate::linalg::rat;
use crate::monomial::{Monomial, VarContext};

use super::BuildOptions;

/// Koszul resolution `0 -> R f -> R -> R/(u) -> 0` of a principal ideal.
pub fn koszul_principal(ctx: &VarContext, u: &Monomial, opts: &BuildOptions) -> Result<DGGammaAlgebra> {
    ctx.check(u)?;
    if u.is_one() && !opts.allow_unit_generators {
        return Err(Error::Construction(
            "Koszul generator 1 gives the zero quotient ring".into(),
        ));
    }
    let nv = ctx.len();
    let basis = vec![
        BasisElement {
            id: 0,
            hdeg: 0,
            mdeg: ctx.one(),
            label: Label::Unit,
            name: "1".into(),
        },
        BasisElement {
            id: 1,
            hdeg: 1,
            mdeg: u.clone(),
            label: Label::Slot(0),
            name: "f".into(),
        },
    ];
    let diff = vec![ModuleElement::zero(), ModuleElement::monomial_term(0, rat(1), u.clone())];
    let cx = FreeComplex::new(
        ctx.clone(),
        basis,
        diff,
        vec![u.clone()],
        Some(Construction::Koszul { generator: u.clone() }),
    )?;
    let mut mul = MulTable::new(0);
    mul.insert(0, 0, ModuleElement::basis(0, nv));
    mul.insert(0, 1, ModuleElement::basis(1, nv));
    mul.insert(1, 0, ModuleElement::basis(1, nv));
    DGGammaAlgebra::new(cx, mul, GammaTable::new(opts.max_divided_power))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_examples() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let o = BuildOptions::default();
        let k = koszul_principal(&c, &c.parse("x^2").unwrap(), &o).unwrap();
        assert_eq!(k.complex().ranks(), vec![1, 1]);
        assert_eq!(k.complex().format_element(k.complex().differential(1).unwrap()), "x^2*1");
        let f = k.basis_element(1).unwrap();
        assert!(k.multiply(&f, &f).unwrap().is_zero());
        assert!(k.gamma_table().entries().next().is_none());
        assert!(k.complex().check_d_squared().unwrap().passed());
        assert!(koszul_principal(&c, &c.one(), &o).is_err());
        assert!(koszul_principal(&c, &Monomial::one(3), &o).is_err());
    }
}
