use crate::complex::{Construction, FreeComplex, ModuleElement, RingElement};
use crate::dg::{DGGammaAlgebra, GammaTable, MulTable};
use crate::error::{Error, Result};

use super::product::{expand, gamma_components, koszul_sign, product_sign_exponent, Shape};
use super::{check_factor_bounds, common_context, BuildOptions};

/// Tensor product of DG Γ-algebras over `R` with the Koszul sign rule.
///
/// Divided powers of an all-even tuple with first positive slot `j` are
/// `f_1^k ⊗ ... ⊗ f_j^(k) ⊗ ... ⊗ f_r^k`; tuples with an odd slot get none.
pub fn tensor_product(fs: &[DGGammaAlgebra], opts: &BuildOptions) -> Result<DGGammaAlgebra> {
    if fs.len() < 2 {
        return Err(Error::Construction("tensor product needs at least two factors".into()));
    }
    let ctx = common_context(fs)?;
    check_factor_bounds(fs, opts.max_divided_power)?;
    let nv = ctx.len();
    let shape = Shape::new(fs)?;
    let basis = shape.basis(
        |ms| ms.iter().try_fold(ctx.one(), |acc, m| acc.mul(m)),
        " ⊗ ",
    )?;

    let mut diff = Vec::with_capacity(shape.len());
    for id in 0..shape.len() {
        let t = shape.tuple(id);
        let hd = shape.hdegs(&t);
        let mut d = ModuleElement::zero();
        for i in 0..t.len() {
            let sign = koszul_sign(hd[..i].iter().sum());
            for (g, c, m) in fs[i].complex().differential(t[i])?.monomial_terms() {
                let mut face = t.clone();
                face[i] = g;
                d.add_assign(&ModuleElement::monomial_term(shape.id(&face), &sign * c, m));
            }
        }
        diff.push(d);
    }

    let mut augmentation = Vec::new();
    for f in fs {
        augmentation.extend(f.complex().augmentation().iter().cloned());
    }
    let construction = Construction::Tensor {
        factors: fs
            .iter()
            .map(|f| f.complex().construction().cloned())
            .collect::<Option<Vec<_>>>()
            .unwrap_or_default(),
    };
    let cx = FreeComplex::new(ctx, basis, diff, augmentation, Some(construction))?;

    let mut mul = MulTable::new(shape.unit_id());
    for a in 0..shape.len() {
        let ta = shape.tuple(a);
        let ha = shape.hdegs(&ta);
        for b in 0..shape.len() {
            let tb = shape.tuple(b);
            let hb = shape.hdegs(&tb);
            let comps: Vec<_> = (0..fs.len())
                .map(|i| fs[i].basis_product(ta[i], tb[i]).monomial_terms())
                .collect();
            if comps.iter().any(Vec::is_empty) {
                continue;
            }
            let sign = koszul_sign(product_sign_exponent(&ha, &hb));
            let mut out = ModuleElement::zero();
            expand(&comps, nv, &mut |tuple, c, m, _| {
                out.add_assign(&ModuleElement::monomial_term(shape.id(tuple), &sign * c, m.clone()));
                Ok(())
            })?;
            mul.insert(a, b, out);
        }
    }

    let mut gamma = GammaTable::new(opts.max_divided_power);
    for id in 0..shape.len() {
        let t = shape.tuple(id);
        let hd = shape.hdegs(&t);
        if hd.iter().any(|h| h % 2 == 1) {
            continue;
        }
        let Some(slot) = hd.iter().position(|&h| h > 0) else {
            continue;
        };
        for k in 2..=opts.max_divided_power {
            let comps = gamma_components(fs, &t, k, slot)?;
            let mut out = ModuleElement::zero();
            expand(&comps, nv, &mut |tuple, c, m, _| {
                out.add_scaled(shape.id(tuple), &RingElement::term(c.clone(), m.clone()));
                Ok(())
            })?;
            gamma.insert(id, k, out);
        }
    }
    DGGammaAlgebra::new(cx, mul, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{koszul_principal, taylor};
    use crate::dg::{check_all_dg, CheckBudget};
    use crate::monomial::VarContext;

    #[test]
    fn koszul_tensor_differential() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let o = BuildOptions::default();
        let k1 = koszul_principal(&c, &c.parse("x^2").unwrap(), &o).unwrap();
        let k2 = koszul_principal(&c, &c.parse("y^3").unwrap(), &o).unwrap();
        let t = tensor_product(&[k1, k2], &o).unwrap();
        let cx = t.complex();
        assert_eq!(cx.ranks(), vec![1, 2, 1]);
        assert_eq!(cx.basis()[3].name, "(f ⊗ f)");
        assert_eq!(
            cx.format_element(cx.differential(3).unwrap()),
            "x^2*(1 ⊗ f) - y^3*(f ⊗ 1)"
        );
        assert!(cx.check_d_squared().unwrap().passed());
        // (f ⊗ 1)(1 ⊗ f) = f ⊗ f, (1 ⊗ f)(f ⊗ 1) = -(f ⊗ f).
        assert_eq!(cx.format_element(&t.basis_product(2, 1)), "(f ⊗ f)");
        assert_eq!(cx.format_element(&t.basis_product(1, 2)), "-(f ⊗ f)");
        for check in check_all_dg(&t, &CheckBudget::default()).unwrap() {
            assert!(check.passed(), "{check}");
        }
    }

    #[test]
    fn taylor_tensor_gamma_vanishes() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let o = BuildOptions::default();
        let p = |s: &str| c.parse(s).unwrap();
        let t1 = taylor(&c, &[p("x*y"), p("y*z")], &o).unwrap();
        let t2 = taylor(&c, &[p("z")], &o).unwrap();
        let t = tensor_product(&[t1, t2], &o).unwrap();
        let e12_1 = t
            .complex()
            .basis()
            .iter()
            .find(|b| b.name == "(e{1,2} ⊗ 1)")
            .unwrap()
            .id;
        assert!(t.gamma_basis(e12_1, 2).unwrap().is_zero());
        assert!(tensor_product(std::slice::from_ref(&t), &o).is_err());
    }
}
