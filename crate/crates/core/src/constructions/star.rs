use crate::complex::{Construction, FreeComplex, Label, ModuleElement};
use crate::dg::{DGGammaAlgebra, GammaTable, MulTable};
use crate::error::{Error, Result};
use crate::monomial::{lcm_all, Monomial};
use crate::report::{Check, Violation};

use super::product::{expand, gamma_components, koszul_sign, product_sign_exponent, Shape};
use super::structure::{extract_structure_constants, StructureConstants};
use super::{check_factor_bounds, common_context, BuildOptions, SignMode};

fn lcm_of(ms: &[&Monomial], nvars: usize) -> Result<Monomial> {
    if ms.is_empty() {
        return Ok(Monomial::one(nvars));
    }
    lcm_all(ms.iter().copied())
}

/// `m_1 ... m_r / lcm(m_1, ..., m_r)`: the factor relating a tensor tuple to
/// the star tuple with the same components.
pub fn comparison_coefficient(ms: &[&Monomial], nvars: usize) -> Result<Monomial> {
    let prod = ms.iter().try_fold(Monomial::one(nvars), |acc, m| acc.mul(m))?;
    prod.quotient(&lcm_of(ms, nvars)?)
}

fn exact_quotient(num: &Monomial, den: &Monomial, what: &str) -> Result<Monomial> {
    num.quotient(den)
        .map_err(|_| Error::Construction(format!("{what}: lcm quotient is not a monomial")))
}

/// Generalized Taylor resolution `F_1 * ... * F_r` of `R/(I_1 + ... + I_r)`.
///
/// With one factor the factor itself is returned. `sign` only affects the
/// product table.
pub fn star_product(fs: &[DGGammaAlgebra], sign: SignMode, opts: &BuildOptions) -> Result<DGGammaAlgebra> {
    if fs.is_empty() {
        return Err(Error::EmptyInput("star product of no factors"));
    }
    if fs.len() == 1 {
        return Ok(fs[0].clone());
    }
    let ctx = common_context(fs)?;
    check_factor_bounds(fs, opts.max_divided_power)?;
    let nv = ctx.len();
    let shape = Shape::new(fs)?;
    let basis = shape.basis(|ms| lcm_of(ms, nv), " * ")?;

    let mut diff = Vec::with_capacity(shape.len());
    for id in 0..shape.len() {
        let t = shape.tuple(id);
        let hd = shape.hdegs(&t);
        let m_f = &basis[id].mdeg;
        let mut d = ModuleElement::zero();
        for i in 0..t.len() {
            let sign = koszul_sign(hd[..i].iter().sum());
            for (g, c, _) in fs[i].complex().differential(t[i])?.monomial_terms() {
                let mut face = t.clone();
                face[i] = g;
                let fid = shape.id(&face);
                let m = exact_quotient(m_f, &basis[fid].mdeg, "differential")?;
                d.add_assign(&ModuleElement::monomial_term(fid, &sign * c, m));
            }
        }
        diff.push(d);
    }

    let mut augmentation = Vec::new();
    for f in fs {
        augmentation.extend(f.complex().augmentation().iter().cloned());
    }
    let construction = Construction::Star {
        factors: fs
            .iter()
            .map(|f| f.complex().construction().cloned())
            .collect::<Option<Vec<_>>>()
            .unwrap_or_default(),
        sign_mode: sign,
    };
    let cx = FreeComplex::new(ctx, basis, diff, augmentation, Some(construction))?;

    let consts: Vec<StructureConstants> = fs
        .iter()
        .map(extract_structure_constants)
        .collect::<Result<_>>()?;
    let mut mul = MulTable::new(shape.unit_id());
    for a in 0..shape.len() {
        let ta = shape.tuple(a);
        let ha = shape.hdegs(&ta);
        let m_a = &cx.basis()[a].mdeg;
        for b in 0..shape.len() {
            let tb = shape.tuple(b);
            let hb = shape.hdegs(&tb);
            let comps: Vec<Vec<_>> = (0..fs.len())
                .map(|i| {
                    consts[i]
                        .get(ta[i], tb[i])
                        .iter()
                        .map(|(c, alpha)| (*c, alpha.clone(), Monomial::one(nv)))
                        .collect()
                })
                .collect();
            if comps.iter().any(Vec::is_empty) {
                continue;
            }
            let s = match sign {
                SignMode::Corrected => koszul_sign(product_sign_exponent(&ha, &hb)),
                SignMode::Unsigned => koszul_sign(0),
            };
            let joint = m_a.mul(&cx.basis()[b].mdeg)?;
            let mut out = ModuleElement::zero();
            expand(&comps, nv, &mut |tuple, alpha, _, _| {
                let target = shape.id(tuple);
                let m = exact_quotient(&joint, &cx.basis()[target].mdeg, "product")?;
                out.add_assign(&ModuleElement::monomial_term(target, &s * alpha, m));
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
            gamma.insert(id, k, gamma_formula(&shape, &t, k, slot)?);
        }
    }
    DGGammaAlgebra::new(cx, mul, gamma)
}

/// Divided power `(f_1 * ... * f_r)^(k)` of an all-even tuple evaluated with
/// the divided power taken in `slot` (which must have positive degree) and
/// ordinary powers in the other slots. The result is in star basis ids.
pub fn star_gamma_at_slot(fs: &[DGGammaAlgebra], tuple: &[usize], k: usize, slot: usize) -> Result<ModuleElement> {
    common_context(fs)?;
    let shape = Shape::new(fs)?;
    if tuple.len() != fs.len() || tuple.iter().zip(fs).any(|(&c, f)| c >= f.complex().len()) {
        return Err(Error::Input(format!("{tuple:?} is not a basis tuple")));
    }
    let hd = shape.hdegs(tuple);
    if hd.iter().any(|h| h % 2 == 1) {
        return Err(Error::DividedPower("tuple has an odd component".into()));
    }
    if slot >= hd.len() || hd[slot] == 0 {
        return Err(Error::DividedPower(format!("slot {slot} has no positive-degree component")));
    }
    gamma_formula(&shape, tuple, k, slot)
}

/// Each term `prod c_l n_l a_l` of the componentwise expansion lands on the
/// star tuple `a` with coefficient `prod c_l n_l * C(a) / C(f)^k`, where
/// `C` is [`comparison_coefficient`]. For basis-element components this is
/// the plain tuple `a`.
fn gamma_formula(shape: &Shape, t: &[usize], k: usize, slot: usize) -> Result<ModuleElement> {
    let nv = shape.fs[0].complex().nvars();
    let comps = gamma_components(shape.fs, t, k, slot)?;
    let c_f = comparison_coefficient(&shape.mdegs(t), nv)?.pow(k as u32)?;
    let mut out = ModuleElement::zero();
    expand(&comps, nv, &mut |tuple, c, n, _| {
        let c_a = comparison_coefficient(&shape.mdegs(tuple), nv)?;
        let m = exact_quotient(&n.mul(&c_a)?, &c_f, "divided power")?;
        out.add_assign(&ModuleElement::monomial_term(shape.id(tuple), c.clone(), m));
        Ok(())
    })?;
    Ok(out)
}

/// The star divided-power formula gives the same value whichever positive
/// slot carries the divided power.
pub fn check_slot_independence(fs: &[DGGammaAlgebra], star: &DGGammaAlgebra, kmax: usize) -> Result<Check> {
    let cx = star.complex();
    let mut violations = Vec::new();
    let mut tuples = 0;
    for b in cx.basis() {
        let Label::Tuple(t) = &b.label else {
            continue;
        };
        let hd: Vec<usize> = t.iter().zip(fs).map(|(&c, f)| f.complex().basis()[c].hdeg).collect();
        if hd.iter().any(|h| h % 2 == 1) {
            continue;
        }
        let slots: Vec<usize> = (0..hd.len()).filter(|&i| hd[i] > 0).collect();
        if slots.len() < 2 {
            continue;
        }
        tuples += 1;
        for k in 0..=kmax {
            let first = star_gamma_at_slot(fs, t, k, slots[0])?;
            for &j in &slots[1..] {
                let other = star_gamma_at_slot(fs, t, k, j)?;
                if other != first {
                    violations.push(Violation::new(
                        format!("{}^({k}) at slots {} and {}", b.name, slots[0] + 1, j + 1),
                        cx.format_element(&first),
                        cx.format_element(&other),
                    ));
                }
            }
        }
    }
    Ok(Check::new("slot_independence", violations)
        .with_notes(vec![format!("{tuples} tuples with two or more positive even slots")]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{koszul_principal, taylor};
    use crate::monomial::VarContext;

    #[test]
    fn koszul_star_examples() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let o = BuildOptions::default();
        let p = |s: &str| c.parse(s).unwrap();
        let k1 = koszul_principal(&c, &p("x^2"), &o).unwrap();
        let k2 = koszul_principal(&c, &p("y^3"), &o).unwrap();
        let s = star_product(&[k1, k2], SignMode::Corrected, &o).unwrap();
        let cx = s.complex();
        assert_eq!(cx.basis()[3].mdeg, p("x^2*y^3"));
        assert_eq!(
            cx.format_element(cx.differential(3).unwrap()),
            "x^2*(1 * f) - y^3*(f * 1)"
        );

        let k1 = koszul_principal(&c, &p("x*y"), &o).unwrap();
        let k2 = koszul_principal(&c, &p("y*z"), &o).unwrap();
        let s = star_product(&[k1.clone(), k2.clone()], SignMode::Corrected, &o).unwrap();
        let cx = s.complex();
        assert_eq!(cx.format_element(&s.basis_product(2, 1)), "y*(f * f)");
        assert_eq!(cx.format_element(&s.basis_product(1, 2)), "-y*(f * f)");
        let u = star_product(&[k1.clone(), k2], SignMode::Unsigned, &o).unwrap();
        assert_eq!(u.complex().format_element(&u.basis_product(1, 2)), "y*(f * f)");
        for id in 0..4 {
            assert_eq!(u.complex().differential(id), s.complex().differential(id));
        }

        let single = star_product(std::slice::from_ref(&k1), SignMode::Corrected, &o).unwrap();
        assert_eq!(single, k1);
    }

    #[test]
    fn rank_convolution() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let o = BuildOptions::default();
        let p = |s: &str| c.parse(s).unwrap();
        let t1 = taylor(&c, &[p("x^2"), p("x*y")], &o).unwrap();
        let t2 = taylor(&c, &[p("y^3")], &o).unwrap();
        let s = star_product(&[t1, t2], SignMode::Corrected, &o).unwrap();
        assert_eq!(s.complex().ranks(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn comparison_coefficient_is_gcd_for_two() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let p = |s: &str| c.parse(s).unwrap();
        let (a, b) = (p("x^2*y"), p("x*y^3*z"));
        assert_eq!(comparison_coefficient(&[&a, &b], 3).unwrap(), a.gcd(&b).unwrap());
        assert_eq!(comparison_coefficient(&[], 3).unwrap(), c.one());
        let three = comparison_coefficient(&[&p("x"), &p("x"), &p("x")], 3).unwrap();
        assert_eq!(three, p("x^2"));
    }
}
