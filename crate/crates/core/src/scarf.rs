//! Scarf subcomplexes of Taylor resolutions and squarefree decompositions.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed};

use crate::complex::{BasisElement, Construction, FreeComplex, ModuleElement};
use crate::dg::DGGammaAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::monomial::Monomial;
use crate::report::{Check, Violation};

/// The subcomplex of a Taylor resolution spanned by the unit and the basis
/// elements whose multidegree no other basis element shares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScarfComplex {
    parent: DGGammaAlgebra,
    basis_ids: Vec<usize>,
    induced: FreeComplex,
}

impl ScarfComplex {
    pub fn parent(&self) -> &DGGammaAlgebra {
        &self.parent
    }

    /// Parent ids of the Scarf basis, increasing.
    pub fn basis_ids(&self) -> &[usize] {
        &self.basis_ids
    }

    pub fn induced(&self) -> &FreeComplex {
        &self.induced
    }
}

pub fn scarf_subcomplex(t: &DGGammaAlgebra) -> Result<ScarfComplex> {
    let pc = t.complex();
    let Some(parent_construction @ Construction::Taylor { .. }) = pc.construction() else {
        return Err(Error::Construction("Scarf complexes are taken inside Taylor resolutions".into()));
    };
    let mut counts: HashMap<&Monomial, usize> = HashMap::new();
    for b in pc.basis() {
        *counts.entry(&b.mdeg).or_default() += 1;
    }
    let unit = pc.unit_id();
    let basis_ids: Vec<usize> = pc
        .basis()
        .iter()
        .filter(|b| b.id == unit || counts[&b.mdeg] == 1)
        .map(|b| b.id)
        .collect();
    let new_id: BTreeMap<usize, usize> = basis_ids.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut basis = Vec::with_capacity(basis_ids.len());
    let mut diff = Vec::with_capacity(basis_ids.len());
    for (i, &p) in basis_ids.iter().enumerate() {
        let b = &pc.basis()[p];
        basis.push(BasisElement { id: i, ..b.clone() });
        let d = pc.differential(p)?.map_ids(|q| {
            new_id.get(&q).copied().ok_or_else(|| {
                Error::ScarfClosure(format!(
                    "d({}) involves {}, which is not in the Scarf complex",
                    b.name,
                    pc.basis()[q].name
                ))
            })
        })?;
        diff.push(d);
    }
    let induced = FreeComplex::new(
        pc.ctx().clone(),
        basis,
        diff,
        pc.augmentation().to_vec(),
        Some(Construction::Scarf {
            scarf_of: Box::new(parent_construction.clone()),
        }),
    )?;
    Ok(ScarfComplex {
        parent: t.clone(),
        basis_ids,
        induced,
    })
}

/// Outcome of multiplying the generators of one Scarf face in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScarfProduct {
    /// Zero-based generator indices.
    pub sigma: Vec<usize>,
    /// Parent id of `e_σ`.
    pub id: usize,
    pub product: ModuleElement,
    /// `Some((±1, d))` when the product is `±d e_σ` for a monomial `d`.
    pub factorization: Option<(i8, Monomial)>,
}

/// `prod_{i in σ} e_i` for every Scarf basis element with `|σ| >= 2`.
pub fn scarf_products(s: &ScarfComplex) -> Result<Vec<ScarfProduct>> {
    let t = &s.parent;
    let pc = t.complex();
    let singles: HashMap<usize, usize> = pc
        .basis()
        .iter()
        .filter_map(|b| match &b.label {
            crate::complex::Label::Subset(v) if v.len() == 1 => Some((v[0], b.id)),
            _ => None,
        })
        .collect();
    let mut out = Vec::new();
    for &id in &s.basis_ids {
        let crate::complex::Label::Subset(sigma) = &pc.basis()[id].label else {
            continue;
        };
        if sigma.len() < 2 {
            continue;
        }
        let mut acc = t.one();
        for i in sigma {
            acc = t.multiply(&acc, &t.basis_element(singles[i])?)?;
        }
        let factorization = match acc.monomial_terms().as_slice() {
            [(to, c, d)] if *to == id && c.abs() == Rational::one() => {
                Some((if c.is_positive() { 1 } else { -1 }, d.clone()))
            }
            _ => None,
        };
        out.push(ScarfProduct {
            sigma: sigma.clone(),
            id,
            product: acc,
            factorization,
        });
    }
    Ok(out)
}

/// Checks that each Scarf face product is `±d_σ e_σ` and that even Scarf
/// elements have vanishing divided powers `2 <= m <= K`.
pub fn check_scarf_gamma(s: &ScarfComplex) -> Result<Check> {
    let t = &s.parent;
    let pc = t.complex();
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    for p in scarf_products(s)? {
        let e = &pc.basis()[p.id];
        let names: Vec<String> = p.sigma.iter().map(|i| format!("e{{{}}}", i + 1)).collect();
        let lhs = names.join("*");
        match &p.factorization {
            Some((sign, d)) => notes.push(format!(
                "{lhs} = {}{}*{} (d = {})",
                if *sign > 0 { "+" } else { "-" },
                d.format(pc.ctx()),
                e.name,
                d.format(pc.ctx())
            )),
            None => violations.push(Violation::new(
                lhs,
                pc.format_element(&p.product),
                format!("±d*{}", e.name),
            )),
        }
    }
    let zero = ModuleElement::zero();
    for &id in &s.basis_ids {
        let e = &pc.basis()[id];
        if e.hdeg == 0 || e.hdeg % 2 == 1 {
            continue;
        }
        for m in 2..=t.bound() {
            let g = t.gamma_basis(id, m)?;
            if g != zero {
                violations.push(Violation::new(
                    format!("{}^({m})", e.name),
                    pc.format_element(&g),
                    "0",
                ));
            }
        }
    }
    Ok(Check::new("scarf_gamma", violations).with_notes(notes))
}

/// `m = u * sqf` with `sqf = gcd(m, x_1 ... x_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqfDecomposition {
    pub u: Monomial,
    pub sqf: Monomial,
}

pub fn sqf_decompose(m: &Monomial) -> SqfDecomposition {
    let sqf = Monomial::from_exponents(m.exponents().iter().map(|&e| e.min(1)).collect());
    let u = Monomial::from_exponents(m.exponents().iter().map(|&e| e.saturating_sub(1)).collect());
    SqfDecomposition { u, sqf }
}

/// Splits a multigraded-homogeneous element `x` of multidegree `M` as
/// `u * y` where `u` is the non-squarefree part of `M`.
pub fn sqf_decompose_element(cx: &FreeComplex, x: &ModuleElement) -> Result<(Monomial, ModuleElement)> {
    let Some(m) = cx.mdeg_of(x)? else {
        return Ok((cx.ctx().one(), ModuleElement::zero()));
    };
    let d = sqf_decompose(&m);
    let y = x.div_monomial(&d.u)?;
    Ok((d.u, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{verify_resolution, StrandMode};
    use crate::constructions::{koszul_principal, taylor, BuildOptions};
    use crate::linalg::rat;
    use crate::monomial::VarContext;

    #[test]
    fn scarf_examples() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let o = BuildOptions::default();
        let p = |s: &str| c.parse(s).unwrap();
        let t = taylor(&c, &[p("x^2"), p("x*y"), p("y^3")], &o).unwrap();
        let s = scarf_subcomplex(&t).unwrap();
        assert_eq!(s.induced().ranks(), vec![1, 3, 2]);
        let names: Vec<&str> = s.induced().basis().iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, ["1", "e{1}", "e{2}", "e{3}", "e{1,2}", "e{2,3}"]);
        assert!(s.induced().check_d_squared().unwrap().passed());
        assert!(verify_resolution(s.induced(), &StrandMode::Lattice).unwrap().passed());
        let prods = scarf_products(&s).unwrap();
        let ds: Vec<String> = prods
            .iter()
            .map(|p| p.factorization.as_ref().unwrap().1.format(&c))
            .collect();
        assert_eq!(ds, ["x", "y"]);
        assert!(check_scarf_gamma(&s).unwrap().passed());

        let t = taylor(&c, &[p("x"), p("y")], &o).unwrap();
        assert_eq!(scarf_subcomplex(&t).unwrap().induced().ranks(), vec![1, 2, 1]);
        let t = taylor(&c, &[p("x*y"), p("x*y")], &o).unwrap();
        assert_eq!(scarf_subcomplex(&t).unwrap().induced().ranks(), vec![1]);

        let k = koszul_principal(&c, &p("x"), &o).unwrap();
        assert!(matches!(scarf_subcomplex(&k), Err(Error::Construction(_))));
    }

    #[test]
    fn sqf_examples() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let p = |s: &str| c.parse(s).unwrap();
        assert_eq!(sqf_decompose(&p("x^2*y")), SqfDecomposition { u: p("x"), sqf: p("x*y") });
        assert_eq!(sqf_decompose(&p("x*z")), SqfDecomposition { u: c.one(), sqf: p("x*z") });
        assert_eq!(sqf_decompose(&c.one()), SqfDecomposition { u: c.one(), sqf: c.one() });
    }

    #[test]
    fn sqf_of_elements() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let p = |s: &str| c.parse(s).unwrap();
        let t = taylor(&c, &[p("x*y"), p("y*z")], &BuildOptions::default()).unwrap();
        let cx = t.complex();
        let x = ModuleElement::monomial_term(1, rat(2), p("x*y*z"))
            .add(&ModuleElement::monomial_term(2, rat(-1), p("x^2*y")));
        let (u, y) = sqf_decompose_element(cx, &x).unwrap();
        assert_eq!(u, p("x*y"));
        assert_eq!(cx.mdeg_of(&y).unwrap().unwrap(), p("x*y*z"));
        assert_eq!(y.mul_monomial(&u).unwrap(), x);
        let mixed = ModuleElement::basis(1, 3).add(&ModuleElement::basis(2, 3));
        assert_eq!(sqf_decompose_element(cx, &mixed), Err(Error::MixedMultidegree));
    }
}
