use std::collections::BTreeMap;

use crate::complex::{check_ids, FreeComplex, ModuleElement};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::monomial::Monomial;

/// Default bound `K` on stored divided powers.
pub const DEFAULT_MAX_DIVIDED_POWER: usize = 3;

/// Products of basis elements. Missing pairs multiply to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulTable {
    entries: BTreeMap<(usize, usize), ModuleElement>,
    unit: usize,
}

impl MulTable {
    pub fn new(unit: usize) -> Self {
        MulTable {
            entries: BTreeMap::new(),
            unit,
        }
    }

    pub fn insert(&mut self, left: usize, right: usize, product: ModuleElement) {
        if product.is_zero() {
            self.entries.remove(&(left, right));
        } else {
            self.entries.insert((left, right), product);
        }
    }

    pub fn get(&self, left: usize, right: usize) -> Option<&ModuleElement> {
        self.entries.get(&(left, right))
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &ModuleElement)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }
}

/// Divided powers `e^(k)` of even, positive-degree basis elements for
/// `2 <= k <= bound`. Missing entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTable {
    entries: BTreeMap<(usize, usize), ModuleElement>,
    bound: usize,
}

impl GammaTable {
    pub fn new(bound: usize) -> Self {
        GammaTable {
            entries: BTreeMap::new(),
            bound,
        }
    }

    pub fn insert(&mut self, id: usize, k: usize, value: ModuleElement) {
        if value.is_zero() {
            self.entries.remove(&(id, k));
        } else {
            self.entries.insert((id, k), value);
        }
    }

    pub fn get(&self, id: usize, k: usize) -> Option<&ModuleElement> {
        self.entries.get(&(id, k))
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &ModuleElement)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }
}

/// A free complex with a multiplication table and divided powers on its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGGammaAlgebra {
    cx: FreeComplex,
    mul: MulTable,
    gamma: GammaTable,
}

impl DGGammaAlgebra {
    pub fn new(cx: FreeComplex, mul: MulTable, gamma: GammaTable) -> Result<Self> {
        let n = cx.len();
        if mul.unit != cx.unit_id() {
            return Err(Error::InvalidAlgebra(format!(
                "unit id {} is not the degree-0 generator",
                mul.unit
            )));
        }
        for (&(a, b), prod) in &mul.entries {
            if a >= n || b >= n {
                return Err(Error::UnknownBasis(a.max(b)));
            }
            check_ids(prod, n)?;
            let (ea, eb) = (&cx.basis()[a], &cx.basis()[b]);
            let want = ea.mdeg.mul(&eb.mdeg)?;
            for (t, c) in prod.terms() {
                let et = &cx.basis()[t];
                if et.hdeg != ea.hdeg + eb.hdeg {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}*{} has a term on {} of the wrong homological degree",
                        ea.name, eb.name, et.name
                    )));
                }
                for (m, _) in c.terms() {
                    if m.mul(&et.mdeg)? != want {
                        return Err(Error::Multigrading(format!(
                            "{}*{} has a term on {} of the wrong multidegree",
                            ea.name, eb.name, et.name
                        )));
                    }
                }
            }
        }
        let nv = cx.nvars();
        for id in 0..n {
            let e = ModuleElement::basis(id, nv);
            let left = mul.get(mul.unit, id).cloned().unwrap_or_default();
            let right = mul.get(id, mul.unit).cloned().unwrap_or_default();
            if left != e || right != e {
                return Err(Error::InvalidAlgebra(format!(
                    "unit law fails on {}",
                    cx.basis()[id].name
                )));
            }
        }
        for (&(id, k), value) in &gamma.entries {
            let e = cx.element(id)?;
            if e.hdeg == 0 || e.hdeg % 2 == 1 {
                return Err(Error::InvalidAlgebra(format!(
                    "divided power stored for {} of homological degree {}",
                    e.name, e.hdeg
                )));
            }
            if k < 2 || k > gamma.bound {
                return Err(Error::InvalidAlgebra(format!(
                    "divided power index {k} outside 2..={}",
                    gamma.bound
                )));
            }
            check_ids(value, n)?;
            let want = e.mdeg.pow(k as u32)?;
            for (t, c) in value.terms() {
                let et = &cx.basis()[t];
                if et.hdeg != k * e.hdeg {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}^({k}) has a term of the wrong homological degree",
                        e.name
                    )));
                }
                for (m, _) in c.terms() {
                    if m.mul(&et.mdeg)? != want {
                        return Err(Error::Multigrading(format!(
                            "{}^({k}) has a term of the wrong multidegree",
                            e.name
                        )));
                    }
                }
            }
        }
        Ok(DGGammaAlgebra { cx, mul, gamma })
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.cx
    }

    pub fn mul_table(&self) -> &MulTable {
        &self.mul
    }

    pub fn gamma_table(&self) -> &GammaTable {
        &self.gamma
    }

    pub fn unit_id(&self) -> usize {
        self.mul.unit
    }

    pub fn bound(&self) -> usize {
        self.gamma.bound
    }

    pub fn one(&self) -> ModuleElement {
        ModuleElement::basis(self.mul.unit, self.cx.nvars())
    }

    pub fn basis_element(&self, id: usize) -> Result<ModuleElement> {
        self.cx.basis_element(id)
    }

    /// The stored product of two basis elements (zero when absent).
    pub fn basis_product(&self, a: usize, b: usize) -> ModuleElement {
        self.mul.get(a, b).cloned().unwrap_or_default()
    }

    /// R-bilinear extension of the multiplication table. Signs are whatever
    /// the table entries carry.
    pub fn multiply(&self, x: &ModuleElement, y: &ModuleElement) -> Result<ModuleElement> {
        let n = self.cx.len();
        check_ids(x, n)?;
        check_ids(y, n)?;
        let mut out = ModuleElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                if let Some(p) = self.mul.get(i, j) {
                    out.add_assign(&p.scale(&a.mul(b)?)?);
                }
            }
        }
        Ok(out)
    }

    /// Left-associated `k`-fold product; `x^0` is the unit.
    pub fn power(&self, x: &ModuleElement, k: usize) -> Result<ModuleElement> {
        self.cx.hdeg_of(x)?;
        let mut acc = self.one();
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// `e^(k)` for a basis element of even positive degree.
    pub fn gamma_basis(&self, id: usize, k: usize) -> Result<ModuleElement> {
        let e = self.cx.element(id)?;
        if e.hdeg == 0 || e.hdeg % 2 == 1 {
            return Err(Error::DividedPower(format!(
                "{} has homological degree {}",
                e.name, e.hdeg
            )));
        }
        if k > self.gamma.bound {
            return Err(Error::PowerBound {
                k,
                bound: self.gamma.bound,
            });
        }
        Ok(match k {
            0 => self.one(),
            1 => ModuleElement::basis(id, self.cx.nvars()),
            _ => self.gamma.get(id, k).cloned().unwrap_or_default(),
        })
    }

    /// Divided power `x^(k)` of a homogeneous element of even positive degree.
    ///
    /// Writing `x = sum_t c_t m_t e_t` with one term per (basis, monomial)
    /// pair, the result is the sum over `k_1 + ... + k_s = k` of
    /// `prod_t (c_t m_t)^{k_t} e_t^(k_t)`.
    pub fn divided_power(&self, x: &ModuleElement, k: usize) -> Result<ModuleElement> {
        if k > self.gamma.bound {
            return Err(Error::PowerBound {
                k,
                bound: self.gamma.bound,
            });
        }
        let Some(h) = self.cx.hdeg_of(x)? else {
            return Ok(if k == 0 { self.one() } else { ModuleElement::zero() });
        };
        if h == 0 || h % 2 == 1 {
            return Err(Error::DividedPower(format!(
                "element has homological degree {h}"
            )));
        }
        let terms = x.monomial_terms();
        let mut out = ModuleElement::zero();
        self.expand_compositions(&terms, k, self.one(), &mut out)?;
        Ok(out)
    }

    fn expand_compositions(
        &self,
        terms: &[(usize, Rational, Monomial)],
        k: usize,
        acc: ModuleElement,
        out: &mut ModuleElement,
    ) -> Result<()> {
        let Some(((id, c, m), rest)) = terms.split_first() else {
            if k == 0 {
                out.add_assign(&acc);
            }
            return Ok(());
        };
        let lo = if rest.is_empty() { k } else { 0 };
        for kt in lo..=k {
            let factor = self.gamma_basis(*id, kt)?;
            if factor.is_zero() {
                continue;
            }
            let scalar = num_traits::pow(c.clone(), kt);
            let factor = factor
                .scale_rational(&scalar)
                .mul_monomial(&m.pow(kt as u32)?)?;
            let next = if kt == 0 {
                acc.clone()
            } else {
                self.multiply(&acc, &factor)?
            };
            if next.is_zero() {
                continue;
            }
            self.expand_compositions(rest, k - kt, next, out)?;
        }
        Ok(())
    }

    /// Applies the differential; degree-0 elements map to zero.
    pub fn diff(&self, x: &ModuleElement) -> Result<ModuleElement> {
        self.cx.apply_diff(x)
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Label;
    use crate::constructions::{koszul_principal, taylor, BuildOptions};
    use crate::linalg::rat;
    use crate::monomial::VarContext;

    fn subset_id(a: &DGGammaAlgebra, s: &[usize]) -> usize {
        a.complex()
            .basis()
            .iter()
            .find(|b| b.label == Label::Subset(s.to_vec()))
            .unwrap()
            .id
    }

    #[test]
    fn multiply_examples() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let gens = vec![c.parse("x*y").unwrap(), c.parse("y*z").unwrap()];
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let e1 = t.basis_element(subset_id(&t, &[0])).unwrap();
        let e2 = t.basis_element(subset_id(&t, &[1])).unwrap();
        let e12 = subset_id(&t, &[0, 1]);
        let y = c.parse("y").unwrap();
        assert_eq!(
            t.multiply(&e1, &e2).unwrap(),
            ModuleElement::monomial_term(e12, rat(1), y.clone())
        );
        assert_eq!(
            t.multiply(&e2, &e1).unwrap(),
            ModuleElement::monomial_term(e12, rat(-1), y)
        );
        assert_eq!(t.multiply(&t.one(), &e1).unwrap(), e1);
        assert_eq!(
            t.multiply(&e1, &ModuleElement::basis(40, 3)),
            Err(Error::UnknownBasis(40))
        );
    }

    #[test]
    fn multiply_is_table_lookup() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let gens: Vec<_> = ["x^2", "x*y", "y^3"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let n = t.complex().len();
        for a in 0..n {
            for b in 0..n {
                let got = t
                    .multiply(&t.basis_element(a).unwrap(), &t.basis_element(b).unwrap())
                    .unwrap();
                assert_eq!(got, t.basis_product(a, b));
            }
        }
    }

    #[test]
    fn power_examples() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let gens = vec![c.parse("x*y").unwrap(), c.parse("y*z").unwrap()];
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let e12 = t.basis_element(subset_id(&t, &[0, 1])).unwrap();
        let e1 = t.basis_element(subset_id(&t, &[0])).unwrap();
        assert!(t.power(&e12, 2).unwrap().is_zero());
        assert!(t.power(&e1, 2).unwrap().is_zero());
        assert_eq!(t.power(&e1, 1).unwrap(), e1);
        assert_eq!(t.power(&e1, 0).unwrap(), t.one());

        let k = koszul_principal(&c, &c.parse("x").unwrap(), &BuildOptions::default()).unwrap();
        let f = k.basis_element(1).unwrap();
        assert!(k.power(&f, 2).unwrap().is_zero());
    }

    #[test]
    fn divided_power_examples() {
        let c = VarContext::new(&["a", "b", "c", "d"]).unwrap();
        let gens: Vec<_> = ["a", "b", "c", "d"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let e12 = t.basis_element(subset_id(&t, &[0, 1])).unwrap();
        let e34 = t.basis_element(subset_id(&t, &[2, 3])).unwrap();
        let sum = e12.add(&e34);
        assert_eq!(
            t.divided_power(&sum, 2).unwrap(),
            t.multiply(&e12, &e34).unwrap()
        );
        assert_eq!(t.divided_power(&e12, 0).unwrap(), t.one());
        assert_eq!(t.divided_power(&e12, 1).unwrap(), e12);

        let scaled = e12
            .scale_rational(&rat(3))
            .mul_monomial(&c.parse("a").unwrap())
            .unwrap();
        assert_eq!(t.divided_power(&scaled, 1).unwrap(), scaled);
        assert!(t.divided_power(&scaled, 2).unwrap().is_zero());
    }

    #[test]
    fn divided_power_scales_stored_powers() {
        // A hand-built algebra with a nonzero e^(2) checks the (c m)^k factor.
        use crate::complex::{BasisElement, FreeComplex};
        let c = VarContext::new(&["x"]).unwrap();
        let x = |k: u32| Monomial::from_exponents(vec![k]);
        let mk = |id, hdeg, mdeg, name: &str| BasisElement {
            id,
            hdeg,
            mdeg,
            label: Label::Slot(id),
            name: name.into(),
        };
        let basis = vec![
            BasisElement { label: Label::Unit, ..mk(0, 0, x(0), "1") },
            mk(1, 2, x(1), "e"),
            mk(2, 4, x(2), "g"),
        ];
        let cx = FreeComplex::new(c, basis, vec![ModuleElement::zero(); 3], vec![], None).unwrap();
        let mut mul = MulTable::new(0);
        for i in 0..3 {
            mul.insert(0, i, ModuleElement::basis(i, 1));
            mul.insert(i, 0, ModuleElement::basis(i, 1));
        }
        mul.insert(1, 1, ModuleElement::monomial_term(2, rat(2), x(0)));
        let mut gamma = GammaTable::new(3);
        gamma.insert(1, 2, ModuleElement::basis(2, 1));
        let alg = DGGammaAlgebra::new(cx, mul, gamma).unwrap();

        let y = ModuleElement::monomial_term(1, rat(3), x(2));
        assert_eq!(
            alg.divided_power(&y, 2).unwrap(),
            ModuleElement::monomial_term(2, rat(9), x(4))
        );
    }

    #[test]
    fn divided_power_errors() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let gens = vec![c.parse("x").unwrap(), c.parse("y").unwrap()];
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let e1 = t.basis_element(subset_id(&t, &[0])).unwrap();
        let e12 = t.basis_element(subset_id(&t, &[0, 1])).unwrap();
        assert!(matches!(t.divided_power(&e1, 2), Err(Error::DividedPower(_))));
        assert!(matches!(t.divided_power(&t.one(), 2), Err(Error::DividedPower(_))));
        assert!(matches!(
            t.divided_power(&e12, 9),
            Err(Error::PowerBound { k: 9, bound: 3 })
        ));
        assert_eq!(t.divided_power(&e1.add(&e12), 2), Err(Error::MixedDegree));
    }
}
