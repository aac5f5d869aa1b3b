use std::collections::BTreeMap;

use crate::complex::{FreeComplex, ModuleElement};
use crate::dg::{DGGammaAlgebra, MulTable};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Scalars `α` with `f f' = sum α (m_f m_f' / m_a) a` for every basis pair
/// of one algebra. Pairs with zero product are absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StructureConstants {
    entries: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl StructureConstants {
    /// Terms of `f f'`; empty when the product vanishes.
    pub fn get(&self, f: usize, g: usize) -> &[(usize, Rational)] {
        self.entries.get(&(f, g)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &[(usize, Rational)])> {
        self.entries.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// Multiplication table recovered by reinserting the forced monomials.
    pub fn rebuild(&self, cx: &FreeComplex) -> Result<MulTable> {
        let mut mul = MulTable::new(cx.unit_id());
        for (&(f, g), terms) in &self.entries {
            let joint = cx.element(f)?.mdeg.mul(&cx.element(g)?.mdeg)?;
            let mut out = ModuleElement::zero();
            for (a, alpha) in terms {
                let m = joint.quotient(&cx.element(*a)?.mdeg)?;
                out.add_assign(&ModuleElement::monomial_term(*a, alpha.clone(), m));
            }
            mul.insert(f, g, out);
        }
        Ok(mul)
    }
}

pub fn extract_structure_constants(alg: &DGGammaAlgebra) -> Result<StructureConstants> {
    let cx = alg.complex();
    let mut entries = BTreeMap::new();
    for ((f, g), prod) in alg.mul_table().entries() {
        let (ef, eg) = (&cx.basis()[f], &cx.basis()[g]);
        let joint = ef.mdeg.mul(&eg.mdeg)?;
        let mut terms = Vec::new();
        for (a, coeff) in prod.terms() {
            let ea = &cx.basis()[a];
            let Some((alpha, m)) = coeff.single_term() else {
                return Err(Error::Multigrading(format!(
                    "{} * {} has a non-monomial coefficient on {}",
                    ef.name, eg.name, ea.name
                )));
            };
            let forced = joint.quotient(&ea.mdeg).map_err(|_| {
                Error::Multigrading(format!(
                    "m({}) does not divide m({}) m({})",
                    ea.name, ef.name, eg.name
                ))
            })?;
            if *m != forced {
                return Err(Error::Multigrading(format!(
                    "{} * {} has coefficient monomial on {} other than m_f m_f' / m_a",
                    ef.name, eg.name, ea.name
                )));
            }
            terms.push((a, alpha.clone()));
        }
        entries.insert((f, g), terms);
    }
    let sc = StructureConstants { entries };
    if &sc.rebuild(cx)? != alg.mul_table() {
        return Err(Error::Construction("structure constants do not rebuild the product".into()));
    }
    Ok(sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{taylor, BuildOptions};
    use crate::linalg::rat;
    use crate::monomial::VarContext;

    #[test]
    fn taylor_structure_constants() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let gens = vec![c.parse("x*y").unwrap(), c.parse("y*z").unwrap()];
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let sc = extract_structure_constants(&t).unwrap();
        assert_eq!(sc.get(1, 2), &[(3, rat(1))]);
        assert_eq!(sc.get(2, 1), &[(3, rat(-1))]);
        assert!(sc.get(1, 1).is_empty());
        assert_eq!(sc.get(0, 2), &[(2, rat(1))]);
        assert_eq!(&sc.rebuild(t.complex()).unwrap(), t.mul_table());
    }
}
