//! Polynomial coefficients and formal sums of basis elements.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::monomial::{Monomial, VarContext};

/// A polynomial: finite map from monomials to nonzero rationals.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct RingElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RingElement { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn scalar(c: Rational, nvars: usize) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The `(scalar, monomial)` pair when this element has exactly one term.
    pub fn single_term(&self) -> Option<(&Rational, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &RingElement) {
        for (m, c) in &other.terms {
            self.add_term(c.clone(), m.clone());
        }
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RingElement {
        if c.is_zero() {
            return RingElement::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<RingElement> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.mul(m)?, v.clone());
        }
        Ok(RingElement { terms })
    }

    /// Exact division of every term by `m`.
    pub fn div_monomial(&self, m: &Monomial) -> Result<RingElement> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.quotient(m)?, v.clone());
        }
        Ok(RingElement { terms })
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(c1 * c2, m1.mul(m2)?);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32, nvars: usize) -> Result<RingElement> {
        let mut acc = RingElement::scalar(Rational::one(), nvars);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn format(&self, ctx: &VarContext) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&coefficient_text(&abs, m, ctx));
        }
        out
    }
}

fn coefficient_text(abs: &Rational, m: &Monomial, ctx: &VarContext) -> String {
    let mono = m.format(ctx);
    if abs.is_one() {
        mono
    } else if m.is_one() {
        abs.to_string()
    } else {
        format!("{abs}*{mono}")
    }
}

/// A finite formal sum `sum_e r_e * e` over basis ids with polynomial
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ModuleElement {
    terms: BTreeMap<usize, RingElement>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(id: usize, nvars: usize) -> Self {
        Self::term(id, RingElement::scalar(Rational::one(), nvars))
    }

    pub fn term(id: usize, coeff: RingElement) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(id, coeff);
        }
        ModuleElement { terms }
    }

    /// `c * m * e_id`.
    pub fn monomial_term(id: usize, c: Rational, m: Monomial) -> Self {
        Self::term(id, RingElement::term(c, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &RingElement)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, id: usize) -> Option<&RingElement> {
        self.terms.get(&id)
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every `(basis id, scalar, monomial)` triple.
    pub fn monomial_terms(&self) -> Vec<(usize, Rational, Monomial)> {
        self.terms
            .iter()
            .flat_map(|(id, r)| r.terms().map(move |(m, c)| (*id, c.clone(), m.clone())))
            .collect()
    }

    pub fn add_scaled(&mut self, id: usize, coeff: &RingElement) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(id).or_default();
        entry.add_assign(coeff);
        if entry.is_zero() {
            self.terms.remove(&id);
        }
    }

    pub fn add_assign(&mut self, other: &ModuleElement) {
        for (id, r) in &other.terms {
            self.add_scaled(*id, r);
        }
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModuleElement {
        ModuleElement {
            terms: self.terms.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (id, r) in &self.terms {
            out.add_scaled(*id, &r.scale(c));
        }
        out
    }

    pub fn scale(&self, r: &RingElement) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero();
        for (id, c) in &self.terms {
            out.add_scaled(*id, &c.mul(r)?);
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero();
        for (id, c) in &self.terms {
            out.add_scaled(*id, &c.mul_monomial(m)?);
        }
        Ok(out)
    }

    pub fn div_monomial(&self, m: &Monomial) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero();
        for (id, c) in &self.terms {
            out.add_scaled(*id, &c.div_monomial(m)?);
        }
        Ok(out)
    }

    /// Replaces every basis id through `f`.
    pub fn map_ids(&self, mut f: impl FnMut(usize) -> Result<usize>) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero();
        for (id, c) in &self.terms {
            out.add_scaled(f(*id)?, c);
        }
        Ok(out)
    }

    /// R-linear extension of a map given on basis ids.
    pub fn linear_map(
        &self,
        mut image: impl FnMut(usize) -> Result<ModuleElement>,
    ) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero();
        for (id, c) in &self.terms {
            out.add_assign(&image(*id)?.scale(c)?);
        }
        Ok(out)
    }
}

impl FromIterator<(usize, RingElement)> for ModuleElement {
    fn from_iter<T: IntoIterator<Item = (usize, RingElement)>>(iter: T) -> Self {
        let mut out = ModuleElement::zero();
        for (id, c) in iter {
            out.add_scaled(id, &c);
        }
        out
    }
}

pub(crate) fn check_ids(x: &ModuleElement, len: usize) -> Result<()> {
    match x.ids().find(|&id| id >= len) {
        Some(id) => Err(Error::UnknownBasis(id)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn zero_coefficients_are_dropped() {
        let x = Monomial::from_exponents(vec![1, 0]);
        let mut r = RingElement::term(rat(2), x.clone());
        r.add_term(rat(-2), x.clone());
        assert!(r.is_zero());

        let a = ModuleElement::monomial_term(3, rat(1), x.clone());
        assert!(a.sub(&a).is_zero());
        assert!(a.scale_rational(&rat(0)).is_zero());
    }

    #[test]
    fn ring_arithmetic() {
        let ctx = VarContext::new(&["x", "y"]).unwrap();
        let p = |s: &str| ctx.parse(s).unwrap();
        let a = RingElement::monomial(p("x"));
        let mut b = RingElement::monomial(p("y"));
        b.add_term(rat(-1), p("1"));
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.format(&ctx), "-x + x*y");
        assert_eq!(b.pow(2, 2).unwrap().len(), 3);
        assert_eq!(prod.div_monomial(&p("x")).unwrap(), b);
        assert!(prod.div_monomial(&p("y")).is_err());
    }
}
