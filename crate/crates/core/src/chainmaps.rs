//! Chain maps between constructions and checkers for the properties they
//! are expected to have.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::complex::json::{canonical_string, element_to_json};
use crate::complex::{Construction, FreeComplex, Label, ModuleElement};
use crate::dg::random::{random_elements, rng_for, Parity};
use crate::dg::{CheckBudget, DGGammaAlgebra};
use crate::error::{Error, Result};
use crate::linalg::rat;
use crate::monomial::Monomial;
use crate::report::{Check, Violation};

/// Either end of a chain map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    Complex(Arc<FreeComplex>),
    Algebra(Arc<DGGammaAlgebra>),
}

impl Endpoint {
    pub fn complex(&self) -> &FreeComplex {
        match self {
            Endpoint::Complex(c) => c,
            Endpoint::Algebra(a) => a.complex(),
        }
    }

    pub fn algebra(&self) -> Option<&DGGammaAlgebra> {
        match self {
            Endpoint::Complex(_) => None,
            Endpoint::Algebra(a) => Some(a),
        }
    }
}

impl From<FreeComplex> for Endpoint {
    fn from(c: FreeComplex) -> Self {
        Endpoint::Complex(Arc::new(c))
    }
}

impl From<DGGammaAlgebra> for Endpoint {
    fn from(a: DGGammaAlgebra) -> Self {
        Endpoint::Algebra(Arc::new(a))
    }
}

impl From<&DGGammaAlgebra> for Endpoint {
    fn from(a: &DGGammaAlgebra) -> Self {
        Endpoint::Algebra(Arc::new(a.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapProperty {
    Chain,
    Multiplicative,
    Gamma,
    LocInvertible,
    Iso,
}

impl MapProperty {
    pub const ALL: [MapProperty; 5] = [
        MapProperty::Chain,
        MapProperty::Multiplicative,
        MapProperty::Gamma,
        MapProperty::LocInvertible,
        MapProperty::Iso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapProperty::Chain => "chain",
            MapProperty::Multiplicative => "multiplicative",
            MapProperty::Gamma => "gamma",
            MapProperty::LocInvertible => "loc_invertible",
            MapProperty::Iso => "iso",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        MapProperty::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown map property `{s}`")))
    }
}

/// An R-linear map given by the images of the source basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Endpoint,
    target: Endpoint,
    images: Vec<ModuleElement>,
    source_ref: String,
    target_ref: String,
}

/// Short text naming the construction a complex came from.
pub fn construction_ref(cx: &FreeComplex) -> String {
    fn go(c: &Construction, cx: &FreeComplex) -> String {
        let mono = |m: &Monomial| m.format(cx.ctx());
        match c {
            Construction::Koszul { generator } => format!("koszul({})", mono(generator)),
            Construction::Taylor { generators } => {
                let g: Vec<String> = generators.iter().map(mono).collect();
                format!("taylor({})", g.join(", "))
            }
            Construction::Tensor { factors } => {
                let f: Vec<String> = factors.iter().map(|f| go(f, cx)).collect();
                format!("tensor({})", f.join(", "))
            }
            Construction::Star { factors, sign_mode } => {
                let f: Vec<String> = factors.iter().map(|f| go(f, cx)).collect();
                let mode = match sign_mode {
                    crate::constructions::SignMode::Corrected => "corrected",
                    crate::constructions::SignMode::Unsigned => "unsigned",
                };
                format!("star[{mode}]({})", f.join(", "))
            }
            Construction::Scarf { scarf_of } => format!("scarf({})", go(scarf_of, cx)),
        }
    }
    cx.construction()
        .map(|c| go(c, cx))
        .unwrap_or_else(|| "complex".to_string())
}

impl ChainMap {
    /// Validates that images preserve homological degree and multidegree.
    pub fn new(source: Endpoint, target: Endpoint, images: Vec<ModuleElement>) -> Result<Self> {
        let (s, t) = (source.complex(), target.complex());
        if s.ctx() != t.ctx() {
            return Err(Error::ContextMismatch {
                expected: s.nvars(),
                found: t.nvars(),
            });
        }
        if images.len() != s.len() {
            return Err(Error::InvalidComplex(format!(
                "{} images for {} basis elements",
                images.len(),
                s.len()
            )));
        }
        for (id, img) in images.iter().enumerate() {
            crate::complex::check_ids(img, t.len())?;
            let e = &s.basis()[id];
            for (to, c) in img.terms() {
                let f = &t.basis()[to];
                if f.hdeg != e.hdeg {
                    return Err(Error::InvalidComplex(format!(
                        "image of {} has a term on {} of homological degree {}",
                        e.name, f.name, f.hdeg
                    )));
                }
                for (m, _) in c.terms() {
                    if m.mul(&f.mdeg)? != e.mdeg {
                        return Err(Error::Multigrading(format!(
                            "image of {} has a term on {} of the wrong multidegree",
                            e.name, f.name
                        )));
                    }
                }
            }
        }
        let source_ref = construction_ref(s);
        let target_ref = construction_ref(t);
        Ok(ChainMap {
            source,
            target,
            images,
            source_ref,
            target_ref,
        })
    }

    pub fn source(&self) -> &Endpoint {
        &self.source
    }

    pub fn target(&self) -> &Endpoint {
        &self.target
    }

    pub fn image(&self, id: usize) -> Result<&ModuleElement> {
        self.images.get(id).ok_or(Error::UnknownBasis(id))
    }

    pub fn images(&self) -> &[ModuleElement] {
        &self.images
    }

    /// Linear extension to arbitrary source elements.
    pub fn apply(&self, x: &ModuleElement) -> Result<ModuleElement> {
        crate::complex::check_ids(x, self.images.len())?;
        x.linear_map(|id| Ok(self.images[id].clone()))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        if self.target.complex() != next.source.complex() {
            return Err(Error::FactorMismatch(
                "composed maps do not share the middle complex".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|x| next.apply(x))
            .collect::<Result<_>>()?;
        ChainMap::new(self.source.clone(), next.target.clone(), images)
    }

    /// Whether source and target agree and every basis element maps to itself.
    pub fn is_identity(&self) -> bool {
        let s = self.source.complex();
        s == self.target.complex()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(id, x)| *x == ModuleElement::basis(id, s.nvars()))
    }

    /// The basis bijection with its coefficients, if every image is a
    /// single nonzero scalar times a monomial and distinct sources hit
    /// distinct targets.
    fn diagonal(&self) -> std::result::Result<Vec<(usize, crate::linalg::Rational, Monomial)>, Violation> {
        let s = self.source.complex();
        let t = self.target.complex();
        if s.len() != t.len() {
            return Err(Violation::new(
                "basis sizes",
                s.len().to_string(),
                t.len().to_string(),
            ));
        }
        let mut hit = vec![false; t.len()];
        let mut out = Vec::with_capacity(s.len());
        for (id, img) in self.images.iter().enumerate() {
            let terms = img.monomial_terms();
            let [(to, c, m)] = terms.as_slice() else {
                return Err(Violation::new(
                    format!("image of {}", s.basis()[id].name),
                    t.format_element(img),
                    "a single basis element",
                ));
            };
            if std::mem::replace(&mut hit[*to], true) {
                return Err(Violation::new(
                    format!("image of {}", s.basis()[id].name),
                    t.basis()[*to].name.clone(),
                    "a target not hit by another basis element",
                ));
            }
            out.push((*to, c.clone(), m.clone()));
        }
        Ok(out)
    }

    /// Inverse of a map whose images are `±e` for a basis bijection.
    pub fn inverse(&self) -> Result<ChainMap> {
        let diag = self
            .diagonal()
            .map_err(|v| Error::Inapplicable {
                property: "inverse".into(),
                reason: format!("{}: {}", v.location, v.lhs),
            })?;
        let nv = self.source.complex().nvars();
        let mut images = vec![ModuleElement::zero(); diag.len()];
        for (from, (to, c, m)) in diag.into_iter().enumerate() {
            if !m.is_one() || c.abs() != crate::linalg::Rational::one() {
                return Err(Error::Inapplicable {
                    property: "inverse".into(),
                    reason: "map is not invertible over R".into(),
                });
            }
            images[to] = ModuleElement::monomial_term(from, c.recip(), Monomial::one(nv));
        }
        ChainMap::new(self.target.clone(), self.source.clone(), images)
    }

    pub fn check(&self, which: MapProperty, budget: &CheckBudget) -> Result<Check> {
        let s = self.source.complex();
        let t = self.target.complex();
        let mut violations = Vec::new();
        let mut notes = Vec::new();
        let mut compare = |loc: String, lhs: &ModuleElement, rhs: &ModuleElement| {
            if lhs != rhs {
                violations.push(Violation::new(loc, t.format_element(lhs), t.format_element(rhs)));
            }
        };
        match which {
            MapProperty::Chain => {
                for b in s.basis() {
                    let lhs = t.apply_diff(&self.images[b.id])?;
                    let rhs = self.apply(s.differential(b.id)?)?;
                    compare(format!("d(phi({}))", b.name), &lhs, &rhs);
                }
            }
            MapProperty::Multiplicative => {
                let (sa, ta) = self.algebras(which)?;
                for a in s.basis() {
                    for b in s.basis() {
                        let lhs = self.apply(&sa.basis_product(a.id, b.id))?;
                        let rhs = ta.multiply(&self.images[a.id], &self.images[b.id])?;
                        compare(format!("phi({} * {})", a.name, b.name), &lhs, &rhs);
                    }
                }
            }
            MapProperty::Gamma => {
                let (sa, ta) = self.algebras(which)?;
                let kmax = budget.max_map_power.min(sa.bound()).min(ta.bound());
                let mut pool: Vec<(String, ModuleElement)> = s
                    .basis()
                    .iter()
                    .filter(|b| b.hdeg > 0 && b.hdeg % 2 == 0)
                    .map(|b| (b.name.clone(), ModuleElement::basis(b.id, s.nvars())))
                    .collect();
                let basis_count = pool.len();
                let mut rng = rng_for(budget.seed, 200);
                for x in random_elements(s, &mut rng, Parity::EvenPositive, budget.samples) {
                    pool.push((s.format_element(&x), x));
                }
                for (name, x) in &pool {
                    let px = self.apply(x)?;
                    for k in 0..=kmax {
                        let lhs = self.apply(&sa.divided_power(x, k)?)?;
                        let rhs = ta.divided_power(&px, k)?;
                        compare(format!("phi(({name})^({k}))"), &lhs, &rhs);
                    }
                }
                notes.push(format!(
                    "{basis_count} basis elements, {} sampled elements, k <= {kmax}",
                    pool.len() - basis_count
                ));
            }
            MapProperty::LocInvertible | MapProperty::Iso => match self.diagonal() {
                Err(v) => violations.push(v),
                Ok(diag) => {
                    for (from, (to, c, m)) in diag.iter().enumerate() {
                        let ok = match which {
                            MapProperty::Iso => m.is_one() && c.abs() == crate::linalg::Rational::one(),
                            _ => !c.is_zero(),
                        };
                        if !ok {
                            violations.push(Violation::new(
                                format!("phi({})", s.basis()[from].name),
                                t.format_element(&ModuleElement::monomial_term(*to, c.clone(), m.clone())),
                                if which == MapProperty::Iso {
                                    "unit coefficient"
                                } else {
                                    "nonzero coefficient"
                                },
                            ));
                        }
                    }
                }
            },
        }
        Ok(Check::new(which.name(), violations).with_notes(notes))
    }

    fn algebras(&self, which: MapProperty) -> Result<(&DGGammaAlgebra, &DGGammaAlgebra)> {
        match (self.source.algebra(), self.target.algebra()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::Inapplicable {
                property: which.name().into(),
                reason: "source and target must both carry products".into(),
            }),
        }
    }

    pub fn to_json(&self, properties_checked: &[&str]) -> Result<String> {
        let images: Vec<Value> = self
            .images
            .iter()
            .enumerate()
            .map(|(from, x)| Ok(json!({ "from": from, "terms": element_to_json(x)? })))
            .collect::<Result<_>>()?;
        canonical_string(&json!({
            "source_ref": self.source_ref,
            "target_ref": self.target_ref,
            "images": images,
            "properties_checked": properties_checked,
        }))
    }
}

fn tuple_index(cx: &FreeComplex) -> HashMap<&[usize], usize> {
    cx.basis()
        .iter()
        .filter_map(|b| match &b.label {
            Label::Tuple(t) => Some((t.as_slice(), b.id)),
            _ => None,
        })
        .collect()
}

/// The comparison map from a tensor product to the star product of the
/// same factors: `f_1 ⊗ ... ⊗ f_r ↦ (m_1 ... m_r / lcm(m_1, ..., m_r)) f_1 * ... * f_r`.
pub fn comparison_map(tensor: &DGGammaAlgebra, star: &DGGammaAlgebra) -> Result<ChainMap> {
    let (tc, sc) = (tensor.complex(), star.complex());
    let (Some(Construction::Tensor { factors: a }), Some(Construction::Star { factors: b, .. })) =
        (tc.construction(), sc.construction())
    else {
        return Err(Error::FactorMismatch("expected a tensor product and a star product".into()));
    };
    if a != b || tc.len() != sc.len() {
        return Err(Error::FactorMismatch("tensor and star are built from different factors".into()));
    }
    let index = tuple_index(sc);
    let mut images = Vec::with_capacity(tc.len());
    for e in tc.basis() {
        let Label::Tuple(t) = &e.label else {
            return Err(Error::FactorMismatch(format!("{} is not a tuple", e.name)));
        };
        let &to = index
            .get(t.as_slice())
            .ok_or_else(|| Error::FactorMismatch(format!("no star tuple for {}", e.name)))?;
        let coeff = e.mdeg.quotient(&sc.basis()[to].mdeg)?;
        images.push(ModuleElement::monomial_term(to, rat(1), coeff));
    }
    ChainMap::new(tensor.into(), star.into(), images)
}

/// The isomorphism from `taylor(u_1, ..., u_r)` to the star of the Koszul
/// resolutions of `u_1, ..., u_r`, sending `e_σ` to the tuple with the
/// Koszul generator in the slots of `σ` and `1` elsewhere.
pub fn taylor_iso(taylor: &DGGammaAlgebra, star: &DGGammaAlgebra) -> Result<ChainMap> {
    let (tc, sc) = (taylor.complex(), star.complex());
    let Some(Construction::Taylor { generators }) = tc.construction() else {
        return Err(Error::FactorMismatch("source is not a Taylor resolution".into()));
    };
    let koszul_gens: Vec<&Monomial> = match sc.construction() {
        Some(Construction::Star { factors, .. }) => factors
            .iter()
            .map(|f| match f {
                Construction::Koszul { generator } => Ok(generator),
                _ => Err(Error::FactorMismatch("star factor is not a Koszul resolution".into())),
            })
            .collect::<Result<_>>()?,
        Some(Construction::Koszul { generator }) => vec![generator],
        _ => return Err(Error::FactorMismatch("target is not a star of Koszul resolutions".into())),
    };
    if koszul_gens.len() != generators.len() || koszul_gens.iter().zip(generators).any(|(a, b)| *a != b) {
        return Err(Error::FactorMismatch("generator lists differ".into()));
    }
    let r = generators.len();
    let index = tuple_index(sc);
    let nv = tc.nvars();
    let mut images = Vec::with_capacity(tc.len());
    for e in tc.basis() {
        let sigma: &[usize] = match &e.label {
            Label::Unit => &[],
            Label::Subset(s) => s,
            _ => return Err(Error::FactorMismatch(format!("{} is not a subset", e.name))),
        };
        let to = if r == 1 {
            sigma.len()
        } else {
            let t: Vec<usize> = (0..r).map(|i| usize::from(sigma.contains(&i))).collect();
            *index
                .get(t.as_slice())
                .ok_or_else(|| Error::FactorMismatch(format!("no star tuple for {}", e.name)))?
        };
        images.push(ModuleElement::monomial_term(to, rat(1), Monomial::one(nv)));
    }
    ChainMap::new(taylor.into(), star.into(), images)
}

/// Inclusion of factor `slot` into a star or tensor product: `e` goes to
/// the tuple with `e` in `slot` and units elsewhere.
pub fn inclusion_map(factor: &DGGammaAlgebra, product: &DGGammaAlgebra, slot: usize) -> Result<ChainMap> {
    let pc = product.complex();
    let Label::Tuple(unit) = &pc.basis()[pc.unit_id()].label else {
        return Err(Error::FactorMismatch("target is not a product of factors".into()));
    };
    if slot >= unit.len() {
        return Err(Error::FactorMismatch(format!("no slot {slot}")));
    }
    let index = tuple_index(pc);
    let nv = pc.nvars();
    let mut images = Vec::with_capacity(factor.complex().len());
    for e in factor.complex().basis() {
        let mut t = unit.clone();
        t[slot] = e.id;
        let &to = index
            .get(t.as_slice())
            .ok_or_else(|| Error::FactorMismatch(format!("no tuple for {} in slot {slot}", e.name)))?;
        images.push(ModuleElement::monomial_term(to, rat(1), Monomial::one(nv)));
    }
    let map = ChainMap::new(factor.into(), product.into(), images)?;
    if map.images.iter().zip(factor.complex().basis()).any(|(x, e)| {
        x.ids().any(|to| pc.basis()[to].mdeg != e.mdeg)
    }) {
        return Err(Error::FactorMismatch("factor does not match the product slot".into()));
    }
    Ok(map)
}
