//! Finite multigraded complexes of free `R`-modules.
//!
//! A [`FreeComplex`] stores its basis in id order together with the image
//! of every basis element under the differential. Construction validates
//! multigraded homogeneity: each term `c * m * e''` of `d(e)` must satisfy
//! `m * m_{e''} = m_e`.

mod element;
pub mod json;
mod strand;

use serde::{Deserialize, Serialize};

pub use element::{ModuleElement, RingElement};
pub(crate) use element::check_ids;
pub use strand::{strand, strand_test_set, verify_resolution, StrandMode, DEFAULT_BOX_CELL_CAP};

use crate::constructions::SignMode;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, VarContext};
use crate::report::{Check, Violation};

/// Structured tag identifying what a basis element stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Label {
    Unit,
    /// Sorted, zero-based generator indices of a Taylor basis element.
    Subset(Vec<usize>),
    /// The generator of a Koszul factor, tagged with its slot.
    Slot(usize),
    /// Component basis ids of a tensor or star tuple, in factor order.
    Tuple(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub id: usize,
    pub hdeg: usize,
    pub mdeg: Monomial,
    pub label: Label,
    pub name: String,
}

/// Provenance of a complex, recorded in its JSON export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Koszul {
        generator: Monomial,
    },
    Taylor {
        generators: Vec<Monomial>,
    },
    Tensor {
        factors: Vec<Construction>,
    },
    Star {
        factors: Vec<Construction>,
        sign_mode: SignMode,
    },
    Scarf {
        scarf_of: Box<Construction>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    ctx: VarContext,
    basis: Vec<BasisElement>,
    diff: Vec<ModuleElement>,
    augmentation: Vec<Monomial>,
    construction: Option<Construction>,
}

impl FreeComplex {
    /// Validates and assembles a complex. `diff[i]` is the image of basis id `i`.
    pub fn new(
        ctx: VarContext,
        basis: Vec<BasisElement>,
        diff: Vec<ModuleElement>,
        augmentation: Vec<Monomial>,
        construction: Option<Construction>,
    ) -> Result<Self> {
        if basis.len() != diff.len() {
            return Err(Error::InvalidComplex(format!(
                "{} basis elements but {} differential images",
                basis.len(),
                diff.len()
            )));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.id != i {
                return Err(Error::InvalidComplex(format!("basis id {} at position {i}", b.id)));
            }
            ctx.check(&b.mdeg)?;
        }
        let units: Vec<&BasisElement> = basis.iter().filter(|b| b.hdeg == 0).collect();
        if units.len() != 1 || !units[0].mdeg.is_one() {
            return Err(Error::InvalidComplex(
                "homological degree 0 must be a single generator of multidegree 1".into(),
            ));
        }
        for m in &augmentation {
            ctx.check(m)?;
        }
        let cx = FreeComplex {
            ctx,
            basis,
            diff,
            augmentation,
            construction,
        };
        for id in 0..cx.basis.len() {
            cx.validate_image(id, &cx.diff[id])?;
        }
        Ok(cx)
    }

    fn validate_image(&self, id: usize, image: &ModuleElement) -> Result<()> {
        let e = &self.basis[id];
        if e.hdeg == 0 {
            if !image.is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "{} has homological degree 0 but a nonzero differential",
                    e.name
                )));
            }
            return Ok(());
        }
        check_ids(image, self.basis.len())?;
        for (t, c) in image.terms() {
            let target = &self.basis[t];
            if target.hdeg + 1 != e.hdeg {
                return Err(Error::InvalidComplex(format!(
                    "d({}) has a term on {} of homological degree {}",
                    e.name, target.name, target.hdeg
                )));
            }
            let Some((_, m)) = c.single_term() else {
                return Err(Error::Multigrading(format!(
                    "coefficient of {} in d({}) is not a single monomial",
                    target.name, e.name
                )));
            };
            if m.mul(&target.mdeg)? != e.mdeg {
                return Err(Error::Multigrading(format!(
                    "coefficient of {} in d({}) has the wrong multidegree",
                    target.name, e.name
                )));
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, id: usize) -> Result<&BasisElement> {
        self.basis.get(id).ok_or(Error::UnknownBasis(id))
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn augmentation(&self) -> &[Monomial] {
        &self.augmentation
    }

    pub fn construction(&self) -> Option<&Construction> {
        self.construction.as_ref()
    }

    pub fn unit_id(&self) -> usize {
        self.basis.iter().position(|b| b.hdeg == 0).expect("validated at construction")
    }

    /// Image of a basis element under the differential.
    pub fn differential(&self, id: usize) -> Result<&ModuleElement> {
        self.diff.get(id).ok_or(Error::UnknownBasis(id))
    }

    /// Replaces `d(id)`; the new image must satisfy the same homogeneity rules.
    pub fn set_differential(&mut self, id: usize, image: ModuleElement) -> Result<()> {
        self.element(id)?;
        self.validate_image(id, &image)?;
        self.diff[id] = image;
        Ok(())
    }

    pub fn max_hdeg(&self) -> usize {
        self.basis.iter().map(|b| b.hdeg).max().unwrap_or(0)
    }

    /// Basis ids of homological degree `i`, in id order.
    pub fn ids_in_degree(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().filter(move |b| b.hdeg == i).map(|b| b.id)
    }

    /// Free rank in each homological degree `0..=max_hdeg`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.max_hdeg() + 1];
        for b in &self.basis {
            r[b.hdeg] += 1;
        }
        r
    }

    pub fn one(&self) -> ModuleElement {
        ModuleElement::basis(self.unit_id(), self.nvars())
    }

    pub fn basis_element(&self, id: usize) -> Result<ModuleElement> {
        self.element(id)?;
        Ok(ModuleElement::basis(id, self.nvars()))
    }

    /// Common homological degree of the terms of `x`; `None` for zero.
    pub fn hdeg_of(&self, x: &ModuleElement) -> Result<Option<usize>> {
        let mut deg = None;
        for id in x.ids() {
            let h = self.element(id)?.hdeg;
            match deg {
                None => deg = Some(h),
                Some(d) if d != h => return Err(Error::MixedDegree),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Common multidegree of the terms of `x`; `None` for zero.
    pub fn mdeg_of(&self, x: &ModuleElement) -> Result<Option<Monomial>> {
        let mut deg: Option<Monomial> = None;
        for (id, c) in x.terms() {
            let base = &self.element(id)?.mdeg;
            for (m, _) in c.terms() {
                let d = m.mul(base)?;
                match &deg {
                    None => deg = Some(d),
                    Some(prev) if *prev != d => return Err(Error::MixedMultidegree),
                    _ => {}
                }
            }
        }
        Ok(deg)
    }

    /// R-linear extension of the differential. Degree-0 elements map to 0.
    pub fn apply_diff(&self, x: &ModuleElement) -> Result<ModuleElement> {
        self.hdeg_of(x)?;
        x.linear_map(|id| Ok(self.diff[id].clone()))
    }

    /// Lists every basis element `e` with `d(d(e)) != 0`.
    pub fn check_d_squared(&self) -> Result<Check> {
        let mut violations = Vec::new();
        for b in &self.basis {
            let dd = self.apply_diff(&self.diff[b.id])?;
            if !dd.is_zero() {
                violations.push(Violation::new(
                    format!("d(d({}))", b.name),
                    self.format_element(&dd),
                    "0",
                ));
            }
        }
        Ok(Check::new("d_squared", violations))
    }

    pub fn format_element(&self, x: &ModuleElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (id, c)) in x.terms().enumerate() {
            let name = self
                .basis
                .get(id)
                .map(|b| b.name.as_str())
                .unwrap_or("<?>");
            let text = match c.single_term() {
                Some((q, m)) => {
                    let neg = num_traits::Signed::is_negative(q);
                    let abs = num_traits::Signed::abs(q);
                    let mut coeff = String::new();
                    if !num_traits::One::is_one(&abs) {
                        coeff.push_str(&abs.to_string());
                    }
                    if !m.is_one() {
                        if !coeff.is_empty() {
                            coeff.push('*');
                        }
                        coeff.push_str(&m.format(&self.ctx));
                    }
                    let body = if coeff.is_empty() {
                        name.to_string()
                    } else {
                        format!("{coeff}*{name}")
                    };
                    (neg, body)
                }
                None => (false, format!("({})*{name}", c.format(&self.ctx))),
            };
            let (neg, body) = text;
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{koszul_principal, taylor, BuildOptions};
    use crate::linalg::rat;

    fn ctx(names: &[&str]) -> VarContext {
        VarContext::new(names).unwrap()
    }

    fn id_of(cx: &FreeComplex, subset: &[usize]) -> usize {
        cx.basis()
            .iter()
            .find(|b| b.label == Label::Subset(subset.to_vec()))
            .unwrap()
            .id
    }

    #[test]
    fn apply_diff_examples() {
        let c = ctx(&["x", "y", "z"]);
        let gens = vec![c.parse("x*y").unwrap(), c.parse("y*z").unwrap()];
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let cx = t.complex();
        let e12 = id_of(cx, &[0, 1]);
        let e1 = id_of(cx, &[0]);
        let e2 = id_of(cx, &[1]);

        let d = cx.apply_diff(&cx.basis_element(e12).unwrap()).unwrap();
        let expected = ModuleElement::monomial_term(e2, rat(1), c.parse("x").unwrap())
            .add(&ModuleElement::monomial_term(e1, rat(-1), c.parse("z").unwrap()));
        assert_eq!(d, expected);
        assert_eq!(cx.format_element(&d), "-z*e{1} + x*e{2}");

        assert!(cx.apply_diff(&ModuleElement::zero()).unwrap().is_zero());

        let ye1 = ModuleElement::monomial_term(e1, rat(1), c.parse("y").unwrap());
        let d = cx.apply_diff(&ye1).unwrap();
        assert_eq!(
            d,
            ModuleElement::monomial_term(cx.unit_id(), rat(1), c.parse("x*y^2").unwrap())
        );
    }

    #[test]
    fn apply_diff_errors() {
        let c = ctx(&["x", "y"]);
        let gens = vec![c.parse("x").unwrap(), c.parse("y").unwrap()];
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let cx = t.complex();
        let mixed = cx.basis_element(1).unwrap().add(&cx.basis_element(3).unwrap());
        assert_eq!(cx.apply_diff(&mixed), Err(Error::MixedDegree));
        assert_eq!(
            cx.apply_diff(&ModuleElement::basis(99, 2)),
            Err(Error::UnknownBasis(99))
        );
    }

    #[test]
    fn d_squared_and_mutation() {
        let c = ctx(&["x", "y"]);
        let gens: Vec<_> = ["x^2", "x*y", "y^3"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        assert!(t.complex().check_d_squared().unwrap().passed());

        let k = koszul_principal(&c, &c.parse("x").unwrap(), &BuildOptions::default()).unwrap();
        assert!(k.complex().check_d_squared().unwrap().passed());

        let mut cx = t.complex().clone();
        let e12 = id_of(&cx, &[0, 1]);
        let d = cx.differential(e12).unwrap().clone();
        let (first, coeff) = d.terms().next().map(|(i, r)| (i, r.clone())).unwrap();
        let mut flipped = d.clone();
        flipped.add_scaled(first, &coeff.neg());
        flipped.add_scaled(first, &coeff.neg());
        cx.set_differential(e12, flipped).unwrap();
        let check = cx.check_d_squared().unwrap();
        assert!(!check.passed());
        assert!(check.violations.iter().any(|v| v.location == "d(d(e{1,2}))"));
    }

    #[test]
    fn ranks_examples() {
        let c = ctx(&["x", "y"]);
        let gens: Vec<_> = ["x^2", "x*y", "y^3"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        assert_eq!(t.complex().ranks(), vec![1, 3, 3, 1]);
        let k = koszul_principal(&c, &c.parse("x*y").unwrap(), &BuildOptions::default()).unwrap();
        assert_eq!(k.complex().ranks(), vec![1, 1]);
    }

    #[test]
    fn construction_rejects_inhomogeneous_differential() {
        let c = ctx(&["x"]);
        let basis = vec![
            BasisElement {
                id: 0,
                hdeg: 0,
                mdeg: c.one(),
                label: Label::Unit,
                name: "1".into(),
            },
            BasisElement {
                id: 1,
                hdeg: 1,
                mdeg: c.parse("x^2").unwrap(),
                label: Label::Slot(0),
                name: "f".into(),
            },
        ];
        let bad = vec![
            ModuleElement::zero(),
            ModuleElement::monomial_term(0, rat(1), c.parse("x").unwrap()),
        ];
        assert!(matches!(
            FreeComplex::new(c.clone(), basis.clone(), bad, vec![], None),
            Err(Error::Multigrading(_))
        ));
        let two_terms = {
            let mut r = RingElement::monomial(c.parse("x^2").unwrap());
            r.add_term(rat(1), c.parse("x").unwrap());
            ModuleElement::term(0, r)
        };
        assert!(matches!(
            FreeComplex::new(c, basis, vec![ModuleElement::zero(), two_terms], vec![], None),
            Err(Error::Multigrading(_))
        ));
    }
}
