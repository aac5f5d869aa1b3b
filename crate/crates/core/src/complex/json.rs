//! Canonical JSON for complexes and algebras.
//!
//! Keys are sorted and every list is emitted in id order, so exporting an
//! imported document reproduces it byte for byte. Integers that fit in an
//! `i64` are JSON numbers; larger ones are decimal strings.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dg::{DGGammaAlgebra, GammaTable, MulTable};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::monomial::{Monomial, VarContext};

use super::{BasisElement, Construction, FreeComplex, ModuleElement, RingElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum BigIntRepr {
    Small(i64),
    Big(String),
}

impl BigIntRepr {
    fn from_bigint(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => BigIntRepr::Small(v),
            None => BigIntRepr::Big(n.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            BigIntRepr::Small(v) => Ok(BigInt::from(*v)),
            BigIntRepr::Big(s) => s
                .parse()
                .map_err(|_| Error::Json(format!("`{s}` is not an integer"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CoeffJson {
    num: BigIntRepr,
    den: BigIntRepr,
    mono: Vec<u32>,
}

impl CoeffJson {
    fn new(c: &Rational, m: &Monomial) -> Self {
        CoeffJson {
            num: BigIntRepr::from_bigint(c.numer()),
            den: BigIntRepr::from_bigint(c.denom()),
            mono: m.exponents().to_vec(),
        }
    }

    fn parse(&self, nvars: usize) -> Result<(Rational, Monomial)> {
        let den = self.den.to_bigint()?;
        if den.is_zero() {
            return Err(Error::Json("zero denominator".into()));
        }
        if self.mono.len() != nvars {
            return Err(Error::ContextMismatch {
                expected: nvars,
                found: self.mono.len(),
            });
        }
        Ok((
            Rational::new(self.num.to_bigint()?, den),
            Monomial::from_exponents(self.mono.clone()),
        ))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DiffTermJson {
    from: usize,
    to: usize,
    coeff: CoeffJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermJson {
    to: usize,
    coeff: CoeffJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MulJson {
    left: usize,
    right: usize,
    terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GammaEntryJson {
    id: usize,
    k: usize,
    terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GammaJson {
    bound: usize,
    entries: Vec<GammaEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ComplexJson {
    variables: Vec<String>,
    basis: Vec<BasisElement>,
    diff: Vec<DiffTermJson>,
    augmentation: Vec<Monomial>,
    construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mul: Option<Vec<MulJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<GammaJson>,
}

/// A parsed document: a bare complex, or a complex with product and
/// divided-power tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Complex(FreeComplex),
    Algebra(DGGammaAlgebra),
}

impl Document {
    pub fn complex(&self) -> &FreeComplex {
        match self {
            Document::Complex(c) => c,
            Document::Algebra(a) => a.complex(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        match self {
            Document::Complex(c) => export_complex(c),
            Document::Algebra(a) => export_algebra(a),
        }
    }
}

fn terms_json(x: &ModuleElement) -> Vec<TermJson> {
    let mut out = Vec::new();
    for (to, c) in x.terms() {
        for (m, q) in c.terms() {
            out.push(TermJson {
                to,
                coeff: CoeffJson::new(q, m),
            });
        }
    }
    out
}

/// `[{to, coeff}]` list for a module element, in id order.
pub fn element_to_json(x: &ModuleElement) -> Result<Value> {
    Ok(serde_json::to_value(terms_json(x))?)
}

pub fn element_from_json(v: &Value, nvars: usize) -> Result<ModuleElement> {
    let terms: Vec<TermJson> = serde_json::from_value(v.clone())?;
    terms_from_json(&terms, nvars)
}

fn terms_from_json(terms: &[TermJson], nvars: usize) -> Result<ModuleElement> {
    let mut x = ModuleElement::zero();
    for t in terms {
        let (q, m) = t.coeff.parse(nvars)?;
        x.add_scaled(t.to, &RingElement::term(q, m));
    }
    Ok(x)
}

fn complex_json(cx: &FreeComplex) -> ComplexJson {
    let mut diff = Vec::new();
    for b in cx.basis() {
        for t in terms_json(&cx.diff[b.id]) {
            diff.push(DiffTermJson {
                from: b.id,
                to: t.to,
                coeff: t.coeff,
            });
        }
    }
    ComplexJson {
        variables: cx.ctx().names().to_vec(),
        basis: cx.basis().to_vec(),
        diff,
        augmentation: cx.augmentation().to_vec(),
        construction: cx.construction().cloned(),
        unit: None,
        mul: None,
        gamma: None,
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn canonical_string(v: &impl Serialize) -> Result<String> {
    let value: Value = serde_json::to_value(v)?;
    let mut s = serde_json::to_string_pretty(&value)?;
    s.push('\n');
    Ok(s)
}

pub fn export_complex(cx: &FreeComplex) -> Result<String> {
    canonical_string(&complex_json(cx))
}

pub fn export_algebra(alg: &DGGammaAlgebra) -> Result<String> {
    let mut doc = complex_json(alg.complex());
    doc.unit = Some(alg.unit_id());
    doc.mul = Some(
        alg.mul_table()
            .entries()
            .map(|((left, right), p)| MulJson {
                left,
                right,
                terms: terms_json(p),
            })
            .collect(),
    );
    doc.gamma = Some(GammaJson {
        bound: alg.bound(),
        entries: alg
            .gamma_table()
            .entries()
            .map(|((id, k), p)| GammaEntryJson {
                id,
                k,
                terms: terms_json(p),
            })
            .collect(),
    });
    canonical_string(&doc)
}

/// Parses a complex or algebra document and validates it.
pub fn import(text: &str) -> Result<Document> {
    let doc: ComplexJson = serde_json::from_str(text)?;
    let ctx = VarContext::new(&doc.variables)?;
    let nv = ctx.len();
    let n = doc.basis.len();
    let mut diff = vec![ModuleElement::zero(); n];
    for t in &doc.diff {
        if t.from >= n {
            return Err(Error::UnknownBasis(t.from));
        }
        let (q, m) = t.coeff.parse(nv)?;
        diff[t.from].add_scaled(t.to, &RingElement::term(q, m));
    }
    let cx = FreeComplex::new(ctx, doc.basis, diff, doc.augmentation, doc.construction)?;
    match (doc.unit, doc.mul, doc.gamma) {
        (None, None, None) => Ok(Document::Complex(cx)),
        (Some(unit), Some(mul_json), Some(gamma_json)) => {
            let mut mul = MulTable::new(unit);
            for e in &mul_json {
                mul.insert(e.left, e.right, terms_from_json(&e.terms, nv)?);
            }
            let mut gamma = GammaTable::new(gamma_json.bound);
            for e in &gamma_json.entries {
                gamma.insert(e.id, e.k, terms_from_json(&e.terms, nv)?);
            }
            Ok(Document::Algebra(DGGammaAlgebra::new(cx, mul, gamma)?))
        }
        _ => Err(Error::Json(
            "algebra documents need all of `unit`, `mul` and `gamma`".into(),
        )),
    }
}

pub fn import_complex(text: &str) -> Result<FreeComplex> {
    Ok(import(text)?.complex().clone())
}

pub fn import_algebra(text: &str) -> Result<DGGammaAlgebra> {
    match import(text)? {
        Document::Algebra(a) => Ok(a),
        Document::Complex(_) => Err(Error::Json("document has no product table".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{koszul_principal, star_product, taylor, BuildOptions, SignMode};

    #[test]
    fn round_trips_are_byte_identical() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let o = BuildOptions::default();
        let p = |s: &str| c.parse(s).unwrap();
        let t = taylor(&c, &[p("x^2"), p("x*y"), p("y^3")], &o).unwrap();
        let s1 = export_algebra(&t).unwrap();
        let back = import_algebra(&s1).unwrap();
        assert_eq!(back, t);
        assert_eq!(export_algebra(&back).unwrap(), s1);

        let s1 = export_complex(t.complex()).unwrap();
        let back = import_complex(&s1).unwrap();
        assert_eq!(&back, t.complex());
        assert_eq!(export_complex(&back).unwrap(), s1);

        let k1 = koszul_principal(&c, &p("x"), &o).unwrap();
        let k2 = koszul_principal(&c, &p("y"), &o).unwrap();
        let s = star_product(&[k1, k2], SignMode::Unsigned, &o).unwrap();
        let text = export_algebra(&s).unwrap();
        assert!(text.contains("\"sign_mode\": \"unsigned\""));
        assert_eq!(export_algebra(&import_algebra(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn big_integers_are_strings() {
        let big = BigInt::from(i64::MAX) * 4;
        let r = BigIntRepr::from_bigint(&big);
        assert_eq!(r, BigIntRepr::Big(big.to_string()));
        assert_eq!(r.to_bigint().unwrap(), big);
        assert_eq!(BigIntRepr::from_bigint(&BigInt::from(-3)), BigIntRepr::Small(-3));
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(import("{"), Err(Error::Json(_))));
        let c = VarContext::new(&["x"]).unwrap();
        let t = taylor(&c, &[c.parse("x").unwrap()], &BuildOptions::default()).unwrap();
        let text = export_algebra(&t).unwrap().replace("\"den\": 1", "\"den\": 0");
        assert!(import(&text).is_err());
    }
}
