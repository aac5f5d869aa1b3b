//! Shared plumbing for algebras whose basis is tuples of factor basis elements.

use num_traits::One;

use crate::complex::{BasisElement, Label};
use crate::dg::DGGammaAlgebra;
use crate::error::Result;
use crate::linalg::Rational;
use crate::monomial::Monomial;

use super::TupleIndex;

pub(super) struct Shape<'a> {
    pub(super) fs: &'a [DGGammaAlgebra],
    pub(super) ix: TupleIndex,
}

impl<'a> Shape<'a> {
    pub(super) fn new(fs: &'a [DGGammaAlgebra]) -> Result<Self> {
        let ix = TupleIndex::new(fs.iter().map(|f| f.complex().len()).collect())?;
        Ok(Shape { fs, ix })
    }

    pub(super) fn len(&self) -> usize {
        self.ix.len()
    }

    pub(super) fn tuple(&self, id: usize) -> Vec<usize> {
        self.ix.tuple(id)
    }

    pub(super) fn id(&self, t: &[usize]) -> usize {
        self.ix.id(t)
    }

    pub(super) fn hdegs(&self, t: &[usize]) -> Vec<usize> {
        t.iter()
            .zip(self.fs)
            .map(|(&c, f)| f.complex().basis()[c].hdeg)
            .collect()
    }

    pub(super) fn mdegs(&self, t: &[usize]) -> Vec<&'a Monomial> {
        t.iter()
            .zip(self.fs)
            .map(|(&c, f)| &f.complex().basis()[c].mdeg)
            .collect()
    }

    pub(super) fn unit_id(&self) -> usize {
        let t: Vec<usize> = self.fs.iter().map(|f| f.unit_id()).collect();
        self.id(&t)
    }

    /// Tuple basis with multidegree `combine(component multidegrees)` and
    /// names like `(a ⊗ b)`.
    pub(super) fn basis(
        &self,
        combine: impl Fn(&[&Monomial]) -> Result<Monomial>,
        sep: &str,
    ) -> Result<Vec<BasisElement>> {
        (0..self.len())
            .map(|id| {
                let t = self.tuple(id);
                let names: Vec<&str> = t
                    .iter()
                    .zip(self.fs)
                    .map(|(&c, f)| f.complex().basis()[c].name.as_str())
                    .collect();
                Ok(BasisElement {
                    id,
                    hdeg: self.hdegs(&t).iter().sum(),
                    mdeg: combine(&self.mdegs(&t))?,
                    label: Label::Tuple(t),
                    name: format!("({})", names.join(sep)),
                })
            })
            .collect()
    }
}

/// Calls `f(tuple, product of scalars, product of monomials, per-slot monomials)`
/// once for every choice of one term per slot.
pub(super) fn expand(
    components: &[Vec<(usize, Rational, Monomial)>],
    nvars: usize,
    f: &mut impl FnMut(&[usize], &Rational, &Monomial, &[&Monomial]) -> Result<()>,
) -> Result<()> {
    fn go<'c>(
        components: &'c [Vec<(usize, Rational, Monomial)>],
        tuple: &mut Vec<usize>,
        monos: &mut Vec<&'c Monomial>,
        c: Rational,
        m: Monomial,
        f: &mut impl FnMut(&[usize], &Rational, &Monomial, &[&Monomial]) -> Result<()>,
    ) -> Result<()> {
        let Some((first, rest)) = components.split_first() else {
            return f(tuple, &c, &m, monos);
        };
        for (id, ci, mi) in first {
            tuple.push(*id);
            monos.push(mi);
            go(rest, tuple, monos, &c * ci, m.mul(mi)?, f)?;
            monos.pop();
            tuple.pop();
        }
        Ok(())
    }
    go(
        components,
        &mut Vec::with_capacity(components.len()),
        &mut Vec::with_capacity(components.len()),
        Rational::one(),
        Monomial::one(nvars),
        f,
    )
}

pub(super) fn koszul_sign(exponent: usize) -> Rational {
    if exponent.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `sum_i |g_i| * sum_{j > i} |f_j|`, the exponent of the sign in
/// `(f_1 ... f_r)(g_1 ... g_r)`.
pub(super) fn product_sign_exponent(f: &[usize], g: &[usize]) -> usize {
    (0..f.len())
        .map(|i| g[i] * f[i + 1..].iter().sum::<usize>())
        .sum()
}

/// Component powers for the divided-power formula at `slot`: the `k`-th
/// divided power there and ordinary `k`-th powers elsewhere.
pub(super) fn gamma_components(
    fs: &[DGGammaAlgebra],
    t: &[usize],
    k: usize,
    slot: usize,
) -> Result<Vec<Vec<(usize, Rational, Monomial)>>> {
    t.iter()
        .zip(fs)
        .enumerate()
        .map(|(l, (&c, f))| {
            let e = f.basis_element(c)?;
            let p = if l == slot {
                f.divided_power(&e, k)?
            } else {
                f.power(&e, k)?
            };
            Ok(p.monomial_terms())
        })
        .collect()
}
