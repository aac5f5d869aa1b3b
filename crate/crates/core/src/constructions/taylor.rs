use std::collections::HashMap;

use crate::complex::{BasisElement, Construction, FreeComplex, Label, ModuleElement};
use crate::dg::{DGGammaAlgebra, GammaTable, MulTable};
use crate::error::{Error, Result};
use crate::linalg::rat;
use crate::monomial::{lcm_all, Monomial, VarContext};

use super::BuildOptions;

/// The Taylor basis has `2^r` elements, so `r` is capped.
pub const MAX_TAYLOR_GENERATORS: usize = 12;

fn subset_name(s: &[usize]) -> String {
    if s.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("e{{{}}}", parts.join(","))
}

fn parity(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Taylor resolution of `R/(gens)` with the shuffle-sign product and zero higher
/// divided powers. Basis ids run through subsets by size, then
/// lexicographically; the empty subset is the unit.
pub fn taylor(ctx: &VarContext, gens: &[Monomial], opts: &BuildOptions) -> Result<DGGammaAlgebra> {
    if gens.is_empty() {
        return Err(Error::EmptyInput("Taylor resolution needs at least one generator"));
    }
    if gens.len() > MAX_TAYLOR_GENERATORS {
        return Err(Error::Construction(format!(
            "{} generators exceed the Taylor cap of {MAX_TAYLOR_GENERATORS}",
            gens.len()
        )));
    }
    for g in gens {
        ctx.check(g)?;
        if g.is_one() && !opts.allow_unit_generators {
            return Err(Error::Construction("generator 1 is not allowed".into()));
        }
    }
    let r = gens.len();
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << r)
        .map(|mask| (0..r).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<Vec<usize>, usize> = subsets.iter().cloned().zip(0..).collect();

    let mdeg = |s: &[usize]| {
        if s.is_empty() {
            Ok(ctx.one())
        } else {
            lcm_all(s.iter().map(|&i| &gens[i]))
        }
    };
    let mut basis = Vec::with_capacity(subsets.len());
    for (id, s) in subsets.iter().enumerate() {
        basis.push(BasisElement {
            id,
            hdeg: s.len(),
            mdeg: mdeg(s)?,
            label: if s.is_empty() { Label::Unit } else { Label::Subset(s.clone()) },
            name: subset_name(s),
        });
    }

    let mut diff = Vec::with_capacity(subsets.len());
    for (id, s) in subsets.iter().enumerate() {
        let mut d = ModuleElement::zero();
        for (pos, &i) in s.iter().enumerate() {
            let face: Vec<usize> = s.iter().copied().filter(|&j| j != i).collect();
            let fid = index[&face];
            let coeff = basis[id].mdeg.quotient(&basis[fid].mdeg)?;
            d.add_assign(&ModuleElement::monomial_term(fid, rat(parity(pos)), coeff));
        }
        diff.push(d);
    }

    let cx = FreeComplex::new(
        ctx.clone(),
        basis,
        diff,
        gens.to_vec(),
        Some(Construction::Taylor {
            generators: gens.to_vec(),
        }),
    )?;

    let mut mul = MulTable::new(0);
    for (a, v) in subsets.iter().enumerate() {
        for (b, w) in subsets.iter().enumerate() {
            if v.iter().any(|i| w.contains(i)) {
                continue;
            }
            let crossings: usize = v.iter().map(|&i| w.iter().filter(|&&j| j < i).count()).sum();
            let mut union: Vec<usize> = v.iter().chain(w).copied().collect();
            union.sort_unstable();
            let u = index[&union];
            let b_cx = cx.basis();
            let coeff = b_cx[a].mdeg.mul(&b_cx[b].mdeg)?.quotient(&b_cx[u].mdeg)?;
            mul.insert(a, b, ModuleElement::monomial_term(u, rat(parity(crossings)), coeff));
        }
    }
    DGGammaAlgebra::new(cx, mul, GammaTable::new(opts.max_divided_power))
}
