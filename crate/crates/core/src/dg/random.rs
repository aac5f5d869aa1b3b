//! Seeded random bihomogeneous elements for the sampled checks.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{FreeComplex, ModuleElement};
use crate::linalg::rat;
use crate::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Even and positive homological degree.
    EvenPositive,
    /// Even homological degree, including 0.
    Even,
    Odd,
}

impl Parity {
    fn admits(self, hdeg: usize) -> bool {
        match self {
            Parity::EvenPositive => hdeg > 0 && hdeg.is_multiple_of(2),
            Parity::Even => hdeg.is_multiple_of(2),
            Parity::Odd => hdeg % 2 == 1,
        }
    }
}

/// Deterministic generator keyed by the caller's seed and a per-check salt.
pub fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Picks a bidegree `(h, M)` realised by at least one basis element of the
/// requested parity. `M` is the lcm of two degree-`h` multidegrees, times a
/// random squarefree monomial.
pub fn random_bidegree(cx: &FreeComplex, rng: &mut impl Rng, parity: Parity) -> Option<(usize, Monomial)> {
    let candidates: Vec<usize> = cx
        .basis()
        .iter()
        .filter(|b| parity.admits(b.hdeg))
        .map(|b| b.id)
        .collect();
    let &e0 = candidates.choose(rng)?;
    let h = cx.basis()[e0].hdeg;
    let same: Vec<usize> = cx.ids_in_degree(h).collect();
    let &e1 = same.choose(rng)?;
    let mut m = cx.basis()[e0].mdeg.lcm(&cx.basis()[e1].mdeg).ok()?;
    let extra: Vec<u32> = (0..cx.nvars()).map(|_| u32::from(rng.random_range(0..3) == 0)).collect();
    m = m.mul(&Monomial::from_exponents(extra)).ok()?;
    Some((h, m))
}

/// A random nonzero element of bidegree `(h, m)`, or `None` if no degree-`h`
/// basis element divides `m`.
pub fn random_element_of(cx: &FreeComplex, rng: &mut impl Rng, h: usize, m: &Monomial) -> Option<ModuleElement> {
    let support: Vec<usize> = cx
        .ids_in_degree(h)
        .filter(|&id| cx.basis()[id].mdeg.divides(m))
        .collect();
    let &forced = support.choose(rng)?;
    let mut x = ModuleElement::zero();
    for &id in &support {
        if id != forced && !rng.random_bool(0.5) {
            continue;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.random_range(-3i64..=3);
        }
        let coeff = m.quotient(&cx.basis()[id].mdeg).ok()?;
        x.add_assign(&ModuleElement::monomial_term(id, rat(c), coeff));
    }
    if x.is_zero() {
        None
    } else {
        Some(x)
    }
}

pub fn random_homogeneous(cx: &FreeComplex, rng: &mut impl Rng, parity: Parity) -> Option<ModuleElement> {
    let (h, m) = random_bidegree(cx, rng, parity)?;
    random_element_of(cx, rng, h, &m)
}

/// Up to `count` random elements; fewer if the parity class is empty.
pub fn random_elements(cx: &FreeComplex, rng: &mut impl Rng, parity: Parity, count: usize) -> Vec<ModuleElement> {
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 4 + 8 {
        attempts += 1;
        if let Some(x) = random_homogeneous(cx, rng, parity) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{taylor, BuildOptions};
    use crate::monomial::VarContext;

    #[test]
    fn samples_are_bihomogeneous_and_reproducible() {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let gens: Vec<_> = ["x*y", "y*z", "x*z", "x^2"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let cx = t.complex();
        let a = random_elements(cx, &mut rng_for(7, 1), Parity::EvenPositive, 30);
        let b = random_elements(cx, &mut rng_for(7, 1), Parity::EvenPositive, 30);
        assert_eq!(a, b);
        assert_eq!(a.len(), 30);
        for x in &a {
            let h = cx.hdeg_of(x).unwrap().unwrap();
            assert!(h > 0 && h.is_multiple_of(2));
            assert!(cx.mdeg_of(x).unwrap().is_some());
        }
        let odd = random_elements(cx, &mut rng_for(7, 2), Parity::Odd, 10);
        assert!(odd.iter().all(|x| cx.hdeg_of(x).unwrap().unwrap() % 2 == 1));
    }
}
