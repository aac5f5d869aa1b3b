//! Degree-`b` strands and rank-based exactness checks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::monomial::{lcm_closure, Monomial};
use crate::report::{Check, Violation};

use super::FreeComplex;

pub const DEFAULT_BOX_CELL_CAP: u128 = 100_000;

/// Which multidegrees `verify_resolution` inspects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrandMode {
    /// The lcm-closure of the basis multidegrees, plus `1` and the
    /// augmentation generators.
    Lattice,
    /// Every `b` dividing `bound`, provided the box has at most `cap` cells.
    Box { bound: Monomial, cap: u128 },
}

/// Matrices of the strand at `b`: entry `i - 1` is the map from degree `i`
/// to degree `i - 1`, restricted to basis elements whose multidegree divides `b`.
pub fn strand(cx: &FreeComplex, b: &Monomial) -> Result<Vec<DenseMatrix>> {
    cx.ctx().check(b)?;
    let alive: Vec<Vec<usize>> = (0..=cx.max_hdeg())
        .map(|i| cx.ids_in_degree(i).filter(|&id| cx.basis[id].mdeg.divides(b)).collect())
        .collect();
    let mut mats = Vec::with_capacity(cx.max_hdeg());
    for i in 1..=cx.max_hdeg() {
        let rows = &alive[i - 1];
        let cols = &alive[i];
        let mut m = DenseMatrix::zeros(rows.len(), cols.len());
        for (c, &col) in cols.iter().enumerate() {
            for (id, coeff) in cx.diff[col].terms() {
                if let Some(r) = rows.iter().position(|&x| x == id) {
                    let (q, _) = coeff.single_term().expect("validated at construction");
                    m.set(r, c, q.clone());
                }
            }
        }
        mats.push(m);
    }
    Ok(mats)
}

pub fn strand_test_set(cx: &FreeComplex, mode: &StrandMode) -> Result<Vec<Monomial>> {
    match mode {
        StrandMode::Lattice => {
            let mdegs: Vec<Monomial> = cx.basis.iter().map(|b| b.mdeg.clone()).collect();
            let mut set: BTreeSet<Monomial> = lcm_closure(&mdegs)?;
            set.insert(cx.ctx().one());
            set.extend(cx.augmentation().iter().cloned());
            Ok(set.into_iter().collect())
        }
        StrandMode::Box { bound, cap } => {
            cx.ctx().check(bound)?;
            let cells = bound
                .exponents()
                .iter()
                .try_fold(1u128, |acc, &e| acc.checked_mul(e as u128 + 1))
                .unwrap_or(u128::MAX);
            if cells > *cap {
                return Err(Error::BoxTooLarge { cells, cap: *cap });
            }
            let mut out = vec![Vec::new()];
            for &e in bound.exponents() {
                out = out
                    .into_iter()
                    .flat_map(|prefix: Vec<u32>| {
                        (0..=e).map(move |k| {
                            let mut p = prefix.clone();
                            p.push(k);
                            p
                        })
                    })
                    .collect();
            }
            Ok(out.into_iter().map(Monomial::from_exponents).collect())
        }
    }
}

/// Checks, strand by strand, that `cx` resolves `R / (augmentation)`.
///
/// In positive degrees exactness means `rank d_i + rank d_{i+1} = dim_i`.
/// In degree 0 the cokernel of `d_1` must be one-dimensional exactly when
/// no augmentation generator divides `b`.
pub fn verify_resolution(cx: &FreeComplex, mode: &StrandMode) -> Result<Check> {
    if cx.augmentation().is_empty() {
        return Err(Error::EmptyInput("complex has no augmentation generators"));
    }
    let tests = strand_test_set(cx, mode)?;
    let ctx = cx.ctx();
    let mut violations = Vec::new();
    for b in &tests {
        let mats = strand(cx, b)?;
        let ranks: Vec<usize> = mats.iter().map(DenseMatrix::rank).collect();
        let rank_at = |i: usize| if i >= 1 && i <= ranks.len() { ranks[i - 1] } else { 0 };
        for i in 1..=cx.max_hdeg() {
            let dim = mats[i - 1].cols();
            let lhs = rank_at(i) + rank_at(i + 1);
            if lhs != dim {
                violations.push(Violation::new(
                    format!("b={}, hdeg {i}", b.format(ctx)),
                    format!("rank d_{i} + rank d_{} = {lhs}", i + 1),
                    format!("strand dimension {dim}"),
                ));
            }
        }
        let in_ideal = cx.augmentation().iter().any(|g| g.divides(b));
        let expected = usize::from(in_ideal);
        if rank_at(1) != expected {
            violations.push(Violation::new(
                format!("b={}, hdeg 0", b.format(ctx)),
                format!("rank d_1 = {}", rank_at(1)),
                format!("{expected} (b {} the ideal)", if in_ideal { "in" } else { "not in" }),
            ));
        }
    }
    let mode_note = match mode {
        StrandMode::Lattice => format!("lattice mode, {} strands", tests.len()),
        StrandMode::Box { .. } => format!("box mode, {} strands", tests.len()),
    };
    Ok(Check::new("resolution", violations).with_notes(vec![mode_note]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Label;
    use crate::constructions::{koszul_principal, star_product, taylor, BuildOptions, SignMode};
    use crate::linalg::{rat, DenseMatrix};
    use crate::monomial::VarContext;

    fn setup() -> (VarContext, FreeComplex) {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let gens = vec![c.parse("x*y").unwrap(), c.parse("y*z").unwrap()];
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        (c, t.complex().clone())
    }

    #[test]
    fn strand_examples() {
        let (c, cx) = setup();
        let s = strand(&cx, &c.parse("x*y*z").unwrap()).unwrap();
        assert_eq!(s[0], DenseMatrix::from_i64(&[vec![1, 1]]));
        assert_eq!(s[1], DenseMatrix::from_rows(vec![vec![rat(-1)], vec![rat(1)]]));

        let s = strand(&cx, &c.one()).unwrap();
        assert_eq!((s[0].rows(), s[0].cols()), (1, 0));
        assert_eq!((s[1].rows(), s[1].cols()), (0, 0));

        let s = strand(&cx, &c.parse("x*y").unwrap()).unwrap();
        assert_eq!(s[0], DenseMatrix::from_i64(&[vec![1]]));
    }

    #[test]
    fn strand_context_mismatch() {
        let (_, cx) = setup();
        assert!(matches!(
            strand(&cx, &Monomial::one(2)),
            Err(Error::ContextMismatch { .. })
        ));
    }

    #[test]
    fn taylor_resolves_in_lattice_and_box_mode() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let gens: Vec<_> = ["x^2", "x*y", "y^3"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let check = verify_resolution(t.complex(), &StrandMode::Lattice).unwrap();
        assert!(check.passed(), "{check}");
        assert_eq!(strand_test_set(t.complex(), &StrandMode::Lattice).unwrap().len(), 7);

        let bx = StrandMode::Box {
            bound: c.parse("x^3*y^4").unwrap(),
            cap: DEFAULT_BOX_CELL_CAP,
        };
        assert!(verify_resolution(t.complex(), &bx).unwrap().passed());
        let too_big = StrandMode::Box {
            bound: c.parse("x^400*y^400").unwrap(),
            cap: DEFAULT_BOX_CELL_CAP,
        };
        assert!(matches!(
            verify_resolution(t.complex(), &too_big),
            Err(Error::BoxTooLarge { .. })
        ));
    }

    #[test]
    fn star_of_taylors_resolves_sum() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let p = |s: &str| c.parse(s).unwrap();
        let o = BuildOptions::default();
        let f1 = taylor(&c, &[p("x^2"), p("x*y")], &o).unwrap();
        let f2 = taylor(&c, &[p("y^3")], &o).unwrap();
        let s = star_product(&[f1, f2], SignMode::Corrected, &o).unwrap();
        assert!(verify_resolution(s.complex(), &StrandMode::Lattice).unwrap().passed());
        assert_eq!(s.complex().augmentation().len(), 3);
    }

    #[test]
    fn deleted_generator_fails_in_degree_zero() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let gens: Vec<_> = ["x^2", "x*y", "y^3"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let cx = t.complex();
        let trimmed = FreeComplex::new(
            cx.ctx().clone(),
            cx.basis().to_vec(),
            (0..cx.len()).map(|i| cx.differential(i).unwrap().clone()).collect(),
            gens[..2].to_vec(),
            None,
        )
        .unwrap();
        let check = verify_resolution(&trimmed, &StrandMode::Lattice).unwrap();
        assert!(!check.passed());
        assert!(check.violations.iter().any(|v| v.location == "b=y^3, hdeg 0"));
    }

    #[test]
    fn koszul_resolves_principal_quotient() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        for u in ["x", "x^2*y", "y^5"] {
            let k = koszul_principal(&c, &c.parse(u).unwrap(), &BuildOptions::default()).unwrap();
            assert!(verify_resolution(k.complex(), &StrandMode::Lattice).unwrap().passed());
        }
    }

    #[test]
    fn strand_outside_lattice_matches_join() {
        // The strand at b coincides with the strand at the join of the
        // basis multidegrees dividing b.
        let c = VarContext::new(&["x", "y"]).unwrap();
        let gens: Vec<_> = ["x^2", "x*y", "y^3"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let cx = t.complex();
        for a in 0..5u32 {
            for b in 0..5u32 {
                let m = Monomial::from_exponents(vec![a, b]);
                let join = cx
                    .basis()
                    .iter()
                    .filter(|e| e.mdeg.divides(&m))
                    .fold(c.one(), |acc, e| acc.lcm(&e.mdeg).unwrap());
                assert_eq!(strand(cx, &m).unwrap(), strand(cx, &join).unwrap());
            }
        }
        assert!(cx.basis().iter().any(|b| b.label == Label::Unit));
    }
}
