//! Axiom checkers for DG algebras and DG algebras with divided powers.
//!
//! Every checker evaluates both sides of an identity and records a
//! [`Violation`] when they differ. Basis-level instances are exhaustive;
//! general elements are drawn from a seeded generator so reports are
//! reproducible.

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::complex::ModuleElement;
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::report::{Check, Violation};

use super::random::{random_bidegree, random_element_of, random_elements, rng_for, Parity};
use super::DGGammaAlgebra;

/// Limits for the exhaustive and sampled parts of the checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckBudget {
    pub seed: u64,
    /// Random elements (or tuples) per sampled check.
    pub samples: usize,
    /// Basis triples checked exhaustively for associativity before sampling.
    pub assoc_cap: usize,
    /// Divided-power axioms 2 and 5 use all `h, k >= 1` with `h * k <= max_hk`.
    pub max_hk: usize,
    /// Largest `k` in the divided-power compatibility check of chain maps.
    pub max_map_power: usize,
}

impl Default for CheckBudget {
    fn default() -> Self {
        CheckBudget {
            seed: 42,
            samples: 200,
            assoc_cap: 20_000,
            max_hk: 6,
            max_map_power: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DgAxiom {
    Leibniz,
    Assoc,
    GradedComm,
    Unit,
    OddSquare,
}

impl DgAxiom {
    pub const ALL: [DgAxiom; 5] = [
        DgAxiom::Leibniz,
        DgAxiom::Assoc,
        DgAxiom::GradedComm,
        DgAxiom::Unit,
        DgAxiom::OddSquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DgAxiom::Leibniz => "leibniz",
            DgAxiom::Assoc => "assoc",
            DgAxiom::GradedComm => "graded_comm",
            DgAxiom::Unit => "unit",
            DgAxiom::OddSquare => "odd_square",
        }
    }
}

fn sign(exp: usize) -> Rational {
    if exp.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

struct Recorder<'a> {
    alg: &'a DGGammaAlgebra,
    violations: Vec<Violation>,
}

impl<'a> Recorder<'a> {
    fn new(alg: &'a DGGammaAlgebra) -> Self {
        Recorder {
            alg,
            violations: Vec::new(),
        }
    }

    fn compare(&mut self, location: impl FnOnce() -> String, lhs: &ModuleElement, rhs: &ModuleElement) {
        if lhs != rhs {
            let cx = self.alg.complex();
            self.violations
                .push(Violation::new(location(), cx.format_element(lhs), cx.format_element(rhs)));
        }
    }
}

/// Checks one DG algebra axiom on `alg`.
pub fn check_dg_axiom(alg: &DGGammaAlgebra, which: DgAxiom, budget: &CheckBudget) -> Result<Check> {
    let cx = alg.complex();
    let n = cx.len();
    let hd = |id: usize| cx.basis()[id].hdeg;
    let show = |x: &ModuleElement| cx.format_element(x);
    let mut rec = Recorder::new(alg);
    let mut notes = Vec::new();
    match which {
        DgAxiom::Leibniz => {
            for a in 0..n {
                let ea = alg.basis_element(a)?;
                let da = alg.diff(&ea)?;
                for b in 0..n {
                    let eb = alg.basis_element(b)?;
                    let lhs = alg.diff(&alg.basis_product(a, b))?;
                    let rhs = alg
                        .multiply(&da, &eb)?
                        .add(&alg.multiply(&ea, &alg.diff(&eb)?)?.scale_rational(&sign(hd(a))));
                    rec.compare(|| format!("d({} * {})", basis_name(alg, a), basis_name(alg, b)), &lhs, &rhs);
                }
            }
        }
        DgAxiom::GradedComm => {
            for a in 0..n {
                for b in 0..n {
                    let lhs = alg.basis_product(a, b);
                    let rhs = alg.basis_product(b, a).scale_rational(&sign(hd(a) * hd(b)));
                    rec.compare(|| format!("({}, {})", basis_name(alg, a), basis_name(alg, b)), &lhs, &rhs);
                }
            }
        }
        DgAxiom::Unit => {
            let one = alg.one();
            for a in 0..n {
                let ea = alg.basis_element(a)?;
                let left = alg.multiply(&one, &ea)?;
                let right = alg.multiply(&ea, &one)?;
                rec.compare(|| format!("1 * {}", basis_name(alg, a)), &left, &ea);
                rec.compare(|| format!("{} * 1", basis_name(alg, a)), &right, &ea);
            }
        }
        DgAxiom::OddSquare => {
            let zero = ModuleElement::zero();
            for a in (0..n).filter(|&a| hd(a) % 2 == 1) {
                let sq = alg.basis_product(a, a);
                rec.compare(|| format!("{}^2", basis_name(alg, a)), &sq, &zero);
            }
            let mut rng = rng_for(budget.seed, 11);
            for x in random_elements(cx, &mut rng, Parity::Odd, budget.samples) {
                let sq = alg.multiply(&x, &x)?;
                let loc = format!("({})^2", show(&x));
                rec.compare(|| loc, &sq, &zero);
            }
        }
        DgAxiom::Assoc => {
            let total = n.saturating_mul(n).saturating_mul(n);
            let exhaustive = total.min(budget.assoc_cap);
            let check = |rec: &mut Recorder, a: usize, b: usize, c: usize| -> Result<()> {
                let ec = alg.basis_element(c)?;
                let ea = alg.basis_element(a)?;
                let lhs = alg.multiply(&alg.basis_product(a, b), &ec)?;
                let rhs = alg.multiply(&ea, &alg.basis_product(b, c))?;
                rec.compare(
                    || format!("({} * {}) * {}", basis_name(alg, a), basis_name(alg, b), basis_name(alg, c)),
                    &lhs,
                    &rhs,
                );
                Ok(())
            };
            for t in 0..exhaustive {
                check(&mut rec, t / (n * n), (t / n) % n, t % n)?;
            }
            if exhaustive < total {
                let mut rng = rng_for(budget.seed, 12);
                for _ in 0..budget.samples {
                    let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                    check(&mut rec, a, b, c)?;
                }
                notes.push(format!(
                    "{exhaustive} of {total} triples exhaustive, {} sampled",
                    budget.samples
                ));
            }
        }
    }
    Ok(Check::new(which.name(), rec.violations).with_notes(notes))
}

fn basis_name(alg: &DGGammaAlgebra, id: usize) -> &str {
    &alg.complex().basis()[id].name
}

/// `(hk)! / (k! (h!)^k)`, the coefficient in `(x^(h))^(k) = c x^(hk)`.
pub fn axiom5_coefficient(h: usize, k: usize) -> Result<BigInt> {
    let fact = |n: usize| -> BigInt { (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)) };
    let hk = h.checked_mul(k).ok_or(Error::FactorialOverflow)?;
    let num = fact(hk);
    let den = fact(k) * num_traits::pow(fact(h), k);
    if (&num % &den) != BigInt::from(0) {
        return Err(Error::FactorialOverflow);
    }
    Ok(num / den)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Checks divided-power axiom `which` (1 through 6).
///
/// The element pool is every even positive-degree basis element plus
/// `budget.samples` random bihomogeneous elements. Instances that need a
/// divided power above the algebra's bound are counted in the notes and
/// not evaluated.
pub fn check_gamma_axiom(alg: &DGGammaAlgebra, which: u8, budget: &CheckBudget) -> Result<Check> {
    if !(1..=6).contains(&which) {
        return Err(Error::Input(format!("no divided-power axiom {which}")));
    }
    let cx = alg.complex();
    let n = cx.len();
    let bound = alg.bound();
    let hd = |id: usize| cx.basis()[id].hdeg;
    let even_basis: Vec<usize> = (0..n).filter(|&i| hd(i) > 0 && hd(i) % 2 == 0).collect();
    let mut rng = rng_for(budget.seed, 100 + which as u64);
    let mut pool: Vec<ModuleElement> = even_basis
        .iter()
        .map(|&i| alg.basis_element(i))
        .collect::<Result<_>>()?;
    pool.extend(random_elements(cx, &mut rng, Parity::EvenPositive, budget.samples));

    let show = |x: &ModuleElement| cx.format_element(x);
    let mut rec = Recorder::new(alg);
    let mut skipped = 0usize;
    let hk_pairs: Vec<(usize, usize)> = (1..=budget.max_hk)
        .flat_map(|h| (1..=budget.max_hk / h).map(move |k| (h, k)))
        .collect();

    match which {
        1 => {
            for x in &pool {
                let h = cx.hdeg_of(x)?.unwrap_or(0);
                let m = cx.mdeg_of(x)?.unwrap_or_else(|| cx.ctx().one());
                for k in 0..=bound {
                    let y = alg.divided_power(x, k)?;
                    match k {
                        0 => rec.compare(|| format!("({})^(0)", show(x)), &y, &alg.one()),
                        1 => rec.compare(|| format!("({})^(1)", show(x)), &y, x),
                        _ => {
                            if y.is_zero() {
                                continue;
                            }
                            let got_h = cx.hdeg_of(&y).ok().flatten();
                            let got_m = cx.mdeg_of(&y).ok().flatten();
                            let want_m = m.pow(k as u32)?;
                            if got_h != Some(k * h) || got_m.as_ref() != Some(&want_m) {
                                rec.violations.push(Violation::new(
                                    format!("bidegree of ({})^({k})", show(x)),
                                    format!(
                                        "({:?}, {})",
                                        got_h,
                                        got_m.map(|g| g.format(cx.ctx())).unwrap_or_else(|| "mixed".into())
                                    ),
                                    format!("(Some({}), {})", k * h, want_m.format(cx.ctx())),
                                ));
                            }
                        }
                    }
                }
            }
        }
        2 => {
            for x in &pool {
                for &(h, k) in &hk_pairs {
                    if h + k > bound {
                        skipped += 1;
                        continue;
                    }
                    let lhs = alg.multiply(&alg.divided_power(x, h)?, &alg.divided_power(x, k)?)?;
                    let c = Rational::from_integer(binomial(h + k, h));
                    let rhs = alg.divided_power(x, h + k)?.scale_rational(&c);
                    rec.compare(|| format!("x^({h}) x^({k}) for x = {}", show(x)), &lhs, &rhs);
                }
            }
        }
        3 => {
            let mut pairs: Vec<(ModuleElement, ModuleElement)> = Vec::new();
            for &a in &even_basis {
                for &b in &even_basis {
                    if hd(a) == hd(b) && cx.basis()[a].mdeg == cx.basis()[b].mdeg {
                        pairs.push((alg.basis_element(a)?, alg.basis_element(b)?));
                    }
                }
            }
            for _ in 0..budget.samples {
                let Some((h, m)) = random_bidegree(cx, &mut rng, Parity::EvenPositive) else {
                    break;
                };
                let x = random_element_of(cx, &mut rng, h, &m);
                let y = random_element_of(cx, &mut rng, h, &m);
                if let (Some(x), Some(y)) = (x, y) {
                    pairs.push((x, y));
                }
            }
            for (x, y) in &pairs {
                let s = x.add(y);
                if s.is_zero() {
                    continue;
                }
                for k in 1..=bound {
                    let lhs = alg.divided_power(&s, k)?;
                    let mut rhs = ModuleElement::zero();
                    for i in 0..=k {
                        rhs.add_assign(&alg.multiply(&alg.divided_power(x, i)?, &alg.divided_power(y, k - i)?)?);
                    }
                    rec.compare(
                        || format!("({} + {})^({k})", show(x), show(y)),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }
        4 => {
            let odd_basis: Vec<usize> = (0..n).filter(|&i| hd(i) % 2 == 1).collect();
            let even_all: Vec<usize> = (0..n).filter(|&i| hd(i) % 2 == 0).collect();
            let mut odd_pairs = Vec::new();
            for &a in &odd_basis {
                for &b in &odd_basis {
                    odd_pairs.push((alg.basis_element(a)?, alg.basis_element(b)?));
                }
            }
            let mut even_pairs = Vec::new();
            for &a in &even_all {
                for &b in &even_basis {
                    even_pairs.push((alg.basis_element(a)?, alg.basis_element(b)?));
                }
            }
            let odd_samples = random_elements(cx, &mut rng, Parity::Odd, budget.samples * 2);
            for pair in odd_samples.chunks_exact(2) {
                odd_pairs.push((pair[0].clone(), pair[1].clone()));
            }
            let xs = random_elements(cx, &mut rng, Parity::Even, budget.samples);
            let ys = random_elements(cx, &mut rng, Parity::EvenPositive, budget.samples);
            even_pairs.extend(xs.into_iter().zip(ys));
            let zero = ModuleElement::zero();
            for (x, y) in &odd_pairs {
                let xy = alg.multiply(x, y)?;
                for k in 2..=bound {
                    let lhs = alg.divided_power(&xy, k)?;
                    rec.compare(|| format!("({} * {})^({k}), odd factors", show(x), show(y)), &lhs, &zero);
                }
            }
            for (x, y) in &even_pairs {
                let xy = alg.multiply(x, y)?;
                for k in 2..=bound {
                    let lhs = alg.divided_power(&xy, k)?;
                    let rhs = alg.multiply(&alg.power(x, k)?, &alg.divided_power(y, k)?)?;
                    rec.compare(|| format!("({} * {})^({k})", show(x), show(y)), &lhs, &rhs);
                }
            }
        }
        5 => {
            for x in &pool {
                for &(h, k) in &hk_pairs {
                    if h > bound || k > bound || h * k > bound {
                        skipped += 1;
                        continue;
                    }
                    let inner = alg.divided_power(x, h)?;
                    let lhs = alg.divided_power(&inner, k)?;
                    let c = Rational::from_integer(axiom5_coefficient(h, k)?);
                    let rhs = alg.divided_power(x, h * k)?.scale_rational(&c);
                    rec.compare(|| format!("(x^({h}))^({k}) for x = {}", show(x)), &lhs, &rhs);
                }
            }
        }
        6 => {
            for x in &pool {
                let dx = alg.diff(x)?;
                for k in 1..=bound {
                    let lhs = alg.diff(&alg.divided_power(x, k)?)?;
                    let rhs = alg.multiply(&alg.divided_power(x, k - 1)?, &dx)?;
                    rec.compare(|| format!("d(x^({k})) for x = {}", show(x)), &lhs, &rhs);
                }
            }
        }
        _ => unreachable!(),
    }
    let mut notes = vec![format!(
        "{} basis elements, {} sampled elements, bound K = {bound}",
        even_basis.len(),
        pool.len() - even_basis.len()
    )];
    if skipped > 0 {
        notes.push(format!("{skipped} instances skipped: they need divided powers above K = {bound}"));
    }
    Ok(Check::new(format!("gamma_axiom_{which}"), rec.violations).with_notes(notes))
}

/// Runs all five DG axiom checks.
pub fn check_all_dg(alg: &DGGammaAlgebra, budget: &CheckBudget) -> Result<Vec<Check>> {
    DgAxiom::ALL
        .iter()
        .map(|&a| Check::timed(|| check_dg_axiom(alg, a, budget)))
        .collect()
}

/// Runs all six divided-power axiom checks.
pub fn check_all_gamma(alg: &DGGammaAlgebra, budget: &CheckBudget) -> Result<Vec<Check>> {
    (1..=6)
        .map(|w| Check::timed(|| check_gamma_axiom(alg, w, budget)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Label;
    use crate::constructions::{taylor, BuildOptions};
    use crate::monomial::VarContext;

    #[test]
    fn axiom5_coefficients() {
        assert_eq!(axiom5_coefficient(2, 3).unwrap(), BigInt::from(15));
        assert_eq!(axiom5_coefficient(1, 4).unwrap(), BigInt::from(1));
        assert_eq!(axiom5_coefficient(3, 2).unwrap(), BigInt::from(10));
        assert_eq!(binomial(7, 3), BigInt::from(35));
    }

    #[test]
    fn taylor_axioms_and_known_instances() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let gens: Vec<_> = ["x^2", "x*y", "y^3"].iter().map(|s| c.parse(s).unwrap()).collect();
        let opts = BuildOptions {
            max_divided_power: 7,
            ..BuildOptions::default()
        };
        let t = taylor(&c, &gens, &opts).unwrap();
        let budget = CheckBudget {
            samples: 40,
            ..CheckBudget::default()
        };
        for check in check_all_dg(&t, &budget).unwrap() {
            assert!(check.passed(), "{check}");
        }
        for check in check_all_gamma(&t, &budget).unwrap() {
            assert!(check.passed(), "{check}");
            assert_eq!(check.notes.len(), 1, "{check}");
        }

        let e12 = t
            .complex()
            .basis()
            .iter()
            .find(|b| b.label == Label::Subset(vec![0, 1]))
            .unwrap()
            .id;
        let e = t.basis_element(e12).unwrap();
        // e*e = 2 e^(2) with both sides zero.
        assert!(t.multiply(&e, &e).unwrap().is_zero());
        assert!(t.divided_power(&e, 2).unwrap().is_zero());
        // d(e^(2)) = e d(e), both zero.
        assert!(t.multiply(&e, &t.diff(&e).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn skipped_instances_are_reported_at_small_bound() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let gens: Vec<_> = ["x", "y"].iter().map(|s| c.parse(s).unwrap()).collect();
        let t = taylor(&c, &gens, &BuildOptions::default()).unwrap();
        let check = check_gamma_axiom(&t, 2, &CheckBudget { samples: 3, ..Default::default() }).unwrap();
        assert!(check.passed());
        assert!(check.notes.iter().any(|n| n.contains("skipped")));
        assert!(check_gamma_axiom(&t, 7, &CheckBudget::default()).is_err());
    }
}
