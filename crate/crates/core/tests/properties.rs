use proptest::prelude::*;
use rand::seq::SliceRandom;

use gammares::complex::{strand, StrandMode};
use gammares::constructions::{star_product, taylor, BuildOptions, SignMode};
use gammares::dg::random::{random_elements, rng_for, Parity};
use gammares::linalg::Rational;
use gammares::monomial::lcm_closure;
use gammares::scarf::sqf_decompose;
use gammares::{DGGammaAlgebra, ModuleElement, Monomial, VarContext};

fn mono(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..5, n).prop_map(Monomial::from_exponents)
}

fn proper_mono(n: usize) -> impl Strategy<Value = Monomial> {
    mono(n).prop_filter("a proper generator", |m| !m.is_one())
}

fn taylor_xyz(gens: &[Monomial]) -> DGGammaAlgebra {
    let c = VarContext::new(&["x", "y", "z"]).unwrap();
    taylor(&c, gens, &BuildOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lcm_gcd_laws(a in mono(3), b in mono(3), c in mono(3)) {
        let l = a.lcm(&b).unwrap();
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.divides(&l) && b.divides(&l));
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert_eq!(l.mul(&g).unwrap(), a.mul(&b).unwrap());
        prop_assert_eq!(l.lcm(&c).unwrap(), a.lcm(&b.lcm(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().quotient(&b).unwrap(), a.clone());
    }

    #[test]
    fn format_parse_round_trip(a in mono(3)) {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        prop_assert_eq!(c.parse(&a.format(&c)).unwrap(), a);
    }

    #[test]
    fn sqf_decomposition(m in mono(4)) {
        let d = sqf_decompose(&m);
        prop_assert!(d.sqf.is_squarefree());
        prop_assert_eq!(d.u.mul(&d.sqf).unwrap(), m.clone());
        prop_assert!(d.sqf.divides(&m));
    }

    #[test]
    fn lcm_closure_is_join_closed(gens in prop::collection::vec(mono(3), 1..5)) {
        let closed = lcm_closure(&gens).unwrap();
        for a in &closed {
            for b in &closed {
                prop_assert!(closed.contains(&a.lcm(b).unwrap()));
            }
        }
        for g in &gens {
            prop_assert!(closed.contains(g));
        }
    }

    #[test]
    fn strands_nest_under_divisibility(gens in prop::collection::vec(proper_mono(3), 1..4), extra in mono(3)) {
        let t = taylor_xyz(&gens);
        let cx = t.complex();
        let top = cx.basis().last().unwrap().mdeg.clone();
        let bigger = top.mul(&extra).unwrap();
        let small = strand(cx, &top).unwrap();
        let large = strand(cx, &bigger).unwrap();
        for (s, l) in small.iter().zip(&large) {
            prop_assert!(s.rows() <= l.rows() && s.cols() <= l.cols());
        }
        let r = gammares::complex::verify_resolution(cx, &StrandMode::Lattice).unwrap();
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn multiplication_is_bilinear(seed in 0u64..1000) {
        let c = VarContext::new(&["x", "y", "z"]).unwrap();
        let p = |s: &str| c.parse(s).unwrap();
        let t = taylor(&c, &[p("x*y"), p("y*z"), p("x^2")], &BuildOptions::default()).unwrap();
        let cx = t.complex();
        let mut rng = rng_for(seed, 1);
        let xs = random_elements(cx, &mut rng, Parity::Even, 2);
        let ys = random_elements(cx, &mut rng, Parity::Odd, 1);
        let (x1, x2, y) = (&xs[0], &xs[1], &ys[0]);
        let q = Rational::new(3.into(), 2.into());
        let lhs = t.multiply(&x1.add(&x2.scale_rational(&q)), y).unwrap();
        let rhs = t.multiply(x1, y).unwrap().add(&t.multiply(x2, y).unwrap().scale_rational(&q));
        prop_assert_eq!(lhs, rhs);
        let lhs = t.multiply(y, &x1.add(x2)).unwrap();
        let rhs = t.multiply(y, x1).unwrap().add(&t.multiply(y, x2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_power_ignores_term_order(seed in 0u64..1000) {
        let c = VarContext::new(&["x", "y", "z", "w"]).unwrap();
        let p = |s: &str| c.parse(s).unwrap();
        let fs = [
            taylor(&c, &[p("x*y"), p("y*z")], &BuildOptions::default()).unwrap(),
            taylor(&c, &[p("z*w"), p("w*x")], &BuildOptions::default()).unwrap(),
        ];
        let s = star_product(&fs, SignMode::Corrected, &BuildOptions::default()).unwrap();
        let cx = s.complex();
        let mut rng = rng_for(seed, 2);
        let x = random_elements(cx, &mut rng, Parity::EvenPositive, 1).remove(0);
        let mut terms = x.monomial_terms();
        terms.shuffle(&mut rng);
        let cut = terms.len() / 2;
        let part = |ts: &[(usize, Rational, Monomial)]| {
            ts.iter().fold(ModuleElement::zero(), |acc, (id, q, m)| {
                acc.add(&ModuleElement::monomial_term(*id, q.clone(), m.clone()))
            })
        };
        let (a, b) = (part(&terms[..cut]), part(&terms[cut..]));
        prop_assert_eq!(a.add(&b), x.clone());
        for k in 0..=s.bound() {
            let mut sum = ModuleElement::zero();
            for i in 0..=k {
                let ai = s.divided_power(&a, i).unwrap();
                let bj = s.divided_power(&b, k - i).unwrap();
                sum.add_assign(&s.multiply(&ai, &bj).unwrap());
            }
            prop_assert_eq!(s.divided_power(&x, k).unwrap(), sum);
        }
    }
}
