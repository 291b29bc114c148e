mod support;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tightlab_core::differentials::fitting_chain;
use tightlab_core::ideal_ops::{ideal_power, intersect, quotient, saturate};
use tightlab_core::*;

use support::suites::{grevlex_ring, to_core};
use support::{random_monomial_ideal, random_nonzero_poly, random_poly, render_monomial, VARS};

fn random_ideal(rng: &mut ChaCha8Rng, ring: &std::sync::Arc<Ring>, k: usize, deg: u32) -> Ideal {
    let n = ring.nvars();
    let p = ring.characteristic() as u64;
    let gens = (0..k).map(|_| to_core(&random_nonzero_poly(rng, n, p, deg, 3), ring)).collect();
    Ideal::new(ring, gens).unwrap()
}

fn poly(ring: &std::sync::Arc<Ring>, s: &str) -> Polynomial {
    parse_poly(ring, s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn redundant_relation_leaves_fitting_ideals_unchanged(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = grevlex_ring(7, 3);
        let i = random_ideal(&mut rng, &ring, 2, 3);
        if i.is_unit() {
            return Ok(());
        }
        let algebra = PresentedAlgebra::from_ideal(i.clone(), Flags::default());
        let m = jacobian_matrix(&algebra);
        let a = to_core(&random_poly(&mut rng, 3, 7, 1, 2), &ring);
        let b = to_core(&random_poly(&mut rng, 3, 7, 1, 2), &ring);
        let mut bigger = m.clone();
        let extra: Vec<Polynomial> = (0..m.cols())
            .map(|j| &(&a * m.entry(0, j)) + &(&b * m.entry(m.rows() - 1, j)))
            .collect();
        bigger.push_row("f_extra".into(), extra).unwrap();
        for k in 0..=m.cols() {
            let lhs = fitting_ideal(&m, k, &i).unwrap().ideal;
            let rhs = fitting_ideal(&bigger, k, &i).unwrap().ideal;
            prop_assert!(lhs.same_ideal(&rhs).unwrap(), "index {}", k);
        }
    }

    #[test]
    fn fitting_ideals_ascend(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = grevlex_ring(7, 3);
        let k = rng.gen_range(1..=3);
        let i = random_ideal(&mut rng, &ring, k, 3);
        let algebra = PresentedAlgebra::from_ideal(i.clone(), Flags::default());
        let chain = fitting_chain(&jacobian_matrix(&algebra), &i).unwrap();
        for w in chain.windows(2) {
            prop_assert!(w[1].ideal.contains_ideal(&w[0].ideal).unwrap());
        }
        prop_assert!(chain.last().unwrap().ideal.is_unit());
    }

    #[test]
    fn rank_is_bounded_by_local_height(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=4);
        let ring = grevlex_ring(0, n);
        let gens = random_monomial_ideal(&mut rng, n, 3, 2);
        let polys = gens.iter().map(|e| poly(&ring, &render_monomial(e, &VARS[..n]))).collect();
        let algebra = PresentedAlgebra::from_ideal(Ideal::new(&ring, polys).unwrap(), Flags::default());
        let comps = algebra.components(None).unwrap();
        let jac = jacobian_matrix(&algebra);
        for mask in 1u32..(1 << n) {
            let vars: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let q = PrimeWitness::of_variables(&ring, &vars);
            if !q.ideal.contains_ideal(algebra.defining_ideal()).unwrap() {
                continue;
            }
            let ht = comps.height_at(&q.ideal).unwrap().unwrap();
            prop_assert!(rank_at_prime(&jac, &q).unwrap() <= ht);
        }
    }

    #[test]
    fn jacobian_rows_are_linear_and_leibniz(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = grevlex_ring(7, 3);
        let f = to_core(&random_poly(&mut rng, 3, 7, 3, 4), &ring);
        let g = to_core(&random_poly(&mut rng, 3, 7, 3, 4), &ring);
        for j in 0..3 {
            prop_assert_eq!((&f + &g).derivative(j), &f.derivative(j) + &g.derivative(j));
            prop_assert_eq!((&f * &g).derivative(j), &(&f.derivative(j) * &g) + &(&f * &g.derivative(j)));
        }
    }

    #[test]
    fn bracket_power_ignores_generating_set(seed in any::<u64>(), e in 0u32..=1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = grevlex_ring(5, 3);
        let i = random_ideal(&mut rng, &ring, 2, 2);
        let q = 5u32.pow(e);
        let from_gb = Ideal::new(&ring, i.groebner().generators().to_vec()).unwrap();
        let a = frobenius_power(&i, q).unwrap();
        let b = frobenius_power(&from_gb, q).unwrap();
        prop_assert!(a.same_ideal(&b).unwrap());
    }

    #[test]
    fn bracket_power_inside_ordinary_power(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = grevlex_ring(3, 3);
        let i = random_ideal(&mut rng, &ring, 2, 2);
        let bracket = frobenius_power(&i, 3).unwrap();
        prop_assert!(ideal_power(&i, 3).unwrap().contains_ideal(&bracket).unwrap());
    }

    #[test]
    fn ideal_operation_containments(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = grevlex_ring(7, 3);
        let a = random_ideal(&mut rng, &ring, 2, 2);
        let b = random_ideal(&mut rng, &ring, 1, 2);
        let cap = intersect(&a, &b).unwrap();
        prop_assert!(a.contains_ideal(&cap).unwrap() && b.contains_ideal(&cap).unwrap());
        prop_assert!(cap.contains_ideal(&a.product(&b).unwrap()).unwrap());
        let colon = quotient(&a, &b).unwrap();
        prop_assert!(colon.contains_ideal(&a).unwrap());
        prop_assert!(a.contains_ideal(&colon.product(&b).unwrap()).unwrap());
        let f = b.generators()[0].clone();
        let sat = saturate(&a, &f).unwrap();
        prop_assert!(sat.contains_ideal(&colon).unwrap());
        prop_assert!(sat.contains_ideal(&a).unwrap());
    }
}

fn fermat(p: u32) -> (PresentedAlgebra, ComponentData) {
    let ring = grevlex_ring(p, 3);
    let flags = Flags { assume_equidimensional: true, assume_reduced: true };
    let a = PresentedAlgebra::from_ideal(Ideal::new(&ring, vec![poly(&ring, "x^3+y^3+z^3")]).unwrap(), flags);
    let c = a.components(Some(vec![a.defining_ideal().clone()])).unwrap();
    (a, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn certification_is_monotone_in_the_bound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, comps) = fermat(5);
        let ring = a.ring().clone();
        let u = to_core(&random_nonzero_poly(&mut rng, 3, 5, 2, 2), &ring);
        let i = Ideal::new(&ring, vec![poly(&ring, "x"), poly(&ring, "y")]).unwrap();
        let c = poly(&ring, ["x^2", "y^2", "z^2"][rng.gen_range(0..3)]);
        let top = tc_certify_in(&u, &i, &c, &a, &CharPContext::new(5, 2).unwrap(), Some(&comps)).unwrap();
        if top.status == TcStatus::CertifiedIn {
            for e in 0..2 {
                let v = tc_certify_in(&u, &i, &c, &a, &CharPContext::new(5, e).unwrap(), Some(&comps)).unwrap();
                prop_assert_eq!(v.status, TcStatus::CertifiedIn);
            }
        }
    }

    #[test]
    fn krull_check_is_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = fermat(7);
        let ring = a.ring().clone();
        let delta = to_core(&random_poly(&mut rng, 3, 7, 2, 2), &ring);
        let u = to_core(&random_poly(&mut rng, 3, 7, 2, 2), &ring);
        let i = Ideal::new(&ring, vec![poly(&ring, "x"), poly(&ring, "y")]).unwrap();
        let m = Ideal::maximal_at_origin(&ring);
        let rep = krull_truncation_check(&delta, &u, &i, &m, &a, 4).unwrap();
        prop_assert!(rep.monotone);
        if a.lift(&i).unwrap().contains(&(&delta * &u)).unwrap() {
            prop_assert!(rep.held_through);
        }
    }

    #[test]
    fn truncation_residual_lies_in_next_power(seed in any::<u64>(), n in 1u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = grevlex_ring(7, 3);
        let i = random_ideal(&mut rng, &ring, 2, 5);
        let a = PresentedAlgebra::from_ideal(i, Flags::default());
        let rep = truncate_presentation(&a, n, &Ideal::maximal_at_origin(&ring)).unwrap();
        prop_assert!(rep.residuals_ok);
    }
}
