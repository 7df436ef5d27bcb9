mod common;

use catalan_ff::ffield::{enumerate_by_pole_order, CurveRef};
use catalan_ff::zeta::zeta_of_curve;
use catalan_ff::{Error, Parallelism, RingElement, DEFAULT_BUDGET};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn models() -> Vec<CurveRef> {
    vec![
        genus_one_f5(),
        trigonal_f7(),
        genus_two_f5(),
        rational(3, 2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pole_order_is_a_degree(which in 0usize..4, seed in any::<u64>()) {
        let c = &models()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(&mut rng, c, 4);
        let g = random_element(&mut rng, c, 4);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (df, dg) = (f.pole_order().unwrap(), g.pole_order().unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().pole_order().unwrap(), df + dg);
        if df < dg {
            prop_assert_eq!(f.add(&g).unwrap().pole_order().unwrap(), dg);
        }
        prop_assert_eq!(df == 0, f.is_constant());
        prop_assert_eq!(f.pow(3).pole_order().unwrap(), 3 * df);
    }

    #[test]
    fn ring_is_commutative_ring(which in 0usize..4, seed in any::<u64>()) {
        let c = &models()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&mut rng, c, 3);
        let b = random_element(&mut rng, c, 3);
        let d = random_element(&mut rng, c, 3);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b.add(&d).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&d).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&d).unwrap(), a.mul(&b.mul(&d).unwrap()).unwrap());
    }
}

proptest! {
    #[test]
    fn ring_roots_round_trip(which in 0usize..4, seed in any::<u64>(), m in 2u64..8) {
        let c = &models()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_element(&mut rng, c, 2);
        prop_assume!(!h.is_zero());
        let g = h.pow(m);
        let roots = g.mth_roots(m);
        prop_assert!(roots.contains(&h));
        for r in &roots {
            prop_assert_eq!(&r.pow(m), &g);
        }
        let k = c.field();
        let mut m_prime = m;
        while m_prime % k.characteristic() == 0 {
            m_prime /= k.characteristic();
        }
        let unity = k.elements().skip(1).filter(|&z| k.pow(z, m_prime) == k.one()).count();
        prop_assert_eq!(roots.len(), unity);
    }

    #[test]
    fn evaluation_is_a_homomorphism(which in 0usize..4, seed in any::<u64>()) {
        let c = &models()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&mut rng, c, 3);
        let b = random_element(&mut rng, c, 3);
        let k = c.field();
        for (x0, y0) in c.rational_points().into_iter().take(5) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.eval_at(x0, y0), k.mul(a.eval_at(x0, y0), b.eval_at(x0, y0)));
        }
    }

    #[test]
    fn ring_syntax_round_trips(which in 0usize..4, seed in any::<u64>()) {
        let c = &models()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&mut rng, c, 3);
        prop_assert_eq!(RingElement::parse(c, &a.to_string()).unwrap(), a);
    }
}

#[test]
fn non_power_has_no_roots_in_small_scan() {
    // every square in O_F with pole order <= 8 on the genus-one model comes
    // from an element of pole order <= 4
    let c = genus_one_f5();
    let squares: std::collections::HashSet<String> = enumerate_by_pole_order(&c, 4)
        .map(|h| h.pow(2).to_string())
        .collect();
    let mut found = 0;
    for g in enumerate_by_pole_order(&c, 4) {
        let roots = g.mth_roots(2);
        assert_eq!(!roots.is_empty(), squares.contains(&g.to_string()), "{g}");
        found += roots.len();
    }
    assert!(found > 0);
}

#[test]
fn enumeration_is_complete_and_ordered() {
    for c in [genus_one_f3(), rational(5, 1), trigonal_f7()] {
        let bound = 4;
        let all: Vec<RingElement> = enumerate_by_pole_order(&c, bound).collect();
        assert_eq!(all.len() as u128, c.count_up_to(bound));
        let orders: Vec<u64> = all.iter().map(|a| a.pole_order().unwrap()).collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]));
        let strings: std::collections::HashSet<String> = all.iter().map(|a| a.to_string()).collect();
        assert_eq!(strings.len(), all.len());
    }
}

#[test]
fn point_counts_match_double_loop() {
    for c in [genus_one_f5(), genus_one_f3(), genus_two_f5(), trigonal_f7()] {
        let q = c.q();
        let mut k = 1;
        while q.pow(k) <= 625 {
            let big = c.base_change(k).unwrap();
            let naive = naive_affine_points(c.e(), big.f()) + 1;
            let counted = c.count_points(k, DEFAULT_BUDGET, Parallelism::Sequential).unwrap();
            assert_eq!(counted, naive, "{c:?} over degree {k}");
            let threaded = c.count_points(k, DEFAULT_BUDGET, Parallelism::Threads(3)).unwrap();
            assert_eq!(threaded, counted);
            k += 1;
        }
    }
}

/// |N_k - (q^k + 1)| <= 2 g q^{k/2}.
#[test]
fn weil_bound_on_all_counts() {
    for c in [genus_one_f5(), genus_one_f3(), genus_two_f5(), trigonal_f7()] {
        let z = zeta_of_curve(&c, DEFAULT_BUDGET, Parallelism::Sequential).unwrap();
        let g = c.genus() as f64;
        for (k, &n) in z.counts.iter().enumerate() {
            let qk = (c.q() as f64).powi(k as i32 + 1);
            assert!(((n as f64) - (qk + 1.0)).abs() <= 2.0 * g * qk.sqrt() + 1e-9);
        }
    }
}

#[test]
fn higher_genus_models() {
    let c = genus_two_f5();
    assert_eq!(c.genus(), 2);
    // pole numbers of <2, 5>: gaps 1 and 3
    assert!(c.monomial_of_order(1).is_none() && c.monomial_of_order(3).is_none());
    assert!(c.monomial_of_order(5).is_some());
    let t = trigonal_f7();
    assert_eq!(t.genus(), 3);
    // <3, 4>: gaps 1, 2, 5
    let gaps: Vec<u64> = (0..12).filter(|&s| t.monomial_of_order(s).is_none()).collect();
    assert_eq!(gaps, vec![1, 2, 5]);
    let y = RingElement::y(&t);
    assert_eq!(y.pow(3), RingElement::from_poly(&t, t.f().clone()));
    let z = zeta_of_curve(&t, DEFAULT_BUDGET, Parallelism::Sequential).unwrap();
    assert!(z.self_checked());
    assert_eq!(z.lpoly.coeffs().len(), 7);
}

#[test]
fn invalid_models_rejected() {
    let k = field(5, 1);
    let f = catalan_ff::Polynomial::from_ints(&k, &[1, 0, 0, 0, 1]);
    assert!(matches!(
        catalan_ff::ffield::make_curve(&k, 2, f),
        Err(Error::NoRationalInfinitePlace(_))
    ));
    let sq = catalan_ff::Polynomial::from_ints(&k, &[0, 0, 1, 1]);
    assert!(matches!(
        catalan_ff::ffield::make_curve(&k, 2, sq),
        Err(Error::SingularModel)
    ));
    let cube = catalan_ff::Polynomial::from_ints(&k, &[1, 1, 0, 1]);
    assert!(matches!(
        catalan_ff::ffield::make_curve(&k, 5, cube),
        Err(Error::WildlyRamified)
    ));
}
