use proptest::prelude::*;
use verlinde::labels::{GrothendieckVector, MinimalLabel, PiLabel, SingletLabel, Sl2Label};
use verlinde::scalar::{expi_pi, RationalPhase};
use verlinde::semisimple::{heis_qdim, pi0_fusion, pi0_qdim, vir_fusion_product, HeisenbergTheory};
use verlinde::sl2::{self, ProjectiveObject};
use verlinde::theory::{Kac, SingletTheory};
use verlinde::Rational64;

const KACS: [(i64, i64); 4] = [(3, 2), (5, 2), (4, 3), (5, 3)];

fn kac() -> impl Strategy<Value = Kac> {
    (0..KACS.len()).prop_map(|i| Kac::new(KACS[i].0, KACS[i].1).unwrap())
}

fn close(a: num_complex::Complex<f64>, b: num_complex::Complex<f64>, eps: f64) -> bool {
    (a - b).norm() <= eps * b.norm().max(1.0)
}

/// A canonical Std or D⁺ label; λ avoids a neighbourhood of every atypical weight.
fn sl2_label(k: Kac) -> impl Strategy<Value = Sl2Label<f64>> {
    let (u, v) = (k.u, k.v);
    prop_oneof![
        (-3i64..=3, 0.0f64..2.0, 1..u, 1..v).prop_filter_map("generic weight", move |(l, lam, r, s)| {
            match Sl2Label::standard(&k, l, lam, r, s).ok()? {
                x @ Sl2Label::Std { .. } => {
                    let near = (1..u).flat_map(|a| (1..v).map(move |b| (a, b))).any(|(a, b)| {
                        let w: f64 = Sl2Label::<f64>::atypical_weight(&k, a, b);
                        let d = (lam - w).rem_euclid(2.0);
                        d.min(2.0 - d) < 1e-3
                    });
                    (!near).then_some(x)
                }
                _ => None,
            }
        }),
        (-3i64..=3, 1..u, 1..v).prop_map(move |(l, r, s)| Sl2Label::DPlus { ell: l, r, s }.canonicalize(&k).unwrap()),
    ]
}

fn minimal_vector(k: Kac) -> impl Strategy<Value = GrothendieckVector<MinimalLabel>> {
    let labels = k.labels();
    let n = labels.len();
    prop::collection::vec((0..n, -4i64..=4), 0..6)
        .prop_map(move |t| GrothendieckVector::from_terms(t.into_iter().map(|(i, c)| (labels[i], c))))
}

proptest! {
    #[test]
    fn phase_reduction_is_idempotent(num in -200i64..200, den in 1i64..40) {
        let p = RationalPhase::new(num, den).unwrap();
        let e = p.exponent();
        prop_assert!(e >= Rational64::from_integer(0) && e < Rational64::from_integer(2));
        prop_assert_eq!(RationalPhase::from_ratio(e), p);
        let direct: num_complex::Complex<f64> = expi_pi(num as f64 / den as f64);
        prop_assert!(close(p.eval(), direct, 1e-12));
    }

    #[test]
    fn phase_product_is_a_homomorphism(a in -50i64..50, b in -50i64..50, da in 1i64..12, db in 1i64..12) {
        let (p, q) = (RationalPhase::new(a, da).unwrap(), RationalPhase::new(b, db).unwrap());
        let lhs: num_complex::Complex<f64> = (p * q).eval();
        prop_assert!(close(lhs, p.eval::<f64>() * q.eval::<f64>(), 1e-12));
        prop_assert_eq!(p * p.conj(), RationalPhase::one());
    }

    #[test]
    fn sl2_canonicalize_is_idempotent(k in kac(), pick in 0usize..6, l in -5i64..5, r in 1i64..5, s in 1i64..3, lam in 0.0f64..6.0) {
        let (r, s) = (1 + (r - 1) % (k.u - 1), 1 + (s - 1) % (k.v - 1));
        let x: Sl2Label<f64> = match pick {
            0 => Sl2Label::Std { ell: l, lambda: lam, r, s },
            1 => Sl2Label::EPlus { ell: l, r, s },
            2 => Sl2Label::EMinus { ell: l, r, s },
            3 => Sl2Label::DPlus { ell: l, r, s },
            4 => Sl2Label::DMinus { ell: l, r, s },
            _ => Sl2Label::L { ell: l, r },
        };
        let c = x.canonicalize(&k).unwrap();
        prop_assert_eq!(c.canonicalize(&k).unwrap(), c);
        if let Ok((l2, r2, s2)) = c.as_d_plus(&k) {
            prop_assert_eq!(Sl2Label::<f64>::DPlus { ell: l2, r: r2, s: s2 }.canonicalize(&k).unwrap(), c);
        }
    }

    #[test]
    fn singlet_canonicalize_is_idempotent(p in 2i64..6, r in -4i64..4, s in 1i64..5, lam in -3.0f64..3.0) {
        let th = SingletTheory::new(p).unwrap();
        let s = 1 + (s - 1) % (p - 1);
        for x in [SingletLabel::<f64>::fock(&th, lam), SingletLabel::atypical(&th, r, s).unwrap(), SingletLabel::m(&th, r, s).unwrap()] {
            let c = x.canonicalize(&th).unwrap();
            prop_assert_eq!(c.canonicalize(&th).unwrap(), c);
        }
    }

    #[test]
    fn grothendieck_vectors_form_a_group((a, b, c) in kac().prop_flat_map(|k| (minimal_vector(k), minimal_vector(k), minimal_vector(k)))) {
        let mut ab = a.clone();
        ab.add(&b);
        let mut ba = b.clone();
        ba.add(&a);
        prop_assert_eq!(&ab, &ba);
        let mut ab_c = ab.clone();
        ab_c.add(&c);
        let mut bc = b.clone();
        bc.add(&c);
        let mut a_bc = a.clone();
        a_bc.add(&bc);
        prop_assert_eq!(&ab_c, &a_bc);
        let mut zero = a.clone();
        zero.add_scaled(&a, -1);
        prop_assert!(zero.is_zero());
        for (l, n) in a.terms() {
            prop_assert!(*n != 0);
            prop_assert_eq!(ab.coefficient(l), n + b.coefficient(l));
        }
    }

    #[test]
    fn minimal_fusion_is_commutative_with_unit(k in kac(), i in 0usize..8, j in 0usize..8) {
        let labels = k.labels();
        let (a, b) = (labels[i % labels.len()], labels[j % labels.len()]);
        prop_assert_eq!(vir_fusion_product(&k, &a, &b), vir_fusion_product(&k, &b, &a));
        prop_assert_eq!(vir_fusion_product(&k, &MinimalLabel::vacuum(), &a), GrothendieckVector::single(a));
    }

    #[test]
    fn heisenberg_qdim_is_multiplicative(x in prop::collection::vec(-2.0f64..2.0, 2), y in prop::collection::vec(-2.0f64..2.0, 2), rho in prop::collection::vec(-2.0f64..2.0, 2)) {
        let h = HeisenbergTheory::new(vec![2.0, 1.0, 1.0, 3.0], vec![0.5, -0.25]).unwrap();
        let xy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = heis_qdim(&h, &xy, &rho).unwrap();
        prop_assert!(close(lhs, heis_qdim(&h, &x, &rho).unwrap() * heis_qdim(&h, &y, &rho).unwrap(), 1e-10));
    }

    #[test]
    fn pi0_qdim_is_multiplicative(k in kac(), l1 in -3i64..3, l2 in -3i64..3, l3 in -3i64..3, a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0) {
        let (x, y, z) = (PiLabel::new(l1, a), PiLabel::new(l2, b), PiLabel::new(l3, c));
        let lhs = pi0_qdim(&k, &pi0_fusion(&x, &y), &z);
        prop_assert!(close(lhs, pi0_qdim(&k, &x, &z) * pi0_qdim(&k, &y, &z), 1e-10));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn sl2_gr_fusion_is_commutative_and_associative((k, x, y, z) in kac().prop_flat_map(|k| (Just(k), sl2_label(k), sl2_label(k), sl2_label(k)))) {
        prop_assert_eq!(sl2::gr_fusion(&k, &x, &y).unwrap(), sl2::gr_fusion(&k, &y, &x).unwrap());
        let xy = sl2::gr_fusion(&k, &x, &y).unwrap();
        let yz = sl2::gr_fusion(&k, &y, &z).unwrap();
        let left = sl2::gr_fusion_vectors(&k, &xy, &GrothendieckVector::single(z)).unwrap();
        let right = sl2::gr_fusion_vectors(&k, &GrothendieckVector::single(x), &yz).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sl2_vacuum_is_the_unit((k, x) in kac().prop_flat_map(|k| (Just(k), sl2_label(k)))) {
        let vac = Sl2Label::vacuum(&k);
        prop_assert_eq!(sl2::gr_fusion(&k, &vac, &x).unwrap(), GrothendieckVector::single(x));
    }

    #[test]
    fn staggered_multisets_round_trip(k in kac(), items in prop::collection::vec((-4i64..4, 1i64..5, 1i64..3), 1..8)) {
        let mut objs: Vec<ProjectiveObject<f64>> = items
            .into_iter()
            .map(|(l, r, s)| ProjectiveObject::staggered(&k, l, 1 + (r - 1) % (k.u - 1), 1 + (s - 1) % (k.v - 1)).unwrap())
            .collect();
        objs.sort_by(|a, b| verlinde::labels::ClassLabel::order(&a.label(), &b.label()));
        let img = sl2::grothendieck_image(&k, &objs).unwrap();
        prop_assert_eq!(sl2::projective_lift(&k, &img).unwrap(), objs);
    }
}
