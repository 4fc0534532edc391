use verlinde::checks::{verify, Suite, VerifyOptions};
use verlinde::semisimple::HeisenbergTheory;
use verlinde::theory::{Kac, SingletTheory, TheoryConfig};

fn assert_all_pass(t: TheoryConfig<f64>, opts: &VerifyOptions) {
    let res = verify(&t, Suite::All, opts);
    assert!(!res.is_empty());
    for c in &res {
        assert!(c.passed, "{} {}: {c:?}", t.name(), c.name);
    }
}

fn quick() -> VerifyOptions {
    VerifyOptions { samples: 6, pairs: 8, multisets: 100, ..VerifyOptions::default() }
}

#[test]
fn minimal_models_pass_every_suite() {
    for (u, v) in [(3, 2), (5, 2), (4, 3), (7, 5)] {
        assert_all_pass(TheoryConfig::Minimal(Kac::new(u, v).unwrap()), &quick());
    }
}

#[test]
fn lattice_theories_pass_every_suite() {
    assert_all_pass(TheoryConfig::Heisenberg(HeisenbergTheory::standard_rank_one()), &quick());
    let h = HeisenbergTheory::new(vec![2.0, 1.0, 1.0, 3.0], vec![0.5, -0.25]).unwrap();
    assert_all_pass(TheoryConfig::Heisenberg(h), &quick());
    assert_all_pass(TheoryConfig::Pi0(Kac::new(3, 2).unwrap()), &quick());
}

#[test]
fn singlets_pass_every_suite() {
    for p in [2, 3] {
        assert_all_pass(TheoryConfig::Singlet(SingletTheory::new(p).unwrap()), &quick());
    }
}

#[test]
fn sl2_passes_every_suite() {
    for (u, v) in [(3, 2), (4, 3)] {
        assert_all_pass(TheoryConfig::Sl2(Kac::new(u, v).unwrap()), &quick());
    }
}

#[test]
fn reports_are_reproducible() {
    let t = TheoryConfig::Sl2(Kac::new(5, 3).unwrap());
    let a = verify(&t, Suite::Homomorphism, &quick());
    let b = verify(&t, Suite::Homomorphism, &quick());
    assert_eq!(a, b);
}
