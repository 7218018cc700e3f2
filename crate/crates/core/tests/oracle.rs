use swanlab::field::{FieldConfig, LaurentRing, ResidueField};
use swanlab::oracle::{
    brute_reduce, fil_prime_generator_sample, validate_context, verify_q_identity,
    verify_q_symbolic, BruteConfig,
};
use swanlab::ring::Ring;
use swanlab::witt::WittVec;

fn ring(cfg: FieldConfig) -> LaurentRing {
    LaurentRing::new(ResidueField::new(cfg).unwrap())
}

#[test]
fn brute_examples_at_p2() {
    let k = ring(FieldConfig::rational(2, 1));
    let cfg = BruteConfig::default();
    let x = WittVec::new(vec![k.add(&k.pi_pow(-4), &k.pi_pow(-1))]);
    assert_eq!(brute_reduce(&k, &x, &cfg).unwrap().level, 0);

    let x = WittVec::new(vec![k.pi_pow(-2)]);
    let res = brute_reduce(&k, &x, &cfg).unwrap();
    assert_eq!(res.level, 1);
    assert_eq!(res.rep.components(), &[k.pi_pow(-1)]);

    let y = k.residue().var().unwrap();
    let x = WittVec::new(vec![k.monomial(y, -2)]);
    assert_eq!(brute_reduce(&k, &x, &cfg).unwrap().level, 2);
}

#[test]
fn q_identity_small_runs() {
    for (p, m, k) in [(2, 1, 4), (3, 2, 3), (2, 3, 3)] {
        let report = verify_q_identity(p, m, k, 200, 7).unwrap();
        assert_eq!(report.failures, 0, "{:?}", report.witness);
    }
}

#[test]
fn q_symbolic_p2_p3() {
    for p in [2, 3] {
        assert_eq!(verify_q_symbolic(p, 4).unwrap(), Vec::<String>::new());
    }
}

#[test]
fn cached_polynomials_match_integer_ones() {
    for (p, m) in [(2, 2), (3, 2), (5, 1)] {
        assert_eq!(validate_context(p, m, 20, 3).unwrap(), Vec::<String>::new());
    }
}

#[test]
fn fil_prime_generators() {
    let k = ring(FieldConfig::rational(2, 1));
    for n in 0..6 {
        let report = fil_prime_generator_sample(&k, 1, n, 30, n as u64).unwrap();
        assert_eq!(report.failures(), 0, "n = {n}: {report:?}");
    }
}
