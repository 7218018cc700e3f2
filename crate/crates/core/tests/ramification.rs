use swanlab::differentials::{reassemble, GradedForm, NormalFormBGr, Variant};
use swanlab::field::{FieldConfig, LaurentElem, LaurentRing, ResidueField};
use swanlab::ramification::{
    critical_slope, kappa_n, reduce_representative, refined_swan, refined_swan_modified, rho_n,
    swan, swan_modified, theta, CharacterClass, ConductorReport, ReductionConfig,
};
use swanlab::ring::Ring;
use swanlab::witt::WittVec;
use swanlab::Error;

fn ring(cfg: FieldConfig) -> LaurentRing {
    LaurentRing::new(ResidueField::new(cfg).unwrap())
}

fn chi(k: &LaurentRing, comps: Vec<LaurentElem>) -> CharacterClass {
    CharacterClass::new(k.clone(), WittVec::new(comps)).unwrap()
}

fn cfg() -> ReductionConfig {
    ReductionConfig::default()
}

#[test]
fn pi_to_minus_two_reduces_at_p2() {
    let k = ring(FieldConfig::perfect(2, 1));
    let red = reduce_representative(&chi(&k, vec![k.pi_pow(-2)]), &cfg()).unwrap();
    assert_eq!(red.rep.components(), &[k.pi_pow(-1)]);
    assert_eq!(red.sw, 1);
}

#[test]
fn trivial_character_at_p2() {
    let k = ring(FieldConfig::perfect(2, 1));
    let x = k.add(&k.pi_pow(-4), &k.pi_pow(-1));
    let red = reduce_representative(&chi(&k, vec![x]), &cfg()).unwrap();
    assert!(red.rep.components()[0].is_zero());
    assert_eq!(red.sw, 0);
}

#[test]
fn non_square_leading_coefficient_is_kept() {
    let k = ring(FieldConfig::rational(2, 1));
    let y = k.residue().var().unwrap();
    let x = k.monomial(y, -2);
    let red = reduce_representative(&chi(&k, vec![x.clone()]), &cfg()).unwrap();
    assert_eq!(red.rep.components(), &[x]);
}

#[test]
fn theta_pi_inverse_has_swan_one() {
    let k = ring(FieldConfig::perfect(3, 1));
    assert_eq!(
        swan(&theta(&k, k.pi_pow(-1), 0, 0).unwrap(), &cfg()).unwrap(),
        1
    );
}

#[test]
fn p3_pi_minus_two_conductors() {
    let k = ring(FieldConfig::perfect(3, 1));
    let f = k.residue();
    let c = theta(&k, k.pi_pow(-2), 0, 0).unwrap();
    let report = ConductorReport::compute(&c, &cfg()).unwrap();
    assert_eq!(report.sw, 2);
    let rsw = report.rsw.clone().unwrap();
    assert_eq!((rsw.n, rsw.variant), (2, Variant::Log));
    assert!(rsw.alpha.is_zero());
    assert_eq!(rsw.beta, f.from_int(2));
    assert_eq!(report.sw_mod, 2);
    let rsw_mod = report.rsw_mod.form().unwrap();
    assert_eq!(rsw_mod.variant, Variant::Plain);
    assert_eq!(rsw_mod.beta, f.from_int(2));
    assert_eq!(report.slope.value(), Some(&3));
    assert_eq!(report.log_slope.value(), Some(&2));
    assert!(report.log_char_point.value().unwrap().beta.is_one());
    assert!(report.char_point.value().unwrap().beta.is_one());
}

#[test]
fn p2_y_over_pi_squared() {
    let k = ring(FieldConfig::rational(2, 1));
    let y = k.residue().var().unwrap();
    let c = theta(&k, k.monomial(y, -2), 0, 0).unwrap();
    assert_eq!(swan(&c, &cfg()).unwrap(), 2);
    let rsw = refined_swan(&c, &cfg()).unwrap().unwrap();
    assert!(rsw.alpha.f.is_one() && rsw.beta.is_zero());
    assert_eq!(swan_modified(&c, &cfg()).unwrap(), 1);
    assert!(matches!(
        refined_swan_modified(&c, &cfg()),
        Err(Error::UnsupportedRange(_))
    ));
    assert!(matches!(
        critical_slope(&c, &cfg()),
        Err(Error::OutOfTheoremRange(_))
    ));
}

#[test]
fn p2_pi_minus_three() {
    let k = ring(FieldConfig::perfect(2, 1));
    let c = theta(&k, k.pi_pow(-3), 0, 0).unwrap();
    assert_eq!(swan(&c, &cfg()).unwrap(), 3);
    assert_eq!(swan_modified(&c, &cfg()).unwrap(), 3);
}

#[test]
fn p2_length_two_inverse_pi() {
    let k = ring(FieldConfig::perfect(2, 1));
    let c = chi(&k, vec![k.pi_pow(-1), k.zero()]);
    assert_eq!(swan(&c, &cfg()).unwrap(), 2);
    let rsw = refined_swan(&c, &cfg()).unwrap().unwrap();
    assert!(rsw.alpha.is_zero() && rsw.beta.is_one());
}

#[test]
fn rho_of_x_equal_one_at_p2_level2() {
    let k = ring(FieldConfig::perfect(2, 1));
    let f = k.residue();
    let nf = NormalFormBGr {
        n: 2,
        variant: Variant::Log,
        layers: vec![vec![]],
        x: f.one(),
    };
    let c = rho_n(&k, &nf, 1).unwrap();
    assert_eq!(swan(&c, &cfg()).unwrap(), 2);
    let rsw = refined_swan(&c, &cfg()).unwrap().unwrap();
    assert_eq!(rsw, reassemble(f, &nf));
}

#[test]
fn kappa_of_x_equal_two_at_p3_level2() {
    let k = ring(FieldConfig::perfect(3, 1));
    let f = k.residue();
    let nf = NormalFormBGr {
        n: 2,
        variant: Variant::Plain,
        layers: vec![vec![]],
        x: f.from_int(2),
    };
    let c = kappa_n(&k, &nf, 0).unwrap();
    let rsw_mod = refined_swan_modified(&c, &cfg()).unwrap().unwrap();
    let expected: GradedForm = reassemble(f, &nf);
    assert_eq!(rsw_mod, expected);
    assert_eq!(expected.beta, f.from_int(2));
}
