use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use swanlab::expr::{parse_element, parse_residue, render_element, render_residue};
use swanlab::field::{FieldConfig, LaurentRing, ResidueField};
use swanlab::ring::Ring;
use swanlab::Error;

fn ring(cfg: FieldConfig) -> LaurentRing {
    LaurentRing::new(ResidueField::new(cfg).unwrap())
}

#[test]
fn monomial_with_negative_exponent() {
    let k = ring(FieldConfig::rational(2, 1));
    let y = k.residue().var().unwrap();
    assert_eq!(parse_element("y*pi^-2", &k).unwrap(), k.monomial(y, -2));
}

#[test]
fn support_of_fraction_expression() {
    let k = ring(FieldConfig::rational(3, 1));
    let x = parse_element("(y+1)/y * pi^-3 + 1", &k).unwrap();
    let support: Vec<i64> = x.terms().iter().map(|(e, _)| *e).collect();
    assert_eq!(support, vec![-3, 0]);
}

#[test]
fn sum_of_pi_powers() {
    let k = ring(FieldConfig::perfect(2, 1));
    let x = parse_element("pi^-4 + pi^-1", &k).unwrap();
    assert_eq!(x, k.add(&k.pi_pow(-4), &k.pi_pow(-1)));
    assert_eq!(render_element(&k, &x), "pi^-4 + pi^-1");
}

#[test]
fn errors_carry_positions() {
    let k = ring(FieldConfig::rational(2, 1));
    assert!(matches!(
        parse_element("y + * 2", &k),
        Err(Error::Parse { position: 4, .. })
    ));
    assert!(matches!(
        parse_element("(y + 1", &k),
        Err(Error::Parse { position: 6, .. })
    ));
    assert!(matches!(
        parse_element("z", &k),
        Err(Error::Parse { position: 0, .. })
    ));
    assert!(matches!(
        parse_element("y pi", &k),
        Err(Error::Parse { position: 2, .. })
    ));
    assert!(matches!(
        parse_element("1/(y-y)", &k),
        Err(Error::DivisionByZero)
    ));
    assert!(matches!(
        parse_element("(1+pi)^-1", &k),
        Err(Error::NotInvertible(_))
    ));
    assert!(parse_element("(y*pi)^-2", &k).is_ok());
}

#[test]
fn perfect_field_has_no_variable() {
    let k = ring(FieldConfig::perfect(3, 2));
    assert!(parse_element("y", &k).is_err());
    let g = parse_residue("g^2 + 2", &k).unwrap();
    assert_eq!(
        parse_residue(&render_residue(k.residue(), &g), &k).unwrap(),
        g
    );
}

#[test]
fn modular_integers() {
    let k = ring(FieldConfig::perfect(5, 1));
    assert_eq!(
        parse_element("7", &k).unwrap(),
        parse_element("2", &k).unwrap()
    );
    assert_eq!(
        render_element(&k, &parse_element("3 - 4", &k).unwrap()),
        "4"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>(), which in 0usize..4) {
        let cfg = [
            FieldConfig::rational(2, 1),
            FieldConfig::rational(3, 2),
            FieldConfig::perfect(5, 2),
            FieldConfig::rational(5, 1),
        ][which].clone();
        let k = ring(cfg);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = k.random(&mut rng, -6..=3, 4, 3, 2);
        let text = render_element(&k, &x);
        prop_assert_eq!(parse_element(&text, &k).unwrap(), x);
    }
}
