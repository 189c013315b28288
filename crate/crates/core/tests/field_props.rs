mod common;

use common::{element, field, raw_element, FIELDS};
use num_complex::Complex64;
use proptest::prelude::*;
use triplepoint::field::cyclotomic_polynomial;
use triplepoint::{FieldElement, NumberField};

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-8 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn ring_axioms(fi in 0..FIELDS, a in raw_element(), b in raw_element(), c in raw_element()) {
        let k = field(fi);
        let (a, b, c) = (element(&k, &a), element(&k, &b), element(&k, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &FieldElement::one(&k), a.clone());
    }

    #[test]
    fn inverses(fi in 0..FIELDS, a in raw_element(), b in raw_element()) {
        let k = field(fi);
        let (a, b) = (element(&k, &a), element(&k, &b));
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&b.checked_div(&a).unwrap() * &a, b);
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism(fi in 0..FIELDS, a in raw_element(), b in raw_element()) {
        let k = field(fi);
        let (a, b) = (element(&k, &a), element(&k, &b));
        prop_assert!(close((&a + &b).approx(), a.approx() + b.approx()));
        prop_assert!(close((&a * &b).approx(), a.approx() * b.approx()));
        let e = a.embed(30).unwrap();
        prop_assert!(e.error <= 2f64.powi(-30));
    }

    #[test]
    fn cyclotomic_conjugation_matches_complex_conjugation(n in prop::sample::select(vec![3u32, 4, 5, 8, 12, 20]), a in prop::collection::vec((-9i64..=9, 1i64..=3), 8)) {
        let k = NumberField::cyclotomic(n);
        let x = element(&k, &a);
        let c = x.cyclotomic_conjugate(n);
        prop_assert!(close(c.approx(), x.approx().conj()));
        prop_assert_eq!(c.cyclotomic_conjugate(n), x.clone());
        let real_part = &x + &c;
        prop_assert!(real_part.approx().im.abs() < 1e-8);
    }
}

/// Coefficients of the product of `x - zeta` over primitive `n`-th roots, rounded.
fn numeric_cyclotomic(n: u32) -> Vec<i64> {
    let gcd = |mut a: u32, mut b: u32| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for k in (1..=n).filter(|&k| gcd(k, n) == 1) {
        let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * root;
        }
        poly = next;
    }
    poly.iter()
        .map(|c| {
            assert!(c.im.abs() < 1e-6 && (c.re - c.re.round()).abs() < 1e-6);
            c.re.round() as i64
        })
        .collect()
}

#[test]
fn cyclotomic_polynomials_match_products_of_primitive_roots() {
    for n in 1..=40 {
        let exact: Vec<i64> = cyclotomic_polynomial(n)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(exact, numeric_cyclotomic(n), "Phi_{n}");
    }
    assert_eq!(numeric_cyclotomic(12), vec![1, 0, -1, 0, 1]);
}

#[test]
fn generator_satisfies_its_minimal_polynomial() {
    for n in [3, 5, 7, 8, 12, 16, 20] {
        let k = NumberField::cyclotomic(n);
        let z = FieldElement::generator(&k);
        assert!(z.pow(n as u64).is_one());
        assert!((1..n as u64).all(|e| !z.pow(e).is_one()));
    }
}
