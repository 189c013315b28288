#![allow(dead_code)]

use proptest::prelude::*;
use triplepoint::linalg::Matrix;
use triplepoint::poly::{monomial_count, rat};
use triplepoint::{FieldElement, FieldRef, HomForm, NumberField, PointP2};

pub const FIELDS: usize = 5;

pub fn field(i: usize) -> FieldRef {
    match i % FIELDS {
        0 => NumberField::rationals(),
        1 => NumberField::sqrt3(),
        2 => NumberField::eisenstein(),
        3 => NumberField::cyclotomic(5),
        _ => NumberField::cyclotomic(12),
    }
}

pub type RawElement = Vec<(i64, i64)>;

pub fn raw_element() -> impl Strategy<Value = RawElement> {
    prop::collection::vec(prop_oneof![Just((0i64, 1i64)), (-12i64..=12, 1i64..=5)], 4)
}

pub fn element(k: &FieldRef, raw: &RawElement) -> FieldElement {
    let coeffs: Vec<_> = raw
        .iter()
        .take(k.degree())
        .map(|&(n, d)| rat(n, d))
        .collect();
    FieldElement::from_poly(k, &coeffs)
}

pub type RawForm = Vec<(usize, RawElement)>;

pub fn raw_form() -> impl Strategy<Value = RawForm> {
    prop::collection::vec((0usize..64, raw_element()), 0..6)
}

pub fn form(k: &FieldRef, degree: u32, raw: &RawForm) -> HomForm {
    let n = monomial_count(degree);
    let mut v = vec![FieldElement::zero(k); n];
    for (i, c) in raw {
        v[i % n] = element(k, c);
    }
    HomForm::from_vector(k, degree, &v).unwrap()
}

/// `None` when all three coordinates came out zero.
pub fn point(k: &FieldRef, raw: &[RawElement; 3]) -> Option<PointP2> {
    PointP2::new([
        element(k, &raw[0]),
        element(k, &raw[1]),
        element(k, &raw[2]),
    ])
    .ok()
}

pub fn raw_matrix() -> impl Strategy<Value = (usize, usize, Vec<RawElement>)> {
    (1usize..=6, 1usize..=8).prop_flat_map(|(r, c)| {
        (
            Just(r),
            Just(c),
            prop::collection::vec(raw_element(), r * c),
        )
    })
}

pub fn matrix(k: &FieldRef, rows: usize, cols: usize, raw: &[RawElement]) -> Matrix {
    let data = (0..rows)
        .map(|i| (0..cols).map(|j| element(k, &raw[i * cols + j])).collect())
        .collect();
    Matrix::from_rows(k, cols, data).unwrap()
}
