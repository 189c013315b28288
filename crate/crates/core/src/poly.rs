//! Sparse homogeneous forms in `x, y, z`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_term, join_terms, FieldElement, FieldRef, Rational};
use crate::point::PointP2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    fn index(self) -> usize {
        self as usize
    }
}

/// Exponent triple `(e_x, e_y, e_z)`. Ordered by degree, then reverse
/// lexicographically with `x > y > z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// Position in [`monomial_basis`] of the same degree.
    pub fn index(&self) -> usize {
        let d = self.degree() as usize;
        let (ey, ez) = (self.0[1] as usize, self.0[2] as usize);
        // blocks of constant e_z have sizes d+1, d, d-1, ...
        ez * (d + 1) - ez * ez.saturating_sub(1) / 2 + ey
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0[2].cmp(&self.0[2]))
            .then_with(|| other.0[1].cmp(&self.0[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (name, e) in ["x", "y", "z"].iter().zip(self.0) {
            match e {
                0 => {}
                1 => s.push_str(name),
                _ => s.push_str(&format!("{name}^{e}")),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        f.write_str(&s)
    }
}

/// All monomials of degree `d`, largest first in graded reverse lexicographic
/// order (`x^d, x^{d-1}y, ..., z^d`).
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for ez in 0..=d {
        for ey in 0..=d - ez {
            out.push(Monomial([d - ez - ey, ey, ez]));
        }
    }
    out
}

pub fn monomial_count(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

/// A homogeneous form. The zero form keeps its declared degree.
#[derive(Clone)]
pub struct HomForm {
    field: FieldRef,
    degree: u32,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for HomForm {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.degree == other.degree && self.terms == other.terms
    }
}

impl HomForm {
    pub fn zero(field: &FieldRef, degree: u32) -> Self {
        HomForm {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let mut f = Self::zero(c.field(), 0);
        if !c.is_zero() {
            f.terms.insert(Monomial([0, 0, 0]), c);
        }
        f
    }

    pub fn monomial(field: &FieldRef, m: Monomial, c: FieldElement) -> Self {
        let mut f = Self::zero(field, m.degree());
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    pub fn var(field: &FieldRef, v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(field, Monomial(e), FieldElement::one(field))
    }

    /// `a x + b y + c z`.
    pub fn linear(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        let field = a.field().clone();
        let terms = [
            (Monomial([1, 0, 0]), a),
            (Monomial([0, 1, 0]), b),
            (Monomial([0, 0, 1]), c),
        ]
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect();
        HomForm {
            field,
            degree: 1,
            terms,
        }
    }

    pub fn from_terms(
        field: &FieldRef,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let mut f = Self::zero(field, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::NotHomogeneous);
            }
            if !c.field().same_as(field) {
                return Err(Error::FieldMismatch(
                    field.label().into(),
                    c.field().label().into(),
                ));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// Coefficients listed in [`monomial_basis`] order.
    pub fn from_vector(field: &FieldRef, degree: u32, coeffs: &[FieldElement]) -> Result<Self> {
        let basis = monomial_basis(degree);
        if basis.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        Self::from_terms(field, degree, basis.into_iter().zip(coeffs.iter().cloned()))
    }

    pub fn to_vector(&self) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::zero(&self.field); monomial_count(self.degree)];
        for (m, c) in &self.terms {
            v[m.index()] = c.clone();
        }
        v
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.values().next_back()
    }

    fn check_field(&self, other: &HomForm) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.label().into(),
                other.field.label().into(),
            ))
        }
    }

    pub fn checked_add(&self, other: &HomForm) -> Result<HomForm> {
        self.check_field(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &HomForm) -> Result<HomForm> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &HomForm) -> Result<HomForm> {
        self.check_field(other)?;
        let mut out = HomForm::zero(&self.field, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> HomForm {
        HomForm {
            field: self.field.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> HomForm {
        if s.is_zero() {
            return HomForm::zero(&self.field, self.degree);
        }
        HomForm {
            field: self.field.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> HomForm {
        HomForm {
            field: self.field.clone(),
            degree: self.degree + m.degree(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative.
    pub fn diff(&self, v: Var) -> HomForm {
        let i = v.index();
        let mut out = HomForm::zero(&self.field, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            out.add_term(dm, c.scale(&Rational::from_integer(e.into())));
        }
        out
    }

    /// Iterated partial derivative `d^{b_x+b_y+b_z} / dx^{b_x} dy^{b_y} dz^{b_z}`.
    pub fn diff_multi(&self, orders: [u32; 3]) -> HomForm {
        let mut f = self.clone();
        for (v, &k) in Var::ALL.iter().zip(&orders) {
            for _ in 0..k {
                f = f.diff(*v);
            }
        }
        f
    }

    /// Value at the given coordinates.
    pub fn eval_coords(&self, coords: &[FieldElement; 3]) -> Result<FieldElement> {
        for c in coords {
            if !c.field().same_as(&self.field) {
                return Err(Error::FieldMismatch(
                    self.field.label().into(),
                    c.field().label().into(),
                ));
            }
        }
        let mut powers: [Vec<FieldElement>; 3] = Default::default();
        for (i, p) in powers.iter_mut().enumerate() {
            p.push(FieldElement::one(&self.field));
            for k in 1..=self.degree as usize {
                let next = &p[k - 1] * &coords[i];
                p.push(next);
            }
        }
        let mut acc = FieldElement::zero(&self.field);
        for (m, c) in &self.terms {
            let t = &(&(c * &powers[0][m.0[0] as usize]) * &powers[1][m.0[1] as usize])
                * &powers[2][m.0[2] as usize];
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval(&self, p: &PointP2) -> Result<FieldElement> {
        self.eval_coords(p.coords())
    }

    /// Scales so that the leading coefficient is 1; the zero form is returned unchanged.
    pub fn monic(&self) -> HomForm {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// True when `self = c * other` for some nonzero scalar `c`.
    pub fn is_proportional(&self, other: &HomForm) -> bool {
        !self.is_zero()
            && !other.is_zero()
            && self.degree == other.degree
            && self.monic() == other.monic()
    }

    pub fn product<'a>(
        field: &FieldRef,
        forms: impl IntoIterator<Item = &'a HomForm>,
    ) -> Result<HomForm> {
        forms
            .into_iter()
            .try_fold(HomForm::constant(FieldElement::one(field)), |acc, f| {
                acc.checked_mul(f)
            })
    }

    pub fn to_json(&self) -> HomFormJson {
        HomFormJson {
            degree: self.degree,
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.0,
                    coeff: c.to_strings(),
                })
                .collect(),
        }
    }

    pub fn from_json(field: &FieldRef, json: &HomFormJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| {
                Ok((
                    Monomial(t.exp),
                    FieldElement::from_strings(field, &t.coeff)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(field, json.degree, terms)
    }
}

impl fmt::Debug for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = |m: &Monomial| {
            if m.degree() == 0 {
                String::new()
            } else {
                m.to_string()
            }
        };
        let parts = self
            .terms()
            .map(|(m, c)| match c.as_rational() {
                Some(q) => format_term(&q, &mono(m)),
                None if m.degree() == 0 => format!("({c})"),
                None => format!("({c})*{}", mono(m)),
            })
            .collect();
        f.write_str(&join_terms(parts))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: [u32; 3],
    pub coeff: Vec<String>,
}

/// Serialized form, terms listed in descending monomial order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomFormJson {
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

/// Origin of a line in an arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineProvenance {
    Chord(usize, usize),
    Tangent(usize),
    Given,
}

/// A nonzero form of degree one.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm {
    form: HomForm,
    provenance: LineProvenance,
}

impl LinearForm {
    pub fn new(form: HomForm, provenance: LineProvenance) -> Result<Self> {
        if form.degree() != 1 {
            return Err(Error::DegreeMismatch(1, form.degree()));
        }
        if form.is_zero() {
            return Err(Error::DegenerateLine(0));
        }
        Ok(LinearForm { form, provenance })
    }

    /// Form `a x + b y + c z` from its coefficient triple.
    pub fn from_coeffs(coeffs: [FieldElement; 3], provenance: LineProvenance) -> Result<Self> {
        let [a, b, c] = coeffs;
        Self::new(HomForm::linear(a, b, c), provenance)
    }

    pub fn form(&self) -> &HomForm {
        &self.form
    }

    pub fn provenance(&self) -> LineProvenance {
        self.provenance
    }

    pub fn coeffs(&self) -> [FieldElement; 3] {
        [
            self.form.coeff(&Monomial([1, 0, 0])),
            self.form.coeff(&Monomial([0, 1, 0])),
            self.form.coeff(&Monomial([0, 0, 1])),
        ]
    }

    pub fn contains(&self, p: &PointP2) -> bool {
        self.form.eval(p).map(|v| v.is_zero()).unwrap_or(false)
    }

    /// Same line: proportional coefficient triples.
    pub fn same_line(&self, other: &LinearForm) -> bool {
        self.form.is_proportional(&other.form)
    }
}

/// Rational coefficient helper for tests and datasets.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    fn xyz(k: &FieldRef) -> (HomForm, HomForm, HomForm) {
        (
            HomForm::var(k, Var::X),
            HomForm::var(k, Var::Y),
            HomForm::var(k, Var::Z),
        )
    }

    #[test]
    fn basis_sizes_and_order() {
        assert_eq!(monomial_basis(0), vec![Monomial([0, 0, 0])]);
        let b2 = monomial_basis(2);
        assert_eq!(
            b2,
            vec![
                Monomial([2, 0, 0]),
                Monomial([1, 1, 0]),
                Monomial([0, 2, 0]),
                Monomial([1, 0, 1]),
                Monomial([0, 1, 1]),
                Monomial([0, 0, 2]),
            ]
        );
        assert_eq!(monomial_basis(12).len(), 91);
        for d in 0..15 {
            let b = monomial_basis(d);
            assert_eq!(b.len(), monomial_count(d));
            assert!(b.windows(2).all(|w| w[0] > w[1]));
            assert!(b.iter().enumerate().all(|(i, m)| m.index() == i));
        }
    }

    #[test]
    fn products_and_derivatives() {
        let k = NumberField::rationals();
        let (x, y, z) = xyz(&k);
        let p = HomForm::product(&k, [&x, &y, &z]).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.to_string(), "xyz");
        assert_eq!(p.diff(Var::X).to_string(), "yz");
        let x2 = x.checked_mul(&x).unwrap();
        assert!(x2.diff(Var::Y).is_zero());
        assert_eq!(x2.diff(Var::Y).degree(), 1);
        assert!(p.checked_add(&p.neg()).unwrap().is_zero());
        assert_eq!(p.checked_add(&x2), Err(Error::DegreeMismatch(3, 2)));
    }

    #[test]
    fn evaluation() {
        let k = NumberField::rationals();
        let (x, y, z) = xyz(&k);
        let xy = x.checked_mul(&y).unwrap();
        let r = PointP2::from_ints(&k, [0, 0, 1]).unwrap();
        assert!(xy.eval(&r).unwrap().is_zero());
        let p = HomForm::product(&k, [&x, &y, &z]).unwrap();
        assert!(p
            .eval(&PointP2::from_ints(&k, [1, 1, 1]).unwrap())
            .unwrap()
            .is_one());
    }

    #[test]
    fn json_round_trip() {
        let k = NumberField::sqrt3();
        let a = FieldElement::generator(&k);
        let f = HomForm::linear(
            FieldElement::from_rational(&k, &rat(1, 2)),
            a.scale(&rat(1, 2)),
            FieldElement::from_int(&k, -1),
        );
        let g = f.checked_mul(&f).unwrap();
        let back = HomForm::from_json(&k, &g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn linear_forms_reject_zero() {
        let k = NumberField::rationals();
        assert!(LinearForm::new(HomForm::zero(&k, 1), LineProvenance::Given).is_err());
    }
}
