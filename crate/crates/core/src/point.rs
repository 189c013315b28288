//! Points of the projective plane with exact coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef};

/// A point `(x : y : z)`, normalized so that its last nonzero coordinate is 1.
/// Normalized representatives are unique, so equality is coordinate equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointP2 {
    coords: [FieldElement; 3],
}

impl PointP2 {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
        let field = coords[0].field().clone();
        for c in &coords[1..] {
            if !c.field().same_as(&field) {
                return Err(Error::FieldMismatch(
                    field.label().into(),
                    c.field().label().into(),
                ));
            }
        }
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::ZeroPoint)?;
        let scale = coords[last].inv()?;
        let coords = if scale.is_one() {
            coords
        } else {
            coords.map(|c| &c * &scale)
        };
        Ok(PointP2 { coords })
    }

    pub fn from_ints(field: &FieldRef, c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(|v| FieldElement::from_int(field, v)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &FieldRef {
        self.coords[0].field()
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[2].is_zero()
    }

    /// Affine approximation `(x/z, y/z)`; `None` at infinity.
    pub fn affine_approx(&self) -> Option<(f64, f64)> {
        if self.is_at_infinity() {
            return None;
        }
        Some((self.coords[0].approx().re, self.coords[1].approx().re))
    }

    pub fn to_json(&self) -> PointJson {
        PointJson {
            coords: self.coords.clone().map(|c| c.to_strings()),
        }
    }

    pub fn from_json(field: &FieldRef, json: &PointJson) -> Result<Self> {
        let [a, b, c] = &json.coords;
        Self::new([
            FieldElement::from_strings(field, a)?,
            FieldElement::from_strings(field, b)?,
            FieldElement::from_strings(field, c)?,
        ])
    }
}

/// Cross product of two coordinate triples: the line through two points, or
/// the point on two lines.
pub fn cross(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

pub fn det3(rows: [&[FieldElement; 3]; 3]) -> FieldElement {
    let c = cross(rows[1], rows[2]);
    let t = [
        &rows[0][0] * &c[0],
        &rows[0][1] * &c[1],
        &rows[0][2] * &c[2],
    ];
    &(&t[0] + &t[1]) + &t[2]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: [Vec<String>; 3],
}

impl fmt::Debug for PointP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PointP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "({x} : {y} : {z})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    #[test]
    fn normalization_is_unique() {
        let k = NumberField::sqrt3();
        let p = PointP2::from_ints(&k, [2, 4, 2]).unwrap();
        let q = PointP2::from_ints(&k, [-1, -2, -1]).unwrap();
        assert_eq!(p, q);
        let inf = PointP2::from_ints(&k, [3, 6, 0]).unwrap();
        assert_eq!(inf, PointP2::from_ints(&k, [1, 2, 0]).unwrap());
        assert!(inf.is_at_infinity());
        assert_eq!(PointP2::from_ints(&k, [0, 0, 0]), Err(Error::ZeroPoint));
    }
}
