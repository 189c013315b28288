//! Built-in configurations and the point sets studied on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arrangement::{
    classify_intersections, expected_triple_count, triple_points, Arrangement, ArrangementJson,
    FieldMode,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::point::{PointJson, PointP2};
use crate::poly::{HomForm, LineProvenance, LinearForm, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dataset {
    /// The `n` lines through pairs of vertices of a regular `n`-gon.
    FpEven { n: usize, mode: FieldMode },
    /// The coordinate triangle `xyz = 0`; points are its three vertices.
    CoordinatePoints,
    /// The nine lines of `(x^3 - y^3)(y^3 - z^3)(z^3 - x^3)` over the
    /// Eisenstein numbers; points are its twelve triple points.
    DualHesse,
}

impl Dataset {
    pub fn name(&self) -> String {
        match self {
            Dataset::FpEven { n, mode } => format!("fp-even n={n} ({mode})"),
            Dataset::CoordinatePoints => "coordinate-points".into(),
            Dataset::DualHesse => "dual-hesse".into(),
        }
    }

    /// The number of points the dataset must produce.
    pub fn expected_points(&self) -> usize {
        match self {
            Dataset::FpEven { n, .. } => expected_triple_count(*n),
            Dataset::CoordinatePoints => 3,
            Dataset::DualHesse => 12,
        }
    }

    /// Whether `I^(m) ⊄ I^r` is known for these parameters, with `F` (the
    /// product of the lines) as the witness.
    pub fn known_counterexample(&self, m: u32, r: u32) -> bool {
        match self {
            Dataset::FpEven { n, .. } => *n >= 12 && m == 3 && r == 2,
            Dataset::CoordinatePoints => m == 2 && r == 2,
            Dataset::DualHesse => m == 3 && r == 2,
        }
    }

    pub fn load(&self) -> Result<Loaded> {
        let loaded = match *self {
            Dataset::FpEven { n, mode } => {
                let arr = Arrangement::furedi_palasti(n, mode)?;
                let set = triple_points(&arr)?;
                Loaded {
                    dataset: *self,
                    arr,
                    points: set.points,
                    triples: Some(set.triples),
                }
            }
            Dataset::CoordinatePoints => {
                let k = NumberField::rationals();
                let lines = Var::ALL
                    .iter()
                    .map(|&v| LinearForm::new(HomForm::var(&k, v), LineProvenance::Given))
                    .collect::<Result<Vec<_>>>()?;
                let arr = Arrangement::from_lines(&k, "coordinate triangle xyz", lines);
                let points = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
                    .iter()
                    .map(|&c| PointP2::from_ints(&k, c))
                    .collect::<Result<Vec<_>>>()?;
                Loaded {
                    dataset: *self,
                    arr,
                    points,
                    triples: None,
                }
            }
            Dataset::DualHesse => {
                let arr = dual_hesse()?;
                let points =
                    classify_intersections(arr.lines())?.points_of_multiplicity_at_least(3);
                Loaded {
                    dataset: *self,
                    arr,
                    points,
                    triples: None,
                }
            }
        };
        if loaded.points.len() != self.expected_points() {
            return Err(Error::TripleCountMismatch {
                found: loaded.points.len(),
                expected: self.expected_points(),
            });
        }
        Ok(loaded)
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Parses `fp-even`, `coordinate-points` or `dual-hesse`; `fp-even` takes `n`
/// and the field mode from the arguments.
pub fn parse_dataset(name: &str, n: Option<usize>, mode: Option<FieldMode>) -> Result<Dataset> {
    match name {
        "fp-even" | "fp" => {
            let n = n.ok_or_else(|| Error::Parse("fp-even needs --n".into()))?;
            Ok(Dataset::FpEven {
                n,
                mode: mode.unwrap_or_else(|| default_mode(n)),
            })
        }
        "coordinate-points" => Ok(Dataset::CoordinatePoints),
        "dual-hesse" => Ok(Dataset::DualHesse),
        other => Err(Error::Parse(format!(
            "unknown dataset {other:?} (expected fp-even, coordinate-points or dual-hesse)"
        ))),
    }
}

impl FromStr for Dataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_dataset(s, None, None)
    }
}

/// Compact coordinates where they exist, cyclotomic otherwise.
pub fn default_mode(n: usize) -> FieldMode {
    if n > 0 && 12 % n == 0 {
        FieldMode::Compact
    } else {
        FieldMode::Cyclotomic
    }
}

/// A dataset with its arrangement and point set resolved.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub dataset: Dataset,
    pub arr: Arrangement,
    pub points: Vec<PointP2>,
    /// Concurrent index triples through each point, for polygon arrangements.
    pub triples: Option<Vec<Vec<[usize; 3]>>>,
}

/// A marked point with the lines through it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedPointJson {
    pub point: PointJson,
    pub lines: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triples: Vec<[usize; 3]>,
}

/// Arrangement together with its marked points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigJson {
    #[serde(flatten)]
    pub arrangement: ArrangementJson,
    pub marked_points: Vec<MarkedPointJson>,
}

impl Loaded {
    pub fn marked_points(&self) -> Vec<MarkedPointJson> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| MarkedPointJson {
                point: p.to_json(),
                lines: (0..self.arr.len())
                    .filter(|&l| self.arr.lines()[l].contains(p))
                    .collect(),
                triples: self
                    .triples
                    .as_ref()
                    .map(|t| t[i].clone())
                    .unwrap_or_default(),
            })
            .collect()
    }

    pub fn config_json(&self) -> ConfigJson {
        ConfigJson {
            arrangement: self.arr.to_json(),
            marked_points: self.marked_points(),
        }
    }
}

/// Lines `x - w^k y`, `y - w^k z`, `z - w^k x` for the cube roots of unity `w^k`.
pub fn dual_hesse() -> Result<Arrangement> {
    let k = NumberField::eisenstein();
    let w = FieldElement::generator(&k);
    let one = FieldElement::one(&k);
    let zero = FieldElement::zero(&k);
    let mut lines = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        for e in 0..3 {
            let mut c = [zero.clone(), zero.clone(), zero.clone()];
            c[a] = one.clone();
            c[b] = -w.pow(e);
            lines.push(LinearForm::from_coeffs(c, LineProvenance::Given)?);
        }
    }
    Ok(Arrangement::from_lines(
        &k,
        "dual Hesse (x^3-y^3)(y^3-z^3)(z^3-x^3)",
        lines,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datasets_load_with_their_counts() {
        assert_eq!(Dataset::CoordinatePoints.load().unwrap().points.len(), 3);
        let hesse = Dataset::DualHesse.load().unwrap();
        let stats = classify_intersections(hesse.arr.lines()).unwrap();
        assert_eq!(stats.count_with_multiplicity(3), 12);
        assert_eq!(stats.count_with_multiplicity(2), 0);
        let fp = Dataset::FpEven {
            n: 12,
            mode: FieldMode::Compact,
        }
        .load()
        .unwrap();
        assert_eq!(fp.points.len(), 19);
    }

    #[test]
    fn hesse_product_is_the_cubic_form() {
        let arr = dual_hesse().unwrap();
        let k = arr.field().clone();
        let [x, y, z] = Var::ALL.map(|v| HomForm::var(&k, v));
        let cube = |f: &HomForm| HomForm::product(&k, [f, f, f]).unwrap();
        let expected = HomForm::product(
            &k,
            [
                &cube(&x).checked_sub(&cube(&y)).unwrap(),
                &cube(&y).checked_sub(&cube(&z)).unwrap(),
                &cube(&z).checked_sub(&cube(&x)).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(arr.defining_form().unwrap(), expected);
    }

    #[test]
    fn parsing() {
        assert_eq!(
            parse_dataset("fp-even", Some(14), None).unwrap(),
            Dataset::FpEven {
                n: 14,
                mode: FieldMode::Cyclotomic
            }
        );
        assert_eq!(
            parse_dataset("fp-even", Some(12), None).unwrap(),
            Dataset::FpEven {
                n: 12,
                mode: FieldMode::Compact
            }
        );
        assert!(parse_dataset("fp-even", None, None).is_err());
        assert!(parse_dataset("hesse", None, None).is_err());
    }
}
