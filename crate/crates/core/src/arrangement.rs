//! Füredi–Palásti line arrangements and their intersection combinatorics.
//!
//! For even `n`, take the vertices `P_i = exp(2 pi i k / n)` of the regular
//! `n`-gon on the unit circle. Line `i` joins `P_i` and `P_j` with
//! `j = n/2 - 2i (mod n)`, or is the tangent at `P_i` when `j = i`. Three
//! lines `i, j, k` are concurrent exactly when `n | i + j + k`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef, NumberField, Rational};
use crate::point::{cross, det3, PointP2};
use crate::poly::{HomForm, LineProvenance, LinearForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    /// Hand-built coordinates over `Q(sqrt 3)`, available for `n` dividing 12.
    Compact,
    /// `Q(zeta_N)` with `N = lcm(n, 4)`, available for every even `n`.
    Cyclotomic,
}

impl std::str::FromStr for FieldMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compact" => Ok(FieldMode::Compact),
            "cyclotomic" => Ok(FieldMode::Cyclotomic),
            _ => Err(Error::Parse(format!("unknown field mode {s:?}"))),
        }
    }
}

impl std::fmt::Display for FieldMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FieldMode::Compact => "compact",
            FieldMode::Cyclotomic => "cyclotomic",
        })
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn check_size(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::UnsupportedSize(n, "n must be even"));
    }
    if n < 6 {
        return Err(Error::UnsupportedSize(n, "n must be at least 6"));
    }
    Ok(())
}

/// The vertices of the regular `n`-gon, in exact coordinates `(cos : sin : 1)`.
pub fn fp_points(n: usize, mode: FieldMode) -> Result<(FieldRef, Vec<PointP2>)> {
    check_size(n)?;
    match mode {
        FieldMode::Compact => compact_points(n),
        FieldMode::Cyclotomic => cyclotomic_points(n),
    }
}

// cos and sin of k * 30 degrees as (rational part, sqrt3 part).
const DODECAGON: [[(i64, i64, i64, i64); 2]; 12] = [
    [(1, 1, 0, 1), (0, 1, 0, 1)],
    [(0, 1, 1, 2), (1, 2, 0, 1)],
    [(1, 2, 0, 1), (0, 1, 1, 2)],
    [(0, 1, 0, 1), (1, 1, 0, 1)],
    [(-1, 2, 0, 1), (0, 1, 1, 2)],
    [(0, 1, -1, 2), (1, 2, 0, 1)],
    [(-1, 1, 0, 1), (0, 1, 0, 1)],
    [(0, 1, -1, 2), (-1, 2, 0, 1)],
    [(-1, 2, 0, 1), (0, 1, -1, 2)],
    [(0, 1, 0, 1), (-1, 1, 0, 1)],
    [(1, 2, 0, 1), (0, 1, -1, 2)],
    [(0, 1, 1, 2), (-1, 2, 0, 1)],
];

fn compact_points(n: usize) -> Result<(FieldRef, Vec<PointP2>)> {
    if 12 % n != 0 {
        return Err(Error::UnsupportedSize(
            n,
            "compact coordinates exist only for n dividing 12",
        ));
    }
    let k = NumberField::sqrt3();
    let step = 12 / n;
    let elem =
        |(a, b, c, d): (i64, i64, i64, i64)| FieldElement::from_coeffs(&k, &[q(a, b), q(c, d)]);
    let points = (0..n)
        .map(|i| {
            let [cos, sin] = DODECAGON[i * step];
            PointP2::new([elem(cos)?, elem(sin)?, FieldElement::one(&k)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((k, points))
}

fn cyclotomic_points(n: usize) -> Result<(FieldRef, Vec<PointP2>)> {
    let order = num_integer::lcm(n, 4);
    let k = NumberField::cyclotomic(order as u32);
    let a = FieldElement::generator(&k);
    let zeta = a.pow((order / n) as u64);
    let two_i = a.pow((order / 4) as u64).scale(&q(2, 1));
    let two_i_inv = two_i.inv()?;
    let points = (0..n)
        .map(|i| {
            let z = zeta.pow(i as u64);
            let zbar = zeta.pow(((n - i) % n) as u64);
            let cos = (&z + &zbar).scale(&q(1, 2));
            let sin = &(&z - &zbar) * &two_i_inv;
            PointP2::new([cos, sin, FieldElement::one(&k)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((k, points))
}

/// Index of the second point on line `i`.
pub fn partner_index(n: usize, i: usize) -> usize {
    (n as i64 / 2 - 2 * i as i64).rem_euclid(n as i64) as usize
}

/// Chord through `P_i` and its partner, or the tangent at `P_i` when they
/// coincide. Chords are scaled so their first nonzero coefficient is 1;
/// tangents at `(p : q : 1)` are `p x + q y - z`.
pub fn fp_line(i: usize, points: &[PointP2]) -> Result<LinearForm> {
    let n = points.len();
    let j = partner_index(n, i);
    let p = &points[i];
    let (coeffs, provenance) = if i != j {
        let c = cross(p.coords(), points[j].coords());
        let lead = c
            .iter()
            .find(|e| !e.is_zero())
            .ok_or(Error::DegenerateLine(i))?
            .inv()?;
        (c.map(|e| &e * &lead), LineProvenance::Chord(i, j))
    } else {
        let [x, y, z] = p.coords().clone();
        ([&x * &z, &y * &z, -(&z * &z)], LineProvenance::Tangent(i))
    };
    if coeffs.iter().all(|e| e.is_zero()) {
        return Err(Error::DegenerateLine(i));
    }
    LinearForm::from_coeffs(coeffs, provenance)
}

/// All `{i < j < k}` with `n | i + j + k`.
pub fn concurrent_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if (i + j + k) % n == 0 {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// `1 + floor(n (n - 3) / 6)`.
pub fn expected_triple_count(n: usize) -> usize {
    1 + n * (n - 3) / 6
}

/// A finite set of lines in the projective plane, optionally carrying the
/// polygon it was built from.
#[derive(Debug, Clone)]
pub struct Arrangement {
    field: FieldRef,
    label: String,
    mode: Option<FieldMode>,
    points: Vec<PointP2>,
    lines: Vec<LinearForm>,
    tangent_indices: Vec<usize>,
}

impl Arrangement {
    pub fn furedi_palasti(n: usize, mode: FieldMode) -> Result<Self> {
        let (field, points) = fp_points(n, mode)?;
        let lines = (0..n)
            .map(|i| fp_line(i, &points))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..n {
            for j in i + 1..n {
                if lines[i].same_line(&lines[j]) {
                    return Err(Error::CoincidentLines(i, j));
                }
            }
        }
        let tangent_indices = (0..n).filter(|&i| (3 * i) % n == n / 2).collect();
        Ok(Arrangement {
            field,
            label: format!("fp-even n={n}"),
            mode: Some(mode),
            points,
            lines,
            tangent_indices,
        })
    }

    pub fn from_lines(field: &FieldRef, label: impl Into<String>, lines: Vec<LinearForm>) -> Self {
        Arrangement {
            field: field.clone(),
            label: label.into(),
            mode: None,
            points: Vec::new(),
            lines,
            tangent_indices: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mode(&self) -> Option<FieldMode> {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The polygon vertices (empty for arrangements given by their lines).
    pub fn points(&self) -> &[PointP2] {
        &self.points
    }

    pub fn lines(&self) -> &[LinearForm] {
        &self.lines
    }

    pub fn tangent_indices(&self) -> &[usize] {
        &self.tangent_indices
    }

    pub fn is_furedi_palasti(&self) -> bool {
        self.mode.is_some()
    }

    /// Product of all line forms.
    pub fn defining_form(&self) -> Result<HomForm> {
        HomForm::product(&self.field, self.lines.iter().map(|l| l.form()))
    }

    /// Compares the determinant test with the divisibility test on every
    /// 3-subset of line indices; returns the subsets where they disagree.
    pub fn divisibility_mismatches(&self) -> Vec<[usize; 3]> {
        let n = self.lines.len();
        let coeffs: Vec<[FieldElement; 3]> = self.lines.iter().map(|l| l.coeffs()).collect();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let singular = det3([&coeffs[i], &coeffs[j], &coeffs[k]]).is_zero();
                    if singular != ((i + j + k) % n == 0) {
                        bad.push([i, j, k]);
                    }
                }
            }
        }
        bad
    }

    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            label: self.label.clone(),
            field: self.field.descriptor(),
            mode: self.mode,
            points: self.points.iter().map(|p| p.to_json()).collect(),
            lines: self
                .lines
                .iter()
                .map(|l| l.coeffs().map(|c| c.to_strings()))
                .collect(),
            tangent_indices: self.tangent_indices.clone(),
        }
    }

    pub fn from_json(json: &ArrangementJson) -> Result<Self> {
        let field = NumberField::from_descriptor(&json.field)?;
        Self::from_json_in(&field, json)
    }

    pub fn from_json_in(field: &FieldRef, json: &ArrangementJson) -> Result<Self> {
        let points = json
            .points
            .iter()
            .map(|p| PointP2::from_json(field, p))
            .collect::<Result<Vec<_>>>()?;
        let lines = json
            .lines
            .iter()
            .map(|[a, b, c]| {
                LinearForm::from_coeffs(
                    [
                        FieldElement::from_strings(field, a)?,
                        FieldElement::from_strings(field, b)?,
                        FieldElement::from_strings(field, c)?,
                    ],
                    LineProvenance::Given,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arrangement {
            field: field.clone(),
            label: json.label.clone(),
            mode: json.mode,
            points,
            lines,
            tangent_indices: json.tangent_indices.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub label: String,
    pub field: crate::field::FieldDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<FieldMode>,
    #[serde(default)]
    pub points: Vec<crate::point::PointJson>,
    /// Coefficient triples `(a, b, c)` of `a x + b y + c z`.
    pub lines: Vec<[Vec<String>; 3]>,
    #[serde(default)]
    pub tangent_indices: Vec<usize>,
}

/// Triple points of a Füredi–Palásti arrangement with the concurrent index
/// triples through each.
#[derive(Debug, Clone, PartialEq)]
pub struct TriplePointSet {
    pub points: Vec<PointP2>,
    pub triples: Vec<Vec<[usize; 3]>>,
}

impl TriplePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Triple points found through the divisibility rule, each verified to lie on
/// all three of its lines, deduplicated exactly, and counted against
/// `1 + floor(n (n - 3) / 6)`.
pub fn triple_points(arr: &Arrangement) -> Result<TriplePointSet> {
    let n = arr.len();
    if !arr.is_furedi_palasti() {
        return Err(Error::UnsupportedSize(
            n,
            "the divisibility rule applies only to Füredi–Palásti arrangements",
        ));
    }
    let lines = arr.lines();
    let mut index: HashMap<PointP2, usize> = HashMap::new();
    let mut set = TriplePointSet {
        points: Vec::new(),
        triples: Vec::new(),
    };
    for t in concurrent_triples(n) {
        let [i, j, k] = t;
        let p = PointP2::new(cross(&lines[i].coeffs(), &lines[j].coeffs()))?;
        if !lines[k].contains(&p) {
            return Err(Error::NotConcurrent(t));
        }
        match index.get(&p) {
            Some(&idx) => set.triples[idx].push(t),
            None => {
                index.insert(p.clone(), set.points.len());
                set.points.push(p);
                set.triples.push(vec![t]);
            }
        }
    }
    let expected = expected_triple_count(n);
    if set.len() != expected {
        return Err(Error::TripleCountMismatch {
            found: set.len(),
            expected,
        });
    }
    Ok(set)
}

/// Every intersection point of a set of lines with the lines through it.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionStats {
    pub points: Vec<PointP2>,
    /// Sorted indices of the lines through each point.
    pub incidences: Vec<Vec<usize>>,
    /// Multiplicity to number of points.
    pub histogram: BTreeMap<usize, usize>,
    /// Per line, the number of points of multiplicity at least 3 on it.
    pub triple_points_per_line: Vec<usize>,
}

impl IntersectionStats {
    pub fn count_with_multiplicity(&self, m: usize) -> usize {
        self.histogram.get(&m).copied().unwrap_or(0)
    }

    /// Points where at least three lines meet, in discovery order.
    pub fn points_of_multiplicity_at_least(&self, m: usize) -> Vec<PointP2> {
        self.points
            .iter()
            .zip(&self.incidences)
            .filter(|(_, inc)| inc.len() >= m)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

/// Intersects all pairs of lines and groups equal points. Lines must be
/// pairwise distinct.
pub fn classify_intersections(lines: &[LinearForm]) -> Result<IntersectionStats> {
    let coeffs: Vec<[FieldElement; 3]> = lines.iter().map(|l| l.coeffs()).collect();
    let mut index: HashMap<PointP2, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut incidences: Vec<Vec<usize>> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = PointP2::new(cross(&coeffs[i], &coeffs[j])).map_err(|e| match e {
                Error::ZeroPoint => Error::CoincidentLines(i, j),
                e => e,
            })?;
            let idx = *index.entry(p.clone()).or_insert_with(|| {
                points.push(p);
                incidences.push(Vec::new());
                points.len() - 1
            });
            for l in [i, j] {
                if !incidences[idx].contains(&l) {
                    incidences[idx].push(l);
                }
            }
        }
    }
    let mut histogram = BTreeMap::new();
    let mut per_line = vec![0; lines.len()];
    for inc in incidences.iter_mut() {
        inc.sort_unstable();
        *histogram.entry(inc.len()).or_insert(0) += 1;
        if inc.len() >= 3 {
            for &l in inc.iter() {
                per_line[l] += 1;
            }
        }
    }
    Ok(IntersectionStats {
        points,
        incidences,
        histogram,
        triple_points_per_line: per_line,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrdinaryReport {
    /// Number of points where exactly two lines meet.
    pub ordinary: usize,
    /// All lines pass through one point.
    pub pencil: bool,
    /// `C(s, 2) - 3 - 3 floor(s (s - 3) / 6)`, the conjectured minimum.
    pub conjectured_minimum: i64,
}

/// Counts ordinary points of a real arrangement. Unless the lines form a
/// pencil, at least one ordinary point must exist.
pub fn ordinary_point_check(lines: &[LinearForm]) -> Result<OrdinaryReport> {
    if lines.len() < 2 {
        return Err(Error::UnsupportedSize(
            lines.len(),
            "at least two lines are required",
        ));
    }
    if !lines.iter().all(|l| l.coeffs().iter().all(is_real)) {
        return Err(Error::NotReal);
    }
    let stats = classify_intersections(lines)?;
    let s = lines.len() as i64;
    let pencil = stats.points.len() == 1;
    let ordinary = stats.count_with_multiplicity(2);
    if !pencil && ordinary == 0 {
        return Err(Error::Contradiction(
            "real arrangement without ordinary points".into(),
        ));
    }
    Ok(OrdinaryReport {
        ordinary,
        pencil,
        conjectured_minimum: s * (s - 1) / 2 - 3 - 3 * (s * (s - 3) / 6),
    })
}

/// Whether the element's embedding is real, up to its error bound.
pub fn is_real(e: &FieldElement) -> bool {
    if e.field().has_real_root() || e.as_rational().is_some() {
        return true;
    }
    let v = e.approx();
    v.im.abs() <= 1e-9 * v.norm().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn compact12() -> Arrangement {
        Arrangement::furedi_palasti(12, FieldMode::Compact).unwrap()
    }

    #[test]
    fn compact_points_match_table() {
        let (k, pts) = fp_points(12, FieldMode::Compact).unwrap();
        let a = FieldElement::generator(&k);
        let half = FieldElement::from_rational(&k, &q(1, 2));
        assert_eq!(pts[0], PointP2::from_ints(&k, [1, 0, 1]).unwrap());
        assert_eq!(
            pts[1],
            PointP2::new([a.scale(&q(1, 2)), half, FieldElement::one(&k)]).unwrap()
        );
        assert_eq!(pts[9], PointP2::from_ints(&k, [0, -1, 1]).unwrap());
        for p in &pts {
            let [x, y, z] = p.coords();
            assert_eq!(&(x * x) + &(y * y), z * z);
        }
    }

    #[test]
    fn invalid_sizes() {
        assert!(matches!(
            fp_points(13, FieldMode::Cyclotomic),
            Err(Error::UnsupportedSize(13, _))
        ));
        assert!(matches!(
            fp_points(14, FieldMode::Compact),
            Err(Error::UnsupportedSize(14, _))
        ));
        assert!(matches!(
            fp_points(4, FieldMode::Cyclotomic),
            Err(Error::UnsupportedSize(4, _))
        ));
    }

    #[test]
    fn named_lines() {
        let arr = compact12();
        let k = arr.field().clone();
        let a = FieldElement::generator(&k);
        assert_eq!(arr.lines()[0].form(), &HomForm::var(&k, Var::Y));
        let l6 = HomForm::linear(
            FieldElement::from_int(&k, -1),
            FieldElement::zero(&k),
            FieldElement::from_int(&k, -1),
        );
        assert_eq!(arr.lines()[6].form(), &l6);
        assert_eq!(arr.lines()[6].provenance(), LineProvenance::Tangent(6));
        let l2 = HomForm::linear(
            FieldElement::from_rational(&k, &q(1, 2)),
            a.scale(&q(1, 2)),
            FieldElement::from_int(&k, -1),
        );
        assert_eq!(arr.lines()[2].form(), &l2);
        assert_eq!(arr.tangent_indices(), &[2, 6, 10]);
        for (i, l) in arr.lines().iter().enumerate() {
            assert!(l.contains(&arr.points()[i]));
            assert!(l.contains(&arr.points()[partner_index(12, i)]));
        }
    }

    #[test]
    fn divisibility_instances() {
        let t = concurrent_triples(12);
        assert!(t.contains(&[1, 4, 7]));
        assert!(!t.contains(&[0, 1, 2]));
    }

    #[test]
    fn nineteen_triple_points() {
        let arr = compact12();
        let z = triple_points(&arr).unwrap();
        assert_eq!(z.len(), 19);
        let stats = classify_intersections(arr.lines()).unwrap();
        let mut per_line = stats.triple_points_per_line.clone();
        per_line.sort_unstable();
        assert_eq!(per_line, [vec![4; 3], vec![5; 9]].concat());
        for &t in arr.tangent_indices() {
            assert_eq!(stats.triple_points_per_line[t], 4);
        }
    }

    #[test]
    fn ordinary_points_of_small_configurations() {
        let k = NumberField::rationals();
        let line = |a, b, c| {
            LinearForm::from_coeffs(
                [
                    FieldElement::from_int(&k, a),
                    FieldElement::from_int(&k, b),
                    FieldElement::from_int(&k, c),
                ],
                LineProvenance::Given,
            )
            .unwrap()
        };
        let two = [line(1, 0, 0), line(0, 1, 0)];
        let s = classify_intersections(&two).unwrap();
        assert_eq!(s.histogram, BTreeMap::from([(2, 1)]));
        // three lines through the origin plus the line at infinity-ish z = x + y + 5z
        let four = [line(1, 0, 0), line(0, 1, 0), line(1, 1, 0), line(1, 2, 5)];
        let r = ordinary_point_check(&four).unwrap();
        assert_eq!(r.ordinary, 3);
        assert!(!r.pencil);
        let pencil = [line(1, 0, 0), line(0, 1, 0), line(1, 1, 0)];
        assert!(ordinary_point_check(&pencil).unwrap().pencil);
        assert!(matches!(
            classify_intersections(&[line(1, 0, 0), line(2, 0, 0)]),
            Err(Error::CoincidentLines(0, 1))
        ));
    }
}
