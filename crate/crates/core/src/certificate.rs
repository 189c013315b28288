//! Self-contained proofs that a form lies outside a power of a point ideal.
//!
//! A certificate carries the generators of the point ideal, its Hilbert
//! table, the form `F` and a linear functional `λ` on the degree-`deg F`
//! monomials. Verification rebuilds everything it needs from the points and
//! never trusts the recorded dimensions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, ArrangementJson};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef, NumberField};
use crate::ideal::{
    condition_matrix, ideal_piece, power_membership, power_spanning_products, symbolic_member,
    FatPointScheme, IdealPresentation, PowerMembership,
};
use crate::linalg::dot;
use crate::point::{PointJson, PointP2};
use crate::poly::{monomial_count, HomForm, HomFormJson};

pub const MONOMIAL_ORDER: &str = "grevlex x > y > z, basis listed from x^d down";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeJson {
    /// Symbolic exponent `m` for which `F ∈ I^(m)` is claimed.
    pub multiplicity: u32,
    pub points: Vec<PointJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualJson {
    pub degree: u32,
    pub coeffs: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub monomial_order: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub config: ArrangementJson,
    pub scheme: SchemeJson,
    pub power: u32,
    pub generators: Vec<HomFormJson>,
    pub complete_to: u32,
    pub hilbert: Vec<[usize; 2]>,
    pub dual_functional: DualJson,
    #[serde(rename = "F")]
    pub form: HomFormJson,
    pub checks: BTreeMap<String, bool>,
    pub metadata: Metadata,
}

impl Certificate {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("certificate: {e}")))
    }
}

pub const CHECK_NAMES: [&str; 6] = [
    "0_consistency",
    "1_generators_vanish",
    "2_generators_complete",
    "3_dual_annihilates_power",
    "4_dual_separates_form",
    "5_form_in_symbolic_power",
];

/// Builds a certificate for `F ∉ I^r`, where `I` is generated by `pres` and
/// `scheme` holds the points of `I` with the multiplicity `m` of the claim
/// `F ∈ I^(m)`. A membership outcome is returned as
/// [`Error::Contradiction`] carrying the combination found.
pub fn nonmember_certificate(
    f: &HomForm,
    pres: &IdealPresentation,
    r: u32,
    scheme: &FatPointScheme,
    config: &ArrangementJson,
    hilbert: &[(u32, usize)],
) -> Result<Certificate> {
    let d = f.degree();
    let dual = match power_membership(f, pres, r)? {
        PowerMembership::NonMember { dual, .. } => dual,
        PowerMembership::Member {
            combination,
            products,
        } => {
            let shown: Vec<String> = combination
                .iter()
                .zip(&products)
                .filter(|(c, _)| !c.is_zero())
                .take(6)
                .map(|(c, p)| format!("({c}) * [{p}]"))
                .collect();
            let total = combination.iter().filter(|c| !c.is_zero()).count();
            return Err(Error::Contradiction(format!(
                "F lies in I^{r} in degree {d}: F = {}{}",
                shown.join(" + "),
                if total > shown.len() {
                    format!(" + ... ({total} terms)")
                } else {
                    String::new()
                }
            )));
        }
    };
    let mut cert = Certificate {
        config: config.clone(),
        scheme: SchemeJson {
            multiplicity: scheme.multiplicity(),
            points: scheme.points().iter().map(|p| p.to_json()).collect(),
        },
        power: r,
        generators: pres.generators().iter().map(|g| g.to_json()).collect(),
        complete_to: pres.complete_to(),
        hilbert: hilbert.iter().map(|&(d, n)| [d as usize, n]).collect(),
        dual_functional: DualJson {
            degree: d,
            coeffs: dual.iter().map(|c| c.to_strings()).collect(),
        },
        form: f.to_json(),
        checks: BTreeMap::new(),
        metadata: Metadata {
            tool: "triplepoint".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            monomial_order: MONOMIAL_ORDER.into(),
        },
    };
    let report = verify_certificate(&cert);
    cert.checks = report
        .checks
        .iter()
        .map(|c| (c.name.to_string(), c.passed))
        .collect();
    if !report.passed() {
        let failed: Vec<&str> = report.failed().map(|c| c.name).collect();
        return Err(Error::Contradiction(format!(
            "fresh certificate fails {}",
            failed.join(", ")
        )));
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Parsed {
    field: FieldRef,
    config: Arrangement,
    points: Vec<PointP2>,
    multiplicity: u32,
    generators: Vec<HomForm>,
    dual: Vec<FieldElement>,
    form: HomForm,
}

fn parse(cert: &Certificate) -> Result<Parsed> {
    let field = NumberField::from_descriptor(&cert.config.field)?;
    let config = Arrangement::from_json_in(&field, &cert.config)?;
    let points = cert
        .scheme
        .points
        .iter()
        .map(|p| PointP2::from_json(&field, p))
        .collect::<Result<Vec<_>>>()?;
    let generators = cert
        .generators
        .iter()
        .map(|g| HomForm::from_json(&field, g))
        .collect::<Result<Vec<_>>>()?;
    let dual = cert
        .dual_functional
        .coeffs
        .iter()
        .map(|c| FieldElement::from_strings(&field, c))
        .collect::<Result<Vec<_>>>()?;
    let form = HomForm::from_json(&field, &cert.form)?;
    Ok(Parsed {
        field,
        config,
        points,
        multiplicity: cert.scheme.multiplicity,
        generators,
        dual,
        form,
    })
}

fn outcome(name: &'static str, problem: Option<String>) -> CheckOutcome {
    match problem {
        None => CheckOutcome {
            name,
            passed: true,
            detail: "ok".into(),
        },
        Some(detail) => CheckOutcome {
            name,
            passed: false,
            detail,
        },
    }
}

/// Re-checks every claim of the certificate from the points up.
pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    let p = match parse(cert) {
        Ok(p) => p,
        Err(e) => {
            return VerificationReport {
                checks: vec![CheckOutcome {
                    name: CHECK_NAMES[0],
                    passed: false,
                    detail: format!("malformed: {e}"),
                }],
            }
        }
    };
    let checks = vec![
        outcome(CHECK_NAMES[0], check_consistency(cert, &p)),
        outcome(CHECK_NAMES[1], check_vanishing(&p)),
        outcome(CHECK_NAMES[2], check_completeness(cert, &p)),
        outcome(CHECK_NAMES[3], check_annihilation(cert, &p)),
        outcome(CHECK_NAMES[4], check_separation(&p)),
        outcome(CHECK_NAMES[5], check_symbolic(&p)),
    ];
    VerificationReport { checks }
}

fn check_consistency(cert: &Certificate, p: &Parsed) -> Option<String> {
    let n = p.form.degree();
    if cert.dual_functional.degree != n {
        return Some(format!(
            "functional has degree {} but F has degree {n}",
            cert.dual_functional.degree
        ));
    }
    if p.dual.len() != monomial_count(n) {
        return Some(format!(
            "functional has {} coordinates, expected {}",
            p.dual.len(),
            monomial_count(n)
        ));
    }
    if cert.power < 2 {
        return Some(format!("power {} is not a proper power", cert.power));
    }
    if p.multiplicity == 0 {
        return Some("multiplicity 0".into());
    }
    if FatPointScheme::new(&p.field, p.points.clone(), 1).is_err() {
        return Some("scheme points repeat".into());
    }
    if p.generators.iter().any(|g| g.is_zero()) {
        return Some("zero generator".into());
    }
    if !p.config.is_empty() {
        match p.config.defining_form() {
            Ok(prod) if prod.is_proportional(&p.form) => {}
            _ => return Some("F is not the product of the configuration's lines".into()),
        }
    }
    None
}

fn check_vanishing(p: &Parsed) -> Option<String> {
    let scheme = FatPointScheme::new(&p.field, p.points.clone(), 1).ok()?;
    for (i, g) in p.generators.iter().enumerate() {
        match symbolic_member(g, &scheme) {
            Ok(rep) if rep.member => {}
            Ok(rep) => {
                return Some(format!(
                    "generator {i} is nonzero at point {}",
                    rep.failures[0].0
                ))
            }
            Err(e) => return Some(format!("generator {i}: {e}")),
        }
    }
    None
}

fn check_completeness(cert: &Certificate, p: &Parsed) -> Option<String> {
    let scheme = FatPointScheme::new(&p.field, p.points.clone(), 1).ok()?;
    let top = cert.complete_to;
    if p.generators.iter().any(|g| g.degree() > top) {
        return Some("a generator lies above the completeness bound".into());
    }
    let n = p.form.degree();
    let gamma = p.generators.iter().map(|g| g.degree()).min();
    let need = match gamma {
        Some(g) if n >= cert.power * g => n - g * (cert.power - 1),
        Some(_) => 0,
        None => n,
    };
    if top < need {
        return Some(format!(
            "complete to degree {top}, products need degree {need}"
        ));
    }
    if cert.hilbert.len() != top as usize + 1 {
        return Some(format!(
            "Hilbert table has {} rows, expected {}",
            cert.hilbert.len(),
            top + 1
        ));
    }
    for d in 0..=top {
        let [dd, recorded] = cert.hilbert[d as usize];
        if dd != d as usize {
            return Some(format!("Hilbert table row {d} is labelled {dd}"));
        }
        let actual = if p.points.is_empty() {
            monomial_count(d)
        } else {
            monomial_count(d) - condition_matrix(&scheme, d).rank()
        };
        if actual != recorded {
            return Some(format!(
                "degree {d}: points impose dimension {actual}, table says {recorded}"
            ));
        }
        let spanned = ideal_piece(&p.field, &p.generators, d).dim();
        if spanned != actual {
            return Some(format!(
                "degree {d}: generators span {spanned} of {actual} dimensions"
            ));
        }
    }
    None
}

fn check_annihilation(cert: &Certificate, p: &Parsed) -> Option<String> {
    if p.dual.len() != monomial_count(p.form.degree()) {
        return Some("functional has the wrong length".into());
    }
    let pres = IdealPresentation::new(&p.field, p.generators.clone(), cert.complete_to);
    for prod in power_spanning_products(&pres, cert.power, p.form.degree()) {
        if !dot(&p.field, &p.dual, &prod.to_vector()).is_zero() {
            return Some(format!("functional does not vanish on {prod}"));
        }
    }
    None
}

fn check_separation(p: &Parsed) -> Option<String> {
    if p.dual.len() != monomial_count(p.form.degree()) {
        return Some("functional has the wrong length".into());
    }
    dot(&p.field, &p.dual, &p.form.to_vector())
        .is_zero()
        .then(|| "functional vanishes on F".into())
}

fn check_symbolic(p: &Parsed) -> Option<String> {
    let scheme = FatPointScheme::new(&p.field, p.points.clone(), p.multiplicity.max(1)).ok()?;
    match symbolic_member(&p.form, &scheme) {
        Ok(rep) if rep.member => None,
        Ok(rep) => {
            let (i, b) = rep.failures[0];
            Some(format!(
                "derivative x^{} y^{} z^{} of F is nonzero at point {i}",
                b[0], b[1], b[2]
            ))
        }
        Err(e) => Some(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{hilbert_function, min_generators};
    use crate::poly::{LineProvenance, LinearForm, Var};

    fn coordinate_certificate() -> Certificate {
        let k = NumberField::rationals();
        let pts: Vec<PointP2> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|&c| PointP2::from_ints(&k, c).unwrap())
            .collect();
        let lines: Vec<LinearForm> = Var::ALL
            .iter()
            .map(|&v| LinearForm::new(HomForm::var(&k, v), LineProvenance::Given).unwrap())
            .collect();
        let arr = Arrangement::from_lines(&k, "coordinate triangle", lines);
        let f = arr.defining_form().unwrap();
        let scheme = FatPointScheme::new(&k, pts, 2).unwrap();
        let base = scheme.with_multiplicity(1);
        let pres = min_generators(&base, 3);
        nonmember_certificate(
            &f,
            &pres,
            2,
            &scheme,
            &arr.to_json(),
            &hilbert_function(&base, 3),
        )
        .unwrap()
    }

    #[test]
    fn round_trip_and_checks() {
        let cert = coordinate_certificate();
        assert!(cert.checks.values().all(|&b| b));
        let text = cert.to_json_string();
        let back = Certificate::from_json_str(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json_string(), text);
        assert!(verify_certificate(&back).passed());
    }

    #[test]
    fn tampering_is_named() {
        let cert = coordinate_certificate();
        let mut zeroed = cert.clone();
        for c in &mut zeroed.dual_functional.coeffs {
            *c = vec!["0".into()];
        }
        let rep = verify_certificate(&zeroed);
        assert!(!rep.check("4_dual_separates_form").unwrap().passed);

        let mut truncated = cert.clone();
        truncated.generators.pop();
        let rep = verify_certificate(&truncated);
        assert!(!rep.check("2_generators_complete").unwrap().passed);

        let mut garbage = cert.clone();
        garbage.generators[0].terms[0].coeff = vec!["one".into()];
        let rep = verify_certificate(&garbage);
        assert!(!rep.passed());
        assert!(rep.checks[0].detail.starts_with("malformed"));
    }

    #[test]
    fn member_is_a_contradiction() {
        let k = NumberField::rationals();
        let pts: Vec<PointP2> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|&c| PointP2::from_ints(&k, c).unwrap())
            .collect();
        let scheme = FatPointScheme::new(&k, pts, 2).unwrap();
        let pres = min_generators(&scheme.with_multiplicity(1), 4);
        let g = pres.generators()[0]
            .checked_mul(&pres.generators()[2])
            .unwrap();
        let arr = Arrangement::from_lines(&k, "none", vec![]);
        let err = nonmember_certificate(&g, &pres, 2, &scheme, &arr.to_json(), &[]).unwrap_err();
        assert!(matches!(err, Error::Contradiction(_)));
    }
}
