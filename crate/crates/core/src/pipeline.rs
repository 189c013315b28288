//! End-to-end runs over a dataset: points, generators, membership of the
//! product of the lines, degreewise containment and a certificate.

use std::collections::BTreeMap;
use std::fmt::Write as _;
#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;
#[cfg(target_arch = "wasm32")]
use web_time::Instant;

use serde::{Deserialize, Serialize};

use crate::certificate::{nonmember_certificate, Certificate};
use crate::dataset::{Dataset, Loaded};
use crate::error::{Error, Result};
use crate::ideal::{
    containment_check_with, fat_piece, hilbert_function, power_piece, presentation_for_power,
    symbolic_member, FatPointScheme,
};
use crate::poly::monomial_count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// `I^(m) ⊄ I^r`, witnessed by the product of the lines.
    NonContainment,
    /// `I^(m) ⊆ I^r` in every degree checked.
    Containment,
    /// Nothing is known in advance; the run only reports.
    None,
}

/// The verdict expected for a dataset: containment whenever `m ≥ 2r`, the
/// known failures otherwise, and no expectation for the rest.
pub fn expectation(dataset: &Dataset, m: u32, r: u32) -> Expectation {
    if m >= 2 * r {
        Expectation::Containment
    } else if dataset.known_counterexample(m, r) {
        Expectation::NonContainment
    } else {
        Expectation::None
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: u32,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRow {
    pub degree: u32,
    pub symbolic_dim: usize,
    pub power_dim: usize,
    pub contained: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaComparison {
    pub two_gamma: u32,
    pub form_degree: u32,
    pub two_gamma_exceeds_degree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerVerdict {
    NotInPower,
    InPower,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub dataset: String,
    pub field: String,
    pub lines: usize,
    pub points: usize,
    pub expected_points: usize,
    pub multiplicity: u32,
    pub power: u32,
    pub max_degree: u32,
    pub form_degree: u32,
    pub gamma: Option<u32>,
    pub generators: Vec<DegreeCount>,
    pub complete_to: u32,
    /// `[d, dim I_d]` for the ideal of the points.
    pub hilbert: Vec<[usize; 2]>,
    pub form_in_symbolic_power: bool,
    pub symbolic_failures: Vec<String>,
    pub form_in_power: PowerVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_checks: Option<BTreeMap<String, bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_path: Option<String>,
    pub containment: Vec<VerdictRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_comparison: Option<GammaComparison>,
    pub expectation: Expectation,
    pub confirmed: bool,
    pub problems: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contradiction: Option<String>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn first_failure(&self) -> Option<&VerdictRow> {
        self.containment.iter().find(|v| !v.contained)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub m: u32,
    pub r: u32,
    /// Defaults to the number of lines, the degree of their product.
    pub max_degree: Option<u32>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            m: 3,
            r: 2,
            max_degree: None,
        }
    }
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// Runs the full pipeline. Mathematical surprises end up in the report
/// (`confirmed`, `problems`, `contradiction`); only malformed input is an
/// error.
pub fn run_verify(
    dataset: &Dataset,
    opts: &VerifyOptions,
) -> Result<(RunReport, Option<Certificate>)> {
    if opts.m == 0 || opts.r == 0 {
        return Err(Error::Parse("--m and --r must be at least 1".into()));
    }
    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let Loaded { arr, points, .. } = dataset.load()?;
    timings.insert("build".to_string(), millis(t));

    let field = arr.field().clone();
    let f = arr.defining_form()?;
    let n = f.degree();
    let max_degree = opts.max_degree.unwrap_or(n);
    let scheme = FatPointScheme::new(&field, points.clone(), opts.m)?;
    let base = scheme.with_multiplicity(1);
    let expect = expectation(dataset, opts.m, opts.r);

    let t = Instant::now();
    let pres = presentation_for_power(&scheme, opts.r, max_degree);
    let hilbert = hilbert_function(&base, pres.complete_to());
    timings.insert("generators".to_string(), millis(t));

    let t = Instant::now();
    let sym = symbolic_member(&f, &scheme)?;
    timings.insert("symbolic".to_string(), millis(t));

    let mut problems = Vec::new();
    let mut contradiction = None;
    let mut cert = None;
    let mut form_in_power = PowerVerdict::Skipped;
    let t = Instant::now();
    if sym.member && n <= max_degree {
        match nonmember_certificate(&f, &pres, opts.r, &scheme, &arr.to_json(), &hilbert) {
            Ok(c) => {
                form_in_power = PowerVerdict::NotInPower;
                cert = Some(c);
            }
            Err(Error::Contradiction(msg)) => {
                form_in_power = PowerVerdict::InPower;
                if expect == Expectation::NonContainment {
                    contradiction = Some(msg);
                }
            }
            Err(e) => return Err(e),
        }
    }
    timings.insert("power".to_string(), millis(t));

    let t = Instant::now();
    let verdicts = containment_check_with(&scheme, &pres, opts.r, max_degree)?;
    timings.insert("containment".to_string(), millis(t));

    let containment: Vec<VerdictRow> = verdicts
        .iter()
        .map(|v| VerdictRow {
            degree: v.degree,
            symbolic_dim: v.symbolic_dim,
            power_dim: v.power_dim,
            contained: v.contained,
            witness: v.witness.as_ref().map(|w| w.to_string()),
        })
        .collect();

    if form_in_power == PowerVerdict::NotInPower {
        if let Some(row) = containment.iter().find(|v| v.degree == n) {
            if row.contained {
                problems.push(format!(
                    "the certificate puts F outside I^{} but degree {n} looks contained",
                    opts.r
                ));
            }
        }
    }
    let holds_everywhere = containment.iter().all(|v| v.contained);
    let confirmed = match expect {
        Expectation::NonContainment => {
            if !sym.member {
                problems.push(format!("F is not in I^({})", opts.m));
            }
            if cert.is_none() && contradiction.is_none() {
                problems.push("no certificate was produced".into());
            }
            sym.member && cert.is_some() && !holds_everywhere
        }
        Expectation::Containment => {
            if let Some(v) = containment.iter().find(|v| !v.contained) {
                problems.push(format!("containment fails in degree {}", v.degree));
            }
            holds_everywhere
        }
        Expectation::None => true,
    } && problems.is_empty()
        && contradiction.is_none();

    let gamma = pres.gamma();
    let report = RunReport {
        dataset: dataset.name(),
        field: field.to_string(),
        lines: arr.len(),
        points: points.len(),
        expected_points: dataset.expected_points(),
        multiplicity: opts.m,
        power: opts.r,
        max_degree,
        form_degree: n,
        gamma,
        generators: pres
            .degree_counts()
            .into_iter()
            .map(|(degree, count)| DegreeCount { degree, count })
            .collect(),
        complete_to: pres.complete_to(),
        hilbert: hilbert.iter().map(|&(d, k)| [d as usize, k]).collect(),
        form_in_symbolic_power: sym.member,
        symbolic_failures: sym
            .failures
            .iter()
            .take(10)
            .map(|(i, b)| {
                format!(
                    "point {i}: derivative x^{} y^{} z^{} nonzero",
                    b[0], b[1], b[2]
                )
            })
            .collect(),
        form_in_power,
        certificate_checks: cert.as_ref().map(|c| c.checks.clone()),
        certificate_path: None,
        containment,
        gamma_comparison: gamma.map(|g| GammaComparison {
            two_gamma: 2 * g,
            form_degree: n,
            two_gamma_exceeds_degree: 2 * g > n,
        }),
        expectation: expect,
        confirmed,
        problems,
        contradiction,
        timings_ms: timings,
    };
    Ok((report, cert))
}

/// Human-readable form of a report; carries the same verdicts as the JSON.
pub fn render_text(r: &RunReport) -> String {
    let mut s = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(s, "dataset         {}", r.dataset);
    let _ = writeln!(s, "field           {}", r.field);
    let _ = writeln!(s, "lines           {}", r.lines);
    let _ = writeln!(
        s,
        "points          {} (expected {})",
        r.points, r.expected_points
    );
    let _ = writeln!(
        s,
        "claim           I^({}) in I^{} ?  degrees 0..={}",
        r.multiplicity, r.power, r.max_degree
    );
    match r.gamma {
        Some(g) => {
            let _ = writeln!(s, "gamma           {g}");
        }
        None => {
            let _ = writeln!(s, "gamma           none up to degree {}", r.complete_to);
        }
    }
    let gens: Vec<String> = r
        .generators
        .iter()
        .map(|g| format!("{} in degree {}", g.count, g.degree))
        .collect();
    let _ = writeln!(
        s,
        "generators      {} (complete to degree {})",
        gens.join(", "),
        r.complete_to
    );
    let table: Vec<String> = r.hilbert.iter().map(|[d, k]| format!("{d}:{k}")).collect();
    let _ = writeln!(s, "hilbert I       {}", table.join(" "));
    if let Some(c) = &r.gamma_comparison {
        let _ = writeln!(
            s,
            "2*gamma vs deg  {} vs {} ({})",
            c.two_gamma,
            c.form_degree,
            if c.two_gamma_exceeds_degree {
                "2*gamma exceeds deg F"
            } else {
                "2*gamma at most deg F"
            }
        );
    }
    let _ = writeln!(
        s,
        "F in I^({})      {}",
        r.multiplicity,
        yes(r.form_in_symbolic_power)
    );
    for f in &r.symbolic_failures {
        let _ = writeln!(s, "  {f}");
    }
    let power = match r.form_in_power {
        PowerVerdict::NotInPower => "no (certificate below)",
        PowerVerdict::InPower => "yes",
        PowerVerdict::Skipped => "not checked",
    };
    let _ = writeln!(s, "F in I^{}        {}", r.power, power);
    if let Some(checks) = &r.certificate_checks {
        for (name, ok) in checks {
            let _ = writeln!(
                s,
                "  check {name:<28} {}",
                if *ok { "pass" } else { "FAIL" }
            );
        }
    }
    if let Some(p) = &r.certificate_path {
        let _ = writeln!(s, "certificate     {p}");
    }
    let _ = writeln!(
        s,
        "degree  dim I^({})  dim I^{}  contained",
        r.multiplicity, r.power
    );
    for v in r.containment.iter().filter(|v| v.symbolic_dim > 0) {
        let _ = writeln!(
            s,
            "{:>6}  {:>9}  {:>7}  {}",
            v.degree,
            v.symbolic_dim,
            v.power_dim,
            yes(v.contained)
        );
    }
    if let Some(v) = r.first_failure() {
        let _ = writeln!(s, "first failure   degree {}", v.degree);
        if let Some(w) = &v.witness {
            let _ = writeln!(s, "witness         {w}");
        }
    }
    for p in &r.problems {
        let _ = writeln!(s, "problem         {p}");
    }
    if let Some(c) = &r.contradiction {
        let _ = writeln!(s, "{}", contradiction_banner(c));
    }
    let expected = match r.expectation {
        Expectation::NonContainment => "non-containment",
        Expectation::Containment => "containment",
        Expectation::None => "none (report only)",
    };
    let _ = writeln!(s, "expected        {expected}");
    let _ = writeln!(s, "confirmed       {}", yes(r.confirmed));
    let times: Vec<String> = r
        .timings_ms
        .iter()
        .map(|(k, v)| format!("{k} {v}ms"))
        .collect();
    let _ = writeln!(s, "timings         {}", times.join(", "));
    s
}

pub fn contradiction_banner(msg: &str) -> String {
    let bar = "!".repeat(72);
    format!("{bar}\n!! CONTRADICTION: the form expected outside the power lies inside it\n!! {msg}\n{bar}")
}

/// Hilbert table of the fat point scheme on a dataset's points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub dataset: String,
    pub multiplicity: u32,
    pub table: Vec<[usize; 2]>,
    /// First degree with a nonzero form.
    pub first_positive: Option<u32>,
}

pub fn run_hilbert(dataset: &Dataset, m: u32, max_degree: u32) -> Result<HilbertReport> {
    if m == 0 {
        return Err(Error::Parse("--m must be at least 1".into()));
    }
    let loaded = dataset.load()?;
    let scheme = FatPointScheme::new(loaded.arr.field(), loaded.points, m)?;
    let table = hilbert_function(&scheme, max_degree);
    Ok(HilbertReport {
        dataset: dataset.name(),
        multiplicity: m,
        first_positive: table.iter().find(|(_, k)| *k > 0).map(|(d, _)| *d),
        table: table.into_iter().map(|(d, k)| [d as usize, k]).collect(),
    })
}

pub fn render_hilbert_text(h: &HilbertReport) -> String {
    let mut s = format!("{}  m={}\n   d  dim  of\n", h.dataset, h.multiplicity);
    for [d, k] in &h.table {
        let mark = if Some(*d as u32) == h.first_positive {
            "  <- first nonzero"
        } else {
            ""
        };
        let _ = writeln!(s, "{d:>4}  {k:>3}  {:>3}{mark}", monomial_count(*d as u32));
    }
    s
}

/// One row of a scan over polygon sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: usize,
    pub mode: String,
    pub triple_points: Option<usize>,
    pub formula: usize,
    pub formula_ok: bool,
    pub symbolic_dim: Option<usize>,
    pub power_dim: Option<usize>,
    /// Whether `I^(m)_n ⊆ (I^r)_n`.
    pub contained: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub millis: u64,
}

/// Checks the degree-`n` piece for each `n`; failures stay in their row.
pub fn run_scan(
    ns: &[usize],
    m: u32,
    r: u32,
    mode: Option<crate::arrangement::FieldMode>,
) -> Vec<ScanRow> {
    ns.iter().map(|&n| scan_one(n, m, r, mode)).collect()
}

fn scan_one(n: usize, m: u32, r: u32, mode: Option<crate::arrangement::FieldMode>) -> ScanRow {
    let t = Instant::now();
    let mode = mode.unwrap_or_else(|| crate::dataset::default_mode(n));
    let mut row = ScanRow {
        n,
        mode: mode.to_string(),
        triple_points: None,
        formula: if n >= 3 {
            crate::arrangement::expected_triple_count(n)
        } else {
            0
        },
        formula_ok: false,
        symbolic_dim: None,
        power_dim: None,
        contained: None,
        error: None,
        millis: 0,
    };
    let result = (|| -> Result<()> {
        let loaded = Dataset::FpEven { n, mode }.load()?;
        row.triple_points = Some(loaded.points.len());
        row.formula_ok = loaded.points.len() == row.formula;
        let scheme = FatPointScheme::new(loaded.arr.field(), loaded.points, m)?;
        let d = n as u32;
        let sym = fat_piece(&scheme, d);
        row.symbolic_dim = Some(sym.dim());
        let pres = presentation_for_power(&scheme, r, d);
        let pow = power_piece(&pres, r, d)?;
        row.power_dim = Some(pow.dim());
        row.contained = Some(sym.is_subspace_of(&pow));
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    row.millis = millis(t);
    row
}

pub fn render_scan_text(rows: &[ScanRow]) -> String {
    let mut s =
        String::from("   n  mode        triples  formula  dim I^(m)_n  dim I^r_n  contained  ms\n");
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    for r in rows {
        let _ = writeln!(
            s,
            "{:>4}  {:<10}  {:>7}  {:>7}  {:>11}  {:>9}  {:>9}  {}{}",
            r.n,
            r.mode,
            opt(r.triple_points),
            r.formula,
            opt(r.symbolic_dim),
            opt(r.power_dim),
            r.contained.map_or("-", |c| if c { "yes" } else { "no" }),
            r.millis,
            r.error
                .as_ref()
                .map_or(String::new(), |e| format!("  error: {e}")),
        );
    }
    s
}
