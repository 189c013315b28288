//! Degree-by-degree exact calculus of homogeneous ideals in three variables.
//!
//! Every ideal is handled through its graded pieces: finite-dimensional
//! subspaces of the forms of a fixed degree, kept as reduced row echelon
//! bases on the monomial basis. Fat point ideals come from kernels of
//! derivative-evaluation matrices; ordinary powers from spans of products of
//! generators; saturation from colon conditions against higher degrees.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef, Rational};
use crate::linalg::{dot, span_decide, Matrix, SpanWitness};
use crate::point::PointP2;
use crate::poly::{monomial_basis, monomial_count, HomForm, Monomial};

/// Points with a uniform vanishing multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct FatPointScheme {
    field: FieldRef,
    points: Vec<PointP2>,
    multiplicity: u32,
}

impl FatPointScheme {
    pub fn new(field: &FieldRef, points: Vec<PointP2>, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::Parse("multiplicity must be at least 1".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.field().same_as(field) {
                return Err(Error::FieldMismatch(
                    field.label().into(),
                    p.field().label().into(),
                ));
            }
            if points[..i].contains(p) {
                return Err(Error::Parse(format!("point {p} is listed twice")));
            }
        }
        Ok(FatPointScheme {
            field: field.clone(),
            points,
            multiplicity,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn points(&self) -> &[PointP2] {
        &self.points
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn with_multiplicity(&self, m: u32) -> Self {
        FatPointScheme {
            multiplicity: m.max(1),
            ..self.clone()
        }
    }
}

/// A subspace of the degree-`d` forms, stored as a reduced row echelon basis
/// so that equal subspaces have equal bases.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedBasis {
    field: FieldRef,
    degree: u32,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl GradedBasis {
    pub fn zero(field: &FieldRef, degree: u32) -> Self {
        GradedBasis {
            field: field.clone(),
            degree,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FieldRef, degree: u32) -> Self {
        let n = monomial_count(degree);
        let rows = Matrix::identity(field, n).row_vecs();
        GradedBasis {
            field: field.clone(),
            degree,
            rows,
            pivots: (0..n).collect(),
        }
    }

    /// Span of coefficient vectors of length `monomial_count(degree)`.
    pub fn span(field: &FieldRef, degree: u32, vectors: Vec<Vec<FieldElement>>) -> Self {
        let cols = monomial_count(degree);
        if vectors.is_empty() {
            return Self::zero(field, degree);
        }
        let rref = Matrix::from_rows(field, cols, vectors)
            .expect("coefficient vectors of the right length")
            .rref();
        GradedBasis {
            field: field.clone(),
            degree,
            rows: rref.basis(),
            pivots: rref.pivots,
        }
    }

    pub fn span_forms<'a>(
        field: &FieldRef,
        degree: u32,
        forms: impl IntoIterator<Item = &'a HomForm>,
    ) -> Self {
        Self::span(
            field,
            degree,
            forms.into_iter().map(|f| f.to_vector()).collect(),
        )
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn forms(&self) -> Vec<HomForm> {
        self.rows
            .iter()
            .map(|v| HomForm::from_vector(&self.field, self.degree, v).expect("basis vector"))
            .collect()
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(&self.field, monomial_count(self.degree), self.rows.clone())
            .expect("basis rows")
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for j in p..r.len() {
                if !row[j].is_zero() {
                    r[j] = &r[j] - &(&f * &row[j]);
                }
            }
        }
        r.iter().all(|e| e.is_zero())
    }

    pub fn contains(&self, f: &HomForm) -> bool {
        f.degree() == self.degree && self.contains_vector(&f.to_vector())
    }

    pub fn is_subspace_of(&self, other: &GradedBasis) -> bool {
        self.degree == other.degree && self.rows.iter().all(|v| other.contains_vector(v))
    }

    /// Linear functionals annihilating the subspace, as coefficient vectors.
    pub fn annihilator(&self) -> Vec<Vec<FieldElement>> {
        let n = monomial_count(self.degree);
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![FieldElement::zero(&self.field); n];
                v[free] = FieldElement::one(&self.field);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }

    /// Codimension in the space of all degree-`d` forms.
    pub fn codim(&self) -> usize {
        monomial_count(self.degree) - self.dim()
    }
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

/// Exponent triples of total degree `k`.
fn exponents(k: u32) -> Vec<[u32; 3]> {
    monomial_basis(k).into_iter().map(|m| m.0).collect()
}

fn coordinate_powers(p: &PointP2, d: u32) -> [Vec<FieldElement>; 3] {
    let field = p.field();
    let mut out: [Vec<FieldElement>; 3] = Default::default();
    for (i, powers) in out.iter_mut().enumerate() {
        powers.push(FieldElement::one(field));
        for k in 1..=d as usize {
            let next = &powers[k - 1] * &p.coords()[i];
            powers.push(next);
        }
    }
    out
}

/// Rows expressing "all partial derivatives of order `min(m - 1, d)` vanish"
/// at every point, over the degree-`d` monomial basis. By Euler's identity
/// this forces all lower-order derivatives to vanish as well.
pub fn condition_matrix(scheme: &FatPointScheme, d: u32) -> Matrix {
    let field = &scheme.field;
    let order = (scheme.multiplicity - 1).min(d);
    let basis = monomial_basis(d);
    let derivs = exponents(order);
    let mut rows = Vec::with_capacity(scheme.points.len() * derivs.len());
    for p in &scheme.points {
        let pw = coordinate_powers(p, d);
        for b in &derivs {
            let row = basis
                .iter()
                .map(|m| {
                    let a = m.0;
                    if a[0] < b[0] || a[1] < b[1] || a[2] < b[2] {
                        return FieldElement::zero(field);
                    }
                    let c = falling(a[0], b[0]) * falling(a[1], b[1]) * falling(a[2], b[2]);
                    let v = &(&pw[0][(a[0] - b[0]) as usize] * &pw[1][(a[1] - b[1]) as usize])
                        * &pw[2][(a[2] - b[2]) as usize];
                    v.scale(&Rational::from_integer(c.into()))
                })
                .collect();
            rows.push(row);
        }
    }
    Matrix::from_rows(field, basis.len(), rows).expect("condition rows")
}

/// Degree-`d` forms vanishing to order at least `m` at every point.
pub fn fat_piece(scheme: &FatPointScheme, d: u32) -> GradedBasis {
    if scheme.points.is_empty() {
        return GradedBasis::full(&scheme.field, d);
    }
    let kernel = condition_matrix(scheme, d).kernel();
    GradedBasis::span(&scheme.field, d, kernel)
}

/// `d -> dim fat_piece(scheme, d)` for `d = 0..=max_degree`.
pub fn hilbert_function(scheme: &FatPointScheme, max_degree: u32) -> Vec<(u32, usize)> {
    (0..=max_degree)
        .map(|d| (d, condition_rank_complement(scheme, d)))
        .collect()
}

fn condition_rank_complement(scheme: &FatPointScheme, d: u32) -> usize {
    let n = monomial_count(d);
    if scheme.points.is_empty() {
        return n;
    }
    n - condition_matrix(scheme, d).rank()
}

/// Result of evaluating all derivatives of order below `m` at every point.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicReport {
    pub member: bool,
    /// `(point index, derivative exponents)` where a derivative is nonzero.
    pub failures: Vec<(usize, [u32; 3])>,
}

/// Whether `f` vanishes to order at least `m` at every point of the scheme.
pub fn symbolic_member(f: &HomForm, scheme: &FatPointScheme) -> Result<SymbolicReport> {
    let mut failures = Vec::new();
    for order in 0..scheme.multiplicity {
        for b in exponents(order) {
            let g = f.diff_multi(b);
            for (i, p) in scheme.points.iter().enumerate() {
                if !g.eval(p)?.is_zero() {
                    failures.push((i, b));
                }
            }
        }
    }
    Ok(SymbolicReport {
        member: failures.is_empty(),
        failures,
    })
}

/// Minimal homogeneous generators, certified complete through `complete_to`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPresentation {
    field: FieldRef,
    generators: Vec<HomForm>,
    complete_to: u32,
}

impl IdealPresentation {
    pub fn new(field: &FieldRef, generators: Vec<HomForm>, complete_to: u32) -> Self {
        IdealPresentation {
            field: field.clone(),
            generators,
            complete_to,
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn generators(&self) -> &[HomForm] {
        &self.generators
    }

    pub fn complete_to(&self) -> u32 {
        self.complete_to
    }

    /// Least generator degree; `None` for the zero ideal (through `complete_to`).
    pub fn gamma(&self) -> Option<u32> {
        self.generators.iter().map(|g| g.degree()).min()
    }

    /// Number of generators in each degree.
    pub fn degree_counts(&self) -> Vec<(u32, usize)> {
        let mut counts: Vec<(u32, usize)> = Vec::new();
        for g in &self.generators {
            match counts.last_mut() {
                Some((d, c)) if *d == g.degree() => *c += 1,
                _ => counts.push((g.degree(), 1)),
            }
        }
        counts
    }
}

/// Degree-`d` piece of the ideal generated by `gens`.
pub fn ideal_piece(field: &FieldRef, gens: &[HomForm], d: u32) -> GradedBasis {
    let mut vectors = Vec::new();
    for g in gens.iter().filter(|g| g.degree() <= d && !g.is_zero()) {
        for m in monomial_basis(d - g.degree()) {
            vectors.push(g.mul_monomial(&m).to_vector());
        }
    }
    GradedBasis::span(field, d, vectors)
}

/// Picks minimal generators from a sequence of graded pieces `pieces[d]`,
/// `d = 0, 1, ...`: in each degree, the echelon basis vectors not already in
/// the span of `x, y, z` times the previous piece.
pub fn presentation_from_pieces(field: &FieldRef, pieces: &[GradedBasis]) -> IdealPresentation {
    let mut generators = Vec::new();
    for (d, piece) in pieces.iter().enumerate() {
        let lower: Vec<Vec<FieldElement>> = if d == 0 {
            Vec::new()
        } else {
            pieces[d - 1]
                .forms()
                .iter()
                .flat_map(|f| {
                    [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
                        .map(|e| f.mul_monomial(&Monomial(e)).to_vector())
                })
                .collect()
        };
        let mut span = GradedBasis::span(field, d as u32, lower);
        if span.dim() == piece.dim() {
            continue;
        }
        for v in piece.vectors() {
            if !span.contains_vector(v) {
                generators.push(HomForm::from_vector(field, d as u32, v).expect("basis vector"));
                let mut rows = span.rows.clone();
                rows.push(v.clone());
                span = GradedBasis::span(field, d as u32, rows);
            }
        }
    }
    let complete_to = pieces.len().saturating_sub(1) as u32;
    IdealPresentation::new(field, generators, complete_to)
}

/// Minimal generators of the fat point ideal through degree `max_degree`.
pub fn min_generators(scheme: &FatPointScheme, max_degree: u32) -> IdealPresentation {
    let pieces: Vec<GradedBasis> = (0..=max_degree).map(|d| fat_piece(scheme, d)).collect();
    presentation_from_pieces(&scheme.field, &pieces)
}

/// Degree-`d` piece of `I^r`, spanned by products of `r` generators times
/// monomials. Refuses when the presentation is not known to be complete far
/// enough for the span to be the whole piece.
pub fn power_piece(pres: &IdealPresentation, r: u32, d: u32) -> Result<GradedBasis> {
    assert!(r >= 1, "power must be at least 1");
    let Some(gamma) = pres.gamma() else {
        if pres.complete_to < d {
            return Err(Error::Incomplete {
                have: pres.complete_to,
                need: d,
            });
        }
        return Ok(GradedBasis::zero(&pres.field, d));
    };
    if d < r * gamma {
        return Ok(GradedBasis::zero(&pres.field, d));
    }
    let need = d - gamma * (r - 1);
    if pres.complete_to < need {
        return Err(Error::Incomplete {
            have: pres.complete_to,
            need,
        });
    }
    let mut memo = HashMap::new();
    Ok(power_piece_rec(pres, r, d, gamma, &mut memo))
}

fn power_piece_rec(
    pres: &IdealPresentation,
    r: u32,
    d: u32,
    gamma: u32,
    memo: &mut HashMap<(u32, u32), GradedBasis>,
) -> GradedBasis {
    if let Some(b) = memo.get(&(r, d)) {
        return b.clone();
    }
    let out = if d < r * gamma {
        GradedBasis::zero(&pres.field, d)
    } else if r == 1 {
        ideal_piece(&pres.field, &pres.generators, d)
    } else {
        // (I^r)_d = sum over generators g of g * (I^{r-1})_{d - deg g}
        let mut vectors = Vec::new();
        for g in pres
            .generators
            .iter()
            .filter(|g| g.degree() + (r - 1) * gamma <= d)
        {
            let lower = power_piece_rec(pres, r - 1, d - g.degree(), gamma, memo);
            for h in lower.forms() {
                vectors.push(g.checked_mul(&h).expect("same field").to_vector());
            }
        }
        GradedBasis::span(&pres.field, d, vectors)
    };
    memo.insert((r, d), out.clone());
    out
}

/// Outcome of comparing `I^(m)` with `I^r` in one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeVerdict {
    pub degree: u32,
    pub symbolic_dim: usize,
    pub power_dim: usize,
    pub contained: bool,
    /// A form of `I^(m)` outside `I^r`, when containment fails.
    pub witness: Option<HomForm>,
}

/// Least degree with a nonzero form through the points (`None` if there is
/// none up to `max_degree`).
pub fn initial_degree(scheme: &FatPointScheme, max_degree: u32) -> Option<u32> {
    let base = scheme.with_multiplicity(1);
    (0..=max_degree).find(|&d| condition_rank_complement(&base, d) > 0)
}

/// Presentation of the reduced point ideal complete enough to build `I^r`
/// through degree `max_degree`.
pub fn presentation_for_power(
    scheme: &FatPointScheme,
    r: u32,
    max_degree: u32,
) -> IdealPresentation {
    let base = scheme.with_multiplicity(1);
    let bound = match initial_degree(&base, max_degree) {
        Some(gamma) => max_degree.saturating_sub(gamma * (r - 1)).max(gamma),
        None => max_degree,
    };
    min_generators(&base, bound)
}

/// Tests `I^(m) ⊆ I^r` degree by degree through `max_degree`, where `m` is
/// the scheme's multiplicity and `I` the ideal of its points.
pub fn containment_check(
    scheme: &FatPointScheme,
    r: u32,
    max_degree: u32,
) -> Result<Vec<DegreeVerdict>> {
    let pres = presentation_for_power(scheme, r, max_degree);
    containment_check_with(scheme, &pres, r, max_degree)
}

pub fn containment_check_with(
    scheme: &FatPointScheme,
    pres: &IdealPresentation,
    r: u32,
    max_degree: u32,
) -> Result<Vec<DegreeVerdict>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let sym = fat_piece(scheme, d);
        if sym.is_zero() {
            out.push(DegreeVerdict {
                degree: d,
                symbolic_dim: 0,
                power_dim: 0,
                contained: true,
                witness: None,
            });
            continue;
        }
        let pow = power_piece(pres, r, d)?;
        let witness = sym.forms().into_iter().find(|f| !pow.contains(f));
        out.push(DegreeVerdict {
            degree: d,
            symbolic_dim: sym.dim(),
            power_dim: pow.dim(),
            contained: witness.is_none(),
            witness,
        });
    }
    Ok(out)
}

/// Products `m * g_1 * ... * g_r` of degree `d` over all multisets of `r`
/// generators and monomials `m` of the remaining degree.
pub fn power_spanning_products(pres: &IdealPresentation, r: u32, d: u32) -> Vec<HomForm> {
    let gens = pres.generators();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, HomForm)> =
        vec![(0, 0, HomForm::constant(FieldElement::one(&pres.field)))];
    // depth-first over nondecreasing generator index sequences
    while let Some((start, used, prod)) = stack.pop() {
        if used == r {
            for m in monomial_basis(d - prod.degree()) {
                out.push(prod.mul_monomial(&m));
            }
            continue;
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            if prod.degree() + g.degree() <= d {
                stack.push((i, used + 1, prod.checked_mul(g).expect("same field")));
            }
        }
    }
    out
}

/// Outcome of deciding `F ∈ I^r` in the degree of `F`.
#[derive(Debug, Clone, PartialEq)]
pub enum PowerMembership {
    /// A functional on the degree-`deg F` monomial basis vanishing on every
    /// spanning product and taking the value 1 on `F`.
    NonMember {
        dual: Vec<FieldElement>,
        spanning_rows: usize,
    },
    /// Coefficients expressing `F` in the spanning products.
    Member {
        combination: Vec<FieldElement>,
        products: Vec<HomForm>,
    },
}

/// Builds the full spanning set of `(I^r)_{deg F}` and decides membership of `F`.
pub fn power_membership(f: &HomForm, pres: &IdealPresentation, r: u32) -> Result<PowerMembership> {
    let d = f.degree();
    if let Some(gamma) = pres.gamma() {
        let need = d.saturating_sub(gamma * (r - 1));
        if d >= r * gamma && pres.complete_to < need {
            return Err(Error::Incomplete {
                have: pres.complete_to,
                need,
            });
        }
    } else if pres.complete_to < d {
        return Err(Error::Incomplete {
            have: pres.complete_to,
            need: d,
        });
    }
    let products = power_spanning_products(pres, r, d);
    let span = Matrix::from_rows(
        &pres.field,
        monomial_count(d),
        products.iter().map(|p| p.to_vector()).collect(),
    )?;
    match span_decide(&f.to_vector(), &span)? {
        SpanWitness::NonMember { dual } => Ok(PowerMembership::NonMember {
            dual,
            spanning_rows: products.len(),
        }),
        SpanWitness::Member { combination } => Ok(PowerMembership::Member {
            combination,
            products,
        }),
    }
}

/// `{F, F_x, F_y, F_z}`.
pub fn jacobian_ideal(f: &HomForm) -> Vec<HomForm> {
    let mut gens = vec![f.clone()];
    gens.extend(crate::poly::Var::ALL.iter().map(|&v| f.diff(v)));
    gens
}

/// The generators together with all their first partial derivatives, with
/// zero forms and repeated forms dropped.
pub fn derivative_closure(gens: &[HomForm]) -> Vec<HomForm> {
    let mut out: Vec<HomForm> = Vec::new();
    let candidates = gens.iter().cloned().chain(
        gens.iter()
            .flat_map(|g| crate::poly::Var::ALL.map(|v| g.diff(v))),
    );
    for g in candidates {
        if !g.is_zero() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// A saturated graded piece with the depth at which it stabilized.
#[derive(Debug, Clone, PartialEq)]
pub struct SaturatedPiece {
    pub basis: GradedBasis,
    /// The exponent `t` of the first value in the stable window.
    pub depth: u32,
}

pub const DEFAULT_WINDOW: u32 = 2;
pub const DEFAULT_T_MAX: u32 = 8;

/// Graded pieces of the ideal generated by fixed forms, built on demand.
#[derive(Debug, Clone)]
pub struct GeneratedPieces {
    field: FieldRef,
    gens: Vec<HomForm>,
    pieces: Vec<Option<GradedBasis>>,
}

impl GeneratedPieces {
    pub fn new(field: &FieldRef, gens: &[HomForm]) -> Self {
        GeneratedPieces {
            field: field.clone(),
            gens: gens.to_vec(),
            pieces: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn generators(&self) -> &[HomForm] {
        &self.gens
    }

    /// Largest generator degree.
    pub fn top_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn piece(&mut self, d: u32) -> &GradedBasis {
        let i = d as usize;
        if self.pieces.len() <= i {
            self.pieces.resize(i + 1, None);
        }
        if self.pieces[i].is_none() {
            self.pieces[i] = Some(ideal_piece(&self.field, &self.gens, d));
        }
        self.pieces[i].as_ref().expect("just built")
    }
}

/// Degree-`d` piece of the saturation by `(x, y, z)`: forms `f` with
/// `x^a f` in the ideal for every monomial `x^a` of degree `t`.
///
/// `t` starts where `d + t` reaches the largest generator degree and grows
/// until `window` consecutive values agree both in the answer and in the
/// growth `codim J_{d+t} - codim J_{d+t-1}` of the ideal's Hilbert function.
/// After `t_max` further steps without agreement, the search gives up.
pub fn truncated_saturation(
    pieces: &mut GeneratedPieces,
    d: u32,
    window: u32,
    t_max: u32,
) -> Result<SaturatedPiece> {
    let t0 = pieces.top_degree().saturating_sub(d);
    let mut prev: Option<(usize, i64)> = None;
    let mut run = 0;
    let mut run_start = t0;
    for t in t0..=t0 + t_max {
        let below = if d + t == 0 {
            0
        } else {
            pieces.piece(d + t - 1).codim() as i64
        };
        let growth = pieces.piece(d + t).codim() as i64 - below;
        let current = colon_by_power(pieces.piece(d + t), d, t);
        let key = (current.dim(), growth);
        if prev == Some(key) {
            run += 1;
        } else {
            run = 1;
            run_start = t;
        }
        if run >= window.max(1) {
            return Ok(SaturatedPiece {
                basis: current,
                depth: run_start,
            });
        }
        prev = Some(key);
    }
    Err(Error::NoStabilization { degree: d, t_max })
}

/// `{ f in R_d : x^a f in target for all |a| = t }` where `target` is a piece
/// of degree `d + t`, narrowed one monomial at a time.
pub fn colon_by_power(target: &GradedBasis, d: u32, t: u32) -> GradedBasis {
    assert_eq!(target.degree(), d + t, "target piece has the wrong degree");
    let field = target.field.clone();
    let annihilator = target.annihilator();
    if annihilator.is_empty() {
        return GradedBasis::full(&field, d);
    }
    let mut candidates: Vec<HomForm> = GradedBasis::full(&field, d).forms();
    for m in monomial_basis(t) {
        if candidates.is_empty() {
            break;
        }
        let shifted: Vec<Vec<FieldElement>> = candidates
            .iter()
            .map(|f| f.mul_monomial(&m).to_vector())
            .collect();
        let rows: Vec<Vec<FieldElement>> = annihilator
            .iter()
            .map(|lam| shifted.iter().map(|v| dot(&field, lam, v)).collect())
            .collect();
        let kernel = Matrix::from_rows(&field, candidates.len(), rows)
            .expect("condition rows")
            .kernel();
        if kernel.len() == candidates.len() {
            continue;
        }
        candidates = kernel
            .iter()
            .map(|c| {
                let mut acc = HomForm::zero(&field, d);
                for (ci, f) in c.iter().zip(&candidates) {
                    if !ci.is_zero() {
                        acc = acc.checked_add(&f.scale(ci)).expect("same degree");
                    }
                }
                acc
            })
            .collect();
    }
    GradedBasis::span_forms(&field, d, candidates.iter())
}
