//! Dense exact linear algebra over a number field.
//!
//! Elimination is fraction-free: rows are scaled to integral coordinates and
//! reduced with Bareiss updates, whose divisions are exact. The echelon form
//! is then normalized to the unique reduced row echelon form. Pivots are the
//! first nonzero entry in column order, so results are reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef};

#[derive(Clone)]
pub struct Matrix {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Matrix {
    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one(field));
        }
        m
    }

    /// All rows must have length `cols`.
    pub fn from_rows(field: &FieldRef, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for e in &row {
                if !e.field().same_as(field) {
                    return Err(Error::FieldMismatch(
                        field.label().into(),
                        e.field().label().into(),
                    ));
                }
            }
            data.extend(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| dot(&self.field, self.row(i), v))
            .collect())
    }

    /// Reduced row echelon form.
    ///
    /// Uses Bareiss elimination over the rationals and unit-pivot incremental
    /// elimination over extension fields.
    pub fn rref(&self) -> Rref {
        let (mut rows, pivots) = if self.field.degree() == 1 {
            let mut rows = self.row_vecs();
            let pivots = echelon_fraction_free(&mut rows, self.cols);
            (rows, pivots)
        } else {
            let (mut rows, pivots) = echelon_incremental(self.row_vecs(), self.cols);
            rows.resize(self.rows, vec![FieldElement::zero(&self.field); self.cols]);
            (rows, pivots)
        };
        normalize_echelon(&mut rows, &pivots);
        let matrix = Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: rows.concat(),
        };
        Rref {
            rank: pivots.len(),
            pivots,
            matrix,
        }
    }

    pub fn rank(&self) -> usize {
        if self.field.degree() == 1 {
            let mut rows = self.row_vecs();
            echelon_fraction_free(&mut rows, self.cols).len()
        } else {
            echelon_incremental(self.row_vecs(), self.cols).1.len()
        }
    }

    /// Basis of `{ v : M v = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        self.rref().kernel()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {}",
            self.rows,
            self.cols,
            self.field.label()
        )?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(field: &FieldRef, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::zero(field);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub matrix: Matrix,
}

impl Rref {
    /// The nonzero rows.
    pub fn basis(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rank)
            .map(|i| self.matrix.row(i).to_vec())
            .collect()
    }

    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let field = self.matrix.field();
        let cols = self.matrix.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![FieldElement::zero(field); cols];
                v[free] = FieldElement::one(field);
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.matrix.get(i, free);
                }
                v
            })
            .collect()
    }

    /// Remainder of `v` after subtracting its projection onto the row space
    /// along pivot columns; zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (j, e) in self.matrix.row(i).iter().enumerate().skip(p) {
                if !e.is_zero() {
                    r[j] = &r[j] - &(&f * e);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }
}

/// Forward Bareiss elimination in place; returns pivot columns. Rows end in
/// row echelon form, with zero rows at the bottom.
pub fn echelon_fraction_free(rows: &mut [Vec<FieldElement>], cols: usize) -> Vec<usize> {
    let Some(field) = rows
        .first()
        .and_then(|r| r.first())
        .map(|e| e.field().clone())
    else {
        return Vec::new();
    };
    for row in rows.iter_mut() {
        clear_row_denominators(row);
    }
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut prev = FieldElement::one(&field);
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let prev_inv = if prev.is_one() {
            None
        } else {
            Some(prev.inv().expect("nonzero pivot"))
        };
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let f = std::mem::replace(&mut row[c], FieldElement::zero(&field));
            for j in c + 1..cols {
                let mut v = if row[j].is_zero() {
                    row[j].clone()
                } else {
                    piv * &row[j]
                };
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&f * &pivot_row[j]);
                }
                if let Some(inv) = &prev_inv {
                    if !v.is_zero() {
                        v = &v * inv;
                    }
                }
                row[j] = v;
            }
        }
        prev = top[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row echelon form built one row at a time: each incoming row is reduced by
/// the unit-pivot rows kept so far and, if anything is left, scaled to a unit
/// pivot and kept. Returns the kept rows sorted by pivot column.
///
/// Over extension fields this keeps entries close to their final reduced size,
/// where cross-multiplying elimination lets them grow with every pivot.
pub fn echelon_incremental(
    rows: Vec<Vec<FieldElement>>,
    cols: usize,
) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let mut kept: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    for mut v in rows {
        for (p, b) in &kept {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for j in *p..cols {
                if !b[j].is_zero() {
                    v[j] = &v[j] - &(&f * &b[j]);
                }
            }
        }
        if let Some(p) = (0..cols).find(|&j| !v[j].is_zero()) {
            let inv = v[p].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for e in v[p..].iter_mut() {
                    if !e.is_zero() {
                        *e = &*e * &inv;
                    }
                }
            }
            kept.push((p, v));
            if kept.len() == cols {
                break;
            }
        }
    }
    kept.sort_by_key(|(p, _)| *p);
    kept.into_iter().map(|(p, v)| (v, p)).unzip()
}

fn clear_row_denominators(row: &mut [FieldElement]) {
    use num_integer::Integer;
    let lcm = row
        .iter()
        .fold(num_bigint::BigInt::from(1), |l, e| l.lcm(e.denominator()));
    if lcm == num_bigint::BigInt::from(1) {
        return;
    }
    let s = crate::field::Rational::from_integer(lcm);
    for e in row.iter_mut() {
        if !e.is_zero() {
            *e = e.scale(&s);
        }
    }
}

/// Turns a row echelon form into the reduced one: pivots scaled to 1 and
/// cleared above.
fn normalize_echelon(rows: &mut [Vec<FieldElement>], pivots: &[usize]) {
    for (i, &c) in pivots.iter().enumerate().rev() {
        let inv = rows[i][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for e in rows[i][c..].iter_mut() {
                if !e.is_zero() {
                    *e = &*e * &inv;
                }
            }
        }
        let (above, below) = rows.split_at_mut(i);
        let prow = &below[0];
        for row in above.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..prow.len() {
                if !prow[j].is_zero() {
                    row[j] = &row[j] - &(&f * &prow[j]);
                }
            }
        }
    }
}

/// Outcome of a row-space membership test, with a checkable witness.
#[derive(Debug, Clone, PartialEq)]
pub enum SpanWitness {
    /// `combination · span_rows = target`.
    Member { combination: Vec<FieldElement> },
    /// `dual · row = 0` for every span row and `dual · target = 1`.
    NonMember { dual: Vec<FieldElement> },
}

impl SpanWitness {
    pub fn is_member(&self) -> bool {
        matches!(self, SpanWitness::Member { .. })
    }
}

/// Decides whether `target` lies in the row space of `span`, returning a
/// witness that has been re-verified exactly.
pub fn span_decide(target: &[FieldElement], span: &Matrix) -> Result<SpanWitness> {
    if target.len() != span.cols() {
        return Err(Error::DimensionMismatch {
            expected: span.cols(),
            got: target.len(),
        });
    }
    let field = span.field();
    let rref = span.rref();
    let witness = if rref.contains(target) {
        // Solve span^T c = target.
        let t = span.transpose();
        let mut aug = t.row_vecs();
        for (row, v) in aug.iter_mut().zip(target) {
            row.push(v.clone());
        }
        let aug = Matrix::from_rows(field, span.rows() + 1, aug)?.rref();
        let mut combination = vec![FieldElement::zero(field); span.rows()];
        for (i, &p) in aug.pivots.iter().enumerate() {
            if p == span.rows() {
                return Err(Error::Contradiction(
                    "membership solve is inconsistent".into(),
                ));
            }
            combination[p] = aug.matrix.get(i, span.rows()).clone();
        }
        SpanWitness::Member { combination }
    } else {
        let dual = rref
            .kernel()
            .into_iter()
            .find_map(|v| {
                let s = dot(field, &v, target);
                (!s.is_zero()).then(|| {
                    let inv = s.inv().expect("nonzero");
                    v.iter().map(|e| e * &inv).collect::<Vec<_>>()
                })
            })
            .ok_or_else(|| Error::Contradiction("no separating functional found".into()))?;
        SpanWitness::NonMember { dual }
    };
    if !check_witness(&witness, target, span) {
        return Err(Error::Contradiction(
            "span witness failed re-verification".into(),
        ));
    }
    Ok(witness)
}

/// Exact re-check of a witness against the spanning rows.
pub fn check_witness(witness: &SpanWitness, target: &[FieldElement], span: &Matrix) -> bool {
    match witness {
        SpanWitness::Member { combination } => {
            combination.len() == span.rows()
                && span
                    .transpose()
                    .mul_vec(combination)
                    .map(|v| v == target)
                    .unwrap_or(false)
        }
        SpanWitness::NonMember { dual } => {
            dual.len() == span.cols()
                && (0..span.rows()).all(|i| dot(span.field(), span.row(i), dual).is_zero())
                && !dot(span.field(), dual, target).is_zero()
        }
    }
}

/// Row spaces of two matrices with the same column count coincide.
pub fn same_row_space(a: &Matrix, b: &Matrix) -> bool {
    let (ra, rb) = (a.rref(), b.rref());
    ra.rank == rb.rank && ra.basis() == rb.basis()
}
