//! Exact arithmetic in number fields `Q[a]/(m(a))`.
//!
//! Every element is stored in the power basis `1, a, ..., a^{D-1}` as a
//! vector of integer numerators over one positive common denominator, and is
//! kept in lowest terms after every operation. Equality is therefore a plain
//! coefficient comparison.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type FieldRef = Arc<NumberField>;

const ROOT_TOLERANCE: f64 = 1e-12;

/// A number field presented by a monic minimal polynomial together with a
/// chosen complex root, which fixes the embedding used for rendering.
#[derive(Debug)]
pub struct NumberField {
    minpoly: Vec<Rational>,
    label: String,
    root: Complex64,
    integral_tail: Option<Vec<BigInt>>,
}

impl NumberField {
    /// `minpoly` lists coefficients from the constant term up to the leading 1.
    pub fn new(
        minpoly: Vec<Rational>,
        root: Complex64,
        label: impl Into<String>,
    ) -> Result<FieldRef> {
        if minpoly.len() < 2 || !minpoly.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        let residual = eval_complex(&minpoly, root).norm();
        if !(residual < ROOT_TOLERANCE) {
            return Err(Error::BadRoot(residual));
        }
        if minpoly.len() > 2 {
            if let Some(r) = rational_root(&minpoly) {
                return Err(Error::RationalRoot(r.to_string()));
            }
        }
        let d = minpoly.len() - 1;
        let integral_tail = minpoly[..d]
            .iter()
            .all(|c| c.is_integer())
            .then(|| minpoly[..d].iter().map(|c| c.to_integer()).collect());
        Ok(Arc::new(NumberField {
            minpoly,
            label: label.into(),
            root,
            integral_tail,
        }))
    }

    /// The field of rationals, presented as `Q[a]/(a)`.
    pub fn rationals() -> FieldRef {
        Self::new(
            vec![Rational::zero(), Rational::one()],
            Complex64::new(0.0, 0.0),
            "QQ",
        )
        .unwrap()
    }

    /// `Q[a]/(a^2 - 3)` with `a = +sqrt(3)`.
    pub fn sqrt3() -> FieldRef {
        Self::new(
            vec![
                Rational::from_integer((-3).into()),
                Rational::zero(),
                Rational::one(),
            ],
            Complex64::new(3f64.sqrt(), 0.0),
            "QQ(sqrt3)",
        )
        .unwrap()
    }

    /// `Q[a]/(a^2 + a + 1)` with `a = exp(2 pi i / 3)`.
    pub fn eisenstein() -> FieldRef {
        Self::cyclotomic(3)
    }

    /// `Q[a]/(Phi_n(a))` with `a = exp(2 pi i / n)`.
    pub fn cyclotomic(n: u32) -> FieldRef {
        let phi = cyclotomic_polynomial(n);
        let angle = 2.0 * std::f64::consts::PI / n as f64;
        Self::new(
            phi.into_iter().map(Rational::from_integer).collect(),
            Complex64::from_polar(1.0, angle),
            format!("QQ(zeta_{n})"),
        )
        .unwrap()
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn root(&self) -> Complex64 {
        self.root
    }

    pub fn has_real_root(&self) -> bool {
        self.root.im == 0.0
    }

    /// Two presentations are compatible when their minimal polynomials agree.
    pub fn same_as(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.minpoly == other.minpoly
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            minpoly: self.minpoly.iter().map(|c| c.to_string()).collect(),
            root: ComplexJson {
                re: self.root.re,
                im: self.root.im,
            },
            label: self.label.clone(),
        }
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<FieldRef> {
        let minpoly = desc
            .minpoly
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            minpoly,
            Complex64::new(desc.root.re, desc.root.im),
            desc.label.clone(),
        )
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = Q[a]/({})",
            self.label,
            format_upoly(&self.minpoly, "a")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

/// Serialized form of a field: minimal polynomial coefficients from the
/// constant term up, as exact rational strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub minpoly: Vec<String>,
    pub root: ComplexJson,
    pub label: String,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

/// Computes `Phi_n` by dividing `x^n - 1` by `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = exact_int_div(&p, &cyclotomic_polynomial(d));
    }
    p
}

// Exact division of integer polynomials by a monic divisor.
fn exact_int_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn eval_complex(poly: &[Rational], z: Complex64) -> Complex64 {
    poly.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
        acc * z + c.to_f64().unwrap_or(f64::NAN)
    })
}

// Rational root theorem screen on the integer-scaled polynomial. Skipped when
// the coefficients are too large to enumerate divisors cheaply.
fn rational_root(poly: &[Rational]) -> Option<Rational> {
    let lcm = poly.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    if ints[0].is_zero() {
        return Some(Rational::zero());
    }
    let c0 = ints[0].abs().to_u64()?;
    let lead = ints.last().unwrap().abs().to_u64()?;
    if c0 > 1 << 40 || lead > 1 << 40 {
        return None;
    }
    let value_at = |q: &Rational| {
        ints.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * q + Rational::from_integer(c.clone())
        })
    };
    for p in divisors(c0) {
        for q in divisors(lead) {
            for sign in [1i64, -1] {
                let cand = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                if value_at(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// An exact element of a [`NumberField`].
#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Approximate complex value of an element with a rigorous-in-practice
/// absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Embedded {
    pub value: Complex64,
    pub error: f64,
}

impl FieldElement {
    pub fn zero(field: &FieldRef) -> Self {
        FieldElement {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &FieldRef, v: i64) -> Self {
        let mut e = Self::zero(field);
        e.num[0] = BigInt::from(v);
        e
    }

    pub fn from_rational(field: &FieldRef, q: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = q.numer().clone();
        FieldElement {
            field: field.clone(),
            num,
            den: q.denom().clone(),
        }
    }

    /// The class of `a` itself.
    pub fn generator(field: &FieldRef) -> Self {
        Self::from_poly(field, &[Rational::zero(), Rational::one()])
    }

    /// Exactly `D` coordinates in the power basis.
    pub fn from_coeffs(field: &FieldRef, coeffs: &[Rational]) -> Result<Self> {
        if coeffs.len() != field.degree() {
            return Err(Error::DimensionMismatch {
                expected: field.degree(),
                got: coeffs.len(),
            });
        }
        Ok(Self::from_poly(field, coeffs))
    }

    /// Any polynomial in `a`, reduced modulo the minimal polynomial.
    pub fn from_poly(field: &FieldRef, coeffs: &[Rational]) -> Self {
        let mut q: Vec<Rational> = coeffs.to_vec();
        reduce_rational(&mut q, &field.minpoly);
        q.resize(field.degree(), Rational::zero());
        let (num, den) = pack(&q);
        FieldElement {
            field: field.clone(),
            num,
            den,
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Integer power-basis coordinates of `self * denominator()`.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|n| n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|n| n.is_zero())
    }

    /// `Some(q)` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        self.num[1..]
            .iter()
            .all(|n| n.is_zero())
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.label.clone(),
                other.field.label.clone(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &other.den, b * &self.den);
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        FieldElement::canonical(&self.field, num, den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let den = &self.den * &other.den;
        match &self.field.integral_tail {
            Some(tail) => {
                for k in (d..2 * d - 1).rev() {
                    let c = std::mem::take(&mut prod[k]);
                    if c.is_zero() {
                        continue;
                    }
                    for (j, t) in tail.iter().enumerate() {
                        if !t.is_zero() {
                            prod[k - d + j] -= &c * t;
                        }
                    }
                }
                prod.truncate(d);
                FieldElement::canonical(&self.field, prod, den)
            }
            None => {
                let mut q: Vec<Rational> = prod
                    .into_iter()
                    .map(|n| Rational::new(n, den.clone()))
                    .collect();
                reduce_rational(&mut q, &self.field.minpoly);
                q.truncate(d);
                let (num, den) = pack(&q);
                FieldElement {
                    field: self.field.clone(),
                    num,
                    den,
                }
            }
        }
    }

    fn canonical(field: &FieldRef, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|n| *n = -std::mem::take(n));
        }
        let mut g = den.clone();
        for n in &num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if num.iter().all(|n| n.is_zero()) {
            den = BigInt::one();
        } else if !g.is_one() {
            num.iter_mut().for_each(|n| *n /= &g);
            den /= &g;
        }
        FieldElement {
            field: field.clone(),
            num,
            den,
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against the
    /// minimal polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, &q.recip()));
        }
        let mut r0 = self.field.minpoly.clone();
        let mut r1 = trim(self.coeffs());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() > 1 {
            let lead = r0.last().unwrap().clone();
            let monic: Vec<Rational> = r0.iter().map(|c| c / &lead).collect();
            return Err(Error::NotInvertible(format_upoly(&monic, "a")));
        }
        let g = r0[0].clone();
        let inv: Vec<Rational> = s0.iter().map(|c| c / &g).collect();
        Ok(Self::from_poly(&self.field, &inv))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let num = self.num.iter().map(|n| n * q.numer()).collect();
        Self::canonical(&self.field, num, &self.den * q.denom())
    }

    /// Multiplies by the common denominator, leaving integer coordinates.
    pub fn clear_denominator(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            num: self.num.clone(),
            den: BigInt::one(),
        }
    }

    /// Exact complex value at the field's root, rounded once.
    pub fn approx(&self) -> Complex64 {
        self.embed_unchecked().value
    }

    /// Complex embedding at the chosen root. Fails when the error bound
    /// exceeds `2^-precision`.
    pub fn embed(&self, precision: u32) -> Result<Embedded> {
        let e = self.embed_unchecked();
        let limit = 2f64.powi(-(precision.min(1000) as i32));
        if e.error > limit || !e.value.re.is_finite() || !e.value.im.is_finite() {
            return Err(Error::PrecisionExhausted {
                requested: precision,
                bound: e.error,
            });
        }
        Ok(e)
    }

    // The root is an exact dyadic rational, so the polynomial is evaluated
    // exactly there; the remaining error comes from the root's own distance to
    // the true root and from the final rounding.
    fn embed_unchecked(&self) -> Embedded {
        let root = self.field.root;
        let (rr, ri) = (dyadic(root.re), dyadic(root.im));
        let coeffs = self.coeffs();
        let (vr, vi) = eval_exact(&coeffs, &rr, &ri);
        let value = Complex64::new(
            vr.to_f64().unwrap_or(f64::NAN),
            vi.to_f64().unwrap_or(f64::NAN),
        );
        let exact_rounding = dyadic(value.re) == vr && dyadic(value.im) == vi;
        let rounding = if exact_rounding {
            0.0
        } else {
            f64::EPSILON * value.norm()
        };

        let deriv_bound = if coeffs.len() > 1 && coeffs[1..].iter().any(|c| !c.is_zero()) {
            let minpoly = &self.field.minpoly;
            let (mr, mi) = eval_exact(minpoly, &rr, &ri);
            let dm: Vec<Rational> = minpoly
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect();
            let (dr, di) = eval_exact(&dm, &rr, &ri);
            let m_abs = complex_abs(&mr, &mi);
            let d_abs = complex_abs(&dr, &di).max(f64::MIN_POSITIVE);
            let delta = (2.0 * m_abs / d_abs).max(f64::EPSILON * root.norm());
            let radius = root.norm() + delta;
            let slope: f64 = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| {
                    k as f64 * c.abs().to_f64().unwrap_or(f64::INFINITY) * radius.powi(k as i32 - 1)
                })
                .sum();
            slope * delta
        } else {
            0.0
        };
        Embedded {
            value,
            error: rounding + deriv_bound,
        }
    }

    /// Complex conjugation when the field is cyclotomic of order `n`
    /// (`a -> a^{n-1}`).
    pub fn cyclotomic_conjugate(&self, n: u32) -> Self {
        let conj_gen = Self::generator(&self.field).pow(n as u64 - 1);
        let mut acc = Self::zero(&self.field);
        let mut power = Self::one(&self.field);
        for c in self.coeffs() {
            if !c.is_zero() {
                acc = acc.add_unchecked(&power.scale(&c), false);
            }
            power = power.mul_unchecked(&conj_gen);
        }
        acc
    }

    /// Coordinates as exact rational strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(field: &FieldRef, coeffs: &[String]) -> Result<Self> {
        let q = coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(field, &q)
    }
}

fn dyadic(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

fn complex_abs(re: &Rational, im: &Rational) -> f64 {
    let (a, b) = (
        re.to_f64().unwrap_or(f64::INFINITY),
        im.to_f64().unwrap_or(f64::INFINITY),
    );
    a.hypot(b)
}

fn eval_exact(poly: &[Rational], re: &Rational, im: &Rational) -> (Rational, Rational) {
    let mut acc = (Rational::zero(), Rational::zero());
    for c in poly.iter().rev() {
        let nr = &acc.0 * re - &acc.1 * im + c;
        let ni = &acc.0 * im + &acc.1 * re;
        acc = (nr, ni);
    }
    acc
}

fn pack(q: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let num = q.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (num, den)
}

fn reduce_rational(q: &mut Vec<Rational>, minpoly: &[Rational]) {
    let d = minpoly.len() - 1;
    while q.len() > d {
        let c = q.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let k = q.len() - d;
        for (j, m) in minpoly[..d].iter().enumerate() {
            q[k + j] -= &c * m;
        }
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let lead = b.last().unwrap();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn format_upoly(p: &[Rational], var: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        parts.push(format_term(c, &monomial_str(var, k)));
    }
    join_terms(parts)
}

fn monomial_str(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

pub(crate) fn format_term(c: &Rational, mono: &str) -> String {
    if mono.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        mono.to_string()
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

pub(crate) fn join_terms(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            s.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(&p);
        }
    }
    s
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.coeffs();
        if q.len() == 1 {
            return write!(f, "{}", q[0]);
        }
        f.write_str(&format_upoly(&q, "a"))
    }
}

// Operator forms panic on field mismatch; use the `checked_*` methods when
// the operands may come from different fields.
impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_sub(rhs)
            .expect("field mismatch in subtraction")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_mul(rhs)
            .expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt3_reduction() {
        let k = NumberField::sqrt3();
        let a = FieldElement::generator(&k);
        assert_eq!(&a * &a, FieldElement::from_int(&k, 3));
        let one = FieldElement::one(&k);
        assert_eq!(&(&one + &a) * &(&one - &a), FieldElement::from_int(&k, -2));
    }

    #[test]
    fn inverses() {
        let k = NumberField::sqrt3();
        let a = FieldElement::generator(&k);
        assert_eq!(a.inv().unwrap(), a.scale(&q(1, 3)));
        assert_eq!(
            FieldElement::from_int(&k, 2).inv().unwrap(),
            FieldElement::from_rational(&k, &q(1, 2))
        );
        let one = FieldElement::one(&k);
        let expected = FieldElement::from_coeffs(&k, &[q(-1, 2), q(1, 2)]).unwrap();
        assert_eq!((&one + &a).inv().unwrap(), expected);
        assert_eq!(FieldElement::zero(&k).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn degree_one_field_is_rational() {
        let k = NumberField::new(vec![q(-1, 1), q(1, 1)], Complex64::new(1.0, 0.0), "QQ'").unwrap();
        assert_eq!(k.degree(), 1);
        let a = FieldElement::generator(&k);
        assert!(a.is_one());
        let x = FieldElement::from_rational(&k, &q(3, 7));
        assert_eq!(&x * &x.inv().unwrap(), FieldElement::one(&k));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            NumberField::new(
                vec![q(-3, 1), q(0, 1), q(2, 1)],
                Complex64::new(1.2247, 0.0),
                "x"
            )
            .unwrap_err(),
            Error::NotMonic
        );
        assert!(matches!(
            NumberField::new(
                vec![q(-3, 1), q(0, 1), q(1, 1)],
                Complex64::new(1.7, 0.0),
                "x"
            ),
            Err(Error::BadRoot(_))
        ));
        // a^2 - 4 = (a - 2)(a + 2)
        assert!(matches!(
            NumberField::new(
                vec![q(-4, 1), q(0, 1), q(1, 1)],
                Complex64::new(2.0, 0.0),
                "x"
            ),
            Err(Error::RationalRoot(_))
        ));
    }

    #[test]
    fn reducible_modulus_is_reported_on_inversion() {
        // a^4 - 5a^2 + 6 = (a^2 - 2)(a^2 - 3) has no rational root, so it passes the screen.
        let k = NumberField::new(
            vec![q(6, 1), q(0, 1), q(-5, 1), q(0, 1), q(1, 1)],
            Complex64::new(2f64.sqrt(), 0.0),
            "bad",
        )
        .unwrap();
        let x = FieldElement::from_poly(&k, &[q(-2, 1), q(0, 1), q(1, 1)]);
        assert!(matches!(x.inv(), Err(Error::NotInvertible(f)) if f.contains("a^2")));
    }

    #[test]
    fn mismatched_fields_are_errors() {
        let k1 = NumberField::sqrt3();
        let k2 = NumberField::cyclotomic(12);
        let e = FieldElement::one(&k1).checked_add(&FieldElement::one(&k2));
        assert!(matches!(e, Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn cyclotomic_twelve() {
        let k = NumberField::cyclotomic(12);
        assert_eq!(k.degree(), 4);
        let expected: Vec<Rational> = [1, 0, -1, 0, 1].iter().map(|&c| q(c, 1)).collect();
        assert_eq!(k.minpoly(), &expected[..]);
    }

    #[test]
    fn embeddings() {
        let k = NumberField::sqrt3();
        let a = FieldElement::generator(&k).embed(50).unwrap();
        assert!((a.value.re - 3f64.sqrt()).abs() < 1e-15);
        assert!(a.error <= 2f64.powi(-50));
        let half = FieldElement::from_rational(&k, &q(1, 2)).embed(60).unwrap();
        assert_eq!(half.value, Complex64::new(0.5, 0.0));
        assert_eq!(half.error, 0.0);

        let c = NumberField::cyclotomic(12);
        let i = FieldElement::generator(&c).pow(3).embed(40).unwrap();
        assert!((i.value - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!(matches!(
            FieldElement::generator(&k).embed(200),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn canonical_rationals() {
        let k = NumberField::sqrt3();
        let x = FieldElement::from_coeffs(&k, &[q(2, 6), q(-4, 8)]).unwrap();
        let y = FieldElement::from_coeffs(&k, &[q(1, 3), q(-1, 2)]).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.denominator(), &BigInt::from(6));
    }

    #[test]
    fn string_round_trip() {
        let k = NumberField::cyclotomic(12);
        let x = FieldElement::from_coeffs(&k, &[q(1, 2), q(-3, 1), q(0, 1), q(5, 7)]).unwrap();
        assert_eq!(FieldElement::from_strings(&k, &x.to_strings()).unwrap(), x);
        let k2 = NumberField::from_descriptor(&k.descriptor()).unwrap();
        assert!(k2.same_as(&k));
    }

    #[test]
    fn conjugation_fixes_cosines() {
        let k = NumberField::cyclotomic(12);
        let z = FieldElement::generator(&k);
        let cos = (&z + &z.inv().unwrap()).scale(&q(1, 2));
        assert_eq!(cos.cyclotomic_conjugate(12), cos);
        assert_ne!(z.cyclotomic_conjugate(12), z);
    }
}
