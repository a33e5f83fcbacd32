//! Sparse multivariate polynomials over an exact field with a weighted grading.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};
use crate::locus::ProjectivePoint;

pub use parse::parse;

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    names: Vec<String>,
    weights: Vec<u32>,
    field: FieldSpec,
}

/// A graded polynomial ring `field[x0, ..., x_{n-1}]` with `deg x_i = w_i`.
///
/// Cheap to clone; polynomials hold a handle to their ring.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}] weights {:?}",
            self.0.field,
            self.0.names.join(","),
            self.0.weights
        )
    }
}

impl Ring {
    pub fn new(names: Vec<String>, weights: Vec<u32>, field: FieldSpec) -> Result<Ring> {
        if names.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variable names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if names.is_empty() {
            return Err(Error::InvalidRing("no variables".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable name {n}")));
            }
        }
        Ok(Ring(Arc::new(RingData {
            names,
            weights,
            field,
        })))
    }

    /// `field[x0, ..., x_{n-1}]` with the given weights.
    pub fn weighted(weights: &[u32], field: FieldSpec) -> Result<Ring> {
        let names = (0..weights.len()).map(|i| format!("x{i}")).collect();
        Ring::new(names, weights.to_vec(), field)
    }

    /// `field[x0, ..., x_{n-1}]`, all weights 1.
    pub fn standard(nvars: usize, field: FieldSpec) -> Ring {
        Ring::weighted(&vec![1; nvars], field).expect("valid standard ring")
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field
    }

    /// `|w|`, the sum of the weights.
    pub fn total_weight(&self) -> u32 {
        self.0.weights.iter().sum()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::from_terms(self, [(Monomial::one(self.nvars()), c)])
    }

    pub fn variable(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars());
        Polynomial::from_terms(
            self,
            [(Monomial::variable(self.nvars(), i), self.field().one())],
        )
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars());
        Polynomial::from_terms(self, [(m, self.field().one())])
    }

    /// All monomials of weighted degree exactly `k`, lexicographically
    /// descending (`x0^k` first when `w0 = 1`). Empty for negative `k`.
    pub fn monomial_basis(&self, k: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if k < 0 {
            return out;
        }
        let mut exps = vec![0u32; self.nvars()];
        fill_basis(self.weights(), 0, k as u64, &mut exps, &mut out);
        out
    }
}

fn fill_basis(weights: &[u32], i: usize, rest: u64, exps: &mut [u32], out: &mut Vec<Monomial>) {
    let w = weights[i] as u64;
    if i + 1 == weights.len() {
        if rest.is_multiple_of(w) {
            exps[i] = (rest / w) as u32;
            out.push(Monomial(exps.to_vec()));
        }
        return;
    }
    for e in (0..=rest / w).rev() {
        exps[i] = e as u32;
        fill_basis(weights, i + 1, rest - e * w, exps, out);
    }
    exps[i] = 0;
}

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exact division, `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Value at a point (`x^a` evaluated coordinate-wise).
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let field = point[0].field();
        self.0
            .iter()
            .zip(point)
            .filter(|(e, _)| **e > 0)
            .fold(field.one(), |acc, (e, x)| acc * x.pow(*e as u64))
    }

    fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

/// Weighted degree of a polynomial whose terms may disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(u32),
    Inhomogeneous,
}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    /// Sums the given terms, dropping zero coefficients.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = ring.zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Inverse of [`Polynomial::coefficient_vector`].
    pub fn from_coefficients(ring: &Ring, basis: &[Monomial], coeffs: &[Scalar]) -> Self {
        assert_eq!(basis.len(), coeffs.len());
        Polynomial::from_terms(ring, basis.iter().cloned().zip(coeffs.iter().cloned()))
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        assert_eq!(m.nvars(), self.ring.nvars(), "monomial from another ring");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// Coefficients against `basis`. Terms outside the basis are ignored.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn weighted_degree(&self) -> Result<Degree> {
        let w = self.ring.weights();
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(Degree::Homogeneous(first))
        } else {
            Ok(Degree::Inhomogeneous)
        }
    }

    /// The weighted degree, or an error if zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        match self.weighted_degree()? {
            Degree::Homogeneous(d) => Ok(d),
            Degree::Inhomogeneous => Err(Error::Inhomogeneous),
        }
    }

    /// Largest weighted degree of a term.
    pub fn max_degree(&self) -> Option<u32> {
        let w = self.ring.weights();
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.constant(self.ring.field().one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.ring.nvars(), "variable index out of range");
        let field = self.ring.field();
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[i] -= 1;
            out.add_term(Monomial(d), &(c * &field.from_u64(e as u64)));
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars(), "point has wrong length");
        let field = self.ring.field();
        let max_exp = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().copied())
            .max()
            .unwrap_or(0);
        let powers: Vec<Vec<Scalar>> = point
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(max_exp as usize + 1);
                row.push(field.one());
                for k in 1..=max_exp as usize {
                    let next = &row[k - 1] * x;
                    row.push(next);
                }
                row
            })
            .collect();
        self.terms.iter().fold(field.zero(), |acc, (m, c)| {
            let v = m.0.iter().enumerate().fold(c.clone(), |v, (j, &e)| {
                if e == 0 {
                    v
                } else {
                    v * &powers[j][e as usize]
                }
            });
            acc + v
        })
    }

    /// Multiplies each term by `x_new^(k - deg)` so the result is
    /// homogeneous of degree `k`. `x_new` must have weight 1.
    pub fn homogenize(&self, target_degree: u32, new_var: usize) -> Result<Polynomial> {
        let w = self.ring.weights();
        if new_var >= w.len() {
            return Err(Error::InvalidInput(format!(
                "no variable with index {new_var}"
            )));
        }
        if w[new_var] != 1 {
            return Err(Error::ChartWeight(new_var, w[new_var]));
        }
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let d = m.weighted_degree(w);
            if d > target_degree {
                return Err(Error::TermDegreeExceeds {
                    term: d,
                    target: target_degree,
                });
            }
            let mut e = m.0.clone();
            e[new_var] += target_degree - d;
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    /// Local expansion at `point` in the chart `x_chart = 1`: substitutes
    /// `x_chart = 1` and `x_j = point_j + y_j`, with `y1, y2, ...` the
    /// remaining variables in ascending order.
    pub fn dehomogenize(&self, chart: usize, point: &ProjectivePoint) -> Result<AffinePolynomial> {
        let w = self.ring.weights();
        let coords = point.coordinates();
        if coords.len() != w.len() {
            return Err(Error::RingMismatch(format!(
                "point has {} coordinates, ring has {} variables",
                coords.len(),
                w.len()
            )));
        }
        if w[chart] != 1 {
            return Err(Error::ChartWeight(chart, w[chart]));
        }
        if !coords[chart].is_one() {
            return Err(Error::ChartNotNormalized(chart));
        }
        let field = self.ring.field();
        let local = local_ring(w.len() - 1, field);
        let locals: Vec<usize> = (0..w.len()).filter(|&j| j != chart).collect();
        let shifted: Vec<Polynomial> = locals
            .iter()
            .enumerate()
            .map(|(k, &j)| &local.constant(coords[j].clone()) + &local.variable(k))
            .collect();
        let mut cache: Vec<Vec<Polynomial>> = vec![vec![local.constant(field.one())]; locals.len()];
        let mut out = local.zero();
        for (m, c) in &self.terms {
            let mut term = local.constant(c.clone());
            for (k, &j) in locals.iter().enumerate() {
                let e = m.0[j] as usize;
                while cache[k].len() <= e {
                    let next = cache[k].last().expect("nonempty") * &shifted[k];
                    cache[k].push(next);
                }
                if e > 0 {
                    term = &term * &cache[k][e];
                }
            }
            out = &out + &term;
        }
        Ok(AffinePolynomial(out))
    }

    fn check_ring(&self, other: &Polynomial) {
        assert_eq!(self.ring, other.ring, "polynomials from different rings");
    }
}

/// `field[y1, ..., y_n]` with unit weights, the ring of local coordinates.
pub fn local_ring(n: usize, field: FieldSpec) -> Ring {
    let names = (1..=n).map(|i| format!("y{i}")).collect();
    Ring::new(names, vec![1; n], field).expect("valid local ring")
}

/// A polynomial in local affine coordinates `y1, ..., y_{n-1}` around a
/// point, produced by [`Polynomial::dehomogenize`].
#[derive(Clone, PartialEq, Eq)]
pub struct AffinePolynomial(Polynomial);

impl AffinePolynomial {
    /// Wraps a polynomial already living in a local ring.
    pub fn from_local(p: Polynomial) -> Self {
        AffinePolynomial(p)
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_polynomial(self) -> Polynomial {
        self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.ring.nvars()
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Polynomial {
        Polynomial {
            ring: self.0.ring.clone(),
            terms: self
                .0
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for AffinePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for AffinePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffinePolynomial({})", self.0)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Terms in graded-lex order, highest weighted degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let w = self.ring.weights();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            b.weighted_degree(w)
                .cmp(&a.weighted_degree(w))
                .then_with(|| b.cmp(a))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative_representative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = m.render(self.ring.names());
            if mono.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn ring5(field: FieldSpec) -> Ring {
        Ring::standard(5, field)
    }

    #[test]
    fn weighted_degree_examples() {
        let r = ring5(FieldSpec::rationals());
        let quintic = parse("x0^5 + x1^5 + x2^5 + x3^5 + x4^5", &r).unwrap();
        assert_eq!(quintic.weighted_degree().unwrap(), Degree::Homogeneous(5));
        let mixed = parse("x0 + x1^2", &r).unwrap();
        assert_eq!(mixed.weighted_degree().unwrap(), Degree::Inhomogeneous);
        assert_eq!(r.zero().weighted_degree(), Err(Error::ZeroPolynomial));

        let rw = Ring::weighted(&[2, 1, 1, 1, 1], FieldSpec::rationals()).unwrap();
        let p = parse("x0 + x1^2", &rw).unwrap();
        assert_eq!(p.weighted_degree().unwrap(), Degree::Homogeneous(2));

        let cover = Ring::weighted(&[1, 1, 1, 1, 2], f(7)).unwrap();
        let p = parse("x4^3 - x0^6 - x1^6 - x2^6 - x3^6", &cover).unwrap();
        assert_eq!(p.weighted_degree().unwrap(), Degree::Homogeneous(6));
    }

    #[test]
    fn partial_derivative_examples() {
        let r = ring5(FieldSpec::rationals());
        let p = parse("x0^3", &r).unwrap();
        assert_eq!(p.partial_derivative(0), parse("3*x0^2", &r).unwrap());

        let cover = Ring::weighted(&[1, 1, 1, 1, 2], f(7)).unwrap();
        let p = parse("x4^3 - x0^6 - x1^3*x2^3", &cover).unwrap();
        assert_eq!(p.partial_derivative(4), parse("3*x4^2", &cover).unwrap());
    }

    #[test]
    fn evaluate_examples() {
        let q = FieldSpec::rationals();
        let r = ring5(q);
        let quintic = parse("x0^5 + x1^5 + x2^5 + x3^5 + x4^5", &r).unwrap();
        let pt: Vec<_> = [1, -1, 0, 0, 0].iter().map(|&v| q.from_i64(v)).collect();
        assert!(quintic.evaluate(&pt).is_zero());
        let xy = parse("x0*x1", &r).unwrap();
        let pt: Vec<_> = [2, 3, 0, 0, 0].iter().map(|&v| q.from_i64(v)).collect();
        assert_eq!(xy.evaluate(&pt), q.from_i64(6));

        let f5 = f(5);
        let seven = parse("7", &ring5(f5)).unwrap();
        let pt: Vec<_> = (0..5).map(|v| f5.from_i64(v)).collect();
        assert_eq!(seven.evaluate(&pt), f5.from_i64(2));
    }

    #[test]
    fn monomial_basis_counts() {
        let q = FieldSpec::rationals();
        assert_eq!(ring5(q).monomial_basis(7).len(), 330);
        let w = Ring::weighted(&[1, 1, 1, 1, 2], q).unwrap();
        assert_eq!(w.monomial_basis(6).len(), 84 + 35 + 10 + 1);
        assert_eq!(w.monomial_basis(0), vec![Monomial::one(5)]);
        assert!(w.monomial_basis(-1).is_empty());
        let b = ring5(q).monomial_basis(2);
        assert_eq!(b[0], Monomial::new(vec![2, 0, 0, 0, 0]));
        assert_eq!(b[1], Monomial::new(vec![1, 1, 0, 0, 0]));
        assert!(b.windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn homogenize_examples() {
        let q = FieldSpec::rationals();
        let r = Ring::standard(4, q);
        let p = parse("x1^2 + x3", &r).unwrap();
        assert_eq!(
            p.homogenize(2, 0).unwrap(),
            parse("x1^2 + x0*x3", &r).unwrap()
        );
        let h = parse("x1^2 + x0*x3", &r).unwrap();
        assert_eq!(h.homogenize(2, 0).unwrap(), h);
        assert_eq!(
            parse("x1^3", &r).unwrap().homogenize(2, 0),
            Err(Error::TermDegreeExceeds { term: 3, target: 2 })
        );
    }

    #[test]
    fn dehomogenize_examples() {
        let q = FieldSpec::rationals();
        let r = ring5(q);
        let fp = parse("x0^2*(x1^3 + x2^3 + x3^3 + x4^3)", &r).unwrap();
        let pt = ProjectivePoint::new(&r, vec![q.one(), q.zero(), q.zero(), q.zero(), q.zero()])
            .unwrap();
        let local = fp.dehomogenize(0, &pt).unwrap();
        let lr = local_ring(4, q);
        assert_eq!(
            local.as_polynomial(),
            &parse("y1^3 + y2^3 + y3^3 + y4^3", &lr).unwrap()
        );

        let g = parse("x0^2 + 3*x1*x4 - x2^2", &r).unwrap();
        let pt = ProjectivePoint::new(&r, [1, 2, 3, 0, 5].iter().map(|&v| q.from_i64(v)).collect())
            .unwrap();
        let local = g.dehomogenize(0, &pt).unwrap();
        assert_eq!(
            local.as_polynomial().coefficient(&Monomial::one(4)),
            g.evaluate(pt.coordinates())
        );

        let w = Ring::weighted(&[1, 1, 1, 1, 2], q).unwrap();
        let h = parse("x4^3", &w).unwrap();
        let pt =
            ProjectivePoint::new(&w, vec![q.zero(), q.zero(), q.zero(), q.one(), q.one()]).unwrap();
        assert_eq!(
            h.dehomogenize(4, &pt).unwrap_err(),
            Error::ChartWeight(4, 2)
        );
    }

    fn arb_poly(ring: Ring, max_deg: u32) -> impl Strategy<Value = Polynomial> {
        let n = ring.nvars();
        let field = ring.field();
        proptest::collection::vec((proptest::collection::vec(0..=max_deg, n), -5i64..=5), 0..6)
            .prop_map(move |terms| {
                Polynomial::from_terms(
                    &ring,
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial::new(e), field.from_i64(c))),
                )
            })
    }

    fn arb_homogeneous(ring: Ring, deg: i64) -> impl Strategy<Value = Polynomial> {
        let basis = ring.monomial_basis(deg);
        let field = ring.field();
        proptest::collection::vec(-4i64..=4, basis.len()).prop_map(move |c| {
            let coeffs: Vec<_> = c.iter().map(|&v| field.from_i64(v)).collect();
            Polynomial::from_coefficients(&ring, &basis, &coeffs)
        })
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(p in arb_poly(ring5(f(67)), 3)) {
            let text = p.to_string();
            prop_assert_eq!(parse(&text, p.ring()).unwrap(), p);
        }

        #[test]
        fn render_parse_roundtrip_rational(
            p in arb_poly(ring5(FieldSpec::rationals()), 3),
            d in 1i64..6,
        ) {
            let q = FieldSpec::rationals();
            let p = p.scale(&q.from_ratio(&1.into(), &d.into()).unwrap());
            prop_assert_eq!(parse(&p.to_string(), p.ring()).unwrap(), p);
        }

        #[test]
        fn mixed_partials_commute(p in arb_poly(ring5(f(11)), 4), i in 0usize..5, j in 0usize..5) {
            prop_assert_eq!(
                p.partial_derivative(i).partial_derivative(j),
                p.partial_derivative(j).partial_derivative(i)
            );
        }

        #[test]
        fn euler_identity(
            p in arb_homogeneous(Ring::weighted(&[1, 1, 1, 1, 2], f(67)).unwrap(), 5),
        ) {
            let ring = p.ring().clone();
            let field = ring.field();
            let mut lhs = ring.zero();
            for (i, &w) in ring.weights().iter().enumerate() {
                let t = &ring.variable(i) * &p.partial_derivative(i);
                lhs = &lhs + &t.scale(&field.from_u64(w as u64));
            }
            prop_assert_eq!(lhs, p.scale(&field.from_u64(5)));
        }

        #[test]
        fn dehomogenize_is_ring_map(
            a in arb_poly(ring5(f(67)), 2),
            b in arb_poly(ring5(f(67)), 2),
            coords in proptest::collection::vec(0u64..67, 4),
        ) {
            let field = f(67);
            let mut pt = vec![field.one()];
            pt.extend(coords.iter().map(|&c| field.from_u64(c)));
            let pt = ProjectivePoint::new(a.ring(), pt).unwrap();
            let da = a.dehomogenize(0, &pt).unwrap().into_polynomial();
            let db = b.dehomogenize(0, &pt).unwrap().into_polynomial();
            let sum = (&a + &b).dehomogenize(0, &pt).unwrap().into_polynomial();
            let prod = (&a * &b).dehomogenize(0, &pt).unwrap().into_polynomial();
            prop_assert_eq!(sum, &da + &db);
            prop_assert_eq!(prod, &da * &db);
        }
    }
}
