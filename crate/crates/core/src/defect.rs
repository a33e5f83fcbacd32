//! Dimension of the equisingular ideal in the critical degree, and the defect.
//!
//! Two independent routes compute `dim I_eq^(D)` for `D = 2d - |w|`:
//!
//! * the quotient method: a form `A` of degree `D` lies in `I_eq` iff at
//!   every triple point its 2-jet lies in the span of the 2-jets of the
//!   partials of `F`. Each point contributes the annihilator of that span
//!   applied to the jet matrix; `dim I_eq^(D) = N - rank`.
//! * the oracle: build `(m_i^3)^(D) + (J_F)^(D)` for every point as a
//!   subspace of `S^D` and intersect them.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Scalar};
use crate::jets::{choose_chart, jet_matrix, partial_jets};
use crate::locus::{ProjectivePoint, TriplePointCertificate};
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quotient,
    Oracle,
    BothAgree,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Quotient => "quotient",
            Method::Oracle => "oracle",
            Method::BothAgree => "both_agree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectResult {
    /// `D = 2d - |w|`.
    pub degree: i64,
    /// `dim S^D`.
    pub dim_s: usize,
    pub mu: usize,
    /// Rank of the condition matrix, `N - dim I_eq^(D)`.
    pub rank: usize,
    pub dim_ieq: usize,
    /// Conditions imposed per point (11 for four local coordinates).
    pub codim_per_point: usize,
    pub delta: i64,
    pub method: Method,
}

impl DefectResult {
    fn new(
        degree: i64,
        dim_s: usize,
        mu: usize,
        codim: usize,
        dim_ieq: usize,
        method: Method,
    ) -> Self {
        let rank = dim_s - dim_ieq;
        let delta = dim_ieq as i64 - (dim_s as i64 - (codim * mu) as i64);
        DefectResult {
            degree,
            dim_s,
            mu,
            rank,
            dim_ieq,
            codim_per_point: codim,
            delta,
            method,
        }
    }
}

fn critical_degree(f: &Polynomial) -> Result<(u32, i64)> {
    let d = f.homogeneous_degree()?;
    let degree = 2 * d as i64 - f.ring().total_weight() as i64;
    if degree < 0 {
        return Err(Error::InvalidInput(format!(
            "critical degree 2d - |w| = {degree} is negative"
        )));
    }
    Ok((d, degree))
}

fn check_distinct<'a>(points: impl Iterator<Item = &'a ProjectivePoint>) -> Result<()> {
    let mut seen = HashSet::new();
    for p in points {
        if !seen.insert(p.clone()) {
            return Err(Error::DuplicatePoint(p.to_string()));
        }
    }
    Ok(())
}

/// Codimension of the jet conditions at one point: jet length minus the
/// number of local coordinates.
fn codim_for(nvars: usize) -> usize {
    crate::jets::jet_len(nvars - 1) - (nvars - 1)
}

/// Checks that for every variable `x_j` some form of degree
/// `d + w_j - |w|` is nonzero at each point, so that the jets of
/// `(J_F)^(D)` span all of the partials' jets.
pub fn quotient_precondition(f: &Polynomial, certs: &[TriplePointCertificate]) -> Result<()> {
    let (d, _) = critical_degree(f)?;
    let ring = f.ring();
    let total = ring.total_weight() as i64;
    for cert in certs {
        for (j, &w) in ring.weights().iter().enumerate() {
            let e = d as i64 + w as i64 - total;
            let ok = ring
                .monomial_basis(e)
                .iter()
                .any(|m| !m.evaluate(cert.point.coordinates()).is_zero());
            if !ok {
                return Err(Error::QuotientPrecondition {
                    point: cert.point.to_string(),
                    variable: j,
                });
            }
        }
    }
    Ok(())
}

/// `dim I_eq^(D)` by the quotient-jet method.
pub fn equisingular_dim(f: &Polynomial, certs: &[TriplePointCertificate]) -> Result<DefectResult> {
    let (_, degree) = critical_degree(f)?;
    let ring = f.ring();
    for cert in certs {
        if &cert.ring != ring {
            return Err(Error::RingMismatch(format!(
                "certificate for {} belongs to another ring",
                cert.point
            )));
        }
        if partial_jets(f, &cert.chart)? != cert.q_matrix {
            return Err(Error::RingMismatch(format!(
                "certificate for {} was issued for a different polynomial",
                cert.point
            )));
        }
    }
    check_distinct(certs.iter().map(|c| &c.point))?;
    quotient_precondition(f, certs)?;

    let basis = ring.monomial_basis(degree);
    let n = basis.len();
    let blocks: Vec<Matrix> = certs
        .iter()
        .map(|c| c.annihilator.mul(&jet_matrix(&basis, ring, &c.chart)))
        .collect();
    let conditions = Matrix::vstack(ring.field(), n, &blocks);
    let rank = conditions.rank();
    Ok(DefectResult::new(
        degree,
        n,
        certs.len(),
        codim_for(ring.nvars()),
        n - rank,
        Method::Quotient,
    ))
}

/// Spanning vectors of `(J_F)^(D)` in the coordinates of `basis`.
fn jacobian_piece(f: &Polynomial, d: u32, degree: i64, basis: &[Monomial]) -> Vec<Vec<Scalar>> {
    let ring = f.ring();
    let mut out = Vec::new();
    for (j, &w) in ring.weights().iter().enumerate() {
        let partial = f.partial_derivative(j);
        let shift = degree - (d as i64 - w as i64);
        for m in ring.monomial_basis(shift) {
            out.push(partial.mul_monomial(&m).coefficient_vector(basis));
        }
    }
    out
}

/// `dim I_eq^(D)` straight from the definition
/// `I_eq = ∩_i (m_i^3 + J_F)`. Does not require the points to be triple
/// points.
pub fn equisingular_dim_oracle(f: &Polynomial, points: &[ProjectivePoint]) -> Result<DefectResult> {
    let (d, degree) = critical_degree(f)?;
    let ring = f.ring();
    let field = ring.field();
    let charts = points
        .iter()
        .map(|p| choose_chart(p, ring))
        .collect::<Result<Vec<_>>>()?;
    check_distinct(charts.iter().map(|c| c.center()))?;

    let basis = ring.monomial_basis(degree);
    let n = basis.len();
    let jac = jacobian_piece(f, d, degree, &basis);
    let mut current = Matrix::identity(field, n);
    for chart in &charts {
        // (m^3)^(D) is the kernel of the 2-jet map on S^D
        let mut span = jet_matrix(&basis, ring, chart).kernel_basis();
        span.extend(jac.iter().cloned());
        let local = Matrix::from_rows(field, n, span);
        let functionals = local.row_space_annihilator();
        if functionals.rows() == 0 {
            continue;
        }
        let restricted = functionals.mul(&current.transpose());
        let combos = restricted.row_space_annihilator();
        current = combos.mul(&current);
    }
    let dim = current.rows();
    Ok(DefectResult::new(
        degree,
        n,
        points.len(),
        codim_for(ring.nvars()),
        dim,
        Method::Oracle,
    ))
}

/// The defect of `F` with the given certified points. Falls back to the
/// oracle when the quotient method's precondition fails; with
/// `cross_validate` both methods run and must agree.
pub fn defect(
    f: &Polynomial,
    certs: &[TriplePointCertificate],
    cross_validate: bool,
) -> Result<DefectResult> {
    let points: Vec<ProjectivePoint> = certs.iter().map(|c| c.point.clone()).collect();
    let result = match equisingular_dim(f, certs) {
        Ok(q) if cross_validate => {
            let o = equisingular_dim_oracle(f, &points)?;
            if o.dim_ieq != q.dim_ieq {
                return Err(Error::MethodsDisagree {
                    quotient: q.dim_ieq,
                    oracle: o.dim_ieq,
                });
            }
            DefectResult {
                method: Method::BothAgree,
                ..q
            }
        }
        Ok(q) => q,
        Err(Error::QuotientPrecondition { .. }) => equisingular_dim_oracle(f, &points)?,
        Err(e) => return Err(e),
    };
    if result.delta < 0 {
        return Err(Error::Inconsistent(format!(
            "negative defect {}",
            result.delta
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldSpec;
    use crate::locus::{verify_triple_point, DEFAULT_K_MAX};
    use crate::poly::{parse, Ring};

    const QUARTIC: &str = "x0*(x1^3 + x2^3 + x3^3 + x4^3) + x1^4 + x2^4 + x3^4 + x4^4";

    #[test]
    fn no_points_gives_whole_space() {
        let r = Ring::standard(5, FieldSpec::prime(7).unwrap());
        let f = parse("x0^6 + x1^6 + x2^6 + x3^6 + x4^6", &r).unwrap();
        let q = defect(&f, &[], true).unwrap();
        assert_eq!((q.dim_s, q.dim_ieq, q.delta, q.rank), (330, 330, 0, 0));
        assert_eq!(q.method, Method::BothAgree);
    }

    #[test]
    fn quartic_single_point() {
        let r = Ring::standard(5, FieldSpec::prime(7).unwrap());
        let f = parse(QUARTIC, &r).unwrap();
        let p = ProjectivePoint::from_i64(&r, &[1, 0, 0, 0, 0]).unwrap();
        let cert = verify_triple_point(&f, &p, DEFAULT_K_MAX).unwrap();
        let q = equisingular_dim(&f, std::slice::from_ref(&cert)).unwrap();
        let o = equisingular_dim_oracle(&f, &[p]).unwrap();
        assert_eq!((q.degree, q.dim_s, q.dim_ieq, q.delta), (3, 35, 24, 0));
        assert_eq!(o.dim_ieq, 24);
        assert_eq!(defect(&f, &[cert], true).unwrap().method, Method::BothAgree);
    }

    #[test]
    fn rejects_duplicates_and_foreign_certificates() {
        let r = Ring::standard(5, FieldSpec::prime(7).unwrap());
        let f = parse(QUARTIC, &r).unwrap();
        let p = ProjectivePoint::from_i64(&r, &[1, 0, 0, 0, 0]).unwrap();
        let cert = verify_triple_point(&f, &p, DEFAULT_K_MAX).unwrap();
        assert!(matches!(
            equisingular_dim(&f, &[cert.clone(), cert.clone()]),
            Err(Error::DuplicatePoint(_))
        ));
        assert!(matches!(
            equisingular_dim_oracle(&f, &[p.clone(), p.clone()]),
            Err(Error::DuplicatePoint(_))
        ));

        let other = parse("x0*(x1^3 + 2*x2^3 + x3^3 + x4^3) + x1^4", &r).unwrap();
        assert!(matches!(
            equisingular_dim(&other, std::slice::from_ref(&cert)),
            Err(Error::RingMismatch(_))
        ));

        let r11 = Ring::standard(5, FieldSpec::prime(11).unwrap());
        let f11 = parse(QUARTIC, &r11).unwrap();
        assert!(matches!(
            equisingular_dim(&f11, &[cert]),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn low_degree_falls_back_to_oracle() {
        // cubic threefold with a triple point is a cone: 2d - 5 = 1 and
        // d + 1 - 5 < 0, so the quotient method does not apply
        let r = Ring::standard(5, FieldSpec::prime(7).unwrap());
        let f = parse("x1^3 + x2^3 + x3^3 + x4^3", &r).unwrap();
        let p = ProjectivePoint::from_i64(&r, &[1, 0, 0, 0, 0]).unwrap();
        let cert = verify_triple_point(&f, &p, DEFAULT_K_MAX).unwrap();
        assert!(matches!(
            equisingular_dim(&f, std::slice::from_ref(&cert)),
            Err(Error::QuotientPrecondition { .. })
        ));
        let r = defect(&f, &[cert], true).unwrap();
        assert_eq!(r.method, Method::Oracle);
        // no linear form vanishes to order 3 and J_F has nothing in degree 1
        assert_eq!((r.dim_ieq, r.delta), (0, 6));
    }
}
