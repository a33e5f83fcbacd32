//! Triple cyclic covers `x4^3 = g(x0, ..., x3)` of P³ branched along a surface.

use crate::error::{Error, Result};
use crate::locus::{find_singular_points_with_threads, ProjectivePoint};
use crate::poly::{Monomial, Polynomial, Ring};

/// The cover `F = x4^3 - g` in `P(1, 1, 1, 1, deg g / 3)`.
#[derive(Debug, Clone)]
pub struct CoverSpec {
    pub surface_g: Polynomial,
    pub cover_f: Polynomial,
    /// Surface points paired with their lifts `(P : 0)`.
    pub point_map: Vec<(ProjectivePoint, ProjectivePoint)>,
}

impl CoverSpec {
    pub fn ring(&self) -> &Ring {
        self.cover_f.ring()
    }

    pub fn surface_degree(&self) -> u32 {
        self.surface_g
            .homogeneous_degree()
            .expect("checked at construction")
    }

    /// `2d - |w| = 5d/3 - 4`.
    pub fn defect_degree(&self) -> i64 {
        2 * self.surface_degree() as i64 - self.ring().total_weight() as i64
    }

    /// Records the lifts of `surface_points` in `point_map`.
    pub fn with_points(mut self, surface_points: &[ProjectivePoint]) -> Result<Self> {
        let lifted = lift_points(&self, surface_points)?;
        self.point_map = surface_points.iter().cloned().zip(lifted).collect();
        Ok(self)
    }

    pub fn lifted_points(&self) -> Vec<ProjectivePoint> {
        self.point_map.iter().map(|(_, l)| l.clone()).collect()
    }

    /// Singular points of the cover via a scan of the branch surface.
    ///
    /// `∂F/∂x4 = 3 x4^2` forces `x4 = 0`, after which `F` and its partials
    /// vanish iff `g` and its partials do. So the singular points of the
    /// cover are exactly the lifts of the singular points of `g`.
    pub fn singular_points(&self, threads: usize) -> Result<Vec<ProjectivePoint>> {
        let surface = find_singular_points_with_threads(&self.surface_g, threads)?;
        let mut lifted = lift_points(self, &surface)?;
        lifted.sort();
        Ok(lifted)
    }
}

/// Builds `F = x4^3 - g` for a surface `g` in four unit-weight variables
/// whose degree is divisible by 3.
pub fn triple_cover(g: &Polynomial) -> Result<CoverSpec> {
    let src = g.ring();
    if src.nvars() != 4 || src.weights().iter().any(|&w| w != 1) {
        return Err(Error::RingMismatch(
            "branch surface must live in four unit-weight variables".into(),
        ));
    }
    let d = g.homogeneous_degree()?;
    if d % 3 != 0 {
        return Err(Error::DegreeNotDivisibleBy3(d));
    }
    let mut names = src.names().to_vec();
    let fresh = ["x4", "t", "w4"]
        .into_iter()
        .find(|n| !names.iter().any(|m| m == n))
        .expect("a fresh variable name");
    names.push(fresh.to_string());
    let ring = Ring::new(names, vec![1, 1, 1, 1, d / 3], src.field())?;

    let lifted_g = Polynomial::from_terms(
        &ring,
        g.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.push(0);
            (Monomial::new(e), c.clone())
        }),
    );
    let cover_f = &ring.variable(4).pow(3) - &lifted_g;
    Ok(CoverSpec {
        surface_g: g.clone(),
        cover_f,
        point_map: Vec::new(),
    })
}

/// `P ↦ (P : 0)`, after checking `g(P) = 0`.
pub fn lift_points(
    cover: &CoverSpec,
    surface_points: &[ProjectivePoint],
) -> Result<Vec<ProjectivePoint>> {
    let ring = cover.ring();
    surface_points
        .iter()
        .map(|p| {
            if p.len() != 4 {
                return Err(Error::InvalidPoint(format!("{p} is not a point of P^3")));
            }
            if !cover.surface_g.evaluate(p.coordinates()).is_zero() {
                return Err(Error::NotOnSurface(p.to_string()));
            }
            let mut coords = p.coordinates().to_vec();
            coords.push(ring.field().zero());
            let lifted = ProjectivePoint::new(ring, coords)?;
            debug_assert!(cover.cover_f.evaluate(lifted.coordinates()).is_zero());
            Ok(lifted)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldSpec;
    use crate::poly::{parse, Degree};

    fn p3() -> Ring {
        Ring::standard(4, FieldSpec::prime(7).unwrap())
    }

    #[test]
    fn fermat_sextic_cover() {
        let g = parse("x0^6 + x1^6 + x2^6 + x3^6", &p3()).unwrap();
        let c = triple_cover(&g).unwrap();
        assert_eq!(c.ring().weights(), &[1, 1, 1, 1, 2]);
        assert_eq!(c.cover_f.weighted_degree().unwrap(), Degree::Homogeneous(6));
        assert_eq!(
            c.cover_f,
            parse("x4^3 - x0^6 - x1^6 - x2^6 - x3^6", c.ring()).unwrap()
        );
        assert_eq!(c.defect_degree(), 6);
        assert!(c.singular_points(2).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_degree() {
        let g = parse("x0^4 + x1^4 + x2^4 + x3^4", &p3()).unwrap();
        assert_eq!(
            triple_cover(&g).unwrap_err(),
            Error::DegreeNotDivisibleBy3(4)
        );
    }

    #[test]
    fn lifts_points() {
        let g = parse("x0^3 - x3^3 + x1*x2^2", &p3()).unwrap();
        let c = triple_cover(&g).unwrap();
        let p = ProjectivePoint::from_i64(g.ring(), &[1, 0, 0, 1]).unwrap();
        let lifted = lift_points(&c, std::slice::from_ref(&p)).unwrap();
        assert_eq!(
            lifted,
            vec![ProjectivePoint::from_i64(c.ring(), &[1, 0, 0, 1, 0]).unwrap()]
        );
        let off = ProjectivePoint::from_i64(g.ring(), &[1, 1, 0, 0]).unwrap();
        assert!(matches!(
            lift_points(&c, &[off]),
            Err(Error::NotOnSurface(_))
        ));
        let c = c.with_points(&[p]).unwrap();
        assert_eq!(c.point_map.len(), 1);
    }
}
