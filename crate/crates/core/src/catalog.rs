//! Ready-made hypersurfaces used by the tests, fixtures and benches.

use crate::cover::{triple_cover, CoverSpec};
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Matrix, Scalar};
use crate::jets::{choose_chart, jet_matrix};
use crate::locus::ProjectivePoint;
use crate::poly::{Polynomial, Ring};

/// `ε = -30` is a primitive cube root of unity mod 67.
pub const TEN_POINT_PRIME: u64 = 67;
pub const TEN_POINT_EPSILON: i64 = -30;

/// `Σ x_i^d` in `n` unit-weight variables.
pub fn fermat(nvars: usize, d: u32, field: FieldSpec) -> Polynomial {
    let ring = Ring::standard(nvars, field);
    (0..nvars).fold(ring.zero(), |acc, i| &acc + &ring.variable(i).pow(d))
}

/// The sextic surface `27 K1 K2 K3 + 2 Q^3` in P³ with ten ordinary triple
/// points, built from affine data in `x1, x2, x3` and homogenized with `x0`.
/// `eps` must be a primitive cube root of unity in `field`.
pub fn ten_point_sextic(field: FieldSpec, eps: &Scalar) -> Result<Polynomial> {
    if eps.field() != field || eps.is_one() || !eps.pow(3).is_one() {
        return Err(Error::InvalidInput(format!(
            "{eps} is not a primitive cube root of unity in {field}"
        )));
    }
    let ring = Ring::standard(4, field);
    let c = |v: i64| ring.constant(field.from_i64(v));
    let e = ring.constant(eps.clone());
    let e2 = ring.constant(eps.pow(2));
    let [x1, x2, x3] = [1, 2, 3].map(|i| ring.variable(i));

    let k1 = &(&(&c(2) * &(&x1 * &x1)) - &(&(&e + &c(2)) * &x3)) + &(&(&e2 * &x1) * &x3);
    let k2 = &(&(&(&c(-1) * &(&x2 * &x2)) + &(&(&c(2) * &e) * &x1)) + &x2) + &(&(&e2 * &x1) * &x2);
    let k3 = &(&(&(&c(2) * &(&x3 * &x3)) - &(&(&c(2) * &e2) * &x2))
        + &(&(&(&c(6) * &e) + &c(2)) * &x3))
        + &(&(&(&c(4) * &e2) * &x2) * &x3);
    let q = &(-&(&(&(&(&e + &c(2)) - &x1) * &(&e - &x2)) * &(&e2 + &x3)))
        + &(&(&x1 * &(&x2 - &c(1))) * &(&x3 + &(&(&c(3) * &e) + &c(1))));

    let g = &(&c(27) * &(&(&k1 * &k2) * &k3)) + &(&c(2) * &q.pow(3));
    g.homogenize(6, 0)
}

/// The sextic over F₆₇ with `ε = -30`.
pub fn ten_point_sextic_f67() -> Polynomial {
    let field = FieldSpec::prime(TEN_POINT_PRIME).expect("67 is prime");
    ten_point_sextic(field, &field.from_i64(TEN_POINT_EPSILON))
        .expect("-30 is a cube root of unity mod 67")
}

/// Triple cover of [`ten_point_sextic_f67`] in P(1, 1, 1, 1, 2).
pub fn ten_point_cover_f67() -> CoverSpec {
    triple_cover(&ten_point_sextic_f67()).expect("degree 6")
}

/// A random form of degree `d` vanishing to order 3 at every point, drawn
/// from the kernel of the stacked 2-jet maps with coefficients supplied by
/// `sample`. Generic choices give ordinary triple points; callers certify.
pub fn with_triple_points(
    ring: &Ring,
    d: u32,
    points: &[ProjectivePoint],
    mut sample: impl FnMut() -> Scalar,
) -> Result<Polynomial> {
    let basis = ring.monomial_basis(d as i64);
    let blocks = points
        .iter()
        .map(|p| Ok(jet_matrix(&basis, ring, &choose_chart(p, ring)?)))
        .collect::<Result<Vec<_>>>()?;
    let kernel = Matrix::vstack(ring.field(), basis.len(), &blocks).kernel_basis();
    let mut coeffs = vec![ring.field().zero(); basis.len()];
    for v in &kernel {
        let c = sample();
        for (acc, x) in coeffs.iter_mut().zip(v) {
            *acc = &*acc + &(&c * x);
        }
    }
    Ok(Polynomial::from_coefficients(ring, &basis, &coeffs))
}
