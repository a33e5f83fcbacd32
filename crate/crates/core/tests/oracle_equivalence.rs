//! Randomized agreement between the quotient method, the intersection oracle
//! and a generator-based computation of `I_eq` written out here.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triple_defect_core::catalog::with_triple_points;
use triple_defect_core::{
    defect, equisingular_dim, equisingular_dim_oracle, verify_triple_point, FieldSpec, Matrix,
    Method, Monomial, Polynomial, ProjectivePoint, Ring, Scalar, TriplePointCertificate,
    DEFAULT_K_MAX,
};

fn random_point(rng: &mut impl Rng, ring: &Ring) -> ProjectivePoint {
    let f = ring.field();
    let p = f.characteristic().unwrap();
    loop {
        let coords: Vec<Scalar> = (0..ring.nvars())
            .map(|_| f.from_u64(rng.gen_range(0..p)))
            .collect();
        if coords.iter().any(|c| !c.is_zero()) {
            return ProjectivePoint::new(ring, coords).unwrap();
        }
    }
}

/// Samples forms with ordinary triple points at `points` until every point
/// certifies.
fn sample_certified(
    rng: &mut impl Rng,
    ring: &Ring,
    d: u32,
    points: &[ProjectivePoint],
) -> (Polynomial, Vec<TriplePointCertificate>) {
    let f = ring.field();
    let p = f.characteristic().unwrap();
    for _ in 0..200 {
        let g = with_triple_points(ring, d, points, || f.from_u64(rng.gen_range(0..p))).unwrap();
        let certs: Result<Vec<_>, _> = points
            .iter()
            .map(|pt| verify_triple_point(&g, pt, DEFAULT_K_MAX))
            .collect();
        if let Ok(certs) = certs {
            return (g, certs);
        }
    }
    panic!("no certified sample after 200 draws");
}

/// Row basis of `U ∩ V` for row spaces `U`, `V` in `F^n`.
fn intersect(field: FieldSpec, n: usize, u: &[Vec<Scalar>], v: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let stacked = Matrix::from_rows(field, n, u.iter().chain(v).cloned().collect());
    let relations = stacked.transpose().kernel_basis();
    let vectors: Vec<Vec<Scalar>> = relations
        .iter()
        .map(|a| {
            (0..n)
                .map(|j| {
                    u.iter()
                        .zip(a)
                        .fold(field.zero(), |acc, (row, c)| &acc + &(c * &row[j]))
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(field, n, vectors).rref().basis.row_vecs()
}

/// `dim ∩ (m_i^3 + J_F)^(D)` for unit weights, with `m_i^3` spanned by
/// products of three linear forms vanishing at the point times monomials.
fn generator_dim(f: &Polynomial, points: &[ProjectivePoint]) -> usize {
    let ring = f.ring();
    let field = ring.field();
    assert!(ring.weights().iter().all(|&w| w == 1));
    let n = ring.nvars();
    let d = f.homogeneous_degree().unwrap() as i64;
    let big_d = 2 * d - n as i64;
    let basis = ring.monomial_basis(big_d);
    let size = basis.len();

    let mut jac = Vec::new();
    for j in 0..n {
        for m in ring.monomial_basis(big_d - d + 1) {
            jac.push(
                f.partial_derivative(j)
                    .mul_monomial(&m)
                    .coefficient_vector(&basis),
            );
        }
    }

    let mut current: Vec<Vec<Scalar>> = Matrix::identity(field, size).row_vecs();
    for p in points {
        let c = p.coordinates();
        let pivot = (0..n).find(|&i| !c[i].is_zero()).unwrap();
        let xc = ring.variable(pivot);
        let linear: Vec<Polynomial> = (0..n)
            .filter(|&j| j != pivot)
            .map(|j| &ring.variable(j).scale(&c[pivot]) - &xc.scale(&c[j]))
            .collect();
        let mut local = jac.clone();
        let k = linear.len();
        for a in 0..k {
            for b in a..k {
                for e in b..k {
                    let cube = &(&linear[a] * &linear[b]) * &linear[e];
                    for m in ring.monomial_basis(big_d - 3) {
                        local.push(cube.mul_monomial(&m).coefficient_vector(&basis));
                    }
                }
            }
        }
        let local = Matrix::from_rows(field, size, local)
            .rref()
            .basis
            .row_vecs();
        current = intersect(field, size, &current, &local);
    }
    current.len()
}

#[test]
fn twenty_random_single_point_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1e);
    let mut count = 0;
    for &p in &[7u64, 11, 67] {
        for d in 4..=6u32 {
            let reps = if d == 6 { 2 } else { 3 };
            for _ in 0..reps {
                let ring = Ring::standard(5, FieldSpec::prime(p).unwrap());
                let pt = random_point(&mut rng, &ring);
                let (f, certs) = sample_certified(&mut rng, &ring, d, std::slice::from_ref(&pt));
                let r = defect(&f, &certs, true).unwrap();
                assert_eq!(r.method, Method::BothAgree);
                assert_eq!(r.mu, 1);
                if d <= 5 {
                    assert_eq!(generator_dim(&f, &[pt]), r.dim_ieq, "p {p} d {d}");
                }
                count += 1;
            }
        }
    }
    assert!(count >= 20);
}

#[test]
fn multi_point_instances_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (p, d, mu) in [(11u64, 5u32, 2usize), (7, 5, 3), (67, 6, 3)] {
        let ring = Ring::standard(5, FieldSpec::prime(p).unwrap());
        let mut pts: Vec<ProjectivePoint> = Vec::new();
        while pts.len() < mu {
            let q = random_point(&mut rng, &ring);
            if !pts.contains(&q) {
                pts.push(q);
            }
        }
        let (f, certs) = sample_certified(&mut rng, &ring, d, &pts);
        let q = equisingular_dim(&f, &certs).unwrap();
        let o = equisingular_dim_oracle(&f, &pts).unwrap();
        assert_eq!(q.dim_ieq, o.dim_ieq);
        if d == 5 {
            assert_eq!(generator_dim(&f, &pts), q.dim_ieq);
        }
        assert!(q.delta >= 0);
    }
}

#[test]
fn weighted_instances_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ring = Ring::weighted(&[1, 1, 1, 1, 2], FieldSpec::prime(11).unwrap()).unwrap();
    for _ in 0..4 {
        let mut pt = random_point(&mut rng, &ring);
        while pt.coordinates()[..4].iter().all(|c| c.is_zero()) {
            pt = random_point(&mut rng, &ring);
        }
        let (f, certs) = sample_certified(&mut rng, &ring, 6, std::slice::from_ref(&pt));
        assert_eq!(defect(&f, &certs, true).unwrap().method, Method::BothAgree);
    }
}

#[test]
fn adding_points_never_raises_the_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ring = Ring::standard(5, FieldSpec::prime(11).unwrap());
    let pts: Vec<_> = (0..3).map(|_| random_point(&mut rng, &ring)).collect();
    let (f, _) = sample_certified(&mut rng, &ring, 5, &pts);
    let dims: Vec<usize> = (0..=3)
        .map(|k| equisingular_dim_oracle(&f, &pts[..k]).unwrap().dim_ieq)
        .collect();
    assert!(dims.windows(2).all(|w| w[1] <= w[0]), "{dims:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn rescaling_coordinates_preserves_the_defect(seed in any::<u64>(), s in 1u64..11) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = FieldSpec::prime(11).unwrap();
        let ring = Ring::standard(5, field);
        let pt = random_point(&mut rng, &ring);
        let (f, certs) = sample_certified(&mut rng, &ring, 4, std::slice::from_ref(&pt));
        let base = defect(&f, &certs, false).unwrap();

        // x0 -> s * x0 is an automorphism; the point moves accordingly
        let scale = field.from_u64(s);
        let g = Polynomial::from_terms(
            &ring,
            f.terms().map(|(m, c): (&Monomial, &Scalar)| {
                let e = m.exponents()[0] as u64;
                (m.clone(), c * &scale.inv().unwrap().pow(e))
            }),
        );
        let mut coords = pt.coordinates().to_vec();
        coords[0] = &coords[0] * &scale;
        let moved = ProjectivePoint::new(&ring, coords).unwrap();
        let cert = verify_triple_point(&g, &moved, DEFAULT_K_MAX).unwrap();
        let r = defect(&g, &[cert], false).unwrap();
        prop_assert_eq!(r.dim_ieq, base.dim_ieq);
        prop_assert_eq!(r.delta, base.delta);
    }
}
