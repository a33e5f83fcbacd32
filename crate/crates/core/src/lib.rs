//! Exact computation of the defect and Hodge numbers of hypersurfaces in
//! (weighted) projective four-space with ordinary triple points.

pub mod catalog;
pub mod cover;
pub mod defect;
pub mod error;
pub mod exactalg;
pub mod hodge;
pub mod jets;
pub mod locus;
pub mod poly;

pub use cover::{lift_points, triple_cover, CoverSpec};
pub use defect::{defect, equisingular_dim, equisingular_dim_oracle, DefectResult, Method};
pub use error::{Error, Result};
pub use exactalg::{FieldSpec, Matrix, Scalar};
pub use hodge::{dim_graded, hodge, hodge_p4, hodge_weighted, HodgeReport};
pub use jets::{choose_chart, jet2, jet_matrix, partial_jets, Chart, Jet2Vector};
pub use locus::{
    certify_cone_smooth, find_singular_points, find_singular_points_with_threads,
    verify_triple_point, ConeSmoothness, ProjectivePoint, TriplePointCertificate, DEFAULT_K_MAX,
};
pub use poly::{parse, AffinePolynomial, Degree, Monomial, Polynomial, Ring};
