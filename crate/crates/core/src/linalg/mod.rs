//! Dense complex linear algebra.

mod hermitian;
mod lu;
mod matching;
mod matrix;
mod minpoly;
mod norms;
mod numrange;
mod schur;
mod svd;

pub use hermitian::{hermitian_eigen, HermitianEigen};
pub use lu::{inverse, right_divide, Lu};
pub use matching::{matched_distance, min_weight_matching};
pub use matrix::ComplexMatrix;
pub use minpoly::{minimal_polynomial_degree, MinimalPolynomialDegree};
pub use norms::{operator_norm, operator_norm_with, resolvent_norm, resolvent_norm_with};
pub use numrange::{angle_grid, numerical_range_support, support_margin, SupportPoint};
pub use schur::{
    characteristic_polynomial, eigenvalues, eigenvalues_with, hessenberg, hessenberg_eigenvalues, hessenberg_schur, schur_triangularize,
    schur_triangularize_with, SchurForm, Spectrum,
};
pub use svd::{singular_values, singular_values_of_columns, svd, Svd};

