//! Upper triangular Toeplitz matrices, their symbols and the Schur
//! algorithm.

mod blaschke;
mod families;
mod prefix;
mod schur;

pub use blaschke::BlaschkeProduct;
pub use families::{a_family, a_family_ratio, f_a_prefix, generating_prefixes, resolvent_limit_residual, GeneratingPrefixes};
pub use prefix::{prefix_multiply, uttm, TaylorPrefix};
pub use schur::{
    moebius, moebius_defect_residual, norm_certificate, norm_certificate_with, prefix_from_schur_parameters,
    schur_parameters, schur_parameters_matrix_path, schur_parameters_prefix, schur_parameters_with,
    uttm_from_schur_parameters, NormCertificate, SchurParameters,
};
