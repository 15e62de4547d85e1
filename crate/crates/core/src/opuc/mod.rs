//! Orthogonal polynomials on the unit circle: the Szegő recursion, CMV
//! matrices, zeros and the random rho-model.

mod cmv;
mod sample;
mod szego;
mod zeros;

pub use cmv::{cmv, ggt_hessenberg, rank_one_constant, rank_one_excess, CMVMatrix, ThetaBlock};
pub use sample::{sample_rho_model, sample_rho_model_with, VerblunskySequence};
pub use szego::{popuc, popuc_final_parameter, star, szego, szego_eval, MonicPolynomial, Paraorthogonal};
pub use zeros::{
    eigenvector_profile, eigenvector_profiles, zeros_of_cmv, zeros_of_parameters, zeros_of_polynomial,
    EigenvectorProfile, ZeroSet, ZeroSource,
};
