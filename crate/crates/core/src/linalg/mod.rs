//! Dense complex linear algebra: matrices, Hermitian eigenproblems, SVD and matrix functions.

pub mod eigen;
pub mod funcs;
pub mod io;
pub mod matrix;
pub mod svd;

pub use eigen::{herm_eig, herm_eigenvalues, HermEigen};
pub use funcs::{
    abs_pair, block2, herm2_closed_norm, matrix_abs, matrix_power_psd, min_eigenvalue,
    off_diagonal_block, pos_neg_parts, re_im_parts, rotated_real_part, split_block2,
};
pub use io::{format_complex, parse_complex};
pub use matrix::{c64, inner, normalized, vec_norm, ComplexMatrix, C64, I};
pub use svd::{spectral_norm, svd, SvdFactors};
