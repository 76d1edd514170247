//! Quaternion low-rank matrix completion.
//!
//! Quaternion matrices are stored as four real planes. On top of that the
//! crate provides Householder QR, SVD through the equivalent complex matrix,
//! the CQSVD-QQR tri-factorization, proximal operators, the left-handed
//! quaternion DCT and three ADMM completion solvers, plus color-image
//! inpainting helpers and PSNR/SSIM metrics.

pub mod cli;
pub mod complex;
pub mod error;
pub mod imaging;
pub mod linalg;
pub mod matrix;
pub mod prox;
pub mod qmat;
pub mod quaternion;
pub mod solvers;
pub mod synth;
pub mod transforms;

pub use error::{Error, Result};
pub use matrix::QuaternionMatrix;
pub use quaternion::Quaternion;
