//! Dense complex linear algebra for the small matrices (at most a few dozen
//! rows) that appear in the 2x4 construction.
//!
//! Everything here is deterministic: eigenproblems use cyclic Jacobi sweeps
//! with unitary 2x2 rotations, singular values come from one-sided Jacobi.

mod eigen;
mod matrix;
mod rref;
mod subspace;
mod svd;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use matrix::{inner, kron, norm, scale_vec, CVector, ComplexMatrix};
pub use rref::rref;
pub use subspace::{orthogonal_complement, Subspace, SUBSPACE_TOL};
pub use svd::{hermitian_gram_rank, rank, svd, Svd};

use num_complex::Complex64;

/// Thresholds used by rank decisions and entrywise comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative cut on singular values / eigenvalue magnitudes.
    pub rank_cut: f64,
    /// Absolute entrywise tolerance.
    pub match_tol: f64,
}

impl Tolerance {
    pub fn new(rank_cut: f64, match_tol: f64) -> crate::Result<Self> {
        if !(rank_cut > 0.0 && match_tol > 0.0) {
            return Err(crate::Error::InvalidArgument(format!(
                "tolerances must be positive (rank_cut = {rank_cut}, match_tol = {match_tol})"
            )));
        }
        Ok(Self {
            rank_cut,
            match_tol,
        })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_cut: 1e-9,
            match_tol: 1e-10,
        }
    }
}

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A unitary 2x2 rotation `G` acting on coordinates `(p, q)`, chosen so that
/// `G* B G` is diagonal for the Hermitian block `B = [[alpha, g], [conj(g), beta]]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Rotation {
    pub pp: Complex64,
    pub pq: Complex64,
    pub qp: Complex64,
    pub qq: Complex64,
}

impl Rotation {
    /// Returns `None` when the block is already diagonal.
    pub fn annihilating(alpha: f64, beta: f64, g: Complex64) -> Option<Self> {
        let mag = g.norm();
        if mag == 0.0 {
            return None;
        }
        // Phase out the off-diagonal entry, then use the real symmetric rotation.
        let phase = g / mag;
        let phase_conj = (phase / phase.norm()).conj();
        let theta = (beta - alpha) / (2.0 * mag);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
            sign / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = t * c;
        Some(Self {
            pp: Complex64::new(c, 0.0),
            pq: Complex64::new(s, 0.0),
            qp: phase_conj * (-s),
            qq: phase_conj * c,
        })
    }
}
