use num_complex::Complex64;

use super::{ComplexMatrix, Rotation, Tolerance};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
const ORTHOGONALITY_TOL: f64 = 1e-15;
const NULL_COLUMN: f64 = 1e-18;

/// Singular value decomposition `M = U diag(sigma) V*` from one-sided
/// (Hestenes) Jacobi.
///
/// One value is reported per column of `M`, so a wide matrix carries
/// `cols - rows` trailing (numerically) zero values.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Descending, one per column of the input.
    pub singular_values: Vec<f64>,
    /// `rows x cols`; column `k` is the left singular vector for
    /// `singular_values[k]`, or zero when that value is zero.
    pub u: ComplexMatrix,
    /// `cols x cols`, unitary.
    pub v: ComplexMatrix,
}

pub fn svd(m: &ComplexMatrix) -> Svd {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(cols);
    // Columns below this squared norm are numerically null and left alone.
    let negligible = (NULL_COLUMN * m.frobenius_norm()).powi(2);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut g = Complex64::new(0.0, 0.0);
                for k in 0..rows {
                    let x = a[(k, p)];
                    let y = a[(k, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    g += x.conj() * y;
                }
                if alpha.min(beta) <= negligible
                    || g.norm() <= ORTHOGONALITY_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                let Some(rot) = Rotation::annihilating(alpha, beta, g) else {
                    continue;
                };
                rotated = true;
                for k in 0..rows {
                    let x = a[(k, p)];
                    let y = a[(k, q)];
                    a[(k, p)] = x * rot.pp + y * rot.qp;
                    a[(k, q)] = x * rot.pq + y * rot.qq;
                }
                for k in 0..cols {
                    let x = v[(k, p)];
                    let y = v[(k, q)];
                    v[(k, p)] = x * rot.pp + y * rot.qp;
                    v[(k, q)] = x * rot.pq + y * rot.qq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let singular_values: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let u = ComplexMatrix::from_fn(rows, cols, |i, j| {
        let k = order[j];
        if norms[k] > 0.0 {
            a[(i, k)] / norms[k]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let v = ComplexMatrix::from_fn(cols, cols, |i, j| v[(i, order[j])]);
    Svd {
        singular_values,
        u,
        v,
    }
}

impl Svd {
    /// Number of singular values above `rank_cut` times the largest one.
    pub fn rank(&self, tol: &Tolerance) -> usize {
        let top = self.singular_values.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return 0;
        }
        self.singular_values
            .iter()
            .filter(|&&s| s > tol.rank_cut * top)
            .count()
    }

    pub fn smallest(&self) -> f64 {
        *self.singular_values.last().unwrap()
    }
}

/// Numerical rank: singular values above `rank_cut * sigma_max`.
pub fn rank(m: &ComplexMatrix, tol: &Tolerance) -> usize {
    svd(m).rank(tol)
}

/// Dimension of the real span of Hermitian matrices, from the rank of their
/// Hilbert-Schmidt Gram matrix `G_ij = Tr(A_i* A_j)`.
pub fn hermitian_gram_rank(states: &[ComplexMatrix], tol: &Tolerance) -> Result<usize> {
    let Some(first) = states.first() else {
        return Ok(0);
    };
    for s in states {
        if s.shape() != first.shape() {
            return Err(Error::DimensionMismatch {
                expected: first.rows() * first.cols(),
                actual: s.rows() * s.cols(),
            });
        }
        let deviation = s.hermitian_deviation();
        if deviation > tol.match_tol {
            return Err(Error::NotHermitian { deviation });
        }
    }
    let k = states.len();
    let gram = ComplexMatrix::from_fn(k, k, |i, j| states[i].hs_inner(&states[j]));
    Ok(rank(&gram, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    #[test]
    fn reconstructs_tall_and_wide() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (r, c) in [(7, 8), (8, 7), (5, 4), (1, 3), (8, 8)] {
            let m = random(r, c, &mut rng);
            let d = svd(&m);
            let sigma = ComplexMatrix::diagonal(&d.singular_values);
            let back = &(&d.u * &sigma) * &d.v.adjoint();
            assert!(back.max_abs_diff(&m) < 1e-12, "{r}x{c}");
            let vv = &d.v.adjoint() * &d.v;
            assert!(vv.max_abs_diff(&ComplexMatrix::identity(c)) < 1e-12);
        }
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(rank(&ComplexMatrix::zeros(8, 8), &Tolerance::default()), 0);
    }

    #[test]
    fn exact_low_rank_is_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let left = random(8, 3, &mut rng);
        let right = random(3, 8, &mut rng);
        let m = &left * &right;
        assert_eq!(rank(&m, &Tolerance::default()), 3);
        // A PSD matrix of rank 3 too, where squaring would lose the gap.
        let psd = &left * &left.adjoint();
        assert_eq!(rank(&psd, &Tolerance::default()), 3);
    }

    #[test]
    fn gram_rank_of_repeated_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random(4, 4, &mut rng).hermitian_part();
        let tol = Tolerance::default();
        assert_eq!(hermitian_gram_rank(&[a.clone(), a.clone()], &tol).unwrap(), 1);
        let b = random(4, 4, &mut rng).hermitian_part();
        let c = &a.scale(2.0) - &b.scale(0.5);
        assert_eq!(hermitian_gram_rank(&[a, b, c], &tol).unwrap(), 2);
    }

    #[test]
    fn gram_rank_rejects_mixed_sizes() {
        let tol = Tolerance::default();
        let err = hermitian_gram_rank(&[ComplexMatrix::identity(2), ComplexMatrix::identity(3)], &tol);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }
}
