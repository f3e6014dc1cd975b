use num_complex::Complex64;

use super::{ComplexMatrix, Rotation};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 64;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigendecomposition `M = V diag(values) V*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unitary; column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// The input is symmetrized as `(M + M*) / 2` before iterating. Sweeps stop
/// once the off-diagonal Frobenius mass drops below `1e-14 * ||M||_F`.
/// Eigenvectors are normalized so their first non-negligible component is
/// real and positive, which makes the output reproducible.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let Some(rot) = Rotation::annihilating(a[(p, p)].re, a[(q, q)].re, a[(p, q)])
                    else {
                        continue;
                    };
                    rotate(&mut a, &mut v, p, q, rot);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    fix_phases(&mut vectors);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// `A <- G* A G`, `V <- V G` on coordinates `(p, q)`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, g: Rotation) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g.pp + akq * g.qp;
        a[(k, q)] = akp * g.pq + akq * g.qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g.pp.conj() * apk + g.qp.conj() * aqk;
        a[(q, k)] = g.pq.conj() * apk + g.qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g.pp + vkq * g.qp;
        v[(k, q)] = vkp * g.pq + vkq * g.qq;
    }
}

pub(crate) fn fix_phases(vectors: &mut ComplexMatrix) {
    let (rows, cols) = vectors.shape();
    for j in 0..cols {
        let col_max = (0..rows).map(|i| vectors[(i, j)].norm()).fold(0.0, f64::max);
        let Some(lead) = (0..rows)
            .map(|i| vectors[(i, j)])
            .find(|z| z.norm() > 1e-12 * col_max)
        else {
            continue;
        };
        let phase = (lead / lead.norm()).conj();
        for i in 0..rows {
            vectors[(i, j)] *= phase;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let m = ComplexMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        m.hermitian_part()
    }

    fn reconstruct(e: &HermitianEigen) -> ComplexMatrix {
        let lambda = ComplexMatrix::diagonal(&e.values);
        &(&e.vectors * &lambda) * &e.vectors.adjoint()
    }

    #[test]
    fn scaled_identity() {
        let m = ComplexMatrix::identity(8).scale(0.125);
        let e = hermitian_eigen(&m).unwrap();
        for v in &e.values {
            assert!((v - 0.125).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_two_by_two_is_sorted() {
        let m = ComplexMatrix::diagonal(&[2.0, 1.0]);
        let e = hermitian_eigen(&m).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0]);
        // columns are a permutation of the identity
        assert_eq!(e.vectors[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(e.vectors[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(e.vectors[(0, 0)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(1.0, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!(e.values[0].abs() < 1e-15);
        assert!((e.values[1] - 2.0).abs() < 1e-15);
        assert!(reconstruct(&e).max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 8, 16] {
            let m = random_hermitian(n, &mut rng);
            let e = hermitian_eigen(&m).unwrap();
            let err = (&reconstruct(&e) - &m).frobenius_norm();
            assert!(err <= 1e-10 * m.frobenius_norm(), "n = {n}, err = {err:e}");
            let unitary = &e.vectors.adjoint() * &e.vectors;
            assert!(unitary.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn phase_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let e = hermitian_eigen(&random_hermitian(6, &mut rng)).unwrap();
        for j in 0..6 {
            let lead = e.vectors[(0, j)];
            assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
        }
    }

    #[test]
    fn rejects_non_square() {
        let m = ComplexMatrix::zeros(2, 3);
        assert_eq!(
            hermitian_eigen(&m).unwrap_err(),
            Error::NotSquare { rows: 2, cols: 3 }
        );
    }
}
