use num_complex::Complex64;

use super::{ComplexMatrix, Tolerance};

/// Reduced row echelon form by Gauss-Jordan elimination with partial
/// pivoting (largest modulus in the column).
///
/// Entries whose modulus is at most `rank_cut * max|M_ij|` are treated as
/// zero, both when choosing pivots and in the returned matrix.
pub fn rref(m: &ComplexMatrix, tol: &Tolerance) -> ComplexMatrix {
    let (rows, cols) = m.shape();
    let thresh = tol.rank_cut * m.max_abs();
    let mut a = m.clone();
    if thresh == 0.0 {
        return ComplexMatrix::zeros(rows, cols);
    }

    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let (best, best_mag) = (pivot_row..rows)
            .map(|r| (r, a[(r, col)].norm()))
            .fold((pivot_row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_mag <= thresh {
            for r in pivot_row..rows {
                a[(r, col)] = Complex64::new(0.0, 0.0);
            }
            continue;
        }
        if best != pivot_row {
            for j in 0..cols {
                let tmp = a[(best, j)];
                a[(best, j)] = a[(pivot_row, j)];
                a[(pivot_row, j)] = tmp;
            }
        }
        let inv = a[(pivot_row, col)].inv();
        for j in 0..cols {
            a[(pivot_row, j)] *= inv;
        }
        a[(pivot_row, col)] = Complex64::new(1.0, 0.0);
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let factor = a[(r, col)];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..cols {
                let sub = factor * a[(pivot_row, j)];
                a[(r, j)] -= sub;
            }
            a[(r, col)] = Complex64::new(0.0, 0.0);
        }
        pivot_row += 1;
    }

    for i in 0..rows {
        for j in 0..cols {
            if a[(i, j)].norm() <= thresh {
                a[(i, j)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;

    #[test]
    fn identity_is_fixed() {
        let id = ComplexMatrix::identity(5);
        assert_eq!(rref(&id, &Tolerance::default()), id);
    }

    #[test]
    fn dependent_rows_collapse() {
        let m = ComplexMatrix::from_real(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 1.0, 0.0, 1.0]).unwrap();
        let r = rref(&m, &Tolerance::default());
        let expected =
            ComplexMatrix::from_real(3, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(r.max_abs_diff(&expected) < 1e-14, "{r:?}");
    }

    #[test]
    fn idempotent_and_row_space_preserving() {
        let tol = Tolerance::default();
        let m = ComplexMatrix::from_fn(4, 6, |i, j| {
            Complex64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64)
        });
        let r = rref(&m, &tol);
        assert!(rref(&r, &tol).max_abs_diff(&r) < 1e-12);
        let mut rows: Vec<_> = (0..4).map(|i| m.row(i)).collect();
        rows.extend((0..4).map(|i| r.row(i)));
        let stacked = ComplexMatrix::from_rows(&rows).unwrap();
        assert_eq!(rank(&stacked, &tol), rank(&m, &tol));
    }
}
