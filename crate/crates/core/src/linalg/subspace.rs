use num_complex::Complex64;

use super::eigen::fix_phases;
use super::{inner, norm, svd, CVector, ComplexMatrix, Tolerance, ZERO};
use crate::{Error, Result};

/// Residual threshold for subspace membership and equality.
pub const SUBSPACE_TOL: f64 = 1e-8;

/// A subspace of `C^n` held as an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<CVector>,
}

impl Subspace {
    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut e = vec![ZERO; ambient];
                e[i] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();
        Self { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    /// Wraps a basis that is already orthonormal (checked to 1e-10).
    pub fn from_orthonormal(ambient: usize, basis: Vec<CVector>) -> Result<Self> {
        for (i, u) in basis.iter().enumerate() {
            if u.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    actual: u.len(),
                });
            }
            for (j, w) in basis.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                if (inner(u, w) - target).norm() > 1e-10 {
                    return Err(Error::InvalidArgument(format!(
                        "basis vectors {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        Ok(Self { ambient, basis })
    }

    /// Column space of the given vectors.
    pub fn span(ambient: usize, vectors: &[CVector], tol: &Tolerance) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        check_lengths(ambient, vectors)?;
        let m = ComplexMatrix::from_columns(vectors)?;
        let d = svd(&m);
        let r = d.rank(tol);
        let mut u = ComplexMatrix::from_fn(ambient, r.max(1), |i, j| {
            if j < r {
                d.u[(i, j)]
            } else {
                ZERO
            }
        });
        fix_phases(&mut u);
        Ok(Self {
            ambient,
            basis: (0..r).map(|j| u.column(j)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[CVector] {
        &self.basis
    }

    /// `n x dim` matrix with the basis as columns; `None` for the zero space.
    pub fn basis_matrix(&self) -> Option<ComplexMatrix> {
        if self.basis.is_empty() {
            None
        } else {
            ComplexMatrix::from_columns(&self.basis).ok()
        }
    }

    pub fn projector(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.ambient, self.ambient);
        for u in &self.basis {
            p = &p + &ComplexMatrix::outer(u, u);
        }
        p
    }

    pub fn project(&self, v: &[Complex64]) -> CVector {
        let mut out = vec![ZERO; self.ambient];
        for u in &self.basis {
            let c = inner(u, v);
            for (o, x) in out.iter_mut().zip(u) {
                *o += c * x;
            }
        }
        out
    }

    /// `||v - P v|| / ||v||`, zero for the zero vector.
    pub fn residual(&self, v: &[Complex64]) -> f64 {
        assert_eq!(v.len(), self.ambient, "length mismatch");
        let nv = norm(v);
        if nv == 0.0 {
            return 0.0;
        }
        let p = self.project(v);
        let diff: CVector = v.iter().zip(&p).map(|(a, b)| a - b).collect();
        norm(&diff) / nv
    }

    pub fn contains(&self, v: &[Complex64], tol: f64) -> bool {
        self.residual(v) <= tol
    }

    pub fn contains_subspace(&self, other: &Subspace, tol: f64) -> bool {
        other.ambient == self.ambient && other.basis.iter().all(|u| self.contains(u, tol))
    }

    /// Equal dimensions and mutual containment within [`SUBSPACE_TOL`].
    pub fn approx_eq(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_subspace(other, SUBSPACE_TOL)
            && other.contains_subspace(self, SUBSPACE_TOL)
    }

    pub fn complement(&self) -> Subspace {
        orthogonal_complement(&self.basis, self.ambient, &Tolerance::default())
            .expect("basis lengths match the ambient dimension")
    }

    /// Same subspace under the basis `b'_j = sum_i b_i u_ij` for a
    /// `dim x dim` unitary `u`.
    pub fn rebased(&self, u: &ComplexMatrix) -> Result<Self> {
        let d = self.dim();
        if u.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                actual: u.rows() * u.cols(),
            });
        }
        let basis = (0..d)
            .map(|j| {
                let mut v = vec![ZERO; self.ambient];
                for (i, b) in self.basis.iter().enumerate() {
                    for (o, x) in v.iter_mut().zip(b) {
                        *o += u[(i, j)] * x;
                    }
                }
                v
            })
            .collect();
        Self::from_orthonormal(self.ambient, basis)
    }
}

fn check_lengths(ambient: usize, vectors: &[CVector]) -> Result<()> {
    match vectors.iter().find(|v| v.len() != ambient) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: ambient,
            actual: v.len(),
        }),
        None => Ok(()),
    }
}

/// Orthonormal basis of `{x : <v_i|x> = 0 for all i}` inside `C^ambient`.
///
/// Its dimension is `ambient - rank(stacked vectors)`.
pub fn orthogonal_complement(
    vectors: &[CVector],
    ambient: usize,
    tol: &Tolerance,
) -> Result<Subspace> {
    if vectors.is_empty() {
        return Ok(Subspace::full(ambient));
    }
    check_lengths(ambient, vectors)?;
    let rows: Vec<CVector> = vectors
        .iter()
        .map(|v| v.iter().map(|z| z.conj()).collect())
        .collect();
    let d = svd(&ComplexMatrix::from_rows(&rows)?);
    let r = d.rank(tol);
    if r == ambient {
        return Ok(Subspace::zero(ambient));
    }
    let mut kernel = ComplexMatrix::from_fn(ambient, ambient - r, |i, j| d.v[(i, r + j)]);
    fix_phases(&mut kernel);
    Ok(Subspace {
        ambient,
        basis: (0..ambient - r).map(|j| kernel.column(j)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn complement_of_e1_in_c2() {
        let s = orthogonal_complement(&[vec![c(1.0), c(0.0)]], 2, &Tolerance::default()).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[c(0.0), c(1.0)], 1e-14));
    }

    #[test]
    fn empty_input_gives_full_space() {
        let s = orthogonal_complement(&[], 4, &Tolerance::default()).unwrap();
        assert_eq!(s.dim(), 4);
    }

    #[test]
    fn complement_is_orthonormal_and_orthogonal() {
        let v = vec![
            vec![c(1.0), Complex64::new(0.0, 2.0), c(0.0), c(-1.0)],
            vec![c(0.5), c(1.0), Complex64::new(1.0, 1.0), c(0.0)],
        ];
        let s = orthogonal_complement(&v, 4, &Tolerance::default()).unwrap();
        assert_eq!(s.dim(), 2);
        for (i, a) in s.basis().iter().enumerate() {
            for (j, b) in s.basis().iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((inner(a, b) - target).norm() < 1e-12);
            }
            for x in &v {
                assert!(inner(x, a).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn span_and_equality() {
        let tol = Tolerance::default();
        let a = vec![c(1.0), c(1.0), c(0.0)];
        let b = vec![c(1.0), c(-1.0), c(0.0)];
        let s1 = Subspace::span(3, &[a.clone(), b.clone()], &tol).unwrap();
        let sum: CVector = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let s2 = Subspace::span(3, &[sum, a.clone(), a], &tol).unwrap();
        assert_eq!(s1.dim(), 2);
        assert!(s1.approx_eq(&s2));
        assert!(!s1.contains(&[c(0.0), c(0.0), c(1.0)], SUBSPACE_TOL));
        assert!(s1.complement().approx_eq(&Subspace::span(3, &[vec![c(0.0), c(0.0), c(1.0)]], &tol).unwrap()));
    }
}
