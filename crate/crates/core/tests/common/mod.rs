#![allow(dead_code)]

use rand::Rng;
use sepfaces::bipartite::{BipartiteState, Dims, ProductVector};
use sepfaces::linalg::{hermitian_eigen, inner, norm};
use sepfaces::{CVector, Complex64, ComplexMatrix, Tolerance};

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_vector(n: usize, rng: &mut impl Rng) -> CVector {
    (0..n).map(|_| random_complex(rng)).collect()
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    hermitian_eigen(&random_matrix(n, n, rng).hermitian_part()).unwrap().vectors
}

/// `A A* / Tr(A A*)` for a random `total x rank` factor.
pub fn random_state(dims: Dims, rank: usize, rng: &mut impl Rng) -> BipartiteState {
    let a = random_matrix(dims.total(), rank, rng);
    let m = &a * &a.adjoint();
    let tr = m.trace().re;
    BipartiteState::new(dims, m.scale(1.0 / tr), &Tolerance::default()).unwrap()
}

pub fn random_product(dims: Dims, rng: &mut impl Rng) -> ProductVector {
    ProductVector::new(random_vector(dims.m, rng), random_vector(dims.n, rng)).unwrap()
}

/// `1 - |<u|v>| / (|u| |v|)`: zero exactly when `u` and `v` span the same ray.
pub fn ray_distance(u: &[Complex64], v: &[Complex64]) -> f64 {
    1.0 - inner(u, v).norm() / (norm(u) * norm(v))
}
