//! Dense complex linear algebra shared across the crate.
//!
//! Everything here is a thin layer over `nalgebra`: type aliases for the
//! working representations and the few decompositions the physics modules
//! need (sorted Hermitian eigendecompositions, PSD square roots, trace
//! distance).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Dense complex matrix; the working representation of every operator.
pub type DenseOperator = DMatrix<Complex64>;

/// Dense complex vector holding pure-state amplitudes.
pub type StateVector = DVector<Complex64>;

pub(crate) const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Identity operator on `n_qubits` qubits.
pub fn identity(n_qubits: usize) -> DenseOperator {
    DenseOperator::identity(1 << n_qubits, 1 << n_qubits)
}

/// Largest absolute deviation of `m` from its conjugate transpose.
pub fn hermiticity_error(m: &DenseOperator) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &DenseOperator, b: &DenseOperator) -> f64 {
    (a - b).iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DenseOperator) -> Vec<f64> {
    let mut vals: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Full eigendecomposition of a Hermitian matrix, ascending eigenvalues with
/// matching eigenvector columns.
pub fn hermitian_eigen(m: &DenseOperator) -> (Vec<f64>, DenseOperator) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = DenseOperator::zeros(m.nrows(), m.ncols());
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Same, for real symmetric matrices.
pub fn symmetric_eigen_f64(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(m.nrows(), m.ncols());
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues below zero
/// (round-off) are clamped.
pub fn sqrt_psd(m: &DenseOperator) -> DenseOperator {
    let (vals, vecs) = hermitian_eigen(m);
    let mut out = DenseOperator::zeros(m.nrows(), m.ncols());
    for (k, &v) in vals.iter().enumerate() {
        let s = v.max(0.0).sqrt();
        let col = vecs.column(k);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] += col[i] * col[j].conj() * Complex64::from(s);
            }
        }
    }
    out
}

/// Trace distance (1/2)||a - b||_1 between Hermitian matrices.
pub fn trace_distance(a: &DenseOperator, b: &DenseOperator) -> f64 {
    let diff = a - b;
    0.5 * hermitian_eigenvalues(&diff).iter().map(|v| v.abs()).sum::<f64>()
}
