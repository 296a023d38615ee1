//! Elementary qubit algebra: Pauli and permutation operators, the R-basis
//! spanning the rotationally invariant operator space of three qubits,
//! partial traces, and seeded state samplers.
//!
//! Basis convention: site `s` of an `n`-qubit register occupies bit `n-1-s`
//! of the computational index, so |x0 x1 x2> has index 4*x0 + 2*x1 + x2.

use std::sync::LazyLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, DenseOperator, StateVector, SQRT3};

/// Tolerance on |tr(rho) - 1|.
pub const TRACE_TOL: f64 = 1e-12;
/// Tolerance on Hermiticity deviations of density matrices.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// States with eigenvalues below this are rejected, not repaired.
pub const PSD_TOL: f64 = -1e-10;

/// Value of bit `site` (our convention) in `index` for an `n`-qubit register.
#[inline]
pub(crate) fn site_bit(index: usize, site: usize, n: usize) -> usize {
    (index >> (n - 1 - site)) & 1
}

/// 2x2 identity convenience.
pub fn pauli_id() -> DenseOperator {
    linalg::identity(1)
}

pub fn pauli_x() -> DenseOperator {
    DMatrix::from_row_slice(2, 2, &[0.0.into(), 1.0.into(), 1.0.into(), 0.0.into()])
}

pub fn pauli_y() -> DenseOperator {
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

pub fn pauli_z() -> DenseOperator {
    DMatrix::from_row_slice(2, 2, &[1.0.into(), 0.0.into(), 0.0.into(), (-1.0).into()])
}

/// Permutation operator exchanging tensor factors `i` and `j` of an
/// `n`-qubit register. Real, symmetric, and an involution.
pub fn swap_operator(i: usize, j: usize, n: usize) -> Result<DenseOperator> {
    if i >= n {
        return Err(Error::SiteOutOfRange { site: i, n_sites: n });
    }
    if j >= n {
        return Err(Error::SiteOutOfRange { site: j, n_sites: n });
    }
    if i == j {
        return Err(Error::BadSiteList);
    }
    let dim = 1 << n;
    let mut m = DenseOperator::zeros(dim, dim);
    for col in 0..dim {
        let bi = site_bit(col, i, n);
        let bj = site_bit(col, j, n);
        let mut row = col;
        if bi != bj {
            row ^= (1 << (n - 1 - i)) | (1 << (n - 1 - j));
        }
        m[(row, col)] = Complex64::from(1.0);
    }
    Ok(m)
}

/// The five Hermitian operators spanning the SU(2)-invariant operator space
/// of three qubits. `r_plus` and `r_zero` are the orthogonal projectors onto
/// the total-spin-3/2 and the two spin-1/2 subspaces.
#[derive(Debug, Clone)]
pub struct RBasis {
    pub r_plus: DenseOperator,
    pub r_zero: DenseOperator,
    pub r_one: DenseOperator,
    pub r_two: DenseOperator,
    pub r_three: DenseOperator,
}

impl RBasis {
    /// The five operators in canonical order (+, 0, 1, 2, 3).
    pub fn as_array(&self) -> [&DenseOperator; 5] {
        [&self.r_plus, &self.r_zero, &self.r_one, &self.r_two, &self.r_three]
    }
}

/// Builds the R-basis from the two-qubit swaps and the two cyclic
/// permutations. The basis algebra (traces 4,4,0,0,0 and Hilbert-Schmidt
/// products 4*delta_jk) is asserted at build time.
pub fn build_r_basis() -> RBasis {
    let one = linalg::identity(3);
    let v12 = swap_operator(0, 1, 3).unwrap();
    let v13 = swap_operator(0, 2, 3).unwrap();
    let v23 = swap_operator(1, 2, 3).unwrap();
    let v123 = &v12 * &v23;
    let v321 = &v23 * &v12;

    let r_plus = (&one + &v12 + &v23 + &v13 + &v123 + &v321) / Complex64::from(6.0);
    let r_zero = (&one * Complex64::from(2.0) - &v123 - &v321) / Complex64::from(3.0);
    let r_one = (&v23 * Complex64::from(2.0) - &v13 - &v12) / Complex64::from(3.0);
    let r_two = (&v12 - &v13) / Complex64::from(SQRT3);
    let r_three = (&v123 - &v321) * Complex64::new(0.0, 1.0 / SQRT3);

    let basis = RBasis { r_plus, r_zero, r_one, r_two, r_three };

    let ops = basis.as_array();
    let expected_traces = [4.0, 4.0, 0.0, 0.0, 0.0];
    for (op, want) in ops.iter().zip(expected_traces) {
        assert!((op.trace().re - want).abs() < 1e-12 && op.trace().im.abs() < 1e-12);
        assert!(linalg::hermiticity_error(op) < 1e-12);
    }
    for (j, a) in ops.iter().enumerate() {
        for (k, b) in ops.iter().enumerate() {
            let want = if j == k { 4.0 } else { 0.0 };
            let got = (*a * *b).trace();
            assert!(
                (got.re - want).abs() < 1e-12 && got.im.abs() < 1e-12,
                "tr(R_{j} R_{k}) = {got} != {want}"
            );
        }
    }
    basis
}

static R_BASIS: LazyLock<RBasis> = LazyLock::new(build_r_basis);

/// Shared, build-checked R-basis instance.
pub fn r_basis() -> &'static RBasis {
    &R_BASIS
}

/// Hermitian, unit-trace, positive-semidefinite matrix on 1-3 qubits.
///
/// Validation happens on construction; states failing the PSD tolerance are
/// rejected rather than projected back. Entries are stored complex even when
/// the source state is real.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    mat: DenseOperator,
}

impl DensityMatrix {
    /// Validates and wraps `mat` (dimension 2, 4, or 8).
    pub fn new(mat: DenseOperator) -> Result<Self> {
        let dim = mat.nrows();
        let n_qubits = match dim {
            2 => 1,
            4 => 2,
            8 => 3,
            _ => return Err(Error::DimensionMismatch { expected: 8, got: dim }),
        };
        if mat.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: mat.ncols() });
        }
        let herm = linalg::hermiticity_error(&mat);
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = mat.trace();
        let deviation = (tr - Complex64::from(1.0)).norm();
        if deviation > TRACE_TOL {
            return Err(Error::NonUnitTrace { deviation, tol: TRACE_TOL });
        }
        let min_eig = linalg::hermitian_eigenvalues(&mat)[0];
        if min_eig < PSD_TOL {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(Self { n_qubits, mat })
    }

    /// Projector onto a normalized pure state.
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let mat = psi * psi.adjoint();
        Self::new(mat)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DenseOperator {
        &self.mat
    }

    pub fn into_matrix(self) -> DenseOperator {
        self.mat
    }

    /// Smallest eigenvalue (diagnostic).
    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigenvalues(&self.mat)[0]
    }
}

fn check_sites(keep: &[usize], n: usize) -> Result<()> {
    if keep.is_empty() || !keep.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::BadSiteList);
    }
    if let Some(&worst) = keep.iter().find(|&&s| s >= n) {
        return Err(Error::SiteOutOfRange { site: worst, n_sites: n });
    }
    Ok(())
}

/// Reduced state on the (strictly increasing) `keep` sites. Trace preserving
/// and positivity preserving.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    check_sites(keep, n)?;
    reduce_matrix(rho.matrix(), n, keep)
}

fn reduce_matrix(mat: &DenseOperator, n: usize, keep: &[usize]) -> Result<DensityMatrix> {
    let m = keep.len();
    let rest: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
    let dim_out = 1 << m;
    let dim_rest = 1 << rest.len();
    let compose = |kept: usize, r: usize| -> usize {
        let mut idx = 0;
        for (t, &s) in keep.iter().enumerate() {
            idx |= ((kept >> (m - 1 - t)) & 1) << (n - 1 - s);
        }
        for (t, &s) in rest.iter().enumerate() {
            idx |= ((r >> (rest.len() - 1 - t)) & 1) << (n - 1 - s);
        }
        idx
    };
    let mut out = DenseOperator::zeros(dim_out, dim_out);
    for a in 0..dim_out {
        for b in 0..dim_out {
            let mut acc = Complex64::from(0.0);
            for r in 0..dim_rest {
                acc += mat[(compose(a, r), compose(b, r))];
            }
            out[(a, b)] = acc;
        }
    }
    DensityMatrix::new(out)
}

/// Reduced density matrix of a pure state on up to 24 qubits, keeping at most
/// three sites. This avoids ever forming the full 2^n x 2^n projector.
pub fn reduce_pure_state(
    amplitudes: &[Complex64],
    n_qubits: usize,
    keep: &[usize],
) -> Result<DensityMatrix> {
    if amplitudes.len() != 1 << n_qubits {
        return Err(Error::DimensionMismatch { expected: 1 << n_qubits, got: amplitudes.len() });
    }
    check_sites(keep, n_qubits)?;
    let m = keep.len();
    if m > 3 {
        return Err(Error::BadSiteList);
    }
    let rest: Vec<usize> = (0..n_qubits).filter(|s| !keep.contains(s)).collect();
    let dim_out = 1 << m;
    let mut out = DenseOperator::zeros(dim_out, dim_out);
    let mut local = vec![Complex64::from(0.0); dim_out];
    for r in 0..(1usize << rest.len()) {
        let mut base = 0usize;
        for (t, &s) in rest.iter().enumerate() {
            base |= ((r >> (rest.len() - 1 - t)) & 1) << (n_qubits - 1 - s);
        }
        for (a, slot) in local.iter_mut().enumerate() {
            let mut idx = base;
            for (t, &s) in keep.iter().enumerate() {
                idx |= ((a >> (m - 1 - t)) & 1) << (n_qubits - 1 - s);
            }
            *slot = amplitudes[idx];
        }
        for a in 0..dim_out {
            for b in 0..dim_out {
                out[(a, b)] += local[a] * local[b].conj();
            }
        }
    }
    DensityMatrix::new(out)
}

/// Bipartition of three qubits, or a mixture over all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bipartition {
    /// Site 1 alone versus sites 2,3.
    OneVs23,
    /// Site 2 alone versus sites 1,3.
    TwoVs13,
    /// Site 3 alone versus sites 1,2.
    ThreeVs12,
    /// Each mixture component draws its own bipartition.
    Mixture,
}

impl Bipartition {
    /// 0-based index of the lone site, if fixed.
    pub fn lone_site(self) -> Option<usize> {
        match self {
            Bipartition::OneVs23 => Some(0),
            Bipartition::TwoVs13 => Some(1),
            Bipartition::ThreeVs12 => Some(2),
            Bipartition::Mixture => None,
        }
    }
}

fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random pure state on a `dim`-dimensional space.
pub fn sample_haar_state(dim: usize, rng: &mut impl Rng) -> StateVector {
    let mut v = StateVector::from_fn(dim, |_, _| Complex64::new(normal(rng), normal(rng)));
    let n = v.norm();
    v /= Complex64::from(n);
    v
}

/// Haar-random SU(2) element (2x2), sampled via a uniform unit quaternion.
pub fn sample_haar_su2(rng: &mut impl Rng) -> DenseOperator {
    let mut q = [0.0; 4];
    loop {
        for slot in q.iter_mut() {
            *slot = normal(rng);
        }
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            for slot in q.iter_mut() {
                *slot /= n;
            }
            break;
        }
    }
    let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
    DMatrix::from_row_slice(
        2,
        2,
        &[Complex64::new(a, b), Complex64::new(c, d), Complex64::new(-c, d), Complex64::new(a, -b)],
    )
}

/// Haar-random pure product vector across the requested bipartition of three
/// qubits (for `Mixture`, the bipartition itself is drawn uniformly).
pub fn sample_product_state(partition: Bipartition, rng: &mut impl Rng) -> StateVector {
    let lone = partition.lone_site().unwrap_or_else(|| rng.random_range(0..3));
    let single = sample_haar_state(2, rng);
    let pair = sample_haar_state(4, rng);
    let others: Vec<usize> = (0..3).filter(|&s| s != lone).collect();
    StateVector::from_fn(8, |idx, _| {
        let xs = [site_bit(idx, 0, 3), site_bit(idx, 1, 3), site_bit(idx, 2, 3)];
        single[xs[lone]] * pair[2 * xs[others[0]] + xs[others[1]]]
    })
}

/// Convex mixture of 1..=4 Haar-random pure product vectors across the
/// requested bipartition(s). Biseparable by construction and bit-identical
/// for a fixed seed.
pub fn sample_biseparable(partition: Bipartition, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = rng.random_range(1..=4);
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-6).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut mat = DenseOperator::zeros(8, 8);
    for &w in &weights {
        let psi = sample_product_state(partition, &mut rng);
        mat += (&psi * psi.adjoint()) * Complex64::from(w);
    }
    DensityMatrix::new(mat).expect("mixture of pure states is a valid state")
}

/// Random mixed state of the given rank from the Ginibre ensemble.
pub fn sample_density_matrix(n_qubits: usize, rank: usize, rng: &mut impl Rng) -> DensityMatrix {
    let dim = 1 << n_qubits;
    let g = DenseOperator::from_fn(dim, rank.clamp(1, dim), |_, _| {
        Complex64::new(normal(rng), normal(rng))
    });
    let mut rho = &g * g.adjoint();
    let tr = rho.trace();
    rho /= tr;
    DensityMatrix::new(rho).expect("Ginibre states are valid")
}
