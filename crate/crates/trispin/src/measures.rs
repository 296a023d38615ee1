//! Pairwise concurrence (general spin-flip algorithm and the closed form for
//! symmetric Dicke states) plus Dicke-state constructors used as oracles.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, DenseOperator, StateVector};
use crate::qubit::{pauli_y, DensityMatrix};

/// A symmetric Dicke state |J = N/2, J_z = (2k-N)/2>: the uniform
/// superposition of all weight-`k` basis states on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DickeSpec {
    n: usize,
    k: usize,
}

impl DickeSpec {
    /// `n` is capped at 24 (dense 2^n state vector).
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || n > 24 {
            return Err(Error::ChainLengthOutOfRange(n));
        }
        if k > n {
            return Err(Error::ExcitationOutOfRange { k, n });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Derived magnetization J_z = (2k - N)/2.
    pub fn jz(&self) -> f64 {
        (2.0 * self.k as f64 - self.n as f64) / 2.0
    }
}

/// Number of weight-`k` bitstrings on `n` bits.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Dense amplitude vector of the Dicke state, 1/sqrt(C(n,k)) on every
/// weight-`k` index.
pub fn dicke_state(spec: &DickeSpec) -> StateVector {
    let dim = 1usize << spec.n;
    let amp = Complex64::from(1.0 / (binomial(spec.n, spec.k) as f64).sqrt());
    StateVector::from_fn(dim, |idx, _| {
        if idx.count_ones() as usize == spec.k {
            amp
        } else {
            Complex64::from(0.0)
        }
    })
}

/// Wootters concurrence of a two-qubit state.
///
/// Spin-flip route: lambda_i are the square roots of the eigenvalues of
/// rho * (sy x sy) conj(rho) (sy x sy) in decreasing order and
/// C = max(0, l1 - l2 - l3 - l4). Those square roots equal the singular
/// values of sqrt(rho) (sy x sy) conj(sqrt(rho)), which is how they are
/// computed here: the SVD keeps the small lambda_i at full absolute
/// accuracy instead of amplifying eigenvalue round-off through a square
/// root.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.dim() });
    }
    let yy = pauli_y().kronecker(&pauli_y());
    let root = linalg::sqrt_psd(rho.matrix());
    let a = &root * &yy * root.map(|z| z.conj());
    let svd = a.svd(false, false);
    let mut lams: Vec<f64> = svd.singular_values.iter().copied().collect();
    lams.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lams[0] - lams[1] - lams[2] - lams[3]).max(0.0))
}

/// Closed-form concurrence of any two-site reduction of the symmetric Dicke
/// multiplet |N/2, Jz>; independent of which pair of sites is kept.
pub fn dicke_concurrence(n: usize, jz: f64) -> Result<f64> {
    let two_jz = 2.0 * jz;
    if n < 2 || two_jz.abs() > n as f64 + 1e-12 || (two_jz - two_jz.round()).abs() > 1e-12 {
        return Err(Error::InvalidDickeMultiplet { n, jz });
    }
    let nf = n as f64;
    let a = nf * nf - two_jz * two_jz;
    if a <= 0.0 {
        // |N/2, +-N/2> poles are product states.
        return Ok(0.0);
    }
    let b = (nf - 2.0) * (nf - 2.0) - two_jz * two_jz;
    Ok((a - (a * b).max(0.0).sqrt()) / (2.0 * nf * (nf - 1.0)))
}

/// Two-site reduced density matrix of a Dicke state in closed form.
///
/// With |1> = spin up, k up spins, and J_z = (2k-N)/2 the nonzero elements
/// are rho_0000 = (N-2Jz)(N-2-2Jz) / (4N(N-1)),
/// rho_1111 = (N+2Jz)(N-2+2Jz) / (4N(N-1)), and the four symmetric
/// mid-block elements (N^2-4Jz^2) / (4N(N-1)). The sign convention is fixed
/// against the brute-force partial trace.
pub fn dicke_pair_rdm(n: usize, k: usize) -> Result<DensityMatrix> {
    if !(2..=24).contains(&n) {
        return Err(Error::ChainLengthOutOfRange(n));
    }
    if k > n {
        return Err(Error::ExcitationOutOfRange { k, n });
    }
    let (nf, two_jz) = (n as f64, 2.0 * k as f64 - n as f64);
    let denom = 4.0 * nf * (nf - 1.0);
    let both_down = (nf - two_jz) * (nf - 2.0 - two_jz) / denom;
    let both_up = (nf + two_jz) * (nf - 2.0 + two_jz) / denom;
    let cross = (nf * nf - two_jz * two_jz) / denom;
    let mut m = DenseOperator::zeros(4, 4);
    m[(0, 0)] = Complex64::from(both_down);
    m[(3, 3)] = Complex64::from(both_up);
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        m[(i, j)] = Complex64::from(cross);
    }
    DensityMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::qubit::{reduce_pure_state, swap_operator};

    #[test]
    fn dicke_small_cases() {
        let spec = DickeSpec::new(2, 1).unwrap();
        let v = dicke_state(&spec);
        let s = 1.0 / 2.0_f64.sqrt();
        assert!((v[0b01].re - s).abs() < 1e-15);
        assert!((v[0b10].re - s).abs() < 1e-15);
        assert!(v[0b00].norm() < 1e-15 && v[0b11].norm() < 1e-15);

        // N=3, k=1 is the W state.
        let w = dicke_state(&DickeSpec::new(3, 1).unwrap());
        let a = 1.0 / 3.0_f64.sqrt();
        for idx in [0b001, 0b010, 0b100] {
            assert!((w[idx].re - a).abs() < 1e-15);
        }
        assert!((w.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dicke_is_permutation_symmetric() {
        let spec = DickeSpec::new(3, 2).unwrap();
        let v = dicke_state(&spec);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let swapped = swap_operator(i, j, 3).unwrap() * &v;
            assert!((swapped - &v).norm() < 1e-14);
        }
    }

    #[test]
    fn dicke_spec_validates() {
        assert!(DickeSpec::new(4, 5).is_err());
        assert!(DickeSpec::new(25, 1).is_err());
        assert!((DickeSpec::new(4, 3).unwrap().jz() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn concurrence_of_bell_state_is_one() {
        let mut v = StateVector::zeros(4);
        v[0] = Complex64::from(1.0 / 2.0_f64.sqrt());
        v[3] = v[0];
        let c = wootters_concurrence(&DensityMatrix::from_pure(&v).unwrap()).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concurrence_of_product_state_is_zero() {
        let mut v = StateVector::zeros(4);
        v[2] = Complex64::from(1.0); // |10>
        let c = wootters_concurrence(&DensityMatrix::from_pure(&v).unwrap()).unwrap();
        assert!(c.abs() < 1e-12);
    }

    #[test]
    fn concurrence_of_dicke_reduction() {
        let spec = DickeSpec::new(4, 2).unwrap();
        let v = dicke_state(&spec);
        let rho = reduce_pure_state(v.as_slice(), 4, &[0, 1]).unwrap();
        let c = wootters_concurrence(&rho).unwrap();
        assert!((c - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn dicke_concurrence_reference_values() {
        assert!((dicke_concurrence(4, 0.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(dicke_concurrence(192, 0.0).unwrap(), 1.0 / 191.0);
        // W state: C = 2/N.
        assert!((dicke_concurrence(3, -0.5).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        // Polarized poles are product states.
        assert_eq!(dicke_concurrence(6, 3.0).unwrap(), 0.0);
        assert_eq!(dicke_concurrence(6, -3.0).unwrap(), 0.0);
        assert!(dicke_concurrence(6, 3.5).is_err());
        assert!(dicke_concurrence(6, 0.25).is_err());
        assert!(dicke_concurrence(1, 0.5).is_err());
    }

    #[test]
    fn pair_rdm_bell_like_case() {
        let rho = dicke_pair_rdm(2, 1).unwrap();
        let half = Complex64::from(0.5);
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert!((rho.matrix()[(i, j)] - half).norm() < 1e-15);
        }
        assert!(rho.matrix()[(0, 0)].norm() < 1e-15);
        assert!(rho.matrix()[(3, 3)].norm() < 1e-15);
    }

    #[test]
    fn pair_rdm_matches_brute_force() {
        for n in 2..=8 {
            for k in 0..=n {
                let closed = dicke_pair_rdm(n, k).unwrap();
                let v = dicke_state(&DickeSpec::new(n, k).unwrap());
                let brute = reduce_pure_state(v.as_slice(), n, &[0, 1]).unwrap();
                assert!(
                    max_abs_diff(closed.matrix(), brute.matrix()) < 1e-12,
                    "mismatch at N={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn pair_rdm_reduction_independent_of_site_pair() {
        let v = dicke_state(&DickeSpec::new(6, 2).unwrap());
        let reference = reduce_pure_state(v.as_slice(), 6, &[0, 1]).unwrap();
        for pair in [[1, 3], [0, 5], [2, 4]] {
            let other = reduce_pure_state(v.as_slice(), 6, &pair).unwrap();
            assert!(max_abs_diff(reference.matrix(), other.matrix()) < 1e-13);
        }
    }

    #[test]
    fn three_way_concurrence_agreement_small() {
        for n in 2..=8 {
            for k in 0..=n {
                let jz = (2.0 * k as f64 - n as f64) / 2.0;
                let closed = dicke_concurrence(n, jz).unwrap();
                let via_rdm = wootters_concurrence(&dicke_pair_rdm(n, k).unwrap()).unwrap();
                let v = dicke_state(&DickeSpec::new(n, k).unwrap());
                let via_brute =
                    wootters_concurrence(&reduce_pure_state(v.as_slice(), n, &[0, 1]).unwrap())
                        .unwrap();
                assert!((closed - via_rdm).abs() < 1e-10, "N={n} k={k}");
                assert!((closed - via_brute).abs() < 1e-10, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn jz_zero_concurrence_is_exactly_one_over_n_minus_one() {
        // Exact integer arithmetic: C * (N-1) = 1 for even N at Jz = 0.
        for n in (2..=192u128).step_by(2) {
            let a = n * n; // N^2 - 4 Jz^2 at Jz = 0
            let root = n * (n - 2); // sqrt(N^2 (N-2)^2)
            assert_eq!(root * root, a * (n - 2) * (n - 2));
            let numerator = a - root; // = 2N
            let denominator = 2 * n * (n - 1);
            assert_eq!(numerator, 2 * n);
            assert_eq!(numerator * (n - 1), denominator);
        }
    }
}
