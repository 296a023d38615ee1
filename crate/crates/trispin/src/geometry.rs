//! Geometry of SU(2)-invariant three-qubit states: the invariant-coordinate
//! map, the twirling projection, separable/biseparable membership tests, and
//! the tangent-plane witness family with its minimization.
//!
//! Coordinates are (r_+, r_0, r_1, r_2, r_3) with r_k = tr(rho R_k). The
//! physical set is the cone r_1^2 + r_2^2 + r_3^2 <= r_0^2 with
//! r_+ + r_0 = 1. In the (r_1, r_2) plane the biseparable lobe B1 sits at
//! angle 180 degrees, B2 at +60, B3 at -60; witness normals point at 0 and
//! +-120 degrees, into the gaps between lobes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, DenseOperator, SQRT3};
use crate::qubit::{r_basis, DensityMatrix};

/// Witness values below this threshold count as negative (detection).
pub const DETECTION_THRESHOLD: f64 = -1e-10;

/// Number of r0 grid points scanned by the minimizer.
pub const GRID_POINTS: usize = 256;
/// Lower end of the witness-parameter grid.
pub const GRID_R0_MIN: f64 = 2.0 / 3.0 + 1e-4;
/// Upper end of the witness-parameter grid.
pub const GRID_R0_MAX: f64 = 1.0 - 1e-4;
/// Bracket width at which golden-section refinement stops.
pub const REFINE_WIDTH: f64 = 1e-8;

const COORD_TOL: f64 = 1e-10;

/// Location of a state in the invariant cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCoords {
    pub r_plus: f64,
    pub r_zero: f64,
    pub r_one: f64,
    pub r_two: f64,
    pub r_three: f64,
}

impl InvariantCoords {
    /// Validates the physicality constraints: r_+, r_0 >= 0, r_+ + r_0 = 1,
    /// and r_1^2 + r_2^2 + r_3^2 <= r_0^2 (all with 1e-10 tolerance).
    pub fn new(r_plus: f64, r_zero: f64, r_one: f64, r_two: f64, r_three: f64) -> Result<Self> {
        if r_plus < -COORD_TOL || r_zero < -COORD_TOL {
            return Err(Error::UnphysicalCoords(format!(
                "r_plus = {r_plus}, r_zero = {r_zero} must be non-negative"
            )));
        }
        if (r_plus + r_zero - 1.0).abs() > COORD_TOL {
            return Err(Error::UnphysicalCoords(format!(
                "r_plus + r_zero = {} must equal 1",
                r_plus + r_zero
            )));
        }
        let radial = r_one * r_one + r_two * r_two + r_three * r_three;
        if radial > r_zero * r_zero + COORD_TOL {
            return Err(Error::UnphysicalCoords(format!(
                "r_1^2 + r_2^2 + r_3^2 = {radial} exceeds r_0^2 = {}",
                r_zero * r_zero
            )));
        }
        Ok(Self { r_plus, r_zero, r_one, r_two, r_three })
    }

    /// Coordinates with (r_1, r_2) rotated by `angle` about the r_0 axis.
    pub(crate) fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            r_one: c * self.r_one - s * self.r_two,
            r_two: s * self.r_one + c * self.r_two,
            ..*self
        }
    }
}

/// Invariant coordinates r_k = tr(rho R_k) of a three-qubit state.
pub fn coords_of(rho: &DensityMatrix) -> Result<InvariantCoords> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, got: rho.dim() });
    }
    let basis = r_basis();
    let mut r = [0.0_f64; 5];
    for (slot, op) in r.iter_mut().zip(basis.as_array()) {
        *slot = (op * rho.matrix()).trace().re;
    }
    InvariantCoords::new(r[0], r[1], r[2], r[3], r[4])
}

/// Group average over simultaneous single-qubit rotations U x U x U,
/// implemented as the exact linear projection (1/4) sum_k r_k R_k. Idempotent
/// and trace preserving; the Monte-Carlo Haar average is kept as a test
/// oracle only.
pub fn twirl(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let c = coords_of(rho)?;
    DensityMatrix::new(invariant_matrix(&c))
}

/// Dense 8x8 matrix of the invariant state with the given coordinates.
pub fn invariant_matrix(c: &InvariantCoords) -> DenseOperator {
    let basis = r_basis();
    let weights = [c.r_plus, c.r_zero, c.r_one, c.r_two, c.r_three];
    let mut mat = DenseOperator::zeros(8, 8);
    for (w, op) in weights.iter().zip(basis.as_array()) {
        mat += op * Complex64::from(w / 4.0);
    }
    mat
}

/// Membership test for the fully separable invariant states.
pub fn is_separable_invariant(c: &InvariantCoords) -> bool {
    if c.r_plus < 0.25 - COORD_TOL || c.r_plus > 1.0 + COORD_TOL {
        return false;
    }
    let lhs = 3.0 * c.r_three * c.r_three + (1.0 - 3.0 * c.r_plus).powi(2);
    let rhs = (c.r_one + c.r_plus) * ((c.r_one - 2.0 * c.r_plus).powi(2) - 3.0 * c.r_two * c.r_two);
    lhs <= rhs + COORD_TOL
}

/// One of the three biseparable lobes: lobe k contains the states separable
/// across the bipartition where site k stands alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lobe {
    One,
    Two,
    Three,
}

impl Lobe {
    pub const ALL: [Lobe; 3] = [Lobe::One, Lobe::Two, Lobe::Three];

    pub fn index(self) -> usize {
        match self {
            Lobe::One => 1,
            Lobe::Two => 2,
            Lobe::Three => 3,
        }
    }
}

/// Membership test for biseparable lobe `lobe`. Lobes 2 and 3 are the images
/// of lobe 1 under rotations by -+2pi/3 about the r_0 axis, so the test first
/// applies the inverse rotation in the (r_1, r_2) plane.
pub fn is_biseparable_lobe(c: &InvariantCoords, lobe: Lobe) -> bool {
    let c = match lobe {
        Lobe::One => *c,
        Lobe::Two => c.rotated(2.0 * std::f64::consts::PI / 3.0),
        Lobe::Three => c.rotated(-2.0 * std::f64::consts::PI / 3.0),
    };
    let m = 1.0 + c.r_one - 2.0 * c.r_plus;
    if m.abs() > 1.0 + COORD_TOL {
        return false;
    }
    let lhs = 3.0 * (c.r_two * c.r_two + c.r_three * c.r_three);
    let rhs = (1.0 - m.abs()).powi(2) - ((c.r_one + c.r_plus) - m.abs()).powi(2);
    lhs <= rhs + COORD_TOL
}

/// Orientation of a witness within the family: the plane normal points at
/// angle 0 (between lobes 2 and 3), +120 degrees (`Plus`, between lobes 1
/// and 2) or -120 degrees (`Minus`, between lobes 1 and 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Zero,
    Plus,
    Minus,
}

impl Orientation {
    /// Tie-break / reporting order.
    pub const ALL: [Orientation; 3] = [Orientation::Zero, Orientation::Plus, Orientation::Minus];

    /// Integer tag 0 / +1 / -1 used in reports and CSV output.
    pub fn index(self) -> i8 {
        match self {
            Orientation::Zero => 0,
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }

    /// In-plane component u . (r_1, r_2) of the witness normal.
    fn directional(self, r_one: f64, r_two: f64) -> f64 {
        match self {
            Orientation::Zero => r_one,
            Orientation::Plus => -0.5 * r_one + 0.5 * SQRT3 * r_two,
            Orientation::Minus => -0.5 * r_one - 0.5 * SQRT3 * r_two,
        }
    }
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Orientation::Zero => write!(f, "0"),
            Orientation::Plus => write!(f, "+1"),
            Orientation::Minus => write!(f, "-1"),
        }
    }
}

/// A point on the witness family: the tangency parameter r0 plus the
/// orientation of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessSpec {
    r0: f64,
    orientation: Orientation,
}

impl WitnessSpec {
    /// `r0` must lie strictly inside (2/3, 1), where the tangent construction
    /// is defined (the square root -1 + 4 r0 - 3 r0^2 must be real and the
    /// plane must sit above the biseparable-filled part of the cone).
    pub fn new(r0: f64, orientation: Orientation) -> Result<Self> {
        let disc = -1.0 + 4.0 * r0 - 3.0 * r0 * r0;
        if !(r0 > 2.0 / 3.0 && r0 < 1.0) || disc <= 0.0 {
            return Err(Error::WitnessParamOutOfRange(r0));
        }
        Ok(Self { r0, orientation })
    }

    pub fn r0_param(&self) -> f64 {
        self.r0
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Plane coefficients (A, B) of W = A R_0 - R_dir - B 1.
    pub fn plane_coefficients(&self) -> (f64, f64) {
        plane_coefficients(self.r0)
    }
}

fn plane_coefficients(r0: f64) -> (f64, f64) {
    let sq = (-1.0 + 4.0 * r0 - 3.0 * r0 * r0).sqrt();
    let a = 1.0 + 0.5 * SQRT3 * (2.0 - 3.0 * r0) / sq;
    let b = SQRT3 * (1.0 - 2.0 * r0) / (2.0 * sq) + 0.5;
    (a, b)
}

/// Dense 8x8 Hermitian witness operator W = A(r0) R_0 - R_dir - B(r0) 1,
/// where R_dir is R_1 for orientation 0 and -R_1/2 +- (sqrt(3)/2) R_2 for the
/// two rotated planes.
pub fn witness_matrix(w: &WitnessSpec) -> DenseOperator {
    let basis = r_basis();
    let (a, b) = w.plane_coefficients();
    let dir = match w.orientation {
        Orientation::Zero => basis.r_one.clone(),
        Orientation::Plus => {
            &basis.r_one * Complex64::from(-0.5) + &basis.r_two * Complex64::from(0.5 * SQRT3)
        }
        Orientation::Minus => {
            &basis.r_one * Complex64::from(-0.5) - &basis.r_two * Complex64::from(0.5 * SQRT3)
        }
    };
    &basis.r_zero * Complex64::from(a) - dir - linalg::identity(3) * Complex64::from(b)
}

/// Expectation value tr(W rho) from the dense witness matrix.
pub fn witness_value(rho: &DensityMatrix, w: &WitnessSpec) -> Result<f64> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, got: rho.dim() });
    }
    Ok((witness_matrix(w) * rho.matrix()).trace().re)
}

/// The same expectation evaluated in invariant coordinates,
/// A r_0 - u.(r_1, r_2) - B. Identical to [`witness_value`] (to round-off)
/// for every state, including complex ones, since tr(W R_3) = 0.
pub fn witness_value_from_coords(c: &InvariantCoords, w: &WitnessSpec) -> f64 {
    let (a, b) = w.plane_coefficients();
    a * c.r_zero - w.orientation.directional(c.r_one, c.r_two) - b
}

/// Where a state landed after classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassLabel {
    /// The twirled state is fully separable.
    Separable,
    /// The twirled state lies in the given biseparable lobe.
    BiseparableLobe(Lobe),
    /// Witness non-negative and outside every lobe: possibly inside the
    /// convex hull of the lobes, which has no closed-form membership test.
    IndeterminateHull,
    /// Witness negative: the state itself is genuinely tripartite entangled.
    GenuineTripartite,
}

/// Result of the witness minimization: the minimal expectation over the
/// family, its argmin, and the membership label.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub label: ClassLabel,
    pub witness_value: f64,
    pub witness_argmin: WitnessSpec,
    pub coords: InvariantCoords,
}

impl Classification {
    pub fn is_genuinely_entangled(&self) -> bool {
        matches!(self.label, ClassLabel::GenuineTripartite)
    }
}

/// Minimum of the witness expectation over the r0 grid and all three
/// orientations, evaluated in invariant coordinates. Ties break toward
/// smaller r0, then orientation 0, +1, -1. The winning grid cell is refined
/// by golden-section search.
pub fn witness_minimize_coords(c: &InvariantCoords) -> (f64, WitnessSpec) {
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| GRID_R0_MIN + (GRID_R0_MAX - GRID_R0_MIN) * i as f64 / (GRID_POINTS - 1) as f64)
        .collect();

    let mut best_value = f64::INFINITY;
    let mut best_idx = 0;
    let mut best_orientation = Orientation::Zero;
    for (i, &r0) in grid.iter().enumerate() {
        let (a, b) = plane_coefficients(r0);
        for orientation in Orientation::ALL {
            let v = a * c.r_zero - orientation.directional(c.r_one, c.r_two) - b;
            if v < best_value {
                best_value = v;
                best_idx = i;
                best_orientation = orientation;
            }
        }
    }

    let lo = grid[best_idx.saturating_sub(1)];
    let hi = grid[(best_idx + 1).min(GRID_POINTS - 1)];
    let f = |r0: f64| {
        let (a, b) = plane_coefficients(r0);
        a * c.r_zero - best_orientation.directional(c.r_one, c.r_two) - b
    };
    let (x, fx) = golden_section(f, lo, hi, REFINE_WIDTH);

    if fx < best_value {
        (fx, WitnessSpec { r0: x, orientation: best_orientation })
    } else {
        (best_value, WitnessSpec { r0: grid[best_idx], orientation: best_orientation })
    }
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > width {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Minimizes the witness family over a three-qubit state and labels it.
///
/// A negative minimum certifies genuine tripartite entanglement of `rho`
/// itself. Otherwise the label describes where the twirled state sits
/// (separable, inside a lobe, or indeterminate within the lobes' hull).
pub fn witness_minimize(rho: &DensityMatrix) -> Result<Classification> {
    let coords = coords_of(rho)?;
    Ok(classify_coords(&coords))
}

/// Classification of an invariant state given directly by its coordinates.
pub fn classify_coords(coords: &InvariantCoords) -> Classification {
    let (value, argmin) = witness_minimize_coords(coords);
    let label = if value < DETECTION_THRESHOLD {
        ClassLabel::GenuineTripartite
    } else if is_separable_invariant(coords) {
        ClassLabel::Separable
    } else if let Some(lobe) = Lobe::ALL.iter().find(|&&l| is_biseparable_lobe(coords, l)) {
        ClassLabel::BiseparableLobe(*lobe)
    } else {
        ClassLabel::IndeterminateHull
    };
    Classification { label, witness_value: value, witness_argmin: argmin, coords: *coords }
}
