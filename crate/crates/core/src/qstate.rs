//! Alice's qubit and the receiver-side algebra.
//!
//! States are compared by overlap magnitude only, so Pauli products are
//! applied without tracking the global `-1` phases that appear when `X` and
//! `Z` are reordered.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::DetectionStats;
use crate::{Error, Result};

/// Tolerance on `|alpha|^2 + |beta|^2 = 1`.
pub const NORM_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// How [`QubitState::with_normalization`] treats amplitudes off the unit sphere.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    #[default]
    Reject,
    Normalize,
}

/// A normalized pure qubit `alpha|0> + beta|1>`.
///
/// Serializes as `{"alpha": [re, im], "beta": [re, im]}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState", into = "RawState")]
pub struct QubitState {
    alpha: Complex64,
    beta: Complex64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    alpha: [f64; 2],
    beta: [f64; 2],
}

impl TryFrom<RawState> for QubitState {
    type Error = Error;

    fn try_from(raw: RawState) -> Result<Self> {
        Self::new(
            Complex64::new(raw.alpha[0], raw.alpha[1]),
            Complex64::new(raw.beta[0], raw.beta[1]),
        )
    }
}

impl From<QubitState> for RawState {
    fn from(s: QubitState) -> Self {
        Self {
            alpha: [s.alpha.re, s.alpha.im],
            beta: [s.beta.re, s.beta.im],
        }
    }
}

impl QubitState {
    /// Builds a state, rejecting amplitudes that are not normalized.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::with_normalization(alpha, beta, Normalization::Reject)
    }

    pub fn with_normalization(
        alpha: Complex64,
        beta: Complex64,
        policy: Normalization,
    ) -> Result<Self> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        if !norm_sqr.is_finite() || norm_sqr == 0.0 {
            return Err(Error::Unnormalized { norm_sqr });
        }
        if (norm_sqr - 1.0).abs() <= NORM_TOLERANCE {
            return Ok(Self { alpha, beta });
        }
        match policy {
            Normalization::Reject => Err(Error::Unnormalized { norm_sqr }),
            Normalization::Normalize => {
                let norm = norm_sqr.sqrt();
                Ok(Self {
                    alpha: alpha / norm,
                    beta: beta / norm,
                })
            }
        }
    }

    pub fn real(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0))
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self {
            alpha: Complex64::new(c, 0.0),
            beta: Complex64::from_polar(s, phi),
        }
    }

    pub fn zero() -> Self {
        Self { alpha: ONE, beta: ZERO }
    }

    pub fn one() -> Self {
        Self { alpha: ZERO, beta: ONE }
    }

    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            alpha: Complex64::new(h, 0.0),
            beta: Complex64::new(h, 0.0),
        }
    }

    pub fn minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            alpha: Complex64::new(h, 0.0),
            beta: Complex64::new(-h, 0.0),
        }
    }

    /// `(|0> + i|1>)/sqrt(2)`, the +1 eigenstate of `Y`.
    pub fn i_plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            alpha: Complex64::new(h, 0.0),
            beta: Complex64::new(0.0, h),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// The state orthogonal to this one.
    pub fn orthogonal(&self) -> Self {
        Self {
            alpha: -self.beta.conj(),
            beta: self.alpha.conj(),
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &QubitState) -> Complex64 {
        self.alpha.conj() * other.alpha + self.beta.conj() * other.beta
    }

    /// `|<self|other>|^2`.
    pub fn overlap_sqr(&self, other: &QubitState) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn apply_x(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    pub fn apply_z(&self) -> Self {
        Self {
            alpha: self.alpha,
            beta: -self.beta,
        }
    }

    pub fn pauli_weights(&self) -> PauliWeights {
        pauli_weights(self)
    }
}

/// Squared overlaps of the state with its `X`, `Z` and `XZ` images.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliWeights {
    pub qx: f64,
    pub qz: f64,
    pub qxz: f64,
}

impl PauliWeights {
    /// `|<psi| X^x Z^z |psi>|^2` for the given flip pattern.
    pub fn overlap(&self, flips: BellBits) -> f64 {
        match (flips.x_flip, flips.z_flip) {
            (false, false) => 1.0,
            (true, false) => self.qx,
            (false, true) => self.qz,
            (true, true) => self.qxz,
        }
    }

    pub fn sum(&self) -> f64 {
        self.qx + self.qz + self.qxz
    }
}

/// Expectation values of `X`, `Z` and `XZ`, squared.
pub fn pauli_weights(state: &QubitState) -> PauliWeights {
    let (a, b) = (state.alpha, state.beta);
    // <Z> = |a|^2 - |b|^2, <X> = 2 Re(a* b), <XZ> = a b* - a* b = 2i Im(a b*)
    let ez = a.norm_sqr() - b.norm_sqr();
    let ex = 2.0 * (a.conj() * b).re;
    let exz = 2.0 * (a * b.conj()).im;
    let clamp = |v: f64| v.clamp(0.0, 1.0);
    PauliWeights {
        qx: clamp(ex * ex),
        qz: clamp(ez * ez),
        qxz: clamp(exz * exz),
    }
}

/// Two classical bits. `x_flip` is the exponent of `X`, `z_flip` that of `Z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BellBits {
    pub x_flip: bool,
    pub z_flip: bool,
}

impl BellBits {
    pub const fn new(x_flip: bool, z_flip: bool) -> Self {
        Self { x_flip, z_flip }
    }

    pub fn all() -> [BellBits; 4] {
        [
            Self::new(false, false),
            Self::new(false, true),
            Self::new(true, false),
            Self::new(true, true),
        ]
    }

    pub fn xor(self, other: BellBits) -> BellBits {
        Self::new(self.x_flip ^ other.x_flip, self.z_flip ^ other.z_flip)
    }

    /// Index in `0..4` with `x_flip` as the high bit.
    pub fn index(self) -> usize {
        (usize::from(self.x_flip) << 1) | usize::from(self.z_flip)
    }
}

/// Outcome bits of Alice's Bell measurement: two independent fair bits.
pub fn bell_measure<R: Rng + ?Sized>(rng: &mut R) -> BellBits {
    BellBits::new(rng.random(), rng.random())
}

/// Bob's qubit after he applies the correction for `detected` to the state
/// prepared by outcome `sent`: `X^(x xor) Z^(z xor) |psi>` up to phase.
pub fn corrected_state(state: &QubitState, sent: BellBits, detected: BellBits) -> QubitState {
    let flips = sent.xor(detected);
    let mut out = *state;
    if flips.z_flip {
        out = out.apply_z();
    }
    if flips.x_flip {
        out = out.apply_x();
    }
    out
}

/// A 2x2 density matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    m: [[Complex64; 2]; 2],
}

impl DensityMatrix {
    pub const TOLERANCE: f64 = 1e-12;

    /// Validates hermiticity, unit trace and positivity.
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let tol = Self::TOLERANCE;
        if m.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidDensityMatrix("non-finite entry".into()));
        }
        if m[0][0].im.abs() > tol || m[1][1].im.abs() > tol || (m[0][1] - m[1][0].conj()).norm() > tol
        {
            return Err(Error::InvalidDensityMatrix("not Hermitian".into()));
        }
        let trace = m[0][0].re + m[1][1].re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace}")));
        }
        let rho = Self { m };
        let (lo, _) = rho.eigenvalues();
        if lo < -tol {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {lo}")));
        }
        Ok(rho)
    }

    pub fn pure(state: &QubitState) -> Self {
        let (a, b) = (state.alpha, state.beta);
        Self {
            m: [[a * a.conj(), a * b.conj()], [b * a.conj(), b * b.conj()]],
        }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: [
                [Complex64::new(0.5, 0.0), ZERO],
                [ZERO, Complex64::new(0.5, 0.0)],
            ],
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0].re + self.m[1][1].re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let half_gap = ((a - d) / 2.0).hypot(self.m[0][1].norm());
        let mid = (a + d) / 2.0;
        (mid - half_gap, mid + half_gap)
    }

    /// Largest elementwise distance to `other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }

    /// `<psi| rho |psi>`.
    pub fn expectation(&self, state: &QubitState) -> Complex64 {
        let v = [state.alpha, state.beta];
        let mut acc = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                acc += v[i].conj() * self.m[i][j] * v[j];
            }
        }
        acc
    }
}

/// Bob's mixed state averaged over the four Bell outcomes and the four
/// detected bit pairs, each weighted by `p(y1|s1) p(y2|s2) / 4`.
pub fn bob_mixed_state(state: &QubitState, stats: &DetectionStats) -> DensityMatrix {
    let mut m = [[ZERO; 2]; 2];
    for sent in BellBits::all() {
        for detected in BellBits::all() {
            let weight = 0.25
                * stats.conditional(detected.x_flip, sent.x_flip)
                * stats.conditional(detected.z_flip, sent.z_flip);
            if weight == 0.0 {
                continue;
            }
            let projector = DensityMatrix::pure(&corrected_state(state, sent, detected));
            for (row, prow) in m.iter_mut().zip(projector.m.iter()) {
                for (entry, p) in row.iter_mut().zip(prow.iter()) {
                    *entry += *p * weight;
                }
            }
        }
    }
    DensityMatrix { m }
}

/// `<psi| rho |psi>`, clamped to `[0, 1]`.
pub fn fidelity_against(state: &QubitState, rho: &DensityMatrix) -> f64 {
    rho.expectation(state).re.clamp(0.0, 1.0)
}
