//! Gaussian gates, embedding, state updates and Gaussian measurements.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, numeric, Error, Result};
use crate::linalg::{direct_sum, quadrature_indices, rotation, select, select_rect, symmetrize, CMat, RMat, RVec};
use crate::state::GaussianState;
use crate::symplectic::{QuadraticHamiltonian, SymplecticMatrix};

/// Gate type and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case", deny_unknown_fields)]
pub enum GateKind {
    /// Phase rotation; rotates phase space by `phi / 2`.
    Phase { phi: f64 },
    /// Single-mode squeezer with strength `s` and angle `theta`.
    Squeeze { s: f64, theta: f64 },
    /// Beam splitter with transmissivity `tau ∈ [0, 1]`.
    #[serde(rename = "beamsplitter")]
    BeamSplitter { tau: f64 },
    /// Two-mode squeezer with strength `r`.
    TwoModeSqueeze { r: f64 },
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Phase { .. } | GateKind::Squeeze { .. } => 1,
            GateKind::BeamSplitter { .. } | GateKind::TwoModeSqueeze { .. } => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::Phase { .. } => "phase",
            GateKind::Squeeze { .. } => "squeeze",
            GateKind::BeamSplitter { .. } => "beamsplitter",
            GateKind::TwoModeSqueeze { .. } => "two_mode_squeeze",
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = match *self {
            GateKind::Phase { phi } => phi.is_finite(),
            GateKind::Squeeze { s, theta } => s.is_finite() && theta.is_finite(),
            GateKind::BeamSplitter { tau } => {
                if !(0.0..=1.0).contains(&tau) {
                    return invalid_arg(format!("transmissivity must lie in [0, 1], got {tau}"));
                }
                true
            }
            GateKind::TwoModeSqueeze { r } => r.is_finite(),
        };
        if !finite {
            return invalid_arg(format!("{} gate has non-finite parameters", self.name()));
        }
        Ok(())
    }
}

/// A gate acting on specific (zero-based) modes.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    pub kind: GateKind,
    pub targets: Vec<usize>,
}

impl GateSpec {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Result<Self> {
        kind.validate()?;
        if targets.len() != kind.arity() {
            return invalid_arg(format!(
                "{} gate takes {} target(s), got {}",
                kind.name(),
                kind.arity(),
                targets.len()
            ));
        }
        Ok(Self { kind, targets })
    }

    /// Full symplectic matrix on `n_modes` modes.
    pub fn symplectic(&self, n_modes: usize) -> Result<SymplecticMatrix> {
        embed(&gate_matrix(&self.kind)?, &self.targets, n_modes)
    }
}

/// Closed-form local matrix of a gate (2×2 or 4×4, interleaved).
pub fn gate_matrix(kind: &GateKind) -> Result<SymplecticMatrix> {
    kind.validate()?;
    let m = match *kind {
        GateKind::Phase { phi } => rotation(phi / 2.0),
        GateKind::Squeeze { s, theta } => {
            let (ch, sh) = (s.cosh(), s.sinh());
            let (st, ct) = theta.sin_cos();
            RMat::from_row_slice(2, 2, &[ch + ct * sh, st * sh, st * sh, ch - ct * sh])
        }
        GateKind::BeamSplitter { tau } => {
            let (t, r) = (tau.sqrt(), (1.0 - tau).sqrt());
            #[rustfmt::skip]
            let m = RMat::from_row_slice(4, 4, &[
                t, 0.0, r, 0.0,
                0.0, t, 0.0, r,
                r, 0.0, -t, 0.0,
                0.0, r, 0.0, -t,
            ]);
            m
        }
        GateKind::TwoModeSqueeze { r } => {
            let (c, s) = (r.cosh(), r.sinh());
            #[rustfmt::skip]
            let m = RMat::from_row_slice(4, 4, &[
                c, 0.0, s, 0.0,
                0.0, c, 0.0, -s,
                s, 0.0, c, 0.0,
                0.0, -s, 0.0, c,
            ]);
            m
        }
    };
    Ok(SymplecticMatrix::new_unchecked(m))
}

/// Quadratic Hamiltonian generating a gate through `symplectic_from_hamiltonian`.
pub fn gate_hamiltonian(kind: &GateKind) -> Result<QuadraticHamiltonian> {
    kind.validate()?;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    Ok(match *kind {
        GateKind::Phase { phi } => QuadraticHamiltonian {
            a: CMat::from_element(1, 1, c(-phi / 2.0, 0.0)),
            b: CMat::zeros(1, 1),
        },
        GateKind::Squeeze { s, theta } => QuadraticHamiltonian {
            a: CMat::zeros(1, 1),
            b: CMat::from_element(1, 1, c(0.0, s) * Complex64::from_polar(1.0, theta)),
        },
        GateKind::BeamSplitter { tau } => {
            // exp(−iπP) = I − 2P reflects about v₋, giving [[cos φ, sin φ], [sin φ, −cos φ]].
            let phi = tau.sqrt().clamp(0.0, 1.0).acos();
            let v = [-(phi / 2.0).sin(), (phi / 2.0).cos()];
            QuadraticHamiltonian {
                a: CMat::from_fn(2, 2, |i, j| c(PI * v[i] * v[j], 0.0)),
                b: CMat::zeros(2, 2),
            }
        }
        GateKind::TwoModeSqueeze { r } => QuadraticHamiltonian {
            a: CMat::zeros(2, 2),
            b: CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, r), c(0.0, r), c(0.0, 0.0)]),
        },
    })
}

fn check_targets(targets: &[usize], n_modes: usize) -> Result<()> {
    if targets.is_empty() {
        return invalid_arg("no target modes given");
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_modes {
            return invalid_arg(format!("target mode {t} out of range for {n_modes} modes"));
        }
        if targets[..i].contains(&t) {
            return invalid_arg(format!("target mode {t} repeated"));
        }
    }
    Ok(())
}

/// Embeds a local symplectic acting on `targets` into `n_modes` modes.
pub fn embed(local: &SymplecticMatrix, targets: &[usize], n_modes: usize) -> Result<SymplecticMatrix> {
    check_targets(targets, n_modes)?;
    if local.n_modes() != targets.len() {
        return invalid_arg(format!(
            "local matrix acts on {} modes but {} targets were given",
            local.n_modes(),
            targets.len()
        ));
    }
    let idx = quadrature_indices(targets);
    let l = local.matrix();
    let mut m = RMat::identity(2 * n_modes, 2 * n_modes);
    for (r, &gr) in idx.iter().enumerate() {
        for (c, &gc) in idx.iter().enumerate() {
            m[(gr, gc)] = l[(r, c)];
        }
    }
    Ok(SymplecticMatrix::new_unchecked(m))
}

/// `d → S d`, `σ → S σ Sᵀ`.
pub fn apply(state: &GaussianState, s: &SymplecticMatrix) -> Result<GaussianState> {
    if s.n_modes() != state.n_modes() {
        return invalid_arg(format!(
            "symplectic acts on {} modes, state has {}",
            s.n_modes(),
            state.n_modes()
        ));
    }
    let m = s.matrix();
    GaussianState::new_unchecked(m * state.d(), symmetrize(&(m * state.sigma() * m.transpose())))
}

pub fn apply_gate(state: &GaussianState, gate: &GateSpec) -> Result<GaussianState> {
    apply(state, &gate.symplectic(state.n_modes())?)
}

/// `d → d + delta`.
pub fn displace(state: &GaussianState, delta: &RVec) -> Result<GaussianState> {
    if delta.len() != state.d().len() {
        return invalid_arg(format!(
            "displacement has length {}, expected {}",
            delta.len(),
            state.d().len()
        ));
    }
    GaussianState::new_unchecked(state.d() + delta, state.sigma().clone())
}

/// Quadrature selected by a homodyne measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quadrature {
    Q,
    P,
}

impl FromStr for Quadrature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" | "x" => Ok(Quadrature::Q),
            "p" | "P" => Ok(Quadrature::P),
            other => invalid_arg(format!("unknown quadrature '{other}'")),
        }
    }
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadrature::Q => "q",
            Quadrature::P => "p",
        })
    }
}

/// Parametrisation of a Gaussian measurement seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeedKind {
    /// Arbitrary physical covariance matrix covering all measured modes.
    General,
    /// Pure single-mode seed `R(φ) diag(λ, 1/λ) R(φ)ᵀ`, repeated on each measured mode.
    PureSingleMode { lambda: f64, phi: f64 },
    /// `Γ = I` on each measured mode.
    Heterodyne,
    /// Infinitely squeezed limit measuring one quadrature on each measured mode.
    Homodyne(Quadrature),
}

/// Covariance of the seed state defining a Gaussian POVM.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSeed {
    kind: SeedKind,
    gamma: Option<RMat>,
}

impl MeasurementSeed {
    pub fn pure(lambda: f64, phi: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() || !phi.is_finite() {
            return invalid_arg(format!("seed needs λ > 0, got {lambda}"));
        }
        let r = rotation(phi);
        let g = &r * RMat::from_diagonal(&RVec::from_vec(vec![lambda, 1.0 / lambda])) * r.transpose();
        Ok(Self {
            kind: SeedKind::PureSingleMode { lambda, phi },
            gamma: Some(symmetrize(&g)),
        })
    }

    pub fn heterodyne() -> Self {
        Self {
            kind: SeedKind::Heterodyne,
            gamma: Some(RMat::identity(2, 2)),
        }
    }

    pub fn homodyne(quadrature: Quadrature) -> Self {
        Self {
            kind: SeedKind::Homodyne(quadrature),
            gamma: None,
        }
    }

    /// Arbitrary physical seed covariance (dimension `2 × measured modes`).
    pub fn general(gamma: RMat) -> Result<Self> {
        let st = GaussianState::from_covariance(gamma.clone())?;
        Ok(Self {
            kind: SeedKind::General,
            gamma: Some(st.sigma().clone()),
        })
    }

    pub fn kind(&self) -> SeedKind {
        self.kind
    }

    /// Finite seed covariance; `None` for the homodyne limit.
    pub fn gamma(&self) -> Option<&RMat> {
        self.gamma.as_ref()
    }

    fn full_gamma(&self, n_measured: usize) -> Result<RMat> {
        let g = self.gamma.as_ref().expect("finite seed");
        match self.kind {
            SeedKind::General => {
                if g.nrows() != 2 * n_measured {
                    return invalid_arg(format!(
                        "seed covers {} modes but {} are measured",
                        g.nrows() / 2,
                        n_measured
                    ));
                }
                Ok(g.clone())
            }
            _ => Ok(direct_sum(&vec![g.clone(); n_measured])),
        }
    }
}

/// Builds a seed from a tag (`pure`, `heterodyne`, `homodyne_q`, `homodyne_p`).
pub fn seed(tag: &str, lambda: Option<f64>, phi: Option<f64>) -> Result<MeasurementSeed> {
    match tag {
        "pure" | "pure_single_mode" => {
            let lambda = lambda.ok_or_else(|| Error::InvalidArgument("pure seed needs lambda".into()))?;
            MeasurementSeed::pure(lambda, phi.unwrap_or(0.0))
        }
        "heterodyne" => Ok(MeasurementSeed::heterodyne()),
        "homodyne" | "homodyne_q" => Ok(MeasurementSeed::homodyne(Quadrature::Q)),
        "homodyne_p" => Ok(MeasurementSeed::homodyne(Quadrature::P)),
        other => invalid_arg(format!("unknown seed tag '{other}'")),
    }
}

/// Conditional state of the unmeasured modes after a Gaussian measurement:
/// `σ̃_A = σ_A − ε (σ_B + Γ)⁻¹ εᵀ`.
///
/// The result does not depend on the outcome; its first moments are set to zero.
/// The homodyne limit replaces the inverse by the inverse of the measured
/// quadrature block, padded with zeros.
pub fn condition(
    state: &GaussianState,
    measured: &[usize],
    seed: &MeasurementSeed,
) -> Result<GaussianState> {
    let n = state.n_modes();
    check_targets(measured, n)?;
    if measured.len() == n {
        return invalid_arg("cannot measure every mode: nothing is left to condition");
    }
    let kept: Vec<usize> = (0..n).filter(|k| !measured.contains(k)).collect();
    let ia = quadrature_indices(&kept);
    let ib = quadrature_indices(measured);
    let sigma = state.sigma();
    let sa = select(sigma, &ia);
    let sb = select(sigma, &ib);
    let eps = select_rect(sigma, &ia, &ib);

    let inv = match seed.kind {
        SeedKind::Homodyne(quad) => {
            let off = match quad {
                Quadrature::Q => 0,
                Quadrature::P => 1,
            };
            let sel: Vec<usize> = (0..measured.len()).map(|k| 2 * k + off).collect();
            let block = select(&sb, &sel);
            let block_inv = block
                .try_inverse()
                .ok_or_else(|| Error::Numeric("measured quadrature block is singular".into()))?;
            let mut full = RMat::zeros(ib.len(), ib.len());
            for (r, &gr) in sel.iter().enumerate() {
                for (c, &gc) in sel.iter().enumerate() {
                    full[(gr, gc)] = block_inv[(r, c)];
                }
            }
            full
        }
        _ => {
            let m = symmetrize(&(&sb + seed.full_gamma(measured.len())?));
            match m.cholesky() {
                Some(ch) => ch.inverse(),
                None => return numeric("σ_B + Γ is singular"),
            }
        }
    };
    let cond = symmetrize(&(sa - &eps * inv * eps.transpose()));
    GaussianState::new_unchecked(RVec::zeros(ia.len()), cond)
}
