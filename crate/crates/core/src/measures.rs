//! Entropies and correlation measures of Gaussian states. All values in nats.

use std::f64::consts::{LN_10, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, invalid_state, Error, Result};
use crate::linalg::{sym_eigen, symmetrize, RMat};
use crate::state::{two_mode_standard_form, GaussianState, ThreeModeStandardForm, TwoModeStandardForm};
use crate::symplectic::symplectic_spectrum;

/// Tolerance on `det σ − 1` for inputs that must be pure.
pub const PURE_TOL: f64 = 1e-6;

/// Symplectic eigenvalues below `1 + NU_SNAP` are treated as exactly 1.
pub const NU_SNAP: f64 = 1e-10;

pub fn nats_to_bits(x: f64) -> f64 {
    x / LN_2
}

fn spectrum(state: &GaussianState) -> Result<Vec<f64>> {
    Ok(symplectic_spectrum(state.sigma())?.nu)
}

/// `ln g_α(ν)` with `g_α(x) = 2^α / [(x+1)^α − (x−1)^α]`, in a form that is
/// stable for large `α` and `x`.
fn ln_g(alpha: f64, x: f64) -> f64 {
    let x = x.max(1.0);
    let ratio = (x - 1.0) / (x + 1.0);
    alpha * LN_2 - alpha * (x + 1.0).ln() - (-ratio.powf(alpha)).ln_1p()
}

/// Binary-entropy-like function `h(ν)` giving the von Neumann entropy per mode.
pub fn h_function(nu: f64) -> f64 {
    if nu <= 1.0 + 1e-15 {
        return 0.0;
    }
    let p = (nu + 1.0) / 2.0;
    let m = (nu - 1.0) / 2.0;
    p * p.ln() - m * m.ln()
}

/// Rényi-α entropy `Σ_k ln g_α(ν_k) / (1 − α)`. `α = 1` gives the von Neumann
/// entropy and `α = ∞` the min-entropy.
pub fn renyi_entropy(state: &GaussianState, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return invalid_arg(format!("Rényi order must be positive, got {alpha}"));
    }
    // ν within rounding of 1 would otherwise leak `(ν−1)^α` into small-α values
    let nu: Vec<f64> = spectrum(state)?
        .into_iter()
        .map(|v| if v < 1.0 + NU_SNAP { 1.0 } else { v })
        .collect();
    if alpha == 1.0 {
        return Ok(nu.iter().map(|&v| h_function(v)).sum());
    }
    if alpha.is_infinite() {
        return Ok(nu.iter().map(|&v| ((v.max(1.0) + 1.0) / 2.0).ln()).sum());
    }
    Ok(nu.iter().map(|&v| ln_g(alpha, v)).sum::<f64>() / (1.0 - alpha))
}

/// `S₂ = ½ ln det σ`.
pub fn renyi2_entropy(state: &GaussianState) -> f64 {
    0.5 * state.determinant().ln()
}

pub fn von_neumann_entropy(state: &GaussianState) -> Result<f64> {
    Ok(spectrum(state)?.iter().map(|&v| h_function(v)).sum())
}

fn require_two_modes(state: &GaussianState) -> Result<()> {
    if state.n_modes() != 2 {
        return invalid_arg(format!("expected a two-mode state, got {} modes", state.n_modes()));
    }
    Ok(())
}

/// `Υ = ½ [Var(q_A − q_B) + Var(p_A + p_B)]`.
pub fn epr_parameter(state: &GaussianState) -> Result<f64> {
    require_two_modes(state)?;
    let s = state.sigma();
    let vq = (s[(0, 0)] + s[(2, 2)] - 2.0 * s[(0, 2)]) / 2.0;
    let vp = (s[(1, 1)] + s[(3, 3)] + 2.0 * s[(1, 3)]) / 2.0;
    Ok(0.5 * (vq + vp))
}

/// Squeezing in decibels, `10 log₁₀ e^{2r}`.
pub fn squeezing_db(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return invalid_arg(format!("squeezing must be non-negative, got {r}"));
    }
    Ok(20.0 * r / LN_10)
}

/// Inverse of [`squeezing_db`].
pub fn squeezing_from_db(db: f64) -> Result<f64> {
    if !(db >= 0.0) {
        return invalid_arg(format!("decibel value must be non-negative, got {db}"));
    }
    Ok(db * LN_10 / 20.0)
}

/// Two disjoint, nonempty groups of modes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub modes_a: Vec<usize>,
    pub modes_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(modes_a: Vec<usize>, modes_b: Vec<usize>) -> Result<Self> {
        if modes_a.is_empty() || modes_b.is_empty() {
            return invalid_arg("both sides of a bipartition must be nonempty");
        }
        if let Some(m) = modes_a.iter().find(|m| modes_b.contains(m)) {
            return invalid_arg(format!("mode {m} appears on both sides"));
        }
        Ok(Self { modes_a, modes_b })
    }

    /// `{first}` versus everything else.
    pub fn single(first: usize, n_modes: usize) -> Result<Self> {
        Self::new(vec![first], (0..n_modes).filter(|&k| k != first).collect())
    }

    fn check_covers(&self, n_modes: usize) -> Result<()> {
        let mut all: Vec<usize> = self.modes_a.iter().chain(&self.modes_b).copied().collect();
        all.sort_unstable();
        let len = all.len();
        all.dedup();
        if all.len() != len {
            return invalid_arg("bipartition lists a mode twice");
        }
        if all != (0..n_modes).collect::<Vec<_>>() {
            return invalid_arg(format!("bipartition must cover all {n_modes} modes exactly"));
        }
        Ok(())
    }
}

/// `I₂ = ½ ln(det σ_A det σ_B / det σ_AB)`.
pub fn mutual_information_renyi2(state: &GaussianState, cut: &Bipartition) -> Result<f64> {
    cut.check_covers(state.n_modes())?;
    let da = state.reduced_det(&cut.modes_a)?;
    let db = state.reduced_det(&cut.modes_b)?;
    Ok(0.5 * (da * db / state.determinant()).ln())
}

/// Pure-state entanglement `½ ln det σ_A`.
pub fn entanglement_e2_pure(state: &GaussianState, cut: &Bipartition) -> Result<f64> {
    cut.check_covers(state.n_modes())?;
    let det = state.determinant();
    if (det - 1.0).abs() > PURE_TOL {
        return invalid_state(format!("state is not pure (det σ = {det})"));
    }
    Ok((0.5 * state.reduced_det(&cut.modes_a)?.ln()).max(0.0))
}

/// Optimizer location reported alongside a measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Optimizer {
    Theta { theta: f64 },
    Seed { lambda: f64, phi: f64 },
}

/// Which branch of a piecewise formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Separable state, value set to zero.
    Separable,
    /// `a = b`: the symmetric reduction of the m_θ function.
    Symmetric,
    /// Generic m_θ function.
    General,
    /// Optimal measurement is the homodyne limit `λ → 0`.
    Homodyne,
    /// Optimal measurement has finite `λ`.
    Interior,
    /// Uncorrelated measured mode (`b = 1`).
    Product,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serializable");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureResult {
    /// Value in nats.
    pub value: f64,
    pub optimizer: Option<Optimizer>,
    pub branch: Option<Branch>,
}

impl MeasureResult {
    pub fn plain(value: f64) -> Self {
        Self {
            value,
            optimizer: None,
            branch: None,
        }
    }
}

/// Smallest symplectic eigenvalue of the partially transposed covariance
/// (sign of `p_B` flipped).
pub fn partial_transpose_min_eigenvalue(state: &GaussianState) -> Result<f64> {
    require_two_modes(state)?;
    let mut p = RMat::identity(4, 4);
    p[(3, 3)] = -1.0;
    let pt = &p * state.sigma() * &p;
    Ok(symplectic_spectrum(&pt)?.min())
}

/// Positivity of the partial transpose; exact for two modes.
pub fn is_separable(state: &GaussianState) -> Result<bool> {
    Ok(partial_transpose_min_eigenvalue(state)? >= 1.0 - 1e-9)
}

/// `m_θ(a, b, c₊, c₋)`, evaluated in complex arithmetic. Its infimum over θ
/// matches the convex roof for pure states and for symmetric states with
/// `c₊ = −c₋`; on other mixed states it falls below it, so
/// [`entanglement_e2_two_mode`] does not use it.
pub fn m_theta(f: &TwoModeStandardForm, theta: f64) -> Complex64 {
    let (a, b, cp, cm) = (f.a, f.b, f.c_plus, f.c_minus);
    let (st, ct) = theta.sin_cos();
    let d = a * b - cm * cm;
    let c = |x: f64| Complex64::new(x, 0.0);
    if (a - b).abs() <= 1e-9 * (a + b) {
        let a = 0.5 * (a + b);
        let u = 1.0 - d;
        let sq = a * u.abs();
        let ratio = 2.0 * a * (cp + cm) * u.signum();
        let num = (cp * d - cm + ct * sq).powi(2);
        let den = 2.0 * d * (2.0 * a * a + 2.0 * cp * cm) - ct * ratio;
        return c(1.0 + num / den);
    }
    let q = c((a - b * d) * (b - a * d));
    let sq = q.sqrt();
    let nn = 2.0 * a * b * cm.powi(3) + (a * a + b * b) * cp * cm * cm
        + ((1.0 - 2.0 * b * b) * a * a + b * b) * cm
        - a * b * (a * a + b * b - 2.0) * cp;
    let num = (c(cp * d - cm) + sq * ct).powi(2);
    let inner = (c(1.0) - c((cp * d + cm).powi(2)) / q).sqrt();
    let den = c(2.0 * d * (a * a + b * b + 2.0 * cp * cm)) + inner * (st * (a * a - b * b)) - c(nn) * ct / sq;
    c(1.0) + num / den
}

fn m_real(f: &TwoModeStandardForm, theta: f64) -> Option<f64> {
    let m = m_theta(f, theta);
    (m.re.is_finite() && m.im.abs() <= 1e-9 * (1.0 + m.re.abs())).then_some(m.re)
}

/// Golden-section minimisation of `g` on `[lo, hi]`.
pub(crate) fn golden_min(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    for _ in 0..200 {
        if (hi - lo).abs() < tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = g(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `inf_θ m_θ` by a 720-point scan followed by golden-section refinement.
pub fn minimize_m_theta(f: &TwoModeStandardForm) -> Option<(f64, f64)> {
    const SCAN: usize = 720;
    let step = 2.0 * PI / SCAN as f64;
    let mut best: Option<(f64, f64)> = None;
    for i in 0..SCAN {
        let th = i as f64 * step;
        if let Some(v) = m_real(f, th) {
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((th, v));
            }
        }
    }
    let (th0, v0) = best?;
    let g = |t: f64| m_real(f, t).unwrap_or(f64::INFINITY);
    let (th, v) = golden_min(g, th0 - step, th0 + step, 1e-12);
    Some(if v < v0 { (th.rem_euclid(2.0 * PI), v) } else { (th0, v0) })
}

/// `det σ_A` of the pure state selected by angle `phi` on the boundary of the
/// set of pure states below `σ`.
///
/// For a standard form the optimal pure state has no q-p correlations, so it is
/// fixed by a 2×2 matrix `Y` (its p block; the q block is `Y⁻¹`) subject to
/// `σ_q⁻¹ ≤ Y ≤ σ_p`. Then `det σ_A = 1/(1 − ρ²)` with `ρ` the correlation
/// coefficient of `Y`. The minimum sits where both bounds touch, i.e.
/// `Y = σ_q⁻¹ + D^½ v vᵀ D^½` with `D = σ_p − σ_q⁻¹` and `v = (cos φ, sin φ)`.
/// Returns `ρ²`, which keeps precision for weakly entangled states.
fn touching_rho2(lower: &RMat, dh: &RMat, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let w = dh * nalgebra::Vector2::new(c, s);
    let y = lower + &w * w.transpose();
    y[(0, 1)].powi(2) / (y[(0, 0)] * y[(1, 1)])
}

/// Minimises the pure-state marginal determinant over pure states below the
/// standard form `f`. Returns `(phi, ln m)`.
pub fn minimize_pure_marginal(f: &TwoModeStandardForm) -> Result<(f64, f64)> {
    let sq = RMat::from_row_slice(2, 2, &[f.a, f.c_plus, f.c_plus, f.b]);
    let lower = sq
        .try_inverse()
        .ok_or_else(|| Error::Numeric("singular q block in standard form".into()))?;
    let upper = RMat::from_row_slice(2, 2, &[f.a, f.c_minus, f.c_minus, f.b]);
    let gap = symmetrize(&(&upper - &lower));
    let (vals, vecs) = sym_eigen(&gap);
    if vals[0] < -1e-8 * (1.0 + vals[1].abs()) {
        return invalid_state("standard form violates the uncertainty relation");
    }
    let root = RMat::from_diagonal(&vals.map(|v| v.max(0.0).sqrt()));
    let dh = &vecs * root * vecs.transpose();
    const SCAN: usize = 720;
    let step = PI / SCAN as f64;
    let g = |phi: f64| touching_rho2(&lower, &dh, phi);
    let (mut phi0, mut v0) = (0.0, f64::INFINITY);
    for i in 0..SCAN {
        let phi = i as f64 * step;
        let v = g(phi);
        if v < v0 {
            (phi0, v0) = (phi, v);
        }
    }
    let (phi, v) = golden_min(g, phi0 - step, phi0 + step, 1e-13);
    let (phi, rho2) = if v < v0 { (phi.rem_euclid(PI), v) } else { (phi0, v0) };
    Ok((phi, -(-rho2.min(1.0 - 1e-16)).ln_1p()))
}

/// Rényi-2 Gaussian entanglement of a two-mode state. Reduces to standard form
/// and minimises the marginal determinant over pure states below `σ`; the
/// reported optimizer is the touching angle. See [`m_theta`] for the
/// closed-form curve, which agrees on pure states and on symmetric states with
/// `c₊ = −c₋`.
pub fn entanglement_e2_two_mode(state: &GaussianState) -> Result<MeasureResult> {
    require_two_modes(state)?;
    if is_separable(state)? {
        return Ok(MeasureResult {
            value: 0.0,
            optimizer: None,
            branch: Some(Branch::Separable),
        });
    }
    let f = two_mode_standard_form(state)?;
    let branch = if (f.a - f.b).abs() <= 1e-9 * (f.a + f.b) {
        Branch::Symmetric
    } else {
        Branch::General
    };
    let (theta, ln_m) = minimize_pure_marginal(&f)?;
    Ok(MeasureResult {
        value: (0.5 * ln_m).max(0.0),
        optimizer: Some(Optimizer::Theta { theta }),
        branch: Some(branch),
    })
}

/// Which party is measured in one-way measures: `AB` means `A|B` (B measured).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "A|B")]
    AB,
    #[serde(rename = "B|A")]
    BA,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A|B" | "AB" | "A" => Ok(Direction::AB),
            "B|A" | "BA" | "B" => Ok(Direction::BA),
            other => invalid_arg(format!("unknown direction '{other}', use A|B or B|A")),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AB => "A|B",
            Direction::BA => "B|A",
        })
    }
}

/// Determinant of the conditional covariance of A after a pure single-mode
/// measurement `(λ, φ)` on B, for a standard form.
pub fn conditional_det(f: &TwoModeStandardForm, lambda: f64, phi: f64) -> f64 {
    let (a, b, cp, cm) = (f.a, f.b, f.c_plus, f.c_minus);
    let (cp2, cm2) = (cp * cp, cm * cm);
    let num = 2.0 * a * a * (b + lambda) * (1.0 + b * lambda)
        - a * (cp2 + cm2) * (2.0 * b * lambda + lambda * lambda + 1.0)
        + 2.0 * cp2 * cm2 * lambda
        + a * (cp2 - cm2) * (lambda * lambda - 1.0) * (2.0 * phi).cos();
    num / (2.0 * (b + lambda) * (1.0 + b * lambda))
}

/// Closed-form `inf_{λ,φ} det σ̃_A` with its branch.
pub fn min_conditional_det(f: &TwoModeStandardForm) -> (f64, Branch) {
    let (a, b, cp, cm) = (f.a, f.b, f.c_plus, f.c_minus);
    let (cp2, cm2) = (cp * cp, cm * cm);
    if (b * b - 1.0).abs() <= 1e-12 {
        return (a * a, Branch::Product);
    }
    let cond = (a * b * b * cm2 - cp2 * (a + b * cm2)) * (a * b * b * cp2 - cm2 * (a + b * cp2));
    if cond < 0.0 {
        return (a * (a - cp2 / b), Branch::Homodyne);
    }
    let xm = a * (b * b - 1.0) - b * cm2;
    let xp = a * (b * b - 1.0) - b * cp2;
    let x = xm * xp;
    let v = (2.0 * (cm * cp).abs() * x.max(0.0).sqrt() + x + cm2 * cp2) / (b * b - 1.0).powi(2);
    (v, Branch::Interior)
}

fn oriented(f: TwoModeStandardForm, dir: Direction) -> TwoModeStandardForm {
    match dir {
        Direction::AB => f,
        Direction::BA => TwoModeStandardForm {
            a: f.b,
            b: f.a,
            ..f
        },
    }
}

/// Locates the interior optimum `(λ, φ)`; the determinant is linear in `cos 2φ`
/// so `φ ∈ {0, π/2}` and only `λ` needs a search.
fn interior_seed(f: &TwoModeStandardForm) -> (f64, f64) {
    let mut best = (1.0, 0.0, f64::INFINITY);
    for phi in [0.0, PI / 2.0] {
        let g = |t: f64| conditional_det(f, t.exp(), phi);
        let (t, v) = golden_min(g, -30.0, 30.0, 1e-10);
        if v < best.2 {
            best = (t.exp(), phi, v);
        }
    }
    (best.0, best.1)
}

/// Rényi-2 one-way classical correlations `J₂(A|B) = ln a − ½ ln inf det σ̃_A`.
pub fn classical_correlations_j2(state: &GaussianState, dir: Direction) -> Result<MeasureResult> {
    require_two_modes(state)?;
    let f = oriented(two_mode_standard_form(state)?, dir);
    let (inf, branch) = min_conditional_det(&f);
    let optimizer = match branch {
        Branch::Interior => {
            let (lambda, phi) = interior_seed(&f);
            Some(Optimizer::Seed { lambda, phi })
        }
        _ => None,
    };
    Ok(MeasureResult {
        value: f.a.ln() - 0.5 * inf.ln(),
        optimizer,
        branch: Some(branch),
    })
}

/// Rényi-2 discord `D₂(A|B) = ln b − ½ ln det σ_AB + ½ ln inf det σ̃_A`.
pub fn discord_d2(state: &GaussianState, dir: Direction) -> Result<MeasureResult> {
    require_two_modes(state)?;
    let f = oriented(two_mode_standard_form(state)?, dir);
    let (inf, branch) = min_conditional_det(&f);
    Ok(MeasureResult {
        value: f.b.ln() - 0.5 * state.determinant().ln() + 0.5 * inf.ln(),
        optimizer: None,
        branch: Some(branch),
    })
}

/// `β` of the three-mode pure standard form (not the Bogoliubov block).
pub fn three_mode_beta(a: [f64; 3]) -> f64 {
    let s2: f64 = a.iter().map(|x| x * x).sum();
    let s4: f64 = a.iter().map(|x| x.powi(4)).sum();
    let pairs = a[0] * a[0] * a[1] * a[1] + a[0] * a[0] * a[2] * a[2] + a[1] * a[1] * a[2] * a[2];
    let mut delta = 1.0;
    for mu in [1.0, -1.0] {
        for nu in [1.0, -1.0] {
            delta *= (a[0] + mu * a[1] + nu * a[2]).powi(2) - 1.0;
        }
    }
    2.0 * s2 + 2.0 * pairs - s4 - delta.max(0.0).sqrt() - 1.0
}

/// Threshold `α_k` separating the two entangled branches of `g_k`.
pub fn three_mode_alpha(ai: f64, aj: f64) -> f64 {
    let s = ai * ai + aj * aj;
    let d = ai * ai - aj * aj;
    ((2.0 * s + d * d + d.abs() * (d * d + 8.0 * s).sqrt()) / (2.0 * s)).sqrt()
}

/// `g_k`: `E₂(i:j) = ½ ln g_k` for the reduced pair of a pure three-mode state.
pub fn three_mode_g(ai: f64, aj: f64, ak: f64) -> f64 {
    if (ak - 1.0).abs() <= 1e-9 {
        // mode k decouples and (i, j) is a pure two-mode state
        return (ai * aj).max(1.0);
    }
    let g = if ak >= (ai * ai + aj * aj - 1.0).sqrt() {
        1.0
    } else if ak > three_mode_alpha(ai, aj) {
        three_mode_beta([ai, aj, ak]) / (8.0 * ak * ak)
    } else {
        ((ai * ai - aj * aj) / (ak * ak - 1.0)).powi(2)
    };
    g.max(1.0)
}

/// Entanglement between modes `i` and `j` of the pure three-mode state with
/// local parameters `(a_i, a_j, a_k)`.
pub fn three_mode_reduced_e2(ai: f64, aj: f64, ak: f64) -> Result<f64> {
    ThreeModeStandardForm::new(ai, aj, ak)?;
    Ok(0.5 * three_mode_g(ai, aj, ak).ln())
}

fn three_mode_locals(state: &GaussianState) -> Result<[f64; 3]> {
    if state.n_modes() != 3 {
        return invalid_arg("expected a three-mode state");
    }
    let det = state.determinant();
    if (det - 1.0).abs() > PURE_TOL {
        return invalid_state(format!("state is not pure (det σ = {det})"));
    }
    let mut a = [0.0; 3];
    for (k, slot) in a.iter_mut().enumerate() {
        *slot = state.reduced_det(&[k])?.sqrt();
    }
    Ok(a)
}

/// Residual tripartite entanglement `½ ln(a_i² / (g_k g_j))` with focus `i`.
pub fn residual_tripartite_e2(state: &GaussianState, focus: usize) -> Result<f64> {
    let a = three_mode_locals(state)?;
    if focus > 2 {
        return invalid_arg(format!("focus mode {focus} out of range"));
    }
    let (j, k) = ((focus + 1) % 3, (focus + 2) % 3);
    let gk = three_mode_g(a[focus], a[j], a[k]);
    let gj = three_mode_g(a[focus], a[k], a[j]);
    Ok(0.5 * (a[focus] * a[focus] / (gk * gj)).ln())
}

/// `½ ln(det σ_AB det σ_BC / (det σ_ABC det σ_B))`, non-negative by strong subadditivity.
pub fn check_strong_subadditivity(state: &GaussianState, groups: [&[usize]; 3]) -> Result<f64> {
    let n = state.n_modes();
    let mut all: Vec<usize> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    if groups.iter().any(|g| g.is_empty()) {
        return invalid_arg("every group must be nonempty");
    }
    all.sort_unstable();
    if all != (0..n).collect::<Vec<_>>() {
        return invalid_arg(format!("groups must partition all {n} modes"));
    }
    let [a, b, c] = groups;
    let ab: Vec<usize> = a.iter().chain(b).copied().collect();
    let bc: Vec<usize> = b.iter().chain(c).copied().collect();
    let d_ab = state.reduced_det(&ab)?;
    let d_bc = state.reduced_det(&bc)?;
    let d_b = state.reduced_det(b)?;
    Ok(0.5 * (d_ab * d_bc / (state.determinant() * d_b)).ln())
}

/// Monogamy residual `E₂(focus : rest) − Σ_j E₂(focus : j)` for a pure state
/// with single-mode parties.
pub fn check_monogamy(state: &GaussianState, focus: usize) -> Result<f64> {
    let n = state.n_modes();
    if focus >= n {
        return invalid_arg(format!("focus mode {focus} out of range"));
    }
    if n < 2 {
        return invalid_arg("monogamy needs at least two modes");
    }
    let det = state.determinant();
    if (det - 1.0).abs() > PURE_TOL {
        return invalid_state(format!("monogamy check needs a pure state (det σ = {det})"));
    }
    let global = entanglement_e2_pure(state, &Bipartition::single(focus, n)?)?;
    let mut pairs = 0.0;
    for j in (0..n).filter(|&j| j != focus) {
        pairs += entanglement_e2_two_mode(&state.partial_trace(&[focus, j])?)?.value;
    }
    Ok(global - pairs)
}
