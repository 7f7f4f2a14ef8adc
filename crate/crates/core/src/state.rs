//! Gaussian states described by first moments and covariance matrix.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, invalid_state, Result};
use crate::linalg::{
    herm_eigen, is_symmetric, max_abs, quadrature_indices, rotation, select, select_rect,
    sqrt_and_inv_sqrt, CMat, RMat, RVec,
};
use crate::symplectic::{
    omega, symplectic_from_hamiltonian, symplectic_spectrum, QuadraticHamiltonian,
    SymplecticSpectrum,
};

/// Default tolerance used by constructors when checking physicality.
pub const PHYSICAL_TOL: f64 = 1e-9;

/// An N-mode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    d: RVec,
    sigma: RMat,
}

fn check_shapes(d: &RVec, sigma: &RMat) -> Result<()> {
    if sigma.nrows() == 0 || !sigma.is_square() || sigma.nrows() % 2 != 0 {
        return invalid_arg(format!(
            "covariance must be square with even positive dimension, got {}x{}",
            sigma.nrows(),
            sigma.ncols()
        ));
    }
    if d.len() != sigma.nrows() {
        return invalid_arg(format!(
            "first-moment vector has length {}, expected {}",
            d.len(),
            sigma.nrows()
        ));
    }
    if d.iter().chain(sigma.iter()).any(|x| !x.is_finite()) {
        return invalid_arg("state contains non-finite entries");
    }
    if !is_symmetric(sigma, 1e-9 * (1.0 + max_abs(sigma))) {
        return invalid_arg("covariance matrix is not symmetric");
    }
    Ok(())
}

impl GaussianState {
    /// Builds a state, rejecting asymmetric or unphysical covariance matrices.
    pub fn new(d: RVec, sigma: RMat) -> Result<Self> {
        let state = Self::new_unchecked(d, sigma)?;
        if !state.is_physical(PHYSICAL_TOL) {
            return invalid_state("covariance matrix violates the uncertainty principle");
        }
        Ok(state)
    }

    /// Builds a state checking only shapes and symmetry.
    pub fn new_unchecked(d: RVec, sigma: RMat) -> Result<Self> {
        check_shapes(&d, &sigma)?;
        let sigma = crate::linalg::symmetrize(&sigma);
        Ok(Self { d, sigma })
    }

    /// Zero-mean state with the given covariance.
    pub fn from_covariance(sigma: RMat) -> Result<Self> {
        let d = RVec::zeros(sigma.nrows());
        Self::new(d, sigma)
    }

    pub fn n_modes(&self) -> usize {
        self.sigma.nrows() / 2
    }

    pub fn d(&self) -> &RVec {
        &self.d
    }

    pub fn sigma(&self) -> &RMat {
        &self.sigma
    }

    pub fn into_parts(self) -> (RVec, RMat) {
        (self.d, self.sigma)
    }

    /// Uncertainty principle `σ + iΩ ⪰ 0` with the given slack.
    pub fn is_physical(&self, tol: f64) -> bool {
        let n = self.n_modes();
        let m = CMat::from_fn(2 * n, 2 * n, |r, c| {
            Complex64::new(self.sigma[(r, c)], 0.0)
        }) + omega(n).map(|x| Complex64::new(0.0, x));
        let (vals, _) = herm_eigen(&m);
        vals[0] >= -tol
    }

    pub fn determinant(&self) -> f64 {
        self.sigma.determinant()
    }

    /// Purity `1/√det σ`.
    pub fn purity(&self) -> Result<f64> {
        let det = self.determinant();
        if det < 1.0 - 1e-9 {
            return invalid_state(format!("det σ = {det} is below 1"));
        }
        Ok(1.0 / det.sqrt())
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.determinant() - 1.0).abs() <= tol
    }

    /// Mean photon number of each mode, `(Tr σ_k − 2)/4 + ‖d_k‖²/2`.
    pub fn mean_photon_numbers(&self) -> Vec<f64> {
        (0..self.n_modes())
            .map(|k| {
                let tr = self.sigma[(2 * k, 2 * k)] + self.sigma[(2 * k + 1, 2 * k + 1)];
                let d2 = self.d[2 * k].powi(2) + self.d[2 * k + 1].powi(2);
                (tr - 2.0) / 4.0 + d2 / 2.0
            })
            .collect()
    }

    pub fn spectrum(&self) -> Result<SymplecticSpectrum> {
        symplectic_spectrum(&self.sigma)
    }

    fn check_modes(&self, modes: &[usize]) -> Result<()> {
        if modes.is_empty() {
            return invalid_arg("mode list is empty");
        }
        for (i, &m) in modes.iter().enumerate() {
            if m >= self.n_modes() {
                return invalid_arg(format!(
                    "mode index {m} out of range for a {}-mode state",
                    self.n_modes()
                ));
            }
            if modes[..i].contains(&m) {
                return invalid_arg(format!("mode index {m} listed twice"));
            }
        }
        Ok(())
    }

    /// Reduced state on `keep`, in the order given.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<GaussianState> {
        self.check_modes(keep)?;
        let idx = quadrature_indices(keep);
        Ok(GaussianState {
            d: RVec::from_iterator(idx.len(), idx.iter().map(|&i| self.d[i])),
            sigma: select(&self.sigma, &idx),
        })
    }

    /// Covariance block between two mode groups.
    pub fn correlation_block(&self, rows: &[usize], cols: &[usize]) -> Result<RMat> {
        self.check_modes(rows)?;
        self.check_modes(cols)?;
        Ok(select_rect(
            &self.sigma,
            &quadrature_indices(rows),
            &quadrature_indices(cols),
        ))
    }

    /// Covariance determinant of the reduced state on `modes`.
    pub fn reduced_det(&self, modes: &[usize]) -> Result<f64> {
        Ok(self.partial_trace(modes)?.determinant())
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let (n1, n2) = (self.sigma.nrows(), other.sigma.nrows());
        let mut sigma = RMat::zeros(n1 + n2, n1 + n2);
        sigma.view_mut((0, 0), (n1, n1)).copy_from(&self.sigma);
        sigma.view_mut((n1, n1), (n2, n2)).copy_from(&other.sigma);
        let d = RVec::from_iterator(n1 + n2, self.d.iter().chain(other.d.iter()).copied());
        GaussianState { d, sigma }
    }

    /// Same covariance with zero first moments.
    pub fn centered(&self) -> GaussianState {
        GaussianState {
            d: RVec::zeros(self.d.len()),
            sigma: self.sigma.clone(),
        }
    }
}

pub fn vacuum(n_modes: usize) -> Result<GaussianState> {
    if n_modes == 0 {
        return invalid_arg("vacuum needs at least one mode");
    }
    Ok(GaussianState {
        d: RVec::zeros(2 * n_modes),
        sigma: RMat::identity(2 * n_modes, 2 * n_modes),
    })
}

/// Product of coherent states, `d_k = √2 (Re α_k, Im α_k)`.
pub fn coherent(alphas: &[Complex64]) -> Result<GaussianState> {
    if alphas.is_empty() {
        return invalid_arg("coherent state needs at least one amplitude");
    }
    let s2 = std::f64::consts::SQRT_2;
    let d = RVec::from_iterator(
        2 * alphas.len(),
        alphas.iter().flat_map(|a| [s2 * a.re, s2 * a.im]),
    );
    Ok(GaussianState {
        d,
        sigma: RMat::identity(2 * alphas.len(), 2 * alphas.len()),
    })
}

/// Product of thermal states, `σ = ⊕ (2n̄_k + 1) I₂`.
pub fn thermal(nbars: &[f64]) -> Result<GaussianState> {
    if nbars.is_empty() {
        return invalid_arg("thermal state needs at least one mode");
    }
    if let Some(bad) = nbars.iter().find(|n| !(**n >= 0.0) || !n.is_finite()) {
        return invalid_arg(format!("mean photon number must be non-negative, got {bad}"));
    }
    let diag = RVec::from_iterator(
        2 * nbars.len(),
        nbars.iter().flat_map(|n| [2.0 * n + 1.0, 2.0 * n + 1.0]),
    );
    Ok(GaussianState {
        d: RVec::zeros(2 * nbars.len()),
        sigma: RMat::from_diagonal(&diag),
    })
}

/// Pure single-mode squeezed coherent state.
pub fn squeezed(alpha: Complex64, s: f64, theta: f64) -> Result<GaussianState> {
    if !(s >= 0.0) || !s.is_finite() {
        return invalid_arg(format!("squeezing must be non-negative, got {s}"));
    }
    let (ch, sh) = ((2.0 * s).cosh(), (2.0 * s).sinh());
    let (st, ct) = theta.sin_cos();
    let sigma = RMat::from_row_slice(2, 2, &[ch + ct * sh, st * sh, st * sh, ch - ct * sh]);
    let s2 = std::f64::consts::SQRT_2;
    Ok(GaussianState {
        d: RVec::from_vec(vec![s2 * alpha.re, s2 * alpha.im]),
        sigma,
    })
}

/// Two-mode squeezed vacuum with squeezing `r`.
pub fn two_mode_squeezed(r: f64) -> Result<GaussianState> {
    if !r.is_finite() {
        return invalid_arg("squeezing must be finite");
    }
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    #[rustfmt::skip]
    let sigma = RMat::from_row_slice(4, 4, &[
        c, 0.0, s, 0.0,
        0.0, c, 0.0, -s,
        s, 0.0, c, 0.0,
        0.0, -s, 0.0, c,
    ]);
    Ok(GaussianState {
        d: RVec::zeros(4),
        sigma,
    })
}

/// Local symplectic invariants of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticInvariants {
    /// `det σ_A`
    pub i1: f64,
    /// `det σ_B`
    pub i2: f64,
    /// `det ε_AB`
    pub i3: f64,
    /// `det σ_AB`
    pub i4: f64,
}

fn require_two_modes(state: &GaussianState) -> Result<()> {
    if state.n_modes() != 2 {
        return invalid_arg(format!(
            "expected a two-mode state, got {} modes",
            state.n_modes()
        ));
    }
    Ok(())
}

pub fn symplectic_invariants(state: &GaussianState) -> Result<SymplecticInvariants> {
    require_two_modes(state)?;
    let s = state.sigma();
    let det2 = |r: usize, c: usize| s[(r, c)] * s[(r + 1, c + 1)] - s[(r, c + 1)] * s[(r + 1, c)];
    Ok(SymplecticInvariants {
        i1: det2(0, 0),
        i2: det2(2, 2),
        i3: det2(0, 2),
        i4: s.determinant(),
    })
}

/// Two-mode standard form `σ = [[a I, diag(c₊, c₋)], [diag(c₊, c₋), b I]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoModeStandardForm {
    pub a: f64,
    pub b: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

impl TwoModeStandardForm {
    /// Validated constructor: requires `c₊ ≥ |c₋|` and a physical covariance.
    pub fn new(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Result<Self> {
        let f = Self {
            a,
            b,
            c_plus,
            c_minus,
        };
        if !(c_plus >= c_minus.abs() - 1e-12) {
            return invalid_arg(format!(
                "standard form needs c₊ ≥ |c₋|, got c₊={c_plus}, c₋={c_minus}"
            ));
        }
        if !f.is_physical(PHYSICAL_TOL) {
            return invalid_state(format!(
                "standard form ({a}, {b}, {c_plus}, {c_minus}) is not physical"
            ));
        }
        Ok(f)
    }

    pub fn covariance(&self) -> RMat {
        let (a, b, cp, cm) = (self.a, self.b, self.c_plus, self.c_minus);
        #[rustfmt::skip]
        let m = RMat::from_row_slice(4, 4, &[
            a, 0.0, cp, 0.0,
            0.0, a, 0.0, cm,
            cp, 0.0, b, 0.0,
            0.0, cm, 0.0, b,
        ]);
        m
    }

    pub fn state(&self) -> GaussianState {
        GaussianState {
            d: RVec::zeros(4),
            sigma: self.covariance(),
        }
    }

    pub fn invariants(&self) -> SymplecticInvariants {
        let ab = self.a * self.b;
        SymplecticInvariants {
            i1: self.a * self.a,
            i2: self.b * self.b,
            i3: self.c_plus * self.c_minus,
            i4: (ab - self.c_plus * self.c_plus) * (ab - self.c_minus * self.c_minus),
        }
    }

    /// Physicality: `a, b ≥ 1`, `det σ ≥ 1` and `a² + b² + 2c₊c₋ ≤ 1 + det σ`.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.a >= 1.0 - tol && self.b >= 1.0 - tol && self.state().is_physical(tol)
    }

    /// Recovers the standard form from the four invariants.
    ///
    /// With `I₄ = (ab − c₊²)(ab − c₋²)` and `I₃ = c₊c₋`, the squares `c₊²`, `c₋²`
    /// are the roots of `t² − w t + I₃² = 0`, `w = (a²b² + I₃² − I₄)/(ab)`.
    pub fn from_invariants(inv: &SymplecticInvariants) -> Result<Self> {
        if !(inv.i1 > 0.0 && inv.i2 > 0.0) {
            return invalid_state("local determinants must be positive");
        }
        let a = inv.i1.sqrt();
        let b = inv.i2.sqrt();
        let ab = a * b;
        let w = (ab * ab + inv.i3 * inv.i3 - inv.i4) / ab;
        let disc = (w * w - 4.0 * inv.i3 * inv.i3).max(0.0);
        let big = ((w + disc.sqrt()) / 2.0).max(0.0);
        let small = if big > 0.0 {
            // product of the roots is I₃², more accurate than the difference
            (inv.i3 * inv.i3 / big).min(big)
        } else {
            0.0
        };
        let c_plus = big.sqrt();
        let c_minus = if inv.i3 < 0.0 { -small.sqrt() } else if inv.i3 > 0.0 { small.sqrt() } else { 0.0 };
        Ok(Self {
            a,
            b,
            c_plus,
            c_minus,
        })
    }
}

/// Standard form of a physical two-mode state. Computed by [`local_reduction`];
/// the invariant route ([`TwoModeStandardForm::from_invariants`]) loses
/// precision when `c₊ ≈ |c₋|`.
pub fn two_mode_standard_form(state: &GaussianState) -> Result<TwoModeStandardForm> {
    require_two_modes(state)?;
    if !state.is_physical(PHYSICAL_TOL) {
        return invalid_state("two-mode state is not physical");
    }
    Ok(local_reduction(state)?.1)
}

/// Explicit local symplectic `S_A ⊕ S_B` bringing a two-mode covariance to
/// standard form: `S σ Sᵀ = standard form`.
///
/// Each local block is normalised by `√a σ_A^{-1/2}`, then rotations from the
/// singular value decomposition of the correlation block diagonalise it.
pub fn local_reduction(state: &GaussianState) -> Result<(RMat, TwoModeStandardForm)> {
    require_two_modes(state)?;
    let s = state.sigma();
    let sa = s.view((0, 0), (2, 2)).into_owned();
    let sb = s.view((2, 2), (2, 2)).into_owned();
    let eps = s.view((0, 2), (2, 2)).into_owned();
    let a = sa.determinant().sqrt();
    let b = sb.determinant().sqrt();
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return invalid_state("local covariance blocks are not positive definite");
    }
    let ka = sqrt_and_inv_sqrt(&sa)?.1 * a.sqrt();
    let kb = sqrt_and_inv_sqrt(&sb)?.1 * b.sqrt();
    let e1 = &ka * eps * kb.transpose();
    let svd = e1.svd(true, true);
    let mut u = svd.u.expect("requested U");
    let mut vt = svd.v_t.expect("requested Vᵀ");
    let mut sv = [svd.singular_values[0], svd.singular_values[1]];
    if u.determinant() < 0.0 {
        u.column_mut(1).neg_mut();
        sv[1] = -sv[1];
    }
    if vt.determinant() < 0.0 {
        vt.row_mut(1).neg_mut();
        sv[1] = -sv[1];
    }
    let mut ra = u.transpose();
    let mut rb = vt;
    let (mut cp, mut cm) = (sv[0], sv[1]);
    if cm.abs() > cp.abs() {
        let q = rotation(std::f64::consts::FRAC_PI_2);
        ra = &q * ra;
        rb = &q * rb;
        std::mem::swap(&mut cp, &mut cm);
    }
    if cp < 0.0 {
        ra = -ra;
        cp = -cp;
        cm = -cm;
    }
    let la = ra * ka;
    let lb = rb * kb;
    let mut local = RMat::zeros(4, 4);
    local.view_mut((0, 0), (2, 2)).copy_from(&la);
    local.view_mut((2, 2), (2, 2)).copy_from(&lb);
    Ok((
        local,
        TwoModeStandardForm {
            a,
            b,
            c_plus: cp,
            c_minus: cm,
        },
    ))
}

/// Pure three-mode standard form with local parameters `a₁, a₂, a₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeModeStandardForm {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl ThreeModeStandardForm {
    /// Checks `|a_j − a_k| + 1 ≤ a_i ≤ a_j + a_k − 1` for every permutation.
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let a = [a1, a2, a3];
        if a.iter().any(|x| !x.is_finite() || *x < 1.0 - 1e-12) {
            return invalid_arg(format!("local parameters must be ≥ 1, got {a:?}"));
        }
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let lo = (a[j] - a[k]).abs() + 1.0;
            let hi = a[j] + a[k] - 1.0;
            let slack = 1e-12 * (1.0 + a[i]);
            if a[i] < lo - slack || a[i] > hi + slack {
                return invalid_state(format!(
                    "triangle condition fails for (i, j, k) = ({}, {}, {}): need {lo} ≤ a_{} = {} ≤ {hi}",
                    i + 1,
                    j + 1,
                    k + 1,
                    i + 1,
                    a[i]
                ));
            }
        }
        Ok(Self { a1, a2, a3 })
    }

    pub fn locals(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    /// Correlation coefficients `(c_i⁺, c_i⁻)` for `i = 1, 2, 3`; the pair for
    /// `i` sits in the block joining the other two modes.
    pub fn correlations(&self) -> [(f64, f64); 3] {
        let a = self.locals();
        let clamp = |x: f64, scale: f64| {
            if x < 0.0 && x > -1e-12 * scale.max(1.0) {
                0.0
            } else {
                x.max(0.0)
            }
        };
        let mut out = [(0.0, 0.0); 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let (ai, aj, ak) = (a[i], a[j], a[k]);
            let dm = (aj - ak).powi(2);
            let dp = (aj + ak).powi(2);
            let scale = (ai + 1.0).powi(2) * dp;
            let r1 = clamp(((ai - 1.0).powi(2) - dm) * ((ai + 1.0).powi(2) - dm), scale).sqrt();
            let r2 = clamp(((ai - 1.0).powi(2) - dp) * ((ai + 1.0).powi(2) - dp), scale).sqrt();
            let den = 4.0 * (aj * ak).sqrt();
            out[i] = ((r1 + r2) / den, (r1 - r2) / den);
        }
        out
    }

    pub fn covariance(&self) -> RMat {
        let a = self.locals();
        let c = self.correlations();
        let mut m = RMat::zeros(6, 6);
        for (i, &ai) in a.iter().enumerate() {
            m[(2 * i, 2 * i)] = ai;
            m[(2 * i + 1, 2 * i + 1)] = ai;
        }
        // block (i, j) carries the coefficients labelled by the third mode
        for (i, j, label) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let (cp, cm) = c[label];
            m[(2 * i, 2 * j)] = cp;
            m[(2 * j, 2 * i)] = cp;
            m[(2 * i + 1, 2 * j + 1)] = cm;
            m[(2 * j + 1, 2 * i + 1)] = cm;
        }
        m
    }

    pub fn state(&self) -> GaussianState {
        GaussianState {
            d: RVec::zeros(6),
            sigma: self.covariance(),
        }
    }
}

pub fn three_mode_pure(a1: f64, a2: f64, a3: f64) -> Result<GaussianState> {
    Ok(ThreeModeStandardForm::new(a1, a2, a3)?.state())
}

/// Whether a random state is drawn pure or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PurityClass {
    Pure,
    Mixed,
}

/// Random quadratic Hamiltonian with Gaussian entries scaled by `1/√N`.
pub fn random_hamiltonian<R: Rng + ?Sized>(n_modes: usize, rng: &mut R) -> QuadraticHamiltonian {
    let scale = 1.0 / (n_modes as f64).sqrt();
    let draw = |rng: &mut R| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im) * scale
    };
    let a = CMat::from_fn(n_modes, n_modes, |_, _| draw(rng));
    let b = CMat::from_fn(n_modes, n_modes, |_, _| draw(rng));
    let half = Complex64::new(0.5, 0.0);
    QuadraticHamiltonian {
        a: (&a + a.adjoint()) * half,
        b: (&b + b.transpose()) * half,
    }
}

/// Random state `S (⊕ ν_k I₂) Sᵀ` with `ν_k = 1 + Exp(1)` (or 1 when pure),
/// drawn from the supplied generator. Also returns the drawn `ν`, sorted descending.
pub fn random_state_with<R: Rng + ?Sized>(
    n_modes: usize,
    class: PurityClass,
    displaced: bool,
    rng: &mut R,
) -> Result<(GaussianState, Vec<f64>)> {
    if n_modes == 0 {
        return invalid_arg("random state needs at least one mode");
    }
    let nu: Vec<f64> = (0..n_modes)
        .map(|_| match class {
            PurityClass::Pure => 1.0,
            PurityClass::Mixed => {
                let e: f64 = Exp1.sample(rng);
                1.0 + e
            }
        })
        .collect();
    let h = random_hamiltonian(n_modes, rng);
    let s = symplectic_from_hamiltonian(&h)?.into_matrix();
    let diag = RVec::from_iterator(2 * n_modes, nu.iter().flat_map(|v| [*v, *v]));
    let sigma = crate::linalg::symmetrize(&(&s * RMat::from_diagonal(&diag) * s.transpose()));
    let d = if displaced {
        RVec::from_fn(2 * n_modes, |_, _| StandardNormal.sample(rng))
    } else {
        RVec::zeros(2 * n_modes)
    };
    let mut sorted = nu;
    sorted.sort_by(|x, y| y.total_cmp(x));
    Ok((GaussianState { d, sigma }, sorted))
}

/// Reproducible random state from a seed (ChaCha8), zero first moments.
pub fn random_state(n_modes: usize, class: PurityClass, seed: u64) -> Result<GaussianState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_state_with(n_modes, class, false, &mut rng)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::symplectic::symplectic_rank;

    #[test]
    fn vacuum_examples() {
        let v = vacuum(1).unwrap();
        assert_eq!(v.sigma(), &RMat::identity(2, 2));
        assert_eq!(v.d(), &RVec::zeros(2));
        assert_eq!(vacuum(2).unwrap().purity().unwrap(), 1.0);
        assert_eq!(symplectic_rank(v.sigma(), 1e-9).unwrap(), 0);
        assert!(vacuum(0).is_err());
    }

    #[test]
    fn coherent_examples() {
        let s = coherent(&[Complex64::new(1.0, 1.0)]).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        assert!((s.d()[0] - r2).abs() < 1e-15 && (s.d()[1] - r2).abs() < 1e-15);
        assert_eq!(coherent(&[Complex64::new(0.0, 0.0)]).unwrap(), vacuum(1).unwrap());
        let s = coherent(&[Complex64::new(3.0, 0.0)]).unwrap();
        // ⟨q⟩ = d_q/√2 = 3 and ⟨n⟩ = |α|²
        assert!((s.d()[0] / r2 - 3.0).abs() < 1e-14);
        assert!((s.mean_photon_numbers()[0] - 9.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_examples() {
        assert_eq!(thermal(&[0.0]).unwrap(), vacuum(1).unwrap());
        let t = thermal(&[1.0]).unwrap();
        assert_eq!(t.sigma(), &(RMat::identity(2, 2) * 3.0));
        assert!((t.purity().unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let t = thermal(&[1.0, 2.0]).unwrap();
        let nu = t.spectrum().unwrap();
        assert!((nu.nu[0] - 5.0).abs() < 1e-12 && (nu.nu[1] - 3.0).abs() < 1e-12);
        assert!((t.purity().unwrap() - 1.0 / 15.0).abs() < 1e-14);
        assert!(thermal(&[-0.1]).is_err());
        assert!((thermal(&[2.0]).unwrap().mean_photon_numbers()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn squeezed_examples() {
        let a = Complex64::new(0.3, -0.2);
        assert_eq!(squeezed(a, 0.0, 1.0).unwrap(), coherent(&[a]).unwrap());
        let s = squeezed(Complex64::new(0.0, 0.0), 1.0, 0.0).unwrap();
        let e2 = 2f64.exp();
        assert!(max_abs_diff(s.sigma(), &RMat::from_diagonal(&RVec::from_vec(vec![e2, 1.0 / e2]))) < 1e-12);
        let s = squeezed(a, 0.8, 2.1).unwrap();
        assert!((s.determinant() - 1.0).abs() < 1e-12);
        assert!(squeezed(a, -1.0, 0.0).is_err());
    }

    #[test]
    fn tmsv_examples() {
        assert_eq!(two_mode_squeezed(0.0).unwrap(), vacuum(2).unwrap());
        let t = two_mode_squeezed(0.9).unwrap();
        assert!((t.determinant() - 1.0).abs() < 1e-10);
        assert!(t.spectrum().unwrap().nu.iter().all(|v| (v - 1.0).abs() < 1e-9));
        let r = 1.0_f64;
        let t = two_mode_squeezed(r).unwrap();
        let n = t.mean_photon_numbers();
        assert!((n[0] - r.sinh().powi(2)).abs() < 1e-12);
        let a = t.partial_trace(&[0]).unwrap();
        assert!(max_abs_diff(a.sigma(), &(RMat::identity(2, 2) * 2f64.cosh())) < 1e-15);
    }

    #[test]
    fn physicality_examples() {
        assert!(vacuum(2).unwrap().is_physical(1e-9));
        let bad = GaussianState::new_unchecked(RVec::zeros(2), RMat::identity(2, 2) * 0.5).unwrap();
        assert!(!bad.is_physical(1e-9));
        assert!(GaussianState::new(RVec::zeros(2), RMat::identity(2, 2) * 0.5).is_err());
        assert!(two_mode_squeezed(2.0).unwrap().is_physical(1e-9));
    }

    #[test]
    fn partial_trace_reorders() {
        let st = random_state(2, PurityClass::Mixed, 3).unwrap();
        assert_eq!(st.partial_trace(&[0, 1]).unwrap(), st);
        let swapped = st.partial_trace(&[1, 0]).unwrap();
        let mut p = RMat::zeros(4, 4);
        p[(0, 2)] = 1.0;
        p[(1, 3)] = 1.0;
        p[(2, 0)] = 1.0;
        p[(3, 1)] = 1.0;
        assert!(max_abs_diff(swapped.sigma(), &(&p * st.sigma() * p.transpose())) < 1e-15);
        assert!(st.partial_trace(&[]).is_err());
        assert!(st.partial_trace(&[0, 0]).is_err());
        assert!(st.partial_trace(&[2]).is_err());
    }

    #[test]
    fn invariants_examples() {
        let r = 1.0_f64;
        let inv = symplectic_invariants(&two_mode_squeezed(r).unwrap()).unwrap();
        let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        assert!((inv.i1 - c * c).abs() < 1e-12 && (inv.i2 - c * c).abs() < 1e-12);
        assert!((inv.i3 + s * s).abs() < 1e-12);
        assert!((inv.i4 - 1.0).abs() < 1e-10);
        let inv = symplectic_invariants(&vacuum(2).unwrap()).unwrap();
        assert_eq!((inv.i1, inv.i2, inv.i3, inv.i4), (1.0, 1.0, 0.0, 1.0));
        let f = TwoModeStandardForm { a: 2.0, b: 2.0, c_plus: 1.0, c_minus: -1.0 };
        let inv = f.invariants();
        assert_eq!(inv.i3, -1.0);
        assert!((inv.i4 - 9.0).abs() < 1e-12);
        assert!((inv.i4 - f.covariance().determinant()).abs() < 1e-12);
    }

    #[test]
    fn standard_form_of_tmsv() {
        let r = 0.6_f64;
        let f = two_mode_standard_form(&two_mode_squeezed(r).unwrap()).unwrap();
        let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        assert!((f.a - c).abs() < 1e-12 && (f.b - c).abs() < 1e-12);
        assert!((f.c_plus - s).abs() < 1e-7 && (f.c_minus + s).abs() < 1e-7);
        let f = two_mode_standard_form(&thermal(&[1.0, 0.5]).unwrap()).unwrap();
        assert_eq!((f.c_plus, f.c_minus), (0.0, 0.0));
    }

    #[test]
    fn local_reduction_matches_invariant_route() {
        for seed in 0..20 {
            let st = random_state(2, PurityClass::Mixed, seed).unwrap();
            let (s, f) = local_reduction(&st).unwrap();
            let g = two_mode_standard_form(&st).unwrap();
            assert!(max_abs_diff(&(&s * st.sigma() * s.transpose()), &f.covariance()) < 1e-9);
            assert!(crate::symplectic::is_symplectic(&s, 1e-9).unwrap());
            assert!((f.c_plus - g.c_plus).abs() < 1e-7, "{f:?} {g:?}");
            assert!((f.c_minus - g.c_minus).abs() < 1e-7, "{f:?} {g:?}");
        }
    }

    #[test]
    fn three_mode_examples() {
        let v = three_mode_pure(1.0, 1.0, 1.0).unwrap();
        assert!(max_abs_diff(v.sigma(), &RMat::identity(6, 6)) < 1e-15);

        let f = ThreeModeStandardForm::new(2.0, 2.0, 2.0).unwrap();
        let r105 = 105f64.sqrt();
        for (cp, cm) in f.correlations() {
            assert!((cp - (3.0 + r105) / 8.0).abs() < 1e-14);
            assert!((cm - (3.0 - r105) / 8.0).abs() < 1e-14);
        }
        let st = f.state();
        assert!(st.spectrum().unwrap().nu.iter().all(|v| (v - 1.0).abs() < 1e-7));

        let r = 0.7_f64;
        let a = (2.0 * r).cosh();
        let st = three_mode_pure(a, a, 1.0).unwrap();
        let expected = two_mode_squeezed(r).unwrap().tensor(&vacuum(1).unwrap());
        assert!(max_abs_diff(st.sigma(), expected.sigma()) < 1e-12);

        let err = three_mode_pure(1.0, 1.0, 3.0).unwrap_err();
        assert!(err.to_string().contains("triangle"));
    }

    #[test]
    fn random_state_contracts() {
        let p = random_state(2, PurityClass::Pure, 11).unwrap();
        assert!((p.determinant() - 1.0).abs() < 1e-8);
        assert_eq!(
            random_state(3, PurityClass::Mixed, 5).unwrap(),
            random_state(3, PurityClass::Mixed, 5).unwrap()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (st, nu) = random_state_with(3, PurityClass::Mixed, true, &mut rng).unwrap();
        let spec = st.spectrum().unwrap();
        for (x, y) in spec.nu.iter().zip(nu.iter()) {
            assert!((x - y).abs() < 1e-7);
        }
        assert!(st.is_physical(1e-9));
    }
}
