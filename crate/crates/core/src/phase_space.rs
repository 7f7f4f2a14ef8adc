//! Characteristic and Wigner functions of Gaussian states, marginals and
//! grid quadrature checks.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, numeric, Result};
use crate::linalg::{RMat, RVec};
use crate::state::GaussianState;
use crate::symplectic::omega;

/// s-ordered characteristic function `χ_s(ξ) = χ_0(ξ) e^{s‖ξ‖²/2}` with
/// `χ_0(ξ) = exp(−¼ ξᵀ Ω σ Ωᵀ ξ − i (Ω d)ᵀ ξ)`.
pub fn characteristic(state: &GaussianState, xi: &RVec, s: f64) -> Result<Complex64> {
    if xi.len() != state.d().len() {
        return invalid_arg(format!(
            "phase-space point has length {}, expected {}",
            xi.len(),
            state.d().len()
        ));
    }
    if !(-1.0..=1.0).contains(&s) {
        return invalid_arg(format!("ordering parameter must satisfy |s| ≤ 1, got {s}"));
    }
    let om = omega(state.n_modes());
    let quad = xi.dot(&(&om * state.sigma() * om.transpose() * xi));
    let phase = (&om * state.d()).dot(xi);
    let modulus = (-0.25 * quad + 0.5 * s * xi.norm_squared()).exp();
    Ok(Complex64::from_polar(modulus, -phase))
}

/// Precomputed Gaussian density for repeated Wigner evaluations.
#[derive(Debug, Clone)]
pub struct WignerEvaluator {
    d: RVec,
    inv: RMat,
    norm: f64,
}

impl WignerEvaluator {
    pub fn new(state: &GaussianState) -> Result<Self> {
        let sigma = state.sigma();
        let det = sigma.determinant();
        let inv = match sigma.clone().cholesky() {
            Some(ch) if det > 1e-300 => ch.inverse(),
            _ => return numeric("covariance matrix is singular"),
        };
        Ok(Self {
            d: state.d().clone(),
            inv,
            norm: PI.powi(-(state.n_modes() as i32)) / det.sqrt(),
        })
    }

    pub fn eval(&self, x: &RVec) -> f64 {
        let y = x - &self.d;
        self.norm * (-y.dot(&(&self.inv * &y))).exp()
    }
}

/// `W(X) = π^{−N} det(σ)^{−1/2} exp(−(X−d)ᵀ σ⁻¹ (X−d))`.
pub fn wigner(state: &GaussianState, x: &RVec) -> Result<f64> {
    if x.len() != state.d().len() {
        return invalid_arg(format!(
            "phase-space point has length {}, expected {}",
            x.len(),
            state.d().len()
        ));
    }
    Ok(WignerEvaluator::new(state)?.eval(x))
}

/// Single-mode Wigner function recovered by numerically Fourier transforming
/// `χ_0`: `W(X) = (2π)^{−2} ∫ dξ χ_0(ξ) exp(i ξᵀ Ω X)`, midpoint rule on a square
/// `[−half_width, half_width]²` with `points²` nodes.
pub fn wigner_via_fourier(state: &GaussianState, x: &RVec, half_width: f64, points: usize) -> Result<f64> {
    if state.n_modes() != 1 {
        return invalid_arg("Fourier reconstruction is implemented for one mode");
    }
    if points < 2 || !(half_width > 0.0) {
        return invalid_arg("need at least two points and a positive width");
    }
    let om = omega(1);
    let ox = &om * x;
    let h = 2.0 * half_width / points as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..points {
        for j in 0..points {
            let xi = RVec::from_vec(vec![
                -half_width + (i as f64 + 0.5) * h,
                -half_width + (j as f64 + 0.5) * h,
            ]);
            let chi = characteristic(state, &xi, 0.0)?;
            acc += chi * Complex64::from_polar(1.0, xi.dot(&ox));
        }
    }
    Ok(acc.re * h * h / (2.0 * PI).powi(2))
}

/// Rectangular sampling grid in the `(q_k, p_k)` plane of one mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub mode: usize,
    pub q_min: f64,
    pub q_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub q_points: usize,
    pub p_points: usize,
    /// Values of all other phase-space coordinates; defaults to the first moments.
    #[serde(default)]
    pub background: Option<Vec<f64>>,
}

impl Grid2D {
    pub fn validate(&self, n_modes: usize) -> Result<()> {
        if self.mode >= n_modes {
            return invalid_arg(format!("mode {} out of range for {n_modes} modes", self.mode));
        }
        if self.q_points < 2 || self.p_points < 2 {
            return invalid_arg("grid needs at least two points per axis");
        }
        if !(self.q_min < self.q_max && self.p_min < self.p_max) {
            return invalid_arg("grid bounds must be increasing");
        }
        if let Some(bg) = &self.background {
            if bg.len() != 2 * n_modes {
                return invalid_arg("background point has the wrong length");
            }
        }
        Ok(())
    }

    /// Grid centred on the mode's mean, spanning `±width` standard deviations
    /// of its widest marginal.
    pub fn centered(state: &GaussianState, mode: usize, width: f64, points: usize) -> Result<Self> {
        if mode >= state.n_modes() {
            return invalid_arg(format!("mode {mode} out of range"));
        }
        let s = state.sigma();
        let sd = (s[(2 * mode, 2 * mode)].max(s[(2 * mode + 1, 2 * mode + 1)]) / 2.0).sqrt();
        let (q0, p0) = (state.d()[2 * mode], state.d()[2 * mode + 1]);
        Ok(Self {
            mode,
            q_min: q0 - width * sd,
            q_max: q0 + width * sd,
            p_min: p0 - width * sd,
            p_max: p0 + width * sd,
            q_points: points,
            p_points: points,
            background: None,
        })
    }

    pub fn q_axis(&self) -> Vec<f64> {
        linspace(self.q_min, self.q_max, self.q_points)
    }

    pub fn p_axis(&self) -> Vec<f64> {
        linspace(self.p_min, self.p_max, self.p_points)
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { b } else { a + h * i as f64 }).collect()
}

/// Wigner samples on a grid, row-major with `q` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub values: Vec<f64>,
}

impl WignerGrid {
    pub fn get(&self, iq: usize, ip: usize) -> f64 {
        self.values[iq * self.p.len() + ip]
    }

    /// `(q, p, w)` triples in storage order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.q.iter().enumerate().flat_map(move |(i, &q)| {
            self.p
                .iter()
                .enumerate()
                .map(move |(j, &p)| (q, p, self.values[i * self.p.len() + j]))
        })
    }
}

pub fn wigner_grid(state: &GaussianState, grid: &Grid2D) -> Result<WignerGrid> {
    grid.validate(state.n_modes())?;
    let w = WignerEvaluator::new(state)?;
    let mut x = match &grid.background {
        Some(bg) => RVec::from_vec(bg.clone()),
        None => state.d().clone(),
    };
    let (q, p) = (grid.q_axis(), grid.p_axis());
    let mut values = Vec::with_capacity(q.len() * p.len());
    for &qv in &q {
        for &pv in &p {
            x[2 * grid.mode] = qv;
            x[2 * grid.mode + 1] = pv;
            values.push(w.eval(&x));
        }
    }
    Ok(WignerGrid { q, p, values })
}

/// Mean and variance of the marginal distribution of one phase-space coordinate.
pub fn marginal(state: &GaussianState, index: usize) -> Result<(f64, f64)> {
    if index >= state.d().len() {
        return invalid_arg(format!("quadrature index {index} out of range"));
    }
    Ok((state.d()[index], state.sigma()[(index, index)] / 2.0))
}

/// Marginal probability density of coordinate `index` at `x`.
pub fn marginal_density(state: &GaussianState, index: usize, x: f64) -> Result<f64> {
    let (mean, var) = marginal(state, index)?;
    Ok((-(x - mean).powi(2) / (2.0 * var)).exp() / (2.0 * PI * var).sqrt())
}

/// Grid integrals of `W`, `(2π)^N W²` and `−W ln W` with analytic references.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub norm: f64,
    pub purity_integral: f64,
    pub shannon_h: f64,
    pub expected_norm: f64,
    pub expected_purity: f64,
    pub expected_shannon_h: f64,
    pub points_per_axis: usize,
    pub half_width_sd: f64,
    pub warning: Option<String>,
}

/// Integrates over the full phase space on a regular grid of
/// `points_per_axis^{2N}` nodes spanning `±half_width_sd` standard deviations
/// of the widest marginal around `d`. One or two modes only.
pub fn quadrature_checks(
    state: &GaussianState,
    points_per_axis: usize,
    half_width_sd: f64,
) -> Result<QuadratureReport> {
    let n = state.n_modes();
    if n > 2 {
        return invalid_arg("quadrature checks support one or two modes");
    }
    if points_per_axis < 3 || !(half_width_sd > 0.0) {
        return invalid_arg("need at least three points per axis and a positive width");
    }
    let w = WignerEvaluator::new(state)?;
    let dim = 2 * n;
    let max_var = (0..dim).map(|i| state.sigma()[(i, i)]).fold(0.0, f64::max) / 2.0;
    let half = half_width_sd * max_var.sqrt();
    let h = 2.0 * half / (points_per_axis - 1) as f64;
    let cell = h.powi(dim as i32);
    let total = points_per_axis.pow(dim as u32);

    let (mut norm, mut pur, mut shan) = (0.0, 0.0, 0.0);
    let mut x = RVec::zeros(dim);
    for flat in 0..total {
        let mut rem = flat;
        for c in 0..dim {
            let i = rem % points_per_axis;
            rem /= points_per_axis;
            x[c] = state.d()[c] - half + h * i as f64;
        }
        let v = w.eval(&x);
        norm += v;
        pur += v * v;
        if v >= 1e-300 {
            shan -= v * v.ln();
        }
    }
    norm *= cell;
    pur *= cell * (2.0 * PI).powi(n as i32);
    shan *= cell;
    let det = state.sigma().determinant();
    let warning = if (norm - 1.0).abs() > 0.05 {
        Some(format!("grid too coarse: norm {norm:.4} deviates more than 5% from 1"))
    } else {
        None
    };
    Ok(QuadratureReport {
        norm,
        purity_integral: pur,
        shannon_h: shan,
        expected_norm: 1.0,
        expected_purity: 1.0 / det.sqrt(),
        expected_shannon_h: 0.5 * det.ln() + n as f64 * (1.0 + PI.ln()),
        points_per_axis,
        half_width_sd,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{squeezed, thermal, vacuum};

    fn v2(a: f64, b: f64) -> RVec {
        RVec::from_vec(vec![a, b])
    }

    #[test]
    fn characteristic_examples() {
        let st = squeezed(Complex64::new(0.4, 0.1), 0.5, 1.0).unwrap();
        let one = characteristic(&st, &RVec::zeros(2), 0.0).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let vac = vacuum(1).unwrap();
        let xi = v2(0.7, -1.2);
        let r2 = xi.norm_squared();
        let c0 = characteristic(&vac, &xi, 0.0).unwrap();
        assert!((c0.re - (-r2 / 4.0).exp()).abs() < 1e-15 && c0.im == 0.0);
        let cm = characteristic(&vac, &xi, -1.0).unwrap();
        assert!((cm.re - (-3.0 * r2 / 4.0).exp()).abs() < 1e-15);
        assert!(characteristic(&vac, &xi, 1.5).is_err());
    }

    #[test]
    fn vacuum_wigner() {
        let vac = vacuum(1).unwrap();
        assert!((wigner(&vac, &v2(0.0, 0.0)).unwrap() - 1.0 / PI).abs() < 1e-15);
        let (q, p) = (0.3, -0.8);
        assert!((wigner(&vac, &v2(q, p)).unwrap() - (-q * q - p * p).exp() / PI).abs() < 1e-15);
        let st = thermal(&[1.5]).unwrap();
        let peak = wigner(&st, st.d()).unwrap();
        assert!((peak - 1.0 / (PI * st.sigma().determinant().sqrt())).abs() < 1e-15);
    }

    #[test]
    fn fourier_matches_closed_form() {
        let st = squeezed(Complex64::new(0.3, -0.2), 0.3, 0.7).unwrap();
        for x in [v2(0.0, 0.0), v2(0.5, -0.3), v2(-1.0, 0.8)] {
            let direct = wigner(&st, &x).unwrap();
            let num = wigner_via_fourier(&st, &x, 12.0, 101).unwrap();
            assert!((direct - num).abs() < 1e-3, "{direct} vs {num}");
        }
    }

    #[test]
    fn grid_peak_and_shape() {
        let vac = vacuum(1).unwrap();
        let g = Grid2D {
            mode: 0,
            q_min: -3.0,
            q_max: 3.0,
            p_min: -3.0,
            p_max: 3.0,
            q_points: 61,
            p_points: 61,
            background: None,
        };
        let w = wigner_grid(&vac, &g).unwrap();
        let max = w.values.iter().cloned().fold(0.0, f64::max);
        assert!((max - 1.0 / PI).abs() < 1e-15);
        assert!((w.get(30, 30) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(w.rows().count(), 61 * 61);
    }

    #[test]
    fn marginal_examples() {
        let vac = vacuum(1).unwrap();
        assert_eq!(marginal(&vac, 0).unwrap(), (0.0, 0.5));
        for q in [-1.0, 0.0, 0.7] {
            let psi0 = PI.powf(-0.25) * (-(q * q) / 2.0_f64).exp();
            assert!((marginal_density(&vac, 0, q).unwrap() - psi0 * psi0).abs() < 1e-15);
        }
        let t = thermal(&[2.0]).unwrap();
        assert_eq!(marginal(&t, 0).unwrap(), (0.0, 2.5));
    }

    #[test]
    fn small_grid_quadrature() {
        let rep = quadrature_checks(&vacuum(1).unwrap(), 121, 6.0).unwrap();
        assert!((rep.norm - 1.0).abs() < 1e-3);
        assert!((rep.purity_integral - 1.0).abs() < 1e-3);
        assert!((rep.shannon_h - rep.expected_shannon_h).abs() < 1e-3);
        assert!(rep.warning.is_none());
        let coarse = quadrature_checks(&vacuum(1).unwrap(), 3, 0.5).unwrap();
        assert!(coarse.warning.is_some());
    }
}
