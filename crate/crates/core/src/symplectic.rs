//! Symplectic linear algebra on phase space.
//!
//! Vectors use interleaved ordering `(q1, p1, ..., qN, pN)`. The quadrature
//! grouped ordering `(q1..qN, p1..pN)` and the complex (creation/annihilation)
//! form are only conversion targets.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, numeric, Error, Result};
use crate::linalg::{
    expm, herm_eigen, max_abs_c, max_abs_diff, real_part, sqrt_and_inv_sqrt, sym_eigen, to_complex,
    CMat, RMat, RVec,
};

/// Relative tolerance below which two symplectic eigenvalues are treated as equal.
pub const PAIRING_TOL: f64 = 1e-7;

/// The N-mode symplectic form `⊕ [[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    pub n_modes: usize,
    pub matrix: RMat,
}

pub fn symplectic_form(n_modes: usize) -> Result<SymplecticForm> {
    if n_modes == 0 {
        return invalid_arg("symplectic form needs at least one mode");
    }
    Ok(SymplecticForm {
        n_modes,
        matrix: omega(n_modes),
    })
}

/// Interleaved symplectic form as a plain matrix. `n_modes` may be zero.
pub fn omega(n_modes: usize) -> RMat {
    let mut m = RMat::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

fn modes_of(m: &RMat) -> Result<usize> {
    if !m.is_square() {
        return invalid_arg(format!("expected a square matrix, got {}x{}", m.nrows(), m.ncols()));
    }
    if m.nrows() == 0 || m.nrows() % 2 != 0 {
        return invalid_arg(format!("expected an even positive dimension, got {}", m.nrows()));
    }
    Ok(m.nrows() / 2)
}

/// `true` iff `‖M Ω Mᵀ − Ω‖_max ≤ tol`.
pub fn is_symplectic(m: &RMat, tol: f64) -> Result<bool> {
    let n = modes_of(m)?;
    let om = omega(n);
    Ok(max_abs_diff(&(m * &om * m.transpose()), &om) <= tol)
}

/// Phase-space basis of a matrix representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `(q1, p1, ..., qN, pN)`
    Interleaved,
    /// `(q1, ..., qN, p1, ..., pN)`
    Grouped,
    /// `(a1, ..., aN, a1†, ..., aN†)`
    Complex,
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "interleaved" | "qpqp" => Ok(Basis::Interleaved),
            "grouped" | "quadrature" | "qqpp" => Ok(Basis::Grouped),
            "complex" => Ok(Basis::Complex),
            other => invalid_arg(format!("unknown basis '{other}'")),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::Interleaved => "interleaved",
            Basis::Grouped => "grouped",
            Basis::Complex => "complex",
        };
        f.write_str(s)
    }
}

/// Permutation taking interleaved vectors to grouped ones: `y = T r`.
pub fn grouping_permutation(n_modes: usize) -> RMat {
    let mut t = RMat::zeros(2 * n_modes, 2 * n_modes);
    for i in 0..n_modes {
        t[(i, 2 * i)] = 1.0;
        t[(n_modes + i, 2 * i + 1)] = 1.0;
    }
    t
}

/// Unitary `L = (1/√2) [[I, iI], [I, −iI]]` taking grouped quadratures to the complex form.
pub fn complex_unitary(n_modes: usize) -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut l = CMat::zeros(2 * n_modes, 2 * n_modes);
    for i in 0..n_modes {
        l[(i, i)] = Complex64::new(h, 0.0);
        l[(i, n_modes + i)] = Complex64::new(0.0, h);
        l[(n_modes + i, i)] = Complex64::new(h, 0.0);
        l[(n_modes + i, n_modes + i)] = Complex64::new(0.0, -h);
    }
    l
}

/// Re-express a phase-space matrix in another basis.
///
/// Matrices transform by conjugation: grouped `T M Tᵀ`, complex `L (T M Tᵀ) L†`.
pub fn change_basis(m: &CMat, from: Basis, to: Basis) -> Result<CMat> {
    if !m.is_square() || m.nrows() == 0 || m.nrows() % 2 != 0 {
        return invalid_arg(format!(
            "expected a square matrix of even dimension, got {}x{}",
            m.nrows(),
            m.ncols()
        ));
    }
    if from == to {
        return Ok(m.clone());
    }
    let n = m.nrows() / 2;
    let t = to_complex(&grouping_permutation(n));
    let l = complex_unitary(n);
    let grouped = match from {
        Basis::Interleaved => &t * m * t.transpose(),
        Basis::Grouped => m.clone(),
        Basis::Complex => l.adjoint() * m * &l,
    };
    Ok(match to {
        Basis::Interleaved => t.transpose() * grouped * &t,
        Basis::Grouped => grouped,
        Basis::Complex => &l * grouped * l.adjoint(),
    })
}

/// A real symplectic matrix stored in the interleaved basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    matrix: RMat,
}

impl SymplecticMatrix {
    /// Validates `S Ω Sᵀ = Ω` to `tol`.
    pub fn new(matrix: RMat, tol: f64) -> Result<Self> {
        if !is_symplectic(&matrix, tol)? {
            return invalid_arg("matrix is not symplectic");
        }
        Ok(Self { matrix })
    }

    pub fn new_unchecked(matrix: RMat) -> Self {
        Self { matrix }
    }

    pub fn identity(n_modes: usize) -> Self {
        Self {
            matrix: RMat::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn matrix(&self) -> &RMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> RMat {
        self.matrix
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn basis(&self) -> Basis {
        Basis::Interleaved
    }

    /// Representation in the requested basis.
    pub fn in_basis(&self, basis: Basis) -> CMat {
        change_basis(&to_complex(&self.matrix), Basis::Interleaved, basis)
            .expect("stored matrix has even dimension")
    }

    /// `self · other`, i.e. `other` acts first.
    pub fn compose(&self, other: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        if self.matrix.shape() != other.matrix.shape() {
            return invalid_arg("cannot compose symplectic matrices of different size");
        }
        Ok(SymplecticMatrix {
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Exact inverse `−Ω Sᵀ Ω`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let om = omega(self.n_modes());
        SymplecticMatrix {
            matrix: -(&om * self.matrix.transpose() * &om),
        }
    }

    pub fn transpose(&self) -> SymplecticMatrix {
        SymplecticMatrix {
            matrix: self.matrix.transpose(),
        }
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }
}

/// Quadratic Hamiltonian `H = [[A, B], [B̄, Ā]]` in the complex basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    /// Hermitian N×N block.
    pub a: CMat,
    /// Symmetric N×N block.
    pub b: CMat,
}

impl QuadraticHamiltonian {
    pub fn new(a: CMat, b: CMat) -> Result<Self> {
        let h = Self { a, b };
        h.validate(1e-10)?;
        Ok(h)
    }

    pub fn n_modes(&self) -> usize {
        self.a.nrows()
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.a.nrows();
        if n == 0 || !self.a.is_square() || self.b.shape() != (n, n) {
            return invalid_arg("hamiltonian blocks must be square with matching size");
        }
        let herm = max_abs_c(&(&self.a - self.a.adjoint()));
        if herm > tol {
            return invalid_arg(format!("block A is not Hermitian (deviation {herm:.3e})"));
        }
        let sym = max_abs_c(&(&self.b - self.b.transpose()));
        if sym > tol {
            return invalid_arg(format!("block B is not symmetric (deviation {sym:.3e})"));
        }
        Ok(())
    }

    /// Full 2N×2N matrix `H`.
    pub fn matrix(&self) -> CMat {
        let n = self.n_modes();
        let mut h = CMat::zeros(2 * n, 2 * n);
        h.view_mut((0, 0), (n, n)).copy_from(&self.a);
        h.view_mut((0, n), (n, n)).copy_from(&self.b);
        h.view_mut((n, 0), (n, n)).copy_from(&self.b.conjugate());
        h.view_mut((n, n), (n, n)).copy_from(&self.a.conjugate());
        h
    }

    /// `K = diag(I, −I)`.
    pub fn k_matrix(n_modes: usize) -> CMat {
        let mut k = CMat::identity(2 * n_modes, 2 * n_modes);
        for i in n_modes..2 * n_modes {
            k[(i, i)] = Complex64::new(-1.0, 0.0);
        }
        k
    }
}

/// Symplectic matrix generated by `H`: `S_c = exp(−i K H)` mapped back to the
/// interleaved real basis. The metaplectic sign is not tracked.
pub fn symplectic_from_hamiltonian(h: &QuadraticHamiltonian) -> Result<SymplecticMatrix> {
    h.validate(1e-10)?;
    let n = h.n_modes();
    let gen = QuadraticHamiltonian::k_matrix(n) * h.matrix() * Complex64::new(0.0, -1.0);
    let sc = expm(&gen);
    let real = change_basis(&sc, Basis::Complex, Basis::Interleaved)?;
    let s = real_part(&real, 1e-9 * (1.0 + max_abs_c(&real)))?;
    Ok(SymplecticMatrix { matrix: s })
}

/// Symplectic eigenvalues, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub nu: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn len(&self) -> usize {
        self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.nu.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn product(&self) -> f64 {
        self.nu.iter().product()
    }
}

fn check_covariance(sigma: &RMat) -> Result<usize> {
    let n = modes_of(sigma)?;
    if max_abs_diff(sigma, &sigma.transpose()) > 1e-9 * (1.0 + crate::linalg::max_abs(sigma)) {
        return invalid_arg("covariance matrix is not symmetric");
    }
    if !crate::linalg::is_positive_definite(sigma) {
        return invalid_arg("covariance matrix is not positive definite");
    }
    Ok(n)
}

/// Symplectic spectrum: the N positive eigenvalues of `i σ^{1/2} Ω σ^{1/2}`
/// (equivalently the moduli of the eigenvalues of `iΩσ`).
pub fn symplectic_spectrum(sigma: &RMat) -> Result<SymplecticSpectrum> {
    let n = check_covariance(sigma)?;
    let (root, _) = sqrt_and_inv_sqrt(sigma)?;
    let a = &root * omega(n) * &root;
    let ia = a.map(|x| Complex64::new(0.0, x));
    let (vals, _) = herm_eigen(&ia);
    let nu: Vec<f64> = (0..n).map(|k| vals[2 * n - 1 - k]).collect();
    if nu.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return numeric("symplectic spectrum computation failed");
    }
    Ok(SymplecticSpectrum { nu })
}

/// Number of symplectic eigenvalues exceeding 1 by more than `tol`.
pub fn symplectic_rank(sigma: &RMat, tol: f64) -> Result<usize> {
    Ok(symplectic_spectrum(sigma)?
        .nu
        .iter()
        .filter(|&&v| v - 1.0 > tol)
        .count())
}

/// Williamson normal form `σ = S (⊕ ν_k I₂) Sᵀ` with ν sorted descending.
///
/// Inside degenerate blocks the basis is chosen deterministically from the
/// projected coordinate axes, so states that are already diagonal (vacuum,
/// thermal products) return `S = I`.
pub fn williamson(sigma: &RMat) -> Result<(SymplecticMatrix, SymplecticSpectrum)> {
    let n = check_covariance(sigma)?;
    let (root, inv_root) = sqrt_and_inv_sqrt(sigma)?;
    let a = &inv_root * omega(n) * &inv_root;
    let ia = a.map(|x| Complex64::new(0.0, x));
    let (vals, vecs) = herm_eigen(&ia);

    // Positive eigenvalues mu = 1/nu are the upper half, ascending in mu, so descending in nu.
    let mus: Vec<f64> = (n..2 * n).map(|i| vals[i]).collect();
    if mus.iter().any(|m| !m.is_finite() || *m <= 0.0) {
        return numeric("williamson: eigenvalues are not paired as expected");
    }
    let mut o = RMat::zeros(2 * n, 2 * n);
    let mut nu = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n {
            let (x, y) = (1.0 / mus[start], 1.0 / mus[end]);
            if (x - y).abs() <= PAIRING_TOL * x.max(1.0) {
                end += 1;
            } else {
                break;
            }
        }
        let cluster_mu = mus[start..end].iter().sum::<f64>() / (end - start) as f64;
        // Real projector onto the invariant subspace of this cluster.
        let mut proj = RMat::zeros(2 * n, 2 * n);
        for idx in start..end {
            let v = vecs.column(n + idx);
            for r in 0..2 * n {
                for c in 0..2 * n {
                    proj[(r, c)] += 2.0 * (v[r] * v[c].conj()).re;
                }
            }
        }
        let basis = cluster_basis(&proj, &a, cluster_mu, end - start, &o, start)?;
        for (j, (e1, e2)) in basis.into_iter().enumerate() {
            let k = start + j;
            o.set_column(2 * k, &e1);
            o.set_column(2 * k + 1, &e2);
            nu.push(1.0 / mus[k]);
        }
        start = end;
    }
    let mut s = root * o;
    for k in 0..n {
        let f = 1.0 / nu[k].sqrt();
        for r in 0..2 * n {
            s[(r, 2 * k)] *= f;
            s[(r, 2 * k + 1)] *= f;
        }
    }
    Ok((SymplecticMatrix { matrix: s }, SymplecticSpectrum { nu }))
}

/// Orthonormal pairs `(e1, e2)` with `A e2 = μ e1` spanning the range of `proj`.
fn cluster_basis(
    proj: &RMat,
    a: &RMat,
    mu: f64,
    count: usize,
    _o: &RMat,
    _offset: usize,
) -> Result<Vec<(RVec, RVec)>> {
    let dim = proj.nrows();
    let n = dim / 2;
    // p coordinates first, then q.
    let candidates: Vec<RVec> = (0..n)
        .map(|k| 2 * k + 1)
        .chain((0..n).map(|k| 2 * k))
        .map(|i| proj.column(i).into_owned())
        .collect();
    let mut chosen: Vec<RVec> = Vec::new();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let residuals: Vec<RVec> = candidates
            .iter()
            .map(|c| {
                let mut r = c.clone();
                for u in &chosen {
                    let dot = u.dot(&r);
                    r -= u * dot;
                }
                r
            })
            .collect();
        let best = residuals.iter().map(|r| r.norm()).fold(0.0_f64, f64::max);
        if best < 1e-6 {
            return numeric("williamson: degenerate subspace basis selection failed");
        }
        let pick = residuals
            .iter()
            .position(|r| r.norm() >= best * (1.0 - 1e-9))
            .expect("maximum exists");
        let e2 = &residuals[pick] / residuals[pick].norm();
        let mut e1 = a * &e2 / mu;
        // Re-orthonormalise against accumulated roundoff.
        for u in &chosen {
            let dot = u.dot(&e1);
            e1 -= u * dot;
        }
        let dot = e2.dot(&e1);
        e1 -= &e2 * dot;
        let norm = e1.norm();
        if norm < 1e-6 {
            return numeric("williamson: failed to build conjugate basis vector");
        }
        e1 /= norm;
        chosen.push(e2.clone());
        chosen.push(e1.clone());
        out.push((e1, e2));
    }
    Ok(out)
}

/// Factors of `S = O Z O′`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactors {
    pub o: RMat,
    /// `⊕ diag(z_j, 1/z_j)` with `z_j ≥ 1`, sorted descending.
    pub z: RMat,
    pub o_prime: RMat,
}

impl EulerFactors {
    pub fn squeezing(&self) -> Vec<f64> {
        (0..self.z.nrows() / 2).map(|k| self.z[(2 * k, 2 * k)]).collect()
    }

    pub fn reconstruct(&self) -> RMat {
        &self.o * &self.z * &self.o_prime
    }
}

/// Euler (Bloch-Messiah) decomposition `S = O Z O′`.
///
/// Built from the eigenvectors of `S Sᵀ`: an eigenvector `v` with eigenvalue
/// `z²` pairs with `−Ωv` (eigenvalue `1/z²`), giving the columns of `O`.
pub fn euler_decompose(s: &RMat) -> Result<EulerFactors> {
    let n = modes_of(s)?;
    if !is_symplectic(s, 1e-9 * (1.0 + crate::linalg::max_abs(s).powi(2)))? {
        return invalid_arg("euler decomposition needs a symplectic matrix");
    }
    let om = omega(n);
    let m = s * s.transpose();
    let (vals, vecs) = sym_eigen(&m);
    let dim = 2 * n;
    let order: Vec<usize> = (0..dim).rev().collect();

    let mut accepted: Vec<RVec> = Vec::with_capacity(n);
    let mut span: Vec<RVec> = Vec::with_capacity(dim);
    let mut i = 0;
    while i < dim && accepted.len() < n {
        let mut j = i + 1;
        while j < dim {
            let (x, y) = (vals[order[i]], vals[order[j]]);
            if (x - y).abs() <= PAIRING_TOL * x.abs().max(1.0) {
                j += 1;
            } else {
                break;
            }
        }
        let mut pool: Vec<RVec> = order[i..j].iter().map(|&c| vecs.column(c).into_owned()).collect();
        while accepted.len() < n && !pool.is_empty() {
            let residuals: Vec<RVec> = pool
                .iter()
                .map(|c| {
                    let mut r = c.clone();
                    for u in &span {
                        let dot = u.dot(&r);
                        r -= u * dot;
                    }
                    r
                })
                .collect();
            let (pick, best) = residuals
                .iter()
                .enumerate()
                .map(|(k, r)| (k, r.norm()))
                .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best < 1e-3 {
                break;
            }
            let mut v = &residuals[pick] / best;
            let lead = v.iamax();
            if v[lead] < 0.0 {
                v = -v;
            }
            let w = -(&om * &v);
            span.push(v.clone());
            span.push(w);
            accepted.push(v);
            pool.remove(pick);
        }
        i = j;
    }
    if accepted.len() != n {
        return numeric("euler decomposition: could not pair eigenvectors");
    }

    let mut o = RMat::zeros(dim, dim);
    let mut zs = Vec::with_capacity(n);
    for (k, v) in accepted.iter().enumerate() {
        let mut v = v.clone();
        let mut z2 = v.dot(&(&m * &v));
        if z2 < 1.0 {
            v = -(&om * &v);
            z2 = v.dot(&(&m * &v));
        }
        o.set_column(2 * k, &v);
        o.set_column(2 * k + 1, &(-(&om * &v)));
        zs.push(z2.sqrt());
    }
    // Sort modes by descending squeezing.
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&x, &y| zs[y].total_cmp(&zs[x]));
    let o = RMat::from_fn(dim, dim, |r, c| o[(r, 2 * idx[c / 2] + c % 2)]);
    let zs: Vec<f64> = idx.iter().map(|&k| zs[k]).collect();

    let mut z = RMat::zeros(dim, dim);
    let mut z_inv = RMat::zeros(dim, dim);
    for (k, &zk) in zs.iter().enumerate() {
        z[(2 * k, 2 * k)] = zk;
        z[(2 * k + 1, 2 * k + 1)] = 1.0 / zk;
        z_inv[(2 * k, 2 * k)] = 1.0 / zk;
        z_inv[(2 * k + 1, 2 * k + 1)] = zk;
    }
    let o_prime = z_inv * o.transpose() * s;
    Ok(EulerFactors { o, z, o_prime })
}
