//! Seeded randomized property suites, shared by the CLI `check` command and
//! the test suite.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid_arg, Error, Result};
use crate::measures::{
    check_monogamy, check_strong_subadditivity, classical_correlations_j2, conditional_det,
    discord_d2, entanglement_e2_two_mode, min_conditional_det, mutual_information_renyi2,
    residual_tripartite_e2, three_mode_beta, Bipartition, Branch, Direction,
};
use crate::state::{random_state_with, three_mode_pure, GaussianState, PurityClass, TwoModeStandardForm};

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Strong subadditivity of S₂ on random three-mode mixed states.
    Ssa,
    /// Monogamy residuals of random three-mode pure states.
    Monogamy,
    /// `I₂/2 = J₂ = D₂ = E₂` on random pure two-mode states.
    PureEqualities,
    /// Closed-form conditional determinant against numerical minimisation.
    ClosedForms,
    /// `min J₂ ≥ E₂` and `D₂ ≥ 0` on random mixed two-mode states.
    Hierarchy,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Ssa,
        Suite::Monogamy,
        Suite::PureEqualities,
        Suite::ClosedForms,
        Suite::Hierarchy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ssa => "ssa",
            Suite::Monogamy => "monogamy",
            Suite::PureEqualities => "pure-equalities",
            Suite::ClosedForms => "closed-forms",
            Suite::Hierarchy => "hierarchy",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

/// First draw that violated a property.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub draw: usize,
    pub detail: String,
    pub state: GaussianState,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub draws: usize,
    /// Largest deviation seen (or most negative value for bounds).
    pub worst: f64,
    /// Free-form per-suite tallies, e.g. branch counts.
    pub notes: Vec<(String, usize)>,
    pub failure: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn new(suite: Suite, seed: u64, draws: usize) -> Self {
        // bounds track the smallest value, equalities the largest deviation
        let worst = match suite {
            Suite::Ssa | Suite::Monogamy | Suite::Hierarchy => f64::INFINITY,
            Suite::PureEqualities | Suite::ClosedForms => 0.0,
        };
        Self {
            suite,
            seed,
            draws,
            worst,
            notes: Vec::new(),
            failure: None,
        }
    }

    fn fail(&mut self, draw: usize, detail: String, state: &GaussianState) {
        if self.failure.is_none() {
            self.failure = Some(Counterexample {
                draw,
                detail,
                state: state.clone(),
            });
        }
    }

    fn count(&mut self, key: &str) {
        match self.notes.iter_mut().find(|(k, _)| k == key) {
            Some((_, n)) => *n += 1,
            None => self.notes.push((key.to_string(), 1)),
        }
    }

    pub fn note(&self, key: &str) -> usize {
        self.notes.iter().find(|(k, _)| k == key).map_or(0, |(_, n)| *n)
    }
}

pub fn run(suite: Suite, draws: usize, seed: u64) -> Result<SuiteReport> {
    if draws == 0 {
        return invalid_arg("draws must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport::new(suite, seed, draws);
    match suite {
        Suite::Ssa => ssa(&mut rep, &mut rng)?,
        Suite::Monogamy => monogamy(&mut rep, &mut rng)?,
        Suite::PureEqualities => pure_equalities(&mut rep, &mut rng)?,
        Suite::ClosedForms => closed_forms(&mut rep, &mut rng)?,
        Suite::Hierarchy => hierarchy(&mut rep, &mut rng)?,
    }
    Ok(rep)
}

fn ssa(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    let groupings: [[&[usize]; 3]; 3] = [[&[0], &[1], &[2]], [&[1], &[2], &[0]], [&[2], &[0], &[1]]];
    for i in 0..rep.draws {
        let (st, _) = random_state_with(3, PurityClass::Mixed, false, rng)?;
        for g in groupings {
            let v = check_strong_subadditivity(&st, g)?;
            rep.worst = rep.worst.min(v);
            if v < -1e-9 {
                rep.fail(i, format!("SSA quantity {v:e} for grouping {g:?}"), &st);
            }
        }
    }
    Ok(())
}

/// Draws `(a₁, a₂, a₃)` satisfying the triangle conditions for three-mode pure
/// states by rejection.
pub fn random_triangle<R: Rng + ?Sized>(rng: &mut R, max: f64) -> [f64; 3] {
    loop {
        let a = [
            rng.random_range(1.0..max),
            rng.random_range(1.0..max),
            rng.random_range(1.0..max),
        ];
        let ok = (0..3).all(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            a[i] >= (a[j] - a[k]).abs() + 1.0 && a[i] <= a[j] + a[k] - 1.0
        });
        if ok {
            return a;
        }
    }
}

/// `|a_i − a_j| + 1 < a_k < √(a_i² + a_j² − 1)` for every labelling.
pub fn fully_inseparable(a: [f64; 3]) -> bool {
    (0..3).all(|k| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        (a[i] - a[j]).abs() + 1.0 < a[k] && a[k] < (a[i] * a[i] + a[j] * a[j] - 1.0).sqrt()
    })
}

fn monogamy(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    for i in 0..rep.draws {
        let a = random_triangle(rng, 5.0);
        let st = three_mode_pure(a[0], a[1], a[2])?;
        let mut residuals = [0.0; 3];
        for focus in 0..3 {
            let m = check_monogamy(&st, focus)?;
            let r = residual_tripartite_e2(&st, focus)?;
            residuals[focus] = r;
            rep.worst = rep.worst.min(m);
            if m < -1e-8 {
                rep.fail(i, format!("negative residual {m:e} for focus {focus}, a = {a:?}"), &st);
            }
            if (m - r).abs() > 1e-7 {
                rep.fail(i, format!("pairwise residual {m} differs from closed form {r}, a = {a:?}"), &st);
            }
        }
        if fully_inseparable(a) {
            rep.count("fully_inseparable");
            let beta = three_mode_beta(a);
            let expected = 0.5 * (64.0 * (a[0] * a[1] * a[2]).powi(2) / (beta * beta)).ln();
            for r in residuals {
                if (r - expected).abs() > 1e-9 {
                    rep.fail(i, format!("residual {r} differs from symmetric value {expected}, a = {a:?}"), &st);
                }
            }
        }
    }
    Ok(())
}

fn pure_equalities(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    let cut = Bipartition::new(vec![0], vec![1])?;
    for i in 0..rep.draws {
        let (st, _) = random_state_with(2, PurityClass::Pure, true, rng)?;
        let half_i = 0.5 * mutual_information_renyi2(&st, &cut)?;
        let values = [
            classical_correlations_j2(&st, Direction::AB)?.value,
            classical_correlations_j2(&st, Direction::BA)?.value,
            discord_d2(&st, Direction::AB)?.value,
            discord_d2(&st, Direction::BA)?.value,
            entanglement_e2_two_mode(&st)?.value,
        ];
        let dev = values.iter().map(|v| (v - half_i).abs()).fold(0.0, f64::max);
        rep.worst = rep.worst.max(dev);
        if dev > 1e-7 {
            rep.fail(i, format!("I₂/2 = {half_i}, [J₂ AB, J₂ BA, D₂ AB, D₂ BA, E₂] = {values:?}"), &st);
        }
    }
    Ok(())
}

/// Random physical standard form with `c₊ ≥ |c₋|`.
pub fn random_standard_form<R: Rng + ?Sized>(rng: &mut R) -> TwoModeStandardForm {
    loop {
        let a: f64 = rng.random_range(1.0..5.0);
        let b: f64 = rng.random_range(1.0..5.0);
        let cp = rng.random_range(0.0..a.min(b));
        let cm = rng.random_range(-cp..=cp);
        if let Ok(f) = TwoModeStandardForm::new(a, b, cp, cm) {
            return f;
        }
    }
}

/// Two-dimensional Nelder-Mead. Returns `(x, f(x))`.
pub fn nelder_mead(f: impl Fn([f64; 2]) -> f64, start: [f64; 2], step: f64, iters: usize) -> ([f64; 2], f64) {
    let mut pts = [start, [start[0] + step, start[1]], [start[0], start[1] + step]];
    let mut vals = pts.map(&f);
    for _ in 0..iters {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        let (b, m, w) = (idx[0], idx[1], idx[2]);
        if (vals[w] - vals[b]).abs() <= 1e-16 * (1.0 + vals[b].abs()) {
            break;
        }
        let c = [(pts[b][0] + pts[m][0]) / 2.0, (pts[b][1] + pts[m][1]) / 2.0];
        let along = |t: f64| [c[0] + t * (pts[w][0] - c[0]), c[1] + t * (pts[w][1] - c[1])];
        let r = along(-1.0);
        let fr = f(r);
        if fr < vals[b] {
            let e = along(-2.0);
            let fe = f(e);
            (pts[w], vals[w]) = if fe < fr { (e, fe) } else { (r, fr) };
        } else if fr < vals[m] {
            (pts[w], vals[w]) = (r, fr);
        } else {
            let k = along(if fr < vals[w] { -0.5 } else { 0.5 });
            let fk = f(k);
            if fk < vals[w].min(fr) {
                (pts[w], vals[w]) = (k, fk);
            } else {
                for i in [m, w] {
                    pts[i] = [(pts[i][0] + pts[b][0]) / 2.0, (pts[i][1] + pts[b][1]) / 2.0];
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    let b = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    (pts[b], vals[b])
}

/// Dense grid over `(ln λ, φ)` followed by Nelder-Mead polishing of the best
/// cells; `ln λ` is confined to `[−40, 40]`.
pub fn numeric_min_conditional_det(f: &TwoModeStandardForm) -> f64 {
    let g = |x: [f64; 2]| conditional_det(f, x[0].clamp(-40.0, 40.0).exp(), x[1]);
    let mut cells = Vec::new();
    for i in 0..=160 {
        let t = -40.0 + 0.5 * i as f64;
        for j in 0..24 {
            let phi = std::f64::consts::PI * j as f64 / 24.0;
            cells.push(([t, phi], g([t, phi])));
        }
    }
    cells.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut best = cells[0].1;
    for (x, _) in cells.iter().take(4) {
        let (_, v) = nelder_mead(g, *x, 0.3, 2000);
        best = best.min(v);
    }
    best
}

fn closed_forms(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    for i in 0..rep.draws {
        let f = random_standard_form(rng);
        let (closed, branch) = min_conditional_det(&f);
        rep.count(match branch {
            Branch::Homodyne => "homodyne",
            Branch::Interior => "interior",
            _ => "other",
        });
        let numeric = numeric_min_conditional_det(&f);
        // compare the resulting J₂ = ln a − ½ ln det
        let dev = 0.5 * (closed.ln() - numeric.ln()).abs();
        rep.worst = rep.worst.max(dev);
        if dev > 1e-7 {
            rep.fail(i, format!("closed form {closed} vs numeric {numeric} ({branch:?}), form {f:?}"), &f.state());
        }
    }
    Ok(())
}

fn hierarchy(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    for i in 0..rep.draws {
        let (st, _) = random_state_with(2, PurityClass::Mixed, true, rng)?;
        let e2 = entanglement_e2_two_mode(&st)?.value;
        let jab = classical_correlations_j2(&st, Direction::AB)?.value;
        let jba = classical_correlations_j2(&st, Direction::BA)?.value;
        let dab = discord_d2(&st, Direction::AB)?.value;
        let dba = discord_d2(&st, Direction::BA)?.value;
        if e2 > 0.0 {
            rep.count("entangled");
        }
        let gap = jab.min(jba) - e2;
        rep.worst = rep.worst.min(gap).min(dab).min(dba);
        if gap < -1e-7 {
            rep.fail(i, format!("min J₂ = {} below E₂ = {e2}", jab.min(jba)), &st);
        }
        if dab.min(dba) < -1e-9 {
            rep.fail(i, format!("negative discord: D₂(A|B) = {dab}, D₂(B|A) = {dba}"), &st);
        }
    }
    Ok(())
}
