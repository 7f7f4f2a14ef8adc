//! JSON documents for states, circuits and measure reports, plus CSV helpers.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, invalid_state, Error, Result};
use crate::linalg::{RMat, RVec};
use crate::measures::{nats_to_bits, Branch, Direction, MeasureResult, Optimizer};
use crate::ops::{apply_gate, condition, displace, seed, GateKind, GateSpec};
use crate::phase_space::WignerGrid;
use crate::state::{GaussianState, PHYSICAL_TOL};

pub const ORDERING: &str = "qpqp";
pub const HBAR_CONVENTION: &str = "doubled";
/// Largest tolerated `|σ_ij − σ_ji|` in a state document.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Serialized form of a Gaussian state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub n_modes: usize,
    pub ordering: String,
    pub hbar_convention: String,
    pub d: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
}

impl StateDocument {
    pub fn from_state(state: &GaussianState) -> Self {
        let s = state.sigma();
        Self {
            n_modes: state.n_modes(),
            ordering: ORDERING.into(),
            hbar_convention: HBAR_CONVENTION.into(),
            d: state.d().iter().copied().collect(),
            sigma: (0..s.nrows())
                .map(|i| (0..s.ncols()).map(|j| s[(i, j)]).collect())
                .collect(),
        }
    }

    /// Validates the document. Unphysical covariances are rejected unless
    /// `allow_unphysical` is set.
    pub fn to_state(&self, allow_unphysical: bool) -> Result<GaussianState> {
        if self.ordering != ORDERING {
            return invalid_arg(format!("unsupported ordering '{}', expected '{ORDERING}'", self.ordering));
        }
        if self.hbar_convention != HBAR_CONVENTION {
            return invalid_arg(format!(
                "unsupported hbar_convention '{}', expected '{HBAR_CONVENTION}'",
                self.hbar_convention
            ));
        }
        let dim = 2 * self.n_modes;
        if self.n_modes == 0 {
            return invalid_arg("n_modes must be positive");
        }
        if self.d.len() != dim {
            return invalid_arg(format!("d has length {}, expected {dim}", self.d.len()));
        }
        if self.sigma.len() != dim || self.sigma.iter().any(|r| r.len() != dim) {
            return invalid_arg(format!("sigma must be {dim}×{dim}"));
        }
        let sigma = RMat::from_fn(dim, dim, |i, j| self.sigma[i][j]);
        if sigma.iter().chain(self.d.iter()).any(|x| !x.is_finite()) {
            return invalid_arg("state document contains non-finite numbers");
        }
        for i in 0..dim {
            for j in 0..i {
                let gap = (sigma[(i, j)] - sigma[(j, i)]).abs();
                if gap > SYMMETRY_TOL {
                    return invalid_arg(format!("sigma is not symmetric: |σ[{i}][{j}] − σ[{j}][{i}]| = {gap:e}"));
                }
            }
        }
        let state = GaussianState::new_unchecked(RVec::from_vec(self.d.clone()), sigma)?;
        if !allow_unphysical && !state.is_physical(PHYSICAL_TOL) {
            return invalid_state("covariance matrix violates the uncertainty principle");
        }
        Ok(state)
    }
}

pub fn state_to_json(state: &GaussianState) -> String {
    serde_json::to_string_pretty(&StateDocument::from_state(state)).expect("state document serializes")
}

pub fn state_from_json(text: &str, allow_unphysical: bool) -> Result<GaussianState> {
    let doc: StateDocument =
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad state document: {e}")))?;
    doc.to_state(allow_unphysical)
}

/// Seed description inside a circuit's measurement step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedDocument {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureStep {
    pub modes: Vec<usize>,
    pub seed: SeedDocument,
}

/// One entry of a circuit document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CircuitStep {
    Measure {
        measure: MeasureStep,
    },
    Gate {
        gate: String,
        targets: Vec<usize>,
        #[serde(default)]
        params: serde_json::Map<String, serde_json::Value>,
    },
}

/// Ordered list of gates, optionally ending with a measurement.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CircuitDocument {
    pub steps: Vec<CircuitStep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DisplaceParams {
    re: f64,
    #[serde(default)]
    im: f64,
}

impl CircuitDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad circuit document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    /// Applies the steps left to right. `displace` takes a coherent amplitude
    /// `{"re", "im"}` per target, matching the coherent-state constructor.
    pub fn run(&self, state: &GaussianState) -> Result<GaussianState> {
        let mut st = state.clone();
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                CircuitStep::Measure { measure } => {
                    if i + 1 != self.steps.len() {
                        return invalid_arg(format!("step {i}: a measurement must be the last step"));
                    }
                    let s = seed(&measure.seed.tag, measure.seed.lambda, measure.seed.phi)?;
                    st = condition(&st, &measure.modes, &s)?;
                }
                CircuitStep::Gate { gate, targets, params } if gate == "displace" => {
                    let p: DisplaceParams = serde_json::from_value(serde_json::Value::Object(params.clone()))
                        .map_err(|e| Error::InvalidArgument(format!("step {i}: displace params: {e}")))?;
                    let alpha = Complex64::new(p.re, p.im);
                    let mut delta = RVec::zeros(2 * st.n_modes());
                    for &t in targets {
                        if t >= st.n_modes() {
                            return invalid_arg(format!("step {i}: target {t} out of range"));
                        }
                        delta[2 * t] += std::f64::consts::SQRT_2 * alpha.re;
                        delta[2 * t + 1] += std::f64::consts::SQRT_2 * alpha.im;
                    }
                    st = displace(&st, &delta)?;
                }
                CircuitStep::Gate { gate, targets, params } => {
                    let mut obj = params.clone();
                    obj.insert("gate".into(), serde_json::Value::String(gate.clone()));
                    let kind: GateKind = serde_json::from_value(serde_json::Value::Object(obj))
                        .map_err(|e| Error::InvalidArgument(format!("step {i}: {e}")))?;
                    let spec = GateSpec::new(kind, targets.clone())
                        .map_err(|e| Error::InvalidArgument(format!("step {i}: {e}")))?;
                    st = apply_gate(&st, &spec)?;
                }
            }
        }
        Ok(st)
    }
}

/// JSON report for a single measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub measure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    pub value_nats: f64,
    pub value_bits: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimizer: Option<Optimizer>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
}

impl MeasureReport {
    pub fn new(measure: impl Into<String>, direction: Option<Direction>, result: MeasureResult) -> Self {
        Self {
            measure: measure.into(),
            direction,
            value_nats: result.value,
            value_bits: nats_to_bits(result.value),
            optimizer: result.optimizer,
            branch: result.branch,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A number with 17 significant digits, locale independent.
pub fn csv_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.16e}")
}

/// Writes a header and numeric rows.
pub fn write_csv<W: Write>(out: &mut W, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> std::io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let line: Vec<String> = row.into_iter().map(csv_number).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

/// `q,p,w` rows of a Wigner grid, `q` varying slowest.
pub fn write_wigner_csv<W: Write>(out: &mut W, grid: &WignerGrid) -> std::io::Result<()> {
    write_csv(out, &["q", "p", "w"], grid.rows().map(|(q, p, w)| vec![q, p, w]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::entanglement_e2_two_mode;
    use crate::state::{coherent, two_mode_squeezed, vacuum};

    #[test]
    fn state_round_trip() {
        let st = two_mode_squeezed(0.7).unwrap();
        let text = state_to_json(&st);
        let back = state_from_json(&text, false).unwrap();
        assert_eq!(back, st);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["ordering"], "qpqp");
        assert_eq!(v["hbar_convention"], "doubled");
        assert_eq!(v["n_modes"], 2);
    }

    #[test]
    fn reader_rejects_bad_documents() {
        let mut doc = StateDocument::from_state(&vacuum(1).unwrap());
        doc.sigma[0][1] = 1e-6;
        assert!(doc.to_state(false).is_err());
        doc.sigma[1][0] = 1e-6;
        assert!(doc.to_state(false).is_ok());
        doc.sigma = vec![vec![0.5, 0.0], vec![0.0, 0.5]];
        assert!(matches!(doc.to_state(false), Err(Error::InvalidState(_))));
        assert!(doc.to_state(true).is_ok());
        doc.ordering = "qqpp".into();
        assert!(doc.to_state(true).is_err());
        assert!(state_from_json("{\"n_modes\": 1}", false).is_err());
    }

    #[test]
    fn circuit_runs_gates_and_measurement() {
        let text = r#"[
            {"gate": "squeeze", "targets": [0], "params": {"s": 0.5, "theta": 0.0}},
            {"gate": "squeeze", "targets": [1], "params": {"s": 0.5, "theta": 3.141592653589793}},
            {"gate": "beamsplitter", "targets": [0, 1], "params": {"tau": 0.5}}
        ]"#;
        let c = CircuitDocument::from_json(text).unwrap();
        let out = c.run(&vacuum(2).unwrap()).unwrap();
        let t = two_mode_squeezed(0.5).unwrap();
        assert!(crate::linalg::max_abs_diff(out.sigma(), t.sigma()) < 1e-9);

        let text = r#"[{"measure": {"modes": [1], "seed": {"tag": "heterodyne"}}}]"#;
        let out = CircuitDocument::from_json(text).unwrap().run(&t).unwrap();
        assert!(crate::linalg::max_abs_diff(out.sigma(), &RMat::identity(2, 2)) < 1e-12);

        let empty = CircuitDocument::from_json("[]").unwrap();
        assert_eq!(empty.run(&t).unwrap(), t);
    }

    #[test]
    fn circuit_errors_and_displacement() {
        let bad = r#"[{"measure": {"modes": [1], "seed": {"tag": "heterodyne"}}},
                      {"gate": "phase", "targets": [0], "params": {"phi": 1.0}}]"#;
        assert!(CircuitDocument::from_json(bad).unwrap().run(&vacuum(2).unwrap()).is_err());
        let typo = r#"[{"gate": "phase", "targets": [0], "params": {"phi": 1.0, "ph": 2.0}}]"#;
        assert!(CircuitDocument::from_json(typo).unwrap().run(&vacuum(1).unwrap()).is_err());
        let missing = r#"[{"gate": "squeeze", "targets": [0], "params": {"s": 1.0}}]"#;
        assert!(CircuitDocument::from_json(missing).unwrap().run(&vacuum(1).unwrap()).is_err());
        let unknown = r#"[{"gate": "teleport", "targets": [0], "params": {}}]"#;
        assert!(CircuitDocument::from_json(unknown).unwrap().run(&vacuum(1).unwrap()).is_err());
        let disp = r#"[{"gate": "displace", "targets": [0], "params": {"re": 0.3, "im": -1.0}}]"#;
        let out = CircuitDocument::from_json(disp).unwrap().run(&vacuum(1).unwrap()).unwrap();
        assert_eq!(out, coherent(&[Complex64::new(0.3, -1.0)]).unwrap());
    }

    #[test]
    fn report_fields() {
        let r = entanglement_e2_two_mode(&two_mode_squeezed(1.0).unwrap()).unwrap();
        let rep = MeasureReport::new("e2", None, r);
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert!(v.get("direction").is_none());
        assert!((v["value_bits"].as_f64().unwrap() * std::f64::consts::LN_2 - r.value).abs() < 1e-15);
        let rep = MeasureReport::new("vn", None, MeasureResult::plain(1.0));
        assert!(rep.to_json().contains("\"measure\": \"vn\""));
    }

    #[test]
    fn csv_formatting() {
        assert_eq!(csv_number(0.1), "1.0000000000000001e-1");
        assert_eq!(csv_number(0.1).parse::<f64>().unwrap(), 0.1);
        let mut buf = Vec::new();
        write_csv(&mut buf, &["x", "y"], vec![vec![1.0, 2.5]]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y\n1.0000000000000000e0,2.5000000000000000e0\n");
    }
}
