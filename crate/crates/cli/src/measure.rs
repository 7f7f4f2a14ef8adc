use std::str::FromStr;

use cvgauss::{
    check_monogamy, check_strong_subadditivity, classical_correlations_j2, discord_d2,
    entanglement_e2_pure, entanglement_e2_two_mode, epr_parameter, mutual_information_renyi2,
    renyi2_entropy, renyi_entropy, residual_tripartite_e2, von_neumann_entropy, Bipartition,
    Direction, Error, GaussianState, MeasureReport, MeasureResult, Result,
};

/// One measure with its options resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Purity,
    Renyi2,
    Renyi(f64),
    VonNeumann,
    Mutual,
    Epr,
    E2,
    J2(Direction),
    D2(Direction),
    Residual(usize),
    Ssa([usize; 3]),
    Monogamy(usize),
}

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::Purity => "purity",
            Measure::Renyi2 => "renyi2",
            Measure::Renyi(_) => "renyi",
            Measure::VonNeumann => "vn",
            Measure::Mutual => "mutual",
            Measure::Epr => "epr",
            Measure::E2 => "e2",
            Measure::J2(_) => "j2",
            Measure::D2(_) => "d2",
            Measure::Residual(_) => "residual",
            Measure::Ssa(_) => "ssa",
            Measure::Monogamy(_) => "monogamy",
        }
    }

    /// Parses the compact sweep syntax, e.g. `renyi:0.5`, `d2-ba`, `residual:1`.
    pub fn parse_short(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown measure '{s}'"));
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<f64> { a.ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let index = |a: Option<&str>| -> Result<usize> { a.map_or(Ok(0), |a| a.parse().map_err(|_| bad())) };
        Ok(match head {
            "purity" => Measure::Purity,
            "renyi2" => Measure::Renyi2,
            "renyi" => Measure::Renyi(num(arg)?),
            "vn" => Measure::VonNeumann,
            "mutual" => Measure::Mutual,
            "epr" => Measure::Epr,
            "e2" => Measure::E2,
            "j2" => Measure::J2(Direction::AB),
            "j2-ba" => Measure::J2(Direction::BA),
            "d2" => Measure::D2(Direction::AB),
            "d2-ba" => Measure::D2(Direction::BA),
            "residual" => Measure::Residual(index(arg)?),
            "monogamy" => Measure::Monogamy(index(arg)?),
            "ssa" => Measure::Ssa([0, 1, 2]),
            _ => return Err(bad()),
        })
    }
}

pub fn parse_direction(s: &str) -> Result<Direction> {
    Direction::from_str(s)
}

/// Evaluates a measure. `part_a` selects party A for cut-based measures and
/// the reduced state for entropies.
pub fn evaluate(state: &GaussianState, m: &Measure, part_a: Option<&[usize]>) -> Result<MeasureReport> {
    let n = state.n_modes();
    let cut = || match part_a {
        Some(a) => {
            let b: Vec<usize> = (0..n).filter(|k| !a.contains(k)).collect();
            Bipartition::new(a.to_vec(), b)
        }
        None => Bipartition::single(0, n),
    };
    let reduced = || match part_a {
        Some(a) => state.partial_trace(a),
        None => Ok(state.clone()),
    };
    let entropy = |v: f64| Ok(MeasureReport::new(m.name(), None, MeasureResult::plain(v)));
    match m {
        Measure::Purity => Ok(dimensionless(m, reduced()?.purity()?)),
        Measure::Renyi2 => entropy(renyi2_entropy(&reduced()?)),
        Measure::Renyi(alpha) => entropy(renyi_entropy(&reduced()?, *alpha)?),
        Measure::VonNeumann => entropy(von_neumann_entropy(&reduced()?)?),
        Measure::Mutual => entropy(mutual_information_renyi2(state, &cut()?)?),
        Measure::Epr => Ok(dimensionless(m, epr_parameter(state)?)),
        Measure::E2 => {
            if n == 2 {
                Ok(MeasureReport::new(m.name(), None, entanglement_e2_two_mode(state)?))
            } else {
                entropy(entanglement_e2_pure(state, &cut()?)?)
            }
        }
        Measure::J2(dir) => Ok(MeasureReport::new(m.name(), Some(*dir), classical_correlations_j2(state, *dir)?)),
        Measure::D2(dir) => Ok(MeasureReport::new(m.name(), Some(*dir), discord_d2(state, *dir)?)),
        Measure::Residual(focus) => entropy(residual_tripartite_e2(state, *focus)?),
        Measure::Ssa(order) => {
            let [a, b, c] = order;
            entropy(check_strong_subadditivity(state, [&[*a], &[*b], &[*c]])?)
        }
        Measure::Monogamy(focus) => entropy(check_monogamy(state, *focus)?),
    }
}

/// Purity and the EPR parameter carry no information unit; both report
/// fields hold the plain value.
fn dimensionless(m: &Measure, v: f64) -> MeasureReport {
    let mut r = MeasureReport::new(m.name(), None, MeasureResult::plain(v));
    r.value_bits = v;
    r
}

