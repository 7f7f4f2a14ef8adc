mod args;
mod measure;
mod sweep;

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use num_complex::Complex64;
use serde::Serialize;

use cvgauss::checks::{self, Suite, DEFAULT_SEED};
use cvgauss::io::{state_from_json, state_to_json, write_csv, write_wigner_csv};
use cvgauss::phase_space::Grid2D;
use cvgauss::state::PHYSICAL_TOL;
use cvgauss::{
    coherent, squeezed, squeezing_from_db, thermal, three_mode_pure, two_mode_squeezed, vacuum,
    wigner_grid, CircuitDocument, Error, GaussianState,
};

use args::{CheckArgs, Cli, Command, MeasureArgs, StateArgs};
use measure::{evaluate, parse_direction, Measure};

/// Exit status for a property suite that found a counterexample.
const EXIT_CHECK_FAILED: u8 = 1;

enum Failure {
    Lib(Error),
    Io(String),
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::CheckFailed) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) => 2,
                Error::InvalidState(_) => 3,
                Error::Numeric(_) => 4,
            })
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::State(a) => cmd_state(cli, a),
        Command::Circuit(a) => {
            let state = read_state(&a.state, a.allow_unphysical)?;
            let text = read_input(&a.circuit)?;
            let out = CircuitDocument::from_json(&text)?.run(&state)?;
            emit(cli, &state_to_json(&out))
        }
        Command::Measure(a) => cmd_measure(cli, a),
        Command::Sweep(a) => {
            let s = sweep::run(a)?;
            if !cli.quiet {
                for msg in &s.skipped {
                    eprintln!("skipped unphysical point {msg}");
                }
            }
            let header: Vec<&str> = s.header.iter().map(String::as_str).collect();
            let mut buf = Vec::new();
            write_csv(&mut buf, &header, s.rows)?;
            emit_bytes(cli, &buf)
        }
        Command::Wigner(a) => {
            let state = read_state(&a.state, false)?;
            let grid = Grid2D::centered(&state, a.mode, a.width, a.points)?;
            let w = wigner_grid(&state, &grid)?;
            let mut buf = Vec::new();
            write_wigner_csv(&mut buf, &w)?;
            emit_bytes(cli, &buf)
        }
        Command::Check(a) => cmd_check(cli, a),
    }
}

fn cmd_state(cli: &Cli, a: &StateArgs) -> Outcome {
    let r = |x: f64| if a.db { squeezing_from_db(x) } else { Ok(x) };
    let state = if let Some(n) = a.vacuum {
        vacuum(n)?
    } else if let Some(v) = &a.coherent {
        if v.len() % 2 != 0 {
            return Err(Error::InvalidArgument("--coherent takes RE IM pairs".into()).into());
        }
        let alphas: Vec<Complex64> = v.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
        coherent(&alphas)?
    } else if let Some(n) = &a.thermal {
        thermal(n)?
    } else if let Some(x) = a.tmss {
        two_mode_squeezed(r(x)?)?
    } else if let Some(v) = &a.threemode {
        three_mode_pure(v[0], v[1], v[2])?
    } else if let Some(v) = &a.squeezed {
        squeezed(Complex64::new(v[0], v[1]), r(v[2])?, v[3])?
    } else {
        unreachable!("clap requires one constructor")
    };
    if a.check && !cli.quiet {
        eprintln!("{}", physicality_report(&state)?);
    }
    emit(cli, &state_to_json(&state))
}

#[derive(Serialize)]
struct PhysicalityReport {
    physical: bool,
    pure: bool,
    purity: f64,
    symplectic_spectrum: Vec<f64>,
    mean_photon_numbers: Vec<f64>,
}

fn physicality_report(state: &GaussianState) -> Result<String, Error> {
    let spectrum = state.spectrum()?.nu;
    let rep = PhysicalityReport {
        physical: state.is_physical(PHYSICAL_TOL),
        pure: spectrum.iter().all(|nu| (nu - 1.0).abs() < 1e-9),
        purity: 1.0 / state.determinant().sqrt(),
        symplectic_spectrum: spectrum,
        mean_photon_numbers: state.mean_photon_numbers(),
    };
    Ok(serde_json::to_string_pretty(&rep).expect("report serializes"))
}

fn cmd_measure(cli: &Cli, a: &MeasureArgs) -> Outcome {
    let state = read_state(&a.state, a.allow_unphysical)?;
    let dir = parse_direction(&a.direction)?;
    let m = if a.purity {
        Measure::Purity
    } else if a.renyi2 {
        Measure::Renyi2
    } else if a.renyi {
        Measure::Renyi(a.alpha.expect("clap enforces --alpha"))
    } else if a.vn {
        Measure::VonNeumann
    } else if a.mutual {
        Measure::Mutual
    } else if a.epr {
        Measure::Epr
    } else if a.e2 {
        Measure::E2
    } else if a.j2 {
        Measure::J2(dir)
    } else if a.d2 {
        Measure::D2(dir)
    } else if a.residual {
        Measure::Residual(a.focus)
    } else if a.ssa {
        let g = a.groups.clone().unwrap_or_else(|| vec![0, 1, 2]);
        let order: [usize; 3] = g
            .try_into()
            .map_err(|_| Error::InvalidArgument("--groups takes exactly three modes".into()))?;
        Measure::Ssa(order)
    } else {
        Measure::Monogamy(a.focus)
    };
    let report = evaluate(&state, &m, a.part_a.as_deref())?;
    emit(cli, &report.to_json())
}

fn cmd_check(cli: &Cli, a: &CheckArgs) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    let seed = a.seed.unwrap_or(DEFAULT_SEED);
    if !cli.quiet {
        let origin = if a.seed.is_some() { "" } else { " (default)" };
        eprintln!("suite {suite}: {} draws, seed {seed}{origin}", a.draws);
    }
    let rep = checks::run(suite, a.draws, seed)?;
    let notes: Vec<String> = rep.notes.iter().map(|(k, n)| format!("{k}={n}")).collect();
    let summary = format!(
        "{} {suite}: draws={} seed={seed} worst={:e}{}{}",
        if rep.passed() { "PASS" } else { "FAIL" },
        rep.draws,
        rep.worst,
        if notes.is_empty() { "" } else { " " },
        notes.join(" ")
    );
    match &rep.failure {
        None => emit(cli, &summary),
        Some(c) => {
            eprintln!("{summary}");
            eprintln!("counterexample at draw {}: {}", c.draw, c.detail);
            emit(cli, &state_to_json(&c.state))?;
            Err(Failure::CheckFailed)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn read_state(path: &Path, allow_unphysical: bool) -> Result<GaussianState, Failure> {
    Ok(state_from_json(&read_input(path)?, allow_unphysical)?)
}

fn emit(cli: &Cli, text: &str) -> Outcome {
    emit_bytes(cli, format!("{text}\n").as_bytes())
}

fn emit_bytes(cli: &Cli, bytes: &[u8]) -> Outcome {
    match &cli.out {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            Ok(out.flush()?)
        }
    }
}
