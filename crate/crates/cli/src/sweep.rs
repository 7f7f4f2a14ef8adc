use cvgauss::{squeezing_from_db, thermal, three_mode_pure, two_mode_squeezed, Error, GaussianState, Result};

use crate::args::SweepArgs;
use crate::measure::{evaluate, Measure};

/// A state family indexed by one or two named parameters.
#[derive(Debug, Clone, PartialEq)]
enum Family {
    Thermal,
    Tmss { db: bool },
    /// Fixed `(a1, a2, a3)`; swept entries are overwritten per point.
    ThreeMode([f64; 3]),
}

fn family_of(name: &str) -> Result<Family> {
    match name {
        "nbar" => Ok(Family::Thermal),
        "r" => Ok(Family::Tmss { db: false }),
        "db" => Ok(Family::Tmss { db: true }),
        "a1" | "a2" | "a3" => Ok(Family::ThreeMode([f64::NAN; 3])),
        _ => Err(Error::InvalidArgument(format!("unknown sweep parameter '{name}'"))),
    }
}

fn axis(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 || !(start < stop) {
        return Err(Error::InvalidArgument("sweep needs steps ≥ 2 and start < stop".into()));
    }
    let h = (stop - start) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { stop } else { start + h * i as f64 }).collect())
}

fn slot(name: &str) -> usize {
    match name {
        "a1" => 0,
        "a2" => 1,
        _ => 2,
    }
}

pub struct Sweep {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Grid points skipped because the family has no physical state there.
    pub skipped: Vec<String>,
}

pub fn run(args: &SweepArgs) -> Result<Sweep> {
    let mut family = family_of(&args.param)?;
    let measures: Vec<Measure> = args.measures.iter().map(|m| Measure::parse_short(m)).collect::<Result<_>>()?;
    let xs = axis(args.start, args.stop, args.steps)?;
    let ys = match &args.param2 {
        Some(p2) => {
            let same = matches!((&family, family_of(p2)?), (Family::ThreeMode(_), Family::ThreeMode(_)));
            if !same || *p2 == args.param {
                return Err(Error::InvalidArgument(
                    "a second sweep parameter must be a different a1/a2/a3 entry".into(),
                ));
            }
            Some(axis(args.start2.unwrap_or(0.0), args.stop2.unwrap_or(0.0), args.steps2.unwrap_or(0))?)
        }
        None => None,
    };
    if let Family::ThreeMode(a) = &mut family {
        for f in &args.fixed {
            let (k, v) = f
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("--fixed expects NAME=VALUE, got '{f}'")))?;
            if !matches!(k, "a1" | "a2" | "a3") {
                return Err(Error::InvalidArgument(format!("unknown fixed parameter '{k}'")));
            }
            a[slot(k)] = v
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad value in --fixed {f}")))?;
        }
        a[slot(&args.param)] = 0.0;
        if let Some(p2) = &args.param2 {
            a[slot(p2)] = 0.0;
        }
        if a.iter().any(|x| x.is_nan()) {
            return Err(Error::InvalidArgument("three-mode sweeps need --fixed values for the other entries".into()));
        }
    } else if !args.fixed.is_empty() {
        return Err(Error::InvalidArgument("--fixed only applies to a1/a2/a3 sweeps".into()));
    }

    let mut header = vec![args.param.clone()];
    header.extend(args.param2.iter().cloned());
    header.extend(args.measures.iter().cloned());
    let mut out = Sweep {
        header,
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    let points: Vec<Vec<f64>> = match &ys {
        Some(ys) => xs.iter().flat_map(|&x| ys.iter().map(move |&y| vec![x, y])).collect(),
        None => xs.iter().map(|&x| vec![x]).collect(),
    };
    for p in points {
        let label = describe(args, &p);
        let state = match build(&family, args, &p) {
            Ok(s) => s,
            Err(Error::InvalidState(msg)) => {
                out.skipped.push(format!("{label}: {msg}"));
                continue;
            }
            Err(e) => return Err(with_context(e, &label)),
        };
        let mut row = p.clone();
        for m in &measures {
            let r = evaluate(&state, m, None).map_err(|e| with_context(e, &label))?;
            row.push(r.value_nats);
        }
        out.rows.push(row);
    }
    Ok(out)
}

fn describe(args: &SweepArgs, p: &[f64]) -> String {
    let mut s = format!("{}={}", args.param, p[0]);
    if let Some(p2) = &args.param2 {
        s += &format!(", {p2}={}", p[1]);
    }
    s
}

fn build(family: &Family, args: &SweepArgs, p: &[f64]) -> Result<GaussianState> {
    match family {
        Family::Thermal => thermal(&[p[0]]),
        Family::Tmss { db } => two_mode_squeezed(if *db { squeezing_from_db(p[0])? } else { p[0] }),
        Family::ThreeMode(fixed) => {
            let mut a = *fixed;
            a[slot(&args.param)] = p[0];
            if let Some(p2) = &args.param2 {
                a[slot(p2)] = p[1];
            }
            three_mode_pure(a[0], a[1], a[2])
        }
    }
}

fn with_context(e: Error, label: &str) -> Error {
    match e {
        Error::InvalidArgument(m) => Error::InvalidArgument(format!("at {label}: {m}")),
        Error::InvalidState(m) => Error::InvalidState(format!("at {label}: {m}")),
        Error::Numeric(m) => Error::Numeric(format!("at {label}: {m}")),
    }
}
