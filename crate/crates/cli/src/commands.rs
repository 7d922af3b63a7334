use std::io::Write;

use serde::{Deserialize, Serialize};

use hc_core::measure::{orthonormality_check, MeasureSpec};
use hc_core::ode::ode_grid_report;
use hc_core::oscillator::{
    build_operators, commutator_check, spectrum_check, square_lowering_identity,
};
use hc_core::rational::{format_rational, to_f64};
use hc_core::sequence::{is_special_family, SequenceFile};
use hc_core::{
    bracket, classify_reduced, epsilons_from_sequence, validate, GoverningSequence,
    PolynomialSystem,
};

use crate::args::{Format, RunArgs};
use crate::config::build_sequence;
use crate::error::CliError;

const MARGIN: usize = 4;
const ORTHONORMALITY_TOL: f64 = 1e-8;
const ODE_TOL: f64 = 1e-9;
const OPERATOR_TOL: f64 = 1e-10;

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(args: &RunArgs, text: &str) -> Result<(), CliError> {
    match &args.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn system(args: &RunArgs, len: usize) -> Result<PolynomialSystem, CliError> {
    Ok(PolynomialSystem::new(build_sequence(args, len)?)?)
}

#[derive(Serialize)]
struct BuildSummary {
    sequence: SequenceFile,
    monotone: bool,
    first_descent: Option<usize>,
    compatible: bool,
    first_violation: Option<(usize, usize)>,
    special_family: Option<(String, String)>,
}

pub fn build(args: &RunArgs) -> Result<(), CliError> {
    let seq = build_sequence(args, args.n_max)?;
    let report = validate(&seq)?;
    let text = match args.format {
        Format::Json => to_json(&BuildSummary {
            sequence: SequenceFile::from(&seq),
            monotone: report.monotone(),
            first_descent: report.first_descent,
            compatible: report.compatible(),
            first_violation: report.first_violation,
            special_family: is_special_family(&seq)
                .map(|(a, b)| (format_rational(&a), format_rational(&b))),
        }),
        Format::Csv => {
            let br = bracket(&seq)?;
            let mut s = String::from("n,v,bracket\n");
            for (n, v) in seq.values().iter().enumerate() {
                s.push_str(&format!(
                    "{n},{},{}\n",
                    format_rational(v),
                    format_rational(br.get(n))
                ));
            }
            s
        }
    };
    emit(args, &text)
}

/// One row of `hc table`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    /// `b_{n-1}^2`.
    pub b_sq: String,
    /// `b_{n-1}`, 17 significant digits.
    pub b: String,
    /// `gamma_n^2`.
    pub gamma_sq: String,
    /// Squared normalization of `psi_n = sqrt(psi_norm_sq) P_n`.
    pub psi_norm_sq: String,
    /// Monic coefficients of `P_n`, constant term first.
    pub monic: Vec<String>,
}

pub fn table_rows(sys: &PolynomialSystem, n_max: usize) -> Vec<TableRow> {
    (0..=n_max)
        .map(|n| {
            let b_sq = sys.b_square(n as isize - 1);
            TableRow {
                n,
                b: real(to_f64(&b_sq).sqrt()),
                b_sq: format_rational(&b_sq),
                gamma_sq: format_rational(sys.gamma().square(n)),
                psi_norm_sq: format_rational(sys.norm_sq(n)),
                monic: sys.monic(n).coeffs().iter().map(format_rational).collect(),
            }
        })
        .collect()
}

pub fn table(args: &RunArgs) -> Result<(), CliError> {
    let sys = system(args, args.n_max)?;
    let rows = table_rows(&sys, args.n_max);
    let text = match args.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from("n,b_sq,b,gamma_sq,psi_norm_sq,monic\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n,
                    r.b_sq,
                    r.b,
                    r.gamma_sq,
                    r.psi_norm_sq,
                    r.monic.join(";")
                ));
            }
            s
        }
    };
    emit(args, &text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    status: Status,
    value: Option<f64>,
    tolerance: Option<f64>,
    detail: String,
}

impl Check {
    fn measured(name: &'static str, value: f64, tolerance: f64, detail: String) -> Self {
        let status = if value < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name,
            status,
            value: Some(value),
            tolerance: Some(tolerance),
            detail,
        }
    }

    fn exact(name: &'static str, ok: bool, detail: String) -> Self {
        Check {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            value: None,
            tolerance: None,
            detail,
        }
    }

    fn skipped(name: &'static str, detail: String) -> Self {
        Check {
            name,
            status: Status::Skipped,
            value: None,
            tolerance: None,
            detail,
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    n_max: usize,
    dim: usize,
    passed: bool,
    checks: Vec<Check>,
}

fn run_checks(sys: &PolynomialSystem, n_max: usize, dim: usize) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let report = validate(sys.sequence())?;
    checks.push(Check::exact(
        "compatibility",
        report.compatible(),
        match report.first_violation {
            Some((n, p)) => format!("first violation at (n, p) = ({n}, {p})"),
            None => "holds on the stored range".into(),
        },
    ));

    let mut bad = Vec::new();
    for n in 1..=n_max {
        if !sys.lowering_check(n)?.is_zero() {
            bad.push(n);
        }
    }
    checks.push(Check::exact(
        "lowering",
        bad.is_empty(),
        format!("n = 1..={n_max}, nonzero at {bad:?}"),
    ));

    let mut bad = Vec::new();
    for n in 0..=n_max {
        if sys.psi(n)? != sys.psi_coeffs(n)? {
            bad.push(n);
        }
    }
    checks.push(Check::exact(
        "route_equivalence",
        bad.is_empty(),
        format!("n = 0..={n_max}, differ at {bad:?}"),
    ));

    let params = sys.weight_parameters();
    match &params {
        Ok(w) => {
            let spec = MeasureSpec::from_parameters(w)?;
            let gram = orthonormality_check(sys, &spec, n_max)?;
            checks.push(Check::measured(
                "orthonormality",
                gram.max_deviation,
                ORTHONORMALITY_TOL,
                format!("gamma = {}, alpha = {}", w.gamma, w.alpha),
            ));
            let worst = ode_grid_report(sys, w, n_max)?
                .iter()
                .fold(0.0f64, |m, r| m.max(r.max_abs_residual));
            checks.push(Check::measured(
                "ode",
                worst,
                ODE_TOL,
                format!("n = 0..={n_max}, 50-point grid"),
            ));
        }
        Err(e) => {
            checks.push(Check::skipped("orthonormality", e.to_string()));
            checks.push(Check::skipped("ode", e.to_string()));
        }
    }

    let ops = build_operators(sys, dim)?;
    let comm = commutator_check(&ops, MARGIN)?;
    let worst = [
        Some(comm.max_deviation),
        comm.classical_deviation,
        comm.family_deviation,
    ]
    .into_iter()
    .flatten()
    .fold(0.0f64, f64::max);
    checks.push(Check::measured(
        "commutator",
        worst,
        OPERATOR_TOL,
        format!("dim {dim}, margin {MARGIN}"),
    ));
    let spec = spectrum_check(&ops, sys, MARGIN)?;
    checks.push(Check::measured(
        "spectrum",
        spec.max_deviation.max(spec.off_diagonal),
        OPERATOR_TOL,
        format!("dim {dim}, margin {MARGIN}"),
    ));
    if params.is_ok() {
        let d = square_lowering_identity(&ops, sys, MARGIN)?;
        checks.push(Check::measured(
            "square_lowering",
            d,
            OPERATOR_TOL,
            format!("c1 = {}", sys.c1()),
        ));
    } else {
        checks.push(Check::skipped(
            "square_lowering",
            "not a two-parameter family member".into(),
        ));
    }
    Ok(checks)
}

fn failure(what: &str, report: String) -> CliError {
    CliError::CheckFailed {
        summary: format!("{what} failed"),
        report,
    }
}

pub fn verify(args: &RunArgs, orthonormality: bool) -> Result<(), CliError> {
    if orthonormality {
        let sys = system(args, args.n_max)?;
        let w = sys.weight_parameters()?;
        let gram = orthonormality_check(&sys, &MeasureSpec::from_parameters(&w)?, args.n_max)?;
        emit(args, &gram.deviation_csv())?;
        if gram.max_deviation >= ORTHONORMALITY_TOL {
            return Err(failure("orthonormality", to_json(&gram)));
        }
        return Ok(());
    }
    let sys = system(args, args.n_max.max(args.dim))?;
    let checks = run_checks(&sys, args.n_max, args.dim)?;
    for c in &checks {
        log::info!("{}: {:?}", c.name, c.status);
    }
    let report = VerifyReport {
        n_max: args.n_max,
        dim: args.dim,
        passed: checks.iter().all(|c| c.status != Status::Fail),
        checks,
    };
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("check,status,value,tolerance\n");
            for c in &report.checks {
                let status = serde_json::to_value(c.status).expect("status serializes");
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    c.name,
                    status.as_str().unwrap_or_default(),
                    c.value.map(real).unwrap_or_default(),
                    c.tolerance.map(real).unwrap_or_default()
                ));
            }
            s
        }
    };
    emit(args, &text)?;
    if !report.passed {
        let failed: Vec<&Check> = report
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect();
        return Err(failure("verification", to_json(&failed)));
    }
    Ok(())
}

pub fn ode(args: &RunArgs) -> Result<(), CliError> {
    let sys = system(args, args.n_max)?;
    let w = sys.weight_parameters()?;
    let reports = ode_grid_report(&sys, &w, args.n_max)?;
    let text = match args.format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut s = String::from("n,x,residual\n");
            for r in &reports {
                for (x, res) in &r.points {
                    s.push_str(&format!("{},{},{}\n", r.n, real(*x), real(*res)));
                }
            }
            s
        }
    };
    emit(args, &text)?;
    let bad: Vec<_> = reports
        .iter()
        .filter(|r| r.max_abs_residual >= ODE_TOL)
        .collect();
    if !bad.is_empty() {
        return Err(failure("ode", to_json(&bad)));
    }
    Ok(())
}

pub fn spectrum(args: &RunArgs) -> Result<(), CliError> {
    let sys = system(args, args.dim)?;
    let ops = build_operators(&sys, args.dim)?;
    let report = spectrum_check(&ops, &sys, MARGIN)?;
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("n,lambda_b,lambda_v,lambda_h,lambda_classical\n");
            for r in &report.rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    real(r.from_b),
                    real(r.from_v),
                    real(r.from_h),
                    r.classical.map(real).unwrap_or_default()
                ));
            }
            s
        }
    };
    emit(args, &text)?;
    if report.max_deviation >= OPERATOR_TOL || report.off_diagonal >= OPERATOR_TOL {
        return Err(failure("spectrum", to_json(&report)));
    }
    Ok(())
}

#[derive(Serialize)]
struct Classification {
    reduced: bool,
    special_family: bool,
    v1: Option<String>,
    v2: Option<String>,
}

pub fn classify(args: &RunArgs) -> Result<(), CliError> {
    let sys = system(args, args.n_max)?;
    let reduced = classify_reduced(&sys, args.n_max)?;
    let family = is_special_family(sys.sequence());
    let c = Classification {
        reduced,
        special_family: family.is_some(),
        v1: family.as_ref().map(|(a, _)| format_rational(a)),
        v2: family.as_ref().map(|(_, b)| format_rational(b)),
    };
    let text = match args.format {
        Format::Json => to_json(&c),
        Format::Csv => {
            let mut s = format!(
                "reduced: {}\nspecial_family: {}\n",
                c.reduced, c.special_family
            );
            if let (Some(v1), Some(v2)) = (&c.v1, &c.v2) {
                s.push_str(&format!("v1: {v1}\nv2: {v2}\n"));
            }
            s
        }
    };
    emit(args, &text)?;
    if c.reduced != c.special_family {
        return Err(failure("classification", to_json(&c)));
    }
    Ok(())
}

#[derive(Serialize)]
struct EpsilonList {
    epsilons: Vec<String>,
    order: String,
}

pub fn epsilons(args: &RunArgs) -> Result<(), CliError> {
    let horizon = args.k.unwrap_or(args.n_max);
    if horizon == 0 {
        return Err(CliError::Input("-K must be at least 1".into()));
    }
    let seq: GoverningSequence = build_sequence(args, horizon)?;
    let op = epsilons_from_sequence(&seq, horizon)?;
    let list = EpsilonList {
        epsilons: op.epsilons().iter().map(format_rational).collect(),
        order: op.order().to_string(),
    };
    let text = match args.format {
        Format::Json => to_json(&list),
        Format::Csv => {
            let mut s = list.epsilons.join("\n");
            s.push_str(&format!("\norder: {}\n", list.order));
            s
        }
    };
    emit(args, &text)
}
