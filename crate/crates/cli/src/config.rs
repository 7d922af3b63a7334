use hc_core::rational::{parse_rational, q, qf, Q};
use hc_core::{
    seq_family, seq_generalized_hermite, seq_hermite, seq_order2, seq_order3, GoverningSequence,
};

use crate::args::{Family, RunArgs};
use crate::error::CliError;

fn param(name: &str, value: &Option<String>) -> Result<Option<Q>, CliError> {
    value
        .as_deref()
        .map(|s| parse_rational(s).map_err(|e| CliError::Input(format!("--{name}: {e}"))))
        .transpose()
}

fn required(name: &str, value: &Option<String>, family: &str) -> Result<Q, CliError> {
    param(name, value)?.ok_or_else(|| CliError::Input(format!("family {family} needs --{name}")))
}

/// Builds the governing sequence named by the flags up to `v_len`.
pub fn build_sequence(args: &RunArgs, len: usize) -> Result<GoverningSequence, CliError> {
    if args.n_max < 2 {
        return Err(CliError::Input(format!(
            "--n-max must be at least 2, got {}",
            args.n_max
        )));
    }
    let b0 = param("b0-squared", &args.b0_squared)?;
    let seq = match args.family {
        Family::Hermite => {
            let s = seq_hermite(len)?;
            match b0 {
                Some(b) => s.with_b0_squared(b)?,
                None => s,
            }
        }
        Family::Classical => {
            let gamma = required("gamma", &args.gamma, "classical")?;
            let alpha = param("alpha", &args.alpha)?.unwrap_or_else(|| q(1));
            seq_generalized_hermite(&gamma, &alpha, len)?
        }
        Family::Family => {
            let v2 = required("v2", &args.v2, "family")?;
            let v1 = param("v1", &args.v1)?.unwrap_or_else(|| q(1));
            seq_family(&v1, &v2, b0.unwrap_or_else(|| q(1)), len)?
        }
        Family::Order2 => {
            let v1 = required("v1", &args.v1, "order2")?;
            seq_order2(&v1, len, b0.unwrap_or_else(|| qf(1, 2)))?
        }
        Family::Order3 => {
            let v1 = required("v1", &args.v1, "order3")?;
            let v2 = required("v2", &args.v2, "order3")?;
            seq_order3(&v1, &v2, len, b0.unwrap_or_else(|| qf(1, 2)))?
        }
        Family::CustomFile => {
            let path = args
                .seed_file
                .as_ref()
                .ok_or_else(|| CliError::Input("family custom-file needs --seed-file".into()))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let seq = GoverningSequence::from_json(&text)?;
            let seq = match b0 {
                Some(b) => seq.with_b0_squared(b)?,
                None => seq,
            };
            if seq.max_index() < len {
                return Err(CliError::Input(format!(
                    "seed file stops at v_{}, the run needs v_{len}",
                    seq.max_index()
                )));
            }
            seq
        }
    };
    log::info!(
        "built {:?} sequence up to v_{}",
        args.family,
        seq.max_index()
    );
    Ok(seq)
}
