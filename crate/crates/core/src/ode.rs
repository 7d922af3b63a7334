//! Second-order equation of the two-parameter family:
//! `x psi'' + (gamma - 2 alpha x^2) psi' + (2 alpha n x - theta_n(gamma)/x) psi = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::{q, to_f64, Q};
use crate::reduction::{eval_surd_combination, sample_grid};
use crate::system::{PolynomialSystem, WeightParameters};

/// Residual of the equation for `psi_n` at `x`, with the system's own
/// parameters. The polynomial part is evaluated exactly at the binary value
/// of `x`, so the result carries only the final rounding.
pub fn ode_residual(sys: &PolynomialSystem, n: usize, x: f64) -> Result<f64> {
    let params = sys.weight_parameters()?;
    ode_residual_with(sys, &params, n, x)
}

/// Same as [`ode_residual`] with caller-supplied `(gamma, alpha)`.
pub fn ode_residual_with(
    sys: &PolynomialSystem,
    params: &WeightParameters,
    n: usize,
    x: f64,
) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain("the equation is singular at x = 0".into()));
    }
    let psi = sys.psi(n)?;
    let p = &psi.monic;
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let two_alpha = q(2) * &params.alpha;
    // collect by powers of x: x p'' + gamma p' - 2a x^2 p' + 2a n x p - theta p / x
    let scale = psi.scale();
    let regular = &(&(&d2.shift_up(1) + &d1.scale(&params.gamma))
        - &d1.shift_up(2).scale(&two_alpha))
        + &p.shift_up(1).scale(&(&two_alpha * q(n as i64)));
    let singular = p.scale(&-params.theta(n));
    eval_surd_combination(&[(scale.clone(), &regular, 0), (scale, &singular, -1)], x)
}

/// Residual report for one `n` over the sample grid.
#[derive(Clone, Debug, Serialize)]
pub struct OdeReport {
    pub n: usize,
    pub gamma: String,
    pub alpha: String,
    pub max_abs_residual: f64,
    pub points: Vec<(f64, f64)>,
}

/// Evaluates the equation for `n = 0..=n_max` on [`sample_grid`].
pub fn ode_grid_report(
    sys: &PolynomialSystem,
    params: &WeightParameters,
    n_max: usize,
) -> Result<Vec<OdeReport>> {
    let grid = sample_grid();
    (0..=n_max)
        .map(|n| {
            let points = grid
                .iter()
                .map(|&x| ode_residual_with(sys, params, n, x).map(|r| (x, r)))
                .collect::<Result<Vec<_>>>()?;
            let max_abs_residual = points.iter().fold(0.0f64, |m, (_, r)| m.max(r.abs()));
            Ok(OdeReport {
                n,
                gamma: params.gamma.to_string(),
                alpha: params.alpha.to_string(),
                max_abs_residual,
                points,
            })
        })
        .collect()
}

/// Floating evaluation of the same expression, for comparison with the
/// exact route; loses accuracy once `psi_n` grows large on the grid.
pub fn ode_residual_f64(
    sys: &PolynomialSystem,
    params: &WeightParameters,
    n: usize,
    x: f64,
) -> Result<f64> {
    let psi = sys.psi(n)?;
    let s = psi.scale().to_f64();
    let p: &Polynomial = &psi.monic;
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let (g, a, th) = (
        to_f64(&params.gamma),
        to_f64(&params.alpha),
        to_f64(&params.theta(n)),
    );
    let value = x * d2.eval_f64(x)
        + (g - 2.0 * a * x * x) * d1.eval_f64(x)
        + (2.0 * a * n as f64 * x - th / x) * p.eval_f64(x);
    Ok(s * value)
}

/// `alpha * (1 + relative)` as a rational, for perturbation controls.
pub fn perturbed(params: &WeightParameters, relative: &Q) -> WeightParameters {
    WeightParameters {
        gamma: params.gamma.clone(),
        alpha: &params.alpha * (q(1) + relative),
    }
}
