//! The weight `C |x|^gamma exp(-alpha x^2)`: normalization, moments,
//! orthonormality by quadrature, and a finite-horizon Carleman test.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_vec, Tolerance};
use crate::rational::{to_f64, Q};
use crate::system::{PolynomialSystem, WeightParameters};
use statrs::function::gamma::gamma as gamma_fn;

/// Agreement required between a spec and a system's own parameters.
const MATCH_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasureSpec {
    pub gamma: f64,
    pub alpha: f64,
    pub c: f64,
}

impl MeasureSpec {
    /// Normalized measure for `gamma > -1`, `alpha > 0`.
    pub fn new(gamma: f64, alpha: f64) -> Result<Self> {
        Ok(MeasureSpec {
            gamma,
            alpha,
            c: normalization(gamma, alpha)?,
        })
    }

    pub fn from_parameters(params: &WeightParameters) -> Result<Self> {
        Self::new(to_f64(&params.gamma), to_f64(&params.alpha))
    }

    /// Unnormalized density `|x|^gamma exp(-alpha x^2)`.
    pub fn density(&self, x: f64) -> f64 {
        x.abs().powf(self.gamma) * (-self.alpha * x * x).exp()
    }

    /// Cutoff `R = max(10, 3 sqrt(n / alpha) + 5)` for polynomial degree up to `2n`.
    pub fn cutoff(&self, n: usize) -> f64 {
        (3.0 * (n as f64 / self.alpha).sqrt() + 5.0).max(10.0)
    }

    /// `C * integral g(x) |x|^gamma exp(-alpha x^2)` over `[-R, R]`, split at
    /// zero with `x = +-u^2` on each half so the cusp becomes `u^(2 gamma + 1)`.
    pub fn integrate<F: Fn(f64) -> Vec<f64>>(
        &self,
        g: F,
        dim: usize,
        cutoff: f64,
    ) -> Result<Vec<f64>> {
        let top = cutoff.sqrt();
        let (gamma, alpha) = (self.gamma, self.alpha);
        let half = |sign: f64| {
            integrate_vec(
                |u| {
                    let x = sign * u * u;
                    let w = 2.0 * u.powf(2.0 * gamma + 1.0) * (-alpha * x * x).exp();
                    g(x).into_iter().map(|v| v * w).collect()
                },
                0.0,
                top,
                dim,
                Tolerance::default(),
            )
        };
        let left = half(-1.0)?;
        let right = half(1.0)?;
        Ok(left
            .value
            .iter()
            .zip(&right.value)
            .map(|(l, r)| self.c * (l + r))
            .collect())
    }
}

fn check_domain(gamma: f64, alpha: f64) -> Result<()> {
    if !gamma.is_finite() || !alpha.is_finite() || gamma <= -1.0 || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "need gamma > -1 and alpha > 0, got gamma = {gamma}, alpha = {alpha}"
        )));
    }
    Ok(())
}

/// `C = alpha^{(gamma+1)/2} / Gamma((gamma+1)/2)`.
pub fn normalization(gamma: f64, alpha: f64) -> Result<f64> {
    check_domain(gamma, alpha)?;
    let h = (gamma + 1.0) / 2.0;
    Ok(alpha.powf(h) / gamma_fn(h))
}

/// Total mass of the normalized measure by quadrature; should be `1`.
pub fn total_mass(spec: &MeasureSpec) -> Result<f64> {
    Ok(spec.integrate(|_| vec![1.0], 1, spec.cutoff(0))?[0])
}

/// `mu_k` from `alpha^{-n} Gamma(n + (gamma+1)/2) / Gamma((gamma+1)/2)`, `k = 2n`.
pub fn moment_closed(spec: &MeasureSpec, k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let n = (k / 2) as f64;
    let h = (spec.gamma + 1.0) / 2.0;
    spec.alpha.powf(-n) * gamma_fn(n + h) / gamma_fn(h)
}

/// `mu_k` exactly for rational parameters: `prod_{j<n} (j + (gamma+1)/2) / alpha`.
pub fn moment_exact(params: &WeightParameters, k: usize) -> Q {
    if k % 2 == 1 {
        return Q::zero();
    }
    let two = Q::from_integer(2.into());
    let h = (&params.gamma + Q::one()) / &two;
    (0..k / 2).fold(Q::one(), |acc, j| {
        acc * (Q::from_integer((j as i64).into()) + &h) / &params.alpha
    })
}

/// `(J^k)_{00}` exactly, using the monic form of the Jacobi matrix (ones
/// above the diagonal, `b_n^2` below), which has the same powers at `(0,0)`.
pub fn moment_jacobi(sys: &PolynomialSystem, k: usize) -> Result<Q> {
    if k / 2 > sys.max_degree() {
        return Err(Error::IndexOutOfRange(format!(
            "moment {k} needs b up to b_{}, system stops at b_{}",
            k / 2 - 1,
            sys.max_degree() - 1
        )));
    }
    let size = k / 2 + 2;
    let mut v = vec![Q::zero(); size];
    v[0] = Q::one();
    for _ in 0..k {
        let mut next = vec![Q::zero(); size];
        for i in 0..size {
            if v[i].is_zero() {
                continue;
            }
            // column i of the monic Jacobi matrix: 1 at row i+1, b_{i-1}^2 at row i-1
            if i + 1 < size {
                next[i + 1] += &v[i];
            }
            if i >= 1 {
                next[i - 1] += &v[i] * sys.b_square(i as isize - 1);
            }
        }
        v = next;
    }
    Ok(v[0].clone())
}

/// `mu_k` by quadrature.
pub fn moment_quadrature(spec: &MeasureSpec, k: usize) -> Result<f64> {
    Ok(spec.integrate(|x| vec![x.powi(k as i32)], 1, spec.cutoff(k))?[0])
}

/// One row of the three-route moment comparison.
#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub k: usize,
    pub closed: f64,
    pub jacobi: f64,
    pub quadrature: f64,
}

impl MomentRow {
    /// Largest pairwise disagreement relative to `max(1, |mu_k|)`.
    pub fn relative_spread(&self) -> f64 {
        let vals = [self.closed, self.jacobi, self.quadrature];
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (hi - lo) / scale
    }
}

/// Moments `0..=k_max` of a family member's weight by all three routes.
pub fn moment_table(sys: &PolynomialSystem, k_max: usize) -> Result<Vec<MomentRow>> {
    let params = sys.weight_parameters()?;
    let spec = MeasureSpec::from_parameters(&params)?;
    (0..=k_max)
        .map(|k| {
            Ok(MomentRow {
                k,
                closed: moment_closed(&spec, k),
                jacobi: to_f64(&moment_jacobi(sys, k)?),
                quadrature: moment_quadrature(&spec, k)?,
            })
        })
        .collect()
}

/// Gram matrix of `psi_0..psi_{n_max}` and derived diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub n_max: usize,
    pub gram: Vec<Vec<f64>>,
    /// `max |<psi_i, psi_j> - delta_ij|`.
    pub max_deviation: f64,
    /// `max |<psi_i, psi_j> - <psi_j, psi_i>|`.
    pub asymmetry: f64,
    /// `<x psi_{n-1}, psi_n>` for `n = 1..=n_max`.
    pub recovered_b: Vec<f64>,
    /// `max |<x psi_{n-1}, psi_n> - b_{n-1}|`.
    pub recurrence_deviation: f64,
}

impl GramReport {
    /// `|G - I|` as CSV rows.
    pub fn deviation_csv(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.gram.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, g)| {
                    let d = if i == j { g - 1.0 } else { *g };
                    format!("{:.16e}", d.abs())
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Orthonormality of the system against `spec`, which must carry the
/// system's own weight parameters.
pub fn orthonormality_check(
    sys: &PolynomialSystem,
    spec: &MeasureSpec,
    n_max: usize,
) -> Result<GramReport> {
    let own = sys.weight_parameters()?;
    let (g, a) = (to_f64(&own.gamma), to_f64(&own.alpha));
    let close = |x: f64, y: f64| (x - y).abs() <= MATCH_TOL * x.abs().max(1.0);
    if !close(g, spec.gamma) || !close(a, spec.alpha) {
        return Err(Error::Input(format!(
            "measure (gamma = {}, alpha = {}) does not match the system (gamma = {g}, alpha = {a})",
            spec.gamma, spec.alpha
        )));
    }
    gram_matrix(sys, spec, n_max)
}

/// Gram matrix against an arbitrary measure, with no parameter check.
pub fn gram_matrix(sys: &PolynomialSystem, spec: &MeasureSpec, n_max: usize) -> Result<GramReport> {
    if n_max > sys.max_degree() {
        return Err(Error::IndexOutOfRange(format!(
            "n_max = {n_max} beyond system degree {}",
            sys.max_degree()
        )));
    }
    let size = n_max + 1;
    let pairs = size * (size + 1) / 2;
    let integrand = |x: f64| {
        let psi = sys.psi_eval_all(n_max, x);
        let mut out = Vec::with_capacity(pairs + n_max);
        for i in 0..size {
            for j in i..size {
                out.push(psi[i] * psi[j]);
            }
        }
        for n in 1..size {
            out.push(x * psi[n - 1] * psi[n]);
        }
        out
    };
    let values = spec.integrate(integrand, pairs + n_max, spec.cutoff(n_max))?;
    let mut gram = vec![vec![0.0; size]; size];
    let upper = (0..size).flat_map(|i| (i..size).map(move |j| (i, j)));
    for ((i, j), v) in upper.zip(&values) {
        gram[i][j] = *v;
        gram[j][i] = *v;
    }
    let recovered_b = values[pairs..].to_vec();
    let mut max_deviation = 0.0f64;
    let mut asymmetry = 0.0f64;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            max_deviation = max_deviation.max((g - target).abs());
            asymmetry = asymmetry.max((g - gram[j][i]).abs());
        }
    }
    let recurrence_deviation = recovered_b
        .iter()
        .zip(sys.b_f64())
        .fold(0.0f64, |m, (r, b)| m.max((r - b).abs()));
    Ok(GramReport {
        n_max,
        gram,
        max_deviation,
        asymmetry,
        recovered_b,
        recurrence_deviation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Fitted growth `b_n = O(n^p)` with `p <= 1`: the series diverges.
    Determinate,
    /// No conclusion from finitely many terms.
    InconclusiveWithinHorizon,
}

/// Finite-horizon Carleman report.
#[derive(Clone, Debug, Serialize)]
pub struct CarlemanReport {
    /// `S_N = sum_{n=0}^{N} 1/b_n`.
    pub partial_sum: f64,
    /// Least-squares slope of `ln b_n` against `ln (n+1)` over the upper half.
    pub exponent: f64,
    pub verdict: Verdict,
}

/// Slack on the fitted exponent before declaring growth faster than linear.
const EXPONENT_SLACK: f64 = 0.02;

/// Carleman test on `b_0..=b_N` of the system.
pub fn carleman_determinacy(sys: &PolynomialSystem, n: usize) -> Result<CarlemanReport> {
    let b = sys.b_f64();
    if n >= b.len() {
        return Err(Error::IndexOutOfRange(format!(
            "b_{n} requested, system has b_0..b_{}",
            b.len() - 1
        )));
    }
    carleman_from_coeffs(&b[..=n])
}

/// Carleman test on an explicit list `b_0..=b_N`.
pub fn carleman_from_coeffs(b: &[f64]) -> Result<CarlemanReport> {
    if b.len() < 4 {
        return Err(Error::Input(
            "need at least four recurrence coefficients".into(),
        ));
    }
    if b.iter().any(|v| v.is_nan() || *v <= 0.0) {
        return Err(Error::Input(
            "recurrence coefficients must be positive".into(),
        ));
    }
    let partial_sum = b.iter().map(|v| 1.0 / v).sum();
    let start = b.len() / 2;
    let pts: Vec<(f64, f64)> = (start..b.len())
        .map(|i| ((i as f64 + 1.0).ln(), b[i].ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let exponent = sxy / sxx;
    let verdict = if exponent <= 1.0 + EXPONENT_SLACK {
        Verdict::Determinate
    } else {
        Verdict::InconclusiveWithinHorizon
    };
    Ok(CarlemanReport {
        partial_sum,
        exponent,
        verdict,
    })
}
