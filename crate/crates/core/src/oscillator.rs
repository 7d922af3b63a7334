//! Oscillator-algebra generators as matrices on the truncated basis
//! `{psi_0, ..., psi_{dim-1}}`.
//!
//! Column `n` of a matrix holds the image of `psi_n`. Identities involving
//! `a+` are only meaningful away from the truncation edge, so every check
//! takes an interior margin.

use ndarray::Array2;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::expand_triangular;
use crate::rational::{to_f64, Q};
use crate::system::PolynomialSystem;

pub const DEFAULT_DIM: usize = 40;
pub const DEFAULT_MARGIN: usize = 4;

/// The generator set on a truncated basis.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub dim: usize,
    /// Position operator (Jacobi matrix).
    pub x: Array2<f64>,
    pub a_minus: Array2<f64>,
    pub a_plus: Array2<f64>,
    /// Real matrix of `-iP = sqrt(2) a- - X`.
    pub momentum_real: Array2<f64>,
    pub hamiltonian: Array2<f64>,
    pub number: Array2<f64>,
    /// `B(N) psi_n = b_{n-1}^2 psi_n`, `b_{-1} = 0`.
    pub b_of_n: Array2<f64>,
    /// `B(N + I) psi_n = b_n^2 psi_n`.
    pub b_of_n_plus: Array2<f64>,
    /// `Theta_N = 2 B(N) - N`.
    pub theta: Array2<f64>,
    /// `Delta_N = 2 c_1^{-1} B(N) - N`, when `c_1 = b_0^2 (v_2 - 1) > 0`.
    pub delta: Option<Array2<f64>>,
    /// `f(N)` with `a- = D_v f(N)`.
    pub f_of_n: Array2<f64>,
    classical_gamma: Option<f64>,
    family: Option<(f64, f64)>,
}

fn diag(values: impl IntoIterator<Item = f64>, dim: usize) -> Array2<f64> {
    let mut m = Array2::zeros((dim, dim));
    for (i, v) in values.into_iter().take(dim).enumerate() {
        m[[i, i]] = v;
    }
    m
}

/// Builds every generator on `dim` basis vectors; needs `3 <= dim <= N`.
pub fn build_operators(sys: &PolynomialSystem, dim: usize) -> Result<OperatorSet> {
    if dim < 3 {
        return Err(Error::Input(format!("dim must be at least 3, got {dim}")));
    }
    if dim > sys.max_degree() {
        return Err(Error::IndexOutOfRange(format!(
            "dim {dim} needs b_{} but the system stops at b_{}",
            dim - 1,
            sys.max_degree() - 1
        )));
    }
    let b = sys.b_f64();
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut x = Array2::zeros((dim, dim));
    let mut a_minus = Array2::zeros((dim, dim));
    for n in 1..dim {
        x[[n - 1, n]] = b[n - 1];
        x[[n, n - 1]] = b[n - 1];
        a_minus[[n - 1, n]] = sqrt2 * b[n - 1];
    }
    let a_plus = &x * sqrt2 - &a_minus;
    let momentum_real = &a_minus * sqrt2 - &x;
    let hamiltonian = a_minus.dot(&a_plus) + a_plus.dot(&a_minus);
    let number = diag((0..dim).map(|n| n as f64), dim);
    let b_sq = |k: isize| to_f64(&sys.b_square(k));
    let b_of_n = diag((0..dim).map(|n| b_sq(n as isize - 1)), dim);
    let b_of_n_plus = diag((0..dim).map(|n| b_sq(n as isize)), dim);
    let theta = &b_of_n * 2.0 - &number;

    let c1 = sys.c1();
    let delta = (c1 > Q::from_integer(0.into())).then(|| &b_of_n * (2.0 / to_f64(&c1)) - &number);

    let seq = sys.sequence();
    let b0_sq = to_f64(seq.b0_squared());
    let v1 = to_f64(seq.v(1));
    let f_of_n = diag(
        (0..dim).map(|n| match n {
            0 => 0.0,
            1 => sqrt2 * b0_sq,
            _ => sqrt2 * b0_sq * to_f64(&(seq.v(n) - seq.v(n - 2))) / v1,
        }),
        dim,
    );

    let family = sys
        .weight_parameters()
        .ok()
        .map(|w| (to_f64(&w.gamma), to_f64(&c1)));
    Ok(OperatorSet {
        dim,
        x,
        a_minus,
        a_plus,
        momentum_real,
        hamiltonian,
        number,
        b_of_n,
        b_of_n_plus,
        theta,
        delta,
        f_of_n,
        classical_gamma: sys.classical_gamma().map(|g| to_f64(&g)),
        family,
    })
}

/// Largest `|m[i,j]|` over `i, j < limit`.
pub fn max_abs_interior(m: &Array2<f64>, limit: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..limit.min(m.nrows()) {
        for j in 0..limit.min(m.ncols()) {
            worst = worst.max(m[[i, j]].abs());
        }
    }
    worst
}

fn interior_limit(ops: &OperatorSet, margin: usize) -> Result<usize> {
    if margin == 0 || margin >= ops.dim {
        return Err(Error::Input(format!(
            "interior margin must be in 1..{}, got {margin}",
            ops.dim
        )));
    }
    Ok(ops.dim - margin)
}

/// Deviations of `[a-, a+]` from its closed forms on the interior block.
#[derive(Clone, Debug, Serialize)]
pub struct CommutatorReport {
    /// Against `2 (B(N+I) - B(N))`.
    pub max_deviation: f64,
    /// Against `(gamma + 1) I - 2 Theta_N`, for classical systems.
    pub classical_deviation: Option<f64>,
    /// Against `c_1 ((gamma + 1) I - 2 Delta_N)`, for family members.
    pub family_deviation: Option<f64>,
}

pub fn commutator_check(ops: &OperatorSet, margin: usize) -> Result<CommutatorReport> {
    let limit = interior_limit(ops, margin)?;
    let comm = ops.a_minus.dot(&ops.a_plus) - ops.a_plus.dot(&ops.a_minus);
    let expected = (&ops.b_of_n_plus - &ops.b_of_n) * 2.0;
    let max_deviation = max_abs_interior(&(&comm - &expected), limit);
    let identity = Array2::<f64>::eye(ops.dim);
    let classical_deviation = ops.classical_gamma.map(|g| {
        let rhs = &identity * (g + 1.0) - &ops.theta * 2.0;
        max_abs_interior(&(&comm - &rhs), limit)
    });
    let family_deviation = match (&ops.family, &ops.delta) {
        (Some((g, c1)), Some(delta)) => {
            let rhs = (&identity * (g + 1.0) - delta * 2.0) * *c1;
            Some(max_abs_interior(&(&comm - &rhs), limit))
        }
        _ => None,
    };
    Ok(CommutatorReport {
        max_deviation,
        classical_deviation,
        family_deviation,
    })
}

/// Energy level `n` by each available route.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub n: usize,
    /// `2 (b_{n-1}^2 + b_n^2)`.
    pub from_b: f64,
    /// `(2 b_0^2 / v_1)(v_n v_{n+1} - v_{n-1} v_{n-2})`.
    pub from_v: f64,
    /// Diagonal entry of `H`.
    pub from_h: f64,
    /// `2n + gamma + 1` for classical systems.
    pub classical: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub rows: Vec<SpectrumRow>,
    /// Largest off-diagonal `|H_ij|` on the interior.
    pub off_diagonal: f64,
    /// Largest disagreement between any two routes.
    pub max_deviation: f64,
}

/// Checks `H psi_n = lambda_n psi_n` on interior indices.
pub fn spectrum_check(
    ops: &OperatorSet,
    sys: &PolynomialSystem,
    margin: usize,
) -> Result<SpectrumReport> {
    let limit = interior_limit(ops, margin)?;
    let seq = sys.sequence();
    let b0_sq = seq.b0_squared();
    let mut rows = Vec::with_capacity(limit);
    let mut max_deviation = 0.0f64;
    for n in 0..limit {
        let n_ = n as isize;
        let from_b_exact = (sys.b_square(n_ - 1) + sys.b_square(n_)) * Q::from_integer(2.into());
        let from_v_exact = Q::from_integer(2.into()) * b0_sq / seq.v(1)
            * (seq.v(n) * seq.v(n + 1) - seq.v_ext(n_ - 1) * seq.v_ext(n_ - 2));
        if from_b_exact != from_v_exact {
            return Err(Error::Consistency(format!(
                "lambda_{n}: {from_b_exact} vs {from_v_exact}"
            )));
        }
        let from_b = to_f64(&from_b_exact);
        let from_v = to_f64(&from_v_exact);
        let from_h = ops.hamiltonian[[n, n]];
        let classical = ops.classical_gamma.map(|g| 2.0 * n as f64 + g + 1.0);
        let mut values = vec![from_b, from_v, from_h];
        values.extend(classical);
        for a in &values {
            for b in &values {
                max_deviation = max_deviation.max((a - b).abs());
            }
        }
        rows.push(SpectrumRow {
            n,
            from_b,
            from_v,
            from_h,
            classical,
        });
    }
    let mut off = ops.hamiltonian.clone();
    for i in 0..ops.dim {
        off[[i, i]] = 0.0;
    }
    Ok(SpectrumReport {
        rows,
        off_diagonal: max_abs_interior(&off, limit),
        max_deviation,
    })
}

/// Matrix of `X d/dx` from exact expansions of `x psi_n'` in the basis.
pub fn x_derivative_matrix(sys: &PolynomialSystem, dim: usize) -> Result<Array2<f64>> {
    if dim > sys.max_degree() + 1 {
        return Err(Error::IndexOutOfRange(format!(
            "dim {dim} beyond the system"
        )));
    }
    let mut m = Array2::zeros((dim, dim));
    for n in 0..dim {
        let target = sys.monic(n).derivative().shift_up(1);
        let basis: Vec<_> = (0..=n).map(|k| sys.monic(k)).collect();
        let (coeffs, rest) = expand_triangular(&target, &basis);
        if !rest.is_zero() {
            return Err(Error::Consistency(format!("x psi_{n}' left a remainder")));
        }
        for (k, c) in coeffs.iter().enumerate() {
            // x psi_n' = sum_k c_k sqrt(norm_sq_n / norm_sq_k) psi_k
            let ratio = sys.norm_sq(n) / sys.norm_sq(k);
            m[[k, n]] = to_f64(c) * to_f64(&ratio).sqrt();
        }
    }
    Ok(m)
}

/// Deviation of `X d/dx - N` from `c_1^{-1} (a-)^2` on the interior block.
pub fn square_lowering_identity(
    ops: &OperatorSet,
    sys: &PolynomialSystem,
    margin: usize,
) -> Result<f64> {
    if sys.special_family().is_none() {
        return Err(Error::Unsupported(
            "X d/dx - N = (a-)^2 / c_1 holds only for the two-parameter family".into(),
        ));
    }
    let limit = interior_limit(ops, margin)?;
    let c1 = to_f64(&sys.c1());
    if c1 <= 0.0 {
        return Err(Error::Unsupported("c_1 must be positive".into()));
    }
    let lhs = x_derivative_matrix(sys, ops.dim)? - &ops.number;
    let rhs = ops.a_minus.dot(&ops.a_minus) / c1;
    Ok(max_abs_interior(&(&lhs - &rhs), limit))
}
