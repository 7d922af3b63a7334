//! Expansion of `B1bar psi_n`, where `B1bar = sum_{k>=2} eps_k x^k d^k/dx^k`,
//! over `{x psi_{n-1}, psi_{n-2}, psi_{n-4}, ...}`, and the first-derivative
//! rule it implies for the two-parameter family.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{expand_triangular, Polynomial};
use crate::rational::{Surd, Q};
use crate::system::PolynomialSystem;

/// Number of sample points on each side of the origin.
const GRID_HALF: usize = 25;

/// Fixed evaluation grid: 25 evenly spaced points in `[0.1, 5]` and their
/// mirror images, 50 points in total.
pub fn sample_grid() -> Vec<f64> {
    let step = (5.0 - 0.1) / (GRID_HALF - 1) as f64;
    let positive: Vec<f64> = (0..GRID_HALF).map(|k| 0.1 + step * k as f64).collect();
    positive
        .iter()
        .rev()
        .map(|x| -x)
        .chain(positive.iter().copied())
        .collect()
}

/// Element of the generating set used to expand `B1bar psi_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTerm {
    /// `x psi_k`.
    XPsi(usize),
    /// `psi_k`.
    Psi(usize),
}

impl std::fmt::Display for BasisTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisTerm::XPsi(k) => write!(f, "x*psi_{k}"),
            BasisTerm::Psi(k) => write!(f, "psi_{k}"),
        }
    }
}

/// Expansion of `B1bar psi_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub n: usize,
    /// Generating-set elements with nonzero coefficient, highest degree first.
    pub support: Vec<BasisTerm>,
    /// Coefficient of `x psi_{n-1}`.
    pub delta_bar: Surd,
    /// Coefficient of `psi_{n-2}`.
    pub beta_bar: Surd,
    /// Coefficients of `P_n`'s image on the monic generating set
    /// `{x P_{n-1}, P_{n-2}, P_{n-4}, ...}`.
    pub monic_coefficients: Vec<(BasisTerm, Q)>,
    /// No term below `psi_{n-2}` appears.
    pub reduced: bool,
}

impl DecompositionReport {
    fn monic_coefficient(&self, term: BasisTerm) -> Q {
        self.monic_coefficients
            .iter()
            .find(|(t, _)| *t == term)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }
}

/// Expands `B1bar psi_n` by degree-descending elimination; requires `n >= 2`.
pub fn decompose_b1bar(sys: &PolynomialSystem, n: usize) -> Result<DecompositionReport> {
    if n < 2 || n > sys.max_degree() {
        return Err(Error::IndexOutOfRange(format!(
            "decomposition needs 2 <= n <= {}, got {n}",
            sys.max_degree()
        )));
    }
    let image = sys.operator().apply_tail(sys.monic(n))?;
    let x_prev = sys.monic(n - 1).shift_up(1);
    let mut terms = vec![BasisTerm::XPsi(n - 1)];
    let mut basis: Vec<&Polynomial> = vec![&x_prev];
    let mut k = n as isize - 2;
    while k >= 0 {
        terms.push(BasisTerm::Psi(k as usize));
        basis.push(sys.monic(k as usize));
        k -= 2;
    }
    let (coeffs, rest) = expand_triangular(&image, &basis);
    if !rest.is_zero() {
        return Err(Error::Consistency(format!(
            "B1bar psi_{n} left a remainder {rest} outside the generating set"
        )));
    }
    let monic_coefficients: Vec<(BasisTerm, Q)> = terms.iter().copied().zip(coeffs).collect();
    let support: Vec<BasisTerm> = monic_coefficients
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(t, _)| *t)
        .collect();
    let reduced = support
        .iter()
        .all(|t| matches!(t, BasisTerm::XPsi(_)) || *t == BasisTerm::Psi(n - 2));

    // psi_k = sqrt(norm_sq_k) P_k and sqrt(norm_sq_n / norm_sq_k) = 1/(b_{n-1}...b_k)
    let b_prev = sys.b_surd(n - 1);
    let c0 = &monic_coefficients[0].1;
    let delta_bar = Surd::from_rational(c0) / b_prev.clone();
    let c1 = &monic_coefficients[1].1;
    let beta_bar = Surd::from_rational(c1) / (b_prev * sys.b_surd(n - 2));
    Ok(DecompositionReport {
        n,
        support,
        delta_bar,
        beta_bar,
        monic_coefficients,
        reduced,
    })
}

/// True iff `B1bar psi_n` is reduced for every `2 <= n <= n_max`.
pub fn classify_reduced(sys: &PolynomialSystem, n_max: usize) -> Result<bool> {
    for n in 2..=n_max {
        if !decompose_b1bar(sys, n)?.reduced {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `d/dx psi_n = c_prev psi_{n-1} + c_prev2_over_x psi_{n-2} / x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeDecomposition {
    pub n: usize,
    /// `gamma_n - delta_bar_n`.
    pub c_prev: Surd,
    /// `-beta_bar_n`.
    pub c_prev2_over_x: Surd,
}

impl DerivativeDecomposition {
    pub fn c_prev_f64(&self) -> f64 {
        self.c_prev.to_f64()
    }

    pub fn c_prev2_over_x_f64(&self) -> f64 {
        self.c_prev2_over_x.to_f64()
    }
}

fn require_family(sys: &PolynomialSystem) -> Result<()> {
    if sys.special_family().is_none() {
        return Err(Error::Unsupported(
            "the derivative rule needs a member of the two-parameter family".into(),
        ));
    }
    Ok(())
}

/// Derivative rule for family members, `n >= 2`.
pub fn derivative_decomposition(
    sys: &PolynomialSystem,
    n: usize,
) -> Result<DerivativeDecomposition> {
    require_family(sys)?;
    let report = decompose_b1bar(sys, n)?;
    if !report.reduced {
        return Err(Error::Consistency(format!(
            "family member with unreduced B1bar psi_{n}"
        )));
    }
    // gamma_n b_{n-1} = v_{n-1} and delta_bar_n b_{n-1} = c0 share one radical
    let c0 = report.monic_coefficient(BasisTerm::XPsi(n - 1));
    let b_prev = sys.b_surd(n - 1);
    let c_prev = Surd::from_rational(&(sys.sequence().v(n - 1) - c0)) / b_prev;
    Ok(DerivativeDecomposition {
        n,
        c_prev,
        c_prev2_over_x: -report.beta_bar,
    })
}

/// Evaluates `sum_i s_i p_i(x) x^{e_i}` where every surd `s_i` is a rational
/// multiple of the first nonzero one; the polynomial parts are exact.
pub(crate) fn eval_surd_combination(terms: &[(Surd, &Polynomial, i32)], x: f64) -> Result<f64> {
    if x == 0.0 && terms.iter().any(|(_, _, e)| *e < 0) {
        return Err(Error::Domain("expression is singular at x = 0".into()));
    }
    let xq = Q::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite x = {x}")))?;
    let Some(reference) = terms.iter().map(|t| &t.0).find(|s| !s.is_zero()) else {
        return Ok(0.0);
    };
    let mut total = Q::zero();
    for (s, p, e) in terms {
        let ratio = s
            .ratio(reference)
            .ok_or_else(|| Error::Consistency("terms do not share a common radical".into()))?;
        if ratio.is_zero() {
            continue;
        }
        let power = if *e >= 0 {
            num_traits::pow(xq.clone(), *e as usize)
        } else {
            Q::one() / num_traits::pow(xq.clone(), e.unsigned_abs() as usize)
        };
        total += ratio * p.eval(&xq) * power;
    }
    Ok(reference.to_f64() * crate::rational::to_f64(&total))
}

/// `psi_n'(x) - c_prev psi_{n-1}(x) - c_prev2_over_x psi_{n-2}(x)/x`.
pub fn derivative_residual(
    sys: &PolynomialSystem,
    d: &DerivativeDecomposition,
    x: f64,
) -> Result<f64> {
    let n = d.n;
    let scale = |k: usize| sys.psi(k).map(|p| p.scale());
    let deriv = sys.monic(n).derivative();
    let terms = [
        (scale(n)?, &deriv, 0),
        (-(d.c_prev.clone() * scale(n - 1)?), sys.monic(n - 1), 0),
        (
            -(d.c_prev2_over_x.clone() * scale(n - 2)?),
            sys.monic(n - 2),
            -1,
        ),
    ];
    eval_surd_combination(&terms, x)
}

/// Largest absolute [`derivative_residual`] over [`sample_grid`].
pub fn derivative_grid_check(sys: &PolynomialSystem, n: usize) -> Result<f64> {
    let d = derivative_decomposition(sys, n)?;
    sample_grid().into_iter().try_fold(0.0f64, |acc, x| {
        Ok(acc.max(derivative_residual(sys, &d, x)?.abs()))
    })
}
