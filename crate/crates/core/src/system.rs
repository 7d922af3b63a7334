//! Generalized Hermite polynomial systems.
//!
//! `psi_n = sqrt(norm_sq_n) * P_n` where `P_n` is monic with rational
//! coefficients and `norm_sq_n = 1 / (b_0^2 ... b_{n-1}^2)`. Every identity on
//! `psi_n` is checked on the monic parts, with radicals carried as [`Surd`]s.

use num_traits::{One, Signed, Zero};

use crate::alpha::{alpha_closed, alpha_nested, leading_alpha};
use crate::derivation::{epsilons_from_sequence, DerivationOperator};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::{exact_sqrt, pow, to_f64, Surd, Q};
use crate::sequence::{
    bracket, gamma_coeffs, is_special_family, recurrence_coeffs, BracketTable, GammaCoefficients,
    GoverningSequence, RecurrenceCoefficients,
};

/// `sqrt(norm_sq) * monic`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedPolynomial {
    pub norm_sq: Q,
    pub monic: Polynomial,
}

impl NormalizedPolynomial {
    pub fn scale(&self) -> Surd {
        Surd::sqrt(self.norm_sq.clone()).expect("norm_sq is positive")
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.scale().to_f64() * self.monic.eval_f64(x)
    }

    /// Evaluates the monic part exactly at the binary value of `x`.
    pub fn eval_exact(&self, x: f64) -> f64 {
        let xq = Q::from_float(x).expect("finite evaluation point");
        self.scale().to_f64() * to_f64(&self.monic.eval(&xq))
    }

    /// Coefficients of `psi_n` itself, rounded.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        let s = self.scale().to_f64();
        self.monic.coeffs().iter().map(|c| s * to_f64(c)).collect()
    }
}

/// A governing sequence with everything derived from it, built to `n <= N`.
#[derive(Clone, Debug)]
pub struct PolynomialSystem {
    seq: GoverningSequence,
    op: DerivationOperator,
    brackets: BracketTable,
    b: RecurrenceCoefficients,
    gamma: GammaCoefficients,
    monic: Vec<Polynomial>,
    norm_sq: Vec<Q>,
    b_f64: Vec<f64>,
}

impl PolynomialSystem {
    /// Builds `psi_0..=psi_N` by the three-term recurrence.
    pub fn new(seq: GoverningSequence) -> Result<Self> {
        if seq.max_index() < 2 {
            return Err(Error::Input("a system needs at least v_0, v_1, v_2".into()));
        }
        let op = epsilons_from_sequence(&seq, seq.values().len())?;
        let brackets = bracket(&seq)?;
        let b = recurrence_coeffs(&seq)?;
        let gamma = gamma_coeffs(&seq)?;

        let n_max = seq.max_index();
        let mut monic = vec![Polynomial::one(), Polynomial::monomial(Q::one(), 1)];
        for n in 1..n_max {
            // x P_n = P_{n+1} + b_{n-1}^2 P_{n-1}
            let next = &monic[n].shift_up(1) - &monic[n - 1].scale(&b.square(n as isize - 1));
            monic.push(next);
        }
        let mut norm_sq = vec![Q::one()];
        for n in 1..=n_max {
            let prev = norm_sq[n - 1].clone();
            norm_sq.push(prev / b.square(n as isize - 1));
        }
        let b_f64 = b.to_f64();
        Ok(PolynomialSystem {
            seq,
            op,
            brackets,
            b,
            gamma,
            monic,
            norm_sq,
            b_f64,
        })
    }

    pub fn sequence(&self) -> &GoverningSequence {
        &self.seq
    }

    pub fn operator(&self) -> &DerivationOperator {
        &self.op
    }

    pub fn brackets(&self) -> &BracketTable {
        &self.brackets
    }

    pub fn recurrence(&self) -> &RecurrenceCoefficients {
        &self.b
    }

    pub fn gamma(&self) -> &GammaCoefficients {
        &self.gamma
    }

    /// Largest `n` for which `psi_n` is available.
    pub fn max_degree(&self) -> usize {
        self.seq.max_index()
    }

    /// `b_k^2`, `b_{-1} = 0`.
    pub fn b_square(&self, k: isize) -> Q {
        self.b.square(k)
    }

    /// `b_k` as a surd.
    pub fn b_surd(&self, k: usize) -> Surd {
        Surd::sqrt(self.b.square(k as isize)).expect("positive bracket")
    }

    /// `b_0..b_{N-1}` rounded.
    pub fn b_f64(&self) -> &[f64] {
        &self.b_f64
    }

    /// `gamma_n` as a surd.
    pub fn gamma_surd(&self, n: usize) -> Surd {
        Surd::sqrt(self.gamma.square(n).clone()).expect("non-negative square")
    }

    pub fn monic(&self, n: usize) -> &Polynomial {
        &self.monic[n]
    }

    /// `1 / (b_0^2 ... b_{n-1}^2)`.
    pub fn norm_sq(&self, n: usize) -> &Q {
        &self.norm_sq[n]
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            return Err(Error::IndexOutOfRange(format!(
                "psi_{n} requested, system built to {}",
                self.max_degree()
            )));
        }
        Ok(())
    }

    /// `psi_n` from the recurrence.
    pub fn psi(&self, n: usize) -> Result<NormalizedPolynomial> {
        self.check_index(n)?;
        Ok(NormalizedPolynomial {
            norm_sq: self.norm_sq[n].clone(),
            monic: self.monic[n].clone(),
        })
    }

    fn power_form(
        &self,
        n: usize,
        alpha: impl Fn(usize) -> Result<Q>,
    ) -> Result<NormalizedPolynomial> {
        self.check_index(n)?;
        let b0_sq = self.seq.b0_squared();
        let mut coeffs = vec![Q::zero(); n + 1];
        for m in 0..=n / 2 {
            let a = if m == 0 { leading_alpha() } else { alpha(m)? };
            let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
            coeffs[n - 2 * m] = sign * pow(b0_sq, m) * a;
        }
        Ok(NormalizedPolynomial {
            norm_sq: Q::one() / (self.brackets.factorial(n) * pow(b0_sq, n)),
            monic: Polynomial::new(coeffs),
        })
    }

    /// `psi_n` from the explicit power form with the closed-form alphas.
    pub fn psi_coeffs(&self, n: usize) -> Result<NormalizedPolynomial> {
        self.power_form(n, |m| alpha_closed(&self.seq, &self.brackets, m, n))
    }

    /// `psi_n` from the explicit power form with the nested-sum alphas.
    pub fn psi_coeffs_nested(&self, n: usize) -> Result<NormalizedPolynomial> {
        self.power_form(n, |m| alpha_nested(&self.brackets, m, n))
    }

    /// `psi_n(x)` by forward recurrence in floating point.
    pub fn psi_eval(&self, n: usize, x: f64) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.psi_eval_all(n, x)[n])
    }

    /// `psi_0(x)..=psi_n(x)`; `n` must not exceed [`Self::max_degree`].
    pub fn psi_eval_all(&self, n: usize, x: f64) -> Vec<f64> {
        let b = &self.b_f64;
        let mut out = Vec::with_capacity(n + 1);
        out.push(1.0);
        if n >= 1 {
            out.push(x / b[0]);
        }
        for k in 1..n {
            out.push((x * out[k] - b[k - 1] * out[k - 1]) / b[k]);
        }
        out
    }

    /// `D_v psi_n - gamma_n psi_{n-1}`.
    pub fn lowering_check(&self, n: usize) -> Result<LoweringResidual> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("lowering needs n >= 1".into()));
        }
        self.check_index(n)?;
        // psi_n = P_n / sqrt(h_n), psi_{n-1} = b_{n-1} P_{n-1} / sqrt(h_n)
        let ratio_sq = self.gamma.square(n) * self.b.square(n as isize - 1);
        let ratio = exact_sqrt(&ratio_sq)
            .ok_or_else(|| Error::Consistency(format!("gamma_{n} b_{} is irrational", n - 1)))?;
        let image = self.op.apply(&self.monic[n])?;
        let residual = &image - &self.monic[n - 1].scale(&ratio);
        Ok(LoweringResidual {
            n,
            residual: NormalizedPolynomial {
                norm_sq: self.norm_sq[n].clone(),
                monic: residual,
            },
        })
    }

    /// `Some((v1, v2))` for members of the two-parameter family.
    pub fn special_family(&self) -> Option<(Q, Q)> {
        is_special_family(&self.seq)
    }

    /// `c_1 = b_0^2 (v_2 - 1)`.
    pub fn c1(&self) -> Q {
        self.seq.b0_squared() * (self.seq.v(2) - Q::one())
    }

    /// `gamma` when this is a classical system: `v_1 = b_0^{-2}`, `v_2 = 1 + v_1`.
    pub fn classical_gamma(&self) -> Option<Q> {
        let (v1, v2) = self.special_family()?;
        let b0_sq = self.seq.b0_squared();
        if &v1 * b0_sq == Q::one() && v2 == &v1 + Q::one() {
            Some(Q::from_integer(2.into()) / v1 - Q::one())
        } else {
            None
        }
    }

    /// Weight parameters `(gamma, alpha)` of `|x|^gamma exp(-alpha x^2)` for
    /// family members: `gamma = (3 - v2)/(v2 - 1)`, `alpha = 1/(b_0^2 (v2 - 1))`.
    pub fn weight_parameters(&self) -> Result<WeightParameters> {
        let (_, v2) = self
            .special_family()
            .ok_or_else(|| Error::Unsupported("not a member of the two-parameter family".into()))?;
        let denom = &v2 - Q::one();
        if !denom.is_positive() {
            return Err(Error::Unsupported(format!("v2 = {v2} must exceed 1")));
        }
        Ok(WeightParameters {
            gamma: (Q::from_integer(3.into()) - &v2) / &denom,
            alpha: Q::one() / (self.seq.b0_squared() * denom),
        })
    }
}

/// Exponent and Gaussian rate of the weight `|x|^gamma exp(-alpha x^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightParameters {
    pub gamma: Q,
    pub alpha: Q,
}

impl WeightParameters {
    /// `theta_n(gamma) = gamma (1 - (-1)^n) / 2`.
    pub fn theta(&self, n: usize) -> Q {
        if n % 2 == 1 {
            self.gamma.clone()
        } else {
            Q::zero()
        }
    }
}

/// Outcome of [`PolynomialSystem::lowering_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoweringResidual {
    pub n: usize,
    pub residual: NormalizedPolynomial,
}

impl LoweringResidual {
    pub fn is_zero(&self) -> bool {
        self.residual.monic.is_zero()
    }

    /// Largest absolute coefficient of the residual, rounded.
    pub fn max_abs(&self) -> f64 {
        self.residual
            .coeffs_f64()
            .into_iter()
            .fold(0.0, |acc, c| acc.max(c.abs()))
    }
}
