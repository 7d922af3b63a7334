//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};

/// `coeffs[k]` multiplies `x^k`. Trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Q>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: Q, degree: usize) -> Self {
        let mut coeffs = vec![Q::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^shift`.
    pub fn shift_up(&self, shift: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Q::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Division by `x^shift`; fails when a dropped coefficient is nonzero.
    pub fn shift_down(&self, shift: usize) -> Result<Polynomial> {
        if self.coeffs.iter().take(shift).any(|c| !c.is_zero()) {
            return Err(Error::Domain(format!(
                "polynomial is not divisible by x^{shift}"
            )));
        }
        Ok(Polynomial::new(
            self.coeffs.iter().skip(shift).cloned().collect(),
        ))
    }

    pub fn derivative(&self) -> Polynomial {
        self.nth_derivative(1)
    }

    pub fn nth_derivative(&self, order: usize) -> Polynomial {
        if order == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(k, c)| c * falling_factorial(k, order))
            .collect();
        Polynomial::new(coeffs)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Floating Horner evaluation with rounded coefficients.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// True when only powers of the given parity (0 even, 1 odd) appear.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == parity % 2 || c.is_zero())
    }
}

/// `k (k-1) ... (k-order+1)` as a rational.
pub fn falling_factorial(k: usize, order: usize) -> Q {
    (0..order).fold(Q::one(), |acc, j| acc * Q::from_integer((k - j).into()))
}

pub fn factorial(n: usize) -> Q {
    falling_factorial(n, n)
}

/// Expands `target` over a triangular generating set: `basis[i]` must have a
/// nonzero leading coefficient and all degrees must be distinct. Elimination
/// runs from the highest degree down; the returned coefficients are aligned
/// with `basis`, plus whatever is left over.
pub fn expand_triangular(target: &Polynomial, basis: &[&Polynomial]) -> (Vec<Q>, Polynomial) {
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(basis[i].degree()));
    let mut rest = target.clone();
    let mut coeffs = vec![Q::zero(); basis.len()];
    for i in order {
        let Some(d) = basis[i].degree() else { continue };
        let c = rest.coeff(d);
        if c.is_zero() {
            continue;
        }
        let factor = &c / basis[i].leading().expect("nonzero basis element");
        rest = &rest - &basis[i].scale(&factor);
        coeffs[i] = factor;
    }
    (coeffs, rest)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}
