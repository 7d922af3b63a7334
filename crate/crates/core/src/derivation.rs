//! The generalized derivation operator `D_v = sum_k eps_k x^{k-1} d^k/dx^k`,
//! characterized by `D_v x^n = v_{n-1} x^{n-1}`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{factorial, falling_factorial, Polynomial};
use crate::rational::Q;
use crate::sequence::GoverningSequence;

/// Coefficients `eps_1..=eps_K` of a generalized derivation operator together
/// with the sequence prefix they were computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationOperator {
    epsilons: Vec<Q>,
    source: Vec<Q>,
}

/// Order of an operator known only up to a finite horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    /// Nonzero coefficients persist up to the horizon `K`.
    InfiniteWithin(usize),
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::InfiniteWithin(k) => write!(f, "infinite within horizon {k}"),
        }
    }
}

/// `eps_k = v_{k-1}/k! - sum_{j<k} eps_j/(k-j)!` for `k = 1..=horizon`.
pub fn epsilons_from_sequence(
    seq: &GoverningSequence,
    horizon: usize,
) -> Result<DerivationOperator> {
    if horizon == 0 || horizon > seq.values().len() {
        return Err(Error::IndexOutOfRange(format!(
            "horizon {horizon} outside 1..={}",
            seq.values().len()
        )));
    }
    let mut epsilons: Vec<Q> = Vec::with_capacity(horizon);
    for k in 1..=horizon {
        let mut eps = seq.v(k - 1) / factorial(k);
        for (j, e) in epsilons.iter().enumerate() {
            eps -= e / factorial(k - (j + 1));
        }
        epsilons.push(eps);
    }
    Ok(DerivationOperator {
        epsilons,
        source: seq.values()[..horizon].to_vec(),
    })
}

impl DerivationOperator {
    /// `eps_1..=eps_K`; `epsilons()[k-1] = eps_k`.
    pub fn epsilons(&self) -> &[Q] {
        &self.epsilons
    }

    /// `eps_k` for `1 <= k <= K`.
    pub fn epsilon(&self, k: usize) -> &Q {
        &self.epsilons[k - 1]
    }

    pub fn horizon(&self) -> usize {
        self.epsilons.len()
    }

    /// The `v_0..v_{K-1}` the operator was built from.
    pub fn source(&self) -> &[Q] {
        &self.source
    }

    fn check_degree(&self, p: &Polynomial) -> Result<()> {
        match p.degree() {
            Some(d) if d > self.horizon() => Err(Error::IndexOutOfRange(format!(
                "degree {d} exceeds operator horizon {}",
                self.horizon()
            ))),
            _ => Ok(()),
        }
    }

    /// Applies the truncated series `sum_{k>=from} eps_k x^{k-1} d^k/dx^k`.
    fn apply_series(&self, p: &Polynomial, from: usize) -> Polynomial {
        let mut out = vec![Q::zero(); p.coeffs().len()];
        for (n, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() || n == 0 {
                continue;
            }
            // eps_k x^{k-1} d^k x^n = eps_k n!/(n-k)! x^{n-1}
            let mut factor = Q::zero();
            for k in from..=n {
                factor += self.epsilon(k) * falling_factorial(n, k);
            }
            out[n - 1] += c * factor;
        }
        Polynomial::new(out)
    }

    /// `D_v p` through the operator series.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_degree(p)?;
        Ok(self.apply_series(p, 1))
    }

    /// `D_v p` through the defining monomial action `x^n -> v_{n-1} x^{n-1}`.
    pub fn apply_monomial_rule(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_degree(p)?;
        let mut out = vec![Q::zero(); p.coeffs().len()];
        for (n, c) in p.coeffs().iter().enumerate().skip(1) {
            out[n - 1] = c * &self.source[n - 1];
        }
        Ok(Polynomial::new(out))
    }

    /// `x^{-1}`-free tail `sum_{k>=2} eps_k x^k d^k/dx^k` applied to `p`.
    pub fn apply_tail(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_degree(p)?;
        Ok(self.apply_series(p, 2).shift_up(1))
    }

    /// Smallest `k` with `eps_j = 0` for every `k < j <= K`.
    pub fn order(&self) -> Order {
        let last_nonzero = self
            .epsilons
            .iter()
            .rposition(|e| !e.is_zero())
            .map_or(0, |i| i + 1);
        if last_nonzero == self.horizon() {
            Order::InfiniteWithin(self.horizon())
        } else {
            Order::Finite(last_nonzero)
        }
    }

    /// `A_s(m) = s! sum_{k=m}^{s} eps_k/(s-k)!`.
    pub fn a_coefficient(&self, s: usize, m: usize) -> Result<Q> {
        if m == 0 || m > s || s > self.horizon() {
            return Err(Error::IndexOutOfRange(format!(
                "A_s(m) needs 1 <= m <= s <= {}, got s = {s}, m = {m}",
                self.horizon()
            )));
        }
        let sum = (m..=s).fold(Q::zero(), |acc, k| acc + self.epsilon(k) / factorial(s - k));
        Ok(factorial(s) * sum)
    }
}

/// Checks `sum_{k<=n} eps_k n!/(n-k)! = v_{n-1}` for every `n <= K`.
pub fn monomial_consistency(op: &DerivationOperator) -> bool {
    (1..=op.horizon()).all(|n| {
        let total = (1..=n).fold(Q::zero(), |acc, k| {
            acc + op.epsilon(k) * falling_factorial(n, k)
        });
        total == op.source[n - 1]
    })
}

/// Is `eps_1 = 1`? Always true for operators built from a sequence with `v_0 = 1`.
pub fn leading_is_unit(op: &DerivationOperator) -> bool {
    op.epsilons.first().is_some_and(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use crate::sequence::{seq_classical, seq_hermite, seq_order2, seq_order3};

    fn x_pow(n: usize) -> Polynomial {
        Polynomial::monomial(q(1), n)
    }

    #[test]
    fn hermite_is_plain_derivative() {
        let op = epsilons_from_sequence(&seq_hermite(10).unwrap(), 10).unwrap();
        assert_eq!(op.epsilon(1), &q(1));
        assert!(op.epsilons()[1..].iter().all(Zero::is_zero));
        assert_eq!(op.order(), Order::Finite(1));
        assert_eq!(op.apply(&x_pow(3)).unwrap(), Polynomial::monomial(q(3), 2));
        assert_eq!(op.apply(&Polynomial::one()).unwrap(), Polynomial::zero());
    }

    #[test]
    fn squares_sequence_operator() {
        let seq = seq_order2(&q(4), 10, qf(1, 2)).unwrap();
        let op = epsilons_from_sequence(&seq, 10).unwrap();
        assert_eq!(&op.epsilons()[..3], &[q(1), q(1), q(0)]);
        assert_eq!(op.order(), Order::Finite(2));
        assert_eq!(op.apply(&x_pow(3)).unwrap(), Polynomial::monomial(q(9), 2));
    }

    #[test]
    fn cubes_sequence_operator() {
        let seq = seq_order3(&q(8), &q(27), 10, qf(1, 2)).unwrap();
        let op = epsilons_from_sequence(&seq, 10).unwrap();
        assert_eq!(op.order(), Order::Finite(3));
        // x^n -> n^3 x^{n-1} forces d + 3x d^2 + x^2 d^3
        assert_eq!(&op.epsilons()[..4], &[q(1), q(3), q(1), q(0)]);
        assert_eq!(op.apply(&x_pow(3)).unwrap(), Polynomial::monomial(q(27), 2));
    }

    #[test]
    fn classical_epsilons_never_vanish() {
        let op = epsilons_from_sequence(&seq_classical(&q(1), 12).unwrap(), 12).unwrap();
        assert_eq!(op.epsilon(2), &qf(-1, 2));
        assert_eq!(op.epsilon(3), &qf(1, 3));
        assert_eq!(op.order(), Order::InfiniteWithin(12));
        let gamma = q(3);
        let op = epsilons_from_sequence(&seq_classical(&gamma, 6).unwrap(), 6).unwrap();
        assert_eq!(op.epsilon(2), &(-&gamma / (&gamma + q(1))));
        assert_eq!(op.epsilon(3), &(q(2) * &gamma / (q(3) * (&gamma + q(1)))));
    }

    #[test]
    fn horizon_and_degree_limits() {
        let seq = seq_hermite(4).unwrap();
        assert!(epsilons_from_sequence(&seq, 0).is_err());
        assert!(epsilons_from_sequence(&seq, 6).is_err());
        let op = epsilons_from_sequence(&seq, 3).unwrap();
        assert!(op.apply(&x_pow(4)).is_err());
        assert!(op.a_coefficient(2, 3).is_err());
        assert!(op.a_coefficient(4, 1).is_err());
    }

    #[test]
    fn a_coefficients() {
        let seq = seq_classical(&qf(2, 3), 12).unwrap();
        let op = epsilons_from_sequence(&seq, 12).unwrap();
        for s in 2..=12 {
            assert_eq!(op.a_coefficient(s, 1).unwrap(), *seq.v(s - 1));
            assert_eq!(op.a_coefficient(s, 2).unwrap(), seq.v(s - 1) - q(s as i64));
            assert_eq!(
                op.a_coefficient(s, s).unwrap(),
                factorial(s) * op.epsilon(s)
            );
        }
        let h = epsilons_from_sequence(&seq_hermite(12).unwrap(), 12).unwrap();
        for k in 2..=12 {
            assert_eq!(h.a_coefficient(k, 2).unwrap(), q(0));
        }
    }

    #[test]
    fn tail_is_diagonal_on_monomials() {
        let seq = seq_order2(&q(3), 8, qf(1, 2)).unwrap();
        let op = epsilons_from_sequence(&seq, 8).unwrap();
        for n in 0..=8 {
            let expected = if n < 2 {
                q(0)
            } else {
                seq.v(n - 1) - q(n as i64)
            };
            assert_eq!(
                op.apply_tail(&x_pow(n)).unwrap(),
                Polynomial::monomial(expected, n)
            );
        }
    }
}
