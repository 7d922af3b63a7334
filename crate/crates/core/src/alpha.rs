//! Coefficients `alpha_{2m-1,n-1}` of the explicit power form of `psi_n`.
//!
//! Two independent routes: the nested bracket sum, valid for any Jacobi
//! matrix, and the factorial closed form, valid when the governing sequence
//! satisfies the compatibility relation.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::sequence::{BracketTable, GoverningSequence};

fn check_range(m: usize, n: usize, max_n: usize) -> Result<()> {
    if n == 0 || 2 * m > n || n > max_n {
        return Err(Error::IndexOutOfRange(format!(
            "alpha needs 1 <= n <= {max_n} and 2m <= n, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// Nested sum `sum_{k_1=2m-1}^{n-1} [k_1] sum_{k_2=2m-3}^{k_1-2} [k_2] ... sum_{k_m=1}^{k_{m-1}-2} [k_m]`.
///
/// `m = 0` returns the literal sentinel value `0`; the power form itself uses
/// `1` for its leading term (see [`leading_alpha`]).
pub fn alpha_nested(brackets: &BracketTable, m: usize, n: usize) -> Result<Q> {
    check_range(m, n, brackets.max_index() + 1)?;
    if m == 0 {
        return Ok(Q::zero());
    }
    // level[k] = sum over chains of the current depth whose top index is <= k
    let top = n - 1;
    let mut level: Vec<Q> = vec![Q::one(); top + 1];
    for depth in 1..=m {
        let lowest = 2 * depth - 1;
        let mut next = vec![Q::zero(); top + 1];
        let mut running = Q::zero();
        for k in 0..=top {
            if k >= lowest {
                let inner = if depth == 1 {
                    Q::one()
                } else {
                    level[k - 2].clone()
                };
                running += brackets.get(k) * inner;
            }
            next[k] = running.clone();
        }
        level = next;
    }
    Ok(level[top].clone())
}

/// Leading-term coefficient used in the power form (`m = 0`).
pub fn leading_alpha() -> Q {
    Q::one()
}

/// `(v_k)! = v_0 v_1 ... v_k`, with `(v_{-1})! = 1`.
pub fn v_factorial(seq: &GoverningSequence, k: isize) -> Q {
    if k < 0 {
        return Q::one();
    }
    seq.values()[..=k as usize]
        .iter()
        .fold(Q::one(), |acc, v| acc * v)
}

/// `[2m-1]!! (v_{n-1})! / ((v_{2m-1})! (v_{n-2m-1})!)`.
pub fn alpha_closed(
    seq: &GoverningSequence,
    brackets: &BracketTable,
    m: usize,
    n: usize,
) -> Result<Q> {
    check_range(m, n, brackets.max_index() + 1)?;
    let (m_, n_) = (m as isize, n as isize);
    Ok(brackets.odd_double_factorial(m) * v_factorial(seq, n_ - 1)
        / (v_factorial(seq, 2 * m_ - 1) * v_factorial(seq, n_ - 2 * m_ - 1)))
}

/// All `alpha_{2m-1,n-1}` for `1 <= n <= max_n`, `0 <= m <= n/2`, from the
/// nested sums; the `m = 0` column holds the leading coefficient `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTable {
    rows: Vec<Vec<Q>>,
}

impl AlphaTable {
    pub fn nested(brackets: &BracketTable, max_n: usize) -> Result<Self> {
        let mut rows = vec![vec![leading_alpha()]];
        for n in 1..=max_n {
            let mut row = vec![leading_alpha()];
            for m in 1..=n / 2 {
                row.push(alpha_nested(brackets, m, n)?);
            }
            rows.push(row);
        }
        Ok(AlphaTable { rows })
    }

    /// `alpha_{2m-1,n-1}`.
    pub fn get(&self, m: usize, n: usize) -> &Q {
        &self.rows[n][m]
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }
}
