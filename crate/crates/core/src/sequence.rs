//! Governing sequences and the data derived from them: brackets, recurrence
//! coefficients and the lowering constants `gamma_n`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, q, qf, Q};

/// Default number of stored terms after `v_0`.
pub const DEFAULT_LEN: usize = 64;

/// A finite prefix `v_0..=v_N` of a governing sequence together with `b_0^2`.
///
/// Values are strictly positive and start at `v_0 = 1`. Monotonicity is not
/// enforced here; [`validate`] reports it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoverningSequence {
    values: Vec<Q>,
    b0_squared: Q,
}

impl GoverningSequence {
    pub fn new(values: Vec<Q>, b0_squared: Q) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("governing sequence is empty".into()));
        }
        if !values[0].is_one() {
            return Err(Error::Input(format!("v_0 must be 1, got {}", values[0])));
        }
        if let Some((n, v)) = values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::Construction(format!("v_{n} = {v} is not positive")));
        }
        if !b0_squared.is_positive() {
            return Err(Error::Input(format!(
                "b0^2 = {b0_squared} must be positive"
            )));
        }
        Ok(GoverningSequence { values, b0_squared })
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// Largest stored index `N`.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn b0_squared(&self) -> &Q {
        &self.b0_squared
    }

    /// `v_n`, panicking past the stored prefix.
    pub fn v(&self, n: usize) -> &Q {
        &self.values[n]
    }

    /// `v_k` with the convention `v_{-1} = 0`.
    pub fn v_ext(&self, k: isize) -> Q {
        if k < 0 {
            Q::zero()
        } else {
            self.values[k as usize].clone()
        }
    }

    /// Same sequence with a different `b_0^2`.
    pub fn with_b0_squared(&self, b0_squared: Q) -> Result<Self> {
        GoverningSequence::new(self.values.clone(), b0_squared)
    }

    /// First `n + 1` terms.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n > self.max_index() {
            return Err(Error::IndexOutOfRange(format!(
                "cannot truncate to {n}, only {} stored",
                self.max_index()
            )));
        }
        GoverningSequence::new(self.values[..=n].to_vec(), self.b0_squared.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SequenceFile::from(self)).expect("plain strings serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SequenceFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("sequence JSON: {e}")))?;
        file.try_into()
    }
}

/// On-disk form: rationals as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub values: Vec<String>,
    pub b0_squared: String,
}

impl From<&GoverningSequence> for SequenceFile {
    fn from(seq: &GoverningSequence) -> Self {
        SequenceFile {
            values: seq.values.iter().map(format_rational).collect(),
            b0_squared: format_rational(&seq.b0_squared),
        }
    }
}

impl TryFrom<SequenceFile> for GoverningSequence {
    type Error = Error;
    fn try_from(file: SequenceFile) -> Result<Self> {
        let values = file
            .values
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        GoverningSequence::new(values, parse_rational(&file.b0_squared)?)
    }
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// First `n` with `v_n > v_{n+1}`, if any.
    pub first_descent: Option<usize>,
    /// First `(n, p)` violating the compatibility relation, scanning `n`
    /// upwards and `p` upwards within each `n`.
    pub first_violation: Option<(usize, usize)>,
}

impl ValidationReport {
    pub fn monotone(&self) -> bool {
        self.first_descent.is_none()
    }

    /// The compatibility relation holds on the whole stored prefix.
    pub fn compatible(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks monotonicity and the compatibility relation
/// `v_{n-2} v_{2p-1} + v_{2p-3} v_{n-2p} = v_n v_{2p-3} + v_{2p-1} v_{n-2p}`
/// for every `n >= 2`, `2 <= 2p <= n` in range, with `v_{-1} = 0`.
pub fn validate(seq: &GoverningSequence) -> Result<ValidationReport> {
    if seq.values.len() < 3 {
        return Err(Error::Input(format!(
            "validation needs at least 3 terms, got {}",
            seq.values.len()
        )));
    }
    let first_descent = seq.values.windows(2).position(|w| w[0] > w[1]);
    let v = |k: isize| seq.v_ext(k);
    let mut first_violation = None;
    'outer: for n in 2..=seq.max_index() {
        for p in 1..=n / 2 {
            let (n_, p_) = (n as isize, p as isize);
            let lhs = v(n_ - 2) * v(2 * p_ - 1) + v(2 * p_ - 3) * v(n_ - 2 * p_);
            let rhs = v(n_) * v(2 * p_ - 3) + v(2 * p_ - 1) * v(n_ - 2 * p_);
            if lhs != rhs {
                first_violation = Some((n, p));
                break 'outer;
            }
        }
    }
    Ok(ValidationReport {
        first_descent,
        first_violation,
    })
}

fn require_len(len: usize) -> Result<()> {
    if len < 1 {
        return Err(Error::Input("sequence length N must be at least 1".into()));
    }
    Ok(())
}

/// `v_n = n + 1`, with the Hermite normalization `b_0^2 = 1/2`.
pub fn seq_hermite(len: usize) -> Result<GoverningSequence> {
    require_len(len)?;
    GoverningSequence::new((0..=len as i64).map(|n| q(n + 1)).collect(), qf(1, 2))
}

/// One-parameter family whose derivation operator has order two:
/// `v_n = C(n+1, 2) v_1 - n^2 + 1`.
pub fn seq_order2(v1: &Q, len: usize, b0_squared: Q) -> Result<GoverningSequence> {
    require_len(len)?;
    if *v1 < q(1) {
        return Err(Error::Input(format!(
            "order-2 family needs v1 >= 1, got {v1}"
        )));
    }
    let values = (0..=len as i64)
        .map(|n| {
            if n == 0 {
                q(1)
            } else {
                qf((n + 1) * n, 2) * v1 - q(n * n) + q(1)
            }
        })
        .collect();
    GoverningSequence::new(values, b0_squared)
}

/// Order-three closed form, used for `n >= 2` (`v_0 = 1`, `v_1 = v1`).
pub fn order3_value(v1: &Q, v2: &Q, n: i64) -> Q {
    let binom = qf((n + 1) * n * (n - 1), 6);
    binom * v2 - qf((n + 1) * n * (n - 2), 2) * v1 + qf((n + 1) * (n - 1) * (n - 2), 2)
}

/// Two-parameter family whose derivation operator has order three.
pub fn seq_order3(v1: &Q, v2: &Q, len: usize, b0_squared: Q) -> Result<GoverningSequence> {
    require_len(len)?;
    if *v1 < q(1) || v1 > v2 {
        return Err(Error::Input(format!(
            "order-3 family needs 1 <= v1 <= v2, got v1 = {v1}, v2 = {v2}"
        )));
    }
    let values = (0..=len as i64)
        .map(|n| match n {
            0 => q(1),
            1 => v1.clone(),
            _ => order3_value(v1, v2, n),
        })
        .collect();
    GoverningSequence::new(values, b0_squared)
}

/// Generalized Hermite sequence for the weight `|x|^gamma exp(-x^2)`.
pub fn seq_classical(gamma: &Q, len: usize) -> Result<GoverningSequence> {
    seq_generalized_hermite(gamma, &q(1), len)
}

/// Generalized Hermite sequence for `|x|^gamma exp(-alpha x^2)`: the classical
/// `v` with `b_0^2 = (gamma + 1) / (2 alpha)`.
pub fn seq_generalized_hermite(gamma: &Q, alpha: &Q, len: usize) -> Result<GoverningSequence> {
    require_len(len)?;
    if *gamma <= q(-1) {
        return Err(Error::Input(format!("gamma must exceed -1, got {gamma}")));
    }
    if !alpha.is_positive() {
        return Err(Error::Input(format!("alpha must be positive, got {alpha}")));
    }
    let g1 = gamma + q(1);
    let values = (0..=len as i64)
        .map(|n| {
            if n % 2 == 0 {
                (gamma + q(n + 1)) / &g1
            } else {
                q(n + 1) / &g1
            }
        })
        .collect();
    GoverningSequence::new(values, &g1 / (q(2) * alpha))
}

/// Two-parameter special family: `v_{2p+1} = (p+1) v1`, `v_{2m} = m v2 - (m-1)`.
pub fn seq_family(v1: &Q, v2: &Q, b0_squared: Q, len: usize) -> Result<GoverningSequence> {
    require_len(len)?;
    if *v1 < q(1) || v1 > v2 {
        return Err(Error::Input(format!(
            "special family needs 1 <= v1 <= v2, got v1 = {v1}, v2 = {v2}"
        )));
    }
    let values = (0..=len as i64)
        .map(|n| {
            if n % 2 == 1 {
                q((n - 1) / 2 + 1) * v1
            } else {
                let m = n / 2;
                q(m) * v2 - q(m - 1)
            }
        })
        .collect();
    GoverningSequence::new(values, b0_squared)
}

/// `[0], [1], ..., [N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    entries: Vec<Q>,
}

impl BracketTable {
    pub fn get(&self, n: usize) -> &Q {
        &self.entries[n]
    }

    pub fn entries(&self) -> &[Q] {
        &self.entries
    }

    pub fn max_index(&self) -> usize {
        self.entries.len() - 1
    }

    /// `[1][2]...[n]`, with `[0]! = 1`.
    pub fn factorial(&self, n: usize) -> Q {
        self.entries[1..=n].iter().fold(Q::one(), |acc, e| acc * e)
    }

    /// `[1][3]...[2m-1]`, with the empty product for `m = 0`.
    pub fn odd_double_factorial(&self, m: usize) -> Q {
        (1..=m).fold(Q::one(), |acc, j| acc * &self.entries[2 * j - 1])
    }
}

/// `[n] = v_{n-1} (v_n - v_{n-2}) / v_1` for `n >= 2`, `[1] = 1`, `[0] = 0`.
pub fn bracket(seq: &GoverningSequence) -> Result<BracketTable> {
    let v1 = seq.v(1);
    let mut entries = vec![Q::zero(), Q::one()];
    for n in 2..=seq.max_index() {
        let value = seq.v(n - 1) * (seq.v(n) - seq.v(n - 2)) / v1;
        if !value.is_positive() {
            return Err(Error::NonPositiveBracket {
                index: n,
                value: format_rational(&value),
            });
        }
        entries.push(value);
    }
    Ok(BracketTable { entries })
}

/// Squared recurrence coefficients: `squares()[k] = b_k^2` for `k = 0..N-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCoefficients {
    squares: Vec<Q>,
}

impl RecurrenceCoefficients {
    pub fn squares(&self) -> &[Q] {
        &self.squares
    }

    /// `b_k^2`, with `b_{-1} = 0`.
    pub fn square(&self, k: isize) -> Q {
        if k < 0 {
            Q::zero()
        } else {
            self.squares[k as usize].clone()
        }
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.squares
            .iter()
            .map(|s| crate::rational::to_f64(s).sqrt())
            .collect()
    }
}

/// `b_{n-1}^2 = b_0^2 [n]` for `n = 1..=N`.
pub fn recurrence_coeffs(seq: &GoverningSequence) -> Result<RecurrenceCoefficients> {
    let brackets = bracket(seq)?;
    let squares = brackets.entries()[1..]
        .iter()
        .map(|e| e * seq.b0_squared())
        .collect();
    Ok(RecurrenceCoefficients { squares })
}

/// Squared lowering constants: `squares()[n] = gamma_n^2`, `gamma_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCoefficients {
    squares: Vec<Q>,
}

impl GammaCoefficients {
    pub fn squares(&self) -> &[Q] {
        &self.squares
    }

    pub fn square(&self, n: usize) -> &Q {
        &self.squares[n]
    }
}

/// `gamma_n^2` computed both as `v_1 v_{n-1} / (b_0^2 (v_n - v_{n-2}))` and as
/// `v_{n-1}^2 / b_{n-1}^2`; the two must agree exactly.
pub fn gamma_coeffs(seq: &GoverningSequence) -> Result<GammaCoefficients> {
    let b = recurrence_coeffs(seq)?;
    let mut squares = vec![Q::zero()];
    for n in 1..=seq.max_index() {
        let n_ = n as isize;
        let from_brackets =
            seq.v(1) * seq.v(n - 1) / (seq.b0_squared() * (seq.v(n) - seq.v_ext(n_ - 2)));
        let from_recurrence = seq.v(n - 1) * seq.v(n - 1) / b.square(n_ - 1);
        if from_brackets != from_recurrence {
            return Err(Error::Consistency(format!(
                "gamma_{n}^2: {from_brackets} vs {from_recurrence}"
            )));
        }
        squares.push(from_brackets);
    }
    Ok(GammaCoefficients { squares })
}

/// `Some((v1, v2))` when every stored term obeys the two-parameter family rule.
pub fn is_special_family(seq: &GoverningSequence) -> Option<(Q, Q)> {
    if seq.max_index() < 2 {
        return None;
    }
    let v1 = seq.v(1).clone();
    let v2 = seq.v(2).clone();
    let fits = seq.values().iter().enumerate().all(|(n, v)| {
        if n % 2 == 1 {
            *v == q((n / 2 + 1) as i64) * &v1
        } else {
            let m = (n / 2) as i64;
            *v == q(m) * &v2 - q(m - 1)
        }
    });
    fits.then_some((v1, v2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(values: &[i64]) -> Vec<Q> {
        values.iter().map(|&v| q(v)).collect()
    }

    #[test]
    fn hermite_values() {
        assert_eq!(
            seq_hermite(3).unwrap().values(),
            ints(&[1, 2, 3, 4]).as_slice()
        );
        assert_eq!(seq_hermite(1).unwrap().values(), ints(&[1, 2]).as_slice());
        assert!(validate(&seq_hermite(20).unwrap()).unwrap().compatible());
        assert!(seq_hermite(0).is_err());
    }

    #[test]
    fn hermite_compatibility_at_4_2_by_hand() {
        let s = seq_hermite(4).unwrap();
        let lhs = s.v(2) * s.v(3) + s.v(1) * s.v(0);
        let rhs = s.v(4) * s.v(1) + s.v(3) * s.v(0);
        assert_eq!(lhs, q(14));
        assert_eq!(rhs, q(14));
    }

    #[test]
    fn constant_sequence_is_compatible() {
        let s = GoverningSequence::new(ints(&[1; 10]), q(1)).unwrap();
        let r = validate(&s).unwrap();
        assert!(r.compatible() && r.monotone());
    }

    #[test]
    fn validation_errors_and_witness() {
        let short = GoverningSequence::new(ints(&[1, 2]), q(1)).unwrap();
        assert!(matches!(validate(&short), Err(Error::Input(_))));
        let s = GoverningSequence::new(ints(&[1, 1, 2, 5, 7]), q(1)).unwrap();
        assert_eq!(validate(&s).unwrap().first_violation, Some((4, 2)));
        let dip = GoverningSequence::new(ints(&[1, 3, 2]), q(1)).unwrap();
        assert_eq!(validate(&dip).unwrap().first_descent, Some(1));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(GoverningSequence::new(vec![], q(1)).is_err());
        assert!(GoverningSequence::new(ints(&[2, 3]), q(1)).is_err());
        assert!(GoverningSequence::new(ints(&[1, 0]), q(1)).is_err());
        assert!(GoverningSequence::new(ints(&[1, 2]), q(0)).is_err());
    }

    #[test]
    fn order2_examples() {
        let half = qf(1, 2);
        assert_eq!(
            seq_order2(&q(2), 8, half.clone()).unwrap(),
            seq_hermite(8).unwrap()
        );
        let sq = seq_order2(&q(4), 3, half.clone()).unwrap();
        assert_eq!(sq.values(), ints(&[1, 4, 9, 16]).as_slice());
        let s = seq_order2(&q(4), 30, half.clone()).unwrap();
        for (n, v) in s.values().iter().enumerate() {
            assert_eq!(*v, q((n as i64 + 1).pow(2)));
        }
        assert!(seq_order2(&qf(1, 2), 3, half.clone()).is_err());
        // v1 = 1 drives v_2 to zero
        assert!(matches!(
            seq_order2(&q(1), 3, half),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn order3_examples() {
        let s = seq_order3(&q(8), &q(27), 10, qf(1, 2)).unwrap();
        for (n, v) in s.values().iter().enumerate() {
            assert_eq!(*v, q((n as i64 + 1).pow(3)));
        }
        assert_eq!(order3_value(&q(8), &q(27), 3), q(64));
        assert_eq!(order3_value(&q(8), &q(27), 2), q(27));
        // the closed form also reproduces v_0 and v_1
        assert_eq!(order3_value(&q(8), &q(27), 1), q(8));
        assert_eq!(order3_value(&q(8), &q(27), 0), q(1));
        assert!(seq_order3(&q(9), &q(8), 3, qf(1, 2)).is_err());
    }

    #[test]
    fn classical_examples() {
        assert_eq!(seq_classical(&q(0), 10).unwrap(), seq_hermite(10).unwrap());
        let s = seq_classical(&q(1), 5).unwrap();
        assert_eq!(s.values(), ints(&[1, 1, 2, 2, 3, 3]).as_slice());
        assert_eq!(*s.b0_squared(), q(1));
        assert_eq!(s.v(1), &(q(1) / s.b0_squared()));
        assert!(seq_classical(&q(-1), 5).is_err());
        assert!(seq_generalized_hermite(&q(1), &q(0), 5).is_err());
        let scaled = seq_generalized_hermite(&q(2), &qf(1, 2), 4).unwrap();
        assert_eq!(*scaled.b0_squared(), q(3));
    }

    #[test]
    fn family_examples() {
        let s = seq_family(&q(2), &q(3), qf(1, 2), 12).unwrap();
        assert_eq!(s, seq_hermite(12).unwrap());
        let c = seq_family(&q(1), &q(2), q(1), 9).unwrap();
        assert_eq!(c, seq_classical(&q(1), 9).unwrap());
        let r = validate(&seq_family(&q(1), &q(5), q(1), 12).unwrap()).unwrap();
        assert!(r.compatible());
        assert!(seq_family(&q(3), &q(2), q(1), 5).is_err());
    }

    #[test]
    fn brackets() {
        let h = bracket(&seq_hermite(10).unwrap()).unwrap();
        for n in 0..=10 {
            assert_eq!(*h.get(n), q(n as i64));
        }
        let c = bracket(&seq_classical(&q(1), 6).unwrap()).unwrap();
        assert_eq!(*c.get(2), q(1));
        assert_eq!(*c.get(1), q(1));
        let flat = GoverningSequence::new(ints(&[1, 1, 1, 1]), q(1)).unwrap();
        assert!(matches!(
            bracket(&flat),
            Err(Error::NonPositiveBracket { index: 2, .. })
        ));
    }

    #[test]
    fn recurrence_coefficients() {
        let h = recurrence_coeffs(&seq_hermite(10).unwrap()).unwrap();
        for n in 1..=10 {
            assert_eq!(h.square(n as isize - 1), qf(n as i64, 2));
        }
        assert_eq!(h.square(-1), q(0));
        for gamma in [q(1), qf(1, 2), q(3)] {
            let b = recurrence_coeffs(&seq_classical(&gamma, 12).unwrap()).unwrap();
            for n in 1..=12i64 {
                let expected = if n % 2 == 0 { q(n) } else { q(n) + &gamma };
                assert_eq!(q(2) * b.square(n as isize - 1), expected);
            }
            assert_eq!(b.square(0), (&gamma + q(1)) / q(2));
        }
    }

    #[test]
    fn gamma_coefficients() {
        let h = gamma_coeffs(&seq_hermite(10).unwrap()).unwrap();
        for n in 1..=10 {
            assert_eq!(*h.square(n), q(2 * n as i64));
        }
        for gamma in [q(1), q(2), qf(1, 3)] {
            let s = seq_classical(&gamma, 12).unwrap();
            let g = gamma_coeffs(&s).unwrap();
            let pref = q(2) / ((&gamma + q(1)) * (&gamma + q(1)));
            for n in 1..=12i64 {
                let inner = if n % 2 == 0 { q(n) } else { q(n) + &gamma };
                assert_eq!(*g.square(n as usize), &pref * inner);
            }
            assert_eq!(*g.square(1), q(1) / s.b0_squared());
        }
    }

    #[test]
    fn special_family_detection() {
        assert_eq!(
            is_special_family(&seq_hermite(12).unwrap()),
            Some((q(2), q(3)))
        );
        let gamma = qf(1, 2);
        let v1 = q(2) / (&gamma + q(1));
        assert_eq!(
            is_special_family(&seq_classical(&gamma, 12).unwrap()),
            Some((v1.clone(), q(1) + v1))
        );
        assert_eq!(
            is_special_family(&seq_order2(&q(3), 12, qf(1, 2)).unwrap()),
            None
        );
    }

    #[test]
    fn json_roundtrip_uses_rational_strings() {
        let s = seq_classical(&qf(1, 3), 4).unwrap();
        let text = s.to_json();
        assert!(text.contains("\"b0_squared\": \"2/3\""));
        assert_eq!(GoverningSequence::from_json(&text).unwrap(), s);
        assert!(GoverningSequence::from_json("{\"values\": [\"1\"]}").is_err());
    }
}
