use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Weakly decreasing sequence of positive parts. Zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Self::trimmed(parts))
    }

    /// Sort any composition into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::trimmed(parts)
    }

    fn trimmed(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn row(k: usize) -> Self {
        Self::trimmed(vec![k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// `f_j`: number of parts equal to `j`.
    pub fn frequency(&self, j: usize) -> usize {
        self.0.iter().filter(|&&x| x == j).count()
    }

    /// `n(κ) = Σ (i-1) κ_i`.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &k)| i * k).sum()
    }

    pub fn conjugate(&self) -> Self {
        Partition(
            (1..=self.first())
                .map(|j| self.0.iter().filter(|&&k| k >= j).count())
                .collect(),
        )
    }

    /// Arm of node `(i, j)`, both 1-based.
    pub fn arm(&self, i: usize, j: usize) -> usize {
        self.part(i - 1) - j
    }

    pub fn leg(&self, i: usize, j: usize) -> usize {
        self.conjugate().part(j - 1) - i
    }

    /// Diagram nodes `(row, column)`, 1-based, row by row.
    pub fn nodes(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| (1..=k).map(move |j| (i + 1, j)))
            .collect()
    }

    /// Partial-sum comparison. `None` when incomparable or of different weight.
    pub fn dominance_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.weight() != other.weight() {
            return None;
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        let (mut ge, mut le) = (true, true);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            ge &= a >= b;
            le &= a <= b;
        }
        match (ge, le) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    /// `self ≤ other` in dominance.
    pub fn dominated_by(&self, other: &Self) -> bool {
        matches!(self.dominance_cmp(other), Some(Ordering::Less | Ordering::Equal))
    }

    /// Reverse lexicographic comparison: first differing part decides.
    pub fn revlex_cmp(&self, other: &Self) -> Ordering {
        let n = self.len().max(other.len());
        (0..n)
            .map(|i| self.part(i).cmp(&other.part(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// All partitions of `k`, largest first in revlex.
    pub fn all(k: usize) -> Vec<Partition> {
        Self::bounded(k, usize::MAX)
    }

    /// Partitions of `k` with at most `n` parts, largest first.
    pub fn bounded(k: usize, n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(k, k, n, &mut Vec::new(), &mut out);
        out
    }

    /// `z_σ(t) = ∏ i^{f_i} f_i! (1 - t^i)^{-f_i}`.
    pub fn z_sigma(&self) -> ExactScalar {
        let mut num = BigInt::from(1);
        let mut den = ExactScalar::one();
        for i in 1..=self.first() {
            let f = self.frequency(i);
            for m in 1..=f {
                num *= BigInt::from(i) * BigInt::from(m);
            }
            let factor = &ExactScalar::one() - &ExactScalar::t_pow(i as i64);
            for _ in 0..f {
                den = &den * &factor;
            }
        }
        &ExactScalar::from_int(num) / &den
    }

    /// `(c_κ, c'_κ)`: `∏ (1 - q^a t^{l+1})` and `∏ (1 - q^{a+1} t^l)` over nodes.
    pub fn arm_leg_products(&self) -> (ExactScalar, ExactScalar) {
        let conj = self.conjugate();
        let mut c = ExactScalar::one();
        let mut cp = ExactScalar::one();
        for (i, j) in self.nodes() {
            let a = (self.part(i - 1) - j) as i64;
            let l = (conj.part(j - 1) - i) as i64;
            c = &c * &(&ExactScalar::one() - &ExactScalar::monomial(1, a, l + 1));
            cp = &cp * &(&ExactScalar::one() - &ExactScalar::monomial(1, a + 1, l));
        }
        (c, cp)
    }

    /// `X^κ_{(k)} = ∏ (t^{i-1} - q^{j-1})` over nodes other than `(1, 1)`.
    pub fn x_row_coeff(&self) -> Result<ExactScalar> {
        if self.is_empty() {
            return Err(Error::InvalidArgument("x_row_coeff of the empty partition".into()));
        }
        Ok(self
            .nodes()
            .into_iter()
            .filter(|&n| n != (1, 1))
            .map(|(i, j)| &ExactScalar::t_pow(i as i64 - 1) - &ExactScalar::q_pow(j as i64 - 1))
            .product())
    }
}

/// Weight first, then reverse lexicographic.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.revlex_cmp(other))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `2,1,1`; the empty partition prints as `0`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Accepts `2,1,1`, `2 1 1` and frequency notation `2 1^2`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad partition '{s}'"));
        let mut parts = Vec::new();
        for tok in s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let (p, m) = match tok.split_once('^') {
                Some((p, m)) => (p, m.parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let p: usize = p.parse().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(p, m));
        }
        Partition::new(parts).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn revlex_examples() {
        assert_eq!(p("2").revlex_cmp(&p("1,1")), Ordering::Greater);
        assert_eq!(p("2,1").revlex_cmp(&p("1,1,1")), Ordering::Greater);
        assert_eq!(p("3,1").revlex_cmp(&p("2,2")), Ordering::Greater);
        assert!(p("1") < p("1,1"));
    }

    #[test]
    fn parsing() {
        assert_eq!(p("2 1^2"), p("2,1,1"));
        assert_eq!(p("2,1,1").to_string(), "2,1,1");
        assert_eq!(p("0"), Partition::empty());
        assert_eq!(p(""), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..8).map(|k| Partition::all(k).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(Partition::bounded(4, 2), vec![p("4"), p("3,1"), p("2,2")]);
    }

    #[test]
    fn dominance() {
        assert_eq!(p("3,3").dominance_cmp(&p("4,1,1")), None);
        assert!(p("2,1,1").dominated_by(&p("2,2")));
        assert!(!p("2,2").dominated_by(&p("2,1,1")));
    }

    #[test]
    fn statistics() {
        assert_eq!(p("2,1").n_stat(), 1);
        assert_eq!(p("1").z_sigma().to_string(), "1/(1 - t)");
        assert_eq!(p("1,1").z_sigma().to_string(), "2/(1 - 2*t + t^2)");
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        assert_eq!((p("3,1").arm(1, 1), p("3,1").leg(1, 1)), (2, 1));
    }

    #[test]
    fn arm_leg_products() {
        let (c, cp) = p("1").arm_leg_products();
        assert_eq!((c.to_string().as_str(), cp.to_string().as_str()), ("1 - t", "1 - q"));
        let (c2, _) = p("2").arm_leg_products();
        let want =
            &(&ExactScalar::one() - &ExactScalar::monomial(1, 1, 1)) * &(&ExactScalar::one() - &ExactScalar::t());
        assert_eq!(c2, want);
        let (_, cp11) = p("1,1").arm_leg_products();
        let want =
            &(&ExactScalar::one() - &ExactScalar::monomial(1, 1, 1)) * &(&ExactScalar::one() - &ExactScalar::q());
        assert_eq!(cp11, want);
    }

    #[test]
    fn x_row() {
        assert!(p("1").x_row_coeff().unwrap().is_one());
        assert_eq!(p("1,1").x_row_coeff().unwrap().to_string(), "-1 + t");
        let x3 = p("3").x_row_coeff().unwrap();
        let want: ExactScalar = (1..3).map(|m| &ExactScalar::one() - &ExactScalar::q_pow(m)).product();
        assert_eq!(x3, want);
        assert!(Partition::empty().x_row_coeff().is_err());
    }
}
