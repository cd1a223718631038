//! Integer partitions in canonical form (no trailing zeros).
//!
//! A partition doubles as a polynomial highest weight: padding it with zeros
//! to a group's rank gives the weight in the standard `L_i` coordinates.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Largest accepted part.
pub const MAX_PART: i64 = 1_000_000;
/// Largest accepted length.
pub const MAX_LENGTH: usize = 64;

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    /// Builds a partition, accepting trailing zeros and stripping them.
    pub fn new(parts: impl Into<Vec<i64>>) -> Result<Self> {
        let mut parts = parts.into();
        for (i, &p) in parts.iter().enumerate() {
            if p < 0 {
                return Err(invalid(format!("negative part {p} in partition")));
            }
            if p > MAX_PART {
                return Err(invalid(format!("part {p} exceeds the cap {MAX_PART}")));
            }
            if i > 0 && parts[i - 1] < p {
                return Err(invalid(format!(
                    "parts {:?} are not weakly decreasing",
                    parts
                )));
            }
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.len() > MAX_LENGTH {
            return Err(invalid(format!(
                "partition length {} exceeds the cap {MAX_LENGTH}",
                parts.len()
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Single-row partition `(k)`.
    pub fn row(k: i64) -> Result<Self> {
        Self::new(vec![k])
    }

    /// Trusted constructor for parts already known to be canonical.
    pub(crate) fn from_canonical(parts: Vec<i64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last().is_none_or(|&p| p > 0));
        Self { parts }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Index of the last nonzero part.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (zero-based), reading zero beyond the length.
    pub fn part(&self, i: usize) -> i64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The last nonzero part, or 0 for the empty partition.
    pub fn last_part(&self) -> i64 {
        self.parts.last().copied().unwrap_or(0)
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Zero-padded coordinates of length `rank`.
    pub fn padded(&self, rank: usize) -> Result<Vec<i64>> {
        if self.length() > rank {
            return Err(invalid(format!(
                "partition ({self}) has length {} > rank {rank}",
                self.length()
            )));
        }
        let mut v = self.parts.clone();
        v.resize(rank, 0);
        Ok(v)
    }

    /// Splits off the last row: `(mu_1, ..., mu_r)` into `((mu_1, ..., mu_{r-1}), mu_r)`.
    pub fn split_last(&self) -> Option<(Partition, i64)> {
        let (&last, rest) = self.parts.split_last()?;
        Some((Self::from_canonical(rest.to_vec()), last))
    }

    /// Appends a row below the last one.
    pub fn with_row(&self, row: i64) -> Result<Partition> {
        let mut parts = self.parts.clone();
        parts.push(row);
        if row <= 0 || (self.length() > 0 && self.last_part() < row) {
            return Err(invalid(format!(
                "appending {row} to ({self}) does not give a partition"
            )));
        }
        Partition::new(parts)
    }

    /// True iff `inner[i] <= self[i]` for every `i`.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner.length() <= self.length() && inner.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }
}

/// True iff `inner ⊆ outer` and `outer / inner` has at most one box per column,
/// i.e. `outer[i] >= inner[i] >= outer[i+1]` for all `i`.
pub fn is_horizontal_strip(outer: &Partition, inner: &Partition) -> bool {
    let n = outer.length().max(inner.length());
    (0..n).all(|i| outer.part(i) >= inner.part(i) && inner.part(i) >= outer.part(i + 1))
}

/// Number of boxes in the skew shape `outer / inner`.
pub fn skew_size(outer: &Partition, inner: &Partition) -> Result<i64> {
    if !outer.contains(inner) {
        return Err(invalid(format!("({inner}) is not contained in ({outer})")));
    }
    Ok(outer.size() - inner.size())
}

/// The well-founded order driving the Pieri recursion: `a < b` iff `a` is
/// shorter, or both have length `r` and `a_r < b_r`. Pairs of equal length and
/// equal last part are incomparable.
pub fn order_less(a: &Partition, b: &Partition) -> bool {
    match a.length().cmp(&b.length()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => a.length() > 0 && a.last_part() < b.last_part(),
    }
}

/// All partitions of `size` with at most `max_len` parts, in descending
/// lexicographic order.
pub fn partitions_of(size: i64, max_len: usize) -> Vec<Partition> {
    fn go(rem: i64, cap: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_canonical(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size >= 0 {
        go(size, size, max_len, &mut Vec::new(), &mut out);
    }
    out
}

/// All partitions with `size <= max_size` and at most `max_len` parts.
pub fn partitions_up_to(max_size: i64, max_len: usize) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(|s| partitions_of(s, max_len))
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the comma-separated text form; `""` and `"0"` are the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| invalid(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn length_examples() {
        assert_eq!(p(&[2, 1, 1, 0, 0]).length(), 3);
        assert_eq!(Partition::empty().length(), 0);
        assert_eq!(p(&[5]).length(), 1);
    }

    #[test]
    fn horizontal_strip_examples() {
        assert!(is_horizontal_strip(&p(&[3, 2]), &p(&[2, 1])));
        assert!(!is_horizontal_strip(&p(&[3, 3]), &p(&[1, 1])));
        assert!(is_horizontal_strip(&p(&[2, 1, 1]), &p(&[2, 1, 1])));
        // not contained
        assert!(!is_horizontal_strip(&p(&[1]), &p(&[2])));
    }

    #[test]
    fn skew_size_examples() {
        assert_eq!(skew_size(&p(&[3, 2, 1]), &p(&[2, 1])).unwrap(), 3);
        assert_eq!(skew_size(&p(&[4, 2]), &p(&[4, 2])).unwrap(), 0);
        assert_eq!(skew_size(&p(&[2, 2]), &Partition::empty()).unwrap(), 4);
        assert!(matches!(
            skew_size(&p(&[2]), &p(&[1, 1])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn order_examples() {
        assert!(order_less(&p(&[1, 1]), &p(&[2, 1, 1])));
        assert!(order_less(&p(&[3, 1]), &p(&[3, 2])));
        // equal length: only the last part decides
        assert!(!order_less(&p(&[2, 2]), &p(&[3, 1])));
        assert!(order_less(&p(&[3, 1]), &p(&[2, 2])));
        // equal length and equal last part: incomparable
        assert!(!order_less(&p(&[3, 1]), &p(&[2, 1])));
        assert!(!order_less(&p(&[2, 1]), &p(&[3, 1])));
        assert!(!order_less(&Partition::empty(), &Partition::empty()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![-1]).is_err());
        assert!(Partition::new(vec![MAX_PART + 1]).is_err());
        assert!(Partition::new(vec![1; MAX_LENGTH + 1]).is_err());
        assert!(Partition::new(vec![1; MAX_LENGTH]).is_ok());
    }

    #[test]
    fn text_form() {
        assert_eq!("2,1,1".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("(3,1,0)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert!("1,x".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(p(&[2, 1, 1]).to_string(), "2,1,1");
    }

    #[test]
    fn split_and_extend() {
        let (head, last) = p(&[3, 2, 1]).split_last().unwrap();
        assert_eq!(head, p(&[3, 2]));
        assert_eq!(last, 1);
        assert_eq!(head.with_row(1).unwrap(), p(&[3, 2, 1]));
        assert!(p(&[1]).with_row(2).is_err());
        assert!(Partition::empty().split_last().is_none());
    }

    #[test]
    fn partition_counts() {
        // p(n) for n = 0..8
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n, 64).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_of(4, 2).len(), 3);
    }
}
