use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{internal, Result};
use crate::oracle::dim;
use crate::rootsystem::{DominantWeight, Family};
use crate::Partition;

/// Multiplicities of irreducible constituents, `nu -> N^nu`.
///
/// Keys are dominant weights padded to the family's rank; zero multiplicities
/// are never stored. Iteration is in descending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    family: Family,
    terms: BTreeMap<DominantWeight, u64>,
}

impl Decomposition {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            terms: BTreeMap::new(),
        }
    }

    /// The decomposition of a single irreducible.
    pub fn irreducible(family: Family, weight: DominantWeight) -> Self {
        let mut d = Self::new(family);
        d.terms.insert(weight, 1);
        d
    }

    /// Builds from `(coords, multiplicity)` pairs, validating every weight.
    /// Multiplicities of repeated weights add up; zeros are dropped.
    pub fn from_terms<I>(family: Family, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, u64)>,
    {
        let mut d = Self::new(family);
        for (coords, m) in terms {
            let w = DominantWeight::new(family, coords)?;
            d.add(w, m)?;
        }
        Ok(d)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub(crate) fn add(&mut self, weight: DominantWeight, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(weight).or_insert(0);
        *slot = slot
            .checked_add(mult)
            .ok_or_else(|| crate::Error::Resource("multiplicity overflow".into()))?;
        Ok(())
    }

    pub fn get(&self, weight: &DominantWeight) -> u64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    /// Multiplicity of a partition padded to this rank; 0 if it does not fit.
    pub fn get_partition(&self, p: &Partition) -> u64 {
        match p.padded(self.family.rank) {
            Ok(v) => self.get(&DominantWeight::new_unchecked(v)),
            Err(_) => 0,
        }
    }

    /// Terms in descending lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&DominantWeight, u64)> + '_ {
        self.terms.iter().rev().map(|(w, &m)| (w, m))
    }

    /// Number of distinct constituents.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }

    /// The coefficient table with trailing zeros stripped from every weight,
    /// so tables at different ranks compare equal when they agree up to padding.
    pub fn stripped_table(&self) -> BTreeMap<Vec<i64>, u64> {
        self.terms
            .iter()
            .map(|(w, &m)| (w.stripped().to_vec(), m))
            .collect()
    }

    /// Terms as partitions; `None` if some weight has a negative coordinate.
    pub fn to_partitions(&self) -> Option<BTreeMap<Partition, u64>> {
        self.terms
            .iter()
            .map(|(w, &m)| w.to_partition().map(|p| (p, m)))
            .collect()
    }

    /// Largest length among the constituents.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|w| w.length()).max().unwrap_or(0)
    }

    /// `sum N^nu dim(nu)`.
    pub fn total_dimension(&self) -> BigUint {
        self.terms
            .iter()
            .map(|(w, &m)| dim(self.family, w) * BigUint::from(m))
            .sum()
    }

    /// Checks `dim(lhs) dim(rhs) = sum N^nu dim(nu)`.
    pub fn check_dimension(&self, lhs: &DominantWeight, rhs: &DominantWeight) -> Result<()> {
        let expected = dim(self.family, lhs) * dim(self.family, rhs);
        let got = self.total_dimension();
        if expected != got {
            return Err(internal(format!(
                "dimension mismatch for {lhs} x {rhs} in {}: expected {expected}, got {got}",
                self.family
            )));
        }
        Ok(())
    }
}

/// Prints like `(2,2,1,1) + 3×(2,1,1,0)`.
impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m > 1 {
                write!(f, "{m}×")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}
