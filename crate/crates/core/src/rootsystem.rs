//! Root data for the classical families in the standard `L_i` coordinates.
//!
//! Half-integral vectors (the `B_n` shift by rho) are carried in doubled
//! coordinates; every routine that only inspects walls and chambers is
//! invariant under that scaling.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{invalid, Error, Result};

/// The four classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// `GL(n)`, type `A_{n-1}`.
    Gl,
    /// `Sp(2n)`, type `C_n`.
    Sp,
    /// `SO(2n+1)`, type `B_n`.
    SoOdd,
    /// `SO(2n)`, type `D_n`.
    SoEven,
}

impl FamilyKind {
    pub const CLASSICAL: [FamilyKind; 3] = [FamilyKind::Sp, FamilyKind::SoOdd, FamilyKind::SoEven];
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Gl,
        FamilyKind::Sp,
        FamilyKind::SoOdd,
        FamilyKind::SoEven,
    ];

    /// Flag spelling used on the command line and in cache records.
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Gl => "gl",
            FamilyKind::Sp => "sp",
            FamilyKind::SoOdd => "so-odd",
            FamilyKind::SoEven => "so-even",
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            FamilyKind::SoEven => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gl" => Ok(FamilyKind::Gl),
            "sp" => Ok(FamilyKind::Sp),
            "so-odd" | "soodd" | "so_odd" => Ok(FamilyKind::SoOdd),
            "so-even" | "soeven" | "so_even" => Ok(FamilyKind::SoEven),
            other => Err(invalid(format!(
                "unknown group {other:?} (expected gl, sp, so-odd or so-even)"
            ))),
        }
    }
}

/// A family together with its rank `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    pub kind: FamilyKind,
    pub rank: usize,
}

impl Family {
    pub fn new(kind: FamilyKind, rank: usize) -> Result<Self> {
        if rank < kind.min_rank() {
            return Err(invalid(format!(
                "rank {rank} is too small for {kind} (minimum {})",
                kind.min_rank()
            )));
        }
        if rank > crate::partition::MAX_LENGTH {
            return Err(invalid(format!("rank {rank} exceeds the cap")));
        }
        Ok(Self { kind, rank })
    }

    /// Size of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        match self.kind {
            FamilyKind::Gl => self.rank,
            FamilyKind::Sp | FamilyKind::SoEven => 2 * self.rank,
            FamilyKind::SoOdd => 2 * self.rank + 1,
        }
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            return Err(invalid(format!(
                "vector of length {} for {self} (rank {})",
                v.len(),
                self.rank
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            FamilyKind::Gl => "GL",
            FamilyKind::Sp => "Sp",
            FamilyKind::SoOdd | FamilyKind::SoEven => "SO",
        };
        write!(f, "{name}({})", self.matrix_size())
    }
}

/// A dominant integral weight, stored with exactly `rank` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(family: Family, coords: Vec<i64>) -> Result<Self> {
        if !is_dominant(family, &coords)? {
            return Err(invalid(format!("{coords:?} is not dominant for {family}")));
        }
        Ok(Self(coords))
    }

    pub(crate) fn new_unchecked(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(family: Family) -> Self {
        Self(vec![0; family.rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// Index of the last nonzero coordinate, counted from one.
    pub fn length(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1)
    }

    /// The coordinates with trailing zeros dropped; equal across ranks for the
    /// same partition.
    pub fn stripped(&self) -> &[i64] {
        &self.0[..self.length()]
    }

    /// The weight as a partition, when no coordinate is negative.
    pub fn to_partition(&self) -> Option<crate::Partition> {
        if self.0.iter().any(|&c| c < 0) {
            return None;
        }
        crate::Partition::new(self.0.clone()).ok()
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of moving a vector into the closed dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChamberResult {
    /// Some reflection fixes the vector.
    OnWall,
    /// The unique strictly dominant representative and the determinant of the
    /// Weyl element that reaches it.
    Regular { weight: Vec<i64>, sign: i64 },
}

/// Twice the half-sum of positive roots.
pub fn rho_doubled(family: Family) -> Vec<i64> {
    let n = family.rank as i64;
    (0..n)
        .map(|i| match family.kind {
            FamilyKind::Gl | FamilyKind::SoEven => 2 * (n - 1 - i),
            FamilyKind::Sp => 2 * (n - i),
            FamilyKind::SoOdd => 2 * (n - i) - 1,
        })
        .collect()
}

/// rho as exact `(numerator, denominator)` pairs in lowest terms.
pub fn rho(family: Family) -> Vec<(i64, i64)> {
    rho_doubled(family)
        .into_iter()
        .map(|d| if d % 2 == 0 { (d / 2, 1) } else { (d, 2) })
        .collect()
}

pub fn is_dominant(family: Family, v: &[i64]) -> Result<bool> {
    family.check_len(v)?;
    let decreasing = v.windows(2).all(|w| w[0] >= w[1]);
    let n = v.len();
    Ok(match family.kind {
        FamilyKind::Gl | FamilyKind::Sp | FamilyKind::SoOdd => {
            decreasing && v.last().is_none_or(|&x| x >= 0)
        }
        FamilyKind::SoEven => {
            v[..n - 1].windows(2).all(|w| w[0] >= w[1]) && v[n - 2] >= v[n - 1].abs()
        }
    })
}

/// Moves `v` into the dominant chamber by a signed permutation.
///
/// Walls: equal coordinates (all types); for `B`/`C` also a zero coordinate
/// and a pair summing to zero; for `D` only pairs with equal absolute value.
pub fn reflect_to_dominant(family: Family, v: &[i64]) -> Result<ChamberResult> {
    family.check_len(v)?;
    let signed = family.kind != FamilyKind::Gl;
    let key: Vec<i64> = if signed {
        v.iter().map(|x| x.abs()).collect()
    } else {
        v.to_vec()
    };

    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_unstable_by(|&a, &b| key[b].cmp(&key[a]));
    if order.windows(2).any(|w| key[w[0]] == key[w[1]]) {
        return Ok(ChamberResult::OnWall);
    }
    let has_zero = key.last().is_some() && key[order[order.len() - 1]] == 0;
    if matches!(family.kind, FamilyKind::Sp | FamilyKind::SoOdd) && has_zero {
        return Ok(ChamberResult::OnWall);
    }

    let mut sign = permutation_sign(&order);
    let mut weight: Vec<i64> = order.iter().map(|&i| key[i]).collect();
    if signed {
        let negatives = v.iter().filter(|&&x| x < 0).count();
        match family.kind {
            FamilyKind::SoEven => {
                if negatives % 2 == 1 && !has_zero {
                    let last = weight.len() - 1;
                    weight[last] = -weight[last];
                }
            }
            _ => {
                if negatives % 2 == 1 {
                    sign = -sign;
                }
            }
        }
    }
    Ok(ChamberResult::Regular { weight, sign })
}

/// The dominant element of the Weyl orbit of `v` (walls allowed).
pub fn dominant_representative(family: Family, v: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64>;
    match family.kind {
        FamilyKind::Gl => {
            out = v.to_vec();
            out.sort_unstable_by(|a, b| b.cmp(a));
        }
        _ => {
            out = v.iter().map(|x| x.abs()).collect();
            out.sort_unstable_by(|a, b| b.cmp(a));
            if family.kind == FamilyKind::SoEven {
                let negatives = v.iter().filter(|&&x| x < 0).count();
                let last = out.len() - 1;
                if negatives % 2 == 1 && out[last] != 0 {
                    out[last] = -out[last];
                }
            }
        }
    }
    out
}

/// Size of the Weyl orbit through `v`, saturating at `u128::MAX`.
pub fn orbit_size(family: Family, v: &[i64]) -> u128 {
    fn binomial(n: usize, k: usize) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }
    let key: Vec<i64> = match family.kind {
        FamilyKind::Gl => v.to_vec(),
        _ => v.iter().map(|x| x.abs()).collect(),
    };
    let mut counts: HashMap<i64, usize> = HashMap::new();
    for &k in &key {
        *counts.entry(k).or_default() += 1;
    }
    let mut remaining = v.len();
    let mut perms = 1u128;
    for &c in counts.values() {
        perms = perms.saturating_mul(binomial(remaining, c));
        remaining -= c;
    }
    match family.kind {
        FamilyKind::Gl => perms,
        _ => {
            let nonzero = key.iter().filter(|&&k| k != 0).count() as u32;
            let signs = 1u128.checked_shl(nonzero).unwrap_or(u128::MAX);
            let full = perms.saturating_mul(signs);
            if family.kind == FamilyKind::SoEven && nonzero as usize == v.len() {
                full / 2
            } else {
                full
            }
        }
    }
}

/// Sign of the permutation `i -> perm[i]`, via cycle decomposition.
fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

type RootCache = RwLock<HashMap<Family, Arc<[Vec<i64>]>>>;

/// Positive roots: `e_i - e_j` (all types), `e_i + e_j` (`B`, `C`, `D`),
/// `2 e_i` (`C`) and `e_i` (`B`).
pub fn positive_roots(family: Family) -> Arc<[Vec<i64>]> {
    static CACHE: OnceLock<RootCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.read().unwrap().get(&family) {
        return r.clone();
    }
    let roots: Arc<[Vec<i64>]> = build_positive_roots(family).into();
    cache
        .write()
        .unwrap()
        .entry(family)
        .or_insert(roots)
        .clone()
}

fn build_positive_roots(family: Family) -> Vec<Vec<i64>> {
    let n = family.rank;
    let unit = |i: usize, c: i64| {
        let mut v = vec![0; n];
        v[i] = c;
        v
    };
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut minus = unit(i, 1);
            minus[j] = -1;
            roots.push(minus);
            if family.kind != FamilyKind::Gl {
                let mut plus = unit(i, 1);
                plus[j] = 1;
                roots.push(plus);
            }
        }
    }
    match family.kind {
        FamilyKind::Sp => roots.extend((0..n).map(|i| unit(i, 2))),
        FamilyKind::SoOdd => roots.extend((0..n).map(|i| unit(i, 1))),
        _ => {}
    }
    roots
}

/// Number of simple reflections generating the Weyl group.
pub fn simple_reflection_count(family: Family) -> usize {
    match family.kind {
        FamilyKind::Gl => family.rank - 1,
        _ => family.rank,
    }
}

/// Applies simple reflection `i` in place. Reflections `0..rank-1` swap
/// adjacent coordinates; the last one is type-specific.
pub fn apply_simple_reflection(family: Family, i: usize, v: &mut [i64]) {
    let n = family.rank;
    if i + 1 < n {
        v.swap(i, i + 1);
        return;
    }
    match family.kind {
        FamilyKind::Gl => unreachable!("GL({n}) has {} simple reflections", n - 1),
        FamilyKind::Sp | FamilyKind::SoOdd => v[n - 1] = -v[n - 1],
        FamilyKind::SoEven => {
            let (a, b) = (v[n - 2], v[n - 1]);
            v[n - 2] = -b;
            v[n - 1] = -a;
        }
    }
}

/// The Weyl orbit of `v`.
pub fn orbit(family: Family, v: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack = vec![v.to_vec()];
    seen.insert(v.to_vec());
    let gens = simple_reflection_count(family);
    while let Some(cur) = stack.pop() {
        for i in 0..gens {
            let mut next = cur.clone();
            apply_simple_reflection(family, i, &mut next);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
