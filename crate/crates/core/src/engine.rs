//! Tensor products in the stable range and the stability analysis built on
//! them.
//!
//! For a classical family of rank `n >= l(lam) + l(mu)` (`+ 1` for `SO(2n)`)
//! the product is computed by peeling off the last row of `mu`:
//!
//! ```text
//! lam ⊗ mu = (lam ⊗ mu') ⊗ (mu_r) - sum_{nu < mu} N^nu_{mu', mu_r} (lam ⊗ nu)
//! ```
//!
//! where `mu'` drops the last row and the sum runs over the non-leading terms
//! of `Pi_{mu'} ⊗ Pi_{(mu_r)}`. Each of those is strictly smaller than `mu`
//! under [`order_less`], so the recursion terminates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::decomposition::Decomposition;
use crate::error::{internal, invalid, Error, Result};
use crate::oracle::{tensor_oracle, OracleConfig};
use crate::partition::{order_less, Partition};
use crate::pieri::{gl_pieri, last_row_table, pieri_table, to_decomposition};
use crate::rootsystem::{Family, FamilyKind};

type Table = BTreeMap<Partition, u64>;
type MemoKey = (FamilyKind, usize, Partition, Partition);

/// Smallest rank at which [`Engine::tensor_stable_range`] accepts the pair:
/// `l(lam) + l(mu)` for `Sp` and `SO(2n+1)`, one more for `SO(2n)`. For `GL`
/// this is the rank from which the tables stop changing.
pub fn stable_threshold(kind: FamilyKind, lam: &Partition, mu: &Partition) -> usize {
    let n0 = lam.length() + mu.length();
    match kind {
        FamilyKind::SoEven => (n0 + 1).max(kind.min_rank()),
        _ => n0.max(1),
    }
}

/// Pieri-recursion engine with a memo table shared across calls.
pub struct Engine {
    config: OracleConfig,
    memo: Option<RwLock<HashMap<MemoKey, Arc<Table>>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::with_config(OracleConfig::default())
    }

    pub fn with_config(config: OracleConfig) -> Self {
        Self {
            config,
            memo: Some(RwLock::new(HashMap::new())),
        }
    }

    /// An engine that recomputes every subproblem.
    pub fn without_memo() -> Self {
        Self {
            config: OracleConfig::default(),
            memo: None,
        }
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    /// Number of memoised subproblems.
    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.read().unwrap().len())
    }

    /// `lam ⊗ mu` by the Pieri recursion. Refuses ranks below
    /// [`stable_threshold`].
    pub fn tensor_stable_range(
        &self,
        family: Family,
        lam: &Partition,
        mu: &Partition,
    ) -> Result<Decomposition> {
        if family.kind == FamilyKind::Gl {
            return Err(invalid("GL products go through gl_tensor"));
        }
        let minimal_rank = stable_threshold(family.kind, lam, mu);
        if family.rank < minimal_rank {
            return Err(Error::OutOfStableRange {
                family,
                minimal_rank,
            });
        }
        let table = self.product(family, lam, mu)?;
        let dec = to_decomposition(family, &table)?;
        dec.check_dimension(&lam.weight(family)?, &mu.weight(family)?)?;
        Ok(dec)
    }

    fn product(&self, family: Family, lam: &Partition, mu: &Partition) -> Result<Arc<Table>> {
        let key = (family.kind, family.rank, lam.clone(), mu.clone());
        if let Some(memo) = &self.memo {
            if let Some(t) = memo.read().unwrap().get(&key) {
                return Ok(t.clone());
            }
        }
        let table = Arc::new(self.product_uncached(family, lam, mu)?);
        if let Some(memo) = &self.memo {
            return Ok(memo.write().unwrap().entry(key).or_insert(table).clone());
        }
        Ok(table)
    }

    fn product_uncached(&self, family: Family, lam: &Partition, mu: &Partition) -> Result<Table> {
        let Some((mu_prime, mu_r)) = mu.split_last() else {
            return Ok([(lam.clone(), 1)].into());
        };
        if mu_prime.is_empty() {
            return pieri_table(lam, mu_r, family);
        }

        let mut acc: BTreeMap<Partition, i128> = BTreeMap::new();
        for (nu, &c) in self.product(family, lam, &mu_prime)?.iter() {
            for (kappa, n) in pieri_table(nu, mu_r, family)? {
                *acc.entry(kappa).or_default() += c as i128 * n as i128;
            }
        }

        let (_, last_row) = last_row_table(&mu_prime, mu_r, family)?;
        let mut corrections: Vec<(Partition, u64)> =
            last_row.into_iter().filter(|(nu, _)| nu != mu).collect();
        // descending: longer first, then larger last part, then lexicographic
        corrections.sort_by(|(a, _), (b, _)| {
            (b.length(), b.last_part(), b).cmp(&(a.length(), a.last_part(), a))
        });
        for (nu, n) in corrections {
            if !order_less(&nu, mu) {
                return Err(internal(format!("correction ({nu}) is not below ({mu})")));
            }
            for (kappa, &c) in self.product(family, lam, &nu)?.iter() {
                *acc.entry(kappa.clone()).or_default() -= n as i128 * c as i128;
            }
        }

        let mut out = Table::new();
        for (kappa, c) in acc {
            if c < 0 {
                return Err(internal(format!(
                    "negative coefficient {c} for ({kappa}) in ({lam}) x ({mu}) for {family}"
                )));
            }
            if c > 0 {
                let c = u64::try_from(c)
                    .map_err(|_| Error::Resource("multiplicity overflow".into()))?;
                out.insert(kappa, c);
            }
        }
        Ok(out)
    }

    /// `lam ⊗ mu` by the character oracle, for any family and rank.
    pub fn oracle(&self, family: Family, lam: &Partition, mu: &Partition) -> Result<Decomposition> {
        tensor_oracle(
            family,
            &lam.weight(family)?,
            &mu.weight(family)?,
            &self.config,
        )
    }

    /// The `GL(r)` product of two polynomial representations.
    pub fn gl_tensor(&self, rank: usize, lam: &Partition, mu: &Partition) -> Result<Decomposition> {
        let family = Family::new(FamilyKind::Gl, rank)?;
        self.oracle(family, lam, mu)
    }

    /// The rank- and family-independent product, computed for `Sp` at rank
    /// `l(lam) + l(mu)`.
    pub fn stable_tensor(&self, lam: &Partition, mu: &Partition) -> Result<StableProduct> {
        let family = Family::new(FamilyKind::Sp, stable_threshold(FamilyKind::Sp, lam, mu))?;
        let dec = self.tensor_stable_range(family, lam, mu)?;
        let terms = dec
            .to_partitions()
            .ok_or_else(|| internal("stable product has a negative coordinate"))?;
        Ok(StableProduct {
            computed_with: family,
            terms,
        })
    }

    /// Either route, whichever applies: the recursion in the stable range,
    /// the oracle below it and for `GL`.
    pub fn decompose(
        &self,
        family: Family,
        lam: &Partition,
        mu: &Partition,
    ) -> Result<(Decomposition, Route)> {
        if family.kind != FamilyKind::Gl && family.rank >= stable_threshold(family.kind, lam, mu) {
            Ok((
                self.tensor_stable_range(family, lam, mu)?,
                Route::PieriRecursive,
            ))
        } else {
            Ok((self.oracle(family, lam, mu)?, Route::KlimykOracle))
        }
    }

    /// Computes the products at every rank up to `n_max` and checks the
    /// three stability statements.
    pub fn stability_report(
        &self,
        lam: &Partition,
        mu: &Partition,
        kinds: &[FamilyKind],
        n_max: usize,
    ) -> Result<StabilityReport> {
        let n0 = lam.length() + mu.length();
        if n_max < n0 + 2 {
            return Err(invalid(format!(
                "n_max {n_max} is below l(lam) + l(mu) + 2 = {}",
                n0 + 2
            )));
        }
        let mut kinds = kinds.to_vec();
        kinds.sort();
        kinds.dedup();
        if kinds.is_empty() {
            return Err(invalid("no families requested"));
        }

        let rows: Vec<Result<Vec<(usize, Decomposition)>>> = std::thread::scope(|s| {
            let handles: Vec<_> = kinds
                .iter()
                .map(|&kind| s.spawn(move || self.ranks_for(kind, lam, mu, n_max)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });

        let mut per_rank = BTreeMap::new();
        for (kind, row) in kinds.iter().zip(rows) {
            for (rank, dec) in row? {
                per_rank.insert((*kind, rank), dec);
            }
        }

        let vanishing_ok = per_rank.values().all(|d| d.max_length() <= n0);

        let mut stable_from = BTreeMap::new();
        for &kind in &kinds {
            let tables: Vec<(usize, BTreeMap<Vec<i64>, u64>)> = per_rank
                .iter()
                .filter(|((k, _), _)| *k == kind)
                .map(|((_, r), d)| (*r, d.stripped_table()))
                .collect();
            let (top_rank, top) = tables.last().expect("at least one rank");
            let mut from = *top_rank;
            for (rank, t) in tables.iter().rev() {
                if t != top {
                    break;
                }
                from = *rank;
            }
            stable_from.insert(kind, from);
        }

        let classical: Vec<FamilyKind> = kinds
            .iter()
            .copied()
            .filter(|k| *k != FamilyKind::Gl)
            .collect();
        let mut cross_group_ok = true;
        for rank in n0 + 1..=n_max {
            let tables: Vec<_> = classical
                .iter()
                .filter_map(|k| per_rank.get(&(*k, rank)).map(|d| d.stripped_table()))
                .collect();
            if tables.windows(2).any(|w| w[0] != w[1]) {
                cross_group_ok = false;
            }
        }

        Ok(StabilityReport {
            lam: lam.clone(),
            mu: mu.clone(),
            families: kinds,
            n0,
            n_max,
            per_rank,
            vanishing_ok,
            stable_from,
            cross_group_ok,
        })
    }

    fn ranks_for(
        &self,
        kind: FamilyKind,
        lam: &Partition,
        mu: &Partition,
        n_max: usize,
    ) -> Result<Vec<(usize, Decomposition)>> {
        let start = kind.min_rank().max(lam.length()).max(mu.length());
        let threshold = stable_threshold(kind, lam, mu);
        let mut out = Vec::new();
        for rank in start..=n_max {
            let family = Family::new(kind, rank)?;
            let dec = if kind == FamilyKind::Gl || rank < threshold {
                self.oracle(family, lam, mu)?
            } else {
                let engine = self.tensor_stable_range(family, lam, mu)?;
                let oracle = self.oracle(family, lam, mu)?;
                if engine != oracle {
                    return Err(internal(format!(
                        "engine and oracle disagree for ({lam}) x ({mu}) in {family}:\n  engine: {engine}\n  oracle: {oracle}"
                    )));
                }
                engine
            };
            out.push((rank, dec));
        }
        Ok(out)
    }
}

/// Which algorithm produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    PieriRecursive,
    KlimykOracle,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::PieriRecursive => "pieri-recursive",
            Route::KlimykOracle => "klimyk-oracle",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pieri-recursive" => Ok(Route::PieriRecursive),
            "klimyk-oracle" => Ok(Route::KlimykOracle),
            other => Err(invalid(format!("unknown engine tag {other:?}"))),
        }
    }
}

/// The stable product with constituents as partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableProduct {
    /// Family and rank the table was computed in.
    pub computed_with: Family,
    pub terms: BTreeMap<Partition, u64>,
}

impl StableProduct {
    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for StableProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, m)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m > 1 {
                write!(f, "{m}×")?;
            }
            write!(f, "({p})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub lam: Partition,
    pub mu: Partition,
    pub families: Vec<FamilyKind>,
    /// `l(lam) + l(mu)`.
    pub n0: usize,
    pub n_max: usize,
    pub per_rank: BTreeMap<(FamilyKind, usize), Decomposition>,
    /// No constituent anywhere has length above `n0`.
    pub vanishing_ok: bool,
    /// Least rank from which every examined table coincides.
    pub stable_from: BTreeMap<FamilyKind, usize>,
    /// The classical families agree at every rank above `n0`.
    pub cross_group_ok: bool,
}

impl StabilityReport {
    /// Every family stabilises no later than its threshold.
    pub fn rank_independence_ok(&self) -> bool {
        self.stable_from
            .iter()
            .all(|(&k, &s)| s <= stable_threshold(k, &self.lam, &self.mu))
    }

    pub fn all_verified(&self) -> bool {
        self.vanishing_ok && self.rank_independence_ok() && self.cross_group_ok
    }
}

/// Drops the constituents of a `GL(n+1)` decomposition that have `n+1` rows,
/// giving the `GL(n)` decomposition of the same pair.
///
/// The result is only checked for well-formedness; dimension conservation
/// needs the factors, see [`Decomposition::check_dimension`].
pub fn restrict_decomposition(dec: &Decomposition, from_rank: usize) -> Result<Decomposition> {
    let family = dec.family();
    if family.kind != FamilyKind::Gl || family.rank != from_rank {
        return Err(invalid(format!(
            "expected a GL({from_rank}) decomposition, got {family}"
        )));
    }
    let target = Family::new(FamilyKind::Gl, from_rank - 1)?;
    let mut terms = Vec::new();
    for (w, m) in dec.iter() {
        if w.length() == from_rank {
            continue;
        }
        if w.length() > target.rank {
            return Err(internal(format!("term {w} does not fit in {target}")));
        }
        terms.push((w.coords()[..target.rank].to_vec(), m));
    }
    Decomposition::from_terms(target, terms)
}

/// Multiplicity of `Psi_lam` in `Sym^{lam_1} ⊗ ... ⊗ Sym^{lam_l}` for
/// `GL(rank)`, by repeated horizontal-strip expansion.
pub fn multiplicity_in_sym_chain(lam: &Partition, rank: usize) -> Result<u64> {
    if lam.length() > rank {
        return Err(invalid(format!("({lam}) does not fit in GL({rank})")));
    }
    let mut current: Table = [(Partition::empty(), 1)].into();
    for &row in lam.parts() {
        let mut next = Table::new();
        for (p, m) in &current {
            for q in gl_pieri(p, row, rank)? {
                *next.entry(q).or_default() += m;
            }
        }
        current = next;
    }
    Ok(current.get(lam).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn fam(kind: FamilyKind, rank: usize) -> Family {
        Family::new(kind, rank).unwrap()
    }

    #[test]
    fn thresholds() {
        let (l, m) = (p(&[2, 1, 1]), p(&[1, 1]));
        assert_eq!(stable_threshold(FamilyKind::Sp, &l, &m), 5);
        assert_eq!(stable_threshold(FamilyKind::SoOdd, &l, &m), 5);
        assert_eq!(stable_threshold(FamilyKind::SoEven, &l, &m), 6);
        let e = Partition::empty();
        assert_eq!(stable_threshold(FamilyKind::Sp, &e, &e), 1);
        assert_eq!(stable_threshold(FamilyKind::SoEven, &e, &e), 2);
    }

    #[test]
    fn sp10_row() {
        let engine = Engine::new();
        let d = engine
            .tensor_stable_range(fam(FamilyKind::Sp, 5), &p(&[2, 1, 1]), &p(&[1, 1]))
            .unwrap();
        assert_eq!(d.len(), 11);
        assert_eq!(d.total_multiplicity(), 12);
        assert_eq!(d.get_partition(&p(&[2, 1, 1])), 2);
        let b5 = engine
            .tensor_stable_range(fam(FamilyKind::SoOdd, 5), &p(&[2, 1, 1]), &p(&[1, 1]))
            .unwrap();
        assert_eq!(b5.stripped_table(), d.stripped_table());
    }

    #[test]
    fn refuses_below_threshold() {
        let engine = Engine::new();
        let err = engine
            .tensor_stable_range(fam(FamilyKind::SoEven, 5), &p(&[2, 1, 1]), &p(&[1, 1]))
            .unwrap_err();
        assert_eq!(
            err,
            Error::OutOfStableRange {
                family: fam(FamilyKind::SoEven, 5),
                minimal_rank: 6
            }
        );
        assert!(matches!(
            engine.tensor_stable_range(fam(FamilyKind::Gl, 5), &p(&[1]), &p(&[1])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn trivial_factor() {
        let engine = Engine::new();
        for kind in FamilyKind::CLASSICAL {
            let f = fam(kind, 4);
            let d = engine
                .tensor_stable_range(f, &p(&[2, 1]), &Partition::empty())
                .unwrap();
            assert_eq!(d.to_partitions().unwrap(), [(p(&[2, 1]), 1)].into());
        }
    }

    #[test]
    fn stable_tensor_examples() {
        let engine = Engine::new();
        let s = engine.stable_tensor(&p(&[1]), &p(&[1])).unwrap();
        assert_eq!(
            s.terms,
            [(p(&[2]), 1), (p(&[1, 1]), 1), (Partition::empty(), 1)].into()
        );
        assert_eq!(s.computed_with, fam(FamilyKind::Sp, 2));
        let s = engine
            .stable_tensor(&Partition::empty(), &p(&[3, 1]))
            .unwrap();
        assert_eq!(s.terms, [(p(&[3, 1]), 1)].into());
        let s = engine.stable_tensor(&p(&[2, 1, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(s.terms.len(), 11);
        assert_eq!(s.total_multiplicity(), 12);
    }

    #[test]
    fn gl_rows() {
        let engine = Engine::new();
        let d3 = engine.gl_tensor(3, &p(&[2, 1, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(d3.to_string(), "(3,2,1) + (2,2,2)");
        let d4 = engine.gl_tensor(4, &p(&[2, 1, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(d4.len(), 4);
        assert_eq!(restrict_decomposition(&d4, 4).unwrap(), d3);
        let d5 = engine.gl_tensor(5, &p(&[2, 1, 1]), &p(&[1, 1])).unwrap();
        let d6 = engine.gl_tensor(6, &p(&[2, 1, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(d5.stripped_table(), d6.stripped_table());
        assert_eq!(restrict_decomposition(&d6, 6).unwrap(), d5);
        assert!(restrict_decomposition(&d6, 5).is_err());
        assert!(engine.gl_tensor(2, &p(&[2, 1, 1]), &p(&[1])).is_err());
    }

    #[test]
    fn sym_chain_examples() {
        assert_eq!(multiplicity_in_sym_chain(&p(&[2, 1, 1]), 4).unwrap(), 1);
        assert_eq!(multiplicity_in_sym_chain(&p(&[5]), 1).unwrap(), 1);
        assert_eq!(multiplicity_in_sym_chain(&p(&[1, 1]), 2).unwrap(), 1);
        assert!(multiplicity_in_sym_chain(&p(&[1, 1]), 1).is_err());
    }

    #[test]
    fn stability_examples() {
        let engine = Engine::new();
        let (l, m) = (p(&[2, 1, 1]), p(&[1, 1]));
        let r = engine
            .stability_report(&l, &m, &[FamilyKind::Sp], 7)
            .unwrap();
        assert_eq!(r.stable_from[&FamilyKind::Sp], 5);
        assert!(r.all_verified());
        let r = engine
            .stability_report(&l, &m, &[FamilyKind::SoEven], 8)
            .unwrap();
        assert_eq!(r.stable_from[&FamilyKind::SoEven], 6);

        let r = engine
            .stability_report(&p(&[1]), &p(&[1]), &[FamilyKind::Sp], 4)
            .unwrap();
        assert_eq!(r.stable_from[&FamilyKind::Sp], 2);
        assert!(r.per_rank[&(FamilyKind::Sp, 1)].get_partition(&p(&[1, 1])) == 0);

        assert!(matches!(
            engine.stability_report(&l, &m, &[FamilyKind::Sp], 6),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn memo_transparency() {
        let cached = Engine::new();
        let plain = Engine::without_memo();
        for kind in FamilyKind::CLASSICAL {
            let f = fam(kind, 6);
            let a = cached
                .tensor_stable_range(f, &p(&[2, 1]), &p(&[2, 2, 1]))
                .unwrap();
            let b = plain
                .tensor_stable_range(f, &p(&[2, 1]), &p(&[2, 2, 1]))
                .unwrap();
            assert_eq!(a, b);
        }
        assert!(cached.memo_len() > 0);
        assert_eq!(plain.memo_len(), 0);
    }
}
