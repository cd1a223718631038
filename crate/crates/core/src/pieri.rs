//! Pieri rules.
//!
//! [`gl_pieri`] adds horizontal strips. [`classical_pieri`] is the stable-range
//! rule for `Sp(2n)`, `SO(2n+1)` and `SO(2n)`: the multiplicity of `mu` in
//! `Pi_lambda ⊗ Pi_(k)` counts the `xi` for which `lambda/xi` and `mu/xi` are
//! both horizontal strips with `|lambda/xi| + |mu/xi| = k`.

use std::collections::{BTreeMap, BTreeSet};

use crate::decomposition::Decomposition;
use crate::error::{internal, invalid, Error, Result};
use crate::partition::{is_horizontal_strip, Partition};
use crate::rootsystem::{DominantWeight, Family, FamilyKind};

/// Multiplicity of one constituent in a classical Pieri product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieriCount {
    pub target: Partition,
    pub count: u64,
    /// The `xi` realising the count, when requested.
    pub witnesses: Option<Vec<Partition>>,
}

/// Every partition with at most `rows` parts obtained from `lam` by adding a
/// horizontal strip of `k` boxes.
pub fn gl_pieri(lam: &Partition, k: i64, rows: usize) -> Result<BTreeSet<Partition>> {
    if k < 0 {
        return Err(invalid(format!("negative strip size {k}")));
    }
    if lam.length() > rows {
        return Err(invalid(format!(
            "partition ({lam}) does not fit in {rows} rows"
        )));
    }
    let mut out = BTreeSet::new();
    let mut cur = Vec::with_capacity(rows);
    add_strips(lam, k, rows, 0, &mut cur, &mut out);
    Ok(out)
}

fn add_strips(
    lam: &Partition,
    remaining: i64,
    rows: usize,
    row: usize,
    cur: &mut Vec<i64>,
    out: &mut BTreeSet<Partition>,
) {
    if row == rows || (remaining == 0 && row >= lam.length()) {
        if remaining == 0 {
            let mut parts = cur.clone();
            while parts.last() == Some(&0) {
                parts.pop();
            }
            out.insert(Partition::from_canonical(parts));
        }
        return;
    }
    let base = lam.part(row);
    // row 0 is unbounded above; lower rows may grow up to the old row above
    let cap = if row == 0 {
        base + remaining
    } else {
        lam.part(row - 1)
    };
    for add in 0..=(cap - base).min(remaining) {
        cur.push(base + add);
        add_strips(lam, remaining - add, rows, row + 1, cur, out);
        cur.pop();
    }
}

/// Smallest rank at which [`classical_pieri`] accepts a partition of this length.
pub fn pieri_min_rank(kind: FamilyKind, length: usize) -> Result<usize> {
    match kind {
        FamilyKind::Gl => Err(invalid(
            "the classical Pieri rule does not apply to GL; use gl_pieri",
        )),
        FamilyKind::Sp | FamilyKind::SoOdd => Ok(length + 1),
        FamilyKind::SoEven => Ok((length + 2).max(2)),
    }
}

fn check_pieri_range(lam: &Partition, family: Family) -> Result<()> {
    let minimal_rank = pieri_min_rank(family.kind, lam.length())?;
    if family.rank < minimal_rank {
        return Err(Error::OutOfStableRange {
            family,
            minimal_rank,
        });
    }
    Ok(())
}

/// The `xi` with `lam / xi` a horizontal strip, i.e. `lam_{i+1} <= xi_i <= lam_i`.
fn strip_interiors(lam: &Partition) -> Vec<Partition> {
    let mut out = vec![Vec::with_capacity(lam.length())];
    for i in 0..lam.length() {
        let (lo, hi) = (lam.part(i + 1), lam.part(i));
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut parts| {
            while parts.last() == Some(&0) {
                parts.pop();
            }
            Partition::from_canonical(parts)
        })
        .collect()
}

fn pieri_counts(
    lam: &Partition,
    k: i64,
    family: Family,
    keep_witnesses: bool,
) -> Result<BTreeMap<Partition, PieriCount>> {
    if k < 0 {
        return Err(invalid(format!("negative symmetric power {k}")));
    }
    check_pieri_range(lam, family)?;
    let mut out: BTreeMap<Partition, PieriCount> = BTreeMap::new();
    for xi in strip_interiors(lam) {
        let removed = lam.size() - xi.size();
        if removed > k {
            continue;
        }
        for mu in gl_pieri(&xi, k - removed, xi.length() + 1)? {
            debug_assert!(is_horizontal_strip(lam, &xi) && is_horizontal_strip(&mu, &xi));
            if mu.length() > lam.length() + 1 {
                return Err(internal(format!(
                    "Pieri term ({mu}) is longer than ({lam}) plus one row"
                )));
            }
            let entry = out.entry(mu.clone()).or_insert_with(|| PieriCount {
                target: mu,
                count: 0,
                witnesses: keep_witnesses.then(Vec::new),
            });
            entry.count += 1;
            if let Some(w) = entry.witnesses.as_mut() {
                w.push(xi.clone());
            }
        }
    }
    Ok(out)
}

/// Decomposes `Pi_lam ⊗ Pi_(k)` for a classical family in the range
/// `l(lam) <= n - 1` (`Sp`, `SO(2n+1)`) or `l(lam) <= n - 2` (`SO(2n)`).
pub fn classical_pieri(
    lam: &Partition,
    k: i64,
    family: Family,
) -> Result<BTreeMap<Partition, PieriCount>> {
    pieri_counts(lam, k, family, false)
}

/// As [`classical_pieri`], recording the `xi` behind every count.
pub fn classical_pieri_with_witnesses(
    lam: &Partition,
    k: i64,
    family: Family,
) -> Result<BTreeMap<Partition, PieriCount>> {
    pieri_counts(lam, k, family, true)
}

/// [`classical_pieri`] as a plain coefficient table.
pub(crate) fn pieri_table(
    lam: &Partition,
    k: i64,
    family: Family,
) -> Result<BTreeMap<Partition, u64>> {
    Ok(classical_pieri(lam, k, family)?
        .into_iter()
        .map(|(p, c)| (p, c.count))
        .collect())
}

/// [`classical_pieri`] as a [`Decomposition`] at the family's rank.
pub fn classical_pieri_decomposition(
    lam: &Partition,
    k: i64,
    family: Family,
) -> Result<Decomposition> {
    let dec = to_decomposition(family, &pieri_table(lam, k, family)?)?;
    dec.check_dimension(&lam.weight(family)?, &Partition::row(k)?.weight(family)?)?;
    Ok(dec)
}

pub(crate) fn to_decomposition(
    family: Family,
    table: &BTreeMap<Partition, u64>,
) -> Result<Decomposition> {
    Decomposition::from_terms(
        family,
        table
            .iter()
            .map(|(p, &m)| p.padded(family.rank).map(|v| (v, m)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Highest weights of the irreducible summands of `Sym^k` of the standard
/// representation of an orthogonal group: `(k), (k-2), ...`.
pub fn sym_decomposition(k: i64) -> Result<Vec<Partition>> {
    if k < 0 {
        return Err(invalid(format!("negative symmetric power {k}")));
    }
    (0..=k / 2)
        .map(|p| Partition::new(vec![k - 2 * p]))
        .collect()
}

/// `Pi_{mu'} ⊗ Pi_{(mu_r)}`, which contains `Pi_mu` once (with
/// `mu = (mu', mu_r)`) and otherwise only `nu` with `nu_r < mu_r` and
/// `l(nu) <= r`.
pub fn pieri_last_row(mu_prime: &Partition, mu_r: i64, family: Family) -> Result<Decomposition> {
    let (_, table) = last_row_table(mu_prime, mu_r, family)?;
    let dec = to_decomposition(family, &table)?;
    dec.check_dimension(
        &mu_prime.weight(family)?,
        &Partition::row(mu_r)?.weight(family)?,
    )?;
    Ok(dec)
}

/// The distinguished `mu` and the full coefficient table of
/// `Pi_{mu'} ⊗ Pi_{(mu_r)}`, with the last-row guarantees checked.
pub(crate) fn last_row_table(
    mu_prime: &Partition,
    mu_r: i64,
    family: Family,
) -> Result<(Partition, BTreeMap<Partition, u64>)> {
    if mu_r <= 0 {
        return Err(invalid(format!("last row must be positive, got {mu_r}")));
    }
    let mu = mu_prime.with_row(mu_r)?;
    let r = mu.length();
    let table = pieri_table(mu_prime, mu_r, family)?;
    if table.get(&mu) != Some(&1) {
        return Err(internal(format!(
            "({mu}) does not occur exactly once in ({mu_prime}) x ({mu_r})"
        )));
    }
    for nu in table.keys().filter(|nu| **nu != mu) {
        if nu.length() > r || nu.part(r - 1) >= mu_r {
            return Err(internal(format!(
                "term ({nu}) of ({mu_prime}) x ({mu_r}) violates the last-row bound"
            )));
        }
    }
    Ok((mu, table))
}

impl Partition {
    /// The weight of this partition at the family's rank.
    pub fn weight(&self, family: Family) -> Result<DominantWeight> {
        DominantWeight::new(family, self.padded(family.rank)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{tensor_oracle, OracleConfig};

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn fam(kind: FamilyKind, rank: usize) -> Family {
        Family::new(kind, rank).unwrap()
    }

    fn counts(m: &BTreeMap<Partition, PieriCount>) -> BTreeMap<Partition, u64> {
        m.iter().map(|(k, v)| (k.clone(), v.count)).collect()
    }

    #[test]
    fn gl_pieri_examples() {
        assert_eq!(
            gl_pieri(&p(&[1]), 1, 2).unwrap(),
            [p(&[2]), p(&[1, 1])].into()
        );
        // horizontal 2-strips on (2,1,1) within 3 rows, enumerated by hand;
        // (2,2,2) would put two boxes in column 2
        assert_eq!(
            gl_pieri(&p(&[2, 1, 1]), 2, 3).unwrap(),
            [p(&[4, 1, 1]), p(&[3, 2, 1])].into()
        );
        assert_eq!(
            gl_pieri(&p(&[2, 1, 1]), 2, 4).unwrap(),
            [
                p(&[4, 1, 1]),
                p(&[3, 2, 1]),
                p(&[3, 1, 1, 1]),
                p(&[2, 2, 1, 1])
            ]
            .into()
        );
        assert_eq!(gl_pieri(&p(&[3, 1]), 0, 2).unwrap(), [p(&[3, 1])].into());
        assert!(gl_pieri(&p(&[1, 1, 1]), 1, 2).is_err());
    }

    #[test]
    fn gl_pieri_matches_oracle_at_rank_three() {
        let f = fam(FamilyKind::Gl, 3);
        let d = tensor_oracle(
            f,
            &p(&[2, 1, 1]).weight(f).unwrap(),
            &p(&[2]).weight(f).unwrap(),
            &OracleConfig::default(),
        )
        .unwrap();
        let expected: BTreeMap<Partition, u64> = gl_pieri(&p(&[2, 1, 1]), 2, 3)
            .unwrap()
            .into_iter()
            .map(|m| (m, 1))
            .collect();
        assert_eq!(d.to_partitions().unwrap(), expected);
    }

    #[test]
    fn classical_pieri_examples() {
        let sp3 = fam(FamilyKind::Sp, 3);
        assert_eq!(
            counts(&classical_pieri(&p(&[1]), 1, sp3).unwrap()),
            [(p(&[2]), 1), (p(&[1, 1]), 1), (Partition::empty(), 1)].into()
        );
        for k in 0..5 {
            assert_eq!(
                counts(&classical_pieri(&Partition::empty(), k, sp3).unwrap()),
                [(p(&[k]), 1)].into()
            );
        }
        let sp5 = fam(FamilyKind::Sp, 5);
        let lam = p(&[2, 1, 1]);
        let oracle = tensor_oracle(
            sp5,
            &lam.weight(sp5).unwrap(),
            &p(&[1]).weight(sp5).unwrap(),
            &OracleConfig::default(),
        )
        .unwrap();
        assert_eq!(classical_pieri_decomposition(&lam, 1, sp5).unwrap(), oracle);
    }

    #[test]
    fn witnesses_match_counts() {
        let f = fam(FamilyKind::SoOdd, 4);
        let m = classical_pieri_with_witnesses(&p(&[2, 1]), 2, f).unwrap();
        // (2,1) x (2) -> (2,1): remove one box (xi = (2) or (1,1)), add one back
        assert_eq!(m[&p(&[2, 1])].count, 2);
        let mut w = m[&p(&[2, 1])].witnesses.clone().unwrap();
        w.sort();
        assert_eq!(w, vec![p(&[1, 1]), p(&[2])]);
        for c in m.values() {
            assert_eq!(c.count as usize, c.witnesses.as_ref().unwrap().len());
            for xi in c.witnesses.as_ref().unwrap() {
                assert!(is_horizontal_strip(&p(&[2, 1]), xi));
                assert!(is_horizontal_strip(&c.target, xi));
            }
        }
    }

    #[test]
    fn classical_pieri_range_checks() {
        let err = classical_pieri(&p(&[1, 1]), 1, fam(FamilyKind::Sp, 2)).unwrap_err();
        assert_eq!(
            err,
            Error::OutOfStableRange {
                family: fam(FamilyKind::Sp, 2),
                minimal_rank: 3
            }
        );
        let err = classical_pieri(&p(&[1, 1]), 1, fam(FamilyKind::SoEven, 3)).unwrap_err();
        assert!(matches!(
            err,
            Error::OutOfStableRange {
                minimal_rank: 4,
                ..
            }
        ));
        assert!(matches!(
            classical_pieri(&p(&[1]), 1, fam(FamilyKind::Gl, 3)),
            Err(Error::InvalidInput(_))
        ));
        assert!(classical_pieri(&p(&[1]), -1, fam(FamilyKind::Sp, 3)).is_err());
    }

    #[test]
    fn sym_examples() {
        assert_eq!(
            sym_decomposition(2).unwrap(),
            vec![p(&[2]), Partition::empty()]
        );
        assert_eq!(sym_decomposition(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(
            sym_decomposition(5).unwrap(),
            vec![p(&[5]), p(&[3]), p(&[1])]
        );
    }

    #[test]
    fn last_row_examples() {
        let sp3 = fam(FamilyKind::Sp, 3);
        let d = pieri_last_row(&p(&[1]), 1, sp3).unwrap();
        assert_eq!(
            d.to_partitions().unwrap(),
            [(p(&[1, 1]), 1), (p(&[2]), 1), (Partition::empty(), 1)].into()
        );
        let sp4 = fam(FamilyKind::Sp, 4);
        let d = pieri_last_row(&p(&[2, 1]), 1, sp4).unwrap();
        assert_eq!(d.get_partition(&p(&[2, 1, 1])), 1);
        let oracle = tensor_oracle(
            sp4,
            &p(&[2, 1]).weight(sp4).unwrap(),
            &p(&[1]).weight(sp4).unwrap(),
            &OracleConfig::default(),
        )
        .unwrap();
        assert_eq!(d, oracle);
        assert!(matches!(
            pieri_last_row(&p(&[1]), 2, sp3),
            Err(Error::InvalidInput(_))
        ));
    }
}
