//! Brute-force tensor products from characters.
//!
//! Weight multiplicities come from Freudenthal's recursion over the dominant
//! weights below the highest weight; the tensor product then follows from
//! Klimyk's formula: for every weight `nu` of the smaller factor, reflect
//! `lhs + nu + rho` into the dominant chamber and accumulate
//! `sign * mult(nu)` at `w(lhs + nu + rho) - rho`.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;

use crate::decomposition::Decomposition;
use crate::error::{internal, Error, Result};
use crate::rootsystem::{
    dominant_representative, dot, is_dominant, orbit, orbit_size, positive_roots,
    reflect_to_dominant, rho_doubled, ChamberResult, DominantWeight, Family,
};

/// Default cap on the number of weight entries a single weight system may have.
pub const DEFAULT_MAX_WEIGHTS: u128 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_weights: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_weights: DEFAULT_MAX_WEIGHTS,
        }
    }
}

/// All weights of an irreducible with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    family: Family,
    highest: DominantWeight,
    /// Dominant weights with multiplicities, highest first.
    dominant: Vec<(Vec<i64>, u64)>,
    lookup: HashMap<Vec<i64>, u64>,
    size: u128,
}

impl WeightSystem {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn highest_weight(&self) -> &DominantWeight {
        &self.highest
    }

    /// Dominant weights and their multiplicities.
    pub fn dominant_weights(&self) -> &[(Vec<i64>, u64)] {
        &self.dominant
    }

    /// Multiplicity of an arbitrary weight.
    pub fn multiplicity(&self, weight: &[i64]) -> u64 {
        if weight.len() != self.family.rank {
            return 0;
        }
        let rep = dominant_representative(self.family, weight);
        self.lookup.get(&rep).copied().unwrap_or(0)
    }

    /// Number of distinct weights (orbit sizes summed).
    pub fn len(&self) -> u128 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Sum of all multiplicities, i.e. the dimension.
    pub fn total_mass(&self) -> BigUint {
        self.dominant
            .iter()
            .map(|(w, m)| BigUint::from(orbit_size(self.family, w)) * BigUint::from(*m))
            .sum()
    }

    /// Every weight with its multiplicity, expanding Weyl orbits.
    pub fn entries(&self) -> Vec<(Vec<i64>, u64)> {
        let mut out: Vec<(Vec<i64>, u64)> = self
            .dominant
            .iter()
            .flat_map(|(w, m)| orbit(self.family, w).into_iter().map(move |x| (x, *m)))
            .collect();
        out.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        out
    }
}

/// Weyl dimension formula `prod <lambda + rho, alpha> / <rho, alpha>`.
pub fn dim(family: Family, hw: &DominantWeight) -> BigUint {
    let rho2 = rho_doubled(family);
    let shifted: Vec<i64> = hw
        .coords()
        .iter()
        .zip(&rho2)
        .map(|(l, r)| 2 * l + r)
        .collect();
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for alpha in positive_roots(family).iter() {
        let a = dot(&shifted, alpha);
        let b = dot(&rho2, alpha);
        debug_assert!(a > 0 && b > 0);
        num *= a as u64;
        den *= b as u64;
    }
    num / den
}

type WeightCache = RwLock<HashMap<(Family, DominantWeight), Arc<WeightSystem>>>;

fn weight_cache() -> &'static WeightCache {
    static CACHE: OnceLock<WeightCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The full weight system of the irreducible with highest weight `hw`.
pub fn weight_multiplicities(
    family: Family,
    hw: &DominantWeight,
    config: &OracleConfig,
) -> Result<Arc<WeightSystem>> {
    let key = (family, hw.clone());
    if let Some(ws) = weight_cache().read().unwrap().get(&key) {
        return Ok(ws.clone());
    }
    let ws = Arc::new(freudenthal(family, hw, config)?);
    Ok(weight_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert(ws)
        .clone())
}

/// Dominant weights `mu <= hw` of the same root-lattice coset. Covering pairs
/// in the dominance order on dominant weights differ by one positive root, so
/// a search that only steps through dominant weights reaches all of them.
fn dominant_weights_below(
    family: Family,
    hw: &[i64],
    config: &OracleConfig,
) -> Result<Vec<Vec<i64>>> {
    let roots = positive_roots(family);
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = VecDeque::from([hw.to_vec()]);
    seen.insert(hw.to_vec(), ());
    let mut total = orbit_size(family, hw);
    while let Some(cur) = queue.pop_front() {
        for alpha in roots.iter() {
            let next: Vec<i64> = cur.iter().zip(alpha).map(|(x, a)| x - a).collect();
            if !is_dominant_lattice(family, &next) || seen.contains_key(&next) {
                continue;
            }
            total = total.saturating_add(orbit_size(family, &next));
            if total > config.max_weights {
                return Err(Error::Resource(format!(
                    "weight system of {hw:?} for {family} exceeds {} entries",
                    config.max_weights
                )));
            }
            seen.insert(next.clone(), ());
            queue.push_back(next);
        }
    }
    Ok(seen.into_keys().collect())
}

/// Dominance without the polynomial restriction used for GL inputs.
fn is_dominant_lattice(family: Family, v: &[i64]) -> bool {
    match family.kind {
        crate::FamilyKind::Gl => v.windows(2).all(|w| w[0] >= w[1]),
        _ => is_dominant(family, v).unwrap_or(false),
    }
}

fn freudenthal(family: Family, hw: &DominantWeight, config: &OracleConfig) -> Result<WeightSystem> {
    let top = hw.coords();
    let rho2 = rho_doubled(family);
    let roots = positive_roots(family);

    let mut dominant = dominant_weights_below(family, top, config)?;
    // Process from the top down: the level <hw - mu, 2 rho> strictly increases
    // along every root string leaving mu downward.
    let level = |w: &Vec<i64>| -> i64 {
        let diff: Vec<i64> = top.iter().zip(w).map(|(a, b)| a - b).collect();
        dot(&diff, &rho2)
    };
    dominant.sort_by(|a, b| level(a).cmp(&level(b)).then_with(|| b.cmp(a)));

    // hw + mu + 2 rho, paired with hw - mu, gives |hw+rho|^2 - |mu+rho|^2.
    let mut mults: HashMap<Vec<i64>, u64> = HashMap::with_capacity(dominant.len());
    let mut ordered = Vec::with_capacity(dominant.len());
    for mu in dominant {
        let m = if mu == top {
            1
        } else {
            let mut acc: i128 = 0;
            for alpha in roots.iter() {
                let mut shifted = mu.clone();
                loop {
                    for (s, a) in shifted.iter_mut().zip(alpha.iter()) {
                        *s += a;
                    }
                    let rep = dominant_representative(family, &shifted);
                    let Some(&m) = mults.get(&rep) else { break };
                    acc += dot(&shifted, alpha) as i128 * m as i128;
                }
            }
            let diff: Vec<i64> = top.iter().zip(&mu).map(|(a, b)| a - b).collect();
            let sum: Vec<i64> = top
                .iter()
                .zip(&mu)
                .zip(&rho2)
                .map(|((a, b), r)| a + b + r)
                .collect();
            let denom = dot(&diff, &sum) as i128;
            if denom <= 0 || (2 * acc) % denom != 0 {
                return Err(internal(format!(
                    "Freudenthal step at {mu:?} for {hw} in {family} is not integral"
                )));
            }
            u64::try_from(2 * acc / denom)
                .map_err(|_| internal(format!("negative multiplicity at {mu:?}")))?
        };
        if m > 0 {
            mults.insert(mu.clone(), m);
            ordered.push((mu, m));
        }
    }
    ordered.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let size = ordered.iter().fold(0u128, |acc, (w, _)| {
        acc.saturating_add(orbit_size(family, w))
    });
    Ok(WeightSystem {
        family,
        highest: hw.clone(),
        dominant: ordered,
        lookup: mults,
        size,
    })
}

/// Decomposes `lhs ⊗ rhs` by Klimyk's formula, iterating over the weights of
/// whichever factor has the smaller dimension.
pub fn tensor_oracle(
    family: Family,
    lhs: &DominantWeight,
    rhs: &DominantWeight,
    config: &OracleConfig,
) -> Result<Decomposition> {
    for w in [lhs, rhs] {
        if !is_dominant(family, w.coords())? {
            return Err(crate::error::invalid(format!(
                "{w} is not dominant for {family}"
            )));
        }
    }
    let (big, small) = if dim(family, rhs) <= dim(family, lhs) {
        (lhs, rhs)
    } else {
        (rhs, lhs)
    };
    let ws = weight_multiplicities(family, small, config)?;
    let rho2 = rho_doubled(family);
    let base: Vec<i64> = big
        .coords()
        .iter()
        .zip(&rho2)
        .map(|(l, r)| 2 * l + r)
        .collect();

    let mut acc: HashMap<Vec<i64>, i64> = HashMap::new();
    for (dom, m) in ws.dominant_weights() {
        let m = i64::try_from(*m).map_err(|_| Error::Resource("multiplicity overflow".into()))?;
        for nu in orbit(family, dom) {
            let v: Vec<i64> = base.iter().zip(&nu).map(|(b, x)| b + 2 * x).collect();
            if let ChamberResult::Regular { weight, sign } = reflect_to_dominant(family, &v)? {
                let target: Vec<i64> = weight.iter().zip(&rho2).map(|(w, r)| (w - r) / 2).collect();
                let slot = acc.entry(target).or_insert(0);
                *slot = slot
                    .checked_add(sign * m)
                    .ok_or_else(|| Error::Resource("multiplicity overflow".into()))?;
            }
        }
    }

    let mut out = Decomposition::new(family);
    for (w, m) in acc {
        if m < 0 {
            return Err(internal(format!(
                "negative multiplicity {m} at {w:?} in {lhs} x {rhs} for {family}"
            )));
        }
        if m > 0 {
            if !is_dominant(family, &w)? {
                return Err(internal(format!(
                    "non-dominant constituent {w:?} for {family}"
                )));
            }
            out.add(DominantWeight::new_unchecked(w), m as u64)?;
        }
    }
    out.check_dimension(lhs, rhs)?;
    Ok(out)
}
