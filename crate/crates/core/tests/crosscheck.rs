//! Pieri rules and the recursion against the character oracle.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use stabletensor_core::engine::{restrict_decomposition, stable_threshold, Engine};
use stabletensor_core::oracle::{dim, tensor_oracle, OracleConfig};
use stabletensor_core::partition::partitions_up_to;
use stabletensor_core::pieri::{
    classical_pieri, classical_pieri_decomposition, gl_pieri, pieri_last_row, pieri_min_rank,
    sym_decomposition,
};
use stabletensor_core::{Family, FamilyKind, Partition};

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn gl_pieri_matches_gl_oracle() {
    let cfg = OracleConfig::default();
    for rank in 1..=5 {
        let f = Family::new(FamilyKind::Gl, rank).unwrap();
        for lam in partitions_up_to(6, rank) {
            for k in 0..=4 {
                let oracle = tensor_oracle(
                    f,
                    &lam.weight(f).unwrap(),
                    &Partition::row(k).unwrap().weight(f).unwrap(),
                    &cfg,
                )
                .unwrap();
                let expected: BTreeMap<Partition, u64> = gl_pieri(&lam, k, rank)
                    .unwrap()
                    .into_iter()
                    .map(|p| (p, 1))
                    .collect();
                assert_eq!(
                    oracle.to_partitions().unwrap(),
                    expected,
                    "GL({rank}) ({lam}) x ({k})"
                );
            }
        }
    }
}

#[test]
fn classical_pieri_matches_oracle() {
    let cfg = OracleConfig::default();
    for kind in FamilyKind::CLASSICAL {
        for lam in partitions_up_to(5, 5) {
            let min = pieri_min_rank(kind, lam.length()).unwrap();
            for rank in [min, min + 1] {
                let f = Family::new(kind, rank).unwrap();
                for k in 0..=4 {
                    let pieri = classical_pieri_decomposition(&lam, k, f).unwrap();
                    let oracle = tensor_oracle(
                        f,
                        &lam.weight(f).unwrap(),
                        &Partition::row(k).unwrap().weight(f).unwrap(),
                        &cfg,
                    )
                    .unwrap();
                    assert_eq!(pieri, oracle, "{f} ({lam}) x ({k})");
                    for mu in classical_pieri(&lam, k, f).unwrap().keys() {
                        assert!(mu.length() <= lam.length() + 1);
                    }
                }
            }
        }
    }
}

#[test]
fn last_row_guarantees() {
    for kind in FamilyKind::CLASSICAL {
        for mu in partitions_up_to(6, 4)
            .into_iter()
            .filter(|m| m.length() >= 1)
        {
            let (head, last) = mu.split_last().unwrap();
            let f = Family::new(kind, pieri_min_rank(kind, head.length()).unwrap()).unwrap();
            let d = pieri_last_row(&head, last, f).unwrap();
            assert_eq!(d.get_partition(&mu), 1);
            let r = mu.length();
            for (p, _) in d.to_partitions().unwrap() {
                if p != mu {
                    assert!(p.length() <= r && p.part(r - 1) < last, "({p}) from ({mu})");
                }
            }
        }
    }
}

#[test]
fn orthogonal_sym_powers_have_the_right_dimension() {
    for n in 1..=4usize {
        let f = Family::new(FamilyKind::SoOdd, n).unwrap();
        for k in 0..=5i64 {
            let total: BigUint = sym_decomposition(k)
                .unwrap()
                .iter()
                .map(|p| dim(f, &p.weight(f).unwrap()))
                .sum();
            // dim Sym^k(C^{2n+1})
            assert_eq!(
                total,
                binomial(2 * n as u64 + k as u64, k as u64),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn recursion_terminates_on_all_small_inputs() {
    // engine only, with dimension conservation enforced on every result
    let engine = Engine::new();
    let parts = partitions_up_to(8, 8);
    for lam in parts.iter().filter(|p| p.size() <= 4) {
        for mu in &parts {
            let f = Family::new(FamilyKind::Sp, stable_threshold(FamilyKind::Sp, lam, mu)).unwrap();
            engine.tensor_stable_range(f, lam, mu).unwrap();
        }
    }
    for lam in parts.iter().filter(|p| p.size() > 4) {
        for mu in parts.iter().filter(|p| p.size() <= 3) {
            let f = Family::new(FamilyKind::Sp, stable_threshold(FamilyKind::Sp, lam, mu)).unwrap();
            engine.tensor_stable_range(f, lam, mu).unwrap();
        }
    }
}

#[test]
fn restriction_sweep() {
    let engine = Engine::new();
    let parts = partitions_up_to(4, 4);
    for n in 1..=5usize {
        for lam in parts.iter().filter(|p| p.length() <= n) {
            for mu in parts.iter().filter(|p| p.length() <= n) {
                let big = engine.gl_tensor(n + 1, lam, mu).unwrap();
                let small = engine.gl_tensor(n, lam, mu).unwrap();
                assert_eq!(restrict_decomposition(&big, n + 1).unwrap(), small);
            }
        }
    }
}

#[test]
fn engine_below_threshold_and_oracle_agree_where_defined() {
    // at every rank at or above the threshold the two routes coincide
    let engine = Engine::new();
    let (lam, mu) = (
        "3,1".parse::<Partition>().unwrap(),
        "2,1".parse::<Partition>().unwrap(),
    );
    for kind in FamilyKind::CLASSICAL {
        let t = stable_threshold(kind, &lam, &mu);
        for rank in t..=t + 2 {
            let f = Family::new(kind, rank).unwrap();
            assert_eq!(
                engine.tensor_stable_range(f, &lam, &mu).unwrap(),
                engine.oracle(f, &lam, &mu).unwrap(),
                "{f}"
            );
        }
    }
}
