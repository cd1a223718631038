//! Result documents and their text renderings.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use stabletensor_core::engine::{Route, StableProduct};
use stabletensor_core::{Decomposition, Partition};

/// Version of the JSON result and cache schemas.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub weight: Vec<i64>,
    pub mult: u64,
}

/// `{ family, rank, lhs, rhs, engine, terms }`, terms in descending
/// lexicographic order of weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub family: String,
    pub rank: usize,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
    pub engine: String,
    pub terms: Vec<Term>,
}

impl ResultDocument {
    pub fn from_decomposition(
        dec: &Decomposition,
        lhs: &Partition,
        rhs: &Partition,
        route: Route,
    ) -> Self {
        let family = dec.family();
        Self {
            family: family.kind.as_str().to_owned(),
            rank: family.rank,
            lhs: lhs
                .padded(family.rank)
                .unwrap_or_else(|_| lhs.parts().to_vec()),
            rhs: rhs
                .padded(family.rank)
                .unwrap_or_else(|_| rhs.parts().to_vec()),
            engine: route.as_str().to_owned(),
            terms: dec
                .iter()
                .map(|(w, m)| Term {
                    weight: w.coords().to_vec(),
                    mult: m,
                })
                .collect(),
        }
    }

    /// The stable product, weights as partitions without trailing zeros.
    pub fn from_stable(stable: &StableProduct, lhs: &Partition, rhs: &Partition) -> Self {
        Self {
            family: stable.computed_with.kind.as_str().to_owned(),
            rank: stable.computed_with.rank,
            lhs: lhs.parts().to_vec(),
            rhs: rhs.parts().to_vec(),
            engine: Route::PieriRecursive.as_str().to_owned(),
            terms: stable
                .terms
                .iter()
                .rev()
                .map(|(p, &m)| Term {
                    weight: p.parts().to_vec(),
                    mult: m,
                })
                .collect(),
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
            OutputFormat::Tsv => self
                .terms
                .iter()
                .map(|t| format!("{}\t{}\n", join(&t.weight), t.mult))
                .collect(),
            OutputFormat::Pretty => format!("{}\n", pretty_terms(&self.terms)),
        }
    }
}

pub fn join(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `(2,2,1,1) + 3×(2,1,1,0)`.
pub fn pretty_terms(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| {
            if t.mult > 1 {
                format!("{}×({})", t.mult, join(&t.weight))
            } else {
                format!("({})", join(&t.weight))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
