//! Command-line front end for `stabletensor`.

pub mod cache;
pub mod format;
pub mod tables;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use stabletensor_core::engine::{Engine, Route, StabilityReport};
use stabletensor_core::{Error, Family, FamilyKind, Partition};

use cache::{resolve_cache_path, Cache};
use format::{pretty_terms, OutputFormat, ResultDocument, Term};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OUT_OF_RANGE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_RESOURCE: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => EXIT_INVALID,
        Error::OutOfStableRange { .. } => EXIT_OUT_OF_RANGE,
        Error::Internal(_) => EXIT_INTERNAL,
        Error::Resource(_) => EXIT_RESOURCE,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stabletensor",
    version,
    about = "Tensor products of classical group representations"
)]
pub struct Cli {
    /// JSON-lines result cache (overridden by STABLETENSOR_CACHE).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose lhs ⊗ rhs for one group.
    Decompose(DecomposeArgs),
    /// The stable product, common to all classical families in high rank.
    Stable(PairArgs),
    /// Check rank and family independence over a range of ranks.
    Stability(StabilityArgs),
    /// Compare Sp, SO-odd and SO-even at one rank.
    CompareGroups(CompareArgs),
    /// Regenerate the reference tables and diff them against the expected data.
    ReproduceTables(ReproduceArgs),
    /// Recompute every cached record and compare.
    VerifyCache,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
    pub lhs: Partition,
    #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
    pub rhs: Partition,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// gl, sp, so-odd or so-even
    #[arg(long, value_parser = parse_kind)]
    pub group: FamilyKind,
    /// The n of GL(n), Sp(2n), SO(2n+1), SO(2n).
    #[arg(long)]
    pub rank: usize,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Use the character oracle even in the stable range.
    #[arg(long, conflicts_with = "require_engine")]
    pub force_oracle: bool,
    /// Fail with exit code 3 instead of falling back to the oracle below the
    /// stable range.
    #[arg(long)]
    pub require_engine: bool,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_delimiter = ',', value_parser = parse_kind, default_value = "sp,so-odd,so-even")]
    pub groups: Vec<FamilyKind>,
    #[arg(long)]
    pub nmax: usize,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, default_value = "tables")]
    pub out_dir: PathBuf,
    /// Harness self-test: perturb one expected entry so the diff must fail.
    #[arg(long, hide = true)]
    pub corrupt_expectation: bool,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs one command. `env_cache` is the value of `STABLETENSOR_CACHE`.
pub fn run(cli: Cli, env_cache: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut cache = match resolve_cache_path(cli.cache.as_deref(), env_cache) {
        None => None,
        Some(path) => match Cache::open(&path) {
            Ok((c, warnings)) => {
                for w in warnings {
                    let _ = writeln!(err, "warning: {w}");
                }
                Some(c)
            }
            Err(e) => {
                let _ = writeln!(err, "error: cannot open cache {}: {e}", path.display());
                return EXIT_INVALID;
            }
        },
    };
    let engine = Engine::new();
    let result = match cli.command {
        Command::Decompose(a) => decompose(&engine, cache.as_mut(), a, out),
        Command::Stable(a) => stable(&engine, a, out),
        Command::Stability(a) => stability(&engine, a, out),
        Command::CompareGroups(a) => compare_groups(&engine, cache.as_mut(), a, out),
        Command::ReproduceTables(a) => reproduce_tables(&engine, cache.as_mut(), a, out, err),
        Command::VerifyCache => verify_cache(&engine, cache.as_ref(), out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

type CmdResult = Result<i32, Error>;

fn emit(out: &mut dyn Write, s: &str) -> Result<(), Error> {
    out.write_all(s.as_bytes())
        .map_err(|e| Error::InvalidInput(format!("cannot write output: {e}")))
}

fn decompose(
    engine: &Engine,
    cache: Option<&mut Cache>,
    a: DecomposeArgs,
    out: &mut dyn Write,
) -> CmdResult {
    let family = Family::new(a.group, a.rank)?;
    let (lhs, rhs) = (&a.pair.lhs, &a.pair.rhs);
    lhs.weight(family)?;
    rhs.weight(family)?;
    if a.require_engine {
        if family.kind == FamilyKind::Gl {
            return Err(Error::InvalidInput(
                "GL products are always computed by the oracle".into(),
            ));
        }
        if tables::planned_route(family, lhs, rhs) != Route::PieriRecursive {
            // reports the minimal admissible rank
            engine.tensor_stable_range(family, lhs, rhs)?;
        }
    }
    let (dec, route) = tables::compute(engine, cache, family, lhs, rhs, a.force_oracle)?;
    let doc = ResultDocument::from_decomposition(&dec, lhs, rhs, route);
    emit(out, &doc.render(a.pair.format))?;
    Ok(EXIT_OK)
}

fn stable(engine: &Engine, a: PairArgs, out: &mut dyn Write) -> CmdResult {
    let s = engine.stable_tensor(&a.lhs, &a.rhs)?;
    let doc = ResultDocument::from_stable(&s, &a.lhs, &a.rhs);
    emit(out, &doc.render(a.format))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RankEntry {
    family: String,
    rank: usize,
    terms: Vec<Term>,
}

#[derive(Serialize)]
struct StabilityDocument {
    lhs: Vec<i64>,
    rhs: Vec<i64>,
    n0: usize,
    n_max: usize,
    families: Vec<String>,
    stable_from: BTreeMap<String, usize>,
    vanishing_ok: bool,
    rank_independence_ok: bool,
    cross_group_ok: bool,
    per_rank: Vec<RankEntry>,
}

fn terms_of(dec: &stabletensor_core::Decomposition) -> Vec<Term> {
    dec.iter()
        .map(|(w, m)| Term {
            weight: w.coords().to_vec(),
            mult: m,
        })
        .collect()
}

fn stability_document(r: &StabilityReport) -> StabilityDocument {
    StabilityDocument {
        lhs: r.lam.parts().to_vec(),
        rhs: r.mu.parts().to_vec(),
        n0: r.n0,
        n_max: r.n_max,
        families: r.families.iter().map(|k| k.as_str().to_owned()).collect(),
        stable_from: r
            .stable_from
            .iter()
            .map(|(k, v)| (k.as_str().to_owned(), *v))
            .collect(),
        vanishing_ok: r.vanishing_ok,
        rank_independence_ok: r.rank_independence_ok(),
        cross_group_ok: r.cross_group_ok,
        per_rank: r
            .per_rank
            .iter()
            .map(|((k, rank), d)| RankEntry {
                family: k.as_str().to_owned(),
                rank: *rank,
                terms: terms_of(d),
            })
            .collect(),
    }
}

fn ok_str(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn stability(engine: &Engine, a: StabilityArgs, out: &mut dyn Write) -> CmdResult {
    let r = engine.stability_report(&a.pair.lhs, &a.pair.rhs, &a.groups, a.nmax)?;
    let text = match a.pair.format {
        OutputFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&stability_document(&r)).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Tsv => {
            let mut s = String::new();
            for ((k, rank), d) in &r.per_rank {
                for t in terms_of(d) {
                    s.push_str(&format!(
                        "{k}\t{rank}\t{}\t{}\n",
                        format::join(&t.weight),
                        t.mult
                    ));
                }
            }
            s
        }
        OutputFormat::Pretty => {
            let mut s = String::new();
            for ((k, rank), d) in &r.per_rank {
                let family = Family::new(*k, *rank)?;
                s.push_str(&format!("{family}: {}\n", pretty_terms(&terms_of(d))));
            }
            let from: Vec<String> = r
                .stable_from
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            s.push_str(&format!("n0 = {}\n", r.n0));
            s.push_str(&format!("stable_from {}\n", from.join(" ")));
            s.push_str(&format!("vanishing: {}\n", ok_str(r.vanishing_ok)));
            s.push_str(&format!(
                "rank independence: {}\n",
                ok_str(r.rank_independence_ok())
            ));
            s.push_str(&format!(
                "cross-group independence: {}\n",
                ok_str(r.cross_group_ok)
            ));
            s
        }
    };
    emit(out, &text)?;
    Ok(if r.all_verified() {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    })
}

fn compare_groups(
    engine: &Engine,
    mut cache: Option<&mut Cache>,
    a: CompareArgs,
    out: &mut dyn Write,
) -> CmdResult {
    let mut docs = Vec::new();
    for kind in FamilyKind::CLASSICAL {
        let family = Family::new(kind, a.rank)?;
        let (dec, route) = tables::compute(
            engine,
            cache.as_deref_mut(),
            family,
            &a.pair.lhs,
            &a.pair.rhs,
            false,
        )?;
        docs.push((
            dec.stripped_table(),
            ResultDocument::from_decomposition(&dec, &a.pair.lhs, &a.pair.rhs, route),
        ));
    }
    let identical = docs.windows(2).all(|w| w[0].0 == w[1].0);
    let text = match a.pair.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                identical: bool,
                results: Vec<&'a ResultDocument>,
            }
            let doc = Doc {
                identical,
                results: docs.iter().map(|(_, d)| d).collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Tsv => docs
            .iter()
            .flat_map(|(_, d)| {
                d.terms.iter().map(move |t| {
                    format!("{}\t{}\t{}\n", d.family, format::join(&t.weight), t.mult)
                })
            })
            .collect(),
        OutputFormat::Pretty => {
            let mut s = String::new();
            for (_, d) in &docs {
                let family = Family::new(d.family.parse()?, d.rank)?;
                s.push_str(&format!("{family}: {}\n", pretty_terms(&d.terms)));
            }
            s.push_str(&format!(
                "identical: {}\n",
                if identical { "yes" } else { "no" }
            ));
            s
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn reproduce_tables(
    engine: &Engine,
    cache: Option<&mut Cache>,
    a: ReproduceArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let mut specs = tables::reference_tables();
    if a.corrupt_expectation {
        specs[0].rows[0].expected = "(2,2,2) + 2×(3,2,1)";
    }
    let report = tables::reproduce(engine, cache, &specs, &a.out_dir)?;
    for f in &report.files {
        emit(out, &format!("wrote {f}\n"))?;
    }
    if report.mismatches > 0 {
        let _ = write!(err, "{}", report.diff);
        let _ = writeln!(err, "{} of {} rows differ", report.mismatches, report.rows);
        return Ok(EXIT_INTERNAL);
    }
    emit(out, &format!("all {} rows match\n", report.rows))?;
    Ok(EXIT_OK)
}

fn verify_cache(
    engine: &Engine,
    cache: Option<&Cache>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let Some(cache) = cache else {
        return Err(Error::InvalidInput(
            "verify-cache needs --cache or STABLETENSOR_CACHE".into(),
        ));
    };
    let mut bad = 0;
    for record in cache.records() {
        let family = record.family()?;
        let (lhs, rhs) = (record.lhs_partition()?, record.rhs_partition()?);
        let live = match record.route()? {
            Route::PieriRecursive => engine.tensor_stable_range(family, &lhs, &rhs)?,
            Route::KlimykOracle => engine.oracle(family, &lhs, &rhs)?,
        };
        if live != record.decomposition()? {
            bad += 1;
            let _ = writeln!(
                err,
                "mismatch: {family} ({lhs}) x ({rhs}) [{}]",
                record.engine
            );
        }
    }
    emit(
        out,
        &format!("verified {} records, {bad} mismatches\n", cache.len()),
    )?;
    Ok(if bad == 0 { EXIT_OK } else { EXIT_INTERNAL })
}
