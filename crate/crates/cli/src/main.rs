//! `genlogic`: batch queries against the exact probabilistic logic engine.
//!
//! All output is JSON with sorted keys and exact rationals rendered as
//! `num/den` strings, so identical invocations are bit-identical. Exit codes:
//! 0 success, 1 input error, 2 undefined probability, 3 failed correctness
//! checks.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use genlogic_core::formula::{parse, Formula, Model, Vocabulary};
use genlogic_core::inference::{conditional, marginal, update_marginal, ProbResult, Semantics};
use genlogic_core::oracle::{check_theorems, entails, max_consistent_subsets};
use genlogic_core::worldstore::{parse_ratio, PriorSpec, WorldTable};

#[derive(Parser)]
#[command(
    name = "genlogic",
    version,
    about = "Exact probabilistic interpretation of classical logic over finite model tables"
)]
struct Cli {
    /// Print compact single-line JSON instead of pretty-printed JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conditional probability of a formula given evidence formulae
    Query(QueryArgs),
    /// Marginal probability of a formula under the table's prior
    Marginal(MarginalArgs),
    /// Fold one new data row into a marginal in constant time
    Update(UpdateArgs),
    /// Check whether evidence classically entails a conclusion
    Entail(EntailArgs),
    /// List the maximal-cardinality consistent subsets of the evidence
    Mcs(McsArgs),
    /// Run randomized correctness checks of the engine
    Check(CheckArgs),
}

#[derive(Args)]
struct QueryArgs {
    /// Query formula
    query: String,
    /// Vocabulary JSON file
    #[arg(long)]
    vocab: PathBuf,
    /// Data CSV file, one row per datum
    #[arg(long)]
    data: Option<PathBuf>,
    /// Prior: `mle` (default), `uniform`, or a prior JSON file
    #[arg(long)]
    prior: Option<String>,
    /// Semantics: `strict`, `limit`, or `mu=N/D`
    #[arg(long, default_value = "strict")]
    sem: String,
    /// Evidence formula; repeat the flag to build a multiset
    #[arg(long = "given")]
    given: Vec<String>,
}

#[derive(Args)]
struct MarginalArgs {
    /// Query formula
    query: String,
    #[arg(long)]
    vocab: PathBuf,
    #[arg(long)]
    data: Option<PathBuf>,
    /// Prior: `mle` (default), `uniform`, or a prior JSON file
    #[arg(long)]
    prior: Option<String>,
}

#[derive(Args)]
struct UpdateArgs {
    /// Query formula whose marginal is updated
    query: String,
    #[arg(long)]
    vocab: PathBuf,
    /// Data CSV file; must use the (default) MLE prior
    #[arg(long)]
    data: PathBuf,
    /// Prior override; only `mle` is accepted here
    #[arg(long)]
    prior: Option<String>,
    /// One atom assignment `name=0` or `name=1`; repeat until every ground
    /// atom of the vocabulary is assigned
    #[arg(long = "row", required = true)]
    row: Vec<String>,
    /// Append the new row to the data file
    #[arg(long)]
    write: bool,
}

#[derive(Args)]
struct EntailArgs {
    /// Conclusion formula
    conclusion: String,
    #[arg(long)]
    vocab: PathBuf,
    /// Premise formula; repeatable
    #[arg(long = "given")]
    given: Vec<String>,
}

#[derive(Args)]
struct McsArgs {
    #[arg(long)]
    vocab: PathBuf,
    /// Evidence formula; repeatable
    #[arg(long = "given")]
    given: Vec<String>,
}

#[derive(Args)]
struct CheckArgs {
    /// Number of random trials
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Master seed; trials derive independent seeds from it
    #[arg(long)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("genlogic: error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let compact = cli.json;
    match cli.command {
        Command::Query(args) => cmd_query(args, compact),
        Command::Marginal(args) => cmd_marginal(args, compact),
        Command::Update(args) => cmd_update(args, compact),
        Command::Entail(args) => cmd_entail(args, compact),
        Command::Mcs(args) => cmd_mcs(args, compact),
        Command::Check(args) => cmd_check(args, compact),
    }
}

fn emit(value: &Value, compact: bool) {
    use std::io::Write;
    let text = if compact {
        value.to_string()
    } else {
        serde_json::to_string_pretty(value).expect("valid json")
    };
    // tolerate downstream consumers closing the pipe early
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{text}");
}

/// The display decimal: the rational rounded to six places.
fn decimal6(r: &BigRational) -> f64 {
    let scaled = r * BigRational::from_integer(1_000_000.into());
    let rounded = scaled.round().to_integer();
    rounded.to_f64().unwrap_or(f64::NAN) / 1e6
}

fn load_vocab(path: &Path) -> Result<Arc<Vocabulary>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading vocabulary {}", path.display()))?;
    Vocabulary::from_json_str(&text).map_err(|e| anyhow!(e))
}

fn load_data(path: &Path, vocab: &Arc<Vocabulary>) -> Result<WorldTable> {
    let file =
        fs::File::open(path).with_context(|| format!("reading data {}", path.display()))?;
    WorldTable::ingest_csv(file, vocab.clone())
        .with_context(|| format!("ingesting {}", path.display()))
}

/// Builds the queried table from `--data` and `--prior`. A hand-set prior
/// replaces the data distribution entirely.
fn load_table(
    vocab: &Arc<Vocabulary>,
    data: Option<&PathBuf>,
    prior: Option<&str>,
) -> Result<WorldTable> {
    let spec = match prior {
        None | Some("mle") => PriorSpec::Mle,
        Some("uniform") => PriorSpec::Uniform,
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading prior {path}"))?;
            PriorSpec::from_json_str(&text, vocab)?
        }
    };
    let table = match data {
        Some(path) => Some(load_data(path, vocab)?),
        None => None,
    };
    if matches!(spec, PriorSpec::Mle) && table.is_none() {
        bail!("an MLE prior needs --data");
    }
    Ok(WorldTable::build_prior(spec, vocab.clone(), table.as_ref())?)
}

fn parse_semantics(text: &str) -> Result<Semantics> {
    match text {
        "strict" => Ok(Semantics::Strict),
        "limit" => Ok(Semantics::Limit),
        _ => {
            let mu = text
                .strip_prefix("mu=")
                .ok_or_else(|| anyhow!("--sem must be `strict`, `limit`, or `mu=N/D`"))?;
            Ok(Semantics::fixed(parse_ratio(mu)?)?)
        }
    }
}

fn parse_given(texts: &[String], vocab: &Vocabulary) -> Result<Vec<Formula>> {
    texts
        .iter()
        .map(|t| parse(t, vocab).with_context(|| format!("parsing evidence `{t}`")))
        .collect()
}

fn cmd_query(args: QueryArgs, compact: bool) -> Result<u8> {
    let vocab = load_vocab(&args.vocab)?;
    let table = load_table(&vocab, args.data.as_ref(), args.prior.as_deref())?;
    let semantics = parse_semantics(&args.sem)?;
    let query =
        parse(&args.query, &vocab).with_context(|| format!("parsing query `{}`", args.query))?;
    let given = parse_given(&args.given, &vocab)?;

    let result = conditional(&query, &given, &table, &semantics)?;
    let mut out = json!({
        "semantics": semantics.to_string(),
        "K": table.total(),
        "N_supported": table.num_supported(),
    });
    match &result {
        ProbResult::Value(p) => {
            out["p"] = json!(p.to_string());
            out["decimal"] = json!(decimal6(p));
            emit(&out, compact);
            Ok(0)
        }
        ProbResult::Undefined(reason) => {
            out["p"] = json!("undefined");
            out["reason"] = json!(reason.to_string());
            emit(&out, compact);
            Ok(2)
        }
    }
}

fn cmd_marginal(args: MarginalArgs, compact: bool) -> Result<u8> {
    let vocab = load_vocab(&args.vocab)?;
    let table = load_table(&vocab, args.data.as_ref(), args.prior.as_deref())?;
    let query =
        parse(&args.query, &vocab).with_context(|| format!("parsing query `{}`", args.query))?;
    let p = marginal(&query, &table)?;
    let p = p.as_value().expect("marginals are always defined");
    emit(
        &json!({
            "p": p.to_string(),
            "decimal": decimal6(p),
            "K": table.total(),
            "N_supported": table.num_supported(),
        }),
        compact,
    );
    Ok(0)
}

fn parse_row(specs: &[String], vocab: &Arc<Vocabulary>) -> Result<Model> {
    let mut pairs = Vec::with_capacity(specs.len());
    for spec in specs {
        let (name, bit) = spec
            .rsplit_once('=')
            .ok_or_else(|| anyhow!("--row takes `atom=0` or `atom=1`, got `{spec}`"))?;
        let value = match bit.trim() {
            "0" => false,
            "1" => true,
            other => bail!("--row value for `{name}` must be 0 or 1, got `{other}`"),
        };
        pairs.push((name.trim(), value));
    }
    Ok(Model::from_assignments(vocab.clone(), pairs)?)
}

/// Appends the row to the CSV file in the file's own column order.
fn append_row(path: &Path, model: &Model) -> Result<()> {
    let raw = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(raw.as_slice());
    let headers = reader.headers()?.clone();
    let vocab = model.vocab();
    let mut record: Vec<&str> = Vec::with_capacity(headers.len());
    for name in headers.iter() {
        let id = vocab
            .atom_id_by_name(name)
            .ok_or_else(|| anyhow!("column `{name}` is not a ground atom"))?;
        record.push(if model.get(id) { "1" } else { "0" });
    }
    let mut out = raw;
    if !out.ends_with(b"\n") {
        out.push(b'\n');
    }
    {
        let mut writer = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(&mut out);
        writer.write_record(&record)?;
        writer.flush()?;
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn cmd_update(args: UpdateArgs, compact: bool) -> Result<u8> {
    if let Some(prior) = args.prior.as_deref() {
        if prior != "mle" {
            bail!("update works on the MLE prior only, got --prior {prior}");
        }
    }
    let vocab = load_vocab(&args.vocab)?;
    let table = load_data(&args.data, &vocab)?;
    let query =
        parse(&args.query, &vocab).with_context(|| format!("parsing query `{}`", args.query))?;
    let row = parse_row(&args.row, &vocab)?;

    let before = marginal(&query, &table)?;
    let before = before.as_value().expect("marginals are always defined");
    let after = update_marginal(before, table.total(), &query, &row)?;
    if args.write {
        append_row(&args.data, &row)?;
    }
    emit(
        &json!({
            "K": table.total(),
            "K_new": table.total() + 1,
            "p_before": before.to_string(),
            "p_after": after.to_string(),
            "decimal_before": decimal6(before),
            "decimal_after": decimal6(&after),
            "row": row.bit_string(),
            "written": args.write,
        }),
        compact,
    );
    Ok(0)
}

fn cmd_entail(args: EntailArgs, compact: bool) -> Result<u8> {
    let vocab = load_vocab(&args.vocab)?;
    let conclusion = parse(&args.conclusion, &vocab)
        .with_context(|| format!("parsing conclusion `{}`", args.conclusion))?;
    let premises = parse_given(&args.given, &vocab)?;
    let holds = entails(&premises, &conclusion, &vocab)?;
    emit(
        &json!({
            "entails": holds,
            "conclusion": conclusion.to_string(),
            "premises": premises.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        }),
        compact,
    );
    Ok(0)
}

fn cmd_mcs(args: McsArgs, compact: bool) -> Result<u8> {
    let vocab = load_vocab(&args.vocab)?;
    let given = parse_given(&args.given, &vocab)?;
    let subsets = max_consistent_subsets(&given, &vocab)?;
    let cardinality = subsets.first().map(|s| s.len()).unwrap_or(0);
    emit(
        &json!({
            "cardinality": cardinality,
            "mcs": subsets
                .iter()
                .map(|s| s.iter().map(|f| f.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        compact,
    );
    Ok(0)
}

fn cmd_check(args: CheckArgs, compact: bool) -> Result<u8> {
    let report = check_theorems(args.trials, args.seed)?;
    emit(&report.to_json_value(), compact);
    Ok(if report.all_passed() { 0 } else { 3 })
}
