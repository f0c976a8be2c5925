//! The `irrchain` command-line front end.
//!
//! Exit codes: 0 success, 1 a hypothesis check or verification failed,
//! 2 usage or input error, 3 internal invariant violation (including a chain
//! that breaks although its theorem's hypotheses hold).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::criteria::{self, Verdict};
use crate::error::Error;
use crate::poly::{sample_irreducibles, Poly};
use crate::sequence::{self, Chain, ChainSpec, VerifyLevel};
use crate::text;
use crate::transforms::{FieldLevel, TransformConfig, TransformKind, TransformSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Candidates drawn per requested seed when `search` falls back to sampling.
const SAMPLE_DRAWS_PER_SEED: usize = 2000;

#[derive(Parser, Debug)]
#[command(name = "irrchain", version, about = "Generate and verify chains of irreducible polynomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterate a transform from a seed and verify the chain.
    Gen(GenArgs),
    /// Check a seed against the hypotheses of the transform's theorem.
    Check(CheckArgs),
    /// List seeds of a given degree that satisfy the hypotheses.
    Search(SearchArgs),
    /// Verify a chain read from a file (seed first, one polynomial per line).
    Verify(VerifyArgs),
    /// Split an even-degree irreducible into its two conjugate factors over F_(q^2).
    FactorSplit(SplitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    General,
    Cohen,
    Mcnay,
    Singer,
    /// Irreducibility of f(x^t) (check only).
    Menezes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Base,
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyArg {
    None,
    Fast,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// Base field order spec, e.g. 5, 5^2 (defaults to the seed's field).
    #[arg(long)]
    q: Option<String>,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Matrix "a,b;c,d" (general kind).
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    #[arg(long)]
    t: Option<usize>,
    /// Parameter c for the mcnay and singer kinds.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Field of sigma for the general kind.
    #[arg(long, value_enum)]
    field_level: Option<LevelArg>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, env = "IRRCHAIN_FORMAT", default_value = "text")]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed of the pseudorandom stream, echoed in every output header.
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    transform: TransformArgs,
    /// Seed polynomial, e.g. "5;3,1".
    #[arg(long, allow_hyphen_values = true)]
    seed: String,
    #[arg(long, default_value_t = 3)]
    iters: usize,
    #[arg(long, value_enum, default_value = "fast")]
    verify: VerifyArg,
    #[arg(long, default_value_t = sequence::DEFAULT_RABIN_DEGREE_CAP)]
    rabin_cap: usize,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    transform: TransformArgs,
    #[arg(long, allow_hyphen_values = true)]
    seed: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    transform: TransformArgs,
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value_t = 10)]
    limit: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    transform: TransformArgs,
    /// File with the seed on the first line and iterates below it.
    #[arg(long)]
    chain: PathBuf,
    #[arg(long, value_enum, default_value = "fast")]
    verify: VerifyArg,
    #[arg(long, default_value_t = sequence::DEFAULT_RABIN_DEGREE_CAP)]
    rabin_cap: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SplitArgs {
    #[arg(long, allow_hyphen_values = true)]
    seed: String,
    #[command(flatten)]
    output: OutputArgs,
}

/// A failure with its exit code and message.
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InternalDescentFailure => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

/// Produced output plus exit code.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl From<VerifyArg> for VerifyLevel {
    fn from(v: VerifyArg) -> Self {
        match v {
            VerifyArg::None => VerifyLevel::None,
            VerifyArg::Fast => VerifyLevel::Fast,
            VerifyArg::Full => VerifyLevel::Full,
        }
    }
}

fn resolve_transform(args: &TransformArgs, seed: Option<&Poly>) -> Result<TransformSpec, Failure> {
    let q = match (&args.q, seed) {
        (Some(q), Some(seed)) => {
            let field = text::parse_field(q)?;
            if &field != seed.field() {
                return Err(usage(format!(
                    "--q {q} does not match the seed's field {}",
                    seed.field().order_spec()
                )));
            }
            q.clone()
        }
        (Some(q), None) => q.clone(),
        (None, Some(seed)) => seed.field().order_spec(),
        (None, None) => return Err(usage("--q is required")),
    };
    let kind = match args.kind {
        KindArg::General => TransformKind::General,
        KindArg::Cohen => TransformKind::Cohen,
        KindArg::Mcnay => TransformKind::Mcnay,
        KindArg::Singer => TransformKind::Singer,
        KindArg::Menezes => return Err(usage("--kind menezes is only available for check")),
    };
    let config = TransformConfig {
        kind,
        q,
        sigma: args.sigma.clone(),
        t: args.t,
        c: args.c.clone(),
        field_level: args.field_level.map(|l| match l {
            LevelArg::Base => FieldLevel::Base,
            LevelArg::Quadratic => FieldLevel::Quadratic,
        }),
    };
    Ok(config.resolve()?)
}

fn header(command: &str, rng_seed: u64) -> String {
    format!("# irrchain {command} rng-seed={rng_seed}\n")
}

fn verdict_json(v: &Verdict) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

fn gen(args: &GenArgs) -> Result<Outcome, Failure> {
    let seed = text::parse_poly(&args.seed)?;
    let spec = resolve_transform(&args.transform, Some(&seed))?;
    let verdict = criteria::verdict_for(&spec, &seed)?;
    let guaranteed = verdict.as_ref().is_some_and(|v| v.pass);
    let chain_spec = ChainSpec::new(seed.clone(), spec, args.iters)
        .verify(args.verify.into())
        .rabin_degree_cap(args.rabin_cap)
        .record_timings(args.timings);
    let (chain, report) = match sequence::iterate_chain(&chain_spec) {
        Ok(done) => done,
        Err(e @ (Error::PoleAtIterate { .. } | Error::DegreeDropped { .. })) => {
            let code = if guaranteed { EXIT_INTERNAL } else { EXIT_CHECK_FAILED };
            let mut msg = e.to_string();
            if guaranteed {
                msg.push_str(&format!(
                    "; hypotheses hold, so this contradicts the theorem. instance: seed {seed}, transform {}",
                    serde_json::to_string(&chain_spec.transform.to_config()).expect("config serializes")
                ));
            }
            return Err(Failure { code, msg });
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = header("gen", args.output.rng_seed);
    if let Some(raw) = &chain.first_raw {
        text.push_str(&format!("# first iterate before normalization: {raw}\n"));
    }
    for g in &chain.iterates {
        text.push_str(&format!("{g}\n"));
    }
    if let Some(v) = &verdict {
        text.push_str(&v.to_text());
    }
    text.push_str(&report.to_text());
    let code = if guaranteed && !report.pass {
        text.push_str("# the hypotheses hold but verification failed: this contradicts the theorem\n");
        EXIT_INTERNAL
    } else {
        EXIT_OK
    };
    let json = json!({
        "command": "gen",
        "rng_seed": args.output.rng_seed,
        "seed": seed.to_string(),
        "chain": chain.iterates.iter().map(Poly::to_string).collect::<Vec<_>>(),
        "first_raw": chain.first_raw.as_ref().map(Poly::to_string),
        "verdict": verdict.as_ref().map(verdict_json),
        "report": serde_json::to_value(&report).expect("reports serialize"),
    });
    Ok(Outcome { text, json, code })
}

fn check(args: &CheckArgs) -> Result<Outcome, Failure> {
    let seed = text::parse_poly(&args.seed)?;
    let verdict = if args.transform.kind == KindArg::Menezes {
        if let Some(q) = &args.transform.q {
            if &text::parse_field(q)? != seed.field() {
                return Err(usage(format!("--q {q} does not match the seed's field")));
            }
        }
        criteria::menezes_criterion_or_skip(&seed, args.transform.t.unwrap_or(2))?
    } else {
        let spec = resolve_transform(&args.transform, Some(&seed))?;
        criteria::verdict_for(&spec, &seed)?.ok_or(Error::PoleAtSeed)?
    };
    let text = header("check", args.output.rng_seed) + &format!("seed: {seed}\n") + &verdict.to_text();
    let json = json!({
        "command": "check",
        "rng_seed": args.output.rng_seed,
        "seed": seed.to_string(),
        "verdict": verdict_json(&verdict),
    });
    let code = if verdict.pass { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome { text, json, code })
}

fn search(args: &SearchArgs) -> Result<Outcome, Failure> {
    let spec = resolve_transform(&args.transform, None)?;
    let (mode, seeds) = match criteria::search_seeds(&spec, args.degree, args.limit) {
        Ok(found) => ("exhaustive", found),
        Err(Error::BudgetExceeded(_)) => {
            let mut found = Vec::new();
            let mut failure = None;
            let draws = args.limit.saturating_mul(SAMPLE_DRAWS_PER_SEED);
            sample_irreducibles(spec.base(), args.degree, args.limit, args.output.rng_seed, draws, |g| {
                match criteria::verdict_for(&spec, g) {
                    Ok(Some(v)) if v.pass => {
                        found.push((g.clone(), v));
                        true
                    }
                    Ok(_) => false,
                    Err(e) => {
                        failure.get_or_insert(e);
                        false
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(e.into());
            }
            found.sort_by(|a, b| a.0.cmp_canonical(&b.0));
            ("sampled", found)
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = header("search", args.output.rng_seed);
    text.push_str(&format!(
        "# {mode} search: {} over {}, degree {}, {} found\n",
        spec.kind(),
        spec.base().order_spec(),
        args.degree,
        seeds.len()
    ));
    for (g, v) in &seeds {
        text.push_str(&format!("{g}\n"));
        text.push_str(&v.to_text());
    }
    let json = json!({
        "command": "search",
        "rng_seed": args.output.rng_seed,
        "mode": mode,
        "transform": serde_json::to_value(spec.to_config()).expect("config serializes"),
        "degree": args.degree,
        "seeds": seeds.iter().map(|(g, v)| json!({"poly": g.to_string(), "verdict": verdict_json(v)})).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        text,
        json,
        code: EXIT_OK,
    })
}

fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let content = std::fs::read_to_string(&args.chain)
        .map_err(|e| usage(format!("cannot read {}: {e}", args.chain.display())))?;
    let mut polys = Vec::new();
    for (i, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g = text::parse_poly(line).map_err(|e| usage(format!("line {}: {e}", i + 1)))?;
        polys.push(g);
    }
    let mut polys = polys.into_iter();
    let seed = polys.next().ok_or_else(|| usage("chain file is empty"))?;
    let iterates: Vec<Poly> = polys.collect();
    if iterates.iter().any(|g| g.field() != seed.field()) {
        return Err(usage("all chain polynomials must share the seed's field"));
    }
    let spec = resolve_transform(&args.transform, Some(&seed))?;
    let chain_spec = ChainSpec::new(seed.clone(), spec, iterates.len())
        .verify(args.verify.into())
        .rabin_degree_cap(args.rabin_cap);
    let chain = Chain {
        seed,
        iterates,
        first_raw: None,
    };
    let report = sequence::verify_chain(&chain, &chain_spec);
    let text = header("verify", args.output.rng_seed) + &report.to_text();
    let json = json!({
        "command": "verify",
        "rng_seed": args.output.rng_seed,
        "report": serde_json::to_value(&report).expect("reports serialize"),
    });
    let code = if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome { text, json, code })
}

fn factor_split(args: &SplitArgs) -> Result<Outcome, Failure> {
    let g = text::parse_poly(&args.seed)?;
    let ext = g.field().extension(2)?;
    let (r, s) = g.split_over_quadratic(&ext)?;
    let text = header("factor-split", args.output.rng_seed) + &format!("{r}\n{s}\n");
    let json = json!({
        "command": "factor-split",
        "rng_seed": args.output.rng_seed,
        "seed": g.to_string(),
        "r": r.to_string(),
        "s": s.to_string(),
    });
    Ok(Outcome {
        text,
        json,
        code: EXIT_OK,
    })
}

/// Run the CLI on `args` (program name first), writing results to `stdout`
/// or the `--out` file and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let (result, output) = match &cli.command {
        Command::Gen(a) => (gen(a), &a.output),
        Command::Check(a) => (check(a), &a.output),
        Command::Search(a) => (search(a), &a.output),
        Command::Verify(a) => (verify(a), &a.output),
        Command::FactorSplit(a) => (factor_split(a), &a.output),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(stderr, "irrchain: {}", f.msg);
            return f.code;
        }
    };
    let body = match output.format {
        Format::Text => outcome.text,
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json serializes") + "\n",
    };
    let written = match &output.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "irrchain: cannot write output: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("irrchain").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_cohen_chain() {
        let (code, out, err) = run_str(&["gen", "--q", "5", "--kind", "cohen", "--seed", "5;3,1", "--iters", "3", "--verify", "fast"]);
        assert_eq!(code, 0, "{err}");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "# irrchain gen rng-seed=0");
        assert!(lines.contains(&"5;1,1,1"));
        assert!(lines.contains(&"5;1,2,1,2,1"));
        assert!(out.contains("report: pass"));
    }

    #[test]
    fn check_parity_failure() {
        let (code, out, _) = run_str(&["check", "--q", "7", "--kind", "cohen", "--seed", "7;5,1"]);
        assert_eq!(code, 1);
        assert!(out.contains("[FAIL] parity"));
    }

    #[test]
    fn search_lists_cohen_seeds() {
        let (code, out, _) = run_str(&["search", "--q", "5", "--kind", "cohen", "--degree", "1"]);
        assert_eq!(code, 0);
        let polys: Vec<&str> = out.lines().filter(|l| l.starts_with("5;")).collect();
        assert_eq!(polys, vec!["5;2,1", "5;3,1"]);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["gen", "--kind", "cohen"]).0, 2);
        assert_eq!(run_str(&["gen", "--kind", "cohen", "--seed", "5;3,,1"]).0, 2);
        assert_eq!(run_str(&["gen", "--kind", "mcnay", "--seed", "7;3,2,1"]).0, 2);
        assert_eq!(run_str(&["gen", "--q", "7", "--kind", "cohen", "--seed", "5;3,1"]).0, 2);
        assert_eq!(run_str(&["check", "--kind", "cohen", "--seed", "5;4,1"]).0, 1);
        assert_eq!(run_str(&["gen", "--kind", "cohen", "--seed", "5;4,1"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn menezes_check() {
        let (code, out, _) = run_str(&["check", "--kind", "menezes", "--t", "2", "--seed", "3;1,0,1", "--format", "json"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"]["pass"], false);
        assert!(v["verdict"]["checks"].as_array().unwrap().iter().any(|c| c["name"] == "gcd_condition" && c["status"] == "fail"));
    }

    #[test]
    fn factor_split_output() {
        let (code, out, _) = run_str(&["factor-split", "--seed", "7;3,2,1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().skip(1).collect();
        assert_eq!(lines.len(), 2);
        let r = text::parse_poly(lines[0]).unwrap();
        let s = text::parse_poly(lines[1]).unwrap();
        assert_eq!(&r * &s, text::parse_poly("7;3,2,1").unwrap().lift(r.field()).unwrap());
    }

    #[test]
    fn json_output_is_deterministic() {
        let args = ["gen", "--kind", "mcnay", "--c", "3", "--seed", "7;3,2,1", "--iters", "2", "--format", "json", "--rng-seed", "17"];
        let a = run_str(&args);
        let b = run_str(&args);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a.1).unwrap();
        assert_eq!(v["rng_seed"], 17);
        assert_eq!(v["report"]["pass"], true);
    }
}
