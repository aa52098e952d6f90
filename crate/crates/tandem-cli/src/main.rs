use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use tandem::alt::{check_sixary_counterexample, decide, synthesize_witness, Decision};
use tandem::reduction::{
    build_block_exemplar, master_length, BlockExemplarInstance, FiveAryInstance, InstanceFile,
};
use tandem::rewrite::{RewriteOp, RewriteTrace};
use tandem::solver::{compute_roots, oracle_distance, oracle_exists, SearchConfig, Verdict};
use tandem::squarefree::generate;
use tandem::strings::is_square_free;
use tandem::TDString;

const AFFIRMATIVE: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET: u8 = 3;

/// Tandem duplication toolkit. Strings use 0-9, a-z, L (or Ł) and $;
/// rewrite positions are 1-based.
#[derive(Parser, Debug)]
#[command(name = "tandem", version)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of visited states for exhaustive searches.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<usize>,
    /// Read string arguments from the named files instead of the command line.
    #[arg(long = "file", global = true)]
    from_files: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal number of duplications turning S into T.
    Dist {
        s: String,
        t: String,
        /// Give up after K duplications.
        #[arg(long, value_name = "K")]
        max_k: Option<usize>,
    },
    /// Whether T is reachable from S by duplications.
    Exist { s: String, t: String },
    /// Decide reachability between purely alternating strings (at most 5 symbols).
    AltExist {
        s: String,
        t: String,
        /// Write a duplication trace file for a positive answer.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Square-free strings reachable from T by contractions.
    Roots { t: String },
    /// Prefix of a ternary square-free word.
    GenSquarefree {
        n: usize,
        /// Re-verify square-freeness of the output.
        #[arg(long)]
        check: bool,
    },
    /// Build the block-exemplar pair and its five-symbol encoding.
    Reduce {
        #[arg(long, value_name = "FILE")]
        instance: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Replay a trace file and compare against its target.
    VerifyTrace {
        #[arg(value_name = "FILE")]
        trace: PathBuf,
    },
    /// Search short normal-duplication sequences on the six-symbol string.
    #[command(name = "check-6ary")]
    Check6ary,
}

/// Trace file: `{source, target, ops: [{kind, start, len}]}`.
#[derive(Debug, Serialize, Deserialize)]
struct TraceFile {
    source: TDString,
    target: TDString,
    ops: Vec<RewriteOp>,
}

struct Report {
    code: u8,
    text: String,
    json: serde_json::Value,
}

fn report(code: u8, text: impl Into<String>, json: serde_json::Value) -> Result<Report> {
    Ok(Report {
        code,
        text: text.into(),
        json,
    })
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn string_arg(cli: &Cli, field: &str, raw: &str) -> Result<TDString> {
    let text = if cli.from_files {
        read_text(Path::new(raw))?.trim().to_string()
    } else {
        raw.to_string()
    };
    TDString::parse(&text).with_context(|| format!("invalid {field}"))
}

fn config(cli: &Cli) -> SearchConfig {
    match cli.budget {
        Some(b) => SearchConfig::with_budget(b),
        None => SearchConfig::default(),
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Reachable => AFFIRMATIVE,
        Verdict::Unreachable => NEGATIVE,
        Verdict::ExhaustedBudget => BUDGET,
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Dist { s, t, max_k } => {
            let (s, t) = (string_arg(cli, "S", s)?, string_arg(cli, "T", t)?);
            let cfg = SearchConfig {
                max_depth: *max_k,
                ..config(cli)
            };
            let r = oracle_distance(&s, &t, &cfg)?;
            let text = match (r.verdict, r.distance) {
                (_, Some(d)) => d.to_string(),
                (Verdict::ExhaustedBudget, _) => "budget exhausted".into(),
                _ if max_k.is_some() => format!("> {}", max_k.unwrap_or(0)),
                _ => "inf".into(),
            };
            report(verdict_code(r.verdict), text, serde_json::to_value(&r)?)
        }
        Command::Exist { s, t } => {
            let (s, t) = (string_arg(cli, "S", s)?, string_arg(cli, "T", t)?);
            let r = oracle_exists(&s, &t, &config(cli))?;
            let text = match r.verdict {
                Verdict::Reachable => "yes",
                Verdict::Unreachable => "no",
                Verdict::ExhaustedBudget => "budget exhausted",
            };
            report(verdict_code(r.verdict), text, serde_json::to_value(&r)?)
        }
        Command::AltExist { s, t, witness } => {
            let (s, t) = (string_arg(cli, "S", s)?, string_arg(cli, "T", t)?);
            match decide(&s, &t)? {
                Decision::Yes { mapping } => {
                    let trace = synthesize_witness(&s, &t, &mapping)?;
                    if let Some(path) = witness {
                        let file = TraceFile {
                            source: s.clone(),
                            target: t.clone(),
                            ops: trace.ops.clone(),
                        };
                        fs::write(path, serde_json::to_string_pretty(&file)? + "\n")
                            .with_context(|| format!("cannot write {}", path.display()))?;
                    }
                    let pairs = mapping.pairs();
                    let f: Vec<String> = pairs.iter().map(|(i, j)| format!("{i}->{j}")).collect();
                    report(
                        AFFIRMATIVE,
                        format!("yes\nf: {}", f.join(" ")),
                        json!({"verdict": "yes", "f": pairs, "gaps": mapping.gaps, "ops": trace.ops.len()}),
                    )
                }
                Decision::No { reason } => report(
                    NEGATIVE,
                    format!("no ({})", reason.code()),
                    json!({"verdict": "no", "reason": reason}),
                ),
            }
        }
        Command::Roots { t } => {
            let t = string_arg(cli, "T", t)?;
            let roots = compute_roots(&t, &config(cli));
            let list: Vec<String> = roots.strings.iter().map(|r| r.to_string()).collect();
            let code = if roots.complete { AFFIRMATIVE } else { BUDGET };
            let mut text = list.join("\n");
            if !roots.complete {
                text.push_str("\n(budget exhausted; list may be partial)");
            }
            report(code, text, json!({"roots": list, "complete": roots.complete}))
        }
        Command::GenSquarefree { n, check } => {
            if *n == 0 {
                bail!("invalid N: must be at least 1");
            }
            let w = generate(*n);
            let verified = check.then(|| is_square_free(&w));
            let code = if verified == Some(false) { NEGATIVE } else { AFFIRMATIVE };
            let mut text = w.to_string();
            if let Some(ok) = verified {
                text.push_str(if ok { "\nsquare-free" } else { "\nNOT square-free" });
            }
            report(code, text, json!({"string": w, "square_free": verified}))
        }
        Command::Reduce { instance, out } => {
            let file: InstanceFile = serde_json::from_str(&read_text(instance)?)
                .with_context(|| format!("invalid instance file {}", instance.display()))?;
            let inst = BlockExemplarInstance::try_from(&file)?;
            let (big_s, big_t) = build_block_exemplar(&inst)?;
            let five = FiveAryInstance::build(&inst)?;
            let pair = json!({
                "S": big_s,
                "T": big_t,
                "s_hat": five.s_hat,
                "t_hat": five.t_hat,
                "blocks": {
                    "X": five.blocks.x_tilde,
                    "B": five.blocks.b_tilde,
                    "master_length": master_length(&inst),
                    "consumed": five.blocks.consumed,
                },
            });
            if let Some(path) = out {
                fs::write(path, serde_json::to_string_pretty(&pair)? + "\n")
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            let text = format!(
                "S     = {big_s}\nT     = {big_t}\ns_hat = {}\nt_hat = {}",
                five.s_hat, five.t_hat
            );
            report(AFFIRMATIVE, text, pair)
        }
        Command::VerifyTrace { trace } => {
            let tf: TraceFile = serde_json::from_str(&read_text(trace)?)
                .with_context(|| format!("invalid trace file {}", trace.display()))?;
            let trace = RewriteTrace::new(tf.source, tf.ops);
            match trace.validate(&tf.target) {
                Ok(()) => report(AFFIRMATIVE, "valid", json!({"valid": true})),
                Err(f) => report(
                    NEGATIVE,
                    format!("invalid at step {}: {}", f.step, f.reason),
                    json!({"valid": false, "step": f.step, "reason": f.reason}),
                ),
            }
        }
        Command::Check6ary => {
            let r = check_sixary_counterexample();
            let text = if r.confirmed {
                format!("confirmed: no sequence of at most {} normal duplications yields T' matched by XX", r.max_ops)
            } else {
                let ops: Vec<String> = r
                    .witness
                    .iter()
                    .flatten()
                    .map(|op| format!("({},{})", op.start, op.len))
                    .collect();
                format!(
                    "refuted: normal duplications {} yield {} which is matched by XX",
                    ops.join(" "),
                    r.result.as_ref().map(|x| x.to_string()).unwrap_or_default()
                )
            };
            let code = if r.confirmed { AFFIRMATIVE } else { NEGATIVE };
            report(code, text, serde_json::to_value(&r)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.json);
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
