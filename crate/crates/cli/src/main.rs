//! `lcpinfer`: command-line front-end for lcp-infer.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use lcp_infer::bcssila::{enumerate_bwts, infer, verify, InferenceResult, SwapInterval};
use lcp_infer::ccec::{ccec_to_dot, from_cnf, parse_dimacs, CcecInstance, SolveOptions};
use lcp_infer::cssila::{build_dfa, dfa_accepts, dfa_count, dfa_enumerate, dfa_to_dot, implied_sigma};
use lcp_infer::cyclic::{bwt, ibwt, CyclicMultiset, Symbol};
use lcp_infer::oracle::{brute_force_solutions, lcp_variant, Candidate, OracleInput, VariantKind, DEFAULT_GUARD};
use lcp_infer::reductions::{bwt_graph, sat_to_lcp, single_string_decide, SingleOutcome};
use lcp_infer::text::{parse, parse_terminated, render, render_terminated};
use lcp_infer::{Error, LcpArray};

#[derive(Parser)]
#[command(name = "lcpinfer", version, about = "Infer strings from cyclic LCP arrays")]
struct Cli {
    /// Worker threads for parallel searches (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Cyclic,
    CyclicSingle,
    Terminated,
    Open,
    TerminatedSet,
    OpenSet,
}

impl VariantArg {
    fn kind(self) -> VariantKind {
        match self {
            VariantArg::Cyclic => VariantKind::CyclicSet,
            VariantArg::CyclicSingle => VariantKind::CyclicSingle,
            VariantArg::Terminated => VariantKind::TerminatedSingle,
            VariantArg::Open => VariantKind::OpenSingle,
            VariantArg::TerminatedSet => VariantKind::TerminatedSet,
            VariantArg::OpenSet => VariantKind::OpenSet,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DotTarget {
    Ccec,
    Dfa,
    Bwtgraph,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LcpSource {
    /// LCP array: whitespace-separated integers, `w` for omega.
    #[arg(long, allow_hyphen_values = true)]
    lcp: Option<String>,
    /// File holding the LCP array (`-` for stdin).
    #[arg(long)]
    lcp_file: Option<PathBuf>,
}

#[derive(Args)]
struct Words {
    /// Words, lowercase letters (`$` marks a terminator).
    words: Vec<String>,
    /// File with one word per line (`-` for stdin).
    #[arg(long, conflicts_with = "words")]
    input: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CcecSource {
    /// DIMACS 3-CNF file; the gadget instance is built from it.
    #[arg(long)]
    cnf: Option<PathBuf>,
    /// CCEC instance as JSON.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// LCP array of words under a variant.
    Lcp {
        #[arg(long, value_enum, default_value_t = VariantArg::Cyclic)]
        variant: VariantArg,
        #[command(flatten)]
        words: Words,
    },
    /// BWT of a multiset of cyclic words.
    Bwt {
        #[command(flatten)]
        words: Words,
    },
    /// Multiset of cyclic words with the given BWT.
    Ibwt {
        bwt: String,
    },
    /// One binary BWT with the given LCP array plus its swap intervals.
    Infer {
        #[command(flatten)]
        src: LcpSource,
    },
    /// All binary BWTs with the given LCP array.
    Enumerate {
        #[command(flatten)]
        src: LcpSource,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// A single binary cyclic string with the given LCP array.
    Single {
        #[command(flatten)]
        src: LcpSource,
        /// Upper bound on flip combinations searched.
        #[arg(long, default_value_t = 1 << 24)]
        cap: u128,
    },
    /// Automaton of all BWTs over a general alphabet.
    Dfa {
        #[command(flatten)]
        src: LcpSource,
        /// Alphabet size; defaults to one more than the number of zeros.
        #[arg(long)]
        sigma: Option<usize>,
        #[arg(long, conflicts_with_all = ["enumerate", "accepts"])]
        count: bool,
        #[arg(long, conflicts_with = "accepts")]
        enumerate: bool,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
        /// Test one string for acceptance.
        #[arg(long)]
        accepts: Option<String>,
    },
    /// LCP array of the multiset built from a DIMACS 3-CNF.
    Sat2lcp {
        cnf: PathBuf,
    },
    /// Solve a CCEC instance.
    CcecSolve {
        #[command(flatten)]
        src: CcecSource,
        #[arg(long, default_value_t = 1 << 24)]
        cap: u128,
    },
    /// Brute-force solutions of an LCP array.
    Oracle {
        #[command(flatten)]
        src: LcpSource,
        #[arg(long, value_enum, default_value_t = VariantArg::Cyclic)]
        variant: VariantArg,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        /// Upper bound on candidates visited.
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u128,
    },
    /// Graphviz output.
    Dot {
        #[arg(long, value_enum)]
        target: DotTarget,
        #[arg(long, allow_hyphen_values = true)]
        lcp: Option<String>,
        #[arg(long)]
        cnf: Option<PathBuf>,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        sigma: Option<usize>,
    },
    /// Check `infer` or `enumerate` output against its LCP array.
    Verify {
        /// JSON output of infer/enumerate (`-` for stdin).
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Overrides the `lcp` field of the input.
        #[arg(long, allow_hyphen_values = true)]
        lcp: Option<String>,
    },
}

/// Result of a command: payload plus whether the answer is yes.
struct Reply {
    value: Value,
    text: String,
    yes: bool,
}

impl Reply {
    fn yes(value: Value, text: impl Into<String>) -> Self {
        Reply { value, text: text.into(), yes: true }
    }

    fn answer(yes: bool, value: Value, text: impl Into<String>) -> Self {
        Reply { value, text: text.into(), yes }
    }
}

#[derive(Serialize, Deserialize)]
struct InferOut {
    lcp: LcpArray,
    bwt: String,
    swaps: Vec<[usize; 2]>,
    rendered: String,
}

#[derive(Serialize, Deserialize)]
struct EnumerateOut {
    lcp: LcpArray,
    solutions: Vec<String>,
    truncated: bool,
}

fn read_source(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_lcp(src: &LcpSource) -> Result<LcpArray> {
    let text = match (&src.lcp, &src.lcp_file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read_source(p)?,
        (None, None) => bail!(Error::Parse("no LCP array given".into())),
    };
    Ok(text.parse()?)
}

/// Words and whether they use the terminator alphabet.
fn load_words(w: &Words) -> Result<(Vec<Vec<Symbol>>, bool)> {
    let raw: Vec<String> = match &w.input {
        Some(p) => read_source(p)?.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect(),
        None => w.words.clone(),
    };
    let terminated = raw.iter().any(|s| s.contains('$'));
    let words = raw
        .iter()
        .map(|s| if terminated { parse_terminated(s) } else { parse(s) })
        .collect::<lcp_infer::Result<Vec<_>>>()?;
    Ok((words, terminated))
}

fn load_instance(cnf: &Option<PathBuf>, instance: &Option<PathBuf>) -> Result<CcecInstance> {
    match (cnf, instance) {
        (Some(p), None) => Ok(from_cnf(&parse_dimacs(&read_source(p)?)?)?),
        (None, Some(p)) => {
            let inst: CcecInstance =
                serde_json::from_str(&read_source(p)?).map_err(|e| Error::Parse(format!("instance JSON: {e}")))?;
            inst.validate()?;
            Ok(inst)
        }
        _ => bail!(Error::Parse("give exactly one of --cnf and --instance".into())),
    }
}

fn infer_out(lcp: &LcpArray, r: &InferenceResult) -> InferOut {
    InferOut {
        lcp: lcp.clone(),
        bwt: render(&r.bwt),
        swaps: r.swaps.iter().map(|s| [s.lo, s.hi]).collect(),
        rendered: r.rendered(),
    }
}

/// Counts beyond u64 are written as strings.
fn big(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| json!(n.to_string()), Value::from)
}

fn invalid(lcp: &LcpArray) -> Reply {
    eprintln!("invalid LCP array");
    Reply::answer(false, json!({ "lcp": lcp, "valid": false }), "invalid LCP array")
}

fn run(cli: &Cli) -> Result<Reply> {
    let parallel = cli.jobs > 1;
    Ok(match &cli.cmd {
        Cmd::Lcp { variant, words } => {
            let (ws, terminated) = load_words(words)?;
            if terminated && variant.kind() != VariantKind::CyclicSet {
                bail!(Error::Parse("`$` is only allowed with the cyclic variant".into()));
            }
            let input = match variant.kind() {
                k if k.is_set() => OracleInput::Set(ws),
                _ if ws.len() == 1 => OracleInput::Single(ws.into_iter().next().unwrap()),
                _ => bail!(Error::Argument("single-string variants take exactly one word".into())),
            };
            let lcp = lcp_variant(&input, variant.kind())?;
            Reply::yes(json!({ "lcp": lcp }), lcp.to_string())
        }
        Cmd::Bwt { words } => {
            let (ws, terminated) = load_words(words)?;
            let v = bwt(&CyclicMultiset::from_words(&ws)?)?;
            let s = if terminated { render_terminated(&v) } else { render(&v) };
            Reply::yes(json!({ "bwt": s }), s)
        }
        Cmd::Ibwt { bwt } => {
            let terminated = bwt.contains('$');
            let v = if terminated { parse_terminated(bwt)? } else { parse(bwt)? };
            let w = ibwt(&v)?;
            let words: Vec<String> = w
                .words()
                .iter()
                .map(|x| if terminated { render_terminated(x.symbols()) } else { render(x.symbols()) })
                .collect();
            let text = words.join("\n");
            Reply::yes(json!({ "words": words }), text)
        }
        Cmd::Infer { src } => {
            let lcp = load_lcp(src)?;
            match infer(&lcp) {
                Some(r) => {
                    let out = infer_out(&lcp, &r);
                    Reply::yes(serde_json::to_value(&out)?, out.rendered.clone())
                }
                None => invalid(&lcp),
            }
        }
        Cmd::Enumerate { src, limit } => {
            let lcp = load_lcp(src)?;
            match infer(&lcp) {
                Some(r) => {
                    let e = enumerate_bwts(&r, *limit);
                    let out = EnumerateOut {
                        lcp,
                        solutions: e.bwts.iter().map(|v| render(v)).collect(),
                        truncated: e.truncated,
                    };
                    let text = out.solutions.join("\n");
                    Reply::yes(serde_json::to_value(&out)?, text)
                }
                None => invalid(&lcp),
            }
        }
        Cmd::Single { src, cap } => {
            let lcp = load_lcp(src)?;
            let out = single_string_decide(&lcp, SolveOptions { cap: *cap, parallel })?;
            match &out {
                SingleOutcome::Single { word, .. } => {
                    let w = render(word.symbols());
                    let mut v = serde_json::to_value(&out)?;
                    v["word"] = json!(w);
                    v["bwt"] = json!(render(&bwt(&CyclicMultiset::new(vec![word.clone()]))?));
                    Reply::yes(v, w)
                }
                SingleOutcome::NoSingle => Reply::answer(false, serde_json::to_value(&out)?, "no single string"),
                SingleOutcome::Invalid => invalid(&lcp),
            }
        }
        Cmd::Dfa { src, sigma, count, enumerate, limit, accepts } => {
            let lcp = load_lcp(src)?;
            let sigma = sigma.unwrap_or_else(|| implied_sigma(&lcp));
            let dfa = build_dfa(&lcp, sigma)?;
            let n = dfa_count(&dfa);
            let transitions: usize = dfa.transitions.iter().map(Vec::len).sum();
            if *count {
                Reply::answer(n > 0, big(n), n.to_string())
            } else if *enumerate {
                let sols: Vec<String> = dfa_enumerate(&dfa, *limit).iter().map(|s| render(s)).collect();
                let truncated = (sols.len() as u128) < n;
                let text = sols.join("\n");
                Reply::answer(n > 0, json!({ "solutions": sols, "truncated": truncated }), text)
            } else if let Some(s) = accepts {
                let ok = dfa_accepts(&dfa, &parse(s)?);
                Reply::answer(ok, json!({ "accepts": ok }), ok.to_string())
            } else {
                let v = json!({
                    "sigma": sigma,
                    "states": dfa.states.len(),
                    "transitions": transitions,
                    "count": big(n),
                });
                Reply::answer(n > 0, v, format!("{} states, {transitions} transitions, {n} strings", dfa.states.len()))
            }
        }
        Cmd::Sat2lcp { cnf } => {
            let f = parse_dimacs(&read_source(cnf)?)?;
            let lcp = sat_to_lcp(&f)?;
            Reply::yes(json!({ "lcp": lcp }), lcp.to_string())
        }
        Cmd::CcecSolve { src, cap } => {
            let inst = load_instance(&src.cnf, &src.instance)?;
            match lcp_infer::ccec::solve_with(&inst, SolveOptions { cap: *cap, parallel })? {
                Some(f) => {
                    let state = inst.apply_flips(&f);
                    let text = format!("{:?}", f.0);
                    Reply::yes(json!({ "solvable": true, "flipset": f.0, "state": state }), text)
                }
                None => Reply::answer(false, json!({ "solvable": false, "flipset": null }), "unsolvable"),
            }
        }
        Cmd::Oracle { src, variant, sigma, guard } => {
            let lcp = load_lcp(src)?;
            let sols = brute_force_solutions(&lcp, *sigma, variant.kind(), *guard)?;
            let shown: Vec<Value> = sols
                .iter()
                .map(|c| match c {
                    Candidate::Bwt(v) | Candidate::Word(v) => json!(render(v)),
                    Candidate::Set(s) => json!(s.iter().map(|x| render(x)).collect::<Vec<_>>()),
                })
                .collect();
            let text = shown.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n");
            Reply::answer(!sols.is_empty(), json!({ "lcp": lcp, "solutions": shown }), text)
        }
        Cmd::Dot { target, lcp, cnf, instance, sigma } => {
            let need_lcp = || -> Result<LcpArray> {
                Ok(lcp.as_deref().ok_or_else(|| anyhow!(Error::Parse("--lcp is required".into())))?.parse()?)
            };
            let dot = match target {
                DotTarget::Ccec => {
                    let inst = load_instance(cnf, instance)?;
                    ccec_to_dot(&inst, &inst.initial)
                }
                DotTarget::Dfa => {
                    let l = need_lcp()?;
                    dfa_to_dot(&build_dfa(&l, sigma.unwrap_or_else(|| implied_sigma(&l)))?)
                }
                DotTarget::Bwtgraph => {
                    let l = need_lcp()?;
                    let Some(r) = infer(&l) else { return Ok(invalid(&l)) };
                    let g = bwt_graph(&r)?;
                    ccec_to_dot(&g.instance, &g.instance.initial)
                }
            };
            // DOT is always emitted as plain text
            Reply { value: Value::String(dot.clone()), text: dot, yes: true }
        }
        Cmd::Verify { input, lcp } => {
            let v: Value =
                serde_json::from_str(&read_source(input)?).map_err(|e| Error::Parse(format!("input JSON: {e}")))?;
            let lcp: LcpArray = match lcp {
                Some(t) => t.parse()?,
                None => serde_json::from_value(v.get("lcp").cloned().ok_or_else(|| {
                    anyhow!(Error::Parse("input has no `lcp` field; pass --lcp".into()))
                })?)
                .map_err(|e| Error::Parse(format!("lcp field: {e}")))?,
            };
            let candidates = verify_candidates(&v)?;
            let mut bad = Vec::new();
            for c in &candidates {
                if !verify(&lcp, &parse(c)?)? {
                    bad.push(c.clone());
                }
            }
            let ok = bad.is_empty();
            let text = if ok { format!("{} verified", candidates.len()) } else { format!("failed: {}", bad.join(" ")) };
            Reply::answer(ok, json!({ "verified": ok, "checked": candidates.len(), "failed": bad }), text)
        }
    })
}

/// BWT strings named by an infer or enumerate reply, swap variants included.
fn verify_candidates(v: &Value) -> Result<Vec<String>> {
    if let Ok(out) = serde_json::from_value::<EnumerateOut>(v.clone()) {
        return Ok(out.solutions);
    }
    let out: InferOut =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("not infer/enumerate output: {e}")))?;
    let bwt = parse(&out.bwt)?;
    let swaps: Vec<SwapInterval> = out.swaps.iter().map(|&[lo, hi]| SwapInterval { lo, hi }).collect();
    if swaps.iter().any(|s| s.hi > bwt.len() || s.lo >= s.hi) {
        bail!(Error::Parse("swap interval out of range".into()));
    }
    let r = InferenceResult { bwt, swaps };
    let mut out = vec![render(&r.bwt)];
    for i in 0..r.swaps.len() {
        let select: Vec<bool> = (0..r.swaps.len()).map(|j| j == i).collect();
        out.push(render(&r.apply_selection(&select)));
    }
    Ok(out)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Cap { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(reply) => {
            let is_dot = matches!(cli.cmd, Cmd::Dot { .. });
            if cli.format == Format::Text || is_dot {
                println!("{}", reply.text.trim_end());
            } else {
                println!("{}", reply.value);
            }
            ExitCode::from(if reply.yes { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
