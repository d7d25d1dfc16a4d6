//! Argument parsing and subcommand dispatch for the `rademacher` binary.
//!
//! Everything funnels through [`dispatch`], which never panics on bad input:
//! parse and parameter errors exit 2, failed checks exit 1.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rademacher_core::acceptance::{run_all, AcceptanceConfig};
use rademacher_core::constructions::{
    case_graph, apex_star_graph, k_plus, min_added_edge_copies, remark_graph, turan, turan_plus_star, CaseGraphId, Parity,
    RemarkKind,
};
use rademacher_core::copies::count_copies;
use rademacher_core::enumerate::MAX_ENUMERATION_N;
use rademacher_core::families::{poly_family, Family};
use rademacher_core::graph::Graph;
use rademacher_core::graph6;
use rademacher_core::poly::largest_real_root;
use rademacher_core::spectral::{signless_laplacian_radius, spectral_radius, DEFAULT_TOL};
use rademacher_core::verify::{
    search_near_misses, verify_bn, verify_conjecture, verify_edge_er, verify_lovasz_simonovits, verify_nz, verify_signless,
    verify_spectral_er, verify_sqrt_m, VerificationReport, VerifyError, VerifyOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Brute-force copy counting on `T_{n,r}` is only practical this far.
pub const MAX_COUNT_N: usize = 20;
pub const DEFAULT_SEED: u64 = 20240601;
/// graph6 of `K3`, the default pattern.
const K3_GRAPH6: &str = "Bw";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerance: f64,
    /// 0 means all available cores.
    pub workers: usize,
    pub n_range: (usize, usize),
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { tolerance: DEFAULT_TOL, workers: 0, n_range: (3, 9), output_path: None, format: Format::Json, seed: DEFAULT_SEED }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(format!("--tol must be positive and finite, got {}", self.tolerance));
        }
        let (lo, hi) = self.n_range;
        if lo > hi || hi > MAX_ENUMERATION_N {
            return Err(format!("n range {lo}..={hi} must be ordered and end at most at {MAX_ENUMERATION_N}"));
        }
        Ok(())
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { tol: self.tolerance, workers: self.workers }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rademacher", version, about = "Exhaustive small-n checks of spectral Turan-type triangle counts")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Width of the certified eigenvalue interval.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Worker threads, 0 for all cores.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output file (a directory for `reproduce`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    Turan,
    TuranStar,
    KPlus,
    Remark,
    Case,
    ApexStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    SpectralEr,
    EdgeEr,
    Nz,
    LovaszSimonovits,
    Conjecture,
    SqrtM,
    Signless,
    Bn,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Search {
    NearMisses,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a named construction as graph6.
    Construct {
        #[arg(value_enum)]
        what: Construction,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        q: Option<usize>,
        /// Remark variant, or `even`/`odd` for apex-star.
        #[arg(long)]
        kind: Option<String>,
        /// Case graph tag, G1 to G8.
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        /// Split parameter of G1 and G3.
        #[arg(long)]
        s1: Option<usize>,
    },
    /// Certified spectral radius of a graph6 graph.
    Spectral {
        #[arg(long)]
        graph6: String,
        /// Use the signless Laplacian instead of the adjacency matrix.
        #[arg(long)]
        signless: bool,
    },
    /// Print a characteristic-polynomial family.
    Poly {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        /// Also print the largest real root.
        #[arg(long)]
        root: bool,
    },
    /// Copies of a pattern in a graph, or the minimum over `T_{n,r}` plus an edge.
    Count {
        /// Pattern as graph6.
        #[arg(long, default_value = K3_GRAPH6)]
        f: String,
        #[arg(long, conflicts_with = "n")]
        graph6: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Run an exhaustive check and print its report.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Pattern as graph6, for `conjecture`.
        #[arg(long, default_value = K3_GRAPH6)]
        f: String,
    },
    /// Look for near-extremal structure.
    Search {
        #[arg(value_enum)]
        what: Search,
        #[arg(long)]
        n: usize,
    },
    /// Run every acceptance criterion and write one report per criterion.
    Reproduce {
        /// Largest n for the main and edge-version sweeps.
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        /// Largest n for the spectral companion sweeps.
        #[arg(long, default_value_t = 8)]
        companion_n_max: usize,
    },
}

/// Error carrying the exit code it maps to.
pub struct Exit(pub i32, pub String);

fn usage(msg: impl Into<String>) -> Exit {
    Exit(EXIT_USAGE, msg.into())
}

fn from_verify(e: VerifyError) -> Exit {
    match e {
        VerifyError::Spectral(_) | VerifyError::Root(_) => Exit(EXIT_FAIL, e.to_string()),
        _ => usage(e.to_string()),
    }
}

fn parse_graph6(text: &str, what: &str) -> Result<Graph, Exit> {
    graph6::decode(text).map_err(|e| usage(format!("{what}: {e}")))
}

/// Runs the command line `argv` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn dispatch<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = std::iter::once("rademacher").chain(argv.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, Exit> {
    let mut cfg = RunConfig {
        tolerance: cli.common.tol,
        workers: cli.common.workers,
        output_path: cli.common.out,
        seed: cli.common.seed,
        ..RunConfig::default()
    };
    let text_default = matches!(cli.command, Command::Construct { .. } | Command::Poly { .. } | Command::Count { .. });
    cfg.format = cli.common.format.unwrap_or(if text_default { Format::Text } else { Format::Json });
    cfg.validate().map_err(usage)?;
    match cli.command {
        Command::Construct { what, n, r, q, kind, id, a, b, c, s1 } => {
            let g = construct(what, n, r, q, kind.as_deref(), id.as_deref(), [a, b, c], s1)?;
            let code = graph6::encode(&g);
            let body = match cfg.format {
                Format::Text => format!("{code}\n"),
                Format::Json => pretty(&json!({
                    "graph6": code,
                    "n": g.n(),
                    "m": g.edge_count(),
                    "triangles": g.count_triangles(),
                })),
            };
            emit(&cfg, out, &body)?;
            Ok(EXIT_OK)
        }
        Command::Spectral { graph6: text, signless } => {
            let g = parse_graph6(&text, "--graph6")?;
            let r = if signless { signless_laplacian_radius(&g, cfg.tolerance) } else { spectral_radius(&g, cfg.tolerance) }
                .map_err(|e| Exit(EXIT_FAIL, e.to_string()))?;
            let body = match cfg.format {
                Format::Text => format!("{:.15} [{:.15}, {:.15}]\n", r.lambda, r.lower, r.upper),
                Format::Json => pretty(&json!({
                    "matrix": if signless { "signless-laplacian" } else { "adjacency" },
                    "lambda": r.lambda,
                    "lower": r.lower,
                    "upper": r.upper,
                    "residual": r.residual,
                    "iterations": r.iterations,
                    "vector": r.vector,
                })),
            };
            emit(&cfg, out, &body)?;
            Ok(EXIT_OK)
        }
        Command::Poly { kind, n, a, b, c, root } => {
            let family: Family = kind.parse().map_err(|e| usage(format!("--kind: {e}")))?;
            let abc = match (a, b, c) {
                (None, None, None) => None,
                (Some(a), Some(b), Some(c)) => Some((a, b, c)),
                _ => return Err(usage("--a, --b and --c go together")),
            };
            let p = poly_family(family, n, abc).map_err(|e| usage(e.to_string()))?;
            let r = if root { Some(largest_real_root(&p, 1e-12).map_err(|e| Exit(EXIT_FAIL, e.to_string()))?) } else { None };
            let body = match cfg.format {
                Format::Text => {
                    let mut s = format!("{p}\n");
                    if let Some(r) = r {
                        let _ = writeln!(s, "{r:.15}");
                    }
                    s
                }
                Format::Json => {
                    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                    pretty(&json!({ "family": family.name(), "n": n, "polynomial": p.to_string(), "coefficients": coeffs, "largest_root": r }))
                }
            };
            emit(&cfg, out, &body)?;
            Ok(EXIT_OK)
        }
        Command::Count { f, graph6: host, n, r } => {
            let pattern = parse_graph6(&f, "--f")?;
            let (count, host_desc) = match (host, n) {
                (Some(text), None) => {
                    let g = parse_graph6(&text, "--graph6")?;
                    (count_copies(&g, &pattern).map_err(|e| usage(e.to_string()))?, json!(text))
                }
                (None, Some(n)) => {
                    if n > MAX_COUNT_N {
                        return Err(usage(format!("--n is limited to {MAX_COUNT_N} for added-edge counts")));
                    }
                    (min_added_edge_copies(n, r, &pattern).map_err(|e| usage(e.to_string()))?, json!({ "n": n, "r": r }))
                }
                _ => return Err(usage("count needs exactly one of --graph6 or --n")),
            };
            let body = match cfg.format {
                Format::Text => format!("{count}\n"),
                Format::Json => pretty(&json!({ "pattern": f, "host": host_desc, "count": count })),
            };
            emit(&cfg, out, &body)?;
            Ok(EXIT_OK)
        }
        Command::Verify { check, n, q, r, f } => {
            let report = verify(check, n, q, r, &f, &cfg)?;
            emit(&cfg, out, &render_report(&report, cfg.format))?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Search { what: Search::NearMisses, n } => {
            let report = search_near_misses(n, &cfg.verify_options()).map_err(from_verify)?;
            emit(&cfg, out, &render_report(&report, cfg.format))?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Reproduce { n_max, companion_n_max } => {
            cfg.n_range = (3, n_max.max(companion_n_max));
            cfg.validate().map_err(usage)?;
            if n_max < 4 || companion_n_max < 3 {
                return Err(usage("--n-max must be at least 4 and --companion-n-max at least 3"));
            }
            let acc = AcceptanceConfig { n_max, companion_n_max, tol: cfg.tolerance, workers: cfg.workers, seed: cfg.seed };
            reproduce_all(&acc, cfg.output_path.as_deref().unwrap_or(Path::new("artifacts")), out)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    what: Construction,
    n: usize,
    r: usize,
    q: Option<usize>,
    kind: Option<&str>,
    id: Option<&str>,
    abc: [Option<usize>; 3],
    s1: Option<usize>,
) -> Result<Graph, Exit> {
    let bad = |e: rademacher_core::constructions::ConstructionError| usage(e.to_string());
    match what {
        Construction::Turan => turan(n, r).map_err(bad),
        Construction::TuranStar => turan_plus_star(n, r, q.ok_or_else(|| usage("turan-star needs --q"))?).map_err(bad),
        Construction::KPlus => k_plus(n).map_err(bad),
        Construction::Remark => {
            let kind: RemarkKind = kind.ok_or_else(|| usage("remark needs --kind"))?.parse().map_err(bad)?;
            remark_graph(kind, n).map_err(bad)
        }
        Construction::Case => {
            let tag = id.ok_or_else(|| usage("case needs --id"))?;
            let params: Vec<usize> = s1.into_iter().chain(abc.into_iter().flatten()).collect();
            case_graph(CaseGraphId::parse(tag, &params).map_err(bad)?, n).map_err(bad)
        }
        Construction::ApexStar => {
            let parity: Parity = kind.ok_or_else(|| usage("apex-star needs --kind even|odd"))?.parse().map_err(bad)?;
            apex_star_graph(parity, n).map_err(bad)
        }
    }
}

fn verify(check: Check, n: usize, q: Option<usize>, r: usize, f: &str, cfg: &RunConfig) -> Result<VerificationReport, Exit> {
    let opts = cfg.verify_options();
    if check != Check::LovaszSimonovits && check != Check::Conjecture && q.is_some() {
        return Err(usage("--q only applies to lovasz-simonovits and conjecture"));
    }
    let report = match check {
        Check::SpectralEr => verify_spectral_er(n, &opts),
        Check::EdgeEr => verify_edge_er(n, &opts),
        Check::Nz => verify_nz(n, &opts),
        Check::LovaszSimonovits => verify_lovasz_simonovits(n, q.unwrap_or(n.div_ceil(2).saturating_sub(1)), &opts),
        Check::Conjecture => {
            let pattern = parse_graph6(f, "--f")?;
            verify_conjecture(n, r, q.unwrap_or(1), &pattern, &opts)
        }
        Check::SqrtM => verify_sqrt_m(n, &opts),
        Check::Signless => verify_signless(n, &opts),
        Check::Bn => verify_bn(n, &opts),
    };
    report.map_err(from_verify)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn render_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(r).expect("reports serialise")),
        Format::Text => {
            let mut s = format!(
                "{} {:?}: scanned {}, qualifying {}, violations {}, extremal {}\n",
                r.check,
                r.verdict,
                r.scanned,
                r.qualifying,
                r.violations.len(),
                r.extremal.len()
            );
            for v in &r.violations {
                let _ = writeln!(s, "violation {} lambda [{:.12}, {:.12}] t={} m={}", v.graph6, v.lambda[0], v.lambda[1], v.t, v.m);
            }
            for e in &r.extremal {
                let _ = writeln!(s, "extremal {e}");
            }
            s
        }
    }
}

/// Writes `body` to the configured file, or to `out` when none is set.
fn emit(cfg: &RunConfig, out: &mut dyn Write, body: &str) -> Result<(), Exit> {
    match &cfg.output_path {
        Some(path) => fs::write(path, body).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => out.write_all(body.as_bytes()).map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

/// Runs the acceptance suite, writing `criterion_NN.json` files and a
/// `summary.txt` into `dir`. Exit 0 iff every criterion passes.
pub fn reproduce_all(cfg: &AcceptanceConfig, dir: &Path, out: &mut dyn Write) -> Result<i32, Exit> {
    let io = |e: std::io::Error| usage(format!("cannot write to {}: {e}", dir.display()));
    // fail on a bad path before spending minutes on the suite
    fs::create_dir_all(dir).map_err(io)?;
    let probe = dir.join(".write-test");
    fs::write(&probe, b"").map_err(io)?;
    let _ = fs::remove_file(&probe);
    let results = run_all(cfg);
    let mut summary = String::new();
    for r in &results {
        let body = pretty(&serde_json::to_value(r).expect("results serialise"));
        fs::write(dir.join(format!("criterion_{:02}.json", r.id)), body).map_err(io)?;
        let _ = writeln!(summary, "{}", r.line());
    }
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        summary.push_str("all criteria passed\n");
    } else {
        let _ = writeln!(summary, "failed criteria: {}", failed.join(", "));
    }
    fs::write(dir.join("summary.txt"), &summary).map_err(io)?;
    out.write_all(summary.as_bytes()).map_err(|e| usage(format!("cannot write output: {e}")))?;
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_FAIL })
}
