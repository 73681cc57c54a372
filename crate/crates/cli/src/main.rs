mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use schurmzv::numerics::{
    eval_combo, mzv_numeric, mzv_numeric_truncated, mzv_trunc_exact, mzv_trunc_exact_combo, EvalResult,
};
use schurmzv::posets::{admissible_part, total_extensions, TwoPoset, DEFAULT_CAP};
use schurmzv::schur::{schur_numeric, schur_trunc_direct, sw_shape_combo};
use schurmzv::shapes::SkewShape;
use schurmzv::tableaux::Tableau;
use schurmzv::weighted::{p_closed_depth2, p_closed_depth3, p_recursive, p_std, q_std, q_via_p};
use schurmzv::words::{phi_via_jacobi_trudi, phi_via_ssd, Word, WordCombo};

const SCHEMA: &str = "1";
const DEFAULT_MAX_N: usize = 10_000_000;

/// Failures, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Failed,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<schurmzv::Error> for CliError {
    fn from(e: schurmzv::Error) -> Self {
        match e {
            schurmzv::Error::Parse(_) | schurmzv::Error::MalformedChain(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses user input; any library error here counts as malformed input.
pub fn parse_arg<T>(r: schurmzv::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Parse(e.to_string()))
}

#[derive(Parser)]
#[command(name = "schurmzv", version, about = "Schur multiple zeta values: evaluation and sum formula checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a single quantity and print it as JSON.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Check a sum formula over a range of weights.
    Verify(verify::VerifyArgs),
    /// Print CSV tables.
    #[command(subcommand)]
    Table(TableCmd),
    /// Expand 2-posets into words.
    #[command(subcommand)]
    Poset(PosetCmd),
}

#[derive(Args)]
struct Numeric {
    /// Target absolute error.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Print the exact truncated sum over entries below M instead.
    #[arg(long)]
    exact_m: Option<u32>,
}

#[derive(Subcommand)]
enum EvalCmd {
    /// A multiple zeta value ζ(k).
    Mzv {
        #[arg(long)]
        index: String,
        #[command(flatten)]
        num: Numeric,
        #[arg(long, value_enum, default_value_t = Engine::Split)]
        engine: Engine,
        /// Truncation budget for the trunc engine.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// A Schur MZV given by a shape and a row-major filling "1,2;3".
    Schur {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        fill: String,
        #[command(flatten)]
        num: Numeric,
    },
    /// S_w of a shape: the sum over all admissible fillings of weight w.
    Sw {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        w: u32,
        #[command(flatten)]
        num: Numeric,
    },
    /// The word combination φ(D).
    Phi {
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = PhiRoute::Ssd)]
        route: PhiRoute,
    },
    /// The weighted sum P_l(k), or Q_l(k) with --q.
    Weighted {
        #[arg(long)]
        k: String,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value_t = Route::Def)]
        route: Route,
        #[arg(long)]
        q: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Split,
    Trunc,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhiRoute {
    Ssd,
    Jt,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Route {
    Def,
    Rec,
    Closed,
}

#[derive(Subcommand)]
enum TableCmd {
    /// Columns w, value, err_bound, bound_kind of S_w(shape).
    Sw {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        w_range: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// The stair coefficients c with S_w = c·ζ(w).
    Stair {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w_range: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Linear extensions of a 2-poset "LABELS:a<b,c<d".
    Expand {
        #[arg(long)]
        spec: String,
        /// Largest poset accepted.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Serialize)]
struct EvalOut<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    input: String,
    value: T,
}

#[derive(Serialize)]
struct ExactOut {
    m: u32,
    exact: String,
    approx: f64,
}

fn exact_out(m: u32, q: BigRational) -> ExactOut {
    ExactOut { m, approx: schurmzv::numerics::rational_to_f64(&q), exact: q.to_string() }
}

pub fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn emit<T: Serialize>(command: &str, input: String, value: T) {
    print_json(&EvalOut { schema: SCHEMA, command, input, value });
}

pub fn parse_list(s: &str) -> CliResult<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| CliError::Parse(format!("bad list entry {x:?} in {s:?}"))))
        .collect()
}

pub fn parse_shape(s: &str) -> CliResult<SkewShape> {
    parse_arg(s.parse())
}

/// "a..b" or "a..=b", both inclusive.
pub fn parse_range(s: &str) -> CliResult<(u32, u32)> {
    let bad = || CliError::Parse(format!("bad range {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// The truncation budget: the flag (or its default), capped by SCHURMZV_MAX_N.
fn max_n(flag: Option<usize>) -> CliResult<usize> {
    let n = flag.unwrap_or(DEFAULT_MAX_N);
    match std::env::var("SCHURMZV_MAX_N") {
        Ok(v) => {
            let cap: usize = v.trim().parse().map_err(|_| CliError::Parse(format!("SCHURMZV_MAX_N={v:?}")))?;
            Ok(n.min(cap))
        }
        Err(_) => Ok(n),
    }
}

fn check_tol(tol: f64) -> CliResult<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::Parse(format!("tolerance must be positive, got {tol}")))
    }
}

fn cmd_eval(cmd: EvalCmd) -> CliResult<()> {
    match cmd {
        EvalCmd::Mzv { index, num, engine, max_n: flag } => {
            let w: Word = parse_arg(index.parse())?;
            check_tol(num.tol)?;
            if let Some(m) = num.exact_m {
                emit("eval mzv", w.to_string(), exact_out(m, mzv_trunc_exact(&w, m)));
                return Ok(());
            }
            let r = match engine {
                Engine::Split => mzv_numeric(&w, num.tol)?,
                Engine::Trunc => mzv_numeric_truncated(&w, num.tol, max_n(flag)?)?,
            };
            emit("eval mzv", w.to_string(), r);
        }
        EvalCmd::Schur { shape, fill, num } => {
            let sh = parse_shape(&shape)?;
            let t = parse_arg(Tableau::parse(&sh, &fill))?;
            check_tol(num.tol)?;
            let input = format!("{sh} {fill}");
            match num.exact_m {
                Some(m) => emit("eval schur", input, exact_out(m, schur_trunc_direct(&t, m))),
                None => emit("eval schur", input, schur_numeric(&t, num.tol)?),
            }
        }
        EvalCmd::Sw { shape, w, num } => {
            let sh = parse_shape(&shape)?;
            check_tol(num.tol)?;
            let c = sw_shape_combo(&sh, w);
            let input = format!("{sh} w={w}");
            match num.exact_m {
                Some(m) => emit("eval sw", input, exact_out(m, mzv_trunc_exact_combo(&c, m))),
                None => emit("eval sw", input, eval_combo(&c, num.tol)?),
            }
        }
        EvalCmd::Phi { shape, route } => {
            let sh = parse_shape(&shape)?;
            let c = match route {
                PhiRoute::Ssd => phi_via_ssd(&sh),
                PhiRoute::Jt => phi_via_jacobi_trudi(&sh),
            };
            emit("eval phi", sh.to_string(), c);
        }
        EvalCmd::Weighted { k, l, route, q, tol } => {
            let k = parse_list(&k)?;
            check_tol(tol)?;
            if k.is_empty() || k.contains(&0) || l == 0 {
                return Err(CliError::Domain("weighted sums need k_i ≥ 1, depth ≥ 1 and l ≥ 1".into()));
            }
            let combo = weighted_combo(&k, l, route, q)?;
            #[derive(Serialize)]
            struct Out {
                kind: &'static str,
                k: Vec<u32>,
                l: u32,
                route: Route,
                combo: WordCombo,
                numeric: EvalResult,
            }
            let numeric = eval_combo(&combo, tol)?;
            let kind = if q { "Q" } else { "P" };
            let input = format!("{kind}_{l}({})", Word(k.clone()));
            emit("eval weighted", input, Out { kind, k, l, route, combo, numeric });
        }
    }
    Ok(())
}

fn weighted_combo(k: &[u32], l: u32, route: Route, q: bool) -> CliResult<WordCombo> {
    Ok(match (route, q) {
        (Route::Def, false) => p_std(k, l),
        (Route::Rec, false) => p_recursive(k, l),
        (Route::Closed, false) => match *k {
            [k1, k2] => p_closed_depth2(k1, k2, l)?.flatten(),
            [k1, k2, k3] => p_closed_depth3(k1, k2, k3, l)?.flatten(),
            _ => return Err(CliError::Domain("closed forms exist for depth 2 and 3 only".into())),
        },
        (Route::Def, true) => q_std(k, l)?,
        (_, true) => q_via_p(k, l)?,
    })
}

fn cmd_table(cmd: TableCmd) -> CliResult<()> {
    let mut out = String::new();
    match cmd {
        TableCmd::Sw { shape, w_range, tol } => {
            let sh = parse_shape(&shape)?;
            let (a, b) = parse_range(&w_range)?;
            check_tol(tol)?;
            out.push_str("w,value,err_bound,bound_kind\n");
            for w in a..=b {
                let r = eval_combo(&sw_shape_combo(&sh, w), tol)?;
                out.push_str(&format!("{w},{},{:e},{}\n", r.value, r.err_bound, kind_str(&r)));
            }
        }
        TableCmd::Stair { r, n, w_range, tol } => {
            let (a, b) = parse_range(&w_range)?;
            check_tol(tol)?;
            out.push_str("w,coefficient,value,err_bound\n");
            if r == 0 || n == 0 {
                return Err(CliError::Domain("stairs need r, n ≥ 1".into()));
            }
            for w in a..=b {
                // no admissible filling fits below the threshold, so S_w vanishes there
                let c = if w <= (r + 2) * n {
                    BigRational::from_integer(0.into())
                } else {
                    schurmzv::formulas::stair_formula(r, n, w)?
                };
                let v = schurmzv::numerics::riemann_zeta(w, tol)?.scale_q(&c);
                out.push_str(&format!("{w},{c},{},{:e}\n", v.value, v.err_bound));
            }
        }
    }
    print!("{out}");
    Ok(())
}

fn kind_str(r: &EvalResult) -> &'static str {
    match r.bound_kind {
        schurmzv::numerics::BoundKind::Rigorous => "rigorous",
        schurmzv::numerics::BoundKind::Heuristic => "heuristic",
    }
}

fn cmd_poset(cmd: PosetCmd) -> CliResult<()> {
    let PosetCmd::Expand { spec, cap } = cmd;
    let x: TwoPoset = parse_arg(spec.parse())?;
    #[derive(Serialize)]
    struct Chain {
        labels: String,
        count: u64,
    }
    #[derive(Serialize)]
    struct Out {
        size: usize,
        admissible: bool,
        linear_extensions: u64,
        chains: Vec<Chain>,
        admissible_part: Option<WordCombo>,
    }
    let ext = total_extensions(&x, cap)?;
    let chains: Vec<Chain> = ext
        .iter()
        .map(|(l, &count)| Chain { labels: l.iter().map(|b| char::from(b'0' + b)).collect(), count })
        .collect();
    let admissible = x.is_admissible();
    let adm = if admissible { Some(admissible_part(&x, cap)?) } else { None };
    let out = Out { size: x.len(), admissible, linear_extensions: ext.values().sum(), chains, admissible_part: adm };
    emit("poset expand", x.to_string(), out);
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Eval(c) => cmd_eval(c),
        Cmd::Verify(a) => verify::cmd_verify(a),
        Cmd::Table(c) => cmd_table(c),
        Cmd::Poset(c) => cmd_poset(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Parse(m) => eprintln!("error: {m}"),
                CliError::Domain(m) => eprintln!("error: {m}"),
                CliError::Failed => {}
            }
            ExitCode::from(e.code())
        }
    }
}
