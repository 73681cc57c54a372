//! The `verify` command: a registry of checkers, each expanded into one case per weight.

use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use schurmzv::combinat::binom;
use schurmzv::formulas::*;
use schurmzv::numerics::{eval_combo, riemann_zeta};
use schurmzv::reference;
use schurmzv::schur::{s_w_bruteforce, s_w_spec, sw_shape_combo};
use schurmzv::shapes::{RibbonSpec, SkewShape};

use crate::{parse_list, parse_range, parse_shape, print_json, CliError, CliResult, SCHEMA};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyId {
    MzvSum,
    MzsvSum,
    AntiHook,
    Stair,
    S00,
    Inductive,
    TwoCorner,
    Hook,
    OneCorner,
    SwRel,
    Symmetric,
    #[value(name = "square-22")]
    #[serde(rename = "square-22")]
    Square22,
    #[value(name = "examples-41")]
    #[serde(rename = "examples-41")]
    Examples41,
    All,
}

const REGISTERED: [VerifyId; 13] = [
    VerifyId::MzvSum,
    VerifyId::MzsvSum,
    VerifyId::AntiHook,
    VerifyId::Stair,
    VerifyId::S00,
    VerifyId::Inductive,
    VerifyId::TwoCorner,
    VerifyId::Hook,
    VerifyId::OneCorner,
    VerifyId::SwRel,
    VerifyId::Symmetric,
    VerifyId::Square22,
    VerifyId::Examples41,
];

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    id: VerifyId,
    /// s parameter: one value, or a comma list for inductive and two-corner.
    #[arg(long)]
    s: Option<String>,
    /// r parameter: one value or a comma list.
    #[arg(long)]
    r: Option<String>,
    /// Number of steps of a stair.
    #[arg(long)]
    n: Option<u32>,
    /// Depth for mzv-sum and mzsv-sum.
    #[arg(long)]
    d: Option<u32>,
    /// Corner index (1-based) for inductive.
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    shape: Option<String>,
    /// Inclusive weight range a..b; defaults to four weights from the first admissible one.
    #[arg(long)]
    w_range: Option<String>,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Truncation used for exact comparisons.
    #[arg(long, default_value_t = 12)]
    exact_m: u32,
    #[arg(long)]
    json: bool,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Time budget in seconds; cases not started by then are skipped.
    #[arg(long, default_value_t = 600)]
    budget: u64,
}

type Check = Box<dyn Fn(f64) -> schurmzv::Result<Vec<FormulaReport>> + Send + Sync>;

struct Case {
    id: VerifyId,
    w: u32,
    check: Check,
}

/// Parameters after applying per-checker defaults.
struct Params<'a> {
    a: &'a VerifyArgs,
}

impl Params<'_> {
    fn list(&self, v: &Option<String>, default: &[u32]) -> CliResult<Vec<u32>> {
        match v {
            Some(s) => parse_list(s),
            None => Ok(default.to_vec()),
        }
    }

    fn one(&self, v: &Option<String>, name: &str, default: u32) -> CliResult<u32> {
        let l = self.list(v, &[default])?;
        match l[..] {
            [x] => Ok(x),
            _ => Err(CliError::Parse(format!("--{name} takes a single value"))),
        }
    }

    fn pair(&self, v: &Option<String>, name: &str, default: [u32; 2]) -> CliResult<[u32; 2]> {
        let l = self.list(v, &default)?;
        match l[..] {
            [x, y] => Ok([x, y]),
            _ => Err(CliError::Parse(format!("--{name} takes two values"))),
        }
    }

    fn shape(&self, default: &str) -> CliResult<SkewShape> {
        parse_shape(self.a.shape.as_deref().unwrap_or(default))
    }

    /// Weights to check: the given range, else four from the threshold.
    fn weights(&self, threshold: u32) -> CliResult<Vec<u32>> {
        let (lo, hi) = match &self.a.w_range {
            Some(r) if self.a.id != VerifyId::All => parse_range(r)?,
            _ => (threshold, threshold + 3),
        };
        if lo < threshold {
            return Err(CliError::Domain(format!("weights start at {threshold} here, got {lo}")));
        }
        Ok((lo..=hi).collect())
    }
}

fn positive(x: u32, name: &str) -> CliResult<()> {
    if x == 0 {
        Err(CliError::Domain(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn zeta_times(c: BigRational, w: u32, tol: f64) -> schurmzv::Result<schurmzv::numerics::EvalResult> {
    Ok(riemann_zeta(w, tol)?.scale_q(&c))
}

fn cases_for(id: VerifyId, p: &Params) -> CliResult<Vec<Case>> {
    let a = p.a;
    let mut out = Vec::new();
    let mut push = |w: u32, check: Check| out.push(Case { id, w, check });
    match id {
        VerifyId::MzvSum | VerifyId::MzsvSum => {
            let d = a.d.unwrap_or(2);
            positive(d, "d")?;
            let row = id == VerifyId::MzsvSum;
            for w in p.weights(d + 1)? {
                push(
                    w,
                    Box::new(move |tol| {
                        let (sh, c) = if row {
                            (SkewShape::row(d), binom(w as i64 - 1, d as i64 - 1))
                        } else {
                            (SkewShape::column(d), 1.into())
                        };
                        let lhs = eval_combo(&sw_shape_combo(&sh, w), tol)?;
                        let rhs = zeta_times(BigRational::from_integer(c), w, tol)?;
                        let name = if row { "mzsv-sum" } else { "mzv-sum" };
                        Ok(vec![FormulaReport::compare(name, format!("d={d} w={w}"), lhs, rhs, tol)])
                    }),
                );
            }
        }
        VerifyId::AntiHook => {
            let (s, r) = (p.one(&a.s, "s", 1)?, p.one(&a.r, "r", 2)?);
            positive(r, "r")?;
            for w in p.weights(s + r + 1)? {
                push(
                    w,
                    Box::new(move |tol| {
                        let spec = RibbonSpec::new(vec![s], vec![r])?;
                        let c = BigRational::from_integer(anti_hook_formula(s, r, w)?);
                        let params = format!("s={s} r={r} w={w}");
                        Ok(vec![FormulaReport::compare(
                            "anti-hook",
                            params,
                            s_w_spec(&spec, w, tol)?,
                            zeta_times(c, w, tol)?,
                            tol,
                        )])
                    }),
                );
            }
        }
        VerifyId::Stair => {
            let (r, n) = (p.one(&a.r, "r", 2)?, a.n.unwrap_or(2));
            positive(r, "r")?;
            positive(n, "n")?;
            for w in p.weights((r + 2) * n + 1)? {
                push(
                    w,
                    Box::new(move |tol| {
                        let c = stair_formula(r, n, w)?;
                        let params = format!("r={r} n={n} w={w} c={c}");
                        let lhs = s_w_spec(&stair_spec(r, n), w, tol)?;
                        Ok(vec![FormulaReport::compare("stair", params, lhs, zeta_times(c, w, tol)?, tol)])
                    }),
                );
            }
        }
        VerifyId::S00 | VerifyId::Symmetric => {
            let (s, r) = (p.one(&a.s, "s", 1)?, p.list(&a.r, &[1, 2])?);
            if r.is_empty() || r.contains(&0) {
                return Err(CliError::Domain("r needs entries ≥ 1".into()));
            }
            let th = s + r.iter().sum::<u32>() + r.len() as u32;
            for w in p.weights(th)? {
                let r = r.clone();
                let check: Check = if id == VerifyId::S00 {
                    Box::new(move |tol| {
                        let mut sv = vec![0; r.len()];
                        sv[0] = s;
                        let spec = RibbonSpec::new(sv, r.clone())?;
                        Ok(vec![check_against_spec("s00", &spec, w, &s00_formula(s, &r, w), tol)?])
                    })
                } else {
                    Box::new(move |tol| Ok(vec![symmetric_sum_check(s, &r, w, tol)?]))
                };
                push(w, check);
            }
        }
        VerifyId::Inductive => {
            let spec = RibbonSpec::new(p.list(&a.s, &[0, 1])?, p.list(&a.r, &[2, 1])?)?;
            let i = a.i.unwrap_or(1);
            let m = a.exact_m;
            for w in p.weights(spec.boxes() + spec.n() as u32)? {
                let spec = spec.clone();
                push(w, Box::new(move |tol| Ok(vec![inductive_reduction_check(&spec, i, w, m, tol)?])));
            }
        }
        VerifyId::TwoCorner => {
            let ([s1, s2], [r1, r2]) = (p.pair(&a.s, "s", [1, 0])?, p.pair(&a.r, "r", [1, 2])?);
            positive(r1.min(r2), "r")?;
            for w in p.weights(s1 + s2 + r1 + r2 + 2)? {
                push(
                    w,
                    Box::new(move |tol| {
                        let spec = RibbonSpec::new(vec![s1, s2], vec![r1, r2])?;
                        let pre = two_corner_prelim(s1, s2, r1, r2, w)?.flatten();
                        let full = two_corner_formula(s1, s2, r1, r2, w)?.flatten();
                        Ok(vec![
                            check_against_spec("two-corner-prelim", &spec, w, &pre, tol)?,
                            check_against_spec("two-corner", &spec, w, &full, tol)?,
                        ])
                    }),
                );
            }
        }
        VerifyId::Hook => {
            let (s, r) = (p.one(&a.s, "s", 3)?, p.one(&a.r, "r", 2)?);
            positive(s.min(r), "s and r")?;
            for w in p.weights(s + r + 2)? {
                push(
                    w,
                    Box::new(move |tol| {
                        let spec = RibbonSpec::new(vec![0, s - 1], vec![r, 1])?;
                        Ok(vec![check_against_spec("hook", &spec, w, &hook_formula(s, r, w)?.flatten(), tol)?])
                    }),
                );
            }
        }
        VerifyId::OneCorner | VerifyId::SwRel => {
            let rel = id == VerifyId::SwRel;
            let sh = p.shape(if rel { "2,2,2,2/1,1" } else { "3,3/1" })?;
            if rel {
                sw_relation_terms(&sh)?;
            } else {
                one_corner_sum(&sh, 0)?;
            }
            let size = sh.size() as u32;
            for w in p.weights(size + if rel { 2 } else { 1 })? {
                let sh = sh.clone();
                let check: Check = if rel {
                    Box::new(move |tol| Ok(vec![sw_relation_check(&sh, w, tol)?]))
                } else {
                    Box::new(move |tol| {
                        let lhs = eval_combo(&one_corner_sum(&sh, w)?, tol)?;
                        let rhs = s_w_bruteforce(&sh, w, tol)?;
                        Ok(vec![FormulaReport::compare("one-corner", format!("shape={sh} w={w}"), lhs, rhs, tol)])
                    })
                };
                push(w, check);
            }
        }
        VerifyId::Square22 => {
            for w in p.weights(5)? {
                push(
                    w,
                    Box::new(move |tol| {
                        let lhs = s_w_bruteforce(&reference::square_shape(), w, tol)?;
                        let rhs = reference::square_22(w).eval(tol)?;
                        Ok(vec![FormulaReport::compare("square-22", format!("w={w}"), lhs, rhs, tol)])
                    }),
                );
            }
        }
        VerifyId::Examples41 => {
            for w in p.weights(6)? {
                push(
                    w,
                    Box::new(move |tol| {
                        let mut out = Vec::new();
                        for (name, sh, disp) in [
                            ("example-i", reference::example_i_shape(), reference::example_i(w)),
                            ("example-ii", reference::example_ii_shape(), reference::example_ii(w)),
                        ] {
                            let lhs = s_w_bruteforce(&sh, w, tol)?;
                            out.push(FormulaReport::compare(
                                name,
                                format!("shape={sh} w={w}"),
                                lhs,
                                disp.eval(tol)?,
                                tol,
                            ));
                        }
                        Ok(out)
                    }),
                );
            }
        }
        VerifyId::All => {
            for id in REGISTERED {
                out.extend(cases_for(id, p)?);
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Report<'a> {
    schema: &'static str,
    command: &'static str,
    id: VerifyId,
    tol: f64,
    ok: bool,
    total: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
    reports: Vec<Entry<'a>>,
}

#[derive(Serialize)]
struct Entry<'a> {
    id: VerifyId,
    w: u32,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<&'a FormulaReport>,
}

fn id_name(id: VerifyId) -> String {
    id.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

pub fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(CliError::Parse(format!("tolerance must be positive, got {}", a.tol)));
    }
    let cases = cases_for(a.id, &Params { a: &a })?;
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build().map_err(|e| CliError::Domain(e.to_string()))?;
    let start = Instant::now();
    let budget = Duration::from_secs(a.budget);
    let tol = a.tol;
    // collected in case order whatever the scheduling
    let results: Vec<Option<schurmzv::Result<Vec<FormulaReport>>>> = pool.install(|| {
        cases.par_iter().map(|c| if start.elapsed() > budget { None } else { Some((c.check)(tol)) }).collect()
    });

    let mut done = Vec::with_capacity(results.len());
    for r in results {
        done.push(r.transpose()?);
    }
    let mut entries = Vec::new();
    for (c, r) in cases.iter().zip(&done) {
        match r {
            None => entries.push(Entry { id: c.id, w: c.w, status: "skipped", report: None }),
            Some(reps) => {
                for rep in reps {
                    let status = if rep.passed { "pass" } else { "fail" };
                    entries.push(Entry { id: c.id, w: c.w, status, report: Some(rep) });
                }
            }
        }
    }
    let count = |s: &str| entries.iter().filter(|e| e.status == s).count();
    let (passed, failed, skipped) = (count("pass"), count("fail"), count("skipped"));
    let ok = failed == 0 && skipped == 0;
    if a.json {
        print_json(&Report {
            schema: SCHEMA,
            command: "verify",
            id: a.id,
            tol,
            ok,
            total: entries.len(),
            passed,
            failed,
            skipped,
            reports: entries,
        });
    } else {
        let mut text = String::new();
        for e in &entries {
            match e.report {
                Some(r) => text.push_str(&format!("{r}\n")),
                None => text.push_str(&format!("SKIP {} w={}\n", id_name(e.id), e.w)),
            }
        }
        text.push_str(&format!("{}: {passed} passed, {failed} failed, {skipped} skipped\n", id_name(a.id)));
        print!("{text}");
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}
