//! The `msym` command line.
//!
//! Exit status: 0 success, 1 usage or parse error, 2 verification failure,
//! 3 time budget exceeded.

mod cache;
mod json;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::concrete::{orbit_sum, ConcretePoly};
use crate::error::{Error, Result};
use crate::orbitring::MultiSymElement;
use crate::presentation::{
    eval_e1_poly, eval_generator_poly, is_rewrite_cached, rational_rewrite_to_e1, rewrite_in, sigma_e1, sigma_projected,
};
use crate::ringcore::parse::{parse_e1_poly, parse_generator_poly, parse_multisym};
use crate::ringcore::CoeffRing;
use crate::symfun::{is_plethysm_cached, plethysm_p};

pub use cache::{load_cache, save_cache, CacheReport};
pub use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "msym", version, about = "Multisymmetric functions and their presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Variables per slot.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Number of slots; omit for the limit ring where allowed.
    #[arg(long)]
    n: Option<usize>,
    /// Coefficient ring: z, q or fp:<p>.
    #[arg(long)]
    coeff: Option<String>,
    /// Emit one JSON object per result.
    #[arg(long)]
    json: bool,
    /// Directory holding persisted plethysm and rewrite tables.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand an orbit-basis element into A(n,m).
    Expand {
        #[command(flatten)]
        common: Common,
        element: String,
    },
    /// Multiply two orbit-basis elements, projecting to n slots if --n is given.
    Mul {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Rewrite e_α in the generators e[i;μ], or in e1[μ] with --q.
    Rewrite {
        #[command(flatten)]
        common: Common,
        index: String,
        /// Rewrite over Q in the e1[μ] alone.
        #[arg(long)]
        q: bool,
        /// Evaluate the rewrite in A(N,m) and compare with the orbit sum.
        #[arg(long, value_name = "N")]
        check_n: Option<usize>,
    },
    /// Print P_{h,k}, the expression of e_h(x^k) in elementary symmetric functions.
    Plethysm {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        k: u32,
    },
    /// Run a certificate suite over all multidegrees up to --maxdeg.
    Verify {
        #[command(flatten)]
        common: Common,
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        maxdeg: u32,
        /// Seconds allowed per case.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        /// Keep wall times in JSON certificates.
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate a generator polynomial (e1 polynomial with --q) in A(n,m).
    Eval {
        #[command(flatten)]
        common: Common,
        poly: String,
        #[arg(long)]
        q: bool,
        /// Print orbit-basis coordinates instead of the concrete polynomial.
        #[arg(long)]
        orbit: bool,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Expand { common, .. }
            | Command::Mul { common, .. }
            | Command::Rewrite { common, .. }
            | Command::Plethysm { common, .. }
            | Command::Verify { common, .. }
            | Command::Eval { common, .. } => common,
        }
    }
}

/// What a command wants printed, before the text/JSON choice.
struct Output {
    records: Vec<(String, Value)>,
    notes: Vec<String>,
    status: i32,
}

impl Output {
    fn one(text: String, value: Value) -> Self {
        Output { records: vec![(text, value)], notes: Vec::new(), status: EXIT_OK }
    }
}

/// Runs `msym` with `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return status;
        }
    };
    let common = cli.command.common().clone();
    if let Some(dir) = &common.cache_dir {
        for warning in load_cache(dir).warnings {
            let _ = writeln!(err, "warning: {warning}");
        }
    }
    let result = dispatch(&cli.command);
    if let Some(dir) = &common.cache_dir {
        if let Err(e) = save_cache(dir) {
            let _ = writeln!(err, "warning: could not write cache in {}: {e}", dir.display());
        }
    }
    match result {
        Ok(output) => {
            for note in &output.notes {
                let _ = writeln!(err, "{note}");
            }
            for (text, value) in &output.records {
                let line = if common.json { json::to_line(value) } else { text.clone() };
                let _ = writeln!(out, "{line}");
            }
            output.status
        }
        Err(e) => {
            let status = match e {
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
            if common.json {
                let _ = writeln!(err, "{}", json::to_line(&json::error(&e, status)));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            status
        }
    }
}

fn ring_of(common: &Common, default: CoeffRing) -> Result<CoeffRing> {
    common.coeff.as_deref().map_or(Ok(default), CoeffRing::parse)
}

fn require_n(common: &Common, what: &str) -> Result<usize> {
    common.n.ok_or_else(|| Error::Invalid(format!("{what} needs --n")))
}

fn dispatch(command: &Command) -> Result<Output> {
    match command {
        Command::Expand { common, element } => expand(common, element),
        Command::Mul { common, left, right } => mul(common, left, right),
        Command::Rewrite { common, index, q, check_n } => rewrite(common, index, *q, *check_n),
        Command::Plethysm { common, h, k } => plethysm(*h, *k, common),
        Command::Verify { common, suite, maxdeg, budget, timing } => {
            verify::run(*suite, common, *maxdeg, *budget, *timing)
        }
        Command::Eval { common, poly, q, orbit } => eval(common, poly, *q, *orbit),
    }
}

fn expand_element(x: &MultiSymElement, n: usize) -> Result<(ConcretePoly, Vec<String>)> {
    let mut total = ConcretePoly::zero(n, x.arity(), x.ring());
    let mut notes = Vec::new();
    for (alpha, c) in x.terms().iter() {
        if alpha.size() as usize > n {
            notes.push(format!("note: |α| = {} > n = {n}, so {alpha} vanishes in A({n},{})", alpha.size(), x.arity()));
            continue;
        }
        total = total.add(&orbit_sum(alpha, n, x.ring()).scale(c))?;
    }
    Ok((total, notes))
}

fn expand(common: &Common, element: &str) -> Result<Output> {
    let n = require_n(common, "expand")?;
    let ring = ring_of(common, CoeffRing::Integers)?;
    let x = parse_multisym(element, common.m, ring)?;
    let (poly, notes) = expand_element(&x, n)?;
    let mut output = Output::one(poly.to_string(), json::concrete(&poly));
    output.notes = notes;
    Ok(output)
}

fn mul(common: &Common, left: &str, right: &str) -> Result<Output> {
    let ring = ring_of(common, CoeffRing::Integers)?;
    let x = parse_multisym(left, common.m, ring)?;
    let y = parse_multisym(right, common.m, ring)?;
    let product = match common.n {
        Some(n) => x.multiply_projected(&y, n)?,
        None => x.multiply(&y)?,
    };
    Ok(Output::one(product.to_string(), json::orbit(&product, common.n)))
}

fn rewrite(common: &Common, index: &str, rational: bool, check_n: Option<usize>) -> Result<Output> {
    let alpha = crate::ringcore::parse::parse_orbit_index(index, common.m)?;
    let mut notes = Vec::new();
    let (text, value, back) = if rational {
        let ring = ring_of(common, CoeffRing::Rationals)?;
        let g = rational_rewrite_to_e1(&alpha, ring)?;
        let back = check_n.map(|n| eval_e1_poly(&g, n, common.m));
        (g.to_string(), json::symbolic("generator", &g, ring, common.m), back)
    } else {
        let ring = ring_of(common, CoeffRing::Integers)?;
        if is_rewrite_cached(&alpha) {
            notes.push(format!("cache hit: rewrite of {alpha}"));
        }
        let g = rewrite_in(&alpha, ring);
        let back = check_n.map(|n| eval_generator_poly(&g, n, common.m));
        (g.to_string(), json::symbolic("generator", &g, ring, common.m), back)
    };
    let mut output = Output::one(text, value);
    output.notes = notes;
    if let (Some(n), Some(back)) = (check_n, back) {
        let ring = back.ring();
        let want =
            if alpha.size() as usize > n { ConcretePoly::zero(n, common.m, ring) } else { orbit_sum(&alpha, n, ring) };
        let ok = back == want;
        let line = format!("check n={n}: {}", if ok { "ok" } else { "MISMATCH" });
        let value = json::with_kind("check", [("n", Value::String(n.to_string())), ("ok", Value::Bool(ok))]);
        output.records.push((line, value));
        if !ok {
            output.status = EXIT_FAILED;
        }
    }
    Ok(output)
}

fn plethysm(h: u32, k: u32, common: &Common) -> Result<Output> {
    if h == 0 || k == 0 {
        return Err(Error::Invalid("--h and --k must be positive".into()));
    }
    let ring = ring_of(common, CoeffRing::Integers)?;
    let hit = is_plethysm_cached(h, k);
    let p = plethysm_p(h, k).change_ring(ring)?;
    let mut value = json::symbolic("poly", &p, ring, 0);
    if let Value::Object(map) = &mut value {
        map.insert("h".into(), Value::String(h.to_string()));
        map.insert("k".into(), Value::String(k.to_string()));
    }
    let mut output = Output::one(p.to_string(), value);
    if hit {
        output.notes.push(format!("cache hit: P({h},{k})"));
    }
    Ok(output)
}

fn eval(common: &Common, text: &str, rational: bool, orbit: bool) -> Result<Output> {
    let n = require_n(common, "eval")?;
    let m = common.m;
    if rational {
        let ring = ring_of(common, CoeffRing::Rationals)?;
        if !ring.contains_rationals() {
            return Err(Error::RequiresRationals);
        }
        let g = parse_e1_poly(text, m, ring)?;
        if orbit {
            let x = sigma_e1(&g, m).project_n(n);
            return Ok(Output::one(x.to_string(), json::orbit(&x, Some(n))));
        }
        let poly = eval_e1_poly(&g, n, m);
        return Ok(Output::one(poly.to_string(), json::concrete(&poly)));
    }
    let ring = ring_of(common, CoeffRing::Integers)?;
    let g = parse_generator_poly(text, m, ring)?;
    if orbit {
        let x = sigma_projected(&g, m, n);
        return Ok(Output::one(x.to_string(), json::orbit(&x, Some(n))));
    }
    let poly = eval_generator_poly(&g, n, m);
    Ok(Output::one(poly.to_string(), json::concrete(&poly)))
}
