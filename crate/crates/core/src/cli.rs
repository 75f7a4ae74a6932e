//! Command-line front end. `run` does all the work and returns the text
//! and exit code so it can be driven from tests.

use crate::capacity::{fixed_point, holevo_capacity, shannon_capacity};
use crate::channel::{catalog, kraus_to_affine, ChannelAffine, KrausSet, CATALOG};
use crate::cp;
use crate::decompose::{minimal_entropy_set, polar_factor};
use crate::error::{Error, Result};
use crate::linalg::c;
use crate::minent::{entropy_difference_params, max_norm, min_output_entropy, run_scan, ScanConfig, ScanKind, VIOLATION_TOL};
use crate::qstate::schmidt_decompose;
use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::{Matrix2, Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CP: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Name of the environment variable overriding the scan violation threshold.
/// Negative values demand that the bound be cleared by that margin.
pub const TOL_ENV: &str = "QCHAN_TOL";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub name: String,
    pub rep: Rep,
}

/// Complex entries are `[re, im]`; Kraus operators are row-major 2x2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Rep {
    Kraus(Vec<[[[f64; 2]; 2]; 2]>),
    Affine {
        t: [f64; 3],
        #[serde(rename = "T")]
        m: [[f64; 3]; 3],
    },
    Diagonal {
        lambda: [f64; 3],
        t: [f64; 3],
    },
}

impl ChannelSpec {
    /// Diagonal representation when `T` is diagonal, affine otherwise.
    pub fn from_channel(name: &str, phi: &ChannelAffine) -> Self {
        let t: [f64; 3] = (*phi.t()).into();
        let rep = match phi.diagonal() {
            Some(d) => Rep::Diagonal { lambda: d.lambda, t: d.t },
            None => {
                let m = phi.matrix();
                Rep::Affine { t, m: std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)] + 0.0)) }
            }
        };
        Self { name: name.to_string(), rep }
    }

    pub fn from_catalog(name: &str, params: &[f64]) -> Result<Self> {
        Ok(Self::from_channel(name, &catalog(name, params)?))
    }

    /// Affine form; the Choi test is skipped when `allow_non_cp` is set.
    pub fn to_channel(&self, allow_non_cp: bool) -> Result<ChannelAffine> {
        let phi = match &self.rep {
            Rep::Kraus(ops) => {
                let ops = ops
                    .iter()
                    .map(|a| Matrix2::new(c(a[0][0][0], a[0][0][1]), c(a[0][1][0], a[0][1][1]), c(a[1][0][0], a[1][0][1]), c(a[1][1][0], a[1][1][1])))
                    .collect();
                kraus_to_affine(&KrausSet::new(ops)?)?
            }
            Rep::Affine { t, m } => {
                ChannelAffine::new_unchecked(Vector3::from(*t), Matrix3::from_fn(|i, j| m[i][j]))
            }
            Rep::Diagonal { lambda, t } => {
                ChannelAffine::new_unchecked(Vector3::from(*t), Matrix3::from_diagonal(&Vector3::from(*lambda)))
            }
        };
        if phi.t().iter().chain(phi.matrix().iter()).any(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("{}: non-finite entry", self.name)));
        }
        if !allow_non_cp {
            let rep = cp::choi_check(&phi);
            if !rep.is_cp {
                return Err(Error::NotCp(format!(
                    "{}: Choi matrix has eigenvalue {:.6e}",
                    self.name, rep.choi_min_eigenvalue
                )));
            }
        }
        Ok(phi)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

/// Parses a spec file or the `@name[:p1,p2,...]` catalog shorthand.
pub fn load_spec(arg: &str) -> Result<ChannelSpec> {
    if let Some(rest) = arg.strip_prefix('@') {
        let (name, params) = rest.split_once(':').unwrap_or((rest, ""));
        let params = params
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Input(format!("{arg}: bad parameter `{s}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        return match catalog(name, &params) {
            Ok(phi) => Ok(ChannelSpec::from_channel(name, &phi)),
            Err(Error::NotCp(m)) => Err(Error::NotCp(format!("{arg}: {m}"))),
            Err(e) => Err(Error::Input(format!("{arg}: {e}"))),
        };
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("{arg}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{arg}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CmdOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self { stdout: String::new(), stderr, code }
    }

    fn from_error(e: &Error) -> Self {
        let code = if matches!(e, Error::NotCp(_)) { EXIT_NOT_CP } else { EXIT_INPUT };
        Self::fail(code, format!("error: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "qchan", version, about = "Qubit channel analysis: CP tests, output entropy, capacities, additivity scans")]
pub struct Cli {
    /// Accept channel specs that fail the Choi test.
    #[arg(long, global = true)]
    pub allow_non_cp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report CP inequality margins and the Choi minimum eigenvalue.
    CpCheck {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Normal form, output norm, minimal entropy, fixed point and capacities.
    Analyze {
        spec: String,
        /// Report entropies and capacities in bits.
        #[arg(long)]
        bits: bool,
        #[arg(long)]
        json: bool,
    },
    /// Entropy difference 4[S(1) - S(0)] along a grid, as CSV.
    Curve {
        #[arg(long, value_enum)]
        family: Family,
        /// Branch selector: `u`, `u:v` with u, v in {mu, -mu, 2mu-1}, or an
        /// alias such as `uv=-mu2` or `uv=(2mu-1)2`.
        #[arg(long)]
        case: String,
        #[arg(long)]
        mu_min: Option<f64>,
        #[arg(long)]
        mu_max: Option<f64>,
        #[arg(long)]
        nu_min: Option<f64>,
        #[arg(long)]
        nu_max: Option<f64>,
        /// Points per axis.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized search for additivity or norm-multiplicativity violations.
    Scan {
        #[arg(value_enum)]
        kind: Kind,
        spec_a: String,
        spec_b: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Mix in samples from the diagonal family in normal-form frames.
        #[arg(long)]
        stratified: bool,
        /// Skip local refinement of the best sample.
        #[arg(long)]
        no_refine: bool,
        #[arg(long)]
        json: bool,
    },
    /// List built-in channels.
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    PhiEqOmega,
    PhiNeqOmega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Additivity,
    Norm,
}

pub fn run<I, T>(args: I) -> CmdOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { CmdOutput::fail(EXIT_INPUT, text) } else { CmdOutput::ok(text) };
        }
    };
    let allow = cli.allow_non_cp;
    match cli.command {
        Command::CpCheck { spec, json } => cmd_cp_check(&spec, json),
        Command::Analyze { spec, bits, json } => cmd_analyze(&spec, allow, bits, json),
        Command::Curve { family, case, mu_min, mu_max, nu_min, nu_max, steps, out } => {
            let grid = Grid { mu: (mu_min, mu_max), nu: (nu_min, nu_max), steps };
            cmd_curve(family, &case, &grid, out.as_deref())
        }
        Command::Scan { kind, spec_a, spec_b, samples, seed, workers, stratified, no_refine, json } => {
            let mut cfg = ScanConfig::new(samples, seed);
            cfg.workers = workers.max(1);
            cfg.stratified = stratified;
            cfg.refine = !no_refine;
            let kind = match kind {
                Kind::Additivity => ScanKind::Additivity,
                Kind::Norm => ScanKind::Norm,
            };
            cmd_scan(kind, &spec_a, &spec_b, allow, cfg, json)
        }
        Command::Catalog { json } => cmd_catalog(json),
    }
}

fn load_channel(arg: &str, allow_non_cp: bool) -> std::result::Result<ChannelAffine, CmdOutput> {
    load_spec(arg)
        .and_then(|spec| spec.to_channel(allow_non_cp))
        .map_err(|e| CmdOutput::from_error(&e))
}

fn vec3(v: &Vector3<f64>) -> [f64; 3] {
    [v.x + 0.0, v.y + 0.0, v.z + 0.0]
}

fn rows(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)] + 0.0))
}

fn fmt3(v: &[f64; 3]) -> String {
    format!("({}, {}, {})", v[0] + 0.0, v[1] + 0.0, v[2] + 0.0)
}

pub fn cmd_cp_check(arg: &str, json: bool) -> CmdOutput {
    let phi = match load_channel(arg, true) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let (test, rep) = cp::check(&phi);
    let code = if rep.is_cp { EXIT_OK } else { EXIT_NOT_CP };
    let stdout = if json {
        let margins: Vec<Value> = rep.margins.iter().map(|m| json!({"id": m.id, "margin": m.margin})).collect();
        let violated: Vec<&str> = rep.violated.iter().map(|m| m.id).collect();
        let v = json!({
            "test": test,
            "cp": rep.is_cp,
            "boundary": rep.boundary,
            "margins": margins,
            "violated": violated,
            "choi_min_eigenvalue": rep.choi_min_eigenvalue,
        });
        format!("{v}\n")
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "test: {test}");
        let _ = writeln!(s, "cp: {}", rep.is_cp);
        let _ = writeln!(s, "boundary: {}", rep.boundary);
        for m in &rep.margins {
            let _ = writeln!(s, "margin {}: {:.12e}", m.id, m.margin);
        }
        for m in &rep.violated {
            let _ = writeln!(s, "violated: {}", m.id);
        }
        let _ = writeln!(s, "choi_min_eigenvalue: {:.12e}", rep.choi_min_eigenvalue);
        s
    };
    CmdOutput { stdout, stderr: String::new(), code }
}

pub fn cmd_analyze(arg: &str, allow_non_cp: bool, bits: bool, json: bool) -> CmdOutput {
    let phi = match load_channel(arg, allow_non_cp) {
        Ok(p) => p,
        Err(o) => return o,
    };
    match analyze(&phi, bits, json) {
        Ok(s) => CmdOutput::ok(s),
        Err(e) => CmdOutput::from_error(&e),
    }
}

fn analyze(phi: &ChannelAffine, bits: bool, json: bool) -> Result<String> {
    let unit = if bits { std::f64::consts::LN_2 } else { 1.0 };
    let nf = polar_factor(phi);
    let m_phi = max_norm(phi)?;
    let (s_min, w_min) = min_output_entropy(phi)?;
    let fp = fixed_point(phi);
    let hol = holevo_capacity(phi)?;
    let sha = shannon_capacity(phi)?;
    let set = minimal_entropy_set(phi).ok();

    if json {
        let fixed = match &fp {
            Ok(f) => json!({"point": vec3(&f.point.vector()), "kernel": f.kernel.iter().map(vec3).collect::<Vec<_>>()}),
            Err(e) => json!({"error": e.to_string()}),
        };
        let set_v = match &set {
            Some(s) => json!({"kind": s.kind.as_str(), "mu": s.mu, "basis": s.basis.iter().map(vec3).collect::<Vec<_>>()}),
            None => Value::Null,
        };
        let v = json!({
            "unit": if bits { "bits" } else { "nats" },
            "lambda": nf.diag.lambda,
            "t_diagonal": nf.diag.t,
            "post_rotation": rows(&nf.post_rotation),
            "pre_rotation": rows(&nf.pre_rotation),
            "max_norm": m_phi,
            "min_output_entropy": s_min / unit,
            "min_entropy_input": vec3(&w_min.vector()),
            "fixed_point": fixed,
            "holevo_capacity": hol.value / unit,
            "shannon_capacity": sha.value / unit,
            "min_entropy_set": set_v,
        });
        return Ok(format!("{v}\n"));
    }
    let mut s = String::new();
    let u = if bits { "bits" } else { "nats" };
    let _ = writeln!(s, "lambda: {}", fmt3(&nf.diag.lambda));
    let _ = writeln!(s, "t (diagonal frame): {}", fmt3(&nf.diag.t));
    let _ = writeln!(s, "post rotation R1: {:?}", rows(&nf.post_rotation));
    let _ = writeln!(s, "pre rotation R2: {:?}", rows(&nf.pre_rotation));
    let _ = writeln!(s, "max output norm: {m_phi}");
    let _ = writeln!(s, "min output entropy: {} {u}", s_min / unit);
    let _ = writeln!(s, "min entropy input: {}", fmt3(&vec3(&w_min.vector())));
    match &fp {
        Ok(f) => {
            let _ = writeln!(s, "fixed point: {}", fmt3(&vec3(&f.point.vector())));
            if !f.kernel.is_empty() {
                let _ = writeln!(s, "fixed set directions: {}", f.kernel.len());
            }
        }
        Err(e) => {
            let _ = writeln!(s, "fixed point: {e}");
        }
    }
    let _ = writeln!(s, "holevo capacity: {} {u}", hol.value / unit);
    let _ = writeln!(s, "shannon capacity: {} {u}", sha.value / unit);
    match &set {
        Some(set) => {
            let _ = writeln!(s, "min entropy set: {} (dimension {})", set.kind.as_str(), set.dimension());
        }
        None => {
            let _ = writeln!(s, "min entropy set: n/a (non-unital)");
        }
    }
    Ok(s)
}

/// One of the three admissible `u(mu)` branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Mu,
    MinusMu,
    TwoMuMinusOne,
}

impl Branch {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "mu" | "+mu" => Some(Self::Mu),
            "-mu" => Some(Self::MinusMu),
            "2mu-1" => Some(Self::TwoMuMinusOne),
            _ => None,
        }
    }

    pub fn eval(self, mu: f64) -> f64 {
        match self {
            Self::Mu => mu,
            Self::MinusMu => -mu,
            Self::TwoMuMinusOne => 2.0 * mu - 1.0,
        }
    }

    /// Range of `mu` on which the branch is an extreme point.
    pub fn range(self) -> (f64, f64) {
        match self {
            Self::Mu => (0.0, 1.0),
            Self::MinusMu => (0.0, 1.0 / 3.0),
            Self::TwoMuMinusOne => (1.0 / 3.0, 1.0),
        }
    }
}

fn normalize_case(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace('\u{3bc}', "mu")
        .replace('\u{b2}', "2")
        .replace('\u{2212}', "-")
}

/// Parses a `--case` selector into `(u, v)` branches.
pub fn parse_case(case: &str) -> std::result::Result<(Branch, Branch), String> {
    let s = normalize_case(case);
    let alias = match s.as_str() {
        "uv=+mu2" | "uv=mu2" => Some((Branch::Mu, Branch::Mu)),
        "uv=-mu2" => Some((Branch::Mu, Branch::MinusMu)),
        "uv=mu(2mu-1)" => Some((Branch::Mu, Branch::TwoMuMinusOne)),
        "uv=(2mu-1)2" => Some((Branch::TwoMuMinusOne, Branch::TwoMuMinusOne)),
        _ => None,
    };
    if let Some(a) = alias {
        return Ok(a);
    }
    let (a, b) = s.split_once(':').unwrap_or((&s, &s));
    match (Branch::parse(a), Branch::parse(b)) {
        (Some(u), Some(v)) => Ok((u, v)),
        _ => Err(format!("unrecognized case `{case}`; use u[:v] with u, v in {{mu, -mu, 2mu-1}} or an alias like uv=-mu2")),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub mu: (Option<f64>, Option<f64>),
    pub nu: (Option<f64>, Option<f64>),
    pub steps: usize,
}

fn axis(name: &str, req: (Option<f64>, Option<f64>), allowed: (f64, f64), steps: usize) -> std::result::Result<Vec<f64>, String> {
    let lo = req.0.unwrap_or(allowed.0);
    let hi = req.1.unwrap_or(allowed.1);
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(format!("{name} range [{lo}, {hi}] is empty"));
    }
    if lo < allowed.0 - 1e-12 || hi > allowed.1 + 1e-12 {
        return Err(format!(
            "{name} range [{lo}, {hi}] leaves the branch domain [{}, {}]",
            allowed.0, allowed.1
        ));
    }
    if steps == 0 {
        return Err("steps must be positive".into());
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect())
}

fn intersect(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0.max(b.0), a.1.min(b.1))
}

/// CSV rows of the entropy difference; header `mu,delta` on the diagonal
/// `nu = mu` and `mu,nu,delta` on a full grid.
pub fn curve_csv(family: Family, case: &str, grid: &Grid) -> std::result::Result<String, String> {
    let (bu, bv) = parse_case(case)?;
    let two_d = family == Family::PhiNeqOmega && (grid.nu.0.is_some() || grid.nu.1.is_some());
    let mut out = String::new();
    if two_d {
        let mus = axis("mu", grid.mu, bu.range(), grid.steps)?;
        let nus = axis("nu", grid.nu, bv.range(), grid.steps)?;
        out.push_str("mu,nu,delta\n");
        for &mu in &mus {
            for &nu in &nus {
                let d = entropy_difference_params(mu, bu.eval(mu), nu, bv.eval(nu)).map_err(|e| e.to_string())?;
                let _ = writeln!(out, "{mu:.16e},{nu:.16e},{d:.16e}");
            }
        }
    } else {
        let mus = axis("mu", grid.mu, intersect(bu.range(), bv.range()), grid.steps)?;
        out.push_str("mu,delta\n");
        for &mu in &mus {
            let d = entropy_difference_params(mu, bu.eval(mu), mu, bv.eval(mu)).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{mu:.16e},{d:.16e}");
        }
    }
    Ok(out)
}

pub fn cmd_curve(family: Family, case: &str, grid: &Grid, out: Option<&std::path::Path>) -> CmdOutput {
    let csv = match curve_csv(family, case, grid) {
        Ok(s) => s,
        Err(m) => return CmdOutput::fail(EXIT_INPUT, format!("error: {m}")),
    };
    let negative = csv
        .lines()
        .skip(1)
        .filter_map(|l| l.rsplit(',').next()?.parse::<f64>().ok())
        .filter(|&d| d < -1e-9)
        .count();
    let stderr = if negative > 0 { format!("warning: {negative} values below -1e-9\n") } else { String::new() };
    match out {
        Some(p) => match std::fs::write(p, &csv) {
            Ok(()) => CmdOutput { stdout: String::new(), stderr, code: EXIT_OK },
            Err(e) => CmdOutput::fail(EXIT_INPUT, format!("error: {}: {e}", p.display())),
        },
        None => CmdOutput { stdout: csv, stderr, code: EXIT_OK },
    }
}

fn scan_tolerance() -> std::result::Result<f64, String> {
    match std::env::var(TOL_ENV) {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(format!("{TOL_ENV}={s} is not a finite number")),
        },
        Err(_) => Ok(VIOLATION_TOL),
    }
}

pub fn cmd_scan(kind: ScanKind, a: &str, b: &str, allow_non_cp: bool, mut cfg: ScanConfig, json: bool) -> CmdOutput {
    cfg.tolerance = match scan_tolerance() {
        Ok(t) => t,
        Err(m) => return CmdOutput::fail(EXIT_INPUT, format!("error: {m}")),
    };
    let phi = match load_channel(a, allow_non_cp) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let omega = match load_channel(b, allow_non_cp) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let r = match run_scan(kind, &phi, &omega, &cfg) {
        Ok(r) => r,
        Err(e) => return CmdOutput::from_error(&e),
    };
    let amps: Vec<[f64; 2]> = r.best_state.vector().iter().map(|z| [z.re, z.im]).collect();
    let schmidt = schmidt_decompose(&r.best_state).coefficients;
    let stdout = if json {
        let v = json!({
            "kind": kind.as_str(),
            "samples": r.samples,
            "seed": r.seed,
            "workers": r.workers,
            "best_value": r.best_value,
            "product_baseline": r.product_baseline,
            "gap": r.gap,
            "tolerance": r.tolerance,
            "violation": r.violation,
            "best_state": amps,
            "schmidt_coefficients": schmidt,
        });
        format!("{v}\n")
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "kind: {}", kind.as_str());
        let _ = writeln!(s, "samples: {} (seed {}, workers {})", r.samples, r.seed, r.workers);
        let _ = writeln!(s, "best value: {:.15e}", r.best_value);
        let _ = writeln!(s, "product baseline: {:.15e}", r.product_baseline);
        let _ = writeln!(s, "gap: {:.6e} (tolerance {:.1e})", r.gap, r.tolerance);
        let _ = writeln!(s, "violation: {}", r.violation);
        let _ = writeln!(s, "schmidt coefficients: ({}, {})", schmidt[0], schmidt[1]);
        for (k, z) in amps.iter().enumerate() {
            let _ = writeln!(s, "amplitude |{}{}>: {:+.12} {:+.12}i", k / 2, k % 2, z[0], z[1]);
        }
        s
    };
    let code = if r.violation { EXIT_VIOLATION } else { EXIT_OK };
    CmdOutput { stdout, stderr: String::new(), code }
}

pub fn cmd_catalog(json: bool) -> CmdOutput {
    if json {
        let v: Vec<Value> = CATALOG
            .iter()
            .map(|e| json!({"name": e.name, "params": e.params, "form": e.form, "cp_condition": e.cp_condition}))
            .collect();
        return CmdOutput::ok(format!("{}\n", Value::Array(v)));
    }
    let mut s = String::new();
    for e in CATALOG {
        let _ = writeln!(s, "{}", e.name);
        let _ = writeln!(s, "  params: {}", e.params);
        let _ = writeln!(s, "  form: {}", e.form);
        let _ = writeln!(s, "  cp: {}", e.cp_condition);
    }
    CmdOutput::ok(s)
}
