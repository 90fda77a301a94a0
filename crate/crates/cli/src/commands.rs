use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_integer::Integer;
use serde_json::{json, Map, Value};
use weyl_lab::arith::{totient_ratio_envelope, totient_sieve, totient_sum_compare_with, TotientCase};
use weyl_lab::circle::{arc_center_sum_check, check_disjoint, enumerate_major_arcs, FareyFraction, MajorArc};
use weyl_lab::expsum::GridSpec;
use weyl_lab::gauss::{gauss_magnitude_closed_form, GaussSumParams, RootsOfUnity};
use weyl_lab::lpcordoba::{
    bernstein_battery, default_norm_grid, dyadic_split, lp_norm, random_family, square_function_norm, Support,
};
use weyl_lab::moments::{
    fit_power_law, level_set_fraction, marginal_sup_scan, moment_exact_even_capped, moment_quadrature,
    default_candidates, NormMode, NormSample, QuadratureOptions, DEFAULT_K3_CAP, DEFAULT_LEVELSET_POINTS,
};
use weyl_lab::lpcordoba::cordoba_ratio_with;
use weyl_lab::WorkBudget;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::report::{Cell, Report};

/// Tolerance for the Gauss sweep.
const GAUSS_TOLERANCE: f64 = 1e-9;

fn base_config(cfg: &RunConfig, args: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("args".into(), args);
    m.insert("seed".into(), json!(cfg.seed));
    m.insert("work_budget".into(), json!(cfg.work_budget.to_string()));
    m
}

fn budget(cfg: &RunConfig) -> WorkBudget {
    WorkBudget::new(cfg.work_budget)
}

#[derive(Debug, Args)]
pub struct GaussArgs {
    /// Largest modulus; rows cover 2 <= q <= qmax.
    #[arg(long)]
    pub qmax: u64,
}

/// Rows `(q, a, b, |direct|, closed_form, abs_err)` for `2 ≤ q ≤ qmax`,
/// `a` coprime to `q`, `0 ≤ b < q`.
pub fn gauss(args: &GaussArgs, cfg: &RunConfig) -> CliResult<Report> {
    let q = args.qmax as u128;
    budget(cfg).check(q * q * q)?;
    let mut report = Report::new(
        "gauss",
        base_config(cfg, json!({ "qmax": args.qmax })),
        &["q", "a", "b", "direct_abs", "closed_form", "abs_err"],
    );
    let mut worst = 0.0f64;
    for q in 2..=args.qmax {
        let roots = RootsOfUnity::new(q);
        for a in (1..q).filter(|a| a.gcd(&q) == 1) {
            for b in 0..q {
                let p = GaussSumParams::new(a as i64, b as i64, q)?;
                let direct = roots.sum_from(&p, 0).norm();
                let closed = gauss_magnitude_closed_form(&p);
                let err = (direct - closed).abs();
                worst = worst.max(err);
                report.push(vec![q.into(), a.into(), b.into(), direct.into(), closed.into(), err.into()]);
            }
        }
    }
    if worst > GAUSS_TOLERANCE {
        report.violations.push(format!("largest |direct - closed form| is {worst:e} > {GAUSS_TOLERANCE:e}"));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Double,
    Marginal,
    /// Largest marginal integral over rational x = b/q.
    MarginalSup,
    Arc,
}

#[derive(Debug, Clone, Args)]
pub struct ModeArgs {
    #[arg(long, value_enum, default_value = "double")]
    pub mode: ModeArg,
    /// x for marginal mode, as a decimal or a fraction b/q.
    #[arg(long, default_value = "0")]
    pub x: String,
    /// Largest denominator of the x candidates in marginal-sup mode.
    #[arg(long, default_value_t = 7)]
    pub qmax: u64,
    /// Arc t-center a/q and x-center b/q.
    #[arg(long, default_value_t = 3)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub a: u64,
    #[arg(long, default_value_t = 0)]
    pub b: u64,
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
    /// Accept grids coarser than the resolution rule; samples are marked.
    #[arg(long)]
    pub allow_unsafe: bool,
}

impl ModeArgs {
    fn to_json(&self) -> Value {
        match self.mode {
            ModeArg::Double => json!({ "mode": "double" }),
            ModeArg::Marginal => json!({ "mode": "marginal", "x": self.x }),
            ModeArg::MarginalSup => json!({ "mode": "marginal-sup", "qmax": self.qmax }),
            ModeArg::Arc => json!({ "mode": "arc", "q": self.q, "a": self.a, "b": self.b, "eps": self.eps }),
        }
    }
}

fn parse_x(s: &str) -> CliResult<f64> {
    let bad = || CliError::usage(format!("cannot parse x = '{s}'"));
    match s.split_once('/') {
        Some((b, q)) => {
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            Ok(b / q)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

/// Label for the `mode` column; contains no commas.
fn mode_label(sample: &NormSample, args: &ModeArgs, argmax: Option<(u64, u64)>) -> String {
    match (&sample.mode, argmax) {
        (_, Some((b, q))) => format!("marginal-sup:x={b}/{q}"),
        (NormMode::Double, _) => "double".into(),
        (NormMode::Marginal { .. }, _) => format!("marginal:x={}", args.x),
        (NormMode::Arc(arc), _) => format!("arc:a/q={}/{}:b={}:eps={}", arc.a(), arc.q(), arc.b(), arc.eps()),
    }
}

fn quadrature_options(args: &ModeArgs, cfg: &RunConfig) -> QuadratureOptions {
    QuadratureOptions { allow_unsafe: args.allow_unsafe, budget: budget(cfg), ..Default::default() }
}

/// One quadrature sample plus the attaining candidate in marginal-sup mode.
fn sample(n: u64, alpha: f64, args: &ModeArgs, cfg: &RunConfig) -> CliResult<(NormSample, Option<(u64, u64)>)> {
    let opts = quadrature_options(args, cfg);
    match args.mode {
        ModeArg::Double => Ok((moment_quadrature(n, alpha, &NormMode::Double, &opts)?, None)),
        ModeArg::Marginal => {
            let x = parse_x(&args.x)?;
            Ok((moment_quadrature(n, alpha, &NormMode::Marginal { x }, &opts)?, None))
        }
        ModeArg::MarginalSup => {
            let scan = marginal_sup_scan(n, alpha, &default_candidates(n, args.qmax), &opts)?;
            Ok((scan.best, Some((scan.argmax.b, scan.argmax.q))))
        }
        ModeArg::Arc => {
            let arc = MajorArc::new(FareyFraction::new(args.a, args.q)?, args.b, n, args.eps)?;
            Ok((moment_quadrature(n, alpha, &NormMode::Arc(arc), &opts)?, None))
        }
    }
}

const NORM_COLUMNS: [&str; 6] = ["N", "alpha", "mode", "value", "t_step", "x_step"];

fn push_sample(report: &mut Report, s: &NormSample, args: &ModeArgs, argmax: Option<(u64, u64)>) {
    report.push(vec![
        s.n.into(),
        s.alpha.into(),
        mode_label(s, args, argmax).into(),
        s.value.into(),
        s.t_step.into(),
        s.x_step.into(),
    ]);
    if s.unsafe_grid {
        report.notes.push(format!("N = {} used an under-resolved grid ({})", s.n, s.resolution));
    }
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Count solutions exactly instead of integrating (double mode,
    /// alpha = 4 or 6).
    #[arg(long)]
    pub exact: bool,
    /// Largest N for the exact sixth moment.
    #[arg(long, default_value_t = DEFAULT_K3_CAP)]
    pub k3_cap: u64,
}

pub fn moment(args: &MomentArgs, cfg: &RunConfig) -> CliResult<Report> {
    let mut conf = json!({ "alpha": args.alpha, "n": args.n, "exact": args.exact });
    conf.as_object_mut().unwrap().extend(args.mode.to_json().as_object().unwrap().clone());
    let mut report = Report::new("moment", base_config(cfg, conf), &NORM_COLUMNS);
    if args.exact {
        if args.mode.mode != ModeArg::Double {
            return Err(CliError::usage("--exact needs double mode"));
        }
        let k = match args.alpha {
            a if a == 4.0 => 2,
            a if a == 6.0 => 3,
            a => return Err(CliError::usage(format!("--exact needs alpha 4 or 6, got {a}"))),
        };
        let v = moment_exact_even_capped(args.n, k, args.k3_cap)?;
        report.push(vec![args.n.into(), args.alpha.into(), "double".into(), v.into(), Cell::Empty, Cell::Empty]);
        return Ok(report);
    }
    let (s, argmax) = sample(args.n, args.alpha, &args.mode, cfg)?;
    push_sample(&mut report, &s, &args.mode, argmax);
    Ok(report)
}

fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| CliError::usage(format!("bad {what} '{p}'"))))
        .collect()
}

#[derive(Debug, Args)]
pub struct NormScanArgs {
    #[arg(long)]
    pub alpha: f64,
    /// Comma-separated list of N.
    #[arg(long)]
    pub n: String,
    #[command(flatten)]
    pub mode: ModeArgs,
}

pub fn norm_scan(args: &NormScanArgs, cfg: &RunConfig) -> CliResult<Report> {
    let ns: Vec<u64> = parse_list("N", &args.n)?;
    let mut conf = json!({ "alpha": args.alpha, "n": ns });
    conf.as_object_mut().unwrap().extend(args.mode.to_json().as_object().unwrap().clone());
    let mut report = Report::new("norm-scan", base_config(cfg, conf), &NORM_COLUMNS);
    for n in ns {
        let (s, argmax) = sample(n, args.alpha, &args.mode, cfg)?;
        push_sample(&mut report, &s, &args.mode, argmax);
    }
    Ok(report)
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV written by norm-scan or moment.
    #[arg(long)]
    pub input: PathBuf,
    /// Divide each value by ln N before fitting.
    #[arg(long)]
    pub divide_log: bool,
}

pub fn fit(args: &FitArgs, cfg: &RunConfig) -> CliResult<Report> {
    let path = args.input.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(&args.input)
        .map_err(|e| CliError::io(&path, e))?;
    let headers = reader.headers().map_err(|e| CliError::io(&path, e))?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| CliError::usage(format!("{path}: no '{name}' column")))
    };
    let (n_col, v_col) = (col("N")?, col("value")?);
    let key_cols: Vec<usize> = ["alpha", "mode"].iter().filter_map(|c| headers.iter().position(|h| h == *c)).collect();
    let mut points = Vec::new();
    let mut key: Option<Vec<String>> = None;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::io(&path, e))?;
        let this: Vec<String> = key_cols.iter().map(|&i| record[i].to_string()).collect();
        // Marginal-sup rows carry the attaining x in the mode label.
        let this: Vec<String> = this.into_iter().map(|s| s.split(":x=").next().unwrap_or("").to_string()).collect();
        match &key {
            None => key = Some(this),
            Some(k) if *k != this => return Err(CliError::usage(format!("{path}: rows mix alpha or mode"))),
            _ => {}
        }
        let n: u64 = record[n_col].parse().map_err(|_| CliError::usage(format!("{path}: bad N '{}'", &record[n_col])))?;
        let v: f64 =
            record[v_col].parse().map_err(|_| CliError::usage(format!("{path}: bad value '{}'", &record[v_col])))?;
        points.push((n, v));
    }
    let result = fit_power_law(&points, args.divide_log)?;
    let mut report = Report::new(
        "fit",
        base_config(cfg, json!({ "input": path, "divide_log": args.divide_log })),
        &["N", "value", "residual"],
    );
    for &(n, v) in &points {
        let ln_n = (n as f64).ln();
        let y = if args.divide_log { v.ln() - ln_n.ln() } else { v.ln() };
        report.push(vec![n.into(), v.into(), (y - result.intercept - result.exponent * ln_n).into()]);
    }
    report.fit = Some(result);
    Ok(report)
}

#[derive(Debug, Args)]
pub struct ArcCheckArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub qmax: u64,
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
    /// Constant c in the allowed error c*q.
    #[arg(long, default_value_t = weyl_lab::circle::DEFAULT_CENTER_CONSTANT)]
    pub constant: f64,
}

pub fn arc_check(args: &ArcCheckArgs, cfg: &RunConfig) -> CliResult<Report> {
    let arcs = enumerate_major_arcs(args.n, args.eps, args.qmax, true)?;
    budget(cfg).check(arcs.len() as u128 * args.n as u128)?;
    let mut report = Report::new(
        "arc-check",
        base_config(cfg, json!({ "n": args.n, "qmax": args.qmax, "eps": args.eps, "constant": args.constant })),
        &["q", "a", "b", "measured", "predicted", "error", "bound", "within_bound"],
    );
    for arc in &arcs {
        let c = arc_center_sum_check(arc, args.constant)?;
        if !c.within_bound {
            report.violations.push(format!("arc ({}, {}, {}): error {:e} > {}", arc.q(), arc.a(), arc.b(), c.error, c.bound));
        }
        report.push(vec![
            arc.q().into(),
            arc.a().into(),
            arc.b().into(),
            c.measured.into(),
            c.predicted.into(),
            c.error.into(),
            c.bound.into(),
            c.within_bound.into(),
        ]);
    }
    let d = check_disjoint(&arcs)?;
    if let Some((i, j)) = d.overlap {
        let (x, y) = (&arcs[i], &arcs[j]);
        report.violations.push(format!(
            "arcs ({}, {}, {}) and ({}, {}, {}) overlap",
            x.q(),
            x.a(),
            x.b(),
            y.q(),
            y.a(),
            y.b()
        ));
    }
    Ok(report)
}

#[derive(Debug, Args)]
pub struct TotientArgs {
    /// Comma-separated list of beta.
    #[arg(long)]
    pub beta: String,
    /// Comma-separated list of N.
    #[arg(long)]
    pub n: String,
}

fn case_name(c: TotientCase) -> &'static str {
    match c {
        TotientCase::TwoTerm => "two-term",
        TotientCase::OneTerm => "one-term",
        TotientCase::Logarithmic => "logarithmic",
    }
}

pub fn totient(args: &TotientArgs, cfg: &RunConfig) -> CliResult<Report> {
    let betas: Vec<f64> = parse_list("beta", &args.beta)?;
    let ns: Vec<u64> = parse_list("N", &args.n)?;
    let max_n = ns.iter().copied().max().unwrap_or(0);
    budget(cfg).check(max_n as u128 * (betas.len() as u128 + 1))?;
    let phi = totient_sieve(max_n.max(2) as usize)?;
    let mut report = Report::new(
        "totient",
        base_config(cfg, json!({ "beta": betas, "n": ns })),
        &["N", "beta", "case", "exact", "main_terms", "error_bound_scale", "ratio", "decade_max_ratio", "decade_argmax"],
    );
    for &beta in &betas {
        for &n in &ns {
            let r = totient_sum_compare_with(&phi, n, beta)?;
            let env = totient_ratio_envelope(&phi, n, beta)?;
            report.push(vec![
                n.into(),
                beta.into(),
                case_name(r.case).into(),
                r.exact.into(),
                r.main_terms.into(),
                r.error_bound_scale.into(),
                r.ratio.into(),
                env.max_ratio.into(),
                env.argmax.into(),
            ]);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LpCheckKind {
    /// Square function against the L^alpha norm.
    Square,
    /// Bernstein inequality for k = 1 (trig) and k = 2 (analytic).
    Bernstein,
}

#[derive(Debug, Args)]
pub struct LpCheckArgs {
    /// Largest degree in the family.
    #[arg(long, default_value_t = 256)]
    pub degree: u64,
    /// Exponent(s), comma-separated: alpha for the square function, p for
    /// Bernstein.
    #[arg(long, default_value = "3")]
    pub alpha: String,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, value_enum, default_value = "square")]
    pub check: LpCheckKind,
}

pub fn lp_check(args: &LpCheckArgs, cfg: &RunConfig) -> CliResult<Report> {
    let alphas: Vec<f64> = parse_list("alpha", &args.alpha)?;
    let conf = json!({ "degree": args.degree, "alpha": alphas, "count": args.count, "check": format!("{:?}", args.check).to_lowercase() });
    budget(cfg).check(args.count as u128 * 64 * args.degree.max(1) as u128 * alphas.len() as u128)?;
    match args.check {
        LpCheckKind::Square => {
            let mut report = Report::new(
                "lp-check",
                base_config(cfg, conf),
                &["index", "degree", "alpha", "square_function", "lp_norm", "ratio", "reassembly_exact"],
            );
            let family = random_family(cfg.seed, args.count, 1, args.degree.max(1), Support::Trig);
            for (i, p) in family.iter().enumerate() {
                let exact = dyadic_split(p).reassemble() == *p;
                if !exact {
                    report.violations.push(format!("member {i}: dyadic blocks do not reassemble"));
                }
                let grid = default_norm_grid(p.degree());
                for &alpha in &alphas {
                    let sf = square_function_norm(p, alpha, &grid)?;
                    let lp = lp_norm(p, alpha, &grid)?;
                    report.push(vec![
                        i.into(),
                        p.degree().into(),
                        alpha.into(),
                        sf.into(),
                        lp.into(),
                        (sf / lp).into(),
                        exact.into(),
                    ]);
                }
            }
            Ok(report)
        }
        LpCheckKind::Bernstein => {
            let mut report = Report::new(
                "lp-check",
                base_config(cfg, conf),
                &["index", "degree", "p", "k", "derivative", "lhs", "rhs", "ratio", "holds"],
            );
            let rows = bernstein_battery(cfg.seed, args.count, args.degree, &alphas, 2)?;
            for r in rows {
                if !r.record.holds {
                    report.violations.push(format!("member {} (p = {}, k = {}): lhs > rhs", r.index, r.exponent, r.k));
                }
                report.push(vec![
                    r.index.into(),
                    r.degree.into(),
                    r.exponent.into(),
                    (r.k as u64).into(),
                    format!("{:?}", r.mode).to_lowercase().into(),
                    r.record.lhs.into(),
                    r.record.rhs.into(),
                    r.record.ratio.into(),
                    r.record.holds.into(),
                ]);
            }
            Ok(report)
        }
    }
}

#[derive(Debug, Args)]
pub struct CordobaArgs {
    #[arg(long)]
    pub alpha: f64,
    /// Comma-separated list of N.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
    /// Coefficients a_k: `ones`, `harmonic` (1/k) or `power:s` (k^-s).
    #[arg(long, default_value = "ones")]
    pub coeff: String,
}

fn coefficients(spec: &str, n: u64) -> CliResult<Vec<f64>> {
    let ks = 1..=n;
    match spec {
        "ones" => Ok(vec![1.0; n as usize]),
        "harmonic" => Ok(ks.map(|k| 1.0 / k as f64).collect()),
        _ => match spec.strip_prefix("power:").map(str::parse::<f64>) {
            Some(Ok(s)) if s >= 0.0 && s.is_finite() => Ok(ks.map(|k| (k as f64).powf(-s)).collect()),
            _ => Err(CliError::usage(format!("unknown coefficient spec '{spec}'"))),
        },
    }
}

pub fn cordoba(args: &CordobaArgs, cfg: &RunConfig) -> CliResult<Report> {
    let ns: Vec<u64> = parse_list("N", &args.n)?;
    let mut report = Report::new(
        "cordoba",
        base_config(cfg, json!({ "alpha": args.alpha, "n": ns, "ell": args.ell, "coeff": args.coeff })),
        &["N", "alpha", "ell", "coeff", "ratio"],
    );
    let opts = QuadratureOptions { budget: budget(cfg), ..Default::default() };
    for n in ns {
        let a = coefficients(&args.coeff, n)?;
        let r = cordoba_ratio_with(&a, args.ell, args.alpha, &opts)?;
        report.push(vec![n.into(), args.alpha.into(), (args.ell as u64).into(), args.coeff.as_str().into(), r.into()]);
    }
    Ok(report)
}

#[derive(Debug, Args)]
pub struct LevelsetArgs {
    /// Comma-separated list of N.
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// Points per side of the midpoint grid.
    #[arg(long, default_value_t = DEFAULT_LEVELSET_POINTS)]
    pub grid: usize,
}

pub fn levelset(args: &LevelsetArgs, cfg: &RunConfig) -> CliResult<Report> {
    let ns: Vec<u64> = parse_list("N", &args.n)?;
    if args.grid == 0 {
        return Err(CliError::usage("grid needs at least one point"));
    }
    let mut report = Report::new(
        "levelset",
        base_config(cfg, json!({ "n": ns, "a": args.a, "b": args.b, "grid": args.grid })),
        &["N", "a", "b", "fraction", "grid"],
    );
    let g = GridSpec::midpoint(args.grid);
    for n in ns {
        let f = level_set_fraction(n, args.a, args.b, &g, &g, &budget(cfg))?;
        report.push(vec![n.into(), args.a.into(), args.b.into(), f.into(), g.describe().into()]);
    }
    Ok(report)
}
