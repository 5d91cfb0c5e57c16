use std::path::{Path, PathBuf};

use hardy_spectra::csv::{fmt_f64, header_comment};
use hardy_spectra::gelfand::{
    gelfand_evaluate, log_t_values, spectrum_general, spectrum_product, spectrum_sum, Extended, IdealPoint,
    QcSurrogate, SpectrumGrids, SpectrumSet,
};
use hardy_spectra::symbols::literal::{format_complex, parse_complex, parse_eta, parse_parabolic, parse_piecewise};
use hardy_spectra::symbols::{sample_paths, ClusterSampling};
use hardy_spectra::verify::{
    choose_alpha, compactness_profile_with, eigenvalues_csv, finite_section_eigenvalues, identity_residual, log_slope,
    series_approximation, IdentityForm, SeriesConfig, ThresholdPolicy, Verdict,
};
use hardy_spectra::{evaluate_expression_with, EvalOptions, Expr, C64};

use crate::args::{self, Command, FormArg, SpectrumKind};
use crate::expr::parse_expression;
use crate::svg::{svg_document, SvgStyle};
use crate::CliError;

/// Files produced by a command; written only after every computation
/// succeeded.
#[derive(Default)]
struct Artifacts(Vec<(PathBuf, String)>);

impl Artifacts {
    fn add(&mut self, path: &Path, content: String) {
        self.0.push((path.to_path_buf(), content));
    }

    fn write(self) -> Result<(), CliError> {
        for (path, content) in self.0 {
            std::fs::write(&path, content).map_err(|source| CliError::Io { path, source })?;
        }
        Ok(())
    }
}

/// Runs a command and returns its one-line summary.
pub fn dispatch(cmd: Command) -> Result<String, CliError> {
    let mut files = Artifacts::default();
    let outcome = match cmd {
        Command::BuildOp(a) => build_op(a, &mut files),
        Command::EssSpectrum(a) => ess_spectrum(a, &mut files),
        Command::GelfandEval(a) => gelfand_eval(a, &mut files),
        Command::CheckIdentity(a) => check_identity(a, &mut files),
        Command::CheckCommutator(a) => check_commutator(a, &mut files),
        Command::Series(a) => series(a, &mut files),
        Command::Eigs(a) => eigs(a, &mut files),
    }?;
    files.write()?;
    match outcome {
        Outcome::Pass(s) => Ok(s),
        Outcome::Fail(s) => Err(CliError::Failed(s)),
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("--{name} must be a positive number, got {v}")))
    }
}

fn build_op(a: args::BuildOp, files: &mut Artifacts) -> Result<Outcome, CliError> {
    let e = parse_expression(&a.expr)?;
    let n = a.dim as usize;
    let opts = EvalOptions { padding: a.padding as usize, ..EvalOptions::default() };
    let m = evaluate_expression_with(&e, n, &opts)?;
    let csv = m.to_csv(&[("expr", a.expr.clone()), ("padding", a.padding.to_string())]);
    files.add(&a.out, csv);
    Ok(Outcome::Pass(format!(
        "build-op: {n}x{n} section, max |entry| {} -> {}",
        fmt_f64(m.max_modulus()),
        a.out.display()
    )))
}

fn grids(g: &args::GridArgs) -> Result<SpectrumGrids, CliError> {
    let resolution = match g.resolution.trim() {
        "none" => None,
        r => Some(positive("resolution", r.parse().map_err(|_| CliError::Usage(format!("bad --resolution `{r}`")))?)?),
    };
    let grids = SpectrumGrids {
        t_values: log_t_values(g.t_points, g.t_min, g.t_max)?,
        s_points: g.s_points,
        lambda_points: g.lambda_points,
        cluster: ClusterSampling::default(),
        max_cluster_points: g.cluster_points,
        resolution,
    };
    if g.s_points == 0 || g.lambda_points == 0 || g.cluster_points == 0 {
        return Err(CliError::Usage("grid sizes must be positive".into()));
    }
    Ok(grids)
}

fn ess_spectrum(a: args::EssSpectrum, files: &mut Artifacts) -> Result<Outcome, CliError> {
    let g = grids(&a.grids)?;
    let set: SpectrumSet = match (&a.expr, &a.a, &a.eta) {
        (Some(e), _, _) => spectrum_general(&parse_expression(e)?, &g)?,
        (None, Some(sym), Some(eta)) => {
            let sym = parse_piecewise(sym)?;
            let eta = parse_eta(eta)?;
            match a.kind {
                SpectrumKind::Product => spectrum_product(&sym, &eta, &g)?,
                SpectrumKind::Sum => spectrum_sum(&sym, &eta, &g)?,
            }
        }
        _ => return Err(CliError::Usage("ess-spectrum needs --expr or both --a and --eta".into())),
    };
    files.add(&a.out, set.to_csv());
    if let Some(svg) = &a.svg {
        files.add(svg, svg_document(&set.points, &SvgStyle::default())?);
    }
    Ok(Outcome::Pass(format!("ess-spectrum: {} points -> {}", set.len(), a.out.display())))
}

fn gelfand_eval(a: args::GelfandEval, files: &mut Artifacts) -> Result<Outcome, CliError> {
    let e = parse_expression(&a.expr)?;
    let z = match a.z.trim() {
        "inf" | "infinity" => Extended::Infinity,
        t => Extended::Finite(t.parse().map_err(|_| CliError::Usage(format!("bad --z `{t}`")))?),
    };
    let etas = e.etas();
    let surrogate = match &a.w {
        Some(w) => {
            let w = parse_complex(w)?;
            QcSurrogate::new("given", etas.iter().map(|eta| (eta.label().to_string(), w)).collect())
        }
        None if etas.is_empty() => QcSurrogate::default(),
        None => {
            let (samples, _) = sample_paths(&etas, a.lambda, &ClusterSampling::default())?;
            let radial = format!("stolz:{:.6}", std::f64::consts::FRAC_PI_2);
            let pick = samples
                .iter()
                .find(|s| s.path == radial)
                .or_else(|| samples.first())
                .ok_or_else(|| CliError::Failed("no cluster sample converged at this base point".into()))?;
            QcSurrogate::new(
                pick.path.clone(),
                etas.iter().map(|eta| eta.label().to_string()).zip(pick.values.iter().copied()).collect(),
            )
        }
    };
    let path = surrogate.path.clone();
    let p = IdealPoint::new(a.lambda, a.s, z, surrogate)?;
    let v = gelfand_evaluate(&e, &p)?;
    if let Some(out) = &a.out {
        let z_text = match z {
            Extended::Finite(t) => fmt_f64(t),
            Extended::Infinity => "inf".into(),
        };
        let mut csv = header_comment(&[
            ("expr", a.expr.clone()),
            ("lambda", fmt_f64(a.lambda)),
            ("s", fmt_f64(a.s)),
            ("z", z_text),
            ("path", path),
        ]);
        csv.push_str("re,im\n");
        csv.push_str(&format!("{},{}\n", fmt_f64(v.re), fmt_f64(v.im)));
        files.add(out, csv);
    }
    Ok(Outcome::Pass(format!("gelfand-eval: {}", format_complex(v))))
}

fn check_identity(a: args::CheckIdentity, files: &mut Artifacts) -> Result<Outcome, CliError> {
    let param = parse_parabolic(&a.a)?;
    let tol = positive("tol", a.tol)?;
    let form = match a.form {
        FormArg::Corrected => IdentityForm::Corrected,
        FormArg::Printed => IdentityForm::Printed,
    };
    let r = identity_residual(&param, a.dim, a.block, form)?;
    let form_name = if form == IdentityForm::Corrected { "corrected" } else { "printed" };
    if let Some(out) = &a.out {
        let mut csv = header_comment(&[
            ("a", format_complex(param.a())),
            ("dim", a.dim.to_string()),
            ("block", a.block.to_string()),
            ("form", form_name.into()),
            ("tol", fmt_f64(tol)),
        ]);
        csv.push_str("residual\n");
        csv.push_str(&fmt_f64(r));
        csv.push('\n');
        files.add(out, csv);
    }
    let line = format!("check-identity: form={form_name} residual={} tol={}", fmt_f64(r), fmt_f64(tol));
    Ok(if r < tol { Outcome::Pass(line) } else { Outcome::Fail(format!("{line}: residual not below tolerance")) })
}

fn check_commutator(a: args::CheckCommutator, files: &mut Artifacts) -> Result<Outcome, CliError> {
    let e = match (&a.expr, &a.left, &a.right) {
        (Some(e), _, _) => parse_expression(e)?,
        (None, Some(l), Some(r)) => Expr::commutator(parse_expression(l)?, parse_expression(r)?),
        _ => return Err(CliError::Usage("check-commutator needs --expr or both --left and --right".into())),
    };
    let expect: Option<Verdict> = a.expect.as_deref().map(str::parse).transpose()?;
    let policy = ThresholdPolicy {
        compact_index: a.k_star,
        compact_ratio: positive("compact-ratio", a.compact_ratio)?,
        stability: a.stability,
        noncompact_index: a.k_dagger,
        plateau_ratio: positive("plateau-ratio", a.plateau_ratio)?,
        plateau_fraction: positive("plateau-fraction", a.plateau_fraction)?,
        growth: positive("growth", a.growth)?,
        noise_floor: a.noise_floor,
    };
    if !(policy.stability >= 0.0 && policy.noise_floor >= 0.0) {
        return Err(CliError::Usage("--stability and --noise-floor must be nonnegative".into()));
    }
    let report = compactness_profile_with(&e, &a.dims, &a.ks, &policy, &EvalOptions::default())?;
    if let Some(out) = &a.out {
        files.add(out, report.to_csv());
    }
    let last = report.spectra.last().expect("at least one dimension");
    let line = format!(
        "check-commutator: verdict={} sigma_1={} sigma_{}={} at N={}",
        report.verdict,
        fmt_f64(last[0]),
        policy.compact_index,
        fmt_f64(last[policy.compact_index - 1]),
        report.dims.last().expect("nonempty")
    );
    let ok = match expect {
        Some(v) => report.verdict == v,
        None => report.verdict != Verdict::Inconclusive,
    };
    Ok(if ok { Outcome::Pass(line) } else { Outcome::Fail(format!("{line}: verdict not as required")) })
}

fn series(a: args::Series, files: &mut Artifacts) -> Result<Outcome, CliError> {
    let eta = parse_eta(&a.eta)?;
    let alpha = match a.alpha {
        Some(al) => positive("alpha", al)?,
        None => choose_alpha(&eta)?,
    };
    let cfg = SeriesConfig::new(&eta, alpha, a.terms, a.dim, a.block)?;
    let res = series_approximation(&eta, &cfg)?;
    let csv = res.to_csv(&[
        ("eta", eta.label().to_string()),
        ("alpha", fmt_f64(alpha)),
        ("ratio", fmt_f64(cfg.ratio)),
        ("dim", a.dim.to_string()),
        ("block", a.block.to_string()),
    ]);
    files.add(&a.out, csv);
    let last = res.residuals.last().map_or(0.0, |&(_, r)| r);
    let line = format!(
        "series: alpha={} ratio={} residual(K={})={} log-slope={}",
        fmt_f64(alpha),
        fmt_f64(cfg.ratio),
        a.terms,
        fmt_f64(last),
        fmt_f64(log_slope(&res.residuals))
    );
    Ok(match a.tol {
        Some(t) if !(last <= t) => Outcome::Fail(format!("{line}: residual above {}", fmt_f64(t))),
        _ => Outcome::Pass(line),
    })
}

fn eigs(a: args::Eigs, files: &mut Artifacts) -> Result<Outcome, CliError> {
    let e = parse_expression(&a.expr)?;
    let vals: Vec<C64> = finite_section_eigenvalues(&e, a.dim as usize)?;
    files.add(&a.out, eigenvalues_csv(&vals, &[("expr", a.expr.clone()), ("dim", a.dim.to_string())]));
    if let Some(svg) = &a.svg {
        files.add(svg, svg_document(&vals, &SvgStyle::default())?);
    }
    let rho = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(Outcome::Pass(format!(
        "eigs: {} eigenvalues, spectral radius {} -> {}",
        vals.len(),
        fmt_f64(rho),
        a.out.display()
    )))
}
