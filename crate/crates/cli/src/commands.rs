use std::fs;
use std::io::Write;

use newton_holo::expr::{parse_complex, parse_complex_list};
use newton_holo::{
    builtin, convergence_report, eval_expansion, eval_fn, expand_annulus, expand_disc, expansion_from_json,
    expansion_to_json, parse_function, AnnulusSpec, ComplexValue, Contour, Expansion, HolomorphicFn, QuadConfig,
    TailStatus,
};

use crate::csv::{complex_fields, num, row};
use crate::error::CliError;
use crate::nodespec::NodeSpec;

pub const TOL_ENV: &str = "NEWTON_HOLO_QUAD_TOL";

pub struct FunctionArgs {
    pub text: Option<String>,
    pub builtin: Option<String>,
    pub sing: Option<String>,
}

impl FunctionArgs {
    pub fn resolve(&self) -> Result<Option<HolomorphicFn>, CliError> {
        let f = match (&self.text, &self.builtin) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give either --fn or --builtin, not both".into())),
            (Some(t), None) => parse_function(t)?,
            (None, Some(b)) => builtin(b)?,
            (None, None) => {
                if self.sing.is_some() {
                    return Err(CliError::Usage("--sing needs --fn or --builtin".into()));
                }
                return Ok(None);
            }
        };
        let extra = match &self.sing {
            Some(list) => parse_complex_list(list)?,
            None => Vec::new(),
        };
        Ok(Some(f.with_singularities(extra)))
    }
}

pub enum GeometryArg {
    Disc(Contour),
    Annulus(AnnulusSpec),
}

fn reals(text: &str, flag: &str) -> Result<Vec<String>, CliError> {
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Usage(format!("{flag} {text:?}: empty field")));
    }
    Ok(parts)
}

fn radius(text: &str, flag: &str) -> Result<f64, CliError> {
    text.parse::<f64>()
        .ok()
        .filter(|r| r.is_finite() && *r > 0.0)
        .ok_or_else(|| CliError::Usage(format!("{flag}: radius {text:?} must be a positive number")))
}

pub fn parse_geometry(disc: Option<&str>, annulus: Option<&str>) -> Result<GeometryArg, CliError> {
    match (disc, annulus) {
        (Some(d), None) => {
            let p = reals(d, "--disc")?;
            if p.len() != 2 {
                return Err(CliError::Usage(format!(
                    "--disc takes 2 values <center>,<radius>, got {}",
                    p.len()
                )));
            }
            Ok(GeometryArg::Disc(Contour::circle(
                parse_complex(&p[0])?,
                radius(&p[1], "--disc")?,
            )?))
        }
        (None, Some(a)) => {
            let p = reals(a, "--annulus")?;
            let spec = match p.len() {
                3 => AnnulusSpec::concentric(
                    parse_complex(&p[0])?,
                    radius(&p[1], "--annulus")?,
                    radius(&p[2], "--annulus")?,
                )?,
                4 => AnnulusSpec::new(
                    Contour::circle(parse_complex(&p[0])?, radius(&p[1], "--annulus")?)?,
                    Contour::circle(parse_complex(&p[2])?, radius(&p[3], "--annulus")?)?,
                )?,
                n => {
                    return Err(CliError::Usage(format!(
                        "--annulus takes 3 values <center>,<r1>,<r2> or 4 values <c1>,<r1>,<c2>,<r2>, got {n}"
                    )))
                }
            };
            Ok(GeometryArg::Annulus(spec))
        }
        (Some(_), Some(_)) => Err(CliError::Usage("give either --disc or --annulus, not both".into())),
        (None, None) => Err(CliError::Usage("a geometry is required: --disc or --annulus".into())),
    }
}

pub struct QuadArgs {
    pub n_start: Option<usize>,
    pub n_max: Option<usize>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
}

impl QuadArgs {
    /// Flags override the environment, which overrides the defaults.
    pub fn resolve(&self, env_tol: Option<&str>) -> Result<QuadConfig, CliError> {
        let mut cfg = QuadConfig::default();
        if let Some(text) = env_tol {
            cfg.rel_tol = text
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{TOL_ENV}={text:?} is not a decimal number")))?;
        }
        if let Some(v) = self.n_start {
            cfg.n_start = v;
        }
        if let Some(v) = self.n_max {
            cfg.n_max = v;
        }
        if let Some(v) = self.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            cfg.abs_tol = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

pub struct ExpandJob {
    pub function: FunctionArgs,
    pub geometry: GeometryArg,
    pub cnodes: Option<String>,
    pub dnodes: Option<String>,
    pub n: usize,
    pub m: Option<usize>,
    pub out: String,
    pub quad: QuadConfig,
}

pub fn cmd_expand(job: &ExpandJob, stdout: &mut impl Write, stderr: &mut impl Write) -> Result<(), CliError> {
    let f = job
        .function
        .resolve()?
        .ok_or_else(|| CliError::Usage("a function is required: --fn or --builtin".into()))?;
    let node_spec = |flag: &Option<String>| flag.as_deref().map(NodeSpec::parse).transpose();
    let cspec = node_spec(&job.cnodes)?;
    let dspec = node_spec(&job.dnodes)?;
    let expansion = match &job.geometry {
        GeometryArg::Disc(disc) => {
            if dspec.is_some() || job.m.is_some_and(|m| m > 0) {
                return Err(CliError::Usage(
                    "a disc expansion has no principal part (--dnodes/--M)".into(),
                ));
            }
            let nodes = cspec.unwrap_or(NodeSpec::Const(disc.center())).resolve(disc.center())?;
            expand_disc(&f, disc, &nodes, job.n, &job.quad)?
        }
        GeometryArg::Annulus(spec) => {
            let c = cspec
                .unwrap_or(NodeSpec::Const(spec.outer().center()))
                .resolve(spec.outer().center())?;
            let d = dspec
                .unwrap_or(NodeSpec::Const(spec.inner().center()))
                .resolve(spec.inner().center())?;
            expand_annulus(&f, spec, &c, &d, job.n, job.m.unwrap_or(job.n), &job.quad)?
        }
    };
    fs::write(&job.out, expansion_to_json(&expansion)).map_err(|source| CliError::Io {
        path: job.out.clone(),
        source,
    })?;
    write_coefficients(&expansion, stdout)?;
    write_diagnostics(&expansion, stderr)?;
    Ok(())
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn write_coefficients(e: &Expansion, out: &mut impl Write) -> Result<(), CliError> {
    writeln!(out, "index,re,im,abs").map_err(io)?;
    for (k, a) in e.principal_coeffs().iter().enumerate().rev() {
        let [re, im] = complex_fields(*a);
        writeln!(out, "{}", row(&[format!("-{}", k + 1), re, im, num(a.norm())])).map_err(io)?;
    }
    for (k, a) in e.regular_coeffs().iter().enumerate() {
        let [re, im] = complex_fields(*a);
        writeln!(out, "{}", row(&[k.to_string(), re, im, num(a.norm())])).map_err(io)?;
    }
    Ok(())
}

fn write_diagnostics(e: &Expansion, err: &mut impl Write) -> Result<(), CliError> {
    let diag = convergence_report(e, &[])?;
    let status = match diag.status {
        TailStatus::Exhausted => "exhausted",
        TailStatus::Converging => "converging",
        TailStatus::Unreliable => "unreliable",
    };
    writeln!(
        err,
        "quadrature nodes (max): {}; tail {status}, ratio {:.3e}, truncation estimate {:.3e}",
        e.quad().n_final,
        diag.estimated_ratio,
        diag.truncation_estimate
    )
    .map_err(io)
}

pub struct EvalJob {
    pub expansion: String,
    pub points: String,
    pub n_use: Option<usize>,
    pub m_use: Option<usize>,
    pub function: FunctionArgs,
}

pub fn cmd_eval(job: &EvalJob, stdout: &mut impl Write) -> Result<(), CliError> {
    let text = fs::read_to_string(&job.expansion).map_err(|source| CliError::Io {
        path: job.expansion.clone(),
        source,
    })?;
    let e = expansion_from_json(&text)?;
    let points = parse_complex_list(&job.points)?;
    if points.is_empty() {
        return Err(CliError::Usage("--points is empty".into()));
    }
    let f = job.function.resolve()?;
    let (n_use, m_use) = (job.n_use.unwrap_or(e.n()), job.m_use.unwrap_or(e.m()));

    let mut rows = Vec::with_capacity(points.len());
    for &z in &points {
        let value = eval_expansion(&e, z, n_use, m_use)?;
        let mut fields: Vec<String> = complex_fields(z).into_iter().chain(complex_fields(value)).collect();
        if let Some(f) = &f {
            let exact: ComplexValue = eval_fn(f, z)?;
            fields.push(num((value - exact).norm()));
        }
        rows.push(row(&fields));
    }
    let header = if f.is_some() {
        "z_re,z_im,value_re,value_im,abs_error"
    } else {
        "z_re,z_im,value_re,value_im"
    };
    writeln!(stdout, "{header}").map_err(io)?;
    for line in rows {
        writeln!(stdout, "{line}").map_err(io)?;
    }
    Ok(())
}
