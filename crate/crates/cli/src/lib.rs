//! File formats and command implementations behind the `folded-maps` binary.

pub mod config;
pub mod format;
pub mod report;

use config::RunConfig;
use folded_core::c2::C;
use folded_core::error::Error;
use folded_core::moduli::{compactification_sample, construct_degree_d, degree1_family, ModuliParam};
use format::{fmt_f64, pair, to_json, CurveFile};
use rayon::prelude::*;
use report::{certify, map_report, read_operator, Param};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Input(String),
    Verification(String),
    Tier(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Tier(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(s) => write!(f, "input error: {s}"),
            Failure::Verification(s) => write!(f, "verification failed: {s}"),
            Failure::Tier(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TierViolation(_) => Failure::Tier(e.to_string()),
            Error::Domain(_) | Error::Guard(_) => Failure::Input(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

/// Text to write plus whether every check passed.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub pass: bool,
}

pub fn cmd_degree1(cfg: &RunConfig, c: C, m: C) -> Result<Output, Failure> {
    let b = degree1_family(ModuliParam::new(c, m)?, cfg.resolution)?;
    let mut r = map_report(cfg, &b)?;
    r.param = Some(Param { c: pair(c), m: pair(m) });
    Ok(Output { pass: r.pass, text: to_json(&r) })
}

pub fn cmd_degree_d(cfg: &RunConfig, curve_text: &str) -> Result<Output, Failure> {
    let file = CurveFile::parse(curve_text)?;
    let (curve, m) = file.curve()?;
    let b = construct_degree_d(&curve, m, cfg.resolution)?;
    let mut r = map_report(cfg, &b)?;
    r.curve = Some(file);
    Ok(Output { pass: r.pass, text: to_json(&r) })
}

pub const COMPACTIFY_HEADER: &str = "c_abs,E_uplus,E_uminus,E_total,limit_label";

/// Radial path `|c| = c_max k/(steps-1)` in direction `e^{i arg}`. The label
/// is the parameter `x ∈ [0,1)` of the bubbling limit `(0, e^{2πix})`.
pub fn cmd_compactify(cfg: &RunConfig, steps: usize, m: C, c_max: f64, arg: f64) -> Result<Output, Failure> {
    if steps < 2 {
        return Err(Failure::Input("need at least 2 steps".into()));
    }
    if !(c_max > 0.0 && c_max < 1.0) {
        return Err(Failure::Input(format!("c-max {c_max} must lie in (0, 1)")));
    }
    let path: Vec<C> =
        (0..steps).map(|k| C::from_polar(c_max * k as f64 / (steps - 1) as f64, arg)).collect();
    let rows = path
        .par_iter()
        .map(|&c| compactification_sample(&[c], m, cfg.resolution).map(|v| v[0]))
        .collect::<Result<Vec<_>, _>>()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Input(e.to_string());
    w.write_record(COMPACTIFY_HEADER.split(',')).map_err(io)?;
    for r in &rows {
        let label = match r.limit {
            Some(p) => format!("x={}", fmt_f64((p.w.arg() / (2.0 * PI)).rem_euclid(1.0))),
            None => "none".into(),
        };
        w.write_record([fmt_f64(r.c.norm()), fmt_f64(r.e_uplus), fmt_f64(r.e_uminus), fmt_f64(r.e_total), label])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Output { text: String::from_utf8(bytes).expect("csv is utf-8"), pass: true })
}

pub fn cmd_certificate(cfg: &RunConfig, bundle_text: &str) -> Result<Output, Failure> {
    let op = read_operator(bundle_text)?;
    let cert = certify(&op, cfg.tolerances.sigma)?;
    Ok(Output { pass: cert.pass, text: to_json(&cert) })
}
