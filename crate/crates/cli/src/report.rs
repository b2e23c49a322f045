use crate::config::RunConfig;
use crate::format::{pair, quad, unpair, unquad, CurveFile, SCHEMA};
use crate::Failure;
use folded_core::c2::C2;
use folded_core::error::Error;
use folded_core::index::{
    boundary_condition_loops, certificate, check_ellipticity, fredholm_index, maslov_index, reduced_index,
    symbol_homotopy_bt, BOperatorData, IndexCertificate, TotallyRealLoop, CHI_SPHERE,
};
use folded_core::moduli::{verify_folded_holomorphic, FoldedMapBundle, SigmaData, VerificationReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Verification {
    pub holomorphy_plus: f64,
    pub holomorphy_minus: f64,
    pub tau_sign: f64,
    pub tau_boundary: f64,
    pub lower_ball_excess: f64,
    pub boundary_plus: f64,
    pub boundary_minus: f64,
    pub omega_defect: f64,
    pub f_scale_defect: f64,
    pub lambda_sigma: f64,
    pub marker_defect: f64,
    pub multiplicity_defect: i32,
    pub mode_proxy_defect: f64,
    pub base_projection: f64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl From<&VerificationReport> for Verification {
    fn from(r: &VerificationReport) -> Self {
        let k = &r.conjugate;
        Verification {
            holomorphy_plus: r.holomorphy_plus,
            holomorphy_minus: r.holomorphy_minus,
            tau_sign: r.tau_sign,
            tau_boundary: r.tau_boundary,
            lower_ball_excess: r.lower_ball_excess,
            boundary_plus: r.boundary_plus,
            boundary_minus: r.boundary_minus,
            omega_defect: k.omega_defect,
            f_scale_defect: k.f_scale_defect,
            lambda_sigma: k.lambda_sigma,
            marker_defect: k.marker_defect,
            multiplicity_defect: k.multiplicity_defect,
            mode_proxy_defect: k.mode_proxy_defect,
            base_projection: k.base_projection,
            max_residual: r.max_residual(),
            tolerance: r.tolerance,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Energies {
    pub u_plus: f64,
    pub u_minus: f64,
    pub v_plus: f64,
    pub v_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub schema: String,
    pub sigma_min: f64,
    pub sigma_location: usize,
    pub a_min: f64,
    pub homotopy_min: f64,
    pub maslov_plus: i32,
    pub maslov_minus: i32,
    pub index: i32,
    pub reduced_index: i32,
    pub loops_from_frames: bool,
    pub pass: bool,
}

/// Everything [`certify`] needs: the frame data of `B` and both boundary loops.
/// Frames are stored as `[z.re, z.im, w.re, w.im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OperatorExport {
    pub degree: u32,
    pub radius: f64,
    pub af: Vec<[f64; 2]>,
    pub a: Vec<f64>,
    pub f_e: Vec<f64>,
    pub f_ie: Vec<f64>,
    pub loop_plus: Vec<[[f64; 4]; 2]>,
    pub loop_minus: Vec<[[f64; 4]; 2]>,
    pub loops_from_frames: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Param {
    pub c: [f64; 2],
    pub m: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MapReport {
    pub schema: String,
    pub command: String,
    pub resolution: usize,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub param: Option<Param>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub curve: Option<CurveFile>,
    pub rho_sigma: f64,
    pub tracking_point: [f64; 4],
    pub verification: Verification,
    pub energies: Energies,
    /// `-u₋*α(∂θ) / u₊*α(∂θ)` at each sample of σ.
    pub gap_profile: Vec<f64>,
    pub certificate: Certificate,
    pub operator: OperatorExport,
    pub pass: bool,
}

fn frames_out(l: &TotallyRealLoop) -> Vec<[[f64; 4]; 2]> {
    l.frames().iter().map(|f| [quad(f[0]), quad(f[1])]).collect()
}

fn frames_in(v: &[[[f64; 4]; 2]]) -> Vec<[C2; 2]> {
    v.iter().map(|f| [unquad(f[0]), unquad(f[1])]).collect()
}

fn certificate_out(c: &IndexCertificate, location: usize, sigma_tol: f64) -> Certificate {
    Certificate {
        schema: SCHEMA.into(),
        sigma_min: c.sigma_min,
        sigma_location: location,
        a_min: c.a_min,
        homotopy_min: c.homotopy_min,
        maslov_plus: c.maslov_plus,
        maslov_minus: c.maslov_minus,
        index: c.index,
        reduced_index: c.reduced_index,
        loops_from_frames: c.loops_from_frames,
        pass: c.sigma_min > sigma_tol && c.a_min > 0.0 && c.homotopy_min > 0.0,
    }
}

pub fn export_operator(b: &FoldedMapBundle) -> Result<OperatorExport, Failure> {
    let data = BOperatorData::from_bundle(b)?;
    let (lp, lm, from_frames) = match boundary_condition_loops(b) {
        Ok((p, q)) => (p, q, true),
        Err(Error::NotTotallyReal { .. }) => {
            let model = TotallyRealLoop::model(b.degree as i32, b.m());
            (model.clone(), model, false)
        }
        Err(e) => return Err(e.into()),
    };
    Ok(OperatorExport {
        degree: b.degree,
        radius: data.radius,
        af: data.af.iter().copied().map(pair).collect(),
        a: data.a,
        f_e: data.f_e,
        f_ie: data.f_ie,
        loop_plus: frames_out(&lp),
        loop_minus: frames_out(&lm),
        loops_from_frames: from_frames,
    })
}

/// Verification, certificate and exports for a constructed bundle.
pub fn map_report(cfg: &RunConfig, b: &FoldedMapBundle) -> Result<MapReport, Failure> {
    let tol = cfg.tolerances;
    let (ver, cert) = rayon::join(|| verify_folded_holomorphic(b, tol.verify), || certificate(b));
    let cert = cert?;
    let operator = export_operator(b)?;
    let data = operator_data(&operator)?;
    let location = check_ellipticity(&data).location;
    let (up, um) = SigmaData::from_bundle(b).alpha_dtheta();
    let gap_profile = up.iter().zip(&um).map(|(p, q)| -q / p).collect();
    let verification = Verification::from(&ver);
    let certificate = certificate_out(&cert, location, tol.sigma);
    let e = &b.energies;
    Ok(MapReport {
        schema: SCHEMA.into(),
        command: cfg.command.clone(),
        resolution: cfg.resolution,
        degree: b.degree,
        param: None,
        curve: None,
        rho_sigma: b.rho_sigma,
        tracking_point: quad(b.tracking_point),
        pass: verification.pass && certificate.pass,
        verification,
        energies: Energies { u_plus: e.u_plus, u_minus: e.u_minus, v_plus: e.v_plus, v_minus: e.v_minus },
        gap_profile,
        certificate,
        operator,
    })
}

fn operator_data(op: &OperatorExport) -> Result<BOperatorData, Failure> {
    let m = op.a.len();
    if !m.is_power_of_two() || m < 4 {
        return Err(Failure::Input(format!("operator has {m} samples, need a power of two")));
    }
    if op.af.len() != m || op.f_e.len() != m || op.f_ie.len() != m {
        return Err(Failure::Input("operator arrays differ in length".into()));
    }
    Ok(BOperatorData {
        af: op.af.iter().copied().map(unpair).collect(),
        a: op.a.clone(),
        f_e: op.f_e.clone(),
        f_ie: op.f_ie.clone(),
        radius: op.radius,
    })
}

/// Recomputes the certificate from an exported operator alone.
pub fn certify(op: &OperatorExport, sigma_tol: f64) -> Result<Certificate, Failure> {
    let data = operator_data(op)?;
    let ell = check_ellipticity(&data);
    let a_min = data.a.iter().copied().fold(f64::INFINITY, f64::min);
    let ts: Vec<f64> = (0..=64).map(|k| k as f64 / 64.0).collect();
    let homotopy_min = symbol_homotopy_bt(&data.a, &ts);
    let mp = maslov_index(&TotallyRealLoop::new(frames_in(&op.loop_plus))?)?;
    let mm = maslov_index(&TotallyRealLoop::new(frames_in(&op.loop_minus))?)?;
    let cert = IndexCertificate {
        sigma_min: ell.sigma_min,
        a_min,
        homotopy_min,
        maslov_plus: mp,
        maslov_minus: mm,
        index: fredholm_index(mp, mm, CHI_SPHERE),
        reduced_index: reduced_index(mp, mm, CHI_SPHERE),
        loops_from_frames: op.loops_from_frames,
        ellipticity_pass: ell.pass,
    };
    Ok(certificate_out(&cert, ell.location, sigma_tol))
}

/// Reads a certificate input: a full map report or a bare operator export,
/// both tagged with the schema string.
pub fn read_operator(text: &str) -> Result<OperatorExport, Failure> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("bad bundle file: {e}")))?;
    let schema = v.get("schema").and_then(|s| s.as_str());
    if schema != Some(SCHEMA) {
        return Err(Failure::Input(format!("expected schema {SCHEMA:?}, found {schema:?}")));
    }
    let body = match v.get("operator") {
        Some(op) => op.clone(),
        None => {
            let mut o = v;
            o.as_object_mut().map(|m| m.remove("schema"));
            o
        }
    };
    serde_json::from_value(body).map_err(|e| Failure::Input(format!("bad operator export: {e}")))
}
