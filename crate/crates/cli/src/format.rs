use crate::Failure;
use folded_core::c2::{c, C, C2};
use folded_core::moduli::CurveInput;
use serde::{Deserialize, Serialize};
use std::io;

pub const SCHEMA: &str = "folded-maps/1";

/// Compact JSON with every float written as `{:.16e}`, 17 significant digits.
struct Fixed17;

impl serde_json::ser::Formatter for Fixed17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed17);
    value.serialize(&mut ser).expect("report types serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("json is utf-8")
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn pair(z: C) -> [f64; 2] {
    [z.re, z.im]
}

pub fn unpair(p: [f64; 2]) -> C {
    c(p[0], p[1])
}

pub fn quad(v: C2) -> [f64; 4] {
    [v.z.re, v.z.im, v.w.re, v.w.im]
}

pub fn unquad(q: [f64; 4]) -> C2 {
    C2::new(c(q[0], q[1]), c(q[2], q[3]))
}

/// Accepts `a`, `bi`, `a+bi` and `a-bi`.
pub fn parse_complex(s: &str) -> Result<C, String> {
    let z: C = s.trim().parse().map_err(|_| format!("not a complex number: {s:?}"))?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(format!("not finite: {s:?}"));
    }
    Ok(z)
}

/// Coefficients of `p` and `q` in increasing degree, plus the phase `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub p: Vec<[f64; 2]>,
    pub q: Vec<[f64; 2]>,
    #[serde(default = "unit")]
    pub m: [f64; 2],
}

fn unit() -> [f64; 2] {
    [1.0, 0.0]
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("bad curve file: {e}")))
    }

    pub fn curve(&self) -> Result<(CurveInput, C), Failure> {
        let p = self.p.iter().copied().map(unpair).collect();
        let q = self.q.iter().copied().map(unpair).collect();
        let curve = CurveInput::new(p, q)?;
        Ok((curve, unpair(self.m)))
    }
}
