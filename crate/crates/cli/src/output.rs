//! Report records and their JSON / CSV / plain renderings.
//!
//! JSON output is byte-deterministic: struct field order fixes key order
//! and every float is printed with 17 significant digits, enough to
//! reproduce the exact bit pattern on re-parse.

use qwalk_core::{Amplitude, PstVerdict};
use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

pub fn float_repr(x: f64) -> String {
    format!("{x:.16e}")
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).expect("report serialization");
    out.push(b'\n');
    String::from_utf8(out).expect("reports are UTF-8")
}

pub fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn csv_line<S: AsRef<str>>(fields: &[S]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f.as_ref())).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

#[derive(Serialize)]
pub struct AmplitudeRecord {
    pub a: usize,
    pub b: usize,
    pub t: f64,
    pub re: f64,
    pub im: f64,
    pub mag: f64,
}

impl From<&Amplitude> for AmplitudeRecord {
    fn from(amp: &Amplitude) -> Self {
        AmplitudeRecord {
            a: amp.a,
            b: amp.b,
            t: amp.t,
            re: amp.value.re,
            im: amp.value.im,
            mag: amp.magnitude(),
        }
    }
}

#[derive(Serialize)]
pub struct EigenvalueRecord {
    pub value: f64,
    pub integer: bool,
}

#[derive(Serialize)]
pub struct SpectrumReport {
    pub expr: String,
    pub order: usize,
    pub eigenvalues: Vec<EigenvalueRecord>,
    pub integral: bool,
}

#[derive(Serialize)]
pub struct PstReport {
    pub expr: String,
    pub a: usize,
    pub b: usize,
    pub mode: String,
    pub t: f64,
    pub found: bool,
    pub fidelity: f64,
    pub t_star: f64,
    pub antipodal: bool,
}

impl PstReport {
    pub fn new(expr: String, mode: String, t: f64, verdict: &PstVerdict) -> Self {
        PstReport {
            expr,
            a: verdict.a,
            b: verdict.b,
            mode,
            t,
            found: verdict.found,
            fidelity: verdict.fidelity,
            t_star: verdict.t_star,
            antipodal: verdict.antipodal,
        }
    }
}

#[derive(Serialize)]
pub struct OutcomeRecord {
    pub id: String,
    pub source: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub filter: Option<String>,
    pub total: usize,
    pub failed: usize,
    pub outcomes: Vec<OutcomeRecord>,
}

#[derive(Serialize)]
pub struct ExportReport {
    pub expr: String,
    pub path: String,
    pub order: usize,
    pub edges: usize,
}

#[derive(Serialize)]
pub struct ReduceReport {
    pub expr: String,
    pub rule: String,
    pub t: f64,
    pub reduction: AmplitudeRecord,
    pub oracle: AmplitudeRecord,
    pub absdiff: f64,
    pub within_tol: bool,
}
