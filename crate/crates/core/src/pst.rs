//! Perfect state transfer: detection, search, and certificates.
//!
//! A pair `(a, b)` admits perfect state transfer (PST) at time `t` when the
//! walk fidelity `|<b| exp(-itA) |a>|` reaches 1. Numerically we accept
//! `1 - 1e-9`. Search combines a fast path at odd multiples of `pi/2`
//! (where every known family in the catalog transfers), a coarse grid, and
//! golden-section refinement of near-miss maxima.
//!
//! Periodicity questions are settled by certificates only: a numerically
//! integral spectrum certifies periodicity, and a closed-form description
//! mixing integer and irrational eigenvalues certifies its absence. A bare
//! numeric spectrum can never certify irrationality, so without a closed
//! form the verdict stays inconclusive.

use crate::circulant::{icg, DivisorSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::operators::{cartesian, circulant_join, connector, join, self_join, JoinLayout};
use crate::walk::{decompose, Spectrum};

/// Fidelity slack: PST means fidelity at least `1 - PST_TOLERANCE`.
pub const PST_TOLERANCE: f64 = 1e-9;
/// Grid maxima above this are worth refining.
pub const NEAR_MISS: f64 = 0.999;
/// Time resolution of golden-section refinement.
pub const REFINE_TOLERANCE: f64 = 1e-12;

/// Outcome of a single PST check or search.
#[derive(Clone, Debug)]
pub struct PstVerdict {
    pub found: bool,
    pub a: VertexId,
    pub b: VertexId,
    /// Transfer time when found; otherwise the time of the best fidelity
    /// seen.
    pub t_star: f64,
    pub fidelity: f64,
    /// Whether `(a, b)` realizes the graph diameter.
    pub antipodal: bool,
}

fn antipodal(g: &Graph, a: VertexId, b: VertexId) -> bool {
    match (g.distance(a, b), g.diameter()) {
        (Some(d), Some(diam)) => d == diam,
        _ => false,
    }
}

/// Check one pair at one time.
pub fn check_pst(g: &Graph, a: VertexId, b: VertexId, t: f64) -> Result<PstVerdict> {
    check_pst_with_tolerance(g, a, b, t, PST_TOLERANCE)
}

pub fn check_pst_with_tolerance(
    g: &Graph,
    a: VertexId,
    b: VertexId,
    t: f64,
    tolerance: f64,
) -> Result<PstVerdict> {
    if a == b {
        return Err(Error::SameVertex);
    }
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    let fidelity = decompose(g).amplitude(a, b, t).norm();
    Ok(PstVerdict {
        found: fidelity >= 1.0 - tolerance,
        a,
        b,
        t_star: t,
        fidelity,
        antipodal: antipodal(g, a, b),
    })
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > REFINE_TOLERANCE {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Scan `(0, t_max]` for transfer out of `a`, one verdict per other vertex.
///
/// Odd multiples of `pi/2` are tried first; when none transfers, a
/// `grid`-point scan locates local maxima and anything above [`NEAR_MISS`]
/// is sharpened by golden-section search. Each verdict carries the best
/// fidelity encountered for its target.
pub fn search_pst(g: &Graph, a: VertexId, t_max: f64, grid: usize) -> Result<Vec<PstVerdict>> {
    g.check_vertex(a)?;
    let grid = grid.max(2);
    let spectrum = decompose(g);
    let mut verdicts = Vec::new();
    for b in 0..g.order() {
        if b != a {
            verdicts.push(search_pair(g, &spectrum, a, b, t_max, grid));
        }
    }
    Ok(verdicts)
}

fn search_pair(
    g: &Graph,
    spectrum: &Spectrum,
    a: VertexId,
    b: VertexId,
    t_max: f64,
    grid: usize,
) -> PstVerdict {
    let fid = |t: f64| spectrum.amplitude(a, b, t).norm();
    let verdict = |t_star: f64, fidelity: f64| PstVerdict {
        found: fidelity >= 1.0 - PST_TOLERANCE,
        a,
        b,
        t_star,
        fidelity,
        antipodal: antipodal(g, a, b),
    };

    // fast path: odd multiples of pi/2
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut j = 0;
    loop {
        let t = (2 * j + 1) as f64 * half_pi;
        if t > t_max {
            break;
        }
        let f = fid(t);
        if f >= 1.0 - PST_TOLERANCE {
            return verdict(t, f);
        }
        j += 1;
    }

    let step = t_max / grid as f64;
    let values: Vec<f64> = (1..=grid).map(|i| fid(step * i as f64)).collect();
    let (mut best_t, mut best_f) = (0.0, 0.0);
    for (idx, &f) in values.iter().enumerate() {
        let left = if idx == 0 { 0.0 } else { values[idx - 1] };
        let right = values.get(idx + 1).copied().unwrap_or(0.0);
        let t = step * (idx + 1) as f64;
        let (t, f) = if f > NEAR_MISS && f >= left && f >= right {
            // bracket the local maximum and sharpen it
            let lo = step * idx as f64;
            let hi = (step * (idx + 2) as f64).min(t_max);
            golden_section_max(fid, lo, hi)
        } else {
            (t, f)
        };
        if f > best_f {
            best_f = f;
            best_t = t;
        }
    }
    verdict(best_t, best_f)
}

/// Exponent of 2 in `x`.
pub fn two_adic_valuation(x: u64) -> Result<u32> {
    if x == 0 {
        Err(Error::ZeroValuation)
    } else {
        Ok(x.trailing_zeros())
    }
}

fn integer_sqrt(x: u64) -> Option<u64> {
    let r = (x as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c * c == x)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Which branch of a cone condition fired, or why it failed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ConeClause {
    /// Empty base pair (`k = 0`): transfer at `2 pi / Delta`.
    ApexOnly,
    /// `k` and `Delta` both multiples of 4 with different 2-adic
    /// valuations.
    SplitValuations,
    /// Connected cone: `k - 1` and `Delta` both multiples of 8.
    EightFold,
    DeltaNotInteger,
    NotMultipleOfFour,
    EqualValuations,
    NotMultipleOfEight,
}

/// Result of a cone test over `(n, k)`: a double cone over an `n`-vertex
/// `k`-regular base.
#[derive(Clone, Debug)]
pub struct ConeCondition {
    pub n: u64,
    pub k: u64,
    pub holds: bool,
    pub delta: f64,
    pub delta_integer: Option<u64>,
    pub clause: ConeClause,
    /// A transfer time implied by the clause, when it holds.
    pub t_star: Option<f64>,
}

/// Sufficient condition for apex-to-apex PST in the disconnected double
/// cone (two isolated apexes joined to an `n`-vertex `k`-regular base),
/// with `Delta = sqrt(k^2 + 8n)`.
///
/// This is one-sided: pairs failing it may still transfer at times the
/// clause structure does not cover.
pub fn disconnected_cone_condition(n: u64, k: u64) -> ConeCondition {
    let delta_sq = k * k + 8 * n;
    let delta = (delta_sq as f64).sqrt();
    let base = ConeCondition {
        n,
        k,
        holds: false,
        delta,
        delta_integer: integer_sqrt(delta_sq),
        clause: ConeClause::DeltaNotInteger,
        t_star: None,
    };
    let Some(di) = base.delta_integer else {
        return base;
    };
    if k == 0 {
        return ConeCondition {
            holds: true,
            clause: ConeClause::ApexOnly,
            t_star: Some(2.0 * std::f64::consts::PI / di as f64),
            ..base
        };
    }
    if !k.is_multiple_of(4) || !di.is_multiple_of(4) {
        return ConeCondition { clause: ConeClause::NotMultipleOfFour, ..base };
    }
    if two_adic_valuation(k) == two_adic_valuation(di) {
        return ConeCondition { clause: ConeClause::EqualValuations, ..base };
    }
    ConeCondition {
        holds: true,
        clause: ConeClause::SplitValuations,
        t_star: Some(2.0 * std::f64::consts::PI / gcd(k, di) as f64),
        ..base
    }
}

/// Sufficient condition for apex-to-apex PST in the connected double cone
/// (an edge joined to an `n`-vertex `k`-regular base, `k >= 1`), with
/// `Delta = sqrt((k-1)^2 + 8n)`. Transfers at odd multiples of `pi/2`.
pub fn connected_cone_condition(n: u64, k: u64) -> Result<ConeCondition> {
    if k == 0 {
        return Err(Error::ConeRegularity);
    }
    let kt = k - 1;
    let delta_sq = kt * kt + 8 * n;
    let delta = (delta_sq as f64).sqrt();
    let base = ConeCondition {
        n,
        k,
        holds: false,
        delta,
        delta_integer: integer_sqrt(delta_sq),
        clause: ConeClause::DeltaNotInteger,
        t_star: None,
    };
    let Some(di) = base.delta_integer else {
        return Ok(base);
    };
    if !kt.is_multiple_of(8) || !di.is_multiple_of(8) {
        return Ok(ConeCondition { clause: ConeClause::NotMultipleOfEight, ..base });
    }
    Ok(ConeCondition {
        holds: true,
        clause: ConeClause::EightFold,
        t_star: Some(std::f64::consts::FRAC_PI_2),
        ..base
    })
}

/// Eigenvalue in closed form, precise enough to certify (ir)rationality.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    Integer(i64),
    /// `base + sum of 2 cos(2 pi num / den)` over the terms.
    CosineSum { base: i64, terms: Vec<(u64, u64)> },
}

#[derive(Clone, Debug, PartialEq)]
enum Rationality {
    Integer(i64),
    Irrational,
    Unknown,
}

/// Exact value of `2 cos(2 pi num / den)` when rational. By Niven's
/// characterization the cosine of a rational multiple of pi is rational
/// only at `{0, +-1/2, +-1}`, so a rational term is always an integer.
fn rational_term(num: u64, den: u64) -> Option<i64> {
    // angle is (2 num / den) * pi; reduce p/q = 2 num / den
    let g = gcd(2 * num, den);
    let (p, q) = ((2 * num / g) % (2 * den / g), den / g);
    match q {
        1 => Some(if p % 2 == 0 { 2 } else { -2 }),
        2 => Some(0),
        3 => match p % 6 {
            1 | 5 => Some(1),
            2 | 4 => Some(-1),
            _ => unreachable!("p and q are coprime"),
        },
        _ => None,
    }
}

impl ClosedForm {
    pub fn value(&self) -> f64 {
        match self {
            ClosedForm::Integer(v) => *v as f64,
            ClosedForm::CosineSum { base, terms } => {
                let tau = 2.0 * std::f64::consts::PI;
                *base as f64
                    + terms
                        .iter()
                        .map(|&(num, den)| 2.0 * (tau * num as f64 / den as f64).cos())
                        .sum::<f64>()
            }
        }
    }

    fn classify(&self) -> Rationality {
        match self {
            ClosedForm::Integer(v) => Rationality::Integer(*v),
            ClosedForm::CosineSum { base, terms } => {
                let mut total = *base;
                let mut irrational = 0;
                for &(num, den) in terms {
                    match rational_term(num, den) {
                        Some(v) => total += v,
                        None => irrational += 1,
                    }
                }
                match irrational {
                    0 => Rationality::Integer(total),
                    // an integer plus a single irrational cosine is
                    // irrational; two or more could cancel
                    1 => Rationality::Irrational,
                    _ => Rationality::Unknown,
                }
            }
        }
    }

    /// Sum of two closed forms, for product spectra.
    pub fn add(&self, other: &ClosedForm) -> ClosedForm {
        use ClosedForm::*;
        match (self, other) {
            (Integer(a), Integer(b)) => Integer(a + b),
            (Integer(a), CosineSum { base, terms }) | (CosineSum { base, terms }, Integer(a)) => {
                CosineSum { base: a + base, terms: terms.clone() }
            }
            (CosineSum { base: b1, terms: t1 }, CosineSum { base: b2, terms: t2 }) => {
                let mut terms = t1.clone();
                terms.extend_from_slice(t2);
                CosineSum { base: b1 + b2, terms }
            }
        }
    }
}

impl std::fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedForm::Integer(v) => write!(f, "{v}"),
            ClosedForm::CosineSum { base, terms } => {
                if *base != 0 || terms.is_empty() {
                    write!(f, "{base}")?;
                } else {
                    let mut first = true;
                    for (num, den) in terms {
                        if !first {
                            write!(f, " + ")?;
                        }
                        write!(f, "2cos(2pi*{num}/{den})")?;
                        first = false;
                    }
                    return Ok(());
                }
                for (num, den) in terms {
                    write!(f, " + 2cos(2pi*{num}/{den})")?;
                }
                Ok(())
            }
        }
    }
}

/// Closed-form spectrum of the `n`-cycle: `2 cos(2 pi j / n)`.
pub fn cycle_closed_forms(n: usize) -> Vec<ClosedForm> {
    (0..n as u64).map(|j| ClosedForm::CosineSum { base: 0, terms: vec![(j, n as u64)] }).collect()
}

/// Closed-form spectrum of a Cartesian product from its factors.
pub fn product_closed_forms(g: &[ClosedForm], h: &[ClosedForm]) -> Vec<ClosedForm> {
    let mut out = Vec::with_capacity(g.len() * h.len());
    for a in g {
        for b in h {
            out.push(a.add(b));
        }
    }
    out
}

/// Closed-form spectrum of a join of regular graphs from the operands'
/// spectra: each side keeps all eigenvalues except one copy of its
/// regularity, and the pair `lambda_plus/minus` is appended. Returns
/// `None` when those two are not integers (no closed form available
/// for quadratic surds here) or when an operand spectrum lacks its
/// regularity eigenvalue.
pub fn join_closed_forms(
    g_forms: &[ClosedForm],
    k_g: usize,
    h_forms: &[ClosedForm],
    k_h: usize,
) -> Option<Vec<ClosedForm>> {
    let data = crate::reductions::JoinSpectralData::new(g_forms.len(), k_g, h_forms.len(), k_h);
    let lp = data.lambda_plus.round();
    let lm = data.lambda_minus.round();
    if (data.lambda_plus - lp).abs() > 1e-9 || (data.lambda_minus - lm).abs() > 1e-9 {
        return None;
    }
    let mut out = Vec::new();
    for (forms, k) in [(g_forms, k_g), (h_forms, k_h)] {
        let mut dropped = false;
        for form in forms {
            if !dropped && form.classify() == Rationality::Integer(k as i64) {
                dropped = true;
                continue;
            }
            out.push(form.clone());
        }
        if !dropped {
            return None;
        }
    }
    out.push(ClosedForm::Integer(lp as i64));
    out.push(ClosedForm::Integer(lm as i64));
    Some(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Periodicity {
    /// Numerically integral spectrum: the walk is periodic.
    PeriodicIntegral,
    /// Certified integer and irrational eigenvalues coexist: not periodic.
    NonperiodicMixedSpectrum,
    /// Nothing certified either way.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct PeriodicityCertificate {
    pub verdict: Periodicity,
    /// Distinct integer eigenvalues backing the verdict.
    pub integer_evidence: Vec<i64>,
    /// Rendered closed forms certified irrational.
    pub irrational_evidence: Vec<String>,
    pub note: Option<String>,
}

const INTEGRALITY_TOLERANCE: f64 = 1e-9;
// closed forms are evaluated in floating point before being matched
// against jacobi output, so the multiset comparison gets extra slack
const CLOSED_FORM_MATCH_TOLERANCE: f64 = 1e-7;

/// Decide periodicity by certificate.
///
/// Without closed forms only `PeriodicIntegral` (all eigenvalues within
/// `1e-9` of integers) or `Inconclusive` can come out: a float is never
/// evidence of irrationality. Supplied closed forms must reproduce the
/// numeric spectrum or they are rejected with an inconclusive verdict.
pub fn periodicity_certificate(g: &Graph, closed: Option<&[ClosedForm]>) -> PeriodicityCertificate {
    let numeric = decompose(g);
    let eigenvalues = numeric.eigenvalues();

    let Some(forms) = closed else {
        let mut integers = Vec::new();
        for &l in eigenvalues {
            if (l - l.round()).abs() > INTEGRALITY_TOLERANCE {
                return PeriodicityCertificate {
                    verdict: Periodicity::Inconclusive,
                    integer_evidence: Vec::new(),
                    irrational_evidence: Vec::new(),
                    note: Some(format!(
                        "eigenvalue {l} is not numerically integral and no closed form was supplied"
                    )),
                };
            }
            integers.push(l.round() as i64);
        }
        integers.dedup();
        return PeriodicityCertificate {
            verdict: Periodicity::PeriodicIntegral,
            integer_evidence: integers,
            irrational_evidence: Vec::new(),
            note: None,
        };
    };

    let mut values: Vec<f64> = forms.iter().map(ClosedForm::value).collect();
    values.sort_by(f64::total_cmp);
    let matches = values.len() == eigenvalues.len()
        && values
            .iter()
            .zip(eigenvalues)
            .all(|(v, l)| (v - l).abs() <= CLOSED_FORM_MATCH_TOLERANCE);
    if !matches {
        return PeriodicityCertificate {
            verdict: Periodicity::Inconclusive,
            integer_evidence: Vec::new(),
            irrational_evidence: Vec::new(),
            note: Some("closed forms do not reproduce the numeric spectrum".into()),
        };
    }

    let mut integers = Vec::new();
    let mut irrationals = Vec::new();
    let mut unknowns = 0usize;
    for form in forms {
        match form.classify() {
            Rationality::Integer(v) => integers.push(v),
            Rationality::Irrational => irrationals.push(form.to_string()),
            Rationality::Unknown => unknowns += 1,
        }
    }
    integers.sort_unstable();
    integers.dedup();
    irrationals.sort();
    irrationals.dedup();

    if !integers.is_empty() && !irrationals.is_empty() {
        PeriodicityCertificate {
            verdict: Periodicity::NonperiodicMixedSpectrum,
            integer_evidence: integers,
            irrational_evidence: irrationals,
            note: None,
        }
    } else if unknowns == 0 && irrationals.is_empty() {
        PeriodicityCertificate {
            verdict: Periodicity::PeriodicIntegral,
            integer_evidence: integers,
            irrational_evidence: irrationals,
            note: None,
        }
    } else {
        PeriodicityCertificate {
            verdict: Periodicity::Inconclusive,
            integer_evidence: integers,
            irrational_evidence: irrationals,
            note: Some(format!("{unknowns} eigenvalue(s) could not be classified")),
        }
    }
}

/// One verifiable transfer claim: a construction recipe, a vertex pair,
/// and a time. Negative entries claim the absence of any transfer.
pub struct CatalogEntry {
    pub id: &'static str,
    /// Claim tag used for report grouping and CLI filtering.
    pub source: &'static str,
    /// Construction in the CLI expression grammar.
    pub recipe: &'static str,
    pub build: fn() -> Graph,
    pub a: VertexId,
    pub b: VertexId,
    pub t_star: f64,
    pub t_label: &'static str,
    pub expect_pst: bool,
}

fn proper(n: u64, d: &[u64]) -> DivisorSet {
    DivisorSet::proper(n, d.iter().copied()).expect("catalog divisor sets are valid")
}

fn extended(m: u64, q: &[u64]) -> DivisorSet {
    DivisorSet::extended(m, q.iter().copied()).expect("catalog divisor sets are valid")
}

fn catalog_cjoin(n: u64, d: &[u64], q: &[u64]) -> Graph {
    let g = icg(&proper(n, d)).unwrap();
    let m = n >> n.trailing_zeros();
    let c = connector(n as usize, &extended(m, q)).unwrap();
    circulant_join(&g, &c, JoinLayout::Interleaved).unwrap()
}

const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;
const QUARTER_PI: f64 = std::f64::consts::FRAC_PI_4;

fn pi_over_sqrt2() -> f64 {
    std::f64::consts::PI / std::f64::consts::SQRT_2
}

/// The built-in claims: every verified transfer family plus negative
/// controls. `verify::catalog_report` runs them all by brute force.
pub fn family_catalog() -> Vec<CatalogEntry> {
    #[allow(clippy::too_many_arguments)] // one slot per catalog column
    fn entry(
        id: &'static str,
        source: &'static str,
        recipe: &'static str,
        build: fn() -> Graph,
        a: VertexId,
        b: VertexId,
        t_star: f64,
        t_label: &'static str,
    ) -> CatalogEntry {
        CatalogEntry { id, source, recipe, build, a, b, t_star, t_label, expect_pst: true }
    }

    let mut entries = vec![
        entry("icg8-d12", "fig2", "icg:8:1,2", || icg(&proper(8, &[1, 2])).unwrap(), 0, 4, HALF_PI, "pi/2"),
        entry("icg8-d14", "fig2", "icg:8:1,4", || icg(&proper(8, &[1, 4])).unwrap(), 0, 4, HALF_PI, "pi/2"),
        entry("icg16-d124", "cor3.4", "icg:16:1,2,4", || icg(&proper(16, &[1, 2, 4])).unwrap(), 0, 8, HALF_PI, "pi/2"),
        entry("icg16-d128", "cor3.4", "icg:16:1,2,8", || icg(&proper(16, &[1, 2, 8])).unwrap(), 0, 8, HALF_PI, "pi/2"),
        entry("icg32-d1216", "cor3.4", "icg:32:1,2,16", || icg(&proper(32, &[1, 2, 16])).unwrap(), 0, 16, HALF_PI, "pi/2"),
        entry("cjoin24-d16-q1", "thm3.3", "cjoin(icg:24:1,6,conn:24:1)", || catalog_cjoin(24, &[1, 6], &[1]), 0, 24, HALF_PI, "pi/2"),
        entry("cjoin24-d16-q3", "thm3.3", "cjoin(icg:24:1,6,conn:24:3)", || catalog_cjoin(24, &[1, 6], &[3]), 0, 24, HALF_PI, "pi/2"),
        entry("cjoin24-d16-q13", "thm3.3", "cjoin(icg:24:1,6,conn:24:1,3)", || catalog_cjoin(24, &[1, 6], &[1, 3]), 0, 24, HALF_PI, "pi/2"),
        entry("cjoin24-d112-q1", "thm3.3", "cjoin(icg:24:1,12,conn:24:1)", || catalog_cjoin(24, &[1, 12], &[1]), 0, 24, HALF_PI, "pi/2"),
        entry("cjoin24-d112-q3", "thm3.3", "cjoin(icg:24:1,12,conn:24:3)", || catalog_cjoin(24, &[1, 12], &[3]), 0, 24, HALF_PI, "pi/2"),
        entry("cjoin24-d112-q13", "thm3.3", "cjoin(icg:24:1,12,conn:24:1,3)", || catalog_cjoin(24, &[1, 12], &[1, 3]), 0, 24, HALF_PI, "pi/2"),
        entry("icg48-doubled", "thm3.3", "icg:48:2,12,3", || icg(&proper(48, &[2, 12, 3])).unwrap(), 0, 24, HALF_PI, "pi/2"),
        entry(
            "bunkbed-icg8",
            "cor3.2",
            "cjoin(icg:8:1,4,ident:8)",
            || {
                let g = icg(&proper(8, &[1, 4])).unwrap();
                circulant_join(&g, &crate::circulant::CirculantSpec::identity(8), JoinLayout::Interleaved).unwrap()
            },
            0,
            9, // (4, 1) interleaved
            HALF_PI,
            "pi/2",
        ),
        entry(
            "bunkbed-cart",
            "cor3.2",
            "cart(complete:2,icg:8:1,4)",
            || cartesian(&Graph::complete(2).unwrap(), &icg(&proper(8, &[1, 4])).unwrap()),
            0,
            12, // (1, 4) in product indexing
            HALF_PI,
            "pi/2",
        ),
        entry(
            "perm-shift3",
            "cor3.5",
            "cjoin(icg:8:1,4,shift:8:3)",
            || {
                let g = icg(&proper(8, &[1, 4])).unwrap();
                circulant_join(&g, &crate::circulant::circulant_permutation(8, 3), JoinLayout::Interleaved).unwrap()
            },
            0,
            15, // the partner 4 shifts to 7; (7, 1) interleaved
            HALF_PI,
            "pi/2",
        ),
        entry(
            "join2-icg8",
            "cor3.3",
            "selfjoin(icg:8:1,4,2)",
            || self_join(&icg(&proper(8, &[1, 4])).unwrap(), 2).unwrap(),
            0,
            4,
            HALF_PI,
            "pi/2",
        ),
        entry(
            "selfjoin3-icg8",
            "thm4.2",
            "selfjoin(icg:8:1,4,3)",
            || self_join(&icg(&proper(8, &[1, 4])).unwrap(), 3).unwrap(),
            0,
            4,
            HALF_PI,
            "pi/2",
        ),
        entry(
            "cube",
            "thm4.1",
            "cart(complete:2,cart(complete:2,complete:2))",
            || {
                let k2 = Graph::complete(2).unwrap();
                cartesian(&k2, &cartesian(&k2, &k2))
            },
            0,
            7,
            HALF_PI,
            "pi/2",
        ),
        entry(
            "grid-p3p3",
            "thm4.1",
            "cart(path:3,path:3)",
            || {
                let p3 = Graph::path(3).unwrap();
                cartesian(&p3, &p3)
            },
            0,
            8,
            pi_over_sqrt2(),
            "pi/sqrt2",
        ),
        entry("p3", "intro", "path:3", || Graph::path(3).unwrap(), 0, 2, pi_over_sqrt2(), "pi/sqrt2"),
        entry(
            "oct-cone",
            "cor5.2",
            "join(empty:2,icg:6:1,2)",
            || join(&Graph::empty_graph(2).unwrap(), &icg(&proper(6, &[1, 2])).unwrap()),
            0,
            1,
            HALF_PI,
            "pi/2",
        ),
        entry(
            "c4-cone",
            "cor5.2",
            "join(empty:2,empty:2)",
            || join(&Graph::empty_graph(2).unwrap(), &Graph::empty_graph(2).unwrap()),
            0,
            1,
            HALF_PI,
            "pi/2",
        ),
        entry(
            "k28-cone",
            "cor5.2",
            "join(empty:2,empty:8)",
            || join(&Graph::empty_graph(2).unwrap(), &Graph::empty_graph(8).unwrap()),
            0,
            1,
            QUARTER_PI,
            "pi/4",
        ),
        entry(
            "mixed-cone",
            "cor5.3",
            "join(empty:2,cart(cycle:6,cycle:5))",
            || {
                let base = cartesian(&Graph::cycle(6).unwrap(), &Graph::cycle(5).unwrap());
                join(&Graph::empty_graph(2).unwrap(), &base)
            },
            0,
            1,
            HALF_PI,
            "pi/2",
        ),
        entry(
            "k2-cone",
            "cor5.4",
            "join(complete:2,icg:24:1,12)",
            || join(&Graph::complete(2).unwrap(), &icg(&proper(24, &[1, 12])).unwrap()),
            0,
            1,
            HALF_PI,
            "pi/2",
        ),
    ];

    for (id, recipe, build) in [
        ("neg-k3", "complete:3", (|| Graph::complete(3).unwrap()) as fn() -> Graph),
        ("neg-c5", "cycle:5", || Graph::cycle(5).unwrap()),
        ("neg-c6", "cycle:6", || Graph::cycle(6).unwrap()),
        ("neg-k5", "icg:5:1", || icg(&proper(5, &[1])).unwrap()),
    ] {
        entries.push(CatalogEntry {
            id,
            source: "negative",
            recipe,
            build,
            a: 0,
            b: 0,
            t_star: 0.0,
            t_label: "",
            expect_pst: false,
        });
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_pst_finds_the_c4_antipode() {
        let g = Graph::cycle(4).unwrap();
        let v = check_pst(&g, 0, 2, HALF_PI).unwrap();
        assert!(v.found);
        assert!(v.antipodal);
        assert!(v.fidelity >= 1.0 - PST_TOLERANCE);
        let miss = check_pst(&g, 0, 1, HALF_PI).unwrap();
        assert!(!miss.found);
    }

    #[test]
    fn check_pst_rejects_equal_endpoints() {
        let g = Graph::cycle(4).unwrap();
        assert_eq!(check_pst(&g, 1, 1, 1.0).unwrap_err(), Error::SameVertex);
    }

    #[test]
    fn adjacent_transfer_is_not_antipodal() {
        // ICG_8({1,4}): the transfer pair (0,4) is an edge, diameter is 2
        let g = icg(&proper(8, &[1, 4])).unwrap();
        let v = check_pst(&g, 0, 4, HALF_PI).unwrap();
        assert!(v.found);
        assert!(!v.antipodal);
        assert_eq!(g.distance(0, 4), Some(1));
        assert_eq!(g.diameter(), Some(2));
    }

    #[test]
    fn search_uses_the_fast_path_for_c4() {
        let g = Graph::cycle(4).unwrap();
        let verdicts = search_pst(&g, 0, 2.0 * std::f64::consts::PI, 128).unwrap();
        let hit = verdicts.iter().find(|v| v.b == 2).unwrap();
        assert!(hit.found);
        assert!((hit.t_star - HALF_PI).abs() < 1e-12);
        assert!(verdicts.iter().filter(|v| v.found).count() == 1);
    }

    #[test]
    fn search_refines_an_off_grid_transfer_time() {
        // P3 transfers end-to-end at pi/sqrt2, never at a multiple of pi/2
        let g = Graph::path(3).unwrap();
        let verdicts = search_pst(&g, 0, 4.0, 64).unwrap();
        let hit = verdicts.iter().find(|v| v.b == 2).unwrap();
        assert!(hit.found, "fidelity only reached {}", hit.fidelity);
        // the peak is quadratically flat, so the maximizer is only
        // resolvable to about sqrt(f64 epsilon)
        assert!((hit.t_star - pi_over_sqrt2()).abs() < 1e-7);
    }

    #[test]
    fn search_reports_best_near_miss_for_negative_cases() {
        let g = Graph::cycle(5).unwrap();
        for v in search_pst(&g, 0, 4.0 * std::f64::consts::PI, 512).unwrap() {
            assert!(!v.found);
            assert!(v.fidelity < NEAR_MISS);
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(two_adic_valuation(4).unwrap(), 2);
        assert_eq!(two_adic_valuation(12).unwrap(), 2);
        assert_eq!(two_adic_valuation(16).unwrap(), 4);
        assert_eq!(two_adic_valuation(7).unwrap(), 0);
        assert_eq!(two_adic_valuation(0).unwrap_err(), Error::ZeroValuation);
    }

    #[test]
    fn octahedron_cone_satisfies_the_split_valuation_clause() {
        let c = disconnected_cone_condition(6, 4);
        assert!(c.holds);
        assert_eq!(c.delta_integer, Some(8));
        assert_eq!(c.clause, ConeClause::SplitValuations);
        assert!((c.t_star.unwrap() - HALF_PI).abs() < 1e-15);
    }

    #[test]
    fn empty_base_cones_use_the_apex_clause() {
        let c = disconnected_cone_condition(2, 0);
        assert!(c.holds);
        assert_eq!(c.delta_integer, Some(4));
        assert_eq!(c.clause, ConeClause::ApexOnly);
        assert!((c.t_star.unwrap() - HALF_PI).abs() < 1e-15);

        let k28 = disconnected_cone_condition(8, 0);
        assert!(k28.holds);
        assert!((k28.t_star.unwrap() - QUARTER_PI).abs() < 1e-15);
    }

    #[test]
    fn cone_condition_failure_clauses() {
        // n=1, k=0: Delta = sqrt(8) is irrational
        assert_eq!(disconnected_cone_condition(1, 0).clause, ConeClause::DeltaNotInteger);
        // n=16, k=4: Delta = 12 but S2(4) = S2(12)
        let c = disconnected_cone_condition(16, 4);
        assert!(!c.holds);
        assert_eq!(c.clause, ConeClause::EqualValuations);
        // n=4, k=2: Delta = 6, not a multiple of 4
        assert_eq!(disconnected_cone_condition(4, 2).clause, ConeClause::NotMultipleOfFour);
    }

    #[test]
    fn connected_cone_instance() {
        // 9-regular base on 24 vertices: k-1 = 8, Delta = 16
        let c = connected_cone_condition(24, 9).unwrap();
        assert!(c.holds);
        assert_eq!(c.delta_integer, Some(16));
        assert_eq!(c.clause, ConeClause::EightFold);
        assert_eq!(connected_cone_condition(4, 0).unwrap_err(), Error::ConeRegularity);
        // n=6, k=5: Delta = sqrt(16 + 48) = 8 but k-1 = 4
        let miss = connected_cone_condition(6, 5).unwrap();
        assert_eq!(miss.delta_integer, Some(8));
        assert_eq!(miss.clause, ConeClause::NotMultipleOfEight);
    }

    #[test]
    fn niven_classification_of_cosine_terms() {
        assert_eq!(rational_term(0, 6), Some(2)); // cos 0
        assert_eq!(rational_term(3, 6), Some(-2)); // cos pi
        assert_eq!(rational_term(1, 4), Some(0)); // cos pi/2
        assert_eq!(rational_term(1, 6), Some(1)); // cos pi/3
        assert_eq!(rational_term(2, 6), Some(-1)); // cos 2pi/3
        assert_eq!(rational_term(1, 5), None);
        assert_eq!(rational_term(1, 8), None);
        assert_eq!(rational_term(3, 7), None);
    }

    #[test]
    fn closed_form_values_match_their_classification() {
        for n in [3, 4, 5, 6, 7, 8, 12] {
            for form in cycle_closed_forms(n) {
                let v = form.value();
                match form.classify() {
                    Rationality::Integer(i) => assert!((v - i as f64).abs() < 1e-12),
                    Rationality::Irrational => {
                        assert!((v - v.round()).abs() > 1e-6, "{form} claimed irrational but is {v}")
                    }
                    Rationality::Unknown => unreachable!("single terms always classify"),
                }
            }
        }
    }

    #[test]
    fn integral_spectrum_certifies_periodicity_numerically() {
        let g = icg(&proper(8, &[1, 4])).unwrap();
        let cert = periodicity_certificate(&g, None);
        assert_eq!(cert.verdict, Periodicity::PeriodicIntegral);
        assert!(cert.integer_evidence.contains(&5));
    }

    #[test]
    fn irrational_spectrum_without_closed_forms_is_inconclusive() {
        let g = Graph::path(3).unwrap();
        let cert = periodicity_certificate(&g, None);
        assert_eq!(cert.verdict, Periodicity::Inconclusive);
        assert!(cert.note.is_some());
    }

    #[test]
    fn mismatched_closed_forms_are_rejected() {
        let g = Graph::cycle(4).unwrap();
        let wrong = vec![ClosedForm::Integer(3); 4];
        let cert = periodicity_certificate(&g, Some(&wrong));
        assert_eq!(cert.verdict, Periodicity::Inconclusive);
    }

    #[test]
    fn cycle_closed_forms_certify_the_cycle_spectra() {
        let c6 = periodicity_certificate(&Graph::cycle(6).unwrap(), Some(&cycle_closed_forms(6)));
        assert_eq!(c6.verdict, Periodicity::PeriodicIntegral);
        assert_eq!(c6.integer_evidence, vec![-2, -1, 1, 2]);

        let c5 = periodicity_certificate(&Graph::cycle(5).unwrap(), Some(&cycle_closed_forms(5)));
        assert_eq!(c5.verdict, Periodicity::NonperiodicMixedSpectrum);
        assert_eq!(c5.integer_evidence, vec![2]);
        assert!(!c5.irrational_evidence.is_empty());
    }

    #[test]
    fn catalog_recipes_and_pairs_are_in_range() {
        let catalog = family_catalog();
        assert!(catalog.len() >= 25);
        for entry in &catalog {
            let g = (entry.build)();
            assert!(entry.a < g.order(), "{}", entry.id);
            assert!(entry.b < g.order(), "{}", entry.id);
            if entry.expect_pst {
                assert_ne!(entry.a, entry.b, "{}", entry.id);
                assert!(entry.t_star > 0.0, "{}", entry.id);
            }
        }
        let mut ids: Vec<_> = catalog.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), catalog.len(), "catalog ids must be unique");
    }
}
