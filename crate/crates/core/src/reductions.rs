//! Closed-form transfer amplitudes for the join-like constructions.
//!
//! Each routine here computes a composite-graph amplitude from spectral
//! data of the operands alone, without ever building or decomposing the
//! composite. They are the interesting half of a dual-route check: the
//! test suites compare every formula against the brute-force engine on
//! the assembled graph, and the acceptance gate pins those comparisons
//! at 1e-9 over a fixed time grid.

use num_complex::Complex64;

use crate::circulant::{circulant_eigenvalues, CirculantSpec, DivisorSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::operators::{connector, JoinLayout};
use crate::walk::{decompose, decompose_sym, Amplitude};

/// Derived spectral quantities for a join `G + H` of an `m`-vertex
/// `k_g`-regular graph with an `n`-vertex `k_h`-regular graph.
///
/// The two non-inherited eigenvalues of the join are `lambda_plus` and
/// `lambda_minus`, with eigenvectors that are constant on each side; the
/// side weights are `alpha_plus`/`alpha_minus` and the normalizers
/// `l_plus`/`l_minus`.
#[derive(Copy, Clone, Debug)]
pub struct JoinSpectralData {
    pub m: usize,
    pub k_g: usize,
    pub n: usize,
    pub k_h: usize,
    /// `k_g - k_h`
    pub delta: f64,
    /// `k_g + k_h`
    pub delta_hat: f64,
    /// `sqrt(delta^2 + 4mn)`
    pub big_delta: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub l_plus: f64,
    pub l_minus: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl JoinSpectralData {
    pub fn new(m: usize, k_g: usize, n: usize, k_h: usize) -> Self {
        let delta = k_g as f64 - k_h as f64;
        let delta_hat = k_g as f64 + k_h as f64;
        let big_delta = (delta * delta + 4.0 * (m * n) as f64).sqrt();
        let alpha_plus = (delta + big_delta) / (2.0 * m as f64);
        let alpha_minus = (delta - big_delta) / (2.0 * m as f64);
        let l_plus = m as f64 * alpha_plus * alpha_plus + n as f64;
        let l_minus = m as f64 * alpha_minus * alpha_minus + n as f64;
        JoinSpectralData {
            m,
            k_g,
            n,
            k_h,
            delta,
            delta_hat,
            big_delta,
            alpha_plus,
            alpha_minus,
            l_plus,
            l_minus,
            lambda_plus: (delta_hat + big_delta) / 2.0,
            lambda_minus: (delta_hat - big_delta) / 2.0,
        }
    }
}

fn require_regular(g: &Graph) -> Result<usize> {
    g.regularity().ok_or(Error::NotRegular)
}

/// Join amplitude between two vertices of the first (regular) operand:
/// the operand's own amplitude plus a rank-one correction driven by the
/// join spectral data.
pub fn join_amplitude(g: &Graph, h: &Graph, a: VertexId, b: VertexId, t: f64) -> Result<Amplitude> {
    let k_g = require_regular(g)?;
    let k_h = require_regular(h)?;
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    let data = JoinSpectralData::new(g.order(), k_g, h.order(), k_h);
    let base = decompose(g).amplitude(a, b, t);
    let value = base + join_correction(&data, t);
    Ok(Amplitude { a, b, t, value })
}

/// The correction term added to the operand amplitude inside a join.
pub fn join_correction(data: &JoinSpectralData, t: f64) -> Complex64 {
    let i = Complex64::i();
    let half = 0.5 * data.big_delta * t;
    let inner = Complex64::from_polar(1.0, 0.5 * data.delta * t)
        * (Complex64::new(half.cos(), 0.0) - i * (data.delta / data.big_delta) * half.sin());
    Complex64::from_polar(1.0, -t * data.k_g as f64) / (data.m as f64) * (inner - 1.0)
}

/// Amplitude between two vertices in the same copy of the iterated join
/// of `m` copies of a regular graph `g`.
pub fn self_join_amplitude(g: &Graph, m: usize, a: VertexId, b: VertexId, t: f64) -> Result<Amplitude> {
    if m == 0 {
        return Err(Error::ZeroCopies);
    }
    require_regular(g)?;
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    let n = g.order() as f64;
    let spectrum = decompose(g);
    let base = spectrum.amplitude(a, b, t);
    // <1| exp(-itA) |a>: total amplitude mass reaching the copy
    let mass: Complex64 = spectrum.amplitude_row(a, t).iter().sum();
    let mf = m as f64;
    let bracket = ((mf - 1.0) * (Complex64::from_polar(1.0, t * n) - 1.0)
        + Complex64::from_polar(1.0, -t * (mf - 1.0) * n)
        - 1.0)
        / (mf * n);
    Ok(Amplitude { a, b, t, value: base + bracket * mass })
}

/// Amplitude from `(a, 0)` to `(b, s)` in the two-copy circulant join of
/// `g` through `c`, computed from the operand walk and spectral maps of
/// `B = C^T C`.
///
/// The copy-0 branch applies `cos(t sqrt(B))` to the walked state; the
/// copy-1 branch applies `sin(t sqrt(B)) / sqrt(B) . C^T`, where the
/// spectral map `sin(t sqrt(x)) / sqrt(x)` is continuously extended by
/// `t` at `x = 0` so singular connectors need no special casing.
/// The reported pair uses interleaved composite indices.
pub fn circulant_join_amplitude(
    g: &Graph,
    c: &CirculantSpec,
    a: VertexId,
    s: usize,
    b: VertexId,
    t: f64,
) -> Result<Amplitude> {
    let n = g.order();
    if c.order() != n {
        return Err(Error::OrderMismatch { left: n, right: c.order() });
    }
    if s > 1 {
        return Err(Error::CopyIndex(s));
    }
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    let walked = decompose(g).amplitude_row(a, t);
    let cmat = c.to_matrix();
    let bmat = cmat.transpose().mul(&cmat);
    let bspec = decompose_sym(&bmat);
    let value = if s == 0 {
        let cos_map = bspec.matrix_function(|x| (t * x.max(0.0).sqrt()).cos());
        cos_map.mul_cvec(&walked)[b]
    } else {
        let sinc_map = bspec.matrix_function(|x| {
            let x = x.max(0.0);
            if x < 1e-14 {
                t
            } else {
                (t * x.sqrt()).sin() / x.sqrt()
            }
        });
        let pulled = cmat.transpose().mul_cvec(&walked);
        -Complex64::i() * sinc_map.mul_cvec(&pulled)[b]
    };
    let composite_b = JoinLayout::Interleaved.index(n, b, s);
    Ok(Amplitude { a: JoinLayout::Interleaved.index(n, a, 0), b: composite_b, t, value })
}

/// Outcome of checking a structured connector's eigenvalue moduli against
/// the power-of-two lattice they must land on.
#[derive(Clone, Debug)]
pub struct ConnectorEigenvalueCheck {
    /// `2^u`, the even part of the connector order.
    pub modulus: u64,
    /// Largest distance from any `|lambda_k|` to a multiple of the modulus.
    pub max_deviation: f64,
    pub passed: bool,
}

/// Verify that every eigenvalue of the structured connector for `(n, q)`
/// has modulus within `1e-9` of a multiple of `2^u` where `n = 2^u * m`.
/// This is the property that makes the composite transfer work at odd
/// multiples of `pi/2`.
pub fn connector_eigenvalue_check(n: usize, q: &DivisorSet) -> Result<ConnectorEigenvalueCheck> {
    let spec = connector(n, q)?;
    let modulus = 1u64 << (n as u64).trailing_zeros();
    let mut max_deviation: f64 = 0.0;
    for lambda in circulant_eigenvalues(&spec) {
        let m = lambda.norm() / modulus as f64;
        max_deviation = max_deviation.max((m - m.round()).abs() * modulus as f64);
    }
    Ok(ConnectorEigenvalueCheck { modulus, max_deviation, passed: max_deviation <= 1e-9 })
}

/// Amplitude across a Cartesian product as the product of per-factor
/// amplitudes. Factor vertices combine into the mixed-radix composite
/// index used by the product constructor (last factor varies fastest).
pub fn cartesian_amplitude(factors: &[(&Graph, VertexId, VertexId)], t: f64) -> Result<Amplitude> {
    if factors.is_empty() {
        return Err(Error::NoFactors);
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut a = 0;
    let mut b = 0;
    for &(g, fa, fb) in factors {
        g.check_vertex(fa)?;
        g.check_vertex(fb)?;
        value *= decompose(g).amplitude(fa, fb, t);
        a = a * g.order() + fa;
        b = b * g.order() + fb;
    }
    Ok(Amplitude { a, b, t, value })
}
