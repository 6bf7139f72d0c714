//! Spectral walk engine.
//!
//! The continuous-time walk on a graph with adjacency `A` evolves an initial
//! basis state by `exp(-itA)`. Everything here goes through one symmetric
//! eigendecomposition: the transfer amplitude from `a` to `b` is
//! `sum_k exp(-it l_k) <b|v_k><v_k|a>`, and spectral maps `f(A)` are
//! assembled the same way with `f(l_k)` in place of the phase.
//!
//! Eigenpairs come from a cyclic Jacobi iteration. It is cubic with a
//! noticeable constant, but the graphs in scope stay well under a thousand
//! vertices and Jacobi's eigenvectors are orthogonal to working precision,
//! which the downstream tolerances lean on.

use num_complex::Complex64;

use crate::graph::{Graph, VertexId};
use crate::linalg::Matrix;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a real symmetric matrix: eigenvalues ascending,
/// eigenvectors as the matching columns of an orthogonal matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
}

impl Spectrum {
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Component `i` of eigenvector `k`.
    #[inline]
    pub fn vector_component(&self, k: usize, i: usize) -> f64 {
        self.eigenvectors.get(i, k)
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        (0..self.order()).map(|i| self.vector_component(k, i)).collect()
    }

    /// Largest eigenvalue magnitude, the spectral norm of the decomposed
    /// matrix.
    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, l| m.max(l.abs()))
    }

    /// Transfer amplitude `<b| exp(-itA) |a>`.
    pub fn amplitude(&self, a: VertexId, b: VertexId, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            let weight = self.vector_component(k, b) * self.vector_component(k, a);
            if weight != 0.0 {
                acc += Complex64::from_polar(weight, -t * l);
            }
        }
        acc
    }

    /// Full state `exp(-itA) |a>`.
    pub fn amplitude_row(&self, a: VertexId, t: f64) -> Vec<Complex64> {
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -t * l);
            let va = self.vector_component(k, a);
            if va == 0.0 {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                *slot += phase * (va * self.vector_component(k, i));
            }
        }
        out
    }

    /// Spectral map: `sum_k f(l_k) v_k v_k^T`.
    pub fn matrix_function(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.order();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let acc: f64 = fl
                    .iter()
                    .enumerate()
                    .map(|(k, &w)| w * self.vector_component(k, i) * self.vector_component(k, j))
                    .sum();
                out.set(i, j, acc);
                out.set(j, i, acc);
            }
        }
        out
    }

    /// Residual of eigenpair `k` against the original matrix.
    pub fn residual(&self, a: &Matrix, k: usize) -> f64 {
        let n = self.order();
        let l = self.eigenvalues[k];
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += a.get(i, j) * self.vector_component(k, j);
            }
            worst = worst.max((acc - l * self.vector_component(k, i)).abs());
        }
        worst
    }

    /// Largest deviation of `V^T V` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.order();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for l in 0..=k {
                let mut dot = 0.0;
                for i in 0..n {
                    dot += self.vector_component(k, i) * self.vector_component(l, i);
                }
                let target = if k == l { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Decompose a graph adjacency matrix.
pub fn decompose(g: &Graph) -> Spectrum {
    decompose_sym(&g.adjacency_matrix())
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Panics if the off-diagonal mass fails to vanish within [`MAX_SWEEPS`]
/// sweeps; for symmetric input that indicates a defect, not a data error.
pub fn decompose_sym(a: &Matrix) -> Spectrum {
    let n = a.order();
    debug_assert!(a.is_symmetric(0.0), "input must be symmetric");
    if n == 1 {
        return Spectrum { eigenvalues: vec![a.get(0, 0)], eigenvectors: Matrix::identity(1) };
    }

    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let mut d: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n - 1 {
            for q in p + 1..n {
                off += m.get(p, q).abs();
            }
        }
        if off == 0.0 {
            return finish(d, v);
        }
        let thresh = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };

        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m.get(p, q);
                let g = 100.0 * apq.abs();
                // after a few sweeps, rotations on entries that are
                // negligible against both diagonals can be skipped outright
                if sweep > 3 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    m.set(p, q, 0.0);
                    continue;
                }
                if apq.abs() <= thresh {
                    continue;
                }
                let h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                m.set(p, q, 0.0);

                let rotate = |mat: &mut Matrix, i: usize, j: usize, k: usize, l: usize| {
                    let g = mat.get(i, j);
                    let h = mat.get(k, l);
                    mat.set(i, j, g - s * (h + g * tau));
                    mat.set(k, l, h + s * (g - h * tau));
                };
                for j in 0..p {
                    rotate(&mut m, j, p, j, q);
                }
                for j in p + 1..q {
                    rotate(&mut m, p, j, j, q);
                }
                for j in q + 1..n {
                    rotate(&mut m, p, j, q, j);
                }
                for j in 0..n {
                    rotate(&mut v, j, p, j, q);
                }
            }
        }

        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    panic!("jacobi iteration failed to converge after {MAX_SWEEPS} sweeps");
}

fn finish(d: Vec<f64>, v: Matrix) -> Spectrum {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let eigenvectors = Matrix::from_fn(n, |i, k| v.get(i, order[k]));
    Spectrum { eigenvalues, eigenvectors }
}

/// One transfer amplitude with its evaluation context.
#[derive(Copy, Clone, Debug)]
pub struct Amplitude {
    pub a: VertexId,
    pub b: VertexId,
    pub t: f64,
    pub value: Complex64,
}

impl Amplitude {
    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }
}

/// Amplitude for a single pair; decomposes on every call, so hold a
/// [`Spectrum`] when sweeping many times or targets.
pub fn amplitude(g: &Graph, a: VertexId, b: VertexId, t: f64) -> Amplitude {
    let value = decompose(g).amplitude(a, b, t);
    debug_assert!(value.norm() <= 1.0 + 1e-9, "amplitude magnitude above 1");
    Amplitude { a, b, t, value }
}

pub fn amplitude_row(g: &Graph, a: VertexId, t: f64) -> Vec<Complex64> {
    decompose(g).amplitude_row(a, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{circulant_eigenvalues, as_circulant};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn path3_spectrum() {
        let s = decompose(&Graph::path(3).unwrap());
        let r2 = 2.0_f64.sqrt();
        let expect = [-r2, 0.0, r2];
        for (a, b) in s.eigenvalues().iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(s.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn cycle6_spectrum_matches_fourier_values() {
        let g = Graph::cycle(6).unwrap();
        let s = decompose(&g);
        let mut fourier: Vec<f64> = circulant_eigenvalues(&as_circulant(&g).unwrap())
            .iter()
            .map(|z| z.re)
            .collect();
        fourier.sort_by(f64::total_cmp);
        for (a, b) in s.eigenvalues().iter().zip(fourier) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_residuals_on_a_dense_case() {
        let g = crate::circulant::icg(&crate::circulant::DivisorSet::proper(24, [1, 6]).unwrap()).unwrap();
        let a = g.adjacency_matrix();
        let s = decompose_sym(&a);
        let scale = 1.0 + s.spectral_norm();
        for k in 0..s.order() {
            assert!(s.residual(&a, k) <= 1e-10 * scale);
        }
        assert!(s.orthonormality_defect() <= 1e-10);
    }

    #[test]
    fn k2_amplitude_is_cos_minus_i_sin() {
        let g = Graph::complete(2).unwrap();
        let s = decompose(&g);
        for t in [0.3, 1.0, PI / 2.0, 2.7] {
            let diag = s.amplitude(0, 0, t);
            let off = s.amplitude(0, 1, t);
            assert!((diag - Complex64::new(t.cos(), 0.0)).norm() < 1e-13);
            assert!((off - Complex64::new(0.0, -t.sin())).norm() < 1e-13);
        }
        let a = amplitude(&g, 0, 1, PI / 2.0);
        assert!((a.value - Complex64::new(0.0, -1.0)).norm() < 1e-13);
    }

    #[test]
    fn c4_puts_all_mass_on_the_antipode_at_half_pi() {
        let g = Graph::cycle(4).unwrap();
        let row = amplitude_row(&g, 0, PI / 2.0);
        assert!(row[2].norm() > 1.0 - 1e-12);
        for v in [0, 1, 3] {
            assert!(row[v].norm() < 1e-12);
        }
    }

    #[test]
    fn matrix_function_identity_and_square() {
        let g = Graph::cycle(5).unwrap();
        let a = g.adjacency_matrix();
        let s = decompose_sym(&a);
        assert!(s.matrix_function(|x| x).max_abs_diff(&a) < 1e-12);
        assert!(s.matrix_function(|x| x * x).max_abs_diff(&a.mul(&a)) < 1e-12);
        assert!(s.matrix_function(|_| 1.0).max_abs_diff(&Matrix::identity(5)) < 1e-12);
    }

    #[test]
    fn amplitude_row_agrees_with_single_amplitudes() {
        let g = Graph::path(5).unwrap();
        let s = decompose(&g);
        let row = s.amplitude_row(1, 0.9);
        for (b, &entry) in row.iter().enumerate() {
            assert!((entry - s.amplitude(1, b, 0.9)).norm() < 1e-13);
        }
    }

    #[test]
    fn single_vertex_walk_is_trivial() {
        let g = Graph::empty_graph(1).unwrap();
        let s = decompose(&g);
        assert_eq!(s.eigenvalues(), &[0.0]);
        assert!((s.amplitude(0, 0, 2.3) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
