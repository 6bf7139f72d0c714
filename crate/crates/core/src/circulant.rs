//! Circulant matrices, gcd classes, and integral circulant graphs.
//!
//! A circulant matrix is described by its first row `a`; entry `(j, k)` is
//! `a[(k - j) mod n]`. When the row satisfies `a[0] = 0` and `a[j] = a[n-j]`
//! the matrix is a graph adjacency. Eigenvalues come straight from the
//! Fourier basis: the one indexed by `j` is `sum_k a[(n-k) mod n] w^(jk)`
//! with `w = exp(2*pi*i/n)`; for symmetric rows this collapses to a real
//! cosine sum, which is how we evaluate it to keep the imaginary part at
//! exactly zero.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Matrix;

/// First row of a boolean circulant matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CirculantSpec {
    row: Vec<bool>,
}

impl CirculantSpec {
    pub fn from_row(row: Vec<bool>) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(CirculantSpec { row })
    }

    pub fn zero(n: usize) -> Self {
        CirculantSpec { row: vec![false; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut row = vec![false; n];
        row[0] = true;
        CirculantSpec { row }
    }

    pub fn all_ones(n: usize) -> Self {
        CirculantSpec { row: vec![true; n] }
    }

    pub fn order(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[bool] {
        &self.row
    }

    pub fn ones(&self) -> usize {
        self.row.iter().filter(|&&b| b).count()
    }

    /// `row[j] == row[n-1-j]` for every `j`. This is the condition under
    /// which a two-copy circulant join stays circulant; note it differs
    /// from row symmetry `row[j] == row[(n-j) mod n]`.
    pub fn is_palindrome(&self) -> bool {
        let n = self.order();
        (0..n).all(|j| self.row[j] == self.row[n - 1 - j])
    }

    /// Row symmetry `row[j] == row[(n-j) mod n]`; together with a zero
    /// leading entry it makes the matrix a graph adjacency.
    pub fn is_symmetric_row(&self) -> bool {
        let n = self.order();
        (1..n).all(|j| self.row[j] == self.row[n - j])
    }

    /// First row of the transpose, also circulant.
    pub fn transpose(&self) -> CirculantSpec {
        let n = self.order();
        let row = (0..n).map(|j| self.row[(n - j) % n]).collect();
        CirculantSpec { row }
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.order();
        Matrix::from_fn(n, |j, k| if self.row[(n + k - j) % n] { 1.0 } else { 0.0 })
    }

    /// Graph with this row as its adjacency generator. Requires a zero
    /// diagonal and a symmetric row.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.row[0] || !self.is_symmetric_row() {
            return Err(Error::NotCirculant);
        }
        let n = self.order();
        let mut g = Graph::empty_graph(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if self.row[(v - u) % n] {
                    g.set_edge(u, v, true);
                }
            }
        }
        Ok(g)
    }
}

/// Shift matrix: row with a single one at `shift`. Applied to a basis
/// vector `|v>` it gives `|v - shift mod n>`.
pub fn circulant_permutation(n: usize, shift: usize) -> CirculantSpec {
    let mut row = vec![false; n];
    row[shift % n] = true;
    CirculantSpec { row }
}

/// Eigenvalues in Fourier-index order `j = 0..n`.
pub fn circulant_eigenvalues(spec: &CirculantSpec) -> Vec<Complex64> {
    let n = spec.order();
    let step = 2.0 * std::f64::consts::PI / n as f64;
    if spec.is_symmetric_row() {
        // real cosine sums: lambda_j = sum_k a_k cos(2 pi j k / n)
        (0..n)
            .map(|j| {
                let mut re = 0.0;
                for k in 0..n {
                    if spec.row()[k] {
                        re += (step * ((j * k) % n) as f64).cos();
                    }
                }
                Complex64::new(re, 0.0)
            })
            .collect()
    } else {
        (0..n)
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    if spec.row()[(n - k) % n] {
                        let angle = step * ((j * k) % n) as f64;
                        acc += Complex64::new(angle.cos(), angle.sin());
                    }
                }
                acc
            })
            .collect()
    }
}

/// Extract the circulant row of a graph when it has one.
pub fn as_circulant(g: &Graph) -> Option<CirculantSpec> {
    let n = g.order();
    let row: Vec<bool> = (0..n).map(|k| k != 0 && g.has_edge(0, k)).collect();
    for j in 0..n {
        for k in 0..n {
            let expected = if j == k { false } else { row[(n + k - j) % n] };
            if g.has_edge(j, k) != expected {
                return None;
            }
        }
    }
    Some(CirculantSpec { row })
}

/// Set of divisors of `n`, the divisor-class index for integral circulants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorSet {
    n: u64,
    divisors: BTreeSet<u64>,
}

impl DivisorSet {
    /// Proper divisors only: every element divides `n` and is `< n`.
    pub fn proper(n: u64, divisors: impl IntoIterator<Item = u64>) -> Result<Self> {
        let divisors: BTreeSet<u64> = divisors.into_iter().collect();
        for &d in &divisors {
            if d == 0 || !n.is_multiple_of(d) {
                return Err(Error::NotADivisor { n, d });
            }
            if d >= n {
                return Err(Error::NotProperDivisor { n, d });
            }
        }
        Ok(DivisorSet { n, divisors })
    }

    /// Extended variant: `n` itself is admitted as an element.
    pub fn extended(n: u64, divisors: impl IntoIterator<Item = u64>) -> Result<Self> {
        let divisors: BTreeSet<u64> = divisors.into_iter().collect();
        for &d in &divisors {
            if d == 0 || !n.is_multiple_of(d) {
                return Err(Error::NotADivisor { n, d });
            }
        }
        Ok(DivisorSet { n, divisors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn divisors(&self) -> impl Iterator<Item = u64> + '_ {
        self.divisors.iter().copied()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.divisors.contains(&d)
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All proper divisors of `n` (that is, `d | n` with `1 <= d < n`).
pub fn proper_divisors(n: u64) -> Vec<u64> {
    (1..n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// All divisors of `n` including `n` itself.
pub fn all_divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Residues `k` in `[1, n)` with `gcd(n, k) = d`. Requires `d | n`, `d < n`.
pub fn gcd_class(n: u64, d: u64) -> Result<BTreeSet<u64>> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { n, d });
    }
    if d >= n {
        return Err(Error::NotProperDivisor { n, d });
    }
    Ok((1..n).filter(|&k| gcd(n, k) == d).collect())
}

/// Integral circulant graph: connection set is the union of the gcd
/// classes named by `d`.
pub fn icg(d: &DivisorSet) -> Result<Graph> {
    let n = d.n();
    for div in d.divisors() {
        if div >= n {
            return Err(Error::NotProperDivisor { n, d: div });
        }
    }
    let mut connection = BTreeSet::new();
    for div in d.divisors() {
        connection.extend(gcd_class(n, div)?);
    }
    circulant_graph(n as usize, &connection.into_iter().map(|k| k as usize).collect::<Vec<_>>())
}

/// Circulant graph from an explicit connection set (must be symmetric:
/// `k` in the set iff `n - k` is).
pub fn circulant_graph(n: usize, connection: &[usize]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut row = vec![false; n];
    for &k in connection {
        let k = k % n;
        if k == 0 {
            return Err(Error::NotCirculant);
        }
        row[k] = true;
    }
    CirculantSpec::from_row(row)?.to_graph()
}

/// Recover the divisor set of an integral circulant graph. `None` when the
/// graph is circulant but its connection set is not a union of gcd classes;
/// an error when it is not circulant at all.
pub fn integrality_decomposition(g: &Graph) -> Result<Option<DivisorSet>> {
    let spec = as_circulant(g).ok_or(Error::NotCirculant)?;
    let n = g.order() as u64;
    let connection: BTreeSet<u64> =
        (1..n).filter(|&k| spec.row()[k as usize]).collect();
    let classes: BTreeSet<u64> = connection.iter().map(|&k| gcd(n, k)).collect();
    let mut union = BTreeSet::new();
    for &d in &classes {
        union.extend(gcd_class(n, d)?);
    }
    if union == connection {
        Ok(Some(DivisorSet::proper(n, classes)?))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_class_examples() {
        assert_eq!(gcd_class(12, 2).unwrap(), BTreeSet::from([2, 10]));
        assert_eq!(gcd_class(8, 1).unwrap(), BTreeSet::from([1, 3, 5, 7]));
        assert_eq!(gcd_class(8, 4).unwrap(), BTreeSet::from([4]));
        assert!(gcd_class(12, 5).is_err());
        assert!(gcd_class(12, 12).is_err());
    }

    #[test]
    fn icg_8_14_is_5_regular() {
        let d = DivisorSet::proper(8, [1, 4]).unwrap();
        let g = icg(&d).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.regularity(), Some(5));
        // connection set {1,3,5,7,4}
        assert!(g.has_edge(0, 4));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn icg_5_1_is_complete() {
        let d = DivisorSet::proper(5, [1]).unwrap();
        assert_eq!(icg(&d).unwrap(), Graph::complete(5).unwrap());
    }

    #[test]
    fn divisor_set_validation() {
        assert!(DivisorSet::proper(8, [3]).is_err());
        assert!(DivisorSet::proper(8, [8]).is_err());
        assert!(DivisorSet::extended(8, [8]).is_ok());
        assert!(DivisorSet::extended(8, [0]).is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let d = DivisorSet::proper(48, [2, 12, 3]).unwrap();
        let g = icg(&d).unwrap();
        let back = integrality_decomposition(&g).unwrap().unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn non_integral_circulant_has_no_decomposition() {
        // connection set {1,4} of Z_5 is not closed under gcd classes
        let g = circulant_graph(5, &[1, 4]).unwrap();
        assert_eq!(integrality_decomposition(&g).unwrap(), None);
    }

    #[test]
    fn non_circulant_input_is_rejected() {
        let p = Graph::path(4).unwrap();
        assert_eq!(integrality_decomposition(&p), Err(Error::NotCirculant));
    }

    #[test]
    fn cycle_eigenvalues_are_cosines() {
        let spec = as_circulant(&Graph::cycle(6).unwrap()).unwrap();
        let mut eig: Vec<f64> = circulant_eigenvalues(&spec).iter().map(|z| z.re).collect();
        for z in circulant_eigenvalues(&spec) {
            assert_eq!(z.im, 0.0);
        }
        eig.sort_by(f64::total_cmp);
        let expect = [-2.0, -1.0, -1.0, 1.0, 1.0, 2.0];
        for (a, b) in eig.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{eig:?}");
        }
    }

    #[test]
    fn shift_matrix_moves_basis_vectors_down() {
        let c = circulant_permutation(8, 3).to_matrix();
        // column v has its one in row v-3 mod 8
        for v in 0..8 {
            for j in 0..8 {
                let expect = j == (v + 8 - 3) % 8;
                assert_eq!(c.get(j, v) == 1.0, expect);
            }
        }
    }

    #[test]
    fn palindrome_and_symmetry_are_different_conditions() {
        assert!(!CirculantSpec::identity(4).is_palindrome());
        assert!(CirculantSpec::identity(4).is_symmetric_row());
        assert!(CirculantSpec::all_ones(6).is_palindrome());
        let s = CirculantSpec::from_row(vec![false, true, false, false, false, false, true, false]).unwrap();
        assert!(s.is_palindrome());
        assert!(!s.is_symmetric_row());
    }

    #[test]
    fn transpose_row() {
        let s = circulant_permutation(5, 2);
        let t = s.transpose();
        assert!(t.row()[3]);
        assert_eq!(t.ones(), 1);
        let prod = s.to_matrix().mul(&t.to_matrix());
        assert_eq!(prod.max_abs_diff(&Matrix::identity(5)), 0.0);
    }

    #[test]
    fn as_circulant_detects_structure() {
        assert!(as_circulant(&Graph::cycle(7).unwrap()).is_some());
        assert!(as_circulant(&Graph::path(4).unwrap()).is_none());
    }
}
