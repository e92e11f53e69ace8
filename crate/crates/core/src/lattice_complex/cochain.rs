use num_complex::Complex64;
use rand::Rng;

use super::CubicalComplex;
use crate::lie_algebra::{self, AlgElement, ALG_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A matrix-valued k-cochain: one `n x n` complex block per k-cell.
///
/// Cochains produced by the Lie-algebraic operations (coboundary, Hodge star,
/// bracket cup, covariant derivatives) stay in su(n). The plain associative
/// cup product can leave it and is the only operation that does.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    degree: usize,
    n: usize,
    data: Vec<Complex64>,
}

impl Cochain {
    pub fn zeros(cx: &CubicalComplex, degree: usize, n: usize) -> Self {
        assert!(degree <= 3, "cochain degree {degree} out of range");
        Cochain { degree, n, data: vec![ZERO; cx.n_cells(degree) * n * n] }
    }

    /// Builds a cochain from per-cell blocks; every block must lie in su(n).
    pub fn from_fn(
        cx: &CubicalComplex,
        degree: usize,
        n: usize,
        mut f: impl FnMut(usize, u8) -> AlgElement,
    ) -> Self {
        let mut c = Self::zeros(cx, degree, n);
        for cell in 0..cx.n_cells(degree) {
            let (v, mask) = cx.cell_coords(degree, cell);
            let x = f(v, mask);
            assert_eq!(x.rank(), n);
            c.block_mut(cell).copy_from_slice(x.as_slice());
        }
        c
    }

    /// Wraps raw row-major data without checking the su(n) invariant.
    pub fn from_raw(degree: usize, n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len() % (n * n), 0);
        Cochain { degree, n, data }
    }

    /// i.i.d. su(n) values scaled by `amplitude`.
    pub fn random(cx: &CubicalComplex, degree: usize, n: usize, amplitude: f64, rng: &mut impl Rng) -> Self {
        Self::from_fn(cx, degree, n, |_, _| lie_algebra::random_su_with(n, rng).scale(amplitude))
    }

    /// Random values in the commuting diagonal subalgebra spanned by
    /// `i diag(1, -1, 0, ...)`.
    pub fn random_abelian(
        cx: &CubicalComplex,
        degree: usize,
        n: usize,
        amplitude: f64,
        rng: &mut impl Rng,
    ) -> Self {
        let mut c = Self::zeros(cx, degree, n);
        for cell in 0..cx.n_cells(degree) {
            let t = amplitude * rng.gen_range(-1.0..1.0);
            let b = c.block_mut(cell);
            b[0] = Complex64::new(0.0, t);
            b[n + 1] = Complex64::new(0.0, -t);
        }
        c
    }

    /// Every cell carries the same algebra element.
    pub fn constant(cx: &CubicalComplex, degree: usize, x: &AlgElement) -> Self {
        Self::from_fn(cx, degree, x.rank(), |_, _| x.clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn n_cells(&self) -> usize {
        self.data.len() / (self.n * self.n)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    #[inline]
    pub fn block(&self, cell: usize) -> &[Complex64] {
        let m = self.n * self.n;
        &self.data[cell * m..(cell + 1) * m]
    }

    #[inline]
    pub fn block_mut(&mut self, cell: usize) -> &mut [Complex64] {
        let m = self.n * self.n;
        &mut self.data[cell * m..(cell + 1) * m]
    }

    pub fn element(&self, cell: usize) -> AlgElement {
        AlgElement::project(self.n, self.block(cell).to_vec())
    }

    pub fn zeros_like(&self) -> Self {
        Cochain { degree: self.degree, n: self.n, data: vec![ZERO; self.data.len()] }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.data.len(), other.data.len(), "shape mismatch");
    }

    /// `self += s * other`
    pub fn axpy(&mut self, s: f64, other: &Self) {
        self.check_same(other);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Cochain { degree: self.degree, n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_mut(&mut self, s: f64) {
        for z in &mut self.data {
            *z *= s;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1.0)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Worst per-cell distance from su(n) in max-norm.
    pub fn su_defect(&self) -> f64 {
        (0..self.n_cells())
            .map(|c| lie_algebra::su_defect_block(self.block(c), self.n))
            .fold(0.0, f64::max)
    }

    /// True when every block is in su(n) to [`ALG_TOL`] relative to the
    /// largest entry.
    pub fn in_algebra(&self) -> bool {
        self.su_defect() <= ALG_TOL * (1.0 + self.max_abs())
    }

    /// Orthogonal projection of every block onto su(n).
    pub fn project_su(&mut self) {
        let n = self.n;
        for c in 0..self.n_cells() {
            lie_algebra::project_su_block(self.block_mut(c), n);
        }
    }

    /// Coordinates in the orthonormal basis of su(n), cell by cell. The
    /// Euclidean dot product of two such vectors equals the per-cell sum of
    /// `-tr(ab)`, i.e. the inner product without the volume factor.
    pub fn to_real(&self) -> Vec<f64> {
        let basis = lie_algebra::orthonormal_basis(self.n);
        let mut out = Vec::with_capacity(self.n_cells() * basis.len());
        for c in 0..self.n_cells() {
            let b = self.block(c);
            out.extend(basis.iter().map(|e| lie_algebra::inner_block(b, e.as_slice(), self.n)));
        }
        out
    }

    /// Inverse of [`to_real`](Self::to_real).
    pub fn from_real(cx: &CubicalComplex, degree: usize, n: usize, coords: &[f64]) -> Self {
        let basis = lie_algebra::orthonormal_basis(n);
        let m = basis.len();
        assert_eq!(coords.len(), cx.n_cells(degree) * m, "coordinate vector has the wrong length");
        let mut c = Self::zeros(cx, degree, n);
        for cell in 0..cx.n_cells(degree) {
            let dst = c.block_mut(cell);
            for (t, e) in coords[cell * m..(cell + 1) * m].iter().zip(&basis) {
                for (d, x) in dst.iter_mut().zip(e.as_slice()) {
                    *d += x * *t;
                }
            }
        }
        c
    }
}
