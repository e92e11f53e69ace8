//! su(n) matrix algebra.
//!
//! Elements are stored as dense row-major `n x n` complex matrices. The slice
//! kernels at the top of the module (`mul_acc`, `commutator_acc`, ...) are
//! what the cochain code uses in its inner loops; [`AlgElement`] and
//! [`GroupElement`] are the owned value types exposed to callers.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Tolerance for the anti-Hermitian/traceless invariant (max-norm).
pub const ALG_TOL: f64 = 1e-12;
/// Tolerance for unitarity and unit determinant of group elements.
pub const GROUP_TOL: f64 = 1e-10;

/// `out += coeff * a * b` for row-major `n x n` blocks.
#[inline]
pub fn mul_acc(out: &mut [Complex64], a: &[Complex64], b: &[Complex64], n: usize, coeff: f64) {
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k] * coeff;
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
}

/// `out += coeff * (a b - b a)`.
#[inline]
pub fn commutator_acc(
    out: &mut [Complex64],
    a: &[Complex64],
    b: &[Complex64],
    n: usize,
    coeff: f64,
) {
    mul_acc(out, a, b, n, coeff);
    mul_acc(out, b, a, n, -coeff);
}

/// `-Re tr(a b)`, the positive-definite invariant form on su(n).
#[inline]
pub fn inner_block(a: &[Complex64], b: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for k in 0..n {
            s -= (a[i * n + k] * b[k * n + i]).re;
        }
    }
    s
}

/// Real part of `tr(a b)`.
#[inline]
pub fn trace_product(a: &[Complex64], b: &[Complex64], n: usize) -> f64 {
    -inner_block(a, b, n)
}

/// Max-norm distance of a block from su(n): anti-Hermitian defect plus trace.
pub fn su_defect_block(a: &[Complex64], n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..n {
        tr += a[i * n + i];
        for j in 0..n {
            let d = a[i * n + j] + a[j * n + i].conj();
            worst = worst.max(d.norm());
        }
    }
    worst.max(tr.norm() / n as f64)
}

/// Orthogonal projection of a block onto su(n), in place.
pub fn project_su_block(a: &mut [Complex64], n: usize) {
    let mut tmp = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            tmp[i * n + j] = 0.5 * (a[i * n + j] - a[j * n + i].conj());
        }
    }
    let tr: Complex64 = (0..n).map(|i| tmp[i * n + i]).sum();
    for i in 0..n {
        tmp[i * n + i] -= tr / n as f64;
    }
    a.copy_from_slice(&tmp);
}

/// An element of su(n): anti-Hermitian, traceless.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElement {
    n: usize,
    data: Vec<Complex64>,
}

impl AlgElement {
    pub fn zero(n: usize) -> Self {
        AlgElement { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    /// Wraps a row-major matrix, rejecting anything outside su(n).
    pub fn from_row_major(n: usize, data: Vec<Complex64>) -> Result<Self> {
        assert_eq!(data.len(), n * n, "expected {n}x{n} entries");
        let scale = 1.0 + data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let defect = su_defect_block(&data, n);
        if defect > ALG_TOL * scale {
            return Err(Error::NotInAlgebra { defect });
        }
        Ok(AlgElement { n, data })
    }

    /// Projects an arbitrary complex matrix onto su(n).
    pub fn project(n: usize, mut data: Vec<Complex64>) -> Self {
        project_su_block(&mut data, n);
        AlgElement { n, data }
    }

    /// Basis element `i sigma_a / 2` of su(2), `a` in 0..3.
    pub fn su2_basis(a: usize) -> Self {
        let z = Complex64::new(0.0, 0.0);
        let h = Complex64::new(0.0, 0.5);
        let data = match a {
            0 => vec![z, h, h, z],
            1 => vec![z, Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0), z],
            2 => vec![h, z, z, -h],
            _ => panic!("su(2) has three basis elements"),
        };
        AlgElement { n: 2, data }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn scale(&self, s: f64) -> Self {
        AlgElement { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgElement {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn su_defect(&self) -> f64 {
        su_defect_block(&self.data, self.n)
    }
}

/// `[x, y] = xy - yx`.
pub fn commutator(x: &AlgElement, y: &AlgElement) -> AlgElement {
    let n = x.n;
    let mut out = AlgElement::zero(n);
    commutator_acc(&mut out.data, &x.data, &y.data, n, 1.0);
    out
}

/// `<x, y> = -tr(xy)`.
pub fn inner_su(x: &AlgElement, y: &AlgElement) -> f64 {
    inner_block(&x.data, &y.data, x.n)
}

/// A special unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    n: usize,
    data: Vec<Complex64>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        GroupElement { n, data }
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); self.n * self.n];
        mul_acc(&mut data, &self.data, &other.data, self.n, 1.0);
        GroupElement { n: self.n, data }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = self.data[j * n + i].conj();
            }
        }
        GroupElement { n, data }
    }

    /// `g^{-1} x g` for a matrix block `x`.
    pub fn conjugate_block(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let inv = self.adjoint();
        let mut tmp = vec![Complex64::new(0.0, 0.0); n * n];
        mul_acc(&mut tmp, &inv.data, x, n, 1.0);
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        mul_acc(&mut out, &tmp, &self.data, n, 1.0);
        out
    }

    /// Max-norm of `U^dagger U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let id = GroupElement::identity(self.n);
        p.data.iter().zip(&id.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn determinant(&self) -> Complex64 {
        determinant(&self.data, self.n)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn determinant(a: &[Complex64], n: usize) -> Complex64 {
    // Gaussian elimination with partial pivoting.
    let mut m = a.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i * n + col].norm().total_cmp(&m[j * n + col].norm()))
            .unwrap();
        if m[piv * n + col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for j in 0..n {
                m.swap(piv * n + j, col * n + j);
            }
            det = -det;
        }
        let p = m[col * n + col];
        det *= p;
        for i in col + 1..n {
            let f = m[i * n + col] / p;
            for j in col..n {
                let v = m[col * n + j];
                m[i * n + j] -= f * v;
            }
        }
    }
    det
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm(x: &AlgElement) -> GroupElement {
    let n = x.n;
    let norm1 = (0..n)
        .map(|j| (0..n).map(|i| x.data[i * n + j].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut s = 1.0;
    while norm1 * s > 0.25 {
        s *= 0.5;
        squarings += 1;
    }
    let scaled: Vec<Complex64> = x.data.iter().map(|z| z * s).collect();
    let mut result = GroupElement::identity(n).data;
    let mut term = result.clone();
    for k in 1..=18 {
        let mut next = vec![Complex64::new(0.0, 0.0); n * n];
        mul_acc(&mut next, &term, &scaled, n, 1.0 / k as f64);
        term = next;
        for (r, t) in result.iter_mut().zip(&term) {
            *r += t;
        }
    }
    let mut g = GroupElement { n, data: result };
    for _ in 0..squarings {
        g = g.mul(&g);
    }
    g
}

/// Orthonormal basis of su(n) for the form `-tr(xy)`: off-diagonal real and
/// imaginary symmetric pairs first, then normalised diagonal elements.
pub fn orthonormal_basis(n: usize) -> Vec<AlgElement> {
    let z = Complex64::new(0.0, 0.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in i + 1..n {
            let mut re = vec![z; n * n];
            re[i * n + j] = Complex64::new(r, 0.0);
            re[j * n + i] = Complex64::new(-r, 0.0);
            out.push(AlgElement { n, data: re });
            let mut im = vec![z; n * n];
            im[i * n + j] = Complex64::new(0.0, r);
            im[j * n + i] = Complex64::new(0.0, r);
            out.push(AlgElement { n, data: im });
        }
    }
    for k in 1..n {
        // i * diag(1, ..., 1, -k, 0, ...) with k leading ones.
        let norm = ((k * (k + 1)) as f64).sqrt();
        let mut d = vec![z; n * n];
        for i in 0..k {
            d[i * n + i] = Complex64::new(0.0, 1.0 / norm);
        }
        d[k * n + k] = Complex64::new(0.0, -(k as f64) / norm);
        out.push(AlgElement { n, data: d });
    }
    out
}

/// Draws an su(n) element by projecting a complex Gaussian-like matrix.
pub fn random_su_with(n: usize, rng: &mut impl Rng) -> AlgElement {
    let data: Vec<Complex64> = (0..n * n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    AlgElement::project(n, data)
}

/// Deterministic random su(n) element for a fixed seed.
pub fn random_su(n: usize, seed: u64) -> AlgElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_su_with(n, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(seed: u64) -> (AlgElement, AlgElement, AlgElement) {
        (random_su(3, seed), random_su(3, seed + 1), random_su(3, seed + 2))
    }

    #[test]
    fn commutator_antisymmetric_and_self_zero() {
        let (x, y, _) = triple(1);
        assert!(commutator(&x, &x).max_norm() < 1e-15);
        let s = commutator(&x, &y).add(&commutator(&y, &x));
        assert!(s.max_norm() < 1e-15);
    }

    #[test]
    fn jacobi_identity() {
        let (x, y, z) = triple(7);
        let j = commutator(&x, &commutator(&y, &z))
            .add(&commutator(&y, &commutator(&z, &x)))
            .add(&commutator(&z, &commutator(&x, &y)));
        assert!(j.max_norm() <= 1e-13);
    }

    #[test]
    fn commutator_stays_in_su() {
        let (x, y, _) = triple(3);
        assert!(commutator(&x, &y).su_defect() < 1e-14);
    }

    #[test]
    fn inner_positive_symmetric_and_ad_invariant() {
        let (x, y, z) = triple(11);
        assert!(inner_su(&x, &x) > 0.0);
        assert!((inner_su(&x, &y) - inner_su(&y, &x)).abs() < 1e-14);
        let r = inner_su(&commutator(&z, &x), &y) + inner_su(&x, &commutator(&z, &y));
        assert!(r.abs() <= 1e-13);
    }

    #[test]
    fn su2_basis_orthogonal_with_half_norm() {
        for a in 0..3 {
            for b in 0..3 {
                let v = inner_su(&AlgElement::su2_basis(a), &AlgElement::su2_basis(b));
                let expected = if a == b { 0.5 } else { 0.0 };
                assert!((v - expected).abs() < 1e-15, "({a},{b}) -> {v}");
            }
        }
    }

    #[test]
    fn expm_basic_properties() {
        let z = AlgElement::zero(2);
        assert!(expm(&z).distance(&GroupElement::identity(2)) < 1e-15);
        let x = random_su(3, 5).scale(2.0);
        let g = expm(&x);
        let ginv = expm(&x.scale(-1.0));
        assert!(g.mul(&ginv).distance(&GroupElement::identity(3)) < 1e-12);
        assert!(g.unitarity_defect() < GROUP_TOL);
        assert!((g.determinant() - Complex64::new(1.0, 0.0)).norm() < GROUP_TOL);
    }

    #[test]
    fn expm_su2_diagonal_eigenvalues() {
        // exp(i theta sigma_3 / 2) = diag(e^{i theta/2}, e^{-i theta/2})
        let theta = 1.3;
        let g = expm(&AlgElement::su2_basis(2).scale(theta));
        let d = g.as_slice();
        assert!((d[0] - Complex64::from_polar(1.0, theta / 2.0)).norm() < 1e-14);
        assert!((d[3] - Complex64::from_polar(1.0, -theta / 2.0)).norm() < 1e-14);
        assert!(d[1].norm() < 1e-15 && d[2].norm() < 1e-15);
    }

    #[test]
    fn random_su_deterministic_and_exact() {
        assert_eq!(random_su(3, 42), random_su(3, 42));
        assert!(random_su(3, 42).su_defect() < 1e-16);
    }

    #[test]
    fn random_su_mean_near_zero() {
        // Each entry has mean zero; 3 sigma of the sample mean.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let samples = 10_000;
        let mut mean = [Complex64::new(0.0, 0.0); 4];
        let mut sq = [0.0; 4];
        for _ in 0..samples {
            let x = random_su_with(2, &mut rng);
            for (k, z) in x.as_slice().iter().enumerate() {
                mean[k] += z;
                sq[k] += z.norm_sqr();
            }
        }
        for k in 0..4 {
            let m = mean[k] / samples as f64;
            let sigma = (sq[k] / samples as f64).sqrt() / (samples as f64).sqrt();
            assert!(m.norm() <= 3.0 * sigma * 2f64.sqrt(), "entry {k}: {m}");
        }
    }

    #[test]
    fn from_row_major_rejects_hermitian() {
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        assert!(AlgElement::from_row_major(2, vec![one, z, z, one]).is_err());
    }

    #[test]
    fn orthonormal_basis_is_orthonormal() {
        for n in 2..5 {
            let b = orthonormal_basis(n);
            assert_eq!(b.len(), n * n - 1);
            for (i, x) in b.iter().enumerate() {
                assert!(x.su_defect() < 1e-15);
                for (j, y) in b.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((inner_su(x, y) - want).abs() < 1e-14);
                }
            }
        }
    }
}
