use num_complex::Complex64;

use super::{axes_of, direction_sets, shuffle_sign, Cochain, CubicalComplex};
use crate::error::{Error, Result};
use crate::lie_algebra::{commutator_acc, inner_block, mul_acc, trace_product};

/// Submasks of `s` with exactly `j` bits, in increasing numeric order.
fn submasks(s: u8, j: usize) -> impl Iterator<Item = u8> {
    (0..8u8).filter(move |&p| p & !s == 0 && p.count_ones() as usize == j)
}

impl CubicalComplex {
    fn check_rank(&self, c: &Cochain) {
        assert_eq!(c.n_cells(), self.n_cells(c.degree()), "cochain does not live on this complex");
    }

    /// Coboundary `d : C^k -> C^{k+1}`, a forward difference divided by `h`.
    pub fn coboundary(&self, c: &Cochain) -> Result<Cochain> {
        let k = c.degree();
        if k >= 3 {
            return Err(Error::DegreeError(format!("coboundary of a {k}-cochain")));
        }
        self.check_rank(c);
        let n = c.rank();
        let inv_h = 1.0 / self.spacing();
        let mut out = Cochain::zeros(self, k + 1, n);
        for cell in 0..self.n_cells(k + 1) {
            let (v, s) = self.cell_coords(k + 1, cell);
            let dst = out.block_mut(cell);
            for (i, a) in axes_of(s).enumerate() {
                let face = s & !(1 << a);
                let sign = if i % 2 == 0 { inv_h } else { -inv_h };
                let far = c.block(self.cell_index(self.shift(v, 1 << a), face));
                let near = c.block(self.cell_index(v, face));
                for ((d, f), nr) in dst.iter_mut().zip(far).zip(near) {
                    *d += (f - nr) * sign;
                }
            }
        }
        Ok(out)
    }

    /// Adjoint of [`coboundary`](Self::coboundary) with respect to
    /// [`inner`](Self::inner): `C^{k} -> C^{k-1}`.
    pub fn coboundary_adjoint(&self, b: &Cochain) -> Result<Cochain> {
        let k = b.degree();
        if k == 0 {
            return Err(Error::DegreeError("coboundary adjoint of a 0-cochain".into()));
        }
        self.check_rank(b);
        let n = b.rank();
        let inv_h = 1.0 / self.spacing();
        let mut out = Cochain::zeros(self, k - 1, n);
        for cell in 0..self.n_cells(k) {
            let (v, s) = self.cell_coords(k, cell);
            let src = b.block(cell).to_vec();
            for (i, a) in axes_of(s).enumerate() {
                let face = s & !(1 << a);
                let sign = if i % 2 == 0 { inv_h } else { -inv_h };
                let far = self.cell_index(self.shift(v, 1 << a), face);
                for (d, x) in out.block_mut(far).iter_mut().zip(&src) {
                    *d += x * sign;
                }
                let near = self.cell_index(v, face);
                for (d, x) in out.block_mut(near).iter_mut().zip(&src) {
                    *d -= x * sign;
                }
            }
        }
        Ok(out)
    }

    /// Hodge star `C^k -> C^{3-k}`: the value on `(x, S)` moves to
    /// `(x, S^c)` with the Levi-Civita sign of `(S, S^c)`. Involutive.
    pub fn hodge(&self, c: &Cochain) -> Cochain {
        self.check_rank(c);
        let k = c.degree();
        let n = c.rank();
        let mut out = Cochain::zeros(self, 3 - k, n);
        for cell in 0..self.n_cells(k) {
            let (v, s) = self.cell_coords(k, cell);
            let comp = !s & 0b111;
            let sign = shuffle_sign(s, comp);
            let dst = self.cell_index(v, comp);
            let src = c.block(cell);
            for (d, x) in out.block_mut(dst).iter_mut().zip(src) {
                *d = x * sign;
            }
        }
        out
    }

    fn check_cup_degrees(&self, a: &Cochain, b: &Cochain) -> Result<usize> {
        let deg = a.degree() + b.degree();
        if deg > 3 {
            return Err(Error::DegreeError(format!(
                "cup of degrees {} and {} exceeds 3",
                a.degree(),
                b.degree()
            )));
        }
        assert_eq!(a.rank(), b.rank(), "algebra rank mismatch");
        self.check_rank(a);
        self.check_rank(b);
        Ok(deg)
    }

    /// Front-face/back-face cup product with matrix multiplication:
    /// `(a u b)(x, S) = sum_{P u Q = S} sign(P,Q) a(x, P) b(x + e_P, Q)`.
    /// Associative and satisfies the graded Leibniz rule exactly. The result
    /// is a general matrix-valued cochain.
    pub fn cup(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        let deg = self.check_cup_degrees(a, b)?;
        let (j, n) = (a.degree(), a.rank());
        let mut out = Cochain::zeros(self, deg, n);
        for cell in 0..self.n_cells(deg) {
            let (v, s) = self.cell_coords(deg, cell);
            for p in submasks(s, j) {
                let q = s & !p;
                let sign = shuffle_sign(p, q);
                let av = a.block(self.cell_index(v, p));
                let bv = b.block(self.cell_index(self.shift(v, p), q));
                mul_acc(out.block_mut(cell), av, bv, n, sign);
            }
        }
        Ok(out)
    }

    /// Graded Lie bracket of cochains,
    /// `[a u b](x,S) = 1/2 sum sign(P,Q) ( [a(x,P), b(x+e_P,Q)] + [a(x+e_Q,P), b(x,Q)] )`,
    /// the average of the front-face and back-face cups with the matrix
    /// commutator as coefficient pairing. Stays in su(n), satisfies
    /// `[a u b] = -(-1)^{jk} [b u a]` and the graded Leibniz rule exactly,
    /// and vanishes identically when all values commute.
    pub fn bracket_cup(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        let deg = self.check_cup_degrees(a, b)?;
        let (j, n) = (a.degree(), a.rank());
        let mut out = Cochain::zeros(self, deg, n);
        for cell in 0..self.n_cells(deg) {
            let (v, s) = self.cell_coords(deg, cell);
            for p in submasks(s, j) {
                let q = s & !p;
                let half = 0.5 * shuffle_sign(p, q);
                let front_a = a.block(self.cell_index(v, p));
                let front_b = b.block(self.cell_index(self.shift(v, p), q));
                let back_a = a.block(self.cell_index(self.shift(v, q), p));
                let back_b = b.block(self.cell_index(v, q));
                let dst = out.block_mut(cell);
                commutator_acc(dst, front_a, front_b, n, half);
                commutator_acc(dst, back_a, back_b, n, half);
            }
        }
        Ok(out)
    }

    /// Adjoint in `c` of `c -> [a u c]` for fixed `a`: maps a cochain `b` of
    /// degree `deg(a) + k` to degree `k`.
    pub fn bracket_cup_adjoint(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        let j = a.degree();
        let deg = b.degree();
        if deg < j {
            return Err(Error::DegreeError(format!("bracket adjoint of degree {deg} by degree {j}")));
        }
        self.check_rank(a);
        self.check_rank(b);
        let k = deg - j;
        let n = a.rank();
        let mut out = Cochain::zeros(self, k, n);
        // <b, [A, c]> = <[b, A], c>
        for cell in 0..self.n_cells(deg) {
            let (v, s) = self.cell_coords(deg, cell);
            let bv = b.block(cell).to_vec();
            for p in submasks(s, j) {
                let q = s & !p;
                let half = 0.5 * shuffle_sign(p, q);
                let front_a = a.block(self.cell_index(v, p));
                commutator_acc(out.block_mut(self.cell_index(self.shift(v, p), q)), &bv, front_a, n, half);
                let back_a = a.block(self.cell_index(self.shift(v, q), p));
                commutator_acc(out.block_mut(self.cell_index(v, q)), &bv, back_a, n, half);
            }
        }
        Ok(out)
    }

    /// `(a, b)_k = h^3 sum_cells -tr(a_c b_c)`.
    pub fn inner(&self, a: &Cochain, b: &Cochain) -> Result<f64> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeError(format!(
                "inner product of degrees {} and {}",
                a.degree(),
                b.degree()
            )));
        }
        self.check_rank(a);
        self.check_rank(b);
        let n = a.rank();
        let s: f64 = (0..a.n_cells()).map(|c| inner_block(a.block(c), b.block(c), n)).sum();
        Ok(self.volume_element() * s)
    }

    /// `sqrt((c, c))`.
    pub fn norm(&self, c: &Cochain) -> f64 {
        self.inner(c, c).expect("same degree").max(0.0).sqrt()
    }

    /// `h^3 sum over 3-cells of mu_c`, an `n x n` matrix (row-major).
    pub fn integrate(&self, mu: &Cochain) -> Result<Vec<Complex64>> {
        if mu.degree() != 3 {
            return Err(Error::DegreeError(format!("integrate needs a 3-cochain, got {}", mu.degree())));
        }
        self.check_rank(mu);
        let n = mu.rank();
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for c in 0..mu.n_cells() {
            for (o, x) in out.iter_mut().zip(mu.block(c)) {
                *o += x;
            }
        }
        let w = self.volume_element();
        out.iter_mut().for_each(|z| *z *= w);
        Ok(out)
    }

    /// Dual pairing `h^3 sum_c Re tr(mu_c xi_{v(c)})` of a 3-cochain with a
    /// 0-cochain, `v(c)` the base vertex of the cube.
    pub fn pair(&self, mu: &Cochain, xi: &Cochain) -> Result<f64> {
        if mu.degree() != 3 || xi.degree() != 0 {
            return Err(Error::DegreeError(format!(
                "pair needs degrees (3, 0), got ({}, {})",
                mu.degree(),
                xi.degree()
            )));
        }
        self.check_rank(mu);
        self.check_rank(xi);
        let n = mu.rank();
        let s: f64 = (0..self.n_vertices()).map(|v| trace_product(mu.block(v), xi.block(v), n)).sum();
        Ok(self.volume_element() * s)
    }

    /// Number of cells per vertex in degree `k`.
    pub fn sets_per_vertex(k: usize) -> usize {
        direction_sets(k).len()
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::lie_algebra::AlgElement;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn diff(cx: &CubicalComplex, a: &Cochain, b: &Cochain) -> f64 {
        let _ = cx;
        a.sub(b).max_abs()
    }

    #[test]
    fn coboundary_squares_to_zero() {
        for n in [2, 3, 4] {
            let cx = CubicalComplex::build_torus(n, n, n, 0.7).unwrap();
            let mut r = rng(n as u64);
            for k in 0..2 {
                let c = Cochain::random(&cx, k, 2, 1.0, &mut r);
                let dd = cx.coboundary(&cx.coboundary(&c).unwrap()).unwrap();
                assert!(dd.max_abs() < 1e-13, "k={k} n={n}: {}", dd.max_abs());
            }
        }
    }

    #[test]
    fn coboundary_of_constant_and_zero() {
        let cx = CubicalComplex::cube(3).unwrap();
        let xi = Cochain::constant(&cx, 0, &crate::lie_algebra::random_su(2, 1));
        assert_eq!(cx.coboundary(&xi).unwrap().max_abs(), 0.0);
        let z = Cochain::zeros(&cx, 2, 2);
        assert_eq!(cx.coboundary(&z).unwrap().max_abs(), 0.0);
        assert!(matches!(cx.coboundary(&Cochain::zeros(&cx, 3, 2)), Err(Error::DegreeError(_))));
    }

    #[test]
    fn coboundary_adjoint_matches_inner() {
        let cx = CubicalComplex::build_torus(3, 2, 4, 0.5).unwrap();
        let mut r = rng(3);
        for k in 0..3 {
            let a = Cochain::random(&cx, k, 2, 1.0, &mut r);
            let b = Cochain::random(&cx, k + 1, 2, 1.0, &mut r);
            let lhs = cx.inner(&cx.coboundary(&a).unwrap(), &b).unwrap();
            let rhs = cx.inner(&a, &cx.coboundary_adjoint(&b).unwrap()).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * cx.norm(&a) * cx.norm(&b) * 10.0);
        }
    }

    #[test]
    fn hodge_involutive_and_isometric() {
        let cx = CubicalComplex::build_torus(2, 3, 2, 0.5).unwrap();
        let mut r = rng(5);
        for k in 0..4 {
            let a = Cochain::random(&cx, k, 2, 1.0, &mut r);
            let b = Cochain::random(&cx, k, 2, 1.0, &mut r);
            assert_eq!(cx.hodge(&cx.hodge(&a)), a);
            let lhs = cx.inner(&cx.hodge(&a), &cx.hodge(&b)).unwrap();
            let rhs = cx.inner(&a, &b).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn hodge_orientation_table() {
        // Levi-Civita: *dx1 = dx2 dx3, *dx2 = dx3 dx1 = -dx1 dx3, *dx3 = dx1 dx2.
        let cx = CubicalComplex::cube(2).unwrap();
        let x = AlgElement::su2_basis(0);
        for (edge, face, sign) in [(0b001u8, 0b110u8, 1.0), (0b010, 0b101, -1.0), (0b100, 0b011, 1.0)] {
            let mut c = Cochain::zeros(&cx, 1, 2);
            c.block_mut(cx.cell_index(3, edge)).copy_from_slice(x.as_slice());
            let s = cx.hodge(&c);
            let got = s.block(cx.cell_index(3, face));
            for (g, e) in got.iter().zip(x.as_slice()) {
                assert_eq!(*g, e * sign);
            }
        }
    }

    #[test]
    fn cup_leibniz_all_degrees() {
        let cx = CubicalComplex::build_torus(2, 3, 2, 0.8).unwrap();
        let mut r = rng(11);
        for j in 0..3 {
            for k in 0..3 - j {
                let a = Cochain::random(&cx, j, 2, 1.0, &mut r);
                let b = Cochain::random(&cx, k, 2, 1.0, &mut r);
                let lhs = cx.coboundary(&cx.cup(&a, &b).unwrap()).unwrap();
                let mut rhs = cx.cup(&cx.coboundary(&a).unwrap(), &b).unwrap();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                rhs.axpy(sign, &cx.cup(&a, &cx.coboundary(&b).unwrap()).unwrap());
                assert!(diff(&cx, &lhs, &rhs) < 1e-13, "({j},{k})");
            }
        }
    }

    #[test]
    fn cup_associative() {
        let cx = CubicalComplex::cube(2).unwrap();
        let mut r = rng(12);
        let a = Cochain::random(&cx, 1, 2, 1.0, &mut r);
        let b = Cochain::random(&cx, 1, 2, 1.0, &mut r);
        let c = Cochain::random(&cx, 1, 2, 1.0, &mut r);
        let l = cx.cup(&cx.cup(&a, &b).unwrap(), &c).unwrap();
        let rr = cx.cup(&a, &cx.cup(&b, &c).unwrap()).unwrap();
        assert!(diff(&cx, &l, &rr) < 1e-14);
    }

    #[test]
    fn cup_degree_overflow() {
        let cx = CubicalComplex::cube(2).unwrap();
        let a = Cochain::zeros(&cx, 2, 2);
        assert!(matches!(cx.cup(&a, &a), Err(Error::DegreeError(_))));
        assert!(matches!(cx.bracket_cup(&a, &a), Err(Error::DegreeError(_))));
    }

    #[test]
    fn bracket_leibniz_antisymmetry_and_algebra() {
        let cx = CubicalComplex::build_torus(2, 2, 3, 1.0).unwrap();
        let mut r = rng(13);
        for j in 0..4 {
            for k in 0..4 - j {
                let a = Cochain::random(&cx, j, 2, 1.0, &mut r);
                let b = Cochain::random(&cx, k, 2, 1.0, &mut r);
                let ab = cx.bracket_cup(&a, &b).unwrap();
                let ba = cx.bracket_cup(&b, &a).unwrap();
                let sign = if (j * k) % 2 == 0 { 1.0 } else { -1.0 };
                assert!(ab.add(&ba.scaled(sign)).max_abs() < 1e-14, "antisymmetry ({j},{k})");
                assert!(ab.in_algebra());
                if j + k < 3 {
                    let lhs = cx.coboundary(&ab).unwrap();
                    let mut rhs = cx.bracket_cup(&cx.coboundary(&a).unwrap(), &b).unwrap();
                    let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                    rhs.axpy(s, &cx.bracket_cup(&a, &cx.coboundary(&b).unwrap()).unwrap());
                    assert!(lhs.sub(&rhs).max_abs() < 1e-13, "Leibniz ({j},{k})");
                }
            }
        }
    }

    #[test]
    fn bracket_vanishes_on_commuting_values() {
        let cx = CubicalComplex::cube(2).unwrap();
        let mut r = rng(14);
        let a = Cochain::random_abelian(&cx, 1, 2, 1.0, &mut r);
        let b = Cochain::random_abelian(&cx, 1, 2, 1.0, &mut r);
        assert_eq!(cx.bracket_cup(&a, &b).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn bracket_adjoint_matches_inner() {
        let cx = CubicalComplex::build_torus(2, 3, 2, 0.6).unwrap();
        let mut r = rng(15);
        for j in 0..3 {
            for k in 0..3 - j {
                let a = Cochain::random(&cx, j, 2, 1.0, &mut r);
                let c = Cochain::random(&cx, k, 2, 1.0, &mut r);
                let b = Cochain::random(&cx, j + k, 2, 1.0, &mut r);
                let lhs = cx.inner(&cx.bracket_cup(&a, &c).unwrap(), &b).unwrap();
                let rhs = cx.inner(&c, &cx.bracket_cup_adjoint(&a, &b).unwrap()).unwrap();
                assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()), "({j},{k})");
            }
        }
    }

    #[test]
    fn inner_properties_and_errors() {
        let cx = CubicalComplex::cube(2).unwrap();
        let mut r = rng(16);
        let a = Cochain::random(&cx, 2, 3, 1.0, &mut r);
        let b = Cochain::random(&cx, 2, 3, 1.0, &mut r);
        assert!(cx.inner(&a, &a).unwrap() > 0.0);
        assert_eq!(cx.inner(&a, &b).unwrap(), cx.inner(&b, &a).unwrap());
        assert!(matches!(cx.inner(&a, &Cochain::zeros(&cx, 1, 3)), Err(Error::DegreeError(_))));
    }

    #[test]
    fn integrate_and_pair_trivial_cases() {
        let cx = CubicalComplex::cube(2).unwrap();
        let mut r = rng(17);
        let z = Cochain::zeros(&cx, 3, 2);
        assert!(cx.integrate(&z).unwrap().iter().all(|x| x.norm() == 0.0));
        let mu = Cochain::random(&cx, 3, 2, 1.0, &mut r);
        assert_eq!(cx.pair(&mu, &Cochain::zeros(&cx, 0, 2)).unwrap(), 0.0);
    }
}
