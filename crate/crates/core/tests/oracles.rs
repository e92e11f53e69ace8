//! Dense-matrix cross-checks of the sparse operators on small tori.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ymlab::elliptic::{green, irreducibility_check, laplacian, CgSettings};
use ymlab::gauge_fields::Connection;
use ymlab::lattice_complex::{Cochain, CubicalComplex};

const RANK: usize = 2;
const M: usize = RANK * RANK - 1;

/// Matrix of a linear map in the orthonormal su(n) coordinates.
fn dense(cx: &CubicalComplex, k_in: usize, k_out: usize, op: impl Fn(&Cochain) -> Cochain) -> DMatrix<f64> {
    let cols = cx.n_cells(k_in) * M;
    let rows = cx.n_cells(k_out) * M;
    let mut out = DMatrix::zeros(rows, cols);
    let mut e = vec![0.0; cols];
    for j in 0..cols {
        e[j] = 1.0;
        let image = op(&Cochain::from_real(cx, k_in, RANK, &e)).to_real();
        out.column_mut(j).copy_from_slice(&image);
        e[j] = 0.0;
    }
    out
}

/// Incidence matrix of the periodic cubical complex, written out face by face.
fn incidence(cx: &CubicalComplex, k: usize) -> DMatrix<f64> {
    let [nx, ny, nz] = cx.dims();
    let step = |x: [usize; 3], a: usize| {
        let mut y = x;
        y[a] += 1;
        cx.vertex_index(y)
    };
    let mut d = DMatrix::zeros(cx.n_cells(k + 1), cx.n_cells(k));
    let mut put = |row: usize, col: usize, s: f64| d[(row, col)] += s;
    for ix in 0..nx {
        for iy in 0..ny {
            for iz in 0..nz {
                let x = [ix, iy, iz];
                let v = cx.vertex_index(x);
                match k {
                    0 => {
                        for a in 0..3 {
                            let row = cx.cell_index(v, 1 << a);
                            put(row, step(x, a), 1.0);
                            put(row, v, -1.0);
                        }
                    }
                    1 => {
                        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                            let row = cx.cell_index(v, (1 << a) | (1 << b));
                            put(row, cx.cell_index(step(x, a), 1 << b), 1.0);
                            put(row, cx.cell_index(v, 1 << b), -1.0);
                            put(row, cx.cell_index(step(x, b), 1 << a), -1.0);
                            put(row, cx.cell_index(v, 1 << a), 1.0);
                        }
                    }
                    2 => {
                        let row = cx.cell_index(v, 7);
                        for (a, face, s) in [(0, 6u8, 1.0), (1, 5, -1.0), (2, 3, 1.0)] {
                            put(row, cx.cell_index(step(x, a), face), s);
                            put(row, cx.cell_index(v, face), -s);
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
    }
    d.kronecker(&DMatrix::identity(M, M)) / cx.spacing()
}

fn max_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Spectrum of the flat Hodge Laplacian in degree `k`: every Fourier mode
/// `q` contributes `sum_a 4 sin^2(pi q_a / N_a) / h^2` with multiplicity
/// `binom(3, k)` per su(n) direction.
fn flat_spectrum(cx: &CubicalComplex, k: usize) -> Vec<f64> {
    let [nx, ny, nz] = cx.dims();
    let h2 = cx.spacing() * cx.spacing();
    let mult = [1, 3, 3, 1][k] * M;
    let s = |q: usize, n: usize| (std::f64::consts::PI * q as f64 / n as f64).sin().powi(2);
    let mut out = Vec::new();
    for qx in 0..nx {
        for qy in 0..ny {
            for qz in 0..nz {
                let lam = 4.0 * (s(qx, nx) + s(qy, ny) + s(qz, nz)) / h2;
                out.extend(std::iter::repeat_n(lam, mult));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

fn torus() -> CubicalComplex {
    CubicalComplex::build_torus(3, 2, 4, 0.7).unwrap()
}

#[test]
fn coboundary_matches_incidence_matrix() {
    let cx = torus();
    for k in 0..3 {
        let d = dense(&cx, k, k + 1, |c| cx.coboundary(c).unwrap());
        assert!(max_diff(&d, &incidence(&cx, k)) < 1e-13, "degree {k}");
    }
}

#[test]
fn incidence_matrices_compose_to_zero() {
    let cx = torus();
    for k in 0..2 {
        let dd = incidence(&cx, k + 1) * incidence(&cx, k);
        assert!(dd.abs().max() < 1e-12, "degree {k}");
        let ours = dense(&cx, k, k + 2, |c| cx.coboundary(&cx.coboundary(c).unwrap()).unwrap());
        assert!(ours.abs().max() < 1e-12, "degree {k}");
    }
}

#[test]
fn adjoint_is_the_transpose() {
    let cx = torus();
    for k in 1..4 {
        let ds = dense(&cx, k, k - 1, |c| cx.coboundary_adjoint(c).unwrap());
        assert!(max_diff(&ds, &incidence(&cx, k - 1).transpose()) < 1e-13, "degree {k}");
    }
}

#[test]
fn gram_matrix_is_scaled_identity() {
    let cx = torus();
    let w = cx.volume_element();
    for k in 0..4 {
        let n = cx.n_cells(k) * M;
        let mut gram = DMatrix::zeros(n, n);
        let basis: Vec<Cochain> = (0..n)
            .map(|j| {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                Cochain::from_real(&cx, k, RANK, &e)
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = cx.inner(&basis[i], &basis[j]).unwrap();
            }
        }
        assert!(max_diff(&gram, &(DMatrix::identity(n, n) * w)) < 1e-15, "degree {k}");
    }
}

#[test]
fn flat_laplacian_has_fourier_spectrum() {
    let cx = torus();
    let flat = Connection::zero(&cx, RANK);
    for k in 0..4 {
        let lap = dense(&cx, k, k, |c| laplacian(&cx, &flat, c));
        let got = sorted_eigenvalues(lap);
        let want = flat_spectrum(&cx, k);
        assert_eq!(got.len(), want.len());
        let err = got.iter().zip(&want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max);
        assert!(err < 1e-10, "degree {k}: {err:e}");
    }
}

#[test]
fn covariant_laplacian_is_symmetric_positive() {
    let cx = CubicalComplex::build_torus(2, 2, 2, 1.0).unwrap();
    let a = Connection::random(&cx, RANK, 0.5, &mut ChaCha8Rng::seed_from_u64(3));
    for k in 0..4 {
        let lap = dense(&cx, k, k, |c| laplacian(&cx, &a, c));
        assert!(max_diff(&lap, &lap.transpose()) < 1e-12, "degree {k}");
        assert!(sorted_eigenvalues(lap)[0] > -1e-12, "degree {k}");
    }
}

#[test]
fn irreducibility_estimate_matches_dense_eigenvalue() {
    let cx = CubicalComplex::build_torus(2, 2, 2, 1.0).unwrap();
    let a = Connection::random(&cx, RANK, 0.5, &mut ChaCha8Rng::seed_from_u64(4));
    let lowest = sorted_eigenvalues(dense(&cx, 0, 0, |c| laplacian(&cx, &a, c)))[0];
    let estimate = irreducibility_check(&cx, &a);
    assert!(lowest > 1e-6);
    assert!((estimate - lowest).abs() <= 1e-6 * lowest, "{estimate} vs {lowest}");
    assert!(irreducibility_check(&cx, &Connection::zero(&cx, RANK)) < 1e-8);
}

#[test]
fn green_operator_matches_dense_solve() {
    let cx = CubicalComplex::build_torus(2, 2, 2, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = Connection::random(&cx, RANK, 0.5, &mut rng);
    let s = CgSettings { tol: 1e-12, maxit: None };
    for k in 0..4 {
        let lap = dense(&cx, k, k, |c| laplacian(&cx, &a, c));
        let rhs = Cochain::random(&cx, k, RANK, 1.0, &mut rng);
        let b = DVector::from_vec(rhs.to_real());
        let want = lap.lu().solve(&b).expect("invertible for generic A");
        let got = DVector::from_vec(green(&cx, &a, &rhs, s).unwrap().0.to_real());
        assert!((&got - &want).norm() <= 1e-8 * want.norm(), "degree {k}");
    }
}
