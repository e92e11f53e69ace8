//! Periodic cubical 3-complex and su(n)-valued cochains on it.
//!
//! A k-cell is a pair `(x, S)` where `x` is a lattice vertex and `S` is a set
//! of `k` axis directions; the cell spans the unit cube face from `x` along
//! the directions in `S`. Cells are ordered lexicographically in `(x, S)`:
//! vertices by `(ix, iy, iz)` with `iz` fastest, then direction sets in the
//! order listed by [`direction_sets`]. Snapshot files and the dense test
//! oracles rely on this ordering.
//!
//! Cochain values are the components of the corresponding differential form
//! at the cell, so the coboundary carries a `1/h` and the inner product a
//! volume factor `h^3` for every degree. With that convention the Hodge star
//! is a plain signed permutation and an isometry.

mod cochain;
mod ops;

pub use cochain::Cochain;

use crate::error::{Error, Result};

/// Direction sets of each degree as bit masks, in canonical order.
pub fn direction_sets(k: usize) -> &'static [u8] {
    const SETS: [&[u8]; 4] = [&[0b000], &[0b001, 0b010, 0b100], &[0b011, 0b101, 0b110], &[0b111]];
    SETS[k]
}

/// Sorted list of the axes contained in a direction mask.
pub fn axes_of(mask: u8) -> impl Iterator<Item = usize> {
    (0..3).filter(move |a| mask & (1 << a) != 0)
}

/// Sign of the shuffle that sorts the concatenation `(P, Q)` of two disjoint
/// direction sets.
pub fn shuffle_sign(p: u8, q: u8) -> f64 {
    let mut inversions = 0;
    for a in axes_of(p) {
        for b in axes_of(q) {
            if a > b {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn set_position(k: usize, mask: u8) -> usize {
    direction_sets(k).iter().position(|&m| m == mask).expect("mask has the wrong degree")
}

/// Periodic `nx x ny x nz` cubical lattice with spacing `h`.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    dims: [usize; 3],
    h: f64,
    /// `shifted[mask][v]` is the vertex `v + sum of unit steps in mask`.
    shifted: Vec<Vec<usize>>,
    /// `unshifted[mask][v]` is `v - sum of unit steps in mask`.
    unshifted: Vec<Vec<usize>>,
}

impl CubicalComplex {
    /// Builds the periodic torus. Every axis needs at least two vertices so
    /// that a cell and its translate never alias.
    pub fn build_torus(nx: usize, ny: usize, nz: usize, h: f64) -> Result<Self> {
        for &n in &[nx, ny, nz] {
            if n < 2 {
                return Err(Error::DegenerateLattice(n));
            }
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Validation { key: "h".into(), msg: format!("spacing {h} must be positive") });
        }
        let dims = [nx, ny, nz];
        let nv = nx * ny * nz;
        let mut shifted = vec![vec![0; nv]; 8];
        let mut unshifted = vec![vec![0; nv]; 8];
        for mask in 0..8u8 {
            for v in 0..nv {
                let mut x = Self::coords_of(dims, v);
                let mut y = x;
                for a in axes_of(mask) {
                    x[a] = (x[a] + 1) % dims[a];
                    y[a] = (y[a] + dims[a] - 1) % dims[a];
                }
                shifted[mask as usize][v] = Self::index_of(dims, x);
                unshifted[mask as usize][v] = Self::index_of(dims, y);
            }
        }
        Ok(CubicalComplex { dims, h, shifted, unshifted })
    }

    /// Cubic torus `n^3` with unit spacing.
    pub fn cube(n: usize) -> Result<Self> {
        Self::build_torus(n, n, n, 1.0)
    }

    fn coords_of(dims: [usize; 3], v: usize) -> [usize; 3] {
        [v / (dims[1] * dims[2]), (v / dims[2]) % dims[1], v % dims[2]]
    }

    fn index_of(dims: [usize; 3], x: [usize; 3]) -> usize {
        (x[0] * dims[1] + x[1]) * dims[2] + x[2]
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn volume_element(&self) -> f64 {
        self.h * self.h * self.h
    }

    pub fn n_vertices(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn n_cells(&self, k: usize) -> usize {
        self.n_vertices() * direction_sets(k).len()
    }

    pub fn vertex_index(&self, x: [usize; 3]) -> usize {
        Self::index_of(self.dims, [x[0] % self.dims[0], x[1] % self.dims[1], x[2] % self.dims[2]])
    }

    pub fn vertex_coords(&self, v: usize) -> [usize; 3] {
        Self::coords_of(self.dims, v)
    }

    /// Index of cell `(v, mask)` with `|mask| = k`.
    pub fn cell_index(&self, v: usize, mask: u8) -> usize {
        let k = mask.count_ones() as usize;
        v * direction_sets(k).len() + set_position(k, mask)
    }

    /// Inverse of [`cell_index`](Self::cell_index) for degree `k`.
    pub fn cell_coords(&self, k: usize, cell: usize) -> (usize, u8) {
        let m = direction_sets(k).len();
        (cell / m, direction_sets(k)[cell % m])
    }

    #[inline]
    pub fn shift(&self, v: usize, mask: u8) -> usize {
        self.shifted[mask as usize][v]
    }

    #[inline]
    pub fn unshift(&self, v: usize, mask: u8) -> usize {
        self.unshifted[mask as usize][v]
    }

    /// Physical position of a vertex, `h * (ix, iy, iz)`.
    pub fn position(&self, v: usize) -> [f64; 3] {
        let x = self.vertex_coords(v);
        [x[0] as f64 * self.h, x[1] as f64 * self.h, x[2] as f64 * self.h]
    }

    /// Period of the torus along each axis.
    pub fn extent(&self) -> [f64; 3] {
        [self.dims[0] as f64 * self.h, self.dims[1] as f64 * self.h, self.dims[2] as f64 * self.h]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts() {
        let c = CubicalComplex::build_torus(2, 2, 2, 1.0).unwrap();
        assert_eq!([c.n_cells(0), c.n_cells(1), c.n_cells(2), c.n_cells(3)], [8, 24, 24, 8]);
        let c = CubicalComplex::build_torus(3, 4, 5, 1.0).unwrap();
        assert_eq!(c.n_vertices(), 60);
        assert_eq!(c.n_cells(1), 180);
    }

    #[test]
    fn degenerate_axis_rejected() {
        assert!(matches!(
            CubicalComplex::build_torus(2, 1, 3, 1.0),
            Err(Error::DegenerateLattice(1))
        ));
    }

    #[test]
    fn cell_index_round_trip() {
        let c = CubicalComplex::build_torus(3, 2, 4, 0.5).unwrap();
        for k in 0..4 {
            for cell in 0..c.n_cells(k) {
                let (v, mask) = c.cell_coords(k, cell);
                assert_eq!(c.cell_index(v, mask), cell);
                assert_eq!(c.vertex_index(c.vertex_coords(v)), v);
            }
        }
    }

    #[test]
    fn ordering_is_lexicographic() {
        let c = CubicalComplex::build_torus(2, 3, 2, 1.0).unwrap();
        assert_eq!(c.vertex_index([0, 0, 1]), 1);
        assert_eq!(c.vertex_index([0, 1, 0]), 2);
        assert_eq!(c.vertex_index([1, 0, 0]), 6);
        assert_eq!(c.cell_index(1, 0b010), 4);
    }

    #[test]
    fn shifts_wrap_and_invert() {
        let c = CubicalComplex::build_torus(2, 3, 4, 1.0).unwrap();
        for v in 0..c.n_vertices() {
            for mask in 0..8 {
                assert_eq!(c.unshift(c.shift(v, mask), mask), v);
            }
        }
        assert_eq!(c.shift(c.vertex_index([1, 2, 3]), 0b111), c.vertex_index([0, 0, 0]));
    }

    #[test]
    fn shuffle_signs() {
        assert_eq!(shuffle_sign(0b001, 0b110), 1.0);
        assert_eq!(shuffle_sign(0b010, 0b101), -1.0);
        assert_eq!(shuffle_sign(0b100, 0b011), 1.0);
        assert_eq!(shuffle_sign(0b110, 0b001), 1.0);
        assert_eq!(shuffle_sign(0b101, 0b010), -1.0);
    }
}
