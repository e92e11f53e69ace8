//! Binary field snapshots.
//!
//! Layout (little-endian): magic `YMS1`; five `u32` (version = 1, n, nx, ny,
//! nz); one `u8` degree; then for every cell in lattice order, `n * n`
//! complex entries row-major as `(re, im)` pairs of `f64`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice_complex::{Cochain, CubicalComplex};

pub const MAGIC: &[u8; 4] = b"YMS1";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 5 * 4 + 1;

/// A cochain together with the lattice shape it lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSnapshot {
    pub dims: [usize; 3],
    pub cochain: Cochain,
}

impl FieldSnapshot {
    pub fn new(cx: &CubicalComplex, cochain: Cochain) -> Self {
        FieldSnapshot { dims: cx.dims(), cochain }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let c = &self.cochain;
        let mut out = Vec::with_capacity(HEADER_LEN + 16 * c.as_slice().len());
        out.extend_from_slice(MAGIC);
        for x in [VERSION, c.rank() as u32, self.dims[0] as u32, self.dims[1] as u32, self.dims[2] as u32] {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out.push(c.degree() as u8);
        for z in c.as_slice() {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let err = |offset: usize, msg: &str| Error::FormatError { offset, msg: msg.into() };
        if bytes.len() < HEADER_LEN {
            return Err(err(bytes.len(), "truncated header"));
        }
        if &bytes[..4] != MAGIC {
            return Err(err(0, "bad magic"));
        }
        let word = |i: usize| {
            let o = 4 + 4 * i;
            u32::from_le_bytes(bytes[o..o + 4].try_into().expect("4 bytes")) as usize
        };
        if word(0) != VERSION as usize {
            return Err(err(4, "unsupported version"));
        }
        let n = word(1);
        let dims = [word(2), word(3), word(4)];
        let degree = bytes[HEADER_LEN - 1] as usize;
        if degree > 3 {
            return Err(err(HEADER_LEN - 1, "degree out of range"));
        }
        if n < 1 || dims.iter().any(|&d| d < 2) {
            return Err(err(8, "invalid shape"));
        }
        let cells = dims.iter().product::<usize>() * [1, 3, 3, 1][degree];
        let entries = cells * n * n;
        let expected = HEADER_LEN + 16 * entries;
        if bytes.len() < expected {
            return Err(err(bytes.len(), "truncated payload"));
        }
        if bytes.len() > expected {
            return Err(err(expected, "trailing bytes"));
        }
        let f = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
        let data = (0..entries)
            .map(|i| {
                let o = HEADER_LEN + 16 * i;
                Complex64::new(f(o), f(o + 8))
            })
            .collect();
        Ok(FieldSnapshot { dims, cochain: Cochain::from_raw(degree, n, data) })
    }

    pub fn complex(&self, h: f64) -> Result<CubicalComplex> {
        CubicalComplex::build_torus(self.dims[0], self.dims[1], self.dims[2], h)
    }
}

pub fn write_snapshot(path: &Path, cx: &CubicalComplex, c: &Cochain) -> Result<()> {
    fs::write(path, FieldSnapshot::new(cx, c.clone()).to_bytes())?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<FieldSnapshot> {
    FieldSnapshot::from_bytes(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let cx = CubicalComplex::build_torus(2, 3, 2, 1.0).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(1);
        for k in 0..4 {
            let c = Cochain::random(&cx, k, 3, 1.0, &mut r);
            let s = FieldSnapshot::new(&cx, c);
            let back = FieldSnapshot::from_bytes(&s.to_bytes()).unwrap();
            assert_eq!(back, s);
        }
        let z = FieldSnapshot::new(&cx, Cochain::zeros(&cx, 2, 2));
        assert_eq!(FieldSnapshot::from_bytes(&z.to_bytes()).unwrap(), z);
    }

    #[test]
    fn header_layout() {
        let cx = CubicalComplex::cube(2).unwrap();
        let b = FieldSnapshot::new(&cx, Cochain::zeros(&cx, 1, 2)).to_bytes();
        assert_eq!(&b[..4], b"YMS1");
        assert_eq!(&b[4..8], &1u32.to_le_bytes());
        assert_eq!(b[24], 1);
        assert_eq!(b.len(), 25 + 24 * 4 * 16);
    }

    #[test]
    fn corrupt_inputs_rejected() {
        let cx = CubicalComplex::cube(2).unwrap();
        let mut b = FieldSnapshot::new(&cx, Cochain::zeros(&cx, 0, 2)).to_bytes();
        let trunc = &b[..b.len() - 3];
        assert!(matches!(FieldSnapshot::from_bytes(trunc), Err(Error::FormatError { .. })));
        b[0] = b'X';
        assert!(matches!(FieldSnapshot::from_bytes(&b), Err(Error::FormatError { offset: 0, .. })));
    }
}
