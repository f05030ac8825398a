//! Kernels of tall matrices over F_p, fed one row at a time.
//!
//! Rows are reduced against the pivots found so far (in insertion order,
//! which keeps each stored row free of earlier pivot columns); once all rows
//! are in, back-substitution gives the reduced echelon form and a kernel
//! basis indexed by the free columns. Over F_2 rows are bit-packed.

use super::fp;

/// Incremental row reduction for an `? × cols` matrix.
#[derive(Clone, Debug)]
pub struct KernelBuilder {
    p: u32,
    cols: usize,
    rows: Vec<(usize, Vec<u8>)>,
    bits: Vec<(usize, Vec<u64>)>,
}

impl KernelBuilder {
    pub fn new(p: u32, cols: usize) -> Self {
        KernelBuilder {
            p,
            cols,
            rows: Vec::new(),
            bits: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        if self.p == 2 {
            self.bits.len()
        } else {
            self.rows.len()
        }
    }

    /// Whether the kernel is already trivial (further rows are pointless).
    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn push(&mut self, row: &[u8]) {
        debug_assert_eq!(row.len(), self.cols);
        if self.p == 2 {
            let mut v = vec![0u64; self.cols.div_ceil(64)];
            for (i, &c) in row.iter().enumerate() {
                if c & 1 == 1 {
                    v[i / 64] |= 1 << (i % 64);
                }
            }
            self.push_bits(v);
            return;
        }
        let p = self.p;
        let mut v = row.to_vec();
        for (piv, r) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                let f = fp::neg(c, p);
                for (x, &y) in v.iter_mut().zip(r) {
                    *x = fp::add(*x, fp::mul(f, y, p), p);
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = fp::inv(v[piv], p);
            for x in &mut v {
                *x = fp::mul(*x, inv, p);
            }
            self.rows.push((piv, v));
        }
    }

    /// Pushes a bit-packed row (only for p = 2).
    pub fn push_bits(&mut self, mut v: Vec<u64>) {
        debug_assert_eq!(self.p, 2);
        for (piv, r) in &self.bits {
            if v[piv / 64] >> (piv % 64) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x ^= y;
                }
            }
        }
        if let Some(w) = v.iter().position(|&x| x != 0) {
            let piv = w * 64 + v[w].trailing_zeros() as usize;
            self.bits.push((piv, v));
        }
    }

    /// A basis of the right kernel.
    pub fn kernel(mut self) -> Vec<Vec<u8>> {
        if self.p == 2 {
            self.rows = self
                .bits
                .iter()
                .map(|(piv, v)| (*piv, (0..self.cols).map(|i| (v[i / 64] >> (i % 64) & 1) as u8).collect()))
                .collect();
        }
        let p = self.p;
        let n = self.rows.len();
        for j in (0..n).rev() {
            let (pj, rj) = self.rows[j].clone();
            for i in 0..j {
                let c = self.rows[i].1[pj];
                if c != 0 {
                    let f = fp::neg(c, p);
                    for (x, &y) in self.rows[i].1.iter_mut().zip(&rj) {
                        *x = fp::add(*x, fp::mul(f, y, p), p);
                    }
                }
            }
        }
        let mut is_pivot = vec![false; self.cols];
        for (piv, _) in &self.rows {
            is_pivot[*piv] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![0u8; self.cols];
                x[f] = 1;
                for (piv, r) in &self.rows {
                    x[*piv] = fp::neg(r[f], p);
                }
                x
            })
            .collect()
    }
}
