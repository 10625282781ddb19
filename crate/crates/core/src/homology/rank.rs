//! Exact matrix rank over ℚ and GF(2).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sparse integer matrix given by `(row, col, value)` triples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        self.entries.push((row, col, value));
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0i64; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            dense[r][c] += v;
        }
        dense
    }

    /// `self * other` as a dense matrix.
    pub fn compose(&self, other: &SparseMatrix) -> Vec<Vec<i64>> {
        debug_assert_eq!(self.cols, other.rows);
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut out = vec![vec![0i64; other.cols]; self.rows];
        for &(r, k, a) in &self.entries {
            for &(c, b) in &by_row[k] {
                out[r][c] += a * b;
            }
        }
        out
    }
}

/// Rank of an integer matrix over ℚ by fraction-free elimination.
///
/// Rows are kept primitive (divided by their content) after every update.
/// Arithmetic runs in `i64` and restarts in `BigInt` on overflow.
pub fn rank_rational(m: &SparseMatrix) -> usize {
    let mut flat = vec![0i64; m.rows * m.cols];
    for &(r, c, v) in &m.entries {
        flat[r * m.cols + c] += v;
    }
    rank_flat_rational(&mut flat, m.rows, m.cols)
}

/// Rank over ℚ of the row-major `rows × cols` matrix in `flat`, which is
/// overwritten.
pub(crate) fn rank_flat_rational(flat: &mut [i64], rows: usize, cols: usize) -> usize {
    let original = flat.to_vec();
    match eliminate(flat, rows, cols) {
        Some(r) => r,
        None => {
            let mut big: Vec<BigInt> = original.into_iter().map(BigInt::from).collect();
            eliminate(&mut big, rows, cols).expect("bigint elimination cannot overflow")
        }
    }
}

trait ExactInt: Clone + Zero + PartialEq {
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl ExactInt for i64 {
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl ExactInt for BigInt {
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

fn swap_rows<T>(flat: &mut [T], cols: usize, a: usize, b: usize) {
    if a != b {
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = flat.split_at_mut(hi * cols);
        head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
    }
}

fn eliminate<T: ExactInt>(flat: &mut [T], rows: usize, cols: usize) -> Option<usize> {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // prefer a unit pivot to keep entries small
        let mut pivot = None;
        for r in rank..rows {
            let v = &flat[r * cols + col];
            if !v.is_zero() {
                if v.is_unit() {
                    pivot = Some(r);
                    break;
                }
                pivot.get_or_insert(r);
            }
        }
        let Some(p) = pivot else { continue };
        swap_rows(flat, cols, rank, p);
        let (head, tail) = flat.split_at_mut((rank + 1) * cols);
        let prow = &head[rank * cols..];
        let a = prow[col].clone();
        let unit = a.is_unit();
        for row in tail.chunks_mut(cols) {
            if row[col].is_zero() {
                continue;
            }
            let b = row[col].clone();
            if unit {
                // row -= (b / a) * prow, exact since a = ±1
                let f = b.mul(&a)?;
                for j in col..cols {
                    if !prow[j].is_zero() {
                        row[j] = row[j].sub(&prow[j].mul(&f)?)?;
                    }
                }
                continue;
            }
            let g = a.gcd(&b);
            let (sa, sb) = (a.div_exact(&g), b.div_exact(&g));
            let mut content = T::zero();
            for j in col..cols {
                let v = row[j].mul(&sa)?.sub(&prow[j].mul(&sb)?)?;
                content = content.gcd(&v);
                row[j] = v;
            }
            if !content.is_zero() && !content.is_unit() {
                for v in row[col..].iter_mut() {
                    *v = v.div_exact(&content);
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Rank over GF(2); entries are reduced mod 2.
pub fn rank_gf2(m: &SparseMatrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut bits = vec![0u64; m.rows * words];
    for &(r, c, v) in &m.entries {
        if v.rem_euclid(2) == 1 {
            bits[r * words + c / 64] ^= 1u64 << (c % 64);
        }
    }
    rank_flat_gf2(&mut bits, m.rows, m.cols)
}

/// Rank over GF(2) of `rows` bit rows of `cols.div_ceil(64)` words each.
pub(crate) fn rank_flat_gf2(bits: &mut [u64], rows: usize, cols: usize) -> usize {
    let words = cols.div_ceil(64);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows).find(|&r| bits[r * words + w] & bit != 0) else {
            continue;
        };
        swap_rows(bits, words, rank, p);
        let (head, tail) = bits.split_at_mut((rank + 1) * words);
        let pivot = &head[rank * words..];
        for row in tail.chunks_mut(words) {
            if row[w] & bit != 0 {
                for (x, y) in row.iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}
