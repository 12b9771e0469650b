//! Exact linear algebra: F2 elimination on packed bit rows, and integer
//! Smith normal form for branched-cover homology.
//!
//! All F2 elimination uses deterministic left-to-right pivoting so that
//! identical inputs produce identical echelon forms and kernel bases.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("subspace rows are not contained in the span of the ambient rows")]
    NotASubspace,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Dense matrix over F2 with rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    pitch: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "F2Matrix({}x{})", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let pitch = cols.div_ceil(64).max(1);
        F2Matrix { rows, cols, pitch, words: vec![0; rows * pitch] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = F2Matrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<usize>]) -> Self {
        let mut m = F2Matrix::zero(rows.len(), cols);
        for (r, support) in rows.iter().enumerate() {
            for &c in support {
                m.flip(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.words[r * self.pitch + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.words[r * self.pitch + c / 64];
        *w &= !(1u64 << (c % 64));
        *w |= (v as u64) << (c % 64);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.words[r * self.pitch + c / 64] ^= 1u64 << (c % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn row_xor(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.pitch, src * self.pitch);
        for k in 0..self.pitch {
            let w = self.words[s + k];
            self.words[d + k] ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.pitch {
            self.words.swap(a * self.pitch + k, b * self.pitch + k);
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.pitch..(r + 1) * self.pitch]
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix product over F2; `self.cols` must equal `rhs.rows`.
    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows, "mul dimension mismatch");
        let mut out = F2Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let (d, s) = (r * out.pitch, c * rhs.pitch);
                    for k in 0..rhs.pitch {
                        out.words[d + k] ^= rhs.words[s + k];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (w, r) in out.words.iter_mut().zip(&rhs.words) {
            *w ^= r;
        }
        out
    }

    /// Apply the matrix to a column vector given as a packed row.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.rows.div_ceil(64).max(1)];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (w, x) in self.words[r * self.pitch..(r + 1) * self.pitch].iter().zip(v) {
                acc ^= w & x;
            }
            if acc.count_ones() % 2 == 1 {
                out[r / 64] ^= 1 << (r % 64);
            }
        }
        out
    }

    pub fn stack(top: &F2Matrix, bottom: &F2Matrix) -> F2Matrix {
        assert_eq!(top.cols, bottom.cols);
        let mut m = F2Matrix::zero(top.rows + bottom.rows, top.cols);
        m.words[..top.words.len()].copy_from_slice(&top.words);
        m.words[top.words.len()..].copy_from_slice(&bottom.words);
        m
    }

    /// In-place row echelon; returns the pivot columns in order.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.row_xor(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

pub fn rank_f2(m: &F2Matrix) -> usize {
    let mut e = m.clone();
    e.echelonize().len()
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per row.
/// Row count equals `cols - rank`.
pub fn kernel_basis_f2(m: &F2Matrix) -> F2Matrix {
    let mut e = m.clone();
    let pivots = e.echelonize();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = F2Matrix::zero(free.len(), m.cols);
    for (k, &fc) in free.iter().enumerate() {
        basis.set(k, fc, true);
        // back-substitute: pivot row i has leading 1 at pivots[i]
        for (i, &pc) in pivots.iter().enumerate() {
            if e.get(i, fc) {
                basis.set(k, pc, true);
            }
        }
    }
    basis
}

/// `rank(space) - rank(subspace)` with a containment check on the rows.
pub fn quotient_dim_f2(space: &F2Matrix, subspace: &F2Matrix) -> Result<usize, LinalgError> {
    if space.cols() != subspace.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} vs {} columns",
            space.cols(),
            subspace.cols()
        )));
    }
    let rs = rank_f2(space);
    let joint = rank_f2(&F2Matrix::stack(space, subspace));
    if joint != rs {
        return Err(LinalgError::NotASubspace);
    }
    Ok(rs - rank_f2(subspace))
}

/// Incremental F2 echelon basis with optional coefficient tracking.
///
/// `reduce` returns the residue of a vector modulo the current span;
/// `insert` adds an independent vector and reports its index.
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot: Vec<usize>,
    // coefficient of each stored row in terms of inserted vectors
    coeffs: Vec<Vec<u64>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivot: Vec::new(), coeffs: Vec::new(), inserted: 0 }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn leading(&self, v: &[u64]) -> Option<usize> {
        for (k, &w) in v.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Reduce `v` modulo the span; returns (residue, combination of inserted vectors).
    pub fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut v = v.to_vec();
        let mut comb = vec![0u64; self.inserted.div_ceil(64).max(1)];
        while let Some(lead) = self.leading(&v) {
            let Some(i) = self.pivot.iter().position(|&p| p == lead) else { break };
            for (a, b) in v.iter_mut().zip(&self.rows[i]) {
                *a ^= b;
            }
            for (a, b) in comb.iter_mut().zip(&self.coeffs[i]) {
                *a ^= b;
            }
        }
        (v, comb)
    }

    /// Insert `v` if independent; returns its insertion index, or None.
    /// Rows stay in echelon (not fully reduced) form; `reduce` chains.
    pub fn insert(&mut self, v: &[u64]) -> Option<usize> {
        let (res, mut comb) = self.reduce(v);
        let lead = self.leading(&res)?;
        let idx = self.inserted;
        self.inserted += 1;
        let want = self.inserted.div_ceil(64);
        if comb.len() < want {
            comb.push(0);
        }
        for c in &mut self.coeffs {
            if c.len() < want {
                c.push(0);
            }
        }
        comb[idx / 64] ^= 1 << (idx % 64);
        self.rows.push(res);
        self.pivot.push(lead);
        self.coeffs.push(comb);
        Some(idx)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).0.iter().all(|&w| w == 0)
    }

    pub fn word_len(&self) -> usize {
        self.cols.div_ceil(64).max(1)
    }
}

/// Rectangular matrix with arbitrary-precision integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, entries: data.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * factor;
            self.entries[dst * self.cols + c] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * factor;
            self.entries[r * self.cols + dst] += v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

/// Invariant factors d1 | d2 | ... of the matrix, nonnegative, unit and
/// nonunit factors alike, with zero factors (the nullity of the cokernel
/// presentation) at the end. Length is `min(rows, cols)`.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (nr, nc) = (a.rows, a.cols);
    let n = nr.min(nc);
    let mut k = 0;
    while k < n {
        // smallest-magnitude nonzero pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in k..nr {
            for c in k..nc {
                if !a.get(r, c).is_zero()
                    && best
                        .map(|(br, bc)| a.get(r, c).abs() < a.get(br, bc).abs())
                        .unwrap_or(true)
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap_rows(k, pr);
        a.swap_cols(k, pc);

        let mut dirty = true;
        while dirty {
            dirty = false;
            for r in k + 1..nr {
                if !a.get(r, k).is_zero() {
                    let q = div_round(a.get(r, k), a.get(k, k));
                    a.add_row(r, k, &(-q));
                    if !a.get(r, k).is_zero() {
                        a.swap_rows(k, r);
                        dirty = true;
                    }
                }
            }
            for c in k + 1..nc {
                if !a.get(k, c).is_zero() {
                    let q = div_round(a.get(k, c), a.get(k, k));
                    a.add_col(c, k, &(-q));
                    if !a.get(k, c).is_zero() {
                        a.swap_cols(k, c);
                        dirty = true;
                    }
                }
            }
        }

        // enforce divisibility of the trailing block by the pivot
        let pivot = a.get(k, k).clone();
        let mut fixed = true;
        'scan: for r in k + 1..nr {
            for c in k + 1..nc {
                if !(a.get(r, c) % &pivot).is_zero() {
                    a.add_row(k, r, &BigInt::from(1));
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            k += 1;
        }
    }
    let mut factors: Vec<BigInt> = (0..n).map(|i| a.get(i, i).abs()).collect();
    // zeros last (they already are, but keep the contract explicit)
    factors.sort_by_key(|f| f.is_zero());
    factors
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // rounded division keeps remainders small during elimination
    let (q, r) = (a / b, a % b);
    if &r.abs() * 2 > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}
