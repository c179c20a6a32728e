//! Dense linear algebra over GF(2) with bit-packed rows.
//!
//! A [`BinaryMatrix`] stores each row as a run of 64-bit words. All arithmetic
//! is mod 2. Zero-row matrices are legal (they represent the zero code);
//! zero-column matrices are not.

use std::fmt;

const WORD_BITS: usize = 64;

/// Dense matrix over the two-element field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    /// All-zero matrix. `cols` must be positive; `rows` may be zero.
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(cols > 0, "a BinaryMatrix needs at least one column");
        let words_per_row = (cols + WORD_BITS - 1) / WORD_BITS;
        BinaryMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zero(k, k.max(1));
        for i in 0..k {
            m.set(i, i, true);
        }
        m
    }

    pub fn all_ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Build from strings of '0'/'1' characters, one per row.
    pub fn from_rows_str(rows: &[&str]) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => panic!("illegal character {ch:?} in row {i}"),
                }
            }
        }
        m
    }

    /// Build a `rows.len() x cols` matrix from rows given as bit masks
    /// (bit `j` of the mask is column `j`). Requires `cols <= 64`.
    pub fn from_row_masks(cols: usize, rows: &[u64]) -> Self {
        assert!(cols <= 64);
        let mut m = Self::zero(rows.len(), cols);
        for (i, &mask) in rows.iter().enumerate() {
            debug_assert!(cols == 64 || mask < (1u64 << cols));
            m.data[i * m.words_per_row] = mask;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.words_per_row + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words_per_row + c / WORD_BITS];
        if bit {
            *w |= 1 << (c % WORD_BITS);
        } else {
            *w &= !(1 << (c % WORD_BITS));
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// Row as a bit mask; requires `cols <= 64`.
    pub fn row_mask(&self, r: usize) -> u64 {
        assert!(self.cols <= 64);
        self.data[r * self.words_per_row]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    /// Inner product of rows `a` and `b` over GF(2).
    pub fn row_dot(&self, a: usize, b: usize) -> bool {
        let wa = self.row_words(a);
        let wb = self.row_words(b);
        wa.iter()
            .zip(wb)
            .map(|(x, y)| (x & y).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    /// `row[target] += row[source]` (mod 2). The two rows must differ.
    pub fn xor_rows(&mut self, target: usize, source: usize) {
        assert_ne!(target, source);
        let wpr = self.words_per_row;
        let (t, s) = (target * wpr, source * wpr);
        for w in 0..wpr {
            let v = self.data[s + w];
            self.data[t + w] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for w in 0..wpr {
            self.data.swap(a * wpr + w, b * wpr + w);
        }
    }

    pub fn transpose(&self) -> Self {
        assert!(self.rows > 0, "cannot transpose a 0-row matrix");
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Mod-2 matrix product. Panics on a dimension mismatch.
    pub fn mat_mul(&self, rhs: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "mat_mul dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let (t, s) = (r * out.words_per_row, c * rhs.words_per_row);
                    for w in 0..out.words_per_row {
                        out.data[t + w] ^= rhs.data[s + w];
                    }
                }
            }
        }
        out
    }

    /// Gram matrix `M * M^T`.
    pub fn gram(&self) -> BinaryMatrix {
        let k = self.rows;
        let mut g = Self::zero(k, k.max(1));
        g.rows = k; // a 0x1 block stands in for the empty Gram matrix
        for i in 0..k {
            for j in 0..k {
                if self.row_dot(i, j) {
                    g.set(i, j, true);
                }
            }
        }
        g
    }

    /// Reduced row echelon form and the ordered pivot columns.
    /// The row space is preserved; zero rows sink to the bottom.
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(rank, p);
            for r in 0..self.rows {
                if r != rank && self.get(r, col) {
                    self.xor_rows(r, rank);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    /// RREF with zero rows removed: a full-rank matrix with the same row space.
    pub fn rref_compact(&self) -> (BinaryMatrix, Vec<usize>) {
        let (m, pivots) = self.rref();
        let rank = pivots.len();
        let mut out = Self::zero(rank, self.cols);
        out.data[..rank * m.words_per_row].copy_from_slice(&m.data[..rank * m.words_per_row]);
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// True iff the matrix is square of full rank. Panics on non-square input.
    pub fn is_nonsingular(&self) -> bool {
        assert_eq!(self.rows, self.cols, "is_nonsingular needs a square matrix");
        self.rank() == self.rows
    }

    /// Basis of `{x : M x^T = 0}`, one vector per row.
    /// The result has `cols - rank` rows (possibly zero).
    pub fn nullspace_basis(&self) -> BinaryMatrix {
        let (r, pivots) = self.rref();
        let is_pivot = {
            let mut v = vec![usize::MAX; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = i;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| is_pivot[c] == usize::MAX).collect();
        let mut basis = Self::zero(free.len(), self.cols);
        for (bi, &f) in free.iter().enumerate() {
            basis.set(bi, f, true);
            for (pi, &p) in pivots.iter().enumerate() {
                if r.get(pi, f) {
                    basis.set(bi, p, true);
                }
            }
        }
        basis
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn hstack(&self, right: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.rows, right.rows);
        let mut out = Self::zero(self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..right.cols {
                if right.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, below: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, below.cols);
        let mut out = Self::zero(self.rows + below.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&below.data);
        out
    }

    /// Copy of the matrix with column `c` removed. Requires `cols >= 2`.
    pub fn delete_column(&self, c: usize) -> BinaryMatrix {
        assert!(c < self.cols && self.cols >= 2);
        let mut out = Self::zero(self.rows, self.cols - 1);
        for r in 0..self.rows {
            let mut jj = 0;
            for j in 0..self.cols {
                if j == c {
                    continue;
                }
                if self.get(r, j) {
                    out.set(r, jj, true);
                }
                jj += 1;
            }
        }
        out
    }

    /// Column `c` as a bit mask over rows; requires `rows <= 32`.
    pub fn column_u32(&self, c: usize) -> u32 {
        assert!(self.rows <= 32);
        let mut v = 0u32;
        for r in 0..self.rows {
            if self.get(r, c) {
                v |= 1 << r;
            }
        }
        v
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// In-place RREF for rows stored as `u32` bit masks (bit `j` = column `j`).
/// Zero rows are dropped; returns the pivot columns. Used by the search-heavy
/// paths where full `BinaryMatrix` bookkeeping would dominate.
pub(crate) fn rref_u32(rows: &mut Vec<u32>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let bit = 1u32 << col;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::from_rows_str(rows)
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let i3 = BinaryMatrix::identity(3);
        let (r, pivots) = i3.rref();
        assert_eq!(r, i3);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_dependent_rows() {
        // row3 = row1 + row2
        let a = m(&["1010", "0110", "1100"]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.row_mask(0), m(&["1010"]).row_mask(0));
        assert_eq!(r.row_mask(1), m(&["0110"]).row_mask(0));
        assert!(r.row_is_zero(2));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn rref_zero_row() {
        let z = m(&["0000"]);
        let (r, pivots) = z.rref();
        assert_eq!(r, z);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BinaryMatrix::identity(4).rank(), 4);
        assert_eq!(m(&["11", "11"]).rank(), 1);
    }

    #[test]
    fn mat_mul_gram_of_corollary_even_code() {
        let g = m(&["111000", "111111"]);
        let gram = g.gram();
        assert_eq!(gram, m(&["11", "10"]));
        assert_eq!(g.mat_mul(&g.transpose()), gram);
    }

    #[test]
    fn identity_is_left_unit() {
        let a = m(&["10110", "01011"]);
        assert_eq!(BinaryMatrix::identity(2).mat_mul(&a), a);
    }

    #[test]
    fn gram_of_ones_column_extension_is_j_minus_i() {
        // Prepending a 1-column to an orthonormal basis gives Gram J_k - I_k.
        let g = BinaryMatrix::identity(4);
        let ones = BinaryMatrix::all_ones(4, 1);
        let ext = ones.hstack(&g);
        let mut expect = BinaryMatrix::all_ones(4, 4);
        for i in 0..4 {
            expect.set(i, i, false);
        }
        assert_eq!(ext.gram(), expect);
    }

    #[test]
    fn j_minus_i_singularity_depends_on_parity() {
        for k in 2..=6 {
            let mut jk = BinaryMatrix::all_ones(k, k);
            for i in 0..k {
                jk.set(i, i, false);
            }
            // det(J_k - I_k) = 1 - k mod 2
            assert_eq!(jk.is_nonsingular(), k % 2 == 0, "k={k}");
        }
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(BinaryMatrix::identity(5).nullspace_basis().rows(), 0);

        let ones = BinaryMatrix::all_ones(1, 6);
        let ns = ones.nullspace_basis();
        assert_eq!(ns.rows(), 5);
        for r in 0..5 {
            assert_eq!(ns.row_weight(r) % 2, 0);
        }

        let g = m(&["111000", "111111"]);
        let ns = g.nullspace_basis();
        assert_eq!(ns.rows(), 4);
        let check = g.mat_mul(&ns.transpose());
        for r in 0..check.rows() {
            assert!(check.row_is_zero(r));
        }
    }

    #[test]
    fn zero_row_matrix_is_legal() {
        let z = BinaryMatrix::zero(0, 5);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace_basis().rows(), 5);
        let (r, pivots) = z.rref();
        assert_eq!(r.rows(), 0);
        assert!(pivots.is_empty());
    }

    fn arb_matrix() -> impl Strategy<Value = BinaryMatrix> {
        (1usize..7, 1usize..10).prop_flat_map(|(rows, cols)| {
            proptest::collection::vec(any::<u64>(), rows).prop_map(move |masks| {
                let masks: Vec<u64> = masks
                    .into_iter()
                    .map(|m| m & ((1u64 << cols) - 1))
                    .collect();
                BinaryMatrix::from_row_masks(cols, &masks)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.rank() + m.nullspace_basis().rows(), m.cols());
        }

        #[test]
        fn mat_mul_is_associative(a in arb_matrix(), b in arb_matrix(), c in arb_matrix()) {
            // reshape b and c so the triple is conformable
            let b = {
                let mut masks = vec![];
                for r in 0..a.cols() {
                    masks.push(if r < b.rows() { b.row_mask(r) & ((1u64 << b.cols()) - 1) } else { 0 });
                }
                BinaryMatrix::from_row_masks(b.cols(), &masks)
            };
            let c = {
                let mut masks = vec![];
                for r in 0..b.cols() {
                    masks.push(if r < c.rows() { c.row_mask(r) & ((1u64 << c.cols()) - 1) } else { 0 });
                }
                BinaryMatrix::from_row_masks(c.cols(), &masks)
            };
            prop_assert_eq!(a.mat_mul(&b).mat_mul(&c), a.mat_mul(&b.mat_mul(&c)));
        }
    }
}
