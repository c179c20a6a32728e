//! Binary linear codes and their structural metrics: dual, minimum weight,
//! weight enumerator, hull dimension, puncturing and shortening.

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

/// Hard cap on the dimension for full codeword enumeration.
pub const ENUM_CAP: usize = 28;

/// A binary linear `[n, k]` code, stored as a full-rank generator matrix in
/// reduced row echelon form. Two values with the same row space compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearCode {
    n: usize,
    k: usize,
    gen: BinaryMatrix,
}

/// Structural metrics of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMetrics {
    pub d: usize,
    /// Minimum weight of the dual; 0 when the dual is the zero code.
    pub d_dual: usize,
    pub hull_dim: usize,
    pub weight_enumerator: Vec<u64>,
    pub is_even_like: bool,
    pub has_all_ones: bool,
}

impl LinearCode {
    /// Normalizes an arbitrary generating set: the row space of `m` becomes
    /// the code, zero rows are dropped, the stored matrix is the compact RREF.
    pub fn from_generator(m: &BinaryMatrix) -> Self {
        let (g, pivots) = m.rref_compact();
        LinearCode {
            n: m.cols(),
            k: pivots.len(),
            gen: g,
        }
    }

    pub fn from_rows_str(rows: &[&str]) -> Self {
        Self::from_generator(&BinaryMatrix::from_rows_str(rows))
    }

    /// Requires `n <= 64`; rows are bit masks with bit `j` = coordinate `j`.
    pub fn from_row_masks(n: usize, rows: &[u64]) -> Self {
        Self::from_generator(&BinaryMatrix::from_row_masks(n, rows))
    }

    pub fn zero_code(n: usize) -> Self {
        assert!(n > 0);
        LinearCode {
            n,
            k: 0,
            gen: BinaryMatrix::zero(0, n),
        }
    }

    pub fn full_space(n: usize) -> Self {
        LinearCode {
            n,
            k: n,
            gen: BinaryMatrix::identity(n),
        }
    }

    pub fn repetition(n: usize) -> Self {
        Self::from_generator(&BinaryMatrix::all_ones(1, n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.gen
    }

    /// Gram matrix `G G^T` of the stored generator.
    pub fn gram(&self) -> BinaryMatrix {
        self.gen.gram()
    }

    /// The dual `[n, n-k]` code.
    pub fn dual(&self) -> LinearCode {
        if self.k == 0 {
            return LinearCode::full_space(self.n);
        }
        LinearCode::from_generator(&self.gen.nullspace_basis())
    }

    /// Dimension of the hull `C ∩ C^⊥`, computed as `k - rank(G G^T)`.
    pub fn hull_dim(&self) -> usize {
        self.k - self.gram().rank()
    }

    fn check_enum_cap(&self, dim: usize) -> Result<()> {
        if dim > ENUM_CAP {
            return Err(Error::EnumerationCap { dim, cap: ENUM_CAP });
        }
        Ok(())
    }

    /// Visits every nonzero codeword's weight (Gray-code order).
    fn for_each_nonzero_weight(&self, mut f: impl FnMut(usize) -> bool) {
        if self.k == 0 {
            return;
        }
        let wpr = self.gen.row_words(0).len();
        let mut buf = vec![0u64; wpr];
        let total: u64 = 1u64 << self.k;
        for idx in 1..total {
            let j = idx.trailing_zeros() as usize;
            for (b, w) in buf.iter_mut().zip(self.gen.row_words(j)) {
                *b ^= w;
            }
            let weight: usize = buf.iter().map(|w| w.count_ones() as usize).sum();
            if !f(weight) {
                return;
            }
        }
    }

    /// Minimum weight over all nonzero codewords, by full enumeration.
    pub fn min_weight(&self) -> Result<usize> {
        if self.k == 0 {
            return Err(Error::ZeroCode("minimum weight"));
        }
        self.check_enum_cap(self.k)?;
        let mut best = usize::MAX;
        self.for_each_nonzero_weight(|w| {
            best = best.min(w);
            best > 1
        });
        Ok(best)
    }

    /// True iff every nonzero codeword has weight at least `d`.
    pub fn min_weight_at_least(&self, d: usize) -> Result<bool> {
        if self.k == 0 {
            return Err(Error::ZeroCode("minimum weight"));
        }
        self.check_enum_cap(self.k)?;
        let mut ok = true;
        self.for_each_nonzero_weight(|w| {
            if w < d {
                ok = false;
            }
            ok
        });
        Ok(ok)
    }

    /// Exact weight distribution `A_0 .. A_n`.
    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        self.check_enum_cap(self.k)?;
        let mut counts = vec![0u64; self.n + 1];
        counts[0] = 1;
        self.for_each_nonzero_weight(|w| {
            counts[w] += 1;
            true
        });
        Ok(counts)
    }

    /// Minimum weight of the dual code; the cap applies to `n - k`.
    pub fn dual_distance(&self) -> Result<usize> {
        self.dual().min_weight()
    }

    /// Deletes coordinate `i` from every codeword.
    pub fn puncture(&self, i: usize) -> Result<LinearCode> {
        if i >= self.n {
            return Err(Error::InvalidCoordinate { coord: i, n: self.n });
        }
        if self.n == 1 {
            return Err(Error::Precondition("cannot puncture a length-1 code".into()));
        }
        if self.k == 0 {
            return Ok(LinearCode::zero_code(self.n - 1));
        }
        Ok(LinearCode::from_generator(&self.gen.delete_column(i)))
    }

    /// Restricts to codewords with 0 at coordinate `i`, then deletes it.
    /// The dimension drops by one exactly when some codeword is 1 there.
    pub fn shorten(&self, i: usize) -> Result<LinearCode> {
        if i >= self.n {
            return Err(Error::InvalidCoordinate { coord: i, n: self.n });
        }
        if self.n == 1 {
            return Err(Error::Precondition("cannot shorten a length-1 code".into()));
        }
        if self.k == 0 {
            return Ok(LinearCode::zero_code(self.n - 1));
        }
        let mut g = self.gen.clone();
        if let Some(r) = (0..self.k).find(|&r| g.get(r, i)) {
            for l in 0..self.k {
                if l != r && g.get(l, i) {
                    g.xor_rows(l, r);
                }
            }
            // zero out the pivot row: its deletion keeps only words with 0 at i
            for c in 0..self.n {
                g.set(r, c, false);
            }
        }
        Ok(LinearCode::from_generator(&g.delete_column(i)))
    }

    /// `(is_even_like, has_all_ones)`.
    ///
    /// All basis rows having even weight already forces every codeword even.
    pub fn parity_flags(&self) -> (bool, bool) {
        let even = (0..self.k).all(|r| self.gen.row_weight(r) % 2 == 0);
        let all_ones = if self.k == 0 {
            false
        } else {
            let stacked = self.gen.vstack(&BinaryMatrix::all_ones(1, self.n));
            stacked.rank() == self.k
        };
        (even, all_ones)
    }

    pub fn is_even_like(&self) -> bool {
        self.parity_flags().0
    }

    pub fn contains_all_ones(&self) -> bool {
        self.parity_flags().1
    }

    /// True iff `word` (given as rows of a 1 x n matrix) lies in the code.
    pub fn contains(&self, word: &BinaryMatrix) -> bool {
        assert_eq!(word.cols(), self.n);
        if self.k == 0 {
            return word.row_is_zero(0);
        }
        self.gen.vstack(word).rank() == self.k
    }

    /// All metrics at once; requires `k >= 1` and both `k` and `n - k`
    /// within the enumeration cap.
    pub fn metrics(&self) -> Result<CodeMetrics> {
        let d = self.min_weight()?;
        let d_dual = if self.k == self.n {
            0
        } else {
            self.dual_distance()?
        };
        let we = self.weight_enumerator()?;
        let (is_even_like, has_all_ones) = self.parity_flags();
        Ok(CodeMetrics {
            d,
            d_dual,
            hull_dim: self.hull_dim(),
            weight_enumerator: we,
            is_even_like,
            has_all_ones,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::random_code;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dual_of_full_space_is_zero_code() {
        let c = LinearCode::full_space(5);
        let d = c.dual();
        assert_eq!((d.n(), d.k()), (5, 0));
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn dual_of_repetition_is_parity_check() {
        let c = LinearCode::repetition(7);
        let d = c.dual();
        assert_eq!((d.n(), d.k()), (7, 6));
        assert_eq!(d.min_weight().unwrap(), 2);
    }

    #[test]
    fn dual_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = random_code(&mut rng, 9, 4);
            assert_eq!(c.dual().dual(), c);
        }
    }

    #[test]
    fn min_weight_examples() {
        assert_eq!(LinearCode::repetition(6).min_weight().unwrap(), 6);
        let c = LinearCode::from_rows_str(&["111000", "111111"]);
        assert_eq!(c.min_weight().unwrap(), 3);
        assert!(matches!(
            LinearCode::zero_code(4).min_weight(),
            Err(Error::ZeroCode(_))
        ));
    }

    #[test]
    fn min_weight_matches_exhaustive_oracle() {
        // independent oracle: explicit listing of all nonzero codewords
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let c = random_code(&mut rng, 10, 4);
            if c.k() == 0 {
                continue;
            }
            let g = c.generator();
            let mut best = usize::MAX;
            for mask in 1u64..(1 << c.k()) {
                let mut word = 0u64;
                for r in 0..c.k() {
                    if (mask >> r) & 1 == 1 {
                        word ^= g.row_mask(r);
                    }
                }
                best = best.min(word.count_ones() as usize);
            }
            assert_eq!(c.min_weight().unwrap(), best);
        }
    }

    #[test]
    fn weight_enumerator_examples() {
        let z = LinearCode::zero_code(4);
        assert_eq!(z.weight_enumerator().unwrap(), vec![1, 0, 0, 0, 0]);

        let c = LinearCode::from_rows_str(&["111000", "111111"]);
        let we = c.weight_enumerator().unwrap();
        assert_eq!(we, vec![1, 0, 0, 2, 0, 0, 1]);

        let pc = LinearCode::repetition(5).dual();
        let we = pc.weight_enumerator().unwrap();
        assert_eq!(we, vec![1, 0, 10, 0, 5, 0]);
    }

    #[test]
    fn weight_enumerator_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let c = random_code(&mut rng, 9, 5);
            if c.k() == 0 {
                continue;
            }
            let we = c.weight_enumerator().unwrap();
            assert_eq!(we.iter().sum::<u64>(), 1u64 << c.k());
            let d = c.min_weight().unwrap();
            assert!(we[d] > 0);
            assert!(we[1..d].iter().all(|&a| a == 0));
        }
    }

    #[test]
    fn hull_examples() {
        let so = LinearCode::from_rows_str(&["1100", "0011"]);
        assert_eq!(so.hull_dim(), 2);
        let c = LinearCode::from_rows_str(&["111000", "111111"]);
        assert_eq!(c.hull_dim(), 0);
        assert_eq!(LinearCode::full_space(4).hull_dim(), 0);
    }

    #[test]
    fn puncture_examples() {
        let c = LinearCode::from_rows_str(&["111000", "111111"]);
        let p = c.puncture(0).unwrap();
        assert_eq!(p, LinearCode::from_rows_str(&["11000", "11111"]));
        assert_eq!(p.k(), 2);

        let r = LinearCode::repetition(6).puncture(3).unwrap();
        assert_eq!(r, LinearCode::repetition(5));

        assert!(c.puncture(6).is_err());
    }

    #[test]
    fn shorten_examples() {
        let c = LinearCode::from_rows_str(&["111000", "111111"]);
        let s = c.shorten(0).unwrap();
        assert_eq!(s, LinearCode::from_rows_str(&["00111"]));

        let f = LinearCode::full_space(4).shorten(2).unwrap();
        assert_eq!(f, LinearCode::full_space(3));
    }

    #[test]
    fn shorten_on_unused_coordinate_keeps_dimension() {
        // no codeword has a 1 at coordinate 0
        let c = LinearCode::from_rows_str(&["0110", "0001"]);
        let s = c.shorten(0).unwrap();
        assert_eq!(s.k(), 2);
    }

    #[test]
    fn puncture_shorten_duality() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let c = random_code(&mut rng, 8, 4);
            for i in 0..c.n() {
                assert_eq!(c.puncture(i).unwrap().dual(), c.dual().shorten(i).unwrap());
                assert_eq!(c.shorten(i).unwrap().dual(), c.dual().puncture(i).unwrap());
            }
        }
    }

    #[test]
    fn punctured_and_shortened_dimensions_when_d_gt_1() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let mut seen = 0;
        while seen < 25 {
            let c = random_code(&mut rng, 9, 4);
            if c.k() != 4 || c.min_weight().unwrap() < 2 {
                continue;
            }
            seen += 1;
            for i in 0..c.n() {
                assert_eq!(c.puncture(i).unwrap().k(), c.k());
                assert_eq!(c.dual().shorten(i).unwrap().k(), c.n() - 1 - c.k());
            }
        }
    }

    #[test]
    fn hull_growth_under_shortening_is_at_most_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let c = random_code(&mut rng, 9, 4);
            let h = c.hull_dim();
            for i in 0..c.n() {
                assert!(c.shorten(i).unwrap().hull_dim() <= h + 1);
            }
        }
    }

    #[test]
    fn parity_flag_examples() {
        assert_eq!(
            LinearCode::from_rows_str(&["1100", "0110"]).parity_flags(),
            (true, false)
        );
        assert_eq!(LinearCode::repetition(4).parity_flags(), (true, true));
        assert_eq!(LinearCode::repetition(3).parity_flags(), (false, true));
    }

    #[test]
    fn direct_sum_criterion_matches_hull() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let c = random_code(&mut rng, 8, 4);
            if c.k() == 0 {
                continue;
            }
            let stacked = c.generator().vstack(c.dual().generator());
            assert_eq!(stacked.rank() == c.n(), c.hull_dim() == 0);
        }
    }
}
