//! Canonical forms of binary codes under coordinate permutation.
//!
//! The canonical form of a code is the generator matrix whose RREF, taken
//! over the best possible column ordering, has the column-wise minimal bit
//! pattern. The search walks column orderings left to right; because the
//! first `t` columns of an RREF depend only on the first `t` input columns,
//! prefixes that are no longer minimal can be discarded, and tied prefixes
//! collapse whenever they leave the same elimination state behind.

use std::collections::{BTreeMap, HashSet};

use crate::code::LinearCode;
use crate::gf2::BinaryMatrix;

/// Maximum dimension the canonical search supports (columns fit in a `u32`).
pub const CANONICAL_DIM_CAP: usize = 32;

/// Canonical generator matrix plus its serialized comparison key.
/// Equivalent codes yield byte-identical certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub matrix: BinaryMatrix,
    pub certificate: Vec<u8>,
}

/// One partially processed column ordering: `rank` pivots found so far and
/// the unused columns, expressed in the current row basis.
struct State {
    rank: u32,
    cols: Vec<u32>,
}

impl State {
    fn dedup_key(&self) -> (u32, Vec<u32>) {
        let mut sorted = self.cols.clone();
        sorted.sort_unstable();
        (self.rank, sorted)
    }
}

#[inline]
fn swap_bits(v: u32, a: u32, b: u32) -> u32 {
    let x = ((v >> a) ^ (v >> b)) & 1;
    v ^ (x << a) ^ (x << b)
}

/// Applies the elimination step for choosing column `v` (which has support at
/// or above `rank`) to every remaining column.
fn apply_pivot(cols: &mut [u32], v: u32, rank: u32) {
    let high = v & !((1u32 << rank) - 1);
    debug_assert!(high != 0);
    let p = high.trailing_zeros();
    let v2 = swap_bits(v, p, rank);
    let clear = v2 & !(1u32 << rank);
    for w in cols.iter_mut() {
        let mut x = swap_bits(*w, p, rank);
        if (x >> rank) & 1 == 1 {
            x ^= clear;
        }
        *w = x;
    }
}

/// Core search over column orderings. `cols` are the columns of any full-rank
/// generator (bit `i` = row `i`); returns the canonical column sequence.
pub(crate) fn canonical_columns(cols: &[u32], k: usize) -> Vec<u32> {
    assert!(k >= 1 && k <= CANONICAL_DIM_CAP);
    let n = cols.len();
    let mut frontier = vec![State {
        rank: 0,
        cols: cols.to_vec(),
    }];
    let mut output = Vec::with_capacity(n);

    for _ in 0..n {
        // smallest achievable next output column across the frontier
        let mut best = u32::MAX;
        for st in &frontier {
            let low_mask = (1u32 << st.rank) - 1;
            for &v in &st.cols {
                let out = if v & !low_mask != 0 { 1 << st.rank } else { v };
                if out < best {
                    best = out;
                }
            }
        }
        output.push(best);

        let mut next = Vec::new();
        let mut seen: HashSet<(u32, Vec<u32>)> = HashSet::new();
        for st in &frontier {
            let low_mask = (1u32 << st.rank) - 1;
            let mut tried: HashSet<u32> = HashSet::new();
            for (idx, &v) in st.cols.iter().enumerate() {
                let is_pivot = v & !low_mask != 0;
                let out = if is_pivot { 1 << st.rank } else { v };
                if out != best || !tried.insert(v) {
                    continue;
                }
                let mut cols: Vec<u32> = st
                    .cols
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != idx)
                    .map(|(_, &c)| c)
                    .collect();
                let rank = if is_pivot {
                    apply_pivot(&mut cols, v, st.rank);
                    st.rank + 1
                } else {
                    st.rank
                };
                let cand = State { rank, cols };
                if seen.insert(cand.dedup_key()) {
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    output
}

/// Builds a [`CanonicalForm`] from a canonical column sequence.
pub(crate) fn form_from_columns(n: usize, k: usize, cols: &[u32]) -> CanonicalForm {
    debug_assert_eq!(cols.len(), n);
    let mut matrix = BinaryMatrix::zero(k, n);
    for (j, &col) in cols.iter().enumerate() {
        for i in 0..k {
            if (col >> i) & 1 == 1 {
                matrix.set(i, j, true);
            }
        }
    }
    let mut certificate = Vec::with_capacity(8 + (n * k + 7) / 8);
    certificate.extend_from_slice(&(n as u32).to_le_bytes());
    certificate.extend_from_slice(&(k as u32).to_le_bytes());
    let mut byte = 0u8;
    let mut nbits = 0;
    for i in 0..k {
        for j in 0..n {
            byte = (byte << 1) | matrix.get(i, j) as u8;
            nbits += 1;
            if nbits == 8 {
                certificate.push(byte);
                byte = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        certificate.push(byte << (8 - nbits));
    }
    CanonicalForm { matrix, certificate }
}

/// Canonical form of a code; invariant under any coordinate permutation.
/// Requires `k >= 1`.
pub fn canonical_form(c: &LinearCode) -> CanonicalForm {
    assert!(c.k() >= 1, "canonical form requires a nonzero code");
    let g = c.generator();
    let cols: Vec<u32> = (0..c.n()).map(|j| g.column_u32(j)).collect();
    let canon = canonical_columns(&cols, c.k());
    form_from_columns(c.n(), c.k(), &canon)
}

/// Permutation equivalence. Parameter mismatch is `false` by definition.
pub fn are_equivalent(c1: &LinearCode, c2: &LinearCode) -> bool {
    if c1.n() != c2.n() || c1.k() != c2.k() {
        return false;
    }
    if c1.k() == 0 {
        return true;
    }
    canonical_form(c1).certificate == canonical_form(c2).certificate
}

/// Exhaustive equivalence test over all `n!` column permutations.
/// Test-support oracle; only sensible for small `n`.
pub fn are_equivalent_brute_force(c1: &LinearCode, c2: &LinearCode) -> bool {
    if c1.n() != c2.n() || c1.k() != c2.k() {
        return false;
    }
    let n = c1.n();
    let target = c2.generator();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_and_check(c1, target, &mut perm, 0)
}

fn permute_and_check(
    c1: &LinearCode,
    target: &BinaryMatrix,
    perm: &mut Vec<usize>,
    depth: usize,
) -> bool {
    if depth == perm.len() {
        let g = c1.generator();
        let mut permuted = BinaryMatrix::zero(c1.k(), c1.n());
        for r in 0..c1.k() {
            for (j, &p) in perm.iter().enumerate() {
                if g.get(r, p) {
                    permuted.set(r, j, true);
                }
            }
        }
        return permuted.rref_compact().0 == *target;
    }
    for i in depth..perm.len() {
        perm.swap(depth, i);
        if permute_and_check(c1, target, perm, depth + 1) {
            perm.swap(depth, i);
            return true;
        }
        perm.swap(depth, i);
    }
    false
}

/// Applies a coordinate permutation: coordinate `j` of the result is
/// coordinate `perm[j]` of the input.
pub fn permute_coordinates(c: &LinearCode, perm: &[usize]) -> LinearCode {
    assert_eq!(perm.len(), c.n());
    let g = c.generator();
    let mut out = BinaryMatrix::zero(c.k(), c.n());
    for r in 0..c.k() {
        for (j, &p) in perm.iter().enumerate() {
            if g.get(r, p) {
                out.set(r, j, true);
            }
        }
    }
    LinearCode::from_generator(&out)
}

/// Deduplicates codes by certificate, keeping one canonical form per class.
pub fn dedup_by_certificate<'a>(
    codes: impl IntoIterator<Item = &'a LinearCode>,
) -> BTreeMap<Vec<u8>, CanonicalForm> {
    let mut map = BTreeMap::new();
    for c in codes {
        let f = canonical_form(c);
        map.entry(f.certificate.clone()).or_insert(f);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::random_code;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_row_space_same_certificate() {
        let a = LinearCode::from_rows_str(&["01", "10"]);
        let b = LinearCode::from_rows_str(&["10", "01"]);
        assert_eq!(canonical_form(&a).certificate, canonical_form(&b).certificate);
    }

    #[test]
    fn column_reversal_is_equivalent() {
        let c = LinearCode::from_rows_str(&["110100", "011010"]);
        let rev = permute_coordinates(&c, &[5, 4, 3, 2, 1, 0]);
        assert_eq!(
            canonical_form(&c).certificate,
            canonical_form(&rev).certificate
        );
    }

    #[test]
    fn distinct_codes_distinct_certificates_match_brute_force() {
        let a = LinearCode::from_rows_str(&["110", "011"]);
        let b = LinearCode::repetition(3).dual();
        let same_cert = canonical_form(&a).certificate == canonical_form(&b).certificate;
        assert_eq!(same_cert, are_equivalent_brute_force(&a, &b));
        assert_eq!(same_cert, are_equivalent(&a, &b));
    }

    #[test]
    fn certificate_invariant_under_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let c = random_code(&mut rng, 8, 4);
            if c.k() == 0 {
                continue;
            }
            let cert = canonical_form(&c).certificate;
            for _ in 0..100 {
                let mut perm: Vec<usize> = (0..c.n()).collect();
                perm.shuffle(&mut rng);
                let p = permute_coordinates(&c, &perm);
                assert_eq!(canonical_form(&p).certificate, cert);
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_small_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..40 {
            let a = random_code(&mut rng, 6, 3);
            let b = random_code(&mut rng, 6, 3);
            if a.k() != 3 || b.k() != 3 {
                continue;
            }
            assert_eq!(are_equivalent(&a, &b), are_equivalent_brute_force(&a, &b));
        }
    }

    #[test]
    fn canonical_matrix_generates_an_equivalent_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..30 {
            let c = random_code(&mut rng, 9, 4);
            if c.k() == 0 {
                continue;
            }
            let f = canonical_form(&c);
            let rebuilt = LinearCode::from_generator(&f.matrix);
            assert!(are_equivalent(&c, &rebuilt));
            // the canonical matrix is its own canonical form
            assert_eq!(canonical_form(&rebuilt).certificate, f.certificate);
        }
    }

    #[test]
    fn certificate_equality_is_an_equivalence_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let pool: Vec<LinearCode> = (0..12)
            .map(|_| random_code(&mut rng, 7, 3))
            .filter(|c| c.k() == 3)
            .collect();
        for a in &pool {
            assert!(are_equivalent(a, a));
            for b in &pool {
                assert_eq!(are_equivalent(a, b), are_equivalent(b, a));
                for c in &pool {
                    if are_equivalent(a, b) && are_equivalent(b, c) {
                        assert!(are_equivalent(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn isoduality_of_the_8_4_3_code_is_detectable() {
        // find an [8,4,3] LCD code by random search; uniqueness itself is
        // covered by the acceptance suite
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let c = loop {
            let c = random_code(&mut rng, 8, 4);
            if c.k() == 4
                && c.min_weight().unwrap() == 3
                && crate::lcd::is_lcd(&c).unwrap()
            {
                break c;
            }
        };
        assert!(are_equivalent(&c, &c.dual()));
    }
}
