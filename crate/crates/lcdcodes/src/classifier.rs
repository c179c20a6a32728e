//! Isomorph-free exhaustive generation of LCD codes with prescribed
//! parameters, plus a brute-force enumeration oracle for cross-validation.
//!
//! The search builds codes level by level. A level-`m` object is an
//! `[n-k+m, m]` code: the target code shortened `k - m` times on information
//! coordinates. Extending a level-`m` code appends one new coordinate and one
//! new generator row `(1 | v)`, where `v` ranges over coset representatives
//! of the parent's row space (one per coset, supported on the parent's
//! non-pivot columns). Every target arises this way from its shortened chain,
//! and keeping one canonical representative per certificate at each level
//! makes the output complete and irredundant.
//!
//! Partial objects are pruned only by conditions every completion satisfies:
//! shortened codes keep minimum weight at least `d`, and their hull dimension
//! grows by at most one per shortening step.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canonical::{canonical_columns, form_from_columns, CanonicalForm};
use crate::code::{CodeMetrics, LinearCode};
use crate::error::{Error, Result};
use crate::lcd;

/// Desk-scale guards for [`classify`].
pub const CLASSIFY_N_MAX: usize = 28;
pub const CLASSIFY_K_MAX: usize = 14;
/// Cap on the number of `[n, k]` codes [`oracle_enumerate`] will visit.
pub const ORACLE_CAP: u128 = 10_000_000;

/// Parameters of one classification run.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub n: usize,
    pub k: usize,
    pub d_min: usize,
    pub d_dual_min: usize,
    /// `max_hull_schedule[i]` caps the hull dimension after `i + 1` rows; the
    /// default `k - 1 - i` forces hull 0 (LCD) at the final level.
    pub max_hull_schedule: Vec<usize>,
    pub override_guard: bool,
}

impl SearchSpec {
    pub fn new(n: usize, k: usize, d_min: usize, d_dual_min: usize) -> Self {
        SearchSpec {
            n,
            k,
            d_min,
            d_dual_min,
            max_hull_schedule: (0..k).map(|i| k - 1 - i).collect(),
            override_guard: false,
        }
    }

    /// Disables hull pruning below the final level (the final cap still
    /// enforces LCD). Output must not change, only runtime.
    pub fn without_hull_pruning(mut self) -> Self {
        for (i, cap) in self.max_hull_schedule.iter_mut().enumerate() {
            if i + 1 < self.k {
                *cap = self.k;
            }
        }
        self
    }
}

/// One equivalence class in a classification result.
#[derive(Clone, Debug)]
pub struct ClassificationRecord {
    pub canonical: CanonicalForm,
    pub metrics: CodeMetrics,
}

impl ClassificationRecord {
    pub fn code(&self) -> LinearCode {
        LinearCode::from_generator(&self.canonical.matrix)
    }
}

/// A level object: generator rows as bit masks (bit `j` = coordinate `j`),
/// kept in RREF.
struct Node {
    rows: Vec<u32>,
}

impl Node {
    fn from_form(form: &CanonicalForm) -> Node {
        let code = LinearCode::from_generator(&form.matrix);
        let rows = (0..code.k())
            .map(|r| code.generator().row_mask(r) as u32)
            .collect();
        Node { rows }
    }

    fn pivot_mask(&self) -> u32 {
        self.rows.iter().map(|r| 1u32 << r.trailing_zeros()).sum()
    }

    /// All `2^m` codeword masks, indexed by row-subset.
    fn words(&self) -> Vec<u32> {
        let mut words = vec![0u32; 1 << self.rows.len()];
        for s in 1..words.len() {
            words[s] = words[s & (s - 1)] ^ self.rows[s.trailing_zeros() as usize];
        }
        words
    }
}

fn columns_of(rows: &[u32], ncols: usize) -> Vec<u32> {
    (0..ncols)
        .map(|j| {
            rows.iter()
                .enumerate()
                .fold(0u32, |acc, (i, r)| acc | (((r >> j) & 1) << i))
        })
        .collect()
}

/// Hull dimension of the code spanned by `rows`: `m - rank(Gram)`.
fn hull_dim_of(rows: &[u32]) -> usize {
    let m = rows.len();
    let mut gram: Vec<u32> = (0..m)
        .map(|i| {
            (0..m).fold(0u32, |acc, j| {
                acc | ((((rows[i] & rows[j]).count_ones() & 1) << j) as u32)
            })
        })
        .collect();
    let rank = crate::gf2::rref_u32(&mut gram, m).len();
    m - rank
}

/// Expands `counter` onto the bit positions listed in `positions`.
#[inline]
fn deposit(counter: u32, positions: &[u32]) -> u32 {
    let mut v = 0u32;
    let mut c = counter;
    for &p in positions {
        v |= (c & 1) << p;
        c >>= 1;
    }
    v
}

/// Extends one parent, returning canonical forms of all accepted children.
fn extend_parent(
    parent: &Node,
    ncols: usize,
    child_level: usize,
    spec: &SearchSpec,
) -> BTreeMap<Vec<u8>, CanonicalForm> {
    let m = parent.rows.len();
    let final_level = child_level == spec.k;
    let hull_cap = spec.max_hull_schedule[child_level - 1];
    let pivots = parent.pivot_mask();
    let free: Vec<u32> = (0..ncols as u32)
        .filter(|&j| pivots & (1 << j) == 0)
        .collect();
    let words = parent.words();
    let need = spec.d_min.saturating_sub(1) as u32;
    let full_mask: u32 = if ncols + 1 == 32 {
        u32::MAX
    } else {
        (1u32 << (ncols + 1)) - 1
    };

    let mut out = BTreeMap::new();
    let mut child_rows: Vec<u32> = Vec::with_capacity(m + 1);
    for counter in 0u64..(1u64 << free.len()) {
        let v = deposit(counter as u32, &free);
        if words.iter().any(|&c| (v ^ c).count_ones() < need) {
            continue;
        }
        let new_row = v | (1u32 << ncols);
        child_rows.clear();
        child_rows.extend_from_slice(&parent.rows);
        child_rows.push(new_row);
        if hull_dim_of(&child_rows) > hull_cap {
            continue;
        }
        if final_level && spec.d_dual_min >= 2 && spec.k < spec.n {
            // a zero generator column is exactly a weight-1 dual word
            let cover = child_rows.iter().fold(0u32, |a, &r| a | r);
            if cover != full_mask {
                continue;
            }
        }
        let cols = columns_of(&child_rows, ncols + 1);
        let canon = canonical_columns(&cols, child_level);
        let form = form_from_columns(ncols + 1, child_level, &canon);
        out.entry(form.certificate.clone()).or_insert(form);
    }
    out
}

fn merge(
    mut a: BTreeMap<Vec<u8>, CanonicalForm>,
    b: BTreeMap<Vec<u8>, CanonicalForm>,
) -> BTreeMap<Vec<u8>, CanonicalForm> {
    for (cert, form) in b {
        a.entry(cert).or_insert(form);
    }
    a
}

fn check_guard(n: usize, k: usize, override_guard: bool) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n, got n={n} k={k}"
        )));
    }
    if n > 31 {
        return Err(Error::Precondition(format!(
            "classification length limit is 31, got n={n}"
        )));
    }
    if !override_guard && (n > CLASSIFY_N_MAX || k > CLASSIFY_K_MAX) {
        return Err(Error::ScaleGuard(format!(
            "classify is sized for n <= {CLASSIFY_N_MAX}, k <= {CLASSIFY_K_MAX}; got n={n} k={k}"
        )));
    }
    Ok(())
}

/// Complete, irredundant list of inequivalent `[n, k, >= d_min]` LCD codes
/// with dual distance `>= d_dual_min`, sorted by certificate. Deterministic
/// across runs and thread counts; an infeasible spec yields an empty list.
pub fn classify(spec: &SearchSpec) -> Result<Vec<ClassificationRecord>> {
    check_guard(spec.n, spec.k, spec.override_guard)?;
    assert_eq!(spec.max_hull_schedule.len(), spec.k);
    assert_eq!(
        *spec.max_hull_schedule.last().unwrap(),
        0,
        "the final hull cap must force LCD"
    );

    // level 1 extends a virtual empty parent of length n - k
    let mut level: Vec<Node> = vec![Node { rows: Vec::new() }];
    for m in 1..=spec.k {
        let ncols = spec.n - spec.k + m - 1;
        let classes = level
            .par_iter()
            .map(|parent| extend_parent(parent, ncols, m, spec))
            .reduce(BTreeMap::new, merge);
        level = classes.values().map(Node::from_form).collect();
        if level.is_empty() {
            return Ok(Vec::new());
        }
    }

    // re-verify everything on the surviving classes
    let mut records = Vec::new();
    for node in &level {
        let code = LinearCode::from_row_masks(
            spec.n,
            &node.rows.iter().map(|&r| r as u64).collect::<Vec<_>>(),
        );
        let metrics = code.metrics()?;
        debug_assert!(lcd::is_lcd(&code)?);
        debug_assert!(metrics.d >= spec.d_min);
        if metrics.hull_dim != 0 || metrics.d < spec.d_min {
            continue;
        }
        if spec.k < spec.n && metrics.d_dual < spec.d_dual_min {
            continue;
        }
        let cols = columns_of(&node.rows, spec.n);
        let canon = canonical_columns(&cols, spec.k);
        records.push(ClassificationRecord {
            canonical: form_from_columns(spec.n, spec.k, &canon),
            metrics,
        });
    }
    records.sort_by(|a, b| a.canonical.certificate.cmp(&b.canonical.certificate));
    Ok(records)
}

/// Number of `k`-dimensional subspaces of `F_2^n` (Gaussian binomial).
pub fn gaussian_binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    if n > 127 && k > 0 && k < n {
        return u128::MAX;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num.saturating_mul((1u128 << (n - i)) - 1);
        den = den.saturating_mul((1u128 << (k - i)) - 1);
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// Enumerates every `[n, k]` code through its unique RREF generator (one
/// pivot pattern at a time), filters by `predicate`, and dedups by canonical
/// certificate. Same output contract as [`classify`].
pub fn oracle_enumerate(
    n: usize,
    k: usize,
    predicate: impl Fn(&LinearCode) -> bool + Sync,
) -> Result<Vec<ClassificationRecord>> {
    if k == 0 || k > n || n > 31 {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n <= 31, got n={n} k={k}"
        )));
    }
    let total = gaussian_binomial(n, k);
    if total > ORACLE_CAP {
        return Err(Error::ScaleGuard(format!(
            "oracle would enumerate {total} codes (cap {ORACLE_CAP})"
        )));
    }

    let patterns: Vec<Vec<usize>> = pivot_patterns(n, k);
    let classes = patterns
        .par_iter()
        .map(|pivots| {
            let mut out: BTreeMap<Vec<u8>, CanonicalForm> = BTreeMap::new();
            // free entries: row i may have 1s at non-pivot columns past pivot i
            let free: Vec<(usize, u32)> = (0..k)
                .flat_map(|i| {
                    (pivots[i] + 1..n)
                        .filter(|j| !pivots.contains(j))
                        .map(move |j| (i, j as u32))
                })
                .collect();
            for mask in 0u64..(1u64 << free.len()) {
                let mut rows = vec![0u32; k];
                for (i, &p) in pivots.iter().enumerate() {
                    rows[i] = 1 << p;
                }
                for (b, &(i, j)) in free.iter().enumerate() {
                    rows[i] |= (((mask >> b) & 1) as u32) << j;
                }
                let code = LinearCode::from_row_masks(
                    n,
                    &rows.iter().map(|&r| r as u64).collect::<Vec<_>>(),
                );
                debug_assert_eq!(code.k(), k);
                if !predicate(&code) {
                    continue;
                }
                let cols = columns_of(&rows, n);
                let canon = canonical_columns(&cols, k);
                let form = form_from_columns(n, k, &canon);
                out.entry(form.certificate.clone()).or_insert(form);
            }
            out
        })
        .reduce(BTreeMap::new, merge);

    let mut records = Vec::new();
    for form in classes.values() {
        let code = LinearCode::from_generator(&form.matrix);
        records.push(ClassificationRecord {
            canonical: form.clone(),
            metrics: code.metrics()?,
        });
    }
    Ok(records)
}

fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..=(n - (k - cur.len())) {
            cur.push(j);
            rec(n, k, j + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Largest `d` such that an LCD `[n, k, d]` code exists (no dual-distance
/// restriction), found by descending from the Griesmer bound.
pub fn d_lcd_exact(n: usize, k: usize) -> Result<usize> {
    check_guard(n, k, false)?;
    for d in (2..=crate::bounds::griesmer_upper(n, k)).rev() {
        if !classify(&SearchSpec::new(n, k, d, 1))?.is_empty() {
            return Ok(d);
        }
    }
    // an LCD [n, k, 1] code always exists (identity block padded with zeros)
    Ok(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::are_equivalent;

    fn count(n: usize, k: usize, d: usize, dd: usize) -> usize {
        classify(&SearchSpec::new(n, k, d, dd)).unwrap().len()
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(4, 2), 35);
        assert_eq!(gaussian_binomial(4, 0), 1);
        assert_eq!(gaussian_binomial(4, 4), 1);
        assert_eq!(gaussian_binomial(9, 4), 3_309_747);
    }

    #[test]
    fn oracle_counts_all_codes() {
        // the 35 two-dimensional subspaces of F_2^4 fall into 6 equivalence
        // classes (orbit count of spanning column multisets under S_4 x GL_2)
        let all = oracle_enumerate(4, 2, |_| true).unwrap();
        assert_eq!(all.len(), 6);
        for r in &all {
            let c = r.code();
            assert!(are_equivalent(&c, &c));
        }
    }

    #[test]
    fn full_space_is_the_unique_n_n_code() {
        let recs = oracle_enumerate(5, 5, |_| true).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].code(), LinearCode::full_space(5));
        assert_eq!(count(5, 5, 1, 1), 1);
    }

    #[test]
    fn unique_8_4_3_lcd_code() {
        let recs = classify(&SearchSpec::new(8, 4, 3, 2)).unwrap();
        assert_eq!(recs.len(), 1);
        let c = recs[0].code();
        assert!(lcd::is_lcd(&c).unwrap());
        assert_eq!(c.min_weight().unwrap(), 3);
        // cross-checked against full enumeration
        let oracle = oracle_enumerate(8, 4, |c| {
            c.hull_dim() == 0
                && c.min_weight().unwrap() >= 3
                && c.dual_distance().unwrap() >= 2
        })
        .unwrap();
        assert_eq!(oracle.len(), 1);
        assert_eq!(
            oracle[0].canonical.certificate,
            recs[0].canonical.certificate
        );
    }

    #[test]
    fn classify_matches_oracle_on_small_grid() {
        for n in 3..=7 {
            for k in 1..=n {
                for d in [2, 4] {
                    let a = classify(&SearchSpec::new(n, k, d, 1)).unwrap();
                    let b = oracle_enumerate(n, k, |c| {
                        c.hull_dim() == 0 && c.min_weight().unwrap() >= d
                    })
                    .unwrap();
                    let ca: Vec<_> = a.iter().map(|r| &r.canonical.certificate).collect();
                    let cb: Vec<_> = b.iter().map(|r| &r.canonical.certificate).collect();
                    assert_eq!(ca, cb, "mismatch at n={n} k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn hull_schedule_is_pure_pruning() {
        for (n, k, d) in [(8, 4, 3), (9, 3, 3), (10, 4, 4), (12, 5, 4)] {
            let with = classify(&SearchSpec::new(n, k, d, 2)).unwrap();
            let without = classify(&SearchSpec::new(n, k, d, 2).without_hull_pruning()).unwrap();
            let ca: Vec<_> = with.iter().map(|r| &r.canonical.certificate).collect();
            let cb: Vec<_> = without.iter().map(|r| &r.canonical.certificate).collect();
            assert_eq!(ca, cb, "hull pruning changed output at n={n} k={k} d={d}");
        }
    }

    #[test]
    fn d_lcd_exact_examples() {
        assert_eq!(d_lcd_exact(8, 4).unwrap(), 3);
        assert_eq!(d_lcd_exact(10, 2).unwrap(), 6);
        assert_eq!(d_lcd_exact(9, 4).unwrap(), 4);
    }

    #[test]
    fn guards_refuse_oversized_requests() {
        assert!(matches!(
            classify(&SearchSpec::new(30, 4, 3, 1)),
            Err(Error::ScaleGuard(_))
        ));
        assert!(matches!(
            oracle_enumerate(20, 10, |_| true),
            Err(Error::ScaleGuard(_))
        ));
    }

    #[test]
    fn infeasible_spec_is_empty_not_an_error() {
        // Singleton-impossible distance
        assert_eq!(count(6, 3, 5, 1), 0);
    }
}
