//! LCD-specific structure: the Massey criterion, orthonormal and hyperbolic
//! bases, parity extension, column duplication, and the behaviour of LCD
//! codes under shortening and puncturing.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Orthonormal,
    Hyperbolic,
}

/// A basis of an LCD code with prescribed inner products:
/// orthonormal (`c_i . c_j = [i == j]`) for odd-like codes, or hyperbolic
/// pairs (`c_i . c'_i = 1`, all other products 0) for even-like codes.
/// Hyperbolic rows are stored pairwise: `c_1, c'_1, c_2, c'_2, ...`.
#[derive(Clone, Debug)]
pub struct StructuredBasis {
    pub kind: BasisKind,
    pub rows: BinaryMatrix,
}

impl StructuredBasis {
    /// Checks the inner-product pattern and that the rows span `code`.
    pub fn is_valid_for(&self, code: &LinearCode) -> bool {
        let k = self.rows.rows();
        if k != code.k() || self.rows.cols() != code.n() {
            return false;
        }
        let gram_ok = match self.kind {
            BasisKind::Orthonormal => (0..k)
                .all(|i| (0..k).all(|j| self.rows.row_dot(i, j) == (i == j))),
            BasisKind::Hyperbolic => {
                k % 2 == 0
                    && (0..k).all(|i| {
                        (0..k).all(|j| {
                            let expect = i / 2 == j / 2 && i != j;
                            self.rows.row_dot(i, j) == expect
                        })
                    })
            }
        };
        gram_ok && LinearCode::from_generator(&self.rows) == *code
    }
}

/// Outcome of the shorten/puncture dichotomy at one coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub coordinate: usize,
    pub shortened_is_lcd: bool,
    pub punctured_is_lcd: bool,
}

/// Massey criterion: `C` is LCD iff `G G^T` is nonsingular.
/// The zero code is rejected as degenerate input.
pub fn is_lcd(c: &LinearCode) -> Result<bool> {
    if c.k() == 0 {
        return Err(Error::ZeroCode("LCD status"));
    }
    Ok(c.gram().is_nonsingular())
}

/// Hull triviality, defined for every dimension including k = 0.
/// Internal workhorse for the witness operations, where shortening a
/// one-dimensional code legitimately produces the zero code.
pub(crate) fn hull_is_trivial(c: &LinearCode) -> bool {
    c.hull_dim() == 0
}

fn require_lcd(c: &LinearCode) -> Result<()> {
    if !is_lcd(c)? {
        return Err(Error::Precondition("code is not LCD".into()));
    }
    Ok(())
}

/// Orthonormal basis of an odd-like LCD code, by congruence reduction of the
/// Gram form: vectors of odd self-product are split off one at a time; a
/// leftover alternating block is paired hyperbolically and each pair is folded
/// into one of the already-fixed orthonormal vectors.
pub fn orthonormal_basis(c: &LinearCode) -> Result<StructuredBasis> {
    require_lcd(c)?;
    if c.is_even_like() {
        return Err(Error::Precondition(
            "orthonormal basis requires an odd-like code".into(),
        ));
    }
    let k = c.k();
    let mut b = c.generator().clone();

    // split off vectors with odd self-product
    let mut fixed = 0;
    while fixed < k {
        let Some(j) = (fixed..k).find(|&j| b.row_dot(j, j)) else {
            break;
        };
        b.swap_rows(fixed, j);
        for l in fixed + 1..k {
            if b.row_dot(l, fixed) {
                b.xor_rows(l, fixed);
            }
        }
        fixed += 1;
    }
    debug_assert!(fixed >= 1, "odd-like code must have an odd-weight basis row");

    // residual block is alternating and nonsingular: pair it hyperbolically
    let mut pairs = Vec::new();
    let mut i = fixed;
    while i < k {
        let j = (i + 1..k)
            .find(|&j| b.row_dot(i, j))
            .expect("nonsingular alternating form has a partner for every row");
        b.swap_rows(i + 1, j);
        for l in i + 2..k {
            let wy = b.row_dot(l, i + 1);
            let wx = b.row_dot(l, i);
            if wy {
                b.xor_rows(l, i);
            }
            if wx {
                b.xor_rows(l, i + 1);
            }
        }
        pairs.push((i, i + 1));
        i += 2;
    }

    // fold each hyperbolic pair (x, y) with an orthonormal z into the
    // orthonormal triple x+z, y+z, x+y+z
    let mut z = fixed - 1;
    for (x, y) in pairs {
        b.xor_rows(x, z);
        b.xor_rows(y, z);
        b.xor_rows(z, x);
        b.xor_rows(z, y);
        z = x;
    }

    let basis = StructuredBasis {
        kind: BasisKind::Orthonormal,
        rows: b,
    };
    debug_assert!(basis.is_valid_for(c));
    Ok(basis)
}

/// Hyperbolic basis of an even-like LCD code, by symplectic pairing of the
/// (alternating, nonsingular) Gram form.
pub fn hyperbolic_basis(c: &LinearCode) -> Result<StructuredBasis> {
    require_lcd(c)?;
    if !c.is_even_like() {
        return Err(Error::Precondition(
            "hyperbolic basis requires an even-like code".into(),
        ));
    }
    let k = c.k();
    assert!(k % 2 == 0, "even-like LCD code must have even dimension");
    let mut b = c.generator().clone();
    let mut i = 0;
    while i < k {
        let j = (i + 1..k)
            .find(|&j| b.row_dot(i, j))
            .expect("nonsingular alternating form has a partner for every row");
        b.swap_rows(i + 1, j);
        for l in i + 2..k {
            let wy = b.row_dot(l, i + 1);
            let wx = b.row_dot(l, i);
            if wy {
                b.xor_rows(l, i);
            }
            if wx {
                b.xor_rows(l, i + 1);
            }
        }
        i += 2;
    }
    let basis = StructuredBasis {
        kind: BasisKind::Hyperbolic,
        rows: b,
    };
    debug_assert!(basis.is_valid_for(c));
    Ok(basis)
}

/// Prepends an all-ones column to a structured basis of an LCD code with even
/// dimension, producing an LCD `[n+1, k, d or d+1]` code of the opposite
/// parity class.
pub fn extend_parity(c: &LinearCode) -> Result<LinearCode> {
    require_lcd(c)?;
    if c.k() % 2 != 0 {
        return Err(Error::Precondition(
            "parity extension requires even dimension".into(),
        ));
    }
    let basis = if c.is_even_like() {
        hyperbolic_basis(c)?
    } else {
        orthonormal_basis(c)?
    };
    let ones = BinaryMatrix::all_ones(c.k(), 1);
    let ext = ones.hstack(&basis.rows);
    let out = LinearCode::from_generator(&ext);
    debug_assert_eq!(out.k(), c.k());
    debug_assert!(is_lcd(&out).unwrap());
    Ok(out)
}

/// `G' = (v^T v^T G)`: prepends two equal columns. The two copies cancel in
/// `G' G'^T`, so the Gram form is congruent to that of `G` and the hull
/// dimension (in particular LCD status) is preserved exactly.
pub fn duplicate_column(c: &LinearCode, v: &[bool]) -> Result<LinearCode> {
    if v.len() != c.k() {
        return Err(Error::LengthMismatch {
            got: v.len(),
            want: c.k(),
        });
    }
    if c.k() == 0 {
        return Err(Error::ZeroCode("column duplication"));
    }
    let mut col = BinaryMatrix::zero(c.k(), 2);
    for (i, &bit) in v.iter().enumerate() {
        col.set(i, 0, bit);
        col.set(i, 1, bit);
    }
    let ext = col.hstack(c.generator());
    Ok(LinearCode::from_generator(&ext))
}

/// Applies the shorten/puncture dichotomy at coordinate `i`: for an LCD code
/// with `d >= 2` and dual distance `>= 2`, exactly one of the two derived
/// codes is LCD.
pub fn split_witness(c: &LinearCode, i: usize) -> Result<SplitWitness> {
    if i >= c.n() {
        return Err(Error::InvalidCoordinate { coord: i, n: c.n() });
    }
    require_lcd(c)?;
    if c.min_weight()? < 2 {
        return Err(Error::Precondition("split witness requires d >= 2".into()));
    }
    if c.dual_distance()? < 2 {
        return Err(Error::Precondition(
            "split witness requires dual distance >= 2".into(),
        ));
    }
    Ok(SplitWitness {
        coordinate: i,
        shortened_is_lcd: hull_is_trivial(&c.shorten(i)?),
        punctured_is_lcd: hull_is_trivial(&c.puncture(i)?),
    })
}

/// For an odd-like LCD code, the coordinates whose shortened code is LCD and
/// the coordinates whose punctured code is LCD, each sorted ascending.
pub fn odd_like_witnesses(c: &LinearCode) -> Result<(Vec<usize>, Vec<usize>)> {
    require_lcd(c)?;
    if c.is_even_like() {
        return Err(Error::Precondition(
            "witness lists are defined for odd-like codes".into(),
        ));
    }
    let mut shorten_coords = Vec::new();
    let mut puncture_coords = Vec::new();
    for i in 0..c.n() {
        if hull_is_trivial(&c.shorten(i)?) {
            shorten_coords.push(i);
        }
        if hull_is_trivial(&c.puncture(i)?) {
            puncture_coords.push(i);
        }
    }
    Ok((shorten_coords, puncture_coords))
}

/// Verifies that every punctured code of an even-like LCD code is LCD.
/// A `false` return indicates a bug in the puncturing/hull machinery.
pub fn even_punctured_all_lcd(c: &LinearCode) -> Result<bool> {
    require_lcd(c)?;
    if !c.is_even_like() {
        return Err(Error::Precondition(
            "puncture check applies to even-like codes".into(),
        ));
    }
    for i in 0..c.n() {
        if !hull_is_trivial(&c.puncture(i)?) {
            debug_assert!(false, "punctured even-like LCD code must stay LCD");
            return Ok(false);
        }
    }
    Ok(true)
}
