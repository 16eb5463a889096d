//! First homology from abelianized presentations via Smith normal form.
//!
//! This module is the independent check on every closed-form torsion
//! formula elsewhere in the crate; it only sees relation matrices and never
//! calls into the invariant code it is used to verify.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::seifert::SeifertData;
use crate::torus_bundle::AnosovMatrix;

/// Dense integer matrix, row-major. Rows are relations, columns generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from rows; panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.entries.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = &self.entries[src * self.cols + c] * q;
            self.entries[dst * self.cols + c] -= v;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = &self.entries[r * self.cols + src] * q;
            self.entries[r * self.cols + dst] -= v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Quotient rounded to nearest, so remainders satisfy `|r| <= |d|/2`.
fn nearest_quotient(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    // floor remainders share the sign of d, so r - d is the other candidate
    if (&r * BigInt::from(2)).abs() > d.abs() {
        q + 1
    } else {
        q
    }
}

/// Diagonal of the Smith normal form, of length `min(rows, cols)`.
///
/// Entries are non-negative, each divides the next, and zeros trail. The
/// pivot is always the nonzero entry of least absolute value in the active
/// block; rows and columns are re-reduced until the pivot divides the block.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut w = m.clone();
    let size = w.rows.min(w.cols);
    let mut diag = Vec::with_capacity(size);

    for t in 0..size {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..w.rows {
                for c in t..w.cols {
                    let v = &w[(r, c)];
                    if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < w[(br, bc)].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                diag.resize(size, BigInt::zero());
                return diag;
            };
            w.swap_rows(t, pr);
            w.swap_cols(t, pc);

            let pivot = w[(t, t)].clone();
            let mut clean = true;
            for r in t + 1..w.rows {
                if !w[(r, t)].is_zero() {
                    let q = nearest_quotient(&w[(r, t)], &pivot);
                    w.sub_row(r, t, &q);
                    clean &= w[(r, t)].is_zero();
                }
            }
            for c in t + 1..w.cols {
                if !w[(t, c)].is_zero() {
                    let q = nearest_quotient(&w[(t, c)], &pivot);
                    w.sub_col(c, t, &q);
                    clean &= w[(t, c)].is_zero();
                }
            }
            if !clean {
                continue;
            }

            // pivot must divide the rest of the block
            let offender = (t + 1..w.rows)
                .find(|&r| (t + 1..w.cols).any(|c| !w[(r, c)].is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let one = -BigInt::one();
                    w.sub_row(t, r, &one);
                }
                None => {
                    diag.push(pivot.abs());
                    break;
                }
            }
        }
    }
    diag
}

/// `H_1 = Z^betti ⊕ ⊕ Z/d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Summary {
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub elementary_divisors: Vec<BigInt>,
}

impl H1Summary {
    pub fn torsion_order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }
}

/// Homology of the abelian group with generators = columns, relations = rows.
pub fn h1_from_presentation(m: &IntegerMatrix) -> H1Summary {
    let diag = smith_normal_form(m);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    H1Summary {
        betti: m.cols - rank,
        elementary_divisors: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
    }
}

/// Abelianized relation matrix of a Seifert space.
///
/// Columns: `x_1..x_{2g}, q_1..q_n, h`. Rows: `a_i q_i + b_i h` for each
/// exceptional fiber, then `q_1 + ... + q_n - b h`. With this sign the
/// `(q, h)` block has determinant `e · ∏ a_i`.
pub fn presentation_matrix_seifert(n: &SeifertData) -> IntegerMatrix {
    let g2 = 2 * n.genus() as usize;
    let k = n.n();
    let mut m = IntegerMatrix::zeros(k + 1, g2 + k + 1);
    let h = g2 + k;
    for (i, (a, b)) in n.fibers().iter().enumerate() {
        m[(i, g2 + i)] = a.clone();
        m[(i, h)] = b.clone();
        m[(k, g2 + i)] = BigInt::one();
    }
    m[(k, h)] = -n.b().clone();
    m
}

/// `I - A`, the relation matrix of the fiber-torus part of `H_1` of the
/// mapping torus.
pub fn presentation_matrix_bundle(a: &AnosovMatrix) -> IntegerMatrix {
    let m = a.matrix();
    IntegerMatrix::from_rows(&[
        vec![BigInt::one() - &m.a, -m.b.clone()],
        vec![-m.c.clone(), BigInt::one() - &m.d],
    ])
}

pub fn h1_seifert(n: &SeifertData) -> H1Summary {
    h1_from_presentation(&presentation_matrix_seifert(n))
}

/// Full `H_1` of the mapping torus: the fiber quotient plus one free
/// generator from the base circle.
pub fn h1_bundle(a: &AnosovMatrix) -> H1Summary {
    let mut h = h1_from_presentation(&presentation_matrix_bundle(a));
    h.betti += 1;
    h
}
