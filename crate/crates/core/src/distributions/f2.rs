//! Bit-packed vectors over F2 and Gauss-Jordan reduction.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> BitRow {
        BitRow { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> BitRow {
        let mut r = BitRow::zeros(len);
        for i in ones {
            r.flip(i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Parity of `self · other`.
    pub fn dot(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Zero every column where `mask` is set.
    pub fn clear_masked(&mut self, mask: &BitRow) {
        for (a, m) in self.words.iter_mut().zip(&mask.words) {
            *a &= !m;
        }
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// One equation `row · x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub coeffs: BitRow,
    pub rhs: bool,
}

/// Result of Gauss-Jordan elimination over F2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    /// The `rank` non-zero rows in reduced row-echelon form.
    pub rows: Vec<Equation>,
    /// Pivot column of each row in `rows`, ascending.
    pub pivots: Vec<usize>,
    /// Non-pivot columns, ascending.
    pub free: Vec<usize>,
    pub rank: usize,
    /// False iff elimination produced `0 = 1`.
    pub solvable: bool,
}

pub fn rref_f2(n: usize, equations: &[Equation]) -> RowReduction {
    let mut rows: Vec<Equation> = equations.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].coeffs.get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.coeffs.get(col) {
                row.coeffs.xor_assign(&pivot_row.coeffs);
                row.rhs ^= pivot_row.rhs;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let solvable = rows[rank..].iter().all(|r| !r.rhs);
    rows.truncate(rank);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free = (0..n).filter(|&c| !is_pivot[c]).collect();
    RowReduction { rows, pivots, free, rank, solvable }
}

/// Rank of the row set, ignoring right-hand sides.
pub fn rank_f2(mut rows: Vec<BitRow>) -> usize {
    let mut rank = 0;
    while let Some(i) = rows.iter().position(|r| !r.is_zero()) {
        let pivot = rows.swap_remove(i);
        let col = pivot.first_one().expect("non-zero row");
        for r in rows.iter_mut() {
            if r.get(col) {
                r.xor_assign(&pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// An echelon basis that can absorb further equations one at a time.
#[derive(Debug, Clone)]
pub(crate) struct IncrementalBasis {
    rows: Vec<Equation>,
    pivots: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Absorb {
    /// The equation was independent and raised the rank by one.
    Independent,
    /// Implied by the basis.
    Redundant,
    /// Contradicts the basis.
    Inconsistent,
}

impl IncrementalBasis {
    pub fn from_reduction(red: &RowReduction) -> Self {
        IncrementalBasis { rows: red.rows.clone(), pivots: red.pivots.clone() }
    }

    pub fn absorb(&mut self, mut eq: Equation) -> Absorb {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if eq.coeffs.get(p) {
                eq.coeffs.xor_assign(&row.coeffs);
                eq.rhs ^= row.rhs;
            }
        }
        let Some(q) = eq.coeffs.first_one() else {
            return if eq.rhs { Absorb::Inconsistent } else { Absorb::Redundant };
        };
        for row in self.rows.iter_mut() {
            if row.coeffs.get(q) {
                row.coeffs.xor_assign(&eq.coeffs);
                row.rhs ^= eq.rhs;
            }
        }
        self.rows.push(eq);
        self.pivots.push(q);
        Absorb::Independent
    }
}
