//! Bit-packed vectors and matrices over GF(2).
//!
//! Rows are stored as `u64` words, least significant bit first. All
//! elimination routines pivot on the lowest-index available column so the
//! bases they return are reproducible.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// Builds a vector with ones at `support`. Panics if an index is out of range.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn and_not(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Weight of `self & other` without allocating.
    #[inline]
    pub fn overlap(&self, other: &BitVec) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Symplectic-style inner product: parity of the overlap.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select(&self, columns: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(columns.len());
        for (j, &c) in columns.iter().enumerate() {
            if self.get(c) {
                out.set(j, true);
            }
        }
        out
    }

    /// Inverse of [`BitVec::select`]: spreads a short vector back onto `len` columns.
    pub fn scatter(&self, columns: &[usize], len: usize) -> BitVec {
        debug_assert_eq!(self.len, columns.len());
        let mut out = BitVec::zeros(len);
        for j in self.iter_ones() {
            out.set(columns[j], true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}]{:?}", self.len, self.support())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense row-major binary matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        BitMatrix { cols, rows }
    }

    pub fn from_supports(cols: usize, supports: &[Vec<usize>]) -> Self {
        BitMatrix {
            cols,
            rows: supports
                .iter()
                .map(|s| BitVec::from_support(cols, s))
                .collect(),
        }
    }

    pub fn push(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(BitVec::support).collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.rank()
    }

    /// Indices of a maximal independent subset of rows, greedily in row order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut ech = Echelon::new(self.cols);
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| ech.insert(r.clone()).then_some(i))
            .collect()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column of the
    /// reduced row echelon form (ascending).
    pub fn nullspace(&self) -> Vec<BitVec> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in rref.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form; returns the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<BitVec>, Vec<usize>) {
        let mut rows: Vec<BitVec> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot = rows[next].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next && r.get(col) {
                    r.xor_assign(&pivot);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        (rows, pivots)
    }

    /// True when every row of `self` is orthogonal to every row of `other`.
    pub fn orthogonal_to(&self, other: &BitMatrix) -> Option<(usize, usize)> {
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn select_columns(&self, columns: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: columns.len(),
            rows: self.rows.iter().map(|r| r.select(columns)).collect(),
        }
    }
}

/// Incremental row echelon form with combination tracking.
///
/// Each stored row remembers which inserted generators it is the sum of, so
/// membership queries can report an explicit decomposition.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    generators: usize,
    pivots: Vec<usize>,
    rows: Vec<BitVec>,
    combos: Vec<Vec<usize>>,
}

/// Result of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residual: BitVec,
    /// Generator indices (insertion order) whose sum was subtracted.
    pub combination: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            generators: 0,
            pivots: Vec::new(),
            rows: Vec::new(),
            combos: Vec::new(),
        }
    }

    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut e = Echelon::new(cols);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Inserts a generator; returns false if it was dependent.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.cols);
        let id = self.generators;
        self.generators += 1;
        let red = self.reduce(&v);
        match red.residual.first_one() {
            None => false,
            Some(p) => {
                let mut combo = red.combination;
                toggle(&mut combo, id);
                self.pivots.push(p);
                self.rows.push(red.residual);
                self.combos.push(combo);
                true
            }
        }
    }

    pub fn reduce(&self, v: &BitVec) -> Reduction {
        let mut residual = v.clone();
        let mut combination: Vec<usize> = Vec::new();
        for ((row, &p), combo) in self.rows.iter().zip(&self.pivots).zip(&self.combos) {
            if residual.get(p) {
                residual.xor_assign(row);
                for &g in combo {
                    toggle(&mut combination, g);
                }
            }
        }
        combination.sort_unstable();
        Reduction {
            residual,
            combination,
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).residual.is_zero()
    }
}

fn toggle(set: &mut Vec<usize>, x: usize) {
    if let Some(pos) = set.iter().position(|&y| y == x) {
        set.swap_remove(pos);
    } else {
        set.push(x);
    }
}

/// Inverts a square matrix over GF(2). Returns `None` when singular.
pub fn invert(m: &[BitVec]) -> Option<Vec<BitVec>> {
    let n = m.len();
    let mut a: Vec<BitVec> = m.to_vec();
    let mut inv: Vec<BitVec> = (0..n).map(|i| BitVec::from_support(n, &[i])).collect();
    for col in 0..n {
        let p = (col..n).find(|&i| a[i].get(col))?;
        a.swap(col, p);
        inv.swap(col, p);
        for i in 0..n {
            if i != col && a[i].get(col) {
                let (ra, ri) = (a[col].clone(), inv[col].clone());
                a[i].xor_assign(&ra);
                inv[i].xor_assign(&ri);
            }
        }
    }
    Some(inv)
}
