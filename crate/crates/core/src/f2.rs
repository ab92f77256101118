//! Exact linear algebra over GF(2).
//!
//! Dense vectors and matrices pack 64 entries per `u64`; row operations are
//! word-wise XORs. Differentials coming out of the cube of resolutions are
//! very sparse, so [`SparseMatrix`] keeps them column-compressed until an
//! elimination actually needs packed rows.
//!
//! All eliminations produce the reduced row echelon form of the row space,
//! which is unique, so every basis handed out here is deterministic
//! regardless of insertion order.

use std::fmt;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
fn parity_and(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1
}

/// Iterates set-bit positions of a packed word slice.
fn set_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + t)
        })
    })
}

/// A vector in `GF(2)^len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Sum of unit vectors; repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        xor_into(&mut self.words, &other.words);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        set_bits(&self.words)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        parity_and(&self.words, &other.words)
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, ")")
    }
}

/// Anything that acts linearly on bit vectors.
pub trait LinearMap {
    fn source_dim(&self) -> usize;
    fn target_dim(&self) -> usize;
    fn apply(&self, v: &BitVector) -> BitVector;
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// # Panics
    ///
    /// Panics if some row does not have length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row {r} has wrong length");
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        Self::from_rows(rows, columns).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let idx = r * self.stride + c / 64;
        let mask = 1u64 << (c % 64);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = BitVector> + '_ {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in set_bits(self.row_words(r)) {
                t.data[c * t.stride + r / 64] |= 1u64 << (r % 64);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let (lhs_row, out_row) = (
                &self.data[r * self.stride..(r + 1) * self.stride],
                &mut out.data[r * rhs.stride..(r + 1) * rhs.stride],
            );
            for k in set_bits(lhs_row) {
                xor_into(out_row, rhs.row_words(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if parity_and(self.row_words(r), v.words()) {
                out.set(r, true);
            }
        }
        out
    }

    /// Rank by forward elimination on packed rows.
    pub fn rank(&self) -> usize {
        let mut basis = ForwardBasis::new(self.cols);
        for r in 0..self.rows {
            basis.insert(self.row_words(r).to_vec());
        }
        basis.rank
    }

    /// Reduced row echelon form of the row space.
    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for v in self.row_vectors() {
            e.insert(v);
        }
        e
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in ascending
    /// order.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let e = self.echelon();
        (0..self.cols)
            .filter(|&c| !e.is_pivot(c))
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                for r in 0..e.rank() {
                    if e.row(r)[f / 64] >> (f % 64) & 1 == 1 {
                        v.set(e.pivots[r], true);
                    }
                }
                v
            })
            .collect()
    }

    /// Basis of the column space in reduced echelon form.
    pub fn image_basis(&self) -> Vec<BitVector> {
        self.transpose().echelon().sorted_rows()
    }
}

impl LinearMap for F2Matrix {
    fn source_dim(&self) -> usize {
        self.cols
    }

    fn target_dim(&self) -> usize {
        self.rows
    }

    fn apply(&self, v: &BitVector) -> BitVector {
        self.mul_vec(v)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Classic XOR basis keyed by lowest set bit; rows are not mutually reduced.
struct ForwardBasis {
    rank: usize,
    by_pivot: Vec<Option<Vec<u64>>>,
}

impl ForwardBasis {
    fn new(width: usize) -> Self {
        Self {
            rank: 0,
            by_pivot: vec![None; width],
        }
    }

    fn insert(&mut self, mut v: Vec<u64>) {
        let mut w = 0;
        while w < v.len() {
            if v[w] == 0 {
                w += 1;
                continue;
            }
            let p = w * 64 + v[w].trailing_zeros() as usize;
            match &self.by_pivot[p] {
                Some(row) => xor_into(&mut v[w..], &row[w..]),
                None => {
                    self.by_pivot[p] = Some(v);
                    self.rank += 1;
                    return;
                }
            }
        }
    }
}

/// Incrementally maintained reduced row echelon basis of a subspace of
/// `GF(2)^width`. The pivot of each row is its lowest set bit; every other
/// row is zero at that column.
#[derive(Clone)]
pub struct Echelon {
    width: usize,
    stride: usize,
    data: Vec<u64>,
    pivots: Vec<usize>,
    row_of_col: Vec<u32>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            stride: words_for(width),
            data: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![NONE; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col] != NONE
    }

    /// Pivot columns, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Subtracts the unique combination of basis rows that clears every
    /// pivot column of `v`.
    pub fn reduce(&self, v: &mut BitVector) {
        assert_eq!(v.len(), self.width, "vector length mismatch");
        let hits: Vec<u32> = set_bits(&v.words)
            .map(|c| self.row_of_col[c])
            .filter(|&r| r != NONE)
            .collect();
        for r in hits {
            xor_into(&mut v.words, self.row(r as usize));
        }
    }

    /// Adds `v` to the spanned subspace. Returns `false` if it was already
    /// in the span.
    pub fn insert(&mut self, mut v: BitVector) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.first_one() else {
            return false;
        };
        let (w, mask) = (p / 64, 1u64 << (p % 64));
        for r in 0..self.rank() {
            let start = r * self.stride;
            if self.data[start + w] & mask != 0 {
                xor_into(&mut self.data[start..start + self.stride], &v.words);
            }
        }
        self.row_of_col[p] = self.pivots.len() as u32;
        self.pivots.push(p);
        self.data.extend_from_slice(&v.words);
        true
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Basis rows ordered by pivot column.
    pub fn sorted_rows(&self) -> Vec<BitVector> {
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_unstable_by_key(|&r| self.pivots[r]);
        order
            .into_iter()
            .map(|r| BitVector {
                len: self.width,
                words: self.row(r).to_vec(),
            })
            .collect()
    }
}

impl fmt::Debug for Echelon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Echelon")
            .field("width", &self.width)
            .field("pivots", &self.pivots())
            .finish()
    }
}

/// Column-compressed sparse matrix over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    offsets: Vec<usize>,
    indices: Vec<usize>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            offsets: vec![0; cols + 1],
            indices: Vec::new(),
        }
    }

    /// Each column is given by the row indices of its nonzero entries.
    /// Entries are sorted and repeated indices cancel in pairs.
    pub fn from_columns(rows: usize, columns: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut offsets = vec![0];
        let mut indices = Vec::new();
        for mut col in columns {
            col.sort_unstable();
            let mut k = 0;
            while k < col.len() {
                let mut run = 1;
                while k + run < col.len() && col[k + run] == col[k] {
                    run += 1;
                }
                if run % 2 == 1 {
                    assert!(col[k] < rows, "row index {} out of range {rows}", col[k]);
                    indices.push(col[k]);
                }
                k += run;
            }
            offsets.push(indices.len());
        }
        Self {
            rows,
            cols: offsets.len() - 1,
            offsets,
            indices,
        }
    }

    pub fn from_dense(m: &F2Matrix) -> Self {
        let t = m.transpose();
        Self::from_columns(m.rows(), (0..m.cols()).map(|c| set_bits(t.row_words(c)).collect()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn column(&self, c: usize) -> &[usize] {
        &self.indices[self.offsets[c]..self.offsets[c + 1]]
    }

    pub fn is_zero(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn to_dense(&self) -> F2Matrix {
        let mut m = F2Matrix::zeros(self.rows, self.cols);
        for c in 0..self.cols {
            for &r in self.column(c) {
                m.set(r, c, true);
            }
        }
        m
    }

    /// Rows as packed vectors of length `cols`.
    pub fn row_vectors(&self) -> Vec<BitVector> {
        let mut out = vec![BitVector::zeros(self.cols); self.rows];
        for c in 0..self.cols {
            for &r in self.column(c) {
                out[r].set(c, true);
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SparseMatrix) -> Result<SparseMatrix> {
        if first.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, first.rows, first.cols
            )));
        }
        Ok(Self::from_columns(
            self.rows,
            (0..first.cols).map(|c| {
                first
                    .column(c)
                    .iter()
                    .flat_map(|&k| self.column(k).iter().copied())
                    .collect()
            }),
        ))
    }
}

impl LinearMap for SparseMatrix {
    fn source_dim(&self) -> usize {
        self.cols
    }

    fn target_dim(&self) -> usize {
        self.rows
    }

    fn apply(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for c in v.ones() {
            for &r in self.column(c) {
                out.flip(r);
            }
        }
        out
    }
}

/// Homology at the middle of `C_prev --d_in--> C --d_out--> C_next`.
///
/// Cycles are parametrised by the free columns of the reduced echelon form
/// of `d_out`: projecting onto those coordinates is an isomorphism from
/// `ker d_out`. Boundaries are kept in that projected form, so cycle
/// representatives are the kernel vectors attached to free columns that are
/// not boundary pivots, and coordinates of a cycle are read off after one
/// reduction.
#[derive(Clone, Debug)]
pub struct SubquotientBasis {
    ambient_dim: usize,
    kernel: Echelon,
    free_columns: Vec<usize>,
    free_slot: Vec<u32>,
    boundaries: Echelon,
    rep_slots: Vec<usize>,
    cycle_reps: Vec<BitVector>,
}

impl SubquotientBasis {
    /// `out_rows` span the row space of `d_out`; `boundary_gens` span the
    /// image of `d_in` and must already be cycles.
    fn build(
        ambient_dim: usize,
        out_rows: impl IntoIterator<Item = BitVector>,
        boundary_gens: impl IntoIterator<Item = BitVector>,
    ) -> Self {
        let mut kernel = Echelon::new(ambient_dim);
        for row in out_rows {
            kernel.insert(row);
        }
        let free_columns: Vec<usize> = (0..ambient_dim).filter(|&c| !kernel.is_pivot(c)).collect();
        let mut free_slot = vec![NONE; ambient_dim];
        for (slot, &c) in free_columns.iter().enumerate() {
            free_slot[c] = slot as u32;
        }
        let mut out = Self {
            ambient_dim,
            kernel,
            boundaries: Echelon::new(free_columns.len()),
            free_columns,
            free_slot,
            rep_slots: Vec::new(),
            cycle_reps: Vec::new(),
        };
        for b in boundary_gens {
            let projected = out.project(&b);
            out.boundaries.insert(projected);
        }
        out.rep_slots = (0..out.free_columns.len())
            .filter(|&s| !out.boundaries.is_pivot(s))
            .collect();
        out.cycle_reps = out
            .rep_slots
            .iter()
            .map(|&s| out.lift(&BitVector::unit(out.free_columns.len(), s)))
            .collect();
        out
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the homology group.
    pub fn dim(&self) -> usize {
        self.rep_slots.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.free_columns.len()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundaries.rank()
    }

    /// One cycle per homology basis element; together with
    /// [`Self::boundary_basis`] they are linearly independent.
    pub fn cycle_reps(&self) -> &[BitVector] {
        &self.cycle_reps
    }

    /// Basis of the boundary space, in reduced form relative to the cycle
    /// parametrisation.
    pub fn boundary_basis(&self) -> Vec<BitVector> {
        self.boundaries.sorted_rows().iter().map(|y| self.lift(y)).collect()
    }

    pub fn is_cycle(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        (0..self.kernel.rank()).all(|r| !parity_and(self.kernel.row(r), v.words()))
    }

    fn project(&self, v: &BitVector) -> BitVector {
        let mut y = BitVector::zeros(self.free_columns.len());
        for c in v.ones() {
            let slot = self.free_slot[c];
            if slot != NONE {
                y.set(slot as usize, true);
            }
        }
        y
    }

    /// The unique cycle whose free coordinates are `y`.
    fn lift(&self, y: &BitVector) -> BitVector {
        let mut v = BitVector::zeros(self.ambient_dim);
        for s in y.ones() {
            v.set(self.free_columns[s], true);
        }
        let mut pivot_bits = Vec::new();
        for r in 0..self.kernel.rank() {
            if parity_and(self.kernel.row(r), v.words()) {
                pivot_bits.push(self.kernel.pivots[r]);
            }
        }
        for p in pivot_bits {
            v.set(p, true);
        }
        v
    }

    /// Coordinates of the class of the cycle `v` in the basis
    /// [`Self::cycle_reps`].
    pub fn coordinates(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a {}-dimensional chain group",
                v.len(),
                self.ambient_dim
            )));
        }
        if !self.is_cycle(v) {
            return Err(Error::ChainMap("vector is not a cycle".into()));
        }
        let mut y = self.project(v);
        self.boundaries.reduce(&mut y);
        Ok(BitVector::from_indices(
            self.dim(),
            self.rep_slots
                .iter()
                .enumerate()
                .filter(|(_, &s)| y.get(s))
                .map(|(k, _)| k),
        ))
    }

    pub fn is_boundary(&self, v: &BitVector) -> bool {
        self.is_cycle(v) && self.coordinates(v).map(|c| c.is_zero()).unwrap_or(false)
    }
}

/// Homology of `C_prev --d_in--> C --d_out--> C_next` for dense differentials.
pub fn homology(d_in: &F2Matrix, d_out: &F2Matrix) -> Result<SubquotientBasis> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in lands in dimension {} but d_out starts from {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex("d_out · d_in has nonzero entries".into()));
    }
    let columns = d_in.transpose();
    Ok(SubquotientBasis::build(
        d_in.rows(),
        d_out.row_vectors(),
        columns.row_vectors(),
    ))
}

/// Same as [`homology`] for column-compressed differentials.
pub fn homology_sparse(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<SubquotientBasis> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in lands in dimension {} but d_out starts from {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.compose(d_in)?.is_zero() {
        return Err(Error::NotAComplex("d_out ∘ d_in has nonzero entries".into()));
    }
    let m = d_in.rows();
    Ok(SubquotientBasis::build(
        m,
        d_out.row_vectors(),
        (0..d_in.cols()).map(|c| BitVector::from_indices(m, d_in.column(c).iter().copied())),
    ))
}

/// Whether `v` lies in the span of `span`.
pub fn membership(v: &BitVector, span: &[BitVector]) -> Result<bool> {
    let mut e = Echelon::new(v.len());
    for s in span {
        if s.len() != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "span vector of length {} vs {}",
                s.len(),
                v.len()
            )));
        }
        e.insert(s.clone());
    }
    Ok(e.contains(v))
}

/// Matrix (target dim × source dim) of the map on homology induced by
/// `chain_map`. Fails if a cycle is not sent to a cycle or a boundary is
/// not sent to a boundary.
pub fn induced_map<M: LinearMap + ?Sized>(
    chain_map: &M,
    source: &SubquotientBasis,
    target: &SubquotientBasis,
) -> Result<F2Matrix> {
    let m = induced_map_on_cycles(chain_map, source, target)?;
    for b in source.boundary_basis() {
        if !target.is_boundary(&chain_map.apply(&b)) {
            return Err(Error::ChainMap("a boundary is not sent to a boundary".into()));
        }
    }
    Ok(m)
}

/// [`induced_map`] without the boundary check, for callers that have
/// already verified the chain map commutes with the differentials.
pub(crate) fn induced_map_on_cycles<M: LinearMap + ?Sized>(
    chain_map: &M,
    source: &SubquotientBasis,
    target: &SubquotientBasis,
) -> Result<F2Matrix> {
    if chain_map.source_dim() != source.ambient_dim() || chain_map.target_dim() != target.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "chain map {}x{} between groups of dimension {} and {}",
            chain_map.target_dim(),
            chain_map.source_dim(),
            source.ambient_dim(),
            target.ambient_dim()
        )));
    }
    let columns = source
        .cycle_reps()
        .iter()
        .map(|z| {
            target
                .coordinates(&chain_map.apply(z))
                .map_err(|_| Error::ChainMap("a cycle is not sent to a cycle".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(F2Matrix::from_columns(target.dim(), &columns))
}
