// SPDX-License-Identifier: Apache-2.0

//! Linear algebra over GF(2) on bit-packed vectors.
//!
//! Coordinate `x_j` (1-based) lives in bit `j - 1`, so `x_1` is the least
//! significant bit and the integer value of a vector is its truth-table index.
//! Text renderings list coordinates left to right as `x_1 x_2 ... x_n`.
//!
//! Row reduction picks pivots from `x_1` upward: a row's leading entry is its
//! lowest set bit. "Lexicographic" order on vectors always means the order of
//! their `x_1 ... x_n` strings, see [`lex_key`].

use std::fmt;
use std::ops::BitXor;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard cap on vector width.
pub const MAX_WIDTH: usize = 24;
/// Largest ambient dimension accepted by [`enumerate_subspaces`].
pub const MAX_SUBSPACE_N: usize = 12;
/// Largest dimension accepted by [`enumerate_gl`].
pub const MAX_GL_N: usize = 5;

#[inline]
pub(crate) fn mask(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

/// Parity of `a & b`.
#[inline]
pub fn dot_bits(a: u32, b: u32) -> bool {
    (a & b).count_ones() & 1 == 1
}

/// Sort key realizing lexicographic order of the `x_1 ... x_n` string.
#[inline]
pub fn lex_key(bits: u32, width: usize) -> u32 {
    if width == 0 {
        0
    } else {
        bits.reverse_bits() >> (32 - width)
    }
}

/// All vectors of the given width in lexicographic order.
pub fn lex_vectors(width: usize) -> impl Iterator<Item = u32> {
    (0..1u32 << width).map(move |u| lex_key(u, width))
}

/// A vector in `{0,1}^width`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    width: u8,
    bits: u32,
}

impl Gf2Vector {
    /// Panics if `width > MAX_WIDTH` or `bits` has a set bit at or beyond `width`.
    pub fn new(width: usize, bits: u32) -> Self {
        assert!(width <= MAX_WIDTH, "vector width {width} exceeds {MAX_WIDTH}");
        assert!(bits & !mask(width) == 0, "bits beyond width {width}");
        Gf2Vector { width: width as u8, bits }
    }

    pub fn zero(width: usize) -> Self {
        Self::new(width, 0)
    }

    /// Standard basis vector with a one at 0-based coordinate `i`.
    pub fn unit(width: usize, i: usize) -> Self {
        assert!(i < width);
        Self::new(width, 1 << i)
    }

    /// Parses a `x_1 ... x_n` bit string such as `"011"`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let width = s.chars().count();
        if width > MAX_WIDTH {
            return Err(Error::budget("vector width", MAX_WIDTH, width));
        }
        let mut bits = 0u32;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::parse(i, format!("expected 0 or 1, found {ch:?}"))),
            }
        }
        Ok(Self::new(width, bits))
    }

    /// Parses a hexadecimal index value (`x_1` is the least significant bit).
    pub fn from_hex(width: usize, s: &str) -> Result<Self> {
        let digits = s.trim_start_matches("0x");
        let bits =
            u32::from_str_radix(digits, 16).map_err(|e| Error::parse(0, format!("bad hex vector {s:?}: {e}")))?;
        if width > MAX_WIDTH || bits & !mask(width) != 0 {
            return Err(Error::Input(format!("hex vector {s:?} does not fit in width {width}")));
        }
        Ok(Self::new(width, bits))
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Truth-table index `sum x_j 2^(j-1)`.
    #[inline]
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    /// 0-based coordinate access.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        debug_assert_eq!(self.width, other.width);
        dot_bits(self.bits, other.bits)
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.width()).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    pub fn to_hex(&self) -> String {
        format!("{:x}", self.bits)
    }
}

impl BitXor for Gf2Vector {
    type Output = Gf2Vector;

    fn bitxor(self, rhs: Gf2Vector) -> Gf2Vector {
        assert_eq!(self.width, rhs.width, "vector width mismatch");
        Gf2Vector { width: self.width, bits: self.bits ^ rhs.bits }
    }
}

impl PartialOrd for Gf2Vector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gf2Vector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| lex_key(self.bits, self.width()).cmp(&lex_key(other.bits, other.width())))
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({})", self.to_bitstring())
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl Serialize for Gf2Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

/// A matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<u32>,
}

impl Gf2Matrix {
    pub fn from_rows(ncols: usize, rows: &[Gf2Vector]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.width() != ncols) {
            return Err(Error::Input(format!("row width {} does not match {ncols} columns", r.width())));
        }
        Ok(Self::from_bits(ncols, rows.iter().map(|r| r.bits()).collect()))
    }

    /// Panics on bits beyond `ncols`.
    pub fn from_bits(ncols: usize, rows: Vec<u32>) -> Self {
        assert!(ncols <= MAX_WIDTH);
        assert!(rows.iter().all(|r| r & !mask(ncols) == 0), "row bits beyond {ncols} columns");
        Gf2Matrix { ncols, rows }
    }

    /// Parses rows given as bit strings, e.g. `["110", "011"]`.
    pub fn from_bitstrings(ncols: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows.iter().map(|s| Gf2Vector::from_bitstring(s)).collect::<Result<Vec<_>>>()?;
        Self::from_rows(ncols, &rows)
    }

    pub fn empty(ncols: usize) -> Self {
        Self::from_bits(ncols, Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_bits(n, (0..n).map(|i| 1u32 << i).collect())
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        Gf2Vector::new(self.ncols, self.rows[i])
    }

    pub fn rows(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        self.rows.iter().map(move |&r| Gf2Vector::new(self.ncols, r))
    }

    #[inline]
    pub fn row_bits(&self) -> &[u32] {
        &self.rows
    }

    /// Matrix-vector product on packed bits: bit `i` of the result is `<row_i, x>`.
    #[inline]
    pub fn apply_bits(&self, x: u32) -> u32 {
        self.rows.iter().enumerate().fold(0, |acc, (i, &r)| acc | (u32::from(dot_bits(r, x)) << i))
    }

    pub fn mul_vec(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        if x.width() != self.ncols {
            return Err(Error::Input(format!("vector width {} does not match {} columns", x.width(), self.ncols)));
        }
        Ok(Gf2Vector::new(self.nrows(), self.apply_bits(x.bits())))
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().enumerate().fold(0u32, |acc, (i, &r)| acc | (((r >> j) & 1) << i)))
            .collect();
        Gf2Matrix::from_bits(self.nrows(), rows)
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.ncols != other.nrows() {
            return Err(Error::Input("matrix product dimension mismatch".into()));
        }
        let t = other.transpose();
        let rows = self.rows.iter().map(|&r| t.apply_bits(r)).collect();
        Ok(Gf2Matrix::from_bits(other.ncols, rows))
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows() == self.ncols && self.rank() == self.ncols
    }

    pub fn inverse(&self) -> Option<Gf2Matrix> {
        let n = self.ncols;
        if self.nrows() != n {
            return None;
        }
        // Gauss-Jordan on [A | I] with the identity packed above bit n.
        let mut aug: Vec<u64> = self.rows.iter().enumerate().map(|(i, &r)| u64::from(r) | (1u64 << (n + i))).collect();
        for col in 0..n {
            let p = (col..n).find(|&i| (aug[i] >> col) & 1 == 1)?;
            aug.swap(col, p);
            let pivot = aug[col];
            for (i, row) in aug.iter_mut().enumerate() {
                if i != col && (*row >> col) & 1 == 1 {
                    *row ^= pivot;
                }
            }
        }
        Some(Gf2Matrix::from_bits(n, aug.into_iter().map(|r| (r >> n) as u32).collect()))
    }

    /// Basis of `{x : self * x = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let red = rref(self);
        let pivot_set: u32 = red.pivots.iter().fold(0, |acc, &p| acc | (1 << p));
        let gens: Vec<u32> = (0..self.ncols)
            .filter(|j| pivot_set & (1 << j) == 0)
            .map(|j| {
                let mut v = 1u32 << j;
                for (row, &p) in red.matrix.rows.iter().zip(&red.pivots) {
                    if (row >> j) & 1 == 1 {
                        v |= 1 << p;
                    }
                }
                v
            })
            .collect();
        Subspace::from_generators(self.ncols, &gens)
    }

    /// All `2^rank` elements of the row space.
    pub fn row_space(&self) -> Vec<u32> {
        span_elements(&rref(self).matrix.rows)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().map(|r| r.to_bitstring()).collect();
        write!(f, "Gf2Matrix[{}; {}]", self.ncols, rows.join(" "))
    }
}

impl Serialize for Gf2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows().map(|r| r.to_bitstring()))
    }
}

/// Every element of the span of `basis` (assumed independent), by Gray code.
pub(crate) fn span_elements(basis: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(1 << basis.len());
    let mut cur = 0u32;
    out.push(cur);
    for i in 1u32..(1 << basis.len()) {
        cur ^= basis[i.trailing_zeros() as usize];
        out.push(cur);
    }
    out
}

/// Reduced row echelon form with its rank and 0-based pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Gf2Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Row-reduces over the first `ncols` bits; extra high bits ride along.
fn rref_bits(ncols: usize, mut rows: Vec<u32>) -> (Vec<u32>, Vec<usize>) {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| (rows[i] >> col) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && (*row >> col) & 1 == 1 {
                *row ^= pivot;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    (rows, pivots)
}

/// Canonical reduced row echelon form; zero rows are dropped.
pub fn rref(m: &Gf2Matrix) -> Rref {
    let (mut rows, pivots) = rref_bits(m.ncols, m.rows.clone());
    rows.truncate(pivots.len());
    Rref { matrix: Gf2Matrix::from_bits(m.ncols, rows), rank: pivots.len(), pivots }
}

/// A linear subspace given by a canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Subspace {
    basis: Gf2Matrix,
}

impl Subspace {
    pub fn from_generators(ncols: usize, gens: &[u32]) -> Subspace {
        Subspace { basis: rref(&Gf2Matrix::from_bits(ncols, gens.to_vec())).matrix }
    }

    pub fn trivial(ncols: usize) -> Subspace {
        Subspace { basis: Gf2Matrix::empty(ncols) }
    }

    pub fn full(ncols: usize) -> Subspace {
        Subspace { basis: Gf2Matrix::identity(ncols) }
    }

    pub fn ncols(&self) -> usize {
        self.basis.ncols
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Gf2Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.rows.iter().map(|r| r.trailing_zeros() as usize).collect()
    }

    /// Reduces `x` against the basis; the result is zero iff `x` is in the span,
    /// and is the lexicographically least member of `x + self` otherwise.
    pub fn reduce_bits(&self, mut x: u32) -> u32 {
        for &r in &self.basis.rows {
            if x & (1 << r.trailing_zeros()) != 0 {
                x ^= r;
            }
        }
        x
    }

    pub fn contains_bits(&self, x: u32) -> bool {
        self.reduce_bits(x) == 0
    }

    pub fn elements(&self) -> Vec<u32> {
        span_elements(&self.basis.rows)
    }
}

/// An affine subspace `{x : constraints * x = rhs}` in canonical form.
///
/// `constraints` is in RREF and `rhs` has been reduced alongside, so two
/// cosets are equal as sets iff they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coset {
    constraints: Gf2Matrix,
    rhs: u32,
}

impl Coset {
    pub fn full(ncols: usize) -> Coset {
        Coset { constraints: Gf2Matrix::empty(ncols), rhs: 0 }
    }

    /// The single point `x`.
    pub fn point(x: Gf2Vector) -> Coset {
        let n = x.width();
        Coset { constraints: Gf2Matrix::identity(n), rhs: x.bits() }
    }

    /// Builds a coset from packed constraint rows already known to be in
    /// canonical RREF (as produced by [`enumerate_subspaces`]).
    pub(crate) fn from_canonical(constraints: Gf2Matrix, rhs: u32) -> Coset {
        Coset { constraints, rhs }
    }

    /// Solves from packed rows; `None` when inconsistent.
    pub(crate) fn solve_bits(ncols: usize, rows: &[u32], rhs: u32) -> Option<Coset> {
        let aug: Vec<u32> = rows.iter().enumerate().map(|(i, &r)| r | (((rhs >> i) & 1) << ncols)).collect();
        let (reduced, pivots) = rref_bits(ncols, aug);
        let rank = pivots.len();
        if reduced[rank..].iter().any(|&r| r != 0) {
            return None;
        }
        let m = mask(ncols);
        let constraints: Vec<u32> = reduced[..rank].iter().map(|&r| r & m).collect();
        let rhs = reduced[..rank].iter().enumerate().fold(0u32, |acc, (i, &r)| acc | (((r >> ncols) & 1) << i));
        Some(Coset { constraints: Gf2Matrix::from_bits(ncols, constraints), rhs })
    }

    pub fn ncols(&self) -> usize {
        self.constraints.ncols
    }

    pub fn codim(&self) -> usize {
        self.constraints.nrows()
    }

    pub fn dim(&self) -> usize {
        self.ncols() - self.codim()
    }

    pub fn size(&self) -> u64 {
        1u64 << self.dim()
    }

    pub fn constraints(&self) -> &Gf2Matrix {
        &self.constraints
    }

    pub fn rhs(&self) -> Gf2Vector {
        Gf2Vector::new(self.codim(), self.rhs)
    }

    #[inline]
    pub fn contains_bits(&self, x: u32) -> bool {
        self.constraints.apply_bits(x) == self.rhs
    }

    pub fn contains(&self, x: &Gf2Vector) -> bool {
        x.width() == self.ncols() && self.contains_bits(x.bits())
    }

    /// Direction space `{x : constraints * x = 0}`.
    pub fn direction(&self) -> Subspace {
        self.constraints.kernel()
    }

    /// Lexicographically least member.
    pub fn offset(&self) -> Gf2Vector {
        let particular = self
            .constraints
            .rows
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &r)| acc | (((self.rhs >> i) & 1) << r.trailing_zeros()));
        Gf2Vector::new(self.ncols(), self.direction().reduce_bits(particular))
    }

    /// Members in local-index order: `offset + sum y_i b_i` for `y = 0, 1, ...`
    /// over the canonical direction basis.
    pub fn elements(&self) -> Vec<u32> {
        let off = self.offset().bits();
        self.direction().elements_in_index_order().into_iter().map(|v| v ^ off).collect()
    }

    /// Adds the equations `rows * x = rhs`; `None` if the result is empty.
    pub fn intersect(&self, rows: &[u32], rhs: u32) -> Option<Coset> {
        let mut all = self.constraints.rows.clone();
        all.extend_from_slice(rows);
        let rhs_all = self.rhs | (rhs << self.codim());
        Coset::solve_bits(self.ncols(), &all, rhs_all)
    }

    pub fn is_subset_of(&self, other: &Coset) -> bool {
        let off = self.offset().bits();
        other.contains_bits(off) && self.direction().basis.rows.iter().all(|&d| other.constraints.apply_bits(d) == 0)
    }
}

impl Subspace {
    /// Elements indexed by coefficient vector: entry `y` is `sum_i y_i b_i`.
    pub fn elements_in_index_order(&self) -> Vec<u32> {
        let k = self.dim();
        let mut out = vec![0u32; 1 << k];
        for y in 1usize..(1 << k) {
            let low = y.trailing_zeros() as usize;
            out[y] = out[y & (y - 1)] ^ self.basis.rows[low];
        }
        out
    }
}

impl Serialize for Coset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Coset", 2)?;
        st.serialize_field("constraints", &self.constraints)?;
        st.serialize_field("rhs", &self.rhs())?;
        st.end()
    }
}

/// Canonical coset of all solutions of `c * x = r`, or `None` if inconsistent.
pub fn solve(c: &Gf2Matrix, r: &Gf2Vector) -> Result<Option<Coset>> {
    if r.width() != c.nrows() {
        return Err(Error::Input(format!("rhs width {} does not match {} constraint rows", r.width(), c.nrows())));
    }
    Ok(Coset::solve_bits(c.ncols, &c.rows, r.bits()))
}

/// Gaussian binomial coefficient `[n choose k]_2`.
pub fn gaussian_binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    (num / den) as u64
}

/// Order of GL(n, 2): `prod_{i<n} (2^n - 2^i)`, checked against [`enumerate_gl`].
/// The similar-looking `prod_{i<n} (2^(n-i) - 1)` (1, 3, 21, ...) is smaller by a
/// factor `2^(n(n-1)/2)` and is not the group order.
pub fn gl_order(n: usize) -> u64 {
    (0..n).map(|i| (1u64 << n) - (1u64 << i)).product()
}

/// Iterator over all `dim`-dimensional subspaces of `{0,1}^n`.
///
/// Pivot sets are visited in lexicographic order of their column lists; within
/// a pivot set the free entries count upward as a binary counter.
pub struct SubspaceIter {
    n: usize,
    pivots: Vec<usize>,
    slots: Vec<(usize, usize)>,
    counter: u64,
    done: bool,
}

impl SubspaceIter {
    fn new(n: usize, dim: usize) -> Self {
        let mut it = SubspaceIter { n, pivots: (0..dim).collect(), slots: Vec::new(), counter: 0, done: false };
        it.load_slots();
        it
    }

    fn load_slots(&mut self) {
        self.slots.clear();
        let pivot_set: u32 = self.pivots.iter().fold(0, |acc, &p| acc | (1 << p));
        for (i, &p) in self.pivots.iter().enumerate() {
            for j in p + 1..self.n {
                if pivot_set & (1 << j) == 0 {
                    self.slots.push((i, j));
                }
            }
        }
        self.counter = 0;
    }

    fn next_pivots(&mut self) -> bool {
        let k = self.pivots.len();
        let n = self.n;
        for i in (0..k).rev() {
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut rows: Vec<u32> = self.pivots.iter().map(|&p| 1u32 << p).collect();
        for (s, &(i, j)) in self.slots.iter().enumerate() {
            if (self.counter >> s) & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        let out = Subspace { basis: Gf2Matrix::from_bits(self.n, rows) };
        self.counter += 1;
        if self.counter >> self.slots.len() != 0 {
            if self.next_pivots() {
                self.load_slots();
            } else {
                self.done = true;
            }
        }
        Some(out)
    }
}

/// Every `dim`-dimensional subspace of `{0,1}^n` exactly once.
pub fn enumerate_subspaces(n: usize, dim: usize) -> Result<SubspaceIter> {
    if n > MAX_SUBSPACE_N {
        return Err(Error::budget("subspace enumeration arity", MAX_SUBSPACE_N, n));
    }
    if dim > n {
        return Err(Error::Input(format!("subspace dimension {dim} exceeds {n}")));
    }
    Ok(SubspaceIter::new(n, dim))
}

/// Every coset of `{0,1}^n`, by codimension, then constraint space, then rhs.
pub fn enumerate_cosets(n: usize) -> Result<impl Iterator<Item = Coset>> {
    if n > MAX_SUBSPACE_N {
        return Err(Error::budget("coset enumeration arity", MAX_SUBSPACE_N, n));
    }
    Ok((0..=n).flat_map(move |k| {
        SubspaceIter::new(n, k)
            .flat_map(move |w| (0..1u32 << k).map(move |r| Coset::from_canonical(w.basis.clone(), r)))
    }))
}

/// Depth-first enumeration of GL(n, 2): each row runs over the vectors outside
/// the span of the rows above it, in lexicographic order.
pub struct GlIter {
    n: usize,
    order: Vec<u32>,
    // cursor[i] indexes `order` for row i
    cursor: Vec<usize>,
    rows: Vec<u32>,
    spans: Vec<Subspace>,
    started: bool,
    done: bool,
}

impl GlIter {
    fn new(n: usize) -> Self {
        GlIter {
            n,
            order: lex_vectors(n).collect(),
            cursor: Vec::with_capacity(n),
            rows: Vec::with_capacity(n),
            spans: vec![Subspace::trivial(n)],
            started: false,
            done: false,
        }
    }

    /// Fills rows from depth `rows.len()` using cursors starting at `from`.
    fn descend(&mut self, mut from: usize) -> bool {
        while self.rows.len() < self.n {
            let span = self.spans.last().expect("span stack");
            let next = (from..self.order.len()).find(|&c| !span.contains_bits(self.order[c]));
            match next {
                Some(c) => {
                    let v = self.order[c];
                    let mut gens = span.basis.rows.clone();
                    gens.push(v);
                    let s = Subspace::from_generators(self.n, &gens);
                    self.cursor.push(c);
                    self.rows.push(v);
                    self.spans.push(s);
                    from = 0;
                }
                None => {
                    // backtrack
                    let Some(c) = self.cursor.pop() else { return false };
                    self.rows.pop();
                    self.spans.pop();
                    from = c + 1;
                }
            }
        }
        true
    }
}

impl Iterator for GlIter {
    type Item = Gf2Matrix;

    fn next(&mut self) -> Option<Gf2Matrix> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.descend(0)
        } else {
            match self.cursor.pop() {
                Some(c) => {
                    self.rows.pop();
                    self.spans.pop();
                    self.descend(c + 1)
                }
                None => false,
            }
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(Gf2Matrix::from_bits(self.n, self.rows.clone()))
    }
}

/// Every invertible `n x n` matrix exactly once. Refuses `n > MAX_GL_N`;
/// use [`sample_gl`] beyond that.
pub fn enumerate_gl(n: usize) -> Result<GlIter> {
    if n > MAX_GL_N {
        return Err(Error::budget("GL(n,2) enumeration (use sampling)", MAX_GL_N, n));
    }
    Ok(GlIter::new(n))
}

/// A uniformly random invertible `n x n` matrix.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Gf2Matrix {
    let m = mask(n);
    let mut rows: Vec<u32> = Vec::with_capacity(n);
    let mut span = Subspace::trivial(n);
    while rows.len() < n {
        let v = rng.gen::<u32>() & m;
        if !span.contains_bits(v) {
            rows.push(v);
            span = Subspace::from_generators(n, &rows);
        }
    }
    Gf2Matrix::from_bits(n, rows)
}

/// `count` independent uniform samples from GL(n, 2).
pub fn sample_gl<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Result<Vec<Gf2Matrix>> {
    if n > MAX_WIDTH {
        return Err(Error::budget("GL(n,2) sampling arity", MAX_WIDTH, n));
    }
    Ok((0..count).map(|_| random_invertible(n, rng)).collect())
}
