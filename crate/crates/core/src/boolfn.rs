// SPDX-License-Identifier: Apache-2.0

//! Boolean functions stored as packed truth tables.
//!
//! `table[index(x)] = f(x)` with `index(x) = sum x_j 2^(j-1)`.

use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::construct;
use crate::error::{Error, Result};
use crate::gf2::{self, Coset, Gf2Matrix, Gf2Vector, MAX_WIDTH};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    arity: usize,
    words: Vec<u64>,
}

fn word_count(arity: usize) -> usize {
    (1usize << arity).div_ceil(64)
}

impl BooleanFunction {
    pub fn from_fn(arity: usize, mut f: impl FnMut(u32) -> bool) -> Self {
        assert!(arity <= MAX_WIDTH, "arity {arity} exceeds {MAX_WIDTH}");
        let mut words = vec![0u64; word_count(arity)];
        for x in 0..1u32 << arity {
            if f(x) {
                words[x as usize >> 6] |= 1 << (x & 63);
            }
        }
        BooleanFunction { arity, words }
    }

    pub fn from_bools(values: &[bool]) -> Result<Self> {
        let n = values.len().trailing_zeros() as usize;
        if values.len() != 1 << n {
            return Err(Error::Input(format!("table length {} is not a power of two", values.len())));
        }
        if n > MAX_WIDTH {
            return Err(Error::budget("arity", MAX_WIDTH, n));
        }
        Ok(Self::from_fn(n, |x| values[x as usize]))
    }

    /// Truth table packed into the low `2^arity` bits of a `u64` (arity <= 6).
    pub fn from_u64(arity: usize, table: u64) -> Self {
        assert!(arity <= 6);
        let len = 1u32 << arity;
        let masked = if len == 64 { table } else { table & ((1u64 << len) - 1) };
        BooleanFunction { arity, words: vec![masked] }
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        Self::from_fn(arity, |_| value)
    }

    pub fn random<R: Rng + ?Sized>(arity: usize, rng: &mut R) -> Self {
        let mut f = Self::constant(arity, false);
        for w in &mut f.words {
            *w = rng.gen();
        }
        if arity < 6 {
            f.words[0] &= (1u64 << (1 << arity)) - 1;
        }
        f
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    /// Always false; tables have at least one entry.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Value at a packed input.
    #[inline]
    pub fn get(&self, x: u32) -> bool {
        (self.words[x as usize >> 6] >> (x & 63)) & 1 == 1
    }

    /// Low 64 table bits; the full table for arity <= 6.
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn evaluate(&self, x: &Gf2Vector) -> Result<bool> {
        if x.width() != self.arity {
            return Err(Error::Input(format!("input width {} does not match arity {}", x.width(), self.arity)));
        }
        Ok(self.get(x.bits()))
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// `Some(b)` when `f` is identically `b`.
    pub fn constant_value(&self) -> Option<bool> {
        let ones = self.count_ones();
        if ones == 0 {
            Some(false)
        } else if ones == self.len() as u64 {
            Some(true)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.arity, |x| !self.get(x))
    }

    /// Inputs with `f(x) = value`, ascending by index.
    pub fn inputs_with(&self, value: bool) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.arity).filter(move |&x| self.get(x) == value)
    }

    /// `x -> f(x + c)`.
    pub fn shift(&self, c: &Gf2Vector) -> Result<Self> {
        if c.width() != self.arity {
            return Err(Error::Input("shift width does not match arity".into()));
        }
        let c = c.bits();
        Ok(Self::from_fn(self.arity, |x| self.get(x ^ c)))
    }

    /// `x -> f(a x)`.
    pub fn rotate(&self, a: &Gf2Matrix) -> Result<Self> {
        if a.nrows() != self.arity || a.ncols() != self.arity {
            return Err(Error::Input(format!(
                "rotation must be {0}x{0}, got {1}x{2}",
                self.arity,
                a.nrows(),
                a.ncols()
            )));
        }
        Ok(Self::from_fn(self.arity, |x| self.get(a.apply_bits(x))))
    }

    /// Restriction to `h` in the canonical frame: lexicographically least
    /// offset and the RREF basis of the direction space.
    pub fn restrict(&self, h: &Coset) -> Result<RestrictedFunction> {
        if h.ncols() != self.arity {
            return Err(Error::Input("coset width does not match arity".into()));
        }
        let offset = h.offset();
        let direction = h.direction();
        let points = direction.elements_in_index_order();
        let local = Self::from_fn(direction.dim(), |y| self.get(points[y as usize] ^ offset.bits()));
        Ok(RestrictedFunction { ambient: h.clone(), local, basis: direction.basis().clone(), offset, canonical: true })
    }

    /// Degree of the F2 polynomial (algebraic normal form).
    pub fn anf_degree(&self) -> u32 {
        let n = self.arity;
        let mut coeffs: Vec<bool> = (0..1u32 << n).map(|x| self.get(x)).collect();
        for i in 0..n {
            let bit = 1usize << i;
            for x in 0..coeffs.len() {
                if x & bit != 0 {
                    coeffs[x] ^= coeffs[x ^ bit];
                }
            }
        }
        coeffs.iter().enumerate().filter(|(_, &c)| c).map(|(m, _)| m.count_ones()).max().unwrap_or(0)
    }

    /// Table as a bit string, index 0 leftmost.
    pub fn to_table_string(&self) -> String {
        (0..1u32 << self.arity).map(|x| if self.get(x) { '1' } else { '0' }).collect()
    }

    /// Canonical `tt:` function spec.
    pub fn to_spec(&self) -> String {
        format!("tt:{}:{}", self.arity, self.to_table_string())
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity <= 6 {
            write!(f, "BooleanFunction({})", self.to_spec())
        } else {
            write!(f, "BooleanFunction(arity {}, {} ones)", self.arity, self.count_ones())
        }
    }
}

impl Serialize for BooleanFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_spec())
    }
}

/// A function on a coset `H`, re-indexed onto `{0,1}^m` with `m = dim H`:
/// `local(y) = f(offset + sum_i y_i basis_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedFunction {
    ambient: Coset,
    local: BooleanFunction,
    basis: Gf2Matrix,
    offset: Gf2Vector,
    canonical: bool,
}

impl RestrictedFunction {
    /// `f` on the whole space, identity frame.
    pub fn whole(f: &BooleanFunction) -> Self {
        f.restrict(&Coset::full(f.arity())).expect("full coset matches arity")
    }

    /// Restriction with a caller-chosen frame. The basis must span the
    /// direction space of `h` and the offset must lie in `h`.
    pub fn with_frame(f: &BooleanFunction, h: &Coset, basis: &[Gf2Vector], offset: Gf2Vector) -> Result<Self> {
        let n = f.arity();
        if h.ncols() != n || offset.width() != n {
            return Err(Error::Input("frame width does not match arity".into()));
        }
        if !h.contains(&offset) {
            return Err(Error::Domain("offset is not in the coset".into()));
        }
        let rows: Vec<u32> = basis.iter().map(|b| b.bits()).collect();
        let direction = h.direction();
        let m = Gf2Matrix::from_rows(n, basis)?;
        if m.rank() != rows.len() || rows.len() != direction.dim() || !rows.iter().all(|&r| direction.contains_bits(r))
        {
            return Err(Error::Domain("basis does not span the coset direction".into()));
        }
        let off = offset.bits();
        let local = BooleanFunction::from_fn(rows.len(), |y| {
            let x = rows.iter().enumerate().filter(|(i, _)| (y >> i) & 1 == 1).fold(off, |a, (_, r)| a ^ r);
            f.get(x)
        });
        Ok(RestrictedFunction { ambient: h.clone(), local, basis: m, offset, canonical: false })
    }

    pub fn ambient(&self) -> &Coset {
        &self.ambient
    }

    pub fn local(&self) -> &BooleanFunction {
        &self.local
    }

    pub fn basis(&self) -> &Gf2Matrix {
        &self.basis
    }

    pub fn offset(&self) -> Gf2Vector {
        self.offset
    }

    pub fn ambient_arity(&self) -> usize {
        self.ambient.ncols()
    }

    pub fn dim(&self) -> usize {
        self.local.arity()
    }

    /// Ambient point for local coordinates `y`.
    pub fn lift_point(&self, y: u32) -> u32 {
        self.lift_direction(y) ^ self.offset.bits()
    }

    /// Ambient direction `sum_i u_i basis_i`.
    pub fn lift_direction(&self, u: u32) -> u32 {
        self.basis.row_bits().iter().enumerate().filter(|(i, _)| (u >> i) & 1 == 1).fold(0, |a, (_, r)| a ^ r)
    }

    /// Local coordinates of an ambient point, if it lies in the coset.
    pub fn local_point(&self, x: u32) -> Option<u32> {
        if !self.ambient.contains_bits(x) {
            return None;
        }
        let d = x ^ self.offset.bits();
        if self.canonical {
            // offset vanishes on the pivots, so y_i is the pivot coordinate
            Some(
                self.basis
                    .row_bits()
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (i, r)| acc | (((d >> r.trailing_zeros()) & 1) << i)),
            )
        } else {
            (0..1u32 << self.dim()).find(|&y| self.lift_direction(y) == d)
        }
    }

    /// An ambient query `c` and flip bit such that for every `x` in the coset
    /// with local coordinates `y`, `<x, c> = <y, c_local> + flip`.
    pub fn lift_query(&self, c_local: u32) -> (u32, bool) {
        if self.canonical {
            let c = self
                .basis
                .row_bits()
                .iter()
                .enumerate()
                .filter(|(i, _)| (c_local >> i) & 1 == 1)
                .fold(0u32, |a, (_, r)| a | (1 << r.trailing_zeros()));
            (c, false)
        } else {
            let sol = Coset::solve_bits(self.ambient_arity(), self.basis.row_bits(), c_local)
                .expect("independent basis rows are always solvable");
            let c = sol.offset().bits();
            (c, gf2::dot_bits(c, self.offset.bits()))
        }
    }

    /// Ambient coset cut out by the lifted local constraints alone. Its
    /// intersection with the domain is the local coset, and its codimension
    /// equals the local codimension.
    pub fn lift_constraints(&self, local: &Coset) -> Coset {
        let mut rows = Vec::with_capacity(local.codim());
        let mut rhs = 0u32;
        for (i, row) in local.constraints().row_bits().iter().enumerate() {
            let (c, flip) = self.lift_query(*row);
            rows.push(c);
            rhs |= u32::from(local.rhs().get(i) ^ flip) << i;
        }
        Coset::solve_bits(self.ambient_arity(), &rows, rhs).expect("lifted rows are independent")
    }

    /// Maps a coset of the local space to the ambient coset it describes.
    pub fn lift_coset(&self, local: &Coset) -> Coset {
        let mut rows = Vec::with_capacity(local.codim());
        let mut rhs = 0u32;
        for (i, row) in local.constraints().row_bits().iter().enumerate() {
            let (c, flip) = self.lift_query(*row);
            rows.push(c);
            let r = local.rhs().get(i) ^ flip;
            rhs |= u32::from(r) << i;
        }
        self.ambient.intersect(&rows, rhs).expect("lifted coset is nonempty")
    }
}

/// Exact dyadic rational `num / 2^log_den`, kept reduced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Dyadic {
    pub num: i64,
    pub log_den: u32,
}

impl Dyadic {
    pub fn new(num: i64, log_den: u32) -> Self {
        let mut d = Dyadic { num, log_den };
        if num == 0 {
            d.log_den = 0;
        }
        while d.log_den > 0 && d.num % 2 == 0 {
            d.num /= 2;
            d.log_den -= 1;
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.log_den)
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Fourier coefficients `f^_w = 2^-n sum_x (-1)^<x,w> f(x)` of the 0/1-valued
/// table, stored as the integer numerators over `2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierSpectrum {
    arity: usize,
    numerators: Vec<i64>,
}

impl FourierSpectrum {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `2^n f^_w` for every `w` in index order.
    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn coefficient(&self, w: u32) -> Dyadic {
        Dyadic::new(self.numerators[w as usize], self.arity as u32)
    }

    /// Number of nonzero coefficients.
    pub fn sparsity(&self) -> usize {
        self.numerators.iter().filter(|&&c| c != 0).count()
    }

    /// Nonzero coefficients in index order.
    pub fn support(&self) -> impl Iterator<Item = (u32, Dyadic)> + '_ {
        self.numerators.iter().enumerate().filter(|(_, &c)| c != 0).map(|(w, _)| (w as u32, self.coefficient(w as u32)))
    }
}

/// In-place unnormalized Walsh-Hadamard transform.
pub fn walsh_hadamard(values: &mut [i64]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (values[i], values[i + h]);
                values[i] = a + b;
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Largest arity accepted by [`fourier`].
pub const MAX_FOURIER_N: usize = 24;

pub fn fourier(f: &BooleanFunction) -> Result<FourierSpectrum> {
    if f.arity() > MAX_FOURIER_N {
        return Err(Error::budget("fourier arity", MAX_FOURIER_N, f.arity()));
    }
    let mut values: Vec<i64> = (0..1u32 << f.arity()).map(|x| i64::from(f.get(x))).collect();
    walsh_hadamard(&mut values);
    Ok(FourierSpectrum { arity: f.arity(), numerators: values })
}

/// Parses `tt:<n>:<bits>`, `anf:<n>:<poly>` or `zoo:<name>:<n>`.
pub fn parse_function_spec(spec: &str) -> Result<BooleanFunction> {
    let mut parts = spec.splitn(3, ':');
    let kind = parts.next().unwrap_or_default();
    let (Some(a), Some(b)) = (parts.next(), parts.next()) else {
        return Err(Error::parse(0, "expected <kind>:<arg>:<arg>"));
    };
    let a_pos = kind.len() + 1;
    let b_pos = a_pos + a.len() + 1;
    match kind.trim() {
        "tt" => {
            let n = parse_arity(a, a_pos)?;
            let digits: Vec<(usize, char)> = b.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
            if digits.len() != 1 << n {
                return Err(Error::parse(
                    b_pos,
                    format!("table has {} entries, arity {n} needs {}", digits.len(), 1u64 << n),
                ));
            }
            let mut values = Vec::with_capacity(digits.len());
            for (i, c) in digits {
                match c {
                    '0' => values.push(false),
                    '1' => values.push(true),
                    _ => return Err(Error::parse(b_pos + i, format!("expected 0 or 1, found {c:?}"))),
                }
            }
            BooleanFunction::from_bools(&values)
        }
        "anf" => {
            let n = parse_arity(a, a_pos)?;
            parse_anf(n, b, b_pos)
        }
        "zoo" => {
            let n = parse_arity(b, b_pos)?;
            construct::zoo(a.trim(), n)
        }
        other => Err(Error::parse(0, format!("unknown function kind {other:?}"))),
    }
}

fn parse_arity(s: &str, pos: usize) -> Result<usize> {
    let n: usize = s.trim().parse().map_err(|_| Error::parse(pos, format!("expected an arity, found {s:?}")))?;
    if n == 0 || n > MAX_WIDTH {
        return Err(Error::parse(pos, format!("arity {n} outside 1..={MAX_WIDTH}")));
    }
    Ok(n)
}

/// `term (+ term)*` with `term = 1 | x<i>(*x<j>)*`, whitespace ignored.
fn parse_anf(n: usize, src: &str, base: usize) -> Result<BooleanFunction> {
    let toks: Vec<(usize, char)> =
        src.char_indices().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (base + i, c)).collect();
    let end = base + src.len();
    let mut monomials: Vec<u32> = Vec::new();
    let mut i = 0;
    loop {
        // one term
        let mut mono = 0u32;
        match toks.get(i) {
            Some((_, '1')) => i += 1,
            Some((_, 'x')) => loop {
                let Some(&(p, 'x')) = toks.get(i) else {
                    let p = toks.get(i).map_or(end, |t| t.0);
                    return Err(Error::parse(p, "expected a variable x<i>"));
                };
                i += 1;
                let start = i;
                while toks.get(i).is_some_and(|t| t.1.is_ascii_digit()) {
                    i += 1;
                }
                let digits: String = toks[start..i].iter().map(|t| t.1).collect();
                let v: usize = digits.parse().map_err(|_| Error::parse(p, "expected a variable index"))?;
                if v == 0 || v > n {
                    return Err(Error::parse(p, format!("variable x{v} outside x1..x{n}")));
                }
                mono |= 1 << (v - 1);
                if toks.get(i).is_some_and(|t| t.1 == '*') {
                    i += 1;
                } else {
                    break;
                }
            },
            Some(&(p, c)) => return Err(Error::parse(p, format!("unexpected {c:?}"))),
            None => return Err(Error::parse(end, "expected a term")),
        }
        monomials.push(mono);
        match toks.get(i) {
            None => break,
            Some((_, '+')) => i += 1,
            Some(&(p, c)) => return Err(Error::parse(p, format!("unexpected {c:?}"))),
        }
    }
    Ok(BooleanFunction::from_fn(n, |x| monomials.iter().filter(|&&m| x & m == m).count() % 2 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt(s: &str) -> BooleanFunction {
        parse_function_spec(s).unwrap()
    }

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::from_bitstring(s).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let or2 = tt("tt:2:0111");
        assert!(!or2.evaluate(&v("00")).unwrap());
        assert!(or2.evaluate(&v("01")).unwrap());
        let and3 = construct::zoo("and", 3).unwrap();
        assert!(and3.evaluate(&v("111")).unwrap());
        assert!(or2.evaluate(&v("011")).is_err());
    }

    #[test]
    fn shift_examples() {
        let or2 = tt("tt:2:0111");
        assert_eq!(or2.shift(&v("00")).unwrap(), or2);
        assert_eq!(or2.shift(&v("11")).unwrap().to_table_string(), "1110");
        let c = v("10");
        assert_eq!(or2.shift(&c).unwrap().shift(&c).unwrap(), or2);
    }

    #[test]
    fn rotate_parity_to_dictator() {
        let par = tt("anf:2:x1+x2");
        assert_eq!(par.rotate(&Gf2Matrix::identity(2)).unwrap(), par);
        // f(Bx) = <Bx, 11> = <x, B^T 11>
        let b = Gf2Matrix::from_bitstrings(2, &["11", "01"]).unwrap();
        let bt_s = b.transpose().mul_vec(&v("11")).unwrap();
        assert_eq!(bt_s, v("10"));
        let rotated = par.rotate(&b).unwrap();
        assert_eq!(rotated, tt("anf:2:x1"));
        let inv = b.inverse().unwrap();
        assert_eq!(rotated.rotate(&inv).unwrap(), par);
    }

    #[test]
    fn restrict_or_to_diagonal() {
        let or2 = tt("tt:2:0111");
        let h = gf2::solve(&Gf2Matrix::from_bitstrings(2, &["11"]).unwrap(), &v("0")).unwrap().unwrap();
        let r = or2.restrict(&h).unwrap();
        assert_eq!(r.local().to_table_string(), "01");
        assert_eq!(r.offset(), v("00"));
    }

    #[test]
    fn restrict_full_space_is_identity() {
        let f = construct::zoo("example31", 3).unwrap();
        let r = RestrictedFunction::whole(&f);
        assert_eq!(r.local(), &f);
    }

    #[test]
    fn restrict_example_to_or() {
        let f = construct::zoo("example31", 3).unwrap();
        let h = gf2::solve(&Gf2Matrix::from_bitstrings(3, &["100"]).unwrap(), &v("0")).unwrap().unwrap();
        let r = f.restrict(&h).unwrap();
        assert_eq!(r.local(), &construct::zoo("or", 2).unwrap());
    }

    #[test]
    fn restriction_lift_round_trip() {
        let f = construct::zoo("maj", 3).unwrap();
        for h in gf2::enumerate_cosets(3).unwrap() {
            let r = f.restrict(&h).unwrap();
            for y in 0..1u32 << r.dim() {
                let x = r.lift_point(y);
                assert!(h.contains_bits(x));
                assert_eq!(r.local_point(x), Some(y));
                assert_eq!(r.local().get(y), f.get(x));
            }
        }
    }

    #[test]
    fn lift_query_matches_local_parity() {
        let f = construct::zoo("and", 4).unwrap();
        for h in gf2::enumerate_cosets(4).unwrap().step_by(7) {
            let r = f.restrict(&h).unwrap();
            for c in 0..1u32 << r.dim() {
                let (amb, flip) = r.lift_query(c);
                for y in 0..1u32 << r.dim() {
                    assert_eq!(gf2::dot_bits(r.lift_point(y), amb), gf2::dot_bits(y, c) ^ flip);
                }
            }
        }
    }

    #[test]
    fn fourier_constant() {
        let s = fourier(&BooleanFunction::constant(3, true)).unwrap();
        assert_eq!(s.coefficient(0), Dyadic::new(1, 0));
        assert_eq!(s.sparsity(), 1);
    }

    #[test]
    fn fourier_parity() {
        let s = fourier(&tt("anf:3:x1+x3")).unwrap();
        assert_eq!(s.coefficient(0).to_string(), "1/2");
        assert_eq!(s.coefficient(0b101).to_string(), "-1/2");
        assert_eq!(s.sparsity(), 2);
    }

    #[test]
    fn fourier_and2() {
        let s = fourier(&tt("tt:2:0001")).unwrap();
        let got: Vec<String> = (0..4).map(|w| s.coefficient(w).to_string()).collect();
        assert_eq!(got, vec!["1/4", "-1/4", "-1/4", "1/4"]);
        assert_eq!(s.sparsity(), 4);
    }

    #[test]
    fn fourier_matches_direct_summation() {
        for table in 0u64..256 {
            let f = BooleanFunction::from_u64(3, table);
            let s = fourier(&f).unwrap();
            for w in 0u32..8 {
                let direct: i64 = (0u32..8)
                    .map(|x| {
                        let sign = if gf2::dot_bits(x, w) { -1 } else { 1 };
                        sign * i64::from(f.get(x))
                    })
                    .sum();
                assert_eq!(s.numerators()[w as usize], direct);
            }
        }
    }

    #[test]
    fn parseval_and_inverse() {
        for table in 0u64..1 << 16 {
            let f = BooleanFunction::from_u64(4, table);
            let s = fourier(&f).unwrap();
            // sum (f^_w)^2 = 2^-n sum f(x)^2, scaled by 4^n
            let lhs: i64 = s.numerators().iter().map(|c| c * c).sum();
            assert_eq!(lhs, 16 * f.count_ones() as i64);
            if table % 97 == 0 {
                let mut twice = s.numerators().to_vec();
                walsh_hadamard(&mut twice);
                let expect: Vec<i64> = (0..16).map(|x| 16 * i64::from(f.get(x))).collect();
                assert_eq!(twice, expect);
            }
        }
    }

    #[test]
    fn parse_tt() {
        assert_eq!(tt("tt:2:0111"), construct::zoo("or", 2).unwrap());
        let err = parse_function_spec("tt:2:011").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 5, .. }), "{err:?}");
        assert!(matches!(parse_function_spec("tt:2:01a1"), Err(Error::Parse { position: 7, .. })));
        assert!(parse_function_spec("tt:0:0").is_err());
        assert!(parse_function_spec("tt:25:0").is_err());
    }

    #[test]
    fn parse_anf() {
        let f = tt("anf:3:x1+x2+x3+x2*x3");
        let expect = BooleanFunction::from_fn(3, |x| {
            let (a, b, c) = (x & 1 == 1, x & 2 == 2, x & 4 == 4);
            a ^ (b || c)
        });
        assert_eq!(f, expect);
        assert_eq!(tt("anf:2: x1 * x2 + 1 "), tt("tt:2:1110"));
        assert!(matches!(parse_function_spec("anf:2:x3"), Err(Error::Parse { position: 6, .. })));
        assert!(parse_function_spec("anf:2:x1+").is_err());
        assert!(parse_function_spec("anf:2:x1x2").is_err());
        assert!(parse_function_spec("bogus:2:x").is_err());
        assert!(parse_function_spec("tt:2").is_err());
    }

    #[test]
    fn parse_zoo() {
        assert_eq!(tt("zoo:or:2").to_table_string(), "0111");
        assert!(parse_function_spec("zoo:maj:4").is_err());
    }

    #[test]
    fn anf_degree_examples() {
        assert_eq!(construct::zoo("and", 4).unwrap().anf_degree(), 4);
        assert_eq!(construct::zoo("parity", 4).unwrap().anf_degree(), 1);
        assert_eq!(BooleanFunction::constant(3, true).anf_degree(), 0);
        assert_eq!(construct::zoo("or", 3).unwrap().anf_degree(), 3);
    }
}
