// SPDX-License-Identifier: Apache-2.0

//! Classical decision tree depth, certificate complexity and block
//! sensitivity, plus their minima over invertible linear changes of basis.
//!
//! Depth and certificates share a table over all `3^n` subcubes. A subcube is
//! addressed by its ternary code `sum_i t_i 3^i` where `t_i` is 0 or 1 for a
//! fixed coordinate and 2 for a free one.

use serde::{Serialize, Serializer};

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vector};
use crate::measure::{Measured, Mode, Semantics};
use crate::parity::ParityDecisionTree;

pub const MAX_DEPTH_N: usize = 10;
pub const MAX_CERTIFICATE_N: usize = 12;
pub const MAX_BS_N: usize = 8;
/// Largest arity for exact symmetrized measures by default.
pub const MAX_SYMMETRIZED_N: usize = 4;

const MIXED: u8 = 2;

/// A set of fixed coordinates that forces the function's value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCertificate {
    /// 0-based coordinates, ascending.
    pub indices: Vec<usize>,
    pub values: Vec<bool>,
    pub arity: usize,
}

impl ClassicalCertificate {
    pub fn size(&self) -> usize {
        self.indices.len()
    }

    /// Pattern over `{0,1,*}` listing `x_1` first.
    pub fn pattern(&self) -> String {
        let mut p = vec!['*'; self.arity];
        for (&i, &v) in self.indices.iter().zip(&self.values) {
            p[i] = if v { '1' } else { '0' };
        }
        p.into_iter().collect()
    }
}

impl Serialize for ClassicalCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.pattern())
    }
}

/// Disjoint sensitive blocks at one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    /// Each block as a coordinate mask.
    pub blocks: Vec<u32>,
    pub arity: usize,
}

impl Serialize for BlockFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.blocks.iter().map(|&b| Gf2Vector::new(self.arity, b).to_bitstring()))
    }
}

/// Worst-case certificate sizes. `c0`/`c1` are absent when the function
/// never takes that value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateProfile {
    pub c0: Option<u32>,
    pub c1: Option<u32>,
    pub c: u32,
}

impl CertificateProfile {
    pub(crate) fn from_pointwise(f: &BooleanFunction, sizes: impl Fn(u32) -> u32) -> Self {
        let mut c0 = None;
        let mut c1 = None;
        for x in 0..1u32 << f.arity() {
            let slot = if f.get(x) { &mut c1 } else { &mut c0 };
            let s = sizes(x);
            *slot = Some(slot.map_or(s, |v: u32| v.max(s)));
        }
        CertificateProfile { c0, c1, c: c0.unwrap_or(0).max(c1.unwrap_or(0)) }
    }
}

/// Constancy and optimal depth of every subcube of one function.
pub struct SubcubeTable {
    n: usize,
    pow3: Vec<usize>,
    status: Vec<u8>,
    depth: Vec<u8>,
    f: BooleanFunction,
}

impl SubcubeTable {
    pub fn new(f: &BooleanFunction) -> Result<Self> {
        let n = f.arity();
        if n > MAX_CERTIFICATE_N {
            return Err(Error::budget("subcube table arity", MAX_CERTIFICATE_N, n));
        }
        let pow3: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
        let total = pow3[n];
        let mut status = vec![0u8; total];
        let mut depth = vec![0u8; total];
        let mut digits = vec![0u8; n];
        for code in 0..total {
            match digits.iter().position(|&d| d == 2) {
                None => {
                    let x = digits.iter().enumerate().fold(0u32, |a, (i, &d)| a | (u32::from(d) << i));
                    status[code] = u8::from(f.get(x));
                }
                Some(i) => {
                    let c0 = code - 2 * pow3[i];
                    let (a, b) = (status[c0], status[c0 + pow3[i]]);
                    status[code] = if a == b && a != MIXED { a } else { MIXED };
                    if status[code] == MIXED {
                        let best = (0..n)
                            .filter(|&j| digits[j] == 2)
                            .map(|j| {
                                let base = code - 2 * pow3[j];
                                depth[base].max(depth[base + pow3[j]])
                            })
                            .min()
                            .expect("mixed subcube has a free coordinate");
                        depth[code] = best + 1;
                    }
                }
            }
            // ternary increment
            for d in digits.iter_mut() {
                if *d < 2 {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
        }
        Ok(SubcubeTable { n, pow3, status, depth, f: f.clone() })
    }

    fn full_code(&self) -> usize {
        self.pow3[self.n] - 1
    }

    /// Optimal depth; only meaningful up to [`MAX_DEPTH_N`].
    pub fn depth(&self) -> u32 {
        u32::from(self.depth[self.full_code()])
    }

    /// An optimal tree, branching on the lowest-index optimal coordinate.
    pub fn tree(&self) -> ParityDecisionTree {
        self.tree_at(self.full_code())
    }

    fn tree_at(&self, code: usize) -> ParityDecisionTree {
        if self.status[code] != MIXED {
            return ParityDecisionTree::Leaf(self.status[code] == 1);
        }
        let target = self.depth[code] - 1;
        let i = (0..self.n)
            .find(|&i| {
                (code / self.pow3[i]) % 3 == 2 && {
                    let base = code - 2 * self.pow3[i];
                    self.depth[base].max(self.depth[base + self.pow3[i]]) == target
                }
            })
            .expect("optimal coordinate exists");
        let base = code - 2 * self.pow3[i];
        ParityDecisionTree::node(Gf2Vector::unit(self.n, i), self.tree_at(base), self.tree_at(base + self.pow3[i]))
    }

    /// Smallest certificate at `x`; subsets by size, then lexicographically.
    pub fn certificate(&self, x: u32) -> ClassicalCertificate {
        let n = self.n;
        for k in 0..=n {
            let mut found = None;
            for_each_combination(n, k, |subset| {
                let code = (0..n)
                    .map(|i| {
                        let t = if subset & (1 << i) != 0 { ((x >> i) & 1) as usize } else { 2 };
                        t * self.pow3[i]
                    })
                    .sum::<usize>();
                if self.status[code] != MIXED {
                    found = Some(subset);
                    true
                } else {
                    false
                }
            });
            if let Some(s) = found {
                let indices: Vec<usize> = (0..n).filter(|i| s & (1 << i) != 0).collect();
                let values = indices.iter().map(|&i| (x >> i) & 1 == 1).collect();
                return ClassicalCertificate { indices, values, arity: n };
            }
        }
        unreachable!("the full assignment is always a certificate")
    }

    pub fn profile(&self) -> CertificateProfile {
        CertificateProfile::from_pointwise(&self.f, |x| self.certificate(x).size() as u32)
    }
}

/// Calls `visit` on each `k`-subset of `0..n` (as a mask) in lexicographic
/// order of sorted index lists; stops early when `visit` returns true.
pub(crate) fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(u32) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u32, |a, &i| a | (1 << i));
        if visit(mask) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact deterministic decision tree depth with one optimal tree.
pub fn decision_depth(f: &BooleanFunction) -> Result<(u32, ParityDecisionTree)> {
    if f.arity() > MAX_DEPTH_N {
        return Err(Error::budget("decision depth arity", MAX_DEPTH_N, f.arity()));
    }
    let t = SubcubeTable::new(f)?;
    Ok((t.depth(), t.tree()))
}

pub fn certificate_complexity(f: &BooleanFunction, x: &Gf2Vector) -> Result<(u32, ClassicalCertificate)> {
    if x.width() != f.arity() {
        return Err(Error::Input("input width does not match arity".into()));
    }
    let cert = SubcubeTable::new(f)?.certificate(x.bits());
    Ok((cert.size() as u32, cert))
}

pub fn certificate_profile(f: &BooleanFunction) -> Result<CertificateProfile> {
    Ok(SubcubeTable::new(f)?.profile())
}

/// Maximum number of pairwise-disjoint nonempty masks among those with
/// `sensitive[mask]`, over `m` coordinates. Returns the count and the blocks.
pub(crate) fn max_disjoint_blocks(m: usize, sensitive: &[bool]) -> (u32, Vec<u32>) {
    let full = (1usize << m) - 1;
    let mut best = vec![0u8; full + 1];
    let mut choice = vec![0u32; full + 1];
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut b = best[rest];
        let mut pick = 0u32;
        let mut s = rest;
        loop {
            let sub = s | low;
            if sensitive[sub] && best[mask ^ sub] + 1 > b {
                b = best[mask ^ sub] + 1;
                pick = sub as u32;
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        best[mask] = b;
        choice[mask] = pick;
    }
    let mut blocks = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let c = choice[mask] as usize;
        if c == 0 {
            mask &= mask - 1;
        } else {
            blocks.push(c as u32);
            mask ^= c;
        }
    }
    blocks.sort_unstable();
    (u32::from(best[full]), blocks)
}

/// Count-only variant of [`max_disjoint_blocks`].
pub(crate) fn max_disjoint_count(m: usize, sensitive: &[bool]) -> u32 {
    let full = (1usize << m) - 1;
    let mut best = [0u8; 1 << MAX_BS_N];
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut b = best[rest];
        let mut s = rest;
        loop {
            let sub = s | low;
            if sensitive[sub] {
                b = b.max(best[mask ^ sub] + 1);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        best[mask] = b;
    }
    u32::from(best[full])
}

pub fn block_sensitivity(f: &BooleanFunction, x: &Gf2Vector) -> Result<(u32, BlockFamily)> {
    let n = f.arity();
    if x.width() != n {
        return Err(Error::Input("input width does not match arity".into()));
    }
    if n > MAX_BS_N {
        return Err(Error::budget("block sensitivity arity", MAX_BS_N, n));
    }
    let x = x.bits();
    let fx = f.get(x);
    let sensitive: Vec<bool> = (0..1u32 << n).map(|b| b != 0 && f.get(x ^ b) != fx).collect();
    let (k, blocks) = max_disjoint_blocks(n, &sensitive);
    Ok((k, BlockFamily { blocks, arity: n }))
}

/// `bs(f)` with a maximizing input.
pub fn block_sensitivity_max(f: &BooleanFunction) -> Result<(u32, Gf2Vector)> {
    let n = f.arity();
    if n > MAX_BS_N {
        return Err(Error::budget("block sensitivity arity", MAX_BS_N, n));
    }
    let mut best = (0, Gf2Vector::zero(n));
    let mut sensitive = vec![false; 1 << n];
    for x in 0..1u32 << n {
        let fx = f.get(x);
        for (b, s) in sensitive.iter_mut().enumerate().skip(1) {
            *s = f.get(x ^ b as u32) != fx;
        }
        let k = max_disjoint_count(n, &sensitive);
        if k > best.0 {
            best = (k, Gf2Vector::new(n, x));
        }
    }
    Ok(best)
}

/// Classical measure selector for [`symmetrized`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalMeasure {
    Depth,
    Certificate,
    BlockSensitivity,
}

impl ClassicalMeasure {
    pub fn evaluate(self, f: &BooleanFunction) -> Result<u32> {
        match self {
            ClassicalMeasure::Depth => Ok(decision_depth(f)?.0),
            ClassicalMeasure::Certificate => Ok(certificate_profile(f)?.c),
            ClassicalMeasure::BlockSensitivity => Ok(block_sensitivity_max(f)?.0),
        }
    }
}

/// `min_B measure(f_B)` over invertible `B`, witness = a minimizing `B`.
///
/// Exact up to `max_exact_n` (at most [`gf2::MAX_GL_N`]); beyond it only in
/// [`Mode::Sampled`], where the minimum over samples is an upper bound.
pub fn symmetrized(
    measure: ClassicalMeasure,
    f: &BooleanFunction,
    mode: Mode,
    max_exact_n: usize,
) -> Result<Measured<Gf2Matrix>> {
    let n = f.arity();
    let exact_cap = max_exact_n.min(gf2::MAX_GL_N);
    let mut best: Option<(u32, Gf2Matrix)> = None;
    let mut consider = |b: Gf2Matrix| -> Result<bool> {
        let v = measure.evaluate(&f.rotate(&b)?)?;
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, b));
        }
        // a non-constant function has every measure >= 1
        Ok(best.as_ref().is_some_and(|(bv, _)| *bv == u32::from(!f.is_constant())))
    };
    let semantics = if n <= exact_cap {
        for b in gf2::enumerate_gl(n)? {
            if consider(b)? {
                break;
            }
        }
        Semantics::Exact
    } else {
        let Some(mut rng) = mode.rng(0) else {
            return Err(Error::budget("exact symmetrized measure arity", exact_cap, n));
        };
        let Mode::Sampled { samples, .. } = mode else { unreachable!() };
        let candidates =
            std::iter::once(Gf2Matrix::identity(n)).chain((0..samples).map(|_| gf2::random_invertible(n, &mut rng)));
        for b in candidates {
            if consider(b)? {
                break;
            }
        }
        Semantics::UpperBound
    };
    let (value, witness) = best.expect("GL(n,2) is nonempty");
    // reaching the trivial lower bound is exact under sampling too
    let semantics = if value == u32::from(!f.is_constant()) { Semantics::Exact } else { semantics };
    Ok(Measured { value, semantics, witness })
}
