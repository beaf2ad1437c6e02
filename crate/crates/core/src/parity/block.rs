// SPDX-License-Identifier: Apache-2.0

//! Weak parity block sensitivity and parity block sensitivity.
//!
//! `bs(f_B, B^-1 x)` only depends on the set of columns of `B`: flipping
//! coordinate block `S` of `B^-1 x` moves `x` by the sum of the columns in `S`.
//! The minimum over GL(m, 2) is therefore taken over unordered bases, and for
//! a fixed `x` only the sensitive set `{v != 0 : f(x + v) != f(x)}` matters,
//! which is what the memo is keyed on.

use std::sync::OnceLock;

use crate::boolfn::{BooleanFunction, RestrictedFunction};
use crate::classical::max_disjoint_count;
use crate::error::{Error, Result};
use crate::gf2::{self, Coset, Gf2Matrix, Gf2Vector};
use crate::measure::{Measured, Mode, Semantics};

use super::ParityAnalyzer;

/// Largest local dimension with exact weak parity block sensitivity.
pub const MAX_WBS_EXACT_M: usize = 4;
/// Largest local dimension accepted at all (sampled only).
pub const MAX_WBS_SAMPLED_M: usize = 5;
/// Largest arity with exact parity block sensitivity.
pub const MAX_BS_EXACT_N: usize = 4;
pub const MAX_BS_SAMPLED_N: usize = 5;

struct Basis {
    vectors: Vec<u32>,
    /// `sums[s]` = sum of the vectors selected by mask `s`
    sums: Vec<u32>,
}

impl Basis {
    fn new(vectors: Vec<u32>) -> Self {
        let m = vectors.len();
        let mut sums = vec![0u32; 1 << m];
        for s in 1usize..1 << m {
            sums[s] = sums[s & (s - 1)] ^ vectors[s.trailing_zeros() as usize];
        }
        Basis { vectors, sums }
    }

    fn packing(&self, sens: u64) -> u32 {
        let m = self.vectors.len();
        let sensitive: Vec<bool> = self.sums.iter().map(|&v| (sens >> v) & 1 == 1).collect();
        max_disjoint_count(m, &sensitive)
    }
}

/// Unordered bases of `{0,1}^m` (rows of GL(m,2) matrices with ascending rows).
fn bases(m: usize) -> &'static [Basis] {
    static TABLES: OnceLock<Vec<Vec<Basis>>> = OnceLock::new();
    &TABLES.get_or_init(|| {
        (0..=MAX_WBS_EXACT_M)
            .map(|m| {
                gf2::enumerate_gl(m)
                    .expect("within GL budget")
                    .map(|a| a.row_bits().to_vec())
                    .filter(|rows| rows.windows(2).all(|w| w[0] < w[1]))
                    .map(Basis::new)
                    .collect()
            })
            .collect()
    })[m]
}

fn sensitive_set(g: &BooleanFunction, y: u32) -> u64 {
    let fy = g.get(y);
    (1u32..1 << g.arity()).filter(|&v| g.get(y ^ v) != fy).fold(0u64, |a, v| a | (1 << v))
}

/// Witness produced by [`ParityAnalyzer::local_wbs_point`]: basis vectors of
/// the local space.
type LocalBasis = Vec<u32>;

impl ParityAnalyzer {
    /// `wbs_xor(g, y)` for a local function.
    pub(crate) fn local_wbs_point(&mut self, g: &BooleanFunction, y: u32, mode: Mode) -> Result<Measured<LocalBasis>> {
        let m = g.arity();
        let sens = sensitive_set(g, y);
        let identity: Vec<u32> = (0..m).map(|i| 1 << i).collect();
        if sens == 0 {
            return Ok(Measured::exact(0, identity));
        }
        if m <= MAX_WBS_EXACT_M {
            let (value, idx) = *self.wbs_memo.entry((m as u8, sens)).or_insert_with(|| {
                let mut best = (u32::MAX, 0);
                for (i, b) in bases(m).iter().enumerate() {
                    let p = b.packing(sens);
                    if p < best.0 {
                        best = (p, i);
                        if p == 1 {
                            break;
                        }
                    }
                }
                best
            });
            return Ok(Measured::exact(value, bases(m)[idx].vectors.clone()));
        }
        if m > MAX_WBS_SAMPLED_M {
            return Err(Error::budget("weak parity block sensitivity dimension", MAX_WBS_SAMPLED_M, m));
        }
        let Mode::Sampled { samples, .. } = mode else {
            return Err(Error::budget("exact weak parity block sensitivity dimension", MAX_WBS_EXACT_M, m));
        };
        let mut rng = mode.rng(sens).expect("sampled mode");
        let mut best = (Basis::new(identity).packing(sens), (0..m).map(|i| 1u32 << i).collect());
        for _ in 0..samples {
            if best.0 == 1 {
                break;
            }
            let rows = gf2::random_invertible(m, &mut rng).row_bits().to_vec();
            let p = Basis::new(rows.clone()).packing(sens);
            if p < best.0 {
                best = (p, rows);
            }
        }
        let semantics = if best.0 == 1 { Semantics::Exact } else { Semantics::UpperBound };
        Ok(Measured { value: best.0, semantics, witness: best.1 })
    }

    /// `wbs_xor(g) = max_y wbs_xor(g, y)` with a maximizing point.
    pub(crate) fn local_wbs(&mut self, g: &BooleanFunction, mode: Mode) -> Result<Measured<(u32, LocalBasis)>> {
        if g.arity() <= MAX_WBS_EXACT_M {
            if let Some((v, y)) = self.wbs_fn_memo.get(g).copied() {
                let w = self.local_wbs_point(g, y, mode)?;
                return Ok(Measured::exact(v, (y, w.witness)));
            }
        }
        let mut best: Option<Measured<(u32, LocalBasis)>> = None;
        let mut semantics = Semantics::Exact;
        for y in 0..1u32 << g.arity() {
            let w = self.local_wbs_point(g, y, mode)?;
            semantics = semantics.max_of(w.semantics);
            if best.as_ref().is_none_or(|b| w.value > b.value) {
                best = Some(Measured { value: w.value, semantics: w.semantics, witness: (y, w.witness) });
            }
        }
        let mut best = best.expect("nonempty domain");
        best.semantics = semantics;
        if best.is_exact() {
            self.wbs_fn_memo.insert(g.clone(), (best.value, best.witness.0));
        }
        Ok(best)
    }

    /// `wbs_xor(f, x)` with a minimizing basis (rows = ambient basis vectors,
    /// i.e. the columns of `B`).
    pub fn weak_parity_bs(&mut self, f: &RestrictedFunction, x: &Gf2Vector, mode: Mode) -> Result<Measured<Gf2Matrix>> {
        let y = f.local_point(x.bits()).ok_or_else(|| Error::Domain(format!("{x} is not in the domain coset")))?;
        let w = self.local_wbs_point(f.local(), y, mode)?;
        let rows = w.witness.iter().map(|&u| f.lift_direction(u)).collect();
        Ok(Measured { value: w.value, semantics: w.semantics, witness: Gf2Matrix::from_bits(f.ambient_arity(), rows) })
    }

    /// `wbs_xor(f)` with a maximizing input and its minimizing basis.
    pub fn weak_parity_bs_max(
        &mut self,
        f: &RestrictedFunction,
        mode: Mode,
    ) -> Result<Measured<(Gf2Vector, Gf2Matrix)>> {
        let w = self.local_wbs(f.local(), mode)?;
        let (y, basis) = w.witness;
        let n = f.ambient_arity();
        let x = Gf2Vector::new(n, f.lift_point(y));
        let rows = basis.iter().map(|&u| f.lift_direction(u)).collect();
        Ok(Measured { value: w.value, semantics: w.semantics, witness: (x, Gf2Matrix::from_bits(n, rows)) })
    }

    /// `bs_xor(f) = max_H wbs_xor(f|_H)` over all cosets, with a maximizing coset.
    ///
    /// Exact for arity <= 4. Arity 5 needs [`Mode::Sampled`] and yields an
    /// estimate with no bound guarantee.
    pub fn parity_bs(&mut self, f: &BooleanFunction, mode: Mode) -> Result<Measured<Coset>> {
        let n = f.arity();
        if n > MAX_BS_SAMPLED_N || (n > MAX_BS_EXACT_N && mode == Mode::Exact) {
            return Err(Error::budget("parity block sensitivity arity", MAX_BS_EXACT_N, n));
        }
        let mut best: Option<(u32, Coset)> = None;
        let mut exact = true;
        for h in gf2::enumerate_cosets(n)? {
            let r = f.restrict(&h)?;
            let w = self.local_wbs(r.local(), mode)?;
            exact &= w.is_exact();
            if best.as_ref().is_none_or(|(v, _)| w.value > *v) {
                best = Some((w.value, h));
            }
        }
        let (value, coset) = best.expect("at least one coset");
        let semantics = if exact { Semantics::Exact } else { Semantics::Estimate };
        Ok(Measured { value, semantics, witness: coset })
    }
}

pub fn weak_parity_bs(f: &RestrictedFunction, x: &Gf2Vector, mode: Mode) -> Result<Measured<Gf2Matrix>> {
    ParityAnalyzer::new().weak_parity_bs(f, x, mode)
}

pub fn weak_parity_bs_max(f: &RestrictedFunction, mode: Mode) -> Result<Measured<(Gf2Vector, Gf2Matrix)>> {
    ParityAnalyzer::new().weak_parity_bs_max(f, mode)
}

pub fn parity_bs(f: &BooleanFunction, mode: Mode) -> Result<Measured<Coset>> {
    ParityAnalyzer::new().parity_bs(f, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::block_sensitivity;
    use crate::construct::zoo;

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::from_bitstring(s).unwrap()
    }

    /// The definition verbatim: min over every B in GL(n,2) of bs(f_B, B^-1 x).
    fn oracle(f: &BooleanFunction, x: u32) -> u32 {
        let n = f.arity();
        gf2::enumerate_gl(n)
            .unwrap()
            .map(|b| {
                let fb = f.rotate(&b).unwrap();
                let y = b.inverse().unwrap().apply_bits(x);
                block_sensitivity(&fb, &Gf2Vector::new(n, y)).unwrap().0
            })
            .min()
            .unwrap()
    }

    #[test]
    fn basis_counts() {
        assert_eq!(bases(2).len(), 3);
        assert_eq!(bases(3).len(), 28);
        assert_eq!(bases(4).len(), 840);
    }

    #[test]
    fn matches_definition_exhaustive_n3() {
        let mut an = ParityAnalyzer::new();
        for t in 0u64..256 {
            let f = BooleanFunction::from_u64(3, t);
            let r = RestrictedFunction::whole(&f);
            for x in 0..8u32 {
                let w = an.weak_parity_bs(&r, &Gf2Vector::new(3, x), Mode::Exact).unwrap();
                assert_eq!(w.value, oracle(&f, x), "{f:?} at {x}");
                // the witness basis achieves the value
                let b = w.witness.transpose();
                let fb = f.rotate(&b).unwrap();
                let y = b.inverse().unwrap().apply_bits(x);
                assert_eq!(block_sensitivity(&fb, &Gf2Vector::new(3, y)).unwrap().0, w.value);
            }
        }
    }

    #[test]
    fn example_function() {
        let f = zoo("example31", 3).unwrap();
        let r = RestrictedFunction::whole(&f);
        let mut an = ParityAnalyzer::new();
        // the basis {010, 001, 111} leaves at most one sensitive block at 011
        let b = Gf2Matrix::from_bitstrings(3, &["010", "001", "111"]).unwrap().transpose();
        let fb = f.rotate(&b).unwrap();
        let y = b.inverse().unwrap().apply_bits(v("011").bits());
        assert!(block_sensitivity(&fb, &Gf2Vector::new(3, y)).unwrap().0 <= 1);
        assert!(an.weak_parity_bs(&r, &v("011"), Mode::Exact).unwrap().value <= 1);
        assert_eq!(an.weak_parity_bs_max(&r, Mode::Exact).unwrap().value, 1);
        let bs = an.parity_bs(&f, Mode::Exact).unwrap();
        assert!(bs.value >= 2);
    }

    #[test]
    fn and_family() {
        let mut an = ParityAnalyzer::new();
        for m in 1..=4 {
            let f = zoo("and", m).unwrap();
            let w = an.weak_parity_bs_max(&RestrictedFunction::whole(&f), Mode::Exact).unwrap();
            assert_eq!(w.value, m as u32);
            assert_eq!(an.parity_bs(&f, Mode::Exact).unwrap().value, m as u32);
        }
    }

    #[test]
    fn constant_is_zero() {
        let c = BooleanFunction::constant(3, true);
        assert_eq!(parity_bs(&c, Mode::Exact).unwrap().value, 0);
    }

    #[test]
    fn budgets() {
        let f = zoo("and", 5).unwrap();
        assert!(parity_bs(&f, Mode::Exact).is_err());
        assert!(weak_parity_bs_max(&RestrictedFunction::whole(&f), Mode::Exact).is_err());
        let s = weak_parity_bs_max(&RestrictedFunction::whole(&f), Mode::Sampled { samples: 200, seed: 1 }).unwrap();
        // sampled minimum can only overshoot
        assert!(s.value >= 5 || !s.is_exact());
        assert!(parity_bs(&zoo("and", 6).unwrap(), Mode::Sampled { samples: 1, seed: 1 }).is_err());
    }

    #[test]
    fn sampled_parity_bs_is_estimate() {
        let f = zoo("maj", 5).unwrap();
        let m = parity_bs(&f, Mode::Sampled { samples: 20, seed: 9 }).unwrap();
        assert!(m.value >= 1);
        assert!(matches!(m.semantics, Semantics::Estimate | Semantics::Exact));
    }
}
