// SPDX-License-Identifier: Apache-2.0

//! Function generators: a small zoo, the random layered parity tree with a
//! logarithmic parity depth, and the `tau` lower bound for functions that are
//! linear on a coset.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::boolfn::BooleanFunction;
use crate::classical;
use crate::error::{Error, Result};
use crate::gf2::{self, Coset, Gf2Matrix, Gf2Vector, MAX_WIDTH};
use crate::parity::ParityDecisionTree;

pub const ZOO_NAMES: [&str; 6] = ["and", "or", "parity", "maj", "dictator", "example31"];

/// Largest `k` for [`sample_thm_exp`]: inputs have `2^k` bits.
pub const MAX_GAP_K: u32 = 4;
pub const MAX_TAU_ROWS: usize = 20;

pub fn zoo(name: &str, n: usize) -> Result<BooleanFunction> {
    if n == 0 || n > MAX_WIDTH {
        return Err(Error::Input(format!("arity {n} outside 1..={MAX_WIDTH}")));
    }
    let f = match name {
        "and" => BooleanFunction::from_fn(n, |x| x == gf2::mask(n)),
        "or" => BooleanFunction::from_fn(n, |x| x != 0),
        "parity" => BooleanFunction::from_fn(n, |x| x.count_ones() % 2 == 1),
        "maj" => {
            if n.is_multiple_of(2) {
                return Err(Error::Input(format!("maj needs odd arity, got {n}")));
            }
            BooleanFunction::from_fn(n, |x| x.count_ones() as usize > n / 2)
        }
        "dictator" => BooleanFunction::from_fn(n, |x| x & 1 == 1),
        "example31" => {
            if n != 3 {
                return Err(Error::Input(format!("example31 has arity 3, got {n}")));
            }
            BooleanFunction::from_fn(3, |x| (x & 1 == 1) ^ (x & 0b110 != 0))
        }
        _ => return Err(Error::Input(format!("unknown zoo function {name:?}"))),
    };
    Ok(f)
}

fn hex<S: Serializer>(v: &Gf2Vector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_hex())
}

/// A last-layer node: inputs reaching it form `coset`, and the tree outputs
/// `<x, s>` there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapLeaf {
    pub t: u32,
    pub coset: Coset,
    #[serde(serialize_with = "hex")]
    pub s: Gf2Vector,
}

/// Depth `k + 4` parity tree on `n = 2^k` bits: layers `1..=k+3` query
/// `e_1..e_{k+3}`, and the node reached with answers `t` queries a random
/// `s_t`, whose answer is the output.
#[derive(Clone, Debug, Serialize)]
pub struct GapInstance {
    pub k: u32,
    pub n: usize,
    pub seed: u64,
    pub tree: ParityDecisionTree,
    pub leaves: Vec<GapLeaf>,
    #[serde(skip)]
    pub f: BooleanFunction,
}

/// Per-leaf random vector, drawn from its own stream so that leaves do not
/// depend on each other or on generation order.
fn leaf_vector(seed: u64, t: u32, n: usize) -> Gf2Vector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(t));
    Gf2Vector::new(n, rng.gen::<u32>() & gf2::mask(n))
}

pub fn sample_thm_exp(k: u32, seed: u64) -> Result<GapInstance> {
    if k < 3 {
        return Err(Error::Domain(format!("k = {k}: need k >= 3 so that k + 3 <= 2^k")));
    }
    if k > MAX_GAP_K {
        return Err(Error::budget("construction parameter k", MAX_GAP_K as usize, k as usize));
    }
    let n = 1usize << k;
    let layers = k as usize + 3;
    let leaves: Vec<GapLeaf> = (0..1u32 << layers)
        .map(|t| {
            let rows: Vec<u32> = (0..layers).map(|i| 1 << i).collect();
            let coset = Coset::solve_bits(n, &rows, t).expect("unit rows are independent");
            GapLeaf { t, coset, s: leaf_vector(seed, t, n) }
        })
        .collect();

    fn build(layer: usize, t: u32, layers: usize, n: usize, leaves: &[GapLeaf]) -> ParityDecisionTree {
        if layer == layers {
            let s = leaves[t as usize].s;
            return ParityDecisionTree::node(s, ParityDecisionTree::Leaf(false), ParityDecisionTree::Leaf(true));
        }
        ParityDecisionTree::node(
            Gf2Vector::unit(n, layer),
            build(layer + 1, t, layers, n, leaves),
            build(layer + 1, t | 1 << layer, layers, n, leaves),
        )
    }
    let tree = build(0, 0, layers, n, &leaves);
    let low = gf2::mask(layers);
    let f = BooleanFunction::from_fn(n, |x| gf2::dot_bits(x, leaves[(x & low) as usize].s.bits()));
    Ok(GapInstance { k, n, seed, tree, leaves, f })
}

/// `min |s + v|` over `v` in the row space of `a`.
pub fn tau(a: &Gf2Matrix, s: &Gf2Vector) -> Result<u32> {
    if a.ncols() != s.width() {
        return Err(Error::Input("vector width does not match matrix".into()));
    }
    let rank = a.rank();
    if rank > MAX_TAU_ROWS {
        return Err(Error::budget("row space rank", MAX_TAU_ROWS, rank));
    }
    Ok(a.row_space().into_iter().map(|v| (v ^ s.bits()).count_ones()).min().expect("row space contains 0"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinearBound {
    pub tau: u32,
    pub c_of_f: u32,
    pub d_of_f: u32,
    pub holds: bool,
}

/// Some `s` with `f(x) = <x, s>` for every `x` in `h`, if there is one. All
/// such `s` give the same `tau` against the constraints of `h`.
pub fn linear_form_on(f: &BooleanFunction, h: &Coset) -> Result<Option<Gf2Vector>> {
    let r = f.restrict(h)?;
    let o = r.offset().bits();
    let mut rows = vec![o];
    rows.extend_from_slice(r.basis().row_bits());
    // <o + b, s> = f(o + b) and <o, s> = f(o) give <b, s> = f(o + b) + f(o)
    let rhs = rows.iter().enumerate().fold(0u32, |acc, (i, &b)| {
        let bit = if i == 0 { f.get(o) } else { f.get(o ^ b) ^ f.get(o) };
        acc | (u32::from(bit) << i)
    });
    let Some(sol) = Coset::solve_bits(f.arity(), &rows, rhs) else { return Ok(None) };
    let s = sol.offset();
    Ok(h.elements().iter().all(|&x| f.get(x) == gf2::dot_bits(x, s.bits())).then_some(s))
}

/// For `f` equal to `<x, s>` on `h`, compares `tau` of `s` against the
/// constraints of `h` with `C(f)` and `D(f)`.
pub fn check_linear_on_coset_bound(f: &BooleanFunction, h: &Coset, s: &Gf2Vector) -> Result<LinearBound> {
    let n = f.arity();
    if h.ncols() != n || s.width() != n {
        return Err(Error::Input("coset or vector width does not match arity".into()));
    }
    if let Some(x) = h.elements().into_iter().find(|&x| f.get(x) != gf2::dot_bits(x, s.bits())) {
        return Err(Error::Domain(format!("f differs from <x, s> at {}", Gf2Vector::new(n, x))));
    }
    let tau = tau(h.constraints(), s)?;
    let c_of_f = classical::certificate_profile(f)?.c;
    let d_of_f = classical::decision_depth(f)?.0;
    Ok(LinearBound { tau, c_of_f, d_of_f, holds: c_of_f >= tau && d_of_f >= tau })
}

/// Outcome of checking a [`GapInstance`] against its defining properties.
#[derive(Clone, Debug, Serialize)]
pub struct GapCheck {
    pub tree_depth: u32,
    pub agrees: bool,
    pub partition: bool,
    pub linear_on_leaves: bool,
    /// `tau` of every leaf, in leaf order.
    pub taus: Vec<u32>,
    pub max_tau: u32,
    /// `D(f)` computed exactly; only for `k = 3`.
    pub d_of_f: Option<u32>,
    pub c_of_f: Option<u32>,
    pub holds: bool,
}

impl GapInstance {
    pub fn check(&self) -> Result<GapCheck> {
        let tree_depth = self.tree.depth();
        let agrees = (0..1u32 << self.n).all(|x| self.tree.evaluate_bits(x) == self.f.get(x));
        let mut seen = vec![0u8; 1 << self.n];
        for leaf in &self.leaves {
            for x in leaf.coset.elements() {
                seen[x as usize] += 1;
            }
        }
        let partition = seen.iter().all(|&c| c == 1);
        let linear_on_leaves = self
            .leaves
            .iter()
            .all(|l| l.coset.elements().iter().all(|&x| self.f.get(x) == gf2::dot_bits(x, l.s.bits())));
        let taus = self.leaves.iter().map(|l| tau(l.coset.constraints(), &l.s)).collect::<Result<Vec<_>>>()?;
        let max_tau = taus.iter().copied().max().unwrap_or(0);
        let (d_of_f, c_of_f) = if self.k == 3 {
            (Some(classical::decision_depth(&self.f)?.0), Some(classical::certificate_profile(&self.f)?.c))
        } else {
            (None, None)
        };
        let holds = tree_depth == self.k + 4
            && agrees
            && partition
            && linear_on_leaves
            && d_of_f.is_none_or(|d| d >= max_tau)
            && c_of_f.is_none_or(|c| c >= max_tau);
        Ok(GapCheck { tree_depth, agrees, partition, linear_on_leaves, taus, max_tau, d_of_f, c_of_f, holds })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::from_bitstring(s).unwrap()
    }

    #[test]
    fn zoo_tables() {
        assert_eq!(zoo("or", 2).unwrap().to_table_string(), "0111");
        assert_eq!(zoo("and", 2).unwrap().to_table_string(), "0001");
        assert_eq!(zoo("parity", 2).unwrap().to_table_string(), "0110");
        assert_eq!(zoo("maj", 3).unwrap().to_table_string(), "00010111");
        assert_eq!(zoo("dictator", 2).unwrap().to_table_string(), "0101");
        // x1 + x2 + x3 + x2 x3
        let ex = zoo("example31", 3).unwrap();
        let anf = crate::boolfn::parse_function_spec("anf:3:x1+x2+x3+x2*x3").unwrap();
        assert_eq!(ex, anf);
        assert!(zoo("maj", 4).is_err());
        assert!(zoo("example31", 4).is_err());
        assert!(zoo("xor", 2).is_err());
        assert!(zoo("and", 0).is_err());
    }

    #[test]
    fn tau_examples() {
        let a = Gf2Matrix::from_bitstrings(2, &["11"]).unwrap();
        assert_eq!(tau(&a, &v("10")).unwrap(), 1);
        assert_eq!(tau(&a, &v("11")).unwrap(), 0);
        assert_eq!(tau(&Gf2Matrix::empty(4), &v("1101")).unwrap(), 3);
    }

    #[test]
    fn tau_brute_force() {
        let a = Gf2Matrix::from_bitstrings(5, &["11000", "01110", "10101"]).unwrap();
        for s in 0..32u32 {
            let mut best = u32::MAX;
            for coeffs in 0..8u32 {
                let v = (0..3).filter(|i| coeffs >> i & 1 == 1).fold(0, |acc, i| acc ^ a.row_bits()[i]);
                best = best.min((v ^ s).count_ones());
            }
            assert_eq!(tau(&a, &Gf2Vector::new(5, s)).unwrap(), best);
        }
    }

    #[test]
    fn global_parity_bound() {
        let s = v("1011");
        let f = BooleanFunction::from_fn(4, |x| gf2::dot_bits(x, s.bits()));
        let b = check_linear_on_coset_bound(&f, &Coset::full(4), &s).unwrap();
        assert_eq!((b.tau, b.c_of_f), (3, 3));
        assert!(b.holds);
        assert!(check_linear_on_coset_bound(&f, &Coset::full(4), &v("1000")).is_err());
    }

    #[test]
    fn zero_vector_on_coset() {
        // f vanishes on {x1 = 0}, so s = 0 fits there
        let f = zoo("dictator", 3).unwrap();
        let h = Coset::solve_bits(3, &[1], 0).unwrap();
        let b = check_linear_on_coset_bound(&f, &h, &v("000")).unwrap();
        assert_eq!(b.tau, 0);
        assert!(b.holds);
    }

    #[test]
    fn linear_forms_match_brute_force() {
        let cosets: Vec<Coset> = gf2::enumerate_cosets(3).unwrap().collect();
        for t in 0u64..256 {
            let f = BooleanFunction::from_u64(3, t);
            for h in &cosets {
                let fits = |s: u32| h.elements().iter().all(|&x| f.get(x) == gf2::dot_bits(x, s));
                let found = linear_form_on(&f, h).unwrap();
                assert_eq!(found.is_some(), (0..8).any(fits));
                if let Some(s) = found {
                    assert!(fits(s.bits()));
                    let mut taus =
                        (0..8).filter(|&s| fits(s)).map(|s| tau(h.constraints(), &Gf2Vector::new(3, s)).unwrap());
                    assert!(taus.all(|t| t == tau(h.constraints(), &s).unwrap()));
                }
            }
        }
    }

    #[test]
    fn gap_instance_shape() {
        let g = sample_thm_exp(3, 7).unwrap();
        assert_eq!(g.n, 8);
        assert_eq!(g.tree.depth(), 7);
        assert_eq!(g.leaves.len(), 64);
        assert!(g.leaves.iter().all(|l| l.coset.codim() == 6));
        let again = sample_thm_exp(3, 7).unwrap();
        assert_eq!(g.leaves, again.leaves);
        assert_eq!(g.f, again.f);
        assert_ne!(sample_thm_exp(3, 8).unwrap().f, g.f);
        assert!(sample_thm_exp(2, 0).is_err());
        assert!(sample_thm_exp(5, 0).is_err());
    }

    #[test]
    fn gap_instance_check() {
        let g = sample_thm_exp(3, 1).unwrap();
        let c = g.check().unwrap();
        assert!(c.agrees && c.partition && c.linear_on_leaves);
        assert!(c.holds, "{c:?}");
        for l in g.leaves.iter().take(4) {
            assert!(check_linear_on_coset_bound(&g.f, &l.coset, &l.s).unwrap().holds);
        }
    }

    #[test]
    fn gap_instance_k4() {
        let g = sample_thm_exp(4, 3).unwrap();
        assert_eq!(g.tree.depth(), 8);
        assert_eq!(g.leaves.len(), 128);
        let c = g.check().unwrap();
        assert!(c.holds);
        assert_eq!(c.d_of_f, None);
    }

    #[test]
    fn serializes_vectors_as_hex() {
        let g = sample_thm_exp(3, 2).unwrap();
        let json = serde_json::to_value(&g).unwrap();
        let s = json["leaves"][0]["s"].as_str().unwrap();
        assert_eq!(s, g.leaves[0].s.to_hex());
    }
}
