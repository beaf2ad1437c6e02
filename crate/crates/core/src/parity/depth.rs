// SPDX-License-Identifier: Apache-2.0

//! Optimal parity decision tree depth.
//!
//! The recursion runs on local functions: querying `c` on `{0,1}^m` splits it
//! into the two hyperplane cosets `<y, c> = b`, each re-indexed onto
//! `{0,1}^(m-1)` by the canonical restriction. Every nonzero `c` is a distinct
//! query class on the local space, so the branching factor is `2^m - 1`.
//! Results are memoized on the local truth table.

use crate::boolfn::{BooleanFunction, RestrictedFunction};
use crate::error::{Error, Result};
use crate::gf2::{self, Coset, Gf2Vector};

use super::{ParityAnalyzer, ParityDecisionTree};

pub const MAX_DEPTH_N: usize = 8;

impl ParityAnalyzer {
    /// Local points of the two halves `<y, c> = 0` and `<y, c> = 1`, each in
    /// local-index order of the canonical restriction.
    fn split_points(&mut self, m: usize, c: u32) -> &[Vec<u32>; 2] {
        self.splits.entry((m, c)).or_insert_with(|| {
            [0, 1].map(|b| Coset::solve_bits(m, &[c], b).expect("nonzero query splits the space").elements())
        })
    }

    fn split(&mut self, g: &BooleanFunction, c: u32) -> [BooleanFunction; 2] {
        let m = g.arity();
        let halves = self.split_points(m, c);
        [0, 1].map(|b| BooleanFunction::from_fn(m - 1, |y| g.get(halves[b][y as usize])))
    }

    /// `D_xor` of a function on the whole of `{0,1}^m`.
    pub fn local_depth(&mut self, g: &BooleanFunction) -> u32 {
        if let Some(&(d, _)) = self.depth_memo.get(g) {
            return u32::from(d);
        }
        if g.is_constant() {
            self.depth_memo.insert(g.clone(), (0, 0));
            return 0;
        }
        let m = g.arity();
        // every depth-d parity tree computes a polynomial of F2-degree <= d
        let lower = g.anf_degree().max(1);
        let mut best = u32::MAX;
        let mut best_query = 0;
        for c in gf2::lex_vectors(m).skip(1) {
            let [g0, g1] = self.split(g, c);
            let d0 = self.local_depth(&g0);
            if d0 + 1 >= best {
                continue;
            }
            let d1 = self.local_depth(&g1);
            let d = 1 + d0.max(d1);
            if d < best {
                best = d;
                best_query = c;
                if best <= lower {
                    break;
                }
            }
        }
        self.depth_memo.insert(g.clone(), (best as u8, best_query));
        best
    }

    /// An optimal tree for a local function, queries in local coordinates.
    pub fn local_tree(&mut self, g: &BooleanFunction) -> ParityDecisionTree {
        let m = g.arity();
        if self.local_depth(g) == 0 {
            return ParityDecisionTree::Leaf(g.get(0));
        }
        let q = self.depth_memo[g].1;
        let children = [0u32, 1].map(|b| {
            let half = Coset::solve_bits(m, &[q], b).expect("nonzero query");
            let r = g.restrict(&half).expect("same arity");
            self.local_tree(r.local()).map_queries(&|c| {
                let (lifted, flip) = r.lift_query(c);
                (Gf2Vector::new(m, lifted), flip)
            })
        });
        let [c0, c1] = children;
        ParityDecisionTree::node(Gf2Vector::new(m, q), c0, c1)
    }

    /// `D_xor(f)` with an optimal tree whose queries are ambient vectors.
    pub fn parity_depth(&mut self, f: &RestrictedFunction) -> Result<(u32, ParityDecisionTree)> {
        let n = f.ambient_arity();
        if n > MAX_DEPTH_N {
            return Err(Error::budget("parity depth arity", MAX_DEPTH_N, n));
        }
        let d = self.local_depth(f.local());
        let tree = self.local_tree(f.local()).map_queries(&|c| {
            let (lifted, flip) = f.lift_query(c);
            (Gf2Vector::new(n, lifted), flip)
        });
        Ok((d, tree))
    }
}

/// `D_xor` with a witness tree, using a fresh memo.
pub fn parity_depth(f: &RestrictedFunction) -> Result<(u32, ParityDecisionTree)> {
    ParityAnalyzer::new().parity_depth(f)
}
