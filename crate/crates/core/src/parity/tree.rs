// SPDX-License-Identifier: Apache-2.0

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::{Coset, Gf2Vector};

/// A decision tree whose internal nodes query parities `<x, c>`.
///
/// Classical trees are the special case where every query is a unit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityDecisionTree {
    Leaf(bool),
    Query { query: Gf2Vector, children: Box<[ParityDecisionTree; 2]> },
}

impl ParityDecisionTree {
    pub fn node(query: Gf2Vector, if_zero: ParityDecisionTree, if_one: ParityDecisionTree) -> Self {
        ParityDecisionTree::Query { query, children: Box::new([if_zero, if_one]) }
    }

    pub fn depth(&self) -> u32 {
        match self {
            ParityDecisionTree::Leaf(_) => 0,
            ParityDecisionTree::Query { children, .. } => 1 + children[0].depth().max(children[1].depth()),
        }
    }

    pub fn evaluate_bits(&self, x: u32) -> bool {
        let mut node = self;
        loop {
            match node {
                ParityDecisionTree::Leaf(b) => return *b,
                ParityDecisionTree::Query { query, children } => {
                    node = &children[usize::from(crate::gf2::dot_bits(query.bits(), x))];
                }
            }
        }
    }

    pub fn evaluate(&self, x: &Gf2Vector) -> Result<bool> {
        if let Some(w) = self.query_width() {
            if w != x.width() {
                return Err(Error::Input(format!("input width {} does not match tree width {w}", x.width())));
            }
        }
        Ok(self.evaluate_bits(x.bits()))
    }

    /// `(query, answer)` pairs along the computation path of `x`, and the output.
    pub fn path(&self, x: u32) -> (Vec<(Gf2Vector, bool)>, bool) {
        let mut steps = Vec::new();
        let mut node = self;
        loop {
            match node {
                ParityDecisionTree::Leaf(b) => return (steps, *b),
                ParityDecisionTree::Query { query, children } => {
                    let a = crate::gf2::dot_bits(query.bits(), x);
                    steps.push((*query, a));
                    node = &children[usize::from(a)];
                }
            }
        }
    }

    /// Width of the query vectors, `None` for a bare leaf.
    pub fn query_width(&self) -> Option<usize> {
        match self {
            ParityDecisionTree::Leaf(_) => None,
            ParityDecisionTree::Query { query, .. } => Some(query.width()),
        }
    }

    /// Rewrites every query through `lift`, which returns the new query and
    /// whether the answer is complemented (children swap).
    pub fn map_queries(&self, lift: &impl Fn(u32) -> (Gf2Vector, bool)) -> ParityDecisionTree {
        match self {
            ParityDecisionTree::Leaf(b) => ParityDecisionTree::Leaf(*b),
            ParityDecisionTree::Query { query, children } => {
                let (q, flip) = lift(query.bits());
                let c0 = children[0].map_queries(lift);
                let c1 = children[1].map_queries(lift);
                if flip {
                    ParityDecisionTree::node(q, c1, c0)
                } else {
                    ParityDecisionTree::node(q, c0, c1)
                }
            }
        }
    }

    /// Leaf cosets within `domain` with their labels. Fails if some query is
    /// linearly dependent on the constraints above it, i.e. some branch is
    /// unreachable.
    pub fn leaf_cosets(&self, domain: &Coset) -> Result<Vec<(Coset, bool)>> {
        let mut out = Vec::new();
        self.collect_leaves(domain, &mut out)?;
        Ok(out)
    }

    fn collect_leaves(&self, here: &Coset, out: &mut Vec<(Coset, bool)>) -> Result<()> {
        match self {
            ParityDecisionTree::Leaf(b) => out.push((here.clone(), *b)),
            ParityDecisionTree::Query { query, children } => {
                if query.width() != here.ncols() {
                    return Err(Error::Input("query width does not match domain".into()));
                }
                for (b, child) in children.iter().enumerate() {
                    let next = here
                        .intersect(&[query.bits()], b as u32)
                        .filter(|c| c.codim() == here.codim() + 1)
                        .ok_or_else(|| Error::Domain(format!("query {query} is redundant on its path")))?;
                    child.collect_leaves(&next, out)?;
                }
            }
        }
        Ok(())
    }

    /// Checks that the tree computes `f` on `domain`: no redundant queries,
    /// leaf cosets partition the domain, and `f` equals the label on each leaf.
    pub fn validate(&self, f: &BooleanFunction, domain: &Coset) -> Result<()> {
        let leaves = self.leaf_cosets(domain)?;
        let covered: u64 = leaves.iter().map(|(c, _)| c.size()).sum();
        if covered != domain.size() {
            return Err(Error::Domain("leaf cosets do not partition the domain".into()));
        }
        for (coset, label) in &leaves {
            if let Some(x) = coset.elements().into_iter().find(|&x| f.get(x) != *label) {
                return Err(Error::Domain(format!(
                    "tree outputs {} on {} but f is {}",
                    u8::from(*label),
                    Gf2Vector::new(f.arity(), x),
                    u8::from(!*label)
                )));
            }
        }
        Ok(())
    }
}

impl Serialize for ParityDecisionTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ParityDecisionTree::Leaf(b) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("leaf", &u8::from(*b))?;
                m.end()
            }
            ParityDecisionTree::Query { query, children } => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("query", query)?;
                m.serialize_entry("0", &children[0])?;
                m.serialize_entry("1", &children[1])?;
                m.end()
            }
        }
    }
}
