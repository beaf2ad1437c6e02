// SPDX-License-Identifier: Apache-2.0

//! Two-party protocols for XOR functions `F(x, y) = f(x + y)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::boolfn::{fourier, BooleanFunction, RestrictedFunction};
use crate::certify::{essential_certificate_set, EssentialSet};
use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Vector};
use crate::parity::{self, ParityAnalyzer, ParityDecisionTree};

pub const MAX_RANK_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorFunction {
    base: BooleanFunction,
}

impl XorFunction {
    pub fn new(base: BooleanFunction) -> Self {
        XorFunction { base }
    }

    pub fn base(&self) -> &BooleanFunction {
        &self.base
    }

    pub fn evaluate(&self, x: &Gf2Vector, y: &Gf2Vector) -> Result<bool> {
        if x.width() != self.base.arity() || y.width() != self.base.arity() {
            return Err(Error::Input("input width does not match arity".into()));
        }
        Ok(self.base.get(x.bits() ^ y.bits()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Party {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub sender: Party,
    pub payload: Vec<bool>,
}

impl Serialize for Message {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let bits: String = self.payload.iter().map(|&b| if b { '1' } else { '0' }).collect();
        let mut st = s.serialize_struct("Message", 2)?;
        st.serialize_field("sender", &self.sender)?;
        st.serialize_field("payload", &bits)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProtocolTranscript {
    pub messages: Vec<Message>,
    pub total_bits: u32,
    pub output: bool,
    /// 1-based index of the element used by a nondeterministic run.
    pub nondeterministic_choice: Option<usize>,
}

impl ProtocolTranscript {
    fn new(messages: Vec<Message>, output: bool, choice: Option<usize>) -> Self {
        let total_bits = messages.iter().map(|m| m.payload.len() as u32).sum();
        ProtocolTranscript { messages, total_bits, output, nondeterministic_choice: choice }
    }
}

/// Runs the tree on `x + y`: per query `c`, Alice sends `<c, x>` and Bob sends
/// `<c, y>`, and both follow the XOR of the two bits.
pub fn simulate_det_protocol(tree: &ParityDecisionTree, x: &Gf2Vector, y: &Gf2Vector) -> Result<ProtocolTranscript> {
    if x.width() != y.width() || tree.query_width().is_some_and(|w| w != x.width()) {
        return Err(Error::Input("input widths do not match the tree".into()));
    }
    let mut messages = Vec::new();
    let mut node = tree;
    loop {
        match node {
            ParityDecisionTree::Leaf(v) => return Ok(ProtocolTranscript::new(messages, *v, None)),
            ParityDecisionTree::Query { query, children } => {
                let a = x.dot(query);
                let b = y.dot(query);
                messages.push(Message { sender: Party::A, payload: vec![a] });
                messages.push(Message { sender: Party::B, payload: vec![b] });
                node = &children[usize::from(a ^ b)];
            }
        }
    }
}

fn bits_msb_first(value: u32, width: u32) -> Vec<bool> {
    (0..width).rev().map(|i| (value >> i) & 1 == 1).collect()
}

/// The certificate protocol: Alice names element `i` of the essential set and
/// sends `C_i x`; Bob accepts iff `C_i x + C_i y = r_i`.
///
/// With `choice = None` every element is tried in order and the first
/// accepting run is returned; if none accepts, the rejecting run for element 1
/// is returned with no choice recorded.
pub fn nondet_protocol(
    f: &BooleanFunction,
    ess: &EssentialSet,
    x: &Gf2Vector,
    y: &Gf2Vector,
    choice: Option<usize>,
) -> Result<ProtocolTranscript> {
    let n = f.arity();
    if x.width() != n || y.width() != n || ess.arity != n {
        return Err(Error::Input("input widths do not match the function".into()));
    }
    let k = ess.len();
    let run = |i: usize| {
        let cert = &ess.certificates[i - 1];
        let cx = cert.constraints().apply_bits(x.bits());
        let cy = cert.constraints().apply_bits(y.bits());
        let messages = vec![
            Message { sender: Party::A, payload: bits_msb_first(i as u32, ess.index_bits()) },
            Message { sender: Party::A, payload: (0..cert.codim()).map(|j| (cx >> j) & 1 == 1).collect() },
        ];
        let accept = cx ^ cy == cert.rhs().bits();
        ProtocolTranscript::new(messages, accept, Some(i))
    };
    match choice {
        Some(i) if i == 0 || i > k => Err(Error::Input(format!("choice {i} outside 1..={k}"))),
        Some(i) => Ok(run(i)),
        None => Ok((1..=k)
            .map(run)
            .find(|t| t.output)
            .unwrap_or_else(|| ProtocolTranscript { nondeterministic_choice: None, ..run(1) })),
    }
}

/// Rank over the rationals of `[f(x + y)]_{x,y}`, by fraction-free
/// elimination on exact integers.
pub fn xor_matrix_rank(f: &BooleanFunction) -> Result<usize> {
    let n = f.arity();
    if n > MAX_RANK_N {
        return Err(Error::budget("communication matrix arity", MAX_RANK_N, n));
    }
    let size = 1usize << n;
    let mut m: Vec<Vec<BigInt>> =
        (0..size).map(|x| (0..size).map(|y| BigInt::from(u8::from(f.get((x ^ y) as u32)))).collect()).collect();
    Ok(bareiss_rank(&mut m))
}

pub(crate) fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            for j in col + 1..cols {
                let v = &row[j] * &pivot_row[col] - &row[col] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Measured quantities of `f` next to each other; no claim is made about how
/// they relate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub d_xor: u32,
    pub c_xor: u32,
    pub c1_xor: Option<u32>,
    pub sparsity: usize,
    pub log2_sparsity: f64,
    pub rank: usize,
    pub essential_set_size: Option<usize>,
    pub nondet_cost_bound: Option<u32>,
}

pub fn conjecture_report(f: &BooleanFunction) -> Result<ConjectureReport> {
    conjecture_report_with(&mut ParityAnalyzer::new(), f)
}

pub fn conjecture_report_with(an: &mut ParityAnalyzer, f: &BooleanFunction) -> Result<ConjectureReport> {
    let whole = RestrictedFunction::whole(f);
    let rank = xor_matrix_rank(f)?;
    let (d_xor, _) = an.parity_depth(&whole)?;
    let profile = parity::parity_certificate_profile(&whole)?;
    let sparsity = fourier(f)?.sparsity();
    let ess = if f.count_ones() > 0 { Some(essential_certificate_set(f)?) } else { None };
    Ok(ConjectureReport {
        d_xor,
        c_xor: profile.c,
        c1_xor: profile.c1,
        sparsity,
        log2_sparsity: (sparsity.max(1) as f64).log2(),
        rank,
        essential_set_size: ess.as_ref().map(EssentialSet::len),
        nondet_cost_bound: ess.as_ref().map(EssentialSet::protocol_cost),
    })
}

/// Optimal tree for `f` on the whole space, for protocol simulation.
pub fn optimal_tree(f: &BooleanFunction) -> Result<ParityDecisionTree> {
    Ok(parity::parity_depth(&RestrictedFunction::whole(f))?.1)
}

/// Inputs `x` in lexicographic order, for sweeps.
pub fn inputs(n: usize) -> impl Iterator<Item = Gf2Vector> {
    gf2::lex_vectors(n).map(move |b| Gf2Vector::new(n, b))
}
