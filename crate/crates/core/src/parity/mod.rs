// SPDX-License-Identifier: Apache-2.0

//! Parity complexity measures: certificates, decision tree depth and block
//! sensitivity, all on functions restricted to cosets.
//!
//! Every measure here is invariant under shifts and invertible linear maps,
//! so each is computed on the local function of a restriction.

mod block;
mod certificate;
mod depth;
mod tree;

use std::collections::HashMap;

use crate::boolfn::BooleanFunction;

pub use block::{
    parity_bs, weak_parity_bs, weak_parity_bs_max, MAX_BS_EXACT_N, MAX_BS_SAMPLED_N, MAX_WBS_EXACT_M, MAX_WBS_SAMPLED_M,
};
pub(crate) use certificate::{local_certificates, smallest_constant_coset};
pub use certificate::{parity_certificate, parity_certificate_profile, ParityCertificate, MAX_CERTIFICATE_N};
pub use depth::{parity_depth, MAX_DEPTH_N};
pub use tree::ParityDecisionTree;

/// Memo tables for repeated parity computations.
///
/// Results are keyed on local truth tables, so one analyzer can be reused
/// across many functions. Not shared between threads; give each worker its
/// own. Answers do not depend on what the memo already holds.
#[derive(Default)]
pub struct ParityAnalyzer {
    depth_memo: HashMap<BooleanFunction, (u8, u32)>,
    splits: HashMap<(usize, u32), [Vec<u32>; 2]>,
    wbs_memo: HashMap<(u8, u64), (u32, usize)>,
    wbs_fn_memo: HashMap<BooleanFunction, (u32, u32)>,
}

impl ParityAnalyzer {
    pub fn new() -> Self {
        Self::default()
    }
}
