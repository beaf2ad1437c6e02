// SPDX-License-Identifier: Apache-2.0

//! Verification sweeps: a family of functions crossed with a set of claimed
//! inequalities and identities.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use pdt_core::boolfn::{fourier, RestrictedFunction};
use pdt_core::certify::{self, ParityOracle};
use pdt_core::classical;
use pdt_core::comm;
use pdt_core::construct::{self, zoo, ZOO_NAMES};
use pdt_core::gf2::{self, Gf2Vector};
use pdt_core::parity::{self, ParityAnalyzer};
use pdt_core::{BooleanFunction, Error, Mode, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Exhaustive(usize),
    Random { n: usize, count: usize, seed: u64 },
    Zoo(usize),
}

impl Family {
    pub fn arity(self) -> usize {
        match self {
            Family::Exhaustive(n) | Family::Zoo(n) | Family::Random { n, .. } => n,
        }
    }

    fn seed(self) -> u64 {
        match self {
            Family::Random { seed, .. } => seed,
            _ => 0,
        }
    }

    pub fn functions(self) -> Vec<BooleanFunction> {
        match self {
            Family::Exhaustive(n) => (0u64..1 << (1 << n)).map(|t| BooleanFunction::from_u64(n, t)).collect(),
            Family::Random { n, count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count).map(|_| BooleanFunction::random(n, &mut rng)).collect()
            }
            Family::Zoo(n) => ZOO_NAMES.iter().filter_map(|name| zoo(name, n).ok()).collect(),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize, what: &str| -> Result<u64> {
            let p = parts.get(i).ok_or_else(|| Error::Input(format!("family {s:?} is missing {what}")))?;
            p.parse().map_err(|_| Error::Input(format!("family {s:?}: {what} {p:?} is not a number")))
        };
        let family = match (parts[0], parts.len()) {
            ("exhaustive", 2) => Family::Exhaustive(num(1, "arity")? as usize),
            ("random", 4) => {
                Family::Random { n: num(1, "arity")? as usize, count: num(2, "count")? as usize, seed: num(3, "seed")? }
            }
            ("zoo", 3) if parts[1] == "all" => Family::Zoo(num(2, "arity")? as usize),
            _ => {
                return Err(Error::Input(format!(
                    "bad family {s:?}; expected exhaustive:n, random:n:count:seed or zoo:all:n"
                )))
            }
        };
        if family.arity() == 0 {
            return Err(Error::Input("family arity must be positive".into()));
        }
        Ok(family)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Exhaustive(n) => write!(f, "exhaustive:{n}"),
            Family::Random { n, count, seed } => write!(f, "random:{n}:{count}:{seed}"),
            Family::Zoo(n) => write!(f, "zoo:all:{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Eq1,
    Eq2,
    Thm1,
    Thm2,
    PropCd,
    EqCoplusC,
    Monotone,
    Invariance,
    RankSparsity,
    ThmNcCost,
    LemmaExp,
    ExampleNonmonotone,
}

pub const THEOREMS: [(&str, Theorem); 12] = [
    ("eq1", Theorem::Eq1),
    ("eq2", Theorem::Eq2),
    ("thm1", Theorem::Thm1),
    ("thm2", Theorem::Thm2),
    ("prop-cd", Theorem::PropCd),
    ("eq-coplusc", Theorem::EqCoplusC),
    ("monotone", Theorem::Monotone),
    ("invariance", Theorem::Invariance),
    ("rank-sparsity", Theorem::RankSparsity),
    ("thmnc-cost", Theorem::ThmNcCost),
    ("lemma-exp", Theorem::LemmaExp),
    ("example-nonmonotone", Theorem::ExampleNonmonotone),
];

impl Theorem {
    pub fn id(self) -> &'static str {
        THEOREMS.iter().find(|(_, t)| *t == self).expect("listed").0
    }

    fn needs_parity_bs(self) -> bool {
        matches!(self, Theorem::Thm2 | Theorem::Monotone | Theorem::Invariance | Theorem::ExampleNonmonotone)
    }

    /// Largest arity this check runs at, and what sets the limit.
    fn max_arity(self) -> (usize, &'static str) {
        match self {
            Theorem::Eq1 | Theorem::Eq2 => (8, "classical block sensitivity"),
            Theorem::Thm1 | Theorem::PropCd => (5, "parity certificate search per input"),
            Theorem::EqCoplusC => (4, "GL(n,2) enumeration per input"),
            Theorem::RankSparsity => (6, "exact rank of the 2^n x 2^n matrix"),
            Theorem::ThmNcCost => (4, "protocol runs over all 4^n input pairs"),
            Theorem::LemmaExp => (5, "coset enumeration per function"),
            _ => (4, "exact parity block sensitivity"),
        }
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        THEOREMS.iter().find(|(id, _)| *id == s).map(|(_, t)| *t).ok_or_else(|| {
            let ids: Vec<&str> = THEOREMS.iter().map(|(id, _)| *id).collect();
            Error::Input(format!("unknown theorem {s:?}; expected one of {}", ids.join(",")))
        })
    }
}

/// Refuses family/theorem combinations beyond the exact budgets, naming the
/// binding constraint.
pub fn check_budget(family: Family, theorem: Theorem) -> Result<()> {
    let n = family.arity();
    let (max, reason) = theorem.max_arity();
    let exhaustive_max = match theorem {
        _ if theorem.needs_parity_bs() => 3,
        Theorem::EqCoplusC => 3,
        _ => 4,
    };
    if let Family::Exhaustive(_) = family {
        if n > exhaustive_max {
            let reason = if theorem.needs_parity_bs() { "exact parity block sensitivity" } else { reason };
            return Err(Error::Input(format!(
                "theorem {} on {family}: exhaustive families are limited to n <= {exhaustive_max} by {reason}",
                theorem.id()
            )));
        }
    }
    if n > max {
        return Err(Error::Input(format!(
            "theorem {} on {family}: arity is limited to n <= {max} by {reason}",
            theorem.id()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationResult {
    pub theorem: &'static str,
    pub family: String,
    pub instances: usize,
    pub violation_count: usize,
    /// The first few violations, in family order.
    pub violations: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub runtime_ms: u64,
}

const SHOWN_VIOLATIONS: usize = 5;

fn err(e: Error) -> String {
    e.to_string()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

type Check = std::result::Result<(), String>;

fn whole(f: &BooleanFunction) -> RestrictedFunction {
    RestrictedFunction::whole(f)
}

fn parity_measures(an: &mut ParityAnalyzer, f: &BooleanFunction) -> std::result::Result<(u32, u32, u32), String> {
    let d = an.parity_depth(&whole(f)).map_err(err)?.0;
    let c = parity::parity_certificate_profile(&whole(f)).map_err(err)?.c;
    let bs = an.parity_bs(f, Mode::Exact).map_err(err)?.value;
    Ok((d, c, bs))
}

fn check_one(an: &mut ParityAnalyzer, theorem: Theorem, f: &BooleanFunction, index: usize, seed: u64) -> Check {
    let n = f.arity();
    match theorem {
        Theorem::Eq1 => {
            if f.is_constant() {
                return Ok(());
            }
            let d = classical::decision_depth(f).map_err(err)?.0;
            let p = classical::certificate_profile(f).map_err(err)?;
            let (c0, c1) = (p.c0.unwrap(), p.c1.unwrap());
            check(d <= c0 * c1, || format!("D = {d} > C0 * C1 = {c0} * {c1}"))
        }
        Theorem::Eq2 => {
            let c = classical::certificate_profile(f).map_err(err)?.c;
            let bs = classical::block_sensitivity_max(f).map_err(err)?.0;
            check(c <= bs * bs, || format!("C = {c} > bs^2 = {bs}^2"))
        }
        Theorem::Thm1 => {
            let p = parity::parity_certificate_profile(&whole(f)).map_err(err)?;
            let bound = p.c0.zip(p.c1).map(|(a, b)| a * b);
            if let Some(bound) = bound {
                let d = an.parity_depth(&whole(f)).map_err(err)?.0;
                check(d <= bound, || format!("D_xor = {d} > C0_xor * C1_xor = {bound}"))?;
            }
            for x in 0..1u32 << n {
                let mut oracle = ParityOracle::new(Gf2Vector::new(n, x));
                let e = certify::evaluate_via_certificates(f, &mut oracle).map_err(err)?;
                check(e.value == f.get(x), || format!("certificate algorithm wrong at {}", Gf2Vector::new(n, x)))?;
                let bound = bound.unwrap_or(0);
                check(e.queries <= bound, || format!("{} queries > {bound} at {}", e.queries, Gf2Vector::new(n, x)))?;
                if let Some(c0) = p.c0 {
                    check(e.rounds() as u32 <= c0, || format!("{} rounds > C0_xor = {c0}", e.rounds()))?;
                }
                if let Some(seq) = certify::decrease_sequence(f, &e).map_err(err)? {
                    check(seq.windows(2).all(|w| w[1] < w[0]), || format!("no decrease along {seq:?}"))?;
                }
            }
            Ok(())
        }
        Theorem::Thm2 => {
            let (_, c, bs) = parity_measures(an, f)?;
            check(bs <= c && c <= bs * bs, || format!("bs_xor = {bs}, C_xor = {c}"))
        }
        Theorem::PropCd => {
            let d = an.parity_depth(&whole(f)).map_err(err)?.0;
            let c = parity::parity_certificate_profile(&whole(f)).map_err(err)?.c;
            check(c <= d, || format!("C_xor = {c} > D_xor = {d}"))
        }
        Theorem::EqCoplusC => {
            // min over B of C(f_B, B^-1 x), one subcube table per B
            let mut min = vec![u32::MAX; 1 << n];
            for b in gf2::enumerate_gl(n).map_err(err)? {
                let inv = b.inverse().expect("invertible");
                let table = classical::SubcubeTable::new(&f.rotate(&b).map_err(err)?).map_err(err)?;
                for (x, m) in min.iter_mut().enumerate() {
                    *m = (*m).min(table.certificate(inv.apply_bits(x as u32)).size() as u32);
                }
            }
            for (x, &m) in min.iter().enumerate() {
                let x = Gf2Vector::new(n, x as u32);
                let cx = parity::parity_certificate(&whole(f), &x).map_err(err)?.0;
                check(cx == m, || format!("at {x}: C_xor = {cx}, min_B C = {m}"))?;
            }
            Ok(())
        }
        Theorem::Monotone => {
            let (_, c, bs) = parity_measures(an, f)?;
            for h in gf2::enumerate_cosets(n).map_err(err)? {
                let r = f.restrict(&h).map_err(err)?;
                let ch = parity::parity_certificate_profile(&r).map_err(err)?.c;
                let bh = an.parity_bs(r.local(), Mode::Exact).map_err(err)?.value;
                check(ch <= c, || format!("C_xor grows from {c} to {ch} on {h:?}"))?;
                check(bh <= bs, || format!("bs_xor grows from {bs} to {bh} on {h:?}"))?;
            }
            Ok(())
        }
        Theorem::Invariance => {
            let base = parity_measures(an, f)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            for _ in 0..4 {
                let c = Gf2Vector::new(n, rng.gen_range(0..1u32 << n));
                let g = f.shift(&c).map_err(err)?;
                check(parity_measures(an, &g)? == base, || format!("shift by {c} changes (D, C, bs)_xor"))?;
                let b = gf2::random_invertible(n, &mut rng);
                let g = f.rotate(&b).map_err(err)?;
                check(parity_measures(an, &g)? == base, || format!("rotation by {b:?} changes (D, C, bs)_xor"))?;
            }
            Ok(())
        }
        Theorem::RankSparsity => {
            let rank = comm::xor_matrix_rank(f).map_err(err)?;
            let sparsity = fourier(f).map_err(err)?.sparsity();
            check(rank == sparsity, || format!("rank {rank} != sparsity {sparsity}"))
        }
        Theorem::ThmNcCost => {
            if f.count_ones() == 0 {
                return Ok(());
            }
            let ess = certify::essential_certificate_set(f).map_err(err)?;
            ess.validate(f).map_err(err)?;
            check((ess.len() as u128) <= certify::cover_bound(n, ess.d), || format!("K = {} above bound", ess.len()))?;
            for x in comm::inputs(n) {
                for y in comm::inputs(n) {
                    let t = comm::nondet_protocol(f, &ess, &x, &y, None).map_err(err)?;
                    check(t.output == f.get(x.bits() ^ y.bits()), || format!("protocol wrong on ({x}, {y})"))?;
                    check(t.total_bits == ess.protocol_cost(), || format!("cost {} on ({x}, {y})", t.total_bits))?;
                }
            }
            Ok(())
        }
        Theorem::LemmaExp => {
            let c = classical::certificate_profile(f).map_err(err)?.c;
            let d = classical::decision_depth(f).map_err(err)?.0;
            for h in gf2::enumerate_cosets(n).map_err(err)? {
                if let Some(s) = construct::linear_form_on(f, &h).map_err(err)? {
                    let tau = construct::tau(h.constraints(), &s).map_err(err)?;
                    check(c >= tau && d >= tau, || format!("on {h:?} with s = {s}: tau = {tau}, C = {c}, D = {d}"))?;
                }
            }
            Ok(())
        }
        Theorem::ExampleNonmonotone => unreachable!("handled as an existential claim"),
    }
}

/// `wbs_xor(f) < max_H wbs_xor(f|_H)`.
fn exhibits_nonmonotone(an: &mut ParityAnalyzer, f: &BooleanFunction) -> std::result::Result<bool, String> {
    let w = an.weak_parity_bs_max(&whole(f), Mode::Exact).map_err(err)?.value;
    let bs = an.parity_bs(f, Mode::Exact).map_err(err)?.value;
    Ok(w < bs)
}

pub fn run_verification_suite(family: Family, theorems: &[Theorem]) -> Result<Vec<VerificationResult>> {
    for &t in theorems {
        check_budget(family, t)?;
    }
    let functions = family.functions();
    let mut results = Vec::new();
    for &theorem in theorems {
        let start = Instant::now();
        let (violations, note) = if theorem == Theorem::ExampleNonmonotone {
            let flags: Vec<std::result::Result<bool, String>> =
                functions.par_iter().map_init(ParityAnalyzer::new, exhibits_nonmonotone).collect();
            let mut violations = Vec::new();
            let mut witnesses = Vec::new();
            for (f, flag) in functions.iter().zip(flags) {
                match flag {
                    Ok(true) => witnesses.push(f.to_spec()),
                    Ok(false) => {}
                    Err(e) => violations.push(format!("{}: {e}", f.to_spec())),
                }
            }
            let example = zoo("example31", 3).ok();
            if example.as_ref().is_some_and(|e| functions.contains(e) && !witnesses.contains(&e.to_spec())) {
                violations.push("example31 does not exhibit the gap".into());
            }
            if witnesses.is_empty() {
                violations.push("no function in the family has wbs_xor(f) < wbs_xor(f|H) for some coset H".into());
            }
            let note =
                format!("{} of {} functions exhibit wbs_xor(f) < wbs_xor(f|H)", witnesses.len(), functions.len());
            (violations, Some(note))
        } else {
            let seed = family.seed();
            let outcomes: Vec<Check> = functions
                .par_iter()
                .enumerate()
                .map_init(ParityAnalyzer::new, |an, (i, f)| check_one(an, theorem, f, i, seed))
                .collect();
            let violations = functions
                .iter()
                .zip(outcomes)
                .filter_map(|(f, o)| o.err().map(|e| format!("{}: {e}", f.to_spec())))
                .collect();
            (violations, None)
        };
        let violation_count: usize = violations.len();
        results.push(VerificationResult {
            theorem: theorem.id(),
            family: family.to_string(),
            instances: functions.len(),
            violation_count,
            violations: violations.into_iter().take(SHOWN_VIOLATIONS).collect(),
            pass: violation_count == 0,
            note,
            runtime_ms: start.elapsed().as_millis() as u64,
        });
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_parsing() {
        assert_eq!("exhaustive:3".parse::<Family>().unwrap(), Family::Exhaustive(3));
        assert_eq!("random:4:10:7".parse::<Family>().unwrap(), Family::Random { n: 4, count: 10, seed: 7 });
        assert_eq!("zoo:all:3".parse::<Family>().unwrap(), Family::Zoo(3));
        for bad in ["exhaustive", "random:4:10", "zoo:3", "zoo:some:3", "exhaustive:x", "exhaustive:0"] {
            assert!(bad.parse::<Family>().is_err(), "{bad}");
        }
        assert_eq!(Family::Zoo(3).functions().len(), 6);
        assert_eq!(Family::Zoo(4).functions().len(), 4);
        assert_eq!(Family::Exhaustive(2).functions().len(), 16);
    }

    #[test]
    fn budget_refusals() {
        assert!(check_budget(Family::Exhaustive(4), Theorem::Thm2).is_err());
        assert!(check_budget(Family::Exhaustive(4), Theorem::Thm1).is_ok());
        assert!(check_budget(Family::Exhaustive(4), Theorem::EqCoplusC).is_err());
        assert!(check_budget(Family::Exhaustive(5), Theorem::Eq1).is_err());
        assert!(check_budget(Family::Random { n: 4, count: 5, seed: 1 }, Theorem::Thm2).is_ok());
        assert!(check_budget(Family::Random { n: 5, count: 5, seed: 1 }, Theorem::Thm2).is_err());
        let msg = check_budget(Family::Exhaustive(4), Theorem::Monotone).unwrap_err().to_string();
        assert!(msg.contains("parity block sensitivity"), "{msg}");
    }

    #[test]
    fn every_theorem_passes_on_zoo3() {
        let all: Vec<Theorem> = THEOREMS.iter().map(|(_, t)| *t).collect();
        for r in run_verification_suite(Family::Zoo(3), &all).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }
}
