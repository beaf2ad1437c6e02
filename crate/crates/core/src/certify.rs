// SPDX-License-Identifier: Apache-2.0

//! Evaluating a function through repeated 1-parity certificates, and
//! essential sets of 1-parity certificates.

use serde::Serialize;

use crate::boolfn::{BooleanFunction, RestrictedFunction};
use crate::error::{Error, Result};
use crate::gf2::{self, Coset, Gf2Vector, Subspace};
use crate::parity::{self, local_certificates, smallest_constant_coset};

pub const MAX_ESSENTIAL_N: usize = 8;

/// Answers parity queries about a hidden input and counts them.
#[derive(Clone, Debug)]
pub struct ParityOracle {
    input: Gf2Vector,
    queries: u32,
}

impl ParityOracle {
    pub fn new(input: Gf2Vector) -> Self {
        ParityOracle { input, queries: 0 }
    }

    pub fn arity(&self) -> usize {
        self.input.width()
    }

    pub fn queries(&self) -> u32 {
        self.queries
    }

    pub fn query(&mut self, c: &Gf2Vector) -> Result<bool> {
        if c.width() != self.arity() {
            return Err(Error::Input(format!("query width {} does not match input width {}", c.width(), self.arity())));
        }
        self.queries += 1;
        Ok(self.input.dot(c))
    }

    fn query_bits(&mut self, c: u32) -> bool {
        self.queries += 1;
        gf2::dot_bits(self.input.bits(), c)
    }
}

/// One pass of the loop: the current domain, and either its constant value
/// or the certificate tried on it with the answers received.
#[derive(Clone, Debug, Serialize)]
pub struct Iteration {
    pub domain: Coset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Coset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answers: Option<Gf2Vector>,
}

impl Iteration {
    pub fn matched(&self) -> bool {
        match (&self.certificate, &self.answers) {
            (Some(c), Some(a)) => c.rhs() == *a,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub value: bool,
    pub queries: u32,
    pub trace: Vec<Iteration>,
}

impl Evaluation {
    /// Iterations that queried a certificate.
    pub fn rounds(&self) -> usize {
        self.trace.iter().filter(|it| it.certificate.is_some()).count()
    }
}

/// Computes `f(x)` by querying smallest 1-parity certificates of `f` restricted
/// to the current coset until one matches or the restriction is constant.
///
/// Each round queries every row of the chosen certificate, then shrinks the
/// domain to the inputs agreeing with the answers.
pub fn evaluate_via_certificates(f: &BooleanFunction, oracle: &mut ParityOracle) -> Result<Evaluation> {
    let n = f.arity();
    if oracle.arity() != n {
        return Err(Error::Input(format!("oracle width {} does not match arity {n}", oracle.arity())));
    }
    if n > parity::MAX_CERTIFICATE_N {
        return Err(Error::budget("certificate evaluation arity", parity::MAX_CERTIFICATE_N, n));
    }
    let start = oracle.queries();
    let mut domain = Coset::full(n);
    let mut trace = Vec::new();
    loop {
        let r = f.restrict(&domain)?;
        if let Some(value) = r.local().constant_value() {
            trace.push(Iteration { domain, constant: Some(value), certificate: None, answers: None });
            return Ok(Evaluation { value, queries: oracle.queries() - start, trace });
        }
        let local = smallest_constant_coset(r.local(), true).expect("nonconstant restriction takes value 1");
        let cert = r.lift_constraints(&local);
        let rows = cert.constraints().row_bits().to_vec();
        let answers = rows.iter().enumerate().fold(0u32, |acc, (i, &c)| acc | (u32::from(oracle.query_bits(c)) << i));
        let answers = Gf2Vector::new(rows.len(), answers);
        let next = domain.intersect(&rows, answers.bits()).expect("hidden input satisfies its own answers");
        let it = Iteration { domain, constant: None, certificate: Some(cert), answers: Some(answers) };
        let matched = it.matched();
        trace.push(it);
        if matched {
            return Ok(Evaluation { value: true, queries: oracle.queries() - start, trace });
        }
        domain = next;
    }
}

/// `C_xor(f|V_i, x0)` along the domains of a run, for `x0` the lexicographically
/// least 0-input of the last domain. `None` when that domain has no 0-input.
pub fn decrease_sequence(f: &BooleanFunction, eval: &Evaluation) -> Result<Option<Vec<u32>>> {
    let n = f.arity();
    let last = &eval.trace.last().ok_or_else(|| Error::Input("empty trace".into()))?.domain;
    let Some(x0) = last.elements().into_iter().filter(|&x| !f.get(x)).min_by_key(|&x| gf2::lex_key(x, n)) else {
        return Ok(None);
    };
    let x0 = Gf2Vector::new(n, x0);
    eval.trace
        .iter()
        .map(|it| Ok(parity::parity_certificate(&f.restrict(&it.domain)?, &x0)?.0))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// 1-parity certificates of equal codimension `d = C1_xor(f)` covering every
/// 1-input, none contained in the union of the others.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialSet {
    pub arity: usize,
    pub d: u32,
    pub certificates: Vec<Coset>,
}

impl EssentialSet {
    pub fn len(&self) -> usize {
        self.certificates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.certificates.is_empty()
    }

    /// Bits used to name one element: `ceil(log2(K + 1))`.
    pub fn index_bits(&self) -> u32 {
        usize::BITS - self.len().leading_zeros()
    }

    /// Cost of the nondeterministic protocol built on this set.
    pub fn protocol_cost(&self) -> u32 {
        self.d + self.index_bits()
    }

    /// Checks the covering, irredundancy and size properties against `f`.
    pub fn validate(&self, f: &BooleanFunction) -> Result<()> {
        let mut cover = vec![0u32; 1 << f.arity()];
        for c in &self.certificates {
            if c.codim() as u32 != self.d {
                return Err(Error::Domain(format!("element of codimension {} in a set of size {}", c.codim(), self.d)));
            }
            for x in c.elements() {
                if !f.get(x) {
                    return Err(Error::Domain("element contains a 0-input".into()));
                }
                cover[x as usize] += 1;
            }
        }
        if f.inputs_with(true).any(|x| cover[x as usize] == 0) {
            return Err(Error::Domain("a 1-input is not covered".into()));
        }
        if self.certificates.iter().any(|c| c.elements().iter().all(|&x| cover[x as usize] > 1)) {
            return Err(Error::Domain("an element lies in the union of the others".into()));
        }
        Ok(())
    }
}

/// `2^d (3n)^d`, saturating.
pub fn cover_bound(n: usize, d: u32) -> u128 {
    (6 * n as u128).checked_pow(d).unwrap_or(u128::MAX)
}

/// Pads `cert` (containing `anchor`) to codimension `d` with the
/// lexicographically least independent rows, each satisfied by `anchor`.
fn pad(cert: &Coset, anchor: u32, d: usize) -> Coset {
    let n = cert.ncols();
    let mut rows = cert.constraints().row_bits().to_vec();
    for v in gf2::lex_vectors(n) {
        if rows.len() >= d {
            break;
        }
        if !Subspace::from_generators(n, &rows).contains_bits(v) {
            rows.push(v);
        }
    }
    let rhs = rows.iter().enumerate().fold(0u32, |acc, (i, &r)| acc | (u32::from(gf2::dot_bits(r, anchor)) << i));
    Coset::solve_bits(n, &rows, rhs).expect("anchor satisfies every row")
}

/// Builds an essential set: a smallest 1-certificate per 1-input (index
/// order), padded to codimension `C1_xor(f)`, deduplicated, then pruned by
/// removing the first element covered by the rest until none is.
pub fn essential_certificate_set(f: &BooleanFunction) -> Result<EssentialSet> {
    let n = f.arity();
    if n > MAX_ESSENTIAL_N {
        return Err(Error::budget("essential set arity", MAX_ESSENTIAL_N, n));
    }
    let ones: Vec<u32> = f.inputs_with(true).collect();
    if ones.is_empty() {
        return Err(Error::Domain("function has no 1-input".into()));
    }
    let all = local_certificates(f);
    let d = ones.iter().map(|&x| all[x as usize].0).max().expect("nonempty");
    let mut certs: Vec<Coset> = Vec::new();
    for &x in &ones {
        let c = pad(&all[x as usize].1, x, d as usize);
        if !certs.contains(&c) {
            certs.push(c);
        }
    }
    let points: Vec<Vec<u32>> = certs.iter().map(Coset::elements).collect();
    let mut cover = vec![0u32; 1 << n];
    for p in &points {
        for &x in p {
            cover[x as usize] += 1;
        }
    }
    let mut keep = vec![true; certs.len()];
    while let Some(i) = (0..certs.len()).find(|&i| keep[i] && points[i].iter().all(|&x| cover[x as usize] > 1)) {
        keep[i] = false;
        for &x in &points[i] {
            cover[x as usize] -= 1;
        }
    }
    let certificates = certs.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect();
    Ok(EssentialSet { arity: n, d, certificates })
}

/// Convenience: `C1_xor` of `f` on the whole space.
pub fn one_certificate_complexity(f: &BooleanFunction) -> Result<Option<u32>> {
    Ok(parity::parity_certificate_profile(&RestrictedFunction::whole(f))?.c1)
}
