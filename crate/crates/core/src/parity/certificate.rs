// SPDX-License-Identifier: Apache-2.0

//! Parity certificates: smallest-codimension cosets on which `f` is constant.
//!
//! All searches run on the local function of a restriction and visit
//! codimension `k = 0, 1, ...`; within a codimension, constraint spaces come in
//! [`gf2::enumerate_subspaces`] order and right-hand sides ascend. The first
//! hit in that order is the witness.

use serde::Serialize;

use crate::boolfn::{BooleanFunction, RestrictedFunction};
use crate::classical::CertificateProfile;
use crate::error::{Error, Result};
use crate::gf2::{self, Coset, Gf2Vector, SubspaceIter};

pub const MAX_CERTIFICATE_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityCertificate {
    pub coset: Coset,
    pub value: bool,
}

impl ParityCertificate {
    /// Validates that `coset` contains `x` and that `f` is constant on
    /// `coset` intersected with the domain of `f`.
    pub fn new(f: &RestrictedFunction, x: &Gf2Vector, coset: Coset) -> Result<Self> {
        let value = f.local().evaluate(&Gf2Vector::new(
            f.dim(),
            f.local_point(x.bits()).ok_or_else(|| Error::Domain(format!("{x} is not in the domain")))?,
        ))?;
        if !coset.contains(x) {
            return Err(Error::Domain(format!("certificate does not contain {x}")));
        }
        let domain = f.ambient().elements();
        for z in domain.into_iter().filter(|&z| coset.contains_bits(z)) {
            let y = f.local_point(z).expect("domain point");
            if f.local().get(y) != value {
                return Err(Error::Domain("function is not constant on the certificate".into()));
            }
        }
        Ok(ParityCertificate { coset, value })
    }

    pub fn size(&self) -> usize {
        self.coset.codim()
    }
}

fn subspaces(m: usize, k: usize) -> SubspaceIter {
    gf2::enumerate_subspaces(m, k).expect("arity within subspace budget")
}

const UNSEEN: u8 = 3;
const MIXED: u8 = 2;

/// Value status of each class `{y : C y = r}`, indexed by `r`.
fn classify(g: &BooleanFunction, rows: &[u32]) -> Vec<u8> {
    let c = gf2::Gf2Matrix::from_bits(g.arity(), rows.to_vec());
    let mut status = vec![UNSEEN; 1 << rows.len()];
    for y in 0..1u32 << g.arity() {
        let s = &mut status[c.apply_bits(y) as usize];
        let v = u8::from(g.get(y));
        *s = match *s {
            UNSEEN => v,
            cur if cur == v => cur,
            _ => MIXED,
        };
    }
    status
}

fn constant_on(g: &BooleanFunction, y: u32, kernel: &[u32]) -> bool {
    let v = g.get(y);
    kernel.iter().all(|&d| g.get(y ^ d) == v)
}

/// Smallest certificate codimension and witness coset for every local point.
pub(crate) fn local_certificates(g: &BooleanFunction) -> Vec<(u32, Coset)> {
    let m = g.arity();
    let mut found: Vec<Option<(u32, Coset)>> = vec![None; 1 << m];
    let mut unresolved: Vec<u32> = (0..1u32 << m).collect();
    for k in 0..=m {
        for w in subspaces(m, k) {
            let rows = w.basis().row_bits();
            if unresolved.len() << (m - k) < (k.max(1) << m) {
                let kernel = w.basis().kernel().elements();
                for &y in &unresolved {
                    if constant_on(g, y, &kernel) {
                        found[y as usize] =
                            Some((k as u32, Coset::from_canonical(w.basis().clone(), w.basis().apply_bits(y))));
                    }
                }
            } else {
                let status = classify(g, rows);
                for &y in &unresolved {
                    let r = w.basis().apply_bits(y);
                    if status[r as usize] != MIXED {
                        found[y as usize] = Some((k as u32, Coset::from_canonical(w.basis().clone(), r)));
                    }
                }
            }
            unresolved.retain(|&y| found[y as usize].is_none());
            if unresolved.is_empty() {
                return found.into_iter().map(|f| f.expect("resolved")).collect();
            }
        }
    }
    unreachable!("a single point is always a certificate")
}

/// Smallest certificate at one local point.
pub(crate) fn local_certificate_at(g: &BooleanFunction, y: u32) -> (u32, Coset) {
    let m = g.arity();
    for k in 0..=m {
        for w in subspaces(m, k) {
            let kernel = w.basis().kernel().elements();
            if constant_on(g, y, &kernel) {
                return (k as u32, Coset::from_canonical(w.basis().clone(), w.basis().apply_bits(y)));
            }
        }
    }
    unreachable!("a single point is always a certificate")
}

/// A smallest coset on which `g` is identically `value`, if `g` takes `value`.
pub(crate) fn smallest_constant_coset(g: &BooleanFunction, value: bool) -> Option<Coset> {
    let m = g.arity();
    g.inputs_with(value).next()?;
    for k in 0..=m {
        for w in subspaces(m, k) {
            let status = classify(g, w.basis().row_bits());
            if let Some(r) = status.iter().position(|&s| s == u8::from(value)) {
                return Some(Coset::from_canonical(w.basis().clone(), r as u32));
            }
        }
    }
    unreachable!("a point taking the value is a certificate")
}

pub(crate) fn local_profile(g: &BooleanFunction) -> CertificateProfile {
    let all = local_certificates(g);
    CertificateProfile::from_pointwise(g, |y| all[y as usize].0)
}

fn check_budget(f: &RestrictedFunction) -> Result<()> {
    if f.ambient_arity() > MAX_CERTIFICATE_N {
        return Err(Error::budget("parity certificate arity", MAX_CERTIFICATE_N, f.ambient_arity()));
    }
    Ok(())
}

/// `C_xor(f, x)` with a witness certificate in ambient coordinates.
pub fn parity_certificate(f: &RestrictedFunction, x: &Gf2Vector) -> Result<(u32, ParityCertificate)> {
    check_budget(f)?;
    if x.width() != f.ambient_arity() {
        return Err(Error::Input("input width does not match arity".into()));
    }
    let y = f.local_point(x.bits()).ok_or_else(|| Error::Domain(format!("{x} is not in the domain coset")))?;
    let (k, local) = local_certificate_at(f.local(), y);
    let coset = f.lift_constraints(&local);
    Ok((k, ParityCertificate { coset, value: f.local().get(y) }))
}

/// `C0_xor`, `C1_xor` and `C_xor` of a restricted function.
pub fn parity_certificate_profile(f: &RestrictedFunction) -> Result<CertificateProfile> {
    check_budget(f)?;
    Ok(local_profile(f.local()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::zoo;

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::from_bitstring(s).unwrap()
    }

    /// Brute force over every coset of {0,1}^n.
    fn oracle(f: &BooleanFunction, x: u32) -> u32 {
        gf2::enumerate_cosets(f.arity())
            .unwrap()
            .filter(|c| c.contains_bits(x) && c.elements().iter().all(|&z| f.get(z) == f.get(x)))
            .map(|c| c.codim() as u32)
            .min()
            .unwrap()
    }

    #[test]
    fn or2_examples() {
        let or2 = RestrictedFunction::whole(&zoo("or", 2).unwrap());
        assert_eq!(parity_certificate(&or2, &v("00")).unwrap().0, 2);
        let (k, cert) = parity_certificate(&or2, &v("01")).unwrap();
        assert_eq!(k, 1);
        assert!(cert.value);
        ParityCertificate::new(&or2, &v("01"), cert.coset.clone()).unwrap();
    }

    #[test]
    fn and_profile() {
        for n in 1..=5 {
            let p = parity_certificate_profile(&RestrictedFunction::whole(&zoo("and", n).unwrap())).unwrap();
            assert_eq!(p.c1, Some(n as u32));
            assert_eq!(p.c0, Some(1));
            assert_eq!(p.c, n as u32);
        }
    }

    #[test]
    fn constant_function_profile() {
        let p = parity_certificate_profile(&RestrictedFunction::whole(&BooleanFunction::constant(3, true))).unwrap();
        assert_eq!(p.c0, None);
        assert_eq!(p.c1, Some(0));
        assert_eq!(p.c, 0);
    }

    #[test]
    fn matches_brute_force_exhaustive_n3() {
        for t in 0u64..256 {
            let f = BooleanFunction::from_u64(3, t);
            let all = local_certificates(&f);
            for x in 0..8u32 {
                let expect = oracle(&f, x);
                assert_eq!(all[x as usize].0, expect, "{f:?} at {x}");
                assert_eq!(local_certificate_at(&f, x), all[x as usize]);
                let cert = &all[x as usize].1;
                assert!(cert.contains_bits(x));
                assert!(cert.elements().iter().all(|&z| f.get(z) == f.get(x)));
            }
        }
    }

    #[test]
    fn matches_brute_force_sampled_n4() {
        for t in (0u64..1 << 16).step_by(331) {
            let f = BooleanFunction::from_u64(4, t);
            let all = local_certificates(&f);
            for x in 0..16u32 {
                assert_eq!(all[x as usize].0, oracle(&f, x));
            }
        }
    }

    #[test]
    fn certificate_on_a_coset() {
        // f = example on {x1 = 0} is OR(x2, x3)
        let f = zoo("example31", 3).unwrap();
        let h = gf2::solve(&gf2::Gf2Matrix::from_bitstrings(3, &["100"]).unwrap(), &v("0")).unwrap().unwrap();
        let r = f.restrict(&h).unwrap();
        let (k, cert) = parity_certificate(&r, &v("000")).unwrap();
        assert_eq!(k, 2);
        assert_eq!(cert.size(), 2);
        ParityCertificate::new(&r, &v("000"), cert.coset).unwrap();
        assert!(parity_certificate(&r, &v("100")).is_err());
    }

    #[test]
    fn smallest_one_coset() {
        let or2 = zoo("or", 2).unwrap();
        let c = smallest_constant_coset(&or2, true).unwrap();
        assert_eq!(c.codim(), 1);
        assert!(c.elements().iter().all(|&z| or2.get(z)));
        assert!(smallest_constant_coset(&BooleanFunction::constant(2, false), true).is_none());
    }
}
