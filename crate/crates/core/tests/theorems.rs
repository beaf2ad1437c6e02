// SPDX-License-Identifier: Apache-2.0

//! Inequalities and worked examples checked over every function on 3 bits.

use pdt_core::boolfn::RestrictedFunction;
use pdt_core::classical;
use pdt_core::construct::zoo;
use pdt_core::gf2::{self, Gf2Vector};
use pdt_core::parity::{self, ParityAnalyzer};
use pdt_core::{BooleanFunction, Mode};

fn all3() -> impl Iterator<Item = BooleanFunction> {
    (0u64..256).map(|t| BooleanFunction::from_u64(3, t))
}

#[test]
fn classical_inequalities() {
    for f in all3() {
        let d = classical::decision_depth(&f).unwrap().0;
        let p = classical::certificate_profile(&f).unwrap();
        let bs = classical::block_sensitivity_max(&f).unwrap().0;
        if !f.is_constant() {
            assert!(d <= p.c0.unwrap() * p.c1.unwrap());
        }
        assert!(p.c <= bs * bs);
        assert!(bs <= p.c && p.c <= d);
    }
}

#[test]
fn parity_certificate_is_symmetrized_classical_certificate() {
    let gl: Vec<_> = gf2::enumerate_gl(3).unwrap().map(|b| (b.inverse().unwrap(), b)).collect();
    for f in all3() {
        let whole = RestrictedFunction::whole(&f);
        let rotated: Vec<_> = gl.iter().map(|(inv, b)| (inv, f.rotate(b).unwrap())).collect();
        for x in 0..8 {
            let cx = parity::parity_certificate(&whole, &Gf2Vector::new(3, x)).unwrap().0;
            let min = rotated
                .iter()
                .map(|(inv, fb)| {
                    classical::certificate_complexity(fb, &Gf2Vector::new(3, inv.apply_bits(x))).unwrap().0
                })
                .min()
                .unwrap();
            assert_eq!(cx, min, "{f:?} at {x}");
        }
    }
}

#[test]
fn depth_and_certificate_bounds() {
    let mut an = ParityAnalyzer::new();
    for f in all3() {
        let whole = RestrictedFunction::whole(&f);
        let d = an.parity_depth(&whole).unwrap().0;
        let p = parity::parity_certificate_profile(&whole).unwrap();
        let bs = an.parity_bs(&f, Mode::Exact).unwrap().value;
        assert!(p.c <= d);
        if !f.is_constant() {
            assert!(d <= p.c0.unwrap() * p.c1.unwrap());
        }
        assert!(bs <= p.c && p.c <= bs * bs, "{f:?}: bs {bs}, c {}", p.c);
        // parity measures never exceed their classical counterparts
        assert!(d <= classical::decision_depth(&f).unwrap().0);
        assert!(p.c <= classical::certificate_profile(&f).unwrap().c);
    }
}

#[test]
fn monotone_under_restriction() {
    let mut an = ParityAnalyzer::new();
    let cosets: Vec<_> = gf2::enumerate_cosets(3).unwrap().collect();
    for f in all3() {
        let c = parity::parity_certificate_profile(&RestrictedFunction::whole(&f)).unwrap().c;
        let bs = an.parity_bs(&f, Mode::Exact).unwrap().value;
        for h in &cosets {
            let r = f.restrict(h).unwrap();
            assert!(parity::parity_certificate_profile(&r).unwrap().c <= c);
            assert!(an.parity_bs(r.local(), Mode::Exact).unwrap().value <= bs);
        }
    }
}

#[test]
fn weak_block_sensitivity_is_not_monotone() {
    let f = zoo("example31", 3).unwrap();
    let mut an = ParityAnalyzer::new();
    let whole = an.weak_parity_bs_max(&RestrictedFunction::whole(&f), Mode::Exact).unwrap();
    assert_eq!(whole.value, 1);
    let h = gf2::solve(&pdt_core::Gf2Matrix::from_bitstrings(3, &["100"]).unwrap(), &Gf2Vector::new(1, 0))
        .unwrap()
        .unwrap();
    let r = f.restrict(&h).unwrap();
    assert_eq!(r.local(), &zoo("or", 2).unwrap());
    let at_zero = an.weak_parity_bs(&r, &Gf2Vector::new(3, 0), Mode::Exact).unwrap();
    assert_eq!(at_zero.value, 2);
    assert!(an.parity_bs(&f, Mode::Exact).unwrap().value >= 2);
}

#[test]
fn and_family() {
    let mut an = ParityAnalyzer::new();
    for m in 2..=4 {
        let f = zoo("and", m).unwrap();
        let whole = RestrictedFunction::whole(&f);
        let m = m as u32;
        assert_eq!(an.weak_parity_bs_max(&whole, Mode::Exact).unwrap().value, m);
        let p = parity::parity_certificate_profile(&whole).unwrap();
        assert_eq!((p.c0, p.c1, p.c), (Some(1), Some(m), m));
        assert_eq!(an.parity_depth(&whole).unwrap().0, m);
    }
}

#[test]
fn parity_measures_bounded_by_symmetrized_measures() {
    // a basis change turns each subcube into a coset
    for t in 0u64..16 {
        let f = BooleanFunction::from_u64(2, t);
        let ci = classical::symmetrized(classical::ClassicalMeasure::Certificate, &f, Mode::Exact, 4).unwrap();
        let c = parity::parity_certificate_profile(&RestrictedFunction::whole(&f)).unwrap().c;
        assert!(c <= ci.value);
        let di = classical::symmetrized(classical::ClassicalMeasure::Depth, &f, Mode::Exact, 4).unwrap();
        let d = parity::parity_depth(&RestrictedFunction::whole(&f)).unwrap().0;
        assert!(d <= di.value);
    }
}
