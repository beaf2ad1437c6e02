// SPDX-License-Identifier: Apache-2.0

//! `measure` subcommand: one JSON record per requested measure.

use pdt_core::boolfn::RestrictedFunction;
use pdt_core::classical::{self, ClassicalMeasure, SubcubeTable};
use pdt_core::gf2::Gf2Vector;
use pdt_core::parity::{self, ParityAnalyzer};
use pdt_core::{BooleanFunction, Error, Mode, Result, Semantics};
use serde::Serialize;
use serde_json::{json, Value};

pub const MEASURES: [&str; 14] =
    ["d", "c", "c0", "c1", "bs", "dxor", "cxor", "c0xor", "c1xor", "wbsxor", "bsxor", "di", "ci", "bsi"];

/// Evaluation policy beyond the exact budgets.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub mode: Mode,
    pub max_exact_n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasureValue {
    /// `None` when the measure is undefined, e.g. `c1` of the zero function.
    pub value: Option<u32>,
    pub exact: bool,
    pub semantics: Semantics,
    pub witness: Value,
}

impl MeasureValue {
    fn exact(value: Option<u32>, witness: Value) -> Self {
        MeasureValue { value, exact: true, semantics: Semantics::Exact, witness }
    }

    fn measured<W: Serialize>(m: pdt_core::Measured<W>) -> Self {
        MeasureValue { value: Some(m.value), exact: m.is_exact(), semantics: m.semantics, witness: json!(m.witness) }
    }
}

fn bits(n: usize, x: u32) -> String {
    Gf2Vector::new(n, x).to_bitstring()
}

/// First input (index order) among those with `value` attaining `target`.
fn first_input(f: &BooleanFunction, value: Option<bool>, size: impl Fn(u32) -> u32, target: u32) -> Option<u32> {
    (0..1u32 << f.arity()).find(|&x| value.is_none_or(|v| f.get(x) == v) && size(x) == target)
}

fn classical_certificate(f: &BooleanFunction, value: Option<bool>) -> Result<MeasureValue> {
    let table = SubcubeTable::new(f)?;
    let p = table.profile();
    let target = match value {
        None => Some(p.c),
        Some(false) => p.c0,
        Some(true) => p.c1,
    };
    let Some(target) = target else { return Ok(MeasureValue::exact(None, Value::Null)) };
    let x = first_input(f, value, |x| table.certificate(x).size() as u32, target).expect("maximizer exists");
    let witness = json!({ "input": bits(f.arity(), x), "certificate": table.certificate(x) });
    Ok(MeasureValue::exact(Some(target), witness))
}

fn parity_certificate(f: &BooleanFunction, value: Option<bool>) -> Result<MeasureValue> {
    let whole = RestrictedFunction::whole(f);
    let p = parity::parity_certificate_profile(&whole)?;
    let target = match value {
        None => Some(p.c),
        Some(false) => p.c0,
        Some(true) => p.c1,
    };
    let Some(target) = target else { return Ok(MeasureValue::exact(None, Value::Null)) };
    let n = f.arity();
    let size = |x| parity::parity_certificate(&whole, &Gf2Vector::new(n, x)).expect("within budget").0;
    let x = first_input(f, value, size, target).expect("maximizer exists");
    let cert = parity::parity_certificate(&whole, &Gf2Vector::new(n, x))?.1;
    let witness = json!({ "input": bits(n, x), "certificate": cert.coset });
    Ok(MeasureValue::exact(Some(target), witness))
}

pub fn evaluate(an: &mut ParityAnalyzer, f: &BooleanFunction, name: &str, budget: Budget) -> Result<MeasureValue> {
    let n = f.arity();
    let whole = RestrictedFunction::whole(f);
    Ok(match name {
        "d" => {
            let (d, tree) = classical::decision_depth(f)?;
            MeasureValue::exact(Some(d), json!(tree))
        }
        "c" => classical_certificate(f, None)?,
        "c0" => classical_certificate(f, Some(false))?,
        "c1" => classical_certificate(f, Some(true))?,
        "bs" => {
            let (k, x) = classical::block_sensitivity_max(f)?;
            let (_, blocks) = classical::block_sensitivity(f, &x)?;
            MeasureValue::exact(Some(k), json!({ "input": x, "blocks": blocks }))
        }
        "dxor" => {
            let (d, tree) = an.parity_depth(&whole)?;
            MeasureValue::exact(Some(d), json!(tree))
        }
        "cxor" => parity_certificate(f, None)?,
        "c0xor" => parity_certificate(f, Some(false))?,
        "c1xor" => parity_certificate(f, Some(true))?,
        "wbsxor" => {
            let m = an.weak_parity_bs_max(&whole, budget.mode)?;
            let (x, basis) = m.witness.clone();
            MeasureValue { witness: json!({ "input": x, "basis": basis }), ..MeasureValue::measured(m) }
        }
        "bsxor" => MeasureValue::measured(an.parity_bs(f, budget.mode)?),
        "di" | "ci" | "bsi" => {
            let which = match name {
                "di" => ClassicalMeasure::Depth,
                "ci" => ClassicalMeasure::Certificate,
                _ => ClassicalMeasure::BlockSensitivity,
            };
            MeasureValue::measured(classical::symmetrized(which, f, budget.mode, budget.max_exact_n)?)
        }
        other => {
            return Err(Error::Input(format!(
                "unknown measure {other:?} for arity {n}; expected one of {}",
                MEASURES.join(",")
            )))
        }
    })
}
