//! JSON job inputs for the three families.
//!
//! Field elements use the encoding of [`crate::field`]; a bare number or
//! rational string is accepted for rational entries. Every element is read
//! into the context built from `radicands`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::hopf::{HopfParam, WitnessFunction, DEFAULT_HEIGHT_BOUND};
use crate::k3::{IntersectionForm, PeriodPoint};
use crate::linalg::FieldMatrix;
use crate::torus::SConvention;

fn context(radicands: &[i64]) -> Result<Arc<FieldContext>> {
    FieldContext::new(radicands.iter().copied())
}

fn element(ctx: &Arc<FieldContext>, v: &Value) -> Result<FieldElement> {
    FieldElement::from_json_in(ctx, v)
}

fn matrix(ctx: &Arc<FieldContext>, rows: &[Vec<Value>]) -> Result<FieldMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|v| element(ctx, v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FieldMatrix::from_rows(ctx, rows)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusInput {
    #[serde(default)]
    pub radicands: Vec<i64>,
    #[serde(rename = "Z")]
    pub z: Vec<Vec<Value>>,
    #[serde(default)]
    pub convention: Option<SConvention>,
}

impl TorusInput {
    pub fn from_json_str(text: &str) -> Result<Self> {
        parse(text)
    }

    /// The matrix `Z`, not yet checked for `Im Z > 0`.
    pub fn matrix(&self) -> Result<FieldMatrix> {
        let m = matrix(&context(&self.radicands)?, &self.z)?;
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfInput {
    #[serde(default)]
    pub radicands: Vec<i64>,
    pub t: Vec<Vec<Value>>,
    #[serde(default = "default_bound")]
    pub height_bound: u64,
    /// Function to check with `verify-witness`; defaults to the one the
    /// classifier constructs.
    #[serde(default)]
    pub witness: Option<Value>,
}

fn default_bound() -> u64 {
    DEFAULT_HEIGHT_BOUND
}

impl HopfInput {
    pub fn from_json_str(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn param(&self) -> Result<HopfParam> {
        HopfParam::new(matrix(&context(&self.radicands)?, &self.t)?)
    }

    pub fn witness_function(&self) -> Result<Option<WitnessFunction>> {
        self.witness
            .as_ref()
            .map(|v| serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string())))
            .transpose()
    }
}

/// `"preset:k3"`, `"preset:uu"`, `"preset:u"` or an integer matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Preset(String),
    Matrix(Vec<Vec<i64>>),
}

impl FormSpec {
    pub fn resolve(&self) -> Result<IntersectionForm> {
        match self {
            FormSpec::Preset(s) => {
                let name = s
                    .strip_prefix("preset:")
                    .ok_or_else(|| Error::Parse(format!("form must be `preset:NAME` or a matrix, got {s:?}")))?;
                IntersectionForm::preset(name)
            }
            FormSpec::Matrix(rows) => IntersectionForm::from_i64(rows),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct K3Input {
    pub form: FormSpec,
    #[serde(default)]
    pub radicands: Vec<i64>,
    pub lambda: Vec<Value>,
}

impl K3Input {
    pub fn from_json_str(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn resolve(&self) -> Result<(IntersectionForm, PeriodPoint)> {
        let ctx = context(&self.radicands)?;
        let lambda = self.lambda.iter().map(|v| element(&ctx, v)).collect::<Result<Vec<_>>>()?;
        Ok((self.form.resolve()?, PeriodPoint::new(lambda)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_input() {
        let text = r#"{"radicands": [-1, 2], "Z": [[{"-1": "1"}, {"2": "1"}], [0, {"-1": "1"}]]}"#;
        let z = TorusInput::from_json_str(text).unwrap().matrix().unwrap();
        assert_eq!(z, crate::torus::examples::shafarevich().matrix().clone());
    }

    #[test]
    fn hopf_input_defaults() {
        let inp = HopfInput::from_json_str(r#"{"t": [["3", 0], [0, 5]]}"#).unwrap();
        assert_eq!(inp.height_bound, DEFAULT_HEIGHT_BOUND);
        assert_eq!(inp.param().unwrap(), crate::hopf::examples::diag35());
        assert_eq!(inp.witness_function().unwrap(), None);
    }

    #[test]
    fn hopf_witness_input() {
        let text = r#"{"t": [[2, 0], [0, 8]], "witness": {"kind": "PowerQuotient", "m": 3, "n": 1}}"#;
        let w = HopfInput::from_json_str(text).unwrap().witness_function().unwrap();
        assert_eq!(w, Some(WitnessFunction::PowerQuotient { m: 3, n: 1 }));
    }

    #[test]
    fn k3_input() {
        let text = r#"{"form": "preset:uu", "radicands": [2], "lambda": [1, {"2": "1"}, {"2": "1"}, -1]}"#;
        let (form, p) = K3Input::from_json_str(text).unwrap().resolve().unwrap();
        assert_eq!(form, IntersectionForm::uu());
        assert_eq!(p, crate::k3::examples::special_uu());
        let text = r#"{"form": [[0, 1], [1, 0]], "lambda": [1, 0]}"#;
        let (form, _) = K3Input::from_json_str(text).unwrap().resolve().unwrap();
        assert_eq!(form.matrix, IntersectionForm::u().matrix);
        assert!(K3Input::from_json_str(r#"{"form": "k3", "lambda": [1]}"#).unwrap().resolve().is_err());
    }
}
