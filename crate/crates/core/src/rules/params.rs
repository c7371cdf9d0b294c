//! Rule parameters.
//!
//! On the wire a parameter is plain JSON: an integer, a list of integers, a
//! complex number `[re, im]`, a list of complex numbers or an integer
//! matrix. Integer lists and complex numbers look alike, so decoding is
//! driven by the rule's parameter schema.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RuleError;
use crate::phase::PhaseVector;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(usize),
    Ints(Vec<usize>),
    Complex(Complex64),
    Complexes(Vec<Complex64>),
    Matrix(Vec<Vec<usize>>),
}

/// Expected type of a parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Int,
    Ints,
    Complex,
    Complexes,
    Matrix,
}

impl ParamKind {
    fn decode(self, v: &serde_json::Value) -> Result<ParamValue, serde_json::Error> {
        Ok(match self {
            ParamKind::Int => ParamValue::Int(usize::deserialize(v)?),
            ParamKind::Ints => ParamValue::Ints(Vec::deserialize(v)?),
            ParamKind::Complex => ParamValue::Complex(Complex64::deserialize(v)?),
            ParamKind::Complexes => ParamValue::Complexes(Vec::deserialize(v)?),
            ParamKind::Matrix => ParamValue::Matrix(Vec::deserialize(v)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub doc: &'static str,
}

/// Named parameters of a rule instance.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, ParamValue>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, name: &str, v: impl Into<ParamValue>) -> Self {
        self.0.insert(name.to_string(), v.into());
        self
    }

    pub fn set(&mut self, name: &str, v: impl Into<ParamValue>) {
        self.0.insert(name.to_string(), v.into());
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ParamValue)> {
        self.0.iter()
    }

    fn missing(name: &str) -> RuleError {
        RuleError::MissingParam(name.to_string())
    }

    fn wrong(name: &str, want: &str) -> RuleError {
        RuleError::WrongType { name: name.to_string(), expected: want.to_string() }
    }

    pub fn int(&self, name: &str) -> Result<usize, RuleError> {
        match self.get(name).ok_or_else(|| Self::missing(name))? {
            ParamValue::Int(v) => Ok(*v),
            _ => Err(Self::wrong(name, "integer")),
        }
    }

    pub fn ints(&self, name: &str) -> Result<Vec<usize>, RuleError> {
        match self.get(name).ok_or_else(|| Self::missing(name))? {
            ParamValue::Ints(v) => Ok(v.clone()),
            _ => Err(Self::wrong(name, "list of integers")),
        }
    }

    pub fn complex(&self, name: &str) -> Result<Complex64, RuleError> {
        match self.get(name).ok_or_else(|| Self::missing(name))? {
            ParamValue::Complex(v) => Ok(*v),
            _ => Err(Self::wrong(name, "complex number")),
        }
    }

    pub fn complexes(&self, name: &str) -> Result<Vec<Complex64>, RuleError> {
        match self.get(name).ok_or_else(|| Self::missing(name))? {
            ParamValue::Complexes(v) => Ok(v.clone()),
            _ => Err(Self::wrong(name, "list of complex numbers")),
        }
    }

    /// A complex list read as a phase vector of length `len`.
    pub fn phase(&self, name: &str, len: usize) -> Result<PhaseVector, RuleError> {
        let v = self.complexes(name)?;
        if v.len() != len {
            return Err(RuleError::SideCondition {
                rule: String::new(),
                condition: format!("phase vector `{name}` must have length {len}, found {}", v.len()),
            });
        }
        PhaseVector::new(v)
            .map_err(|e| RuleError::SideCondition { rule: String::new(), condition: format!("`{name}`: {e}") })
    }

    /// Decodes a JSON object against a schema; unknown names are rejected.
    pub fn from_json(schema: &[ParamSpec], v: &serde_json::Value) -> Result<Params, RuleError> {
        let obj = v.as_object().ok_or_else(|| RuleError::Malformed("params must be a JSON object".into()))?;
        let mut out = Params::new();
        for (name, value) in obj {
            let spec = schema
                .iter()
                .find(|s| s.name == name)
                .ok_or_else(|| RuleError::Malformed(format!("unknown parameter `{name}`")))?;
            let decoded =
                spec.kind.decode(value).map_err(|e| RuleError::Malformed(format!("parameter `{name}`: {e}")))?;
            out.0.insert(name.clone(), decoded);
        }
        Ok(out)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v)
    }
}

impl From<Vec<usize>> for ParamValue {
    fn from(v: Vec<usize>) -> Self {
        ParamValue::Ints(v)
    }
}

impl From<Complex64> for ParamValue {
    fn from(v: Complex64) -> Self {
        ParamValue::Complex(v)
    }
}

impl From<Vec<Complex64>> for ParamValue {
    fn from(v: Vec<Complex64>) -> Self {
        ParamValue::Complexes(v)
    }
}

impl From<&PhaseVector> for ParamValue {
    fn from(v: &PhaseVector) -> Self {
        ParamValue::Complexes(v.as_slice().to_vec())
    }
}

impl From<Vec<Vec<usize>>> for ParamValue {
    fn from(v: Vec<Vec<usize>>) -> Self {
        ParamValue::Matrix(v)
    }
}
