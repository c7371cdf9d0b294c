//! Phase vectors labelling ZX Z-spiders.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    #[error("phase vector is empty")]
    Empty,
    #[error("phase vector must start with exactly 1, found {0}")]
    LeadingEntry(Complex64),
    #[error("phase vector has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
}

/// The parameter `r` of a Z-spider: a complex vector of length `a` whose
/// first entry is exactly one.
///
/// The full vector is stored, leading one included, so index arithmetic in
/// the rules reads literally (`r[k]` is the weight of `|k..k><k..k|`).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PhaseVector(Vec<Complex64>);

impl PhaseVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self, PhaseError> {
        match entries.first() {
            None => Err(PhaseError::Empty),
            Some(r0) if *r0 != Complex64::new(1.0, 0.0) => Err(PhaseError::LeadingEntry(*r0)),
            Some(_) => Ok(PhaseVector(entries)),
        }
    }

    /// The phase-free vector `(1, 1, ..., 1)` of length `a`.
    pub fn phase_free(a: usize) -> Self {
        PhaseVector(vec![Complex64::new(1.0, 0.0); a.max(1)])
    }

    /// Builds `(1, tail...)`.
    pub fn from_tail(tail: &[Complex64]) -> Self {
        let mut v = Vec::with_capacity(tail.len() + 1);
        v.push(Complex64::new(1.0, 0.0));
        v.extend_from_slice(tail);
        PhaseVector(v)
    }

    /// Divides by the leading entry and pins it back to exactly one.
    ///
    /// Returns the factor that was divided out, or `None` when the leading
    /// entry is zero.
    pub fn normalized(entries: &[Complex64]) -> Option<(Complex64, PhaseVector)> {
        let r0 = *entries.first()?;
        if r0 == Complex64::new(0.0, 0.0) {
            return None;
        }
        let mut v: Vec<Complex64> = entries.iter().map(|x| x / r0).collect();
        v[0] = Complex64::new(1.0, 0.0);
        Some((r0, PhaseVector(v)))
    }

    /// Real-valued convenience constructor, mostly for tests and examples.
    pub fn real(entries: &[f64]) -> Result<Self, PhaseError> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn get(&self, k: usize) -> Complex64 {
        self.0[k]
    }

    /// `(r_0, r_{a-1}, ..., r_1)`: the vector indexed by `-k mod a`.
    pub fn reversed(&self) -> PhaseVector {
        let a = self.0.len();
        PhaseVector((0..a).map(|k| self.0[(a - k) % a]).collect())
    }

    pub fn conj(&self) -> PhaseVector {
        PhaseVector(self.0.iter().map(|x| x.conj()).collect())
    }

    pub fn is_phase_free(&self) -> bool {
        self.0.iter().all(|x| *x == Complex64::new(1.0, 0.0))
    }
}

impl<'de> Deserialize<'de> for PhaseVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Complex64>::deserialize(d)?;
        PhaseVector::new(v).map_err(serde::de::Error::custom)
    }
}
