use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};

/// A fixed-length vector of canonical residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    spec: FieldSpec,
    entries: Vec<u32>,
}

impl Vector {
    /// Validates that every entry is a canonical residue.
    pub fn new(spec: FieldSpec, entries: Vec<u32>) -> Result<Self> {
        if let Some(&value) = entries.iter().find(|&&v| v >= spec.modulus()) {
            return Err(Error::NonCanonical { value, modulus: spec.modulus() });
        }
        Ok(Self { spec, entries })
    }

    pub(crate) fn from_raw(spec: FieldSpec, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&v| v < spec.modulus()));
        Self { spec, entries }
    }

    pub fn zeros(spec: FieldSpec, len: usize) -> Self {
        Self { spec, entries: vec![0; len] }
    }

    /// Unit vector `e_i`.
    pub fn unit(spec: FieldSpec, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(spec, len);
        v.entries[i] = 1;
        v
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn element(&self, i: usize) -> FieldElement {
        self.spec.element(self.entries[i]).expect("entries are canonical")
    }

    pub fn set(&mut self, i: usize, value: u32) -> Result<()> {
        if value >= self.spec.modulus() {
            return Err(Error::NonCanonical { value, modulus: self.spec.modulus() });
        }
        if i >= self.len() {
            return Err(Error::IndexOutOfRange { index: i, bound: self.len() });
        }
        self.entries[i] = value;
        Ok(())
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [u32] {
        &mut self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Indices of nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect()
    }

    /// Restriction to `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Vector> {
        let entries = indices
            .iter()
            .map(|&i| self.entries.get(i).copied().ok_or(Error::IndexOutOfRange { index: i, bound: self.len() }))
            .collect::<Result<_>>()?;
        Ok(Self { spec: self.spec, entries })
    }

    fn check_conform(&self, other: &Vector, op: &'static str) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch { left: self.spec, right: other.spec });
        }
        if self.len() != other.len() {
            return Err(Error::dims(op, format!("{} vs {}", self.len(), other.len())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_conform(other, "vector add")?;
        let spec = self.spec;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| spec.add(a, b)).collect();
        Ok(Self { spec, entries })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_conform(other, "vector sub")?;
        let spec = self.spec;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| spec.sub(a, b)).collect();
        Ok(Self { spec, entries })
    }

    pub fn scale(&self, alpha: u32) -> Vector {
        let spec = self.spec;
        let alpha = spec.reduce(u64::from(alpha));
        Self { spec, entries: self.entries.iter().map(|&a| spec.mul(a, alpha)).collect() }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}
