//! Scalar arithmetic over GF(2) and prime fields GF(p).
//!
//! Hot loops in the matrix code work on raw `u32` residues through the
//! `FieldSpec` methods; `FieldElement` is the checked, self-describing form
//! that rejects mixed-field operands.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Gf2,
    Prime,
}

/// The scalar domain: GF(2) or GF(p) for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    modulus: u32,
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec { modulus: 2 };

    pub fn gf2() -> Self {
        Self::GF2
    }

    /// Builds GF(p). `p = 2` yields GF(2); any other modulus must be an odd
    /// prime below 2^31.
    pub fn prime(p: u32) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Self { modulus: p })
    }

    pub fn kind(self) -> FieldKind {
        if self.modulus == 2 {
            FieldKind::Gf2
        } else {
            FieldKind::Prime
        }
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn is_gf2(self) -> bool {
        self.modulus == 2
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { spec: self, value: 0 }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { spec: self, value: 1 }
    }

    /// Wraps a canonical residue, rejecting values `>= modulus`.
    pub fn element(self, value: u32) -> Result<FieldElement> {
        if value >= self.modulus {
            return Err(Error::NonCanonical { value, modulus: self.modulus });
        }
        Ok(FieldElement { spec: self, value })
    }

    /// Reduces an arbitrary integer into the field.
    pub fn reduce(self, value: u64) -> u32 {
        (value % u64::from(self.modulus)) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.modulus)) as u32
    }

    /// `a - b * c`, the elimination step.
    #[inline]
    pub fn sub_mul(self, a: u32, b: u32, c: u32) -> u32 {
        self.sub(a, self.mul(b, c))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let p = i64::from(self.modulus);
        let (mut r0, mut r1) = (p, i64::from(a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(p) as u32)
    }

    #[inline]
    pub fn div(self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

impl fmt::Display for FieldSpec {
    /// Matches the matrix file header syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Gf2 => write!(f, "gf2"),
            FieldKind::Prime => write!(f, "gfp {}", self.modulus),
        }
    }
}

/// A canonical residue tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    value: u32,
}

impl FieldElement {
    pub fn spec(self) -> FieldSpec {
        self.spec
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: FieldElement) -> Result<FieldSpec> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch { left: self.spec, right: other.spec });
        }
        Ok(self.spec)
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement> {
        let spec = self.same_field(other)?;
        Ok(FieldElement { spec, value: spec.add(self.value, other.value) })
    }

    pub fn try_sub(self, other: FieldElement) -> Result<FieldElement> {
        let spec = self.same_field(other)?;
        Ok(FieldElement { spec, value: spec.sub(self.value, other.value) })
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement> {
        let spec = self.same_field(other)?;
        Ok(FieldElement { spec, value: spec.mul(self.value, other.value) })
    }

    pub fn inv(self) -> Result<FieldElement> {
        Ok(FieldElement { spec: self.spec, value: self.spec.inv(self.value)? })
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement { spec: self.spec, value: self.spec.neg(self.value) }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let n = u64::from(n);
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
