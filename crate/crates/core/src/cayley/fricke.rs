use serde::Serialize;

use crate::arith::PrimeField;

use super::CayleyError;

/// 2×2 matrix `[[a, b], [c, d]]` over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl Mat2 {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        Self { a, b, c, d }
    }

    pub fn mul(&self, o: &Self, f: &PrimeField) -> Self {
        Self {
            a: f.add(f.mul(self.a, o.a), f.mul(self.b, o.c)),
            b: f.add(f.mul(self.a, o.b), f.mul(self.b, o.d)),
            c: f.add(f.mul(self.c, o.a), f.mul(self.d, o.c)),
            d: f.add(f.mul(self.c, o.b), f.mul(self.d, o.d)),
        }
    }

    pub fn det(&self, f: &PrimeField) -> u64 {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn trace(&self, f: &PrimeField) -> u64 {
        f.add(self.a, self.d)
    }

    /// Inverse of a determinant-one matrix.
    fn adjugate(&self, f: &PrimeField) -> Self {
        Self { a: self.d, b: f.neg(self.b), c: f.neg(self.c), d: self.a }
    }
}

/// Both sides of Fricke's identity for `A, B ∈ SL₂(F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrickeReport {
    pub tr_a: u64,
    pub tr_b: u64,
    pub tr_ab: u64,
    /// `tr A² + tr B² + tr(AB)²` (squares of traces).
    pub lhs: u64,
    /// `tr A · tr B · tr AB + tr[A, B] + 2`.
    pub rhs: u64,
    pub commutator_trace: u64,
}

impl FrickeReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// The trace triple lies on `x² + y² + z² = xyz + 4` exactly when the
    /// commutator has trace 2.
    pub fn on_cayley_cubic(&self) -> bool {
        self.commutator_trace == 2
    }
}

pub fn fricke_check(f: &PrimeField, a: Mat2, b: Mat2) -> Result<FrickeReport, CayleyError> {
    for m in [a, b] {
        let det = m.det(f);
        if det != 1 {
            return Err(CayleyError::NotUnimodular { p: f.modulus(), det });
        }
    }
    let ab = a.mul(&b, f);
    let commutator = ab.mul(&a.adjugate(f), f).mul(&b.adjugate(f), f);
    let (x, y, z) = (a.trace(f), b.trace(f), ab.trace(f));
    let commutator_trace = commutator.trace(f);
    let lhs = f.add(f.add(f.mul(x, x), f.mul(y, y)), f.mul(z, z));
    let rhs = f.add(f.add(f.mul(f.mul(x, y), z), commutator_trace), 2 % f.modulus());
    Ok(FrickeReport { tr_a: x, tr_b: y, tr_ab: z, lhs, rhs, commutator_trace })
}
