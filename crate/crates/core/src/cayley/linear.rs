use serde::Serialize;

use crate::arith::{Fp2Element, Fp2Field};
use crate::surface::Move;

use super::CayleyError;

/// Integer 2×2 matrix `[[a, b], [c, d]]` acting on exponent vectors `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MoveMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl MoveMatrix {
    pub const IDENTITY: Self = Self::new(1, 0, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Entries reduced into `0..n`.
    pub fn reduce(&self, n: i64) -> Self {
        Self::new(self.a.rem_euclid(n), self.b.rem_euclid(n), self.c.rem_euclid(n), self.d.rem_euclid(n))
    }

    /// `(u, v) ↦ M (u, v)ᵀ mod n`.
    pub fn apply(&self, e: ExponentPair, n: u64) -> ExponentPair {
        let n = n as i128;
        let (u, v) = (e.u as i128, e.v as i128);
        let row = |x: i64, y: i64| ((x as i128 * u + y as i128 * v).rem_euclid(n)) as u64;
        ExponentPair { u: row(self.a, self.b), v: row(self.c, self.d) }
    }
}

/// Matrix of a Markoff move, transposition or Dehn twist on the exponents.
/// Double sign changes act by translation and are rejected.
pub fn move_matrix(m: Move) -> Result<MoveMatrix, CayleyError> {
    let t23 = MoveMatrix::new(-1, 0, 1, 1);
    let m1 = MoveMatrix::new(1, 2, 0, -1);
    let m2 = MoveMatrix::new(1, 0, -2, -1);
    let m3 = MoveMatrix::new(1, 0, 0, -1);
    Ok(match m {
        Move::M1 => m1,
        Move::M2 => m2,
        Move::M3 => m3,
        Move::T12 => MoveMatrix::new(0, 1, 1, 0),
        Move::T23 => t23,
        Move::T13 => MoveMatrix::new(1, 1, 0, -1),
        Move::D1 => t23.mul(&m1),
        Move::D2 => t23.mul(&m2),
        Move::D3 => t23.mul(&m3),
        Move::S12 | Move::S13 | Move::S23 => return Err(CayleyError::NotLinear(m)),
    })
}

/// Exponents `(u, v)` modulo `p² − 1`, standing for the point
/// `(tr g^u, tr g^v, tr g^{u+v})` with `tr w = w + w⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentPair {
    pub u: u64,
    pub v: u64,
}

impl ExponentPair {
    /// `(u, v)` and `(−u, −v)` describe the same point; keep the smaller.
    pub fn canonical(self, n: u64) -> Self {
        let neg = Self { u: (n - self.u % n) % n, v: (n - self.v % n) % n };
        self.min(neg)
    }
}

/// The exponent model of the Cayley cubic over `F_{p²}` with a fixed
/// generator.
#[derive(Clone, Debug)]
pub struct ExponentModel {
    field: Fp2Field,
    generator: Fp2Element,
}

impl ExponentModel {
    pub fn new(p: u64) -> Result<Self, CayleyError> {
        let field = Fp2Field::new(p)?;
        Ok(Self { generator: field.generator(), field })
    }

    pub fn field(&self) -> &Fp2Field {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.group_order()
    }

    pub fn point(&self, e: ExponentPair) -> [Fp2Element; 3] {
        let g = self.generator;
        [
            self.field.trace_of_power(g, e.u),
            self.field.trace_of_power(g, e.v),
            self.field.trace_of_power(g, e.u + e.v),
        ]
    }

    /// A move applied directly to a point of `x² + y² + z² = xyz + 4` over
    /// `F_{p²}`.
    pub fn move_point(&self, m: Move, [x, y, z]: [Fp2Element; 3]) -> [Fp2Element; 3] {
        let f = &self.field;
        let vieta = |s: Fp2Element, t: Fp2Element, r: Fp2Element| f.sub(f.mul(s, t), r);
        match m {
            Move::M1 => [vieta(y, z, x), y, z],
            Move::M2 => [x, vieta(x, z, y), z],
            Move::M3 => [x, y, vieta(x, y, z)],
            Move::D1 => [vieta(y, z, x), z, y],
            Move::D2 => [x, z, vieta(x, z, y)],
            Move::D3 => [x, vieta(x, y, z), y],
            Move::T12 => [y, x, z],
            Move::T23 => [x, z, y],
            Move::T13 => [z, y, x],
            Move::S12 => [f.neg(x), f.neg(y), z],
            Move::S13 => [f.neg(x), y, f.neg(z)],
            Move::S23 => [x, f.neg(y), f.neg(z)],
        }
    }

    /// The move on exponents: a matrix, or a translation by `(p² − 1)/2` for
    /// sign changes.
    pub fn move_exponents(&self, m: Move, e: ExponentPair) -> ExponentPair {
        let n = self.order();
        let h = n / 2;
        match m {
            Move::S12 => ExponentPair { u: (e.u + h) % n, v: (e.v + h) % n },
            Move::S13 => ExponentPair { u: (e.u + h) % n, v: e.v },
            Move::S23 => ExponentPair { u: e.u, v: (e.v + h) % n },
            _ => move_matrix(m).expect("linear move").apply(e, n),
        }
    }

    /// Whether moving the point and moving the exponents agree.
    pub fn check(&self, e: ExponentPair, m: Move) -> bool {
        self.move_point(m, self.point(e)) == self.point(self.move_exponents(m, e))
    }
}

/// [`ExponentModel::check`] for a single case.
pub fn linear_action_check(p: u64, u: u64, v: u64, m: Move) -> Result<bool, CayleyError> {
    let model = ExponentModel::new(p)?;
    let n = model.order();
    Ok(model.check(ExponentPair { u: u % n, v: v % n }, m))
}
