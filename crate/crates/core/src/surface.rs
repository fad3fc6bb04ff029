//! Points and symmetries of the level surface `x² + y² + z² − a·xyz = k`
//! over `F_p`.
//!
//! Two normalizations are common: `a = 3` (integer base point `(1,1,1)`)
//! and `a = 1` (base point `(3,3,3)`); they are related by scaling, see
//! [`LevelSurface::rescaled`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, PrimeField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Field(#[from] ArithError),
    #[error("cubic coefficient a must be nonzero mod p")]
    ZeroCoefficient,
    #[error("{triple} is not on the surface x^2+y^2+z^2-{a}xyz={k} mod {p}")]
    NotOnSurface { triple: Triple, p: u64, k: u64, a: u64 },
    #[error("operation requires level k = 0, got k = {0}")]
    NonzeroLevel(u64),
    #[error("unknown move `{0}`")]
    UnknownMove(String),
}

/// A point of `F_p³`, coordinates in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Triple {
    pub const ORIGIN: Triple = Triple { x: 0, y: 0, z: 0 };

    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Self { x, y, z }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// Symmetries of a level surface.
///
/// * `M1..M3`: Vieta moves, replacing one coordinate by the other root.
/// * `D1..D3`: Dehn twists `Dj = T23 ∘ Mj`; `D1` is an involution and
///   `D3 = D2⁻¹`.
/// * `T12, T23, T13`: coordinate transpositions.
/// * `S12, S13, S23`: double sign changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Move {
    M1,
    M2,
    M3,
    D1,
    D2,
    D3,
    T12,
    T23,
    T13,
    S12,
    S13,
    S23,
}

impl Move {
    pub const ALL: [Move; 12] = [
        Move::M1,
        Move::M2,
        Move::M3,
        Move::D1,
        Move::D2,
        Move::D3,
        Move::T12,
        Move::T23,
        Move::T13,
        Move::S12,
        Move::S13,
        Move::S23,
    ];

    pub fn inverse(self) -> Move {
        match self {
            Move::D2 => Move::D3,
            Move::D3 => Move::D2,
            m => m,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Move::M1 => "M1",
            Move::M2 => "M2",
            Move::M3 => "M3",
            Move::D1 => "D1",
            Move::D2 => "D2",
            Move::D3 => "D3",
            Move::T12 => "T12",
            Move::T23 => "T23",
            Move::T13 => "T13",
            Move::S12 => "S12",
            Move::S13 => "S13",
            Move::S23 => "S23",
        }
    }

    pub fn is_sign_change(self) -> bool {
        matches!(self, Move::S12 | Move::S13 | Move::S23)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Move {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Move::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SurfaceError::UnknownMove(s.to_owned()))
    }
}

/// The surface `x² + y² + z² − a·xyz = k` over `F_p`, `a ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSurface {
    field: PrimeField,
    k: u64,
    a: u64,
}

impl LevelSurface {
    /// Builds the surface; `k` and `a` are reduced mod `p`.
    pub fn new(p: u64, k: i64, a: i64) -> Result<Self, SurfaceError> {
        let field = PrimeField::new(p)?;
        let a = field.reduce(a);
        if a == 0 {
            return Err(SurfaceError::ZeroCoefficient);
        }
        Ok(Self { field, k: field.reduce(k), a })
    }

    /// The Markoff surface `x² + y² + z² = 3xyz`.
    pub fn markoff(p: u64) -> Result<Self, SurfaceError> {
        Self::new(p, 0, 3)
    }

    /// The Cayley cubic `x² + y² + z² = xyz + 4`.
    pub fn cayley(p: u64) -> Result<Self, SurfaceError> {
        Self::new(p, 4, 1)
    }

    /// The level `k ≡ 4/a²` at which the surface degenerates to a Cayley cubic.
    pub fn degenerate_level(p: u64, a: i64) -> Result<u64, SurfaceError> {
        let field = PrimeField::new(p)?;
        let a = field.reduce(a);
        let a2_inv = field.inv(field.mul(a, a)).ok_or(SurfaceError::ZeroCoefficient)?;
        Ok(field.mul(4, a2_inv))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// The surface `ξ² + η² + ζ² − ab·ξηζ = k/b²` reached by the substitution
    /// `(x,y,z) = b·(ξ,η,ζ)`.
    pub fn rescaled(&self, b: u64) -> Result<Self, SurfaceError> {
        let f = self.field;
        let b_inv = f.inv(b).ok_or(SurfaceError::ZeroCoefficient)?;
        Ok(Self { field: f, k: f.mul(self.k, f.mul(b_inv, b_inv)), a: f.mul(self.a, b % f.modulus()) })
    }

    pub fn on_surface(&self, t: Triple) -> bool {
        let f = &self.field;
        let (x, y, z) = (t.x as u64, t.y as u64, t.z as u64);
        let p = f.modulus();
        if x >= p || y >= p || z >= p {
            return false;
        }
        let squares = (x * x + y * y + z * z) % p;
        let cubic = f.mul(self.a, f.mul(x, f.mul(y, z)));
        f.sub(squares, cubic) == self.k
    }

    /// `a·u·v − w`, the other root of the quadratic in one coordinate.
    #[inline]
    fn vieta(&self, u: u32, v: u32, w: u32) -> u32 {
        let f = &self.field;
        let prod = f.mul(self.a, f.mul(u as u64, v as u64));
        f.sub(prod, w as u64) as u32
    }

    #[inline]
    fn negate(&self, c: u32) -> u32 {
        self.field.neg(c as u64) as u32
    }

    /// Applies `m` without checking that `t` lies on the surface.
    #[inline]
    pub fn image(&self, m: Move, t: Triple) -> Triple {
        let Triple { x, y, z } = t;
        match m {
            Move::M1 => Triple::new(self.vieta(y, z, x), y, z),
            Move::M2 => Triple::new(x, self.vieta(x, z, y), z),
            Move::M3 => Triple::new(x, y, self.vieta(x, y, z)),
            Move::D1 => Triple::new(self.vieta(y, z, x), z, y),
            Move::D2 => Triple::new(x, z, self.vieta(x, z, y)),
            Move::D3 => Triple::new(x, self.vieta(x, y, z), y),
            Move::T12 => Triple::new(y, x, z),
            Move::T23 => Triple::new(x, z, y),
            Move::T13 => Triple::new(z, y, x),
            Move::S12 => Triple::new(self.negate(x), self.negate(y), z),
            Move::S13 => Triple::new(self.negate(x), y, self.negate(z)),
            Move::S23 => Triple::new(x, self.negate(y), self.negate(z)),
        }
    }

    /// Applies `m` to a point of the surface.
    pub fn apply_move(&self, m: Move, t: Triple) -> Result<Triple, SurfaceError> {
        if !self.on_surface(t) {
            return Err(SurfaceError::NotOnSurface { triple: t, p: self.p(), k: self.k, a: self.a });
        }
        Ok(self.image(m, t))
    }

    /// Fixed points of `D1` on the level-0 surface: the origin and, when 8 is
    /// a square, `(4, ±√8, ±√8)/a` with matching signs. Sorted.
    pub fn fixed_points_d1(&self) -> Result<Vec<Triple>, SurfaceError> {
        if self.k != 0 {
            return Err(SurfaceError::NonzeroLevel(self.k));
        }
        let f = &self.field;
        let mut points = vec![Triple::ORIGIN];
        if let Some(r) = f.sqrt(8) {
            let a_inv = f.inv(self.a).expect("a is a unit");
            let x = f.mul(4, a_inv) as u32;
            for root in [r, f.neg(r)] {
                let y = f.mul(root, a_inv) as u32;
                points.push(Triple::new(x, y, y));
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(points)
    }

    /// Closed-form number of points,
    /// `p² + (3 + (k/p))·((a²k − 4)/p)·p + 1`.
    pub fn count_solutions_formula(&self) -> u64 {
        let f = &self.field;
        let p = f.modulus() as i64;
        let chi_k = f.legendre(self.k) as i64;
        let disc = f.sub(f.mul(f.mul(self.a, self.a), self.k), 4);
        let chi_disc = f.legendre(disc) as i64;
        (p * p + (3 + chi_k) * chi_disc * p + 1) as u64
    }

    /// All points in lexicographic order, found by solving the quadratic in
    /// `z` for every `(x, y)`.
    pub fn enumerate_solutions(&self) -> Vec<Triple> {
        let f = &self.field;
        let p = f.modulus();
        let roots = f.sqrt_table();
        let inv2 = f.inv(2).expect("p is odd");
        let mut out = Vec::with_capacity(self.count_solutions_formula() as usize);
        for x in 0..p {
            let ax = f.mul(self.a, x);
            for y in 0..p {
                // z² − (a x y) z + (x² + y² − k) = 0
                let b = f.mul(ax, y);
                let c = f.sub((x * x + y * y) % p, self.k);
                let disc = f.sub(f.mul(b, b), f.mul(4, c));
                let r = roots[disc as usize];
                if r == u32::MAX {
                    continue;
                }
                let r = r as u64;
                let z1 = f.mul(f.add(b, r), inv2);
                let z2 = f.mul(f.sub(b, r), inv2);
                let (lo, hi) = if z1 <= z2 { (z1, z2) } else { (z2, z1) };
                out.push(Triple::new(x as u32, y as u32, lo as u32));
                if hi != lo {
                    out.push(Triple::new(x as u32, y as u32, hi as u32));
                }
            }
        }
        out
    }
}
