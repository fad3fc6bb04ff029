use serde::Serialize;

use super::{factorize, window_pow, ArithError, PrimeField};

/// `c0 + c1·w` with `w² = n`, `n` the field's fixed non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fp2Element {
    pub c0: u64,
    pub c1: u64,
}

impl Fp2Element {
    pub const ONE: Self = Self { c0: 1, c1: 0 };
    pub const ZERO: Self = Self { c0: 0, c1: 0 };

    /// True when the element lies in the prime subfield.
    pub fn is_base(&self) -> bool {
        self.c1 == 0
    }
}

/// The quadratic extension `F_p[w]/(w² − n)` where `n` is the smallest
/// positive quadratic non-residue mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fp2Field {
    base: PrimeField,
    nonresidue: u64,
}

impl Fp2Field {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        Ok(Self::over(PrimeField::new(p)?))
    }

    pub fn over(base: PrimeField) -> Self {
        let nonresidue = (2..base.modulus())
            .find(|&n| base.legendre(n) == -1)
            .expect("every odd prime has a non-residue");
        Self { base, nonresidue }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    /// Order of the multiplicative group, `p² − 1`.
    pub fn group_order(&self) -> u64 {
        let p = self.base.modulus();
        p * p - 1
    }

    pub fn from_base(&self, a: u64) -> Fp2Element {
        Fp2Element { c0: a % self.base.modulus(), c1: 0 }
    }

    pub fn add(&self, a: Fp2Element, b: Fp2Element) -> Fp2Element {
        let f = &self.base;
        Fp2Element { c0: f.add(a.c0, b.c0), c1: f.add(a.c1, b.c1) }
    }

    pub fn sub(&self, a: Fp2Element, b: Fp2Element) -> Fp2Element {
        let f = &self.base;
        Fp2Element { c0: f.sub(a.c0, b.c0), c1: f.sub(a.c1, b.c1) }
    }

    pub fn neg(&self, a: Fp2Element) -> Fp2Element {
        Fp2Element { c0: self.base.neg(a.c0), c1: self.base.neg(a.c1) }
    }

    pub fn mul(&self, a: Fp2Element, b: Fp2Element) -> Fp2Element {
        let p = self.base.modulus();
        let c0 = (a.c0 * b.c0 + (a.c1 * b.c1 % p) * self.nonresidue) % p;
        let c1 = (a.c0 * b.c1 + a.c1 * b.c0) % p;
        Fp2Element { c0, c1 }
    }

    pub fn pow(&self, a: Fp2Element, e: u64) -> Fp2Element {
        window_pow(a, e, Fp2Element::ONE, |x, y| self.mul(x, y))
    }

    /// Frobenius `a ↦ a^p`, i.e. `c0 + c1 w ↦ c0 − c1 w`.
    pub fn conjugate(&self, a: Fp2Element) -> Fp2Element {
        Fp2Element { c0: a.c0, c1: self.base.neg(a.c1) }
    }

    /// Norm `a · a^p = c0² − n c1²`, an element of `F_p`.
    pub fn norm(&self, a: Fp2Element) -> u64 {
        let f = &self.base;
        f.sub(f.mul(a.c0, a.c0), f.mul(self.nonresidue, f.mul(a.c1, a.c1)))
    }

    pub fn inv(&self, a: Fp2Element) -> Option<Fp2Element> {
        let n_inv = self.base.inv(self.norm(a))?;
        let c = self.conjugate(a);
        Some(Fp2Element { c0: self.base.mul(c.c0, n_inv), c1: self.base.mul(c.c1, n_inv) })
    }

    /// True when `a` has multiplicative order exactly `p² − 1`.
    pub fn is_generator(&self, a: Fp2Element) -> bool {
        let order = self.group_order();
        if self.pow(a, order) != Fp2Element::ONE {
            return false;
        }
        factorize(order)
            .primes()
            .all(|q| self.pow(a, order / q) != Fp2Element::ONE)
    }

    /// Smallest generator of `F_{p²}^×` in the scan order
    /// `c1 = 1, 2, …` then `c0 = 0, 1, …`.
    pub fn generator(&self) -> Fp2Element {
        let p = self.base.modulus();
        let order = self.group_order();
        let primes: Vec<u64> = factorize(order).primes().collect();
        (1..p)
            .flat_map(|c1| (0..p).map(move |c0| Fp2Element { c0, c1 }))
            .find(|&g| primes.iter().all(|&q| self.pow(g, order / q) != Fp2Element::ONE))
            .expect("F_{p^2}^* is cyclic")
    }

    /// `g^u + g^{-u}` with the exponent taken mod `p² − 1`.
    pub fn trace_of_power(&self, g: Fp2Element, u: u64) -> Fp2Element {
        let order = self.group_order();
        let gu = self.pow(g, u % order);
        let inv = self.inv(gu).expect("powers of a unit are units");
        self.add(gu, inv)
    }
}
