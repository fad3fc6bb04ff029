//! Exact arithmetic over `F_p` and `F_{p^2}`, quadratic residues, and
//! factorization of small integers.
//!
//! Every residue is stored in `[0, p)`. Moduli are bounded by
//! [`MAX_MODULUS`] so that a product of two residues always fits in a `u64`.

mod factor;
mod fp2;

pub use factor::{divisors_of, factorize, Factorization};
pub use fp2::{Fp2Element, Fp2Field};

use serde::Serialize;
use thiserror::Error;

/// Largest modulus accepted by [`PrimeField`]; keeps `a * b` below `2^62`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too small (need p >= 5)")]
    TooSmall(u64),
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    TooLarge(u64),
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// All primes in `lo..=hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Fixed-window (4-bit) left-to-right exponentiation over any monoid.
pub(crate) fn window_pow<T: Copy>(base: T, exp: u64, one: T, mul: impl Fn(T, T) -> T) -> T {
    const WINDOW: u32 = 4;
    if exp == 0 {
        return one;
    }
    let mut table = [one; 1 << WINDOW];
    for i in 1..table.len() {
        table[i] = mul(table[i - 1], base);
    }
    let bits = u64::BITS - exp.leading_zeros();
    let digits = bits.div_ceil(WINDOW);
    let mut acc = one;
    for d in (0..digits).rev() {
        if d + 1 != digits {
            for _ in 0..WINDOW {
                acc = mul(acc, acc);
            }
        }
        let digit = ((exp >> (d * WINDOW)) & ((1 << WINDOW) - 1)) as usize;
        if digit != 0 {
            acc = mul(acc, table[digit]);
        }
    }
    acc
}

/// `base^exp mod m` for `m < 2^32`.
pub fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    debug_assert!(m > 0 && m <= 1 << 32);
    if m == 1 {
        return 0;
    }
    window_pow(base % m, exp, 1, |a, b| a * b % m)
}

/// Jacobi symbol `(a/n)` for odd `n`, by the binary reciprocity algorithm.
pub fn jacobi(a: u64, n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let (mut a, mut n) = (a % n, n);
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: u64, p: u64) -> i8 {
    jacobi(a, p)
}

/// Canonical square root of `a` mod the odd prime `p`: the root in
/// `[0, (p-1)/2]`, or `None` when `a` is a non-residue. Tonelli–Shanks.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    debug_assert_eq!(root * root % p, a);
    Some(root.min(p - root))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == -1).expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

/// `Σ_z (z² − s / p)` computed term by term. Equals `p − 1` for `s ≡ 0` and
/// `−1` otherwise; kept as a brute-force sum so it can check the counting
/// formula independently.
pub fn shifted_square_sum(s: u64, p: u64) -> i64 {
    let s = s % p;
    (0..p)
        .map(|z| legendre((z * z % p + p - s) % p, p) as i64)
        .sum()
}

/// The prime field `F_p` for a prime `5 <= p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p > MAX_MODULUS {
            return Err(ArithError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if p < 5 {
            return Err(ArithError::TooSmall(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn legendre(&self, a: u64) -> i8 {
        legendre(a, self.p)
    }

    pub fn sqrt(&self, a: u64) -> Option<u64> {
        sqrt_mod(a, self.p)
    }

    /// Table of canonical square roots for every residue (`u32::MAX` marks a
    /// non-residue). Used where many roots are needed at once.
    pub fn sqrt_table(&self) -> Vec<u32> {
        let p = self.p;
        let mut table = vec![u32::MAX; p as usize];
        for r in 0..=(p - 1) / 2 {
            table[(r * r % p) as usize] = r as u32;
        }
        table
    }
}
