use serde::Serialize;

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn from_pairs(mut factors: Vec<(u64, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable();
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Self { factors }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    /// Exponent of `q` (zero if `q` does not divide).
    pub fn exponent_of(&self, q: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(r, _)| r == q)
            .map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(q, e)| q.pow(e)).product()
    }

    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(q, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `n >= 1` by trial division up to `√n`.
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize needs a positive integer");
    let mut factors = Vec::new();
    let mut push = |n: &mut u64, d: u64| {
        let mut e = 0;
        while *n % d == 0 {
            *n /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
    };
    push(&mut n, 2);
    push(&mut n, 3);
    let mut d = 5u64;
    while d <= n / d {
        push(&mut n, d);
        push(&mut n, d + 2);
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { factors }
}

/// All divisors in increasing order.
pub fn divisors_of(f: &Factorization) -> Vec<u64> {
    let mut divisors = vec![1u64];
    for &(q, e) in f.pairs() {
        let len = divisors.len();
        let mut power = 1u64;
        for _ in 0..e {
            power *= q;
            for i in 0..len {
                divisors.push(divisors[i] * power);
            }
        }
    }
    divisors.sort_unstable();
    divisors
}
