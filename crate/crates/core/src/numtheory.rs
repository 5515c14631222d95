//! Divisors, the Möbius function, gcd-driven torsion sums and exact binomials.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::{Error, GroupSpec, Result};

/// An exact, arbitrary-precision cardinality.
pub type Count = BigUint;

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, a)| p.pow(a)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, a)| a == 1)
    }

    pub fn divisor_count(&self) -> usize {
        self.0.iter().map(|&(_, a)| a as usize + 1).product()
    }
}

fn require_positive(m: u64, what: &str) -> Result<()> {
    if m == 0 {
        Err(Error::domain(format!(
            "{what} is defined for m >= 1, got 0"
        )))
    } else {
        Ok(())
    }
}

/// Trial division up to `sqrt(m)`.
pub fn factorize(m: u64) -> Result<Factorization> {
    require_positive(m, "factorize")?;
    let mut rest = m;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut a = 0;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(Factorization(out))
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && factorize(p).map(|f| f.pairs() == [(p, 1)]).unwrap_or(false)
}

/// All divisors of `m`, increasing.
pub fn divisors(m: u64) -> Result<Vec<u64>> {
    let f = factorize(m)?;
    let mut out = vec![1u64];
    for &(p, a) in f.pairs() {
        let base = out.len();
        let mut pk = 1u64;
        for _ in 0..a {
            pk *= p;
            for j in 0..base {
                out.push(out[j] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn mobius(m: u64) -> Result<i8> {
    require_positive(m, "mobius")?;
    #[cfg(debug_assertions)]
    if let Some(v) = fault::mobius_override(m) {
        return Ok(v);
    }
    let f = factorize(m)?;
    Ok(if !f.is_squarefree() {
        0
    } else if f.pairs().len() % 2 == 0 {
        1
    } else {
        -1
    })
}

/// `C(a, b)`, extended by zero outside `0 <= b <= a`.
///
/// Uses the running product `r <- r * (a - k + j) / j`, which stays integral
/// after every step.
pub fn binomial(a: i128, b: i128) -> Count {
    if a < 0 || b < 0 || b > a {
        return Count::default();
    }
    let k = b.min(a - b);
    let mut r = Count::one();
    for j in 1..=k {
        r *= BigUint::from((a - k + j) as u128);
        r /= BigUint::from(j as u128);
    }
    r
}

/// `sum_{d | gcd(s, e)} mu(s/d) * #G[d]`.
///
/// This is the coefficient that multiplies the `s`-th binomial in the closed
/// forms, with `e = e(g)`. It can be negative.
pub fn mobius_sum(s: u64, e: u64, group: &GroupSpec) -> Result<i128> {
    require_positive(s, "mobius_sum index s")?;
    require_positive(e, "mobius_sum class e")?;
    let mut acc = 0i128;
    for d in divisors(s.gcd(&e))? {
        let mu = mobius(s / d)?;
        if mu != 0 {
            acc += i128::from(mu) * i128::from(group.torsion_size(d)?);
        }
    }
    Ok(acc)
}

/// `sum_{c=0}^{min(h,u)} mu(p^{h-c}) p^c` in closed form, for prime `p`.
///
/// Only the terms `c = h` and `c = h - 1` survive, which gives
/// `1` at `h = 0`, `p^h - p^{h-1}` for `1 <= h <= u`, `-p^u` at `h = u + 1`
/// and `0` beyond.
pub fn prime_power_mobius_sum(p: u64, h: u32, u: u32) -> i128 {
    let p = i128::from(p);
    if h == 0 {
        1
    } else if h <= u {
        p.pow(h) - p.pow(h - 1)
    } else if h == u + 1 {
        -p.pow(u)
    } else {
        0
    }
}

/// Test hook that replaces single Möbius values on the current thread, so the
/// verification sweep can be shown to catch a corrupted input. Debug builds only.
#[cfg(debug_assertions)]
#[doc(hidden)]
pub mod fault {
    use std::cell::Cell;

    thread_local! {
        static OVERRIDE: Cell<Option<(u64, i8)>> = const { Cell::new(None) };
    }

    pub fn corrupt_mobius(m: u64, value: i8) {
        OVERRIDE.with(|o| o.set(Some((m, value))));
    }

    pub fn clear() {
        OVERRIDE.with(|o| o.set(None));
    }

    pub(super) fn mobius_override(m: u64) -> Option<i8> {
        OVERRIDE
            .with(|o| o.get())
            .and_then(|(k, v)| (k == m).then_some(v))
    }
}
