//! Closed forms over the whole group.
//!
//! With `n = #G`, `E = exp(G)` and `e = e(g)`:
//!
//! ```text
//! M(G, i, g) = 1/n * sum_{s | gcd(E, i)} C(n/s + i/s - 1, i/s)           * mobius_sum(s, e)
//! N(G, i, g) = 1/n * sum_{s | gcd(E, i)} (-1)^(i + i/s) C(n/s, i/s)    * mobius_sum(s, e)
//! P_G(i, g)  = M(G \ {0}, i, g) = [numerator of M at i] - [numerator of M at i - 1], over n
//! ```
//!
//! The counts depend on `g` only through `e(g)`. Every division by `n` is
//! checked to be exact; a nonzero remainder is reported as
//! [`Error::InvariantViolation`].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::numtheory::{self, binomial, mobius_sum, Count};
use crate::table::{CountTable, Quantity};
use crate::{Error, GroupElement, GroupSpec, Result};

/// One summand of a closed form, indexed by the divisor `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub s: u64,
    pub value: BigInt,
}

fn indicator(b: bool) -> Count {
    Count::from(u8::from(b))
}

/// The divisors `s` of `gcd(exp(G), i)`, with `gcd(E, 0) = E`, each checked to divide `n`.
fn summation_range(group: &GroupSpec, i: u64) -> Result<Vec<u64>> {
    let n = group.order();
    let range = numtheory::divisors(group.exponent().gcd(&i))?;
    if let Some(s) = range.iter().find(|&&s| n % s != 0) {
        return Err(Error::InvariantViolation(format!(
            "summation index {s} does not divide the group order {n}"
        )));
    }
    Ok(range)
}

/// Summands of the multiset numerator `n * M(G, i, g)` for a target with `e(g) = e`.
///
/// At `i = 0` every divisor of `exp(G)` is admitted; the sum then equals
/// `n * [e = exp(G)]`, matching the convention `M(G, 0, g) = [g = 0]`.
pub fn multiset_terms(group: &GroupSpec, i: u64, e: u64) -> Result<Vec<Term>> {
    let n = group.order();
    summation_range(group, i)?
        .into_iter()
        .map(|s| {
            let (ns, is) = (i128::from(n / s), i128::from(i / s));
            let c = BigInt::from(binomial(ns + is - 1, is));
            Ok(Term {
                s,
                value: c * mobius_sum(s, e, group)?,
            })
        })
        .collect()
}

/// Summands of the subset numerator `n * N(G, i, g)` for a target with `e(g) = e`.
pub fn subset_terms(group: &GroupSpec, i: u64, e: u64) -> Result<Vec<Term>> {
    let n = group.order();
    summation_range(group, i)?
        .into_iter()
        .map(|s| {
            let (ns, is) = (n / s, i / s);
            let mut c = BigInt::from(binomial(ns.into(), is.into()));
            if (i + is) % 2 == 1 {
                c = -c;
            }
            Ok(Term {
                s,
                value: c * mobius_sum(s, e, group)?,
            })
        })
        .collect()
}

fn total(terms: &[Term]) -> BigInt {
    terms.iter().map(|t| &t.value).sum()
}

/// `numerator / n`, failing loudly unless the quotient is an exact nonnegative integer.
pub fn exact_div(numerator: &BigInt, n: u64, what: &str) -> Result<Count> {
    let (q, r) = numerator.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(Error::InvariantViolation(format!(
            "{what}: numerator {numerator} is not divisible by the group order {n}"
        )));
    }
    if q.is_negative() {
        return Err(Error::InvariantViolation(format!(
            "{what}: negative count {q}"
        )));
    }
    Ok(q.to_biguint().unwrap_or_default())
}

/// `M(G, i, g)` for a target in the class `e(g) = e`, `i >= 1`.
fn m_by_class(group: &GroupSpec, i: u64, e: u64) -> Result<Count> {
    exact_div(
        &total(&multiset_terms(group, i, e)?),
        group.order(),
        "M(G,i,g)",
    )
}

fn n_by_class(group: &GroupSpec, i: u64, e: u64) -> Result<Count> {
    exact_div(
        &total(&subset_terms(group, i, e)?),
        group.order(),
        "N(G,i,g)",
    )
}

fn p_by_class(group: &GroupSpec, i: u64, e: u64) -> Result<Count> {
    let diff = total(&multiset_terms(group, i, e)?) - total(&multiset_terms(group, i - 1, e)?);
    exact_div(&diff, group.order(), "P_G(i,g)")
}

/// Number of size-`i` multisets of `G` with sum `g`.
pub fn m_full(group: &GroupSpec, i: u64, g: &GroupElement) -> Result<Count> {
    let e = group.e_of(g)?;
    if i == 0 {
        return Ok(indicator(g.is_zero()));
    }
    m_by_class(group, i, e)
}

/// Number of `i`-element subsets of `G` with sum `g`.
pub fn n_full(group: &GroupSpec, i: u64, g: &GroupElement) -> Result<Count> {
    let e = group.e_of(g)?;
    if i == 0 {
        return Ok(indicator(g.is_zero()));
    }
    n_by_class(group, i, e)
}

/// Number of partitions of `g` into exactly `i` nonzero parts, `P_G(i, g) = M(G \ {0}, i, g)`.
pub fn p_parts(group: &GroupSpec, i: u64, g: &GroupElement) -> Result<Count> {
    let e = group.e_of(g)?;
    if i == 0 {
        return Ok(indicator(g.is_zero()));
    }
    p_by_class(group, i, e)
}

/// `M(G, i, g) = C(n + i - 1, i) / n`, valid when `gcd(i, exp(G)) = 1`.
pub fn m_coprime_fastpath(group: &GroupSpec, i: u64, g: &GroupElement) -> Result<Count> {
    group.check(g)?;
    if i == 0 || i.gcd(&group.exponent()) != 1 {
        return Err(Error::domain(format!(
            "coprime fast path needs i >= 1 and gcd(i, exp(G)) = 1, got i = {i}, exp(G) = {}",
            group.exponent()
        )));
    }
    let n = group.order();
    let c = binomial(i128::from(n) + i128::from(i) - 1, i.into());
    exact_div(&BigInt::from_biguint(Sign::Plus, c), n, "coprime fast path")
}

/// Largest `w` with `p^w | x`, and the cofactor.
fn split_prime_power(x: u64, p: u64) -> (u64, u32) {
    let (mut t, mut w) = (x, 0);
    while t % p == 0 {
        t /= p;
        w += 1;
    }
    (t, w)
}

/// `M(Z_{p^m}, i, g)` through the prime-power closed form.
///
/// Writes `i = t p^w` and `g = k p^u` with `p` coprime to `t` and `k` (and
/// `u = m` for `g = 0`). Only `s = p^h` with `h <= min(w, u + 1)` contributes:
///
/// ```text
/// n*M = C(p^m + t p^w - 1, t p^w)
///     + sum_{h=1}^{min(w,u)} C(p^{m-h} + t p^{w-h} - 1, t p^{w-h}) (p^h - p^{h-1})
///     - A * C(p^{m-u-1} + t p^{w-u-1} - 1, t p^{w-u-1}) p^u,     A = [u < min(w, m)]
/// ```
///
/// `g` is an element of `Z_{p^m}`.
pub fn m_prime_power(p: u64, m: u32, i: u64, g: &GroupElement) -> Result<Count> {
    if !numtheory::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::domain("prime-power exponent m must be >= 1"));
    }
    if i == 0 {
        return Err(Error::domain("prime-power closed form needs i >= 1"));
    }
    let n = p
        .checked_pow(m)
        .ok_or_else(|| Error::domain(format!("{p}^{m} does not fit in 64 bits")))?;
    let group = GroupSpec::cyclic(n)?;
    group.check(g)?;

    let (t, w) = split_prime_power(i, p);
    let u = match g.residues()[0] {
        0 => m,
        r => split_prime_power(r, p).1,
    };
    let (p, t) = (i128::from(p), i128::from(t));
    let c = |h: u32| -> BigInt {
        let size = t * p.pow(w - h);
        BigInt::from(binomial(p.pow(m - h) + size - 1, size))
    };

    let mut numerator = c(0);
    for h in 1..=w.min(u) {
        numerator += c(h) * (p.pow(h) - p.pow(h - 1));
    }
    if u < w.min(m) {
        numerator -= c(u + 1) * p.pow(u);
    }
    exact_div(&numerator, n, "prime-power closed form")
}

/// Every `(i, g)` value of `M`, `N` or `P` for `i <= max_size`, evaluated once per `e`-class.
pub fn table(group: &GroupSpec, quantity: Quantity, max_size: u64) -> Result<CountTable> {
    let classes: Vec<u64> = group
        .elements()
        .map(|g| group.e_of(&g))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(max_size as usize + 1);
    rows.push(
        group
            .elements()
            .map(|g| indicator(g.is_zero()))
            .collect::<Vec<_>>(),
    );
    for i in 1..=max_size {
        let mut memo = BTreeMap::new();
        let mut row = Vec::with_capacity(classes.len());
        for &e in &classes {
            let v = match memo.entry(e) {
                Entry::Occupied(v) => v.into_mut(),
                Entry::Vacant(slot) => slot.insert(match quantity {
                    Quantity::M => m_by_class(group, i, e)?,
                    Quantity::N => n_by_class(group, i, e)?,
                    Quantity::P => p_by_class(group, i, e)?,
                }),
            };
            row.push(v.clone());
        }
        rows.push(row);
    }
    CountTable::new(group.clone(), quantity, Vec::new(), rows)
}
