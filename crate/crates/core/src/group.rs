//! Finite abelian groups presented as direct products of cyclic groups.
//!
//! A [`GroupSpec`] is any decomposition `Z_{n_1} x ... x Z_{n_k}`. It is not
//! reduced to invariant factors: every quantity the counting formulas use
//! (order, exponent, torsion sizes, `e(g)`) is independent of the chosen
//! decomposition.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::numtheory;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// An element of a [`GroupSpec`], stored as reduced residues, one per factor.
///
/// Elements do not carry their group. Operations on a [`GroupSpec`] reject
/// elements whose shape or residues do not fit that group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

/// Renders in the element grammar: comma-separated residues.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, r) in self.residues.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl GroupSpec {
    /// Builds `Z_{orders[0]} x ... x Z_{orders[k-1]}`.
    ///
    /// Needs at least one factor, every factor order at least 1, and a total
    /// order that fits in 64 bits. Trivial factors `Z_1` are allowed.
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::domain("a group needs at least one cyclic factor"));
        }
        if let Some(bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::domain(format!(
                "cyclic factor order {bad} must be >= 1"
            )));
        }
        let order = orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .filter(|&n| usize::try_from(n).is_ok())
            .ok_or_else(|| Error::domain("group order does not fit in 64 bits"))?;
        let exponent = orders.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        Ok(GroupSpec {
            orders,
            order,
            exponent,
        })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic factors in the presentation.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `n = #G`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `exp(G)`, the lcm of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `#G[d]`, the number of `h` with `d*h = 0`.
    ///
    /// In `Z_m` the solutions of `d*h = 0` form a subgroup of size `gcd(d, m)`,
    /// so the torsion size is the product of these over the factors.
    pub fn torsion_size(&self, d: u64) -> Result<u64> {
        if d == 0 {
            return Err(Error::domain("torsion index d must be >= 1"));
        }
        Ok(self.orders.iter().map(|&n| d.gcd(&n)).product())
    }

    /// Whether `g` lies in `dG = { d*h : h in G }`.
    ///
    /// `d Z_m = gcd(d, m) Z_m`, so membership is a per-coordinate divisibility test.
    pub fn in_multiple_subgroup(&self, g: &GroupElement, d: u64) -> Result<bool> {
        self.check(g)?;
        if d == 0 {
            return Err(Error::domain("subgroup multiplier d must be >= 1"));
        }
        Ok(self
            .orders
            .iter()
            .zip(&g.residues)
            .all(|(&n, &r)| r % d.gcd(&n) == 0))
    }

    /// `e(g)`: the largest divisor `d` of `exp(G)` with `g` in `dG`.
    pub fn e_of(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        let divisors = numtheory::divisors(self.exponent)?;
        for &d in divisors.iter().rev() {
            if self.in_multiple_subgroup(g, d)? {
                return Ok(d);
            }
        }
        // d = 1 always qualifies, so the loop returns.
        unreachable!("1 divides exp(G) and 1G = G")
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.rank()],
        }
    }

    /// Builds an element from signed residues, reducing each modulo its factor order.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::domain(format!(
                "element has {} residues but group {} has {} factors",
                residues.len(),
                self,
                self.rank()
            )));
        }
        let residues = residues
            .iter()
            .zip(&self.orders)
            .map(|(&r, &n)| {
                let n = i128::from(n);
                i128::from(r).rem_euclid(n) as u64
            })
            .collect();
        Ok(GroupElement { residues })
    }

    /// Parses the element grammar: comma-separated integers, one per factor.
    /// Residues are reduced modulo their factor order.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != self.rank() {
            return Err(Error::parse(
                s,
                format!(
                    "expected {} comma-separated residues for group {}",
                    self.rank(),
                    self
                ),
            ));
        }
        let residues = parts
            .iter()
            .map(|p| {
                p.parse::<i64>()
                    .map_err(|_| Error::parse(*p, "residue is not an integer"))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(&residues)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.residues.len() == self.rank() && g.residues.iter().zip(&self.orders).all(|(&r, &n)| r < n)
    }

    pub(crate) fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                element: format!("({g})"),
                group: self.to_string(),
            })
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, &self.neg_unchecked(b)))
    }

    /// `k * a`.
    pub fn scale(&self, k: u64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.orders)
            .map(|(&r, &n)| ((u128::from(r) * u128::from(k)) % u128::from(n)) as u64)
            .collect();
        Ok(GroupElement { residues })
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| {
                let s = x + y;
                if s >= n {
                    s - n
                } else {
                    s
                }
            })
            .collect();
        GroupElement { residues }
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        let residues = a
            .residues
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
            .collect();
        GroupElement { residues }
    }

    /// All elements in lexicographic residue order (last coordinate fastest).
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |idx| self.element_at(idx))
    }

    /// Position of `g` in [`GroupSpec::elements`].
    pub fn index_of(&self, g: &GroupElement) -> usize {
        debug_assert!(self.contains(g));
        g.residues
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&r, &n)| acc * n as usize + r as usize)
    }

    /// Inverse of [`GroupSpec::index_of`].
    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        debug_assert!(idx < self.order as usize);
        let mut residues = vec![0; self.rank()];
        for (slot, &n) in residues.iter_mut().zip(&self.orders).rev() {
            let n = n as usize;
            *slot = (idx % n) as u64;
            idx /= n;
        }
        GroupElement { residues }
    }

    /// For every element index `x`, the index of `x + by`.
    pub(crate) fn translation(&self, by: &GroupElement) -> Vec<usize> {
        self.elements()
            .map(|x| self.index_of(&self.add_unchecked(&x, by)))
            .collect()
    }
}

/// Renders as `Z4xZ6`.
impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, n) in self.orders.iter().enumerate() {
            if j > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

/// Parses `Z4`, `Z4xZ6` or the bare form `4x6`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::parse(s, "empty group specification"));
        }
        let orders = trimmed
            .split(['x', 'X'])
            .map(|tok| {
                let tok = tok.trim();
                let digits = tok.strip_prefix(['Z', 'z']).unwrap_or(tok);
                match digits.parse::<u64>() {
                    Ok(0) => Err(Error::parse(tok, "cyclic factor order must be >= 1")),
                    Ok(n) => Ok(n),
                    Err(_) => Err(Error::parse(
                        tok,
                        "expected a cyclic factor like `Z4` or `4`",
                    )),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(orders).map_err(|e| Error::parse(s, e.to_string()))
    }
}
