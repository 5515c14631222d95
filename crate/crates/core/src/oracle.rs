//! Ground-truth engines that share no code with the closed forms.
//!
//! [`Oracle::brute_multisets`] and [`Oracle::brute_subsets`] walk every
//! multiset or subset of the domain. [`GroupSeries`] expands the products
//! `prod (1 - sigma X)^-1` and `prod (1 + sigma X)` in the integer group ring
//! `Z[G][X]`, producing every count up to a degree in one pass.

use num_traits::{One, Zero};

use crate::numtheory::{binomial, Count};
use crate::table::{CountTable, Quantity};
use crate::{Error, ExcludedSet, GroupElement, GroupSpec, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Runs the enumeration oracles under a work budget. Requests that would
/// exceed it are refused with [`Error::BudgetExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Depth-first walk over index sequences with a running sum kept in place.
struct Walk<'a> {
    orders: &'a [u64],
    domain: &'a [GroupElement],
    target: &'a [u64],
    sum: Vec<u64>,
    repeat: bool,
    hits: u64,
}

impl Walk<'_> {
    fn push(&mut self, x: &GroupElement) {
        for ((s, &r), &n) in self.sum.iter_mut().zip(x.residues()).zip(self.orders) {
            *s = (*s + r) % n;
        }
    }

    fn pop(&mut self, x: &GroupElement) {
        for ((s, &r), &n) in self.sum.iter_mut().zip(x.residues()).zip(self.orders) {
            *s = (*s + n - r) % n;
        }
    }

    fn run(&mut self, start: usize, left: u64) {
        if left == 0 {
            if self.sum == self.target {
                self.hits += 1;
            }
            return;
        }
        for k in start..self.domain.len() {
            let x = &self.domain[k];
            self.push(x);
            self.run(if self.repeat { k } else { k + 1 }, left - 1);
            self.pop(x);
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Self {
        Oracle { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn guard(&self, needed: Count) -> Result<()> {
        if needed > Count::from(self.budget) {
            Err(Error::BudgetExceeded {
                needed: needed.to_string(),
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn walk(
        &self,
        excluded: &ExcludedSet,
        i: u64,
        g: &GroupElement,
        repeat: bool,
    ) -> Result<Count> {
        let group = excluded.group();
        group.check(g)?;
        let domain = excluded.domain();
        let d = domain.len() as i128;
        let total = if repeat {
            binomial(d + i128::from(i) - 1, i.into())
        } else {
            binomial(d, i.into())
        };
        if i == 0 {
            return Ok(Count::from(u8::from(g.is_zero())));
        }
        self.guard(total)?;
        let mut walk = Walk {
            orders: group.orders(),
            domain: &domain,
            target: g.residues(),
            sum: vec![0; group.rank()],
            repeat,
            hits: 0,
        };
        walk.run(0, i);
        Ok(Count::from(walk.hits))
    }

    /// `M(G \ S, i, g)` by visiting every size-`i` multiset of the domain once,
    /// as a non-decreasing sequence of element indices.
    pub fn brute_multisets(
        &self,
        excluded: &ExcludedSet,
        i: u64,
        g: &GroupElement,
    ) -> Result<Count> {
        self.walk(excluded, i, g, true)
    }

    /// `N(G \ S, i, g)` by visiting every `i`-subset of the domain.
    pub fn brute_subsets(&self, excluded: &ExcludedSet, i: u64, g: &GroupElement) -> Result<Count> {
        self.walk(excluded, i, g, false)
    }

    fn series_guard(&self, excluded: &ExcludedSet, max_size: u64) -> Result<()> {
        let work = Count::from(excluded.group().order())
            * Count::from(max_size + 1)
            * Count::from(excluded.domain().len().max(1));
        self.guard(work)
    }

    /// All `M(G \ S, i, g)` with `i <= max_size` from `prod_{sigma in G \ S} (1 - sigma X)^-1`.
    pub fn series_multiset_table(
        &self,
        excluded: &ExcludedSet,
        max_size: u64,
    ) -> Result<CountTable> {
        self.series_guard(excluded, max_size)?;
        let mut series = GroupSeries::one(excluded.group(), max_size);
        for sigma in excluded.domain() {
            series.mul_geometric(&sigma);
        }
        series.into_table(Quantity::M, excluded)
    }

    /// All `N(G \ S, i, g)` with `i <= max_size` from `prod_{sigma in G \ S} (1 + sigma X)`.
    pub fn series_subset_table(&self, excluded: &ExcludedSet, max_size: u64) -> Result<CountTable> {
        self.series_guard(excluded, max_size)?;
        let mut series = GroupSeries::one(excluded.group(), max_size);
        for sigma in excluded.domain() {
            series.mul_linear(&sigma);
        }
        series.into_table(Quantity::N, excluded)
    }
}

/// A power series in `X` truncated after `X^max_degree`, with coefficients in `Z[G]`.
///
/// `coeffs[j][k]` is the coefficient of `X^j` on the `k`-th group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSeries {
    group: GroupSpec,
    coeffs: Vec<Vec<Count>>,
}

impl GroupSeries {
    /// The multiplicative identity: `1 * [0] * X^0`.
    pub fn one(group: &GroupSpec, max_degree: u64) -> Self {
        let n = group.order() as usize;
        let mut coeffs = vec![vec![Count::zero(); n]; max_degree as usize + 1];
        coeffs[0][group.index_of(&group.zero())] = Count::one();
        GroupSeries {
            group: group.clone(),
            coeffs,
        }
    }

    pub fn coefficient(&self, degree: u64, g: &GroupElement) -> &Count {
        &self.coeffs[degree as usize][self.group.index_of(g)]
    }

    /// Multiplies by `(1 - sigma X)^-1 = sum_k sigma^k X^k`.
    ///
    /// In place as `c[j] += sigma * c[j-1]` for increasing `j`, so `c[j-1]`
    /// already carries every power of `sigma`.
    pub fn mul_geometric(&mut self, sigma: &GroupElement) {
        let shift = self.group.translation(sigma);
        for j in 1..self.coeffs.len() {
            let (lower, upper) = self.coeffs.split_at_mut(j);
            shift_add(&lower[j - 1], &mut upper[0], &shift);
        }
    }

    /// Multiplies by `1 + sigma X`: `c[j] += sigma * c[j-1]` for decreasing `j`.
    pub fn mul_linear(&mut self, sigma: &GroupElement) {
        let shift = self.group.translation(sigma);
        for j in (1..self.coeffs.len()).rev() {
            let (lower, upper) = self.coeffs.split_at_mut(j);
            shift_add(&lower[j - 1], &mut upper[0], &shift);
        }
    }

    pub fn into_table(self, quantity: Quantity, excluded: &ExcludedSet) -> Result<CountTable> {
        CountTable::new(
            self.group,
            quantity,
            excluded.elements().cloned().collect(),
            self.coeffs,
        )
    }
}

fn shift_add(from: &[Count], to: &mut [Count], shift: &[usize]) {
    for (k, c) in from.iter().enumerate() {
        if !c.is_zero() {
            to[shift[k]] += c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn none(group: &GroupSpec) -> ExcludedSet {
        ExcludedSet::empty(group)
    }

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn brute_examples() {
        let o = Oracle::default();
        let z4 = z(4);
        let one = z4.element(&[1]).unwrap();
        assert_eq!(o.brute_multisets(&none(&z4), 3, &one).unwrap(), c(5));
        let zero_out = ExcludedSet::new(&z4, [z4.zero()]).unwrap();
        assert_eq!(o.brute_multisets(&zero_out, 2, &z4.zero()).unwrap(), c(2));
        assert_eq!(o.brute_subsets(&none(&z4), 2, &z4.zero()).unwrap(), c(1));
        assert_eq!(o.brute_subsets(&zero_out, 2, &z4.zero()).unwrap(), c(1));
        for g in z4.elements() {
            assert_eq!(o.brute_subsets(&none(&z4), 5, &g).unwrap(), c(0));
        }
        let g23 = GroupSpec::new(vec![2, 3]).unwrap();
        assert_eq!(
            o.brute_multisets(&none(&g23), 0, &g23.zero()).unwrap(),
            c(1)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let z4 = z(4);
        let tight = Oracle::with_budget(10);
        // C(4 + 3 - 1, 3) = 20 multisets
        assert!(matches!(
            tight.brute_multisets(&none(&z4), 3, &z4.zero()),
            Err(Error::BudgetExceeded { .. })
        ));
        // C(4, 3) = 4 subsets
        assert!(tight.brute_subsets(&none(&z4), 3, &z4.zero()).is_ok());
        assert!(tight.series_multiset_table(&none(&z4), 3).is_err());
        assert_eq!(Oracle::default().budget(), 100_000_000);
    }

    #[test]
    fn series_examples() {
        let o = Oracle::default();
        let z4 = z(4);
        let t = o.series_multiset_table(&none(&z4), 3).unwrap();
        assert_eq!(t.get(3, &z4.element(&[1]).unwrap()), Some(&c(5)));
        for orders in [vec![1], vec![3], vec![2, 2]] {
            let group = GroupSpec::new(orders).unwrap();
            let t = o.series_multiset_table(&none(&group), 0).unwrap();
            for g in group.elements() {
                assert_eq!(*t.get(0, &g).unwrap(), c(u64::from(g.is_zero())));
            }
        }
        let z2 = z(2);
        let t = o.series_multiset_table(&none(&z2), 2).unwrap();
        assert_eq!(t.get(2, &z2.zero()), Some(&c(2)));

        let t = o.series_subset_table(&none(&z4), 2).unwrap();
        assert_eq!(t.get(2, &z4.zero()), Some(&c(1)));
        assert_eq!(t.get(0, &z4.zero()), Some(&c(1)));
        let v4 = GroupSpec::new(vec![2, 2]).unwrap();
        let t = o.series_subset_table(&none(&v4), 4).unwrap();
        assert_eq!(t.get(4, &v4.zero()), Some(&c(1)));
    }

    #[test]
    fn factor_order_does_not_matter() {
        let group = GroupSpec::new(vec![2, 4]).unwrap();
        let excluded = ExcludedSet::new(&group, [group.element(&[1, 3]).unwrap()]).unwrap();
        let domain = excluded.domain();
        for geometric in [true, false] {
            let mut forward = GroupSeries::one(&group, 6);
            let mut backward = GroupSeries::one(&group, 6);
            for sigma in &domain {
                if geometric {
                    forward.mul_geometric(sigma);
                } else {
                    forward.mul_linear(sigma);
                }
            }
            for sigma in domain.iter().rev() {
                if geometric {
                    backward.mul_geometric(sigma);
                } else {
                    backward.mul_linear(sigma);
                }
            }
            assert_eq!(forward, backward);
        }
    }

    #[test]
    fn series_agree_with_enumeration() {
        let o = Oracle::default();
        for orders in [
            vec![1],
            vec![2],
            vec![5],
            vec![8],
            vec![2, 2],
            vec![2, 4],
            vec![2, 2, 2],
            vec![6],
        ] {
            let group = GroupSpec::new(orders).unwrap();
            let all: Vec<_> = group.elements().collect();
            let mut sets = vec![ExcludedSet::empty(&group)];
            for a in 0..all.len() {
                sets.push(ExcludedSet::new(&group, [all[a].clone()]).unwrap());
                for b in a + 1..all.len() {
                    sets.push(ExcludedSet::new(&group, [all[a].clone(), all[b].clone()]).unwrap());
                }
            }
            for s in &sets {
                let d = s.domain().len() as i128;
                let ms = o.series_multiset_table(s, 6).unwrap();
                let ns = o.series_subset_table(s, 6).unwrap();
                for i in 0..=6u64 {
                    let (mut mass_m, mut mass_n) = (Count::zero(), Count::zero());
                    for g in group.elements() {
                        let m = ms.get(i, &g).unwrap();
                        let n = ns.get(i, &g).unwrap();
                        assert_eq!(*m, o.brute_multisets(s, i, &g).unwrap());
                        assert_eq!(*n, o.brute_subsets(s, i, &g).unwrap());
                        mass_m += m;
                        mass_n += n;
                    }
                    let i = i128::from(i);
                    let expected_m = if d == 0 && i == 0 {
                        c(1)
                    } else {
                        binomial(d + i - 1, i)
                    };
                    assert_eq!(mass_m, expected_m);
                    assert_eq!(mass_n, binomial(d, i));
                }
            }
        }
    }
}
