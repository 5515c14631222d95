//! Bulk count tables indexed by `(size, target)`.

use std::fmt;
use std::str::FromStr;

use crate::numtheory::Count;
use crate::{Error, GroupElement, GroupSpec, Result};

/// Which count a table or query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    /// Multisets, `M(D, i, g)`.
    M,
    /// Subsets, `N(D, i, g)`.
    N,
    /// Partitions into nonzero parts, `P_G(i, g)`.
    P,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::M => "M",
            Quantity::N => "N",
            Quantity::P => "P",
        })
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "M" | "m" => Ok(Quantity::M),
            "N" | "n" => Ok(Quantity::N),
            "P" | "p" => Ok(Quantity::P),
            other => Err(Error::parse(other, "quantity must be one of M, N, P")),
        }
    }
}

/// Counts for every size `0..=max_size` and every target of a group.
///
/// `exclude` records the removed set `S` when the table counts over `G \ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    group: GroupSpec,
    quantity: Quantity,
    exclude: Vec<GroupElement>,
    rows: Vec<Vec<Count>>,
}

impl CountTable {
    /// `rows[i][k]` is the count at size `i` for the `k`-th element of `group.elements()`.
    pub fn new(
        group: GroupSpec,
        quantity: Quantity,
        exclude: Vec<GroupElement>,
        rows: Vec<Vec<Count>>,
    ) -> Result<Self> {
        let n = group.order() as usize;
        if rows.is_empty() || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvariantViolation(format!(
                "count table rows must be nonempty with {n} entries each"
            )));
        }
        Ok(CountTable {
            group,
            quantity,
            exclude,
            rows,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn quantity(&self) -> Quantity {
        self.quantity
    }

    pub fn exclude(&self) -> &[GroupElement] {
        &self.exclude
    }

    pub fn max_size(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    pub fn get(&self, i: u64, g: &GroupElement) -> Option<&Count> {
        if !self.group.contains(g) {
            return None;
        }
        self.rows
            .get(i as usize)
            .map(|row| &row[self.group.index_of(g)])
    }

    /// All counts at size `i`, in element order.
    pub fn row(&self, i: u64) -> Option<&[Count]> {
        self.rows.get(i as usize).map(Vec::as_slice)
    }

    /// `(size, target, count)` sorted by size, then lexicographically by target.
    pub fn entries(&self) -> impl Iterator<Item = (u64, GroupElement, &Count)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(k, c)| (i as u64, self.group.element_at(k), c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_sorted_and_addressable() {
        let group = GroupSpec::new(vec![2, 2]).unwrap();
        let rows = vec![
            vec![1u32, 0, 0, 0].into_iter().map(Count::from).collect(),
            vec![1u32, 1, 1, 1].into_iter().map(Count::from).collect(),
        ];
        let t = CountTable::new(group.clone(), Quantity::N, vec![], rows).unwrap();
        let keys: Vec<_> = t.entries().map(|(i, g, _)| (i, g)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys.len(), 8);
        assert_eq!(t.max_size(), 1);
        assert_eq!(t.get(0, &group.zero()), Some(&Count::from(1u32)));
        assert_eq!(t.get(2, &group.zero()), None);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let group = GroupSpec::cyclic(3).unwrap();
        assert!(CountTable::new(group.clone(), Quantity::M, vec![], vec![]).is_err());
        assert!(
            CountTable::new(group, Quantity::M, vec![], vec![vec![Count::from(1u32)]]).is_err()
        );
    }

    #[test]
    fn quantity_parsing() {
        assert_eq!("M".parse::<Quantity>().unwrap(), Quantity::M);
        assert_eq!("p".parse::<Quantity>().unwrap(), Quantity::P);
        assert!(matches!("Q".parse::<Quantity>(), Err(Error::Parse { .. })));
    }
}
