//! Counting over restricted domains `G \ S`.
//!
//! Multisets use inclusion-exclusion on the multisets that meet `S`
//! ([`m_hit`]), aggregated by subset sum through [`SubsetSumTable`]. A peeling
//! recursion ([`m_restricted_peel`]) gives an independent second route.
//! Subsets do not admit the same shortcut; [`n_restricted`] peels `S` one
//! element at a time instead.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::closed_form::{m_full, n_full};
use crate::numtheory::Count;
use crate::{Error, GroupElement, GroupSpec, Result};

/// A set `S` of distinct elements removed from a group. May be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcludedSet {
    group: GroupSpec,
    elements: BTreeSet<GroupElement>,
}

impl ExcludedSet {
    pub fn empty(group: &GroupSpec) -> Self {
        ExcludedSet {
            group: group.clone(),
            elements: BTreeSet::new(),
        }
    }

    /// Collects `elements`, dropping duplicates.
    pub fn new(
        group: &GroupSpec,
        elements: impl IntoIterator<Item = GroupElement>,
    ) -> Result<Self> {
        let mut set = Self::empty(group);
        for e in elements {
            group.check(&e)?;
            set.elements.insert(e);
        }
        Ok(set)
    }

    /// Parses `;`-separated elements, e.g. `0;1` or `1,0;0,2`. Blank input is the empty set.
    pub fn parse(group: &GroupSpec, s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self::empty(group));
        }
        let elements = s
            .split(';')
            .map(|tok| group.parse_element(tok))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, elements)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Elements of `S` in lexicographic order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = &GroupElement> + '_ {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.contains(g)
    }

    /// The remaining domain `G \ S`, in element order.
    pub fn domain(&self) -> Vec<GroupElement> {
        self.group
            .elements()
            .filter(|g| !self.contains(g))
            .collect()
    }
}

impl fmt::Display for ExcludedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, e) in self.elements.iter().enumerate() {
            if j > 0 {
                f.write_str(";")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `c[t][h]`: the number of `t`-element subsets of `S` summing to `h`.
///
/// Row `t = 0` holds the empty subset (the indicator of zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumTable {
    group: GroupSpec,
    rows: Vec<Vec<Count>>,
}

impl SubsetSumTable {
    /// Largest subset size, `|S|`.
    pub fn max_size(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, t: usize, h: &GroupElement) -> &Count {
        &self.rows[t][self.group.index_of(h)]
    }

    /// Counts for size `t`, indexed like `group.elements()`.
    pub fn row(&self, t: usize) -> &[Count] {
        &self.rows[t]
    }
}

/// Builds `c[t][h]` by adding the elements of `S` one at a time.
pub fn subset_sum_table(excluded: &ExcludedSet) -> Result<SubsetSumTable> {
    if excluded.is_empty() {
        return Err(Error::domain("subset sum table needs a nonempty set"));
    }
    let group = excluded.group();
    let n = group.order() as usize;
    let mut rows = vec![vec![Count::zero(); n]; excluded.len() + 1];
    rows[0][group.index_of(&group.zero())] = Count::one();
    for (seen, u) in excluded.elements().enumerate() {
        let shift = group.translation(u);
        for t in (1..=seen + 1).rev() {
            let (lower, upper) = rows.split_at_mut(t);
            let (prev, cur) = (&lower[t - 1], &mut upper[0]);
            for (h, c) in prev.iter().enumerate() {
                if !c.is_zero() {
                    cur[shift[h]] += c;
                }
            }
        }
    }
    Ok(SubsetSumTable {
        group: group.clone(),
        rows,
    })
}

/// Memoized `M(G, size, target)` over one group, keyed by `(size, e(target))`.
struct FullMultisets<'a> {
    group: &'a GroupSpec,
    memo: HashMap<(u64, bool, u64), Count>,
}

impl<'a> FullMultisets<'a> {
    fn new(group: &'a GroupSpec) -> Self {
        FullMultisets {
            group,
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, size: u64, target: &GroupElement) -> Result<Count> {
        let key = (size, target.is_zero(), self.group.e_of(target)?);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = m_full(self.group, size, target)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

fn to_count(v: BigInt, what: &str) -> Result<Count> {
    v.to_biguint()
        .ok_or_else(|| Error::InvariantViolation(format!("{what}: negative count {v}")))
}

/// `M_S(G, i, g)`: size-`i` multisets of `G` with sum `g` that contain at least one element of `S`.
///
/// Inclusion-exclusion over the `t`-subsets `T` of `S`, each contributing
/// `(-1)^(t-1) M(G, i - t, g - sum(T))`; subsets are grouped by their sum.
pub fn m_hit(excluded: &ExcludedSet, i: u64, g: &GroupElement) -> Result<Count> {
    let group = excluded.group();
    group.check(g)?;
    if i == 0 {
        return Err(Error::domain("M_S(G, i, g) is defined for i >= 1"));
    }
    if excluded.is_empty() {
        return Ok(Count::zero());
    }
    let table = subset_sum_table(excluded)?;
    let mut full = FullMultisets::new(group);
    let mut acc = BigInt::zero();
    let top = (i as usize).min(table.max_size());
    for t in 1..=top {
        let mut layer = BigInt::zero();
        for (k, c) in table.row(t).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = group.sub(g, &group.element_at(k))?;
            layer += BigInt::from(c * full.get(i - t as u64, &target)?);
        }
        if t % 2 == 1 {
            acc += layer;
        } else {
            acc -= layer;
        }
    }
    let hit = to_count(acc, "M_S(G,i,g)")?;
    let whole = full.get(i, g)?;
    if hit > whole {
        return Err(Error::InvariantViolation(format!(
            "M_S(G,i,g) = {hit} exceeds M(G,i,g) = {whole}"
        )));
    }
    Ok(hit)
}

/// `M(G \ S, i, g) = M(G, i, g) - M_S(G, i, g)`.
pub fn m_restricted(excluded: &ExcludedSet, i: u64, g: &GroupElement) -> Result<Count> {
    let group = excluded.group();
    group.check(g)?;
    if i == 0 {
        return Ok(Count::from(u8::from(g.is_zero())));
    }
    let whole = m_full(group, i, g)?;
    if excluded.is_empty() {
        return Ok(whole);
    }
    let hit = m_hit(excluded, i, g)?;
    to_count(BigInt::from(whole) - BigInt::from(hit), "M(G\\S,i,g)")
}

/// Shared state of the peeling recursions: `S` in lexicographic order and a
/// memo keyed by (elements of `S` removed so far, size, target index).
struct Peeler<'a> {
    group: &'a GroupSpec,
    removed: Vec<GroupElement>,
    memo: HashMap<(usize, u64, usize), Count>,
}

impl<'a> Peeler<'a> {
    fn new(excluded: &'a ExcludedSet) -> Self {
        Peeler {
            group: excluded.group(),
            removed: excluded.elements().cloned().collect(),
            memo: HashMap::new(),
        }
    }

    /// `M(D_j, size, target)` with `D_j = G \ {s_1..s_j}`, using
    /// `M(D \ {u}, i, g) = M(D, i, g) - M(D, i - 1, g - u)`.
    fn multisets(&mut self, j: usize, size: u64, target: &GroupElement) -> Result<Count> {
        if size == 0 {
            return Ok(Count::from(u8::from(target.is_zero())));
        }
        if j == 0 {
            return m_full(self.group, size, target);
        }
        let key = (j, size, self.group.index_of(target));
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let u = self.removed[j - 1].clone();
        let keep = self.multisets(j - 1, size, target)?;
        let with_u = self.multisets(j - 1, size - 1, &self.group.sub(target, &u)?)?;
        let v = to_count(BigInt::from(keep) - BigInt::from(with_u), "peeled M")?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// `N(D_j, size, target)`, using `N(D \ {u}, i, g) = N(D, i, g) - N(D \ {u}, i - 1, g - u)`.
    fn subsets(&mut self, j: usize, size: u64, target: &GroupElement) -> Result<Count> {
        if size == 0 {
            return Ok(Count::from(u8::from(target.is_zero())));
        }
        if size > self.group.order() - j as u64 {
            return Ok(Count::zero());
        }
        if j == 0 {
            return n_full(self.group, size, target);
        }
        let key = (j, size, self.group.index_of(target));
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let u = self.removed[j - 1].clone();
        let all = self.subsets(j - 1, size, target)?;
        let with_u = self.subsets(j, size - 1, &self.group.sub(target, &u)?)?;
        let v = to_count(BigInt::from(all) - BigInt::from(with_u), "peeled N")?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// `M(G \ S, i, g)` by removing the elements of `S` one at a time.
pub fn m_restricted_peel(excluded: &ExcludedSet, i: u64, g: &GroupElement) -> Result<Count> {
    excluded.group().check(g)?;
    let mut peeler = Peeler::new(excluded);
    peeler.multisets(excluded.len(), i, g)
}

/// `N(G \ S, i, g)`: `i`-element subsets of `G \ S` with sum `g`.
pub fn n_restricted(excluded: &ExcludedSet, i: u64, g: &GroupElement) -> Result<Count> {
    excluded.group().check(g)?;
    let mut peeler = Peeler::new(excluded);
    peeler.subsets(excluded.len(), i, g)
}

/// `N_S(G, i, g)`: `i`-element subsets of `G` with sum `g` that meet `S`, by
/// inclusion-exclusion over subsets `T` of `S`:
///
/// ```text
/// N_S(G, i, g) = sum_{t >= 1} (-1)^(t-1) sum_{T in S, |T| = t} N(G \ T, i - t, g - sum(T))
/// ```
///
/// Unlike the multiset case the inner domains shrink with `T`. Subsets are
/// enumerated explicitly, so `|S|` is capped at 20.
pub fn n_hit(excluded: &ExcludedSet, i: u64, g: &GroupElement) -> Result<Count> {
    let group = excluded.group();
    group.check(g)?;
    let members: Vec<&GroupElement> = excluded.elements().collect();
    if members.len() > 20 {
        return Err(Error::domain(
            "subset inclusion-exclusion is limited to |S| <= 20",
        ));
    }
    let mut acc = BigInt::zero();
    for mask in 1u32..(1 << members.len()) {
        let t = u64::from(mask.count_ones());
        if t > i {
            continue;
        }
        let chosen: Vec<GroupElement> = members
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| (*e).clone())
            .collect();
        let sum = chosen
            .iter()
            .fold(group.zero(), |acc, e| group.add_unchecked(&acc, e));
        let target = group.sub(g, &sum)?;
        let inner = n_restricted(&ExcludedSet::new(group, chosen)?, i - t, &target)?;
        if t % 2 == 1 {
            acc += BigInt::from(inner);
        } else {
            acc -= BigInt::from(inner);
        }
    }
    to_count(acc, "N_S(G,i,g)")
}

/// `N(G \ S, i, g) = N(G, i, g) - N_S(G, i, g)`, the inclusion-exclusion route.
pub fn n_restricted_inclusion_exclusion(
    excluded: &ExcludedSet,
    i: u64,
    g: &GroupElement,
) -> Result<Count> {
    let whole = n_full(excluded.group(), i, g)?;
    let hit = n_hit(excluded, i, g)?;
    to_count(BigInt::from(whole) - BigInt::from(hit), "N(G\\S,i,g)")
}
