//! Exhaustive cross-checking of the closed forms and recursions against the oracles.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::closed_form::{m_coprime_fastpath, m_full, n_full, p_parts};
use crate::numtheory::{binomial, Count};
use crate::oracle::Oracle;
use crate::restricted::{
    m_restricted, m_restricted_peel, n_restricted, n_restricted_inclusion_exclusion,
};
use crate::{Error, ExcludedSet, GroupElement, GroupSpec, Result};

/// Bounds of a verification sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    /// Every group presentation of order up to this is checked.
    pub max_order: u64,
    /// Sizes `0..=max_size`.
    pub max_size: u64,
    /// Excluded sets of every size `1..=max_excluded` in addition to the full group.
    pub max_excluded: usize,
    pub oracle: Oracle,
}

/// One disagreement, with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub check: &'static str,
    pub group: GroupSpec,
    pub exclude: String,
    pub size: u64,
    pub target: GroupElement,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: group={} exclude={{{}}} size={} target=({}) expected={} got={}",
            self.check, self.group, self.exclude, self.size, self.target, self.expected, self.got
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub groups: usize,
    pub checks: u64,
    pub checks_by_kind: BTreeMap<&'static str, u64>,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn compare(
        &mut self,
        check: &'static str,
        ctx: (&GroupSpec, &ExcludedSet, u64, &GroupElement),
        expected: Result<Count>,
        got: Result<Count>,
    ) -> Result<()> {
        // Oracle failures (budget refusals) abort the sweep; formula failures are findings.
        let expected = expected?;
        self.checks += 1;
        *self.checks_by_kind.entry(check).or_default() += 1;
        let got = match got {
            Ok(v) if v == expected => return Ok(()),
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        let (group, excluded, size, target) = ctx;
        self.mismatches.push(Mismatch {
            check,
            group: group.clone(),
            exclude: excluded.to_string(),
            size,
            target: target.clone(),
            expected: expected.to_string(),
            got,
        });
        Ok(())
    }
}

/// Every presentation `Z_{n_1} x ... x Z_{n_k}` with `2 <= n_1 <= ... <= n_k` and
/// order at most `max_order`, plus the trivial group `Z_1`. Sorted by order.
pub fn group_presentations(max_order: u64) -> Vec<GroupSpec> {
    fn extend(start: u64, prod: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        for n in start..=max / prod {
            cur.push(n);
            out.push(cur.clone());
            extend(n, prod * n, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max_order >= 1 {
        out.push(vec![1]);
        extend(2, 1, max_order, &mut Vec::new(), &mut out);
    }
    let mut groups: Vec<GroupSpec> = out
        .into_iter()
        .map(|o| GroupSpec::new(o).expect("small factor orders"))
        .collect();
    groups.sort_by(|a, b| (a.order(), a.orders()).cmp(&(b.order(), b.orders())));
    groups
}

/// All `k`-subsets of `items` for `k` in `1..=max`, in lexicographic order.
fn small_subsets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(
        items: &[T],
        start: usize,
        max: usize,
        cur: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        for k in start..items.len() {
            cur.push(items[k].clone());
            out.push(cur.clone());
            if cur.len() < max {
                rec(items, k + 1, max, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max > 0 {
        rec(items, 0, max, &mut Vec::new(), &mut out);
    }
    out
}

fn full_group_checks(report: &mut Report, group: &GroupSpec, config: &SweepConfig) -> Result<()> {
    let oracle = config.oracle;
    let everything = ExcludedSet::empty(group);
    let no_zero = ExcludedSet::new(group, [group.zero()])?;
    let n = i128::from(group.order());
    let series_m = oracle.series_multiset_table(&everything, config.max_size)?;
    let series_n = oracle.series_subset_table(&everything, config.max_size)?;
    let elements: Vec<GroupElement> = group.elements().collect();
    let mut partial_p: Vec<Count> = vec![Count::zero(); elements.len()];

    for i in 0..=config.max_size {
        let (mut mass_m, mut mass_n) = (Count::zero(), Count::zero());
        let mut mass_ok = true;
        for (k, g) in elements.iter().enumerate() {
            let ctx = (group, &everything, i, g);
            let m = m_full(group, i, g);
            let n_val = n_full(group, i, g);
            let p = p_parts(group, i, g);

            report.compare(
                "M vs enumeration",
                ctx,
                oracle.brute_multisets(&everything, i, g),
                m.clone(),
            )?;
            report.compare(
                "M vs series",
                ctx,
                Ok(series_m.get(i, g).cloned().unwrap_or_default()),
                m.clone(),
            )?;
            report.compare(
                "N vs enumeration",
                ctx,
                oracle.brute_subsets(&everything, i, g),
                n_val.clone(),
            )?;
            report.compare(
                "N vs series",
                ctx,
                Ok(series_n.get(i, g).cloned().unwrap_or_default()),
                n_val.clone(),
            )?;
            report.compare(
                "P vs enumeration",
                (group, &no_zero, i, g),
                oracle.brute_multisets(&no_zero, i, g),
                p.clone(),
            )?;
            if let (true, Ok(mv)) = (i >= 1 && i.gcd(&group.exponent()) == 1, &m) {
                report.compare(
                    "coprime fast path",
                    ctx,
                    Ok(mv.clone()),
                    m_coprime_fastpath(group, i, g),
                )?;
            }

            match (&m, &n_val, &p) {
                (Ok(m), Ok(n_val), Ok(p)) => {
                    mass_m += m;
                    mass_n += n_val;
                    partial_p[k] += p;
                    report.compare(
                        "telescoping sum of P",
                        ctx,
                        Ok(m.clone()),
                        Ok(partial_p[k].clone()),
                    )?;
                }
                // Already reported above.
                _ => mass_ok = false,
            }
        }
        if mass_ok {
            let ctx = (group, &everything, i, &elements[0]);
            let i = i128::from(i);
            report.compare("mass of M", ctx, Ok(binomial(n + i - 1, i)), Ok(mass_m))?;
            report.compare("mass of N", ctx, Ok(binomial(n, i)), Ok(mass_n))?;
        }
    }
    Ok(())
}

fn restricted_checks(report: &mut Report, group: &GroupSpec, config: &SweepConfig) -> Result<()> {
    let oracle = config.oracle;
    let elements: Vec<GroupElement> = group.elements().collect();
    for chosen in small_subsets(&elements, config.max_excluded) {
        let excluded = ExcludedSet::new(group, chosen)?;
        for i in 0..=config.max_size {
            for g in &elements {
                let ctx = (group, &excluded, i, g);
                let brute_m = oracle.brute_multisets(&excluded, i, g)?;
                report.compare(
                    "restricted M vs enumeration",
                    ctx,
                    Ok(brute_m.clone()),
                    m_restricted(&excluded, i, g),
                )?;
                report.compare(
                    "peeled M vs enumeration",
                    ctx,
                    Ok(brute_m),
                    m_restricted_peel(&excluded, i, g),
                )?;
                let brute_n = oracle.brute_subsets(&excluded, i, g)?;
                report.compare(
                    "restricted N vs enumeration",
                    ctx,
                    Ok(brute_n.clone()),
                    n_restricted(&excluded, i, g),
                )?;
                report.compare(
                    "inclusion-exclusion N vs enumeration",
                    ctx,
                    Ok(brute_n),
                    n_restricted_inclusion_exclusion(&excluded, i, g),
                )?;
            }
        }
    }
    Ok(())
}

/// Runs every comparison for every group in range. Returns `Err` only when an
/// oracle refuses to run; disagreements are collected in the report.
pub fn sweep(config: &SweepConfig) -> Result<Report> {
    if config.max_order == 0 {
        return Err(Error::domain("sweep needs max_order >= 1"));
    }
    let mut report = Report::default();
    for group in group_presentations(config.max_order) {
        report.groups += 1;
        full_group_checks(&mut report, &group, config)?;
        restricted_checks(&mut report, &group, config)?;
    }
    Ok(report)
}
