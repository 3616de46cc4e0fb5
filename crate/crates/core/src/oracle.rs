//! Brute-force combinatorial moment–cumulant formulas.
//!
//! These enumerate set partitions directly and share no code with the series
//! path in [`crate::transforms`]; they exist to cross-check it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::scalar::Scalar;

/// Largest `n` for which partitions are enumerated.
pub const ORACLE_MAX: usize = 10;

/// Block-size multiset (sorted descending) with its multiplicity.
pub type PartitionType = (Vec<usize>, u64);

/// Walks all set partitions of `{0..n}` as restricted growth strings.
fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut a = vec![0usize; n];
    let mut max = vec![0usize; n];
    loop {
        visit(&a);
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if a[i] <= max[i - 1] {
                a[i] += 1;
                let m = max[i - 1].max(a[i]);
                max[i] = m;
                for j in i + 1..n {
                    a[j] = 0;
                    max[j] = m;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// `a < b < c < d` with `a, c` in one block and `b, d` in another.
fn is_non_crossing(labels: &[usize]) -> bool {
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            if labels[b] == labels[a] {
                continue;
            }
            for c in b + 1..n {
                if labels[c] != labels[a] {
                    continue;
                }
                for d in c + 1..n {
                    if labels[d] == labels[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn block_sizes(labels: &[usize]) -> Vec<usize> {
    let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; blocks];
    for &l in labels {
        sizes[l] += 1;
    }
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    sizes
}

fn nc_types_uncached(n: usize) -> Vec<PartitionType> {
    let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for_each_set_partition(n, |labels| {
        if is_non_crossing(labels) {
            *counts.entry(block_sizes(labels)).or_default() += 1;
        }
    });
    counts.into_iter().collect()
}

/// Non-crossing partitions of an `n`-set, grouped by block sizes.
pub fn non_crossing_types(n: usize) -> &'static [PartitionType] {
    assert!(n <= ORACLE_MAX, "oracle enumeration capped at n = {ORACLE_MAX}");
    static CACHE: [OnceLock<Vec<PartitionType>>; ORACLE_MAX + 1] =
        [const { OnceLock::new() }; ORACLE_MAX + 1];
    CACHE[n].get_or_init(|| nc_types_uncached(n))
}

/// Number of non-crossing partitions of an `n`-set.
pub fn non_crossing_count(n: usize) -> u64 {
    non_crossing_types(n).iter().map(|(_, c)| c).sum()
}

/// Interval partitions (compositions) of `n`, as ordered part lists.
pub fn interval_partitions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    // bit i set: cut after position i
    (0u32..1 << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut len = 1;
            for i in 0..n - 1 {
                if mask & (1 << i) != 0 {
                    parts.push(len);
                    len = 1;
                } else {
                    len += 1;
                }
            }
            parts.push(len);
            parts
        })
        .collect()
}

/// `m_n = Σ_{π ∈ NC(n)} Π_{B ∈ π} κ_{|B|}` for `n = 0..=kappa.len()`.
pub fn nc_moments<T: Scalar>(kappa: &[T]) -> Vec<T> {
    (0..=kappa.len())
        .map(|n| {
            non_crossing_types(n)
                .iter()
                .fold(T::zero(), |acc, (sizes, count)| {
                    let prod = sizes
                        .iter()
                        .fold(T::one(), |p, &s| p * kappa[s - 1].clone());
                    acc + T::from_i64(*count as i64) * prod
                })
        })
        .collect()
}

/// `m_n = Σ over interval partitions of Π β_{|B|}` for `n = 0..=beta.len()`.
pub fn interval_moments<T: Scalar>(beta: &[T]) -> Vec<T> {
    (0..=beta.len())
        .map(|n| {
            interval_partitions(n).iter().fold(T::zero(), |acc, parts| {
                acc + parts.iter().fold(T::one(), |p, &s| p * beta[s - 1].clone())
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn counts_are_catalan() {
        let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(non_crossing_count(n), c, "n = {n}");
        }
    }

    #[test]
    fn compositions_counted() {
        for n in 1..8 {
            assert_eq!(interval_partitions(n).len(), 1 << (n - 1));
        }
    }

    #[test]
    fn nc_y_limit_moments() {
        let kappa = [rat(1, 1), rat(1, 1), rat(3, 2), rat(8, 3)];
        let m = nc_moments(&kappa);
        assert_eq!(m, vec![rat(1, 1), rat(1, 1), rat(2, 1), rat(11, 2), rat(53, 3)]);
    }

    #[test]
    fn interval_point_mass() {
        let c = rat(3, 2);
        let beta = [c.clone(), rat(0, 1), rat(0, 1), rat(0, 1)];
        let m: Vec<Rational> = interval_moments(&beta);
        for (k, mk) in m.iter().enumerate() {
            assert_eq!(*mk, c.powi(k as i64));
        }
    }
}
