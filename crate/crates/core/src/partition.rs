//! Integer partitions and compositions helpers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts.
///
/// Ordered by size first, then reverse-lexicographically on the parts, so
/// `(3) < (2,1) < (1,1,1)` and every partition of 2 precedes those of 3.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_bounded_by(&self, k: usize) -> bool {
        self.largest() <= k
    }

    /// Union of parts (the product `p_λ p_μ = p_{λ∪μ}`).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// Multiplicities `α_i` of each part size `i`, indexed from 1.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.0.iter().rev() {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_λ = ∏ α_i! i^{α_i}`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::from(1);
        for (part, mult) in self.multiplicities() {
            for j in 1..=mult {
                z *= BigInt::from(j) * BigInt::from(part);
            }
        }
        z
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let mut out = Vec::new();
        for i in 1..=self.largest() {
            out.push(self.0.iter().filter(|&&p| p >= i).count());
        }
        Partition(out)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `d` with parts at most `bound`, in canonical order.
pub fn partitions_bounded(d: usize, bound: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, bound, &mut Vec::new(), &mut out);
    out
}

pub fn partitions(d: usize) -> Vec<Partition> {
    partitions_bounded(d, d)
}

/// All distinct rearrangements of the parts of `lambda`.
pub fn rearrangements(lambda: &Partition) -> Vec<Vec<usize>> {
    fn rec(counts: &mut Vec<(usize, usize)>, cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            cur.push(counts[i].0);
            rec(counts, cur, total, out);
            cur.pop();
            counts[i].1 += 1;
        }
    }
    let mut counts = lambda.multiplicities();
    counts.reverse();
    let mut out = Vec::new();
    rec(&mut counts, &mut Vec::new(), lambda.len(), &mut out);
    out
}
