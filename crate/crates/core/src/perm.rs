//! The affine symmetric group `S̃_n` in window notation.
//!
//! An element `w` is a bijection of `Z` with `w(i + n) = w(i) + n` and
//! `w(1) + … + w(n) = n(n+1)/2`; it is stored by its window
//! `[w(1), …, w(n)]`. Permutations act on positions: the group product is
//! `(uv)(j) = u(v(j))`, so right multiplication by `s_i` swaps the entries in
//! positions `i` and `i+1` (and their translates).

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{partitions_bounded, Partition};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePermutation {
    n: usize,
    window: Box<[i64]>,
    length: usize,
}

/// Integer representative `(j1, j2)` of a reflection `t_{j1,j2}`.
///
/// As group elements `(j1, j2)` and `(j1 + n, j2 + n)` coincide; as marked
/// indices they are distinct, so the type keeps the actual integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct TranspositionIndex {
    pub j1: i64,
    pub j2: i64,
}

impl TranspositionIndex {
    pub fn new(n: usize, j1: i64, j2: i64) -> Result<Self> {
        if j1 >= j2 {
            return Err(Error::OutOfRange(format!(
                "transposition needs j1 < j2, got ({j1},{j2})"
            )));
        }
        if (j2 - j1).rem_euclid(n as i64) == 0 {
            return Err(Error::OutOfRange(format!(
                "transposition ({j1},{j2}) has equal residues mod {n}"
            )));
        }
        Ok(TranspositionIndex { j1, j2 })
    }

    pub fn shifted(self, by: i64) -> Self {
        TranspositionIndex {
            j1: self.j1 + by,
            j2: self.j2 + by,
        }
    }
}

/// A marked strong cover `upper → lower` with `lower = upper · t_index` and
/// `ℓ(lower) = ℓ(upper) − 1`; `label = upper(j1) = lower(j2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MarkedCover {
    pub upper: AffinePermutation,
    pub lower: AffinePermutation,
    pub index: TranspositionIndex,
    pub label: i64,
}

fn window_length(n: usize, window: &[i64]) -> usize {
    let ni = n as i64;
    let mut len = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            len += (window[j] - window[i]).div_euclid(ni).abs();
        }
    }
    len as usize
}

impl AffinePermutation {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 2, "modulus must be at least 2");
        let window: Vec<i64> = (1..=n as i64).collect();
        AffinePermutation {
            n,
            window: window.into_boxed_slice(),
            length: 0,
        }
    }

    pub fn from_window(n: usize, window: Vec<i64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        if window.len() != n {
            return Err(Error::InvalidWindow {
                n,
                reason: format!("expected {n} entries, got {}", window.len()),
            });
        }
        let sum: i64 = window.iter().sum();
        let expected = (n * (n + 1) / 2) as i64;
        if sum != expected {
            return Err(Error::InvalidWindow {
                n,
                reason: format!("entries sum to {sum}, expected {expected}"),
            });
        }
        let mut seen = vec![false; n];
        for &v in &window {
            let r = v.rem_euclid(n as i64) as usize;
            if seen[r] {
                return Err(Error::InvalidWindow {
                    n,
                    reason: format!("residue {r} repeated"),
                });
            }
            seen[r] = true;
        }
        Ok(Self::from_window_unchecked(n, window))
    }

    fn from_window_unchecked(n: usize, window: Vec<i64>) -> Self {
        let length = window_length(n, &window);
        AffinePermutation {
            n,
            window: window.into_boxed_slice(),
            length,
        }
    }

    /// The simple reflection `s_i`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::OutOfRange(format!("generator s_{i} with n = {n}")));
        }
        Ok(Self::identity(n).mul_simple_right(i))
    }

    /// The product `s_{i1} ⋯ s_{il}`; the word need not be reduced.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        if let Some(&bad) = word.iter().find(|&&i| i >= n) {
            return Err(Error::OutOfRange(format!("residue {bad} in a word for n = {n}")));
        }
        Ok(word.iter().fold(Self::identity(n), |w, &i| w.mul_simple_right(i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `w(j)` for any integer `j`.
    pub fn value(&self, j: i64) -> i64 {
        let n = self.n as i64;
        let r = (j - 1).rem_euclid(n);
        let q = (j - 1).div_euclid(n);
        self.window[r as usize] + q * n
    }

    /// `w^{-1}(v)`.
    pub fn position_of(&self, v: i64) -> i64 {
        let n = self.n as i64;
        let r = v.rem_euclid(n);
        let (idx, &base) = self
            .window
            .iter()
            .enumerate()
            .find(|(_, &x)| x.rem_euclid(n) == r)
            .expect("window residues form a complete system");
        idx as i64 + 1 + (v - base) / n * n
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Group product `self · other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let window = other.window.iter().map(|&j| self.value(j)).collect();
        Ok(Self::from_window_unchecked(self.n, window))
    }

    pub fn inverse(&self) -> Self {
        let window = (1..=self.n as i64).map(|v| self.position_of(v)).collect();
        Self::from_window_unchecked(self.n, window)
    }

    /// `w · s_i`: swap positions `i` and `i + 1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        self.mul_transposition_raw(i as i64, i as i64 + 1)
    }

    /// `s_i · w`: swap the values `i` and `i + 1` (mod-n translates).
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let n = self.n as i64;
        let i = i as i64;
        let window = self
            .window
            .iter()
            .map(|&v| {
                let r = v.rem_euclid(n);
                if r == i.rem_euclid(n) {
                    v + 1
                } else if r == (i + 1).rem_euclid(n) {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        Self::from_window_unchecked(self.n, window)
    }

    fn mul_transposition_raw(&self, a: i64, b: i64) -> Self {
        let n = self.n as i64;
        let ra = a.rem_euclid(n);
        let rb = b.rem_euclid(n);
        let wa = self.value(a);
        let wb = self.value(b);
        let window = (1..=n)
            .map(|p| {
                let r = p.rem_euclid(n);
                if r == ra {
                    wb + (p - a)
                } else if r == rb {
                    wa + (p - b)
                } else {
                    self.value(p)
                }
            })
            .collect();
        Self::from_window_unchecked(self.n, window)
    }

    /// `w · t` together with `ℓ(w·t) − ℓ(w)`.
    pub fn apply_transposition(&self, t: TranspositionIndex) -> (Self, i64) {
        let out = self.mul_transposition_raw(t.j1, t.j2);
        let delta = out.length as i64 - self.length as i64;
        (out, delta)
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.value(i as i64) > self.value(i as i64 + 1)
    }

    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position_of(i as i64) > self.position_of(i as i64 + 1)
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length);
        let mut w = self.clone();
        while !w.is_identity() {
            let i = (0..self.n)
                .find(|&i| w.has_left_descent(i))
                .expect("non-identity element has a left descent");
            word.push(i);
            w = w.mul_simple_left(i);
        }
        word
    }

    /// Inversion classes `(p, q)` with `1 ≤ p ≤ n`, `p < q`, `w(p) > w(q)`.
    pub fn inversions(&self) -> Vec<(i64, i64)> {
        let n = self.n as i64;
        let min = *self.window.iter().min().unwrap();
        let max = *self.window.iter().max().unwrap();
        let reach = n * ((max - min) / n + 2);
        let mut out = Vec::new();
        for p in 1..=n {
            let wp = self.value(p);
            for q in (p + 1)..=(p + reach) {
                if (q - p).rem_euclid(n) != 0 && self.value(q) < wp {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Inversion classes whose reflection lowers the length by exactly one,
    /// together with the lower element.
    pub fn cover_classes(&self) -> Vec<((i64, i64), AffinePermutation)> {
        self.inversions()
            .into_iter()
            .filter_map(|(p, q)| {
                let lower = self.mul_transposition_raw(p, q);
                (lower.length + 1 == self.length).then_some(((p, q), lower))
            })
            .collect()
    }

    /// All marked strong covers of `w` with respect to `a`: every integer
    /// representative `(j1, j2)` of a cover class with `j1 ≤ a < j2`.
    pub fn marked_covers(&self, a: i64) -> Vec<MarkedCover> {
        let n = self.n as i64;
        let mut out = Vec::new();
        for ((p, q), lower) in self.cover_classes() {
            // p + tn ≤ a < q + tn  ⇔  (a − q)/n < t ≤ (a − p)/n
            let lo = (a - q).div_euclid(n) + 1;
            let hi = (a - p).div_euclid(n);
            for t in lo..=hi {
                let index = TranspositionIndex {
                    j1: p + t * n,
                    j2: q + t * n,
                };
                out.push(MarkedCover {
                    upper: self.clone(),
                    lower: lower.clone(),
                    label: self.value(index.j1),
                    index,
                });
            }
        }
        out.sort_by_key(|c| c.index);
        out
    }

    /// 0-Grassmannian: every reduced word ends in `s_0`, i.e. the window is
    /// increasing. The identity counts as 0-Grassmannian.
    pub fn is_grassmannian(&self) -> bool {
        self.window.windows(2).all(|p| p[0] < p[1])
    }

    pub fn is_finite(&self) -> bool {
        let mut sorted = self.window.to_vec();
        sorted.sort_unstable();
        sorted.iter().zip(1..).all(|(&v, i)| v == i)
    }

    /// `w = w0 · w1` with `w0` 0-Grassmannian and `w1 ∈ S_n`.
    pub fn grassmannian_factorize(&self) -> (AffinePermutation, AffinePermutation) {
        let mut sorted = self.window.to_vec();
        sorted.sort_unstable();
        let w1: Vec<i64> = self
            .window
            .iter()
            .map(|v| sorted.iter().position(|s| s == v).unwrap() as i64 + 1)
            .collect();
        (
            Self::from_window_unchecked(self.n, sorted),
            Self::from_window_unchecked(self.n, w1),
        )
    }

    /// A shortest `v` with `w·v` 0-Grassmannian and `ℓ(wv) = ℓ(w) + ℓ(v)`;
    /// ties go to the lexicographically smallest reduced word of `v`.
    /// Returns `v` and that word.
    pub fn grassmannian_lift(&self) -> Result<(AffinePermutation, Vec<usize>)> {
        const MAX_DEPTH: usize = 64;
        if self.is_grassmannian() {
            return Ok((Self::identity(self.n), Vec::new()));
        }
        let mut frontier: Vec<(AffinePermutation, Vec<usize>)> = vec![(self.clone(), Vec::new())];
        let mut seen: HashSet<AffinePermutation> = HashSet::new();
        seen.insert(self.clone());
        for _ in 0..MAX_DEPTH {
            let mut next = Vec::new();
            for (x, word) in &frontier {
                for i in 0..self.n {
                    let y = x.mul_simple_right(i);
                    if y.length != x.length + 1 || !seen.insert(y.clone()) {
                        continue;
                    }
                    let mut w2 = word.clone();
                    w2.push(i);
                    if y.is_grassmannian() {
                        let v = Self::from_word(self.n, &w2)?;
                        return Ok((v, w2));
                    }
                    next.push((y, w2));
                }
            }
            frontier = next;
        }
        Err(Error::Inconsistency(format!(
            "no Grassmannian lift of {self} within depth {MAX_DEPTH}"
        )))
    }

    /// The 0-Grassmannian element `w_λ` of a k-bounded partition (k = n − 1):
    /// read residues `c − r (mod n)` of each row right to left, bottom row
    /// first.
    pub fn from_bounded_partition(n: usize, lambda: &Partition) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        if !lambda.is_bounded_by(n - 1) {
            return Err(Error::NotBounded(lambda.to_string(), n - 1));
        }
        let mut word = Vec::with_capacity(lambda.size());
        for (r, &len) in lambda.parts().iter().enumerate().rev() {
            for c in (0..len).rev() {
                word.push((c as i64 - r as i64).rem_euclid(n as i64) as usize);
            }
        }
        let w = Self::from_word(n, &word)?;
        if w.length != lambda.size() || !w.is_grassmannian() {
            return Err(Error::Inconsistency(format!(
                "reading word of {lambda} does not give a reduced 0-Grassmannian element"
            )));
        }
        Ok(w)
    }

    /// Inverse of [`from_bounded_partition`](Self::from_bounded_partition).
    pub fn bounded_partition(&self) -> Result<Partition> {
        if !self.is_grassmannian() {
            return Err(Error::NotGrassmannian);
        }
        for lambda in partitions_bounded(self.length, self.n - 1) {
            if &Self::from_bounded_partition(self.n, &lambda)? == self {
                return Ok(lambda);
            }
        }
        Err(Error::Inconsistency(format!("no bounded partition for {self}")))
    }

    /// The unique cyclically decreasing element using exactly the generators
    /// in `subset` (a proper subset of `Z/nZ`).
    pub fn cyclically_decreasing(n: usize, subset: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        let mut present = vec![false; n];
        for &j in subset {
            if j >= n {
                return Err(Error::OutOfRange(format!("residue {j} with n = {n}")));
            }
            present[j] = true;
        }
        let Some(missing) = (0..n).find(|&j| !present[j]) else {
            return Err(Error::OutOfRange(
                "cyclically decreasing element needs a proper subset".into(),
            ));
        };
        // Starting just below a missing residue and walking downwards puts
        // s_{i+1} before s_i for every adjacent pair in the subset.
        let word: Vec<usize> = (1..n).map(|d| (missing + n - d) % n).filter(|&j| present[j]).collect();
        Self::from_word(n, &word)
    }

    /// `ρ_{i,m} = s_{−i} s_{−i+1} ⋯ s_{−1} s_{m−1−i} ⋯ s_1 s_0`.
    pub fn rho(n: usize, i: usize, m: usize) -> Result<Self> {
        if !(i < m && m < n) {
            return Err(Error::OutOfRange(format!(
                "rho needs 0 ≤ i < m < n, got i={i}, m={m}, n={n}"
            )));
        }
        let ni = n as i64;
        let mut word: Vec<usize> = (1..=i as i64).rev().map(|t| (-t).rem_euclid(ni) as usize).collect();
        word.extend((0..m - i).rev());
        let w = Self::from_word(n, &word)?;
        debug_assert_eq!(w.length, m);
        Ok(w)
    }
}

impl Ord for AffinePermutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.length.cmp(&other.length))
            .then_with(|| self.window.cmp(&other.window))
    }
}

impl PartialOrd for AffinePermutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    n: usize,
    window: Vec<i64>,
}

impl Serialize for AffinePermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationJson {
            n: self.n,
            window: self.window.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffinePermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PermutationJson::deserialize(d)?;
        AffinePermutation::from_window(raw.n, raw.window).map_err(serde::de::Error::custom)
    }
}

type LevelCache = Mutex<HashMap<(usize, usize), Arc<Vec<AffinePermutation>>>>;

fn level_cache() -> &'static LevelCache {
    static CACHE: OnceLock<LevelCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All elements of length `d`, sorted.
pub fn elements_of_length(n: usize, d: usize) -> Arc<Vec<AffinePermutation>> {
    if let Some(v) = level_cache().lock().unwrap().get(&(n, d)) {
        return v.clone();
    }
    let level: Vec<AffinePermutation> = if d == 0 {
        vec![AffinePermutation::identity(n)]
    } else {
        let prev = elements_of_length(n, d - 1);
        let mut set = HashSet::new();
        for w in prev.iter() {
            for i in 0..n {
                let y = w.mul_simple_right(i);
                if y.length == d {
                    set.insert(y);
                }
            }
        }
        let mut v: Vec<_> = set.into_iter().collect();
        v.sort();
        v
    };
    let level = Arc::new(level);
    level_cache().lock().unwrap().insert((n, d), level.clone());
    level
}

/// All elements of length at most `max_len`, sorted.
pub fn elements_up_to(n: usize, max_len: usize) -> Vec<AffinePermutation> {
    (0..=max_len)
        .flat_map(|d| elements_of_length(n, d).iter().cloned().collect::<Vec<_>>())
        .collect()
}
