//! Bruhat operators: letters `[ij]` of the affine Fomin–Kirillov algebra
//! acting on the right of the nilCoxeter algebra,
//!
//! `A_w · [ij] = A_{w t_ij}` if `ℓ(w t_ij) = ℓ(w) − 1`, and `0` otherwise,
//!
//! together with Dunkl elements, Murnaghan–Nakayama elements and the
//! divided differences `Δ_ij` on words.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nilcoxeter::NilCoxElement;
use crate::perm::{AffinePermutation, MarkedCover, TranspositionIndex};
use crate::rational::{add_into, Q};

/// A generator `[ij]` with `i < j` and `i ≢ j (mod n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FKLetter {
    pub i: i64,
    pub j: i64,
}

impl FKLetter {
    /// Normalizes `[ij]` with `i > j` to `−[ji]`; returns the letter and its
    /// sign.
    pub fn new(n: usize, i: i64, j: i64) -> Result<(Self, i64)> {
        if (i - j).rem_euclid(n as i64) == 0 {
            return Err(Error::OutOfRange(format!(
                "letter [{i},{j}] has equal residues mod {n}"
            )));
        }
        Ok(if i < j {
            (FKLetter { i, j }, 1)
        } else {
            (FKLetter { i: j, j: i }, -1)
        })
    }

    pub fn transposition(self) -> TranspositionIndex {
        TranspositionIndex { j1: self.i, j2: self.j }
    }

    /// Whether the two letters name the same generator (`[ij] = [i+n, j+n]`).
    pub fn same_generator(self, other: FKLetter, n: usize) -> bool {
        let d = other.i - self.i;
        d.rem_euclid(n as i64) == 0 && other.j - self.j == d
    }

    fn shares_residue(self, other: FKLetter, n: usize) -> bool {
        let ni = n as i64;
        let a = [self.i.rem_euclid(ni), self.j.rem_euclid(ni)];
        let b = [other.i.rem_euclid(ni), other.j.rem_euclid(ni)];
        a.iter().any(|x| b.contains(x))
    }
}

impl fmt::Display for FKLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

/// `A_w · [ij]` for one basis element.
pub fn letter_on(w: &AffinePermutation, letter: FKLetter) -> Option<AffinePermutation> {
    let (lower, delta) = w.apply_transposition(letter.transposition());
    (delta == -1).then_some(lower)
}

/// `x · [ij]`, times `sign`.
pub fn act_letter(x: &NilCoxElement, letter: FKLetter, sign: i64) -> NilCoxElement {
    let mut out = NilCoxElement::zero(x.n());
    let s = Q::from_integer(sign.into());
    for (w, c) in x.terms() {
        if let Some(lower) = letter_on(w, letter) {
            out.add_term(lower, c * &s);
        }
    }
    out
}

/// `x · [l1][l2]⋯`, letters applied left to right.
pub fn act_word(x: &NilCoxElement, letters: &[FKLetter]) -> NilCoxElement {
    letters.iter().fold(x.clone(), |acc, &l| act_letter(&acc, l, 1))
}

/// `Σ_{b' ≡ b} A_w · [a b']` (with `[a b'] = −[b' a]` when `b' < a`), as a
/// list of `(sign, lower)` pairs.
fn residue_class_on(w: &AffinePermutation, a: i64, b: Option<i64>) -> Vec<(i64, AffinePermutation)> {
    let n = w.n() as i64;
    let ra = a.rem_euclid(n);
    let mut out = Vec::new();
    for ((p, q), lower) in w.cover_classes() {
        let (rp, rq) = (p.rem_euclid(n), q.rem_euclid(n));
        if rp == ra && b.is_none_or(|b| b.rem_euclid(n) == rq) {
            out.push((1, lower));
        } else if rq == ra && b.is_none_or(|b| b.rem_euclid(n) == rp) {
            out.push((-1, lower));
        }
    }
    out
}

/// `x · Σ_{b' ≡ b (mod n)} [a b']`.
pub fn act_residue_class(x: &NilCoxElement, a: i64, b: i64) -> Result<NilCoxElement> {
    if (a - b).rem_euclid(x.n() as i64) == 0 {
        return Err(Error::OutOfRange(format!("residues of {a} and {b} coincide")));
    }
    let mut out = NilCoxElement::zero(x.n());
    for (w, c) in x.terms() {
        for (sign, lower) in residue_class_on(w, a, Some(b)) {
            out.add_term(lower, c * Q::from_integer(sign.into()));
        }
    }
    Ok(out)
}

/// The Dunkl operator `θ̃_i = Σ_{j ≢ i} [ij]`. Only finitely many terms act
/// nontrivially on each `A_w`: one per cover class touching residue `i`.
pub fn act_dunkl(x: &NilCoxElement, i: i64) -> NilCoxElement {
    let mut out = NilCoxElement::zero(x.n());
    for (w, c) in x.terms() {
        for (sign, lower) in residue_class_on(w, i, None) {
            out.add_term(lower, c * Q::from_integer(sign.into()));
        }
    }
    out
}

/// `θ̃_i^m`.
pub fn act_dunkl_power(x: &NilCoxElement, i: i64, m: usize) -> NilCoxElement {
    (0..m).fold(x.clone(), |acc, _| act_dunkl(&acc, i))
}

/// A connected tree of boxes `(i, j)` with `i ≤ anchor < j`: the graph with
/// an edge `{i, j}` per box is a tree whose vertices have distinct residues.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ConnectedTree {
    pub anchor: i64,
    pub boxes: BTreeSet<(i64, i64)>,
}

impl ConnectedTree {
    pub fn new(n: usize, anchor: i64, boxes: impl IntoIterator<Item = (i64, i64)>) -> Option<Self> {
        let boxes: Vec<(i64, i64)> = boxes.into_iter().collect();
        let set: BTreeSet<(i64, i64)> = boxes.iter().copied().collect();
        if set.len() != boxes.len() || set.iter().any(|&(i, j)| !(i <= anchor && anchor < j)) {
            return None;
        }
        let vertices: BTreeSet<i64> = set.iter().flat_map(|&(i, j)| [i, j]).collect();
        if vertices.len() != set.len() + 1 {
            return None;
        }
        let residues: BTreeSet<i64> = vertices.iter().map(|v| v.rem_euclid(n as i64)).collect();
        if residues.len() != vertices.len() {
            return None;
        }
        // |V| = |E| + 1, so connected ⇔ tree.
        let verts: Vec<i64> = vertices.iter().copied().collect();
        let idx = |v: i64| verts.binary_search(&v).unwrap();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for &(i, j) in &set {
            let (a, b) = (find(&mut parent, idx(i)), find(&mut parent, idx(j)));
            if a == b {
                return None;
            }
            parent[a] = b;
        }
        Some(ConnectedTree { anchor, boxes: set })
    }

    pub fn support(&self) -> BTreeSet<i64> {
        self.boxes.iter().flat_map(|&(i, j)| [i, j]).collect()
    }

    /// Number of vertices with index at most the anchor.
    pub fn c(&self) -> usize {
        self.support().iter().filter(|&&v| v <= self.anchor).count()
    }

    /// `(−1)^{c − 1}`.
    pub fn sign(&self) -> i64 {
        if self.c() % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// Number of distinct row indices `l`.
    pub fn rows(&self) -> usize {
        self.boxes.iter().map(|b| b.0).collect::<BTreeSet<_>>().len()
    }

    /// Number of distinct column indices `v + 1`.
    pub fn columns(&self) -> usize {
        self.boxes.iter().map(|b| b.1).collect::<BTreeSet<_>>().len()
    }
}

fn commute(a: (i64, i64), b: (i64, i64), n: usize) -> bool {
    let ni = n as i64;
    let ra = [a.0.rem_euclid(ni), a.1.rem_euclid(ni)];
    let rb = [b.0.rem_euclid(ni), b.1.rem_euclid(ni)];
    !ra.iter().any(|x| rb.contains(x))
}

/// The lexicographically smallest word equivalent to `word` under swaps of
/// adjacent commuting boxes.
pub fn commutation_normal_form(word: &[(i64, i64)], n: usize) -> Vec<(i64, i64)> {
    let mut rest = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let best = (0..rest.len())
            .filter(|&p| rest[..p].iter().all(|&b| commute(b, rest[p], n)))
            .min_by_key(|&p| rest[p])
            .unwrap();
        out.push(rest.remove(best));
    }
    out
}

/// Every word equivalent to `word` under commutations.
pub fn commutation_class(word: &[(i64, i64)], n: usize) -> Vec<Vec<(i64, i64)>> {
    fn rec(rest: &mut Vec<(i64, i64)>, cur: &mut Vec<(i64, i64)>, n: usize, out: &mut Vec<Vec<(i64, i64)>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for p in 0..rest.len() {
            if rest[..p].iter().all(|&b| commute(b, rest[p], n)) {
                let b = rest.remove(p);
                cur.push(b);
                rec(rest, cur, n, out);
                cur.pop();
                rest.insert(p, b);
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut word.to_vec(), &mut Vec::new(), n, &mut out);
    out
}

/// The labeling pattern that selects the representative labelings of a
/// tree with `l` rows and `v + 1` columns: the first `l` boxes have distinct
/// rows and weakly increasing columns, the remaining `v` boxes have distinct
/// columns and weakly increasing rows.
fn matches_pattern(word: &[(i64, i64)], l: usize) -> bool {
    let (head, tail) = word.split_at(l);
    let distinct = |xs: Vec<i64>| xs.iter().collect::<BTreeSet<_>>().len() == xs.len();
    distinct(head.iter().map(|b| b.0).collect())
        && head.windows(2).all(|p| p[0].1 <= p[1].1)
        && distinct(tail.iter().map(|b| b.1).collect())
        && tail.windows(2).all(|p| p[0].0 <= p[1].0)
}

/// Whether `word` is the chosen representative of a labeling class of the
/// tree `tree` that occurs in the Murnaghan–Nakayama element.
pub fn is_mn_labeling(word: &[(i64, i64)], tree: &ConnectedTree, n: usize) -> Result<bool> {
    let l = tree.rows();
    let v = tree.columns() - 1;
    if l + v != word.len() {
        return Err(Error::Inconsistency(format!(
            "tree with {} boxes spans {l} rows and {} columns",
            word.len(),
            v + 1
        )));
    }
    if commutation_normal_form(word, n) != word {
        return Ok(false);
    }
    Ok(commutation_class(word, n).iter().any(|w| matches_pattern(w, l)))
}

/// A chain of `m` marked covers from `w` whose letter word is a term of the
/// Murnaghan–Nakayama element `p_m(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MnChain {
    pub covers: Vec<MarkedCover>,
    pub tree: ConnectedTree,
    pub sign: i64,
}

impl MnChain {
    pub fn inside(&self) -> &AffinePermutation {
        &self.covers[0].upper
    }

    pub fn outside(&self) -> &AffinePermutation {
        &self.covers.last().unwrap().lower
    }

    pub fn word(&self) -> Vec<(i64, i64)> {
        self.covers.iter().map(|c| (c.index.j1, c.index.j2)).collect()
    }
}

/// All chains from `w` contributing to `A_w · p_m(a)`.
pub fn mn_chains(w: &AffinePermutation, m: usize, a: i64) -> Result<Vec<MnChain>> {
    let n = w.n();
    if m == 0 || m >= n {
        return Err(Error::OutOfRange(format!("MN degree m = {m} needs 1 ≤ m < n = {n}")));
    }
    fn dfs(
        x: &AffinePermutation,
        m: usize,
        a: i64,
        n: usize,
        path: &mut Vec<MarkedCover>,
        out: &mut Vec<MnChain>,
    ) -> Result<()> {
        if path.len() == m {
            let word: Vec<(i64, i64)> = path.iter().map(|c| (c.index.j1, c.index.j2)).collect();
            let Some(tree) = ConnectedTree::new(n, a, word.iter().copied()) else {
                return Ok(());
            };
            if is_mn_labeling(&word, &tree, n)? {
                let sign = tree.sign();
                out.push(MnChain {
                    covers: path.clone(),
                    tree,
                    sign,
                });
            }
            return Ok(());
        }
        for cover in x.marked_covers(a) {
            // Prune letters that already break distinct residues.
            let letter = FKLetter {
                i: cover.index.j1,
                j: cover.index.j2,
            };
            let ni = n as i64;
            let mut vertices: BTreeSet<i64> = path.iter().flat_map(|c| [c.index.j1, c.index.j2]).collect();
            vertices.insert(letter.i);
            vertices.insert(letter.j);
            let residues: BTreeSet<i64> = vertices.iter().map(|v| v.rem_euclid(ni)).collect();
            if residues.len() != vertices.len() || vertices.len() > m + 1 {
                continue;
            }
            let lower = cover.lower.clone();
            path.push(cover);
            dfs(&lower, m, a, n, path, out)?;
            path.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    dfs(w, m, a, n, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// The Murnaghan–Nakayama operator `x ↦ x · p_m(a)`.
pub fn act_mn(x: &NilCoxElement, m: usize, a: i64) -> Result<NilCoxElement> {
    let mut out = NilCoxElement::zero(x.n());
    for (w, c) in x.terms() {
        for chain in mn_chains(w, m, a)? {
            out.add_term(chain.outside().clone(), c * Q::from_integer(chain.sign.into()));
        }
    }
    Ok(out)
}

/// A linear combination of words in the letters `[ij]`.
#[derive(Clone, PartialEq, Eq)]
pub struct FKExpr {
    n: usize,
    terms: BTreeMap<Vec<FKLetter>, Q>,
}

impl FKExpr {
    pub fn zero(n: usize) -> Self {
        FKExpr {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::word(n, Vec::new(), Q::one())
    }

    pub fn word(n: usize, letters: Vec<FKLetter>, c: Q) -> Self {
        let mut out = Self::zero(n);
        add_into(&mut out.terms, letters, c);
        out
    }

    /// A word from raw pairs `(i, j)`, normalizing `[ij]` with `i > j` to
    /// `−[ji]`.
    pub fn from_pairs(n: usize, pairs: &[(i64, i64)]) -> Result<Self> {
        let mut sign = 1;
        let mut letters = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            let (l, s) = FKLetter::new(n, i, j)?;
            sign *= s;
            letters.push(l);
        }
        Ok(Self::word(n, letters, Q::from_integer(sign.into())))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<FKLetter>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &FKExpr, c: &Q) {
        for (w, d) in &other.terms {
            add_into(&mut self.terms, w.clone(), d * c);
        }
    }

    pub fn multiply(&self, other: &FKExpr) -> FKExpr {
        let mut out = FKExpr::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                add_into(&mut out.terms, w, c * d);
            }
        }
        out
    }

    /// The action `w[ij] = [w(i), w(j)]`, letter by letter.
    pub fn permute(&self, w: &AffinePermutation) -> Result<FKExpr> {
        let mut out = FKExpr::zero(self.n);
        for (letters, c) in &self.terms {
            let pairs: Vec<(i64, i64)> = letters.iter().map(|l| (w.value(l.i), w.value(l.j))).collect();
            out.add_scaled(&FKExpr::from_pairs(self.n, &pairs)?, c);
        }
        Ok(out)
    }

    /// `x ↦ D_x(x_elem)`: the Bruhat action on the nilCoxeter algebra.
    pub fn act(&self, x: &NilCoxElement) -> NilCoxElement {
        let mut out = NilCoxElement::zero(x.n());
        for (letters, c) in &self.terms {
            out.add_scaled(&act_word(x, letters), c);
        }
        out
    }

    /// `Δ_ij`, determined by `Δ(xy) = Δ(x) y + t_ij(x) Δ(y)` and
    /// `Δ([ab]) = 1` exactly when `[ab] = [ij]` up to a shift by `n`.
    pub fn divided_difference(&self, i: i64, j: i64) -> Result<FKExpr> {
        let (target, sign) = FKLetter::new(self.n, i, j)?;
        if sign < 0 {
            return Err(Error::OutOfRange(format!("Δ_{{{i},{j}}} needs i < j")));
        }
        let t = AffinePermutation::identity(self.n)
            .apply_transposition(target.transposition())
            .0;
        let mut out = FKExpr::zero(self.n);
        for (letters, c) in &self.terms {
            for (k, l) in letters.iter().enumerate() {
                if !l.same_generator(target, self.n) {
                    continue;
                }
                let prefix = FKExpr::word(self.n, letters[..k].to_vec(), Q::one()).permute(&t)?;
                let suffix = FKExpr::word(self.n, letters[k + 1..].to_vec(), Q::one());
                out.add_scaled(&prefix.multiply(&suffix), c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FKExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if w.is_empty() {
                write!(f, "1")?;
            }
            for l in w {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FKExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A single signed word, the serialized form of FK monomials.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FKWord {
    pub sign: i64,
    pub letters: Vec<FKLetter>,
}

impl FKWord {
    pub fn to_expr(&self, n: usize) -> Result<FKExpr> {
        for l in &self.letters {
            FKLetter::new(n, l.i, l.j)?;
            if l.i >= l.j {
                return Err(Error::OutOfRange(format!("letter {l} must have i < j")));
            }
        }
        Ok(FKExpr::word(n, self.letters.clone(), Q::from_integer(self.sign.into())))
    }
}

/// Whether letters commute by the distinct-residue rule.
pub fn letters_commute(a: FKLetter, b: FKLetter, n: usize) -> bool {
    !a.shares_residue(b, n)
}

/// `true` if every coefficient of `x` is zero.
pub fn vanishes(x: &NilCoxElement) -> bool {
    x.terms().values().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::elements_up_to;

    fn w(n: usize, word: &[usize]) -> AffinePermutation {
        AffinePermutation::from_word(n, word).unwrap()
    }

    fn a(n: usize, word: &[usize]) -> NilCoxElement {
        NilCoxElement::from_word(n, word).unwrap()
    }

    fn letter(n: usize, i: i64, j: i64) -> FKLetter {
        FKLetter::new(n, i, j).unwrap().0
    }

    #[test]
    fn letter_examples() {
        assert_eq!(act_letter(&a(3, &[0]), letter(3, 0, 1), 1), NilCoxElement::one(3));
        assert!(act_letter(&NilCoxElement::one(3), letter(3, 0, 1), 1).is_zero());
        assert!(act_letter(&a(3, &[1]), letter(3, 0, 1), 1).is_zero());
        assert_eq!(FKLetter::new(3, 2, 0).unwrap(), (letter(3, 0, 2), -1));
        assert!(FKLetter::new(3, 0, 3).is_err());
        // Shifting a letter by n does not change its action.
        for x in elements_up_to(3, 4) {
            for (i, j) in [(0, 1), (-2, 3), (1, 5)] {
                assert_eq!(letter_on(&x, letter(3, i, j)), letter_on(&x, letter(3, i + 3, j + 3)));
            }
        }
    }

    #[test]
    fn dunkl_examples() {
        assert!(act_dunkl(&NilCoxElement::one(3), 1).is_zero());
        assert_eq!(act_dunkl(&a(3, &[1]), 1), NilCoxElement::one(3));
        assert!(act_dunkl(&a(3, &[1]), 0).is_zero());
        assert_eq!(act_dunkl(&a(3, &[1]), 2), -&NilCoxElement::one(3));
    }

    /// `Σ_j [ij]` by scanning representatives in a wide window.
    fn dunkl_scan(x: &NilCoxElement, i: i64) -> NilCoxElement {
        let n = x.n() as i64;
        let mut out = NilCoxElement::zero(x.n());
        for j in (i - 40)..(i + 40) {
            if (j - i).rem_euclid(n) == 0 {
                continue;
            }
            let (l, s) = FKLetter::new(x.n(), i, j).unwrap();
            out.add_scaled(&act_letter(x, l, s), &Q::one());
        }
        out
    }

    #[test]
    fn dunkl_matches_scan() {
        for n in 2..=4 {
            for x in elements_up_to(n, 4) {
                let b = NilCoxElement::basis(x);
                for i in -2..=(n as i64) {
                    assert_eq!(act_dunkl(&b, i), dunkl_scan(&b, i));
                }
            }
        }
    }

    /// `Σ [i a_1]⋯[i a_m]` over integers with `a_1, …, a_m, i` of distinct
    /// residues, by scanning.
    fn distinct_residue_power(x: &NilCoxElement, i: i64, m: usize) -> NilCoxElement {
        let n = x.n() as i64;
        fn rec(x: &NilCoxElement, i: i64, m: usize, used: &mut Vec<i64>, n: i64, out: &mut NilCoxElement) {
            if x.is_zero() {
                return;
            }
            if m == 0 {
                out.add_scaled(x, &Q::one());
                return;
            }
            for j in (i - 30)..(i + 30) {
                let r = j.rem_euclid(n);
                if used.contains(&r) {
                    continue;
                }
                let (l, s) = FKLetter::new(x.n(), i, j).unwrap();
                let y = act_letter(x, l, s);
                used.push(r);
                rec(&y, i, m - 1, used, n, out);
                used.pop();
            }
        }
        let mut out = NilCoxElement::zero(x.n());
        rec(x, i, m, &mut vec![i.rem_euclid(n)], n, &mut out);
        out
    }

    #[test]
    fn dunkl_powers_match_distinct_residue_chains() {
        for n in 2..=4 {
            for x in elements_up_to(n, 4) {
                let b = NilCoxElement::basis(x);
                for i in 0..n as i64 {
                    for m in 1..=3 {
                        assert_eq!(act_dunkl_power(&b, i, m), distinct_residue_power(&b, i, m));
                    }
                }
            }
        }
    }

    #[test]
    fn dunkl_powers_vanish_at_order_n() {
        for n in 2..=4 {
            for x in elements_up_to(n, 6) {
                let b = NilCoxElement::basis(x);
                for i in 0..n as i64 {
                    assert!(act_dunkl_power(&b, i, n).is_zero());
                }
            }
        }
    }

    #[test]
    fn mn_examples() {
        assert!(act_mn(&NilCoxElement::one(3), 2, 0).unwrap().is_zero());
        assert_eq!(act_mn(&a(3, &[0]), 1, 0).unwrap(), NilCoxElement::one(3));
        assert_eq!(act_mn(&a(3, &[1, 0]), 2, 0).unwrap(), NilCoxElement::one(3));
        let chains = mn_chains(&w(3, &[1, 0]), 2, 0).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].word(), vec![(0, 2), (0, 1)]);
        assert_eq!(chains[0].sign, 1);
        // The reversed word annihilates A_{s1 s0}.
        assert!(act_word(&a(3, &[1, 0]), &[letter(3, 0, 1), letter(3, 0, 2)]).is_zero());
        assert!(act_mn(&a(3, &[0]), 3, 0).is_err());
        assert!(act_mn(&a(3, &[0]), 0, 0).is_err());
    }

    #[test]
    fn mn_shift_adds_dunkl_power() {
        for n in 2..=4 {
            let max = if n == 4 { 5 } else { 6 };
            for x in elements_up_to(n, max) {
                let b = NilCoxElement::basis(x);
                for m in 1..n {
                    for a in -1..n as i64 {
                        let lhs = &act_mn(&b, m, a + 1).unwrap() - &act_mn(&b, m, a).unwrap();
                        assert_eq!(lhs, act_dunkl_power(&b, a + 1, m), "n={n} m={m} a={a} w={}", b);
                    }
                }
            }
        }
    }

    #[test]
    fn mn_lowers_h_elements() {
        for n in 2..=4 {
            for i in 1..n {
                for m in 1..=i {
                    for a in 0..n as i64 {
                        let got = act_mn(&crate::nilcoxeter::h_element(n, i).unwrap(), m, a).unwrap();
                        assert_eq!(got, crate::nilcoxeter::h_element(n, i - m).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn tree_validation() {
        assert!(ConnectedTree::new(3, 0, [(0, 1), (0, 2)]).is_some());
        assert!(ConnectedTree::new(3, 0, [(0, 1), (0, 4)]).is_none());
        assert!(ConnectedTree::new(4, 0, [(0, 1), (-1, 2)]).is_none());
        assert!(ConnectedTree::new(3, 0, [(1, 2)]).is_none());
        let t = ConnectedTree::new(6, 0, [(-2, 1), (-3, 1), (-3, 5), (-3, 6)]).unwrap();
        assert_eq!((t.rows(), t.columns(), t.c(), t.sign()), (2, 3, 2, -1));
    }

    #[test]
    fn normal_forms() {
        // (0,1) and (2,3) commute for n = 5; (0,1) and (0,2) do not.
        assert_eq!(commutation_normal_form(&[(2, 3), (0, 1)], 5), vec![(0, 1), (2, 3)]);
        assert_eq!(commutation_normal_form(&[(0, 2), (0, 1)], 5), vec![(0, 2), (0, 1)]);
        assert_eq!(commutation_class(&[(-1, 1), (0, 2), (-1, 3)], 5).len(), 3);
    }

    #[test]
    fn commuting_letters_commute_as_operators() {
        let n = 4;
        let letters: Vec<FKLetter> = (-3..=1)
            .flat_map(|i| (i + 1..=i + 6).map(move |j| (i, j)))
            .filter(|&(i, j)| (j - i) % 4 != 0)
            .map(|(i, j)| letter(n, i, j))
            .collect();
        for x in elements_up_to(n, 4) {
            let b = NilCoxElement::basis(x);
            for &l1 in &letters {
                for &l2 in &letters {
                    if letters_commute(l1, l2, n) {
                        assert_eq!(act_word(&b, &[l1, l2]), act_word(&b, &[l2, l1]));
                    }
                }
            }
        }
    }

    #[test]
    fn divided_difference_examples() {
        let n = 3;
        let x = FKExpr::from_pairs(n, &[(0, 1)]).unwrap();
        assert_eq!(x.divided_difference(0, 1).unwrap(), FKExpr::one(n));
        let y = FKExpr::from_pairs(n, &[(2, 3)]).unwrap();
        assert!(y.divided_difference(0, 1).unwrap().is_zero());
        let xy = FKExpr::from_pairs(n, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(xy.divided_difference(0, 1).unwrap(), y);
        // Shifted copies of the letter count.
        let z = FKExpr::from_pairs(n, &[(3, 4)]).unwrap();
        assert_eq!(z.divided_difference(0, 1).unwrap(), FKExpr::one(n));
        // The twist acts on the prefix: Δ_01([0,2][0,1]) = t_01([0,2]) = [1,2].
        let u = FKExpr::from_pairs(n, &[(0, 2), (0, 1)]).unwrap();
        assert_eq!(
            u.divided_difference(0, 1).unwrap(),
            FKExpr::from_pairs(n, &[(1, 2)]).unwrap()
        );
    }

    #[test]
    fn leibniz_rule_for_divided_differences() {
        let n = 3;
        let words = [
            vec![(0, 1), (1, 2)],
            vec![(0, 2), (-1, 1), (0, 1)],
            vec![(1, 3), (0, 1)],
            vec![(-2, 0), (0, 4), (2, 3)],
        ];
        let t = AffinePermutation::simple(n, 0).unwrap();
        for a_w in &words {
            for b_w in &words {
                let x = FKExpr::from_pairs(n, a_w).unwrap();
                let y = FKExpr::from_pairs(n, b_w).unwrap();
                let lhs = x.multiply(&y).divided_difference(0, 1).unwrap();
                let mut rhs = x.divided_difference(0, 1).unwrap().multiply(&y);
                rhs.add_scaled(
                    &x.permute(&t).unwrap().multiply(&y.divided_difference(0, 1).unwrap()),
                    &Q::one(),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn json_forms() {
        let word = FKWord {
            sign: -1,
            letters: vec![letter(3, 0, 1), letter(3, -1, 1)],
        };
        let s = serde_json::to_string(&word).unwrap();
        assert_eq!(s, r#"{"sign":-1,"letters":[{"i":0,"j":1},{"i":-1,"j":1}]}"#);
        assert_eq!(serde_json::from_str::<FKWord>(&s).unwrap(), word);
        assert!(word.to_expr(3).is_ok());
    }
}
