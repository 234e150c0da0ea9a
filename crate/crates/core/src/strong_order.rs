//! The labelled strong order: BSS operators, k-strong-ribbons and ribbon
//! tableaux.
//!
//! An edge `x → y` of the graph at anchor `a` is a marked strong cover
//! `y = x t_{j1 j2}` with `j1 ≤ a < j2`, labelled `x(j1)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fk_action::{mn_chains, MnChain};
use crate::nilcoxeter::NilCoxElement;
use crate::partition::{partitions_bounded, Partition};
use crate::perm::AffinePermutation;
use crate::rational::Q;
use crate::symfunc::{Basis, SymFunc};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::OutOfRange(format!("composition {parts:?} has a zero part")));
        }
        Ok(Composition(parts))
    }

    /// The hook `[m − i, 1^i]`.
    pub fn hook(i: usize, m: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::OutOfRange(format!("hook [{m}−{i}, 1^{i}] needs i < m")));
        }
        let mut parts = vec![m - i];
        parts.extend(std::iter::repeat_n(1, i));
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Positions `1 ≤ p < |J|` that end a block.
    fn breaks(&self) -> Vec<bool> {
        let size = self.size();
        let mut out = vec![false; size.max(1)];
        let mut acc = 0;
        for &j in &self.0[..self.0.len().saturating_sub(1)] {
            acc += j;
            out[acc] = true;
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Vec<usize> {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The composition cut at the strict ascents `labels[p−1] < labels[p]`.
pub fn ascent_composition(labels: &[i64]) -> Result<Composition> {
    if labels.is_empty() {
        return Err(Error::OutOfRange("ascent composition of an empty sequence".into()));
    }
    let mut parts = Vec::new();
    let mut start = 0;
    for p in 1..labels.len() {
        if labels[p - 1] < labels[p] {
            parts.push(p - start);
            start = p;
        }
    }
    parts.push(labels.len() - start);
    Composition::new(parts)
}

/// The BSS operator `D_J^{(a)}`: the sum of the endpoints of all labelled
/// paths of length `|J|` whose labels have ascent composition `J`.
pub fn bss_apply(x: &NilCoxElement, j: &Composition, a: i64) -> NilCoxElement {
    let breaks = j.breaks();
    let len = j.size();
    // Endpoints reachable from (w, step, last label), with multiplicity.
    type Key = (AffinePermutation, usize, i64);
    fn walk(
        w: &AffinePermutation,
        step: usize,
        last: Option<i64>,
        len: usize,
        a: i64,
        breaks: &[bool],
        memo: &mut HashMap<Key, BTreeMap<AffinePermutation, i64>>,
    ) -> BTreeMap<AffinePermutation, i64> {
        if step == len {
            return BTreeMap::from([(w.clone(), 1)]);
        }
        if let Some(l) = last {
            if let Some(hit) = memo.get(&(w.clone(), step, l)) {
                return hit.clone();
            }
        }
        let mut out = BTreeMap::new();
        for cover in w.marked_covers(a) {
            if let Some(l) = last {
                if (l < cover.label) != breaks[step] {
                    continue;
                }
            }
            for (end, c) in walk(&cover.lower, step + 1, Some(cover.label), len, a, breaks, memo) {
                *out.entry(end).or_insert(0) += c;
            }
        }
        if let Some(l) = last {
            memo.insert((w.clone(), step, l), out.clone());
        }
        out
    }
    let mut memo = HashMap::new();
    let mut out = NilCoxElement::zero(x.n());
    for (w, c) in x.terms() {
        for (end, mult) in walk(w, 0, None, len, a, &breaks, &mut memo) {
            out.add_term(end, c * Q::from_integer(mult.into()));
        }
    }
    out
}

/// A k-strong-ribbon: a chain of marked covers at anchor 0 whose word is a
/// term of the Murnaghan–Nakayama element.
pub type RibbonChain = MnChain;

/// All k-strong-ribbons of size `m` with inside `w`.
pub fn ribbons(w: &AffinePermutation, m: usize) -> Result<Vec<RibbonChain>> {
    mn_chains(w, m, 0)
}

/// `c^w_{m,v}`: the signed number of ribbons of size `m` from `w` to `v`.
pub fn mn_coefficient(w: &AffinePermutation, m: usize, v: &AffinePermutation) -> Result<i64> {
    Ok(ribbons(w, m)?.iter().filter(|r| r.outside() == v).map(|r| r.sign).sum())
}

/// A sequence of ribbons, each starting where the previous one ended, that
/// reaches the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonTableau {
    pub ribbons: Vec<RibbonChain>,
    pub weight: Vec<usize>,
    pub sigma: i64,
}

/// All ribbon tableaux from `u` to the identity whose ribbon sizes are
/// `weight`, in that order.
pub fn ribbon_tableaux(u: &AffinePermutation, weight: &[usize]) -> Result<Vec<RibbonTableau>> {
    let n = u.n();
    if weight.iter().sum::<usize>() != u.length() {
        return Err(Error::OutOfRange(format!(
            "weight {weight:?} does not have size ℓ(u) = {}",
            u.length()
        )));
    }
    if let Some(&m) = weight.iter().find(|&&m| m == 0 || m >= n) {
        return Err(Error::NotBounded(format!("ribbon size {m}"), n - 1));
    }
    fn rec(
        w: &AffinePermutation,
        weight: &[usize],
        path: &mut Vec<RibbonChain>,
        full: &[usize],
        out: &mut Vec<RibbonTableau>,
    ) -> Result<()> {
        let Some((&m, rest)) = weight.split_first() else {
            if w.is_identity() {
                out.push(RibbonTableau {
                    sigma: path.iter().map(|r| r.sign).product(),
                    ribbons: path.clone(),
                    weight: full.to_vec(),
                });
            }
            return Ok(());
        };
        for r in ribbons(w, m)? {
            let next = r.outside().clone();
            path.push(r);
            rec(&next, rest, path, full, out)?;
            path.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(u, weight, &mut Vec::new(), weight, &mut out)?;
    Ok(out)
}

/// `χ(λ) = Σ_T σ(T)` over ribbon tableaux from `u` of weight `λ` (parts in
/// decreasing order), for every `(n−1)`-bounded `λ` of size `ℓ(u)`.
pub fn ribbon_characters(u: &AffinePermutation) -> Result<BTreeMap<Partition, i64>> {
    let mut out = BTreeMap::new();
    for lambda in partitions_bounded(u.length(), u.n() - 1) {
        let chi: i64 = ribbon_tableaux(u, lambda.parts())?.iter().map(|t| t.sigma).sum();
        out.insert(lambda, chi);
    }
    Ok(out)
}

/// The k-Schur function of the 0-Grassmannian `u` as `Σ_λ χ(λ)/z_λ p_λ`.
pub fn k_schur_via_ribbons(u: &AffinePermutation) -> Result<SymFunc> {
    if !u.is_grassmannian() {
        return Err(Error::OutOfRange(format!("{u} is not 0-Grassmannian")));
    }
    let mut terms = BTreeMap::new();
    for (lambda, chi) in ribbon_characters(u)? {
        if chi != 0 {
            let c = Q::new(chi.into(), lambda.z());
            terms.insert(lambda, c);
        }
    }
    terms.retain(|_, c: &mut Q| !c.is_zero());
    SymFunc::new(Basis::P, None, terms)
}

#[derive(Serialize)]
struct LinkJson {
    index: [i64; 2],
    to: Vec<i64>,
}

#[derive(Serialize)]
struct RibbonJson {
    from: Vec<i64>,
    sign: i64,
    chain: Vec<LinkJson>,
}

#[derive(Serialize)]
struct TableauJson {
    sigma: i64,
    weight: Vec<usize>,
    ribbons: Vec<RibbonJson>,
}

fn ribbon_json(r: &RibbonChain) -> RibbonJson {
    RibbonJson {
        from: r.inside().window().to_vec(),
        sign: r.sign,
        chain: r
            .covers
            .iter()
            .map(|c| LinkJson {
                index: [c.index.j1, c.index.j2],
                to: c.lower.window().to_vec(),
            })
            .collect(),
    }
}

/// JSON for a list of ribbons.
pub fn ribbons_to_json(rs: &[RibbonChain]) -> serde_json::Value {
    serde_json::to_value(rs.iter().map(ribbon_json).collect::<Vec<_>>()).expect("ribbon JSON")
}

/// JSON for a list of ribbon tableaux.
pub fn tableaux_to_json(ts: &[RibbonTableau]) -> serde_json::Value {
    let list: Vec<TableauJson> = ts
        .iter()
        .map(|t| TableauJson {
            sigma: t.sigma,
            weight: t.weight.clone(),
            ribbons: t.ribbons.iter().map(ribbon_json).collect(),
        })
        .collect();
    serde_json::to_value(list).expect("tableau JSON")
}
