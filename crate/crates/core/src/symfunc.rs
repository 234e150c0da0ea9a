//! Symmetric functions over `Q` in the classical bases and the k-Schur /
//! affine Schur bases.
//!
//! Every conversion goes through the power-sum basis: `p` is orthogonal for
//! the Hall pairing (`⟨p_λ, p_μ⟩ = δ z_λ`) and multiplicative, so each basis
//! only needs a map to `p` and a dual pairing back.
//!
//! Two subspaces matter for `k = n − 1`: `Λ_(k) = Q[h_1, …, h_k]`, spanned by
//! the k-Schur functions, and the quotient `Λ^(k)`, where the affine Schur
//! and affine Stanley functions live. Elements of the quotient are normalized
//! by dropping every `p_λ` with a part larger than `k`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::memo::Memo;
use crate::nilcoxeter::{h_product, noncommutative_k_schur, power_sum_product};
use crate::partition::{partitions, partitions_bounded, Partition};
use crate::perm::AffinePermutation;
use crate::rational::{self, add_into, Q};

pub const DEFAULT_DEGREE_BOUND: usize = 8;

static DEGREE_BOUND: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_BOUND);

/// Largest degree for which basis conversions are built.
pub fn degree_bound() -> usize {
    DEGREE_BOUND.load(Ordering::Relaxed)
}

pub fn set_degree_bound(d: usize) {
    DEGREE_BOUND.store(d, Ordering::Relaxed);
}

fn check_degree(d: usize) -> Result<()> {
    let bound = degree_bound();
    if d > bound {
        return Err(Error::DegreeBoundExceeded { degree: d, bound });
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    H,
    P,
    E,
    S,
    KSchur,
    AffSchur,
}

impl Basis {
    pub fn needs_k(self) -> bool {
        matches!(self, Basis::KSchur | Basis::AffSchur)
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::H => "h",
            Basis::P => "p",
            Basis::E => "e",
            Basis::S => "s",
            Basis::KSchur => "kschur",
            Basis::AffSchur => "affschur",
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "m" => Basis::M,
            "h" => Basis::H,
            "p" => Basis::P,
            "e" => Basis::E,
            "s" => Basis::S,
            "kschur" => Basis::KSchur,
            "affschur" => Basis::AffSchur,
            _ => return Err(Error::Parse(format!("unknown basis {s:?}"))),
        })
    }
}

type Terms = BTreeMap<Partition, Q>;

#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    k: Option<usize>,
    terms: Terms,
}

impl SymFunc {
    pub fn new(basis: Basis, k: Option<usize>, terms: BTreeMap<Partition, Q>) -> Result<Self> {
        if basis.needs_k() {
            let Some(k) = k else {
                return Err(Error::OutOfRange(format!("basis {} needs k", basis.name())));
            };
            if k == 0 {
                return Err(Error::OutOfRange("k must be positive".into()));
            }
            if let Some(bad) = terms.keys().find(|l| !l.is_bounded_by(k)) {
                return Err(Error::NotBounded(bad.to_string(), k));
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(SymFunc { basis, k, terms })
    }

    pub fn zero(basis: Basis, k: Option<usize>) -> Self {
        SymFunc {
            basis,
            k,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis element, e.g. `h_{(2,1)}`.
    pub fn single(basis: Basis, k: Option<usize>, lambda: Partition) -> Result<Self> {
        Self::new(basis, k, BTreeMap::from([(lambda, Q::one())]))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Q> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Q {
        self.terms.get(lambda).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.basis, self.k);
        for (l, d) in &self.terms {
            add_into(&mut out.terms, l.clone(), d * c);
        }
        out
    }

    /// Sum, expressed in the basis of `self`.
    pub fn add(&self, other: &SymFunc) -> Result<Self> {
        let other = if other.basis == self.basis && other.k == self.k {
            other.clone()
        } else {
            other.convert(self.basis, self.k)?
        };
        let mut out = self.clone();
        for (l, c) in other.terms {
            add_into(&mut out.terms, l, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymFunc) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    /// Product, in the power-sum basis.
    pub fn multiply(&self, other: &SymFunc) -> Result<Self> {
        let a = self.power_sum_terms()?;
        let b = other.power_sum_terms()?;
        Ok(SymFunc {
            basis: Basis::P,
            k: None,
            terms: p_multiply(&a, &b),
        })
    }

    /// The same symmetric function in the power-sum basis (for `affschur`
    /// this is the representative spanned by k-bounded `m_λ`).
    pub fn to_power_sums(&self) -> Result<Self> {
        Ok(SymFunc {
            basis: Basis::P,
            k: None,
            terms: self.power_sum_terms()?,
        })
    }

    fn power_sum_terms(&self) -> Result<Terms> {
        let mut out = Terms::new();
        for (lambda, c) in &self.terms {
            let expansion = basis_element_in_p(self.basis, self.k, lambda)?;
            for (mu, d) in expansion.iter() {
                add_into(&mut out, mu.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// Re-expresses the element in `target`. For `kschur` the element must
    /// lie in `Λ_(k)`; for `affschur` the result is its class in `Λ^(k)`.
    pub fn convert(&self, target: Basis, k: Option<usize>) -> Result<Self> {
        if target == self.basis && k == self.k {
            return Ok(self.clone());
        }
        let p = self.power_sum_terms()?;
        from_power_sums(&p, target, k)
    }

    /// The Hall pairing `⟨self, other⟩`.
    pub fn hall_inner(&self, other: &SymFunc) -> Result<Q> {
        let a = self.power_sum_terms()?;
        let b = other.power_sum_terms()?;
        Ok(p_pairing(&a, &b))
    }

    /// Normal form in `Λ^(k)`: the power-sum expansion with every `p_λ`
    /// having a part larger than `k` removed.
    pub fn project_to_quotient(&self, k: usize) -> Result<Self> {
        let p = if self.basis == Basis::AffSchur && self.k == Some(k) {
            affine_schur_quotient_terms(k, &self.terms)?
        } else {
            self.power_sum_terms()?
        };
        Ok(SymFunc {
            basis: Basis::P,
            k: Some(k),
            terms: p.into_iter().filter(|(l, _)| l.is_bounded_by(k)).collect(),
        })
    }

    /// The involution `ω` (`h ↔ e`), in the power-sum basis.
    pub fn omega(&self) -> Result<Self> {
        let p = self.power_sum_terms()?;
        Ok(SymFunc {
            basis: Basis::P,
            k: None,
            terms: p_omega(&p),
        })
    }

    /// Equality as symmetric functions, regardless of basis.
    pub fn same_function(&self, other: &SymFunc) -> Result<bool> {
        Ok(self.power_sum_terms()? == other.power_sum_terms()?)
    }
}

fn affine_schur_quotient_terms(k: usize, terms: &Terms) -> Result<Terms> {
    let mut out = Terms::new();
    for (lambda, c) in terms {
        let w = AffinePermutation::from_bounded_partition(k + 1, lambda)?;
        for (mu, d) in affine_stanley_power_sums(&w)?.terms {
            add_into(&mut out, mu, c * d);
        }
    }
    Ok(out)
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let parts: Vec<String> = l.parts().iter().map(|p| p.to_string()).collect();
            write!(f, "({c}){}[{}]", self.basis.name(), parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymFuncJson {
    basis: Basis,
    k: Option<usize>,
    terms: Vec<TermJson>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncJson {
            basis: self.basis,
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermJson {
                    partition: l.parts().to_vec(),
                    coeff: rational::format(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SymFuncJson::deserialize(d)?;
        let mut terms = Terms::new();
        for t in raw.terms {
            let l = Partition::new(t.partition).map_err(D::Error::custom)?;
            let c = rational::parse(&t.coeff).map_err(D::Error::custom)?;
            add_into(&mut terms, l, c);
        }
        SymFunc::new(raw.basis, raw.k, terms).map_err(D::Error::custom)
    }
}

fn p_multiply(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (l, c) in a {
        for (m, d) in b {
            add_into(&mut out, l.union(m), c * d);
        }
    }
    out
}

fn p_pairing(a: &Terms, b: &Terms) -> Q {
    let mut total = Q::zero();
    for (l, c) in a {
        if let Some(d) = b.get(l) {
            total += c * d * Q::from_integer(l.z());
        }
    }
    total
}

fn p_omega(a: &Terms) -> Terms {
    a.iter()
        .map(|(l, c)| {
            let sign = (l.size() - l.len()) % 2 == 1;
            (l.clone(), if sign { -c.clone() } else { c.clone() })
        })
        .collect()
}

fn single_p(l: Partition) -> Terms {
    BTreeMap::from([(l, Q::one())])
}

/// `h_r = Σ_{μ ⊢ r} p_μ / z_μ`.
fn h_in_p(r: usize) -> Terms {
    partitions(r)
        .into_iter()
        .map(|mu| {
            let z = Q::from_integer(mu.z());
            (mu, Q::one() / z)
        })
        .collect()
}

/// `e_r = Σ_{μ ⊢ r} ε_μ p_μ / z_μ`.
fn e_in_p(r: usize) -> Terms {
    p_omega(&h_in_p(r))
}

/// Coefficient of `x^λ` in `p_μ`: the number of ways to distribute the
/// parts of μ into ℓ(λ) bins with sums λ.
fn p_to_m_entry(mu: &[usize], lambda: &[usize]) -> u64 {
    fn rec(mu: &[usize], remaining: &mut [usize]) -> u64 {
        let Some((&first, rest)) = mu.split_first() else {
            return remaining.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for i in 0..remaining.len() {
            if remaining[i] >= first {
                remaining[i] -= first;
                total += rec(rest, remaining);
                remaining[i] += first;
            }
        }
        total
    }
    rec(mu, &mut lambda.to_vec())
}

struct DegreeTables {
    parts: Vec<Partition>,
    /// `p_μ = Σ_λ p_to_m[μ][λ] m_λ`.
    p_to_m: Matrix,
    /// `m_λ = Σ_μ m_to_p[λ][μ] p_μ`.
    m_to_p: Matrix,
}

fn degree_tables(d: usize) -> Result<Arc<DegreeTables>> {
    static M: OnceLock<Memo<usize, DegreeTables>> = OnceLock::new();
    check_degree(d)?;
    M.get_or_init(Memo::new).get_or_try_insert(&d, || {
        let parts = partitions(d);
        let mut p_to_m = Matrix::zeros(parts.len(), parts.len());
        for (i, mu) in parts.iter().enumerate() {
            for (j, lambda) in parts.iter().enumerate() {
                p_to_m[(i, j)] = Q::from_integer(p_to_m_entry(mu.parts(), lambda.parts()).into());
            }
        }
        let m_to_p = p_to_m
            .inverse()
            .ok_or_else(|| Error::Inconsistency(format!("power-sum to monomial matrix singular in degree {d}")))?;
        Ok(DegreeTables { parts, p_to_m, m_to_p })
    })
}

fn index_of(parts: &[Partition], l: &Partition) -> usize {
    parts
        .iter()
        .position(|p| p == l)
        .expect("partition of the table degree")
}

fn m_in_p(lambda: &Partition) -> Result<Terms> {
    let t = degree_tables(lambda.size())?;
    let i = index_of(&t.parts, lambda);
    let mut out = Terms::new();
    for (j, mu) in t.parts.iter().enumerate() {
        add_into(&mut out, mu.clone(), t.m_to_p[(i, j)].clone());
    }
    Ok(out)
}

fn product_in_p(parts: &[usize], single: impl Fn(usize) -> Terms) -> Terms {
    parts
        .iter()
        .fold(single_p(Partition::empty()), |acc, &r| p_multiply(&acc, &single(r)))
}

/// Determinant of `[g(λ_i − i + j)]` with polynomial entries.
fn jacobi_trudi(lambda: &[usize], g: &dyn Fn(i64) -> Terms) -> Terms {
    let l = lambda.len();
    let entry = |i: usize, j: usize| g(lambda[i] as i64 - i as i64 + j as i64);
    fn det(rows: &[usize], cols: &mut Vec<usize>, entry: &dyn Fn(usize, usize) -> Terms) -> Terms {
        let Some((&r, rest)) = rows.split_first() else {
            return single_p(Partition::empty());
        };
        let mut out = Terms::new();
        for idx in 0..cols.len() {
            let c = cols.remove(idx);
            let e = entry(r, c);
            if !e.is_empty() {
                let minor = det(rest, cols, entry);
                let sign = if idx % 2 == 0 { Q::one() } else { -Q::one() };
                for (m, v) in p_multiply(&e, &minor) {
                    add_into(&mut out, m, v * &sign);
                }
            }
            cols.insert(idx, c);
        }
        out
    }
    let rows: Vec<usize> = (0..l).collect();
    det(&rows, &mut (0..l).collect(), &entry)
}

fn s_in_p(lambda: &Partition) -> Result<Terms> {
    check_degree(lambda.size())?;
    let graded = |f: fn(usize) -> Terms| {
        move |r: i64| match r {
            r if r < 0 => Terms::new(),
            0 => single_p(Partition::empty()),
            r => f(r as usize),
        }
    };
    let conj = lambda.conjugate();
    if lambda.len() <= conj.len() {
        Ok(jacobi_trudi(lambda.parts(), &graded(h_in_p)))
    } else {
        Ok(jacobi_trudi(conj.parts(), &graded(e_in_p)))
    }
}

fn require_k(k: Option<usize>, basis: Basis) -> Result<usize> {
    k.ok_or_else(|| Error::OutOfRange(format!("basis {} needs k", basis.name())))
}

fn basis_element_in_p(basis: Basis, k: Option<usize>, lambda: &Partition) -> Result<Terms> {
    match basis {
        Basis::P => Ok(single_p(lambda.clone())),
        Basis::H => Ok(product_in_p(lambda.parts(), h_in_p)),
        Basis::E => Ok(product_in_p(lambda.parts(), e_in_p)),
        Basis::M => m_in_p(lambda),
        Basis::S => s_in_p(lambda),
        Basis::KSchur => {
            let k = require_k(k, basis)?;
            let ks = k_schur(k, lambda)?;
            ks.power_sum_terms()
        }
        Basis::AffSchur => {
            let k = require_k(k, basis)?;
            let f = affine_schur(k, lambda)?;
            f.power_sum_terms()
        }
    }
}

fn homogeneous_degrees(p: &Terms) -> Vec<usize> {
    let mut ds: Vec<usize> = p.keys().map(Partition::size).collect();
    ds.dedup();
    ds
}

fn from_power_sums(p: &Terms, target: Basis, k: Option<usize>) -> Result<SymFunc> {
    let mut terms = Terms::new();
    match target {
        Basis::P => terms = p.clone(),
        Basis::M => {
            for (mu, c) in p {
                let t = degree_tables(mu.size())?;
                let i = index_of(&t.parts, mu);
                for (j, lambda) in t.parts.iter().enumerate() {
                    add_into(&mut terms, lambda.clone(), c * &t.p_to_m[(i, j)]);
                }
            }
        }
        Basis::H | Basis::E => {
            // [h_λ] f = ⟨f, m_λ⟩ and [e_λ] f = [h_λ] ω f.
            let src = if target == Basis::E { p_omega(p) } else { p.clone() };
            for d in homogeneous_degrees(&src) {
                for lambda in partitions(d) {
                    add_into(&mut terms, lambda.clone(), p_pairing(&src, &m_in_p(&lambda)?));
                }
            }
        }
        Basis::S => {
            for d in homogeneous_degrees(p) {
                for lambda in partitions(d) {
                    add_into(&mut terms, lambda.clone(), p_pairing(p, &s_in_p(&lambda)?));
                }
            }
        }
        Basis::KSchur => {
            let kk = require_k(k, target)?;
            for d in homogeneous_degrees(p) {
                for lambda in partitions_bounded(d, kk) {
                    let dual = affine_schur(kk, &lambda)?.power_sum_terms()?;
                    add_into(&mut terms, lambda, p_pairing(p, &dual));
                }
            }
            let out = SymFunc::new(target, k, terms)?;
            if out.power_sum_terms()? != *p {
                return Err(Error::NotInSubspace(format!(
                    "element is not in the span of {kk}-Schur functions"
                )));
            }
            return Ok(out);
        }
        Basis::AffSchur => {
            let kk = require_k(k, target)?;
            for d in homogeneous_degrees(p) {
                for lambda in partitions_bounded(d, kk) {
                    let dual = k_schur(kk, &lambda)?.power_sum_terms()?;
                    add_into(&mut terms, lambda, p_pairing(p, &dual));
                }
            }
        }
    }
    SymFunc::new(target, k, terms)
}

/// The k-Schur function `s^(k)_λ` in the `h` basis, read off from the
/// noncommutative k-Schur function in the nilCoxeter algebra.
pub fn k_schur(k: usize, lambda: &Partition) -> Result<SymFunc> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be positive".into()));
    }
    let ks = noncommutative_k_schur(k + 1, lambda)?;
    SymFunc::new(Basis::H, None, ks.h_coefficients)
}

/// Rows: k-Schur functions of degree `d` in the `h_μ` basis.
fn k_schur_matrix(k: usize, d: usize) -> Result<(Vec<Partition>, Matrix)> {
    let parts = partitions_bounded(d, k);
    let mut m = Matrix::zeros(parts.len(), parts.len());
    for (i, lambda) in parts.iter().enumerate() {
        let ks = noncommutative_k_schur(k + 1, lambda)?;
        for (j, mu) in parts.iter().enumerate() {
            if let Some(c) = ks.h_coefficients.get(mu) {
                m[(i, j)] = c.clone();
            }
        }
    }
    Ok((parts, m))
}

type DualTables = Memo<(usize, usize), (Vec<Partition>, Matrix)>;

fn affine_schur_tables() -> &'static DualTables {
    static M: OnceLock<DualTables> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// The affine Schur function `F̃_λ`, the Hall dual of `s^(k)_λ`, in the
/// monomial basis restricted to k-bounded `m_μ`.
pub fn affine_schur(k: usize, lambda: &Partition) -> Result<SymFunc> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be positive".into()));
    }
    if !lambda.is_bounded_by(k) {
        return Err(Error::NotBounded(lambda.to_string(), k));
    }
    let d = lambda.size();
    let table = affine_schur_tables().get_or_try_insert(&(k, d), || {
        let (parts, m) = k_schur_matrix(k, d)?;
        let inv_t = m
            .inverse()
            .ok_or_else(|| Error::Inconsistency(format!("k-Schur matrix singular for k = {k}, degree {d}")))?
            .transpose();
        Ok((parts, inv_t))
    })?;
    let (parts, inv_t) = &*table;
    let i = index_of(parts, lambda);
    let terms = parts
        .iter()
        .enumerate()
        .map(|(j, mu)| (mu.clone(), inv_t[(i, j)].clone()))
        .collect();
    SymFunc::new(Basis::M, Some(k), terms)
}

/// The affine Stanley function `F̃_w` in the monomial basis: the
/// coefficient of `m_λ` is the coefficient of `A_w` in `h_λ`.
pub fn affine_stanley(w: &AffinePermutation) -> Result<SymFunc> {
    let n = w.n();
    let mut terms = Terms::new();
    for lambda in partitions_bounded(w.length(), n - 1) {
        let c = h_product(n, &lambda)?.coeff(w);
        add_into(&mut terms, lambda, c);
    }
    SymFunc::new(Basis::M, Some(n - 1), terms)
}

/// `F̃_w` in `Λ^(k)` normal form. The coefficient of `p_ν` is
/// `⟨F̃_w, p_ν⟩ / z_ν`, and `⟨F̃_w, p_ν⟩` is the coefficient of `A_w` in the
/// image of `p_ν` in the nilCoxeter algebra. No degree bound applies.
pub fn affine_stanley_power_sums(w: &AffinePermutation) -> Result<SymFunc> {
    let n = w.n();
    let mut terms = Terms::new();
    for nu in partitions_bounded(w.length(), n - 1) {
        let c = power_sum_product(n, &nu)?.coeff(w);
        if !c.is_zero() {
            add_into(&mut terms, nu.clone(), c / Q::from_integer(nu.z()));
        }
    }
    SymFunc::new(Basis::P, Some(n - 1), terms)
}
