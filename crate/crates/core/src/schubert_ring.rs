//! The ring `R_n = Q[p_1, …, p_{n−1}] ⊗ Q[x_0, …, x_{n−1}] / ⟨e_j(x) : j > 0⟩`
//! with its divided difference operators, affine Schubert polynomials,
//! structure constants and cap operators.
//!
//! The x-part is kept in the staircase normal form: the exponent of `x_i`
//! is at most `n − 1 − i`. With the lexicographic order
//! `x_{n−1} > ⋯ > x_0`, the polynomials `h_k(x_{n−k}, …, x_0)` for
//! `k = 1, …, n` are a Gröbner basis of the ideal with leading terms
//! `x_{n−k}^k`, so rewriting with them reaches the normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::memo::Memo;
use crate::nilcoxeter::NilCoxElement;
use crate::partition::{partitions_bounded, Partition};
use crate::perm::{elements_of_length, AffinePermutation};
use crate::rational::{add_into, Q};
use crate::symfunc::{affine_stanley_power_sums, degree_bound, Basis, SymFunc};

/// `p_λ · x^e`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RnMonomial {
    pub p: Partition,
    pub x: Vec<u32>,
}

impl RnMonomial {
    pub fn degree(&self) -> usize {
        self.p.size() + self.x.iter().map(|&e| e as usize).sum::<usize>()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RnElement {
    n: usize,
    terms: BTreeMap<RnMonomial, Q>,
}

fn check_modulus(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    Ok(())
}

/// Exponent vectors on `x_0, …, x_top` of total degree `d`.
fn exponent_vectors(vars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == vars {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=d {
            cur.push(e);
            rec(vars, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if vars > 0 {
        rec(vars, d, &mut Vec::new(), &mut out);
    }
    out
}

fn is_staircase(e: &[u32]) -> bool {
    let n = e.len();
    e.iter().enumerate().all(|(i, &a)| (a as usize) < n - i)
}

/// Staircase exponent vectors of degree `d`.
pub fn staircase_monomials(n: usize, d: usize) -> Vec<Vec<u32>> {
    exponent_vectors(n, d as u32)
        .into_iter()
        .filter(|e| is_staircase(e))
        .collect()
}

/// Normal form of a pure `x` monomial, as `(exponents, coefficient)` pairs.
type ReductionMemo = Memo<Vec<u32>, Vec<(Vec<u32>, Q)>>;

fn reduction_memo() -> &'static ReductionMemo {
    static M: OnceLock<ReductionMemo> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// Normal form of the monomial `x^e` (the modulus is `e.len()`).
fn reduce_monomial(e: &[u32]) -> Arc<Vec<(Vec<u32>, Q)>> {
    let n = e.len();
    if is_staircase(e) {
        return Arc::new(vec![(e.to_vec(), Q::one())]);
    }
    let key = e.to_vec();
    reduction_memo().get_or_insert(&key, || {
        // The highest violating variable x_i has e_i ≥ n − i; rewrite
        // x_i^{n−i} by minus the other monomials of h_{n−i}(x_i, …, x_0).
        let i = (0..n).rev().find(|&i| e[i] as usize >= n - i).unwrap();
        let k = (n - i) as u32;
        let mut base = e.to_vec();
        base[i] -= k;
        let mut acc: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for mono in exponent_vectors(i + 1, k) {
            if mono[i] == k {
                continue;
            }
            let mut f = base.clone();
            for (slot, m) in f.iter_mut().zip(&mono) {
                *slot += m;
            }
            for (g, c) in reduce_monomial(&f).iter() {
                add_into(&mut acc, g.clone(), -c.clone());
            }
        }
        acc.into_iter().collect()
    })
}

/// `true` when `λ` has all parts below `n`.
fn p_part_ok(n: usize, p: &Partition) -> bool {
    p.is_bounded_by(n - 1)
}

impl RnElement {
    pub fn zero(n: usize) -> Self {
        RnElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut out = Self::zero(n);
        add_into(
            &mut out.terms,
            RnMonomial {
                p: Partition::empty(),
                x: vec![0; n],
            },
            c,
        );
        out
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Q::one())
    }

    /// `p_m` for `1 ≤ m < n`.
    pub fn p(n: usize, m: usize) -> Result<Self> {
        check_modulus(n)?;
        if m == 0 || m >= n {
            return Err(Error::NotBounded(format!("p_{m}"), n - 1));
        }
        Self::monomial(n, Partition::new(vec![m])?, vec![0; n], Q::one())
    }

    /// `x_i`, with `i` read modulo `n`.
    pub fn x(n: usize, i: i64) -> Self {
        let mut e = vec![0; n];
        e[i.rem_euclid(n as i64) as usize] = 1;
        Self::monomial(n, Partition::empty(), e, Q::one()).expect("x_i is a valid monomial")
    }

    /// `c · p_λ · x^e`, reduced to normal form.
    pub fn monomial(n: usize, p: Partition, x: Vec<u32>, c: Q) -> Result<Self> {
        check_modulus(n)?;
        if x.len() != n {
            return Err(Error::OutOfRange(format!("exponent vector {x:?} needs {n} entries")));
        }
        if !p_part_ok(n, &p) {
            return Err(Error::NotBounded(p.to_string(), n - 1));
        }
        let mut out = Self::zero(n);
        out.add_reduced(&p, &x, &c);
        Ok(out)
    }

    /// The class of a symmetric function in `Λ^(n−1)` (power sums with a
    /// part of size `n` or more vanish there), with trivial x-part.
    pub fn from_symmetric(n: usize, f: &SymFunc) -> Result<Self> {
        check_modulus(n)?;
        let f = f.project_to_quotient(n - 1)?;
        let mut out = Self::zero(n);
        for (lambda, c) in f.terms() {
            out.add_scaled(&Self::monomial(n, lambda.clone(), vec![0; n], c.clone())?, &Q::one());
        }
        Ok(out)
    }

    fn add_reduced(&mut self, p: &Partition, x: &[u32], c: &Q) {
        if c.is_zero() {
            return;
        }
        for (e, d) in reduce_monomial(x).iter() {
            add_into(
                &mut self.terms,
                RnMonomial {
                    p: p.clone(),
                    x: e.clone(),
                },
                c * d,
            );
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<RnMonomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Partition, x: &[u32]) -> Q {
        self.terms
            .get(&RnMonomial {
                p: p.clone(),
                x: x.to_vec(),
            })
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// The degree when homogeneous; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(RnMonomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add_scaled(&mut self, other: &RnElement, c: &Q) {
        assert_eq!(self.n, other.n, "modulus mismatch");
        for (m, d) in &other.terms {
            add_into(&mut self.terms, m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn multiply(&self, other: &RnElement) -> Result<RnElement> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let p = a.p.union(&b.p);
                let x: Vec<u32> = a.x.iter().zip(&b.x).map(|(s, t)| s + t).collect();
                out.add_reduced(&p, &x, &(c * d));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> RnElement {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// The simple reflection `s_i` as a ring automorphism: it permutes the
    /// x's by `x_j ↦ x_{s_i(j)}`, fixes `p_m` for `i ≠ 0`, and sends
    /// `p_m ↦ p_m + x_1^m − x_0^m` for `i = 0`.
    pub fn weyl_action(&self, i: usize) -> Result<RnElement> {
        let n = self.n;
        if i >= n {
            return Err(Error::OutOfRange(format!("residue {i} with n = {n}")));
        }
        let j = (i + 1) % n;
        let mut out = Self::zero(n);
        for (mono, c) in &self.terms {
            let mut x = mono.x.clone();
            x.swap(i, j);
            let xs = Self::monomial(n, Partition::empty(), x, c.clone())?;
            if i != 0 {
                let p = Self::monomial(n, mono.p.clone(), vec![0; n], Q::one())?;
                out.add_scaled(&(&p * &xs), &Q::one());
            } else {
                let mut acc = xs;
                for &m in mono.p.parts() {
                    acc = &acc * &s0_of_p(n, m);
                }
                out.add_scaled(&acc, &Q::one());
            }
        }
        Ok(out)
    }

    /// `∂_i = (1 − s_i)/(x_i − x_{i+1})`, extended by the twisted Leibniz
    /// rule `∂_i(fg) = ∂_i(f) g + s_i(f) ∂_i(g)` from `∂_i(p_m) = 0` for
    /// `i ≠ 0`, `∂_0(p_m) = Σ_j x_1^{m−1−j} x_0^j` and
    /// `∂_i(x_j) = δ_{i,j} − δ_{i+1,j}`.
    pub fn divided_difference(&self, i: usize) -> Result<RnElement> {
        let n = self.n;
        if i >= n {
            return Err(Error::OutOfRange(format!("residue {i} with n = {n}")));
        }
        let mut out = Self::zero(n);
        for (mono, c) in &self.terms {
            let dx = dd_x_monomial(n, i, &mono.x);
            if i != 0 {
                if !dx.is_zero() {
                    let p = Self::monomial(n, mono.p.clone(), vec![0; n], c.clone())?;
                    out.add_scaled(&(&p * &dx), &Q::one());
                }
                continue;
            }
            // ∂(p_λ · x^e) = ∂(p_λ) x^e + s_0(p_λ) ∂(x^e)
            let (dp, sp) = dd0_p_product(n, mono.p.parts());
            let xe = Self::monomial(n, Partition::empty(), mono.x.clone(), Q::one())?;
            let term = &(&dp * &xe) + &(&sp * &dx);
            out.add_scaled(&term, c);
        }
        Ok(out)
    }

    /// `∂_{i_1} ∘ ⋯ ∘ ∂_{i_r}` applied to `self`, rightmost first.
    pub fn divided_difference_word(&self, word: &[usize]) -> Result<RnElement> {
        word.iter()
            .rev()
            .try_fold(self.clone(), |acc, &i| acc.divided_difference(i))
    }

    /// The image under `x_i ↦ 0`, a symmetric function in `Λ^(n−1)`.
    pub fn symmetric_projection(&self) -> Result<SymFunc> {
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            if mono.x.iter().all(|&e| e == 0) {
                add_into(&mut terms, mono.p.clone(), c.clone());
            }
        }
        SymFunc::new(Basis::P, Some(self.n - 1), terms)
    }
}

/// `s_0(p_m) = p_m + x_1^m − x_0^m`.
fn s0_of_p(n: usize, m: usize) -> RnElement {
    let mut out = RnElement::p(n, m).expect("bounded p_m");
    let mut e1 = vec![0; n];
    e1[1 % n] = m as u32;
    let mut e0 = vec![0; n];
    e0[0] = m as u32;
    out.add_reduced(&Partition::empty(), &e1, &Q::one());
    out.add_reduced(&Partition::empty(), &e0, &-Q::one());
    out
}

/// `∂_0(p_m) = Σ_{j<m} x_1^{m−1−j} x_0^j`.
fn dd0_of_p(n: usize, m: usize) -> RnElement {
    let mut out = RnElement::zero(n);
    for j in 0..m {
        let mut e = vec![0; n];
        e[1 % n] += (m - 1 - j) as u32;
        e[0] += j as u32;
        out.add_reduced(&Partition::empty(), &e, &Q::one());
    }
    out
}

/// `(∂_0(p_λ), s_0(p_λ))` by the twisted Leibniz rule over the parts.
fn dd0_p_product(n: usize, parts: &[usize]) -> (RnElement, RnElement) {
    let mut d = RnElement::zero(n);
    let mut s = RnElement::one(n);
    let mut rest = RnElement::one(n);
    // Process parts right to left: ∂(p_m · R) = ∂(p_m) R + s(p_m) ∂(R).
    for &m in parts.iter().rev() {
        let pm = RnElement::p(n, m).expect("bounded p_m");
        let spm = s0_of_p(n, m);
        d = &(&dd0_of_p(n, m) * &rest) + &(&spm * &d);
        s = &spm * &s;
        rest = &pm * &rest;
    }
    (d, s)
}

/// `∂_i(x^e)`: with `a = e_i`, `b = e_{i+1}` and the rest symmetric in
/// `x_i, x_{i+1}`, only `(x_i^a x_{i+1}^b − x_i^b x_{i+1}^a)/(x_i − x_{i+1})`
/// needs expanding.
fn dd_x_monomial(n: usize, i: usize, e: &[u32]) -> RnElement {
    let j = (i + 1) % n;
    let (a, b) = (e[i], e[j]);
    let mut out = RnElement::zero(n);
    if a == b {
        return out;
    }
    let (hi_var, lo_var, hi, lo, sign) = if a > b {
        (i, j, a, b, Q::one())
    } else {
        (j, i, b, a, -Q::one())
    };
    for t in 0..(hi - lo) {
        let mut f = e.to_vec();
        f[hi_var] = lo + (hi - lo - 1 - t);
        f[lo_var] = lo + t;
        out.add_reduced(&Partition::empty(), &f, &sign);
    }
    out
}

impl Add for &RnElement {
    type Output = RnElement;
    fn add(self, rhs: &RnElement) -> RnElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl Sub for &RnElement {
    type Output = RnElement;
    fn sub(self, rhs: &RnElement) -> RnElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl Neg for &RnElement {
    type Output = RnElement;
    fn neg(self) -> RnElement {
        self.scale(&-Q::one())
    }
}

impl Mul for &RnElement {
    type Output = RnElement;
    fn mul(self, rhs: &RnElement) -> RnElement {
        self.multiply(rhs).expect("modulus mismatch")
    }
}

impl fmt::Display for RnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if !m.p.is_empty() {
                let parts: Vec<String> = m.p.parts().iter().map(|p| p.to_string()).collect();
                write!(f, "p[{}]", parts.join(","))?;
            }
            for (i, &e) in m.x.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "x{i}")?,
                    _ => write!(f, "x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    p: Vec<usize>,
    x: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RnJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for RnElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RnJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    p: m.p.parts().to_vec(),
                    x: m.x.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RnElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RnJson::deserialize(d)?;
        let mut out = RnElement::zero(raw.n);
        for t in raw.terms {
            let p = Partition::new(t.p).map_err(D::Error::custom)?;
            let c = crate::rational::parse(&t.coeff).map_err(D::Error::custom)?;
            let m = RnElement::monomial(raw.n, p, t.x, c).map_err(D::Error::custom)?;
            out.add_scaled(&m, &Q::one());
        }
        Ok(out)
    }
}

fn schubert_memo() -> &'static Memo<AffinePermutation, RnElement> {
    static M: OnceLock<Memo<AffinePermutation, RnElement>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// The affine Schubert polynomial `S̃_w`: the affine Schur function of a
/// Grassmannian lift `wv`, pushed down by `∂_{v^{−1}}`.
pub fn affine_schubert(w: &AffinePermutation) -> Result<Arc<RnElement>> {
    let n = w.n();
    schubert_memo().get_or_try_insert(w, || {
        if w.is_identity() {
            return Ok(RnElement::one(n));
        }
        if w.is_grassmannian() {
            return RnElement::from_symmetric(n, &affine_stanley_power_sums(w)?);
        }
        let (_, word) = w.grassmannian_lift()?;
        let j = word[0];
        let up = w.mul_simple_right(j);
        affine_schubert(&up)?.divided_difference(j)
    })
}

/// The Schubert polynomials of one degree together with the inverse of
/// their coefficient matrix against the normal monomials.
pub struct SchubertBasis {
    pub n: usize,
    pub degree: usize,
    pub elements: Vec<AffinePermutation>,
    pub polynomials: Vec<Arc<RnElement>>,
    pub monomials: Vec<RnMonomial>,
    inverse: Matrix,
}

/// Normal monomials of degree `d`.
pub fn normal_monomials(n: usize, d: usize) -> Vec<RnMonomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        for p in partitions_bounded(a, n - 1) {
            for x in staircase_monomials(n, d - a) {
                out.push(RnMonomial { p: p.clone(), x });
            }
        }
    }
    out.sort();
    out
}

/// `dim R_n` in degree `d`.
pub fn graded_dimension(n: usize, d: usize) -> usize {
    (0..=d)
        .map(|a| partitions_bounded(a, n - 1).len() * staircase_monomials(n, d - a).len())
        .sum()
}

impl SchubertBasis {
    fn build(n: usize, d: usize) -> Result<Self> {
        let elements: Vec<AffinePermutation> = elements_of_length(n, d).to_vec();
        let monomials = normal_monomials(n, d);
        if elements.len() != monomials.len() {
            return Err(Error::Inconsistency(format!(
                "{} elements of length {d} but dim R_{n} in degree {d} is {}",
                elements.len(),
                monomials.len()
            )));
        }
        let polynomials = elements.iter().map(affine_schubert).collect::<Result<Vec<_>>>()?;
        let mut m = Matrix::zeros(elements.len(), monomials.len());
        for (r, poly) in polynomials.iter().enumerate() {
            for (mono, c) in poly.terms() {
                let col = monomials
                    .binary_search(mono)
                    .map_err(|_| Error::Inconsistency(format!("S̃_{} is not homogeneous of degree {d}", elements[r])))?;
                m[(r, col)] = c.clone();
            }
        }
        let inverse = m.inverse().ok_or_else(|| {
            Error::Inconsistency(format!(
                "Schubert polynomials of degree {d} (n = {n}) are linearly dependent"
            ))
        })?;
        Ok(SchubertBasis {
            n,
            degree: d,
            elements,
            polynomials,
            monomials,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The coordinates of a homogeneous element of this degree.
    pub fn expand(&self, f: &RnElement) -> Result<BTreeMap<AffinePermutation, Q>> {
        if f.n() != self.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: f.n(),
            });
        }
        let mut v = vec![Q::zero(); self.monomials.len()];
        for (mono, c) in f.terms() {
            let col = self
                .monomials
                .binary_search(mono)
                .map_err(|_| Error::OutOfRange(format!("element is not homogeneous of degree {}", self.degree)))?;
            v[col] = c.clone();
        }
        let coords = self.inverse.left_apply(&v);
        Ok(self
            .elements
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w.clone(), c))
            .collect())
    }
}

fn basis_memo() -> &'static Memo<(usize, usize), SchubertBasis> {
    static M: OnceLock<Memo<(usize, usize), SchubertBasis>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// All `S̃_w` with `ℓ(w) = d`, checked to form a basis of degree `d`.
pub fn schubert_basis(n: usize, d: usize) -> Result<Arc<SchubertBasis>> {
    check_modulus(n)?;
    if d > degree_bound() {
        return Err(Error::NotBounded(format!("degree {d}"), degree_bound()));
    }
    basis_memo().get_or_try_insert(&(n, d), || SchubertBasis::build(n, d))
}

/// `p^w_{u,v}` for all `w`: the expansion of `S̃_u S̃_v`.
pub fn structure_constants(u: &AffinePermutation, v: &AffinePermutation) -> Result<BTreeMap<AffinePermutation, Q>> {
    if u.n() != v.n() {
        return Err(Error::ModulusMismatch {
            left: u.n(),
            right: v.n(),
        });
    }
    let basis = schubert_basis(u.n(), u.length() + v.length())?;
    basis.expand(&(&*affine_schubert(u)? * &*affine_schubert(v)?))
}

type CapTable = BTreeMap<AffinePermutation, Vec<(AffinePermutation, Q)>>;

fn cap_memo() -> &'static Memo<(AffinePermutation, usize), CapTable> {
    static M: OnceLock<Memo<(AffinePermutation, usize), CapTable>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// `w ↦ [(v, p^w_{u,v})]` over all `v` of length `d`.
fn cap_table(u: &AffinePermutation, d: usize) -> Result<Arc<CapTable>> {
    cap_memo().get_or_try_insert(&(u.clone(), d), || {
        let mut table = CapTable::new();
        for v in elements_of_length(u.n(), d).iter() {
            for (w, c) in structure_constants(u, v)? {
                table.entry(w).or_default().push((v.clone(), c));
            }
        }
        Ok(table)
    })
}

/// The cap operator `D_u(A_w) = Σ_v p^w_{u,v} A_v`.
pub fn cap_apply(u: &AffinePermutation, x: &NilCoxElement) -> Result<NilCoxElement> {
    if u.n() != x.n() {
        return Err(Error::ModulusMismatch {
            left: u.n(),
            right: x.n(),
        });
    }
    let mut out = NilCoxElement::zero(x.n());
    for (w, c) in x.terms() {
        let Some(d) = w.length().checked_sub(u.length()) else {
            continue;
        };
        if let Some(row) = cap_table(u, d)?.get(w) {
            for (v, p) in row {
                out.add_term(v.clone(), c * p);
            }
        }
    }
    Ok(out)
}

/// `ξ(m) = Σ_{i<m} (−1)^i ξ^{ρ_{i,m}}` as signed Schubert classes.
pub fn xi_class(n: usize, m: usize) -> Result<Vec<(AffinePermutation, i64)>> {
    (0..m)
        .map(|i| Ok((AffinePermutation::rho(n, i, m)?, if i % 2 == 0 { 1 } else { -1 })))
        .collect()
}

/// The representative `Σ (−1)^i S̃_{ρ_{i,m}}` of `ξ(m)`.
pub fn xi_representative(n: usize, m: usize) -> Result<RnElement> {
    let mut out = RnElement::zero(n);
    for (w, s) in xi_class(n, m)? {
        out.add_scaled(&*affine_schubert(&w)?, &Q::from_integer(s.into()));
    }
    Ok(out)
}

/// A handle on `R_n` for one modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchubertRing {
    n: usize,
}

impl SchubertRing {
    pub fn new(n: usize) -> Result<Self> {
        check_modulus(n)?;
        Ok(SchubertRing { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self, m: usize) -> Result<RnElement> {
        RnElement::p(self.n, m)
    }

    pub fn x(&self, i: i64) -> RnElement {
        RnElement::x(self.n, i)
    }

    pub fn schubert(&self, w: &AffinePermutation) -> Result<Arc<RnElement>> {
        if w.n() != self.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: w.n(),
            });
        }
        affine_schubert(w)
    }

    pub fn basis(&self, d: usize) -> Result<Arc<SchubertBasis>> {
        schubert_basis(self.n, d)
    }

    pub fn structure_constants(
        &self,
        u: &AffinePermutation,
        v: &AffinePermutation,
    ) -> Result<BTreeMap<AffinePermutation, Q>> {
        structure_constants(u, v)
    }

    pub fn cap_apply(&self, u: &AffinePermutation, x: &NilCoxElement) -> Result<NilCoxElement> {
        cap_apply(u, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::elements_up_to;
    use crate::rational::{q, q_frac};

    fn w(n: usize, word: &[usize]) -> AffinePermutation {
        AffinePermutation::from_word(n, word).unwrap()
    }

    fn p(n: usize, m: usize) -> RnElement {
        RnElement::p(n, m).unwrap()
    }

    fn x(n: usize, i: i64) -> RnElement {
        RnElement::x(n, i)
    }

    fn c(n: usize, v: Q) -> RnElement {
        RnElement::constant(n, v)
    }

    #[test]
    fn normal_form_examples() {
        assert!((&(&x(3, 0) + &x(3, 1)) + &x(3, 2)).is_zero());
        assert!((&x(2, 1) * &x(2, 1)).is_zero());
        assert_eq!(&p(3, 1) * &RnElement::one(3), p(3, 1));
        assert_eq!(
            &p(2, 1) * &p(2, 1),
            RnElement::monomial(2, Partition::new(vec![1, 1]).unwrap(), vec![0, 0], q(1)).unwrap()
        );
        assert!(RnElement::p(3, 3).is_err());
        // Every product of three variables vanishes for n = 3 except in the
        // top degree, which is one-dimensional.
        assert_eq!(graded_dimension(3, 0), 1);
        assert_eq!(staircase_monomials(3, 3).len(), 1);
        assert_eq!(staircase_monomials(3, 4).len(), 0);
    }

    /// Polynomial division oracle: `f` lies in the ideal iff its normal form
    /// vanishes; check `e_j · g ≡ 0` and that reduction is idempotent.
    #[test]
    fn ideal_elements_reduce_to_zero() {
        for n in 2..=4 {
            for j in 1..=n {
                // e_j(x_0, …, x_{n−1}) built from raw monomials.
                let mut ej = RnElement::zero(n);
                for e in exponent_vectors(n, j as u32) {
                    if e.iter().all(|&a| a <= 1) {
                        ej.add_scaled(&RnElement::monomial(n, Partition::empty(), e, q(1)).unwrap(), &q(1));
                    }
                }
                assert!(ej.is_zero(), "e_{j} for n = {n}");
                for d in 0..=3 {
                    for e in exponent_vectors(n, d) {
                        let mut prod = vec![0; n];
                        for (t, a) in prod.iter_mut().zip(&e) {
                            *t = *a;
                        }
                        let g = RnElement::monomial(n, Partition::empty(), prod, q(1)).unwrap();
                        let again: RnElement = g.terms().iter().fold(RnElement::zero(n), |mut acc, (m, cc)| {
                            acc.add_scaled(
                                &RnElement::monomial(n, m.p.clone(), m.x.clone(), cc.clone()).unwrap(),
                                &q(1),
                            );
                            acc
                        });
                        assert_eq!(g, again);
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_action_examples() {
        assert_eq!(x(3, 1).weyl_action(1).unwrap(), x(3, 2));
        assert_eq!(x(3, 2).weyl_action(2).unwrap(), x(3, 0));
        let expected = &(&p(3, 2) + &x(3, 1).pow(2)) - &x(3, 0).pow(2);
        assert_eq!(p(3, 2).weyl_action(0).unwrap(), expected);
        assert_eq!(p(3, 1).weyl_action(2).unwrap(), p(3, 1));
        // Involutions.
        let f = &(&p(3, 2) * &x(3, 1)) + &p(3, 1).pow(2);
        for i in 0..3 {
            assert_eq!(f.weyl_action(i).unwrap().weyl_action(i).unwrap(), f);
        }
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(p(3, 1).divided_difference(0).unwrap(), RnElement::one(3));
        assert_eq!((&p(3, 1) + &x(3, 1)).divided_difference(1).unwrap(), RnElement::one(3));
        let half = c(3, q_frac(1, 2));
        let f = &half * &(&p(3, 1).pow(2) + &p(3, 2));
        assert_eq!(f.divided_difference(0).unwrap(), &p(3, 1) + &x(3, 1));
        assert_eq!(x(3, 1).divided_difference(1).unwrap(), RnElement::one(3));
        assert_eq!(x(3, 2).divided_difference(1).unwrap(), -&RnElement::one(3));
        assert!(x(3, 0).divided_difference(1).unwrap().is_zero());
    }

    /// `(f − s_i f)` must equal `(x_i − x_{i+1}) ∂_i f`.
    #[test]
    fn divided_difference_matches_reflection_quotient() {
        let n = 3;
        let samples = [
            &p(n, 2) * &x(n, 1),
            &(&p(n, 1).pow(3) * &x(n, 0)) + &p(n, 2),
            &x(n, 0).pow(2) * &x(n, 1),
            &p(n, 1) * &p(n, 2),
        ];
        for f in &samples {
            for i in 0..n {
                let lhs = f - &f.weyl_action(i).unwrap();
                let diff = &x(n, i as i64) - &x(n, i as i64 + 1);
                assert_eq!(lhs, &diff * &f.divided_difference(i).unwrap(), "f = {f}, i = {i}");
            }
        }
    }

    #[test]
    fn n3_table() {
        let n = 3;
        let half = q_frac(1, 2);
        let table: Vec<(Vec<usize>, RnElement)> = vec![
            (vec![], RnElement::one(n)),
            (vec![0], p(n, 1)),
            (vec![1], &p(n, 1) + &x(n, 1)),
            (vec![2], &(&p(n, 1) + &x(n, 1)) + &x(n, 2)),
            (vec![1, 0], (&p(n, 1).pow(2) + &p(n, 2)).scale(&half)),
            (
                vec![2, 1],
                (&(&p(n, 1) + &x(n, 1)).pow(2) + &(&p(n, 2) + &x(n, 1).pow(2))).scale(&half),
            ),
            (vec![2, 1, 0], {
                // (1/3) p_3 + (1/2) p_2 p_1 + (1/6) p_1^3, read in Λ^(2)
                let terms = [
                    (vec![3], q_frac(1, 3)),
                    (vec![2, 1], q_frac(1, 2)),
                    (vec![1, 1, 1], q_frac(1, 6)),
                ]
                .into_iter()
                .map(|(l, v)| (Partition::new(l).unwrap(), v))
                .collect();
                RnElement::from_symmetric(n, &SymFunc::new(Basis::P, None, terms).unwrap()).unwrap()
            }),
        ];
        for (word, expected) in &table {
            assert_eq!(*affine_schubert(&w(n, word)).unwrap(), *expected, "word {word:?}");
        }
    }

    #[test]
    fn n2_family() {
        let n = 2;
        for a in 1..=3usize {
            let fact = |k: usize| -> Q { q((1..=k as i64).product()) };
            let w0: Vec<usize> = (0..a).map(|t| (a - 1 - t) % 2).collect();
            let w1: Vec<usize> = (0..a).map(|t| (a - t) % 2).collect();
            let g0 = AffinePermutation::from_word(n, &w0).unwrap();
            let g1 = AffinePermutation::from_word(n, &w1).unwrap();
            assert!(g0.is_grassmannian());
            let pa = p(n, 1).pow(a).scale(&(q(1) / fact(a)));
            assert_eq!(*affine_schubert(&g0).unwrap(), pa);
            let tail = &p(n, 1).pow(a - 1).scale(&(q(1) / fact(a - 1))) * &x(n, 1);
            assert_eq!(*affine_schubert(&g1).unwrap(), &pa + &tail);
        }
    }

    /// Oracle: `S̃_w` as the unique homogeneous solution of
    /// `∂_i f = S̃_{ws_i}` or `0`.
    fn solve_schubert(w: &AffinePermutation) -> RnElement {
        let n = w.n();
        let d = w.length();
        let rows = normal_monomials(n, d);
        let cols_one = normal_monomials(n, d - 1);
        let mut m = Matrix::zeros(rows.len(), n * cols_one.len());
        for (r, mono) in rows.iter().enumerate() {
            let f = RnElement::monomial(n, mono.p.clone(), mono.x.clone(), q(1)).unwrap();
            for i in 0..n {
                for (g, cc) in f.divided_difference(i).unwrap().terms() {
                    let col = cols_one.binary_search(g).unwrap();
                    m[(r, i * cols_one.len() + col)] = cc.clone();
                }
            }
        }
        let mut b = vec![Q::zero(); n * cols_one.len()];
        for i in 0..n {
            let down = w.mul_simple_right(i);
            if down.length() + 1 == d {
                for (g, cc) in affine_schubert(&down).unwrap().terms() {
                    b[i * cols_one.len() + cols_one.binary_search(g).unwrap()] = cc.clone();
                }
            }
        }
        let sol = m.solve_row(&b).expect("unique solution");
        let mut out = RnElement::zero(n);
        for (mono, cc) in rows.iter().zip(sol) {
            out.add_scaled(
                &RnElement::monomial(n, mono.p.clone(), mono.x.clone(), cc).unwrap(),
                &q(1),
            );
        }
        out
    }

    #[test]
    fn schubert_polynomials_match_linear_solve() {
        for n in 2..=3 {
            for v in elements_up_to(n, 4) {
                if v.length() == 0 {
                    continue;
                }
                assert_eq!(*affine_schubert(&v).unwrap(), solve_schubert(&v), "w = {v}");
            }
        }
    }

    #[test]
    fn divided_differences_step_down_the_basis() {
        for n in 2..=4 {
            let max = if n == 4 { 4 } else { 5 };
            for v in elements_up_to(n, max) {
                let s = affine_schubert(&v).unwrap();
                for i in 0..n {
                    let down = v.mul_simple_right(i);
                    let expected = if down.length() < v.length() {
                        (*affine_schubert(&down).unwrap()).clone()
                    } else {
                        RnElement::zero(n)
                    };
                    assert_eq!(s.divided_difference(i).unwrap(), expected, "w = {v}, i = {i}");
                }
            }
        }
    }

    #[test]
    fn basis_examples() {
        let b0 = schubert_basis(3, 0).unwrap();
        assert_eq!(b0.len(), 1);
        let b1 = schubert_basis(3, 1).unwrap();
        assert_eq!(b1.len(), 3);
        let b2 = schubert_basis(2, 2).unwrap();
        assert_eq!(b2.len(), 2);
        for n in 2..=3 {
            for d in 0..=5 {
                assert_eq!(schubert_basis(n, d).unwrap().len(), graded_dimension(n, d));
            }
        }
    }

    #[test]
    fn structure_constant_examples() {
        let s0 = w(2, &[0]);
        let sc = structure_constants(&s0, &s0).unwrap();
        assert_eq!(sc.get(&w(2, &[1, 0])), Some(&q(2)));
        assert_eq!(sc.get(&w(2, &[0, 1])), None);
        let id = AffinePermutation::identity(3);
        for v in elements_up_to(3, 3) {
            let sc = structure_constants(&id, &v).unwrap();
            assert_eq!(sc, BTreeMap::from([(v.clone(), q(1))]));
        }
    }

    #[test]
    fn cap_examples() {
        let x0 = NilCoxElement::from_word(3, &[0]).unwrap();
        assert_eq!(cap_apply(&w(3, &[0]), &x0).unwrap(), NilCoxElement::one(3));
        let y = NilCoxElement::from_word(3, &[1, 0]).unwrap();
        assert_eq!(cap_apply(&AffinePermutation::identity(3), &y).unwrap(), y);
        let rho = AffinePermutation::rho(3, 0, 2).unwrap();
        assert_eq!(cap_apply(&rho, &y).unwrap(), NilCoxElement::one(3));
    }

    #[test]
    fn xi_projects_to_power_sums() {
        for n in 2..=4 {
            for m in 1..n {
                let proj = xi_representative(n, m).unwrap().symmetric_projection().unwrap();
                let pm = SymFunc::single(Basis::P, Some(n - 1), Partition::new(vec![m]).unwrap()).unwrap();
                assert_eq!(proj, pm, "n = {n}, m = {m}");
            }
        }
        let xi2 = xi_class(3, 2).unwrap();
        assert_eq!(xi2, vec![(w(3, &[1, 0]), 1), (w(3, &[2, 0]), -1)]);
    }

    #[test]
    fn projection_gives_affine_stanley() {
        for n in 2..=3 {
            for v in elements_up_to(n, 4) {
                let proj = affine_schubert(&v).unwrap().symmetric_projection().unwrap();
                assert_eq!(proj, affine_stanley_power_sums(&v).unwrap(), "w = {v}");
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let f = &(&p(3, 1) * &x(3, 1)).scale(&q_frac(-2, 3)) + &p(3, 2);
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with(r#"{"n":3,"terms":["#));
        assert!(s.contains(r#""coeff":"-2/3""#));
        assert_eq!(serde_json::from_str::<RnElement>(&s).unwrap(), f);
    }
}
