//! The affine nilCoxeter algebra `A` with basis `{A_w}`, the commutative
//! subalgebra `B` generated by the `h_i`, and noncommutative k-Schur
//! functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::memo::Memo;
use crate::partition::{partitions_bounded, Partition};
use crate::perm::AffinePermutation;
use crate::rational::{self, add_into, Q};

/// A finite rational combination of basis elements `A_w`.
#[derive(Clone, PartialEq, Eq)]
pub struct NilCoxElement {
    n: usize,
    terms: BTreeMap<AffinePermutation, Q>,
}

impl NilCoxElement {
    pub fn zero(n: usize) -> Self {
        NilCoxElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(AffinePermutation::identity(n))
    }

    /// `A_w`.
    pub fn basis(w: AffinePermutation) -> Self {
        Self::from_term(w, Q::one())
    }

    pub fn from_term(w: AffinePermutation, c: Q) -> Self {
        let mut x = Self::zero(w.n());
        x.add_term(w, c);
        x
    }

    /// `A_{i1} ⋯ A_{il}`, which vanishes unless the word is reduced.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let w = AffinePermutation::from_word(n, word)?;
        if w.length() == word.len() {
            Ok(Self::basis(w))
        } else {
            Ok(Self::zero(n))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<AffinePermutation, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<AffinePermutation, Q> {
        self.terms
    }

    pub fn coeff(&self, w: &AffinePermutation) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    /// `φ_id`: the coefficient of `A_id`.
    pub fn coeff_of_identity(&self) -> Q {
        self.coeff(&AffinePermutation::identity(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: AffinePermutation, c: Q) {
        assert_eq!(w.n(), self.n, "modulus mismatch");
        add_into(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &NilCoxElement, c: &Q) {
        assert_eq!(other.n, self.n, "modulus mismatch");
        for (w, d) in &other.terms {
            add_into(&mut self.terms, w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    /// The part spanned by `A_w` with `ℓ(w) = d`.
    pub fn homogeneous_component(&self, d: usize) -> Self {
        NilCoxElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.length() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms indexed by 0-Grassmannian elements.
    pub fn grassmannian_support(&self) -> BTreeMap<AffinePermutation, Q> {
        self.terms
            .iter()
            .filter(|(w, _)| w.is_grassmannian())
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    /// The product in `A`: `A_v A_w = A_{vw}` when lengths add, else 0.
    pub fn multiply(&self, other: &NilCoxElement) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (v, c) in &self.terms {
            for (w, d) in &other.terms {
                let vw = v.compose(w)?;
                if vw.length() == v.length() + w.length() {
                    add_into(&mut out.terms, vw, c * d);
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by the generator `A_i`.
    pub fn mul_generator_right(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.mul_simple_right(i);
            if ws.length() > w.length() {
                add_into(&mut out.terms, ws, c.clone());
            }
        }
        out
    }

    /// Left multiplication by the generator `A_i`.
    pub fn mul_generator_left(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let sw = w.mul_simple_left(i);
            if sw.length() > w.length() {
                add_into(&mut out.terms, sw, c.clone());
            }
        }
        out
    }

    /// Coefficients in the basis `s^(k)_{w0} A_{w1}` (with `w = w0 w1`,
    /// `w0` 0-Grassmannian, `w1` finite), keyed by `(w0, w1)`.
    pub fn tensor_decompose(&self) -> Result<BTreeMap<(AffinePermutation, AffinePermutation), Q>> {
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        while let Some((w, c)) = rest
            .terms
            .iter()
            .max_by(|a, b| {
                let la = a.0.grassmannian_factorize().0.length();
                let lb = b.0.grassmannian_factorize().0.length();
                la.cmp(&lb).then_with(|| b.0.cmp(a.0))
            })
            .map(|(w, c)| (w.clone(), c.clone()))
        {
            let (w0, w1) = w.grassmannian_factorize();
            let lambda = w0.bounded_partition()?;
            let ks = noncommutative_k_schur(self.n, &lambda)?;
            let piece = ks.element.multiply(&NilCoxElement::basis(w1.clone()))?;
            if piece.coeff(&w) != Q::one() {
                return Err(Error::Inconsistency(format!(
                    "s^(k)_{lambda} A_{w1} does not contain A_{w} with coefficient 1"
                )));
            }
            rest.add_scaled(&piece, &-c.clone());
            add_into(&mut out, (w0, w1), c);
        }
        Ok(out)
    }

    /// Inverse of [`tensor_decompose`](Self::tensor_decompose).
    pub fn from_tensor_terms(n: usize, terms: &BTreeMap<(AffinePermutation, AffinePermutation), Q>) -> Result<Self> {
        let mut out = Self::zero(n);
        for ((w0, w1), c) in terms {
            let lambda = w0.bounded_partition()?;
            let ks = noncommutative_k_schur(n, &lambda)?;
            out.add_scaled(&ks.element.multiply(&NilCoxElement::basis(w1.clone()))?, c);
        }
        Ok(out)
    }
}

impl fmt::Display for NilCoxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<String> = w.reduced_word().iter().map(|i| i.to_string()).collect();
            write!(f, "({c})A[{}]", word.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NilCoxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &NilCoxElement {
    type Output = NilCoxElement;
    fn add(self, rhs: &NilCoxElement) -> NilCoxElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl Sub for &NilCoxElement {
    type Output = NilCoxElement;
    fn sub(self, rhs: &NilCoxElement) -> NilCoxElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl Neg for &NilCoxElement {
    type Output = NilCoxElement;
    fn neg(self) -> NilCoxElement {
        self.scale(&-Q::one())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for NilCoxElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    word: w.reduced_word(),
                    coeff: rational::format(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NilCoxElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ElementJson::deserialize(d)?;
        if raw.n < 2 {
            return Err(D::Error::custom(Error::InvalidModulus(raw.n)));
        }
        let mut out = NilCoxElement::zero(raw.n);
        for t in raw.terms {
            let c = rational::parse(&t.coeff).map_err(D::Error::custom)?;
            let x = NilCoxElement::from_word(raw.n, &t.word).map_err(D::Error::custom)?;
            out.add_scaled(&x, &c);
        }
        Ok(out)
    }
}

/// `h_i = Σ_{|J| = i} A_{w_J}` over cyclically decreasing elements.
pub fn h_element(n: usize, i: usize) -> Result<NilCoxElement> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    if i >= n {
        return Err(Error::OutOfRange(format!("h_{i} needs i < n = {n}")));
    }
    let mut out = NilCoxElement::zero(n);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        out.add_term(AffinePermutation::cyclically_decreasing(n, &subset)?, Q::one());
    }
    Ok(out)
}

fn h_products() -> &'static Memo<(usize, Partition), NilCoxElement> {
    static M: OnceLock<Memo<(usize, Partition), NilCoxElement>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// `h_μ = h_{μ1} h_{μ2} ⋯` for a k-bounded partition μ.
pub fn h_product(n: usize, mu: &Partition) -> Result<Arc<NilCoxElement>> {
    if !mu.is_bounded_by(n - 1) {
        return Err(Error::NotBounded(mu.to_string(), n - 1));
    }
    h_products().get_or_try_insert(&(n, mu.clone()), || {
        let parts = mu.parts();
        match parts.split_last() {
            None => Ok(NilCoxElement::one(n)),
            Some((&last, rest)) => {
                let head = h_product(n, &Partition::new(rest.to_vec())?)?;
                head.multiply(&h_element(n, last)?)
            }
        }
    })
}

fn power_sums() -> &'static Memo<(usize, Partition), NilCoxElement> {
    static M: OnceLock<Memo<(usize, Partition), NilCoxElement>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// The image of the power sum `p_ν` in `B`, through Newton's identity
/// `p_m = m h_m − Σ_{i<m} h_{m−i} p_i`.
pub fn power_sum_product(n: usize, nu: &Partition) -> Result<Arc<NilCoxElement>> {
    if !nu.is_bounded_by(n - 1) {
        return Err(Error::NotBounded(nu.to_string(), n - 1));
    }
    power_sums().get_or_try_insert(&(n, nu.clone()), || {
        let parts = nu.parts();
        if parts.len() > 1 {
            let (&last, rest) = parts.split_last().unwrap();
            let head = power_sum_product(n, &Partition::new(rest.to_vec())?)?;
            return head.multiply(&*power_sum_product(n, &Partition::new(vec![last])?)?);
        }
        let Some(&m) = parts.first() else {
            return Ok(NilCoxElement::one(n));
        };
        let mut out = h_element(n, m)?.scale(&rational::q(m as i64));
        for i in 1..m {
            let pi = power_sum_product(n, &Partition::new(vec![i])?)?;
            let term = h_element(n, m - i)?.multiply(&pi)?;
            out.add_scaled(&term, &-Q::one());
        }
        Ok(out)
    })
}

/// A noncommutative k-Schur function together with its expansion in the
/// `h_μ`.
#[derive(Clone, Debug)]
pub struct KSchurElement {
    pub lambda: Partition,
    pub element: NilCoxElement,
    pub h_coefficients: BTreeMap<Partition, Q>,
}

fn k_schur_cache() -> &'static Memo<(usize, Partition), KSchurElement> {
    static M: OnceLock<Memo<(usize, Partition), KSchurElement>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// Matrix `M[ν][μ]` = coefficient of `A_{w_ν}` in `h_μ`, rows and columns
/// indexed by the k-bounded partitions of `d` in their canonical order.
pub fn grassmannian_h_matrix(n: usize, d: usize) -> Result<(Vec<Partition>, Matrix)> {
    let parts = partitions_bounded(d, n - 1);
    let grass: Vec<AffinePermutation> = parts
        .iter()
        .map(|nu| AffinePermutation::from_bounded_partition(n, nu))
        .collect::<Result<_>>()?;
    let mut m = Matrix::zeros(parts.len(), parts.len());
    for (col, mu) in parts.iter().enumerate() {
        let h = h_product(n, mu)?;
        for (row, w) in grass.iter().enumerate() {
            m[(row, col)] = h.coeff(w);
        }
    }
    Ok((parts, m))
}

/// The unique element of `B` whose only 0-Grassmannian term is `A_{w_λ}`,
/// found by solving the full linear system on 0-Grassmannian coordinates.
pub fn noncommutative_k_schur(n: usize, lambda: &Partition) -> Result<KSchurElement> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    if !lambda.is_bounded_by(n - 1) {
        return Err(Error::NotBounded(lambda.to_string(), n - 1));
    }
    let found = k_schur_cache().get_or_try_insert(&(n, lambda.clone()), || {
        let (parts, m) = grassmannian_h_matrix(n, lambda.size())?;
        let inv = m.inverse().ok_or_else(|| {
            Error::Inconsistency(format!(
                "h-to-Grassmannian matrix is singular in degree {} for n = {n}",
                lambda.size()
            ))
        })?;
        let col = parts.iter().position(|p| p == lambda).unwrap();
        let mut element = NilCoxElement::zero(n);
        let mut h_coefficients = BTreeMap::new();
        for (row, mu) in parts.iter().enumerate() {
            let c = inv[(row, col)].clone();
            if c.is_zero() {
                continue;
            }
            element.add_scaled(&*h_product(n, mu)?, &c);
            h_coefficients.insert(mu.clone(), c);
        }
        let target = AffinePermutation::from_bounded_partition(n, lambda)?;
        let grass = element.grassmannian_support();
        if grass.len() != 1 || grass.get(&target) != Some(&Q::one()) {
            return Err(Error::Inconsistency(format!(
                "k-Schur element for {lambda} has 0-Grassmannian support {grass:?}"
            )));
        }
        Ok(KSchurElement {
            lambda: lambda.clone(),
            element,
            h_coefficients,
        })
    })?;
    Ok((*found).clone())
}
