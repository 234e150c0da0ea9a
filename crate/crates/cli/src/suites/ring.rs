use std::collections::BTreeMap;

use affine_fk::linalg::Matrix;
use affine_fk::partition::{partitions_bounded, Partition};
use affine_fk::perm::{elements_of_length, elements_up_to};
use affine_fk::rational::{q, q_frac, to_i64};
use affine_fk::schubert_ring::{
    affine_schubert, graded_dimension, normal_monomials, schubert_basis, structure_constants, xi_representative,
};
use affine_fk::strong_order::{k_schur_via_ribbons, mn_coefficient, ribbons};
use affine_fk::symfunc::{affine_stanley_power_sums, k_schur};
use affine_fk::{AffinePermutation, Basis, RnElement, SymFunc, Q};
use serde_json::json;

use super::{builder, cases, compare, plan, ranks, Checks, Suite, SuiteOptions};
use crate::bounds;
use crate::error::{HarnessError, Result};
use crate::report::{Outcome, VerificationReport};

fn w(n: usize, word: &[usize]) -> Result<AffinePermutation> {
    Ok(AffinePermutation::from_word(n, word)?)
}

/// Reference Schubert polynomials for n = 3, keyed by reduced word.
fn n3_table() -> Result<Vec<(Vec<usize>, RnElement)>> {
    let n = 3;
    let p = |m| RnElement::p(n, m);
    let x = |i| RnElement::x(n, i);
    let half = q_frac(1, 2);
    let cubic: BTreeMap<Partition, Q> = [
        (vec![3], q_frac(1, 3)),
        (vec![2, 1], q_frac(1, 2)),
        (vec![1, 1, 1], q_frac(1, 6)),
    ]
    .into_iter()
    .map(|(l, c)| Ok((Partition::new(l)?, c)))
    .collect::<affine_fk::Result<_>>()?;
    Ok(vec![
        (vec![], RnElement::one(n)),
        (vec![0], p(1)?),
        (vec![1], &p(1)? + &x(1)),
        (vec![2], &(&p(1)? + &x(1)) + &x(2)),
        (vec![1, 0], (&p(1)?.pow(2) + &p(2)?).scale(&half)),
        (
            vec![2, 1],
            (&(&p(1)? + &x(1)).pow(2) + &(&p(2)? + &x(1).pow(2))).scale(&half),
        ),
        // The p_3 term vanishes in R_3, where only parts below 3 survive.
        (
            vec![2, 1, 0],
            RnElement::from_symmetric(n, &SymFunc::new(Basis::P, None, cubic)?)?,
        ),
    ])
}

fn factorial(k: usize) -> Q {
    q((1..=k as i64).product())
}

pub fn schubert_table(opts: &SuiteOptions) -> Result<VerificationReport> {
    let _ = opts;
    let mut b = builder(Suite::SchubertTable, &[(2, 3), (3, 3)], bounds::DEFAULT_MAX_DEGREE);
    let rows = n3_table()?;
    let n3 = cases(&rows, |(word, expected)| {
        let e = w(3, word)?;
        Ok(compare(
            || json!({"n": 3, "word": word}),
            &*affine_schubert(&e)?,
            expected,
        ))
    })?;
    b.record("n3-table", vec![n3]);
    let n = 2;
    let n2 = cases(1..=3usize, |a| {
        let grass: Vec<usize> = (0..a).map(|t| (a - 1 - t) % 2).collect();
        let other: Vec<usize> = (0..a).map(|t| (a - t) % 2).collect();
        let p1 = RnElement::p(n, 1)?;
        let top = p1.pow(a).scale(&(q(1) / factorial(a)));
        let with_x = &top + &(&p1.pow(a - 1).scale(&(q(1) / factorial(a - 1))) * &RnElement::x(n, 1));
        for (word, expected) in [(grass, top), (other, with_x)] {
            let e = w(n, &word)?;
            if let Some(f) = compare(
                || json!({"n": 2, "a": a, "word": word}),
                &*affine_schubert(&e)?,
                &expected,
            ) {
                return Ok(Some(f));
            }
        }
        Ok(None)
    })?;
    b.record("n2-family", vec![n2]);
    b.note("n = 2 rows are checked with p_1 raised to the row length a (p_1^a/a!), not to n");
    Ok(b.finish())
}

/// `c^w_{m,v}` for every `w` of length `ℓ(v) + m`, nonzero entries only.
fn mn_row(v: &AffinePermutation, m: usize) -> Result<BTreeMap<AffinePermutation, i64>> {
    let mut out = BTreeMap::new();
    for u in elements_of_length(v.n(), v.length() + m).iter() {
        let c = mn_coefficient(u, m, v)?;
        if c != 0 {
            out.insert(u.clone(), c);
        }
    }
    Ok(out)
}

fn worked_example() -> Result<(Outcome, Outcome)> {
    let n = 4;
    let target = w(n, &[1, 0])?;
    // (word of the inside element, ribbon as [j1 j2] letters, sign)
    type Chain = (&'static [usize], [(i64, i64); 3], i64);
    let chains: [Chain; 3] = [
        (&[1, 2, 3, 1, 0], [(-2, 1), (-4, 1), (-1, 1)], 1),
        (&[2, 0, 3, 1, 0], [(-4, 1), (-1, 2), (-1, 1)], -1),
        (&[0, 3, 2, 1, 0], [(0, 6), (0, 5), (0, 3)], 1),
    ];
    let found = cases(&chains, |(word, chain, sign)| {
        let inside = w(n, word)?;
        let wit = || json!({"n": n, "word": word, "chain": chain});
        let matching: Vec<_> = ribbons(&inside, 3)?.into_iter().filter(|r| r.word() == chain).collect();
        if matching.len() != 1 {
            return Ok(Some((wit(), format!("{} matching ribbons", matching.len()))));
        }
        let r = &matching[0];
        if r.outside() != &target || r.sign != *sign {
            return Ok(Some((wit(), format!("lands on {} with sign {}", r.outside(), r.sign))));
        }
        Ok(None)
    })?;
    let stanley = |word: &[usize]| -> Result<SymFunc> { Ok(affine_stanley_power_sums(&w(n, word)?)?) };
    let p3 = SymFunc::single(Basis::P, Some(3), Partition::new(vec![3])?)?;
    let lhs = p3.multiply(&stanley(&[1, 0])?)?.project_to_quotient(3)?;
    let rhs = stanley(&[1, 2, 3, 1, 0])?
        .sub(&stanley(&[2, 0, 3, 1, 0])?)?
        .add(&stanley(&[0, 3, 2, 1, 0])?)?
        .project_to_quotient(3)?;
    let identity = Outcome::collect([()], |_| compare(|| json!({"n": n, "m": 3, "v": target}), &lhs, &rhs));
    Ok((found, identity))
}

pub fn mn_rule(opts: &SuiteOptions) -> Result<VerificationReport> {
    let plan = plan(opts, &[3], |_| 4)?;
    let mut b = builder(Suite::MnRule, &plan, bounds::max_degree(opts.max_degree)?);
    let (chains, identity) = worked_example()?;
    b.record("worked-example-chains", vec![chains]);
    b.record("worked-example-identity", vec![identity]);
    let mut checks = Checks::new(&["stanley-expansion", "schubert-expansion"]);
    for &(n, len) in &plan {
        let k = n - 1;
        let xi: Vec<RnElement> = (1..n)
            .map(|m| xi_representative(n, m))
            .collect::<affine_fk::Result<_>>()?;
        checks.run(&elements_up_to(n, len), |v| {
            let fv = affine_stanley_power_sums(v)?;
            let sv = affine_schubert(v)?;
            let (mut st, mut sc) = (Vec::new(), Vec::new());
            for m in 1..n {
                let row = mn_row(v, m)?;
                let wit = || json!({"n": n, "v": v, "m": m});
                let pm = SymFunc::single(Basis::P, Some(k), Partition::new(vec![m])?)?;
                let lhs = pm.multiply(&fv)?.project_to_quotient(k)?;
                let mut rhs = SymFunc::zero(Basis::P, Some(k));
                for (u, c) in &row {
                    rhs = rhs.add(&affine_stanley_power_sums(u)?.scale(&Q::from_integer((*c).into())))?;
                }
                st.push(compare(wit, &lhs, &rhs.project_to_quotient(k)?));
                let prod = &xi[m - 1] * &*sv;
                let expansion = schubert_basis(n, v.length() + m)?.expand(&prod)?;
                let expected: BTreeMap<_, _> = row.into_iter().map(|(u, c)| (u, Q::from_integer(c.into()))).collect();
                sc.push((expansion != expected).then(|| (wit(), format!("{expansion:?} ≠ {expected:?}"))));
            }
            Ok(vec![Outcome::collect(st, |r| r), Outcome::collect(sc, |r| r)])
        })?;
    }
    checks.record(&mut b);
    Ok(b.finish())
}

pub fn kschur_duality(opts: &SuiteOptions) -> Result<VerificationReport> {
    let ns = ranks(opts, &[3, 4])?;
    let max_d = bounds::max_degree(Some(opts.max_degree.unwrap_or(6)))?;
    let plan: Vec<_> = ns.iter().map(|&n| (n, max_d)).collect();
    let mut b = builder(Suite::KschurDuality, &plan, max_d);
    let mut checks = Checks::new(&["ribbons-vs-h-expansion"]);
    for &n in &ns {
        let lambdas: Vec<Partition> = (1..=max_d).flat_map(|d| partitions_bounded(d, n - 1)).collect();
        checks.run(&lambdas, |lambda| {
            let u = AffinePermutation::from_bounded_partition(n, lambda)?;
            let via = k_schur_via_ribbons(&u)?;
            let direct = k_schur(n - 1, lambda)?.to_power_sums()?;
            Ok(vec![Outcome::collect([()], |_| {
                compare(|| json!({"n": n, "lambda": lambda}), &via, &direct)
            })])
        })?;
    }
    checks.record(&mut b);
    Ok(b.finish())
}

pub fn dimensions(opts: &SuiteOptions) -> Result<VerificationReport> {
    let ns = ranks(opts, &[2, 3, 4])?;
    let max_d = bounds::max_degree(Some(opts.max_degree.unwrap_or(6)))?;
    let plan: Vec<_> = ns.iter().map(|&n| (n, max_d)).collect();
    let mut b = builder(Suite::Dimensions, &plan, max_d);
    let mut checks = Checks::new(&["count", "independence"]);
    let pairs: Vec<(usize, usize)> = ns.iter().flat_map(|&n| (0..=max_d).map(move |d| (n, d))).collect();
    checks.run(&pairs, |&(n, d)| {
        let elements = elements_of_length(n, d);
        let dim = graded_dimension(n, d);
        let wit = || json!({"n": n, "degree": d});
        let count = Outcome::collect([()], |_| {
            (elements.len() != dim).then(|| {
                (
                    wit(),
                    format!("{} elements of length {d}, dimension {dim}", elements.len()),
                )
            })
        });
        let monomials = normal_monomials(n, d);
        let mut m = Matrix::zeros(elements.len(), monomials.len());
        for (r, e) in elements.iter().enumerate() {
            for (mono, c) in affine_schubert(e)?.terms() {
                let col = monomials
                    .binary_search(mono)
                    .map_err(|_| HarnessError::Internal(format!("S̃_{e} has a term outside degree {d}")))?;
                m[(r, col)] = c.clone();
            }
        }
        let rank = m.rank();
        let independence = Outcome::collect([()], |_| {
            (rank != elements.len()).then(|| (wit(), format!("rank {rank} for {} polynomials", elements.len())))
        });
        Ok(vec![count, independence])
    })?;
    checks.record(&mut b);
    Ok(b.finish())
}

pub fn positivity(opts: &SuiteOptions) -> Result<VerificationReport> {
    let plan = plan(opts, &[2, 3, 4], bounds::default_max_length)?;
    let mut b = builder(Suite::Positivity, &plan, bounds::max_degree(opts.max_degree)?);
    let mut checks = Checks::new(&["nonnegative-integers"]);
    for &(n, len) in &plan {
        let elements: Vec<_> = elements_up_to(n, len.saturating_sub(1))
            .into_iter()
            .filter(|e| !e.is_identity())
            .collect();
        let mut pairs = Vec::new();
        for (i, u) in elements.iter().enumerate() {
            for v in &elements[i..] {
                if u.length() + v.length() <= len {
                    pairs.push((u, v));
                }
            }
        }
        checks.run(&pairs, |(u, v)| {
            let table = structure_constants(u, v)?;
            let bad = table.iter().find(|(_, c)| to_i64(c).is_none_or(|c| c < 0));
            let outcome = match bad {
                Some((wt, c)) => Outcome::fail(
                    table.len(),
                    json!({"n": n, "u": u, "v": v, "w": wt}),
                    format!("coefficient {c}"),
                ),
                None => Outcome::pass(table.len()),
            };
            Ok(vec![outcome])
        })?;
    }
    checks.record(&mut b);
    Ok(b.finish())
}
