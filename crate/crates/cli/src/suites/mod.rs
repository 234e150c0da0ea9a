//! Verification suites. Each suite enumerates basis elements up to a length
//! bound, checks its identities on every element in parallel, and reports the
//! first failing case of each check in enumeration order.

mod operators;
mod ring;

use std::fmt::Display;

use affine_fk::nilcoxeter::NilCoxElement;
use affine_fk::perm::elements_up_to;
use affine_fk::AffinePermutation;
use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::Value;

use crate::bounds;
use crate::error::Result;
use crate::report::{Outcome, Parameters, ReportBuilder, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    /// D_{p_m} three ways: Bruhat trees, hook BSS operators, cap operators of ρ.
    MainTheorem,
    /// Degree-one operators: marked covers, cap by s_a, Dunkl differences.
    Chevalley,
    /// D_{p_m}(h_i) = h_{i-m}.
    HShift,
    /// D_{p_m} is a derivation on the h-subalgebra and commutes with finite A_w.
    Leibniz,
    /// Dunkl operators commute with each other and with D_{p_m}; power sums vanish.
    Commutativity,
    /// Reference Schubert polynomials for n = 2 and n = 3.
    SchubertTable,
    /// Signed ribbon expansions of p_m times affine Stanley functions and Schubert classes.
    MnRule,
    /// k-Schur functions from ribbon tableaux agree with the h-expansion.
    KschurDuality,
    /// Schubert polynomials of each degree form a basis of the graded piece.
    Dimensions,
    /// Structure constants are nonnegative integers.
    Positivity,
    /// Divided differences on letter words model right multiplication by A_i.
    Bgg,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    pub fn all() -> &'static [Suite] {
        Suite::value_variants()
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub n: Option<usize>,
    pub max_length: Option<usize>,
    pub max_degree: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> Result<VerificationReport> {
    match suite {
        Suite::MainTheorem => operators::main_theorem(opts),
        Suite::Chevalley => operators::chevalley(opts),
        Suite::HShift => operators::h_shift(opts),
        Suite::Leibniz => operators::leibniz(opts),
        Suite::Commutativity => operators::commutativity(opts),
        Suite::Bgg => operators::bgg(opts),
        Suite::SchubertTable => ring::schubert_table(opts),
        Suite::MnRule => ring::mn_rule(opts),
        Suite::KschurDuality => ring::kschur_duality(opts),
        Suite::Dimensions => ring::dimensions(opts),
        Suite::Positivity => ring::positivity(opts),
    }
}

/// The ranks a suite runs over: the `--n` flag, or the suite's defaults.
fn ranks(opts: &SuiteOptions, default: &[usize]) -> Result<Vec<usize>> {
    match opts.n {
        Some(n) => Ok(vec![bounds::check_n(n)?]),
        None => Ok(default.to_vec()),
    }
}

/// `(n, length bound)` pairs, the length bound coming from `--max-length`
/// or from `default(n)`.
fn plan(opts: &SuiteOptions, ns: &[usize], default: impl Fn(usize) -> usize) -> Result<Vec<(usize, usize)>> {
    ranks(opts, ns)?
        .into_iter()
        .map(|n| {
            Ok((
                n,
                bounds::max_length(n, Some(opts.max_length.unwrap_or_else(|| default(n))))?,
            ))
        })
        .collect()
}

fn builder(suite: Suite, plan: &[(usize, usize)], max_degree: usize) -> ReportBuilder {
    ReportBuilder::new(
        &suite.name(),
        Parameters {
            n: plan.iter().map(|p| p.0).collect(),
            max_length: plan.iter().map(|p| p.1).collect(),
            max_degree,
        },
    )
}

/// Named checks whose outcomes accumulate across ranks and elements.
struct Checks {
    names: Vec<&'static str>,
    columns: Vec<Vec<Outcome>>,
}

impl Checks {
    fn new(names: &[&'static str]) -> Self {
        Checks {
            names: names.to_vec(),
            columns: vec![Vec::new(); names.len()],
        }
    }

    /// Runs `check` on every item in parallel; `check` returns one outcome
    /// per named check. Order of the items is preserved.
    fn run<T, F>(&mut self, items: &[T], check: F) -> Result<()>
    where
        T: Sync,
        F: Fn(&T) -> Result<Vec<Outcome>> + Sync + Send,
    {
        let rows = items.par_iter().map(check).collect::<Result<Vec<_>>>()?;
        for row in rows {
            assert_eq!(row.len(), self.names.len(), "one outcome per check");
            for (col, o) in self.columns.iter_mut().zip(row) {
                col.push(o);
            }
        }
        Ok(())
    }

    fn record(self, b: &mut ReportBuilder) {
        for (name, col) in self.names.into_iter().zip(self.columns) {
            b.record(name, col);
        }
    }
}

/// Like [`Outcome::collect`] for checks that can fail to compute.
fn cases<I, F>(items: I, mut check: F) -> Result<Outcome>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Result<Option<(Value, String)>>,
{
    let mut count = 0;
    for item in items {
        count += 1;
        if let Some(f) = check(item)? {
            return Ok(Outcome::fail(count, f.0, f.1));
        }
    }
    Ok(Outcome::pass(count))
}

/// `Some((witness, detail))` when `lhs ≠ rhs`.
fn compare<T: PartialEq + Display>(witness: impl FnOnce() -> Value, lhs: &T, rhs: &T) -> Option<(Value, String)> {
    (lhs != rhs).then(|| (witness(), format!("{} ≠ {}", clip(lhs), clip(rhs))))
}

fn clip(x: &impl Display) -> String {
    let s = x.to_string();
    match s.char_indices().nth(240) {
        Some((i, _)) => format!("{}…", &s[..i]),
        None => s,
    }
}

fn basis_up_to(n: usize, max_len: usize) -> Vec<(AffinePermutation, NilCoxElement)> {
    elements_up_to(n, max_len)
        .into_iter()
        .map(|w| (w.clone(), NilCoxElement::basis(w)))
        .collect()
}
