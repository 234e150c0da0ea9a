use affine_fk::fk_action::{act_dunkl, act_dunkl_power, act_mn, FKExpr, FKLetter};
use affine_fk::nilcoxeter::{h_element, h_product, NilCoxElement};
use affine_fk::partition::{partitions_bounded, Partition};
use affine_fk::perm::elements_up_to;
use affine_fk::rational::q;
use affine_fk::schubert_ring::cap_apply;
use affine_fk::strong_order::{bss_apply, Composition};
use affine_fk::{AffinePermutation, RnElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{basis_up_to, builder, cases, compare, plan, Checks, Suite, SuiteOptions};
use crate::bounds;
use crate::error::Result;
use crate::report::{Outcome, VerificationReport};

const DEFAULT_SEED: u64 = 7;
const DEFAULT_SAMPLES: usize = 200;

fn sign(i: usize) -> affine_fk::Q {
    if i.is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

pub fn main_theorem(opts: &SuiteOptions) -> Result<VerificationReport> {
    let plan = plan(opts, &[2, 3, 4], bounds::default_max_length)?;
    let mut b = builder(Suite::MainTheorem, &plan, bounds::max_degree(opts.max_degree)?);
    let mut checks = Checks::new(&["bss-hooks", "cap-rho"]);
    for &(n, len) in &plan {
        checks.run(&basis_up_to(n, len), |(w, x)| {
            let mut hooks = Vec::new();
            let mut caps = Vec::new();
            for m in 1..n {
                let mn = act_mn(x, m, 0)?;
                let mut via_bss = NilCoxElement::zero(n);
                let mut via_cap = NilCoxElement::zero(n);
                for i in 0..m {
                    via_bss.add_scaled(&bss_apply(x, &Composition::hook(i, m)?, 0), &sign(i));
                    via_cap.add_scaled(&cap_apply(&AffinePermutation::rho(n, i, m)?, x)?, &sign(i));
                }
                let wit = || json!({"n": n, "w": w, "m": m});
                hooks.push(compare(wit, &mn, &via_bss));
                caps.push(compare(wit, &mn, &via_cap));
            }
            Ok(vec![first(hooks), first(caps)])
        })?;
    }
    checks.record(&mut b);
    Ok(b.finish())
}

/// Collapses per-parameter results for one element into one outcome.
fn first(results: Vec<Option<(serde_json::Value, String)>>) -> Outcome {
    Outcome::collect(results, |r| r)
}

pub fn chevalley(opts: &SuiteOptions) -> Result<VerificationReport> {
    let plan = plan(opts, &[2, 3, 4], bounds::default_max_length)?;
    let mut b = builder(Suite::Chevalley, &plan, bounds::max_degree(opts.max_degree)?);
    let mut checks = Checks::new(&["marked-covers", "cap-simple", "dunkl-difference"]);
    for &(n, len) in &plan {
        checks.run(&basis_up_to(n, len), |(w, x)| {
            let (mut covers, mut caps, mut dunkl) = (Vec::new(), Vec::new(), Vec::new());
            for a in 0..n {
                let ai = a as i64;
                let mn = act_mn(x, 1, ai)?;
                let mut sum = NilCoxElement::zero(n);
                for c in w.marked_covers(ai) {
                    sum.add_term(c.lower, q(1));
                }
                let cap = cap_apply(&AffinePermutation::simple(n, a)?, x)?;
                let diff = &act_mn(x, 1, ai + 1)? - &mn;
                let wit = || json!({"n": n, "w": w, "a": a});
                covers.push(compare(wit, &mn, &sum));
                caps.push(compare(wit, &mn, &cap));
                dunkl.push(compare(wit, &diff, &act_dunkl(x, ai + 1)));
            }
            Ok(vec![first(covers), first(caps), first(dunkl)])
        })?;
    }
    checks.record(&mut b);
    Ok(b.finish())
}

pub fn h_shift(opts: &SuiteOptions) -> Result<VerificationReport> {
    let ns = super::ranks(opts, &[2, 3, 4])?;
    let plan: Vec<_> = ns.iter().map(|&n| (n, 0)).collect();
    let mut b = builder(Suite::HShift, &plan, bounds::max_degree(opts.max_degree)?);
    let mut checks = Checks::new(&["h-shift"]);
    for n in ns {
        let triples: Vec<(usize, usize, usize)> = (1..n)
            .flat_map(|i| (1..=i).flat_map(move |m| (0..n).map(move |a| (i, m, a))))
            .collect();
        checks.run(&triples, |&(i, m, a)| {
            let lhs = act_mn(&h_element(n, i)?, m, a as i64)?;
            let rhs = h_element(n, i - m)?;
            Ok(vec![Outcome::collect([()], |_| {
                compare(|| json!({"n": n, "i": i, "m": m, "a": a}), &lhs, &rhs)
            })])
        })?;
    }
    checks.record(&mut b);
    Ok(b.finish())
}

pub fn leibniz(opts: &SuiteOptions) -> Result<VerificationReport> {
    let plan = plan(opts, &[3], |_| 4)?;
    let max_mu = opts.max_degree.unwrap_or(4);
    bounds::max_degree(Some(max_mu))?;
    let mut b = builder(Suite::Leibniz, &plan, max_mu);
    let mut checks = Checks::new(&["derivation", "pass-through"]);
    for &(n, len) in &plan {
        let mus: Vec<Partition> = (0..=max_mu).flat_map(|d| partitions_bounded(d, n - 1)).collect();
        let finite: Vec<_> = elements_up_to(n, n * (n - 1) / 2)
            .into_iter()
            .filter(|v| v.is_finite())
            .collect();
        let mut hs = Vec::new();
        for mu in &mus {
            let h = (*h_product(n, mu)?).clone();
            let dh: Vec<_> = (1..n).map(|m| act_mn(&h, m, 0)).collect::<affine_fk::Result<_>>()?;
            hs.push((mu, h, dh));
        }
        checks.run(&basis_up_to(n, len), |(w, x)| {
            let dx: Vec<_> = (1..n).map(|m| act_mn(x, m, 0)).collect::<affine_fk::Result<_>>()?;
            let derivation = cases(
                hs.iter().flat_map(|h| (1..n).map(move |m| (h, m))),
                |((mu, h, dh), m)| {
                    let lhs = act_mn(&h.multiply(x)?, m, 0)?;
                    let rhs = &dh[m - 1].multiply(x)? + &h.multiply(&dx[m - 1])?;
                    Ok(compare(|| json!({"n": n, "w": w, "m": m, "mu": mu}), &lhs, &rhs))
                },
            )?;
            let pass = cases(finite.iter().flat_map(|v| (1..n).map(move |m| (v, m))), |(v, m)| {
                let av = NilCoxElement::basis(v.clone());
                let lhs = act_mn(&x.multiply(&av)?, m, 0)?;
                let rhs = dx[m - 1].multiply(&av)?;
                Ok(compare(|| json!({"n": n, "w": w, "v": v, "m": m}), &lhs, &rhs))
            })?;
            Ok(vec![derivation, pass])
        })?;
    }
    checks.record(&mut b);
    Ok(b.finish())
}

pub fn commutativity(opts: &SuiteOptions) -> Result<VerificationReport> {
    let plan = plan(opts, &[2, 3, 4], |_| 6)?;
    let mut b = builder(Suite::Commutativity, &plan, bounds::max_degree(opts.max_degree)?);
    let mut checks = Checks::new(&["dunkl-dunkl", "dunkl-mn", "period-sum", "nilpotence"]);
    for &(n, len) in &plan {
        let ni = n as i64;
        checks.run(&basis_up_to(n, len), |(w, x)| {
            let theta: Vec<_> = (1..=ni).map(|i| act_dunkl(x, i)).collect();
            let dd = Outcome::collect((1..=ni).flat_map(|i| (i + 1..=ni).map(move |j| (i, j))), |(i, j)| {
                let lhs = act_dunkl(&theta[i as usize - 1], j);
                let rhs = act_dunkl(&theta[j as usize - 1], i);
                compare(|| json!({"n": n, "w": w, "i": i, "j": j}), &lhs, &rhs)
            });
            let mut dm = Vec::new();
            for m in 1..n {
                let dx = act_mn(x, m, 0)?;
                for i in 1..=ni {
                    let lhs = act_mn(&theta[i as usize - 1], m, 0)?;
                    dm.push(compare(
                        || json!({"n": n, "w": w, "i": i, "m": m}),
                        &lhs,
                        &act_dunkl(&dx, i),
                    ));
                }
            }
            let period = Outcome::collect(1..=n, |m| {
                let mut total = NilCoxElement::zero(n);
                for i in 1..=ni {
                    total.add_scaled(&act_dunkl_power(x, i, m), &q(1));
                }
                compare(|| json!({"n": n, "w": w, "m": m}), &total, &NilCoxElement::zero(n))
            });
            let nil = Outcome::collect(1..=ni, |i| {
                compare(
                    || json!({"n": n, "w": w, "i": i}),
                    &act_dunkl_power(x, i, n),
                    &NilCoxElement::zero(n),
                )
            });
            Ok(vec![dd, first(dm), period, nil])
        })?;
    }
    checks.record(&mut b);
    Ok(b.finish())
}

fn random_fk_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> FKExpr {
    let ni = n as i64;
    let mut letters = Vec::with_capacity(len);
    while letters.len() < len {
        let i = rng.gen_range(-3..=3);
        let j = i + rng.gen_range(1..=5);
        if (j - i) % ni != 0 {
            letters.push(FKLetter::new(n, i, j).expect("residues differ").0);
        }
    }
    FKExpr::word(n, letters, q(1))
}

fn random_rn_element(rng: &mut ChaCha8Rng, n: usize) -> Result<RnElement> {
    let mut out = RnElement::zero(n);
    for _ in 0..rng.gen_range(1..5) {
        let parts: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(1..n)).collect();
        let x: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let c = q(rng.gen_range(-3..=3));
        out.add_scaled(&RnElement::monomial(n, Partition::from_unsorted(parts), x, c)?, &q(1));
    }
    Ok(out)
}

pub fn bgg(opts: &SuiteOptions) -> Result<VerificationReport> {
    let plan = plan(opts, &[3], |_| 4)?;
    let mut b = builder(Suite::Bgg, &plan, bounds::max_degree(opts.max_degree)?);
    let samples = opts.samples.unwrap_or(DEFAULT_SAMPLES);
    let seed = opts.seed.unwrap_or(DEFAULT_SEED);
    let mut checks = Checks::new(&["bgg"]);
    let mut relations = Vec::new();
    for &(n, len) in &plan {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let words: Vec<FKExpr> = (1..=3)
            .flat_map(|d| std::iter::repeat_n(d, samples))
            .map(|d| random_fk_word(&mut rng, n, d))
            .collect();
        let deltas: Vec<Vec<FKExpr>> = words
            .iter()
            .map(|x| (0..n).map(|i| x.divided_difference(i as i64, i as i64 + 1)).collect())
            .collect::<affine_fk::Result<_>>()?;
        checks.run(&basis_up_to(n, len), |(w, a)| {
            let shifted: Vec<_> = (0..n).map(|i| a.mul_generator_right(i)).collect();
            let o = Outcome::collect(
                words.iter().zip(&deltas).flat_map(|p| (0..n).map(move |i| (p, i))),
                |((x, dx), i)| {
                    let lhs = x.act(&shifted[i]).coeff_of_identity();
                    let rhs = dx[i].act(a).coeff_of_identity();
                    compare(|| json!({"n": n, "w": w, "i": i, "x": x.to_string()}), &lhs, &rhs)
                },
            );
            Ok(vec![o])
        })?;
        let elements: Vec<RnElement> = (0..samples)
            .map(|_| random_rn_element(&mut rng, n))
            .collect::<Result<_>>()?;
        for f in &elements {
            relations.push(cases(0..n, |i| {
                let wit = || json!({"n": n, "f": f.to_string(), "i": i});
                let d2 = f.divided_difference_word(&[i, i])?;
                if !d2.is_zero() {
                    return Ok(Some((wit(), format!("∂_{i}∂_{i} f = {d2}"))));
                }
                // s_0 and s_1 generate an infinite dihedral group for n = 2.
                if n == 2 {
                    return Ok(None);
                }
                let j = (i + 1) % n;
                let lhs = f.divided_difference_word(&[i, j, i])?;
                let rhs = f.divided_difference_word(&[j, i, j])?;
                if let Some(fail) = compare(wit, &lhs, &rhs) {
                    return Ok(Some(fail));
                }
                for k in (0..n).filter(|&k| k != i && k != j && (k + 1) % n != i) {
                    let lhs = f.divided_difference_word(&[i, k])?;
                    let rhs = f.divided_difference_word(&[k, i])?;
                    if let Some(fail) = compare(|| json!({"n": n, "f": f.to_string(), "i": i, "k": k}), &lhs, &rhs) {
                        return Ok(Some(fail));
                    }
                }
                Ok(None)
            })?);
        }
    }
    checks.record(&mut b);
    b.record("nil-hecke-relations", relations);
    Ok(b.finish())
}
