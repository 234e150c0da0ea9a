use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use affine_fk::partition::{partitions_bounded, Partition};
use affine_fk::perm::elements_of_length;
use affine_fk::rational;
use affine_fk::schubert_ring::{affine_schubert, structure_constants};
use affine_fk::strong_order::{ribbon_tableaux, ribbons, ribbons_to_json, tableaux_to_json};
use affine_fk::symfunc::{affine_schur, affine_stanley, affine_stanley_power_sums, k_schur};
use affine_fk::{AffinePermutation, Basis, RnElement, SymFunc, Q};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::{ComputeCmd, ElementArgs, Format};
use crate::bounds;
use crate::cache::{Cache, CacheKey};
use crate::error::{HarnessError, Result};

/// Bounds and cache shared by every command in one invocation.
pub struct Context {
    pub n: usize,
    pub max_length: usize,
    pub max_degree: usize,
    pub cache: Option<Cache>,
}

pub struct Output {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)?),
            Format::Text => Ok(self.text.trim_end().to_string()),
            Format::Csv => self
                .csv
                .clone()
                .map(|s| s.trim_end().to_string())
                .ok_or_else(|| HarnessError::Usage("--format csv is only available for `compute structure`".into())),
        }
    }
}

pub fn parse_list<T: FromStr>(flag: &str, s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| HarnessError::Usage(format!("{flag}: cannot parse {t:?}")))
        })
        .collect()
}

fn parse_word(ctx: &Context, flag: &str, s: &str) -> Result<AffinePermutation> {
    let word: Vec<usize> = parse_list(flag, s)?;
    if let Some(&bad) = word.iter().find(|&&i| i >= ctx.n) {
        return Err(HarnessError::Usage(format!(
            "{flag}: letter {bad} is not a generator for n = {}",
            ctx.n
        )));
    }
    Ok(AffinePermutation::from_word(ctx.n, &word)?)
}

fn element(ctx: &Context, args: &ElementArgs) -> Result<AffinePermutation> {
    let w = match (&args.word, &args.window) {
        (Some(word), _) => parse_word(ctx, "--word", word)?,
        (None, Some(window)) => AffinePermutation::from_window(ctx.n, parse_list("--window", window)?)?,
        (None, None) => return Err(HarnessError::Usage("one of --word or --window is required".into())),
    };
    bounds::within("--max-length", "length of the element", w.length(), ctx.max_length)?;
    Ok(w)
}

fn partition(ctx: &Context, s: &str) -> Result<Partition> {
    let lambda = Partition::from_unsorted(parse_list("--partition", s)?);
    bounds::within("--max-degree", "size of the partition", lambda.size(), ctx.max_degree)?;
    if !lambda.is_bounded_by(ctx.n - 1) {
        return Err(affine_fk::Error::NotBounded(lambda.to_string(), ctx.n - 1).into());
    }
    Ok(lambda)
}

fn basis(s: &str) -> Result<Basis> {
    Basis::from_str(s).map_err(|_| HarnessError::Usage(format!("--basis: unknown basis {s:?}")))
}

/// `s_2s_1s_0` for a reduced word of `w`, or `id`.
pub fn word_name(w: &AffinePermutation) -> String {
    let word = w.reduced_word();
    if word.is_empty() {
        return "id".into();
    }
    word.iter().map(|i| format!("s_{i}")).collect()
}

pub fn schubert_payload(n: usize, degree: usize) -> Result<Value> {
    let elements = elements_of_length(n, degree);
    let polys = elements
        .par_iter()
        .map(|w| affine_schubert(w).map(|p| json!({"w": w, "polynomial": *p})))
        .collect::<affine_fk::Result<Vec<_>>>()?;
    Ok(json!({ "polynomials": polys }))
}

pub fn kschur_payload(n: usize, degree: usize) -> Result<Value> {
    let parts = partitions_bounded(degree, n - 1);
    let fns = parts
        .par_iter()
        .map(|l| {
            k_schur(n - 1, l)?
                .to_power_sums()
                .map(|f| json!({"partition": l, "p": f}))
        })
        .collect::<affine_fk::Result<Vec<_>>>()?;
    Ok(json!({ "functions": fns }))
}

#[derive(Deserialize)]
struct SchubertRow {
    w: AffinePermutation,
    polynomial: RnElement,
}

#[derive(Deserialize)]
struct KSchurRow {
    partition: Partition,
    p: SymFunc,
}

pub fn schubert(ctx: &Context, w: &AffinePermutation) -> Result<RnElement> {
    let Some(cache) = &ctx.cache else {
        return Ok((*affine_schubert(w)?).clone());
    };
    let d = w.length();
    let payload = cache.get_or_compute(&CacheKey::new(w.n(), "schubert", d), || schubert_payload(w.n(), d))?;
    let rows: Vec<SchubertRow> = serde_json::from_value(payload["polynomials"].clone())?;
    rows.into_iter()
        .find(|r| r.w == *w)
        .map(|r| r.polynomial)
        .ok_or_else(|| HarnessError::Internal(format!("cached Schubert table lacks {w}")))
}

pub fn kschur_p(ctx: &Context, lambda: &Partition) -> Result<SymFunc> {
    let Some(cache) = &ctx.cache else {
        return Ok(k_schur(ctx.n - 1, lambda)?.to_power_sums()?);
    };
    let d = lambda.size();
    let payload = cache.get_or_compute(&CacheKey::new(ctx.n, "kschur", d), || kschur_payload(ctx.n, d))?;
    let rows: Vec<KSchurRow> = serde_json::from_value(payload["functions"].clone())?;
    rows.into_iter()
        .find(|r| r.partition == *lambda)
        .map(|r| r.p)
        .ok_or_else(|| HarnessError::Internal(format!("cached k-Schur table lacks {lambda}")))
}

fn symfunc_output(f: &SymFunc) -> Result<Output> {
    Ok(Output {
        json: serde_json::to_value(f)?,
        text: f.to_string(),
        csv: None,
    })
}

pub fn run(ctx: &Context, cmd: &ComputeCmd) -> Result<Output> {
    match cmd {
        ComputeCmd::Schubert(args) => {
            let w = element(ctx, args)?;
            let poly = schubert(ctx, &w)?;
            Ok(Output {
                text: format!("{poly}"),
                json: json!({"w": w, "word": w.reduced_word(), "polynomial": poly}),
                csv: None,
            })
        }
        ComputeCmd::Stanley {
            element: args,
            basis: b,
        } => {
            let w = element(ctx, args)?;
            bounds::within("--max-degree", "degree of the function", w.length(), ctx.max_degree)?;
            let f = match basis(b)? {
                Basis::M => affine_stanley(&w)?,
                Basis::P => affine_stanley_power_sums(&w)?,
                _ => {
                    return Err(HarnessError::Usage(
                        "--basis: affine Stanley functions are available in m or p".into(),
                    ))
                }
            };
            symfunc_output(&f)
        }
        ComputeCmd::Kschur { partition: p, basis: b } => {
            let lambda = partition(ctx, p)?;
            let target = basis(b)?;
            if target.needs_k() {
                return Err(HarnessError::Usage("--basis: choose one of p, h, m, e, s".into()));
            }
            let f = kschur_p(ctx, &lambda)?;
            let f = if target == Basis::P {
                f
            } else {
                f.convert(target, None)?
            };
            symfunc_output(&f)
        }
        ComputeCmd::Affschur { partition: p } => {
            let lambda = partition(ctx, p)?;
            symfunc_output(&affine_schur(ctx.n - 1, &lambda)?)
        }
        ComputeCmd::Ribbons {
            element: args,
            m,
            weight,
        } => {
            let w = element(ctx, args)?;
            if let Some(m) = m {
                let rs = ribbons(&w, *m)?;
                let mut text = String::new();
                for r in &rs {
                    let sign = if r.sign > 0 { '+' } else { '-' };
                    let _ = writeln!(text, "{sign} {:?} -> {}", r.word(), r.outside());
                }
                return Ok(Output {
                    json: ribbons_to_json(&rs),
                    text,
                    csv: None,
                });
            }
            let weight: Vec<usize> = parse_list("--weight", weight.as_deref().unwrap_or_default())?;
            let ts = ribbon_tableaux(&w, &weight)?;
            let mut text = String::new();
            for t in &ts {
                let chain: Vec<_> = t.ribbons.iter().map(|r| r.word()).collect();
                let _ = writeln!(text, "{:+} {chain:?}", t.sigma);
            }
            Ok(Output {
                json: tableaux_to_json(&ts),
                text,
                csv: None,
            })
        }
        ComputeCmd::Structure { u, v } => {
            let u = parse_word(ctx, "--u", u)?;
            let v = parse_word(ctx, "--v", v)?;
            bounds::within("--max-length", "ℓ(u) + ℓ(v)", u.length() + v.length(), ctx.max_length)?;
            let table: BTreeMap<AffinePermutation, Q> = structure_constants(&u, &v)?;
            structure_output(&u, &v, &table)
        }
    }
}

fn structure_output(
    u: &AffinePermutation,
    v: &AffinePermutation,
    table: &BTreeMap<AffinePermutation, Q>,
) -> Result<Output> {
    let mut text = String::new();
    let mut csv = String::from("u,v,w,value\n");
    let mut terms = Vec::new();
    for (w, c) in table {
        let c = rational::format(c);
        let _ = writeln!(text, "{}: {c}", word_name(w));
        let _ = writeln!(csv, "{},{},{},{c}", word_name(u), word_name(v), word_name(w));
        terms.push(json!({"w": w, "word": w.reduced_word(), "value": c}));
    }
    if table.is_empty() {
        text.push_str("0\n");
    }
    Ok(Output {
        json: json!({"u": u, "v": v, "terms": terms}),
        text,
        csv: Some(csv),
    })
}
