//! Default and hard limits on enumeration sizes. Defaults apply when a flag
//! is absent; flags may raise them up to the ceiling and no further.

use crate::error::{HarnessError, Result};

pub const MIN_N: usize = 2;
pub const MAX_N: usize = 5;
pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const MAX_DEGREE_CEILING: usize = 12;
pub const MAX_THREADS: usize = 256;

pub fn default_max_length(n: usize) -> usize {
    if n >= 4 {
        5
    } else {
        6
    }
}

pub fn max_length_ceiling(n: usize) -> usize {
    match n {
        0..=2 => 16,
        3 => 9,
        4 => 7,
        _ => 6,
    }
}

pub fn check_n(n: usize) -> Result<usize> {
    if n < MIN_N {
        return Err(HarnessError::Usage(format!("--n must be at least {MIN_N}, got {n}")));
    }
    if n > MAX_N {
        return Err(HarnessError::Bound {
            flag: "--n",
            value: n,
            ceiling: MAX_N,
            context: String::new(),
        });
    }
    Ok(n)
}

/// The length bound in force for `n`.
pub fn max_length(n: usize, flag: Option<usize>) -> Result<usize> {
    let ceiling = max_length_ceiling(n);
    match flag {
        Some(l) if l > ceiling => Err(HarnessError::Bound {
            flag: "--max-length",
            value: l,
            ceiling,
            context: format!(" for n = {n}"),
        }),
        Some(l) => Ok(l),
        None => Ok(default_max_length(n)),
    }
}

pub fn max_degree(flag: Option<usize>) -> Result<usize> {
    match flag {
        Some(d) if d > MAX_DEGREE_CEILING => Err(HarnessError::Bound {
            flag: "--max-degree",
            value: d,
            ceiling: MAX_DEGREE_CEILING,
            context: String::new(),
        }),
        Some(d) => Ok(d),
        None => Ok(DEFAULT_MAX_DEGREE),
    }
}

/// Rejects `value` when it exceeds the bound in force.
pub fn within(flag: &'static str, what: &str, value: usize, bound: usize) -> Result<()> {
    if value > bound {
        return Err(HarnessError::Bound {
            flag,
            value,
            ceiling: bound,
            context: format!(" ({what})"),
        });
    }
    Ok(())
}
