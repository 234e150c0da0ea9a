//! Exact rationals and their textual form (`"p/q"`, or `"p"` for integers).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn format(x: &Q) -> String {
    x.to_string()
}

pub fn parse(s: &str) -> Result<Q> {
    s.trim()
        .parse::<Q>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    use num_traits::ToPrimitive;
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub(crate) fn add_into<K: Ord>(map: &mut std::collections::BTreeMap<K, Q>, key: K, c: Q) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(parse("-4").unwrap(), q(-4));
        assert_eq!(format(&q_frac(-2, 4)), "-1/2");
        assert_eq!(format(&q(7)), "7");
        assert!(parse("x/2").is_err());
    }
}
